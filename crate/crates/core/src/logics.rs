//! Truth values, truth tables and the registry of logics.
//!
//! The built-in registry is read from `data/catalog.toml`, which keeps every
//! table and rule as data. A different catalog file can be loaded with
//! [`Registry::from_path`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::bisequent::SlotId;
use crate::calculus::{AxiomSchema, PremissSchema, RuleSchema};
use crate::error::{Error, Result};
use crate::formula::{parse_formula, ConnectiveId, Constant, Formula};

const BUILTIN_CATALOG: &str = include_str!("../data/catalog.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Value {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "u")]
    Undef,
    #[serde(rename = "1")]
    One,
}

impl Value {
    /// All values in ascending display order.
    pub const ALL: [Value; 3] = [Value::Zero, Value::Undef, Value::One];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Value {
        Value::ALL[i]
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Value::Zero => "0",
            Value::Undef => "u",
            Value::One => "1",
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Value {
    type Err = Error;
    fn from_str(s: &str) -> Result<Value> {
        match s {
            "0" => Ok(Value::Zero),
            "u" | "U" => Ok(Value::Undef),
            "1" => Ok(Value::One),
            _ => Err(Error::Catalog(format!("`{s}` is not a truth value"))),
        }
    }
}

/// A total table. Binary cells are indexed by `3 * a + b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    arity: usize,
    cells: Vec<Value>,
}

impl TruthTable {
    pub fn new(arity: usize, cells: Vec<Value>) -> Result<Self> {
        let expected = match arity {
            1 => 3,
            2 => 9,
            _ => return Err(Error::Catalog(format!("unsupported arity {arity}"))),
        };
        if cells.len() != expected {
            return Err(Error::Catalog(format!(
                "arity {arity} table needs {expected} cells, got {}",
                cells.len()
            )));
        }
        Ok(TruthTable { arity, cells })
    }

    pub fn unary(f: impl Fn(Value) -> Value) -> Self {
        TruthTable {
            arity: 1,
            cells: Value::ALL.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn binary(f: impl Fn(Value, Value) -> Value) -> Self {
        let mut cells = Vec::with_capacity(9);
        for a in Value::ALL {
            for b in Value::ALL {
                cells.push(f(a, b));
            }
        }
        TruthTable { arity: 2, cells }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, args: &[Value]) -> Value {
        debug_assert_eq!(args.len(), self.arity);
        self.cells[Self::index_of(args)]
    }

    pub(crate) fn index_of(args: &[Value]) -> usize {
        args.iter().fold(0, |acc, v| acc * 3 + v.index())
    }

    /// Every argument tuple in ascending order.
    pub fn tuples(&self) -> Vec<Vec<Value>> {
        let mut out = vec![vec![]];
        for _ in 0..self.arity {
            out = out
                .into_iter()
                .flat_map(|t| {
                    Value::ALL.map(|v| {
                        let mut t = t.clone();
                        t.push(v);
                        t
                    })
                })
                .collect();
        }
        out
    }

    pub fn cells(&self) -> &[Value] {
        &self.cells
    }

    /// Parses the catalog notation, where inputs run 1, u, 0.
    fn parse(rows: &[String]) -> Result<Self> {
        let descending = |row: &str| -> Result<Vec<Value>> {
            let mut vals = row
                .split_whitespace()
                .map(Value::from_str)
                .collect::<Result<Vec<_>>>()?;
            vals.reverse();
            Ok(vals)
        };
        match rows {
            [row] => TruthTable::new(1, descending(row)?),
            [r1, ru, r0] => {
                let mut cells = Vec::with_capacity(9);
                for row in [r0, ru, r1] {
                    let vals = descending(row)?;
                    if vals.len() != 3 {
                        return Err(Error::Catalog(format!("table row `{row}` needs 3 cells")));
                    }
                    cells.extend(vals);
                }
                TruthTable::new(2, cells)
            }
            _ => Err(Error::Catalog("a table has one row or three rows".into())),
        }
    }

    /// Renders in catalog order (inputs 1, u, 0).
    pub fn render(&self) -> String {
        let order = [Value::One, Value::Undef, Value::Zero];
        let mut out = String::new();
        if self.arity == 1 {
            for v in order {
                out.push_str(&format!("{v} | {}\n", self.apply(&[v])));
            }
        } else {
            out.push_str("  | 1 u 0\n--+------\n");
            for a in order {
                out.push_str(&format!("{a} |"));
                for b in order {
                    out.push_str(&format!(" {}", self.apply(&[a, b])));
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Designated {
    /// D = {1}; consequence goals live in the 1-sequent.
    One,
    /// D = {1, u}; consequence goals live in the 2-sequent.
    OneUndef,
}

impl Designated {
    pub fn contains(self, v: Value) -> bool {
        match self {
            Designated::One => v == Value::One,
            Designated::OneUndef => v != Value::Zero,
        }
    }

    pub fn values(self) -> BTreeSet<Value> {
        Value::ALL.into_iter().filter(|&v| self.contains(v)).collect()
    }
}

/// What happens to a principal formula in one slot: a rule or an axiom.
#[derive(Debug, Clone)]
pub enum SlotTreatment {
    Rule(Arc<RuleSchema>),
    Axiom(AxiomSchema),
}

/// A connective of one logic: its table and its four slot treatments.
#[derive(Debug, Clone)]
pub struct Connective {
    pub id: ConnectiveId,
    /// Name of the catalog operation bound to `id`.
    pub operation: String,
    pub label: String,
    pub table_name: String,
    pub table: Arc<TruthTable>,
    pub slots: [Option<SlotTreatment>; 4],
}

impl Connective {
    pub fn treatment(&self, slot: SlotId) -> Option<&SlotTreatment> {
        self.slots[slot.index()].as_ref()
    }
}

#[derive(Debug, Clone)]
pub struct LogicDef {
    pub name: String,
    pub description: String,
    pub designated: Designated,
    pub constants_enabled: bool,
    pub connectives: BTreeMap<ConnectiveId, Connective>,
    pub extra_axiom_schemata: Vec<AxiomSchema>,
}

impl LogicDef {
    /// The slot pair hosting consequence goals: 1-sequent for D = {1},
    /// 2-sequent for D = {1, u}.
    pub fn goal_sequent(&self) -> usize {
        match self.designated {
            Designated::One => 1,
            Designated::OneUndef => 2,
        }
    }

    pub fn signature(&self) -> BTreeSet<ConnectiveId> {
        self.connectives.keys().copied().collect()
    }

    pub fn connective(&self, id: ConnectiveId) -> Result<&Connective> {
        self.connectives
            .get(&id)
            .ok_or_else(|| Error::ConnectiveNotInLogic(id, self.name.clone()))
    }

    pub fn table(&self, id: ConnectiveId) -> Result<&TruthTable> {
        Ok(&self.connective(id)?.table)
    }

    pub fn parse(&self, text: &str) -> Result<Formula> {
        let f = parse_formula(text, &self.signature())?;
        self.check_formula(&f)?;
        Ok(f)
    }

    pub fn parse_list(&self, text: &str) -> Result<Vec<Formula>> {
        let list = crate::formula::parse_formula_list(text, &self.signature())?;
        for f in &list {
            self.check_formula(f)?;
        }
        Ok(list)
    }

    /// Checks that every connective and constant of `f` is available.
    pub fn check_formula(&self, f: &Formula) -> Result<()> {
        for c in f.connectives() {
            self.connective(c)?;
        }
        if f.has_constants() && !self.constants_enabled {
            return Err(Error::ConstantsDisabled(self.name.clone()));
        }
        Ok(())
    }

    pub fn is_designated(&self, v: Value) -> bool {
        self.designated.contains(v)
    }
}

/// Values for the atoms under evaluation.
pub type Assignment = BTreeMap<String, Value>;

pub fn constant_value(c: Constant) -> Value {
    match c {
        Constant::Top => Value::One,
        Constant::Bottom => Value::Zero,
        Constant::Undef => Value::Undef,
    }
}

/// Homomorphic extension of `h` to `f`.
pub fn eval(logic: &LogicDef, h: &Assignment, f: &Formula) -> Result<Value> {
    match f {
        Formula::Atom(name) => h
            .get(&**name)
            .copied()
            .ok_or_else(|| Error::MissingAtom(name.to_string())),
        Formula::Constant(c) => {
            if logic.constants_enabled {
                Ok(constant_value(*c))
            } else {
                Err(Error::ConstantsDisabled(logic.name.clone()))
            }
        }
        Formula::Compound(c, args) => {
            let table = logic.table(*c)?;
            let vals = args.iter().map(|a| eval(logic, h, a)).collect::<Result<Vec<_>>>()?;
            Ok(table.apply(&vals))
        }
    }
}

/// A formula flattened to postfix form with atoms replaced by indices, for
/// evaluation inside enumeration loops.
#[derive(Debug, Clone)]
pub struct Compiled {
    ops: Vec<Op>,
}

#[derive(Debug, Clone)]
enum Op {
    Atom(usize),
    Const(Value),
    Unary([Value; 3]),
    Binary([Value; 9]),
}

impl Compiled {
    /// `atoms` fixes the index of every atom of `f`.
    pub fn new(logic: &LogicDef, f: &Formula, atoms: &[String]) -> Result<Self> {
        let mut ops = Vec::new();
        Self::emit(logic, f, atoms, &mut ops)?;
        Ok(Compiled { ops })
    }

    fn emit(logic: &LogicDef, f: &Formula, atoms: &[String], ops: &mut Vec<Op>) -> Result<()> {
        match f {
            Formula::Atom(name) => {
                let i = atoms
                    .iter()
                    .position(|a| **a == **name)
                    .ok_or_else(|| Error::MissingAtom(name.to_string()))?;
                ops.push(Op::Atom(i));
            }
            Formula::Constant(c) => {
                if !logic.constants_enabled {
                    return Err(Error::ConstantsDisabled(logic.name.clone()));
                }
                ops.push(Op::Const(constant_value(*c)));
            }
            Formula::Compound(c, args) => {
                for a in args.iter() {
                    Self::emit(logic, a, atoms, ops)?;
                }
                let cells = logic.table(*c)?.cells();
                ops.push(match cells.len() {
                    3 => Op::Unary([cells[0], cells[1], cells[2]]),
                    _ => {
                        let mut t = [Value::Zero; 9];
                        t.copy_from_slice(cells);
                        Op::Binary(t)
                    }
                });
            }
        }
        Ok(())
    }

    pub fn eval(&self, values: &[Value]) -> Value {
        let mut stack: Vec<Value> = Vec::with_capacity(8);
        for op in &self.ops {
            match op {
                Op::Atom(i) => stack.push(values[*i]),
                Op::Const(v) => stack.push(*v),
                Op::Unary(t) => {
                    let a = stack.pop().expect("operand");
                    stack.push(t[a.index()]);
                }
                Op::Binary(t) => {
                    let b = stack.pop().expect("operand");
                    let a = stack.pop().expect("operand");
                    stack.push(t[a.index() * 3 + b.index()]);
                }
            }
        }
        stack.pop().expect("result")
    }
}

#[derive(Debug, Clone)]
pub struct Registry {
    logics: BTreeMap<String, Arc<LogicDef>>,
    tables: BTreeMap<String, Arc<TruthTable>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    tables: BTreeMap<String, TableRows>,
    rules: BTreeMap<String, String>,
    operations: BTreeMap<String, OperationEntry>,
    logics: BTreeMap<String, LogicEntry>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableRows {
    One(String),
    Many(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OperationEntry {
    label: String,
    table: String,
    ant1: Option<String>,
    suc1: Option<String>,
    ant2: Option<String>,
    suc2: Option<String>,
    #[serde(default)]
    axioms: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LogicEntry {
    description: String,
    designated: String,
    #[serde(default)]
    constants: bool,
    connectives: BTreeMap<String, String>,
}

impl Registry {
    /// The catalog shipped with the crate.
    pub fn builtin() -> &'static Registry {
        static BUILTIN: OnceLock<Registry> = OnceLock::new();
        BUILTIN.get_or_init(|| Registry::from_toml_str(BUILTIN_CATALOG).expect("built-in catalog is well formed"))
    }

    pub fn from_path(path: &Path) -> Result<Registry> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Catalog(format!("{}: {e}", path.display())))?;
        Registry::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Registry> {
        let file: CatalogFile = toml::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;

        let mut tables = BTreeMap::new();
        for (name, rows) in &file.tables {
            let rows = match rows {
                TableRows::One(r) => vec![r.clone()],
                TableRows::Many(rs) => rs.clone(),
            };
            let table = TruthTable::parse(&rows).map_err(|e| Error::Catalog(format!("table {name}: {e}")))?;
            tables.insert(name.clone(), Arc::new(table));
        }

        let mut templates = BTreeMap::new();
        for (name, text) in &file.rules {
            let premisses = PremissSchema::parse_list(text).map_err(|e| Error::Catalog(format!("rule {name}: {e}")))?;
            templates.insert(name.clone(), premisses);
        }

        let mut logics = BTreeMap::new();
        for (name, entry) in &file.logics {
            let designated = match entry.designated.split_whitespace().collect::<Vec<_>>()[..] {
                ["1"] => Designated::One,
                ["1", "u"] | ["u", "1"] => Designated::OneUndef,
                _ => {
                    return Err(Error::Catalog(format!(
                        "logic {name}: designated set must be `1` or `1 u`"
                    )))
                }
            };
            let mut connectives = BTreeMap::new();
            let mut extra = Vec::new();
            for (token, op_name) in &entry.connectives {
                let id = ConnectiveId::from_token(token)
                    .ok_or_else(|| Error::Catalog(format!("logic {name}: unknown connective token `{token}`")))?;
                let op = file
                    .operations
                    .get(op_name)
                    .ok_or_else(|| Error::Catalog(format!("logic {name}: unknown operation `{op_name}`")))?;
                let table = tables
                    .get(&op.table)
                    .cloned()
                    .ok_or_else(|| Error::Catalog(format!("operation {op_name}: unknown table `{}`", op.table)))?;
                if table.arity() != id.arity() {
                    return Err(Error::Catalog(format!(
                        "logic {name}: `{token}` has arity {} but table {} has arity {}",
                        id.arity(),
                        op.table,
                        table.arity()
                    )));
                }
                let connective = build_connective(id, op_name, op, table, &templates, &mut extra)?;
                connectives.insert(id, connective);
            }
            logics.insert(
                name.clone(),
                Arc::new(LogicDef {
                    name: name.clone(),
                    description: entry.description.clone(),
                    designated,
                    constants_enabled: entry.constants,
                    connectives,
                    extra_axiom_schemata: extra,
                }),
            );
        }
        Ok(Registry { logics, tables })
    }

    pub fn lookup(&self, name: &str) -> Result<Arc<LogicDef>> {
        self.logics.get(name).cloned().ok_or_else(|| Error::UnknownLogic {
            name: name.to_string(),
            available: self.names(),
        })
    }

    pub fn names(&self) -> Vec<String> {
        self.logics.keys().cloned().collect()
    }

    pub fn logics(&self) -> impl Iterator<Item = &Arc<LogicDef>> {
        self.logics.values()
    }

    /// Named tables as stored in the catalog.
    pub fn tables(&self) -> &BTreeMap<String, Arc<TruthTable>> {
        &self.tables
    }
}

fn build_connective(
    id: ConnectiveId,
    op_name: &str,
    op: &OperationEntry,
    table: Arc<TruthTable>,
    templates: &BTreeMap<String, Vec<PremissSchema>>,
    extra: &mut Vec<AxiomSchema>,
) -> Result<Connective> {
    let mut slots: [Option<SlotTreatment>; 4] = Default::default();
    let named = [&op.ant1, &op.suc1, &op.ant2, &op.suc2];
    for slot in SlotId::ALL {
        if let Some(template) = named[slot.index()] {
            let premisses = templates
                .get(template)
                .ok_or_else(|| Error::Catalog(format!("operation {op_name}: unknown rule `{template}`")))?;
            for p in premisses {
                for pl in &p.placements {
                    if pl.arg >= id.arity() {
                        return Err(Error::Catalog(format!(
                            "rule {template} refers to argument {} of unary `{id}`",
                            pl.arg
                        )));
                    }
                }
            }
            let rule = RuleSchema {
                name: RuleSchema::display_name(&op.label, slot),
                template: template.clone(),
                connective: id,
                principal_slot: slot,
                premisses: premisses.clone(),
            };
            slots[slot.index()] = Some(SlotTreatment::Rule(Arc::new(rule)));
        }
    }
    for s in &op.axioms {
        let slot = SlotId::from_str(s)?;
        if slots[slot.index()].is_some() {
            return Err(Error::Catalog(format!(
                "operation {op_name} has both a rule and an axiom for {slot}"
            )));
        }
        let axiom = AxiomSchema { connective: id, slot };
        extra.push(axiom);
        slots[slot.index()] = Some(SlotTreatment::Axiom(axiom));
    }
    Ok(Connective {
        id,
        operation: op_name.to_string(),
        label: op.label.clone(),
        table_name: op.table.clone(),
        table,
        slots,
    })
}

/// Looks a logic up in the built-in registry.
pub fn lookup_logic(name: &str) -> Result<Arc<LogicDef>> {
    Registry::builtin().lookup(name)
}
