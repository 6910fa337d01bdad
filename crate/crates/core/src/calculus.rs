//! Rule schemata, rule application, semantic rule verification and rule
//! synthesis from truth tables.
//!
//! A rule is read under falsification: a formula sits in a slot, and the slot
//! constrains its value (`ant1` = 1, `suc1` ≠ 1, `ant2` ≠ 0, `suc2` = 0). A rule
//! for slot `s` is sound and invertible exactly when, for every tuple of
//! argument values, the principal formula meets the constraint of `s` iff
//! some premiss has all of its placements met.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bisequent::{Bisequent, SlotId};
use crate::error::{Error, Result};
use crate::formula::{ConnectiveId, Formula};
use crate::logics::{LogicDef, SlotTreatment, TruthTable, Value};

/// One side formula: argument `arg` of the principal formula goes to `slot`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub slot: SlotId,
    pub arg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PremissSchema {
    pub placements: Vec<Placement>,
}

impl PremissSchema {
    /// Parses `"suc2:A ant1:B"`.
    pub fn parse(text: &str) -> Result<Self> {
        let placements = text
            .split_whitespace()
            .map(|item| {
                let (slot, arg) = item
                    .split_once(':')
                    .ok_or_else(|| Error::Catalog(format!("placement `{item}` lacks `:`")))?;
                let arg = match arg {
                    "A" => 0,
                    "B" => 1,
                    _ => return Err(Error::Catalog(format!("argument `{arg}` is not A or B"))),
                };
                Ok(Placement {
                    slot: slot.parse()?,
                    arg,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if placements.is_empty() {
            return Err(Error::Catalog("empty premiss".into()));
        }
        Ok(PremissSchema { placements })
    }

    /// Parses premisses separated by `;`.
    pub fn parse_list(text: &str) -> Result<Vec<Self>> {
        let list = text.split(';').map(PremissSchema::parse).collect::<Result<Vec<_>>>()?;
        if list.len() > 4 {
            return Err(Error::Catalog(format!("{} premisses, at most 4 allowed", list.len())));
        }
        Ok(list)
    }

    /// True when every placement's slot constraint holds for `args`.
    pub fn satisfied_by(&self, args: &[Value]) -> bool {
        self.placements.iter().all(|p| p.slot.constraint(args[p.arg]))
    }
}

impl fmt::Display for PremissSchema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.placements.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", p.slot, ["A", "B"][p.arg])?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleSchema {
    pub name: String,
    /// Catalog template the premisses come from; shared across operations.
    pub template: String,
    pub connective: ConnectiveId,
    pub principal_slot: SlotId,
    pub premisses: Vec<PremissSchema>,
}

impl RuleSchema {
    /// ASCII rendering of the conventional rule name, e.g. `(->L=>|)`.
    pub fn display_name(label: &str, slot: SlotId) -> String {
        match slot {
            SlotId::Ant1 => format!("({label}=>|)"),
            SlotId::Suc1 => format!("(=>{label}|)"),
            SlotId::Ant2 => format!("(|{label}=>)"),
            SlotId::Suc2 => format!("(|=>{label})"),
        }
    }

    pub fn premisses_text(&self) -> String {
        self.premisses
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ; ")
    }
}

/// Any bisequent with a `connective`-rooted formula in `slot` is axiomatic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomSchema {
    pub connective: ConnectiveId,
    pub slot: SlotId,
}

impl AxiomSchema {
    pub fn matches(&self, b: &Bisequent) -> bool {
        b.slot(self.slot)
            .iter()
            .any(|f| f.connective() == Some(self.connective))
    }
}

/// The rules and axiom schemata of one logic.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub rules: Vec<Arc<RuleSchema>>,
    pub axioms: Vec<AxiomSchema>,
}

/// Rules for every connective of `logic`, in connective then slot order.
pub fn catalog(logic: &LogicDef) -> Result<Catalog> {
    let mut rules = Vec::new();
    let mut axioms = Vec::new();
    for (id, conn) in &logic.connectives {
        for slot in SlotId::ALL {
            match conn.treatment(slot) {
                Some(SlotTreatment::Rule(r)) => rules.push(r.clone()),
                Some(SlotTreatment::Axiom(a)) => axioms.push(*a),
                None => {
                    return Err(Error::IncompleteCatalog {
                        logic: logic.name.clone(),
                        connective: *id,
                        slot,
                    })
                }
            }
        }
    }
    Ok(Catalog { rules, axioms })
}

/// Position of one formula occurrence in a bisequent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Occurrence {
    pub slot: SlotId,
    pub index: usize,
}

/// Backward application: the premisses of `rule` for the given occurrence.
pub fn apply_rule(rule: &RuleSchema, b: &Bisequent, occ: Occurrence) -> Result<Vec<Bisequent>> {
    if occ.slot != rule.principal_slot {
        return Err(Error::OccurrenceMismatch(format!(
            "rule {} works on {}, occurrence is in {}",
            rule.name, rule.principal_slot, occ.slot
        )));
    }
    let principal = b
        .slot(occ.slot)
        .get(occ.index)
        .ok_or_else(|| Error::OccurrenceMismatch(format!("no formula at {} index {}", occ.slot, occ.index)))?;
    if principal.connective() != Some(rule.connective) {
        return Err(Error::OccurrenceMismatch(format!(
            "{principal} is not {}-rooted",
            rule.connective
        )));
    }
    let args = principal.args().to_vec();
    let mut context = b.clone();
    context.remove_at(occ.slot, occ.index);
    Ok(rule
        .premisses
        .iter()
        .map(|p| {
            let mut premiss = context.clone();
            for pl in &p.placements {
                premiss.insert(pl.slot, args[pl.arg].clone());
            }
            premiss
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    SoundAndInvertible,
    Counterexample(Vec<Value>),
}

impl Verdict {
    pub fn is_sound(&self) -> bool {
        matches!(self, Verdict::SoundAndInvertible)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::SoundAndInvertible => f.write_str("sound_and_invertible"),
            Verdict::Counterexample(vals) => {
                let v: Vec<_> = vals.iter().map(|v| v.symbol()).collect();
                write!(f, "counterexample ({})", v.join(", "))
            }
        }
    }
}

/// Checks a rule against a table over all argument tuples.
pub fn verify_against_table(table: &TruthTable, rule: &RuleSchema) -> Verdict {
    for args in table.tuples() {
        let conclusion = rule.principal_slot.constraint(table.apply(&args));
        let premisses = rule.premisses.iter().any(|p| p.satisfied_by(&args));
        if conclusion != premisses {
            return Verdict::Counterexample(args);
        }
    }
    Verdict::SoundAndInvertible
}

/// Checks a rule against the table its connective has in `logic`.
pub fn verify_rule_schema(logic: &LogicDef, rule: &RuleSchema) -> Result<Verdict> {
    Ok(verify_against_table(logic.table(rule.connective)?, rule))
}

/// An axiom schema is sound when no value of the operation meets the slot
/// constraint; the counterexample is a tuple that does.
pub fn verify_axiom_schema(logic: &LogicDef, axiom: &AxiomSchema) -> Result<Verdict> {
    let table = logic.table(axiom.connective)?;
    Ok(table
        .tuples()
        .into_iter()
        .find(|args| axiom.slot.constraint(table.apply(args)))
        .map_or(Verdict::SoundAndInvertible, Verdict::Counterexample))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Synthesized {
    Rule(RuleSchema),
    Axiom(AxiomSchema),
}

/// Value sets a single argument can be confined to by placements, with the
/// placements that express them. Masks are bit sets over value indices
/// (bit 0 = 0, bit 1 = u, bit 2 = 1).
const EXPRESSIBLE: [(u8, &[SlotId]); 6] = [
    (0b111, &[]),
    (0b100, &[SlotId::Ant1]),
    (0b011, &[SlotId::Suc1]),
    (0b110, &[SlotId::Ant2]),
    (0b001, &[SlotId::Suc2]),
    (0b010, &[SlotId::Suc1, SlotId::Ant2]),
];

/// Builds a rule (or axiom schema) for `slot` from `table` alone.
///
/// The region of argument tuples meeting the slot constraint is covered by
/// expressible rectangles, one per premiss. The cover is exact and minimum:
/// fewest premisses, then fewest placements, then the first cover in a fixed
/// enumeration order.
pub fn synthesize_rules(table: &TruthTable, slot: SlotId, connective: ConnectiveId, label: &str) -> Synthesized {
    let tuples = table.tuples();
    let region: Vec<bool> = tuples.iter().map(|t| slot.constraint(table.apply(t))).collect();
    if !region.iter().any(|&x| x) {
        return Synthesized::Axiom(AxiomSchema { connective, slot });
    }
    let n = table.arity();

    // Every rectangle inside the region, as (choice per argument, cell set).
    let mut rects: Vec<(Vec<usize>, u16, usize)> = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let cells = cells_of(&choice, &tuples);
        let inside = (0..tuples.len()).all(|i| cells & (1 << i) == 0 || region[i]);
        if cells != 0 && inside {
            let cost = choice.iter().map(|&c| EXPRESSIBLE[c].1.len()).sum();
            rects.push((choice.clone(), cells, cost));
        }
        if !advance(&mut choice, EXPRESSIBLE.len()) {
            break;
        }
    }
    let maximal: Vec<_> = rects
        .iter()
        .filter(|(_, c, _)| !rects.iter().any(|(_, d, _)| d != c && d & c == *c))
        .cloned()
        .collect();

    let target: u16 = (0..tuples.len()).filter(|&i| region[i]).fold(0, |m, i| m | 1 << i);

    let premisses: Vec<PremissSchema> = if maximal.len() == 1 && maximal[0].2 == 0 {
        // The constraint always holds. A premiss needs a side formula, so
        // split on the first argument: it is 1 or it is not.
        vec![
            PremissSchema {
                placements: vec![Placement {
                    slot: SlotId::Ant1,
                    arg: 0,
                }],
            },
            PremissSchema {
                placements: vec![Placement {
                    slot: SlotId::Suc1,
                    arg: 0,
                }],
            },
        ]
    } else {
        let mut cover: Vec<PremissSchema> = minimum_cover(&maximal, target)
            .into_iter()
            .map(|i| PremissSchema {
                placements: maximal[i]
                    .0
                    .iter()
                    .enumerate()
                    .flat_map(|(arg, &c)| EXPRESSIBLE[c].1.iter().map(move |&slot| Placement { slot, arg }))
                    .collect(),
            })
            .collect();
        cover.sort_by_key(|p| p.placements.iter().map(|pl| (pl.arg, pl.slot)).collect::<Vec<_>>());
        cover
    };
    Synthesized::Rule(RuleSchema {
        name: RuleSchema::display_name(label, slot),
        template: "synthesized".into(),
        connective,
        principal_slot: slot,
        premisses,
    })
}

fn cells_of(choice: &[usize], tuples: &[Vec<Value>]) -> u16 {
    tuples
        .iter()
        .enumerate()
        .filter(|(_, t)| {
            t.iter()
                .zip(choice)
                .all(|(v, &c)| EXPRESSIBLE[c].0 & (1 << v.index()) != 0)
        })
        .fold(0, |m, (i, _)| m | 1 << i)
}

fn advance(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Smallest set of rectangles whose union is `target`; among those of that
/// size the one with fewest placements, first in enumeration order on ties.
fn minimum_cover(rects: &[(Vec<usize>, u16, usize)], target: u16) -> Vec<usize> {
    for k in 1..=rects.len() {
        let mut best: Option<(usize, Vec<usize>)> = None;
        let mut pick = Vec::with_capacity(k);
        search(rects, target, k, 0, 0, &mut pick, &mut best);
        if let Some((_, idx)) = best {
            return idx;
        }
    }
    unreachable!("singleton cells are always expressible")
}

fn search(
    rects: &[(Vec<usize>, u16, usize)],
    target: u16,
    k: usize,
    from: usize,
    covered: u16,
    pick: &mut Vec<usize>,
    best: &mut Option<(usize, Vec<usize>)>,
) {
    if pick.len() == k {
        if covered == target {
            let cost = pick.iter().map(|&i| rects[i].2).sum();
            if best.as_ref().is_none_or(|(c, _)| cost < *c) {
                *best = Some((cost, pick.clone()));
            }
        }
        return;
    }
    for i in from..rects.len() {
        pick.push(i);
        search(rects, target, k, i + 1, covered | rects[i].1, pick, best);
        pick.pop();
    }
}

/// Rebuilds the conclusion from a premiss by removing the side formulas and
/// putting the principal formula back. Used to check context preservation.
pub fn reconstruct_conclusion(
    rule: &RuleSchema,
    premiss_index: usize,
    premiss: &Bisequent,
    principal: &Formula,
) -> Option<Bisequent> {
    let mut b = premiss.clone();
    for pl in &rule.premisses[premiss_index].placements {
        let arg = &principal.args()[pl.arg];
        let i = b.slot(pl.slot).iter().position(|f| f == arg)?;
        b.remove_at(pl.slot, i);
    }
    b.insert(rule.principal_slot, principal.clone());
    Some(b)
}
