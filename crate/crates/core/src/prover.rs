//! Backward proof search over complete proof-search trees.
//!
//! Every rule is invertible and context independent, so one complete tree
//! decides the root: it is provable iff all leaves are axiomatic. An open leaf
//! gives a countermodel for the root.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bisequent::{is_axiomatic, Bisequent, SlotId};
use crate::calculus::{apply_rule, Occurrence, RuleSchema};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::logics::{Assignment, Designated, LogicDef, SlotTreatment, Value};

/// Where the premisses and the conclusion of a goal go.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoalMode {
    /// `Γ => φ | =>`, consequence in a 1-matrix.
    Designated1,
    /// `=> | Γ => φ`, consequence in a 2-matrix.
    Designated2,
    /// `Γ => | => φ`
    NoCounterexample,
    /// `=> φ | Γ =>`
    Liberal,
}

impl GoalMode {
    pub const ALL: [GoalMode; 4] = [
        GoalMode::Designated1,
        GoalMode::Designated2,
        GoalMode::NoCounterexample,
        GoalMode::Liberal,
    ];

    /// The standard consequence mode of `logic`.
    pub fn designated(logic: &LogicDef) -> GoalMode {
        match logic.designated {
            Designated::One => GoalMode::Designated1,
            Designated::OneUndef => GoalMode::Designated2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GoalMode::Designated1 => "designated_1",
            GoalMode::Designated2 => "designated_2",
            GoalMode::NoCounterexample => "no_counterexample",
            GoalMode::Liberal => "liberal",
        }
    }

    /// Slots receiving the premisses and the conclusion.
    pub fn slots(self) -> (SlotId, SlotId) {
        match self {
            GoalMode::Designated1 => (SlotId::Ant1, SlotId::Suc1),
            GoalMode::Designated2 => (SlotId::Ant2, SlotId::Suc2),
            GoalMode::NoCounterexample => (SlotId::Ant1, SlotId::Suc2),
            GoalMode::Liberal => (SlotId::Ant2, SlotId::Suc1),
        }
    }

    pub fn root(self, premisses: &[Formula], conclusion: &Formula) -> Bisequent {
        let (ps, c) = self.slots();
        let mut b = Bisequent::empty();
        for p in premisses {
            b.insert(ps, p.clone());
        }
        b.insert(c, conclusion.clone());
        b
    }

    fn check(self, logic: &LogicDef) -> Result<()> {
        let expected = GoalMode::designated(logic);
        let designated = matches!(self, GoalMode::Designated1 | GoalMode::Designated2);
        if designated && self != expected {
            return Err(Error::ModeMismatch {
                mode: self.name().into(),
                logic: logic.name.clone(),
                expected: format!("{}-sequent", logic.goal_sequent()),
            });
        }
        Ok(())
    }
}

impl fmt::Display for GoalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GoalMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        GoalMode::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('_', "-") == s)
            .ok_or_else(|| format!("unknown mode `{s}`"))
    }
}

/// How the principal occurrence is chosen at each node.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// First compound formula in slot order ant1, suc1, ant2, suc2.
    #[default]
    LeftmostOutermost,
    /// Least complex compound formula, scanning from suc2 back to ant1 and
    /// taking the last one among equals.
    RightmostInnermost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeafStatus {
    Axiomatic,
    Open,
}

#[derive(Debug, Clone)]
pub enum Expansion {
    Leaf(LeafStatus),
    Step {
        rule: Arc<RuleSchema>,
        occurrence: Occurrence,
        principal: Formula,
        children: Vec<Arc<ProofTree>>,
    },
}

#[derive(Debug, Clone)]
pub struct ProofTree {
    pub node: Bisequent,
    pub expansion: Expansion,
    proved: bool,
}

impl ProofTree {
    /// All leaves axiomatic.
    pub fn is_proved(&self) -> bool {
        self.proved
    }

    pub fn children(&self) -> &[Arc<ProofTree>] {
        match &self.expansion {
            Expansion::Leaf(_) => &[],
            Expansion::Step { children, .. } => children,
        }
    }

    /// Distinct open leaves, left to right.
    pub fn open_leaves(&self) -> Vec<&Bisequent> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        self.collect_open(&mut seen, &mut out);
        out
    }

    fn collect_open<'a>(&'a self, seen: &mut BTreeSet<&'a Bisequent>, out: &mut Vec<&'a Bisequent>) {
        if self.proved {
            return;
        }
        match &self.expansion {
            Expansion::Leaf(_) => {
                if seen.insert(&self.node) {
                    out.push(&self.node);
                }
            }
            Expansion::Step { children, .. } => {
                for c in children {
                    c.collect_open(seen, out);
                }
            }
        }
    }

    pub fn leaves(&self) -> Vec<(&Bisequent, LeafStatus)> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            match &t.expansion {
                Expansion::Leaf(s) => out.push((&t.node, *s)),
                Expansion::Step { children, .. } => stack.extend(children.iter().rev().map(|c| &**c)),
            }
        }
        out
    }

    /// Number of rule applications, counting shared subtrees once per use.
    pub fn steps(&self) -> usize {
        match &self.expansion {
            Expansion::Leaf(_) => 0,
            Expansion::Step { children, .. } => 1 + children.iter().map(|c| c.steps()).sum::<usize>(),
        }
    }

    pub fn height(&self) -> usize {
        self.children().iter().map(|c| 1 + c.height()).max().unwrap_or(0)
    }

    /// Indented text, one node per line.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        match &self.expansion {
            Expansion::Leaf(status) => {
                let tag = match status {
                    LeafStatus::Axiomatic => "axiomatic",
                    LeafStatus::Open => "open",
                };
                let _ = writeln!(out, "{indent}{}   [{tag}]", self.node);
            }
            Expansion::Step {
                rule,
                principal,
                children,
                ..
            } => {
                let _ = writeln!(out, "{indent}{}   by {} on {principal}", self.node, rule.name);
                for c in children {
                    c.render_into(depth + 1, out);
                }
            }
        }
    }

    /// Structured view for machine-readable output.
    pub fn view(&self) -> TreeView {
        match &self.expansion {
            Expansion::Leaf(status) => TreeView {
                node: self.node.render(),
                rule: None,
                principal: None,
                slot: None,
                status: Some(*status),
                children: vec![],
            },
            Expansion::Step {
                rule,
                occurrence,
                principal,
                children,
            } => TreeView {
                node: self.node.render(),
                rule: Some(rule.name.clone()),
                principal: Some(principal.render()),
                slot: Some(occurrence.slot),
                status: None,
                children: children.iter().map(|c| c.view()).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeView {
    pub node: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rule: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub principal: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slot: Option<SlotId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<LeafStatus>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub children: Vec<TreeView>,
}

#[derive(Debug, Clone)]
pub enum SearchResult {
    Proved {
        tree: Arc<ProofTree>,
    },
    Refuted {
        tree: Arc<ProofTree>,
        leaf: Bisequent,
        countermodel: Assignment,
    },
}

impl SearchResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, SearchResult::Proved { .. })
    }

    pub fn tree(&self) -> &Arc<ProofTree> {
        match self {
            SearchResult::Proved { tree } | SearchResult::Refuted { tree, .. } => tree,
        }
    }

    pub fn countermodel(&self) -> Option<&Assignment> {
        match self {
            SearchResult::Proved { .. } => None,
            SearchResult::Refuted { countermodel, .. } => Some(countermodel),
        }
    }
}

/// Proof search over one logic. The memo shares subtrees between identical
/// nodes; it lives as long as the prover.
pub struct Prover<'a> {
    logic: &'a LogicDef,
    strategy: Strategy,
    memo: HashMap<Bisequent, Arc<ProofTree>>,
}

impl<'a> Prover<'a> {
    pub fn new(logic: &'a LogicDef) -> Self {
        Prover {
            logic,
            strategy: Strategy::default(),
            memo: HashMap::new(),
        }
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }

    pub fn complete_search(&mut self, b: &Bisequent) -> Result<Arc<ProofTree>> {
        if let Some(t) = self.memo.get(b) {
            return Ok(t.clone());
        }
        let tree = Arc::new(self.expand(b)?);
        self.memo.insert(b.clone(), tree.clone());
        Ok(tree)
    }

    fn expand(&mut self, b: &Bisequent) -> Result<ProofTree> {
        let mut candidates: Vec<(Occurrence, &Formula)> = Vec::new();
        for slot in SlotId::ALL {
            for (index, f) in b.slot(slot).iter().enumerate() {
                let Some(id) = f.connective() else { continue };
                match self.logic.connective(id)?.treatment(slot) {
                    // An axiom schema closes the node outright.
                    Some(SlotTreatment::Axiom(_)) => {
                        return Ok(leaf(b.clone(), LeafStatus::Axiomatic));
                    }
                    Some(SlotTreatment::Rule(_)) => candidates.push((Occurrence { slot, index }, f)),
                    None => {
                        return Err(Error::IncompleteCatalog {
                            logic: self.logic.name.clone(),
                            connective: id,
                            slot,
                        })
                    }
                }
            }
        }
        let chosen = match self.strategy {
            Strategy::LeftmostOutermost => candidates.first(),
            Strategy::RightmostInnermost => candidates.iter().rev().min_by_key(|(_, f)| f.complexity()),
        };
        let Some(&(occurrence, principal)) = chosen else {
            let status = if is_axiomatic(self.logic, b) {
                LeafStatus::Axiomatic
            } else {
                LeafStatus::Open
            };
            return Ok(leaf(b.clone(), status));
        };
        let id = principal.connective().expect("compound");
        let rule = match self.logic.connective(id)?.treatment(occurrence.slot) {
            Some(SlotTreatment::Rule(r)) => r.clone(),
            _ => unreachable!("candidates carry rules"),
        };
        let premisses = apply_rule(&rule, b, occurrence)?;
        let children = premisses
            .iter()
            .map(|p| self.complete_search(p))
            .collect::<Result<Vec<_>>>()?;
        let proved = children.iter().all(|c| c.proved);
        Ok(ProofTree {
            node: b.clone(),
            expansion: Expansion::Step {
                rule,
                occurrence,
                principal: principal.clone(),
                children,
            },
            proved,
        })
    }

    /// Decides `b` and extracts a countermodel when it is not provable.
    pub fn prove_bisequent(&mut self, b: &Bisequent) -> Result<SearchResult> {
        let tree = self.complete_search(b)?;
        if tree.proved {
            return Ok(SearchResult::Proved { tree });
        }
        let leaf = tree.open_leaves()[0].clone();
        let mut countermodel = countermodel_from_leaf(self.logic, &leaf)?;
        for atom in b.atoms() {
            countermodel.entry(atom).or_insert(Value::Undef);
        }
        Ok(SearchResult::Refuted {
            tree,
            leaf,
            countermodel,
        })
    }

    pub fn prove(&mut self, mode: GoalMode, premisses: &[Formula], conclusion: &Formula) -> Result<SearchResult> {
        mode.check(self.logic)?;
        self.prove_bisequent(&mode.root(premisses, conclusion))
    }
}

fn leaf(node: Bisequent, status: LeafStatus) -> ProofTree {
    ProofTree {
        node,
        expansion: Expansion::Leaf(status),
        proved: status == LeafStatus::Axiomatic,
    }
}

pub fn complete_search(logic: &LogicDef, b: &Bisequent) -> Result<Arc<ProofTree>> {
    Prover::new(logic).complete_search(b)
}

pub fn prove(logic: &LogicDef, mode: GoalMode, premisses: &[Formula], conclusion: &Formula) -> Result<SearchResult> {
    Prover::new(logic).prove(mode, premisses, conclusion)
}

pub fn prove_bisequent(logic: &LogicDef, b: &Bisequent) -> Result<SearchResult> {
    Prover::new(logic).prove_bisequent(b)
}

/// An assignment falsifying an atomic, nonaxiomatic leaf: atoms in Γ get 1,
/// atoms in Σ get 0, then atoms in both Δ and Π get u, atoms only in Δ get
/// 0, atoms only in Π get 1, and any other atom gets u.
pub fn countermodel_from_leaf(logic: &LogicDef, leaf: &Bisequent) -> Result<Assignment> {
    if !leaf.is_atomic() {
        return Err(Error::LeafPrecondition("not atomic"));
    }
    if is_axiomatic(logic, leaf) {
        return Err(Error::LeafPrecondition("axiomatic"));
    }
    let names = |slot: SlotId| -> BTreeSet<&str> {
        leaf.slot(slot)
            .iter()
            .filter_map(|f| match f {
                Formula::Atom(a) => Some(&**a),
                _ => None,
            })
            .collect()
    };
    let (g, d, p, s) = (
        names(SlotId::Ant1),
        names(SlotId::Suc1),
        names(SlotId::Ant2),
        names(SlotId::Suc2),
    );
    let mut h = Assignment::new();
    for atom in leaf.atoms() {
        let a = atom.as_str();
        let v = if g.contains(a) {
            Value::One
        } else if s.contains(a) {
            Value::Zero
        } else {
            match (d.contains(a), p.contains(a)) {
                (true, true) => Value::Undef,
                (true, false) => Value::Zero,
                (false, true) => Value::One,
                (false, false) => Value::Undef,
            }
        };
        h.insert(atom, v);
    }
    Ok(h)
}

/// Re-proves `proved` with extra formulas added slot by slot.
pub fn admissible_weaken(logic: &LogicDef, proved: &Bisequent, additions: &Bisequent) -> Result<SearchResult> {
    prove_bisequent(logic, &proved.union(additions))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutVariant {
    /// Cut formula in suc1 of the left premiss and ant1 of the right one.
    Cut1,
    /// Cut formula in suc2 of the left premiss and ant2 of the right one.
    Cut2,
}

/// Conclusion of a cut: both premisses minus one cut-formula occurrence each,
/// joined slot by slot.
pub fn cut_conclusion(left: &Bisequent, right: &Bisequent, cut: &Formula, variant: CutVariant) -> Result<Bisequent> {
    let (ls, rs) = match variant {
        CutVariant::Cut1 => (SlotId::Suc1, SlotId::Ant1),
        CutVariant::Cut2 => (SlotId::Suc2, SlotId::Ant2),
    };
    let take = |b: &Bisequent, slot: SlotId, side: &str| -> Result<Bisequent> {
        let i = b
            .slot(slot)
            .iter()
            .position(|f| f == cut)
            .ok_or_else(|| Error::CutShape(format!("{cut} is not in {slot} of the {side} premiss")))?;
        let mut b = b.clone();
        b.remove_at(slot, i);
        Ok(b)
    };
    Ok(take(left, ls, "left")?.union(&take(right, rs, "right")?))
}

/// Re-proves the conclusion of a cut whose premisses are provable.
pub fn admissible_cut(
    logic: &LogicDef,
    left: &Bisequent,
    right: &Bisequent,
    cut: &Formula,
    variant: CutVariant,
) -> Result<SearchResult> {
    let conclusion = cut_conclusion(left, right, cut, variant)?;
    let mut prover = Prover::new(logic);
    for (side, b) in [("left", left), ("right", right)] {
        if !prover.prove_bisequent(b)?.is_proved() {
            return Err(Error::CutShape(format!("the {side} premiss is not provable")));
        }
    }
    prover.prove_bisequent(&conclusion)
}

/// A rule schema, the occurrence it acts on and the premisses it yields.
pub type RuleInstance = (Arc<RuleSchema>, Occurrence, Vec<Bisequent>);

/// Every rule instance applicable to `b`: each compound occurrence with its
/// rule and the resulting premisses.
pub fn rule_instances(logic: &LogicDef, b: &Bisequent) -> Result<Vec<RuleInstance>> {
    let mut out = Vec::new();
    for slot in SlotId::ALL {
        for (index, f) in b.slot(slot).iter().enumerate() {
            let Some(id) = f.connective() else { continue };
            if let Some(SlotTreatment::Rule(rule)) = logic.connective(id)?.treatment(slot) {
                let occ = Occurrence { slot, index };
                let premisses = apply_rule(rule, b, occ)?;
                out.push((rule.clone(), occ, premisses));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::lookup_logic;
    use crate::semantics::{bisequent_valid, falsifies, matrix_consequence, Oracle};
    use proptest::prelude::{prop, prop_assert, prop_assert_eq, proptest};
    use proptest::strategy::Strategy as Gen;

    fn bs(logic: &str, text: &str) -> Bisequent {
        Bisequent::parse(&lookup_logic(logic).unwrap(), text).unwrap()
    }

    fn goal(logic: &str, ps: &str, c: &str) -> SearchResult {
        let l = lookup_logic(logic).unwrap();
        let mode = GoalMode::designated(&l);
        prove(&l, mode, &l.parse_list(ps).unwrap(), &l.parse(c).unwrap()).unwrap()
    }

    fn h(pairs: &[(&str, Value)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn single_step_tree() {
        let k3 = lookup_logic("K3").unwrap();
        let t = complete_search(&k3, &bs("K3", "p & q => p | =>")).unwrap();
        assert_eq!(t.steps(), 1);
        let leaves = t.leaves();
        assert_eq!(leaves, vec![(&bs("K3", "p, q => p | =>"), LeafStatus::Axiomatic)]);
        assert!(t.is_proved());
    }

    #[test]
    fn atomic_root_is_a_leaf() {
        let k3 = lookup_logic("K3").unwrap();
        let t = complete_search(&k3, &bs("K3", "=> p | =>")).unwrap();
        assert_eq!(t.steps(), 0);
        assert!(!t.is_proved());
    }

    #[test]
    fn excluded_middle_in_lp() {
        let lp = lookup_logic("LP").unwrap();
        let t = complete_search(&lp, &bs("LP", "=> | => (p | ~p)")).unwrap();
        assert_eq!(t.steps(), 2);
        // The negation rule for suc2 moves p to ant1, so the leaf closes on Γ∩Σ.
        assert_eq!(t.leaves(), vec![(&bs("LP", "p => | => p"), LeafStatus::Axiomatic)]);
        let text = t.render_text();
        assert!(text.contains("by (|=>|)"), "{text}");
        assert!(text.contains("by (|=>~)"), "{text}");
    }

    #[test]
    fn prove_examples() {
        assert!(goal("K3", "p, p -> q", "q").is_proved());
        let r = goal("K3", "", "p | ~p");
        assert_eq!(r.countermodel(), Some(&h(&[("p", Value::Undef)])));
        assert!(goal("LP", "", "p | ~p").is_proved());
    }

    #[test]
    fn mode_mismatch() {
        let k3 = lookup_logic("K3").unwrap();
        let p = k3.parse("p").unwrap();
        assert!(matches!(
            prove(&k3, GoalMode::Designated2, &[], &p),
            Err(Error::ModeMismatch { .. })
        ));
        assert!(prove(&k3, GoalMode::Liberal, &[], &p).is_ok());
    }

    #[test]
    fn countermodel_examples() {
        let k3 = lookup_logic("K3").unwrap();
        let cm = |t: &str| countermodel_from_leaf(&k3, &bs("K3", t)).unwrap();
        assert_eq!(cm("=> p | p =>"), h(&[("p", Value::Undef)]));
        // r sits in Σ, so it must be 0.
        assert_eq!(
            cm("p => q | => r"),
            h(&[("p", Value::One), ("q", Value::Zero), ("r", Value::Zero)])
        );
        // Atoms of the root missing from the open leaf default to u.
        let r = prove_bisequent(&k3, &bs("K3", "=> p | q & ~q =>")).unwrap();
        assert_eq!(r.countermodel().unwrap()["q"], Value::Undef);
        assert_eq!(cm("p => | p =>"), h(&[("p", Value::One)]));
        assert_eq!(
            countermodel_from_leaf(&k3, &bs("K3", "p => p | =>")),
            Err(Error::LeafPrecondition("axiomatic"))
        );
        assert_eq!(
            countermodel_from_leaf(&k3, &bs("K3", "~p => | =>")),
            Err(Error::LeafPrecondition("not atomic"))
        );
    }

    #[test]
    fn weakening_examples() {
        let k3 = lookup_logic("K3").unwrap();
        let base = bs("K3", "p & q => p | =>");
        assert!(admissible_weaken(&k3, &base, &bs("K3", "=> | r =>"))
            .unwrap()
            .is_proved());
        assert!(admissible_weaken(&k3, &base, &Bisequent::empty()).unwrap().is_proved());
        let lp = lookup_logic("LP").unwrap();
        let base = bs("LP", "=> | => (p | ~p)");
        assert!(admissible_weaken(&lp, &base, &bs("LP", "=> s | =>"))
            .unwrap()
            .is_proved());
    }

    #[test]
    fn cut_examples() {
        let k3 = lookup_logic("K3").unwrap();
        let q = k3.parse("q").unwrap();
        let r = admissible_cut(
            &k3,
            &bs("K3", "p => q | =>"),
            &bs("K3", "q => (q | r) | =>"),
            &q,
            CutVariant::Cut1,
        );
        // The left premiss is not provable, so the cut is not applicable.
        assert!(matches!(r, Err(Error::CutShape(_))));

        let left = bs("K3", "p, p -> q => q | =>");
        let right = bs("K3", "q => (q | r) | =>");
        let r = admissible_cut(&k3, &left, &right, &q, CutVariant::Cut1).unwrap();
        assert!(r.is_proved());
        assert_eq!(r.tree().node, bs("K3", "p, p -> q => (q | r) | =>"));

        let p = k3.parse("p").unwrap();
        let ax = bs("K3", "p => p | =>");
        let r = admissible_cut(&k3, &ax, &ax, &p, CutVariant::Cut1).unwrap();
        assert!(r.is_proved());
        assert_eq!(r.tree().node, ax);

        let bad = admissible_cut(&k3, &ax, &ax, &p, CutVariant::Cut2);
        assert!(matches!(bad, Err(Error::CutShape(_))));
    }

    #[test]
    fn json_view_is_stable() {
        let k3 = lookup_logic("K3").unwrap();
        let t = complete_search(&k3, &bs("K3", "p & q => p | =>")).unwrap();
        let v = t.view();
        assert_eq!(v.rule.as_deref(), Some("(&=>|)"));
        assert_eq!(v.children[0].status, Some(LeafStatus::Axiomatic));
        assert_eq!(t.view(), v);
    }

    #[test]
    fn modes_match_their_semantic_definitions() {
        for name in ["K3", "LP", "L3", "P1", "I1"] {
            let l = lookup_logic(name).unwrap();
            let fs: Vec<Formula> = ["p", "~p", "p -> q", "p & ~q", "q | ~q", "~(p -> p)"]
                .iter()
                .map(|s| l.parse(s).unwrap())
                .collect();
            for mode in [GoalMode::NoCounterexample, GoalMode::Liberal] {
                for g in &fs {
                    for c in &fs {
                        let proved = prove(&l, mode, std::slice::from_ref(g), c).unwrap().is_proved();
                        let sem = Oracle::default()
                            .mode_consequence(&l, mode, std::slice::from_ref(g), c)
                            .unwrap();
                        assert_eq!(proved, sem, "{name} {mode} {g} / {c}");
                    }
                }
            }
        }
    }

    fn arb_goal() -> impl Gen<Value = (String, Vec<String>, String)> {
        let logic = prop::sample::select(vec!["K3", "LP", "K3w", "PWK", "L3", "G3", "S3", "J3", "P1", "I2"]);
        let f = prop::sample::select(vec![
            "p",
            "q",
            "~p",
            "p & q",
            "p | q",
            "p -> q",
            "~(p -> q)",
            "(p & ~p) -> q",
            "~~p",
            "q -> (p -> q)",
        ]);
        (logic, prop::collection::vec(f.clone(), 0..3), f)
            .prop_map(|(l, ps, c)| (l.to_string(), ps.into_iter().map(String::from).collect(), c.to_string()))
    }

    proptest! {
        #[test]
        fn prover_agrees_with_oracle((name, ps, c) in arb_goal()) {
            let l = lookup_logic(&name).unwrap();
            let premisses: Vec<Formula> = ps.iter().map(|s| l.parse(s).unwrap()).collect();
            let conclusion = l.parse(&c).unwrap();
            let r = prove(&l, GoalMode::designated(&l), &premisses, &conclusion).unwrap();
            prop_assert_eq!(r.is_proved(), matrix_consequence(&l, &premisses, &conclusion).unwrap());
            if let Some(h) = r.countermodel() {
                prop_assert!(falsifies(&l, &r.tree().node, h).unwrap());
            }
        }

        #[test]
        fn strategies_agree((name, ps, c) in arb_goal()) {
            let l = lookup_logic(&name).unwrap();
            let premisses: Vec<Formula> = ps.iter().map(|s| l.parse(s).unwrap()).collect();
            let root = GoalMode::designated(&l).root(&premisses, &l.parse(&c).unwrap());
            let a = Prover::new(&l).complete_search(&root).unwrap();
            let b = Prover::new(&l).with_strategy(Strategy::RightmostInnermost).complete_search(&root).unwrap();
            prop_assert_eq!(a.is_proved(), b.is_proved());
            prop_assert_eq!(a.is_proved(), bisequent_valid(&l, &root).unwrap());
        }
    }
}
