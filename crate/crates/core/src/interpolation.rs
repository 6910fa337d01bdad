//! Craig interpolants for I1, I2, P1 and P2, read off the open leaves of the
//! search trees for the two sides of an entailment.
//!
//! For the I-logics the trees are `φ => | =>` and `=> ψ | =>`; for the
//! P-logics `=> | φ =>` and `=> | => ψ`. Writing Γ, Δ, Π, Σ for the slots of
//! a φ-side leaf and Θ, Λ, Ξ, Ω for those of the ψ-side leaves, each φ-side
//! leaf keeps the atoms that can close it against every ψ-side leaf:
//!
//! ```text
//! Γ' = Γ ∩ (⋃Λ ∪ ⋃Ω)    Δ' = Δ ∩ ⋃Θ    Π' = Π ∩ ⋃Ω    Σ' = Σ ∩ (⋃Θ ∪ ⋃Ξ)
//! ```
//!
//! and contributes one disjunct, `⋀Γ' ∧ ⋀~Σ' ∧ ~(⋁~Π' ∨ ⋁Δ')` for I-logics or
//! `⋀Π' ∧ ⋀~Δ' ∧ ~(⋁~Γ' ∨ ⋁Σ')` for P-logics. Empty parts are left out.

use std::collections::BTreeSet;

use crate::bisequent::{has_identity_axiom, Bisequent, SlotId};
use crate::error::{Error, Result};
use crate::formula::{ConnectiveId, Formula};
use crate::logics::LogicDef;
use crate::prover::{GoalMode, Prover};
use crate::semantics::Oracle;

/// Atom sets of one leaf, indexed by slot.
pub type AtomLeaf = [BTreeSet<String>; 4];

/// The open atomic leaves of one search tree.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LeafData {
    pub leaves: Vec<AtomLeaf>,
}

impl LeafData {
    pub fn from_leaves<'a>(leaves: impl IntoIterator<Item = &'a Bisequent>) -> Self {
        let leaves = leaves
            .into_iter()
            .map(|b| {
                SlotId::ALL.map(|s| {
                    b.slot(s)
                        .iter()
                        .filter_map(|f| match f {
                            Formula::Atom(a) => Some(a.to_string()),
                            _ => None,
                        })
                        .collect()
                })
            })
            .collect();
        LeafData { leaves }
    }

    fn union(&self, slot: SlotId) -> BTreeSet<String> {
        self.leaves
            .iter()
            .flat_map(|l| l[slot.index()].iter().cloned())
            .collect()
    }
}

/// The primed sets of one φ-side leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimedSets {
    pub gamma: BTreeSet<String>,
    pub delta: BTreeSet<String>,
    pub pi: BTreeSet<String>,
    pub sigma: BTreeSet<String>,
}

impl PrimedSets {
    pub fn is_empty(&self) -> bool {
        self.gamma.is_empty() && self.delta.is_empty() && self.pi.is_empty() && self.sigma.is_empty()
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        [&self.gamma, &self.delta, &self.pi, &self.sigma]
            .into_iter()
            .flatten()
            .cloned()
            .collect()
    }
}

/// Every cross pair of leaves joins into an axiomatic bisequent.
pub fn combined_leaf_check(phi: &LeafData, psi: &LeafData) -> bool {
    phi.leaves
        .iter()
        .all(|l| psi.leaves.iter().all(|r| has_identity_axiom(&join(l, r))))
}

fn join(l: &AtomLeaf, r: &AtomLeaf) -> Bisequent {
    let slot = |i: usize| -> Vec<Formula> { l[i].iter().chain(r[i].iter()).map(|a| Formula::atom(a)).collect() };
    Bisequent::new(slot(0), slot(1), slot(2), slot(3))
}

pub fn primed_sets(phi: &LeafData, psi: &LeafData) -> Vec<PrimedSets> {
    let theta = psi.union(SlotId::Ant1);
    let lambda = psi.union(SlotId::Suc1);
    let xi = psi.union(SlotId::Ant2);
    let omega = psi.union(SlotId::Suc2);
    let lambda_omega: BTreeSet<_> = lambda.union(&omega).cloned().collect();
    let theta_xi: BTreeSet<_> = theta.union(&xi).cloned().collect();
    phi.leaves
        .iter()
        .map(|[g, d, p, s]| PrimedSets {
            gamma: g.intersection(&lambda_omega).cloned().collect(),
            delta: d.intersection(&theta).cloned().collect(),
            pi: p.intersection(&omega).cloned().collect(),
            sigma: s.intersection(&theta_xi).cloned().collect(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Family {
    I,
    P,
}

fn family(logic: &LogicDef) -> Result<Family> {
    match logic.name.as_str() {
        "I1" | "I2" => Ok(Family::I),
        "P1" | "P2" => Ok(Family::P),
        other => Err(Error::InterpolationUnsupported(other.to_string())),
    }
}

fn conj(parts: Vec<Formula>) -> Option<Formula> {
    parts
        .into_iter()
        .reduce(|a, b| Formula::binary(ConnectiveId::And, a, b))
}

fn disj(parts: Vec<Formula>) -> Option<Formula> {
    parts.into_iter().reduce(|a, b| Formula::binary(ConnectiveId::Or, a, b))
}

fn neg(f: Formula) -> Formula {
    Formula::unary(ConnectiveId::Neg, f)
}

fn atoms(set: &BTreeSet<String>) -> impl Iterator<Item = Formula> + '_ {
    set.iter().map(|a| Formula::atom(a))
}

/// One disjunct of the interpolant.
fn disjunct(fam: Family, s: &PrimedSets) -> Formula {
    // `pos` enters plainly, `negd` negated, and the last conjunct is
    // ~(⋁~inner_neg ∨ ⋁inner_pos).
    let (pos, negd, inner_neg, inner_pos) = match fam {
        Family::I => (&s.gamma, &s.sigma, &s.pi, &s.delta),
        Family::P => (&s.pi, &s.delta, &s.gamma, &s.sigma),
    };
    let mut parts: Vec<Formula> = atoms(pos).collect();
    parts.extend(atoms(negd).map(neg));
    let mut inner: Vec<Formula> = atoms(inner_neg).map(neg).chain(atoms(inner_pos)).collect();
    // The negated conjunct needs a real disjunction: its rules are what move
    // the literals between the sequents, since the disjunction is two-valued.
    // A lone literal d is written d | d, never as plain d.
    if inner.len() == 1 {
        inner.push(inner[0].clone());
    }
    if let Some(d) = disj(inner) {
        parts.push(neg(d));
    }
    conj(parts).expect("primed sets are nonempty")
}

/// Builds the interpolant from leaf data. Identical disjuncts are kept once.
pub fn interpolant_from_leaves(logic: &LogicDef, phi: &LeafData, psi: &LeafData) -> Result<Formula> {
    let fam = family(logic)?;
    let mut seen = BTreeSet::new();
    let mut disjuncts = Vec::new();
    for s in primed_sets(phi, psi) {
        if s.is_empty() {
            return Err(Error::NotEntailed);
        }
        let d = disjunct(fam, &s);
        if seen.insert(d.clone()) {
            disjuncts.push(d);
        }
    }
    disj(disjuncts).ok_or(Error::NotContingent("the premiss"))
}

/// Open leaves of the φ-side and ψ-side trees.
pub fn side_leaves(logic: &LogicDef, phi: &Formula, psi: &Formula) -> Result<(LeafData, LeafData)> {
    let fam = family(logic)?;
    let (ps, cs) = match fam {
        Family::I => (SlotId::Ant1, SlotId::Suc1),
        Family::P => (SlotId::Ant2, SlotId::Suc2),
    };
    let mut prover = Prover::new(logic);
    let left = prover.complete_search(&Bisequent::empty().with(ps, phi.clone()))?;
    let right = prover.complete_search(&Bisequent::empty().with(cs, psi.clone()))?;
    Ok((
        LeafData::from_leaves(left.open_leaves()),
        LeafData::from_leaves(right.open_leaves()),
    ))
}

pub fn interpolate(logic: &LogicDef, phi: &Formula, psi: &Formula) -> Result<Formula> {
    family(logic)?;
    if !Oracle::default().matrix_consequence(logic, std::slice::from_ref(phi), psi)? {
        return Err(Error::NotEntailed);
    }
    let (left, right) = side_leaves(logic, phi, psi)?;
    if left.leaves.is_empty() {
        return Err(Error::NotContingent("the premiss"));
    }
    if right.leaves.is_empty() {
        return Err(Error::NotContingent("the conclusion"));
    }
    if phi.atoms().is_disjoint(&psi.atoms()) {
        return Err(Error::NoSharedAtoms);
    }
    if !combined_leaf_check(&left, &right) {
        return Err(Error::NotEntailed);
    }
    interpolant_from_leaves(logic, &left, &right)
}

/// Atom inclusion plus both entailments, each confirmed by the oracle and by
/// the prover.
pub fn verify_interpolant(logic: &LogicDef, phi: &Formula, psi: &Formula, int: &Formula) -> Result<bool> {
    let shared: BTreeSet<String> = phi.atoms().intersection(&psi.atoms()).cloned().collect();
    if !int.atoms().is_subset(&shared) {
        return Ok(false);
    }
    let mode = GoalMode::designated(logic);
    let oracle = Oracle::default();
    let mut prover = Prover::new(logic);
    for (a, b) in [(phi, int), (int, psi)] {
        let sem = oracle.matrix_consequence(logic, std::slice::from_ref(a), b)?;
        let syn = prover.prove(mode, std::slice::from_ref(a), b)?.is_proved();
        if !(sem && syn) {
            return Ok(false);
        }
    }
    Ok(true)
}
