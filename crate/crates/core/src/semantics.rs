//! Brute-force matrix semantics: exhaustive enumeration of assignments.
//!
//! Assignments enumerate atoms in sorted name order, values in the order
//! 0, u, 1, so results are lexicographic and deterministic. With the
//! `parallel` feature large enumerations are split across threads; the
//! sequential paths stay available and give identical answers.

use std::collections::BTreeSet;

use crate::bisequent::{Bisequent, SlotId};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::logics::{Assignment, Compiled, LogicDef, Value};
use crate::prover::GoalMode;

type ValueTest = fn(Value) -> bool;

pub const DEFAULT_MAX_ATOMS: usize = 12;

/// Enumerations below this size are never split across threads.
#[cfg(feature = "parallel")]
const PARALLEL_THRESHOLD: usize = 729;

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub max_atoms: usize,
    /// Use the thread pool when the `parallel` feature is on.
    pub parallel: bool,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            max_atoms: DEFAULT_MAX_ATOMS,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

/// A set of formulas, each with a slot constraint, compiled over a common
/// atom list.
struct Constraints {
    atoms: Vec<String>,
    items: Vec<(Compiled, SlotId)>,
}

impl Constraints {
    fn new(logic: &LogicDef, b: &Bisequent, max_atoms: usize) -> Result<Self> {
        let atoms: Vec<String> = b.atoms().into_iter().collect();
        if atoms.len() > max_atoms {
            return Err(Error::AtomCap {
                atoms: atoms.len(),
                cap: max_atoms,
            });
        }
        let items = b
            .formulas()
            .map(|(slot, f)| Ok((Compiled::new(logic, f, &atoms)?, slot)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Constraints { atoms, items })
    }

    fn falsified_by(&self, values: &[Value]) -> bool {
        self.items.iter().all(|(c, slot)| slot.constraint(c.eval(values)))
    }

    fn count(&self) -> usize {
        3usize.pow(self.atoms.len() as u32)
    }

    fn assignment(&self, values: &[Value]) -> Assignment {
        self.atoms.iter().cloned().zip(values.iter().copied()).collect()
    }
}

/// The `n`-th assignment in lexicographic order, first atom most significant.
pub fn decode(mut n: usize, atoms: usize) -> Vec<Value> {
    let mut out = vec![Value::Zero; atoms];
    for slot in out.iter_mut().rev() {
        *slot = Value::from_index(n % 3);
        n /= 3;
    }
    out
}

impl Oracle {
    pub fn new(max_atoms: usize) -> Self {
        Oracle {
            max_atoms,
            ..Oracle::default()
        }
    }

    pub fn sequential(self) -> Self {
        Oracle {
            parallel: false,
            ..self
        }
    }

    /// Index of the first falsifying assignment, if any.
    fn first_falsifier(&self, c: &Constraints) -> Option<usize> {
        let total = c.count();
        #[cfg(feature = "parallel")]
        if self.parallel && total >= PARALLEL_THRESHOLD {
            use rayon::prelude::*;
            return (0..total)
                .into_par_iter()
                .find_first(|&i| c.falsified_by(&decode(i, c.atoms.len())));
        }
        (0..total).find(|&i| c.falsified_by(&decode(i, c.atoms.len())))
    }

    fn all_falsifiers(&self, c: &Constraints) -> Vec<usize> {
        let total = c.count();
        #[cfg(feature = "parallel")]
        if self.parallel && total >= PARALLEL_THRESHOLD {
            use rayon::prelude::*;
            return (0..total)
                .into_par_iter()
                .filter(|&i| c.falsified_by(&decode(i, c.atoms.len())))
                .collect();
        }
        (0..total)
            .filter(|&i| c.falsified_by(&decode(i, c.atoms.len())))
            .collect()
    }

    /// No assignment meets every slot constraint of `b`.
    pub fn bisequent_valid(&self, logic: &LogicDef, b: &Bisequent) -> Result<bool> {
        let c = Constraints::new(logic, b, self.max_atoms)?;
        Ok(self.first_falsifier(&c).is_none())
    }

    /// Every falsifying assignment over the atoms of `b`, in lexicographic
    /// order.
    pub fn falsifying_assignments(&self, logic: &LogicDef, b: &Bisequent) -> Result<Vec<Assignment>> {
        let c = Constraints::new(logic, b, self.max_atoms)?;
        Ok(self
            .all_falsifiers(&c)
            .into_iter()
            .map(|i| c.assignment(&decode(i, c.atoms.len())))
            .collect())
    }

    /// `premisses ⊨ conclusion` in the logic's matrix, read directly from the
    /// designated set.
    pub fn matrix_consequence(&self, logic: &LogicDef, premisses: &[Formula], conclusion: &Formula) -> Result<bool> {
        let (atoms, ps, c) = self.compile_goal(logic, premisses, conclusion)?;
        let holds = |i: usize| {
            let vals = decode(i, atoms.len());
            !ps.iter().all(|p| logic.is_designated(p.eval(&vals))) || logic.is_designated(c.eval(&vals))
        };
        Ok(self.for_all(3usize.pow(atoms.len() as u32), holds))
    }

    /// Consequence under any of the four goal modes, coded from the value
    /// conditions of each mode rather than through bisequents:
    ///
    /// * designated_1: all premisses 1 ⇒ conclusion 1
    /// * designated_2: all premisses ≠ 0 ⇒ conclusion ≠ 0
    /// * no_counterexample: all premisses 1 ⇒ conclusion ≠ 0
    /// * liberal: all premisses ≠ 0 ⇒ conclusion 1
    pub fn mode_consequence(
        &self,
        logic: &LogicDef,
        mode: GoalMode,
        premisses: &[Formula],
        conclusion: &Formula,
    ) -> Result<bool> {
        let (atoms, ps, c) = self.compile_goal(logic, premisses, conclusion)?;
        let (pre, post): (ValueTest, ValueTest) = match mode {
            GoalMode::Designated1 => (|v| v == Value::One, |v| v == Value::One),
            GoalMode::Designated2 => (|v| v != Value::Zero, |v| v != Value::Zero),
            GoalMode::NoCounterexample => (|v| v == Value::One, |v| v != Value::Zero),
            GoalMode::Liberal => (|v| v != Value::Zero, |v| v == Value::One),
        };
        let holds = |i: usize| {
            let vals = decode(i, atoms.len());
            !ps.iter().all(|p| pre(p.eval(&vals))) || post(c.eval(&vals))
        };
        Ok(self.for_all(3usize.pow(atoms.len() as u32), holds))
    }

    fn compile_goal(
        &self,
        logic: &LogicDef,
        premisses: &[Formula],
        conclusion: &Formula,
    ) -> Result<(Vec<String>, Vec<Compiled>, Compiled)> {
        let mut set = BTreeSet::new();
        for f in premisses.iter().chain(std::iter::once(conclusion)) {
            f.collect_atoms(&mut set);
        }
        if set.len() > self.max_atoms {
            return Err(Error::AtomCap {
                atoms: set.len(),
                cap: self.max_atoms,
            });
        }
        let atoms: Vec<String> = set.into_iter().collect();
        let ps = premisses
            .iter()
            .map(|p| Compiled::new(logic, p, &atoms))
            .collect::<Result<Vec<_>>>()?;
        let c = Compiled::new(logic, conclusion, &atoms)?;
        Ok((atoms, ps, c))
    }

    fn for_all(&self, total: usize, holds: impl Fn(usize) -> bool + Sync + Send) -> bool {
        #[cfg(feature = "parallel")]
        if self.parallel && total >= PARALLEL_THRESHOLD {
            use rayon::prelude::*;
            return (0..total).into_par_iter().all(holds);
        }
        (0..total).all(holds)
    }
}

/// Does `h` falsify `b`? `h` must cover the atoms of `b`.
pub fn falsifies(logic: &LogicDef, b: &Bisequent, h: &Assignment) -> Result<bool> {
    for (slot, f) in b.formulas() {
        if !slot.constraint(crate::logics::eval(logic, h, f)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn matrix_consequence(logic: &LogicDef, premisses: &[Formula], conclusion: &Formula) -> Result<bool> {
    Oracle::default().matrix_consequence(logic, premisses, conclusion)
}

pub fn bisequent_valid(logic: &LogicDef, b: &Bisequent) -> Result<bool> {
    Oracle::default().bisequent_valid(logic, b)
}

pub fn falsifying_assignments(logic: &LogicDef, b: &Bisequent) -> Result<Vec<Assignment>> {
    Oracle::default().falsifying_assignments(logic, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logics::lookup_logic;
    use proptest::prelude::*;

    fn goal(logic: &str, ps: &str, c: &str) -> bool {
        let l = lookup_logic(logic).unwrap();
        matrix_consequence(&l, &l.parse_list(ps).unwrap(), &l.parse(c).unwrap()).unwrap()
    }

    fn bs(logic: &str, text: &str) -> Bisequent {
        Bisequent::parse(&lookup_logic(logic).unwrap(), text).unwrap()
    }

    fn h(pairs: &[(&str, Value)]) -> Assignment {
        pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn consequence_examples() {
        assert!(goal("K3", "p, p -> q", "q"));
        assert!(!goal("LP", "p, p -> q", "q"));
        assert!(!goal("K3", "", "p | ~p"));
        assert!(goal("LP", "", "p | ~p"));
    }

    #[test]
    fn validity_examples() {
        let k3 = lookup_logic("K3").unwrap();
        assert!(bisequent_valid(&k3, &bs("K3", "p => p | =>")).unwrap());
        assert!(!bisequent_valid(&k3, &bs("K3", "=> p | p =>")).unwrap());
        assert!(bisequent_valid(&k3, &bs("K3", "p => | => p")).unwrap());
    }

    #[test]
    fn falsifier_examples() {
        let k3 = lookup_logic("K3").unwrap();
        assert_eq!(
            falsifying_assignments(&k3, &bs("K3", "=> p | p =>")).unwrap(),
            vec![h(&[("p", Value::Undef)])]
        );
        assert!(falsifying_assignments(&k3, &bs("K3", "p => p | =>"))
            .unwrap()
            .is_empty());
        assert_eq!(
            falsifying_assignments(&k3, &bs("K3", "=> (p | ~p) | =>")).unwrap(),
            vec![h(&[("p", Value::Undef)])]
        );
    }

    #[test]
    fn atom_cap() {
        let k3 = lookup_logic("K3").unwrap();
        let b = bs("K3", "a, b, c => | =>");
        assert_eq!(
            Oracle::new(2).bisequent_valid(&k3, &b),
            Err(Error::AtomCap { atoms: 3, cap: 2 })
        );
    }

    #[test]
    fn falsifiers_are_lexicographic() {
        let k3 = lookup_logic("K3").unwrap();
        let all = falsifying_assignments(&k3, &bs("K3", "=> p & q | =>")).unwrap();
        assert_eq!(all.len(), 8);
        let keys: Vec<Vec<Value>> = all.iter().map(|h| h.values().copied().collect()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn parallel_and_sequential_agree_on_a_large_enumeration() {
        let k3 = lookup_logic("K3").unwrap();
        let b = bs("K3", "a & b, c | d => e -> f | g => ~h");
        let par = Oracle::default().falsifying_assignments(&k3, &b).unwrap();
        let seq = Oracle::default().sequential().falsifying_assignments(&k3, &b).unwrap();
        assert_eq!(par, seq);
        assert!(!par.is_empty());
    }

    proptest! {
        #[test]
        fn consequence_matches_goal_bisequent(
            ps in prop::collection::vec(prop::sample::select(vec!["p", "~q", "p -> q", "p & ~p", "q | r"]), 0..3),
            c in prop::sample::select(vec!["q", "p | ~p", "~(p & q)", "r -> p"]),
            two in any::<bool>(),
        ) {
            let logic = lookup_logic(if two { "LP" } else { "K3" }).unwrap();
            let premisses: Vec<Formula> = ps.iter().map(|s| logic.parse(s).unwrap()).collect();
            let conclusion = logic.parse(c).unwrap();
            let root = if two {
                Bisequent::new(vec![], vec![], premisses.clone(), vec![conclusion.clone()])
            } else {
                Bisequent::new(premisses.clone(), vec![conclusion.clone()], vec![], vec![])
            };
            prop_assert_eq!(
                matrix_consequence(&logic, &premisses, &conclusion).unwrap(),
                bisequent_valid(&logic, &root).unwrap()
            );
            prop_assert_eq!(
                falsifying_assignments(&logic, &root).unwrap().is_empty(),
                bisequent_valid(&logic, &root).unwrap()
            );
        }

        #[test]
        fn validity_is_monotone(extra in prop::sample::select(vec!["p", "q & r", "~s"]), slot in 0usize..4) {
            let k3 = lookup_logic("K3").unwrap();
            for text in ["p => p | =>", "p & q => p | =>", "=> | p => p | q"] {
                let b = bs("K3", text);
                let w = b.clone().with(SlotId::ALL[slot], k3.parse(extra).unwrap());
                prop_assert!(!bisequent_valid(&k3, &b).unwrap() || bisequent_valid(&k3, &w).unwrap());
            }
        }
    }
}
