//! Exhaustive formula enumeration and batch prover/oracle comparison.
//!
//! Batches run on the rayon pool when the `parallel` feature is on and
//! [`Exec::Parallel`] is requested; otherwise they run in order on the calling
//! thread. Results are collected by index, so both paths return identical
//! output.
//!
//! Single-premiss goals are decided through leaf profiles. Rules never look at
//! their context, so the open leaves of `γ => φ | =>` are exactly the
//! nonaxiomatic unions of an open leaf of `γ => | =>` with an open leaf of
//! `=> φ | =>` (likewise for the 2-sequent). Formulas with the same set of
//! open leaves therefore behave identically as premisses (or as
//! conclusions), and one real proof per pair of profile classes decides every
//! goal in the product. [`check_leaf_product`] tests that identity directly.

use std::collections::{BTreeMap, BTreeSet};

use crate::bisequent::{is_axiomatic, Bisequent, SlotId};
use crate::error::Result;
use crate::formula::{ConnectiveId, Constant, Formula};
use crate::logics::{Assignment, Compiled, LogicDef, Value};
use crate::prover::{GoalMode, Prover, SearchResult};
use crate::semantics::{decode, falsifies, Oracle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

/// `f(0), …, f(n-1)` in order.
pub fn map_indexed<T, F>(n: usize, exec: Exec, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec == Exec::Parallel {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Every formula over `atoms` (and the constants, if asked) with at most
/// `max_connectives` connectives from `signature`, grouped by complexity.
pub fn enumerate_formulas(
    signature: &BTreeSet<ConnectiveId>,
    atoms: &[&str],
    constants: bool,
    max_connectives: usize,
) -> Vec<Formula> {
    let mut levels: Vec<Vec<Formula>> = Vec::new();
    let mut base: Vec<Formula> = atoms.iter().map(|a| Formula::atom(a)).collect();
    if constants {
        base.extend([Constant::Top, Constant::Bottom, Constant::Undef].map(Formula::Constant));
    }
    levels.push(base);
    for c in 1..=max_connectives {
        let mut level = Vec::new();
        for &conn in signature {
            if conn.arity() == 1 {
                for f in &levels[c - 1] {
                    level.push(Formula::unary(conn, f.clone()));
                }
            } else {
                for i in 0..c {
                    for l in &levels[i] {
                        for r in &levels[c - 1 - i] {
                            level.push(Formula::binary(conn, l.clone(), r.clone()));
                        }
                    }
                }
            }
        }
        levels.push(level);
    }
    levels.into_iter().flatten().collect()
}

/// Values of each formula under the `3^k` assignments to `atoms`, in
/// lexicographic order.
pub fn value_vectors(logic: &LogicDef, formulas: &[Formula], atoms: &[&str], exec: Exec) -> Result<Vec<Vec<Value>>> {
    let names: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
    let total = 3usize.pow(atoms.len() as u32);
    map_indexed(formulas.len(), exec, |i| {
        let c = Compiled::new(logic, &formulas[i], &names)?;
        Ok((0..total).map(|n| c.eval(&decode(n, names.len()))).collect())
    })
    .into_iter()
    .collect()
}

/// Index of an assignment over `atoms`; atoms missing from `h` count as u.
fn assignment_index(h: &Assignment, atoms: &[&str]) -> usize {
    atoms
        .iter()
        .fold(0, |acc, a| acc * 3 + h.get(*a).copied().unwrap_or(Value::Undef).index())
}

/// A leaf with duplicates removed from every slot.
fn set_form(b: &Bisequent) -> Bisequent {
    let dedup = |s: SlotId| {
        let mut v = b.slot(s).to_vec();
        v.dedup();
        v
    };
    Bisequent::new(
        dedup(SlotId::Ant1),
        dedup(SlotId::Suc1),
        dedup(SlotId::Ant2),
        dedup(SlotId::Suc2),
    )
}

/// Open leaves of the one-formula tree with `f` in `slot`, in set form.
pub fn leaf_profile(prover: &mut Prover<'_>, slot: SlotId, f: &Formula) -> Result<BTreeSet<Bisequent>> {
    let tree = prover.complete_search(&Bisequent::empty().with(slot, f.clone()))?;
    Ok(tree.open_leaves().into_iter().map(set_form).collect())
}

/// Checks that the open leaves of the goal `γ ⊢ φ` are the nonaxiomatic
/// unions of the open leaves of its two halves.
pub fn check_leaf_product(logic: &LogicDef, mode: GoalMode, premiss: &Formula, conclusion: &Formula) -> Result<bool> {
    let (ps, cs) = mode.slots();
    let mut prover = Prover::new(logic);
    let left = leaf_profile(&mut prover, ps, premiss)?;
    let right = leaf_profile(&mut prover, cs, conclusion)?;
    let mut expected = BTreeSet::new();
    for l in &left {
        for r in &right {
            let u = set_form(&l.union(r));
            if !is_axiomatic(logic, &u) {
                expected.insert(u);
            }
        }
    }
    let root = mode.root(std::slice::from_ref(premiss), conclusion);
    let actual: BTreeSet<Bisequent> = prover
        .complete_search(&root)?
        .open_leaves()
        .into_iter()
        .map(set_form)
        .collect();
    Ok(actual == expected)
}

/// Outcome of comparing prover and oracle over a formula set.
#[derive(Debug, Clone, Default)]
pub struct SweepReport {
    pub formulas: usize,
    /// Goals decided, with and without a premiss.
    pub goals: u64,
    pub disagreements: Vec<String>,
    /// Refutations whose countermodel was checked against the root.
    pub refutations: u64,
    pub bad_countermodels: Vec<String>,
    pub premiss_classes: usize,
    pub conclusion_classes: usize,
    /// Goals proved directly: empty-premiss goals, class representatives and
    /// sampled pairs.
    pub direct_proofs: u64,
    /// Sampled pairs where the class verdict differs from a direct proof, or
    /// the leaf product identity fails.
    pub reduction_failures: Vec<String>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.disagreements.is_empty() && self.bad_countermodels.is_empty() && self.reduction_failures.is_empty()
    }
}

/// Class id of each key (numbered by first occurrence) and one
/// representative index per class.
fn classify<'k, K: Ord + 'k>(keys: impl Iterator<Item = &'k K>) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<&K, usize> = BTreeMap::new();
    let mut reps = Vec::new();
    let class = keys
        .enumerate()
        .map(|(i, k)| {
            *ids.entry(k).or_insert_with(|| {
                reps.push(i);
                reps.len() - 1
            })
        })
        .collect();
    (class, reps)
}

struct Direct {
    proved: bool,
    countermodel: Option<Assignment>,
    oracle: bool,
    countermodel_ok: bool,
}

fn direct(logic: &LogicDef, mode: GoalMode, premisses: &[Formula], conclusion: &Formula) -> Result<Direct> {
    let r = Prover::new(logic).prove(mode, premisses, conclusion)?;
    let oracle = Oracle::default()
        .sequential()
        .matrix_consequence(logic, premisses, conclusion)?;
    let (proved, countermodel, countermodel_ok) = match &r {
        SearchResult::Proved { .. } => (true, None, true),
        SearchResult::Refuted { tree, countermodel, .. } => (
            false,
            Some(countermodel.clone()),
            falsifies(logic, &tree.node, countermodel)?,
        ),
    };
    Ok(Direct {
        proved,
        countermodel,
        oracle,
        countermodel_ok,
    })
}

/// Compares `prove` in the logic's designated mode with matrix consequence
/// on every goal `⊢ φ` and `γ ⊢ φ` with `γ, φ` drawn from `formulas`, all of
/// them over `atoms`. `samples` lists (premiss, conclusion) index pairs that
/// are additionally proved directly and checked against the class verdict.
pub fn prover_oracle_sweep(
    logic: &LogicDef,
    formulas: &[Formula],
    atoms: &[&str],
    samples: &[(usize, usize)],
    exec: Exec,
) -> Result<SweepReport> {
    let mode = GoalMode::designated(logic);
    let (ps, cs) = mode.slots();
    let n = formulas.len();
    let values = value_vectors(logic, formulas, atoms, exec)?;
    let designated: Vec<u32> = values
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| logic.is_designated(**x))
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let mut report = SweepReport {
        formulas: n,
        ..SweepReport::default()
    };

    // Goals without premisses, all proved directly.
    let empty = map_indexed(n, exec, |i| direct(logic, mode, &[], &formulas[i]));
    for (i, d) in empty.into_iter().enumerate() {
        let d = d?;
        report.goals += 1;
        report.direct_proofs += 1;
        if d.proved != d.oracle {
            report
                .disagreements
                .push(format!("=> {}: prover {} oracle {}", formulas[i], d.proved, d.oracle));
        }
        if !d.proved {
            report.refutations += 1;
            if !d.countermodel_ok {
                report
                    .bad_countermodels
                    .push(format!("=> {}: {:?}", formulas[i], d.countermodel));
            }
        }
    }

    // Leaf profiles and their classes.
    let profiles = map_indexed(n, exec, |i| -> Result<_> {
        let mut prover = Prover::new(logic);
        Ok((
            leaf_profile(&mut prover, ps, &formulas[i])?,
            leaf_profile(&mut prover, cs, &formulas[i])?,
        ))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let (pclass, preps) = classify(profiles.iter().map(|p| &p.0));
    let (cclass, creps) = classify(profiles.iter().map(|p| &p.1));
    report.premiss_classes = preps.len();
    report.conclusion_classes = creps.len();

    // One real proof per class pair.
    let nc = creps.len();
    let table = map_indexed(preps.len() * nc, exec, |k| {
        let (g, f) = (preps[k / nc], creps[k % nc]);
        direct(logic, mode, std::slice::from_ref(&formulas[g]), &formulas[f])
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    report.direct_proofs += table.len() as u64;
    let cm_index: Vec<Option<usize>> = table
        .iter()
        .map(|d| d.countermodel.as_ref().map(|h| assignment_index(h, atoms)))
        .collect();

    // Every pair against the oracle, with countermodel checks. Both depend
    // only on the class and the value vector of each side, so formulas are
    // grouped by that key and each pair of groups stands for all its pairs.
    let group = |class: &[usize]| {
        let keys: Vec<(usize, &Vec<Value>)> = (0..n).map(|i| (class[i], &values[i])).collect();
        let (of, reps) = classify(keys.iter());
        let mut size = vec![0u64; reps.len()];
        for g in of {
            size[g] += 1;
        }
        (reps, size)
    };
    let (pgroups, psize) = group(&pclass);
    let (cgroups, csize) = group(&cclass);
    let rows = map_indexed(pgroups.len(), exec, |i| {
        let g = pgroups[i];
        let mut bad = Vec::new();
        let mut cms = Vec::new();
        let mut refuted = 0u64;
        for (j, &f) in cgroups.iter().enumerate() {
            let pairs = psize[i] * csize[j];
            let k = pclass[g] * nc + cclass[f];
            let proved = table[k].proved;
            let oracle = designated[g] & !designated[f] == 0;
            if proved != oracle {
                bad.push(format!(
                    "{} => {} and {} similar goals: prover {proved} oracle {oracle}",
                    formulas[g],
                    formulas[f],
                    pairs - 1
                ));
            }
            if let Some(h) = cm_index[k] {
                refuted += pairs;
                if !(ps.constraint(values[g][h]) && cs.constraint(values[f][h])) {
                    cms.push(format!(
                        "{} => {} and {} similar goals: assignment #{h}",
                        formulas[g],
                        formulas[f],
                        pairs - 1
                    ));
                }
            }
        }
        (bad, cms, refuted)
    });
    for (bad, cms, refuted) in rows {
        report.disagreements.extend(bad);
        report.bad_countermodels.extend(cms);
        report.refutations += refuted;
    }
    report.goals += (n * n) as u64;

    // Sampled pairs: a direct proof must match the class verdict, and the
    // leaf product identity must hold.
    let checks = map_indexed(samples.len(), exec, |s| -> Result<Option<String>> {
        let (g, f) = samples[s];
        let d = direct(logic, mode, std::slice::from_ref(&formulas[g]), &formulas[f])?;
        let class = table[pclass[g] * nc + cclass[f]].proved;
        let product = check_leaf_product(logic, mode, &formulas[g], &formulas[f])?;
        Ok(
            if d.proved != class || d.proved != d.oracle || !d.countermodel_ok || !product {
                Some(format!(
                    "{} => {}: direct {} class {class} oracle {} countermodel ok {} leaf product {product}",
                    formulas[g], formulas[f], d.proved, d.oracle, d.countermodel_ok
                ))
            } else {
                None
            },
        )
    });
    for c in checks {
        if let Some(msg) = c? {
            report.reduction_failures.push(msg);
        }
    }
    report.direct_proofs += samples.len() as u64;
    Ok(report)
}

/// Proves every goal with at most one premiss from `formulas` directly and
/// compares with the oracle. Quadratic in proofs; for small formula sets.
pub fn direct_sweep(logic: &LogicDef, formulas: &[Formula], exec: Exec) -> Result<SweepReport> {
    let mode = GoalMode::designated(logic);
    let n = formulas.len();
    let rows = map_indexed(n + 1, exec, |g| -> Result<(Vec<String>, Vec<String>, u64)> {
        let premisses: Vec<Formula> = if g == n { vec![] } else { vec![formulas[g].clone()] };
        let mut bad = Vec::new();
        let mut cms = Vec::new();
        let mut refuted = 0;
        for f in formulas {
            let d = direct(logic, mode, &premisses, f)?;
            if d.proved != d.oracle {
                bad.push(format!("{premisses:?} => {f}: prover {} oracle {}", d.proved, d.oracle));
            }
            if !d.proved {
                refuted += 1;
                if !d.countermodel_ok {
                    cms.push(format!("{premisses:?} => {f}"));
                }
            }
        }
        Ok((bad, cms, refuted))
    });
    let mut report = SweepReport {
        formulas: n,
        ..SweepReport::default()
    };
    for row in rows {
        let (bad, cms, refuted) = row?;
        report.disagreements.extend(bad);
        report.bad_countermodels.extend(cms);
        report.refutations += refuted;
    }
    report.goals = ((n + 1) * n) as u64;
    report.direct_proofs = report.goals;
    Ok(report)
}
