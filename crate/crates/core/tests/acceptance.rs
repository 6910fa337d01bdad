//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All tolerances are exact.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use ::bisequent::calculus::verify_against_table;
use ::bisequent::logics::SlotTreatment;
use ::bisequent::prover::{admissible_cut, rule_instances, CutVariant};
use ::bisequent::sweep::{direct_sweep, enumerate_formulas, prover_oracle_sweep, Exec, SweepReport};
use ::bisequent::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const ATOMS: [&str; 2] = ["p", "q"];
const MAX_CONNECTIVES: usize = 3;
const DIRECT_SAMPLES: usize = 2000;
const ADMISSIBILITY_SAMPLES: usize = 1000;
const CUT_SAMPLES: usize = 500;
const INTERPOLATION_SAMPLES: usize = 100;
const ATTEMPT_CAP: usize = 400_000;

type Res<T> = std::result::Result<T, String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

// Values as numbers: 0, u = 1, 1 = 2.
fn v(n: u8) -> Value {
    Value::from_index(n as usize)
}

fn strong_and(a: u8, b: u8) -> u8 {
    a.min(b)
}

fn strong_or(a: u8, b: u8) -> u8 {
    a.max(b)
}

fn sobocinski_and(a: u8, b: u8) -> u8 {
    match (a, b) {
        (1, x) | (x, 1) => x,
        _ => a.min(b),
    }
}

fn sobocinski_or(a: u8, b: u8) -> u8 {
    match (a, b) {
        (1, x) | (x, 1) => x,
        _ => a.max(b),
    }
}

type HandTable = Box<dyn Fn(&[u8]) -> u8>;

/// Independent copy of every named table, as functions on 0, u = 1, 1 = 2.
fn hand_tables() -> BTreeMap<&'static str, HandTable> {
    let mut t: BTreeMap<&'static str, HandTable> = BTreeMap::new();
    let un = |f: fn(u8) -> u8| -> HandTable { Box::new(move |x: &[u8]| f(x[0])) };
    let bin = |f: fn(u8, u8) -> u8| -> HandTable { Box::new(move |x: &[u8]| f(x[0], x[1])) };
    t.insert("neg_kleene", un(|a| 2 - a));
    t.insert("neg_heyting", un(|a| if a == 0 { 2 } else { 0 }));
    t.insert("neg_bochvar", un(|a| if a == 2 { 0 } else { 2 }));
    t.insert("neg_post", un(|a| (a + 2) % 3));
    t.insert("neg_dual_post", un(|a| (a + 1) % 3));
    t.insert("possibility", un(|a| if a == 0 { 0 } else { 2 }));
    t.insert("necessity", un(|a| if a == 2 { 2 } else { 0 }));

    t.insert("and_strong", bin(strong_and));
    t.insert("or_strong", bin(strong_or));
    t.insert("imp_kleene", bin(|a, b| strong_or(2 - a, b)));

    t.insert("and_weak", bin(|a, b| if a == 1 || b == 1 { 1 } else { a.min(b) }));
    t.insert("or_weak", bin(|a, b| if a == 1 || b == 1 { 1 } else { a.max(b) }));
    t.insert(
        "imp_weak",
        bin(|a, b| if a == 1 || b == 1 { 1 } else { (2 - a).max(b) }),
    );

    // Left to right evaluation: an undefined left argument poisons the result.
    t.insert("and_mccarthy", bin(|a, b| [0, 1, b][a as usize]));
    t.insert("or_mccarthy", bin(|a, b| [b, 1, 2][a as usize]));
    t.insert("imp_mccarthy", bin(|a, b| [2, 1, b][a as usize]));

    // Mirror image: the right argument is inspected first.
    t.insert("and_komendantskaya", bin(|a, b| [0, 1, a][b as usize]));
    t.insert("or_komendantskaya", bin(|a, b| [a, 1, 2][b as usize]));
    t.insert("imp_komendantskaya", bin(|a, b| [2 - a, 1, 2][b as usize]));

    t.insert("imp_lukasiewicz", bin(|a, b| (2 + b).saturating_sub(a).min(2)));
    t.insert("imp_slupecki", bin(|a, b| if a == 2 { b } else { 2 }));
    t.insert("imp_heyting", bin(|a, b| if a <= b { 2 } else { b }));
    t.insert("and_lukasiewicz", bin(|a, b| (a + b).saturating_sub(2)));
    t.insert("or_lukasiewicz", bin(|a, b| (a + b).min(2)));

    t.insert("and_sobocinski", bin(sobocinski_and));
    t.insert("or_sobocinski", bin(sobocinski_or));
    t.insert("imp_sobocinski", bin(|a, b| sobocinski_or(2 - a, b)));
    t.insert(
        "imp_sobocinski_prime",
        Box::new(|x: &[u8]| [[2, 1, 2], [0, 2, 2], [0, 1, 2]][x[0] as usize][x[1] as usize]),
    );
    t.insert("imp_jaskowski", bin(|a, b| if a == 0 { 2 } else { b }));

    t.insert("and_carnielli", bin(|a, b| if a == 2 && b == 2 { 2 } else { 0 }));
    t.insert("or_carnielli", bin(|a, b| if a == 2 || b == 2 { 2 } else { 0 }));
    t.insert("imp_carnielli", bin(|a, b| if a == 2 && b != 2 { 0 } else { 2 }));

    t.insert("and_sette", bin(|a, b| if a == 0 || b == 0 { 0 } else { 2 }));
    t.insert("or_sette", bin(|a, b| if a == 0 && b == 0 { 0 } else { 2 }));
    t.insert("imp_sette", bin(|a, b| if a != 0 && b == 0 { 0 } else { 2 }));

    t.insert("imp_rescher", bin(|a, b| if a <= b { 2 } else { 0 }));
    t.insert(
        "imp_tomova",
        bin(|a, b| match (a, b) {
            _ if a <= b => 2,
            (1, 0) => 1,
            _ => 0,
        }),
    );

    t.insert("circ1", bin(|a, b| if a != 1 && b == 0 { 1 } else { 2 }));
    t.insert("circ2", bin(|a, b| if a == 2 && b == 0 { 1 } else { 2 }));
    t
}

fn tuples(arity: usize) -> Vec<Vec<u8>> {
    (0..3usize.pow(arity as u32))
        .map(|n| (0..arity).rev().map(|i| (n / 3usize.pow(i as u32) % 3) as u8).collect())
        .collect()
}

fn criterion_1(reg: &Registry) -> Res<String> {
    let hand = hand_tables();
    let mut cells = 0;
    for (name, table) in reg.tables() {
        let f = hand.get(name.as_str()).ok_or(format!("no hand copy of {name}"))?;
        for t in tuples(table.arity()) {
            let args: Vec<Value> = t.iter().map(|&x| v(x)).collect();
            if table.apply(&args) != v(f(&t)) {
                return Err(format!("{name} differs at {t:?}"));
            }
            cells += 1;
        }
    }
    let unused: Vec<_> = hand.keys().filter(|k| !reg.tables().contains_key(**k)).collect();
    if !unused.is_empty() {
        return Err(format!("hand copies without a catalog table: {unused:?}"));
    }
    // Every connective points at its named table.
    for logic in reg.logics() {
        for c in logic.connectives.values() {
            if !Arc::ptr_eq(&c.table, &reg.tables()[&c.table_name]) {
                return Err(format!(
                    "{} {} does not share table {}",
                    logic.name,
                    c.id.token(),
                    c.table_name
                ));
            }
        }
    }
    Ok(format!("{} tables, {cells} cells", reg.tables().len()))
}

fn criterion_2(reg: &Registry) -> Res<String> {
    let (mut rules, mut axioms) = (0, 0);
    for logic in reg.logics() {
        let cat = catalog(logic).map_err(err)?;
        for rule in &cat.rules {
            if !verify_rule_schema(logic, rule).map_err(err)?.is_sound() {
                return Err(format!("{} {}", logic.name, rule.name));
            }
            rules += 1;
        }
        for ax in &cat.axioms {
            if !::bisequent::calculus::verify_axiom_schema(logic, ax)
                .map_err(err)?
                .is_sound()
            {
                return Err(format!("{} axiom {:?}", logic.name, ax));
            }
            axioms += 1;
        }
    }
    Ok(format!(
        "{rules} rules and {axioms} axiom schemata sound and invertible"
    ))
}

fn sweep_formulas(logic: &LogicDef) -> Vec<Formula> {
    enumerate_formulas(&logic.signature(), &ATOMS, logic.constants_enabled, MAX_CONNECTIVES)
}

fn criterion_3(reg: &Registry, reports: &mut BTreeMap<String, SweepReport>) -> Res<String> {
    let mut rng = StdRng::seed_from_u64(3);
    let (mut goals, mut direct, mut failures) = (0u64, 0u64, Vec::new());
    for logic in reg.logics() {
        let fs = sweep_formulas(logic);
        let samples: Vec<(usize, usize)> = (0..DIRECT_SAMPLES)
            .map(|_| (rng.gen_range(0..fs.len()), rng.gen_range(0..fs.len())))
            .collect();
        let r = prover_oracle_sweep(logic, &fs, &ATOMS, &samples, Exec::Parallel).map_err(err)?;
        goals += r.goals;
        direct += r.direct_proofs;
        if !r.disagreements.is_empty() || !r.reduction_failures.is_empty() {
            failures.push(format!(
                "{}: {} disagreements, {} reduction failures, first {:?}",
                logic.name,
                r.disagreements.len(),
                r.reduction_failures.len(),
                r.disagreements.first().or(r.reduction_failures.first())
            ));
        }
        reports.insert(logic.name.clone(), r);
    }
    if failures.is_empty() {
        Ok(format!(
            "{} logics, {goals} goals agree with matrix consequence ({direct} proved directly)",
            reports.len()
        ))
    } else {
        Err(failures.join("; "))
    }
}

/// Known-fact spot checks. Returns the checks that hold and the failures.
fn criterion_4() -> Res<(usize, Vec<SpotFailure>)> {
    let cases: [(&str, &[&str], &str, bool); 7] = [
        ("K3", &[], "p | ~p", false),
        ("LP", &[], "p | ~p", true),
        ("LP", &["p", "p -> q"], "q", false),
        ("K3", &["p", "p -> q"], "q", true),
        ("L3", &[], "p -> p", true),
        ("PWK", &["p"], "p | q", false),
        ("P1", &["p", "~p"], "q", false),
    ];
    let mut failures = Vec::new();
    for (name, ps, c, expected) in cases {
        let logic = lookup_logic(name).map_err(err)?;
        let ps: Vec<Formula> = ps.iter().map(|s| logic.parse(s)).collect::<Result<_>>().map_err(err)?;
        let c = logic.parse(c).map_err(err)?;
        let prover = prove(&logic, GoalMode::designated(&logic), &ps, &c)
            .map_err(err)?
            .is_proved();
        let oracle = matrix_consequence(&logic, &ps, &c).map_err(err)?;
        if prover != expected || oracle != expected {
            let ps: Vec<String> = ps.iter().map(ToString::to_string).collect();
            failures.push(SpotFailure {
                goal: format!("{name}: {} => {c}", ps.join(", ")),
                prover,
                oracle,
                expected,
            });
        }
    }
    Ok((cases.len() - failures.len(), failures))
}

struct SpotFailure {
    goal: String,
    prover: bool,
    oracle: bool,
    expected: bool,
}

/// Addition is valid in PWK: with p designated (1 or u), weak p | q is u or
/// 1, hence designated. The refutation expected by the check exists only in
/// K3w, where u is not designated. This check therefore stays red. It is
/// tolerated only in exactly this form: prover and oracle both prove it,
/// and K3w refutes it with q undefined.
fn pwk_addition_is_the_known_red(failures: &[SpotFailure]) -> Res<bool> {
    let [f] = failures else { return Ok(false) };
    if f.goal != "PWK: p => p | q" || !f.prover || !f.oracle || f.expected {
        return Ok(false);
    }
    let k3w = lookup_logic("K3w").map_err(err)?;
    let (p, c) = (k3w.parse("p").map_err(err)?, k3w.parse("p | q").map_err(err)?);
    let r = prove(&k3w, GoalMode::Designated1, std::slice::from_ref(&p), &c).map_err(err)?;
    Ok(!r.is_proved() && r.countermodel().and_then(|h| h.get("q")) == Some(&Value::Undef))
}

fn random_bisequent(rng: &mut StdRng, fs: &[Formula], max_len: usize) -> Bisequent {
    let mut b = Bisequent::empty();
    for _ in 0..rng.gen_range(1..=max_len) {
        b = b.with(SlotId::ALL[rng.gen_range(0..4)], fs[rng.gen_range(0..fs.len())].clone());
    }
    b
}

// A fresh prover each time: a shared memo grows without bound over
// hundreds of thousands of unrelated bisequents.
fn proved(logic: &LogicDef, b: &Bisequent) -> Res<bool> {
    Ok(Prover::new(logic).complete_search(b).map_err(err)?.is_proved())
}

fn admissibility(logic: &LogicDef, rng: &mut StdRng) -> Res<(usize, usize)> {
    let fs = sweep_formulas(logic);
    let (mut found, mut attempts) = (0, 0);
    while found < ADMISSIBILITY_SAMPLES {
        attempts += 1;
        if attempts > ATTEMPT_CAP {
            return Err(format!("{}: only {found} provable bisequents found", logic.name));
        }
        let b = random_bisequent(rng, &fs, 4);
        let is_proved = proved(logic, &b)?;

        // Duplicating any occurrence never changes provability, so
        // contraction holds on both sides.
        let slot = *SlotId::ALL.iter().find(|s| !b.slot(**s).is_empty()).unwrap();
        let dup = b
            .clone()
            .with(slot, b.slot(slot)[rng.gen_range(0..b.slot(slot).len())].clone());
        if proved(logic, &dup)? != is_proved {
            return Err(format!("{}: duplication changes provability of {b}", logic.name));
        }
        if !is_proved {
            continue;
        }
        found += 1;

        let extra = Bisequent::empty().with(SlotId::ALL[rng.gen_range(0..4)], fs[rng.gen_range(0..fs.len())].clone());
        if !::bisequent::prover::admissible_weaken(logic, &b, &extra)
            .map_err(err)?
            .is_proved()
        {
            return Err(format!("{}: weakening {b} by {extra} fails", logic.name));
        }
        for (rule, _, premisses) in rule_instances(logic, &b).map_err(err)? {
            for p in premisses {
                if !proved(logic, &p)? {
                    return Err(format!("{}: {} is not invertible at {b}: {p}", logic.name, rule.name));
                }
            }
        }
    }

    let mut cuts = 0;
    attempts = 0;
    while cuts < CUT_SAMPLES {
        attempts += 1;
        if attempts > ATTEMPT_CAP {
            return Err(format!("{}: only {cuts} cut instances found", logic.name));
        }
        let variant = if rng.gen_bool(0.5) {
            CutVariant::Cut1
        } else {
            CutVariant::Cut2
        };
        let (ls, rs) = match variant {
            CutVariant::Cut1 => (SlotId::Suc1, SlotId::Ant1),
            CutVariant::Cut2 => (SlotId::Suc2, SlotId::Ant2),
        };
        let cut = fs[rng.gen_range(0..fs.len())].clone();
        let left = random_bisequent(rng, &fs, 2).with(ls, cut.clone());
        if !proved(logic, &left)? {
            continue;
        }
        let right = random_bisequent(rng, &fs, 2).with(rs, cut.clone());
        if !proved(logic, &right)? {
            continue;
        }
        cuts += 1;
        if !admissible_cut(logic, &left, &right, &cut, variant)
            .map_err(err)?
            .is_proved()
        {
            return Err(format!("{}: {variant:?} on {cut} from {left} and {right}", logic.name));
        }
    }
    Ok((found, cuts))
}

fn criterion_5(reg: &Registry) -> Res<String> {
    let mut rng = StdRng::seed_from_u64(5);
    let (mut bisequents, mut cuts) = (0, 0);
    for logic in reg.logics() {
        let (b, c) = admissibility(logic, &mut rng)?;
        bisequents += b;
        cuts += c;
    }
    Ok(format!(
        "{bisequents} provable bisequents weakened, duplicated and inverted; {cuts} cuts eliminated"
    ))
}

fn criterion_6() -> Res<String> {
    let mut goals = 0;
    for name in ["Palasinska1", "Palasinska2"] {
        let logic = lookup_logic(name).map_err(err)?;
        let r = direct_sweep(&logic, &sweep_formulas(&logic), Exec::Parallel).map_err(err)?;
        if !r.ok() {
            return Err(format!(
                "{name}: {:?}",
                r.disagreements.first().or(r.bad_countermodels.first())
            ));
        }
        goals += r.goals;
    }
    Ok(format!("{goals} goals proved directly, all agree"))
}

fn random_formula(rng: &mut StdRng, sig: &[ConnectiveId], atoms: &[&str], budget: usize) -> Formula {
    if budget == 0 || rng.gen_bool(0.25) {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    let c = sig[rng.gen_range(0..sig.len())];
    if c.arity() == 1 {
        Formula::unary(c, random_formula(rng, sig, atoms, budget - 1))
    } else {
        let left = rng.gen_range(0..budget);
        Formula::binary(
            c,
            random_formula(rng, sig, atoms, left),
            random_formula(rng, sig, atoms, budget - 1 - left),
        )
    }
}

fn contingent(logic: &LogicDef, f: &Formula) -> Res<bool> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    let c = ::bisequent::logics::Compiled::new(logic, f, &atoms).map_err(err)?;
    let values: BTreeSet<bool> = (0..3usize.pow(atoms.len() as u32))
        .map(|n| logic.is_designated(c.eval(&::bisequent::semantics::decode(n, atoms.len()))))
        .collect();
    Ok(values.len() == 2)
}

fn criterion_7() -> Res<String> {
    let mut rng = StdRng::seed_from_u64(7);
    let mut total = 0;
    for name in ["I1", "I2", "P1", "P2"] {
        let logic = lookup_logic(name).map_err(err)?;
        let sig: Vec<ConnectiveId> = logic.signature().into_iter().collect();
        let (mut ok, mut attempts) = (0, 0);
        while ok < INTERPOLATION_SAMPLES {
            attempts += 1;
            if attempts > ATTEMPT_CAP {
                return Err(format!("{name}: only {ok} pairs sampled"));
            }
            let (a, b) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
            let phi = random_formula(&mut rng, &sig, &["p", "q", "r"], a);
            let psi = random_formula(&mut rng, &sig, &["p", "q", "r"], b);
            if phi.atoms().is_disjoint(&psi.atoms())
                || !contingent(&logic, &phi)?
                || !contingent(&logic, &psi)?
                || !matrix_consequence(&logic, std::slice::from_ref(&phi), &psi).map_err(err)?
            {
                continue;
            }
            let int = interpolate(&logic, &phi, &psi).map_err(|e| format!("{name}: {phi} => {psi}: {e}"))?;
            if !verify_interpolant(&logic, &phi, &psi, &int).map_err(err)? {
                return Err(format!("{name}: {int} does not interpolate {phi} => {psi}"));
            }
            ok += 1;
        }
        total += ok;
    }
    Ok(format!("{total}/{} interpolants verified", 4 * INTERPOLATION_SAMPLES))
}

fn criterion_8(reports: &BTreeMap<String, SweepReport>) -> Res<String> {
    if reports.is_empty() {
        return Err("no sweep reports".into());
    }
    let mut refutations = 0;
    for (name, r) in reports {
        if let Some(bad) = r.bad_countermodels.first() {
            return Err(format!(
                "{name}: {} bad countermodels, first {bad}",
                r.bad_countermodels.len()
            ));
        }
        refutations += r.refutations;
    }
    Ok(format!("{refutations} refutations falsify their root"))
}

fn criterion_9(reg: &Registry) -> Res<String> {
    // Catalog premiss counts per (table, slot), from every operation using the table.
    let mut catalog_k: BTreeMap<(String, SlotId), BTreeSet<usize>> = BTreeMap::new();
    let mut connective_of: BTreeMap<String, ConnectiveId> = BTreeMap::new();
    for logic in reg.logics() {
        for c in logic.connectives.values() {
            connective_of.entry(c.table_name.clone()).or_insert(c.id);
            for slot in SlotId::ALL {
                let k = match c.treatment(slot) {
                    Some(SlotTreatment::Rule(r)) => r.premisses.len(),
                    _ => 0,
                };
                catalog_k.entry((c.table_name.clone(), slot)).or_default().insert(k);
            }
        }
    }
    let (mut slots, mut same_k, mut compared) = (0, 0, 0);
    for (name, table) in reg.tables() {
        let id = connective_of.get(name).copied().unwrap_or(if table.arity() == 1 {
            ConnectiveId::Neg
        } else {
            ConnectiveId::And
        });
        for slot in SlotId::ALL {
            let k = match synthesize_rules(table, slot, id, name) {
                Synthesized::Rule(rule) => {
                    if !verify_against_table(table, &rule).is_sound() {
                        return Err(format!("{name} {slot}: {}", rule.premisses_text()));
                    }
                    rule.premisses.len()
                }
                Synthesized::Axiom(ax) => {
                    if table.tuples().iter().any(|t| ax.slot.constraint(table.apply(t))) {
                        return Err(format!("{name} {slot}: axiom over a satisfiable slot"));
                    }
                    0
                }
            };
            slots += 1;
            if let Some(ks) = catalog_k.get(&(name.clone(), slot)) {
                compared += 1;
                if ks.len() == 1 && ks.contains(&k) {
                    same_k += 1;
                }
            }
        }
    }
    Ok(format!(
        "{slots} (table, slot) pairs self-certified; premiss count matches the catalog in {same_k}/{compared}"
    ))
}

fn report(n: usize, name: &str, start: Instant, r: Res<String>) -> bool {
    let secs = start.elapsed().as_secs_f64();
    match r {
        Ok(msg) => {
            println!("criterion {n} {name}: PASS ({msg}; {secs:.1}s)");
            true
        }
        Err(msg) => {
            println!("criterion {n} {name}: FAIL ({msg}; {secs:.1}s)");
            false
        }
    }
}

fn main() -> ExitCode {
    let reg = Registry::builtin();
    let mut reports = BTreeMap::new();
    let mut passed = 0;
    let mut unexpected = false;
    let mut check = |n: usize, name: &str, run: &mut dyn FnMut() -> Res<String>| {
        let t = Instant::now();
        let ok = report(n, name, t, run());
        passed += ok as usize;
        ok
    };
    unexpected |= !check(1, "table audit", &mut || criterion_1(reg));
    unexpected |= !check(2, "rule sweep", &mut || criterion_2(reg));
    unexpected |= !check(3, "prover/oracle equivalence", &mut || criterion_3(reg, &mut reports));

    let mut known_red = false;
    let spot_ok = check(4, "spot checks", &mut || {
        let (held, failures) = criterion_4()?;
        if failures.is_empty() {
            return Ok(format!("{held} spot checks"));
        }
        known_red = pwk_addition_is_the_known_red(&failures)?;
        let listed: Vec<String> = failures
            .iter()
            .map(|f| {
                format!(
                    "{}: prover {}, oracle {}, expected {}",
                    f.goal, f.prover, f.oracle, f.expected
                )
            })
            .collect();
        Err(format!("{held}/{} hold; {}", held + failures.len(), listed.join("; ")))
    });
    if !spot_ok && known_red {
        println!("  note: addition is valid in PWK (p designated makes p | q designated); K3w refutes it with q=u");
    }
    unexpected |= !spot_ok && !known_red;

    unexpected |= !check(5, "structural admissibility", &mut || criterion_5(reg));
    unexpected |= !check(6, "Palasinska logics", &mut criterion_6);
    unexpected |= !check(7, "interpolation", &mut criterion_7);
    unexpected |= !check(8, "countermodel integrity", &mut || criterion_8(&reports));
    unexpected |= !check(9, "synthesis self-certification", &mut || criterion_9(reg));

    let red = if known_red {
        "; criterion 4 red on PWK addition only, as analysed above"
    } else {
        ""
    };
    println!("summary: {passed}/9 criteria PASS{red}");
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
