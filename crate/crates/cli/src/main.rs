//! `bsc`: command-line front end for the bisequent prover.
//!
//! Exit status 0 is a positive verdict, 1 a negative one and 2 a usage or
//! input error.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use bisequent::calculus::{verify_against_table, verify_axiom_schema};
use bisequent::formula::ConnectiveId;
use bisequent::logics::SlotTreatment;
use bisequent::semantics::DEFAULT_MAX_ATOMS;
use bisequent::{
    catalog, interpolate, synthesize_rules, verify_interpolant, verify_rule_schema, Assignment, Bisequent, Error,
    Formula, GoalMode, LogicDef, Oracle, Prover, Registry, SearchResult, SlotId, Strategy, Synthesized,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

#[derive(Parser)]
#[command(name = "bsc", version, about = "Bisequent calculi for three-valued logics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Refuse goals with more atoms than this.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ATOMS)]
    max_atoms: usize,
    /// Load logics from this TOML catalog instead of the built-in one.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Search for a proof of `PREMISSES ⊢ CONCLUSION`.
    Prove {
        #[arg(long)]
        logic: String,
        /// designated, designated-1, designated-2, no-counterexample or liberal.
        #[arg(long, default_value = "designated")]
        mode: String,
        #[arg(long, value_enum, default_value_t = StrategyArg::LeftmostOutermost)]
        strategy: StrategyArg,
        /// Comma-separated premisses; empty for none.
        #[arg(allow_hyphen_values = true)]
        premisses: String,
        #[arg(allow_hyphen_values = true)]
        conclusion: String,
    },
    /// Decide the goal by truth tables.
    CheckSemantic {
        #[arg(long)]
        logic: String,
        #[arg(long, default_value = "designated")]
        mode: String,
        #[arg(allow_hyphen_values = true)]
        premisses: String,
        #[arg(allow_hyphen_values = true)]
        conclusion: String,
    },
    /// Extract a countermodel from the proof search, for a bisequent
    /// `Γ => Δ | Π => Σ` or a goal `PREMISSES CONCLUSION`.
    Countermodel {
        #[arg(long)]
        logic: String,
        #[arg(long, default_value = "designated")]
        mode: String,
        #[arg(allow_hyphen_values = true)]
        target: String,
        #[arg(allow_hyphen_values = true)]
        conclusion: Option<String>,
    },
    /// Construct and verify an interpolant for `PHI ⊨ PSI`.
    Interpolate {
        #[arg(long)]
        logic: String,
        #[arg(allow_hyphen_values = true)]
        phi: String,
        #[arg(allow_hyphen_values = true)]
        psi: String,
    },
    /// Check every rule and axiom schema of a logic against its tables.
    VerifyRules {
        #[arg(long)]
        logic: String,
    },
    /// Build rules for a connective from its table alone.
    Synthesize {
        #[arg(long)]
        logic: String,
        /// Connective token, e.g. `->` or `~`.
        #[arg(allow_hyphen_values = true)]
        connective: String,
        /// Only this slot: ant1, suc1, ant2 or suc2.
        #[arg(long)]
        slot: Option<String>,
    },
    /// Print the truth table of a connective.
    Table {
        #[arg(long)]
        logic: String,
        #[arg(allow_hyphen_values = true)]
        connective: String,
    },
    /// List the available logics.
    ListLogics,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    LeftmostOutermost,
    RightmostInnermost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::LeftmostOutermost => Strategy::LeftmostOutermost,
            StrategyArg::RightmostInnermost => Strategy::RightmostInnermost,
        }
    }
}

/// A verdict with its rendered output.
struct Outcome {
    positive: bool,
    text: String,
    json: Json,
}

enum Failure {
    Negative(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::NotEntailed | Error::NotContingent(_) | Error::NoSharedAtoms => Failure::Negative(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

struct Ctx {
    registry: Registry,
    max_atoms: usize,
}

impl Ctx {
    fn logic(&self, name: &str) -> Run<Arc<LogicDef>> {
        Ok(self.registry.lookup(name)?)
    }

    fn goal(&self, logic: &LogicDef, premisses: &str, conclusion: &str) -> Run<(Vec<Formula>, Formula)> {
        let ps = if premisses.trim().is_empty() {
            Vec::new()
        } else {
            logic.parse_list(premisses)?
        };
        let c = logic.parse(conclusion)?;
        let atoms = ps
            .iter()
            .chain([&c])
            .flat_map(|f| f.atoms())
            .collect::<std::collections::BTreeSet<_>>();
        self.cap(atoms.len())?;
        Ok((ps, c))
    }

    fn cap(&self, atoms: usize) -> Run<()> {
        if atoms > self.max_atoms {
            return Err(Error::AtomCap {
                atoms,
                cap: self.max_atoms,
            }
            .into());
        }
        Ok(())
    }
}

fn mode(logic: &LogicDef, text: &str) -> Run<GoalMode> {
    if text == "designated" {
        return Ok(GoalMode::designated(logic));
    }
    GoalMode::from_str(text).map_err(Failure::Usage)
}

fn connective(logic: &LogicDef, token: &str) -> Run<ConnectiveId> {
    let id = ConnectiveId::from_token(token).ok_or_else(|| {
        Failure::Usage(
            Error::UnknownConnective {
                token: token.into(),
                offset: 0,
            }
            .to_string(),
        )
    })?;
    logic.connective(id)?;
    Ok(id)
}

fn render_assignment(h: &Assignment) -> String {
    h.iter().map(|(a, v)| format!("{a}={v}")).collect::<Vec<_>>().join(", ")
}

fn assignment_json(h: &Assignment) -> Json {
    json!(h
        .iter()
        .map(|(a, v)| (a.clone(), json!(v.symbol())))
        .collect::<serde_json::Map<_, _>>())
}

fn rendered(fs: &[Formula]) -> Vec<String> {
    fs.iter().map(ToString::to_string).collect()
}

fn search_outcome(logic: &LogicDef, header: Json, result: &SearchResult) -> Outcome {
    let tree = result.tree();
    let mut text = format!(
        "{} in {}\n{}",
        if result.is_proved() { "proved" } else { "refuted" },
        logic.name,
        tree.render_text()
    );
    let mut json = header;
    json["verdict"] = json!(if result.is_proved() { "proved" } else { "refuted" });
    json["tree"] = serde_json::to_value(tree.view()).expect("tree views serialize");
    if let SearchResult::Refuted { leaf, countermodel, .. } = result {
        text.push_str(&format!(
            "open leaf: {leaf}\ncountermodel: {}\n",
            render_assignment(countermodel)
        ));
        json["open_leaf"] = json!(leaf.to_string());
        json["countermodel"] = assignment_json(countermodel);
    }
    Outcome {
        positive: result.is_proved(),
        text,
        json,
    }
}

fn run(cli: Cli) -> Run<Outcome> {
    let registry = match &cli.catalog {
        Some(path) => Registry::from_path(path)?,
        None => Registry::builtin().clone(),
    };
    let ctx = Ctx {
        registry,
        max_atoms: cli.max_atoms,
    };
    match cli.command {
        Command::Prove {
            logic,
            mode: m,
            strategy,
            premisses,
            conclusion,
        } => {
            let logic = ctx.logic(&logic)?;
            let mode = mode(&logic, &m)?;
            let (ps, c) = ctx.goal(&logic, &premisses, &conclusion)?;
            let result = Prover::new(&logic)
                .with_strategy(strategy.into())
                .prove(mode, &ps, &c)?;
            let header = json!({
                "command": "prove",
                "logic": logic.name,
                "mode": mode.name(),
                "premisses": rendered(&ps),
                "conclusion": c.to_string(),
            });
            Ok(search_outcome(&logic, header, &result))
        }
        Command::CheckSemantic {
            logic,
            mode: m,
            premisses,
            conclusion,
        } => {
            let logic = ctx.logic(&logic)?;
            let mode = mode(&logic, &m)?;
            let (ps, c) = ctx.goal(&logic, &premisses, &conclusion)?;
            let oracle = Oracle::new(ctx.max_atoms);
            let valid = oracle.mode_consequence(&logic, mode, &ps, &c)?;
            let mut text = format!(
                "{} in {} ({})\n",
                if valid { "valid" } else { "invalid" },
                logic.name,
                mode
            );
            let mut json = json!({
                "command": "check-semantic",
                "logic": logic.name,
                "mode": mode.name(),
                "premisses": rendered(&ps),
                "conclusion": c.to_string(),
                "verdict": if valid { "valid" } else { "invalid" },
            });
            if !valid {
                let h = oracle
                    .falsifying_assignments(&logic, &mode.root(&ps, &c))?
                    .into_iter()
                    .next()
                    .expect("an invalid goal has a falsifying assignment");
                text.push_str(&format!("counterexample: {}\n", render_assignment(&h)));
                json["counterexample"] = assignment_json(&h);
            }
            Ok(Outcome {
                positive: valid,
                text,
                json,
            })
        }
        Command::Countermodel {
            logic,
            mode: m,
            target,
            conclusion,
        } => {
            let logic = ctx.logic(&logic)?;
            let root = match conclusion {
                Some(c) => {
                    let mode = mode(&logic, &m)?;
                    let (ps, c) = ctx.goal(&logic, &target, &c)?;
                    mode.root(&ps, &c)
                }
                None => {
                    let b = Bisequent::parse(&logic, &target)?;
                    ctx.cap(b.atoms().len())?;
                    b
                }
            };
            let result = Prover::new(&logic).prove_bisequent(&root)?;
            let header = json!({
                "command": "countermodel",
                "logic": logic.name,
                "bisequent": root.to_string(),
            });
            let mut out = search_outcome(&logic, header, &result);
            if result.is_proved() {
                out.text = format!("no countermodel: {root} is provable in {}\n", logic.name);
            } else {
                out.text = format!("countermodel: {}\n", render_assignment(result.countermodel().unwrap()));
            }
            Ok(out)
        }
        Command::Interpolate { logic, phi, psi } => {
            let logic = ctx.logic(&logic)?;
            let (phi, psi) = (logic.parse(&phi)?, logic.parse(&psi)?);
            ctx.cap(phi.atoms().union(&psi.atoms()).count())?;
            let int = interpolate(&logic, &phi, &psi)?;
            let verified = verify_interpolant(&logic, &phi, &psi, &int)?;
            Ok(Outcome {
                positive: verified,
                text: format!("{int}\n{}\n", if verified { "verified" } else { "NOT verified" }),
                json: json!({
                    "command": "interpolate",
                    "logic": logic.name,
                    "phi": phi.to_string(),
                    "psi": psi.to_string(),
                    "interpolant": int.to_string(),
                    "verified": verified,
                }),
            })
        }
        Command::VerifyRules { logic } => {
            let logic = ctx.logic(&logic)?;
            let cat = catalog(&logic)?;
            let (mut text, mut rows, mut all) = (String::new(), Vec::new(), true);
            for rule in &cat.rules {
                let verdict = verify_rule_schema(&logic, rule)?;
                all &= verdict.is_sound();
                text.push_str(&format!("{} {}: {verdict}\n", rule.name, rule.premisses_text()));
                rows.push(
                    json!({"rule": rule.name, "premisses": rule.premisses_text(), "verdict": verdict.to_string()}),
                );
            }
            for ax in &cat.axioms {
                let verdict = verify_axiom_schema(&logic, ax)?;
                all &= verdict.is_sound();
                let name = format!("axiom {} in {}", ax.connective.token(), ax.slot);
                text.push_str(&format!("{name}: {verdict}\n"));
                rows.push(json!({"rule": name, "verdict": verdict.to_string()}));
            }
            Ok(Outcome {
                positive: all,
                text,
                json: json!({"command": "verify-rules", "logic": logic.name, "rules": rows}),
            })
        }
        Command::Synthesize {
            logic,
            connective: token,
            slot,
        } => {
            let logic = ctx.logic(&logic)?;
            let id = connective(&logic, &token)?;
            let conn = logic.connective(id)?;
            let slots = match slot {
                Some(s) => vec![SlotId::from_str(&s)?],
                None => SlotId::ALL.to_vec(),
            };
            let (mut text, mut rows, mut all) = (String::new(), Vec::new(), true);
            for slot in slots {
                let catalogued = match conn.treatment(slot) {
                    Some(SlotTreatment::Rule(r)) => r.premisses_text(),
                    Some(SlotTreatment::Axiom(_)) => "axiom".into(),
                    None => "none".into(),
                };
                let (name, premisses, sound) = match synthesize_rules(&conn.table, slot, id, &conn.label) {
                    Synthesized::Rule(rule) => {
                        let sound = verify_against_table(&conn.table, &rule).is_sound();
                        (rule.name.clone(), rule.premisses_text(), sound)
                    }
                    Synthesized::Axiom(ax) => {
                        let sound = verify_axiom_schema(&logic, &ax)?.is_sound();
                        (format!("axiom {} in {slot}", id.token()), "axiom".into(), sound)
                    }
                };
                all &= sound;
                let verdict = if sound { "sound_and_invertible" } else { "unsound" };
                text.push_str(&format!("{name} {premisses}: {verdict} (catalog: {catalogued})\n"));
                rows.push(json!({
                    "slot": slot.name(),
                    "rule": name,
                    "premisses": premisses,
                    "verdict": verdict,
                    "catalog": catalogued,
                }));
            }
            Ok(Outcome {
                positive: all,
                text,
                json: json!({"command": "synthesize", "logic": logic.name, "connective": id.token(), "rules": rows}),
            })
        }
        Command::Table {
            logic,
            connective: token,
        } => {
            let logic = ctx.logic(&logic)?;
            let conn = logic.connective(connective(&logic, &token)?)?;
            let cells: Vec<&str> = conn.table.cells().iter().map(|v| v.symbol()).collect();
            Ok(Outcome {
                positive: true,
                text: format!("{} ({})\n{}", conn.label, conn.table_name, conn.table.render()),
                json: json!({
                    "command": "table",
                    "logic": logic.name,
                    "connective": conn.id.token(),
                    "table": conn.table_name,
                    "arity": conn.table.arity(),
                    "cells": cells,
                }),
            })
        }
        Command::ListLogics => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for name in ctx.registry.names() {
                let logic = ctx.logic(&name)?;
                let designated: Vec<&str> = logic.designated.values().into_iter().map(|v| v.symbol()).collect();
                let connectives: Vec<&str> = logic.signature().into_iter().map(|c| c.token()).collect();
                text.push_str(&format!(
                    "{name:<14} {{{}}} {}  {}\n",
                    designated.join(","),
                    connectives.join(" "),
                    logic.description
                ));
                rows.push(json!({
                    "name": name,
                    "designated": designated,
                    "connectives": connectives,
                    "constants": logic.constants_enabled,
                    "description": logic.description,
                }));
            }
            Ok(Outcome {
                positive: true,
                text,
                json: json!({"command": "list-logics", "logics": rows}),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(out) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out.json).expect("json values serialize")
                );
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(if out.positive { 0 } else { 1 })
        }
        Err(Failure::Negative(msg)) => {
            if json {
                println!("{}", json!({"verdict": "negative", "reason": msg}));
            } else {
                println!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
