//! Bisequent calculi for three-valued logics.
//!
//! A bisequent `Γ => Δ | Π => Σ` is falsified by an assignment that makes
//! everything in Γ true, nothing in Δ true, nothing in Π false and everything
//! in Σ false. Each logic comes with invertible, context-independent rules for
//! every connective in every slot, so backward search terminates with a
//! complete tree that either proves the root or yields a countermodel.
//!
//! ```
//! use bisequent::{lookup_logic, prove, GoalMode};
//!
//! let k3 = lookup_logic("K3").unwrap();
//! let lem = k3.parse("p | ~p").unwrap();
//! let result = prove(&k3, GoalMode::Designated1, &[], &lem).unwrap();
//! assert!(!result.is_proved());
//! ```

pub mod bisequent;
pub mod calculus;
pub mod error;
pub mod formula;
pub mod interpolation;
pub mod logics;
pub mod prover;
pub mod semantics;
pub mod sweep;

pub use crate::bisequent::{is_axiomatic, Bisequent, SlotId};
pub use crate::calculus::{
    apply_rule, catalog, synthesize_rules, verify_rule_schema, AxiomSchema, Occurrence, RuleSchema, Synthesized,
    Verdict,
};
pub use crate::error::{Error, Result};
pub use crate::formula::{parse_formula, ConnectiveId, Formula};
pub use crate::interpolation::{interpolate, verify_interpolant};
pub use crate::logics::{eval, lookup_logic, Assignment, LogicDef, Registry, TruthTable, Value};
pub use crate::prover::{complete_search, prove, GoalMode, ProofTree, Prover, SearchResult, Strategy};
pub use crate::semantics::{bisequent_valid, falsifying_assignments, matrix_consequence, Oracle};
