use thiserror::Error;

use crate::bisequent::SlotId;
use crate::formula::ConnectiveId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown connective `{token}` at offset {offset}")]
    UnknownConnective { token: String, offset: usize },

    #[error("connective `{0}` is not part of logic {1}")]
    ConnectiveNotInLogic(ConnectiveId, String),

    #[error("constants are not enabled in logic {0}")]
    ConstantsDisabled(String),

    #[error("unknown logic `{name}`; available: {}", available.join(", "))]
    UnknownLogic { name: String, available: Vec<String> },

    #[error("assignment has no value for atom `{0}`")]
    MissingAtom(String),

    #[error("{atoms} atoms exceed the enumeration cap of {cap}")]
    AtomCap { atoms: usize, cap: usize },

    #[error("logic {logic}: connective `{connective}` has neither a rule nor an axiom schema for {slot}")]
    IncompleteCatalog {
        logic: String,
        connective: ConnectiveId,
        slot: SlotId,
    },

    #[error("occurrence mismatch: {0}")]
    OccurrenceMismatch(String),

    #[error("goal mode {mode} does not match logic {logic}, whose consequence goal lives in the {expected}")]
    ModeMismatch {
        mode: String,
        logic: String,
        expected: String,
    },

    #[error("countermodel requested for a leaf that is {0}")]
    LeafPrecondition(&'static str),

    #[error("cut premisses do not have the required shape: {0}")]
    CutShape(String),

    #[error("interpolation is only available for I1, I2, P1 and P2, not {0}")]
    InterpolationUnsupported(String),

    #[error("the premiss does not entail the conclusion")]
    NotEntailed,

    #[error("{0} is not contingent: its search tree has no open leaf")]
    NotContingent(&'static str),

    #[error("the two formulas share no atom")]
    NoSharedAtoms,

    #[error("invalid catalog: {0}")]
    Catalog(String),
}

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }
}
