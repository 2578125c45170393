use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Names of the laws checked by the validators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    /// `[a,b,b] = a`
    MalcevRight,
    /// `[b,b,a] = a`
    MalcevLeft,
    HeapAssociativity,
    Abelian,
    GroupAssociativity,
    GroupIdentity,
    GroupInverse,
    AdditiveGroup,
    MulAssociativity,
    LeftDistributivity,
    RightDistributivity,
    Unit,
    ActionAssociativity,
    /// `[t,t',t'']·m = [t·m, t'·m, t''·m]`
    ActionOverTruss,
    /// `t·[m,m',m''] = [t·m, t·m', t·m'']`
    ActionOverModule,
    ActionAddition,
    ActionUnit,
    HeapMorphism,
    Multiplicativity,
    Linearity,
    Additivity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Law::MalcevRight => "Mal'cev identity [a,b,b]=a",
            Law::MalcevLeft => "Mal'cev identity [b,b,a]=a",
            Law::HeapAssociativity => "heap associativity",
            Law::Abelian => "abelian law [a,b,c]=[c,b,a]",
            Law::GroupAssociativity => "group associativity",
            Law::GroupIdentity => "group identity",
            Law::GroupInverse => "group inverse",
            Law::AdditiveGroup => "additive group law",
            Law::MulAssociativity => "multiplicative associativity",
            Law::LeftDistributivity => "left distributivity",
            Law::RightDistributivity => "right distributivity",
            Law::Unit => "unit law",
            Law::ActionAssociativity => "action associativity",
            Law::ActionOverTruss => "action distributes over the truss heap",
            Law::ActionOverModule => "action distributes over the module heap",
            Law::ActionAddition => "action distributes over addition",
            Law::ActionUnit => "unital action",
            Law::HeapMorphism => "heap morphism law",
            Law::Multiplicativity => "multiplicativity",
            Law::Linearity => "compatibility with the action",
            Law::Additivity => "additivity",
        };
        f.write_str(name)
    }
}

/// The first (lexicographically) tuple at which a law fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawViolation {
    pub law: Law,
    pub witness: Vec<usize>,
}

impl LawViolation {
    pub fn new(law: Law, witness: impl Into<Vec<usize>>) -> Self {
        Self { law, witness: witness.into() }
    }
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.witness)
    }
}

impl std::error::Error for LawViolation {}

/// Outcome of an exhaustive law check.
pub type Verdict = std::result::Result<(), LawViolation>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("malformed table at `{path}`: {reason}")]
    Malformed { path: String, reason: String },
    #[error("{what} {index} out of range for size {size}")]
    OutOfRange { what: &'static str, index: usize, size: usize },
    #[error("heap is not abelian: [{0:?}]")]
    NotAbelian([usize; 3]),
    #[error(transparent)]
    Law(#[from] LawViolation),
    #[error("subset is not closed under the heap operation: {0:?} leaves it")]
    NotClosed(Vec<usize>),
    #[error("subset is not closed under the action: {t}·{x} leaves it")]
    NotSubmodule { t: usize, x: usize },
    #[error("partition is not a congruence at {0:?}")]
    NotCongruence(Vec<usize>),
    #[error("structures are defined over different trusses")]
    TrussMismatch,
    #[error("maps do not compose: {0}")]
    ChainMismatch(String),
    #[error("element {0} is not in the image")]
    NotInImage(usize),
    #[error("element {0} is not an absorber")]
    NotAbsorber(usize),
    #[error("module has no absorbers")]
    NoAbsorbers,
    #[error("hom search space {needed} exceeds the budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("t·f is not T-linear for t = {t}, f = {morphism:?}")]
    HomActionNotClosed { t: usize, morphism: Vec<usize> },
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("precondition fails: {0}")]
    Precondition(String),
    #[error("diagram shape: {0}")]
    Shape(String),
    #[error("property falsified: {0}")]
    Falsified(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown document kind `{0}`")]
    UnknownKind(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True when the error means a checked property failed on a well-formed
    /// input, as opposed to malformed input or an unmet precondition.
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsified(_) | Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
