use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("group table for {group} is invalid: {reason}")]
    InvalidGroup { group: String, reason: String },

    #[error("subset is not a subgroup of {group}")]
    NotSubgroup { group: String },

    #[error("subgroup is not normal in {group}: conjugate {witness} escapes it")]
    NotNormal { group: String, witness: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown group `{0}`")]
    UnknownGroup(String),

    #[error("character table for {group} failed verification: {reason}")]
    TableVerificationFailed { group: String, reason: String },

    #[error("class functions live on different groups ({left} vs {right})")]
    GroupMismatch { left: String, right: String },

    #[error("not a character: multiplicity of {label} is {value}")]
    NotACharacter { label: String, value: String },

    #[error("pulled-back function is not constant on the class of {element}")]
    NotClassConstant { element: String },

    #[error(
        "class function does not descend to the quotient: value at {element} differs on its coset"
    )]
    NotDescendable { element: String },

    #[error("operation requires group {expected}, got {found}")]
    WrongGroup { expected: String, found: String },

    #[error("observable {0} is not dichotomic (O² ≠ 1 or O† ≠ O)")]
    NotDichotomic(String),

    #[error("input state is the zero vector")]
    ZeroState,

    #[error("instrument is incomplete: Σ K†K ≠ 1")]
    IncompleteInstrument,

    #[error("cocycle identity failed: {0}")]
    CocycleMismatch(String),

    #[error("no isomorphism found: {0}")]
    IsoNotFound(String),

    #[error("matrices do not form a projective representation: {0}")]
    NotProjectiveRep(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("conditional state after outcome {0} is not pure")]
    MixedConditionalState(String),

    #[error("outcome {0} has zero probability on this branch")]
    ZeroProbabilityBranch(String),

    #[error("classifier inconsistency for {family}: {reason}")]
    Inconsistent { family: String, reason: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
