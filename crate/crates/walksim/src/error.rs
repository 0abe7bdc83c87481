use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{file}:{line}: malformed line: {msg}")]
    MalformedLine {
        file: String,
        line: usize,
        msg: String,
    },
    #[error("duplicate node id `{0}`")]
    DuplicateNodeId(String),
    #[error("edge references unknown node id `{0}`")]
    UnknownNodeId(String),
    #[error("duplicate entity ({label}, {value})")]
    DuplicateEntity { label: String, value: String },
    #[error("valueless node `{0}` carries a value")]
    ValuelessWithValue(String),
    #[error("entity node `{0}` is missing a value")]
    EntityWithoutValue(String),
    #[error("label `{0}` declared more than once")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("self-loop on node id `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown entity {label}:{value}")]
    UnknownEntity { label: String, value: String },
    #[error("requested {requested} samples but only {available} candidates of label `{label}`")]
    NotEnoughCandidates {
        label: String,
        requested: usize,
        available: usize,
    },
    #[error("meta-walk parse error: {0}")]
    MetaWalkParse(String),
    #[error("invalid meta-walk: {0}")]
    InvalidMetaWalk(String),
    #[error("walk enumeration cap of {cap} results exceeded for meta-walk [{metawalk}]")]
    EnumerationCap { metawalk: String, cap: usize },
    #[error("u64 overflow at entry ({row}, {col}) while computing [{metawalk}]")]
    CountOverflow {
        metawalk: String,
        row: usize,
        col: usize,
    },
    #[error("matrix dimensions do not match: {0}x{1} * {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("meta-walk and weight lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("meta-walk [{metawalk}] cannot be composed from the store: segment [{segment}] not stored")]
    Undecomposable { metawalk: String, segment: String },
    #[error("matrix store: {0}")]
    Store(String),
    #[error("hub label `{0}` already present in the graph")]
    HubLabelTaken(String),
    #[error("ambiguous hub neighborhood at node `{0}`: pattern unrecognized")]
    AmbiguousHub(String),
    #[error("fd_rewire precondition failed: {0}")]
    FdPrecondition(String),
    #[error("overlapping maximal chains: label `{0}` belongs to more than one")]
    OverlappingChains(String),
    #[error("entity {label}:{value} has no image under the entity mapping")]
    UnmappedEntity { label: String, value: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
