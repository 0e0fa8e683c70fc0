use alloc::string::String;
use core::fmt;

/// Which list of a graph document an error refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Entity {
    Device,
    Link,
    Job,
    Dep,
}

impl Entity {
    /// Key of the list in an instance document.
    pub fn list_name(self) -> &'static str {
        match self {
            Entity::Device => "devices",
            Entity::Link => "links",
            Entity::Job => "jobs",
            Entity::Dep => "deps",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    DuplicateId {
        entity: Entity,
        index: usize,
        id: u64,
    },
    UnknownId {
        entity: Entity,
        index: usize,
        id: u64,
    },
    /// Self-loop or repeated unordered pair.
    InvalidEdge {
        entity: Entity,
        index: usize,
        a: u64,
        b: u64,
        reason: &'static str,
    },
    InvalidValue {
        entity: Entity,
        index: usize,
        field: &'static str,
        value: f64,
    },
    UnreachablePair(u64, u64),
    EmptyGraph,
    DimensionMismatch {
        expected: usize,
        found: usize,
    },
    NotAPermutation,
    InvalidMatrix(&'static str),
    ParamInvalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DuplicateId { entity, index, id } => {
                write!(f, "{}[{index}].id: duplicate id {id}", entity.list_name())
            }
            Error::UnknownId { entity, index, id } => {
                write!(f, "{}[{index}]: unknown id {id}", entity.list_name())
            }
            Error::InvalidEdge {
                entity,
                index,
                a,
                b,
                reason,
            } => write!(
                f,
                "{}[{index}]: invalid edge ({a}, {b}): {reason}",
                entity.list_name()
            ),
            Error::InvalidValue {
                entity,
                index,
                field,
                value,
            } => write!(
                f,
                "{}[{index}].{field}: invalid value {value}",
                entity.list_name()
            ),
            Error::UnreachablePair(a, b) => {
                write!(f, "devices {a} and {b} are not connected")
            }
            Error::EmptyGraph => f.write_str("instance needs at least one device and one job"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotAPermutation => f.write_str("assignment is not a bijection"),
            Error::InvalidMatrix(what) => write!(f, "invalid matrix: {what}"),
            Error::ParamInvalid(msg) => write!(f, "invalid parameter: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
