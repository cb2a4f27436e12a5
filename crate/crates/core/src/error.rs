use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid instance: {0}")]
    Invalid(String),

    #[error("component {component:?} has {size} vertices, more than sigma")]
    ComponentTooLarge { component: Vec<usize>, size: usize },

    #[error("component {component:?} touches {count} hub vertices, more than delta")]
    NeighborhoodTooLarge { component: Vec<usize>, count: usize },

    #[error("instance too large for exhaustive search: {what} = {size} exceeds cap {cap}")]
    InstanceTooLarge {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("constraint {constraint} violates the wildcard property")]
    WildcardPropertyViolated { constraint: usize },

    #[error("block cover work {work} exceeds cap {cap}")]
    BlockTooLarge { work: u128, cap: u128 },

    #[error("join construction needs more than {cap} candidate unions")]
    CombinatorialBlowup { cap: u64 },

    #[error("bad arity: {0}")]
    BadArity(String),

    #[error("parameters too large: {0}")]
    ParamsTooLarge(String),

    #[error("gadget too large: {0}")]
    GadgetTooLarge(String),
}

impl Error {
    /// True for errors caused by a size cap rather than malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::InstanceTooLarge { .. }
                | Error::BlockTooLarge { .. }
                | Error::CombinatorialBlowup { .. }
                | Error::ParamsTooLarge(_)
                | Error::GadgetTooLarge(_)
        )
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn too_large(
        what: &'static str,
        size: impl Into<u128>,
        cap: impl Into<u128>,
    ) -> Self {
        Error::InstanceTooLarge {
            what,
            size: size.into(),
            cap: cap.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
