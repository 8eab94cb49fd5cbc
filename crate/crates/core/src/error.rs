use thiserror::Error;

use crate::terms::ParseError;

pub type Result<T, E = LatticeError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("lattice has no elements")]
    Empty,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("cover pair ({0}, {1}) declared twice")]
    DuplicateCover(String, String),
    #[error("order contains a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("relation is not transitive at `{0}` <= `{1}` <= `{2}`")]
    NotTransitive(String, String, String),
    #[error("relation is not reflexive at `{0}`")]
    NotReflexive(String),
    #[error("declared cover ({lower}, {upper}) is implied transitively")]
    NonCoverEdge { lower: String, upper: String },
    #[error("`{0}` and `{1}` have no {2}")]
    NotALattice(String, String, &'static str),
    #[error("`{0}` is not join-irreducible")]
    NotJoinIrreducible(String),
    #[error("the set {{{members}}} does not cover `{target}`")]
    NotACover { target: String, members: String },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("{what}: size {size} exceeds the limit {limit}")]
    SizeGuard { what: &'static str, size: u128, limit: u128 },
    #[error("lattice `{0}` is not distributive")]
    NotDistributive(String),
    #[error("lattice `{0}` is trivial (0 = 1)")]
    Trivial(String),
    #[error("lattice `{0}` is not Boolean")]
    NotBoolean(String),
    #[error("lattice `{0}` has no complementary pair of elements other than 0 and 1")]
    NoComplementaryPair(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("malformed lattice file: {0}")]
    Format(#[from] serde_json::Error),
}
