use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("{what} exceeds the limit of {limit}")]
    TooLarge { what: &'static str, limit: u64 },

    #[error("resource limit exceeded: {what} ({size} > {limit})")]
    Resource { what: &'static str, size: u128, limit: u128 },

    #[error("resource limit exceeded at h = {h}: {source}")]
    ResourceAt {
        h: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("at dilation factor {ell}: {source}")]
    AtEll {
        ell: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty point list")]
    Empty,

    #[error("points are not affinely independent")]
    AffinelyDependent,

    #[error("polytope is not full-dimensional (affine dimension {affine_dim} in ambient dimension {ambient_dim})")]
    Degenerate { affine_dim: usize, ambient_dim: usize },

    #[error("simplex is not unimodular (lattice index {index})")]
    NotUnimodular { index: String },

    #[error("point lies outside the dilated polytope")]
    PointOutside,

    #[error("point is not a lattice point")]
    NotLattice,

    #[error("no cell of the cover contains the point; the cover does not cover its target")]
    NoCell,

    #[error("cover is not certified")]
    Uncertified,

    #[error("integer overflow in lattice coordinates")]
    Overflow,

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        match self {
            Error::Resource { .. } | Error::ResourceAt { .. } | Error::TooLarge { .. } => true,
            Error::AtEll { source, .. } => source.is_resource(),
            _ => false,
        }
    }

    pub(crate) fn at_h(self, h: u64) -> Error {
        if self.is_resource() {
            Error::ResourceAt { h, source: Box::new(self) }
        } else {
            self
        }
    }
}
