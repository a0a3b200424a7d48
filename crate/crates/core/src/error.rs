use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// The vertex coincides with the centroid, so the chord through them is undefined.
    #[error("degenerate ray: vertex coincides with the centroid")]
    DegenerateRay,

    #[error("squared centroid-to-vertex distance g{index} is not positive")]
    NonPositiveG { index: usize },

    #[error("the centroid lies on the sphere (p0 vanishes); the iteration is undefined")]
    VanishingPower,

    #[error("triangle parameters violate u = 4t - s^2 (residual {residual})")]
    NotUnitCircumradius { residual: String },

    #[error("vertex {index} is not on the unit sphere (|v| - 1 = {deviation})")]
    NotOnSphere { index: usize, deviation: String },

    #[error("edge parameters violate the unit-circumradius constraint (residual {residual})")]
    NotInscribed { residual: String },

    #[error("edge parameters are not realizable: {0}")]
    NotRealizable(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration is planar; use the quadrilateral predictor")]
    PlanarInput,

    #[error("configuration is not planar; use the tetrahedron predictor")]
    NonPlanarInput,

    #[error("quadrilateral labeling is not convex-cyclic (d13, d24 must be the diagonals)")]
    NonConvexLabeling,

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("fewer than 4 sequence values lie above the underflow floor")]
    UnderflowTail,

    #[error("random generation rejected {attempts} candidates")]
    RejectionExhausted { attempts: u64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numeric consistency fault: {0}")]
    ConsistencyFault(String),

    #[error("step {step}: {source}")]
    AtStep {
        step: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_step(self, step: usize) -> Error {
        Error::AtStep {
            step,
            source: Box::new(self),
        }
    }

    /// The error with any step tagging removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtStep { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for errors caused by bad user input rather than by the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self.root(),
            Error::InvalidInput(_)
                | Error::NotOnSphere { .. }
                | Error::NotInscribed { .. }
                | Error::NotRealizable(_)
                | Error::NotUnitCircumradius { .. }
                | Error::PlanarInput
                | Error::NonPlanarInput
                | Error::NonConvexLabeling
        )
    }
}
