use thiserror::Error;

use crate::galois::GaloisError;
use crate::numfield::NumFieldError;
use crate::padic::PadicError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinvError {
    /// A standing hypothesis fails; `code` is B1, B2, B3, "order" or "ramified".
    #[error("({code}) violated: {detail}")]
    Hypothesis { code: &'static str, detail: String },
    #[error("invalid case data: {0}")]
    InvalidCase(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("every candidate {what} gives a vanishing projection; degenerate unit data")]
    DegenerateProjection { what: &'static str },
    #[error("vanishing denominator log u_ba: p-irregular or wrong eigencharacter")]
    VanishingDenominator,
    #[error("inconsistent system: max residual has valuation {valuation}, need {target}")]
    InconsistentSystem { valuation: String, target: i64 },
    #[error("singular pivot for unknown {0}")]
    SingularPivot(&'static str),
    #[error("ratio outside Q_p: coordinate valuations {0:?}")]
    RatioOutsideBase(Vec<String>),
    #[error("division by zero in check_equality")]
    ZeroDenominator,
    #[error("stage {stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<LinvError>,
    },
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error(transparent)]
    NumField(#[from] NumFieldError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

impl LinvError {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(LinvError) -> LinvError {
        move |e| LinvError::Stage { stage, source: Box::new(e) }
    }

    /// Strips stage wrappers.
    pub fn root(&self) -> &LinvError {
        match self {
            LinvError::Stage { source, .. } => source.root(),
            e => e,
        }
    }
}
