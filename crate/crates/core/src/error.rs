use thiserror::Error;

pub type Result<T> = std::result::Result<T, RieszError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RieszError {
    #[error("jet of order {available} is too short for exponent {z}: need at least {required}")]
    InsufficientJetOrder { required: usize, available: usize, z: String },

    #[error("ill-conditioned Laurent fit (condition number {cond:.3e} exceeds {bound:.3e}); widen the eps range")]
    IllConditionedFit { cond: f64, bound: f64 },

    #[error("pole at z = -{k} is not simple or the residue is wrong: {detail}")]
    NonSimplePole { k: u32, detail: String },

    #[error("degenerate parameterization: {0}")]
    DegenerateParameterization(String),

    #[error("quadrature for {what} did not converge (change {change:.3e}, tolerance {tol:.3e})")]
    QuadratureNotConverged { what: String, change: f64, tol: f64 },

    #[error("unknown shape '{0}'")]
    UnknownShape(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("exponent {z} is outside the convergent regime (need Re z > {bound})")]
    ExponentNotConvergent { z: String, bound: f64 },

    #[error("exponent {z} is excluded for this method")]
    ExcludedExponent { z: String },

    #[error("exponent {z} outside ({lo}, {hi})")]
    ExponentOutOfRange { z: String, lo: f64, hi: f64 },

    #[error("dimension {0} is not supported here")]
    UnsupportedDimension(usize),

    #[error("closed form has a pole at z = {0}")]
    PoleAt(f64),

    #[error("jet fit unstable: {0}")]
    FitUnstable(String),

    #[error("methods disagree: {a} vs {b} (tolerance {tol:.3e})")]
    MethodsDisagree { a: String, b: String, tol: f64 },

    #[error("inversion center is {distance:.3e} from the shape, below the margin {margin:.3e}")]
    CenterTooClose { distance: f64, margin: f64 },

    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{0}")]
    InvalidArgument(String),
}

impl RieszError {
    /// Whether the error stems from user input rather than from the numerics.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            RieszError::UnknownShape(_)
                | RieszError::InvalidParams(_)
                | RieszError::Parse { .. }
                | RieszError::InvalidArgument(_)
                | RieszError::UnsupportedDimension(_)
                | RieszError::ExponentNotConvergent { .. }
                | RieszError::ExponentOutOfRange { .. }
                | RieszError::ExcludedExponent { .. }
                | RieszError::CenterTooClose { .. }
        )
    }
}

pub(crate) fn zfmt(z: num_complex::Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}
