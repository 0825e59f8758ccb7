use alloc::string::String;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {value}")]
    InvalidArgument { name: &'static str, value: f64 },

    #[error("`{name}` = {value} lies outside the domain {domain}")]
    Domain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("index {index} out of range (valid: 0..={max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("unknown molecule `{name}`; valid names: H2, LiH, HCl, CO")]
    UnknownMolecule { name: String },

    #[error("state n = {n} is not bound (highest bound index is {max_n})")]
    NoSuchBoundState { n: usize, max_n: usize },

    #[error("numerical failure in {stage} at index {index}")]
    NumericalFailure { stage: &'static str, index: usize },

    #[error(
        "energy bracket [{lo:e}, {hi:e}] hartree does not contain state n = {n}; widen the limits"
    )]
    Bracket { n: usize, lo: f64, hi: f64 },

    #[error("matrix is not square or has mismatched size ({rows}x{cols})")]
    Shape { rows: usize, cols: usize },
}

pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::InvalidArgument { name, value })
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidArgument { name, value })
    }
}
