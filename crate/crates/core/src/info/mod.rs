//! Finite joint distributions and the entropy-type functionals used by the
//! bounds: Shannon quantities, Gács-Körner common information and residual
//! information.

mod entropy;
mod format;
mod graph;
mod pmf;

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};

use num::{BigRational, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use entropy::{
    binary_entropy, conditional_entropy, conditional_mutual_information, entropy, gk_common_information,
    is_conditionally_independent, is_determined_by, mutual_information, residual_information,
    residual_information_on_support,
};
pub use format::{parse_pmf, parse_probability};
pub use graph::{characteristic_components, CharacteristicGraph, UnionFind};
pub use pmf::{Axis, JointPmf};

/// Exact probabilities.
pub type Exact = BigRational;

/// Float mass below this is treated as outside the support.
pub const FLOAT_SUPPORT_THRESHOLD: f64 = 1e-12;

/// Probability arithmetic shared by exact and floating pmfs.
pub trait Weight:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    fn to_f64(&self) -> f64;
    /// Strictly inside the support (exact: `> 0`, float: `> 1e-12`).
    fn in_support(&self) -> bool;
    /// Equality (exact: identical, float: within 1e-12).
    fn same(&self, other: &Self) -> bool;
    fn is_negative(&self) -> bool;
    fn from_exact(x: &Exact) -> Self;
    fn show(&self) -> String;
}

impl Weight for f64 {
    fn to_f64(&self) -> f64 {
        *self
    }
    fn in_support(&self) -> bool {
        *self > FLOAT_SUPPORT_THRESHOLD
    }
    fn same(&self, other: &Self) -> bool {
        (self - other).abs() <= FLOAT_SUPPORT_THRESHOLD
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn from_exact(x: &Exact) -> Self {
        ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
    }
    fn show(&self) -> String {
        self.to_string()
    }
}

impl Weight for Exact {
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn in_support(&self) -> bool {
        self.is_positive()
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn from_exact(x: &Exact) -> Self {
        x.clone()
    }
    fn show(&self) -> String {
        self.to_string()
    }
}

/// `num / den` as an exact probability.
pub fn ratio(num: i64, den: i64) -> Exact {
    Exact::new(num.into(), den.into())
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InfoError {
    #[error("axis {0} is out of range")]
    AxisOutOfRange(usize),
    #[error("axis sets overlap on axis {0}")]
    OverlappingAxes(usize),
    #[error("duplicate axis name `{0}`")]
    DuplicateAxis(String),
    #[error("unknown axis `{0}`")]
    UnknownAxis(String),
    #[error("outcome {0:?} does not fit the axes")]
    BadOutcome(Vec<usize>),
    #[error("negative probability for outcome {0:?}")]
    NegativeWeight(Vec<usize>),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(String),
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub(crate) fn check_disjoint(a: &[usize], b: &[usize]) -> Result<(), InfoError> {
    match a.iter().find(|x| b.contains(x)) {
        Some(&x) => Err(InfoError::OverlappingAxes(x)),
        None => Ok(()),
    }
}
