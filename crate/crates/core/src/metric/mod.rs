//! Extended reals, ℓp exponents, and the metric-space abstraction.
//!
//! Every distance in the crate takes values in `[0, ∞]` ([`ExtReal`]); a
//! metric here is always an *extended pseudometric*: distinct points may sit
//! at distance zero and distances may be infinite. Separation and finiteness
//! are properties checked on demand, never assumed.

mod checks;
mod constructions;
mod finite;
mod norm;

pub use checks::{check_metric_axioms, check_p_strengthened, sampled_axiom_check, AxiomReport};
pub use constructions::{
    p_strengthen, product_metric, pullback_metric, quotient_metric, FnMetric, PStrengthened, Pointed, Product,
    Pullback, Quotient, QuotientPoint, Subset, SubsetFn,
};
pub use finite::FiniteSpace;
pub use norm::lp_norm;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A value in `[0, ∞]`.
///
/// Backed by an `f64` that is never NaN and never negative; `+∞` is the
/// distinguished infinite value. Addition saturates and the order is total
/// with `INF` as the maximum.
#[derive(Clone, Copy, Default, PartialEq)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal(0.0);
    pub const ONE: ExtReal = ExtReal(1.0);
    pub const INF: ExtReal = ExtReal(f64::INFINITY);

    /// Panics if `v` is NaN or negative.
    pub fn new(v: f64) -> Self {
        Self::try_new(v).unwrap_or_else(|| panic!("ExtReal must lie in [0, inf], got {v}"))
    }

    pub fn try_new(v: f64) -> Option<Self> {
        if v.is_nan() || v < 0.0 {
            None
        } else {
            // normalizes -0.0
            Some(ExtReal(v + 0.0))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    #[inline]
    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }

    /// `self^e` for `e > 0`; `INF^e = INF`.
    pub fn powf(self, e: f64) -> Self {
        ExtReal(self.0.powf(e))
    }

    /// Multiplication by a nonnegative constant with the convention `0 · ∞ = 0`.
    pub fn scale(self, c: f64) -> Self {
        assert!(c >= 0.0, "scale factor must be nonnegative");
        if c == 0.0 {
            ExtReal::ZERO
        } else {
            ExtReal(self.0 * c)
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Absolute difference of two extended reals following the conventions
    /// `∞ − a = ∞`, `a − (−∞) = ∞`; equal values (including equal infinities)
    /// are at distance zero.
    pub fn abs_diff(a: f64, b: f64) -> Self {
        if a == b {
            ExtReal::ZERO
        } else {
            ExtReal((a - b).abs())
        }
    }

    /// `|a - b| <= tol` with infinities compared exactly.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        if self.is_infinite() || other.is_infinite() {
            self == other
        } else {
            (self.0 - other.0).abs() <= tol
        }
    }
}

impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::hash::Hash for ExtReal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        ExtReal(self.0 + rhs.0)
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |a, b| a + b)
    }
}

impl From<u32> for ExtReal {
    fn from(v: u32) -> Self {
        ExtReal(v as f64)
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

impl FromStr for ExtReal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "INF" | "infinity" | "Infinity" => Ok(ExtReal::INF),
            t => t
                .parse::<f64>()
                .ok()
                .and_then(ExtReal::try_new)
                .ok_or_else(|| Error::Parse(format!("not a value in [0, inf]: {s:?}"))),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => {
                ExtReal::try_new(v).ok_or_else(|| serde::de::Error::custom(format!("negative distance {v}")))
            }
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// An exponent `p ∈ [1, ∞]` for ℓp norms, Wasserstein distances and
/// quotient/strengthened metrics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PExponent {
    Finite(f64),
    Infinity,
}

impl PExponent {
    pub const ONE: PExponent = PExponent::Finite(1.0);

    /// Rejects `p < 1` and NaN; `f64::INFINITY` maps to [`PExponent::Infinity`].
    pub fn new(p: f64) -> Result<Self> {
        if p.is_nan() || p < 1.0 {
            Err(Error::Domain(format!("exponent p must satisfy p >= 1, got {p}")))
        } else if p.is_infinite() {
            Ok(PExponent::Infinity)
        } else {
            Ok(PExponent::Finite(p))
        }
    }

    /// `1/p` with the convention `1/∞ = 0`.
    pub fn reciprocal(self) -> f64 {
        match self {
            PExponent::Finite(p) => 1.0 / p,
            PExponent::Infinity => 0.0,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, PExponent::Infinity)
    }

    pub fn as_f64(self) -> f64 {
        match self {
            PExponent::Finite(p) => p,
            PExponent::Infinity => f64::INFINITY,
        }
    }
}

impl PartialOrd for PExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.as_f64().partial_cmp(&other.as_f64())
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Finite(p) => write!(f, "{p}"),
            PExponent::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for PExponent {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "INF" | "infinity" | "Infinity" => Ok(PExponent::Infinity),
            t => {
                let p = t
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("not an exponent: {s:?}")))?;
                PExponent::new(p)
            }
        }
    }
}

impl Serialize for PExponent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PExponent::Finite(p) => s.serialize_f64(*p),
            PExponent::Infinity => s.serialize_str("inf"),
        }
    }
}

/// A set with an extended pseudometric.
pub trait MetricSpace {
    type Point: Clone + Ord + fmt::Debug;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> ExtReal;

    /// Whether `x` belongs to the point domain. Defaults to every value of the
    /// point type.
    fn contains(&self, _x: &Self::Point) -> bool {
        true
    }
}

/// A metric space with a distinguished basepoint.
pub trait PointedSpace: MetricSpace {
    fn basepoint(&self) -> Self::Point;

    /// Whether `x` is (a representative of) the basepoint. Quotient spaces
    /// override this so that every member of the collapsed subset counts.
    fn is_basepoint(&self, x: &Self::Point) -> bool {
        *x == self.basepoint()
    }
}

/// A pointed space whose points can be listed exhaustively.
pub trait FinitePointedSpace: PointedSpace {
    /// All points, basepoint included.
    fn points(&self) -> Vec<Self::Point>;
}

impl<S: MetricSpace + ?Sized> MetricSpace for &S {
    type Point = S::Point;
    fn distance(&self, x: &Self::Point, y: &Self::Point) -> ExtReal {
        (**self).distance(x, y)
    }
    fn contains(&self, x: &Self::Point) -> bool {
        (**self).contains(x)
    }
}

impl<S: PointedSpace + ?Sized> PointedSpace for &S {
    fn basepoint(&self) -> Self::Point {
        (**self).basepoint()
    }
    fn is_basepoint(&self, x: &Self::Point) -> bool {
        (**self).is_basepoint(x)
    }
}

impl<S: FinitePointedSpace + ?Sized> FinitePointedSpace for &S {
    fn points(&self) -> Vec<Self::Point> {
        (**self).points()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_real_saturates_and_orders() {
        assert_eq!(ExtReal::new(1.0) + ExtReal::INF, ExtReal::INF);
        assert!(ExtReal::INF > ExtReal::new(1e300));
        assert_eq!(ExtReal::INF.powf(3.0), ExtReal::INF);
        assert_eq!(ExtReal::INF.powf(1.0 / 3.0), ExtReal::INF);
        assert_eq!(ExtReal::new(-0.0).value().to_bits(), 0.0f64.to_bits());
        assert_eq!(ExtReal::INF.scale(0.0), ExtReal::ZERO);
    }

    #[test]
    fn ext_real_rejects_bad_values() {
        assert!(ExtReal::try_new(-1.0).is_none());
        assert!(ExtReal::try_new(f64::NAN).is_none());
        assert!("-2".parse::<ExtReal>().is_err());
        assert_eq!("inf".parse::<ExtReal>().unwrap(), ExtReal::INF);
    }

    #[test]
    fn extended_differences() {
        assert_eq!(ExtReal::abs_diff(f64::INFINITY, 3.0), ExtReal::INF);
        assert_eq!(ExtReal::abs_diff(3.0, f64::NEG_INFINITY), ExtReal::INF);
        assert_eq!(ExtReal::abs_diff(f64::INFINITY, f64::INFINITY), ExtReal::ZERO);
        assert_eq!(ExtReal::abs_diff(f64::INFINITY, f64::NEG_INFINITY), ExtReal::INF);
    }

    #[test]
    fn exponent_validation() {
        assert!(PExponent::new(0.5).is_err());
        assert!(PExponent::new(f64::NAN).is_err());
        assert_eq!(PExponent::new(f64::INFINITY).unwrap(), PExponent::Infinity);
        assert_eq!("inf".parse::<PExponent>().unwrap(), PExponent::Infinity);
        assert_eq!("2.5".parse::<PExponent>().unwrap(), PExponent::Finite(2.5));
        assert_eq!(PExponent::Infinity.reciprocal(), 0.0);
        assert!(PExponent::Finite(2.0) < PExponent::Infinity);
    }

    #[test]
    fn serde_uses_inf_literal() {
        let v = serde_json::to_string(&vec![ExtReal::new(1.5), ExtReal::INF]).unwrap();
        assert_eq!(v, r#"[1.5,"inf"]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&v).unwrap();
        assert_eq!(back, vec![ExtReal::new(1.5), ExtReal::INF]);
    }
}
