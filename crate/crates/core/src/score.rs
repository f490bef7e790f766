//! Scalars of the two idempotent semirings.
//!
//! [`ExtendedScore`] lives in `ℝ ∪ {−∞}` with `max` as addition and `+` as
//! multiplication. [`UnitScore`] lives in `[0, 1]` with `max` and ordinary
//! multiplication. The exponential maps the first onto the second on the
//! non-positive half-line, and [`exp_bridge`] / [`log_bridge`] are that pair.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Library-wide comparison tolerance.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Tolerance used by the scalar-level and unit-law checks.
pub const ARITHMETIC_TOLERANCE: f64 = 1e-12;

/// An element of `ℝ ∪ {−∞}`.
///
/// The bottom element is a tagged state. It is never encoded as a large
/// negative float, so `bottom + x` stays bottom no matter how big `x` is.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default)]
pub struct ExtendedScore(Option<f64>);

impl ExtendedScore {
    pub const BOTTOM: Self = ExtendedScore(None);
    pub const ZERO: Self = ExtendedScore(Some(0.0));

    /// A finite score.
    ///
    /// Panics on NaN or infinite input; use [`ExtendedScore::from_f64`] for
    /// untrusted values.
    pub fn finite(value: f64) -> Self {
        assert!(value.is_finite(), "finite score expected, got {value}");
        ExtendedScore(Some(value))
    }

    /// Maps `-inf` to bottom and rejects NaN and `+inf`.
    pub fn from_f64(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(ExtendedScore(Some(value)))
        } else if value == f64::NEG_INFINITY {
            Ok(Self::BOTTOM)
        } else {
            Err(Error::InvalidScore(value))
        }
    }

    pub fn is_bottom(self) -> bool {
        self.0.is_none()
    }

    pub fn value(self) -> Option<f64> {
        self.0
    }

    /// The score as an `f64`, with bottom mapped to `-inf`.
    pub fn to_f64(self) -> f64 {
        self.0.unwrap_or(f64::NEG_INFINITY)
    }

    pub fn oplus(self, other: Self) -> Self {
        oplus(self, other)
    }

    pub fn otimes(self, other: Self) -> Self {
        otimes(self, other)
    }

    /// Both bottom, or both finite and within `tol` of each other.
    pub fn approx_eq(self, other: Self, tol: f64) -> bool {
        match (self.0, other.0) {
            (None, None) => true,
            (Some(a), Some(b)) => (a - b).abs() <= tol,
            _ => false,
        }
    }
}

impl fmt::Debug for ExtendedScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("-inf"),
            Some(v) => write!(f, "{v:?}"),
        }
    }
}

impl fmt::Display for ExtendedScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            None => f.write_str("-inf"),
            Some(v) => f.write_str(&format_significant(v)),
        }
    }
}

impl From<UnitScore> for f64 {
    fn from(u: UnitScore) -> f64 {
        u.0
    }
}

/// Formats a finite value with 9 significant digits, trailing zeros trimmed.
pub fn format_significant(value: f64) -> String {
    if value == 0.0 {
        return "0".to_string();
    }
    let magnitude = value.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).clamp(0, 17) as usize;
    let mut text = format!("{value:.decimals$}");
    if text.contains('.') {
        while text.ends_with('0') {
            text.pop();
        }
        if text.ends_with('.') {
            text.pop();
        }
    }
    if text == "-0" {
        text = "0".to_string();
    }
    text
}

impl Serialize for ExtendedScore {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0 {
            None => serializer.serialize_str("-inf"),
            Some(v) => serializer.serialize_f64(v),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedScore {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ScoreVisitor;

        impl Visitor<'_> for ScoreVisitor {
            type Value = ExtendedScore;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a finite number or the string \"-inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                if v.is_finite() {
                    Ok(ExtendedScore(Some(v)))
                } else {
                    Err(E::custom(format!("non-finite number {v}")))
                }
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(ExtendedScore(Some(v as f64)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(ExtendedScore(Some(v as f64)))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                if v == "-inf" {
                    Ok(ExtendedScore::BOTTOM)
                } else {
                    Err(E::custom(format!("unexpected token {v:?}, only \"-inf\" is accepted")))
                }
            }
        }

        deserializer.deserialize_any(ScoreVisitor)
    }
}

/// A real number in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
pub struct UnitScore(f64);

impl UnitScore {
    pub const ZERO: Self = UnitScore(0.0);
    pub const ONE: Self = UnitScore(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&value) {
            Ok(UnitScore(value))
        } else {
            Err(Error::InvalidUnit(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl fmt::Debug for UnitScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for UnitScore {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_significant(self.0))
    }
}

impl<'de> Deserialize<'de> for UnitScore {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        UnitScore::new(v).map_err(de::Error::custom)
    }
}

/// `max(a, b)` with bottom as the neutral element.
pub fn oplus(a: ExtendedScore, b: ExtendedScore) -> ExtendedScore {
    match (a.0, b.0) {
        (None, _) => b,
        (_, None) => a,
        (Some(x), Some(y)) => ExtendedScore(Some(x.max(y))),
    }
}

/// `a + b` with bottom absorbing.
pub fn otimes(a: ExtendedScore, b: ExtendedScore) -> ExtendedScore {
    match (a.0, b.0) {
        (Some(x), Some(y)) => ExtendedScore(Some(x + y)),
        _ => ExtendedScore::BOTTOM,
    }
}

/// `e^a` for `a ∈ [−∞, 0]`, with `e^{−∞} = 0`.
pub fn exp_bridge(a: ExtendedScore) -> Result<UnitScore> {
    match a.0 {
        None => Ok(UnitScore::ZERO),
        Some(x) if x > 0.0 => Err(Error::PositiveExponent(x)),
        Some(x) => Ok(UnitScore(x.exp())),
    }
}

/// `ln u` with `ln 0 = −∞`.
pub fn log_bridge(u: UnitScore) -> ExtendedScore {
    if u.0 == 0.0 {
        ExtendedScore::BOTTOM
    } else {
        ExtendedScore(Some(u.0.ln()))
    }
}

/// A selective idempotent semiring whose elements serve as density weights.
///
/// `ZERO` is the neutral element of `oplus` (and absorbing for `otimes`),
/// `ONE` is the neutral element of `otimes` and the top of admissible
/// weights. Both instances are totally ordered with `oplus = max`.
pub trait Semiring: Copy + PartialOrd + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const ZERO: Self;
    const ONE: Self;
    /// Short tag used in documents, `maxplus` or `maxtimes`.
    const KIND: &'static str;

    fn oplus(self, other: Self) -> Self;
    fn otimes(self, other: Self) -> Self;
    /// `self ⊘ by`, the unique `r` with `r ⊗ by = self`. `by` must not be `ZERO`.
    fn residual(self, by: Self) -> Self;
    fn approx_eq(self, other: Self, tol: f64) -> bool;
    /// Whether this value counts as the normalizing top weight.
    fn is_one(self) -> bool;
    /// Rejects weights above `ONE`.
    fn check_admissible(self) -> Result<()>;

    fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    fn total_cmp(self, other: Self) -> Ordering {
        self.partial_cmp(&other).unwrap_or(Ordering::Equal)
    }
}

impl Semiring for ExtendedScore {
    const ZERO: Self = ExtendedScore::BOTTOM;
    const ONE: Self = ExtendedScore::ZERO;
    const KIND: &'static str = "maxplus";

    fn oplus(self, other: Self) -> Self {
        oplus(self, other)
    }

    fn otimes(self, other: Self) -> Self {
        otimes(self, other)
    }

    fn residual(self, by: Self) -> Self {
        match (self.0, by.0) {
            (Some(a), Some(b)) => ExtendedScore(Some(a - b)),
            (None, Some(_)) => ExtendedScore::BOTTOM,
            (_, None) => panic!("residual by bottom"),
        }
    }

    fn approx_eq(self, other: Self, tol: f64) -> bool {
        ExtendedScore::approx_eq(self, other, tol)
    }

    fn is_one(self) -> bool {
        self.0 == Some(0.0)
    }

    fn check_admissible(self) -> Result<()> {
        match self.0 {
            Some(x) if x > 0.0 => Err(Error::PositiveWeight(x)),
            _ => Ok(()),
        }
    }
}

impl Semiring for UnitScore {
    const ZERO: Self = UnitScore::ZERO;
    const ONE: Self = UnitScore::ONE;
    const KIND: &'static str = "maxtimes";

    fn oplus(self, other: Self) -> Self {
        UnitScore(self.0.max(other.0))
    }

    fn otimes(self, other: Self) -> Self {
        UnitScore(self.0 * other.0)
    }

    fn residual(self, by: Self) -> Self {
        assert!(by.0 > 0.0, "residual by zero");
        UnitScore((self.0 / by.0).min(1.0))
    }

    fn approx_eq(self, other: Self, tol: f64) -> bool {
        (self.0 - other.0).abs() <= tol
    }

    fn is_one(self) -> bool {
        (self.0 - 1.0).abs() <= ARITHMETIC_TOLERANCE
    }

    fn check_admissible(self) -> Result<()> {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fin(x: f64) -> ExtendedScore {
        ExtendedScore::finite(x)
    }

    fn score() -> impl Strategy<Value = ExtendedScore> {
        prop_oneof![
            1 => Just(ExtendedScore::BOTTOM),
            4 => (-50.0f64..50.0).prop_map(fin),
        ]
    }

    fn nonpositive() -> impl Strategy<Value = ExtendedScore> {
        prop_oneof![
            1 => Just(ExtendedScore::BOTTOM),
            1 => Just(ExtendedScore::ZERO),
            4 => (-30.0f64..=0.0).prop_map(fin),
        ]
    }

    #[test]
    fn oplus_examples() {
        assert_eq!(oplus(ExtendedScore::BOTTOM, fin(3.0)), fin(3.0));
        assert_eq!(oplus(fin(2.0), fin(5.0)), fin(5.0));
        assert_eq!(oplus(fin(-1.0), fin(-1.0)), fin(-1.0));
    }

    #[test]
    fn otimes_examples() {
        assert_eq!(otimes(ExtendedScore::BOTTOM, fin(3.0)), ExtendedScore::BOTTOM);
        assert_eq!(otimes(fin(2.0), fin(3.0)), fin(5.0));
        assert_eq!(otimes(fin(0.0), fin(-7.25)), fin(-7.25));
    }

    #[test]
    fn bridge_examples() {
        assert_eq!(exp_bridge(ExtendedScore::BOTTOM).unwrap(), UnitScore::ZERO);
        assert_eq!(exp_bridge(ExtendedScore::ZERO).unwrap(), UnitScore::ONE);
        assert!((exp_bridge(fin(-std::f64::consts::LN_2)).unwrap().get() - 0.5).abs() < 1e-6);
        assert!(matches!(exp_bridge(fin(0.1)), Err(Error::PositiveExponent(_))));

        assert_eq!(log_bridge(UnitScore::ZERO), ExtendedScore::BOTTOM);
        assert_eq!(log_bridge(UnitScore::ONE), ExtendedScore::ZERO);
        let half = log_bridge(UnitScore::new(0.5).unwrap()).value().unwrap();
        assert!((half + std::f64::consts::LN_2).abs() < 1e-12);
    }

    #[test]
    fn from_f64_rejects_nan_and_plus_infinity() {
        assert!(ExtendedScore::from_f64(f64::NAN).is_err());
        assert!(ExtendedScore::from_f64(f64::INFINITY).is_err());
        assert_eq!(ExtendedScore::from_f64(f64::NEG_INFINITY).unwrap(), ExtendedScore::BOTTOM);
        assert!(UnitScore::new(1.5).is_err());
        assert!(UnitScore::new(-0.0).is_ok());
    }

    #[test]
    fn bottom_never_equals_finite() {
        assert!(!ExtendedScore::BOTTOM.approx_eq(fin(-1e300), 1e308));
        assert!(ExtendedScore::BOTTOM < fin(-1e300));
    }

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(format_significant(1.0 + 0.5f64.ln()), "0.306852819");
        assert_eq!(format_significant(3.0), "3");
        assert_eq!(format_significant(-2.0), "-2");
        assert_eq!(format_significant(0.0), "0");
        assert_eq!(format_significant(-std::f64::consts::LN_2), "-0.693147181");
        assert_eq!(format_significant(123456.7891234), "123456.789");
        assert_eq!(ExtendedScore::BOTTOM.to_string(), "-inf");
    }

    #[test]
    fn json_encoding() {
        let v: Vec<ExtendedScore> = serde_json::from_str(r#"[0, "-inf", -2.5]"#).unwrap();
        assert_eq!(v, vec![ExtendedScore::ZERO, ExtendedScore::BOTTOM, fin(-2.5)]);
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"[0.0,"-inf",-2.5]"#);
        assert!(serde_json::from_str::<ExtendedScore>(r#""inf""#).is_err());
        assert!(serde_json::from_str::<UnitScore>("1.2").is_err());
    }

    proptest! {
        #[test]
        fn oplus_is_a_commutative_idempotent_monoid(a in score(), b in score(), c in score()) {
            prop_assert_eq!(oplus(a, oplus(b, c)), oplus(oplus(a, b), c));
            prop_assert_eq!(oplus(a, b), oplus(b, a));
            prop_assert_eq!(oplus(a, a), a);
            prop_assert_eq!(oplus(ExtendedScore::BOTTOM, a), a);
        }

        #[test]
        fn otimes_distributes_over_oplus(a in score(), b in score(), c in score()) {
            prop_assert_eq!(otimes(a, b), otimes(b, a));
            prop_assert_eq!(otimes(ExtendedScore::ZERO, a), a);
            prop_assert_eq!(otimes(ExtendedScore::BOTTOM, a), ExtendedScore::BOTTOM);
            let lhs = otimes(a, oplus(b, c));
            let rhs = oplus(otimes(a, b), otimes(a, c));
            prop_assert!(lhs.approx_eq(rhs, ARITHMETIC_TOLERANCE));
        }

        #[test]
        fn exp_bridge_is_a_semiring_morphism(a in nonpositive(), b in nonpositive()) {
            let ea = exp_bridge(a).unwrap().get();
            let eb = exp_bridge(b).unwrap().get();
            prop_assert_eq!(exp_bridge(oplus(a, b)).unwrap().get(), ea.max(eb));
            prop_assert!((exp_bridge(otimes(a, b)).unwrap().get() - ea * eb).abs() <= ARITHMETIC_TOLERANCE);
        }

        #[test]
        fn bridges_are_mutually_inverse(a in nonpositive(), u in 0.0f64..=1.0) {
            let back = log_bridge(exp_bridge(a).unwrap());
            prop_assert!(back.approx_eq(a, ARITHMETIC_TOLERANCE));
            let u = UnitScore::new(u).unwrap();
            let forth = exp_bridge(log_bridge(u)).unwrap().get();
            prop_assert!((forth - u.get()).abs() <= ARITHMETIC_TOLERANCE);
        }

        #[test]
        fn exp_bridge_is_strictly_increasing(a in -30.0f64..0.0, d in 1e-6f64..5.0) {
            let lo = exp_bridge(fin(a - d)).unwrap();
            let hi = exp_bridge(fin(a)).unwrap();
            prop_assert!(lo < hi);
        }
    }
}
