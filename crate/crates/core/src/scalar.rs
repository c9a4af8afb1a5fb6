//! Scalar abstraction shared by every evaluation route.
//!
//! All polynomial routes are written once against [`Scalar`]. Exact mode
//! instantiates them with [`Rational`]; float mode with `f64` (or `f32`).

use std::fmt::{Debug, Display};
use std::ops::Neg;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, Num, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms.
pub type Rational = BigRational;

/// Which arithmetic an evaluation runs in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Exact,
    Float,
}

impl Display for ScalarMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarMode::Exact => f.write_str("exact"),
            ScalarMode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::Float),
            other => Err(Error::Parse(format!("unknown mode `{other}`"))),
        }
    }
}

/// A field the evaluation routes can run over.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Neg<Output = Self> + Send + Sync + 'static
{
    const MODE: ScalarMode;

    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self;

    fn to_f64(&self) -> f64;

    fn abs_value(&self) -> Self;

    /// `self^e`, or `None` when the power leaves the scalar field
    /// (an irrational root of a rational, a negative power of zero).
    fn pow_rational(&self, e: &Rational) -> Option<Self>;

    /// Default pass threshold for identity checks run in this field.
    fn default_tolerance() -> f64;

    /// Canonical text form: `p/q` for rationals, 17 significant digits for floats.
    fn render(&self) -> String;

    fn from_usize(n: usize) -> Self {
        Self::from_i64(n as i64)
    }

    fn pow_int(&self, n: i64) -> Option<Self> {
        self.pow_rational(&Rational::from_integer(BigInt::from(n)))
    }
}

/// Scalars with square roots and transcendental functions.
pub trait FloatScalar: Scalar + Float {}

impl<T: Scalar + Float> FloatScalar for T {}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs_value(&self) -> Self {
        self.abs()
    }

    fn pow_rational(&self, e: &Rational) -> Option<Self> {
        let p = e.numer().to_i32()?;
        let q = e.denom().to_u32()?;
        if p < 0 && self.is_zero() {
            return None;
        }
        let base = if q == 1 { self.clone() } else { exact_root(self, q)? };
        Some(num_traits::Pow::pow(&base, p))
    }

    fn default_tolerance() -> f64 {
        0.0
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

macro_rules! float_scalar {
    ($t:ty, $tol:expr) => {
        impl Scalar for $t {
            const MODE: ScalarMode = ScalarMode::Float;

            fn from_rational(r: &Rational) -> Self {
                Scalar::to_f64(r) as $t
            }

            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn to_f64(&self) -> f64 {
                *self as f64
            }

            fn abs_value(&self) -> Self {
                self.abs()
            }

            fn pow_rational(&self, e: &Rational) -> Option<Self> {
                if e.is_integer() {
                    let n = e.to_integer().to_i32()?;
                    if n < 0 && *self == 0.0 {
                        return None;
                    }
                    Some(self.powi(n))
                } else {
                    let v = self.powf(Scalar::to_f64(e) as $t);
                    v.is_finite().then_some(v)
                }
            }

            fn default_tolerance() -> f64 {
                $tol
            }

            fn render(&self) -> String {
                format!("{:.16e}", *self as f64)
            }
        }
    };
}

float_scalar!(f64, 1e-9);
float_scalar!(f32, 1e-3);

/// The rational `q`-th root of `x`, if there is one.
fn exact_root(x: &Rational, q: u32) -> Option<Rational> {
    if x.is_negative() && q.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(q);
        (num_traits::Pow::pow(&r, q) == *n).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

/// Parses `p/q` or `p`; the result is normalized.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let den = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// `n/d` as a rational; panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serde adapter storing a [`Rational`] as its canonical string.
pub mod rational_string {
    use super::{parse_rational, Rational};
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}
