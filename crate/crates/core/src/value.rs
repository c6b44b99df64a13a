//! Scalar type carried by every rate and entropy.
//!
//! A [`Value`] is either an exact rational or a float with an attached
//! comparison tolerance. Exact values stay exact under arithmetic; any
//! operation that touches a float produces a float whose tolerance is the
//! larger of the two operands'.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Default comparison tolerance for float values.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug)]
pub enum Value {
    Exact(BigRational),
    Float { x: f64, tol: f64 },
}

impl Value {
    pub fn int(n: i64) -> Self {
        Value::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Value::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(x: f64) -> Self {
        Value::Float {
            x,
            tol: DEFAULT_TOLERANCE,
        }
    }

    pub fn float_tol(x: f64, tol: f64) -> Self {
        Value::Float { x, tol }
    }

    pub fn zero() -> Self {
        Value::int(0)
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Value::Exact(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Float { .. } => None,
        }
    }

    /// Comparison tolerance; zero for exact values.
    pub fn tol(&self) -> f64 {
        match self {
            Value::Exact(_) => 0.0,
            Value::Float { tol, .. } => *tol,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Value::Float { x, .. } => *x,
        }
    }

    /// Re-tags a float with a new tolerance; exact values are unchanged.
    pub fn with_tol(self, tol: f64) -> Self {
        match self {
            Value::Float { x, .. } => Value::Float { x, tol },
            v => v,
        }
    }

    /// Tolerance-aware three-way comparison. Floats within the larger of the
    /// two tolerances compare equal.
    pub fn cmp_tol(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Exact(a), Value::Exact(b)) => a.cmp(b),
            _ => {
                let tol = self.tol().max(other.tol());
                let d = self.to_f64() - other.to_f64();
                if d.abs() <= tol {
                    Ordering::Equal
                } else if d < 0.0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
        }
    }

    pub fn approx_eq(&self, other: &Value) -> bool {
        self.cmp_tol(other) == Ordering::Equal
    }

    /// Sign under the value's own tolerance.
    pub fn signum_tol(&self) -> Ordering {
        self.cmp_tol(&Value::zero())
    }

    pub fn is_zero_tol(&self) -> bool {
        self.signum_tol() == Ordering::Equal
    }

    pub fn min_tol(self, other: Value) -> Value {
        if other.cmp_tol(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    pub fn max_tol(self, other: Value) -> Value {
        if other.cmp_tol(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }

    /// Exact rational from a float by rounding to the nearest multiple of
    /// `2^-40`.
    pub fn lift_f64(x: f64) -> BigRational {
        let scaled = (x * (1u64 << 40) as f64).round();
        let num = BigInt::from_f64(scaled).unwrap_or_else(BigInt::zero);
        BigRational::new(num, BigInt::from(1u64 << 40))
    }

    /// Exact rational view: exact values as-is, floats lifted with
    /// [`Value::lift_f64`].
    pub fn to_rational_lifted(&self) -> BigRational {
        match self {
            Value::Exact(q) => q.clone(),
            Value::Float { x, .. } => Value::lift_f64(*x),
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Value>) -> Value {
        items.into_iter().fold(Value::zero(), |acc, v| &acc + v)
    }

    fn combine(
        a: &Value,
        b: &Value,
        exact: impl Fn(&BigRational, &BigRational) -> BigRational,
        float: impl Fn(f64, f64) -> f64,
    ) -> Value {
        match (a, b) {
            (Value::Exact(x), Value::Exact(y)) => Value::Exact(exact(x, y)),
            _ => Value::Float {
                x: float(a.to_f64(), b.to_f64()),
                tol: a.tol().max(b.tol()),
            },
        }
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::int(n)
    }
}

impl From<BigRational> for Value {
    fn from(q: BigRational) -> Self {
        Value::Exact(q)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr<&Value> for &Value {
            type Output = Value;
            fn $method(self, rhs: &Value) -> Value {
                Value::combine(self, rhs, |x, y| x $op y, |x, y| x $op y)
            }
        }
        impl $tr<Value> for Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Value> for Value {
            type Output = Value;
            fn $method(self, rhs: &Value) -> Value {
                (&self).$method(rhs)
            }
        }
        impl $tr<Value> for &Value {
            type Output = Value;
            fn $method(self, rhs: Value) -> Value {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Div<&Value> for &Value {
    type Output = Value;
    fn div(self, rhs: &Value) -> Value {
        if let Value::Exact(y) = rhs {
            assert!(!y.is_zero(), "division by exact zero");
        }
        Value::combine(self, rhs, |x, y| x / y, |x, y| x / y)
    }
}

impl Div<Value> for Value {
    type Output = Value;
    fn div(self, rhs: Value) -> Value {
        &self / &rhs
    }
}

impl Div<&Value> for Value {
    type Output = Value;
    fn div(self, rhs: &Value) -> Value {
        &self / rhs
    }
}

impl Neg for Value {
    type Output = Value;
    fn neg(self) -> Value {
        match self {
            Value::Exact(q) => Value::Exact(-q),
            Value::Float { x, tol } => Value::Float { x: -x, tol },
        }
    }
}

/// Exact equality for exact pairs, tolerance equality otherwise.
impl PartialEq for Value {
    fn eq(&self, other: &Value) -> bool {
        self.approx_eq(other)
    }
}

fn fmt_float(x: f64) -> String {
    let s = format!("{x:.9}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

impl Value {
    /// Bare representation: `p/q`, an integer, or a float.
    pub fn repr(&self) -> String {
        match self {
            Value::Exact(q) if q.is_integer() => q.numer().to_string(),
            Value::Exact(q) => format!("{}/{}", q.numer(), q.denom()),
            Value::Float { x, .. } => fmt_float(*x),
        }
    }
}

impl fmt::Display for Value {
    /// Non-integer rationals render as `p/q (≈ x)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(q) if !q.is_integer() => {
                write!(f, "{} (≈ {})", self.repr(), fmt_float(self.to_f64()))
            }
            _ => write!(f, "{}", self.repr()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct ValueRepr {
    value: String,
    approx: f64,
    exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tol: Option<f64>,
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Value::Exact(_) => ValueRepr {
                value: self.repr(),
                approx: self.to_f64(),
                exact: true,
                tol: None,
            },
            Value::Float { x, tol } => ValueRepr {
                value: format!("{x:e}"),
                approx: *x,
                exact: false,
                tol: Some(*tol),
            },
        };
        repr.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Value {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let repr = ValueRepr::deserialize(d)?;
        if repr.exact {
            parse_rational(&repr.value)
                .map(Value::Exact)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {}", repr.value)))
        } else {
            let x = f64::from_str(&repr.value).map_err(serde::de::Error::custom)?;
            Ok(Value::Float {
                x,
                tol: repr.tol.unwrap_or(DEFAULT_TOLERANCE),
            })
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(n.trim()).ok()?, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s.trim()).ok()?)),
    }
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> f64 {
    let term = |q: f64| if q <= 0.0 { 0.0 } else { -q * q.log2() };
    term(p) + term(1.0 - p)
}
