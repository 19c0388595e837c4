//! Exact rationals and rational multiples of powers of pi.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::new(num.into(), den.into()))
    }

    pub fn int(n: impl Into<BigInt>) -> Self {
        ExactRational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        ExactRational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        ExactRational(self.0.recip())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_ratio(&self) -> &BigRational {
        &self.0
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident) => {
        impl $tr for ExactRational {
            type Output = ExactRational;
            fn $f(self, o: ExactRational) -> ExactRational {
                ExactRational(self.0.$f(o.0))
            }
        }
        impl<'a> $tr<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $f(self, o: &ExactRational) -> ExactRational {
                ExactRational((&self.0).$f(&o.0))
            }
        }
    };
}
binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

/// JSON integer when the value fits in 64 bits, decimal string otherwise.
pub(crate) fn bigint_json(n: &BigInt) -> serde_json::Value {
    match n.to_i64() {
        Some(v) => v.into(),
        None => n.to_string().into(),
    }
}

/// Serializes a `u128` as a JSON number when it fits in `u64`, else as a string.
pub(crate) mod wide {
    use serde::Serializer;

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(*v) {
            Ok(x) => s.serialize_u64(x),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub mod option {
        use serde::Serializer;

        pub fn serialize<S: Serializer>(v: &Option<u128>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(x) => super::serialize(x, s),
                None => s.serialize_none(),
            }
        }
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ExactRational", 2)?;
        st.serialize_field("num", &bigint_json(self.numer()))?;
        st.serialize_field("den", &bigint_json(self.denom()))?;
        st.end()
    }
}

/// `coeff * pi^power`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PiMonomial {
    pub coeff: ExactRational,
    pub power: u32,
}

impl PiMonomial {
    pub fn new(coeff: ExactRational, power: u32) -> Self {
        PiMonomial { coeff, power }
    }

    pub fn checked_add(&self, o: &PiMonomial) -> Result<PiMonomial> {
        if self.power != o.power {
            return Err(Error::Precondition(format!(
                "cannot add pi^{} and pi^{}",
                self.power, o.power
            )));
        }
        Ok(PiMonomial::new(&self.coeff + &o.coeff, self.power))
    }

    pub fn scale(&self, r: &ExactRational) -> PiMonomial {
        PiMonomial::new(&self.coeff * r, self.power)
    }

    pub fn mul(&self, o: &PiMonomial) -> PiMonomial {
        PiMonomial::new(&self.coeff * &o.coeff, self.power + o.power)
    }

    /// Quotient of two monomials; `None` if the divisor is zero or the
    /// power would go negative.
    pub fn div(&self, o: &PiMonomial) -> Option<PiMonomial> {
        if o.coeff.is_zero() || o.power > self.power {
            return None;
        }
        Some(PiMonomial::new(&self.coeff / &o.coeff, self.power - o.power))
    }

    pub fn to_f64(&self) -> f64 {
        self.coeff.to_f64() * std::f64::consts::PI.powi(self.power as i32)
    }
}

impl fmt::Display for PiMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.coeff),
            1 => write!(f, "{} pi", self.coeff),
            p => write!(f, "{} pi^{}", self.coeff, p),
        }
    }
}

impl Serialize for PiMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PiMonomial", 3)?;
        st.serialize_field("num", &bigint_json(self.coeff.numer()))?;
        st.serialize_field("den", &bigint_json(self.coeff.denom()))?;
        st.serialize_field("pi_power", &self.power)?;
        st.end()
    }
}
