//! Exact scalar abstraction.
//!
//! Tracing and decomposition are written against [`Exact`], which is
//! implemented for the rational types of `num-rational`. Floating point
//! types are deliberately not implemented: closure detection depends on
//! exact equality.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, ToPrimitive};

/// An exact ordered field element.
pub trait Exact: Clone + Ord + Hash + Debug + Display + Num + Signed + Send + Sync {
    fn from_int(v: i64) -> Self;
    fn ratio(n: i64, d: i64) -> Self;
    fn floor_i64(&self) -> i64;
    fn numer_string(&self) -> String;
    fn denom_string(&self) -> String;
    fn to_f64(&self) -> f64;

    /// Always `num/den`, even for integers.
    fn to_ratio_string(&self) -> String {
        format!("{}/{}", self.numer_string(), self.denom_string())
    }

    fn is_integer_value(&self) -> bool {
        self.denom_string() == "1"
    }
}

macro_rules! impl_exact_prim {
    ($t:ty) => {
        impl Exact for Ratio<$t> {
            fn from_int(v: i64) -> Self {
                Ratio::from_integer(v as $t)
            }
            fn ratio(n: i64, d: i64) -> Self {
                Ratio::new(n as $t, d as $t)
            }
            fn floor_i64(&self) -> i64 {
                self.floor().to_integer() as i64
            }
            fn numer_string(&self) -> String {
                self.numer().to_string()
            }
            fn denom_string(&self) -> String {
                self.denom().to_string()
            }
            fn to_f64(&self) -> f64 {
                *self.numer() as f64 / *self.denom() as f64
            }
        }
    };
}

impl_exact_prim!(i64);
impl_exact_prim!(i128);

impl Exact for Ratio<BigInt> {
    fn from_int(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
    fn ratio(n: i64, d: i64) -> Self {
        Ratio::new(BigInt::from(n), BigInt::from(d))
    }
    fn floor_i64(&self) -> i64 {
        self.floor()
            .to_integer()
            .to_i64()
            .expect("floor out of i64 range")
    }
    fn numer_string(&self) -> String {
        self.numer().to_string()
    }
    fn denom_string(&self) -> String {
        self.denom().to_string()
    }
    fn to_f64(&self) -> f64 {
        let (q, r) = self.numer().div_rem(self.denom());
        q.to_f64().unwrap_or(f64::NAN)
            + r.to_f64().unwrap_or(0.0) / self.denom().to_f64().unwrap_or(1.0)
    }
}

/// Sign of an exact value as -1, 0 or 1.
pub fn sign_of<T: Exact>(v: &T) -> i64 {
    if v.is_positive() {
        1
    } else if v.is_negative() {
        -1
    } else {
        0
    }
}
