//! The twist operation along a family of cylinders and its length law.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A slope `q/p`, or vertical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Slope {
    Finite(BigRational),
    Infinite,
}

impl Slope {
    pub fn of_direction(p: i64, q: i64) -> Slope {
        if p == 0 {
            Slope::Infinite
        } else {
            Slope::Finite(BigRational::new(q.into(), p.into()))
        }
    }

    /// Primitive direction `(p, q)` with `p >= 0` realising the slope.
    pub fn direction(&self) -> (BigInt, BigInt) {
        match self {
            Slope::Infinite => (BigInt::zero(), BigInt::one()),
            Slope::Finite(s) => (s.denom().clone(), s.numer().clone()),
        }
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slope::Infinite => write!(f, "inf"),
            Slope::Finite(s) => write!(f, "{}/{}", s.numer(), s.denom()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistAxis {
    Vertical,
    Horizontal,
}

/// Slope after `k` twists along the vertical (`s -> 4k + s`) or horizontal
/// (`s -> 1/(4k + 1/s)`) cylinders.
pub fn twist_slope(s: &Slope, axis: TwistAxis, k: i64) -> Result<Slope> {
    let four_k = BigRational::from_integer(BigInt::from(4 * k));
    match (axis, s) {
        (TwistAxis::Vertical, Slope::Infinite) => Err(Error::InvalidInput(
            "slope is parallel to the vertical twist axis".into(),
        )),
        (TwistAxis::Vertical, Slope::Finite(x)) => Ok(Slope::Finite(four_k + x)),
        (TwistAxis::Horizontal, Slope::Finite(x)) if x.is_zero() => Err(Error::InvalidInput(
            "slope is parallel to the horizontal twist axis".into(),
        )),
        (TwistAxis::Horizontal, Slope::Infinite) => {
            if k == 0 {
                Ok(Slope::Infinite)
            } else {
                Ok(Slope::Finite(four_k.recip()))
            }
        }
        (TwistAxis::Horizontal, Slope::Finite(x)) => {
            let d = four_k + x.recip();
            if d.is_zero() {
                Ok(Slope::Infinite)
            } else {
                Ok(Slope::Finite(d.recip()))
            }
        }
    }
}

/// `coeff·√radicand` with a nonnegative integer radicand.
#[derive(Debug, Clone)]
pub struct Surd {
    pub coeff: BigRational,
    pub radicand: BigInt,
}

impl Surd {
    pub fn rational(r: BigRational) -> Surd {
        Surd {
            coeff: r,
            radicand: BigInt::one(),
        }
    }

    /// `coeff·√(r)` for a nonnegative rational `r`, normalised to an integer radicand.
    pub fn new(coeff: BigRational, r: BigRational) -> Surd {
        assert!(!r.is_negative(), "negative radicand");
        let (n, d) = (r.numer().clone(), r.denom().clone());
        // √(n/d) = √(n·d) / d
        Surd {
            coeff: coeff / BigRational::from_integer(d.clone()),
            radicand: n * d,
        }
        .simplified()
    }

    /// Pulls square factors out of the radicand.
    pub fn simplified(mut self) -> Surd {
        if self.radicand.is_zero() || self.coeff.is_zero() {
            return Surd::rational(BigRational::zero());
        }
        let mut f = BigInt::from(2);
        let limit = BigInt::from(100_000);
        while &f * &f <= self.radicand && f < limit {
            let f2 = &f * &f;
            while (&self.radicand % &f2).is_zero() {
                self.radicand /= &f2;
                self.coeff *= BigRational::from_integer(f.clone());
            }
            f += 1;
        }
        let r = self.radicand.sqrt();
        if &r * &r == self.radicand {
            self.coeff *= BigRational::from_integer(r);
            self.radicand = BigInt::one();
        }
        self
    }

    /// The exact square, `coeff²·radicand`.
    pub fn square(&self) -> BigRational {
        &self.coeff * &self.coeff * BigRational::from_integer(self.radicand.clone())
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.coeff.to_f64().unwrap_or(f64::NAN) * self.radicand.to_f64().unwrap_or(f64::NAN).sqrt()
    }

    pub fn is_negative(&self) -> bool {
        self.coeff.is_negative()
    }
}

impl PartialEq for Surd {
    fn eq(&self, other: &Surd) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Surd {}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Surd {
    fn cmp(&self, other: &Surd) -> Ordering {
        let (a, b) = (self.coeff.signum(), other.coeff.signum());
        if a != b {
            return a.cmp(&b);
        }
        let c = self.square().cmp(&other.square());
        if a.is_negative() {
            c.reverse()
        } else {
            c
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*sqrt({})", self.coeff, self.radicand)
        }
    }
}

/// Periodic trajectory (or cylinder) data in a primitive direction: length is
/// `multiplier·|dir|`, width (when given) is `width_num/|dir|`.
#[derive(Debug, Clone)]
pub struct DirectionalData {
    pub dir: (i64, i64),
    pub multiplier: BigRational,
    pub width_num: BigRational,
}

/// Exact length of `T_V^k(O)`:
/// `sinθ·(len O / wid V)·√(wid V² + (k·len V + cotθ·wid V)²)`.
///
/// With `c = |O×V|`, `d = O·V` and `N = |V|²` this is
/// `(c·m_O/(w·N))·√(N·(w² + (k·m_V·N + d·w/c)²))`.
pub fn twist_length_prediction(o: &DirectionalData, v: &DirectionalData, k: i64) -> Result<Surd> {
    let (op, oq) = o.dir;
    let (vp, vq) = v.dir;
    let c = (op * vq - oq * vp).abs();
    if c == 0 {
        return Err(Error::InvalidInput("directions are not transverse".into()));
    }
    if k == 0 {
        return Ok(Surd::new(
            o.multiplier.clone(),
            BigRational::from_integer(BigInt::from(op * op + oq * oq)),
        ));
    }
    let d = op * vp + oq * vq;
    let n = BigRational::from_integer(BigInt::from(vp * vp + vq * vq));
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    let w = &v.width_num;
    let inner = q(k) * &v.multiplier * &n + q(d) * w / q(c);
    let radicand = &n * (w * w + &inner * &inner);
    let coeff = q(c) * &o.multiplier / (w * &n);
    Ok(Surd::new(coeff, radicand))
}

/// Leading asymptotic term `k·sinθ·(len V/wid V)·len O`, as a surd.
pub fn twist_length_asymptote(o: &DirectionalData, v: &DirectionalData, k: i64) -> Result<Surd> {
    let (op, oq) = o.dir;
    let (vp, vq) = v.dir;
    let c = (op * vq - oq * vp).abs();
    if c == 0 {
        return Err(Error::InvalidInput("directions are not transverse".into()));
    }
    let q = |x: i64| BigRational::from_integer(BigInt::from(x));
    // sinθ = c/(|O||V|), lenV/widV = m_V·|V|²/w, lenO = m_O·|O|
    let coeff = q(k) * q(c) * &v.multiplier * &o.multiplier / &v.width_num;
    Ok(Surd::new(coeff, q(vp * vp + vq * vq)))
}
