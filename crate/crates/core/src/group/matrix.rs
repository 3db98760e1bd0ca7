use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// `[[a, b], [c, d]]` over an integer type.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Mat2<T>
where
    T: Clone + Zero + One + Signed + PartialOrd,
{
    pub fn new(a: T, b: T, c: T, d: T) -> Mat2<T> {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Mat2<T> {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Mat2<T> {
        debug_assert!(self.det().is_one());
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn neg(&self) -> Mat2<T> {
        Mat2::new(
            -self.a.clone(),
            -self.b.clone(),
            -self.c.clone(),
            -self.d.clone(),
        )
    }

    pub fn pow(&self, n: i64) -> Mat2<T> {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Mat2::identity(), |acc, _| &acc * &base)
    }

    pub fn apply(&self, (x, y): (T, T)) -> (T, T) {
        (
            self.a.clone() * x.clone() + self.b.clone() * y.clone(),
            self.c.clone() * x + self.d.clone() * y,
        )
    }

    pub fn first_column(&self) -> (T, T) {
        (self.a.clone(), self.c.clone())
    }

    /// Representative of `±self` whose first nonzero entry is positive.
    pub fn mod_sign(&self) -> Mat2<T> {
        let lead = [&self.a, &self.b, &self.c, &self.d]
            .into_iter()
            .find(|x| !x.is_zero())
            .cloned()
            .unwrap_or_else(T::zero);
        if lead.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn eq_mod_sign(&self, other: &Mat2<T>) -> bool {
        self == other || *self == other.neg()
    }

    pub fn is_pm_identity(&self) -> bool {
        self.eq_mod_sign(&Mat2::identity())
    }

    /// `±[[1, n], [0, 1]]`.
    pub fn is_upper_unipotent_mod_sign(&self) -> bool {
        self.c.is_zero() && self.a.abs().is_one() && self.a == self.d
    }

    pub fn max_abs(&self) -> T {
        let mut m = self.a.abs();
        for x in [&self.b, &self.c, &self.d] {
            if x.abs() > m {
                m = x.abs();
            }
        }
        m
    }

    pub fn map<U, F: Fn(&T) -> U>(&self, f: F) -> Mat2<U> {
        Mat2 {
            a: f(&self.a),
            b: f(&self.b),
            c: f(&self.c),
            d: f(&self.d),
        }
    }
}

impl<T> Mul for &Mat2<T>
where
    T: Clone + Zero + One + Signed + PartialOrd,
{
    type Output = Mat2<T>;

    fn mul(self, o: &Mat2<T>) -> Mat2<T> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        Mat2::new(
            a.clone() * o.a.clone() + b.clone() * o.c.clone(),
            a.clone() * o.b.clone() + b.clone() * o.d.clone(),
            c.clone() * o.a.clone() + d.clone() * o.c.clone(),
            c.clone() * o.b.clone() + d.clone() * o.d.clone(),
        )
    }
}

impl<T> Mul for Mat2<T>
where
    T: Clone + Zero + One + Signed + PartialOrd,
{
    type Output = Mat2<T>;

    fn mul(self, o: Mat2<T>) -> Mat2<T> {
        &self * &o
    }
}

impl<T: fmt::Display> fmt::Display for Mat2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}
