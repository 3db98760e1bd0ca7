use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::word::{Gen, GroupWord};
use crate::error::{Error, Result};

/// `[c₀; c₁, c₂, …]` given by a head `c₀`, finitely many further coefficients and an
/// optional period repeated forever after them. In Fourey form the stored numbers are
/// the `aᵢ` and the coefficients are `cᵢ = 4aᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub a0: i64,
    pub tail: Vec<i64>,
    pub period: Vec<i64>,
    pub fourey: bool,
}

impl ContinuedFraction {
    pub fn new(a0: i64, tail: Vec<i64>) -> Result<ContinuedFraction> {
        Self::build(a0, tail, vec![], false)
    }

    pub fn fourey(a0: i64, tail: Vec<i64>) -> Result<ContinuedFraction> {
        Self::build(a0, tail, vec![], true)
    }

    /// Infinite, eventually periodic: `tail` followed by `period` repeated.
    pub fn eventually_periodic(
        a0: i64,
        tail: Vec<i64>,
        period: Vec<i64>,
        fourey: bool,
    ) -> Result<ContinuedFraction> {
        if period.is_empty() {
            return Err(Error::InvalidInput("empty period".into()));
        }
        Self::build(a0, tail, period, fourey)
    }

    fn build(a0: i64, tail: Vec<i64>, period: Vec<i64>, fourey: bool) -> Result<ContinuedFraction> {
        if tail.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::InvalidInput(
                "continued fraction coefficients after the first must be nonzero".into(),
            ));
        }
        Ok(ContinuedFraction {
            a0,
            tail,
            period,
            fourey,
        })
    }

    pub fn is_finite(&self) -> bool {
        self.period.is_empty()
    }

    /// Number of coefficients after `c₀`, if finite.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.tail.len())
    }

    /// The stored number at position `i` (`a₀` for `i = 0`).
    pub fn stored(&self, i: usize) -> Option<i64> {
        if i == 0 {
            return Some(self.a0);
        }
        let j = i - 1;
        if j < self.tail.len() {
            Some(self.tail[j])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(j - self.tail.len()) % self.period.len()])
        }
    }

    /// The coefficient `cᵢ`.
    pub fn coeff(&self, i: usize) -> Option<i64> {
        self.stored(i).map(|a| if self.fourey { 4 * a } else { a })
    }

    /// Exact value of a finite fraction.
    pub fn value(&self) -> Option<BigRational> {
        let n = self.len()?;
        let (p, q) = convergents(self, n).ok()?.pop()?;
        Some(BigRational::new(p, q))
    }
}

/// `(pₙ, qₙ)` for `n = 0..=depth`, checking `pₙ₋₁qₙ − pₙqₙ₋₁ = (−1)ⁿ` at every step.
pub fn convergents(cf: &ContinuedFraction, depth: usize) -> Result<Vec<(BigInt, BigInt)>> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(depth + 1);
    let (mut p1, mut q1) = (
        BigInt::from(cf.a0 * if cf.fourey { 4 } else { 1 }),
        BigInt::one(),
    );
    out.push((p1.clone(), q1.clone()));
    for n in 1..=depth {
        let a = BigInt::from(cf.coeff(n).ok_or_else(|| {
            Error::InvalidInput(format!("depth {depth} exceeds the available coefficients"))
        })?);
        let p2 = &a * &p1 + &p0;
        let q2 = &a * &q1 + &q0;
        let flip = &p1 * &q2 - &p2 * &q1;
        let expect = if n % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        if flip != expect {
            return Err(Error::Inconsistent(format!(
                "flip-flop identity fails at n = {n}"
            )));
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        out.push((p1.clone(), q1.clone()));
    }
    Ok(out)
}

/// `Θ A^{−a₀} Θ A^{a₁} Θ A^{−a₂} ⋯ Θ A^{(−1)^{n+1} aₙ} Θ`; its first column is
/// `±(qₙ, pₙ)` for `pₙ/qₙ = [4a₀; 4a₁, …, 4aₙ]`.
pub fn fourey_word(coeffs: &[i64]) -> Result<GroupWord> {
    if coeffs.is_empty() {
        return Err(Error::InvalidInput("no coefficients".into()));
    }
    if coeffs[1..].contains(&0) {
        return Err(Error::InvalidInput(
            "Fourey coefficients after the first must be nonzero".into(),
        ));
    }
    let mut w = GroupWord::gen(Gen::Theta);
    for (i, &a) in coeffs.iter().enumerate() {
        let sign = if i % 2 == 0 { -1 } else { 1 };
        w.push(Gen::A, sign * a);
        w.push(Gen::Theta, 1);
    }
    Ok(w)
}

/// Direction `(qₙ, pₙ)` of slope `[4a₀; 4a₁, …, 4aₙ]`, normalised to `qₙ > 0`.
pub fn fourey_direction(coeffs: &[i64]) -> Result<(BigInt, BigInt)> {
    let cf = ContinuedFraction::fourey(coeffs[0], coeffs[1..].to_vec())?;
    let (p, q) = convergents(&cf, coeffs.len() - 1)?
        .pop()
        .expect("depth 0 at least");
    Ok(if q.is_negative() { (-q, -p) } else { (q, p) })
}

/// `(B⁻¹AΘ)ⁿ B⁻¹AΘA⁻¹B (B⁻¹AΘ)⁻ⁿ`, whose first column is
/// `(18n²+36n+18, 18n²+30n+13)`.
pub fn density_word(n: i64) -> GroupWord {
    let x: GroupWord = GroupWord::new([(Gen::B, -1), (Gen::A, 1), (Gen::Theta, 1)]);
    let core = GroupWord::new([
        (Gen::B, -1),
        (Gen::A, 1),
        (Gen::Theta, 1),
        (Gen::A, -1),
        (Gen::B, 1),
    ]);
    core.conjugate_by(&x.pow(n))
}

/// The density family direction for `n`.
pub fn density_direction(n: i64) -> (i64, i64) {
    (18 * n * n + 36 * n + 18, 18 * n * n + 30 * n + 13)
}

/// Whether every convergent of `ξ = [0; 4a₁, 4a₂, …]` satisfies
/// `|qₙξ − pₙ| < 1/(2√(4k²−1)·qₙ)` for `n ≤ depth`, with all `|aᵢ| ≥ k`. `ξ` is enclosed
/// rigorously: after `depth + 40` coefficients the complete quotient has absolute
/// value at least `4k − 1`.
pub fn hurwitz_check(tail: &[i64], k: i64, depth: usize) -> Result<bool> {
    if k < 1 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let n_trunc = depth + 40;
    if tail.len() < n_trunc {
        return Err(Error::InvalidInput(format!(
            "need {n_trunc} coefficients, got {}",
            tail.len()
        )));
    }
    if tail.iter().any(|a| a.abs() < k) {
        return Err(Error::InvalidInput(format!(
            "every |a_i| must be at least {k}"
        )));
    }
    let cf = ContinuedFraction::fourey(0, tail[..n_trunc].to_vec())?;
    let conv = convergents(&cf, n_trunc)?;
    let (pn, qn) = &conv[n_trunc];
    let (pm, qm) = &conv[n_trunc - 1];
    let r = BigRational::from_integer(BigInt::from(4 * k - 1));
    let at = |t: &BigRational| {
        (t * BigRational::from_integer(pn.clone()) + BigRational::from_integer(pm.clone()))
            / (t * BigRational::from_integer(qn.clone()) + BigRational::from_integer(qm.clone()))
    };
    // ξ = f(t) for the tail t with |t| ≥ 4k − 1; f is monotone on that set through ∞
    let (e1, e2) = (at(&r), at(&-r.clone()));
    let c = BigRational::from_integer(BigInt::from(4 * (4 * k * k - 1)));
    for (p, q) in conv.iter().take(depth + 1) {
        let (p, q) = (
            BigRational::from_integer(p.clone()),
            BigRational::from_integer(q.clone()),
        );
        // |q x − p|·|q| is convex in x, so the worst case is at an end of the enclosure
        let worst = [&e1, &e2]
            .into_iter()
            .map(|x| ((&q * x - &p) * &q).abs())
            .max()
            .expect("two ends");
        if &c * &worst * &worst >= BigRational::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Recurrence {
    PeriodicSlope,
    RecurrentFromConePoints,
    RecurrentAll,
    Inconclusive,
}

/// Decides the hypotheses of the periodic/recurrent family theorem for a Fourey
/// fraction given by its stored `aᵢ`.
pub fn recurrence_classify(cf: &ContinuedFraction) -> Recurrence {
    if cf.is_finite() {
        return Recurrence::PeriodicSlope;
    }
    let per = &cf.period;
    let liminf = *per.iter().min().expect("nonempty period");
    let limsup = *per.iter().max().expect("nonempty period");
    let liminf_abs = per.iter().map(|a| a.abs()).min().expect("nonempty period");
    let products: Vec<i64> = (0..per.len())
        .map(|i| per[i] * per[(i + 1) % per.len()])
        .collect();
    let limit = products
        .iter()
        .all(|&x| x == products[0])
        .then_some(products[0]);
    let all = (liminf > 0 && limsup > 1) || (liminf_abs > 1 && limit != Some(-4));
    if all {
        Recurrence::RecurrentAll
    } else if limit != Some(-1) {
        Recurrence::RecurrentFromConePoints
    } else {
        Recurrence::Inconclusive
    }
}
