use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::Mat2;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Gen {
    Theta,
    A,
    B,
}

impl Gen {
    pub const ALL: [Gen; 3] = [Gen::Theta, Gen::A, Gen::B];

    pub fn matrix<T>(self) -> Mat2<T>
    where
        T: Clone + Zero + One + Signed + PartialOrd + From<i64>,
    {
        let m = |a: i64, b: i64, c: i64, d: i64| Mat2::new(a.into(), b.into(), c.into(), d.into());
        match self {
            Gen::Theta => m(0, -1, 1, 0),
            Gen::A => m(1, 4, 0, 1),
            Gen::B => m(5, -8, 2, -3),
        }
    }

    /// Action on `H₁(Y)` in the basis `{σ, η}`, up to sign.
    pub fn rho<T>(self) -> Mat2<T>
    where
        T: Clone + Zero + One + Signed + PartialOrd + From<i64>,
    {
        let m = |a: i64, b: i64, c: i64, d: i64| Mat2::new(a.into(), b.into(), c.into(), d.into());
        match self {
            Gen::Theta => Mat2::identity(),
            Gen::A => m(1, 1, 0, 1),
            Gen::B => m(3, -1, 4, -1),
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Gen::Theta => "T",
            Gen::A => "A",
            Gen::B => "B",
        }
    }
}

/// A word in `Θ, A, B` with integer exponents, kept freely reduced.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct GroupWord {
    letters: Vec<(Gen, i64)>,
}

impl GroupWord {
    pub fn empty() -> GroupWord {
        GroupWord::default()
    }

    pub fn new(letters: impl IntoIterator<Item = (Gen, i64)>) -> GroupWord {
        let mut w = GroupWord::empty();
        for (g, e) in letters {
            w.push(g, e);
        }
        w
    }

    pub fn gen(g: Gen) -> GroupWord {
        GroupWord::new([(g, 1)])
    }

    pub fn letters(&self) -> &[(Gen, i64)] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    pub fn push(&mut self, g: Gen, e: i64) {
        if e == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some((h, f)) if *h == g => {
                *f += e;
                if *f == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push((g, e)),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &(g, e) in &other.letters {
            w.push(g, e);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::new(self.letters.iter().rev().map(|&(g, e)| (g, -e)))
    }

    pub fn pow(&self, n: i64) -> GroupWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(GroupWord::empty(), |acc, _| acc.concat(&base))
    }

    /// `x w x⁻¹`.
    pub fn conjugate_by(&self, x: &GroupWord) -> GroupWord {
        x.concat(self).concat(&x.inverse())
    }

    pub fn eval<T>(&self) -> Mat2<T>
    where
        T: Clone + Zero + One + Signed + PartialOrd + From<i64>,
    {
        self.letters.iter().fold(Mat2::identity(), |acc, &(g, e)| {
            &acc * &g.matrix::<T>().pow(e)
        })
    }

    /// Image under `ρ`; meaningful up to sign.
    pub fn rho<T>(&self) -> Mat2<T>
    where
        T: Clone + Zero + One + Signed + PartialOrd + From<i64>,
    {
        self.letters
            .iter()
            .fold(Mat2::identity(), |acc, &(g, e)| &acc * &g.rho::<T>().pow(e))
    }

    /// Membership in `Γ`: `ρ(w)` is `±[[1, n], [0, 1]]`.
    pub fn is_in_gamma(&self) -> bool {
        self.rho::<num_bigint::BigInt>()
            .is_upper_unipotent_mod_sign()
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&(g, e)| {
                if e == 1 {
                    g.symbol().to_string()
                } else {
                    format!("{}^{}", g.symbol(), e)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for GroupWord {
    type Err = Error;

    /// Whitespace-separated letters `T`, `Θ`, `A`, `B`, each optionally `^n`; `1` is the
    /// empty word.
    fn from_str(s: &str) -> Result<GroupWord> {
        let mut w = GroupWord::empty();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let (sym, exp) = match tok.split_once('^') {
                Some((a, b)) => {
                    let e = b
                        .parse::<i64>()
                        .map_err(|_| Error::InvalidInput(format!("bad exponent in {tok:?}")))?;
                    (a, e)
                }
                None => (tok, 1),
            };
            let g = match sym {
                "T" | "Θ" | "Theta" => Gen::Theta,
                "A" => Gen::A,
                "B" => Gen::B,
                _ => return Err(Error::InvalidInput(format!("unknown letter {sym:?}"))),
            };
            w.push(g, exp);
        }
        Ok(w)
    }
}
