use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reflections of the square grid that preserve the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Symmetry {
    NegateP,
    NegateQ,
    Swap,
}

impl Symmetry {
    pub fn apply(self, (p, q): (i64, i64)) -> (i64, i64) {
        match self {
            Symmetry::NegateP => (-p, q),
            Symmetry::NegateQ => (p, -q),
            Symmetry::Swap => (q, p),
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetry::NegateP => "negate-p",
            Symmetry::NegateQ => "negate-q",
            Symmetry::Swap => "swap",
        })
    }
}

/// A primitive integer direction `(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Direction {
    pub p: i64,
    pub q: i64,
}

impl Direction {
    pub fn new(p: i64, q: i64) -> Result<Direction> {
        if (p, q) == (0, 0) {
            return Err(Error::InvalidInput("direction (0, 0)".into()));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidInput(format!(
                "direction ({p}, {q}) is not primitive"
            )));
        }
        Ok(Direction { p, q })
    }

    /// Divides out the gcd; the flag tells whether anything was divided.
    pub fn reduced(p: i64, q: i64) -> Result<(Direction, bool)> {
        if (p, q) == (0, 0) {
            return Err(Error::InvalidInput("direction (0, 0)".into()));
        }
        let g = p.gcd(&q);
        Ok((Direction { p: p / g, q: q / g }, g != 1))
    }

    /// The representative with `p > 0`, `0 <= q <= p`, and the reflections applied to
    /// reach it, in order.
    pub fn canonical(&self) -> (Direction, Vec<Symmetry>) {
        let mut word = Vec::new();
        let mut d = (self.p, self.q);
        if d.0 < 0 {
            word.push(Symmetry::NegateP);
            d = Symmetry::NegateP.apply(d);
        }
        if d.1 < 0 {
            word.push(Symmetry::NegateQ);
            d = Symmetry::NegateQ.apply(d);
        }
        if d.1 > d.0 {
            word.push(Symmetry::Swap);
            d = Symmetry::Swap.apply(d);
        }
        (Direction { p: d.0, q: d.1 }, word)
    }

    pub fn is_canonical(&self) -> bool {
        self.p > 0 && self.q >= 0 && self.p >= self.q
    }

    pub fn both_odd(&self) -> bool {
        self.p.rem_euclid(2) == 1 && self.q.rem_euclid(2) == 1
    }

    pub fn pair(&self) -> (i64, i64) {
        (self.p, self.q)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms() {
        let d = Direction::new(-3, 7).unwrap();
        let (c, w) = d.canonical();
        assert_eq!(c.pair(), (7, 3));
        assert_eq!(w, vec![Symmetry::NegateP, Symmetry::Swap]);
        assert_eq!(Direction::new(0, -1).unwrap().canonical().0.pair(), (1, 0));
        assert!(Direction::new(2, 4).is_err());
        assert_eq!(
            Direction::reduced(2, 4).unwrap(),
            (Direction { p: 1, q: 2 }, true)
        );
        assert_eq!(Direction::reduced(-6, 0).unwrap().0.pair(), (-1, 0));
    }

    #[test]
    fn canonical_is_idempotent() {
        for p in -9..=9 {
            for q in -9..=9 {
                if let Ok(d) = Direction::new(p, q) {
                    let (c, w) = d.canonical();
                    assert!(c.is_canonical());
                    assert_eq!(c.canonical(), (c, vec![]));
                    assert_eq!(w.iter().fold(d.pair(), |acc, s| s.apply(acc)), c.pair());
                }
            }
        }
    }
}
