use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::matrix::Mat2;
use super::word::{Gen, GroupWord};
use crate::error::{Error, Result};

type M = Mat2<i64>;

struct Node {
    m: M,
    parent: usize,
    step: (Gen, i64),
    depth: usize,
}

/// Breadth-first exploration of `⟨Θ, A, B⟩` by right multiplication, with states
/// identified up to sign and branches cut once an entry exceeds `cap`.
pub struct WordSearch {
    nodes: Vec<Node>,
    index: HashMap<M, usize>,
    by_column: HashMap<(i64, i64), Vec<usize>>,
    pub cap: i64,
    /// Deepest level reached.
    pub depth: usize,
    /// True when the capped state space was exhausted (rather than the depth limit hit).
    pub complete: bool,
}

fn column_key(m: &M) -> (i64, i64) {
    let (a, c) = m.first_column();
    if a < 0 || (a == 0 && c < 0) {
        (-a, -c)
    } else {
        (a, c)
    }
}

impl WordSearch {
    pub fn explore(cap: i64, max_depth: usize) -> WordSearch {
        Self::run(cap, max_depth, |_, _| false)
    }

    fn run(
        cap: i64,
        max_depth: usize,
        mut stop: impl FnMut(&WordSearch, usize) -> bool,
    ) -> WordSearch {
        let id = M::identity();
        let mut s = WordSearch {
            nodes: vec![Node {
                m: id.clone(),
                parent: 0,
                step: (Gen::Theta, 0),
                depth: 0,
            }],
            index: HashMap::from([(id.clone(), 0)]),
            by_column: HashMap::from([(column_key(&id), vec![0])]),
            cap,
            depth: 0,
            complete: false,
        };
        if stop(&s, 0) {
            return s;
        }
        let moves: Vec<(Gen, i64, M)> = Gen::ALL
            .iter()
            .flat_map(|&g| [(g, 1), (g, -1)])
            .map(|(g, e)| (g, e, g.matrix::<i64>().pow(e)))
            .collect();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let depth = s.nodes[i].depth;
            if depth >= max_depth {
                return s;
            }
            for (g, e, mv) in &moves {
                let next = (&s.nodes[i].m * mv).mod_sign();
                if next.max_abs() > cap || s.index.contains_key(&next) {
                    continue;
                }
                let j = s.nodes.len();
                s.index.insert(next.clone(), j);
                s.by_column.entry(column_key(&next)).or_default().push(j);
                s.nodes.push(Node {
                    m: next.clone(),
                    parent: i,
                    step: (*g, *e),
                    depth: depth + 1,
                });
                s.depth = s.depth.max(depth + 1);
                if stop(&s, j) {
                    return s;
                }
                queue.push_back(j);
            }
        }
        s.complete = true;
        s
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn word(&self, mut i: usize) -> GroupWord {
        let mut steps = Vec::new();
        while i != 0 {
            steps.push(self.nodes[i].step);
            i = self.nodes[i].parent;
        }
        GroupWord::new(steps.into_iter().rev())
    }

    /// Words reached whose matrix has first column `±(p, q)`.
    pub fn words_with_first_column(&self, p: i64, q: i64) -> Vec<GroupWord> {
        self.by_column
            .get(&column_key(&Mat2::new(p, 0, q, 0)))
            .map(|ids| ids.iter().map(|&i| self.word(i)).collect())
            .unwrap_or_default()
    }

    /// A reached word in `Γ` with first column `±(p, q)`.
    pub fn witness(&self, p: i64, q: i64) -> Option<GroupWord> {
        self.words_with_first_column(p, q)
            .into_iter()
            .find(|w| w.is_in_gamma())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub word: String,
    pub matrix: Mat2<i64>,
    pub rho: Mat2<String>,
    pub depth: usize,
}

impl WitnessReport {
    pub fn new(w: &GroupWord) -> WitnessReport {
        WitnessReport {
            word: w.to_string(),
            matrix: w.eval::<i64>(),
            rho: w
                .rho::<num_bigint::BigInt>()
                .mod_sign()
                .map(|x| x.to_string()),
            depth: w.length() as usize,
        }
    }
}

/// Default entry cap for [`find_witness`]: `16·max(|p|, |q|)`.
pub fn witness_cap(p: i64, q: i64) -> i64 {
    16 * p.abs().max(q.abs()).max(1)
}

/// A word `N` in `Γ` with `N·(1, 0) = ±(p, q)`, searched breadth first up to `max_depth`
/// letters with entries capped at [`witness_cap`].
pub fn find_witness(p: i64, q: i64, max_depth: usize) -> Result<GroupWord> {
    crate::mucube3d::check_primitive(p, q)?;
    let key = column_key(&Mat2::new(p, 0, q, 0));
    let search = WordSearch::run(witness_cap(p, q), max_depth, |s, j| {
        column_key(&s.nodes[j].m) == key && s.word(j).is_in_gamma()
    });
    search
        .witness(p, q)
        .ok_or(Error::NotFoundWithinDepth(search.depth))
}
