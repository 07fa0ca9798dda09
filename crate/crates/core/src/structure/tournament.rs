use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::algebra::SkewMatrix;
use crate::error::{Error, Result};

/// Largest order accepted by [`tournaments_isomorphic`].
pub const ISOMORPHISM_CAP: usize = 8;

/// A complete orientation of the index set: `beats(k, i)` iff there is an
/// edge `k → i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tournament {
    dim: usize,
    beats: Vec<Vec<bool>>,
}

impl Tournament {
    pub fn new(beats: Vec<Vec<bool>>) -> Result<Self> {
        let dim = beats.len();
        if let Some(row) = beats.iter().position(|r| r.len() != dim) {
            return Err(Error::Shape(format!(
                "row {} of the adjacency is not length {dim}",
                row + 1
            )));
        }
        for k in 0..dim {
            if beats[k][k] {
                return Err(Error::Shape(format!("loop at vertex {}", k + 1)));
            }
            for i in (k + 1)..dim {
                if beats[k][i] == beats[i][k] {
                    return Err(Error::Shape(format!(
                        "vertices {} and {} need exactly one edge",
                        k + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(Self { dim, beats })
    }

    /// Edge `k → i` whenever `a_{ki} < 0`, and `i → k` otherwise.
    ///
    /// Undefined when some off-diagonal entry is zero; all such pairs are
    /// reported.
    pub fn from_skew(skew: &SkewMatrix) -> Result<Self> {
        let dim = skew.dim();
        let zeros: Vec<(usize, usize)> = (0..dim)
            .flat_map(|k| ((k + 1)..dim).map(move |i| (k, i)))
            .filter(|&(k, i)| skew.entry(k, i).is_zero())
            .collect();
        if !zeros.is_empty() {
            return Err(Error::ZeroEntry { pairs: zeros });
        }
        let beats = (0..dim)
            .map(|k| {
                (0..dim)
                    .map(|i| k != i && skew.entry(k, i).is_negative())
                    .collect()
            })
            .collect();
        Ok(Self { dim, beats })
    }

    /// The transitive tournament where the larger index wins, `m → … → 1`.
    pub fn transitive(dim: usize) -> Self {
        let beats = (0..dim)
            .map(|k| (0..dim).map(|i| k > i).collect())
            .collect();
        Self { dim, beats }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn beats(&self, k: usize, i: usize) -> bool {
        self.beats[k][i]
    }

    pub fn adjacency(&self) -> &[Vec<bool>] {
        &self.beats
    }

    /// Out-degree of every vertex.
    pub fn scores(&self) -> Vec<usize> {
        self.beats
            .iter()
            .map(|row| row.iter().filter(|&&b| b).count())
            .collect()
    }

    /// A directed 3-cycle `(a, b, c)` with `a → b → c → a`, starting at its
    /// smallest vertex; the first in lexicographic order of vertex sets.
    pub fn cyclic_triple(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if self.beats[i][j] && self.beats[j][k] && self.beats[k][i] {
                        return Some((i, j, k));
                    }
                    if self.beats[i][k] && self.beats[k][j] && self.beats[j][i] {
                        return Some((i, k, j));
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self) -> bool {
        self.cyclic_triple().is_none()
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut beats = vec![vec![false; self.dim]; self.dim];
        for k in 0..self.dim {
            for i in 0..self.dim {
                beats[perm[k]][perm[i]] = self.beats[k][i];
            }
        }
        Self {
            dim: self.dim,
            beats,
        }
    }
}

/// A permutation `π` with `first.beats(u, v) == second.beats(π[u], π[v])`,
/// if one exists.
///
/// Backtracking over vertex assignments, pruned by score (out-degree).
pub fn tournaments_isomorphic(
    first: &Tournament,
    second: &Tournament,
) -> Result<Option<Vec<usize>>> {
    if first.dim != second.dim {
        return Err(Error::Shape(format!(
            "tournaments of order {} and {}",
            first.dim, second.dim
        )));
    }
    if first.dim > ISOMORPHISM_CAP {
        return Err(Error::Capacity {
            what: "tournament order",
            requested: first.dim,
            cap: ISOMORPHISM_CAP,
        });
    }
    let scores_first = first.scores();
    let scores_second = second.scores();
    let mut sorted_first = scores_first.clone();
    let mut sorted_second = scores_second.clone();
    sorted_first.sort_unstable();
    sorted_second.sort_unstable();
    if sorted_first != sorted_second {
        return Ok(None);
    }

    let mut search = Search {
        first,
        second,
        scores_first: &scores_first,
        scores_second: &scores_second,
        perm: Vec::with_capacity(first.dim),
        used: vec![false; first.dim],
    };
    Ok(search.extend().then_some(search.perm))
}

struct Search<'a> {
    first: &'a Tournament,
    second: &'a Tournament,
    scores_first: &'a [usize],
    scores_second: &'a [usize],
    perm: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self) -> bool {
        let u = self.perm.len();
        if u == self.first.dim {
            return true;
        }
        for image in 0..self.first.dim {
            if self.used[image] || self.scores_first[u] != self.scores_second[image] {
                continue;
            }
            let consistent = self
                .perm
                .iter()
                .enumerate()
                .all(|(v, &pv)| self.first.beats[u][v] == self.second.beats[image][pv]);
            if !consistent {
                continue;
            }
            self.perm.push(image);
            self.used[image] = true;
            if self.extend() {
                return true;
            }
            self.used[image] = false;
            self.perm.pop();
        }
        false
    }
}
