//! Systems of equivalence relations seen as ultrametric spaces whose distance
//! between two points is the set of relations separating them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::{SelfMap, System};

/// An ultrametric over a chain, with distance values encoded as ranks
/// (`0` is distance zero; only the order of ranks matters).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ChainUltrametricRaw")]
pub struct ChainUltrametric {
    n: usize,
    rank: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
struct ChainUltrametricRaw {
    n: usize,
    rank: Vec<Vec<u64>>,
}

impl TryFrom<ChainUltrametricRaw> for ChainUltrametric {
    type Error = Error;
    fn try_from(raw: ChainUltrametricRaw) -> Result<Self> {
        ChainUltrametric::new(raw.n, raw.rank)
    }
}

impl ChainUltrametric {
    pub fn new(n: usize, rank: Vec<Vec<u64>>) -> Result<Self> {
        if rank.len() != n || rank.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidUltrametric(format!("rank matrix is not {n}×{n}")));
        }
        for x in 0..n {
            if rank[x][x] != 0 {
                return Err(Error::InvalidUltrametric(format!("rank[{x}][{x}] is not 0")));
            }
            for y in 0..n {
                if rank[x][y] != rank[y][x] {
                    return Err(Error::InvalidUltrametric(format!("not symmetric at ({x},{y})")));
                }
                if x != y && rank[x][y] == 0 {
                    return Err(Error::InvalidUltrametric(format!(
                        "distinct points {x} and {y} at distance zero"
                    )));
                }
                for z in 0..n {
                    if rank[x][y] > rank[x][z].max(rank[z][y]) {
                        return Err(Error::InvalidUltrametric(format!(
                            "ultrametric inequality fails for ({x},{y}) through {z}"
                        )));
                    }
                }
            }
        }
        Ok(ChainUltrametric { n, rank })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rank(&self, x: usize, y: usize) -> u64 {
        self.rank[x][y]
    }

    pub fn ranks(&self) -> &[Vec<u64>] {
        &self.rank
    }

    /// Closed ball `{z : d(x, z) ≤ r}`.
    pub fn ball(&self, x: usize, r: u64) -> Vec<usize> {
        (0..self.n).filter(|&z| self.rank[x][z] <= r).collect()
    }

    /// `d(f x, f y) ≤ d(x, y)` for every pair.
    pub fn is_nonexpansive(&self, f: &SelfMap) -> bool {
        f.len() == self.n
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| self.rank[f.apply(x)][f.apply(y)] <= self.rank[x][y])
            })
    }
}

/// Indices of the relations that separate `x` and `y`, ascending.
pub fn set_distance(m: &System, x: usize, y: usize) -> Result<Vec<usize>> {
    for e in [x, y] {
        if e >= m.n() {
            return Err(Error::OutOfRange { element: e, n: m.n() });
        }
    }
    Ok((0..m.arity())
        .filter(|&i| !m.relation(i).same(x, y))
        .collect())
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.binary_search(i).is_ok())
}

/// `d'(f x, f y) ⊆ d(x, y)` for all pairs.
pub fn is_nonexpansive(f: &SelfMap, m: &System, m2: &System) -> Result<bool> {
    if m.arity() != m2.arity() {
        return Err(Error::ArityMismatch {
            left: m.arity(),
            right: m2.arity(),
        });
    }
    if f.len() != m.n() {
        return Err(Error::SizeMismatch { left: m.n(), right: f.len() });
    }
    if let Some(&bad) = f.images().iter().find(|&&y| y >= m2.n()) {
        return Err(Error::OutOfRange { element: bad, n: m2.n() });
    }
    for x in 0..m.n() {
        for y in x + 1..m.n() {
            let d = set_distance(m, x, y)?;
            let d2 = set_distance(m2, f.apply(x), f.apply(y))?;
            if !is_subset(&d2, &d) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A non-expansive self-map that is neither the identity nor constant.
///
/// With a single nonzero distance every permutation is non-expansive and the
/// transposition of points 0 and 1 is returned. Otherwise the closed ball of
/// the smallest nonzero radius `r = d(x, y)` around `x` is collapsed to `x`;
/// that ball is proper because some distance exceeds `r`.
pub fn proper_nonexpansive_map(s: &ChainUltrametric) -> Result<SelfMap> {
    let n = s.n();
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "a proper non-expansive map needs at least 2 points, got {n}"
        )));
    }
    let mut best: Option<(u64, usize)> = None;
    let mut uniform = true;
    for x in 0..n {
        for y in x + 1..n {
            let r = s.rank(x, y);
            match best {
                None => best = Some((r, x)),
                Some((b, _)) => {
                    if r != b {
                        uniform = false;
                    }
                    if r < b {
                        best = Some((r, x));
                    }
                }
            }
        }
    }
    if uniform {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(0, 1);
        return Ok(SelfMap::from_images(images));
    }
    let (r, x) = best.expect("n ≥ 2");
    let mut images: Vec<usize> = (0..n).collect();
    for z in s.ball(x, r) {
        images[z] = x;
    }
    Ok(SelfMap::from_images(images))
}
