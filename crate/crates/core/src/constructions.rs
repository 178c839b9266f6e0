//! Named families of systems and planar sets.
//!
//! Element orderings are fixed: planar sets are sorted lexicographically,
//! tuple-valued ground sets are listed in lexicographic order.

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::planar::{PlanarSet, Point};
use crate::system::System;

/// Default bound on the ground-set size of generated systems.
pub const DEFAULT_SIZE_CAP: usize = 10_000;

/// Zádori's semirigid triple `(ρ, σ, τ)` on `{0..n-1}`, for `n = 2k+1` with
/// `k ≥ 1` or `n = 2k+2` with `k ≥ 2`.
pub fn zadori(n: usize) -> Result<System> {
    let (rho, sigma, tau) = if n % 2 == 1 && n >= 3 {
        let k = (n - 1) / 2;
        let rho = vec![(0..k).collect(), (k..=2 * k).collect()];
        let sigma = (0..k).map(|i| vec![i, k + i]).chain([vec![2 * k]]);
        let tau = (0..k).map(|i| vec![i, k + 1 + i]).chain([vec![k]]);
        (rho, sigma.collect::<Vec<_>>(), tau.collect::<Vec<_>>())
    } else if n % 2 == 0 && n >= 6 {
        let k = (n - 2) / 2;
        let rho = vec![vec![0], (1..=k).collect(), (k + 1..=2 * k + 1).collect()];
        let mut sigma = vec![vec![0, 1, k + 1]];
        sigma.extend((2..=k).map(|i| vec![i, k + i]));
        sigma.push(vec![2 * k + 1]);
        let mut tau: Vec<Vec<usize>> = (1..k).map(|i| vec![i, k + 1 + i]).collect();
        tau.push(vec![0, k, 2 * k + 1]);
        tau.push(vec![k + 1]);
        (rho, sigma, tau)
    } else {
        return Err(Error::InvalidParameter(format!(
            "Zádori systems exist for odd n ≥ 3 and even n ≥ 6, not n = {n}"
        )));
    };
    System::new(
        n,
        vec![
            Partition::from_blocks(n, &rho)?,
            Partition::from_blocks(n, &sigma)?,
            Partition::from_blocks(n, &tau)?,
        ],
    )
}

/// `T_n = {(i,j) ∈ ℕ² : i+j ≤ n}`.
pub fn tn(n: i64) -> Result<PlanarSet> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("T_n needs n ≥ 1, got {n}")));
    }
    Ok(PlanarSet::new(
        (0..=n).flat_map(|i| (0..=n - i).map(move |j| Point::new(i, j))),
    ))
}

/// `T_{n,2}`: the points of `T_n` on the two outer anti-diagonals.
pub fn tn2(n: i64) -> Result<PlanarSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "T_{{n,2}} needs n ≥ 2, got {n}"
        )));
    }
    Ok(PlanarSet::new((n - 1..=n).flat_map(|s| {
        (0..=s).map(move |i| Point::new(i, s - i))
    })))
}

/// `T'_{n,2} = T_{n,2} ∪ {(0,0)}`.
pub fn tn2p(n: i64) -> Result<PlanarSet> {
    let mut pts: Vec<Point> = tn2(n)?.points().to_vec();
    pts.push(Point::new(0, 0));
    Ok(PlanarSet::new(pts))
}

/// The 8-point set that is not monogenic yet induces a semirigid system.
pub fn u_example() -> PlanarSet {
    PlanarSet::new(
        [(0, 0), (2, 0), (1, 1), (2, 1), (1, 2), (2, 2), (0, 3), (1, 3)]
            .into_iter()
            .map(|(x, y)| Point::new(x, y)),
    )
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Compositions of `n` into `parts` non-negative parts, lexicographic order.
pub fn compositions(parts: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(parts: usize, rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            prefix.push(rest);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for v in 0..=rest {
            prefix.push(v);
            rec(parts - 1, rest - v, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        rec(parts, n, &mut Vec::with_capacity(parts), &mut out);
    }
    out
}

/// `M(ℕ, I)` restricted to the tuples with coordinate sum `n`, `|I| = i_count`.
pub fn simplex_system(i_count: usize, n: usize) -> Result<System> {
    simplex_system_capped(i_count, n, DEFAULT_SIZE_CAP)
}

pub fn simplex_system_capped(i_count: usize, n: usize, cap: usize) -> Result<System> {
    if i_count < 3 {
        return Err(Error::InvalidParameter(format!(
            "simplex systems need at least 3 coordinates, got {i_count}"
        )));
    }
    if n < 1 {
        return Err(Error::InvalidParameter("simplex systems need n ≥ 1".into()));
    }
    let size = binomial((n + i_count - 1) as u128, (i_count - 1) as u128);
    if size > cap as u128 {
        return Err(Error::SizeCap {
            size,
            cap: cap as u128,
        });
    }
    Ok(from_tuples(i_count, &compositions(i_count, n)))
}

/// Relation `i` groups tuples with equal `i`-th coordinate.
fn from_tuples(width: usize, tuples: &[Vec<usize>]) -> System {
    let relations = (0..width)
        .map(|i| {
            let raw: Vec<usize> = tuples.iter().map(|t| t[i]).collect();
            Partition::from_labels(&raw)
        })
        .collect();
    System::new(tuples.len(), relations).expect("columns have equal length")
}

/// Relation `i` on `{0..k-1}` has the two classes `{i}` and its complement.
pub fn pierce_system(k: usize) -> Result<System> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "the Pierce system needs k ≥ 3, got {k}"
        )));
    }
    let relations = (0..k)
        .map(|i| {
            let raw: Vec<bool> = (0..k).map(|j| j == i).collect();
            Partition::from_labels(&raw)
        })
        .collect();
    System::new(k, relations)
}

/// The full product system `M(W, I)` on `W^I`, `|W| = w`, `|I| = i_count`.
pub fn product_system(w: usize, i_count: usize) -> Result<System> {
    product_system_capped(w, i_count, DEFAULT_SIZE_CAP)
}

pub fn product_system_capped(w: usize, i_count: usize, cap: usize) -> Result<System> {
    if w < 1 {
        return Err(Error::InvalidParameter("product systems need |W| ≥ 1".into()));
    }
    let size = (w as u128).checked_pow(i_count as u32).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeCap {
            size,
            cap: cap as u128,
        });
    }
    let mut tuples = vec![Vec::with_capacity(i_count)];
    for _ in 0..i_count {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..w).map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    Ok(from_tuples(i_count, &tuples))
}

/// Row `i` is element `i`; column `j` induces relation `j` by value equality.
pub fn from_matrix(rows: &[Vec<i64>]) -> Result<System> {
    let width = rows.first().map_or(0, Vec::len);
    if let Some(bad) = rows.iter().position(|r| r.len() != width) {
        return Err(Error::InvalidParameter(format!(
            "ragged matrix: row {bad} has {} entries, expected {width}",
            rows[bad].len()
        )));
    }
    let relations = (0..width)
        .map(|j| {
            let raw: Vec<i64> = rows.iter().map(|r| r[j]).collect();
            Partition::from_labels(&raw)
        })
        .collect();
    System::new(rows.len(), relations)
}

/// The label vectors as matrix columns.
pub fn to_matrix(m: &System) -> Vec<Vec<i64>> {
    (0..m.n())
        .map(|x| m.class_tuple(x).into_iter().map(|c| c as i64).collect())
        .collect()
}
