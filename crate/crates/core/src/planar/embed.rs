//! Bounded search for an embedding of an arity-3 system into the
//! three-direction system of the integer grid.

use serde::Serialize;

use super::Point;
use crate::error::Result;
use crate::system::System;

/// `points[k]` is the image of element `k`; relation `i` of the source is
/// realized by direction `directions[i]` (0 = sum, 1 = x, 2 = y).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Embedding {
    pub points: Vec<Point>,
    pub directions: [usize; 3],
}

const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Looks for an injective placement of the elements of `m` in
/// `[0, grid) × [0, grid)` whose induced kernels are exactly the relations of
/// `m`. With `fixed_order` the relations must map to (sum, x, y) in order;
/// otherwise all six assignments are tried. `None` means no embedding exists
/// within the bound.
pub fn embed_search(m: &System, grid: usize, fixed_order: bool) -> Result<Option<Embedding>> {
    m.require_arity(3)?;
    // Distinct lines meet in at most one point, so every pair of relations
    // must be orthogonal.
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (m.relation(i), m.relation(j));
            let mut seen = std::collections::HashSet::new();
            if !(0..m.n()).all(|x| seen.insert((a.class_of(x), b.class_of(x)))) {
                return Ok(None);
            }
        }
    }
    let perms: &[[usize; 3]] = if fixed_order {
        &PERMUTATIONS[..1]
    } else {
        &PERMUTATIONS
    };
    for &directions in perms {
        let mut by_dir: [Vec<usize>; 3] = Default::default();
        let mut counts = [0usize; 3];
        for (i, &d) in directions.iter().enumerate() {
            by_dir[d] = m.relation(i).labels().to_vec();
            counts[d] = m.relation(i).class_count();
        }
        let mut search = LineSearch::new(by_dir, counts, grid as i64);
        if search.solve() {
            let points = (0..m.n())
                .map(|e| {
                    Point::new(
                        search.values[1][search.classes[1][e]].unwrap(),
                        search.values[2][search.classes[2][e]].unwrap(),
                    )
                })
                .collect();
            return Ok(Some(Embedding { points, directions }));
        }
    }
    Ok(None)
}

/// Assigns a line (a value of the projection) to every class of every
/// direction, injectively per direction, so that `x + y = sum` holds for each
/// element.
struct LineSearch {
    classes: [Vec<usize>; 3],
    values: [Vec<Option<i64>>; 3],
    used: [Vec<bool>; 3],
    done: Vec<bool>,
    grid: i64,
}

impl LineSearch {
    fn new(classes: [Vec<usize>; 3], counts: [usize; 3], grid: i64) -> Self {
        let n = classes[0].len();
        let width = |d: usize| if d == 0 { (2 * grid - 1).max(0) } else { grid } as usize;
        LineSearch {
            values: [0, 1, 2].map(|d| vec![None; counts[d]]),
            used: [0, 1, 2].map(|d| vec![false; width(d)]),
            classes,
            done: vec![false; n],
            grid,
        }
    }

    fn range(&self, dir: usize) -> i64 {
        if dir == 0 {
            2 * self.grid - 1
        } else {
            self.grid
        }
    }

    fn known(&self, e: usize) -> [Option<i64>; 3] {
        [0, 1, 2].map(|d| self.values[d][self.classes[d][e]])
    }

    fn set(&mut self, dir: usize, e: usize, v: i64) {
        self.values[dir][self.classes[dir][e]] = Some(v);
        self.used[dir][v as usize] = true;
    }

    fn unset(&mut self, dir: usize, e: usize, v: i64) {
        self.values[dir][self.classes[dir][e]] = None;
        self.used[dir][v as usize] = false;
    }

    fn solve(&mut self) -> bool {
        // most-determined pending element first
        let Some(e) = (0..self.done.len())
            .filter(|&e| !self.done[e])
            .max_by_key(|&e| {
                let k = self.known(e).iter().filter(|v| v.is_some()).count();
                (k, std::cmp::Reverse(e))
            })
        else {
            return true;
        };
        match self.known(e) {
            [Some(s), Some(x), Some(y)] => {
                if x + y != s {
                    return false;
                }
                self.done[e] = true;
                let ok = self.solve();
                self.done[e] = false;
                ok
            }
            known if known.iter().filter(|v| v.is_some()).count() == 2 => {
                let dir = known.iter().position(Option::is_none).unwrap();
                let v = match known {
                    [None, Some(x), Some(y)] => x + y,
                    [Some(s), None, Some(y)] => s - y,
                    [Some(s), Some(x), None] => s - x,
                    _ => unreachable!(),
                };
                if v < 0 || v >= self.range(dir) || self.used[dir][v as usize] {
                    return false;
                }
                self.set(dir, e, v);
                self.done[e] = true;
                let ok = self.solve();
                self.done[e] = false;
                if !ok {
                    self.unset(dir, e, v);
                }
                ok
            }
            known => {
                // branch on x, then y
                let dir = if known[1].is_none() { 1 } else { 2 };
                for v in 0..self.range(dir) {
                    if self.used[dir][v as usize] {
                        continue;
                    }
                    self.set(dir, e, v);
                    if self.solve() {
                        return true;
                    }
                    self.unset(dir, e, v);
                }
                false
            }
        }
    }
}
