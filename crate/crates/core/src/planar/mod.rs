//! Three-direction systems on finite sets of integer points.
//!
//! A point `u = (x, y)` has three projections: `p₀(u) = x + y`, `p₁(u) = x`,
//! `p₂(u) = y`. Relation `i` of an induced system is the kernel of `pᵢ`, so the
//! relation order is always (sum, x, y).

mod embed;
mod homothety;

pub use embed::{embed_search, Embedding};
pub use homothety::{fit_homothety, Homothety};

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::system::System;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[i64; 2]", into = "[i64; 2]")]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    /// Projection `p_dir`: 0 is `x + y`, 1 is `x`, 2 is `y`.
    #[inline]
    pub fn projection(self, dir: usize) -> i64 {
        match dir {
            0 => self.x + self.y,
            1 => self.x,
            2 => self.y,
            _ => panic!("direction index {dir} out of range"),
        }
    }

    #[inline]
    pub fn same_line(self, other: Point, dir: usize) -> bool {
        self.projection(dir) == other.projection(dir)
    }
}

impl From<[i64; 2]> for Point {
    fn from([x, y]: [i64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [i64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A finite set of integer points, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlanarSet {
    points: Vec<Point>,
}

impl PlanarSet {
    pub fn new(points: impl IntoIterator<Item = Point>) -> Self {
        let mut points: Vec<Point> = points.into_iter().collect();
        points.sort_unstable();
        points.dedup();
        PlanarSet { points }
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn contains(&self, p: Point) -> bool {
        self.points.binary_search(&p).is_ok()
    }

    #[inline]
    pub fn index_of(&self, p: Point) -> Option<usize> {
        self.points.binary_search(&p).ok()
    }

    fn indices_of(&self, x: &[Point]) -> Result<Vec<usize>> {
        x.iter()
            .map(|&p| {
                self.index_of(p)
                    .ok_or_else(|| Error::NotSubset(format!("{p} is not a member")))
            })
            .collect()
    }
}

impl FromIterator<Point> for PlanarSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PlanarSet::new(iter)
    }
}

/// The system induced on `c`: element `k` is `c.points()[k]`, relations are
/// the kernels of (sum, x, y).
pub fn induced_system(c: &PlanarSet) -> Result<System> {
    if c.is_empty() {
        return Err(Error::Empty("point set"));
    }
    let relations = (0..3)
        .map(|dir| {
            let raw: Vec<i64> = c.points().iter().map(|p| p.projection(dir)).collect();
            Partition::from_labels(&raw)
        })
        .collect();
    System::new(c.len(), relations)
}

/// `u0 ≃₂ u1`, `u1 ≃₀ u2` and `u2 ≃₁ u0`; points may repeat.
pub fn is_triangle(u0: Point, u1: Point, u2: Point) -> bool {
    u0.same_line(u1, 2) && u1.same_line(u2, 0) && u2.same_line(u0, 1)
}

/// True iff some ordering of the three points is a triangle.
pub fn forms_triangle(a: Point, b: Point, c: Point) -> bool {
    is_triangle(a, b, c)
        || is_triangle(a, c, b)
        || is_triangle(b, a, c)
        || is_triangle(b, c, a)
        || is_triangle(c, a, b)
        || is_triangle(c, b, a)
}

/// Third vertices of the triangles having `p` and `q` as two vertices.
///
/// Distinct points sharing a line have exactly two completions: the third
/// vertex meets `p` on one of the remaining directions and `q` on the other.
/// Points on no common line have none; `p == q` forces the degenerate triangle.
pub fn triangle_completions(p: Point, q: Point) -> Vec<Point> {
    if p == q {
        return vec![p];
    }
    // (x from one, sum from the other) etc., solved per shared direction
    if p.y == q.y {
        vec![
            Point::new(p.x, q.x + q.y - p.x),
            Point::new(q.x, p.x + p.y - q.x),
        ]
    } else if p.x == q.x {
        vec![
            Point::new(q.x + q.y - p.y, p.y),
            Point::new(p.x + p.y - q.y, q.y),
        ]
    } else if p.x + p.y == q.x + q.y {
        vec![Point::new(p.x, q.y), Point::new(q.x, p.y)]
    } else {
        Vec::new()
    }
}

/// Membership flags for a closure computed over the indices of `c`.
fn closure_flags(c: &PlanarSet, seed: &[usize]) -> Vec<bool> {
    let pts = c.points();
    let mut inside = vec![false; pts.len()];
    let mut members = Vec::with_capacity(pts.len());
    let mut queue = Vec::new();
    for &i in seed {
        if !inside[i] {
            inside[i] = true;
            queue.push(i);
        }
    }
    while let Some(i) = queue.pop() {
        members.push(i);
        for &j in &members {
            for r in triangle_completions(pts[i], pts[j]) {
                if let Some(k) = c.index_of(r) {
                    if !inside[k] {
                        inside[k] = true;
                        queue.push(k);
                    }
                }
            }
        }
    }
    inside
}

fn collect_flags(c: &PlanarSet, flags: &[bool]) -> Vec<Point> {
    c.points()
        .iter()
        .zip(flags)
        .filter_map(|(&p, &f)| f.then_some(p))
        .collect()
}

/// One completion round: `x` together with every point of `c` completing a
/// triangle over two points of `x`. Output is sorted.
pub fn delta_step(c: &PlanarSet, x: &[Point]) -> Result<Vec<Point>> {
    let idx = c.indices_of(x)?;
    let pts = c.points();
    let mut inside = vec![false; pts.len()];
    for &i in &idx {
        inside[i] = true;
    }
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            for r in triangle_completions(pts[i], pts[j]) {
                if let Some(k) = c.index_of(r) {
                    inside[k] = true;
                }
            }
        }
    }
    Ok(collect_flags(c, &inside))
}

/// The least `c`-closed superset of `x`.
pub fn closure(c: &PlanarSet, x: &[Point]) -> Result<Vec<Point>> {
    let idx = c.indices_of(x)?;
    Ok(collect_flags(c, &closure_flags(c, &idx)))
}

/// `base + dℤ × dℤ`; `d = 0` is the single point `base`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupEnvelope {
    pub base: Point,
    pub d: u64,
}

impl GroupEnvelope {
    pub fn contains(&self, u: Point) -> bool {
        let diff = u - self.base;
        if self.d == 0 {
            diff == Point::new(0, 0)
        } else {
            let d = self.d as i64;
            diff.x.rem_euclid(d) == 0 && diff.y.rem_euclid(d) == 0
        }
    }
}

/// gcd of all x- and y-coordinate differences within `x`, based at the
/// lexicographic minimum.
pub fn group_envelope(x: &[Point]) -> Result<GroupEnvelope> {
    let base = *x.iter().min().ok_or(Error::Empty("point set"))?;
    let d = x.iter().fold(0i64, |g, &p| {
        let diff = p - base;
        g.gcd(&diff.x).gcd(&diff.y)
    });
    Ok(GroupEnvelope {
        base,
        d: d.unsigned_abs(),
    })
}

/// A subset of at most two points generating `c`, if one exists. Pairs that
/// do not contain `c` in their group envelope are skipped without computing
/// the closure.
pub fn is_monogenic(c: &PlanarSet) -> Option<Vec<Point>> {
    let pts = c.points();
    if pts.len() <= 2 {
        return Some(pts.to_vec());
    }
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let pair = [pts[i], pts[j]];
            let env = group_envelope(&pair).expect("pair is non-empty");
            if !pts.iter().all(|&p| env.contains(p)) {
                continue;
            }
            if closure_flags(c, &[i, j]).iter().all(|&f| f) {
                return Some(pair.to_vec());
            }
        }
    }
    None
}

/// The doubled center `s = 2α` of a point symmetry `u ↦ s − u` of `c`.
pub fn symmetry_center(c: &PlanarSet) -> Result<Option<Point>> {
    let pts = c.points();
    let u0 = *pts.first().ok_or(Error::Empty("point set"))?;
    for &v in pts {
        let s = u0 + v;
        if pts.iter().all(|&u| c.contains(s - u)) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Certificate {
    /// Monogenic and without a center of symmetry, so the induced system is
    /// semirigid.
    CertifiedSemirigid { generators: Vec<Point> },
    Inconclusive { reason: InconclusiveReason },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InconclusiveReason {
    NotMonogenic,
    /// Doubled center of symmetry.
    SymmetryCenter { doubled_center: Point },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::CertifiedSemirigid { .. })
    }
}

/// Sufficient test for semirigidity of the induced system: monogenic and no
/// center of symmetry. The converse fails, so a negative answer is only
/// inconclusive.
pub fn maintheo_certificate(c: &PlanarSet) -> Result<Certificate> {
    if let Some(s) = symmetry_center(c)? {
        return Ok(Certificate::Inconclusive {
            reason: InconclusiveReason::SymmetryCenter { doubled_center: s },
        });
    }
    Ok(match is_monogenic(c) {
        Some(generators) => Certificate::CertifiedSemirigid { generators },
        None => Certificate::Inconclusive {
            reason: InconclusiveReason::NotMonogenic,
        },
    })
}

/// Translate the lexicographic minimum to the origin and divide by the
/// envelope gcd. All three kernels are preserved.
pub fn normalize(c: &PlanarSet) -> PlanarSet {
    let Ok(env) = group_envelope(c.points()) else {
        return PlanarSet::default();
    };
    let d = env.d.max(1) as i64;
    c.points()
        .iter()
        .map(|&p| {
            let q = p - env.base;
            Point::new(q.x / d, q.y / d)
        })
        .collect()
}
