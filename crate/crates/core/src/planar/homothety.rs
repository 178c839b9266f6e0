use std::fmt;

use num_rational::Ratio;

use super::{PlanarSet, Point};
use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// `u ↦ λu + α` with exact rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Homothety {
    pub lambda: Rational,
    pub alpha: (Rational, Rational),
}

impl Homothety {
    pub fn apply(&self, u: Point) -> (Rational, Rational) {
        (
            self.lambda * Rational::from_integer(u.x) + self.alpha.0,
            self.lambda * Rational::from_integer(u.y) + self.alpha.1,
        )
    }

    fn maps_to(&self, u: Point, v: Point) -> bool {
        self.apply(u) == (Rational::from_integer(v.x), Rational::from_integer(v.y))
    }
}

impl fmt::Display for Homothety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "u ↦ {}·u + ({}, {})",
            self.lambda, self.alpha.0, self.alpha.1
        )
    }
}

/// Finds `(λ, α)` with `images[k] = λ·c[k] + α` for every point of `c`.
///
/// `images` is aligned with `c.points()`. A constant map fits with `λ = 0`.
pub fn fit_homothety(c: &PlanarSet, images: &[Point]) -> Result<Option<Homothety>> {
    let pts = c.points();
    if images.len() != pts.len() {
        return Err(Error::SizeMismatch {
            left: pts.len(),
            right: images.len(),
        });
    }
    let Some(&first) = images.first() else {
        return Ok(None);
    };
    if images.iter().all(|&v| v == first) {
        return Ok(Some(Homothety {
            lambda: Rational::from_integer(0),
            alpha: (
                Rational::from_integer(first.x),
                Rational::from_integer(first.y),
            ),
        }));
    }
    // Two distinct source points pin λ down; every other point must agree.
    let (u0, v0) = (pts[0], images[0]);
    let (u1, v1) = (pts[1], images[1]);
    let du = u1 - u0;
    let dv = v1 - v0;
    let lambda = if du.x != 0 {
        Rational::new(dv.x, du.x)
    } else {
        Rational::new(dv.y, du.y)
    };
    let alpha = (
        Rational::from_integer(v0.x) - lambda * Rational::from_integer(u0.x),
        Rational::from_integer(v0.y) - lambda * Rational::from_integer(u0.y),
    );
    let h = Homothety { lambda, alpha };
    Ok(pts
        .iter()
        .zip(images)
        .all(|(&u, &v)| h.maps_to(u, v))
        .then_some(h))
}
