//! Systems of equivalence relations, self-maps and the elementary predicates.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

/// A ground set `{0..n-1}` with an ordered family of equivalence relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct System {
    n: usize,
    relations: Vec<Partition>,
}

impl System {
    pub fn new(n: usize, relations: Vec<Partition>) -> Result<Self> {
        for r in &relations {
            if r.len() != n {
                return Err(Error::SizeMismatch {
                    left: n,
                    right: r.len(),
                });
            }
        }
        Ok(System { n, relations })
    }

    /// Builds a system from raw label vectors (normalized on the way in).
    pub fn from_label_vectors(n: usize, labels: &[Vec<usize>]) -> Result<Self> {
        System::new(n, labels.iter().map(|l| Partition::from_labels(l)).collect())
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.relations.len()
    }

    #[inline]
    pub fn relations(&self) -> &[Partition] {
        &self.relations
    }

    #[inline]
    pub fn relation(&self, i: usize) -> &Partition {
        &self.relations[i]
    }

    pub fn require_arity(&self, expected: usize) -> Result<()> {
        if self.arity() == expected {
            Ok(())
        } else {
            Err(Error::WrongArity {
                expected,
                found: self.arity(),
            })
        }
    }

    /// The class tuple of `x`: its label in every relation.
    pub fn class_tuple(&self, x: usize) -> Vec<usize> {
        self.relations.iter().map(|r| r.class_of(x)).collect()
    }

    /// Same ground set, relations reordered so that output relation `i` is
    /// input relation `order[i]`.
    pub fn permute_relations(&self, order: &[usize]) -> Result<System> {
        let mut seen = vec![false; self.arity()];
        if order.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: order.len(),
            });
        }
        for &i in order {
            if i >= self.arity() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(format!(
                    "{order:?} is not a permutation of the relation indices"
                )));
            }
        }
        Ok(System {
            n: self.n,
            relations: order.iter().map(|&i| self.relations[i].clone()).collect(),
        })
    }

    /// Image of the system under a relabelling of the ground set: element `x`
    /// of `self` becomes element `perm[x]` of the result.
    pub fn relabel(&self, perm: &[usize]) -> Result<System> {
        check_permutation(perm, self.n)?;
        let mut inverse = vec![0; self.n];
        for (x, &y) in perm.iter().enumerate() {
            inverse[y] = x;
        }
        let relations = self
            .relations
            .iter()
            .map(|r| {
                let raw: Vec<usize> = inverse.iter().map(|&x| r.class_of(x)).collect();
                Partition::from_labels(&raw)
            })
            .collect();
        Ok(System {
            n: self.n,
            relations,
        })
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: perm.len(),
        });
    }
    let mut seen = vec![false; n];
    for &y in perm {
        if y >= n {
            return Err(Error::OutOfRange { element: y, n });
        }
        if std::mem::replace(&mut seen[y], true) {
            return Err(Error::Duplicate(y));
        }
    }
    Ok(())
}

/// A total map from `{0..n-1}` into `{0..codomain-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SelfMap {
    images: Vec<usize>,
}

impl SelfMap {
    pub fn new(images: Vec<usize>, codomain: usize) -> Result<Self> {
        if let Some(&bad) = images.iter().find(|&&y| y >= codomain) {
            return Err(Error::OutOfRange {
                element: bad,
                n: codomain,
            });
        }
        Ok(SelfMap { images })
    }

    /// Wraps images without range checking; callers guarantee the bound.
    pub(crate) fn from_images(images: Vec<usize>) -> Self {
        SelfMap { images }
    }

    pub fn identity(n: usize) -> Self {
        SelfMap {
            images: (0..n).collect(),
        }
    }

    pub fn constant(n: usize, value: usize) -> Self {
        SelfMap {
            images: vec![value; n],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    #[inline]
    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn is_constant(&self) -> bool {
        self.images.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.images.len());
        self.images.iter().all(|y| seen.insert(*y))
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &SelfMap) -> Result<SelfMap> {
        if let Some(&bad) = inner.images.iter().find(|&&y| y >= self.len()) {
            return Err(Error::OutOfRange {
                element: bad,
                n: self.len(),
            });
        }
        Ok(SelfMap {
            images: inner.images.iter().map(|&y| self.images[y]).collect(),
        })
    }
}

/// True iff `f` sends every pair equivalent under `src.relations[i]` to a
/// pair equivalent under `dst.relations[i]`, for every `i`.
pub fn is_homomorphism(f: &SelfMap, src: &System, dst: &System) -> Result<bool> {
    if src.arity() != dst.arity() {
        return Err(Error::ArityMismatch {
            left: src.arity(),
            right: dst.arity(),
        });
    }
    if f.len() != src.n() {
        return Err(Error::SizeMismatch {
            left: src.n(),
            right: f.len(),
        });
    }
    if let Some(&bad) = f.images().iter().find(|&&y| y >= dst.n()) {
        return Err(Error::OutOfRange {
            element: bad,
            n: dst.n(),
        });
    }
    // f preserves relation i iff it induces a well-defined map on classes.
    for (rs, rd) in src.relations().iter().zip(dst.relations()) {
        let mut induced = vec![usize::MAX; rs.class_count()];
        for x in 0..src.n() {
            let c = rs.class_of(x);
            let d = rd.class_of(f.apply(x));
            if induced[c] == usize::MAX {
                induced[c] = d;
            } else if induced[c] != d {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A pair of distinct elements that no relation separates, if any.
pub fn unseparated_pair(m: &System) -> Option<(usize, usize)> {
    let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(m.n());
    for x in 0..m.n() {
        if let Some(&y) = seen.get(&m.class_tuple(x)) {
            return Some((y, x));
        }
        seen.insert(m.class_tuple(x), x);
    }
    None
}

/// The intersection of all relations is the equality relation.
pub fn is_reduced(m: &System) -> bool {
    unseparated_pair(m).is_none()
}

/// The system induced on `subset`; element `j` of the result is `subset[j]`.
pub fn restrict(m: &System, subset: &[usize]) -> Result<System> {
    let mut seen = vec![false; m.n()];
    for &x in subset {
        if x >= m.n() {
            return Err(Error::OutOfRange {
                element: x,
                n: m.n(),
            });
        }
        if std::mem::replace(&mut seen[x], true) {
            return Err(Error::Duplicate(x));
        }
    }
    let relations = m
        .relations()
        .iter()
        .map(|r| {
            let raw: Vec<usize> = subset.iter().map(|&x| r.class_of(x)).collect();
            Partition::from_labels(&raw)
        })
        .collect();
    System::new(subset.len(), relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::zadori;
    use proptest::prelude::*;

    fn all_equality(n: usize) -> System {
        System::new(n, vec![Partition::equality(n); 3]).unwrap()
    }

    fn all_maps(n: usize) -> impl Iterator<Item = SelfMap> {
        let total = n.pow(n as u32);
        (0..total).map(move |mut code| {
            let mut images = vec![0; n];
            for slot in images.iter_mut() {
                *slot = code % n;
                code /= n;
            }
            SelfMap::from_images(images)
        })
    }

    #[test]
    fn identity_and_constants_are_homomorphisms() {
        let m = zadori(5).unwrap();
        assert!(is_homomorphism(&SelfMap::identity(5), &m, &m).unwrap());
        for c in 0..5 {
            assert!(is_homomorphism(&SelfMap::constant(5, c), &m, &m).unwrap());
        }
    }

    #[test]
    fn equality_preserved_by_every_map() {
        let m = all_equality(3);
        let swap = SelfMap::new(vec![1, 0, 2], 3).unwrap();
        assert!(is_homomorphism(&swap, &m, &m).unwrap());
        assert_eq!(
            all_maps(3)
                .filter(|f| is_homomorphism(f, &m, &m).unwrap())
                .count(),
            27
        );
    }

    #[test]
    fn homomorphism_errors() {
        let m = zadori(5).unwrap();
        let two = System::new(5, m.relations()[..2].to_vec()).unwrap();
        assert!(matches!(
            is_homomorphism(&SelfMap::identity(5), &m, &two),
            Err(Error::ArityMismatch { .. })
        ));
        let f = SelfMap::from_images(vec![0, 1, 2, 3, 9]);
        assert!(matches!(
            is_homomorphism(&f, &m, &m),
            Err(Error::OutOfRange { element: 9, .. })
        ));
    }

    #[test]
    fn reducedness() {
        assert!(is_reduced(&zadori(5).unwrap()));
        let full = System::new(2, vec![Partition::full(2)]).unwrap();
        assert!(!is_reduced(&full));
        assert_eq!(unseparated_pair(&full), Some((0, 1)));
        let one = System::new(1, vec![Partition::full(1); 3]).unwrap();
        assert!(is_reduced(&one));
    }

    #[test]
    fn restriction() {
        let m = zadori(5).unwrap();
        assert_eq!(restrict(&m, &[0, 1, 2, 3, 4]).unwrap(), m);
        let pair = restrict(&m, &[0, 1]).unwrap();
        assert_eq!(pair.relation(0).blocks(), vec![vec![0, 1]]);
        assert_eq!(pair.relation(1).blocks(), vec![vec![0], vec![1]]);
        assert_eq!(pair.relation(2).blocks(), vec![vec![0], vec![1]]);
        let single = restrict(&m, &[3]).unwrap();
        assert_eq!(single, System::new(1, vec![Partition::full(1); 3]).unwrap());
        assert_eq!(restrict(&m, &[1, 1]), Err(Error::Duplicate(1)));
        assert!(matches!(
            restrict(&m, &[5]),
            Err(Error::OutOfRange { element: 5, .. })
        ));
    }

    #[test]
    fn relabel_and_permute() {
        let m = zadori(5).unwrap();
        let p = m.permute_relations(&[2, 0, 1]).unwrap();
        assert_eq!(p.relation(0), m.relation(2));
        assert!(m.permute_relations(&[0, 0, 1]).is_err());
        let r = m.relabel(&[4, 3, 2, 1, 0]).unwrap();
        let rev = SelfMap::new(vec![4, 3, 2, 1, 0], 5).unwrap();
        assert!(is_homomorphism(&rev, &m, &r).unwrap());
        let back = SelfMap::new(vec![4, 3, 2, 1, 0], 5).unwrap();
        assert!(is_homomorphism(&back, &r, &m).unwrap());
    }

    fn arb_system(max_n: usize) -> impl Strategy<Value = System> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(0..n, n), 3)
                .prop_map(move |ls| System::from_label_vectors(n, &ls).unwrap())
        })
    }

    proptest! {
        #[test]
        fn endomorphisms_closed_under_composition(m in arb_system(4)) {
            let endos: Vec<SelfMap> = all_maps(m.n())
                .filter(|f| is_homomorphism(f, &m, &m).unwrap())
                .collect();
            for f in &endos {
                for g in &endos {
                    let fg = f.compose(g).unwrap();
                    prop_assert!(is_homomorphism(&fg, &m, &m).unwrap());
                }
            }
        }
    }
}
