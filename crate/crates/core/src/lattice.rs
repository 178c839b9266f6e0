//! Meets and joins in the partition lattice, the M₃ test, generation of the
//! whole lattice, isomorphism, and the small-n census.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{all_partitions, Partition};
use crate::search::is_semirigid;
use crate::system::{SelfMap, System};

fn same_size(r: &Partition, t: &Partition) -> Result<()> {
    if r.len() == t.len() {
        Ok(())
    } else {
        Err(Error::SizeMismatch {
            left: r.len(),
            right: t.len(),
        })
    }
}

/// Common refinement.
pub fn meet(r: &Partition, t: &Partition) -> Result<Partition> {
    same_size(r, t)?;
    let pairs: Vec<(usize, usize)> = (0..r.len()).map(|x| (r.class_of(x), t.class_of(x))).collect();
    Ok(Partition::from_labels(&pairs))
}

/// Finest common coarsening.
pub fn join(r: &Partition, t: &Partition) -> Result<Partition> {
    same_size(r, t)?;
    let n = r.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for p in [r, t] {
        let mut first = vec![usize::MAX; p.class_count()];
        for x in 0..n {
            let c = p.class_of(x);
            if first[c] == usize::MAX {
                first[c] = x;
            } else {
                let (a, b) = (find(&mut parent, first[c]), find(&mut parent, x));
                parent[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    Ok(Partition::from_labels(&roots))
}

/// The three relations with equality and the full relation form a sublattice
/// isomorphic to M₃: every pairwise meet is equality, every pairwise join is
/// full.
pub fn is_m3(m: &System) -> Result<bool> {
    m.require_arity(3)?;
    for i in 0..3 {
        for j in i + 1..3 {
            let (a, b) = (m.relation(i), m.relation(j));
            if !meet(a, b)?.is_equality() || !join(a, b)?.is_full() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest ground set accepted by [`generates_eqv`].
pub const GENERATION_LIMIT: usize = 8;

/// Whether closing the relations of `m` under binary meet and join yields
/// every partition of the ground set.
pub fn generates_eqv(m: &System) -> Result<bool> {
    let n = m.n();
    if n > GENERATION_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "lattice generation is limited to n ≤ {GENERATION_LIMIT}, got {n}"
        )));
    }
    let target = all_partitions(n).len();
    let mut known: HashSet<Partition> = HashSet::new();
    let mut list: Vec<Partition> = Vec::new();
    for r in m.relations() {
        if known.insert(r.clone()) {
            list.push(r.clone());
        }
    }
    // every pair (i, j) with j < i is combined once i is reached
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            for q in [meet(&list[i], &list[j])?, join(&list[i], &list[j])?] {
                if known.insert(q.clone()) {
                    list.push(q);
                }
            }
        }
        if list.len() == target {
            return Ok(true);
        }
        i += 1;
    }
    Ok(list.len() == target)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isomorphism {
    /// Ground-set bijection from the first system onto the second.
    pub map: SelfMap,
    /// Relation `i` of the first system corresponds to relation
    /// `relation_perm[i]` of the second.
    pub relation_perm: Vec<usize>,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn sorted_sizes(p: &Partition) -> Vec<usize> {
    let mut s = p.class_sizes();
    s.sort_unstable();
    s
}

/// Finds a bijection `g` (and, when allowed, a relation permutation `π`) with
/// `x ρᵢ y ⇔ g(x) ρ'_{π(i)} g(y)`.
pub fn are_isomorphic(a: &System, b: &System, allow_relation_permutation: bool) -> Result<Option<Isomorphism>> {
    if a.arity() != b.arity() {
        return Err(Error::ArityMismatch {
            left: a.arity(),
            right: b.arity(),
        });
    }
    if a.n() != b.n() {
        return Ok(None);
    }
    let k = a.arity();
    let perms = if allow_relation_permutation {
        permutations(k)
    } else {
        vec![(0..k).collect()]
    };
    let a_sizes: Vec<Vec<usize>> = a.relations().iter().map(sorted_sizes).collect();
    let b_sizes: Vec<Vec<usize>> = b.relations().iter().map(sorted_sizes).collect();
    for perm in perms {
        if (0..k).any(|i| a_sizes[i] != b_sizes[perm[i]]) {
            continue;
        }
        let target = b.permute_relations(&perm)?;
        if let Some(map) = find_bijection(a, &target) {
            return Ok(Some(Isomorphism {
                map,
                relation_perm: perm,
            }));
        }
    }
    Ok(None)
}

fn find_bijection(a: &System, b: &System) -> Option<SelfMap> {
    struct St<'s> {
        a: &'s System,
        b: &'s System,
        a_sizes: Vec<Vec<usize>>,
        b_sizes: Vec<Vec<usize>>,
        fwd: Vec<Vec<usize>>,
        bwd: Vec<Vec<usize>>,
        image: Vec<usize>,
        used: Vec<bool>,
    }
    const NONE: usize = usize::MAX;
    impl St<'_> {
        fn fits(&self, x: usize, y: usize) -> bool {
            (0..self.a.arity()).all(|i| {
                let (c, d) = (self.a.relation(i).class_of(x), self.b.relation(i).class_of(y));
                self.a_sizes[i][c] == self.b_sizes[i][d]
                    && (self.fwd[i][c] == d || (self.fwd[i][c] == NONE && self.bwd[i][d] == NONE))
            })
        }
        fn rec(&mut self, x: usize) -> bool {
            if x == self.a.n() {
                return true;
            }
            for y in 0..self.b.n() {
                if self.used[y] || !self.fits(x, y) {
                    continue;
                }
                let mut fresh = Vec::new();
                for i in 0..self.a.arity() {
                    let (c, d) = (self.a.relation(i).class_of(x), self.b.relation(i).class_of(y));
                    if self.fwd[i][c] == NONE {
                        self.fwd[i][c] = d;
                        self.bwd[i][d] = c;
                        fresh.push((i, c, d));
                    }
                }
                self.used[y] = true;
                self.image[x] = y;
                if self.rec(x + 1) {
                    return true;
                }
                self.used[y] = false;
                for (i, c, d) in fresh {
                    self.fwd[i][c] = NONE;
                    self.bwd[i][d] = NONE;
                }
            }
            false
        }
    }
    let mut st = St {
        a,
        b,
        a_sizes: a.relations().iter().map(Partition::class_sizes).collect(),
        b_sizes: b.relations().iter().map(Partition::class_sizes).collect(),
        fwd: a.relations().iter().map(|r| vec![NONE; r.class_count()]).collect(),
        bwd: b.relations().iter().map(|r| vec![NONE; r.class_count()]).collect(),
        image: vec![NONE; a.n()],
        used: vec![false; b.n()],
    };
    st.rec(0).then(|| SelfMap::from_images(st.image))
}

/// Lexicographically least label matrix over all relabellings of the ground
/// set, and over all relation orders when `permute_relations` is set.
pub fn canonical_form(m: &System, permute_relations: bool) -> Vec<Vec<usize>> {
    let k = m.arity();
    let rel_perms = if permute_relations {
        permutations(k)
    } else {
        vec![(0..k).collect()]
    };
    let mut best: Option<Vec<Vec<usize>>> = None;
    for perm in permutations(m.n()) {
        let relabelled = m.relabel(&perm).expect("valid permutation");
        for rp in &rel_perms {
            let matrix: Vec<Vec<usize>> = rp
                .iter()
                .map(|&i| relabelled.relation(i).labels().to_vec())
                .collect();
            if best.as_ref().is_none_or(|b| matrix < *b) {
                best = Some(matrix);
            }
        }
    }
    best.unwrap_or_default()
}

/// Largest ground set accepted by [`census`].
pub const CENSUS_LIMIT: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusMode {
    /// Ordered triples of partitions.
    Ordered,
    /// Classes under ground-set permutations, and also relation permutations
    /// when `permute_relations` is set.
    UpToIso { permute_relations: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub n: usize,
    pub count: usize,
    /// Semirigid triples (canonical forms when counting up to isomorphism),
    /// sorted by label matrix.
    pub representatives: Vec<Vec<Vec<usize>>>,
}

/// Counts semirigid arity-3 systems on `n ≤ 5` points.
pub fn census(n: usize, mode: CensusMode) -> Result<Census> {
    if n > CENSUS_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "census is limited to n ≤ {CENSUS_LIMIT}, got {n}"
        )));
    }
    let parts = all_partitions(n);
    let found: Vec<Vec<Vec<usize>>> = (0..parts.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let parts = &parts;
            let mut local = Vec::new();
            for q in parts {
                for r in parts {
                    let m = System::new(n, vec![parts[i].clone(), q.clone(), r.clone()])
                        .expect("same size");
                    if is_semirigid(&m).semirigid {
                        local.push(match mode {
                            CensusMode::Ordered => m
                                .relations()
                                .iter()
                                .map(|p| p.labels().to_vec())
                                .collect(),
                            CensusMode::UpToIso { permute_relations } => {
                                canonical_form(&m, permute_relations)
                            }
                        });
                    }
                }
            }
            local
        })
        .collect();
    let representatives: Vec<Vec<Vec<usize>>> = match mode {
        CensusMode::Ordered => {
            let mut v = found;
            v.sort();
            v
        }
        CensusMode::UpToIso { .. } => found.into_iter().collect::<BTreeSet<_>>().into_iter().collect(),
    };
    Ok(Census {
        n,
        count: representatives.len(),
        representatives,
    })
}
