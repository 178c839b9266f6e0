//! Endomorphism enumeration and the semirigidity decision.
//!
//! A self-map preserves relation `i` exactly when it induces a map `aᵢ` on the
//! classes of relation `i`. The search assigns images element by element and
//! grows these class maps alongside; an assignment that would give some `aᵢ`
//! two values is pruned. Once the classes of an element are constrained in
//! several relations its candidate images shrink to the elements lying in all
//! the forced classes. In a pairwise orthogonal system two constrained
//! coordinates already leave at most one candidate, which is the triangle
//! determinacy property.

use std::collections::HashMap;
use std::ops::ControlFlow;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::system::{unseparated_pair, SelfMap, System};

/// Default bound on the number of endomorphisms collected.
pub const DEFAULT_ENDO_CAP: usize = 1_000_000;

const UNSET: usize = usize::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EndoCount {
    Exact(usize),
    /// The search stopped early; at least this many endomorphisms exist.
    AtLeast(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EndoReport {
    pub semirigid: bool,
    pub endo_count: EndoCount,
    /// Lexicographically smallest endomorphism that is neither the identity
    /// nor constant; present iff `semirigid` is false.
    pub witness: Option<SelfMap>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphisms {
    /// Sorted lexicographically by image vector.
    pub maps: Vec<SelfMap>,
    /// The cap was reached and the list is incomplete.
    pub capped: bool,
}

impl Endomorphisms {
    pub fn count(&self) -> EndoCount {
        if self.capped {
            EndoCount::AtLeast(self.maps.len())
        } else {
            EndoCount::Exact(self.maps.len())
        }
    }
}

/// One class map per relation: `maps[i][c]` is the class of relation `i` that
/// class `c` is sent to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CoordinateFamily {
    pub maps: Vec<Vec<usize>>,
}

impl CoordinateFamily {
    /// The family induced by a self-map; `None` if `f` is not an endomorphism.
    pub fn from_endomorphism(m: &System, f: &SelfMap) -> Option<Self> {
        let mut maps: Vec<Vec<usize>> = m
            .relations()
            .iter()
            .map(|r| vec![UNSET; r.class_count()])
            .collect();
        for (i, r) in m.relations().iter().enumerate() {
            for x in 0..m.n() {
                let (c, d) = (r.class_of(x), r.class_of(f.apply(x)));
                match maps[i][c] {
                    UNSET => maps[i][c] = d,
                    v if v == d => {}
                    _ => return None,
                }
            }
        }
        Some(CoordinateFamily { maps })
    }

    /// The restriction of `â` to the ground set: `x` goes to the element whose
    /// class tuple is `(aᵢ(classᵢ(x)))ᵢ`. `None` if some image tuple is not the
    /// tuple of any element.
    pub fn apply(&self, m: &System) -> Option<SelfMap> {
        let index: HashMap<Vec<usize>, usize> =
            (0..m.n()).map(|x| (m.class_tuple(x), x)).collect();
        let images = (0..m.n())
            .map(|x| {
                let t: Vec<usize> = m
                    .relations()
                    .iter()
                    .zip(&self.maps)
                    .map(|(r, a)| a[r.class_of(x)])
                    .collect();
                index.get(&t).copied()
            })
            .collect::<Option<Vec<usize>>>()?;
        Some(SelfMap::from_images(images))
    }

    pub fn is_identity(&self) -> bool {
        self.maps
            .iter()
            .all(|a| a.iter().enumerate().all(|(c, &d)| c == d))
    }

    pub fn is_constant(&self) -> bool {
        self.maps.iter().all(|a| a.windows(2).all(|w| w[0] == w[1]))
    }
}

/// `x ↦ (class of x in each relation)`; injective exactly when `m` is reduced.
pub fn canonical_embedding(m: &System) -> Result<Vec<Vec<usize>>> {
    if let Some((x, y)) = unseparated_pair(m) {
        return Err(Error::NotReduced(x, y));
    }
    Ok((0..m.n()).map(|x| m.class_tuple(x)).collect())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Order {
    /// Most constrained element first, ties to the smaller index.
    MostConstrained,
    /// Elements `0, 1, ...` in turn; leaves come out in lexicographic order.
    Lexicographic,
}

struct Engine<'a> {
    n: usize,
    labels: Vec<&'a [usize]>,
    members: Vec<Vec<Vec<usize>>>,
    coord: Vec<Vec<usize>>,
    images: Vec<usize>,
    trail: Vec<(usize, usize)>,
    order: Order,
}

impl<'a> Engine<'a> {
    fn new(m: &'a System, order: Order) -> Self {
        let members = m.relations().iter().map(|r| r.blocks()).collect();
        Engine {
            n: m.n(),
            labels: m.relations().iter().map(|r| r.labels()).collect(),
            members,
            coord: m
                .relations()
                .iter()
                .map(|r| vec![UNSET; r.class_count()])
                .collect(),
            images: vec![UNSET; m.n()],
            trail: Vec::new(),
            order,
        }
    }

    fn constrained(&self, x: usize) -> usize {
        self.labels
            .iter()
            .zip(&self.coord)
            .filter(|(l, a)| a[l[x]] != UNSET)
            .count()
    }

    fn pick(&self, depth: usize) -> usize {
        match self.order {
            Order::Lexicographic => depth,
            Order::MostConstrained => {
                let mut best = UNSET;
                let mut best_score = 0;
                for x in 0..self.n {
                    if self.images[x] != UNSET {
                        continue;
                    }
                    let s = self.constrained(x);
                    if best == UNSET || s > best_score {
                        best = x;
                        best_score = s;
                    }
                }
                best
            }
        }
    }

    /// Elements `y` whose class agrees with every already-fixed `aᵢ(classᵢ(x))`.
    fn candidates(&self, x: usize) -> Vec<usize> {
        let forced: Vec<(usize, usize)> = (0..self.labels.len())
            .filter_map(|i| {
                let d = self.coord[i][self.labels[i][x]];
                (d != UNSET).then_some((i, d))
            })
            .collect();
        let Some(&(i0, d0)) = forced
            .iter()
            .min_by_key(|&&(i, d)| self.members[i][d].len())
        else {
            return (0..self.n).collect();
        };
        self.members[i0][d0]
            .iter()
            .copied()
            .filter(|&y| forced.iter().all(|&(i, d)| self.labels[i][y] == d))
            .collect()
    }

    fn bind(&mut self, x: usize, y: usize) -> bool {
        self.images[x] = y;
        for i in 0..self.labels.len() {
            let (c, d) = (self.labels[i][x], self.labels[i][y]);
            match self.coord[i][c] {
                UNSET => {
                    self.coord[i][c] = d;
                    self.trail.push((i, c));
                }
                v if v == d => {}
                _ => return false,
            }
        }
        true
    }

    fn undo(&mut self, x: usize, mark: usize) {
        self.images[x] = UNSET;
        while self.trail.len() > mark {
            let (i, c) = self.trail.pop().unwrap();
            self.coord[i][c] = UNSET;
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>) -> ControlFlow<()> {
        self.dfs(0, visit)
    }

    fn dfs(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.n {
            return visit(&self.images);
        }
        let x = self.pick(depth);
        for y in self.candidates(x) {
            let mark = self.trail.len();
            let ok = self.bind(x, y);
            let flow = if ok {
                self.dfs(depth + 1, visit)
            } else {
                ControlFlow::Continue(())
            };
            self.undo(x, mark);
            flow?;
        }
        ControlFlow::Continue(())
    }
}

fn is_trivial(images: &[usize]) -> bool {
    images.iter().enumerate().all(|(x, &y)| x == y) || images.windows(2).all(|w| w[0] == w[1])
}

/// Every endomorphism of `m`, sorted, up to `cap` maps (default
/// [`DEFAULT_ENDO_CAP`]). Hitting the cap sets `capped`.
pub fn endomorphisms(m: &System, cap: Option<usize>) -> Endomorphisms {
    let cap = cap.unwrap_or(DEFAULT_ENDO_CAP);
    let mut maps = Vec::new();
    let mut capped = false;
    let mut engine = Engine::new(m, Order::MostConstrained);
    let _ = engine.run(&mut |images| {
        if maps.len() == cap {
            capped = true;
            return ControlFlow::Break(());
        }
        maps.push(SelfMap::from_images(images.to_vec()));
        ControlFlow::Continue(())
    });
    maps.sort();
    Endomorphisms { maps, capped }
}

/// Decides whether the identity and the constants are the only endomorphisms.
pub fn is_semirigid(m: &System) -> EndoReport {
    let n = m.n();
    let trivial_count = if n <= 1 { 1 } else { n + 1 };
    let mut engine = Engine::new(m, Order::MostConstrained);
    let mut seen = 0usize;
    let found = engine
        .run(&mut |images| {
            if is_trivial(images) {
                seen += 1;
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break(())
            }
        })
        .is_break();
    if !found {
        debug_assert_eq!(seen, trivial_count);
        return EndoReport {
            semirigid: true,
            endo_count: EndoCount::Exact(trivial_count),
            witness: None,
        };
    }
    // A non-trivial endomorphism exists; rerun in lexicographic order so the
    // reported witness is the smallest one.
    let mut witness = None;
    let mut lex = Engine::new(m, Order::Lexicographic);
    let _ = lex.run(&mut |images| {
        if is_trivial(images) {
            ControlFlow::Continue(())
        } else {
            witness = Some(SelfMap::from_images(images.to_vec()));
            ControlFlow::Break(())
        }
    });
    EndoReport {
        semirigid: false,
        endo_count: EndoCount::AtLeast(trivial_count + 1),
        witness,
    }
}

/// All families `(aᵢ)` of class maps whose product map sends every class
/// tuple of `m` to a class tuple of `m`. Enumerated directly over class maps,
/// independently of [`endomorphisms`]; for reduced `m` the two lists are in
/// bijection through [`CoordinateFamily::apply`], which is checked here.
pub fn coordinate_families(m: &System) -> Result<Vec<CoordinateFamily>> {
    let tuples = canonical_embedding(m)?;
    let arity = m.arity();
    // variables (relation, class) in order of first appearance along 0..n
    let mut vars: Vec<(usize, usize)> = Vec::new();
    let mut listed: Vec<Vec<bool>> = m
        .relations()
        .iter()
        .map(|r| vec![false; r.class_count()])
        .collect();
    // completes[k]: elements whose tuple is fully assigned once vars[..=k] are
    let mut completes: Vec<Vec<usize>> = Vec::new();
    for (x, t) in tuples.iter().enumerate() {
        for (i, &c) in t.iter().enumerate() {
            if !listed[i][c] {
                listed[i][c] = true;
                vars.push((i, c));
                completes.push(Vec::new());
            }
        }
        if let Some(last) = completes.last_mut() {
            last.push(x);
        }
    }
    let index: std::collections::HashSet<&[usize]> =
        tuples.iter().map(Vec::as_slice).collect();

    struct State<'t> {
        maps: Vec<Vec<usize>>,
        tuples: &'t [Vec<usize>],
    }
    impl State<'_> {
        fn image(&self, x: usize) -> Vec<usize> {
            self.tuples[x]
                .iter()
                .enumerate()
                .map(|(i, &c)| self.maps[i][c])
                .collect()
        }
        // some element agrees with the assigned coordinates of x's image
        fn partially_feasible(&self, x: usize) -> bool {
            let img = self.image(x);
            self.tuples
                .iter()
                .any(|t| t.iter().zip(&img).all(|(&a, &b)| b == UNSET || a == b))
        }
    }

    fn rec(
        k: usize,
        vars: &[(usize, usize)],
        completes: &[Vec<usize>],
        index: &std::collections::HashSet<&[usize]>,
        domains: &[usize],
        st: &mut State<'_>,
        out: &mut Vec<CoordinateFamily>,
    ) {
        if k == vars.len() {
            out.push(CoordinateFamily {
                maps: st.maps.clone(),
            });
            return;
        }
        let (i, c) = vars[k];
        for d in 0..domains[i] {
            st.maps[i][c] = d;
            let ok = completes[k]
                .iter()
                .all(|&x| index.contains(st.image(x).as_slice()))
                && (0..st.tuples.len())
                    .filter(|&x| st.tuples[x][i] == c)
                    .all(|x| st.partially_feasible(x));
            if ok {
                rec(k + 1, vars, completes, index, domains, st, out);
            }
        }
        st.maps[i][c] = UNSET;
    }

    let domains: Vec<usize> = m.relations().iter().map(|r| r.class_count()).collect();
    let mut st = State {
        maps: domains.iter().map(|&k| vec![UNSET; k]).collect(),
        tuples: &tuples,
    };
    let mut out = Vec::new();
    if arity == 0 {
        // no coordinates: the single empty family
        out.push(CoordinateFamily { maps: Vec::new() });
    } else {
        rec(0, &vars, &completes, &index, &domains, &mut st, &mut out);
    }
    out.sort();

    let mut images: Vec<SelfMap> = Vec::with_capacity(out.len());
    for fam in &out {
        let f = fam
            .apply(m)
            .ok_or_else(|| Error::Internal("family maps outside the ground set".into()))?;
        if !crate::system::is_homomorphism(&f, m, m)? {
            return Err(Error::Internal(
                "family does not induce an endomorphism".into(),
            ));
        }
        images.push(f);
    }
    images.sort();
    images.dedup();
    if images.len() != out.len() {
        return Err(Error::Internal("two families induce the same map".into()));
    }
    Ok(out)
}
