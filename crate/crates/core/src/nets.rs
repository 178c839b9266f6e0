//! Orthogonality, 3-nets, partial latin squares, and embedding an orthogonal
//! triple into a 3-net of at most twice its size.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::system::{SelfMap, System};

/// Every class of `r` meets every class of `t` in at most one element.
pub fn orthogonal(r: &Partition, t: &Partition) -> Result<bool> {
    if r.len() != t.len() {
        return Err(Error::SizeMismatch {
            left: r.len(),
            right: t.len(),
        });
    }
    let mut seen = HashSet::with_capacity(r.len());
    Ok((0..r.len()).all(|x| seen.insert((r.class_of(x), t.class_of(x)))))
}

/// Every class of `r` meets every class of `t` in exactly one element.
pub fn strongly_orthogonal(r: &Partition, t: &Partition) -> Result<bool> {
    Ok(orthogonal(r, t)? && r.class_count() * t.class_count() == r.len())
}

fn first_non_orthogonal_pair(m: &System) -> Option<(usize, usize)> {
    (0..m.arity())
        .flat_map(|i| (i + 1..m.arity()).map(move |j| (i, j)))
        .find(|&(i, j)| !orthogonal(m.relation(i), m.relation(j)).expect("same n"))
}

pub fn pairwise_orthogonal(m: &System) -> bool {
    first_non_orthogonal_pair(m).is_none()
}

/// Three pairwise strongly orthogonal relations.
pub fn is_3net(m: &System) -> Result<bool> {
    m.require_arity(3)?;
    let net = (0..3).all(|i| {
        (i + 1..3).all(|j| strongly_orthogonal(m.relation(i), m.relation(j)).expect("same n"))
    });
    if net {
        let side = m.relation(0).class_count();
        debug_assert_eq!(side * side, m.n());
        debug_assert!(m.relations().iter().all(|r| r.class_count() == side));
    }
    Ok(net)
}

/// A square array over symbols `0..order` with optional entries and no
/// repeated symbol in any row or column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialLatinSquare {
    order: usize,
    cells: Vec<Option<usize>>,
}

impl PartialLatinSquare {
    pub fn empty(order: usize) -> Self {
        PartialLatinSquare {
            order,
            cells: vec![None; order * order],
        }
    }

    /// `rows` must be `order × order`.
    pub fn from_rows(rows: Vec<Vec<Option<usize>>>) -> Result<Self> {
        let order = rows.len();
        if let Some(r) = rows.iter().position(|r| r.len() != order) {
            return Err(Error::InvalidLatin(format!(
                "row {r} has {} cells, expected {order}",
                rows[r].len()
            )));
        }
        let sq = PartialLatinSquare {
            order,
            cells: rows.into_iter().flatten().collect(),
        };
        sq.validate()?;
        Ok(sq)
    }

    fn validate(&self) -> Result<()> {
        let m = self.order;
        let mut rows = vec![vec![false; m]; m];
        let mut cols = vec![vec![false; m]; m];
        for r in 0..m {
            for c in 0..m {
                if let Some(s) = self.get(r, c) {
                    if s >= m {
                        return Err(Error::InvalidLatin(format!(
                            "symbol {s} at ({r},{c}) is not below the order {m}"
                        )));
                    }
                    if std::mem::replace(&mut rows[r][s], true) {
                        return Err(Error::InvalidLatin(format!(
                            "symbol {s} repeated in row {r}"
                        )));
                    }
                    if std::mem::replace(&mut cols[c][s], true) {
                        return Err(Error::InvalidLatin(format!(
                            "symbol {s} repeated in column {c}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Option<usize> {
        self.cells[r * self.order + c]
    }

    pub fn filled(&self) -> usize {
        self.cells.iter().filter(|c| c.is_some()).count()
    }

    pub fn rows(&self) -> Vec<Vec<Option<usize>>> {
        self.cells.chunks(self.order.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn to_latin(&self) -> Option<LatinSquare> {
        let cells = self.cells.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(LatinSquare {
            order: self.order,
            cells,
        })
    }
}

impl fmt::Debug for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::format_latin(self))
    }
}

/// A complete latin square: every row and column is a permutation of
/// `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
}

impl LatinSquare {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let partial = PartialLatinSquare::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Some).collect())
                .collect(),
        )?;
        Ok(partial.to_latin().expect("all cells filled"))
    }

    /// The Cayley table of addition modulo `m`.
    pub fn cyclic(m: usize) -> Self {
        LatinSquare {
            order: m,
            cells: (0..m * m).map(|k| (k / m + k % m) % m).collect(),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> usize {
        self.cells[r * self.order + c]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order.max(1)).map(<[_]>::to_vec).collect()
    }

    pub fn to_partial(&self) -> PartialLatinSquare {
        PartialLatinSquare {
            order: self.order,
            cells: self.cells.iter().copied().map(Some).collect(),
        }
    }

    /// Agrees with `p` on every filled cell of `p` (top-left corner).
    pub fn contains(&self, p: &PartialLatinSquare) -> bool {
        p.order() <= self.order
            && (0..p.order()).all(|r| {
                (0..p.order()).all(|c| p.get(r, c).is_none_or(|s| self.get(r, c) == s))
            })
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::io::format_latin(&self.to_partial()))
    }
}

/// Cell of each element: `(class in relation 1, class in relation 2)`.
pub type CellMap = Vec<(usize, usize)>;

/// Reads a pairwise orthogonal triple as a partial latin square of order
/// `e = max class count`: element `x` fills cell `(class₁(x), class₂(x))` with
/// symbol `class₀(x)`.
pub fn to_partial_latin(m: &System) -> Result<(PartialLatinSquare, CellMap)> {
    m.require_arity(3)?;
    if let Some((i, j)) = first_non_orthogonal_pair(m) {
        return Err(Error::NotOrthogonal(i, j));
    }
    let e = m.relations().iter().map(Partition::class_count).max().unwrap_or(0);
    let mut sq = PartialLatinSquare::empty(e);
    let mut cells = Vec::with_capacity(m.n());
    for x in 0..m.n() {
        let (r, c) = (m.relation(1).class_of(x), m.relation(2).class_of(x));
        sq.cells[r * e + c] = Some(m.relation(0).class_of(x));
        cells.push((r, c));
    }
    debug_assert!(sq.validate().is_ok());
    Ok((sq, cells))
}

/// Bipartite perfect matching on a multigraph given by edge multiplicities
/// `adj[left][right]`, by augmenting paths.
fn perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut match_right = vec![usize::MAX; n];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        match_right: &mut [usize],
    ) -> bool {
        for v in 0..adj[u].len() {
            if adj[u][v] == 0 || seen[v] {
                continue;
            }
            seen[v] = true;
            if match_right[v] == usize::MAX || augment(match_right[v], adj, seen, match_right) {
                match_right[v] = u;
                return true;
            }
        }
        false
    }
    for u in 0..n {
        let mut seen = vec![false; n];
        if !augment(u, adj, &mut seen, &mut match_right) {
            return None;
        }
    }
    let mut match_left = vec![usize::MAX; n];
    for (v, &u) in match_right.iter().enumerate() {
        match_left[u] = v;
    }
    Some(match_left)
}

struct Filling {
    n: usize,
    sq: Vec<usize>,
    row_has: Vec<Vec<bool>>,
    col_has: Vec<Vec<bool>>,
}

impl Filling {
    fn new(n: usize) -> Self {
        Filling {
            n,
            sq: vec![usize::MAX; n * n],
            row_has: vec![vec![false; n]; n],
            col_has: vec![vec![false; n]; n],
        }
    }

    fn put(&mut self, r: usize, c: usize, s: usize) {
        self.sq[r * self.n + c] = s;
        self.row_has[r][s] = true;
        self.col_has[c][s] = true;
    }
}

/// Embeds `p` (order `e`) in the top-left corner of a latin square of order
/// `2e`.
///
/// The corner is completed greedily over `2e` symbols (a cell has at most
/// `2e − 2` forbidden symbols). The `e × e` block to its right is an
/// edge-colouring of the row/missing-symbol multigraph, made `e`-regular with
/// `e` padding rows and peeled into `e` perfect matchings. The bottom half is
/// added row by row, each row a perfect matching of columns to their missing
/// symbols.
pub fn evans_extend(p: &PartialLatinSquare) -> Result<LatinSquare> {
    p.validate()?;
    let e = p.order();
    let n = 2 * e;
    let mut g = Filling::new(n);
    for r in 0..e {
        for c in 0..e {
            if let Some(s) = p.get(r, c) {
                g.put(r, c, s);
            }
        }
    }
    // corner: greedy
    for r in 0..e {
        for c in 0..e {
            if g.sq[r * n + c] == usize::MAX {
                let s = (0..n)
                    .find(|&s| !g.row_has[r][s] && !g.col_has[c][s])
                    .ok_or_else(|| Error::Internal("greedy corner fill failed".into()))?;
                g.put(r, c, s);
            }
        }
    }
    // right block: rows 0..e vs symbols; padding rows e..2e absorb the
    // symbols' corner occurrences so that every vertex has degree e
    let mut adj = vec![vec![0usize; n]; n];
    for r in 0..e {
        for s in 0..n {
            if !g.row_has[r][s] {
                adj[r][s] += 1;
            }
        }
    }
    let mut pad = Vec::with_capacity(e * e);
    for s in 0..n {
        let used = (0..e).filter(|&r| g.row_has[r][s]).count();
        pad.extend(std::iter::repeat_n(s, used));
    }
    for (k, &s) in pad.iter().enumerate() {
        adj[e + k / e.max(1)][s] += 1;
    }
    for c in e..n {
        let matching = perfect_matching(&adj)
            .ok_or_else(|| Error::Internal("no perfect matching in regular multigraph".into()))?;
        for (u, &s) in matching.iter().enumerate() {
            adj[u][s] -= 1;
            if u < e {
                g.put(u, c, s);
            }
        }
    }
    // bottom half: columns vs symbols they still miss
    for r in e..n {
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|c| (0..n).map(|s| usize::from(!g.col_has[c][s])).collect())
            .collect();
        let matching = perfect_matching(&adj)
            .ok_or_else(|| Error::Internal("latin rectangle did not extend".into()))?;
        for (c, &s) in matching.iter().enumerate() {
            g.put(r, c, s);
        }
    }
    let rows: Vec<Vec<usize>> = g.sq.chunks(n.max(1)).map(<[_]>::to_vec).collect();
    let out = if n == 0 {
        LatinSquare {
            order: 0,
            cells: Vec::new(),
        }
    } else {
        LatinSquare::from_rows(rows).map_err(|err| Error::Internal(err.to_string()))?
    };
    if !out.contains(p) {
        return Err(Error::Internal("completion disagrees with the input".into()));
    }
    Ok(out)
}

/// Element `r·m + c` is cell `(r, c)`; relations are equal row, equal column,
/// equal symbol.
pub fn latin_to_3net(l: &LatinSquare) -> System {
    let m = l.order();
    let rows: Vec<usize> = (0..m * m).map(|k| k / m).collect();
    let cols: Vec<usize> = (0..m * m).map(|k| k % m).collect();
    let syms: Vec<usize> = (0..m * m).map(|k| l.get(k / m, k % m)).collect();
    System::new(
        m * m,
        vec![
            Partition::from_labels(&rows),
            Partition::from_labels(&cols),
            Partition::from_labels(&syms),
        ],
    )
    .expect("equal lengths")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetEmbedding {
    /// A 3-net whose relation `i` corresponds to relation `i` of the source:
    /// (symbol, row, column).
    pub net: System,
    /// Injective map from the source ground set into the net.
    pub embedding: SelfMap,
    /// Side of the net; the net has `order²` elements.
    pub order: usize,
}

/// Embeds a pairwise orthogonal triple into a 3-net of order at most `2|E|`.
/// A system that already is a 3-net is returned unchanged with the identity.
pub fn embed_into_3net(m: &System) -> Result<NetEmbedding> {
    if is_3net(m)? {
        return Ok(NetEmbedding {
            net: m.clone(),
            embedding: SelfMap::identity(m.n()),
            order: m.relation(0).class_count(),
        });
    }
    let (partial, cells) = to_partial_latin(m)?;
    let full = evans_extend(&partial)?;
    let side = full.order();
    // latin_to_3net gives (row, column, symbol); reorder to (symbol, row, column)
    let net = latin_to_3net(&full).permute_relations(&[2, 0, 1])?;
    let embedding = SelfMap::new(
        cells.iter().map(|&(r, c)| r * side + c).collect(),
        side * side,
    )?;
    Ok(NetEmbedding {
        net,
        embedding,
        order: side,
    })
}
