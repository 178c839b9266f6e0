use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An equivalence relation on `{0..n-1}` stored as a normalized class-label
/// vector: the first occurrence of each class gets the next unused id, so
/// `labels[0] == 0` and ids are contiguous.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct Partition {
    labels: Vec<usize>,
    classes: usize,
}

impl Partition {
    /// Builds a partition from arbitrary labels; equal labels mean equivalent
    /// elements. The result is normalized.
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut ids = HashMap::with_capacity(labels.len());
        let mut out = Vec::with_capacity(labels.len());
        for l in labels {
            let next = ids.len();
            out.push(*ids.entry(*l).or_insert(next));
        }
        Partition {
            classes: ids.len(),
            labels: out,
        }
    }

    /// Builds a partition from a list of blocks that must cover `{0..n-1}`
    /// exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &x in block {
                if x >= n {
                    return Err(Error::OutOfRange { element: x, n });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element {x} lies in two blocks"
                    )));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element {x} is not covered"
            )));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn equality(n: usize) -> Self {
        Partition {
            labels: (0..n).collect(),
            classes: n,
        }
    }

    pub fn full(n: usize) -> Self {
        Partition {
            labels: vec![0; n],
            classes: usize::from(n > 0),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    #[inline]
    pub fn class_of(&self, x: usize) -> usize {
        self.labels[x]
    }

    #[inline]
    pub fn class_count(&self) -> usize {
        self.classes
    }

    #[inline]
    pub fn same(&self, x: usize, y: usize) -> bool {
        self.labels[x] == self.labels[y]
    }

    pub fn is_equality(&self) -> bool {
        self.classes == self.labels.len()
    }

    pub fn is_full(&self) -> bool {
        self.classes <= 1
    }

    /// Blocks in class-id order; each block is sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.classes];
        for (x, &c) in self.labels.iter().enumerate() {
            blocks[c].push(x);
        }
        blocks
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.classes];
        for &c in &self.labels {
            sizes[c] += 1;
        }
        sizes
    }

    /// `self` is finer than or equal to `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut image = vec![usize::MAX; self.classes];
        self.labels
            .iter()
            .zip(&other.labels)
            .all(|(&a, &b)| match image[a] {
                usize::MAX => {
                    image[a] = b;
                    true
                }
                v => v == b,
            })
    }
}

impl From<Vec<usize>> for Partition {
    fn from(labels: Vec<usize>) -> Self {
        Partition::from_labels(&labels)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.labels
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{:?}", self.blocks())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, b) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// All partitions of `{0..n-1}` as restricted growth strings, in
/// lexicographic order of their label vectors.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    if n == 0 {
        out.push(Partition::from_labels::<usize>(&[]));
        return out;
    }
    let mut labels = vec![0usize; n];
    let mut maxes = vec![0usize; n];
    loop {
        out.push(Partition::from_labels(&labels));
        // next restricted growth string
        let mut i = n - 1;
        loop {
            if i == 0 {
                return out;
            }
            if labels[i] <= maxes[i - 1] {
                labels[i] += 1;
                maxes[i] = maxes[i - 1].max(labels[i]);
                for j in i + 1..n {
                    labels[j] = 0;
                    maxes[j] = maxes[i];
                }
                break;
            }
            i -= 1;
        }
    }
}
