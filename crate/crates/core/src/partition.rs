//! Partitions of `{0..n-1}` in least-representative form, plus the
//! union-find used to build them.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn from_partition(p: &Partition) -> Self {
        let mut uf = UnionFind::new(p.len());
        for x in 0..p.len() {
            uf.union(x, p.rep(x));
        }
        uf
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if the two classes were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn to_partition(&mut self) -> Partition {
        let n = self.parent.len();
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            if least[r] == usize::MAX {
                least[r] = x;
            }
        }
        let parent = (0..n).map(|x| least[self.find(x)]).collect();
        Partition { parent }
    }
}

/// Each element maps to the least element of its block.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<usize>>", try_from = "Vec<Vec<usize>>")]
pub struct Partition {
    parent: Vec<usize>,
}

impl Partition {
    pub fn discrete(n: usize) -> Self {
        Partition {
            parent: (0..n).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Partition { parent: vec![0; n] }
    }

    /// Builds the least partition in which every listed pair is related.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        uf.to_partition()
    }

    /// Requires every element of `0..n` in exactly one block.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Option<Self> {
        let mut seen = vec![false; n];
        let mut uf = UnionFind::new(n);
        for block in blocks {
            for &x in block {
                if x >= n || seen[x] {
                    return None;
                }
                seen[x] = true;
                uf.union(block[0], x);
            }
        }
        if seen.iter().all(|&s| s) {
            Some(uf.to_partition())
        } else {
            None
        }
    }

    /// Accepts any labeling; two elements are related iff their labels agree.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Self {
        let mut first = std::collections::HashMap::new();
        let parent = labels
            .iter()
            .enumerate()
            .map(|(i, l)| *first.entry(l).or_insert(i))
            .collect();
        Partition { parent }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    #[inline]
    pub fn rep(&self, x: usize) -> usize {
        self.parent[x]
    }

    #[inline]
    pub fn related(&self, x: usize, y: usize) -> bool {
        self.parent[x] == self.parent[y]
    }

    pub fn reps(&self) -> &[usize] {
        &self.parent
    }

    pub fn block_count(&self) -> usize {
        self.parent.iter().enumerate().filter(|&(i, &r)| i == r).count()
    }

    /// Blocks sorted by least element, members ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut index = vec![usize::MAX; self.len()];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for x in 0..self.len() {
            let r = self.parent[x];
            if index[r] == usize::MAX {
                index[r] = blocks.len();
                blocks.push(Vec::new());
            }
            blocks[index[r]].push(x);
        }
        blocks
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        (0..self.len()).all(|x| other.related(x, self.parent[x]))
    }

    pub fn join(&self, other: &Partition) -> Partition {
        let mut uf = UnionFind::from_partition(self);
        for x in 0..other.len() {
            uf.union(x, other.rep(x));
        }
        uf.to_partition()
    }

    pub fn meet(&self, other: &Partition) -> Partition {
        Partition::from_labels(
            &(0..self.len())
                .map(|x| (self.parent[x], other.parent[x]))
                .collect::<Vec<_>>(),
        )
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| {
            (0..self.len())
                .filter(move |&y| self.related(x, y))
                .map(move |y| (x, y))
        })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.blocks())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks()
    }
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = String;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self, Self::Error> {
        let n = blocks.iter().map(|b| b.len()).sum();
        Partition::from_blocks(n, &blocks).ok_or_else(|| "blocks do not partition 0..n".to_string())
    }
}
