//! Combinatorial types of `n`-marked stable trees, stored as laminar families
//! of splits.

use std::fmt;

use crate::error::{Error, Result};
use crate::marks::MarkSet;

/// A tree given by its edge splits. Each split `{I, I^c}` is stored by the side
/// `I` that avoids the last mark, with `2 <= |I| <= n - 2`; the stored sides
/// are pairwise nested or disjoint. Edges are kept sorted, so derived ordering
/// is lexicographic on edge lists.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SplitTree {
    n: usize,
    edges: Vec<MarkSet>,
}

/// A vertex of a [`SplitTree`].
///
/// `flags[f]` is the set of marks reached by leaving the vertex through flag
/// `f`; the flag sets partition all marks. Legs come first (ascending), then
/// edges towards child vertices, then the edge towards the parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    /// Marks below this vertex, seen from the last mark; all marks at the root.
    pub below: MarkSet,
    pub flags: Vec<MarkSet>,
}

impl Vertex {
    pub fn valence(&self) -> usize {
        self.flags.len()
    }

    /// Canonical global split produced by separating the flags in `local`
    /// (indices into `flags`) from the others.
    pub fn split_for(&self, local: MarkSet, n: usize) -> MarkSet {
        local
            .iter()
            .fold(MarkSet::EMPTY, |acc, f| acc.union(self.flags[f]))
            .canonical_split(n)
    }
}

/// Splits `a`, `b` (both avoiding the last mark) are compatible iff nested or disjoint.
pub fn compatible(a: MarkSet, b: MarkSet) -> bool {
    a.is_disjoint(b) || a.is_subset(b) || b.is_subset(a)
}

/// Every canonical split side of `n` marks, sorted.
pub fn canonical_splits(n: usize) -> Vec<MarkSet> {
    if n < 4 {
        return Vec::new();
    }
    let mut out: Vec<MarkSet> = MarkSet::full(n - 1)
        .subsets()
        .filter(|s| s.len() >= 2 && s.len() + 2 <= n)
        .collect();
    out.sort();
    out
}

impl SplitTree {
    /// Builds a tree from split sides (either side of each split may be given).
    pub fn new(n: usize, sides: impl IntoIterator<Item = MarkSet>) -> Result<Self> {
        if n < 3 || n > crate::marks::MAX_MARKS - 1 {
            return Err(Error::Size(format!("trees need 3..=63 marks, got {n}")));
        }
        let full = MarkSet::full(n);
        let mut edges = Vec::new();
        for side in sides {
            if !side.is_subset(full) || side.len() < 2 || side.len() + 2 > n {
                return Err(Error::Split { subset: side.to_string(), n });
            }
            edges.push(side.canonical_split(n));
        }
        edges.sort();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Incompatible("repeated edge".into()));
        }
        for (p, &a) in edges.iter().enumerate() {
            if let Some(&b) = edges[p + 1..].iter().find(|&&b| !compatible(a, b)) {
                return Err(Error::Incompatible(format!("splits {a} and {b} cross")));
            }
        }
        Ok(SplitTree { n, edges })
    }

    /// The tree with one vertex.
    pub fn trivial(n: usize) -> Self {
        SplitTree { n, edges: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[MarkSet] {
        &self.edges
    }

    /// Number of edges, the dimension of the corresponding cone.
    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, side: MarkSet) -> bool {
        self.edges.binary_search(&side.canonical_split(self.n)).is_ok()
    }

    pub fn is_face_of(&self, other: &SplitTree) -> bool {
        self.n == other.n && self.edges.iter().all(|&e| other.contains(e))
    }

    /// The tree with `side` added. The split must be compatible and new.
    pub fn with_edge(&self, side: MarkSet) -> Result<SplitTree> {
        SplitTree::new(self.n, self.edges.iter().copied().chain([side]))
    }

    /// Codimension-one faces: the trees with one edge contracted.
    pub fn faces(&self) -> Vec<SplitTree> {
        (0..self.edges.len())
            .map(|skip| SplitTree {
                n: self.n,
                edges: self.edges.iter().enumerate().filter(|&(p, _)| p != skip).map(|(_, &e)| e).collect(),
            })
            .collect()
    }

    /// Canonical splits that can be added to this tree.
    pub fn refinements(&self) -> Vec<MarkSet> {
        canonical_splits(self.n)
            .into_iter()
            .filter(|&s| !self.contains(s) && self.edges.iter().all(|&e| compatible(e, s)))
            .collect()
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        let full = MarkSet::full(self.n);
        std::iter::once(full)
            .chain(self.edges.iter().copied())
            .map(|below| {
                let inside: Vec<MarkSet> =
                    self.edges.iter().copied().filter(|&e| e != below && e.is_subset(below)).collect();
                let children: Vec<MarkSet> = inside
                    .iter()
                    .copied()
                    .filter(|&e| !inside.iter().any(|&f| f != e && e.is_subset(f)))
                    .collect();
                let covered = children.iter().fold(MarkSet::EMPTY, |acc, &c| acc.union(c));
                let mut flags: Vec<MarkSet> = below.difference(covered).iter().map(MarkSet::singleton).collect();
                flags.extend(children);
                if below != full {
                    flags.push(below.complement(self.n));
                }
                Vertex { below, flags }
            })
            .collect()
    }

    /// All trees with exactly `dim` edges, in increasing order.
    pub fn all_with_dim(n: usize, dim: usize) -> Vec<SplitTree> {
        fn rec(splits: &[MarkSet], start: usize, left: usize, chosen: &mut Vec<MarkSet>, n: usize, out: &mut Vec<SplitTree>) {
            if left == 0 {
                out.push(SplitTree { n, edges: chosen.clone() });
                return;
            }
            for p in start..splits.len() {
                let s = splits[p];
                if chosen.iter().all(|&c| compatible(c, s)) {
                    chosen.push(s);
                    rec(splits, p + 1, left - 1, chosen, n, out);
                    chosen.pop();
                }
            }
        }
        let splits = canonical_splits(n);
        let mut out = Vec::new();
        rec(&splits, 0, dim, &mut Vec::new(), n, &mut out);
        out
    }
}

impl fmt::Display for SplitTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.edges.is_empty() {
            return f.write_str(".");
        }
        for e in &self.edges {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SplitTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SplitTree(n={}, {self})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(labels: &[usize]) -> MarkSet {
        MarkSet::from_labels(labels)
    }

    fn double_factorial(k: usize) -> usize {
        (1..=k).rev().step_by(2).product()
    }

    #[test]
    fn counts_match_known_values() {
        // Rays of the tropical moduli space: 2^(n-1) - n - 1.
        for n in 4..=8 {
            assert_eq!(canonical_splits(n).len(), (1 << (n - 1)) - n - 1);
            assert_eq!(SplitTree::all_with_dim(n, 1).len(), (1 << (n - 1)) - n - 1);
            // Trivalent trees: (2n - 5)!!.
            assert_eq!(SplitTree::all_with_dim(n, n - 3).len(), double_factorial(2 * n - 5));
            assert!(SplitTree::all_with_dim(n, n - 2).is_empty());
        }
        assert_eq!(SplitTree::all_with_dim(5, 0), vec![SplitTree::trivial(5)]);
    }

    #[test]
    fn construction_canonicalizes_and_rejects_crossing() {
        let t = SplitTree::new(5, [s(&[4, 5]), s(&[1, 2])]).unwrap();
        assert_eq!(t.edges(), &[s(&[1, 2]), s(&[1, 2, 3])]);
        assert_eq!(t.to_string(), "{1,2}{1,2,3}");
        assert!(matches!(SplitTree::new(5, [s(&[1, 2]), s(&[2, 3])]), Err(Error::Incompatible(_))));
        assert!(matches!(SplitTree::new(5, [s(&[1])]), Err(Error::Split { .. })));
        assert!(matches!(SplitTree::new(5, [s(&[1, 2]), s(&[3, 4, 5])]), Err(Error::Incompatible(_))));
    }

    #[test]
    fn vertices_partition_marks() {
        for n in 4..=7 {
            for d in 0..=n - 3 {
                for t in SplitTree::all_with_dim(n, d) {
                    let vs = t.vertices();
                    assert_eq!(vs.len(), d + 1);
                    // Half-edges: n legs plus two per edge.
                    assert_eq!(vs.iter().map(Vertex::valence).sum::<usize>(), n + 2 * d);
                    for v in &vs {
                        assert!(v.valence() >= 3);
                        let mut union = MarkSet::EMPTY;
                        for &f in &v.flags {
                            assert!(union.is_disjoint(f));
                            union = union.union(f);
                        }
                        assert_eq!(union, MarkSet::full(n));
                    }
                }
            }
        }
    }

    #[test]
    fn vertex_layout() {
        let t = SplitTree::new(5, [s(&[1, 2])]).unwrap();
        let vs = t.vertices();
        assert_eq!(vs[0].flags, vec![s(&[3]), s(&[4]), s(&[5]), s(&[1, 2])]);
        assert_eq!(vs[1].flags, vec![s(&[1]), s(&[2]), s(&[3, 4, 5])]);
        assert_eq!(vs[0].split_for(MarkSet::from_indices([0, 3]), 5), s(&[1, 2, 3]));
    }

    #[test]
    fn faces_and_refinements() {
        let t = SplitTree::new(6, [s(&[1, 2])]).unwrap();
        for e in t.refinements() {
            let u = t.with_edge(e).unwrap();
            assert!(t.is_face_of(&u));
            assert!(u.faces().contains(&t));
        }
        // Refining the 5-valent root of a 6-marked tree with one edge {1,2}:
        // splits of 5 flags into two parts of size >= 2 = 10, plus 0 at the
        // 3-valent vertex.
        assert_eq!(t.refinements().len(), 10);
    }
}
