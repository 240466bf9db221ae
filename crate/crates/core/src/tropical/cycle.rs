//! Weighted fans supported on cones of the tropical moduli space, and the
//! tropicalization of r-spin Witten classes.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::tree::{SplitTree, Vertex};
use crate::error::{Error, Result};
use crate::invariants::{extended_value, ClosedFormulaEngine, Engine};
use crate::marks::MarkSet;
use crate::monodromy::MonodromyVector;
use crate::rational::{one, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCycle {
    n: usize,
    r: Option<i64>,
    source: Option<MonodromyVector>,
    dim: usize,
    weights: BTreeMap<SplitTree, Rational>,
}

/// Monodromy vector seen by a vertex: each flag carries the node monodromy on
/// the vertex's side of it (for legs, the mark's own monodromy).
pub fn local_vector(v: &MonodromyVector, vertex: &Vertex) -> MonodromyVector {
    let n = v.n();
    let marks = vertex.flags.iter().map(|f| v.side_monodromy(f.complement(n))).collect();
    MonodromyVector::new_unchecked(v.r(), marks)
}

/// Product over the vertices of `tree` of `w_r` (extended by zero) at the local vectors.
pub fn tree_weight<E: Engine + ?Sized>(engine: &E, v: &MonodromyVector, tree: &SplitTree) -> Result<Rational> {
    let mut product = one();
    for vertex in tree.vertices() {
        let w = extended_value(engine, &local_vector(v, &vertex))?;
        if w.is_zero() {
            return Ok(w);
        }
        product *= w;
    }
    Ok(product)
}

/// Weight of the boundary divisor of the split `{J, J^c}`: the product of the
/// invariants of the two sides.
pub fn split_weight(v: &MonodromyVector, j: MarkSet) -> Result<Rational> {
    v.node_monodromies(j)?;
    tree_weight(ClosedFormulaEngine::global(), v, &SplitTree::new(v.n(), [j])?)
}

impl TropicalCycle {
    /// Tropicalization of `W_r(v)` using the process-wide closed-formula engine.
    pub fn tropicalize(v: &MonodromyVector) -> Result<Self> {
        Self::tropicalize_with(ClosedFormulaEngine::global(), v)
    }

    /// Weights every tree with `dim` edges, where `dim` is the cycle dimension of
    /// `v`; all trees are stored, including those of weight zero.
    pub fn tropicalize_with<E: Engine + ?Sized>(engine: &E, v: &MonodromyVector) -> Result<Self> {
        let n = v.n();
        let d = v.cycle_dimension();
        let max = n as i64 - 3;
        if d < 0 || d > max {
            return Err(Error::Dimension { dim: d, max });
        }
        let weights = SplitTree::all_with_dim(n, d as usize)
            .into_iter()
            .map(|t| tree_weight(engine, v, &t).map(|w| (t, w)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(TropicalCycle { n, r: Some(v.r()), source: Some(v.clone()), dim: d as usize, weights })
    }

    /// A fan given by explicit weights. Trees must have `n` marks and `dim` edges.
    pub fn generic(n: usize, dim: usize, weights: impl IntoIterator<Item = (SplitTree, Rational)>) -> Result<Self> {
        Self::from_parts(n, None, None, dim, weights)
    }

    pub fn from_parts(
        n: usize,
        r: Option<i64>,
        source: Option<MonodromyVector>,
        dim: usize,
        weights: impl IntoIterator<Item = (SplitTree, Rational)>,
    ) -> Result<Self> {
        if n < 3 {
            return Err(Error::Size(format!("n = {n} must be at least 3")));
        }
        if dim > n - 3 {
            return Err(Error::Dimension { dim: dim as i64, max: n as i64 - 3 });
        }
        if let Some(s) = &source {
            if s.n() != n || Some(s.r()) != r || s.cycle_dimension() != dim as i64 {
                return Err(Error::Incompatible(format!("source {s} does not match n = {n}, r = {r:?}, dim = {dim}")));
            }
        }
        let mut map = BTreeMap::new();
        for (tree, w) in weights {
            if tree.n() != n || tree.dim() != dim {
                return Err(Error::Incompatible(format!("tree {tree} does not have {n} marks and {dim} edges")));
            }
            if map.insert(tree.clone(), w).is_some() {
                return Err(Error::Incompatible(format!("tree {tree} given twice")));
            }
        }
        Ok(TropicalCycle { n, r, source, dim, weights: map })
    }

    /// Every top-dimensional cone with weight 1.
    pub fn unit_fan(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Size(format!("n = {n} must be at least 3")));
        }
        Self::generic(n, n - 3, SplitTree::all_with_dim(n, n - 3).into_iter().map(|t| (t, one())))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> Option<i64> {
        self.r
    }

    pub fn source(&self) -> Option<&MonodromyVector> {
        self.source.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn weights(&self) -> &BTreeMap<SplitTree, Rational> {
        &self.weights
    }

    /// Weight of `tree`, zero when not stored.
    pub fn weight(&self, tree: &SplitTree) -> Rational {
        self.weights.get(tree).cloned().unwrap_or_else(Rational::zero)
    }

    /// For one-dimensional cycles: the weight of the ray of split `side`.
    pub fn ray_weight(&self, side: MarkSet) -> Result<Rational> {
        if self.dim != 1 {
            return Err(Error::Precondition(format!("cycle has dimension {}, not 1", self.dim)));
        }
        Ok(self.weight(&SplitTree::new(self.n, [side])?))
    }

    /// Trees with nonzero weight.
    pub fn support(&self) -> impl Iterator<Item = (&SplitTree, &Rational)> {
        self.weights.iter().filter(|(_, w)| !w.is_zero())
    }

    /// Whether `tau` is a face of some stored tree.
    pub fn has_face(&self, tau: &SplitTree) -> bool {
        self.weights.keys().any(|t| tau.is_face_of(t))
    }
}
