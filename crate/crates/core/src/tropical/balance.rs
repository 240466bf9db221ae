//! Balancing checks for weighted fans.

use num_traits::Zero;

use super::cycle::{local_vector, tree_weight, TropicalCycle};
use super::fan_vector::FanVector;
use super::tree::{canonical_splits, SplitTree};
use crate::error::{Error, Result};
use crate::invariants::{extended_value, ClosedFormulaEngine};
use crate::marks::MarkSet;
use crate::monodromy::MonodromyVector;
use crate::rational::{one, Rational};

/// Outcome of the balancing check at one vertex of a face (r-spin cycles).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexBalance {
    /// Index into `face.vertices()`.
    pub vertex: usize,
    pub local: MonodromyVector,
    pub local_dim: i64,
    /// Weights of the refinements at this vertex equal the product of the other
    /// vertices' invariants times the local one-dimensional weight.
    pub factorizes: bool,
    /// The local one-dimensional cycle is balanced at the origin (or all local
    /// weights vanish when the local class is not one-dimensional).
    pub balanced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub face: SplitTree,
    /// `sum w(sigma) v_{sigma / face}` in the frame of `residual.anchor()`,
    /// before reducing modulo the rays of `face`.
    pub residual: FanVector,
    /// Per-vertex results; empty for the generic linear check.
    pub vertices: Vec<VertexBalance>,
    /// For origin checks: the common boomerang value when balanced.
    pub common_value: Option<Rational>,
    pub balanced: bool,
}

/// The side of the split stored as `side` that avoids `anchor`.
fn away_from(side: MarkSet, anchor: usize, n: usize) -> MarkSet {
    if side.contains(anchor) {
        side.complement(n)
    } else {
        side
    }
}

fn require_dim_one(c: &TropicalCycle) -> Result<()> {
    if c.dim() != 1 {
        return Err(Error::Precondition(format!("cycle has dimension {}, not 1", c.dim())));
    }
    Ok(())
}

fn check_marks(n: usize, marks: &[usize]) -> Result<()> {
    for (p, &a) in marks.iter().enumerate() {
        if a >= n || marks[..p].contains(&a) {
            return Err(Error::Anchor(format!("marks {:?} are not distinct marks of 1..={n}", marks.iter().map(|m| m + 1).collect::<Vec<_>>())));
        }
    }
    Ok(())
}

/// `B^k_{i,j}`: sum of ray weights `a_I` over `{i, j} ⊆ I ⊆ [n] \ {k}`. 0-based marks.
pub fn boomerang(c: &TropicalCycle, anchor: usize, i: usize, j: usize) -> Result<Rational> {
    require_dim_one(c)?;
    check_marks(c.n(), &[anchor, i, j])?;
    let pair = MarkSet::from_indices([i, j]);
    let mut total = Rational::zero();
    for (tree, w) in c.support() {
        if pair.is_subset(away_from(tree.edges()[0], anchor, c.n())) {
            total += w;
        }
    }
    Ok(total)
}

/// Balancing of a one-dimensional fan at the origin, in the frame of `anchor`.
/// The residual's coefficients are the boomerangs `B^anchor_{i,j}`.
pub fn check_balancing_origin(c: &TropicalCycle, anchor: usize) -> Result<BalanceReport> {
    require_dim_one(c)?;
    check_marks(c.n(), &[anchor])?;
    let n = c.n();
    let mut residual = FanVector::zero(n, anchor)?;
    for (tree, w) in c.support() {
        residual.add_split_ray(tree.edges()[0], w)?;
    }
    let balanced = residual.is_zero();
    let common_value = if balanced { residual.coeffs().first().cloned() } else { None };
    Ok(BalanceReport { face: SplitTree::trivial(n), residual, vertices: Vec::new(), common_value, balanced })
}

fn check_face_shape(c: &TropicalCycle, tau: &SplitTree) -> Result<()> {
    if tau.n() != c.n() || tau.dim() + 1 != c.dim() || !c.has_face(tau) {
        return Err(Error::Face(format!("{tau} is not a codimension-one face of the cycle's cones")));
    }
    Ok(())
}

/// `sum_{sigma > tau} w(sigma) v_{sigma \ tau}` in the frame of the last mark.
fn face_residual(c: &TropicalCycle, tau: &SplitTree) -> Result<FanVector> {
    let n = c.n();
    let mut residual = FanVector::zero(n, n - 1)?;
    for e in tau.refinements() {
        let w = c.weight(&tau.with_edge(e)?);
        if !w.is_zero() {
            residual.add_split_ray(e, &w)?;
        }
    }
    Ok(residual)
}

/// Whether `target` lies in the span of `generators` over the rationals.
fn in_span(generators: Vec<Vec<Rational>>, target: &[Rational]) -> bool {
    // Echelon basis as (pivot column, row with 1 at the pivot).
    let mut basis: Vec<(usize, Vec<Rational>)> = Vec::new();
    let reduce = |mut row: Vec<Rational>, basis: &[(usize, Vec<Rational>)]| {
        for (p, b) in basis {
            if !row[*p].is_zero() {
                let f = row[*p].clone();
                for (x, y) in row.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        row
    };
    for g in generators {
        let row = reduce(g, &basis);
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            let inv = one() / &row[p];
            let row: Vec<Rational> = row.iter().map(|x| x * &inv).collect();
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    for (x, y) in b.iter_mut().zip(&row) {
                        *x -= &f * y;
                    }
                }
            }
            basis.push((p, row));
        }
    }
    reduce(target.to_vec(), &basis).iter().all(Zero::is_zero)
}

/// Balancing along `tau` for any weighted fan: the weighted sum of the new rays
/// lies in the span of the rays of `tau` (modulo the all-ones relation).
pub fn check_balancing_face_linear(c: &TropicalCycle, tau: &SplitTree) -> Result<BalanceReport> {
    check_face_shape(c, tau)?;
    let n = c.n();
    let residual = face_residual(c, tau)?;
    let mut generators = vec![FanVector::relation(n, n - 1)?.coeffs().to_vec()];
    for &e in tau.edges() {
        generators.push(FanVector::ray(n, e, n - 1)?.coeffs().to_vec());
    }
    let balanced = in_span(generators, residual.coeffs());
    Ok(BalanceReport { face: tau.clone(), residual, vertices: Vec::new(), common_value: None, balanced })
}

/// Balancing along `tau` for a tropicalized r-spin class, reduced to the
/// vertices of `tau`: every vertex of valence at least 4 must carry a balanced
/// local one-dimensional class, and the weights of the cones refining `tau`
/// must factor through it.
pub fn check_balancing_face_by_vertices(c: &TropicalCycle, tau: &SplitTree) -> Result<BalanceReport> {
    check_face_shape(c, tau)?;
    let source = c
        .source()
        .ok_or_else(|| Error::Precondition("per-vertex balancing needs a source monodromy vector".into()))?;
    let engine = ClosedFormulaEngine::global();
    let n = c.n();
    let verts = tau.vertices();
    let locals: Vec<MonodromyVector> = verts.iter().map(|u| local_vector(source, u)).collect();
    let values = locals.iter().map(|x| extended_value(engine, x)).collect::<Result<Vec<_>>>()?;

    let mut reports = Vec::new();
    for (idx, vertex) in verts.iter().enumerate().filter(|(_, u)| u.valence() >= 4) {
        let local = &locals[idx];
        let valence = vertex.valence();
        let prefactor: Rational = values.iter().enumerate().filter(|&(p, _)| p != idx).map(|(_, w)| w.clone()).product();

        let mut factorizes = true;
        let mut local_weights = Vec::new();
        for p in canonical_splits(valence) {
            let local_w = tree_weight(engine, local, &SplitTree::new(valence, [p])?)?;
            let sigma = tau.with_edge(vertex.split_for(p, n))?;
            factorizes &= c.weight(&sigma) == &prefactor * &local_w;
            local_weights.push(local_w);
        }
        let local_dim = local.cycle_dimension();
        let balanced = if local_dim == 1 {
            let local_cycle = TropicalCycle::tropicalize_with(engine, local)?;
            check_balancing_origin(&local_cycle, valence - 1)?.balanced
        } else {
            local_weights.iter().all(Zero::is_zero)
        };
        reports.push(VertexBalance { vertex: idx, local: local.clone(), local_dim, factorizes, balanced });
    }
    let balanced = reports.iter().all(|r| r.factorizes && r.balanced);
    Ok(BalanceReport { face: tau.clone(), residual: face_residual(c, tau)?, vertices: reports, common_value: None, balanced })
}

/// Per-vertex check for cycles with a source vector, linear check otherwise.
pub fn check_balancing_face(c: &TropicalCycle, tau: &SplitTree) -> Result<BalanceReport> {
    if c.source().is_some() {
        check_balancing_face_by_vertices(c, tau)
    } else {
        check_balancing_face_linear(c, tau)
    }
}

/// Codimension-one faces of the cycle's cones.
pub fn faces(c: &TropicalCycle) -> Vec<SplitTree> {
    if c.dim() == 0 {
        return Vec::new();
    }
    SplitTree::all_with_dim(c.n(), c.dim() - 1).into_iter().filter(|t| c.has_face(t)).collect()
}
