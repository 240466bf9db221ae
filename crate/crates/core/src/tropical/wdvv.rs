//! Four-point relations obtained by pushing a one-dimensional fan forward to
//! the moduli space of four marks.

use num_traits::Zero;

use super::cycle::TropicalCycle;
use crate::error::{Error, Result};
use crate::marks::MarkSet;
use crate::monodromy::MonodromyVector;
use crate::rational::Rational;

/// Weights of the pushforward on the three rays `ab|cd`, `ac|bd`, `ad|bc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WdvvOutcome {
    pub ab_cd: Rational,
    pub ac_bd: Rational,
    pub ad_bc: Rational,
    /// `ab_cd == ad_bc`.
    pub holds: bool,
}

/// Pushes a one-dimensional fan forward to the four marks `keep` (0-based).
/// A ray survives when its split separates the kept marks two and two.
pub fn pushforward(c: &TropicalCycle, keep: [usize; 4]) -> Result<WdvvOutcome> {
    if c.dim() != 1 {
        return Err(Error::Precondition(format!("cycle has dimension {}, not 1", c.dim())));
    }
    let [a, b, cc, d] = keep;
    let kept = MarkSet::from_indices(keep);
    if kept.len() != 4 || keep.iter().any(|&m| m >= c.n()) {
        return Err(Error::Precondition(format!("{keep:?} are not four distinct marks")));
    }
    let mut sums = [Rational::zero(), Rational::zero(), Rational::zero()];
    for (tree, w) in c.support() {
        let side = tree.edges()[0].intersection(kept);
        if side.len() != 2 {
            continue;
        }
        let partner = |x: usize| side.contains(a) == side.contains(x);
        let slot = if partner(b) {
            0
        } else if partner(cc) {
            1
        } else {
            debug_assert!(partner(d));
            2
        };
        sums[slot] += w;
    }
    let [ab_cd, ac_bd, ad_bc] = sums;
    let holds = ab_cd == ad_bc;
    Ok(WdvvOutcome { ab_cd, ac_bd, ad_bc, holds })
}

/// Compares the `ab|cd` and `ad|bc` sides for the tropicalization of a
/// one-dimensional class. Marks are 0-based.
pub fn wdvv_check(v: &MonodromyVector, a: usize, b: usize, c: usize, d: usize) -> Result<WdvvOutcome> {
    if v.cycle_dimension() != 1 {
        return Err(Error::Precondition(format!("{v} does not give a one-dimensional class")));
    }
    pushforward(&TropicalCycle::tropicalize(v)?, [a, b, c, d])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn five_point_example() {
        let v = MonodromyVector::validate(10, &[3, 4, 5, 5, 6]).unwrap();
        let out = wdvv_check(&v, 0, 1, 2, 3).unwrap();
        assert!(out.holds);
        assert_eq!(out.ab_cd, ratio(1, 2));
        assert_eq!(out.ac_bd, ratio(1, 2));
        assert_eq!(out.ad_bc, ratio(1, 2));
        assert!(wdvv_check(&v, 2, 3, 0, 1).unwrap().holds);
        let numerical = MonodromyVector::validate(10, &[5, 5, 6, 6]).unwrap();
        assert!(matches!(wdvv_check(&numerical, 0, 1, 2, 3), Err(Error::Precondition(_))));
        assert!(matches!(wdvv_check(&v, 0, 1, 2, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn all_choices_hold_on_six_marks() {
        let r = 9;
        for m in crate::monodromy::vectors_of_dimension(6, r, 1).into_iter().step_by(97) {
            let c = TropicalCycle::tropicalize(&m).unwrap();
            for keep in MarkSet::full(6).subsets().filter(|s| s.len() == 4) {
                let k: Vec<usize> = keep.iter().collect();
                let out = pushforward(&c, [k[0], k[1], k[2], k[3]]).unwrap();
                assert!(out.holds && out.ab_cd == out.ac_bd, "{m} {keep}");
            }
        }
    }
}
