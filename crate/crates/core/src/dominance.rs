//! Dominance (majorization) order on monodromy vectors with equal `n`, `r` and sum.
//!
//! Parts are sorted in descending order and compared by prefix sums, so a more
//! balanced vector is smaller. `a <= b` exactly when `a` can be reached from `b`
//! by moving single units ("cookies") from a larger part to a part at least two
//! smaller.

use crate::error::{Error, Result};
use crate::monodromy::MonodromyVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominanceOrdering {
    Less,
    Equal,
    Greater,
    Incomparable,
}

/// A chain of cookie moves from `b` down to `a`.
///
/// `chain[0]` is `b` as given; the last entry is a rearrangement of `a`.
/// `moves[t] = (donor, recipient)` are 0-based positions in `b`'s order and turn
/// `chain[t]` into `chain[t + 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceWitness {
    pub chain: Vec<MonodromyVector>,
    pub moves: Vec<(usize, usize)>,
}

fn descending_prefix_sums(marks: &[i64]) -> Vec<i64> {
    let mut sorted = marks.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted
        .iter()
        .scan(0, |acc, &m| {
            *acc += m;
            Some(*acc)
        })
        .collect()
}

fn check_compatible(a: &MonodromyVector, b: &MonodromyVector) -> Result<()> {
    if a.n() != b.n() || a.r() != b.r() || a.total() != b.total() {
        return Err(Error::Incompatible(format!(
            "{a} and {b} differ in n, r or total"
        )));
    }
    Ok(())
}

/// `true` when every descending prefix sum of `a` is at most that of `b`.
fn dominated_by(a: &[i64], b: &[i64]) -> bool {
    descending_prefix_sums(a)
        .iter()
        .zip(descending_prefix_sums(b))
        .all(|(x, y)| *x <= y)
}

pub fn dominance_compare(a: &MonodromyVector, b: &MonodromyVector) -> Result<DominanceOrdering> {
    check_compatible(a, b)?;
    let pa = descending_prefix_sums(a.marks());
    let pb = descending_prefix_sums(b.marks());
    let le = pa.iter().zip(&pb).all(|(x, y)| x <= y);
    let ge = pa.iter().zip(&pb).all(|(x, y)| x >= y);
    Ok(match (le, ge) {
        (true, true) => DominanceOrdering::Equal,
        (true, false) => DominanceOrdering::Less,
        (false, true) => DominanceOrdering::Greater,
        (false, false) => DominanceOrdering::Incomparable,
    })
}

/// Builds a cookie-move chain from `b` down to `a`. Requires `a <= b`.
///
/// Each step takes the first admissible move in the order: largest donor value,
/// smallest recipient value, lowest positions; a move is admissible when the
/// result still dominates `a`. Such a move exists whenever the current vector
/// strictly dominates `a`, and each move lowers the sum of squares, so the
/// search terminates.
pub fn dominance_chain(a: &MonodromyVector, b: &MonodromyVector) -> Result<DominanceWitness> {
    match dominance_compare(a, b)? {
        DominanceOrdering::Less | DominanceOrdering::Equal => {}
        other => {
            return Err(Error::NotComparable(format!("{a} vs {b} is {other:?}, not less")));
        }
    }
    let mut target = a.marks().to_vec();
    target.sort_unstable_by(|x, y| y.cmp(x));

    let mut chain = vec![b.clone()];
    let mut moves = Vec::new();
    let mut current = b.clone();
    loop {
        let mut sorted = current.marks().to_vec();
        sorted.sort_unstable_by(|x, y| y.cmp(x));
        if sorted == target {
            break;
        }
        let marks = current.marks();
        let n = marks.len();
        let mut candidates: Vec<(usize, usize)> = (0..n)
            .flat_map(|d| (0..n).map(move |rc| (d, rc)))
            .filter(|&(d, rc)| marks[d] >= marks[rc] + 2)
            .collect();
        candidates.sort_by_key(|&(d, rc)| (-marks[d], marks[rc], d, rc));
        let step = candidates.into_iter().find_map(|(d, rc)| {
            let next = current.moved(d, rc);
            dominated_by(&target, next.marks()).then_some((d, rc, next))
        });
        let Some((d, rc, next)) = step else {
            return Err(Error::NotComparable(format!("no cookie move from {current} towards {a}")));
        };
        moves.push((d, rc));
        chain.push(next.clone());
        current = next;
    }
    Ok(DominanceWitness { chain, moves })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::descending_tuples;

    fn v(r: i64, marks: &[i64]) -> MonodromyVector {
        MonodromyVector::validate(r, marks).unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(dominance_compare(&v(5, &[3, 3, 3, 3]), &v(5, &[2, 3, 3, 4])).unwrap(), DominanceOrdering::Less);
        assert_eq!(dominance_compare(&v(5, &[2, 3, 3, 4]), &v(5, &[3, 3, 3, 3])).unwrap(), DominanceOrdering::Greater);
        let a = v(10, &[3, 4, 5, 5, 6]);
        assert_eq!(dominance_compare(&a, &a).unwrap(), DominanceOrdering::Equal);
        // Order does not matter: a permutation compares equal.
        assert_eq!(dominance_compare(&a, &v(10, &[6, 5, 5, 4, 3])).unwrap(), DominanceOrdering::Equal);
        assert_eq!(
            dominance_compare(&v(9, &[9, 4, 4, 3]), &v(9, &[8, 8, 2, 2])).unwrap(),
            DominanceOrdering::Incomparable
        );
    }

    #[test]
    fn incompatible_inputs() {
        let a = v(5, &[3, 3, 3, 3]);
        assert!(matches!(dominance_compare(&a, &v(5, &[2, 3, 1])), Err(Error::Incompatible(_))));
        assert!(matches!(dominance_compare(&a, &v(5, &[1, 1, 1, 4])), Err(Error::Incompatible(_))));
        assert!(matches!(dominance_compare(&a, &v(6, &[3, 3, 4, 4])), Err(Error::Incompatible(_))));
    }

    #[test]
    fn chain_examples() {
        let w = dominance_chain(&v(5, &[3, 3, 3, 3]), &v(5, &[2, 3, 3, 4])).unwrap();
        assert_eq!(w.moves, vec![(3, 0)]);
        assert_eq!(w.chain.len(), 2);

        let a = v(8, &[4, 5, 5, 6, 7]);
        let b = v(8, &[3, 5, 5, 7, 7]);
        let w = dominance_chain(&a, &b).unwrap();
        assert_eq!(w.moves, vec![(3, 0)]);
        assert_eq!(w.chain.last().unwrap().marks(), &[4, 5, 5, 6, 7]);

        let w = dominance_chain(&a, &a).unwrap();
        assert!(w.moves.is_empty());
        assert_eq!(w.chain, vec![a.clone()]);

        assert!(matches!(dominance_chain(&b, &a), Err(Error::NotComparable(_))));
    }

    fn all_of_total(n: usize, r: i64, total: i64) -> Vec<MonodromyVector> {
        descending_tuples(n, r, total)
            .into_iter()
            .map(|m| MonodromyVector::new_unchecked(r, m))
            .collect()
    }

    /// Reachability by cookie moves, computed by breadth-first search on sorted
    /// vectors without using prefix sums.
    fn reachable_by_cookies(from: &[i64], to: &[i64]) -> bool {
        use std::collections::{HashSet, VecDeque};
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([from.to_vec()]);
        while let Some(cur) = queue.pop_front() {
            if cur == to {
                return true;
            }
            for d in 0..cur.len() {
                for rc in 0..cur.len() {
                    if cur[d] >= cur[rc] + 2 {
                        let mut next = cur.clone();
                        next[d] -= 1;
                        next[rc] += 1;
                        next.sort_unstable_by(|x, y| y.cmp(x));
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        false
    }

    #[test]
    fn partial_order_and_cookie_equivalence() {
        for n in 3..=5usize {
            for r in 2..=8i64 {
                for total in n as i64..=(n as i64 * r).min(40) {
                    if (-2 + n as i64 - total).rem_euclid(r) != 0 {
                        continue;
                    }
                    let all = all_of_total(n, r, total);
                    for a in &all {
                        for b in &all {
                            let ab = dominance_compare(a, b).unwrap();
                            let ba = dominance_compare(b, a).unwrap();
                            let flipped = match ab {
                                DominanceOrdering::Less => DominanceOrdering::Greater,
                                DominanceOrdering::Greater => DominanceOrdering::Less,
                                o => o,
                            };
                            assert_eq!(ba, flipped);
                            assert_eq!(ab == DominanceOrdering::Equal, a == b);
                            let le = matches!(ab, DominanceOrdering::Less | DominanceOrdering::Equal);
                            assert_eq!(le, reachable_by_cookies(b.marks(), a.marks()), "{a} {b}");
                            let chain = dominance_chain(a, b);
                            assert_eq!(chain.is_ok(), le);
                            if let Ok(w) = chain {
                                for (pair, &(d, rc)) in w.chain.windows(2).zip(&w.moves) {
                                    assert!(pair[1].is_neighbor_of(&pair[0]));
                                    assert!(pair[0].marks()[d] >= pair[0].marks()[rc] + 2);
                                    assert_ne!(
                                        dominance_compare(&pair[1], &pair[0]).unwrap(),
                                        DominanceOrdering::Greater
                                    );
                                }
                            }
                            for c in &all {
                                if le && matches!(dominance_compare(b, c).unwrap(), DominanceOrdering::Less | DominanceOrdering::Equal) {
                                    assert!(matches!(
                                        dominance_compare(a, c).unwrap(),
                                        DominanceOrdering::Less | DominanceOrdering::Equal
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
