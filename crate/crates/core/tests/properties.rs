use proptest::prelude::*;

use rspin::dominance::{dominance_chain, dominance_compare, DominanceOrdering};
use rspin::invariants::closed_formula;
use rspin::marks::MarkSet;
use rspin::monodromy::numerical_vectors;
use rspin::rational::{format, parse, ratio};
use rspin::MonodromyVector;

fn numerical() -> impl Strategy<Value = MonodromyVector> {
    (4usize..=6, 2i64..=9, any::<prop::sample::Index>()).prop_filter_map("no numerical vectors", |(n, r, i)| {
        let all = numerical_vectors(n, r);
        (!all.is_empty()).then(|| all[i.index(all.len())].clone())
    })
}

fn numerical_pair() -> impl Strategy<Value = (MonodromyVector, MonodromyVector)> {
    (4usize..=6, 2i64..=9, any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_filter_map(
        "no numerical vectors",
        |(n, r, i, j)| {
            let all = numerical_vectors(n, r);
            (!all.is_empty()).then(|| (all[i.index(all.len())].clone(), all[j.index(all.len())].clone()))
        },
    )
}

proptest! {
    #[test]
    fn rational_text_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
        let x = ratio(p, q);
        prop_assert_eq!(parse(&format(&x)).unwrap(), x);
    }

    #[test]
    fn vector_text_round_trip(r in 2i64..=12, marks in prop::collection::vec(1i64..=12, 3..=8)) {
        if let Ok(v) = MonodromyVector::validate(r, &marks) {
            let back: MonodromyVector = v.to_string().parse().unwrap();
            prop_assert_eq!(back, v);
        }
    }

    #[test]
    fn complement_is_an_involution(bits in 0u64..(1 << 10), n in 10usize..=20) {
        let s = MarkSet::from_indices((0..10).filter(|i| bits >> i & 1 == 1));
        prop_assert_eq!(s.complement(n).complement(n), s);
        prop_assert_eq!(s.complement(n).len() + s.len(), n);
    }

    #[test]
    fn invariant_is_symmetric(v in numerical(), shift in 0usize..8) {
        let mut marks = v.marks().to_vec();
        let len = marks.len();
        marks.rotate_left(shift % len);
        marks.swap(0, 1);
        let w = MonodromyVector::validate(v.r(), &marks).unwrap();
        prop_assert_eq!(closed_formula(&v).unwrap(), closed_formula(&w).unwrap());
    }

    #[test]
    fn dominance_is_antisymmetric_and_witnessed((a, b) in numerical_pair()) {
        let ab = dominance_compare(&a, &b).unwrap();
        let ba = dominance_compare(&b, &a).unwrap();
        let flipped = match ab {
            DominanceOrdering::Less => DominanceOrdering::Greater,
            DominanceOrdering::Greater => DominanceOrdering::Less,
            other => other,
        };
        prop_assert_eq!(ba, flipped);
        if ab == DominanceOrdering::Less {
            let witness = dominance_chain(&a, &b).unwrap();
            prop_assert_eq!(witness.chain.len(), witness.moves.len() + 1);
            let mut last = witness.chain.last().unwrap().marks().to_vec();
            let mut target = a.marks().to_vec();
            last.sort_unstable();
            target.sort_unstable();
            prop_assert_eq!(last, target);
        }
    }
}
