use std::collections::BTreeSet;

use fishburn_core::genfun::{series_add, series_mul, series_pow, TruncatedSeries};
use fishburn_core::matchings::{
    confused_arcs, embraced_nested_openers, from_inversion_table, insert_confused, is_zero_alignment,
    nesting_count, remove_confused, MarkedMatching,
};
use fishburn_core::meshpat::{
    builtin, count_occurrences, insert_sigma, involution, occurrences, remove_sigma, MarkedPermutation,
};
use fishburn_core::perm::{inversion_count, inversions};
use fishburn_core::posets::{
    incomparable_pairs, insert_mislabelings, mislabelings, remove_mislabelings, FactorialPoset, MarkedPoset,
};
use fishburn_core::{InversionTable, Permutation};
use proptest::prelude::*;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn table(max: usize) -> impl Strategy<Value = InversionTable> {
    (0..=max)
        .prop_flat_map(|n| (0..n).map(|i| 0..=i).collect::<Vec<_>>())
        .prop_map(|v| InversionTable::new(v).unwrap())
}

fn pick<T: Clone>(items: &[T], mask: u64) -> Vec<T> {
    items
        .iter()
        .enumerate()
        .filter(|(i, _)| *i < 64 && mask >> i & 1 == 1)
        .map(|(_, x)| x.clone())
        .collect()
}

fn series(n: usize) -> impl Strategy<Value = TruncatedSeries> {
    proptest::collection::vec((0..=n, 0..4usize, -5i64..=5), 0..6).prop_map(move |terms| {
        terms.into_iter().fold(TruncatedSeries::zero(n), |acc, (i, j, c)| {
            series_add(&acc, &TruncatedSeries::monomial(n, i, j, c)).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sigma_insertion_round_trips(p in permutation(8), mask in any::<u64>()) {
        let marks = pick(&inversions(&p), mask);
        let k = marks.len();
        let mp = MarkedPermutation::with_inversions(p.clone(), marks).unwrap();
        let out = insert_sigma(&mp).unwrap();
        prop_assert_eq!(out.perm().len(), p.len() + k);
        prop_assert_eq!(out.marked_occurrences().len(), k);
        prop_assert_eq!(remove_sigma(&out).unwrap(), mp);
    }

    #[test]
    fn sigma_removal_round_trips(p in permutation(9), mask in any::<u64>()) {
        let sigma = builtin("sigma").unwrap();
        let starts: Vec<usize> = occurrences(&sigma, &p).iter().filter_map(|o| o.first()).collect();
        let mp = MarkedPermutation::with_sigma_marks(p, pick(&starts, mask)).unwrap();
        prop_assert_eq!(insert_sigma(&remove_sigma(&mp).unwrap()).unwrap(), mp);
    }

    #[test]
    fn involution_swaps_p1_and_q1(p in permutation(10)) {
        let [p1, p2, q1] = ["p1", "p2", "q1"].map(|n| builtin(n).unwrap());
        let image = involution(&p);
        prop_assert_eq!(involution(&image), p.clone());
        prop_assert_eq!(count_occurrences(&p1, &image), count_occurrences(&q1, &p));
        prop_assert_eq!(count_occurrences(&q1, &image), count_occurrences(&p1, &p));
        prop_assert_eq!(count_occurrences(&p2, &image), count_occurrences(&p2, &p));
    }

    #[test]
    fn p1_and_q1_are_determined_by_their_second_entry(p in permutation(9)) {
        for name in ["p1", "q1"] {
            let occ = occurrences(&builtin(name).unwrap(), &p);
            let seconds: BTreeSet<_> = occ.iter().map(|o| o.positions()[1]).collect();
            prop_assert_eq!(seconds.len(), occ.len());
        }
    }

    #[test]
    fn inversions_never_exceed_the_maximum(p in permutation(9)) {
        let n = p.len();
        let count = inversion_count(&p);
        prop_assert!(count <= n * n.saturating_sub(1) / 2);
        let decreasing = p.values().windows(2).all(|w| w[0] > w[1]);
        prop_assert_eq!(count == n * n.saturating_sub(1) / 2, decreasing);
    }

    #[test]
    fn matchings_from_tables(t in table(8)) {
        let m = from_inversion_table(&t);
        prop_assert!(is_zero_alignment(&m));
        prop_assert_eq!(nesting_count(&m), t.sum());
    }

    #[test]
    fn confused_insertion_round_trips(t in table(6), mask in any::<u64>()) {
        let m = from_inversion_table(&t);
        let marks = pick(&embraced_nested_openers(&m), mask);
        let k = marks.len();
        let mm = MarkedMatching::with_openers(m, marks).unwrap();
        let out = insert_confused(&mm).unwrap();
        prop_assert!(is_zero_alignment(out.matching()));
        let confused = confused_arcs(out.matching());
        prop_assert_eq!(out.marked_confused().len(), k);
        prop_assert!(out.marked_confused().iter().all(|a| confused.contains(a)));
        prop_assert_eq!(remove_confused(&out).unwrap(), mm);
    }

    #[test]
    fn confused_removal_round_trips(t in table(8), mask in any::<u64>()) {
        let m = from_inversion_table(&t);
        let arcs: Vec<_> = confused_arcs(&m).into_iter().collect();
        let mm = MarkedMatching::with_confused(m, pick(&arcs, mask)).unwrap();
        prop_assert_eq!(insert_confused(&remove_confused(&mm).unwrap()).unwrap(), mm);
    }

    #[test]
    fn mislabeling_insertion_round_trips(t in table(7), mask in any::<u64>()) {
        let p = FactorialPoset::from_inversion_table(&t);
        let marks = pick(&incomparable_pairs(&p), mask);
        let mp = MarkedPoset::with_pairs(p, marks).unwrap();
        let out = insert_mislabelings(&mp).unwrap();
        prop_assert!(FactorialPoset::new(out.poset().bounds().to_vec()).is_ok());
        let found = mislabelings(out.poset());
        prop_assert!(out.marked_mislabelings().iter().all(|j| found.contains(j)));
        prop_assert_eq!(remove_mislabelings(&out).unwrap(), mp);
    }

    #[test]
    fn mislabeling_removal_round_trips(t in table(9), mask in any::<u64>()) {
        let p = FactorialPoset::from_inversion_table(&t);
        let labels: Vec<usize> = mislabelings(&p).into_iter().collect();
        let mp = MarkedPoset::with_mislabelings(p, pick(&labels, mask)).unwrap();
        prop_assert_eq!(insert_mislabelings(&remove_mislabelings(&mp).unwrap()).unwrap(), mp);
    }

    #[test]
    fn series_ring_laws(a in series(4), b in series(4), c in series(4)) {
        let ab = series_mul(&a, &b).unwrap();
        prop_assert_eq!(series_mul(&ab, &c).unwrap(), series_mul(&a, &series_mul(&b, &c).unwrap()).unwrap());
        prop_assert_eq!(ab.clone(), series_mul(&b, &a).unwrap());
        let left = series_mul(&a, &series_add(&b, &c).unwrap()).unwrap();
        let right = series_add(&ab, &series_mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(series_pow(&a, 3), series_mul(&a, &series_mul(&a, &a).unwrap()).unwrap());
    }
}
