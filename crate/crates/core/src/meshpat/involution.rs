//! The involution exchanging occurrences of `p1` and `q1`.
//!
//! Every occurrence of either pattern hangs off a pair `a ... a-1` with `a`
//! to the left, some entry below `a - 1` further right, and a nonempty gap
//! between them holding only entries above `a` ("high") or below `a - 1`
//! ("low"). The pair is a `p1` occurrence when the gap opens high and a `q1`
//! occurrence when it closes high. Pairs whose gap opens and closes on
//! different sides are flipped: the gap is cut into maximal high and low runs
//! and consecutive runs are swapped two at a time, so `H1 L1 H2 L2` becomes
//! `L1 H1 L2 H2`. Entries keep their order within a run.

use crate::perm::Permutation;

struct Gap {
    start: usize,
    end: usize,
}

// Gap of the pair topped by `a`, if that pair should be flipped.
fn flippable_gap(values: &[usize], pos: &[usize], a: usize) -> Option<Gap> {
    let (top, bottom) = (pos[a], pos[a - 1]);
    if top + 1 >= bottom {
        return None;
    }
    let below_after = values[bottom + 1..].iter().any(|&v| v < a - 1);
    let opens_high = values[top + 1] > a;
    let closes_high = values[bottom - 1] > a;
    (below_after && opens_high != closes_high).then_some(Gap {
        start: top + 1,
        end: bottom,
    })
}

fn swap_runs(gap: &mut [usize], a: usize) {
    let mut runs: Vec<&[usize]> = Vec::new();
    let mut rest: &[usize] = gap;
    while let Some(&first) = rest.first() {
        let len = rest
            .iter()
            .take_while(|&&v| (v > a) == (first > a))
            .count();
        let (run, tail) = rest.split_at(len);
        runs.push(run);
        rest = tail;
    }
    debug_assert!(runs.len().is_multiple_of(2));
    let swapped: Vec<usize> = runs
        .chunks(2)
        .flat_map(|c| c[1].iter().chain(c[0]).copied())
        .collect();
    gap.copy_from_slice(&swapped);
}

fn positions(values: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; values.len() + 1];
    for (i, &v) in values.iter().enumerate() {
        pos[v] = i;
    }
    pos
}

pub fn involution(p: &Permutation) -> Permutation {
    let mut values = p.values().to_vec();
    let pos = positions(&values);
    let tops: Vec<usize> = (2..=values.len())
        .filter(|&a| flippable_gap(&values, &pos, a).is_some())
        .collect();
    for a in tops {
        let pos = positions(&values);
        let gap = flippable_gap(&values, &pos, a).expect("flips leave other pairs alone");
        swap_runs(&mut values[gap.start..gap.end], a);
    }
    Permutation::from_vec_unchecked(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meshpat::{builtin, count_occurrences};

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn fixed_examples() {
        assert_eq!(involution(&perm("123")), perm("123"));
        assert_eq!(involution(&perm("3421")), perm("3421"));
        assert_eq!(involution(&Permutation::identity(0)), Permutation::identity(0));
    }

    #[test]
    fn single_pairs() {
        assert_eq!(involution(&perm("45132")), perm("41532"));
        assert_eq!(involution(&perm("41532")), perm("45132"));
        // runs 1 3 | 7 | 2 | 8 swap pairwise
        assert_eq!(involution(&perm("61372854")), perm("67138254"));
    }

    #[test]
    fn nested_pairs_flip_together() {
        let p = perm("51728643");
        let image = involution(&p);
        assert_eq!(image, perm("57816243"));
        assert_eq!(involution(&image), p);
    }

    #[test]
    fn swaps_counts_and_is_self_inverse_up_to_six() {
        let [p1, p2, q1] = ["p1", "p2", "q1"].map(|n| builtin(n).unwrap());
        for n in 0..=6 {
            for p in Permutation::all(n) {
                let image = involution(&p);
                assert_eq!(involution(&image), p, "not an involution at {p}");
                assert_eq!(count_occurrences(&p1, &image), count_occurrences(&q1, &p), "{p}");
                assert_eq!(count_occurrences(&q1, &image), count_occurrences(&p1, &p), "{p}");
                assert_eq!(count_occurrences(&p2, &image), count_occurrences(&p2, &p), "{p}");
            }
        }
    }
}
