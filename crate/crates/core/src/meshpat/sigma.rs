//! Marked inversions <-> marked occurrences of sigma.
//!
//! Each marked inversion `(a, b)` inserts the value `b + 1` directly in front
//! of `a` (after shifting every value above `b` up by one); the new entry is
//! the first entry of a sigma occurrence `(b+1, a+1, b)`. Removal undoes the
//! rightmost marked occurrence first.

use std::collections::BTreeSet;

use super::{builtin, occurrences, Occurrence};
use crate::error::{Error, Result};
use crate::marking::Marking;
use crate::perm::{inversions, InversionPair, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPermutation {
    perm: Permutation,
    marked_inversions: Marking<InversionPair>,
    /// Positions of the first entries of marked sigma occurrences.
    marked_occurrences: Marking<usize>,
}

impl MarkedPermutation {
    pub fn unmarked(perm: Permutation) -> Self {
        MarkedPermutation {
            perm,
            marked_inversions: Marking::empty(),
            marked_occurrences: Marking::empty(),
        }
    }

    pub fn with_inversions(
        perm: Permutation,
        marks: impl IntoIterator<Item = InversionPair>,
    ) -> Result<Self> {
        let valid: BTreeSet<_> = inversions(&perm).into_iter().collect();
        let marks: BTreeSet<_> = marks.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !valid.contains(m)) {
            return Err(Error::InvalidMarking(format!(
                "{bad} is not an inversion of {perm}"
            )));
        }
        Ok(MarkedPermutation {
            perm,
            marked_inversions: Marking::from_set(marks),
            marked_occurrences: Marking::empty(),
        })
    }

    /// Marks sigma occurrences by the position of their first entry.
    pub fn with_sigma_marks(
        perm: Permutation,
        first_positions: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let sigma = builtin("sigma")?;
        let starts: BTreeSet<usize> = occurrences(&sigma, &perm)
            .iter()
            .filter_map(Occurrence::first)
            .collect();
        let marks: BTreeSet<usize> = first_positions.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !starts.contains(m)) {
            return Err(Error::InvalidMarking(format!(
                "no sigma occurrence of {perm} starts at position {bad}"
            )));
        }
        Ok(MarkedPermutation {
            perm,
            marked_inversions: Marking::empty(),
            marked_occurrences: Marking::from_set(marks),
        })
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn marked_inversions(&self) -> &Marking<InversionPair> {
        &self.marked_inversions
    }

    pub fn marked_occurrence_starts(&self) -> &Marking<usize> {
        &self.marked_occurrences
    }

    pub fn marked_occurrences(&self) -> Vec<Occurrence> {
        self.marked_occurrences
            .iter()
            .map(|&i| sigma_occurrence_starting_at(&self.perm, i).expect("validated mark"))
            .collect()
    }
}

/// The sigma occurrence whose first entry sits at 1-based `position`.
///
/// The first entry `c` fixes the rest: the second entry is its right
/// neighbour and the third is the value `c - 1`.
pub fn sigma_occurrence_starting_at(p: &Permutation, position: usize) -> Option<Occurrence> {
    if position == 0 || position >= p.len() {
        return None;
    }
    let c = p.at(position);
    if c < 2 || p.at(position + 1) <= c {
        return None;
    }
    let third = p.position_of(c - 1)?;
    (third > position + 1).then(|| Occurrence::new(vec![position, position + 1, third]))
}

// Entries are tracked by id so marks survive the value shifts.
struct Tracked {
    order: Vec<usize>,
    values: Vec<usize>,
}

impl Tracked {
    fn new(p: &Permutation) -> Self {
        Tracked {
            order: (0..p.len()).collect(),
            values: p.values().to_vec(),
        }
    }

    fn index_of(&self, id: usize) -> Option<usize> {
        self.order.iter().position(|&x| x == id)
    }

    fn perm(&self) -> Permutation {
        Permutation::from_vec_unchecked(self.order.iter().map(|&id| self.values[id]).collect())
    }
}

pub fn insert_sigma(mp: &MarkedPermutation) -> Result<MarkedPermutation> {
    if !mp.marked_occurrences.is_empty() {
        return Err(Error::InvalidMarking(
            "expected marked inversions, found marked occurrences".into(),
        ));
    }
    let p = &mp.perm;
    let order = inversions(p);
    let mut t = Tracked::new(p);
    let mut inserted = Vec::new();
    for pair in order.iter().filter(|x| mp.marked_inversions.contains(x)) {
        let first = p.position_of(pair.first).expect("validated mark") - 1;
        let second = p.position_of(pair.second).expect("validated mark") - 1;
        let low = t.values[second];
        for v in t.values.iter_mut() {
            if *v > low {
                *v += 1;
            }
        }
        let id = t.values.len();
        t.values.push(low + 1);
        let at = t.index_of(first).expect("tracked entry");
        t.order.insert(at, id);
        inserted.push(id);
    }
    let starts: BTreeSet<usize> = inserted
        .iter()
        .map(|&id| t.index_of(id).expect("inserted entry") + 1)
        .collect();
    Ok(MarkedPermutation {
        perm: t.perm(),
        marked_inversions: Marking::empty(),
        marked_occurrences: Marking::from_set(starts),
    })
}

pub fn remove_sigma(mp: &MarkedPermutation) -> Result<MarkedPermutation> {
    if !mp.marked_inversions.is_empty() {
        return Err(Error::InvalidMarking(
            "expected marked occurrences, found marked inversions".into(),
        ));
    }
    let mut t = Tracked::new(&mp.perm);
    let mut marked: BTreeSet<usize> = mp.marked_occurrences.iter().map(|&i| i - 1).collect();
    let mut removed = BTreeSet::new();
    let mut recorded = Vec::new();

    while let Some(&id) = marked.iter().max_by_key(|&&id| t.index_of(id)) {
        marked.remove(&id);
        let at = t.index_of(id).expect("tracked entry");
        let current = t.perm();
        let occ = sigma_occurrence_starting_at(&current, at + 1).ok_or_else(|| {
            Error::NotInImage(format!(
                "marked entry at position {} of {current} no longer starts a sigma occurrence",
                at + 1
            ))
        })?;
        let big = t.order[occ.positions()[1] - 1];
        let small = t.order[occ.positions()[2] - 1];
        let c = t.values[id];
        t.order.remove(at);
        for v in t.values.iter_mut() {
            if *v > c {
                *v -= 1;
            }
        }
        removed.insert(id);
        recorded.push((big, small));
    }

    if recorded
        .iter()
        .any(|(a, b)| removed.contains(a) || removed.contains(b))
    {
        return Err(Error::NotInImage(
            "a recovered inversion uses an entry that was itself removed".into(),
        ));
    }
    let pairs: BTreeSet<InversionPair> = recorded
        .iter()
        .map(|&(a, b)| InversionPair::new(t.values[a], t.values[b]))
        .collect();
    if pairs.len() != recorded.len() {
        return Err(Error::NotInImage("two marks recover the same inversion".into()));
    }
    let result = MarkedPermutation::with_inversions(t.perm(), pairs)
        .map_err(|e| Error::NotInImage(e.to_string()))?;
    if insert_sigma(&result)? != *mp {
        return Err(Error::NotInImage(format!(
            "re-inserting {:?} does not reproduce the input",
            result.marked_inversions
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marking::subsets;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn pairs(list: &[(usize, usize)]) -> Vec<InversionPair> {
        list.iter().map(|&(a, b)| InversionPair::new(a, b)).collect()
    }

    #[test]
    fn worked_example() {
        let mp = MarkedPermutation::with_inversions(perm("246531"), pairs(&[(4, 1), (6, 1), (6, 5)]))
            .unwrap();
        let out = insert_sigma(&mp).unwrap();
        assert_eq!(out.perm(), &perm("436289751"));
        let starts: Vec<_> = out.marked_occurrence_starts().iter().copied().collect();
        assert_eq!(starts, vec![2, 4, 5]);
        let firsts: Vec<_> = starts.iter().map(|&i| out.perm().at(i)).collect();
        assert_eq!(firsts, vec![3, 2, 8]);

        let back = remove_sigma(&out).unwrap();
        assert_eq!(back, mp);
    }

    #[test]
    fn single_mark() {
        let mp = MarkedPermutation::with_inversions(perm("21"), pairs(&[(2, 1)])).unwrap();
        let out = insert_sigma(&mp).unwrap();
        assert_eq!(out.perm(), &perm("231"));
        assert_eq!(out.marked_occurrences(), vec![Occurrence::new(vec![1, 2, 3])]);
        assert_eq!(remove_sigma(&out).unwrap(), mp);
    }

    #[test]
    fn empty_marks_are_fixed() {
        let mp = MarkedPermutation::unmarked(perm("3142"));
        assert_eq!(insert_sigma(&mp).unwrap(), mp);
        assert_eq!(remove_sigma(&mp).unwrap(), mp);
    }

    #[test]
    fn rejects_bad_marks() {
        assert!(MarkedPermutation::with_inversions(perm("123"), pairs(&[(2, 1)])).is_err());
        assert!(MarkedPermutation::with_sigma_marks(perm("123"), [1]).is_err());
        let occ = MarkedPermutation::with_sigma_marks(perm("231"), [1]).unwrap();
        assert!(insert_sigma(&occ).is_err());
    }

    #[test]
    fn direct_lookup_agrees_with_engine() {
        let sigma = builtin("sigma").unwrap();
        for n in 0..=6 {
            for p in Permutation::all(n) {
                let engine = occurrences(&sigma, &p);
                let direct: Vec<_> = (1..=n)
                    .filter_map(|i| sigma_occurrence_starting_at(&p, i))
                    .collect();
                assert_eq!(engine, direct, "{p}");
            }
        }
    }

    #[test]
    fn inserted_entries_are_exactly_the_marked_starts() {
        for n in 0..=5 {
            for p in Permutation::all(n) {
                let inv = inversions(&p);
                for marks in subsets(&inv) {
                    let mp = MarkedPermutation::with_inversions(p.clone(), marks.clone()).unwrap();
                    let out = insert_sigma(&mp).unwrap();
                    assert_eq!(out.perm().len(), n + marks.len());
                    for &s in out.marked_occurrence_starts() {
                        assert!(sigma_occurrence_starting_at(out.perm(), s).is_some());
                    }
                    assert_eq!(out.marked_occurrence_starts().len(), marks.len());
                }
            }
        }
    }

    #[test]
    fn round_trips_in_both_directions() {
        let sigma = builtin("sigma").unwrap();
        for n in 0..=5 {
            for p in Permutation::all(n) {
                let inv = inversions(&p);
                for marks in subsets(&inv) {
                    let mp = MarkedPermutation::with_inversions(p.clone(), marks).unwrap();
                    assert_eq!(remove_sigma(&insert_sigma(&mp).unwrap()).unwrap(), mp);
                }
                let starts: Vec<usize> = occurrences(&sigma, &p)
                    .iter()
                    .filter_map(Occurrence::first)
                    .collect();
                for marks in subsets(&starts) {
                    let mp = MarkedPermutation::with_sigma_marks(p.clone(), marks).unwrap();
                    let back = remove_sigma(&mp).unwrap();
                    assert_eq!(insert_sigma(&back).unwrap(), mp);
                }
            }
        }
    }
}
