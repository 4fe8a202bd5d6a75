//! Mesh patterns and their occurrences in permutations.
//!
//! A mesh pattern is a classical pattern `tau` of length `k` together with a
//! set of shaded cells `(col, row)` of its `(k+1) x (k+1)` grid. An occurrence
//! of the classical pattern is an occurrence of the mesh pattern when no
//! entry of the host permutation falls inside a shaded cell's region.

mod involution;
mod sigma;

pub use involution::involution;
pub use sigma::{insert_sigma, remove_sigma, sigma_occurrence_starting_at, MarkedPermutation};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::error::{Error, ParseError, Result};
use crate::perm::{parse_number_list, Permutation};

pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MeshPattern {
    pattern: Permutation,
    shading: BTreeSet<Cell>,
}

impl MeshPattern {
    pub fn new(pattern: Permutation, shading: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let k = pattern.len();
        let shading: BTreeSet<Cell> = shading.into_iter().collect();
        if let Some(&(c, r)) = shading.iter().find(|&&(c, r)| c > k || r > k) {
            return Err(Error::InvalidPattern(format!(
                "cell ({c},{r}) outside the {0}x{0} grid",
                k + 1
            )));
        }
        Ok(MeshPattern { pattern, shading })
    }

    /// The classical pattern with nothing shaded.
    pub fn classical(pattern: Permutation) -> Self {
        MeshPattern {
            pattern,
            shading: BTreeSet::new(),
        }
    }

    pub fn pattern(&self) -> &Permutation {
        &self.pattern
    }

    pub fn shading(&self) -> &BTreeSet<Cell> {
        &self.shading
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    pub fn is_shaded(&self, col: usize, row: usize) -> bool {
        self.shading.contains(&(col, row))
    }
}

impl fmt::Display for MeshPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pattern.to_digits() {
            Some(digits) => f.write_str(&digits)?,
            None => write!(f, "{}", self.pattern)?,
        }
        for (i, (c, r)) in self.shading.iter().enumerate() {
            f.write_str(if i == 0 { "|" } else { ";" })?;
            write!(f, "{c},{r}")?;
        }
        Ok(())
    }
}

impl FromStr for MeshPattern {
    type Err = Error;

    /// `pattern := perm [ "|" cell (";" cell)* ]`, `cell := col "," row`.
    fn from_str(text: &str) -> Result<Self> {
        parse_pattern(text)
    }
}

pub fn parse_pattern(text: &str) -> Result<MeshPattern> {
    let (perm_text, cells_text) = match text.find('|') {
        Some(bar) => (&text[..bar], Some((bar + 1, &text[bar + 1..]))),
        None => (text, None),
    };
    if perm_text.trim().is_empty() && cells_text.is_none() && !text.is_empty() {
        return Err(ParseError::new(0, "empty pattern").into());
    }
    let values = parse_number_list(perm_text, 0, true)?;
    let pattern = Permutation::new(values).map_err(|e| ParseError::new(0, e.to_string()))?;
    let k = pattern.len();

    let mut shading = BTreeSet::new();
    if let Some((start, cells)) = cells_text {
        let mut offset = start;
        for piece in cells.split(';') {
            let lead = piece.len() - piece.trim_start().len();
            let coords = parse_number_list(piece, offset, false)?;
            if coords.len() != 2 {
                return Err(ParseError::new(offset + lead, "a cell is written `col,row`").into());
            }
            let (col, row) = (coords[0], coords[1]);
            if col > k {
                return Err(ParseError::new(
                    offset + lead,
                    format!("cell column {col} exceeds pattern length {k}"),
                )
                .into());
            }
            if row > k {
                return Err(ParseError::new(
                    offset + lead,
                    format!("cell row {row} exceeds pattern length {k}"),
                )
                .into());
            }
            shading.insert((col, row));
            offset += piece.len() + 1;
        }
    }
    Ok(MeshPattern { pattern, shading })
}

pub const BUILTIN_NAMES: [&str; 9] = [
    "sigma",
    "sigma-321",
    "sigma-132",
    "upsilon",
    "p1",
    "p2",
    "q1",
    "q2",
    "inv",
];

fn full_column(col: usize, k: usize) -> impl Iterator<Item = Cell> {
    (0..=k).map(move |r| (col, r))
}

fn full_row(row: usize, k: usize) -> impl Iterator<Item = Cell> {
    (0..=k).map(move |c| (c, row))
}

fn bivincular(digits: &str, col: usize, row: usize) -> MeshPattern {
    let pattern: Permutation = digits.parse().expect("builtin permutation");
    let k = pattern.len();
    let cells = full_column(col, k).chain(full_row(row, k));
    MeshPattern::new(pattern, cells).expect("builtin shading")
}

fn with_extra(mut base: MeshPattern, extra: &[Cell]) -> MeshPattern {
    base.shading.extend(extra.iter().copied());
    base
}

pub fn builtin(name: &str) -> Result<MeshPattern> {
    let pattern = match name {
        "sigma" => bivincular("231", 1, 1),
        "sigma-321" => bivincular("321", 1, 1),
        "sigma-132" => bivincular("132", 1, 1),
        "upsilon" => bivincular("231", 2, 1),
        "p2" => with_extra(bivincular("231", 1, 1), &[(3, 0)]),
        "q2" => with_extra(bivincular("231", 2, 1), &[(3, 0)]),
        "p1" => with_extra(bivincular("3421", 1, 2), &[(4, 0), (4, 1)]),
        "q1" => with_extra(bivincular("3421", 2, 2), &[(4, 0), (4, 1)]),
        "inv" => MeshPattern::classical("21".parse().expect("builtin permutation")),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    };
    Ok(pattern)
}

/// Either a builtin name or pattern DSL text.
pub fn resolve_pattern(spec: &str) -> Result<MeshPattern> {
    match builtin(spec) {
        Ok(p) => Ok(p),
        Err(Error::UnknownBuiltin(_)) if spec.chars().next().is_some_and(|c| c.is_ascii_digit()) => {
            parse_pattern(spec)
        }
        Err(e) => Err(e),
    }
}

/// Strictly increasing 1-based positions of an occurrence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Occurrence {
    positions: Vec<usize>,
}

impl Occurrence {
    pub fn new(positions: Vec<usize>) -> Self {
        Occurrence { positions }
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn first(&self) -> Option<usize> {
        self.positions.first().copied()
    }

    pub fn values(&self, host: &Permutation) -> Vec<usize> {
        self.positions.iter().map(|&i| host.at(i)).collect()
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

struct Matcher<'a> {
    pattern: &'a MeshPattern,
    host: &'a [usize],
    chosen: Vec<usize>,
    // index into `chosen` holding pattern value v + 1
    by_value: Vec<usize>,
}

impl Matcher<'_> {
    fn shading_clear(&self) -> bool {
        let n = self.host.len();
        let k = self.chosen.len();
        let pos = |a: usize| -> usize {
            match a {
                0 => 0,
                a if a == k + 1 => n + 1,
                a => self.chosen[a - 1] + 1,
            }
        };
        let val = |b: usize| -> usize {
            match b {
                0 => 0,
                b if b == k + 1 => n + 1,
                b => self.host[self.chosen[self.by_value[b - 1]]],
            }
        };
        self.pattern.shading.iter().all(|&(a, b)| {
            let (plo, phi) = (pos(a), pos(a + 1));
            let (vlo, vhi) = (val(b), val(b + 1));
            (plo + 1..phi).all(|q| {
                let v = self.host[q - 1];
                v <= vlo || v >= vhi
            })
        })
    }

    fn extend(&mut self, from: usize, out: &mut impl FnMut(&[usize])) {
        let k = self.pattern.len();
        let m = self.chosen.len();
        if m == k {
            if self.shading_clear() {
                out(&self.chosen);
            }
            return;
        }
        let tau = self.pattern.pattern.values();
        // leave room for the remaining k - m - 1 entries
        for i in from..=self.host.len() - (k - m) {
            let v = self.host[i];
            let consistent = self
                .chosen
                .iter()
                .enumerate()
                .all(|(t, &j)| (self.host[j] < v) == (tau[t] < tau[m]));
            if consistent {
                self.chosen.push(i);
                self.extend(i + 1, out);
                self.chosen.pop();
            }
        }
    }
}

fn visit_occurrences(pattern: &MeshPattern, host: &Permutation, mut out: impl FnMut(&[usize])) {
    let k = pattern.len();
    if k > host.len() {
        return;
    }
    let mut by_value = vec![0; k];
    for (i, &v) in pattern.pattern.values().iter().enumerate() {
        by_value[v - 1] = i;
    }
    let mut matcher = Matcher {
        pattern,
        host: host.values(),
        chosen: Vec::with_capacity(k),
        by_value,
    };
    matcher.extend(0, &mut out);
}

/// All occurrences of `pattern` in `host`, sorted by position tuple.
pub fn occurrences(pattern: &MeshPattern, host: &Permutation) -> Vec<Occurrence> {
    let mut found = Vec::new();
    visit_occurrences(pattern, host, |idx| {
        found.push(Occurrence::new(idx.iter().map(|i| i + 1).collect()));
    });
    found
}

pub fn count_occurrences(pattern: &MeshPattern, host: &Permutation) -> usize {
    let mut count = 0;
    visit_occurrences(pattern, host, |_| count += 1);
    count
}

/// Number of permutations of size `n` with each occurrence count.
pub fn distribution(pattern: &MeshPattern, n: usize) -> BTreeMap<usize, BigUint> {
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for p in Permutation::all(n) {
        *counts.entry(count_occurrences(pattern, &p)).or_default() += 1;
    }
    counts.into_iter().map(|(k, c)| (k, BigUint::from(c))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn dist(name: &str, n: usize) -> Vec<(usize, u64)> {
        distribution(&builtin(name).unwrap(), n)
            .into_iter()
            .map(|(k, c)| (k, u64::try_from(c).unwrap()))
            .collect()
    }

    #[test]
    fn parses_sigma() {
        let sigma: MeshPattern = "231|1,0;1,1;1,2;1,3;0,1;2,1;3,1".parse().unwrap();
        assert_eq!(sigma, builtin("sigma").unwrap());
        assert_eq!(sigma.shading().len(), 7);
        assert_eq!(sigma.to_string(), "231|0,1;1,0;1,1;1,2;1,3;2,1;3,1");
    }

    #[test]
    fn parses_classical_and_comma_forms() {
        assert_eq!("21".parse::<MeshPattern>().unwrap(), builtin("inv").unwrap());
        let long: MeshPattern = "2,1,3,4,5,6,7,8,9,10|0,0".parse().unwrap();
        assert_eq!(long.len(), 10);
        assert_eq!(long.to_string().parse::<MeshPattern>().unwrap(), long);
    }

    #[test]
    fn parse_errors_carry_offsets() {
        match "21|5,0".parse::<MeshPattern>() {
            Err(Error::Parse(e)) => {
                assert_eq!(e.offset, 3);
                assert!(e.message.contains("column"));
            }
            other => panic!("unexpected {other:?}"),
        }
        match "21|0,1;1,x".parse::<MeshPattern>() {
            Err(Error::Parse(e)) => assert_eq!(e.offset, 9),
            other => panic!("unexpected {other:?}"),
        }
        assert!("22".parse::<MeshPattern>().is_err());
        assert!("21|0".parse::<MeshPattern>().is_err());
        assert!("21|".parse::<MeshPattern>().is_err());
    }

    #[test]
    fn builtin_sizes() {
        assert_eq!(builtin("sigma").unwrap().shading().len(), 7);
        assert_eq!(builtin("p1").unwrap().shading().len(), 11);
        assert_eq!(builtin("q1").unwrap().shading().len(), 11);
        assert_eq!(builtin("p2").unwrap().shading().len(), 8);
        assert!(builtin("inv").unwrap().shading().is_empty());
        assert!(matches!(builtin("tau"), Err(Error::UnknownBuiltin(_))));
        for name in BUILTIN_NAMES {
            assert!(builtin(name).is_ok());
        }
    }

    #[test]
    fn mesh_example_excludes_475() {
        let host = perm("4671253");
        let classical = MeshPattern::classical(perm("132"));
        let values: Vec<_> = occurrences(&classical, &host)
            .iter()
            .map(|o| o.values(&host))
            .collect();
        assert_eq!(values, vec![vec![4, 6, 5], vec![4, 7, 5], vec![1, 5, 3], vec![2, 5, 3]]);

        let mesh = builtin("sigma-132").unwrap();
        let found = occurrences(&mesh, &host);
        let positions: Vec<_> = found.iter().map(|o| o.positions().to_vec()).collect();
        assert_eq!(positions, vec![vec![1, 2, 6], vec![5, 6, 7]]);
        let values: Vec<_> = found.iter().map(|o| o.values(&host)).collect();
        assert_eq!(values, vec![vec![4, 6, 5], vec![2, 5, 3]]);
    }

    #[test]
    fn empty_host_has_no_occurrences() {
        for name in BUILTIN_NAMES {
            assert!(occurrences(&builtin(name).unwrap(), &Permutation::identity(0)).is_empty());
        }
    }

    #[test]
    fn sigma_unique_in_s3() {
        let sigma = builtin("sigma").unwrap();
        let with: Vec<_> = Permutation::all(3)
            .filter(|p| !occurrences(&sigma, p).is_empty())
            .collect();
        assert_eq!(with, vec![perm("231")]);
        assert_eq!(occurrences(&sigma, &perm("231")).len(), 1);
    }

    #[test]
    fn small_distributions() {
        assert_eq!(dist("sigma", 3), vec![(0, 5), (1, 1)]);
        assert_eq!(dist("inv", 3), vec![(0, 1), (1, 2), (2, 2), (3, 1)]);
        assert_eq!(dist("sigma", 4), vec![(0, 15), (1, 9)]);
        assert_eq!(dist("sigma", 0), vec![(0, 1)]);
    }

    #[test]
    fn equidistribution_of_the_bivincular_family() {
        for n in 0..=6 {
            let reference = dist("sigma", n);
            for other in ["sigma-132", "upsilon"] {
                assert_eq!(dist(other, n), reference, "{other} at n={n}");
            }
        }
    }

    // Full row and column shading on 321 does not reproduce the sigma rows.
    #[test]
    fn sigma_321_distribution_at_four() {
        assert_eq!(dist("sigma-321", 3), vec![(0, 5), (1, 1)]);
        assert_eq!(dist("sigma-321", 4), vec![(0, 16), (1, 7), (2, 1)]);
    }

    #[test]
    fn decomposition_into_p_and_q_patterns() {
        let [sigma, upsilon, p1, p2, q1, q2] =
            ["sigma", "upsilon", "p1", "p2", "q1", "q2"].map(|n| builtin(n).unwrap());
        let triples = |pat: &MeshPattern, p: &Permutation| -> BTreeSet<Vec<usize>> {
            occurrences(pat, p)
                .into_iter()
                .map(|o| o.positions()[..3].to_vec())
                .collect()
        };
        for n in 0..=6 {
            for p in Permutation::all(n) {
                for (whole, four, three) in [(&sigma, &p1, &p2), (&upsilon, &q1, &q2)] {
                    let a = triples(four, &p);
                    let b = triples(three, &p);
                    assert!(a.is_disjoint(&b), "{p}");
                    let union: BTreeSet<_> = a.union(&b).cloned().collect();
                    assert_eq!(union, triples(whole, &p), "{p}");
                }
            }
        }
    }

    #[test]
    fn second_entry_determines_p1_and_q1_occurrences() {
        for name in ["p1", "q1"] {
            let pat = builtin(name).unwrap();
            for n in 0..=6 {
                for p in Permutation::all(n) {
                    let occ = occurrences(&pat, &p);
                    let seconds: BTreeSet<_> = occ.iter().map(|o| o.positions()[1]).collect();
                    assert_eq!(seconds.len(), occ.len(), "{name} in {p}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn canonical_printing_round_trips(
            v in Just((1..=5usize).collect::<Vec<_>>()).prop_shuffle(),
            cells in proptest::collection::btree_set((0..=5usize, 0..=5usize), 0..12),
        ) {
            let pat = MeshPattern::new(Permutation::new(v).unwrap(), cells).unwrap();
            let text = pat.to_string();
            let back: MeshPattern = text.parse().unwrap();
            prop_assert_eq!(&back, &pat);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn classical_occurrences_are_order_isomorphic(
            v in Just((1..=7usize).collect::<Vec<_>>()).prop_shuffle(),
        ) {
            let host = Permutation::new(v).unwrap();
            let pat = MeshPattern::classical("231".parse().unwrap());
            for o in occurrences(&pat, &host) {
                prop_assert_eq!(Permutation::standardize(&o.values(&host)), pat.pattern().clone());
            }
        }
    }
}
