//! Factorial posets, interval-order checks, and the bijection between marked
//! incomparable pairs and marked mislabelings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::marking::Marking;
use crate::perm::{parse_number_list, InversionTable, Permutation};

/// A factorial poset on `[n]`, stored as `b` with `Pre(k) = [1, b_k]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorialPoset {
    bounds: Vec<usize>,
}

impl FactorialPoset {
    pub fn new(bounds: Vec<usize>) -> Result<Self> {
        if let Some((k, &b)) = bounds.iter().enumerate().find(|(k, &b)| b > *k) {
            return Err(Error::InvalidPoset(format!(
                "bound {b} of element {} exceeds {k}",
                k + 1
            )));
        }
        Ok(FactorialPoset { bounds })
    }

    pub fn from_inversion_table(t: &InversionTable) -> Self {
        FactorialPoset {
            bounds: t.entries().to_vec(),
        }
    }

    pub fn antichain(n: usize) -> Self {
        FactorialPoset { bounds: vec![0; n] }
    }

    pub fn chain(n: usize) -> Self {
        FactorialPoset {
            bounds: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bounds.is_empty()
    }

    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    fn check(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                index: i,
                size: self.len(),
            });
        }
        Ok(())
    }

    /// `i <_P j`.
    pub fn leq(&self, i: usize, j: usize) -> Result<bool> {
        self.check(i)?;
        self.check(j)?;
        Ok(i <= self.bounds[j - 1])
    }

    /// Number of predecessors of `i`.
    pub fn pre(&self, i: usize) -> usize {
        self.bounds[i - 1]
    }

    /// Number of successors of `i`.
    pub fn suc(&self, i: usize) -> usize {
        self.bounds.iter().filter(|&&b| b >= i).count()
    }

    pub fn to_generic(&self) -> GenericPoset {
        let n = self.len();
        let mut less = vec![vec![false; n]; n];
        for (k, &b) in self.bounds.iter().enumerate() {
            for row in less.iter_mut().take(b) {
                row[k] = true;
            }
        }
        GenericPoset { less }
    }
}

impl fmt::Display for FactorialPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.bounds.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for FactorialPoset {
    type Err = Error;

    /// Parses the bounds vector, e.g. `"0,1,0,3,0,0"`.
    fn from_str(s: &str) -> Result<Self> {
        FactorialPoset::new(parse_number_list(s, 0, false)?)
    }
}

/// All `n!` factorial posets on `[n]`, in inversion-table order.
pub fn enumerate_factorial_posets(n: usize) -> impl Iterator<Item = FactorialPoset> {
    crate::perm::enumerate_inversion_tables(n).map(|t| FactorialPoset::from_inversion_table(&t))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IncomparablePair {
    pub i: usize,
    pub j: usize,
}

impl IncomparablePair {
    pub fn new(i: usize, j: usize) -> Self {
        IncomparablePair { i, j }
    }
}

impl fmt::Display for IncomparablePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Parses a list of pairs such as `"(2,3)(1,3)"`.
pub fn parse_pairs(text: &str) -> Result<Vec<IncomparablePair>> {
    let arcs = crate::matchings::parse_arcs(text)?;
    Ok(arcs
        .into_iter()
        .map(|a| IncomparablePair::new(a.opener, a.closer))
        .collect())
}

/// Parses a list of element labels such as `"3,4,8,9"`.
pub fn parse_labels(text: &str) -> std::result::Result<Vec<usize>, ParseError> {
    parse_number_list(text, 0, false)
}

/// All incomparable pairs, by ascending `j` and then descending `i`.
pub fn incomparable_pairs(p: &FactorialPoset) -> Vec<IncomparablePair> {
    let mut out = Vec::new();
    for (k, &b) in p.bounds.iter().enumerate() {
        let j = k + 1;
        out.extend((b + 1..j).rev().map(|i| IncomparablePair::new(i, j)));
    }
    out
}

pub fn mislabelings(p: &FactorialPoset) -> BTreeSet<usize> {
    (1..p.len())
        .filter(|&i| p.pre(i) > p.pre(i + 1) && p.suc(i) <= p.suc(i + 1))
        .collect()
}

pub fn is_canonical(p: &FactorialPoset) -> bool {
    (1..p.len()).all(|i| p.pre(i) <= p.pre(i + 1) || p.suc(i) > p.suc(i + 1))
}

/// A strict partial order on `[n]` given by its full relation matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GenericPoset {
    less: Vec<Vec<bool>>,
}

impl GenericPoset {
    /// Closes `relations` transitively; fails on a cycle.
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::OutOfRange { index: x, size: n });
                }
            }
            less[a - 1][b - 1] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    let row = less[k].clone();
                    for (x, y) in less[i].iter_mut().zip(row) {
                        *x |= y;
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::InvalidPoset(format!(
                "relations form a cycle through {}",
                i + 1
            )));
        }
        Ok(GenericPoset { less })
    }

    /// Checks that `matrix` is already a strict partial order.
    pub fn from_matrix(matrix: Vec<Vec<bool>>) -> Result<Self> {
        let n = matrix.len();
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidPoset("relation matrix is not square".into()));
        }
        for i in 0..n {
            if matrix[i][i] {
                return Err(Error::InvalidPoset(format!("{} < {} is not irreflexive", i + 1, i + 1)));
            }
            for j in 0..n {
                if matrix[i][j] && matrix[j][i] {
                    return Err(Error::InvalidPoset(format!(
                        "{} and {} are mutually related",
                        i + 1,
                        j + 1
                    )));
                }
                for k in 0..n {
                    if matrix[i][j] && matrix[j][k] && !matrix[i][k] {
                        return Err(Error::InvalidPoset(format!(
                            "{} < {} < {} is not closed",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(GenericPoset { less: matrix })
    }

    pub fn len(&self) -> usize {
        self.less.len()
    }

    pub fn is_empty(&self) -> bool {
        self.less.is_empty()
    }

    pub fn less(&self, i: usize, j: usize) -> bool {
        self.less[i - 1][j - 1]
    }

    fn comparable(&self, i: usize, j: usize) -> bool {
        self.less(i, j) || self.less(j, i)
    }

    fn predecessors(&self, k: usize) -> BTreeSet<usize> {
        (1..=self.len()).filter(|&i| self.less(i, k)).collect()
    }

    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.less(i, j))
            .collect()
    }

    pub fn is_interval_order(&self) -> bool {
        let sets: Vec<_> = (1..=self.len()).map(|k| self.predecessors(k)).collect();
        sets.iter()
            .all(|a| sets.iter().all(|b| a.is_subset(b) || b.is_subset(a)))
    }

    pub fn is_two_plus_two_free(&self) -> bool {
        let rel = self.relations();
        !rel.iter().any(|&(a, b)| {
            rel.iter().any(|&(c, d)| {
                [a, b].iter().all(|&x| {
                    [c, d].iter().all(|&y| x != y && !self.comparable(x, y))
                })
            })
        })
    }

    /// Brute force over all relabelings; intended for small posets.
    pub fn is_isomorphic(&self, other: &GenericPoset) -> bool {
        let n = self.len();
        if n != other.len() || self.relations().len() != other.relations().len() {
            return false;
        }
        Permutation::all(n).any(|p| {
            self.relations()
                .iter()
                .all(|&(i, j)| other.less(p.at(i), p.at(j)))
        })
    }
}

impl fmt::Display for GenericPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (i, j)) in self.relations().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}<{j}")?;
        }
        Ok(())
    }
}

/// Parses `"1<2,2<4,3<4"` into relation pairs.
pub fn parse_relations(text: &str) -> std::result::Result<Vec<(usize, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        let lead = piece.len() - piece.trim_start().len();
        if !piece.trim().is_empty() {
            let Some((a, b)) = piece.split_once('<') else {
                return Err(ParseError::new(offset + lead, "expected `a<b`"));
            };
            let number = |s: &str, at: usize| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| ParseError::new(at, format!("`{}` is not a label", s.trim())))
            };
            out.push((number(a, offset + lead)?, number(b, offset + a.len() + 1)?));
        }
        offset += piece.len() + 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedPoset {
    poset: FactorialPoset,
    marked_pairs: Marking<IncomparablePair>,
    marked_mislabelings: Marking<usize>,
}

impl MarkedPoset {
    pub fn unmarked(poset: FactorialPoset) -> Self {
        MarkedPoset {
            poset,
            marked_pairs: Marking::empty(),
            marked_mislabelings: Marking::empty(),
        }
    }

    pub fn with_pairs(
        poset: FactorialPoset,
        marks: impl IntoIterator<Item = IncomparablePair>,
    ) -> Result<Self> {
        let valid: BTreeSet<_> = incomparable_pairs(&poset).into_iter().collect();
        let marks: BTreeSet<_> = marks.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !valid.contains(m)) {
            return Err(Error::InvalidMarking(format!(
                "{bad} is not an incomparable pair of {poset}"
            )));
        }
        Ok(MarkedPoset {
            poset,
            marked_pairs: Marking::from_set(marks),
            marked_mislabelings: Marking::empty(),
        })
    }

    pub fn with_mislabelings(
        poset: FactorialPoset,
        marks: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        let valid = mislabelings(&poset);
        let marks: BTreeSet<_> = marks.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !valid.contains(m)) {
            return Err(Error::InvalidMarking(format!(
                "{bad} is not a mislabeling of {poset}"
            )));
        }
        Ok(MarkedPoset {
            poset,
            marked_pairs: Marking::empty(),
            marked_mislabelings: Marking::from_set(marks),
        })
    }

    pub fn poset(&self) -> &FactorialPoset {
        &self.poset
    }

    pub fn marked_pairs(&self) -> &Marking<IncomparablePair> {
        &self.marked_pairs
    }

    pub fn marked_mislabelings(&self) -> &Marking<usize> {
        &self.marked_mislabelings
    }
}

// Elements carry ids; `order[label - 1]` is the id holding that label and
// `bounds[id]` the label of its largest predecessor.
struct Tracked {
    order: Vec<usize>,
    bounds: Vec<usize>,
}

impl Tracked {
    fn new(p: &FactorialPoset) -> Self {
        Tracked {
            order: (0..p.len()).collect(),
            bounds: p.bounds.clone(),
        }
    }

    fn label(&self, id: usize) -> usize {
        self.order.iter().position(|&x| x == id).expect("tracked element") + 1
    }

    fn poset(&self) -> FactorialPoset {
        FactorialPoset {
            bounds: self.order.iter().map(|&id| self.bounds[id]).collect(),
        }
    }
}

pub fn insert_mislabelings(mp: &MarkedPoset) -> Result<MarkedPoset> {
    if !mp.marked_mislabelings.is_empty() {
        return Err(Error::InvalidMarking(
            "expected marked pairs, found marked mislabelings".into(),
        ));
    }
    let p = &mp.poset;
    let mut t = Tracked::new(p);
    let mut inserted = Vec::new();
    for pair in incomparable_pairs(p)
        .iter()
        .filter(|x| mp.marked_pairs.contains(x))
    {
        let i = t.label(pair.i - 1);
        let j = t.label(pair.j - 1);
        for b in t.bounds.iter_mut() {
            if *b >= j {
                *b += 1;
            }
        }
        let id = t.bounds.len();
        t.bounds.push(i);
        t.order.insert(j - 1, id);
        inserted.push(id);
    }
    let marks = inserted.iter().map(|&id| t.label(id)).collect();
    Ok(MarkedPoset {
        poset: t.poset(),
        marked_pairs: Marking::empty(),
        marked_mislabelings: Marking::from_set(marks),
    })
}

/// Undoes [`insert_mislabelings`], removing the largest marked label first.
pub fn remove_mislabelings(mp: &MarkedPoset) -> Result<MarkedPoset> {
    if !mp.marked_pairs.is_empty() {
        return Err(Error::InvalidMarking(
            "expected marked mislabelings, found marked pairs".into(),
        ));
    }
    let mut t = Tracked::new(&mp.poset);
    let mut marked: BTreeSet<usize> = mp.marked_mislabelings.iter().map(|&j| j - 1).collect();
    let mut removed = BTreeSet::new();
    let mut recorded = Vec::new();

    while let Some(&id) = marked.iter().max_by_key(|&&id| t.label(id)) {
        marked.remove(&id);
        let j = t.label(id);
        let current = t.poset();
        if !mislabelings(&current).contains(&j) {
            return Err(Error::NotInImage(format!(
                "marked label {j} of {current} is no longer a mislabeling"
            )));
        }
        let below = t.order[t.bounds[id] - 1];
        let above = t.order[j];
        t.order.remove(j - 1);
        for b in t.bounds.iter_mut() {
            if *b >= j {
                *b -= 1;
            }
        }
        removed.insert(id);
        recorded.push((below, above));
    }

    if recorded
        .iter()
        .any(|(a, b)| removed.contains(a) || removed.contains(b))
    {
        return Err(Error::NotInImage(
            "a recovered pair uses an element that was itself removed".into(),
        ));
    }
    let pairs: BTreeSet<IncomparablePair> = recorded
        .iter()
        .map(|&(a, b)| IncomparablePair::new(t.label(a), t.label(b)))
        .collect();
    if pairs.len() != recorded.len() {
        return Err(Error::NotInImage("two marks recover the same pair".into()));
    }
    let result = MarkedPoset::with_pairs(t.poset(), pairs)
        .map_err(|e| Error::NotInImage(e.to_string()))?;
    if insert_mislabelings(&result)? != *mp {
        return Err(Error::NotInImage(format!(
            "re-inserting {:?} does not reproduce the input",
            result.marked_pairs
        )));
    }
    Ok(result)
}
