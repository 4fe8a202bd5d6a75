//! Perfect matchings with no alignments, their arc classification, and the
//! bijection between marked embraced nested openers and marked confused arcs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::marking::Marking;
use crate::perm::{enumerate_inversion_tables, InversionTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub opener: usize,
    pub closer: usize,
}

impl Arc {
    pub fn new(opener: usize, closer: usize) -> Self {
        Arc { opener, closer }
    }

    /// `self` strictly encloses `other`.
    pub fn nests(&self, other: &Arc) -> bool {
        self.opener < other.opener && other.closer < self.closer
    }

    /// `self` is the left arc of a crossing with `other`.
    pub fn crosses(&self, other: &Arc) -> bool {
        self.opener < other.opener && other.opener < self.closer && self.closer < other.closer
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.opener, self.closer)
    }
}

/// A perfect matching on `1..=2m`, arcs sorted by opener.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching {
    arcs: Vec<Arc>,
}

impl Matching {
    pub fn new(arcs: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let mut arcs: Vec<Arc> = arcs.into_iter().collect();
        arcs.sort();
        let size = 2 * arcs.len();
        let mut seen = vec![false; size + 1];
        for arc in &arcs {
            if arc.opener >= arc.closer {
                return Err(Error::InvalidMatching(format!("arc {arc} does not open before it closes")));
            }
            for point in [arc.opener, arc.closer] {
                if point == 0 || point > size {
                    return Err(Error::InvalidMatching(format!(
                        "point {point} outside 1..={size}"
                    )));
                }
                if std::mem::replace(&mut seen[point], true) {
                    return Err(Error::InvalidMatching(format!("point {point} used twice")));
                }
            }
        }
        Ok(Matching { arcs })
    }

    fn from_points(points: &[usize]) -> Self {
        let mut first: BTreeMap<usize, usize> = BTreeMap::new();
        let mut arcs = Vec::with_capacity(points.len() / 2);
        for (i, &id) in points.iter().enumerate() {
            match first.remove(&id) {
                Some(open) => arcs.push(Arc::new(open, i + 1)),
                None => {
                    first.insert(id, i + 1);
                }
            }
        }
        arcs.sort();
        Matching { arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Number of arcs.
    pub fn semi_length(&self) -> usize {
        self.arcs.len()
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(arc).is_ok()
    }

    fn arc_opening_at(&self, point: usize) -> Option<Arc> {
        self.arcs.iter().copied().find(|a| a.opener == point)
    }

    fn arc_closing_at(&self, point: usize) -> Option<Arc> {
        self.arcs.iter().copied().find(|a| a.closer == point)
    }

    // Arc id of every point, ids being indices into `self.arcs`.
    fn points(&self) -> Vec<usize> {
        let mut points = vec![0; 2 * self.arcs.len()];
        for (id, arc) in self.arcs.iter().enumerate() {
            points[arc.opener - 1] = id;
            points[arc.closer - 1] = id;
        }
        points
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for arc in &self.arcs {
            write!(f, "{arc}")?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Parses `"(1,9)(2,12)(3,10)"`; whitespace and commas between arcs are ignored.
    fn from_str(s: &str) -> Result<Self> {
        Matching::new(parse_arcs(s)?)
    }
}

struct Cursor<'a> {
    text: &'a str,
    at: usize,
}

impl<'a> Cursor<'a> {
    fn skip_separators(&mut self) {
        while let Some(c) = self.text[self.at..].chars().next() {
            if c.is_whitespace() || c == ',' {
                self.at += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.text[self.at..].chars().next() {
            if c.is_whitespace() {
                self.at += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn done(&mut self) -> bool {
        self.skip_separators();
        self.at == self.text.len()
    }

    fn expect(&mut self, want: char) -> std::result::Result<(), ParseError> {
        self.skip_space();
        match self.text[self.at..].chars().next() {
            Some(c) if c == want => {
                self.at += 1;
                Ok(())
            }
            Some(c) => Err(ParseError::new(self.at, format!("expected `{want}`, found `{c}`"))),
            None => Err(ParseError::new(self.at, format!("expected `{want}`, found end of input"))),
        }
    }

    fn peek_is(&mut self, want: char) -> bool {
        self.skip_space();
        self.text[self.at..].starts_with(want)
    }

    fn number(&mut self) -> std::result::Result<usize, ParseError> {
        self.skip_space();
        let digits = self.text[self.at..]
            .chars()
            .take_while(char::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(ParseError::new(self.at, "expected a number"));
        }
        let token = &self.text[self.at..self.at + digits];
        let value = token
            .parse()
            .map_err(|_| ParseError::new(self.at, format!("`{token}` is too large")))?;
        self.at += digits;
        Ok(value)
    }

    fn arc(&mut self) -> std::result::Result<Arc, ParseError> {
        self.expect('(')?;
        let opener = self.number()?;
        self.expect(',')?;
        let closer = self.number()?;
        self.expect(')')?;
        Ok(Arc::new(opener, closer))
    }
}

/// Parses a list of arcs such as `"(3,17)(5,18)"` without requiring a matching.
pub fn parse_arcs(text: &str) -> Result<Vec<Arc>> {
    let mut cursor = Cursor { text, at: 0 };
    let mut out = Vec::new();
    while !cursor.done() {
        out.push(cursor.arc()?);
    }
    Ok(out)
}

/// Parses a list of embraced nested openers such as `"((2,12),4)((1,9),4)"`.
pub fn parse_embraced_openers(text: &str) -> Result<Vec<EmbracedOpener>> {
    let mut cursor = Cursor { text, at: 0 };
    let mut out = Vec::new();
    while !cursor.done() {
        cursor.expect('(')?;
        if !cursor.peek_is('(') {
            return Err(ParseError::new(cursor.at, "expected a nesting arc").into());
        }
        let nesting = cursor.arc()?;
        cursor.expect(',')?;
        let opener = cursor.number()?;
        cursor.expect(')')?;
        out.push(EmbracedOpener { nesting, opener });
    }
    Ok(out)
}

/// Builds the zero-alignment matching whose `i`-th arc nests exactly `b_i` arcs.
pub fn from_inversion_table(t: &InversionTable) -> Matching {
    let mut points: Vec<usize> = Vec::with_capacity(2 * t.len());
    for (id, &b) in t.entries().iter().enumerate() {
        // `id` openers precede the closers; slot `b` sits left of the b-th from the right.
        points.insert(id - b, id);
        points.push(id);
    }
    Matching::from_points(&points)
}

pub fn is_zero_alignment(m: &Matching) -> bool {
    let max_opener = m.arcs.iter().map(|a| a.opener).max();
    let min_closer = m.arcs.iter().map(|a| a.closer).min();
    match (max_opener, min_closer) {
        (Some(o), Some(c)) => o < c,
        _ => true,
    }
}

/// All `n!` zero-alignment matchings of semi-length `n`, in inversion-table order.
pub fn enumerate_zero_alignment(n: usize) -> impl Iterator<Item = Matching> {
    enumerate_inversion_tables(n).map(|t| from_inversion_table(&t))
}

/// Number of pairs of arcs in which one nests the other.
pub fn nesting_count(m: &Matching) -> usize {
    m.arcs
        .iter()
        .map(|a| m.arcs.iter().filter(|b| a.nests(b)).count())
        .sum()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ArcFlags {
    pub nesting: bool,
    pub nested: bool,
    pub left_nesting: bool,
    pub left_nested: bool,
    pub right_nesting: bool,
    pub right_nested: bool,
    pub crossing: bool,
    pub crossed: bool,
    pub left_crossing: bool,
    pub left_crossed: bool,
    pub right_crossing: bool,
    pub right_crossed: bool,
}

impl ArcFlags {
    pub const NAMES: [&'static str; 12] = [
        "nesting",
        "nested",
        "left_nesting",
        "left_nested",
        "right_nesting",
        "right_nested",
        "crossing",
        "crossed",
        "left_crossing",
        "left_crossed",
        "right_crossing",
        "right_crossed",
    ];

    pub fn values(&self) -> [bool; 12] {
        [
            self.nesting,
            self.nested,
            self.left_nesting,
            self.left_nested,
            self.right_nesting,
            self.right_nested,
            self.crossing,
            self.crossed,
            self.left_crossing,
            self.left_crossed,
            self.right_crossing,
            self.right_crossed,
        ]
    }
}

pub fn classify(m: &Matching) -> BTreeMap<Arc, ArcFlags> {
    let mut out = BTreeMap::new();
    for a in &m.arcs {
        let mut f = ArcFlags::default();
        for b in &m.arcs {
            if a.nests(b) {
                f.nesting = true;
                f.left_nesting |= b.opener == a.opener + 1;
                f.right_nesting |= b.closer + 1 == a.closer;
            }
            if b.nests(a) {
                f.nested = true;
                f.left_nested |= a.opener == b.opener + 1;
                f.right_nested |= a.closer + 1 == b.closer;
            }
            if a.crosses(b) {
                f.crossing = true;
                f.left_crossing |= b.opener == a.opener + 1;
                f.right_crossing |= b.closer == a.closer + 1;
            }
            if b.crosses(a) {
                f.crossed = true;
                f.left_crossed |= a.opener == b.opener + 1;
                f.right_crossed |= b.closer + 1 == a.closer;
            }
        }
        out.insert(*a, f);
    }
    out
}

/// The classification as CSV: one row per arc, one column per flag.
pub fn classification_csv(m: &Matching) -> String {
    let mut out = String::from("arc");
    for name in ArcFlags::NAMES {
        out.push(',');
        out.push_str(name);
    }
    out.push('\n');
    for (arc, flags) in classify(m) {
        out.push_str(&format!("\"{arc}\""));
        for v in flags.values() {
            out.push_str(if v { ",1" } else { ",0" });
        }
        out.push('\n');
    }
    out
}

fn is_confused(m: &Matching, a: &Arc) -> bool {
    let left_nesting = m
        .arc_opening_at(a.opener + 1)
        .is_some_and(|b| b.closer < a.closer);
    let right_crossed = a.closer >= 2
        && m.arc_closing_at(a.closer - 1)
            .is_some_and(|b| b.opener < a.opener);
    left_nesting && right_crossed
}

/// Arcs that are both left-nesting and right-crossed.
pub fn confused_arcs(m: &Matching) -> BTreeSet<Arc> {
    m.arcs.iter().copied().filter(|a| is_confused(m, a)).collect()
}

/// An arc together with the opener of an arc it nests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EmbracedOpener {
    pub nesting: Arc,
    pub opener: usize,
}

impl fmt::Display for EmbracedOpener {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.nesting, self.opener)
    }
}

/// Every embraced nested opener, by descending opener and then descending
/// closer of the nesting arc.
pub fn embraced_nested_openers(m: &Matching) -> Vec<EmbracedOpener> {
    let mut out: Vec<EmbracedOpener> = m
        .arcs
        .iter()
        .flat_map(|a| {
            m.arcs.iter().filter(|b| a.nests(b)).map(|b| EmbracedOpener {
                nesting: *a,
                opener: b.opener,
            })
        })
        .collect();
    out.sort_by(|x, y| {
        y.opener
            .cmp(&x.opener)
            .then(y.nesting.closer.cmp(&x.nesting.closer))
    });
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedMatching {
    matching: Matching,
    marked_openers: Marking<EmbracedOpener>,
    marked_confused: Marking<Arc>,
}

impl MarkedMatching {
    pub fn unmarked(matching: Matching) -> Self {
        MarkedMatching {
            matching,
            marked_openers: Marking::empty(),
            marked_confused: Marking::empty(),
        }
    }

    pub fn with_openers(
        matching: Matching,
        marks: impl IntoIterator<Item = EmbracedOpener>,
    ) -> Result<Self> {
        let valid: BTreeSet<_> = embraced_nested_openers(&matching).into_iter().collect();
        let marks: BTreeSet<_> = marks.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !valid.contains(m)) {
            return Err(Error::InvalidMarking(format!(
                "{bad} is not an embraced nested opener of {matching}"
            )));
        }
        Ok(MarkedMatching {
            matching,
            marked_openers: Marking::from_set(marks),
            marked_confused: Marking::empty(),
        })
    }

    pub fn with_confused(matching: Matching, marks: impl IntoIterator<Item = Arc>) -> Result<Self> {
        let valid = confused_arcs(&matching);
        let marks: BTreeSet<_> = marks.into_iter().collect();
        if let Some(bad) = marks.iter().find(|m| !valid.contains(m)) {
            return Err(Error::InvalidMarking(format!(
                "{bad} is not a confused arc of {matching}"
            )));
        }
        Ok(MarkedMatching {
            matching,
            marked_openers: Marking::empty(),
            marked_confused: Marking::from_set(marks),
        })
    }

    pub fn matching(&self) -> &Matching {
        &self.matching
    }

    pub fn marked_openers(&self) -> &Marking<EmbracedOpener> {
        &self.marked_openers
    }

    pub fn marked_confused(&self) -> &Marking<Arc> {
        &self.marked_confused
    }
}

fn index_of(points: &[usize], id: usize, which: usize) -> usize {
    points
        .iter()
        .enumerate()
        .filter(|(_, &p)| p == id)
        .nth(which)
        .map(|(i, _)| i)
        .expect("tracked arc")
}

pub fn insert_confused(mm: &MarkedMatching) -> Result<MarkedMatching> {
    if !mm.marked_confused.is_empty() {
        return Err(Error::InvalidMarking(
            "expected marked openers, found marked confused arcs".into(),
        ));
    }
    let m = &mm.matching;
    if !is_zero_alignment(m) {
        return Err(Error::InvalidMatching(format!("{m} has an alignment")));
    }
    let id_of = |a: &Arc| m.arcs.binary_search(a).expect("validated mark");
    let mut points = m.points();
    let mut inserted = Vec::new();
    for (next_id, mark) in embraced_nested_openers(m)
        .iter()
        .filter(|x| mm.marked_openers.contains(x))
        .enumerate()
        .map(|(i, x)| (m.arcs.len() + i, x))
    {
        let nesting = id_of(&mark.nesting);
        let nested = id_of(&m.arc_opening_at(mark.opener).expect("validated mark"));
        let close_at = index_of(&points, nesting, 1) + 1;
        points.insert(close_at, next_id);
        let open_at = index_of(&points, nested, 0);
        points.insert(open_at, next_id);
        inserted.push(next_id);
    }
    let matching = Matching::from_points(&points);
    let marks = inserted
        .iter()
        .map(|&id| {
            let open = index_of(&points, id, 0) + 1;
            let close = index_of(&points, id, 1) + 1;
            Arc::new(open, close)
        })
        .collect();
    Ok(MarkedMatching {
        matching,
        marked_openers: Marking::empty(),
        marked_confused: Marking::from_set(marks),
    })
}

/// Undoes [`insert_confused`]. At each step the marked arc removed is the one
/// with the smallest opener among those whose left-nested neighbour is
/// unmarked; the result is checked by re-insertion.
pub fn remove_confused(mm: &MarkedMatching) -> Result<MarkedMatching> {
    if !mm.marked_openers.is_empty() {
        return Err(Error::InvalidMarking(
            "expected marked confused arcs, found marked openers".into(),
        ));
    }
    let m = &mm.matching;
    let mut points = m.points();
    let mut marked: BTreeSet<usize> = mm
        .marked_confused
        .iter()
        .map(|a| m.arcs.binary_search(a).expect("validated mark"))
        .collect();
    let mut removed = BTreeSet::new();
    let mut recorded = Vec::new();

    while !marked.is_empty() {
        let candidate = marked
            .iter()
            .map(|&id| (index_of(&points, id, 0), id))
            .filter(|&(open, _)| points.get(open + 1).is_some_and(|p| !marked.contains(p)))
            .min();
        let Some((open, id)) = candidate else {
            return Err(Error::NotInImage("every marked arc left-nests another marked arc".into()));
        };
        let close = index_of(&points, id, 1);
        let nested = points[open + 1];
        let crossing = points[close - 1];
        let nested_closes_inside = index_of(&points, nested, 1) < close;
        let crossing_opens_before = index_of(&points, crossing, 0) < open;
        if nested == id || !nested_closes_inside || !crossing_opens_before || crossing == nested {
            return Err(Error::NotInImage(format!(
                "marked arc {} is no longer confused",
                Arc::new(open + 1, close + 1)
            )));
        }
        points.remove(close);
        points.remove(open);
        marked.remove(&id);
        removed.insert(id);
        recorded.push((crossing, nested));
    }

    if recorded
        .iter()
        .any(|(a, b)| removed.contains(a) || removed.contains(b))
    {
        return Err(Error::NotInImage(
            "a recovered opener refers to a removed arc".into(),
        ));
    }
    let matching = Matching::from_points(&points);
    let marks: Vec<EmbracedOpener> = recorded
        .iter()
        .map(|&(nesting, nested)| EmbracedOpener {
            nesting: Arc::new(
                index_of(&points, nesting, 0) + 1,
                index_of(&points, nesting, 1) + 1,
            ),
            opener: index_of(&points, nested, 0) + 1,
        })
        .collect();
    if marks.iter().collect::<BTreeSet<_>>().len() != marks.len() {
        return Err(Error::NotInImage("two marks recover the same opener".into()));
    }
    let result = MarkedMatching::with_openers(matching, marks)
        .map_err(|e| Error::NotInImage(e.to_string()))?;
    if insert_confused(&result)? != *mm {
        return Err(Error::NotInImage(format!(
            "re-inserting {:?} does not reproduce the input",
            result.marked_openers
        )));
    }
    Ok(result)
}
