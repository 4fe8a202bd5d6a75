//! Truncated bivariate series and the triangles built from substituted
//! q-factorials.
//!
//! A [`TruncatedSeries`] is a polynomial in `x` and one statistic variable
//! `t`, truncated above `x^N`. Which variable `t` stands for (`y`, `z` or `q`)
//! depends on the caller.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::binomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    max_x_degree: usize,
    coefficients: BTreeMap<(usize, usize), BigInt>,
}

impl TruncatedSeries {
    pub fn zero(max_x_degree: usize) -> Self {
        TruncatedSeries {
            max_x_degree,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn one(max_x_degree: usize) -> Self {
        Self::monomial(max_x_degree, 0, 0, 1)
    }

    /// `c · x^i · t^j`, or zero if `i` exceeds the truncation.
    pub fn monomial(max_x_degree: usize, i: usize, j: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(max_x_degree);
        s.accumulate(i, j, c.into());
        s
    }

    pub fn x(max_x_degree: usize) -> Self {
        Self::monomial(max_x_degree, 1, 0, 1)
    }

    pub fn stat(max_x_degree: usize) -> Self {
        Self::monomial(max_x_degree, 0, 1, 1)
    }

    pub fn max_x_degree(&self) -> usize {
        self.max_x_degree
    }

    pub fn coefficient(&self, i: usize, j: usize) -> BigInt {
        self.coefficients.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coefficients.iter().map(|(&(i, j), c)| (i, j, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    fn accumulate(&mut self, i: usize, j: usize, c: BigInt) {
        if i > self.max_x_degree || c.is_zero() {
            return;
        }
        let entry = self.coefficients.entry((i, j)).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coefficients.remove(&(i, j));
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.max_x_degree != other.max_x_degree {
            return Err(Error::DegreeMismatch {
                left: self.max_x_degree,
                right: other.max_x_degree,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut out = Self::zero(self.max_x_degree);
        for (i, j, v) in self.terms() {
            out.accumulate(i, j, v * c);
        }
        out
    }

    /// Multiplies by `x^k`.
    pub fn shift_x(&self, k: usize) -> Self {
        let mut out = Self::zero(self.max_x_degree);
        for (i, j, v) in self.terms() {
            out.accumulate(i + k, j, v.clone());
        }
        out
    }

    /// Coefficients of `t^0, t^1, ...` in the `x^n` term, trailing zeros trimmed.
    pub fn x_row(&self, n: usize) -> Vec<BigInt> {
        let mut row = Vec::new();
        for (&(_, j), v) in self.coefficients.range((n, 0)..=(n, usize::MAX)) {
            if row.len() <= j {
                row.resize(j + 1, BigInt::zero());
            }
            row[j] = v.clone();
        }
        row
    }

    /// Coefficients of `x^0..=x^N` after setting `t = value`.
    pub fn evaluate_stat(&self, value: &BigInt) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.max_x_degree + 1];
        for (i, j, v) in self.terms() {
            out[i] += v * num_traits::pow(value.clone(), j);
        }
        out
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (i, j, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match k {
                0 if c.is_negative() => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (var, d) in [("x", i), ("t", j)] {
                match d {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{d}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

pub fn series_add(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.check(b)?;
    let mut out = a.clone();
    for (i, j, v) in b.terms() {
        out.accumulate(i, j, v.clone());
    }
    Ok(out)
}

pub fn series_sub(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    series_add(a, &b.scale(&BigInt::from(-1)))
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.check(b)?;
    let mut out = TruncatedSeries::zero(a.max_x_degree);
    for (i, j, u) in a.terms() {
        for (k, l, v) in b.terms() {
            if i + k > a.max_x_degree {
                break;
            }
            out.accumulate(i + k, j + l, u * v);
        }
    }
    Ok(out)
}

pub fn series_pow(a: &TruncatedSeries, e: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(a.max_x_degree);
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            out = series_mul(&out, &base).expect("same truncation");
        }
        base = series_mul(&base, &base).expect("same truncation");
        e >>= 1;
    }
    out
}

/// `[1]!_q, [2]!_q, ..., [n]!_q`, preceded by `[0]!_q = 1`.
fn qfactorials(n: usize, q: &TruncatedSeries) -> Vec<TruncatedSeries> {
    let mut out = vec![TruncatedSeries::one(q.max_x_degree)];
    let mut partial = TruncatedSeries::zero(q.max_x_degree);
    let mut power = TruncatedSeries::one(q.max_x_degree);
    for _ in 1..=n {
        partial = series_add(&partial, &power).expect("same truncation");
        power = series_mul(&power, q).expect("same truncation");
        let next = series_mul(out.last().unwrap(), &partial).expect("same truncation");
        out.push(next);
    }
    out
}

/// `∏_{i=1}^{n} (1 + q + ... + q^{i-1})`.
pub fn qfact_substituted(n: usize, q: &TruncatedSeries) -> TruncatedSeries {
    qfactorials(n, q).pop().unwrap()
}

/// `Σ_{n ≤ N} [n]!_q x^n` truncated at `x^N`.
pub fn qfact_series(q: &TruncatedSeries) -> TruncatedSeries {
    let big_n = q.max_x_degree;
    let mut out = TruncatedSeries::zero(big_n);
    for (n, f) in qfactorials(big_n, q).iter().enumerate() {
        out = series_add(&out, &f.shift_x(n)).expect("same truncation");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Triangle {
    rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut r| {
                while r.last().is_some_and(Zero::is_zero) {
                    r.pop();
                }
                r
            })
            .collect();
        Triangle { rows }
    }

    fn from_series(s: &TruncatedSeries) -> Self {
        Self::from_rows((0..=s.max_x_degree).map(|n| s.x_row(n)).collect())
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, n: usize, k: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_default()
    }

    pub fn column(&self, k: usize) -> Vec<BigInt> {
        (0..self.len()).map(|n| self.get(n, k)).collect()
    }

    pub fn row_sums(&self) -> Vec<BigInt> {
        self.rows.iter().map(|r| r.iter().sum()).collect()
    }

    /// Rows starting at `from`, values separated by single spaces.
    pub fn to_table(&self, from: usize) -> String {
        self.render(from, " ")
    }

    pub fn to_csv(&self, from: usize) -> String {
        self.render(from, ",")
    }

    fn render(&self, from: usize, sep: &str) -> String {
        let mut out = String::new();
        for row in self.rows.iter().skip(from) {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(sep));
            out.push('\n');
        }
        out
    }

    /// Rows from `from` read left to right as one sequence, `index value` per
    /// line with indices starting at 0.
    pub fn to_bfile(&self, from: usize) -> String {
        self.rows
            .iter()
            .skip(from)
            .flatten()
            .enumerate()
            .map(|(i, v)| format!("{i} {v}\n"))
            .collect()
    }
}

pub fn mahonian_row(n: usize) -> Vec<BigInt> {
    qfact_substituted(n, &TruncatedSeries::stat(0)).x_row(0)
}

pub fn mahonian(n: usize, k: usize) -> BigInt {
    mahonian_row(n).get(k).cloned().unwrap_or_default()
}

pub fn mahonian_triangle(big_n: usize) -> Triangle {
    Triangle::from_rows((0..=big_n).map(mahonian_row).collect())
}

/// `u_{n,i}`: coefficients of `Σ [n]!_{1+xz} x^n`.
pub fn unsieved_triangle(big_n: usize) -> Triangle {
    let q = series_add(
        &TruncatedSeries::one(big_n),
        &TruncatedSeries::monomial(big_n, 1, 1, 1),
    )
    .expect("same truncation");
    Triangle::from_series(&qfact_series(&q))
}

/// `f_{n,k}`: coefficients of `Σ [n]!_{1+x(y-1)} x^n`.
pub fn fishburn_triangle(big_n: usize) -> Triangle {
    let xy = TruncatedSeries::monomial(big_n, 1, 1, 1);
    let x = TruncatedSeries::x(big_n);
    let q = series_add(
        &TruncatedSeries::one(big_n),
        &series_sub(&xy, &x).expect("same truncation"),
    )
    .expect("same truncation");
    Triangle::from_series(&qfact_series(&q))
}

/// `f_0, ..., f_N` from `Σ [n]!_{1-x} x^n`.
pub fn fishburn_numbers(big_n: usize) -> Vec<BigInt> {
    let q = series_sub(&TruncatedSeries::one(big_n), &TruncatedSeries::x(big_n))
        .expect("same truncation");
    let s = qfact_series(&q);
    (0..=big_n).map(|n| s.coefficient(n, 0)).collect()
}

/// `Σ_{j=i}^{C(n-i,2)} C(j,i) m_{n-i,j}`.
pub fn identity_u(n: usize, i: usize) -> BigInt {
    if i > n {
        return BigInt::zero();
    }
    mahonian_row(n - i)
        .iter()
        .enumerate()
        .skip(i)
        .map(|(j, m)| BigInt::from(binomial(j, i)) * m)
        .sum()
}

/// `Σ_{i=k}^{n-2} (-1)^{i+k} C(i,k) u_{n,i}`; rows 0 and 1 are the single
/// entry `1` at `k = 0`.
pub fn identity_f(n: usize, k: usize) -> BigInt {
    if n < 2 {
        return BigInt::from(u8::from(k == 0));
    }
    (k..=n - 2)
        .map(|i| {
            let term = BigInt::from(binomial(i, k)) * identity_u(n, i);
            if (i + k).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// Counts upper-triangular 0/1 matrices with no empty row by entry sum `n`
/// and `k`, the number of ones that are not the first in their row. The empty
/// matrix is counted at `(0, 0)`.
pub fn primitive_row_matrix_counts(big_n: usize) -> BTreeMap<(usize, usize), u64> {
    let mut counts = BTreeMap::new();
    counts.insert((0, 0), 1);
    for m in 1..=big_n {
        for (n, c) in primitive_row_matrices_of_dimension(m, big_n) {
            *counts.entry((n, n - m)).or_default() += c;
        }
    }
    counts
}

/// Entry-sum histogram for dimension `m`, sums capped at `max_sum`.
pub fn primitive_row_matrices_of_dimension(m: usize, max_sum: usize) -> BTreeMap<usize, u64> {
    // row r (from 0) has m - r free cells and needs at least one of them set
    fn go(m: usize, r: usize, sum: usize, max_sum: usize, out: &mut BTreeMap<usize, u64>) {
        if r == m {
            *out.entry(sum).or_default() += 1;
            return;
        }
        let width = m - r;
        let reserve = m - r - 1;
        for mask in 1u64..(1 << width) {
            let s = sum + mask.count_ones() as usize;
            if s + reserve <= max_sum {
                go(m, r + 1, s, max_sum, out);
            }
        }
    }
    let mut out = BTreeMap::new();
    if m <= max_sum && m < 64 {
        go(m, 0, 0, max_sum, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::factorial;
    use crate::perm::{inversion_count, Permutation};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    const MAHONIAN: [&[i64]; 6] = [
        &[1],
        &[1, 1],
        &[1, 2, 2, 1],
        &[1, 3, 5, 6, 5, 3, 1],
        &[1, 4, 9, 15, 20, 22, 20, 15, 9, 4, 1],
        &[1, 5, 14, 29, 49, 71, 90, 101, 101, 90, 71, 49, 29, 14, 5, 1],
    ];

    const UNSIEVED: [&[i64]; 9] = [
        &[1],
        &[2],
        &[6, 1],
        &[24, 9],
        &[120, 72, 5],
        &[720, 600, 98, 1],
        &[5040, 5400, 1450, 76],
        &[40320, 52920, 20100, 2200, 35],
        &[362880, 564480, 279300, 48750, 2299, 9],
    ];

    const FISHBURN: [&[i64]; 9] = [
        &[1],
        &[2],
        &[5, 1],
        &[15, 9],
        &[53, 62, 5],
        &[217, 407, 95, 1],
        &[1014, 2728, 1222, 76],
        &[5335, 19180, 13710, 2060, 35],
        &[31240, 142979, 146754, 39644, 2254, 9],
    ];

    #[test]
    fn series_arithmetic() {
        let one = TruncatedSeries::one(1);
        let x = TruncatedSeries::x(1);
        let a = series_add(&one, &x).unwrap();
        let b = series_sub(&one, &x).unwrap();
        assert_eq!(series_mul(&a, &b).unwrap(), one);
        assert_eq!(series_mul(&a, &one).unwrap(), a);
        assert!(matches!(
            series_add(&one, &TruncatedSeries::one(2)),
            Err(Error::DegreeMismatch { left: 1, right: 2 })
        ));

        // (x(y-1)+1)^2 = 1 - 2x + 2xy + x^2 - 2x^2y + x^2y^2
        let q = fishburn_q(2);
        let sq = series_pow(&q, 2);
        let expected = [((0, 0), 1), ((1, 0), -2), ((1, 1), 2), ((2, 0), 1), ((2, 1), -2), ((2, 2), 1)];
        assert_eq!(sq.terms().count(), expected.len());
        for ((i, j), c) in expected {
            assert_eq!(sq.coefficient(i, j), BigInt::from(c));
        }
        assert_eq!(series_pow(&q, 0), TruncatedSeries::one(2));
        assert_eq!(q.to_string(), "1 - x + x*t");
    }

    fn fishburn_q(n: usize) -> TruncatedSeries {
        let xy = TruncatedSeries::monomial(n, 1, 1, 1);
        let x = TruncatedSeries::x(n);
        series_add(&TruncatedSeries::one(n), &series_sub(&xy, &x).unwrap()).unwrap()
    }

    #[test]
    fn qfact_examples() {
        let t = TruncatedSeries::stat(0);
        assert_eq!(qfact_substituted(0, &t), TruncatedSeries::one(0));
        assert_eq!(qfact_substituted(3, &t).x_row(0), ints(&[1, 2, 2, 1]));
        let q = fishburn_q(3);
        let two = TruncatedSeries::monomial(3, 0, 0, 2);
        let expected = series_add(&two, &series_sub(&q, &TruncatedSeries::one(3)).unwrap()).unwrap();
        assert_eq!(qfact_substituted(2, &q), expected);
    }

    #[test]
    fn mahonian_rows_match_the_figure() {
        for (n, row) in MAHONIAN.iter().enumerate() {
            assert_eq!(mahonian_row(n + 1), ints(row));
        }
        assert_eq!(mahonian_row(0), ints(&[1]));
        assert_eq!(mahonian(4, 3), BigInt::from(6));
        assert_eq!(mahonian(4, 99), BigInt::zero());
        for n in 0..12 {
            assert!(mahonian(n, 0).is_one());
        }
    }

    #[test]
    fn mahonian_rows_count_inversions() {
        for n in 0usize..=7 {
            let mut hist = vec![BigInt::zero(); n * n.saturating_sub(1) / 2 + 1];
            for p in Permutation::all(n) {
                hist[inversion_count(&p)] += 1;
            }
            assert_eq!(mahonian_row(n), hist);
        }
    }

    #[test]
    fn mahonian_exceeds_u64() {
        let big = mahonian_row(22).into_iter().max().unwrap();
        assert!(big > BigInt::from(u64::MAX));
        let sum: BigInt = mahonian_row(22).into_iter().sum();
        assert_eq!(sum, BigInt::from(factorial(22)));
    }

    #[test]
    fn unsieved_rows_match_the_figure() {
        let t = unsieved_triangle(9);
        assert_eq!(t.row(0), ints(&[1]).as_slice());
        for (n, row) in UNSIEVED.iter().enumerate() {
            assert_eq!(t.row(n + 1), ints(row).as_slice());
        }
        assert_eq!(t.row_sums()[1..8], ints(&[1, 2, 7, 33, 197, 1419, 11966])[..]);
    }

    #[test]
    fn fishburn_rows_match_the_figure() {
        let t = fishburn_triangle(9);
        for (n, row) in FISHBURN.iter().enumerate() {
            assert_eq!(t.row(n + 1), ints(row).as_slice());
        }
        for n in 0..=9 {
            assert_eq!(t.row_sums()[n], BigInt::from(factorial(n)));
        }
    }

    #[test]
    fn fishburn_numbers_agree_with_column_zero() {
        assert_eq!(
            fishburn_numbers(9),
            ints(&[1, 1, 2, 5, 15, 53, 217, 1014, 5335, 31240])
        );
        assert_eq!(fishburn_numbers(12), fishburn_triangle(12).column(0));
    }

    #[test]
    fn statistic_evaluation() {
        let q = fishburn_q(12);
        let s = qfact_series(&q);
        assert_eq!(s.evaluate_stat(&BigInt::zero()), fishburn_numbers(12));
        let facts: Vec<BigInt> = (0..=12).map(|n| BigInt::from(factorial(n))).collect();
        assert_eq!(s.evaluate_stat(&BigInt::one()), facts);
    }

    #[test]
    fn identities_agree_with_expansions() {
        let u = unsieved_triangle(12);
        let f = fishburn_triangle(12);
        for n in 0..=12 {
            for i in 0..=n {
                assert_eq!(identity_u(n, i), u.get(n, i), "u({n},{i})");
            }
            for k in 0..=n {
                assert_eq!(identity_f(n, k), f.get(n, k), "f({n},{k})");
            }
        }
        assert_eq!(identity_u(5, 1), BigInt::from(72));
        assert_eq!(identity_u(3, 1), BigInt::from(1));
        assert_eq!(identity_f(5, 0), BigInt::from(53));
        assert_eq!(identity_f(5, 1), BigInt::from(62));
        assert_eq!(identity_f(6, 3), BigInt::from(1));
        assert_eq!(identity_f(6, 5), BigInt::zero());
    }

    #[test]
    fn statistic_stays_below_n_minus_two() {
        let f = fishburn_triangle(12);
        for n in 2..=12 {
            assert!(f.row(n).len() - 1 <= n - 2);
        }
    }

    #[test]
    fn matrix_oracle() {
        let counts = primitive_row_matrix_counts(6);
        let at = |n: usize| -> Vec<(usize, u64)> {
            counts
                .iter()
                .filter(|((m, _), _)| *m == n)
                .map(|(&(_, k), &c)| (k, c))
                .collect()
        };
        assert_eq!(at(1), vec![(0, 1)]);
        assert_eq!(at(3), vec![(0, 6), (1, 1)]);
        let u = unsieved_triangle(6);
        for n in 0..=6 {
            let row: Vec<BigInt> = at(n).iter().map(|&(_, c)| BigInt::from(c)).collect();
            assert!(at(n).iter().enumerate().all(|(k, &(kk, _))| k == kk));
            assert_eq!(row, u.row(n), "row {n}");
        }
    }

    #[test]
    fn formatting() {
        let t = fishburn_triangle(5);
        assert_eq!(t.to_table(1), "1\n2\n5 1\n15 9\n53 62 5\n");
        assert_eq!(t.to_csv(4), "15,9\n53,62,5\n");
        assert_eq!(t.to_bfile(4), "0 15\n1 9\n2 53\n3 62\n4 5\n");
        assert_eq!(Triangle::from_rows(vec![ints(&[3, 0, 0])]).row(0), ints(&[3]).as_slice());
    }
}
