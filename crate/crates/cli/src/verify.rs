//! Exhaustive verification suites.
//!
//! Each suite enumerates every structure up to a size bound and compares
//! the observed statistics with the expanded generating functions. Bounds
//! default per check; `--max-n` replaces all of them.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use fishburn_core::genfun::{
    fishburn_numbers, fishburn_triangle, identity_f, identity_u, mahonian_row,
    primitive_row_matrix_counts, unsieved_triangle, Triangle,
};
use fishburn_core::marking::subsets;
use fishburn_core::matchings::{
    self, confused_arcs, embraced_nested_openers, enumerate_zero_alignment, insert_confused,
    is_zero_alignment, nesting_count, remove_confused, MarkedMatching, Matching,
};
use fishburn_core::meshpat::{
    builtin, count_occurrences, insert_sigma, involution, occurrences, remove_sigma,
    sigma_occurrence_starting_at, MarkedPermutation, MeshPattern,
};
use fishburn_core::numeric::factorial;
use fishburn_core::perm::{enumerate_inversion_tables, inversion_count, inversions};
use fishburn_core::posets::{
    self, enumerate_factorial_posets, incomparable_pairs, insert_mislabelings, is_canonical,
    remove_mislabelings, FactorialPoset, MarkedPoset,
};
use fishburn_core::{InversionPair, Permutation};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::fixtures;
use crate::scan::{failures, histogram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Identities,
    Patterns,
    Matchings,
    Posets,
    Involution,
    Matrices,
    Bijections,
}

impl Suite {
    pub const PARTS: [Suite; 7] = [
        Suite::Identities,
        Suite::Patterns,
        Suite::Matchings,
        Suite::Posets,
        Suite::Involution,
        Suite::Matrices,
        Suite::Bijections,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Identities => "identities",
            Suite::Patterns => "patterns",
            Suite::Matchings => "matchings",
            Suite::Posets => "posets",
            Suite::Involution => "involution",
            Suite::Matrices => "matrices",
            Suite::Bijections => "bijections",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            if c.passed {
                out.push_str(&format!("PASS {}\n", c.name));
            } else {
                out.push_str(&format!(
                    "FAIL {}\n  expected: {}\n  actual:   {}\n",
                    c.name, c.expected, c.actual
                ));
            }
        }
        out.push_str(&format!(
            "{}: {} checks, {} passed, {} failed\n",
            self.suite,
            self.checks.len(),
            self.checks.len() - self.failed(),
            self.failed()
        ));
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Bounds {
    pub max_n: Option<usize>,
}

impl Bounds {
    fn at(self, default: usize) -> usize {
        self.max_n.unwrap_or(default)
    }
}

pub fn verify(suite: Suite, max_n: Option<usize>) -> Report {
    let start = Instant::now();
    let bounds = Bounds { max_n };
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        one => vec![one],
    };
    let checks = parts
        .into_iter()
        .flat_map(|s| {
            let checks = match s {
                Suite::Identities => identities(bounds),
                Suite::Patterns => patterns(bounds),
                Suite::Matchings => matching_checks(bounds),
                Suite::Posets => poset_checks(bounds),
                Suite::Involution => involution_checks(bounds),
                Suite::Matrices => matrices(bounds),
                Suite::Bijections => bijections(bounds),
                Suite::All => unreachable!(),
            };
            checks.into_iter().map(move |mut c| {
                c.name = format!("{}/{}", s.name(), c.name);
                c
            })
        })
        .collect();
    Report {
        suite: suite.name().to_string(),
        checks,
        wall_time: start.elapsed(),
    }
}

fn rows_text(rows: &[Vec<BigInt>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join(" / ")
}

fn same_rows(name: String, expected: &[Vec<BigInt>], actual: &[Vec<BigInt>]) -> Check {
    Check {
        name,
        passed: expected == actual,
        expected: rows_text(expected),
        actual: rows_text(actual),
    }
}

fn same_values(name: String, expected: &[BigInt], actual: &[BigInt]) -> Check {
    let wrap = |v: &[BigInt]| vec![v.to_vec()];
    same_rows(name, &wrap(expected), &wrap(actual))
}

fn no_failures<T: Sync>(
    name: String,
    items: &[T],
    ok: impl Fn(&T) -> bool + Sync + Send,
    describe: impl Fn(&T) -> String,
) -> Check {
    let bad = failures(items, ok);
    let mut actual = format!("{} failures in {} cases", bad.len(), items.len());
    if let Some(&first) = bad.first() {
        actual.push_str(&format!(", first: {}", describe(&items[first])));
    }
    Check {
        name,
        passed: bad.is_empty(),
        expected: format!("0 failures in {} cases", items.len()),
        actual,
    }
}

fn fixture_rows(rows: &[&[u64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn factorials(n: usize) -> Vec<BigInt> {
    (0..=n).map(|k| BigInt::from(factorial(k))).collect()
}

fn identities(b: Bounds) -> Vec<Check> {
    let n = b.at(12);
    let u = unsieved_triangle(n);
    let f = fishburn_triangle(n);
    let u_identity = Triangle::from_rows(
        (0..=n)
            .map(|m| (0..=m).map(|i| identity_u(m, i)).collect())
            .collect(),
    );
    let f_identity = Triangle::from_rows(
        (2..=n)
            .map(|m| (0..=m).map(|k| identity_f(m, k)).collect())
            .collect(),
    );
    let f_tail = &f.rows()[2.min(f.len())..];
    let max_ok = (2..=n).all(|m| f.row(m).len() < m);
    let maxima: Vec<String> = (2..=n).map(|m| format!("{}", f.row(m).len() - 1)).collect();

    let figure = |rows: &[&[u64]], t: &Triangle| {
        let k = rows.len().min(n);
        (fixture_rows(&rows[..k]), t.rows()[1..=k].to_vec())
    };
    let (mahonian_fig, mahonian_rows) = figure(
        &fixtures::MAHONIAN,
        &Triangle::from_rows((0..=n.min(6)).map(mahonian_row).collect()),
    );
    let (unsieved_fig, unsieved_rows) = figure(&fixtures::UNSIEVED, &u);
    let (fishburn_fig, fishburn_rows) = figure(&fixtures::FISHBURN, &f);
    let numbers_fig: Vec<BigInt> = fixtures::FISHBURN_NUMBERS[..=n.min(9)]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    let totals = fixtures::PRIMITIVE_ROW_TOTALS.len().min(n);
    let totals_fig: Vec<BigInt> = fixtures::PRIMITIVE_ROW_TOTALS[..totals]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();

    vec![
        same_rows(format!("u identity matches the expansion, n <= {n}"), u.rows(), u_identity.rows()),
        same_rows(format!("f identity matches the expansion, 2 <= n <= {n}"), f_tail, f_identity.rows()),
        same_values(format!("Fishburn row sums are n!, n <= {n}"), &factorials(n), &f.row_sums()),
        same_values(
            format!("Fishburn numbers match column 0, n <= {n}"),
            &fishburn_numbers(n),
            &f.column(0),
        ),
        Check {
            name: format!("statistic never exceeds n - 2, 2 <= n <= {n}"),
            passed: max_ok,
            expected: "max k <= n - 2".into(),
            actual: format!("max k per n: {}", maxima.join(" ")),
        },
        same_rows("Mahonian rows match the published figure".into(), &mahonian_fig, &mahonian_rows),
        same_rows("unsieved rows match the published figure".into(), &unsieved_fig, &unsieved_rows),
        same_rows("Fishburn rows match the published figure".into(), &fishburn_fig, &fishburn_rows),
        same_values(
            "Fishburn numbers match the published sequence".into(),
            &numbers_fig,
            &f.column(0)[..numbers_fig.len()],
        ),
        same_values(
            "unsieved row sums match the published sequence".into(),
            &totals_fig,
            &u.row_sums()[1..=totals],
        ),
    ]
}

fn perms_up_to(n: usize) -> Vec<Vec<Permutation>> {
    (0..=n).map(|k| Permutation::all(k).collect()).collect()
}

fn pattern_rows(by_size: &[Vec<Permutation>], stat: impl Fn(&Permutation) -> usize + Sync + Send) -> Vec<Vec<BigInt>> {
    by_size.iter().map(|ps| histogram(ps, &stat)).collect()
}

fn named(name: &str) -> MeshPattern {
    builtin(name).expect("builtin pattern")
}

fn first_three(pattern: &MeshPattern, p: &Permutation) -> BTreeSet<Vec<usize>> {
    occurrences(pattern, p)
        .into_iter()
        .map(|o| o.positions()[..3].to_vec())
        .collect()
}

fn patterns(b: Bounds) -> Vec<Check> {
    let n = b.at(7);
    let by_size = perms_up_to(n);
    let all: Vec<Permutation> = by_size.concat();
    let sigma = named("sigma");
    let sigma_rows = pattern_rows(&by_size, |p| count_occurrences(&sigma, p));
    let fishburn = fishburn_triangle(n);

    let mut checks = vec![same_rows(
        format!("sigma follows the Fishburn rows, n <= {n}"),
        fishburn.rows(),
        &sigma_rows,
    )];
    for other in ["sigma-321", "sigma-132", "upsilon"] {
        let pat = named(other);
        checks.push(same_rows(
            format!("{other} is equidistributed with sigma, n <= {n}"),
            &sigma_rows,
            &pattern_rows(&by_size, |p| count_occurrences(&pat, p)),
        ));
    }

    let [upsilon, p1, p2, q1, q2] = ["upsilon", "p1", "p2", "q1", "q2"].map(named);
    checks.push(same_rows(
        format!("q1 + p2 is equidistributed with sigma, n <= {n}"),
        &sigma_rows,
        &pattern_rows(&by_size, |p| count_occurrences(&q1, p) + count_occurrences(&p2, p)),
    ));
    for (whole, four, three, label) in [(&sigma, &p1, &p2, "sigma = p1 + p2"), (&upsilon, &q1, &q2, "upsilon = q1 + q2")] {
        checks.push(no_failures(
            format!("{label} as disjoint occurrence sets, n <= {n}"),
            &all,
            |p| {
                let a = first_three(four, p);
                let b = first_three(three, p);
                a.is_disjoint(&b) && a.union(&b).cloned().collect::<BTreeSet<_>>() == first_three(whole, p)
            },
            ToString::to_string,
        ));
    }
    for (pat, label) in [(&p1, "p1"), (&q1, "q1")] {
        checks.push(no_failures(
            format!("{label} occurrences are determined by their second entry, n <= {n}"),
            &all,
            |p| {
                let occ = occurrences(pat, p);
                occ.iter().map(|o| o.positions()[1]).collect::<BTreeSet<_>>().len() == occ.len()
            },
            ToString::to_string,
        ));
    }

    let mahonian: Vec<Vec<BigInt>> = (0..=n).map(mahonian_row).collect();
    checks.push(same_rows(
        format!("inversion counts follow the Mahonian rows, n <= {n}"),
        &mahonian,
        &pattern_rows(&by_size, inversion_count),
    ));
    let distinct: Vec<BigInt> = (0..=n)
        .map(|k| BigInt::from(enumerate_inversion_tables(k).collect::<BTreeSet<_>>().len()))
        .collect();
    checks.push(same_values(
        format!("inversion tables of size n number n!, n <= {n}"),
        &factorials(n),
        &distinct,
    ));
    checks
}

fn involution_checks(b: Bounds) -> Vec<Check> {
    let n = b.at(7);
    let by_size = perms_up_to(n);
    let all: Vec<Permutation> = by_size.concat();
    let [p1, p2, q1] = ["p1", "p2", "q1"].map(named);
    vec![
        no_failures(
            format!("involution is self-inverse, n <= {n}"),
            &all,
            |p| involution(&involution(p)) == *p,
            ToString::to_string,
        ),
        no_failures(
            format!("involution preserves the p2 count, n <= {n}"),
            &all,
            |p| count_occurrences(&p2, &involution(p)) == count_occurrences(&p2, p),
            ToString::to_string,
        ),
        no_failures(
            format!("involution exchanges the p1 and q1 counts, n <= {n}"),
            &all,
            |p| {
                let image = involution(p);
                count_occurrences(&p1, &image) == count_occurrences(&q1, p)
                    && count_occurrences(&q1, &image) == count_occurrences(&p1, p)
            },
            |p| format!("{p} -> {}", involution(p)),
        ),
        same_rows(
            format!("q1 + p2 follows the Fishburn rows, n <= {n}"),
            fishburn_triangle(n).rows(),
            &pattern_rows(&by_size, |p| count_occurrences(&q1, p) + count_occurrences(&p2, p)),
        ),
    ]
}

fn matchings_up_to(n: usize) -> Vec<Vec<Matching>> {
    (0..=n).map(|k| enumerate_zero_alignment(k).collect()).collect()
}

fn matching_checks(b: Bounds) -> Vec<Check> {
    let n = b.at(7);
    let nest_n = b.at(8);
    let by_size = matchings_up_to(n.max(nest_n));
    let confused: Vec<Vec<BigInt>> = by_size[..=n]
        .iter()
        .map(|ms| histogram(ms, |m| confused_arcs(m).len()))
        .collect();
    let nestings: Vec<Vec<BigInt>> = by_size[..=nest_n]
        .iter()
        .map(|ms| histogram(ms, nesting_count))
        .collect();
    let counts: Vec<BigInt> = by_size[..=n]
        .iter()
        .map(|ms| {
            let distinct: BTreeSet<_> = ms.iter().filter(|m| is_zero_alignment(m)).collect();
            BigInt::from(distinct.len())
        })
        .collect();
    vec![
        same_rows(
            format!("confused arcs follow the Fishburn rows, n <= {n}"),
            fishburn_triangle(n).rows(),
            &confused,
        ),
        same_rows(
            format!("nestings follow the Mahonian rows, n <= {nest_n}"),
            &(0..=nest_n).map(mahonian_row).collect::<Vec<_>>(),
            &nestings,
        ),
        same_values(
            format!("n! distinct zero-alignment matchings, n <= {n}"),
            &factorials(n),
            &counts,
        ),
    ]
}

fn poset_checks(b: Bounds) -> Vec<Check> {
    let n = b.at(7);
    let canon_n = b.at(8);
    let iso_n = b.at(5);
    let by_size: Vec<Vec<FactorialPoset>> = (0..=n.max(canon_n))
        .map(|k| enumerate_factorial_posets(k).collect())
        .collect();
    let mislabeled: Vec<Vec<BigInt>> = by_size[..=n]
        .iter()
        .map(|ps| histogram(ps, |p| posets::mislabelings(p).len()))
        .collect();
    let incomparable: Vec<Vec<BigInt>> = by_size[..=n]
        .iter()
        .map(|ps| histogram(ps, |p| incomparable_pairs(p).len()))
        .collect();
    let canonical: Vec<BigInt> = by_size[..=canon_n]
        .iter()
        .map(|ps| BigInt::from(failures(ps, |p| !is_canonical(p)).len()))
        .collect();

    let small: Vec<(FactorialPoset, Vec<_>)> = (0..=iso_n)
        .flat_map(|k| {
            let generic: Vec<_> = enumerate_factorial_posets(k)
                .filter(is_canonical)
                .map(|p| p.to_generic())
                .collect();
            enumerate_factorial_posets(k)
                .map(move |p| (p, generic.clone()))
                .collect::<Vec<_>>()
        })
        .collect();

    vec![
        same_rows(
            format!("mislabelings follow the Fishburn rows, n <= {n}"),
            fishburn_triangle(n).rows(),
            &mislabeled,
        ),
        same_rows(
            format!("incomparable pairs follow the Mahonian rows, n <= {n}"),
            &(0..=n).map(mahonian_row).collect::<Vec<_>>(),
            &incomparable,
        ),
        same_values(
            format!("canonical posets number the Fishburn numbers, n <= {canon_n}"),
            &fishburn_numbers(canon_n),
            &canonical,
        ),
        no_failures(
            format!("each poset is isomorphic to exactly one canonical poset, n <= {iso_n}"),
            &small,
            |(p, canon)| {
                let g = p.to_generic();
                canon.iter().filter(|h| g.is_isomorphic(h)).count() == 1
            },
            |(p, _)| p.to_string(),
        ),
        no_failures(
            format!("factorial posets are (2+2)-free interval orders, n <= {iso_n}"),
            &small,
            |(p, _)| {
                let g = p.to_generic();
                g.is_interval_order() && g.is_two_plus_two_free()
            },
            |(p, _)| p.to_string(),
        ),
    ]
}

/// Matrix counts as rows indexed by entry sum.
pub fn matrix_rows(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![Vec::new(); n + 1];
    for ((sum, k), c) in primitive_row_matrix_counts(n) {
        let row: &mut Vec<BigInt> = &mut rows[sum];
        if row.len() <= k {
            row.resize(k + 1, BigInt::default());
        }
        row[k] = BigInt::from(c);
    }
    Triangle::from_rows(rows).rows().to_vec()
}

fn matrices(b: Bounds) -> Vec<Check> {
    let n = b.at(6);
    let rows = matrix_rows(n);
    let totals: Vec<BigInt> = rows.iter().map(|r| r.iter().sum()).collect();
    let k = fixtures::PRIMITIVE_ROW_TOTALS.len().min(n);
    let published: Vec<BigInt> = fixtures::PRIMITIVE_ROW_TOTALS[..k]
        .iter()
        .map(|&v| BigInt::from(v))
        .collect();
    vec![
        same_rows(
            format!("matrix counts equal the unsieved rows, n <= {n}"),
            unsieved_triangle(n).rows(),
            &rows,
        ),
        same_values(
            format!("matrix totals match the published sequence, n <= {}", k),
            &published,
            &totals[1..=k],
        ),
    ]
}

fn bijections(b: Bounds) -> Vec<Check> {
    let n = b.at(4);
    let perms: Vec<Permutation> = perms_up_to(n).concat();
    let perm_forward: Vec<MarkedPermutation> = perms
        .iter()
        .flat_map(|p| {
            subsets(&inversions(p))
                .map(|m| MarkedPermutation::with_inversions(p.clone(), m).expect("inversions"))
                .collect::<Vec<_>>()
        })
        .collect();
    let sigma = named("sigma");
    let perm_backward: Vec<MarkedPermutation> = perms
        .iter()
        .flat_map(|p| {
            let starts: Vec<usize> = occurrences(&sigma, p).iter().filter_map(|o| o.first()).collect();
            subsets(&starts)
                .map(|m| MarkedPermutation::with_sigma_marks(p.clone(), m).expect("sigma starts"))
                .collect::<Vec<_>>()
        })
        .collect();

    let matchings: Vec<Matching> = matchings_up_to(n).concat();
    let matching_forward: Vec<MarkedMatching> = matchings
        .iter()
        .flat_map(|m| {
            subsets(&embraced_nested_openers(m))
                .map(|s| MarkedMatching::with_openers(m.clone(), s).expect("openers"))
                .collect::<Vec<_>>()
        })
        .collect();
    let matching_backward: Vec<MarkedMatching> = matchings
        .iter()
        .flat_map(|m| {
            let arcs: Vec<_> = confused_arcs(m).into_iter().collect();
            subsets(&arcs)
                .map(|s| MarkedMatching::with_confused(m.clone(), s).expect("confused"))
                .collect::<Vec<_>>()
        })
        .collect();

    let posets: Vec<FactorialPoset> = (0..=n).flat_map(enumerate_factorial_posets).collect();
    let poset_forward: Vec<MarkedPoset> = posets
        .iter()
        .flat_map(|p| {
            subsets(&incomparable_pairs(p))
                .map(|s| MarkedPoset::with_pairs(p.clone(), s).expect("pairs"))
                .collect::<Vec<_>>()
        })
        .collect();
    let poset_backward: Vec<MarkedPoset> = posets
        .iter()
        .flat_map(|p| {
            let labels: Vec<usize> = posets::mislabelings(p).into_iter().collect();
            subsets(&labels)
                .map(|s| MarkedPoset::with_mislabelings(p.clone(), s).expect("mislabelings"))
                .collect::<Vec<_>>()
        })
        .collect();

    let perm_desc = |mp: &MarkedPermutation| {
        format!(
            "{} marks {}{}",
            mp.perm(),
            crate::output::concatenated(mp.marked_inversions().iter()),
            crate::output::joined(mp.marked_occurrence_starts().iter())
        )
    };
    let matching_desc = |mm: &MarkedMatching| {
        format!(
            "{} marks {}{}",
            mm.matching(),
            crate::output::concatenated(mm.marked_openers().iter()),
            crate::output::concatenated(mm.marked_confused().iter())
        )
    };
    let poset_desc = |mp: &MarkedPoset| {
        format!(
            "{} marks {}{}",
            mp.poset(),
            crate::output::concatenated(mp.marked_pairs().iter()),
            crate::output::joined(mp.marked_mislabelings().iter())
        )
    };

    vec![
        no_failures(
            format!("permutations: remove after insert is the identity, n <= {n}"),
            &perm_forward,
            |mp| {
                insert_sigma(mp).is_ok_and(|out| {
                    out.marked_occurrence_starts().len() == mp.marked_inversions().len()
                        && out
                            .marked_occurrence_starts()
                            .iter()
                            .all(|&i| sigma_occurrence_starting_at(out.perm(), i).is_some())
                        && remove_sigma(&out).as_ref() == Ok(mp)
                })
            },
            perm_desc,
        ),
        no_failures(
            format!("permutations: insert after remove is the identity, n <= {n}"),
            &perm_backward,
            |mp| remove_sigma(mp).and_then(|back| insert_sigma(&back)).as_ref() == Ok(mp),
            perm_desc,
        ),
        no_failures(
            format!("matchings: remove after insert is the identity, n <= {n}"),
            &matching_forward,
            |mm| {
                insert_confused(mm).is_ok_and(|out| {
                    let confused = confused_arcs(out.matching());
                    is_zero_alignment(out.matching())
                        && out.marked_confused().len() == mm.marked_openers().len()
                        && out.marked_confused().iter().all(|a| confused.contains(a))
                        && remove_confused(&out).as_ref() == Ok(mm)
                })
            },
            matching_desc,
        ),
        no_failures(
            format!("matchings: insert after remove is the identity, n <= {n}"),
            &matching_backward,
            |mm| remove_confused(mm).and_then(|back| insert_confused(&back)).as_ref() == Ok(mm),
            matching_desc,
        ),
        no_failures(
            format!("posets: remove after insert is the identity, n <= {n}"),
            &poset_forward,
            |mp| {
                insert_mislabelings(mp).is_ok_and(|out| {
                    let found = posets::mislabelings(out.poset());
                    FactorialPoset::new(out.poset().bounds().to_vec()).is_ok()
                        && out.marked_mislabelings().len() == mp.marked_pairs().len()
                        && out.marked_mislabelings().iter().all(|j| found.contains(j))
                        && remove_mislabelings(&out).as_ref() == Ok(mp)
                })
            },
            poset_desc,
        ),
        no_failures(
            format!("posets: insert after remove is the identity, n <= {n}"),
            &poset_backward,
            |mp| remove_mislabelings(mp).and_then(|back| insert_mislabelings(&back)).as_ref() == Ok(mp),
            poset_desc,
        ),
        worked_permutation(),
        worked_matching(),
        worked_poset(),
    ]
}

fn example_check(name: &str, expected: String, actual: String) -> Check {
    Check {
        name: name.to_string(),
        passed: expected == actual,
        expected,
        actual,
    }
}

fn worked_permutation() -> Check {
    let p: Permutation = "246531".parse().expect("permutation");
    let marks = [(4, 1), (6, 1), (6, 5)].map(|(a, b)| InversionPair::new(a, b));
    let actual = MarkedPermutation::with_inversions(p, marks)
        .and_then(|mp| insert_sigma(&mp))
        .map(|out| {
            format!(
                "{} marks {}",
                out.perm(),
                crate::output::joined(out.marked_occurrence_starts().iter())
            )
        })
        .unwrap_or_else(|e| e.to_string());
    example_check(
        "worked example 246531",
        "4,3,6,2,8,9,7,5,1 marks 2,4,5".into(),
        actual,
    )
}

fn worked_matching() -> Check {
    let actual = (|| -> fishburn_core::Result<String> {
        let m: Matching = "(1,9)(2,12)(3,10)(4,7)(5,8)(6,11)".parse()?;
        let marks = matchings::parse_embraced_openers("((2,12),4)((1,9),4)((2,12),3)")?;
        let out = insert_confused(&MarkedMatching::with_openers(m, marks)?)?;
        Ok(format!(
            "{} marks {}",
            out.matching(),
            crate::output::concatenated(out.marked_confused().iter())
        ))
    })()
    .unwrap_or_else(|e| e.to_string());
    example_check(
        "worked example with six arcs",
        "(1,12)(2,16)(3,17)(4,14)(5,18)(6,13)(7,10)(8,11)(9,15) marks (3,17)(5,18)(6,13)".into(),
        actual,
    )
}

fn worked_poset() -> Check {
    let actual = (|| -> fishburn_core::Result<String> {
        let p: FactorialPoset = "0,1,0,3,0,0".parse()?;
        let pairs = posets::parse_pairs("(2,3)(1,3)(4,6)(3,6)")?;
        let out = insert_mislabelings(&MarkedPoset::with_pairs(p, pairs)?)?;
        Ok(format!(
            "{} marks {} mislabelings {}",
            out.poset(),
            crate::output::joined(out.marked_mislabelings().iter()),
            crate::output::joined(posets::mislabelings(out.poset()))
        ))
    })()
    .unwrap_or_else(|e| e.to_string());
    example_check(
        "worked example on six elements",
        "0,1,2,1,0,5,0,6,5,0 marks 3,4,8,9 mislabelings 3,4,8,9".into(),
        actual,
    )
}
