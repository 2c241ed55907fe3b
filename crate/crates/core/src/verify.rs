//! Invariant suites shared by the command-line front end and the tests.
//!
//! Every suite returns a [`SuiteReport`] with one [`Check`] per invariant; a
//! failing check carries the first counterexample found.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balls::{xi_0s, xi_ds, BallSpec, Limits, XiQuery};
use crate::bounds::{
    canonical_d2_form, claim_cell_predictions, ds12_intersection, extremal_pair, fit_quadratic,
    max_intersection_search, quadratic_onset, theorem_bound, FittedConstant, Method,
};
use crate::cells::{
    brute_intersection_with, deletion_pair_distance, ds12_intersection_via_cells, pair_distance_histogram,
    sub2_intersection_structural,
};
use crate::error::{Error, Result};
use crate::recon::SimRng;
use crate::set::Codec;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Xi,
    Lemma2,
    Cells,
    Lemma3Tables,
    Claims,
    Bound,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Xi,
        Suite::Lemma2,
        Suite::Cells,
        Suite::Lemma3Tables,
        Suite::Claims,
        Suite::Bound,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Xi => "xi",
            Suite::Lemma2 => "lemma2",
            Suite::Cells => "cells",
            Suite::Lemma3Tables => "lemma3-tables",
            Suite::Claims => "claims",
            Suite::Bound => "bound",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown suite {s:?}")))
    }
}

/// Knobs shared by all suites; `None` selects the suite's default.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyParams {
    pub qs: Option<Vec<u8>>,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub samples: Option<usize>,
    pub exhaustive: bool,
    pub seed: u64,
    pub force: bool,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            qs: None,
            n: None,
            n_max: None,
            samples: None,
            exhaustive: true,
            seed: 0,
            force: false,
        }
    }
}

impl VerifyParams {
    fn qs(&self, default: &[u8]) -> Vec<u8> {
        self.qs.clone().unwrap_or_else(|| default.to_vec())
    }
}

/// A reported value attached to a suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Fact {
    Int(i128),
    Text(String),
    Flag(bool),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub facts: BTreeMap<String, Fact>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite,
            passed: true,
            checks: Vec::new(),
            facts: BTreeMap::new(),
        }
    }

    fn push(&mut self, check: Check) {
        self.passed &= check.passed;
        self.checks.push(check);
    }

    fn fact(&mut self, key: &str, value: Fact) {
        self.facts.insert(key.to_string(), value);
    }
}

/// Accumulates cases of one invariant and remembers the first failure.
struct Tally {
    name: String,
    cases: u64,
    failure: Option<String>,
}

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally {
            name: name.into(),
            cases: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(describe());
        }
    }

    fn merge(&mut self, other: Tally) {
        self.cases += other.cases;
        if self.failure.is_none() {
            self.failure = other.failure;
        }
    }

    fn finish(self) -> Check {
        Check {
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            counterexample: self.failure,
        }
    }
}

pub fn run_suite(suite: Suite, params: &VerifyParams) -> Result<SuiteReport> {
    match suite {
        Suite::Xi => xi_suite(params),
        Suite::Lemma2 => lemma2_suite(params),
        Suite::Cells => cells_suite(params),
        Suite::Lemma3Tables => tables_suite(params),
        Suite::Claims => claims_suite(params),
        Suite::Bound => bound_suite(params),
    }
}

/// Every word of length `n` over `Σ_q`, lexicographically.
pub fn all_words(q: u8, n: usize, limits: Limits) -> Result<Vec<Word>> {
    limits.check(n, q)?;
    let codec = Codec::new(n, q)?;
    let total = (q as u128).pow(n as u32);
    Ok((0..total).map(|k| Word::from_raw(codec.decode(k), q)).collect())
}

pub fn random_word(rng: &mut SimRng, q: u8, n: usize) -> Word {
    Word::from_raw((0..n).map(|_| rng.gen_range(0..q)).collect(), q)
}

/// A uniformly random word and a partner at Hamming distance exactly `d`.
pub fn random_pair_at_distance(rng: &mut SimRng, q: u8, n: usize, d: usize) -> (Word, Word) {
    let x = random_word(rng, q, n);
    let mut y = x.symbols().to_vec();
    for p in rand::seq::index::sample(rng, n, d) {
        y[p] = (y[p] + rng.gen_range(1..q)) % q;
    }
    (x, Word::from_raw(y, q))
}

/// An adjacent transposition `w a b w′ / w b a w′` with `i₁ = p` (1-based).
pub fn random_transposition(rng: &mut SimRng, q: u8, n: usize, p: usize) -> (Word, Word) {
    let mut x = random_word(rng, q, n).into_symbols();
    x[p] = (x[p - 1] + rng.gen_range(1..q)) % q;
    let mut y = x.clone();
    y.swap(p - 1, p);
    (Word::from_raw(x, q), Word::from_raw(y, q))
}

fn xi_suite(params: &VerifyParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Xi);
    let n_max = params.n_max.unwrap_or(8);
    let limits = Limits { force: params.force };
    let mut rng = SimRng::seed_from_u64(params.seed);
    let mut sizes = Tally::new("substitution ball size equals the binomial sum");
    let mut inter = Tally::new("pair intersection size equals the distance formula");
    for q in params.qs(&[2, 3, 4]) {
        for n in 3..=n_max {
            let words = all_words(q, n, limits)?;
            for s in 1..=3usize {
                let expected = xi_0s(q as u32, n as u64, s as u64)?;
                let t = words
                    .par_iter()
                    .fold(
                        || Tally::new(""),
                        |mut t, u| {
                            let got = limits.sub_ball(u, s).map(|b| b.len() as u128);
                            t.record(got == Ok(expected), || format!("q={q} n={n} s={s} u={u}: {got:?} vs {expected}"));
                            t
                        },
                    )
                    .reduce(|| Tally::new(""), |mut a, b| {
                        a.merge(b);
                        a
                    });
                sizes.merge(t);
                for d in 1..=n {
                    let expected = if d <= 2 * s {
                        xi_ds(XiQuery { q: q as u32, n: n as u64, d: d as u64, s: s as u64 })?
                    } else {
                        0
                    };
                    for _ in 0..4 {
                        let (u, v) = random_pair_at_distance(&mut rng, q, n, d);
                        let got = limits.sub_ball(&u, s)?.intersection_len(&limits.sub_ball(&v, s)?) as u128;
                        inter.record(got == expected, || format!("q={q} n={n} s={s} u={u} v={v}: {got} vs {expected}"));
                    }
                }
            }
        }
    }
    report.push(sizes.finish());
    report.push(inter.finish());
    Ok(report)
}

fn lemma2_suite(params: &VerifyParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lemma2);
    let limits = Limits { force: params.force };
    let compare = |u: &Word, v: &Word, t: &mut Tally| -> Result<()> {
        let brute = brute_intersection_with(limits, u, v, BallSpec::new(0, 2))?;
        let fast = sub2_intersection_structural(u, v)?;
        t.record(brute == fast, || format!("u={u} v={v}: structural {} vs brute {}", fast.len(), brute.len()));
        Ok(())
    };
    let mut exhaustive = Tally::new("structural equals brute force on all binary pairs");
    if params.exhaustive {
        for n in 3..=params.n_max.unwrap_or(6) {
            let words = all_words(2, n, limits)?;
            for u in &words {
                for v in &words {
                    let d = u.hamming(v)?;
                    if (1..=4).contains(&d) {
                        compare(u, v, &mut exhaustive)?;
                    }
                }
            }
        }
        report.push(exhaustive.finish());
    }
    let n = params.n.unwrap_or(9);
    let samples = params.samples.unwrap_or(500);
    let mut rng = SimRng::seed_from_u64(params.seed);
    for q in params.qs(&[2, 3]) {
        let mut t = Tally::new(format!("structural equals brute force on random pairs, q={q} n={n}"));
        for d in 1..=4.min(n) {
            for _ in 0..samples {
                let (u, v) = random_pair_at_distance(&mut rng, q, n, d);
                compare(&u, &v, &mut t)?;
            }
        }
        report.push(t.finish());
    }
    Ok(report)
}

fn cells_suite(params: &VerifyParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Cells);
    let limits = Limits { force: params.force };
    if params.exhaustive {
        let n_max = params.n_max.unwrap_or(8);
        for q in params.qs(&[2, 3]) {
            let mut t = Tally::new(format!("window formula equals deleted-word distance, q={q} n<={n_max}"));
            for n in 2..=n_max {
                let words = all_words(q, n, limits)?;
                let part = words
                    .par_iter()
                    .fold(
                        || Tally::new(""),
                        |mut t, x| {
                            for y in &words {
                                for j in 1..=n {
                                    for j2 in 1..=n {
                                        let c = deletion_pair_distance(x, y, j, j2).expect("valid positions");
                                        let direct = x.hamming_after_deletions(j, y, j2).expect("valid positions");
                                        t.record(c.d_prime == direct && c.d_prime == c.s_out + c.delta, || {
                                            format!("x={x} y={y} j={j} j'={j2}: {c:?} vs {direct}")
                                        });
                                    }
                                }
                            }
                            t
                        },
                    )
                    .reduce(|| Tally::new(""), |mut a, b| {
                        a.merge(b);
                        a
                    });
                t.merge(part);
            }
            report.push(t.finish());
        }
        let n_union = params.n.unwrap_or(7);
        let mut t = Tally::new(format!("cell union equals brute force on all binary pairs, n<={n_union}"));
        for n in 4..=n_union {
            let words = all_words(2, n, limits)?;
            for (i, x) in words.iter().enumerate() {
                for y in &words[i..] {
                    let a = ds12_intersection_via_cells(x, y)?;
                    let b = brute_intersection_with(limits, x, y, BallSpec::DS12)?;
                    t.record(a == b, || format!("x={x} y={y}: cells {} vs brute {}", a.len(), b.len()));
                }
            }
        }
        report.push(t.finish());
    }
    let samples = params.samples.unwrap_or(200);
    let mut rng = SimRng::seed_from_u64(params.seed);
    for (q, n) in [(2u8, 10usize), (3, 8)] {
        let mut t = Tally::new(format!("cell union equals brute force on random pairs, q={q} n={n}"));
        for _ in 0..samples {
            let x = random_word(&mut rng, q, n);
            let y = random_word(&mut rng, q, n);
            let a = ds12_intersection_via_cells(&x, &y)?;
            let b = brute_intersection_with(limits, &x, &y, BallSpec::DS12)?;
            t.record(a == b, || format!("x={x} y={y}: cells {} vs brute {}", a.len(), b.len()));
        }
        report.push(t.finish());
    }
    Ok(report)
}

fn tables_suite(params: &VerifyParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Lemma3Tables);
    let n = params.n.unwrap_or(12);
    let samples = params.samples.unwrap_or(1000);
    let mut rng = SimRng::seed_from_u64(params.seed);
    for q in params.qs(&[2, 3]) {
        for d in 2..=6.min(n) {
            let mut t = Tally::new(format!("pair counts within table bounds, q={q} n={n} d={d}"));
            let mut two_sided = 0i128;
            for _ in 0..samples {
                let (x, y) = random_pair_at_distance(&mut rng, q, n, d);
                let h = pair_distance_histogram(&x, &y)?;
                two_sided += h.two_sided as i128;
                let v = h.violations();
                let total_ok = h.total() == h.m * h.m_other;
                t.record(v.is_empty() && total_ok, || format!("x={x} y={y}: {v:?}"));
            }
            report.fact(&format!("two_sided_pairs_q{q}_d{d}"), Fact::Int(two_sided));
            report.push(t.finish());
        }
    }
    Ok(report)
}

fn claims_suite(params: &VerifyParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Claims);
    let samples = params.samples.unwrap_or(100);
    let mut rng = SimRng::seed_from_u64(params.seed);
    let mut union = Tally::new("union of the two support cells");
    let mut far = Tally::new("diagonal cells three or more runs apart are disjoint");
    let mut two = Tally::new("diagonal cell minus the next two");
    let mut one = Tally::new("diagonal cell minus the next one");
    let mut absorbed = Tally::new("left neighbour cell lies in the support cells when sigma1 = 0");
    for q in params.qs(&[2, 3]) {
        for n in 6..=10usize {
            let predicted = claim_cell_predictions(q as u32, n as u64)?;
            for _ in 0..samples {
                // transpositions late in the word leave many runs to the left
                let p = rng.gen_range(n / 2..n);
                let (x, y) = random_transposition(&mut rng, q, n, p);
                let m = crate::bounds::measure_claims(&x, &y)?;
                union.record(m.union_at_support as i128 == predicted.union_at_support, || {
                    format!("x={x} y={y}: {} vs {}", m.union_at_support, predicted.union_at_support)
                });
                for &(l, ok) in &m.far_disjoint {
                    far.record(ok, || format!("x={x} y={y} l={l}"));
                }
                for &(l, size) in &m.diff_two_ahead {
                    two.record(size as i128 == predicted.diff_two_ahead, || {
                        format!("x={x} y={y} l={l}: {size} vs {}", predicted.diff_two_ahead)
                    });
                }
                for &(l, size) in &m.diff_one_ahead {
                    one.record(size as i128 == predicted.diff_one_ahead, || {
                        format!("x={x} y={y} l={l}: {size} vs {}", predicted.diff_one_ahead)
                    });
                }
                if let Some(ok) = m.left_neighbor_absorbed {
                    absorbed.record(ok, || format!("x={x} y={y} tau={}", m.tau));
                }
            }
        }
    }
    for t in [union, far, two, one, absorbed] {
        report.push(t.finish());
    }
    Ok(report)
}

/// Intersection sizes of the extremal family at each `n`.
pub fn extremal_sizes(q: u8, ns: &[usize], method: Method, limits: Limits) -> Result<Vec<(usize, usize)>> {
    ns.par_iter()
        .map(|&n| {
            let (x, y) = extremal_pair(q, n)?;
            Ok((n, ds12_intersection(&x, &y, method, limits)?.len()))
        })
        .collect()
}

/// Exact quadratic fit of the extremal family with its onset and constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyFit {
    pub q: u8,
    pub sizes: Vec<(usize, usize)>,
    /// Exact coefficients as reduced fractions `"p/q"` or integers.
    pub a: String,
    pub b: String,
    pub c: String,
    pub integer: Option<(i128, i128, i128)>,
    pub consistent: bool,
    pub onset: i64,
    pub expected_leading: i128,
    pub expected_linear: i128,
}

impl FamilyFit {
    pub fn matches_theorem(&self) -> bool {
        matches!(self.integer, Some((a, b, _)) if a == self.expected_leading && b == self.expected_linear)
    }

    pub fn constant(&self) -> Option<FittedConstant> {
        let (_, _, c) = self.integer?;
        let lo = self.sizes.first()?.0 as i64;
        let hi = self.sizes.last()?.0 as i64;
        Some(FittedConstant { value: c, window: (lo, hi) })
    }
}

pub fn fit_family(q: u8, ns: &[usize], method: Method, limits: Limits) -> Result<FamilyFit> {
    let sizes = extremal_sizes(q, ns, method, limits)?;
    let points: Vec<(i64, i128)> = sizes.iter().map(|&(n, s)| (n as i64, s as i128)).collect();
    let fit = fit_quadratic(&points)?;
    let onset_points: Vec<(i64, i128)> = extremal_sizes(q, &(8..=*ns.iter().max().unwrap_or(&8)).step_by(2).collect::<Vec<_>>(), method, limits)?
        .into_iter()
        .map(|(n, s)| (n as i64, s as i128))
        .collect();
    let model = crate::bounds::BoundModel::new(q as u32);
    Ok(FamilyFit {
        q,
        sizes,
        a: fit.a.to_string(),
        b: fit.b.to_string(),
        c: fit.c.to_string(),
        integer: fit.integer_coefficients(),
        consistent: fit.consistent,
        onset: quadratic_onset(&onset_points)?,
        expected_leading: model.leading,
        expected_linear: model.linear,
    })
}

fn bound_suite(params: &VerifyParams) -> Result<SuiteReport> {
    let mut report = SuiteReport::new(Suite::Bound);
    let q = params.qs(&[2])[0];
    let n = params.n.unwrap_or(9);
    let limits = Limits { force: params.force };
    let family = fit_family(q, &[12, 14, 16, 18], Method::Cells, limits)?;
    let constant = family
        .constant()
        .ok_or_else(|| Error::domain("extremal family sizes do not fit an integer quadratic"))?;
    let search = max_intersection_search(q, n, 2, limits)?;
    let bound = theorem_bound(q as u32, n as u64, constant.value);
    let observed = search.overall.size as i128;
    let mut t = Tally::new(format!("exhaustive maximum within the bound, q={q} n={n}"));
    t.record(observed <= bound, || {
        format!("x={} y={}: {observed} > {bound}", search.overall.x, search.overall.y)
    });
    report.push(t.finish());
    let d2 = search.by_distance.get(&2).map(|m| m.size).unwrap_or(0);
    let mut t = Tally::new("distance-2 maximum dominates larger distances");
    for (d, m) in search.by_distance.range(3..) {
        t.record(d2 >= m.size, || format!("d={d}: {} > {d2} (x={} y={})", m.size, m.x, m.y));
    }
    report.push(t.finish());
    report.fact("fitted_constant", Fact::Int(constant.value));
    report.fact("fit_window", Fact::Text(format!("{}:{}", constant.window.0, constant.window.1)));
    report.fact("fitted_linear", Fact::Text(family.b.clone()));
    report.fact("bound", Fact::Int(bound));
    report.fact("observed_max", Fact::Int(observed));
    report.fact("margin", Fact::Int(bound - observed));
    report.fact("argmax_x", Fact::Text(search.overall.x.to_string()));
    report.fact("argmax_y", Fact::Text(search.overall.y.to_string()));
    report.fact(
        "argmax_distance",
        Fact::Int(search.overall.x.hamming(&search.overall.y)? as i128),
    );
    report.fact("pairs", Fact::Int(search.pairs as i128));
    for (d, m) in &search.by_distance {
        report.fact(&format!("max_d{d}"), Fact::Int(m.size as i128));
    }
    if let Ok(form) = canonical_d2_form(&search.overall.x, &search.overall.y) {
        report.fact("argmax_subcase", Fact::Text(form.subcase().name().into()));
    }
    Ok(report)
}
