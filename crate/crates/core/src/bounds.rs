//! Distance-2 pair decomposition, the quadratic upper bound, the extremal
//! family and exact curve fitting.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balls::{xi_0s, xi_d2_closed, BallSpec, Limits};
use crate::cells::{brute_intersection_with, cell, ds12_intersection_via_cells};
use crate::error::{Error, Result};
use crate::set::{Codec, WordSet};
use crate::word::Word;

/// How `B^DS_{1,2}(x) ∩ B^DS_{1,2}(x′)` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    #[default]
    Cells,
}

pub fn ds12_intersection(x: &Word, y: &Word, method: Method, limits: Limits) -> Result<WordSet> {
    match method {
        Method::Brute => brute_intersection_with(limits, x, y, BallSpec::DS12),
        Method::Cells => ds12_intersection_via_cells(x, y),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum D2Subcase {
    /// Both `x∖i₁ = x′∖i₂` and `x∖i₂ = x′∖i₁`.
    TransposedAdjacent,
    /// Exactly one of the two equalities.
    OneSided,
    /// Neither equality.
    TwoSided,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "subcase", rename_all = "snake_case")]
pub enum D2Shape {
    /// `x = w a b w′`, `x′ = w b a w′`.
    TransposedAdjacent {
        a: u8,
        b: u8,
        /// trailing `a`s of `w`
        sigma1: usize,
        /// trailing `b`s of `w`
        sigma1_other: usize,
        /// leading `b`s of `w′`
        sigma2: usize,
        /// leading `a`s of `w′`
        sigma2_other: usize,
        /// run index of `i₁` in `x`
        tau: usize,
        /// run index of `i₁` in `x′`
        tau_other: usize,
    },
    /// `x = w a b^{σ₀} b w′`, `x′ = w b b^{σ₀} c w′`, after exchanging the
    /// words when `swapped`.
    OneSided {
        a: u8,
        b: u8,
        c: u8,
        sigma0: usize,
        swapped: bool,
    },
    /// Symbols of both words on `[i₁, i₂]`.
    TwoSided { middle: Vec<u8>, middle_other: Vec<u8> },
}

/// Decomposition of a distance-2 pair around its support `{i₁, i₂}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalD2Form {
    pub q: u8,
    pub i1: usize,
    pub i2: usize,
    /// `w`: symbols before `i₁`
    pub prefix: Vec<u8>,
    /// `w′`: symbols after `i₂`
    pub suffix: Vec<u8>,
    pub shape: D2Shape,
}

impl D2Subcase {
    pub fn name(&self) -> &'static str {
        match self {
            D2Subcase::TransposedAdjacent => "transposed_adjacent",
            D2Subcase::OneSided => "one_sided",
            D2Subcase::TwoSided => "two_sided",
        }
    }
}

impl CanonicalD2Form {
    pub fn subcase(&self) -> D2Subcase {
        match self.shape {
            D2Shape::TransposedAdjacent { .. } => D2Subcase::TransposedAdjacent,
            D2Shape::OneSided { .. } => D2Subcase::OneSided,
            D2Shape::TwoSided { .. } => D2Subcase::TwoSided,
        }
    }

    /// Rebuilds `(x, x′)` from the decomposition.
    pub fn reconstruct(&self) -> (Word, Word) {
        let (mid_x, mid_y) = match &self.shape {
            D2Shape::TransposedAdjacent { a, b, .. } => (vec![*a, *b], vec![*b, *a]),
            D2Shape::OneSided { a, b, c, sigma0, swapped } => {
                let mut mx = vec![*a];
                mx.extend(std::iter::repeat_n(*b, sigma0 + 1));
                let mut my = vec![*b; sigma0 + 1];
                my.push(*c);
                if *swapped {
                    (my, mx)
                } else {
                    (mx, my)
                }
            }
            D2Shape::TwoSided { middle, middle_other } => (middle.clone(), middle_other.clone()),
        };
        let build = |mid: Vec<u8>| {
            let mut s = self.prefix.clone();
            s.extend(mid);
            s.extend_from_slice(&self.suffix);
            Word::from_raw(s, self.q)
        };
        (build(mid_x), build(mid_y))
    }
}

/// Splits a distance-2 pair into its subcase and decomposition.
pub fn classify_d2(x: &Word, y: &Word) -> Result<CanonicalD2Form> {
    let supp = x.support_diff(y).map_err(|e| match e {
        Error::EmptySupport => Error::domain("expected distance 2, got 0"),
        e => e,
    })?;
    if supp.d() != 2 {
        return Err(Error::domain(format!("expected distance 2, got {}", supp.d())));
    }
    let (i1, i2) = (supp.indices()[0], supp.indices()[1]);
    let (xs, ys) = (x.symbols(), y.symbols());
    let first = x.deleted(i1) == y.deleted(i2);
    let second = x.deleted(i2) == y.deleted(i1);
    let prefix = xs[..i1 - 1].to_vec();
    let suffix = xs[i2..].to_vec();
    let shape = match (first, second) {
        (true, true) => {
            let (a, b) = (xs[i1 - 1], xs[i2 - 1]);
            let trailing = |s: u8| prefix.iter().rev().take_while(|&&v| v == s).count();
            let leading = |s: u8| suffix.iter().take_while(|&&v| v == s).count();
            D2Shape::TransposedAdjacent {
                a,
                b,
                sigma1: trailing(a),
                sigma1_other: trailing(b),
                sigma2: leading(b),
                sigma2_other: leading(a),
                tau: x.run_index_of(i1)?,
                tau_other: y.run_index_of(i1)?,
            }
        }
        (true, false) | (false, true) => {
            let swapped = !first;
            let (p, r) = if swapped { (ys, xs) } else { (xs, ys) };
            D2Shape::OneSided {
                a: p[i1 - 1],
                b: r[i1 - 1],
                c: r[i2 - 1],
                sigma0: i2 - i1 - 1,
                swapped,
            }
        }
        (false, false) => D2Shape::TwoSided {
            middle: xs[i1 - 1..i2].to_vec(),
            middle_other: ys[i1 - 1..i2].to_vec(),
        },
    };
    Ok(CanonicalD2Form {
        q: x.q(),
        i1,
        i2,
        prefix,
        suffix,
        shape,
    })
}

/// [`classify_d2`] restricted to adjacent transpositions.
pub fn canonical_d2_form(x: &Word, y: &Word) -> Result<CanonicalD2Form> {
    let form = classify_d2(x, y)?;
    if form.subcase() != D2Subcase::TransposedAdjacent {
        return Err(Error::domain(format!(
            "pair is {:?}, not an adjacent transposition",
            form.subcase()
        )));
    }
    Ok(form)
}

/// `(q²−1)n² − (3q²+5q−5)n + c`.
pub fn theorem_bound(q: u32, n: u64, c: i128) -> i128 {
    let (q, n) = (q as i128, n as i128);
    (q * q - 1) * n * n - (3 * q * q + 5 * q - 5) * n + c
}

/// A fitted additive constant and the lengths it was fitted on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FittedConstant {
    pub value: i128,
    pub window: (i64, i64),
}

/// The quadratic bound for a fixed alphabet; the constant is data, not a given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundModel {
    pub q: u32,
    pub leading: i128,
    pub linear: i128,
    pub constant: Option<FittedConstant>,
}

impl BoundModel {
    pub fn new(q: u32) -> Self {
        let qi = q as i128;
        BoundModel {
            q,
            leading: qi * qi - 1,
            linear: -(3 * qi * qi + 5 * qi - 5),
            constant: None,
        }
    }

    pub fn with_constant(mut self, constant: FittedConstant) -> Self {
        self.constant = Some(constant);
        self
    }

    /// `None` until a constant has been supplied.
    pub fn evaluate(&self, n: u64) -> Option<i128> {
        self.constant.as_ref().map(|c| theorem_bound(self.q, n, c.value))
    }
}

/// `x = 101010·(10)^{(n−6)/2}`, `x′ = 100110·(10)^{(n−6)/2}` over `Σ_q`.
pub fn extremal_pair(q: u8, n: usize) -> Result<(Word, Word)> {
    crate::word::check_q(q as u32)?;
    if n < 8 || n % 2 == 1 {
        return Err(Error::domain(format!("extremal pair needs even n >= 8, got {n}")));
    }
    let tail = (0..n - 6).map(|i| if i % 2 == 0 { 1 } else { 0 });
    let x: Vec<u8> = [1, 0, 1, 0, 1, 0].into_iter().chain(tail.clone()).collect();
    let y: Vec<u8> = [1, 0, 0, 1, 1, 0].into_iter().chain(tail).collect();
    Ok((Word::from_raw(x, q), Word::from_raw(y, q)))
}

/// Exact quadratic through the first three points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticFit {
    pub a: Ratio<i128>,
    pub b: Ratio<i128>,
    pub c: Ratio<i128>,
    /// All remaining points lie on the same curve.
    pub consistent: bool,
}

impl QuadraticFit {
    pub fn eval(&self, n: i64) -> Ratio<i128> {
        let n = Ratio::from_integer(n as i128);
        self.a * n * n + self.b * n + self.c
    }

    pub fn integer_coefficients(&self) -> Option<(i128, i128, i128)> {
        if self.a.is_integer() && self.b.is_integer() && self.c.is_integer() {
            Some((self.a.to_integer(), self.b.to_integer(), self.c.to_integer()))
        } else {
            None
        }
    }
}

pub fn fit_quadratic(points: &[(i64, i128)]) -> Result<QuadraticFit> {
    if points.len() < 3 {
        return Err(Error::domain(format!("need at least 3 points, got {}", points.len())));
    }
    let mut seen = std::collections::BTreeSet::new();
    for &(n, _) in points {
        if !seen.insert(n) {
            return Err(Error::domain(format!("duplicate n = {n}")));
        }
    }
    let r = |v: i128| Ratio::from_integer(v);
    let (x0, x1, x2) = (r(points[0].0 as i128), r(points[1].0 as i128), r(points[2].0 as i128));
    let (y0, y1, y2) = (r(points[0].1), r(points[1].1), r(points[2].1));
    // Newton divided differences
    let f01 = (y1 - y0) / (x1 - x0);
    let f12 = (y2 - y1) / (x2 - x1);
    let a = (f12 - f01) / (x2 - x0);
    let b = f01 - a * (x0 + x1);
    let c = y0 - a * x0 * x0 - b * x0;
    let mut fit = QuadraticFit {
        a,
        b,
        c,
        consistent: true,
    };
    fit.consistent = points[3..].iter().all(|&(n, v)| fit.eval(n) == r(v));
    Ok(fit)
}

/// Smallest `n` from which every later point lies on the quadratic through
/// the last three points (after sorting by `n`).
pub fn quadratic_onset(points: &[(i64, i128)]) -> Result<i64> {
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    let k = sorted.len();
    if k < 3 {
        return Err(Error::domain(format!("need at least 3 points, got {k}")));
    }
    let fit = fit_quadratic(&sorted[k - 3..])?;
    let mut onset = sorted[k - 3].0;
    for &(n, v) in sorted[..k - 3].iter().rev() {
        if fit.eval(n) != Ratio::from_integer(v) {
            break;
        }
        onset = n;
    }
    Ok(onset)
}

/// Predicted exact sizes of three cell-union expressions for an adjacent
/// transposition at original length `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimPredictions {
    /// `|E^{i₁} ∪ E^{i₂}|`
    pub union_at_support: i128,
    /// `|E_ℓ ∖ (E_{ℓ+1} ∪ E_{ℓ+2})|`
    pub diff_two_ahead: i128,
    /// `|E_ℓ ∖ E_{ℓ+1}|`
    pub diff_one_ahead: i128,
}

pub fn claim_cell_predictions(q: u32, n: u64) -> Result<ClaimPredictions> {
    if n < 6 {
        return Err(Error::domain(format!("predictions need n >= 6, got {n}")));
    }
    let full = xi_0s(q, n - 1, 2)? as i128;
    let d1 = xi_d2_closed(q, n - 1, 1)? as i128;
    let (qi, ni) = (q as i128, n as i128);
    Ok(ClaimPredictions {
        union_at_support: 2 * full - d1,
        diff_two_ahead: 2 * (qi - 1) * ni + qi * qi - 8 * qi + 4,
        diff_one_ahead: 2 * (qi - 1) * ni + qi * qi - 8 * qi + 6,
    })
}

/// Measured counterparts of [`ClaimPredictions`] on one adjacent transposition.
///
/// `E_ℓ` is the diagonal cell at the ℓ-th run end of `x`; only runs left of the
/// transposed pair are examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimMeasurements {
    pub tau: usize,
    pub sigma1: usize,
    pub union_at_support: usize,
    /// `(ℓ, |E_ℓ ∖ (E_{ℓ+1} ∪ E_{ℓ+2})|)` for `ℓ ≤ τ−3`
    pub diff_two_ahead: Vec<(usize, usize)>,
    /// `(ℓ, |E_ℓ ∖ E_{ℓ+1}|)` for `ℓ ≤ τ−2`
    pub diff_one_ahead: Vec<(usize, usize)>,
    /// `(ℓ, E_ℓ ∩ ⋃_{ℓ+3 ≤ ℓ′ ≤ τ−1} E_{ℓ′} = ∅)` for `ℓ ≤ τ−4`
    pub far_disjoint: Vec<(usize, bool)>,
    /// `E_{τ−1} ⊆ E^{i₁} ∪ E^{i₂}`, measured when `σ₁ = 0` and `τ > 1`
    pub left_neighbor_absorbed: Option<bool>,
}

pub fn measure_claims(x: &Word, y: &Word) -> Result<ClaimMeasurements> {
    let form = canonical_d2_form(x, y)?;
    let D2Shape::TransposedAdjacent { tau, sigma1, .. } = form.shape else {
        unreachable!("canonical form is a transposition")
    };
    let (i1, i2) = (form.i1, form.i2);
    let e_i1 = cell(x, y, i1, i2)?;
    let e_i2 = cell(x, y, i2, i1)?;
    let support_union = e_i1.union(&e_i2);
    let runs = x.run_profile();
    let diag: BTreeMap<usize, WordSet> = (1..tau)
        .map(|l| {
            let j = runs.boundary(l);
            cell(x, y, j, j).map(|c| (l, c))
        })
        .collect::<Result<_>>()?;
    let e = |l: usize| &diag[&l];
    let diff_two_ahead = (1..=tau.saturating_sub(3))
        .map(|l| (l, e(l).difference(&e(l + 1).union(e(l + 2))).len()))
        .collect();
    let diff_one_ahead = (1..=tau.saturating_sub(2))
        .map(|l| (l, e(l).difference(e(l + 1)).len()))
        .collect();
    let far_disjoint = (1..=tau.saturating_sub(4))
        .map(|l| (l, (l + 3..tau).all(|l2| e(l).is_disjoint(e(l2)))))
        .collect();
    let left_neighbor_absorbed = (sigma1 == 0 && tau > 1).then(|| e(tau - 1).is_subset(&support_union));
    Ok(ClaimMeasurements {
        tau,
        sigma1,
        union_at_support: support_union.len(),
        diff_two_ahead,
        diff_one_ahead,
        far_disjoint,
        left_neighbor_absorbed,
    })
}

/// Enumeration limit on `q^n` for all-pairs searches without `force`.
pub const PAIR_SPACE_LIMIT: u128 = 1 << 12;

/// Largest intersection found at one Hamming distance (or overall).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMax {
    pub size: usize,
    pub x: Word,
    pub y: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxSearch {
    pub q: u8,
    pub n: usize,
    pub pairs: u64,
    pub overall: PairMax,
    pub by_distance: BTreeMap<usize, PairMax>,
}

/// Exhaustive maximum of `|B^DS_{1,2}(x) ∩ B^DS_{1,2}(x′)|` over all unordered
/// pairs with `d_H ≥ min_distance`. Ties go to the lexicographically smallest pair.
pub fn max_intersection_search(q: u8, n: usize, min_distance: usize, limits: Limits) -> Result<MaxSearch> {
    crate::word::check_q(q as u32)?;
    BallSpec::DS12.check(n)?;
    let space = (q as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if space > PAIR_SPACE_LIMIT && !limits.force {
        return Err(Error::Guardrail { n, q });
    }
    let codec = Codec::new(n, q)?;
    let words: Vec<Word> = (0..space).map(|k| Word::from_raw(codec.decode(k), q)).collect();
    let balls: Vec<WordSet> = words
        .par_iter()
        .map(|w| Limits::FORCED.ds_ball(w, BallSpec::DS12))
        .collect::<Result<_>>()?;
    // per-x maxima keyed by distance; (size, then smallest y index)
    let partial: Vec<BTreeMap<usize, (usize, usize, usize)>> = (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut best: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
            for k in i + 1..words.len() {
                let d = crate::word::raw_hamming(words[i].symbols(), words[k].symbols());
                if d < min_distance {
                    continue;
                }
                let size = balls[i].intersection_len(&balls[k]);
                let slot = best.entry(d).or_insert((size, i, k));
                if size > slot.0 {
                    *slot = (size, i, k);
                }
            }
            best
        })
        .collect();
    let mut by_idx: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    let mut pairs = 0u64;
    for (i, best) in partial.into_iter().enumerate() {
        pairs += (i + 1..words.len())
            .filter(|&k| crate::word::raw_hamming(words[i].symbols(), words[k].symbols()) >= min_distance)
            .count() as u64;
        for (d, cand) in best {
            let slot = by_idx.entry(d).or_insert(cand);
            if cand.0 > slot.0 {
                *slot = cand;
            }
        }
    }
    let to_max = |(size, i, k): (usize, usize, usize)| PairMax {
        size,
        x: words[i].clone(),
        y: words[k].clone(),
    };
    let overall = by_idx
        .values()
        .copied()
        .fold(None::<(usize, usize, usize)>, |acc, c| match acc {
            Some(a) if a.0 > c.0 || (a.0 == c.0 && (a.1, a.2) <= (c.1, c.2)) => Some(a),
            _ => Some(c),
        })
        .ok_or_else(|| Error::domain("no pairs satisfy the distance constraint"))?;
    Ok(MaxSearch {
        q,
        n,
        pairs,
        overall: to_max(overall),
        by_distance: by_idx.into_iter().map(|(d, c)| (d, to_max(c))).collect(),
    })
}
