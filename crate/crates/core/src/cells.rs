//! Intersections of combined balls and their decomposition into cells
//! `E^j_{j′} = B^S_2(x∖j, x′∖j′)`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balls::{push_sub_ball, BallSpec, Limits};
use crate::error::{Error, Result};
use crate::set::{Codec, WordSet};
use crate::word::{raw_hamming, Word};

/// Which side of the pair carries the left end of the window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    /// `j ≤ j′`, window `[j, j′]`
    Forward,
    /// `j > j′`, window `[j′, j]`
    Backward,
}

/// Distance data for one pair of deletion positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellIndex {
    pub j: usize,
    pub j_other: usize,
    pub orientation: Orientation,
    /// Hamming distance of the two deleted words.
    pub d_prime: usize,
    /// Shifted mismatches inside the window.
    pub delta: usize,
    /// Support positions outside the window.
    pub s_out: usize,
}

/// Distance between `x∖j` and `x′∖j′` from the support and the window shift count.
pub fn deletion_pair_distance(x: &Word, y: &Word, j: usize, j_other: usize) -> Result<CellIndex> {
    x.check_same_shape(y)?;
    let n = x.len();
    for pos in [j, j_other] {
        if pos == 0 || pos > n {
            return Err(Error::Index { pos, len: n });
        }
    }
    Ok(window_distance(x.symbols(), y.symbols(), j, j_other))
}

fn window_distance(a: &[u8], b: &[u8], j: usize, j_other: usize) -> CellIndex {
    let (lo, hi, orientation) = if j <= j_other {
        (j, j_other, Orientation::Forward)
    } else {
        (j_other, j, Orientation::Backward)
    };
    let s_out = (1..lo).chain(hi + 1..=a.len()).filter(|&i| a[i - 1] != b[i - 1]).count();
    let delta = match orientation {
        Orientation::Forward => (lo..hi).filter(|&i| b[i - 1] != a[i]).count(),
        Orientation::Backward => (lo..hi).filter(|&i| a[i - 1] != b[i]).count(),
    };
    CellIndex {
        j,
        j_other,
        orientation,
        d_prime: s_out + delta,
        delta,
        s_out,
    }
}

/// `B(x) ∩ B(x′)` by enumerating both balls.
pub fn brute_intersection(x: &Word, y: &Word, spec: BallSpec) -> Result<WordSet> {
    brute_intersection_with(Limits::default(), x, y, spec)
}

pub fn brute_intersection_with(limits: Limits, x: &Word, y: &Word, spec: BallSpec) -> Result<WordSet> {
    x.check_same_shape(y)?;
    let bx = limits.ds_ball(x, spec)?;
    let by = limits.ds_ball(y, spec)?;
    Ok(bx.intersection(&by))
}

/// `B^S_2(u) ∩ B^S_2(u′)` built directly from the per-distance templates.
///
/// Identical words and words at distance five or more are reported as
/// [`Error::EmptySupport`] and [`Error::Disjoint`] respectively.
pub fn sub2_intersection_structural(u: &Word, v: &Word) -> Result<WordSet> {
    u.check_same_shape(v)?;
    let codec = Codec::new(u.len(), u.q())?;
    let mut keys = Vec::new();
    structural_keys(&codec, u.symbols(), v.symbols(), u.q(), &mut keys)?;
    Ok(WordSet::from_keys(u.len(), u.q(), keys))
}

/// Pushes every word one substitution away from `key` at a non-frozen position.
fn push_around(codec: &Codec, word: &[u8], key: u128, q: u8, frozen: &[usize], out: &mut Vec<u128>) {
    for (p, &a) in word.iter().enumerate() {
        if frozen.contains(&p) {
            continue;
        }
        let w = codec.pow(p);
        let base = key - a as u128 * w;
        for b in (0..q).filter(|&b| b != a) {
            out.push(base + b as u128 * w);
        }
    }
}

fn set_symbol(codec: &Codec, key: u128, p: usize, from: u8, to: u8) -> u128 {
    key - from as u128 * codec.pow(p) + to as u128 * codec.pow(p)
}

fn structural_keys(codec: &Codec, u: &[u8], v: &[u8], q: u8, out: &mut Vec<u128>) -> Result<()> {
    let supp: Vec<usize> = (0..u.len()).filter(|&i| u[i] != v[i]).collect();
    let key = codec.encode(u);
    match supp.len() {
        0 => return Err(Error::EmptySupport),
        1 => {
            let i = supp[0];
            for c in 0..q {
                let k = set_symbol(codec, key, i, u[i], c);
                out.push(k);
                push_around(codec, u, k, q, &supp, out);
            }
        }
        2 => {
            let (i1, i2) = (supp[0], supp[1]);
            let start = out.len();
            for c1 in 0..q {
                for c2 in 0..q {
                    let k = set_symbol(codec, set_symbol(codec, key, i1, u[i1], c1), i2, u[i2], c2);
                    out.push(k);
                }
            }
            let split = out.len();
            for (c1, c2) in [(u[i1], v[i2]), (v[i1], u[i2])] {
                let k = set_symbol(codec, set_symbol(codec, key, i1, u[i1], c1), i2, u[i2], c2);
                push_around(codec, u, k, q, &supp, out);
            }
            debug_assert!({
                let mut exact = out[start..split].to_vec();
                exact.sort_unstable();
                out[split..].iter().all(|k| exact.binary_search(k).is_err())
            });
        }
        3 => {
            for free in 0..3 {
                // one remaining coordinate follows u, the other follows v
                for from_v in (0..3).filter(|&t| t != free) {
                    let (pf, pv) = (supp[free], supp[from_v]);
                    let base = set_symbol(codec, key, pv, u[pv], v[pv]);
                    for c in 0..q {
                        out.push(set_symbol(codec, base, pf, u[pf], c));
                    }
                }
            }
        }
        4 => {
            for a in 0..4 {
                for b in a + 1..4 {
                    let mut k = key;
                    for (t, &p) in supp.iter().enumerate() {
                        if t != a && t != b {
                            k = set_symbol(codec, k, p, u[p], v[p]);
                        }
                    }
                    out.push(k);
                }
            }
        }
        d => return Err(Error::Disjoint { d }),
    }
    Ok(())
}

/// Keys of `B^S_2(a) ∩ B^S_2(b)` for equal-length raw words; empty when far apart.
fn cell_keys(codec: &Codec, a: &[u8], b: &[u8], q: u8, out: &mut Vec<u128>) {
    match raw_hamming(a, b) {
        0 => push_sub_ball(codec, a, q, 2, out),
        1..=4 => structural_keys(codec, a, b, q, out).expect("distance checked"),
        _ => {}
    }
}

/// The cell `E^j_{j′}` as a set of length-`(n−1)` words.
pub fn cell(x: &Word, y: &Word, j: usize, j_other: usize) -> Result<WordSet> {
    x.check_same_shape(y)?;
    BallSpec::DS12.check(x.len())?;
    let a = x.delete_at(j)?;
    let b = y.delete_at(j_other)?;
    let codec = Codec::new(a.len(), a.q())?;
    let mut keys = Vec::new();
    cell_keys(&codec, a.symbols(), b.symbols(), a.q(), &mut keys);
    Ok(WordSet::from_keys(a.len(), a.q(), keys))
}

/// `B^DS_{1,2}(x) ∩ B^DS_{1,2}(x′)` as the union of cells over run ends of both words.
pub fn ds12_intersection_via_cells(x: &Word, y: &Word) -> Result<WordSet> {
    x.check_same_shape(y)?;
    BallSpec::DS12.check(x.len())?;
    let (len, q) = (x.len() - 1, x.q());
    let codec = Codec::new(len, q)?;
    let xs: Vec<Word> = x.run_profile().boundaries().iter().map(|&j| x.deleted(j)).collect();
    let ys: Vec<Word> = y.run_profile().boundaries().iter().map(|&j| y.deleted(j)).collect();
    let keys: Vec<u128> = xs
        .par_iter()
        .flat_map_iter(|a| {
            let mut out = Vec::new();
            for b in &ys {
                cell_keys(&codec, a.symbols(), b.symbols(), q, &mut out);
            }
            out
        })
        .collect();
    Ok(WordSet::from_keys(len, q, keys))
}

/// Distance bucket; `5` stands for every distance of five or more.
pub const FAR: usize = 5;

/// Counts of run-end pairs by orientation, support outside the window, and distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairHistogram {
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub m_other: usize,
    /// `d = 2` and neither deleted-word equality holds.
    pub two_sided: bool,
    counts: BTreeMap<(Orientation, usize, usize), usize>,
}

/// A bucket whose count exceeds its bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketViolation {
    pub orientation: Option<Orientation>,
    pub s_out: Option<usize>,
    pub d_prime: usize,
    pub count: usize,
    pub bound: usize,
}

/// Histogram of `(j_i, j′_{i′})` run-end pairs; requires `d_H(x, x′) ≥ 2`.
pub fn pair_distance_histogram(x: &Word, y: &Word) -> Result<PairHistogram> {
    let d = x.hamming(y)?;
    if d < 2 {
        return Err(Error::domain(format!("histogram needs distance at least 2, got {d}")));
    }
    let supp = x.support_diff(y)?;
    let two_sided = d == 2 && {
        let (i1, i2) = (supp.indices()[0], supp.indices()[1]);
        x.deleted(i1) != y.deleted(i2) && x.deleted(i2) != y.deleted(i1)
    };
    let bx = x.run_profile();
    let by = y.run_profile();
    let mut counts = BTreeMap::new();
    for &j in bx.boundaries() {
        for &j2 in by.boundaries() {
            let c = window_distance(x.symbols(), y.symbols(), j, j2);
            *counts.entry((c.orientation, c.s_out, c.d_prime.min(FAR))).or_insert(0) += 1;
        }
    }
    Ok(PairHistogram {
        n: x.len(),
        d,
        m: bx.m(),
        m_other: by.m(),
        two_sided,
        counts,
    })
}

impl PairHistogram {
    pub fn count(&self, orientation: Orientation, s_out: usize, d_prime: usize) -> usize {
        self.counts.get(&(orientation, s_out, d_prime.min(FAR))).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn column_total(&self, d_prime: usize) -> usize {
        self.counts
            .iter()
            .filter(|((_, _, dp), _)| *dp == d_prime.min(FAR))
            .map(|(_, c)| c)
            .sum()
    }

    pub fn buckets(&self) -> impl Iterator<Item = (Orientation, usize, usize, usize)> + '_ {
        self.counts.iter().map(|(&(o, s, dp), &c)| (o, s, dp, c))
    }

    /// Upper bound on one bucket; `None` when no bound applies (`d′ ≥ 5`).
    pub fn bound(&self, orientation: Orientation, s_out: usize, d_prime: usize) -> Option<usize> {
        if d_prime >= FAR {
            return None;
        }
        let d = self.d;
        let b = if s_out > d {
            0
        } else if s_out < d {
            if self.two_sided && s_out == 0 {
                d_prime
            } else {
                (s_out + 1) * (d_prime + 1).saturating_sub(s_out)
            }
        } else if d_prime < d || (d_prime == d && orientation == Orientation::Backward) {
            0
        } else {
            self.n - d
        };
        Some(b)
    }

    /// Sum of the bucket bounds for one distance over both orientations.
    pub fn column_bound(&self, d_prime: usize) -> Option<usize> {
        let mut total = 0;
        for o in [Orientation::Forward, Orientation::Backward] {
            for s in 0..=self.d {
                total += self.bound(o, s, d_prime)?;
            }
        }
        Some(total)
    }

    /// Every bucket and column exceeding its bound.
    pub fn violations(&self) -> Vec<BucketViolation> {
        let mut out = Vec::new();
        for (&(o, s, dp), &count) in &self.counts {
            if let Some(bound) = self.bound(o, s, dp) {
                if count > bound {
                    out.push(BucketViolation {
                        orientation: Some(o),
                        s_out: Some(s),
                        d_prime: dp,
                        count,
                        bound,
                    });
                }
            }
        }
        for dp in 0..FAR {
            let bound = self.column_bound(dp).expect("bounded column");
            let count = self.column_total(dp);
            if count > bound {
                out.push(BucketViolation {
                    orientation: None,
                    s_out: None,
                    d_prime: dp,
                    count,
                    bound,
                });
            }
        }
        out
    }
}

/// One instance of a local cell-absorption relation between run ends.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbsorptionCheck {
    /// Run index ℓ.
    pub run: usize,
    /// Offset of the partner run end: −2, −1, +1 or +2.
    pub offset: i64,
    pub holds: bool,
}

/// For every run end `j_ℓ` of `x` whose neighbourhood avoids the support, checks
/// that the cross cell `E^{j_ℓ}_{j_{ℓ+k}}` lies in `E^{j_ℓ}_{j_ℓ} ∪ E^{j_{ℓ+k}}_{j_{ℓ+k}}`.
pub fn absorption_checks(x: &Word, y: &Word) -> Result<Vec<AbsorptionCheck>> {
    x.check_same_shape(y)?;
    let supp = x.support_diff(y)?;
    let runs = x.run_profile();
    let m = runs.m() as i64;
    let clear = |lo_run: i64, hi_run: i64| {
        let lo = runs.boundary(lo_run as usize) + 1;
        let hi = runs.boundary(hi_run as usize);
        supp.indices().iter().all(|&i| i < lo || i > hi)
    };
    let mut out = Vec::new();
    for ell in 1..=m {
        for offset in [-2i64, -1, 1, 2] {
            let other = ell + offset;
            if other < 1 || other > m {
                continue;
            }
            let ok_region = if offset < 0 {
                ell + offset > 0 && clear(ell + offset - 1, ell)
            } else {
                clear(ell - 1, ell + offset)
            };
            if !ok_region {
                continue;
            }
            let (j, jo) = (runs.boundary(ell as usize), runs.boundary(other as usize));
            let cross = cell(x, y, j, jo)?;
            let cover = cell(x, y, j, j)?.union(&cell(x, y, jo, jo)?);
            out.push(AbsorptionCheck {
                run: ell as usize,
                offset,
                holds: cross.is_subset(&cover),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn strings(set: &WordSet) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn distance_examples() {
        let c = deletion_pair_distance(&w("0011"), &w("0101"), 1, 4).unwrap();
        assert_eq!((c.d_prime, c.s_out, c.delta), (1, 0, 1));
        assert_eq!(deletion_pair_distance(&w("011010"), &w("011010"), 3, 3).unwrap().d_prime, 0);
        assert_eq!(deletion_pair_distance(&w("00100"), &w("00100"), 1, 3).unwrap().d_prime, 1);
        assert!(deletion_pair_distance(&w("0011"), &w("001"), 1, 1).is_err());
        assert!(deletion_pair_distance(&w("0011"), &w("0010"), 1, 5).is_err());
    }

    #[test]
    fn brute_examples() {
        assert_eq!(
            strings(&brute_intersection(&w("0000"), &w("1111"), BallSpec::DS12).unwrap()),
            ["001", "010", "011", "100", "101", "110"]
        );
        assert_eq!(brute_intersection(&w("0000"), &w("0011"), BallSpec::new(0, 2)).unwrap().len(), 8);
        let x = w("01101");
        assert_eq!(
            brute_intersection(&x, &x, BallSpec::DS12).unwrap(),
            crate::enum_ds_ball(&x, BallSpec::DS12).unwrap()
        );
    }

    #[test]
    fn structural_examples() {
        assert_eq!(
            strings(&sub2_intersection_structural(&w("0000"), &w("1111")).unwrap()),
            ["0011", "0101", "0110", "1001", "1010", "1100"]
        );
        assert_eq!(sub2_intersection_structural(&w("000"), &w("100")).unwrap().len(), 6);
        assert_eq!(sub2_intersection_structural(&w("000"), &w("111")).unwrap().len(), 6);
        assert_eq!(sub2_intersection_structural(&w("000"), &w("000")), Err(Error::EmptySupport));
        assert_eq!(sub2_intersection_structural(&w("00000"), &w("11111")), Err(Error::Disjoint { d: 5 }));
    }

    #[test]
    fn cell_examples() {
        let c = cell(&w("0100"), &w("0010"), 2, 3).unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(c, crate::enum_sub_ball(&w("000"), 2).unwrap());
        assert_eq!(cell(&w("10001"), &w("00000"), 1, 1).unwrap().len(), 8);
        assert!(cell(&w("0000000"), &w("1111111"), 1, 1).unwrap().is_empty());
    }

    #[test]
    fn via_cells_examples() {
        let pairs = [("0000", "1111"), ("0101", "0101"), ("101010101010", "100110101010")];
        for (a, b) in pairs {
            let (x, y) = (w(a), w(b));
            assert_eq!(
                ds12_intersection_via_cells(&x, &y).unwrap(),
                brute_intersection(&x, &y, BallSpec::DS12).unwrap(),
                "{a} {b}"
            );
        }
        assert_eq!(ds12_intersection_via_cells(&w("0000"), &w("1111")).unwrap().len(), 6);
    }

    #[test]
    fn histogram_small_example() {
        let (x, y) = (w("10001"), w("00000"));
        let h = pair_distance_histogram(&x, &y).unwrap();
        assert_eq!(h.total(), 3);
        assert!(h.two_sided);
        // direct scan over run-end pairs
        let mut expected = BTreeMap::new();
        for j in [1usize, 4, 5] {
            let a = x.delete_at(j).unwrap();
            let b = y.delete_at(5).unwrap();
            let dp = a.hamming(&b).unwrap();
            *expected.entry(dp).or_insert(0usize) += 1;
        }
        for (dp, c) in expected {
            assert_eq!(h.column_total(dp), c);
        }
        assert!(h.violations().is_empty());
        assert!(pair_distance_histogram(&w("0000"), &w("0001")).is_err());
    }

    #[test]
    fn two_sided_column_bound() {
        let h = pair_distance_histogram(&w("110000000000"), &w("010000100000")).unwrap();
        assert!(h.two_sided);
        assert_eq!(h.column_bound(2), Some(h.n + 10));
        assert_eq!(h.column_bound(3), Some(2 * h.n + 14));
        assert_eq!(h.column_bound(4), Some(2 * h.n + 20));
        assert_eq!(h.column_bound(5), None);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn pair(q: u8, n: usize) -> impl Strategy<Value = (Word, Word)> {
            (
                proptest::collection::vec(0..q, n),
                proptest::collection::vec(0..q, n),
            )
                .prop_map(move |(a, b)| (Word::new(a, q).unwrap(), Word::new(b, q).unwrap()))
        }

        /// A distance-2 pair sharing a long prefix, so absorption relations apply.
        fn d2_pair() -> impl Strategy<Value = (Word, Word)> {
            (2u8..=3, 8usize..12).prop_flat_map(|(q, n)| {
                (proptest::collection::vec(0..q, n), n - 3..n, 1..q, 1..q).prop_map(move |(s, i1, r1, r2)| {
                    let mut t = s.clone();
                    let i2 = if i1 + 1 < n { i1 + 1 } else { i1 - 1 };
                    t[i1] = (t[i1] + r1) % q;
                    t[i2] = (t[i2] + r2) % q;
                    (Word::new(s, q).unwrap(), Word::new(t, q).unwrap())
                })
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn window_identity((x, y) in pair(3, 9), j in 1usize..=9, j2 in 1usize..=9) {
                let c = deletion_pair_distance(&x, &y, j, j2).unwrap();
                prop_assert_eq!(c.d_prime, c.s_out + c.delta);
                prop_assert_eq!(c.d_prime, x.hamming_after_deletions(j, &y, j2).unwrap());
            }

            #[test]
            fn cell_empty_iff_far((x, y) in pair(2, 10), j in 1usize..=10, j2 in 1usize..=10) {
                let c = cell(&x, &y, j, j2).unwrap();
                let dp = deletion_pair_distance(&x, &y, j, j2).unwrap().d_prime;
                prop_assert_eq!(c.is_empty(), dp >= 5);
            }

            #[test]
            fn absorption_relations_hold((x, y) in d2_pair()) {
                for check in absorption_checks(&x, &y).unwrap() {
                    prop_assert!(check.holds, "{} {} {:?}", x, y, check);
                }
            }

            #[test]
            fn histogram_total((x, y) in pair(2, 12)) {
                if x.hamming(&y).unwrap() >= 2 {
                    let h = pair_distance_histogram(&x, &y).unwrap();
                    prop_assert_eq!(h.total(), h.m * h.m_other);
                }
            }
        }
    }
}
