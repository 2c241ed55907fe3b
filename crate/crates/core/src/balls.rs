//! Error balls and their closed-form sizes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::{check_space, Codec, WordSet};
use crate::word::{check_q, Word};

/// `t` deletions followed by at most `s` substitutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BallSpec {
    pub t: usize,
    pub s: usize,
}

impl BallSpec {
    pub const fn new(t: usize, s: usize) -> Self {
        BallSpec { t, s }
    }

    /// The single-deletion two-substitution channel.
    pub const DS12: BallSpec = BallSpec { t: 1, s: 2 };

    pub fn check(&self, n: usize) -> Result<()> {
        if self.t + self.s < n {
            Ok(())
        } else {
            Err(Error::BallSpec {
                t: self.t,
                s: self.s,
                n,
            })
        }
    }
}

/// Enumeration guardrail settings; `force` lifts the size limit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    pub force: bool,
}

impl Limits {
    pub const FORCED: Limits = Limits { force: true };

    pub fn check(&self, len: usize, q: u8) -> Result<()> {
        check_space(len, q, self.force)
    }

    pub fn sub_ball(&self, u: &Word, s: usize) -> Result<WordSet> {
        self.check(u.len(), u.q())?;
        let codec = Codec::new(u.len(), u.q())?;
        let mut keys = Vec::new();
        push_sub_ball(&codec, u.symbols(), u.q(), s, &mut keys);
        Ok(WordSet::from_keys(u.len(), u.q(), keys))
    }

    pub fn del_ball(&self, x: &Word, t: usize) -> Result<WordSet> {
        if t >= x.len() {
            return Err(Error::BallSpec { t, s: 0, n: x.len() });
        }
        self.check(x.len(), x.q())?;
        let words: Vec<Word> = deletion_results(x, t)
            .into_iter()
            .map(|s| Word::from_raw(s, x.q()))
            .collect();
        WordSet::from_words(x.len() - t, x.q(), &words)
    }

    pub fn ds_ball(&self, x: &Word, spec: BallSpec) -> Result<WordSet> {
        spec.check(x.len())?;
        self.check(x.len(), x.q())?;
        let len = x.len() - spec.t;
        let codec = Codec::new(len, x.q())?;
        let mut keys = Vec::new();
        for sub in deletion_results(x, spec.t) {
            push_sub_ball(&codec, &sub, x.q(), spec.s, &mut keys);
        }
        Ok(WordSet::from_keys(len, x.q(), keys))
    }
}

/// `B^S_s(u)`: all words within Hamming distance `s` of `u`.
pub fn enum_sub_ball(u: &Word, s: usize) -> Result<WordSet> {
    Limits::default().sub_ball(u, s)
}

/// `B^D_t(x)`: all length-`(n−t)` subsequences of `x`.
pub fn enum_del_ball(x: &Word, t: usize) -> Result<WordSet> {
    Limits::default().del_ball(x, t)
}

/// `B^DS_{t,s}(x)`: every deletion result followed by its `s`-substitution ball.
pub fn enum_ds_ball(x: &Word, spec: BallSpec) -> Result<WordSet> {
    Limits::default().ds_ball(x, spec)
}

/// Distinct subsequences after exactly `t` deletions, each level deduplicated.
fn deletion_results(x: &Word, t: usize) -> BTreeSet<Vec<u8>> {
    let mut level: BTreeSet<Vec<u8>> = BTreeSet::from([x.symbols().to_vec()]);
    for _ in 0..t {
        let mut next = BTreeSet::new();
        for w in &level {
            for j in 0..w.len() {
                // one representative per run is enough
                if j + 1 < w.len() && w[j] == w[j + 1] {
                    continue;
                }
                let mut v = Vec::with_capacity(w.len() - 1);
                v.extend_from_slice(&w[..j]);
                v.extend_from_slice(&w[j + 1..]);
                next.insert(v);
            }
        }
        level = next;
    }
    level
}

/// Appends the keys of `B^S_s(symbols)`; each member is produced exactly once.
pub(crate) fn push_sub_ball(codec: &Codec, symbols: &[u8], q: u8, s: usize, out: &mut Vec<u128>) {
    fn rec(codec: &Codec, symbols: &[u8], q: u8, start: usize, budget: usize, key: u128, out: &mut Vec<u128>) {
        out.push(key);
        if budget == 0 {
            return;
        }
        for p in start..symbols.len() {
            let a = symbols[p];
            let w = codec.pow(p);
            let base = key - a as u128 * w;
            for b in 0..q {
                if b != a {
                    rec(codec, symbols, q, p + 1, budget - 1, base + b as u128 * w, out);
                }
            }
        }
    }
    debug_assert_eq!(codec.len(), symbols.len());
    rec(codec, symbols, q, 0, s, codec.encode(symbols), out);
}

pub(crate) fn binom(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc
            .checked_mul((n - i) as u128)
            .ok_or(Error::Overflow("binomial coefficient"))?
            / (i as u128 + 1);
    }
    Ok(acc)
}

fn pow(base: u64, e: u64) -> Result<u128> {
    (base as u128)
        .checked_pow(e as u32)
        .filter(|_| e <= u32::MAX as u64)
        .ok_or(Error::Overflow("power"))
}

fn add(a: u128, b: u128) -> Result<u128> {
    a.checked_add(b).ok_or(Error::Overflow("sum"))
}

fn mul(a: u128, b: u128) -> Result<u128> {
    a.checked_mul(b).ok_or(Error::Overflow("product"))
}

/// `Σ_{k=0}^{top} C(n,k)(q−1)^k`; zero when `top < 0`.
fn partial_ball(q: u64, n: u64, top: i64) -> Result<u128> {
    let mut acc = 0u128;
    if top < 0 {
        return Ok(0);
    }
    for k in 0..=(top as u64).min(n) {
        acc = add(acc, mul(binom(n, k)?, pow(q - 1, k)?)?)?;
    }
    Ok(acc)
}

/// Size of an `s`-substitution ball in `Σ_q^n`.
pub fn xi_0s(q: u32, n: u64, s: u64) -> Result<u128> {
    check_q(q)?;
    partial_ball(q as u64, n, s as i64)
}

/// Parameters of an intersection-size query: words of length `n` at distance `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct XiQuery {
    pub q: u32,
    pub n: u64,
    pub d: u64,
    pub s: u64,
}

/// `|B^S_s(u) ∩ B^S_s(u′)|` for `d_H(u,u′) = d`, `1 ≤ d ≤ 2s`.
pub fn xi_ds(query: XiQuery) -> Result<u128> {
    let XiQuery { q, n, d, s } = query;
    check_q(q)?;
    if d < 1 || d > 2 * s {
        return Err(Error::domain(format!(
            "distance d={d} is outside 1..=2s (s={s}); intersections at d > 2s are empty"
        )));
    }
    if n < d {
        return Err(Error::domain(format!("distance d={d} exceeds length n={n}")));
    }
    let (q, di, si) = (q as u64, d as i64, s as i64);
    let (lo, hi) = if d <= s { (0, d) } else { (d - s, s) };
    let mut total = 0u128;
    if q == 2 {
        for i in lo..=hi {
            let top = si - di + (i.min(d - i)) as i64;
            total = add(total, mul(binom(d, i)?, partial_ball(2, n - d, top)?)?)?;
        }
        return Ok(total);
    }
    for i in lo..=hi {
        let j_lo = d.saturating_sub(s);
        for j in j_lo..=(d - i) {
            let top = si - di + (i.min(j)) as i64;
            let eta = mul(pow(q - 2, d - i - j)?, partial_ball(q, n - d, top)?)?;
            let coeff = mul(binom(d, i)?, binom(d - i, j)?)?;
            total = add(total, mul(coeff, eta)?)?;
        }
    }
    Ok(total)
}

fn closed_value(v: i128) -> Result<u128> {
    u128::try_from(v).map_err(|_| Error::domain(format!("closed form is negative ({v}) at this length")))
}

/// Closed-form size of a 2-substitution ball for words of length `len`.
pub fn xi_02_closed(q: u32, len: u64) -> Result<u128> {
    check_q(q)?;
    let (q, big_n) = (q as i128, len as i128 + 1);
    let twice = (q - 1) * (q - 1) * big_n * big_n - (3 * q - 5) * (q - 1) * big_n;
    closed_value(twice / 2 + (q * q - 3 * q + 3))
}

/// Closed-form `|B^S_2(u) ∩ B^S_2(u′)|` for words of length `len` at distance `d ∈ 1..=4`.
pub fn xi_d2_closed(q: u32, len: u64, d: u64) -> Result<u128> {
    check_q(q)?;
    let (q, big_n) = (q as i128, len as i128 + 1);
    let v = match d {
        1 => q * (q - 1) * big_n - 2 * q * q + 3 * q,
        2 => 2 * (q - 1) * big_n + q * q - 6 * q + 6,
        3 => 6 * q - 6,
        4 => 6,
        _ => return Err(Error::domain(format!("closed form covers d in 1..=4, got {d}"))),
    };
    closed_value(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str, q: u8) -> Word {
        Word::parse(s, q).unwrap()
    }

    fn strings(set: &WordSet) -> Vec<String> {
        set.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn sub_ball_examples() {
        assert_eq!(strings(&enum_sub_ball(&w("010", 2), 1).unwrap()), ["000", "010", "011", "110"]);
        assert_eq!(strings(&enum_sub_ball(&w("00", 2), 0).unwrap()), ["00"]);
        assert_eq!(enum_sub_ball(&w("0000", 3), 2).unwrap().len(), 1 + 4 * 2 + 6 * 4);
    }

    #[test]
    fn del_ball_examples() {
        assert_eq!(strings(&enum_del_ball(&w("0011", 2), 1).unwrap()), ["001", "011"]);
        assert_eq!(strings(&enum_del_ball(&w("0000", 2), 1).unwrap()), ["000"]);
        assert_eq!(strings(&enum_del_ball(&w("0101", 2), 1).unwrap()), ["001", "010", "011", "101"]);
        assert!(matches!(enum_del_ball(&w("01", 2), 2), Err(Error::BallSpec { .. })));
        assert_eq!(enum_del_ball(&w("0110", 2), 2).unwrap().len(), 4);
    }

    #[test]
    fn ds_ball_examples() {
        assert!(matches!(enum_ds_ball(&w("00", 2), BallSpec::new(1, 1)), Err(Error::BallSpec { .. })));
        assert_eq!(strings(&enum_ds_ball(&w("000", 2), BallSpec::new(1, 1)).unwrap()), ["00", "01", "10"]);
        let b = enum_ds_ball(&w("0000", 2), BallSpec::DS12).unwrap();
        assert_eq!(b.len(), 7);
        assert!(!b.contains(&w("111", 2)));
    }

    #[test]
    fn ds_ball_equals_composition() {
        let x = w("0120", 3);
        let dels = enum_del_ball(&x, 1).unwrap();
        let composed = WordSet::union_all(3, 3, dels.iter().map(|d| enum_sub_ball(&d, 2).unwrap()));
        assert_eq!(enum_ds_ball(&x, BallSpec::DS12).unwrap(), composed);
    }

    #[test]
    fn guardrail_applies() {
        let long = Word::new(vec![0; 25], 2).unwrap();
        assert_eq!(enum_sub_ball(&long, 1), Err(Error::Guardrail { n: 25, q: 2 }));
        assert_eq!(Limits::FORCED.sub_ball(&long, 1).unwrap().len(), 26);
    }

    #[test]
    fn xi_examples() {
        assert_eq!(xi_0s(2, 4, 2).unwrap(), 11);
        assert_eq!(xi_0s(5, 9, 0).unwrap(), 1);
        assert_eq!(xi_0s(2, 7, 2).unwrap(), 29);
        let q = |q, n, d, s| xi_ds(XiQuery { q, n, d, s }).unwrap();
        assert_eq!(q(2, 4, 2, 2), 8);
        assert_eq!(q(2, 6, 3, 2), 6);
        assert_eq!(q(3, 6, 1, 2), 33);
        assert!(xi_ds(XiQuery { q: 2, n: 6, d: 5, s: 2 }).is_err());
        assert!(xi_ds(XiQuery { q: 2, n: 6, d: 0, s: 2 }).is_err());
    }

    #[test]
    fn closed_examples() {
        assert_eq!(xi_d2_closed(2, 4, 1).unwrap(), 8);
        for len in 4..20 {
            assert_eq!(xi_d2_closed(2, len, 4).unwrap(), 6);
        }
        assert_eq!(xi_d2_closed(3, 7, 2).unwrap(), 29);
        assert_eq!(xi_d2_closed(3, 6, 2).unwrap(), 25);
        assert!(xi_d2_closed(3, 6, 5).is_err());
        assert_eq!(xi_02_closed(2, 7).unwrap(), 29);
    }

    #[test]
    fn closed_forms_match_sums() {
        for q in 2..=6u32 {
            for len in 4..=40u64 {
                assert_eq!(xi_02_closed(q, len).unwrap(), xi_0s(q, len, 2).unwrap());
                for d in 1..=4 {
                    let sum = xi_ds(XiQuery { q, n: len, d, s: 2 }).unwrap();
                    assert_eq!(xi_d2_closed(q, len, d).unwrap(), sum, "q={q} len={len} d={d}");
                }
                assert_eq!(xi_d2_closed(2, len, 2).unwrap() as u64, 2 * len);
            }
        }
    }

    #[test]
    fn intersection_sizes_decrease_with_distance() {
        for q in 2..=6u32 {
            for len in 3..=40u64 {
                let mut prev = xi_0s(q, len, 2).unwrap();
                for d in 1..=4 {
                    let cur = xi_d2_closed(q, len, d).unwrap();
                    if q == 2 && (d % 2 == 0 || len == 3) {
                        // binary: d=1,2 share 2·len and d=3,4 share 6
                        assert!(cur <= prev, "q={q} len={len} d={d}");
                    } else {
                        assert!(cur < prev, "q={q} len={len} d={d}");
                    }
                    prev = cur;
                }
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(xi_0s(36, 10_000, 40), Err(Error::Overflow(_))));
        assert!(xi_0s(36, 10_000, 2).is_ok());
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn ds_ball_monotone_in_s(q in 2u8..=3, syms in proptest::collection::vec(0u8..3, 4..8), t in 0usize..2) {
                let syms: Vec<u8> = syms.into_iter().map(|s| s % q).collect();
                let x = Word::new(syms, q).unwrap();
                let s_max = x.len() - t - 1;
                for s in 1..=s_max.min(3) {
                    let big = enum_ds_ball(&x, BallSpec::new(t, s)).unwrap();
                    let small = enum_ds_ball(&x, BallSpec::new(t, s - 1)).unwrap();
                    prop_assert!(small.is_subset(&big));
                }
            }

            #[test]
            fn sub_ball_size_matches_sum(q in 2u8..=4, syms in proptest::collection::vec(0u8..4, 1..9), s in 0usize..4) {
                let syms: Vec<u8> = syms.into_iter().map(|v| v % q).collect();
                let u = Word::new(syms, q).unwrap();
                let size = enum_sub_ball(&u, s).unwrap().len() as u128;
                prop_assert_eq!(size, xi_0s(q as u32, u.len() as u64, s as u64).unwrap());
            }
        }
    }
}
