//! Codes, read coverage, channel sampling and intersection decoding for the
//! single-deletion two-substitution channel.

use std::sync::OnceLock;

use rand::seq::index::sample as sample_indices;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::balls::{BallSpec, Limits};
use crate::error::{Error, Result};
use crate::set::WordSet;
use crate::word::{raw_hamming, Word};

/// Generator behind every randomized routine.
pub type SimRng = ChaCha8Rng;

/// Identifier recorded in reports next to the seed.
pub const RNG_ID: &str = "chacha8";

/// Pair count above which coverage needs an explicit mode.
pub const AUTO_PAIR_LIMIT: u128 = 10_000_000;

/// A set of distinct equal-length codewords, kept sorted.
#[derive(Debug, Clone)]
pub struct Code {
    words: Vec<Word>,
    min_distance: Option<usize>,
    coverage: OnceLock<Coverage>,
}

impl Code {
    pub fn new(mut words: Vec<Word>) -> Result<Self> {
        let first = words.first().ok_or_else(|| Error::domain("a code needs at least one codeword"))?.clone();
        for w in &words {
            first.check_same_shape(w)?;
        }
        words.sort();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::domain(format!("duplicate codeword {}", pair[0])));
        }
        let min_distance = pairwise_min(&words);
        Ok(Code {
            words,
            min_distance,
            coverage: OnceLock::new(),
        })
    }

    /// Parses the code file format; `q` and `n` override or must match the header.
    pub fn from_text(text: &str, q: Option<u8>, n: Option<usize>) -> Result<Self> {
        let mut header: Option<(u8, usize)> = None;
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if line.starts_with("q=") {
                if header.is_some() || !lines.is_empty() {
                    return Err(Error::Load(format!("line {}: header must come first", no + 1)));
                }
                header = Some(parse_header(line).map_err(|m| Error::Load(format!("line {}: {m}", no + 1)))?);
                continue;
            }
            lines.push((no + 1, line));
        }
        if let Some((hq, hn)) = header {
            if q.is_some_and(|fq| fq != hq) {
                return Err(Error::Load(format!("header says q={hq} but q={} was requested", q.unwrap())));
            }
            if n.is_some_and(|fn_| fn_ != hn) {
                return Err(Error::Load(format!("header says n={hn} but n={} was requested", n.unwrap())));
            }
        }
        let q = match q.or(header.map(|h| h.0)) {
            Some(q) => q,
            None => {
                let max = lines
                    .iter()
                    .flat_map(|(_, l)| l.chars())
                    .filter_map(|c| c.to_digit(36))
                    .max()
                    .unwrap_or(1);
                (max + 1).max(2) as u8
            }
        };
        let n = n.or(header.map(|h| h.1));
        let mut words = Vec::with_capacity(lines.len());
        let mut seen = std::collections::BTreeSet::new();
        for (no, line) in lines {
            let w = Word::parse(line, q).map_err(|e| Error::Load(format!("line {no}: {e}")))?;
            if let Some(n) = n {
                if w.len() != n {
                    return Err(Error::Load(format!("line {no}: length {} but n={n}", w.len())));
                }
            }
            if !seen.insert(w.clone()) {
                return Err(Error::Load(format!("line {no}: duplicate codeword {w}")));
            }
            words.push(w);
        }
        if words.is_empty() {
            return Err(Error::Load("no codewords".into()));
        }
        Code::new(words).map_err(|e| Error::Load(e.to_string()))
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn n(&self) -> usize {
        self.words[0].len()
    }

    pub fn q(&self) -> u8 {
        self.words[0].q()
    }

    /// Exhaustive coverage, computed once and cached.
    pub fn coverage(&self) -> Result<&Coverage> {
        if let Some(c) = self.coverage.get() {
            return Ok(c);
        }
        let c = read_coverage(self, CoverageMode::Auto)?;
        Ok(self.coverage.get_or_init(|| c))
    }
}

fn parse_header(line: &str) -> std::result::Result<(u8, usize), String> {
    let mut q = None;
    let mut n = None;
    for part in line.split_whitespace() {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("bad header field {part:?}"))?;
        match key {
            "q" => q = Some(value.parse::<u8>().map_err(|e| format!("q: {e}"))?),
            "n" => n = Some(value.parse::<usize>().map_err(|e| format!("n: {e}"))?),
            _ => return Err(format!("unknown header field {key:?}")),
        }
    }
    match (q, n) {
        (Some(q), Some(n)) => Ok((q, n)),
        _ => Err("header needs both q= and n=".into()),
    }
}

fn pairwise_min(words: &[Word]) -> Option<usize> {
    (0..words.len())
        .flat_map(|i| (i + 1..words.len()).map(move |k| (i, k)))
        .map(|(i, k)| raw_hamming(words[i].symbols(), words[k].symbols()))
        .min()
}

pub fn min_hamming_distance(code: &Code) -> Result<usize> {
    code.min_distance
        .ok_or_else(|| Error::domain("minimum distance needs at least two codewords"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageMode {
    /// Exhaustive when the pair count is at most [`AUTO_PAIR_LIMIT`], an error otherwise.
    Auto,
    Exhaustive,
    /// Random pairs only; the result is a lower bound.
    Sampled { pairs: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverageKind {
    Exact,
    LowerBound,
}

/// `ν(C)`: the largest intersection of two codeword balls, with a witness pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub nu: usize,
    pub witness: (Word, Word),
    pub kind: CoverageKind,
    pub pairs_examined: u64,
    pub warnings: Vec<String>,
}

impl Coverage {
    /// Number of distinct reads that guarantees a unique decode.
    pub fn threshold(&self) -> usize {
        self.nu + 1
    }
}

/// `B^DS_{1,2}` balls of every codeword, in codeword order.
pub fn codeword_balls(code: &Code) -> Result<Vec<WordSet>> {
    BallSpec::DS12.check(code.n())?;
    code.words
        .par_iter()
        .map(|w| Limits::FORCED.ds_ball(w, BallSpec::DS12))
        .collect()
}

pub fn read_coverage(code: &Code, mode: CoverageMode) -> Result<Coverage> {
    if code.len() < 2 {
        return Err(Error::domain("read coverage needs at least two codewords"));
    }
    if code.n() < 4 {
        return Err(Error::BallSpec { t: 1, s: 2, n: code.n() });
    }
    let k = code.len();
    let total_pairs = (k as u128) * (k as u128 - 1) / 2;
    let exhaustive = match mode {
        CoverageMode::Auto if (k as u128) * (k as u128) > AUTO_PAIR_LIMIT => {
            return Err(Error::domain(format!(
                "{total_pairs} codeword pairs exceed the automatic limit; choose exhaustive or sampled coverage"
            )))
        }
        CoverageMode::Auto | CoverageMode::Exhaustive => true,
        CoverageMode::Sampled { .. } => false,
    };
    let balls = codeword_balls(code)?;
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect()
    } else {
        let CoverageMode::Sampled { pairs, seed } = mode else { unreachable!() };
        let mut rng = SimRng::seed_from_u64(seed);
        let mut out: Vec<(usize, usize)> = (0..pairs)
            .map(|_| {
                let i = rng.gen_range(0..k);
                let mut j = rng.gen_range(0..k - 1);
                if j >= i {
                    j += 1;
                }
                (i.min(j), i.max(j))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let best = pairs
        .par_iter()
        .map(|&(i, j)| (balls[i].intersection_len(&balls[j]), i, j))
        .reduce(
            || (0, usize::MAX, usize::MAX),
            |a, b| if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a },
        );
    let mut warnings = Vec::new();
    if let Some(d) = code.min_distance {
        if d < 2 {
            warnings.push(format!("minimum Hamming distance is {d}; coverage is usually taken for distance >= 2"));
        }
    }
    Ok(Coverage {
        nu: best.0,
        witness: (code.words[best.1].clone(), code.words[best.2].clone()),
        kind: if exhaustive { CoverageKind::Exact } else { CoverageKind::LowerBound },
        pairs_examined: pairs.len() as u64,
        warnings,
    })
}

/// True iff `ν(C) < reads`.
pub fn is_reconstruction_code(code: &Code, reads: usize) -> Result<bool> {
    if reads == 0 {
        return Err(Error::domain("number of reads must be at least 1"));
    }
    Ok(code.coverage()?.nu < reads)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Uniform over the distinct elements of the ball.
    #[default]
    UniformBall,
    /// Uniform deletion, then 0, 1 or 2 substitutions at uniform positions.
    Process,
}

/// One channel output of `x`.
pub fn channel_sample(x: &Word, mode: SampleMode, seed: u64) -> Result<Word> {
    let mut rng = SimRng::seed_from_u64(seed);
    match mode {
        SampleMode::UniformBall => {
            let ball = Limits::FORCED.ds_ball(x, BallSpec::DS12)?;
            let pick = rng.gen_range(0..ball.len());
            Ok(ball.get(pick).expect("index below size"))
        }
        SampleMode::Process => {
            BallSpec::DS12.check(x.len())?;
            Ok(process_sample(x, &mut rng))
        }
    }
}

fn process_sample(x: &Word, rng: &mut SimRng) -> Word {
    let n = x.len();
    let mut out = x.deleted(rng.gen_range(1..=n)).into_symbols();
    let subs = rng.gen_range(0..=2usize);
    let q = x.q();
    for p in sample_indices(rng, n - 1, subs).into_iter() {
        let cur = out[p];
        let mut s = rng.gen_range(0..q - 1);
        if s >= cur {
            s += 1;
        }
        out[p] = s;
    }
    Word::from_raw(out, q)
}

/// Distinct channel outputs, optionally tagged with the word they came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReadSet {
    pub reads: Vec<Word>,
    pub source: Option<Word>,
}

impl ReadSet {
    pub fn new(reads: Vec<Word>) -> Result<Self> {
        let mut sorted = reads.clone();
        sorted.sort();
        if sorted.windows(2).any(|p| p[0] == p[1]) {
            return Err(Error::domain("reads must be pairwise distinct"));
        }
        Ok(ReadSet { reads, source: None })
    }

    pub fn len(&self) -> usize {
        self.reads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reads.is_empty()
    }
}

/// `count` distinct reads of `x`.
pub fn sample_distinct_reads(x: &Word, count: usize, mode: SampleMode, seed: u64) -> Result<ReadSet> {
    let mut rng = SimRng::seed_from_u64(seed);
    sample_distinct_reads_with(x, count, mode, &mut rng)
}

pub fn sample_distinct_reads_with(x: &Word, count: usize, mode: SampleMode, rng: &mut SimRng) -> Result<ReadSet> {
    let ball = Limits::FORCED.ds_ball(x, BallSpec::DS12)?;
    if count > ball.len() {
        return Err(Error::Capacity {
            requested: count,
            available: ball.len(),
        });
    }
    let reads = match mode {
        SampleMode::UniformBall => {
            let members = ball.to_vec();
            let mut idx = sample_indices(rng, members.len(), count).into_vec();
            idx.sort_unstable();
            idx.into_iter().map(|i| members[i].clone()).collect()
        }
        SampleMode::Process => {
            let mut seen = std::collections::BTreeSet::new();
            while seen.len() < count {
                seen.insert(process_sample(x, rng));
            }
            seen.into_iter().collect()
        }
    };
    Ok(ReadSet {
        reads,
        source: Some(x.clone()),
    })
}

/// `count` reads drawn independently; repeats allowed, no decoding guarantee.
pub fn sample_reads_with_replacement(x: &Word, count: usize, mode: SampleMode, rng: &mut SimRng) -> Result<Vec<Word>> {
    BallSpec::DS12.check(x.len())?;
    match mode {
        SampleMode::UniformBall => {
            let members = Limits::FORCED.ds_ball(x, BallSpec::DS12)?.to_vec();
            Ok((0..count).map(|_| members[rng.gen_range(0..members.len())].clone()).collect())
        }
        SampleMode::Process => Ok((0..count).map(|_| process_sample(x, rng)).collect()),
    }
}

/// `r ∈ B^DS_{1,2}(c)`: some deletion of `c` is within distance 2 of `r`.
pub fn in_ds12_ball(c: &[u8], r: &[u8]) -> bool {
    let n = c.len();
    if r.len() + 1 != n {
        return false;
    }
    // prefix[j]: mismatches of c[..j] vs r[..j]; suffix[j]: c[j+1..] vs r[j..]
    let mut suffix = vec![0usize; n + 1];
    for j in (0..n - 1).rev() {
        suffix[j] = suffix[j + 1] + (c[j + 1] != r[j]) as usize;
    }
    let mut prefix = 0usize;
    for j in 0..n {
        if prefix + suffix[j] <= 2 {
            return true;
        }
        if j < n - 1 {
            prefix += (c[j] != r[j]) as usize;
        }
        if prefix > 2 {
            return false;
        }
    }
    false
}

/// Codewords whose ball contains every read.
pub fn decode(reads: &ReadSet, code: &Code) -> Vec<Word> {
    code.words
        .par_iter()
        .filter(|c| {
            reads
                .reads
                .iter()
                .all(|r| r.q() == c.q() && in_ds12_ball(c.symbols(), r.symbols()))
        })
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Selection {
    /// Every codeword equally likely; too-small balls count as capacity errors.
    #[default]
    Uniform,
    /// Only codewords whose ball holds at least the requested number of reads.
    EligibleOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub reads: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: SampleMode,
    pub selection: Selection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimulationSummary {
    pub rng: String,
    pub seed: u64,
    pub trials: usize,
    pub reads: usize,
    pub unique_correct: usize,
    pub ambiguous: usize,
    pub wrong: usize,
    pub capacity_errors: usize,
    pub eligible_codewords: usize,
}

/// Outcome of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Trial {
    Unique,
    Ambiguous,
    Wrong,
    Capacity,
}

/// Repeated transmit–sample–decode trials. Trial `t` uses stream `t` of the
/// seeded generator, so results do not depend on scheduling.
pub fn simulate(code: &Code, config: &SimulationConfig) -> Result<SimulationSummary> {
    if config.reads == 0 {
        return Err(Error::domain("number of reads must be at least 1"));
    }
    let balls = codeword_balls(code)?;
    let eligible: Vec<usize> = (0..code.len()).filter(|&i| balls[i].len() >= config.reads).collect();
    let pool: Vec<usize> = match config.selection {
        Selection::Uniform => (0..code.len()).collect(),
        Selection::EligibleOnly => {
            if eligible.is_empty() {
                let largest = balls.iter().map(|b| b.len()).max().unwrap_or(0);
                return Err(Error::Capacity {
                    requested: config.reads,
                    available: largest,
                });
            }
            eligible.clone()
        }
    };
    let outcomes: Vec<Trial> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = SimRng::seed_from_u64(config.seed);
            rng.set_stream(t as u64);
            let x = &code.words[pool[rng.gen_range(0..pool.len())]];
            let reads = match sample_distinct_reads_with(x, config.reads, config.mode, &mut rng) {
                Ok(r) => r,
                Err(_) => return Trial::Capacity,
            };
            let found = decode(&reads, code);
            match found.as_slice() {
                [only] if only == x => Trial::Unique,
                list if list.contains(x) => Trial::Ambiguous,
                _ => Trial::Wrong,
            }
        })
        .collect();
    let count = |k: Trial| outcomes.iter().filter(|&&o| o == k).count();
    Ok(SimulationSummary {
        rng: RNG_ID.into(),
        seed: config.seed,
        trials: config.trials,
        reads: config.reads,
        unique_correct: count(Trial::Unique),
        ambiguous: count(Trial::Ambiguous),
        wrong: count(Trial::Wrong),
        capacity_errors: count(Trial::Capacity),
        eligible_codewords: eligible.len(),
    })
}

/// All binary words of length `n` with even weight.
pub fn even_weight_code(n: usize) -> Result<Code> {
    crate::set::check_space(n, 2, false)?;
    let words = (0u64..1 << n)
        .filter(|k| k.count_ones() % 2 == 0)
        .map(|k| Word::from_raw((0..n).rev().map(|b| ((k >> b) & 1) as u8).collect(), 2))
        .collect();
    Code::new(words)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::balls::enum_ds_ball;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    fn rep_code() -> Code {
        Code::new(vec![w("0000"), w("1111")]).unwrap()
    }

    #[test]
    fn min_distance_examples() {
        assert_eq!(min_hamming_distance(&even_weight_code(8).unwrap()).unwrap(), 2);
        assert_eq!(min_hamming_distance(&rep_code()).unwrap(), 4);
        let ternary: Vec<Word> = ["00000", "11111", "22222"].iter().map(|s| Word::parse(s, 3).unwrap()).collect();
        assert_eq!(min_hamming_distance(&Code::new(ternary).unwrap()).unwrap(), 5);
        assert!(min_hamming_distance(&Code::new(vec![w("0000")]).unwrap()).is_err());
    }

    #[test]
    fn coverage_examples() {
        let c = rep_code();
        let cov = read_coverage(&c, CoverageMode::Auto).unwrap();
        assert_eq!(cov.nu, 6);
        assert_eq!(cov.kind, CoverageKind::Exact);
        assert_eq!(cov.witness, (w("0000"), w("1111")));
        assert!(read_coverage(&Code::new(vec![w("0101")]).unwrap(), CoverageMode::Auto).is_err());
        assert!(is_reconstruction_code(&c, 7).unwrap());
        assert!(!is_reconstruction_code(&c, 6).unwrap());
    }

    #[test]
    fn code_rejects_bad_input() {
        assert!(Code::new(vec![w("0000"), w("0000")]).is_err());
        assert!(Code::new(vec![w("0000"), w("000")]).is_err());
    }

    #[test]
    fn code_file_format() {
        let text = "# repetition\nq=2 n=4\n0000\n\n1111 # all ones\n";
        let c = Code::from_text(text, None, None).unwrap();
        assert_eq!((c.len(), c.q(), c.n()), (2, 2, 4));
        assert!(Code::from_text(text, Some(3), None).is_err());
        assert!(Code::from_text(text, None, Some(5)).is_err());
        assert!(matches!(Code::from_text("0000\n0000\n", None, None), Err(Error::Load(_))));
        assert_eq!(Code::from_text("0120\n2101\n", None, None).unwrap().q(), 3);
        assert_eq!(Code::from_text("0000\n0000", Some(2), None).unwrap_err().to_string(), "code file: line 2: duplicate codeword 0000");
    }

    #[test]
    fn sampling_is_deterministic_and_in_ball() {
        let x = w("011010");
        let ball = enum_ds_ball(&x, BallSpec::DS12).unwrap();
        for mode in [SampleMode::UniformBall, SampleMode::Process] {
            for seed in 0..50 {
                let r = channel_sample(&x, mode, seed).unwrap();
                assert!(ball.contains(&r));
                assert_eq!(r, channel_sample(&x, mode, seed).unwrap());
            }
        }
    }

    #[test]
    fn distinct_reads() {
        let x = w("0000");
        let all = sample_distinct_reads(&x, 7, SampleMode::UniformBall, 1).unwrap();
        assert_eq!(WordSet::from_words(3, 2, &all.reads).unwrap(), enum_ds_ball(&x, BallSpec::DS12).unwrap());
        assert_eq!(sample_distinct_reads(&x, 1, SampleMode::Process, 1).unwrap().len(), 1);
        assert_eq!(
            sample_distinct_reads(&x, 8, SampleMode::UniformBall, 1),
            Err(Error::Capacity { requested: 8, available: 7 })
        );
    }

    #[test]
    fn decode_examples() {
        let c = rep_code();
        let reads = ReadSet::new(vec![w("001"), w("010")]).unwrap();
        assert_eq!(decode(&reads, &c), vec![w("0000"), w("1111")]);
        let all = ReadSet::new(enum_ds_ball(&w("0000"), BallSpec::DS12).unwrap().to_vec()).unwrap();
        assert_eq!(decode(&all, &c), vec![w("0000")]);
    }

    #[test]
    fn membership_matches_enumeration() {
        for n in 4..=8usize {
            for k in 0u32..1 << n {
                let c: Vec<u8> = (0..n).rev().map(|b| ((k >> b) & 1) as u8).collect();
                let ball = enum_ds_ball(&Word::new(c.clone(), 2).unwrap(), BallSpec::DS12).unwrap();
                for r in 0u32..1 << (n - 1) {
                    let rs: Vec<u8> = (0..n - 1).rev().map(|b| ((r >> b) & 1) as u8).collect();
                    assert_eq!(
                        in_ds12_ball(&c, &rs),
                        ball.contains(&Word::new(rs.clone(), 2).unwrap()),
                        "c={c:?} r={rs:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn uniform_sampling_frequencies() {
        let x = w("0000");
        let ball = enum_ds_ball(&x, BallSpec::DS12).unwrap().to_vec();
        let mut rng = SimRng::seed_from_u64(7);
        let draws = 70_000usize;
        let reads = sample_reads_with_replacement(&x, draws, SampleMode::UniformBall, &mut rng).unwrap();
        let p = 1.0 / 7.0;
        let sigma = (draws as f64 * p * (1.0 - p)).sqrt();
        for member in &ball {
            let hits = reads.iter().filter(|r| *r == member).count() as f64;
            assert!((hits - draws as f64 * p).abs() < 3.0 * sigma, "{member}: {hits}");
        }
    }

    #[test]
    fn simulate_threshold_and_below() {
        let c = rep_code();
        let cfg = SimulationConfig {
            reads: 7,
            trials: 200,
            seed: 3,
            mode: SampleMode::UniformBall,
            selection: Selection::Uniform,
        };
        let s = simulate(&c, &cfg).unwrap();
        assert_eq!(s.unique_correct, 200);
        assert_eq!(s, simulate(&c, &cfg).unwrap());
        let s = simulate(&c, &SimulationConfig { reads: 2, ..cfg }).unwrap();
        assert!(s.ambiguous > 0);
        assert_eq!(s.wrong, 0);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn decode_is_sound(k in 2usize..6, seed in any::<u64>(), count in 1usize..10) {
                let words: Vec<Word> = (0..k as u64)
                    .map(|i| Word::new((0..7).map(|b| (((i * 37 + seed) >> b) & 1) as u8).collect(), 2).unwrap())
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .collect();
                let code = Code::new(words).unwrap();
                for x in code.words() {
                    let reads = sample_distinct_reads(x, count, SampleMode::UniformBall, seed).unwrap();
                    prop_assert!(decode(&reads, &code).contains(x));
                }
            }
        }
    }
}
