use std::path::Path;

use dsrecon_core::balls::{xi_02_closed, xi_0s, BallSpec, Limits};
use dsrecon_core::bounds::{canonical_d2_form, extremal_pair, Method};
use dsrecon_core::cells::{brute_intersection_with, ds12_intersection_via_cells, pair_distance_histogram};
use dsrecon_core::recon::{
    min_hamming_distance, read_coverage, simulate as run_simulation, Code, CoverageMode, SampleMode, Selection,
    SimulationConfig,
};
use dsrecon_core::verify::{extremal_sizes, fit_family, run_suite, Suite, VerifyParams};
use dsrecon_core::{Error, Word, WordSet};
use serde::Serialize;
use serde_json::{json, Value};

use crate::report::Timings;
use crate::{
    BallArgs, CoverageArgs, CoverageModeArg, ExtremalArgs, FamilyMethodArg, Global, IntersectArgs, MethodArg,
    Outcome, SampleModeArg, SelectionArg, SimulateArgs, VerifyArgs,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("csv export: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Guardrail { .. }) => 3,
            CliError::Core(Error::Capacity { .. }) => 3,
            CliError::Core(Error::Overflow(_)) => 3,
            _ => 2,
        }
    }
}

type CliResult = std::result::Result<Outcome, CliError>;

fn limits(g: &Global) -> Limits {
    Limits { force: g.force }
}

fn strings(set: &WordSet) -> Vec<String> {
    set.iter().map(|w| w.to_string()).collect()
}

fn load_code(path: &Path, q: Option<u8>, n: Option<usize>) -> Result<Code, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(Code::from_text(&text, q, n)?)
}

pub fn ball(a: &BallArgs, g: &Global, timings: &mut Timings) -> CliResult {
    let word = Word::parse(&a.word, a.q)?;
    let spec = BallSpec::new(a.t, a.s);
    spec.check(word.len())?;
    let ball = timings.time("enumerate", || limits(g).ds_ball(&word, spec))?;
    let mut result = json!({
        "word": word.to_string(),
        "q": a.q,
        "n": word.len(),
        "deletions": a.t,
        "substitutions": a.s,
        "size": ball.len(),
    });
    let mut passed = true;
    if a.t == 0 {
        let formula = xi_0s(a.q as u32, word.len() as u64, a.s as u64)?;
        let closed = if a.s == 2 { Some(xi_02_closed(a.q as u32, word.len() as u64)?) } else { None };
        passed = formula == ball.len() as u128 && closed.is_none_or(|c| c == formula);
        result["formula"] = json!({ "sum": formula.to_string(), "closed": closed.map(|c| c.to_string()), "matches": passed });
    }
    if !a.count_only {
        result["members"] = json!(strings(&ball));
    }
    Ok(Outcome { result, passed, seed: None })
}

pub fn intersect(a: &IntersectArgs, g: &Global, timings: &mut Timings) -> CliResult {
    let x = Word::parse(&a.x, a.q)?;
    let y = Word::parse(&a.y, a.q)?;
    let d = x.hamming(&y)?;
    let brute = match a.method {
        MethodArg::Brute | MethodArg::Both => {
            Some(timings.time("brute", || brute_intersection_with(limits(g), &x, &y, BallSpec::DS12))?)
        }
        MethodArg::Cells => None,
    };
    let cells = match a.method {
        MethodArg::Cells | MethodArg::Both => Some(timings.time("cells", || ds12_intersection_via_cells(&x, &y))?),
        MethodArg::Brute => None,
    };
    let passed = match (&brute, &cells) {
        (Some(b), Some(c)) => b == c,
        _ => true,
    };
    let set = cells.as_ref().or(brute.as_ref()).expect("at least one method ran");
    let mut result = json!({
        "x": x.to_string(),
        "y": y.to_string(),
        "q": a.q,
        "n": x.len(),
        "distance": d,
        "size": set.len(),
        "sizes": {
            "brute": brute.as_ref().map(|b| b.len()),
            "cells": cells.as_ref().map(|c| c.len()),
        },
        "methods_agree": passed,
    });
    if d == 2 {
        result["canonical_form"] = serde_json::to_value(canonical_d2_form(&x, &y)?).expect("plain data");
    }
    if d >= 2 {
        let h = pair_distance_histogram(&x, &y)?;
        let buckets: Vec<Value> = h
            .buckets()
            .map(|(o, s_out, d_prime, count)| {
                json!({
                    "orientation": o,
                    "s_out": s_out,
                    "d_prime": d_prime,
                    "count": count,
                    "bound": h.bound(o, s_out, d_prime),
                })
            })
            .collect();
        result["histogram"] = json!({
            "runs": h.m,
            "runs_other": h.m_other,
            "two_sided": h.two_sided,
            "buckets": buckets,
            "violations": h.violations(),
        });
    }
    if a.members {
        result["members"] = json!(strings(set));
    }
    Ok(Outcome { result, passed, seed: None })
}

pub fn coverage(a: &CoverageArgs, _g: &Global, timings: &mut Timings) -> CliResult {
    let code = load_code(&a.code, a.q, a.n)?;
    let mode = match a.mode {
        CoverageModeArg::Auto => CoverageMode::Auto,
        CoverageModeArg::Exhaustive => CoverageMode::Exhaustive,
        CoverageModeArg::Sampled => {
            let seed = a.seed.ok_or_else(|| CliError::Usage("sampled coverage requires --seed".into()))?;
            CoverageMode::Sampled { pairs: a.pairs, seed }
        }
    };
    let cov = timings.time("coverage", || read_coverage(&code, mode))?;
    let result = json!({
        "q": code.q(),
        "n": code.n(),
        "codewords": code.len(),
        "min_distance": min_hamming_distance(&code)?,
        "nu": cov.nu,
        "threshold": cov.threshold(),
        "kind": cov.kind,
        "witness": [cov.witness.0.to_string(), cov.witness.1.to_string()],
        "pairs_examined": cov.pairs_examined,
        "warnings": cov.warnings,
    });
    let seed = matches!(mode, CoverageMode::Sampled { .. }).then_some(a.seed).flatten();
    Ok(Outcome { result, passed: true, seed })
}

pub fn simulate(a: &SimulateArgs, _g: &Global, timings: &mut Timings) -> CliResult {
    let code = load_code(&a.code, a.q, a.n)?;
    let config = SimulationConfig {
        reads: a.reads,
        trials: a.trials,
        seed: a.seed,
        mode: match a.mode {
            SampleModeArg::Uniform => SampleMode::UniformBall,
            SampleModeArg::Process => SampleMode::Process,
        },
        selection: match a.selection {
            SelectionArg::Uniform => Selection::Uniform,
            SelectionArg::EligibleOnly => Selection::EligibleOnly,
        },
    };
    let summary = timings.time("simulate", || run_simulation(&code, &config))?;
    let passed = summary.wrong == 0;
    let result = serde_json::to_value(&summary).expect("plain data");
    Ok(Outcome { result, passed, seed: Some(a.seed) })
}

pub fn verify(a: &VerifyArgs, g: &Global, timings: &mut Timings) -> CliResult {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.suite.parse().map_err(|_| {
            CliError::Usage(format!(
                "unknown suite {:?}; expected one of xi, lemma2, cells, lemma3-tables, claims, bound, all",
                a.suite
            ))
        })?]
    };
    let params = VerifyParams {
        qs: (!a.q.is_empty()).then(|| a.q.clone()),
        n: a.n,
        n_max: a.n_max,
        samples: a.samples,
        exhaustive: a.exhaustive,
        seed: a.seed,
        force: g.force,
    };
    let mut reports = Vec::new();
    for suite in suites {
        reports.push(timings.time(suite.name(), || run_suite(suite, &params))?);
    }
    let passed = reports.iter().all(|r| r.passed);
    Ok(Outcome {
        result: json!({ "suites": reports }),
        passed,
        seed: Some(a.seed),
    })
}

fn parse_range(text: &str) -> Result<Vec<usize>, CliError> {
    let usage = || CliError::Usage(format!("--n-range expects lo:hi with even lengths >= 8, got {text:?}"));
    let (lo, hi) = text.split_once(':').ok_or_else(usage)?;
    let lo: usize = lo.trim().parse().map_err(|_| usage())?;
    let hi: usize = hi.trim().parse().map_err(|_| usage())?;
    if lo < 8 || lo % 2 == 1 || hi < lo {
        return Err(usage());
    }
    Ok((lo..=hi).step_by(2).collect())
}

#[derive(Serialize)]
struct SizeRow {
    n: usize,
    size: usize,
    x: String,
    y: String,
}

pub fn extremal(a: &ExtremalArgs, g: &Global, timings: &mut Timings) -> CliResult {
    let ns = parse_range(&a.n_range)?;
    if a.fit && ns.len() < 3 {
        return Err(CliError::Usage(format!(
            "a quadratic fit needs at least three even lengths; {} gives {}",
            a.n_range,
            ns.len()
        )));
    }
    let method = match a.method {
        FamilyMethodArg::Brute => Method::Brute,
        FamilyMethodArg::Cells => Method::Cells,
    };
    let (sizes, fit) = if a.fit {
        let family = timings.time("sizes", || fit_family(a.q, &ns, method, limits(g)))?;
        (family.sizes.clone(), Some(family))
    } else {
        (timings.time("sizes", || extremal_sizes(a.q, &ns, method, limits(g)))?, None)
    };
    let rows: Vec<SizeRow> = sizes
        .iter()
        .map(|&(n, size)| {
            let (x, y) = extremal_pair(a.q, n)?;
            Ok(SizeRow {
                n,
                size,
                x: x.to_string(),
                y: y.to_string(),
            })
        })
        .collect::<Result<_, Error>>()?;
    if let Some(path) = &a.csv {
        let mut w = csv::Writer::from_path(path)?;
        for row in &rows {
            w.serialize(row)?;
        }
        w.flush().map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
    }
    let mut result = json!({ "q": a.q, "sizes": rows });
    if let Some(f) = fit {
        result["fit"] = json!({
            "a": f.a,
            "b": f.b,
            "c": f.c,
            "integer_coefficients": f.integer.is_some(),
            "consistent": f.consistent,
            "onset": f.onset,
            "expected_leading": f.expected_leading,
            "expected_linear": f.expected_linear,
            "matches_theorem": f.matches_theorem(),
        });
    }
    Ok(Outcome { result, passed: true, seed: None })
}
