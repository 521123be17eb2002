//! Batch runs over generated instances.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{Family, GenError, GenSpec};
use crate::graph::is_rainbow_matching;
use crate::solvers::{solve_with, Algorithm, SolveError, SolveTrace, DEFAULT_BUDGET};
use crate::structure::{above_threshold, threshold_n, Case};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub ks: Vec<usize>,
    pub trials: usize,
    /// Fixed vertex count; `None` means `floor(4.25 k^2) + 1`.
    pub n: Option<usize>,
    pub family: Family,
    /// Color count; `None` means `3k`.
    pub q: Option<usize>,
    pub p: f64,
    pub algorithms: Vec<Algorithm>,
    /// Trial `t` uses generator seed `seed + t`.
    pub seed: u64,
    pub budget: u64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            ks: vec![2, 3],
            trials: 100,
            n: None,
            family: Family::Random,
            q: None,
            p: 0.1,
            algorithms: vec![Algorithm::Pipeline],
            seed: 0,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl ExperimentConfig {
    pub fn n_for(&self, k: usize) -> usize {
        self.n.unwrap_or_else(|| threshold_n(k))
    }

    pub fn spec(&self, k: usize, trial: usize) -> GenSpec {
        GenSpec {
            family: self.family,
            n: self.n_for(k),
            k,
            q: self.q.unwrap_or(3 * k),
            p: self.p,
            seed: self.seed.wrapping_add(trial as u64),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub k: usize,
    pub n: usize,
    pub generator: String,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub size: usize,
    pub succeeded: bool,
    /// Case label of the critical graph, for pipeline rows.
    pub case: Option<Case>,
    /// Case solver that produced the matching, for pipeline rows.
    pub solved_by: Option<Case>,
    pub fallback: bool,
    pub nodes: u64,
    /// Pipeline run with `n > 4.25k^2` and
    /// minimum color degree at least `k`.
    pub hypothesis: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub k: usize,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub successes: usize,
    pub success_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub total_ms: f64,
    /// Per row, in row order.
    pub rows_ms: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub config: ExperimentConfig,
    pub rows: Vec<Row>,
    pub summary: Vec<Summary>,
    pub hypothesis_failures: usize,
    pub timing: Timing,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error("k = {k}, trial {trial}: {source}")]
    Generate {
        k: usize,
        trial: usize,
        #[source]
        source: GenError,
    },
    #[error("k = {k}, seed {seed}: {algorithm} returned an invalid matching")]
    Unverified { k: usize, seed: u64, algorithm: Algorithm },
}

impl Report {
    /// The report without its timing object, which is the part that is
    /// reproducible.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        v.as_object_mut().expect("object").remove("timing");
        v
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "k", "n", "generator", "seed", "algorithm", "size", "succeeded", "case", "solved_by", "fallback",
            "nodes", "hypothesis", "error",
        ])
        .expect("in-memory write");
        let case = |c: Option<Case>| c.map(|c| format!("{c:?}")).unwrap_or_default();
        for r in &self.rows {
            w.write_record([
                r.k.to_string(),
                r.n.to_string(),
                r.generator.clone(),
                r.seed.to_string(),
                r.algorithm.to_string(),
                r.size.to_string(),
                r.succeeded.to_string(),
                case(r.case),
                case(r.solved_by),
                r.fallback.to_string(),
                r.nodes.to_string(),
                r.hypothesis.to_string(),
                r.error.clone().unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}

fn run_one(cfg: &ExperimentConfig, k: usize, trial: usize, alg: Algorithm) -> Result<(Row, f64), ExperimentError> {
    let spec = cfg.spec(k, trial);
    let g = spec.generate().map_err(|source| ExperimentError::Generate { k, trial, source })?;
    let start = Instant::now();
    let outcome = solve_with(alg, &g, k, cfg.budget, spec.seed);
    let ms = start.elapsed().as_secs_f64() * 1e3;

    let mut row = Row {
        k,
        n: g.n(),
        generator: spec.describe(),
        seed: spec.seed,
        algorithm: alg,
        size: 0,
        succeeded: false,
        case: None,
        solved_by: None,
        fallback: false,
        nodes: 0,
        hypothesis: alg == Algorithm::Pipeline && above_threshold(g.n(), k) && g.min_color_degree() >= k,
        error: None,
    };
    let matching = match outcome {
        Ok(r) => {
            if let SolveTrace::Pipeline(p) = &r.trace {
                row.case = p.label.as_ref().map(|l| l.case);
                row.solved_by = p.winning_case();
                row.fallback = p.fallback;
            }
            row.size = r.size;
            row.succeeded = r.succeeded;
            row.nodes = r.stats.nodes;
            r.matching
        }
        Err(e) => {
            row.error = Some(e.to_string());
            match e {
                SolveError::BudgetExceeded { best, budget } => {
                    row.size = best.len();
                    row.nodes = budget;
                    best
                }
                _ => Default::default(),
            }
        }
    };
    if !is_rainbow_matching(&g, &matching.edges) {
        return Err(ExperimentError::Unverified { k, seed: spec.seed, algorithm: alg });
    }
    Ok((row, ms))
}

/// Runs every `(k, trial, algorithm)` combination. Trials run in parallel;
/// rows come out in `(k, trial, algorithm)` order regardless.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Report, ExperimentError> {
    if cfg.trials == 0 {
        return Err(ExperimentError::Config("trials must be at least 1".into()));
    }
    if cfg.ks.is_empty() || cfg.algorithms.is_empty() {
        return Err(ExperimentError::Config("need at least one k and one algorithm".into()));
    }
    let start = Instant::now();
    let jobs: Vec<(usize, usize, Algorithm)> = cfg
        .ks
        .iter()
        .flat_map(|&k| (0..cfg.trials).flat_map(move |t| cfg.algorithms.iter().map(move |&a| (k, t, a))))
        .collect();
    let results: Vec<(Row, f64)> =
        jobs.par_iter().map(|&(k, t, a)| run_one(cfg, k, t, a)).collect::<Result<_, _>>()?;
    let (rows, rows_ms): (Vec<Row>, Vec<f64>) = results.into_iter().unzip();

    let mut summary = Vec::new();
    for &k in &cfg.ks {
        for &algorithm in &cfg.algorithms {
            let runs: Vec<&Row> = rows.iter().filter(|r| r.k == k && r.algorithm == algorithm).collect();
            let successes = runs.iter().filter(|r| r.succeeded).count();
            summary.push(Summary {
                k,
                algorithm,
                runs: runs.len(),
                successes,
                success_rate: successes as f64 / runs.len() as f64,
            });
        }
    }
    let hypothesis_failures = rows.iter().filter(|r| r.hypothesis && !r.succeeded).count();
    let timing = Timing { total_ms: start.elapsed().as_secs_f64() * 1e3, rows_ms };
    Ok(Report { schema: SCHEMA, config: cfg.clone(), rows, summary, hypothesis_failures, timing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ExperimentConfig {
        ExperimentConfig {
            ks: vec![1, 2],
            trials: 3,
            algorithms: vec![Algorithm::Pipeline, Algorithm::Greedy],
            ..Default::default()
        }
    }

    #[test]
    fn row_count_and_order() {
        let r = run_experiment(&small()).unwrap();
        assert_eq!(r.rows.len(), 2 * 3 * 2);
        let keys: Vec<_> = r.rows.iter().map(|r| (r.k, r.seed, r.algorithm)).collect();
        assert_eq!(keys[0], (1, 0, Algorithm::Pipeline));
        assert_eq!(keys[1], (1, 0, Algorithm::Greedy));
        assert_eq!(keys[11], (2, 2, Algorithm::Greedy));
        assert_eq!(r.to_csv().lines().count(), 1 + 12);
    }

    #[test]
    fn reproducible_apart_from_timing() {
        let a = run_experiment(&small()).unwrap();
        let b = run_experiment(&small()).unwrap();
        assert_eq!(a.deterministic_json(), b.deterministic_json());
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a.deterministic_json().get("timing").is_none());
    }

    #[test]
    fn single_trivial_trial() {
        let cfg = ExperimentConfig { ks: vec![1], trials: 1, ..Default::default() };
        let r = run_experiment(&cfg).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.rows[0].succeeded && r.rows[0].hypothesis);
        assert_eq!(r.hypothesis_failures, 0);
        assert_eq!(r.summary[0].success_rate, 1.0);
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = ExperimentConfig { trials: 0, ..Default::default() };
        assert!(matches!(run_experiment(&cfg), Err(ExperimentError::Config(_))));
    }
}
