//! Random profiles drawn from a source domain, and abundance histograms
//! over many seeded trials.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`). Trial `i` of a run with
//! master seed `m` uses the generator `ChaCha8Rng::seed_from_u64(m)` moved to
//! stream `i`, so every trial is fixed by `(m, i)` alone and results do not
//! depend on the number of worker threads.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::abundance::RestrictionKernel;
use crate::domain::Domain;
use crate::error::{Error, Result};
use crate::profile::Profile;

/// The generator for one trial.
pub fn trial_rng(master_seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    rng
}

/// `agents` independent uniform draws from `source`, with replacement.
pub fn sample_profile(source: &Domain, agents: usize, seed: u64) -> Result<Profile> {
    draw_profile(source, agents, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn draw_profile<R: Rng>(source: &Domain, agents: usize, rng: &mut R) -> Result<Profile> {
    if source.is_empty() {
        return Err(Error::EmptyDomain);
    }
    if agents == 0 {
        return Err(Error::InvalidArgument("need at least one agent".into()));
    }
    let mut counts = vec![0u64; source.len()];
    for _ in 0..agents {
        counts[rng.gen_range(0..source.len())] += 1;
    }
    Profile::new(
        source.alternatives().clone(),
        counts
            .into_iter()
            .zip(source.iter())
            .filter(|(c, _)| *c > 0)
            .map(|(c, o)| (c, o.clone())),
    )
}

/// Draw indices of one trial, shared by the histogram and curve runs.
fn support_indices<R: Rng>(len: usize, agents: usize, rng: &mut R) -> Vec<usize> {
    let mut hit = vec![false; len];
    for _ in 0..agents {
        hit[rng.gen_range(0..len)] = true;
    }
    (0..len).filter(|&i| hit[i]).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub source: Domain,
    pub agents: usize,
    pub trials: usize,
    pub ks: Vec<usize>,
    pub master_seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        let n = self.source.n();
        if self.source.is_empty() {
            return Err(Error::EmptyDomain);
        }
        if self.agents == 0 || self.trials == 0 {
            return Err(Error::InvalidArgument("agents and trials must be ≥ 1".into()));
        }
        if self.ks.is_empty() {
            return Err(Error::InvalidArgument("no subset sizes given".into()));
        }
        if let Some(&k) = self.ks.iter().find(|&&k| k < 2 || k > n) {
            return Err(Error::InvalidArgument(format!("k = {k} outside 2..={n}")));
        }
        Ok(())
    }
}

/// Frequencies of exact abundance values at one `k`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AbundanceHistogram {
    pub k: usize,
    pub counts: BTreeMap<usize, u64>,
    pub mean: f64,
    pub std_dev: f64,
}

impl AbundanceHistogram {
    fn from_values(k: usize, values: impl Iterator<Item = usize>) -> Self {
        let mut counts = BTreeMap::new();
        for v in values {
            *counts.entry(v).or_insert(0u64) += 1;
        }
        let total: u64 = counts.values().sum();
        let t = total as f64;
        let mean = counts.iter().map(|(&s, &c)| s as f64 * c as f64).sum::<f64>() / t;
        let var = counts
            .iter()
            .map(|(&s, &c)| (s as f64 - mean).powi(2) * c as f64)
            .sum::<f64>()
            / t;
        AbundanceHistogram {
            k,
            counts,
            mean,
            std_dev: var.sqrt(),
        }
    }

    pub fn trials(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Share of trials with abundance at least `s`.
    pub fn fraction_at_least(&self, s: usize) -> f64 {
        let hit: u64 = self.counts.range(s..).map(|(_, c)| c).sum();
        hit as f64 / self.trials() as f64
    }
}

/// Runs every trial and returns one histogram per requested `k`, in the
/// order given.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<AbundanceHistogram>> {
    cfg.validate()?;
    let n = cfg.source.n();
    let rankings = cfg.source.index_rankings();
    let per_trial: Vec<Vec<usize>> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = trial_rng(cfg.master_seed, trial);
            let picked = support_indices(rankings.len(), cfg.agents, &mut rng);
            let kernel =
                RestrictionKernel::from_rankings(picked.iter().map(|&i| rankings[i].clone()).collect());
            cfg.ks.iter().map(|&k| kernel.min(n, k).0).collect()
        })
        .collect();
    Ok(cfg
        .ks
        .iter()
        .enumerate()
        .map(|(j, &k)| AbundanceHistogram::from_values(k, per_trial.iter().map(|row| row[j])))
        .collect())
}

/// Long-format CSV: `k,s,frequency`.
pub fn histograms_to_csv(hists: &[AbundanceHistogram]) -> String {
    let mut out = String::from("k,s,frequency\n");
    for h in hists {
        for (s, c) in &h.counts {
            let _ = writeln!(out, "{},{},{}", h.k, s, c);
        }
    }
    out
}

/// One point of the order-set curve.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvePoint {
    pub t: usize,
    pub mean_abundance: f64,
    /// Share of samples that reached the target abundance.
    pub fraction_abundant: f64,
}

/// For each `t`, draws `trials` sets of `t` distinct orders of `source`
/// uniformly and records the exact abundance at `k` against `target`.
/// Sample `i` at size `t` uses stream `t · 2³² + i`.
pub fn order_set_curve(
    source: &Domain,
    k: usize,
    target: usize,
    ts: &[usize],
    trials: usize,
    master_seed: u64,
) -> Result<Vec<CurvePoint>> {
    let n = source.n();
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={n}")));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be ≥ 1".into()));
    }
    if let Some(&t) = ts.iter().find(|&&t| t == 0 || t > source.len()) {
        return Err(Error::InvalidArgument(format!(
            "cannot pick {t} distinct orders from {}",
            source.len()
        )));
    }
    let rankings = source.index_rankings();
    ts.iter()
        .map(|&t| {
            let values: Vec<usize> = (0..trials as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = trial_rng(master_seed, (t as u64) << 32 | i);
                    let picked = index::sample(&mut rng, rankings.len(), t);
                    let kernel = RestrictionKernel::from_rankings(
                        picked.iter().map(|j| rankings[j].clone()).collect(),
                    );
                    kernel.min(n, k).0
                })
                .collect();
            let h = AbundanceHistogram::from_values(k, values.into_iter());
            Ok(CurvePoint {
                t,
                mean_abundance: h.mean,
                fraction_abundant: h.fraction_at_least(target),
            })
        })
        .collect()
}
