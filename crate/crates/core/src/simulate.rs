//! Seeded Monte Carlo estimate of hitting times on C²_N.
//!
//! Trial `i` draws from ChaCha8 seeded with `master_seed` on stream `i`, so
//! its path depends only on `(master_seed, i)`. Each step consumes one `u32`
//! and uses its top two bits to pick the move from `[-2, -1, +1, +2]`.
//! Step counts are aggregated as exact integers, so the result does not
//! depend on how trials are spread over threads.

use num_traits::{ToPrimitive, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;

use crate::closed_form::hitting_time;
use crate::error::{Error, Result};
use crate::exact::{Integer, Rational};
use crate::graph::MIN_N;

pub const DEFAULT_MAX_STEPS: u64 = 1_000_000;

const MOVES: [i64; 4] = [-2, -1, 1, 2];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkConfig {
    pub n: usize,
    pub target: usize,
    pub trials: u64,
    pub master_seed: u64,
    pub max_steps: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

impl WalkConfig {
    pub fn new(n: usize, target: usize, trials: u64, master_seed: u64) -> Self {
        Self {
            n,
            target,
            trials,
            master_seed,
            max_steps: DEFAULT_MAX_STEPS,
            workers: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < MIN_N {
            return Err(Error::ConfigInvalid(format!(
                "N must be >= {MIN_N} (got {})",
                self.n
            )));
        }
        if self.target == 0 || self.target >= self.n {
            return Err(Error::ConfigInvalid(format!(
                "target must be in 1..={} (got {})",
                self.n - 1,
                self.target
            )));
        }
        if self.trials == 0 {
            return Err(Error::ConfigInvalid("trials must be >= 1".into()));
        }
        if self.max_steps == 0 {
            return Err(Error::ConfigInvalid("max_steps must be >= 1".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::ConfigInvalid("workers must be >= 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkStats {
    pub trials_completed: u64,
    pub truncated_trials: u64,
    pub step_sum: Integer,
    pub step_sq_sum: Integer,
    pub mean: f64,
    /// Unbiased sample variance; 0 when fewer than two trials completed.
    pub variance: f64,
    pub stderr: f64,
    /// Fewer than two completed trials, so variance and stderr are undefined.
    pub degenerate: bool,
}

impl WalkStats {
    fn from_sums(completed: u64, truncated: u64, sum: u128, sq_sum: u128) -> Self {
        let step_sum = Integer::from(sum);
        let step_sq_sum = Integer::from(sq_sum);
        let degenerate = completed < 2;
        let (mean, variance) = if completed == 0 {
            (f64::NAN, 0.0)
        } else {
            let k = Integer::from(completed);
            let mean = Rational::new(step_sum.clone(), k.clone());
            let variance = if degenerate {
                Rational::zero()
            } else {
                // (Σx² - (Σx)²/k) / (k - 1)
                let centered = Rational::from_integer(step_sq_sum.clone())
                    - Rational::new(&step_sum * &step_sum, k.clone());
                centered / Rational::from_integer(k - 1)
            };
            (to_f64(&mean), to_f64(&variance))
        };
        let stderr = if degenerate {
            0.0
        } else {
            (variance / completed as f64).sqrt()
        };
        Self {
            trials_completed: completed,
            truncated_trials: truncated,
            step_sum,
            step_sq_sum,
            mean,
            variance,
            stderr,
            degenerate,
        }
    }

    /// Exact sample mean of the completed trials.
    pub fn mean_exact(&self) -> Option<Rational> {
        (self.trials_completed > 0)
            .then(|| Rational::new(self.step_sum.clone(), Integer::from(self.trials_completed)))
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.truncated_trials > 0 {
            w.push(format!(
                "{} trial(s) hit max_steps and were excluded",
                self.truncated_trials
            ));
        }
        if self.degenerate {
            w.push("fewer than two completed trials; variance reported as 0".into());
        }
        w
    }
}

fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Steps of a single walk from 0 to `target`, or `None` if it was cut off.
pub fn run_trial(
    n: usize,
    target: usize,
    master_seed: u64,
    trial: u64,
    max_steps: u64,
) -> Option<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(trial);
    let n = n as i64;
    let target = target as i64;
    let mut pos = 0i64;
    for step in 1..=max_steps {
        let mv = MOVES[(rng.next_u32() >> 30) as usize];
        pos = (pos + mv).rem_euclid(n);
        if pos == target {
            return Some(step);
        }
    }
    None
}

fn aggregate(cfg: &WalkConfig) -> (u64, u64, u128, u128) {
    (0..cfg.trials)
        .into_par_iter()
        .map(
            |i| match run_trial(cfg.n, cfg.target, cfg.master_seed, i, cfg.max_steps) {
                Some(s) => (1u64, 0u64, s as u128, (s as u128) * (s as u128)),
                None => (0, 1, 0, 0),
            },
        )
        .reduce(
            || (0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3),
        )
}

pub fn simulate(cfg: &WalkConfig) -> Result<WalkStats> {
    cfg.validate()?;
    let (completed, truncated, sum, sq) = match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::ConfigInvalid(format!("cannot start worker pool: {e}")))?
            .install(|| aggregate(cfg)),
        None => aggregate(cfg),
    };
    Ok(WalkStats::from_sums(completed, truncated, sum, sq))
}

#[derive(Clone, Debug, PartialEq)]
pub struct EmpiricalReport {
    pub exact: Rational,
    pub stats: WalkStats,
    /// `(mean - exact) / stderr`; `None` when stderr is undefined.
    pub z_score: Option<f64>,
}

/// |z| above this marks the run as inconsistent with the exact value.
pub const Z_THRESHOLD: f64 = 4.0;

impl EmpiricalReport {
    pub fn flagged(&self) -> bool {
        self.z_score
            .is_some_and(|z| z.is_nan() || z.abs() > Z_THRESHOLD)
    }
}

pub fn empirical_vs_exact(cfg: &WalkConfig) -> Result<EmpiricalReport> {
    let stats = simulate(cfg)?;
    let exact = hitting_time(cfg.n, cfg.target as i64)?;
    let z_score = if stats.degenerate {
        None
    } else if stats.stderr == 0.0 {
        Some(if stats.mean_exact().as_ref() == Some(&exact) {
            0.0
        } else {
            f64::INFINITY
        })
    } else {
        Some((stats.mean - to_f64(&exact)) / stats.stderr)
    };
    Ok(EmpiricalReport {
        exact,
        stats,
        z_score,
    })
}
