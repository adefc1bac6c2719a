//! Seeded trial runner and the report types shared by every suite.
//!
//! Each trial draws from its own ChaCha8 stream, seeded from the suite seed,
//! the check name and the trial index. Splitting the trials of a check
//! across threads therefore never changes which inputs a trial sees.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::panic::{self, AssertUnwindSafe};

/// A labelled input of a failing trial, serialized as text.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Input {
    pub name: String,
    pub value: String,
}

/// The first failing trial of a check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub inputs: Vec<Input>,
    pub detail: String,
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    /// A deterministic fact checked once.
    pub fn single(name: &str, outcome: Trial) -> Self {
        let (passed, failed, counterexample) = match outcome {
            Ok(()) => (1, 0, None),
            Err(f) => (0, 1, Some(f.into_counterexample(0))),
        };
        CheckReport {
            name: name.to_string(),
            trials: 1,
            passed,
            failed,
            counterexample,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {} ({}/{})",
            self.name, self.passed, self.trials
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "\n    trial {}: {}", c.trial, c.detail)?;
            for i in &c.inputs {
                write!(f, "\n    {} = {}", i.name, i.value)?;
            }
        }
        Ok(())
    }
}

/// Why a trial failed, with the inputs needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    inputs: Vec<Input>,
    detail: String,
}

impl Failure {
    pub fn new(detail: impl Into<String>) -> Self {
        Failure {
            inputs: Vec::new(),
            detail: detail.into(),
        }
    }

    /// Attach a labelled input.
    pub fn with(mut self, name: &str, value: impl fmt::Display) -> Self {
        self.inputs.push(Input {
            name: name.to_string(),
            value: value.to_string(),
        });
        self
    }

    pub fn detail(&self) -> &str {
        &self.detail
    }

    fn into_counterexample(self, trial: usize) -> Counterexample {
        Counterexample {
            trial,
            inputs: self.inputs,
            detail: self.detail,
        }
    }
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::new(format!("error: {e}"))
    }
}

impl From<crate::base_field::FieldError> for Failure {
    fn from(e: crate::base_field::FieldError) -> Self {
        Failure::new(format!("error: {e}"))
    }
}

pub type Trial = Result<(), Failure>;

/// `Ok` when the two sides agree, otherwise a failure showing both.
pub fn expect_eq<T: PartialEq + fmt::Display>(what: &str, lhs: &T, rhs: &T) -> Trial {
    if lhs == rhs {
        Ok(())
    } else {
        Err(Failure::new(format!("{what}: lhs = {lhs}, rhs = {rhs}")))
    }
}

/// `Ok` when `x` is zero; an overflowed value is reported as such.
pub fn expect_zero(what: &str, x: &crate::base_field::RatFn) -> Trial {
    if x.is_zero() {
        Ok(())
    } else if x.is_overflow() {
        Err(Failure::new(format!("{what}: degree overflow")))
    } else {
        Err(Failure::new(format!("{what}: got {x}")))
    }
}

pub fn expect(what: &str, cond: bool) -> Trial {
    if cond {
        Ok(())
    } else {
        Err(Failure::new(what.to_string()))
    }
}

/// Add the labelled inputs to a failing trial.
pub fn with_inputs(t: Trial, inputs: &[(&str, &dyn fmt::Display)]) -> Trial {
    t.map_err(|f| inputs.iter().fold(f, |f, (n, v)| f.with(n, v)))
}

/// Per-run settings shared by the checks of a suite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    /// Overrides each check's default trial count when set.
    pub trials: Option<usize>,
    pub seed: u64,
    /// Input degree bound for random field elements.
    pub max_deg: usize,
    /// Worker threads per check; 1 runs inline.
    pub jobs: usize,
}

impl RunConfig {
    pub fn new(seed: u64, max_deg: usize) -> Self {
        RunConfig {
            trials: None,
            seed,
            max_deg,
            jobs: 1,
        }
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = Some(trials);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }

    /// Run `trial` for each index, each with its own seeded generator.
    pub fn run<F>(&self, name: &str, default_trials: usize, trial: F) -> CheckReport
    where
        F: Fn(&mut ChaCha8Rng) -> Trial + Sync,
    {
        run_check(
            name,
            self.trials_or(default_trials),
            self.seed,
            self.jobs,
            trial,
        )
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// FNV-1a, used to fold names into seeds.
pub fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Seed of a named sub-stream of `seed`.
pub fn derive_seed(seed: u64, name: &str) -> u64 {
    mix64(seed ^ mix64(name_hash(name)))
}

/// The generator for trial `index` of check `name`.
pub fn trial_rng(seed: u64, name: &str, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mix64(derive_seed(seed, name).wrapping_add(index as u64)))
}

fn run_one<F>(name: &str, seed: u64, index: usize, trial: &F) -> Trial
where
    F: Fn(&mut ChaCha8Rng) -> Trial,
{
    let mut rng = trial_rng(seed, name, index);
    match panic::catch_unwind(AssertUnwindSafe(|| trial(&mut rng))) {
        Ok(t) => t,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            Err(Failure::new(format!("panicked: {msg}")))
        }
    }
}

/// Run `trials` seeded trials of a check on `jobs` threads.
///
/// A panicking trial counts as a failure rather than aborting the suite.
pub fn run_check<F>(name: &str, trials: usize, seed: u64, jobs: usize, trial: F) -> CheckReport
where
    F: Fn(&mut ChaCha8Rng) -> Trial + Sync,
{
    let jobs = jobs.clamp(1, trials.max(1));
    let outcomes: Vec<Trial> = if jobs == 1 {
        (0..trials)
            .map(|i| run_one(name, seed, i, &trial))
            .collect()
    } else {
        let chunk = trials.div_ceil(jobs);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|j| {
                    let trial = &trial;
                    s.spawn(move || {
                        let lo = (j * chunk).min(trials);
                        let hi = ((j + 1) * chunk).min(trials);
                        (lo..hi)
                            .map(|i| run_one(name, seed, i, trial))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles
                .into_iter()
                .flat_map(|h| h.join().expect("trial threads catch panics"))
                .collect()
        })
    };
    let mut report = CheckReport {
        name: name.to_string(),
        trials,
        passed: 0,
        failed: 0,
        counterexample: None,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(()) => report.passed += 1,
            Err(f) => {
                report.failed += 1;
                if report.counterexample.is_none() {
                    report.counterexample = Some(f.into_counterexample(i));
                }
            }
        }
    }
    report
}
