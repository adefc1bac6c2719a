//! Suite dispatch and the JSON report.

use crate::config::Instance;
use outer_f4::f4_building::{building_checks, F4Building};
use outer_f4::moufang_set::{self, MoufangSet};
use outer_f4::polarity_algebra::{
    axiom_checks, construction_checks, identity_checks, space_checks,
};
use outer_f4::quadrangle::{self, Quadrangle};
use outer_f4::report::{derive_seed, CheckReport, Counterexample, RunConfig};
use outer_f4::{f4_space, hahn, quad_ext};
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Suite {
    Axioms,
    Identities,
    Quadrangle,
    Tau,
    Suzuki,
    Building,
    Examples,
    All,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const EACH: [Suite; 7] = [
        Suite::Axioms,
        Suite::Identities,
        Suite::Quadrangle,
        Suite::Tau,
        Suite::Suzuki,
        Suite::Building,
        Suite::Examples,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Identities => "identities",
            Suite::Quadrangle => "quadrangle",
            Suite::Tau => "tau",
            Suite::Suzuki => "suzuki",
            Suite::Building => "building",
            Suite::Examples => "examples",
            Suite::All => "all",
        }
    }

    /// Input degree used when `--max-deg` is absent. Group collection in
    /// U₊ (and in U and the building, which sit inside it) grows degrees
    /// much faster than the algebra identities do.
    pub fn default_degree(self) -> usize {
        match self {
            Suite::Quadrangle | Suite::Tau | Suite::Suzuki | Suite::Building => 2,
            _ => 3,
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Suite::EACH.to_vec()
        } else {
            vec![self]
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <Suite as clap::ValueEnum>::from_str(s, false).map_err(|_| format!("unknown suite `{s}`"))
    }
}

/// Command-line settings shared by all suites of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub trials: Option<usize>,
    pub seed: u64,
    pub max_deg: Option<usize>,
    pub jobs: usize,
}

impl RunOptions {
    pub fn new(seed: u64) -> Self {
        RunOptions {
            trials: None,
            seed,
            max_deg: None,
            jobs: 1,
        }
    }
}

/// The first failing trial of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureEntry {
    pub check: String,
    pub counterexample: Option<Counterexample>,
}

/// Outcome of one suite. Field order is the serialization order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub max_deg: usize,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckReport>,
    pub failures: Vec<FailureEntry>,
    pub wall_time_s: f64,
}

impl SuiteReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// The whole `--report` document.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub instance: String,
    pub seed: u64,
    pub ok: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(instance: &str, seed: u64, suites: Vec<SuiteReport>) -> Self {
        Report {
            instance: instance.to_string(),
            seed,
            ok: suites.iter().all(SuiteReport::ok),
            suites,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Seed of a suite, derived from the master seed and the suite name so a
/// suite sees the same inputs whether run alone or as part of `all`.
pub fn suite_seed(master: u64, suite: Suite) -> u64 {
    derive_seed(master, suite.name())
}

fn checks_for(inst: &Instance, suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
    let alg = &inst.algebra;
    match suite {
        Suite::Axioms => {
            let mut out = quad_ext::tits_checks(alg.space().ext(), cfg);
            out.extend(space_checks(alg.space(), cfg));
            out.extend(axiom_checks(alg, cfg));
            out
        }
        Suite::Identities => {
            let mut out = identity_checks(alg, cfg);
            out.extend(construction_checks(alg, cfg));
            out
        }
        Suite::Quadrangle => {
            let q = Quadrangle::new(alg.clone());
            let mut out = quadrangle::group_checks(&q, cfg);
            out.extend(quadrangle::table_checks(&q, cfg));
            out
        }
        Suite::Tau => {
            let ms = MoufangSet::new(Quadrangle::new(alg.clone()));
            let mut out = moufang_set::group_checks(&ms, cfg);
            out.extend(moufang_set::nilpotency_checks(&ms, cfg));
            out
        }
        Suite::Suzuki => {
            moufang_set::suzuki_checks(&MoufangSet::new(Quadrangle::new(alg.clone())), cfg)
        }
        Suite::Building => match F4Building::new(Quadrangle::new(alg.clone())) {
            Ok(b) => building_checks(&b, cfg),
            Err(e) => vec![CheckReport::single("the root system closes", Err(e.into()))],
        },
        Suite::Examples => {
            let mut out = f4_space::example_checks();
            out.extend(hahn::obstruction_checks(cfg));
            out
        }
        Suite::All => unreachable!("expanded by the caller"),
    }
}

/// Run one concrete suite. A trial count of zero runs nothing and passes.
pub fn run_suite(inst: &Instance, suite: Suite, opts: &RunOptions) -> SuiteReport {
    assert!(
        suite != Suite::All,
        "run_suite takes a concrete suite; use run_suites for `all`"
    );
    let start = Instant::now();
    let seed = suite_seed(opts.seed, suite);
    let max_deg = opts.max_deg.unwrap_or_else(|| suite.default_degree());
    let mut cfg = RunConfig::new(seed, max_deg).with_jobs(opts.jobs);
    cfg.trials = opts.trials;
    let checks = if opts.trials == Some(0) {
        Vec::new()
    } else {
        checks_for(inst, suite, &cfg)
    };
    let failures = checks
        .iter()
        .filter(|c| !c.ok())
        .map(|c| FailureEntry {
            check: c.name.clone(),
            counterexample: c.counterexample.clone(),
        })
        .collect();
    SuiteReport {
        suite: suite.name().to_string(),
        seed,
        max_deg,
        trials: checks.iter().map(|c| c.trials).sum(),
        passed: checks.iter().map(|c| c.passed).sum(),
        failed: checks.iter().map(|c| c.failed).sum(),
        checks,
        failures,
        wall_time_s: start.elapsed().as_secs_f64(),
    }
}

/// Run a suite, expanding `all`. With more than one job the trials of each
/// check are spread over that many threads; results do not depend on it.
pub fn run_suites(inst: &Instance, suite: Suite, opts: &RunOptions) -> Vec<SuiteReport> {
    suite
        .expand()
        .into_iter()
        .map(|s| run_suite(inst, s, opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{load_instance, BUILTIN};

    #[test]
    fn zero_trials_is_an_empty_pass() {
        let inst = load_instance(BUILTIN).unwrap();
        let opts = RunOptions {
            trials: Some(0),
            ..RunOptions::new(0)
        };
        let reports = run_suites(&inst, Suite::All, &opts);
        assert_eq!(reports.len(), 7);
        assert!(reports
            .iter()
            .all(|r| r.ok() && r.trials == 0 && r.checks.is_empty()));
    }

    #[test]
    fn suite_seeds_differ() {
        let seeds: std::collections::HashSet<u64> =
            Suite::EACH.iter().map(|&s| suite_seed(42, s)).collect();
        assert_eq!(seeds.len(), Suite::EACH.len());
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().copied().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nonsense".parse::<Suite>().is_err());
    }
}
