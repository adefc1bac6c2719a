use clap::Parser;
use outer_f4::polarity_algebra::Mutation;
use std::process::ExitCode;
use verify_cli::{load_instance, run_suites, Report, RunOptions, Suite, BUILTIN};

/// Run randomized identity checks on a Moufang set of outer F₄-type.
///
/// Exit status: 0 when every check passes, 1 when some check fails,
/// 2 on a configuration or I/O error.
#[derive(Parser, Debug)]
#[command(name = "verify", version)]
struct Cli {
    /// Which suite to run.
    #[arg(value_enum)]
    suite: Suite,

    /// An instance file, or `tru7` for the builtin instance.
    #[arg(long, default_value = BUILTIN)]
    instance: String,

    /// Trials per check, overriding each check's default.
    #[arg(long)]
    trials: Option<usize>,

    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Total degree bound for random inputs. Defaults to 2 for the group
    /// suites and 3 elsewhere.
    #[arg(long)]
    max_deg: Option<usize>,

    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    report: Option<String>,

    /// Worker threads per check.
    #[arg(long, default_value_t = 1)]
    jobs: usize,

    /// Run against a deliberately broken product.
    #[arg(long, hide = true)]
    mutate: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut inst = match load_instance(&cli.instance) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.mutate {
        inst.algebra = inst.algebra.mutated(Mutation::SwappedBar);
    }
    let opts = RunOptions {
        trials: cli.trials,
        seed: cli.seed,
        max_deg: cli.max_deg,
        jobs: cli.jobs.max(1),
    };
    let mut reports = Vec::new();
    for suite in cli.suite.expand() {
        let r = run_suites(&inst, suite, &opts).remove(0);
        for c in &r.checks {
            println!("[{}] {c}", r.suite);
        }
        println!(
            "{} {}: {}/{} trials passed in {:.2}s",
            if r.ok() { "PASS" } else { "FAIL" },
            r.suite,
            r.passed,
            r.trials,
            r.wall_time_s
        );
        reports.push(r);
    }
    let report = Report::new(&inst.name, cli.seed, reports);
    if let Some(path) = &cli.report {
        let json = report.to_json();
        if path == "-" {
            print!("{json}");
        } else if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: cannot write {path}: {e}");
            return ExitCode::from(2);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
