use generica::commands::{replay, run_session, RunConfig};
use generica::experiments::{run_experiment, Experiment, ExperimentConfig};
use generica::parser::parse_session;
use generica::report::{emit, Format};

const SRC: &str = "ring GF(32003)[x,y,z];
ideal U = 1;
ideal L = x - y;
tuple T = x*y, x*z;
space S = sum(U, U) order 2;
perturb T S --target regular --module L;
grade L --method all;
";

fn payload_json(cfg: &ExperimentConfig) -> String {
    let s = run_experiment(cfg);
    serde_json::to_string(&s.payload()).unwrap()
}

#[test]
fn reports_replay_to_equal_payloads() {
    let session = parse_session(SRC).unwrap();
    let (reports, err) = run_session(&session, SRC, RunConfig { seed: 11, budget: 200 });
    assert!(err.is_none());
    assert_eq!(reports.len(), 2);
    for r in &reports {
        assert_eq!(replay(r, SRC), Ok(true), "{}", r.command);
    }
    assert!(replay(&reports[0], "ring GF(7)[x];").is_err());
}

#[test]
fn same_seed_same_bytes() {
    let session = parse_session(SRC).unwrap();
    let run = || {
        let (reports, _) = run_session(&session, SRC, RunConfig { seed: 5, budget: 200 });
        reports.iter().map(|r| serde_json::to_string(&r.payload).unwrap()).collect::<Vec<_>>()
    };
    assert_eq!(run(), run());
}

#[test]
fn experiments_do_not_depend_on_thread_count() {
    for e in [Experiment::E1, Experiment::E2, Experiment::E6] {
        let cfg = ExperimentConfig { trials: 12, seed: 3, ..ExperimentConfig::new(e) };
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(|| payload_json(&cfg));
        let four = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap().install(|| payload_json(&cfg));
        assert_eq!(one, four, "{e}");
    }
}

#[test]
fn experiment_echo_round_trips() {
    let cfg = ExperimentConfig { trials: 4, seed: 9, size: (2, 4), ..ExperimentConfig::new(Experiment::E4) };
    assert_eq!(ExperimentConfig::parse_echo(&cfg.echo()), Some(cfg));
    let s = run_experiment(&ExperimentConfig { size: (2, 3), ..cfg });
    let report = s.report(0);
    let csv = emit(&report, Format::Csv).unwrap();
    assert_eq!(csv.lines().count(), 1 + 4);
}
