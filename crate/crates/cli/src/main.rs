use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use generica::commands::{run_command, RunConfig, RunError};
use generica::experiments::{experiment_report, Experiment, ExperimentConfig};
use generica::parser::{extend_session, parse_session};
use generica::report::{emit, Format};
use generica::session::{Item, Session};

#[derive(Parser)]
#[command(name = "generica", version, about = "Certified generic perturbations in commutative algebra")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run every command of a session file.
    Run {
        file: PathBuf,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trials per perturbation search.
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run one of the experiment suites E1..E6.
    Experiment {
        name: Experiment,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Matrix size for E1 and E4.
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        size: Option<Vec<usize>>,
        #[arg(long, default_value_t = 200)]
        budget: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Read statements line by line and run commands as they complete.
    Repl {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn format_of(json: bool, csv: bool) -> Format {
    if json {
        Format::Json
    } else if csv {
        Format::Csv
    } else {
        Format::Text
    }
}

struct Sink {
    out: Option<fs::File>,
}

impl Sink {
    fn open(path: &Option<PathBuf>) -> io::Result<Sink> {
        Ok(Sink { out: path.as_ref().map(fs::File::create).transpose()? })
    }

    fn write(&mut self, s: &str) -> io::Result<()> {
        match &mut self.out {
            Some(f) => f.write_all(s.as_bytes()),
            None => io::stdout().write_all(s.as_bytes()),
        }
    }
}

fn run_file(file: PathBuf, format: Format, cfg: RunConfig, out: Option<PathBuf>) -> io::Result<u8> {
    let text = fs::read_to_string(&file)?;
    let session = match parse_session(&text) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("{}:{e}", file.display());
            return Ok(2);
        }
    };
    let mut sink = Sink::open(&out)?;
    for cmd in session.commands() {
        match run_command(&session, cmd, &text, cfg) {
            Ok(report) => match emit(&report, format) {
                Ok(s) => {
                    if format == Format::Csv {
                        sink.write(&format!("# {}\n", report.command))?;
                    }
                    sink.write(&s)?;
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    return Ok(3);
                }
            },
            Err(e) => {
                if let RunError::Budget { report, .. } = &e {
                    if format != Format::Csv {
                        sink.write(&emit(report, format).expect("json and text never fail"))?;
                    }
                }
                eprintln!("error: {e}");
                return Ok(e.exit_code() as u8);
            }
        }
    }
    Ok(0)
}

fn repl(seed: u64) -> io::Result<u8> {
    let stdin = io::stdin();
    let mut session = Session::default();
    let mut pending = String::new();
    let mut transcript = String::new();
    let mut status = 0;
    for line in stdin.lock().lines() {
        let line = line?;
        pending.push_str(&line);
        pending.push('\n');
        if !line.trim_end().ends_with(';') {
            continue;
        }
        let before = session.items.len();
        let mut next = session.clone();
        match extend_session(&mut next, &pending) {
            Ok(_) => {
                transcript.push_str(&pending);
                session = next;
                for item in &session.items[before..] {
                    if let Item::Command(cmd) = item {
                        match run_command(&session, cmd, &transcript, RunConfig { seed, ..RunConfig::default() }) {
                            Ok(r) => print!("{}", emit(&r, Format::Text).expect("text never fails")),
                            Err(e) => {
                                eprintln!("error: {e}");
                                status = e.exit_code() as u8;
                            }
                        }
                    }
                }
            }
            Err(e) => {
                eprintln!("parse error: {e}");
                status = 2;
            }
        }
        pending.clear();
    }
    Ok(status)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Cmd::Run { file, json, csv, seed, budget, out } => run_file(file, format_of(json, csv), RunConfig { seed, budget }, out),
        Cmd::Experiment { name, trials, seed, size, budget, json, csv, out } => {
            let mut cfg = ExperimentConfig::new(name);
            cfg.seed = seed;
            cfg.budget = budget;
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(s) = size {
                cfg.size = (s[0], s[1]);
            }
            let (_, report) = experiment_report(&cfg);
            match emit(&report, format_of(json, csv)) {
                Ok(s) => Sink::open(&out).and_then(|mut sink| sink.write(&s)).map(|_| 0),
                Err(e) => {
                    eprintln!("error: {e}");
                    Ok(3)
                }
            }
        }
        Cmd::Repl { seed } => repl(seed),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
