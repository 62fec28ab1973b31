use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use placid::bench::{run_suite, Suite, SuiteParams};
use placid::checker::{check_plactic, check_tropical, PlacticStrategy, TropSearchConfig};
use placid::forge::{build_identity, IdentityWords, QMode};
use placid::rep::PlacticRep;
use placid::tropical::UtSampler;
use placid::word::{tableau_of_word, Word};

/// `println!` that tolerates a closed stdout, e.g. when piped into `head`.
macro_rules! say {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

/// Exit code for a run that ended without a verdict.
const INCONCLUSIVE: u8 = 1;
/// Exit code for invalid arguments or inputs.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "placid",
    version,
    about = "Tropical representations of plactic monoids and their identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and check two-variable identities.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Print the matrix of a word under the rank-n representation.
    Rho {
        #[arg(long)]
        rank: usize,
        /// Letters separated by spaces or commas, e.g. "1 3 1 4".
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        /// Also write the JSON artifact to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print the tableau of a word.
    Tableau {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run timed verification suites.
    Bench {
        /// Suite to run; all suites when omitted.
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Restrict rank-parametrised suites to this rank.
        #[arg(short = 'n', long)]
        rank: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum IdentityCommand {
    /// Build the identity for rank n.
    Build {
        #[arg(short = 'n', long)]
        rank: usize,
        /// Use a q that begins with b and ends in a^(n-1).
        #[arg(long)]
        constrained: bool,
        #[arg(long, value_enum, default_value_t = QMode::Minimal)]
        mode: QMode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for substitutions violating an identity in the rank-n plactic monoid.
    CheckPlactic {
        #[arg(short = 'n', long)]
        rank: usize,
        /// JSON with "lhs" and "rhs" fields, or a line "lhs = rhs".
        #[arg(long)]
        identity_file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 8)]
        max_word_len: usize,
        /// Try every pair of words up to the maximum length instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Search for upper-triangular k x k tropical matrices violating an identity.
    CheckUt {
        #[arg(short = 'k', long)]
        dim: usize,
        #[arg(long)]
        identity_file: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = -3, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 3, allow_hyphen_values = true)]
        hi: i64,
        #[arg(long, default_value_t = 0.2)]
        neg_inf_density: f64,
        #[arg(long, default_value_t = 0.5)]
        structured_fraction: f64,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Clone, Copy)]
struct RunArgs {
    #[arg(long, env = "PLACID_SEED", default_value_t = 0)]
    seed: u64,
    /// Wall-clock budget in seconds.
    #[arg(long, default_value_t = 60.0)]
    budget: f64,
}

impl RunArgs {
    fn budget(&self) -> Result<Duration, String> {
        Duration::try_from_secs_f64(self.budget).map_err(|e| format!("invalid budget {}: {e}", self.budget))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serialisable")
}

fn write_out(path: Option<&Path>, json: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, format!("{json}\n")).map_err(|e| format!("cannot write {}: {e}", p.display())),
        None => Ok(()),
    }
}

fn read_identity(path: &Path) -> Result<IdentityWords, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let parsed = if text.trim_start().starts_with('{') {
        serde_json::from_str::<IdentityWords>(&text).map_err(|e| e.to_string())
    } else {
        IdentityWords::parse(text.trim()).map_err(|e| e.to_string())
    };
    let id = parsed.map_err(|e| format!("malformed identity file {}: {e}", path.display()))?;
    IdentityWords::new(id.lhs, id.rhs).map_err(|e| format!("malformed identity file {}: {e}", path.display()))
}

fn parse_word(s: &str) -> Result<Word, String> {
    s.parse::<Word>().map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Identity(IdentityCommand::Build {
            rank,
            constrained,
            mode,
            out,
            format,
        }) => {
            let built = build_identity(rank, constrained, mode).map_err(|e| e.to_string())?;
            let artifact = to_json(&built);
            write_out(out.as_deref(), &artifact)?;
            match format {
                Format::Json => say!("{artifact}"),
                Format::Text => {
                    say!(
                        "rank {rank}, {} q ({mode}), h = {}",
                        if constrained { "constrained" } else { "unconstrained" },
                        built.h
                    );
                    say!("q       = {}", built.q);
                    say!("u       = {}", built.pre_lhs);
                    say!("v       = {}", built.pre_rhs);
                    say!("lhs     = {}", built.lhs);
                    say!("rhs     = {}", built.rhs);
                    say!("length  = {}", built.length);
                }
            }
            Ok(0)
        }
        Command::Identity(IdentityCommand::CheckPlactic {
            rank,
            identity_file,
            samples,
            max_word_len,
            exhaustive,
            run,
            format,
        }) => {
            if rank == 0 {
                return Err("rank must be at least 1".into());
            }
            let identity = read_identity(&identity_file)?;
            let strategy = if exhaustive {
                PlacticStrategy::Exhaustive { max_len: max_word_len }
            } else {
                PlacticStrategy::Random {
                    samples,
                    max_len: max_word_len,
                    seed: run.seed,
                }
            };
            let report = check_plactic(&identity, rank, strategy, run.budget()?).map_err(|e| e.to_string())?;
            let verdict = if report.counterexample.is_some() {
                "counterexample"
            } else if report.budget_exhausted {
                "inconclusive"
            } else {
                "pass"
            };
            match format {
                Format::Json => say!(
                    "{}",
                    to_json(
                        &json!({ "verdict": verdict, "seed": run.seed, "budget_secs": run.budget, "report": report })
                    )
                ),
                Format::Text => {
                    say!("identity {identity}");
                    say!(
                        "rank {rank}, strategy {strategy:?}, seed {}, budget {}s",
                        run.seed,
                        run.budget
                    );
                    say!("verdict: {verdict} after {} samples", report.samples_run);
                    if let Some(cx) = &report.counterexample {
                        say!("x = {}", cx.x);
                        say!("y = {}", cx.y);
                        say!("lhs tableau:\n{}", cx.lhs_tableau);
                        say!("rhs tableau:\n{}", cx.rhs_tableau);
                    }
                }
            }
            Ok(if verdict == "inconclusive" { INCONCLUSIVE } else { 0 })
        }
        Command::Identity(IdentityCommand::CheckUt {
            dim,
            identity_file,
            samples,
            lo,
            hi,
            neg_inf_density,
            structured_fraction,
            run,
            format,
        }) => {
            if lo > hi {
                return Err(format!("empty entry range [{lo}, {hi}]"));
            }
            if !(0.0..=1.0).contains(&neg_inf_density) || !(0.0..=1.0).contains(&structured_fraction) {
                return Err("densities and fractions must lie in [0, 1]".into());
            }
            let identity = read_identity(&identity_file)?;
            let config = TropSearchConfig {
                sampler: UtSampler {
                    lo,
                    hi,
                    neg_inf_density,
                },
                samples,
                seed: run.seed,
                structured_fraction,
            };
            let report = check_tropical(&identity, dim, config, run.budget()?).map_err(|e| e.to_string())?;
            let verdict = if report.witness.is_some() {
                "witness"
            } else {
                "not-found"
            };
            match format {
                Format::Json => say!(
                    "{}",
                    to_json(
                        &json!({ "verdict": verdict, "seed": run.seed, "budget_secs": run.budget, "report": report })
                    )
                ),
                Format::Text => {
                    say!("identity {identity}");
                    say!(
                        "UT_{dim}, entries [{lo}, {hi}], -inf density {neg_inf_density}, structured {structured_fraction}, seed {}, budget {}s",
                        run.seed, run.budget
                    );
                    match &report.witness {
                        Some(w) => {
                            let d = &w.differing_entry;
                            say!("verdict: witness within {} samples", report.samples_run);
                            say!("X =\n{}", w.x);
                            say!("Y =\n{}", w.y);
                            say!("entry ({}, {}): lhs {} vs rhs {}", d.row, d.col, d.lhs, d.rhs);
                        }
                        None => say!(
                            "verdict: no witness in {} samples{}",
                            report.samples_run,
                            if report.budget_exhausted {
                                " (budget exhausted)"
                            } else {
                                ""
                            }
                        ),
                    }
                }
            }
            Ok(if report.witness.is_some() { 0 } else { INCONCLUSIVE })
        }
        Command::Rho {
            rank,
            word,
            out,
            format,
        } => {
            let w = parse_word(&word)?;
            let rep = PlacticRep::new(rank).map_err(|e| e.to_string())?;
            let m = rep.word(&w).map_err(|e| e.to_string())?;
            let artifact = to_json(&json!({ "rank": rank, "word": w, "matrix": m }));
            write_out(out.as_deref(), &artifact)?;
            match format {
                Format::Json => say!("{artifact}"),
                Format::Text => {
                    say!("rho_{rank}({w}), {0} x {0}", m.dim());
                    say!("{m}");
                }
            }
            Ok(0)
        }
        Command::Tableau { word, format } => {
            let w = parse_word(&word)?;
            let t = tableau_of_word(&w);
            match format {
                Format::Json => say!("{}", to_json(&json!({ "word": w, "rows": t.rows() }))),
                Format::Text => {
                    say!("{t}");
                    say!("rows {:?}", t.rows());
                }
            }
            Ok(0)
        }
        Command::Bench {
            suite,
            rank,
            samples,
            run,
            format,
        } => {
            let params = SuiteParams {
                rank,
                samples,
                seed: run.seed,
                budget: run.budget()?,
            };
            let mut outcomes = Vec::new();
            if format == Format::Text {
                say!(
                    "seed {}, budget {}s, rank {rank:?}, samples {samples:?}",
                    run.seed,
                    run.budget
                );
            }
            for s in suite.map_or_else(|| Suite::ALL.to_vec(), |s| vec![s]) {
                let outcome = run_suite(s, &params).map_err(|e| format!("suite {s}: {e}"))?;
                if format == Format::Text {
                    say!("{outcome}");
                }
                outcomes.push(outcome);
            }
            let all_passed = outcomes.iter().all(|o| o.passed);
            if format == Format::Json {
                say!(
                    "{}",
                    to_json(&json!({ "config": params, "outcomes": outcomes, "passed": all_passed }))
                );
            }
            Ok(if all_passed { 0 } else { INCONCLUSIVE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
    }
}
