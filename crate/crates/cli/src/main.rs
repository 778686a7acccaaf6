//! `qmr`: coherence and entanglement reports for POVMs stored as JSON.
//!
//! Exit status is 0 on success, 1 when the input is well-formed but fails a
//! domain check (invalid POVM, non-free channel, failed verification), and
//! 2 when a file cannot be read or parsed.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use log::{debug, info};
use serde::de::DeserializeOwned;

use qmr::channel::cnot_dagger_channel;
use qmr::conversion::{convert_and_bracket, induced_coherence, verify_theorem1, verify_theorem2};
use qmr::conversion::{EQUALITY_TOL, THEOREM_TOL};
use qmr::json::{ChannelJson, PovmJson};
use qmr::measurement::is_separable_effectwise;
use qmr::monotone::coherence_contributions;
use qmr::report::Verification;
use qmr::suite::run_suite;
use qmr::{
    coherence_monotone, entanglement_monotone_bracket, Error, KrausChannel, Povm, Regime,
    ResourceReport, Tolerances,
};

#[derive(Parser, Debug)]
#[command(name = "qmr", version, about = "Coherence and entanglement monotones of quantum measurements")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Most negative eigenvalue accepted in an effect.
    #[arg(long, global = true)]
    psd_tol: Option<f64>,

    /// Max entry deviation of the effect sum from the identity.
    #[arg(long, global = true)]
    completeness_tol: Option<f64>,

    /// Max unital and detection-incoherence residual of a pre-processing channel.
    #[arg(long, global = true)]
    udi_tol: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the POVM invariants and list every violation.
    Validate { povm: PathBuf },
    /// Report C_m and its per-effect contributions.
    Coherence { povm: PathBuf },
    /// Report the E_m bracket of a bipartite POVM.
    Entanglement { povm: PathBuf },
    /// Pair with the incoherent ancilla and pre-process into a bipartite POVM.
    Convert {
        povm: PathBuf,
        /// `cnot` or a channel JSON file.
        #[arg(long, default_value = "cnot")]
        channel: String,
        /// Where to write the converted POVM. Without it the POVM is embedded in the report.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check one of the conversion theorems on this POVM.
    Verify {
        povm: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Run the seeded property suite.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum Failure {
    /// Exit 1.
    Domain(String),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(m) | Failure::Input(m) => f.write_str(m),
        }
    }
}

type Outcome = Result<(), Failure>;

fn tolerances(cli: &Cli) -> Tolerances {
    let mut tol = Tolerances::default();
    if let Some(t) = cli.psd_tol {
        tol.psd = t;
    }
    if let Some(t) = cli.completeness_tol {
        tol.completeness = t;
    }
    if let Some(t) = cli.udi_tol {
        tol.channel = t;
    }
    tol
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| {
        Failure::Input(format!(
            "{}: parse error at line {} column {}: {e}",
            path.display(),
            e.line(),
            e.column()
        ))
    })
}

fn load_povm(path: &Path, tol: &Tolerances) -> Result<Povm, Failure> {
    let json: PovmJson = read_json(path)?;
    let povm = json.to_povm(tol)?;
    debug!("loaded {}: d = {}, n = {}", path.display(), povm.dim(), povm.outcomes());
    Ok(povm)
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Outcome {
    let text = serde_json::to_string_pretty(value).expect("serializable");
    fs::write(path, text + "\n")
        .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))
}

fn print_report(report: &ResourceReport) {
    println!("{}", serde_json::to_string_pretty(report).expect("serializable"));
}

fn validate(path: &Path, tol: &Tolerances) -> Outcome {
    let json: PovmJson = read_json(path)?;
    let violations = json.violations(tol)?;
    if violations.is_empty() {
        println!("valid: d = {}, n = {}", json.dim, json.outcomes);
        return Ok(());
    }
    for v in &violations {
        println!("invalid: {v}");
    }
    Err(Failure::Domain(format!("{} invariant(s) violated", violations.len())))
}

fn coherence(path: &Path, tol: &Tolerances) -> Outcome {
    let povm = load_povm(path, tol)?;
    let mut report = ResourceReport::new(*tol);
    report.c_m = Some(coherence_monotone(&povm));
    report.coherence_contributions = Some(coherence_contributions(&povm));
    print_report(&report);
    Ok(())
}

fn entanglement(path: &Path, tol: &Tolerances) -> Outcome {
    let povm = load_povm(path, tol)?;
    let mut report = ResourceReport::new(*tol);
    report.e_m = Some(entanglement_monotone_bracket(&povm)?);
    report.separability = Some(is_separable_effectwise(&povm, tol.psd)?);
    print_report(&report);
    Ok(())
}

fn load_channel(spec: &str, dim: usize) -> Result<(KrausChannel, String), Failure> {
    if spec == "cnot" {
        return Ok((cnot_dagger_channel(dim), qmr::conversion::CNOT_ID.to_string()));
    }
    let path = Path::new(spec);
    let json: ChannelJson = read_json(path)?;
    let ch = KrausChannel::try_from(&json)?;
    let id = path
        .file_stem()
        .map_or_else(|| spec.to_string(), |s| s.to_string_lossy().into_owned());
    Ok((ch, id))
}

fn convert(path: &Path, channel: &str, output: Option<&Path>, tol: &Tolerances) -> Outcome {
    let povm = load_povm(path, tol)?;
    let (ch, id) = load_channel(channel, povm.dim())?;
    let (converted, result) = convert_and_bracket(&povm, &ch, &id, tol.channel)?;
    info!("converted with {id}: regime {:?}", result.regime);
    let converted_json = PovmJson::from(&converted);
    let mut report = ResourceReport::new(*tol);
    report.c_m = Some(result.input_cm);
    report.e_m = Some(result.output_em);
    report.separability = Some(is_separable_effectwise(&converted, tol.psd)?);
    report.conversion = Some(result);
    match output {
        Some(out) => write_json(out, &converted_json)?,
        None => report.converted_povm = Some(converted_json),
    }
    print_report(&report);
    Ok(())
}

fn verify(path: &Path, theorem: u8, seed: u64, trials: usize, tol: &Tolerances) -> Outcome {
    let povm = load_povm(path, tol)?;
    let cm = coherence_monotone(&povm);
    let mut report = ResourceReport::new(*tol);
    report.c_m = Some(cm);
    let verification = match theorem {
        1 => {
            let c = verify_theorem1(&povm, trials, seed)?;
            Verification {
                theorem,
                holds: c.holds,
                detail: format!(
                    "{} sampled UDI channels, max E_m - C_m = {:.3e} (channel seed {:?})",
                    c.trials, c.max_excess, c.worst_channel_seed
                ),
            }
        }
        2 => match verify_theorem2(&povm) {
            Ok(r) => {
                let detail = match r.regime {
                    Regime::NGeD => format!("n >= d: E_m = C_m = {:.12}", r.input_cm),
                    Regime::NLtD => format!(
                        "n < d: {:.12} <= E_m in [{:.12}, {:.12}] <= {:.12}",
                        r.bound_lower, r.output_em.lower, r.output_em.upper, r.bound_upper
                    ),
                };
                report.e_m = Some(r.output_em);
                report.conversion = Some(r);
                Verification {
                    theorem,
                    holds: true,
                    detail,
                }
            }
            Err(Error::TheoremViolation(msg)) => Verification {
                theorem,
                holds: false,
                detail: msg,
            },
            Err(e) => return Err(e.into()),
        },
        _ => {
            let ic = induced_coherence(&povm, trials, seed)?;
            let equality = povm.outcomes() >= povm.dim();
            let holds = ic <= cm + THEOREM_TOL && (!equality || (ic - cm).abs() <= EQUALITY_TOL);
            Verification {
                theorem,
                holds,
                detail: format!("induced coherence {ic:.12} over CNOT and {trials} sampled UDI channels, C_m {cm:.12}"),
            }
        }
    };
    let holds = verification.holds;
    let detail = verification.detail.clone();
    report.verification = Some(verification);
    print_report(&report);
    if holds {
        Ok(())
    } else {
        Err(Failure::Domain(format!("theorem {theorem} check failed: {detail}")))
    }
}

fn suite(seed: u64, trials: usize) -> Outcome {
    let report = run_suite(seed, trials);
    let width = report.properties.iter().map(|p| p.name.len()).max().unwrap_or(0);
    println!("suite seed {seed}, {trials} instances per property");
    for p in &report.properties {
        println!(
            "{:<width$}  {:>4}/{:<4}  max residual {:>10.3e}  {}",
            p.name,
            p.passed,
            p.total,
            p.max_residual,
            if p.ok() { "ok" } else { "FAIL" },
        );
    }
    let failures: Vec<String> = report
        .failures()
        .map(|p| {
            let mut line = format!("{} (counterexample seed {:?})", p.name, p.counterexample_seed.unwrap_or_default());
            if let Some(e) = &p.error {
                line.push_str(&format!(": {e}"));
            }
            line
        })
        .collect();
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Domain(format!("property failures: {}", failures.join("; "))))
    }
}

fn run(cli: &Cli) -> Outcome {
    let tol = tolerances(cli);
    match &cli.command {
        Command::Validate { povm } => validate(povm, &tol),
        Command::Coherence { povm } => coherence(povm, &tol),
        Command::Entanglement { povm } => entanglement(povm, &tol),
        Command::Convert {
            povm,
            channel,
            output,
        } => convert(povm, channel, output.as_deref(), &tol),
        Command::Verify {
            povm,
            theorem,
            seed,
            trials,
        } => verify(povm, *theorem, *seed, *trials, &tol),
        Command::Suite { seed, trials } => suite(*seed, *trials),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("POVM_LOG_LEVEL", "warn"))
        .init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            match f {
                Failure::Domain(_) => ExitCode::from(1),
                Failure::Input(_) => ExitCode::from(2),
            }
        }
    }
}
