use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bellbound::bell::{self, BoundReport, GammaSandwich};
use bellbound::entanglement::{self, FlatnessReport};
use bellbound::family::{self, ConcurrenceTriple, FamilyCoeffs, SweepConfig};
use bellbound::io::{self as state_io, report_json, LoadError};
use bellbound::toric;
use bellbound::{Bipartition, Error, PureState};

#[derive(Parser)]
#[command(
    name = "bellbound",
    version,
    about = "Entanglement and Bell-bound analysis of multi-qubit pure states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Entropies, concurrences, flatness verdicts and the R-matrix bound of a state file.
    Analyze {
        #[command(flatten)]
        common: StateArgs,
        /// Also run the see-saw maximization.
        #[arg(long)]
        maximize: bool,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// The seven-qubit family: figure sweeps, inversion, critical point.
    #[command(subcommand)]
    Family(FamilyCommand),
    /// Bell operator maximization.
    #[command(subcommand)]
    Bell(BellCommand),
    /// Seven-qubit toric code on a disk.
    #[command(subcommand)]
    Toric(ToricCommand),
}

#[derive(Subcommand)]
enum FamilyCommand {
    /// Write the figure series as CSV (fig1.csv, fig2.csv).
    Sweep {
        /// Only this figure; both when omitted.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        figure: Option<u8>,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Points on the uniform C^2 grid over [0, 1].
        #[arg(long, default_value_t = family::DEFAULT_GRID_POINTS)]
        points: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Coefficients realizing a concurrence triple.
    Invert {
        #[command(flatten)]
        triple: TripleArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Finite-difference classification of a stationary point of the bound.
    Critical {
        /// Classify the point with these concurrences instead of the critical point.
        #[command(flatten)]
        triple: OptionalTripleArgs,
        /// Step of the difference stencil.
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum BellCommand {
    /// See-saw lower bound beside the R-matrix upper bound.
    Maximize {
        #[command(flatten)]
        common: StateArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
}

#[derive(Subcommand)]
enum ToricCommand {
    /// Check a seven-qubit state against the exact ground space.
    Verify {
        #[command(flatten)]
        common: StateArgs,
    },
    /// All 128 eigenvalues of the Hamiltonian, ascending.
    Spectrum {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct StateArgs {
    /// State file: {"n": .., "amplitudes": [{"basis": "..", "re": .., "im": ..}]}.
    #[arg(long)]
    state: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = bell::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = bell::DEFAULT_RESTARTS)]
    restarts: usize,
}

#[derive(Args)]
struct TripleArgs {
    #[arg(long)]
    c1sq: f64,
    #[arg(long)]
    c2sq: f64,
    #[arg(long)]
    csq: f64,
}

#[derive(Args)]
struct OptionalTripleArgs {
    #[arg(long, requires_all = ["c2sq", "csq"])]
    c1sq: Option<f64>,
    #[arg(long, requires_all = ["c1sq", "csq"])]
    c2sq: Option<f64>,
    #[arg(long, requires_all = ["c1sq", "c2sq"])]
    csq: Option<f64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Domain(String),
    NotConverged,
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 3,
            Failure::NotConverged => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BadLength { .. }
            | Error::BadBasis(_)
            | Error::DuplicateBasis(_)
            | Error::BadAmplitudeCount { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<LoadError> for Failure {
    fn from(e: LoadError) -> Self {
        match e {
            LoadError::State(e) => e.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SiteConcurrence {
    site: usize,
    concurrence: f64,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct AnalyzeReport {
    n: usize,
    flatness: FlatnessReport,
    single_site_concurrences: Vec<SiteConcurrence>,
    bell_bound: BoundReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    gamma: Option<GammaSandwich>,
}

fn emit(output: &OutputArgs, body: &str) -> CmdResult {
    match &output.out {
        Some(path) => fs::write(path, body)?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn json_only(output: &OutputArgs, what: &str) -> CmdResult {
    if output.format == Format::Csv {
        return Err(Failure::Usage(format!(
            "{what} has no CSV form; use --format json"
        )));
    }
    Ok(())
}

fn load(path: &Path) -> Result<PureState, Failure> {
    Ok(state_io::read_state(path)?)
}

fn analyze(common: &StateArgs, maximize: bool, search: &SearchArgs) -> CmdResult {
    let state = load(&common.state)?;
    let n = state.n();
    let flatness = entanglement::flat_spectrum_report(&state);
    let single_site_concurrences = (1..=n)
        .map(|site| {
            let cut = Bipartition::new(n, &[site])?;
            Ok(SiteConcurrence {
                site,
                concurrence: entanglement::concurrence(&state, &cut)?,
            })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let bell_bound = bell::bell_bound(&bell::r_matrix(&state)?);
    let gamma = if maximize {
        Some(bell::maximize_bell(&state, search.restarts, search.seed)?)
    } else {
        None
    };
    let converged = gamma.as_ref().is_none_or(|g| g.converged);

    let body = match common.output.format {
        Format::Json => {
            report_json(&AnalyzeReport {
                n,
                flatness,
                single_site_concurrences,
                bell_bound,
                gamma,
            }) + "\n"
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "region_a",
                "rank",
                "von_neumann",
                "renyi2",
                "is_flat",
                "is_max_flat",
            ])
            .map_err(csv_failure)?;
            for cut in &flatness.cuts {
                let region: Vec<String> = cut.region_a.iter().map(usize::to_string).collect();
                w.write_record([
                    region.join(" "),
                    cut.rank.to_string(),
                    family::fmt_float(cut.von_neumann),
                    family::fmt_float(cut.renyi2),
                    cut.is_flat.to_string(),
                    cut.is_max_flat.to_string(),
                ])
                .map_err(csv_failure)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?)
                .expect("csv output is utf-8")
        }
    };
    emit(&common.output, &body)?;
    if converged {
        Ok(())
    } else {
        Err(Failure::NotConverged)
    }
}

fn csv_failure(e: csv::Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn sweep(figure: Option<u8>, out: &Path, points: usize, format: Format) -> CmdResult {
    let figures: Vec<u8> = figure.map_or(vec![1, 2], |f| vec![f]);
    fs::create_dir_all(out)?;
    for number in figures {
        let mut config = SweepConfig::figure(number).expect("figure number validated by clap");
        config.csq_grid = family::uniform_grid(points);
        let rows = family::sweep(&config)?;
        match format {
            Format::Csv => {
                let file = fs::File::create(out.join(format!("fig{number}.csv")))?;
                family::write_sweep_csv(&rows, io::BufWriter::new(file))?;
            }
            Format::Json => {
                fs::write(
                    out.join(format!("fig{number}.json")),
                    report_json(&rows) + "\n",
                )?;
            }
        }
    }
    Ok(())
}

fn invert(t: &TripleArgs, output: &OutputArgs) -> CmdResult {
    json_only(output, "family invert")?;
    let triple = ConcurrenceTriple::new(t.c1sq, t.c2sq, t.csq)?;
    let inversion = family::invert_concurrences(&triple)?;
    #[derive(Serialize)]
    #[serde(rename_all = "camelCase")]
    struct InvertReport {
        triple: ConcurrenceTriple,
        #[serde(flatten)]
        inversion: family::Inversion,
        probabilities: [f64; 4],
    }
    let report = InvertReport {
        triple,
        probabilities: inversion.coeffs.probabilities(),
        inversion,
    };
    emit(output, &(report_json(&report) + "\n"))
}

fn critical(t: &OptionalTripleArgs, eps: f64, output: &OutputArgs) -> CmdResult {
    json_only(output, "family critical")?;
    let point = match (t.c1sq, t.c2sq, t.csq) {
        (Some(c1sq), Some(c2sq), Some(csq)) => {
            family::coeffs_from_concurrences(&ConcurrenceTriple::new(c1sq, c2sq, csq)?)?
        }
        _ => FamilyCoeffs::critical(),
    };
    let report = family::classify_critical_point(&point, eps)?;
    emit(output, &(report_json(&report) + "\n"))
}

fn maximize(common: &StateArgs, search: &SearchArgs) -> CmdResult {
    json_only(&common.output, "bell maximize")?;
    let state = load(&common.state)?;
    let gamma = bell::maximize_bell(&state, search.restarts, search.seed)?;
    emit(&common.output, &(report_json(&gamma) + "\n"))?;
    if gamma.converged {
        Ok(())
    } else {
        Err(Failure::NotConverged)
    }
}

fn verify(common: &StateArgs) -> CmdResult {
    json_only(&common.output, "toric verify")?;
    let state = load(&common.state)?;
    let report = toric::verify_toric_ground(&state)?;
    emit(&common.output, &(report_json(&report) + "\n"))
}

fn spectrum(output: &OutputArgs) -> CmdResult {
    let spectrum = toric::ToricHamiltonian::new().spectrum();
    let body = match output.format {
        Format::Json => {
            #[derive(Serialize)]
            #[serde(rename_all = "camelCase")]
            struct SpectrumOut<'a> {
                ground_energy: f64,
                ground_degeneracy: usize,
                eigenvalues: &'a [f64],
            }
            report_json(&SpectrumOut {
                ground_energy: spectrum.ground_energy(),
                ground_degeneracy: spectrum.ground_degeneracy(),
                eigenvalues: &spectrum.eigenvalues,
            }) + "\n"
        }
        Format::Csv => {
            let mut body = String::from("index,eigenvalue\n");
            for (i, e) in spectrum.eigenvalues.iter().enumerate() {
                body.push_str(&format!("{i},{}\n", family::fmt_float(*e)));
            }
            body
        }
    };
    emit(output, &body)
}

fn configure_threads() -> CmdResult {
    let Ok(raw) = std::env::var("BELLBOUND_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::Usage(format!(
            "BELLBOUND_THREADS must be a positive integer, got {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn run(cli: Cli) -> CmdResult {
    configure_threads()?;
    match cli.command {
        Command::Analyze {
            common,
            maximize,
            search,
        } => analyze(&common, maximize, &search),
        Command::Family(FamilyCommand::Sweep {
            figure,
            out,
            points,
            format,
        }) => sweep(figure, &out, points, format),
        Command::Family(FamilyCommand::Invert { triple, output }) => invert(&triple, &output),
        Command::Family(FamilyCommand::Critical {
            triple,
            eps,
            output,
        }) => critical(&triple, eps, &output),
        Command::Bell(BellCommand::Maximize { common, search }) => maximize(&common, &search),
        Command::Toric(ToricCommand::Verify { common }) => verify(&common),
        Command::Toric(ToricCommand::Spectrum { output }) => spectrum(&output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            match &failure {
                Failure::Usage(msg) | Failure::Domain(msg) => eprintln!("error: {msg}"),
                Failure::NotConverged => {
                    eprintln!(
                        "error: see-saw did not converge; the reported value is the best found"
                    )
                }
            }
            ExitCode::from(failure.code())
        }
    }
}
