//! `jetvar`: variational calculus on jet charts from the command line.
//!
//! Artifacts (form files) go to `--out` or stdout; the JSON report goes to
//! stderr, except for `check` and `he-verify` whose report is the artifact.
//! Exit codes: 0 pass, 1 verification failure, 2 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jetvar_core::forms::Form;
use jetvar_core::suites::{self, SuiteConfig};
use jetvar_core::symexpr::DEFAULT_SEED;
use jetvar_core::text::{self, NamedChart};
use jetvar_core::varcalc::{self, Decomposition, Lagrangian, Report};
use jetvar_core::{hilbert_einstein, CheckMode};
use thiserror::Error;

#[derive(Parser, Debug)]
#[command(name = "jetvar", version, about = "Euler–Lagrange forms, momenta and Poincaré–Cartan forms on jet charts")]
struct Cli {
    /// Seed for random points and suites; falls back to JETVAR_SEED.
    #[arg(long, global = true, env = "JETVAR_SEED")]
    seed: Option<u64>,
    /// Number of sampled points in probabilistic mode.
    #[arg(long, global = true, default_value_t = 5)]
    points: usize,
    /// Identity checks: exact normal forms or evaluation at random points.
    /// Defaults to exact, or prob when the chart declares functions.
    #[arg(long, global = true, value_enum)]
    mode: Option<Mode>,
    /// Output file (or directory for split and decompose).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Prob,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler–Lagrange form of a Lagrangian.
    El { chart: PathBuf, lagrangian: PathBuf },
    /// Contact-degree components of a form, one file per nonzero component.
    Split { chart: PathBuf, form: PathBuf },
    /// Canonical momentum of a Lagrangian.
    Momentum { chart: PathBuf, lagrangian: PathBuf },
    /// Poincaré–Cartan form of a Lagrangian, checked against its characterization.
    Pc { chart: PathBuf, lagrangian: PathBuf },
    /// Euler–Lagrange part and momentum of the generating form of an (n+1)-form.
    Decompose { chart: PathBuf, form: PathBuf },
    /// Checks that a Lagrangian is special, with a given or searched witness.
    SpecialCheck {
        chart: PathBuf,
        lagrangian: PathBuf,
        /// RAW n-form β on J_{r-1} with h(β) = λ.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Coefficient degree of the witness search.
        #[arg(long, default_value_t = 3)]
        degree: u32,
    },
    /// Runs a named property suite.
    Check {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(suites::SUITES))]
        suite: String,
        /// Number of random cases (suite default otherwise).
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Verifies the Hilbert–Einstein claims at random Lorentzian jet points.
    HeVerify,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: jetvar_core::Error },
    #[error(transparent)]
    Core(#[from] jetvar_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(jetvar_core::Error::Verification(_)) => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

struct Job {
    seed: u64,
    points: usize,
    mode: Option<Mode>,
    out: Option<PathBuf>,
}

impl Job {
    fn check_mode(&self, chart: &NamedChart) -> CheckMode {
        let prob = CheckMode::Probabilistic {
            points: self.points,
            seed: self.seed,
        };
        match self.mode {
            Some(Mode::Exact) => CheckMode::Exact,
            Some(Mode::Prob) => prob,
            None if chart.chart.registry().is_empty() => CheckMode::Exact,
            None => prob,
        }
    }

    fn report(&self, claim: &str, mode: CheckMode) -> Report {
        let mut r = Report::new(claim, mode);
        r.measure("seed", self.seed);
        r
    }

    /// Writes one artifact to `--out` or stdout.
    fn emit(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => write_file(path, content),
            None => write_stdout(content),
        }
    }

    /// Writes named artifacts into the `--out` directory, or to stdout.
    fn emit_many(&self, files: &[(String, String)]) -> Result<()> {
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                for (name, content) in files {
                    write_file(&dir.join(name), content)?;
                }
                Ok(())
            }
            None => {
                for (name, content) in files {
                    write_stdout(&format!("; {name}\n{content}"))?;
                }
                Ok(())
            }
        }
    }
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_stdout(content: &str) -> Result<()> {
    std::io::stdout()
        .write_all(content.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse<T>(path: &Path, f: impl FnOnce(&str) -> jetvar_core::Result<T>) -> Result<T> {
    let src = read_file(path)?;
    f(&src).map_err(|source| CliError::Input {
        path: path.to_path_buf(),
        source,
    })
}

fn load_chart(path: &Path) -> Result<NamedChart> {
    parse(path, text::read_chart)
}

fn load_lagrangian(chart: &NamedChart, path: &Path) -> Result<Lagrangian> {
    parse(path, |s| text::read_lagrangian(s, chart))
}

fn load_form(chart: &NamedChart, path: &Path) -> Result<Form> {
    parse(path, |s| text::read_form(s, chart))
}

fn el(job: &Job, chart: &Path, lagrangian: &Path) -> Result<Report> {
    let chart = load_chart(chart)?;
    let l = load_lagrangian(&chart, lagrangian)?;
    let mode = job.check_mode(&chart);
    let e = varcalc::euler_lagrange(&l)?;
    let mut report = job.report("Euler–Lagrange form", mode);
    report.push(varcalc::special_el_structure_check(&l, None, mode)?);
    job.emit(&text::write_form(&chart.name, &e.to_form()))?;
    Ok(report)
}

fn split(job: &Job, chart: &Path, form: &Path) -> Result<Report> {
    let chart = load_chart(chart)?;
    let alpha = load_form(&chart, form)?;
    let mode = job.check_mode(&chart);
    let parts = alpha.contact_split()?;
    let mut files = Vec::new();
    let mut nonzero = Vec::new();
    for (c, part) in parts.iter().enumerate() {
        if !part.is_zero(mode)? {
            nonzero.push(c.to_string());
            files.push((format!("contact-{c}.form"), text::write_form(&chart.name, part)));
        }
    }
    if files.is_empty() {
        files.push(("contact-0.form".into(), text::write_form(&chart.name, &parts[0])));
    }
    let total = Form::sum(parts[0].chart(), alpha.degree(), parts[0].basis(), &parts)?;
    let mut report = job.report("contact_split", mode);
    report.measure("nonzero_components", nonzero.join(" "));
    report.push(Report::leaf(
        "components sum to the pullback",
        mode,
        total.equivalent(&alpha.to_contact_basis()?, mode)?,
    ));
    job.emit_many(&files)?;
    Ok(report)
}

fn momentum(job: &Job, chart: &Path, lagrangian: &Path) -> Result<Report> {
    let chart = load_chart(chart)?;
    let l = load_lagrangian(&chart, lagrangian)?;
    let mode = job.check_mode(&chart);
    let g = varcalc::generating_form_of_lagrangian(&l)?;
    let (e, p) = varcalc::kolar_decompose(&g)?;
    let mut report = job.report("canonical momentum", mode);
    let n = chart.chart.base_dim();
    let top = g.contact_order().unwrap_or(0);
    let uniqueness = match (n, top) {
        (1, _) | (_, 0) | (_, 1) => "unique",
        (_, 2) => "unique with s(p) = 0",
        _ => "one choice among many",
    };
    report.measure("uniqueness", uniqueness).measure("order", l.order());
    if n >= 2 && top == 2 {
        report.push(Report::leaf("s(p) = 0", mode, varcalc::morphism_s(&p)?.is_zero(mode)?));
    }
    let residual = varcalc::reconstruct(&e, &p)?.sub(&g);
    report.push(Report::leaf("E − d_H p = d_V λ", mode, residual.is_zero(mode)?));
    job.emit(&text::write_form(&chart.name, &p.to_form()))?;
    Ok(report)
}

fn pc(job: &Job, chart: &Path, lagrangian: &Path) -> Result<Report> {
    let chart = load_chart(chart)?;
    let l = load_lagrangian(&chart, lagrangian)?;
    let mode = job.check_mode(&chart);
    let (_, theta) = varcalc::canonical_poincare_cartan(&l)?;
    let checks = varcalc::poincare_cartan_check(&l, &theta, mode)?;
    let mut report = job.report("Poincaré–Cartan form", mode);
    report
        .push(Report::leaf("h(θ) = λ", mode, checks.horizontal_is_lagrangian))
        .push(Report::leaf("v(θ) has contact degree one", mode, checks.vertical_is_contact_one))
        .push(Report::leaf("h(dθ) = E with zero momentum", mode, checks.differential_is_source))
        .push(Report::leaf("dθ = E + d_V p", mode, checks.differential_splits));
    job.emit(&text::write_form(&chart.name, &theta))?;
    Ok(report)
}

fn decompose(job: &Job, chart: &Path, form: &Path) -> Result<Report> {
    let chart = load_chart(chart)?;
    let alpha = load_form(&chart, form)?;
    let mode = job.check_mode(&chart);
    let g = varcalc::generating_form(&alpha)?;
    let (e, p) = varcalc::kolar_decompose(&g)?;
    let mut report = job.report("Kolář decomposition h(α) = E − d_H p", mode);
    let d = Decomposition::describe(&e, &p);
    report
        .measure("euler_lagrange", d.euler_lagrange.join("; "))
        .measure("contact_order", g.contact_order().map_or("none".into(), |o| o.to_string()));
    let residual = varcalc::reconstruct(&e, &p)?.sub(&g);
    report.push(Report::leaf("E − d_H p = h(α)", mode, residual.is_zero(mode)?));
    job.emit_many(&[
        ("euler_lagrange.form".into(), text::write_form(&chart.name, &e.to_form())),
        ("momentum.form".into(), text::write_form(&chart.name, &p.to_form())),
    ])?;
    Ok(report)
}

fn special_check(job: &Job, chart: &Path, lagrangian: &Path, witness: Option<&Path>, degree: u32) -> Result<Report> {
    let chart = load_chart(chart)?;
    let l = load_lagrangian(&chart, lagrangian)?;
    let mode = job.check_mode(&chart);
    let mut report = job.report("λ is special", mode);
    let below = chart.chart.at_order(l.order().saturating_sub(1));
    let beta = match witness {
        Some(path) => {
            let beta = load_form(&chart, path)?;
            let order = beta.measured_order(mode)?;
            if order > below.order() {
                return Err(CliError::Input {
                    path: path.to_path_buf(),
                    source: jetvar_core::Error::Domain(format!(
                        "a witness for an order-{} Lagrangian lives on J_{}; this one uses order {order}",
                        l.order(),
                        below.order()
                    )),
                });
            }
            Some(beta.on_chart(&below)?)
        }
        None => {
            let search = varcalc::special_witness_search(&l, degree)?;
            report
                .measure("search_degree", degree)
                .measure("search_unknowns", search.unknowns)
                .measure("search_equations", search.equations);
            search.witness
        }
    };
    match beta {
        Some(beta) => {
            report.push(Report::leaf("h(β) = λ", mode, varcalc::special_witness_check(&l, &beta, mode)?));
            if report.passed() {
                report.push(varcalc::special_el_structure_check(&l, Some(&beta), mode)?);
                report.push(varcalc::momentum_relation_check(&l, &beta, mode)?);
            }
            job.emit(&text::write_form(&chart.name, &beta))?;
        }
        None => {
            report.measure("witness", "none in the ansatz");
            report.require(false);
        }
    }
    Ok(report)
}

fn seed(cli_seed: Option<u64>) -> u64 {
    cli_seed.unwrap_or(DEFAULT_SEED)
}

fn run(cli: Cli) -> Result<(Report, bool)> {
    let job = Job {
        seed: seed(cli.seed),
        points: cli.points,
        mode: cli.mode,
        out: cli.out,
    };
    let report = match &cli.command {
        Command::El { chart, lagrangian } => el(&job, chart, lagrangian)?,
        Command::Split { chart, form } => split(&job, chart, form)?,
        Command::Momentum { chart, lagrangian } => momentum(&job, chart, lagrangian)?,
        Command::Pc { chart, lagrangian } => pc(&job, chart, lagrangian)?,
        Command::Decompose { chart, form } => decompose(&job, chart, form)?,
        Command::SpecialCheck {
            chart,
            lagrangian,
            witness,
            degree,
        } => special_check(&job, chart, lagrangian, witness.as_deref(), *degree)?,
        Command::Check { suite, cases } => {
            let cfg = SuiteConfig {
                seed: job.seed,
                cases: *cases,
                points: job.points,
                mode: match job.mode {
                    Some(Mode::Prob) => CheckMode::Probabilistic {
                        points: job.points,
                        seed: job.seed,
                    },
                    _ => CheckMode::Exact,
                },
                ..SuiteConfig::default()
            };
            return Ok((suites::run(suite, &cfg)?, true));
        }
        Command::HeVerify => return Ok((hilbert_einstein::verify(job.points, job.seed)?, true)),
    };
    Ok((report, false))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok((report, is_artifact)) => {
            let json = serde_json::to_string_pretty(&report).expect("reports serialize");
            let written = if is_artifact {
                match &out {
                    Some(path) => write_file(path, &format!("{json}\n")),
                    None => write_stdout(&format!("{json}\n")),
                }
            } else {
                eprintln!("{json}");
                Ok(())
            };
            if let Err(e) = written {
                eprintln!("jetvar: {e}");
                return ExitCode::from(2);
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("jetvar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
