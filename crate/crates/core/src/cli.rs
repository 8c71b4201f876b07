//! Command-line front end. Exit codes: 0 when the checked property holds,
//! 1 when it fails, 2 on usage, input or resource errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::hamiltonian::{hw_sector, random_cone_spec, ChainSpec};
use crate::identities::run_identities;
use crate::qalg::{format_rational, parse_rational, Rational};
use crate::spectra::{foel_verify, FoelVerdict};
use crate::urnsim::{sector_gaps, UrnModel};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "FOEL_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "foel",
    version,
    about = "Ordering of energy levels in U_q(sl2) spin chains"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jones-Wenzl identity suite up to a given size.
    Identities {
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Ground energies per total spin and the ordering verdict for a chain.
    Foel {
        spec: PathBuf,
        /// Override the q of the spec (rational, e.g. "1/2").
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a highest-weight sector matrix in the dual canonical basis.
    Export {
        spec: PathBuf,
        /// Number of arcs `k`; the sector has weight `Σ n_i - 2k`.
        #[arg(long)]
        sector: usize,
        #[arg(long)]
        q: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Triplet)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral gaps of an urn model in every red-ball sector.
    Urn {
        model: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ordering check on seeded random chains in the cone `J_k <= 0`.
    Sweep {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_weight: usize,
        /// Comma-separated values of q; defaults to 1/2,1,2.
        #[arg(long)]
        q: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Triplet,
    Json,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_with_io<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_HOLDS
            };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    if let Err(e) = configure_threads() {
        let _ = writeln!(err, "error: {e}");
        return EXIT_ERROR;
    }
    let result = dispatch(&cli.command, out, err);
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn run() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_io(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Sizes the global worker pool from `FOEL_THREADS`; only the first call
/// in a process has an effect.
fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::Parse(format!(
            "{THREADS_VAR} must be a positive integer, got {v:?}"
        ))
    })?;
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn dispatch(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Identities {
            max_n,
            out: path,
            inject_fault,
        } => cmd_identities(*max_n, *inject_fault, path.as_deref(), out, err),
        Command::Foel {
            spec,
            q,
            tol,
            format,
            out: path,
        } => cmd_foel(spec, q.as_deref(), *tol, *format, path.as_deref(), out, err),
        Command::Export {
            spec,
            sector,
            q,
            format,
            out: path,
        } => cmd_export(spec, *sector, q.as_deref(), *format, path.as_deref(), out),
        Command::Urn {
            model,
            tol,
            out: path,
        } => cmd_urn(model, *tol, path.as_deref(), out, err),
        Command::Sweep {
            seed,
            count,
            max_weight,
            q,
            tol,
            out: path,
        } => cmd_sweep(
            *seed,
            *count,
            *max_weight,
            q.as_deref(),
            *tol,
            path.as_deref(),
            out,
            err,
        ),
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)
            .map_err(|e| Error::Resource(format!("cannot write {}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Resource(e.to_string())),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Resource(format!("cannot read {}: {e}", path.display())))
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

fn load_spec(path: &Path, q: Option<&str>) -> Result<ChainSpec> {
    let spec = ChainSpec::from_json(&read(path)?)?;
    match q {
        Some(q) => spec.with_q(parse_rational(q)?),
        None => Ok(spec),
    }
}

pub fn cmd_identities(
    max_n: usize,
    inject_fault: bool,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let report = run_identities(max_n, inject_fault)?;
    emit(&(report.to_json() + "\n"), path, out)?;
    for f in report.failures() {
        let _ = writeln!(err, "FAILED {} ({})", f.identity, f.case);
    }
    Ok(if report.passed {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    })
}

fn verdict_json(spec: &ChainSpec, v: &FoelVerdict) -> String {
    let sectors: Vec<_> = v
        .energies
        .iter()
        .map(|e| {
            json!({
                "spin": format_rational(&e.spin),
                "E0": e.e0,
                "sector_dim": e.dim,
                "iterations": e.iterations,
                "residual": e.residual,
            })
        })
        .collect();
    serde_json::to_string_pretty(&json!({
        "q": format_rational(spec.q()),
        "sectors": sectors,
        "foel_holds": v.holds,
        "slack": if v.slack.is_finite() { json!(v.slack) } else { json!(null) },
        "in_cone": v.in_cone,
    }))
    .expect("verdict serializes")
        + "\n"
}

pub fn cmd_foel(
    spec_path: &Path,
    q: Option<&str>,
    tol: f64,
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    check_tol(tol)?;
    let spec = load_spec(spec_path, q)?;
    let v = foel_verify(&spec, tol)?;
    let text = match format {
        Format::Csv => v.to_csv(),
        Format::Json => verdict_json(&spec, &v),
        Format::Triplet => return Err(Error::Domain("foel writes csv or json".into())),
    };
    emit(&text, path, out)?;
    let _ = writeln!(
        err,
        "foel_holds={} slack={:e} in_cone={}",
        v.holds, v.slack, v.in_cone
    );
    if v.theorem_violation() {
        let _ = writeln!(err, "defect: ordering fails for a chain inside the cone");
    }
    Ok(if v.holds { EXIT_HOLDS } else { EXIT_FAILS })
}

pub fn cmd_export(
    spec_path: &Path,
    k: usize,
    q: Option<&str>,
    format: Format,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32> {
    let spec = load_spec(spec_path, q)?;
    let sector = hw_sector(&spec, k)?;
    if sector.basis.is_empty() {
        return Err(Error::Domain(format!(
            "sector k={k} is empty for this chain"
        )));
    }
    let m = &sector.matrix;
    let text = match format {
        Format::Triplet => {
            let mut s = String::from("%%matrix coordinate real symmetric-general\n");
            s.push_str(&format!("{} {} {}\n", m.rows(), m.cols(), m.nnz()));
            for (i, j, v) in m.entries() {
                s.push_str(&format!("{} {} {}\n", i + 1, j + 1, crate::qalg::to_f64(v)));
            }
            s
        }
        Format::Json => {
            let entries: Vec<_> = m
                .entries()
                .map(|(i, j, v)| json!({"row": i + 1, "col": j + 1, "value": format_rational(v)}))
                .collect();
            let basis: Vec<String> = sector.basis.iter().map(|b| b.label()).collect();
            serde_json::to_string_pretty(&json!({
                "weights": spec.weights(),
                "q": format_rational(spec.q()),
                "sector": k,
                "rows": m.rows(),
                "cols": m.cols(),
                "basis": basis,
                "entries": entries,
            }))
            .expect("matrix serializes")
                + "\n"
        }
        Format::Csv => return Err(Error::Domain("export writes triplet or json".into())),
    };
    emit(&text, path, out)?;
    Ok(EXIT_HOLDS)
}

pub fn cmd_urn(
    model_path: &Path,
    tol: f64,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    check_tol(tol)?;
    let model = UrnModel::from_json(&read(model_path)?)?;
    let gaps = sector_gaps(&model)?;
    emit(&gaps.to_csv(), path, out)?;
    let _ = writeln!(
        err,
        "spread={:e} hypergeometric={}",
        gaps.spread, gaps.hypergeometric
    );
    Ok(if gaps.hypergeometric && gaps.spread > tol {
        EXIT_FAILS
    } else {
        EXIT_HOLDS
    })
}

#[allow(clippy::too_many_arguments)]
pub fn cmd_sweep(
    seed: u64,
    count: usize,
    max_weight: usize,
    qs: Option<&str>,
    tol: f64,
    path: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    check_tol(tol)?;
    if max_weight > crate::hamiltonian::MAX_FULL_WEIGHT {
        return Err(Error::Resource(format!(
            "max weight {max_weight} exceeds the cap {}",
            crate::hamiltonian::MAX_FULL_WEIGHT
        )));
    }
    let qs: Vec<Rational> = match qs {
        Some(s) => s.split(',').map(parse_rational).collect::<Result<_>>()?,
        None => crate::identities::test_points(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::from("index,q,weights,foel_holds,slack,max_dim\n");
    let mut failures = 0;
    for index in 0..count {
        let base = random_cone_spec(&mut rng, max_weight, qs[0].clone())?;
        for q in &qs {
            let spec = base.with_q(q.clone())?;
            let v = foel_verify(&spec, tol)?;
            let weights: Vec<String> = spec.weights().iter().map(|w| w.to_string()).collect();
            let max_dim = v.energies.iter().map(|e| e.dim).max().unwrap_or(0);
            text.push_str(&format!(
                "{index},{},{},{},{:e},{max_dim}\n",
                format_rational(q),
                weights.join(" "),
                v.holds,
                v.slack
            ));
            if !v.holds {
                failures += 1;
                let _ = writeln!(err, "violation: {}", spec.to_json());
            }
        }
    }
    emit(&text, path, out)?;
    let _ = writeln!(err, "{} runs, {failures} violations", count * qs.len());
    Ok(if failures == 0 {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    })
}
