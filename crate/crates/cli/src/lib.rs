//! Command-line front end: catalog listings, operation tables, verification
//! suites and the 2-torsion decision procedure.
//!
//! Exit codes: 0 when everything passes, 1 on a verification failure, 2 on
//! usage or domain errors.

pub mod report;
pub mod suites;
pub mod table;

use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use ck_steenrod_core::exactalg::{Integer, F2};
use ck_steenrod_core::steenrod::{torsion_decision, Correspondence, TorsionVerdict};
use ck_steenrod_core::varieties::{catalog, ChowClass, SplitVariety, Variety};
use ck_steenrod_core::{Error, Result};
use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::suites::{Fault, SuiteConfig};
use crate::table::SplitInput;

pub const SEED_VAR: &str = "CK_STEENROD_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "ck-steenrod", version, about = "Adams operations and the first Steenrod square on split cellular varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog varieties with their basis sizes and ranks.
    Catalog {
        #[arg(long, default_value_t = 8)]
        max_dim: usize,
        #[arg(long, default_value_t = 8)]
        max_quadric: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the matrix of an operation on a catalog variety.
    Table {
        variety: String,
        /// sq1, sq1-coh, psi, theta, tau, gr-sq1 or chern
        operation: String,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
        /// Adams index for psi, theta and tau.
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        k: i64,
        /// Input class for theta and chern: tangent, -tangent or O(a,..).
        #[arg(long, default_value = "tangent", allow_hyphen_values = true)]
        of: String,
    },
    /// Run a verification suite.
    Verify {
        /// cartan, pullback, adem, descent, adams, riemann-roch, commutes,
        /// extprod, lci, corr or all
        suite: String,
        #[arg(long)]
        max_dim: Option<usize>,
        #[arg(long)]
        json: bool,
        /// Write the JSON report here instead of stdout.
        #[arg(long, requires = "json")]
        out: Option<PathBuf>,
        /// Flip one Sq_1 table entry, as VARIETY:ROW:COL.
        #[arg(long, hide = true)]
        inject_fault: Option<String>,
    },
    /// Decide the 2-torsion criterion for a correspondence on Q_d x Q_d.
    Torsion {
        dimension: usize,
        /// Lines of `coeff basis_left basis_right`.
        spec: PathBuf,
        #[arg(long)]
        assert_closure_vanishing: bool,
    },
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match cli.command {
        Command::Catalog { max_dim, max_quadric, json } => cmd_catalog(max_dim, max_quadric, json, out),
        Command::Table { variety, operation, json, csv, k, of } => cmd_table(&variety, &operation, json, csv, k, &of, out),
        Command::Verify { suite, max_dim, json, out: path, inject_fault } => {
            cmd_verify(&suite, max_dim, json, path, inject_fault.as_deref(), out)
        }
        Command::Torsion { dimension, spec, assert_closure_vanishing } => {
            cmd_torsion(dimension, &spec, assert_closure_vanishing, out)
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Domain(format!("i/o: {e}"))
}

#[derive(Serialize)]
struct CatalogEntry {
    variety: String,
    dimension: usize,
    basis_size: usize,
    chow_ranks: Vec<usize>,
    k0_rank: usize,
    basis: Vec<String>,
}

pub fn cmd_catalog(max_dim: usize, max_quadric: usize, json: bool, out: &mut dyn Write) -> Result<i32> {
    let entries = catalog(max_dim, max_quadric)
        .iter()
        .map(|d| {
            let v = Variety::shared(d)?;
            Ok(CatalogEntry {
                variety: d.to_string(),
                dimension: v.dimension(),
                basis_size: v.len(),
                chow_ranks: v.chow_ranks(),
                k0_rank: v.len(),
                basis: v.names().to_vec(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if json {
        let text = serde_json::to_string_pretty(&entries).expect("catalog serializes");
        writeln!(out, "{text}").map_err(io)?;
    } else {
        writeln!(out, "{:<10} {:>3} {:>5}  {:<22} {:>3}  basis", "variety", "dim", "cells", "CH ranks", "K0").map_err(io)?;
        for e in entries {
            let ranks: Vec<String> = e.chow_ranks.iter().map(usize::to_string).collect();
            writeln!(
                out,
                "{:<10} {:>3} {:>5}  {:<22} {:>3}  {}",
                e.variety,
                e.dimension,
                e.basis_size,
                format!("({})", ranks.join(",")),
                e.k0_rank,
                e.basis.join(" ")
            )
            .map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn parse_variety(s: &str) -> Result<Arc<Variety>> {
    let d: SplitVariety = s.parse()?;
    Variety::shared(&d)
}

pub fn cmd_table(
    variety: &str,
    operation: &str,
    json: bool,
    csv: bool,
    k: i64,
    of: &str,
    out: &mut dyn Write,
) -> Result<i32> {
    let v = parse_variety(variety)?;
    let t = table::build(&v, operation, k, &SplitInput::parse(of)?)?;
    let text = if json {
        t.to_json()
    } else if csv {
        t.to_csv()
    } else {
        t.to_text()
    };
    out.write_all(text.as_bytes()).map_err(io)?;
    Ok(EXIT_OK)
}

/// Seed for the randomized lifts, from `CK_STEENROD_SEED` (default 0).
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Domain(format!("{SEED_VAR}={s:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

pub fn parse_fault(s: &str) -> Result<Fault> {
    let bad = || Error::Domain(format!("fault {s:?} is not VARIETY:ROW:COL"));
    let mut parts = s.split(':');
    let (Some(v), Some(r), Some(c), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(bad());
    };
    Ok(Fault { variety: v.parse()?, row: r.parse().map_err(|_| bad())?, col: c.parse().map_err(|_| bad())? })
}

pub fn cmd_verify(
    suite: &str,
    max_dim: Option<usize>,
    json: bool,
    path: Option<PathBuf>,
    fault: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32> {
    let mut cfg = SuiteConfig::new(max_dim, seed_from_env()?);
    if let Some(f) = fault {
        cfg = cfg.with_fault(&parse_fault(f)?)?;
    }
    let report = suites::run_suite(suite, &cfg).ok_or_else(|| {
        Error::Domain(format!("unknown suite {suite:?}; expected one of {} or all", suites::SUITES.join(", ")))
    })?;
    if json {
        let text = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
        match path {
            Some(p) => {
                std::fs::write(&p, text).map_err(io)?;
                write!(out, "{report}").map_err(io)?;
            }
            None => out.write_all(text.as_bytes()).map_err(io)?,
        }
    } else {
        write!(out, "{report}").map_err(io)?;
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAIL })
}

/// Parses a correspondence on `Q_d × Q_d`: one `coeff left right` term per
/// line, `#` comments and blank lines ignored, coefficients reduced mod 2.
pub fn parse_correspondence(d: usize, text: &str) -> Result<Correspondence<F2>> {
    let q = SplitVariety::quadric(d);
    let left = Variety::shared(&q)?;
    let prod = Variety::shared(&SplitVariety::product(q.clone(), q))?;
    let mut coeffs = vec![Integer::from(0); prod.len()];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [c, a, b] = fields.as_slice() else {
            return Err(Error::Domain(format!("line {}: expected `coeff basis_left basis_right`", n + 1)));
        };
        let c: Integer = c.parse().map_err(|_| Error::Domain(format!("line {}: bad coefficient {c:?}", n + 1)))?;
        for name in [a, b] {
            if left.index_of_name(name).is_none() {
                return Err(Error::Domain(format!(
                    "line {}: {name:?} is not a basis element of Q{d} (expected one of {})",
                    n + 1,
                    left.names().join(" ")
                )));
            }
        }
        let i = prod.index_of_name(&format!("{a}*{b}")).expect("product of basis names");
        coeffs[i] += c;
    }
    Correspondence::new(ChowClass::<Integer>::from_integers(&prod, &coeffs)?.reduce_mod2())
}

/// Writes `r` in the spec-file format.
pub fn format_correspondence(r: &Correspondence<F2>) -> String {
    let v = r.carrier().variety();
    let mut out = String::new();
    for (c, name) in r.carrier().coeffs().iter().zip(v.names()) {
        if c.0 {
            let (a, b) = name.split_once('*').expect("product basis name");
            out.push_str(&format!("1 {a} {b}\n"));
        }
    }
    out
}

pub fn cmd_torsion(d: usize, spec: &std::path::Path, asserted: bool, out: &mut dyn Write) -> Result<i32> {
    if d < 3 {
        return Err(Error::Domain(format!("the criterion needs a quadric of dimension d >= 3, got {d}")));
    }
    let bytes = std::fs::read(spec).map_err(|e| Error::Domain(format!("{}: {e}", spec.display())))?;
    let text = String::from_utf8(bytes).map_err(|_| Error::Domain(format!("{} is not UTF-8", spec.display())))?;
    let r = parse_correspondence(d, &text)?;
    match torsion_decision(d, &r, asserted)? {
        TorsionVerdict::NotApplicable { multiplicity } => {
            writeln!(out, "multiplicity {multiplicity}; criterion not applicable").map_err(io)?;
        }
        TorsionVerdict::HypothesisNotAsserted { multiplicity } => {
            writeln!(out, "multiplicity {multiplicity}; closure hypothesis not asserted; no conclusion").map_err(io)?;
        }
        TorsionVerdict::Certified { multiplicity, witness } => {
            writeln!(out, "multiplicity {multiplicity}; closure hypothesis asserted").map_err(io)?;
            writeln!(out, "witness: (deg/2) Sq1 r_*(h^{}) = m (deg/2) Sq1(h^{}) = {witness} mod 2", d - 1, d - 1)
                .map_err(io)?;
            writeln!(out, "conclusion: CH_1(X) contains a nonzero cycle ξ with 2ξ = 0").map_err(io)?;
        }
    }
    Ok(EXIT_OK)
}
