//! Command-line front end.
//!
//! Exit codes: 0 success (or "yes" for `compare`), 1 ordering does not hold,
//! 2 input or domain error.

mod csvio;
pub mod output;

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::function::standardize;
use crate::indices;
use crate::measure::{self, SignedMeasure};
use crate::ordering::{self, Holds, Relation};
use crate::risk::{self, WeightSpec, CATALOG};
use output::{num, num_or_undefined, Document, Format};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// A user-facing failure; always exits with code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError(String);

impl CliError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        Self(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "monodex", version, about = "Monotonicity and sign indices for sampled data")]
pub struct Cli {
    /// Output format
    #[arg(long, global = true, env = "MONO_FORMAT", value_enum, default_value = "table")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// LOI/LOD/LOM, total variation and normalized indices of a sampled function
    Indices {
        /// CSV with columns x,y
        file: PathBuf,
        /// Also report L_p indices for this exponent (p >= 1)
        #[arg(long)]
        p: Option<f64>,
        /// Restrict to the sub-interval [A, B]
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
        interval: Option<Vec<f64>>,
    },
    /// Decide whether the first function is ordered above the second
    Compare {
        file_a: PathBuf,
        file_b: PathBuf,
        /// One of I, D, M, SI, SD
        #[arg(long)]
        relation: Relation,
    },
    /// LOP/LON/LOS and the Jordan parts of a discrete signed measure
    Measure {
        /// CSV with columns location,weight
        file: PathBuf,
    },
    /// Weighted premium, loading condition and gain-loss ratios of a sample
    Premium {
        /// CSV with one column of observations
        file: PathBuf,
        /// Catalog name, or sampled:<file> for a weight sampled on [0,1]
        #[arg(long)]
        weight: String,
        /// Weight parameter (p, nu or lambda)
        #[arg(long, allow_negative_numbers = true)]
        param: Option<f64>,
        /// Grid size for v(t) and theta
        #[arg(long = "quad-n", default_value_t = 10_000)]
        quad_n: usize,
    },
    /// Gain-loss and Omega-style ratios of a function sampled on [0,1]
    Glr {
        /// CSV with columns x,y
        file: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok((doc, code)) => {
            let _ = out.write_all(doc.render(cli.format).as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

fn path_value(p: &Path) -> Value {
    Value::String(p.display().to_string())
}

fn execute(command: &Command) -> Result<(Document, i32), CliError> {
    match command {
        Command::Indices { file, p, interval } => cmd_indices(file, *p, interval.as_deref()),
        Command::Compare {
            file_a,
            file_b,
            relation,
        } => cmd_compare(file_a, file_b, *relation),
        Command::Measure { file } => cmd_measure(file),
        Command::Premium {
            file,
            weight,
            param,
            quad_n,
        } => cmd_premium(file, weight, *param, *quad_n),
        Command::Glr { file } => cmd_glr(file),
    }
}

fn cmd_indices(file: &Path, p: Option<f64>, interval: Option<&[f64]>) -> Result<(Document, i32), CliError> {
    let mut f = csvio::read_function(file)?;
    let mut doc = Document::new("indices");
    doc.input.insert("file".into(), path_value(file));
    if let Some(p) = p {
        doc.input.insert("p".into(), num(p));
    }
    if let Some(&[a, b]) = interval {
        f = f.restrict(a, b)?;
        doc.input.insert("interval".into(), json!([num(a), num(b)]));
    }
    let r = indices::report(&f, p)?;
    let res = &mut doc.results;
    res.insert("a".into(), num(r.interval.0));
    res.insert("b".into(), num(r.interval.1));
    res.insert("loi".into(), num(r.loi));
    res.insert("lod".into(), num(r.lod));
    res.insert("lom".into(), num(r.lom));
    res.insert("tv".into(), num(r.tv));
    res.insert("loi_norm".into(), num_or_undefined(r.loi_norm()));
    res.insert("lod_norm".into(), num_or_undefined(r.lod_norm()));
    res.insert("lom_norm".into(), num_or_undefined(r.lom_norm()));
    if let Some(lp) = r.lp {
        res.insert("loi_p".into(), num(lp.loi));
        res.insert("lod_p".into(), num(lp.lod));
    }
    if r.normalized.is_none() {
        doc.warnings
            .push("total variation is zero; normalized indices are undefined".into());
    }
    Ok((doc, EXIT_OK))
}

fn cmd_compare(a: &Path, b: &Path, relation: Relation) -> Result<(Document, i32), CliError> {
    let g = standardize(&csvio::read_function(a)?)?;
    let h = standardize(&csvio::read_function(b)?)?;
    let v = ordering::compare(&g, &h, relation)?;
    let mut doc = Document::new("compare");
    doc.input.insert("file_a".into(), path_value(a));
    doc.input.insert("file_b".into(), path_value(b));
    doc.input.insert("relation".into(), Value::String(relation.to_string()));
    let res = &mut doc.results;
    res.insert("relation".into(), Value::String(relation.to_string()));
    res.insert("holds".into(), Value::String(v.holds.to_string()));
    let (na, nb) = (indices::normalized(&g)?, indices::normalized(&h)?);
    let pick = |n: indices::Normalized| match relation {
        Relation::I | Relation::SI => n.loi,
        Relation::D | Relation::SD => n.lod,
        Relation::M => n.lom,
    };
    res.insert("index_a".into(), num(pick(na)));
    res.insert("index_b".into(), num(pick(nb)));
    res.insert("witness".into(), v.witness.map_or(Value::Null, num));
    doc.warnings.extend(v.notes);
    let code = if v.holds == Holds::Yes { EXIT_OK } else { EXIT_NO };
    Ok((doc, code))
}

fn atoms_value(m: &measure::DiscreteSignedMeasure) -> Value {
    Value::Array(
        m.atoms()
            .iter()
            .map(|a| json!({ "location": num(a.location), "weight": num(a.weight) }))
            .collect(),
    )
}

fn cmd_measure(file: &Path) -> Result<(Document, i32), CliError> {
    let (nu, warnings) = csvio::read_atoms(file)?;
    let mut doc = Document::new("measure");
    doc.input.insert("file".into(), path_value(file));
    doc.warnings = warnings;
    let norm = measure::normalized(&nu).ok();
    let j = measure::jordan(&nu);
    let res = &mut doc.results;
    res.insert("total_variation".into(), num(nu.total_variation()));
    res.insert("lop".into(), num(measure::lop(&nu)));
    res.insert("lon".into(), num(measure::lon(&nu)));
    res.insert("los".into(), num(measure::los(&nu)));
    res.insert("lop_norm".into(), num_or_undefined(norm.map(|n| n.lop)));
    res.insert("lon_norm".into(), num_or_undefined(norm.map(|n| n.lon)));
    res.insert("los_norm".into(), num_or_undefined(norm.map(|n| n.los)));
    res.insert("positive_part".into(), atoms_value(&j.positive_part));
    res.insert("negative_part".into(), atoms_value(&j.negative_part));
    if norm.is_none() {
        doc.warnings
            .push("total variation is zero; normalized indices are undefined".into());
    }
    Ok((doc, EXIT_OK))
}

fn catalog_listing() -> String {
    let mut names: Vec<String> = CATALOG.iter().map(|s| s.to_string()).collect();
    names.push("sampled:<file>".into());
    names.join(", ")
}

fn cmd_premium(file: &Path, weight: &str, param: Option<f64>, quad_n: usize) -> Result<(Document, i32), CliError> {
    let ed = csvio::read_sample(file)?;
    let mut doc = Document::new("premium");
    doc.input.insert("file".into(), path_value(file));
    doc.input.insert("weight".into(), Value::String(weight.into()));
    let w = if let Some(wfile) = weight.strip_prefix("sampled:") {
        WeightSpec::sampled(csvio::read_function(Path::new(wfile))?)?
    } else {
        let Some(param) = param else {
            if CATALOG.contains(&weight) {
                return Err(CliError::new(format!("weight '{weight}' needs --param")));
            }
            return Err(CliError::new(format!(
                "unknown weight '{weight}'; available: {}",
                catalog_listing()
            )));
        };
        doc.input.insert("param".into(), num(param));
        match WeightSpec::from_name(weight, param) {
            Some(w) => w?,
            None => {
                return Err(CliError::new(format!(
                    "unknown weight '{weight}'; available: {}",
                    catalog_listing()
                )))
            }
        }
    };
    doc.input.insert("quad_n".into(), Value::from(quad_n));
    let r = risk::loading_report(&ed, &w, quad_n)?;
    let res = &mut doc.results;
    res.insert("premium".into(), num(r.premium));
    res.insert("net_premium".into(), num(r.net_premium));
    res.insert("covariance".into(), num(r.covariance));
    res.insert("loading_nonneg".into(), Value::Bool(r.loading_nonneg));
    res.insert("theta".into(), num(r.theta));
    res.insert(
        "gain_loss_ratio".into(),
        num_or_undefined(r.gain_loss.map(|g| g.glr)),
    );
    res.insert(
        "omega_style_ratio".into(),
        num_or_undefined(r.gain_loss.map(|g| g.omega_style)),
    );
    if r.gain_loss.is_none() {
        doc.warnings
            .push("covariance integrand vanishes; gain-loss ratios are undefined".into());
    }
    Ok((doc, EXIT_OK))
}

fn cmd_glr(file: &Path) -> Result<(Document, i32), CliError> {
    let g = csvio::read_function(file)?;
    let r = risk::gain_loss(&g)?;
    let mut doc = Document::new("glr");
    doc.input.insert("file".into(), path_value(file));
    let net = r.net();
    let res: &mut Map<String, Value> = &mut doc.results;
    res.insert("gain".into(), num(r.gain));
    res.insert("loss".into(), num(r.loss));
    res.insert("integral".into(), num(net));
    res.insert(
        "integral_sign".into(),
        Value::String(
            if net > 0.0 {
                "positive"
            } else if net < 0.0 {
                "negative"
            } else {
                "zero"
            }
            .into(),
        ),
    );
    res.insert("glr".into(), num(r.glr));
    res.insert("omega_style".into(), num(r.omega_style));
    Ok((doc, EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_capture(&["monodex", "bogus"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(!err.is_empty());
        let (code, _, _) = run_capture(&["monodex", "compare", "a", "b", "--relation", "Q"]);
        assert_eq!(code, EXIT_ERROR);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["monodex", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("indices"));
    }

    #[test]
    fn missing_file_exits_two() {
        let (code, _, err) = run_capture(&["monodex", "indices", "/nonexistent/file.csv"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.starts_with("error:"));
    }
}
