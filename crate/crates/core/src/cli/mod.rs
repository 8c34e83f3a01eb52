//! Command-line front end. Every subcommand renders one report, either as
//! text or as JSON under the `procong/v1` schema; both come from the same
//! computed values.

mod commands;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA: &str = "procong/v1";
pub const FIXTURES_ENV: &str = "PROCONG_FIXTURES";

#[derive(Debug, Parser)]
#[command(name = "procong", version, about = "Exact invariants of surface mapping classes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for parallel sweeps and tables (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Add 30-digit decimal approximations next to irrational values.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Torus mapping classes and their congruence quotients.
    #[command(subcommand)]
    Torus(TorusCommand),
    /// Twisted Alexander polynomials of a mapping torus.
    Alexander(MtArgs),
    /// Twisted Reidemeister torsion, by presentation and by cells.
    Torsion(MtArgs),
    /// Twisted Lefschetz zeta function.
    Zeta(MtArgs),
    /// Periodic twisted Lefschetz numbers.
    Lefschetz(MtArgs),
    /// Nielsen-Thurston normal forms.
    #[command(subcommand)]
    Nt(NtCommand),
    /// Character tables and Nielsen bounds from orbit tables.
    #[command(subcommand)]
    Chars(CharsCommand),
}

#[derive(Debug, Subcommand)]
pub enum TorusCommand {
    /// Conjugacy in SL(2,Z).
    Conj {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Conjugacy of the induced automorphisms of (Z/n)^2.
    Congr {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        n: u64,
    },
    /// Every modulus up to --max, compared with SL(2,Z).
    Sweep {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 100)]
        max: u64,
    },
    /// Characteristic level of Z^2 for subgroups of index at most n.
    Klevel { n: u64 },
}

#[derive(Debug, Args)]
pub struct MtArgs {
    /// Mapping-torus fixture (JSON).
    pub fixture: String,
    /// trivial, sign, cyclic:n:k, or a representation file.
    #[arg(long, default_value = "trivial")]
    pub rep: String,
    /// Number of series terms (zeta).
    #[arg(long, default_value_t = 5)]
    pub terms: usize,
    /// Largest iterate (lefschetz).
    #[arg(long, default_value_t = 10)]
    pub upto: usize,
}

#[derive(Debug, Subcommand)]
pub enum NtCommand {
    /// Split order, Dil, Dev, orbit counts and decomposition graphs.
    Analyze {
        file: String,
        #[arg(long, default_value_t = 6)]
        upto: u64,
    },
    /// Shearing degree of two slope vectors "p,q".
    Shear {
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum CharsCommand {
    /// Twisted Lefschetz numbers of an orbit table against every character.
    Decompose {
        table: String,
        #[arg(long)]
        group: Option<String>,
    },
    /// The Nielsen-number lower bound from class indicators.
    Bound {
        table: String,
        #[arg(long)]
        group: Option<String>,
    },
}

/// A rendered report: the JSON value and its text form.
pub struct Report {
    pub value: Value,
    pub text: String,
}

impl Report {
    fn render(&self, json: bool) -> String {
        if json {
            let mut s = serde_json::to_string_pretty(&self.value).expect("serializable");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

/// Where relative fixture paths are looked up when they do not exist as given.
pub fn fixture_root() -> PathBuf {
    match std::env::var_os(FIXTURES_ENV) {
        Some(p) if !p.is_empty() => PathBuf::from(p),
        _ => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
    }
}

pub(crate) fn resolve(path: &str) -> Result<PathBuf> {
    let p = Path::new(path);
    if p.exists() {
        return Ok(p.to_path_buf());
    }
    if p.is_relative() {
        let root = fixture_root();
        let stripped = p.strip_prefix("fixtures").unwrap_or(p);
        for cand in [root.join(p), root.join(stripped)] {
            if cand.exists() {
                return Ok(cand);
            }
        }
    }
    Err(Error::InvalidInput(format!("no such file: {path}")))
}

pub(crate) fn read(path: &str) -> Result<String> {
    let p = resolve(path)?;
    std::fs::read_to_string(&p).map_err(|e| Error::InvalidInput(format!("{}: {e}", p.display())))
}

/// Runs one command; returns the exit code and the rendered output.
pub fn dispatch(config: &RunConfig) -> (i32, String) {
    let result = if config.jobs > 0 {
        match rayon::ThreadPoolBuilder::new().num_threads(config.jobs).build() {
            Ok(pool) => pool.install(|| commands::run(config)),
            Err(e) => Err(Error::Internal(format!("thread pool: {e}"))),
        }
    } else {
        commands::run(config)
    };
    match result {
        Ok(report) => (0, report.render(config.json)),
        Err(e) => {
            let code = if e.is_input_error() { 2 } else { 1 };
            let out = if config.json {
                let v = serde_json::json!({ "schema": SCHEMA, "error": e.to_string(), "exit": code });
                format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
            } else {
                format!("error: {e}\n")
            };
            (code, out)
        }
    }
}

/// Parses arguments (including the program name) and dispatches.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(cfg) => dispatch(&cfg),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.render().to_string())
        }
    }
}
