//! Command-line entry point.
//!
//! Exit codes: `0` when every check passed, `1` when a mathematical check
//! failed or an input does not describe a valid object, `2` on usage and
//! syntax errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use cpokit_core::gallery::run_demo;
use cpokit_core::poset::{bit, indices};
use cpokit_core::quotient::normalize_random;
use cpokit_core::{
    classify, coequalizer, directed_closure, epi_strongmono_factorize, is_cpo, quotient_census, Error as CoreError,
    FinCpoMap, FinPoset,
};

use crate::dot::to_dot;
use crate::format::{map_header, parse_map, parse_poset, write_map, write_poset, write_trace, FormatError};

#[derive(Debug, Parser)]
#[command(name = "cpokit", version, about = "Finite and symbolic chain-complete posets")]
pub struct Cli {
    /// Enumeration and sampling budget for symbolic checks.
    #[arg(long, global = true, env = "CPOKIT_FUEL", default_value_t = 64)]
    pub fuel: usize,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    #[value(name = "generator-2-vs-3")]
    Generator2Vs3,
    #[value(name = "two-step-closure")]
    TwoStepClosure,
    #[value(name = "ad-family")]
    AdFamily,
    #[value(name = "epi-mono-not-iso")]
    EpiMonoNotIso,
}

impl Demo {
    fn name(self) -> &'static str {
        match self {
            Demo::Generator2Vs3 => "generator-2-vs-3",
            Demo::TwoStepClosure => "two-step-closure",
            Demo::AdFamily => "ad-family",
            Demo::EpiMonoNotIso => "epi-mono-not-iso",
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate a poset file and decide chain-completeness.
    Check { poset: PathBuf },
    /// Classify a map as mono, epi, iso, strong mono, strong and extremal epi.
    Classify {
        #[arg(long)]
        map: PathBuf,
        /// Poset files for the endpoints; defaults to `<name>.poset` beside the map.
        #[arg(long, num_args = 1..)]
        posets: Vec<PathBuf>,
    },
    /// Close a subset under directed joins, stage by stage.
    Closure {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        subset: Vec<String>,
    },
    /// Coproduct of pointed posets (bottoms identified).
    Coproduct {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Coequalizer of two parallel maps.
    Coequalize {
        #[arg(long, num_args = 2, required = true)]
        maps: Vec<PathBuf>,
        #[arg(long, num_args = 1..)]
        posets: Vec<PathBuf>,
    },
    /// (epi, strong mono) factorization through the image.
    Factor {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, num_args = 1..)]
        posets: Vec<PathBuf>,
    },
    /// Normalize a random extremal epimorphism out of kappa copies of 3.
    Normalize {
        #[arg(long)]
        kappa: usize,
    },
    /// Count extremal quotients of kappa copies of 3 up to isomorphism.
    Census {
        #[arg(long)]
        kappa: usize,
    },
    /// Run one of the built-in example reports.
    Demo {
        #[arg(value_enum)]
        name: Demo,
    },
    /// Hasse diagram in DOT.
    Dot { poset: PathBuf },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Format {
        path: String,
        #[source]
        source: FormatError,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Format { source, .. } if !source.is_syntax() => 1,
            CliError::Math(_) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((ok, stdout)) => Outcome { code: if ok { 0 } else { 1 }, stdout, stderr: String::new() },
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn load_poset(path: &Path) -> Result<Arc<FinPoset>, CliError> {
    let text = read(path)?;
    parse_poset(&text).map(Arc::new).map_err(|source| CliError::Format { path: path.display().to_string(), source })
}

/// Parses a map, loading its endpoints from `posets` or, when none are
/// given, from `<name>.poset` next to the map file.
fn load_map(path: &Path, posets: &[PathBuf]) -> Result<FinCpoMap, CliError> {
    let text = read(path)?;
    let fmt_err = |source| CliError::Format { path: path.display().to_string(), source };
    let loaded = if posets.is_empty() {
        let (_, src, dst) = map_header(&text).map_err(fmt_err)?;
        let dir = path.parent().unwrap_or(Path::new("."));
        let mut v = vec![load_poset(&dir.join(format!("{src}.poset")))?];
        if dst != src {
            v.push(load_poset(&dir.join(format!("{dst}.poset")))?);
        }
        v
    } else {
        posets.iter().map(|p| load_poset(p)).collect::<Result<Vec<_>, _>>()?
    };
    parse_map(&text, &loaded).map(|(_, f)| f).map_err(fmt_err)
}

fn set_string(p: &FinPoset, mask: u64) -> String {
    let labels: Vec<&str> = indices(mask).map(|i| p.label(i)).collect();
    format!("{{{}}}", labels.join(","))
}

fn execute(cli: &Cli) -> Result<(bool, String), CliError> {
    let dot = cli.format == OutputFormat::Dot;
    let mut out = String::new();
    let ok = match &cli.command {
        Command::Check { poset } => {
            let p = load_poset(poset)?;
            let v = is_cpo(p.order());
            if dot {
                out = to_dot(&p);
            } else {
                let _ = writeln!(out, "poset={}", p.name());
                let _ = writeln!(out, "elements={}", p.len());
                let _ = writeln!(out, "bottom={}", p.label(p.bottom()));
                let _ = writeln!(out, "covers={}", p.order().covers().len());
                let _ = writeln!(out, "cpo={}", v.is_cpo());
                if let Some(c) = v.by_chains {
                    let _ = writeln!(out, "cpo.by_chains={c}");
                }
                let _ = writeln!(out, "cpo.by_least_element={}", v.by_least_element);
                let _ = writeln!(out, "explanation={}", v.explanation);
            }
            v.is_cpo() && v.routes_agree()
        }
        Command::Classify { map, posets } => {
            let f = load_map(map, posets)?;
            let _ = writeln!(out, "{}", classify(&f));
            true
        }
        Command::Closure { poset, subset } => {
            let p = load_poset(poset)?;
            let mut start = 0u64;
            for l in subset.iter().filter(|l| !l.is_empty()) {
                let i =
                    p.index_of(l).ok_or_else(|| CliError::Usage(format!("`{l}` is not an element of {}", p.name())))?;
                start |= bit(i);
            }
            let t = directed_closure(&p, start);
            let _ = writeln!(out, "start={}", set_string(&p, t.start));
            for (k, &s) in t.stages.iter().enumerate() {
                let _ = writeln!(out, "stage.{k}={}", set_string(&p, s));
            }
            for (k, adds) in t.additions.iter().enumerate() {
                for a in adds {
                    let _ = writeln!(out, "added.{}={} joins {}", k + 1, p.label(a.element), set_string(&p, a.witness));
                }
            }
            let _ = writeln!(out, "closure={}", set_string(&p, t.closure()));
            let _ = writeln!(out, "steps={}", t.steps());
            true
        }
        Command::Coproduct { files } => {
            let parts = files.iter().map(|f| load_poset(f)).collect::<Result<Vec<_>, _>>()?;
            let cop = cpokit_core::colimit::coproduct_of(&parts)?;
            if dot {
                out = to_dot(&cop.object);
            } else {
                out.push_str(&write_poset(&cop.object));
                for (i, inj) in cop.injections.iter().enumerate() {
                    out.push_str(&write_map(&format!("inj{i}"), inj));
                }
            }
            true
        }
        Command::Coequalize { maps, posets } => {
            let f = load_map(&maps[0], posets)?;
            let g = load_map(&maps[1], posets)?;
            let q = coequalizer(&f, &g)?;
            if dot {
                out = to_dot(q.object());
            } else {
                out.push_str(&write_poset(q.object()));
                out.push_str(&write_map("q", &q.quotient));
                let _ = writeln!(out, "# rounds={}", q.rounds);
            }
            true
        }
        Command::Factor { map, posets } => {
            let f = load_map(map, posets)?;
            let fac = epi_strongmono_factorize(&f)?;
            if dot {
                out = to_dot(fac.mid());
            } else {
                out.push_str(&write_poset(fac.mid()));
                out.push_str(&write_map("e", &fac.epi_part));
                out.push_str(&write_map("m", &fac.mono_part));
            }
            true
        }
        Command::Normalize { kappa } => {
            let t = normalize_random(*kappa, cli.seed)?;
            out = write_trace(&t);
            match t.check() {
                Ok(()) => true,
                Err(why) => {
                    let _ = writeln!(out, "# check failed: {why}");
                    false
                }
            }
        }
        Command::Census { kappa } => {
            let c = quotient_census(*kappa)?;
            let _ = writeln!(
                out,
                "# kappa={} partitions={} count={} max_size={}",
                c.kappa,
                c.partitions,
                c.count(),
                c.max_size
            );
            for (k, form) in c.forms.iter().enumerate() {
                let p = FinPoset::pointed(format!("Q{k}"), form.to_poset())?;
                out.push_str(&write_poset(&p));
            }
            c.max_size <= 2 * c.kappa + 1
        }
        Command::Demo { name } => {
            let r = run_demo(name.name(), cli.fuel)?;
            out = r.to_string();
            r.passed()
        }
        Command::Dot { poset } => {
            out = to_dot(load_poset(poset)?.as_ref());
            true
        }
    };
    Ok((ok, out))
}
