//! Command-line front end. Exit codes: 0 success or true, 1 a verified
//! negative answer, 2 usage or I/O failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::constructs::{ConstructError, ConstructionTag};
use crate::designs::{
    are_isomorphic, derived_design, is_flag_transitive, verify_sqs, verify_sts, Design,
    DesignError, SteinerVerdict,
};
use crate::groups::{GroupError, GroupSpec};
use crate::kmsearch::{find_flag_transitive_sqs, find_flag_transitive_sqs_labeled, KmError};
use crate::perm::{parse_generator_file, PermError, PermGroup};
use crate::screen::{run_screen, ScreenError};

pub const EXIT_TRUE: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "flagsqs",
    version,
    about = "Construct, verify and search flag-transitive Steiner quadruple systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a named design: boolean:d, pgl:d, netto:q, netto3:q, ag3lines:d
    Construct {
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a design file is an SQS (k = 4) or STS (k = 3)
    Verify { file: PathBuf },
    /// Print the derived design at a point
    Derive {
        file: PathBuf,
        #[arg(long)]
        point: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether a group acts flag-transitively on a design
    Flagtrans {
        file: PathBuf,
        #[command(flatten)]
        group: GroupArg,
    },
    /// Decide whether two designs are isomorphic
    Iso { file1: PathBuf, file2: PathBuf },
    /// Find the SQS on which a group acts flag-transitively
    Search {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Report every labeled design instead of one per isomorphism class
        #[arg(long)]
        labeled: bool,
    },
    /// Screen the 2-transitive groups arithmetically
    Screen {
        #[arg(long)]
        max_d: u32,
        #[arg(long)]
        max_q: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct GroupArg {
    /// e.g. "PSL(2,7)", "AGammaL(1,32)", "AGL(4,2)", "A7_16"
    #[arg(long)]
    group: Option<String>,
    /// Generator file, one permutation per line
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    DesignFile { path: String, source: DesignError },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error("{0}\nusage: flagsqs construct <boolean:d|pgl:d|netto:q|netto3:q|ag3lines:d>")]
    Construct(#[from] ConstructError),
    #[error("{0}\ngroups: AGL(d,p), AGL(1,q), AGammaL(1,q), PSL(2,q), PGL(2,q), PSigmaL(2,q), PGammaL(2,q), A7_16, Netto(q)")]
    Group(#[from] GroupError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Search(#[from] KmError),
    #[error(transparent)]
    Screen(#[from] ScreenError),
    #[error("verify handles k = 3 or k = 4, got k = {0}")]
    UnsupportedK(usize),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn read_design(path: &Path) -> Result<Design, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    Design::parse_file(&text).map_err(|source| CliError::DesignFile {
        path: path.display().to_string(),
        source,
    })
}

fn load_group(arg: &GroupArg) -> Result<PermGroup, CliError> {
    match (&arg.group, &arg.group_file) {
        (Some(spec), _) => Ok(spec.parse::<GroupSpec>()?.build()?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(io_err(path))?;
            let gens = parse_generator_file(&text, None)?;
            let degree = gens.first().map_or(0, |g| g.degree());
            Ok(PermGroup::new(degree, gens)?)
        }
        (None, None) => unreachable!("clap enforces one group source"),
    }
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => out
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(io_err(Path::new("<stdout>")))
}

fn truth(out: &mut dyn Write, value: bool) -> Result<i32, CliError> {
    say(out, if value { "true" } else { "false" })?;
    Ok(if value { EXIT_TRUE } else { EXIT_FALSE })
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Construct { name, out: path } => {
            let design = name.parse::<ConstructionTag>()?.build()?;
            emit(out, path.as_deref(), &design.to_file_string())?;
            Ok(EXIT_TRUE)
        }
        Command::Verify { file } => {
            let design = read_design(&file)?;
            let verdict = match design.k() {
                4 => verify_sqs(&design)?,
                3 => verify_sts(&design)?,
                k => return Err(CliError::UnsupportedK(k)),
            };
            match verdict {
                SteinerVerdict::Valid => {
                    say(
                        out,
                        &format!("valid v={} b={}", design.v(), design.block_count()),
                    )?;
                    Ok(EXIT_TRUE)
                }
                SteinerVerdict::Violation { subset, count } => {
                    say(out, &format!("invalid: {subset:?} lies in {count} blocks"))?;
                    Ok(EXIT_FALSE)
                }
            }
        }
        Command::Derive {
            file,
            point,
            out: path,
        } => {
            let derived = derived_design(&read_design(&file)?, point)?;
            emit(out, path.as_deref(), &derived.to_file_string())?;
            Ok(EXIT_TRUE)
        }
        Command::Flagtrans { file, group } => {
            let design = read_design(&file)?;
            let g = load_group(&group)?;
            match is_flag_transitive(&design, &g) {
                Ok(value) => truth(out, value),
                Err(DesignError::NotAutomorphism) => {
                    say(out, "false (the group does not preserve the design)")?;
                    Ok(EXIT_FALSE)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Iso { file1, file2 } => {
            let (d1, d2) = (read_design(&file1)?, read_design(&file2)?);
            match are_isomorphic(&d1, &d2)? {
                Some(map) => {
                    say(out, "true")?;
                    let images: Vec<String> = map.iter().map(u32::to_string).collect();
                    say(out, &format!("map {}", images.join(" ")))?;
                    Ok(EXIT_TRUE)
                }
                None => truth(out, false),
            }
        }
        Command::Search {
            group,
            out_dir,
            labeled,
        } => {
            let g = load_group(&group)?;
            let found = if labeled {
                find_flag_transitive_sqs_labeled(&g)?
            } else {
                find_flag_transitive_sqs(&g)?
            };
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(io_err(dir))?;
            }
            for (i, d) in found.iter().enumerate() {
                match &out_dir {
                    Some(dir) => {
                        let path = dir.join(format!("design_{i}.json"));
                        emit(out, Some(&path), &d.to_file_string())?;
                        say(out, &path.display().to_string())?;
                    }
                    None => emit(out, None, &d.to_file_string())?,
                }
            }
            say(out, &format!("found={}", found.len()))?;
            Ok(if found.is_empty() {
                EXIT_FALSE
            } else {
                EXIT_TRUE
            })
        }
        Command::Screen { max_d, max_q, json } => {
            let report = run_screen(max_d, max_q)?;
            let text = if json {
                report.to_json()
            } else {
                report.to_text()
            };
            emit(out, None, &text)?;
            Ok(EXIT_TRUE)
        }
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit code. Results go to `out`, diagnostics to `err`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_TRUE
            };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match run(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}
