//! Command-line front end.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::groups::{GroupKind, GroupSpec, Triple};
use crate::pipeline::{fan, run_sweep, verify_case, verify_invring};
use crate::report::{sweep_csv, sweep_json, sweep_table, VerificationReport};
use crate::toric::FanFormat;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INVALID_INPUT: u8 = 2;

const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(
    name = "wildmckay",
    version,
    about = "Crepant resolutions of wild quotient 3-fold singularities in characteristic 3"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one group end to end.
    Verify(Options),
    /// Check every admissible group up to `--max-r`.
    Sweep(Options),
    /// Invariant ring, blow-up charts and quotient presentations.
    Invring(Options),
    /// Export the triangulated junior simplex.
    Fan(Options),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Default, Args)]
pub struct Options {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub kind: Option<String>,
    #[arg(long)]
    pub r: Option<u64>,
    /// Generators of H as `a,b,c[;a,b,c...]`.
    #[arg(long)]
    pub gens: Option<String>,
    #[arg(long = "max-r")]
    pub max_r: Option<u64>,
    #[arg(long = "max-degree")]
    pub max_degree: Option<u32>,
    /// Field sizes for the exhaustive scans, e.g. `3,9,27`.
    #[arg(long)]
    pub fields: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Random products in the representation check.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    kind: Option<String>,
    r: Option<u64>,
    gens: Option<String>,
    #[serde(alias = "max-r")]
    max_r: Option<u64>,
    #[serde(alias = "max-degree")]
    max_degree: Option<u32>,
    fields: Option<FieldList>,
    out: Option<PathBuf>,
    format: Option<Format>,
    samples: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FieldList {
    List(Vec<usize>),
    Text(String),
}

/// Flags merged over the config file.
#[derive(Debug, Default)]
pub struct RunConfig {
    pub kind: Option<GroupKind>,
    pub r: Option<u64>,
    pub gens: Option<Vec<Triple>>,
    pub max_r: Option<u64>,
    pub max_degree: Option<u32>,
    pub fields: Option<Vec<usize>>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub samples: Option<usize>,
}

fn parse_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidSpec(format!("`{x}` is not a non-negative integer")))
        })
        .collect()
}

/// Parses `a,b,c;a,b,c`.
pub fn parse_gens(s: &str) -> Result<Vec<Triple>> {
    s.split(';')
        .filter(|g| !g.trim().is_empty())
        .map(|g| {
            let v = parse_list(g)?;
            <[u64; 3]>::try_from(v)
                .map_err(|_| Error::InvalidSpec(format!("generator `{g}` needs three entries")))
        })
        .collect()
}

fn parse_kind(s: &str) -> Result<GroupKind> {
    s.parse()
        .map_err(|_| Error::InvalidSpec(format!("unknown kind `{s}`, expected c3 or s3")))
}

impl RunConfig {
    pub fn from_options(o: &Options) -> Result<Self> {
        let file = match &o.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                toml::from_str::<FileConfig>(&text)
                    .map_err(|e| Error::InvalidSpec(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        let kind = o
            .kind
            .clone()
            .or(file.kind)
            .map(|k| parse_kind(&k))
            .transpose()?;
        let gens = o
            .gens
            .clone()
            .or(file.gens)
            .map(|g| parse_gens(&g))
            .transpose()?;
        let fields = match (&o.fields, file.fields) {
            (Some(s), _) => Some(parse_list(s)?),
            (None, Some(FieldList::Text(s))) => Some(parse_list(&s)?),
            (None, Some(FieldList::List(v))) => Some(v.into_iter().map(|x| x as u64).collect()),
            (None, None) => None,
        }
        .map(|v| v.into_iter().map(|x| x as usize).collect());
        Ok(RunConfig {
            kind,
            r: o.r.or(file.r),
            gens,
            max_r: o.max_r.or(file.max_r),
            max_degree: o.max_degree.or(file.max_degree),
            fields,
            out: o.out.clone().or(file.out),
            format: o.format.or(file.format),
            samples: o.samples.or(file.samples),
        })
    }

    fn require_kind(&self) -> Result<GroupKind> {
        self.kind
            .ok_or_else(|| Error::InvalidSpec("--kind is required".into()))
    }

    /// Group from `kind`, `r` and `gens`; S₃ defaults to the full `H`.
    pub fn group_spec(&self) -> Result<GroupSpec> {
        let kind = self.require_kind()?;
        let r = self
            .r
            .ok_or_else(|| Error::InvalidSpec("--r is required".into()))?;
        match (&self.gens, kind) {
            (Some(g), _) => Ok(GroupSpec::new(kind, r, g.clone())),
            (None, GroupKind::S3) => Ok(GroupSpec::s3_full(r)),
            (None, GroupKind::C3) => {
                Err(Error::InvalidSpec("--gens is required for kind c3".into()))
            }
        }
    }
}

/// Output text and exit code of one command.
pub struct Outcome {
    pub text: String,
    pub code: u8,
    pub out: Option<PathBuf>,
}

fn code_for(passed: bool) -> u8 {
    if passed {
        EXIT_PASS
    } else {
        EXIT_CHECK_FAILED
    }
}

fn render_report(rep: &VerificationReport, format: Format) -> Result<String> {
    match format {
        Format::Table => Ok(rep.to_table()),
        Format::Json => Ok(rep.to_json()),
        Format::Csv => match &rep.summary {
            Some(s) => Ok(sweep_csv(std::slice::from_ref(s))),
            None => Err(Error::InvalidSpec("csv output needs a case summary".into())),
        },
        Format::Svg => Err(Error::InvalidSpec(
            "svg output is only available for fan".into(),
        )),
    }
}

/// Runs a parsed command without touching the process state.
pub fn execute(command: &Command) -> Result<Outcome> {
    let (Command::Verify(o) | Command::Sweep(o) | Command::Invring(o) | Command::Fan(o)) = command;
    let cfg = RunConfig::from_options(o)?;
    let samples = cfg.samples.unwrap_or(DEFAULT_SAMPLES);
    let out = cfg.out.clone();
    match command {
        Command::Verify(_) => {
            let spec = cfg.group_spec()?;
            let rep = verify_case(&spec, samples)?;
            let text = render_report(&rep, cfg.format.unwrap_or(Format::Table))?;
            Ok(Outcome {
                text,
                code: code_for(rep.passed),
                out,
            })
        }
        Command::Sweep(_) => {
            let kind = cfg.require_kind()?;
            let max_r = cfg
                .max_r
                .ok_or_else(|| Error::InvalidSpec("--max-r is required".into()))?;
            let format = cfg.format.unwrap_or(Format::Csv);
            if format == Format::Svg {
                return Err(Error::InvalidSpec(
                    "svg output is only available for fan".into(),
                ));
            }
            let mut rows = Vec::new();
            let mut passed = true;
            for rep in run_sweep(kind, max_r, samples.min(200)) {
                let rep = rep?;
                passed &= rep.passed;
                match rep.summary {
                    Some(s) => rows.push(s),
                    None => passed = false,
                }
            }
            let text = match format {
                Format::Csv => sweep_csv(&rows),
                Format::Json => sweep_json(&rows, passed),
                _ => sweep_table(&rows),
            };
            Ok(Outcome {
                text,
                code: code_for(passed),
                out,
            })
        }
        Command::Invring(_) => {
            let fields = cfg.fields.clone().unwrap_or_else(|| vec![3, 9, 27]);
            let rep = verify_invring(cfg.max_degree.unwrap_or(30), &fields)?;
            let text = render_report(&rep, cfg.format.unwrap_or(Format::Table))?;
            Ok(Outcome {
                text,
                code: code_for(rep.passed),
                out,
            })
        }
        Command::Fan(_) => {
            let spec = cfg.group_spec()?;
            let format = match cfg.format.unwrap_or(Format::Json) {
                Format::Json => FanFormat::Json,
                Format::Svg => FanFormat::Svg,
                other => {
                    return Err(Error::InvalidSpec(format!(
                        "fan supports json or svg, not {other:?}"
                    )))
                }
            };
            Ok(Outcome {
                text: fan(&spec, format)?,
                code: EXIT_PASS,
                out,
            })
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("WILDMCKAY_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
        Error::InvalidSpec(format!("WILDMCKAY_THREADS=`{v}` is not a positive integer"))
    })?;
    // a second initialization only happens in tests; keep the first pool
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

/// Entry point for the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_PASS
            });
        }
    };
    let result = configure_threads().and_then(|()| {
        let outcome = execute(&cli.command)?;
        match &outcome.out {
            Some(p) => std::fs::write(p, &outcome.text)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
            None => print!("{}", outcome.text),
        }
        Ok(outcome.code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() {
                EXIT_INVALID_INPUT
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_parsing() {
        assert_eq!(parse_gens("1,2,4").unwrap(), vec![[1, 2, 4]]);
        assert_eq!(
            parse_gens("1,6,0; 0,1,6").unwrap(),
            vec![[1, 6, 0], [0, 1, 6]]
        );
        assert!(parse_gens("1,2").is_err());
        assert!(parse_gens("1,x,2").is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "kind = \"c3\"\nr = 7\ngens = \"1,2,4\"\nfields = [3, 9]\n",
        )
        .unwrap();
        let o = Options {
            config: Some(path),
            r: Some(13),
            ..Options::default()
        };
        let cfg = RunConfig::from_options(&o).unwrap();
        assert_eq!(cfg.kind, Some(GroupKind::C3));
        assert_eq!(cfg.r, Some(13));
        assert_eq!(cfg.fields, Some(vec![3, 9]));
    }

    #[test]
    fn malformed_config_is_input_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.toml");
        std::fs::write(&path, "kind = [\nbogus").unwrap();
        let o = Options {
            config: Some(path),
            ..Options::default()
        };
        assert!(RunConfig::from_options(&o).unwrap_err().is_input_error());
    }
}
