//! Command line front end: `verify`, `smash` and `gallery`.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bundle::{element_of, export_dense, Bundle, DefinitionFile, LoadOptions, MhaDef, SuiteRequest, Terms};
use crate::coaction::{self, Coaction};
use crate::error::{Error, Result};
use crate::gallery::{make, GallerySpec};
use crate::report::{CheckReport, ReportSet};
use crate::smash::{self, Smash};
use crate::window::Sampling;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mhcheck", version, about = "Exact checks for multiplier Hopf algebras and partial comodule coalgebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the suites requested by a definition file.
    Verify(VerifyArgs),
    /// Build the smash coproduct C_b of a partial comodule bialgebra as a dense definition file.
    Smash(SmashArgs),
    /// Export a gallery bundle.
    Gallery(GalleryArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub file: PathBuf,
    /// Suite name or prefix ("smash" selects every smash_… suite).
    #[arg(long)]
    pub suite: Option<String>,
    /// Cap on random draws where a window is sampled.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Window radius for rule-backed families.
    #[arg(long)]
    pub window: Option<i64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
}

#[derive(Debug, Args)]
pub struct SmashArgs {
    pub file: PathBuf,
    /// Coaction id; may be omitted when the file declares exactly one.
    #[arg(long)]
    pub coaction: Option<String>,
    /// The element b of Y⊗A as JSON terms, e.g. '[[[0,1],"1"]]'; defaults to 1⊗Σ a.
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub report: ReportFormat,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct GalleryArgs {
    /// One of A_G, A_Z, group_algebra, group_coaction, induced, sweedler, taft, epdq, tensor.
    pub name: String,
    #[arg(long)]
    pub group: Option<String>,
    /// Comma separated subgroup labels.
    #[arg(long)]
    pub subgroup: Option<String>,
    #[arg(long)]
    pub y_group: Option<String>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub radius: Option<String>,
    #[arg(long)]
    pub degree: Option<String>,
    /// Comma separated labels spanning the image of the projection.
    #[arg(long)]
    pub image: Option<String>,
    #[arg(long)]
    pub t: Option<String>,
    /// Output path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl GalleryArgs {
    pub fn spec(&self) -> GallerySpec {
        let mut spec = GallerySpec::new(&self.name);
        let params = [
            ("group", &self.group),
            ("subgroup", &self.subgroup),
            ("y_group", &self.y_group),
            ("p", &self.p),
            ("q", &self.q),
            ("alpha", &self.alpha),
            ("lambda", &self.lambda),
            ("radius", &self.radius),
            ("degree", &self.degree),
            ("image", &self.image),
            ("t", &self.t),
        ];
        for (k, v) in params {
            if let Some(v) = v {
                spec = spec.with(k, v);
            }
        }
        spec
    }
}

/// What a command produced: an exit code plus text for stdout and stderr.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(e: &Error) -> Outcome {
        Outcome {
            code: EXIT_USAGE,
            stderr: format!("error: {e}\n"),
            ..Outcome::default()
        }
    }
}

fn render(reports: Vec<CheckReport>, format: ReportFormat) -> (bool, String) {
    let set = ReportSet::new(reports);
    let ok = set.status.is_ok();
    let text = match format {
        ReportFormat::Text => set.to_text(),
        ReportFormat::Json => set.to_json() + "\n",
    };
    (ok, text)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::usage(format!("cannot write {}: {e}", path.display())))
}

fn sampling(samples: Option<usize>, seed: u64) -> Sampling {
    Sampling { samples, seed }
}

pub fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let loaded = read(&args.file).and_then(|text| {
        let bundle = Bundle::from_json_str(&text, LoadOptions { window: args.window })?;
        let requests = bundle.requests(args.suite.as_deref())?;
        Ok((bundle, requests))
    });
    let (bundle, requests) = match loaded {
        Ok(x) => x,
        Err(e) => return Outcome::usage(&e),
    };
    if requests.is_empty() {
        return Outcome::usage(&Error::usage(format!(
            "no request in {} matches suite {:?}",
            args.file.display(),
            args.suite.as_deref().unwrap_or("")
        )));
    }
    let (ok, stdout) = render(bundle.run(&requests, &sampling(args.samples, args.seed)), args.report);
    Outcome {
        code: if ok { EXIT_OK } else { EXIT_FAIL },
        stdout,
        stderr: String::new(),
    }
}

fn pick_coaction<'a>(bundle: &'a Bundle, id: Option<&str>) -> Result<&'a Coaction> {
    match id {
        Some(id) => bundle
            .coactions
            .get(id)
            .ok_or_else(|| Error::usage(format!("no coaction {id:?} in the file"))),
        None if bundle.coactions.len() == 1 => Ok(bundle.coactions.values().next().expect("one coaction")),
        None => Err(Error::usage(format!(
            "the file declares {} coactions; choose one with --coaction",
            bundle.coactions.len()
        ))),
    }
}

/// Result of the smash pipeline: the dense definition file of C_b, or the
/// report explaining which precondition failed.
#[derive(Debug)]
pub enum SmashOutcome {
    Built { doc: DefinitionFile, dim: usize },
    Unmet(CheckReport),
}

/// Checks that A is commutative and that the coaction is a partial comodule
/// bialgebra, then builds C_b for `b` (default 1⊗Σ a) as a dense bundle whose
/// "smash" MHA carries a bialgebra request. Usage and parse errors are returned
/// as errors; any other failure becomes a precondition report.
pub fn smash_definition(bundle: &Bundle, coaction: Option<&str>, b: Option<&Terms>, s: &Sampling) -> Result<SmashOutcome> {
    let cc = pick_coaction(bundle, coaction)?;
    let unmet = |why: String| {
        Ok(SmashOutcome::Unmet(CheckReport::precondition_failed("smash", &cc.name, "none", s.seed, &why)))
    };
    if !cc.a.alg.is_commutative() {
        return unmet(format!("{} is not commutative", cc.a.name));
    }
    let e = match crate::bundle::idempotent_for(cc) {
        Ok(e) => e,
        Err(e) => return unmet(e.to_string()),
    };
    let bialgebra = coaction::check_bialgebra(cc, &e, s);
    if !bialgebra.is_ok() {
        return Ok(SmashOutcome::Unmet(bialgebra));
    }
    let ss = match Smash::new(cc) {
        Ok(ss) => ss,
        Err(e) => return unmet(e.to_string()),
    };
    let b = match b {
        Some(t) => element_of(t, bundle.field, "b")?,
        None => match smash::default_b(&ss) {
            Ok(b) => b,
            Err(e) => return unmet(e.to_string()),
        },
    };
    let built = smash::build_cb(&ss, &b)
        .and_then(|cb| smash::smash_coproduct(&ss, &cb))
        .and_then(|m| Ok((export_dense(&m)?, m)));
    let (def, m) = match built {
        Ok(x) => x,
        Err(e @ (Error::Usage(_) | Error::Parse { .. })) => return Err(e),
        Err(e) => return unmet(e.to_string()),
    };
    let dim = def.keys.len();
    let mut doc = DefinitionFile::new(&m.name, bundle.field);
    doc.mhas.insert("smash".into(), MhaDef::Dense(def));
    doc.request(SuiteRequest::new("bialgebra", "smash"));
    Ok(SmashOutcome::Built { doc, dim })
}

pub fn cmd_smash(args: &SmashArgs) -> Outcome {
    let built = read(&args.file).and_then(|text| {
        let bundle = Bundle::from_json_str(&text, LoadOptions::default())?;
        let b: Option<Terms> = match &args.b {
            Some(s) => Some(serde_json::from_str(s).map_err(|e| Error::parse("--b", e.to_string()))?),
            None => None,
        };
        smash_definition(&bundle, args.coaction.as_deref(), b.as_ref(), &sampling(args.samples, args.seed))
    });
    match built {
        Err(e) => Outcome::usage(&e),
        Ok(SmashOutcome::Unmet(report)) => Outcome {
            code: EXIT_FAIL,
            stdout: render(vec![report], args.report).1,
            stderr: String::new(),
        },
        Ok(SmashOutcome::Built { doc, dim }) => match write(&args.out, &doc.to_json()) {
            Ok(()) => Outcome {
                code: EXIT_OK,
                stdout: format!("{}: dimension {dim} written to {}\n", doc.name, args.out.display()),
                stderr: String::new(),
            },
            Err(e) => Outcome::usage(&e),
        },
    }
}

pub fn cmd_gallery(args: &GalleryArgs) -> Outcome {
    let doc = match make(&args.spec()) {
        Ok(doc) => doc,
        Err(e) => return Outcome::usage(&e),
    };
    let text = doc.to_json();
    match &args.out {
        Some(path) => match write(path, &text) {
            Ok(()) => Outcome {
                code: EXIT_OK,
                stdout: format!("{} written to {}\n", doc.name, path.display()),
                stderr: String::new(),
            },
            Err(e) => Outcome::usage(&e),
        },
        None => Outcome {
            code: EXIT_OK,
            stdout: text + "\n",
            stderr: String::new(),
        },
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Smash(a) => cmd_smash(a),
        Command::Gallery(a) => cmd_gallery(a),
    }
}

/// Parses `std::env::args`, runs the command, prints its output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let out = execute(&cli);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    out.code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gallery_flags_become_params() {
        let cli = Cli::try_parse_from(["mhcheck", "gallery", "taft", "--p", "7", "--q", "2", "--alpha", "1"]).unwrap();
        let Command::Gallery(g) = cli.command else { panic!("not gallery") };
        let spec = g.spec();
        assert_eq!(spec.name, "taft");
        assert_eq!(spec.params.len(), 3);
        assert_eq!(spec.params["q"], "2");
    }

    #[test]
    fn unknown_gallery_is_a_usage_error() {
        let cli = Cli::try_parse_from(["mhcheck", "gallery", "nope"]).unwrap();
        assert_eq!(execute(&cli).code, EXIT_USAGE);
    }
}
