//! Command-line front end. Every command returns an [`Outcome`] so the binary
//! stays a thin wrapper and tests can drive commands in-process.
//!
//! Exit codes: 0 success, 1 analysis failure, 2 bad input.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::dsl::{Query, Scenario};
use crate::kinematics::Body;
use crate::render::{ascii, report, svg, tsv};
use crate::trace::Trace;
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "taulattice",
    version,
    about = "Exact cellular-automaton kinematics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a scenario and write its trace table.
    Run {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Kinematic report for one body, or the scenario's queries.
    Analyze {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        body: Option<String>,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Frame transforms between two bodies.
    Frames(PairArgs),
    /// Affine isomorphism verdict for two bodies.
    Isomorphic(PairArgs),
    /// Draw a trace table as SVG or ASCII.
    Render {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Svg)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct PairArgs {
    /// Once for both bodies, or twice (A then B).
    #[arg(long, num_args = 1, required = true)]
    pub scenario: Vec<PathBuf>,
    /// Exactly two: A then B.
    #[arg(long, num_args = 1, required = true)]
    pub body: Vec<String>,
    #[arg(long)]
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            ..Self::default()
        }
    }

    fn input(stderr: String) -> Self {
        Self {
            stderr,
            code: 2,
            ..Self::default()
        }
    }

    fn analysis(stdout: String, stderr: String) -> Self {
        Self {
            stdout,
            stderr,
            code: 1,
        }
    }
}

type Step<T> = std::result::Result<T, Outcome>;

fn read(path: &Path) -> Step<String> {
    fs::read_to_string(path)
        .map_err(|e| Outcome::input(format!("{}: cannot read: {e}\n", path.display())))
}

fn load(path: &Path) -> Step<Scenario> {
    let text = read(path)?;
    Scenario::parse(&text)
        .map_err(|e| Outcome::input(format!("{}\n", e.with_file(&path.display().to_string()))))
}

fn body<'a>(scenario: &'a Scenario, path: &Path, name: &str) -> Step<&'a Body> {
    scenario
        .body(name)
        .ok_or_else(|| Outcome::input(format!("{}: unknown body {name}\n", path.display())))
}

fn write_out(out: Option<&Path>, text: String) -> Outcome {
    match out {
        None => Outcome::ok(text),
        Some(path) => match fs::write(path, text) {
            Ok(()) => Outcome::ok(String::new()),
            Err(e) => Outcome::input(format!("{}: cannot write: {e}\n", path.display())),
        },
    }
}

/// Analysis errors exit 1; anything else means the input was unusable.
fn failed(err: Error) -> Outcome {
    match err {
        Error::NonInertial
        | Error::NoFrame { .. }
        | Error::InsufficientTrace { .. }
        | Error::NotStandard
        | Error::UndefinedComposition(..) => {
            Outcome::analysis(String::new(), format!("error: {err}\n"))
        }
        other => Outcome::input(format!("error: {other}\n")),
    }
}

fn finish(result: crate::Result<report::Report>) -> Outcome {
    match result {
        Ok(r) if r.ok => Outcome::ok(r.text),
        Ok(r) => Outcome::analysis(r.text, "error: analysis failed\n".into()),
        Err(e) => failed(e),
    }
}

pub fn run(scenario: &Path, steps: Option<usize>, out: Option<&Path>) -> Outcome {
    let s = match load(scenario) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let trace = s.run(steps.unwrap_or(s.steps));
    write_out(out, tsv::write_trace(&trace))
}

pub fn analyze(scenario: &Path, name: Option<&str>, steps: Option<usize>) -> Outcome {
    let inner = || -> Step<Outcome> {
        let s = load(scenario)?;
        let trace = s.run(steps.unwrap_or(s.steps));
        if let Some(name) = name {
            return Ok(finish(report::analyze(
                &trace,
                name,
                body(&s, scenario, name)?,
            )));
        }
        let queries = if s.queries.is_empty() {
            s.bodies
                .iter()
                .map(|(n, _)| Query::Analyze(n.clone()))
                .collect()
        } else {
            s.queries.clone()
        };
        let mut all = Outcome::default();
        for (i, q) in queries.iter().enumerate() {
            if i > 0 {
                all.stdout.push('\n');
            }
            let one = match q {
                Query::Analyze(a) => finish(report::analyze(&trace, a, body(&s, scenario, a)?)),
                Query::Frames(a, b) => finish(report::frames(
                    (&trace, a, body(&s, scenario, a)?),
                    (&trace, b, body(&s, scenario, b)?),
                )),
                Query::Isomorphic(a, b) => finish(report::isomorphic(
                    (&trace, a, body(&s, scenario, a)?),
                    (&trace, b, body(&s, scenario, b)?),
                )),
            };
            all.stdout.push_str(&one.stdout);
            all.stderr.push_str(&one.stderr);
            all.code = all.code.max(one.code);
        }
        Ok(all)
    };
    inner().unwrap_or_else(|o| o)
}

type PairReport = fn((&Trace, &str, &Body), (&Trace, &str, &Body)) -> crate::Result<report::Report>;

fn pair(args: &PairArgs, make: PairReport) -> Outcome {
    let inner = || -> Step<Outcome> {
        let [name_a, name_b] = args.body.as_slice() else {
            return Err(Outcome::input("error: expected --body twice\n".into()));
        };
        let (path_a, path_b) = match args.scenario.as_slice() {
            [one] => (one, one),
            [a, b] => (a, b),
            _ => {
                return Err(Outcome::input(
                    "error: expected --scenario once or twice\n".into(),
                ))
            }
        };
        let sa = load(path_a)?;
        let sb = if path_b == path_a {
            sa.clone()
        } else {
            load(path_b)?
        };
        let ta = sa.run(args.steps.unwrap_or(sa.steps));
        let tb = sb.run(args.steps.unwrap_or(sb.steps));
        let ba = body(&sa, path_a, name_a)?;
        let bb = body(&sb, path_b, name_b)?;
        Ok(finish(make((&ta, name_a, ba), (&tb, name_b, bb))))
    };
    inner().unwrap_or_else(|o| o)
}

pub fn frames(args: &PairArgs) -> Outcome {
    pair(args, report::frames)
}

pub fn isomorphic(args: &PairArgs) -> Outcome {
    pair(args, report::isomorphic)
}

pub fn render(trace: &Path, out: Option<&Path>, format: Format) -> Outcome {
    let text = match read(trace) {
        Ok(t) => t,
        Err(o) => return o,
    };
    let trace_data = match tsv::read_trace(&text) {
        Ok(t) => t,
        Err(e) => return Outcome::input(format!("{}: {e}\n", trace.display())),
    };
    let drawn = match format {
        Format::Svg => svg::render_svg(&trace_data),
        Format::Ascii => ascii::render_ascii(&trace_data),
    };
    write_out(out, drawn)
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Run {
            scenario,
            steps,
            out,
        } => run(scenario, *steps, out.as_deref()),
        Command::Analyze {
            scenario,
            body,
            steps,
        } => analyze(scenario, body.as_deref(), *steps),
        Command::Frames(args) => frames(args),
        Command::Isomorphic(args) => isomorphic(args),
        Command::Render { trace, out, format } => render(trace, out.as_deref(), *format),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(name: &str) -> PathBuf {
        Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("../../scenarios")
            .join(name)
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let o = run(Path::new("/nonexistent/x.scn"), None, None);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("cannot read"));
    }

    #[test]
    fn analyze_unknown_body() {
        let o = analyze(&scenario("example1.scn"), Some("nope"), None);
        assert_eq!(o.code, 2);
        assert!(o.stderr.contains("unknown body nope"));
    }

    #[test]
    fn analyze_absolute_body() {
        let o = analyze(&scenario("example1.scn"), Some("A1"), None);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(o.stdout.lines().any(|l| l == "v = 0"));
        assert!(o.stdout.lines().any(|l| l == "w = 1"));
    }

    #[test]
    fn non_inertial_exits_one() {
        let o = analyze(&scenario("example2.scn"), Some("A2"), Some(5));
        assert_eq!(o.code, 1);
        assert!(o.stdout.contains("inertial: no"));
    }

    #[test]
    fn frames_self_is_identity() {
        let args = PairArgs {
            scenario: vec![scenario("example2.scn")],
            body: vec!["A2".into(), "A2".into()],
            steps: None,
        };
        let o = frames(&args);
        assert_eq!(o.code, 0, "{}", o.stderr);
        assert!(
            o.stdout.contains("L_AB (O_A -> O_B):\n  1 0\n  0 1\n"),
            "{}",
            o.stdout
        );
    }

    #[test]
    fn frames_against_light_speed_fails() {
        let args = PairArgs {
            scenario: vec![scenario("example1.scn"), scenario("vacuum.scn")],
            body: vec!["A1".into(), "V".into()],
            steps: None,
        };
        let o = frames(&args);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("error"));
    }
}
