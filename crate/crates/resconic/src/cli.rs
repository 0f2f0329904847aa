//! Command-line front end.
//!
//! Commands: `validate`, `admits`, `bundles --bound B`,
//! `classify --fiber <json>`, `corpus`; shared flags `--format
//! json|text|dot` and `--output <path>`. Exit codes: 0 on success, 1 on
//! domain errors, 2 on I/O, usage or schema errors. Output is
//! deterministic, and every error is printed as a machine-readable JSON
//! object.

use crate::admissibility::admits;
use crate::conic_bundles::{classify_fiber, enumerate_conic_bundles, ConicBundle, FiberError};
use crate::corpus::run_corpus;
use crate::surface_model::{CurveRole, ModelError, NamedCurve, SurfaceModel};
use serde::Serialize;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Schema(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) | CliError::Schema(_) => 2,
            CliError::Domain(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Schema(_) => "schema",
            CliError::Domain(_) => "domain",
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        match e {
            ModelError::Schema(_) => CliError::Schema(e.to_string()),
            other => CliError::Domain(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Clone)]
pub enum Command {
    Validate { path: PathBuf },
    Admits { path: PathBuf },
    Bundles { path: PathBuf, bound: i64 },
    Classify { path: PathBuf, fiber: String },
    Corpus,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub format: OutputFormat,
    pub output: Option<PathBuf>,
    /// Demote the inventory-completeness checks (`fiber-coverage`,
    /// `section-incidence`) to warnings during `validate`.
    pub lenient: bool,
}

/// Checks that only constrain how complete the declared inventory is.
const LENIENT_CHECKS: [&str; 2] = ["fiber-coverage", "section-incidence"];

pub const USAGE: &str = "resconic <command> [options]

commands:
  validate <model.json>                 check every model invariant
  admits <model.json>                   admissible conic-bundle fiber types
  bundles <model.json> --bound <B>      enumerate conic bundles up to degree B
  classify <model.json> --fiber <json>  classify a support list, e.g.
                                        --fiber '[[\"E9\",2],[\"E8\",2]]'
  corpus                                run the bundled worked surfaces

options:
  --format json|text|dot   output format (default json)
  --output <path>          write output to a file instead of stdout
  --lenient                validate: demote inventory-completeness checks
                           (fiber-coverage, section-incidence) to warnings";

/// Parses raw arguments into a run configuration.
pub fn parse_args(args: &[String]) -> Result<RunConfig, CliError> {
    let mut positional: Vec<String> = Vec::new();
    let mut format = OutputFormat::Json;
    let mut output = None;
    let mut bound: Option<i64> = None;
    let mut fiber: Option<String> = None;
    let mut lenient = false;

    let mut it = args.iter();
    while let Some(arg) = it.next() {
        match arg.as_str() {
            "--lenient" => lenient = true,
            "--format" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--format needs a value".into()))?;
                format = match v.as_str() {
                    "json" => OutputFormat::Json,
                    "text" => OutputFormat::Text,
                    "dot" => OutputFormat::Dot,
                    other => return Err(CliError::Usage(format!("unknown format `{other}`"))),
                };
            }
            "--output" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--output needs a value".into()))?;
                output = Some(PathBuf::from(v));
            }
            "--bound" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--bound needs a value".into()))?;
                bound = Some(
                    v.parse()
                        .map_err(|_| CliError::Usage(format!("invalid bound `{v}`")))?,
                );
            }
            "--fiber" => {
                let v = it
                    .next()
                    .ok_or_else(|| CliError::Usage("--fiber needs a value".into()))?;
                fiber = Some(v.clone());
            }
            other if other.starts_with("--") => {
                return Err(CliError::Usage(format!("unknown option `{other}`")));
            }
            other => positional.push(other.to_string()),
        }
    }

    let Some(cmd) = positional.first() else {
        return Err(CliError::Usage(USAGE.into()));
    };
    let path_arg = |positional: &[String]| -> Result<PathBuf, CliError> {
        positional
            .get(1)
            .map(PathBuf::from)
            .ok_or_else(|| CliError::Usage(format!("{} needs a model path", positional[0])))
    };
    let had_fiber = fiber.is_some();
    let command = match cmd.as_str() {
        "validate" => Command::Validate {
            path: path_arg(&positional)?,
        },
        "admits" => Command::Admits {
            path: path_arg(&positional)?,
        },
        "bundles" => Command::Bundles {
            path: path_arg(&positional)?,
            bound: bound.ok_or_else(|| CliError::Usage("bundles needs --bound <B>".into()))?,
        },
        "classify" => Command::Classify {
            path: path_arg(&positional)?,
            fiber: fiber.ok_or_else(|| CliError::Usage("classify needs --fiber <json>".into()))?,
        },
        "corpus" => Command::Corpus,
        other => return Err(CliError::Usage(format!("unknown command `{other}`"))),
    };
    if bound.is_some() && !matches!(command, Command::Bundles { .. }) {
        return Err(CliError::Usage("--bound only applies to bundles".into()));
    }
    if lenient && !matches!(command, Command::Validate { .. }) {
        return Err(CliError::Usage("--lenient only applies to validate".into()));
    }
    if had_fiber && !matches!(command, Command::Classify { .. }) {
        return Err(CliError::Usage("--fiber only applies to classify".into()));
    }
    Ok(RunConfig {
        command,
        format,
        output,
        lenient,
    })
}

fn load_model(path: &PathBuf) -> Result<SurfaceModel, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(SurfaceModel::from_json(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))
}

fn node_shape(role: CurveRole) -> &'static str {
    match role {
        CurveRole::Section => "circle",
        CurveRole::FiberComponent => "point",
        CurveRole::Other => "star",
    }
}

/// Renders each singular fiber of each bundle as a DOT cluster; sections
/// draw as circles, (-2)-curves as filled points.
fn bundles_to_dot(model: &SurfaceModel, bundles: &[ConicBundle]) -> String {
    let mut out = String::from("graph conic_bundles {\n");
    let mut cluster = 0usize;
    for bundle in bundles {
        for fiber in &bundle.fibers {
            let _ = writeln!(out, "  subgraph cluster_{cluster} {{");
            let _ = writeln!(
                out,
                "    label=\"{} : {}\";",
                bundle.class.class, fiber.fiber_type
            );
            let curves: Vec<(&NamedCurve, i64)> = fiber
                .support
                .iter()
                .filter_map(|(l, m)| model.curve(l).map(|c| (c, *m)))
                .collect();
            for (c, m) in &curves {
                let _ = writeln!(
                    out,
                    "    \"{cluster}:{}\" [shape={}, label=\"{} x{m}\"];",
                    c.label,
                    node_shape(c.role),
                    c.label
                );
            }
            for i in 0..curves.len() {
                for j in (i + 1)..curves.len() {
                    let w = curves[i].0.class.intersect(&curves[j].0.class);
                    if w > 0u8.into() {
                        if w == 1u8.into() {
                            let _ = writeln!(
                                out,
                                "    \"{cluster}:{}\" -- \"{cluster}:{}\";",
                                curves[i].0.label, curves[j].0.label
                            );
                        } else {
                            let _ = writeln!(
                                out,
                                "    \"{cluster}:{}\" -- \"{cluster}:{}\" [label=\"{w}\"];",
                                curves[i].0.label, curves[j].0.label
                            );
                        }
                    }
                }
            }
            let _ = writeln!(out, "  }}");
            cluster += 1;
        }
    }
    out.push_str("}\n");
    out
}

fn bundles_to_text(bundles: &[ConicBundle]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} conic bundle(s)", bundles.len());
    for bundle in bundles {
        let _ = writeln!(
            out,
            "class {}: {} singular fiber(s)",
            bundle.class.class,
            bundle.fibers.len()
        );
        for fiber in &bundle.fibers {
            let support: Vec<String> = fiber
                .support
                .iter()
                .map(|(l, m)| {
                    if *m == 1 {
                        l.clone()
                    } else {
                        format!("{m}{l}")
                    }
                })
                .collect();
            let _ = writeln!(out, "  {} = {}", fiber.fiber_type, support.join(" + "));
        }
    }
    out
}

/// Executes a parsed command, returning the rendered output and exit code.
pub fn execute(cfg: &RunConfig) -> Result<(String, i32), CliError> {
    match &cfg.command {
        Command::Validate { path } => {
            let model = load_model(path)?;
            let mut report = model.validate();
            if cfg.lenient {
                report.valid = report
                    .checks
                    .iter()
                    .filter(|c| !LENIENT_CHECKS.contains(&c.name.as_str()))
                    .all(|c| c.passed)
                    && report.config.is_valid();
            }
            let text = match cfg.format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Text => {
                    let mut t = format!(
                        "model {}: {}\n",
                        report.model,
                        if report.valid { "valid" } else { "INVALID" }
                    );
                    for c in &report.checks {
                        let _ = writeln!(
                            t,
                            "  [{}] {}{}",
                            if c.passed { "ok" } else { "FAIL" },
                            c.name,
                            if c.details.is_empty() {
                                String::new()
                            } else {
                                format!(": {}", c.details)
                            }
                        );
                    }
                    t
                }
                OutputFormat::Dot => {
                    return Err(CliError::Usage("validate has no dot output".into()))
                }
            };
            Ok((text, if report.valid { 0 } else { 1 }))
        }
        Command::Admits { path } => {
            let model = load_model(path)?;
            let report = admits(&model.config).map_err(|e| CliError::Domain(e.to_string()))?;
            let text = match cfg.format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Text => format!(
                    "config {}\n  A2: {} ({})\n  An (n>=3): {} ({})\n  D3: {} ({})\n  Dm (m>=4): {} ({})\n",
                    model.config,
                    report.a2,
                    report.reasons.a2,
                    report.an,
                    report.reasons.an,
                    report.d3,
                    report.reasons.d3,
                    report.dm,
                    report.reasons.dm
                ),
                OutputFormat::Dot => {
                    return Err(CliError::Usage("admits has no dot output".into()))
                }
            };
            Ok((text, 0))
        }
        Command::Bundles { path, bound } => {
            if *bound < 0 {
                return Err(CliError::Usage("--bound must be nonnegative".into()));
            }
            let model = load_model(path)?;
            let bundles = enumerate_conic_bundles(&model, *bound);
            let text = match cfg.format {
                OutputFormat::Json => to_json(&bundles)?,
                OutputFormat::Text => bundles_to_text(&bundles),
                OutputFormat::Dot => bundles_to_dot(&model, &bundles),
            };
            Ok((text, 0))
        }
        Command::Classify { path, fiber } => {
            let model = load_model(path)?;
            let support_spec: Vec<(String, i64)> = serde_json::from_str(fiber)
                .map_err(|e| CliError::Schema(format!("fiber spec: {e}")))?;
            let mut support: Vec<(&NamedCurve, i64)> = Vec::new();
            for (label, mult) in &support_spec {
                let curve = model
                    .curve(label)
                    .ok_or_else(|| CliError::Domain(format!("unknown curve `{label}`")))?;
                support.push((curve, *mult));
            }
            let fiber_type = classify_fiber(&support)
                .map_err(|e: FiberError| CliError::Domain(e.to_string()))?;
            let text = match cfg.format {
                OutputFormat::Json => to_json(&serde_json::json!({
                    "type": fiber_type.to_string(),
                }))?,
                OutputFormat::Text => format!("{fiber_type}\n"),
                OutputFormat::Dot => {
                    return Err(CliError::Usage("classify has no dot output".into()))
                }
            };
            Ok((text, 0))
        }
        Command::Corpus => {
            let report = run_corpus();
            let text = match cfg.format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Text => report.to_text(),
                OutputFormat::Dot => {
                    return Err(CliError::Usage("corpus has no dot output".into()))
                }
            };
            Ok((text, if report.all_passed() { 0 } else { 1 }))
        }
    }
}

fn error_object(err: &CliError) -> String {
    serde_json::json!({
        "error": { "kind": err.kind(), "message": err.to_string() }
    })
    .to_string()
}

/// Full CLI entry point: parse, execute, write. Returns the process exit
/// code.
pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = writeln!(out, "{}", error_object(&e));
            return e.exit_code();
        }
    };
    match execute(&cfg) {
        Ok((text, code)) => {
            if let Some(path) = &cfg.output {
                if let Err(e) = std::fs::write(path, &text) {
                    let _ = writeln!(
                        out,
                        "{}",
                        error_object(&CliError::Io(format!("{}: {e}", path.display())))
                    );
                    return 2;
                }
            } else {
                let _ = write!(out, "{text}");
                if !text.ends_with('\n') {
                    let _ = writeln!(out);
                }
            }
            code
        }
        Err(e) => {
            let _ = writeln!(out, "{}", error_object(&e));
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (String, i32) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut buf = Vec::new();
        let code = run(&args, &mut buf);
        (String::from_utf8(buf).unwrap(), code)
    }

    #[test]
    fn usage_errors_exit_2() {
        let (out, code) = run_capture(&[]);
        assert_eq!(code, 2);
        assert!(out.contains("\"kind\":\"usage\""));
        let (_, code) = run_capture(&["bundles"]);
        assert_eq!(code, 2);
        let (_, code) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn corpus_runs_green() {
        let (out, code) = run_capture(&["corpus", "--format", "text"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("5/5 fixtures pass"));
    }

    #[test]
    fn corpus_output_is_byte_identical_across_runs() {
        let (a, _) = run_capture(&["corpus", "--format", "json"]);
        let (b, _) = run_capture(&["corpus", "--format", "json"]);
        assert_eq!(a, b);
    }

    #[test]
    fn missing_file_exits_2() {
        let (out, code) = run_capture(&["validate", "/nonexistent/model.json"]);
        assert_eq!(code, 2);
        assert!(out.contains("\"kind\":\"io\""));
    }
}
