//! Command-line front end. [`run`] does all the work and returns the streams
//! and the exit status, so the binary is a thin wrapper.
//!
//! Exit status: 0 on success, 1 on a domain failure (invalid descriptor,
//! inapplicable criterion, parse error in an input file), 2 on a usage error.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::abelian::Ring;
use crate::bundles::{self, BundleDescriptor, RuleChoice};
use crate::error::Error;
use crate::foldmap::{self, FoldMapDescriptor};
use crate::graphs::{self, RegionGraph};
use crate::gysin::{self, FamilyReport, S2Bundle};
use crate::homology::parse_manifold;
use crate::pop::{self, Justification};

#[derive(Debug, Parser)]
#[command(name = "roundfold", version, about = "Round fold maps, region graphs and circle bundles")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and validate a descriptor file.
    Validate { file: PathBuf },
    /// Build the (H_k, R) region graph of a descriptor.
    Graph {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        degree: usize,
        #[arg(long, default_value = "z", value_parser = parse_ring)]
        ring: Ring,
        /// Emit Graphviz DOT.
        #[arg(long)]
        dot: bool,
    },
    /// Decide whether a circle bundle admits a P-operation.
    Check {
        file: PathBuf,
        #[command(flatten)]
        criterion: Criterion,
    },
    /// Apply a P-operation and print the resulting descriptor.
    Apply {
        file: PathBuf,
        /// Fiber expression, for example `sphere(1)` or `torus(1)`.
        #[arg(long)]
        fiber: String,
        #[command(flatten)]
        criterion: Criterion,
        /// Euler data for a circle-bundle family report instead of a bundle file.
        #[arg(long, value_parser = parse_list, conflicts_with_all = ["bundle", "start"])]
        euler: Option<IntList>,
    },
    /// Gysin computation for a circle bundle over a 4-manifold.
    Homology {
        #[arg(long = "four-manifold")]
        four_manifold: PathBuf,
        /// Euler class coordinates; overrides `alpha` in the file.
        #[arg(long, value_parser = parse_list)]
        alpha: Option<IntList>,
    },
    /// Print the descriptor of a catalog item.
    Catalog {
        name: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
    },
    /// Report on a circle-bundle family: thm5 FACTORS ALPHA, thm6 K [M], thm7 K, thm8 K1 K2.
    Report {
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct Criterion {
    /// Bundle descriptor file; the trivial bundle when omitted.
    #[arg(long)]
    bundle: Option<PathBuf>,
    /// Starting set such as "0,2"; searched when omitted.
    #[arg(long, value_parser = parse_set)]
    start: Option<BTreeSet<usize>>,
    #[arg(long, default_value = "auto", value_parser = parse_rule)]
    rule: RuleChoice,
}

fn parse_ring(s: &str) -> std::result::Result<Ring, String> {
    match s {
        "z" => Ok(Ring::Integers),
        "z2" => Ok(Ring::ModTwo),
        _ => Err("expected `z` or `z2`".into()),
    }
}

fn parse_rule(s: &str) -> std::result::Result<RuleChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Comma-separated integers taken as one argument.
#[derive(Debug, Clone)]
struct IntList(Vec<i64>);

fn parse_list(s: &str) -> std::result::Result<IntList, String> {
    gysin::parse_int_list(s).map(IntList).map_err(|e| e.to_string())
}

fn parse_set(s: &str) -> std::result::Result<BTreeSet<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad region index `{}`", t.trim())))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Failure of a subcommand, split by exit status.
enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Successful output, with the exit status it carries.
struct Output {
    text: String,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: String, json: Value) -> Self {
        Output { text, json, code: 0 }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome { code, stdout, stderr };
        }
    };
    match dispatch(&cli.command) {
        Ok(out) => Outcome {
            code: out.code,
            stdout: if cli.json {
                pretty(&out.json)
            } else {
                out.text
            },
            stderr: String::new(),
        },
        Err(failure) => {
            let (code, kind, message) = match failure {
                Failure::Domain(e) => (1, error_kind(&e), e.to_string()),
                Failure::Usage(m) => (2, "usage", m),
            };
            Outcome {
                code,
                stdout: if cli.json {
                    pretty(&json!({ "error": { "kind": kind, "message": message } }))
                } else {
                    String::new()
                },
                stderr: format!("error: {message}\n"),
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap_or_default();
    s.push('\n');
    s
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Overflow(_) => "overflow",
        Error::Dimension(_) => "dimension",
        Error::InvalidGroup(_) => "invalid-group",
        Error::IllDefinedHom { .. } => "ill-defined-hom",
        Error::UnsupportedTor(_) => "unsupported-tor",
        Error::Parameter(_) => "parameter",
        Error::Parse { .. } => "parse",
        Error::Incomplete(_) => "incomplete",
        Error::InvalidDescriptor(_) => "invalid-descriptor",
        Error::Precondition(_) => "precondition",
        Error::MissingBundleData(_) => "missing-bundle-data",
        Error::NotApplicable(_) => "not-applicable",
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_map(path: &Path) -> Result<FoldMapDescriptor, Failure> {
    Ok(foldmap::parse_descriptor(&read(path)?)?)
}

fn load_bundle(path: Option<&Path>) -> Result<BundleDescriptor, Failure> {
    match path {
        Some(p) => Ok(bundles::parse_bundle(&read(p)?)?),
        None => Ok(BundleDescriptor::trivial()),
    }
}

fn set_text(s: &BTreeSet<usize>) -> String {
    let items: Vec<String> = s.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(","))
}

fn dispatch(cmd: &Command) -> Result<Output, Failure> {
    match cmd {
        Command::Validate { file } => validate(file),
        Command::Graph { file, degree, ring, dot } => graph(file, *degree, *ring, *dot),
        Command::Check { file, criterion } => check(file, criterion),
        Command::Apply {
            file,
            fiber,
            criterion,
            euler,
        } => apply(file, fiber, criterion, euler.as_ref().map(|e| e.0.as_slice())),
        Command::Homology { four_manifold, alpha } => homology(four_manifold, alpha.as_ref().map(|a| a.0.as_slice())),
        Command::Catalog { name, params } => {
            let d = foldmap::catalog(name, params)?;
            let text = foldmap::serialize_descriptor(&d);
            Ok(Output::ok(text.clone(), json!({ "descriptor": text })))
        }
        Command::Report { family, params } => report(family, params),
    }
}

fn validate(file: &Path) -> Result<Output, Failure> {
    let d = load_map(file)?;
    let diags = foldmap::validate(&d);
    let mut text = String::new();
    if diags.is_empty() {
        let _ = writeln!(
            text,
            "valid: m = {}, n = {}, l = {}, image {}",
            d.m,
            d.n,
            d.l,
            d.image_kind.as_str()
        );
    } else {
        for diag in &diags {
            let _ = writeln!(text, "invalid: {diag}");
        }
    }
    Ok(Output {
        text,
        json: json!({ "valid": diags.is_empty(), "diagnostics": diags }),
        code: if diags.is_empty() { 0 } else { 1 },
    })
}

fn graph_text(g: &RegionGraph, minimal: &[BTreeSet<usize>]) -> String {
    let mut text = format!("graph {}\nvertices: {}\n", g.kind.title(), g.vertex_count());
    if g.edges.is_empty() {
        text.push_str("edges: none\n");
    } else {
        text.push_str("edges:\n");
        for (u, v) in &g.edges {
            let _ = writeln!(text, "  {u} -> {v}");
        }
    }
    let sets: Vec<String> = minimal.iter().map(set_text).collect();
    let _ = writeln!(text, "minimal starting sets: {}", sets.join(" "));
    text
}

fn graph(file: &Path, degree: usize, ring: Ring, dot: bool) -> Result<Output, Failure> {
    let d = load_map(file)?;
    let g = graphs::build_graph(&d, degree, ring)?;
    let minimal = graphs::minimal_starting_sets(&g)?;
    let text = if dot {
        graphs::export_dot(&g)
    } else {
        graph_text(&g, &minimal)
    };
    let mut j = json!({ "graph": g, "minimal_starting_sets": minimal });
    if dot {
        j["dot"] = Value::String(text.clone());
    }
    Ok(Output::ok(text, j))
}

fn check(file: &Path, c: &Criterion) -> Result<Output, Failure> {
    let d = load_map(file)?;
    let b = load_bundle(c.bundle.as_deref())?;
    let report = bundles::check(&d, &b, c.rule, c.start.as_ref())?;
    Ok(Output {
        text: report.to_text(),
        code: if report.applicable { 0 } else { 1 },
        json: json!(report),
    })
}

fn apply(file: &Path, fiber: &str, c: &Criterion, euler: Option<&[i64]>) -> Result<Output, Failure> {
    let d = load_map(file)?;
    let f = parse_manifold(fiber)?;
    let mut family = None;
    let result = if let Some(euler) = euler {
        if !f.same_homology(&crate::homology::sphere(1)?) {
            return Err(Failure::Usage("--euler needs the fiber sphere(1)".into()));
        }
        let r = pop::s1_family_report(&d, euler)?;
        family = Some(r.family);
        r.operation
    } else if c.bundle.is_none() && c.start.is_none() && c.rule == RuleChoice::Auto {
        pop::apply_p_operation(&d, &f, Justification::ProductBundle)?
    } else {
        let b = load_bundle(c.bundle.as_deref())?;
        let report = bundles::check(&d, &b, c.rule, c.start.as_ref())?;
        if !report.applicable {
            return Ok(Output {
                text: report.to_text(),
                code: 1,
                json: json!({ "applied": false, "report": report }),
            });
        }
        pop::apply_p_operation(&d, &f, Justification::Report { report })?
    };

    let mut text = format!(
        "# P-operation by {} applied to {}\n",
        result.fiber_used.label(),
        result.source_name.as_deref().unwrap_or("unnamed")
    );
    match &result.justification {
        Justification::Report { report } => {
            let set = report.starting_set_used.as_ref().map_or("-".into(), set_text);
            let _ = writeln!(text, "# certified by {} with starting set {set}", report.rule);
        }
        Justification::ProductBundle => text.push_str("# product bundle\n"),
        Justification::Family { family } => {
            let _ = writeln!(text, "# circle-bundle family {family}");
        }
    }
    let descriptor = foldmap::serialize_descriptor(&result.result);
    text.push_str(&descriptor);
    if let Some(fam) = &family {
        text.push('\n');
        for line in fam.to_text().lines() {
            let _ = writeln!(text, "# {line}");
        }
    }
    Ok(Output::ok(
        text,
        json!({
            "applied": true,
            "fiber": result.fiber_used.label(),
            "source": result.source_name,
            "justification": result.justification,
            "descriptor": descriptor,
            "family": family,
        }),
    ))
}

fn homology(path: &Path, alpha: Option<&[i64]>) -> Result<Output, Failure> {
    let (m, from_file) = gysin::parse_four_manifold(&read(path)?)?;
    let alpha = match alpha.map(<[i64]>::to_vec).or(from_file) {
        Some(a) => a,
        None => return Err(Failure::Usage("no Euler class: pass --alpha or set alpha in the file".into())),
    };
    let g = gysin::gysin_h_star(&m, &alpha)?;
    let simply = gysin::is_simply_connected_total_space(&m, &alpha)?;
    let constraint = gysin::theorem5_alpha_constraint(&m, &alpha)?;
    let class = if simply {
        Some(gysin::classify_five_manifold(&m, &alpha)?)
    } else {
        None
    };

    let mut text = String::new();
    for (k, h) in g.homology.iter().enumerate() {
        let _ = writeln!(text, "H_{k} = {h}");
    }
    for (k, h) in g.cohomology.iter().enumerate() {
        let _ = writeln!(text, "H^{k} = {h}");
    }
    let _ = writeln!(text, "simply connected: {simply}");
    let _ = writeln!(text, "alpha vanishes on fiber cycles: {constraint}");
    match &class {
        Some(c) => {
            let _ = writeln!(text, "total space: {}", c.kind);
        }
        None => text.push_str("total space: not simply connected\n"),
    }
    Ok(Output::ok(
        text,
        json!({
            "alpha": alpha,
            "groups": g,
            "simply_connected": simply,
            "alpha_vanishes_on_fiber_cycles": constraint,
            "classification": class,
        }),
    ))
}

fn int_params(family: &str, params: &[String], min: usize, max: usize) -> Result<Vec<i64>, Failure> {
    if params.len() < min || params.len() > max {
        let want = if min == max {
            min.to_string()
        } else {
            format!("{min} to {max}")
        };
        return Err(Failure::Usage(format!(
            "{family} takes {want} parameter(s), got {}",
            params.len()
        )));
    }
    params
        .iter()
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Failure::Usage(format!("{family}: `{p}` is not an integer")))
        })
        .collect()
}

fn report(family: &str, params: &[String]) -> Result<Output, Failure> {
    let r: FamilyReport = match family {
        "thm5" => {
            if params.len() != 2 {
                return Err(Failure::Usage(
                    "thm5 takes FACTORS ALPHA, for example `trivial,twisted 1,0,0,0`".into(),
                ));
            }
            let factors = params[0]
                .split(',')
                .map(str::parse::<S2Bundle>)
                .collect::<Result<Vec<_>, _>>()?;
            let alpha = gysin::parse_int_list(&params[1])?;
            gysin::family_theorem5(&factors, &alpha)?
        }
        "thm6" => {
            let p = int_params(family, params, 1, 2)?;
            let m = match p.get(1) {
                Some(&m) => usize::try_from(m).map_err(|_| Failure::Usage(format!("thm6: bad dimension {m}")))?,
                None => 5,
            };
            gysin::family_h1_theorem6(p[0], m)?
        }
        "thm7" => gysin::family_h1_theorem7(int_params(family, params, 1, 1)?[0]),
        "thm8" => {
            let p = int_params(family, params, 2, 2)?;
            gysin::family_h1_theorem8(p[0], p[1])?
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown family `{other}` (expected thm5, thm6, thm7 or thm8)"
            )))
        }
    };
    Ok(Output::ok(r.to_text(), json!(r)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("roundfold").chain(args.iter().copied()))
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(go(&[]).code, 2);
        assert_eq!(go(&["graph", "x", "--ring", "q"]).code, 2);
        assert_eq!(go(&["report", "thm9", "1"]).code, 2);
        assert_eq!(go(&["report", "thm8", "1"]).code, 2);
        assert_eq!(go(&["validate", "/nonexistent/file"]).code, 2);
        assert_eq!(go(&["--help"]).code, 0);
    }

    #[test]
    fn catalog_and_report() {
        let out = go(&["catalog", "connected_sum_sphere_bundles", "6", "2", "2"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("[map]\nname = connected_sum_sphere_bundles(6,2,2)\n"));
        let out = go(&["report", "thm8", "4", "6"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("Z ⊕ Z ⊕ Z/12"), "{}", out.stdout);
        let out = go(&["catalog", "spun_torus_family", "5"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.starts_with("error: invalid parameter"));
    }

    #[test]
    fn negative_parameters() {
        let out = go(&["report", "thm7", "-4"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("Z/4"));
    }

    #[test]
    fn json_error_shape() {
        let out = go(&["--json", "report", "thm5", "trivial", "1,0,0"]);
        assert_eq!(out.code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "dimension");
    }
}
