//! Command-line front end: generate family curves, classify parameter
//! choices, verify sampled curves against the residual suites and project
//! through the Hopf map.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage/input error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sl2r_biharmonic::biharmonic::{
    ab_constants, admissible_range, classify, equal_case_theta, Branch, CaseTag, TOL_CASE,
};
use sl2r_biharmonic::curve::uniform_grid;
use sl2r_biharmonic::families::{default_anticommuting, generate, CurveSpec, GeneratedCurve};
use sl2r_biharmonic::model::{hopf_project, on_manifold, ModelParams};
use sl2r_biharmonic::verify::{verify_samples, Tolerances};
use sl2r_biharmonic::{Matrix4, PseudoVec4};
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sl2r-biharmonic",
    about = "Generate and verify the proper biharmonic curves of SL(2,R) in R^4_2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Equal,
    Greater,
    Less,
}

#[derive(Clone, Copy, ValueEnum)]
enum BranchArg {
    Plus,
    Minus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Branch {
        match b {
            BranchArg::Plus => Branch::Plus,
            BranchArg::Minus => Branch::Minus,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a (tau, cos^2 theta, branch) choice by the sign of b^2 - 4a
    Classify {
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        cos2theta: f64,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
    },
    /// Sample a closed-form biharmonic family curve to CSV or JSON
    Generate {
        #[arg(long)]
        tau: f64,
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// cos^2 theta; ignored (derived) for the equal family
        #[arg(long)]
        cos2theta: Option<f64>,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
        /// JSON file with a 4x4 conjugation matrix (array of 4 rows)
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long, default_value_t = -5.0, allow_hyphen_values = true)]
        s_min: f64,
        #[arg(long, default_value_t = 5.0, allow_hyphen_values = true)]
        s_max: f64,
        #[arg(long, default_value_t = 2001)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        /// Include the first four derivatives in the output
        #[arg(long)]
        with_derivatives: bool,
    },
    /// Verify a sampled curve (CSV with header s,x1,x2,x3,x4) against the
    /// residual suites; derivatives are taken by finite differences
    Verify {
        input: PathBuf,
        #[arg(long)]
        tau: f64,
        /// Supply cos^2 theta to pin the helix constants; otherwise the
        /// angle is inferred and the constant-based checks are skipped
        #[arg(long)]
        cos2theta: Option<f64>,
        #[arg(long, value_enum, default_value = "plus")]
        branch: BranchArg,
        #[command(flatten)]
        tols: TolArgs,
    },
    /// Project a sampled curve through the Hopf map to CSV s,y1,y2,y3
    Hopf {
        input: PathBuf,
        #[arg(long)]
        tau: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct TolArgs {
    #[arg(long)]
    tol_on_manifold: Option<f64>,
    #[arg(long)]
    tol_unit_speed: Option<f64>,
    #[arg(long)]
    tol_constant_angle: Option<f64>,
    #[arg(long)]
    tol_system71: Option<f64>,
    #[arg(long)]
    tol_bitension: Option<f64>,
    #[arg(long)]
    tol_ode: Option<f64>,
    #[arg(long)]
    tol_relations: Option<f64>,
}

impl TolArgs {
    fn build(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(v) = self.tol_on_manifold {
            t.on_manifold = v;
        }
        if let Some(v) = self.tol_unit_speed {
            t.unit_speed = v;
        }
        if let Some(v) = self.tol_constant_angle {
            t.constant_angle = v;
        }
        if let Some(v) = self.tol_system71 {
            t.system71 = v;
        }
        if let Some(v) = self.tol_bitension {
            t.bitension = v;
        }
        if let Some(v) = self.tol_ode {
            t.ode = v;
        }
        if let Some(v) = self.tol_relations {
            t.relations = v;
        }
        t
    }
}

/// A usage or input problem, mapped to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Classify { tau, cos2theta, branch } => cmd_classify(tau, cos2theta, branch.into()),
        Command::Generate {
            tau,
            family,
            cos2theta,
            branch,
            matrix,
            s_min,
            s_max,
            samples,
            out,
            format,
            with_derivatives,
        } => cmd_generate(
            tau,
            family,
            cos2theta,
            branch.into(),
            matrix,
            (s_min, s_max, samples),
            out,
            format,
            with_derivatives,
        ),
        Command::Verify { input, tau, cos2theta, branch, tols } => {
            cmd_verify(&input, tau, cos2theta, branch.into(), &tols.build())
        }
        Command::Hopf { input, tau, out } => cmd_hopf(&input, tau, out),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[derive(Serialize)]
struct ClassifyOutput {
    a: f64,
    b: f64,
    discriminant: f64,
    case: CaseTag,
    admissible: bool,
    equal_case_cos2theta: f64,
}

fn cmd_classify(tau: f64, cos2theta: f64, branch: Branch) -> Result<ExitCode, UsageError> {
    let params = ModelParams::new(tau)?;
    let (lo, _) = admissible_range(params);
    let (a, b) = ab_constants(cos2theta, branch, params)
        .map_err(|e| UsageError(format!("inadmissible: {e} (range floor {lo})")))?;
    let out = ClassifyOutput {
        a,
        b,
        discriminant: b * b - 4.0 * a,
        case: classify(a, b, TOL_CASE),
        admissible: true,
        equal_case_cos2theta: equal_case_theta(params),
    };
    println!("{}", serde_json::to_string_pretty(&out).expect("serialize"));
    Ok(ExitCode::SUCCESS)
}

fn build_curve(
    tau: f64,
    family: FamilyArg,
    cos2theta: Option<f64>,
    branch: Branch,
    matrix: Option<PathBuf>,
) -> Result<GeneratedCurve, UsageError> {
    let params = ModelParams::new(tau)?;
    let family = match family {
        FamilyArg::Equal => CaseTag::Equal,
        FamilyArg::Greater => CaseTag::Greater,
        FamilyArg::Less => CaseTag::Less,
    };
    let a_matrix = match matrix {
        Some(path) => {
            let text = fs::read_to_string(&path)
                .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<Matrix4>(&text)
                .map_err(|e| UsageError(format!("matrix file must hold 4x4 numbers: {e}")))?
        }
        None => match family {
            CaseTag::Greater => default_anticommuting(),
            _ => Matrix4::identity(),
        },
    };
    let cos2theta = match (family, cos2theta) {
        (CaseTag::Equal, _) => equal_case_theta(params),
        (_, Some(c2)) => c2,
        (_, None) => {
            return Err(UsageError(
                "--cos2theta is required for the greater and less families".into(),
            ))
        }
    };
    Ok(generate(&CurveSpec { family, tau, cos2theta, branch, a_matrix })?)
}

#[allow(clippy::too_many_arguments)]
fn cmd_generate(
    tau: f64,
    family: FamilyArg,
    cos2theta: Option<f64>,
    branch: Branch,
    matrix: Option<PathBuf>,
    grid: (f64, f64, usize),
    out: Option<PathBuf>,
    format: FormatArg,
    with_derivatives: bool,
) -> Result<ExitCode, UsageError> {
    let (s_min, s_max, samples) = grid;
    if samples < 1 || !(s_max > s_min) {
        return Err(UsageError("need samples >= 1 and s-max > s-min".into()));
    }
    let curve = build_curve(tau, family, cos2theta, branch, matrix)?;
    let rows: Vec<_> = uniform_grid(s_min, s_max, samples)
        .into_iter()
        .map(|s| curve.sample(s))
        .collect();

    let text = match format {
        FormatArg::Csv => {
            let mut text = String::new();
            let mut header = "s,x1,x2,x3,x4".to_string();
            if with_derivatives {
                for d in 1..=4 {
                    for x in 1..=4 {
                        header.push_str(&format!(",d{d}x{x}"));
                    }
                }
            }
            text.push_str(&header);
            text.push('\n');
            for r in &rows {
                let mut fields = vec![fmt_f64(r.s)];
                let jet = r.jet();
                let orders = if with_derivatives { 5 } else { 1 };
                for v in jet.iter().take(orders) {
                    for c in v.to_array() {
                        fields.push(fmt_f64(c));
                    }
                }
                text.push_str(&fields.join(","));
                text.push('\n');
            }
            text
        }
        FormatArg::Json => {
            #[derive(Serialize)]
            struct JsonRow {
                s: f64,
                gamma: [f64; 4],
                #[serde(skip_serializing_if = "Option::is_none")]
                derivatives: Option<[[f64; 4]; 4]>,
            }
            let json_rows: Vec<JsonRow> = rows
                .iter()
                .map(|r| JsonRow {
                    s: r.s,
                    gamma: r.gamma.to_array(),
                    derivatives: with_derivatives.then(|| {
                        [
                            r.d1.to_array(),
                            r.d2.to_array(),
                            r.d3.to_array(),
                            r.d4.to_array(),
                        ]
                    }),
                })
                .collect();
            let mut text = serde_json::to_string_pretty(&json_rows).expect("serialize");
            text.push('\n');
            text
        }
    };

    write_output(out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

/// Full-precision CSV field: 17 significant digits round-trip any f64.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_output(out: Option<&std::path::Path>, text: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))?;
        }
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| UsageError(format!("cannot write to stdout: {e}")))?;
        }
    }
    Ok(())
}

fn read_csv_rows(path: &std::path::Path) -> Result<Vec<(f64, PseudoVec4)>, UsageError> {
    let text = fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| UsageError("empty input file".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols.len() < 5 || cols[..5] != ["s", "x1", "x2", "x3", "x4"] {
        return Err(UsageError(
            "expected CSV header starting with s,x1,x2,x3,x4".into(),
        ));
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 5 {
            return Err(UsageError(format!("row {}: expected at least 5 fields", k + 2)));
        }
        let mut vals = [0.0_f64; 5];
        for (i, v) in vals.iter_mut().enumerate() {
            *v = fields[i]
                .trim()
                .parse()
                .map_err(|e| UsageError(format!("row {}: bad number {:?}: {e}", k + 2, fields[i])))?;
        }
        rows.push((vals[0], PseudoVec4::new(vals[1], vals[2], vals[3], vals[4])));
    }
    if rows.is_empty() {
        return Err(UsageError("no data rows in input".into()));
    }
    Ok(rows)
}

fn cmd_verify(
    input: &std::path::Path,
    tau: f64,
    cos2theta: Option<f64>,
    branch: Branch,
    tols: &Tolerances,
) -> Result<ExitCode, UsageError> {
    let params = ModelParams::new(tau)?;
    let rows = read_csv_rows(input)?;
    let report = verify_samples(&rows, params, cos2theta.map(|c2| (c2, branch)), tols)
        .map_err(UsageError)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("serialize"));
    Ok(if report.overall {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn cmd_hopf(
    input: &std::path::Path,
    tau: f64,
    out: Option<PathBuf>,
) -> Result<ExitCode, UsageError> {
    let params = ModelParams::new(tau)?;
    let rows = read_csv_rows(input)?;
    let mut text = String::from("s,y1,y2,y3\n");
    let mut max_quadric = 0.0_f64;
    for (s, p) in &rows {
        if !on_manifold(*p, 1e-6) {
            return Err(UsageError(format!(
                "row at s = {s} is off the manifold; cannot project"
            )));
        }
        let [y1, y2, y3] = hopf_project(*p, params)?;
        max_quadric = max_quadric.max((y1 * y1 + y2 * y2 - y3 * y3 + 1.0 / tau).abs());
        text.push_str(&format!(
            "{},{},{},{}\n",
            fmt_f64(*s),
            fmt_f64(y1),
            fmt_f64(y2),
            fmt_f64(y3)
        ));
    }
    write_output(out.as_deref(), &text)?;
    eprintln!("max hyperbolic-quadric residual: {max_quadric:e}");
    Ok(ExitCode::SUCCESS)
}
