//! Residual suites over sampled curves and the machine-readable
//! verification report emitted by the CLI.

use crate::biharmonic::{bitension_residual, BiharmonicData, Branch};
use crate::curve::{fd_samples_from_grid, CurveSample};
use crate::error::GeomError;
use crate::families::{ode_residual, relation_checks};
use crate::frenet::{frenet_jets, K1_MIN};
use crate::linalg::{inner22, PseudoVec4};
use crate::model::ModelParams;
use serde::Serialize;

/// Default tolerances for externally supplied (finite-difference) samples.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub on_manifold: f64,
    pub unit_speed: f64,
    pub constant_angle: f64,
    pub system71: f64,
    pub bitension: f64,
    pub ode: f64,
    pub relations: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            on_manifold: 1e-9,
            unit_speed: 1e-6,
            constant_angle: 1e-6,
            system71: 1e-4,
            bitension: 1e-4,
            ode: 1e-4,
            relations: 1e-4,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn new(name: &str, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            max_residual,
            tolerance,
            pass: max_residual.is_finite() && max_residual <= tolerance,
            note: None,
        }
    }

    fn failed_with_note(name: &str, tolerance: f64, note: String) -> Self {
        Self {
            name: name.into(),
            max_residual: f64::NAN,
            tolerance,
            pass: false,
            note: Some(note),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportMetadata {
    pub tau: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cos2theta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<String>,
    pub n_samples: usize,
    pub s_range: [f64; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub metadata: ReportMetadata,
    pub checks: Vec<CheckResult>,
    pub overall: bool,
}

impl VerificationReport {
    fn finish(metadata: ReportMetadata, checks: Vec<CheckResult>) -> Self {
        let overall = checks.iter().all(|c| c.pass);
        Self { metadata, checks, overall }
    }
}

/// Run the residual suites on a uniform grid of positions. Derivatives are
/// reconstructed by finite differences; no closed form is assumed. The
/// helix constants (a, b) enter the ODE and relation checks only when the
/// angle and branch are supplied.
pub fn verify_samples(
    rows: &[(f64, PseudoVec4)],
    params: ModelParams,
    angle: Option<(f64, Branch)>,
    tol: &Tolerances,
) -> Result<VerificationReport, String> {
    let samples = fd_samples_from_grid(rows)?;
    let metadata = ReportMetadata {
        tau: params.tau(),
        family: None,
        cos2theta: angle.map(|(c2, _)| c2),
        branch: angle.map(|(_, br)| {
            match br {
                Branch::Plus => "plus",
                Branch::Minus => "minus",
            }
            .to_string()
        }),
        n_samples: rows.len(),
        s_range: [rows[0].0, rows[rows.len() - 1].0],
    };

    let mut checks = Vec::new();

    // on-manifold uses all supplied rows, not just stencil interiors
    let quadric = rows
        .iter()
        .map(|(_, p)| (inner22(*p, *p) - 1.0).abs())
        .fold(0.0_f64, f64::max);
    checks.push(CheckResult::new("on_manifold", quadric, tol.on_manifold));

    let data = match angle {
        Some((c2, br)) => match BiharmonicData::new(c2, br, params) {
            Ok(d) => Some(d),
            Err(e) => return Err(format!("invalid angle parameters: {e}")),
        },
        None => None,
    };

    checks.extend(sample_checks(&samples, params, data.as_ref(), tol));
    Ok(VerificationReport::finish(metadata, checks))
}

fn sample_checks(
    samples: &[CurveSample],
    params: ModelParams,
    data: Option<&BiharmonicData>,
    tol: &Tolerances,
) -> Vec<CheckResult> {
    let table = crate::connection::connection_table(params);
    let tau2 = params.tau() * params.tau();

    let mut unit_speed = 0.0_f64;
    let mut t1_vals = Vec::with_capacity(samples.len());
    let mut k1_range: Option<(f64, f64)> = None;
    let mut rk2sq = 0.0_f64;
    let mut rk2p = 0.0_f64;
    let mut bitension = 0.0_f64;
    let mut geodesic: Option<f64> = None;
    let mut not_unit_speed = false;

    for sample in samples {
        let t = crate::frenet::tangent_jets(sample, params);
        let speed = t[0].value() * t[0].value()
            + t[1].value() * t[1].value()
            + t[2].value() * t[2].value();
        unit_speed = unit_speed.max((speed - 1.0).abs());
        t1_vals.push(t[0].value());

        match frenet_jets(sample, &table, params) {
            Ok(j) => {
                let (k1, k2, b1, n1) =
                    (j.k1.value(), j.k2.value(), j.b[0].value(), j.n[0].value());
                k1_range = Some(match k1_range {
                    None => (k1, k1),
                    Some((lo, hi)) => (lo.min(k1), hi.max(k1)),
                });
                rk2sq = rk2sq
                    .max((k1 * k1 + k2 * k2 - tau2 + 4.0 * (1.0 + tau2) * b1 * b1).abs());
                rk2p = rk2p.max((j.k2.dn(1) + 4.0 * (1.0 + tau2) * n1 * b1).abs());
            }
            Err(GeomError::GeodesicPoint(k1)) => geodesic = Some(k1),
            Err(GeomError::NotUnitSpeed(_)) => not_unit_speed = true,
            Err(_) => not_unit_speed = true,
        }

        match bitension_residual(sample, params) {
            Ok(r) => bitension = bitension.max(r),
            Err(_) => not_unit_speed = true,
        }
    }

    let mut checks = vec![CheckResult::new("unit_speed", unit_speed, tol.unit_speed)];

    // constant Hopf angle: deviation from the supplied cos(theta), or the
    // spread around the inferred mean
    let (angle_residual, inferred) = match data {
        Some(d) => (
            t1_vals
                .iter()
                .map(|t1| (t1 - d.cos_theta).abs())
                .fold(0.0_f64, f64::max),
            None,
        ),
        None => {
            let mean = t1_vals.iter().sum::<f64>() / t1_vals.len().max(1) as f64;
            let var = t1_vals.iter().map(|t| (t - mean) * (t - mean)).sum::<f64>()
                / t1_vals.len().max(1) as f64;
            (var.sqrt(), Some(mean))
        }
    };
    let mut angle_check = CheckResult::new("constant_angle", angle_residual, tol.constant_angle);
    if let Some(mean) = inferred {
        angle_check.note = Some(format!("theta inferred: mean g(T,E1) = {mean}"));
    }
    checks.push(angle_check);

    if not_unit_speed {
        checks.push(CheckResult::failed_with_note(
            "system71",
            tol.system71,
            "curve is not unit speed; Frenet scalars undefined".into(),
        ));
    } else if let Some(k1) = geodesic {
        checks.push(CheckResult::failed_with_note(
            "system71",
            tol.system71,
            format!("GeodesicPoint: k1 = {k1:e} below cutoff {K1_MIN:e}"),
        ));
    } else {
        let (lo, hi) = k1_range.unwrap_or((0.0, f64::INFINITY));
        checks.push(CheckResult::new("system71_k1_constant", hi - lo, tol.system71));
        checks.push(CheckResult::new("system71_k2_square", rk2sq, tol.system71));
        checks.push(CheckResult::new("system71_k2_prime", rk2p, tol.system71));
    }

    if not_unit_speed {
        checks.push(CheckResult::failed_with_note(
            "bitension",
            tol.bitension,
            "curve is not unit speed".into(),
        ));
    } else {
        checks.push(CheckResult::new("bitension", bitension, tol.bitension));
    }

    if let Some(d) = data {
        let mut ode = 0.0_f64;
        let mut rel = 0.0_f64;
        for sample in samples {
            ode = ode.max(ode_residual(sample, d.a, d.b));
            for (_, r) in relation_checks(sample, d, params) {
                rel = rel.max(r);
            }
        }
        checks.push(CheckResult::new("ode", ode, tol.ode));
        checks.push(CheckResult::new("relations", rel, tol.relations));
    }

    checks
}
