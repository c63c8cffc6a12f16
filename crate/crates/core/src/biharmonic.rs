//! The biharmonicity criteria: the three-scalar system on (k1, k2, B1, N1),
//! the bitension residual in frame components, the constants a and b with
//! branch handling, the admissible angle range and case classification.

use crate::connection::{connection_table, curvature_apply};
use crate::curve::{CurveSample, SampledCurve};
use crate::error::GeomError;
use crate::frenet::{covd_jets, frenet_jets, tangent_jets, values, UNIT_SPEED_TOL};
use crate::model::ModelParams;
use serde::{Deserialize, Serialize};

/// The sign choice in the formula for b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// Which of the three cases the discriminant b^2 - 4a selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseTag {
    Equal,
    Greater,
    Less,
}

/// Default tolerance on b^2 - 4a when mapping the sign to a case.
pub const TOL_CASE: f64 = 1e-9;

/// Admissible range [lo, 1) for cos^2(theta): lo = 4(1+tau^2)/(4+5tau^2).
pub fn admissible_range(params: ModelParams) -> (f64, f64) {
    let t2 = params.tau() * params.tau();
    (4.0 * (1.0 + t2) / (4.0 + 5.0 * t2), 1.0)
}

/// The constants a and b for a given admissible cos^2(theta) and branch;
/// cos(theta) is taken positive.
pub fn ab_constants(
    cos2theta: f64,
    branch: Branch,
    params: ModelParams,
) -> Result<(f64, f64), GeomError> {
    let (lo, hi) = admissible_range(params);
    if !(cos2theta >= lo && cos2theta < hi) {
        return Err(GeomError::InadmissibleAngle(cos2theta, lo));
    }
    let tau = params.tau();
    let t2 = tau * tau;
    let cos_theta = cos2theta.sqrt();
    let radicand = (4.0 + 5.0 * t2) * cos2theta - 4.0 * (1.0 + t2);
    // >= 0 by admissibility; clamp roundoff at the boundary
    let root = radicand.max(0.0).sqrt();
    let b = -(2.0 + t2) * cos_theta / tau
        + match branch {
            Branch::Plus => root,
            Branch::Minus => -root,
        };
    let cos_2theta = 2.0 * cos2theta - 1.0;
    let a = 0.5 * (-1.0 / t2 + 1.0 - (1.0 + 1.0 / t2) * cos_2theta) - cos_theta * b / tau;
    Ok((a, b))
}

/// Sign of b^2 - 4a, with |b^2 - 4a| <= tol_case mapped to Equal.
pub fn classify(a: f64, b: f64, tol_case: f64) -> CaseTag {
    let disc = b * b - 4.0 * a;
    if disc.abs() <= tol_case {
        CaseTag::Equal
    } else if disc > 0.0 {
        CaseTag::Greater
    } else {
        CaseTag::Less
    }
}

/// The unique admissible cos^2(theta) with b^2 = 4a on the Plus branch:
/// (2+tau^2)^2 / (4+5tau^2+tau^4).
pub fn equal_case_theta(params: ModelParams) -> f64 {
    let t2 = params.tau() * params.tau();
    (2.0 + t2) * (2.0 + t2) / (4.0 + 5.0 * t2 + t2 * t2)
}

/// Angle, branch, constants and derived scalars of a biharmonic helix.
#[derive(Debug, Clone, Copy)]
pub struct BiharmonicData {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub branch: Branch,
    pub a: f64,
    pub b: f64,
    pub case: CaseTag,
    pub btilde: f64,
    pub dconst: f64,
    pub erel: f64,
    pub iconst: f64,
}

impl BiharmonicData {
    pub fn new(
        cos2theta: f64,
        branch: Branch,
        params: ModelParams,
    ) -> Result<Self, GeomError> {
        let (a, b) = ab_constants(cos2theta, branch, params)?;
        let tau = params.tau();
        let cos_theta = cos2theta.sqrt();
        let sin_theta = (1.0 - cos2theta).max(0.0).sqrt();
        let btilde = (1.0 + 1.0 / (tau * tau)) * cos2theta - 1.0;
        let dconst = a * a + b * b * btilde + 2.0 * a * b * cos_theta / tau;
        let erel =
            a * (a - 2.0 * b * b) * btilde + b * b * dconst - 2.0 * a * a * b * cos_theta / tau;
        let iconst = -a * cos_theta / tau - b * btilde;
        Ok(Self {
            cos_theta,
            sin_theta,
            branch,
            a,
            b,
            case: classify(a, b, TOL_CASE),
            btilde,
            dconst,
            erel,
            iconst,
        })
    }

    pub fn cos2theta(&self) -> f64 {
        self.cos_theta * self.cos_theta
    }
}

/// The derived scalars (Btilde, D, E, I) of a data set.
pub fn scalar_constants(data: &BiharmonicData) -> (f64, f64, f64, f64) {
    (data.btilde, data.dconst, data.erel, data.iconst)
}

/// Max residuals of the three-scalar biharmonicity system over a grid:
/// variation of k1, |k1^2 + k2^2 - tau^2 + 4(1+tau^2) B1^2| and
/// |k2' + 4(1+tau^2) N1 B1|.
pub fn system71_residuals<C: SampledCurve>(
    curve: &C,
    s_grid: &[f64],
    params: ModelParams,
) -> Result<(f64, f64, f64), GeomError> {
    let table = connection_table(params);
    let tau2 = params.tau() * params.tau();
    let mut k1_min = f64::INFINITY;
    let mut k1_max = f64::NEG_INFINITY;
    let mut rk2sq = 0.0_f64;
    let mut rk2p = 0.0_f64;
    for &s in s_grid {
        let sample = curve.sample(s);
        let j = frenet_jets(&sample, &table, params)?;
        let k1 = j.k1.value();
        let k2 = j.k2.value();
        let b1 = j.b[0].value();
        let n1 = j.n[0].value();
        k1_min = k1_min.min(k1);
        k1_max = k1_max.max(k1);
        rk2sq = rk2sq.max((k1 * k1 + k2 * k2 - tau2 + 4.0 * (1.0 + tau2) * b1 * b1).abs());
        rk2p = rk2p.max((j.k2.dn(1) + 4.0 * (1.0 + tau2) * n1 * b1).abs());
    }
    Ok((k1_max - k1_min, rk2sq, rk2p))
}

/// g_tau-norm of the bitension field (nabla_T)^3 T - R(T, nabla_T T) T at a
/// sample, in frame components. Defined for geodesics too (both terms vanish).
pub fn bitension_residual(sample: &CurveSample, params: ModelParams) -> Result<f64, GeomError> {
    let table = connection_table(params);
    let t = tangent_jets(sample, params);
    let speed = values(&t).dot(values(&t));
    if (speed - 1.0).abs() > UNIT_SPEED_TOL {
        return Err(GeomError::NotUnitSpeed(speed));
    }
    let w1 = covd_jets(&table, &t, &t);
    let w2 = covd_jets(&table, &t, &w1);
    let w3 = covd_jets(&table, &t, &w2);
    let r = curvature_apply(values(&t), values(&w1), values(&t), &table);
    Ok(values(&w3).sub(r).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(tau: f64) -> ModelParams {
        ModelParams::new(tau).unwrap()
    }

    #[test]
    fn admissible_range_values() {
        let (lo, hi) = admissible_range(params(1.0));
        assert!((lo - 8.0 / 9.0).abs() <= 1e-15 && hi == 1.0);
        let (lo, _) = admissible_range(params(2.0));
        assert!((lo - 5.0 / 6.0).abs() <= 1e-15);
        for tau in [0.1, 0.5, 1.0, 2.0, 10.0] {
            let (lo, _) = admissible_range(params(tau));
            assert!(lo < 1.0);
        }
    }

    #[test]
    fn ab_reference_values() {
        let (a, b) = ab_constants(0.9, Branch::Plus, params(1.0)).unwrap();
        assert!((a - 1.6).abs() <= 1e-12, "a = {a}");
        assert!((b + 8.0 / 10f64.sqrt()).abs() <= 1e-12, "b = {b}");
        assert!((b * b - 4.0 * a).abs() <= 1e-12);

        let (a, b) = ab_constants(8.0 / 9.0, Branch::Plus, params(1.0)).unwrap();
        let (a2, b2) = ab_constants(8.0 / 9.0, Branch::Minus, params(1.0)).unwrap();
        assert!((b + 2.0 * 2f64.sqrt()).abs() <= 1e-12);
        assert!((b2 - b).abs() <= 1e-12);
        assert!((a - 17.0 / 9.0).abs() <= 1e-12 && (a2 - a).abs() <= 1e-12);

        assert!(matches!(
            ab_constants(0.5, Branch::Plus, params(1.0)),
            Err(GeomError::InadmissibleAngle(..))
        ));
    }

    #[test]
    fn classify_reference_values() {
        assert_eq!(classify(1.6, -8.0 / 10f64.sqrt(), TOL_CASE), CaseTag::Equal);
        assert_eq!(
            classify(17.0 / 9.0, -2.0 * 2f64.sqrt(), TOL_CASE),
            CaseTag::Greater
        );
        let (a, b) = ab_constants(0.95, Branch::Plus, params(1.0)).unwrap();
        assert!((a - 1.2271577).abs() <= 1e-5);
        assert!((b + 2.1824185).abs() <= 1e-5);
        assert_eq!(classify(a, b, TOL_CASE), CaseTag::Less);
    }

    #[test]
    fn equal_case_theta_values() {
        assert!((equal_case_theta(params(1.0)) - 0.9).abs() <= 1e-15);
        assert!((equal_case_theta(params(2.0)) - 0.9).abs() <= 1e-15);
        for tau in [0.5, 1.0, 2.0] {
            let p = params(tau);
            let c2 = equal_case_theta(p);
            let (lo, _) = admissible_range(p);
            assert!(c2 >= lo && c2 < 1.0);
            let (a, b) = ab_constants(c2, Branch::Plus, p).unwrap();
            assert!((b * b - 4.0 * a).abs() <= 1e-12, "tau={tau}");
        }
    }

    #[test]
    fn btilde_values() {
        let d = BiharmonicData::new(0.9, Branch::Plus, params(1.0)).unwrap();
        assert!((d.btilde - 0.8).abs() <= 1e-14);
        let d = BiharmonicData::new(8.0 / 9.0, Branch::Plus, params(1.0)).unwrap();
        assert!((d.btilde - 7.0 / 9.0).abs() <= 1e-14);
        // Btilde vanishes exactly at cos^2 = tau^2/(1+tau^2), below the
        // admissible floor, so check the formula directly.
        for tau in [0.5, 1.0, 2.0] {
            let t2: f64 = tau * tau;
            let c2 = t2 / (1.0 + t2);
            assert!(((1.0 + 1.0 / t2) * c2 - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn stored_case_matches_classify() {
        for tau in [0.5, 1.0, 2.0] {
            let p = params(tau);
            let (lo, _) = admissible_range(p);
            for k in 0..20 {
                let c2 = lo + (1.0 - lo) * (k as f64 + 0.5) / 20.0;
                for branch in [Branch::Plus, Branch::Minus] {
                    let d = BiharmonicData::new(c2, branch, p).unwrap();
                    assert!(d.a.is_finite() && d.b.is_finite());
                    assert_eq!(d.case, classify(d.a, d.b, 1e-10));
                }
            }
        }
    }
}
