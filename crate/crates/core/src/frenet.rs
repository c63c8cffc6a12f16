//! The Frenet frame {T, N, B} of a unit-speed curve, its geodesic curvature
//! k1 and torsion k2, both from sampled jets (any curve) and in closed form
//! for the constant-angle helices.

use crate::connection::ConnectionTable;
use crate::curve::CurveSample;
use crate::error::GeomError;
use crate::jet::Jet;
use crate::linalg::{inner22, Matrix4, PseudoVec4, ZERO4};
use crate::model::{frame_matrix_x, FrameComponents, ModelParams};

/// Below this geodesic curvature the normal direction is numerically
/// meaningless and the point is treated as geodesic.
pub const K1_MIN: f64 = 1e-7;
/// Tolerance on |g_tau(T,T) - 1| for curves claimed unit speed.
pub const UNIT_SPEED_TOL: f64 = 1e-6;

/// A vector-valued jet: ambient derivatives of a curve-valued function.
#[derive(Debug, Clone, Copy)]
pub(crate) struct VecJet {
    d: [PseudoVec4; 5],
    ord: usize,
}

impl VecJet {
    fn new(d: [PseudoVec4; 5], ord: usize) -> Self {
        Self { d, ord }
    }

    fn apply(&self, m: &Matrix4) -> VecJet {
        let mut d = [ZERO4; 5];
        for n in 0..=self.ord {
            d[n] = m.mul_vec(self.d[n]);
        }
        VecJet::new(d, self.ord)
    }

    /// <a(s), b(s)> as a scalar jet, by the Leibniz rule.
    fn inner(&self, o: &VecJet) -> Jet {
        const BINOM: [[f64; 5]; 5] = [
            [1.0, 0.0, 0.0, 0.0, 0.0],
            [1.0, 1.0, 0.0, 0.0, 0.0],
            [1.0, 2.0, 1.0, 0.0, 0.0],
            [1.0, 3.0, 3.0, 1.0, 0.0],
            [1.0, 4.0, 6.0, 4.0, 1.0],
        ];
        let ord = self.ord.min(o.ord);
        let mut d = [0.0; 5];
        for (n, e) in d.iter_mut().enumerate().take(ord + 1) {
            for k in 0..=n {
                *e += BINOM[n][k] * inner22(self.d[k], o.d[n - k]);
            }
        }
        Jet::new(d, ord)
    }
}

/// Frame components of the unit tangent as jets of order 3:
/// T_i(s) = g_tau(gamma'(s), E_i(gamma(s))), differentiated through the
/// linear frame fields. Uses ambient derivatives to 4th order.
pub(crate) fn tangent_jets(sample: &CurveSample, params: ModelParams) -> [Jet; 3] {
    let tau = params.tau();
    let amb = sample.jet();
    let g = VecJet::new(amb, 4);
    let gp = VecJet::new([amb[1], amb[2], amb[3], amb[4], ZERO4], 3);
    let j1g = g.apply(&Matrix4::j1());
    let coef = 1.0 + tau * tau;
    let gp_x1 = gp.inner(&j1g);
    let mut t = [Jet::constant(0.0); 3];
    for (i, ti) in t.iter_mut().enumerate() {
        let ki = frame_matrix_x(i + 1);
        let mut eig = g.apply(&ki);
        if i == 0 {
            // E_1 = -X_1 / tau
            eig = eig.apply(&Matrix4::diagonal([-1.0 / tau; 4]));
        }
        let direct = gp.inner(&eig).scale(-1.0);
        let vertical = gp_x1.mul(&eig.inner(&j1g)).scale(coef);
        *ti = direct.add(&vertical);
    }
    t
}

/// (nabla_T V)_k as jets, one order below the inputs:
/// V_k' + sum_{i,j} T_i V_j gamma[i][j][k].
pub(crate) fn covd_jets(table: &ConnectionTable, t: &[Jet; 3], v: &[Jet; 3]) -> [Jet; 3] {
    let mut out = [Jet::constant(0.0); 3];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = v[k].deriv();
        for (i, ti) in t.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let g = table.entry(i + 1, j + 1, k + 1);
                if g != 0.0 {
                    acc = acc.add(&ti.mul(vj).scale(g));
                }
            }
        }
        *o = acc;
    }
    out
}

pub(crate) fn values(j: &[Jet; 3]) -> FrameComponents {
    FrameComponents::new(j[0].value(), j[1].value(), j[2].value())
}

fn cross_jets(a: &[Jet; 3], b: &[Jet; 3]) -> [Jet; 3] {
    [
        a[1].mul(&b[2]).sub(&a[2].mul(&b[1])),
        a[2].mul(&b[0]).sub(&a[0].mul(&b[2])),
        a[0].mul(&b[1]).sub(&a[1].mul(&b[0])),
    ]
}

/// The full Frenet apparatus along a curve, with enough derivative orders
/// for the biharmonicity checks.
pub(crate) struct FrenetJets {
    pub t: [Jet; 3],
    /// nabla_T T
    pub w1: [Jet; 3],
    pub k1: Jet,
    pub n: [Jet; 3],
    pub b: [Jet; 3],
    pub k2: Jet,
}

pub(crate) fn frenet_jets(
    sample: &CurveSample,
    table: &ConnectionTable,
    params: ModelParams,
) -> Result<FrenetJets, GeomError> {
    let t = tangent_jets(sample, params);
    let speed = values(&t).dot(values(&t));
    if (speed - 1.0).abs() > UNIT_SPEED_TOL {
        return Err(GeomError::NotUnitSpeed(speed));
    }
    let w1 = covd_jets(table, &t, &t);
    let k1sq = w1[0]
        .mul(&w1[0])
        .add(&w1[1].mul(&w1[1]))
        .add(&w1[2].mul(&w1[2]));
    let k1_val = k1sq.value().max(0.0).sqrt();
    if k1_val < K1_MIN {
        return Err(GeomError::GeodesicPoint(k1_val));
    }
    let k1 = k1sq.sqrt();
    let inv_k1 = k1.recip();
    let n = [w1[0].mul(&inv_k1), w1[1].mul(&inv_k1), w1[2].mul(&inv_k1)];
    let b = cross_jets(&t, &n);
    let dn = covd_jets(table, &t, &n);
    let k2 = dn[0]
        .mul(&b[0])
        .add(&dn[1].mul(&b[1]))
        .add(&dn[2].mul(&b[2]));
    Ok(FrenetJets { t, w1, k1, n, b, k2 })
}

/// Frenet data at one point of a unit-speed curve.
#[derive(Debug, Clone, Copy)]
pub struct FrenetData {
    pub t: FrameComponents,
    pub n: FrameComponents,
    pub b: FrameComponents,
    pub k1: f64,
    pub k2: f64,
}

/// Frenet frame and scalars at a sample with analytic derivatives.
pub fn frenet_at(sample: &CurveSample, params: ModelParams) -> Result<FrenetData, GeomError> {
    let table = crate::connection::connection_table(params);
    let j = frenet_jets(sample, &table, params)?;
    Ok(FrenetData {
        t: values(&j.t),
        n: values(&j.n),
        b: values(&j.b),
        k1: j.k1.value(),
        k2: j.k2.value(),
    })
}

/// Frenet data from positions only, by finite differences with step `h`.
pub fn frenet_at_fd<F: Fn(f64) -> PseudoVec4>(
    f: &F,
    s: f64,
    params: ModelParams,
    h: f64,
) -> Result<FrenetData, GeomError> {
    let sample = crate::curve::fd_sample(f, s, h);
    frenet_at(&sample, params)
}

/// Closed-form Frenet scalars of the constant-angle helix with tangent
/// T = cos(theta) E1 + sin(theta)(sin(beta) E2 + cos(beta) E3), beta' = b.
/// The sign convention fixes k1 >= 0 and B_1 = -sin(theta).
pub fn analytic_frenet(theta: f64, b: f64, params: ModelParams) -> (f64, f64, f64, f64) {
    let tau = params.tau();
    let f = b + 2.0 * (1.0 + tau * tau) * theta.cos() / tau;
    let k1 = (theta.sin() * f).abs();
    let k2 = tau - theta.cos() * f;
    (k1, k2, 0.0, -theta.sin())
}

/// g_tau-norms of the three Frenet equation residuals at a sample:
/// |nabla_T T - k1 N|, |nabla_T N + k1 T - k2 B|, |nabla_T B + k2 N|.
pub fn frenet_residuals(
    sample: &CurveSample,
    params: ModelParams,
) -> Result<(f64, f64, f64), GeomError> {
    let table = crate::connection::connection_table(params);
    let j = frenet_jets(sample, &table, params)?;
    let (t, n, b) = (values(&j.t), values(&j.n), values(&j.b));
    let (k1, k2) = (j.k1.value(), j.k2.value());
    let r1 = values(&j.w1).sub(n.scale(k1)).norm();
    let dn = values(&covd_jets(&table, &j.t, &j.n));
    let r2 = dn.add(t.scale(k1)).sub(b.scale(k2)).norm();
    let db = values(&covd_jets(&table, &j.t, &j.b));
    let r3 = db.add(n.scale(k2)).norm();
    Ok((r1, r2, r3))
}

/// B_1 and its derivative at a sample, for the auxiliary identity
/// B_1' = (tau - k2) N_1.
pub fn b1_and_derivative(
    sample: &CurveSample,
    params: ModelParams,
) -> Result<(f64, f64, f64), GeomError> {
    let table = crate::connection::connection_table(params);
    let j = frenet_jets(sample, &table, params)?;
    Ok((j.b[0].value(), j.b[0].dn(1), j.n[0].value()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{decompose, on_manifold};

    #[test]
    fn analytic_frenet_reference_values() {
        let params = ModelParams::new(1.0).unwrap();
        let cos2 = 9.0 / 10.0_f64;
        let theta = cos2.sqrt().acos();
        let b = -8.0 / 10f64.sqrt();
        let (k1, k2, n1, b1) = analytic_frenet(theta, b, params);
        assert!((k1 - 0.4).abs() <= 1e-12, "k1 = {k1}");
        assert!((k2 + 0.2).abs() <= 1e-12, "k2 = {k2}");
        assert_eq!(n1, 0.0);
        assert!((b1 + theta.sin()).abs() <= 1e-15);
    }

    #[test]
    fn tangent_jets_match_decompose() {
        // hopf fiber rotation: gamma(t) = cos(t/tau) p - sin(t/tau) J1 p
        let params = ModelParams::new(2.0).unwrap();
        let tau = 2.0;
        let p = PseudoVec4::new(1.2, 0.3, 0.5, (1.2f64 * 1.2 + 0.09 - 0.25 - 1.0).sqrt());
        assert!(on_manifold(p, 1e-12));
        let w = 1.0 / tau;
        let f = |t: f64| {
            let (c, s) = ((w * t).cos(), (w * t).sin());
            let jp = crate::linalg::j1_apply(p);
            let g = p.scale(c) - jp.scale(s);
            let d1 = (p.scale(-s) - jp.scale(c)).scale(w);
            let d2 = (p.scale(-c) + jp.scale(s)).scale(w * w);
            let d3 = (p.scale(s) + jp.scale(c)).scale(w * w * w);
            let d4 = (p.scale(c) - jp.scale(s)).scale(w * w * w * w);
            CurveSample { s: t, gamma: g, d1, d2, d3, d4 }
        };
        let sample = f(0.8);
        let t = tangent_jets(&sample, params);
        let direct = decompose(sample.gamma, sample.d1, params).unwrap();
        assert!((t[0].value() - direct.c1).abs() <= 1e-12);
        assert!((t[1].value() - direct.c2).abs() <= 1e-12);
        assert!((t[2].value() - direct.c3).abs() <= 1e-12);
        // the fiber curve is the integral curve of E1: T = (1,0,0)
        assert!((t[0].value() - 1.0).abs() <= 1e-12);
        assert!(t[1].value().abs() <= 1e-12);
        assert!(t[2].value().abs() <= 1e-12);
        // and T is constant, so all component derivatives vanish
        for ti in &t {
            for n in 1..=3 {
                assert!(ti.dn(n).abs() <= 1e-10, "dT = {}", ti.dn(n));
            }
        }
    }

    #[test]
    fn fiber_curve_is_geodesic() {
        let params = ModelParams::new(1.0).unwrap();
        let p = PseudoVec4::new(1.0, 0.0, 0.0, 0.0);
        let f = crate::families::hopf_fiber_curve(p, params);
        let sample = crate::curve::SampledCurve::sample(&f, 0.3);
        match frenet_at(&sample, params) {
            Err(GeomError::GeodesicPoint(_)) => {}
            other => panic!("expected GeodesicPoint, got {other:?}"),
        }
    }
}
