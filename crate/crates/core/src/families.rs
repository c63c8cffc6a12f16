//! Closed-form generators for the three proper-biharmonic families, the
//! 4th-order ODE residual, the first-order helix system with an RK4
//! integrator and the scalar relation checks.

use crate::biharmonic::{equal_case_theta, BiharmonicData, Branch, CaseTag};
use crate::curve::CurveSample;
use crate::error::GeomError;
use crate::jet::Jet;
use crate::linalg::{
    inner22, j1_apply, o24_membership, J1Commutation, j1_commutation, Matrix4, PseudoVec4,
    MEMBERSHIP_TOL, ZERO4,
};
use crate::model::{decompose, on_manifold, ModelParams};

/// Degenerate guard for the oscillatory family: below this discriminant the
/// two frequencies collide.
const MIN_DISC: f64 = 1e-9;
/// Degenerate guard for the hyperbolic family: below this mu the constant
/// w14 blows up.
const MIN_MU: f64 = 1e-7;

/// Parameters selecting one member of a family.
#[derive(Debug, Clone, Copy)]
pub struct CurveSpec {
    pub family: CaseTag,
    pub tau: f64,
    pub cos2theta: f64,
    pub branch: Branch,
    pub a_matrix: Matrix4,
}

#[derive(Debug, Clone, Copy)]
enum CurveKind {
    Equal { sqrt_a: f64, g14: f64 },
    Greater { alpha1: f64, alpha2: f64, c11: f64, c33: f64 },
    Less { half_b: f64, mu: f64, w14: f64 },
}

/// A closed-form family curve with analytic derivatives to 4th order.
#[derive(Debug, Clone, Copy)]
pub struct GeneratedCurve {
    pub family: CaseTag,
    pub params: ModelParams,
    pub data: BiharmonicData,
    pub a_matrix: Matrix4,
    kind: CurveKind,
}

fn coord_values(j: &Jet) -> [f64; 5] {
    [j.value(), j.dn(1), j.dn(2), j.dn(3), j.dn(4)]
}

fn assemble(s: f64, coords: [Jet; 4], a: &Matrix4) -> CurveSample {
    let vals: Vec<[f64; 5]> = coords.iter().map(coord_values).collect();
    let mut d = [ZERO4; 5];
    for (n, e) in d.iter_mut().enumerate() {
        *e = a.mul_vec(PseudoVec4::new(vals[0][n], vals[1][n], vals[2][n], vals[3][n]));
    }
    CurveSample {
        s,
        gamma: d[0],
        d1: d[1],
        d2: d[2],
        d3: d[3],
        d4: d[4],
    }
}

impl GeneratedCurve {
    pub fn sample(&self, s: f64) -> CurveSample {
        let coords = match self.kind {
            CurveKind::Equal { sqrt_a, g14 } => {
                let c = Jet::cos_w(sqrt_a, s);
                let sn = Jet::sin_w(sqrt_a, s);
                let gs = Jet::var(s).scale(g14);
                [
                    c.add(&gs.mul(&sn)),
                    sn.scale(-1.0).add(&gs.mul(&c)),
                    gs.mul(&c).scale(-1.0),
                    gs.mul(&sn),
                ]
            }
            CurveKind::Greater { alpha1, alpha2, c11, c33 } => {
                let r33 = c33.sqrt();
                let r11 = (-c11).sqrt();
                [
                    Jet::cos_w(alpha2, s).scale(r33),
                    Jet::sin_w(alpha2, s).scale(r33),
                    Jet::cos_w(alpha1, s).scale(r11),
                    Jet::sin_w(alpha1, s).scale(r11),
                ]
            }
            CurveKind::Less { half_b, mu, w14 } => {
                let cb = Jet::cos_w(half_b, s);
                let sb = Jet::sin_w(half_b, s);
                let ch = Jet::cosh_w(mu, s);
                let sh = Jet::sinh_w(mu, s);
                let q = (1.0 + w14 * w14).sqrt();
                [
                    cb.mul(&ch).add(&sb.mul(&sh).scale(w14)),
                    sb.mul(&ch).sub(&cb.mul(&sh).scale(w14)),
                    cb.mul(&sh).scale(q),
                    sb.mul(&sh).scale(q),
                ]
            }
        };
        assemble(s, coords, &self.a_matrix)
    }

    /// Euclidean norm of gamma'''' + (b^2 - 2a) gamma'' + a^2 gamma at s.
    pub fn ode_residual(&self, s: f64) -> f64 {
        ode_residual(&self.sample(s), self.data.a, self.data.b)
    }

    pub fn spec(&self) -> CurveSpec {
        CurveSpec {
            family: self.family,
            tau: self.params.tau(),
            cos2theta: self.data.cos2theta(),
            branch: self.data.branch,
            a_matrix: self.a_matrix,
        }
    }
}

impl crate::curve::SampledCurve for GeneratedCurve {
    fn sample(&self, s: f64) -> CurveSample {
        GeneratedCurve::sample(self, s)
    }
}

/// Default conjugation matrix for the oscillatory (Greater) family; the
/// identity commutes with J1, so an anticommuting sign flip is needed.
pub fn default_anticommuting() -> Matrix4 {
    Matrix4::diagonal([1.0, -1.0, 1.0, -1.0])
}

fn check_conjugation(a: &Matrix4, want: J1Commutation) -> Result<(), GeomError> {
    if !o24_membership(a, MEMBERSHIP_TOL) {
        return Err(GeomError::BadConjugation(
            "matrix is not in O_2(4): A^t eps A != eps".into(),
        ));
    }
    let got = j1_commutation(a, MEMBERSHIP_TOL);
    if got != want {
        let verb = match want {
            J1Commutation::Commutes => "commute",
            J1Commutation::Anticommutes => "anticommute",
            J1Commutation::Neither => unreachable!(),
        };
        return Err(GeomError::BadConjugation(format!(
            "matrix must {verb} with J1, found {got:?}"
        )));
    }
    Ok(())
}

/// The b^2 = 4a family: gamma(s) = A (cos + g14 s sin, -sin + g14 s cos,
/// -g14 s cos, g14 s sin) with frequency sqrt(a). A must commute with J1.
pub fn gen_equal(params: ModelParams, a_matrix: Matrix4) -> Result<GeneratedCurve, GeomError> {
    check_conjugation(&a_matrix, J1Commutation::Commutes)?;
    let data = BiharmonicData::new(equal_case_theta(params), Branch::Plus, params)?;
    let tau = params.tau();
    let t2 = tau * tau;
    let g14 = tau / (4.0 + 5.0 * t2 + t2 * t2).sqrt();
    Ok(GeneratedCurve {
        family: CaseTag::Equal,
        params,
        data,
        a_matrix,
        kind: CurveKind::Equal {
            sqrt_a: data.a.sqrt(),
            g14,
        },
    })
}

/// The b^2 > 4a family with two frequencies alpha_1 > alpha_2. A must
/// anticommute with J1.
pub fn gen_greater(
    params: ModelParams,
    cos2theta: f64,
    branch: Branch,
    a_matrix: Matrix4,
) -> Result<GeneratedCurve, GeomError> {
    check_conjugation(&a_matrix, J1Commutation::Anticommutes)?;
    let data = BiharmonicData::new(cos2theta, branch, params)?;
    let (a, b) = (data.a, data.b);
    let disc = b * b - 4.0 * a;
    if disc < MIN_DISC {
        return Err(GeomError::WrongCase(format!(
            "b^2 - 4a = {disc:e} is not positive; the frequencies degenerate"
        )));
    }
    let root = (b * b * disc).sqrt();
    let alpha1 = ((b * b - 2.0 * a + root) / 2.0).sqrt();
    let alpha2 = ((b * b - 2.0 * a - root) / 2.0).max(0.0).sqrt();
    let denom = alpha1 * alpha1 - alpha2 * alpha2;
    let c11 = (data.btilde - alpha2 * alpha2) / denom;
    let c33 = (-data.btilde + alpha1 * alpha1) / denom;
    if c11 >= 0.0 || c33 <= 0.0 {
        return Err(GeomError::SignViolation(format!(
            "need C11 < 0 < C33, got C11 = {c11}, C33 = {c33}"
        )));
    }
    Ok(GeneratedCurve {
        family: CaseTag::Greater,
        params,
        data,
        a_matrix,
        kind: CurveKind::Greater { alpha1, alpha2, c11, c33 },
    })
}

/// The b^2 < 4a family mixing trigonometric and hyperbolic factors. A must
/// commute with J1; b is the Plus branch.
pub fn gen_less(
    params: ModelParams,
    cos2theta: f64,
    a_matrix: Matrix4,
) -> Result<GeneratedCurve, GeomError> {
    check_conjugation(&a_matrix, J1Commutation::Commutes)?;
    let data = BiharmonicData::new(cos2theta, Branch::Plus, params)?;
    let (a, b) = (data.a, data.b);
    let four_a_minus_b2 = 4.0 * a - b * b;
    if four_a_minus_b2 <= 0.0 {
        return Err(GeomError::WrongCase(format!(
            "b^2 - 4a = {:e} is not negative",
            -four_a_minus_b2
        )));
    }
    let mu = four_a_minus_b2.sqrt() / 2.0;
    if mu < MIN_MU {
        return Err(GeomError::WrongCase(format!(
            "mu = {mu:e} is degenerate; use the equal-case family"
        )));
    }
    let tau = params.tau();
    let w14 = (b * tau + 2.0 * data.cos_theta) / (2.0 * tau * mu);
    Ok(GeneratedCurve {
        family: CaseTag::Less,
        params,
        data,
        a_matrix,
        kind: CurveKind::Less { half_b: b / 2.0, mu, w14 },
    })
}

/// Build the family selected by a full spec.
pub fn generate(spec: &CurveSpec) -> Result<GeneratedCurve, GeomError> {
    let params = ModelParams::new(spec.tau)?;
    match spec.family {
        CaseTag::Equal => gen_equal(params, spec.a_matrix),
        CaseTag::Greater => gen_greater(params, spec.cos2theta, spec.branch, spec.a_matrix),
        CaseTag::Less => gen_less(params, spec.cos2theta, spec.a_matrix),
    }
}

/// The constants (alpha1, alpha2, C11, C33) of an oscillatory-family curve.
pub fn greater_constants(curve: &GeneratedCurve) -> Option<(f64, f64, f64, f64)> {
    match curve.kind {
        CurveKind::Greater { alpha1, alpha2, c11, c33 } => Some((alpha1, alpha2, c11, c33)),
        _ => None,
    }
}

/// The constants (mu, w14) of a hyperbolic-family curve.
pub fn less_constants(curve: &GeneratedCurve) -> Option<(f64, f64)> {
    match curve.kind {
        CurveKind::Less { mu, w14, .. } => Some((mu, w14)),
        _ => None,
    }
}

/// The constant g14 of an equal-case curve.
pub fn equal_constants(curve: &GeneratedCurve) -> Option<f64> {
    match curve.kind {
        CurveKind::Equal { g14, .. } => Some(g14),
        _ => None,
    }
}

/// Euclidean norm of gamma'''' + (b^2 - 2a) gamma'' + a^2 gamma at a sample.
pub fn ode_residual(sample: &CurveSample, a: f64, b: f64) -> f64 {
    (sample.d4 + sample.d2.scale(b * b - 2.0 * a) + sample.gamma.scale(a * a)).euclid_norm()
}

/// The first-order helix system on the augmented state (x, beta):
/// x' is linear in x with coefficients from (theta, beta, tau), beta' = b.
#[derive(Debug, Clone, Copy)]
pub struct HelixSystem {
    pub cos_theta: f64,
    pub sin_theta: f64,
    pub b: f64,
    pub tau: f64,
}

impl HelixSystem {
    pub fn new(cos_theta: f64, b: f64, params: ModelParams) -> Self {
        Self {
            cos_theta,
            sin_theta: (1.0 - cos_theta * cos_theta).max(0.0).sqrt(),
            b,
            tau: params.tau(),
        }
    }

    /// (x', beta') at the given state.
    pub fn rhs(&self, x: PseudoVec4, beta: f64) -> (PseudoVec4, f64) {
        let c = self.cos_theta / self.tau;
        let scb = self.sin_theta * beta.cos();
        let ssb = self.sin_theta * beta.sin();
        (
            PseudoVec4::new(
                c * x.x2 + scb * x.x3 + ssb * x.x4,
                -c * x.x1 + ssb * x.x3 - scb * x.x4,
                scb * x.x1 + ssb * x.x2 + c * x.x4,
                ssb * x.x1 - scb * x.x2 - c * x.x3,
            ),
            self.b,
        )
    }
}

/// (x', beta') of the first-order helix system at (x, beta), for the angle
/// theta and constant b.
pub fn first_order_rhs(
    x: PseudoVec4,
    beta: f64,
    cos_theta: f64,
    b: f64,
    params: ModelParams,
) -> (PseudoVec4, f64) {
    HelixSystem::new(cos_theta, b, params).rhs(x, beta)
}

/// Fixed-step RK4 on the 5-dimensional state, sampling every step.
pub fn integrate(
    x0: PseudoVec4,
    beta0: f64,
    sys: &HelixSystem,
    s_end: f64,
    n_steps: usize,
) -> Result<Vec<(f64, PseudoVec4, f64)>, GeomError> {
    if !on_manifold(x0, crate::model::ON_MANIFOLD_TOL) {
        return Err(GeomError::OffManifold(inner22(x0, x0)));
    }
    let mut out = Vec::with_capacity(n_steps + 1);
    out.push((0.0, x0, beta0));
    if n_steps == 0 {
        return Ok(out);
    }
    let h = s_end / n_steps as f64;
    let (mut x, mut beta) = (x0, beta0);
    for k in 0..n_steps {
        let (k1x, k1b) = sys.rhs(x, beta);
        let (k2x, k2b) = sys.rhs(x + k1x.scale(h / 2.0), beta + h / 2.0 * k1b);
        let (k3x, k3b) = sys.rhs(x + k2x.scale(h / 2.0), beta + h / 2.0 * k2b);
        let (k4x, k4b) = sys.rhs(x + k3x.scale(h), beta + h * k3b);
        x = x + (k1x + k2x.scale(2.0) + k3x.scale(2.0) + k4x).scale(h / 6.0);
        beta += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
        out.push(((k + 1) as f64 * h, x, beta));
    }
    Ok(out)
}

/// beta = atan2(T_2, T_3) of a unit tangent making the angle theta with E_1.
pub fn beta0_from_tangent(
    p: PseudoVec4,
    v: PseudoVec4,
    cos_theta: f64,
    params: ModelParams,
) -> Result<f64, GeomError> {
    let c = decompose(p, v, params)?;
    if (c.c1 - cos_theta).abs() > 1e-8 {
        return Err(GeomError::AngleMismatch(c.c1, cos_theta));
    }
    Ok(c.c2.atan2(c.c3))
}

/// Absolute deviations of the ten inner-product identities and the six
/// J1 identities at a sample.
pub fn relation_checks(
    sample: &CurveSample,
    data: &BiharmonicData,
    params: ModelParams,
) -> Vec<(&'static str, f64)> {
    let tau = params.tau();
    let [g, d1, d2, d3, d4] = sample.jet();
    let (bt, dc, er, ic) = (data.btilde, data.dconst, data.erel, data.iconst);
    vec![
        ("<g,g>=1", (inner22(g, g) - 1.0).abs()),
        ("<g',g'>=Btilde", (inner22(d1, d1) - bt).abs()),
        ("<g,g'>=0", inner22(g, d1).abs()),
        ("<g',g''>=0", inner22(d1, d2).abs()),
        ("<g'',g''>=D", (inner22(d2, d2) - dc).abs()),
        ("<g,g''>=-Btilde", (inner22(g, d2) + bt).abs()),
        ("<g',g'''>=-D", (inner22(d1, d3) + dc).abs()),
        ("<g'',g'''>=0", inner22(d2, d3).abs()),
        ("<g,g'''>=0", inner22(g, d3).abs()),
        ("<g''',g'''>=E", (inner22(d3, d3) - er).abs()),
        (
            "<J1g,g'>=-cos(theta)/tau",
            (inner22(j1_apply(g), d1) + data.cos_theta / tau).abs(),
        ),
        ("<J1g,g''>=0", inner22(j1_apply(g), d2).abs()),
        ("<J1g'',g'>=I", (inner22(j1_apply(d2), d1) - ic).abs()),
        ("<J1g',g'''>=0", inner22(j1_apply(d1), d3).abs()),
        (
            "<J1g',g''>+<J1g,g'''>=0",
            (inner22(j1_apply(d1), d2) + inner22(j1_apply(g), d3)).abs(),
        ),
        (
            "<J1g'',g'''>+<J1g',g''''>=0",
            (inner22(j1_apply(d2), d3) + inner22(j1_apply(d1), d4)).abs(),
        ),
    ]
}

/// The integral curve of the Hopf vector field E_1 through p: a fiber of
/// the submersion and a geodesic. Used as a negative control.
pub fn hopf_fiber_curve(p: PseudoVec4, params: ModelParams) -> impl Fn(f64) -> CurveSample {
    let w = 1.0 / params.tau();
    move |t: f64| {
        let jp = j1_apply(p);
        let c = Jet::cos_w(w, t);
        let s = Jet::sin_w(w, t);
        let coord = |pi: f64, ji: f64| c.scale(pi).sub(&s.scale(ji));
        let coords = [
            coord(p.x1, jp.x1),
            coord(p.x2, jp.x2),
            coord(p.x3, jp.x3),
            coord(p.x4, jp.x4),
        ];
        assemble(t, coords, &Matrix4::identity())
    }
}

/// The integral curve of E_2 through p: a geodesic with nabla_T T = 0.
pub fn e2_integral_curve(p: PseudoVec4) -> impl Fn(f64) -> CurveSample {
    move |s: f64| {
        let m2p = PseudoVec4::new(p.x4, p.x3, p.x2, p.x1);
        let ch = Jet::cosh_w(1.0, s);
        let sh = Jet::sinh_w(1.0, s);
        let coord = |pi: f64, mi: f64| ch.scale(pi).add(&sh.scale(mi));
        let coords = [
            coord(p.x1, m2p.x1),
            coord(p.x2, m2p.x2),
            coord(p.x3, m2p.x3),
            coord(p.x4, m2p.x4),
        ];
        assemble(s, coords, &Matrix4::identity())
    }
}
