//! The manifold model: SL(2,R) as the unit quadric of R^4_2, the frames
//! X_i and E_i, the metric family g_tau and the Hopf projection onto the
//! Lorentz model of the hyperbolic plane.

use crate::error::GeomError;
use crate::linalg::{inner22, j1_apply, Matrix4, PseudoVec4};
use rand::Rng;

/// Tolerance on the quadric equation for points fed into the frame and
/// metric routines.
pub const ON_MANIFOLD_TOL: f64 = 1e-9;
/// Tolerance on <v,p> for vectors claimed tangent; inputs may come from
/// finite-difference pipelines.
pub const TANGENT_TOL: f64 = 1e-8;

/// The metric parameter tau > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    tau: f64,
}

impl ModelParams {
    pub fn new(tau: f64) -> Result<Self, GeomError> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(GeomError::InvalidTau(tau));
        }
        Ok(Self { tau })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Components of a tangent vector in the orthonormal frame E_1, E_2, E_3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameComponents {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl FrameComponents {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Self { c1, c2, c3 }
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Self::new(a[0], a[1], a[2])
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(s * self.c1, s * self.c2, s * self.c3)
    }

    pub fn add(self, o: Self) -> Self {
        Self::new(self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::new(self.c1 - o.c1, self.c2 - o.c2, self.c3 - o.c3)
    }

    /// The frame is g_tau-orthonormal, so the metric is Euclidean on
    /// components.
    pub fn dot(self, o: Self) -> f64 {
        self.c1 * o.c1 + self.c2 * o.c2 + self.c3 * o.c3
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    /// Right-handed cross product in (E_1, E_2, E_3) components.
    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.c2 * o.c3 - self.c3 * o.c2,
            self.c3 * o.c1 - self.c1 * o.c3,
            self.c1 * o.c2 - self.c2 * o.c1,
        )
    }
}

/// True iff |<p,p> - 1| <= tol.
pub fn on_manifold(p: PseudoVec4, tol: f64) -> bool {
    assert!(tol > 0.0);
    (inner22(p, p) - 1.0).abs() <= tol
}

fn require_on_manifold(p: PseudoVec4) -> Result<(), GeomError> {
    let q = inner22(p, p);
    if (q - 1.0).abs() > ON_MANIFOLD_TOL {
        return Err(GeomError::OffManifold(q));
    }
    Ok(())
}

/// The constant matrices K_i with X_i(p) = K_i p.
pub fn frame_matrix_x(i: usize) -> Matrix4 {
    match i {
        // X_1(z,w) = (iz, iw), i.e. J1.
        1 => Matrix4::j1(),
        // X_2(z,w) = (i conj(w), i conj(z)): (x1,x2,x3,x4) -> (x4,x3,x2,x1).
        2 => Matrix4([
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
        ]),
        // X_3(z,w) = (conj(w), conj(z)): (x1,x2,x3,x4) -> (x3,-x4,x1,-x2).
        3 => Matrix4([
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, -1.0, 0.0, 0.0],
        ]),
        _ => panic!("frame index must be 1, 2 or 3"),
    }
}

/// The tangent frame X_1 (vertical), X_2, X_3 (horizontal) at p.
pub fn frames_x(p: PseudoVec4) -> Result<(PseudoVec4, PseudoVec4, PseudoVec4), GeomError> {
    require_on_manifold(p)?;
    Ok((
        j1_apply(p),
        PseudoVec4::new(p.x4, p.x3, p.x2, p.x1),
        PseudoVec4::new(p.x3, -p.x4, p.x1, -p.x2),
    ))
}

/// g_tau(X,Y) = -<X,Y> + (1+tau^2) <X,X_1> <Y,X_1> evaluated on the raw
/// ambient vectors, with no tangency checks. The checked entry point is
/// [`metric_g`].
pub fn metric_g_raw(p: PseudoVec4, x: PseudoVec4, y: PseudoVec4, params: ModelParams) -> f64 {
    let x1 = j1_apply(p);
    let tau = params.tau();
    -inner22(x, y) + (1.0 + tau * tau) * inner22(x, x1) * inner22(y, x1)
}

/// The metric g_tau on tangent vectors at p.
pub fn metric_g(
    p: PseudoVec4,
    x: PseudoVec4,
    y: PseudoVec4,
    params: ModelParams,
) -> Result<f64, GeomError> {
    require_on_manifold(p)?;
    for v in [x, y] {
        let t = inner22(v, p);
        if t.abs() > TANGENT_TOL {
            return Err(GeomError::NotTangent(t));
        }
    }
    Ok(metric_g_raw(p, x, y, params))
}

/// The g_tau-orthonormal frame E_1 = -X_1/tau, E_2 = X_2, E_3 = X_3 at p.
pub fn frame_e(
    p: PseudoVec4,
    params: ModelParams,
) -> Result<(PseudoVec4, PseudoVec4, PseudoVec4), GeomError> {
    let (x1, x2, x3) = frames_x(p)?;
    Ok((x1.scale(-1.0 / params.tau()), x2, x3))
}

/// Frame components (g_tau(V,E_1), g_tau(V,E_2), g_tau(V,E_3)) of a tangent
/// vector V at p.
pub fn decompose(
    p: PseudoVec4,
    v: PseudoVec4,
    params: ModelParams,
) -> Result<FrameComponents, GeomError> {
    require_on_manifold(p)?;
    let t = inner22(v, p);
    if t.abs() > TANGENT_TOL {
        return Err(GeomError::NotTangent(t));
    }
    let (e1, e2, e3) = frame_e(p, params)?;
    Ok(FrameComponents::new(
        metric_g_raw(p, v, e1, params),
        metric_g_raw(p, v, e2, params),
        metric_g_raw(p, v, e3, params),
    ))
}

/// Rebuild the ambient vector c1 E_1 + c2 E_2 + c3 E_3 at p.
pub fn reconstruct(
    p: PseudoVec4,
    c: FrameComponents,
    params: ModelParams,
) -> Result<PseudoVec4, GeomError> {
    let (e1, e2, e3) = frame_e(p, params)?;
    Ok(e1.scale(c.c1) + e2.scale(c.c2) + e3.scale(c.c3))
}

/// The Hopf projection psi(z,w) = (2 z conj(w), |z|^2 + |w|^2)/sqrt(tau)
/// into the quadric x^2 + y^2 - z^2 = -1/tau of Minkowski 3-space.
pub fn hopf_project(p: PseudoVec4, params: ModelParams) -> Result<[f64; 3], GeomError> {
    require_on_manifold(p)?;
    let rt = params.tau().sqrt();
    Ok([
        2.0 * (p.x1 * p.x3 + p.x2 * p.x4) / rt,
        2.0 * (p.x2 * p.x3 - p.x1 * p.x4) / rt,
        (p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3 + p.x4 * p.x4) / rt,
    ])
}

/// A random point on the quadric: draw a Gaussian vector whose (x1,x2)
/// block dominates the (x3,x4) block and scale the quadric value to 1.
pub fn random_on_manifold<R: Rng>(rng: &mut R) -> PseudoVec4 {
    loop {
        let raw = PseudoVec4::new(
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
        );
        let q = inner22(raw, raw);
        if q > 1e-3 {
            return raw.scale(1.0 / q.sqrt());
        }
    }
}

/// A random g_tau-unit tangent vector at p.
pub fn random_unit_tangent<R: Rng>(
    rng: &mut R,
    p: PseudoVec4,
    params: ModelParams,
) -> Result<PseudoVec4, GeomError> {
    let (e1, e2, e3) = frame_e(p, params)?;
    loop {
        let c = [
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
            rng.gen::<f64>() * 2.0 - 1.0,
        ];
        let n = (c[0] * c[0] + c[1] * c[1] + c[2] * c[2]).sqrt();
        if n > 1e-3 {
            return Ok((e1.scale(c[0]) + e2.scale(c[1]) + e3.scale(c[2])).scale(1.0 / n));
        }
    }
}
