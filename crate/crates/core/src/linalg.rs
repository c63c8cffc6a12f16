//! Primitives for the pseudo-Euclidean space R^4_2: the signature-(2,2)
//! inner product, the complex structure J1 and membership tests for the
//! indefinite orthogonal group O_2(4).

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// A point or vector of R^4_2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoVec4 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

pub const ZERO4: PseudoVec4 = PseudoVec4 {
    x1: 0.0,
    x2: 0.0,
    x3: 0.0,
    x4: 0.0,
};

impl PseudoVec4 {
    pub fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self { x1, x2, x3, x4 }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn scale(self, c: f64) -> Self {
        Self::new(c * self.x1, c * self.x2, c * self.x3, c * self.x4)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|v| v.is_finite())
    }

    /// Euclidean norm of the ambient coordinates (used only for residual
    /// reporting, not for the geometry).
    pub fn euclid_norm(self) -> f64 {
        self.to_array().iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Add for PseudoVec4 {
    type Output = PseudoVec4;
    fn add(self, o: PseudoVec4) -> PseudoVec4 {
        PseudoVec4::new(
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
            self.x4 + o.x4,
        )
    }
}

impl Sub for PseudoVec4 {
    type Output = PseudoVec4;
    fn sub(self, o: PseudoVec4) -> PseudoVec4 {
        PseudoVec4::new(
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
            self.x4 - o.x4,
        )
    }
}

impl Neg for PseudoVec4 {
    type Output = PseudoVec4;
    fn neg(self) -> PseudoVec4 {
        self.scale(-1.0)
    }
}

impl Mul<PseudoVec4> for f64 {
    type Output = PseudoVec4;
    fn mul(self, v: PseudoVec4) -> PseudoVec4 {
        v.scale(self)
    }
}

/// The signature-(2,2) inner product <v,w> = v1 w1 + v2 w2 - v3 w3 - v4 w4.
pub fn inner22(v: PseudoVec4, w: PseudoVec4) -> f64 {
    v.x1 * w.x1 + v.x2 * w.x2 - v.x3 * w.x3 - v.x4 * w.x4
}

/// The complex structure J1 = diag(J, J) with J = [[0,-1],[1,0]] applied to v:
/// (x1,x2,x3,x4) -> (-x2,x1,-x4,x3). Applying it twice gives -v.
pub fn j1_apply(v: PseudoVec4) -> PseudoVec4 {
    PseudoVec4::new(-v.x2, v.x1, -v.x4, v.x3)
}

/// A 4x4 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Matrix4(pub [[f64; 4]; 4]);

impl Matrix4 {
    pub fn identity() -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        Matrix4(m)
    }

    pub fn diagonal(d: [f64; 4]) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = d[i];
        }
        Matrix4(m)
    }

    /// The metric matrix eps = diag(1,1,-1,-1) of the (2,2) form.
    pub fn epsilon() -> Self {
        Matrix4::diagonal([1.0, 1.0, -1.0, -1.0])
    }

    /// The complex structure J1 as a matrix.
    pub fn j1() -> Self {
        Matrix4([
            [0.0, -1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
            [0.0, 0.0, 1.0, 0.0],
        ])
    }

    pub fn transpose(&self) -> Self {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[j][i];
            }
        }
        Matrix4(m)
    }

    pub fn mul_vec(&self, v: PseudoVec4) -> PseudoVec4 {
        let a = v.to_array();
        let mut out = [0.0; 4];
        for (i, row) in self.0.iter().enumerate() {
            out[i] = row.iter().zip(a.iter()).map(|(m, x)| m * x).sum();
        }
        PseudoVec4::from_array(out)
    }

    pub fn mul_mat(&self, other: &Matrix4) -> Matrix4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        Matrix4(m)
    }

    /// Largest absolute entry, used as the residual norm of membership tests.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0_f64, |acc, e| acc.max(e.abs()))
    }

    pub fn sub(&self, other: &Matrix4) -> Matrix4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[i][j] - other.0[i][j];
            }
        }
        Matrix4(m)
    }

    pub fn add(&self, other: &Matrix4) -> Matrix4 {
        let mut m = [[0.0; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.0[i][j] + other.0[i][j];
            }
        }
        Matrix4(m)
    }
}

/// Default tolerance for the algebraic membership checks; entries are O(1).
pub const MEMBERSHIP_TOL: f64 = 1e-10;

/// True iff A^t eps A = eps within `tol` in the max-entry norm, i.e. A
/// preserves the (2,2) form.
pub fn o24_membership(a: &Matrix4, tol: f64) -> bool {
    assert!(tol > 0.0);
    let eps = Matrix4::epsilon();
    let lhs = a.transpose().mul_mat(&eps).mul_mat(a);
    lhs.sub(&eps).max_abs() <= tol
}

/// How a matrix relates to the complex structure J1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum J1Commutation {
    Commutes,
    Anticommutes,
    Neither,
}

/// Classifies A by whether A J1 - J1 A or A J1 + J1 A vanishes within `tol`.
/// If both vanish (A is essentially zero) the answer is `Neither`.
pub fn j1_commutation(a: &Matrix4, tol: f64) -> J1Commutation {
    assert!(tol > 0.0);
    let j1 = Matrix4::j1();
    let aj = a.mul_mat(&j1);
    let ja = j1.mul_mat(a);
    let comm = aj.sub(&ja).max_abs() <= tol;
    let anti = aj.add(&ja).max_abs() <= tol;
    match (comm, anti) {
        (true, false) => J1Commutation::Commutes,
        (false, true) => J1Commutation::Anticommutes,
        _ => J1Commutation::Neither,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(a: f64, b: f64, c: f64, d: f64) -> PseudoVec4 {
        PseudoVec4::new(a, b, c, d)
    }

    #[test]
    fn inner22_signature() {
        assert_eq!(inner22(v(1.0, 0.0, 0.0, 0.0), v(1.0, 0.0, 0.0, 0.0)), 1.0);
        assert_eq!(inner22(v(0.0, 0.0, 1.0, 0.0), v(0.0, 0.0, 1.0, 0.0)), -1.0);
        assert_eq!(inner22(v(1.0, 1.0, 1.0, 1.0), v(1.0, 1.0, 1.0, 1.0)), 0.0);
    }

    #[test]
    fn j1_action() {
        assert_eq!(j1_apply(v(1.0, 0.0, 0.0, 0.0)), v(0.0, 1.0, 0.0, 0.0));
        assert_eq!(j1_apply(v(0.0, 0.0, 1.0, 0.0)), v(0.0, 0.0, 0.0, 1.0));
        let w = v(1.0, 2.0, 3.0, 4.0);
        assert_eq!(j1_apply(j1_apply(w)), -w);
    }

    #[test]
    fn j1_matrix_matches_apply() {
        let j1 = Matrix4::j1();
        let w = v(1.0, 2.0, 3.0, 4.0);
        assert_eq!(j1.mul_vec(w), j1_apply(w));
    }

    #[test]
    fn o24_members() {
        assert!(o24_membership(&Matrix4::identity(), MEMBERSHIP_TOL));
        assert!(o24_membership(
            &Matrix4::diagonal([1.0, -1.0, 1.0, -1.0]),
            MEMBERSHIP_TOL
        ));
        assert!(!o24_membership(
            &Matrix4::diagonal([2.0, 1.0, 1.0, 1.0]),
            MEMBERSHIP_TOL
        ));
    }

    #[test]
    fn commutation_classes() {
        assert_eq!(
            j1_commutation(&Matrix4::identity(), MEMBERSHIP_TOL),
            J1Commutation::Commutes
        );
        assert_eq!(
            j1_commutation(&Matrix4::diagonal([1.0, -1.0, 1.0, -1.0]), MEMBERSHIP_TOL),
            J1Commutation::Anticommutes
        );
        assert_eq!(
            j1_commutation(&Matrix4::diagonal([1.0, 1.0, 1.0, -1.0]), MEMBERSHIP_TOL),
            J1Commutation::Neither
        );
        // eps has the same 2x2 block structure as J1, so it commutes.
        assert_eq!(
            j1_commutation(&Matrix4::epsilon(), MEMBERSHIP_TOL),
            J1Commutation::Commutes
        );
    }

    proptest! {
        #[test]
        fn inner22_bilinear_symmetric(
            a in proptest::array::uniform4(-10.0..10.0f64),
            b in proptest::array::uniform4(-10.0..10.0f64),
            c in proptest::array::uniform4(-10.0..10.0f64),
            s in -5.0..5.0f64,
        ) {
            let (a, b, c) = (
                PseudoVec4::from_array(a),
                PseudoVec4::from_array(b),
                PseudoVec4::from_array(c),
            );
            prop_assert!((inner22(a, b) - inner22(b, a)).abs() <= 1e-14);
            let lin = inner22(a + b.scale(s), c) - inner22(a, c) - s * inner22(b, c);
            prop_assert!(lin.abs() <= 1e-11);
        }

        #[test]
        fn j1_preserves_inner(
            a in proptest::array::uniform4(-10.0..10.0f64),
            b in proptest::array::uniform4(-10.0..10.0f64),
        ) {
            let (a, b) = (PseudoVec4::from_array(a), PseudoVec4::from_array(b));
            let d = inner22(j1_apply(a), j1_apply(b)) - inner22(a, b);
            prop_assert!(d.abs() <= 1e-13);
        }
    }

    #[test]
    fn o24_members_are_isometries() {
        use rand::prelude::*;
        let mut rng = StdRng::seed_from_u64(7);
        // a few members built from diagonal signs and the boost block form
        let t: f64 = 0.4;
        let boost = Matrix4([
            [t.cosh(), 0.0, t.sinh(), 0.0],
            [0.0, t.cosh(), 0.0, t.sinh()],
            [t.sinh(), 0.0, t.cosh(), 0.0],
            [0.0, t.sinh(), 0.0, t.cosh()],
        ]);
        let members = [
            Matrix4::identity(),
            Matrix4::diagonal([1.0, -1.0, 1.0, -1.0]),
            boost,
            Matrix4::diagonal([1.0, -1.0, 1.0, -1.0]).mul_mat(&boost),
        ];
        for m in &members {
            assert!(o24_membership(m, MEMBERSHIP_TOL));
            for _ in 0..100 {
                let a = PseudoVec4::new(rng.gen(), rng.gen(), rng.gen(), rng.gen());
                let b = PseudoVec4::new(rng.gen(), rng.gen(), rng.gen(), rng.gen());
                let d = inner22(m.mul_vec(a), m.mul_vec(b)) - inner22(a, b);
                assert!(d.abs() <= 1e-12, "isometry residual {d}");
            }
        }
    }
}
