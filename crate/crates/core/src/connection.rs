//! The Levi-Civita connection of g_tau as a structure-constant table in the
//! frame E_i, covariant differentiation along curves in frame components and
//! the curvature tensor computed by brute force from the table.

use crate::error::GeomError;
use crate::model::{FrameComponents, ModelParams};

/// gamma[i][j][k] is the component along E_{k+1} of nabla_{E_{i+1}} E_{j+1}.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionTable {
    gamma: [[[f64; 3]; 3]; 3],
    tau: f64,
}

/// The connection table of g_tau in the orthonormal frame.
pub fn connection_table(params: ModelParams) -> ConnectionTable {
    let tau = params.tau();
    let c = (2.0 + tau * tau) / tau;
    let mut g = [[[0.0; 3]; 3]; 3];
    g[0][1][2] = -c; //  nabla_{E1} E2 = -tau^{-1}(2+tau^2) E3
    g[0][2][1] = c; //   nabla_{E1} E3 =  tau^{-1}(2+tau^2) E2
    g[1][0][2] = -tau; // nabla_{E2} E1 = -tau E3
    g[2][0][1] = tau; //  nabla_{E3} E1 =  tau E2
    g[2][1][0] = -tau; // nabla_{E3} E2 = -tau E1
    g[1][2][0] = tau; //  nabla_{E2} E3 =  tau E1
    ConnectionTable { gamma: g, tau }
}

impl ConnectionTable {
    /// One-based indices, matching the frame labels E_1, E_2, E_3.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> f64 {
        self.gamma[i - 1][j - 1][k - 1]
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// nabla_{E_{i+1}} applied to a constant-component vector (zero-based i).
    fn nabla_basis(&self, i: usize, u: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (j, uj) in u.iter().enumerate() {
            for (k, o) in out.iter_mut().enumerate() {
                *o += uj * self.gamma[i][j][k];
            }
        }
        out
    }

    /// nabla along a direction with components `c`, applied to a
    /// constant-component vector.
    fn nabla_dir(&self, c: [f64; 3], u: [f64; 3]) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (i, ci) in c.iter().enumerate() {
            let n = self.nabla_basis(i, u);
            for (k, o) in out.iter_mut().enumerate() {
                *o += ci * n[k];
            }
        }
        out
    }

    /// [E_{i+1}, E_{j+1}] from torsion-freeness (zero-based indices).
    fn bracket(&self, i: usize, j: usize) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (k, o) in out.iter_mut().enumerate() {
            *o = self.gamma[i][j][k] - self.gamma[j][i][k];
        }
        out
    }
}

/// Frame components of nabla_T V along a curve:
/// (nabla_T V)_k = V_k' + sum_{i,j} T_i V_j gamma[i][j][k].
pub fn covariant_derivative(
    v: FrameComponents,
    v_prime: FrameComponents,
    t: FrameComponents,
    table: &ConnectionTable,
) -> FrameComponents {
    let conn = table.nabla_dir(t.to_array(), v.to_array());
    FrameComponents::new(
        v_prime.c1 + conn[0],
        v_prime.c2 + conn[1],
        v_prime.c3 + conn[2],
    )
}

fn basis(k: usize) -> [f64; 3] {
    let mut e = [0.0; 3];
    e[k] = 1.0;
    e
}

/// R(E_i, E_j) E_k in frame components (zero-based indices), by brute force:
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.
fn curvature_basis(table: &ConnectionTable, i: usize, j: usize, k: usize) -> [f64; 3] {
    let ek = basis(k);
    let a = table.nabla_basis(i, table.nabla_basis(j, ek));
    let b = table.nabla_basis(j, table.nabla_basis(i, ek));
    let c = table.nabla_dir(table.bracket(i, j), ek);
    [a[0] - b[0] - c[0], a[1] - b[1] - c[1], a[2] - b[2] - c[2]]
}

/// The curvature component R_{ijkl} = g_tau(R(E_i,E_j) E_l, E_k) with
/// one-based indices, computed by brute force from the connection table.
pub fn curvature_component(
    i: usize,
    j: usize,
    k: usize,
    l: usize,
    params: ModelParams,
) -> Result<f64, GeomError> {
    for idx in [i, j, k, l] {
        assert!((1..=3).contains(&idx), "curvature index out of range");
    }
    let table = connection_table(params);
    Ok(curvature_basis(&table, i - 1, j - 1, l - 1)[k - 1])
}

/// Frame components of R(X,Y)Z, trilinear in the inputs.
pub fn curvature_apply(
    x: FrameComponents,
    y: FrameComponents,
    z: FrameComponents,
    table: &ConnectionTable,
) -> FrameComponents {
    let (xa, ya, za) = (x.to_array(), y.to_array(), z.to_array());
    let mut out = [0.0; 3];
    for (i, xi) in xa.iter().enumerate() {
        if *xi == 0.0 {
            continue;
        }
        for (j, yj) in ya.iter().enumerate() {
            if *yj == 0.0 || i == j {
                continue;
            }
            for (k, zk) in za.iter().enumerate() {
                if *zk == 0.0 {
                    continue;
                }
                let r = curvature_basis(table, i, j, k);
                let w = xi * yj * zk;
                for (m, o) in out.iter_mut().enumerate() {
                    *o += w * r[m];
                }
            }
        }
    }
    FrameComponents::from_array(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(tau: f64) -> ModelParams {
        ModelParams::new(tau).unwrap()
    }

    /// Closed-form R_{ijkl}: tau^2 for the 1212/1313 classes, -(4+3 tau^2)
    /// for 2323, zero otherwise, extended by the tensor symmetries.
    fn closed_form(i: usize, j: usize, k: usize, l: usize, tau: f64) -> f64 {
        let anchors = [
            (1, 2, 1, 2, tau * tau),
            (1, 3, 1, 3, tau * tau),
            (2, 3, 2, 3, -(4.0 + 3.0 * tau * tau)),
        ];
        for (a, b, c, d, v) in anchors {
            // R_{abcd} with R_{ijkl} = -R_{jikl} = -R_{ijlk} = R_{klij}
            let variants = [
                (a, b, c, d, v),
                (b, a, c, d, -v),
                (a, b, d, c, -v),
                (b, a, d, c, v),
                (c, d, a, b, v),
                (d, c, a, b, -v),
                (c, d, b, a, -v),
                (d, c, b, a, v),
            ];
            for (p, q, r, s, val) in variants {
                if (i, j, k, l) == (p, q, r, s) {
                    return val;
                }
            }
        }
        0.0
    }

    #[test]
    fn table_entries() {
        let t = connection_table(params(1.0));
        assert_eq!(t.entry(1, 2, 3), -3.0);
        for k in 1..=3 {
            assert_eq!(t.entry(2, 2, k), 0.0);
            assert_eq!(t.entry(1, 1, k), 0.0);
            assert_eq!(t.entry(3, 3, k), 0.0);
        }
        let t = connection_table(params(2.0));
        assert_eq!(t.entry(3, 1, 2), 2.0);
    }

    #[test]
    fn table_metric_compatibility() {
        for tau in [0.5, 1.0, 2.0] {
            let t = connection_table(params(tau));
            for i in 1..=3 {
                for j in 1..=3 {
                    for k in 1..=3 {
                        assert_eq!(t.entry(i, j, k), -t.entry(i, k, j));
                    }
                }
            }
        }
    }

    #[test]
    fn brackets_from_table() {
        for tau in [0.5, 1.0, 2.0] {
            let t = connection_table(params(tau));
            let want = [
                (0, 1, [0.0, 0.0, -2.0 / tau]),
                (0, 2, [0.0, 2.0 / tau, 0.0]),
                (1, 2, [2.0 * tau, 0.0, 0.0]),
            ];
            for (i, j, w) in want {
                let b = t.bracket(i, j);
                for k in 0..3 {
                    assert!((b[k] - w[k]).abs() <= 1e-13);
                }
            }
        }
    }

    #[test]
    fn covariant_derivative_examples() {
        let t = connection_table(params(1.0));
        let zero = FrameComponents::new(0.0, 0.0, 0.0);
        let e1 = FrameComponents::new(1.0, 0.0, 0.0);
        let e2 = FrameComponents::new(0.0, 1.0, 0.0);

        // V = E1 constant along T = E2: nabla_{E2} E1 = -tau E3
        let d = covariant_derivative(e1, zero, e2, &t);
        assert_eq!(d.to_array(), [0.0, 0.0, -1.0]);

        // pure derivative term
        let d = covariant_derivative(zero, e1, zero, &t);
        assert_eq!(d.to_array(), [1.0, 0.0, 0.0]);

        // T = E1, V = E2: table entry -tau^{-1}(2+tau^2)
        let d = covariant_derivative(e2, zero, e1, &t);
        assert_eq!(d.to_array(), [0.0, 0.0, -3.0]);
    }

    #[test]
    fn curvature_anchor_components() {
        let one = params(1.0);
        assert_eq!(curvature_component(1, 2, 1, 2, one).unwrap(), 1.0);
        assert_eq!(curvature_component(2, 3, 2, 3, one).unwrap(), -7.0);
        for tau in [0.5, 1.0, 2.0] {
            assert!(curvature_component(1, 2, 1, 3, params(tau)).unwrap().abs() <= 1e-13);
        }
    }

    #[test]
    fn brute_force_matches_closed_form_all_indices() {
        for tau in [0.5, 1.0, 2.0] {
            let p = params(tau);
            for i in 1..=3 {
                for j in 1..=3 {
                    for k in 1..=3 {
                        for l in 1..=3 {
                            let got = curvature_component(i, j, k, l, p).unwrap();
                            let want = closed_form(i, j, k, l, tau);
                            assert!(
                                (got - want).abs() <= 1e-12,
                                "R_{i}{j}{k}{l} tau={tau}: got {got}, want {want}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_symmetries() {
        for tau in [0.5, 1.0, 2.0] {
            let p = params(tau);
            for i in 1..=3 {
                for j in 1..=3 {
                    for k in 1..=3 {
                        for l in 1..=3 {
                            let r = curvature_component(i, j, k, l, p).unwrap();
                            let pair = curvature_component(k, l, i, j, p).unwrap();
                            let skew = curvature_component(j, i, k, l, p).unwrap();
                            assert!((r - pair).abs() <= 1e-12);
                            assert!((r + skew).abs() <= 1e-12);
                            // first Bianchi on the vector-valued tensor:
                            // R(Ei,Ej)El + R(Ej,El)Ei + R(El,Ei)Ej = 0
                            let b = curvature_component(i, j, k, l, p).unwrap()
                                + curvature_component(j, l, k, i, p).unwrap()
                                + curvature_component(l, i, k, j, p).unwrap();
                            assert!(b.abs() <= 1e-12);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn curvature_apply_examples() {
        let e1 = FrameComponents::new(1.0, 0.0, 0.0);
        let e2 = FrameComponents::new(0.0, 1.0, 0.0);
        let e3 = FrameComponents::new(0.0, 0.0, 1.0);
        let t = connection_table(params(1.0));

        let r = curvature_apply(e1, e2, e2, &t);
        assert!((r.c1 - 1.0).abs() <= 1e-13 && r.c2.abs() <= 1e-13 && r.c3.abs() <= 1e-13);

        let r = curvature_apply(e2, e3, e3, &t);
        assert!((r.c2 + 7.0).abs() <= 1e-13 && r.c1.abs() <= 1e-13 && r.c3.abs() <= 1e-13);

        let x = FrameComponents::new(0.3, -1.2, 0.7);
        let z = FrameComponents::new(1.1, 0.2, -0.4);
        let r = curvature_apply(x, x, z, &t);
        assert!(r.norm() <= 1e-13);
    }
}
