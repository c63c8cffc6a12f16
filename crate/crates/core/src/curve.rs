//! Sampled curves in R^4_2 with derivatives to 4th order, either analytic
//! (from the closed-form generators) or reconstructed by finite differences.

use crate::linalg::{Matrix4, PseudoVec4, ZERO4};

/// One curve sample: arc length, position and the first four derivatives.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample {
    pub s: f64,
    pub gamma: PseudoVec4,
    pub d1: PseudoVec4,
    pub d2: PseudoVec4,
    pub d3: PseudoVec4,
    pub d4: PseudoVec4,
}

impl CurveSample {
    /// Ambient derivatives [gamma, gamma', .., gamma''''].
    pub fn jet(&self) -> [PseudoVec4; 5] {
        [self.gamma, self.d1, self.d2, self.d3, self.d4]
    }

    /// Apply a constant linear map to the whole jet.
    pub fn transformed(&self, a: &Matrix4) -> CurveSample {
        CurveSample {
            s: self.s,
            gamma: a.mul_vec(self.gamma),
            d1: a.mul_vec(self.d1),
            d2: a.mul_vec(self.d2),
            d3: a.mul_vec(self.d3),
            d4: a.mul_vec(self.d4),
        }
    }
}

/// Anything that can be sampled with analytic derivatives.
pub trait SampledCurve {
    fn sample(&self, s: f64) -> CurveSample;
}

impl<F: Fn(f64) -> CurveSample> SampledCurve for F {
    fn sample(&self, s: f64) -> CurveSample {
        self(s)
    }
}

// 7-point central stencils; d1/d2 are O(h^6), d3/d4 are O(h^4).
const D1_C: [f64; 3] = [3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0];
const D2_C0: f64 = -49.0 / 18.0;
const D2_C: [f64; 3] = [3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0];
const D3_C: [f64; 3] = [-13.0 / 8.0, 1.0, -1.0 / 8.0];
const D4_C0: f64 = 28.0 / 3.0;
const D4_C: [f64; 3] = [-13.0 / 2.0, 2.0, -1.0 / 6.0];

// Step floors for the higher orders: below these, roundoff in the h^3 and
// h^4 divisions dominates the truncation error.
const D3_MIN_STEP: f64 = 1e-3;
const D4_MIN_STEP: f64 = 5e-3;

fn stencil_odd(w: &[PseudoVec4; 7], c: &[f64; 3], hn: f64) -> PseudoVec4 {
    let mut acc = ZERO4;
    for (o, co) in c.iter().enumerate() {
        acc = acc + (w[4 + o] - w[2 - o]).scale(*co);
    }
    acc.scale(1.0 / hn)
}

fn stencil_even(w: &[PseudoVec4; 7], c0: f64, c: &[f64; 3], hn: f64) -> PseudoVec4 {
    let mut acc = w[3].scale(c0);
    for (o, co) in c.iter().enumerate() {
        acc = acc + (w[4 + o] + w[2 - o]).scale(*co);
    }
    acc.scale(1.0 / hn)
}

fn window<F: Fn(f64) -> PseudoVec4>(f: &F, s: f64, h: f64) -> [PseudoVec4; 7] {
    let mut w = [ZERO4; 7];
    for (i, e) in w.iter_mut().enumerate() {
        *e = f(s + (i as f64 - 3.0) * h);
    }
    w
}

/// Build a sample from positions only, by central finite differences with
/// base step `h`. The third and fourth derivatives use wider steps when `h`
/// is small, trading truncation for roundoff.
pub fn fd_sample<F: Fn(f64) -> PseudoVec4>(f: &F, s: f64, h: f64) -> CurveSample {
    assert!(h > 0.0);
    let w = window(f, s, h);
    let h3 = h.max(D3_MIN_STEP);
    let h4 = h.max(D4_MIN_STEP);
    let w3 = if h3 == h { w } else { window(f, s, h3) };
    let w4 = if h4 == h {
        w
    } else if h4 == h3 {
        w3
    } else {
        window(f, s, h4)
    };
    CurveSample {
        s,
        gamma: w[3],
        d1: stencil_odd(&w, &D1_C, h),
        d2: stencil_even(&w, D2_C0, &D2_C, h * h),
        d3: stencil_odd(&w3, &D3_C, h3 * h3 * h3),
        d4: stencil_even(&w4, D4_C0, &D4_C, h4 * h4 * h4 * h4),
    }
}

/// Default finite-difference step at O(1) curve scales.
pub const FD_STEP: f64 = 1e-4;

/// Reconstruct samples with finite-difference derivatives at the interior
/// points of a uniformly spaced grid of positions. Returns an error message
/// when the grid is not uniform or too short for the 7-point stencils.
pub fn fd_samples_from_grid(rows: &[(f64, PseudoVec4)]) -> Result<Vec<CurveSample>, String> {
    if rows.len() < 7 {
        return Err(format!(
            "need at least 7 uniformly spaced samples, got {}",
            rows.len()
        ));
    }
    let h = rows[1].0 - rows[0].0;
    if !(h.is_finite() && h > 0.0) {
        return Err("grid must be strictly increasing in s".into());
    }
    for k in 1..rows.len() {
        let dk = rows[k].0 - rows[k - 1].0;
        if (dk - h).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(format!(
                "grid is not uniform: step {dk} at row {k} differs from {h}"
            ));
        }
    }
    let mut out = Vec::with_capacity(rows.len().saturating_sub(6));
    for i in 3..rows.len() - 3 {
        let mut w = [ZERO4; 7];
        for (o, e) in w.iter_mut().enumerate() {
            *e = rows[i + o - 3].1;
        }
        out.push(CurveSample {
            s: rows[i].0,
            gamma: w[3],
            d1: stencil_odd(&w, &D1_C, h),
            d2: stencil_even(&w, D2_C0, &D2_C, h * h),
            d3: stencil_odd(&w, &D3_C, h * h * h),
            d4: stencil_even(&w, D4_C0, &D4_C, h * h * h * h),
        });
    }
    Ok(out)
}

/// Uniform grid of n points on [lo, hi] (n >= 2 gives both endpoints).
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 1);
    if n == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| lo + i as f64 * step).collect()
}
