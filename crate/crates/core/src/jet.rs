//! Truncated Taylor arithmetic on scalar functions of arc length. A `Jet`
//! carries a value and derivatives up to a tracked order; products and
//! quotients propagate derivatives by the Leibniz rule. The curve
//! generators and the Frenet chain are built on these.

pub const MAX_ORD: usize = 4;

const BINOM: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [1.0, 1.0, 0.0, 0.0, 0.0],
    [1.0, 2.0, 1.0, 0.0, 0.0],
    [1.0, 3.0, 3.0, 1.0, 0.0],
    [1.0, 4.0, 6.0, 4.0, 1.0],
];

/// Value and derivatives d[0..=ord] of a scalar function at a point.
#[derive(Debug, Clone, Copy)]
pub struct Jet {
    d: [f64; 5],
    ord: usize,
}

impl Jet {
    pub fn new(d: [f64; 5], ord: usize) -> Self {
        assert!(ord <= MAX_ORD);
        Self { d, ord }
    }

    pub fn constant(c: f64) -> Self {
        Self::new([c, 0.0, 0.0, 0.0, 0.0], MAX_ORD)
    }

    /// The identity function s -> s at the point s.
    pub fn var(s: f64) -> Self {
        Self::new([s, 1.0, 0.0, 0.0, 0.0], MAX_ORD)
    }

    /// cos(omega s) at s, exact to MAX_ORD.
    pub fn cos_w(omega: f64, s: f64) -> Self {
        let mut d = [0.0; 5];
        let mut pw = 1.0;
        for (n, e) in d.iter_mut().enumerate() {
            *e = pw
                * match n % 4 {
                    0 => (omega * s).cos(),
                    1 => -(omega * s).sin(),
                    2 => -(omega * s).cos(),
                    _ => (omega * s).sin(),
                };
            pw *= omega;
        }
        Self::new(d, MAX_ORD)
    }

    /// sin(omega s) at s.
    pub fn sin_w(omega: f64, s: f64) -> Self {
        let mut d = [0.0; 5];
        let mut pw = 1.0;
        for (n, e) in d.iter_mut().enumerate() {
            *e = pw
                * match n % 4 {
                    0 => (omega * s).sin(),
                    1 => (omega * s).cos(),
                    2 => -(omega * s).sin(),
                    _ => -(omega * s).cos(),
                };
            pw *= omega;
        }
        Self::new(d, MAX_ORD)
    }

    /// cosh(omega s) at s.
    pub fn cosh_w(omega: f64, s: f64) -> Self {
        let mut d = [0.0; 5];
        let mut pw = 1.0;
        for (n, e) in d.iter_mut().enumerate() {
            *e = pw
                * if n % 2 == 0 {
                    (omega * s).cosh()
                } else {
                    (omega * s).sinh()
                };
            pw *= omega;
        }
        Self::new(d, MAX_ORD)
    }

    /// sinh(omega s) at s.
    pub fn sinh_w(omega: f64, s: f64) -> Self {
        let mut d = [0.0; 5];
        let mut pw = 1.0;
        for (n, e) in d.iter_mut().enumerate() {
            *e = pw
                * if n % 2 == 0 {
                    (omega * s).sinh()
                } else {
                    (omega * s).cosh()
                };
            pw *= omega;
        }
        Self::new(d, MAX_ORD)
    }

    pub fn ord(&self) -> usize {
        self.ord
    }

    pub fn value(&self) -> f64 {
        self.d[0]
    }

    /// n-th derivative; n must not exceed the tracked order.
    pub fn dn(&self, n: usize) -> f64 {
        assert!(n <= self.ord, "derivative order {n} beyond jet order {}", self.ord);
        self.d[n]
    }

    /// The derivative function as a jet of one lower order.
    pub fn deriv(&self) -> Jet {
        assert!(self.ord >= 1, "cannot differentiate an order-0 jet");
        let mut d = [0.0; 5];
        d[..self.ord].copy_from_slice(&self.d[1..=self.ord]);
        Jet::new(d, self.ord - 1)
    }

    pub fn add(&self, o: &Jet) -> Jet {
        let ord = self.ord.min(o.ord);
        let mut d = [0.0; 5];
        for (n, e) in d.iter_mut().enumerate().take(ord + 1) {
            *e = self.d[n] + o.d[n];
        }
        Jet::new(d, ord)
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        self.add(&o.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Jet {
        let mut d = [0.0; 5];
        for (n, e) in d.iter_mut().enumerate().take(self.ord + 1) {
            *e = c * self.d[n];
        }
        Jet::new(d, self.ord)
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let ord = self.ord.min(o.ord);
        let mut d = [0.0; 5];
        for (n, e) in d.iter_mut().enumerate().take(ord + 1) {
            for k in 0..=n {
                *e += BINOM[n][k] * self.d[k] * o.d[n - k];
            }
        }
        Jet::new(d, ord)
    }

    /// Square root of a positive jet, by the recurrences for (sqrt f)^(n).
    pub fn sqrt(&self) -> Jet {
        let s0 = self.d[0].sqrt();
        assert!(s0 > 0.0, "jet sqrt needs a positive value");
        let mut s = [0.0; 5];
        s[0] = s0;
        if self.ord >= 1 {
            s[1] = self.d[1] / (2.0 * s0);
        }
        if self.ord >= 2 {
            s[2] = (self.d[2] / 2.0 - s[1] * s[1]) / s0;
        }
        if self.ord >= 3 {
            s[3] = (self.d[3] / 2.0 - 3.0 * s[1] * s[2]) / s0;
        }
        if self.ord >= 4 {
            s[4] = (self.d[4] / 2.0 - 4.0 * s[1] * s[3] - 3.0 * s[2] * s[2]) / s0;
        }
        Jet::new(s, self.ord)
    }

    /// Reciprocal of a nonzero jet, from the Leibniz expansion of f * (1/f) = 1.
    pub fn recip(&self) -> Jet {
        let a0 = self.d[0];
        assert!(a0 != 0.0, "jet recip needs a nonzero value");
        let mut r = [0.0; 5];
        r[0] = 1.0 / a0;
        for n in 1..=self.ord {
            let mut acc = 0.0;
            for k in 0..n {
                acc += BINOM[n][k] * r[k] * self.d[n - k];
            }
            r[n] = -acc / a0;
        }
        Jet::new(r, self.ord)
    }
}
