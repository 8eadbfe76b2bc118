use std::ops::{Add, Div, Mul, Neg, Sub};

/// Second-order jet of a scalar field of two variables.
///
/// Carries the value, the gradient and the three independent Hessian
/// entries `[d11, d12, d22]`; symmetry of the Hessian is structural.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 2],
    pub hess: [f64; 3],
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Jet2 {
            value,
            grad: [0.0; 2],
            hess: [0.0; 3],
        }
    }

    /// Seeds coordinate `index` (0 for `x1`, 1 for `x2`) at `value`.
    pub fn variable(index: usize, value: f64) -> Self {
        let mut grad = [0.0; 2];
        grad[index] = 1.0;
        Jet2 {
            value,
            grad,
            hess: [0.0; 3],
        }
    }

    /// Composes a univariate function with this jet, given the function's
    /// value and first two derivatives at `self.value`.
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        let [g1, g2] = self.grad;
        let [h11, h12, h22] = self.hess;
        Jet2 {
            value: f0,
            grad: [f1 * g1, f1 * g2],
            hess: [
                f1 * h11 + f2 * g1 * g1,
                f1 * h12 + f2 * g1 * g2,
                f1 * h22 + f2 * g2 * g2,
            ],
        }
    }

    /// Partial derivative along coordinate `index`.
    pub fn d(&self, index: usize) -> f64 {
        self.grad[index]
    }

    /// Second partial `d^2 / dx_i dx_j`.
    pub fn dd(&self, i: usize, j: usize) -> f64 {
        match (i, j) {
            (0, 0) => self.hess[0],
            (1, 1) => self.hess[2],
            _ => self.hess[1],
        }
    }

    pub fn recip(self) -> Self {
        let inv = 1.0 / self.value;
        self.chain(inv, -inv * inv, 2.0 * inv * inv * inv)
    }

    pub fn exp(self) -> Self {
        let e = self.value.exp();
        self.chain(e, e, e)
    }

    pub fn ln(self) -> Self {
        let x = self.value;
        self.chain(x.ln(), 1.0 / x, -1.0 / (x * x))
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.value.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.value.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn sinh(self) -> Self {
        let x = self.value;
        self.chain(x.sinh(), x.cosh(), x.sinh())
    }

    pub fn cosh(self) -> Self {
        let x = self.value;
        self.chain(x.cosh(), x.sinh(), x.cosh())
    }

    pub fn tanh(self) -> Self {
        let t = self.value.tanh();
        let sech2 = 1.0 - t * t;
        self.chain(t, sech2, -2.0 * t * sech2)
    }

    pub fn sqrt(self) -> Self {
        let r = self.value.sqrt();
        self.chain(r, 0.5 / r, -0.25 / (r * self.value))
    }

    pub fn abs(self) -> Self {
        let s = self.value.signum();
        self.chain(self.value.abs(), s, 0.0)
    }

    /// Integer power by repeated multiplication.
    pub fn powi_mul(self, n: i32) -> Self {
        let mut acc = Jet2::constant(1.0);
        for _ in 0..n.unsigned_abs() {
            acc = acc * self;
        }
        if n < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// Integer power through the chain rule.
    pub fn powi_chain(self, n: i32) -> Self {
        let x = self.value;
        let nf = n as f64;
        self.chain(
            x.powi(n),
            nf * x.powi(n - 1),
            nf * (nf - 1.0) * x.powi(n - 2),
        )
    }

    /// Real constant power, base assumed positive.
    pub fn powf(self, c: f64) -> Self {
        let x = self.value;
        self.chain(x.powf(c), c * x.powf(c - 1.0), c * (c - 1.0) * x.powf(c - 2.0))
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|v| v.is_finite())
            && self.hess.iter().all(|v| v.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        Jet2 {
            value: self.value + o.value,
            grad: [self.grad[0] + o.grad[0], self.grad[1] + o.grad[1]],
            hess: [
                self.hess[0] + o.hess[0],
                self.hess[1] + o.hess[1],
                self.hess[2] + o.hess[2],
            ],
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            grad: [-self.grad[0], -self.grad[1]],
            hess: [-self.hess[0], -self.hess[1], -self.hess[2]],
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let (a, b) = (self, o);
        Jet2 {
            value: a.value * b.value,
            grad: [
                a.grad[0] * b.value + a.value * b.grad[0],
                a.grad[1] * b.value + a.value * b.grad[1],
            ],
            hess: [
                a.hess[0] * b.value + 2.0 * a.grad[0] * b.grad[0] + a.value * b.hess[0],
                a.hess[1] * b.value
                    + a.grad[0] * b.grad[1]
                    + a.grad[1] * b.grad[0]
                    + a.value * b.hess[1],
                a.hess[2] * b.value + 2.0 * a.grad[1] * b.grad[1] + a.value * b.hess[2],
            ],
        }
    }
}

impl Mul<f64> for Jet2 {
    type Output = Jet2;
    fn mul(self, s: f64) -> Jet2 {
        Jet2 {
            value: self.value * s,
            grad: [self.grad[0] * s, self.grad[1] * s],
            hess: [self.hess[0] * s, self.hess[1] * s, self.hess[2] * s],
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Jet2) -> Jet2 {
        self * o.recip()
    }
}
