use crate::error::{Error, Result};

use super::PhasePoint;

/// `(1 + p) sqrt(1 - p)`.
fn amp(p: f64) -> f64 {
    (1.0 + p) * (1.0 - p).sqrt()
}

fn amp_d1(p: f64) -> f64 {
    (1.0 - 3.0 * p) / (2.0 * (1.0 - p).sqrt())
}

fn amp_d2(p: f64) -> f64 {
    (3.0 * p - 5.0) / (4.0 * (1.0 - p).powf(1.5))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gradient {
    pub dq: f64,
    pub dp: f64,
}

impl Gradient {
    pub fn norm(&self) -> f64 {
        self.dq.hypot(self.dp)
    }
}

/// One-degree-of-freedom reduced Hamiltonian.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReducedHamiltonian {
    Rotating { lambda: f64 },
    Counter { lambda_prime: f64 },
}

impl ReducedHamiltonian {
    pub fn rotating(lambda: f64) -> Result<Self> {
        check_coupling("lambda", lambda)?;
        Ok(Self::Rotating { lambda })
    }

    pub fn counter(lambda_prime: f64) -> Result<Self> {
        check_coupling("lambda'", lambda_prime)?;
        Ok(Self::Counter { lambda_prime })
    }

    pub fn coupling(&self) -> f64 {
        match *self {
            Self::Rotating { lambda } => lambda,
            Self::Counter { lambda_prime } => lambda_prime,
        }
    }

    pub fn with_coupling(&self, c: f64) -> Result<Self> {
        match self {
            Self::Rotating { .. } => Self::rotating(c),
            Self::Counter { .. } => Self::counter(c),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Rotating { .. } => "rotating",
            Self::Counter { .. } => "counter",
        }
    }

    fn linear(&self) -> f64 {
        match self {
            Self::Rotating { .. } => 0.0,
            Self::Counter { .. } => 1.0,
        }
    }

    pub fn value(&self, q: f64, p: f64) -> Result<f64> {
        if !(p.abs() <= 1.0) || !q.is_finite() {
            return Err(Error::DomainViolation(format!("need |p| <= 1 and finite q, got q = {q}, p = {p}")));
        }
        Ok(self.value_unchecked(q, p))
    }

    pub fn value_at(&self, x: PhasePoint) -> Result<f64> {
        self.value(x.q, x.p)
    }

    pub(crate) fn value_unchecked(&self, q: f64, p: f64) -> f64 {
        let p = p.clamp(-1.0, 1.0);
        self.linear() * p + self.coupling() * amp(p) * q.cos()
    }

    /// `(∂H/∂q, ∂H/∂p)`; the `p` derivative diverges at `p = 1`, so `|p| < 1` is required.
    pub fn grad(&self, q: f64, p: f64) -> Result<Gradient> {
        check_interior(q, p)?;
        Ok(self.grad_unchecked(q, p))
    }

    /// Valid for `-1 <= p < 1`.
    pub(crate) fn grad_unchecked(&self, q: f64, p: f64) -> Gradient {
        let c = self.coupling();
        Gradient {
            dq: -c * amp(p) * q.sin(),
            dp: self.linear() + c * amp_d1(p) * q.cos(),
        }
    }

    /// Hessian in `(q, p)` order.
    pub fn hessian(&self, q: f64, p: f64) -> Result<[[f64; 2]; 2]> {
        check_interior(q, p)?;
        Ok(self.hessian_unchecked(q, p))
    }

    pub(crate) fn hessian_unchecked(&self, q: f64, p: f64) -> [[f64; 2]; 2] {
        let c = self.coupling();
        let qq = -c * amp(p) * q.cos();
        let qp = -c * amp_d1(p) * q.sin();
        let pp = c * amp_d2(p) * q.cos();
        [[qq, qp], [qp, pp]]
    }
}

fn check_coupling(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{name} must be >= 0, got {v}")))
    }
}

fn check_interior(q: f64, p: f64) -> Result<()> {
    if p.abs() < 1.0 && q.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!("need |p| < 1 and finite q, got q = {q}, p = {p}")))
    }
}

/// `λ (1 + p) sqrt(1 - p) cos q`.
pub fn h_rotating(p: f64, q: f64, lambda: f64) -> Result<f64> {
    ReducedHamiltonian::rotating(lambda)?.value(q, p)
}

/// `p + λ' (1 + p) sqrt(1 - p) cos q`.
pub fn h_counter(p: f64, q: f64, lambda_prime: f64) -> Result<f64> {
    ReducedHamiltonian::counter(lambda_prime)?.value(q, p)
}

pub fn grad(h: &ReducedHamiltonian, x: PhasePoint) -> Result<Gradient> {
    h.grad(x.q, x.p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rotating_examples() {
        assert!((h_rotating(0.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((h_rotating(-1.0, 0.7, 1.0).unwrap()).abs() < 1e-15);
        assert!((h_rotating(1.0, 0.7, 1.0).unwrap()).abs() < 1e-15);
        assert!(h_rotating(1.2, 0.0, 1.0).is_err());
    }

    #[test]
    fn counter_examples() {
        assert!((h_counter(0.0, 0.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((h_counter(0.5, 1.3, 0.0).unwrap() - 0.5).abs() < 1e-15);
        let r = h_counter(0.0, PI, 1.0).unwrap();
        assert!((r + 1.0).abs() < 1e-15);
    }

    #[test]
    fn grad_rejects_edge() {
        let h = ReducedHamiltonian::counter(1.0).unwrap();
        assert!(h.grad(0.0, 1.0).is_err());
        assert!(h.grad(0.0, -1.0).is_err());
        assert!(h.hessian(0.0, 1.0).is_err());
        assert!(ReducedHamiltonian::counter(-0.1).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let step = 1e-6;
        for h in [ReducedHamiltonian::rotating(0.8).unwrap(), ReducedHamiltonian::counter(1.3).unwrap()] {
            for &(q, p) in &[(0.3, 0.2), (-2.0, -0.7), (2.9, 0.8), (1.0, -0.1)] {
                let g = h.grad(q, p).unwrap();
                let f = |q: f64, p: f64| h.value(q, p).unwrap();
                let dq = (f(q + step, p) - f(q - step, p)) / (2.0 * step);
                let dp = (f(q, p + step) - f(q, p - step)) / (2.0 * step);
                assert!((g.dq - dq).abs() < 1e-8, "{h:?} dq at {q},{p}");
                assert!((g.dp - dp).abs() < 1e-8, "{h:?} dp at {q},{p}");

                let hs = h.hessian(q, p).unwrap();
                let gq = |q: f64, p: f64| h.grad(q, p).unwrap();
                let hqq = (gq(q + step, p).dq - gq(q - step, p).dq) / (2.0 * step);
                let hqp = (gq(q, p + step).dq - gq(q, p - step).dq) / (2.0 * step);
                let hpp = (gq(q, p + step).dp - gq(q, p - step).dp) / (2.0 * step);
                assert!((hs[0][0] - hqq).abs() < 1e-7);
                assert!((hs[0][1] - hqp).abs() < 1e-7);
                assert!((hs[1][0] - hqp).abs() < 1e-7);
                assert!((hs[1][1] - hpp).abs() < 1e-7);
            }
        }
    }
}
