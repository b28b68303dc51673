use crate::error::{Error, Result};

use super::{PhasePoint, ReducedHamiltonian};

/// Orbits stop once `|p|` comes this close to the poles.
pub const BOUNDARY_MARGIN: f64 = 1e-6;
const MAX_DT: f64 = 1e-2;

#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub dt: f64,
    /// `q` is not wrapped, so windings stay visible.
    pub points: Vec<PhasePoint>,
    pub hit_boundary: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OrbitShape {
    /// Returned to the starting point after roughly `period`.
    Closed { period: f64 },
    /// `q` advanced by a full turn.
    Open,
    Undetermined,
}

impl Trajectory {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points.len()).map(move |k| k as f64 * self.dt)
    }

    pub fn energies(&self, h: &ReducedHamiltonian) -> Vec<f64> {
        self.points.iter().map(|x| h.value_unchecked(x.q, x.p)).collect()
    }

    pub fn max_energy_drift(&self, h: &ReducedHamiltonian) -> f64 {
        let e = self.energies(h);
        e.iter().map(|v| (v - e[0]).abs()).fold(0.0, f64::max)
    }

    pub fn shape(&self, tol: f64) -> OrbitShape {
        let start = self.points[0];
        if self.points.iter().any(|x| (x.q - start.q).abs() >= 2.0 * std::f64::consts::PI) {
            return OrbitShape::Open;
        }
        let dist = |x: &PhasePoint| (x.q - start.q).hypot(x.p - start.p);
        let Some(left) = self.points.iter().position(|x| dist(x) > 2.0 * tol) else {
            return OrbitShape::Undetermined;
        };
        match self.points[left..].iter().position(|x| dist(x) < tol) {
            Some(k) => OrbitShape::Closed {
                period: (left + k) as f64 * self.dt,
            },
            None => OrbitShape::Undetermined,
        }
    }
}

/// RK4 for `q' = ∂H/∂p`, `p' = -∂H/∂q`.
pub fn integrate_orbit(h: &ReducedHamiltonian, start: PhasePoint, dt: f64, steps: usize) -> Result<Trajectory> {
    if !(start.p.abs() < 1.0 - BOUNDARY_MARGIN) || !start.q.is_finite() {
        return Err(Error::DomainViolation(format!(
            "orbit must start with |p| < {}, got p = {}",
            1.0 - BOUNDARY_MARGIN,
            start.p
        )));
    }
    if !(dt > 0.0 && dt <= MAX_DT) {
        return Err(Error::InvalidParams(format!("dt must lie in (0, {MAX_DT}], got {dt}")));
    }
    if steps == 0 {
        return Err(Error::InvalidParams("steps must be positive".into()));
    }

    let field = |q: f64, p: f64| -> Option<(f64, f64)> {
        if p.abs() >= 1.0 {
            return None;
        }
        let g = h.grad_unchecked(q, p);
        Some((g.dp, -g.dq))
    };

    let mut points = Vec::with_capacity(steps + 1);
    points.push(start);
    let (mut q, mut p) = (start.q, start.p);
    let mut hit_boundary = false;
    for _ in 0..steps {
        let next = (|| {
            let k1 = field(q, p)?;
            let k2 = field(q + 0.5 * dt * k1.0, p + 0.5 * dt * k1.1)?;
            let k3 = field(q + 0.5 * dt * k2.0, p + 0.5 * dt * k2.1)?;
            let k4 = field(q + dt * k3.0, p + dt * k3.1)?;
            Some((
                q + dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
                p + dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
            ))
        })();
        match next {
            Some((qn, pn)) if pn.abs() < 1.0 - BOUNDARY_MARGIN => {
                q = qn;
                p = pn;
                points.push(PhasePoint::new(q, p));
            }
            _ => {
                hit_boundary = true;
                break;
            }
        }
    }
    Ok(Trajectory { dt, points, hit_boundary })
}
