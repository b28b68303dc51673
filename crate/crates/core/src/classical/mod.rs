//! Classical limit of the two-spin Hamiltonian and its phase-space analysis.
//!
//! Each spin `J_k` is replaced by a point on the unit sphere with canonical
//! pair `p = cos θ`, `q = φ`. The resulting two-degree-of-freedom function
//! reduces, in the sum/difference coordinates, to one degree of freedom for
//! each pure approximation:
//!
//! * rotating:  `H = λ (1 + p) sqrt(1 - p) cos q`
//! * counter:   `H = p + λ' (1 + p) sqrt(1 - p) cos q`
//!
//! Quantum couplings map onto `λ` through `lambda_from_coupling`.

mod contour;
mod fixed_points;
mod orbit;
mod reduced;

pub use contour::{trace_contours, Contour, ContourField, Polyline};
pub use fixed_points::{
    all_fixed_points, boundary_fixed_points, critical_coupling_scan, find_fixed_points, separatrix_energy,
    FixedPoint, FixedPointKind, FixedPointSearch, COUNTER_CRITICAL_LAMBDA,
};
pub use orbit::{integrate_orbit, OrbitShape, Trajectory, BOUNDARY_MARGIN};
pub use reduced::{grad, h_counter, h_rotating, Gradient, ReducedHamiltonian};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spin_algebra::HalfInteger;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalParams {
    pub lambda: f64,
    pub lambda_prime: f64,
    /// Constant of motion dropped from the reduced Hamiltonians.
    pub a_const: f64,
}

impl ClassicalParams {
    pub fn new(lambda: f64, lambda_prime: f64) -> Result<Self> {
        for (name, v) in [("lambda", lambda), ("lambda'", lambda_prime)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::InvalidParams(format!("{name} must be >= 0, got {v}")));
            }
        }
        Ok(Self {
            lambda,
            lambda_prime,
            a_const: 0.0,
        })
    }

    pub fn with_a_const(mut self, a_const: f64) -> Self {
        self.a_const = a_const;
        self
    }

    /// Classical couplings of a quantum model with `J1 = J2`.
    pub fn from_model(params: &ModelParams) -> Result<Self> {
        if params.j1() != params.j2() {
            return Err(Error::InvalidParams(format!(
                "classical reduction needs J1 = J2, got {} and {}",
                params.j1(),
                params.j2()
            )));
        }
        let j = params.j1();
        Self::new(
            lambda_from_coupling(params.g(), params.epsilon(), j),
            lambda_from_coupling(params.g_prime(), params.epsilon(), j),
        )
    }

    pub fn rotating(&self) -> Result<ReducedHamiltonian> {
        ReducedHamiltonian::rotating(self.lambda)
    }

    pub fn counter(&self) -> Result<ReducedHamiltonian> {
        ReducedHamiltonian::counter(self.lambda_prime)
    }
}

/// `λ = g sqrt(J) / ε` for `J1 = J2 = J`.
///
/// Dividing the quantum Hamiltonian by `2 ε J` and letting `a ~ sqrt(J (1 + p2))`,
/// `J1± ~ J sqrt(1 - p1²)` gives `p_a + (g sqrt(J) / ε)(...)`.
pub fn lambda_from_coupling(g: f64, epsilon: f64, j: HalfInteger) -> f64 {
    g * j.value().sqrt() / epsilon
}

pub fn coupling_from_lambda(lambda: f64, epsilon: f64, j: HalfInteger) -> f64 {
    lambda * epsilon / j.value().sqrt()
}

/// `J / sqrt(J (J + 1))`, the largest eigenvalue of the Lieb-normalized `Jz`.
pub fn lieb_ratio(j: HalfInteger) -> Result<f64> {
    if j.twice() < 1 {
        return Err(Error::InvalidParams("Lieb ratio needs J >= 1/2".into()));
    }
    let jv = j.value();
    Ok(jv / (jv * (jv + 1.0)).sqrt())
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(q: f64) -> f64 {
    let mut w = q - 2.0 * PI * (q / (2.0 * PI)).round();
    if w <= -PI {
        w += 2.0 * PI;
    }
    if w > PI {
        w -= 2.0 * PI;
    }
    w
}

/// A point of the reduced one-degree-of-freedom phase space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhasePoint {
    pub q: f64,
    pub p: f64,
}

impl PhasePoint {
    pub fn new(q: f64, p: f64) -> Self {
        Self { q, p }
    }

    pub fn wrapped(self) -> Self {
        Self::new(wrap_angle(self.q), self.p)
    }

    /// Euclidean distance with `q` compared modulo `2π`.
    pub fn distance(&self, other: &PhasePoint) -> f64 {
        wrap_angle(self.q - other.q).hypot(self.p - other.p)
    }
}

/// Canonical pairs of the two spheres, atom (`1`) and field (`2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoSpinPoint {
    pub p1: f64,
    pub q1: f64,
    pub p2: f64,
    pub q2: f64,
}

/// Sum and difference coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumDifferencePoint {
    pub pa: f64,
    pub qa: f64,
    pub pb: f64,
    pub qb: f64,
}

/// `p_a = (p2 + p1)/2, q_a = q2 + q1, p_b = (p2 - p1)/2, q_b = q2 - q1`.
pub fn canonical_transform(x: &TwoSpinPoint) -> SumDifferencePoint {
    SumDifferencePoint {
        pa: (x.p2 + x.p1) / 2.0,
        qa: x.q2 + x.q1,
        pb: (x.p2 - x.p1) / 2.0,
        qb: x.q2 - x.q1,
    }
}

pub fn inverse_canonical_transform(y: &SumDifferencePoint) -> TwoSpinPoint {
    TwoSpinPoint {
        p1: y.pa - y.pb,
        q1: (y.qa - y.qb) / 2.0,
        p2: y.pa + y.pb,
        q2: (y.qa + y.qb) / 2.0,
    }
}

/// Value of the two-spin classical Hamiltonian with its constant split off.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalEnergy {
    /// `ε (p1 + p2) + 2 g sqrt(1 + p2) sqrt(1 - p1²) cos(q2 - q1) + 2 g' (...) cos(q2 + q1)`.
    pub value: f64,
    /// `ε j2` with `j2 → 1` in the classical limit; never folded into `value`.
    pub constant: f64,
}

/// Full classical Hamiltonian on the two unit spheres.
pub fn h_full(x: &TwoSpinPoint, g: f64, g_prime: f64, epsilon: f64) -> Result<ClassicalEnergy> {
    if !(x.p1.abs() <= 1.0 && (-1.0..=1.0).contains(&x.p2)) {
        return Err(Error::DomainViolation(format!(
            "need |p1| <= 1 and -1 <= p2 <= 1, got p1 = {}, p2 = {}",
            x.p1, x.p2
        )));
    }
    if !(x.q1.is_finite() && x.q2.is_finite()) {
        return Err(Error::DomainViolation("angles must be finite".into()));
    }
    let amplitude = (1.0 + x.p2).sqrt() * (1.0 - x.p1 * x.p1).sqrt();
    let value = epsilon * (x.p1 + x.p2)
        + 2.0 * g * amplitude * (x.q2 - x.q1).cos()
        + 2.0 * g_prime * amplitude * (x.q2 + x.q1).cos();
    Ok(ClassicalEnergy {
        value,
        constant: epsilon,
    })
}

/// The Hamiltonian in sum/difference coordinates (energy unit `2ε`):
/// `A + p_a + (λ cos q_b + λ' cos q_a) sqrt(1 + p_a + p_b) sqrt(1 - (p_a - p_b)²)`.
pub fn h_sum_difference(y: &SumDifferencePoint, params: &ClassicalParams) -> Result<f64> {
    let p1 = y.pa - y.pb;
    let p2 = y.pa + y.pb;
    if !(p1.abs() <= 1.0 && (-1.0..=1.0).contains(&p2)) {
        return Err(Error::DomainViolation(format!(
            "sum/difference point maps outside the spheres (p1 = {p1}, p2 = {p2})"
        )));
    }
    let amplitude = (1.0 + p2).sqrt() * (1.0 - p1 * p1).sqrt();
    Ok(params.a_const
        + y.pa
        + params.lambda * amplitude * y.qb.cos()
        + params.lambda_prime * amplitude * y.qa.cos())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(p1: f64, q1: f64, p2: f64, q2: f64) -> TwoSpinPoint {
        TwoSpinPoint { p1, q1, p2, q2 }
    }

    #[test]
    fn lieb_ratios() {
        let r = lieb_ratio(HalfInteger::HALF).unwrap();
        assert!((r - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        let r = lieb_ratio(HalfInteger::from_integer(25)).unwrap();
        assert!((r - 25.0 / 650f64.sqrt()).abs() < 1e-15);
        assert!((r - 0.980_58).abs() < 1e-5);
        let big = lieb_ratio(HalfInteger::from_integer(1_000_000)).unwrap();
        assert!(1.0 - big < 1e-6);
        assert!(lieb_ratio(HalfInteger::ZERO).is_err());
    }

    #[test]
    fn h_full_limits() {
        let x = pt(0.3, 1.0, -0.2, 2.0);
        assert_eq!(h_full(&x, 0.0, 0.0, 1.0).unwrap().value, 0.3 - 0.2);
        for p1 in [-1.0, 1.0] {
            let e = h_full(&pt(p1, 0.4, 0.5, 0.1), 0.7, 0.9, 1.0).unwrap();
            assert!((e.value - (p1 + 0.5)).abs() < 1e-15);
        }
        let e = h_full(&pt(0.0, 0.0, 0.0, 0.0), 0.5, 0.0, 1.0).unwrap();
        assert!((e.value - 1.0).abs() < 1e-15);
        assert_eq!(e.constant, 1.0);
        assert!(h_full(&pt(1.5, 0.0, 0.0, 0.0), 0.5, 0.0, 1.0).is_err());
        assert!(h_full(&pt(0.0, 0.0, -1.1, 0.0), 0.5, 0.0, 1.0).is_err());
    }

    #[test]
    fn canonical_transform_examples() {
        let y = canonical_transform(&pt(0.0, 0.0, 0.0, 0.0));
        assert_eq!((y.pa, y.qa, y.pb, y.qb), (0.0, 0.0, 0.0, 0.0));
        let y = canonical_transform(&pt(1.0, PI / 2.0, 0.0, PI));
        assert_eq!(y.pa, 0.5);
        assert!((y.qa - 1.5 * PI).abs() < 1e-15);
        assert_eq!(y.pb, -0.5);
        assert!((y.qb - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn sum_difference_is_half_of_full_with_lambda_equal_g() {
        let (g, gp) = (0.37, 0.61);
        let params = ClassicalParams::new(g, gp).unwrap();
        for &(p1, q1, p2, q2) in &[(0.1, 0.2, -0.3, 1.4), (-0.8, 2.5, 0.9, -1.0), (0.5, -3.0, 0.0, 0.7)] {
            let x = pt(p1, q1, p2, q2);
            let full = h_full(&x, g, gp, 1.0).unwrap().value;
            let reduced = h_sum_difference(&canonical_transform(&x), &params).unwrap();
            assert!((full / 2.0 - reduced).abs() < 1e-14);
        }
    }

    #[test]
    fn reduced_forms_are_sectors_of_sum_difference() {
        let params = ClassicalParams::new(0.8, 0.0).unwrap().with_a_const(2.5);
        let rot = params.rotating().unwrap();
        let y = SumDifferencePoint { pa: 0.0, qa: 0.3, pb: 0.4, qb: 1.1 };
        let full = h_sum_difference(&y, &params).unwrap();
        assert!((full - 2.5 - rot.value(1.1, 0.4).unwrap()).abs() < 1e-14);

        let params = ClassicalParams::new(0.0, 0.8).unwrap();
        let ctr = params.counter().unwrap();
        let y = SumDifferencePoint { pa: -0.35, qa: 2.0, pb: 0.0, qb: 0.9 };
        let full = h_sum_difference(&y, &params).unwrap();
        assert!((full - ctr.value(2.0, -0.35).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn coupling_lambda_round_trip() {
        let j = HalfInteger::from_integer(25);
        let lambda = lambda_from_coupling(0.2, 1.0, j);
        assert!((lambda - 1.0).abs() < 1e-15);
        assert!((coupling_from_lambda(lambda, 1.0, j) - 0.2).abs() < 1e-15);

        let model = ModelParams::new(1.0, 0.0, 0.1, j, j).unwrap();
        let c = ClassicalParams::from_model(&model).unwrap();
        assert!((c.lambda_prime - 0.5).abs() < 1e-15);
        let mismatched = ModelParams::new(1.0, 0.0, 0.1, j, HalfInteger::from_integer(5)).unwrap();
        assert!(ClassicalParams::from_model(&mismatched).is_err());
    }

    #[test]
    fn wrapping() {
        assert_eq!(wrap_angle(PI), PI);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(3.0 * PI / 2.0) + PI / 2.0).abs() < 1e-15);
        let a = PhasePoint::new(PI - 1e-3, 0.0);
        let b = PhasePoint::new(-PI + 1e-3, 0.0);
        assert!((a.distance(&b) - 2e-3).abs() < 1e-12);
    }
}
