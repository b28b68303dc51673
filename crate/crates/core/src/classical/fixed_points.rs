use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::{wrap_angle, PhasePoint, ReducedHamiltonian};

/// Onset of saddles in the counter-rotating flow: `1/sqrt(2)`.
pub const COUNTER_CRITICAL_LAMBDA: f64 = std::f64::consts::FRAC_1_SQRT_2;

const DET_TOLERANCE: f64 = 1e-8;
const BOUNDARY_SAMPLES: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixedPointKind {
    Center,
    Saddle,
    Degenerate,
}

impl FixedPointKind {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Center => "center",
            Self::Saddle => "saddle",
            Self::Degenerate => "degenerate",
        }
    }

    fn from_hessian(h: [[f64; 2]; 2]) -> Self {
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.abs() <= DET_TOLERANCE {
            Self::Degenerate
        } else if det > 0.0 {
            Self::Center
        } else {
            Self::Saddle
        }
    }
}

impl std::fmt::Display for FixedPointKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPoint {
    pub point: PhasePoint,
    pub energy: f64,
    pub kind: FixedPointKind,
    /// Located on the `p = -1` pole, where the sphere coordinates are singular.
    pub on_boundary: bool,
}

/// Knobs for the interior Newton search.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointSearch {
    pub seeds_q: usize,
    pub seeds_p: usize,
    pub edge_margin: f64,
    pub max_iterations: usize,
    pub gradient_tolerance: f64,
    pub dedup_radius: f64,
}

impl Default for FixedPointSearch {
    fn default() -> Self {
        Self {
            seeds_q: 64,
            seeds_p: 64,
            edge_margin: 1e-6,
            max_iterations: 100,
            gradient_tolerance: 1e-10,
            dedup_radius: 1e-6,
        }
    }
}

fn check_nontrivial(h: &ReducedHamiltonian) -> Result<()> {
    if let ReducedHamiltonian::Rotating { lambda } = h {
        if *lambda == 0.0 {
            return Err(Error::InvalidParams(
                "rotating Hamiltonian vanishes identically at lambda = 0".into(),
            ));
        }
    }
    Ok(())
}

fn sort_points(points: &mut [FixedPoint]) {
    points.sort_by(|a, b| {
        a.point
            .q
            .partial_cmp(&b.point.q)
            .unwrap_or(Ordering::Equal)
            .then(a.point.p.partial_cmp(&b.point.p).unwrap_or(Ordering::Equal))
    });
}

fn newton(h: &ReducedHamiltonian, q0: f64, p0: f64, opts: &FixedPointSearch) -> Option<PhasePoint> {
    let lo = -1.0 + opts.edge_margin;
    let hi = 1.0 - opts.edge_margin;
    let (mut q, mut p) = (q0, p0);
    let mut gn = h.grad_unchecked(q, p).norm();
    for _ in 0..opts.max_iterations {
        if gn <= 1e-14 {
            break;
        }
        let g = h.grad_unchecked(q, p);
        let m = h.hessian_unchecked(q, p);
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det.abs() < 1e-300 || !det.is_finite() {
            return None;
        }
        let dq = -(m[1][1] * g.dq - m[0][1] * g.dp) / det;
        let dp = -(-m[1][0] * g.dq + m[0][0] * g.dp) / det;
        let mut t = 1.0;
        let mut accepted = false;
        while t > 1e-8 {
            let qn = wrap_angle(q + t * dq);
            let pn = (p + t * dp).clamp(lo, hi);
            let nn = h.grad_unchecked(qn, pn).norm();
            if nn < gn {
                q = qn;
                p = pn;
                gn = nn;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (gn <= opts.gradient_tolerance).then(|| PhasePoint::new(wrap_angle(q), p))
}

/// Interior fixed points (`|p| < 1`) from Newton iterations seeded at local
/// minima of `|∇H|` on a periodic grid.
pub fn find_fixed_points(h: &ReducedHamiltonian, opts: &FixedPointSearch) -> Result<Vec<FixedPoint>> {
    check_nontrivial(h)?;
    let (nq, np) = (opts.seeds_q.max(3), opts.seeds_p.max(3));
    let lo = -1.0 + opts.edge_margin;
    let hi = 1.0 - opts.edge_margin;
    let qs: Vec<f64> = (0..nq).map(|i| -PI + 2.0 * PI * i as f64 / nq as f64).collect();
    let ps: Vec<f64> = (0..np).map(|j| lo + (hi - lo) * j as f64 / (np - 1) as f64).collect();
    let norm: Vec<Vec<f64>> = qs
        .iter()
        .map(|&q| ps.iter().map(|&p| h.grad_unchecked(q, p).norm()).collect())
        .collect();

    let mut found: Vec<(PhasePoint, f64)> = Vec::new();
    for i in 0..nq {
        for j in 0..np {
            let v = norm[i][j];
            let mut is_min = true;
            'nb: for di in [nq - 1, 0, 1] {
                for dj in [-1i64, 0, 1] {
                    let jj = j as i64 + dj;
                    if (di == 0 && dj == 0) || jj < 0 || jj >= np as i64 {
                        continue;
                    }
                    if norm[(i + di) % nq][jj as usize] < v {
                        is_min = false;
                        break 'nb;
                    }
                }
            }
            if !is_min {
                continue;
            }
            if let Some(x) = newton(h, qs[i], ps[j], opts) {
                let gn = h.grad_unchecked(x.q, x.p).norm();
                match found.iter_mut().find(|(y, _)| y.distance(&x) < opts.dedup_radius) {
                    Some(slot) if gn < slot.1 => *slot = (x, gn),
                    Some(_) => {}
                    None => found.push((x, gn)),
                }
            }
        }
    }

    let mut points: Vec<FixedPoint> = found
        .into_iter()
        .map(|(x, _)| FixedPoint {
            point: x,
            energy: h.value_unchecked(x.q, x.p),
            kind: FixedPointKind::from_hessian(h.hessian_unchecked(x.q, x.p)),
            on_boundary: false,
        })
        .collect();
    sort_points(&mut points);
    Ok(points)
}

fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let mut fa = f(a);
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m == a || m == b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn golden_min(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if f(c) < f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - r * (b - a);
        d = a + r * (b - a);
    }
    0.5 * (a + b)
}

/// Fixed points on the `p = -1` pole.
///
/// There `∂H/∂q` vanishes identically, so the points are the roots of
/// `∂H/∂p(q, -1)` in `q`.
pub fn boundary_fixed_points(h: &ReducedHamiltonian) -> Result<Vec<FixedPoint>> {
    check_nontrivial(h)?;
    let n = BOUNDARY_SAMPLES;
    let step = 2.0 * PI / n as f64;
    let f = |q: f64| h.grad_unchecked(q, -1.0).dp;
    let mut samples: Vec<f64> = (0..=n).map(|i| -PI + step * i as f64).collect();

    // Tangential roots hide between samples; refine the extrema of f first.
    let mut extra = Vec::new();
    for i in 0..n {
        let (a, b, c) = (f(samples[(i + n - 1) % n]), f(samples[i]), f(samples[i + 1]));
        if (b <= a && b <= c) || (b >= a && b >= c) {
            let sign = if b <= a && b <= c { 1.0 } else { -1.0 };
            let x = golden_min(|q| sign * f(q), samples[i] - step, samples[i] + step);
            extra.push(x);
        }
    }
    for x in extra {
        let w = wrap_angle(x);
        samples.push(if w >= PI { w - 2.0 * PI } else { w });
    }
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap_or(Ordering::Equal));
    samples.dedup();

    let mut roots: Vec<f64> = Vec::new();
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (fa, fb) = (f(a), f(b));
        if fa == 0.0 {
            roots.push(a);
        } else if fa * fb < 0.0 {
            roots.push(bisect(f, a, b));
        }
    }

    let mut points: Vec<FixedPoint> = Vec::new();
    for q in roots {
        let q = wrap_angle(q);
        if points.iter().any(|fp| wrap_angle(fp.point.q - q).abs() < 1e-9) {
            continue;
        }
        points.push(FixedPoint {
            point: PhasePoint::new(q, -1.0),
            energy: h.value_unchecked(q, -1.0),
            kind: FixedPointKind::from_hessian(h.hessian_unchecked(q, -1.0)),
            on_boundary: true,
        });
    }
    sort_points(&mut points);
    Ok(points)
}

/// Interior and boundary fixed points together, sorted by `(q, p)`.
pub fn all_fixed_points(h: &ReducedHamiltonian, opts: &FixedPointSearch) -> Result<Vec<FixedPoint>> {
    let mut points = find_fixed_points(h, opts)?;
    points.extend(boundary_fixed_points(h)?);
    sort_points(&mut points);
    Ok(points)
}

fn has_saddle(h: &ReducedHamiltonian) -> Result<bool> {
    Ok(all_fixed_points(h, &FixedPointSearch::default())?
        .iter()
        .any(|fp| fp.kind == FixedPointKind::Saddle))
}

/// Bisects the counter coupling for the onset of a saddle point.
pub fn critical_coupling_scan(lo: f64, hi: f64, tol: f64) -> Result<f64> {
    if !(lo.is_finite() && hi.is_finite() && lo > 0.0 && hi > lo && tol > 0.0) {
        return Err(Error::InvalidParams(format!(
            "need 0 < lo < hi and tol > 0, got [{lo}, {hi}] tol {tol}"
        )));
    }
    let pred = |c: f64| -> Result<bool> { has_saddle(&ReducedHamiltonian::counter(c)?) };
    if pred(lo)? || !pred(hi)? {
        return Err(Error::NoBracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    while b - a > tol {
        let m = 0.5 * (a + b);
        if pred(m)? {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Energy of the level through the saddle points.
pub fn separatrix_energy(h: &ReducedHamiltonian) -> Result<f64> {
    let points = all_fixed_points(h, &FixedPointSearch::default())?;
    let critical = match h {
        ReducedHamiltonian::Counter { .. } => COUNTER_CRITICAL_LAMBDA,
        ReducedHamiltonian::Rotating { .. } => 0.0,
    };
    points
        .iter()
        .find(|fp| fp.kind == FixedPointKind::Saddle)
        .map(|fp| fp.energy)
        .ok_or(Error::NoSaddle { critical })
}
