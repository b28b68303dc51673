//! Diagonalization, coupling scans and curvature diagnostics.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{build_h_bosonic, counter_blocks, restrict, rotating_blocks, ModelParams, SymmetryBlock};
use crate::spin_algebra::OperatorMatrix;

/// Inputs must be symmetric to this absolute tolerance.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

/// Eigenvalues closer than this count as degenerate ground states.
pub const DEGENERACY_GAP: f64 = 1e-10;

/// Truncation warning fires when `<a†a>` exceeds this fraction of `2 J2`.
pub const TRUNCATION_WARNING_FRACTION: f64 = 0.8;

const SWEEPS_PER_DIM: usize = 64;

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Columns aligned with `eigenvalues`, when requested.
    pub eigenvectors: Option<DMatrix<f64>>,
    pub source_dim: usize,
    /// Conserved value of the block each eigenvalue came from.
    pub block_labels: Option<Vec<f64>>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Full eigendecomposition of a real symmetric matrix.
///
/// Eigenvalues are sorted ascending; each eigenvector is normalized and its
/// largest-magnitude component made positive so the output is reproducible.
pub fn eigh(h: &OperatorMatrix, want_vectors: bool) -> Result<Spectrum> {
    let dim = h.dim();
    if dim == 0 {
        return Err(Error::InvalidParams("cannot diagonalize an empty matrix".into()));
    }
    let asym = h.max_asymmetry();
    if asym > SYMMETRY_TOLERANCE || !h.is_finite() {
        return Err(Error::NotSymmetric { max_asymmetry: asym });
    }
    let max_iterations = SWEEPS_PER_DIM * dim.max(16);
    let decomposition = if want_vectors {
        SymmetricEigen::try_new(h.entries().clone(), f64::EPSILON, max_iterations)
    } else {
        // Eigenvalue-only path skips accumulating the rotations.
        Some(SymmetricEigen {
            eigenvalues: h.entries().symmetric_eigenvalues(),
            eigenvectors: DMatrix::zeros(0, 0),
        })
    }
    .ok_or(Error::NoConvergence { iterations: max_iterations })?;

    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        decomposition.eigenvalues[a]
            .total_cmp(&decomposition.eigenvalues[b])
            .then(a.cmp(&b))
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| decomposition.eigenvalues[i]).collect();
    let eigenvectors = want_vectors.then(|| {
        let mut vectors = DMatrix::zeros(dim, dim);
        for (dst, &src) in order.iter().enumerate() {
            let mut column = decomposition.eigenvectors.column(src).into_owned();
            let norm = column.norm();
            if norm > 0.0 {
                column /= norm;
            }
            let pivot = column.iamax();
            if column[pivot] < 0.0 {
                column.neg_mut();
            }
            vectors.set_column(dst, &column);
        }
        vectors
    });
    Ok(Spectrum {
        eigenvalues,
        eigenvectors,
        source_dim: dim,
        block_labels: None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Approximation {
    /// `g' = 0`, blocks of constant `a†a + J1z`.
    Rotating,
    /// `g = 0`, blocks of constant `a†a - J1z`.
    Counter,
    /// Dense diagonalization of the whole product space.
    Full,
}

impl Approximation {
    pub fn name(self) -> &'static str {
        match self {
            Approximation::Rotating => "rotating",
            Approximation::Counter => "counter",
            Approximation::Full => "full",
        }
    }

    fn check(self, params: &ModelParams) -> Result<()> {
        match self {
            Approximation::Rotating if params.g_prime() != 0.0 => Err(Error::ApproximationMismatch {
                approximation: "rotating",
                requirement: "g' = 0",
            }),
            Approximation::Counter if params.g() != 0.0 => Err(Error::ApproximationMismatch {
                approximation: "counter",
                requirement: "g = 0",
            }),
            _ => Ok(()),
        }
    }

    fn blocks(self, params: &ModelParams) -> Option<Vec<SymmetryBlock>> {
        match self {
            Approximation::Rotating => Some(rotating_blocks(&params.basis())),
            Approximation::Counter => Some(counter_blocks(&params.basis())),
            Approximation::Full => None,
        }
    }
}

impl fmt::Display for Approximation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Approximation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rotating" => Ok(Approximation::Rotating),
            "counter" => Ok(Approximation::Counter),
            "full" => Ok(Approximation::Full),
            other => Err(Error::InvalidParams(format!(
                "unknown approximation '{other}' (expected rotating, counter or full)"
            ))),
        }
    }
}

/// Ground-state value of `ε a†a`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroundExpectation {
    /// Minimum over `candidates`.
    pub value: f64,
    pub energy: f64,
    /// More than one eigenvector within `DEGENERACY_GAP` of the ground energy.
    pub degenerate: bool,
    /// One value per eigenvector in the (near-)degenerate ground space.
    pub candidates: Vec<f64>,
    /// `<a†a>` above `TRUNCATION_WARNING_FRACTION * 2 J2`: results may depend
    /// on the Fock cutoff.
    pub truncation_warning: bool,
}

struct BlockEigen {
    label: f64,
    indices: Vec<usize>,
    eigenvalues: Vec<f64>,
}

/// Per-block eigenvalues of `h`, in block order.
fn block_eigenvalues(h: &OperatorMatrix, blocks: Vec<SymmetryBlock>) -> Result<Vec<BlockEigen>> {
    blocks
        .into_par_iter()
        .map(|block| {
            let sub = restrict(h, &block)?;
            let spectrum = eigh(&sub, false)?;
            Ok(BlockEigen {
                label: block.conserved_value,
                indices: block.indices,
                eigenvalues: spectrum.eigenvalues,
            })
        })
        .collect()
}

fn merge(blocks: &[BlockEigen], dim: usize) -> Spectrum {
    let mut levels: Vec<(f64, f64)> = blocks
        .iter()
        .flat_map(|b| b.eigenvalues.iter().map(move |&e| (e, b.label)))
        .collect();
    levels.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    Spectrum {
        eigenvalues: levels.iter().map(|l| l.0).collect(),
        eigenvectors: None,
        source_dim: dim,
        block_labels: Some(levels.iter().map(|l| l.1).collect()),
    }
}

/// Spectrum of the model, reduced to symmetry blocks when the approximation
/// allows it. Rotating requires `g' = 0`, counter requires `g = 0`.
pub fn blockwise_spectrum(params: &ModelParams, approximation: Approximation) -> Result<Spectrum> {
    analyze(params, approximation).map(|(spectrum, _)| spectrum)
}

/// `<ψ0| ε a†a |ψ0>` for the global ground state.
pub fn ground_expectation_number(params: &ModelParams, approximation: Approximation) -> Result<GroundExpectation> {
    analyze(params, approximation).map(|(_, ground)| ground)
}

fn analyze(params: &ModelParams, approximation: Approximation) -> Result<(Spectrum, GroundExpectation)> {
    approximation.check(params)?;
    let h = build_h_bosonic(params)?;
    let basis = params.basis();
    let photons = |index: usize| basis.photon_number(index) as f64;

    let mut candidates = Vec::new();
    let spectrum = match approximation.blocks(params) {
        Some(blocks) => {
            let eig = block_eigenvalues(&h, blocks)?;
            let spectrum = merge(&eig, h.dim());
            let e0 = spectrum.ground_energy();
            for block in eig.iter().filter(|b| b.eigenvalues[0] <= e0 + DEGENERACY_GAP) {
                let sub = restrict(
                    &h,
                    &SymmetryBlock {
                        conserved_value: block.label,
                        indices: block.indices.clone(),
                    },
                )?;
                let local = eigh(&sub, true)?;
                let vectors = local.eigenvectors.as_ref().expect("vectors requested");
                for (k, &e) in local.eigenvalues.iter().enumerate() {
                    if e > e0 + DEGENERACY_GAP {
                        break;
                    }
                    let v = vectors.column(k);
                    let n: f64 = block.indices.iter().enumerate().map(|(i, &idx)| v[i] * v[i] * photons(idx)).sum();
                    candidates.push(params.epsilon() * n);
                }
            }
            spectrum
        }
        None => {
            let spectrum = eigh(&h, true)?;
            let e0 = spectrum.ground_energy();
            let vectors = spectrum.eigenvectors.as_ref().expect("vectors requested");
            for (k, &e) in spectrum.eigenvalues.iter().enumerate() {
                if e > e0 + DEGENERACY_GAP {
                    break;
                }
                let v = vectors.column(k);
                let n: f64 = (0..h.dim()).map(|idx| v[idx] * v[idx] * photons(idx)).sum();
                candidates.push(params.epsilon() * n);
            }
            spectrum
        }
    };

    let value = candidates.iter().copied().fold(f64::INFINITY, f64::min);
    let n_cut = f64::from(params.j2().twice());
    let ground = GroundExpectation {
        value,
        energy: spectrum.ground_energy(),
        degenerate: candidates.len() > 1,
        truncation_warning: value / params.epsilon() > TRUNCATION_WARNING_FRACTION * n_cut,
        candidates,
    };
    Ok((spectrum, ground))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingKind {
    G,
    GPrime,
}

impl CouplingKind {
    pub fn name(self) -> &'static str {
        match self {
            CouplingKind::G => "g",
            CouplingKind::GPrime => "gprime",
        }
    }

    fn apply(self, template: &ModelParams, value: f64) -> Result<ModelParams> {
        match self {
            CouplingKind::G => template.with_g(value),
            CouplingKind::GPrime => template.with_g_prime(value),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCurve {
    pub coupling_grid: Vec<f64>,
    /// One ascending eigenvalue list per grid point.
    pub energies: Vec<Vec<f64>>,
    pub which_coupling: CouplingKind,
}

impl SpectralCurve {
    /// Energy of level `index` across the grid.
    pub fn level(&self, index: usize) -> Vec<f64> {
        self.energies.iter().map(|e| e[index]).collect()
    }

    pub fn ground_energies(&self) -> Vec<f64> {
        self.level(0)
    }

    pub fn level_count(&self) -> usize {
        self.energies.first().map_or(0, Vec::len)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObservableCurve {
    pub coupling_grid: Vec<f64>,
    /// Ground-state `ε <a†a>` per grid point.
    pub values: Vec<f64>,
    pub degenerate: Vec<bool>,
    pub truncation_warning: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Scan {
    pub spectral: SpectralCurve,
    pub observable: ObservableCurve,
}

fn check_increasing(values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::TooFewPoints { needed: 1, got: 0 });
    }
    if let Some(position) = values.windows(2).position(|w| !(w[1] > w[0])) {
        return Err(Error::NonIncreasingGrid { position: position + 1 });
    }
    Ok(())
}

/// Spectrum and ground-state `ε <a†a>` at each coupling value. Grid points
/// are evaluated in parallel; results keep grid order.
pub fn spectrum_scan(
    template: &ModelParams,
    which: CouplingKind,
    coupling_values: &[f64],
    approximation: Approximation,
) -> Result<Scan> {
    check_increasing(coupling_values)?;
    let points: Vec<(Spectrum, GroundExpectation)> = coupling_values
        .par_iter()
        .map(|&value| {
            which
                .apply(template, value)
                .and_then(|params| analyze(&params, approximation))
                .map_err(|source| Error::AtCoupling {
                    coupling: value,
                    source: Box::new(source),
                })
        })
        .collect::<Result<_>>()?;

    let grid = coupling_values.to_vec();
    let mut energies = Vec::with_capacity(points.len());
    let mut observable = ObservableCurve {
        coupling_grid: grid.clone(),
        values: Vec::with_capacity(points.len()),
        degenerate: Vec::with_capacity(points.len()),
        truncation_warning: Vec::with_capacity(points.len()),
    };
    for (spectrum, ground) in points {
        energies.push(spectrum.eigenvalues);
        observable.values.push(ground.value);
        observable.degenerate.push(ground.degenerate);
        observable.truncation_warning.push(ground.truncation_warning);
    }
    Ok(Scan {
        spectral: SpectralCurve {
            coupling_grid: grid,
            energies,
            which_coupling: which,
        },
        observable,
    })
}

/// Lowest eigenvalue at each coupling; cheaper than a full scan.
pub fn ground_energy_curve(
    template: &ModelParams,
    which: CouplingKind,
    coupling_values: &[f64],
    approximation: Approximation,
) -> Result<Vec<f64>> {
    check_increasing(coupling_values)?;
    coupling_values
        .par_iter()
        .map(|&value| {
            which
                .apply(template, value)
                .and_then(|params| blockwise_spectrum(&params, approximation))
                .map(|s| s.ground_energy())
                .map_err(|source| Error::AtCoupling {
                    coupling: value,
                    source: Box::new(source),
                })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct Curvature {
    /// `(coupling, second difference)` at interior grid points.
    pub points: Vec<(f64, f64)>,
    /// Interior coupling where `|second difference|` is largest.
    pub peak_coupling: f64,
    pub peak_value: f64,
}

/// Relative tolerance on grid spacing.
const UNIFORM_GRID_TOLERANCE: f64 = 1e-8;

/// Central second differences `(y[i+1] - 2 y[i] + y[i-1]) / h²` on a uniform
/// grid, plus the location of the largest magnitude.
pub fn second_difference(grid: &[f64], values: &[f64]) -> Result<Curvature> {
    if grid.len() != values.len() {
        return Err(Error::DimensionMismatch {
            left: grid.len(),
            right: values.len(),
        });
    }
    if grid.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: grid.len() });
    }
    let h = (grid[grid.len() - 1] - grid[0]) / (grid.len() - 1) as f64;
    for w in grid.windows(2) {
        let step = w[1] - w[0];
        if !(h > 0.0) || (step - h).abs() > UNIFORM_GRID_TOLERANCE * h.abs().max(f64::MIN_POSITIVE) {
            return Err(Error::NonUniformGrid { step, expected: h });
        }
    }
    let points: Vec<(f64, f64)> = (1..grid.len() - 1)
        .map(|i| (grid[i], (values[i + 1] - 2.0 * values[i] + values[i - 1]) / (h * h)))
        .collect();
    let (peak_coupling, peak_value) = points
        .iter()
        .copied()
        .fold((points[0].0, points[0].1), |best, p| if p.1.abs() > best.1.abs() { p } else { best });
    Ok(Curvature {
        points,
        peak_coupling,
        peak_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::{BasisTag, HalfInteger};

    fn op(rows: &[&[f64]]) -> OperatorMatrix {
        let n = rows.len();
        OperatorMatrix::new(DMatrix::from_fn(n, n, |r, c| rows[r][c]), BasisTag::ProductFieldMajor)
    }

    fn jc(g: f64, gp: f64, t1: u32, t2: u32) -> ModelParams {
        ModelParams::new(1.0, g, gp, HalfInteger::from_twice(t1), HalfInteger::from_twice(t2)).unwrap()
    }

    #[test]
    fn eigh_diagonal_and_two_by_two() {
        let s = eigh(&op(&[&[3.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]), true).unwrap();
        assert_eq!(s.eigenvalues, vec![1.0, 2.0, 3.0]);
        let v = s.eigenvectors.unwrap();
        assert_eq!(v[(1, 0)], 1.0);

        let g = 0.37;
        let s = eigh(&op(&[&[0.0, g], &[g, 0.0]]), false).unwrap();
        assert!((s.eigenvalues[0] + g).abs() < 1e-15);
        assert!((s.eigenvalues[1] - g).abs() < 1e-15);
        assert!(s.eigenvectors.is_none());
    }

    #[test]
    fn eigh_jc_doublet_zero_photons() {
        // {|0,+1/2>, |1,-1/2>} at ε = 1, g = 0.3
        let s = eigh(&op(&[&[0.5, 0.3], &[0.3, 0.5]]), false).unwrap();
        assert!((s.eigenvalues[0] - 0.2).abs() < 1e-15);
        assert!((s.eigenvalues[1] - 0.8).abs() < 1e-15);
    }

    #[test]
    fn eigh_rejects_asymmetric() {
        let err = eigh(&op(&[&[0.0, 1.0], &[0.5, 0.0]]), false).unwrap_err();
        assert!(matches!(err, Error::NotSymmetric { .. }));
    }

    #[test]
    fn eigh_residual_and_orthonormality() {
        let p = jc(0.6, 0.4, 4, 6);
        let h = build_h_bosonic(&p).unwrap();
        let s = eigh(&h, true).unwrap();
        let v = s.eigenvectors.as_ref().unwrap();
        let tol = 1e-10 * h.norm_inf().max(1.0);
        for (k, &e) in s.eigenvalues.iter().enumerate() {
            let col = v.column(k);
            let r = h.entries() * col - col * e;
            assert!(r.norm() <= tol, "residual {} at level {k}", r.norm());
        }
        let gram = v.transpose() * v;
        let id = DMatrix::<f64>::identity(v.ncols(), v.ncols());
        assert!((gram - id).amax() <= 1e-10);
        let trace: f64 = s.eigenvalues.iter().sum();
        assert!((trace - h.trace()).abs() <= 1e-8 * h.trace().abs().max(1.0));
    }

    #[test]
    fn approximation_mismatch() {
        assert!(matches!(
            blockwise_spectrum(&jc(0.5, 0.1, 1, 2), Approximation::Rotating),
            Err(Error::ApproximationMismatch { approximation: "rotating", .. })
        ));
        assert!(matches!(
            blockwise_spectrum(&jc(0.5, 0.1, 1, 2), Approximation::Counter),
            Err(Error::ApproximationMismatch { approximation: "counter", .. })
        ));
        assert!(blockwise_spectrum(&jc(0.5, 0.1, 1, 2), Approximation::Full).is_ok());
    }

    #[test]
    fn rotating_uncoupled_spectrum() {
        let p = jc(0.0, 0.0, 3, 4);
        let s = blockwise_spectrum(&p, Approximation::Rotating).unwrap();
        let basis = p.basis();
        let mut expected: Vec<f64> = (0..basis.dim())
            .map(|i| basis.photon_number(i) as f64 + basis.m1(i))
            .collect();
        expected.sort_by(f64::total_cmp);
        assert_eq!(s.eigenvalues, expected);
        let labels = s.block_labels.unwrap();
        assert!(labels.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rotating_spin_half_doublets() {
        let g = 0.3;
        let p = jc(g, 0.0, 1, 10);
        let s = blockwise_spectrum(&p, Approximation::Rotating).unwrap();
        let labels = s.block_labels.as_ref().unwrap();
        for n in 0..10 {
            let k = n as f64 + 0.5;
            let mut levels: Vec<f64> = s
                .eigenvalues
                .iter()
                .zip(labels)
                .filter(|(_, &l)| l == k)
                .map(|(&e, _)| e)
                .collect();
            levels.sort_by(f64::total_cmp);
            let centre = n as f64 + 0.5;
            let split = g * ((n + 1) as f64).sqrt();
            assert!((levels[0] - (centre - split)).abs() < 1e-12);
            assert!((levels[1] - (centre + split)).abs() < 1e-12);
        }
    }

    #[test]
    fn ground_expectation_uncoupled_is_zero() {
        let g = ground_expectation_number(&jc(0.0, 0.0, 4, 4), Approximation::Rotating).unwrap();
        assert_eq!(g.value, 0.0);
        assert!(!g.degenerate);
        assert_eq!(g.energy, -2.0);
    }

    #[test]
    fn ground_expectation_rotating_first_crossing() {
        // For J1 = 1/2 the lowest block k = -1/2 (energy -1/2) is undercut by
        // the k = 1/2 doublet 1/2 - g once g > 1.
        let below = ground_expectation_number(&jc(0.9, 0.0, 1, 8), Approximation::Rotating).unwrap();
        assert_eq!(below.value, 0.0);
        let above = ground_expectation_number(&jc(1.1, 0.0, 1, 8), Approximation::Rotating).unwrap();
        assert!((above.value - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ground_expectation_degenerate_crossing() {
        // Exactly at g = 1 the two lowest blocks for J1 = 1/2 are degenerate.
        let at = ground_expectation_number(&jc(1.0, 0.0, 1, 8), Approximation::Rotating).unwrap();
        assert!(at.degenerate);
        assert_eq!(at.candidates.len(), 2);
        assert_eq!(at.value, 0.0);
    }

    #[test]
    fn ground_expectation_full_matches_blocks() {
        let p = jc(0.0, 0.35, 4, 4);
        let a = ground_expectation_number(&p, Approximation::Counter).unwrap();
        let b = ground_expectation_number(&p, Approximation::Full).unwrap();
        assert!((a.value - b.value).abs() < 1e-9);
        assert!((a.energy - b.energy).abs() < 1e-10);
    }

    #[test]
    fn scan_shapes_and_errors() {
        let template = jc(0.0, 0.0, 2, 3);
        let scan = spectrum_scan(&template, CouplingKind::G, &[0.1, 0.2, 0.3], Approximation::Rotating).unwrap();
        assert_eq!(scan.spectral.energies.len(), 3);
        assert!(scan.spectral.energies.iter().all(|e| e.len() == 12));
        assert_eq!(scan.observable.values.len(), 3);

        let single = spectrum_scan(&template, CouplingKind::G, &[0.5], Approximation::Rotating).unwrap();
        assert_eq!(single.spectral.coupling_grid, vec![0.5]);

        assert!(matches!(
            spectrum_scan(&template, CouplingKind::G, &[0.2, 0.1], Approximation::Rotating),
            Err(Error::NonIncreasingGrid { position: 1 })
        ));
        let err = spectrum_scan(&template, CouplingKind::G, &[0.1, 0.2], Approximation::Counter).unwrap_err();
        assert!(matches!(err, Error::AtCoupling { coupling, .. } if coupling == 0.1));
    }

    #[test]
    fn second_difference_exact_cases() {
        let grid: Vec<f64> = (0..9).map(|i| -1.0 + 0.25 * i as f64).collect();
        let quad: Vec<f64> = grid.iter().map(|c| c * c).collect();
        let curv = second_difference(&grid, &quad).unwrap();
        assert!(curv.points.iter().all(|&(_, v)| (v - 2.0).abs() < 1e-12));

        let linear: Vec<f64> = grid.iter().map(|c| 3.0 * c - 1.0).collect();
        let curv = second_difference(&grid, &linear).unwrap();
        assert!(curv.points.iter().all(|&(_, v)| v.abs() < 1e-12));

        assert!(matches!(
            second_difference(&[0.0, 0.1, 0.3], &[0.0, 0.0, 0.0]),
            Err(Error::NonUniformGrid { .. })
        ));
        assert!(matches!(
            second_difference(&[0.0, 0.1], &[0.0, 0.0]),
            Err(Error::TooFewPoints { needed: 3, got: 2 })
        ));
    }

    #[test]
    fn second_difference_finds_kink() {
        let grid: Vec<f64> = (0..21).map(|i| i as f64 * 0.1).collect();
        let kinked: Vec<f64> = grid.iter().map(|&c| if c < 1.05 { 0.0 } else { c - 1.05 }).collect();
        let curv = second_difference(&grid, &kinked).unwrap();
        assert!((curv.peak_coupling - 1.1).abs() < 1e-12 || (curv.peak_coupling - 1.0).abs() < 1e-12);
    }
}
