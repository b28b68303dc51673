//! The M-atom Jaynes-Cummings Hamiltonian
//!
//! `H = ε a†a + ε J1z + g (a J1+ + a† J1-) + g' (a† J1+ + a J1-)`
//!
//! built either from truncated bosons or, after spinorizing the field, from two
//! spins. Both builders act on the same field-major product basis and produce
//! identical matrices.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::spin_algebra::{
    add_kron_scaled, hp_spinorize, inverse_sqrt_gap, make_boson_operators, make_spin_operators, BasisTag,
    HalfInteger, OperatorMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    epsilon: f64,
    g: f64,
    g_prime: f64,
    j1: HalfInteger,
    j2: HalfInteger,
}

impl ModelParams {
    /// `j1` is the atomic pseudo-spin (`M = 2 J1` atoms); `j2` is the field
    /// spin, which also fixes the Fock truncation `n_max = 2 J2`.
    pub fn new(epsilon: f64, g: f64, g_prime: f64, j1: HalfInteger, j2: HalfInteger) -> Result<Self> {
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParams(format!("epsilon must be > 0, got {epsilon}")));
        }
        if !(g.is_finite() && g >= 0.0) {
            return Err(Error::InvalidParams(format!("g must be >= 0, got {g}")));
        }
        if !(g_prime.is_finite() && g_prime >= 0.0) {
            return Err(Error::InvalidParams(format!("g' must be >= 0, got {g_prime}")));
        }
        if j1.twice() < 1 || j2.twice() < 1 {
            return Err(Error::InvalidParams(format!(
                "spins must be at least 1/2, got J1 = {j1}, J2 = {j2}"
            )));
        }
        Ok(Self { epsilon, g, g_prime, j1, j2 })
    }

    /// From the atom-count form: `g = G / sqrt(M)`, `g' = G' / sqrt(M)`,
    /// `J1 = M / 2`.
    pub fn from_collective(epsilon: f64, big_g: f64, big_g_prime: f64, atoms: u32, j2: HalfInteger) -> Result<Self> {
        if atoms == 0 {
            return Err(Error::InvalidParams("atom count M must be >= 1".into()));
        }
        let root = f64::from(atoms).sqrt();
        Self::new(epsilon, big_g / root, big_g_prime / root, HalfInteger::from_twice(atoms), j2)
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn g_prime(&self) -> f64 {
        self.g_prime
    }

    pub fn j1(&self) -> HalfInteger {
        self.j1
    }

    pub fn j2(&self) -> HalfInteger {
        self.j2
    }

    pub fn atoms(&self) -> u32 {
        self.j1.twice()
    }

    pub fn with_g(self, g: f64) -> Result<Self> {
        Self::new(self.epsilon, g, self.g_prime, self.j1, self.j2)
    }

    pub fn with_g_prime(self, g_prime: f64) -> Result<Self> {
        Self::new(self.epsilon, self.g, g_prime, self.j1, self.j2)
    }

    pub fn basis(&self) -> ProductBasis {
        ProductBasis::new(self.j1, self.j2)
    }
}

/// Field-major product basis: `index = n (2 J1 + 1) + (m1 + J1)`,
/// `n = J2 + m2 = 0 .. 2 J2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductBasis {
    pub j1: HalfInteger,
    pub j2: HalfInteger,
}

impl ProductBasis {
    pub fn new(j1: HalfInteger, j2: HalfInteger) -> Self {
        Self { j1, j2 }
    }

    pub fn dim(&self) -> usize {
        self.j1.dim() * self.j2.dim()
    }

    pub fn atom_dim(&self) -> usize {
        self.j1.dim()
    }

    pub fn field_dim(&self) -> usize {
        self.j2.dim()
    }

    /// `(n, r1)` with `r1 = m1 + J1`.
    pub fn encode(&self, n: usize, r1: usize) -> usize {
        debug_assert!(n < self.field_dim() && r1 < self.atom_dim());
        n * self.atom_dim() + r1
    }

    pub fn decode(&self, index: usize) -> (usize, usize) {
        (index / self.atom_dim(), index % self.atom_dim())
    }

    /// Photon number `n` of a basis index.
    pub fn photon_number(&self, index: usize) -> usize {
        index / self.atom_dim()
    }

    /// Twice the atomic `m1` of a basis index.
    fn twice_m1(&self, index: usize) -> i64 {
        2 * (index % self.atom_dim()) as i64 - i64::from(self.j1.twice())
    }

    pub fn m1(&self, index: usize) -> f64 {
        self.twice_m1(index) as f64 / 2.0
    }
}

/// Basis indices sharing one eigenvalue of a conserved quantity.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryBlock {
    pub conserved_value: f64,
    pub indices: Vec<usize>,
}

impl SymmetryBlock {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

fn check_params(params: &ModelParams) -> Result<()> {
    ModelParams::new(params.epsilon, params.g, params.g_prime, params.j1, params.j2).map(|_| ())
}

/// Bosonic form: truncated Fock field (`n_max = 2 J2`) times the atomic spin.
pub fn build_h_bosonic(params: &ModelParams) -> Result<OperatorMatrix> {
    check_params(params)?;
    let field = make_boson_operators(params.j2.twice() as usize)?;
    let atom = make_spin_operators(params.j1);
    let id_field = OperatorMatrix::identity(field.number.dim(), BasisTag::FockAscendingN);
    let id_atom = OperatorMatrix::identity(atom.jz.dim(), BasisTag::SpinAscendingM);

    let dim = params.basis().dim();
    let mut h = DMatrix::zeros(dim, dim);
    add_kron_scaled(&mut h, &field.number, &id_atom, params.epsilon);
    add_kron_scaled(&mut h, &id_field, &atom.jz, params.epsilon);
    add_kron_scaled(&mut h, &field.a, &atom.jplus, params.g);
    add_kron_scaled(&mut h, &field.adag, &atom.jminus, params.g);
    add_kron_scaled(&mut h, &field.adag, &atom.jplus, params.g_prime);
    add_kron_scaled(&mut h, &field.a, &atom.jminus, params.g_prime);
    Ok(OperatorMatrix::new(h, BasisTag::ProductFieldMajor))
}

/// Two-spin form with the field spinorized:
///
/// `ε J2 + ε (J1z + J2z)
///  + g  [(J2 - J2z)^(-1/2) J2- J1+ + J2+ (J2 - J2z)^(-1/2) J1-]
///  + g' [J2+ (J2 - J2z)^(-1/2) J1+ + (J2 - J2z)^(-1/2) J2- J1-]`.
///
/// The constant `ε J2` is kept so that this agrees with `build_h_bosonic`.
pub fn build_h_two_spin(params: &ModelParams) -> Result<OperatorMatrix> {
    check_params(params)?;
    let field = make_spin_operators(params.j2);
    let atom = make_spin_operators(params.j1);
    let inv = inverse_sqrt_gap(&field)?;
    let lower = inv.matmul(&field.jminus)?; // spinorized a
    let raise = field.jplus.matmul(&inv)?; // spinorized a†

    let id_field = OperatorMatrix::identity(field.jz.dim(), BasisTag::SpinAscendingM);
    let id_atom = OperatorMatrix::identity(atom.jz.dim(), BasisTag::SpinAscendingM);

    let dim = params.basis().dim();
    let mut h = DMatrix::identity(dim, dim) * (params.epsilon * params.j2.value());
    add_kron_scaled(&mut h, &id_field, &atom.jz, params.epsilon);
    add_kron_scaled(&mut h, &field.jz, &id_atom, params.epsilon);
    add_kron_scaled(&mut h, &lower, &atom.jplus, params.g);
    add_kron_scaled(&mut h, &raise, &atom.jminus, params.g);
    add_kron_scaled(&mut h, &raise, &atom.jplus, params.g_prime);
    add_kron_scaled(&mut h, &lower, &atom.jminus, params.g_prime);
    Ok(OperatorMatrix::new(h, BasisTag::ProductFieldMajor))
}

/// `a†a ⊗ 1` on the product basis, built from the spinorized field.
pub fn field_number_full(basis: &ProductBasis) -> Result<OperatorMatrix> {
    let field = hp_spinorize(basis.j2)?;
    let id_atom = OperatorMatrix::identity(basis.atom_dim(), BasisTag::SpinAscendingM);
    Ok(field.number.kron(&id_atom))
}

/// `1 ⊗ J1z` on the product basis.
pub fn atom_jz_full(basis: &ProductBasis) -> OperatorMatrix {
    let atom = make_spin_operators(basis.j1);
    OperatorMatrix::identity(basis.field_dim(), BasisTag::SpinAscendingM).kron(&atom.jz)
}

/// `a†a + J1z`, conserved when `g' = 0`.
pub fn rotating_conserved(basis: &ProductBasis) -> Result<OperatorMatrix> {
    field_number_full(basis)?.add(&atom_jz_full(basis))
}

/// `a†a - J1z`, conserved when `g = 0`.
pub fn counter_conserved(basis: &ProductBasis) -> Result<OperatorMatrix> {
    field_number_full(basis)?.sub(&atom_jz_full(basis))
}

fn group_by_twice_k(basis: &ProductBasis, twice_k: impl Fn(usize) -> i64) -> Vec<SymmetryBlock> {
    let mut keyed: Vec<(i64, usize)> = (0..basis.dim()).map(|i| (twice_k(i), i)).collect();
    keyed.sort_unstable();
    let mut blocks: Vec<SymmetryBlock> = Vec::new();
    let mut current: Option<i64> = None;
    for (k, index) in keyed {
        if current != Some(k) {
            blocks.push(SymmetryBlock {
                conserved_value: k as f64 / 2.0,
                indices: Vec::new(),
            });
            current = Some(k);
        }
        blocks.last_mut().expect("block pushed above").indices.push(index);
    }
    blocks
}

/// Blocks of constant `k = n + m1`, ascending in `k`.
pub fn rotating_blocks(basis: &ProductBasis) -> Vec<SymmetryBlock> {
    group_by_twice_k(basis, |i| 2 * basis.photon_number(i) as i64 + basis.twice_m1(i))
}

/// Blocks of constant `k = n - m1`, ascending in `k`.
pub fn counter_blocks(basis: &ProductBasis) -> Vec<SymmetryBlock> {
    group_by_twice_k(basis, |i| 2 * basis.photon_number(i) as i64 - basis.twice_m1(i))
}

/// Submatrix of `h` on the block's indices.
pub fn restrict(h: &OperatorMatrix, block: &SymmetryBlock) -> Result<OperatorMatrix> {
    if let Some(&bad) = block.indices.iter().find(|&&i| i >= h.dim()) {
        return Err(Error::IndexOutOfRange { index: bad, dim: h.dim() });
    }
    let idx = &block.indices;
    let n = idx.len();
    Ok(OperatorMatrix::new(
        DMatrix::from_fn(n, n, |r, c| h.get(idx[r], idx[c])),
        h.basis(),
    ))
}

/// Largest entry of `h` coupling two different blocks.
pub fn cross_block_residual(h: &OperatorMatrix, blocks: &[SymmetryBlock]) -> f64 {
    let mut owner = vec![usize::MAX; h.dim()];
    for (b, block) in blocks.iter().enumerate() {
        for &i in &block.indices {
            owner[i] = b;
        }
    }
    let mut worst = 0.0_f64;
    for r in 0..h.dim() {
        for c in 0..h.dim() {
            if owner[r] != owner[c] {
                worst = worst.max(h.get(r, c).abs());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_algebra::commutator;

    fn params(eps: f64, g: f64, gp: f64, t1: u32, t2: u32) -> ModelParams {
        ModelParams::new(eps, g, gp, HalfInteger::from_twice(t1), HalfInteger::from_twice(t2)).unwrap()
    }

    #[test]
    fn params_validation() {
        let h = HalfInteger::HALF;
        assert!(ModelParams::new(0.0, 0.1, 0.0, h, h).is_err());
        assert!(ModelParams::new(1.0, -0.1, 0.0, h, h).is_err());
        assert!(ModelParams::new(1.0, 0.1, f64::NAN, h, h).is_err());
        assert!(ModelParams::new(1.0, 0.1, 0.0, HalfInteger::ZERO, h).is_err());
        let p = ModelParams::from_collective(1.0, 2.0, 0.0, 4, h).unwrap();
        assert_eq!(p.j1(), HalfInteger::from_integer(2));
        assert!((p.g() - 1.0).abs() < 1e-15);
        assert_eq!(p.atoms(), 4);
    }

    #[test]
    fn basis_round_trip() {
        let b = ProductBasis::new(HalfInteger::from_twice(3), HalfInteger::from_twice(4));
        assert_eq!(b.dim(), 20);
        for n in 0..5 {
            for r in 0..4 {
                assert_eq!(b.decode(b.encode(n, r)), (n, r));
            }
        }
        let idx = b.encode(2, 0);
        assert_eq!(b.photon_number(idx), 2);
        assert_eq!(b.m1(idx), -1.5);
    }

    #[test]
    fn uncoupled_hamiltonian_is_diagonal() {
        let p = params(1.5, 0.0, 0.0, 3, 4);
        let h = build_h_bosonic(&p).unwrap();
        assert!(h.is_diagonal());
        let basis = p.basis();
        for i in 0..basis.dim() {
            let expected = 1.5 * (basis.photon_number(i) as f64 + basis.m1(i));
            assert!((h.get(i, i) - expected).abs() < 1e-14);
        }
        let ground = h.diagonal().into_iter().fold(f64::INFINITY, f64::min);
        assert!((ground - 1.5 * -1.5).abs() < 1e-14);
    }

    #[test]
    fn trace_counts_photons_only() {
        let p = params(0.7, 0.3, 0.2, 3, 6);
        let h = build_h_bosonic(&p).unwrap();
        let photons: f64 = (0..=6).map(f64::from).sum();
        assert!((h.trace() - 0.7 * photons * 4.0).abs() < 1e-12);
    }

    #[test]
    fn two_spin_equals_bosonic() {
        for (t1, t2) in [(1, 1), (1, 10), (3, 4), (6, 2)] {
            for (g, gp) in [(0.5, 0.0), (0.0, 0.5), (1.0, 1.0)] {
                let p = params(1.0, g, gp, t1, t2);
                let a = build_h_bosonic(&p).unwrap();
                let b = build_h_two_spin(&p).unwrap();
                assert!(a.max_abs_diff(&b).unwrap() <= 1e-12);
                assert_eq!(b.max_asymmetry(), 0.0);
            }
        }
    }

    #[test]
    fn two_spin_uncoupled_diagonal() {
        let p = params(1.0, 0.0, 0.0, 2, 3);
        let h = build_h_two_spin(&p).unwrap();
        let basis = p.basis();
        for i in 0..basis.dim() {
            let (n, _) = basis.decode(i);
            let m2 = n as f64 - 1.5;
            assert!((h.get(i, i) - (1.5 + m2 + basis.m1(i))).abs() < 1e-14);
        }
    }

    #[test]
    fn rotating_block_examples() {
        let b = ProductBasis::new(HalfInteger::HALF, HalfInteger::HALF);
        let blocks = rotating_blocks(&b);
        assert_eq!(blocks[0].conserved_value, -0.5);
        assert_eq!(blocks[0].indices, vec![b.encode(0, 0)]);

        let b = ProductBasis::new(HalfInteger::HALF, HalfInteger::from_integer(25));
        let blocks = rotating_blocks(&b);
        let k_half = blocks.iter().find(|blk| blk.conserved_value == 0.5).unwrap();
        // (n=0, m1=+1/2) and (n=1, m1=-1/2)
        assert_eq!(k_half.indices, vec![b.encode(0, 1), b.encode(1, 0)]);
    }

    #[test]
    fn counter_block_examples() {
        let b = ProductBasis::new(HalfInteger::HALF, HalfInteger::HALF);
        let blocks = counter_blocks(&b);
        assert_eq!(blocks.first().unwrap().conserved_value, -0.5);
        let k_half = blocks.iter().find(|blk| blk.conserved_value == 0.5).unwrap();
        // (n=0, m1=-1/2) and (n=1, m1=+1/2)
        assert_eq!(k_half.indices, vec![b.encode(0, 0), b.encode(1, 1)]);
    }

    #[test]
    fn blocks_partition_basis() {
        for (t1, t2) in [(1, 1), (3, 8), (8, 3), (10, 10)] {
            let b = ProductBasis::new(HalfInteger::from_twice(t1), HalfInteger::from_twice(t2));
            let cap = b.atom_dim().min(b.field_dim());
            for blocks in [rotating_blocks(&b), counter_blocks(&b)] {
                let mut all: Vec<usize> = blocks.iter().flat_map(|blk| blk.indices.clone()).collect();
                all.sort_unstable();
                assert_eq!(all, (0..b.dim()).collect::<Vec<_>>());
                assert!(blocks.iter().all(|blk| blk.len() <= cap));
                assert_eq!(blocks.first().unwrap().conserved_value, -(t1 as f64) / 2.0);
                assert_eq!(
                    blocks.last().unwrap().conserved_value,
                    t2 as f64 + t1 as f64 / 2.0
                );
            }
        }
    }

    #[test]
    fn restrict_decouples_pure_approximations() {
        let rot = params(1.0, 0.7, 0.0, 4, 5);
        let h = build_h_bosonic(&rot).unwrap();
        assert!(cross_block_residual(&h, &rotating_blocks(&rot.basis())) <= 1e-12);

        let ctr = params(1.0, 0.0, 0.7, 4, 5);
        let h = build_h_bosonic(&ctr).unwrap();
        assert!(cross_block_residual(&h, &counter_blocks(&ctr.basis())) <= 1e-12);

        let both = params(1.0, 0.5, 0.5, 1, 1);
        let h = build_h_bosonic(&both).unwrap();
        assert!(cross_block_residual(&h, &counter_blocks(&both.basis())) > 1e-12);
        assert!(cross_block_residual(&h, &rotating_blocks(&both.basis())) > 1e-12);
    }

    #[test]
    fn restrict_single_and_out_of_range() {
        let p = params(1.0, 0.4, 0.0, 2, 2);
        let h = build_h_bosonic(&p).unwrap();
        let blocks = rotating_blocks(&p.basis());
        let single = &blocks[0];
        assert_eq!(single.len(), 1);
        let sub = restrict(&h, single).unwrap();
        assert_eq!(sub.get(0, 0), h.get(single.indices[0], single.indices[0]));
        let bad = SymmetryBlock {
            conserved_value: 0.0,
            indices: vec![0, 99],
        };
        assert!(matches!(restrict(&h, &bad), Err(Error::IndexOutOfRange { index: 99, dim: 9 })));
    }

    #[test]
    fn conserved_quantities_commute() {
        let rot = params(1.0, 0.9, 0.0, 4, 6);
        let h = build_h_two_spin(&rot).unwrap();
        let k = rotating_conserved(&rot.basis()).unwrap();
        assert!(commutator(&h, &k).unwrap().max_abs() <= 1e-12);

        let ctr = params(1.0, 0.0, 0.9, 4, 6);
        let h = build_h_two_spin(&ctr).unwrap();
        let k = counter_conserved(&ctr.basis()).unwrap();
        assert!(commutator(&h, &k).unwrap().max_abs() <= 1e-12);
    }
}
