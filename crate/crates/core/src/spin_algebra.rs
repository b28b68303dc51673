//! Finite matrix representations of SU(2) spins and truncated bosons, and the
//! Holstein-Primakoff map in both directions.
//!
//! Conventions: spin bases ascend in `m` (row `r` holds `m = r - J`), Fock
//! bases ascend in `n`. Bosonization relates the two through the reversal
//! `n = J - m`; spinorization through the shift `n = J + m`.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// A non-negative integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInteger {
    twice_value: u32,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice_value: 0 };
    pub const HALF: HalfInteger = HalfInteger { twice_value: 1 };

    pub const fn from_twice(twice_value: u32) -> Self {
        Self { twice_value }
    }

    pub const fn from_integer(value: u32) -> Self {
        Self {
            twice_value: 2 * value,
        }
    }

    /// Accepts values such as `0.5`, `12.5` or `25`; anything that is not a
    /// multiple of one half is rejected.
    pub fn from_f64(value: f64) -> Result<Self> {
        let twice = 2.0 * value;
        if !value.is_finite() || value < 0.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidParams(format!(
                "{value} is not a non-negative multiple of 1/2"
            )));
        }
        if twice.round() > f64::from(u32::MAX) {
            return Err(Error::InvalidParams(format!("{value} is too large")));
        }
        Ok(Self::from_twice(twice.round() as u32))
    }

    pub const fn twice(self) -> u32 {
        self.twice_value
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice_value) / 2.0
    }

    /// Dimension `2J + 1` of the spin-J representation.
    pub const fn dim(self) -> usize {
        self.twice_value as usize + 1
    }

    pub const fn is_integer(self) -> bool {
        self.twice_value.is_multiple_of(2)
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice_value / 2)
        } else {
            write!(f, "{}/2", self.twice_value)
        }
    }
}

impl FromStr for HalfInteger {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let num: u32 = num
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("cannot parse '{s}' as a half-integer")))?;
            return match den.trim() {
                "1" => Ok(Self::from_integer(num)),
                "2" => Ok(Self::from_twice(num)),
                _ => Err(Error::InvalidParams(format!("'{s}' is not a half-integer"))),
            };
        }
        let value: f64 = s
            .parse()
            .map_err(|_| Error::InvalidParams(format!("cannot parse '{s}' as a half-integer")))?;
        Self::from_f64(value)
    }
}

/// Which basis an operator's rows and columns refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTag {
    /// `|m>` with `m = -J .. J` ascending.
    SpinAscendingM,
    /// `|n>` with `n = 0 .. n_max` ascending.
    FockAscendingN,
    /// Field (outer) times atom (inner), see `ProductBasis`.
    ProductFieldMajor,
}

/// Dense real square matrix tagged with its basis.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    entries: DMatrix<f64>,
    basis: BasisTag,
}

impl OperatorMatrix {
    /// Panics if `entries` is not square.
    pub fn new(entries: DMatrix<f64>, basis: BasisTag) -> Self {
        assert!(entries.is_square(), "operator matrices must be square");
        Self { entries, basis }
    }

    pub fn zeros(dim: usize, basis: BasisTag) -> Self {
        Self::new(DMatrix::zeros(dim, dim), basis)
    }

    pub fn identity(dim: usize, basis: BasisTag) -> Self {
        Self::new(DMatrix::identity(dim, dim), basis)
    }

    pub fn from_diagonal(diagonal: &[f64], basis: BasisTag) -> Self {
        let n = diagonal.len();
        Self::new(DMatrix::from_fn(n, n, |r, c| if r == c { diagonal[r] } else { 0.0 }), basis)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    pub fn with_basis(mut self, basis: BasisTag) -> Self {
        self.basis = basis;
        self
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.entries.transpose(), self.basis)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.entries.diagonal().iter().copied().collect()
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    /// Largest row sum of absolute values.
    pub fn norm_inf(&self) -> f64 {
        self.entries
            .row_iter()
            .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_asymmetry(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0_f64;
        for r in 0..n {
            for c in (r + 1)..n {
                worst = worst.max((self.entries[(r, c)] - self.entries[(c, r)]).abs());
            }
        }
        worst
    }

    pub fn is_diagonal(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| r == c || self.entries[(r, c)] == 0.0))
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(&self.entries * &other.entries, self.basis))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(&self.entries + &other.entries, self.basis))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self::new(&self.entries - &other.entries, self.basis))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self::new(&self.entries * factor, self.basis)
    }

    /// Largest entrywise difference; errors on mismatched dimensions.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_dim(other)?;
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs())))
    }

    /// `self ⊗ other`, with `self` as the outer (slow) index.
    pub fn kron(&self, other: &Self) -> Self {
        Self::new(self.entries.kronecker(&other.entries), BasisTag::ProductFieldMajor)
    }

    /// Applies `f` to the eigenvalues of a diagonal operator.
    pub fn map_diagonal(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        if !self.is_diagonal() {
            return Err(Error::InvalidParams(
                "functional calculus is only implemented for diagonal operators".into(),
            ));
        }
        let diag: Vec<f64> = self.diagonal().into_iter().map(f).collect();
        Ok(Self::from_diagonal(&diag, self.basis))
    }

    /// Conjugates by the index permutation `new[r] = old[perm[r]]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        Self::new(
            DMatrix::from_fn(n, n, |r, c| self.entries[(perm[r], perm[c])]),
            self.basis,
        )
    }
}

/// Adds `scale * (outer ⊗ inner)` into `target`, visiting only the nonzero
/// entries of both factors.
pub fn add_kron_scaled(target: &mut DMatrix<f64>, outer: &OperatorMatrix, inner: &OperatorMatrix, scale: f64) {
    let ni = inner.dim();
    assert_eq!(target.nrows(), outer.dim() * ni);
    if scale == 0.0 {
        return;
    }
    let inner_nz: Vec<(usize, usize, f64)> = nonzeros(inner).collect();
    for (r, c, v) in nonzeros(outer) {
        for &(ir, ic, w) in &inner_nz {
            target[(r * ni + ir, c * ni + ic)] += scale * v * w;
        }
    }
}

fn nonzeros(op: &OperatorMatrix) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
    let n = op.dim();
    (0..n)
        .flat_map(move |r| (0..n).map(move |c| (r, c, op.entries[(r, c)])))
        .filter(|&(_, _, v)| v != 0.0)
}

/// `AB - BA`.
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.check_dim(b)?;
    Ok(OperatorMatrix::new(
        &a.entries * &b.entries - &b.entries * &a.entries,
        a.basis,
    ))
}

#[derive(Clone, Debug)]
pub struct SpinOps {
    pub j: HalfInteger,
    pub jz: OperatorMatrix,
    pub jplus: OperatorMatrix,
    pub jminus: OperatorMatrix,
}

impl SpinOps {
    /// `m` value of row `r`.
    pub fn m_of(&self, r: usize) -> f64 {
        r as f64 - self.j.value()
    }
}

/// Standard spin-J matrices, `<m+1|J+|m> = sqrt(J(J+1) - m(m+1))`.
pub fn make_spin_operators(j: HalfInteger) -> SpinOps {
    let dim = j.dim();
    let jv = j.value();
    let m = |r: usize| r as f64 - jv;
    let jz = OperatorMatrix::from_diagonal(&(0..dim).map(m).collect::<Vec<_>>(), BasisTag::SpinAscendingM);
    let mut jplus = DMatrix::zeros(dim, dim);
    for r in 0..dim.saturating_sub(1) {
        jplus[(r + 1, r)] = (jv * (jv + 1.0) - m(r) * (m(r) + 1.0)).sqrt();
    }
    let jplus = OperatorMatrix::new(jplus, BasisTag::SpinAscendingM);
    let jminus = jplus.transpose();
    SpinOps { j, jz, jplus, jminus }
}

#[derive(Clone, Debug)]
pub struct BosonOps {
    pub n_max: usize,
    pub a: OperatorMatrix,
    pub adag: OperatorMatrix,
    pub number: OperatorMatrix,
}

/// Bosonic operators on `|0> .. |n_max>`, hard-truncated so that `a†` kills
/// the top state.
pub fn make_boson_operators(n_max: usize) -> Result<BosonOps> {
    if n_max < 1 {
        return Err(Error::InvalidParams(format!(
            "Fock truncation n_max must be at least 1, got {n_max}"
        )));
    }
    let dim = n_max + 1;
    let mut adag = DMatrix::zeros(dim, dim);
    for n in 0..n_max {
        adag[(n + 1, n)] = ((n + 1) as f64).sqrt();
    }
    let adag = OperatorMatrix::new(adag, BasisTag::FockAscendingN);
    let a = adag.transpose();
    let number = OperatorMatrix::from_diagonal(
        &(0..dim).map(|n| n as f64).collect::<Vec<_>>(),
        BasisTag::FockAscendingN,
    );
    Ok(BosonOps { n_max, a, adag, number })
}

/// Spin operators expressed through bosons, in the Fock basis.
#[derive(Clone, Debug)]
pub struct BosonizedSpin {
    pub j: HalfInteger,
    pub jz: OperatorMatrix,
    pub jplus: OperatorMatrix,
    pub jminus: OperatorMatrix,
}

impl BosonizedSpin {
    /// Reorders into the ascending-`m` spin basis (`n = J - m`, i.e. row
    /// reversal).
    pub fn to_spin_basis(&self) -> SpinOps {
        let perm = reversal(self.j.dim());
        let relabel = |op: &OperatorMatrix| op.permuted(&perm).with_basis(BasisTag::SpinAscendingM);
        SpinOps {
            j: self.j,
            jz: relabel(&self.jz),
            jplus: relabel(&self.jplus),
            jminus: relabel(&self.jminus),
        }
    }
}

/// Holstein-Primakoff bosonization:
/// `Jz = J - a†a`, `J+ = sqrt(2J - a†a) a`, `J- = a† sqrt(2J - a†a)`,
/// with the boson space truncated at `n_max = 2J`.
pub fn hp_bosonize(j: HalfInteger) -> Result<BosonizedSpin> {
    if j.twice() < 1 {
        return Err(Error::InvalidParams("bosonization needs J >= 1/2".into()));
    }
    let bosons = make_boson_operators(j.twice() as usize)?;
    let jv = j.value();
    let dim = j.dim();
    let jz = OperatorMatrix::identity(dim, BasisTag::FockAscendingN)
        .scale(jv)
        .sub(&bosons.number)?;
    let root = bosons.number.map_diagonal(|n| (2.0 * jv - n).max(0.0).sqrt())?;
    let jplus = root.matmul(&bosons.a)?;
    let jminus = bosons.adag.matmul(&root)?;
    Ok(BosonizedSpin { j, jz, jplus, jminus })
}

/// Bosonic operators expressed through a spin, in the spin basis.
#[derive(Clone, Debug)]
pub struct SpinorizedBoson {
    pub j: HalfInteger,
    pub number: OperatorMatrix,
    pub adag: OperatorMatrix,
    pub a: OperatorMatrix,
}

impl SpinorizedBoson {
    /// Relabels into the Fock basis. The shift `n = J + m` maps row `r` onto
    /// row `r`, so only the tag changes.
    pub fn to_fock_basis(&self) -> BosonOps {
        let relabel = |op: &OperatorMatrix| op.clone().with_basis(BasisTag::FockAscendingN);
        BosonOps {
            n_max: self.j.twice() as usize,
            a: relabel(&self.a),
            adag: relabel(&self.adag),
            number: relabel(&self.number),
        }
    }
}

/// `(J - Jz)^(-1/2)` with the pseudo-inverse convention: the zero eigenvalue
/// at `m = +J` maps to zero.
pub fn inverse_sqrt_gap(spin: &SpinOps) -> Result<OperatorMatrix> {
    let jv = spin.j.value();
    spin.jz.map_diagonal(|m| {
        let gap = jv - m;
        if gap.abs() < 0.5 {
            0.0
        } else {
            1.0 / gap.sqrt()
        }
    })
}

/// The inverted map ("spinorization"):
/// `a†a = J + Jz`, `a† = J+ (J - Jz)^(-1/2)`, `a = (J - Jz)^(-1/2) J-`.
pub fn hp_spinorize(j2: HalfInteger) -> Result<SpinorizedBoson> {
    if j2.twice() < 1 {
        return Err(Error::InvalidParams("spinorization needs J >= 1/2".into()));
    }
    let spin = make_spin_operators(j2);
    let inv = inverse_sqrt_gap(&spin)?;
    let number = OperatorMatrix::identity(j2.dim(), BasisTag::SpinAscendingM)
        .scale(j2.value())
        .add(&spin.jz)?;
    let adag = spin.jplus.matmul(&inv)?;
    let a = inv.matmul(&spin.jminus)?;
    Ok(SpinorizedBoson { j: j2, number, adag, a })
}

fn reversal(dim: usize) -> Vec<usize> {
    (0..dim).rev().collect()
}
