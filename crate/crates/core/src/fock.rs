//! Truncated two-mode Fock space.
//!
//! States `|n1, n2⟩` with `0 ≤ n_i < D` are ordered lexicographically, so the
//! basis index is `n1·D + n2`. Two representations of the pseudo-chiral
//! ladder algebra live on this space:
//!
//! * [`Representation::R1`]: the modes are ordinary hermitian oscillators
//!   with quadratures `x_i, p_i`; `x_±, p_±` and `a, ã, b, b̃` are built from
//!   them and come out non-hermitian.
//! * [`Representation::R2`]: the basis is read as `|n_+, n_−⟩`; `a, b` are the
//!   standard lowering matrices and `ã, b̃` the standard raising matrices.
//!
//! Truncation breaks polynomial identities only near the edge `n_i = D − 1`;
//! [`InteriorProjector`] restricts checks to states at least `margin` levels
//! away from it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::classical::OscParams;
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Representation {
    /// Operators built from hermitian-mode quadratures.
    R1,
    /// Abstract biorthogonal ladder algebra on the `(n_+, n_−)` basis.
    R2,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::R1 => "R1",
            Representation::R2 => "R2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModeBasis {
    dim_per_mode: usize,
    representation: Representation,
}

impl ModeBasis {
    pub const MODES: usize = 2;

    pub fn new(dim_per_mode: usize, representation: Representation) -> Result<Self> {
        if dim_per_mode == 0 {
            return Err(Error::InvalidInput("dimension per mode must be positive".into()));
        }
        Ok(Self {
            dim_per_mode,
            representation,
        })
    }

    pub fn dim_per_mode(&self) -> usize {
        self.dim_per_mode
    }

    pub fn total_dim(&self) -> usize {
        self.dim_per_mode * self.dim_per_mode
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        debug_assert!(n1 < self.dim_per_mode && n2 < self.dim_per_mode);
        n1 * self.dim_per_mode + n2
    }

    pub fn occupations(&self, index: usize) -> (usize, usize) {
        (index / self.dim_per_mode, index % self.dim_per_mode)
    }

    pub(crate) fn require(&self, rep: Representation) -> Result<()> {
        if self.representation == rep {
            Ok(())
        } else {
            Err(Error::WrongRepresentation {
                expected: rep.name(),
                actual: self.representation.name(),
            })
        }
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode < Self::MODES {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "mode index {mode} out of range (two modes)"
            )))
        }
    }
}

impl fmt::Display for ModeBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(D={})", self.representation.name(), self.dim_per_mode)
    }
}

/// Dense operator on a [`ModeBasis`].
///
/// The arithmetic operators panic on basis mismatch; the `try_*` methods and
/// [`commutator`] report it as [`Error::BasisMismatch`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    basis: ModeBasis,
    data: CMatrix,
}

impl OperatorMatrix {
    pub fn new(basis: ModeBasis, data: CMatrix) -> Result<Self> {
        let n = basis.total_dim();
        if data.shape() != (n, n) {
            return Err(Error::InvalidInput(format!(
                "matrix shape {:?} does not match basis {basis} of dimension {n}",
                data.shape()
            )));
        }
        Ok(Self { basis, data })
    }

    pub fn zeros(basis: ModeBasis) -> Self {
        let n = basis.total_dim();
        Self {
            basis,
            data: CMatrix::zeros(n, n),
        }
    }

    pub fn identity(basis: ModeBasis) -> Self {
        let n = basis.total_dim();
        Self {
            basis,
            data: CMatrix::identity(n, n),
        }
    }

    pub fn from_fn(basis: ModeBasis, f: impl FnMut(usize, usize) -> C64) -> Self {
        let n = basis.total_dim();
        Self {
            basis,
            data: CMatrix::from_fn(n, n, f),
        }
    }

    pub fn basis(&self) -> ModeBasis {
        self.basis
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.data
    }

    pub fn into_matrix(self) -> CMatrix {
        self.data
    }

    pub fn adjoint(&self) -> Self {
        Self {
            basis: self.basis,
            data: self.data.adjoint(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            basis: self.basis,
            data: self.data.transpose(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            basis: self.basis,
            data: self.data.map(|z| z.conj()),
        }
    }

    pub fn scaled(&self, k: C64) -> Self {
        Self {
            basis: self.basis,
            data: self.data.map(|z| z * k),
        }
    }

    pub fn max_norm(&self) -> f64 {
        linalg::max_norm(&self.data)
    }

    /// `max |A − A†|`
    pub fn hermiticity_residual(&self) -> f64 {
        linalg::max_norm(&(&self.data - self.data.adjoint()))
    }

    /// Largest off-diagonal entry.
    pub fn off_diagonal_norm(&self) -> f64 {
        let n = self.data.nrows();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| self.data[(i, j)].norm())
            .fold(0.0, f64::max)
    }

    pub fn diagonal(&self) -> Vec<C64> {
        self.data.diagonal().iter().copied().collect()
    }

    /// `max |A − B|`
    pub fn distance(&self, other: &OperatorMatrix) -> Result<f64> {
        Ok(self.try_sub(other)?.max_norm())
    }

    fn same_basis(&self, other: &OperatorMatrix) -> Result<()> {
        if self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: self.basis.to_string(),
                right: other.basis.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &OperatorMatrix) -> Result<Self> {
        self.same_basis(other)?;
        Ok(Self {
            basis: self.basis,
            data: &self.data + &other.data,
        })
    }

    pub fn try_sub(&self, other: &OperatorMatrix) -> Result<Self> {
        self.same_basis(other)?;
        Ok(Self {
            basis: self.basis,
            data: &self.data - &other.data,
        })
    }

    pub fn try_mul(&self, other: &OperatorMatrix) -> Result<Self> {
        self.same_basis(other)?;
        Ok(Self {
            basis: self.basis,
            data: &self.data * &other.data,
        })
    }

    /// `A v`
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.data.ncols() {
            return Err(Error::InvalidInput(format!(
                "vector of length {} for operator of dimension {}",
                v.len(),
                self.data.ncols()
            )));
        }
        Ok((0..self.data.nrows())
            .map(|i| (0..v.len()).map(|j| self.data[(i, j)] * v[j]).sum())
            .collect())
    }
}

macro_rules! binary_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&OperatorMatrix> for &OperatorMatrix {
            type Output = OperatorMatrix;
            fn $method(self, rhs: &OperatorMatrix) -> OperatorMatrix {
                self.$checked(rhs).expect("operator basis mismatch")
            }
        }

        impl $trait<OperatorMatrix> for OperatorMatrix {
            type Output = OperatorMatrix;
            fn $method(self, rhs: OperatorMatrix) -> OperatorMatrix {
                (&self).$checked(&rhs).expect("operator basis mismatch")
            }
        }
    };
}

binary_op!(Add, add, try_add);
binary_op!(Sub, sub, try_sub);
binary_op!(Mul, mul, try_mul);

impl Mul<C64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, k: C64) -> OperatorMatrix {
        self.scaled(k)
    }
}

impl Mul<f64> for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, k: f64) -> OperatorMatrix {
        self.scaled(c(k, 0.0))
    }
}

impl Mul<C64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, k: C64) -> OperatorMatrix {
        self.scaled(k)
    }
}

impl Mul<f64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, k: f64) -> OperatorMatrix {
        self.scaled(c(k, 0.0))
    }
}

impl Neg for &OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.scaled(-ONE)
    }
}

impl Neg for OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        self.scaled(-ONE)
    }
}

/// Lowering operator of one mode: `⟨n−1|a|n⟩ = √n`.
pub fn ladder(basis: ModeBasis, mode: usize) -> Result<OperatorMatrix> {
    basis.check_mode(mode)?;
    let d = basis.dim_per_mode();
    let mut op = OperatorMatrix::zeros(basis);
    for n1 in 0..d {
        for n2 in 0..d {
            let (n, lowered) = if mode == 0 {
                (n1, n1.checked_sub(1).map(|m| basis.index(m, n2)))
            } else {
                (n2, n2.checked_sub(1).map(|m| basis.index(n1, m)))
            };
            if let Some(row) = lowered {
                op.data[(row, basis.index(n1, n2))] = c((n as f64).sqrt(), 0.0);
            }
        }
    }
    Ok(op)
}

/// Diagonal occupation operator of one mode.
pub fn number(basis: ModeBasis, mode: usize) -> Result<OperatorMatrix> {
    basis.check_mode(mode)?;
    let mut op = OperatorMatrix::zeros(basis);
    for i in 0..basis.total_dim() {
        let (n1, n2) = basis.occupations(i);
        op.data[(i, i)] = c(if mode == 0 { n1 } else { n2 } as f64, 0.0);
    }
    Ok(op)
}

/// `x = (a + a†)/√(2ω)`, `p = −i√(ω/2)(a − a†)`.
pub fn quadratures(basis: ModeBasis, mode: usize, params: OscParams) -> Result<(OperatorMatrix, OperatorMatrix)> {
    let w = params.omega();
    let a = ladder(basis, mode)?;
    let ad = a.adjoint();
    let x = (&a + &ad) * (1.0 / (2.0 * w).sqrt());
    let p = (&a - &ad) * c(0.0, -(w / 2.0).sqrt());
    Ok((x, p))
}

/// Complex canonical pairs of the two pseudo-chiral modes.
#[derive(Debug, Clone, PartialEq)]
pub struct PmOperators {
    pub x_plus: OperatorMatrix,
    pub p_plus: OperatorMatrix,
    pub x_minus: OperatorMatrix,
    pub p_minus: OperatorMatrix,
}

/// `p_± = (p1 ± iω x2)/√2`, `x_± = (x1 ± i p2/ω)/√2` from the hermitian-mode
/// quadratures. Only defined in [`Representation::R1`].
pub fn build_pm(basis: ModeBasis, params: OscParams) -> Result<PmOperators> {
    basis.require(Representation::R1)?;
    let w = params.omega();
    let (x1, p1) = quadratures(basis, 0, params)?;
    let (x2, p2) = quadratures(basis, 1, params)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let pm = |sign: f64| {
        let p = (&p1 + &(&x2 * c(0.0, sign * w))) * s;
        let x = (&x1 + &(&p2 * c(0.0, sign / w))) * s;
        (x, p)
    };
    let (x_plus, p_plus) = pm(1.0);
    let (x_minus, p_minus) = pm(-1.0);
    Ok(PmOperators {
        x_plus,
        p_plus,
        x_minus,
        p_minus,
    })
}

/// `a, ã` of the plus mode and `b, b̃` of the minus mode.
#[derive(Debug, Clone, PartialEq)]
pub struct Ladders {
    pub a: OperatorMatrix,
    pub a_tilde: OperatorMatrix,
    pub b: OperatorMatrix,
    pub b_tilde: OperatorMatrix,
}

impl Ladders {
    pub fn basis(&self) -> ModeBasis {
        self.a.basis()
    }
}

/// Pseudo-chiral ladder operators in the basis's representation.
///
/// R1: `a = √(ω/2)(x_+ + ip_+/ω)`, `ã = √(ω/2)(x_+ − ip_+/ω)` and likewise
/// `b, b̃` from `x_−, p_−`. These reduce to `a = (a1 − a2†)/√2`,
/// `ã = (a1† + a2)/√2`, `b = (a1 + a2†)/√2`, `b̃ = (a1† − a2)/√2`.
///
/// R2: standard lowering (`a`, `b`) and raising (`ã`, `b̃`) matrices.
pub fn build_ab(basis: ModeBasis, params: OscParams) -> Result<Ladders> {
    match basis.representation() {
        Representation::R1 => {
            let w = params.omega();
            let pm = build_pm(basis, params)?;
            let k = (w / 2.0).sqrt();
            let lower = |x: &OperatorMatrix, p: &OperatorMatrix, sign: f64| {
                (x + &(p * c(0.0, sign / w))) * k
            };
            Ok(Ladders {
                a: lower(&pm.x_plus, &pm.p_plus, 1.0),
                a_tilde: lower(&pm.x_plus, &pm.p_plus, -1.0),
                b: lower(&pm.x_minus, &pm.p_minus, 1.0),
                b_tilde: lower(&pm.x_minus, &pm.p_minus, -1.0),
            })
        }
        Representation::R2 => {
            let a = ladder(basis, 0)?;
            let b = ladder(basis, 1)?;
            Ok(Ladders {
                a_tilde: a.adjoint(),
                b_tilde: b.adjoint(),
                a,
                b,
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonians {
    pub h_i: OperatorMatrix,
    pub h_plus: OperatorMatrix,
    pub h_minus: OperatorMatrix,
    pub n_plus: OperatorMatrix,
    pub n_minus: OperatorMatrix,
}

impl Hamiltonians {
    /// Removes the zero-point energy `ω/2` from each mode Hamiltonian
    /// (and `ω` from their sum).
    pub fn subtract_zero_point(&self, params: OscParams) -> Self {
        let w = params.omega();
        let id = OperatorMatrix::identity(self.h_plus.basis());
        Self {
            h_i: &self.h_i - &(&id * w),
            h_plus: &self.h_plus - &(&id * (0.5 * w)),
            h_minus: &self.h_minus - &(&id * (0.5 * w)),
            n_plus: self.n_plus.clone(),
            n_minus: self.n_minus.clone(),
        }
    }
}

/// Mode Hamiltonians, their sum and the pseudo-chiral number operators
/// `N_+ = ãa`, `N_− = b̃b`.
///
/// R1: `H_I = ½ g_ij (p_i p_j + ω² x_i x_j)` and `H_± = ½p_±² + ½ω²x_±²`.
/// R2: `H_± = ω(N_± + ½)` and `H_I = H_+ + H_−`.
pub fn build_hamiltonians(basis: ModeBasis, params: OscParams) -> Result<Hamiltonians> {
    let w = params.omega();
    let ladders = build_ab(basis, params)?;
    let n_plus = &ladders.a_tilde * &ladders.a;
    let n_minus = &ladders.b_tilde * &ladders.b;
    match basis.representation() {
        Representation::R1 => {
            let (x1, p1) = quadratures(basis, 0, params)?;
            let (x2, p2) = quadratures(basis, 1, params)?;
            let h_i = (&(&p1 * &p1) + &(&(&x1 * &x1) * (w * w))) * 0.5
                - (&(&p2 * &p2) + &(&(&x2 * &x2) * (w * w))) * 0.5;
            let pm = build_pm(basis, params)?;
            let osc = |x: &OperatorMatrix, p: &OperatorMatrix| {
                (&(p * p) + &(&(x * x) * (w * w))) * 0.5
            };
            Ok(Hamiltonians {
                h_i,
                h_plus: osc(&pm.x_plus, &pm.p_plus),
                h_minus: osc(&pm.x_minus, &pm.p_minus),
                n_plus,
                n_minus,
            })
        }
        Representation::R2 => {
            let id = OperatorMatrix::identity(basis);
            let half = &id * 0.5;
            let h_plus = (&n_plus + &half) * w;
            let h_minus = (&n_minus + &half) * w;
            Ok(Hamiltonians {
                h_i: &h_plus + &h_minus,
                h_plus,
                h_minus,
                n_plus,
                n_minus,
            })
        }
    }
}

/// Eigenvalues with multiplicity, sorted by real then imaginary part.
pub fn spectrum(op: &OperatorMatrix) -> Result<Vec<C64>> {
    linalg::sorted_eigenvalues(op.matrix())
}

/// `AB − BA`
pub fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<OperatorMatrix> {
    a.try_mul(b)?.try_sub(&b.try_mul(a)?)
}

/// Diagonal 0/1 projector onto states with every occupation below `D − margin`.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorProjector {
    basis: ModeBasis,
    margin: usize,
    mask: Vec<bool>,
}

pub fn interior(basis: ModeBasis, margin: usize) -> Result<InteriorProjector> {
    let d = basis.dim_per_mode();
    if margin >= d {
        return Err(Error::InvalidInput(format!(
            "margin {margin} leaves no interior for D = {d}"
        )));
    }
    let mask = (0..basis.total_dim())
        .map(|i| {
            let (n1, n2) = basis.occupations(i);
            n1 < d - margin && n2 < d - margin
        })
        .collect();
    Ok(InteriorProjector { basis, margin, mask })
}

impl InteriorProjector {
    pub fn basis(&self) -> ModeBasis {
        self.basis
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn rank(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn indices(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask[index]
    }

    pub fn as_operator(&self) -> OperatorMatrix {
        OperatorMatrix::from_fn(self.basis, |i, j| if i == j && self.mask[i] { ONE } else { ZERO })
    }

    fn check(&self, op: &OperatorMatrix) -> Result<()> {
        if op.basis() == self.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: op.basis().to_string(),
                right: self.basis.to_string(),
            })
        }
    }

    /// `P A P` on the full space.
    pub fn project(&self, op: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check(op)?;
        Ok(OperatorMatrix::from_fn(self.basis, |i, j| {
            if self.mask[i] && self.mask[j] {
                op.data[(i, j)]
            } else {
                ZERO
            }
        }))
    }

    /// `P A P` restricted to the interior states (a `rank × rank` matrix).
    pub fn compress(&self, op: &OperatorMatrix) -> Result<CMatrix> {
        self.check(op)?;
        let idx = self.indices();
        Ok(CMatrix::from_fn(idx.len(), idx.len(), |i, j| op.data[(idx[i], idx[j])]))
    }
}

/// `max |P A P|`
pub fn interior_residual(op: &OperatorMatrix, proj: &InteriorProjector) -> Result<f64> {
    Ok(linalg::max_norm(&proj.compress(op)?))
}

/// `max |P (A − B) P|`
pub fn interior_distance(a: &OperatorMatrix, b: &OperatorMatrix, proj: &InteriorProjector) -> Result<f64> {
    interior_residual(&a.try_sub(b)?, proj)
}

/// `i·1`, handy for canonical commutators.
pub fn i_identity(basis: ModeBasis) -> OperatorMatrix {
    OperatorMatrix::identity(basis).scaled(I)
}
