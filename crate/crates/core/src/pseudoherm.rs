//! Antilinear `η = PT`, the `η`-adjoint and biorthogonal eigensystems.
//!
//! In [`Representation::R1`] the operator is `η v = Π2 · conj(v)` with
//! `Π2 = diag((−1)^{n2})`. It sends `x_i → g_ij x_j` and `p_i → −g_ij p_j`
//! under conjugation. In [`Representation::R2`] the unitary part is the
//! identity, so `η` is plain complex conjugation of the `(n_+, n_−)`
//! coefficients and the `η`-adjoint is the transpose.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{InteriorProjector, ModeBasis, OperatorMatrix, Representation};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::tolerance;

#[derive(Debug, Clone, PartialEq)]
pub struct EtaOperator {
    basis: ModeBasis,
    parity: Vec<f64>,
}

impl EtaOperator {
    pub fn new(basis: ModeBasis) -> Self {
        let parity = (0..basis.total_dim())
            .map(|i| match basis.representation() {
                Representation::R1 => {
                    if basis.occupations(i).1.is_multiple_of(2) {
                        1.0
                    } else {
                        -1.0
                    }
                }
                Representation::R2 => 1.0,
            })
            .collect();
        Self { basis, parity }
    }

    pub fn basis(&self) -> ModeBasis {
        self.basis
    }

    /// Diagonal of the unitary part.
    pub fn parity(&self) -> &[f64] {
        &self.parity
    }

    pub fn unitary_part(&self) -> OperatorMatrix {
        OperatorMatrix::from_fn(self.basis, |i, j| {
            if i == j {
                C64::from(self.parity[i])
            } else {
                ZERO
            }
        })
    }

    fn check_len(&self, v: &[C64]) -> Result<()> {
        if v.len() == self.parity.len() {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "vector of length {} on basis {} of dimension {}",
                v.len(),
                self.basis,
                self.parity.len()
            )))
        }
    }

    fn check_op(&self, a: &OperatorMatrix) -> Result<()> {
        if a.basis() == self.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                left: a.basis().to_string(),
                right: self.basis.to_string(),
            })
        }
    }

    /// `Π · conj(v)`
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.check_len(v)?;
        Ok(v.iter().zip(&self.parity).map(|(z, s)| z.conj() * s).collect())
    }

    /// `η A η⁻¹ = Π · conj(A) · Π`
    pub fn conjugate(&self, a: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_op(a)?;
        let m = a.matrix();
        Ok(OperatorMatrix::from_fn(self.basis, |i, j| {
            m[(i, j)].conj() * (self.parity[i] * self.parity[j])
        }))
    }

    /// `Ã = η⁻¹ A† η = Π · Aᵀ · Π`
    pub fn adjoint(&self, a: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_op(a)?;
        let m = a.matrix();
        Ok(OperatorMatrix::from_fn(self.basis, |i, j| {
            m[(j, i)] * (self.parity[i] * self.parity[j])
        }))
    }

    /// `η⁻¹ A† η` assembled column by column from the antilinear action on
    /// basis vectors. Agrees with [`EtaOperator::adjoint`].
    pub fn adjoint_by_action(&self, a: &OperatorMatrix) -> Result<OperatorMatrix> {
        self.check_op(a)?;
        let n = self.parity.len();
        let dagger = a.adjoint();
        let mut out = CMatrix::zeros(n, n);
        let mut e = vec![ZERO; n];
        for k in 0..n {
            e[k] = C64::from(1.0);
            let col = self.apply(&dagger.apply(&self.apply(&e)?)?)?;
            for (i, z) in col.into_iter().enumerate() {
                out[(i, k)] = z;
            }
            e[k] = ZERO;
        }
        OperatorMatrix::new(self.basis, out)
    }

    /// `⟨β̄|α⟩ = (η β)† α = Σ_i Π_i β_i α_i`
    pub fn inner(&self, beta: &[C64], alpha: &[C64]) -> Result<C64> {
        self.check_len(beta)?;
        self.check_len(alpha)?;
        let eb = self.apply(beta)?;
        Ok(eb.iter().zip(alpha).map(|(b, a)| b.conj() * a).sum())
    }
}

pub fn eta_apply(basis: ModeBasis, v: &[C64]) -> Result<Vec<C64>> {
    EtaOperator::new(basis).apply(v)
}

pub fn eta_conjugate(a: &OperatorMatrix) -> Result<OperatorMatrix> {
    EtaOperator::new(a.basis()).conjugate(a)
}

pub fn eta_adjoint(a: &OperatorMatrix) -> OperatorMatrix {
    EtaOperator::new(a.basis())
        .adjoint(a)
        .expect("operator and eta share a basis")
}

pub fn eta_inner(basis: ModeBasis, beta: &[C64], alpha: &[C64]) -> Result<C64> {
    EtaOperator::new(basis).inner(beta, alpha)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn new(residual: f64, tolerance: f64) -> Self {
        Self {
            residual,
            tolerance,
            pass: residual < tolerance,
        }
    }
}

/// `max |Ã − A|` against `tol`.
pub fn is_eta_hermitian(a: &OperatorMatrix, tol: f64) -> Verdict {
    Verdict::new(eta_adjoint(a).distance(a).expect("same basis"), tol)
}

/// `max |Ã + A|` against `tol`.
pub fn is_eta_antihermitian(a: &OperatorMatrix, tol: f64) -> Verdict {
    Verdict::new((&eta_adjoint(a) + a).max_norm(), tol)
}

/// The three sides of the `⟨β̄|α⟩` expansion over number states, where
/// `|α⟩ = Σ c_n |n⟩` and `|β⟩ = Σ d_n |n⟩` with `⟨n̄|n⟩ = s_n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExpansionCheck {
    /// `⟨β̄|α⟩` from the vector action.
    pub direct: C64,
    /// `Σ s_n d_n c_n`
    pub bilinear: C64,
    /// `Σ s_n d_n c_n*`
    pub conjugated: C64,
}

pub fn expansion_identity(basis: ModeBasis, beta: &[C64], alpha: &[C64]) -> Result<ExpansionCheck> {
    let eta = EtaOperator::new(basis);
    let direct = eta.inner(beta, alpha)?;
    let mut bilinear = ZERO;
    let mut conjugated = ZERO;
    let mut e = vec![ZERO; basis.total_dim()];
    for n in 0..e.len() {
        e[n] = C64::from(1.0);
        let s = eta.inner(&e, &e)?;
        e[n] = ZERO;
        bilinear += s * beta[n] * alpha[n];
        conjugated += s * beta[n] * alpha[n].conj();
    }
    Ok(ExpansionCheck {
        direct,
        bilinear,
        conjugated,
    })
}

/// Right eigenvectors `|ψ_n⟩` and left eigenvectors `|ψ̄_n⟩` (columns) with
/// `⟨ψ̄_n|ψ_k⟩ = δ_nk`.
#[derive(Debug, Clone)]
pub struct BiorthogonalSystem {
    pub eigenvalues: Vec<C64>,
    pub right: CMatrix,
    pub left: CMatrix,
    /// Groups of eigenvalue indices equal within the clustering tolerance.
    pub clusters: Vec<Vec<usize>>,
    /// `max |L†R − 1|`
    pub orthonormality_residual: f64,
    /// `max |Σ_n |ψ_n⟩⟨ψ̄_n| − 1|`
    pub completeness_residual: f64,
}

impl BiorthogonalSystem {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn right_vector(&self, n: usize) -> Vec<C64> {
        self.right.column(n).iter().copied().collect()
    }

    pub fn left_vector(&self, n: usize) -> Vec<C64> {
        self.left.column(n).iter().copied().collect()
    }

    pub fn max_imag(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }
}

/// Right eigenvectors from the Schur form, left eigenvectors as the columns
/// of `(R⁻¹)†`. Degenerate clusters need no separate treatment since the
/// inverse biorthogonalizes every block at once; a Jordan block is reported
/// as [`Error::Defective`].
pub fn biorthogonal_decompose(a: &CMatrix) -> Result<BiorthogonalSystem> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::InvalidInput(format!("non-square matrix {:?}", a.shape())));
    }
    let eig = linalg::eigen(a)?;
    let right = eig.vectors;
    let inv = linalg::invert(&right)?;
    let left = inv.matrix.adjoint();
    let id = CMatrix::identity(n, n);
    let orthonormality_residual = linalg::max_norm(&(left.adjoint() * &right - &id));
    let completeness_residual = linalg::max_norm(&(&right * left.adjoint() - &id));
    let scale = linalg::max_norm(a).max(f64::MIN_POSITIVE);
    let clusters = linalg::clusters(&eig.values, tolerance::EIGEN_CLUSTER * scale);
    Ok(BiorthogonalSystem {
        eigenvalues: eig.values,
        right,
        left,
        clusters,
        orthonormality_residual,
        completeness_residual,
    })
}

/// For `η`-hermitian `A`, `η|ψ_n⟩` is an eigenvector of `A†` and therefore
/// parallel to `|ψ̄_n⟩` whenever `λ_n` is simple. Returns the largest
/// relative deviation from parallelism over simple eigenvalues.
pub fn eta_pairing_residual(eta: &EtaOperator, system: &BiorthogonalSystem) -> Result<f64> {
    let mut worst = 0.0f64;
    for cluster in system.clusters.iter().filter(|c| c.len() == 1) {
        let n = cluster[0];
        let eta_psi = eta.apply(&system.right_vector(n))?;
        let left = system.left_vector(n);
        let ll: f64 = left.iter().map(|z| z.norm_sqr()).sum();
        let overlap: C64 = left.iter().zip(&eta_psi).map(|(l, v)| l.conj() * v).sum();
        let coeff = overlap / ll;
        let dev: f64 = eta_psi
            .iter()
            .zip(&left)
            .map(|(v, l)| (v - l * coeff).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let norm: f64 = eta_psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(dev / norm);
    }
    Ok(worst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealityReport {
    pub max_imag: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub eigenvalues: Vec<C64>,
}

/// Largest `|Im λ|` over the spectrum of `P A P` restricted to the interior.
pub fn reality_check(a: &OperatorMatrix, proj: &InteriorProjector, tol: f64) -> Result<RealityReport> {
    let eigenvalues = linalg::sorted_eigenvalues(&proj.compress(a)?)?;
    let max_imag = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    Ok(RealityReport {
        max_imag,
        tolerance: tol,
        pass: max_imag < tol,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::OscParams;
    use crate::fock::{build_ab, build_hamiltonians, interior, quadratures};
    use crate::linalg::{c, I};
    use proptest::prelude::*;

    fn r1(d: usize) -> ModeBasis {
        ModeBasis::new(d, Representation::R1).unwrap()
    }

    fn r2(d: usize) -> ModeBasis {
        ModeBasis::new(d, Representation::R2).unwrap()
    }

    fn unit() -> OscParams {
        OscParams::new(1.0).unwrap()
    }

    #[test]
    fn quadrature_transformation_rules() {
        let basis = r1(8);
        let (x1, p1) = quadratures(basis, 0, unit()).unwrap();
        let (x2, p2) = quadratures(basis, 1, unit()).unwrap();
        assert_eq!(eta_conjugate(&x1).unwrap(), x1);
        assert_eq!(eta_conjugate(&x2).unwrap(), -&x2);
        assert_eq!(eta_conjugate(&p1).unwrap(), -&p1);
        assert_eq!(eta_conjugate(&p2).unwrap(), p2);
    }

    #[test]
    fn quadrature_adjoints() {
        let basis = r1(8);
        let (x1, _) = quadratures(basis, 0, unit()).unwrap();
        let (x2, _) = quadratures(basis, 1, unit()).unwrap();
        assert_eq!(eta_adjoint(&x1), x1);
        assert_eq!(eta_adjoint(&x2), -&x2);
        assert!(!is_eta_hermitian(&x2, 1e-12).pass);
    }

    #[test]
    fn ladder_adjoint_pairs() {
        for basis in [r1(10), r2(10)] {
            let l = build_ab(basis, unit()).unwrap();
            let tol = tolerance::exact(l.a.max_norm());
            assert!(eta_adjoint(&l.a).distance(&l.a_tilde).unwrap() < tol);
            assert!(eta_adjoint(&l.b).distance(&l.b_tilde).unwrap() < tol);
        }
    }

    #[test]
    fn hamiltonians_are_eta_hermitian() {
        for basis in [r1(12), r2(12)] {
            let h = build_hamiltonians(basis, unit()).unwrap();
            assert!(is_eta_hermitian(&h.h_plus, 1e-12).pass);
            assert!(is_eta_hermitian(&h.h_minus, 1e-12).pass);
        }
    }

    #[test]
    fn definitional_adjoint_matches_closed_form() {
        let basis = r1(4);
        let a = OperatorMatrix::from_fn(basis, |i, j| c(i as f64 - 0.5 * j as f64, (i * j) as f64 * 0.1));
        let eta = EtaOperator::new(basis);
        assert_eq!(eta.adjoint_by_action(&a).unwrap(), eta.adjoint(&a).unwrap());
    }

    #[test]
    fn number_state_norms_alternate() {
        let basis = r1(4);
        let mut e = vec![ZERO; 16];
        for i in 0..16 {
            e[i] = c(1.0, 0.0);
            let (_, n2) = basis.occupations(i);
            let expected = if n2 % 2 == 0 { 1.0 } else { -1.0 };
            assert_eq!(eta_inner(basis, &e, &e).unwrap(), c(expected, 0.0));
            e[i] = ZERO;
        }
        let v: Vec<C64> = (0..16).map(|k| c(k as f64, 1.0)).collect();
        assert_eq!(eta_inner(basis, &v, &vec![ZERO; 16]).unwrap(), ZERO);
        assert!(eta_inner(basis, &v, &v[..3]).is_err());
    }

    #[test]
    fn expansion_is_bilinear() {
        let basis = r1(3);
        let alpha: Vec<C64> = (0..9).map(|k| c(0.1 * k as f64, 0.3 - 0.05 * k as f64)).collect();
        let beta: Vec<C64> = (0..9).map(|k| c(-0.2 + 0.07 * k as f64, 0.11 * k as f64)).collect();
        let e = expansion_identity(basis, &beta, &alpha).unwrap();
        assert!((e.direct - e.bilinear).norm() < 1e-15);
        assert!((e.direct - e.conjugated).norm() > 1e-3);
    }

    #[test]
    fn hermitian_input_has_equal_left_and_right() {
        let a = CMatrix::from_fn(4, 4, |i, j| {
            if i == j {
                c(i as f64, 0.0)
            } else if i < j {
                c(0.3, 0.2)
            } else {
                c(0.3, -0.2)
            }
        });
        let sys = biorthogonal_decompose(&a).unwrap();
        assert!(linalg::max_norm(&(&sys.left - &sys.right)) < 1e-10);
        assert!(sys.orthonormality_residual < 1e-12);
    }

    #[test]
    fn r2_hamiltonian_system() {
        let basis = r2(6);
        let h = build_hamiltonians(basis, unit()).unwrap();
        let sys = biorthogonal_decompose(h.h_plus.matrix()).unwrap();
        assert!(sys.completeness_residual < 1e-10);
        assert!(sys.orthonormality_residual < 1e-10);
        assert_eq!(sys.clusters.len(), 6);
        assert!(sys.clusters.iter().all(|c| c.len() == 6));
        let mut vals: Vec<f64> = sys.eigenvalues.iter().map(|z| z.re).collect();
        vals.sort_by(f64::total_cmp);
        for (k, v) in vals.iter().enumerate() {
            assert!((v - ((k / 6) as f64 + 0.5)).abs() < 1e-12);
        }
    }

    #[test]
    fn nilpotent_is_defective() {
        let mut a = CMatrix::zeros(2, 2);
        a[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(biorthogonal_decompose(&a), Err(Error::Defective(_))));
    }

    #[test]
    fn pairing_for_simple_spectrum() {
        // η-hermitian in R1 means Π Aᵀ Π = A
        let basis = r1(2);
        let eta = EtaOperator::new(basis);
        let raw = OperatorMatrix::from_fn(basis, |i, j| c(0.1 * (i + 2 * j) as f64 + if i == j { i as f64 } else { 0.0 }, 0.05 * (i as f64 - j as f64)));
        let a = (&raw + &eta.adjoint(&raw).unwrap()) * 0.5;
        assert!(is_eta_hermitian(&a, 1e-14).pass);
        let sys = biorthogonal_decompose(a.matrix()).unwrap();
        assert!(sys.clusters.iter().all(|c| c.len() == 1));
        assert!(eta_pairing_residual(&eta, &sys).unwrap() < 1e-10);
    }

    #[test]
    fn reality_verdicts() {
        let basis = r2(8);
        let proj = interior(basis, 2).unwrap();
        let h = build_hamiltonians(basis, unit()).unwrap();
        let rep = reality_check(&h.h_plus, &proj, tolerance::REALITY).unwrap();
        assert!(rep.pass && rep.max_imag == 0.0);
        let iid = OperatorMatrix::identity(basis).scaled(I);
        let rep = reality_check(&iid, &proj, tolerance::REALITY).unwrap();
        assert!(!rep.pass);
        assert!((rep.max_imag - 1.0).abs() < 1e-15);
    }

    fn complex_vec(len: usize) -> impl Strategy<Value = Vec<C64>> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), len)
            .prop_map(|v| v.into_iter().map(|(re, im)| c(re, im)).collect())
    }

    fn operator(basis: ModeBasis) -> impl Strategy<Value = OperatorMatrix> {
        let n = basis.total_dim();
        complex_vec(n * n).prop_map(move |v| {
            OperatorMatrix::new(basis, CMatrix::from_vec(n, n, v)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn eta_is_an_involution(v in complex_vec(9)) {
            let basis = r1(3);
            let back = eta_apply(basis, &eta_apply(basis, &v).unwrap()).unwrap();
            prop_assert_eq!(back, v);
        }

        #[test]
        fn eta_is_antilinear(v in complex_vec(9), re in -2.0f64..2.0, im in -2.0f64..2.0) {
            let basis = r1(3);
            let k = c(re, im);
            let scaled: Vec<C64> = v.iter().map(|z| z * k).collect();
            let lhs = eta_apply(basis, &scaled).unwrap();
            let rhs: Vec<C64> = eta_apply(basis, &v).unwrap().into_iter().map(|z| z * k.conj()).collect();
            for (l, r) in lhs.iter().zip(&rhs) {
                prop_assert!((l - r).norm() < 1e-15);
            }
        }

        #[test]
        fn adjoint_reverses_products(a in operator(r1(3)), b in operator(r1(3))) {
            let lhs = eta_adjoint(&(&a * &b));
            let rhs = &eta_adjoint(&b) * &eta_adjoint(&a);
            prop_assert!(lhs.distance(&rhs).unwrap() < 1e-13);
        }

        #[test]
        fn adjoint_is_an_involution(a in operator(r1(3))) {
            prop_assert_eq!(eta_adjoint(&eta_adjoint(&a)), a);
        }

        #[test]
        fn conjugation_matches_definition(a in operator(r1(2)), v in complex_vec(4)) {
            // (η A η⁻¹) v = η(A(η v))
            let basis = r1(2);
            let lhs = eta_conjugate(&a).unwrap().apply(&v).unwrap();
            let rhs = eta_apply(basis, &a.apply(&eta_apply(basis, &v).unwrap()).unwrap()).unwrap();
            for (l, r) in lhs.iter().zip(&rhs) {
                prop_assert!((l - r).norm() < 1e-14);
            }
        }
    }
}
