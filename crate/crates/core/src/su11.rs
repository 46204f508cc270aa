//! Two-boson realizations of SU(1,1) and SU(2) and their Casimir operators.
//!
//! The pseudo-chiral realization uses `J_z = ½(ãa − b̃b)`, `J_+ = ãb`,
//! `J_− = −b̃a`. Its Casimir is `(N/2)(N/2 + 1)` with `N = ãa + b̃b`, the same
//! shape as the SU(2) Casimir of the ordinary two-oscillator realization.
//! The standard SU(1,1) realization `J_z = ½(a†a + bb†)`, `J_+ = a†b†`,
//! `J_− = ab` has no such factorization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{self, commutator, InteriorProjector, Ladders, ModeBasis, OperatorMatrix, Representation};
use crate::linalg::{self, c, C64, I};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algebra {
    Su11Eta,
    Su11Hermitian,
    Su11Standard,
    Su2Standard,
}

impl Algebra {
    pub fn name(self) -> &'static str {
        match self {
            Algebra::Su11Eta => "su11_eta",
            Algebra::Su11Hermitian => "su11_hermitian",
            Algebra::Su11Standard => "su11_standard",
            Algebra::Su2Standard => "su2_standard",
        }
    }

    pub fn is_compact(self) -> bool {
        matches!(self, Algebra::Su2Standard)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    pub algebra: Algebra,
    pub jx: OperatorMatrix,
    pub jy: OperatorMatrix,
    pub jz: OperatorMatrix,
    pub jplus: OperatorMatrix,
    pub jminus: OperatorMatrix,
    /// Total number operator entering the factorized Casimir.
    pub number: OperatorMatrix,
}

impl GeneratorSet {
    fn from_ladder_form(
        algebra: Algebra,
        jz: OperatorMatrix,
        jplus: OperatorMatrix,
        jminus: OperatorMatrix,
        number: OperatorMatrix,
    ) -> Self {
        let jx = (&jplus + &jminus) * 0.5;
        let jy = (&jplus - &jminus) * c(0.0, -0.5);
        Self {
            algebra,
            jx,
            jy,
            jz,
            jplus,
            jminus,
            number,
        }
    }

    fn from_cartesian(
        algebra: Algebra,
        jx: OperatorMatrix,
        jy: OperatorMatrix,
        jz: OperatorMatrix,
        number: OperatorMatrix,
    ) -> Self {
        let jplus = &jx + &(&jy * I);
        let jminus = &jx - &(&jy * I);
        Self {
            algebra,
            jx,
            jy,
            jz,
            jplus,
            jminus,
            number,
        }
    }

    pub fn basis(&self) -> ModeBasis {
        self.jz.basis()
    }

    pub fn representation(&self) -> Representation {
        self.basis().representation()
    }

    /// `(J_x, J_y, J_z)` with labels.
    pub fn cartesian(&self) -> [(&'static str, &OperatorMatrix); 3] {
        [("Jx", &self.jx), ("Jy", &self.jy), ("Jz", &self.jz)]
    }

    /// `max(|J_+ − (J_x + iJ_y)|, |J_− − (J_x − iJ_y)|)`
    pub fn pm_residual(&self) -> f64 {
        let plus = &self.jplus - &(&self.jx + &(&self.jy * I));
        let minus = &self.jminus - &(&self.jx - &(&self.jy * I));
        plus.max_norm().max(minus.max_norm())
    }

    pub fn is_zero(&self) -> bool {
        [&self.jx, &self.jy, &self.jz, &self.jplus, &self.jminus]
            .iter()
            .all(|m| m.max_norm() == 0.0)
    }
}

/// Pseudo-chiral realization built from `(a, ã, b, b̃)` in either
/// representation.
pub fn build_eta_generators(ladders: &Ladders) -> GeneratorSet {
    let n_plus = &ladders.a_tilde * &ladders.a;
    let n_minus = &ladders.b_tilde * &ladders.b;
    let jz = (&n_plus - &n_minus) * 0.5;
    let jplus = &ladders.a_tilde * &ladders.b;
    let jminus = -(&ladders.b_tilde * &ladders.a);
    GeneratorSet::from_ladder_form(Algebra::Su11Eta, jz, jplus, jminus, &n_plus + &n_minus)
}

/// Relabels `J_x → J_y`, `J_y → iJ_z`, `J_z → −iJ_x`: the new `J_x` is `iJ_z`,
/// the new `J_y` is the old `J_x` and the new `J_z` is `−iJ_y`.
pub fn build_hermitian_generators(gs: &GeneratorSet) -> Result<GeneratorSet> {
    if gs.algebra != Algebra::Su11Eta {
        return Err(Error::WrongAlgebra {
            expected: Algebra::Su11Eta.name(),
            actual: gs.algebra.name(),
        });
    }
    Ok(GeneratorSet::from_cartesian(
        Algebra::Su11Hermitian,
        &gs.jz * I,
        gs.jx.clone(),
        &gs.jy * c(0.0, -1.0),
        gs.number.clone(),
    ))
}

fn standard_modes(basis: ModeBasis) -> Result<(OperatorMatrix, OperatorMatrix)> {
    Ok((fock::ladder(basis, 0)?, fock::ladder(basis, 1)?))
}

/// `J_z = ½(a†a + bb†)`, `J_+ = a†b†`, `J_− = ab` on the standard two-mode
/// ladder matrices of `basis`.
pub fn build_standard_su11(basis: ModeBasis) -> Result<GeneratorSet> {
    let (a, b) = standard_modes(basis)?;
    let (ad, bd) = (a.adjoint(), b.adjoint());
    let jz = (&(&ad * &a) + &(&b * &bd)) * 0.5;
    let jplus = &ad * &bd;
    let jminus = &a * &b;
    let number = &(&ad * &a) + &(&bd * &b);
    Ok(GeneratorSet::from_ladder_form(Algebra::Su11Standard, jz, jplus, jminus, number))
}

/// `J_z = ½(a†a − b†b)`, `J_+ = a†b`, `J_− = b†a`.
pub fn build_standard_su2(basis: ModeBasis) -> Result<GeneratorSet> {
    let (a, b) = standard_modes(basis)?;
    let (ad, bd) = (a.adjoint(), b.adjoint());
    let jz = (&(&ad * &a) - &(&bd * &b)) * 0.5;
    let jplus = &ad * &b;
    let jminus = &bd * &a;
    let number = &(&ad * &a) + &(&bd * &b);
    Ok(GeneratorSet::from_ladder_form(Algebra::Su2Standard, jz, jplus, jminus, number))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub algebra: Algebra,
    /// `|P([J_z, J_+] − J_+)P|`
    pub raise: f64,
    /// `|P([J_z, J_−] + J_−)P|`
    pub lower: f64,
    /// `|P([J_+, J_−] + 2J_z)P|`, or `− 2J_z` for SU(2).
    pub closure: f64,
    /// Entrywise `J_± = J_x ± iJ_y` residual on the full space.
    pub pm: f64,
    /// All generators vanish, so the residuals are trivially zero.
    pub degenerate: bool,
    pub tolerance: f64,
    pub pass: bool,
}

impl AlgebraReport {
    pub fn max_residual(&self) -> f64 {
        self.raise.max(self.lower).max(self.closure)
    }
}

pub fn check_algebra(gs: &GeneratorSet, proj: &InteriorProjector, tol: f64) -> Result<AlgebraReport> {
    let raise = fock::interior_distance(&commutator(&gs.jz, &gs.jplus)?, &gs.jplus, proj)?;
    let lower = fock::interior_residual(&(&commutator(&gs.jz, &gs.jminus)? + &gs.jminus), proj)?;
    let sign = if gs.algebra.is_compact() { -2.0 } else { 2.0 };
    let closure = fock::interior_residual(&(&commutator(&gs.jplus, &gs.jminus)? + &(&gs.jz * sign)), proj)?;
    let pm = gs.pm_residual();
    let pass = raise < tol && lower < tol && closure < tol && pm < tolerance::exact(gs.jx.max_norm());
    Ok(AlgebraReport {
        algebra: gs.algebra,
        raise,
        lower,
        closure,
        pm,
        degenerate: gs.is_zero(),
        tolerance: tol,
        pass,
    })
}

/// `J² = J_z² − ½(J_+J_− + J_−J_+)`, with `+` in place of `−` for SU(2).
pub fn casimir_operator(gs: &GeneratorSet) -> OperatorMatrix {
    let sym = &(&gs.jplus * &gs.jminus) + &(&gs.jminus * &gs.jplus);
    let sign = if gs.algebra.is_compact() { 0.5 } else { -0.5 };
    &(&gs.jz * &gs.jz) + &(&sym * sign)
}

/// `(N/2)(N/2 + 1)`
pub fn factorized_form(number: &OperatorMatrix) -> OperatorMatrix {
    let half = number * 0.5;
    let shifted = &half + &OperatorMatrix::identity(number.basis());
    &half * &shifted
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub value: C64,
    pub multiplicity: usize,
}

/// Interior number states sharing the same eigenvalue of a diagonal `N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumberRow {
    pub n: f64,
    pub states: usize,
    /// Range of `⟨k|J²|k⟩` over those states.
    pub casimir_min: f64,
    pub casimir_max: f64,
    pub factorized: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CasimirReport {
    pub algebra: Algebra,
    pub casimir: OperatorMatrix,
    /// `|P[J², J_k]P|` for `J_x, J_y, J_z`.
    pub commutators: [f64; 3],
    /// `|P(J² − (N/2)(N/2 + 1))P|`
    pub factorization_residual: f64,
    /// Smallest `‖P(J² − (N/2)(N/2 + 1))|k⟩‖` over interior number states.
    pub min_state_gap: f64,
    pub eigenvalues: Vec<EigenvalueEntry>,
    /// Empty when `N` is not diagonal in the number basis.
    pub by_number: Vec<NumberRow>,
}

impl CasimirReport {
    pub fn max_commutator(&self) -> f64 {
        self.commutators.iter().copied().fold(0.0, f64::max)
    }
}

pub fn casimir(gs: &GeneratorSet, proj: &InteriorProjector) -> Result<CasimirReport> {
    let j2 = casimir_operator(gs);
    let mut commutators = [0.0; 3];
    for (slot, (_, g)) in commutators.iter_mut().zip(gs.cartesian()) {
        *slot = fock::interior_residual(&commutator(&j2, g)?, proj)?;
    }
    let diff = proj.compress(&(&j2 - &factorized_form(&gs.number)))?;
    let factorization_residual = linalg::max_norm(&diff);
    let min_state_gap = diff
        .column_iter()
        .map(|col| col.norm())
        .fold(f64::INFINITY, f64::min);

    let compressed = proj.compress(&j2)?;
    let values = linalg::sorted_eigenvalues(&compressed)?;
    let scale = linalg::max_norm(&compressed).max(1.0);
    let eigenvalues = linalg::clusters(&values, tolerance::EIGEN_CLUSTER * scale)
        .into_iter()
        .map(|group| EigenvalueEntry {
            value: group.iter().map(|&k| values[k]).sum::<C64>() / group.len() as f64,
            multiplicity: group.len(),
        })
        .collect();

    let by_number = if gs.number.off_diagonal_norm() == 0.0 {
        number_table(&j2, &gs.number, proj)
    } else {
        Vec::new()
    };

    Ok(CasimirReport {
        algebra: gs.algebra,
        casimir: j2,
        commutators,
        factorization_residual,
        min_state_gap,
        eigenvalues,
        by_number,
    })
}

fn number_table(j2: &OperatorMatrix, number: &OperatorMatrix, proj: &InteriorProjector) -> Vec<NumberRow> {
    let mut rows: Vec<NumberRow> = Vec::new();
    for k in proj.indices() {
        let n = number.matrix()[(k, k)].re;
        let value = j2.matrix()[(k, k)].re;
        match rows.iter_mut().find(|r| (r.n - n).abs() < 0.5) {
            Some(row) => {
                row.states += 1;
                row.casimir_min = row.casimir_min.min(value);
                row.casimir_max = row.casimir_max.max(value);
            }
            None => rows.push(NumberRow {
                n,
                states: 1,
                casimir_min: value,
                casimir_max: value,
                factorized: 0.5 * n * (0.5 * n + 1.0),
            }),
        }
    }
    rows.sort_by(|a, b| a.n.total_cmp(&b.n));
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContrastReport {
    pub eta_residual: f64,
    pub standard_residual: f64,
    /// Every interior state of the standard realization misses the
    /// factorized form by at least this much.
    pub standard_min_gap: f64,
    pub su2_residual: f64,
    pub pass: bool,
}

/// Factorization residuals of the pseudo-chiral, standard SU(1,1) and SU(2)
/// Casimirs against `(N/2)(N/2 + 1)` on the interior of `proj`.
pub fn factorizability_contrast(ladders: &Ladders, proj: &InteriorProjector, tol: f64) -> Result<ContrastReport> {
    let basis = proj.basis();
    let eta = casimir(&build_eta_generators(ladders), proj)?;
    let standard = casimir(&build_standard_su11(basis)?, proj)?;
    let su2 = casimir(&build_standard_su2(basis)?, proj)?;
    let pass = eta.factorization_residual < tol
        && standard.factorization_residual > tolerance::NON_FACTORIZABLE_GAP
        && su2.factorization_residual < tol;
    Ok(ContrastReport {
        eta_residual: eta.factorization_residual,
        standard_residual: standard.factorization_residual,
        standard_min_gap: standard.min_state_gap,
        su2_residual: su2.factorization_residual,
        pass,
    })
}

/// Standard SU(1,1) Casimir evaluated two ways.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormCasimirCheck {
    /// `⟨0,0|J_z² − ½(J_+J_− + J_−J_+)|0,0⟩`
    pub defining_vacuum: f64,
    /// `⟨0,0|¼(a†a − b†b)² − ½(a†a + b†b + 1)|0,0⟩`
    pub closed_form_vacuum: f64,
    /// `|P(defining − closed form)P|`
    pub max_difference: f64,
    /// `|P(defining − ¼(a†a − b†b)² + ¼)P|`
    pub corrected_residual: f64,
}

pub fn standard_casimir_closed_form(basis: ModeBasis) -> Result<ClosedFormCasimirCheck> {
    let proj = fock::interior(basis, 1.min(basis.dim_per_mode() - 1))?;
    let gs = build_standard_su11(basis)?;
    let defining = casimir_operator(&gs);
    let na = fock::number(basis, 0)?;
    let nb = fock::number(basis, 1)?;
    let id = OperatorMatrix::identity(basis);
    let diff = &na - &nb;
    let quarter_sq = &(&diff * &diff) * 0.25;
    let closed = &quarter_sq - &(&(&(&na + &nb) + &id) * 0.5);
    let corrected = &quarter_sq - &(&id * 0.25);
    let vac = basis.index(0, 0);
    Ok(ClosedFormCasimirCheck {
        defining_vacuum: defining.matrix()[(vac, vac)].re,
        closed_form_vacuum: closed.matrix()[(vac, vac)].re,
        max_difference: fock::interior_distance(&defining, &closed, &proj)?,
        corrected_residual: fock::interior_distance(&defining, &corrected, &proj)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::OscParams;
    use crate::fock::{build_ab, interior, ladder};
    use crate::pseudoherm::{eta_adjoint, is_eta_antihermitian, is_eta_hermitian};

    fn basis(d: usize, rep: Representation) -> ModeBasis {
        ModeBasis::new(d, rep).unwrap()
    }

    fn eta_set(b: ModeBasis, omega: f64) -> GeneratorSet {
        build_eta_generators(&build_ab(b, OscParams::new(omega).unwrap()).unwrap())
    }

    #[test]
    fn r1_jz_in_mode_operators() {
        let b = basis(12, Representation::R1);
        let gs = eta_set(b, 1.0);
        let a1 = ladder(b, 0).unwrap();
        let a2 = ladder(b, 1).unwrap();
        let expected = (&(&a2 * &a1) - &(&a1.adjoint() * &a2.adjoint())) * 0.5;
        assert!(gs.jz.distance(&expected).unwrap() < tolerance::exact(gs.jz.max_norm()));
    }

    #[test]
    fn r2_jz_is_half_occupation_difference() {
        let b = basis(6, Representation::R2);
        let gs = eta_set(b, 1.0);
        assert_eq!(gs.jz.off_diagonal_norm(), 0.0);
        for k in 0..b.total_dim() {
            let (np, nm) = b.occupations(k);
            assert!((gs.jz.matrix()[(k, k)] - c(0.5 * (np as f64 - nm as f64), 0.0)).norm() < tolerance::exact(1.0));
        }
    }

    #[test]
    fn eta_hermiticity_of_generators() {
        for rep in [Representation::R1, Representation::R2] {
            let gs = eta_set(basis(8, rep), 1.0);
            assert!(is_eta_hermitian(&gs.jz, 1e-12).pass);
            assert!(is_eta_hermitian(&gs.jy, 1e-12).pass);
            // J̃_+ = b̃a = −J_−, which flips the sign of J_x
            assert!(is_eta_antihermitian(&gs.jx, 1e-12).pass);
            assert!(eta_adjoint(&gs.jplus).distance(&(-&gs.jminus)).unwrap() < 1e-12);
        }
    }

    #[test]
    fn jy_has_imaginary_spectrum_in_r1() {
        let b = basis(6, Representation::R1);
        let gs = eta_set(b, 1.0);
        let a1 = ladder(b, 0).unwrap();
        let a2 = ladder(b, 1).unwrap();
        let n_tot = &(&a1.adjoint() * &a1) + &(&a2.adjoint() * &a2);
        let proj = interior(b, 1).unwrap();
        let expected = (&n_tot + &OperatorMatrix::identity(b)) * c(0.0, -0.5);
        assert!(fock::interior_distance(&gs.jy, &expected, &proj).unwrap() < 1e-12);
    }

    #[test]
    fn mapped_generators_are_hermitian_in_r1() {
        let b = basis(12, Representation::R1);
        let proj = interior(b, 2).unwrap();
        let h = build_hermitian_generators(&eta_set(b, 1.0)).unwrap();
        for (_, g) in h.cartesian() {
            assert!(g.hermiticity_residual() < 1e-12);
        }
        let a1 = ladder(b, 0).unwrap();
        let a2 = ladder(b, 1).unwrap();
        let n_tot = &(&a1.adjoint() * &a1) + &(&a2.adjoint() * &a2);
        let expected = (&n_tot + &OperatorMatrix::identity(b)) * -0.5;
        assert!(fock::interior_distance(&h.jz, &expected, &proj).unwrap() < 1e-12);
        let spec = linalg::hermitian_eigenvalues(&proj.compress(&h.jz).unwrap());
        for v in spec {
            let k = -2.0 * v - 1.0;
            assert!((k - k.round()).abs() < 1e-12 && k > -0.5);
        }
        assert!(check_algebra(&h, &proj, 1e-10).unwrap().pass);
    }

    #[test]
    fn mapping_rejects_other_tags() {
        let gs = build_standard_su2(basis(4, Representation::R2)).unwrap();
        assert!(matches!(build_hermitian_generators(&gs), Err(Error::WrongAlgebra { .. })));
    }

    #[test]
    fn algebras_close_on_the_interior() {
        for omega in [0.5, 1.0, 3.0] {
            for rep in [Representation::R1, Representation::R2] {
                let b = basis(12, rep);
                let proj = interior(b, 2).unwrap();
                let gs = eta_set(b, omega);
                let rep = check_algebra(&gs, &proj, 1e-10).unwrap();
                assert!(rep.pass, "{rep:?}");
                assert!(!rep.degenerate);
            }
        }
        let b = basis(12, Representation::R2);
        let proj = interior(b, 2).unwrap();
        assert!(check_algebra(&build_standard_su11(b).unwrap(), &proj, 1e-10).unwrap().pass);
        assert!(check_algebra(&build_standard_su2(b).unwrap(), &proj, 1e-10).unwrap().pass);
    }

    #[test]
    fn zero_generators_are_degenerate() {
        let b = basis(4, Representation::R2);
        let z = OperatorMatrix::zeros(b);
        let gs = GeneratorSet::from_ladder_form(Algebra::Su11Eta, z.clone(), z.clone(), z.clone(), z);
        let proj = interior(b, 1).unwrap();
        let rep = check_algebra(&gs, &proj, 1e-10).unwrap();
        assert!(rep.pass && rep.degenerate && rep.max_residual() == 0.0);
    }

    #[test]
    fn standard_vacuum() {
        let b = basis(4, Representation::R2);
        let gs = build_standard_su11(b).unwrap();
        let v = b.index(0, 0);
        assert_eq!(gs.jz.matrix()[(v, v)], c(0.5, 0.0));
        let check = standard_casimir_closed_form(b).unwrap();
        assert!((check.defining_vacuum + 0.25).abs() < 1e-15);
        assert!((check.closed_form_vacuum + 0.5).abs() < 1e-15);
        assert!(check.corrected_residual < 1e-12);
        assert!(check.max_difference >= 0.25);
    }

    #[test]
    fn eta_casimir_factorizes() {
        for rep in [Representation::R1, Representation::R2] {
            let b = basis(12, rep);
            let proj = interior(b, 2).unwrap();
            let gs = eta_set(b, 1.0);
            let report = casimir(&gs, &proj).unwrap();
            assert!(report.factorization_residual < 1e-10, "{rep:?}");
            assert!(report.max_commutator() < 1e-10, "{rep:?} {:?}", report.commutators);
            let mapped = casimir(&build_hermitian_generators(&gs).unwrap(), &proj).unwrap();
            assert!(mapped.factorization_residual < 1e-10);
        }
    }

    #[test]
    fn casimir_table_at_one_quantum() {
        let b = basis(6, Representation::R2);
        let proj = interior(b, 2).unwrap();
        let report = casimir(&eta_set(b, 1.0), &proj).unwrap();
        let row = report.by_number.iter().find(|r| r.n == 1.0).unwrap();
        assert_eq!(row.states, 2);
        assert!((row.casimir_min - 0.75).abs() < 1e-14 && (row.casimir_max - 0.75).abs() < 1e-14);
        let v = b.index(1, 0);
        assert!((report.casimir.matrix()[(v, v)] - c(0.75, 0.0)).norm() < 1e-14);
        assert!(report.eigenvalues.iter().any(|e| (e.value - c(0.75, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn su2_casimir_uses_plus_sign() {
        let b = basis(8, Representation::R2);
        let proj = interior(b, 2).unwrap();
        let report = casimir(&build_standard_su2(b).unwrap(), &proj).unwrap();
        assert!(report.factorization_residual < 1e-10);
        assert!(report.max_commutator() < 1e-10);
    }

    #[test]
    fn contrast_dichotomy() {
        for rep in [Representation::R1, Representation::R2] {
            let b = basis(12, rep);
            let proj = interior(b, 2).unwrap();
            let ladders = build_ab(b, OscParams::new(1.0).unwrap()).unwrap();
            let contrast = factorizability_contrast(&ladders, &proj, 1e-10).unwrap();
            assert!(contrast.pass, "{contrast:?}");
            assert!(contrast.standard_min_gap >= 0.25 - 1e-12);
        }
    }
}
