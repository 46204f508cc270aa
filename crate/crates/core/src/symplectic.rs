//! Brackets of constrained linear systems.
//!
//! Two independent engines are provided. [`fj_brackets`] reads the brackets
//! off a first-order Lagrangian `ξᵀ A ξ̇ − ξᵀ V ξ` by inverting its constant
//! symplectic two-form. [`dirac_brackets`] starts from canonical Poisson
//! brackets on `(q, π)` and corrects them with a set of affine second-class
//! constraints. For the pseudo-chiral modes both must give
//! `{x1, x2} = ±i/(2ω)`.

use crate::classical::{Metric, Mode, OscParams};
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, C64, ONE, ZERO};

/// Quadratic first-order Lagrangian `L = ξᵀ A ξ̇ − ξᵀ V ξ` with constant
/// coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct FirstOrderLagrangian {
    names: Vec<String>,
    kinetic: CMatrix,
    potential: CMatrix,
}

impl FirstOrderLagrangian {
    pub fn new(names: Vec<String>, kinetic: CMatrix, potential: CMatrix) -> Result<Self> {
        let n = names.len();
        if kinetic.shape() != (n, n) || potential.shape() != (n, n) {
            return Err(Error::InvalidInput(format!(
                "{} variables but kinetic {:?} and potential {:?}",
                n,
                kinetic.shape(),
                potential.shape()
            )));
        }
        if linalg::max_norm(&(&potential - potential.transpose())) > 0.0 {
            return Err(Error::InvalidInput("potential matrix must be symmetric".into()));
        }
        Ok(Self {
            names,
            kinetic,
            potential,
        })
    }

    /// `L_± = ±2iω x1 ẋ2 − ω²(x1² − x2²)`, the pseudo-chiral mode with the
    /// total derivative `∓iω d(x1 x2)/dt` removed.
    pub fn pseudo_chiral(mode: Mode, params: OscParams) -> Self {
        let w = params.omega();
        let mut kinetic = CMatrix::zeros(2, 2);
        kinetic[(0, 1)] = c(0.0, 2.0 * w * mode.sign());
        let potential = CMatrix::from_fn(2, 2, |i, j| c(w * w * Metric::G[i][j], 0.0));
        Self::new(vec!["x1".into(), "x2".into()], kinetic, potential)
            .expect("2x2 coefficients with symmetric potential")
    }

    /// The same mode in its antisymmetric form `±iω ε_ij x_i ẋ_j − ω² g_ij x_i x_j`.
    pub fn pseudo_chiral_symmetric(mode: Mode, params: OscParams) -> Self {
        let w = params.omega();
        let kinetic = CMatrix::from_fn(2, 2, |i, j| c(0.0, w * mode.sign() * Metric::EPS[i][j]));
        let potential = CMatrix::from_fn(2, 2, |i, j| c(w * w * Metric::G[i][j], 0.0));
        Self::new(vec!["x1".into(), "x2".into()], kinetic, potential)
            .expect("2x2 coefficients with symmetric potential")
    }

    /// `L = p q̇` with `ξ = (q, p)`.
    pub fn canonical_pair() -> Self {
        let mut kinetic = CMatrix::zeros(2, 2);
        kinetic[(1, 0)] = ONE;
        Self::new(vec!["q".into(), "p".into()], kinetic, CMatrix::zeros(2, 2))
            .expect("2x2 coefficients")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kinetic(&self) -> &CMatrix {
        &self.kinetic
    }

    pub fn potential(&self) -> &CMatrix {
        &self.potential
    }

    /// `f_ij = ∂_i a_j − ∂_j a_i` with `a_j = (Aᵀ ξ)_j`, i.e. `A − Aᵀ`.
    pub fn symplectic_form(&self) -> CMatrix {
        &self.kinetic - self.kinetic.transpose()
    }

    pub fn evaluate(&self, xi: &[C64], xi_dot: &[C64]) -> C64 {
        let n = self.names.len();
        let mut l = ZERO;
        for i in 0..n {
            for j in 0..n {
                l += xi[i] * self.kinetic[(i, j)] * xi_dot[j] - xi[i] * self.potential[(i, j)] * xi[j];
            }
        }
        l
    }
}

/// Table of fundamental brackets `B_ij = {ξ_i, ξ_j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketTable {
    labels: Vec<String>,
    matrix: CMatrix,
}

impl BracketTable {
    pub fn new(labels: Vec<String>, matrix: CMatrix) -> Result<Self> {
        if matrix.shape() != (labels.len(), labels.len()) {
            return Err(Error::InvalidInput("bracket table shape does not match labels".into()));
        }
        Ok(Self { labels, matrix })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.matrix[(i, j)]
    }

    fn position(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidInput(format!("unknown variable {label}")))
    }

    /// `{a, b}` by variable name.
    pub fn bracket(&self, a: &str, b: &str) -> Result<C64> {
        Ok(self.matrix[(self.position(a)?, self.position(b)?)])
    }

    /// Bracket of two linear functions `Σ u_i ξ_i` and `Σ v_j ξ_j`.
    pub fn bracket_linear(&self, u: &[C64], v: &[C64]) -> C64 {
        let n = self.labels.len();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| u[i] * self.matrix[(i, j)] * v[j])
            .sum()
    }

    /// Sub-table on the named variables, in the given order.
    pub fn restrict(&self, labels: &[&str]) -> Result<BracketTable> {
        let idx = labels
            .iter()
            .map(|l| self.position(l))
            .collect::<Result<Vec<_>>>()?;
        let matrix = CMatrix::from_fn(idx.len(), idx.len(), |i, j| self.matrix[(idx[i], idx[j])]);
        BracketTable::new(labels.iter().map(|s| s.to_string()).collect(), matrix)
    }

    /// `max |B + Bᵀ|`
    pub fn antisymmetry_residual(&self) -> f64 {
        linalg::max_norm(&(&self.matrix + self.matrix.transpose()))
    }

    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im == 0.0)
    }
}

fn describe_direction(labels: &[String], v: &[C64]) -> Vec<String> {
    labels
        .iter()
        .zip(v)
        .filter(|(_, z)| z.norm() > 1e-12)
        .map(|(l, z)| format!("({:.6}{:+.6}i)*{}", z.re, z.im, l))
        .collect()
}

/// Brackets of a first-order Lagrangian: `B = f⁻¹` with `f = A − Aᵀ`.
///
/// Calibration: `L = p q̇` gives `{q, p} = 1` and the plus mode gives
/// `{x1, x2} = i/(2ω)`; both are pinned by unit tests.
pub fn fj_brackets(lagrangian: &FirstOrderLagrangian) -> Result<BracketTable> {
    let f = lagrangian.symplectic_form();
    match linalg::invert(&f) {
        Ok(inv) => BracketTable::new(lagrangian.names.clone(), inv.matrix),
        Err(Error::Singular { .. }) | Err(Error::IllConditioned { .. }) => {
            let null_directions = linalg::null_space(&f, 1e-12)
                .iter()
                .map(|v| describe_direction(&lagrangian.names, v))
                .collect();
            Err(Error::DegenerateSymplectic { null_directions })
        }
        Err(e) => Err(e),
    }
}

/// Affine function `Σ_i (α_i q_i + β_i π_i) + γ` on canonical phase space.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineConstraint {
    pub q_coeffs: Vec<C64>,
    pub p_coeffs: Vec<C64>,
    pub constant: C64,
}

impl AffineConstraint {
    /// Coefficients over the phase-space ordering `(q_1..q_n, π_1..π_n)`.
    fn gradient(&self) -> Vec<C64> {
        self.q_coeffs.iter().chain(&self.p_coeffs).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintSet {
    coords: Vec<String>,
    constraints: Vec<AffineConstraint>,
}

impl ConstraintSet {
    pub fn new(coords: Vec<String>, constraints: Vec<AffineConstraint>) -> Result<Self> {
        let n = coords.len();
        for (k, phi) in constraints.iter().enumerate() {
            if phi.q_coeffs.len() != n || phi.p_coeffs.len() != n {
                return Err(Error::InvalidInput(format!(
                    "constraint {k} has {}+{} coefficients for {n} coordinates",
                    phi.q_coeffs.len(),
                    phi.p_coeffs.len()
                )));
            }
        }
        Ok(Self {
            coords,
            constraints,
        })
    }

    /// Primary constraints of `L_±`: `Φ1 = π1 ± iωx2`, `Φ2 = π2 ∓ iωx1`.
    pub fn pseudo_chiral(mode: Mode, params: OscParams) -> Self {
        let iw = c(0.0, params.omega() * mode.sign());
        let phi1 = AffineConstraint {
            q_coeffs: vec![ZERO, iw],
            p_coeffs: vec![ONE, ZERO],
            constant: ZERO,
        };
        let phi2 = AffineConstraint {
            q_coeffs: vec![-iw, ZERO],
            p_coeffs: vec![ZERO, ONE],
            constant: ZERO,
        };
        Self::new(vec!["x1".into(), "x2".into()], vec![phi1, phi2]).expect("consistent sizes")
    }

    /// Unconstrained coordinates.
    pub fn free(coords: Vec<String>) -> Self {
        Self {
            coords,
            constraints: Vec::new(),
        }
    }

    /// Disjoint union of two systems (coordinates of `other` renamed with a suffix).
    pub fn join(&self, other: &ConstraintSet, suffix: &str) -> Self {
        let n1 = self.coords.len();
        let n2 = other.coords.len();
        let mut coords = self.coords.clone();
        coords.extend(other.coords.iter().map(|s| format!("{s}{suffix}")));
        let pad = |phi: &AffineConstraint, first: bool| {
            let zeros = |k| vec![ZERO; k];
            let (q, p) = if first {
                (
                    [phi.q_coeffs.clone(), zeros(n2)].concat(),
                    [phi.p_coeffs.clone(), zeros(n2)].concat(),
                )
            } else {
                (
                    [zeros(n1), phi.q_coeffs.clone()].concat(),
                    [zeros(n1), phi.p_coeffs.clone()].concat(),
                )
            };
            AffineConstraint {
                q_coeffs: q,
                p_coeffs: p,
                constant: phi.constant,
            }
        };
        let constraints = self
            .constraints
            .iter()
            .map(|phi| pad(phi, true))
            .chain(other.constraints.iter().map(|phi| pad(phi, false)))
            .collect();
        Self {
            coords,
            constraints,
        }
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn constraints(&self) -> &[AffineConstraint] {
        &self.constraints
    }

    /// Labels of the phase-space variables `(q_1..q_n, pi_1..pi_n)`.
    pub fn phase_space_labels(&self) -> Vec<String> {
        self.coords
            .iter()
            .cloned()
            .chain(self.coords.iter().map(|q| format!("pi_{q}")))
            .collect()
    }

    /// Canonical Poisson matrix `[[0, 1], [−1, 0]]` on `(q, π)`.
    pub fn poisson_matrix(&self) -> CMatrix {
        let n = self.coords.len();
        CMatrix::from_fn(2 * n, 2 * n, |i, j| {
            if j == i + n {
                ONE
            } else if i == j + n {
                -ONE
            } else {
                ZERO
            }
        })
    }

    /// Gradients of the constraints as columns (`2n × m`).
    fn gradients(&self) -> CMatrix {
        let n = self.coords.len();
        let mut g = CMatrix::zeros(2 * n, self.constraints.len());
        for (a, phi) in self.constraints.iter().enumerate() {
            for (k, z) in phi.gradient().into_iter().enumerate() {
                g[(k, a)] = z;
            }
        }
        g
    }

    /// `Δ_ab = {Φ_a, Φ_b}`
    pub fn constraint_matrix(&self) -> CMatrix {
        let g = self.gradients();
        g.transpose() * self.poisson_matrix() * g
    }
}

/// Dirac brackets of all phase-space variables:
/// `{F, G}_D = {F, G} − {F, Φ_a} (Δ⁻¹)_ab {Φ_b, G}`.
pub fn dirac_brackets(cs: &ConstraintSet) -> Result<BracketTable> {
    let j = cs.poisson_matrix();
    if cs.constraints.is_empty() {
        return BracketTable::new(cs.phase_space_labels(), j);
    }
    let delta = cs.constraint_matrix();
    let delta_inv = match linalg::invert(&delta) {
        Ok(inv) => inv.matrix,
        Err(Error::Singular { pivot }) => {
            return Err(Error::NotSecondClass(format!(
                "constraint matrix is singular (pivot {pivot})"
            )))
        }
        Err(Error::IllConditioned { condition }) => {
            return Err(Error::NotSecondClass(format!(
                "constraint matrix condition estimate {condition:.3e}"
            )))
        }
        Err(e) => return Err(e),
    };
    let g = cs.gradients();
    // {z_k, Φ_a} = (J g_a)_k and {Φ_b, z_l} = (g_bᵀ J)_l
    let z_phi = &j * &g;
    let phi_z = g.transpose() * &j;
    let dirac = &j - z_phi * delta_inv * phi_z;
    BracketTable::new(cs.phase_space_labels(), dirac)
}

/// Physical degrees of freedom `(2n − #second-class)/2`.
pub fn degrees_of_freedom(cs: &ConstraintSet) -> Result<usize> {
    let n = cs.coords.len();
    let m = cs.constraints.len();
    if m % 2 == 1 {
        return Err(Error::Classification(format!(
            "{m} constraints cannot all be second-class"
        )));
    }
    if m > 2 * n {
        return Err(Error::Classification(format!(
            "{m} constraints on a {}-dimensional phase space",
            2 * n
        )));
    }
    if m > 0 {
        linalg::invert(&cs.constraint_matrix()).map_err(|e| {
            Error::Classification(format!("constraints are not all second-class: {e}"))
        })?;
    }
    Ok((2 * n - m) / 2)
}

/// Reduction of a pseudo-chiral mode to a one-dimensional oscillator
/// `H = ½P² + ½ω²X²` with `X = ±i√2 x2`, `P = √2 ω x1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalReduction {
    pub mode: Mode,
    pub omega: f64,
    /// `X = x_coeffs · (x1, x2)`
    pub x_coeffs: [C64; 2],
    /// `P = p_coeffs · (x1, x2)`
    pub p_coeffs: [C64; 2],
    /// `{X, P}` evaluated with the first-order bracket engine.
    pub bracket_xp: C64,
    /// `max |H(X, P) − ω²(x1² − x2²)|` over a spanning set of quadratic monomials.
    pub hamiltonian_residual: f64,
}

impl CanonicalReduction {
    pub fn to_canonical(&self, x: [C64; 2]) -> (C64, C64) {
        (
            self.x_coeffs[0] * x[0] + self.x_coeffs[1] * x[1],
            self.p_coeffs[0] * x[0] + self.p_coeffs[1] * x[1],
        )
    }

    pub fn from_canonical(&self, big_x: C64, big_p: C64) -> [C64; 2] {
        [big_p / self.p_coeffs[0], big_x / self.x_coeffs[1]]
    }

    pub fn reduced_hamiltonian(&self, big_x: C64, big_p: C64) -> C64 {
        0.5 * big_p * big_p + 0.5 * self.omega * self.omega * big_x * big_x
    }

    /// `H̃ = ω²(x1² − x2²)`
    pub fn mode_hamiltonian(&self, x: [C64; 2]) -> C64 {
        self.omega * self.omega * (x[0] * x[0] - x[1] * x[1])
    }

    /// Closed-form flow of `(X, P)` under the reduced Hamiltonian.
    pub fn evolve(&self, big_x: C64, big_p: C64, t: f64) -> (C64, C64) {
        let w = self.omega;
        let (s, co) = (w * t).sin_cos();
        (big_x * co + big_p * (s / w), -big_x * (w * s) + big_p * co)
    }
}

pub fn reduce_mode(mode: Mode, params: OscParams) -> CanonicalReduction {
    let w = params.omega();
    let r2 = std::f64::consts::SQRT_2;
    let x_coeffs = [ZERO, c(0.0, mode.sign() * r2)];
    let p_coeffs = [c(r2 * w, 0.0), ZERO];
    let table = fj_brackets(&FirstOrderLagrangian::pseudo_chiral(mode, params))
        .expect("pseudo-chiral symplectic form is invertible for positive omega");
    let bracket_xp = table.bracket_linear(&x_coeffs, &p_coeffs);
    let mut reduction = CanonicalReduction {
        mode,
        omega: w,
        x_coeffs,
        p_coeffs,
        bracket_xp,
        hamiltonian_residual: 0.0,
    };
    // (1,0), (0,1), (1,1) fix every coefficient of a binary quadratic form
    let probes = [[ONE, ZERO], [ZERO, ONE], [ONE, ONE]];
    reduction.hamiltonian_residual = probes
        .iter()
        .map(|&x| {
            let (bx, bp) = reduction.to_canonical(x);
            (reduction.reduced_hamiltonian(bx, bp) - reduction.mode_hamiltonian(x)).norm()
        })
        .fold(0.0, f64::max);
    reduction
}
