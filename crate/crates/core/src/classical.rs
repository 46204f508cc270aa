//! Classical planar oscillator in its direct and indirect Lagrangian forms.
//!
//! Points carry a frame tag: cartesian `(x, y)` or hyperbolic
//! `x1 = (x + y)/√2`, `x2 = (x − y)/√2`. In hyperbolic coordinates the
//! indirect Lagrangian reads `½ g_ij ẋ_i ẋ_j − ½ω² g_ij x_i x_j` with
//! `g = diag(1, −1)`, and it splits into the two pseudo-chiral modes
//! `L_± = ±iω ε_ij x_i ẋ_j − ω² g_ij x_i x_j`.
//!
//! Everything is evaluated over complex numbers: the modes carry an explicit
//! `i`, and the soldering auxiliary variable is complex even for real input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix, C64};
use crate::symplectic::reduce_mode;

/// Positive angular frequency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OscParams {
    omega: f64,
}

impl OscParams {
    pub fn new(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidInput(format!("omega must be positive, got {omega}")));
        }
        Ok(Self { omega })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }
}

/// Constant 2×2 matrices of the hyperbolic plane.
pub struct Metric;

impl Metric {
    /// Pseudo-Euclidean metric `diag(1, −1)`.
    pub const G: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];
    /// Antisymmetric symbol, `ε_12 = 1`.
    pub const EPS: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];
    /// First Pauli matrix, generator of the SU(1,1) boost.
    pub const SIGMA1: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 0.0]];

    pub fn apply(m: [[f64; 2]; 2], v: [C64; 2]) -> [C64; 2] {
        [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
    }

    /// `uᵀ m v`
    pub fn form(m: [[f64; 2]; 2], u: [C64; 2], v: [C64; 2]) -> C64 {
        let mv = Self::apply(m, v);
        u[0] * mv[0] + u[1] * mv[1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Frame {
    Cartesian,
    Hyperbolic,
}

impl Frame {
    fn name(self) -> &'static str {
        match self {
            Frame::Cartesian => "cartesian",
            Frame::Hyperbolic => "hyperbolic",
        }
    }
}

/// Which pseudo-chiral mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Plus,
    Minus,
}

impl Mode {
    pub fn sign(self) -> f64 {
        match self {
            Mode::Plus => 1.0,
            Mode::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSamplePoint {
    pub q: [C64; 2],
    pub v: [C64; 2],
    pub frame: Frame,
}

impl PhaseSamplePoint {
    pub fn new(q: [C64; 2], v: [C64; 2], frame: Frame) -> Self {
        Self { q, v, frame }
    }

    pub fn real(q: [f64; 2], v: [f64; 2], frame: Frame) -> Self {
        Self::new([c(q[0], 0.0), c(q[1], 0.0)], [c(v[0], 0.0), c(v[1], 0.0)], frame)
    }

    fn expect_frame(&self, frame: Frame) -> Result<()> {
        if self.frame == frame {
            Ok(())
        } else {
            Err(Error::WrongFrame {
                expected: frame.name(),
                actual: self.frame.name(),
            })
        }
    }

    /// Largest componentwise distance to `other` (frames must agree).
    pub fn distance(&self, other: &PhaseSamplePoint) -> f64 {
        self.q
            .iter()
            .chain(&self.v)
            .zip(other.q.iter().chain(&other.v))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<PhaseSamplePoint>,
}

fn sample_times(duration: f64, nsteps: usize) -> Result<Vec<f64>> {
    if !(duration.is_finite() && duration > 0.0) {
        return Err(Error::InvalidInput(format!("duration must be positive, got {duration}")));
    }
    if nsteps < 2 {
        return Err(Error::InvalidInput(format!("need at least 2 samples, got {nsteps}")));
    }
    let dt = duration / (nsteps - 1) as f64;
    Ok((0..nsteps).map(|k| k as f64 * dt).collect())
}

/// Evaluates `x(t) = x0 cos ωt + (v0/ω) sin ωt` per coordinate at `nsteps`
/// equally spaced times in `[0, duration]`.
pub fn simulate(
    params: OscParams,
    initial: PhaseSamplePoint,
    duration: f64,
    nsteps: usize,
) -> Result<Trajectory> {
    let times = sample_times(duration, nsteps)?;
    let w = params.omega();
    let states = times
        .iter()
        .map(|&t| {
            let (s, co) = (w * t).sin_cos();
            let q = [0, 1].map(|k| initial.q[k] * co + initial.v[k] * (s / w));
            let v = [0, 1].map(|k| -initial.q[k] * (w * s) + initial.v[k] * co);
            PhaseSamplePoint::new(q, v, initial.frame)
        })
        .collect();
    Ok(Trajectory { times, states })
}

const FRAME_ROTATION: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn rotate(u: [C64; 2]) -> [C64; 2] {
    [(u[0] + u[1]) * FRAME_ROTATION, (u[0] - u[1]) * FRAME_ROTATION]
}

pub fn to_hyperbolic(p: &PhaseSamplePoint) -> Result<PhaseSamplePoint> {
    p.expect_frame(Frame::Cartesian)?;
    Ok(PhaseSamplePoint::new(rotate(p.q), rotate(p.v), Frame::Hyperbolic))
}

pub fn from_hyperbolic(p: &PhaseSamplePoint) -> Result<PhaseSamplePoint> {
    p.expect_frame(Frame::Hyperbolic)?;
    Ok(PhaseSamplePoint::new(rotate(p.q), rotate(p.v), Frame::Cartesian))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LagrangianKind {
    Direct,
    Indirect,
    Plus,
    Minus,
}

/// Evaluates one of the four Lagrangians at a sample.
///
/// `Direct` needs a cartesian point, `Plus`/`Minus` a hyperbolic one, and
/// `Indirect` accepts either (`ẋẏ − ω²xy` or its metric form).
pub fn eval_lagrangian(which: LagrangianKind, p: &PhaseSamplePoint, params: OscParams) -> Result<C64> {
    let w2 = params.omega() * params.omega();
    let [x, y] = p.q;
    let [vx, vy] = p.v;
    match (which, p.frame) {
        (LagrangianKind::Direct, Frame::Cartesian) => {
            Ok(0.5 * (vx * vx - w2 * x * x) + 0.5 * (vy * vy - w2 * y * y))
        }
        (LagrangianKind::Indirect, Frame::Cartesian) => Ok(vx * vy - w2 * x * y),
        (LagrangianKind::Indirect, Frame::Hyperbolic) => {
            Ok(0.5 * Metric::form(Metric::G, p.v, p.v) - 0.5 * w2 * Metric::form(Metric::G, p.q, p.q))
        }
        (LagrangianKind::Plus | LagrangianKind::Minus, Frame::Hyperbolic) => {
            let mode = if which == LagrangianKind::Plus {
                Mode::Plus
            } else {
                Mode::Minus
            };
            Ok(mode_lagrangian(mode, p.q, p.v, params))
        }
        (LagrangianKind::Direct, Frame::Hyperbolic) => Err(Error::WrongFrame {
            expected: "cartesian",
            actual: "hyperbolic",
        }),
        (_, Frame::Cartesian) => Err(Error::WrongFrame {
            expected: "hyperbolic",
            actual: "cartesian",
        }),
    }
}

fn mode_lagrangian(mode: Mode, q: [C64; 2], v: [C64; 2], params: OscParams) -> C64 {
    let w = params.omega();
    c(0.0, mode.sign() * w) * Metric::form(Metric::EPS, q, v) - w * w * Metric::form(Metric::G, q, q)
}

/// Combined parity and time reversal.
///
/// Hyperbolic: `x_i → g_ij x_j`, `v_i → −g_ij v_j`. Cartesian: `x ↔ y` with
/// the velocities swapped and negated.
pub fn apply_pt(p: &PhaseSamplePoint) -> PhaseSamplePoint {
    match p.frame {
        Frame::Hyperbolic => PhaseSamplePoint::new(
            Metric::apply(Metric::G, p.q),
            Metric::apply(Metric::G, p.v).map(|z| -z),
            Frame::Hyperbolic,
        ),
        Frame::Cartesian => PhaseSamplePoint::new([p.q[1], p.q[0]], [-p.v[1], -p.v[0]], Frame::Cartesian),
    }
}

/// Finite SU(1,1) boost `exp(θσ1)` acting on positions and velocities.
pub fn apply_boost(p: &PhaseSamplePoint, theta: f64) -> Result<PhaseSamplePoint> {
    p.expect_frame(Frame::Hyperbolic)?;
    let (ch, sh) = (theta.cosh(), theta.sinh());
    let boost = [[ch, sh], [sh, ch]];
    Ok(PhaseSamplePoint::new(
        Metric::apply(boost, p.q),
        Metric::apply(boost, p.v),
        Frame::Hyperbolic,
    ))
}

/// Noether quantity `(∂L_±/∂ẋ_i) σ_ij x_j` of the boost, before any normalization.
/// Equals `±iω(x1² − x2²)`.
pub fn raw_noether_charge(mode: Mode, p: &PhaseSamplePoint, params: OscParams) -> Result<C64> {
    p.expect_frame(Frame::Hyperbolic)?;
    let w = params.omega();
    // ∂L_±/∂ẋ_j = ±iω ε_ij x_i
    let momentum = [0, 1].map(|j| {
        c(0.0, mode.sign() * w) * (Metric::EPS[0][j] * p.q[0] + Metric::EPS[1][j] * p.q[1])
    });
    let delta = Metric::apply(Metric::SIGMA1, p.q);
    Ok(momentum[0] * delta[0] + momentum[1] * delta[1])
}

/// Boost charge of a pseudo-chiral mode, `C_± = ±ω(x1² − x2²)`.
///
/// The raw Noether quantity carries an overall factor `i`; it is divided out
/// so that `C_± = ±H̃/ω` with `H̃ = ω²(x1² − x2²)`.
pub fn noether_charge(mode: Mode, p: &PhaseSamplePoint, params: OscParams) -> Result<C64> {
    Ok(raw_noether_charge(mode, p, params)? / c(0.0, 1.0))
}

/// Closed-form trajectory of a pseudo-chiral mode starting at hyperbolic
/// position `x0`. The first-order dynamics fix the velocities, so only
/// positions are free initial data; the motion is generated by the reduced
/// canonical pair and mapped back.
pub fn mode_trajectory(
    mode: Mode,
    params: OscParams,
    x0: [C64; 2],
    duration: f64,
    nsteps: usize,
) -> Result<Trajectory> {
    let times = sample_times(duration, nsteps)?;
    let reduction = reduce_mode(mode, params);
    let w2 = params.omega() * params.omega();
    let (bx0, bp0) = reduction.to_canonical(x0);
    let states = times
        .iter()
        .map(|&t| {
            let (bx, bp) = reduction.evolve(bx0, bp0, t);
            // Ẋ = P, Ṗ = −ω²X
            let q = reduction.from_canonical(bx, bp);
            let v = reduction.from_canonical(bp, -w2 * bx);
            PhaseSamplePoint::new(q, v, Frame::Hyperbolic)
        })
        .collect();
    Ok(Trajectory { times, states })
}

/// The plus/minus sum after eliminating `z = y − x`, up to a total derivative:
/// `2iω ε_ij (y_i ẋ_j − ½ x_i ẋ_j) − 2ω² g_ij (y_i y_j − y_i x_j + ½ x_i x_j)`.
pub fn soldered_lagrangian(y: [C64; 2], p: &PhaseSamplePoint, params: OscParams) -> Result<C64> {
    p.expect_frame(Frame::Hyperbolic)?;
    let w = params.omega();
    let (x, v) = (p.q, p.v);
    let kinetic = c(0.0, 2.0 * w) * (Metric::form(Metric::EPS, y, v) - 0.5 * Metric::form(Metric::EPS, x, v));
    let potential = 2.0
        * w
        * w
        * (Metric::form(Metric::G, y, y) - Metric::form(Metric::G, y, x) + 0.5 * Metric::form(Metric::G, x, x));
    Ok(kinetic - potential)
}

/// Stationary point of the soldered Lagrangian in the auxiliary variable:
/// `4ω² g y = 2ω² g x + 2iω ε ẋ`.
pub fn solder_stationary_point(p: &PhaseSamplePoint, params: OscParams) -> Result<[C64; 2]> {
    p.expect_frame(Frame::Hyperbolic)?;
    let w = params.omega();
    let system = CMatrix::from_fn(2, 2, |i, j| c(4.0 * w * w * Metric::G[i][j], 0.0));
    let gx = Metric::apply(Metric::G, p.q);
    let ev = Metric::apply(Metric::EPS, p.v);
    let rhs: Vec<C64> = (0..2)
        .map(|i| 2.0 * w * w * gx[i] + c(0.0, 2.0 * w) * ev[i])
        .collect();
    let y = crate::linalg::solve(&system, &rhs)?;
    Ok([y[0], y[1]])
}

/// `L(y*, x) − L_I(x)`, zero when the two pseudo-chiral modes solder into
/// the indirect oscillator.
pub fn solder_residual(p: &PhaseSamplePoint, params: OscParams) -> Result<C64> {
    let y = solder_stationary_point(p, params)?;
    let soldered = soldered_lagrangian(y, p, params)?;
    Ok(soldered - eval_lagrangian(LagrangianKind::Indirect, p, params)?)
}

/// `L_+(y) + L_−(y − x)` with velocities `(ẏ, ẏ − ẋ)`, the unreduced sum.
pub fn mode_sum(y: [C64; 2], y_dot: [C64; 2], p: &PhaseSamplePoint, params: OscParams) -> Result<C64> {
    p.expect_frame(Frame::Hyperbolic)?;
    let z = [y[0] - p.q[0], y[1] - p.q[1]];
    let z_dot = [y_dot[0] - p.v[0], y_dot[1] - p.v[1]];
    Ok(mode_lagrangian(Mode::Plus, y, y_dot, params) + mode_lagrangian(Mode::Minus, z, z_dot, params))
}

/// `max_t |C(t) − C(0)|` along a trajectory.
pub fn charge_drift(mode: Mode, trajectory: &Trajectory, params: OscParams) -> Result<f64> {
    let first = match trajectory.states.first() {
        Some(s) => noether_charge(mode, s, params)?,
        None => return Ok(0.0),
    };
    trajectory.states.iter().try_fold(0.0f64, |acc, s| {
        Ok(acc.max((noether_charge(mode, s, params)? - first).norm()))
    })
}
