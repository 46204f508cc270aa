//! Acceptance criteria 1 to 10. Prints one PASS/FAIL line per criterion,
//! with the measured value and its pinned tolerance, and exits non-zero if
//! any criterion fails.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pseudochiral::classical::{
    apply_boost, apply_pt, charge_drift, eval_lagrangian, mode_trajectory, noether_charge, soldered_lagrangian,
    Frame, LagrangianKind, Metric, Mode, OscParams, PhaseSamplePoint,
};
use pseudochiral::fock::{
    build_ab, build_hamiltonians, commutator, interior, interior_distance, quadratures, spectrum, InteriorProjector,
    Ladders,
};
use pseudochiral::linalg::{self, c};
use pseudochiral::pseudoherm::{eta_adjoint, eta_conjugate, is_eta_hermitian, reality_check};
use pseudochiral::report::{self, Suite};
use pseudochiral::su11::{self, GeneratorSet};
use pseudochiral::symplectic::{dirac_brackets, fj_brackets, ConstraintSet, FirstOrderLagrangian};
use pseudochiral::{ModeBasis, OperatorMatrix, Representation, RunConfig, C64};

const SEED: u64 = 42;
const DIM: usize = 12;
const MARGIN: usize = 2;

const TOL_BRACKET: f64 = 1e-14;
const TOL_SOLDER: f64 = 1e-12;
const TOL_SYMMETRY: f64 = 1e-12;
const TOL_NOETHER: f64 = 1e-10;
const TOL_INTERIOR: f64 = 1e-10;
const TOL_ETA_HERMITIAN: f64 = 1e-12;
const TOL_IMAG: f64 = 1e-9;
const TOL_HERMITIAN: f64 = 1e-12;
const NON_FACTORIZABLE: f64 = 0.1;
/// "exact" identities: a few ulps of the operand scale
const ULPS: f64 = 16.0;

const SOLDER_SAMPLES: usize = 1000;
const SYMMETRY_SAMPLES: usize = 100;
const PERIODS: f64 = 100.0;

fn exact(scale: f64) -> f64 {
    ULPS * f64::EPSILON * scale.max(1.0)
}

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    summary: String,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Self {
            pass: true,
            summary: String::new(),
            detail: Vec::new(),
        }
    }

    /// Records `value < tol` (or `value > tol` when `above`).
    fn bound(&mut self, label: &str, value: f64, tol: f64, above: bool) {
        let ok = if above { value > tol } else { value < tol };
        self.pass &= ok;
        let rel = if above { ">" } else { "<" };
        self.detail.push(format!(
            "{} {label}: {value:e} (need {rel} {tol:e})",
            if ok { "ok  " } else { "MISS" }
        ));
    }

    fn below(&mut self, label: &str, value: f64, tol: f64) {
        self.bound(label, value, tol, false);
    }

    fn above(&mut self, label: &str, value: f64, tol: f64) {
        self.bound(label, value, tol, true);
    }

    fn require(&mut self, label: &str, ok: bool, note: String) {
        self.pass &= ok;
        self.detail.push(format!("{} {label}: {note}", if ok { "ok  " } else { "MISS" }));
    }
}

fn sample(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

fn point(rng: &mut ChaCha8Rng) -> PhaseSamplePoint {
    PhaseSamplePoint::new([sample(rng), sample(rng)], [sample(rng), sample(rng)], Frame::Hyperbolic)
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(SEED);
    r.set_stream(stream);
    r
}

fn omega(w: f64) -> OscParams {
    OscParams::new(w).unwrap()
}

fn bases() -> (ModeBasis, ModeBasis) {
    (
        ModeBasis::new(DIM, Representation::R1).unwrap(),
        ModeBasis::new(DIM, Representation::R2).unwrap(),
    )
}

fn criterion_1() -> Outcome {
    let mut out = Outcome::new();
    let mut worst = 0.0f64;
    let mut agree = 0.0f64;
    for w in [0.5, 1.0, 3.0] {
        for mode in [Mode::Plus, Mode::Minus] {
            let expected = c(0.0, mode.sign() / (2.0 * w));
            let fj = fj_brackets(&FirstOrderLagrangian::pseudo_chiral(mode, omega(w))).unwrap();
            let dirac = dirac_brackets(&ConstraintSet::pseudo_chiral(mode, omega(w))).unwrap();
            worst = worst
                .max((fj.bracket("x1", "x2").unwrap() - expected).norm())
                .max((dirac.bracket("x1", "x2").unwrap() - expected).norm());
            let restricted = dirac.restrict(&["x1", "x2"]).unwrap();
            agree = agree.max(linalg::max_norm(&(fj.matrix() - restricted.matrix())));
        }
    }
    out.below("{x1,x2} vs ±i/(2ω), ω in {0.5,1,3}", worst, TOL_BRACKET);
    out.below("symplectic vs constrained entrywise", agree, TOL_BRACKET);
    out.summary = format!("max bracket deviation {worst:e}, engine disagreement {agree:e}");
    out
}

fn criterion_2() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(2);
    let params = omega(1.0);
    let w = params.omega();
    let mut worst = 0.0f64;
    for _ in 0..SOLDER_SAMPLES {
        let p = point(&mut rng);
        let ge = Metric::apply(Metric::G, Metric::apply(Metric::EPS, p.v));
        let y = [0, 1].map(|k| 0.5 * p.q[k] + c(0.0, 0.5 / w) * ge[k]);
        let soldered = soldered_lagrangian(y, &p, params).unwrap();
        let indirect = eval_lagrangian(LagrangianKind::Indirect, &p, params).unwrap();
        worst = worst.max((soldered - indirect).norm());
    }
    out.below(&format!("|L(y*,x) − L_I(x)| over {SOLDER_SAMPLES} samples"), worst, TOL_SOLDER);
    out.summary = format!("max soldering residual {worst:e} over {SOLDER_SAMPLES} samples");
    out
}

fn criterion_3() -> Outcome {
    let mut out = Outcome::new();
    let mut rng = rng(3);
    let params = omega(1.0);
    let w = params.omega();
    let mut boost = 0.0f64;
    let mut pt = 0.0f64;
    for _ in 0..SYMMETRY_SAMPLES {
        let p = point(&mut rng);
        let theta = rng.gen_range(-1.0..=1.0);
        let boosted = apply_boost(&p, theta).unwrap();
        let reflected = apply_pt(&p);
        for kind in [LagrangianKind::Indirect, LagrangianKind::Plus, LagrangianKind::Minus] {
            let base = eval_lagrangian(kind, &p, params).unwrap();
            boost = boost.max((eval_lagrangian(kind, &boosted, params).unwrap() - base).norm());
            pt = pt.max((eval_lagrangian(kind, &reflected, params).unwrap() - base).norm());
        }
    }
    out.below("boost invariance of L_I, L_+, L_-", boost, TOL_SYMMETRY);
    out.below("PT invariance of L_I, L_+, L_-", pt, TOL_SYMMETRY);

    let mut closed = 0.0f64;
    let mut drift = 0.0f64;
    let period = 2.0 * std::f64::consts::PI / w;
    for mode in [Mode::Plus, Mode::Minus] {
        for _ in 0..SYMMETRY_SAMPLES {
            let p = point(&mut rng);
            let expected = mode.sign() * w * (p.q[0] * p.q[0] - p.q[1] * p.q[1]);
            closed = closed.max((noether_charge(mode, &p, params).unwrap() - expected).norm());
        }
        let x0 = [sample(&mut rng), sample(&mut rng)];
        let traj = mode_trajectory(mode, params, x0, PERIODS * period, 20 * PERIODS as usize + 1).unwrap();
        drift = drift.max(charge_drift(mode, &traj, params).unwrap());
    }
    out.below("C_± = ±ω(x1² − x2²)", closed, exact(w));
    out.below(&format!("charge drift over {PERIODS} periods"), drift, TOL_NOETHER);
    out.summary = format!("boost {boost:e}, PT {pt:e}, charge drift {drift:e}");
    out
}

fn criterion_4() -> Outcome {
    let mut out = Outcome::new();
    let (r1, _) = bases();
    let h = build_hamiltonians(r1, omega(1.0)).unwrap();
    let scale = h.h_i.max_norm();
    let split = h.h_i.distance(&(&h.h_plus + &h.h_minus)).unwrap();
    let adj = h.h_plus.adjoint().distance(&h.h_minus).unwrap();
    out.below("H_I − (H_+ + H_−)", split, exact(scale));
    out.below("H_+† − H_−", adj, exact(scale));
    out.summary = format!("splitting {split:e}, adjoint pairing {adj:e} at D={DIM}");
    out
}

fn criterion_5() -> Outcome {
    let mut out = Outcome::new();
    let (r1, r2) = bases();
    let params = omega(1.0);
    let (x1, p1) = quadratures(r1, 0, params).unwrap();
    let (x2, p2) = quadratures(r1, 1, params).unwrap();
    let rules = eta_conjugate(&x1)
        .unwrap()
        .distance(&x1)
        .unwrap()
        .max(eta_conjugate(&x2).unwrap().distance(&(-&x2)).unwrap())
        .max(eta_conjugate(&p1).unwrap().distance(&(-&p1)).unwrap())
        .max(eta_conjugate(&p2).unwrap().distance(&p2).unwrap());
    out.below("η x_i η⁻¹ = g_ij x_j, η p_i η⁻¹ = −g_ij p_j", rules, exact(1.0));
    let mut tilde = 0.0f64;
    let mut herm = 0.0f64;
    for basis in [r1, r2] {
        let l = build_ab(basis, params).unwrap();
        tilde = tilde.max(eta_adjoint(&l.a).distance(&l.a_tilde).unwrap() / exact(l.a.max_norm()));
        let h = build_hamiltonians(basis, params).unwrap();
        for op in [&h.h_plus, &h.h_minus] {
            herm = herm.max(is_eta_hermitian(op, TOL_ETA_HERMITIAN).residual);
        }
    }
    out.below("eta_adjoint(a) − ã in units of the exact threshold", tilde, 1.0);
    out.below("η-hermiticity of H_± (R1, R2)", herm, TOL_ETA_HERMITIAN);
    out.summary = format!("η rules {rules:e}, ã {tilde:e} × exact, H_± η-hermiticity {herm:e}");
    out
}

fn ladder_residual(l: &Ladders, proj: &InteriorProjector) -> f64 {
    let id = OperatorMatrix::identity(l.basis());
    let zero = OperatorMatrix::zeros(l.basis());
    let cases = [
        (&l.a, &l.a_tilde, &id),
        (&l.b, &l.b_tilde, &id),
        (&l.a, &l.b, &zero),
        (&l.a, &l.b_tilde, &zero),
        (&l.a_tilde, &l.b, &zero),
        (&l.a_tilde, &l.b_tilde, &zero),
    ];
    cases
        .iter()
        .map(|(x, y, e)| interior_distance(&commutator(x, y).unwrap(), e, proj).unwrap())
        .fold(0.0, f64::max)
}

fn criterion_6() -> Outcome {
    let mut out = Outcome::new();
    let (r1, r2) = bases();
    let mut parts = Vec::new();
    for basis in [r1, r2] {
        let l = build_ab(basis, omega(1.0)).unwrap();
        let proj = interior(basis, MARGIN).unwrap();
        let res = ladder_residual(&l, &proj);
        out.below(&format!("{} ladder commutators on interior", basis.representation().name()), res, TOL_INTERIOR);
        parts.push(format!("{} {res:e}", basis.representation().name()));
    }
    out.summary = format!("interior commutator residuals {}", parts.join(", "));
    out
}

fn criterion_7() -> Outcome {
    let mut out = Outcome::new();
    let (r1, r2) = bases();
    let w = 1.0;
    let params = omega(w);
    let h2 = build_hamiltonians(r2, params).unwrap();
    let mut levels: Vec<f64> = (0..DIM).flat_map(|n| std::iter::repeat_n(w * (n as f64 + 0.5), DIM)).collect();
    levels.sort_by(f64::total_cmp);
    let mut dev = 0.0f64;
    for h in [&h2.h_plus, &h2.h_minus] {
        let spec = spectrum(h).unwrap();
        let mut re: Vec<f64> = spec.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        dev = dev.max(spec.iter().map(|z| z.im.abs()).fold(0.0, f64::max));
        dev = re.iter().zip(&levels).map(|(a, b)| (a - b).abs()).fold(dev, f64::max);
    }
    out.below("R2 H_± spectrum vs ω(n + ½), D-fold", dev, TOL_INTERIOR);

    // every operator the suites certify as η-hermitian
    let config = RunConfig::default();
    let mut ops: Vec<(String, OperatorMatrix, InteriorProjector)> = Vec::new();
    let p1 = interior(r1, MARGIN).unwrap();
    let p2 = interior(r2, MARGIN).unwrap();
    let h1 = build_hamiltonians(r1, params).unwrap();
    let g1 = su11::build_eta_generators(&build_ab(r1, params).unwrap());
    for (label, op) in [("H+", h1.h_plus), ("H-", h1.h_minus), ("Jz", g1.jz.clone()), ("Jy", g1.jy.clone())] {
        ops.push((format!("R1 {label}"), op, p1.clone()));
    }
    for (label, op) in report::r2_eta_hermitian_operators(&config).unwrap() {
        ops.push((format!("R2 {label}"), op, p2.clone()));
    }
    let mut complex = Vec::new();
    let mut worst = 0.0f64;
    for (label, op, proj) in &ops {
        let verdict = is_eta_hermitian(op, TOL_ETA_HERMITIAN);
        out.require(
            &format!("{label} is η-hermitian"),
            verdict.pass,
            format!("residual {:e}", verdict.residual),
        );
        let reality = reality_check(op, proj, TOL_IMAG).unwrap();
        worst = worst.max(reality.max_imag);
        out.below(&format!("{label} max |Im λ| on interior"), reality.max_imag, TOL_IMAG);
        if !reality.pass {
            complex.push(label.clone());
        }
    }
    out.summary = format!(
        "R2 H_± level deviation {dev:e}; {} η-hermitian operators, max |Im λ| {worst:e}{}",
        ops.len(),
        if complex.is_empty() {
            String::new()
        } else {
            format!("; non-real spectra: {}", complex.join(", "))
        }
    );
    out
}

fn criterion_8() -> Outcome {
    let mut out = Outcome::new();
    let (r1, r2) = bases();
    let params = omega(1.0);
    let p1 = interior(r1, MARGIN).unwrap();
    let p2 = interior(r2, MARGIN).unwrap();
    let eta1 = su11::build_eta_generators(&build_ab(r1, params).unwrap());
    let eta2 = su11::build_eta_generators(&build_ab(r2, params).unwrap());
    let herm1 = su11::build_hermitian_generators(&eta1).unwrap();
    let herm2 = su11::build_hermitian_generators(&eta2).unwrap();
    let std11 = su11::build_standard_su11(r2).unwrap();
    let sets: [(&str, &GeneratorSet, &InteriorProjector); 5] = [
        ("R1 η set", &eta1, &p1),
        ("R2 η set", &eta2, &p2),
        ("R1 hermitian set", &herm1, &p1),
        ("R2 hermitian set", &herm2, &p2),
        ("standard set", &std11, &p2),
    ];
    let mut worst = 0.0f64;
    for (label, gs, proj) in sets {
        let rep = su11::check_algebra(gs, proj, TOL_INTERIOR).unwrap();
        out.require(&format!("{label} non-degenerate"), !rep.degenerate, "generators are non-zero".into());
        out.below(&format!("{label} algebra residual"), rep.max_residual(), TOL_INTERIOR);
        worst = worst.max(rep.max_residual());
    }
    let herm = herm1
        .cartesian()
        .iter()
        .map(|(_, g)| g.hermiticity_residual())
        .fold(0.0, f64::max);
    out.below("R1 hermitian set hermiticity", herm, TOL_HERMITIAN);
    out.summary = format!("max algebra residual {worst:e}, hermiticity {herm:e}");
    out
}

fn criterion_9() -> Outcome {
    let mut out = Outcome::new();
    let (r1, r2) = bases();
    let params = omega(1.0);
    let p1 = interior(r1, MARGIN).unwrap();
    let p2 = interior(r2, MARGIN).unwrap();
    let mut fact = 0.0f64;
    let mut comm = 0.0f64;
    for (basis, proj) in [(r1, &p1), (r2, &p2)] {
        let gs = su11::build_eta_generators(&build_ab(basis, params).unwrap());
        let rep = su11::casimir(&gs, proj).unwrap();
        fact = fact.max(rep.factorization_residual);
        comm = comm.max(rep.max_commutator());
    }
    out.below("η set J² − (N/2)(N/2+1) on interior", fact, TOL_INTERIOR);
    out.below("η set [J², J_k]", comm, TOL_INTERIOR);
    let std11 = su11::casimir(&su11::build_standard_su11(r2).unwrap(), &p2).unwrap();
    out.above("standard SU(1,1) gap to the factorized form", std11.factorization_residual, NON_FACTORIZABLE);
    let su2 = su11::casimir(&su11::build_standard_su2(r2).unwrap(), &p2).unwrap();
    out.below("SU(2) J² − (N/2)(N/2+1)", su2.factorization_residual, TOL_INTERIOR);
    out.summary = format!(
        "η factorization {fact:e}, commutators {comm:e}, standard gap {}, SU(2) {:e}",
        std11.factorization_residual, su2.factorization_residual
    );
    out
}

fn criterion_10() -> Outcome {
    let mut out = Outcome::new();
    let config = RunConfig {
        suites: vec![Suite::Su11],
        ..RunConfig::default()
    };
    let rep = report::run(&config).unwrap();
    let su11_report = rep.suite(Suite::Su11).unwrap();
    let flagged: Vec<_> = su11_report
        .checks
        .iter()
        .filter(|c| c.discrepancy && c.details.contains("-0.25") && c.details.contains("-0.5"))
        .collect();
    out.require(
        "report shows −¼ and −½ in one flagged check",
        flagged.len() == 1,
        format!("{} matching check(s)", flagged.len()),
    );
    if let Some(check) = flagged.first() {
        out.require("flagged check passes", check.pass, check.details.clone());
    }
    let failed = su11_report.checks.iter().filter(|c| !c.pass).count();
    out.require("su11 suite has no failures", failed == 0, format!("{failed} failed"));
    let (_, r2) = bases();
    let closed = su11::standard_casimir_closed_form(r2).unwrap();
    out.below("defining expression on vacuum vs −¼", (closed.defining_vacuum + 0.25).abs(), exact(1.0));
    out.below("reference closed form on vacuum vs −½", (closed.closed_form_vacuum + 0.5).abs(), exact(1.0));
    out.summary = format!(
        "vacuum: defining {} vs reference {}, flagged without failing the suite",
        closed.defining_vacuum, closed.closed_form_vacuum
    );
    out
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("bracket calibration", criterion_1),
        ("soldering", criterion_2),
        ("symmetry and Noether charges", criterion_3),
        ("hamiltonian splitting", criterion_4),
        ("η structure", criterion_5),
        ("ladder algebra", criterion_6),
        ("spectra", criterion_7),
        ("SU(1,1) algebra", criterion_8),
        ("casimir dichotomy", criterion_9),
        ("documented discrepancies", criterion_10),
    ];
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let mut failed = 0;
    for (k, (title, f)) in criteria.iter().enumerate() {
        let outcome = f();
        println!(
            "criterion {:>2} {} {title}: {}",
            k + 1,
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.summary
        );
        if verbose || !outcome.pass {
            for line in &outcome.detail {
                println!("    {line}");
            }
        }
        failed += usize::from(!outcome.pass);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
