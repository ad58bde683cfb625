//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p curved-duality --test acceptance`. Tolerances are
//! pinned below; the process exits non-zero if any criterion fails.

use std::f64::consts::TAU;
use std::process::ExitCode;
use std::time::Instant;

use curved_duality::duality::ks::{
    ks_map, level_set_minimum, point_on_level_set, reduced_bracket_check, ReducedTrajectory,
};
use curved_duality::duality::{
    bohlin_canonicity_residual, bohlin_constants_residual, bohlin_map, bohlin_params, bohlin_surface_check,
    measure_monopole_constant, point_on_energy_surface, MONOPOLE_BRACKET_CONSTANT,
};
use curved_duality::dynamics::{
    coulomb_algebra_residual, cubic_algebra_residual, integrate, osc_hamiltonian, radial_period, AngularMomentum,
    CoulombHamiltonian, FiniteDifference, GradientMode, HamiltonianSystem, HiddenInvariant, Observable,
    OscillatorHamiltonian, PlanarCoulomb, PlanarOscillator, PlanarPoint, QuadOscillator, QuadPoint, RungeLenz,
};
use curved_duality::sampling::PhaseSampler;
use curved_duality::spectra::{
    alpha_tilde, coulomb_nmax, interrelation_at_coupling, interrelation_residual, mic_degeneracy, mic_spectrum,
    osc_nmax_2d, osc_nmax_4d, osc_sector_degeneracy_4d, osc_spectrum_2d, osc_spectrum_4d, osc_tower_2d, osc_tower_4d,
    sphere_positivity_survivors, HalfInt, LevelBound, Sector,
};
use curved_duality::{Complex64, Curvature, SpaceParams};

const CONSERVATION_TOL: f64 = 1e-9;
const INTEGRATION_TOL: f64 = 1e-12;
const PERIODS: f64 = 50.0;
const ALGEBRA_TOL: f64 = 1e-8;
const CANONICITY_TOL: f64 = 1e-9;
const SURFACE_TOL: f64 = 1e-10;
const CONSTANTS_MAP_TOL: f64 = 1e-10;
const KS_NORM_TOL: f64 = 1e-12;
const FIBER_TOL: f64 = 1e-12;
const REDUCED_BRACKET_TOL: f64 = 1e-8;
const MIC_SURFACE_TOL: f64 = 1e-9;
const INTERRELATION_TOL: f64 = 1e-12;
const FLAT_PERIOD_TOL: f64 = 1e-4;
const FLAT_SPECTRUM_TOL: f64 = 1e-6;
const GRADIENT_TOL: f64 = 1e-6;

const POINTS: usize = 1000;
const KS_POINTS: usize = 10_000;

struct Outcome {
    pass: bool,
    summary: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: String) -> Self {
        Self { pass, summary, notes: Vec::new() }
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn osc2(curv: Curvature) -> SpaceParams {
    SpaceParams::oscillator(curv, 1.0, 1.0, 2).unwrap()
}

/// Integrates for `PERIODS` characteristic periods and returns the largest
/// relative drift over the logged invariants, with the period used.
fn drift_over_periods<S: HamiltonianSystem<1>>(
    system: &S,
    p0: PlanarPoint,
    period_per_radial: f64,
) -> Result<(f64, f64), String> {
    let radial = radial_period(system, p0, 40.0, INTEGRATION_TOL).map_err(|e| e.to_string())?;
    let period = period_per_radial * radial;
    let traj = integrate(system, p0, PERIODS * period, INTEGRATION_TOL).map_err(|e| e.to_string())?;
    Ok((traj.drift_report().max(), period))
}

fn conservation() -> Outcome {
    // bounded on both curvatures: the pseudosphere potential saturates at α²R₀²/2
    let p0 = PlanarPoint::new([c(0.3, 0.1)], [c(0.2, 0.45)]);
    let mut worst: f64 = 0.0;
    let mut parts = Vec::new();
    let mut errors = Vec::new();
    for curv in [Curvature::Sphere, Curvature::Pseudosphere] {
        let params = osc2(curv);
        // the centred ellipse closes after two radial periods
        match drift_over_periods(&PlanarOscillator::new(params), p0, 2.0) {
            Ok((d, period)) => {
                worst = worst.max(d);
                parts.push(format!("osc eps={:+} T={period:.4} drift={d:.2e}", params.epsilon()));
            }
            Err(e) => errors.push(e),
        }
        let energy = osc_hamiltonian(&p0, &params).unwrap();
        let coulomb = bohlin_params(energy, &params).unwrap().coulomb_params(2).unwrap();
        let image = bohlin_map(&p0).unwrap();
        match drift_over_periods(&PlanarCoulomb::new(coulomb).unwrap(), image, 1.0) {
            Ok((d, period)) => {
                worst = worst.max(d);
                parts.push(format!("coulomb(from eps={:+}) T={period:.4} drift={d:.2e}", params.epsilon()));
            }
            Err(e) => errors.push(e),
        }
    }
    let pass = errors.is_empty() && worst < CONSERVATION_TOL;
    let mut out =
        Outcome::new(pass, format!("max relative drift {worst:.2e} over {PERIODS} periods (tol {CONSERVATION_TOL:e})"));
    out.notes = parts;
    out.notes.extend(errors.into_iter().map(|e| format!("error: {e}")));
    out
}

fn algebra() -> Outcome {
    let mut s = PhaseSampler::new(7);
    let mut cubic: f64 = 0.0;
    let mut cubic_fd: f64 = 0.0;
    for curv in [Curvature::Sphere, Curvature::Pseudosphere] {
        let params = SpaceParams::oscillator(curv, 1.1, 0.9, 2).unwrap();
        for _ in 0..POINTS {
            let p: PlanarPoint = s.point();
            cubic = cubic.max(cubic_algebra_residual(&p, &params, GradientMode::Analytic).unwrap().max());
            cubic_fd = cubic_fd.max(cubic_algebra_residual(&p, &params, GradientMode::FiniteDifference).unwrap().max());
        }
    }
    let coulomb_params = SpaceParams::coulomb(1.3, 0.8, 2).unwrap();
    let mut reduced: f64 = 0.0;
    let mut reduced_fd: f64 = 0.0;
    for _ in 0..POINTS {
        let p: PlanarPoint = s.point();
        reduced = reduced.max(coulomb_algebra_residual(&p, &coulomb_params, GradientMode::Analytic).unwrap().max());
        reduced_fd = reduced_fd
            .max(coulomb_algebra_residual(&p, &coulomb_params, GradientMode::FiniteDifference).unwrap().max());
    }
    let pass = cubic < ALGEBRA_TOL && reduced < ALGEBRA_TOL;
    let mut out = Outcome::new(
        pass,
        format!("cubic {cubic:.2e}, reduced {reduced:.2e} at {POINTS} points each (tol {ALGEBRA_TOL:e})"),
    );
    out.notes.push(format!("with finite-difference gradients: cubic {cubic_fd:.2e}, reduced {reduced_fd:.2e}"));
    out
}

fn bohlin() -> Outcome {
    let mut s = PhaseSampler::new(11);
    let mut canonicity: f64 = 0.0;
    for _ in 0..POINTS {
        let p: PlanarPoint = s.point();
        canonicity = canonicity.max(bohlin_canonicity_residual(&p).unwrap());
    }
    let mut surface: f64 = 0.0;
    let mut constants: f64 = 0.0;
    for curv in [Curvature::Sphere, Curvature::Pseudosphere] {
        let params = SpaceParams::oscillator(curv, 1.2, 0.9, 2).unwrap();
        for _ in 0..POINTS / 2 {
            let z = s.coordinates::<1>()[0];
            let floor = osc_hamiltonian(&PlanarPoint::new([z], [c(0.0, 0.0)]), &params).unwrap();
            let energy = floor + s.uniform(0.05, 4.0);
            let p = point_on_energy_surface(z, Complex64::from_polar(1.0, s.angle()), energy, &params).unwrap();
            surface = surface.max(bohlin_surface_check(&p, energy, &params).unwrap());
            let m = bohlin_constants_residual(&p, &params).unwrap();
            constants = constants.max(m.angular_momentum.max(m.hidden));
        }
    }
    let pass = canonicity < CANONICITY_TOL && surface < SURFACE_TOL && constants < CONSTANTS_MAP_TOL;
    Outcome::new(
        pass,
        format!(
            "canonicity {canonicity:.2e} (tol {CANONICITY_TOL:e}), surface {surface:.2e} (tol {SURFACE_TOL:e}), constants map {constants:.2e} (tol {CONSTANTS_MAP_TOL:e})"
        ),
    )
}

fn ks() -> Outcome {
    let mut s = PhaseSampler::new(13);
    let mut norm: f64 = 0.0;
    let mut fiber: f64 = 0.0;
    for _ in 0..KS_POINTS {
        let p: QuadPoint = s.point();
        let r = ks_map(&p).unwrap();
        norm = norm.max((r.u_norm() - p.z_norm_sq()).abs());
        let q = ks_map(&p.rotated(s.angle())).unwrap();
        let d = (0..3).map(|k| (r.u[k] - q.u[k]).abs().max((r.p[k] - q.p[k]).abs())).fold((r.s - q.s).abs(), f64::max);
        fiber = fiber.max(d);
    }
    let mut brackets: f64 = 0.0;
    for _ in 0..POINTS {
        let p: QuadPoint = s.point();
        brackets = brackets.max(reduced_bracket_check(&p).unwrap().max());
    }
    let probe = QuadPoint::new([c(0.4, 0.1), c(-0.2, 0.3)], [c(0.7, -0.5), c(0.2, 1.1)]);
    let measured = measure_monopole_constant(&probe).unwrap();

    let mut mic: f64 = 0.0;
    let mut notes = vec![format!(
        "monopole constant: frozen {MONOPOLE_BRACKET_CONSTANT}, finite-difference measurement {measured:.10}"
    )];
    let mut errors = Vec::new();
    for curv in [Curvature::Sphere, Curvature::Pseudosphere] {
        let params = SpaceParams::oscillator(curv, 1.0, 1.0, 4).unwrap();
        let z = [c(0.3, 0.1), c(-0.1, 0.25)];
        let charge = 0.1;
        let energy = level_set_minimum(z, charge, &params).unwrap() + 0.1;
        let p0 = point_on_level_set(z, [c(0.2, 0.5), c(0.7, -0.3)], energy, charge, &params).unwrap();
        let system = QuadOscillator::new(params);
        match integrate(&system, p0, 60.0, INTEGRATION_TOL)
            .and_then(|t| ReducedTrajectory::from_trajectory(&t, &params))
        {
            Ok(reduced) => {
                let r = reduced.max_residual();
                mic = mic.max(r);
                notes.push(format!(
                    "eps={:+}: {} logged points, MIC residual {r:.2e}",
                    params.epsilon(),
                    reduced.times.len()
                ));
            }
            Err(e) => errors.push(format!("eps={:+}: {e}", params.epsilon())),
        }
    }
    let pass = errors.is_empty()
        && norm < KS_NORM_TOL
        && fiber < FIBER_TOL
        && brackets < REDUCED_BRACKET_TOL
        && (measured - MONOPOLE_BRACKET_CONSTANT).abs() < 1e-6
        && mic < MIC_SURFACE_TOL;
    let mut out = Outcome::new(
        pass,
        format!(
            "|u|=zz̄ {norm:.2e} on {KS_POINTS} (tol {KS_NORM_TOL:e}), fiber {fiber:.2e} (tol {FIBER_TOL:e}), brackets {brackets:.2e} (tol {REDUCED_BRACKET_TOL:e}), MIC surface {mic:.2e} (tol {MIC_SURFACE_TOL:e})"
        ),
    );
    notes.extend(errors.into_iter().map(|e| format!("error: {e}")));
    out.notes = notes;
    out
}

fn spectrum() -> Outcome {
    let mut failures = Vec::new();
    let mut notes = Vec::new();

    // interrelation on the pseudosphere, every admissible level
    let pseudo = osc2(Curvature::Pseudosphere);
    let LevelBound::Finite(n_max) = osc_nmax_2d(&pseudo) else { unreachable!() };
    let mut inter: f64 = 0.0;
    for n in 0..=n_max {
        inter = inter.max(interrelation_residual(n, &pseudo, Sector::of_level(n)).unwrap());
    }
    if inter >= INTERRELATION_TOL {
        failures.push(format!("pseudosphere interrelation {inter:.2e}"));
    }
    notes.push(format!("eps=-1, alpha=1, R0=1: {} levels, interrelation {inter:.2e}", n_max + 1));

    // sphere: fixed (γ, r₀) from the first sphere levels, positivity filter
    let sphere = osc2(Curvature::Sphere);
    let mut inter_sphere: f64 = 0.0;
    let mut checked = 0;
    for n in 0..20 {
        let energy = osc_spectrum_2d(&sphere, n).unwrap();
        let rec = bohlin_params(energy, &sphere).unwrap();
        inter_sphere = inter_sphere.max(interrelation_residual(n, &sphere, Sector::of_level(n)).unwrap());
        for sector in Sector::BOTH {
            let survivors = sphere_positivity_survivors(rec.gamma, rec.r0, sector, 10_000).unwrap();
            let nmax = coulomb_nmax(rec.gamma, rec.r0, sector).unwrap();
            let expected: Vec<HalfInt> = (0..nmax.map_or(0, |m| m + 1)).map(|i| sector.sigma() + i).collect();
            if survivors != expected {
                failures.push(format!("gamma={}: survivors {:?} vs cutoff {:?}", rec.gamma, survivors.len(), nmax));
            }
            for ns in survivors {
                let r = interrelation_at_coupling(rec.gamma, rec.r0, Curvature::Sphere, ns).unwrap().residual();
                inter_sphere = inter_sphere.max(r);
                checked += 1;
            }
        }
    }
    if inter_sphere >= INTERRELATION_TOL {
        failures.push(format!("sphere interrelation {inter_sphere:.2e}"));
    }
    notes.push(format!(
        "eps=+1: {checked} surviving levels over 20 couplings, survivors = 0..=coulomb_nmax in every case, interrelation {inter_sphere:.2e}"
    ));

    // pseudosphere level counts against the cutoff formulas, evaluated here
    let mut count_cases = 0;
    for &alpha in &[0.1, 0.5, 1.0, 1.7, 3.0, 10.0] {
        for &r in &[0.5, 1.0, 1.5, 2.0, 4.0] {
            let a = alpha_tilde(alpha, r);
            let p2 = SpaceParams::oscillator(Curvature::Pseudosphere, r, alpha, 2).unwrap();
            let p4 = SpaceParams::oscillator(Curvature::Pseudosphere, r, alpha, 4).unwrap();
            let want2 = ((2.0 * a * r * r + 1e-12).floor() as i64 - 1 + 1).max(0) as usize;
            let ar = a * r * r;
            let want4 = ((ar * (1.0 + (1.0 + 2.0 / (ar * ar)).sqrt()) + 1e-12).floor() as i64 - 2 + 1).max(0) as usize;
            let got2 = osc_tower_2d(&p2, i64::MAX).unwrap().len();
            let got4 = osc_tower_4d(&p4, i64::MAX).unwrap().len();
            if got2 != want2 || got4 != want4 {
                failures.push(format!("alpha={alpha} R0={r}: counts {got2}/{got4} vs {want2}/{want4}"));
            }
            count_cases += 1;
        }
    }
    if osc_nmax_2d(&pseudo) != LevelBound::Finite(1) {
        failures.push("2D cutoff at alpha=R0=1 is not 1".into());
    }
    let pseudo4 = SpaceParams::oscillator(Curvature::Pseudosphere, 1.0, 1.0, 4).unwrap();
    if osc_nmax_4d(&pseudo4) != LevelBound::Finite(0) {
        failures.push("4D cutoff at alpha=R0=1 is not 0".into());
    }
    notes.push(format!("level counts match both cutoff formulas on {count_cases} (alpha, R0) pairs"));

    let ground = mic_spectrum(1.0, 1.0, HalfInt::ZERO, 0).unwrap().energy;
    if (ground + 0.5).abs() > 1e-15 {
        failures.push(format!("mic ground level {ground}"));
    }
    notes.push(format!("mic_spectrum(gamma=1, r0=1, s=0, k=0) = {ground}"));

    // degeneracy: enumeration vs sum over l_s vs 4D oscillator states
    let mut degeneracy_ok = true;
    notes.push("degeneracy report (enumeration | k(k+|s|-1) as printed):".into());
    for twice in 0..=4 {
        let s = HalfInt::from_doubled(twice);
        let mut row = Vec::new();
        for k in 0..6 {
            let d = mic_degeneracy(k, s).unwrap();
            let by_ls: u64 = (0..=k).map(|i| ((s + i).doubled() + 1) as u64).sum();
            let by_osc = osc_sector_degeneracy_4d(2 * k + twice, s);
            degeneracy_ok &= d.enumerated == by_ls && d.enumerated == by_osc;
            row.push(format!("k={k}: {}|{}", d.enumerated, d.paper_formula));
        }
        notes.push(format!("  s={s}: {}", row.join("  ")));
    }
    if !degeneracy_ok {
        failures.push("degeneracy enumeration inconsistent".into());
    }

    let pass = failures.is_empty();
    let summary = if pass {
        format!(
            "interrelation {:.2e} (tol {INTERRELATION_TOL:e}), counts and hand values exact",
            inter.max(inter_sphere)
        )
    } else {
        failures.join("; ")
    };
    let mut out = Outcome::new(pass, summary);
    out.notes = notes;
    out
}

fn flat_limit() -> Outcome {
    let r = 1e6;
    let mut worst_period: f64 = 0.0;
    let mut notes = Vec::new();
    let mut errors = Vec::new();
    for curv in [Curvature::Sphere, Curvature::Pseudosphere] {
        let params = SpaceParams::oscillator(curv, r, 1.0, 2).unwrap();
        // flat position (1, 0.2) and momentum (0.3, 0.8) in stereographic scale
        let p0 = PlanarPoint::new([c(0.5 / r, 0.1 / r)], [c(0.3 * r, -0.8 * r)]);
        match radial_period(&PlanarOscillator::new(params), p0, 25.0, INTEGRATION_TOL) {
            Ok(radial) => {
                let period = 2.0 * radial;
                let rel = (period - TAU).abs() / TAU;
                worst_period = worst_period.max(rel);
                notes.push(format!("eps={:+}: period {period:.10} vs 2pi, relative {rel:.2e}", params.epsilon()));
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    let mut worst_spectrum: f64 = 0.0;
    for curv in [Curvature::Sphere, Curvature::Pseudosphere] {
        let p2 = SpaceParams::oscillator(curv, r, 1.0, 2).unwrap();
        let p4 = SpaceParams::oscillator(curv, r, 1.0, 4).unwrap();
        for n in 0..100 {
            worst_spectrum = worst_spectrum.max((osc_spectrum_2d(&p2, n).unwrap() / (n + 1) as f64 - 1.0).abs());
            worst_spectrum = worst_spectrum.max((osc_spectrum_4d(&p4, n).unwrap() / (n + 2) as f64 - 1.0).abs());
        }
    }
    notes.push(format!("spectra N=0..99, both dimensions and curvatures: relative {worst_spectrum:.2e}"));
    notes.extend(errors.iter().map(|e| format!("error: {e}")));
    let pass = errors.is_empty() && worst_period < FLAT_PERIOD_TOL && worst_spectrum < FLAT_SPECTRUM_TOL;
    let mut out = Outcome::new(
        pass,
        format!("R0=1e6: period {worst_period:.2e} (tol {FLAT_PERIOD_TOL:e}), spectra {worst_spectrum:.2e} (tol {FLAT_SPECTRUM_TOL:e})"),
    );
    out.notes = notes;
    out
}

fn gradients() -> Outcome {
    let mut s = PhaseSampler::new(17);
    let mut worst = [0.0f64; 4];
    for i in 0..POINTS {
        let curv = if i % 2 == 0 { Curvature::Sphere } else { Curvature::Pseudosphere };
        let params = SpaceParams::oscillator(curv, 1.1, 0.8, 2).unwrap();
        let cparams = SpaceParams::coulomb(1.3, 0.9, 2).unwrap();
        let p: PlanarPoint = s.point();
        let h = OscillatorHamiltonian { params };
        let iv = HiddenInvariant { params };
        let hc = CoulombHamiltonian { params: cparams };
        let a = RungeLenz { params: cparams };
        let hd = h.gradient(&p).relative_distance(&FiniteDifference(&h).gradient(&p));
        let hcd = hc.gradient(&p).relative_distance(&FiniteDifference(&hc).gradient(&p));
        worst[0] = worst[0].max(hd).max(hcd);
        let j = Observable::<1>::gradient(&AngularMomentum, &p);
        worst[1] = worst[1].max(j.relative_distance(&FiniteDifference(&AngularMomentum).gradient(&p)));
        worst[2] = worst[2].max(iv.gradient(&p).relative_distance(&FiniteDifference(&iv).gradient(&p)));
        worst[3] = worst[3].max(a.gradient(&p).relative_distance(&FiniteDifference(&a).gradient(&p)));
    }
    let pass = max_of(worst) < GRADIENT_TOL;
    Outcome::new(
        pass,
        format!(
            "H/H_C {:.2e}, J {:.2e}, I {:.2e}, A {:.2e} at {POINTS} points (tol {GRADIENT_TOL:e})",
            worst[0], worst[1], worst[2], worst[3]
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("conservation", conservation),
        ("algebra", algebra),
        ("bohlin", bohlin),
        ("ks", ks),
        ("spectrum", spectrum),
        ("flat-limit", flat_limit),
        ("gradient-oracle", gradients),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("[{verdict}] {} {name}: {} ({:.1}s)", i + 1, outcome.summary, start.elapsed().as_secs_f64());
        for note in &outcome.notes {
            println!("       {note}");
        }
        if !outcome.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
