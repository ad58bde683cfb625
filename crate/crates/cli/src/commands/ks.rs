//! `ks`: the Kustaanheimo-Stiefel map, its reduced brackets and a pushed
//! four-dimensional trajectory on the MIC-Kepler energy surface.

use std::io::Write;

use rayon::prelude::*;

use curved_duality::duality::{
    ks_map, level_set_minimum, measure_monopole_constant, point_on_level_set, reduced_bracket_check, ReducedTrajectory,
    MONOPOLE_BRACKET_CONSTANT,
};
use curved_duality::dynamics::{integrate_with, IntegratorConfig, QuadOscillator, QuadPoint};
use curved_duality::io::{fmt17, CheckRecord};
use curved_duality::sampling::PhaseSampler;
use curved_duality::SpaceParams;

use super::{c, label};
use crate::config::{RunConfig, SystemChoice};
use crate::error::CliError;
use crate::output::{row, RunDir};

const NORM_TOL: f64 = 1e-12;
const FIBER_TOL: f64 = 1e-12;
const MONOPOLE_TOL: f64 = 1e-6;

struct PointCheck {
    norm: f64,
    fiber: f64,
    brackets: f64,
}

fn check_point(p: &QuadPoint, angle: f64) -> Result<PointCheck, CliError> {
    let r = ks_map(p)?;
    let q = ks_map(&p.rotated(angle))?;
    let fiber = (0..3).map(|k| (r.u[k] - q.u[k]).abs().max((r.p[k] - q.p[k]).abs())).fold((r.s - q.s).abs(), f64::max);
    Ok(PointCheck { norm: (r.u_norm() - p.z_norm_sq()).abs(), fiber, brackets: reduced_bracket_check(p)?.max() })
}

pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    if let Some(sys) = cfg.system.filter(|s| *s != SystemChoice::Osc4d) {
        return Err(CliError::config("system", format!("the map acts on osc4d, got {}", sys.name())));
    }
    let mut sampler = PhaseSampler::new(cfg.seed);
    let samples: Vec<(QuadPoint, f64)> = (0..cfg.points).map(|_| (sampler.point(), sampler.angle())).collect();
    let checks = samples.par_iter().map(|(p, a)| check_point(p, *a)).collect::<Result<Vec<_>, _>>()?;
    let probe = QuadPoint::new([c(0.4, 0.1), c(-0.2, 0.3)], [c(0.7, -0.5), c(0.2, 1.1)]);
    let measured = measure_monopole_constant(&probe)?;

    let z = cfg.initial("z", [c(0.3, 0.1), c(-0.1, 0.25)])?;
    let direction = cfg.initial("pi", [c(0.2, 0.5), c(0.7, -0.3)])?;
    let runs = cfg
        .curvatures()
        .par_iter()
        .map(|&curv| {
            let params = SpaceParams::oscillator(curv, cfg.radius, cfg.alpha, 4)?;
            let energy = level_set_minimum(z, cfg.s, &params)? + cfg.excess;
            let p0 = point_on_level_set(z, direction, energy, cfg.s, &params)?;
            let config = IntegratorConfig { guard: cfg.guard, ..IntegratorConfig::new(cfg.tol) };
            let traj = integrate_with(&QuadOscillator::new(params), p0, cfg.t_end, &config)?;
            Ok((curv, ReducedTrajectory::from_trajectory(&traj, &params)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut dir = RunDir::create(&cfg.out, "ks")?;
    dir.write("points.csv", |w| {
        writeln!(w, "index,norm,fiber,brackets")?;
        for (i, k) in checks.iter().enumerate() {
            writeln!(w, "{}", row([i.to_string(), fmt17(k.norm), fmt17(k.fiber), fmt17(k.brackets)]))?;
        }
        Ok(())
    })?;
    let worst = |f: fn(&PointCheck) -> f64| checks.iter().map(f).fold(0.0, f64::max);
    dir.check(CheckRecord::below("ks_norm", worst(|k| k.norm), NORM_TOL));
    dir.check(CheckRecord::below("fiber_invariance", worst(|k| k.fiber), FIBER_TOL));
    dir.check(CheckRecord::below("reduced_brackets", worst(|k| k.brackets), cfg.tolerances.bracket));
    dir.check(CheckRecord::below("monopole_constant", (measured - MONOPOLE_BRACKET_CONSTANT).abs(), MONOPOLE_TOL));
    for (curv, reduced) in &runs {
        let name = label(*curv);
        dir.write(&format!("reduced_{name}.csv"), |w| reduced.write_csv(w))?;
        dir.check(CheckRecord::below(format!("mic_surface_{name}"), reduced.max_residual(), cfg.tolerances.mic));
    }
    dir.finish()
}
