//! `simulate`: integrate one flow per curvature and check conservation.

use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;

use curved_duality::dynamics::{
    integrate_with, HamiltonianSystem, IntegratorConfig, PhasePoint, PlanarCoulomb, PlanarOscillator, QuadOscillator,
    Trajectory,
};
use curved_duality::io::CheckRecord;
use curved_duality::{Curvature, SpaceParams};

use super::{c, label};
use crate::config::{RunConfig, SystemChoice};
use crate::error::CliError;
use crate::output::RunDir;
use crate::plot;

fn run_flow<S, const N: usize>(system: &S, p0: PhasePoint<N>, cfg: &RunConfig) -> Result<Trajectory<N>, CliError>
where
    S: HamiltonianSystem<N>,
{
    let config = IntegratorConfig { guard: cfg.guard, ..IntegratorConfig::new(cfg.tol) };
    Ok(integrate_with(system, p0, cfg.t_end, &config)?)
}

/// Writes the trajectory CSV, its drift checks and the disk plot; returns the CSV path.
fn record<const N: usize>(
    dir: &mut RunDir,
    name: &str,
    traj: &Trajectory<N>,
    cfg: &RunConfig,
) -> Result<PathBuf, CliError> {
    let csv = dir.write(&format!("trajectory_{name}.csv"), |w| traj.write_csv(w))?;
    for (inv, drift) in traj.drift_report().entries {
        dir.check(CheckRecord::below(format!("drift_{name}_{inv}"), drift, cfg.tolerances.drift));
    }
    if cfg.plot {
        let svg = plot::orbit_disk(&csv)?;
        dir.write(&format!("orbit_{name}.svg"), |w| w.write_all(svg.as_bytes()))?;
    }
    Ok(csv)
}

pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let mut dir = RunDir::create(&cfg.out, "simulate")?;
    match cfg.system.unwrap_or(SystemChoice::Osc2d) {
        SystemChoice::Osc2d => {
            let p0 = PhasePoint::new(cfg.initial("z", [c(0.3, 0.1)])?, cfg.initial("pi", [c(0.2, 0.45)])?);
            let runs: Vec<_> = cfg
                .curvatures()
                .par_iter()
                .map(|&curv| {
                    let params = SpaceParams::oscillator(curv, cfg.radius, cfg.alpha, 2)?;
                    Ok((curv, params, run_flow(&PlanarOscillator::new(params), p0, cfg)?))
                })
                .collect::<Result<_, CliError>>()?;
            for (curv, params, traj) in runs {
                let name = format!("osc2d_{}", label(curv));
                let csv = record(&mut dir, &name, &traj, cfg)?;
                if cfg.plot {
                    let svg = plot::orbit_ambient(&csv, &params)?;
                    dir.write(&format!("ambient_{name}.svg"), |w| w.write_all(svg.as_bytes()))?;
                }
            }
        }
        SystemChoice::Osc4d => {
            let z = cfg.initial("z", [c(0.3, 0.1), c(-0.1, 0.25)])?;
            let p0 = PhasePoint::new(z, cfg.initial("pi", [c(0.2, 0.3), c(0.1, -0.2)])?);
            let runs: Vec<_> = cfg
                .curvatures()
                .par_iter()
                .map(|&curv| {
                    let params = SpaceParams::oscillator(curv, cfg.radius, cfg.alpha, 4)?;
                    Ok((curv, run_flow(&QuadOscillator::new(params), p0, cfg)?))
                })
                .collect::<Result<_, CliError>>()?;
            for (curv, traj) in runs {
                record(&mut dir, &format!("osc4d_{}", label(curv)), &traj, cfg)?;
            }
        }
        SystemChoice::Coulomb2d => {
            if cfg.curvature == Some(Curvature::Sphere) {
                return Err(CliError::config("epsilon", "the Coulomb flow lives on the pseudosphere (epsilon = -1)"));
            }
            let params = SpaceParams::coulomb(cfg.r0, cfg.gamma, 2)?;
            let p0 = PhasePoint::new(cfg.initial("z", [c(0.3, 0.0)])?, cfg.initial("pi", [c(0.0, 1.0)])?);
            let traj = run_flow(&PlanarCoulomb::new(params)?, p0, cfg)?;
            record(&mut dir, "coulomb2d", &traj, cfg)?;
        }
        SystemChoice::Mic => {
            return Err(CliError::config("system", "mic has no direct flow here; use the ks command"));
        }
    }
    dir.finish()
}
