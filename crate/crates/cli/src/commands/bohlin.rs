//! `bohlin`: canonicity, energy-surface transport and the map of invariants
//! for the squaring map from the planar oscillator to the Coulomb system.

use std::io::Write;

use rayon::prelude::*;

use curved_duality::duality::{
    bohlin_canonicity_residual, bohlin_constants_residual, bohlin_map, bohlin_params, bohlin_surface_check,
    point_on_energy_surface, DualityRecord,
};
use curved_duality::dynamics::{osc_hamiltonian, PlanarPoint};
use curved_duality::io::{fmt17, CheckRecord};
use curved_duality::sampling::PhaseSampler;
use curved_duality::{Complex64, SpaceParams};

use super::{c, label};
use crate::config::{RunConfig, SystemChoice};
use crate::error::CliError;
use crate::output::{row, RunDir};

struct Sample {
    record: DualityRecord,
    point: PlanarPoint,
    image: PlanarPoint,
    canonicity: f64,
    surface: f64,
    constants_j: f64,
    constants_hidden: f64,
}

fn evaluate(p: &PlanarPoint, energy: f64, params: &SpaceParams) -> Result<Sample, CliError> {
    let constants = bohlin_constants_residual(p, params)?;
    Ok(Sample {
        record: bohlin_params(energy, params)?,
        point: *p,
        image: bohlin_map(p)?,
        canonicity: bohlin_canonicity_residual(p)?,
        surface: bohlin_surface_check(p, energy, params)?,
        constants_j: constants.angular_momentum,
        constants_hidden: constants.hidden,
    })
}

pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    if let Some(sys) = cfg.system.filter(|s| *s != SystemChoice::Osc2d) {
        return Err(CliError::config("system", format!("the squaring map acts on osc2d, got {}", sys.name())));
    }
    let mut sampler = PhaseSampler::new(cfg.seed);
    let mut jobs = Vec::new();
    for curv in cfg.curvatures() {
        let params = SpaceParams::oscillator(curv, cfg.radius, cfg.alpha, 2)?;
        let mut points = Vec::with_capacity(cfg.points);
        for _ in 0..cfg.points {
            let z = sampler.coordinates::<1>()[0];
            let floor = osc_hamiltonian(&PlanarPoint::new([z], [c(0.0, 0.0)]), &params)?;
            let energy = floor + sampler.uniform(0.05, 4.0);
            let p = point_on_energy_surface(z, Complex64::from_polar(1.0, sampler.angle()), energy, &params)?;
            points.push((p, energy));
        }
        jobs.push((curv, params, points));
    }
    let results = jobs
        .iter()
        .map(|(curv, params, points)| {
            let samples = points.par_iter().map(|(p, e)| evaluate(p, *e, params)).collect::<Result<Vec<_>, _>>()?;
            Ok((*curv, samples))
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut dir = RunDir::create(&cfg.out, "bohlin")?;
    dir.write("bohlin.csv", |w| {
        writeln!(
            w,
            "{},index,Re z,Im z,Re pi,Im pi,Re w,Im w,Re p,Im p,canonicity,surface,constants_J,constants_hidden",
            DualityRecord::CSV_HEADER
        )?;
        for (_, samples) in &results {
            for (i, s) in samples.iter().enumerate() {
                let mut fields = vec![s.record.csv_row(), i.to_string()];
                fields.extend(s.point.to_real().into_iter().chain(s.image.to_real()).map(fmt17));
                fields.extend([s.canonicity, s.surface, s.constants_j, s.constants_hidden].map(fmt17));
                writeln!(w, "{}", row(fields))?;
            }
        }
        Ok(())
    })?;
    let tol = cfg.tolerances;
    for (curv, samples) in &results {
        let worst = |f: fn(&Sample) -> f64| samples.iter().map(f).fold(0.0, f64::max);
        let name = label(*curv);
        dir.check(CheckRecord::below(format!("canonicity_{name}"), worst(|s| s.canonicity), tol.canonicity));
        dir.check(CheckRecord::below(format!("surface_{name}"), worst(|s| s.surface), tol.surface));
        let constants = worst(|s| s.constants_j.max(s.constants_hidden));
        dir.check(CheckRecord::below(format!("constants_map_{name}"), constants, tol.surface));
    }
    dir.finish()
}
