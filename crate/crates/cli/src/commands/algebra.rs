//! `verify-algebra`: bracket relations of the hidden symmetries at sampled points.

use std::io::Write;

use rayon::prelude::*;

use curved_duality::dynamics::{
    coulomb_algebra_residual, cubic_algebra_residual, AlgebraResidual, GradientMode, PlanarPoint,
};
use curved_duality::io::{fmt17, CheckRecord};
use curved_duality::sampling::PhaseSampler;
use curved_duality::SpaceParams;

use super::label;
use crate::config::{RunConfig, SystemChoice};
use crate::error::CliError;
use crate::output::{row, RunDir};

const HEADER: &str = "algebra,epsilon,index,Re z,Im z,Re pi,Im pi,with_rotation,conjugate_pair";

struct Batch {
    name: String,
    epsilon: f64,
    residuals: Vec<(PlanarPoint, AlgebraResidual)>,
}

pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let (cubic, coulomb) = match cfg.system {
        None => (true, true),
        Some(SystemChoice::Osc2d) => (true, false),
        Some(SystemChoice::Coulomb2d) => (false, true),
        Some(other) => {
            return Err(CliError::config(
                "system",
                format!("verify-algebra covers osc2d and coulomb2d, got {}", other.name()),
            ))
        }
    };
    let mut sampler = PhaseSampler::new(cfg.seed);
    let mut jobs: Vec<(String, SpaceParams, bool, Vec<PlanarPoint>)> = Vec::new();
    if cubic {
        for curv in cfg.curvatures() {
            let params = SpaceParams::oscillator(curv, cfg.radius, cfg.alpha, 2)?;
            let points = (0..cfg.points).map(|_| sampler.point()).collect();
            jobs.push((format!("cubic_{}", label(curv)), params, true, points));
        }
    }
    if coulomb {
        let params = SpaceParams::coulomb(cfg.r0, cfg.gamma, 2)?;
        let points = (0..cfg.points).map(|_| sampler.point()).collect();
        jobs.push(("coulomb".to_string(), params, false, points));
    }
    let batches = jobs
        .into_iter()
        .map(|(name, params, cubic, points)| {
            let residuals = points
                .par_iter()
                .map(|p| {
                    let r = if cubic {
                        cubic_algebra_residual(p, &params, GradientMode::Analytic)?
                    } else {
                        coulomb_algebra_residual(p, &params, GradientMode::Analytic)?
                    };
                    Ok((*p, r))
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(Batch { name, epsilon: params.epsilon(), residuals })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut dir = RunDir::create(&cfg.out, "verify-algebra")?;
    dir.write("residuals.csv", |w| {
        writeln!(w, "{HEADER}")?;
        for b in &batches {
            for (i, (p, r)) in b.residuals.iter().enumerate() {
                let algebra = if b.name == "coulomb" { "coulomb" } else { "cubic" };
                let mut fields = vec![algebra.to_string(), format!("{}", b.epsilon), i.to_string()];
                fields.extend(p.to_real().into_iter().map(fmt17));
                fields.extend([fmt17(r.with_rotation), fmt17(r.conjugate_pair)]);
                writeln!(w, "{}", row(fields))?;
            }
        }
        Ok(())
    })?;
    for b in &batches {
        let worst = b.residuals.iter().map(|(_, r)| r.max()).fold(0.0, f64::max);
        dir.check(CheckRecord::below(format!("algebra_{}", b.name), worst, cfg.tolerances.algebra));
    }
    dir.finish()
}
