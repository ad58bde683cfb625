//! `spectrum`: closed-form level tables with their bookkeeping checks.

use std::io::Write;

use curved_duality::io::{fmt17, CheckRecord};
use curved_duality::spectra::{
    coulomb_tower_2d, interrelation_residual, mic_degeneracy, mic_tower, osc_degeneracy_4d, osc_sector_degeneracy_4d,
    osc_tower_2d, osc_tower_4d, sphere_positivity_survivors, HalfInt, Sector, SpectrumLine, SpectrumTable,
};
use curved_duality::{Curvature, SpaceParams};

use super::label;
use crate::config::{RunConfig, SystemChoice};
use crate::error::CliError;
use crate::output::{row, RunDir};
use crate::plot;

/// Levels scanned when counting sphere-side survivors of the positivity filter.
const POSITIVITY_SCAN: i64 = 10_000;

fn level_of(line: &SpectrumLine) -> i64 {
    line.quantum_number("N").map_or(0, |n| n.doubled() / 2)
}

fn oscillator(cfg: &RunConfig, dim: usize, dir: &mut RunDir) -> Result<Vec<(String, SpectrumTable)>, CliError> {
    let mut tables = Vec::new();
    for curv in cfg.curvatures() {
        let params = SpaceParams::oscillator(curv, cfg.radius, cfg.alpha, dim)?;
        let system = if dim == 2 { "osc2d" } else { "osc4d" };
        let name = format!("{system}_{}", label(curv));
        let lines = if dim == 2 {
            let lines = osc_tower_2d(&params, cfg.levels)?;
            let worst = lines
                .iter()
                .map(|l| interrelation_residual(level_of(l), &params, Sector::of_level(level_of(l))))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .fold(0.0, f64::max);
            dir.check(CheckRecord::below(format!("interrelation_{name}"), worst, cfg.tolerances.interrelation));
            lines
        } else {
            let lines = osc_tower_4d(&params, cfg.levels)?;
            // full degeneracy against the sum over charge sectors
            let mismatches = lines
                .iter()
                .filter(|l| {
                    let n = level_of(l);
                    let by_sector: u64 = (-n..=n).map(|d| osc_sector_degeneracy_4d(n, HalfInt::from_doubled(d))).sum();
                    by_sector != l.degeneracy || l.degeneracy != osc_degeneracy_4d(n)
                })
                .count();
            dir.check(CheckRecord::exact(format!("degeneracy_sectors_{name}"), mismatches as f64, 0.0));
            lines
        };
        tables.push((name, SpectrumTable { system, epsilon: params.epsilon(), lines }));
    }
    Ok(tables)
}

fn coulomb(cfg: &RunConfig, dir: &mut RunDir) -> Result<SpectrumTable, CliError> {
    let mut lines = Vec::new();
    for sector in cfg.sectors() {
        let tower = coulomb_tower_2d(cfg.gamma, cfg.r0, sector)?;
        let survivors = sphere_positivity_survivors(cfg.gamma, cfg.r0, sector, POSITIVITY_SCAN)?;
        let sigma = sector.sigma();
        dir.check(CheckRecord::exact(
            format!("positivity_survivors_sigma={sigma}"),
            survivors.len() as f64,
            tower.len() as f64,
        ));
        lines.extend(tower);
    }
    Ok(SpectrumTable { system: "coulomb2d", epsilon: -1.0, lines })
}

fn mic(cfg: &RunConfig, dir: &mut RunDir) -> Result<SpectrumTable, CliError> {
    let s = HalfInt::from_f64(cfg.s)
        .map_err(|_| CliError::config("s", format!("must be a half-integer, got {}", cfg.s)))?;
    let lines = mic_tower(cfg.gamma, cfg.r0, s)?;
    // enumeration is checked against the sum over l_s; the closed form is only reported
    let mut mismatches = 0;
    dir.write("degeneracy.csv", |w| {
        writeln!(w, "s,k,enumerated,sum_over_ls,printed_formula,printed_differs")?;
        for k in 0..cfg.levels {
            let d = mic_degeneracy(k, s).map_err(std::io::Error::other)?;
            let by_ls: u64 = (0..=k).map(|i| ((s.abs() + i).doubled() + 1) as u64).sum();
            if by_ls != d.enumerated {
                mismatches += 1;
            }
            let differs = d.paper_formula != d.enumerated as f64;
            writeln!(
                w,
                "{}",
                row([
                    s.to_string(),
                    k.to_string(),
                    d.enumerated.to_string(),
                    by_ls.to_string(),
                    fmt17(d.paper_formula),
                    differs.to_string()
                ])
            )?;
        }
        Ok(())
    })?;
    dir.check(CheckRecord::exact("mic_degeneracy_enumeration", mismatches as f64, 0.0));
    Ok(SpectrumTable { system: "mic", epsilon: -1.0, lines })
}

pub fn run(cfg: &RunConfig) -> Result<bool, CliError> {
    let mut dir = RunDir::create(&cfg.out, "spectrum")?;
    let system = cfg.system.unwrap_or(SystemChoice::Osc2d);
    if matches!(system, SystemChoice::Coulomb2d | SystemChoice::Mic) && cfg.curvature == Some(Curvature::Sphere) {
        return Err(CliError::config("epsilon", format!("{} lives on the pseudosphere (epsilon = -1)", system.name())));
    }
    let tables = match system {
        SystemChoice::Osc2d => oscillator(cfg, 2, &mut dir)?,
        SystemChoice::Osc4d => oscillator(cfg, 4, &mut dir)?,
        SystemChoice::Coulomb2d => vec![("coulomb2d".to_string(), coulomb(cfg, &mut dir)?)],
        SystemChoice::Mic => vec![("mic".to_string(), mic(cfg, &mut dir)?)],
    };
    for (name, table) in &tables {
        if table.lines.is_empty() {
            println!("note: {name} has no bound levels at these parameters");
        }
        let csv = dir.write(&format!("spectrum_{name}.csv"), |w| table.write_csv(w))?;
        if cfg.plot {
            let svg = plot::ladder(&csv)?;
            dir.write(&format!("ladder_{name}.svg"), |w| w.write_all(svg.as_bytes()))?;
        }
    }
    dir.finish()
}
