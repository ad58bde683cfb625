use std::io::{self, Write};

use super::phase::PhasePoint;
use crate::io::fmt17;

/// Time-stamped phase points with the invariants logged at every step.
#[derive(Debug, Clone)]
pub struct Trajectory<const N: usize> {
    pub times: Vec<f64>,
    pub states: Vec<PhasePoint<N>>,
    pub invariant_names: Vec<&'static str>,
    pub invariant_log: Vec<Vec<f64>>,
    pub rejected_steps: usize,
}

impl<const N: usize> Trajectory<N> {
    pub fn new(names: &[&'static str]) -> Self {
        Self {
            times: Vec::new(),
            states: Vec::new(),
            invariant_names: names.to_vec(),
            invariant_log: Vec::new(),
            rejected_steps: 0,
        }
    }

    pub fn push(&mut self, t: f64, state: PhasePoint<N>, invariants: Vec<f64>) {
        debug_assert!(self.times.last().is_none_or(|&last| t > last));
        debug_assert_eq!(invariants.len(), self.invariant_names.len());
        self.times.push(t);
        self.states.push(state);
        self.invariant_log.push(invariants);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&PhasePoint<N>> {
        self.states.last()
    }

    pub fn drift_report(&self) -> DriftReport {
        drift_report(&self.invariant_names, &self.invariant_log)
    }

    /// CSV with columns `t, Re z…, Im z…, Re π…, Im π…` and one column per
    /// logged invariant, all at 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut header = vec!["t".to_string()];
        let idx = |a: usize| if N == 1 { String::new() } else { (a + 1).to_string() };
        for part in ["Re z", "Im z", "Re pi", "Im pi"] {
            for a in 0..N {
                header.push(format!("{part}{}", idx(a)));
            }
        }
        header.extend(self.invariant_names.iter().map(|s| s.to_string()));
        writeln!(w, "{}", header.join(","))?;
        for ((t, s), inv) in self.times.iter().zip(&self.states).zip(&self.invariant_log) {
            let mut row = vec![fmt17(*t)];
            row.extend(s.to_real().into_iter().map(fmt17));
            row.extend(inv.iter().copied().map(fmt17));
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DriftReport {
    pub entries: Vec<(String, f64)>,
}

impl DriftReport {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn max(&self) -> f64 {
        self.entries.iter().map(|(_, v)| *v).fold(0.0, f64::max)
    }
}

/// For each logged quantity, `max_t |f(t) − f(0)| / max(1, |f(0)|)`.
pub fn drift_report(names: &[&str], log: &[Vec<f64>]) -> DriftReport {
    assert!(!log.is_empty(), "drift of an empty log");
    let first = &log[0];
    let entries = names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            let f0 = first[i];
            let scale = f0.abs().max(1.0);
            let drift = log.iter().map(|row| (row[i] - f0).abs()).fold(0.0, f64::max) / scale;
            (name.to_string(), drift)
        })
        .collect();
    DriftReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn constant_log_has_zero_drift() {
        let log = vec![vec![2.0, -3.0]; 5];
        let r = drift_report(&["H", "J"], &log);
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn single_excursion_is_reported() {
        let mut log = vec![vec![0.5]; 10];
        log[4][0] = 0.5 + 1e-3;
        let r = drift_report(&["H"], &log);
        assert!((r.get("H").unwrap() - 1e-3).abs() < 1e-15);
        // relative for |f(0)| > 1
        let mut log = vec![vec![10.0]; 3];
        log[2][0] = 10.01;
        assert!((drift_report(&["H"], &log).max() - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn csv_layout() {
        let mut t = Trajectory::<1>::new(&["H", "J"]);
        let p = PhasePoint::new([Complex64::new(0.5, 0.25)], [Complex64::new(1.0, -1.0)]);
        t.push(0.0, p, vec![1.0, 2.0]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "t,Re z,Im z,Re pi,Im pi,H,J");
        let row: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(row.len(), 7);
        assert_eq!(row[1], "5.0000000000000000e-1");
    }
}
