use std::io::{self, Write};

use super::halfint::HalfInt;
use crate::io::fmt17;

/// One energy level with its quantum numbers.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumLine {
    pub quantum_numbers: Vec<(&'static str, HalfInt)>,
    pub energy: f64,
    /// Number of states, by enumeration.
    pub degeneracy: u64,
    /// The closed-form degeneracy quoted for the MIC-Kepler tower, reported
    /// next to the enumeration and never used for checks.
    pub degeneracy_paper_formula: Option<f64>,
    /// Whether the level lies below the MIC-Kepler cutoff as printed.
    pub within_printed_cutoff: Option<bool>,
}

impl SpectrumLine {
    pub fn new(quantum_numbers: Vec<(&'static str, HalfInt)>, energy: f64, degeneracy: u64) -> Self {
        Self { quantum_numbers, energy, degeneracy, degeneracy_paper_formula: None, within_printed_cutoff: None }
    }

    pub fn quantum_number(&self, name: &str) -> Option<HalfInt> {
        self.quantum_numbers.iter().find(|(n, _)| *n == name).map(|(_, v)| *v)
    }
}

/// A tower of lines from one system, exported as one CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTable {
    pub system: &'static str,
    pub epsilon: f64,
    pub lines: Vec<SpectrumLine>,
}

impl SpectrumTable {
    /// Columns: `system, epsilon, <quantum numbers>, energy, degeneracy_enum,
    /// degeneracy_paper_formula`, plus `within_printed_cutoff` when any line
    /// carries it.
    pub fn write_csv<W: Write>(&self, mut w: W) -> io::Result<()> {
        let names: Vec<&str> =
            self.lines.first().map(|l| l.quantum_numbers.iter().map(|(n, _)| *n).collect()).unwrap_or_default();
        let flagged = self.lines.iter().any(|l| l.within_printed_cutoff.is_some());
        let mut header = vec!["system", "epsilon"];
        header.extend(&names);
        header.extend(["energy", "degeneracy_enum", "degeneracy_paper_formula"]);
        if flagged {
            header.push("within_printed_cutoff");
        }
        writeln!(w, "{}", header.join(","))?;
        for line in &self.lines {
            let mut row = vec![self.system.to_string(), format!("{}", self.epsilon)];
            row.extend(line.quantum_numbers.iter().map(|(_, v)| v.to_string()));
            row.push(fmt17(line.energy));
            row.push(line.degeneracy.to_string());
            row.push(line.degeneracy_paper_formula.map(fmt17).unwrap_or_default());
            if flagged {
                row.push(line.within_printed_cutoff.map(|b| b.to_string()).unwrap_or_default());
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}
