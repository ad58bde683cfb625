//! Static SVG plots, built only from the CSV files already written.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use curved_duality::geometry::stereo_to_ambient_real;
use curved_duality::SpaceParams;

use crate::error::CliError;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 30.0;
/// Polylines are thinned to at most this many vertices.
const MAX_VERTICES: usize = 4000;

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn read(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| CliError::Input { path: path.into(), reason: "empty file".into() })?
            .split(',')
            .map(str::to_string)
            .collect();
        let rows = lines.map(|l| l.split(',').map(str::to_string).collect()).collect();
        Ok(Self { header, rows })
    }

    fn column(&self, path: &Path, names: &[&str]) -> Result<Vec<f64>, CliError> {
        let idx = self.header.iter().position(|h| names.contains(&h.as_str())).ok_or_else(|| CliError::Input {
            path: path.into(),
            reason: format!("no column {}", names.join(" or ")),
        })?;
        self.rows
            .iter()
            .map(|r| {
                r.get(idx).and_then(|v| v.parse().ok()).ok_or_else(|| CliError::Input {
                    path: path.into(),
                    reason: format!("non-numeric entry in column {}", self.header[idx]),
                })
            })
            .collect()
    }
}

struct Svg {
    body: String,
}

impl Svg {
    fn new() -> Self {
        let mut body = String::new();
        let _ = writeln!(
            body,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
        );
        let _ = writeln!(body, "<rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>");
        Self { body }
    }

    fn polyline(&mut self, pts: &[(f64, f64)], stroke: &str, dashed: bool) {
        let step = pts.len().div_ceil(MAX_VERTICES).max(1);
        let coords: Vec<String> = pts.iter().step_by(step).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let dash = if dashed { " stroke-dasharray=\"4 4\"" } else { "" };
        let _ = writeln!(
            self.body,
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1\"{dash}/>",
            coords.join(" ")
        );
    }

    fn text(&mut self, x: f64, y: f64, s: &str) {
        let _ = writeln!(
            self.body,
            "<text x=\"{x:.2}\" y=\"{y:.2}\" font-family=\"monospace\" font-size=\"11\">{s}</text>"
        );
    }

    fn finish(mut self) -> String {
        self.body.push_str("</svg>\n");
        self.body
    }
}

/// Maps data bounds onto the drawing square with equal scales.
fn fit(points: &[(f64, f64)]) -> impl Fn((f64, f64)) -> (f64, f64) {
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-300);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    move |(x, y)| (SIZE / 2.0 + (x - cx) * scale, SIZE / 2.0 - (y - cy) * scale)
}

fn circle(n: usize) -> Vec<(f64, f64)> {
    (0..=n).map(|i| std::f64::consts::TAU * i as f64 / n as f64).map(|t| (t.cos(), t.sin())).collect()
}

/// Stereographic disk view of the (first) coordinate with the unit circle.
pub fn orbit_disk(csv: &Path) -> Result<String, CliError> {
    let table = Table::read(csv)?;
    let re = table.column(csv, &["Re z", "Re z1"])?;
    let im = table.column(csv, &["Im z", "Im z1"])?;
    let orbit: Vec<(f64, f64)> = re.into_iter().zip(im).collect();
    let unit = circle(256);
    let all: Vec<_> = orbit.iter().chain(&unit).copied().collect();
    let map = fit(&all);
    let mut svg = Svg::new();
    svg.polyline(&unit.iter().map(|&p| map(p)).collect::<Vec<_>>(), "gray", true);
    svg.polyline(&orbit.iter().map(|&p| map(p)).collect::<Vec<_>>(), "black", false);
    svg.text(MARGIN, MARGIN / 2.0 + 4.0, "stereographic disk, |z| = 1 dashed");
    Ok(svg.finish())
}

/// Oblique projection of the ambient image `(x₁, x₂, x₃)` of a planar orbit.
pub fn orbit_ambient(csv: &Path, params: &SpaceParams) -> Result<String, CliError> {
    let table = Table::read(csv)?;
    let re = table.column(csv, &["Re z"])?;
    let im = table.column(csv, &["Im z"])?;
    let (ca, sa) = (0.5 * (std::f64::consts::PI / 6.0).cos(), 0.5 * (std::f64::consts::PI / 6.0).sin());
    let project = |x: f64, y: f64, h: f64| (x + ca * y, h + sa * y);
    let mut orbit = Vec::with_capacity(re.len());
    for (x, y) in re.into_iter().zip(im) {
        let a = stereo_to_ambient_real(&[x, y], params)?;
        orbit.push(project(a.x[0], a.x[1], a.x_last));
    }
    let r = params.radius;
    let axes = [[(0.0, 0.0, 0.0), (r, 0.0, 0.0)], [(0.0, 0.0, 0.0), (0.0, r, 0.0)], [(0.0, 0.0, 0.0), (0.0, 0.0, r)]]
        .map(|seg| seg.map(|(x, y, h)| project(x, y, h)));
    let all: Vec<_> = orbit.iter().chain(axes.iter().flatten()).copied().collect();
    let map = fit(&all);
    let mut svg = Svg::new();
    for seg in &axes {
        svg.polyline(&seg.map(&map), "gray", true);
    }
    svg.polyline(&orbit.iter().map(|&p| map(p)).collect::<Vec<_>>(), "black", false);
    svg.text(MARGIN, MARGIN / 2.0 + 4.0, "ambient image (x1, x2, x3), oblique projection");
    Ok(svg.finish())
}

/// Energy ladder: one rung per line of a spectrum table.
pub fn ladder(csv: &Path) -> Result<String, CliError> {
    let table = Table::read(csv)?;
    let energies = table.column(csv, &["energy"])?;
    let degeneracies = table.column(csv, &["degeneracy_enum"])?;
    let mut svg = Svg::new();
    if energies.is_empty() {
        svg.text(MARGIN, SIZE / 2.0, "no levels");
        return Ok(svg.finish());
    }
    let (lo, hi) = energies.iter().fold((f64::MAX, f64::MIN), |(a, b), &e| (a.min(e), b.max(e)));
    let span = (hi - lo).max(1e-12);
    let y = |e: f64| SIZE - MARGIN - (e - lo) / span * (SIZE - 2.0 * MARGIN);
    for (e, g) in energies.iter().zip(&degeneracies) {
        let yy = y(*e);
        svg.polyline(&[(MARGIN, yy), (SIZE / 2.0, yy)], "black", false);
        svg.text(SIZE / 2.0 + 8.0, yy + 4.0, &format!("E = {e:.6}  g = {g}"));
    }
    Ok(svg.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn ladder_from_csv() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "system,epsilon,N,energy,degeneracy_enum,degeneracy_paper_formula\nosc2d,-1,0,-5.0e-1,1,\nosc2d,-1,1,2.5e-1,2,").unwrap();
        let svg = ladder(f.path()).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains("E = -0.500000  g = 1"));
    }

    #[test]
    fn missing_column_is_reported() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "t,x\n0,1").unwrap();
        assert!(matches!(orbit_disk(f.path()), Err(CliError::Input { .. })));
    }
}
