//! One module per subcommand; each returns whether all of its checks passed.

pub mod algebra;
pub mod bohlin;
pub mod ks;
pub mod report;
pub mod simulate;
pub mod spectrum;

use curved_duality::{Complex64, Curvature};

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// File-name and record label of a curvature.
pub(crate) fn label(curvature: Curvature) -> &'static str {
    match curvature {
        Curvature::Sphere => "sphere",
        Curvature::Pseudosphere => "pseudosphere",
    }
}
