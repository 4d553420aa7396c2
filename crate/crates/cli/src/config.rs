//! Run configuration shared by all subcommands, assembled from the global
//! command-line flags.

use serde::Serialize;
use susy_bargmann::realline::{Sector, SusyParams};
use susy_bargmann::Result;

/// Output artifact format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Sector selector mirroring the library's two-valued enum, so it can carry
/// the clap derive without coupling the library to the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum SectorArg {
    One,
    Two,
}

impl From<SectorArg> for Sector {
    fn from(value: SectorArg) -> Sector {
        match value {
            SectorArg::One => Sector::One,
            SectorArg::Two => Sector::Two,
        }
    }
}

/// Everything a command run depends on. Serialized into reports so an
/// artifact records how it was produced.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub n: u32,
    pub sector: String,
    pub levels: u32,
    pub tol: f64,
    pub quad_points: usize,
    pub strict: bool,
}

/// Anchor for the tolerance scale: --tol equal to this value runs every
/// check at its pinned tolerance; other values scale all of them together.
pub const TOL_ANCHOR: f64 = 1e-9;

impl RunConfig {
    pub fn params(&self) -> Result<SusyParams> {
        SusyParams::new(self.n)
    }

    /// Pinned per-check tolerances are anchored at --tol = 1e-9 and move
    /// proportionally with the flag.
    pub fn effective_tol(&self, pinned: f64) -> f64 {
        pinned * (self.tol / TOL_ANCHOR)
    }
}
