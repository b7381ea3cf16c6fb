//! Run outputs: density map, trajectory export, summary metrics and rasters.

mod density;
mod export;
mod raster;
mod summary;

pub use density::{
    accumulate_density, colorize_density, density_color, DensityGrid, DENSITY_CELL_SIZE,
};
pub use export::export_trajectories;
pub use raster::{render_trajectory_plot, Raster, PLOT_PIXELS_PER_METER};
pub use summary::{summarize, SummaryMetrics};

use crate::engine::SimulationResult;
use serde::{Deserialize, Serialize};

/// Everything a finished run hands back to clients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultBundle {
    pub result: SimulationResult,
    pub density: DensityGrid,
    pub summary: SummaryMetrics,
}

impl ResultBundle {
    pub fn from_result(result: SimulationResult) -> Self {
        let density = accumulate_density(&result, DENSITY_CELL_SIZE);
        let summary = summarize(&result);
        Self {
            result,
            density,
            summary,
        }
    }

    /// Canonical JSON bytes; identical results give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("bundle serialization is infallible");
        s.push('\n');
        s
    }
}
