use crate::engine::SimulationResult;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryMetrics {
    pub simulation_time_s: f64,
    pub agents_total: usize,
    pub agents_arrived: usize,
    /// Mean path length over agents with at least one recorded point, m.
    pub distance_avg: f64,
    pub distance_max: f64,
}

pub fn summarize(result: &SimulationResult) -> SummaryMetrics {
    let distances: Vec<f64> = result
        .agents
        .iter()
        .filter(|a| !a.trajectory.is_empty())
        .map(|a| a.trajectory.windows(2).map(|w| w[0].distance(w[1])).sum())
        .collect();
    let distance_avg = if distances.is_empty() {
        0.0
    } else {
        distances.iter().sum::<f64>() / distances.len() as f64
    };
    SummaryMetrics {
        simulation_time_s: result.simulation_time_s,
        agents_total: result.agents.len(),
        agents_arrived: result
            .agents
            .iter()
            .filter(|a| a.arrived_step.is_some())
            .count(),
        distance_avg,
        distance_max: distances.iter().copied().fold(0.0, f64::max),
    }
}
