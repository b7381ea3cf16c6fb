use crate::engine::SimulationResult;
use std::fmt::Write;

/// CSV with header `agent_id,step,x,y`, rows ordered by agent then step,
/// coordinates with four decimals. `step` counts an agent's recorded
/// positions from 0.
pub fn export_trajectories(result: &SimulationResult) -> String {
    let mut out = String::from("agent_id,step,x,y\n");
    let mut agents: Vec<_> = result.agents.iter().collect();
    agents.sort_by_key(|a| a.agent_id);
    for a in agents {
        for (step, p) in a.trajectory.iter().enumerate() {
            writeln!(out, "{},{},{:.4},{:.4}", a.agent_id, step, p.x, p.y)
                .expect("write to String");
        }
    }
    out
}
