use super::{AgentState, MarkerField};

/// Distances within this tolerance count as ties, resolved by lower agent id.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Gives every marker within `radius` of an active agent to the closest such
/// agent (ties to the lower id). Returns captured marker indices per agent,
/// indexed like `agents`, each list ascending. Arrived agents capture nothing.
pub fn assign_markers(agents: &[AgentState], field: &MarkerField, radius: f64) -> Vec<Vec<u32>> {
    let mut nearest = vec![f64::INFINITY; field.len()];
    for a in agents.iter().filter(|a| !a.arrived) {
        field.for_each_within(a.position, radius, |m, d| {
            let slot = &mut nearest[m as usize];
            if d < *slot {
                *slot = d;
            }
        });
    }

    // Agents are visited in id order, so the first qualifying claimant is the
    // lowest id among those tied with the minimum.
    let mut order: Vec<usize> = (0..agents.len()).filter(|&i| !agents[i].arrived).collect();
    order.sort_by_key(|&i| agents[i].id);

    let mut claimed = vec![false; field.len()];
    let mut captured = vec![Vec::new(); agents.len()];
    for i in order {
        field.for_each_within(agents[i].position, radius, |m, d| {
            let m_idx = m as usize;
            if !claimed[m_idx] && d <= nearest[m_idx] + TIE_TOLERANCE {
                claimed[m_idx] = true;
                captured[i].push(m);
            }
        });
        captured[i].sort_unstable();
    }
    captured
}
