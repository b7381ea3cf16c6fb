use super::steer::{is_stalled, yield_direction, Steering};
use super::{
    assign_markers, compute_motion, scatter_markers, spawn_agents, AgentState, MarkerField,
    MotionTerms, SimError, SimulationConfig,
};
use crate::geometry::Vec2;
use crate::pathfind::{build_nav_grid, NavGrid};
use crate::scene::{validate_scene, Scene, SceneLimits, WorldExtents};
use serde::{Deserialize, Serialize};

/// One agent's recorded run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentTrack {
    pub agent_id: u32,
    pub spawner_id: String,
    pub goal_id: String,
    pub goal: Vec2,
    pub arrived_step: Option<u32>,
    /// Position after every step the agent took part in.
    pub trajectory: Vec<Vec2>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub world: WorldExtents,
    pub dt: f64,
    pub agents: Vec<AgentTrack>,
    /// Simulated seconds until the last arrival, or the step cap times `dt`.
    pub simulation_time_s: f64,
    pub steps_executed: u32,
    pub all_arrived: bool,
}

impl SimulationResult {
    pub fn recorded_positions(&self) -> usize {
        self.agents.iter().map(|a| a.trajectory.len()).sum()
    }
}

/// Instrumentation for one agent in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentStep {
    pub agent_id: u32,
    pub position_before: Vec2,
    pub goal_direction: Vec2,
    pub captured: Vec<u32>,
    pub terms: MotionTerms,
    pub displacement: Vec2,
    pub arrived: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StepReport {
    /// 1-based index of the executed step; 0 when nothing ran.
    pub step: u32,
    /// Agents that were active when the step began.
    pub agents: Vec<AgentStep>,
}

/// A running simulation. Built once, then advanced with [`Simulation::step`].
#[derive(Debug, Clone)]
pub struct Simulation {
    config: SimulationConfig,
    world: WorldExtents,
    steering: Steering,
    field: MarkerField,
    agents: Vec<AgentState>,
    trajectories: Vec<Vec<Vec2>>,
    /// Consecutive steps each agent has been judged stalled.
    stalled: Vec<u32>,
    steps: u32,
}

impl Simulation {
    /// Builds the nav grid, spawns and routes agents and scatters markers.
    /// The scene is assumed to be validated already.
    pub fn new(scene: &Scene, config: &SimulationConfig) -> Result<Self, SimError> {
        let invalid = config.invalid_fields();
        if !invalid.is_empty() {
            return Err(SimError::InvalidConfig(invalid));
        }
        let grid = build_nav_grid(scene, config.nav_cell_size, config.nav_clearance);
        let agents = spawn_agents(scene, &grid, config)?;
        let field = scatter_markers(scene, config);
        Ok(Self {
            config: config.clone(),
            world: scene.world,
            steering: Steering::new(grid, scene.obstacles.iter().map(|o| o.rect()).collect()),
            field,
            trajectories: vec![Vec::new(); agents.len()],
            stalled: vec![0; agents.len()],
            agents,
            steps: 0,
        })
    }

    pub fn agents(&self) -> &[AgentState] {
        &self.agents
    }

    pub fn field(&self) -> &MarkerField {
        &self.field
    }

    pub fn grid(&self) -> &NavGrid {
        self.steering.grid()
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn steps_executed(&self) -> u32 {
        self.steps
    }

    pub fn all_arrived(&self) -> bool {
        self.agents.iter().all(|a| a.arrived)
    }

    pub fn is_finished(&self) -> bool {
        self.all_arrived() || self.steps >= self.config.max_steps
    }

    /// Advances every active agent by one synchronous step:
    /// steer toward the route, split markers, compute all motions from the
    /// same snapshot, apply, record, then retire agents inside their goal.
    pub fn step(&mut self) -> StepReport {
        if self.all_arrived() {
            return StepReport::default();
        }
        self.steps += 1;
        let step = self.steps;
        let cfg = &self.config;

        for a in self.agents.iter_mut().filter(|a| !a.arrived) {
            self.steering.steer(a, cfg.waypoint_radius);
        }
        for (i, a) in self
            .agents
            .iter_mut()
            .enumerate()
            .filter(|(_, a)| !a.arrived)
        {
            self.stalled[i] = if is_stalled(&self.trajectories[i]) {
                self.stalled[i] + 1
            } else {
                0
            };
            if self.stalled[i] > 0 {
                a.goal_direction = yield_direction(a.goal_direction, self.stalled[i]);
            }
        }

        let captured = assign_markers(&self.agents, &self.field, cfg.perception_radius);

        let mut report = Vec::new();
        let mut moves = Vec::new();
        for (i, a) in self.agents.iter().enumerate().filter(|(_, a)| !a.arrived) {
            let points: Vec<Vec2> = captured[i]
                .iter()
                .map(|&m| self.field.positions()[m as usize])
                .collect();
            let (terms, motion) = compute_motion(a.position, a.goal_direction, &points, cfg);
            let displacement = self.steering.limit_move(a.position, motion);
            moves.push((i, displacement));
            report.push(AgentStep {
                agent_id: a.id,
                position_before: a.position,
                goal_direction: a.goal_direction,
                captured: captured[i].clone(),
                terms,
                displacement,
                arrived: false,
            });
        }

        for (i, d) in &moves {
            self.agents[*i].position += *d;
        }
        for (i, _) in &moves {
            self.trajectories[*i].push(self.agents[*i].position);
        }
        for ((i, _), entry) in moves.iter().zip(report.iter_mut()) {
            let a = &mut self.agents[*i];
            if a.position.distance(a.goal_center) <= cfg.arrival_radius {
                a.arrived = true;
                a.arrived_step = Some(step);
                entry.arrived = true;
            }
        }

        StepReport {
            step,
            agents: report,
        }
    }

    /// Steps until every agent arrived or the step cap is reached.
    pub fn run(mut self) -> SimulationResult {
        while !self.is_finished() {
            self.step();
        }
        self.into_result()
    }

    pub fn into_result(self) -> SimulationResult {
        let all_arrived = self.all_arrived();
        let last_arrival = self
            .agents
            .iter()
            .filter_map(|a| a.arrived_step)
            .max()
            .unwrap_or(0);
        let simulation_time_s = if all_arrived {
            self.config.dt * f64::from(last_arrival)
        } else {
            self.config.dt * f64::from(self.config.max_steps)
        };
        let agents = self
            .agents
            .into_iter()
            .zip(self.trajectories)
            .map(|(a, trajectory)| AgentTrack {
                agent_id: a.id,
                spawner_id: a.spawner_id,
                goal_id: a.goal_id,
                goal: a.goal_center,
                arrived_step: a.arrived_step,
                trajectory,
            })
            .collect();
        SimulationResult {
            world: self.world,
            dt: self.config.dt,
            agents,
            simulation_time_s,
            steps_executed: self.steps,
            all_arrived,
        }
    }
}

/// Validates against the default limits, then runs to completion.
pub fn run_simulation(
    scene: &Scene,
    config: &SimulationConfig,
) -> Result<SimulationResult, SimError> {
    run_simulation_with_limits(scene, config, &SceneLimits::default())
}

pub fn run_simulation_with_limits(
    scene: &Scene,
    config: &SimulationConfig,
    limits: &SceneLimits,
) -> Result<SimulationResult, SimError> {
    let report = validate_scene(scene, limits);
    if !report.is_runnable() {
        return Err(SimError::InvalidScene(report));
    }
    Ok(Simulation::new(scene, config)?.run())
}
