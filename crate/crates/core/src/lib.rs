//! Marker-based crowd simulation for authored 2D scenes.
//!
//! A [`scene::Scene`] describes spawner areas, goals and obstacles. The
//! [`engine`] scatters space markers over the walkable ground, routes every
//! agent with grid A* ([`pathfind`]) and advances agents by competing for
//! markers. [`analytics`] turns a run into a density map, trajectory export
//! and summary metrics; [`service`] queues and persists runs behind an HTTP
//! API; [`cli`] is the headless front end.

pub mod analytics;
pub mod cli;
pub mod engine;
pub mod geometry;
pub mod pathfind;
pub mod scene;
pub mod service;

pub use geometry::Vec2;
