//! Solvers for SetSAT instances: the random walk for the tractable regime,
//! an exhaustive oracle, and a planted-instance generator.

mod brute;
mod plant;
mod walk;

pub use brute::{brute_force_best_g, brute_force_find, DEFAULT_BRUTE_BUDGET};
pub use plant::plant_instance;
pub use walk::{random_walk_solve, SolveReport, WalkConfig, WalkStep, Walker, DEFAULT_STEP_FACTOR};
