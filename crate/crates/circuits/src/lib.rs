//! Depth-two circuits of bounded-range channels preparing `ρ_N(x)`.
//!
//! The first layer replaces blocks of two sites (one block of three when
//! `N` is odd) by short fixed-point states. The second layer glues the blocks
//! together at their boundaries. [`verify_trivial_phase`] runs the circuit
//! on the maximally mixed state and measures the distance to `ρ_N(x)`.

pub mod error;
pub mod plan;
pub mod verify;

pub use error::CircuitError;
pub use plan::{
    block_lengths, classify_target, maximally_mixed, plan_depth_two, run_circuit, run_layers,
    CircuitPlan, Gate, LayerOrder, Target,
};
pub use verify::{
    gluing_associativity, layer_swap_distance, verify_trivial_phase, AssociativityReport,
    TrivialPhaseReport,
};
