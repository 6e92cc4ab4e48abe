//! Explicit quantum strategies: states, local measurements, Born-rule
//! boxes and tripartite entanglement witnesses.

mod born;
mod diew;
mod file;
mod measurement;
mod state;
mod strategies;

pub use born::{born_box, box_correlator, operator_correlator};
pub use diew::{diew_verdict, diew_verdict_with_budget, quantum_success, DiewVerdict};
pub use file::{parse_strategy_file, serialize_strategy};
pub use measurement::MeasurementFamily;
pub use state::{DensityMatrix, PureState};
pub use strategies::{chsh_optimal_strategy, ghz3_state, mermin3_measurements, noisy_ghz3};
