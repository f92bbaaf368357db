//! The AND-gate space: seven-state symbolic semantics, exact discretization
//! and the dagger variant with both inputs soldered together.

mod discretize;
mod geometry;
mod metric;
mod oracle;
mod state;

pub use discretize::{discretize, discretize_dagger, state_to_cells, GateError, DAGGER_TERMINALS, GATE_TERMINALS};
pub use geometry::{GateEdge, GateGeometry, GateVertex};
pub use metric::{cell_metric, cell_metrics, CellMetric};
pub use oracle::{oracle, probe_non_saturated, OracleReport, ProbeReport};
pub use state::{allowed_states, dagger_patterns, state_join, GateState};
