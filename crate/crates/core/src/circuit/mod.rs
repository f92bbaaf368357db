//! Gate circuits: the lattice construction, presentations, Horn-style
//! enumeration of definable assignments, the isomorphism check against the
//! source lattice, discretization through soldered gate copies, and the
//! `Ξ`-rail truncations.

mod discretize;
mod horn;
mod model;
mod presentation;
mod report;
mod y0;

pub use discretize::{discretize, CircuitSpaceError};
pub use horn::{definable_assignments, off_closure, satisfies};
pub use model::{parse_circuit, Assignment, Circuit, CircuitError, CircuitFile, Gate};
pub use presentation::{
    build_full, build_minimal, build_with, is_adequate, presentation, presentations, qualifying_triples, MinimalMode,
    Presentation, Triple,
};
pub use report::{semilattice, verify_iso, IsoFailure, SemilatticeReport};
pub use y0::{build_y0, truncated_filters, Y0Error};
