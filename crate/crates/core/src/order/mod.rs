//! Finite posets, lattices and meet-semilattices; filters and filter
//! lattices; isomorphism search between bounded lattices.

mod enumerate;
mod error;
mod filter;
mod iso;
mod lattice;
mod poset;

pub use enumerate::lattices_up_to_iso;
pub use error::OrderError;
pub use filter::{filter_lattice, filters, is_filter, principal_filter, Filter};
pub use iso::{check_iso, iso, IsoViolation};
pub use lattice::{as_lattice, FiniteLattice, MeetSemilattice};
pub use poset::{parse_poset, OrderFile, Poset};
