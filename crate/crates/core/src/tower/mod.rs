//! Chain towers of dagger gates: finite truncations, the symbolic families of
//! definable sets of their limits, directed-system checks, the three-copy
//! "taking turns" metric and the short-circuited rail truncation.

mod directed;
mod kinds;
mod limit;
mod turns;
mod ysolder;

pub use directed::{check_directed_system, maps_by_tag, DirectedError, DirectedReport, DirectedViolation};
pub use kinds::{
    exact_pair_gadget, tower, tower_by_name, towers, truncate, ExactPair, ForwardChain, LimitFamily, MeetOutcome, ReverseChain,
    Tower, TowerError, TowerKind,
};
pub use limit::{GadgetState, LimitSet, StageState};
pub use turns::{
    build_w, check_cover_radius, copy_of, cover_witness, default_turn_functions, segment_ladder, turn_violations, CoverWitness,
    PiecewiseLinearFn, TurnError,
};
pub use ysolder::{side_copies_forced, solder_y_truncation, SolderedY};
