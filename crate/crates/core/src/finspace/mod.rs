//! Finite Alexandrov spaces with an exact rational `[0,1]`-valued metric.
//!
//! A [`DiscreteSpace`] stores, per cell, its minimal open neighbourhood and the
//! list of cells at distance strictly below 1 ("near" cells). Every pair not
//! listed is at distance 1, which keeps coproducts of many gate copies cheap.

mod definable;
mod dot;
mod ops;
mod sample;
mod search;
mod serial;
mod skeleton;
mod space;

pub use definable::{check_definable, gap_check, is_definable, is_open_metric, open_metric_witness, Definability, OpenMetricWitness};
pub use dot::specialization_dot;
pub use ops::{closure, coproduct, distance_values, expand, interior, is_closed, is_crisp, is_open, isolated_components, solder, thresholds, SolderError};
pub use sample::random_closed_set;
pub use search::{
    enumerate_definable, search_strategies, search_strategy, DefinableSearch, Family, SearchError, SearchOutcome, UnitFamily,
    DEFAULT_BUDGET,
};
pub use serial::{from_json, to_json, SpaceFile};
pub use skeleton::{Skeleton, SkeletonEdge};
pub use space::{Cell, CellId, CellSet, Diagnostic, DiscreteSpace};
