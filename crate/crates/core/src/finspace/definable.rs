use super::ops::closedness_witness;
use super::{expand, interior, thresholds, CellId, CellSet, DiscreteSpace};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definability {
    Definable,
    /// The set is not closed; `cell` lies in its closure but not in the set.
    NotClosed { cell: CellId },
    /// `cell ∈ D` is not interior to `expand(D, r)`.
    Fails { r: Rational, cell: CellId },
}

/// Reference checker: `D` closed and `D ⊆ int(expand(D, r))` for every
/// threshold in `(r_min, 1]`.
pub fn check_definable(s: &DiscreteSpace, d: &CellSet, r_min: Rational) -> Definability {
    if let Some(cell) = closedness_witness(s, d) {
        return Definability::NotClosed { cell };
    }
    for r in thresholds(s, r_min) {
        let inner = interior(s, &expand(s, d, r));
        if let Some(cell) = d.difference(&inner).next() {
            return Definability::Fails { r, cell };
        }
    }
    Definability::Definable
}

pub fn is_definable(s: &DiscreteSpace, d: &CellSet, r_min: Rational) -> bool {
    check_definable(s, d, r_min) == Definability::Definable
}

/// Fast test for a set already known to be closed. The condition is monotone
/// in `r`, so only the smallest threshold matters: every cell of every
/// `min_open(x)`, `x ∈ D`, needs a member of `D` strictly within it.
pub fn gap_check(s: &DiscreteSpace, d: &CellSet, r_min: Rational) -> bool {
    let Some(&r) = thresholds(s, r_min).first() else {
        return true;
    };
    let covered = |y: CellId| d.contains(y) || s.near(y).iter().any(|&(z, dz)| dz < r && d.contains(z));
    d.ones().all(|x| s.min_open(x).ones().all(covered))
}

/// A minimal open set whose expansion is not open.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenMetricWitness {
    /// `U = min_open(cell)`.
    pub cell: CellId,
    pub r: Rational,
    /// A cell of `expand(U, r)` whose minimal open set leaves the expansion.
    pub inside: CellId,
    pub missing: CellId,
}

pub fn open_metric_witness(s: &DiscreteSpace, r_min: Rational) -> Option<OpenMetricWitness> {
    let rs = thresholds(s, r_min);
    for cell in 0..s.len() {
        let u = s.min_open(cell);
        for &r in &rs {
            let e = expand(s, u, r);
            for inside in e.ones() {
                if let Some(missing) = s.min_open(inside).difference(&e).next() {
                    return Some(OpenMetricWitness { cell, r, inside, missing });
                }
            }
        }
    }
    None
}

/// `expand(U, r)` is open for every minimal open `U` and threshold `r > r_min`.
pub fn is_open_metric(s: &DiscreteSpace, r_min: Rational) -> bool {
    open_metric_witness(s, r_min).is_none()
}
