use rand::{Rng, RngExt};

use super::{closure, CellSet, DiscreteSpace};

/// A random closed set. Without a base it is the closure of a few random
/// cells; with a base it perturbs the base by adding the closure of a few
/// cells and/or cutting out the minimal open set of one member (removing an
/// open set keeps the result closed).
pub fn random_closed_set<R: Rng + ?Sized>(s: &DiscreteSpace, rng: &mut R, base: Option<&CellSet>) -> CellSet {
    let n = s.len();
    if n == 0 {
        return s.empty_set();
    }
    let seeds = |rng: &mut R| {
        let k = rng.random_range(1..=3);
        let mut set = s.empty_set();
        for _ in 0..k {
            set.insert(rng.random_range(0..n));
        }
        closure(s, &set)
    };
    let Some(base) = base else {
        return seeds(rng);
    };
    let mut out = base.clone();
    let mode = rng.random_range(0..3);
    if mode != 1 {
        out.union_with(&seeds(rng));
    }
    if mode != 0 && !out.is_clear() {
        let members: Vec<usize> = out.ones().collect();
        let x = members[rng.random_range(0..members.len())];
        out.difference_with(s.min_open(x));
    }
    out
}
