use super::discretize::GateError;
use crate::finspace::{enumerate_definable, CellSet, DefinableSearch, DiscreteSpace, Family};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    /// Definable saturated sets, bitstring order.
    pub sets: Vec<CellSet>,
    /// Terminal membership of each set, aligned with `sets`.
    pub patterns: Vec<Vec<bool>>,
    pub candidates: u64,
}

impl OracleReport {
    /// Patterns sorted and deduplicated, for comparison against a symbolic
    /// family.
    pub fn pattern_set(&self) -> Vec<Vec<bool>> {
        let mut p = self.patterns.clone();
        p.sort();
        p.dedup();
        p
    }
}

/// Enumerates the definable saturated sets of `space` and reads off the
/// membership of the cells tagged `terminals`.
pub fn oracle(
    space: &DiscreteSpace,
    terminals: &[&str],
    r_min: Rational,
    strategy: &dyn DefinableSearch,
    budget: u64,
) -> Result<OracleReport, GateError> {
    let cells = terminals
        .iter()
        .map(|t| space.find_tag(t).ok_or_else(|| GateError::MissingTerminal(t.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let out = enumerate_definable(space, Family::Saturated, r_min, strategy, budget)?;
    let patterns = out
        .sets
        .iter()
        .map(|set| cells.iter().map(|&c| set.contains(c)).collect())
        .collect();
    Ok(OracleReport {
        sets: out.sets,
        patterns,
        candidates: out.candidates,
    })
}

/// Result of probing random closed sets that are not saturated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub samples: usize,
    /// Sampled non-saturated sets that passed `is_definable`, with the index
    /// of the sample that produced each.
    pub definable: Vec<(usize, CellSet)>,
}

/// Draws `samples` non-saturated closed sets from a ChaCha8 stream seeded
/// with `seed` (alternating fresh closures and perturbations of `known`) and
/// keeps those that are definable and not in `known`.
pub fn probe_non_saturated(
    space: &DiscreteSpace,
    known: &[CellSet],
    r_min: Rational,
    samples: usize,
    seed: u64,
) -> Result<ProbeReport, GateError> {
    use rand::SeedableRng;
    let sk = space.skeleton().ok_or(GateError::NoSkeleton)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut definable = Vec::new();
    for i in 0..samples {
        let q = loop {
            let base = if known.is_empty() || i % 2 == 0 {
                None
            } else {
                Some(&known[(i / 2) % known.len()])
            };
            let q = crate::finspace::random_closed_set(space, &mut rng, base);
            if !sk.is_saturated(&q) {
                break q;
            }
        };
        if crate::finspace::is_definable(space, &q, r_min) && !known.contains(&q) {
            definable.push((i, q));
        }
    }
    Ok(ProbeReport { samples, definable })
}
