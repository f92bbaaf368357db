use thiserror::Error;

use super::{closure, gap_check, is_definable, thresholds, CellId, CellSet, DiscreteSpace, Skeleton};
use crate::bits::cmp_bitstring;
use crate::Rational;

/// Default cap on the number of complete candidates a search may test.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// Candidate sets are unions of chosen units. A unit may only be chosen when
/// every unit listed in its `requires` entry (always an earlier unit) is
/// chosen too; this keeps every candidate closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitFamily {
    pub units: Vec<Vec<CellId>>,
    pub requires: Vec<Vec<usize>>,
}

impl UnitFamily {
    /// Every closed set. Units are the classes of topologically
    /// indistinguishable cells, ordered by decreasing minimal-open size so a
    /// cell's closure points come before it.
    pub fn all_closed(s: &DiscreteSpace) -> Self {
        let mut units: Vec<Vec<CellId>> = Vec::new();
        let mut unit_of = vec![usize::MAX; s.len()];
        let mut order: Vec<CellId> = (0..s.len()).collect();
        order.sort_by_key(|&x| (std::cmp::Reverse(s.min_open(x).count_ones(..)), x));
        for x in order {
            if unit_of[x] != usize::MAX {
                continue;
            }
            let class: Vec<CellId> = s.min_open(x).ones().filter(|&y| s.min_open(y) == s.min_open(x)).collect();
            for &y in &class {
                unit_of[y] = units.len();
            }
            units.push(class);
        }
        let requires = units
            .iter()
            .enumerate()
            .map(|(i, u)| {
                let set = crate::bits::from_indices(s.len(), u.iter().copied());
                let mut req: Vec<usize> = closure(s, &set).difference(&set).map(|y| unit_of[y]).collect();
                req.sort_unstable();
                req.dedup();
                debug_assert!(req.iter().all(|&r| r < i));
                req
            })
            .collect();
        Self { units, requires }
    }

    /// Saturated sets over a skeleton: vertices first, then each edge's open
    /// cells requiring both endpoints.
    pub fn saturated(sk: &Skeleton) -> Self {
        let mut units: Vec<Vec<CellId>> = sk.vertices.iter().map(|&(_, c)| vec![c]).collect();
        let mut requires: Vec<Vec<usize>> = vec![Vec::new(); units.len()];
        for e in &sk.edges {
            units.push(e.cells.clone());
            let mut req = vec![e.ends.0, e.ends.1];
            req.sort_unstable();
            req.dedup();
            requires.push(req);
        }
        Self { units, requires }
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    AllClosed,
    /// Uses the skeleton stored on the space.
    Saturated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Definable candidates in bitstring order.
    pub sets: Vec<CellSet>,
    /// Complete candidates examined.
    pub candidates: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search exceeded the candidate budget of {bound}")]
    BudgetExceeded { bound: u64 },
    #[error("the saturated family needs a space with a skeleton")]
    NoSkeleton,
    #[error("unknown search strategy `{0}`")]
    UnknownStrategy(String),
}

/// A strategy for listing the definable members of a [`UnitFamily`].
pub trait DefinableSearch: Send + Sync {
    fn name(&self) -> &'static str;

    fn run(&self, s: &DiscreteSpace, family: &UnitFamily, r_min: Rational, budget: u64) -> Result<SearchOutcome, SearchError>;
}

pub fn search_strategies() -> Vec<Box<dyn DefinableSearch>> {
    vec![Box::new(Exhaustive), Box::new(Pruned)]
}

pub fn search_strategy(name: &str) -> Result<Box<dyn DefinableSearch>, SearchError> {
    search_strategies()
        .into_iter()
        .find(|s| s.name() == name)
        .ok_or_else(|| SearchError::UnknownStrategy(name.to_string()))
}

pub fn enumerate_definable(
    s: &DiscreteSpace,
    family: Family,
    r_min: Rational,
    strategy: &dyn DefinableSearch,
    budget: u64,
) -> Result<SearchOutcome, SearchError> {
    let units = match family {
        Family::AllClosed => UnitFamily::all_closed(s),
        Family::Saturated => UnitFamily::saturated(s.skeleton().ok_or(SearchError::NoSkeleton)?),
    };
    let mut out = strategy.run(s, &units, r_min, budget)?;
    out.sets.sort_by(cmp_bitstring);
    out.sets.dedup();
    Ok(out)
}

/// Walks every admissible choice of units and tests each complete candidate.
struct Exhaustive;

struct Walk<'a> {
    s: &'a DiscreteSpace,
    family: &'a UnitFamily,
    r_min: Rational,
    budget: u64,
    chosen: Vec<bool>,
    current: CellSet,
    sets: Vec<CellSet>,
    candidates: u64,
}

impl Walk<'_> {
    fn leaf(&mut self) -> Result<(), SearchError> {
        self.candidates += 1;
        if self.candidates > self.budget {
            return Err(SearchError::BudgetExceeded { bound: self.budget });
        }
        if gap_check(self.s, &self.current, self.r_min) && is_definable(self.s, &self.current, self.r_min) {
            self.sets.push(self.current.clone());
        }
        Ok(())
    }

    fn admissible(&self, i: usize) -> bool {
        self.family.requires[i].iter().all(|&r| self.chosen[r])
    }
}

impl DefinableSearch for Exhaustive {
    fn name(&self) -> &'static str {
        "exhaustive"
    }

    fn run(&self, s: &DiscreteSpace, family: &UnitFamily, r_min: Rational, budget: u64) -> Result<SearchOutcome, SearchError> {
        fn go(w: &mut Walk, i: usize) -> Result<(), SearchError> {
            if i == w.family.len() {
                return w.leaf();
            }
            go(w, i + 1)?;
            if w.admissible(i) {
                w.chosen[i] = true;
                for &c in &w.family.units[i] {
                    w.current.insert(c);
                }
                go(w, i + 1)?;
                for &c in &w.family.units[i] {
                    w.current.set(c, false);
                }
                w.chosen[i] = false;
            }
            Ok(())
        }
        let mut w = Walk {
            s,
            family,
            r_min,
            budget,
            chosen: vec![false; family.len()],
            current: s.empty_set(),
            sets: Vec::new(),
            candidates: 0,
        };
        go(&mut w, 0)?;
        Ok(SearchOutcome {
            sets: w.sets,
            candidates: w.candidates,
        })
    }
}

/// Depth-first search that tracks, for every cell `y`, how many chosen cells
/// demand a witness near `y` and how many cells that could still serve as a
/// witness remain undecided or chosen. A branch dies as soon as some demanded
/// cell has no possible witness left. Surviving candidates are confirmed by
/// the reference checker.
struct Pruned;

struct Counters {
    /// Cells within the smallest threshold of `y`, including `y`.
    close: Vec<Vec<CellId>>,
    alive: Vec<i64>,
    demand: Vec<i64>,
}

impl DefinableSearch for Pruned {
    fn name(&self) -> &'static str {
        "pruned"
    }

    fn run(&self, s: &DiscreteSpace, family: &UnitFamily, r_min: Rational, budget: u64) -> Result<SearchOutcome, SearchError> {
        let first = thresholds(s, r_min).first().copied();
        let close: Vec<Vec<CellId>> = (0..s.len())
            .map(|y| {
                let mut row = vec![y];
                if let Some(r) = first {
                    row.extend(s.near(y).iter().filter(|&&(_, d)| d < r).map(|&(z, _)| z));
                }
                row
            })
            .collect();
        let alive = close.iter().map(|row| row.len() as i64).collect();
        let mut counters = Counters {
            close,
            alive,
            demand: vec![0; s.len()],
        };
        let prune = first.is_some();

        fn go(w: &mut Walk, k: &mut Counters, prune: bool, i: usize) -> Result<(), SearchError> {
            if i == w.family.len() {
                return w.leaf();
            }
            let unit = w.family.units[i].clone();

            // Exclude.
            let mut dead = false;
            for &z in &unit {
                for j in 0..k.close[z].len() {
                    let y = k.close[z][j];
                    k.alive[y] -= 1;
                    dead |= prune && k.demand[y] > 0 && k.alive[y] == 0;
                }
            }
            if !dead {
                go(w, k, prune, i + 1)?;
            }
            for &z in &unit {
                for j in 0..k.close[z].len() {
                    k.alive[k.close[z][j]] += 1;
                }
            }

            // Include.
            if w.admissible(i) {
                let mut dead = false;
                for &x in &unit {
                    for y in w.s.min_open(x).ones() {
                        k.demand[y] += 1;
                        dead |= prune && k.alive[y] == 0;
                    }
                    w.current.insert(x);
                }
                if !dead {
                    w.chosen[i] = true;
                    go(w, k, prune, i + 1)?;
                    w.chosen[i] = false;
                }
                for &x in &unit {
                    for y in w.s.min_open(x).ones() {
                        k.demand[y] -= 1;
                    }
                    w.current.set(x, false);
                }
            }
            Ok(())
        }

        let mut w = Walk {
            s,
            family,
            r_min,
            budget,
            chosen: vec![false; family.len()],
            current: s.empty_set(),
            sets: Vec::new(),
            candidates: 0,
        };
        go(&mut w, &mut counters, prune, 0)?;
        Ok(SearchOutcome {
            sets: w.sets,
            candidates: w.candidates,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::from_indices;
    use crate::finspace::Cell;
    use crate::rational::rat;

    fn crisp_point() -> DiscreteSpace {
        DiscreteSpace::from_parts(vec![Cell { id: 0, dim: 0, tag: None }], vec![from_indices(1, [0])], [], rat(1, 1))
    }

    #[test]
    fn crisp_point_has_two_definable_sets() {
        let s = crisp_point();
        for strategy in search_strategies() {
            let out = enumerate_definable(&s, Family::AllClosed, rat(0, 1), strategy.as_ref(), DEFAULT_BUDGET).unwrap();
            assert_eq!(out.sets, vec![s.empty_set(), s.full_set()], "{}", strategy.name());
        }
    }

    #[test]
    fn budget_is_enforced() {
        let s = crisp_point();
        let err = enumerate_definable(&s, Family::AllClosed, rat(0, 1), &Exhaustive, 1).unwrap_err();
        assert_eq!(err, SearchError::BudgetExceeded { bound: 1 });
        assert_eq!(
            enumerate_definable(&s, Family::Saturated, rat(0, 1), &Exhaustive, 8).unwrap_err(),
            SearchError::NoSkeleton
        );
        assert!(search_strategy("nope").is_err());
        assert_eq!(search_strategy("pruned").unwrap().name(), "pruned");
    }

    #[test]
    fn all_closed_units_respect_closure() {
        let cells = (0..3).map(|id| Cell { id, dim: (id % 2) as u8, tag: None }).collect();
        let opens = vec![from_indices(3, [0, 1]), from_indices(3, [1]), from_indices(3, [1, 2])];
        let s = DiscreteSpace::from_parts(cells, opens, [], rat(1, 1));
        let f = UnitFamily::all_closed(&s);
        assert_eq!(f.units, vec![vec![0], vec![2], vec![1]]);
        assert_eq!(f.requires, vec![vec![], vec![], vec![0, 1]]);
        // In a crisp interval a lone endpoint is not definable.
        for strategy in search_strategies() {
            let out = enumerate_definable(&s, Family::AllClosed, rat(0, 1), strategy.as_ref(), DEFAULT_BUDGET).unwrap();
            assert_eq!(out.sets, vec![s.empty_set(), s.full_set()]);
        }
    }
}
