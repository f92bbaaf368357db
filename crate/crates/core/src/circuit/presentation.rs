use super::{off_closure, Circuit, CircuitError, Gate};
use crate::order::FiniteLattice;

/// `(a, b, c)` as lattice element indices.
pub type Triple = [usize; 3];

/// Every `(a, b, c) ∈ (L⁻)³` with `a ∧ b ≤ c`, lexicographic by index.
pub fn qualifying_triples(l: &FiniteLattice) -> Vec<Triple> {
    let lm = l.non_top();
    let mut out = Vec::new();
    for &a in &lm {
        for &b in &lm {
            for &c in &lm {
                if l.leq(l.meet(a, b), c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn node_index(l: &FiniteLattice) -> Vec<usize> {
    let mut idx = vec![usize::MAX; l.len()];
    for (i, a) in l.non_top().into_iter().enumerate() {
        idx[a] = i;
    }
    idx
}

/// Forward chaining from `{off(a), off(b)}` under `triples` derives `off(c)`
/// for every qualifying triple.
pub fn is_adequate(l: &FiniteLattice, triples: &[Triple]) -> bool {
    let idx = node_index(l);
    let n = l.len() - 1;
    let rules: Vec<Gate> = triples.iter().map(|t| t.map(|v| idx[v])).collect();
    qualifying_triples(l).into_iter().all(|[a, b, c]| {
        let start = crate::bits::from_indices(n, [idx[a], idx[b]]);
        off_closure(n, &rules, &start).contains(idx[c])
    })
}

/// Circuit with one node per element of `L⁻` and one gate per triple.
pub fn build_with(l: &FiniteLattice, triples: &[Triple]) -> Result<Circuit, CircuitError> {
    if l.len() < 2 {
        return Err(CircuitError::TrivialLattice);
    }
    let idx = node_index(l);
    let elements = l.non_top();
    let nodes = elements.iter().map(|&a| l.label(a).to_string()).collect();
    let gates = triples.iter().map(|t| t.map(|v| idx[v])).collect();
    Ok(Circuit::new(nodes, gates)?.with_origin(elements))
}

pub fn build_full(l: &FiniteLattice) -> Result<Circuit, CircuitError> {
    build_with(l, &qualifying_triples(l))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinimalMode {
    Greedy,
    Exact,
}

pub fn build_minimal(l: &FiniteLattice, mode: MinimalMode) -> Result<Circuit, CircuitError> {
    let triples = match mode {
        MinimalMode::Greedy => Greedy.triples(l),
        MinimalMode::Exact => Exact.triples(l),
    };
    build_with(l, &triples)
}

/// A choice of gate triples for a lattice.
pub trait Presentation: Send + Sync {
    fn name(&self) -> &'static str;

    fn triples(&self, l: &FiniteLattice) -> Vec<Triple>;
}

struct Full;

impl Presentation for Full {
    fn name(&self) -> &'static str {
        "full"
    }

    fn triples(&self, l: &FiniteLattice) -> Vec<Triple> {
        qualifying_triples(l)
    }
}

/// Drops, in canonical order, each triple whose rule still follows from the
/// triples kept so far plus the ones not yet examined.
struct Greedy;

impl Presentation for Greedy {
    fn name(&self) -> &'static str {
        "greedy"
    }

    fn triples(&self, l: &FiniteLattice) -> Vec<Triple> {
        let mut kept = qualifying_triples(l);
        let mut i = 0;
        while i < kept.len() {
            let mut trial = kept.clone();
            trial.remove(i);
            if is_adequate(l, &trial) {
                kept = trial;
            } else {
                i += 1;
            }
        }
        kept
    }
}

/// Minimum-cardinality adequate set, by breadth-first search over subset
/// sizes. Triples with `c ∈ {a, b}` never help and `(a, b, c)` says the same
/// as `(b, a, c)`, so the pool keeps only `a ≤ b` (by index) and `c ∉ {a, b}`.
/// The first adequate subset in lexicographic order of the pool wins.
struct Exact;

impl Presentation for Exact {
    fn name(&self) -> &'static str {
        "exact"
    }

    fn triples(&self, l: &FiniteLattice) -> Vec<Triple> {
        let pool: Vec<Triple> = qualifying_triples(l)
            .into_iter()
            .filter(|&[a, b, c]| a <= b && c != a && c != b)
            .collect();
        for k in 0..=pool.len() {
            let mut pick: Vec<usize> = (0..k).collect();
            loop {
                let subset: Vec<Triple> = pick.iter().map(|&i| pool[i]).collect();
                if is_adequate(l, &subset) {
                    return subset;
                }
                if !next_combination(&mut pick, pool.len()) {
                    break;
                }
            }
        }
        unreachable!("the whole pool is adequate")
    }
}

fn next_combination(pick: &mut [usize], n: usize) -> bool {
    let k = pick.len();
    for i in (0..k).rev() {
        if pick[i] < n - k + i {
            pick[i] += 1;
            for j in i + 1..k {
                pick[j] = pick[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub fn presentations() -> Vec<Box<dyn Presentation>> {
    vec![Box::new(Full), Box::new(Greedy), Box::new(Exact)]
}

/// Looks a presentation up by name; `minimal` is an alias for `exact`.
pub fn presentation(name: &str) -> Option<Box<dyn Presentation>> {
    let name = if name == "minimal" { "exact" } else { name };
    presentations().into_iter().find(|p| p.name() == name)
}
