use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

use super::{as_lattice, FiniteLattice, MeetSemilattice, OrderError, Poset};
use crate::bits::cmp_bitstring;

/// An up-closed, meet-closed set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    members: FixedBitSet,
}

impl Filter {
    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Renders as `{a,b}` using the semilattice's labels, or `∅`.
    pub fn render(&self, m: &MeetSemilattice) -> String {
        if self.is_empty() {
            return "∅".to_string();
        }
        let labels: Vec<&str> = self.members.ones().map(|i| m.label(i)).collect();
        format!("{{{}}}", labels.join(","))
    }
}

impl Ord for Filter {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_bitstring(&self.members, &other.members)
    }
}

impl PartialOrd for Filter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Checks both closure properties directly.
pub fn is_filter(m: &MeetSemilattice, set: &FixedBitSet) -> bool {
    let up_closed = set
        .ones()
        .all(|a| (0..m.len()).all(|b| !m.leq(a, b) || set.contains(b)));
    let meet_closed = set
        .ones()
        .all(|a| set.ones().all(|b| set.contains(m.meet(a, b))));
    up_closed && meet_closed
}

/// `F_a = {b : b >= a}`.
pub fn principal_filter(p: &Poset, a: usize) -> Filter {
    Filter {
        members: p.up_set(a).clone(),
    }
}

/// All filters of `m` (optionally including `∅`), sorted by bitstring.
///
/// In a finite meet-semilattice a nonempty filter contains the meet of all its
/// members and is therefore principal, so the principal filters are the
/// complete list.
pub fn filters(m: &MeetSemilattice, include_empty: bool) -> Vec<Filter> {
    let mut out: Vec<Filter> = (0..m.len()).map(|a| principal_filter(m.poset(), a)).collect();
    if include_empty {
        out.push(Filter {
            members: FixedBitSet::with_capacity(m.len()),
        });
    }
    out.sort();
    out.dedup();
    out
}

/// Filters ordered by inclusion. Errors when that order is not a lattice,
/// which happens for nonempty filters of a semilattice without a top
/// (two maximal principal filters with no common lower bound).
pub fn filter_lattice(m: &MeetSemilattice, include_empty: bool) -> Result<FiniteLattice, OrderError> {
    let fs = filters(m, include_empty);
    let labels: Vec<String> = fs.iter().map(|f| f.render(m)).collect();
    let mut pairs = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        for (j, g) in fs.iter().enumerate() {
            if i != j && f.is_subset(g) {
                pairs.push((i, j));
            }
        }
    }
    as_lattice(Poset::new(labels, &pairs)?)
}
