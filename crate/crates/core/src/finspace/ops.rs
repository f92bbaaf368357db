use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use super::{Cell, CellId, CellSet, DiscreteSpace, Skeleton};
use crate::Rational;

/// `A ∪ {x : min_open(x) ∩ A ≠ ∅}`: the down-closure under specialization.
pub fn closure(s: &DiscreteSpace, a: &CellSet) -> CellSet {
    let mut out = a.clone();
    for x in 0..s.len() {
        if !out.contains(x) && !s.min_open(x).is_disjoint(a) {
            out.insert(x);
        }
    }
    out
}

pub fn interior(s: &DiscreteSpace, a: &CellSet) -> CellSet {
    let mut out = s.empty_set();
    for x in a.ones() {
        if s.min_open(x).is_subset(a) {
            out.insert(x);
        }
    }
    out
}

/// First cell of `a` whose closure escapes `a`, if any.
pub(crate) fn closedness_witness(s: &DiscreteSpace, a: &CellSet) -> Option<CellId> {
    (0..s.len()).find(|&x| !a.contains(x) && !s.min_open(x).is_disjoint(a))
}

pub fn is_closed(s: &DiscreteSpace, a: &CellSet) -> bool {
    closedness_witness(s, a).is_none()
}

pub fn is_open(s: &DiscreteSpace, a: &CellSet) -> bool {
    a.ones().all(|x| s.min_open(x).is_subset(a))
}

/// `{y : ∃x ∈ A, d(x,y) < r}` with strict inequality.
pub fn expand(s: &DiscreteSpace, a: &CellSet, r: Rational) -> CellSet {
    if r > Rational::one() {
        return s.full_set();
    }
    if r <= Rational::zero() {
        return s.empty_set();
    }
    let mut out = a.clone();
    for x in a.ones() {
        for &(y, d) in s.near(x) {
            if d < r {
                out.insert(y);
            }
        }
    }
    out
}

/// Every positive distance value, ascending. The implicit value 1 appears
/// whenever some pair of distinct cells is not listed as near.
pub fn distance_values(s: &DiscreteSpace) -> Vec<Rational> {
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    let mut near_pairs = 0usize;
    for x in 0..s.len() {
        for &(_, d) in s.near(x) {
            values.insert(d);
            near_pairs += 1;
        }
    }
    let n = s.len();
    if n >= 2 && near_pairs < n * (n - 1) {
        values.insert(Rational::one());
    }
    values.into_iter().collect()
}

/// The thresholds that decide every `r` in `(r_min, 1]`: distance values in
/// that range plus 1 itself. `expand(A, r)` is constant on each interval
/// `(v_i, v_{i+1}]` between consecutive values, so these suffice.
pub fn thresholds(s: &DiscreteSpace, r_min: Rational) -> Vec<Rational> {
    let mut out: Vec<Rational> = distance_values(s)
        .into_iter()
        .filter(|&v| v > r_min && v <= Rational::one())
        .collect();
    if r_min < Rational::one() && out.last() != Some(&Rational::one()) {
        out.push(Rational::one());
    }
    out
}

/// `d(a, x) = 1` for all `a ∈ A`, `x ∉ A`.
pub fn is_crisp(s: &DiscreteSpace, a: &CellSet) -> bool {
    a.ones()
        .all(|x| s.near(x).iter().all(|&(y, _)| a.contains(y)))
}

/// Connected components (under `y ∈ min_open(x)` adjacency) of the cells that
/// have no other cell strictly within the smallest threshold above `r_min`.
pub fn isolated_components(s: &DiscreteSpace, r_min: Rational) -> Vec<CellSet> {
    let Some(&r) = thresholds(s, r_min).first() else {
        return Vec::new();
    };
    let isolated: Vec<bool> = (0..s.len())
        .map(|x| s.near(x).iter().all(|&(_, d)| d >= r))
        .collect();
    let mut parent: Vec<usize> = (0..s.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for x in 0..s.len() {
        if !isolated[x] {
            continue;
        }
        for y in s.min_open(x).ones() {
            if isolated[y] {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: Vec<CellSet> = Vec::new();
    let mut root_index = vec![usize::MAX; s.len()];
    for x in 0..s.len() {
        if !isolated[x] {
            continue;
        }
        let r = find(&mut parent, x);
        if root_index[r] == usize::MAX {
            root_index[r] = comps.len();
            comps.push(s.empty_set());
        }
        comps[root_index[r]].insert(x);
    }
    comps
}

/// Disjoint union: cross distances 1, topology the disjoint sum.
pub fn coproduct(x: &DiscreteSpace, y: &DiscreteSpace) -> DiscreteSpace {
    let offset = x.len();
    let total = offset + y.len();
    let mut cells: Vec<Cell> = x.cells().to_vec();
    cells.extend(y.cells().iter().map(|c| Cell {
        id: c.id + offset,
        dim: c.dim,
        tag: c.tag.clone(),
    }));
    let grow = |set: &CellSet, shift: usize| crate::bits::from_indices(total, set.ones().map(|i| i + shift));
    let mut min_open: Vec<CellSet> = (0..x.len()).map(|i| grow(x.min_open(i), 0)).collect();
    min_open.extend((0..y.len()).map(|i| grow(y.min_open(i), offset)));
    let mut near: Vec<Vec<(CellId, Rational)>> = (0..x.len()).map(|i| x.near(i).to_vec()).collect();
    near.extend((0..y.len()).map(|i| y.near(i).iter().map(|&(j, d)| (j + offset, d)).collect()));
    let resolution = x.resolution().min(y.resolution());
    let mut out = DiscreteSpace::from_near(cells, min_open, near, resolution);
    if let (Some(a), Some(b)) = (x.slice(), y.slice()) {
        out = out.with_slice(a.iter().chain(b).copied().collect());
    }
    if x.skeleton().is_some() || y.skeleton().is_some() {
        let empty = Skeleton::default();
        let a = x.skeleton().unwrap_or(&empty);
        let b = y.skeleton().unwrap_or(&empty);
        out = out.with_skeleton(a.concat(b, offset));
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolderError {
    #[error("cell {cell} does not exist")]
    UnknownCell { cell: CellId },
    #[error("cell {cell} is not a 0-cell")]
    NotZeroCell { cell: CellId },
    #[error("cell {cell} is not crisply embedded (cell {partner} is at distance below 1)")]
    NotCrisp { cell: CellId, partner: CellId },
    #[error("cell {cell} appears in more than one solder group")]
    Overlap { cell: CellId },
}

/// Identifies each group of crisply embedded 0-cells to a single cell.
///
/// The merged cell sits at the position of its smallest member; its minimal
/// open set is the union of the members', its distance to any other cell is
/// the minimum over the members, and its tag joins the distinct member tags
/// with `=`.
pub fn solder(s: &DiscreteSpace, groups: &[Vec<CellId>]) -> Result<DiscreteSpace, SolderError> {
    let n = s.len();
    let mut rep: Vec<CellId> = (0..n).collect();
    let mut grouped = vec![false; n];
    for group in groups {
        for &c in group {
            if c >= n {
                return Err(SolderError::UnknownCell { cell: c });
            }
            if grouped[c] {
                return Err(SolderError::Overlap { cell: c });
            }
            grouped[c] = true;
            if s.cell(c).dim != 0 {
                return Err(SolderError::NotZeroCell { cell: c });
            }
            if let Some(&(partner, _)) = s.near(c).first() {
                return Err(SolderError::NotCrisp { cell: c, partner });
            }
        }
        if let Some(&r) = group.iter().min() {
            for &c in group {
                rep[c] = r;
            }
        }
    }
    let mut new_id = vec![usize::MAX; n];
    let mut kept = Vec::new();
    for x in 0..n {
        if rep[x] == x {
            new_id[x] = kept.len();
            kept.push(x);
        }
    }
    let map = |x: CellId| new_id[rep[x]];
    let m = kept.len();
    let mut members: Vec<Vec<CellId>> = vec![Vec::new(); m];
    for x in 0..n {
        members[map(x)].push(x);
    }
    let cells: Vec<Cell> = kept
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let mut tags: Vec<&str> = Vec::new();
            for &y in &members[i] {
                if let Some(t) = s.cell(y).tag.as_deref() {
                    if !tags.contains(&t) {
                        tags.push(t);
                    }
                }
            }
            Cell {
                id: i,
                dim: s.cell(x).dim,
                tag: if tags.is_empty() { None } else { Some(tags.join("=")) },
            }
        })
        .collect();
    let min_open: Vec<CellSet> = (0..m)
        .map(|i| {
            let mut set = CellSet::with_capacity(m);
            for &y in &members[i] {
                set.extend(s.min_open(y).ones().map(map));
            }
            set
        })
        .collect();
    let near: Vec<Vec<(CellId, Rational)>> = (0..m)
        .map(|i| {
            let mut row: Vec<(CellId, Rational)> = Vec::new();
            for &y in &members[i] {
                for &(z, d) in s.near(y) {
                    let z = map(z);
                    if z == i {
                        continue;
                    }
                    match row.iter_mut().find(|(w, _)| *w == z) {
                        Some(entry) => entry.1 = entry.1.min(d),
                        None => row.push((z, d)),
                    }
                }
            }
            row.sort_by_key(|&(z, _)| z);
            row
        })
        .collect();
    let mut out = DiscreteSpace::from_near(cells, min_open, near, s.resolution());
    if let Some(slice) = s.slice() {
        out = out.with_slice(kept.iter().map(|&x| slice[x]).collect());
    }
    if let Some(sk) = s.skeleton() {
        out = out.with_skeleton(sk.remap(map));
    }
    Ok(out)
}
