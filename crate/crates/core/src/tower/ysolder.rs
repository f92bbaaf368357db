use fixedbitset::FixedBitSet;

use crate::circuit::{build_y0, definable_assignments, Assignment, Circuit, Gate, Y0Error};
use crate::order::MeetSemilattice;

/// Three copies of a rail truncation with the side copies short-circuited.
#[derive(Debug, Clone)]
pub struct SolderedY {
    pub circuit: Circuit,
    /// `rails[i][a]`: the node carrying rail `a` of copy `i`.
    pub rails: [Vec<usize>; 3],
}

impl SolderedY {
    pub fn levels(&self) -> usize {
        self.rails[0].len()
    }

    /// The rails of `copy` that are on in `a`.
    pub fn project(&self, copy: usize, a: &Assignment) -> FixedBitSet {
        let k = self.levels();
        crate::bits::from_indices(k, (0..k).filter(|&r| a.contains(self.rails[copy][r])))
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        y = std::mem::replace(&mut parent[y], r);
    }
    r
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra.max(rb)] = ra.min(rb);
    }
}

/// Copies `Y0:`, `Y1:`, `Y2:` of `build_y0(m, enumeration, k)`. At each odd
/// stage `s ≤ k` the copy-1 rails `0..=s` become one node, at each even stage
/// the copy-2 rails, and rail 0 is shared by all three copies. A rail is a
/// single node, so identifying its stage-`s` point identifies the rail.
pub fn solder_y_truncation(m: &MeetSemilattice, enumeration: &[usize], k: usize) -> Result<SolderedY, Y0Error> {
    let y0 = build_y0(m, enumeration, k)?;
    let total = 3 * k;
    let mut parent: Vec<usize> = (0..total).collect();
    for s in 0..=k {
        let copy = if s % 2 == 1 { 1 } else { 2 };
        for a in 1..=s.min(k - 1) {
            union(&mut parent, copy * k, copy * k + a);
        }
    }
    union(&mut parent, 0, k);
    union(&mut parent, 0, 2 * k);

    let mut node_of = vec![usize::MAX; total];
    let mut labels: Vec<Vec<String>> = Vec::new();
    for v in 0..total {
        let r = find(&mut parent, v);
        if node_of[r] == usize::MAX {
            node_of[r] = labels.len();
            labels.push(Vec::new());
        }
        node_of[v] = node_of[r];
        labels[node_of[v]].push(format!("Y{}:{}", v / k, y0.nodes()[v % k]));
    }
    let mut gates: Vec<Gate> = Vec::new();
    for copy in 0..3 {
        for g in y0.gates() {
            gates.push(g.map(|a| node_of[copy * k + a]));
        }
    }
    gates.sort_unstable();
    gates.dedup();
    let circuit = Circuit::new(labels.into_iter().map(|l| l.join("=")).collect(), gates)?;
    let rails = [0, 1, 2].map(|copy| (0..k).map(|a| node_of[copy * k + a]).collect());
    Ok(SolderedY { circuit, rails })
}

/// Checks that every nonempty definable assignment turns on every side-copy
/// node. Returns the number of assignments, or the first offender.
pub fn side_copies_forced(y: &SolderedY) -> Result<usize, Assignment> {
    let all = definable_assignments(&y.circuit);
    for a in &all {
        if a.is_clear() {
            continue;
        }
        if y.rails[1..].iter().flatten().any(|&v| !a.contains(v)) {
            return Err(a.clone());
        }
    }
    Ok(all.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::truncated_filters;
    use crate::order::parse_poset;

    fn semi(text: &str) -> MeetSemilattice {
        MeetSemilattice::from_poset(parse_poset(text).unwrap()).unwrap()
    }

    const M: &str = r#"{"elements":["0","a","b"],"covers":[["0","a"],["0","b"]]}"#;
    const CHAIN2: &str = r#"{"elements":["0","1"],"covers":[["0","1"]]}"#;

    #[test]
    fn two_chain_side_copies_are_forced() {
        let y = solder_y_truncation(&semi(CHAIN2), &[0, 1], 2).unwrap();
        // Copy 0 keeps two rails; each side copy collapses onto rail 0.
        assert_eq!(y.circuit.node_count(), 2);
        assert_eq!(side_copies_forced(&y), Ok(3));
    }

    #[test]
    fn m_copy_zero_matches_truncated_filters() {
        let m = semi(M);
        let y = solder_y_truncation(&m, &[0, 1, 2], 3).unwrap();
        assert!(side_copies_forced(&y).is_ok());
        let mut offs: Vec<FixedBitSet> = definable_assignments(&y.circuit)
            .iter()
            .map(|a| {
                let mut off = crate::bits::full(3);
                off.difference_with(&y.project(0, a));
                off
            })
            .collect();
        offs.sort_by(crate::bits::cmp_bitstring);
        assert_eq!(offs, truncated_filters(&m, &[0, 1, 2], 3));
    }

    #[test]
    fn bottom_assignment_leaves_side_copies_off() {
        let y = solder_y_truncation(&semi(M), &[0, 1, 2], 2).unwrap();
        let first = &definable_assignments(&y.circuit)[0];
        assert!(first.is_clear());
        assert!(y.project(1, first).is_clear() && y.project(2, first).is_clear());
    }
}
