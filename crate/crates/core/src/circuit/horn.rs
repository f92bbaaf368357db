use fixedbitset::FixedBitSet;

use super::{Assignment, Circuit, Gate};
use crate::bits::cmp_bitstring;

/// Every gate's constraint: not (both inputs off and output on).
pub fn satisfies(gates: &[Gate], a: &Assignment) -> bool {
    gates
        .iter()
        .all(|&[x, y, z]| a.contains(x) || a.contains(y) || !a.contains(z))
}

/// Forward chaining of the off-rules `off(x) ∧ off(y) ⇒ off(z)` from `start`.
pub fn off_closure(n: usize, rules: &[Gate], start: &FixedBitSet) -> FixedBitSet {
    let mut off = start.clone();
    off.grow(n);
    loop {
        let mut changed = false;
        for &[x, y, z] in rules {
            if off.contains(x) && off.contains(y) && !off.contains(z) {
                off.insert(z);
                changed = true;
            }
        }
        if !changed {
            return off;
        }
    }
}

/// All assignments satisfying every gate, in bitstring order.
///
/// Backtracking over nodes in index order; after each decision the clauses
/// `x ∨ y ∨ ¬z` are unit-propagated to a fixpoint.
pub fn definable_assignments(c: &Circuit) -> Vec<Assignment> {
    let n = c.node_count();
    let mut out = Vec::new();
    let mut state: Vec<Option<bool>> = vec![None; n];
    search(c.gates(), &mut state, &mut out);
    out.sort_by(cmp_bitstring);
    out
}

fn propagate(gates: &[Gate], state: &mut [Option<bool>], trail: &mut Vec<usize>) -> bool {
    loop {
        let mut changed = false;
        for &[x, y, z] in gates {
            // Literals: x=1, y=1, z=0.
            let lits = [(x, true), (y, true), (z, false)];
            let mut open = None;
            let mut open_count = 0;
            let mut satisfied = false;
            for &(v, want) in &lits {
                match state[v] {
                    Some(b) if b == want => satisfied = true,
                    Some(_) => {}
                    None => {
                        if open != Some((v, want)) {
                            open_count += 1;
                        }
                        open = Some((v, want));
                    }
                }
            }
            if satisfied {
                continue;
            }
            match open_count {
                0 => return false,
                1 => {
                    let (v, want) = open.expect("one open literal");
                    state[v] = Some(want);
                    trail.push(v);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(gates: &[Gate], state: &mut Vec<Option<bool>>, out: &mut Vec<Assignment>) {
    let Some(v) = state.iter().position(|s| s.is_none()) else {
        out.push(crate::bits::from_indices(
            state.len(),
            state.iter().enumerate().filter(|(_, s)| **s == Some(true)).map(|(i, _)| i),
        ));
        return;
    };
    for value in [false, true] {
        let mut trail = vec![v];
        state[v] = Some(value);
        if propagate(gates, state, &mut trail) {
            search(gates, state, out);
        }
        for u in trail {
            state[u] = None;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(c: &Circuit) -> Vec<Assignment> {
        let n = c.node_count();
        (0u32..1 << n)
            .map(|m| crate::bits::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1)))
            .filter(|a| satisfies(c.gates(), a))
            .collect()
    }

    #[test]
    fn matches_brute_force_on_small_circuits() {
        let cases = vec![
            (vec!["x"], vec![]),
            (vec!["x"], vec![[0, 0, 0]]),
            (vec!["x", "y"], vec![[0, 0, 1]]),
            (vec!["x", "y", "z"], vec![[0, 1, 2], [2, 2, 0]]),
            (vec!["a", "b", "c", "d"], vec![[0, 0, 1], [1, 2, 3], [3, 3, 0], [2, 3, 1]]),
        ];
        for (nodes, gates) in cases {
            let c = Circuit::new(nodes.iter().map(|s| s.to_string()).collect(), gates).unwrap();
            assert_eq!(definable_assignments(&c), brute_force(&c));
        }
    }

    #[test]
    fn repeated_literal_clause() {
        // Gate (x, x, y): x off forces y off.
        let c = Circuit::new(vec!["x".into(), "y".into()], vec![[0, 0, 1]]).unwrap();
        let all: Vec<String> = definable_assignments(&c).iter().map(crate::bits::to_bit_string).collect();
        assert_eq!(all, ["00", "10", "11"]);
    }

    #[test]
    fn closure_chains_rules() {
        let start = crate::bits::from_indices(3, [0]);
        let off = off_closure(3, &[[0, 0, 1], [0, 1, 2]], &start);
        assert_eq!(off, crate::bits::from_indices(3, [0, 1, 2]));
    }
}
