use thiserror::Error;

use super::{Circuit, CircuitError, Gate};
use crate::order::{filters, MeetSemilattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Y0Error {
    #[error("the enumeration must start at the bottom element")]
    NotBottomFirst,
    #[error("the enumeration must list every element exactly once")]
    NotAnEnumeration,
    #[error("truncation level {k} is outside 1..={len}")]
    Level { k: usize, len: usize },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// The rail circuit of the first `k` enumerated elements: rail `Ξ(ℓ_a)` for
/// `a < k`, and a gate `(a, b, c)` whenever `ℓ_a ∧ ℓ_b ≤ ℓ_c`.
pub fn build_y0(m: &MeetSemilattice, enumeration: &[usize], k: usize) -> Result<Circuit, Y0Error> {
    let len = m.len();
    let mut seen = vec![false; len];
    if enumeration.len() != len || enumeration.iter().any(|&e| e >= len || std::mem::replace(&mut seen[e], true)) {
        return Err(Y0Error::NotAnEnumeration);
    }
    if m.bottom() != enumeration.first().copied() {
        return Err(Y0Error::NotBottomFirst);
    }
    if k == 0 || k > len {
        return Err(Y0Error::Level { k, len });
    }
    let ell = &enumeration[..k];
    let nodes = ell.iter().map(|&e| format!("Ξ({})", m.label(e))).collect();
    let mut gates: Vec<Gate> = Vec::new();
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                if m.leq(m.meet(ell[a], ell[b]), ell[c]) {
                    gates.push([a, b, c]);
                }
            }
        }
    }
    Ok(Circuit::new(nodes, gates)?.with_origin(ell.to_vec()))
}

/// Filters of `m` (including `∅`) cut down to the first `k` enumerated
/// elements, as rail-index sets, deduplicated and in bitstring order.
pub fn truncated_filters(m: &MeetSemilattice, enumeration: &[usize], k: usize) -> Vec<fixedbitset::FixedBitSet> {
    let mut out: Vec<fixedbitset::FixedBitSet> = filters(m, true)
        .iter()
        .map(|f| crate::bits::from_indices(k, (0..k).filter(|&a| f.contains(enumeration[a]))))
        .collect();
    out.sort_by(crate::bits::cmp_bitstring);
    out.dedup();
    out
}
