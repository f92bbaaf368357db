//! Canonical ordering of index sets.
//!
//! Every enumeration in the crate is sorted by the element-index bitstring:
//! a set is read as the binary number with bit `i` set when index `i` is a
//! member, and sets are listed in ascending numeric order.

use std::cmp::Ordering;

use fixedbitset::FixedBitSet;

pub fn cmp_bitstring(a: &FixedBitSet, b: &FixedBitSet) -> Ordering {
    match a.symmetric_difference(b).max() {
        None => Ordering::Equal,
        Some(top) if a.contains(top) => Ordering::Greater,
        Some(_) => Ordering::Less,
    }
}

pub fn from_indices(len: usize, members: impl IntoIterator<Item = usize>) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    for m in members {
        set.insert(m);
    }
    set
}

pub fn full(len: usize) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(len);
    set.insert_range(..);
    set
}

/// Renders `set` as a `0`/`1` string, index 0 first.
pub fn to_bit_string(set: &FixedBitSet) -> String {
    (0..set.len())
        .map(|i| if set.contains(i) { '1' } else { '0' })
        .collect()
}
