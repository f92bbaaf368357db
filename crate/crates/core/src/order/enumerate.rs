use super::{as_lattice, iso, FiniteLattice, Poset};

/// All lattices with exactly `n` elements, one representative per
/// isomorphism class, in discovery order.
///
/// Every finite poset has a linear extension, so it suffices to scan strict
/// relations contained in `{(i, j) : i < j}` and keep the transitive ones.
pub fn lattices_up_to_iso(n: usize) -> Vec<FiniteLattice> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut found: Vec<FiniteLattice> = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let transitive = rel
            .iter()
            .all(|&(a, b)| rel.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| rel.contains(&(a, d))));
        if !transitive {
            continue;
        }
        let Ok(p) = Poset::new(labels.clone(), &rel) else {
            continue;
        };
        let Ok(l) = as_lattice(p) else {
            continue;
        };
        if !found.iter().any(|f| iso(f, &l).is_some()) {
            found.push(l);
        }
    }
    found
}
