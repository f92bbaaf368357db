use super::FiniteLattice;

/// Why a candidate mapping is not a lattice isomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoViolation {
    SizeMismatch { left: usize, right: usize },
    NotBijective { a: usize, b: usize },
    Order { a: usize, b: usize },
    Join { a: usize, b: usize },
    Bottom,
    Top,
}

type Signature = (usize, usize, usize, usize, usize);

fn signatures(l: &FiniteLattice) -> Vec<Signature> {
    let p = l.poset();
    let n = l.len();
    let mut upper = vec![0; n];
    let mut lower = vec![0; n];
    for (a, b) in p.covers() {
        upper[a] += 1;
        lower[b] += 1;
    }
    (0..n)
        .map(|a| {
            (
                p.down_set(a).count_ones(..),
                p.up_set(a).count_ones(..),
                p.height(a),
                upper[a],
                lower[a],
            )
        })
        .collect()
}

/// Searches for an order isomorphism `a -> b` (for lattices this also
/// preserves joins, meets and bounds). Candidates are tried in ascending
/// index order so the result is deterministic.
pub fn iso(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    let n = a.len();
    if n != b.len() {
        return None;
    }
    let sa = signatures(a);
    let sb = signatures(b);
    let mut ka = sa.clone();
    let mut kb = sb.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(a, b, &sa, &sb, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend(
    a: &FiniteLattice,
    b: &FiniteLattice,
    sa: &[Signature],
    sb: &[Signature],
    x: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if x == a.len() {
        return true;
    }
    for y in 0..b.len() {
        if used[y] || sa[x] != sb[y] {
            continue;
        }
        let consistent = (0..x).all(|w| {
            a.leq(w, x) == b.leq(map[w], y) && a.leq(x, w) == b.leq(y, map[w])
        });
        if !consistent {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if extend(a, b, sa, sb, x + 1, map, used) {
            return true;
        }
        used[y] = false;
    }
    map[x] = usize::MAX;
    false
}

/// Post-hoc verification that `map` is a bijection preserving order, joins
/// and both bounds.
pub fn check_iso(a: &FiniteLattice, b: &FiniteLattice, map: &[usize]) -> Result<(), IsoViolation> {
    let n = a.len();
    if n != b.len() || map.len() != n {
        return Err(IsoViolation::SizeMismatch { left: n, right: b.len() });
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if map[x] == map[y] {
                return Err(IsoViolation::NotBijective { a: x, b: y });
            }
        }
        if map[x] >= n {
            return Err(IsoViolation::NotBijective { a: x, b: x });
        }
    }
    for x in 0..n {
        for y in 0..n {
            if a.leq(x, y) != b.leq(map[x], map[y]) {
                return Err(IsoViolation::Order { a: x, b: y });
            }
            if map[a.join(x, y)] != b.join(map[x], map[y]) {
                return Err(IsoViolation::Join { a: x, b: y });
            }
        }
    }
    if map[a.bottom()] != b.bottom() {
        return Err(IsoViolation::Bottom);
    }
    if map[a.top()] != b.top() {
        return Err(IsoViolation::Top);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{as_lattice, parse_poset};

    fn lat(text: &str) -> FiniteLattice {
        as_lattice(parse_poset(text).unwrap()).unwrap()
    }

    const N5: &str = r#"{"elements":["0","a","b","c","1"],
        "covers":[["0","a"],["a","1"],["0","b"],["b","c"],["c","1"]]}"#;
    const M3: &str = r#"{"elements":["0","p","q","r","1"],
        "covers":[["0","p"],["0","q"],["0","r"],["p","1"],["q","1"],["r","1"]]}"#;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn n5_self_iso_verifies() {
        let n5 = lat(N5);
        let map = iso(&n5, &n5).unwrap();
        assert_eq!(check_iso(&n5, &n5, &map), Ok(()));
    }

    #[test]
    fn n5_vs_m3_none_and_brute_force_agrees() {
        let (n5, m3) = (lat(N5), lat(M3));
        assert!(iso(&n5, &m3).is_none());
        assert!(permutations(5).iter().all(|p| check_iso(&n5, &m3, p).is_err()));
    }

    #[test]
    fn chain_is_self_dual() {
        let c = lat(r#"{"elements":["0","m","1"],"covers":[["0","m"],["m","1"]]}"#);
        let d = c.dual();
        let map = iso(&c, &d).unwrap();
        assert_eq!(check_iso(&c, &d, &map), Ok(()));
        assert_eq!(map, vec![2, 1, 0]);
    }

    #[test]
    fn check_iso_names_violation() {
        let c = lat(r#"{"elements":["0","m","1"],"covers":[["0","m"],["m","1"]]}"#);
        assert_eq!(check_iso(&c, &c, &[0, 0, 2]), Err(IsoViolation::NotBijective { a: 0, b: 1 }));
        assert_eq!(check_iso(&c, &c, &[1, 0, 2]), Err(IsoViolation::Order { a: 0, b: 1 }));
    }
}
