use super::{OrderError, Poset};

/// Greatest lower bound of `a` and `b`, if one exists.
fn glb(p: &Poset, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..p.len()).filter(|&x| p.leq(x, a) && p.leq(x, b)).collect();
    lower
        .iter()
        .copied()
        .find(|&g| lower.iter().all(|&x| p.leq(x, g)))
}

fn lub(p: &Poset, a: usize, b: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..p.len()).filter(|&x| p.leq(a, x) && p.leq(b, x)).collect();
    upper
        .iter()
        .copied()
        .find(|&g| upper.iter().all(|&x| p.leq(g, x)))
}

fn table(p: &Poset, op: fn(&Poset, usize, usize) -> Option<usize>, missing: impl Fn(String, String) -> OrderError) -> Result<Vec<Vec<usize>>, OrderError> {
    let n = p.len();
    let mut t = vec![vec![0; n]; n];
    for a in 0..n {
        for b in a..n {
            let v = op(p, a, b).ok_or_else(|| missing(p.label(a).to_string(), p.label(b).to_string()))?;
            t[a][b] = v;
            t[b][a] = v;
        }
    }
    Ok(t)
}

/// A finite lattice with precomputed meet and join tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    poset: Poset,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

/// Succeeds iff every pair has both a meet and a join.
pub fn as_lattice(p: Poset) -> Result<FiniteLattice, OrderError> {
    if p.is_empty() {
        return Err(OrderError::Empty);
    }
    let meet = table(&p, glb, |a, b| OrderError::NoMeet { a, b })?;
    let join = table(&p, lub, |a, b| OrderError::NoJoin { a, b })?;
    let n = p.len();
    let bottom = (1..n).fold(0, |acc, x| meet[acc][x]);
    let top = (1..n).fold(0, |acc, x| join[acc][x]);
    Ok(FiniteLattice {
        poset: p,
        meet,
        join,
        bottom,
        top,
    })
}

impl FiniteLattice {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a][b]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }

    /// `L⁻`: every element except the top, in index order.
    pub fn non_top(&self) -> Vec<usize> {
        (0..self.len()).filter(|&a| a != self.top).collect()
    }

    pub fn to_meet_semilattice(&self) -> MeetSemilattice {
        MeetSemilattice {
            poset: self.poset.clone(),
            meet: self.meet.clone(),
            bottom: Some(self.bottom),
        }
    }

    /// The same elements under the reversed order.
    pub fn dual(&self) -> FiniteLattice {
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(b, a))
            .collect();
        let p = Poset::new(self.poset.labels().to_vec(), &pairs).expect("reversal of an order is an order");
        FiniteLattice {
            poset: p,
            meet: self.join.clone(),
            join: self.meet.clone(),
            bottom: self.top,
            top: self.bottom,
        }
    }
}

/// A finite meet-semilattice. A bottom exists whenever the carrier is
/// nonempty, but callers may build semilattices from partial data, so it is
/// kept optional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeetSemilattice {
    poset: Poset,
    meet: Vec<Vec<usize>>,
    bottom: Option<usize>,
}

impl MeetSemilattice {
    /// Succeeds iff every pair has a meet; reports the first pair lacking one.
    pub fn from_poset(p: Poset) -> Result<Self, OrderError> {
        let meet = table(&p, glb, |a, b| OrderError::NoMeet { a, b })?;
        let bottom = (0..p.len()).find(|&x| (0..p.len()).all(|y| p.leq(x, y)));
        Ok(Self { poset: p, meet, bottom })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a][b]
    }

    pub fn bottom(&self) -> Option<usize> {
        self.bottom
    }

    pub fn label(&self, a: usize) -> &str {
        self.poset.label(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::parse_poset;

    fn n5() -> Poset {
        parse_poset(
            r#"{"elements":["0","a","b","c","1"],
                "covers":[["0","a"],["a","1"],["0","b"],["b","c"],["c","1"]]}"#,
        )
        .unwrap()
    }

    // Brute-force oracle: scan every candidate for the glb.
    fn oracle_meet(p: &Poset, a: usize, b: usize) -> usize {
        let n = p.len();
        (0..n)
            .filter(|&g| p.leq(g, a) && p.leq(g, b))
            .find(|&g| (0..n).all(|x| !(p.leq(x, a) && p.leq(x, b)) || p.leq(x, g)))
            .unwrap()
    }

    #[test]
    fn n5_tables_match_brute_force() {
        let l = as_lattice(n5()).unwrap();
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 3), 0);
        assert_eq!((l.bottom(), l.top()), (0, 4));
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(l.meet(a, b), oracle_meet(l.poset(), a, b));
            }
        }
        assert_eq!(l.non_top(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn antichain_lacks_meet() {
        let p = parse_poset(r#"{"elements":["x","y"]}"#).unwrap();
        assert_eq!(
            as_lattice(p).unwrap_err(),
            OrderError::NoMeet {
                a: "x".into(),
                b: "y".into()
            }
        );
    }

    #[test]
    fn chain_meet_is_min() {
        let p = parse_poset(r#"{"elements":["0","m","1"],"covers":[["0","m"],["m","1"]]}"#).unwrap();
        let l = as_lattice(p).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(l.meet(a, b), a.min(b));
                assert_eq!(l.join(a, b), a.max(b));
            }
        }
    }

    #[test]
    fn semilattice_without_top() {
        let p = parse_poset(r#"{"elements":["0","a","b"],"covers":[["0","a"],["0","b"]]}"#).unwrap();
        let m = MeetSemilattice::from_poset(p.clone()).unwrap();
        assert_eq!(m.meet(1, 2), 0);
        assert_eq!(m.bottom(), Some(0));
        assert!(matches!(as_lattice(p), Err(OrderError::NoJoin { .. })));
    }
}
