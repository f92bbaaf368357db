use super::{definable_assignments, Assignment, Circuit};
use crate::order::{as_lattice, FiniteLattice, Poset};

/// Definable assignments under pointwise order with pointwise-max join.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeReport {
    pub elements: Vec<Assignment>,
    pub join: Vec<Vec<usize>>,
    pub bottom: usize,
    pub top: usize,
}

pub fn semilattice(c: &Circuit) -> SemilatticeReport {
    let elements = definable_assignments(c);
    let find = |a: &Assignment| elements.iter().position(|e| e == a).expect("definable assignments are closed under join");
    let join = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| {
                    let mut j = a.clone();
                    j.union_with(b);
                    find(&j)
                })
                .collect()
        })
        .collect();
    let n = c.node_count();
    let bottom = find(&Assignment::with_capacity(n));
    let top = find(&crate::bits::full(n));
    SemilatticeReport {
        elements,
        join,
        bottom,
        top,
    }
}

impl SemilatticeReport {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].is_subset(&self.elements[b])
    }

    /// The report as a lattice labelled by bit strings. A finite join
    /// semilattice with a bottom is a lattice.
    pub fn to_lattice(&self) -> FiniteLattice {
        let labels = self.elements.iter().map(crate::bits::to_bit_string).collect();
        let n = self.len();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.leq(a, b))
            .collect();
        as_lattice(Poset::new(labels, &pairs).expect("pointwise order is an order")).expect("bounded join semilattice")
    }
}

/// Why `a ↦ D_a` fails to be an isomorphism onto the definable assignments.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsoFailure {
    /// The circuit does not record which lattice element each node stands for.
    #[error("the circuit carries no lattice origin")]
    NoOrigin,
    /// `D_a` violates some gate.
    #[error("D_{element} is not definable")]
    NotDefinable { element: String },
    #[error("D_{a} and D_{b} coincide")]
    Collision { a: String, b: String },
    /// A definable assignment that is no `D_a`; `off` lists its nodes at 0.
    #[error("definable assignment {assignment} (off: {}) is no D_a", off.join(","))]
    Extra { assignment: String, off: Vec<String> },
    #[error("D_({a} join {b}) is not the union of D_{a} and D_{b}")]
    Join { a: String, b: String },
    #[error("bottom or top is not preserved")]
    Bounds,
}

/// `D_a` sets node `x_b` to 0 exactly when `b ≥ a`.
pub fn verify_iso(l: &FiniteLattice, c: &Circuit) -> Result<Vec<usize>, IsoFailure> {
    let origin = c.origin().ok_or(IsoFailure::NoOrigin)?;
    let report = semilattice(c);
    let d = |a: usize| crate::bits::from_indices(origin.len(), (0..origin.len()).filter(|&i| !l.leq(a, origin[i])));
    let mut map = Vec::with_capacity(l.len());
    for a in 0..l.len() {
        let da = d(a);
        match report.elements.iter().position(|e| *e == da) {
            Some(i) => map.push(i),
            None => return Err(IsoFailure::NotDefinable { element: l.label(a).to_string() }),
        }
    }
    for a in 0..l.len() {
        for b in (a + 1)..l.len() {
            if map[a] == map[b] {
                return Err(IsoFailure::Collision {
                    a: l.label(a).to_string(),
                    b: l.label(b).to_string(),
                });
            }
        }
    }
    if let Some(extra) = (0..report.len()).find(|i| !map.contains(i)) {
        let e = &report.elements[extra];
        return Err(IsoFailure::Extra {
            assignment: crate::bits::to_bit_string(e),
            off: (0..c.node_count()).filter(|&i| !e.contains(i)).map(|i| c.nodes()[i].clone()).collect(),
        });
    }
    for a in 0..l.len() {
        for b in 0..l.len() {
            if map[l.join(a, b)] != report.join[map[a]][map[b]] {
                return Err(IsoFailure::Join {
                    a: l.label(a).to_string(),
                    b: l.label(b).to_string(),
                });
            }
        }
    }
    if map[l.bottom()] != report.bottom || map[l.top()] != report.top {
        return Err(IsoFailure::Bounds);
    }
    Ok(map)
}
