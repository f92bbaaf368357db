use std::collections::BTreeMap;

use thiserror::Error;

use super::{CellMetric, GateGeometry, GateState};
use crate::finspace::{solder, Cell, CellId, CellSet, DiscreteSpace, SearchError, Skeleton, SkeletonEdge, SolderError};
use crate::rational::rat;
use crate::Rational;

pub const GATE_TERMINALS: [&str; 3] = ["in1", "in2", "out"];
pub const DAGGER_TERMINALS: [&str; 2] = ["g", "out"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GateError {
    #[error("subdivision must be at least 2, got {0}")]
    Resolution(usize),
    #[error("space has no cell tagged `{0}`")]
    MissingTerminal(String),
    #[error("space has no skeleton")]
    NoSkeleton,
    #[error(transparent)]
    Solder(#[from] SolderError),
    #[error(transparent)]
    Search(#[from] SearchError),
}

struct Draft {
    dim: u8,
    x: Rational,
    y: Rational,
    tag: String,
}

/// Subdivides every edge on the shared `x`-grid of pitch `1/n`.
///
/// Vertices come first (I1, I2, A, B, C, D, O, OUT), then each edge's
/// interior cells in order of increasing `x`. Cells are represented by grid
/// points (0-cells) and midpoints (1-cells). Two distinct cells are at
/// distance 1 unless both representatives lie outside the crisp region and
/// share their `x`, in which case `metric` decides.
pub fn discretize(n: usize, metric: &dyn CellMetric) -> Result<DiscreteSpace, GateError> {
    if n < 2 {
        return Err(GateError::Resolution(n));
    }
    let g = GateGeometry::and_gate();
    let h = rat(1, n as i64);
    let mut drafts: Vec<Draft> = g
        .vertices
        .iter()
        .map(|v| Draft {
            dim: 0,
            x: v.x,
            y: v.y,
            tag: v.terminal.unwrap_or(v.name).to_string(),
        })
        .collect();
    let mut adjacency: Vec<Vec<CellId>> = vec![Vec::new(); drafts.len()];
    let mut skeleton = Skeleton {
        vertices: g.vertices.iter().enumerate().map(|(i, v)| (v.name.to_string(), i)).collect(),
        edges: Vec::new(),
    };
    for e in &g.edges {
        let (xa, xb) = (g.vertices[e.from].x, g.vertices[e.to].x);
        let steps = ((xb - xa) / h).to_integer() as usize;
        let mut chain: Vec<CellId> = vec![e.from];
        let mut interior = Vec::new();
        for j in 0..steps {
            let mid = xa + h * rat(2 * j as i64 + 1, 2);
            let mut push = |dim: u8, x: Rational, drafts: &mut Vec<Draft>, adjacency: &mut Vec<Vec<CellId>>| {
                let id = drafts.len();
                drafts.push(Draft {
                    dim,
                    x,
                    y: e.y_at(x),
                    tag: format!("{}[{}]", e.name, interior.len()),
                });
                adjacency.push(Vec::new());
                interior.push(id);
                chain.push(id);
            };
            push(1, mid, &mut drafts, &mut adjacency);
            if j + 1 < steps {
                push(0, xa + h * (j as i64 + 1), &mut drafts, &mut adjacency);
            }
        }
        chain.push(e.to);
        // Chain alternates 0-cell, 1-cell, ..., 0-cell.
        for w in chain.windows(2) {
            let (a, b) = (w[0], w[1]);
            if drafts[a].dim == 0 {
                adjacency[a].push(b);
            } else {
                adjacency[b].push(a);
            }
        }
        skeleton.edges.push(SkeletonEdge {
            name: e.name.to_string(),
            cells: interior,
            ends: (e.from, e.to),
        });
    }

    let total = drafts.len();
    let min_open: Vec<CellSet> = (0..total)
        .map(|i| crate::bits::from_indices(total, std::iter::once(i).chain(adjacency[i].iter().copied())))
        .collect();
    let mut by_x: BTreeMap<Rational, Vec<CellId>> = BTreeMap::new();
    for (i, d) in drafts.iter().enumerate() {
        if !GateGeometry::is_crisp_point(d.x, d.y) {
            by_x.entry(d.x).or_default().push(i);
        }
    }
    let mut distances = Vec::new();
    for (x, group) in &by_x {
        for (k, &a) in group.iter().enumerate() {
            for &b in &group[k + 1..] {
                distances.push((a, b, metric.partner_distance(drafts[a].dim, num_traits::Signed::abs(x), h)));
            }
        }
    }
    let cells = drafts
        .into_iter()
        .enumerate()
        .map(|(id, d)| Cell {
            id,
            dim: d.dim,
            tag: Some(d.tag),
        })
        .collect();
    Ok(DiscreteSpace::from_parts(cells, min_open, distances, h).with_skeleton(skeleton))
}

/// The gate with its two input vertices soldered into one cell tagged `g`.
pub fn discretize_dagger(n: usize, metric: &dyn CellMetric) -> Result<DiscreteSpace, GateError> {
    let s = discretize(n, metric)?;
    let (i1, i2) = (find(&s, "in1")?, find(&s, "in2")?);
    let mut d = solder(&s, &[vec![i1, i2]])?;
    let g = i1.min(i2);
    d.set_tag(g, Some("g".to_string()));
    if let Some(sk) = d.skeleton_mut() {
        for (name, cell) in sk.vertices.iter_mut() {
            if *cell == g {
                *name = "G".to_string();
            }
        }
    }
    Ok(d)
}

fn find(s: &DiscreteSpace, tag: &str) -> Result<CellId, GateError> {
    s.find_tag(tag).ok_or_else(|| GateError::MissingTerminal(tag.to_string()))
}

/// The saturated cell set realising `state`: the closed top lobe when `in1`
/// is set, the closed bottom lobe when `in2` is set and the closed output
/// segment when `out` is set. Works on any space whose skeleton carries the
/// gate's edge names (plain or dagger).
pub fn state_to_cells(space: &DiscreteSpace, state: GateState) -> Result<CellSet, GateError> {
    let sk = space.skeleton().ok_or(GateError::NoSkeleton)?;
    let mut names: Vec<&str> = Vec::new();
    if state.in1 {
        names.extend(GateGeometry::top_lobe());
    }
    if state.in2 {
        names.extend(GateGeometry::bottom_lobe());
    }
    if state.out {
        names.extend(GateGeometry::output_segment());
    }
    let mut set = space.empty_set();
    for name in names {
        let e = sk.edge(name).ok_or_else(|| GateError::MissingTerminal(name.to_string()))?;
        set.union_with(&sk.edge_closure(e, space.len()));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::{expand, is_crisp};
    use crate::gate::{allowed_states, cell_metric};

    fn midpoint() -> Box<dyn CellMetric> {
        cell_metric("midpoint").unwrap()
    }

    fn cell_at(s: &DiscreteSpace, edge: &str, x: Rational) -> CellId {
        // Oracle: recompute representatives from the tag index.
        let g = GateGeometry::and_gate();
        let e = g.edges.iter().find(|e| e.name == edge).unwrap();
        let xa = g.vertices[e.from].x;
        let h = s.resolution();
        let idx = ((x - xa) / (h / 2)).to_integer() - 1;
        s.find_tag(&format!("{edge}[{idx}]")).unwrap()
    }

    #[test]
    fn rejects_coarse_grid() {
        assert_eq!(discretize(1, midpoint().as_ref()).unwrap_err(), GateError::Resolution(1));
    }

    #[test]
    fn validates_for_both_metrics() {
        for m in crate::gate::cell_metrics() {
            for n in 2..=6 {
                let s = discretize(n, m.as_ref()).unwrap();
                assert!(s.validate().is_empty(), "{} n={n}", m.name());
                // 12 units of edge length, two cells per step less one
                // interior grid point per edge, plus the 8 vertices.
                assert_eq!(s.len(), 24 * n - 9 + 8);
            }
        }
    }

    #[test]
    fn n2_partners_at_half() {
        let s = discretize(2, midpoint().as_ref()).unwrap();
        let a = cell_at(&s, "UR", rat(1, 2));
        let b = cell_at(&s, "LR", rat(1, 2));
        let c = cell_at(&s, "OS", rat(1, 2));
        assert_eq!(s.dist(a, b), rat(1, 2));
        assert_eq!(s.dist(a, c), rat(1, 2));
        let only = crate::bits::from_indices(s.len(), [a]);
        assert_eq!(expand(&s, &only, rat(1, 2)), only);
        let grown = expand(&s, &only, rat(3, 4));
        assert_eq!(grown, crate::bits::from_indices(s.len(), [a, b, c]));
        assert!(!is_crisp(&s, &only));
    }

    #[test]
    fn n4_diagonal_to_output_segment() {
        let s = discretize(4, midpoint().as_ref()).unwrap();
        let a = cell_at(&s, "UR", rat(3, 8));
        let b = cell_at(&s, "OS", rat(3, 8));
        assert_eq!(s.dist(a, b), rat(3, 8));
        let values = crate::finspace::distance_values(&s);
        for k in 1..=8 {
            assert!(values.contains(&rat(k, 8)), "{k}/8");
        }
    }

    #[test]
    fn vertices_are_crisp_and_input_is_isolated() {
        let s = discretize(4, midpoint().as_ref()).unwrap();
        for v in 0..8 {
            assert!(is_crisp(&s, &crate::bits::from_indices(s.len(), [v])));
        }
        assert!((1..s.len()).all(|y| s.dist(0, y) == rat(1, 1)));
    }

    #[test]
    fn dagger_merges_inputs() {
        let s = discretize(4, midpoint().as_ref()).unwrap();
        let d = discretize_dagger(4, midpoint().as_ref()).unwrap();
        assert_eq!(d.len(), s.len() - 1);
        assert!(d.validate().is_empty());
        let g = d.find_tag("g").unwrap();
        let e = state_to_cells(&d, GateState::new(true, true, false)).unwrap();
        assert!(e.contains(g));
        assert!(!e.contains(d.find_tag("out").unwrap()));
    }

    #[test]
    fn states_map_to_saturated_sets_and_joins_to_unions() {
        let s = discretize(4, midpoint().as_ref()).unwrap();
        assert!(state_to_cells(&s, GateState::new(false, false, false)).unwrap().is_clear());
        assert_eq!(state_to_cells(&s, GateState::new(true, true, true)).unwrap(), s.full_set());
        let top = state_to_cells(&s, GateState::new(true, false, false)).unwrap();
        for v in ["I1", "A", "C", "O"] {
            assert!(top.contains(s.skeleton().unwrap().vertex(v).unwrap()), "{v}");
        }
        for a in allowed_states() {
            for b in allowed_states() {
                let mut u = state_to_cells(&s, a).unwrap();
                u.union_with(&state_to_cells(&s, b).unwrap());
                assert_eq!(state_to_cells(&s, crate::gate::state_join(a, b)).unwrap(), u);
            }
        }
    }
}
