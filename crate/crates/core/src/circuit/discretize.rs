use thiserror::Error;

use super::Circuit;
use crate::finspace::{coproduct, solder, Cell, DiscreteSpace, Skeleton};
use crate::gate::{self, CellMetric, GateError, GATE_TERMINALS};
use crate::rational::rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitSpaceError {
    #[error(transparent)]
    Gate(#[from] GateError),
    #[error("discretization would need {cells} cells, over the budget of {bound}")]
    Budget { cells: usize, bound: usize },
}

fn lone_point(tag: &str, n: usize) -> DiscreteSpace {
    DiscreteSpace::from_parts(
        vec![Cell {
            id: 0,
            dim: 0,
            tag: Some(tag.to_string()),
        }],
        vec![crate::bits::from_indices(1, [0])],
        [],
        rat(1, n as i64),
    )
    .with_skeleton(Skeleton {
        vertices: vec![(tag.to_string(), 0)],
        edges: Vec::new(),
    })
}

/// Coproduct of one discretized gate per circuit gate, with every terminal
/// soldered to the others carrying the same node. Gate `i`'s cells are
/// tagged `g{i}:...`; each node's merged cell is re-tagged with the node
/// label. Nodes that feed no gate become lone crisp points.
pub fn discretize(c: &Circuit, n: usize, metric: &dyn CellMetric, max_cells: usize) -> Result<DiscreteSpace, CircuitSpaceError> {
    let base = gate::discretize(n, metric)?;
    let lonely: Vec<usize> = (0..c.node_count())
        .filter(|&v| !c.gates().iter().any(|g| g.contains(&v)))
        .collect();
    let cells = base.len() * c.gates().len() + lonely.len();
    if cells > max_cells {
        return Err(CircuitSpaceError::Budget { cells, bound: max_cells });
    }
    let mut space = DiscreteSpace::from_parts(Vec::new(), Vec::new(), [], rat(1, n as i64));
    for i in 0..c.gates().len() {
        let mut copy = base.clone();
        copy.prefix_tags(&format!("g{i}:"));
        space = coproduct(&space, &copy);
    }
    for &v in &lonely {
        space = coproduct(&space, &lone_point(&c.nodes()[v], n));
    }
    let mut members: Vec<Vec<String>> = vec![Vec::new(); c.node_count()];
    for (i, g) in c.gates().iter().enumerate() {
        for (slot, &v) in g.iter().enumerate() {
            members[v].push(format!("g{i}:{}", GATE_TERMINALS[slot]));
        }
    }
    for &v in &lonely {
        members[v].push(c.nodes()[v].clone());
    }
    let groups: Vec<Vec<usize>> = members
        .iter()
        .map(|tags| tags.iter().map(|t| space.find_tag(t).expect("terminal present")).collect())
        .collect();
    let mut out = solder(&space, &groups).map_err(GateError::from)?;
    for (v, tags) in members.iter().enumerate() {
        let cell = (0..out.len())
            .find(|&x| out.cell(x).tag.as_deref().is_some_and(|t| t.split('=').any(|p| p == tags[0])))
            .expect("merged terminal present");
        out.set_tag(cell, Some(c.nodes()[v].clone()));
    }
    Ok(out)
}
