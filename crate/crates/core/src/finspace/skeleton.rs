use serde::{Deserialize, Serialize};

use super::{CellId, CellSet};

/// An original edge of the underlying graph: its open cells (every cell
/// strictly between the endpoints) and its endpoint vertices, given as
/// indices into [`Skeleton::vertices`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonEdge {
    pub name: String,
    pub cells: Vec<CellId>,
    pub ends: (usize, usize),
}

/// The graph a discretized space was subdivided from. It defines the
/// saturated candidate family: unions of whole edge closures plus vertices.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Skeleton {
    pub vertices: Vec<(String, CellId)>,
    pub edges: Vec<SkeletonEdge>,
}

impl Skeleton {
    pub(crate) fn prefix_names(&mut self, prefix: &str) {
        for (name, _) in self.vertices.iter_mut() {
            *name = format!("{prefix}{name}");
        }
        for e in self.edges.iter_mut() {
            e.name = format!("{prefix}{}", e.name);
        }
    }

    /// Renumbers cells through `map`; vertices that land on the same cell are
    /// merged, keeping the first name.
    pub(crate) fn remap(&self, map: impl Fn(CellId) -> CellId) -> Skeleton {
        let mut vertices: Vec<(String, CellId)> = Vec::new();
        let mut vmap = Vec::with_capacity(self.vertices.len());
        for (name, c) in &self.vertices {
            let c = map(*c);
            match vertices.iter().position(|&(_, d)| d == c) {
                Some(i) => vmap.push(i),
                None => {
                    vmap.push(vertices.len());
                    vertices.push((name.clone(), c));
                }
            }
        }
        let edges = self
            .edges
            .iter()
            .map(|e| SkeletonEdge {
                name: e.name.clone(),
                cells: e.cells.iter().map(|&c| map(c)).collect(),
                ends: (vmap[e.ends.0], vmap[e.ends.1]),
            })
            .collect();
        Skeleton { vertices, edges }
    }

    pub(crate) fn concat(&self, other: &Skeleton, offset: usize) -> Skeleton {
        let shifted = other.remap(|c| c + offset);
        let base = self.vertices.len();
        let mut out = self.clone();
        out.vertices.extend(shifted.vertices);
        out.edges.extend(shifted.edges.into_iter().map(|mut e| {
            e.ends = (e.ends.0 + base, e.ends.1 + base);
            e
        }));
        out
    }

    pub fn vertex(&self, name: &str) -> Option<CellId> {
        self.vertices.iter().find(|(n, _)| n == name).map(|&(_, c)| c)
    }

    pub fn edge(&self, name: &str) -> Option<&SkeletonEdge> {
        self.edges.iter().find(|e| e.name == name)
    }

    /// Closure of one edge: its open cells plus both endpoints.
    pub fn edge_closure(&self, e: &SkeletonEdge, len: usize) -> CellSet {
        let mut set = crate::bits::from_indices(len, e.cells.iter().copied());
        set.insert(self.vertices[e.ends.0].1);
        set.insert(self.vertices[e.ends.1].1);
        set
    }

    /// The saturated set built from chosen edges (by index) plus chosen
    /// vertices; endpoints of chosen edges are added automatically.
    pub fn saturated(&self, len: usize, edges: &[usize], vertices: &[usize]) -> CellSet {
        let mut set = CellSet::with_capacity(len);
        for &e in edges {
            set.union_with(&self.edge_closure(&self.edges[e], len));
        }
        for &v in vertices {
            set.insert(self.vertices[v].1);
        }
        set
    }

    /// True when `d` takes every edge whole or not at all and contains the
    /// endpoints of every edge it takes. Cells outside the skeleton make the
    /// answer false.
    pub fn is_saturated(&self, d: &CellSet) -> bool {
        let mut covered = CellSet::with_capacity(d.len());
        for (_, c) in &self.vertices {
            covered.insert(*c);
        }
        for e in &self.edges {
            let inside = e.cells.iter().filter(|&&c| d.contains(c)).count();
            if inside != 0 && inside != e.cells.len() {
                return false;
            }
            if inside != 0 && !(d.contains(self.vertices[e.ends.0].1) && d.contains(self.vertices[e.ends.1].1)) {
                return false;
            }
            covered.extend(e.cells.iter().copied());
        }
        d.is_subset(&covered)
    }
}
