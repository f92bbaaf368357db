use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// `(in1, in2, out)` node indices.
pub type Gate = [usize; 3];

/// Node membership, 1 = the node lies in the definable set.
pub type Assignment = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("malformed circuit description: {0}")]
    Parse(String),
    #[error("duplicate node label `{0}`")]
    DuplicateLabel(String),
    #[error("gate {gate} refers to node {node}, but there are only {nodes} nodes")]
    BadIndex { gate: usize, node: usize, nodes: usize },
    #[error("the lattice has a single element")]
    TrivialLattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    nodes: Vec<String>,
    gates: Vec<Gate>,
    /// For circuits built from a lattice: the lattice element behind each
    /// node.
    origin: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitFile {
    pub nodes: Vec<String>,
    pub gates: Vec<Gate>,
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let file: CircuitFile = serde_json::from_str(text).map_err(|e| CircuitError::Parse(e.to_string()))?;
    Circuit::new(file.nodes, file.gates)
}

impl Circuit {
    pub fn new(nodes: Vec<String>, gates: Vec<Gate>) -> Result<Self, CircuitError> {
        let mut seen = HashSet::new();
        for label in &nodes {
            if !seen.insert(label.as_str()) {
                return Err(CircuitError::DuplicateLabel(label.clone()));
            }
        }
        for (i, g) in gates.iter().enumerate() {
            if let Some(&node) = g.iter().find(|&&v| v >= nodes.len()) {
                return Err(CircuitError::BadIndex {
                    gate: i,
                    node,
                    nodes: nodes.len(),
                });
            }
        }
        Ok(Self {
            nodes,
            gates,
            origin: None,
        })
    }

    pub fn with_origin(mut self, origin: Vec<usize>) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn origin(&self) -> Option<&[usize]> {
        self.origin.as_deref()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn node(&self, label: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == label)
    }

    pub fn to_file(&self) -> CircuitFile {
        CircuitFile {
            nodes: self.nodes.clone(),
            gates: self.gates.clone(),
        }
    }

    /// Renders an assignment as `{labels of nodes at 1}`.
    pub fn render(&self, a: &Assignment) -> String {
        let on: Vec<&str> = a.ones().map(|i| self.nodes[i].as_str()).collect();
        format!("{{{}}}", on.join(","))
    }
}
