use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::OrderError;

/// On-disk description of a finite order: element labels plus either cover
/// pairs or `<=` pairs (both may be given; their union is closed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFile {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
}

/// A finite partial order over labelled elements.
///
/// `up[a]` holds every `b` with `a <= b`; the relation is stored already
/// reflexively and transitively closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
}

pub fn parse_poset(text: &str) -> Result<Poset, OrderError> {
    let file: OrderFile = serde_json::from_str(text).map_err(|e| OrderError::Parse(e.to_string()))?;
    Poset::from_file(&file)
}

impl Poset {
    /// Builds the reflexive-transitive closure of `pairs` (each `(a, b)` read
    /// as `a <= b`) and rejects cycles.
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self, OrderError> {
        let n = labels.len();
        let mut seen = HashMap::with_capacity(n);
        for label in &labels {
            if seen.insert(label.as_str(), ()).is_some() {
                return Err(OrderError::DuplicateLabel(label.clone()));
            }
        }
        let mut up: Vec<FixedBitSet> = (0..n)
            .map(|i| {
                let mut row = FixedBitSet::with_capacity(n);
                row.insert(i);
                row
            })
            .collect();
        for &(a, b) in pairs {
            up[a].insert(b);
        }
        // Warshall on bit rows.
        for k in 0..n {
            let row_k = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    row.union_with(&row_k);
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                if up[a].contains(b) && up[b].contains(a) {
                    return Err(OrderError::Cycle {
                        a: labels[a].clone(),
                        b: labels[b].clone(),
                    });
                }
            }
        }
        Ok(Self { labels, up })
    }

    pub fn from_file(file: &OrderFile) -> Result<Self, OrderError> {
        let mut index = HashMap::new();
        for (i, label) in file.elements.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(OrderError::DuplicateLabel(label.clone()));
            }
        }
        let lookup = |label: &String| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| OrderError::UnknownLabel(label.clone()))
        };
        let mut pairs = Vec::new();
        for (a, b) in file.covers.iter().flatten().chain(file.leq.iter().flatten()) {
            pairs.push((lookup(a)?, lookup(b)?));
        }
        Self::new(file.elements.clone(), &pairs)
    }

    /// Serializes back to the file format using cover pairs.
    pub fn to_file(&self) -> OrderFile {
        OrderFile {
            elements: self.labels.clone(),
            covers: Some(
                self.covers()
                    .into_iter()
                    .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                    .collect(),
            ),
            leq: None,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn up_set(&self, a: usize) -> &FixedBitSet {
        &self.up[a]
    }

    pub fn down_set(&self, a: usize) -> FixedBitSet {
        let mut down = FixedBitSet::with_capacity(self.len());
        for x in 0..self.len() {
            if self.leq(x, a) {
                down.insert(x);
            }
        }
        down
    }

    /// Cover pairs `(a, b)` with `a < b` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.up[a].ones() {
                if a == b {
                    continue;
                }
                let between = self.up[a].ones().any(|c| c != a && c != b && self.lt(c, b));
                if !between {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Length of the longest chain from a minimal element up to `a`.
    pub fn height(&self, a: usize) -> usize {
        let mut memo = vec![None; self.len()];
        self.height_memo(a, &mut memo)
    }

    fn height_memo(&self, a: usize, memo: &mut Vec<Option<usize>>) -> usize {
        if let Some(h) = memo[a] {
            return h;
        }
        let h = (0..self.len())
            .filter(|&x| self.lt(x, a))
            .map(|x| self.height_memo(x, memo) + 1)
            .max()
            .unwrap_or(0);
        memo[a] = Some(h);
        h
    }
}
