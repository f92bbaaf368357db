use serde::{Deserialize, Serialize};

use super::{Cell, CellId, DiscreteSpace, Skeleton};
use crate::rational::{format_rational, parse_rational};

/// JSON shape of a [`DiscreteSpace`]. Distances list each pair below 1 once
/// (`i < j`) as an exact `"p/q"` string; every unlisted pair is at 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub resolution: String,
    pub cells: Vec<Cell>,
    pub min_open: Vec<Vec<CellId>>,
    pub distances: Vec<(CellId, CellId, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skeleton: Option<Skeleton>,
}

impl SpaceFile {
    pub fn from_space(s: &DiscreteSpace) -> Self {
        let mut distances = Vec::new();
        for x in 0..s.len() {
            for &(y, d) in s.near(x) {
                if x < y {
                    distances.push((x, y, format_rational(&d)));
                }
            }
        }
        SpaceFile {
            resolution: format_rational(&s.resolution()),
            cells: s.cells().to_vec(),
            min_open: (0..s.len()).map(|x| s.min_open(x).ones().collect()).collect(),
            distances,
            slice: s.slice().map(|v| v.iter().map(format_rational).collect()),
            skeleton: s.skeleton().cloned(),
        }
    }

    pub fn into_space(self) -> Result<DiscreteSpace, String> {
        let n = self.cells.len();
        let check = |c: CellId| if c < n { Ok(c) } else { Err(format!("cell index {c} out of range")) };
        for (i, c) in self.cells.iter().enumerate() {
            if c.id != i {
                return Err(format!("cell ids must be dense: position {i} holds id {}", c.id));
            }
        }
        if self.min_open.len() != n {
            return Err(format!("min_open has {} rows for {n} cells", self.min_open.len()));
        }
        let mut opens = Vec::with_capacity(n);
        for row in &self.min_open {
            let mut set = fixedbitset::FixedBitSet::with_capacity(n);
            for &c in row {
                set.insert(check(c)?);
            }
            opens.push(set);
        }
        let mut dists = Vec::with_capacity(self.distances.len());
        for (x, y, d) in &self.distances {
            dists.push((check(*x)?, check(*y)?, parse_rational(d).map_err(|e| e.to_string())?));
        }
        let resolution = parse_rational(&self.resolution).map_err(|e| e.to_string())?;
        let mut s = DiscreteSpace::from_parts(self.cells, opens, dists, resolution);
        if let Some(slice) = self.slice {
            let parsed: Result<Vec<_>, _> = slice.iter().map(|t| parse_rational(t)).collect();
            s = s.with_slice(parsed.map_err(|e| e.to_string())?);
        }
        if let Some(sk) = self.skeleton {
            s = s.with_skeleton(sk);
        }
        Ok(s)
    }
}

pub fn to_json(s: &DiscreteSpace) -> String {
    serde_json::to_string_pretty(&SpaceFile::from_space(s)).expect("space files always serialize")
}

pub fn from_json(text: &str) -> Result<DiscreteSpace, String> {
    let file: SpaceFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    file.into_space()
}
