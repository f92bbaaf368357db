use fixedbitset::FixedBitSet;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Skeleton;
use crate::Rational;

pub type CellId = usize;

/// Cell membership set, indexed by [`CellId`].
pub type CellSet = FixedBitSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub id: CellId,
    pub dim: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteSpace {
    cells: Vec<Cell>,
    min_open: Vec<CellSet>,
    /// Per cell, `(other, d)` for every other cell with `d < 1`, sorted by id.
    near: Vec<Vec<(CellId, Rational)>>,
    slice: Option<Vec<Rational>>,
    resolution: Rational,
    skeleton: Option<Skeleton>,
}

/// One invariant violation found by [`DiscreteSpace::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    /// `min_open(x)` does not contain `x`.
    NotReflexive { cell: CellId },
    /// `y ∈ min_open(x)` but `z ∈ min_open(y) \ min_open(x)`.
    NotNested { x: CellId, y: CellId, z: CellId },
    Asymmetric { x: CellId, y: CellId },
    OutOfRange { x: CellId, y: CellId, d: Rational },
    Triangle { x: CellId, y: CellId, z: CellId },
    Slicing { x: CellId, y: CellId, d: Rational },
    /// `y ∈ min_open(x)` on a different slice, so the slicing is not continuous.
    SliceBreak { x: CellId, y: CellId },
    SliceLength { expected: usize, found: usize },
}

impl DiscreteSpace {
    /// Assembles a space from raw parts. `distances` lists each pair with
    /// distance below 1 once in either orientation; validation is separate.
    pub fn from_parts(
        cells: Vec<Cell>,
        min_open: Vec<CellSet>,
        distances: impl IntoIterator<Item = (CellId, CellId, Rational)>,
        resolution: Rational,
    ) -> Self {
        let n = cells.len();
        let mut near: Vec<Vec<(CellId, Rational)>> = vec![Vec::new(); n];
        for (x, y, d) in distances {
            if x == y {
                continue;
            }
            near[x].push((y, d));
            near[y].push((x, d));
        }
        for row in near.iter_mut() {
            row.sort_by_key(|&(y, _)| y);
            row.dedup_by_key(|&mut (y, _)| y);
        }
        Self {
            cells,
            min_open,
            near,
            slice: None,
            resolution,
            skeleton: None,
        }
    }

    pub(crate) fn from_near(
        cells: Vec<Cell>,
        min_open: Vec<CellSet>,
        near: Vec<Vec<(CellId, Rational)>>,
        resolution: Rational,
    ) -> Self {
        Self {
            cells,
            min_open,
            near,
            slice: None,
            resolution,
            skeleton: None,
        }
    }

    pub fn with_slice(mut self, slice: Vec<Rational>) -> Self {
        self.slice = Some(slice);
        self
    }

    pub fn with_skeleton(mut self, skeleton: Skeleton) -> Self {
        self.skeleton = Some(skeleton);
        self
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, x: CellId) -> &Cell {
        &self.cells[x]
    }

    pub fn set_tag(&mut self, x: CellId, tag: Option<String>) {
        self.cells[x].tag = tag;
    }

    /// Prefixes every tag with `prefix` (untagged cells stay untagged).
    pub fn prefix_tags(&mut self, prefix: &str) {
        for c in self.cells.iter_mut() {
            if let Some(t) = c.tag.as_mut() {
                *t = format!("{prefix}{t}");
            }
        }
        if let Some(sk) = self.skeleton.as_mut() {
            sk.prefix_names(prefix);
        }
    }

    pub fn find_tag(&self, tag: &str) -> Option<CellId> {
        self.cells.iter().position(|c| c.tag.as_deref() == Some(tag))
    }

    pub fn min_open(&self, x: CellId) -> &CellSet {
        &self.min_open[x]
    }

    pub fn near(&self, x: CellId) -> &[(CellId, Rational)] {
        &self.near[x]
    }

    pub fn dist(&self, x: CellId, y: CellId) -> Rational {
        if x == y {
            return Rational::zero();
        }
        match self.near[x].binary_search_by_key(&y, |&(z, _)| z) {
            Ok(i) => self.near[x][i].1,
            Err(_) => Rational::one(),
        }
    }

    pub fn slice(&self) -> Option<&[Rational]> {
        self.slice.as_deref()
    }

    pub fn resolution(&self) -> Rational {
        self.resolution
    }

    pub fn skeleton(&self) -> Option<&Skeleton> {
        self.skeleton.as_ref()
    }

    pub(crate) fn skeleton_mut(&mut self) -> Option<&mut Skeleton> {
        self.skeleton.as_mut()
    }

    pub fn empty_set(&self) -> CellSet {
        CellSet::with_capacity(self.len())
    }

    pub fn full_set(&self) -> CellSet {
        crate::bits::full(self.len())
    }

    /// Checks the Alexandrov base, metric and slicing invariants. An empty
    /// result means the space is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            if !self.min_open[x].contains(x) {
                out.push(Diagnostic::NotReflexive { cell: x });
            }
            for y in self.min_open[x].ones() {
                if let Some(z) = self.min_open[y].difference(&self.min_open[x]).next() {
                    out.push(Diagnostic::NotNested { x, y, z });
                }
            }
        }
        for x in 0..n {
            for &(y, d) in &self.near[x] {
                if self.dist(y, x) != d {
                    out.push(Diagnostic::Asymmetric { x, y });
                }
                if x < y && (d <= Rational::zero() || d > Rational::one()) {
                    out.push(Diagnostic::OutOfRange { x, y, d });
                }
            }
        }
        // Only pairs of sub-1 legs can break the triangle inequality.
        for y in 0..n {
            let row = &self.near[y];
            for (i, &(x, dxy)) in row.iter().enumerate() {
                for &(z, dyz) in &row[i + 1..] {
                    if self.dist(x, z) > dxy + dyz {
                        out.push(Diagnostic::Triangle { x, y, z });
                    }
                }
            }
        }
        if let Some(slice) = &self.slice {
            if slice.len() != n {
                out.push(Diagnostic::SliceLength {
                    expected: n,
                    found: slice.len(),
                });
            } else {
                for x in 0..n {
                    for &(y, d) in &self.near[x] {
                        if x < y && slice[x] != slice[y] {
                            out.push(Diagnostic::Slicing { x, y, d });
                        }
                    }
                    for y in self.min_open[x].ones() {
                        if slice[x] != slice[y] {
                            out.push(Diagnostic::SliceBreak { x, y });
                        }
                    }
                }
            }
        }
        out
    }
}
