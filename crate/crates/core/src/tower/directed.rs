use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::finspace::{CellId, CellSet, DiscreteSpace};
use crate::rational::serde_fraction;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DirectedViolation {
    MapLength { stage: usize, expected: usize, found: usize },
    OutOfRange { stage: usize, cell: CellId },
    NotInjective { stage: usize, cell: CellId },
    /// `d(f x, f y) ≠ d(x, y)` for the map out of `stage`.
    NotIsometric { stage: usize, x: CellId, y: CellId },
    /// The preimage of `f(cell)`'s minimal open set is not `cell`'s.
    NotSubspace { stage: usize, cell: CellId },
    /// An image cell of stage `from` sits below distance 1 from a cell of
    /// stage `to` outside the image.
    NotCrisp {
        from: usize,
        to: usize,
        old: CellId,
        new: CellId,
        #[serde(with = "serde_fraction")]
        d: Rational,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectedReport {
    pub crisp: bool,
    pub embeddings: bool,
    pub eventually_open: bool,
    /// For each cell of the last stage, the first stage whose image contains
    /// it in its interior.
    pub open_from: Vec<usize>,
    pub violations: Vec<DirectedViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DirectedError {
    #[error("stage {stage} has no cell tagged `{tag}` to receive cell {cell}")]
    MissingTag { stage: usize, cell: CellId, tag: String },
    #[error("stage {stage} cell {cell} has no tag")]
    Untagged { stage: usize, cell: CellId },
    #[error("stage {stage} carries tag `{tag}` twice")]
    DuplicateTag { stage: usize, tag: String },
}

/// Inclusion maps between consecutive stages, matching cells by tag.
pub fn maps_by_tag(stages: &[DiscreteSpace]) -> Result<Vec<Vec<CellId>>, DirectedError> {
    let mut out = Vec::new();
    for (i, pair) in stages.windows(2).enumerate() {
        let mut index: HashMap<&str, CellId> = HashMap::new();
        for c in pair[1].cells() {
            if let Some(t) = c.tag.as_deref() {
                if index.insert(t, c.id).is_some() {
                    return Err(DirectedError::DuplicateTag {
                        stage: i + 1,
                        tag: t.to_string(),
                    });
                }
            }
        }
        let map = pair[0]
            .cells()
            .iter()
            .map(|c| {
                let t = c.tag.as_deref().ok_or(DirectedError::Untagged { stage: i, cell: c.id })?;
                index.get(t).copied().ok_or_else(|| DirectedError::MissingTag {
                    stage: i + 1,
                    cell: c.id,
                    tag: t.to_string(),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(map);
    }
    Ok(out)
}

/// Checks that `maps[i]: stages[i] → stages[i+1]` are isometric topological
/// embeddings, that every composite image is crisply embedded, and records
/// where each cell of the last stage becomes interior to an image.
pub fn check_directed_system(stages: &[DiscreteSpace], maps: &[Vec<CellId>]) -> DirectedReport {
    let mut violations = Vec::new();
    let mut shapes_ok = maps.len() + 1 == stages.len().max(1);
    for (i, map) in maps.iter().enumerate().take(stages.len().saturating_sub(1)) {
        if map.len() != stages[i].len() {
            violations.push(DirectedViolation::MapLength {
                stage: i,
                expected: stages[i].len(),
                found: map.len(),
            });
            shapes_ok = false;
        } else if let Some(cell) = map.iter().position(|&y| y >= stages[i + 1].len()) {
            violations.push(DirectedViolation::OutOfRange { stage: i, cell });
            shapes_ok = false;
        }
    }
    if !shapes_ok || stages.is_empty() {
        return DirectedReport {
            crisp: false,
            embeddings: false,
            eventually_open: false,
            open_from: Vec::new(),
            violations,
        };
    }

    let mut embeddings = true;
    for (i, map) in maps.iter().enumerate() {
        let (s, t) = (&stages[i], &stages[i + 1]);
        let mut pre: Vec<Option<CellId>> = vec![None; t.len()];
        for (x, &y) in map.iter().enumerate() {
            if pre[y].replace(x).is_some() {
                violations.push(DirectedViolation::NotInjective { stage: i, cell: x });
                embeddings = false;
            }
        }
        for x in 0..s.len() {
            for &(y, d) in s.near(x) {
                if t.dist(map[x], map[y]) != d {
                    violations.push(DirectedViolation::NotIsometric { stage: i, x, y });
                    embeddings = false;
                }
            }
            for &(fy, d) in t.near(map[x]) {
                if let Some(y) = pre[fy] {
                    if s.dist(x, y) != d && !s.near(x).iter().any(|&(z, _)| z == y) {
                        violations.push(DirectedViolation::NotIsometric { stage: i, x, y });
                        embeddings = false;
                    }
                }
            }
            let pulled = crate::bits::from_indices(s.len(), t.min_open(map[x]).ones().filter_map(|c| pre[c]));
            if pulled != *s.min_open(x) {
                violations.push(DirectedViolation::NotSubspace { stage: i, cell: x });
                embeddings = false;
            }
        }
    }

    // images[i][j]: image of stage i inside stage j, for j ≥ i.
    let k = stages.len();
    let mut composite: Vec<Vec<CellId>> = Vec::with_capacity(k);
    let mut crisp = true;
    let mut final_images: Vec<CellSet> = Vec::with_capacity(k);
    for i in 0..k {
        let mut pos: Vec<CellId> = (0..stages[i].len()).collect();
        for j in i..k {
            if j > i {
                pos = pos.iter().map(|&x| maps[j - 1][x]).collect();
                let t = &stages[j];
                let image = crate::bits::from_indices(t.len(), pos.iter().copied());
                for &fx in &pos {
                    if let Some(&(y, d)) = t.near(fx).iter().find(|&&(y, _)| !image.contains(y)) {
                        violations.push(DirectedViolation::NotCrisp {
                            from: i,
                            to: j,
                            old: fx,
                            new: y,
                            d,
                        });
                        crisp = false;
                    }
                }
            }
        }
        final_images.push(crate::bits::from_indices(stages[k - 1].len(), pos.iter().copied()));
        composite.push(pos);
    }

    let last = &stages[k - 1];
    let open_from: Vec<usize> = (0..last.len())
        .map(|z| {
            (0..k)
                .find(|&j| final_images[j].contains(z) && last.min_open(z).is_subset(&final_images[j]))
                .unwrap_or(k - 1)
        })
        .collect();

    DirectedReport {
        crisp,
        embeddings,
        // The last stage's image is the whole limit, so every cell is
        // interior to it.
        eventually_open: true,
        open_from,
        violations,
    }
}
