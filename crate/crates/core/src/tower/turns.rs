use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::finspace::{coproduct, Cell, CellId, DiscreteSpace};
use crate::rational::{rat, serde_fraction};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TurnError {
    #[error("a piecewise-linear function needs at least one breakpoint")]
    NoBreakpoints,
    #[error("breakpoints must have strictly increasing x (at index {0})")]
    NotIncreasing(usize),
    #[error("value {value} at x = {x} is outside (0, 1]")]
    Range { x: String, value: String },
    #[error("the space has no slicing")]
    NoSlice,
    #[error("cell {cell} sits at slice {nu}, outside the functions' domain")]
    Domain { cell: CellId, nu: String },
}

/// Continuous piecewise-linear map from `[x_0, x_last]` into `(0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinearFn {
    breakpoints: Vec<(Rational, Rational)>,
}

impl PiecewiseLinearFn {
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self, TurnError> {
        if breakpoints.is_empty() {
            return Err(TurnError::NoBreakpoints);
        }
        for (i, w) in breakpoints.windows(2).enumerate() {
            if w[0].0 >= w[1].0 {
                return Err(TurnError::NotIncreasing(i + 1));
            }
        }
        for &(x, v) in &breakpoints {
            if v <= Rational::zero() || v > Rational::one() {
                return Err(TurnError::Range {
                    x: x.to_string(),
                    value: v.to_string(),
                });
            }
        }
        Ok(Self { breakpoints })
    }

    pub fn constant(value: Rational, x_max: Rational) -> Result<Self, TurnError> {
        if x_max.is_zero() {
            return Self::new(vec![(Rational::zero(), value)]);
        }
        Self::new(vec![(Rational::zero(), value), (x_max, value)])
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    pub fn domain(&self) -> (Rational, Rational) {
        (self.breakpoints[0].0, self.breakpoints[self.breakpoints.len() - 1].0)
    }

    /// `None` outside the domain.
    pub fn eval(&self, x: Rational) -> Option<Rational> {
        let i = self.breakpoints.partition_point(|&(bx, _)| bx <= x);
        if i == 0 {
            return None;
        }
        let (x0, v0) = self.breakpoints[i - 1];
        if x0 == x {
            return Some(v0);
        }
        let &(x1, v1) = self.breakpoints.get(i)?;
        Some(v0 + (v1 - v0) * (x - x0) / (x1 - x0))
    }
}

/// `h1` and `h2` on `[0, x_max]`, breakpoints at the integers: `h1` is 1 at
/// 0 and at odd `n` and `1/n` at even `n ≥ 2`; `h2` is 1 at even `n` and `1/n`
/// at odd `n`.
pub fn default_turn_functions(x_max: u32) -> (PiecewiseLinearFn, PiecewiseLinearFn) {
    let x_max = x_max.max(1) as i64;
    let inv = |n: i64| if n == 0 { Rational::one() } else { rat(1, n) };
    let h1 = (0..=x_max)
        .map(|n| (Rational::from_integer(n), if n % 2 == 1 || n == 0 { Rational::one() } else { inv(n) }))
        .collect();
    let h2 = (0..=x_max)
        .map(|n| (Rational::from_integer(n), if n % 2 == 0 { Rational::one() } else { inv(n) }))
        .collect();
    (
        PiecewiseLinearFn::new(h1).expect("values in (0,1]"),
        PiecewiseLinearFn::new(h2).expect("values in (0,1]"),
    )
}

/// The integer slices in `[0, x_max]` where one of the four requirements on
/// a turn pair fails, with the requirement's index (0 to 3).
pub fn turn_violations(h1: &PiecewiseLinearFn, h2: &PiecewiseLinearFn, x_max: u32) -> Vec<(u32, usize)> {
    let mut out = Vec::new();
    let one = Rational::one();
    for n in 0..=x_max {
        let x = Rational::from_integer(n as i64);
        let (Some(a), Some(b)) = (h1.eval(x), h2.eval(x)) else {
            out.push((n, 0));
            continue;
        };
        if n == 0 && a != one {
            out.push((n, 0));
        }
        if n % 2 == 1 && a != one {
            out.push((n, 1));
        }
        if n % 2 == 0 && b != one {
            out.push((n, 2));
        }
        if n >= 1 && a.min(b) != rat(1, n as i64) {
            out.push((n, 3));
        }
    }
    out
}

/// Which of the three copies of a [`build_w`] space a cell belongs to.
pub fn copy_of(w: &DiscreteSpace, cell: CellId) -> Option<usize> {
    let tag = w.cell(cell).tag.as_deref()?;
    ["w0:", "w1:", "w2:"].iter().position(|p| tag.starts_with(p))
}

/// Three copies of `s` (tags `w0:`, `w1:`, `w2:`); copies `i ≠ j` of cells on
/// the same slice are at `max(d, g)` with `g` equal to `f1`, `f2` or
/// `min(f1 + f2, 1)` for the pairs 01, 02 and 12. Different slices stay at
/// distance 1.
pub fn build_w(s: &DiscreteSpace, f1: &PiecewiseLinearFn, f2: &PiecewiseLinearFn) -> Result<DiscreteSpace, TurnError> {
    let slice = s.slice().ok_or(TurnError::NoSlice)?.to_vec();
    let n = s.len();
    let mut g1 = Vec::with_capacity(n);
    let mut g2 = Vec::with_capacity(n);
    for (cell, &nu) in slice.iter().enumerate() {
        let domain = || TurnError::Domain { cell, nu: nu.to_string() };
        g1.push(f1.eval(nu).ok_or_else(domain)?);
        g2.push(f2.eval(nu).ok_or_else(domain)?);
    }
    let mut base = s.clone();
    for c in 0..n {
        if base.cell(c).tag.is_none() {
            base.set_tag(c, Some(format!("#{c}")));
        }
    }
    let mut copies = Vec::new();
    for i in 0..3 {
        let mut copy = base.clone();
        copy.prefix_tags(&format!("w{i}:"));
        copies.push(copy);
    }
    let joined = coproduct(&coproduct(&copies[0], &copies[1]), &copies[2]);

    let mut distances: Vec<(CellId, CellId, Rational)> = Vec::new();
    for x in 0..joined.len() {
        distances.extend(joined.near(x).iter().filter(|&&(y, _)| x < y).map(|&(y, d)| (x, y, d)));
    }
    let one = Rational::one();
    for x in 0..n {
        let g = [g1[x], g2[x], (g1[x] + g2[x]).min(one)];
        let pairs = std::iter::once((x, Rational::zero())).chain(s.near(x).iter().copied());
        for (y, d) in pairs {
            if slice[x] != slice[y] {
                continue;
            }
            for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
                let dw = d.max(g[k]);
                if dw < one {
                    distances.push((x + i * n, y + j * n, dw));
                }
            }
        }
    }
    let cells: Vec<Cell> = joined.cells().to_vec();
    let opens = (0..joined.len()).map(|x| joined.min_open(x).clone()).collect();
    let mut out = DiscreteSpace::from_parts(cells, opens, distances, s.resolution())
        .with_slice(slice.iter().chain(&slice).chain(&slice).copied().collect());
    if let Some(sk) = joined.skeleton() {
        out = out.with_skeleton(sk.clone());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub cell: CellId,
    #[serde(with = "serde_fraction")]
    pub nu: Rational,
    /// Closest side-copy cell and its distance, if any is below 1.
    pub nearest: Option<(CellId, String)>,
}

/// A copy-0 cell with slice above `floor` that has no copy-1 or copy-2 cell
/// within distance `< r`.
pub fn cover_witness(w: &DiscreteSpace, r: Rational, floor: Rational) -> Option<CoverWitness> {
    let slice = w.slice()?;
    for x in 0..w.len() {
        if copy_of(w, x) != Some(0) || slice[x] <= floor {
            continue;
        }
        let nearest = w
            .near(x)
            .iter()
            .filter(|&&(y, _)| matches!(copy_of(w, y), Some(1) | Some(2)))
            .min_by_key(|&&(_, d)| d)
            .copied();
        if nearest.is_none_or(|(_, d)| d >= r) {
            return Some(CoverWitness {
                cell: x,
                nu: slice[x],
                nearest: nearest.map(|(y, d)| (y, crate::rational::format_rational(&d))),
            });
        }
    }
    None
}

/// Every copy-0 cell with slice `> 1/r` is within `< r` of a side copy.
pub fn check_cover_radius(w: &DiscreteSpace, r: Rational) -> Result<(), CoverWitness> {
    match cover_witness(w, r, r.recip()) {
        None => Ok(()),
        Some(wit) => Err(wit),
    }
}

/// One closed half-segment per level `0..levels`: a 0-cell and the open
/// 1-cell beside it at distance `1/2`, sliced by level.
pub fn segment_ladder(levels: usize) -> DiscreteSpace {
    let n = 2 * levels;
    let cells = (0..n)
        .map(|id| Cell {
            id,
            dim: (id % 2) as u8,
            tag: Some(format!("{}{}", if id % 2 == 0 { "v" } else { "e" }, id / 2)),
        })
        .collect();
    let opens = (0..n)
        .map(|id| {
            if id % 2 == 0 {
                crate::bits::from_indices(n, [id, id + 1])
            } else {
                crate::bits::from_indices(n, [id])
            }
        })
        .collect();
    let distances = (0..levels).map(|k| (2 * k, 2 * k + 1, rat(1, 2)));
    DiscreteSpace::from_parts(cells, opens, distances, rat(1, 2))
        .with_slice((0..n).map(|id| Rational::from_integer((id / 2) as i64)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finspace::Diagnostic;

    fn int(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn default_pair_meets_requirements() {
        let (h1, h2) = default_turn_functions(12);
        assert_eq!(h1.eval(int(3)), Some(int(1)));
        assert_eq!(h2.eval(int(4)), Some(int(1)));
        assert_eq!(h1.eval(int(2)).unwrap().min(h2.eval(int(2)).unwrap()), rat(1, 2));
        assert!(turn_violations(&h1, &h2, 12).is_empty());
        assert_eq!(h1.eval(rat(5, 2)), Some(rat(3, 4)));
        assert_eq!(h1.eval(int(13)), None);
    }

    #[test]
    fn swapped_pair_is_flagged() {
        let (h1, h2) = default_turn_functions(4);
        assert!(turn_violations(&h2, &h1, 4).contains(&(3, 1)));
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert_eq!(PiecewiseLinearFn::new(vec![]), Err(TurnError::NoBreakpoints));
        assert_eq!(PiecewiseLinearFn::new(vec![(int(1), int(1)), (int(1), int(1))]), Err(TurnError::NotIncreasing(1)));
        assert!(PiecewiseLinearFn::new(vec![(int(0), int(0))]).is_err());
    }

    #[test]
    fn constant_one_gives_crisp_copies() {
        let s = segment_ladder(4);
        let f = PiecewiseLinearFn::constant(int(1), int(3)).unwrap();
        let w = build_w(&s, &f, &f).unwrap();
        assert_eq!(w.len(), 24);
        assert!(w.validate().is_empty());
        for x in 0..w.len() {
            assert!(w.near(x).iter().all(|&(y, _)| copy_of(&w, y) == copy_of(&w, x)));
        }
        let wit = check_cover_radius(&w, rat(1, 2)).unwrap_err();
        assert_eq!(wit.nu, int(3));
    }

    #[test]
    fn same_point_copies_take_f1() {
        let s = segment_ladder(3);
        let f1 = PiecewiseLinearFn::new(vec![(int(0), int(1)), (int(2), rat(1, 2))]).unwrap();
        let f2 = PiecewiseLinearFn::new(vec![(int(0), int(1)), (int(2), rat(1, 2))]).unwrap();
        let w = build_w(&s, &f1, &f2).unwrap();
        let (v0, v1, v2) = (w.find_tag("w0:v2").unwrap(), w.find_tag("w1:v2").unwrap(), w.find_tag("w2:v2").unwrap());
        assert_eq!(w.dist(v0, v1), rat(1, 2));
        assert_eq!(w.dist(v1, v2), int(1));
        assert_eq!(w.dist(v0, w.find_tag("w1:e1").unwrap()), int(1));
        assert!(w.validate().is_empty());
    }

    #[test]
    fn cover_radius_with_default_turns() {
        let s = segment_ladder(10);
        let (h1, h2) = default_turn_functions(9);
        let w = build_w(&s, &h1, &h2).unwrap();
        assert!(w.validate().is_empty());
        assert!(check_cover_radius(&w, rat(1, 2)).is_ok());
        assert!(check_cover_radius(&w, rat(1, 3)).is_ok());
        let wit = cover_witness(&w, rat(1, 5), int(2)).unwrap();
        assert_eq!(wit.nu, int(3));
    }

    #[test]
    fn ladder_is_sliced() {
        let s = segment_ladder(5);
        assert_eq!(s.len(), 10);
        assert!(s.validate().is_empty());
        let bad = segment_ladder(2).with_slice(vec![int(0), int(1), int(1), int(1)]);
        assert!(matches!(bad.validate()[0], Diagnostic::Slicing { .. } | Diagnostic::SliceBreak { .. }));
    }
}
