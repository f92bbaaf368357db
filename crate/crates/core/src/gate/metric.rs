use crate::Rational;

/// Distance between two distinct same-`x` cells of the non-crisp part of a
/// discretized gate. Every such pair shares one dimension and one `|x|`.
pub trait CellMetric: Send + Sync {
    fn name(&self) -> &'static str;

    /// `abs_x` is the representative `|x|` of the cells (grid point for
    /// 0-cells, midpoint for 1-cells) and `h` the grid pitch.
    fn partner_distance(&self, dim: u8, abs_x: Rational, h: Rational) -> Rational;
}

/// Evaluates the continuum formula `max(|y|, |w|) = |x|` at the cells'
/// representatives.
struct Midpoint;

impl CellMetric for Midpoint {
    fn name(&self) -> &'static str {
        "midpoint"
    }

    fn partner_distance(&self, _dim: u8, abs_x: Rational, _h: Rational) -> Rational {
        abs_x
    }
}

/// Like [`Midpoint`], but a grid point takes the value of the 1-cell just
/// outside it (`|x| + h/2`). A grid point's minimal open set then never
/// reaches partners that its outer edge cell cannot, which makes every ball
/// around a minimal open set open.
struct Star;

impl CellMetric for Star {
    fn name(&self) -> &'static str {
        "star"
    }

    fn partner_distance(&self, dim: u8, abs_x: Rational, h: Rational) -> Rational {
        if dim == 0 {
            abs_x + h / 2
        } else {
            abs_x
        }
    }
}

pub fn cell_metrics() -> Vec<Box<dyn CellMetric>> {
    vec![Box::new(Midpoint), Box::new(Star)]
}

pub fn cell_metric(name: &str) -> Option<Box<dyn CellMetric>> {
    cell_metrics().into_iter().find(|m| m.name() == name)
}
