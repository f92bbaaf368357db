use crate::rational::rat;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateVertex {
    pub name: &'static str,
    /// Terminal marker carried as the cell tag, if this is a terminal.
    pub terminal: Option<&'static str>,
    pub x: Rational,
    pub y: Rational,
}

/// A straight edge `y = slope * x + intercept` between two vertices, listed
/// with increasing `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateEdge {
    pub name: &'static str,
    pub from: usize,
    pub to: usize,
    pub slope: i64,
    pub intercept: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateGeometry {
    pub vertices: Vec<GateVertex>,
    pub edges: Vec<GateEdge>,
}

impl GateEdge {
    pub fn y_at(&self, x: Rational) -> Rational {
        x * self.slope + self.intercept
    }
}

impl GateGeometry {
    pub fn and_gate() -> Self {
        let v = |name, terminal, x: i64, y: i64| GateVertex {
            name,
            terminal,
            x: rat(x, 1),
            y: rat(y, 1),
        };
        let vertices = vec![
            v("I1", Some("in1"), -2, 1),
            v("I2", Some("in2"), -2, -1),
            v("A", None, -1, 1),
            v("B", None, -1, -1),
            v("C", None, 1, 1),
            v("D", None, 1, -1),
            v("O", None, 0, 0),
            v("OUT", Some("out"), 2, 0),
        ];
        let e = |name, from, to, slope, intercept| GateEdge {
            name,
            from,
            to,
            slope,
            intercept,
        };
        let edges = vec![
            e("TL", 0, 2, 0, 1),
            e("TR", 2, 4, 0, 1),
            e("BL", 1, 3, 0, -1),
            e("BR", 3, 5, 0, -1),
            e("UL", 2, 6, -1, 0),
            e("LL", 3, 6, 1, 0),
            e("UR", 6, 4, 1, 0),
            e("LR", 6, 5, -1, 0),
            e("OS", 6, 7, 0, 0),
        ];
        Self { vertices, edges }
    }

    pub fn vertex(&self, name: &str) -> usize {
        self.vertices.iter().position(|v| v.name == name).expect("known gate vertex")
    }

    /// `[-2,1] × {±1} ∪ [1,2] × {0}`: every point here is at distance 1 from
    /// every other point.
    pub fn is_crisp_point(x: Rational, y: Rational) -> bool {
        let (one, two) = (rat(1, 1), rat(2, 1));
        ((y == one || y == -one) && x >= -two && x <= one) || (y == rat(0, 1) && x >= one && x <= two)
    }

    pub fn top_lobe() -> [&'static str; 4] {
        ["TL", "TR", "UL", "UR"]
    }

    pub fn bottom_lobe() -> [&'static str; 4] {
        ["BL", "BR", "LL", "LR"]
    }

    pub fn output_segment() -> [&'static str; 1] {
        ["OS"]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_edges_with_consistent_endpoints() {
        let g = GateGeometry::and_gate();
        assert_eq!(g.edges.len(), 9);
        for e in &g.edges {
            let (a, b) = (&g.vertices[e.from], &g.vertices[e.to]);
            assert!(a.x < b.x, "{}", e.name);
            assert_eq!(e.y_at(a.x), a.y, "{}", e.name);
            assert_eq!(e.y_at(b.x), b.y, "{}", e.name);
        }
    }

    #[test]
    fn crisp_region_boundary() {
        assert!(GateGeometry::is_crisp_point(rat(1, 1), rat(0, 1)));
        assert!(!GateGeometry::is_crisp_point(rat(7, 8), rat(0, 1)));
        assert!(GateGeometry::is_crisp_point(rat(1, 1), rat(1, 1)));
        assert!(!GateGeometry::is_crisp_point(rat(1, 2), rat(1, 2)));
    }
}
