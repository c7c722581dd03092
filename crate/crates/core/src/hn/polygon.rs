use num_rational::Ratio;
use serde::Serialize;

use super::{HNType, SigmaHNType};
use crate::dimvec::DimVector;
use crate::quiver::{QuiverWithDuality, Stability};

/// Lattice polygon through the cumulative points `(sum dim, sum theta)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Polygon {
    pub vertices: Vec<(i64, i64)>,
}

impl Polygon {
    fn from_parts<'a>(theta: &Stability, parts: impl Iterator<Item = &'a DimVector>) -> Self {
        let mut vertices = vec![(0, 0)];
        let (mut x, mut y) = (0, 0);
        for p in parts.filter(|p| !p.is_zero()) {
            x += p.total();
            y += theta.theta(p);
            vertices.push((x, y));
        }
        Self { vertices }
    }

    pub fn of_hn_type(theta: &Stability, t: &HNType) -> Self {
        Self::from_parts(theta, t.parts.iter())
    }

    /// Built from `(d^1, ..., d^r, e^inf, sigma(d^r), ..., sigma(d^1))`.
    pub fn of_sigma_type(qd: &QuiverWithDuality, theta: &Stability, t: &SigmaHNType) -> Self {
        let duals: Vec<DimVector> = t.parts.iter().rev().map(|d| qd.sigma_dim(d)).collect();
        Self::from_parts(
            theta,
            t.parts.iter().chain(std::iter::once(&t.tail)).chain(duals.iter()),
        )
    }

    pub fn end(&self) -> (i64, i64) {
        *self.vertices.last().expect("starts at the origin")
    }

    /// Height at `x` by linear interpolation, for `0 <= x <= end.x`.
    pub fn height(&self, x: i64) -> Ratio<i64> {
        for w in self.vertices.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            if x0 <= x && x <= x1 {
                return Ratio::from_integer(y0) + Ratio::new((y1 - y0) * (x - x0), x1 - x0);
            }
        }
        Ratio::from_integer(self.vertices[0].1)
    }

    /// Symmetric under `x -> end.x - x` (the end lies on the x-axis).
    pub fn has_reflection_symmetry(&self) -> bool {
        let (xe, ye) = self.end();
        ye == 0 && (0..=xe).all(|x| self.height(x) == self.height(xe - x))
    }
}

/// `Some(true)` if `p1` lies on or below `p2` everywhere, `Some(false)` if
/// not, `None` if the endpoints differ.
pub fn polygon_leq(p1: &Polygon, p2: &Polygon) -> Option<bool> {
    if p1.end() != p2.end() {
        return None;
    }
    Some((0..=p1.end().0).all(|x| p1.height(x) <= p2.height(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hn::enumerate_sigma_hn_types;
    use crate::quiver::builtin_a3;

    #[test]
    fn a3_polygons() {
        let qd = builtin_a3();
        let theta = Stability(vec![1, 0, -1]);
        let e = qd.self_dual("1,2,1".parse().unwrap()).unwrap();
        let types = enumerate_sigma_hn_types(&qd, &theta, &e).unwrap();
        let polys: Vec<Polygon> = types.iter().map(|t| Polygon::of_sigma_type(&qd, &theta, t)).collect();
        assert_eq!(polys[0].vertices, vec![(0, 0), (4, 0)]);
        assert_eq!(polys[1].vertices, vec![(0, 0), (1, 1), (3, 1), (4, 0)]);
        for p in &polys {
            assert!(p.has_reflection_symmetry());
            assert!(p.vertices.iter().all(|&(x, y)| x >= 0 && y >= 0));
            assert_eq!(polygon_leq(p, p), Some(true));
            assert_eq!(polygon_leq(&polys[0], p), Some(true));
        }
        assert_eq!(polygon_leq(&polys[1], &polys[0]), Some(false));
        let other = Polygon { vertices: vec![(0, 0), (3, 0)] };
        assert_eq!(polygon_leq(&other, &polys[0]), None);
    }
}
