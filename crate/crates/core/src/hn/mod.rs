//! Harder-Narasimhan types, their polygons and codimensions, the
//! wall-crossing recursions for semistable stacky series, and a brute-force
//! finite-field check.

mod ff;
mod oracle;
mod polygon;
mod recursion;

use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

pub use oracle::{ordinary_oracle, sigma_oracle, OracleError};
pub use polygon::{polygon_leq, Polygon};
pub use recursion::{OrdinaryRecursion, SigmaRecursion};

use crate::dimvec::DimVector;
use crate::quiver::{Quiver, QuiverError, QuiverWithDuality, SelfDualDimVector, Stability};

/// `(d^1, ..., d^r)` with strictly decreasing slopes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HNType {
    pub parts: Vec<DimVector>,
}

/// `((d^1, ..., d^r), e^inf)` with `mu(d^1) > ... > mu(d^r) > 0` and
/// weight `sum H(d^k) + e^inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SigmaHNType {
    pub parts: Vec<DimVector>,
    pub tail: DimVector,
}

impl HNType {
    pub fn total(&self) -> Option<DimVector> {
        let first = self.parts.first()?;
        Some(self.parts.iter().skip(1).fold(first.clone(), |a, b| a.add(b)))
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.len() <= 1
    }
}

impl SigmaHNType {
    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    /// `d = sum_k d^k` (zero for the trivial type).
    pub fn isotropic_part(&self) -> DimVector {
        self.parts
            .iter()
            .fold(DimVector::zeros(self.tail.len()), |a, b| a.add(b))
    }

    pub fn weight(&self, qd: &QuiverWithDuality) -> DimVector {
        let d = self.isotropic_part();
        qd.hyperbolic(&d).into_dim().add(&self.tail)
    }
}

fn fmt_parts(f: &mut fmt::Formatter<'_>, parts: &[DimVector]) -> fmt::Result {
    write!(f, "(")?;
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, ")")
}

impl fmt::Display for HNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_parts(f, &self.parts)
    }
}

impl fmt::Display for SigmaHNType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        fmt_parts(f, &self.parts)?;
        write!(f, ", {})", self.tail)
    }
}

// nonzero vectors w <= rest with slope strictly below `bound` (if any)
fn candidate_parts(
    rest: &DimVector,
    theta: &Stability,
    bound: Option<Ratio<i64>>,
    fits: impl Fn(&DimVector) -> bool,
) -> Vec<DimVector> {
    rest.sub_vectors()
        .into_iter()
        .filter(|w| !w.is_zero() && fits(w))
        .filter(|w| {
            let mu = theta.slope(w).expect("nonzero");
            bound.is_none_or(|b| mu < b)
        })
        .collect()
}

/// All ordered decompositions of `d` into nonzero parts with strictly
/// decreasing slopes, lexicographic. Nonemptiness of the semistable loci is
/// not tested.
pub fn enumerate_hn_types(q: &Quiver, theta: &Stability, d: &DimVector) -> Result<Vec<HNType>, QuiverError> {
    q.check_len(d)?;
    if d.is_zero() {
        return Ok(vec![HNType { parts: Vec::new() }]);
    }
    fn go(rest: &DimVector, theta: &Stability, bound: Option<Ratio<i64>>, prefix: &mut Vec<DimVector>, out: &mut Vec<HNType>) {
        if rest.is_zero() {
            out.push(HNType { parts: prefix.clone() });
            return;
        }
        for w in candidate_parts(rest, theta, bound, |_| true) {
            let mu = theta.slope(&w).expect("nonzero");
            let next = rest.checked_sub(&w).expect("w <= rest");
            prefix.push(w);
            go(&next, theta, Some(mu), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, theta, None, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// All sigma-HN types of weight `e`, lexicographic; includes `((), e)`.
pub fn enumerate_sigma_hn_types(
    qd: &QuiverWithDuality,
    theta: &Stability,
    e: &SelfDualDimVector,
) -> Result<Vec<SigmaHNType>, QuiverError> {
    theta.check_compatible(qd)?;
    fn go(
        qd: &QuiverWithDuality,
        rest: &DimVector,
        theta: &Stability,
        bound: Option<Ratio<i64>>,
        prefix: &mut Vec<DimVector>,
        out: &mut Vec<SigmaHNType>,
    ) {
        if qd.self_dual(rest.clone()).is_ok() {
            out.push(SigmaHNType {
                parts: prefix.clone(),
                tail: rest.clone(),
            });
        }
        let fits = |w: &DimVector| qd.hyperbolic(w).as_dim().le(rest);
        for w in candidate_parts(rest, theta, bound, fits) {
            let mu = theta.slope(&w).expect("nonzero");
            if mu <= Ratio::from_integer(0) {
                continue;
            }
            let next = rest.checked_sub(qd.hyperbolic(&w).as_dim()).expect("fits");
            prefix.push(w);
            go(qd, &next, theta, Some(mu), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(qd, e.as_dim(), theta, None, &mut Vec::new(), &mut out);
    out.sort();
    Ok(out)
}

/// `-sum_{k<l} chi(d^k, d^l)`, the codimension of an ordinary HN stratum.
pub fn codim_ordinary(q: &Quiver, t: &HNType) -> i64 {
    let mut out = 0;
    for (k, a) in t.parts.iter().enumerate() {
        for b in &t.parts[k + 1..] {
            out -= q.euler_form(a, b);
        }
    }
    out
}

/// `-sum_{k<l} chi(d^k, d^l) - chi(d, e^inf) - E(sigma(d))`, `d = sum d^k`.
pub fn codim_sigma(qd: &QuiverWithDuality, t: &SigmaHNType) -> i64 {
    let d = t.isotropic_part();
    let mut out = 0;
    for (k, a) in t.parts.iter().enumerate() {
        for b in &t.parts[k + 1..] {
            out -= qd.euler_form(a, b);
        }
    }
    out - qd.euler_form(&d, &t.tail) - qd.sigma_euler_form(&qd.sigma_dim(&d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{builtin_a2, builtin_a3};

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trivial_stability_gives_trivial_type() {
        let q = builtin_a3();
        let types = enumerate_hn_types(q.quiver(), &Stability::trivial(3), &dv(&[1, 2, 1])).unwrap();
        assert_eq!(types, vec![HNType { parts: vec![dv(&[1, 2, 1])] }]);
        let zero = enumerate_hn_types(q.quiver(), &Stability::trivial(3), &dv(&[0, 0, 0])).unwrap();
        assert_eq!(zero, vec![HNType { parts: vec![] }]);
    }

    #[test]
    fn a2_types() {
        let q = builtin_a2();
        let theta = Stability(vec![1, -1]);
        let types = enumerate_hn_types(q.quiver(), &theta, &dv(&[1, 1])).unwrap();
        let shown: Vec<String> = types.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["((1,0), (0,1))", "((1,1))"]);
    }

    #[test]
    fn a3_sigma_types() {
        let qd = builtin_a3();
        let theta = Stability(vec![1, 0, -1]);
        let e = qd.self_dual(dv(&[1, 2, 1])).unwrap();
        let types = enumerate_sigma_hn_types(&qd, &theta, &e).unwrap();
        let shown: Vec<String> = types.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["((), (1,2,1))", "(((1,0,0)), (0,2,0))", "(((1,1,0)), (0,0,0))"]);
        let codims: Vec<i64> = types.iter().map(|t| codim_sigma(&qd, t)).collect();
        assert_eq!(codims, [0, 2, 1]);
        for t in &types {
            assert_eq!(&t.weight(&qd), e.as_dim());
        }
    }

    #[test]
    fn sigma_degenerate_cases() {
        let qd = builtin_a3();
        let theta = Stability(vec![1, 0, -1]);
        let zero = qd.self_dual(dv(&[0, 0, 0])).unwrap();
        assert_eq!(enumerate_sigma_hn_types(&qd, &theta, &zero).unwrap().len(), 1);
        let e = qd.self_dual(dv(&[1, 2, 1])).unwrap();
        assert_eq!(enumerate_sigma_hn_types(&qd, &Stability::trivial(3), &e).unwrap().len(), 1);
        assert!(enumerate_sigma_hn_types(&qd, &Stability(vec![1, 0, 1]), &e).is_err());
    }
}
