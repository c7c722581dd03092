use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ArithError, RationalFunc};
use crate::dimvec::DimVector;

/// Degree type of a series: a single integer (stored as a length-one
/// dimension vector) or a dimension vector with a fixed number of entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Grading {
    Integer,
    Vector(usize),
}

impl Grading {
    pub fn width(self) -> usize {
        match self {
            Grading::Integer => 1,
            Grading::Vector(n) => n,
        }
    }
}

/// Power series truncated at total degree `trunc`, with exact rational
/// function coefficients. Degrees absent from the map have coefficient zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSeries {
    grading: Grading,
    trunc: i64,
    coeffs: BTreeMap<DimVector, RationalFunc>,
}

impl GradedSeries {
    pub fn zero(grading: Grading, trunc: i64) -> Self {
        Self {
            grading,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(grading: Grading, trunc: i64) -> Self {
        let mut s = Self::zero(grading, trunc);
        s.coeffs
            .insert(DimVector::zeros(grading.width()), RationalFunc::one());
        s
    }

    /// Builds from explicit coefficients; terms beyond `trunc` are dropped.
    pub fn from_coeffs<I>(grading: Grading, trunc: i64, coeffs: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = (DimVector, RationalFunc)>,
    {
        let mut s = Self::zero(grading, trunc);
        for (d, c) in coeffs {
            let existing = s.coeff(&d);
            s.set(d, &existing + &c)?;
        }
        Ok(s)
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    fn check_degree(&self, d: &DimVector) -> Result<(), ArithError> {
        if d.len() != self.grading.width() {
            return Err(ArithError::DegreeShape(d.clone(), self.grading));
        }
        Ok(())
    }

    /// Sets a coefficient. Degrees above the truncation are silently dropped.
    pub fn set(&mut self, d: DimVector, c: RationalFunc) -> Result<(), ArithError> {
        self.check_degree(&d)?;
        if d.total() > self.trunc || c.is_zero() {
            self.coeffs.remove(&d);
        } else {
            self.coeffs.insert(d, c);
        }
        Ok(())
    }

    pub fn get(&self, d: &DimVector) -> Option<&RationalFunc> {
        self.coeffs.get(d)
    }

    pub fn coeff(&self, d: &DimVector) -> RationalFunc {
        self.coeffs.get(d).cloned().unwrap_or_else(RationalFunc::zero)
    }

    /// Coefficient of a singly graded series.
    pub fn coeff_at(&self, n: i64) -> RationalFunc {
        if n < 0 {
            return RationalFunc::zero();
        }
        self.coeff(&DimVector::scalar(n))
    }

    pub fn constant_term(&self) -> RationalFunc {
        self.coeff(&DimVector::zeros(self.grading.width()))
    }

    /// Nonzero terms in lexicographic degree order.
    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &RationalFunc)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.constant_term().is_one()
    }

    pub fn truncate(&self, trunc: i64) -> Self {
        Self {
            grading: self.grading,
            trunc,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(d, _)| d.total() <= trunc)
                .map(|(d, c)| (d.clone(), c.clone()))
                .collect(),
        }
    }

    fn compatible(&self, other: &Self) -> Result<i64, ArithError> {
        if self.grading != other.grading {
            return Err(ArithError::GradingMismatch(self.grading, other.grading));
        }
        Ok(self.trunc.min(other.trunc))
    }

    pub fn add(&self, other: &Self) -> Result<Self, ArithError> {
        let trunc = self.compatible(other)?;
        let mut out = self.truncate(trunc);
        for (d, c) in other.coeffs.iter().filter(|(d, _)| d.total() <= trunc) {
            let sum = &out.coeff(d) + c;
            out.set(d.clone(), sum)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| -c)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RationalFunc) -> Self {
        self.map_coeffs(|x| x * c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&RationalFunc) -> RationalFunc) -> Self {
        Self {
            grading: self.grading,
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, c)| (d.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    /// Cauchy product truncated at the smaller of the two truncations.
    pub fn mul(&self, other: &Self) -> Result<Self, ArithError> {
        let trunc = self.compatible(other)?;
        let targets: BTreeSet<DimVector> = self
            .coeffs
            .keys()
            .flat_map(|a| other.coeffs.keys().map(move |b| a.add(b)))
            .filter(|d| d.total() <= trunc)
            .collect();
        let terms: Vec<(DimVector, RationalFunc)> = targets
            .into_par_iter()
            .map(|d| {
                let mut acc = RationalFunc::zero();
                for (a, ca) in self.coeffs.range(..=d.clone()) {
                    if let Some(rest) = d.checked_sub(a) {
                        if let Some(cb) = other.coeffs.get(&rest) {
                            acc = &acc + &(ca * cb);
                        }
                    }
                }
                (d, acc)
            })
            .collect();
        Self::from_terms(self.grading, trunc, terms)
    }

    fn from_terms(grading: Grading, trunc: i64, terms: Vec<(DimVector, RationalFunc)>) -> Result<Self, ArithError> {
        let mut out = Self::zero(grading, trunc);
        for (d, c) in terms {
            out.set(d, c)?;
        }
        Ok(out)
    }

    fn require_constant(&self, one: bool) -> Result<(), ArithError> {
        let c = self.constant_term();
        let ok = if one { c.is_one() } else { c.is_zero() };
        if ok {
            Ok(())
        } else {
            Err(ArithError::ConstantTerm {
                expected: if one { "1" } else { "0" },
                found: c.to_string(),
            })
        }
    }

    /// Degrees that can carry nonzero coefficients in `log`, `exp` or the
    /// inverse: the truncated additive closure of the support.
    fn closure_levels(&self) -> Vec<Vec<DimVector>> {
        let gens: Vec<&DimVector> = self.coeffs.keys().filter(|d| !d.is_zero()).collect();
        let mut seen: BTreeSet<DimVector> = BTreeSet::new();
        let mut frontier: Vec<DimVector> = gens.iter().map(|d| (*d).clone()).collect();
        while let Some(d) = frontier.pop() {
            if d.total() > self.trunc || !seen.insert(d.clone()) {
                continue;
            }
            for g in &gens {
                frontier.push(d.add(g));
            }
        }
        let mut levels: BTreeMap<i64, Vec<DimVector>> = BTreeMap::new();
        for d in seen {
            levels.entry(d.total()).or_default().push(d);
        }
        levels.into_values().collect()
    }

    /// Solves a triangular recursion level by level (by total degree); the
    /// degrees inside one level are independent.
    fn solve_levels(
        &self,
        start: Option<RationalFunc>,
        step: impl Fn(&DimVector, &BTreeMap<DimVector, RationalFunc>) -> RationalFunc + Sync,
    ) -> Result<Self, ArithError> {
        let mut known: BTreeMap<DimVector, RationalFunc> = BTreeMap::new();
        let zero = DimVector::zeros(self.grading.width());
        if let Some(c) = start {
            known.insert(zero, c);
        }
        for level in self.closure_levels() {
            let solved: Vec<(DimVector, RationalFunc)> = level
                .into_par_iter()
                .map(|d| {
                    let c = step(&d, &known);
                    (d, c)
                })
                .collect();
            for (d, c) in solved {
                if !c.is_zero() {
                    known.insert(d, c);
                }
            }
        }
        Self::from_terms(self.grading, self.trunc, known.into_iter().collect())
    }

    /// Multiplicative inverse; the constant term must be 1.
    pub fn invert(&self) -> Result<Self, ArithError> {
        self.require_constant(true)?;
        self.solve_levels(Some(RationalFunc::one()), |d, known| {
            let mut acc = RationalFunc::zero();
            for (a, ca) in self.coeffs.iter().filter(|(a, _)| !a.is_zero()) {
                if let Some(rest) = d.checked_sub(a) {
                    if let Some(b) = known.get(&rest) {
                        acc = &acc - &(ca * b);
                    }
                }
            }
            acc
        })
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self, ArithError> {
        self.require_constant(true)?;
        self.solve_levels(None, |d, known| {
            // |d| L_d = |d| A_d - sum_{0<d'<d} |d'| L_{d'} A_{d-d'}
            let mut acc = self.coeff(d).scale(&weight(d));
            for (dp, l) in known.range(..d.clone()) {
                if let Some(rest) = d.checked_sub(dp) {
                    if let Some(a) = self.coeffs.get(&rest) {
                        acc = &acc - &(l * a).scale(&weight(dp));
                    }
                }
            }
            acc.scale(&weight(d).recip())
        })
    }

    /// Exponential of a series with constant term 0.
    pub fn exp(&self) -> Result<Self, ArithError> {
        self.require_constant(false)?;
        self.solve_levels(Some(RationalFunc::one()), |d, known| {
            // |d| E_d = sum_{0<d'<=d} |d'| L_{d'} E_{d-d'}
            let mut acc = RationalFunc::zero();
            for (dp, l) in self.coeffs.iter() {
                if let Some(rest) = d.checked_sub(dp) {
                    if let Some(e) = known.get(&rest) {
                        acc = &acc + &(l * e).scale(&weight(dp));
                    }
                }
            }
            acc.scale(&weight(d).recip())
        })
    }

    /// Plethystic Adams operation: `t^d -> t^{n d}` together with `v -> v^n`.
    pub fn adams(&self, n: i64) -> Result<Self, ArithError> {
        if n <= 0 {
            return Err(ArithError::NonPositiveAdams(n));
        }
        let mut out = Self::zero(self.grading, self.trunc);
        for (d, c) in &self.coeffs {
            out.set(d.scale(n), c.substitute_power(n)?)?;
        }
        Ok(out)
    }
}

fn weight(d: &DimVector) -> BigRational {
    BigRational::from_integer(d.total().into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::LaurentPoly;

    fn xi_series(trunc: i64, terms: &[(i64, i64)]) -> GradedSeries {
        GradedSeries::from_coeffs(
            Grading::Integer,
            trunc,
            terms
                .iter()
                .map(|&(d, c)| (DimVector::scalar(d), RationalFunc::from_int(c))),
        )
        .unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        let a = xi_series(5, &[(0, 1), (1, 1)]);
        let b = xi_series(5, &[(0, 1), (1, -1)]);
        assert_eq!(a.mul(&b).unwrap(), xi_series(5, &[(0, 1), (2, -1)]));
        let one = GradedSeries::one(Grading::Integer, 5);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn geometric_inverse() {
        let a = xi_series(4, &[(0, 1), (1, -1)]);
        let inv = a.invert().unwrap();
        assert_eq!(inv, xi_series(4, &[(0, 1), (1, 1), (2, 1), (3, 1), (4, 1)]));
        assert!(GradedSeries::one(Grading::Integer, 3).invert().unwrap().is_one());
        assert!(xi_series(3, &[(0, 2)]).invert().is_err());
    }

    #[test]
    fn log_of_geometric_series() {
        let a = xi_series(5, &[(0, 1), (1, -1)]).invert().unwrap();
        let l = a.log().unwrap();
        for n in 1..=5 {
            let expected = RationalFunc::from_laurent(LaurentPoly::constant(BigRational::new(1.into(), n.into())));
            assert_eq!(l.coeff_at(n), expected);
        }
        assert!(GradedSeries::one(Grading::Integer, 3).log().unwrap().is_empty());
        assert_eq!(l.exp().unwrap(), a);
        assert!(a.exp().is_err());
    }

    #[test]
    fn grading_mismatch_is_an_error() {
        let a = GradedSeries::one(Grading::Integer, 2);
        let b = GradedSeries::one(Grading::Vector(2), 2);
        assert!(matches!(a.mul(&b), Err(ArithError::GradingMismatch(..))));
        let mut c = GradedSeries::zero(Grading::Vector(2), 2);
        assert!(c.set(DimVector::scalar(1), RationalFunc::one()).is_err());
    }

    #[test]
    fn vector_graded_log_exp() {
        let g = Grading::Vector(2);
        let mut a = GradedSeries::one(g, 3);
        let q = RationalFunc::from_laurent(LaurentPoly::q_pow(1));
        a.set(DimVector::new(vec![1, 0]).unwrap(), q.clone()).unwrap();
        a.set(DimVector::new(vec![0, 1]).unwrap(), RationalFunc::from_int(2)).unwrap();
        a.set(DimVector::new(vec![1, 1]).unwrap(), q).unwrap();
        let round = a.log().unwrap().exp().unwrap();
        assert_eq!(round, a);
        let inv = a.invert().unwrap();
        assert!(a.mul(&inv).unwrap().is_one());
    }
}
