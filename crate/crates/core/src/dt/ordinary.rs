use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::DtError;
use crate::arith::{pochhammer_power, GradedSeries, Grading, LaurentPoly, RationalFunc};
use crate::dimvec::DimVector;
use crate::quiver::Quiver;

/// Ordinary motivic DT invariants: `Omega_d(v) = sum_k Omega_{(d,k)} v^k`,
/// entering the product `prod (v^k t^d; q)_inf^{-Omega_{(d,k)}}`.
///
/// Coefficients are signed; `(-1)^k Omega_{(d,k)}` are the dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTInvariant {
    grading: Grading,
    coeffs: BTreeMap<DimVector, LaurentPoly>,
}

#[derive(Serialize)]
struct TermRow {
    k: i64,
    coeff: String,
}

#[derive(Serialize)]
struct DegreeRow {
    d: serde_json::Value,
    terms: Vec<TermRow>,
}

impl DTInvariant {
    pub fn empty(grading: Grading) -> Self {
        Self {
            grading,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from integer coefficients `((d, k), Omega)`.
    pub fn from_terms<I>(grading: Grading, terms: I) -> Self
    where
        I: IntoIterator<Item = (DimVector, i64, BigInt)>,
    {
        let mut coeffs: BTreeMap<DimVector, LaurentPoly> = BTreeMap::new();
        for (d, k, c) in terms {
            let entry = coeffs.entry(d).or_default();
            *entry = &*entry + &LaurentPoly::monomial(k, BigRational::from_integer(c));
        }
        coeffs.retain(|_, p| !p.is_zero());
        Self { grading, coeffs }
    }

    pub fn grading(&self) -> Grading {
        self.grading
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degrees(&self) -> impl Iterator<Item = &DimVector> {
        self.coeffs.keys()
    }

    /// `Omega_d(v)`, zero if absent.
    pub fn poly(&self, d: &DimVector) -> LaurentPoly {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn poly_at(&self, d: i64) -> LaurentPoly {
        self.poly(&DimVector::scalar(d))
    }

    /// All nonzero `(d, k, Omega_{(d,k)})`, by degree then exponent.
    pub fn terms(&self) -> Vec<(DimVector, i64, BigInt)> {
        self.coeffs
            .iter()
            .flat_map(|(d, p)| p.terms().map(move |(k, c)| (d.clone(), k, c.to_integer())))
            .collect()
    }

    /// `[{d, terms: [{k, coeff}]}]`.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<DegreeRow> = self
            .coeffs
            .iter()
            .map(|(d, p)| DegreeRow {
                d: match self.grading {
                    Grading::Integer => d.get(0).into(),
                    Grading::Vector(_) => serde_json::to_value(d).expect("serializable"),
                },
                terms: p
                    .terms()
                    .map(|(k, c)| TermRow {
                        k,
                        coeff: c.to_string(),
                    })
                    .collect(),
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }
}

/// Möbius function.
pub fn mobius(mut n: i64) -> i64 {
    assert!(n >= 1);
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn one_minus_q() -> RationalFunc {
    RationalFunc::from_laurent(LaurentPoly::from_int_terms([(0, 1), (2, -1)]))
}

/// Stacky series of `L_m` in the Poincaré normalization:
/// `A_d = (-v)^{(1-m) d^2} / prod_{j=1}^{d} (1 - q^j)`.
pub fn loop_stack_series(m: usize, trunc: i64) -> GradedSeries {
    let m = m as i64;
    let mut out = GradedSeries::one(Grading::Integer, trunc);
    let mut den = LaurentPoly::one();
    for d in 1..=trunc {
        den = &den * &LaurentPoly::from_int_terms([(0, 1), (2 * d, -1)]);
        let chi = (1 - m) * d * d;
        let num = LaurentPoly::from_int_terms([(chi, if chi % 2 == 0 { 1 } else { -1 })]);
        let c = RationalFunc::new(num, den.clone()).expect("nonzero denominator");
        out.set(DimVector::scalar(d), c).expect("integer grading");
    }
    out
}

/// Stacky series of a symmetric quiver in the same normalization:
/// `A_d = (-v)^{-chi(d,d)} [q^{dim R_d} / #GL_d](v -> v^{-1})`.
pub fn stack_series(q: &Quiver, trunc: i64) -> GradedSeries {
    let n = q.num_nodes();
    let mut out = GradedSeries::one(Grading::Vector(n), trunc);
    for d in DimVector::all_up_to(n, trunc).into_iter().skip(1) {
        let chi = q.euler_form(&d, &d);
        let sign = if chi % 2 == 0 { 1 } else { -1 };
        let twist = RationalFunc::from_laurent(LaurentPoly::from_int_terms([(-chi, sign)]));
        let c = &twist * &q.stacky_count(&d).invert_variable();
        out.set(d, c).expect("matching grading");
    }
    out
}

/// Factorizes `A = prod (v^k t^d; q)^{-Omega_{(d,k)}}` through the truncation.
///
/// With `L = log A`, the Möbius inverse `F_d = sum_{n | d} mu(n)/n psi_n(L_{d/n})`
/// satisfies `F_d = Omega_d / (1 - q)`.
pub fn extract_dt_invariants(a: &GradedSeries) -> Result<DTInvariant, DtError> {
    let log = a.log()?;
    let mut coeffs = BTreeMap::new();
    for (d, _) in log.iter() {
        let g = d.gcd();
        let mut f = RationalFunc::zero();
        for n in (1..=g).filter(|n| g % n == 0) {
            let mu = mobius(n);
            if mu == 0 {
                continue;
            }
            let base = log.coeff(&d.divide(n).expect("n divides d"));
            if base.is_zero() {
                continue;
            }
            let term = base.substitute_power(n)?.scale(&BigRational::new(mu.into(), n.into()));
            f = &f + &term;
        }
        let p = &f * &one_minus_q();
        let poly = p.polynomiality_check().map_err(|e| DtError::NotPolynomial {
            degree: d.clone(),
            denominator: e.denominator,
        })?;
        if !poly.all_integer() {
            return Err(DtError::NonInteger {
                degree: d.clone(),
                value: poly,
            });
        }
        if !poly.is_zero() {
            coeffs.insert(d.clone(), poly);
        }
    }
    Ok(DTInvariant {
        grading: a.grading(),
        coeffs,
    })
}

/// The product `prod_{(d,k)} (v^k t^d; q)_inf^{-Omega_{(d,k)}}` through `trunc`.
pub fn rebuild_series(inv: &DTInvariant, trunc: i64) -> Result<GradedSeries, DtError> {
    let mut acc = GradedSeries::one(inv.grading, trunc);
    for (d, k, c) in inv.terms() {
        if d.total() > trunc {
            continue;
        }
        let exponent: i64 = (-c).try_into().map_err(|_| DtError::NonInteger {
            degree: d.clone(),
            value: inv.poly(&d),
        })?;
        let factor = pochhammer_power(k, &d, inv.grading, 1, exponent, trunc)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t.iter().copied())
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn first_coefficient_of_l3() {
        // (-v)^{-2} / (1 - q) = q^{-1} / (1 - q)
        let a = loop_stack_series(3, 2);
        assert!(a.constant_term().is_one());
        let expected = RationalFunc::new(lp(&[(-2, 1)]), lp(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(a.coeff_at(1), expected);
    }

    #[test]
    fn closed_form_matches_group_counts() {
        for m in 0..4 {
            let closed = loop_stack_series(m, 4);
            let general = stack_series(&Quiver::loop_quiver(m), 4);
            for d in 0..=4 {
                assert_eq!(closed.coeff_at(d), general.coeff(&DimVector::new(vec![d]).unwrap()));
            }
        }
    }

    #[test]
    fn l3_through_t4() {
        let inv = extract_dt_invariants(&loop_stack_series(3, 4)).unwrap();
        assert_eq!(inv.poly_at(1), lp(&[(-2, 1)]));
        assert_eq!(inv.poly_at(2), lp(&[(-8, 1)]));
        assert_eq!(inv.poly_at(3), lp(&[(-18, 1), (-14, 1), (-12, 1)]));
        assert_eq!(
            inv.poly_at(4),
            lp(&[(-32, 1), (-28, 1), (-26, 1), (-24, 2), (-22, 1), (-20, 2), (-18, 1), (-16, 1)])
        );
    }

    #[test]
    fn m0_has_a_single_generator() {
        let a = loop_stack_series(0, 5);
        let inv = extract_dt_invariants(&a).unwrap();
        assert_eq!(inv.degrees().count(), 1);
        assert_eq!(inv.poly_at(1), lp(&[(1, -1)]));
        assert_eq!(rebuild_series(&inv, 5).unwrap(), a);
    }

    #[test]
    fn trivial_series_has_no_invariants() {
        let one = GradedSeries::one(Grading::Integer, 4);
        let inv = extract_dt_invariants(&one).unwrap();
        assert!(inv.is_empty());
        assert!(rebuild_series(&inv, 4).unwrap().is_one());
    }

    #[test]
    fn rebuild_round_trip() {
        let a = loop_stack_series(3, 4);
        let inv = extract_dt_invariants(&a).unwrap();
        assert_eq!(rebuild_series(&inv, 4).unwrap(), a);
        let small = DTInvariant::from_terms(
            Grading::Integer,
            [
                (DimVector::scalar(1), -1, BigInt::from(2)),
                (DimVector::scalar(2), 3, BigInt::from(-1)),
                (DimVector::scalar(3), 0, BigInt::from(5)),
            ],
        );
        let back = extract_dt_invariants(&rebuild_series(&small, 3).unwrap()).unwrap();
        assert_eq!(back, small);
    }

    #[test]
    fn non_symmetric_input_is_reported() {
        let q = Quiver::new(vec!["1".into(), "2".into()], vec![("a".into(), "1".into(), "2".into())]).unwrap();
        let err = extract_dt_invariants(&stack_series(&q, 3)).unwrap_err();
        assert!(matches!(err, DtError::NotPolynomial { .. } | DtError::NonInteger { .. }));
    }
}
