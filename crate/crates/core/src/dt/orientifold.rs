use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::ordinary::{extract_dt_invariants, loop_stack_series, DTInvariant};
use super::DtError;
use crate::arith::{pochhammer_power, GradedSeries, Grading, LaurentPoly, RationalFunc};
use crate::dimvec::DimVector;
use crate::quiver::{builtin_loop, QuiverWithDuality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieType {
    B,
    C,
    D,
}

impl LieType {
    /// Parity of the dimension vectors of this type.
    pub fn parity(self) -> i64 {
        match self {
            LieType::B => 1,
            LieType::C | LieType::D => 0,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for LieType {
    type Err = DtError;
    fn from_str(s: &str) -> Result<Self, DtError> {
        match s.trim().to_ascii_uppercase().as_str() {
            "B" => Ok(LieType::B),
            "C" => Ok(LieType::C),
            "D" => Ok(LieType::D),
            _ => Err(DtError::InvalidDuality(format!("unknown type {s:?}"))),
        }
    }
}

/// Duality structure `(s; tau_+, tau_-)` on the loop quiver `L_m` with
/// `sigma = id`, together with the parity class of the dimension vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LoopDuality {
    pub m: usize,
    pub s: i8,
    pub tau_plus: usize,
    pub tau_minus: usize,
    pub type_tag: LieType,
}

impl LoopDuality {
    /// `type_tag` defaults to `B` for `s = +1`; `s = -1` forces `C`.
    pub fn new(s: i8, tau_plus: usize, tau_minus: usize, type_tag: Option<LieType>) -> Result<Self, DtError> {
        let type_tag = match (s, type_tag) {
            (-1, None | Some(LieType::C)) => LieType::C,
            (1, None) => LieType::B,
            (1, Some(t @ (LieType::B | LieType::D))) => t,
            (-1, Some(t)) => {
                return Err(DtError::InvalidDuality(format!("type {t} needs s = +1")));
            }
            (1, Some(LieType::C)) => {
                return Err(DtError::InvalidDuality("type C needs s = -1".into()));
            }
            _ => return Err(DtError::InvalidDuality(format!("s must be +1 or -1, got {s}"))),
        };
        Ok(Self {
            m: tau_plus + tau_minus,
            s,
            tau_plus,
            tau_minus,
            type_tag,
        })
    }

    /// Parses `s,tau+,tau-`.
    pub fn parse(spec: &str, type_tag: Option<LieType>) -> Result<Self, DtError> {
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        let bad = || DtError::InvalidDuality(format!("expected s,tau+,tau- but got {spec:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let s: i8 = parts[0].trim_start_matches('+').parse().map_err(|_| bad())?;
        let tp: usize = parts[1].parse().map_err(|_| bad())?;
        let tm: usize = parts[2].parse().map_err(|_| bad())?;
        Self::new(s, tp, tm, type_tag)
    }

    pub fn parity(&self) -> i64 {
        self.type_tag.parity()
    }

    pub fn quiver(&self) -> QuiverWithDuality {
        builtin_loop(self.m, self.s, self.tau_plus, self.tau_minus).expect("consistent loop duality")
    }

    /// `chi(d, d') = (1 - m) d d'`.
    pub fn chi(&self, d: i64, d2: i64) -> i64 {
        (1 - self.m as i64) * d * d2
    }

    /// `E(d) = d(d-s)/2 - tau_+ d(d+s)/2 - tau_- d(d-s)/2`.
    pub fn sigma_euler(&self, d: i64) -> i64 {
        let s = self.s as i64;
        let (tp, tm) = (self.tau_plus as i64, self.tau_minus as i64);
        (d * (d - s) - tp * d * (d + s) - tm * d * (d - s)) / 2
    }

    pub fn admits(&self, e: i64) -> bool {
        e >= 0 && e.rem_euclid(2) == self.parity()
    }
}

impl fmt::Display for LoopDuality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.s > 0 { "1" } else { "-1" };
        write!(f, "L_{} ({s}; {}, {}) type {}", self.m, self.tau_plus, self.tau_minus, self.type_tag)
    }
}

fn neg_v_pow(n: i64) -> LaurentPoly {
    LaurentPoly::from_int_terms([(n, if n % 2 == 0 { 1 } else { -1 })])
}

/// `A^sigma = sum_e (-v)^{E(e)} / prod_{j=1}^{floor(e/2)} (1 - q^{2j}) xi^e`
/// over `e` of the type's parity.
pub fn sigma_loop_series(ld: &LoopDuality, ximax: i64) -> GradedSeries {
    let mut out = GradedSeries::zero(Grading::Integer, ximax);
    let mut den = LaurentPoly::one();
    for e in 0..=ximax {
        if e >= 2 && e % 2 == 0 {
            den = &den * &LaurentPoly::from_int_terms([(0, 1), (2 * e, -1)]);
        }
        if !ld.admits(e) {
            continue;
        }
        let c = RationalFunc::new(neg_v_pow(ld.sigma_euler(e)), den.clone()).expect("nonzero denominator");
        out.set(DimVector::scalar(e), c).expect("integer grading");
    }
    out
}

/// `(-v)^{-E(e)} [q^{dim R^sigma_e} / #G^sigma_e](v -> v^{-1})`, the
/// coefficient of `A^sigma` assembled from group orders.
pub fn closed_form_from_groups(ld: &LoopDuality, e: i64) -> Result<RationalFunc, DtError> {
    let qd = ld.quiver();
    let sd = qd.self_dual(DimVector::new(vec![e]).map_err(|x| DtError::InvalidDuality(x.to_string()))?)?;
    let count = qd.sigma_stacky_count(&sd)?;
    let twist = RationalFunc::from_laurent(neg_v_pow(-qd.sigma_euler_form(sd.as_dim())));
    Ok(&twist * &count.invert_variable())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ParitySign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// `Omega~^lambda_{(e,k)}`, supported at even `e`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TildeInvariant {
    coeffs: BTreeMap<(i64, i64, ParitySign), BigInt>,
}

impl TildeInvariant {
    pub fn get(&self, e: i64, k: i64, sign: ParitySign) -> BigInt {
        self.coeffs.get(&(e, k, sign)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(i64, i64, ParitySign), &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Splits each `Omega_{(d,k)}` onto `(2d, k, lambda)`, with `lambda = -` iff
/// `chi(w, d) + E(d) + (k - chi(d,d))/2` is odd, `w` the type parity.
pub fn build_tilde_omega(inv: &DTInvariant, ld: &LoopDuality) -> Result<TildeInvariant, DtError> {
    let mut coeffs = BTreeMap::new();
    for (d, k, c) in inv.terms() {
        let d = d.get(0);
        let chi_dd = ld.chi(d, d);
        if (k - chi_dd).rem_euclid(2) != 0 {
            return Err(DtError::HalfIntegerParity { d, k });
        }
        let p = ld.chi(ld.parity(), d) + ld.sigma_euler(d) + (k - chi_dd) / 2;
        let sign = if p.rem_euclid(2) == 0 {
            ParitySign::Plus
        } else {
            ParitySign::Minus
        };
        coeffs.insert((2 * d, k, sign), c);
    }
    Ok(TildeInvariant { coeffs })
}

/// `A~ = prod (v^{k + 2 delta} xi^e; q^2)_inf^{-Omega~^lambda_{(e,k)}}`,
/// `delta = 1` iff `lambda = -`.
pub fn build_tilde_series(t: &TildeInvariant, ximax: i64) -> Result<GradedSeries, DtError> {
    let mut acc = GradedSeries::one(Grading::Integer, ximax);
    for (&(e, k, sign), c) in &t.coeffs {
        if e > ximax || c.is_zero() {
            continue;
        }
        let shift = k + if sign == ParitySign::Minus { 2 } else { 0 };
        let exponent: i64 = (-c).try_into().map_err(|_| DtError::NonInteger {
            degree: DimVector::scalar(e),
            value: LaurentPoly::constant(BigRational::from_integer(c.clone())),
        })?;
        let factor = pochhammer_power(shift, &DimVector::scalar(e), Grading::Integer, 2, exponent, ximax)?;
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Orientifold invariants of one loop duality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientifoldDTResult {
    pub duality: LoopDuality,
    pub ximax: i64,
    /// `Omega^sigma_e(v)`.
    pub omega: BTreeMap<i64, LaurentPoly>,
    /// `Omega-bar_e = (-v)^{-E(e)} Omega^sigma_e`, a polynomial in `q`.
    pub normalized: BTreeMap<i64, LaurentPoly>,
}

#[derive(Serialize)]
struct OmegaTerm {
    l: i64,
    coeff: String,
}

#[derive(Serialize)]
struct OrientifoldRow {
    e: i64,
    omega: Vec<OmegaTerm>,
    omega_bar: Vec<String>,
    betti: Vec<String>,
}

impl OrientifoldDTResult {
    /// Coefficients `c_l` in `Omega^sigma_e = sum_l c_l (-v)^l`.
    pub fn omega_terms(&self, e: i64) -> Vec<(i64, BigInt)> {
        self.omega
            .get(&e)
            .map(|p| {
                p.terms()
                    .map(|(l, c)| {
                        let c = c.to_integer();
                        (l, if l % 2 == 0 { c } else { -c })
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Coefficients of `Omega-bar_e` in `q^0, q^1, ...`.
    pub fn normalized_coeffs(&self, e: i64) -> Vec<BigInt> {
        let Some(p) = self.normalized.get(&e) else {
            return Vec::new();
        };
        let top = p.max_exp().unwrap_or(0) / 2;
        (0..=top).map(|c| p.coeff(2 * c).to_integer()).collect()
    }

    /// Chow Betti numbers `dim A^c` for `c = 0..`, read from `Omega-bar_e`.
    pub fn betti(&self, e: i64) -> Vec<BigInt> {
        self.normalized_coeffs(e)
    }

    /// `Omega-bar_e` as a polynomial in `q`, zero if absent.
    pub fn normalized_at(&self, e: i64) -> LaurentPoly {
        self.normalized.get(&e).cloned().unwrap_or_default()
    }

    /// Every failure of nonnegativity, constant term 1, the degree bound
    /// `deg <= -E(e)`, support in even powers of `q`, or sign coherence of
    /// `Omega^sigma`.
    pub fn property_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&e, p) in &self.normalized {
            let bound = -self.duality.sigma_euler(e);
            if p.terms().any(|(_, c)| c.is_negative()) {
                out.push(format!("xi^{e}: negative coefficient in {}", p.to_q_string()));
            }
            if !p.coeff(0).is_one() {
                out.push(format!("xi^{e}: constant term is not 1 in {}", p.to_q_string()));
            }
            if p.min_exp().unwrap_or(0) < 0 {
                out.push(format!("xi^{e}: negative power of q in {}", p.to_q_string()));
            }
            if p.max_exp().unwrap_or(0) > 2 * bound {
                out.push(format!("xi^{e}: degree exceeds {bound} in {}", p.to_q_string()));
            }
            if p.terms().any(|(k, _)| k % 4 != 0) {
                out.push(format!("xi^{e}: not supported on powers of q^2: {}", p.to_q_string()));
            }
            if e.rem_euclid(2) != self.duality.parity() {
                out.push(format!("xi^{e}: parity does not match type {}", self.duality.type_tag));
            }
        }
        for &e in self.omega.keys() {
            if self.omega_terms(e).iter().any(|(_, c)| c.is_negative()) {
                out.push(format!("xi^{e}: coefficients are not (-1)^l-coherent"));
            }
        }
        out
    }

    /// `[{e, omega: [{l, coeff}], omega_bar: [...], betti: [...]}]`.
    pub fn to_json(&self, with_betti: bool) -> serde_json::Value {
        let rows: Vec<OrientifoldRow> = self
            .omega
            .keys()
            .map(|&e| OrientifoldRow {
                e,
                omega: self
                    .omega_terms(e)
                    .into_iter()
                    .map(|(l, c)| OmegaTerm { l, coeff: c.to_string() })
                    .collect(),
                omega_bar: self.normalized_coeffs(e).iter().map(ToString::to_string).collect(),
                betti: if with_betti {
                    self.betti(e).iter().map(ToString::to_string).collect()
                } else {
                    Vec::new()
                },
            })
            .collect();
        serde_json::to_value(rows).expect("serializable")
    }
}

/// `Omega^sigma = A^sigma / A~`, with integrality checked at every degree.
pub fn extract_orientifold_dt(
    ld: &LoopDuality,
    asigma: &GradedSeries,
    atilde: &GradedSeries,
) -> Result<OrientifoldDTResult, DtError> {
    let quotient = asigma.mul(&atilde.invert()?)?;
    let mut omega = BTreeMap::new();
    let mut normalized = BTreeMap::new();
    for (d, c) in quotient.iter() {
        let e = d.get(0);
        let poly = c.polynomiality_check().map_err(|x| DtError::NotPolynomial {
            degree: d.clone(),
            denominator: x.denominator,
        })?;
        if !poly.all_integer() {
            return Err(DtError::NonInteger {
                degree: d.clone(),
                value: poly,
            });
        }
        let bar = &neg_v_pow(-ld.sigma_euler(e)) * &poly;
        if bar.terms().any(|(k, _)| k % 2 != 0) {
            return Err(DtError::OddNormalized { e, value: bar });
        }
        omega.insert(e, poly);
        normalized.insert(e, bar);
    }
    Ok(OrientifoldDTResult {
        duality: *ld,
        ximax: quotient.trunc(),
        omega,
        normalized,
    })
}

/// Runs the whole chain: ordinary invariants of `L_m`, the parity split, the
/// product `A~`, and the quotient.
pub fn orientifold_pipeline(ld: &LoopDuality, ximax: i64) -> Result<OrientifoldDTResult, DtError> {
    let inv = extract_dt_invariants(&loop_stack_series(ld.m, ximax / 2))?;
    let tilde = build_tilde_omega(&inv, ld)?;
    let atilde = build_tilde_series(&tilde, ximax)?;
    extract_orientifold_dt(ld, &sigma_loop_series(ld, ximax), &atilde)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityRow {
    pub left_e: i64,
    pub right_e: i64,
    pub left: String,
    pub right: String,
    pub equal: bool,
}

/// Side-by-side comparison of normalized invariants of two dualities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub left: String,
    pub right: String,
    pub rows: Vec<DualityRow>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.equal)
    }

    fn compare(
        left: &OrientifoldDTResult,
        right: &OrientifoldDTResult,
        pairs: impl Iterator<Item = (i64, i64)>,
    ) -> Self {
        let rows = pairs
            .map(|(a, b)| {
                let (l, r) = (left.normalized_at(a), right.normalized_at(b));
                DualityRow {
                    left_e: a,
                    right_e: b,
                    left: l.to_q_string(),
                    right: r.to_q_string(),
                    equal: l == r,
                }
            })
            .collect();
        Self {
            left: left.duality.to_string(),
            right: right.duality.to_string(),
            rows,
        }
    }
}

/// `Omega-bar^B_{2e+1} = Omega-bar^C_{2e}` for `e <= emax`, with type B
/// `(1; 0, m)` and type C `(-1; 0, m)`.
pub fn check_bc_duality(m: usize, emax: i64) -> Result<DualityReport, DtError> {
    let b = LoopDuality::new(1, 0, m, Some(LieType::B))?;
    let c = LoopDuality::new(-1, 0, m, Some(LieType::C))?;
    let rb = orientifold_pipeline(&b, 2 * emax + 1)?;
    let rc = orientifold_pipeline(&c, 2 * emax)?;
    Ok(DualityReport::compare(&rb, &rc, (0..=emax).map(|e| (2 * e + 1, 2 * e))))
}

/// The two variant dualities:
/// `(-1; m - m0, m0)` type C against `(1; m0 - 1, m - m0 + 1)` type D at
/// equal even dimension, and `(1; 1, m - 1)` type B at `2e + 1` against
/// `(1; m, 0)` type D at `2e`.
pub fn check_variant_dualities(m: usize, m0: usize, emax: i64) -> Result<Vec<DualityReport>, DtError> {
    if m0 < 1 || m0 > m {
        return Err(DtError::InvalidDuality(format!("need 1 <= m0 <= m, got m0 = {m0}, m = {m}")));
    }
    let c = LoopDuality::new(-1, m - m0, m0, Some(LieType::C))?;
    let d = LoopDuality::new(1, m0 - 1, m - m0 + 1, Some(LieType::D))?;
    let rc = orientifold_pipeline(&c, 2 * emax)?;
    let rd = orientifold_pipeline(&d, 2 * emax)?;
    let first = DualityReport::compare(&rc, &rd, (0..=emax).map(|e| (2 * e, 2 * e)));
    let b = LoopDuality::new(1, 1, m - 1, Some(LieType::B))?;
    let d2 = LoopDuality::new(1, m, 0, Some(LieType::D))?;
    let rb = orientifold_pipeline(&b, 2 * emax + 1)?;
    let rd2 = orientifold_pipeline(&d2, 2 * emax)?;
    let second = DualityReport::compare(&rb, &rd2, (0..=emax).map(|e| (2 * e + 1, 2 * e)));
    Ok(vec![first, second])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t.iter().copied())
    }

    fn q_poly(c: &[i64]) -> LaurentPoly {
        lp(&c.iter().enumerate().map(|(i, &x)| (2 * i as i64, x)).collect::<Vec<_>>())
    }

    fn type_b(m: usize) -> LoopDuality {
        LoopDuality::new(1, 0, m, None).unwrap()
    }

    #[test]
    fn duality_tags() {
        assert_eq!(type_b(3).type_tag, LieType::B);
        assert_eq!(LoopDuality::new(-1, 0, 3, None).unwrap().type_tag, LieType::C);
        assert!(LoopDuality::new(-1, 0, 3, Some(LieType::D)).is_err());
        assert!(LoopDuality::new(1, 0, 3, Some(LieType::C)).is_err());
        assert!(LoopDuality::parse("1,0", None).is_err());
        assert_eq!(LoopDuality::parse("1,0,3", None).unwrap(), type_b(3));
    }

    #[test]
    fn sigma_euler_matches_quiver_form() {
        for (s, tp, tm) in [(1, 0, 3), (1, 2, 1), (-1, 1, 2), (-1, 0, 0)] {
            let ld = LoopDuality::new(s, tp, tm, None).unwrap();
            let qd = ld.quiver();
            for e in 0..8 {
                assert_eq!(ld.sigma_euler(e), qd.sigma_euler_form(&DimVector::scalar(e)));
            }
        }
        assert_eq!(type_b(3).sigma_euler(3), -6);
        assert_eq!(type_b(3).sigma_euler(5), -20);
    }

    #[test]
    fn sigma_series_coefficients() {
        let a = sigma_loop_series(&type_b(3), 3);
        assert!(a.coeff_at(1).is_one());
        assert!(a.coeff_at(0).is_zero());
        let expected = RationalFunc::new(lp(&[(-6, 1)]), lp(&[(0, 1), (4, -1)])).unwrap();
        assert_eq!(a.coeff_at(3), expected);
    }

    #[test]
    fn tilde_split() {
        let inv = extract_dt_invariants(&loop_stack_series(3, 2)).unwrap();
        let t = build_tilde_omega(&inv, &type_b(3)).unwrap();
        assert_eq!(t.get(2, -2, ParitySign::Plus), BigInt::from(1));
        assert!(t.get(2, -2, ParitySign::Minus).is_zero());
        assert!(t.iter().all(|((e, _, _), _)| e % 2 == 0));
        let a = build_tilde_series(&t, 2).unwrap();
        let expected = RationalFunc::new(lp(&[(-2, 1)]), lp(&[(0, 1), (4, -1)])).unwrap();
        assert_eq!(a.coeff_at(2), expected);
        assert!(build_tilde_series(&TildeInvariant::default(), 4).unwrap().is_one());
    }

    #[test]
    fn half_integer_parity_is_rejected() {
        let inv = DTInvariant::from_terms(Grading::Integer, [(DimVector::scalar(1), -1, BigInt::from(1))]);
        assert!(matches!(
            build_tilde_omega(&inv, &type_b(3)),
            Err(DtError::HalfIntegerParity { d: 1, k: -1 })
        ));
    }

    #[test]
    fn l3_type_b_low_degrees() {
        let r = orientifold_pipeline(&type_b(3), 5).unwrap();
        assert!(r.omega[&1].is_one());
        assert_eq!(r.omega[&3], lp(&[(-6, 1)]));
        assert_eq!(r.normalized_at(5), q_poly(&[1, 0, 1, 0, 2]));
        assert_eq!(r.betti(5), [1, 0, 1, 0, 2].map(BigInt::from).to_vec());
        assert!(r.property_violations().is_empty());
    }

    #[test]
    fn round_trip_through_product() {
        let ld = type_b(3);
        let inv = extract_dt_invariants(&loop_stack_series(3, 2)).unwrap();
        let atilde = build_tilde_series(&build_tilde_omega(&inv, &ld).unwrap(), 5).unwrap();
        let asigma = sigma_loop_series(&ld, 5);
        let r = extract_orientifold_dt(&ld, &asigma, &atilde).unwrap();
        let omega = GradedSeries::from_coeffs(
            Grading::Integer,
            5,
            r.omega.iter().map(|(&e, p)| (DimVector::scalar(e), RationalFunc::from_laurent(p.clone()))),
        )
        .unwrap();
        assert_eq!(atilde.mul(&omega).unwrap(), asigma);
    }

    #[test]
    fn regression_values() {
        let r = orientifold_pipeline(&type_b(2), 7).unwrap();
        assert_eq!(r.normalized_at(1), q_poly(&[1]));
        assert_eq!(r.normalized_at(3), q_poly(&[1]));
        assert_eq!(r.normalized_at(5), q_poly(&[1, 0, 1]));
        assert_eq!(r.normalized_at(7), q_poly(&[1, 0, 1, 0, 2, 0, 1]));
        let r = orientifold_pipeline(&type_b(4), 5).unwrap();
        assert_eq!(r.normalized_at(5), q_poly(&[1, 0, 1, 0, 2, 0, 2, 0, 3, 0, 1]));
        let d3 = LoopDuality::new(1, 0, 3, Some(LieType::D)).unwrap();
        let r = orientifold_pipeline(&d3, 6).unwrap();
        assert_eq!(r.normalized_at(0), q_poly(&[1]));
        assert!(r.normalized_at(2).is_zero());
        assert_eq!(r.normalized_at(4), q_poly(&[1]));
        assert_eq!(r.normalized_at(6), q_poly(&[1, 0, 1, 0, 2, 0, 2, 0, 1]));
        let d4 = LoopDuality::new(1, 0, 4, Some(LieType::D)).unwrap();
        let r = orientifold_pipeline(&d4, 4).unwrap();
        assert_eq!(r.normalized_at(4), q_poly(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn bc_duality_small() {
        let rep = check_bc_duality(3, 2).unwrap();
        assert!(rep.holds(), "{rep:?}");
        assert_eq!(rep.rows[0].left, "1");
        assert_eq!(rep.rows[2].right, "1 + q^2 + 2q^4");
    }

    #[test]
    fn variant_dualities_small() {
        for rep in check_variant_dualities(3, 2, 2).unwrap() {
            assert!(rep.holds(), "{rep:?}");
        }
        assert!(check_variant_dualities(3, 0, 2).is_err());
    }

    #[test]
    fn closed_form_agrees_with_display() {
        for (s, tp, tm, t) in [(1, 0, 3, LieType::B), (-1, 0, 3, LieType::C), (1, 1, 2, LieType::D)] {
            let ld = LoopDuality::new(s, tp, tm, Some(t)).unwrap();
            let a = sigma_loop_series(&ld, 6);
            for e in (0..=6).filter(|e| ld.admits(*e)) {
                assert_eq!(closed_form_from_groups(&ld, e).unwrap(), a.coeff_at(e), "{ld} e={e}");
            }
        }
    }
}
