use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::{self, IntPoly};
use super::ArithError;

/// Laurent polynomial in `v = q^{1/2}` with arbitrary-precision rational
/// coefficients.
///
/// Stored densely from the lowest exponent `low`; the first and last stored
/// coefficients are nonzero, so the representation of every value is unique.
/// The zero polynomial has no coefficients and `low == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(c.into()))
    }

    /// `c * v^exp`.
    pub fn monomial(exp: i64, c: BigRational) -> Self {
        Self::from_dense(exp, vec![c])
    }

    /// `v^exp`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    /// `q^exp = v^{2 exp}`.
    pub fn q_pow(exp: i64) -> Self {
        Self::v_pow(2 * exp)
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - lo) as usize] += c;
        }
        Self::from_dense(lo, coeffs)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        Self::from_terms(
            terms
                .into_iter()
                .map(|(e, c)| (e, BigRational::from_integer(c.into()))),
        )
    }

    pub(crate) fn from_dense(low: i64, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms().count()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `v -> v^n`. Errors for `n <= 0`.
    pub fn substitute_power(&self, n: i64) -> Result<Self, ArithError> {
        if n <= 0 {
            return Err(ArithError::NonPositiveAdams(n));
        }
        Ok(Self::from_terms(
            self.terms().map(|(e, c)| (e * n, c.clone())),
        ))
    }

    /// `v -> v^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (-e, c.clone())))
    }

    /// `v -> -v`.
    pub fn negate_variable(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| {
            if e.is_odd() {
                (e, -c.clone())
            } else {
                (e, c.clone())
            }
        }))
    }

    pub fn eval(&self, v: &BigRational) -> Option<BigRational> {
        if v.is_zero() && self.low < 0 {
            return None;
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        let shift = if self.low >= 0 {
            num_traits::pow(v.clone(), self.low as usize)
        } else {
            num_traits::pow(v.recip(), (-self.low) as usize)
        };
        Some(acc * shift)
    }

    /// Evaluates at `q`, provided every exponent of `v` is even.
    pub fn eval_q(&self, q: &BigRational) -> Option<BigRational> {
        if self.terms().any(|(e, _)| e.is_odd()) {
            return None;
        }
        let as_q = Self::from_terms(self.terms().map(|(e, c)| (e / 2, c.clone())));
        as_q.eval(q)
    }

    pub fn all_integer(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients as `(exp, value)`, if all coefficients are integral.
    pub fn integer_terms(&self) -> Option<Vec<(i64, BigInt)>> {
        self.terms()
            .map(|(e, c)| c.is_integer().then(|| (e, c.to_integer())))
            .collect()
    }

    /// Splits into `(content, v-shift, primitive integer polynomial)` with
    /// `self = content * v^shift * poly(v)`, `poly(0) != 0`, positive leading
    /// coefficient.
    pub(crate) fn to_primitive(&self) -> (BigRational, i64, IntPoly) {
        if self.is_zero() {
            return (BigRational::zero(), 0, Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: IntPoly = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let prim = intpoly::primitive(&ints);
        // ints = k * prim for a rational k computed from the leading terms
        let k = BigRational::new(ints.last().unwrap().clone(), prim.last().unwrap().clone());
        (k / BigRational::from_integer(lcm), self.low, prim)
    }

    pub(crate) fn from_int_poly(content: BigRational, shift: i64, p: &[BigInt]) -> Self {
        Self::from_dense(
            shift,
            p.iter()
                .map(|c| BigRational::from_integer(c.clone()) * &content)
                .collect(),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.low.min(rhs.low);
        let hi = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut coeffs = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - lo) as usize + i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[(rhs.low - lo) as usize + i] += c;
        }
        LaurentPoly::from_dense(lo, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

fn write_coeff_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: &BigRational,
    var: &str,
) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { "-" } else { "+" })?;
    }
    if var.is_empty() {
        write!(f, "{abs}")
    } else if abs.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{abs}{var}")
    }
}

fn power_str(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ if !(0..10).contains(&e) => format!("{var}^{{{e}}}"),
        _ => format!("{var}^{e}"),
    }
}

impl LaurentPoly {
    /// Renders in powers of `q` (half-integral powers as `q^{k/2}`), pulling
    /// out the lowest monomial: `q^{-10}(1 + q^2 + 2q^4)`.
    pub fn to_q_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let fmt_exp = |e: i64| -> String {
            if e % 2 == 0 {
                power_str("q", e / 2)
            } else {
                format!("q^{{{e}/2}}")
            }
        };
        struct Body<'a>(&'a LaurentPoly, i64, &'a dyn Fn(i64) -> String);
        impl fmt::Display for Body<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                for (i, (e, c)) in self.0.terms().enumerate() {
                    write_coeff_term(f, i == 0, c, &(self.2)(e - self.1))?;
                }
                Ok(())
            }
        }
        let low = self.low;
        if self.num_terms() == 1 || low == 0 {
            return Body(self, 0, &fmt_exp).to_string();
        }
        let prefix = fmt_exp(low);
        format!("{prefix}({})", Body(self, low, &fmt_exp))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            write_coeff_term(f, i == 0, c, &power_str("v", e))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trimming_keeps_representation_unique() {
        let a = LaurentPoly::from_int_terms([(-2, 0), (0, 1), (3, 0)]);
        assert_eq!(a, LaurentPoly::one());
        let z = LaurentPoly::from_int_terms([(5, 1), (5, -1)]);
        assert!(z.is_zero());
        assert_eq!(z.min_exp(), None);
    }

    #[test]
    fn adams_operation() {
        let v = LaurentPoly::v_pow(1);
        assert_eq!(v.substitute_power(2).unwrap(), LaurentPoly::q_pow(1));
        assert!(v.substitute_power(0).is_err());
        assert!(v.substitute_power(-1).is_err());
    }

    #[test]
    fn q_rendering() {
        let p = LaurentPoly::from_int_terms([(-20, 1), (-16, 1), (-12, 2)]);
        assert_eq!(p.to_q_string(), "q^{-10}(1 + q^2 + 2q^4)");
        assert_eq!(LaurentPoly::q_pow(-3).to_q_string(), "q^{-3}");
        assert_eq!(LaurentPoly::v_pow(-1).to_q_string(), "q^{-1/2}");
        assert_eq!(LaurentPoly::from_int_terms([(0, 1), (4, -3)]).to_q_string(), "1 - 3q^2");
    }

    #[test]
    fn eval_at_q() {
        let p = LaurentPoly::from_int_terms([(-2, 1), (2, 1)]);
        let three = BigRational::from_integer(3.into());
        assert_eq!(
            p.eval_q(&three).unwrap(),
            BigRational::new(10.into(), 3.into())
        );
        assert!(LaurentPoly::v_pow(1).eval_q(&three).is_none());
    }
}
