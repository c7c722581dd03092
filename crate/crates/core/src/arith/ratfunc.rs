use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::intpoly;
use super::laurent::LaurentPoly;
use super::ArithError;

/// Reduced quotient of Laurent polynomials in `v`.
///
/// Canonical form: the denominator is a primitive integer polynomial with
/// nonzero constant term and positive leading coefficient, and it is coprime
/// to the numerator. All powers of `v` and all rational scalars live in the
/// numerator, so equal functions have equal representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

/// A coefficient that was expected to be a Laurent polynomial but kept a
/// nontrivial denominator after reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotPolynomial {
    pub denominator: LaurentPoly,
}

impl RationalFunc {
    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::from_int(c))
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    // den must be nonzero
    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return Self::from_laurent(num);
        }
        let (cn, sn, pn) = num.to_primitive();
        let (cd, sd, pd) = den.to_primitive();
        let g = intpoly::gcd(&pn, &pd);
        let (pn, pd) = if intpoly::is_constant(&g) {
            (pn, pd)
        } else {
            (
                intpoly::div_exact(&pn, &g).expect("gcd divides numerator"),
                intpoly::div_exact(&pd, &g).expect("gcd divides denominator"),
            )
        };
        debug_assert!(intpoly::is_positive_lead(&pd));
        Self {
            num: LaurentPoly::from_int_poly(cn / cd, sn - sd, &pn),
            den: LaurentPoly::from_int_poly(BigRational::one(), 0, &pd),
        }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The Laurent polynomial, if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    /// Returns the Laurent polynomial this function equals, or the offending
    /// denominator.
    pub fn polynomiality_check(&self) -> Result<LaurentPoly, NotPolynomial> {
        match self.as_laurent() {
            Some(p) => Ok(p.clone()),
            None => Err(NotPolynomial {
                denominator: self.den.clone(),
            }),
        }
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ArithError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            num: self.num.shift(k),
            den: self.den.clone(),
        }
    }

    /// `v -> v^n`, `n >= 1`.
    pub fn substitute_power(&self, n: i64) -> Result<Self, ArithError> {
        // coprimality and the canonical shape of the denominator survive v -> v^n
        Ok(Self {
            num: self.num.substitute_power(n)?,
            den: self.den.substitute_power(n)?,
        })
    }

    /// `v -> v^{-1}`.
    pub fn invert_variable(&self) -> Self {
        Self::reduce(self.num.invert_variable(), self.den.invert_variable())
    }

    /// `v -> -v`.
    pub fn negate_variable(&self) -> Self {
        Self::reduce(self.num.negate_variable(), self.den.negate_variable())
    }

    pub fn pow(&self, n: i64) -> Result<Self, ArithError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn eval(&self, v: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(v)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(v)? / d)
    }

    /// Evaluates at `q = v^2`, provided both parts are polynomials in `q`.
    pub fn eval_q(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval_q(q)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_q(q)? / d)
    }
}

impl From<LaurentPoly> for RationalFunc {
    fn from(p: LaurentPoly) -> Self {
        Self::from_laurent(p)
    }
}

impl Default for RationalFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &RationalFunc {
    type Output = RationalFunc;
    fn add(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let (_, _, da) = self.den.to_primitive();
        let (_, _, db) = rhs.den.to_primitive();
        let g = intpoly::gcd(&da, &db);
        let da_g = intpoly::div_exact(&da, &g).expect("gcd divides");
        let db_g = intpoly::div_exact(&db, &g).expect("gcd divides");
        let one = BigRational::one();
        let da_g = LaurentPoly::from_int_poly(one.clone(), 0, &da_g);
        let db_g = LaurentPoly::from_int_poly(one, 0, &db_g);
        let num = &(&self.num * &db_g) + &(&rhs.num * &da_g);
        RationalFunc::reduce(num, &self.den * &db_g)
    }
}

impl Neg for &RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        RationalFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunc {
    type Output = RationalFunc;
    fn sub(self, rhs: &RationalFunc) -> RationalFunc {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunc {
    type Output = RationalFunc;
    fn mul(self, rhs: &RationalFunc) -> RationalFunc {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunc::from_laurent(&self.num * &rhs.num);
        }
        RationalFunc::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`RationalFunc::checked_div`] otherwise.
impl Div for &RationalFunc {
    type Output = RationalFunc;
    fn div(self, rhs: &RationalFunc) -> RationalFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunc {
            type Output = RationalFunc;
            fn $m(self, rhs: RationalFunc) -> RationalFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunc {
    type Output = RationalFunc;
    fn neg(self) -> RationalFunc {
        -&self
    }
}

impl Zero for RationalFunc {
    fn zero() -> Self {
        RationalFunc::zero()
    }
    fn is_zero(&self) -> bool {
        RationalFunc::is_zero(self)
    }
}

impl One for RationalFunc {
    fn one() -> Self {
        RationalFunc::one()
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(t: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t.iter().copied())
    }

    fn rf(n: &[(i64, i64)], d: &[(i64, i64)]) -> RationalFunc {
        RationalFunc::new(lp(n), lp(d)).unwrap()
    }

    // q = v^2 throughout
    #[test]
    fn telescoping_sum() {
        let a = rf(&[(0, 1)], &[(0, 1), (2, -1)]);
        let b = rf(&[(2, -1)], &[(0, 1), (2, -1)]);
        assert!((&a + &b).is_one());
    }

    #[test]
    fn exact_cancellation_in_difference() {
        // q^{-3}/(1-q^2) - q^{-1}/(1-q^2) = q^{-3}
        let a = rf(&[(-6, 1)], &[(0, 1), (4, -1)]);
        let b = rf(&[(-2, 1)], &[(0, 1), (4, -1)]);
        let d = &a - &b;
        assert_eq!(d.as_laurent(), Some(&LaurentPoly::q_pow(-3)));
    }

    #[test]
    fn factor_cancellation() {
        // (1 - q^2)/(1 - q) = 1 + q
        let r = rf(&[(0, 1), (4, -1)], &[(0, 1), (2, -1)]);
        assert_eq!(r.as_laurent(), Some(&lp(&[(0, 1), (2, 1)])));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let a = RationalFunc::one();
        assert_eq!(
            a.checked_div(&RationalFunc::zero()),
            Err(ArithError::DivisionByZero)
        );
        assert!(RationalFunc::new(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn canonical_denominator_shape() {
        // 2/( -4 v^3 + 6 v^5 ) -> num carries v^{-3} and the scalar
        let r = rf(&[(0, 2)], &[(3, -4), (5, 6)]);
        let den = r.denom();
        assert_eq!(den.min_exp(), Some(0));
        assert!(den.leading_coeff().unwrap() > &BigRational::zero());
        assert_eq!(den, &lp(&[(0, -2), (2, 3)]));
        assert_eq!(r.numer(), &lp(&[(-3, 1)]));
    }

    #[test]
    fn polynomiality_report() {
        let r = rf(&[(0, 1)], &[(0, 1), (2, -1)]);
        let err = r.polynomiality_check().unwrap_err();
        // canonical form of 1 - q has positive leading coefficient
        assert_eq!(err.denominator, lp(&[(0, -1), (2, 1)]));
        let ok = rf(&[(0, 1), (4, -1)], &[(0, 1), (2, -1)]);
        assert_eq!(ok.polynomiality_check().unwrap(), lp(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn adams_on_geometric_factor() {
        let r = rf(&[(0, 1)], &[(0, 1), (2, -1)]);
        let r2 = r.substitute_power(2).unwrap();
        assert_eq!(r2, rf(&[(0, 1)], &[(0, 1), (4, -1)]));
    }
}
