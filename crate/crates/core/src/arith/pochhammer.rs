use num_rational::BigRational;

use super::{ArithError, GradedSeries, Grading, LaurentPoly, RationalFunc};
use crate::dimvec::DimVector;

/// `(v^shift t^deg; q^step)_inf ^ exponent`, truncated at total degree `trunc`.
///
/// The base series come from Euler's identities
/// `1/(x;Q) = sum x^n / prod_{j<=n}(1 - Q^j)` and
/// `(x;Q) = sum (-1)^n Q^{n(n-1)/2} x^n / prod_{j<=n}(1 - Q^j)`.
pub fn pochhammer_power(
    shift: i64,
    deg: &DimVector,
    grading: Grading,
    step: i64,
    exponent: i64,
    trunc: i64,
) -> Result<GradedSeries, ArithError> {
    if deg.is_zero() {
        return Err(ArithError::PochhammerZeroDegree);
    }
    if step != 1 && step != 2 {
        return Err(ArithError::PochhammerStep(step));
    }
    if deg.len() != grading.width() {
        return Err(ArithError::DegreeShape(deg.clone(), grading));
    }
    if exponent == 0 {
        return Ok(GradedSeries::one(grading, trunc));
    }
    let nmax = (trunc / deg.total()).max(0) as usize;
    let base = euler_coefficients(shift, step, exponent > 0, nmax)?;
    let powered = power_of_unit_series(&base, exponent.unsigned_abs());
    GradedSeries::from_coeffs(
        grading,
        trunc,
        powered
            .into_iter()
            .enumerate()
            .map(|(n, c)| (deg.scale(n as i64), c)),
    )
}

// coefficients of x^n, n <= nmax, in (x;Q) (direct) or 1/(x;Q)
fn euler_coefficients(
    shift: i64,
    step: i64,
    direct: bool,
    nmax: usize,
) -> Result<Vec<RationalFunc>, ArithError> {
    let mut out = Vec::with_capacity(nmax + 1);
    let mut den = LaurentPoly::one();
    out.push(RationalFunc::one());
    for n in 1..=nmax as i64 {
        let qj = LaurentPoly::v_pow(2 * step * n);
        den = &den * &(&LaurentPoly::one() - &qj);
        let num = if direct {
            let sign = if n % 2 == 0 { 1 } else { -1 };
            LaurentPoly::from_int_terms([(shift * n + step * n * (n - 1), sign)])
        } else {
            LaurentPoly::v_pow(shift * n)
        };
        out.push(RationalFunc::new(num, den.clone())?);
    }
    Ok(out)
}

/// `A^e` for `A = 1 + a_1 x + ...`, via `n B_n = sum_j ((e+1) j - n) a_j B_{n-j}`.
fn power_of_unit_series(a: &[RationalFunc], e: u64) -> Vec<RationalFunc> {
    if e == 1 {
        return a.to_vec();
    }
    let e = e as i64;
    let mut b = vec![RationalFunc::one()];
    for n in 1..a.len() as i64 {
        let mut acc = RationalFunc::zero();
        for j in 1..=n {
            let aj = &a[j as usize];
            if aj.is_zero() {
                continue;
            }
            let w = (e + 1) * j - n;
            if w == 0 {
                continue;
            }
            let term = (aj * &b[(n - j) as usize]).scale(&BigRational::from_integer(w.into()));
            acc = &acc + &term;
        }
        b.push(acc.scale(&BigRational::new(1.into(), n.into())));
    }
    b
}
