//! Orders of finite classical groups over F_q, as polynomials in `v`
//! (`q = v^2`), and the groupoid counts of nondegenerate forms.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::QuiverError;
use crate::arith::{LaurentPoly, RationalFunc};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    /// `GL_n`.
    GL,
    /// `Sp_n`, `n` even.
    Sp,
    /// Split orthogonal group `O^+_n`, `n` even.
    OEven,
    /// Non-split orthogonal group `O^-_n`, `n` even and positive.
    OEvenMinus,
    /// `O_n`, `n` odd.
    OOdd,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GroupKind::GL => "GL",
            GroupKind::Sp => "Sp",
            GroupKind::OEven => "O+",
            GroupKind::OEvenMinus => "O-",
            GroupKind::OOdd => "O",
        };
        f.write_str(s)
    }
}

fn q_minus_one_pow(k: i64) -> LaurentPoly {
    // q^k - 1
    LaurentPoly::from_int_terms([(2 * k, 1), (0, -1)])
}

fn product<I: IntoIterator<Item = LaurentPoly>>(it: I) -> LaurentPoly {
    it.into_iter().fold(LaurentPoly::one(), |a, b| &a * &b)
}

/// Order of the finite group of the given kind acting on `F_q^n`.
pub fn group_order(kind: GroupKind, n: usize) -> Result<LaurentPoly, QuiverError> {
    let n = n as i64;
    let bad = || QuiverError::InvalidGroup { kind, n: n as usize };
    let poly = match kind {
        GroupKind::GL => product((0..n).map(|j| LaurentPoly::from_int_terms([(2 * n, 1), (2 * j, -1)]))),
        GroupKind::Sp => {
            if n % 2 != 0 {
                return Err(bad());
            }
            let k = n / 2;
            &LaurentPoly::q_pow(k * k) * &product((1..=k).map(|j| q_minus_one_pow(2 * j)))
        }
        GroupKind::OOdd => {
            if n % 2 != 1 {
                return Err(bad());
            }
            let k = n / 2;
            let p = &LaurentPoly::q_pow(k * k) * &product((1..=k).map(|j| q_minus_one_pow(2 * j)));
            &LaurentPoly::from_int(2) * &p
        }
        GroupKind::OEven | GroupKind::OEvenMinus => {
            if n % 2 != 0 {
                return Err(bad());
            }
            let k = n / 2;
            if k == 0 {
                return if kind == GroupKind::OEven {
                    Ok(LaurentPoly::one())
                } else {
                    Err(bad())
                };
            }
            let sign = if kind == GroupKind::OEven { -1 } else { 1 };
            let middle = LaurentPoly::from_int_terms([(2 * k, 1), (0, sign)]);
            let rest = product((1..k).map(|j| q_minus_one_pow(2 * j)));
            &(&LaurentPoly::from_int(2) * &LaurentPoly::q_pow(k * (k - 1))) * &(&middle * &rest)
        }
    };
    Ok(poly)
}

/// `1 / #GL_n(q)`.
pub fn gl_inverse(n: usize) -> RationalFunc {
    let order = group_order(GroupKind::GL, n).expect("GL exists in every size");
    RationalFunc::from_laurent(order).recip().expect("nonzero order")
}

/// Sum of `1/#Aut` over isometry classes of nondegenerate forms of sign `s`
/// (`+1` symmetric, `-1` alternating) on `F_q^n`, `q` odd.
pub fn form_groupoid_count(s: i8, n: usize) -> Result<RationalFunc, QuiverError> {
    let inv = |k: GroupKind| -> Result<RationalFunc, QuiverError> {
        let o = group_order(k, n)?;
        Ok(RationalFunc::from_laurent(o).recip().expect("nonzero order"))
    };
    if s < 0 {
        return inv(GroupKind::Sp);
    }
    if n == 0 {
        return Ok(RationalFunc::one());
    }
    if n % 2 == 1 {
        // two discriminants, isomorphic isometry groups
        Ok(&inv(GroupKind::OOdd)? * &RationalFunc::from_int(2))
    } else {
        Ok(&inv(GroupKind::OEven)? + &inv(GroupKind::OEvenMinus)?)
    }
}
