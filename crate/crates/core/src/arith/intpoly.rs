//! Dense univariate polynomials over `BigInt`, ascending coefficient order.
//!
//! These are the workhorse for reducing rational functions: every denominator
//! is kept as a primitive integer polynomial, and reduction needs a fast gcd.
//! The zero polynomial is the empty vector; otherwise the last entry is nonzero.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) type IntPoly = Vec<BigInt>;

pub(crate) fn trim(p: &mut IntPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn is_constant(p: &[BigInt]) -> bool {
    p.len() <= 1
}

pub(crate) fn content(p: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in p {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive(p: &[BigInt]) -> IntPoly {
    if p.is_empty() {
        return Vec::new();
    }
    let mut c = content(p);
    if p.last().unwrap().is_negative() {
        c = -c;
    }
    if c.is_one() {
        return p.to_vec();
    }
    p.iter().map(|x| x / &c).collect()
}

#[cfg(test)]
pub(crate) fn mul(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

fn max_norm(p: &[BigInt]) -> BigInt {
    p.iter().map(|c| c.abs()).max().unwrap_or_default()
}

/// Exact division over Z. `None` if `b` does not divide `a` in Z[v].
pub(crate) fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<IntPoly> {
    assert!(!b.is_empty(), "division by the zero polynomial");
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let lead = b.last().unwrap();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + b.len() - 1];
        if top.is_zero() {
            continue;
        }
        let (q, r) = top.div_rem(lead);
        if !r.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &q * bj;
        }
        quot[k] = q;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut quot);
    Some(quot)
}

fn eval(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Balanced x-adic expansion of an integer back into a polynomial.
fn interpolate(mut h: BigInt, x: &BigInt) -> IntPoly {
    let half = x / 2;
    let mut out = Vec::new();
    while !h.is_zero() {
        let mut c = h.mod_floor(x);
        if c > half {
            c -= x;
        }
        h = (h - &c) / x;
        out.push(c);
    }
    out
}

// Heuristic gcd (Char, Geddes, Gonnet). Inputs are primitive and nonzero.
fn heuristic_gcd(f: &[BigInt], g: &[BigInt]) -> Option<IntPoly> {
    let fn_ = max_norm(f);
    let gn = max_norm(g);
    let b: BigInt = BigInt::from(2) * (&fn_).min(&gn) + 29;
    let lc_bound = {
        let a = &fn_ / f.last().unwrap().abs();
        let c = &gn / g.last().unwrap().abs();
        BigInt::from(2) * a.min(c) + 2
    };
    let mut x = b.max(lc_bound);
    for _ in 0..6 {
        let ff = eval(f, &x);
        let gg = eval(g, &x);
        if !ff.is_zero() && !gg.is_zero() {
            let h = ff.gcd(&gg);
            let cand = primitive(&interpolate(h, &x));
            if !cand.is_empty() && div_exact(f, &cand).is_some() && div_exact(g, &cand).is_some() {
                return Some(cand);
            }
        }
        x = &x * 73794 / 27011 + 1;
    }
    None
}

fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut r = a.to_vec();
    let lead = b.last().unwrap();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let top = r.last().unwrap().clone();
        for c in r.iter_mut() {
            *c *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        trim(&mut r);
    }
    r
}

fn prs_gcd(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = if f.len() >= g.len() {
        (f.to_vec(), g.to_vec())
    } else {
        (g.to_vec(), f.to_vec())
    };
    while !b.is_empty() {
        let r = primitive(&pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    primitive(&a)
}

/// Primitive gcd with positive leading coefficient. Contents are ignored.
pub(crate) fn gcd(f: &[BigInt], g: &[BigInt]) -> IntPoly {
    if f.is_empty() {
        return primitive(g);
    }
    if g.is_empty() {
        return primitive(f);
    }
    if is_constant(f) || is_constant(g) {
        return vec![BigInt::one()];
    }
    let f = primitive(f);
    let g = primitive(g);
    if f == g {
        return f;
    }
    heuristic_gcd(&f, &g).unwrap_or_else(|| prs_gcd(&f, &g))
}

pub(crate) fn is_positive_lead(p: &[BigInt]) -> bool {
    p.last().is_some_and(|c| c.sign() == Sign::Plus)
}
