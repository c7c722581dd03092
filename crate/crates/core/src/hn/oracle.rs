//! Exhaustive (semi)stable point counts over `F_p`.
//!
//! Representations are stored as one block per arrow inside `V = ⊕ V_i`;
//! subrepresentations and isotropy are tested on every graded subspace
//! whose dimension vector could destabilize.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rayon::prelude::*;
use thiserror::Error;

use super::ff::{self, Mat};
use crate::dimvec::DimVector;
use crate::quiver::{Part, Quiver, QuiverError, QuiverWithDuality, SelfDualDimVector, Stability};

/// Upper bound on the number of enumerated points.
pub const MAX_POINTS: u64 = 2_000_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("p = {0} must be an odd prime")]
    BadPrime(u64),
    #[error("{points} points exceed the enumeration bound {MAX_POINTS}")]
    Infeasible { points: u128 },
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

fn check_prime(p: u64) -> Result<(), OracleError> {
    if p < 3 || p.is_multiple_of(2) || (3..p).take_while(|k| k * k <= p).any(|k| p.is_multiple_of(k)) {
        return Err(OracleError::BadPrime(p));
    }
    Ok(())
}

fn point_count(p: u64, dim: usize) -> Result<u64, OracleError> {
    let points = (p as u128).pow(dim as u32);
    if points > MAX_POINTS as u128 {
        return Err(OracleError::Infeasible { points });
    }
    Ok(points as u64)
}

struct Layout {
    dims: Vec<usize>,
    off: Vec<usize>,
    n: usize,
    arrows: Vec<(usize, usize)>,
    var_off: Vec<usize>,
    nvars: usize,
}

impl Layout {
    fn new(q: &Quiver, d: &DimVector) -> Self {
        let dims: Vec<usize> = d.entries().iter().map(|&x| x as usize).collect();
        let mut off = Vec::with_capacity(dims.len());
        let mut n = 0;
        for &x in &dims {
            off.push(n);
            n += x;
        }
        let arrows: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.src, a.tgt)).collect();
        let mut var_off = Vec::with_capacity(arrows.len());
        let mut nvars = 0;
        for &(s, t) in &arrows {
            var_off.push(nvars);
            nvars += dims[s] * dims[t];
        }
        Self {
            dims,
            off,
            n,
            arrows,
            var_off,
            nvars,
        }
    }

    // variable index of entry (r, c) of the block of arrow a (r in tgt, c in src)
    fn var(&self, a: usize, r: usize, c: usize) -> usize {
        self.var_off[a] + r * self.dims[self.arrows[a].0] + c
    }

    /// `M_a u` for `u` in `V`, read from the flat variable vector.
    fn act(&self, vars: &[u64], a: usize, u: &[u64], p: u64) -> Vec<u64> {
        let (s, t) = self.arrows[a];
        let mut out = vec![0; self.n];
        for r in 0..self.dims[t] {
            let mut acc = 0;
            for c in 0..self.dims[s] {
                acc += vars[self.var(a, r, c)] * u[self.off[s] + c] % p;
            }
            out[self.off[t] + r] = acc % p;
        }
        out
    }

    fn node_of(&self, col: usize) -> usize {
        (0..self.dims.len())
            .rev()
            .find(|&i| self.off[i] <= col && self.dims[i] > 0)
            .expect("column inside V")
    }
}

/// A graded subspace with its reduced basis embedded in `V`.
struct Graded {
    rows: Mat,
    pivots: Vec<usize>,
}

fn graded_subspaces(layout: &Layout, f: &DimVector, p: u64) -> Vec<Graded> {
    let mut acc: Vec<Mat> = vec![Vec::new()];
    for (i, &di) in layout.dims.iter().enumerate() {
        let local = ff::subspaces(di, f.get(i) as usize, p);
        let mut next = Vec::with_capacity(acc.len() * local.len());
        for rows in &acc {
            for sub in &local {
                let mut r = rows.clone();
                for row in sub {
                    let mut v = vec![0; layout.n];
                    v[layout.off[i]..layout.off[i] + di].copy_from_slice(row);
                    r.push(v);
                }
                next.push(r);
            }
        }
        acc = next;
    }
    acc.into_iter()
        .map(|rows| {
            let pivots = rows
                .iter()
                .map(|r| r.iter().position(|&x| x != 0).expect("basis row"))
                .collect();
            Graded { rows, pivots }
        })
        .collect()
}

fn is_subrep(layout: &Layout, vars: &[u64], u: &Graded, p: u64) -> bool {
    u.rows.iter().zip(&u.pivots).all(|(row, &pc)| {
        let node = layout.node_of(pc);
        layout
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, &(s, _))| s == node)
            .all(|(a, _)| ff::in_span(&u.rows, &u.pivots, &layout.act(vars, a, row, p), p))
    })
}

fn count_points<F>(p: u64, basis: &[Vec<u64>], nvars: usize, keep: F) -> Result<u64, OracleError>
where
    F: Fn(&[u64]) -> bool + Sync,
{
    let total = point_count(p, basis.len())?;
    Ok((0..total)
        .into_par_iter()
        .filter(|&idx| {
            let coords = ff::digits(idx, p, basis.len());
            let mut vars = vec![0; nvars];
            for (c, b) in coords.iter().zip(basis) {
                if *c != 0 {
                    for (x, y) in vars.iter_mut().zip(b) {
                        *x = (*x + c * y) % p;
                    }
                }
            }
            keep(&vars)
        })
        .count() as u64)
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `#{semistable points of R_d(F_p)} / #GL_d(F_p)`.
pub fn ordinary_oracle(p: u64, q: &Quiver, theta: &Stability, d: &DimVector) -> Result<BigRational, OracleError> {
    check_prime(p)?;
    q.check_len(d)?;
    let layout = Layout::new(q, d);
    let mu = if d.is_zero() { Ratio::from_integer(0) } else { theta.slope(d)? };
    let candidates: Vec<Graded> = if theta.is_trivial() {
        Vec::new()
    } else {
        d.sub_vectors()
            .into_iter()
            .filter(|f| !f.is_zero() && theta.slope(f).is_ok_and(|m| m > mu))
            .flat_map(|f| graded_subspaces(&layout, &f, p))
            .collect()
    };
    let basis: Vec<Vec<u64>> = (0..layout.nvars)
        .map(|k| (0..layout.nvars).map(|j| u64::from(j == k)).collect())
        .collect();
    let count = count_points(p, &basis, layout.nvars, |vars| {
        !candidates.iter().any(|u| is_subrep(&layout, vars, u, p))
    })?;
    let group: u64 = layout.dims.iter().map(|&n| ff::count_gl(n, p)).product();
    Ok(ratio(count, group))
}

// isometry classes of nondegenerate forms of sign s on F_p^n
fn form_classes(s: i8, n: usize, p: u64) -> Vec<Mat> {
    let mut base = vec![vec![0u64; n]; n];
    if s < 0 {
        for k in (0..n).step_by(2) {
            base[k][k + 1] = 1;
            base[k + 1][k] = p - 1;
        }
        return vec![base];
    }
    for k in 0..n {
        base[k][k] = 1;
    }
    if n == 0 {
        return vec![base];
    }
    let mut twisted = base.clone();
    twisted[n - 1][n - 1] = ff::nonsquare(p);
    vec![base, twisted]
}

fn sign_mod(x: i8, p: u64) -> u64 {
    if x > 0 {
        1
    } else {
        p - 1
    }
}

/// Sum over isometry classes of the forms at fixed nodes of
/// `#{sigma-semistable points of R^sigma_e(F_p)} / #G^sigma_e(F_p)`.
pub fn sigma_oracle(
    p: u64,
    qd: &QuiverWithDuality,
    theta: &Stability,
    e: &SelfDualDimVector,
) -> Result<BigRational, OracleError> {
    check_prime(p)?;
    theta.check_compatible(qd)?;
    let layout = Layout::new(qd.quiver(), e.as_dim());
    let fixed = qd.nodes_in(Part::Fixed);
    let choices: Vec<Vec<Mat>> = fixed
        .iter()
        .map(|&i| form_classes(qd.s(i), layout.dims[i], p))
        .collect();
    let candidates_dims: Vec<DimVector> = if theta.is_trivial() {
        Vec::new()
    } else {
        e.as_dim()
            .sub_vectors()
            .into_iter()
            .filter(|f| !f.is_zero() && theta.theta(f) > 0)
            .collect()
    };
    let mut total = BigRational::from_integer(0.into());
    let ncombos: usize = choices.iter().map(Vec::len).product();
    for combo in 0..ncombos {
        let mut rest = combo;
        let mut g = vec![vec![0u64; layout.n]; layout.n];
        let mut group = 1u64;
        for (k, &i) in fixed.iter().enumerate() {
            let form = &choices[k][rest % choices[k].len()];
            rest /= choices[k].len();
            for r in 0..layout.dims[i] {
                for c in 0..layout.dims[i] {
                    g[layout.off[i] + r][layout.off[i] + c] = form[r][c];
                }
            }
            group *= ff::count_isometries(form, p);
        }
        for i in qd.nodes_in(Part::Plus) {
            let j = qd.sigma_node(i);
            for a in 0..layout.dims[i] {
                g[layout.off[i] + a][layout.off[j] + a] = 1;
                g[layout.off[j] + a][layout.off[i] + a] = sign_mod(qd.s(i), p);
            }
            group *= ff::count_gl(layout.dims[i], p);
        }
        let basis = self_dual_maps(&layout, qd, &g, p);
        let candidates: Vec<Graded> = candidates_dims
            .iter()
            .flat_map(|f| graded_subspaces(&layout, f, p))
            .filter(|u| {
                u.rows
                    .iter()
                    .all(|a| u.rows.iter().all(|b| ff::pairing(a, &g, b, p) == 0))
            })
            .collect();
        let count = count_points(p, &basis, layout.nvars, |vars| {
            !candidates.iter().any(|u| is_subrep(&layout, vars, u, p))
        })?;
        total += ratio(count, group);
    }
    Ok(total)
}

// kernel of M_a^T G_{j,sj} - tau_a G_{i,si} M_{sigma a} over all arrows a: i -> j
fn self_dual_maps(layout: &Layout, qd: &QuiverWithDuality, g: &Mat, p: u64) -> Vec<Vec<u64>> {
    let mut eqs: Mat = Vec::new();
    for (a, &(i, j)) in layout.arrows.iter().enumerate() {
        let sa = qd.sigma_arrow(a);
        let (si, sj) = (qd.sigma_node(i), qd.sigma_node(j));
        let tau = sign_mod(qd.tau(a), p);
        for r in 0..layout.dims[i] {
            for c in 0..layout.dims[sj] {
                let mut row = vec![0u64; layout.nvars];
                for k in 0..layout.dims[j] {
                    let gkc = g[layout.off[j] + k][layout.off[sj] + c];
                    if gkc != 0 {
                        let v = layout.var(a, k, r);
                        row[v] = (row[v] + gkc) % p;
                    }
                }
                for k in 0..layout.dims[si] {
                    let grk = g[layout.off[i] + r][layout.off[si] + k];
                    if grk != 0 {
                        let v = layout.var(sa, k, c);
                        row[v] = (row[v] + (p - tau * grk % p)) % p;
                    }
                }
                eqs.push(row);
            }
        }
    }
    if eqs.is_empty() {
        return (0..layout.nvars)
            .map(|k| (0..layout.nvars).map(|j| u64::from(j == k)).collect())
            .collect();
    }
    ff::kernel(&eqs, layout.nvars, p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{builtin_a2, builtin_a3, builtin_loop};

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn a2_small_count() {
        let q = builtin_a2();
        let r = ordinary_oracle(3, q.quiver(), &Stability(vec![1, -1]), &dv(&[1, 1])).unwrap();
        assert_eq!(r, ratio(2, 4));
    }

    #[test]
    fn trivial_stability_counts_everything() {
        let q = Quiver::loop_quiver(2);
        let d = dv(&[2]);
        let r = ordinary_oracle(3, &q, &Stability::trivial(1), &d).unwrap();
        assert_eq!(r, q.stacky_count(&d).eval_q(&BigRational::from_integer(3.into())).unwrap());
    }

    #[test]
    fn self_dual_space_dimensions() {
        for (qd, e) in [
            (builtin_a3(), dv(&[1, 2, 1])),
            (builtin_loop(2, 1, 1, 1).unwrap(), dv(&[3])),
            (builtin_loop(2, -1, 2, 0).unwrap(), dv(&[2])),
        ] {
            let e = qd.self_dual(e).unwrap();
            let layout = Layout::new(qd.quiver(), e.as_dim());
            for &i in &qd.nodes_in(Part::Fixed) {
                for form in form_classes(qd.s(i), layout.dims[i], 3) {
                    let mut g = vec![vec![0u64; layout.n]; layout.n];
                    for r in 0..layout.dims[i] {
                        for c in 0..layout.dims[i] {
                            g[layout.off[i] + r][layout.off[i] + c] = form[r][c];
                        }
                    }
                    let basis = self_dual_maps(&layout, &qd, &g, 3);
                    assert_eq!(basis.len() as i64, qd.dim_sd_rep_space(&e));
                }
            }
        }
    }

    #[test]
    fn sigma_trivial_matches_group_counts() {
        let qd = builtin_loop(1, 1, 0, 1).unwrap();
        for n in 0..=3 {
            let e = qd.self_dual(dv(&[n])).unwrap();
            let r = sigma_oracle(3, &qd, &Stability::trivial(1), &e).unwrap();
            let expected = qd.sigma_stacky_count(&e).unwrap();
            assert_eq!(r, expected.eval_q(&BigRational::from_integer(3.into())).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn rejects_bad_primes() {
        let q = Quiver::loop_quiver(1);
        assert!(matches!(
            ordinary_oracle(4, &q, &Stability::trivial(1), &dv(&[1])),
            Err(OracleError::BadPrime(4))
        ));
        assert!(ordinary_oracle(2, &q, &Stability::trivial(1), &dv(&[1])).is_err());
        let big = Quiver::loop_quiver(3);
        assert!(matches!(
            ordinary_oracle(5, &big, &Stability::trivial(1), &dv(&[3])),
            Err(OracleError::Infeasible { .. })
        ));
    }
}
