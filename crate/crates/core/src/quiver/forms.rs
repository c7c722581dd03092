use super::groups::{form_groupoid_count, gl_inverse};
use super::{ParityClass, Part, Quiver, QuiverError, QuiverWithDuality, SelfDualDimVector};
use crate::arith::{LaurentPoly, RationalFunc};
use crate::dimvec::DimVector;

impl Quiver {
    /// `chi(d, d') = sum_i d_i d'_i - sum_{a: i -> j} d_i d'_j`.
    pub fn euler_form(&self, d: &DimVector, d2: &DimVector) -> i64 {
        let diag: i64 = d.entries().iter().zip(d2.entries()).map(|(a, b)| a * b).sum();
        let off: i64 = self.arrows.iter().map(|a| d.get(a.src) * d2.get(a.tgt)).sum();
        diag - off
    }

    /// `dim R_d = sum_{a: i -> j} d_i d_j`.
    pub fn dim_rep_space(&self, d: &DimVector) -> i64 {
        self.arrows.iter().map(|a| d.get(a.src) * d.get(a.tgt)).sum()
    }

    /// Stacky point count `q^{dim R_d} / #GL_d(q)`.
    pub fn stacky_count(&self, d: &DimVector) -> RationalFunc {
        let mut acc = RationalFunc::from_laurent(LaurentPoly::q_pow(self.dim_rep_space(d)));
        for &x in d.entries() {
            acc = &acc * &gl_inverse(x as usize);
        }
        acc
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.num_nodes();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let (a, b) = (DimVector::unit(n, i), DimVector::unit(n, j));
                self.euler_form(&a, &b) == self.euler_form(&b, &a)
            })
        })
    }
}

impl QuiverWithDuality {
    /// `(sigma d)_i = d_{sigma(i)}`.
    pub fn sigma_dim(&self, d: &DimVector) -> DimVector {
        DimVector::new((0..d.len()).map(|i| d.get(self.sigma_node(i))).collect())
            .expect("permutation keeps entries nonnegative")
    }

    pub fn euler_form(&self, d: &DimVector, d2: &DimVector) -> i64 {
        self.quiver().euler_form(d, d2)
    }

    /// The self-dual Euler form.
    ///
    /// For a fixed arrow `i -> sigma(i)` the quadratic term uses the target
    /// dimension.
    pub fn sigma_euler_form(&self, d: &DimVector) -> i64 {
        let mut twice = 0i64;
        for i in 0..self.num_nodes() {
            match self.node_part(i) {
                Part::Fixed => twice += d.get(i) * (d.get(i) - self.s(i) as i64),
                Part::Plus => twice += 2 * d.get(self.sigma_node(i)) * d.get(i),
                Part::Minus => {}
            }
        }
        for (k, a) in self.quiver().arrows().iter().enumerate() {
            match self.arrow_part(k) {
                Part::Fixed => {
                    let x = d.get(a.tgt);
                    twice -= x * (x + (self.tau(k) * self.s(a.tgt)) as i64);
                }
                Part::Plus => twice -= 2 * d.get(self.sigma_node(a.src)) * d.get(a.tgt),
                Part::Minus => {}
            }
        }
        debug_assert_eq!(twice % 2, 0);
        twice / 2
    }

    /// `gamma(d, e) = chi(d,e) - chi(e,d) + E(sigma d) - E(d)`.
    pub fn gamma_form(&self, d: &DimVector, e: &SelfDualDimVector) -> i64 {
        let e = e.as_dim();
        self.euler_form(d, e) - self.euler_form(e, d) + self.sigma_euler_form(&self.sigma_dim(d))
            - self.sigma_euler_form(d)
    }

    /// `H(d) = d + sigma(d)`.
    pub fn hyperbolic(&self, d: &DimVector) -> SelfDualDimVector {
        SelfDualDimVector(d.add(&self.sigma_dim(d)))
    }

    pub fn nu_class(&self, e: &SelfDualDimVector) -> ParityClass {
        let nodes = self.nodes_in(Part::Fixed);
        let w = nodes.iter().map(|&i| (e.as_dim().get(i) % 2) as u8).collect();
        ParityClass { nodes, w }
    }

    /// `dim R^sigma_e`: one block per plus arrow, and symmetric or skew
    /// forms for each fixed arrow according to `s tau`.
    pub fn dim_sd_rep_space(&self, e: &SelfDualDimVector) -> i64 {
        let e = e.as_dim();
        let mut out = 0;
        for (k, a) in self.quiver().arrows().iter().enumerate() {
            match self.arrow_part(k) {
                Part::Plus => out += e.get(a.src) * e.get(a.tgt),
                Part::Fixed => {
                    let n = e.get(a.src);
                    out += if self.s(a.src) * self.tau(k) == 1 {
                        n * (n + 1) / 2
                    } else {
                        n * (n - 1) / 2
                    };
                }
                Part::Minus => {}
            }
        }
        out
    }

    /// `chi` symmetric and `E` sigma-invariant, tested on unit vectors and
    /// their pairwise sums (which span the quadratic data).
    pub fn is_sigma_symmetric(&self) -> bool {
        let n = self.num_nodes();
        if !self.quiver().is_symmetric() {
            return false;
        }
        (0..n).all(|i| {
            (i..n).all(|j| {
                let d = DimVector::unit(n, i).add(&DimVector::unit(n, j));
                let u = DimVector::unit(n, i);
                self.sigma_euler_form(&self.sigma_dim(&d)) == self.sigma_euler_form(&d)
                    && self.sigma_euler_form(&self.sigma_dim(&u)) == self.sigma_euler_form(&u)
            })
        })
    }

    /// Stacky point count of `[R^sigma_e / G^sigma_e]`, summing over
    /// isometry classes of forms at the fixed nodes.
    pub fn sigma_stacky_count(&self, e: &SelfDualDimVector) -> Result<RationalFunc, QuiverError> {
        let mut acc = RationalFunc::from_laurent(LaurentPoly::q_pow(self.dim_sd_rep_space(e)));
        for i in 0..self.num_nodes() {
            let n = e.as_dim().get(i) as usize;
            match self.node_part(i) {
                Part::Plus => acc = &acc * &gl_inverse(n),
                Part::Fixed => acc = &acc * &form_groupoid_count(self.s(i), n)?,
                Part::Minus => {}
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::{builtin_loop, Stability};
    use crate::quiver::builtin_a3 as a3;

    fn dv(v: &[i64]) -> DimVector {
        DimVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn loop_euler_form() {
        let q = Quiver::loop_quiver(3);
        assert_eq!(q.euler_form(&dv(&[1]), &dv(&[1])), -2);
        assert_eq!(q.euler_form(&dv(&[0]), &dv(&[4])), 0);
        assert_eq!(q.dim_rep_space(&dv(&[0])), 0);
    }

    #[test]
    fn a3_values() {
        let qd = a3();
        assert_eq!(qd.euler_form(&dv(&[1, 1, 0]), &dv(&[0, 1, 1])), -1);
        assert_eq!(qd.sigma_euler_form(&dv(&[0, 1, 1])), -1);
        let e = qd.self_dual(dv(&[0, 2, 0])).unwrap();
        assert_eq!(qd.gamma_form(&dv(&[1, 0, 0]), &e), -2);
        assert_eq!(qd.hyperbolic(&dv(&[1, 0, 0])).as_dim(), &dv(&[1, 0, 1]));
        let e = qd.self_dual(dv(&[1, 2, 1])).unwrap();
        assert_eq!(qd.nu_class(&e).w, vec![0]);
        assert_eq!(qd.dim_sd_rep_space(&e), 2);
        let theta = Stability(vec![1, 0, -1]);
        assert_eq!(theta.slope(&dv(&[1, 1, 0])).unwrap(), num_rational::Ratio::new(1, 2));
        assert!(theta.slope(&dv(&[0, 0, 0])).is_err());
        assert!(qd.self_dual(dv(&[1, 2, 0])).is_err());
    }

    #[test]
    fn loop_type_b_values() {
        let qd = builtin_loop(3, 1, 0, 3).unwrap();
        assert_eq!(qd.sigma_euler_form(&dv(&[3])), -6);
        assert_eq!(qd.sigma_euler_form(&dv(&[0])), 0);
        let e = qd.self_dual(dv(&[3])).unwrap();
        assert_eq!(qd.dim_sd_rep_space(&e), 9);
        assert!(qd.is_sigma_symmetric());
        let e = qd.self_dual(dv(&[2])).unwrap();
        assert_eq!(qd.gamma_form(&dv(&[1]), &e), 0);
    }

    #[test]
    fn symplectic_evenness() {
        let qd = builtin_loop(2, -1, 1, 1).unwrap();
        assert!(qd.self_dual(dv(&[3])).is_err());
        assert!(qd.self_dual(dv(&[4])).is_ok());
    }

    #[test]
    fn a3_is_not_sigma_symmetric() {
        assert!(!a3().is_sigma_symmetric());
    }
}
