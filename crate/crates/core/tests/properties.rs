use num_bigint::BigInt;
use num_rational::BigRational;
use odt_core::arith::pochhammer_power;
use odt_core::hn::{enumerate_sigma_hn_types, polygon_leq, Polygon};
use odt_core::quiver::{builtin_a3, builtin_loop, QuiverWithDuality, Stability};
use odt_core::{DimVector, GradedSeries, Grading, LaurentPoly, RationalFunc};
use proptest::prelude::*;

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    (-4i64..4, prop::collection::vec(-3i64..=3, 0..4))
        .prop_map(|(low, cs)| LaurentPoly::from_int_terms(cs.into_iter().enumerate().map(|(j, c)| (low + j as i64, c))))
}

fn nonzero_laurent() -> impl Strategy<Value = LaurentPoly> {
    laurent().prop_filter("nonzero", |p| !p.is_zero())
}

fn ratfunc() -> impl Strategy<Value = RationalFunc> {
    (laurent(), nonzero_laurent()).prop_map(|(n, d)| RationalFunc::new(n, d).expect("nonzero"))
}

// series in one variable with constant term 1 and small rational-function coefficients
fn unit_series(trunc: i64) -> impl Strategy<Value = GradedSeries> {
    prop::collection::vec((laurent(), 0i64..2), trunc as usize).prop_map(move |cs| {
        let mut s = GradedSeries::one(Grading::Integer, trunc);
        for (d, (num, k)) in cs.into_iter().enumerate() {
            let den = LaurentPoly::from_int_terms([(0, 1), (2 * (k + 1), -1)]);
            let c = RationalFunc::new(num, den).expect("nonzero");
            s.set(DimVector::scalar(d as i64 + 1), c).expect("integer grading");
        }
        s
    })
}

fn dims(n: usize, max: i64) -> impl Strategy<Value = DimVector> {
    prop::collection::vec(0..=max, n).prop_map(|v| DimVector::new(v).expect("nonnegative"))
}

fn dualities() -> Vec<QuiverWithDuality> {
    let mut out = vec![builtin_a3()];
    for m in 0..=3 {
        for tp in 0..=m {
            out.push(builtin_loop(m, 1, tp, m - tp).expect("valid"));
            out.push(builtin_loop(m, -1, tp, m - tp).expect("valid"));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ratfunc_ring_axioms(a in ratfunc(), b in ratfunc(), c in ratfunc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in ratfunc()) {
        let again = RationalFunc::new(a.numer().clone(), a.denom().clone()).unwrap();
        prop_assert_eq!(&again, &a);
        prop_assert_eq!(a.invert_variable().invert_variable(), a.clone());
        let q = BigRational::from_integer(BigInt::from(3));
        if let (Some(x), Some(y)) = (a.eval(&(&q * &q)), a.substitute_power(2).unwrap().eval(&q)) {
            prop_assert_eq!(x, y);
        }
    }

    #[test]
    fn log_exp_round_trip(a in unit_series(4)) {
        let l = a.log().unwrap();
        prop_assert!(l.constant_term().is_zero());
        prop_assert_eq!(l.exp().unwrap(), a.clone());
        prop_assert!(a.mul(&a.invert().unwrap()).unwrap().is_one());
    }

    #[test]
    fn adams_is_a_ring_map(a in unit_series(3), b in unit_series(3), n in 1i64..4, m in 1i64..3) {
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.adams(n).unwrap(), a.adams(n).unwrap().mul(&b.adams(n).unwrap()).unwrap());
        prop_assert_eq!(a.adams(n).unwrap().adams(m).unwrap(), a.adams(n * m).unwrap());
        prop_assert!(a.adams(0).is_err());
    }

    #[test]
    fn pochhammer_exponents_add(shift in -3i64..3, d in 1i64..3, e1 in -3i64..4, e2 in -3i64..4, step in 1i64..3) {
        let deg = DimVector::scalar(d);
        let p = |e| pochhammer_power(shift, &deg, Grading::Integer, step, e, 6).unwrap();
        prop_assert_eq!(p(e1).mul(&p(e2)).unwrap(), p(e1 + e2));
        prop_assert!(p(0).is_one());
    }

    #[test]
    fn euler_form_is_bilinear(idx in 0usize..21, a in dims(3, 3), b in dims(3, 3), c in dims(3, 3)) {
        let qd = &dualities()[idx];
        let n = qd.num_nodes();
        let cut = |v: &DimVector| DimVector::new(v.entries()[..n].to_vec()).unwrap();
        let (a, b, c) = (cut(&a), cut(&b), cut(&c));
        let q = qd.quiver();
        prop_assert_eq!(q.euler_form(&a.add(&b), &c), q.euler_form(&a, &c) + q.euler_form(&b, &c));
        prop_assert_eq!(q.euler_form(&c, &a.add(&b)), q.euler_form(&c, &a) + q.euler_form(&c, &b));
    }

    #[test]
    fn sigma_form_refines_euler_form(idx in 0usize..21, a in dims(3, 3), b in dims(3, 3)) {
        let qd = &dualities()[idx];
        let n = qd.num_nodes();
        let cut = |v: &DimVector| DimVector::new(v.entries()[..n].to_vec()).unwrap();
        let (a, b) = (cut(&a), cut(&b));
        let e = |d: &DimVector| qd.sigma_euler_form(d);
        prop_assert_eq!(e(&a.add(&b)) - e(&a) - e(&b), qd.euler_form(&qd.sigma_dim(&a), &b));
        let flipped = qd.with_flipped_partition();
        prop_assert_eq!(flipped.sigma_euler_form(&a), e(&a));
    }

    #[test]
    fn parity_class_ignores_hyperbolic_summands(idx in 0usize..21, d in dims(3, 3), e in dims(3, 4)) {
        let qd = &dualities()[idx];
        let n = qd.num_nodes();
        let d = DimVector::new(d.entries()[..n].to_vec()).unwrap();
        let e = qd.hyperbolic(&DimVector::new(e.entries()[..n].to_vec()).unwrap());
        let shifted = qd.self_dual(qd.hyperbolic(&d).into_dim().add(e.as_dim())).unwrap();
        prop_assert_eq!(qd.nu_class(&shifted), qd.nu_class(&e));
    }
}

#[test]
fn polygon_order_is_a_partial_order() {
    let qd = builtin_a3();
    let theta = Stability(vec![1, 0, -1]);
    for e in DimVector::all_up_to(3, 6) {
        let Ok(e) = qd.self_dual(e) else { continue };
        let types = enumerate_sigma_hn_types(&qd, &theta, &e).unwrap();
        let polys: Vec<Polygon> = types.iter().map(|t| Polygon::of_sigma_type(&qd, &theta, t)).collect();
        for p in &polys {
            assert_eq!(polygon_leq(p, p), Some(true));
            assert!(p.has_reflection_symmetry());
            assert!(p.vertices.windows(2).all(|w| w[0].0 < w[1].0));
            for q in &polys {
                if p != q && polygon_leq(p, q) == Some(true) {
                    assert_eq!(polygon_leq(q, p), Some(false));
                }
                for r in &polys {
                    if polygon_leq(p, q) == Some(true) && polygon_leq(q, r) == Some(true) {
                        assert_eq!(polygon_leq(p, r), Some(true));
                    }
                }
            }
            assert_eq!(polygon_leq(&polys[0], p), Some(true));
        }
    }
}

#[test]
fn nonempty_strata_have_nonnegative_codimension() {
    use odt_core::hn::{codim_sigma, SigmaRecursion};
    let qd = builtin_a3();
    let theta = Stability(vec![1, 0, -1]);
    let mut rec = SigmaRecursion::new(qd.clone(), theta.clone()).unwrap();
    for e in rec.self_dual_vectors(6) {
        for t in enumerate_sigma_hn_types(&qd, &theta, &e).unwrap() {
            assert_eq!(&t.weight(&qd), e.as_dim());
            assert_eq!(qd.nu_class(&qd.self_dual(t.weight(&qd)).unwrap()), qd.nu_class(&e));
            if !rec.stratum(&e, &t).unwrap().is_zero() {
                assert!(codim_sigma(&qd, &t) >= 0, "{t}");
            }
        }
    }
}
