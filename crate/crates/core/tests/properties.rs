mod common;

use common::{mono, p, r, random_dx_operator, random_operator, random_poly};
use num_traits::{One, Zero};
use opcalc_core::dx::{DxVerdict, FitVerdict, NormalForm, Ordering};
use opcalc_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn operators_are_linear(seed in any::<u64>()) {
        let mut g = rng(seed);
        let q = random_operator(&mut g, 3);
        let (a, b) = (random_poly(&mut g, 6), random_poly(&mut g, 6));
        let (s, t) = (common::random_rational(&mut g), common::random_rational(&mut g));
        let lhs = q.apply(&(&a.scale(&s) + &b.scale(&t)));
        let rhs = q.apply(&a).and_then(|qa| Ok(&qa.scale(&s) + &q.apply(&b)?.scale(&t)));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => prop_assert_eq!(l, r),
            (Err(Error::Truncation { .. }), _) | (_, Err(Error::Truncation { .. })) => {}
            (l, r) => prop_assert!(false, "{:?} / {:?}", l, r),
        }
    }

    #[test]
    fn xd_routes_agree_and_reconstruct(seed in any::<u64>()) {
        let mut g = rng(seed);
        let q = random_operator(&mut g, 3);
        let (Ok(e), Ok(e2)) = (xd_expand(&q, 7), xd_expand_by_division(&q, 7)) else {
            return Ok(());
        };
        prop_assert_eq!(&e, &e2);
        for n in 0..=7 {
            prop_assert_eq!(e.apply_strict(&mono(n)).unwrap(), q.apply(&mono(n)).unwrap());
        }
    }

    #[test]
    fn dx_construct_reproduces_operator(seed in any::<u64>()) {
        let mut g = rng(seed);
        let q = random_dx_operator(&mut g);
        let table = OpTable::new(q.clone());
        let e = dx_construct(&table, -12, 6, 16, 3).unwrap();
        prop_assert!(e.certificate.is_some());
        for n in 0..=e.valid_degree {
            prop_assert_eq!(dx_apply(&e, &mono(n)).unwrap(), q.apply(&mono(n)).unwrap());
        }
        let a = dx_transpose(&e).unwrap();
        for n in 0..=e.valid_degree {
            prop_assert_eq!(dx::transposed_apply(&a, &mono(n)), q.apply(&mono(n)).unwrap());
        }
    }

    #[test]
    fn composed_diagonals_stay_polynomial(seed in any::<u64>()) {
        let mut g = rng(seed);
        let (pq, rq) = (random_dx_operator(&mut g), random_dx_operator(&mut g));
        let rep_p = dx_check(&OpTable::new(pq.clone()), -8, 6, 20, 3).unwrap();
        let rep_r = dx_check(&OpTable::new(rq.clone()), -8, 6, 20, 3).unwrap();
        let composed = dx_check(&OpTable::new(OpExpr::compose(rq, pq)), -8, 8, 20, 3).unwrap();
        prop_assert_eq!(composed.verdict(), DxVerdict::Accepted);
        let bound = rep_p.vanishing_above.unwrap() + rep_r.vanishing_above.unwrap();
        prop_assert!(composed.fits.iter().filter(|f| f.t > bound).all(|f| f.verdict == FitVerdict::Zero));
        for fit in &composed.fits {
            if let FitVerdict::Polynomial(q) = &fit.verdict {
                for (n, s) in fit.samples.iter().enumerate() {
                    prop_assert_eq!(&q.eval(&Rat::from_usize(n)), s);
                }
            }
        }
    }
}

#[test]
fn ordering_soundness() {
    for i in 0..=8 {
        for j in 0..=8 {
            let xd = normal_order_dj_xi::<Rat>(j, i);
            let dx = normal_order_xi_dj::<Rat>(i, j);
            for m in 0..=16 {
                let x = mono(m);
                assert_eq!(xd.apply(&x), x.mul_x_pow(i).nth_derivative(j));
                assert_eq!(dx.apply(&x), x.nth_derivative(j).mul_x_pow(i));
            }
            assert_eq!(
                xd.reorder().collect(),
                NormalForm::<Rat>::word(Ordering::Dx, i, j).collect()
            );
            assert_eq!(
                dx.reorder().collect(),
                NormalForm::<Rat>::word(Ordering::Xd, i, j).collect()
            );
        }
    }
}

#[test]
fn counterexample_is_not_polynomial() {
    let samples: Vec<Rat> = (0..=14).map(counterexample_s).collect();
    for (n, s) in samples.iter().enumerate() {
        assert!(*s >= Rat::factorial(n) * Rat::factorial(n));
    }
    let fit = dx::fit_diagonal(0, samples, 3).unwrap();
    assert!(matches!(fit.verdict, FitVerdict::NotPolynomial { .. }));
}

fn delta_family(order: usize) -> Vec<(&'static str, DeltaOp)> {
    let geometric = SSeries::new(
        (0..=order)
            .map(|k| if k == 0 { Rat::zero() } else { Rat::one() })
            .collect(),
    );
    vec![
        ("D", DeltaOp::d(order)),
        ("Delta", DeltaOp::forward_difference(order)),
        (
            "2D",
            delta_from_series(SSeries::monomial(r(2, 1), 1, order)).unwrap(),
        ),
        ("t/(1-t)", delta_from_series(geometric).unwrap()),
    ]
}

#[test]
fn basis_duality() {
    for (name, op) in delta_family(12) {
        let (div, conj) = sequences(&op, 8).unwrap();
        let basic = div.basic();
        for n in 0..=8 {
            assert_eq!(
                umbral_op_apply(&op, &basic.polys[n]).unwrap(),
                mono(n),
                "{name}: U p_{n}"
            );
            assert_eq!(
                umbral_op_apply(&op, &mono(n)).unwrap(),
                conj.polys[n],
                "{name}: U x^{n}"
            );
        }
    }
}

#[test]
fn rodrigues_equivalence() {
    for (name, op) in delta_family(14) {
        let (div, _) = sequences(&op, 10).unwrap();
        let rod = rodrigues_xd(&op, 9).unwrap();
        let sdx = umbral_shift_dx(&op, 9).unwrap();
        for n in 0..=9 {
            let want = umbral_shift_apply(&op, &div.polys[n]).unwrap();
            assert_eq!(rod.apply(&div.polys[n]).unwrap(), want, "{name}");
            assert_eq!(dx_apply(&sdx, &div.polys[n]).unwrap(), want, "{name}");
        }
    }
}

#[test]
fn umbral_dx_gate() {
    for c in [r(1, 1), r(2, 1), r(1, 2)] {
        let f = SSeries::exp_minus_one(20).scale(&c);
        let op = delta_from_series(f).unwrap();
        let dx = umbral_op_dx(&op, 6);
        assert_eq!(dx.is_ok(), c.is_one());
        let rep = dx_check(&umbral_op_table(&op, 14).unwrap(), -3, 2, 14, 3).unwrap();
        let q0 = rep.fit(0).unwrap();
        for (n, s) in q0.samples.iter().enumerate() {
            assert_eq!(*s, num_traits::pow(c.clone(), n));
        }
        assert_eq!(
            matches!(q0.verdict, FitVerdict::NotPolynomial { .. }),
            !c.is_one()
        );
    }
}

#[test]
fn endomorphisms_with_dx_expansions_are_translations() {
    let check = |q: OpExpr| dx_check(&OpTable::new(q), -6, 4, 14, 3).unwrap().verdict();
    for a in [r(1, 1), r(-2, 1), r(1, 3)] {
        let shift = &Poly::x() + &Poly::constant(a.clone());
        assert_eq!(
            check(OpExpr::Substitute(shift.clone())),
            DxVerdict::Accepted
        );
        let e = endomorphism_xd(&shift, 8);
        for n in 0..=8 {
            assert_eq!(e.apply(&mono(n)).unwrap(), mono(n).shift(&a));
        }
    }
    for q in [p("3x"), p("x^2"), p("-x")] {
        assert!(matches!(
            check(OpExpr::Substitute(q)),
            DxVerdict::Rejected { .. }
        ));
    }
    assert!(matches!(
        check(OpExpr::EvalZero),
        DxVerdict::Rejected { .. }
    ));
}

#[test]
fn umbral_shift_is_conjugated_x() {
    for (name, op) in delta_family(12) {
        if !op.px().is_one() {
            continue;
        }
        let inv = delta_inverse(&op).unwrap();
        for n in 0..=8 {
            let m = mono(n);
            let conj =
                umbral_op_apply(&inv, &umbral_op_apply(&op, &m).unwrap().mul_x_pow(1)).unwrap();
            assert_eq!(conj, umbral_shift_apply(&op, &m).unwrap(), "{name}: x^{n}");
        }
    }
}

#[test]
fn vanishing_tail_of_accepted_operators() {
    let mut g = rng(11);
    for _ in 0..10 {
        let q = random_dx_operator(&mut g);
        let rep = dx_check(&OpTable::new(q), -6, 10, 16, 3).unwrap();
        let v = rep.vanishing_above.unwrap();
        assert!(rep
            .fits
            .iter()
            .filter(|f| f.t > v)
            .all(|f| f.verdict == FitVerdict::Zero));
    }
}
