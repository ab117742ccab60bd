use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use ramanujan_core::ball::{certified_less, Ball, Certified};
use ramanujan_core::exact::{certify_positive_on, rat, Anchor, Interval, Polynomial, Strategy as Cert};
use ramanujan_core::series::{check_bound_at, BoundCheck, BoundTag};

fn q() -> impl Strategy<Value = BigRational> {
    (-50i64..50, 1i64..30).prop_map(|(a, b)| rat(a, b))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(q(), 0..7).prop_map(Polynomial::new)
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn eval_is_a_homomorphism(a in poly(), b in poly(), x in q()) {
        prop_assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        prop_assert_eq!((&a + &b).eval(&x), a.eval(&x) + b.eval(&x));
        prop_assert_eq!(a.compose(&b).eval(&x), a.eval(&b.eval(&x)));
    }

    #[test]
    fn companion_is_below(p in poly(), x in (0i64..40, 1i64..8).prop_map(|(a, b)| rat(a, b))) {
        for anchor in [Anchor::ConstantTerm, Anchor::LeadingTerm] {
            if let Ok(c) = p.companion(anchor) {
                prop_assert!(c.eval(&x) <= p.eval(&x));
            }
        }
    }

    #[test]
    fn certificates_agree_with_sturm(p in poly(), hi in (1i64..20, 1i64..10).prop_map(|(a, b)| rat(a, b))) {
        let iv = Interval::left_open(BigRational::zero(), hi);
        for strategy in [Cert::Companion, Cert::Roots] {
            if let Ok(c) = certify_positive_on(&p, &iv, strategy) {
                prop_assert!(c.replay().is_ok());
                prop_assert!(c.sturm_agrees());
            }
        }
    }

    #[test]
    fn ball_ops_contain_exact(a in q(), b in q(), prec in 8u32..200) {
        let (x, y) = (Ball::from_rational(&a, prec), Ball::from_rational(&b, prec));
        prop_assert!(x.contains_rational(&a));
        prop_assert!((&x + &y).contains_rational(&(&a + &b)));
        prop_assert!((&x - &y).contains_rational(&(&a - &b)));
        prop_assert!((&x * &y).contains_rational(&(&a * &b)));
        if !b.is_zero() {
            prop_assert!(x.try_div(&y).unwrap().contains_rational(&(&a / &b)));
        }
    }

    #[test]
    fn elementary_balls_nest(a in (-300i64..300).prop_map(|k| rat(k, 100))) {
        let lo = Ball::from_rational(&a, 40).exp().unwrap();
        let hi = Ball::from_rational(&a, 300).exp().unwrap();
        prop_assert!(lo.overlaps(&hi));
        if a > BigRational::zero() {
            let l1 = Ball::from_rational(&a, 40).ln().unwrap();
            let l2 = Ball::from_rational(&a, 300).ln().unwrap();
            prop_assert!(l1.overlaps(&l2));
        }
    }

    #[test]
    fn certified_less_is_antisymmetric(a in q(), b in q(), prec in 8u32..100) {
        let (x, y) = (Ball::from_rational(&a, prec), Ball::from_rational(&b, prec));
        let (xy, yx) = (certified_less(&x, &y), certified_less(&y, &x));
        prop_assert!(!(xy == Certified::True && yx == Certified::True));
        if xy == Certified::True {
            prop_assert!(a < b);
        }
    }
}

fn sample(tag: BoundTag, lo: i64, hi: i64) -> impl Strategy<Value = (BoundTag, BigRational)> {
    (lo * 1000..=hi * 1000).prop_map(move |k| (tag, rat(k, 1000)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ln_upper_deg5_holds((tag, x) in sample(BoundTag::LnUpperDeg5, -1, 1).prop_filter("open", |(_, x)| *x > rat(-1, 1))) {
        prop_assert_ne!(check_bound_at(tag, &x, 128).unwrap(), BoundCheck::Fails);
    }

    #[test]
    fn ln_upper_deg7_holds((tag, x) in sample(BoundTag::LnUpperDeg7, -1, 1).prop_filter("open", |(_, x)| *x > rat(-1, 1))) {
        prop_assert_ne!(check_bound_at(tag, &x, 128).unwrap(), BoundCheck::Fails);
    }

    #[test]
    fn ln_lower_deg8_holds((tag, x) in sample(BoundTag::LnLowerDeg8, 0, 1)) {
        prop_assert_ne!(check_bound_at(tag, &x, 128).unwrap(), BoundCheck::Fails);
    }

    #[test]
    fn exp_lower_deg4_holds((tag, x) in sample(BoundTag::ExpLowerDeg4, 0, 30)) {
        prop_assert_ne!(check_bound_at(tag, &x, 128).unwrap(), BoundCheck::Fails);
    }
}
