use std::sync::OnceLock;

use carleman::bang::{
    bang_lower_bound_certify, class_norm, cp_derivative, BangFunction, Model, Oscillator,
};
use carleman::exact::{int, rational};
use carleman::{Interval, Rational, WeightSequence};
use proptest::prelude::*;

const P: u32 = 128;

fn il2() -> &'static WeightSequence {
    static S: OnceLock<WeightSequence> = OnceLock::new();
    S.get_or_init(|| WeightSequence::iterated_log(2, None).unwrap())
}

fn cosine(k: usize) -> BangFunction {
    BangFunction::with_truncation(il2(), Oscillator::Cosine, k, P).unwrap()
}

fn base() -> &'static (BangFunction, BangFunction) {
    static B: OnceLock<(BangFunction, BangFunction)> = OnceLock::new();
    B.get_or_init(|| (cosine(40), cosine(48)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn longer_truncation_stays_inside(n in 0usize..12, num in -64i64..=64) {
        let (b, longer) = base();
        let xi = Interval::point(&rational(num, 64), P);
        let a = b.derivative(n, &xi).unwrap();
        let c = longer.derivative(n, &xi).unwrap();
        prop_assert!(a.overlaps(&c), "n = {n}: {a} vs {c}");
        prop_assert!(c.width() <= a.width());
    }

    #[test]
    fn odd_derivatives_at_zero(half in 0usize..10) {
        let (b, _) = base();
        let n = 2 * half + 1;
        let v = b.derivative(n, &Interval::from_int(0, P)).unwrap();
        prop_assert!(v.contains(&int(0)));
        prop_assert!(v.width() <= b.tail_bound(n).unwrap() * int(2));
    }

    #[test]
    fn cp_shift_by_p(p in 1u32..6, n in 0usize..12, num in -20i64..=20) {
        let x = Interval::point(&rational(num, 20), P);
        let a = cp_derivative(p, n + p as usize, &x).unwrap();
        let b = cp_derivative(p, n, &x).unwrap();
        prop_assert!(a.overlaps(&b));
    }
}

#[test]
fn lower_bound_grows_with_truncation() {
    for n in 1..=4 {
        let mut prev: Option<Rational> = None;
        for k in [2 * n, 2 * n + 4, 2 * n + 16] {
            let b = cosine(k);
            let lo = b.partial_derivative(2 * n, &Interval::from_int(0, P)).unwrap().abs().lo().clone();
            if let Some(p) = &prev {
                assert!(&lo >= p, "n = {n}, K = {k}");
            }
            assert!(bang_lower_bound_certify(&b, n).unwrap().is_holds());
            prev = Some(lo);
        }
    }
}

#[test]
fn class_norm_monotonicity() {
    let seq = WeightSequence::analytic();
    let model = Model::Polynomial(vec![int(1), int(-3), int(2), rational(5, 2)]);
    let zero = int(0);
    let one = int(1);
    let two = int(2);
    let norm = |b: &Rational, r: &Rational, grid: usize| {
        class_norm(&model, &seq, (&zero, b), r, 4, grid, P).unwrap().value
    };
    let small_r = norm(&one, &rational(1, 2), 8);
    let big_r = norm(&one, &two, 8);
    assert!(big_r.hi() <= small_r.hi());
    // the wider window's grid contains the narrower one
    let wide = norm(&two, &one, 16);
    let narrow = norm(&one, &one, 8);
    assert!(wide.lo() >= narrow.lo());
    let exp = Model::Cp(1);
    let a = class_norm(&exp, &seq, (&zero, &one), &one, 5, 4, P).unwrap().value;
    let b = class_norm(&exp, &seq, (&zero, &one), &two, 5, 4, P).unwrap().value;
    assert!(b.hi() <= a.hi());
}
