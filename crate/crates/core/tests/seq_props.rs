use carleman::exact::{int, rational};
use carleman::seq::is_log_convex;
use carleman::transforms::power_substitution;
use carleman::{Mode, Rational, Scalar, WeightSequence, Which};
use proptest::prelude::*;

const P: u32 = 128;

fn family(choice: u8, s_num: i64) -> WeightSequence {
    match choice % 4 {
        0 => WeightSequence::analytic(),
        1 => WeightSequence::gevrey(rational(s_num, 4)).unwrap(),
        2 => WeightSequence::iterated_log(1, None).unwrap(),
        _ => WeightSequence::iterated_log(2, None).unwrap(),
    }
}

fn table() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((1i64..500, 1i64..50), 3..14)
        .prop_map(|v| v.into_iter().map(|(a, b)| rational(a, b)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn interval_encloses_wider_float(choice in 0u8..4, s in 0i64..9, n in 0usize..40, bits in 53u32..120) {
        let seq = family(choice, s);
        let iv = seq.value(n, Mode::Interval { bits }).unwrap();
        let fl = seq.value(n, Mode::Float { bits: 4 * bits }).unwrap();
        let iv = iv.as_interval().unwrap();
        prop_assert!(iv.contains(fl.lower()), "n = {n}: {iv} misses {fl}");
    }

    #[test]
    fn derived_ratio_is_m(values in table()) {
        let seq = WeightSequence::custom_table(values.clone()).unwrap();
        for n in 1..values.len() {
            let a = seq.derived_value(n, Mode::Exact).unwrap();
            let b = seq.derived_value(n - 1, Mode::Exact).unwrap();
            let m = seq.ratio(n - 1, Mode::Exact).unwrap();
            prop_assert_eq!(Scalar::Exact(a.as_exact().unwrap() / b.as_exact().unwrap()), m);
        }
    }

    #[test]
    fn base_log_convexity_implies_derived(values in table()) {
        let seq = WeightSequence::custom_table(values.clone()).unwrap();
        let end = values.len() - 2;
        let base = is_log_convex(&seq, 1..=end, Which::Base, P).unwrap();
        let derived = is_log_convex(&seq, 1..=end, Which::Derived, P).unwrap();
        if base.is_holds() {
            prop_assert!(derived.is_holds());
        }
    }

    #[test]
    fn power_one_is_identity(choice in 0u8..4, s in 0i64..9, n in 0usize..30) {
        let seq = family(choice, s);
        let same = power_substitution(&seq, 1).unwrap();
        let a = seq.enclose(n, P).unwrap();
        let b = same.enclose(n, P).unwrap();
        prop_assert!(a.overlaps(&b));
        prop_assert_eq!(seq.exact(n).unwrap(), same.exact(n).unwrap());
    }
}

#[test]
fn log_convex_tables_pass_both_checks() {
    // M_n = 2^{n^2}
    let seq = WeightSequence::custom_rule("2^(n^2)", |n| int(num_bigint::BigInt::from(1) << (n * n))).unwrap();
    assert!(is_log_convex(&seq, 1..=20, Which::Base, P).unwrap().is_holds());
    assert!(is_log_convex(&seq, 1..=20, Which::Derived, P).unwrap().is_holds());
}
