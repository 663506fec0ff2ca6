use carleman::criteria::{dc_partial_sum, dc_partial_sum_enclose, inclusion_estimate, quasianalytic_verdict};
use carleman::exact::{int, rational};
use carleman::transforms::power_substitution;
use carleman::{Mode, Rational, WeightSequence};
use proptest::prelude::*;

const P: u32 = 128;

fn builtin(i: u8) -> WeightSequence {
    match i % 6 {
        0 => WeightSequence::analytic(),
        1 => WeightSequence::gevrey(int(1)).unwrap(),
        2 => WeightSequence::gevrey(int(0)).unwrap(),
        3 => WeightSequence::iterated_log(1, None).unwrap(),
        4 => WeightSequence::iterated_log(2, None).unwrap(),
        _ => power_substitution(&WeightSequence::iterated_log(1, None).unwrap(), 2).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn partial_sums_nondecreasing(values in prop::collection::vec((1i64..1000, 1i64..20), 3..20)) {
        let values: Vec<Rational> = values.into_iter().map(|(a, b)| rational(a, b)).collect();
        let seq = WeightSequence::custom_table(values.clone()).unwrap();
        let mut prev = None::<Rational>;
        for n in 0..values.len() - 1 {
            let s = dc_partial_sum(&seq, n, Mode::Exact).unwrap().as_exact().unwrap().clone();
            if let Some(p) = prev {
                prop_assert!(s >= p);
            }
            prev = Some(s);
        }
    }

    #[test]
    fn power_one_keeps_verdict(i in 0u8..6) {
        let s = builtin(i);
        let a = quasianalytic_verdict(&s).unwrap();
        let b = quasianalytic_verdict(&power_substitution(&s, 1).unwrap()).unwrap();
        prop_assert_eq!(a.outcome, b.outcome);
    }

    #[test]
    fn inclusion_is_submultiplicative(a in 0i64..8, b in 0i64..8, c in 0i64..8, end in 2usize..25) {
        let g = |s: i64| WeightSequence::gevrey(rational(s, 4)).unwrap();
        let (m, n, p) = (g(a), g(b), g(c));
        let mn = inclusion_estimate(&m, &n, 1..=end, P).unwrap().value;
        let np = inclusion_estimate(&n, &p, 1..=end, P).unwrap().value;
        let mp = inclusion_estimate(&m, &p, 1..=end, P).unwrap().value;
        let prod = mn * np;
        prop_assert!(prod.hi() >= mp.lo(), "{prod} < {mp}");
    }

    #[test]
    fn gevrey_one_sum_below_two(n in 0usize..200) {
        let g = WeightSequence::gevrey(int(1)).unwrap();
        let s = dc_partial_sum_enclose(&g, n, P).unwrap();
        prop_assert!(s.hi() < &int(2));
    }
}
