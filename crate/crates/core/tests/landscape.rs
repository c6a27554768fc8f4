use mplandscape::landscape::{landscape_eval, landscape_profile};
use mplandscape::persistence::{Bar, Barcode};
use proptest::prelude::*;

fn bars() -> impl Strategy<Value = Vec<Bar>> {
    prop::collection::vec((-10.0f64..10.0, 0.01f64..8.0, prop::bool::weighted(0.15)), 0..8).prop_map(|v| {
        v.into_iter()
            .map(|(b, len, essential)| Bar::new(b, if essential { f64::INFINITY } else { b + len }, 0))
            .collect()
    })
}

fn sup_by_bisection(bars: &[Bar], k: usize, t: f64) -> f64 {
    let count = |h: f64| bars.iter().filter(|b| b.birth <= t - h && t + h < b.death).count();
    if count(0.0) < k {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 64.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if count(mid) >= k {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

proptest! {
    #[test]
    fn values_are_nonnegative_and_decrease_in_k(bars in bars(), t in -12.0f64..20.0) {
        let bc = Barcode::from_bars(0, bars);
        let mut prev = f64::INFINITY;
        for k in 1..=6 {
            let v = landscape_eval(&bc, k, t).unwrap();
            prop_assert!(v >= 0.0);
            prop_assert!(v <= prev);
            prev = v;
        }
    }

    #[test]
    fn levels_are_one_lipschitz(bars in bars(), s in -12.0f64..20.0, t in -12.0f64..20.0, k in 1usize..5) {
        let bc = Barcode::from_bars(0, bars);
        let d = (landscape_eval(&bc, k, s).unwrap() - landscape_eval(&bc, k, t).unwrap()).abs();
        prop_assert!(d <= (s - t).abs() + 1e-12);
    }

    #[test]
    fn matches_the_bar_counting_definition(bars in bars(), t in -12.0f64..20.0, k in 1usize..5) {
        let bc = Barcode::from_bars(0, bars.clone());
        let v = landscape_eval(&bc, k, t).unwrap();
        prop_assert!((v - sup_by_bisection(&bars, k, t)).abs() <= 1e-9);
    }

    #[test]
    fn adding_a_bar_never_lowers_a_level(
        bars in bars(),
        extra in (-10.0f64..10.0, 0.01f64..8.0),
        t in -12.0f64..20.0,
        k in 1usize..5,
    ) {
        let before = landscape_eval(&Barcode::from_bars(0, bars.clone()), k, t).unwrap();
        let mut more = bars;
        more.push(Bar::new(extra.0, extra.0 + extra.1, 0));
        let after = landscape_eval(&Barcode::from_bars(0, more), k, t).unwrap();
        prop_assert!(after >= before);
    }

    #[test]
    fn profile_rows_match_pointwise_evaluation(bars in bars(), k_max in 1usize..5) {
        let bc = Barcode::from_bars(0, bars);
        let ts: Vec<f64> = (0..40).map(|i| -10.0 + 0.5 * i as f64).collect();
        let rows = landscape_profile(&bc, k_max, &ts);
        for k in 1..=k_max {
            for (j, &t) in ts.iter().enumerate() {
                prop_assert_eq!(rows[k - 1][j], landscape_eval(&bc, k, t).unwrap());
            }
        }
    }
}

#[test]
fn depth_zero_is_rejected() {
    let bc = Barcode::from_bars(0, vec![Bar::new(0.0, 1.0, 0)]);
    assert!(landscape_eval(&bc, 0, 0.5).is_err());
}
