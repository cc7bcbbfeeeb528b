use proptest::prelude::*;
use serialsum::ar_model::acf;
use serialsum::lambda_sums::{
    evaluate, finite_sum, finite_sum_direct, linear_coefficient, FiniteSumSpec, RootMultiset,
    ShiftSpec, SlopeSpec,
};
use serialsum::CNum;

fn root() -> impl Strategy<Value = CNum> {
    (0.0f64..1.0, 0.0f64..std::f64::consts::TAU).prop_map(|(u, t)| CNum::from_polar(0.85 * u.sqrt(), t))
}

fn slope_case(max_ell: usize) -> impl Strategy<Value = (Vec<CNum>, Vec<i64>, Vec<i64>)> {
    (2..=max_ell).prop_flat_map(|ell| {
        (
            prop::collection::vec(root(), ell),
            prop::collection::vec(-2i64..=2, ell),
            prop::collection::vec(-3i64..=0, ell),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_equals_enumeration(
        (lambdas, shifts, adjust) in (2usize..=4).prop_flat_map(|ell| (
            prop::collection::vec(root(), ell),
            prop::collection::vec(-2i64..=2, ell),
            prop::collection::vec(-2i64..=0, ell),
        )),
        n in 3usize..=12,
    ) {
        let spec = FiniteSumSpec::new(lambdas, shifts, n).with_adjust(adjust);
        let fast = finite_sum(&spec).unwrap();
        let slow = finite_sum_direct(&spec).unwrap();
        prop_assert!((fast - slow).norm() <= 1e-12 * slow.norm().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn slope_depends_only_on_the_aggregate_shift((lambdas, shifts, adjust) in slope_case(3)) {
        let base = linear_coefficient(&SlopeSpec::new(lambdas.clone(), shifts.clone()), 200).unwrap();
        // same |Σs|: whole-vector sign flip and a rearrangement of the sum
        let flipped: Vec<i64> = shifts.iter().map(|s| -s).collect();
        let mut moved = vec![0; shifts.len()];
        moved[shifts.len() - 1] = shifts.iter().sum();
        for other in [flipped, moved] {
            let lc = linear_coefficient(&SlopeSpec::new(lambdas.clone(), other), 200).unwrap();
            prop_assert!((lc.value - base.value).norm() <= lc.err_estimate + base.err_estimate);
        }
        let adjusted = linear_coefficient(&SlopeSpec::new(lambdas.clone(), shifts.clone()).with_adjust(adjust), 200).unwrap();
        prop_assert!((adjusted.value - base.value).norm() <= adjusted.err_estimate + base.err_estimate);

        // both bases agree with the closed form within their residue bounds
        let s = ShiftSpec::new(shifts.clone()).aggregate();
        let f = evaluate(&RootMultiset::from_values(&lambdas).unwrap(), s).unwrap();
        let doubled = linear_coefficient(&SlopeSpec::new(lambdas.clone(), shifts.clone()), 400).unwrap();
        prop_assert!((base.value - f.value).norm() <= base.err_estimate + f.err_estimate);
        prop_assert!((doubled.value - f.value).norm() <= doubled.err_estimate + f.err_estimate);
        prop_assert!((doubled.value - base.value).norm() <= doubled.err_estimate + base.err_estimate);
    }
}

#[test]
fn zero_root_slope_is_one() {
    for shifts in [vec![0, 0], vec![2, -2], vec![-1, 1]] {
        let lc = linear_coefficient(&SlopeSpec::new(vec![CNum::new(0.6, 0.0), CNum::default()], shifts), 100).unwrap();
        assert!((lc.value - CNum::new(1.0, 0.0)).norm() <= lc.err_estimate.max(1e-14));
    }
}

#[test]
fn shift_variants_with_equal_aggregate() {
    let lambdas = vec![CNum::new(0.6, 0.0), CNum::new(0.4, 0.0)];
    let values: Vec<_> = [vec![2, -1], vec![-1, 2], vec![0, 1]]
        .into_iter()
        .map(|s| linear_coefficient(&SlopeSpec::new(lambdas.clone(), s), 200).unwrap())
        .collect();
    for v in &values[1..] {
        assert!((v.value - values[0].value).norm() <= v.err_estimate + values[0].err_estimate);
    }
}

/// The ρ-expansion of a cyclic sum is the A-weighted mix of root-pair sums.
#[test]
fn autocorrelation_bridge_by_linearity() {
    let alphas = [0.5, -0.06];
    let a = acf(&alphas, 40).unwrap();
    let model = a.model.unwrap();
    let rho = |lag: i64| a.rho[lag.unsigned_abs() as usize];
    for n in 2..=12usize {
        for (s1, s2) in [(0i64, 0i64), (1, 0), (-2, 1)] {
            let mut direct = 0.0;
            for i1 in 1..=n as i64 {
                for i2 in 1..=n as i64 {
                    direct += rho(i1 - i2 + s1) * rho(i2 - i1 + s2);
                }
            }
            let mut mixed = CNum::default();
            for (la, aa) in model.roots.iter().zip(&model.coeffs) {
                for (lb, ab) in model.roots.iter().zip(&model.coeffs) {
                    let spec = FiniteSumSpec::new(vec![*la, *lb], vec![s1, s2], n);
                    mixed += aa * ab * finite_sum_direct(&spec).unwrap();
                }
            }
            assert!((mixed.re - direct).abs() <= 1e-12 * direct.abs().max(1.0), "n={n}");
            assert!(mixed.im.abs() < 1e-12);
        }
    }
}
