use serialsum::ar_model::{
    acf, acf_check, char_roots, deterministic_path, empirical_acf, simulate, sum_stats, ArModel,
};

#[test]
fn empirical_acf_tracks_theory_over_a_model_grid() {
    let grid: [&[f64]; 5] = [&[0.6], &[-0.4], &[0.9], &[0.5, -0.06], &[0.6, -0.13]];
    let seeds: Vec<u64> = (100..120).collect();
    for alphas in grid {
        let model = ArModel::new(alphas.to_vec(), 1.0).unwrap();
        let check = acf_check(&model, 20_000, &seeds, 3).unwrap();
        assert!(check.max_abs_z() <= 4.0, "{alphas:?}: {check:?}");
    }
}

#[test]
fn markov_lag_one_at_large_n() {
    let model = ArModel::new(vec![0.6], 1.0).unwrap();
    let s = simulate(&model, 200_000, None, 77).unwrap();
    let r = empirical_acf(&s.values, 3).unwrap();
    assert_eq!(r[0], 1.0);
    assert!((r[1] - 0.6).abs() < 0.01);
}

#[test]
fn noiseless_decay_matches_root_powers() {
    let model = ArModel::new(vec![0.8], 0.0).unwrap();
    let path = deterministic_path(&model, &[1.0], 300);
    let r = empirical_acf(&path, 4).unwrap();
    for (j, rj) in r.iter().enumerate() {
        assert!((rj - 0.8f64.powi(j as i32)).abs() < 1e-6);
    }
}

#[test]
fn boundary_lag_is_a_single_product() {
    let x = [0.3, -1.0, 2.0, 0.5];
    let (_, s) = sum_stats(&x, 3).unwrap();
    assert_eq!(s, 0.3 * 0.5);
}

#[test]
fn roots_feed_the_geometric_representation() {
    let alphas = [0.2, 0.3, -0.05];
    let roots = char_roots(&alphas).unwrap();
    assert!(roots.stationary);
    let a = acf(&alphas, 20).unwrap();
    let m = a.model.unwrap();
    for j in 0..=20 {
        assert!((m.rho(j as i64).re - a.rho[j]).abs() < 1e-9);
    }
}
