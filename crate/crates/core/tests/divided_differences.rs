use proptest::prelude::*;
use serialsum::numerics::{confluent_divided_difference, CNum, Jet};

/// f(x) = x^3 / (1 - 0.3 x) + 0.5 x
fn f_jet(at: CNum, order: usize) -> Jet {
    let x = Jet::variable(at, order);
    let den = Jet::one(at, order).sub(&x.scale(CNum::new(0.3, 0.0))).unwrap();
    x.pow_int(3).div(&den).unwrap().add(&x.scale(CNum::new(0.5, 0.0))).unwrap()
}

fn f(x: CNum) -> CNum {
    x * x * x / (CNum::new(1.0, 0.0) - 0.3 * x) + 0.5 * x
}

fn naive(xs: &[CNum]) -> CNum {
    xs.iter()
        .enumerate()
        .map(|(i, &xi)| {
            let den: CNum = xs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| xi - xj)
                .product();
            f(xi) / den
        })
        .sum()
}

fn dd(nodes: &[(CNum, usize)]) -> CNum {
    let jets: Vec<Jet> = nodes.iter().map(|&(x, m)| f_jet(x, m.max(1) - 1)).collect();
    confluent_divided_difference(nodes, &jets).unwrap()
}

fn node() -> impl Strategy<Value = CNum> {
    (-1.5f64..1.5, -1.5f64..1.5).prop_map(|(a, b)| CNum::new(a, b))
}

fn separated(xs: &[CNum], gap: f64) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| (a - b).norm() > gap))
}

proptest! {
    #[test]
    fn distinct_nodes_match_the_explicit_sum(xs in prop::collection::vec(node(), 2..=4)) {
        prop_assume!(separated(&xs, 0.2));
        let nodes: Vec<_> = xs.iter().map(|&x| (x, 1)).collect();
        let a = dd(&nodes);
        let b = naive(&xs);
        prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1.0), "{a} vs {b}");
    }

    #[test]
    fn symmetric_under_node_permutation(
        xs in prop::collection::vec((node(), 1usize..=3), 2..=4),
        rot in 0usize..4,
    ) {
        let pts: Vec<CNum> = xs.iter().map(|p| p.0).collect();
        prop_assume!(separated(&pts, 0.2));
        let a = dd(&xs);
        let mut shuffled = xs.clone();
        shuffled.reverse();
        shuffled.rotate_left(rot % xs.len());
        let b = dd(&shuffled);
        prop_assert!((a - b).norm() <= 1e-11 * a.norm().max(1.0));
    }
}

#[test]
fn merging_nodes_converge_to_the_derivative() {
    let x = CNum::new(0.5, 0.0);
    let target = dd(&[(x, 2)]);
    let gaps: Vec<f64> = [1e-4, 1e-5, 1e-6]
        .iter()
        .map(|&eps| (dd(&[(x, 1), (x + eps, 1)]) - target).norm())
        .collect();
    // first-order convergence: each tenfold step cuts the gap about tenfold
    for w in gaps.windows(2) {
        assert!(w[1] < w[0]);
        assert!(w[1] / w[0] < 0.2, "{gaps:?}");
    }
}

#[test]
fn single_node_multiplicity_m_is_scaled_derivative() {
    let x = CNum::new(0.2, -0.1);
    let jet = f_jet(x, 3);
    let v = confluent_divided_difference(&[(x, 4)], std::slice::from_ref(&jet)).unwrap();
    assert!((v - jet.derivative(3).unwrap() / 6.0).norm() < 1e-14);
}
