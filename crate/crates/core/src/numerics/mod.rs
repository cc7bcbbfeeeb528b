//! Complex scalars, truncated Taylor jets and confluent divided differences.

mod compensated;
mod divided;
mod jet;

pub use compensated::ComplexSum;
pub use divided::{
    confluent_divided_difference, divided_difference_with_bound, DividedDifference,
    COLLISION_THRESHOLD,
};
pub use jet::{Jet, JetOp};

use thiserror::Error;

/// Complex scalar used for every root and formula evaluation.
pub type CNum = num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("jets differ in center or order ({0})")]
    Mismatch(&'static str),
    #[error("division by a jet with zero constant term")]
    DegenerateJet,
    #[error("node {node} needs derivatives up to order {needed}, jet has order {have}")]
    InsufficientOrder {
        node: usize,
        needed: usize,
        have: usize,
    },
    #[error("nodes {0} and {1} coincide numerically; merge them into one node")]
    NodeCollision(usize, usize),
    #[error("empty node list")]
    NoNodes,
    #[error("non-finite input")]
    NonFinite,
}

/// `z^p` for `p ≥ 0` with `0^0 = 1`.
pub fn powu(z: CNum, p: u32) -> CNum {
    let mut base = z;
    let mut exp = p;
    let mut acc = CNum::new(1.0, 0.0);
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= base;
        }
        base *= base;
        exp >>= 1;
    }
    acc
}

pub fn is_finite(z: CNum) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Relative distance used for node clustering: `|a-b| / max(|a|, |b|)`,
/// zero when both are exactly zero.
pub fn relative_distance(a: CNum, b: CNum) -> f64 {
    let scale = a.norm().max(b.norm());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).norm() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powu_basics() {
        let zero = CNum::new(0.0, 0.0);
        assert_eq!(powu(zero, 0), CNum::new(1.0, 0.0));
        assert_eq!(powu(zero, 3), zero);
        let z = CNum::new(0.3, -0.2);
        let direct = z * z * z * z * z;
        assert!((powu(z, 5) - direct).norm() < 1e-16);
    }

    #[test]
    fn relative_distance_scales() {
        let a = CNum::new(1e-9, 0.0);
        let b = CNum::new(2e-9, 0.0);
        assert!((relative_distance(a, b) - 0.5).abs() < 1e-15);
        assert_eq!(relative_distance(CNum::default(), CNum::default()), 0.0);
    }
}
