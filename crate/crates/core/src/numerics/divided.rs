use super::{relative_distance, CNum, Jet, NumericsError};

/// Relative distance below which two nodes count as the same point.
pub const COLLISION_THRESHOLD: f64 = 1e-6;

/// Divided difference together with a running magnitude bound.
///
/// `magnitude` is the same table evaluated on absolute values, which bounds
/// how much cancellation went into `value`. Rounding error is of order
/// `ε · magnitude`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DividedDifference {
    pub value: CNum,
    pub magnitude: f64,
}

/// Hermite divided difference `f[x_1,…,x_1,…,x_r,…,x_r]`.
///
/// `nodes[g] = (x_g, m_g)` and `jets[g]` must expand `f` at `x_g` to order at
/// least `m_g - 1`.
pub fn confluent_divided_difference(
    nodes: &[(CNum, usize)],
    jets: &[Jet],
) -> Result<CNum, NumericsError> {
    divided_difference_with_bound(nodes, jets).map(|dd| dd.value)
}

pub fn divided_difference_with_bound(
    nodes: &[(CNum, usize)],
    jets: &[Jet],
) -> Result<DividedDifference, NumericsError> {
    if nodes.is_empty() || nodes.iter().all(|&(_, m)| m == 0) {
        return Err(NumericsError::NoNodes);
    }
    if jets.len() != nodes.len() {
        return Err(NumericsError::Mismatch("one jet per node is required"));
    }
    for (g, ((x, m), jet)) in nodes.iter().zip(jets).enumerate() {
        if !super::is_finite(*x) {
            return Err(NumericsError::NonFinite);
        }
        if jet.center() != *x {
            return Err(NumericsError::Mismatch("jet center differs from its node"));
        }
        if *m > 0 && jet.order() + 1 < *m {
            return Err(NumericsError::InsufficientOrder {
                node: g,
                needed: m - 1,
                have: jet.order(),
            });
        }
    }
    for a in 0..nodes.len() {
        for b in a + 1..nodes.len() {
            if nodes[a].1 > 0
                && nodes[b].1 > 0
                && relative_distance(nodes[a].0, nodes[b].0) <= COLLISION_THRESHOLD
            {
                return Err(NumericsError::NodeCollision(a, b));
            }
        }
    }

    // Expanded node list with repeated nodes kept adjacent.
    let group: Vec<usize> = nodes
        .iter()
        .enumerate()
        .flat_map(|(g, &(_, m))| std::iter::repeat_n(g, m))
        .collect();
    let point = |i: usize| nodes[group[i]].0;
    let len = group.len();

    let mut table: Vec<CNum> = group.iter().map(|&g| jets[g].coeffs()[0]).collect();
    let mut mags: Vec<f64> = table.iter().map(|z| z.norm()).collect();
    for k in 1..len {
        for i in 0..len - k {
            if group[i] == group[i + k] {
                let c = jets[group[i]].coeffs()[k];
                table[i] = c;
                mags[i] = c.norm();
            } else {
                let h = point(i + k) - point(i);
                table[i] = (table[i + 1] - table[i]) / h;
                mags[i] = (mags[i + 1] + mags[i]) / h.norm();
            }
        }
    }
    Ok(DividedDifference {
        value: table[0],
        magnitude: mags[0],
    })
}
