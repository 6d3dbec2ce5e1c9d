//! Classic particular-solution basis J_k(x r) {cos, sin}(k theta) for the
//! degenerate layouts where one boundary condition holds on the whole circle.

use crate::specfun::{j_unchecked, jp_unchecked};

/// Column norms below this are treated as underflowed.
pub const MIN_COLUMN_NORM: f64 = 1e-250;

pub(crate) fn class_orders(n_arcs: u32, residue: u32, odd: bool, count: usize) -> Vec<u32> {
    let (ks, _) = super::kernel::class_indices(n_arcs, residue, (count as u64 + 2) * n_arcs as u64);
    ks.into_iter().filter(|&k| !(odd && k == 0)).take(count).map(|k| k as u32).collect()
}

fn angular(k: u32, theta: f64, odd: bool) -> f64 {
    if odd {
        (k as f64 * theta).sin()
    } else {
        (k as f64 * theta).cos()
    }
}

pub(crate) fn boundary_row(orders: &[u32], x: f64, theta: f64, odd: bool, neumann: bool) -> Vec<f64> {
    orders
        .iter()
        .map(|&k| {
            let radial = if neumann { x * jp_unchecked(k, x) } else { j_unchecked(k, x) };
            radial * angular(k, theta, odd)
        })
        .collect()
}

pub(crate) fn interior_row(orders: &[u32], x: f64, rho: f64, theta: f64, odd: bool) -> Vec<f64> {
    orders.iter().map(|&k| j_unchecked(k, x * rho) * angular(k, theta, odd)).collect()
}
