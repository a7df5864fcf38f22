//! Confluent divided differences of `x ↦ x^m log x`.
//!
//! The recursive definition
//! `[x₀,…,x_n]f = ([x₀,…,x_{n-1}]f - [x₁,…,x_n]f)/(x₀ - x_n)`
//! degenerates at repeated nodes, where the Hermite-confluent limit
//! `[x,…,x]f = f^{(j)}(x)/j!` applies. Nodes closer than a merge tolerance
//! are treated as coincident.

use crate::error::{Error, Result};

const MERGE_TOL: f64 = 1e-7;

/// `d^j/dx^j (x^m log x) = x^{m-j} (a_j log x + b_j)` with
/// `a_{j+1} = (m-j) a_j`, `b_{j+1} = (m-j) b_j + a_j`.
fn idm_log_derivative(m: u32, j: u32, x: f64) -> f64 {
    let mut a = 1.0f64;
    let mut b = 0.0f64;
    for jj in 0..j {
        let f = m as f64 - jj as f64;
        let (na, nb) = (f * a, f * b + a);
        a = na;
        b = nb;
    }
    x.powi(m as i32 - j as i32) * (a * x.ln() + b)
}

/// Confluent divided difference of `x ↦ x^m log x` over `nodes`, each with
/// a multiplicity. Node values must be positive.
pub fn divided_diff_idm_log(nodes: &[(f64, u32)], m: u32) -> Result<f64> {
    let mut flat: Vec<f64> = Vec::new();
    for &(x, mult) in nodes {
        if !(x > 0.0) {
            return Err(Error::Domain(format!("divided difference node must be positive, got {x}")));
        }
        for _ in 0..mult {
            flat.push(x);
        }
    }
    if flat.is_empty() {
        return Err(Error::Domain("empty node list".into()));
    }
    // Merge near-coincident values onto a representative so the confluent
    // branch fires instead of a catastrophic quotient.
    flat.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut i = 0;
    while i + 1 < flat.len() {
        if (flat[i + 1] - flat[i]).abs() <= MERGE_TOL * flat[i].max(1.0) {
            flat[i + 1] = flat[i];
        }
        i += 1;
    }

    let n = flat.len();
    // table[i][j] = [z_i, ..., z_j] f
    let mut col: Vec<f64> = (0..n).map(|i| idm_log_derivative(m, 0, flat[i])).collect();
    for order in 1..n {
        let mut next = vec![0.0f64; n - order];
        for i in 0..(n - order) {
            let lo = flat[i];
            let hi = flat[i + order];
            next[i] = if hi == lo {
                idm_log_derivative(m, order as u32, lo)
                    / (1..=order).map(|k| k as f64).product::<f64>()
            } else {
                (col[i + 1] - col[i]) / (hi - lo)
            };
        }
        col = next;
    }
    Ok(col[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_order_is_log_quotient() {
        // [1, u] log = log u / (u - 1)
        let u = 3.0;
        let v = divided_diff_idm_log(&[(1.0, 1), (u, 1)], 0).unwrap();
        assert!((v - u.ln() / (u - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn confluent_is_derivative() {
        // [1, 1] log = (log)'(1) = 1
        let v = divided_diff_idm_log(&[(1.0, 2)], 0).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        // [x,x,x] log = (log)''(x)/2 = -1/(2x²)
        let x = 1.7;
        let v = divided_diff_idm_log(&[(x, 3)], 0).unwrap();
        assert!((v + 1.0 / (2.0 * x * x)).abs() < 1e-14);
    }

    #[test]
    fn near_coincident_nodes_merge() {
        let x = 2.0;
        let v = divided_diff_idm_log(&[(x, 1), (x + 1e-9, 1)], 0).unwrap();
        assert!((v - 1.0 / x).abs() < 1e-8);
    }

    #[test]
    fn id_log_shift() {
        // [a, b] (x log x) = (b log b - a log a)/(b - a)
        let (a, b) = (1.5, 4.0);
        let v = divided_diff_idm_log(&[(a, 1), (b, 1)], 1).unwrap();
        let expect = (b * b.ln() - a * a.ln()) / (b - a);
        assert!((v - expect).abs() < 1e-13);
    }

    #[test]
    fn rejects_nonpositive() {
        assert!(divided_diff_idm_log(&[(0.0, 1)], 0).is_err());
        assert!(divided_diff_idm_log(&[(-1.0, 1), (1.0, 1)], 0).is_err());
    }
}
