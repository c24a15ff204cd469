//! Information-theoretic lower bounds, in bits.

use statrs::function::gamma::ln_gamma;

fn ln_binomial(n: f64, r: f64) -> f64 {
    ln_gamma(n + 1.0) - ln_gamma(r + 1.0) - ln_gamma(n - r + 1.0)
}

/// `log2 C(m + k - 1, m - 1)`: the number of ways `k` selected items can be
/// spread over `m` sorted rows.
///
/// # Panics
///
/// If `m` is zero.
pub fn info_bound(m: usize, k: usize) -> f64 {
    assert!(m >= 1, "a matrix has at least one row");
    if m == 1 || k == 0 {
        return 0.0;
    }
    ln_binomial((m + k - 1) as f64, (m - 1) as f64) / std::f64::consts::LN_2
}

/// `log2` of the `k`-th Catalan number, the number of `k`-node subtrees of an
/// infinite binary tree that contain the root.
pub fn catalan_bits(k: usize) -> f64 {
    fuss_catalan_bits(2, k)
}

/// `log2 (C(dk, k) / ((d - 1)k + 1))`, the number of `k`-node subtrees of an
/// infinite `d`-ary tree that contain the root.
pub fn fuss_catalan_bits(d: usize, k: usize) -> f64 {
    if k <= 1 || d <= 1 {
        return 0.0;
    }
    let (d, k) = (d as f64, k as f64);
    (ln_binomial(d * k, k) - ((d - 1.0) * k + 1.0).ln()) / std::f64::consts::LN_2
}
