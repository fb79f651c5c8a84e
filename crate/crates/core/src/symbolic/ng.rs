//! The operator `N_g = 1 + g + ... + g^{m-1}` on a module with torus
//! weights, for a torus element `g` of finite order.
//!
//! On the `λ`-weight line `g` acts by `ζ^λ` with `ζ` a primitive
//! `g_order`-th root of unity, so `N_g` acts by `Σ_k ζ^{λk}`. The operator is
//! diagonal, hence surjective exactly when no eigenvalue vanishes.

use serde::{Deserialize, Serialize};

use super::cyclotomic::{CycloElt, CycloRing};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightModule {
    pub weights: Vec<i64>,
    pub label: String,
}

impl WeightModule {
    pub fn new(weights: Vec<i64>, label: impl Into<String>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("weight module needs at least one weight".into()));
        }
        Ok(WeightModule {
            weights,
            label: label.into(),
        })
    }

    /// Weights `n, n-2, ..., -n` of the irreducible `(n+1)`-dimensional
    /// SL_2-module.
    pub fn sl2_irreducible(n: u32) -> Self {
        let weights = (0..=n as i64).map(|k| n as i64 - 2 * k).collect();
        WeightModule {
            weights,
            label: format!("V({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NgReport {
    pub singular: bool,
    /// Weights whose eigenvalue is zero, in module order.
    pub kernel_weights: Vec<i64>,
    pub surjective: bool,
    /// Eigenvalue per weight, as coefficient strings in the power basis of `Z[ζ]`.
    pub eigenvalues: Vec<(i64, Vec<String>)>,
}

/// Eigenvalue of `N_g` on the `λ`-weight line.
pub fn ng_eigenvalue(ring: &CycloRing, weight: i64, m: u32) -> CycloElt {
    let mut acc = ring.from_int(0);
    for k in 0..m as i64 {
        acc = ring.add(&acc, &ring.zeta_pow(weight * k));
    }
    acc
}

pub fn ng_operator_analysis(module: &WeightModule, m: u32, g_order: u64) -> Result<NgReport> {
    if m == 0 || g_order == 0 {
        return Err(Error::InvalidArgument("m and g_order must be >= 1".into()));
    }
    let ring = CycloRing::new(g_order);
    let mut kernel_weights = Vec::new();
    let mut eigenvalues = Vec::new();
    for &w in &module.weights {
        let e = ng_eigenvalue(&ring, w, m);
        if e.is_zero() {
            kernel_weights.push(w);
        }
        eigenvalues.push((w, e.coeffs().iter().map(|c| c.to_string()).collect()));
    }
    let singular = !kernel_weights.is_empty();
    Ok(NgReport {
        singular,
        kernel_weights,
        surjective: !singular,
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_dimensional_module() {
        let module = WeightModule::sl2_irreducible(5);
        assert_eq!(module.weights, vec![5, 3, 1, -1, -3, -5]);
        let r = ng_operator_analysis(&module, 3, 9).unwrap();
        assert!(r.singular);
        assert!(!r.surjective);
        assert_eq!(r.kernel_weights, vec![3, -3]);
    }

    #[test]
    fn adjoint_module() {
        let module = WeightModule::new(vec![2, 0, -2], "adjoint").unwrap();
        let r = ng_operator_analysis(&module, 3, 9).unwrap();
        assert!(!r.singular);
        assert!(r.surjective);
    }

    #[test]
    fn m_one_is_identity() {
        let module = WeightModule::new(vec![7, 1, 0, -4], "any").unwrap();
        for order in 1..12 {
            let r = ng_operator_analysis(&module, 1, order).unwrap();
            assert!(!r.singular);
        }
    }

    #[test]
    fn zero_weight_eigenvalue_is_m() {
        for order in 1..15 {
            let ring = CycloRing::new(order);
            for m in 1..8 {
                assert_eq!(ng_eigenvalue(&ring, 0, m), ring.from_int(m as i64));
            }
        }
    }

    #[test]
    fn kernel_iff_weight_root_has_order_dividing_m() {
        // ζ^λ is a nontrivial m-th root of unity iff the sum vanishes
        for order in 1..13u64 {
            let ring = CycloRing::new(order);
            for m in 1..7u32 {
                for lambda in -6i64..=6 {
                    let e = lambda.rem_euclid(order as i64) as u64;
                    let root_order = order / num_integer::gcd(order, e);
                    let expect_zero = root_order > 1 && (m as u64).is_multiple_of(root_order);
                    assert_eq!(ng_eigenvalue(&ring, lambda, m).is_zero(), expect_zero);
                }
            }
        }
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(WeightModule::new(vec![], "empty").is_err());
        let module = WeightModule::new(vec![1], "l").unwrap();
        assert!(ng_operator_analysis(&module, 0, 3).is_err());
    }
}
