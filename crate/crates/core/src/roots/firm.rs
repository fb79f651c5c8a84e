use serde::{Deserialize, Serialize};

use super::system::{build_root_system, dot4, RootType};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FirmResult {
    pub passes: bool,
    /// A positive root orthogonal to every root of `X`, as `[num, den]`
    /// coordinates.
    pub witness: Option<Vec<[i64; 2]>>,
    pub witness_index: Option<usize>,
}

/// Whether no positive root is orthogonal to all of `X = Pi \ {alpha_k}`.
pub fn strictly_firm_parabolic(root_type: RootType, rank: usize, k: usize) -> Result<FirmResult> {
    if !root_type.is_classical() {
        return Err(Error::InvalidRootSystem(format!(
            "strictly firm test covers classical types only, got {root_type}"
        )));
    }
    if k == 0 || k > rank {
        return Err(Error::InvalidArgument(format!("k = {k} outside 1..={rank}")));
    }
    let rs = build_root_system(root_type, rank)?;
    let x: Vec<&[i64]> = (0..rank).filter(|&i| i != k - 1).map(|i| rs.simple_root(i)).collect();
    let witness = rs
        .positive_roots()
        .find(|&b| x.iter().all(|a| dot4(a, rs.root(b)) == 0));
    Ok(FirmResult {
        passes: witness.is_none(),
        witness: witness.map(|b| rs.root_fractions(b)),
        witness_index: witness,
    })
}
