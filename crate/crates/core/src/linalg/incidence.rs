use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::matrix::ExactMatrix;
use crate::combinatorics::pairs;
use crate::design::{Design, DesignError};

/// The `C(v,2) × b` matrix `M` with a 1 where the point pair (row, in
/// lexicographic order) lies inside the block (column, in design order).
pub fn pair_block_matrix(d: &Design) -> Result<ExactMatrix, DesignError> {
    let k = d.block_size()?;
    if k < 2 {
        return Err(DesignError::BlockTooSmall { k, min: 2 });
    }
    let pair_list = pairs(d.v());
    let blocks = d.blocks();
    Ok(ExactMatrix::from_fn(pair_list.len(), d.b(), |row, col| {
        let (a, b) = pair_list[row];
        indicator(blocks[col].contains(a) && blocks[col].contains(b))
    }))
}

/// The `v × C(v,2)` matrix whose row `p` is the indicator `f_p` of the pairs
/// through point `p`.
pub fn pair_indicator_matrix(v: usize) -> ExactMatrix {
    let pair_list = pairs(v);
    ExactMatrix::from_fn(v, pair_list.len(), |p, col| {
        let (a, b) = pair_list[col];
        indicator(a == p || b == p)
    })
}

/// The `v × b` matrix whose row `p` is the indicator `g_p` of the blocks
/// through point `p`.
pub fn point_block_matrix(d: &Design) -> ExactMatrix {
    let blocks = d.blocks();
    ExactMatrix::from_fn(d.v(), d.b(), |p, col| indicator(blocks[col].contains(p)))
}

fn indicator(b: bool) -> BigInt {
    if b {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}
