//! Writing a matrix as `c_I·I + c_J·J + c_A·A` for a graph adjacency `A`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};
use thiserror::Error;

use super::matrix::ExactMatrix;

/// Coefficients of `S = c_I·I + c_J·J + c_A·A`.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanDecomposition {
    #[serde(rename = "c_I")]
    #[serde_as(as = "DisplayFromStr")]
    pub c_identity: BigRational,
    #[serde(rename = "c_J")]
    #[serde_as(as = "DisplayFromStr")]
    pub c_ones: BigRational,
    #[serde(rename = "c_A")]
    #[serde_as(as = "DisplayFromStr")]
    pub c_adjacency: BigRational,
    pub residual_zero: bool,
}

impl SpanDecomposition {
    /// Value on the diagonal, `c_I + c_J`.
    pub fn diagonal_entry(&self) -> BigRational {
        &self.c_identity + &self.c_ones
    }

    /// Value where `A` is 1, `c_J + c_A`.
    pub fn adjacent_entry(&self) -> BigRational {
        &self.c_ones + &self.c_adjacency
    }

    /// Value off the diagonal where `A` is 0, `c_J`.
    pub fn non_adjacent_entry(&self) -> BigRational {
        self.c_ones.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionError {
    #[error("matrices must be square and of equal size ({s_rows}x{s_cols} vs {a_rows}x{a_cols})")]
    Shape {
        s_rows: usize,
        s_cols: usize,
        a_rows: usize,
        a_cols: usize,
    },
    #[error("adjacency matrix is not symmetric 0/1 with zero diagonal (entry {row},{col})")]
    NotAdjacency { row: usize, col: usize },
    #[error("underdetermined: adjacency matrix has no {missing} off-diagonal entry")]
    Underdetermined { missing: &'static str },
    #[error("entry ({row},{col}) is {found}, but the {class} class requires {expected}")]
    Mismatch {
        row: usize,
        col: usize,
        class: &'static str,
        expected: BigInt,
        found: BigInt,
    },
}

/// Reads the three coefficients off one diagonal entry, one adjacent entry and
/// one non-adjacent entry, then checks every entry of `s` against them.
pub fn decompose_in_ija(
    s: &ExactMatrix,
    a: &ExactMatrix,
) -> Result<SpanDecomposition, DecompositionError> {
    let n = s.rows();
    if !s.is_square() || !a.is_square() || a.rows() != n {
        return Err(DecompositionError::Shape {
            s_rows: s.rows(),
            s_cols: s.cols(),
            a_rows: a.rows(),
            a_cols: a.cols(),
        });
    }
    let zero = BigInt::zero();
    let one = BigInt::one();
    let mut adjacent = None;
    let mut non_adjacent = None;
    for i in 0..n {
        for j in 0..n {
            let e = a.get(i, j);
            let valid = if i == j {
                *e == zero
            } else {
                (*e == zero || *e == one) && e == a.get(j, i)
            };
            if !valid {
                return Err(DecompositionError::NotAdjacency { row: i, col: j });
            }
            if i != j {
                if *e == one {
                    adjacent.get_or_insert((i, j));
                } else {
                    non_adjacent.get_or_insert((i, j));
                }
            }
        }
    }
    let (ai, aj) = adjacent.ok_or(DecompositionError::Underdetermined {
        missing: "adjacent",
    })?;
    let (ni, nj) = non_adjacent.ok_or(DecompositionError::Underdetermined {
        missing: "non-adjacent",
    })?;

    let diag = s.get(0, 0).clone();
    let adj = s.get(ai, aj).clone();
    let non = s.get(ni, nj).clone();

    for i in 0..n {
        for j in 0..n {
            let (class, expected) = if i == j {
                ("diagonal", &diag)
            } else if *a.get(i, j) == one {
                ("adjacent", &adj)
            } else {
                ("non-adjacent", &non)
            };
            let found = s.get(i, j);
            if found != expected {
                return Err(DecompositionError::Mismatch {
                    row: i,
                    col: j,
                    class,
                    expected: expected.clone(),
                    found: found.clone(),
                });
            }
        }
    }

    let c_ones = BigRational::from_integer(non.clone());
    Ok(SpanDecomposition {
        c_identity: BigRational::from_integer(&diag - &non),
        c_adjacency: BigRational::from_integer(&adj - &non),
        c_ones,
        residual_zero: true,
    })
}

/// `c_I·I + c_J·J + c_A·A` for integer coefficients.
pub fn compose_ija(
    c_identity: &BigInt,
    c_ones: &BigInt,
    c_adjacency: &BigInt,
    a: &ExactMatrix,
) -> ExactMatrix {
    ExactMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        let mut v = c_ones + c_adjacency * a.get(i, j);
        if i == j {
            v += c_identity;
        }
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_graph() -> ExactMatrix {
        // 4-cycle 0-1-2-3-0
        ExactMatrix::from_rows(&[
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
            vec![0, 1, 0, 1],
            vec![1, 0, 1, 0],
        ])
    }

    #[test]
    fn all_ones_is_pure_j() {
        let a = square_graph();
        let d = decompose_in_ija(&ExactMatrix::ones(4, 4), &a).unwrap();
        assert_eq!(d.c_identity, BigRational::zero());
        assert_eq!(d.c_ones, BigRational::one());
        assert_eq!(d.c_adjacency, BigRational::zero());
        assert!(d.residual_zero);
    }

    #[test]
    fn compose_then_decompose() {
        let a = square_graph();
        let s = compose_ija(&BigInt::from(5), &BigInt::from(-2), &BigInt::from(7), &a);
        let d = decompose_in_ija(&s, &a).unwrap();
        assert_eq!(d.c_identity, BigRational::from_integer(5.into()));
        assert_eq!(d.c_ones, BigRational::from_integer((-2).into()));
        assert_eq!(d.c_adjacency, BigRational::from_integer(7.into()));
        assert_eq!(d.diagonal_entry(), BigRational::from_integer(3.into()));
    }

    #[test]
    fn reports_first_mismatch() {
        let a = square_graph();
        let mut s = compose_ija(&BigInt::from(1), &BigInt::from(1), &BigInt::from(1), &a);
        s.set(2, 0, BigInt::from(9));
        match decompose_in_ija(&s, &a) {
            Err(DecompositionError::Mismatch {
                row, col, class, ..
            }) => {
                assert_eq!((row, col, class), (2, 0, "non-adjacent"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn complete_graph_is_underdetermined() {
        let k3 = ExactMatrix::from_rows(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(
            decompose_in_ija(&ExactMatrix::ones(3, 3), &k3),
            Err(DecompositionError::Underdetermined {
                missing: "non-adjacent"
            })
        );
    }

    #[test]
    fn rejects_non_adjacency_input() {
        let bad = ExactMatrix::from_rows(&[vec![1, 0], vec![0, 0]]);
        assert_eq!(
            decompose_in_ija(&ExactMatrix::ones(2, 2), &bad),
            Err(DecompositionError::NotAdjacency { row: 0, col: 0 })
        );
        assert!(matches!(
            decompose_in_ija(&ExactMatrix::ones(2, 3), &bad),
            Err(DecompositionError::Shape { .. })
        ));
    }
}
