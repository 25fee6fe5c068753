//! Rank over the rationals: modular elimination as a one-sided certificate,
//! fraction-free (Bareiss) elimination as the exact fallback.
//!
//! Reducing an integer matrix modulo a prime can only lose rank, never gain
//! it, because every non-vanishing minor mod `p` is non-vanishing over the
//! integers. So a modular rank equal to the column count certifies full
//! column rank over the rationals.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use super::matrix::ExactMatrix;

/// Fixed primes above `2^30`, tried in order.
pub const RANK_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn reduce(m: &ExactMatrix, p: u64) -> Vec<u64> {
    let modulus = BigInt::from(p);
    m.entries()
        .iter()
        .map(|x| x.mod_floor(&modulus).to_u64().expect("reduced below p"))
        .collect()
}

/// Rank of `m` over `GF(p)`. `p` must be a prime below `2^32`.
///
/// Pivots are chosen as the first non-zero entry in each column, scanning
/// columns left to right, so the elimination order is fixed.
pub fn modular_rank(m: &ExactMatrix, p: u64) -> usize {
    assert!(p > 1 && p < 1 << 32, "modulus must fit in 32 bits");
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = reduce(m, p);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in col..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = pow_mod(a[rank * cols + col], p - 2, p);
        for j in col..cols {
            a[rank * cols + j] = a[rank * cols + j] * inv % p;
        }
        let (head, tail) = a.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                // row[j] - f * pivot[j] mod p
                row[j] = (row[j] + (p - f) * pivot_row[j]) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Exact rank over the rationals by fraction-free Gaussian elimination.
///
/// Every intermediate entry is a minor of the input, so the division by the
/// previous pivot is exact.
pub fn bareiss_rank(m: &ExactMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<BigInt> = m.entries().to_vec();
    let mut prev = BigInt::from(1);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let piv = a[rank * cols + col].clone();
        for r in rank + 1..rows {
            let f = a[r * cols + col].clone();
            for j in col + 1..cols {
                let v = &piv * &a[r * cols + j] - &f * &a[rank * cols + j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division not exact");
                a[r * cols + j] = v / &prev;
            }
            a[r * cols + col] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// How a rank was established.
#[serde_as]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMethod {
    Modular {
        #[serde_as(as = "DisplayFromStr")]
        prime: u64,
    },
    Bareiss,
    /// Fewer rows than columns: full column rank is impossible.
    Shape,
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankMethod::Modular { prime } => write!(f, "elimination mod {prime}"),
            RankMethod::Bareiss => write!(f, "fraction-free elimination"),
            RankMethod::Shape => write!(f, "shape"),
        }
    }
}

/// Verdict on whether a matrix has full column rank over the rationals.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    #[serde_as(as = "DisplayFromStr")]
    pub rows: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub cols: usize,
    /// Exact rank when deficient or certified full; for
    /// [`RankMethod::Shape`] this is an upper bound (the row count).
    #[serde_as(as = "DisplayFromStr")]
    pub rank: usize,
    pub full_column_rank: bool,
    pub method: RankMethod,
}

/// Certifies full column rank modulo a fixed prime, escalating through the
/// other two primes and finally to exact elimination if the modular rank
/// comes out short.
pub fn full_rank_certificate(m: &ExactMatrix) -> RankCertificate {
    let (rows, cols) = (m.rows(), m.cols());
    let verdict = |rank, method| RankCertificate {
        rows,
        cols,
        rank,
        full_column_rank: rank == cols,
        method,
    };
    if rows < cols {
        return verdict(rows, RankMethod::Shape);
    }
    for prime in RANK_PRIMES {
        if modular_rank(m, prime) == cols {
            return verdict(cols, RankMethod::Modular { prime });
        }
    }
    verdict(bareiss_rank(m), RankMethod::Bareiss)
}

/// Largest modular rank over [`RANK_PRIMES`]; a lower bound on the rank over
/// the rationals, and equal to it unless all three primes are unlucky.
pub fn rank_lower_bound(m: &ExactMatrix) -> usize {
    let full = m.rows().min(m.cols());
    let mut best = 0;
    for prime in RANK_PRIMES {
        best = best.max(modular_rank(m, prime));
        if best == full {
            break;
        }
    }
    best
}
