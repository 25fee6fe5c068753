//! Binomial coefficients and lexicographic subset enumeration.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

/// `C(n, k)` as an arbitrary-precision integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        // The running product stays integral: acc = C(n, i) before this step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `C(n, k)` when it fits in a `usize`.
pub fn binomial_usize(n: usize, k: usize) -> Option<usize> {
    binomial(n, k).to_usize()
}

/// Number of 2-subsets of a `v`-set.
pub fn pair_count(v: usize) -> usize {
    v * v.saturating_sub(1) / 2
}

/// Lexicographic rank of the pair `{a, b}` (with `a < b`) among all 2-subsets
/// of `0..v`.
pub fn pair_index(v: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < v);
    a * (2 * v - a - 1) / 2 + (b - a - 1)
}

/// All 2-subsets of `0..v` in lexicographic order.
pub fn pairs(v: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(pair_count(v));
    for a in 0..v {
        for b in a + 1..v {
            out.push((a, b));
        }
    }
    out
}

/// Iterator over the `k`-subsets of `0..n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Combinations { n, current }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let k = out.len();
        let mut next = out.clone();
        // rightmost position that can still advance
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
