//! The binary Golay code of length 23 as a cyclic quadratic-residue code.
//!
//! Polynomials over GF(2) are packed into integers, bit `i` holding the
//! coefficient of `X^i`.
//!
//! The generator is `gcd(Q(X), X^23 + 1)` where `Q(X)` is the sum of `X^r`
//! over the non-zero quadratic residues `r` mod 23. This picks the factor
//! `X^11 + X^9 + X^7 + X^6 + X^5 + X + 1` of `X^23 + 1`; the other degree-11
//! factor is its reciprocal and gives an equivalent code.

pub const LENGTH: usize = 23;
pub const DIMENSION: usize = 12;

/// Degree of a non-zero polynomial.
fn degree(p: u64) -> u32 {
    debug_assert!(p != 0);
    63 - p.leading_zeros()
}

/// `a mod m` over GF(2).
pub fn poly_rem(mut a: u64, m: u64) -> u64 {
    assert!(m != 0, "division by the zero polynomial");
    let dm = degree(m);
    while a != 0 && degree(a) >= dm {
        a ^= m << (degree(a) - dm);
    }
    a
}

/// Carry-less product. Panics if the product does not fit in 64 bits.
pub fn poly_mul(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    assert!(degree(a) + degree(b) < 64, "product degree too large");
    let mut acc = 0;
    let mut b = b;
    let mut shifted = a;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= shifted;
        }
        b >>= 1;
        shifted <<= 1;
    }
    acc
}

pub fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = poly_rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Non-zero quadratic residues modulo `p`, ascending.
pub fn quadratic_residues(p: usize) -> Vec<usize> {
    let mut qr: Vec<usize> = (1..p).map(|i| i * i % p).collect();
    qr.sort_unstable();
    qr.dedup();
    qr
}

/// The cyclic `[23, 12, 7]` binary Golay code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GolayCode {
    generator: u64,
}

impl GolayCode {
    /// The quadratic-residue code generated by `gcd(Q(X), X^23 + 1)`.
    pub fn quadratic_residue() -> Self {
        let residues: u64 = quadratic_residues(LENGTH)
            .into_iter()
            .fold(0, |acc, r| acc | 1 << r);
        let generator = poly_gcd(Self::modulus(), residues);
        debug_assert_eq!(degree(generator) as usize, LENGTH - DIMENSION);
        GolayCode { generator }
    }

    /// `X^23 + 1`.
    pub fn modulus() -> u64 {
        1 << LENGTH | 1
    }

    /// Generator polynomial coefficients, bit `i` for `X^i`.
    pub fn generator(&self) -> u64 {
        self.generator
    }

    pub fn generator_divides_modulus(&self) -> bool {
        poly_rem(Self::modulus(), self.generator) == 0
    }

    /// Encodes a message of at most 12 bits as `m(X)·g(X)`.
    pub fn encode(&self, message: u64) -> u64 {
        debug_assert!(message < 1 << DIMENSION);
        poly_mul(message, self.generator)
    }

    /// All 4096 codewords, in message order.
    pub fn codewords(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << DIMENSION).map(move |m| self.encode(m))
    }

    /// `dist[w]` = number of codewords of Hamming weight `w`.
    pub fn weight_distribution(&self) -> [usize; LENGTH + 1] {
        let mut dist = [0; LENGTH + 1];
        for c in self.codewords() {
            dist[c.count_ones() as usize] += 1;
        }
        dist
    }

    /// Smallest weight of a non-zero codeword.
    pub fn minimum_weight(&self) -> usize {
        self.weight_distribution()
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &n)| n > 0)
            .map(|(w, _)| w)
            .expect("code has non-zero words")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residues_mod_23() {
        assert_eq!(
            quadratic_residues(23),
            vec![1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18]
        );
    }

    #[test]
    fn generator_is_the_residue_factor() {
        let code = GolayCode::quadratic_residue();
        // X^11 + X^9 + X^7 + X^6 + X^5 + X + 1
        assert_eq!(code.generator(), 0xAE3);
        assert!(code.generator_divides_modulus());
    }

    #[test]
    fn weight_enumerator() {
        let dist = GolayCode::quadratic_residue().weight_distribution();
        let mut expected = [0usize; 24];
        for (w, n) in [
            (0, 1),
            (7, 253),
            (8, 506),
            (11, 1288),
            (12, 1288),
            (15, 506),
            (16, 253),
            (23, 1),
        ] {
            expected[w] = n;
        }
        assert_eq!(dist, expected);
        assert_eq!(GolayCode::quadratic_residue().minimum_weight(), 7);
    }

    #[test]
    fn polynomial_arithmetic() {
        // (X + 1)^2 = X^2 + 1 over GF(2)
        assert_eq!(poly_mul(0b11, 0b11), 0b101);
        assert_eq!(poly_rem(0b101, 0b11), 0);
        assert_eq!(poly_gcd(0b101, 0b110), 0b11);
        // X^23 + 1 = (X + 1) g(X) g*(X)
        let g = 0xAE3;
        let g_rev = 0xC75;
        assert_eq!(poly_mul(poly_mul(0b11, g), g_rev), GolayCode::modulus());
    }
}
