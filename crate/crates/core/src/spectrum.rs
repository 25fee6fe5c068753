//! Exact spectra of strongly regular graphs.
//!
//! Eigenvalues are elements `a + b·√d` of a real quadratic field with `a`,
//! `b` rational and `d` square-free, so the conference-graph case stays
//! exact. Everything else in this crate only produces rational eigenvalues.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};
use thiserror::Error;

use crate::graph::SrgParams;
use crate::linalg::{rank_lower_bound, ExactMatrix};
use crate::profile::{DesignProfile, NotQuasiSymmetric};

/// `rational + surd·√radicand`, with `radicand` square-free; `radicand` is 1
/// exactly when `surd` is zero.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Eigenvalue {
    #[serde_as(as = "DisplayFromStr")]
    rational: BigRational,
    #[serde_as(as = "DisplayFromStr")]
    surd: BigRational,
    #[serde_as(as = "DisplayFromStr")]
    radicand: u64,
}

impl Eigenvalue {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Eigenvalue::rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(q: BigRational) -> Self {
        Eigenvalue {
            rational: q,
            surd: BigRational::zero(),
            radicand: 1,
        }
    }

    /// `a + b·√d`, pulling square factors of `d` into `b`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Self {
        let (square, free) = split_square(d);
        let surd = b * BigRational::from_integer(square.into());
        if surd.is_zero() || free == 1 {
            return Eigenvalue::rational(a + if free == 1 { surd } else { BigRational::zero() });
        }
        Eigenvalue {
            rational: a,
            surd,
            radicand: free,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.surd.is_zero().then_some(&self.rational)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn surd_part(&self) -> (&BigRational, u64) {
        (&self.surd, self.radicand)
    }

    /// Approximate value, for display and ordering only.
    pub fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.surd.to_f64().unwrap_or(f64::NAN);
        a + b * (self.radicand as f64).sqrt()
    }
}

impl fmt::Display for Eigenvalue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            return write!(f, "{}", self.rational);
        }
        if !self.rational.is_zero() {
            write!(f, "{} ", self.rational)?;
            f.write_str(if self.surd.is_negative() { "- " } else { "+ " })?;
        } else if self.surd.is_negative() {
            f.write_str("-")?;
        }
        write!(f, "{}·√{}", self.surd.abs(), self.radicand)
    }
}

/// `d = s²·f` with `f` square-free.
fn split_square(d: u64) -> (u64, u64) {
    if d == 0 {
        return (0, 1);
    }
    let mut square = 1;
    let mut free = d;
    let mut p = 2;
    while p * p <= free {
        while free % (p * p) == 0 {
            free /= p * p;
            square *= p;
        }
        p += 1;
    }
    (square, free)
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub eigenvalue: Eigenvalue,
    #[serde_as(as = "DisplayFromStr")]
    pub multiplicity: usize,
}

/// Eigenvalues with multiplicities. Equal eigenvalues are merged and
/// zero multiplicities dropped; entries keep their first-seen order.
///
/// Equality compares multisets, ignoring entry order.
#[derive(Debug, Clone, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    entries: Vec<SpectrumEntry>,
}

impl Spectrum {
    pub fn new(items: impl IntoIterator<Item = (Eigenvalue, usize)>) -> Self {
        let mut entries: Vec<SpectrumEntry> = Vec::new();
        for (eigenvalue, multiplicity) in items {
            if multiplicity == 0 {
                continue;
            }
            match entries.iter_mut().find(|e| e.eigenvalue == eigenvalue) {
                Some(e) => e.multiplicity += multiplicity,
                None => entries.push(SpectrumEntry {
                    eigenvalue,
                    multiplicity,
                }),
            }
        }
        Spectrum { entries }
    }

    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn multiplicity_of(&self, eigenvalue: &Eigenvalue) -> usize {
        self.entries
            .iter()
            .find(|e| &e.eigenvalue == eigenvalue)
            .map_or(0, |e| e.multiplicity)
    }

    /// `Σ multiplicity · eigenvalue`, as a rational part plus one surd
    /// coefficient per radicand.
    pub fn trace(&self) -> (BigRational, BTreeMap<u64, BigRational>) {
        let mut rational = BigRational::zero();
        let mut surds: BTreeMap<u64, BigRational> = BTreeMap::new();
        for e in &self.entries {
            let m = BigRational::from_integer(e.multiplicity.into());
            rational += &m * &e.eigenvalue.rational;
            if !e.eigenvalue.surd.is_zero() {
                *surds
                    .entry(e.eigenvalue.radicand)
                    .or_insert_with(BigRational::zero) += &m * &e.eigenvalue.surd;
            }
        }
        surds.retain(|_, c| !c.is_zero());
        (rational, surds)
    }

    /// The trace of an adjacency matrix is 0.
    pub fn trace_is_zero(&self) -> bool {
        let (rational, surds) = self.trace();
        rational.is_zero() && surds.is_empty()
    }
}

impl PartialEq for Spectrum {
    fn eq(&self, other: &Spectrum) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .all(|e| other.multiplicity_of(&e.eigenvalue) == e.multiplicity)
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {}", e.eigenvalue, e.multiplicity)?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("infeasible parameters {0}")]
    Infeasible(SrgParams),
    #[error("parameters {0} give non-integral eigenvalue multiplicities")]
    NonIntegralMultiplicity(SrgParams),
    #[error(transparent)]
    NotQuasiSymmetric(#[from] NotQuasiSymmetric),
    #[error("profile lacks {0}")]
    IncompleteProfile(&'static str),
    #[error("{what} = {value} is not an integer")]
    NonIntegral {
        what: &'static str,
        value: BigRational,
    },
    #[error("{what} = {value} is not positive")]
    NonPositive {
        what: &'static str,
        value: BigRational,
    },
    #[error("b = {b} < v = {v}")]
    FewerBlocksThanPoints { b: usize, v: usize },
}

/// The spectrum of a strongly regular graph with parameters `p`: the degree
/// with multiplicity 1, and the two roots of `z² − (λ−μ)z − (k−μ)` with
/// multiplicities from `f + g = n − 1`, `k + f·r + g·s = 0`.
pub fn srg_spectrum(p: &SrgParams) -> Result<Spectrum, SpectrumError> {
    if !p.is_feasible() || p.mu_common == 0 {
        return Err(SpectrumError::Infeasible(*p));
    }
    let n = p.n as i128;
    let k = p.degree as i128;
    let d = p.lambda_common as i128 - p.mu_common as i128;
    let disc = d * d + 4 * (k - p.mu_common as i128);
    if disc <= 0 {
        return Err(SpectrumError::Infeasible(*p));
    }
    let root = isqrt(disc as u128) as i128;
    let int = |x: i128| Eigenvalue::integer(x);

    if root * root == disc {
        // d and root have the same parity, so both eigenvalues are integers
        let (r, s) = ((d + root) / 2, (d - root) / 2);
        let f_num = -k - (n - 1) * s;
        let g_num = k + (n - 1) * r;
        let gap = r - s;
        if f_num % gap != 0 || g_num % gap != 0 || f_num < 0 || g_num < 0 {
            return Err(SpectrumError::NonIntegralMultiplicity(*p));
        }
        return Ok(Spectrum::new([
            (int(k), 1),
            (int(r), (f_num / gap) as usize),
            (int(s), (g_num / gap) as usize),
        ]));
    }

    // Irrational eigenvalues force equal multiplicities (the conference case).
    if 2 * k + (n - 1) * d != 0 || (n - 1) % 2 != 0 {
        return Err(SpectrumError::NonIntegralMultiplicity(*p));
    }
    let half = |x: i128| BigRational::new(x.into(), 2.into());
    let m = ((n - 1) / 2) as usize;
    Ok(Spectrum::new([
        (int(k), 1),
        (Eigenvalue::quadratic(half(d), half(1), disc as u64), m),
        (Eigenvalue::quadratic(half(d), half(-1), disc as u64), m),
    ]))
}

fn q(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn integral(what: &'static str, value: BigRational) -> Result<BigInt, SpectrumError> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(SpectrumError::NonIntegral { what, value })
    }
}

/// Quasi-symmetric parameters `(v, b, k, r, λ, x, y)` read from a profile.
pub(crate) struct QsParams {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda: usize,
    pub x: usize,
    pub y: usize,
}

impl QsParams {
    pub fn from_profile(pr: &DesignProfile) -> Result<Self, SpectrumError> {
        let (x, y) = pr.quasi_symmetric()?;
        Ok(QsParams {
            v: pr.v,
            b: pr.b,
            k: pr.k,
            r: pr.r.ok_or(SpectrumError::IncompleteProfile("r"))?,
            lambda: pr
                .lambda2
                .ok_or(SpectrumError::IncompleteProfile("lambda2"))?,
            x,
            y,
        })
    }
}

/// Degree of the block graph: a block meets the other `b − 1` blocks in
/// `k(r − 1)` points in total, each in `x` or `y` points.
pub fn block_graph_valency(pr: &DesignProfile) -> Result<BigInt, SpectrumError> {
    let p = QsParams::from_profile(pr)?;
    let num = q(p.k) * (q(p.r) - q(1)) - q(p.x) * (q(p.b) - q(1));
    let value = num / (q(p.y) - q(p.x));
    if value.is_negative() {
        return Err(SpectrumError::NonPositive {
            what: "block graph valency",
            value,
        });
    }
    integral("block graph valency", value)
}

/// Block-graph eigenvalues other than the valency:
/// `((r − λ − k + x)/(y − x), −(k − x)/(y − x))`.
pub fn block_graph_eigenvalues(pr: &DesignProfile) -> Result<(BigInt, BigInt), SpectrumError> {
    let p = QsParams::from_profile(pr)?;
    let gap = q(p.y) - q(p.x);
    let theta1 = (q(p.r) + q(p.x) - q(p.lambda) - q(p.k)) / &gap;
    let theta2 = -(q(p.k) - q(p.x)) / &gap;
    Ok((
        integral("first block graph eigenvalue", theta1)?,
        integral("second block graph eigenvalue", theta2)?,
    ))
}

/// Spectrum of the block graph predicted from the design parameters alone:
/// the valency once, `(r − λ − k + x)/(y − x)` with multiplicity `v − 1`,
/// and `−(k − x)/(y − x)` with multiplicity `b − v`.
pub fn predicted_block_graph_spectrum(pr: &DesignProfile) -> Result<Spectrum, SpectrumError> {
    let p = QsParams::from_profile(pr)?;
    if p.b < p.v {
        return Err(SpectrumError::FewerBlocksThanPoints { b: p.b, v: p.v });
    }
    let valency = block_graph_valency(pr)?;
    let (theta1, theta2) = block_graph_eigenvalues(pr)?;
    Ok(Spectrum::new([
        (Eigenvalue::integer(valency), 1),
        (Eigenvalue::integer(theta1), p.v - 1),
        (Eigenvalue::integer(theta2), p.b - p.v),
    ]))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultiplicityError {
    #[error("spectrum has dimension {spectrum}, matrix has size {matrix}")]
    Dimension { spectrum: usize, matrix: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("eigenvalue {0} is irrational; only rational spectra can be certified")]
    Irrational(Box<Eigenvalue>),
    #[error("rank of (M - {eigenvalue}·I) is at least {found}, expected {expected}")]
    Rank {
        eigenvalue: Box<Eigenvalue>,
        expected: usize,
        found: usize,
    },
}

/// Confirms that `rank(M − θI) = n − m` for every `(θ, m)` in `spectrum`
/// using modular ranks.
///
/// A modular rank is a lower bound for the rational rank, so each check shows
/// `nullity(M − θI) ≤ m`. For the conclusion to be exact, the caller must
/// know that `M` is symmetric and has no eigenvalues outside `spectrum`
/// (for example because `M` satisfies a verified polynomial identity whose
/// roots are listed). Then the nullities sum to `n = Σ m` and every
/// inequality is an equality.
pub fn certify_multiplicities(
    m: &ExactMatrix,
    spectrum: &Spectrum,
) -> Result<(), MultiplicityError> {
    let n = m.rows();
    if !m.is_square() || spectrum.dimension() != n {
        return Err(MultiplicityError::Dimension {
            spectrum: spectrum.dimension(),
            matrix: n,
        });
    }
    if !m.is_symmetric() {
        return Err(MultiplicityError::NotSymmetric);
    }
    for e in spectrum.entries() {
        let theta = e
            .eigenvalue
            .as_rational()
            .ok_or_else(|| MultiplicityError::Irrational(Box::new(e.eigenvalue.clone())))?;
        // den·M − num·I has the same rank as M − θI
        let shifted = m.scale(theta.denom()).shift_diagonal(theta.numer());
        let found = rank_lower_bound(&shifted);
        let expected = n - e.multiplicity;
        if found != expected {
            return Err(MultiplicityError::Rank {
                eigenvalue: Box::new(e.eigenvalue.clone()),
                expected,
                found,
            });
        }
    }
    Ok(())
}
