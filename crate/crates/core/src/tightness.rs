//! The bound `b ≤ C(v,2)` for quasi-symmetric designs and its equality case,
//! checked mechanically on a concrete design.
//!
//! [`tightness_certificate`] runs every step and bundles the results:
//!
//! 1. The Gram identity `MᵀM = C(k,2)·I + C(y,2)·A + C(x,2)·(J − I − A)`,
//!    where `M` is the pair/block incidence matrix and `A` the block graph.
//! 2. The block graph is strongly regular, with the spectrum predicted from
//!    `(v, b, k, r, λ, x, y)`.
//! 3. The eigenvalues of `MᵀM` that follow from the Gram identity, all
//!    positive, with multiplicities confirmed by modular ranks.
//! 4. `M` has full column rank `b`, hence `b ≤ C(v,2)`.
//! 5. `f_p·M = (k − 1)·g_p` for every point `p`.
//! 6. When `b = C(v,2)`: `MMᵀ` lies in the span of `I`, `J` and the
//!    adjacency matrix of the triangular graph `T(v)`, and its entry on
//!    disjoint pairs is the constant number of blocks through four points.
//!
//! A failure in any step means a bug in this crate, since each step is a
//! theorem for quasi-symmetric designs; the certificate is then marked
//! [`CertificateStatus::Invalid`] with the first failing step.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::combinatorics::{binomial, binomial_usize, pair_count};
use crate::design::{Design, DesignError};
use crate::graph::{block_graph_unchecked, srg_check, triangular_graph, SrgParams};
use crate::linalg::{
    decompose_in_ija, full_rank_certificate, matmul, pair_block_matrix, pair_indicator_matrix,
    point_block_matrix, ExactMatrix, RankCertificate, SpanDecomposition,
};
use crate::profile::{profile, t_subset_count, DesignProfile, NotQuasiSymmetric, SubsetCount};
use crate::spectrum::{
    block_graph_eigenvalues, block_graph_valency, certify_multiplicities,
    predicted_block_graph_spectrum, srg_spectrum, Eigenvalue, QsParams, Spectrum, SpectrumError,
};

/// Number of blocks through a 4-subset of points.
#[serde_as]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FourSubsetCount {
    /// Every 4-subset lies in this many blocks.
    Constant(#[serde_as(as = "DisplayFromStr")] usize),
    NonConstant,
    /// `k < 4` (or `v < 4`): no block contains four points.
    Inapplicable,
}

impl FourSubsetCount {
    /// A non-zero constant: the design is a 4-design.
    pub fn is_four_design(&self) -> bool {
        matches!(self, FourSubsetCount::Constant(n) if *n > 0)
    }

    /// The count when it is the same for all 4-subsets; 0 when inapplicable.
    pub fn uniform_value(&self) -> Option<usize> {
        match self {
            FourSubsetCount::Constant(n) => Some(*n),
            FourSubsetCount::Inapplicable => Some(0),
            FourSubsetCount::NonConstant => None,
        }
    }
}

impl fmt::Display for FourSubsetCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FourSubsetCount::Constant(n) => write!(f, "{n}"),
            FourSubsetCount::NonConstant => f.write_str("non-constant"),
            FourSubsetCount::Inapplicable => f.write_str("inapplicable (k < 4)"),
        }
    }
}

/// Counts blocks over all `C(v,4)` point 4-subsets.
pub fn four_design_check(d: &Design) -> Result<FourSubsetCount, DesignError> {
    let k = d.block_size()?;
    if k < 4 || d.v() < 4 {
        return Ok(FourSubsetCount::Inapplicable);
    }
    Ok(match t_subset_count(d, 4) {
        SubsetCount::Constant(n) => FourSubsetCount::Constant(n),
        SubsetCount::Varies { .. } => FourSubsetCount::NonConstant,
    })
}

/// One eigenvalue of `MᵀM` with its multiplicity.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MtmEigenvalue {
    #[serde_as(as = "DisplayFromStr")]
    pub value: BigRational,
    #[serde_as(as = "DisplayFromStr")]
    pub multiplicity: usize,
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Eigenvalues of `MᵀM` implied by the Gram identity.
///
/// On the all-ones vector: `C(k,2) + C(y,2)·a + C(x,2)·(b − 1 − a)` with `a`
/// the block graph valency. On the other two eigenspaces of the block graph,
/// with eigenvalue `θ`: `(k−x)(k+x−1)/2 + (y−x)(y+x−1)/2 · θ`. For
/// `θ = −(k−x)/(y−x)` this is `(k−x)(k−y)/2`.
///
/// Returned in the order all-ones, `θ₁` (multiplicity `v − 1`), `θ₂`
/// (multiplicity `b − v`). Every value must be positive.
pub fn predicted_mtm_eigenvalues(pr: &DesignProfile) -> Result<Vec<MtmEigenvalue>, SpectrumError> {
    let p = QsParams::from_profile(pr)?;
    let valency = block_graph_valency(pr)?;
    let (theta1, theta2) = block_graph_eigenvalues(pr)?;
    let (k, x, y) = (q(p.k), q(p.x), q(p.y));
    let one = q(1);
    let two = q(2);

    let on_ones = q(binomial(p.k, 2))
        + q(binomial(p.y, 2)) * q(valency.clone())
        + q(binomial(p.x, 2)) * (q(p.b) - &one - q(valency));
    let base = (&k - &x) * (&k + &x - &one) / &two;
    let step = (&y - &x) * (&y + &x - &one) / &two;
    let first = &base + &step * q(theta1);
    let second = &base + &step * q(theta2);

    let closed_form = (&k - &x) * (&k - &y) / &two;
    if second != closed_form {
        return Err(SpectrumError::NonIntegral {
            what: "(k-x)(k-y)/2 disagrees with the Gram eigenvalue",
            value: second,
        });
    }
    let out = vec![
        MtmEigenvalue {
            value: on_ones,
            multiplicity: 1,
        },
        MtmEigenvalue {
            value: first,
            multiplicity: p.v - 1,
        },
        MtmEigenvalue {
            value: second,
            multiplicity: p
                .b
                .checked_sub(p.v)
                .ok_or(SpectrumError::FewerBlocksThanPoints { b: p.b, v: p.v })?,
        },
    ];
    for (what, e) in [
        "all-ones eigenvalue",
        "first eigenvalue",
        "second eigenvalue",
    ]
    .into_iter()
    .zip(&out)
    {
        if !e.value.is_positive() {
            return Err(SpectrumError::NonPositive {
                what,
                value: e.value.clone(),
            });
        }
    }
    Ok(out)
}

/// Shared matrices for one quasi-symmetric design.
struct Context {
    profile: DesignProfile,
    x: usize,
    y: usize,
    m: ExactMatrix,
    a: ExactMatrix,
    block_graph_srg: Result<SrgParams, String>,
}

impl Context {
    fn new(d: &Design) -> Result<Self, NotQuasiSymmetric> {
        let profile = profile(d).map_err(|_| NotQuasiSymmetric::NonUniform)?;
        Self::with_profile(d, profile)
    }

    fn with_profile(d: &Design, profile: DesignProfile) -> Result<Self, NotQuasiSymmetric> {
        let (x, y) = profile.quasi_symmetric()?;
        // x < y <= k - 1 forces k >= 2
        let m = pair_block_matrix(d).expect("quasi-symmetric blocks have size >= 2");
        let graph = block_graph_unchecked(d, y);
        let block_graph_srg = srg_check(&graph).map_err(|e| e.to_string());
        Ok(Context {
            profile,
            x,
            y,
            m,
            a: graph.adjacency_matrix(),
            block_graph_srg,
        })
    }

    fn k(&self) -> usize {
        self.profile.k
    }

    fn mtm(&self) -> ExactMatrix {
        matmul(&self.m.transpose(), &self.m).expect("conformable")
    }

    fn gram_rhs(&self) -> ExactMatrix {
        let b = self.profile.b;
        let i = ExactMatrix::identity(b);
        let j = ExactMatrix::ones(b, b);
        let rest = j.sub(&i).and_then(|t| t.sub(&self.a)).expect("same shape");
        let ck = BigInt::from(binomial(self.k(), 2));
        let cy = BigInt::from(binomial(self.y, 2));
        let cx = BigInt::from(binomial(self.x, 2));
        i.scale(&ck)
            .add(&self.a.scale(&cy))
            .and_then(|s| s.add(&rest.scale(&cx)))
            .expect("same shape")
    }

    fn gram_identity(&self, mtm: &ExactMatrix) -> bool {
        *mtm == self.gram_rhs()
    }

    fn fx_mapping(&self, d: &Design) -> bool {
        let f = pair_indicator_matrix(d.v());
        let g = point_block_matrix(d);
        let lhs = matmul(&f, &self.m).expect("conformable");
        lhs == g.scale(&BigInt::from(self.k() - 1))
    }

    fn bound(&self) -> BoundCheck {
        let rank = full_rank_certificate(&self.m);
        let (v, b) = (self.profile.v, self.profile.b);
        let pairs = binomial(v, 2);
        let b = BigUint::from(b);
        BoundCheck {
            rank_full: rank.full_column_rank,
            bound_ok: b <= pairs,
            is_tight: b == pairs,
            rank,
        }
    }
}

/// Entrywise comparison of `MᵀM` with `C(k,2)I + C(y,2)A + C(x,2)(J − I − A)`.
pub fn gram_identity_check(d: &Design) -> Result<bool, NotQuasiSymmetric> {
    let ctx = Context::new(d)?;
    Ok(ctx.gram_identity(&ctx.mtm()))
}

/// Rank and size checks behind `b ≤ C(v,2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub rank: RankCertificate,
    pub rank_full: bool,
    /// `b ≤ C(v,2)`, compared directly rather than derived from the rank.
    pub bound_ok: bool,
    pub is_tight: bool,
}

pub fn bound_check(d: &Design) -> Result<BoundCheck, NotQuasiSymmetric> {
    Ok(Context::new(d)?.bound())
}

/// `f_p·M = (k − 1)·g_p` for every point `p`, where `f_p` indicates the
/// pairs through `p` and `g_p` the blocks through `p`.
pub fn fx_mapping_check(d: &Design) -> Result<bool, NotQuasiSymmetric> {
    let ctx = Context::new(d)?;
    Ok(ctx.fx_mapping(d))
}

/// Steps of the certificate, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStep {
    GramIdentity,
    BlockGraph,
    MtmEigenvalues,
    RankCertificate,
    Bound,
    FxMapping,
    MmtDecomposition,
    FourSubsetCount,
    Biconditional,
}

impl fmt::Display for CheckStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckStep::GramIdentity => "Gram identity",
            CheckStep::BlockGraph => "block graph",
            CheckStep::MtmEigenvalues => "eigenvalues of M^T M",
            CheckStep::RankCertificate => "rank of M",
            CheckStep::Bound => "bound b <= C(v,2)",
            CheckStep::FxMapping => "f_p M = (k-1) g_p",
            CheckStep::MmtDecomposition => "decomposition of M M^T",
            CheckStep::FourSubsetCount => "4-subset counts",
            CheckStep::Biconditional => "tight iff 4-design",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateStatus {
    Valid,
    Invalid { step: CheckStep, detail: String },
}

/// Outcome of every check for one quasi-symmetric design.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessCertificate {
    pub profile: DesignProfile,
    pub gram_identity_ok: bool,
    /// Parameters of the block graph, absent if it failed the
    /// strong-regularity test.
    pub block_graph_srg: Option<SrgParams>,
    /// Directly computed block graph spectrum equals the prediction and its
    /// multiplicities pass the rank check.
    pub block_graph_spectrum_ok: bool,
    pub predicted_mtm_eigenvalues: Vec<MtmEigenvalue>,
    /// `rank(MᵀM − μI) = b − m` for every predicted `(μ, m)`.
    pub mtm_spectrum_ok: bool,
    pub rank: RankCertificate,
    pub rank_full: bool,
    pub bound_ok: bool,
    pub is_tight: bool,
    pub fx_mapping_ok: bool,
    /// `MMᵀ` over `{I, J, A(T(v))}`; present only for tight designs.
    pub mmt_decomposition: Option<SpanDecomposition>,
    pub lambda4: FourSubsetCount,
    pub is_four_design: bool,
    /// `tight ⇒ constant 4-subset count` and `4-design ⇒ tight`.
    pub four_design_iff_tight_ok: bool,
    pub status: CertificateStatus,
}

impl TightnessCertificate {
    pub fn is_valid(&self) -> bool {
        self.status == CertificateStatus::Valid
    }
}

/// Runs every check on a quasi-symmetric design.
pub fn tightness_certificate(d: &Design) -> Result<TightnessCertificate, NotQuasiSymmetric> {
    certify(d, Context::new(d)?)
}

/// As [`tightness_certificate`], reusing a profile already computed for `d`
/// (possibly with a capped strength search; only `t ≥ 2` matters here).
pub fn tightness_certificate_for(
    d: &Design,
    profile: &DesignProfile,
) -> Result<TightnessCertificate, NotQuasiSymmetric> {
    assert_eq!(
        (profile.v, profile.b),
        (d.v(), d.b()),
        "profile belongs to another design"
    );
    certify(d, Context::with_profile(d, profile.clone())?)
}

fn certify(d: &Design, ctx: Context) -> Result<TightnessCertificate, NotQuasiSymmetric> {
    let mut failures: Vec<(CheckStep, String)> = Vec::new();
    let mut fail = |step, detail: String| failures.push((step, detail));

    let mtm = ctx.mtm();
    let gram_identity_ok = ctx.gram_identity(&mtm);
    if !gram_identity_ok {
        let diff = mtm.first_difference(&ctx.gram_rhs());
        fail(
            CheckStep::GramIdentity,
            format!("first differing entry {diff:?}"),
        );
    }

    let block_graph_srg = ctx.block_graph_srg.as_ref().ok().copied();
    let block_graph_spectrum_ok = match &ctx.block_graph_srg {
        Err(reason) => {
            fail(
                CheckStep::BlockGraph,
                format!("not strongly regular: {reason}"),
            );
            false
        }
        Ok(params) => match (
            srg_spectrum(params),
            predicted_block_graph_spectrum(&ctx.profile),
        ) {
            (Ok(direct), Ok(predicted)) if direct == predicted => {
                match certify_multiplicities(&ctx.a, &direct) {
                    Ok(()) => true,
                    Err(e) => {
                        fail(CheckStep::BlockGraph, e.to_string());
                        false
                    }
                }
            }
            (Ok(direct), Ok(predicted)) => {
                fail(
                    CheckStep::BlockGraph,
                    format!("spectrum {direct} differs from predicted {predicted}"),
                );
                false
            }
            (Err(e), _) | (_, Err(e)) => {
                fail(CheckStep::BlockGraph, e.to_string());
                false
            }
        },
    };

    let (predicted_mtm_eigenvalues, mtm_spectrum_ok) = match predicted_mtm_eigenvalues(&ctx.profile)
    {
        Err(e) => {
            fail(CheckStep::MtmEigenvalues, e.to_string());
            (Vec::new(), false)
        }
        Ok(list) => {
            // Only sound once MᵀM is known to be a polynomial in an SRG
            // adjacency matrix, so that no other eigenvalues can occur.
            let ok = gram_identity_ok && block_graph_srg.is_some() && {
                let spectrum = Spectrum::new(
                    list.iter()
                        .map(|e| (Eigenvalue::rational(e.value.clone()), e.multiplicity)),
                );
                match certify_multiplicities(&mtm, &spectrum) {
                    Ok(()) => true,
                    Err(e) => {
                        fail(CheckStep::MtmEigenvalues, e.to_string());
                        false
                    }
                }
            };
            if !ok && gram_identity_ok && block_graph_srg.is_none() {
                fail(
                    CheckStep::MtmEigenvalues,
                    "block graph not strongly regular".into(),
                );
            }
            (list, ok)
        }
    };

    let bound = ctx.bound();
    if !bound.rank_full {
        fail(
            CheckStep::RankCertificate,
            format!(
                "rank {} < b = {} ({})",
                bound.rank.rank, ctx.profile.b, bound.rank.method
            ),
        );
    }
    if !bound.bound_ok {
        fail(
            CheckStep::Bound,
            format!(
                "b = {} > C({},2) = {}",
                ctx.profile.b,
                ctx.profile.v,
                pair_count(ctx.profile.v)
            ),
        );
    }

    let fx_mapping_ok = ctx.fx_mapping(d);
    if !fx_mapping_ok {
        fail(
            CheckStep::FxMapping,
            "f_p M != (k-1) g_p for some point".into(),
        );
    }

    let lambda4 = four_design_check(d).expect("uniform");
    let is_four_design = lambda4.is_four_design();

    let mmt_decomposition = if bound.is_tight {
        let mmt = matmul(&ctx.m, &ctx.m.transpose()).expect("conformable");
        let t = triangular_graph(ctx.profile.v).adjacency_matrix();
        match decompose_in_ija(&mmt, &t) {
            Ok(dec) => {
                let lambda2 = ctx.profile.lambda2.map(q);
                if Some(dec.diagonal_entry()) != lambda2 {
                    fail(
                        CheckStep::MmtDecomposition,
                        format!("diagonal {} differs from lambda2", dec.diagonal_entry()),
                    );
                }
                match lambda4.uniform_value() {
                    Some(n) if dec.non_adjacent_entry() == q(n) => {}
                    _ => fail(
                        CheckStep::FourSubsetCount,
                        format!(
                            "disjoint-pair entry {} but 4-subset count {}",
                            dec.non_adjacent_entry(),
                            lambda4
                        ),
                    ),
                }
                Some(dec)
            }
            Err(e) => {
                fail(CheckStep::MmtDecomposition, e.to_string());
                None
            }
        }
    } else {
        None
    };

    let forward = !bound.is_tight || lambda4.uniform_value().is_some();
    let backward = !is_four_design || bound.is_tight;
    let four_design_iff_tight_ok = forward && backward;
    if !four_design_iff_tight_ok {
        fail(
            CheckStep::Biconditional,
            format!("is_tight = {}, lambda4 = {}", bound.is_tight, lambda4),
        );
    }

    let status = match failures.into_iter().next() {
        None => CertificateStatus::Valid,
        Some((step, detail)) => CertificateStatus::Invalid { step, detail },
    };

    Ok(TightnessCertificate {
        profile: ctx.profile.clone(),
        gram_identity_ok,
        block_graph_srg,
        block_graph_spectrum_ok,
        predicted_mtm_eigenvalues,
        mtm_spectrum_ok,
        rank_full: bound.rank_full,
        bound_ok: bound.bound_ok,
        is_tight: bound.is_tight,
        rank: bound.rank,
        fx_mapping_ok,
        mmt_decomposition,
        lambda4,
        is_four_design,
        four_design_iff_tight_ok,
        status,
    })
}

/// `C(k,2) − C(x,2)`, the coefficient of `I` once `J` is split off.
pub fn identity_coefficient(k: usize, x: usize) -> Option<usize> {
    binomial_usize(k, 2)?.checked_sub(binomial_usize(x, 2)?)
}
