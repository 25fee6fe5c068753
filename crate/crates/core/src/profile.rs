//! Numeric invariants of a uniform set system: replication, pair counts,
//! block intersection sizes, degree and strength.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::design::{Design, DesignError};

/// Invariants of a uniform design.
///
/// `r` and `lambda2` are present when the corresponding count is the same
/// for every point (resp. pair). `x`/`y` are present exactly when the degree
/// is 2.
#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignProfile {
    #[serde_as(as = "DisplayFromStr")]
    pub v: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub b: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub k: usize,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub r: Option<usize>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub lambda2: Option<usize>,
    /// Distinct sizes `|B ∩ B'|` over pairs of distinct blocks, ascending.
    #[serde_as(as = "Vec<DisplayFromStr>")]
    pub intersections: Vec<usize>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub x: Option<usize>,
    #[serde_as(as = "Option<DisplayFromStr>")]
    pub y: Option<usize>,
    /// Degree: number of distinct intersection sizes.
    #[serde_as(as = "DisplayFromStr")]
    pub s: usize,
    /// Strength, searched up to the cap the profile was computed with.
    #[serde_as(as = "DisplayFromStr")]
    pub t: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub e: usize,
}

impl DesignProfile {
    pub fn is_two_design(&self) -> bool {
        self.t >= 2
    }

    /// `(x, y)` when this is a 2-design of degree 2.
    pub fn quasi_symmetric(&self) -> Result<(usize, usize), NotQuasiSymmetric> {
        if self.t < 2 {
            return Err(NotQuasiSymmetric::NotTwoDesign { strength: self.t });
        }
        match (self.x, self.y) {
            (Some(x), Some(y)) if self.s == 2 => Ok((x, y)),
            _ => Err(NotQuasiSymmetric::Degree { degree: self.s }),
        }
    }
}

/// Why a design is not quasi-symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotQuasiSymmetric {
    #[error("blocks are not all the same size")]
    NonUniform,
    #[error("not a 2-design (strength {strength})")]
    NotTwoDesign { strength: usize },
    #[error("degree {degree}, not 2")]
    Degree { degree: usize },
}

/// Result of counting the blocks through every `t`-subset of points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubsetCount {
    /// Every `t`-subset lies in exactly this many blocks (possibly zero).
    Constant(usize),
    /// Two `t`-subsets with different counts; the first is the
    /// lexicographically smallest subset.
    Varies {
        first: (Vec<usize>, usize),
        witness: (Vec<usize>, usize),
    },
}

impl SubsetCount {
    pub fn constant(&self) -> Option<usize> {
        match self {
            SubsetCount::Constant(n) => Some(*n),
            SubsetCount::Varies { .. } => None,
        }
    }

    /// Constant and non-zero: the defining condition of a `t`-design.
    pub fn is_design_level(&self) -> bool {
        matches!(self, SubsetCount::Constant(n) if *n > 0)
    }
}

impl fmt::Display for SubsetCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubsetCount::Constant(n) => write!(f, "constant {n}"),
            SubsetCount::Varies { first, witness } => write!(
                f,
                "non-constant: {:?} in {} blocks, {:?} in {}",
                first.0, first.1, witness.0, witness.1
            ),
        }
    }
}

/// Counts the blocks through every `t`-subset of points, stopping at the
/// first subset whose count differs from the first one seen.
///
/// Subsets are visited in lexicographic order. The set of blocks through a
/// prefix is kept as a bit vector, so each extension costs one AND over
/// `b` bits.
pub fn t_subset_count(d: &Design, t: usize) -> SubsetCount {
    let v = d.v();
    if t == 0 {
        return SubsetCount::Constant(d.b());
    }
    if t > v {
        // no t-subsets at all: vacuously constant
        return SubsetCount::Constant(0);
    }
    let incidence = d.point_incidence();
    let mut masks: Vec<BitSet> = vec![BitSet::full(d.b()); t + 1];
    let mut chosen: Vec<usize> = Vec::with_capacity(t);
    let mut first: Option<(Vec<usize>, usize)> = None;

    // Depth-first over increasing point sequences; `next[depth]` is the next
    // candidate point at that depth.
    let mut next = vec![0usize; t];
    let mut depth = 0;
    loop {
        // the remaining t - depth points must still fit into 0..v
        if next[depth] + (t - depth) > v {
            if depth == 0 {
                break;
            }
            depth -= 1;
            chosen.pop();
            continue;
        }
        let p = next[depth];
        next[depth] += 1;
        let (lo, hi) = masks.split_at_mut(depth + 1);
        lo[depth].intersection_into(&incidence[p], &mut hi[0]);
        chosen.push(p);
        if depth + 1 == t {
            let count = hi[0].count();
            match &first {
                None => first = Some((chosen.clone(), count)),
                Some((_, c)) if *c != count => {
                    return SubsetCount::Varies {
                        first: first.unwrap(),
                        witness: (chosen, count),
                    };
                }
                Some(_) => {}
            }
            chosen.pop();
        } else {
            depth += 1;
            next[depth] = p + 1;
        }
    }
    SubsetCount::Constant(first.map_or(0, |(_, c)| c))
}

/// Largest `t <= min(cap, k)` such that `d` is a `t`-design, or 0 if even the
/// replication numbers are unequal.
///
/// A `t`-design is also a `t'`-design for every `t' < t`, so the search stops
/// at the first level that fails.
pub fn strength(d: &Design, cap: usize) -> Result<usize, DesignError> {
    let k = d.block_size()?;
    let mut t = 0;
    for level in 1..=cap.min(k) {
        if !t_subset_count(d, level).is_design_level() {
            break;
        }
        t = level;
    }
    Ok(t)
}

/// Distinct intersection sizes over all pairs of distinct blocks.
pub fn intersection_numbers(d: &Design) -> Vec<usize> {
    let blocks = d.blocks();
    let mut sizes = BTreeSet::new();
    for (i, a) in blocks.iter().enumerate() {
        for b in &blocks[i + 1..] {
            sizes.insert(a.intersection_count(b));
        }
    }
    sizes.into_iter().collect()
}

/// Profile with the strength search capped at the block size.
pub fn profile(d: &Design) -> Result<DesignProfile, DesignError> {
    profile_with_cap(d, usize::MAX)
}

/// Profile with the strength search capped at `min(cap, k)`.
pub fn profile_with_cap(d: &Design, cap: usize) -> Result<DesignProfile, DesignError> {
    let k = d.block_size()?;
    let r = t_subset_count(d, 1).constant();
    let lambda2 = t_subset_count(d, 2).constant();
    let intersections = intersection_numbers(d);
    let s = intersections.len();
    let (x, y) = match intersections.as_slice() {
        [x, y] => (Some(*x), Some(*y)),
        _ => (None, None),
    };
    let t = strength(d, cap)?;
    Ok(DesignProfile {
        v: d.v(),
        b: d.b(),
        k,
        r,
        lambda2,
        intersections,
        x,
        y,
        s,
        t,
        e: t / 2,
    })
}

/// Intersection numbers `(x, y)`, `x < y`, if `d` is a 2-design of degree 2.
pub fn quasi_symmetric_witness(d: &Design) -> Result<(usize, usize), NotQuasiSymmetric> {
    let t = strength(d, 2).map_err(|_| NotQuasiSymmetric::NonUniform)?;
    if t < 2 {
        return Err(NotQuasiSymmetric::NotTwoDesign { strength: t });
    }
    match intersection_numbers(d).as_slice() {
        [x, y] => Ok((*x, *y)),
        other => Err(NotQuasiSymmetric::Degree {
            degree: other.len(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Combinations;

    fn fano() -> Design {
        Design::new(7, (0..7).map(|i| [(1 + i) % 7, (2 + i) % 7, (4 + i) % 7])).unwrap()
    }

    fn complete(v: usize, k: usize) -> Design {
        Design::new(v, Combinations::new(v, k)).unwrap()
    }

    #[test]
    fn fano_plane_is_a_2_design_of_degree_1() {
        let p = profile(&fano()).unwrap();
        assert_eq!((p.b, p.k, p.r, p.lambda2), (7, 3, Some(3), Some(1)));
        assert_eq!(p.intersections, vec![1]);
        assert_eq!((p.s, p.t, p.e), (1, 2, 1));
        assert_eq!(
            quasi_symmetric_witness(&fano()),
            Err(NotQuasiSymmetric::Degree { degree: 1 })
        );
        assert_eq!(
            quasi_symmetric_witness(&fano()).unwrap_err().to_string(),
            "degree 1, not 2"
        );
    }

    #[test]
    fn all_triples_of_six_points_have_degree_three() {
        let d = complete(6, 3);
        assert_eq!(
            quasi_symmetric_witness(&d),
            Err(NotQuasiSymmetric::Degree { degree: 3 })
        );
        assert_eq!(profile(&d).unwrap().intersections, vec![0, 1, 2]);
    }

    #[test]
    fn single_block_profile_is_degenerate() {
        let d = Design::new(5, [[0, 1, 2]]).unwrap();
        let p = profile(&d).unwrap();
        assert_eq!(p.b, 1);
        assert!(p.intersections.is_empty());
        assert_eq!((p.s, p.t), (0, 0));
        assert!(!p.is_two_design());
        assert_eq!(p.r, None);
        assert_eq!(
            quasi_symmetric_witness(&d),
            Err(NotQuasiSymmetric::NotTwoDesign { strength: 0 })
        );
    }

    #[test]
    fn non_uniform_designs_have_no_profile() {
        let d = Design::new(4, vec![vec![0, 1], vec![1, 2, 3]]).unwrap();
        assert!(matches!(profile(&d), Err(DesignError::NonUniform { .. })));
        assert_eq!(
            quasi_symmetric_witness(&d),
            Err(NotQuasiSymmetric::NonUniform)
        );
    }

    #[test]
    fn varying_counts_carry_witnesses() {
        let d = Design::new(4, [[0, 1], [1, 2]]).unwrap();
        match t_subset_count(&d, 1) {
            SubsetCount::Varies { first, witness } => {
                assert_eq!(first, (vec![0], 1));
                assert_eq!(witness, (vec![1], 2));
            }
            other => panic!("expected variation, got {other}"),
        }
    }

    #[test]
    fn complete_designs_reach_full_strength() {
        // every k-subset is a block, so the count at level k is exactly 1
        assert_eq!(strength(&complete(7, 5), usize::MAX), Ok(5));
        assert_eq!(strength(&complete(7, 5), 3), Ok(3));
        assert_eq!(t_subset_count(&complete(7, 5), 5), SubsetCount::Constant(1));
        assert_eq!(t_subset_count(&complete(5, 3), 4), SubsetCount::Constant(0));
    }

    #[test]
    fn profile_json_uses_decimal_strings() {
        let p = profile(&fano()).unwrap();
        let json = serde_json::to_string(&p).unwrap();
        assert!(
            json.starts_with(r#"{"v":"7","b":"7","k":"3","r":"3""#),
            "{json}"
        );
        let back: DesignProfile = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
    }
}
