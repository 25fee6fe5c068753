//! Witness designs for the tight case and a small corpus of non-tight ones.
//!
//! Everything here is built from first principles at call time; nothing is
//! read from data files.

pub mod golay;

use std::sync::OnceLock;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::combinatorics::{binomial_usize, pairs, Combinations};
use crate::design::{Design, DesignError};
use crate::profile::{profile, DesignProfile};

pub use golay::GolayCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("need at least {min} points, got {v}")]
    TooFewPoints { v: usize, min: usize },
    #[error("no design found with the requested parameters")]
    NotFound,
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// The Steiner system S(4,7,23): supports of the weight-7 words of the
/// length-23 Golay code, sorted lexicographically by point list.
///
/// # Panics
///
/// If the code or the design fails its self-check (a bug in this crate).
pub fn golay_witt_design() -> Design {
    static WITT: OnceLock<Design> = OnceLock::new();
    WITT.get_or_init(build_witt).clone()
}

fn build_witt() -> Design {
    let code = GolayCode::quadratic_residue();
    assert!(
        code.generator_divides_modulus(),
        "generator does not divide X^23 + 1"
    );
    let dist = code.weight_distribution();
    assert_eq!(dist.iter().sum::<usize>(), 4096, "Golay code size");
    assert!(
        dist[1..7].iter().all(|&n| n == 0),
        "Golay code has words of weight < 7: {dist:?}"
    );
    assert_eq!(dist[7], 253, "Golay code weight-7 count");

    let mut blocks: Vec<Vec<usize>> = code
        .codewords()
        .filter(|c| c.count_ones() == 7)
        .map(|c| (0..golay::LENGTH).filter(|&i| c >> i & 1 == 1).collect())
        .collect();
    blocks.sort();
    let d = Design::new(golay::LENGTH, blocks).expect("distinct codewords have distinct supports");

    let p = profile(&d).expect("weight-7 supports are uniform");
    assert_eq!(
        (p.b, p.k, p.t, p.x, p.y),
        (253, 7, 4, Some(1), Some(3)),
        "Witt design self-check failed: {p:?}"
    );
    d
}

/// Replaces every block by its complement in the point set, keeping order.
pub fn complement_design(d: &Design) -> Result<Design, DesignError> {
    let blocks = d
        .blocks()
        .iter()
        .map(BitSet::complement)
        .collect::<Vec<_>>();
    if let Some(block) = blocks.iter().position(BitSet::is_empty) {
        return Err(DesignError::FullBlock { block });
    }
    Design::from_bitsets(d.v(), blocks)
}

/// All `(v-2)`-subsets of `0..v`, ordered lexicographically by the omitted
/// pair.
pub fn near_complete_design(v: usize) -> Result<Design, ConstructionError> {
    if v < 5 {
        return Err(ConstructionError::TooFewPoints { v, min: 5 });
    }
    let blocks = pairs(v)
        .into_iter()
        .map(|(a, b)| (0..v).filter(move |&p| p != a && p != b));
    Ok(Design::new(v, blocks)?)
}

/// All `k`-subsets of `0..v` in lexicographic order.
pub fn complete_design(v: usize, k: usize) -> Result<Design, ConstructionError> {
    if k == 0 || k > v {
        return Err(ConstructionError::NotFound);
    }
    Ok(Design::new(v, Combinations::new(v, k))?)
}

/// The Fano plane as the development of the difference set `{1, 2, 4}` mod 7.
pub fn fano_plane() -> Design {
    let base = [1, 2, 4];
    Design::new(7, (0..7).map(|i| base.map(|d| (d + i) % 7))).expect("Fano plane")
}

/// The lines of the affine plane AG(2,3), an S(2,3,9). Point `(a, b)` of
/// `Z_3^2` is numbered `3a + b`; lines are listed in lexicographic order.
pub fn affine_plane_3() -> Design {
    let mut lines: Vec<Vec<usize>> = Vec::new();
    for (da, db) in [(0, 1), (1, 0), (1, 1), (1, 2)] {
        for a in 0..3 {
            for b in 0..3 {
                let mut line: Vec<usize> = (0..3)
                    .map(|s| 3 * ((a + s * da) % 3) + (b + s * db) % 3)
                    .collect();
                line.sort_unstable();
                lines.push(line);
            }
        }
    }
    lines.sort();
    lines.dedup();
    Design::new(9, lines).expect("AG(2,3)")
}

/// First family of `k`-subsets of `0..v`, in lexicographic order of index
/// sets, in which every pair of points lies in exactly `lambda` members.
///
/// Backtracking over the `C(v,k)` candidate blocks with pair counts capped at
/// `lambda`; the first complete family found is the lexicographically first.
pub fn first_pair_balanced_family(
    v: usize,
    k: usize,
    lambda: usize,
) -> Result<Design, ConstructionError> {
    let pair_total = lambda * binomial_usize(v, 2).ok_or(ConstructionError::NotFound)?;
    let per_block = binomial_usize(k, 2).ok_or(ConstructionError::NotFound)?;
    if k < 2 || pair_total % per_block != 0 {
        return Err(ConstructionError::NotFound);
    }
    let b = pair_total / per_block;
    let candidates: Vec<Vec<usize>> = Combinations::new(v, k).collect();
    let cover: Vec<Vec<usize>> = candidates
        .iter()
        .map(|blk| {
            Combinations::new(blk.len(), 2)
                .map(|ij| crate::combinatorics::pair_index(v, blk[ij[0]], blk[ij[1]]))
                .collect()
        })
        .collect();

    let mut counts = vec![0usize; binomial_usize(v, 2).unwrap()];
    let mut chosen: Vec<usize> = Vec::with_capacity(b);

    fn search(
        start: usize,
        b: usize,
        lambda: usize,
        cover: &[Vec<usize>],
        counts: &mut [usize],
        chosen: &mut Vec<usize>,
    ) -> bool {
        if chosen.len() == b {
            return counts.iter().all(|&c| c == lambda);
        }
        for cand in start..cover.len() {
            if cover.len() - cand < b - chosen.len() {
                return false;
            }
            if cover[cand].iter().any(|&p| counts[p] == lambda) {
                continue;
            }
            cover[cand].iter().for_each(|&p| counts[p] += 1);
            chosen.push(cand);
            if search(cand + 1, b, lambda, cover, counts, chosen) {
                return true;
            }
            chosen.pop();
            cover[cand].iter().for_each(|&p| counts[p] -= 1);
        }
        false
    }

    if !search(0, b, lambda, &cover, &mut counts, &mut chosen) {
        return Err(ConstructionError::NotFound);
    }
    Ok(Design::new(
        v,
        chosen.iter().map(|&i| candidates[i].clone()),
    )?)
}

/// The 2-(6,3,2) design, found by search.
pub fn design_6_3_2() -> Design {
    first_pair_balanced_family(6, 3, 2).expect("a 2-(6,3,2) design exists")
}

/// Profile values recorded from an exhaustive brute-force count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedProfile {
    pub v: usize,
    pub b: usize,
    pub k: usize,
    pub r: usize,
    pub lambda2: usize,
    pub intersections: &'static [usize],
    pub t: usize,
}

impl ExpectedProfile {
    pub fn matches(&self, p: &DesignProfile) -> bool {
        p.v == self.v
            && p.b == self.b
            && p.k == self.k
            && p.r == Some(self.r)
            && p.lambda2 == Some(self.lambda2)
            && p.intersections == self.intersections
            && p.t == self.t
    }

    pub fn is_quasi_symmetric(&self) -> bool {
        self.t >= 2 && self.intersections.len() == 2
    }

    pub fn is_tight(&self) -> bool {
        self.is_quasi_symmetric() && Some(self.b) == binomial_usize(self.v, 2)
    }
}

/// A named corpus design together with its fixture.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    /// Command-line name, e.g. `witt-23-7`.
    pub name: &'static str,
    /// Conventional title, e.g. `S(4,7,23)`.
    pub title: &'static str,
    pub design: Design,
    pub expected: ExpectedProfile,
}

struct Recipe {
    name: &'static str,
    title: &'static str,
    build: fn() -> Design,
    expected: ExpectedProfile,
}

const fn fixture(
    v: usize,
    b: usize,
    k: usize,
    r: usize,
    lambda2: usize,
    intersections: &'static [usize],
    t: usize,
) -> ExpectedProfile {
    ExpectedProfile {
        v,
        b,
        k,
        r,
        lambda2,
        intersections,
        t,
    }
}

fn witt_complement() -> Design {
    complement_design(&golay_witt_design()).expect("Witt blocks are proper subsets")
}

fn near_complete(v: usize) -> Design {
    near_complete_design(v).expect("v >= 5")
}

// Fixture values were produced by an independent brute-force count over all
// points, pairs, block pairs and t-subsets.
const RECIPES: &[Recipe] = &[
    Recipe {
        name: "fano-7",
        title: "S(2,3,7)",
        build: fano_plane,
        expected: fixture(7, 7, 3, 3, 1, &[1], 2),
    },
    Recipe {
        name: "ag-2-3",
        title: "S(2,3,9)",
        build: affine_plane_3,
        expected: fixture(9, 12, 3, 4, 1, &[0, 1], 2),
    },
    Recipe {
        name: "qs-6-3-2",
        title: "2-(6,3,2)",
        build: design_6_3_2,
        expected: fixture(6, 10, 3, 5, 2, &[1, 2], 2),
    },
    Recipe {
        name: "triples-6",
        title: "all 3-subsets of 6 points",
        build: || complete_design(6, 3).expect("6 >= 3"),
        expected: fixture(6, 20, 3, 10, 4, &[0, 1, 2], 3),
    },
    Recipe {
        name: "witt-23-7",
        title: "S(4,7,23)",
        build: golay_witt_design,
        expected: fixture(23, 253, 7, 77, 21, &[1, 3], 4),
    },
    Recipe {
        name: "witt-complement-23-16",
        title: "complement of S(4,7,23)",
        build: witt_complement,
        expected: fixture(23, 253, 16, 176, 120, &[10, 12], 4),
    },
    Recipe {
        name: "near-complete-5",
        title: "all 3-subsets of 5 points",
        build: || near_complete(5),
        expected: fixture(5, 10, 3, 6, 3, &[1, 2], 3),
    },
    Recipe {
        name: "near-complete-6",
        title: "all 4-subsets of 6 points",
        build: || near_complete(6),
        expected: fixture(6, 15, 4, 10, 6, &[2, 3], 4),
    },
    Recipe {
        name: "near-complete-7",
        title: "all 5-subsets of 7 points",
        build: || near_complete(7),
        expected: fixture(7, 21, 5, 15, 10, &[3, 4], 5),
    },
    Recipe {
        name: "near-complete-8",
        title: "all 6-subsets of 8 points",
        build: || near_complete(8),
        expected: fixture(8, 28, 6, 21, 15, &[4, 5], 6),
    },
];

/// Names accepted by [`corpus_entry`], in corpus order.
pub fn corpus_names() -> Vec<&'static str> {
    RECIPES.iter().map(|r| r.name).collect()
}

/// Builds every corpus design.
pub fn corpus() -> Vec<CorpusEntry> {
    RECIPES.iter().map(Recipe::entry).collect()
}

/// Builds one corpus design, looked up by name or title.
pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    RECIPES
        .iter()
        .find(|r| r.name == name || r.title == name)
        .map(Recipe::entry)
}

impl Recipe {
    fn entry(&self) -> CorpusEntry {
        CorpusEntry {
            name: self.name,
            title: self.title,
            design: (self.build)(),
            expected: self.expected,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::quasi_symmetric_witness;

    #[test]
    fn witt_design_basics() {
        let d = golay_witt_design();
        assert_eq!((d.v(), d.b()), (23, 253));
        assert_eq!(d.block_size(), Ok(7));
        assert_eq!(quasi_symmetric_witness(&d), Ok((1, 3)));
    }

    #[test]
    fn complement_is_an_involution() {
        for entry in corpus() {
            let c = complement_design(&entry.design).unwrap();
            assert_eq!(
                complement_design(&c).unwrap(),
                entry.design,
                "{}",
                entry.name
            );
        }
    }

    #[test]
    fn complement_of_near_complete_is_all_pairs() {
        let c = complement_design(&near_complete(7)).unwrap();
        assert_eq!(c, complete_design(7, 2).unwrap());
    }

    #[test]
    fn complement_rejects_full_blocks() {
        let d = Design::new(3, vec![vec![0, 1, 2], vec![0]]).unwrap();
        assert_eq!(
            complement_design(&d),
            Err(DesignError::FullBlock { block: 0 })
        );
    }

    #[test]
    fn near_complete_needs_five_points() {
        assert_eq!(
            near_complete_design(4),
            Err(ConstructionError::TooFewPoints { v: 4, min: 5 })
        );
        for v in 5..=10 {
            let d = near_complete_design(v).unwrap();
            assert_eq!(d.b(), v * (v - 1) / 2);
            assert_eq!(d.block_size(), Ok(v - 2));
            assert_eq!(quasi_symmetric_witness(&d), Ok((v - 4, v - 3)));
        }
        // first block omits the pair {0, 1}
        assert_eq!(near_complete(5).blocks()[0].to_vec(), vec![2, 3, 4]);
    }

    #[test]
    fn the_6_3_2_design_is_the_lexicographically_first() {
        let d = design_6_3_2();
        let blocks: Vec<Vec<usize>> = d.blocks().iter().map(BitSet::to_vec).collect();
        // brute-force enumeration over all 10-subsets of the 20 triples
        // finds this family first
        assert_eq!(
            blocks,
            vec![
                vec![0, 1, 2],
                vec![0, 1, 3],
                vec![0, 2, 4],
                vec![0, 3, 5],
                vec![0, 4, 5],
                vec![1, 2, 5],
                vec![1, 3, 4],
                vec![1, 4, 5],
                vec![2, 3, 4],
                vec![2, 3, 5],
            ]
        );
    }

    #[test]
    fn unbalanced_parameters_are_not_found() {
        // 2-(7,3,1) exists, 2-(8,3,1) cannot (28 pairs, 3 per block)
        assert!(first_pair_balanced_family(7, 3, 1).is_ok());
        assert_eq!(
            first_pair_balanced_family(8, 3, 1),
            Err(ConstructionError::NotFound)
        );
    }

    #[test]
    fn corpus_lookup() {
        assert_eq!(corpus_names().len(), RECIPES.len());
        assert_eq!(corpus_entry("S(2,3,9)").unwrap().design.b(), 12);
        assert_eq!(corpus_entry("ag-2-3").unwrap().title, "S(2,3,9)");
        assert!(corpus_entry("nosuch").is_none());
    }
}
