//! Set systems and the block-list text format.
//!
//! A [`Design`] is a point count `v` together with a non-empty list of
//! distinct, non-empty blocks, each a subset of `0..v`. Block order is
//! significant: it fixes the column order of incidence matrices and the
//! vertex order of the block graph.
//!
//! The text format is line oriented:
//!
//! ```text
//! v=7
//! # Fano plane
//! 1 2 4
//! 2 3 5
//! ```
//!
//! The first non-comment line is the header `v=<n>`. Each further non-empty
//! line is one block, given as strictly increasing point indices separated by
//! spaces. Lines starting with `#` are comments.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bitset::BitSet;

/// Structural violations when assembling a design from blocks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("design has no blocks")]
    NoBlocks,
    #[error("design has no points")]
    NoPoints,
    #[error("block {block} is empty")]
    EmptyBlock { block: usize },
    #[error("block {block} contains point {point}, but v = {v}")]
    PointOutOfRange {
        block: usize,
        point: usize,
        v: usize,
    },
    #[error("repeated block: blocks {first} and {second} are equal")]
    RepeatedBlock { first: usize, second: usize },
    #[error(
        "blocks have different sizes: block 0 has {expected} points, block {block} has {found}"
    )]
    NonUniform {
        block: usize,
        expected: usize,
        found: usize,
    },
    #[error("block size {k} is too small (need at least {min})")]
    BlockTooSmall { k: usize, min: usize },
    #[error("block {block} is the whole point set, so its complement is empty")]
    FullBlock { block: usize },
}

/// Errors from reading the block-list text format. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("missing header line `v=<n>`")]
    MissingHeader,
    #[error("line {line}: expected header `v=<n>`, found {text:?}")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: malformed integer {token:?}")]
    MalformedInteger { line: usize, token: String },
    #[error("line {line}: point {point} out of range (v = {v})")]
    PointOutOfRange { line: usize, point: usize, v: usize },
    #[error("line {line}: point indices must be strictly increasing")]
    NotIncreasing { line: usize },
    #[error("repeated block on lines {first_line} and {second_line}")]
    RepeatedBlock {
        first_line: usize,
        second_line: usize,
    },
    #[error("empty block list")]
    EmptyBlockList,
    #[error("header declares v = 0")]
    NoPoints,
}

/// A duplicate-free family of blocks on the points `0..v`.
#[derive(Clone, PartialEq, Eq)]
pub struct Design {
    v: usize,
    blocks: Vec<BitSet>,
}

impl Design {
    /// Builds a design from point lists. Points within a block may be given in
    /// any order; duplicates inside one block collapse.
    pub fn new<B>(v: usize, blocks: impl IntoIterator<Item = B>) -> Result<Self, DesignError>
    where
        B: IntoIterator<Item = usize>,
    {
        let sets = blocks
            .into_iter()
            .enumerate()
            .map(|(block, points)| {
                BitSet::from_indices(v, points).map_err(|point| DesignError::PointOutOfRange {
                    block,
                    point,
                    v,
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Design::from_bitsets(v, sets)
    }

    /// Builds a design from blocks already in bit-vector form.
    pub fn from_bitsets(v: usize, blocks: Vec<BitSet>) -> Result<Self, DesignError> {
        if v == 0 {
            return Err(DesignError::NoPoints);
        }
        if blocks.is_empty() {
            return Err(DesignError::NoBlocks);
        }
        let mut seen: HashMap<&BitSet, usize> = HashMap::with_capacity(blocks.len());
        for (i, block) in blocks.iter().enumerate() {
            assert_eq!(block.universe(), v, "block {i} has the wrong width");
            if block.is_empty() {
                return Err(DesignError::EmptyBlock { block: i });
            }
            if let Some(&first) = seen.get(block) {
                return Err(DesignError::RepeatedBlock { first, second: i });
            }
            seen.insert(block, i);
        }
        Ok(Design { v, blocks })
    }

    /// Number of points.
    pub fn v(&self) -> usize {
        self.v
    }

    /// Number of blocks.
    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[BitSet] {
        &self.blocks
    }

    /// The common block size, or the first block whose size differs.
    pub fn block_size(&self) -> Result<usize, DesignError> {
        let expected = self.blocks[0].count();
        for (block, set) in self.blocks.iter().enumerate().skip(1) {
            let found = set.count();
            if found != expected {
                return Err(DesignError::NonUniform {
                    block,
                    expected,
                    found,
                });
            }
        }
        Ok(expected)
    }

    /// For each point `p`, the set of blocks containing `p` (a bit vector of
    /// width `b`).
    pub fn point_incidence(&self) -> Vec<BitSet> {
        let mut rows = vec![BitSet::new(self.b()); self.v];
        for (j, block) in self.blocks.iter().enumerate() {
            for p in block.iter() {
                rows[p].insert(j);
            }
        }
        rows
    }

    /// Applies the point map `p -> perm[p]` to every block. Block order is kept.
    ///
    /// # Panics
    ///
    /// If `perm` is not a permutation of `0..v`.
    pub fn relabel(&self, perm: &[usize]) -> Design {
        assert_eq!(perm.len(), self.v, "permutation has the wrong length");
        let mut hit = vec![false; self.v];
        for &p in perm {
            assert!(p < self.v && !hit[p], "not a permutation");
            hit[p] = true;
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| BitSet::from_indices(self.v, b.iter().map(|p| perm[p])).expect("in range"))
            .collect();
        Design { v: self.v, blocks }
    }

    /// Renders the block-list text format, one block per line, with a
    /// trailing newline.
    pub fn to_block_list(&self) -> String {
        let mut out = format!("v={}\n", self.v);
        for block in &self.blocks {
            let line: Vec<String> = block.iter().map(|p| p.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for Design {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Design")
            .field("v", &self.v)
            .field("b", &self.b())
            .field("blocks", &self.blocks)
            .finish()
    }
}

impl FromStr for Design {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_design(s)
    }
}

fn is_skippable(line: &str) -> bool {
    let t = line.trim();
    t.is_empty() || t.starts_with('#')
}

/// Parses the block-list text format. Repeated blocks are an error, never
/// merged.
pub fn parse_design(text: &str) -> Result<Design, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_line, header) = lines
        .by_ref()
        .find(|(_, l)| !is_skippable(l))
        .ok_or(ParseError::MissingHeader)?;
    let v = header
        .trim()
        .strip_prefix("v=")
        .and_then(|n| n.parse::<usize>().ok())
        .ok_or_else(|| ParseError::MalformedHeader {
            line: header_line,
            text: header.to_string(),
        })?;
    if v == 0 {
        return Err(ParseError::NoPoints);
    }

    let mut blocks = Vec::new();
    let mut seen: HashMap<BitSet, usize> = HashMap::new();
    for (line, text) in lines {
        if is_skippable(text) {
            continue;
        }
        let mut block = BitSet::new(v);
        let mut prev: Option<usize> = None;
        for token in text.split_whitespace() {
            let point: usize = token.parse().map_err(|_| ParseError::MalformedInteger {
                line,
                token: token.to_string(),
            })?;
            if point >= v {
                return Err(ParseError::PointOutOfRange { line, point, v });
            }
            if prev.is_some_and(|p| p >= point) {
                return Err(ParseError::NotIncreasing { line });
            }
            prev = Some(point);
            block.insert(point);
        }
        if let Some(&first_line) = seen.get(&block) {
            return Err(ParseError::RepeatedBlock {
                first_line,
                second_line: line,
            });
        }
        seen.insert(block.clone(), line);
        blocks.push(block);
    }
    if blocks.is_empty() {
        return Err(ParseError::EmptyBlockList);
    }
    Ok(Design::from_bitsets(v, blocks).expect("validated while parsing"))
}
