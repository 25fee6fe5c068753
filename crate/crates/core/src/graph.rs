//! Simple graphs, the block graph of a quasi-symmetric design, the
//! triangular graph, and an exact strong-regularity test.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::combinatorics::pairs;
use crate::design::Design;
use crate::linalg::ExactMatrix;
use crate::profile::{quasi_symmetric_witness, NotQuasiSymmetric};

/// Undirected graph without loops or multiple edges on `0..n`, one
/// adjacency bit row per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    rows: Vec<BitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            rows: vec![BitSet::new(n); n],
        }
    }

    /// # Panics
    ///
    /// On a loop or an endpoint out of range.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = Graph::empty(n);
        for (a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert_ne!(a, b, "loops are not allowed");
        self.rows[a].insert(b);
        self.rows[b].insert(a);
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count()
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.rows[v].iter()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum::<usize>() / 2
    }

    /// Number of common neighbours of `a` and `b`, i.e. `(A²)_{ab}`.
    pub fn common_neighbours(&self, a: usize, b: usize) -> usize {
        self.rows[a].intersection_count(&self.rows[b])
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for w in self.neighbours(u) {
                if !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    queue.push_back(w);
                }
            }
        }
        reached == n
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        for root in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for w in self.neighbours(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// The 0/1 adjacency matrix.
    ///
    /// # Panics
    ///
    /// On the graph with no vertices.
    pub fn adjacency_matrix(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.n(), self.n(), |i, j| {
            if self.adjacent(i, j) {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// Graph on the blocks of a quasi-symmetric design, two blocks adjacent when
/// they meet in the larger intersection number `y`. Vertex `i` is block `i`.
pub fn block_graph(d: &Design) -> Result<Graph, NotQuasiSymmetric> {
    let (_, y) = quasi_symmetric_witness(d)?;
    Ok(block_graph_unchecked(d, y))
}

pub(crate) fn block_graph_unchecked(d: &Design, y: usize) -> Graph {
    let blocks = d.blocks();
    let mut g = Graph::empty(d.b());
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            if blocks[i].intersection_count(&blocks[j]) == y {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// The triangular graph `T(v)`: vertices are the 2-subsets of `0..v` in
/// lexicographic order, adjacent when they share exactly one point.
pub fn triangular_graph(v: usize) -> Graph {
    let pair_list = pairs(v);
    let mut g = Graph::empty(pair_list.len());
    for (i, &(a, b)) in pair_list.iter().enumerate() {
        for (j, &(c, d)) in pair_list.iter().enumerate().skip(i + 1) {
            let shared = [a == c, a == d, b == c, b == d]
                .iter()
                .filter(|&&s| s)
                .count();
            if shared == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Parameters `(n, k, λ, μ)` of a strongly regular graph.
#[serde_as]
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    #[serde_as(as = "DisplayFromStr")]
    pub n: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub degree: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub lambda_common: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub mu_common: usize,
}

impl SrgParams {
    pub fn new(n: usize, degree: usize, lambda_common: usize, mu_common: usize) -> Self {
        SrgParams {
            n,
            degree,
            lambda_common,
            mu_common,
        }
    }

    /// `k(k - λ - 1) = (n - k - 1)μ`, counting edges between the
    /// neighbourhood and the non-neighbourhood of a vertex two ways.
    pub fn is_feasible(&self) -> bool {
        let SrgParams {
            n,
            degree: k,
            lambda_common: l,
            mu_common: m,
        } = *self;
        k < n && l < k && k * (k - l - 1) == (n - k - 1) * m
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SRG({}, {}, {}, {})",
            self.n, self.degree, self.lambda_common, self.mu_common
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SrgRejection {
    #[error("graph has fewer than 3 vertices")]
    TooSmall,
    #[error("vertex {vertex} has degree {found}, vertex 0 has {expected}")]
    Irregular {
        vertex: usize,
        expected: usize,
        found: usize,
    },
    #[error("graph has no edges")]
    Edgeless,
    #[error("graph is complete")]
    Complete,
    #[error("graph is disconnected")]
    Disconnected,
    #[error(
        "(A^2)[{row}][{col}] = {found}, but the identity A^2 = kI + λA + μ(J-I-A) requires {expected}"
    )]
    Identity {
        row: usize,
        col: usize,
        expected: usize,
        found: usize,
    },
}

/// Checks `A² = k·I + λ·A + μ·(J − I − A)` entrywise.
///
/// `(A²)_{ij}` is the number of common neighbours, computed exactly as a
/// popcount of the AND of two adjacency rows. `λ` and `μ` are read from the
/// first adjacent and first non-adjacent pair; every entry is then compared.
pub fn srg_check(g: &Graph) -> Result<SrgParams, SrgRejection> {
    let n = g.n();
    if n < 3 {
        return Err(SrgRejection::TooSmall);
    }
    let k = g.degree(0);
    for v in 1..n {
        let found = g.degree(v);
        if found != k {
            return Err(SrgRejection::Irregular {
                vertex: v,
                expected: k,
                found,
            });
        }
    }
    if k == 0 {
        return Err(SrgRejection::Edgeless);
    }
    if k == n - 1 {
        return Err(SrgRejection::Complete);
    }
    let mut lambda = None;
    let mut mu = None;
    for i in 0..n {
        for j in 0..n {
            let found = g.common_neighbours(i, j);
            let expected = if i == j {
                k
            } else if g.adjacent(i, j) {
                *lambda.get_or_insert(found)
            } else {
                *mu.get_or_insert(found)
            };
            if found != expected {
                return Err(SrgRejection::Identity {
                    row: i,
                    col: j,
                    expected,
                    found,
                });
            }
        }
    }
    let (lambda, mu) = (lambda.expect("has an edge"), mu.expect("not complete"));
    if mu == 0 {
        return Err(SrgRejection::Disconnected);
    }
    Ok(SrgParams::new(n, k, lambda, mu))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn petersen() -> Graph {
        // Kneser graph K(5,2): 2-subsets adjacent when disjoint
        let p = pairs(5);
        let mut g = Graph::empty(10);
        for i in 0..10 {
            for j in i + 1..10 {
                let (a, b) = p[i];
                let (c, d) = p[j];
                if a != c && a != d && b != c && b != d {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    #[test]
    fn petersen_is_srg_10_3_0_1() {
        let g = petersen();
        assert_eq!(srg_check(&g), Ok(SrgParams::new(10, 3, 0, 1)));
        assert_eq!(g.girth(), Some(5));
    }

    #[test]
    fn pentagon_is_strongly_regular() {
        assert_eq!(srg_check(&cycle(5)), Ok(SrgParams::new(5, 2, 0, 1)));
    }

    #[test]
    fn hexagon_is_not() {
        assert!(matches!(
            srg_check(&cycle(6)),
            Err(SrgRejection::Identity {
                row: 0,
                col: 3,
                expected: 1,
                found: 0
            })
        ));
    }

    #[test]
    fn degenerate_graphs_are_rejected() {
        assert_eq!(srg_check(&Graph::empty(4)), Err(SrgRejection::Edgeless));
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(srg_check(&k4), Err(SrgRejection::Complete));
        // two disjoint triangles
        let tt = Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(srg_check(&tt), Err(SrgRejection::Disconnected));
        assert!(!tt.is_connected());
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]);
        assert!(matches!(
            srg_check(&path),
            Err(SrgRejection::Irregular { vertex: 1, .. })
        ));
    }

    #[test]
    fn triangular_graph_small_cases() {
        let t4 = triangular_graph(4);
        assert_eq!(t4.n(), 6);
        assert!((0..6).all(|v| t4.degree(v) == 4));
        assert_eq!(srg_check(&t4), Ok(SrgParams::new(6, 4, 2, 4)));
        assert_eq!(
            srg_check(&triangular_graph(5)),
            Ok(SrgParams::new(10, 6, 3, 4))
        );
        assert_eq!(
            srg_check(&triangular_graph(23)),
            Ok(SrgParams::new(253, 42, 21, 4))
        );
    }

    #[test]
    fn triangular_graphs_are_strongly_regular() {
        for v in 5..=12 {
            let expected = SrgParams::new(v * (v - 1) / 2, 2 * (v - 2), v - 2, 4);
            assert_eq!(srg_check(&triangular_graph(v)), Ok(expected), "T({v})");
            assert!(expected.is_feasible());
        }
    }

    #[test]
    fn feasibility_identity() {
        assert!(SrgParams::new(10, 3, 0, 1).is_feasible());
        assert!(SrgParams::new(253, 140, 87, 65).is_feasible());
        assert!(!SrgParams::new(10, 3, 1, 1).is_feasible());
    }
}
