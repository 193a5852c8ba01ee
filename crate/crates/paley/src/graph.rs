//! Construction, structure theory, and serialization of the generalized
//! Paley graph P_delta.
//!
//! P_delta is the circulant (di)graph on Z/D whose arcs u -> v exist exactly
//! when chi_delta(v - u) = 1. It is kept as its circulant generator vector
//! (one byte per residue), never as a dense adjacency matrix; neighbor lists
//! are produced on demand.

use crate::error::{Error, Result};
use crate::ntheory;
use crate::qchar::{FundamentalDiscriminant, QuadraticCharacter};
use serde::Serialize;
use std::collections::VecDeque;
use std::fmt::Write as _;

/// Output formats for [`PaleyGraph::export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    EdgeList,
    AdjacencyJson,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(Self::Dot),
            "edge_list" => Ok(Self::EdgeList),
            "adjacency_json" => Ok(Self::AdjacencyJson),
            other => Err(Error::domain(format!("unknown export format: {other}"))),
        }
    }
}

#[derive(Serialize)]
struct AdjacencyDescriptor<'a> {
    delta: i64,
    #[serde(rename = "D")]
    d: u64,
    generator: &'a [u8],
}

/// The generalized Paley graph of a fundamental discriminant, as a
/// circulant generator vector over Z/D.
#[derive(Debug, Clone)]
pub struct PaleyGraph {
    character: QuadraticCharacter,
    generator: Vec<u8>,
    directed: bool,
}

impl PaleyGraph {
    /// Builds P_delta from its character. Directed exactly when delta < 0.
    pub fn build(disc: FundamentalDiscriminant) -> Self {
        Self::from_character(QuadraticCharacter::new(disc))
    }

    pub fn from_character(character: QuadraticCharacter) -> Self {
        let generator: Vec<u8> = character
            .values()
            .iter()
            .map(|&v| u8::from(v == 1))
            .collect();
        let directed = !character.discriminant().is_positive();
        let g = Self {
            character,
            generator,
            directed,
        };
        debug_assert_eq!(g.generator[0], 0);
        debug_assert_eq!(g.generator[1], 1);
        g
    }

    pub fn discriminant(&self) -> &FundamentalDiscriminant {
        self.character.discriminant()
    }

    pub fn character(&self) -> &QuadraticCharacter {
        &self.character
    }

    /// Number of vertices, D.
    pub fn order(&self) -> u64 {
        self.discriminant().conductor()
    }

    /// The circulant generator vector: entry a is 1 iff chi(a) = 1.
    pub fn generator(&self) -> &[u8] {
        &self.generator
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    /// Offsets a with chi(a) = 1; each vertex u has arcs to u + a.
    pub fn offsets(&self) -> impl Iterator<Item = u64> + '_ {
        self.generator
            .iter()
            .enumerate()
            .filter(|(_, &g)| g == 1)
            .map(|(a, _)| a as u64)
    }

    /// Out-neighbors of `u` (all neighbors in the undirected case).
    pub fn neighbors(&self, u: u64) -> impl Iterator<Item = u64> + '_ {
        let d = self.order();
        self.offsets().map(move |a| (u + a) % d)
    }

    /// True when u -> v is an arc, i.e. chi(v - u) = 1.
    pub fn adjacent(&self, u: u64, v: u64) -> bool {
        let d = self.order() as i64;
        self.generator[(v as i64 - u as i64).rem_euclid(d) as usize] == 1
    }

    /// Regular degree phi(D)/2; asserted against the generator weight.
    pub fn degree(&self) -> u64 {
        let phi = ntheory::euler_phi(self.order()).expect("conductor is positive");
        let weight: u64 = self.generator.iter().map(|&g| g as u64).sum();
        assert_eq!(weight, phi / 2, "generator weight must equal phi(D)/2");
        phi / 2
    }

    /// BFS two-coloring; `None` when an odd cycle is found. Treats the
    /// graph as undirected, so callers gate on delta > 0 first.
    fn two_coloring(&self) -> Option<Vec<u8>> {
        let d = self.order();
        let offsets: Vec<u64> = self.offsets().collect();
        let mut color = vec![u8::MAX; d as usize];
        color[0] = 0;
        let mut queue = VecDeque::from([0u64]);
        while let Some(u) = queue.pop_front() {
            let cu = color[u as usize];
            for &a in &offsets {
                let v = (u + a) % d;
                if color[v as usize] == u8::MAX {
                    color[v as usize] = 1 - cu;
                    queue.push_back(v);
                } else if color[v as usize] == cu {
                    return None;
                }
            }
        }
        Some(color)
    }

    /// Structural bipartiteness (BFS two-coloring). Equivalent to "delta is
    /// even", which the test suite verifies.
    pub fn is_bipartite(&self) -> Result<bool> {
        self.discriminant().require_positive()?;
        Ok(self.two_coloring().is_some())
    }

    /// The bipartition found by BFS, when one exists: (part of vertex 0,
    /// the complement). For even delta these are the even and the odd
    /// residues.
    pub fn bipartition(&self) -> Result<Option<(Vec<u64>, Vec<u64>)>> {
        self.discriminant().require_positive()?;
        Ok(self.two_coloring().map(|color| {
            let mut parts = (Vec::new(), Vec::new());
            for (v, &c) in color.iter().enumerate() {
                if c == 0 {
                    parts.0.push(v as u64);
                } else {
                    parts.1.push(v as u64);
                }
            }
            parts
        }))
    }

    /// Vertices reachable from 0; the offset 1 is always a generator, so
    /// this returns D for every valid discriminant.
    pub fn reachable_from_zero(&self) -> u64 {
        let d = self.order();
        let offsets: Vec<u64> = self.offsets().collect();
        let mut seen = vec![false; d as usize];
        seen[0] = true;
        let mut queue = VecDeque::from([0u64]);
        let mut count = 1u64;
        while let Some(u) = queue.pop_front() {
            for &a in &offsets {
                let v = (u + a) % d;
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    queue.push_back(v);
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.reachable_from_zero() == self.order()
    }

    /// Structural cycle test: 2-regular and connected. The connectivity
    /// sweep only runs for the 2-regular graphs, which are tiny.
    pub fn is_cycle(&self) -> Result<bool> {
        self.discriminant().require_positive()?;
        Ok(self.degree() == 2 && self.is_connected())
    }

    /// Undirected edges {u, v} as sorted (u, v) pairs with u < v.
    /// For directed graphs, the arcs (u, v) sorted by (u, v).
    pub fn edges(&self) -> Vec<(u64, u64)> {
        let d = self.order();
        let offsets: Vec<u64> = self.offsets().collect();
        let mut edges = Vec::new();
        for u in 0..d {
            for &a in &offsets {
                let v = (u + a) % d;
                if self.directed || u < v {
                    edges.push((u, v));
                }
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Serializes the graph. DOT and the edge list enumerate each edge
    /// once ((u, v) with u < v for undirected graphs); the JSON descriptor
    /// is the compact circulant form.
    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => {
                let (kind, arrow) = if self.directed {
                    ("digraph", "->")
                } else {
                    ("graph", "--")
                };
                let mut out = String::new();
                let _ = writeln!(out, "{kind} \"P_{}\" {{", self.discriminant().delta());
                for (u, v) in self.edges() {
                    let _ = writeln!(out, "  {u} {arrow} {v};");
                }
                out.push('}');
                out
            }
            ExportFormat::EdgeList => {
                let lines: Vec<String> = self
                    .edges()
                    .into_iter()
                    .map(|(u, v)| format!("{u} {v}"))
                    .collect();
                lines.join("\n")
            }
            ExportFormat::AdjacencyJson => serde_json::to_string(&AdjacencyDescriptor {
                delta: self.discriminant().delta(),
                d: self.order(),
                generator: &self.generator,
            })
            .expect("adjacency descriptor serializes"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(delta: i64) -> PaleyGraph {
        PaleyGraph::build(FundamentalDiscriminant::validate(delta).unwrap())
    }

    #[test]
    fn build_cycle_cases() {
        // P_12 is the 12-cycle: chi_12(a) = 1 exactly at a = 1, 11.
        let g = graph(12);
        let offsets: Vec<u64> = g.offsets().collect();
        assert_eq!(offsets, vec![1, 11]);
        assert_eq!(g.degree(), 2);

        let g = graph(5);
        let offsets: Vec<u64> = g.offsets().collect();
        assert_eq!(offsets, vec![1, 4]);
    }

    #[test]
    fn twenty_one_is_six_regular() {
        let g = graph(21);
        assert_eq!(g.order(), 21);
        assert_eq!(g.degree(), 6);
        assert!(!g.is_directed());
        let offsets: Vec<u64> = g.offsets().collect();
        assert_eq!(offsets, vec![1, 4, 5, 16, 17, 20]);
    }

    #[test]
    fn degree_examples() {
        assert_eq!(graph(5).degree(), 2);
        assert_eq!(graph(8).degree(), 2);
        assert_eq!(graph(21).degree(), 6);
    }

    #[test]
    fn generator_symmetry_iff_positive() {
        for delta in [5i64, 8, 12, 21, 33, -3, -4, -8, -20] {
            let g = graph(delta);
            let d = g.order() as usize;
            let gen = g.generator();
            let symmetric = (1..d).all(|a| gen[a] == gen[d - a]);
            assert_eq!(symmetric, delta > 0, "delta = {delta}");
            assert_eq!(gen[0], 0);
            assert_eq!(gen[1], 1);
        }
    }

    #[test]
    fn bipartite_examples() {
        assert!(graph(8).is_bipartite().unwrap());
        assert!(graph(12).is_bipartite().unwrap());
        assert!(!graph(5).is_bipartite().unwrap());
        assert!(matches!(
            graph(-4).is_bipartite(),
            Err(Error::Parity { .. })
        ));
    }

    #[test]
    fn bipartition_is_parity_split_for_even_delta() {
        for delta in [8i64, 12, 24, 40, 60] {
            let g = graph(delta);
            let (evens, odds) = g.bipartition().unwrap().unwrap();
            assert!(evens.iter().all(|v| v % 2 == 0), "delta = {delta}");
            assert!(odds.iter().all(|v| v % 2 == 1), "delta = {delta}");
            assert_eq!((evens.len() + odds.len()) as u64, g.order());
        }
        assert!(graph(5).bipartition().unwrap().is_none());
    }

    #[test]
    fn cycle_examples() {
        assert!(graph(5).is_cycle().unwrap());
        assert!(graph(8).is_cycle().unwrap());
        assert!(graph(12).is_cycle().unwrap());
        assert!(!graph(21).is_cycle().unwrap());
        assert!(matches!(graph(-4).is_cycle(), Err(Error::Parity { .. })));
    }

    #[test]
    fn adjacency_matches_character_predicate() {
        for delta in [5i64, 21, 40, -4, -15] {
            let g = graph(delta);
            let chi = g.character();
            let d = g.order();
            for u in 0..d.min(50) {
                for v in 0..d.min(50) {
                    assert_eq!(
                        g.adjacent(u, v),
                        chi.chi(v as i64 - u as i64) == 1,
                        "delta {delta}, ({u}, {v})"
                    );
                }
            }
        }
    }

    #[test]
    fn export_edge_list_five() {
        assert_eq!(
            graph(5).export(ExportFormat::EdgeList),
            "0 1\n0 4\n1 2\n2 3\n3 4"
        );
    }

    #[test]
    fn export_dot_eight() {
        let dot = graph(8).export(ExportFormat::Dot);
        assert!(dot.starts_with("graph \"P_8\" {"));
        assert_eq!(dot.matches("--").count(), 8, "8-cycle has 8 edges");
        assert!(dot.ends_with('}'));
    }

    #[test]
    fn export_directed_minus_four() {
        let g = graph(-4);
        assert!(g.is_directed());
        let dot = g.export(ExportFormat::Dot);
        assert!(dot.starts_with("digraph \"P_-4\" {"));
        // Arcs u -> u+1 only, sorted by source.
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
    }

    #[test]
    fn export_adjacency_json() {
        let json = graph(-4).export(ExportFormat::AdjacencyJson);
        assert_eq!(json, "{\"delta\":-4,\"D\":4,\"generator\":[0,1,0,0]}");
    }

    #[test]
    fn connected_for_many_discriminants() {
        for delta in [5i64, 8, 12, 13, 21, 60, 77, -3, -4, -20] {
            assert!(graph(delta).is_connected(), "delta = {delta}");
        }
    }
}
