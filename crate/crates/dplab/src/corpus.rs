//! Deterministic corpora of connected plane graphs.
//!
//! Small orders are enumerated exhaustively up to isomorphism by adding a
//! vertex to every connected planar graph one order down (every connected
//! graph has a vertex whose removal leaves it connected). Larger orders
//! are sampled: a random spanning tree, then random edges kept while the
//! graph stays planar.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use dplab_core::structure::class_membership;
use dplab_core::{Graph, PlaneGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::canon::{canonical_form, relabel, Certificate};
use crate::embedding::{embed_planar, is_planar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassFilter {
    G1,
    G2,
}

impl ClassFilter {
    pub fn accepts(self, graph: &Graph) -> bool {
        let tag = class_membership(graph);
        match self {
            ClassFilter::G1 => tag.in_g1,
            ClassFilter::G2 => tag.in_g2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    pub orders: RangeInclusive<usize>,
    pub class: Option<ClassFilter>,
    pub seed: u64,
    /// Orders up to this are enumerated in full.
    pub exhaustive_max: usize,
    /// Distinct graphs drawn per sampled order.
    pub samples_per_order: usize,
}

impl CorpusSpec {
    pub fn new(orders: RangeInclusive<usize>) -> Self {
        CorpusSpec {
            orders,
            class: None,
            seed: 0,
            exhaustive_max: 7,
            samples_per_order: 60,
        }
    }

    pub fn class(mut self, class: ClassFilter) -> Self {
        self.class = Some(class);
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// All connected planar graphs of each order `1..=max`, canonically
/// labeled and sorted by certificate.
pub fn connected_planar_graphs(max: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = vec![Vec::new(), vec![Graph::empty(1)]];
    for n in 2..=max {
        let mut seen: BTreeSet<Certificate> = BTreeSet::new();
        let mut level = Vec::new();
        for g in &levels[n - 1] {
            for mask in 1u32..(1 << (n - 1)) {
                let mut edges = g.edges().to_vec();
                edges.extend((0..n - 1).filter(|i| mask >> i & 1 == 1).map(|i| (i, n - 1)));
                let h = Graph::from_edges(n, &edges).expect("new vertex adds fresh edges");
                if h.edge_count() > 3 * n - 6 && n >= 3 {
                    continue;
                }
                let (cert, order) = canonical_form(&h);
                if seen.contains(&cert) || !is_planar(&h) {
                    continue;
                }
                seen.insert(cert.clone());
                level.push((cert, relabel(&h, &order)));
            }
        }
        level.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(level.into_iter().map(|(_, g)| g).collect());
    }
    levels.truncate(max + 1);
    levels
}

fn random_planar(n: usize, max_edges: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (perm[rng.gen_range(0..i)], perm[i])).collect();
    let target = rng.gen_range(n - 1..=max_edges.max(n - 1));
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(rng);
    let mut g = Graph::from_edges(n, &edges).expect("tree");
    for (u, v) in pairs {
        if g.edge_count() >= target {
            break;
        }
        if g.has_edge(u, v) {
            continue;
        }
        edges.push((u, v));
        let h = Graph::from_edges(n, &edges).expect("fresh edge");
        if is_planar(&h) {
            g = h;
        } else {
            edges.pop();
        }
    }
    g
}

/// Abstract graphs of the corpus, canonically labeled, in emission order.
pub fn corpus_graphs(spec: &CorpusSpec) -> Vec<Graph> {
    let (lo, hi) = (*spec.orders.start(), *spec.orders.end());
    if lo > hi {
        return Vec::new();
    }
    let accept = |g: &Graph| spec.class.is_none_or(|c| c.accepts(g));
    let mut out = Vec::new();
    let full = hi.min(spec.exhaustive_max);
    if lo <= full {
        let levels = connected_planar_graphs(full);
        for level in &levels[lo.max(1)..=full] {
            out.extend(level.iter().filter(|g| accept(g)).cloned());
        }
    }
    for n in lo.max(full + 1).max(1)..=hi {
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ (n as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        // class members are sparse; denser draws mostly fail the filter
        let max_edges = match spec.class {
            Some(_) => 2 * n,
            None => 3 * n - 6,
        };
        let mut seen = BTreeSet::new();
        let mut found = 0;
        for _ in 0..spec.samples_per_order * 50 {
            if found == spec.samples_per_order {
                break;
            }
            let g = random_planar(n, max_edges, &mut rng);
            let (cert, order) = canonical_form(&g);
            if !seen.insert(cert) {
                continue;
            }
            let g = relabel(&g, &order);
            if accept(&g) {
                out.push(g);
                found += 1;
            }
        }
    }
    out
}

/// The corpus as plane graphs, each with the embedding found by
/// [`embed_planar`] and its longest face outside.
pub fn corpus_generate(spec: &CorpusSpec) -> Vec<PlaneGraph> {
    corpus_graphs(spec)
        .iter()
        .map(|g| embed_planar(g, usize::MAX).expect("corpus graphs are connected and planar"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_connected_planar_graphs() {
        let levels = connected_planar_graphs(6);
        let counts: Vec<usize> = levels[1..].iter().map(Vec::len).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 20, 99]);
    }

    #[test]
    fn empty_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let spec = CorpusSpec::new(5..=4);
        assert!(corpus_generate(&spec).is_empty());
    }
}
