//! Canonical labeling of small graphs for isomorphism dedupe.
//!
//! Equitable refinement of an ordered partition, then individualization of
//! each vertex of the first non-singleton cell. Every leaf is a labeling;
//! the certificate is the largest adjacency string over all leaves. No
//! automorphism pruning, so keep graphs small or asymmetric.

use dplab_core::Graph;

/// Adjacency string under the canonical labeling.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Certificate {
    pub n: usize,
    pub bits: Vec<u64>,
}

/// Certificate and labeling: `order[i]` is the vertex given label `i`.
pub fn canonical_form(graph: &Graph) -> (Certificate, Vec<usize>) {
    let n = graph.vertex_count();
    let mut best: Option<(Certificate, Vec<usize>)> = None;
    let cells = refine(graph, vec![(0..n).collect()]);
    search(graph, cells, &mut best);
    best.unwrap_or((Certificate { n, bits: Vec::new() }, Vec::new()))
}

pub fn certificate(graph: &Graph) -> Certificate {
    canonical_form(graph).0
}

/// The graph relabeled canonically.
pub fn canonical_graph(graph: &Graph) -> Graph {
    let (_, order) = canonical_form(graph);
    relabel(graph, &order)
}

pub fn relabel(graph: &Graph, order: &[usize]) -> Graph {
    let mut new_of_old = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        new_of_old[v] = i;
    }
    let edges: Vec<_> = graph.edges().iter().map(|&(u, v)| (new_of_old[u], new_of_old[v])).collect();
    Graph::from_edges(graph.vertex_count(), &edges).expect("relabeling keeps the graph simple")
}

fn encode(graph: &Graph, order: &[usize]) -> Certificate {
    let n = order.len();
    let mut bits = vec![0u64; (n * n).div_ceil(64).max(1)];
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if graph.has_edge(order[i], order[j]) {
                bits[k / 64] |= 1 << (63 - k % 64);
            }
            k += 1;
        }
    }
    Certificate { n, bits }
}

fn search(graph: &Graph, cells: Vec<Vec<usize>>, best: &mut Option<(Certificate, Vec<usize>)>) {
    let Some(target) = cells.iter().position(|c| c.len() > 1) else {
        let order: Vec<usize> = cells.into_iter().map(|c| c[0]).collect();
        let cert = encode(graph, &order);
        if best.as_ref().is_none_or(|(b, _)| cert > *b) {
            *best = Some((cert, order));
        }
        return;
    };
    for &v in &cells[target] {
        let mut next = cells[..target].to_vec();
        next.push(vec![v]);
        next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
        next.extend_from_slice(&cells[target + 1..]);
        search(graph, refine(graph, next), best);
    }
}

/// Splits cells by neighbor counts into other cells until stable. Split
/// pieces are ordered by their count signature, which depends only on the
/// partition, so the result is labeling independent.
fn refine(graph: &Graph, mut cells: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    loop {
        let mut cell_of = vec![0; n];
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i;
            }
        }
        let mut changed = false;
        let mut next = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let signature = |v: usize| {
                let mut s = vec![0usize; cells.len()];
                for &w in graph.neighbors(v) {
                    s[cell_of[w]] += 1;
                }
                s
            };
            let mut keyed: Vec<(Vec<usize>, usize)> = cell.iter().map(|&v| (signature(v), v)).collect();
            keyed.sort();
            let mut start = 0;
            for i in 1..=keyed.len() {
                if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                    next.push(keyed[start..i].iter().map(|(_, v)| *v).collect());
                    start = i;
                }
            }
            if next.last().map(Vec::len) != Some(cell.len()) {
                changed = true;
            }
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}
