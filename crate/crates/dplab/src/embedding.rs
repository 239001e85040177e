//! Embedding abstract graphs in the plane.

use dplab_core::embed::{planar_rotations, EmbedError};
use dplab_core::{Graph, PlaneGraph};

use crate::formats::FormatError;

pub const DEFAULT_EMBED_LIMIT: usize = 12;

/// Some plane embedding of `graph`, outer face chosen by
/// [`PlaneGraph::from_rotations`].
pub fn embed_planar(graph: &Graph, limit: usize) -> Result<PlaneGraph, FormatError> {
    let n = graph.vertex_count();
    if n > limit {
        return Err(FormatError::TooLargeToEmbed { vertices: n, limit });
    }
    if n == 1 {
        return Ok(PlaneGraph::from_rotations(vec![Vec::new()], None)?);
    }
    let rotations = planar_rotations(graph).map_err(|e| match e {
        EmbedError::NotPlanar => FormatError::NotPlanar,
        EmbedError::Disconnected => FormatError::Disconnected,
    })?;
    Ok(PlaneGraph::from_rotations(rotations, None)?)
}

/// Planarity of a possibly disconnected graph, one component at a time.
pub fn is_planar(graph: &Graph) -> bool {
    let comp = graph.components();
    let count = comp.iter().copied().max().map_or(0, |m| m + 1);
    (0..count).all(|c| {
        let keep: Vec<bool> = comp.iter().map(|&x| x == c).collect();
        let (sub, _) = graph.induced(&keep);
        sub.vertex_count() < 5 || planar_rotations(&sub).is_ok()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn small_examples() {
        assert_eq!(embed_planar(&complete(4), 12).unwrap().face_count(), 4);
        assert_eq!(embed_planar(&complete(5), 12).unwrap_err(), FormatError::NotPlanar);
        let k33: Vec<_> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        let k33 = Graph::from_edges(6, &k33).unwrap();
        assert_eq!(embed_planar(&k33, 12).unwrap_err(), FormatError::NotPlanar);
        assert!(!is_planar(&k33));
        assert_eq!(
            embed_planar(&complete(13), 12).unwrap_err(),
            FormatError::TooLargeToEmbed { vertices: 13, limit: 12 }
        );
    }

    #[test]
    fn planarity_by_component() {
        let g = Graph::from_edges(7, &[(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert!(is_planar(&g));
        assert_eq!(embed_planar(&g, 12).unwrap_err(), FormatError::Disconnected);
    }
}
