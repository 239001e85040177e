//! Plane graphs given by rotation systems.
//!
//! Rotations list neighbors in clockwise order. Faces are traced with the
//! rule "the dart after `u -> v` is `v -> w` where `w` follows `u` in the
//! rotation of `v`". Only consistency of the orientation matters.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{edge, Edge, Graph, GraphError};

pub type FaceId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaneGraphError {
    Empty,
    Graph(GraphError),
    /// `v` is listed around `u` but not the other way round (or twice).
    InconsistentRotation { u: usize, v: usize },
    Disconnected,
    /// Face tracing closed with `|V| - |E| + |F| != 2`.
    NonPlanarClosure { vertices: usize, edges: usize, faces: usize },
    BadHint,
}

impl fmt::Display for PlaneGraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneGraphError::Empty => write!(f, "graph has no vertices"),
            PlaneGraphError::Graph(e) => write!(f, "{e}"),
            PlaneGraphError::InconsistentRotation { u, v } => {
                write!(f, "rotation of {u} lists {v} but the converse entry is missing or repeated")
            }
            PlaneGraphError::Disconnected => write!(f, "graph is disconnected"),
            PlaneGraphError::NonPlanarClosure { vertices, edges, faces } => write!(
                f,
                "rotation system is not planar: {vertices} - {edges} + {faces} != 2"
            ),
            PlaneGraphError::BadHint => write!(f, "outer face hint matches no face"),
        }
    }
}

impl core::error::Error for PlaneGraphError {}

impl From<GraphError> for PlaneGraphError {
    fn from(e: GraphError) -> Self {
        PlaneGraphError::Graph(e)
    }
}

/// A face of the embedding: the closed walk of its boundary darts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: FaceId,
    /// Tails of the boundary darts in traversal order. Vertices repeat when
    /// the boundary is not a cycle (cut vertices, bridges).
    pub boundary: Vec<usize>,
}

impl Face {
    /// `d(f)`: number of boundary darts.
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }

    /// Boundary edges, one entry per dart (a bridge shows up twice).
    pub fn darts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.boundary.len();
        (0..n).map(move |i| (self.boundary[i], self.boundary[(i + 1) % n]))
    }

    /// Distinct undirected boundary edges.
    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.darts().map(|(a, b)| edge(a, b)).collect()
    }

    pub fn vertex_set(&self) -> BTreeSet<usize> {
        self.boundary.iter().copied().collect()
    }

    /// True when the boundary is a simple cycle.
    pub fn is_cycle(&self) -> bool {
        self.len() >= 3 && self.vertex_set().len() == self.len()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.boundary.contains(&v)
    }
}

/// Connected simple graph with a planar rotation system and a distinguished
/// outer face. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    graph: Graph,
    rotations: Vec<Vec<usize>>,
    /// `dart_face[u][i]` is the face to which dart `u -> rotations[u][i]` belongs.
    dart_face: Vec<Vec<FaceId>>,
    faces: Vec<Face>,
    outer: FaceId,
}

impl PlaneGraph {
    /// Validates the rotation system, traces faces and selects the outer
    /// face. `outer_hint` is a boundary walk; it matches a face whose
    /// boundary is a cyclic shift of the walk in either direction. Without a
    /// hint the longest face wins, ties going to the lexicographically
    /// smallest boundary (compared in its least rotation).
    pub fn from_rotations(
        rotations: Vec<Vec<usize>>,
        outer_hint: Option<&[usize]>,
    ) -> Result<Self, PlaneGraphError> {
        let n = rotations.len();
        if n == 0 {
            return Err(PlaneGraphError::Empty);
        }
        for (u, rot) in rotations.iter().enumerate() {
            for &v in rot {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, vertex_count: n }.into());
                }
                if v == u {
                    return Err(GraphError::Loop(u).into());
                }
                if rot.iter().filter(|&&x| x == v).count() != 1 {
                    return Err(GraphError::ParallelEdge(edge(u, v)).into());
                }
                if rotations[v].iter().filter(|&&x| x == u).count() != 1 {
                    return Err(PlaneGraphError::InconsistentRotation { u, v });
                }
            }
        }
        let adjacency = rotations
            .iter()
            .map(|r| {
                let mut s = r.clone();
                s.sort_unstable();
                s
            })
            .collect();
        let graph = Graph::from_sorted_adjacency(adjacency);
        if !graph.is_connected() {
            return Err(PlaneGraphError::Disconnected);
        }

        let mut dart_face: Vec<Vec<FaceId>> = rotations.iter().map(|r| vec![usize::MAX; r.len()]).collect();
        let mut faces = Vec::new();
        for u0 in 0..n {
            for i0 in 0..rotations[u0].len() {
                if dart_face[u0][i0] != usize::MAX {
                    continue;
                }
                let id = faces.len();
                let mut boundary = Vec::new();
                let (mut u, mut i) = (u0, i0);
                while dart_face[u][i] == usize::MAX {
                    dart_face[u][i] = id;
                    boundary.push(u);
                    let v = rotations[u][i];
                    let j = position(&rotations[v], u);
                    let next = (j + 1) % rotations[v].len();
                    u = v;
                    i = next;
                }
                faces.push(Face { id, boundary });
            }
        }
        if faces.is_empty() {
            // a single vertex bounds one empty face
            faces.push(Face { id: 0, boundary: Vec::new() });
        }
        let (v, e, f) = (n, graph.edge_count(), faces.len());
        if v + f != e + 2 {
            return Err(PlaneGraphError::NonPlanarClosure { vertices: v, edges: e, faces: f });
        }

        let outer = match outer_hint {
            Some(hint) => faces
                .iter()
                .position(|face| walk_matches(&face.boundary, hint))
                .ok_or(PlaneGraphError::BadHint)?,
            None => default_outer(&faces),
        };
        Ok(PlaneGraph {
            graph,
            rotations,
            dart_face,
            faces,
            outer,
        })
    }

    /// Same embedding with a different outer face.
    pub fn with_outer_face(&self, outer: FaceId) -> Option<PlaneGraph> {
        (outer < self.faces.len()).then(|| PlaneGraph {
            outer,
            ..self.clone()
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.graph.degree(v)
    }

    /// Clockwise neighbor order around `v`.
    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotations[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn outer_face_id(&self) -> FaceId {
        self.outer
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    /// Face containing the dart `u -> v`.
    pub fn dart_face(&self, u: usize, v: usize) -> FaceId {
        self.dart_face[u][position(&self.rotations[u], v)]
    }

    /// The faces on the two sides of edge `uv` (equal for a bridge).
    pub fn edge_faces(&self, u: usize, v: usize) -> (FaceId, FaceId) {
        (self.dart_face(u, v), self.dart_face(v, u))
    }

    /// Distinct faces incident to `v`, in rotation order.
    pub fn faces_at(&self, v: usize) -> Vec<FaceId> {
        let mut out: Vec<FaceId> = Vec::new();
        for &f in &self.dart_face[v] {
            if !out.contains(&f) {
                out.push(f);
            }
        }
        if out.is_empty() {
            out.push(self.outer);
        }
        out
    }

    /// Faces sharing at least one edge with `f` (excluding `f`), ascending.
    pub fn adjacent_faces(&self, f: FaceId) -> Vec<FaceId> {
        let mut out = BTreeSet::new();
        for (a, b) in self.faces[f].darts() {
            let g = self.dart_face(b, a);
            if g != f {
                out.insert(g);
            }
        }
        out.into_iter().collect()
    }

    /// Number of distinct undirected edges on both boundaries.
    pub fn face_shared_edges(&self, f1: FaceId, f2: FaceId) -> usize {
        let a = self.faces[f1].edge_set();
        self.faces[f2].edge_set().iter().filter(|e| a.contains(e)).count()
    }

    /// Splits the vertices off `cycle` into the two regions it bounds.
    /// The exterior is the region holding the outer face.
    pub fn cycle_regions(&self, cycle: &Cycle) -> CycleRegions {
        let on_cycle: BTreeSet<Edge> = cycle.edges().into_iter().collect();
        let mut uf = UnionFind::new(self.faces.len());
        for &(u, v) in self.graph.edges() {
            if !on_cycle.contains(&(u, v)) {
                let (a, b) = self.edge_faces(u, v);
                uf.union(a, b);
            }
        }
        let outer_root = uf.find(self.outer);
        let exterior_face: Vec<bool> = (0..self.faces.len()).map(|f| uf.find(f) == outer_root).collect();
        let mut interior = Vec::new();
        let mut exterior = Vec::new();
        for v in 0..self.vertex_count() {
            if cycle.contains(v) {
                continue;
            }
            if self.faces_at(v).iter().any(|&f| exterior_face[f]) {
                exterior.push(v);
            } else {
                interior.push(v);
            }
        }
        let interior_faces = (0..self.faces.len()).filter(|&f| !exterior_face[f]).collect();
        CycleRegions {
            interior,
            exterior,
            interior_faces,
        }
    }
}

/// Result of [`PlaneGraph::cycle_regions`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRegions {
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
    pub interior_faces: Vec<FaceId>,
}

impl CycleRegions {
    pub fn is_separating(&self) -> bool {
        !self.interior.is_empty() && !self.exterior.is_empty()
    }
}

fn position(list: &[usize], x: usize) -> usize {
    list.iter().position(|&y| y == x).expect("rotation lists neighbor")
}

fn least_rotation(walk: &[usize]) -> Vec<usize> {
    let n = walk.len();
    (0..n)
        .map(|s| (0..n).map(|i| walk[(s + i) % n]).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

fn default_outer(faces: &[Face]) -> FaceId {
    let longest = faces.iter().map(Face::len).max().unwrap_or(0);
    faces
        .iter()
        .filter(|f| f.len() == longest)
        .min_by(|a, b| {
            least_rotation(&a.boundary)
                .cmp(&least_rotation(&b.boundary))
                .then(a.id.cmp(&b.id))
        })
        .map_or(0, |f| f.id)
}

fn walk_matches(boundary: &[usize], hint: &[usize]) -> bool {
    let n = boundary.len();
    if n != hint.len() {
        return false;
    }
    if n == 0 {
        return true;
    }
    (0..n).any(|s| {
        (0..n).all(|i| boundary[(s + i) % n] == hint[i])
            || (0..n).all(|i| boundary[(s + n - i) % n] == hint[i])
    })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NotACycle;

impl fmt::Display for NotACycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertex sequence is not a cycle of the graph")
    }
}

impl core::error::Error for NotACycle {}

/// A simple cycle, stored starting from its smallest vertex and oriented so
/// that the second vertex is smaller than the last.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cycle {
    vertices: Vec<usize>,
}

impl Cycle {
    pub fn new(graph: &Graph, vertices: &[usize]) -> Result<Self, NotACycle> {
        let n = vertices.len();
        if n < 3 {
            return Err(NotACycle);
        }
        let distinct: BTreeSet<usize> = vertices.iter().copied().collect();
        if distinct.len() != n {
            return Err(NotACycle);
        }
        for i in 0..n {
            if !graph.has_edge(vertices[i], vertices[(i + 1) % n]) {
                return Err(NotACycle);
            }
        }
        Ok(Self::normalized(vertices))
    }

    fn normalized(vertices: &[usize]) -> Self {
        let n = vertices.len();
        let start = (0..n).min_by_key(|&i| vertices[i]).unwrap_or(0);
        let forward: Vec<usize> = (0..n).map(|i| vertices[(start + i) % n]).collect();
        let vertices = if n > 2 && forward[1] > forward[n - 1] {
            let mut back = Vec::with_capacity(n);
            back.push(forward[0]);
            back.extend(forward[1..].iter().rev());
            back
        } else {
            forward
        };
        Cycle { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| edge(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn shares_edge_with(&self, other: &Cycle) -> bool {
        let mine = self.edges();
        other.edges().iter().any(|e| mine.contains(e))
    }
}

/// All simple cycles of length `3..=max_len`, each once, sorted by length
/// and then by normalized vertex sequence.
pub fn enumerate_cycles(graph: &Graph, max_len: usize) -> Vec<Cycle> {
    let mut out = Vec::new();
    let n = graph.vertex_count();
    let mut path = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend_paths(graph, s, max_len, &mut path, &mut on_path, &mut out);
        on_path[s] = false;
        path.pop();
    }
    out.sort_by(|a: &Cycle, b: &Cycle| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

fn extend_paths(
    graph: &Graph,
    start: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    out: &mut Vec<Cycle>,
) {
    let last = *path.last().expect("path nonempty");
    for &w in graph.neighbors(last) {
        if w == start {
            if path.len() >= 3 && path[1] < last {
                out.push(Cycle { vertices: path.clone() });
            }
        } else if w > start && !on_path[w] && path.len() < max_len {
            path.push(w);
            on_path[w] = true;
            extend_paths(graph, start, max_len, path, on_path, out);
            on_path[w] = false;
            path.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn k4_has_four_triangular_faces() {
        let g = families::k4();
        assert_eq!(g.face_count(), 4);
        assert!(g.faces().iter().all(|f| f.len() == 3));
        assert_eq!(g.faces().iter().map(Face::len).sum::<usize>(), 12);
    }

    #[test]
    fn cycle_bounds_two_faces() {
        for n in [5, 7] {
            let g = families::cycle(n);
            assert_eq!(g.face_count(), 2);
            assert!(g.faces().iter().all(|f| f.len() == n));
        }
    }

    #[test]
    fn single_edge_has_one_face_of_length_two() {
        let g = PlaneGraph::from_rotations(vec![vec![1], vec![0]], None).unwrap();
        assert_eq!(g.face_count(), 1);
        assert_eq!(g.face(0).len(), 2);
        assert_eq!(g.vertex_count() + g.face_count(), g.edge_count() + 2);
    }

    #[test]
    fn single_vertex_has_one_empty_face() {
        let g = PlaneGraph::from_rotations(vec![vec![]], None).unwrap();
        assert_eq!(g.face_count(), 1);
        assert!(g.outer_face().is_empty());
    }

    #[test]
    fn wheel_w4_has_four_triangles_and_a_quadrilateral() {
        let g = families::wheel(4);
        let mut lengths: Vec<usize> = g.faces().iter().map(Face::len).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![3, 3, 3, 3, 4]);
        assert_eq!(g.outer_face().len(), 4);
    }

    #[test]
    fn shared_edges_between_faces() {
        let c5 = families::cycle(5);
        assert_eq!(c5.face_shared_edges(0, 1), 5);
        let w4 = families::wheel(4);
        let tri: Vec<FaceId> = w4.faces().iter().filter(|f| f.len() == 3).map(|f| f.id).collect();
        let mut ones = 0;
        let mut zeros = 0;
        for (i, &a) in tri.iter().enumerate() {
            for &b in &tri[i + 1..] {
                match w4.face_shared_edges(a, b) {
                    1 => ones += 1,
                    0 => zeros += 1,
                    t => panic!("unexpected {t}"),
                }
            }
        }
        assert_eq!((ones, zeros), (4, 2));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(
            PlaneGraph::from_rotations(vec![vec![1], vec![]], None),
            Err(PlaneGraphError::InconsistentRotation { u: 0, v: 1 })
        );
        assert_eq!(
            PlaneGraph::from_rotations(vec![vec![1], vec![0], vec![3], vec![2]], None),
            Err(PlaneGraphError::Disconnected)
        );
        // K4 with a twisted rotation at one vertex is a torus-like closure.
        let twisted = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 3, 1], vec![0, 1, 2]];
        assert!(matches!(
            PlaneGraph::from_rotations(twisted, None),
            Err(PlaneGraphError::NonPlanarClosure { .. })
        ));
        let c4 = vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]];
        assert_eq!(
            PlaneGraph::from_rotations(c4, Some(&[0, 2, 1, 3])),
            Err(PlaneGraphError::BadHint)
        );
    }

    #[test]
    fn hint_selects_face_in_either_direction() {
        let rot = families::wheel(4).rotations().to_vec();
        let g = PlaneGraph::from_rotations(rot.clone(), Some(&[4, 1, 0])).unwrap();
        assert_eq!(g.outer_face().len(), 3);
        let h = PlaneGraph::from_rotations(rot, Some(&[0, 1, 4])).unwrap();
        assert_eq!(h.outer_face().len(), 3);
    }

    #[test]
    fn rebuilding_is_deterministic() {
        let g = families::wheel(5);
        let h = PlaneGraph::from_rotations(g.rotations().to_vec(), None).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn cycle_counts() {
        assert_eq!(enumerate_cycles(families::cycle(6).graph(), 8).len(), 1);
        let k4 = families::k4();
        let all = enumerate_cycles(k4.graph(), 4);
        assert_eq!(all.len(), 7);
        assert_eq!(all.iter().filter(|c| c.len() == 3).count(), 4);
        assert_eq!(enumerate_cycles(k4.graph(), 3).len(), 4);
    }

    #[test]
    fn cycle_normalization_and_validation() {
        let g = families::cycle(5);
        let a = Cycle::new(g.graph(), &[3, 2, 1, 0, 4]).unwrap();
        let b = Cycle::new(g.graph(), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertices(), &[0, 1, 2, 3, 4]);
        assert_eq!(Cycle::new(g.graph(), &[0, 1, 3, 2, 4]), Err(NotACycle));
        assert_eq!(Cycle::new(g.graph(), &[0, 1]), Err(NotACycle));
    }

    #[test]
    fn regions_of_wheel_rim() {
        let w = families::wheel(4);
        // hub is vertex 4, rim 0..4 bounds the outer face
        let rim = Cycle::new(w.graph(), &[0, 1, 2, 3]).unwrap();
        let r = w.cycle_regions(&rim);
        assert_eq!(r.interior, vec![4]);
        assert!(r.exterior.is_empty());
        assert!(!r.is_separating());
    }
}
