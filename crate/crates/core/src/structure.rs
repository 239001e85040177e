//! Structural configurations: class membership, triangle patches, bad and
//! separating cycles, vertex and face tags, lemma checks and the
//! identification reduction around an internal 4-vertex.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{edge, Edge, Graph};
use crate::plane_graph::{enumerate_cycles, Cycle, FaceId, NotACycle, PlaneGraph};

/// Membership in the two classes: no 4-cycle sharing an edge with a
/// 5-cycle (`in_g1`), resp. with a 6-cycle (`in_g2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ClassTag {
    pub in_g1: bool,
    pub in_g2: bool,
}

/// Edges lying on some cycle of each length `3..=max_len`.
fn edges_on_cycles(graph: &Graph, max_len: usize) -> BTreeMap<usize, BTreeSet<Edge>> {
    let mut out: BTreeMap<usize, BTreeSet<Edge>> = BTreeMap::new();
    for c in enumerate_cycles(graph, max_len) {
        out.entry(c.len()).or_default().extend(c.edges());
    }
    out
}

pub fn class_membership(graph: &Graph) -> ClassTag {
    let on = edges_on_cycles(graph, 6);
    let empty = BTreeSet::new();
    let four = on.get(&4).unwrap_or(&empty);
    let clash = |len: usize| on.get(&len).is_some_and(|s| s.iter().any(|e| four.contains(e)));
    ClassTag {
        in_g1: !clash(5),
        in_g2: !clash(6),
    }
}

/// A 4-cycle and a `len`-cycle sharing an edge, if any.
pub fn class_violation(graph: &Graph, len: usize) -> Option<(Cycle, Cycle)> {
    let cycles = enumerate_cycles(graph, len.max(4));
    let fours: Vec<&Cycle> = cycles.iter().filter(|c| c.len() == 4).collect();
    let others: Vec<&Cycle> = cycles.iter().filter(|c| c.len() == len).collect();
    for a in &fours {
        for b in &others {
            if a.shares_edge_with(b) {
                return Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    None
}

pub fn is_triangle(pg: &PlaneGraph, f: FaceId) -> bool {
    pg.face(f).len() == 3
}

/// Faces of length 3, optionally leaving out the outer face.
pub fn triangular_faces(pg: &PlaneGraph, include_outer: bool) -> Vec<FaceId> {
    (0..pg.face_count())
        .filter(|&f| is_triangle(pg, f) && (include_outer || f != pg.outer_face_id()))
        .collect()
}

/// A maximal edge-connected patch of `index` 3-faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiSubgraph {
    pub index: usize,
    pub faces: Vec<FaceId>,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    /// Edges on exactly one face of the patch.
    pub boundary_edges: Vec<Edge>,
}

impl TiSubgraph {
    /// True for a patch isomorphic to the wheel with four spokes.
    pub fn is_w4(&self) -> bool {
        if self.index != 4 || self.vertices.len() != 5 || self.edges.len() != 8 {
            return false;
        }
        // a vertex adjacent to the other four, which then need two more
        // edges each among themselves: a 4-cycle
        let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
        for &(u, v) in &self.edges {
            *degree.entry(u).or_default() += 1;
            *degree.entry(v).or_default() += 1;
        }
        let mut d: Vec<usize> = degree.into_values().collect();
        d.sort_unstable();
        d == [3, 3, 3, 3, 4]
    }
}

/// Groups 3-faces into maximal patches joined by shared edges.
pub fn triangle_patches(pg: &PlaneGraph, include_outer: bool) -> Vec<TiSubgraph> {
    let tri = triangular_faces(pg, include_outer);
    let is_member: BTreeSet<FaceId> = tri.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in &tri {
        if !seen.insert(start) {
            continue;
        }
        let mut faces = vec![start];
        let mut i = 0;
        while i < faces.len() {
            let f = faces[i];
            i += 1;
            for g in pg.adjacent_faces(f) {
                if is_member.contains(&g) && seen.insert(g) {
                    faces.push(g);
                }
            }
        }
        faces.sort_unstable();
        let mut count: BTreeMap<Edge, usize> = BTreeMap::new();
        let mut vertices = BTreeSet::new();
        for &f in &faces {
            for e in pg.face(f).edge_set() {
                *count.entry(e).or_default() += 1;
            }
            vertices.extend(pg.face(f).vertex_set());
        }
        out.push(TiSubgraph {
            index: faces.len(),
            faces,
            vertices: vertices.into_iter().collect(),
            edges: count.keys().copied().collect(),
            boundary_edges: count.iter().filter(|(_, &c)| c == 1).map(|(&e, _)| e).collect(),
        });
    }
    out
}

/// All `T_i` patches of the embedding, the outer face included when it is
/// a 3-face.
pub fn find_ti_subgraphs(pg: &PlaneGraph) -> Vec<TiSubgraph> {
    triangle_patches(pg, true)
}

/// Flags of one cycle relative to the stored outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClassification {
    pub cycle: Cycle,
    /// 4⁺-vertices off the cycle with at least four neighbors on it.
    pub bad_witnesses: Vec<usize>,
    pub interior: Vec<usize>,
    pub exterior: Vec<usize>,
    pub chords: Vec<Edge>,
    /// `(a, b, u)`: non-adjacent cycle vertices `a < b` with a common
    /// neighbor `u` strictly inside the cycle.
    pub interior_common_neighbors: Vec<(usize, usize, usize)>,
}

impl CycleClassification {
    pub fn is_bad(&self) -> bool {
        !self.bad_witnesses.is_empty()
    }

    pub fn is_good(&self) -> bool {
        self.bad_witnesses.is_empty()
    }

    pub fn is_separating(&self) -> bool {
        !self.interior.is_empty() && !self.exterior.is_empty()
    }

    pub fn has_chord(&self) -> bool {
        !self.chords.is_empty()
    }
}

/// Vertices off `cycle` of degree at least 4 with at least four neighbors
/// on it.
pub fn bad_witnesses(graph: &Graph, cycle: &Cycle) -> Vec<usize> {
    (0..graph.vertex_count())
        .filter(|&x| {
            !cycle.contains(x)
                && graph.degree(x) >= 4
                && graph.neighbors(x).iter().filter(|&&w| cycle.contains(w)).count() >= 4
        })
        .collect()
}

pub fn classify_cycle(pg: &PlaneGraph, vertices: &[usize]) -> Result<CycleClassification, NotACycle> {
    let g = pg.graph();
    let cycle = Cycle::new(g, vertices)?;
    Ok(classify(pg, cycle))
}

fn classify(pg: &PlaneGraph, cycle: Cycle) -> CycleClassification {
    let g = pg.graph();
    let regions = pg.cycle_regions(&cycle);
    let on_cycle: BTreeSet<Edge> = cycle.edges().into_iter().collect();
    let vs = cycle.vertices();
    let mut chords = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if g.has_edge(a, b) && !on_cycle.contains(&edge(a, b)) {
                chords.push(edge(a, b));
            }
        }
    }
    chords.sort_unstable();
    let mut common = Vec::new();
    for &u in &regions.interior {
        let on: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| cycle.contains(w)).collect();
        for (i, &a) in on.iter().enumerate() {
            for &b in &on[i + 1..] {
                if !g.has_edge(a, b) {
                    common.push((a.min(b), a.max(b), u));
                }
            }
        }
    }
    common.sort_unstable();
    CycleClassification {
        bad_witnesses: bad_witnesses(g, &cycle),
        interior: regions.interior,
        exterior: regions.exterior,
        chords,
        interior_common_neighbors: common,
        cycle,
    }
}

/// Tags of one vertex. Counts use 3-faces other than the outer face.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexTags {
    pub internal: bool,
    pub triangles: usize,
    /// 5-vertex on three 3-faces, exactly two of them adjacent.
    pub bad5: bool,
    pub good5: bool,
    /// 4-vertex on exactly two 3-faces, and they are adjacent.
    pub bad4: bool,
    /// For a bad 5-vertex: the 3-face adjacent to neither of the others.
    pub isolated_triangle: Option<FaceId>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaceTags {
    /// Shares no vertex with the outer face (never true for the outer face).
    pub internal: bool,
    /// 3-face edge-adjacent to another 3-face whose two common vertices
    /// both have degree 4.
    pub in_diamond: bool,
    /// 3-face whose vertices all have degree 4.
    pub all_degree_four: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexFaceBadness {
    pub vertices: Vec<VertexTags>,
    pub faces: Vec<FaceTags>,
    /// `(small face, 5-face)` pairs in which the small face is special to
    /// the 5-face.
    pub special: BTreeSet<(FaceId, FaceId)>,
}

impl VertexFaceBadness {
    pub fn is_special(&self, small: FaceId, five: FaceId) -> bool {
        self.special.contains(&(small, five))
    }
}

fn common_vertices(pg: &PlaneGraph, f: FaceId, g: FaceId) -> BTreeSet<usize> {
    let a = pg.face(f).vertex_set();
    pg.face(g).vertex_set().into_iter().filter(|v| a.contains(v)).collect()
}

pub fn classify_vertices_and_faces(pg: &PlaneGraph) -> VertexFaceBadness {
    let g = pg.graph();
    let outer = pg.outer_face_id();
    let on_outer = pg.outer_face().vertex_set();
    let tri: BTreeSet<FaceId> = triangular_faces(pg, false).into_iter().collect();
    let adjacent = |a: FaceId, b: FaceId| pg.face_shared_edges(a, b) > 0;

    let vertices = (0..pg.vertex_count())
        .map(|v| {
            let ts: Vec<FaceId> = pg.faces_at(v).into_iter().filter(|f| tri.contains(f)).collect();
            let d = g.degree(v);
            let mut tags = VertexTags {
                internal: !on_outer.contains(&v),
                triangles: ts.len(),
                ..VertexTags::default()
            };
            if d == 5 && ts.len() == 3 {
                let pairs = [(0, 1), (0, 2), (1, 2)];
                let adj: Vec<(usize, usize)> = pairs.into_iter().filter(|&(i, j)| adjacent(ts[i], ts[j])).collect();
                if adj.len() == 1 {
                    tags.bad5 = true;
                    let (i, j) = adj[0];
                    tags.isolated_triangle = Some(ts[3 - i - j]);
                }
            }
            tags.good5 = d == 5 && !tags.bad5;
            tags.bad4 = d == 4 && ts.len() == 2 && adjacent(ts[0], ts[1]);
            tags
        })
        .collect();

    let faces = (0..pg.face_count())
        .map(|f| {
            let face = pg.face(f);
            let internal = f != outer && face.boundary.iter().all(|v| !on_outer.contains(v));
            let is_tri = tri.contains(&f);
            let in_diamond = is_tri
                && pg.adjacent_faces(f).into_iter().any(|h| {
                    tri.contains(&h) && {
                        let c = common_vertices(pg, f, h);
                        c.len() == 2 && c.iter().all(|&v| g.degree(v) == 4)
                    }
                });
            FaceTags {
                internal,
                in_diamond,
                all_degree_four: is_tri && face.boundary.iter().all(|&v| g.degree(v) == 4),
            }
        })
        .collect::<Vec<_>>();

    let mut special = BTreeSet::new();
    for five in (0..pg.face_count()).filter(|&f| f != outer && pg.face(f).len() == 5) {
        for small in (0..pg.face_count()).filter(|&f| f != outer && f != five) {
            let len = pg.face(small).len();
            if len != 3 && len != 4 {
                continue;
            }
            let shared_internal = common_vertices(pg, small, five)
                .into_iter()
                .filter(|v| !on_outer.contains(v))
                .count();
            let on_d = pg.face(small).vertex_set().iter().filter(|v| on_outer.contains(v)).count();
            let lonely = pg.adjacent_faces(small).into_iter().all(|h| h == outer || !tri.contains(&h));
            let shape = (len == 3 && on_d == 1) || (len == 4 && on_d == 2);
            if shared_internal == 2 && shape && lonely {
                special.insert((small, five));
            }
        }
    }
    VertexFaceBadness {
        vertices,
        faces,
        special,
    }
}

/// Whether a lemma is a statement about every graph of a class, or a
/// property a smallest counterexample would have.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaKind {
    /// Must hold on every member of the class; a violation is a fault.
    Theorem,
    /// May fail on real graphs; a failure shows the graph is not a
    /// smallest counterexample.
    Precondition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Vertices(Vec<usize>),
    Faces(Vec<FaceId>),
    Cycle(Cycle),
    Edges(Vec<Edge>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub id: &'static str,
    pub kind: LemmaKind,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

impl LemmaReport {
    fn new(id: &'static str, kind: LemmaKind, witnesses: Vec<Witness>) -> Self {
        LemmaReport {
            id,
            kind,
            holds: witnesses.is_empty(),
            witnesses,
        }
    }
}

/// Lemma identifiers, grouped by class.
pub mod lemma {
    pub const G1_TRIANGLE_QUAD: &str = "g1/triangle-not-adjacent-to-4-face";
    pub const G1_NO_T3: &str = "g1/no-t3-patch";
    pub const G1_TRIANGLE_PAIR_NEIGHBORS: &str = "g1/adjacent-triangles-see-6+-faces";
    pub const G1_TRIANGLE_BOUND: &str = "g1/4+-vertex-triangle-bound";
    pub const G1_SHORT_CYCLES_GOOD: &str = "g1/7--cycles-good";
    pub const G2_PATCHES: &str = "g2/no-t5-and-t4-is-w4";
    pub const G2_PATCH_EDGES: &str = "g2/patch-edges-see-triangle-or-7+-face";
    pub const G2_TRIANGLE_BOUND: &str = "g2/5+-vertex-triangle-bound";
    pub const INTERNAL_DEGREE: &str = "pre/internal-degree-at-least-4";
    pub const G1_NO_SEPARATING: &str = "pre/g1/no-separating-7--cycle";
    pub const G2_NO_SEPARATING: &str = "pre/g2/no-separating-good-8--cycle";
    pub const OUTER_CHORDLESS: &str = "pre/outer-face-chordless";
    pub const OUTER_NO_COMMON_NEIGHBOR: &str = "pre/outer-face-no-interior-common-neighbor";
    pub const G1_OPPOSITE_FOURS: &str = "pre/g1/opposite-neighbors-not-both-4";
    pub const G2_OPPOSITE_FOURS: &str = "pre/g2/opposite-neighbors-not-both-4";
    pub const G2_TWO_444: &str = "pre/g2/no-444-faces-sharing-one-edge";
}

fn vertex_triangle_bound(pg: &PlaneGraph, min_degree: usize) -> Vec<Witness> {
    let tri: BTreeSet<FaceId> = triangular_faces(pg, true).into_iter().collect();
    (0..pg.vertex_count())
        .filter(|&v| {
            let d = pg.degree(v);
            d >= min_degree && pg.faces_at(v).iter().filter(|f| tri.contains(f)).count() > d - 2
        })
        .map(|v| Witness::Vertices(vec![v]))
        .collect()
}

fn g1_lemmas(pg: &PlaneGraph, out: &mut Vec<LemmaReport>) {
    use lemma::*;
    let tri: BTreeSet<FaceId> = triangular_faces(pg, true).into_iter().collect();
    let mut quad = Vec::new();
    for &f in &tri {
        for h in pg.adjacent_faces(f) {
            if pg.face(h).len() == 4 {
                quad.push(Witness::Faces(vec![f, h]));
            }
        }
    }
    out.push(LemmaReport::new(G1_TRIANGLE_QUAD, LemmaKind::Theorem, quad));

    let big = find_ti_subgraphs(pg)
        .into_iter()
        .filter(|t| t.index >= 3)
        .map(|t| Witness::Faces(t.faces))
        .collect();
    out.push(LemmaReport::new(G1_NO_T3, LemmaKind::Theorem, big));

    let mut pair = Vec::new();
    for &f1 in &tri {
        let adj = pg.adjacent_faces(f1);
        for &f2 in adj.iter().filter(|h| tri.contains(h)) {
            for &h in adj.iter().filter(|&&h| h != f2) {
                if pg.face(h).len() < 6 {
                    pair.push(Witness::Faces(vec![f1, f2, h]));
                }
            }
        }
    }
    out.push(LemmaReport::new(G1_TRIANGLE_PAIR_NEIGHBORS, LemmaKind::Theorem, pair));
    out.push(LemmaReport::new(G1_TRIANGLE_BOUND, LemmaKind::Theorem, vertex_triangle_bound(pg, 4)));

    let bad = enumerate_cycles(pg.graph(), 7)
        .into_iter()
        .filter(|c| !bad_witnesses(pg.graph(), c).is_empty())
        .map(Witness::Cycle)
        .collect();
    out.push(LemmaReport::new(G1_SHORT_CYCLES_GOOD, LemmaKind::Theorem, bad));
}

fn g2_lemmas(pg: &PlaneGraph, out: &mut Vec<LemmaReport>) {
    use lemma::*;
    let patches = find_ti_subgraphs(pg);
    let bad_patch = patches
        .iter()
        .filter(|t| t.index >= 5 || (t.index == 4 && !t.is_w4()))
        .map(|t| Witness::Faces(t.faces.clone()))
        .collect();
    out.push(LemmaReport::new(G2_PATCHES, LemmaKind::Theorem, bad_patch));

    let mut bad_edges = Vec::new();
    for t in patches.iter().filter(|t| (2..=4).contains(&t.index)) {
        for &(u, v) in &t.edges {
            let (a, b) = pg.edge_faces(u, v);
            let (la, lb) = (pg.face(a).len(), pg.face(b).len());
            let ok = (la == 3 && lb == 3) || (la == 3 && lb >= 7) || (lb == 3 && la >= 7);
            if !ok {
                bad_edges.push(Witness::Edges(vec![(u, v)]));
            }
        }
    }
    out.push(LemmaReport::new(G2_PATCH_EDGES, LemmaKind::Theorem, bad_edges));
    out.push(LemmaReport::new(G2_TRIANGLE_BOUND, LemmaKind::Theorem, vertex_triangle_bound(pg, 5)));
}

fn internal_degree(pg: &PlaneGraph) -> LemmaReport {
    let on_outer = pg.outer_face().vertex_set();
    let low = (0..pg.vertex_count())
        .filter(|v| !on_outer.contains(v) && pg.degree(*v) < 4)
        .map(|v| Witness::Vertices(vec![v]))
        .collect();
    LemmaReport::new(lemma::INTERNAL_DEGREE, LemmaKind::Precondition, low)
}

fn outer_cycle_reports(pg: &PlaneGraph, out: &mut Vec<LemmaReport>) {
    let boundary = &pg.outer_face().boundary;
    let Ok(c) = classify_cycle(pg, boundary) else {
        // a non-cycle outer walk has repeated vertices; report it whole
        let w = vec![Witness::Vertices(boundary.clone())];
        out.push(LemmaReport::new(lemma::OUTER_CHORDLESS, LemmaKind::Precondition, w.clone()));
        out.push(LemmaReport::new(lemma::OUTER_NO_COMMON_NEIGHBOR, LemmaKind::Precondition, w));
        return;
    };
    out.push(LemmaReport::new(
        lemma::OUTER_CHORDLESS,
        LemmaKind::Precondition,
        c.chords.iter().map(|&e| Witness::Edges(vec![e])).collect(),
    ));
    out.push(LemmaReport::new(
        lemma::OUTER_NO_COMMON_NEIGHBOR,
        LemmaKind::Precondition,
        c.interior_common_neighbors
            .iter()
            .map(|&(a, b, u)| Witness::Vertices(vec![a, b, u]))
            .collect(),
    ));
}

fn separating_cycles(pg: &PlaneGraph, max_len: usize, only_good: bool) -> Vec<Witness> {
    enumerate_cycles(pg.graph(), max_len)
        .into_iter()
        .map(|c| classify(pg, c))
        .filter(|c| c.is_separating() && (!only_good || c.is_good()))
        .map(|c| Witness::Cycle(c.cycle))
        .collect()
}

/// Internal 4-vertices with no neighbor on the outer face, with their
/// neighbors in rotation order.
fn deep_four_vertices(pg: &PlaneGraph) -> Vec<(usize, [usize; 4])> {
    let on_outer = pg.outer_face().vertex_set();
    (0..pg.vertex_count())
        .filter(|v| !on_outer.contains(v) && pg.degree(*v) == 4)
        .filter(|&v| pg.rotation(v).iter().all(|w| !on_outer.contains(w)))
        .map(|v| {
            let r = pg.rotation(v);
            (v, [r[0], r[1], r[2], r[3]])
        })
        .collect()
}

fn g1_opposite_fours(pg: &PlaneGraph) -> LemmaReport {
    let mut w = Vec::new();
    for (v, n) in deep_four_vertices(pg) {
        for i in 0..2 {
            if pg.degree(n[i]) == 4 && pg.degree(n[i + 2]) == 4 {
                w.push(Witness::Vertices(vec![v, n[i], n[i + 2]]));
            }
        }
    }
    LemmaReport::new(lemma::G1_OPPOSITE_FOURS, LemmaKind::Precondition, w)
}

fn g2_opposite_fours(pg: &PlaneGraph) -> LemmaReport {
    let mut w = Vec::new();
    for (v, n) in deep_four_vertices(pg) {
        for i in 0..2 {
            let kept = (n[i], n[i + 2]);
            let others = (n[i + 1], n[(i + 3) % 4]);
            if identify_and_reduce(pg, v, kept, IdentifyMode::G2).is_ok()
                && pg.degree(others.0) == 4
                && pg.degree(others.1) == 4
            {
                w.push(Witness::Vertices(vec![v, kept.0, kept.1, others.0, others.1]));
            }
        }
    }
    LemmaReport::new(lemma::G2_OPPOSITE_FOURS, LemmaKind::Precondition, w)
}

fn g2_two_444(pg: &PlaneGraph, tags: &VertexFaceBadness) -> LemmaReport {
    let targets: Vec<FaceId> = (0..pg.face_count())
        .filter(|&f| tags.faces[f].internal && tags.faces[f].all_degree_four)
        .collect();
    let mut w = Vec::new();
    for (i, &a) in targets.iter().enumerate() {
        for &b in &targets[i + 1..] {
            if pg.face_shared_edges(a, b) == 1 {
                w.push(Witness::Faces(vec![a, b]));
            }
        }
    }
    LemmaReport::new(lemma::G2_TWO_444, LemmaKind::Precondition, w)
}

/// Runs the lemma checks that apply to the graph's classes: class lemmas
/// as [`LemmaKind::Theorem`], smallest-counterexample properties as
/// [`LemmaKind::Precondition`].
pub fn verify_structural_lemmas(pg: &PlaneGraph) -> Vec<LemmaReport> {
    let class = class_membership(pg.graph());
    let mut out = Vec::new();
    if class.in_g1 {
        g1_lemmas(pg, &mut out);
    }
    if class.in_g2 {
        g2_lemmas(pg, &mut out);
    }
    if class.in_g1 || class.in_g2 {
        out.push(internal_degree(pg));
        outer_cycle_reports(pg, &mut out);
    }
    if class.in_g1 {
        out.push(LemmaReport::new(
            lemma::G1_NO_SEPARATING,
            LemmaKind::Precondition,
            separating_cycles(pg, 7, false),
        ));
        out.push(g1_opposite_fours(pg));
    }
    if class.in_g2 {
        out.push(LemmaReport::new(
            lemma::G2_NO_SEPARATING,
            LemmaKind::Precondition,
            separating_cycles(pg, 8, true),
        ));
        out.push(g2_opposite_fours(pg));
        out.push(g2_two_444(pg, &classify_vertices_and_faces(pg)));
    }
    out
}

/// Individual conditions a smallest counterexample satisfies, with the
/// outer face as the precolored cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Preconditions {
    pub in_class: bool,
    /// The outer face is a cycle of admissible length (and good, for the
    /// second class).
    pub outer_admissible: bool,
    /// Some vertex is off the outer face.
    pub has_interior: bool,
    pub internal_min_degree: bool,
    pub no_separating_cycles: bool,
    pub outer_chordless: bool,
    pub outer_no_common_neighbor: bool,
}

impl Preconditions {
    pub fn all_hold(&self) -> bool {
        self.in_class
            && self.outer_admissible
            && self.has_interior
            && self.internal_min_degree
            && self.no_separating_cycles
            && self.outer_chordless
            && self.outer_no_common_neighbor
    }
}

fn preconditions(pg: &PlaneGraph, in_class: bool, max_len: usize, only_good: bool) -> Preconditions {
    let boundary = &pg.outer_face().boundary;
    let outer = classify_cycle(pg, boundary).ok();
    let outer_admissible = outer
        .as_ref()
        .is_some_and(|c| c.cycle.len() <= max_len && (!only_good || c.is_good()));
    Preconditions {
        in_class,
        outer_admissible,
        has_interior: pg.outer_face().vertex_set().len() < pg.vertex_count(),
        internal_min_degree: internal_degree(pg).holds,
        no_separating_cycles: separating_cycles(pg, max_len, only_good).is_empty(),
        outer_chordless: outer.as_ref().is_some_and(|c| !c.has_chord()),
        outer_no_common_neighbor: outer.as_ref().is_some_and(|c| c.interior_common_neighbors.is_empty()),
    }
}

/// Conditions for the first class: outer face a 7⁻-cycle, no separating
/// 7⁻-cycles.
pub fn g1_preconditions(pg: &PlaneGraph) -> Preconditions {
    preconditions(pg, class_membership(pg.graph()).in_g1, 7, false)
}

/// Conditions for the second class: outer face a good 8⁻-cycle, no
/// separating good 8⁻-cycles.
pub fn g2_preconditions(pg: &PlaneGraph) -> Preconditions {
    preconditions(pg, class_membership(pg.graph()).in_g2, 8, true)
}

/// For a labeled internal 5-face `f = [v1 .. v5]` adjacent to an internal
/// (4,4,4)-face `v1 v2 v12`: if `v3` is a 4-vertex then `v2` has a
/// neighbor on the outer face. Returns `None` when the labels do not fit
/// the hypothesis.
pub fn five_face_neighbor_predicate(pg: &PlaneGraph, f: [usize; 5], v12: usize) -> Option<bool> {
    let tags = classify_vertices_and_faces(pg);
    let g = pg.graph();
    let five = (0..pg.face_count()).find(|&id| {
        let b = &pg.face(id).boundary;
        b.len() == 5 && {
            let mut sorted = b.clone();
            sorted.sort_unstable();
            let mut want = f.to_vec();
            want.sort_unstable();
            sorted == want
        }
    })?;
    let tri = (0..pg.face_count()).find(|&id| {
        let vs = pg.face(id).vertex_set();
        pg.face(id).len() == 3 && vs.contains(&f[0]) && vs.contains(&f[1]) && vs.contains(&v12)
    })?;
    if !tags.faces[five].internal || !tags.faces[tri].internal || !tags.faces[tri].all_degree_four {
        return None;
    }
    if g.degree(f[2]) != 4 {
        return Some(true);
    }
    let on_outer = pg.outer_face().vertex_set();
    Some(g.neighbors(f[1]).iter().any(|w| on_outer.contains(w)))
}

/// Class check applied to the identified graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentifyMode {
    Unchecked,
    G1,
    G2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdentifyError {
    /// The center is not a 4-vertex, or the kept pair are not opposite
    /// neighbors.
    BadArguments,
    CreatesLoop,
    CreatesParallelEdge { common_neighbor: usize },
    NotInternal { vertex: usize },
    BadFourCyclePresent { cycle: Cycle },
    CreatesForbiddenAdjacency,
}

impl fmt::Display for IdentifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdentifyError::BadArguments => write!(f, "center must be a 4-vertex and the kept pair opposite neighbors"),
            IdentifyError::CreatesLoop => write!(f, "kept vertices are adjacent; identification creates a loop"),
            IdentifyError::CreatesParallelEdge { common_neighbor } => {
                write!(f, "kept vertices share neighbor {common_neighbor}; identification creates a parallel edge")
            }
            IdentifyError::NotInternal { vertex } => write!(f, "vertex {vertex} lies on the outer face"),
            IdentifyError::BadFourCyclePresent { cycle } => {
                write!(f, "bad 4-cycle {:?} passes through the kept pair and the center", cycle.vertices())
            }
            IdentifyError::CreatesForbiddenAdjacency => write!(f, "identified graph leaves the class"),
        }
    }
}

impl core::error::Error for IdentifyError {}

/// Deletes the center `v` and its two neighbors outside `kept`, then
/// identifies the kept pair `v1, v3`. The merged vertex takes the smaller
/// of the two ids after the remaining vertices are renumbered in order;
/// its rotation is that of `v1` read from just after `v`, followed by
/// that of `v3` read from just after `v`.
///
/// Checked in order: loop, parallel edge, all five vertices off the outer
/// face, bad 4-cycle through `v1, v, v3`, class of the result.
pub fn identify_and_reduce(
    pg: &PlaneGraph,
    center: usize,
    kept: (usize, usize),
    mode: IdentifyMode,
) -> Result<PlaneGraph, IdentifyError> {
    let g = pg.graph();
    if center >= pg.vertex_count() || g.degree(center) != 4 {
        return Err(IdentifyError::BadArguments);
    }
    let rot = pg.rotation(center);
    let i1 = rot.iter().position(|&w| w == kept.0).ok_or(IdentifyError::BadArguments)?;
    if rot[(i1 + 2) % 4] != kept.1 {
        return Err(IdentifyError::BadArguments);
    }
    let (v1, v3) = kept;
    let removed = [center, rot[(i1 + 1) % 4], rot[(i1 + 3) % 4]];

    if g.has_edge(v1, v3) {
        return Err(IdentifyError::CreatesLoop);
    }
    if let Some(&w) = g
        .neighbors(v1)
        .iter()
        .find(|&&w| !removed.contains(&w) && g.has_edge(w, v3))
    {
        return Err(IdentifyError::CreatesParallelEdge { common_neighbor: w });
    }
    let on_outer = pg.outer_face().vertex_set();
    for &x in [center].iter().chain(rot.iter()) {
        if on_outer.contains(&x) {
            return Err(IdentifyError::NotInternal { vertex: x });
        }
    }
    for &w in g.neighbors(v1) {
        if w != center && g.has_edge(w, v3) {
            let cycle = Cycle::new(g, &[v1, center, v3, w]).expect("4-cycle through the center");
            if !bad_witnesses(g, &cycle).is_empty() {
                return Err(IdentifyError::BadFourCyclePresent { cycle });
            }
        }
    }

    let n = pg.vertex_count();
    let (keep_id, drop_id) = (v1.min(v3), v1.max(v3));
    let mut new_id = vec![usize::MAX; n];
    let mut next = 0;
    for x in 0..n {
        if removed.contains(&x) || x == drop_id {
            continue;
        }
        new_id[x] = next;
        next += 1;
    }
    new_id[drop_id] = new_id[keep_id];
    let read_after = |x: usize| -> Vec<usize> {
        let r = pg.rotation(x);
        let p = r.iter().position(|&w| w == center).expect("adjacent to center");
        (1..r.len()).map(|i| r[(p + i) % r.len()]).collect()
    };
    let mut rotations = vec![Vec::new(); next];
    for x in 0..n {
        if new_id[x] == usize::MAX || x == v1 || x == v3 {
            continue;
        }
        rotations[new_id[x]] = pg
            .rotation(x)
            .iter()
            .filter(|w| !removed.contains(w))
            .map(|&w| new_id[w])
            .collect();
    }
    rotations[new_id[keep_id]] = read_after(v1)
        .into_iter()
        .chain(read_after(v3))
        .filter(|w| !removed.contains(w))
        .map(|w| new_id[w])
        .collect();
    let hint: Vec<usize> = pg.outer_face().boundary.iter().map(|&w| new_id[w]).collect();
    let reduced = PlaneGraph::from_rotations(rotations, Some(&hint)).expect("contraction of a plane graph is plane");
    let ok = match mode {
        IdentifyMode::Unchecked => true,
        IdentifyMode::G1 => class_membership(reduced.graph()).in_g1,
        IdentifyMode::G2 => class_membership(reduced.graph()).in_g2,
    };
    if !ok {
        return Err(IdentifyError::CreatesForbiddenAdjacency);
    }
    Ok(reduced)
}
