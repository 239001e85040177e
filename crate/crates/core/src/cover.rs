//! Covers: list assignments together with one matching per edge, and the
//! cover graph they induce.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{edge, Edge, Graph};

/// Color id. Canonical lists are `1..=k`.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverError {
    ListCount { expected: usize, found: usize },
    EmptyList(usize),
    DuplicateColor { vertex: usize, color: Color },
    NotAnEdge(Edge),
    UnknownColor { vertex: usize, color: Color },
    /// A color occurs in two pairs of the same matching.
    NotAMatching(Edge),
    BadPermutation(Edge),
    NotAForest,
    NonPerfectTreeMatching(Edge),
}

impl fmt::Display for CoverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoverError::ListCount { expected, found } => {
                write!(f, "expected {expected} lists, found {found}")
            }
            CoverError::EmptyList(v) => write!(f, "list of vertex {v} is empty"),
            CoverError::DuplicateColor { vertex, color } => {
                write!(f, "color {color} repeated in list of vertex {vertex}")
            }
            CoverError::NotAnEdge((u, v)) => write!(f, "{u}-{v} is not an edge"),
            CoverError::UnknownColor { vertex, color } => {
                write!(f, "color {color} is not in the list of vertex {vertex}")
            }
            CoverError::NotAMatching((u, v)) => write!(f, "pairs on edge {u}-{v} do not form a matching"),
            CoverError::BadPermutation((u, v)) => write!(f, "permutation for edge {u}-{v} is not a bijection"),
            CoverError::NotAForest => write!(f, "edge set is not a forest of the graph"),
            CoverError::NonPerfectTreeMatching((u, v)) => {
                write!(f, "matching on tree edge {u}-{v} is not a bijection between the lists")
            }
        }
    }
}

impl core::error::Error for CoverError {}

/// Lists `L(v)` and matchings `M_uv`. Matchings are keyed by normalized edge
/// `(u, v)`, `u < v`, and store pairs as `(color at u, color at v)`. Every
/// edge of the graph has an entry, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cover {
    lists: Vec<Vec<Color>>,
    matchings: BTreeMap<Edge, Vec<(Color, Color)>>,
}

impl Cover {
    /// Validates lists and matchings against `graph`. Edges missing from
    /// `matchings` get an empty matching.
    pub fn new(
        graph: &Graph,
        lists: Vec<Vec<Color>>,
        matchings: BTreeMap<Edge, Vec<(Color, Color)>>,
    ) -> Result<Self, CoverError> {
        validate_lists(graph, &lists)?;
        let mut full = BTreeMap::new();
        for &e in graph.edges() {
            full.insert(e, Vec::new());
        }
        for (e, pairs) in matchings {
            let (u, v) = e;
            if u > v {
                return Err(CoverError::NotAnEdge(e));
            }
            if !graph.has_edge(u, v) {
                return Err(CoverError::NotAnEdge(e));
            }
            let mut seen_u = BTreeSet::new();
            let mut seen_v = BTreeSet::new();
            for &(a, b) in &pairs {
                if !lists[u].contains(&a) {
                    return Err(CoverError::UnknownColor { vertex: u, color: a });
                }
                if !lists[v].contains(&b) {
                    return Err(CoverError::UnknownColor { vertex: v, color: b });
                }
                if !seen_u.insert(a) || !seen_v.insert(b) {
                    return Err(CoverError::NotAMatching(e));
                }
            }
            let mut pairs = pairs;
            pairs.sort_unstable();
            full.insert(e, pairs);
        }
        Ok(Cover { lists, matchings: full })
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }

    pub fn list(&self, v: usize) -> &[Color] {
        &self.lists[v]
    }

    pub fn matchings(&self) -> &BTreeMap<Edge, Vec<(Color, Color)>> {
        &self.matchings
    }

    /// Pairs of `M_uv` oriented as `(color at u, color at v)`.
    pub fn matching(&self, u: usize, v: usize) -> Vec<(Color, Color)> {
        let e = edge(u, v);
        let pairs = self.matchings.get(&e).map(Vec::as_slice).unwrap_or(&[]);
        if u < v {
            pairs.to_vec()
        } else {
            pairs.iter().map(|&(a, b)| (b, a)).collect()
        }
    }

    /// Whether `(u, cu)` and `(v, cv)` are joined in the cover graph.
    pub fn conflicts(&self, u: usize, cu: Color, v: usize, cv: Color) -> bool {
        if u == v {
            return cu != cv;
        }
        let (key, pair) = if u < v { ((u, v), (cu, cv)) } else { ((v, u), (cv, cu)) };
        self.matchings.get(&key).is_some_and(|m| m.contains(&pair))
    }

    /// Color of `v` matched to color `c` of `u`, if any.
    pub fn partner(&self, u: usize, c: Color, v: usize) -> Option<Color> {
        let e = edge(u, v);
        let pairs = self.matchings.get(&e)?;
        if u < v {
            pairs.iter().find(|p| p.0 == c).map(|p| p.1)
        } else {
            pairs.iter().find(|p| p.1 == c).map(|p| p.0)
        }
    }

    /// Every pair of `M_uv` joins equal colors.
    pub fn is_straight(&self, u: usize, v: usize) -> bool {
        self.matchings
            .get(&edge(u, v))
            .is_some_and(|m| m.iter().all(|&(a, b)| a == b))
    }

    /// True when each list is `1..=k` and each matching is a perfect
    /// matching (a permutation).
    pub fn is_permutation_cover(&self, k: usize) -> bool {
        let canon: Vec<Color> = (1..=k as Color).collect();
        self.lists.iter().all(|l| *l == canon) && self.matchings.values().all(|m| m.len() == k)
    }

    /// Applies per-vertex renamings (`rename[v][i]` is the new name of
    /// `list(v)[i]`). Transversals map along the renaming.
    pub fn renamed(&self, rename: &[Vec<Color>]) -> Cover {
        let lookup = |v: usize, c: Color| -> Color {
            let i = self.lists[v].iter().position(|&x| x == c).expect("color in list");
            rename[v][i]
        };
        let lists = rename.to_vec();
        let matchings = self
            .matchings
            .iter()
            .map(|(&(u, v), pairs)| {
                let mut p: Vec<(Color, Color)> = pairs.iter().map(|&(a, b)| (lookup(u, a), lookup(v, b))).collect();
                p.sort_unstable();
                ((u, v), p)
            })
            .collect();
        Cover { lists, matchings }
    }

    /// Restriction to the subgraph induced by `old_of_new`.
    pub fn restricted(&self, sub: &Graph, old_of_new: &[usize]) -> Cover {
        let lists = old_of_new.iter().map(|&v| self.lists[v].clone()).collect();
        let matchings = sub
            .edges()
            .iter()
            .map(|&(a, b)| {
                let (u, v) = (old_of_new[a], old_of_new[b]);
                // a < b and old_of_new is increasing, so u < v
                ((a, b), self.matchings.get(&(u, v)).cloned().unwrap_or_default())
            })
            .collect();
        Cover { lists, matchings }
    }
}

fn validate_lists(graph: &Graph, lists: &[Vec<Color>]) -> Result<(), CoverError> {
    if lists.len() != graph.vertex_count() {
        return Err(CoverError::ListCount {
            expected: graph.vertex_count(),
            found: lists.len(),
        });
    }
    for (v, list) in lists.iter().enumerate() {
        if list.is_empty() {
            return Err(CoverError::EmptyList(v));
        }
        let mut seen = BTreeSet::new();
        for &c in list {
            if !seen.insert(c) {
                return Err(CoverError::DuplicateColor { vertex: v, color: c });
            }
        }
    }
    Ok(())
}

/// The cover encoding list coloring: every matching pairs equal colors.
pub fn diagonal_cover(graph: &Graph, lists: Vec<Vec<Color>>) -> Result<Cover, CoverError> {
    validate_lists(graph, &lists)?;
    let matchings = graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            let pairs = lists[u]
                .iter()
                .filter(|c| lists[v].contains(c))
                .map(|&c| (c, c))
                .collect::<Vec<_>>();
            ((u, v), pairs)
        })
        .collect::<BTreeMap<_, _>>();
    let mut cover = Cover { lists, matchings };
    for m in cover.matchings.values_mut() {
        m.sort_unstable();
    }
    Ok(cover)
}

/// Source of per-edge permutations for [`full_cover`]. A permutation `p`
/// for edge `(u, v)`, `u < v`, matches color `c` of `u` with `p[c - 1]`
/// of `v`.
#[derive(Debug, Clone)]
pub enum PermutationChooser {
    Identity,
    Random(ChaCha8Rng),
    /// Explicit permutations; edges not in the table get the identity.
    Table(BTreeMap<Edge, Vec<Color>>),
}

impl PermutationChooser {
    pub fn seeded(seed: u64) -> Self {
        PermutationChooser::Random(ChaCha8Rng::seed_from_u64(seed))
    }

    fn choose(&mut self, e: Edge, k: usize) -> Vec<Color> {
        let identity: Vec<Color> = (1..=k as Color).collect();
        match self {
            PermutationChooser::Identity => identity,
            PermutationChooser::Random(rng) => {
                let mut p = identity;
                p.shuffle(rng);
                p
            }
            PermutationChooser::Table(t) => t.get(&e).cloned().unwrap_or(identity),
        }
    }
}

/// Cover with `L(v) = 1..=k` and a perfect matching on every edge.
pub fn full_cover(graph: &Graph, k: usize, chooser: &mut PermutationChooser) -> Result<Cover, CoverError> {
    let lists = vec![(1..=k as Color).collect::<Vec<_>>(); graph.vertex_count()];
    let mut matchings = BTreeMap::new();
    for &e in graph.edges() {
        let p = chooser.choose(e, k);
        if !is_permutation(&p, k) {
            return Err(CoverError::BadPermutation(e));
        }
        matchings.insert(e, permutation_pairs(&p));
    }
    Ok(Cover { lists, matchings })
}

fn is_permutation(p: &[Color], k: usize) -> bool {
    if p.len() != k {
        return false;
    }
    let mut seen = vec![false; k + 1];
    p.iter().all(|&c| {
        let i = c as usize;
        (1..=k).contains(&i) && !core::mem::replace(&mut seen[i], true)
    })
}

fn permutation_pairs(p: &[Color]) -> Vec<(Color, Color)> {
    p.iter().enumerate().map(|(i, &c)| (i as Color + 1, c)).collect()
}

/// All permutations of `1..=k` in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<Color>> {
    let mut out = Vec::new();
    let mut current: Vec<Color> = (1..=k as Color).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
            break;
        };
        let j = (i..current.len()).rev().find(|&j| current[j] > current[i - 1]).expect("successor");
        current.swap(i - 1, j);
        current[i..].reverse();
    }
    out
}

/// `(k!)^(cyclomatic number)`, saturating: the number of straight-forest
/// covers [`enumerate_covers`] walks through before quotienting.
pub fn cover_space_size(graph: &Graph, k: usize) -> u128 {
    let fact: u128 = (1..=k as u128).product();
    let m = graph.cyclomatic_number() as u32;
    fact.checked_pow(m).unwrap_or(u128::MAX)
}

/// Representatives of the permutation covers with lists `1..=k` up to
/// per-vertex relabeling.
///
/// Edges of the BFS spanning forest are fixed to the identity; any cover
/// can be relabeled into that form. The only relabelings preserving it
/// apply one permutation `s` to a whole component, which conjugates every
/// other edge permutation by `s`. A tuple of off-forest permutations is
/// emitted only when it is lexicographically least in its conjugation
/// orbit, component by component, so representatives are pairwise
/// inequivalent.
pub fn enumerate_covers(graph: &Graph, k: usize) -> CoverEnumerator<'_> {
    CoverEnumerator::new(graph, k)
}

pub struct CoverEnumerator<'a> {
    graph: &'a Graph,
    k: usize,
    perms: Vec<Vec<Color>>,
    /// `conj[s][p]`: index of `s p s^-1`.
    conj: Vec<Vec<usize>>,
    free_edges: Vec<Edge>,
    /// Free-edge positions grouped by component.
    groups: Vec<Vec<usize>>,
    odometer: Vec<usize>,
    done: bool,
}

impl<'a> CoverEnumerator<'a> {
    fn new(graph: &'a Graph, k: usize) -> Self {
        let perms = permutations(k);
        let index: BTreeMap<Vec<Color>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let conj = perms
            .iter()
            .map(|s| {
                let mut inv = vec![0 as Color; k];
                for (i, &c) in s.iter().enumerate() {
                    inv[c as usize - 1] = i as Color + 1;
                }
                perms
                    .iter()
                    .map(|p| {
                        // (s p s^-1)(c) = s(p(s^-1(c)))
                        let q: Vec<Color> = (0..k)
                            .map(|c| {
                                let a = inv[c];
                                let b = p[a as usize - 1];
                                s[b as usize - 1]
                            })
                            .collect();
                        index[&q]
                    })
                    .collect()
            })
            .collect();
        let forest: BTreeSet<Edge> = graph.bfs_forest().into_iter().collect();
        let free_edges: Vec<Edge> = graph.edges().iter().copied().filter(|e| !forest.contains(e)).collect();
        let comp = graph.components();
        let mut by_comp: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, &(u, _)) in free_edges.iter().enumerate() {
            by_comp.entry(comp[u]).or_default().push(i);
        }
        let odometer = vec![0; free_edges.len()];
        CoverEnumerator {
            graph,
            k,
            perms,
            conj,
            free_edges,
            groups: by_comp.into_values().collect(),
            odometer,
            done: k == 0,
        }
    }

    fn is_canonical(&self) -> bool {
        self.groups.iter().all(|positions| {
            self.conj.iter().all(|table| {
                for &i in positions {
                    let mine = self.odometer[i];
                    let theirs = table[mine];
                    if theirs != mine {
                        return theirs > mine;
                    }
                }
                true
            })
        })
    }

    fn advance(&mut self) {
        let base = self.perms.len();
        for digit in self.odometer.iter_mut().rev() {
            *digit += 1;
            if *digit < base {
                return;
            }
            *digit = 0;
        }
        self.done = true;
    }

    fn current(&self) -> Cover {
        let k = self.k;
        let lists = vec![(1..=k as Color).collect::<Vec<_>>(); self.graph.vertex_count()];
        let identity = permutation_pairs(&self.perms[0]);
        let mut matchings: BTreeMap<Edge, Vec<(Color, Color)>> =
            self.graph.edges().iter().map(|&e| (e, identity.clone())).collect();
        for (i, &e) in self.free_edges.iter().enumerate() {
            matchings.insert(e, permutation_pairs(&self.perms[self.odometer[i]]));
        }
        Cover { lists, matchings }
    }
}

impl Iterator for CoverEnumerator<'_> {
    type Item = Cover;

    fn next(&mut self) -> Option<Cover> {
        while !self.done {
            let canonical = self.is_canonical();
            let cover = canonical.then(|| self.current());
            self.advance();
            if cover.is_some() {
                return cover;
            }
        }
        None
    }
}

/// Color-vertex `(v, c)` of a cover graph.
pub type ColorVertex = (usize, Color);

/// The cover graph `H_L`: one clique per list, joined across edges by the
/// matchings. Color-vertices of `v` occupy the index range
/// `offsets[v]..offsets[v + 1]`, in list order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverGraph {
    graph: Graph,
    offsets: Vec<usize>,
    labels: Vec<ColorVertex>,
    cross: Vec<Vec<usize>>,
}

impl CoverGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, x: usize) -> ColorVertex {
        self.labels[x]
    }

    pub fn index_of(&self, v: usize, c: Color) -> Option<usize> {
        (self.offsets[v]..self.offsets[v + 1]).find(|&x| self.labels[x].1 == c)
    }

    /// Indices of the color-vertices of graph vertex `v`.
    pub fn fiber(&self, v: usize) -> core::ops::Range<usize> {
        self.offsets[v]..self.offsets[v + 1]
    }

    /// Matching neighbors of color-vertex `x`.
    pub fn cross_neighbors(&self, x: usize) -> &[usize] {
        &self.cross[x]
    }

    pub fn clique_edge_count(&self) -> usize {
        (0..self.graph.vertex_count())
            .map(|v| {
                let s = self.fiber(v).len();
                s * s.saturating_sub(1) / 2
            })
            .sum()
    }

    pub fn matching_edge_count(&self) -> usize {
        self.cross.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn edge_count(&self) -> usize {
        self.clique_edge_count() + self.matching_edge_count()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        if x == y {
            return false;
        }
        let (vx, vy) = (self.labels[x].0, self.labels[y].0);
        vx == vy || self.cross[x].contains(&y)
    }

    /// Number of matching edges between the fibers of `u` and `v`.
    pub fn edges_between(&self, u: usize, v: usize) -> usize {
        self.fiber(u)
            .map(|x| self.cross[x].iter().filter(|&&y| self.labels[y].0 == v).count())
            .sum()
    }
}

/// Builds `H_L` for `cover` on `graph`.
pub fn cover_graph(graph: &Graph, cover: &Cover) -> CoverGraph {
    let n = graph.vertex_count();
    let mut offsets = Vec::with_capacity(n + 1);
    let mut labels = Vec::new();
    offsets.push(0);
    for v in 0..n {
        for &c in cover.list(v) {
            labels.push((v, c));
        }
        offsets.push(labels.len());
    }
    let mut cross = vec![Vec::new(); labels.len()];
    let find = |v: usize, c: Color| -> usize {
        (offsets[v]..offsets[v + 1]).find(|&x| labels[x].1 == c).expect("color in list")
    };
    for (&(u, v), pairs) in cover.matchings() {
        for &(a, b) in pairs {
            let x = find(u, a);
            let y = find(v, b);
            cross[x].push(y);
            cross[y].push(x);
        }
    }
    CoverGraph {
        graph: graph.clone(),
        offsets,
        labels,
        cross,
    }
}

/// Per-vertex renamings applied by [`straighten`], with the tree edges they
/// straighten.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StraightnessCertificate {
    pub tree_edges: Vec<Edge>,
    /// `renaming[v][i]` is the new name of the `i`-th color of the input
    /// list of `v`.
    pub renaming: Vec<Vec<Color>>,
}

impl StraightnessCertificate {
    /// Every certified edge is straight in `cover`.
    pub fn verify(&self, cover: &Cover) -> bool {
        self.tree_edges.iter().all(|&(u, v)| cover.is_straight(u, v))
    }

    /// Image of a transversal of the input cover.
    pub fn map_transversal(&self, input: &Cover, colors: &[Color]) -> Vec<Color> {
        colors
            .iter()
            .enumerate()
            .map(|(v, &c)| {
                let i = input.list(v).iter().position(|&x| x == c).expect("color in list");
                self.renaming[v][i]
            })
            .collect()
    }
}

/// Renames colors so that every edge of `tree_edges` becomes straight.
/// Each tree component keeps the names of its smallest vertex and
/// propagates them outward.
pub fn straighten(
    graph: &Graph,
    cover: &Cover,
    tree_edges: &[Edge],
) -> Result<(Cover, StraightnessCertificate), CoverError> {
    let n = graph.vertex_count();
    let mut tree_adj = vec![Vec::new(); n];
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    let mut normalized = Vec::new();
    for &(a, b) in tree_edges {
        let (u, v) = edge(a, b);
        if u == v || !graph.has_edge(u, v) {
            return Err(CoverError::NotAForest);
        }
        let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
        if ru == rv {
            return Err(CoverError::NotAForest);
        }
        parent[ru] = rv;
        tree_adj[u].push(v);
        tree_adj[v].push(u);
        normalized.push((u, v));
    }
    normalized.sort_unstable();

    let mut renaming: Vec<Option<Vec<Color>>> = vec![None; n];
    for s in 0..n {
        if renaming[s].is_some() {
            continue;
        }
        renaming[s] = Some(cover.list(s).to_vec());
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let rx = renaming[x].clone().expect("assigned");
            for &y in &tree_adj[x] {
                if renaming[y].is_some() {
                    continue;
                }
                let pairs = cover.matching(x, y);
                let (lx, ly) = (cover.list(x), cover.list(y));
                if pairs.len() != lx.len() || lx.len() != ly.len() {
                    return Err(CoverError::NonPerfectTreeMatching(edge(x, y)));
                }
                let mut ry = vec![0 as Color; ly.len()];
                for (cx, cy) in pairs {
                    let ix = lx.iter().position(|&c| c == cx).expect("color in list");
                    let iy = ly.iter().position(|&c| c == cy).expect("color in list");
                    ry[iy] = rx[ix];
                }
                renaming[y] = Some(ry);
                stack.push(y);
            }
        }
    }
    let renaming: Vec<Vec<Color>> = renaming.into_iter().map(|r| r.expect("assigned")).collect();
    let out = cover.renamed(&renaming);
    Ok((
        out,
        StraightnessCertificate {
            tree_edges: normalized,
            renaming,
        },
    ))
}
