//! Transversal search, precoloring extension and the three chromatic
//! numbers at desk scale.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::cover::{
    cover_graph, cover_space_size, enumerate_covers, full_cover, Color, Cover, CoverGraph, PermutationChooser,
};
use crate::graph::{edge, Edge, Graph};

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// Two precolored endpoints of an edge conflict through the matching.
    InconsistentPrecoloring(Edge),
    ColorNotInList { vertex: usize, color: Color },
    VertexOutOfRange(usize),
    ZeroColors,
    BudgetExceeded { required: u128, budget: u128 },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::InconsistentPrecoloring((u, v)) => write!(f, "precolored edge {u}-{v} conflicts"),
            SolveError::ColorNotInList { vertex, color } => {
                write!(f, "color {color} is not in the list of vertex {vertex}")
            }
            SolveError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            SolveError::ZeroColors => write!(f, "k must be at least 1"),
            SolveError::BudgetExceeded { required, budget } => {
                write!(f, "search needs {required} steps, budget is {budget}")
            }
        }
    }
}

impl core::error::Error for SolveError {}

/// Search limits. `max_covers` bounds exhaustive cover enumeration before
/// it starts; `max_nodes` bounds backtracking nodes in list and ordinary
/// coloring searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_covers: u128,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_covers: 2_000_000,
            max_nodes: 50_000_000,
        }
    }
}

/// One color per vertex, independent in the cover graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transversal {
    pub colors: Vec<Color>,
}

impl Transversal {
    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn is_valid(&self, graph: &Graph, cover: &Cover) -> bool {
        is_transversal(graph, cover, &self.colors)
    }
}

/// Checks the transversal conditions directly against the cover.
pub fn is_transversal(graph: &Graph, cover: &Cover, colors: &[Color]) -> bool {
    colors.len() == graph.vertex_count()
        && colors.iter().enumerate().all(|(v, c)| cover.list(v).contains(c))
        && graph
            .edges()
            .iter()
            .all(|&(u, v)| !cover.conflicts(u, colors[u], v, colors[v]))
}

/// Partial assignment of colors, typically on the vertices of a cycle.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Precoloring {
    assignment: BTreeMap<usize, Color>,
}

impl Precoloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Color)>) -> Self {
        Precoloring {
            assignment: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, v: usize, c: Color) {
        self.assignment.insert(v, c);
    }

    pub fn get(&self, v: usize) -> Option<Color> {
        self.assignment.get(&v).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.assignment.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Color)> + '_ {
        self.assignment.iter().map(|(&v, &c)| (v, c))
    }

    /// Errors if a vertex is out of range, a color is not in its list, or
    /// two precolored neighbors conflict.
    pub fn validate(&self, graph: &Graph, cover: &Cover) -> Result<(), SolveError> {
        for (v, c) in self.iter() {
            if v >= graph.vertex_count() {
                return Err(SolveError::VertexOutOfRange(v));
            }
            if !cover.list(v).contains(&c) {
                return Err(SolveError::ColorNotInList { vertex: v, color: c });
            }
        }
        for (v, c) in self.iter() {
            for &w in graph.neighbors(v) {
                if let Some(d) = self.get(w) {
                    if v < w && cover.conflicts(v, c, w, d) {
                        return Err(SolveError::InconsistentPrecoloring((v, w)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Backtracking over graph vertices in smallest-last order, colors in
/// ascending order, with forward checking on matched neighbors.
struct Search<'a> {
    h: &'a CoverGraph,
    order: Vec<usize>,
    blocked: Vec<u32>,
    chosen: Vec<usize>,
    candidates: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    /// `fixed` lists `(vertex, color-vertex)` pairs assigned up front;
    /// returns `None` when they already leave some vertex without options.
    fn new(h: &'a CoverGraph, fixed: &[(usize, usize)]) -> Option<Self> {
        let g = h.graph();
        let n = g.vertex_count();
        let candidates = (0..n)
            .map(|v| {
                let mut xs: Vec<usize> = h.fiber(v).collect();
                xs.sort_by_key(|&x| h.label(x).1);
                xs
            })
            .collect();
        let mut s = Search {
            h,
            order: Vec::new(),
            blocked: vec![0; h.vertex_count()],
            chosen: vec![NONE; n],
            candidates,
        };
        for &(v, x) in fixed {
            s.chosen[v] = x;
            for &y in h.cross_neighbors(x) {
                s.blocked[y] += 1;
            }
        }
        s.order = g.smallest_last_order().into_iter().filter(|&v| s.chosen[v] == NONE).collect();
        let wiped = s
            .order
            .iter()
            .any(|&v| h.fiber(v).all(|x| s.blocked[x] > 0));
        (!wiped).then_some(s)
    }

    fn assign(&mut self, v: usize, x: usize) -> bool {
        self.chosen[v] = x;
        let mut ok = true;
        for &y in self.h.cross_neighbors(x) {
            self.blocked[y] += 1;
        }
        for &y in self.h.cross_neighbors(x) {
            let w = self.h.label(y).0;
            if self.chosen[w] == NONE && self.h.fiber(w).all(|z| self.blocked[z] > 0) {
                ok = false;
                break;
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, x: usize) {
        for &y in self.h.cross_neighbors(x) {
            self.blocked[y] -= 1;
        }
        self.chosen[v] = NONE;
    }

    /// Calls `leaf` on every transversal; stops when it returns `true`.
    fn run(&mut self, depth: usize, leaf: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return leaf(&self.chosen);
        }
        let v = self.order[depth];
        for i in 0..self.candidates[v].len() {
            let x = self.candidates[v][i];
            if self.blocked[x] > 0 {
                continue;
            }
            let ok = self.assign(v, x);
            let stop = ok && self.run(depth + 1, leaf);
            self.unassign(v, x);
            if stop {
                return true;
            }
        }
        false
    }
}

fn to_transversal(h: &CoverGraph, chosen: &[usize]) -> Transversal {
    Transversal {
        colors: chosen.iter().map(|&x| h.label(x).1).collect(),
    }
}

/// A transversal of `h`, if one exists.
pub fn find_transversal(h: &CoverGraph) -> Option<Transversal> {
    let mut found = None;
    let mut search = Search::new(h, &[])?;
    search.run(0, &mut |chosen| {
        found = Some(to_transversal(h, chosen));
        true
    });
    found
}

/// Number of transversals of `h`.
pub fn count_transversals(h: &CoverGraph) -> u64 {
    let mut count = 0u64;
    if let Some(mut search) = Search::new(h, &[]) {
        search.run(0, &mut |_| {
            count += 1;
            false
        });
    }
    count
}

/// Extends `pre` to a transversal of the cover, if possible.
pub fn extend_precoloring(graph: &Graph, cover: &Cover, pre: &Precoloring) -> Result<Option<Transversal>, SolveError> {
    pre.validate(graph, cover)?;
    let h = cover_graph(graph, cover);
    Ok(extend_in(&h, pre))
}

fn extend_in(h: &CoverGraph, pre: &Precoloring) -> Option<Transversal> {
    let fixed: Vec<(usize, usize)> = pre
        .iter()
        .map(|(v, c)| (v, h.index_of(v, c).expect("validated color")))
        .collect();
    let mut search = Search::new(h, &fixed)?;
    let mut found = None;
    search.run(0, &mut |chosen| {
        found = Some(to_transversal(h, chosen));
        true
    });
    found
}

/// `L*(x)`: the colors of `x` not matched to the color of a colored
/// neighbor. Colored vertices keep their full list.
pub fn residual_lists(graph: &Graph, cover: &Cover, partial: &[Option<Color>]) -> Vec<Vec<Color>> {
    (0..graph.vertex_count())
        .map(|x| {
            if partial[x].is_some() {
                return cover.list(x).to_vec();
            }
            cover
                .list(x)
                .iter()
                .copied()
                .filter(|&c| {
                    graph
                        .neighbors(x)
                        .iter()
                        .all(|&u| partial[u].map_or(true, |cu| !cover.conflicts(u, cu, x, c)))
                })
                .collect()
        })
        .collect()
}

/// How covers are drawn for a colorability check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverMode {
    /// Every canonical permutation cover of the reduced graph.
    Exhaustive,
    /// `samples` uniformly random permutation covers from a ChaCha8 stream
    /// seeded with `seed`. Evidence, not proof.
    Sampled { samples: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    AllColorable,
    /// A permutation cover of the whole graph with no transversal.
    Counterexample(Cover),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorabilityVerdict {
    pub k: usize,
    pub mode: CoverMode,
    pub outcome: Colorability,
    pub covers_checked: u64,
    /// Vertices left after deleting vertices of degree below `k`; only
    /// these are searched in exhaustive mode.
    pub core_size: usize,
}

impl ColorabilityVerdict {
    pub fn all_colorable(&self) -> bool {
        self.outcome == Colorability::AllColorable
    }
}

fn identity_pairs(k: usize) -> Vec<(Color, Color)> {
    (1..=k as Color).map(|c| (c, c)).collect()
}

/// Lifts a cover of an induced subgraph back to `graph`, using identity
/// matchings on every other edge.
fn lift_cover(graph: &Graph, k: usize, sub: &Graph, old_of_new: &[usize], cover: &Cover) -> Cover {
    let lists = vec![(1..=k as Color).collect::<Vec<_>>(); graph.vertex_count()];
    let mut matchings: BTreeMap<Edge, Vec<(Color, Color)>> =
        graph.edges().iter().map(|&e| (e, identity_pairs(k))).collect();
    for &(a, b) in sub.edges() {
        matchings.insert((old_of_new[a], old_of_new[b]), cover.matching(a, b));
    }
    Cover::new(graph, lists, matchings).expect("lifted cover is valid")
}

/// Decides DP-`k`-colorability.
///
/// Exhaustive mode first deletes vertices of degree below `k` (a deleted
/// vertex always has a free color once the rest is colored), then checks
/// every canonical cover of what remains. The budget guard is
/// `(k!)^(cyclomatic number of the core)`.
pub fn dp_colorable(graph: &Graph, k: usize, mode: CoverMode, budget: Budget) -> Result<ColorabilityVerdict, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    match mode {
        CoverMode::Exhaustive => {
            let mask = graph.k_core_mask(k, &[]);
            let (core, old_of_new) = graph.induced(&mask);
            let required = cover_space_size(&core, k);
            if required > budget.max_covers {
                return Err(SolveError::BudgetExceeded {
                    required,
                    budget: budget.max_covers,
                });
            }
            let mut checked = 0;
            for cover in enumerate_covers(&core, k) {
                checked += 1;
                if find_transversal(&cover_graph(&core, &cover)).is_none() {
                    let lifted = lift_cover(graph, k, &core, &old_of_new, &cover);
                    return Ok(ColorabilityVerdict {
                        k,
                        mode,
                        outcome: Colorability::Counterexample(lifted),
                        covers_checked: checked,
                        core_size: core.vertex_count(),
                    });
                }
            }
            Ok(ColorabilityVerdict {
                k,
                mode,
                outcome: Colorability::AllColorable,
                covers_checked: checked,
                core_size: core.vertex_count(),
            })
        }
        CoverMode::Sampled { samples, seed } => {
            let mut chooser = PermutationChooser::seeded(seed);
            for i in 0..samples {
                let cover = full_cover(graph, k, &mut chooser).expect("random permutations are bijections");
                if find_transversal(&cover_graph(graph, &cover)).is_none() {
                    return Ok(ColorabilityVerdict {
                        k,
                        mode,
                        outcome: Colorability::Counterexample(cover),
                        covers_checked: i as u64 + 1,
                        core_size: graph.vertex_count(),
                    });
                }
            }
            Ok(ColorabilityVerdict {
                k,
                mode,
                outcome: Colorability::AllColorable,
                covers_checked: samples as u64,
                core_size: graph.vertex_count(),
            })
        }
    }
}

/// Result of a chromatic-number style search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChromaticValue {
    Exact(usize),
    /// Not attained for any `k <= k_max`.
    Exceeds(usize),
}

impl ChromaticValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            ChromaticValue::Exact(k) => Some(k),
            ChromaticValue::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for ChromaticValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChromaticValue::Exact(k) => write!(f, "{k}"),
            ChromaticValue::Exceeds(k) => write!(f, ">{k}"),
        }
    }
}

/// Smallest `k <= k_max` with DP-`k`-colorability, by exhaustive covers.
pub fn dp_chromatic(graph: &Graph, k_max: usize, budget: Budget) -> Result<ChromaticValue, SolveError> {
    if graph.vertex_count() == 0 {
        return Ok(ChromaticValue::Exact(0));
    }
    for k in 1..=k_max {
        if dp_colorable(graph, k, CoverMode::Exhaustive, budget)?.all_colorable() {
            return Ok(ChromaticValue::Exact(k));
        }
    }
    Ok(ChromaticValue::Exceeds(k_max))
}

/// Plain backtracking list coloring in smallest-last order. `nodes` counts
/// search nodes against `limit`.
fn list_color_search(graph: &Graph, lists: &[Vec<Color>], nodes: &mut u64, limit: u64) -> Result<Option<Vec<Color>>, SolveError> {
    let order = graph.smallest_last_order();
    let mut colors = vec![0 as Color; graph.vertex_count()];
    fn go(
        graph: &Graph,
        lists: &[Vec<Color>],
        order: &[usize],
        depth: usize,
        colors: &mut [Color],
        nodes: &mut u64,
        limit: u64,
    ) -> Result<bool, SolveError> {
        if depth == order.len() {
            return Ok(true);
        }
        *nodes += 1;
        if *nodes > limit {
            return Err(SolveError::BudgetExceeded {
                required: u128::from(*nodes),
                budget: u128::from(limit),
            });
        }
        let v = order[depth];
        for &c in &lists[v] {
            if graph.neighbors(v).iter().any(|&w| colors[w] == c) {
                continue;
            }
            colors[v] = c;
            if go(graph, lists, order, depth + 1, colors, nodes, limit)? {
                return Ok(true);
            }
            colors[v] = 0;
        }
        Ok(false)
    }
    let found = go(graph, lists, &order, 0, &mut colors, nodes, limit)?;
    Ok(found.then_some(colors))
}

/// A proper coloring with `c(v)` in `lists[v]`, if one exists. Color `0`
/// is reserved.
pub fn list_colorable(graph: &Graph, lists: &[Vec<Color>]) -> Option<Vec<Color>> {
    let mut nodes = 0;
    list_color_search(graph, lists, &mut nodes, u64::MAX).expect("unbounded search")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Choosability {
    Choosable,
    /// Lists of size `k` admitting no proper coloring.
    Counterexample(Vec<Vec<Color>>),
}

/// Canonical enumeration of list assignments on one induced subgraph.
struct ListSearch<'a> {
    graph: &'a Graph,
    k: usize,
    order: Vec<usize>,
    /// Depth after which every neighbor of `v` has a list.
    closes: Vec<Vec<usize>>,
    lists: Vec<Vec<Color>>,
    nodes: u64,
    limit: u64,
}

impl ListSearch<'_> {
    /// Every color of `L(v)` also occurs on a neighbor of `v`. A minimal
    /// bad assignment has this property: otherwise `v` could always take
    /// its unshared color.
    fn shared(&self, v: usize) -> bool {
        self.lists[v]
            .iter()
            .all(|c| self.graph.neighbors(v).iter().any(|&w| self.lists[w].contains(c)))
    }

    /// Returns a bad assignment on the subgraph, if any.
    fn run(&mut self, depth: usize, used: Color) -> Result<Option<Vec<Vec<Color>>>, SolveError> {
        if depth == self.order.len() {
            let mut nodes = 0;
            let colorable = list_color_search(self.graph, &self.lists, &mut nodes, u64::MAX)?;
            return Ok(colorable.is_none().then(|| self.lists.clone()));
        }
        let v = self.order[depth];
        let k = self.k;
        // j colors reused from 1..=used, k - j fresh ones
        for j in (0..=k.min(used as usize)).rev() {
            let mut subset: Vec<Color> = (1..=j as Color).collect();
            loop {
                self.nodes += 1;
                if self.nodes > self.limit {
                    return Err(SolveError::BudgetExceeded {
                        required: u128::from(self.nodes),
                        budget: u128::from(self.limit),
                    });
                }
                let mut list = subset.clone();
                list.extend((used + 1)..=(used + (k - j) as Color));
                self.lists[v] = list;
                let ok = self.closes[depth].iter().all(|&u| self.shared(u));
                if ok {
                    let next_used = used + (k - j) as Color;
                    if let Some(bad) = self.run(depth + 1, next_used)? {
                        return Ok(Some(bad));
                    }
                }
                if !next_subset(&mut subset, used) {
                    break;
                }
            }
        }
        self.lists[v].clear();
        Ok(None)
    }
}

/// Advances a sorted subset of `1..=n` to the next one of the same size in
/// lexicographic order.
fn next_subset(subset: &mut [Color], n: Color) -> bool {
    let r = subset.len();
    for i in (0..r).rev() {
        let cap = n - (r - 1 - i) as Color;
        if subset[i] < cap {
            subset[i] += 1;
            for j in i + 1..r {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn bfs_order(graph: &Graph) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut starts: Vec<usize> = (0..n).collect();
    starts.sort_by_key(|&v| (core::cmp::Reverse(graph.degree(v)), v));
    for s in starts {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut i = order.len();
        order.push(s);
        while i < order.len() {
            let u = order[i];
            i += 1;
            for &w in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
        }
    }
    order
}

/// Decides `k`-choosability exactly.
///
/// A graph is not `k`-choosable iff some connected induced subgraph `H`
/// with minimum degree at least `k` carries a bad assignment in which
/// every color of every `L(v)` also lies in the list of a neighbor of `v`
/// (take `H` minimal among induced subgraphs the assignment does not
/// color). Every such subgraph is searched with colors numbered in order
/// of first use, so the enumeration is complete without a fixed pool.
pub fn is_k_choosable(graph: &Graph, k: usize, budget: Budget) -> Result<Choosability, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    let n = graph.vertex_count();
    let mask = graph.k_core_mask(k, &[]);
    let core_vertices: Vec<usize> = (0..n).filter(|&v| mask[v]).collect();
    let m = core_vertices.len();
    if m > 24 {
        return Err(SolveError::BudgetExceeded {
            required: 1u128 << m.min(127),
            budget: budget.max_covers,
        });
    }
    let mut subsets: Vec<u32> = (1u32..(1u32 << m)).collect();
    subsets.sort_by_key(|s| (s.count_ones(), *s));
    let mut nodes = 0u64;
    for s in subsets {
        let mut keep = vec![false; n];
        for (i, &v) in core_vertices.iter().enumerate() {
            if s >> i & 1 == 1 {
                keep[v] = true;
            }
        }
        let (sub, old_of_new) = graph.induced(&keep);
        if !sub.is_connected() || (0..sub.vertex_count()).any(|v| sub.degree(v) < k) {
            continue;
        }
        let order = bfs_order(&sub);
        let mut position = vec![0; sub.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        let mut closes = vec![Vec::new(); order.len()];
        for v in 0..sub.vertex_count() {
            let last = sub
                .neighbors(v)
                .iter()
                .map(|&w| position[w])
                .chain(core::iter::once(position[v]))
                .max()
                .expect("vertex has a position");
            closes[last].push(v);
        }
        let mut search = ListSearch {
            graph: &sub,
            k,
            order,
            closes,
            lists: vec![Vec::new(); sub.vertex_count()],
            nodes,
            limit: budget.max_nodes,
        };
        let found = search.run(0, 0)?;
        nodes = search.nodes;
        if let Some(bad) = found {
            let mut fresh = bad.iter().flatten().copied().max().unwrap_or(0);
            let mut lists = vec![Vec::new(); n];
            for (i, &v) in old_of_new.iter().enumerate() {
                lists[v] = bad[i].clone();
            }
            for list in lists.iter_mut().filter(|l| l.is_empty()) {
                *list = ((fresh + 1)..=(fresh + k as Color)).collect();
                fresh += k as Color;
            }
            return Ok(Choosability::Counterexample(lists));
        }
    }
    Ok(Choosability::Choosable)
}

/// Smallest `k <= k_max` for which the graph is `k`-choosable.
pub fn list_chromatic(graph: &Graph, k_max: usize, budget: Budget) -> Result<ChromaticValue, SolveError> {
    if graph.vertex_count() == 0 {
        return Ok(ChromaticValue::Exact(0));
    }
    for k in 1..=k_max {
        if is_k_choosable(graph, k, budget)? == Choosability::Choosable {
            return Ok(ChromaticValue::Exact(k));
        }
    }
    Ok(ChromaticValue::Exceeds(k_max))
}

/// A proper `k`-coloring, if one exists within the node budget.
pub fn k_coloring(graph: &Graph, k: usize, budget: Budget) -> Result<Option<Vec<Color>>, SolveError> {
    let lists = vec![(1..=k as Color).collect::<Vec<_>>(); graph.vertex_count()];
    let mut nodes = 0;
    list_color_search(graph, &lists, &mut nodes, budget.max_nodes)
}

/// Smallest `k <= k_max` admitting a proper `k`-coloring.
pub fn chromatic(graph: &Graph, k_max: usize, budget: Budget) -> Result<ChromaticValue, SolveError> {
    if graph.vertex_count() == 0 {
        return Ok(ChromaticValue::Exact(0));
    }
    for k in 1..=k_max {
        if k_coloring(graph, k, budget)?.is_some() {
            return Ok(ChromaticValue::Exact(k));
        }
    }
    Ok(ChromaticValue::Exceeds(k_max))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    AllExtend,
    /// A cover of the whole graph and a precoloring valid for it that does
    /// not extend.
    Failure { cover: Cover, precoloring: Precoloring },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionVerdict {
    pub k: usize,
    pub mode: CoverMode,
    pub outcome: Extension,
    pub covers_checked: u64,
    /// Distinct precolorings of the attachment vertices tried, summed over
    /// covers.
    pub precolorings_checked: u64,
    /// Uncolored vertices that survive peeling.
    pub core_size: usize,
}

impl ExtensionVerdict {
    pub fn all_extend(&self) -> bool {
        self.outcome == Extension::AllExtend
    }
}

/// The part of an extension problem that needs searching.
struct Reduced {
    /// `P ∪ U*` as a vertex mask of the input graph.
    keep: Vec<bool>,
    /// Uncolored survivors.
    core: Vec<usize>,
    /// Precolored vertices adjacent to a survivor.
    attach: Vec<usize>,
}

/// Deletes uncolored vertices with fewer than `k` remaining neighbors.
/// Whatever the precoloring and the cover, a deleted vertex can be colored
/// after everything that remains.
fn reduce(graph: &Graph, domain: &[bool], k: usize) -> Reduced {
    let alive = graph.k_core_mask(k, domain);
    let n = graph.vertex_count();
    let core: Vec<usize> = (0..n).filter(|&v| alive[v] && !domain[v]).collect();
    let attach: Vec<usize> = (0..n)
        .filter(|&v| domain[v] && graph.neighbors(v).iter().any(|&w| alive[w] && !domain[w]))
        .collect();
    Reduced {
        keep: alive,
        core,
        attach,
    }
}

/// Size of the uncolored part left after peeling for the given domain.
pub fn extension_core_size(graph: &Graph, domain: &[usize], k: usize) -> usize {
    let mut mask = vec![false; graph.vertex_count()];
    for &v in domain {
        mask[v] = true;
    }
    reduce(graph, &mask, k).core.len()
}

/// Calls `visit` for every assignment of `1..=k` to `vertices`; stops
/// early when it returns `true`.
fn for_each_assignment(vertices: usize, k: usize, visit: &mut dyn FnMut(&[Color]) -> bool) -> bool {
    let mut a = vec![1 as Color; vertices];
    loop {
        if visit(&a) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == vertices {
                return false;
            }
            if (a[i] as usize) < k {
                a[i] += 1;
                break;
            }
            a[i] = 1;
            i += 1;
        }
    }
}

/// Completes an assignment of `attach` to a precoloring of every domain
/// vertex that is valid for `cover`, if possible.
fn complete_on_domain(graph: &Graph, cover: &Cover, domain: &[usize], fixed: &Precoloring) -> Option<Precoloring> {
    let mut keep = vec![false; graph.vertex_count()];
    for &v in domain {
        keep[v] = true;
    }
    let (sub, old_of_new) = graph.induced(&keep);
    let sub_cover = cover.restricted(&sub, &old_of_new);
    let mut new_of_old = BTreeMap::new();
    for (i, &v) in old_of_new.iter().enumerate() {
        new_of_old.insert(v, i);
    }
    let pre = Precoloring::from_pairs(fixed.iter().map(|(v, c)| (new_of_old[&v], c)));
    if pre.validate(&sub, &sub_cover).is_err() {
        return None;
    }
    let t = extend_in(&cover_graph(&sub, &sub_cover), &pre)?;
    Some(Precoloring::from_pairs(old_of_new.iter().map(|&v| (v, t.colors[new_of_old[&v]]))))
}

/// Checks that every precoloring of `domain` (typically a cycle) extends,
/// for DP-`k` covers.
///
/// Exhaustive mode: edges with both ends in the domain only restrict
/// which precolorings are valid, and any precoloring is valid for some
/// choice of them, so they are dropped and every assignment of the
/// attachment vertices is tried on every canonical cover of what is left.
/// This checks a superset of the required instances.
///
/// Sampled mode draws permutation covers of the whole graph and tries every
/// precoloring valid for the drawn cover, grouped by its values on the
/// attachment vertices.
pub fn check_domain_extension(
    graph: &Graph,
    domain: &[usize],
    k: usize,
    mode: CoverMode,
    budget: Budget,
) -> Result<ExtensionVerdict, SolveError> {
    if k == 0 {
        return Err(SolveError::ZeroColors);
    }
    let n = graph.vertex_count();
    let mut in_domain = vec![false; n];
    for &v in domain {
        if v >= n {
            return Err(SolveError::VertexOutOfRange(v));
        }
        in_domain[v] = true;
    }
    let reduced = reduce(graph, &in_domain, k);
    let mut verdict = ExtensionVerdict {
        k,
        mode,
        outcome: Extension::AllExtend,
        covers_checked: 0,
        precolorings_checked: 0,
        core_size: reduced.core.len(),
    };
    if reduced.core.is_empty() {
        return Ok(verdict);
    }
    // H: attachment vertices plus survivors, without edges among attachments
    let mut local = vec![NONE; n];
    let mut old_of_new = Vec::new();
    for &v in reduced.attach.iter().chain(reduced.core.iter()) {
        local[v] = old_of_new.len();
        old_of_new.push(v);
    }
    let mut h_edges = Vec::new();
    for &(u, v) in graph.edges() {
        if local[u] != NONE && local[v] != NONE && !(in_domain[u] && in_domain[v]) {
            h_edges.push(edge(local[u], local[v]));
        }
    }
    let h = Graph::from_edges(old_of_new.len(), &h_edges).expect("subgraph of a simple graph");
    let a = reduced.attach.len();

    match mode {
        CoverMode::Exhaustive => {
            let required = cover_space_size(&h, k);
            if required > budget.max_covers {
                return Err(SolveError::BudgetExceeded {
                    required,
                    budget: budget.max_covers,
                });
            }
            for cover in enumerate_covers(&h, k) {
                verdict.covers_checked += 1;
                let hg = cover_graph(&h, &cover);
                let mut failure = None;
                for_each_assignment(a, k, &mut |colors| {
                    verdict.precolorings_checked += 1;
                    let pre = Precoloring::from_pairs(colors.iter().enumerate().map(|(i, &c)| (i, c)));
                    if extend_in(&hg, &pre).is_none() {
                        failure = Some(colors.to_vec());
                        return true;
                    }
                    false
                });
                if let Some(colors) = failure {
                    verdict.outcome = lift_failure(graph, k, domain, &in_domain, &h, &old_of_new, &cover, &colors);
                    return Ok(verdict);
                }
            }
            Ok(verdict)
        }
        CoverMode::Sampled { samples, seed } => {
            let mut chooser = PermutationChooser::seeded(seed);
            let (sub, sub_old) = graph.induced(&reduced.keep);
            let mut sub_local = vec![NONE; n];
            for (i, &v) in sub_old.iter().enumerate() {
                sub_local[v] = i;
            }
            for _ in 0..samples {
                let cover = full_cover(graph, k, &mut chooser).expect("random permutations are bijections");
                verdict.covers_checked += 1;
                let sub_cover = cover.restricted(&sub, &sub_old);
                let hg = cover_graph(&sub, &sub_cover);
                let mut failure = None;
                for_each_assignment(a, k, &mut |colors| {
                    let fixed =
                        Precoloring::from_pairs(reduced.attach.iter().zip(colors).map(|(&v, &c)| (v, c)));
                    let Some(full) = complete_on_domain(graph, &cover, domain, &fixed) else {
                        return false;
                    };
                    verdict.precolorings_checked += 1;
                    let local_pre = Precoloring::from_pairs(
                        full.iter().filter(|&(v, _)| sub_local[v] != NONE).map(|(v, c)| (sub_local[v], c)),
                    );
                    if extend_in(&hg, &local_pre).is_none() {
                        failure = Some(full);
                        return true;
                    }
                    false
                });
                if let Some(precoloring) = failure {
                    verdict.outcome = Extension::Failure { cover, precoloring };
                    return Ok(verdict);
                }
            }
            Ok(verdict)
        }
    }
}

/// Turns a failing (cover of `h`, attachment colors) pair into a cover of
/// the whole graph and a full precoloring valid for it.
#[allow(clippy::too_many_arguments)]
fn lift_failure(
    graph: &Graph,
    k: usize,
    domain: &[usize],
    in_domain: &[bool],
    h: &Graph,
    old_of_new: &[usize],
    cover: &Cover,
    attach_colors: &[Color],
) -> Extension {
    let mut pre = Precoloring::new();
    for &v in domain {
        pre.insert(v, 1);
    }
    for (i, &c) in attach_colors.iter().enumerate() {
        pre.insert(old_of_new[i], c);
    }
    let lists = vec![(1..=k as Color).collect::<Vec<_>>(); graph.vertex_count()];
    let mut matchings: BTreeMap<Edge, Vec<(Color, Color)>> =
        graph.edges().iter().map(|&e| (e, identity_pairs(k))).collect();
    for &(a, b) in h.edges() {
        let (u, v) = (old_of_new[a], old_of_new[b]);
        let pairs = if u < v {
            cover.matching(a, b)
        } else {
            cover.matching(b, a)
        };
        matchings.insert(edge(u, v), pairs);
    }
    for &(u, v) in graph.edges() {
        if in_domain[u] && in_domain[v] {
            let (cu, cv) = (pre.get(u).expect("in domain"), pre.get(v).expect("in domain"));
            // cyclic shift c -> c + s avoiding cu -> cv; none exists for k = 1
            let shift = (0..k as Color).find(|&s| (cu - 1 + s) % k as Color + 1 != cv);
            let pairs = match shift {
                Some(s) => (1..=k as Color).map(|c| (c, (c - 1 + s) % k as Color + 1)).collect(),
                None => Vec::new(),
            };
            matchings.insert((u, v), pairs);
        }
    }
    let cover = Cover::new(graph, lists, matchings).expect("lifted cover is valid");
    Extension::Failure { cover, precoloring: pre }
}

/// Checks one explicit precoloring of permutation covers with lists
/// `1..=k`.
///
/// Exhaustive mode relies on relabeling: a per-vertex color permutation
/// carries any precoloring to any other, so the fixed precoloring extends
/// under every cover iff every precoloring does under every canonical
/// cover. A failure is relabeled so that it uses the requested colors.
/// Sampled mode skips drawn covers for which the precoloring is invalid;
/// they are not counted in `covers_checked`.
pub fn check_precoloring_extension(
    graph: &Graph,
    pre: &Precoloring,
    k: usize,
    mode: CoverMode,
    budget: Budget,
) -> Result<ExtensionVerdict, SolveError> {
    let domain: Vec<usize> = pre.domain().collect();
    for (v, c) in pre.iter() {
        if v >= graph.vertex_count() {
            return Err(SolveError::VertexOutOfRange(v));
        }
        if c == 0 || c as usize > k {
            return Err(SolveError::ColorNotInList { vertex: v, color: c });
        }
    }
    match mode {
        CoverMode::Exhaustive => {
            let mut verdict = check_domain_extension(graph, &domain, k, mode, budget)?;
            if let Extension::Failure { cover, precoloring } = &verdict.outcome {
                let renaming: Vec<Vec<Color>> = (0..graph.vertex_count())
                    .map(|v| {
                        let mut names: Vec<Color> = (1..=k as Color).collect();
                        if let (Some(from), Some(to)) = (precoloring.get(v), pre.get(v)) {
                            names.swap(from as usize - 1, to as usize - 1);
                        }
                        names
                    })
                    .collect();
                verdict.outcome = Extension::Failure {
                    cover: cover.renamed(&renaming),
                    precoloring: pre.clone(),
                };
            }
            Ok(verdict)
        }
        CoverMode::Sampled { samples, seed } => {
            let mut chooser = PermutationChooser::seeded(seed);
            let mut verdict = ExtensionVerdict {
                k,
                mode,
                outcome: Extension::AllExtend,
                covers_checked: 0,
                precolorings_checked: 0,
                core_size: extension_core_size(graph, &domain, k),
            };
            for _ in 0..samples {
                let cover = full_cover(graph, k, &mut chooser).expect("random permutations are bijections");
                if pre.validate(graph, &cover).is_err() {
                    continue;
                }
                verdict.covers_checked += 1;
                verdict.precolorings_checked += 1;
                if extend_in(&cover_graph(graph, &cover), pre).is_none() {
                    verdict.outcome = Extension::Failure {
                        cover,
                        precoloring: pre.clone(),
                    };
                    break;
                }
            }
            Ok(verdict)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::diagonal_cover;
    use crate::families;
    use alloc::collections::BTreeMap;

    fn g(p: crate::PlaneGraph) -> Graph {
        p.graph().clone()
    }

    fn swap_c4(k: usize) -> (Graph, Cover) {
        let c4 = g(families::cycle(4));
        let mut t = BTreeMap::new();
        let mut p: Vec<Color> = (1..=k as Color).collect();
        p.swap(0, 1);
        t.insert((0, 1), p);
        let cover = full_cover(&c4, k, &mut PermutationChooser::Table(t)).unwrap();
        (c4, cover)
    }

    #[test]
    fn c4_diagonal_two_cover_has_transversal() {
        let c4 = g(families::cycle(4));
        let cover = diagonal_cover(&c4, vec![vec![1, 2]; 4]).unwrap();
        let t = find_transversal(&cover_graph(&c4, &cover)).unwrap();
        assert!(t.is_valid(&c4, &cover));
        assert_eq!(count_transversals(&cover_graph(&c4, &cover)), 2);
    }

    #[test]
    fn c4_swap_cover_has_none() {
        let (c4, cover) = swap_c4(2);
        assert!(find_transversal(&cover_graph(&c4, &cover)).is_none());
        assert_eq!(count_transversals(&cover_graph(&c4, &cover)), 0);
    }

    #[test]
    fn edgeless_graph_takes_anything() {
        let e = Graph::empty(3);
        let cover = diagonal_cover(&e, vec![vec![5], vec![1, 2], vec![7]]).unwrap();
        let t = find_transversal(&cover_graph(&e, &cover)).unwrap();
        assert_eq!(t.colors, vec![5, 1, 7]);
        assert_eq!(count_transversals(&cover_graph(&e, &cover)), 2);
    }

    #[test]
    fn k4_triangle_precoloring_forces_last_color() {
        let k4 = g(families::k4());
        let cover = diagonal_cover(&k4, vec![vec![1, 2, 3, 4]; 4]).unwrap();
        let pre = Precoloring::from_pairs([(0, 1), (1, 2), (2, 3)]);
        let t = extend_precoloring(&k4, &cover, &pre).unwrap().unwrap();
        assert_eq!(t.colors, vec![1, 2, 3, 4]);
    }

    #[test]
    fn full_domain_precoloring_is_returned() {
        let k4 = g(families::k4());
        let cover = diagonal_cover(&k4, vec![vec![1, 2, 3, 4]; 4]).unwrap();
        let pre = Precoloring::from_pairs([(0, 4), (1, 2), (2, 3), (3, 1)]);
        let t = extend_precoloring(&k4, &cover, &pre).unwrap().unwrap();
        assert_eq!(t.colors, vec![4, 2, 3, 1]);
    }

    #[test]
    fn inconsistent_precoloring_is_rejected() {
        let k4 = g(families::k4());
        let cover = diagonal_cover(&k4, vec![vec![1, 2, 3, 4]; 4]).unwrap();
        let pre = Precoloring::from_pairs([(0, 1), (1, 1)]);
        assert_eq!(
            extend_precoloring(&k4, &cover, &pre),
            Err(SolveError::InconsistentPrecoloring((0, 1)))
        );
        let pre = Precoloring::from_pairs([(0, 9)]);
        assert_eq!(
            extend_precoloring(&k4, &cover, &pre),
            Err(SolveError::ColorNotInList { vertex: 0, color: 9 })
        );
    }

    #[test]
    fn empty_precoloring_matches_find_transversal() {
        let (c4, cover) = swap_c4(3);
        let a = extend_precoloring(&c4, &cover, &Precoloring::new()).unwrap();
        let b = find_transversal(&cover_graph(&c4, &cover));
        assert_eq!(a, b);
    }

    #[test]
    fn residual_lists_remove_matched_colors() {
        let c4 = g(families::cycle(4));
        let cover = diagonal_cover(&c4, vec![vec![1, 2, 3]; 4]).unwrap();
        let r = residual_lists(&c4, &cover, &[Some(1), None, Some(2), None]);
        assert_eq!(r[1], vec![3]);
        assert_eq!(r[3], vec![3]);
        assert_eq!(r[0], vec![1, 2, 3]);
    }

    #[test]
    fn dp_colorability_of_c4() {
        let c4 = g(families::cycle(4));
        let b = Budget::default();
        assert!(dp_colorable(&c4, 3, CoverMode::Exhaustive, b).unwrap().all_colorable());
        let v = dp_colorable(&c4, 2, CoverMode::Exhaustive, b).unwrap();
        let Colorability::Counterexample(cover) = v.outcome else {
            panic!("expected counterexample");
        };
        assert!(find_transversal(&cover_graph(&c4, &cover)).is_none());
        let k1 = Graph::empty(1);
        assert!(dp_colorable(&k1, 1, CoverMode::Exhaustive, b).unwrap().all_colorable());
    }

    #[test]
    fn counterexample_on_core_lifts_to_graph() {
        // C4 with a pendant path: the pendant vertices are peeled at k = 2
        let gr = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4), (4, 5)]).unwrap();
        let v = dp_colorable(&gr, 2, CoverMode::Exhaustive, Budget::default()).unwrap();
        assert_eq!(v.core_size, 4);
        let Colorability::Counterexample(cover) = v.outcome else {
            panic!("expected counterexample");
        };
        assert!(find_transversal(&cover_graph(&gr, &cover)).is_none());
    }

    #[test]
    fn sampled_mode_is_deterministic() {
        let w = g(families::wheel(5));
        let mode = CoverMode::Sampled { samples: 50, seed: 11 };
        let a = dp_colorable(&w, 3, mode, Budget::default()).unwrap();
        let b = dp_colorable(&w, 3, mode, Budget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_guard() {
        let o = g(families::octahedron());
        let tight = Budget {
            max_covers: 10,
            max_nodes: 10,
        };
        assert!(matches!(
            dp_colorable(&o, 4, CoverMode::Exhaustive, tight),
            Err(SolveError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn chromatic_numbers_of_small_graphs() {
        let b = Budget::default();
        assert_eq!(dp_chromatic(&g(families::cycle(6)), 5, b), Ok(ChromaticValue::Exact(3)));
        assert_eq!(dp_chromatic(&g(families::cycle(5)), 5, b), Ok(ChromaticValue::Exact(3)));
        assert_eq!(dp_chromatic(&g(families::k4()), 5, b), Ok(ChromaticValue::Exact(4)));
        assert_eq!(list_chromatic(&g(families::cycle(4)), 4, b), Ok(ChromaticValue::Exact(2)));
        assert_eq!(list_chromatic(&g(families::cycle(3)), 4, b), Ok(ChromaticValue::Exact(3)));
        assert_eq!(list_chromatic(&Graph::empty(1), 4, b), Ok(ChromaticValue::Exact(1)));
        assert_eq!(chromatic(&g(families::cycle(7)), 5, b), Ok(ChromaticValue::Exact(3)));
        assert_eq!(chromatic(&g(families::cycle(8)), 5, b), Ok(ChromaticValue::Exact(2)));
        assert_eq!(chromatic(&g(families::k4()), 5, b), Ok(ChromaticValue::Exact(4)));
        assert_eq!(chromatic(&g(families::k4()), 3, b), Ok(ChromaticValue::Exceeds(3)));
    }

    #[test]
    fn choosability_counterexample_is_bad() {
        // K_{2,4} is not 2-choosable
        let edges: Vec<Edge> = (2..6).flat_map(|v| [(0, v), (1, v)]).collect();
        let k24 = Graph::from_edges(6, &edges).unwrap();
        let Choosability::Counterexample(lists) = is_k_choosable(&k24, 2, Budget::default()).unwrap() else {
            panic!("K_2,4 is not 2-choosable");
        };
        assert!(lists.iter().all(|l| l.len() == 2));
        assert!(list_colorable(&k24, &lists).is_none());
        // K_{2,3} is
        let edges: Vec<Edge> = (2..5).flat_map(|v| [(0, v), (1, v)]).collect();
        let k23 = Graph::from_edges(5, &edges).unwrap();
        assert_eq!(is_k_choosable(&k23, 2, Budget::default()), Ok(Choosability::Choosable));
    }

    #[test]
    fn next_subset_walks_all_pairs() {
        let mut s = vec![1, 2];
        let mut count = 1;
        while next_subset(&mut s, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }

    #[test]
    fn wheel_rim_extension() {
        // W_5 rim precolored: the hub has five neighbors, so it survives
        // peeling at k = 4, and DP-4 extension holds on every cover
        let w = g(families::wheel(5));
        let v = check_domain_extension(&w, &[0, 1, 2, 3, 4], 4, CoverMode::Exhaustive, Budget::default()).unwrap();
        assert_eq!(v.core_size, 1);
        // five attachment colors against four hub colors: some precoloring
        // blocks all of them
        let Extension::Failure { cover, precoloring } = v.outcome else {
            panic!("a 5-neighbor hub can be blocked");
        };
        assert_eq!(extend_precoloring(&w, &cover, &precoloring), Ok(None));
        // in K4 the apex sees only three precolored vertices
        let k4 = g(families::k4());
        let v = check_domain_extension(&k4, &[0, 1, 2], 4, CoverMode::Exhaustive, Budget::default()).unwrap();
        assert_eq!(v.core_size, 0);
        assert!(v.all_extend());
    }

    #[test]
    fn fixed_precoloring_failure_uses_requested_colors() {
        let w = g(families::wheel(5));
        let pre = Precoloring::from_pairs([(0, 1), (1, 2), (2, 1), (3, 2), (4, 3)]);
        let v = check_precoloring_extension(&w, &pre, 4, CoverMode::Exhaustive, Budget::default()).unwrap();
        let Extension::Failure { cover, precoloring } = v.outcome else {
            panic!("expected failure");
        };
        assert_eq!(precoloring, pre);
        assert_eq!(extend_precoloring(&w, &cover, &pre), Ok(None));
    }

    #[test]
    fn sampled_extension_reports_valid_failures() {
        let w = g(families::wheel(5));
        let v = check_domain_extension(
            &w,
            &[0, 1, 2, 3, 4],
            4,
            CoverMode::Sampled { samples: 20, seed: 3 },
            Budget::default(),
        )
        .unwrap();
        if let Extension::Failure { cover, precoloring } = v.outcome {
            assert_eq!(extend_precoloring(&w, &cover, &precoloring), Ok(None));
        }
    }
}
