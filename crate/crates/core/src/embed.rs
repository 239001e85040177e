//! Planar embedding of abstract graphs.
//!
//! Blocks are embedded with the Demoucron–Malgrange–Pertuiset path
//! addition method and glued at cut vertices by concatenating their
//! rotations. The result is a rotation system in the convention of
//! [`crate::PlaneGraph`].

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{edge, Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbedError {
    NotPlanar,
    Disconnected,
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::NotPlanar => write!(f, "graph is not planar"),
            EmbedError::Disconnected => write!(f, "graph is disconnected"),
        }
    }
}

impl core::error::Error for EmbedError {}

/// Rotation system of some planar embedding of `graph`.
pub fn planar_rotations(graph: &Graph) -> Result<Vec<Vec<usize>>, EmbedError> {
    let n = graph.vertex_count();
    if n == 0 || !graph.is_connected() {
        return Err(EmbedError::Disconnected);
    }
    let mut rotations = vec![Vec::new(); n];
    for block in blocks(graph) {
        let local = if block.len() == 1 {
            let (u, v) = block[0];
            let mut m = BTreeMap::new();
            m.insert(u, vec![v]);
            m.insert(v, vec![u]);
            m
        } else {
            let faces = embed_block(&block)?;
            rotation_map(&faces)
        };
        for (v, order) in local {
            rotations[v].extend(order);
        }
    }
    Ok(rotations)
}

/// Rotation system determined by consistently oriented face walks: a face
/// containing `u -> v -> w` means `w` follows `u` around `v`.
pub fn rotations_from_faces(n: usize, faces: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let map = rotation_map(faces);
    (0..n).map(|v| map.get(&v).cloned().unwrap_or_default()).collect()
}

fn rotation_map(faces: &[Vec<usize>]) -> BTreeMap<usize, Vec<usize>> {
    let mut succ: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for face in faces {
        let k = face.len();
        for i in 0..k {
            let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
            succ.insert((v, u), w);
        }
    }
    let mut around: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(v, u) in succ.keys() {
        around.entry(v).or_default().insert(u);
    }
    let mut out = BTreeMap::new();
    for (v, nbrs) in around {
        let first = *nbrs.iter().next().expect("nonempty");
        let mut order = vec![first];
        let mut cur = succ[&(v, first)];
        while cur != first && order.len() <= nbrs.len() {
            order.push(cur);
            cur = succ[&(v, cur)];
        }
        out.insert(v, order);
    }
    out
}

/// Edge sets of the biconnected components.
fn blocks(graph: &Graph) -> Vec<Vec<Edge>> {
    struct State<'a> {
        graph: &'a Graph,
        disc: Vec<usize>,
        low: Vec<usize>,
        time: usize,
        stack: Vec<Edge>,
        out: Vec<Vec<Edge>>,
    }
    fn dfs(s: &mut State<'_>, u: usize, parent: Option<usize>) {
        s.time += 1;
        s.disc[u] = s.time;
        s.low[u] = s.time;
        for i in 0..s.graph.degree(u) {
            let w = s.graph.neighbors(u)[i];
            if s.disc[w] == 0 {
                s.stack.push(edge(u, w));
                dfs(s, w, Some(u));
                s.low[u] = s.low[u].min(s.low[w]);
                if s.low[w] >= s.disc[u] {
                    let mut block = Vec::new();
                    while let Some(e) = s.stack.pop() {
                        block.push(e);
                        if e == edge(u, w) {
                            break;
                        }
                    }
                    block.sort_unstable();
                    s.out.push(block);
                }
            } else if Some(w) != parent && s.disc[w] < s.disc[u] {
                s.stack.push(edge(u, w));
                s.low[u] = s.low[u].min(s.disc[w]);
            }
        }
    }
    let n = graph.vertex_count();
    let mut state = State {
        graph,
        disc: vec![0; n],
        low: vec![0; n],
        time: 0,
        stack: Vec::new(),
        out: Vec::new(),
    };
    for v in 0..n {
        if state.disc[v] == 0 {
            dfs(&mut state, v, None);
        }
    }
    state.out
}

struct Fragment {
    attachments: BTreeSet<usize>,
    /// Non-embedded vertices of the fragment (empty for a single chord).
    inner: BTreeSet<usize>,
    chord: Option<Edge>,
}

/// Path addition on a 2-connected block. Returns oriented face cycles.
fn embed_block(block: &[Edge]) -> Result<Vec<Vec<usize>>, EmbedError> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in block {
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    let all_edges: BTreeSet<Edge> = block.iter().copied().collect();

    // initial cycle through the first edge
    let (a, b) = block[0];
    let path = bfs_path(&adj, b, |x| x == a, |x, y| edge(x, y) != (a, b)).expect("block edge lies on a cycle");
    let cycle = path;
    let mut faces = vec![cycle.clone(), cycle.iter().rev().copied().collect::<Vec<_>>()];
    let mut embedded_v: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut embedded_e: BTreeSet<Edge> = BTreeSet::new();
    for i in 0..cycle.len() {
        embedded_e.insert(edge(cycle[i], cycle[(i + 1) % cycle.len()]));
    }

    while embedded_e.len() < all_edges.len() {
        let fragments = fragments(&adj, &all_edges, &embedded_v, &embedded_e);
        let mut choice: Option<(usize, usize)> = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|x| f.contains(x)))
                .map(|(j, _)| j)
                .collect();
            match admissible.len() {
                0 => return Err(EmbedError::NotPlanar),
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (fi, face_idx) = choice.expect("some fragment remains");
        let frag = &fragments[fi];
        let path = match frag.chord {
            Some((u, v)) => vec![u, v],
            None => {
                let start = *frag.attachments.iter().next().expect("attachment");
                // walk into the fragment and out at another attachment
                let inner = &frag.inner;
                let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
                let mut queue = VecDeque::new();
                let mut found = None;
                for &w in &adj[&start] {
                    if inner.contains(&w) && !prev.contains_key(&w) {
                        prev.insert(w, start);
                        queue.push_back(w);
                    }
                }
                'bfs: while let Some(x) = queue.pop_front() {
                    for &w in &adj[&x] {
                        if inner.contains(&w) {
                            if !prev.contains_key(&w) {
                                prev.insert(w, x);
                                queue.push_back(w);
                            }
                        } else if w != start && frag.attachments.contains(&w) {
                            prev.insert(w, x);
                            found = Some(w);
                            break 'bfs;
                        }
                    }
                }
                let end = found.expect("fragment of a block has two attachments");
                let mut p = vec![end];
                let mut cur = end;
                while cur != start {
                    cur = prev[&cur];
                    p.push(cur);
                }
                p.reverse();
                p
            }
        };
        let face = faces.swap_remove(face_idx);
        let (first, second) = split_face(&face, &path);
        faces.push(first);
        faces.push(second);
        for w in path.windows(2) {
            embedded_e.insert(edge(w[0], w[1]));
        }
        embedded_v.extend(path.iter().copied());
    }
    Ok(faces)
}

fn split_face(face: &[usize], path: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = face.len();
    let a = path[0];
    let b = *path.last().expect("path");
    let i = face.iter().position(|&x| x == a).expect("attachment on face");
    let j = face.iter().position(|&x| x == b).expect("attachment on face");
    let inner = &path[1..path.len() - 1];
    // face from a to b, then back along the path
    let mut first = Vec::new();
    let mut k = i;
    loop {
        first.push(face[k]);
        if k == j {
            break;
        }
        k = (k + 1) % m;
    }
    first.extend(inner.iter().rev());
    // face from b to a, then forward along the path
    let mut second = Vec::new();
    let mut k = j;
    loop {
        second.push(face[k]);
        if k == i {
            break;
        }
        k = (k + 1) % m;
    }
    second.extend(inner.iter());
    (first, second)
}

fn fragments(
    adj: &BTreeMap<usize, Vec<usize>>,
    all_edges: &BTreeSet<Edge>,
    embedded_v: &BTreeSet<usize>,
    embedded_e: &BTreeSet<Edge>,
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(u, v) in all_edges {
        if !embedded_e.contains(&(u, v)) && embedded_v.contains(&u) && embedded_v.contains(&v) {
            out.push(Fragment {
                attachments: [u, v].into_iter().collect(),
                inner: BTreeSet::new(),
                chord: Some((u, v)),
            });
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &s in adj.keys() {
        if embedded_v.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut inner = BTreeSet::new();
        let mut attachments = BTreeSet::new();
        let mut queue = VecDeque::new();
        queue.push_back(s);
        seen.insert(s);
        while let Some(x) = queue.pop_front() {
            inner.insert(x);
            for &w in &adj[&x] {
                if embedded_v.contains(&w) {
                    attachments.insert(w);
                } else if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out.push(Fragment {
            attachments,
            inner,
            chord: None,
        });
    }
    out
}

fn bfs_path(
    adj: &BTreeMap<usize, Vec<usize>>,
    from: usize,
    is_target: impl Fn(usize) -> bool,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(from);
    prev.insert(from, from);
    while let Some(x) = queue.pop_front() {
        if is_target(x) {
            let mut p = vec![x];
            let mut cur = x;
            while cur != from {
                cur = prev[&cur];
                p.push(cur);
            }
            p.reverse();
            return Some(p);
        }
        for &w in &adj[&x] {
            if allowed(x, w) && !prev.contains_key(&w) {
                prev.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}
