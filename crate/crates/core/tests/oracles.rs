//! Solver and cover properties checked against brute-force oracles that
//! share no code with the library search.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use dplab_core::cover::{
    cover_graph, diagonal_cover, enumerate_covers, full_cover, permutations, straighten, Color, PermutationChooser,
};
use dplab_core::solver::{count_transversals, find_transversal, is_k_choosable, Budget, Choosability};
use dplab_core::{enumerate_cycles, Cover, Graph};
use proptest::prelude::*;

fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((i, j));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

/// Every assignment from the lists, checked edge by edge.
fn brute_transversals(graph: &Graph, cover: &Cover) -> u64 {
    let n = graph.vertex_count();
    let mut count = 0;
    let mut idx = vec![0usize; n];
    loop {
        let colors: Vec<Color> = (0..n).map(|v| cover.list(v)[idx[v]]).collect();
        let ok = graph.edges().iter().all(|&(u, v)| {
            !cover.matchings()[&(u, v)].contains(&(colors[u], colors[v]))
        });
        count += ok as u64;
        let mut v = 0;
        loop {
            if v == n {
                return count;
            }
            idx[v] += 1;
            if idx[v] < cover.list(v).len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Plain list-coloring backtracker over vertices in index order.
fn brute_list_colorable(graph: &Graph, lists: &[Vec<Color>]) -> bool {
    fn go(graph: &Graph, lists: &[Vec<Color>], colors: &mut Vec<Color>) -> bool {
        let v = colors.len();
        if v == lists.len() {
            return true;
        }
        for &c in &lists[v] {
            if graph.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
                colors.push(c);
                if go(graph, lists, colors) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    go(graph, lists, &mut Vec::new())
}

fn random_cover(graph: &Graph, k: usize, seed: u64) -> Cover {
    full_cover(graph, k, &mut PermutationChooser::seeded(seed)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transversal_search_matches_brute_force(g in small_graph(6), k in 1usize..=3, seed in any::<u64>()) {
        let cover = random_cover(&g, k, seed);
        let h = cover_graph(&g, &cover);
        let brute = brute_transversals(&g, &cover);
        prop_assert_eq!(count_transversals(&h), brute);
        match find_transversal(&h) {
            Some(t) => prop_assert!(t.is_valid(&g, &cover)),
            None => prop_assert_eq!(brute, 0),
        }
    }

    #[test]
    fn diagonal_cover_is_list_coloring(
        g in small_graph(7),
        raw in proptest::collection::vec(proptest::collection::btree_set(1u32..=4, 1..=3), 7),
    ) {
        let lists: Vec<Vec<Color>> = raw[..g.vertex_count()].iter().map(|s| s.iter().copied().collect()).collect();
        let cover = diagonal_cover(&g, lists.clone()).unwrap();
        let found = find_transversal(&cover_graph(&g, &cover));
        prop_assert_eq!(found.is_some(), brute_list_colorable(&g, &lists));
    }

    #[test]
    fn straightening_preserves_transversal_count(g in small_graph(6), k in 1usize..=3, seed in any::<u64>()) {
        let cover = random_cover(&g, k, seed);
        let forest = g.bfs_forest();
        let (straight, cert) = straighten(&g, &cover, &forest).unwrap();
        prop_assert!(cert.verify(&straight));
        prop_assert_eq!(brute_transversals(&g, &cover), brute_transversals(&g, &straight));
    }

    #[test]
    fn relabeling_preserves_colorability(g in small_graph(6), k in 1usize..=3, seed in any::<u64>(), shift in 0usize..6) {
        let cover = random_cover(&g, k, seed);
        let perms = permutations(k);
        let rename: Vec<Vec<Color>> = (0..g.vertex_count()).map(|v| perms[(v + shift) % perms.len()].clone()).collect();
        let renamed = cover.renamed(&rename);
        prop_assert_eq!(brute_transversals(&g, &cover), brute_transversals(&g, &renamed));
    }

    #[test]
    fn bounded_cycles_match_subset_enumeration(g in small_graph(6), max in 3usize..=6) {
        let mut found: BTreeSet<BTreeSet<(usize, usize)>> = BTreeSet::new();
        for c in enumerate_cycles(&g, max) {
            prop_assert!(c.len() <= max);
            prop_assert!(found.insert(c.edges().into_iter().collect()));
        }
        prop_assert_eq!(found, brute_cycles(&g, max));
    }
}

/// Edge sets in which every vertex has degree 0 or 2 and the used
/// vertices are connected.
fn brute_cycles(g: &Graph, max: usize) -> BTreeSet<BTreeSet<(usize, usize)>> {
    let edges = g.edges();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << edges.len()) {
        let chosen: Vec<(usize, usize)> = (0..edges.len()).filter(|i| mask >> i & 1 == 1).map(|i| edges[i]).collect();
        if chosen.len() < 3 || chosen.len() > max {
            continue;
        }
        let mut deg = vec![0; g.vertex_count()];
        for &(u, v) in &chosen {
            deg[u] += 1;
            deg[v] += 1;
        }
        if deg.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let used: Vec<usize> = (0..g.vertex_count()).filter(|&v| deg[v] == 2).collect();
        if used.len() != chosen.len() {
            continue;
        }
        let mut seen = BTreeSet::from([used[0]]);
        let mut stack = vec![used[0]];
        while let Some(x) = stack.pop() {
            for &(u, v) in &chosen {
                for (a, b) in [(u, v), (v, u)] {
                    if a == x && seen.insert(b) {
                        stack.push(b);
                    }
                }
            }
        }
        if seen.len() == used.len() {
            out.insert(chosen.into_iter().collect());
        }
    }
    out
}

/// Permutation covers as one permutation per edge, `p[i]` = partner at
/// the larger endpoint of color `i + 1` at the smaller.
fn cover_key(g: &Graph, cover: &Cover) -> Vec<Vec<Color>> {
    g.edges()
        .iter()
        .map(|&(u, v)| {
            let m = cover.matching(u, v);
            let map: BTreeMap<Color, Color> = m.into_iter().collect();
            map.values().copied().collect()
        })
        .collect()
}

/// Orbits of all `(k!)^|E|` permutation covers under per-vertex
/// renaming, by flood fill over single-vertex generator moves.
fn brute_orbits(g: &Graph, k: usize) -> Vec<HashSet<Vec<Vec<Color>>>> {
    let perms = permutations(k);
    let m = g.edge_count();
    let mut all = Vec::new();
    let mut idx = vec![0usize; m];
    loop {
        all.push(idx.iter().map(|&i| perms[i].clone()).collect::<Vec<_>>());
        let mut e = 0;
        loop {
            if e == m {
                break;
            }
            idx[e] += 1;
            if idx[e] < perms.len() {
                break;
            }
            idx[e] = 0;
            e += 1;
        }
        if e == m {
            break;
        }
    }
    // renaming v by s: an edge (v, w) with v smaller maps p to p o s^-1;
    // an edge (w, v) maps p to s o p
    let act = |key: &Vec<Vec<Color>>, v: usize, s: &Vec<Color>| -> Vec<Vec<Color>> {
        let mut inv = vec![0; k];
        for (i, &x) in s.iter().enumerate() {
            inv[x as usize - 1] = i as Color + 1;
        }
        g.edges()
            .iter()
            .zip(key)
            .map(|(&(a, b), p)| {
                if a == v {
                    (0..k).map(|i| p[inv[i] as usize - 1]).collect()
                } else if b == v {
                    p.iter().map(|&x| s[x as usize - 1]).collect()
                } else {
                    p.clone()
                }
            })
            .collect()
    };
    let mut assigned: HashSet<Vec<Vec<Color>>> = HashSet::new();
    let mut orbits = Vec::new();
    for key in all {
        if assigned.contains(&key) {
            continue;
        }
        let mut orbit = HashSet::from([key.clone()]);
        let mut stack = vec![key];
        while let Some(x) = stack.pop() {
            for v in 0..g.vertex_count() {
                for s in &perms {
                    let y = act(&x, v, s);
                    if orbit.insert(y.clone()) {
                        stack.push(y);
                    }
                }
            }
        }
        assigned.extend(orbit.iter().cloned());
        orbits.push(orbit);
    }
    orbits
}

#[test]
fn canonical_covers_hit_every_orbit_once() {
    let graphs = [
        graph_from_mask(4, 0b101101),                            // 4-cycle
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap(),
        Graph::from_edges(5, &[(0, 1), (1, 2), (3, 4)]).unwrap(),
    ];
    for g in &graphs {
        for k in 1..=3 {
            if g.edge_count() > 5 && k == 3 {
                continue;
            }
            let orbits = brute_orbits(g, k);
            let mut hit = vec![0; orbits.len()];
            for cover in enumerate_covers(g, k) {
                let key = cover_key(g, &cover);
                let i = orbits.iter().position(|o| o.contains(&key)).expect("cover is a permutation cover");
                hit[i] += 1;
            }
            assert!(hit.iter().all(|&h| h == 1), "k={k} edges={:?} hits={hit:?}", g.edges());
        }
    }
}

/// Every assignment of `k`-subsets of `1..=pool` to the vertices.
fn brute_choosable(g: &Graph, k: usize, pool: u32) -> bool {
    let subsets: Vec<Vec<Color>> = (0u32..(1 << pool))
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (1..=pool).filter(|c| m >> (c - 1) & 1 == 1).collect())
        .collect();
    let n = g.vertex_count();
    let mut idx = vec![0usize; n];
    loop {
        let lists: Vec<Vec<Color>> = idx.iter().map(|&i| subsets[i].clone()).collect();
        if !brute_list_colorable(g, &lists) {
            return false;
        }
        let mut v = 0;
        loop {
            if v == n {
                return true;
            }
            idx[v] += 1;
            if idx[v] < subsets.len() {
                break;
            }
            idx[v] = 0;
            v += 1;
        }
    }
}

/// Connected graphs are 2-choosable exactly when repeatedly deleting
/// degree-1 vertices leaves a single vertex, an even cycle, or a theta
/// graph with paths of lengths 2, 2 and 2m.
fn two_choosable_by_core(g: &Graph) -> bool {
    let n = g.vertex_count();
    let alive = g.k_core_mask(2, &[]);
    let vs: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    if vs.is_empty() {
        return true;
    }
    let (core, _) = g.induced(&alive);
    let m = core.vertex_count();
    let e = core.edge_count();
    let degs: Vec<usize> = (0..m).map(|v| core.degree(v)).collect();
    if e == m {
        // a single cycle
        return m % 2 == 0;
    }
    if e != m + 1 {
        return false;
    }
    let branch: Vec<usize> = (0..m).filter(|&v| degs[v] == 3).collect();
    if branch.len() != 2 || degs.iter().any(|&d| d != 2 && d != 3) {
        return false;
    }
    // lengths of the three branch paths
    let mut lengths = Vec::new();
    for &start in core.neighbors(branch[0]) {
        let (mut prev, mut cur, mut len) = (branch[0], start, 1);
        while degs[cur] == 2 {
            let next = *core.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable();
    lengths[0] == 2 && lengths[1] == 2 && lengths[2] % 2 == 0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn two_choosability_matches_characterization(g in small_graph(7)) {
        prop_assume!(g.is_connected());
        let verdict = is_k_choosable(&g, 2, Budget::default()).unwrap();
        prop_assert_eq!(verdict == Choosability::Choosable, two_choosable_by_core(&g));
    }
}

#[test]
fn choosability_matches_bounded_pools() {
    for n in 2..=4 {
        let pairs = n * (n - 1) / 2;
        for mask in 0u64..(1 << pairs) {
            let g = graph_from_mask(n, mask);
            for k in 1..=2 {
                let verdict = is_k_choosable(&g, k, Budget::default()).unwrap();
                // n * k colors are enough for any bad assignment
                let pool = (n * k) as u32;
                assert_eq!(
                    verdict == Choosability::Choosable,
                    brute_choosable(&g, k, pool.min(6)),
                    "n={n} mask={mask:b} k={k}"
                );
                if let Choosability::Counterexample(lists) = verdict {
                    assert!(lists.iter().all(|l| l.len() == k));
                    assert!(!brute_list_colorable(&g, &lists));
                }
            }
        }
    }
}
