//! Acceptance run: one PASS/FAIL line per criterion, details indented
//! below. Exits nonzero only when a criterion outside `EXPECTED_RED`
//! fails.

use std::process::ExitCode;
use std::time::Instant;

use dplab::core::cover::{cover_graph, diagonal_cover, full_cover, straighten, Color, PermutationChooser};
use dplab::core::discharging::{audit, checks, RuleSet};
use dplab::core::solver::{
    check_domain_extension, chromatic, extension_core_size, dp_chromatic, dp_colorable, find_transversal, list_chromatic, Budget,
    ChromaticValue, CoverMode, Extension,
};
use dplab::core::structure::{
    classify_cycle, g1_preconditions, g2_preconditions, lemma, verify_structural_lemmas, LemmaKind,
};
use dplab::core::{enumerate_cycles, Cover, Graph, PlaneGraph};
use dplab::{corpus_generate, embed_planar, ClassFilter, CorpusSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria known to fail; see the README.
const EXPECTED_RED: &[u32] = &[7];

const SAMPLE_SEED: u64 = 0x5eed_0005;

struct Outcome {
    id: u32,
    title: &'static str,
    pass: bool,
    details: Vec<String>,
}

fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn budget() -> Budget {
    Budget::default()
}

fn c1() -> Outcome {
    let mut pass = true;
    let mut details = Vec::new();
    for n in [4, 6] {
        let g = cycle(n);
        let start = Instant::now();
        let dp = dp_chromatic(&g, 4, budget()).unwrap().exact();
        let dp_time = start.elapsed();
        let start = Instant::now();
        let l = list_chromatic(&g, 4, budget()).unwrap().exact();
        let l_time = start.elapsed();
        let ok = dp == Some(3) && l == Some(2) && dp_time.as_secs_f64() < 5.0 && l_time.as_secs_f64() < 5.0;
        pass &= ok;
        details.push(format!(
            "C{n}: dp {dp:?} in {:.3}s, list {l:?} in {:.3}s",
            dp_time.as_secs_f64(),
            l_time.as_secs_f64()
        ));
    }
    Outcome {
        id: 1,
        title: "even-cycle separation",
        pass,
        details,
    }
}

fn c2(small: &[PlaneGraph]) -> Outcome {
    let (mut checked, mut skipped, mut bad) = (0, 0, Vec::new());
    for pg in small {
        let g = pg.graph();
        let values = (
            chromatic(g, 5, budget()),
            list_chromatic(g, 5, budget()),
            dp_chromatic(g, 5, budget()),
        );
        let (Ok(ChromaticValue::Exact(a)), Ok(ChromaticValue::Exact(b)), Ok(ChromaticValue::Exact(c))) = values
        else {
            skipped += 1;
            continue;
        };
        checked += 1;
        if !(a <= b && b <= c) {
            bad.push(format!("edges {:?}: {a} {b} {c}", g.edges()));
        }
    }
    let mut details = vec![format!("{checked} graphs checked, {skipped} incomplete")];
    details.extend(bad.iter().take(5).cloned());
    Outcome {
        id: 2,
        title: "chain inequality",
        pass: bad.is_empty() && checked > 0,
        details,
    }
}

fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(2..=max_n);
    let edges: Vec<_> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|_| rng.gen_bool(0.45))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Independent list-coloring backtracker.
fn list_backtrack(g: &Graph, lists: &[Vec<Color>], colors: &mut Vec<Color>) -> bool {
    let v = colors.len();
    if v == lists.len() {
        return true;
    }
    for &c in &lists[v] {
        if g.neighbors(v).iter().all(|&w| w >= v || colors[w] != c) {
            colors.push(c);
            if list_backtrack(g, lists, colors) {
                return true;
            }
            colors.pop();
        }
    }
    false
}

fn c3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut agree, total) = (0, 300);
    for _ in 0..total {
        let g = random_graph(&mut rng, 7);
        let lists: Vec<Vec<Color>> = (0..g.vertex_count())
            .map(|_| {
                let mut pool: Vec<Color> = (1..=5).collect();
                pool.shuffle(&mut rng);
                let mut l = pool[..rng.gen_range(1..=3)].to_vec();
                l.sort_unstable();
                l
            })
            .collect();
        let cover = diagonal_cover(&g, lists.clone()).unwrap();
        let found = find_transversal(&cover_graph(&g, &cover)).is_some();
        agree += (found == list_backtrack(&g, &lists, &mut Vec::new())) as usize;
    }
    Outcome {
        id: 3,
        title: "diagonal-cover equivalence",
        pass: agree == total,
        details: vec![format!("{agree}/{total} instances agree")],
    }
}

/// Transversals counted by trying every color tuple.
fn brute_count(g: &Graph, cover: &Cover) -> u64 {
    let n = g.vertex_count();
    let mut idx = vec![0usize; n];
    let mut count = 0;
    'outer: loop {
        let colors: Vec<Color> = (0..n).map(|v| cover.list(v)[idx[v]]).collect();
        count += g
            .edges()
            .iter()
            .all(|&(u, v)| !cover.matchings()[&(u, v)].contains(&(colors[u], colors[v]))) as u64;
        for v in 0..n {
            idx[v] += 1;
            if idx[v] < cover.list(v).len() {
                continue 'outer;
            }
            idx[v] = 0;
        }
        return count;
    }
}

fn c4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut equal, total) = (0, 150);
    for i in 0..total {
        let g = random_graph(&mut rng, 6);
        let k = rng.gen_range(1..=3);
        let cover = full_cover(&g, k, &mut PermutationChooser::seeded(i as u64)).unwrap();
        let (straight, _) = straighten(&g, &cover, &g.bfs_forest()).unwrap();
        equal += (brute_count(&g, &cover) == brute_count(&g, &straight)) as usize;
    }
    Outcome {
        id: 4,
        title: "straightening bijection",
        pass: equal == total,
        details: vec![format!("{equal}/{total} covers keep their transversal count")],
    }
}

/// Among qualifying cycles, the one leaving the largest uncolored core
/// after peeling; the outer face wins ties.
fn chosen_cycle(pg: &PlaneGraph, max_len: usize, good_only: bool) -> Option<Vec<usize>> {
    let ok = |vs: &[usize]| {
        classify_cycle(pg, vs).is_ok_and(|c| c.cycle.len() <= max_len && (!good_only || c.is_good()))
    };
    let outer = pg.outer_face().boundary.clone();
    let mut candidates: Vec<Vec<usize>> = ok(&outer).then_some(outer).into_iter().collect();
    let mut cycles = enumerate_cycles(pg.graph(), max_len);
    cycles.sort_by_key(|c| c.len());
    candidates.extend(cycles.into_iter().map(|c| c.vertices().to_vec()).filter(|vs| ok(vs)));
    let core = |vs: &Vec<usize>| extension_core_size(pg.graph(), vs, 4);
    let best = candidates.iter().map(core).max()?;
    candidates.into_iter().find(|vs| core(vs) == best)
}

fn extension_run(
    id: u32,
    title: &'static str,
    corpus: &[PlaneGraph],
    max_len: usize,
    good_only: bool,
) -> Outcome {
    let (mut exhaustive, mut sampled, mut no_cycle, mut failures, mut errors) = (0, 0, 0, Vec::new(), Vec::new());
    let (mut searched, mut covers) = (0, 0);
    for (i, pg) in corpus.iter().enumerate() {
        let Some(c) = chosen_cycle(pg, max_len, good_only) else {
            no_cycle += 1;
            continue;
        };
        let g = pg.graph();
        let mode = if g.vertex_count() <= 6 {
            exhaustive += 1;
            CoverMode::Exhaustive
        } else {
            sampled += 1;
            CoverMode::Sampled {
                samples: 500,
                seed: SAMPLE_SEED + i as u64,
            }
        };
        match check_domain_extension(g, &c, 4, mode, budget()) {
            Ok(v) => {
                searched += (v.core_size > 0) as usize;
                covers += v.covers_checked;
                if let Extension::Failure { precoloring, .. } = v.outcome {
                    failures.push(format!("edges {:?} cycle {c:?} precoloring {precoloring:?}", g.edges()));
                }
            }
            Err(e) => errors.push(format!("edges {:?}: {e}", g.edges())),
        }
    }
    let mut details = vec![
        format!("{exhaustive} graphs exhaustive, {sampled} sampled (500 covers each), {no_cycle} without a qualifying cycle"),
        format!("{searched} left a nonempty core after peeling; {covers} covers searched in total"),
        format!("sample seeds: {SAMPLE_SEED:#x} + corpus index"),
        format!("{} failures, {} solver errors", failures.len(), errors.len()),
    ];
    details.extend(failures.iter().chain(&errors).take(5).cloned());
    Outcome {
        id,
        title,
        pass: failures.is_empty() && errors.is_empty(),
        details,
    }
}

fn c7(g1: &[PlaneGraph], g2: &[PlaneGraph]) -> Outcome {
    let parts: [(&str, &[PlaneGraph], &[&str]); 3] = [
        (
            "first class triangle lemmas",
            g1,
            &[lemma::G1_TRIANGLE_QUAD, lemma::G1_NO_T3, lemma::G1_TRIANGLE_PAIR_NEIGHBORS, lemma::G1_TRIANGLE_BOUND],
        ),
        ("second class patch lemmas", g2, &[lemma::G2_PATCHES, lemma::G2_PATCH_EDGES, lemma::G2_TRIANGLE_BOUND]),
        ("short cycles good", g1, &[lemma::G1_SHORT_CYCLES_GOOD]),
    ];
    let mut pass = true;
    let mut details = Vec::new();
    for (name, corpus, ids) in parts {
        let mut part_pass = true;
        let mut lines = Vec::new();
        for id in ids {
            let (mut violations, mut conditional, mut example) = (0, 0, None);
            for pg in corpus {
                let reports = verify_structural_lemmas(pg);
                let Some(r) = reports.iter().find(|r| r.id == *id) else {
                    continue;
                };
                if r.holds {
                    continue;
                }
                violations += 1;
                let premises = reports.iter().filter(|p| p.kind == LemmaKind::Precondition).all(|p| p.holds);
                conditional += premises as usize;
                example.get_or_insert_with(|| format!("edges {:?}", pg.graph().edges()));
            }
            part_pass &= violations == 0;
            lines.push(format!(
                "    {id}: {violations} violations ({conditional} under the counterexample preconditions){}",
                example.map(|e| format!("; first {e}")).unwrap_or_default()
            ));
        }
        pass &= part_pass;
        details.push(format!("7 part {name}: {}", if part_pass { "PASS" } else { "FAIL" }));
        details.extend(lines);
    }
    Outcome {
        id: 7,
        title: "structural lemma suite",
        pass,
        details,
    }
}

fn c8(all: &[&PlaneGraph]) -> Outcome {
    let names = [checks::INITIAL_SUM, checks::FINAL_SUM, checks::REPLAY, checks::RULE_BALANCE];
    let mut bad = Vec::new();
    for pg in all {
        for rules in [RuleSet::G1, RuleSet::G2] {
            let r = audit(pg, rules);
            for name in names {
                if !r.check(name).is_some_and(|c| c.holds) {
                    bad.push(format!("{rules} {name} edges {:?}", pg.graph().edges()));
                }
            }
        }
    }
    let mut details = vec![format!("{} graphs x 2 rulesets, {} violations", all.len(), bad.len())];
    details.extend(bad.iter().take(5).cloned());
    Outcome {
        id: 8,
        title: "discharging conservation",
        pass: bad.is_empty(),
        details,
    }
}

fn c9(all: &[&PlaneGraph]) -> Outcome {
    let (mut qualifying, mut bad, mut anywhere) = ([0; 2], Vec::new(), 0);
    for pg in all {
        for (i, rules) in [RuleSet::G1, RuleSet::G2].into_iter().enumerate() {
            let pre = match rules {
                RuleSet::G1 => g1_preconditions(pg),
                RuleSet::G2 => g2_preconditions(pg),
            };
            let holds = audit(pg, rules).check(checks::CONSISTENT).is_some_and(|c| c.holds);
            anywhere += !holds as usize;
            if !pre.all_hold() {
                continue;
            }
            qualifying[i] += 1;
            if !holds {
                bad.push(format!("{rules} edges {:?}", pg.graph().edges()));
            }
        }
    }
    let mut details = vec![
        format!(
            "{} graphs meet the first-class preconditions, {} the second; {} joint occurrences",
            qualifying[0],
            qualifying[1],
            bad.len()
        ),
        format!("without the precondition filter: {anywhere} occurrences over {} graphs x 2 rulesets", all.len()),
    ];
    details.extend(bad.iter().take(5).cloned());
    Outcome {
        id: 9,
        title: "discharging consistency",
        pass: bad.is_empty() && anywhere == 0,
        details,
    }
}

fn c10(small: &[PlaneGraph]) -> Outcome {
    let mut details = Vec::new();
    let mut pass = true;
    for len in 3..=6 {
        let (mut checked, mut failed) = (0, 0);
        for pg in small {
            let g = pg.graph();
            if enumerate_cycles(g, len).iter().any(|c| c.len() == len) {
                continue;
            }
            checked += 1;
            let ok = dp_colorable(g, 4, CoverMode::Exhaustive, budget()).is_ok_and(|v| v.all_colorable());
            failed += !ok as usize;
        }
        pass &= failed == 0;
        details.push(format!("no {len}-cycle: {checked} graphs, {failed} failures"));
    }
    Outcome {
        id: 10,
        title: "dp-4-colorability without a k-cycle",
        pass,
        details,
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let small = corpus_generate(&CorpusSpec::new(1..=6));
    let g1 = corpus_generate(&CorpusSpec::new(1..=9).class(ClassFilter::G1));
    let g2 = corpus_generate(&CorpusSpec::new(1..=9).class(ClassFilter::G2));
    let all: Vec<&PlaneGraph> = small.iter().chain(&g1).chain(&g2).collect();
    println!(
        "corpus: {} graphs n<=6, {} first class and {} second class n<=9",
        small.len(),
        g1.len(),
        g2.len()
    );
    // sanity: the embedder round trip on the corpus
    assert!(small.iter().all(|pg| embed_planar(pg.graph(), 12).is_ok()));

    let runs: Vec<Box<dyn Fn() -> Outcome>> = vec![
        Box::new(c1),
        Box::new(|| c2(&small)),
        Box::new(c3),
        Box::new(c4),
        Box::new(|| extension_run(5, "first-class cycle precoloring extension", &g1, 7, false)),
        Box::new(|| extension_run(6, "second-class good cycle precoloring extension", &g2, 8, true)),
        Box::new(|| c7(&g1, &g2)),
        Box::new(|| c8(&all)),
        Box::new(|| c9(&all)),
        Box::new(|| c10(&small)),
    ];
    let mut unexpected = Vec::new();
    for run in runs {
        let t = Instant::now();
        let o = run();
        println!(
            "criterion {} {}: {} ({:.1}s)",
            o.id,
            o.title,
            if o.pass { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64()
        );
        for d in &o.details {
            println!("  {d}");
        }
        if !o.pass && !EXPECTED_RED.contains(&o.id) {
            unexpected.push(o.id);
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
