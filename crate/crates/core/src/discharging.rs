//! Exact discharging for the two graph classes, with an audit of the
//! outer-face accounting.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::plane_graph::{FaceId, PlaneGraph};
use crate::structure::{
    classify_cycle, classify_vertices_and_faces, class_membership, g1_preconditions, g2_preconditions, lemma,
    triangle_patches, verify_structural_lemmas, LemmaKind, VertexFaceBadness,
};

pub type Charge = Ratio<i64>;

fn q(n: i64, d: i64) -> Charge {
    Ratio::new(n, d)
}

fn int(n: usize) -> Charge {
    Ratio::from_integer(n as i64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Vertex(usize),
    Face(FaceId),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vertex(v) => write!(f, "v{v}"),
            Element::Face(x) => write!(f, "f{x}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Initial,
    PostRules,
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChargeLedger {
    pub stage: Stage,
    vertices: Vec<Charge>,
    faces: Vec<Charge>,
}

impl ChargeLedger {
    pub fn get(&self, e: Element) -> Charge {
        match e {
            Element::Vertex(v) => self.vertices[v],
            Element::Face(f) => self.faces[f],
        }
    }

    fn slot(&mut self, e: Element) -> &mut Charge {
        match e {
            Element::Vertex(v) => &mut self.vertices[v],
            Element::Face(f) => &mut self.faces[f],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Vertices first, then faces, each in id order.
    pub fn elements(&self) -> impl Iterator<Item = (Element, Charge)> + '_ {
        let vs = self.vertices.iter().enumerate().map(|(v, &c)| (Element::Vertex(v), c));
        let fs = self.faces.iter().enumerate().map(|(f, &c)| (Element::Face(f), c));
        vs.chain(fs)
    }

    pub fn total(&self) -> Charge {
        self.elements().fold(Charge::zero(), |acc, (_, c)| acc + c)
    }

    pub fn negative_elements(&self) -> Vec<Element> {
        self.elements().filter(|(_, c)| c.is_negative()).map(|(e, _)| e).collect()
    }

    fn apply(&mut self, t: &Transfer) {
        *self.slot(t.from) -= t.amount;
        *self.slot(t.to) += t.amount;
    }
}

/// `mu(x) = d(x) - 4` for vertices and inner faces, `d(D) + 4` for the
/// outer face.
pub fn initial_charges(pg: &PlaneGraph) -> ChargeLedger {
    let outer = pg.outer_face_id();
    ChargeLedger {
        stage: Stage::Initial,
        vertices: (0..pg.vertex_count()).map(|v| int(pg.degree(v)) - int(4)).collect(),
        faces: (0..pg.face_count())
            .map(|f| {
                let d = int(pg.face(f).len());
                if f == outer {
                    d + int(4)
                } else {
                    d - int(4)
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleSet {
    G1,
    G2,
}

impl RuleSet {
    pub fn id(self) -> &'static str {
        match self {
            RuleSet::G1 => "g1",
            RuleSet::G2 => "g2",
        }
    }

    /// Number of the rule that moves surplus to the outer face.
    pub fn surplus_rule(self) -> u8 {
        match self {
            RuleSet::G1 => 5,
            RuleSet::G2 => 6,
        }
    }

    /// One line per rule.
    pub fn rules(self) -> &'static [&'static str] {
        match self {
            RuleSet::G1 => &[
                "R1 internal 5+-vertex splits its charge evenly over its 3-faces",
                "R2 5-face gives 1/3 to adjacent internal (4,4,4)-faces, 1/6 to other adjacent internal 3-faces",
                "R3 6+-face gives t/2 to adjacent internal 3-faces in a diamond, t/3 to the rest",
                "R4 outer face takes mu(v) from its vertices and gives 1 to each non-internal 3-face",
                "R5 every other face gives its surplus to the outer face",
            ],
            RuleSet::G2 => &[
                "R1 internal 6+-vertex gives 1/2 per 3-face; good 5-vertex splits evenly; bad 5-vertex gives 1/4 to its isolated 3-face and 3/8 to the others",
                "R2 5-face gives 1/3 to adjacent internal (4,4,4)-faces, 1/6 to other adjacent non-special 3- and 4-faces",
                "R3 4- or 6-face gives 1/3 to each adjacent 3-face",
                "R4 7+-face gives 6/7 t, 9/14 t or 3/7 t to adjacent 3-faces by shared bad 4-vertices, 3/7 t to adjacent 4-faces",
                "R5 outer face takes mu(v) from its vertices and gives 5/7 to each non-internal 3-face",
                "R6 every 5+-face gives its surplus to the outer face",
            ],
        }
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transfer {
    pub rule: u8,
    pub from: Element,
    pub to: Element,
    pub amount: Charge,
    pub tag: &'static str,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TransferLog {
    pub transfers: Vec<Transfer>,
}

impl TransferLog {
    fn push(&mut self, rule: u8, from: Element, to: Element, amount: Charge, tag: &'static str) {
        self.transfers.push(Transfer {
            rule,
            from,
            to,
            amount,
            tag,
        });
    }

    /// Applies every transfer to a copy of `initial`.
    pub fn replay(&self, initial: &ChargeLedger) -> ChargeLedger {
        self.replay_while(initial, |_| true)
    }

    fn replay_while(&self, initial: &ChargeLedger, keep: impl Fn(&Transfer) -> bool) -> ChargeLedger {
        let mut ledger = initial.clone();
        for t in self.transfers.iter().filter(|t| keep(t)) {
            ledger.apply(t);
        }
        ledger
    }

    /// Per rule: (total debited from senders, total credited to receivers),
    /// accumulated separately.
    pub fn rule_balance(&self) -> BTreeMap<u8, (Charge, Charge)> {
        let mut sent: BTreeMap<u8, BTreeMap<Element, Charge>> = BTreeMap::new();
        let mut received: BTreeMap<u8, BTreeMap<Element, Charge>> = BTreeMap::new();
        for t in &self.transfers {
            *sent.entry(t.rule).or_default().entry(t.from).or_insert_with(Charge::zero) += t.amount;
            *received.entry(t.rule).or_default().entry(t.to).or_insert_with(Charge::zero) += t.amount;
        }
        let total = |m: Option<&BTreeMap<Element, Charge>>| {
            m.map_or(Charge::zero(), |m| m.values().fold(Charge::zero(), |a, &b| a + b))
        };
        sent.keys()
            .chain(received.keys())
            .copied()
            .collect::<BTreeSet<u8>>()
            .into_iter()
            .map(|r| (r, (total(sent.get(&r)), total(received.get(&r)))))
            .collect()
    }

    pub fn sent_by(&self, rule: u8, from: Element) -> Charge {
        self.transfers
            .iter()
            .filter(|t| t.rule == rule && t.from == from)
            .fold(Charge::zero(), |a, t| a + t.amount)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DischargeError {
    /// The supplied tags were computed for a different embedding.
    TagUnavailable(&'static str),
}

impl fmt::Display for DischargeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DischargeError::TagUnavailable(what) => write!(f, "tag unavailable: {what}"),
        }
    }
}

impl core::error::Error for DischargeError {}

/// Computes the structure tags and runs the rules.
pub fn run_discharging(pg: &PlaneGraph, rules: RuleSet) -> (ChargeLedger, TransferLog) {
    let tags = classify_vertices_and_faces(pg);
    run_discharging_with_tags(pg, rules, Some(&tags)).expect("fresh tags match the graph")
}

pub fn run_discharging_with_tags(
    pg: &PlaneGraph,
    rules: RuleSet,
    tags: Option<&VertexFaceBadness>,
) -> Result<(ChargeLedger, TransferLog), DischargeError> {
    let tags = tags.ok_or(DischargeError::TagUnavailable("no structure tags"))?;
    if tags.vertices.len() != pg.vertex_count() {
        return Err(DischargeError::TagUnavailable("vertex tags"));
    }
    if tags.faces.len() != pg.face_count() {
        return Err(DischargeError::TagUnavailable("face tags"));
    }
    let mut run = Run {
        pg,
        tags,
        outer: pg.outer_face_id(),
        ledger: initial_charges(pg),
        log: TransferLog::default(),
    };
    match rules {
        RuleSet::G1 => run.g1(),
        RuleSet::G2 => run.g2(),
    }
    run.ledger.stage = Stage::Final;
    Ok((run.ledger, run.log))
}

struct Run<'a> {
    pg: &'a PlaneGraph,
    tags: &'a VertexFaceBadness,
    outer: FaceId,
    ledger: ChargeLedger,
    log: TransferLog,
}

impl Run<'_> {
    fn send(&mut self, rule: u8, from: Element, to: Element, amount: Charge, tag: &'static str) {
        self.log.push(rule, from, to, amount, tag);
        let t = *self.log.transfers.last().unwrap();
        self.ledger.apply(&t);
    }

    fn is_tri(&self, f: FaceId) -> bool {
        f != self.outer && self.pg.face(f).len() == 3
    }

    fn internal(&self, f: FaceId) -> bool {
        self.tags.faces[f].internal
    }

    fn inner_faces(&self) -> Vec<FaceId> {
        (0..self.pg.face_count()).filter(|&f| f != self.outer).collect()
    }

    fn triangles_at(&self, v: usize) -> Vec<FaceId> {
        self.pg.faces_at(v).into_iter().filter(|&f| self.is_tri(f)).collect()
    }

    fn neighbors_of(&self, f: FaceId) -> Vec<FaceId> {
        self.pg.adjacent_faces(f).into_iter().filter(|&h| h != self.outer).collect()
    }

    fn shared(&self, f: FaceId, h: FaceId) -> Charge {
        int(self.pg.face_shared_edges(f, h))
    }

    fn outer_vertices(&self) -> BTreeSet<usize> {
        self.pg.outer_face().vertex_set()
    }

    fn vertex_to_outer(&mut self, rule: u8) {
        let d = Element::Face(self.outer);
        for v in self.outer_vertices() {
            let mu = int(self.pg.degree(v)) - int(4);
            self.send(rule, Element::Vertex(v), d, mu, "vertex-charge");
        }
    }

    fn outer_to_triangles(&mut self, rule: u8, amount: Charge) {
        let d = Element::Face(self.outer);
        for f in self.inner_faces() {
            if self.is_tri(f) && !self.internal(f) {
                self.send(rule, d, Element::Face(f), amount, "non-internal-3-face");
            }
        }
    }

    fn surplus(&mut self, rule: u8, min_len: usize) {
        let d = Element::Face(self.outer);
        for f in self.inner_faces() {
            let c = self.ledger.get(Element::Face(f));
            if self.pg.face(f).len() >= min_len && c.is_positive() {
                self.send(rule, Element::Face(f), d, c, "surplus");
            }
        }
    }

    fn g1(&mut self) {
        let g = self.pg.graph();
        for v in 0..self.pg.vertex_count() {
            let ts = self.triangles_at(v);
            if self.tags.vertices[v].internal && g.degree(v) >= 5 && !ts.is_empty() {
                let share = (int(g.degree(v)) - int(4)) / int(ts.len());
                for f in ts {
                    self.send(1, Element::Vertex(v), Element::Face(f), share, "even-split");
                }
            }
        }
        for f in self.inner_faces() {
            if self.pg.face(f).len() != 5 {
                continue;
            }
            for h in self.neighbors_of(f) {
                if self.is_tri(h) && self.internal(h) {
                    let (amount, tag) = if self.tags.faces[h].all_degree_four {
                        (q(1, 3), "444-face")
                    } else {
                        (q(1, 6), "other-3-face")
                    };
                    self.send(2, Element::Face(f), Element::Face(h), amount, tag);
                }
            }
        }
        for f in self.inner_faces() {
            if self.pg.face(f).len() < 6 {
                continue;
            }
            for h in self.neighbors_of(f) {
                if self.is_tri(h) && self.internal(h) {
                    let t = self.shared(f, h);
                    let (amount, tag) = if self.tags.faces[h].in_diamond {
                        (q(1, 2) * t, "diamond")
                    } else {
                        (q(1, 3) * t, "no-diamond")
                    };
                    self.send(3, Element::Face(f), Element::Face(h), amount, tag);
                }
            }
        }
        self.vertex_to_outer(4);
        self.outer_to_triangles(4, int(1));
        self.ledger.stage = Stage::PostRules;
        self.surplus(5, 0);
    }

    fn g2(&mut self) {
        let g = self.pg.graph();
        for v in 0..self.pg.vertex_count() {
            let vt = &self.tags.vertices[v];
            let ts = self.triangles_at(v);
            if !vt.internal || ts.is_empty() {
                continue;
            }
            let d = g.degree(v);
            if d >= 6 {
                for f in ts {
                    self.send(1, Element::Vertex(v), Element::Face(f), q(1, 2), "6+-vertex");
                }
            } else if d == 5 && vt.bad5 {
                let iso = vt.isolated_triangle;
                for f in ts {
                    let (amount, tag) = if Some(f) == iso {
                        (q(1, 4), "isolated")
                    } else {
                        (q(3, 8), "paired")
                    };
                    self.send(1, Element::Vertex(v), Element::Face(f), amount, tag);
                }
            } else if d == 5 {
                let share = q(1, ts.len() as i64);
                for f in ts {
                    self.send(1, Element::Vertex(v), Element::Face(f), share, "good-5-vertex");
                }
            }
        }
        for f in self.inner_faces() {
            if self.pg.face(f).len() != 5 {
                continue;
            }
            for h in self.neighbors_of(f) {
                let len = self.pg.face(h).len();
                if self.is_tri(h) && self.internal(h) && self.tags.faces[h].all_degree_four {
                    self.send(2, Element::Face(f), Element::Face(h), q(1, 3), "444-face");
                } else if (len == 3 || len == 4) && !self.tags.is_special(h, f) {
                    self.send(2, Element::Face(f), Element::Face(h), q(1, 6), "non-special");
                }
            }
        }
        for f in self.inner_faces() {
            let len = self.pg.face(f).len();
            if len != 4 && len != 6 {
                continue;
            }
            for h in self.neighbors_of(f) {
                if self.is_tri(h) {
                    self.send(3, Element::Face(f), Element::Face(h), q(1, 3), "3-face");
                }
            }
        }
        for f in self.inner_faces() {
            if self.pg.face(f).len() < 7 {
                continue;
            }
            let fv = self.pg.face(f).vertex_set();
            for h in self.neighbors_of(f) {
                let t = self.shared(f, h);
                match self.pg.face(h).len() {
                    3 => {
                        let bad = self
                            .pg
                            .face(h)
                            .vertex_set()
                            .into_iter()
                            .filter(|v| fv.contains(v) && self.tags.vertices[*v].bad4)
                            .count();
                        let (amount, tag) = match bad {
                            0 => (q(3, 7), "no-bad-4"),
                            1 => (q(9, 14), "one-bad-4"),
                            _ => (q(6, 7), "two-bad-4"),
                        };
                        self.send(4, Element::Face(f), Element::Face(h), amount * t, tag);
                    }
                    4 => self.send(4, Element::Face(f), Element::Face(h), q(3, 7) * t, "4-face"),
                    _ => {}
                }
            }
        }
        self.vertex_to_outer(5);
        self.outer_to_triangles(5, q(5, 7));
        self.ledger.stage = Stage::PostRules;
        self.surplus(6, 5);
    }
}

/// Outer-face quantities. Counts follow the rule set: in the first class
/// `t1`, `t2` count components of non-internal 3-faces; in the second,
/// `f3_prime` counts maximal patches whose 3-faces all touch the outer
/// face.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Accounting {
    pub outer_len: usize,
    pub s: usize,
    pub s_prime: usize,
    pub f3: usize,
    pub f3_prime: usize,
    pub t1: usize,
    pub t2: usize,
    pub b: Charge,
    pub k: i64,
}

/// One audited inequality or identity. `asserted` is false when the
/// hypotheses behind it do not hold for the graph; `holds` is still
/// computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub asserted: bool,
    pub holds: bool,
    pub witness: Option<Element>,
}

impl Check {
    pub fn failed(&self) -> bool {
        self.asserted && !self.holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DischargingReport {
    pub rules: RuleSet,
    pub initial: ChargeLedger,
    pub post_rules: ChargeLedger,
    pub final_ledger: ChargeLedger,
    pub log: TransferLog,
    pub negative: Vec<Element>,
    pub outer: FaceId,
    pub accounting: Accounting,
    /// True when the graph meets every smallest-counterexample condition
    /// the rule set's bounds rely on.
    pub counterexample_shape: bool,
    pub checks: Vec<Check>,
}

impl DischargingReport {
    pub fn outer_final(&self) -> Charge {
        self.final_ledger.get(Element::Face(self.outer))
    }

    /// Never both: every element nonnegative and the outer face positive.
    pub fn is_consistent(&self) -> bool {
        !(self.negative.is_empty() && self.outer_final().is_positive())
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.failed())
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Check names used by [`audit`].
pub mod checks {
    pub const INITIAL_SUM: &str = "sum/initial";
    pub const FINAL_SUM: &str = "sum/final";
    pub const REPLAY: &str = "log/replay";
    pub const RULE_BALANCE: &str = "log/rule-balance";
    pub const CONSISTENT: &str = "outer/not-all-nonnegative-with-positive-outer";
    pub const G1_F3: &str = "g1/f3-identity";
    pub const G1_S: &str = "g1/s-identity";
    pub const G1_K_POSITIVE: &str = "g1/k-at-least-1";
    pub const G1_B: &str = "g1/b-lower-bound";
    pub const G1_FIVE_FACE: &str = "g1/5-face-gives-outer";
    pub const G1_SIX_FACE: &str = "g1/6+-face-gives-outer";
    pub const G1_VERTEX_SHARE: &str = "g1/5+-vertex-gives-at-least-1/3";
    pub const G2_S: &str = "g2/s-identity";
    pub const G2_FACE_BOUND: &str = "g2/5+-face-gives-outer";
    pub const G2_B: &str = "g2/b-lower-bound";
    pub const G2_EDGE_CARRY: &str = "g2/7+-face-sends-at-most-3/7-per-edge";
}

/// Groups `faces` into components joined by shared edges.
fn face_components(pg: &PlaneGraph, faces: &BTreeSet<FaceId>) -> Vec<Vec<FaceId>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in faces {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let f = comp[i];
            i += 1;
            for h in pg.adjacent_faces(f) {
                if faces.contains(&h) && seen.insert(h) {
                    comp.push(h);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

fn shape_holds(pg: &PlaneGraph, rules: RuleSet) -> bool {
    let pre = match rules {
        RuleSet::G1 => g1_preconditions(pg),
        RuleSet::G2 => g2_preconditions(pg),
    };
    if !pre.all_hold() {
        return false;
    }
    let other = match rules {
        RuleSet::G1 => "pre/g2/",
        RuleSet::G2 => "pre/g1/",
    };
    verify_structural_lemmas(pg)
        .iter()
        .filter(|r| r.kind == LemmaKind::Precondition && !r.id.starts_with(other))
        .all(|r| r.holds)
}

fn check(name: &'static str, asserted: bool, holds: bool) -> Check {
    Check {
        name,
        asserted,
        holds,
        witness: None,
    }
}

/// Worst element for a per-element bound, or `None` when all pass.
fn per_element(name: &'static str, asserted: bool, failures: Vec<Element>) -> Check {
    Check {
        name,
        asserted,
        holds: failures.is_empty(),
        witness: failures.first().copied(),
    }
}

/// Runs the rules and audits conservation, replay, the accounting
/// identities and the lower bounds on what the outer face receives.
pub fn audit(pg: &PlaneGraph, rules: RuleSet) -> DischargingReport {
    let initial = initial_charges(pg);
    let (final_ledger, log) = run_discharging(pg, rules);
    let surplus = rules.surplus_rule();
    let mut post_rules = log.replay_while(&initial, |t| t.rule < surplus);
    post_rules.stage = Stage::PostRules;
    let outer = pg.outer_face_id();
    let d_elem = Element::Face(outer);
    let g = pg.graph();

    let on_d = pg.outer_face().vertex_set();
    let outer_len = pg.outer_face().len();
    let leaving: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| on_d.contains(&u) != on_d.contains(&v))
        .collect();
    let s = leaving.len();
    let tri_edges: BTreeSet<(usize, usize)> = (0..pg.face_count())
        .filter(|&f| f != outer && pg.face(f).len() == 3)
        .flat_map(|f| pg.face(f).edge_set())
        .collect();
    let s_prime = leaving.iter().filter(|e| !tri_edges.contains(e)).count();
    let tags = classify_vertices_and_faces(pg);
    let non_internal: BTreeSet<FaceId> = (0..pg.face_count())
        .filter(|&f| f != outer && pg.face(f).len() == 3 && !tags.faces[f].internal)
        .collect();
    let f3 = non_internal.len();
    let b = log
        .transfers
        .iter()
        .filter(|t| t.rule == surplus && t.to == d_elem)
        .fold(Charge::zero(), |a, t| a + t.amount);
    let k = s as i64 - f3 as i64;

    let outer_cycle = classify_cycle(pg, &pg.outer_face().boundary).ok();
    let outer_clean = outer_cycle
        .as_ref()
        .is_some_and(|c| !c.has_chord() && c.interior_common_neighbors.is_empty());
    let shape = shape_holds(pg, rules);

    let mut out = vec![
        check(checks::INITIAL_SUM, true, initial.total().is_zero()),
        check(checks::FINAL_SUM, true, final_ledger.total().is_zero()),
        check(checks::REPLAY, true, log.replay(&initial) == {
            let mut l = final_ledger.clone();
            l.stage = Stage::Initial;
            l
        }),
        check(
            checks::RULE_BALANCE,
            true,
            log.rule_balance().values().all(|(sent, received)| sent == received),
        ),
    ];
    let negative = final_ledger.negative_elements();
    out.push(check(
        checks::CONSISTENT,
        true,
        !(negative.is_empty() && final_ledger.get(d_elem).is_positive()),
    ));

    let shared_with_d = |f: FaceId| pg.face_shared_edges(f, outer);
    let given_to_d = |f: FaceId| {
        log.transfers
            .iter()
            .filter(|t| t.rule == surplus && t.from == Element::Face(f) && t.to == d_elem)
            .fold(Charge::zero(), |a, t| a + t.amount)
    };
    let inner: Vec<FaceId> = (0..pg.face_count()).filter(|&f| f != outer).collect();

    let (f3_prime, t1, t2) = match rules {
        RuleSet::G1 => {
            let comps = face_components(pg, &non_internal);
            let t1 = comps.iter().filter(|c| c.len() == 1).count();
            let t2 = comps.iter().filter(|c| c.len() == 2).count();
            let meets_once = comps.iter().all(|c| {
                c.len() <= 2 && {
                    let edges: BTreeSet<_> = c.iter().flat_map(|&f| pg.face(f).edge_set()).collect();
                    let d_edges = pg.outer_face().edge_set();
                    edges.iter().filter(|e| d_edges.contains(e)).count() <= 1
                }
            });
            let identity = meets_once && outer_clean;
            out.push(check(checks::G1_F3, identity, f3 == t1 + 2 * t2));
            out.push(check(checks::G1_S, identity, s == s_prime + 2 * t1 + 3 * t2));
            let lemma_applies = shape && outer_len >= 5;
            out.push(check(checks::G1_K_POSITIVE, shape, k >= 1));
            let want = if k == 1 {
                int(outer_len) / int(3)
            } else {
                (Charge::from_integer(outer_len as i64 - k)) / int(3)
            };
            out.push(check(checks::G1_B, lemma_applies && k >= 1, b >= want));

            let five = inner
                .iter()
                .copied()
                .filter(|&f| pg.face(f).len() == 5)
                .filter(|&f| {
                    let need = match shared_with_d(f) {
                        1 => q(1, 2),
                        2 => q(2, 3),
                        3 => int(1),
                        _ => return false,
                    };
                    given_to_d(f) < need
                })
                .map(Element::Face)
                .collect();
            out.push(per_element(checks::G1_FIVE_FACE, shape, five));
            let six = inner
                .iter()
                .copied()
                .filter(|&f| pg.face(f).len() >= 6)
                .filter(|&f| {
                    let k = shared_with_d(f);
                    k >= 1 && given_to_d(f) < int(k + 1) / int(3)
                })
                .map(Element::Face)
                .collect();
            out.push(per_element(checks::G1_SIX_FACE, shape, six));

            let class_ok = class_membership(g).in_g1
                && verify_structural_lemmas(pg)
                    .iter()
                    .find(|r| r.id == lemma::G1_TRIANGLE_BOUND)
                    .is_some_and(|r| r.holds);
            let low = log
                .transfers
                .iter()
                .filter(|t| {
                    t.rule == 1
                        && matches!(t.to, Element::Face(f) if tags.faces[f].internal)
                        && t.amount < q(1, 3)
                })
                .map(|t| t.from)
                .collect();
            out.push(per_element(checks::G1_VERTEX_SHARE, class_ok, low));
            (t1 + t2, t1, t2)
        }
        RuleSet::G2 => {
            let patches = triangle_patches(pg, false);
            let f3_prime = patches
                .iter()
                .filter(|p| p.faces.iter().all(|f| non_internal.contains(f)))
                .count();
            // every patch touching the outer face must consist of
            // non-internal 3-faces only for the count to close
            let pure = patches.iter().all(|p| {
                let touching = p.faces.iter().filter(|f| non_internal.contains(f)).count();
                touching == 0 || touching == p.faces.len()
            });
            out.push(check(checks::G2_S, outer_clean && pure, s == s_prime + f3 + f3_prime));
            let weak = inner
                .iter()
                .copied()
                .filter(|&f| pg.face(f).len() >= 5)
                .filter(|&f| {
                    let k = int(shared_with_d(f));
                    let rate = match pg.face(f).len() {
                        5 => q(1, 6),
                        6 => q(1, 3),
                        _ => q(3, 7),
                    };
                    given_to_d(f) < rate * k
                })
                .map(Element::Face)
                .collect();
            out.push(per_element(checks::G2_FACE_BOUND, shape, weak));
            let want = (Charge::from_integer(outer_len as i64) - int(3 * f3_prime) - int(s_prime)) / int(3);
            out.push(check(checks::G2_B, shape, b >= want));
            let heavy = inner
                .iter()
                .copied()
                .filter(|&f| pg.face(f).len() >= 7)
                .filter(|&f| log.sent_by(4, Element::Face(f)) > q(3, 7) * int(pg.face(f).len()))
                .map(Element::Face)
                .collect();
            out.push(per_element(checks::G2_EDGE_CARRY, class_membership(g).in_g2, heavy));
            (f3_prime, 0, 0)
        }
    };

    DischargingReport {
        rules,
        initial,
        post_rules,
        final_ledger,
        log,
        negative,
        outer,
        accounting: Accounting {
            outer_len,
            s,
            s_prime,
            f3,
            f3_prime,
            t1,
            t2,
            b,
            k,
        },
        counterexample_shape: shape,
        checks: out,
    }
}

fn write_charge(f: &mut fmt::Formatter<'_>, c: Charge) -> fmt::Result {
    write!(f, "{}/{}", c.numer(), c.denom())
}

/// Final ledger, one `kind id num/den` line per element, then the log as
/// `rule sender receiver num/den` lines.
impl fmt::Display for DischargingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, c) in self.final_ledger.elements() {
            match e {
                Element::Vertex(v) => write!(f, "vertex {v} ")?,
                Element::Face(x) => write!(f, "face {x} ")?,
            }
            write_charge(f, c)?;
            writeln!(f)?;
        }
        for t in &self.log.transfers {
            write!(f, "R{} {} {} ", t.rule, t.from, t.to)?;
            write_charge(f, t.amount)?;
            writeln!(f)?;
        }
        Ok(())
    }
}
