use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dplab::formats::{cover_from_lines, cover_lines, parse_cover_text, parse_document, write_rotation_text};
use dplab::{corpus_generate, ClassFilter, CorpusSpec, Format, Parsed, RotationDocument, DEFAULT_EMBED_LIMIT};
use dplab_core::cover::{cover_graph, Color};
use dplab_core::discharging::{audit, RuleSet};
use dplab_core::solver::{
    check_precoloring_extension, dp_chromatic, dp_colorable, find_transversal, list_chromatic, Budget, Colorability,
    CoverMode, Extension, Precoloring,
};
use dplab_core::structure::{
    class_membership, class_violation, classify_vertices_and_faces, find_ti_subgraphs, verify_structural_lemmas,
    LemmaKind, Witness,
};
use dplab_core::{enumerate_cycles, Cover, Cycle, PlaneGraph};

const COMPUTED: u8 = 0;
const FOUND: u8 = 1;
const INPUT_ERROR: u8 = 2;

#[derive(Parser)]
#[command(name = "dplab", version, about = "DP-coloring and discharging checks for plane graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph file; `-` reads standard input.
    input: PathBuf,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Largest abstract graph that will be embedded.
    #[arg(long, default_value_t = DEFAULT_EMBED_LIMIT)]
    embed_limit: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Rotation,
    Graph6,
    PlanarCode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Rules {
    G1,
    G2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    G1,
    G2,
}

#[derive(Subcommand)]
enum Command {
    /// List faces; the outer face is marked.
    Faces(Input),
    /// List cycles up to a length.
    Cycles {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max: usize,
    },
    /// Membership in the two graph classes.
    Class(Input),
    /// Tags and triangle patches, or lemma reports with `--lemmas`.
    Structure {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        lemmas: bool,
    },
    /// Find a transversal of a cover, or decide DP-k-colorability.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
        /// File with cover lines `u v: c>c' ...`.
        #[arg(long)]
        cover: Option<PathBuf>,
    },
    DpChromatic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max: usize,
    },
    ListChromatic {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        max: usize,
    },
    /// Check that a precoloring of a cycle extends under every cover.
    Extend {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',')]
        cycle: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        colors: Vec<Color>,
        #[arg(long)]
        k: usize,
        /// Sample this many random covers instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the discharging rules and audit the result.
    Discharge {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        rules: Rules,
    },
    /// Print a corpus as rotation-text documents separated by blank lines.
    Corpus {
        /// Vertex range `A..B`, inclusive.
        #[arg(long)]
        n: String,
        #[arg(long, value_enum)]
        class: Option<Class>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Graphs drawn per order above the exhaustive range.
        #[arg(long)]
        samples: Option<usize>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read_input(input: &Input) -> Result<Vec<Parsed>, Failure> {
    let mut bytes = Vec::new();
    if input.input.as_os_str() == "-" {
        io::stdin().read_to_end(&mut bytes)?;
    } else {
        bytes = std::fs::read(&input.input).map_err(|e| Failure(format!("{}: {e}", input.input.display())))?;
    }
    let format = input.format.map(|f| match f {
        FormatArg::Rotation => Format::RotationText,
        FormatArg::Graph6 => Format::Graph6,
        FormatArg::PlanarCode => Format::PlanarCode,
    });
    let graphs = parse_document(&bytes, format, input.embed_limit)?;
    if graphs.is_empty() {
        return Err(Failure("no graph in input".into()));
    }
    Ok(graphs)
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn write_cover(out: &mut String, pg: &PlaneGraph, cover: &Cover) {
    let doc = RotationDocument {
        rotations: pg.rotations().to_vec(),
        outer: Some(pg.outer_face().boundary.clone()),
        covers: Some(cover_lines(pg.graph(), cover)),
    };
    out.push_str(&write_rotation_text(&doc));
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Vertices(vs) => format!("vertices[{}]", join(vs)),
        Witness::Faces(fs) => format!("faces[{}]", join(fs)),
        Witness::Cycle(c) => format!("cycle[{}]", join(c.vertices())),
        Witness::Edges(es) => format!(
            "edges[{}]",
            es.iter().map(|(u, v)| format!("{u}-{v}")).collect::<Vec<_>>().join(" ")
        ),
    }
}

/// Output text and exit code for one graph.
fn run_one(command: &Command, parsed: &Parsed) -> Result<(String, u8), Failure> {
    let pg = &parsed.plane;
    let g = pg.graph();
    let budget = Budget::default();
    let mut out = String::new();
    let mut code = COMPUTED;
    match command {
        Command::Faces(_) => {
            for face in pg.faces() {
                let mark = if face.id == pg.outer_face_id() { " outer" } else { "" };
                out.push_str(&format!("face {}{mark}: {}\n", face.id, join(&face.boundary)));
            }
        }
        Command::Cycles { max, .. } => {
            for c in enumerate_cycles(g, *max) {
                out.push_str(&format!("{}: {}\n", c.len(), join(c.vertices())));
            }
        }
        Command::Class(_) => {
            let tag = class_membership(g);
            for (name, member, len) in [("g1", tag.in_g1, 5), ("g2", tag.in_g2, 6)] {
                if member {
                    out.push_str(&format!("{name} yes\n"));
                } else if let Some((a, b)) = class_violation(g, len) {
                    out.push_str(&format!(
                        "{name} no: 4-cycle [{}] shares an edge with {len}-cycle [{}]\n",
                        join(a.vertices()),
                        join(b.vertices())
                    ));
                }
            }
        }
        Command::Structure { lemmas: true, .. } => {
            for r in verify_structural_lemmas(pg) {
                let kind = match r.kind {
                    LemmaKind::Theorem => "theorem",
                    LemmaKind::Precondition => "precondition",
                };
                let status = if r.holds { "holds" } else { "violated" };
                let ws: Vec<String> = r.witnesses.iter().map(witness_text).collect();
                out.push_str(&format!("{} {kind} {status}", r.id));
                if !ws.is_empty() {
                    out.push_str(&format!(" {}", ws.join(" ")));
                }
                out.push('\n');
                if !r.holds && r.kind == LemmaKind::Theorem {
                    code = FOUND;
                }
            }
        }
        Command::Structure { lemmas: false, .. } => {
            let tags = classify_vertices_and_faces(pg);
            for (v, t) in tags.vertices.iter().enumerate() {
                let mut words = vec![format!("vertex {v} degree {}", g.degree(v))];
                if t.internal {
                    words.push("internal".into());
                }
                words.push(format!("triangles {}", t.triangles));
                for (flag, name) in [(t.bad4, "bad4"), (t.bad5, "bad5"), (t.good5, "good5")] {
                    if flag {
                        words.push(name.into());
                    }
                }
                out.push_str(&words.join(" "));
                out.push('\n');
            }
            for t in find_ti_subgraphs(pg) {
                out.push_str(&format!("T{} faces {}\n", t.index, join(&t.faces)));
            }
        }
        Command::Solve { k, cover, .. } => {
            let lines = match cover {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    Some(parse_cover_text(&text)?)
                }
                None => parsed.covers.clone(),
            };
            if let Some(lines) = lines {
                let cover = cover_from_lines(g, *k, &lines)?;
                match find_transversal(&cover_graph(g, &cover)) {
                    Some(t) => out.push_str(&format!("transversal: {}\n", join(&t.colors))),
                    None => {
                        out.push_str("no transversal\n");
                        code = FOUND;
                    }
                }
            } else {
                let v = dp_colorable(g, *k, CoverMode::Exhaustive, budget)?;
                match v.outcome {
                    Colorability::AllColorable => out.push_str(&format!(
                        "dp-{k}-colorable: yes ({} covers checked, core {})\n",
                        v.covers_checked, v.core_size
                    )),
                    Colorability::Counterexample(cover) => {
                        out.push_str(&format!("dp-{k}-colorable: no; cover without a transversal:\n"));
                        write_cover(&mut out, pg, &cover);
                        code = FOUND;
                    }
                }
            }
        }
        Command::DpChromatic { max, .. } => {
            out.push_str(&format!("dp-chromatic: {}\n", dp_chromatic(g, *max, budget)?));
        }
        Command::ListChromatic { max, .. } => {
            out.push_str(&format!("list-chromatic: {}\n", list_chromatic(g, *max, budget)?));
        }
        Command::Extend {
            cycle,
            colors,
            k,
            samples,
            seed,
            ..
        } => {
            if cycle.len() != colors.len() {
                return Err(Failure("--cycle and --colors differ in length".into()));
            }
            Cycle::new(g, cycle).map_err(|_| Failure("--cycle is not a cycle of the graph".into()))?;
            let pre = Precoloring::from_pairs(cycle.iter().copied().zip(colors.iter().copied()));
            let mode = match samples {
                Some(s) => CoverMode::Sampled {
                    samples: *s,
                    seed: *seed,
                },
                None => CoverMode::Exhaustive,
            };
            let v = check_precoloring_extension(g, &pre, *k, mode, budget)?;
            match v.outcome {
                Extension::AllExtend => out.push_str(&format!(
                    "extends: yes ({} covers checked, core {})\n",
                    v.covers_checked, v.core_size
                )),
                Extension::Failure { cover, precoloring } => {
                    let pairs: Vec<String> = precoloring.iter().map(|(v, c)| format!("{v}={c}")).collect();
                    out.push_str(&format!("extends: no; precoloring {}\n", pairs.join(" ")));
                    write_cover(&mut out, pg, &cover);
                    code = FOUND;
                }
            }
        }
        Command::Discharge { rules, .. } => {
            let rules = match rules {
                Rules::G1 => RuleSet::G1,
                Rules::G2 => RuleSet::G2,
            };
            let r = audit(pg, rules);
            out.push_str(&r.to_string());
            let a = r.accounting;
            out.push_str(&format!(
                "# rules {rules} d(D)={} s={} s'={} f3={} f3'={} t1={} t2={} b={} k={}\n",
                a.outer_len, a.s, a.s_prime, a.f3, a.f3_prime, a.t1, a.t2, a.b, a.k
            ));
            for c in &r.checks {
                let status = match (c.asserted, c.holds) {
                    (_, true) => "holds",
                    (true, false) => "FAILS",
                    (false, false) => "fails-unasserted",
                };
                out.push_str(&format!("# check {} {status}\n", c.name));
            }
            if r.failed_checks().next().is_some() {
                code = FOUND;
            }
        }
        Command::Corpus { .. } => unreachable!("corpus takes no input"),
    }
    Ok((out, code))
}

fn corpus(n: &str, class: Option<Class>, seed: u64, samples: Option<usize>) -> Result<String, Failure> {
    let (a, b) = n
        .split_once("..")
        .ok_or_else(|| Failure(format!("--n expects A..B, got `{n}`")))?;
    let a: usize = a.trim().parse()?;
    let b: usize = b.trim().trim_start_matches('=').parse()?;
    let mut spec = CorpusSpec::new(a..=b).seed(seed);
    if let Some(c) = class {
        spec = spec.class(match c {
            Class::G1 => ClassFilter::G1,
            Class::G2 => ClassFilter::G2,
        });
    }
    if let Some(s) = samples {
        spec.samples_per_order = s;
    }
    let docs: Vec<String> = corpus_generate(&spec)
        .iter()
        .map(|pg| write_rotation_text(&RotationDocument::from_plane_graph(pg)))
        .collect();
    Ok(docs.join("\n"))
}

fn run(cli: &Cli) -> Result<(String, u8), Failure> {
    let input = match &cli.command {
        Command::Corpus { n, class, seed, samples } => return Ok((corpus(n, *class, *seed, *samples)?, COMPUTED)),
        Command::Faces(i) | Command::Class(i) => i,
        Command::Cycles { input, .. }
        | Command::Structure { input, .. }
        | Command::Solve { input, .. }
        | Command::DpChromatic { input, .. }
        | Command::ListChromatic { input, .. }
        | Command::Extend { input, .. }
        | Command::Discharge { input, .. } => input,
    };
    let graphs = read_input(input)?;
    let many = graphs.len() > 1;
    let mut text = String::new();
    let mut code = COMPUTED;
    for (i, parsed) in graphs.iter().enumerate() {
        let (out, c) = run_one(&cli.command, parsed)?;
        if many {
            text.push_str(&format!("# graph {i}\n"));
        }
        text.push_str(&out);
        code = code.max(c);
    }
    Ok((text, code))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { COMPUTED });
        }
    };
    match run(&cli) {
        Ok((text, code)) => {
            let _ = io::stdout().write_all(text.as_bytes());
            ExitCode::from(code)
        }
        Err(Failure(msg)) => {
            eprintln!("dplab: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
