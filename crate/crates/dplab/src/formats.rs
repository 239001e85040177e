//! Graph file formats: rotation-text, graph6 and planar code.

use std::collections::BTreeMap;

use dplab_core::cover::Color;
use dplab_core::{edge, Cover, CoverError, Edge, Graph, GraphError, PlaneGraph, PlaneGraphError};
use thiserror::Error;

use crate::embedding::{embed_planar, DEFAULT_EMBED_LIMIT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("graph is not planar")]
    NotPlanar,
    #[error("graph has {vertices} vertices, embedding limit is {limit}")]
    TooLargeToEmbed { vertices: usize, limit: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid embedding: {0}")]
    Embedding(#[from] PlaneGraphError),
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid cover: {0}")]
    Cover(#[from] CoverError),
}

fn syntax(offset: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        offset,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    RotationText,
    Graph6,
    PlanarCode,
}

impl Format {
    /// Guesses the format from the leading bytes.
    pub fn detect(bytes: &[u8]) -> Format {
        if bytes.starts_with(b">>planar_code") || std::str::from_utf8(bytes).is_err() {
            return Format::PlanarCode;
        }
        let text = String::from_utf8_lossy(bytes);
        let first = text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.parse::<usize>().is_ok() => Format::RotationText,
            _ => Format::Graph6,
        }
    }
}

/// A parsed rotation-text document, kept close to its source so that it
/// serializes back unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationDocument {
    pub rotations: Vec<Vec<usize>>,
    pub outer: Option<Vec<usize>>,
    /// Edges in file order with pairs `(color at u, color at v)`.
    pub covers: Option<Vec<(usize, usize, Vec<(Color, Color)>)>>,
}

impl RotationDocument {
    pub fn from_plane_graph(pg: &PlaneGraph) -> Self {
        RotationDocument {
            rotations: pg.rotations().to_vec(),
            outer: Some(pg.outer_face().boundary.clone()),
            covers: None,
        }
    }

    pub fn plane_graph(&self) -> Result<PlaneGraph, FormatError> {
        Ok(PlaneGraph::from_rotations(self.rotations.clone(), self.outer.as_deref())?)
    }

    /// Builds the cover with lists `1..=k`; edges without a line get an
    /// empty matching.
    pub fn cover(&self, graph: &Graph, k: usize) -> Result<Option<Cover>, FormatError> {
        let Some(lines) = &self.covers else {
            return Ok(None);
        };
        Ok(Some(cover_from_lines(graph, k, lines)?))
    }
}

pub fn cover_from_lines(
    graph: &Graph,
    k: usize,
    lines: &[(usize, usize, Vec<(Color, Color)>)],
) -> Result<Cover, FormatError> {
    let lists = vec![(1..=k as Color).collect::<Vec<_>>(); graph.vertex_count()];
    let mut matchings: BTreeMap<Edge, Vec<(Color, Color)>> = graph.edges().iter().map(|&e| (e, Vec::new())).collect();
    for (u, v, pairs) in lines {
        let oriented = if u < v {
            pairs.clone()
        } else {
            pairs.iter().map(|&(a, b)| (b, a)).collect()
        };
        matchings.insert(edge(*u, *v), oriented);
    }
    Ok(Cover::new(graph, lists, matchings)?)
}

/// Cover lines for `cover`, one per edge with a nonempty matching.
pub fn cover_lines(graph: &Graph, cover: &Cover) -> Vec<(usize, usize, Vec<(Color, Color)>)> {
    graph
        .edges()
        .iter()
        .map(|&(u, v)| (u, v, cover.matching(u, v)))
        .filter(|(_, _, m)| !m.is_empty())
        .collect()
}

struct Lines<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Lines<'a> {
    /// Next line that is neither blank nor a comment, with its offset.
    fn next(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.text.len() {
            let start = self.pos;
            let end = self.text[start..].find('\n').map_or(self.text.len(), |i| start + i);
            self.pos = end + 1;
            let line = self.text[start..end].trim();
            if !line.is_empty() && !line.starts_with('#') {
                return Some((start, line));
            }
        }
        None
    }
}

fn numbers<T: std::str::FromStr>(offset: usize, s: &str) -> Result<Vec<T>, FormatError> {
    s.split_whitespace()
        .map(|t| t.parse().map_err(|_| syntax(offset, format!("bad number `{t}`"))))
        .collect()
}

/// Parses one rotation-text document. The neighbor lines are taken
/// verbatim: a vertex with no neighbors is written as `-`.
pub fn parse_rotation_text(text: &str) -> Result<RotationDocument, FormatError> {
    let mut lines = Lines { text, pos: 0 };
    let (off, first) = lines.next().ok_or_else(|| syntax(0, "empty document"))?;
    let n: usize = first.parse().map_err(|_| syntax(off, "first line must be the vertex count"))?;
    let mut rotations = Vec::with_capacity(n);
    for v in 0..n {
        let (off, line) = lines
            .next()
            .ok_or_else(|| syntax(text.len(), format!("missing neighbor line for vertex {v}")))?;
        if line == "-" {
            rotations.push(Vec::new());
        } else {
            rotations.push(numbers(off, line)?);
        }
    }
    let mut doc = RotationDocument {
        rotations,
        outer: None,
        covers: None,
    };
    let mut next = lines.next();
    if let Some((off, line)) = next {
        if let Some(rest) = line.strip_prefix("outer:") {
            doc.outer = Some(numbers(off, rest)?);
            next = lines.next();
        }
    }
    if let Some((off, line)) = next {
        if line != "covers:" {
            return Err(syntax(off, format!("unexpected line `{line}`")));
        }
        let mut entries = Vec::new();
        while let Some((off, line)) = lines.next() {
            entries.push(parse_cover_line(off, line)?);
        }
        doc.covers = Some(entries);
    }
    Ok(doc)
}

type CoverLine = (usize, usize, Vec<(Color, Color)>);

fn parse_cover_line(off: usize, line: &str) -> Result<CoverLine, FormatError> {
    let (head, tail) = line
        .split_once(':')
        .ok_or_else(|| syntax(off, "cover line needs `u v: pairs`"))?;
    let ends: Vec<usize> = numbers(off, head)?;
    if ends.len() != 2 {
        return Err(syntax(off, "cover line must name two vertices"));
    }
    let mut pairs = Vec::new();
    for token in tail.split_whitespace() {
        let (a, b) = token
            .split_once('>')
            .ok_or_else(|| syntax(off, format!("bad pair `{token}`")))?;
        let a = a.parse().map_err(|_| syntax(off, format!("bad color `{a}`")))?;
        let b = b.parse().map_err(|_| syntax(off, format!("bad color `{b}`")))?;
        pairs.push((a, b));
    }
    Ok((ends[0], ends[1], pairs))
}

/// Cover lines from a standalone file: either bare `u v: ...` lines, with
/// or without a leading `covers:` line, or a rotation-text document with a
/// covers section.
pub fn parse_cover_text(text: &str) -> Result<Vec<CoverLine>, FormatError> {
    if let Ok(doc) = parse_rotation_text(text) {
        if let Some(covers) = doc.covers {
            return Ok(covers);
        }
    }
    let mut lines = Lines { text, pos: 0 };
    let mut out = Vec::new();
    while let Some((off, line)) = lines.next() {
        if line != "covers:" {
            out.push(parse_cover_line(off, line)?);
        }
    }
    Ok(out)
}

pub fn write_rotation_text(doc: &RotationDocument) -> String {
    let mut out = format!("{}\n", doc.rotations.len());
    for rot in &doc.rotations {
        if rot.is_empty() {
            out.push_str("-\n");
        } else {
            out.push_str(&join(rot));
            out.push('\n');
        }
    }
    if let Some(outer) = &doc.outer {
        out.push_str("outer: ");
        out.push_str(&join(outer));
        out.push('\n');
    }
    if let Some(covers) = &doc.covers {
        out.push_str("covers:\n");
        for (u, v, pairs) in covers {
            out.push_str(&format!("{u} {v}:"));
            for (a, b) in pairs {
                out.push_str(&format!(" {a}>{b}"));
            }
            out.push('\n');
        }
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Splits a file into rotation-text documents separated by blank lines.
pub fn parse_rotation_text_stream(text: &str) -> Result<Vec<RotationDocument>, FormatError> {
    let mut docs = Vec::new();
    let mut chunk = String::new();
    for line in text.lines() {
        if line.trim().is_empty() {
            if !chunk.trim().is_empty() {
                docs.push(parse_rotation_text(&chunk)?);
            }
            chunk.clear();
        } else {
            chunk.push_str(line);
            chunk.push('\n');
        }
    }
    if !chunk.trim().is_empty() {
        docs.push(parse_rotation_text(&chunk)?);
    }
    Ok(docs)
}

const GRAPH6_HEADER: &str = ">>graph6<<";

fn graph6_size(bytes: &[u8]) -> Result<(usize, usize), FormatError> {
    let b = |i: usize| -> Result<usize, FormatError> {
        let x = *bytes.get(i).ok_or_else(|| syntax(i, "truncated size"))?;
        if !(63..=126).contains(&x) {
            return Err(syntax(i, "byte out of range"));
        }
        Ok(x as usize - 63)
    };
    let first = b(0)?;
    if first < 63 {
        return Ok((first, 1));
    }
    if b(1)? < 63 {
        let n = (b(1)? << 12) | (b(2)? << 6) | b(3)?;
        return Ok((n, 4));
    }
    let mut n = 0;
    for i in 2..8 {
        n = (n << 6) | b(i)?;
    }
    Ok((n, 8))
}

/// Decodes one graph6 line.
pub fn parse_graph6(line: &str) -> Result<Graph, FormatError> {
    let line = line.trim();
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, mut pos) = graph6_size(bytes)?;
    let needed = (n * n.saturating_sub(1) / 2).div_ceil(6);
    if bytes.len() != pos + needed {
        return Err(syntax(bytes.len().min(pos + needed), "wrong length for vertex count"));
    }
    let mut edges = Vec::new();
    let mut bit = 0;
    let mut current = 0;
    for j in 1..n {
        for i in 0..j {
            if bit == 0 {
                let x = bytes[pos];
                if !(63..=126).contains(&x) {
                    return Err(syntax(pos, "byte out of range"));
                }
                current = x - 63;
                pos += 1;
                bit = 6;
            }
            bit -= 1;
            if current >> bit & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Ok(Graph::from_edges(n, &edges)?)
}

pub fn write_graph6(graph: &Graph) -> String {
    let n = graph.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258048 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push((n >> s & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push((n >> s & 63) as u8 + 63);
        }
    }
    let mut current = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            current = current << 1 | graph.has_edge(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push(current + 63);
                current = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push((current << (6 - bits)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

const PLANAR_CODE_HEADER: &[u8] = b">>planar_code<<";

/// Decodes a planar-code stream. Vertices are numbered from 1 in the file
/// and from 0 here; each rotation is taken in file order.
pub fn parse_planar_code(bytes: &[u8]) -> Result<Vec<PlaneGraph>, FormatError> {
    let mut pos = 0;
    let mut big_endian = false;
    if bytes.starts_with(b">>planar_code") {
        let end = bytes
            .windows(2)
            .position(|w| w == b"<<")
            .ok_or_else(|| syntax(0, "unterminated header"))?;
        big_endian = bytes[..end].ends_with(b" be");
        pos = end + 2;
    }
    let mut graphs = Vec::new();
    while pos < bytes.len() {
        let start = pos;
        let mut wide = false;
        let mut n = bytes[pos] as usize;
        pos += 1;
        if n == 0 {
            wide = true;
            n = read_word(bytes, &mut pos, big_endian)?;
        }
        let mut rotations = Vec::with_capacity(n);
        for _ in 0..n {
            let mut rot = Vec::new();
            loop {
                let x = if wide {
                    read_word(bytes, &mut pos, big_endian)?
                } else {
                    let x = *bytes.get(pos).ok_or_else(|| syntax(pos, "truncated graph"))? as usize;
                    pos += 1;
                    x
                };
                if x == 0 {
                    break;
                }
                if x > n {
                    return Err(syntax(pos - 1, format!("neighbor {x} out of range")));
                }
                rot.push(x - 1);
            }
            rotations.push(rot);
        }
        let pg = PlaneGraph::from_rotations(rotations, None).map_err(|e| match e {
            PlaneGraphError::Empty => syntax(start, "graph with no vertices"),
            e => FormatError::Embedding(e),
        })?;
        graphs.push(pg);
    }
    Ok(graphs)
}

fn read_word(bytes: &[u8], pos: &mut usize, big_endian: bool) -> Result<usize, FormatError> {
    let pair = bytes.get(*pos..*pos + 2).ok_or_else(|| syntax(*pos, "truncated word"))?;
    *pos += 2;
    let pair = [pair[0], pair[1]];
    Ok(if big_endian {
        u16::from_be_bytes(pair)
    } else {
        u16::from_le_bytes(pair)
    } as usize)
}

/// Encodes graphs with the header and one-byte entries (two-byte
/// little-endian entries when a graph has 255 or more vertices).
pub fn write_planar_code(graphs: &[PlaneGraph]) -> Vec<u8> {
    let mut out = PLANAR_CODE_HEADER.to_vec();
    for pg in graphs {
        let n = pg.vertex_count();
        if n < 255 {
            out.push(n as u8);
            for v in 0..n {
                out.extend(pg.rotation(v).iter().map(|&w| (w + 1) as u8));
                out.push(0);
            }
        } else {
            out.push(0);
            out.extend((n as u16).to_le_bytes());
            for v in 0..n {
                for &w in pg.rotation(v) {
                    out.extend(((w + 1) as u16).to_le_bytes());
                }
                out.extend(0u16.to_le_bytes());
            }
        }
    }
    out
}

/// One input graph, with the cover payload when the source had one.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub plane: PlaneGraph,
    pub covers: Option<Vec<(usize, usize, Vec<(Color, Color)>)>>,
}

/// Parses every graph in `bytes`. Abstract graphs (graph6) are embedded
/// when they have at most `embed_limit` vertices.
pub fn parse_document(bytes: &[u8], format: Option<Format>, embed_limit: usize) -> Result<Vec<Parsed>, FormatError> {
    match format.unwrap_or_else(|| Format::detect(bytes)) {
        Format::PlanarCode => Ok(parse_planar_code(bytes)?
            .into_iter()
            .map(|plane| Parsed { plane, covers: None })
            .collect()),
        Format::RotationText => {
            let text = std::str::from_utf8(bytes).map_err(|e| syntax(e.valid_up_to(), "not UTF-8"))?;
            parse_rotation_text_stream(text)?
                .into_iter()
                .map(|doc| {
                    Ok(Parsed {
                        plane: doc.plane_graph()?,
                        covers: doc.covers,
                    })
                })
                .collect()
        }
        Format::Graph6 => {
            let text = std::str::from_utf8(bytes).map_err(|e| syntax(e.valid_up_to(), "not UTF-8"))?;
            text.lines()
                .filter(|l| !l.trim().is_empty())
                .map(|l| {
                    let g = parse_graph6(l)?;
                    Ok(Parsed {
                        plane: embed_planar(&g, embed_limit)?,
                        covers: None,
                    })
                })
                .collect()
        }
    }
}

/// [`parse_document`] with the default embedding limit.
pub fn parse(bytes: &[u8]) -> Result<Vec<Parsed>, FormatError> {
    parse_document(bytes, None, DEFAULT_EMBED_LIMIT)
}
