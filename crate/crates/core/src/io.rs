//! Text formats: graph6, edge lists, general arrangements, lattice JSON and
//! DOT.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, ArrangementKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{FlatChain, IntersectionLattice};
use crate::partition::ArrangementPartition;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Decodes one graph6 string; an optional `>>graph6<<` header is skipped.
/// Vertex `k` of the encoding becomes vertex `k + 1`.
pub fn parse_graph6(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s);
    let bytes: Vec<u8> = s.bytes().collect();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(parse_err(1, format!("invalid graph6 byte {:?}", b as char)));
    }
    let (n, rest) = match bytes.as_slice() {
        [] => return Err(parse_err(1, "empty graph6 string")),
        [126, 126, ..] => {
            if bytes.len() < 8 {
                return Err(parse_err(1, "truncated graph6 size"));
            }
            let n = bytes[2..8].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &bytes[8..])
        }
        [126, ..] => {
            if bytes.len() < 4 {
                return Err(parse_err(1, "truncated graph6 size"));
            }
            let n = bytes[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b - 63) as usize);
            (n, &bytes[4..])
        }
        [b, ..] => ((b - 63) as usize, &bytes[1..]),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    let needed = pairs.div_ceil(6);
    if rest.len() != needed {
        return Err(parse_err(
            1,
            format!("graph6 body has {} bytes, expected {needed} for n = {n}", rest.len()),
        ));
    }
    let bit = |k: usize| (rest[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i + 1, j + 1));
            }
            k += 1;
        }
    }
    Graph::new(n, edges)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|k| ((n >> (6 * k)) & 63) as u8 + 63));
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 2..=n {
        for i in 1..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Every nonblank line of a graph6 file, in order.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l).map_err(|e| match e {
                Error::Parse { message, .. } => parse_err(i + 1, message),
                other => other,
            })
        })
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap().trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

/// Edge list: one `u v` pair per line, vertices 1-based. A first line with a
/// single integer fixes the vertex count; otherwise it is the largest label.
/// `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (k, (line, l)) in content_lines(text).enumerate() {
        let fields: Vec<&str> = l.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| parse_err(line, format!("expected a vertex number, found {s:?}")))
        };
        match fields.as_slice() {
            [one] if k == 0 => n = Some(num(one)?),
            [u, v] => {
                let (u, v) = (num(u)?, num(v)?);
                if u == 0 || v == 0 {
                    return Err(parse_err(line, "vertices are numbered from 1"));
                }
                edges.push((line, u, v));
            }
            _ => return Err(parse_err(line, format!("expected \"u v\", found {l:?}"))),
        }
    }
    let n = n.unwrap_or_else(|| edges.iter().map(|&(_, u, v)| u.max(v)).max().unwrap_or(0));
    for &(line, u, v) in &edges {
        if u.max(v) > n {
            return Err(parse_err(line, format!("vertex {} exceeds n = {n}", u.max(v))));
        }
        if u == v {
            return Err(parse_err(line, format!("self-loop at {u}")));
        }
    }
    if let Some(w) = {
        let mut seen: Vec<_> = edges.iter().map(|&(line, u, v)| ((u.min(v), u.max(v)), line)).collect();
        seen.sort();
        seen.windows(2).find(|w| w[0].0 == w[1].0).map(|w| w[1])
    } {
        return Err(parse_err(w.1, format!("duplicate edge {}-{}", w.0 .0, w.0 .1)));
    }
    Graph::new(n, edges.into_iter().map(|(_, u, v)| (u, v)))
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// General arrangement: a header `arrangement DIM`, then one normal vector
/// per line as rationals (`1 -1/2 0`).
pub fn parse_arrangement(text: &str) -> Result<Arrangement> {
    let mut lines = content_lines(text);
    let (line, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["arrangement", d] => d
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("bad dimension {d:?}")))?,
        _ => return Err(parse_err(line, "expected \"arrangement DIM\"")),
    };
    let mut normals = Vec::new();
    for (line, l) in lines {
        let row = l
            .split_whitespace()
            .map(|s| {
                s.parse::<BigRational>()
                    .map_err(|_| parse_err(line, format!("bad coefficient {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if row.len() != dim {
            return Err(parse_err(line, format!("expected {dim} coefficients, found {}", row.len())));
        }
        normals.push(row);
    }
    Arrangement::general(dim, normals)
}

/// Input accepted by the command line.
#[derive(Debug)]
pub enum Input {
    Graph(Graph),
    Arrangement(Arrangement),
}

impl Input {
    pub fn into_arrangement(self) -> Result<Arrangement> {
        match self {
            Input::Graph(g) => Arrangement::graphical(&g),
            Input::Arrangement(a) => Ok(a),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputFormat {
    EdgeList,
    Graph6,
    Arrangement,
    LatticeJson,
}

impl std::str::FromStr for InputFormat {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "edges" | "edge-list" => Ok(Self::EdgeList),
            "graph6" => Ok(Self::Graph6),
            "arrangement" => Ok(Self::Arrangement),
            "json" | "lattice-json" => Ok(Self::LatticeJson),
            _ => Err(format!("unknown input format {s:?}")),
        }
    }
}

/// `{` means lattice JSON, `arrangement` a general arrangement, a digit an
/// edge list, anything else graph6.
pub fn detect_format(text: &str) -> InputFormat {
    let first = content_lines(text).next().map_or("", |(_, l)| l);
    if first.starts_with('{') {
        InputFormat::LatticeJson
    } else if first.starts_with("arrangement") {
        InputFormat::Arrangement
    } else if first.starts_with(|c: char| c.is_ascii_digit()) {
        InputFormat::EdgeList
    } else {
        InputFormat::Graph6
    }
}

pub fn parse_input(text: &str, format: Option<InputFormat>) -> Result<Input> {
    match format.unwrap_or_else(|| detect_format(text)) {
        InputFormat::EdgeList => parse_edge_list(text).map(Input::Graph),
        InputFormat::Graph6 => {
            let (line, l) = content_lines(text)
                .next()
                .ok_or_else(|| parse_err(1, "empty input"))?;
            parse_graph6(l)
                .map_err(|e| match e {
                    Error::Parse { message, .. } => parse_err(line, message),
                    other => other,
                })
                .map(Input::Graph)
        }
        InputFormat::Arrangement => parse_arrangement(text).map(Input::Arrangement),
        InputFormat::LatticeJson => {
            let doc: LatticeDocument = serde_json::from_str(text)
                .map_err(|e| parse_err(e.line(), e.to_string()))?;
            doc.arrangement.into_arrangement().map(|a| match a.graph() {
                Some(g) => Input::Graph(g.clone()),
                None => Input::Arrangement(a),
            })
        }
    }
}

/// Arrangement description embedded in lattice JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ArrangementSpec {
    Graphical {
        n: usize,
        edges: Vec<(usize, usize)>,
    },
    General {
        dim: usize,
        /// Integer normals as decimal strings.
        normals: Vec<Vec<String>>,
    },
}

impl ArrangementSpec {
    pub fn of(a: &Arrangement) -> Self {
        match (a.kind(), a.graph()) {
            (ArrangementKind::Graphical, Some(g)) => Self::Graphical {
                n: g.n(),
                edges: g.edges().to_vec(),
            },
            _ => Self::General {
                dim: a.dim(),
                normals: a
                    .normals()
                    .iter()
                    .map(|v| v.iter().map(|c| c.to_string()).collect())
                    .collect(),
            },
        }
    }

    pub fn into_arrangement(self) -> Result<Arrangement> {
        match self {
            Self::Graphical { n, edges } => Arrangement::graphical(&Graph::new(n, edges)?),
            Self::General { dim, normals } => {
                let ints = normals
                    .into_iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                s.parse::<BigInt>()
                                    .map_err(|_| parse_err(0, format!("bad integer {s:?}")))
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Arrangement::from_integer_normals(dim, ints)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlatRecord {
    pub id: usize,
    pub rank: usize,
    pub mobius: i64,
    pub hyperplanes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub blocks: Option<Vec<Vec<usize>>>,
}

/// Serialized lattice. Reading one back only uses `arrangement`; the rest
/// is rebuilt.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub arrangement: ArrangementSpec,
    pub rank: usize,
    pub flats: Vec<FlatRecord>,
    /// Hasse diagram edges `(lower, upper)`.
    pub covers: Vec<(usize, usize)>,
    pub characteristic_polynomial: Vec<i64>,
}

impl LatticeDocument {
    pub fn of(l: &IntersectionLattice) -> Self {
        let a = l.arrangement();
        Self {
            arrangement: ArrangementSpec::of(a),
            rank: l.rank(),
            flats: (0..l.len())
                .map(|x| FlatRecord {
                    id: x,
                    rank: l.rank_of(x),
                    mobius: l.mobius(x),
                    hyperplanes: l.hyperplanes(x).iter().map(|h| a.label(h)).collect(),
                    blocks: l.flat(x).blocks().map(<[_]>::to_vec),
                })
                .collect(),
            covers: l.cover_pairs().collect(),
            characteristic_polynomial: l.characteristic_polynomial().coefficients().to_vec(),
        }
    }
}

pub fn lattice_to_json(l: &IntersectionLattice) -> String {
    serde_json::to_string_pretty(&LatticeDocument::of(l)).expect("lattice serializes")
}

fn dot_label(l: &IntersectionLattice, x: usize) -> String {
    let flat = l.flat(x);
    match flat.blocks() {
        Some(_) => {
            let blocks = flat.nontrivial_blocks();
            if blocks.is_empty() {
                "V".to_string()
            } else {
                blocks
                    .iter()
                    .map(|b| b.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
                    .collect::<Vec<_>>()
                    .join("|")
            }
        }
        None => {
            let a = l.arrangement();
            let hs: Vec<String> = l.hyperplanes(x).iter().map(|h| a.label(h)).collect();
            if hs.is_empty() {
                "V".to_string()
            } else {
                hs.join(",")
            }
        }
    }
}

/// Hasse diagram, bottom flat at the bottom.
pub fn lattice_to_dot(l: &IntersectionLattice) -> String {
    let mut s = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for r in 0..=l.rank() {
        let ids = l.at_rank(r);
        let _ = write!(s, "  {{ rank=same;");
        for &x in ids {
            let _ = write!(s, " f{x};");
        }
        s.push_str(" }\n");
    }
    for x in 0..l.len() {
        let _ = writeln!(
            s,
            "  f{x} [label=\"{}\\nmu={}\"];",
            dot_label(l, x),
            l.mobius(x)
        );
    }
    for (x, y) in l.cover_pairs() {
        let _ = writeln!(s, "  f{x} -> f{y};");
    }
    s.push_str("}\n");
    s
}

/// Parts as lists of hyperplane labels.
pub fn partition_to_json(a: &Arrangement, pi: &ArrangementPartition) -> Value {
    json!(pi
        .parts()
        .iter()
        .map(|p| p.iter().map(|h| a.label(h)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// Each flat of the chain as its list of hyperplane labels.
pub fn chain_to_json(l: &IntersectionLattice, chain: &FlatChain) -> Value {
    let a = l.arrangement();
    json!(chain
        .ids()
        .iter()
        .map(|&x| l.hyperplanes(x).iter().map(|h| a.label(h)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// Parses a partition from label lists, as produced by [`partition_to_json`].
pub fn partition_from_json(a: &Arrangement, v: &Value) -> Result<ArrangementPartition> {
    let bad = |m: &str| Error::InvalidPartition(m.to_string());
    let parts = v.as_array().ok_or_else(|| bad("expected an array of parts"))?;
    let sets = parts
        .iter()
        .map(|p| {
            p.as_array()
                .ok_or_else(|| bad("expected an array of labels"))?
                .iter()
                .map(|h| {
                    let s = h.as_str().ok_or_else(|| bad("labels are strings"))?;
                    a.index_of_label(s)
                        .ok_or_else(|| Error::InvalidPartition(format!("unknown hyperplane {s:?}")))
                })
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    ArrangementPartition::new(a.len(), sets)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_strings() {
        // K3 and the 4-cycle 1-2-3-4 in standard encoding.
        let k3 = parse_graph6("Bw").unwrap();
        assert_eq!(k3, Graph::complete(3));
        let c4 = Graph::cycle(4);
        assert_eq!(to_graph6(&c4), "Cl");
        assert_eq!(parse_graph6(">>graph6<<Cl").unwrap(), c4);
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::complete(2)), "A_");
    }

    #[test]
    fn graph6_round_trip_and_errors() {
        let g = Graph::new(8, [(1, 2), (2, 8), (3, 7), (5, 6), (1, 8)]).unwrap();
        assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        let big = Graph::path(70);
        assert_eq!(parse_graph6(&to_graph6(&big)).unwrap(), big);
        assert!(parse_graph6("Cl?").is_err());
        assert!(parse_graph6("C ").is_err());
        assert!(parse_graph6("").is_err());
    }

    #[test]
    fn edge_lists() {
        let g = parse_edge_list("# triangle\n3\n1 2\n2 3 # last two\n1 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_edge_list("1 2\n").unwrap(), Graph::complete(2));
        assert_eq!(parse_edge_list("4\n1 2\n").unwrap().n(), 4);
        assert_eq!(parse_edge_list(&to_edge_list(&Graph::cycle(5))).unwrap(), Graph::cycle(5));
        for (text, line) in [
            ("1 2\n2 x\n", 2),
            ("3\n1 2\n\n4 1\n", 4),
            ("1 2\n2 1\n", 2),
            ("1 1\n", 1),
            ("1 2 3\n", 1),
        ] {
            match parse_edge_list(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn detection() {
        assert_eq!(detect_format("3\n1 2\n"), InputFormat::EdgeList);
        assert_eq!(detect_format("Bw\n"), InputFormat::Graph6);
        assert_eq!(detect_format("arrangement 2\n1 0\n"), InputFormat::Arrangement);
        assert_eq!(detect_format("{\"a\":1}"), InputFormat::LatticeJson);
        assert!(matches!(parse_input("Bw", None).unwrap(), Input::Graph(g) if g == Graph::complete(3)));
    }

    #[test]
    fn general_arrangement_text() {
        let a = parse_arrangement("arrangement 2\n1 0\n0 1\n1/2 -1/2\n").unwrap();
        assert_eq!(a.len(), 3);
        assert_eq!(a.rank(), 2);
        assert!(parse_arrangement("arrangement 2\n1 0 0\n").is_err());
        assert!(parse_arrangement("arrangement 2\n1 0\n2 0\n").is_err());
    }

    #[test]
    fn lattice_json_round_trip() {
        for a in [
            Arrangement::graphical(&Graph::complete(3)).unwrap(),
            parse_arrangement("arrangement 3\n1 0 0\n0 1 0\n1 1 1\n1 -1 0\n").unwrap(),
        ] {
            let l = IntersectionLattice::build(&a).unwrap();
            let text = lattice_to_json(&l);
            let back = parse_input(&text, None).unwrap().into_arrangement().unwrap();
            let l2 = IntersectionLattice::build(&back).unwrap();
            assert_eq!(lattice_to_json(&l2), text);
        }
        let l = IntersectionLattice::build(&Arrangement::graphical(&Graph::complete(3)).unwrap())
            .unwrap();
        let doc = LatticeDocument::of(&l);
        assert_eq!(doc.flats.len(), 5);
        assert_eq!(doc.flats[4].mobius, 2);
        assert_eq!(doc.covers.len(), 6);
    }

    #[test]
    fn dot_output() {
        let l = IntersectionLattice::build(&Arrangement::graphical(&Graph::complete(2)).unwrap())
            .unwrap();
        let dot = lattice_to_dot(&l);
        assert!(dot.starts_with("digraph lattice {"));
        assert!(dot.contains("f0 -> f1;"));
        assert!(dot.contains("label=\"12\\nmu=-1\""));
    }

    #[test]
    fn partition_labels_round_trip() {
        let g = Graph::complete(3);
        let a = Arrangement::graphical(&g).unwrap();
        let pi = ArrangementPartition::from_labels(&[0, 1, 1]);
        let v = partition_to_json(&a, &pi);
        assert_eq!(v, json!([["1-2"], ["1-3", "2-3"]]));
        assert_eq!(partition_from_json(&a, &v).unwrap(), pi);
        assert!(partition_from_json(&a, &json!([["1-2"]])).is_err());
    }
}
