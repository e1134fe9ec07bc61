//! Line-oriented text formats with 1-based vertex ids.
//!
//! DSN files:
//!
//! ```text
//! c genus 0
//! p dsn <n> <m> <q> <p>
//! a <u> <v> <num>/<den>
//! r <s> <t>
//! ```
//!
//! PSI files use `p psi <nG> <mG> <kH> <mH>`, then `eg u v`, `eh x y` and
//! `map u x` records.

use std::collections::{BTreeMap, BTreeSet};

use crate::dsn::DsnInstance;
use crate::error::{Error, Result};
use crate::graph::{UndirectedGraph, Vertex, WeightedDigraph};
use crate::reduction::PsiInstance;
use crate::weight::Weight;

/// A DSN instance with the comment lines that accompanied it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsnFile {
    pub instance: DsnInstance,
    /// Comment bodies in file order, without the leading `c `.
    pub comments: Vec<String>,
}

impl DsnFile {
    pub fn new(instance: DsnInstance) -> Self {
        Self {
            instance,
            comments: Vec::new(),
        }
    }

    /// Value of the first comment of the form `<key> <value>`.
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.comments.iter().find_map(|c| {
            let (k, v) = c.split_once(' ').unwrap_or((c.as_str(), ""));
            (k == key).then(|| v.trim())
        })
    }

    pub fn with_meta(mut self, key: &str, value: impl std::fmt::Display) -> Self {
        self.comments.retain(|c| c.split_whitespace().next() != Some(key));
        self.comments.push(format!("{key} {value}"));
        self
    }

    pub fn genus(&self) -> Option<u32> {
        self.meta("genus").and_then(|v| v.parse().ok())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end: usize,
}

impl<'a> Line<'a> {
    fn split(number: usize, raw: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in raw.char_indices().chain([(raw.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &raw[s..i],
                        column: raw[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        Line {
            number,
            tokens,
            end: raw.chars().count() + 1,
        }
    }

    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn expect_arity(&self, n: usize) -> Result<()> {
        match self.tokens.len().cmp(&n) {
            std::cmp::Ordering::Less => Err(self.error(self.end, format!("expected {} fields", n))),
            std::cmp::Ordering::Greater => Err(self.error(self.tokens[n].column, "unexpected trailing field")),
            std::cmp::Ordering::Equal => Ok(()),
        }
    }

    fn number(&self, i: usize) -> Result<usize> {
        let t = &self.tokens[i];
        t.text
            .parse()
            .map_err(|_| self.error(t.column, format!("expected a non-negative integer, found `{}`", t.text)))
    }

    /// A 1-based vertex id below or equal to `n`, returned 0-based.
    fn vertex(&self, i: usize, n: usize, what: &str) -> Result<Vertex> {
        let t = &self.tokens[i];
        let v = self.number(i)?;
        if v == 0 || v > n {
            return Err(self.error(t.column, format!("{what} {v} is out of range 1..={n}")));
        }
        Ok((v - 1) as Vertex)
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, raw)| Line::split(i + 1, raw))
        .filter(|l| !l.tokens.is_empty())
}

fn count_mismatch(what: &str, declared: usize, found: usize, line: usize) -> Error {
    Error::Parse {
        line,
        column: 1,
        message: format!("header declares {declared} {what} but the file has {found}"),
    }
}

pub fn parse_dsn(text: &str) -> Result<DsnFile> {
    let mut comments = Vec::new();
    let mut header: Option<[usize; 4]> = None;
    let mut arcs: Vec<(Vertex, Vertex, Weight)> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut requests = Vec::new();
    let mut last = 0;
    for line in lines(text) {
        last = line.number;
        let kind = &line.tokens[0];
        if kind.text == "c" {
            let raw = text.lines().nth(line.number - 1).unwrap_or("");
            comments.push(raw.trim_start().strip_prefix('c').unwrap_or("").trim().to_string());
            continue;
        }
        match (kind.text, header) {
            ("p", None) => {
                line.expect_arity(6)?;
                if line.tokens[1].text != "dsn" {
                    return Err(line.error(line.tokens[1].column, "expected problem kind `dsn`"));
                }
                header = Some([line.number(2)?, line.number(3)?, line.number(4)?, line.number(5)?]);
            }
            ("p", Some(_)) => return Err(line.error(kind.column, "duplicate header")),
            (_, None) => return Err(line.error(kind.column, "record before the `p dsn` header")),
            ("a", Some([n, ..])) => {
                line.expect_arity(4)?;
                let u = line.vertex(1, n, "arc tail")?;
                let v = line.vertex(2, n, "arc head")?;
                let wt = &line.tokens[3];
                let w: Weight = wt.text.parse().map_err(|e: String| line.error(wt.column, e))?;
                if !w.is_positive() {
                    return Err(line.error(wt.column, format!("nonpositive weight {w}")));
                }
                if u == v {
                    return Err(line.error(line.tokens[2].column, "self-loop"));
                }
                if !seen.insert((u, v)) {
                    return Err(line.error(kind.column, format!("duplicate arc {} {}", u + 1, v + 1)));
                }
                arcs.push((u, v, w));
            }
            ("r", Some([n, ..])) => {
                line.expect_arity(3)?;
                let s = line.vertex(1, n, "request endpoint")?;
                let t = line.vertex(2, n, "request endpoint")?;
                if s == t {
                    return Err(line.error(line.tokens[2].column, "request from a vertex to itself"));
                }
                requests.push(((s, t), line.number));
            }
            _ => return Err(line.error(kind.column, format!("unknown record type `{}`", kind.text))),
        }
    }
    let Some([n, m, q, p]) = header else {
        return Err(Error::Parse {
            line: last.max(1),
            column: 1,
            message: "missing `p dsn` header".into(),
        });
    };
    if arcs.len() != m {
        return Err(count_mismatch("arcs", m, arcs.len(), last));
    }
    let distinct: BTreeSet<_> = requests.iter().map(|(r, _)| *r).collect();
    if let Some((r, l)) = requests.iter().enumerate().find_map(|(i, (r, l))| {
        requests[..i].iter().any(|(o, _)| o == r).then_some((r, l))
    }) {
        return Err(Error::Parse {
            line: *l,
            column: 1,
            message: format!("duplicate request {} {}", r.0 + 1, r.1 + 1),
        });
    }
    if distinct.len() != p {
        return Err(count_mismatch("requests", p, distinct.len(), last));
    }
    let host = WeightedDigraph::from_arcs(n, arcs)?;
    let instance = DsnInstance::new(host, distinct)?;
    if instance.terminal_count() != q {
        return Err(count_mismatch("terminals", q, instance.terminal_count(), last));
    }
    Ok(DsnFile { instance, comments })
}

/// Canonical text: comments, header, arcs ascending, requests ascending.
pub fn emit_dsn(file: &DsnFile) -> String {
    let inst = &file.instance;
    let host = inst.host();
    let index: BTreeMap<Vertex, usize> = host.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    let mut out = String::new();
    for c in &file.comments {
        if c.is_empty() {
            out.push_str("c\n");
        } else {
            out.push_str(&format!("c {c}\n"));
        }
    }
    out.push_str(&format!(
        "p dsn {} {} {} {}\n",
        host.vertex_count(),
        host.arc_count(),
        inst.terminal_count(),
        inst.request_count()
    ));
    for (u, v, w) in host.arcs() {
        out.push_str(&format!("a {} {} {}/{}\n", index[&u], index[&v], w.numer(), w.denom()));
    }
    for (s, t) in inst.requests() {
        out.push_str(&format!("r {} {}\n", index[s], index[t]));
    }
    out
}

pub fn parse_psi(text: &str) -> Result<PsiInstance> {
    let mut header: Option<[usize; 4]> = None;
    let mut host_edges = Vec::new();
    let mut pattern_edges = Vec::new();
    let mut psi = BTreeMap::new();
    let mut last = 0;
    for line in lines(text) {
        last = line.number;
        let kind = &line.tokens[0];
        match (kind.text, header) {
            ("c", _) => continue,
            ("p", None) => {
                line.expect_arity(6)?;
                if line.tokens[1].text != "psi" {
                    return Err(line.error(line.tokens[1].column, "expected problem kind `psi`"));
                }
                header = Some([line.number(2)?, line.number(3)?, line.number(4)?, line.number(5)?]);
            }
            ("p", Some(_)) => return Err(line.error(kind.column, "duplicate header")),
            (_, None) => return Err(line.error(kind.column, "record before the `p psi` header")),
            ("eg", Some([ng, ..])) => {
                line.expect_arity(3)?;
                let (u, v) = (line.vertex(1, ng, "host vertex")?, line.vertex(2, ng, "host vertex")?);
                if u == v {
                    return Err(line.error(line.tokens[2].column, "self-loop"));
                }
                host_edges.push((u.min(v), u.max(v), line.number));
            }
            ("eh", Some([_, _, kh, _])) => {
                line.expect_arity(3)?;
                let (x, y) = (line.vertex(1, kh, "pattern vertex")?, line.vertex(2, kh, "pattern vertex")?);
                if x == y {
                    return Err(line.error(line.tokens[2].column, "self-loop"));
                }
                pattern_edges.push((x.min(y), x.max(y), line.number));
            }
            ("map", Some([ng, _, kh, _])) => {
                line.expect_arity(3)?;
                let u = line.vertex(1, ng, "host vertex")?;
                let x = line.vertex(2, kh, "pattern vertex")?;
                if psi.insert(u, x).is_some() {
                    return Err(line.error(line.tokens[1].column, format!("host vertex {} mapped twice", u + 1)));
                }
            }
            _ => return Err(line.error(kind.column, format!("unknown record type `{}`", kind.text))),
        }
    }
    let Some([ng, mg, kh, mh]) = header else {
        return Err(Error::Parse {
            line: last.max(1),
            column: 1,
            message: "missing `p psi` header".into(),
        });
    };
    for (edges, what) in [(&host_edges, "host edge"), (&pattern_edges, "pattern edge")] {
        let mut seen = BTreeSet::new();
        for &(u, v, l) in edges.iter() {
            if !seen.insert((u, v)) {
                return Err(Error::Parse {
                    line: l,
                    column: 1,
                    message: format!("duplicate {what} {} {}", u + 1, v + 1),
                });
            }
        }
    }
    if host_edges.len() != mg {
        return Err(count_mismatch("host edges", mg, host_edges.len(), last));
    }
    if pattern_edges.len() != mh {
        return Err(count_mismatch("pattern edges", mh, pattern_edges.len(), last));
    }
    if psi.len() != ng {
        return Err(count_mismatch("class assignments", ng, psi.len(), last));
    }
    let host = UndirectedGraph::from_edges(ng, host_edges.into_iter().map(|(u, v, _)| (u, v)));
    let pattern = UndirectedGraph::from_edges(kh, pattern_edges.into_iter().map(|(u, v, _)| (u, v)));
    PsiInstance::new(host, pattern, psi)
}

pub fn emit_psi(psi: &PsiInstance) -> String {
    let (g, h) = (psi.host(), psi.pattern());
    let gi: BTreeMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    let hi: BTreeMap<Vertex, usize> = h.vertices().enumerate().map(|(i, v)| (v, i + 1)).collect();
    let mut out = format!("p psi {} {} {} {}\n", g.vertex_count(), g.edge_count(), h.vertex_count(), h.edge_count());
    for (u, v) in g.edges() {
        out.push_str(&format!("eg {} {}\n", gi[&u], gi[&v]));
    }
    for (x, y) in h.edges() {
        out.push_str(&format!("eh {} {}\n", hi[&x], hi[&y]));
    }
    for (u, x) in psi.psi() {
        out.push_str(&format!("map {} {}\n", gi[u], hi[x]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> (usize, usize, String) {
        match parse_dsn(text) {
            Err(Error::Parse { line, column, message }) => (line, column, message),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_file() {
        let f = parse_dsn("p dsn 1 0 0 0\n").unwrap();
        assert_eq!(f.instance.host().vertex_count(), 1);
        assert_eq!(emit_dsn(&f), "p dsn 1 0 0 0\n");
    }

    #[test]
    fn round_trip_with_metadata() {
        let text = "c genus 0\nc threshold 3\np dsn 3 3 2 1\na 1 2 1/1\na 1 3 5/1\na 2 3 3/2\nr 1 3\n";
        let f = parse_dsn(text).unwrap();
        assert_eq!(f.genus(), Some(0));
        assert_eq!(f.meta("threshold"), Some("3"));
        assert_eq!(emit_dsn(&f), text);
        assert_eq!(f.instance.host().weight(1, 2), Some(Weight::new(3, 2)));
    }

    #[test]
    fn integer_weights_are_accepted() {
        let f = parse_dsn("p dsn 2 1 2 1\na 1 2 4\nr 1 2\n").unwrap();
        assert_eq!(f.instance.host().weight(0, 1), Some(Weight::integer(4)));
        assert!(emit_dsn(&f).contains("a 1 2 4/1"));
    }

    #[test]
    fn named_errors_with_positions() {
        let (l, c, m) = parse_err("p dsn 2 2 2 1\na 1 2 1/1\na 1 2 1/1\nr 1 2\n");
        assert_eq!((l, c), (3, 1));
        assert!(m.contains("duplicate arc"));
        let (l, c, m) = parse_err("p dsn 2 1 2 1\na 1 2 0/1\nr 1 2\n");
        assert_eq!((l, c), (2, 7));
        assert!(m.contains("nonpositive weight"));
        let (l, c, m) = parse_err("p dsn 2 1 2 1\na 1 2 1/1\nr 1 3\n");
        assert_eq!((l, c), (3, 5));
        assert!(m.contains("request endpoint"));
        let (l, _, m) = parse_err("p dsn 2 2 2 1\na 1 2 1/1\nr 1 2\n");
        assert_eq!(l, 3);
        assert!(m.contains("declares 2 arcs"));
        let (_, _, m) = parse_err("a 1 2 1/1\n");
        assert!(m.contains("before"));
        let (_, c, m) = parse_err("p dsn 2 1 2 1\na 1 x 1/1\n");
        assert_eq!(c, 5);
        assert!(m.contains("integer"));
        let (_, _, m) = parse_err("p dsn 2 1 2 1\na 1 2 1/0\n");
        assert!(m.contains("zero denominator"));
        let (_, _, m) = parse_err("");
        assert!(m.contains("missing"));
    }

    #[test]
    fn psi_round_trip() {
        let text = "p psi 3 2 2 1\neg 1 2\neg 2 3\neh 1 2\nmap 1 1\nmap 2 2\nmap 3 1\n";
        let psi = parse_psi(text).unwrap();
        assert_eq!(psi.k(), 2);
        assert_eq!(emit_psi(&psi), text);
        assert!(parse_psi("p psi 2 0 1 0\nmap 1 1\n").is_err());
        assert!(matches!(
            parse_psi("p psi 2 0 1 0\nmap 1 1\nmap 1 1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }
}
