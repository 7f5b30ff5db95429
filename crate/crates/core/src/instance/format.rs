use std::fmt::Write as _;

use super::{Graph, Instance, Query, Thresholds};
use crate::error::{GraphError, ParseError};

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Clamp `k` and `l` to `n` instead of rejecting queries that exceed it.
    pub force: bool,
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    parse_instance_with(text, ParseOptions::default())
}

pub fn parse_instance_with(text: &str, opts: ParseOptions) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut thr: Vec<Option<usize>> = Vec::new();
    let mut graph = Graph::empty(0);
    let mut query: Option<Query> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some(&tag) = tokens.first() else {
            continue;
        };

        let Some((n, _)) = header else {
            if tag != "p" {
                return Err(ParseError::MissingHeader);
            }
            let (n, m) = parse_header(&tokens).ok_or(ParseError::MalformedHeader { line })?;
            header = Some((n, m));
            thr = vec![None; n];
            graph = Graph::empty(n);
            continue;
        };

        match tag {
            "p" => return Err(ParseError::DuplicateHeader { line }),
            "t" => {
                let [v, t] = ints::<2>(&tokens, line, 't')?;
                let vertex = vertex_id(v, n).ok_or(ParseError::UnknownVertex { line, vertex: v })?;
                if t < 0 {
                    return Err(ParseError::NegativeThreshold { line });
                }
                if thr[vertex].is_some() {
                    return Err(ParseError::DuplicateThreshold { line, vertex: v as usize });
                }
                thr[vertex] = Some(t as usize);
            }
            "e" => {
                let [u, v] = ints::<2>(&tokens, line, 'e')?;
                let a = vertex_id(u, n).ok_or(ParseError::UnknownEndpoint { line, vertex: u })?;
                let b = vertex_id(v, n).ok_or(ParseError::UnknownEndpoint { line, vertex: v })?;
                graph.add_edge(a, b).map_err(|e| match e {
                    GraphError::SelfLoop(_) => ParseError::SelfLoop { line },
                    GraphError::DuplicateEdge(..) => ParseError::DuplicateEdge { line },
                    GraphError::VertexOutOfRange { vertex, .. } => ParseError::UnknownEndpoint {
                        line,
                        vertex: vertex as i64 + 1,
                    },
                })?;
            }
            "q" => {
                if query.is_some() {
                    return Err(ParseError::DuplicateQuery { line });
                }
                let [k, l] = ints::<2>(&tokens, line, 'q')?;
                let k = query_value("k", k, n, line, opts)?;
                let l = query_value("l", l, n, line, opts)?;
                query = Some(Query { k, l });
            }
            other => {
                return Err(ParseError::UnknownLineType {
                    line,
                    tag: other.to_string(),
                })
            }
        }
    }

    let (_, m) = header.ok_or(ParseError::MissingHeader)?;
    if graph.m() != m {
        return Err(ParseError::EdgeCountMismatch {
            expected: m,
            found: graph.m(),
        });
    }
    let thr = thr
        .into_iter()
        .enumerate()
        .map(|(v, t)| t.ok_or(ParseError::MissingThreshold { vertex: v + 1 }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Instance {
        graph,
        thresholds: Thresholds::new(thr),
        query,
    })
}

fn parse_header(tokens: &[&str]) -> Option<(usize, usize)> {
    match tokens {
        ["p", "tss", n, m] => Some((n.parse().ok()?, m.parse().ok()?)),
        _ => None,
    }
}

fn ints<const N: usize>(tokens: &[&str], line: usize, tag: char) -> Result<[i64; N], ParseError> {
    let bad = ParseError::MalformedLine { line, tag };
    if tokens.len() != N + 1 {
        return Err(bad);
    }
    let mut out = [0i64; N];
    for (slot, tok) in out.iter_mut().zip(&tokens[1..]) {
        *slot = tok.parse().map_err(|_| bad.clone())?;
    }
    Ok(out)
}

fn vertex_id(v: i64, n: usize) -> Option<usize> {
    (1..=n as i64).contains(&v).then(|| v as usize - 1)
}

fn query_value(
    name: &'static str,
    value: i64,
    n: usize,
    line: usize,
    opts: ParseOptions,
) -> Result<usize, ParseError> {
    let err = ParseError::QueryOutOfRange { line, name, value, n };
    if value < 0 {
        return Err(err);
    }
    let value = value as usize;
    match (value > n, opts.force) {
        (false, _) => Ok(value),
        (true, true) => Ok(n),
        (true, false) => Err(err),
    }
}

/// Canonical text form: header, thresholds by vertex, edges ascending with
/// `u < v`, then the query if present.
pub fn write_instance(inst: &Instance) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    writeln!(out, "p tss {} {}", g.n(), g.m()).unwrap();
    for v in 0..g.n() {
        writeln!(out, "t {} {}", v + 1, inst.thr(v)).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    if let Some(Query { k, l }) = inst.query {
        writeln!(out, "q {k} {l}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lines(parts: &[&str]) -> String {
        parts.join("\n")
    }

    #[test]
    fn smallest_file() {
        let inst = parse_instance(&lines(&["p tss 1 0", "t 1 0"])).unwrap();
        assert_eq!(inst.n(), 1);
        assert_eq!(inst.thresholds.as_slice(), &[0]);
        assert_eq!(inst.query, None);
        assert_eq!(write_instance(&inst), "p tss 1 0\nt 1 0\n");
    }

    #[test]
    fn path_with_query() {
        let text = lines(&["p tss 3 2", "t 1 1", "t 2 2", "t 3 1", "e 1 2", "e 2 3", "q 1 3"]);
        let inst = parse_instance(&text).unwrap();
        assert_eq!(inst.graph, Graph::path(3));
        assert_eq!(inst.thresholds.as_slice(), &[1, 2, 1]);
        assert_eq!(inst.query, Some(Query { k: 1, l: 3 }));
        assert_eq!(parse_instance(&write_instance(&inst)).unwrap(), inst);
    }

    #[test]
    fn comments_and_free_order() {
        let text = "# leading comment\n\np tss 2 1 # header\ne 2 1\nt 2 1\nt 1 0\n";
        let inst = parse_instance(text).unwrap();
        assert!(inst.graph.has_edge(0, 1));
        assert_eq!(inst.thresholds.as_slice(), &[0, 1]);
    }

    #[test]
    fn duplicate_edge_names_line() {
        let text = lines(&["p tss 2 1", "t 1 0", "t 2 0", "e 1 2", "e 1 2"]);
        let err = parse_instance(&text).unwrap_err();
        assert_eq!(err, ParseError::DuplicateEdge { line: 5 });
        assert_eq!(err.to_string(), "duplicate edge at line 5");
    }

    #[test]
    fn distinct_diagnostics() {
        let cases: Vec<(String, ParseError)> = vec![
            ("t 1 0".into(), ParseError::MissingHeader),
            ("p tss x 0".into(), ParseError::MalformedHeader { line: 1 }),
            ("p tss 1 0\nt 2 0".into(), ParseError::UnknownVertex { line: 2, vertex: 2 }),
            ("p tss 1 0\nt 1 -1".into(), ParseError::NegativeThreshold { line: 2 }),
            ("p tss 1 1\nt 1 0\ne 1 1".into(), ParseError::SelfLoop { line: 3 }),
            (
                "p tss 1 0\nt 1 0\nq 2 0".into(),
                ParseError::QueryOutOfRange { line: 3, name: "k", value: 2, n: 1 },
            ),
            (
                "p tss 1 0\nt 1 0\nq 0 5".into(),
                ParseError::QueryOutOfRange { line: 3, name: "l", value: 5, n: 1 },
            ),
            ("p tss 2 0\nt 1 0".into(), ParseError::MissingThreshold { vertex: 2 }),
            (
                "p tss 2 1\nt 1 0\nt 2 0".into(),
                ParseError::EdgeCountMismatch { expected: 1, found: 0 },
            ),
            ("p tss 1 0\nt 1 0\nt 1 1".into(), ParseError::DuplicateThreshold { line: 3, vertex: 1 }),
            ("p tss 1 0\np tss 1 0".into(), ParseError::DuplicateHeader { line: 2 }),
            ("p tss 1 0\nt 1".into(), ParseError::MalformedLine { line: 2, tag: 't' }),
            (
                "p tss 1 0\nx 1".into(),
                ParseError::UnknownLineType { line: 2, tag: "x".into() },
            ),
        ];
        for (text, expected) in cases {
            assert_eq!(parse_instance(&text).unwrap_err(), expected, "input {text:?}");
        }
    }

    #[test]
    fn force_clamps_query() {
        let text = "p tss 2 0\nt 1 0\nt 2 0\nq 5 9\n";
        let inst = parse_instance_with(text, ParseOptions { force: true }).unwrap();
        assert_eq!(inst.query, Some(Query { k: 2, l: 2 }));
        assert!(parse_instance_with("p tss 1 0\nt 1 0\nq -1 0", ParseOptions { force: true }).is_err());
    }
}
