//! DIMACS `.cnf`, edge-list `.graph` and hyperedge-list `.hgr`. Vertices
//! are 1-based in files.
//!
//! ```text
//! p graph 3 3
//! 1 2
//! 2 3
//! e 1 3
//! ```

use super::{Cnf, Graph, Hypergraph};
use crate::model::format::{content_lines, parse_usize};
use crate::{Error, Result};

const MAX_PARSE_SIZE: usize = 1 << 24;

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    kind: &str,
    fields: usize,
) -> Result<(usize, Vec<usize>)> {
    let (ln, h) = lines.next().ok_or_else(|| Error::parse(0, format!("missing `p {kind}` header")))?;
    let toks: Vec<&str> = h.split_whitespace().collect();
    if toks.len() != fields + 2 || toks[0] != "p" || toks[1] != kind {
        return Err(Error::parse(ln, format!("expected `p {kind}` header with {fields} numbers")));
    }
    let nums = toks[2..]
        .iter()
        .map(|t| {
            let v = parse_usize(t, ln, "header field")?;
            if v > MAX_PARSE_SIZE {
                return Err(Error::parse(ln, format!("header field {v} is too large")));
            }
            Ok(v)
        })
        .collect::<Result<_>>()?;
    Ok((ln, nums))
}

fn vertex(tok: &str, line: usize, n: usize) -> Result<usize> {
    let v = parse_usize(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn count_check(found: usize, declared: usize, what: &str, line: usize) -> Result<()> {
    if found != declared {
        return Err(Error::parse(line, format!("header declares {declared} {what}, found {found}")));
    }
    Ok(())
}

/// DIMACS CNF. Clauses end with `0` and may span lines; `%` ends the input.
pub fn parse_cnf(text: &str) -> Result<Cnf> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "cnf", 2)?;
    let (n, m) = (h[0], h[1]);
    let mut clauses = Vec::new();
    let mut cur = Vec::new();
    let mut last = hl;
    for (ln, line) in lines {
        if line.starts_with('%') {
            break;
        }
        last = ln;
        for tok in line.split_whitespace() {
            let l: i64 = tok.parse().map_err(|_| Error::parse(ln, format!("invalid literal `{tok}`")))?;
            if l == 0 {
                clauses.push(std::mem::take(&mut cur));
            } else if l.unsigned_abs() as usize > n {
                return Err(Error::parse(ln, format!("literal {l} outside 1..={n}")));
            } else {
                cur.push(l);
            }
        }
    }
    if !cur.is_empty() {
        return Err(Error::parse(last, "last clause is not terminated by 0"));
    }
    count_check(clauses.len(), m, "clauses", hl)?;
    Cnf::new(n, clauses).map_err(|e| Error::parse(hl, e.to_string()))
}

pub fn serialize_cnf(f: &Cnf) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars, f.clauses.len());
    for c in &f.clauses {
        for l in c {
            out += &format!("{l} ");
        }
        out += "0\n";
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "graph", 2)?;
    let (n, m) = (h[0], h[1]);
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let toks = if toks.first() == Some(&"e") { &toks[1..] } else { &toks[..] };
        if toks.len() != 2 {
            return Err(Error::parse(ln, "expected an edge `<u> <v>`"));
        }
        let (u, v) = (vertex(toks[0], ln, n)?, vertex(toks[1], ln, n)?);
        if u == v {
            return Err(Error::parse(ln, "self-loop"));
        }
        edges.push((u, v));
    }
    count_check(edges.len(), m, "edges", hl)?;
    Graph::new(n, edges)
}

pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("p graph {} {}\n", g.n, g.edges.len());
    for (u, v) in &g.edges {
        out += &format!("{} {}\n", u + 1, v + 1);
    }
    out
}

pub fn parse_hgr(text: &str) -> Result<Hypergraph> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "hgr", 3)?;
    let (n, m, size) = (h[0], h[1], h[2]);
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        let toks = if toks.first() == Some(&"e") { &toks[1..] } else { &toks[..] };
        if toks.len() != size {
            return Err(Error::parse(ln, format!("expected {size} vertices, found {}", toks.len())));
        }
        let e = toks.iter().map(|t| vertex(t, ln, n)).collect::<Result<Vec<_>>>()?;
        let mut sorted = e.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != e.len() {
            return Err(Error::parse(ln, "repeated vertex in hyperedge"));
        }
        edges.push(e);
    }
    count_check(edges.len(), m, "hyperedges", hl)?;
    Hypergraph::new(n, edges)
}

pub fn serialize_hgr(h: &Hypergraph) -> String {
    let size = h.edges.first().map_or(0, |e| e.len());
    let mut out = format!("p hgr {} {} {}\n", h.n, h.edges.len(), size);
    for e in &h.edges {
        let vs: Vec<String> = e.iter().map(|v| (v + 1).to_string()).collect();
        out += &vs.join(" ");
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let f = parse_cnf("c hi\np cnf 3 2\n1 -2 3 0\n-1\n 2 -3 0\n").unwrap();
        assert_eq!(f.clauses, vec![vec![1, -2, 3], vec![-1, 2, -3]]);
        assert_eq!(parse_cnf(&serialize_cnf(&f)).unwrap(), f);
        let g = parse_graph("p graph 3 3\n1 2\ne 1 3\n2 3\n").unwrap();
        assert_eq!(g, Graph::complete(3));
        assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        let h = parse_hgr("p hgr 6 1 6\n1 2 3 4 5 6\n").unwrap();
        assert_eq!(h.edges, vec![vec![0, 1, 2, 3, 4, 5]]);
        assert_eq!(parse_hgr(&serialize_hgr(&h)).unwrap(), h);
    }

    #[test]
    fn errors_carry_lines() {
        let cnf = [("p cnf 2 1\n1 3 0\n", 2), ("p cnf 2 2\n1 2 0\n", 1), ("p cnf 2 1\n1 2\n", 2), ("", 0)];
        for (t, line) in cnf {
            assert!(matches!(parse_cnf(t), Err(Error::Parse { line: l, .. }) if l == line), "{t:?}");
        }
        let graph = [("p graph 2 1\n1 1\n", 2), ("p graph 2 1\n1 2 3\n", 2), ("p grph 2 1\n", 1)];
        for (t, line) in graph {
            assert!(matches!(parse_graph(t), Err(Error::Parse { line: l, .. }) if l == line), "{t:?}");
        }
        let hgr = [("p hgr 4 1 3\n1 2\n", 2), ("p hgr 4 1 2\n1 1\n", 2), ("p hgr 4 1 2\n1 5\n", 2)];
        for (t, line) in hgr {
            assert!(matches!(parse_hgr(t), Err(Error::Parse { line: l, .. }) if l == line), "{t:?}");
        }
    }
}
