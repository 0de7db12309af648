//! The line-based `.setsat` format.
//!
//! ```text
//! c optional comments anywhere
//! p setsat <d> <s> <n> <m> <k>
//! 1:1,2 2:2,3 2:1,3
//! ```

use std::fmt::Write as _;

use super::{Clause, Instance, Literal, ValueSet};
use crate::{Error, Result, Value, MAX_DOMAIN};

pub(crate) fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| Error::parse(line, format!("invalid {what} `{tok}`")))
}

/// Yields `(line_number, trimmed_line)` for non-blank, non-comment lines.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header `p setsat`"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 7 || toks[0] != "p" || toks[1] != "setsat" {
        return Err(Error::parse(
            hline,
            "malformed header, expected `p setsat <d> <s> <n> <m> <k>`",
        ));
    }
    let d = parse_usize(toks[2], hline, "d")?;
    let s = parse_usize(toks[3], hline, "s")?;
    let n = parse_usize(toks[4], hline, "n")?;
    let m = parse_usize(toks[5], hline, "m")?;
    let k = parse_usize(toks[6], hline, "k")?;
    if d < 2 || d > MAX_DOMAIN {
        return Err(Error::parse(hline, format!("domain size {d} outside 2..={MAX_DOMAIN}")));
    }
    if s < 1 || s >= d {
        return Err(Error::parse(hline, format!("need 1 <= s < d, got s={s}")));
    }
    if k < 1 {
        return Err(Error::parse(hline, "clause width must be >= 1"));
    }

    let mut clauses = Vec::with_capacity(m);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        if line.starts_with('p') {
            return Err(Error::parse(ln, "duplicate header"));
        }
        let mut lits = Vec::with_capacity(k);
        for tok in line.split_whitespace() {
            lits.push(parse_literal(tok, ln, d, s, n)?);
        }
        if lits.len() != k {
            return Err(Error::parse(
                ln,
                format!("clause width {} ≠ k={k}", lits.len()),
            ));
        }
        clauses.push(Clause::new(lits));
        if clauses.len() > m {
            return Err(Error::parse(ln, format!("more than m={m} clauses")));
        }
    }
    if clauses.len() != m {
        return Err(Error::parse(
            last_line,
            format!("expected m={m} clauses, found {}", clauses.len()),
        ));
    }
    Instance::new(d, s, k, n, clauses).map_err(|e| Error::parse(hline, e.to_string()))
}

fn parse_literal(tok: &str, ln: usize, d: usize, s: usize, n: usize) -> Result<Literal> {
    let (var, vals) = tok
        .split_once(':')
        .ok_or_else(|| Error::parse(ln, format!("literal `{tok}` lacks `VAR:values`")))?;
    let var = parse_usize(var, ln, "variable")?;
    if var < 1 || var > n {
        return Err(Error::parse(ln, format!("variable {var} outside 1..={n}")));
    }
    let mut values: Vec<Value> = Vec::with_capacity(s);
    for v in vals.split(',') {
        let v = parse_usize(v, ln, "value")?;
        if v < 1 || v > d {
            return Err(Error::parse(ln, format!("value {v} outside 1..={d}")));
        }
        if let Some(&prev) = values.last() {
            if v as Value <= prev {
                return Err(Error::parse(
                    ln,
                    format!("literal values must be strictly ascending in `{tok}`"),
                ));
            }
        }
        values.push(v as Value);
    }
    if values.len() != s {
        return Err(Error::parse(
            ln,
            format!("literal set size {} ≠ s={s}", values.len()),
        ));
    }
    Ok(Literal::new(var - 1, ValueSet::from_values(values)))
}

pub fn serialize_instance(inst: &Instance) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "p setsat {} {} {} {} {}",
        inst.d(),
        inst.s(),
        inst.num_vars(),
        inst.num_clauses(),
        inst.k()
    );
    for c in inst.clauses() {
        let mut first = true;
        for l in &c.literals {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{}:", l.var + 1);
            let vals: Vec<String> = l.set.iter().map(|v| v.to_string()).collect();
            out.push_str(&vals.join(","));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "p setsat 3 2 2 1 3\n1:1,2 2:2,3 2:1,3\n";

    #[test]
    fn parses_example() {
        let inst = parse_instance(EXAMPLE).unwrap();
        assert_eq!((inst.d(), inst.s(), inst.num_vars(), inst.k()), (3, 2, 2, 3));
        assert_eq!(inst.num_clauses(), 1);
        assert_eq!(serialize_instance(&inst), EXAMPLE);
    }

    #[test]
    fn reports_wrong_set_size() {
        let err = parse_instance("p setsat 3 2 2 1 3\n1:1 2:2,3 2:1,3\n").unwrap_err();
        assert_eq!(err.to_string(), "literal set size 1 ≠ s=2 at line 2");
    }

    #[test]
    fn error_cases_carry_line_numbers() {
        let cases = [
            ("p setsat 3 2\n", 1),
            ("p setsat 3 2 2 1 3\n1:1,4 2:2,3 2:1,3\n", 2),
            ("p setsat 3 2 2 1 3\n3:1,2 2:2,3 2:1,3\n", 2),
            ("c hi\np setsat 3 2 2 1 3\n\n1:1,2 2:2,3\n", 4),
            ("p setsat 3 2 2 2 3\n1:1,2 2:2,3 2:1,3\n", 2),
            ("p setsat 3 2 2 1 3\n1:2,1 2:2,3 2:1,3\n", 2),
            ("p setsat 3 2 2 1 3\n1-2 2:2,3 2:1,3\n", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse_instance(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn empty_instance_is_header_only() {
        let inst = Instance::empty(3, 2, 3, 4).unwrap();
        assert_eq!(serialize_instance(&inst), "p setsat 3 2 4 0 3\n");
        assert_eq!(parse_instance("p setsat 3 2 4 0 3\n").unwrap(), inst);
    }

    #[test]
    fn comments_anywhere() {
        let text = "c head\np setsat 3 2 2 1 3\nc mid\n1:1,2 2:2,3 2:1,3\nc tail\n";
        assert_eq!(serialize_instance(&parse_instance(text).unwrap()), EXAMPLE);
    }
}
