//! The `.fun` format.
//!
//! ```text
//! c comment
//! p fun 2 3
//! v 1 1 1 2 1 2 2 2
//! ```
//!
//! Values may be spread over several `v` lines. Implicit tables are written
//! as `p funq <d> <rule>` with rule `qm:<m>`, `olsak`, `siggers` or
//! `family:<spec>`.

use super::family::SmugToPolymFamily;
use super::table::{Body, FunctionTable, Rule, RuleKind};
use crate::combin::pow_sat;
use crate::model::format::{content_lines, parse_usize};
use crate::{Error, Result, Value, MAX_DOMAIN};

/// Largest dense table accepted by the parser.
const MAX_PARSE_ENTRIES: u128 = 1 << 26;

pub fn parse_function(text: &str) -> Result<FunctionTable> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(0, "missing `p fun` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    match toks.as_slice() {
        ["p", "fun", d, m] => {
            let d = parse_domain(d, hl)?;
            let m = parse_usize(m, hl, "arity")?;
            let len = pow_sat(d as u128, m as u32);
            if m > 64 || len > MAX_PARSE_ENTRIES {
                return Err(Error::parse(hl, format!("table of {d}^{m} entries is too large")));
            }
            let len = len as usize;
            let mut values: Vec<Value> = Vec::with_capacity(len);
            let mut last = hl;
            for (ln, line) in lines {
                last = ln;
                let mut toks = line.split_whitespace();
                if toks.next() != Some("v") {
                    return Err(Error::parse(ln, "expected a `v` line"));
                }
                for tok in toks {
                    let v = parse_usize(tok, ln, "value")?;
                    if v == 0 || v > d {
                        return Err(Error::parse(ln, format!("value {v} outside 1..={d}")));
                    }
                    if values.len() == len {
                        return Err(Error::parse(ln, format!("more than {len} values")));
                    }
                    values.push(v as Value);
                }
            }
            if values.len() != len {
                return Err(Error::parse(last, format!("expected {len} values, found {}", values.len())));
            }
            FunctionTable::dense(d, m, values).map_err(|e| Error::parse(hl, e.to_string()))
        }
        ["p", "funq", d, rule] => {
            let d = parse_domain(d, hl)?;
            if let Some((ln, _)) = lines.next() {
                return Err(Error::parse(ln, "unexpected line after `p funq` header"));
            }
            let (kind, family) = parse_rule(rule).map_err(|e| Error::parse(hl, e.to_string()))?;
            family
                .check_condition1(d - 1)
                .map_err(|e| Error::parse(hl, e.to_string()))?;
            FunctionTable::implicit(d, family.ground(), Rule { kind, family })
                .map_err(|e| Error::parse(hl, e.to_string()))
        }
        _ => Err(Error::parse(hl, "expected `p fun <d> <m>` or `p funq <d> <rule>`")),
    }
}

fn parse_domain(tok: &str, line: usize) -> Result<usize> {
    let d = parse_usize(tok, line, "domain size")?;
    if !(2..=MAX_DOMAIN).contains(&d) {
        return Err(Error::parse(line, format!("domain size {d} outside 2..={MAX_DOMAIN}")));
    }
    Ok(d)
}

fn parse_rule(rule: &str) -> Result<(RuleKind, SmugToPolymFamily)> {
    match rule {
        "olsak" => Ok((RuleKind::Olsak, SmugToPolymFamily::olsak())),
        "siggers" => Ok((RuleKind::Siggers, SmugToPolymFamily::siggers())),
        _ => {
            if let Some(m) = rule.strip_prefix("qm:") {
                let m: usize = m
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("invalid qm size `{m}`")))?;
                Ok((RuleKind::Qm(m), SmugToPolymFamily::qm(m)?))
            } else if let Some(spec) = rule.strip_prefix("family:") {
                Ok((RuleKind::Family, SmugToPolymFamily::from_spec(spec)?))
            } else {
                Err(Error::InvalidParams(format!("unknown rule `{rule}`")))
            }
        }
    }
}

pub fn serialize_function(f: &FunctionTable) -> String {
    match f.body() {
        Body::Dense(values) => {
            let vals: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            format!("p fun {} {}\nv {}\n", f.d(), f.arity(), vals.join(" "))
        }
        Body::Implicit(rule) => {
            let r = match rule.kind {
                RuleKind::Qm(m) => format!("qm:{m}"),
                RuleKind::Olsak => "olsak".into(),
                RuleKind::Siggers => "siggers".into(),
                RuleKind::Family => format!("family:{}", rule.family.to_spec()),
            };
            format!("p funq {} {r}\n", f.d())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::SetSatParams;
    use crate::polymorph::family::build_qm;

    #[test]
    fn dense_round_trip() {
        let f = FunctionTable::majority3();
        let text = serialize_function(&f);
        assert_eq!(text, "p fun 2 3\nv 1 1 1 2 1 2 2 2\n");
        assert_eq!(parse_function(&text).unwrap(), f);
        let split = "c maj\np fun 2 3\nv 1 1 1 2\n\nv 1 2 2 2\n";
        assert_eq!(parse_function(split).unwrap(), f);
    }

    #[test]
    fn implicit_round_trip() {
        let p = SetSatParams::new(3, 2, 1, 3, 5).unwrap();
        let (q6, _) = build_qm(6, &p).unwrap();
        let text = serialize_function(&q6);
        assert_eq!(text, "p funq 3 qm:6\n");
        let back = parse_function(&text).unwrap();
        assert_eq!(back, q6);
        let fam = parse_function("p funq 3 family:4:1,2;3,4|1").unwrap();
        assert_eq!(serialize_function(&fam), "p funq 3 family:4:1,2;3,4|1\n");
        assert_eq!(fam.eval(&[1, 1, 2, 2]), 1);
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            ("", 0),
            ("p fun 2 2\nv 1 2 3 1\n", 2),
            ("p fun 2 2\nv 1 2 1\n", 2),
            ("p fun 2 2\nv 1 2\nv 1 2 1\n", 3),
            ("c x\np fun 1 2\n", 2),
            ("p fun 2 2\nx 1 1 1 1\n", 2),
            ("p funq 3 qm:3\n", 1),
            ("p funq 3 bogus\n", 1),
            ("p funq 2 family:3:1,2\n", 1),
            ("p funq 3 olsak\nv 1\n", 2),
        ];
        for (text, line) in cases {
            match parse_function(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
