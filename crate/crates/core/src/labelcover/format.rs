//! Text formats `.blc`, `.llc` and `.bmc`. Variables, values and
//! coordinates are 1-based; layers are numbered from 0.
//!
//! ```text
//! p blc 2 1 1
//! e 1 1 2 1
//! ```

use std::collections::HashMap;

use super::instance::{BipartiteLC, LayerEdge, LayeredLC, LcEdge};
use super::minor::{BipartiteMinorCondition, MinorIdentity, Side, Symbol};
use crate::model::format::{content_lines, parse_usize};
use crate::polymorph::MinorMap;
use crate::{Error, Result};

/// Largest domain or layer size accepted by the parsers.
const MAX_PARSE_SIZE: usize = 1 << 20;

fn size(tok: &str, line: usize, what: &str) -> Result<usize> {
    let v = parse_usize(tok, line, what)?;
    if v > MAX_PARSE_SIZE {
        return Err(Error::parse(line, format!("{what} {v} is too large")));
    }
    Ok(v)
}

fn index(tok: &str, line: usize, what: &str, n: usize) -> Result<usize> {
    let v = parse_usize(tok, line, what)?;
    if v == 0 || v > n {
        return Err(Error::parse(line, format!("{what} {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

fn values(toks: &[&str], line: usize, m: usize, range: usize) -> Result<Vec<usize>> {
    if toks.len() != m {
        return Err(Error::parse(line, format!("expected {m} values, found {}", toks.len())));
    }
    toks.iter().map(|t| index(t, line, "value", range)).collect()
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    kind: &str,
) -> Result<(usize, Vec<&'a str>)> {
    let (ln, h) = lines.next().ok_or_else(|| Error::parse(0, format!("missing `p {kind}` header")))?;
    let toks: Vec<&str> = h.split_whitespace().collect();
    if toks.len() < 2 || toks[0] != "p" || toks[1] != kind {
        return Err(Error::parse(ln, format!("expected `p {kind} ...` header")));
    }
    Ok((ln, toks[2..].to_vec()))
}

pub fn parse_blc(text: &str) -> Result<BipartiteLC> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "blc")?;
    if h.len() != 3 {
        return Err(Error::parse(hl, "expected `p blc <m> <|Y|> <|Z|>`"));
    }
    let m = size(h[0], hl, "domain size")?;
    let ny = size(h[1], hl, "|Y|")?;
    let nz = size(h[2], hl, "|Z|")?;
    if m == 0 {
        return Err(Error::parse(hl, "domain size must be positive"));
    }
    let mut cs = Vec::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 || toks[0] != "e" {
            return Err(Error::parse(ln, "expected `e <y> <z> <values>`"));
        }
        let y = index(toks[1], ln, "y", ny)?;
        let z = index(toks[2], ln, "z", nz)?;
        cs.push(LcEdge { y, z, map: values(&toks[3..], ln, m, m)? });
    }
    BipartiteLC::new(m, ny, nz, cs).map_err(|e| Error::parse(hl, e.to_string()))
}

fn one_based(map: &[usize]) -> String {
    map.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn serialize_blc(b: &BipartiteLC) -> String {
    let mut out = format!("p blc {} {} {}\n", b.m(), b.ny(), b.nz());
    for c in b.constraints() {
        out += &format!("e {} {} {}\n", c.y + 1, c.z + 1, one_based(&c.map));
    }
    out
}

pub fn parse_llc(text: &str) -> Result<LayeredLC> {
    let mut lines = content_lines(text);
    let (hl, h) = header(&mut lines, "llc")?;
    if h.len() < 3 {
        return Err(Error::parse(hl, "expected `p llc <ell> <m> <|X_0|> .. <|X_ell|>`"));
    }
    let ell = size(h[0], hl, "ell")?;
    let m = size(h[1], hl, "domain size")?;
    if ell == 0 || m == 0 {
        return Err(Error::parse(hl, "ell and domain size must be positive"));
    }
    if h.len() != ell + 3 {
        return Err(Error::parse(hl, format!("expected {} layer sizes, found {}", ell + 1, h.len() - 2)));
    }
    let layers: Vec<usize> = h[2..].iter().map(|t| size(t, hl, "layer size")).collect::<Result<_>>()?;
    let mut cs = Vec::new();
    let mut seen = HashMap::new();
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 5 || toks[0] != "e" {
            return Err(Error::parse(ln, "expected `e <i> <x> <j> <y> <values>`"));
        }
        let i = parse_usize(toks[1], ln, "layer")?;
        let j = parse_usize(toks[3], ln, "layer")?;
        if i >= j || j > ell {
            return Err(Error::parse(ln, format!("layers must satisfy i < j <= {ell}, got {i} {j}")));
        }
        let x = index(toks[2], ln, "x", layers[i])?;
        let y = index(toks[4], ln, "y", layers[j])?;
        if seen.insert((i, x, j, y), ln).is_some() {
            return Err(Error::parse(ln, "parallel constraint"));
        }
        cs.push(LayerEdge { i, x, j, y, map: values(&toks[5..], ln, m, m)? });
    }
    LayeredLC::new(ell, m, layers, cs).map_err(|e| Error::parse(hl, e.to_string()))
}

pub fn serialize_llc(l: &LayeredLC) -> String {
    let sizes: Vec<String> = l.layers().iter().map(|n| n.to_string()).collect();
    let mut out = format!("p llc {} {} {}\n", l.ell(), l.m(), sizes.join(" "));
    for c in l.constraints() {
        out += &format!("e {} {} {} {} {}\n", c.i, c.x + 1, c.j, c.y + 1, one_based(&c.map));
    }
    out
}

pub fn parse_bmc(text: &str) -> Result<BipartiteMinorCondition> {
    let mut symbols: Vec<Symbol> = Vec::new();
    let mut by_name: HashMap<String, usize> = HashMap::new();
    let mut ids = Vec::new();
    for (ln, line) in content_lines(text) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["s", side, name, arity] => {
                let side = match *side {
                    "U" => Side::U,
                    "V" => Side::V,
                    other => return Err(Error::parse(ln, format!("side must be U or V, got `{other}`"))),
                };
                let arity = size(arity, ln, "arity")?;
                if arity == 0 {
                    return Err(Error::parse(ln, "arity must be positive"));
                }
                if by_name.insert(name.to_string(), symbols.len()).is_some() {
                    return Err(Error::parse(ln, format!("duplicate symbol `{name}`")));
                }
                symbols.push(Symbol { name: name.to_string(), side, arity });
            }
            ["i", f, g, rest @ ..] => {
                let lookup = |n: &str| {
                    by_name
                        .get(n)
                        .copied()
                        .ok_or_else(|| Error::parse(ln, format!("undeclared symbol `{n}`")))
                };
                let (fi, gi) = (lookup(f)?, lookup(g)?);
                if fi == gi {
                    return Err(Error::parse(ln, "identity from a symbol to itself"));
                }
                let (af, ag) = (symbols[fi].arity, symbols[gi].arity);
                let map = values(rest, ln, af, ag)?;
                let pi = MinorMap::new(map, ag).map_err(|e| Error::parse(ln, e.to_string()))?;
                ids.push(MinorIdentity { f: fi, g: gi, pi });
            }
            _ => return Err(Error::parse(ln, "expected `s <U|V> <name> <arity>` or `i <f> <g> <values>`")),
        }
    }
    BipartiteMinorCondition::new(symbols, ids).map_err(|e| Error::parse(0, e.to_string()))
}

pub fn serialize_bmc(s: &BipartiteMinorCondition) -> String {
    let mut out = String::new();
    for sym in s.symbols() {
        out += &format!("s {} {} {}\n", sym.side, sym.name, sym.arity);
    }
    for id in s.identities() {
        out += &format!(
            "i {} {} {}\n",
            s.symbols()[id.f].name,
            s.symbols()[id.g].name,
            one_based(id.pi.as_slice())
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelcover::instance::{build_layered, DEFAULT_LC_BUDGET};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (b, _) = BipartiteLC::random_biregular(3, 3, 2, 3, false, &mut rng).unwrap();
        let t = serialize_blc(&b);
        assert_eq!(parse_blc(&t).unwrap(), b);
        let l = build_layered(&b, 2, DEFAULT_LC_BUDGET).unwrap();
        let t = serialize_llc(&l);
        let back = parse_llc(&t).unwrap();
        assert_eq!(back, l.clone().without_provenance());
        assert_eq!(serialize_llc(&back), t);
        let q = BipartiteMinorCondition::qm(4).unwrap();
        let t = serialize_bmc(&q);
        assert!(t.starts_with("s V f 5\ns U g 5\ni f g 5 5 5 1 1\n"));
        assert_eq!(parse_bmc(&t).unwrap(), q);
    }

    #[test]
    fn errors_carry_lines() {
        let cases = [
            (parse_blc as fn(&str) -> Result<BipartiteLC>, "p blc 2 1 1\ne 1 1 3 1\n", 2),
            (parse_blc, "p blc 2 1 1\ne 2 1 1 1\n", 2),
            (parse_blc, "p blc 2 1 1\ne 1 1 1\n", 2),
            (parse_blc, "c x\np lbc 2 1 1\n", 2),
            (parse_blc, "", 0),
        ];
        for (parse, text, line) in cases {
            match parse(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let llc = [
            ("p llc 1 2 1\n", 1),
            ("p llc 1 2 1 1\ne 1 1 0 1 1 2\n", 2),
            ("p llc 1 2 1 1\ne 0 1 1 1 1 2\ne 0 1 1 1 2 2\n", 3),
            ("p llc 1 2 1 1\ne 0 2 1 1 1 2\n", 2),
        ];
        for (text, line) in llc {
            match parse_llc(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        let bmc = [
            ("s W f 2\n", 1),
            ("s V f 2\ni f g 1 1\n", 2),
            ("s V f 2\ns U g 2\ni f g 1 3\n", 3),
            ("s V f 2\ns U f 2\n", 2),
        ];
        for (text, line) in bmc {
            match parse_bmc(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }
}
