//! Height-one identities `f(x_..) ≈ g(x_..)` checked over all valuations.

use std::fmt;

use super::table::FunctionTable;
use crate::combin::odometer_next;
use crate::{Error, Result, Value};

/// `symbol(x_{args[0]}, x_{args[1]}, ...)` with 0-based variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub symbol: String,
    pub args: Vec<usize>,
}

impl Term {
    pub fn new(symbol: &str, args: &[usize]) -> Self {
        Term {
            symbol: symbol.to_string(),
            args: args.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub lhs: Term,
    pub rhs: Term,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySet {
    pub name: String,
    pub vars: usize,
    pub identities: Vec<Identity>,
}

const XYZ: [&str; 3] = ["x", "y", "z"];

impl IdentitySet {
    /// `o(x,x,y,y,y,x) ≈ o(x,y,x,y,x,y) ≈ o(y,x,x,x,y,y)` as three pairwise
    /// identities.
    pub fn olsak() -> Self {
        let r1 = Term::new("o", &[0, 0, 1, 1, 1, 0]);
        let r2 = Term::new("o", &[0, 1, 0, 1, 0, 1]);
        let r3 = Term::new("o", &[1, 0, 0, 0, 1, 1]);
        IdentitySet {
            name: "olsak".into(),
            vars: 2,
            identities: vec![
                Identity { lhs: r1.clone(), rhs: r2.clone() },
                Identity { lhs: r2, rhs: r3.clone() },
                Identity { lhs: r1, rhs: r3 },
            ],
        }
    }

    /// `s(x,y,x,z,y,z) ≈ s(y,x,z,x,z,y)`
    pub fn siggers() -> Self {
        IdentitySet {
            name: "siggers".into(),
            vars: 3,
            identities: vec![Identity {
                lhs: Term::new("s", &[0, 1, 0, 2, 1, 2]),
                rhs: Term::new("s", &[1, 0, 2, 0, 2, 1]),
            }],
        }
    }

    /// Loop condition of a graph on `0..vertices`: each edge `(u,v)`
    /// contributes the argument pair `(x_u, x_v)` on the left and
    /// `(x_v, x_u)` on the right. For the triangle with edges
    /// `(1,2),(1,3),(2,3)` this is the Siggers condition.
    pub fn gloop(vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::InvalidParams(format!(
                "edge ({},{}) outside vertex range",
                u + 1,
                v + 1
            )));
        }
        let lhs: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let rhs: Vec<usize> = edges.iter().flat_map(|&(u, v)| [v, u]).collect();
        Ok(IdentitySet {
            name: "gloop".into(),
            vars: vertices,
            identities: vec![Identity {
                lhs: Term::new("f", &lhs),
                rhs: Term::new("f", &rhs),
            }],
        })
    }

    pub fn symbols(&self) -> Vec<(&str, usize)> {
        let mut out: Vec<(&str, usize)> = Vec::new();
        for id in &self.identities {
            for t in [&id.lhs, &id.rhs] {
                if !out.iter().any(|(s, _)| *s == t.symbol) {
                    out.push((&t.symbol, t.args.len()));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub identity: usize,
    pub valuation: Vec<Value>,
    pub lhs: Value,
    pub rhs: Value,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self
            .valuation
            .iter()
            .enumerate()
            .map(|(i, v)| match XYZ.get(i) {
                Some(n) if self.valuation.len() <= 3 => format!("{n}={v}"),
                _ => format!("x{}={v}", i + 1),
            })
            .collect();
        write!(
            f,
            "identity {} at {}: {} vs {}",
            self.identity + 1,
            vals.join(","),
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub valuations: u64,
    pub violation: Option<Violation>,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks every identity at every valuation in `[d]^vars`, stopping at the
/// first violation in lexicographic order.
pub fn check_identities(
    assignment: &[(&str, &FunctionTable)],
    set: &IdentitySet,
    d: usize,
) -> Result<IdentityCheck> {
    let lookup = |sym: &str, arity: usize| -> Result<&FunctionTable> {
        let (_, t) = assignment
            .iter()
            .find(|(s, _)| *s == sym)
            .ok_or_else(|| Error::InvalidParams(format!("no table for symbol `{sym}`")))?;
        if t.arity() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: t.arity(),
            });
        }
        Ok(t)
    };
    let mut resolved = Vec::with_capacity(set.identities.len());
    for id in &set.identities {
        if id.lhs.args.iter().chain(&id.rhs.args).any(|&v| v >= set.vars) {
            return Err(Error::InvalidParams("identity uses an undeclared variable".into()));
        }
        resolved.push((
            lookup(&id.lhs.symbol, id.lhs.args.len())?,
            lookup(&id.rhs.symbol, id.rhs.args.len())?,
        ));
    }
    let radix = vec![d; set.vars];
    let mut digits = vec![0usize; set.vars];
    let mut valuations = 0u64;
    let mut buf_l = Vec::new();
    let mut buf_r = Vec::new();
    loop {
        valuations += 1;
        let val: Vec<Value> = digits.iter().map(|&x| (x + 1) as Value).collect();
        for (i, (id, (tl, tr))) in set.identities.iter().zip(&resolved).enumerate() {
            buf_l.clear();
            buf_l.extend(id.lhs.args.iter().map(|&a| val[a]));
            buf_r.clear();
            buf_r.extend(id.rhs.args.iter().map(|&a| val[a]));
            let (l, r) = (tl.eval(&buf_l), tr.eval(&buf_r));
            if l != r {
                return Ok(IdentityCheck {
                    valuations,
                    violation: Some(Violation {
                        identity: i,
                        valuation: val,
                        lhs: l,
                        rhs: r,
                    }),
                });
            }
        }
        if !odometer_next(&mut digits, &radix) {
            break;
        }
    }
    Ok(IdentityCheck {
        valuations,
        violation: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymorph::table::DEFAULT_TABLE_BUDGET;

    #[test]
    fn triangle_loop_is_siggers() {
        let g = IdentitySet::gloop(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.identities[0].lhs.args, IdentitySet::siggers().identities[0].lhs.args);
        assert_eq!(g.identities[0].rhs.args, IdentitySet::siggers().identities[0].rhs.args);
    }

    #[test]
    fn majority_fails_siggers() {
        // 6-ary function reading only the first three arguments
        let f = FunctionTable::from_fn(2, 6, DEFAULT_TABLE_BUDGET, |x| {
            if x[..3].iter().filter(|&&v| v == 1).count() >= 2 { 1 } else { 2 }
        })
        .unwrap();
        let c = check_identities(&[("s", &f)], &IdentitySet::siggers(), 2).unwrap();
        let v = c.violation.expect("majority is not Siggers");
        assert_eq!(v.valuation, vec![1, 2, 2]);
    }

    #[test]
    fn arity_mismatch() {
        let f = FunctionTable::majority3();
        assert!(matches!(
            check_identities(&[("s", &f)], &IdentitySet::siggers(), 2),
            Err(Error::ArityMismatch { .. })
        ));
    }
}
