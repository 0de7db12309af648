use std::fmt;

use super::family::SmugToPolymFamily;
use crate::combin::{odometer_next, pow_sat};
use crate::{Error, Result, Value, MAX_DOMAIN};

/// Default limit on the number of entries of a dense table.
pub const DEFAULT_TABLE_BUDGET: u128 = 1 << 24;

/// Named constructor of an implicit table, kept for serialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    Qm(usize),
    Olsak,
    Siggers,
    Family,
}

/// Evaluation rule of an implicit table: value-class lookup in a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub kind: RuleKind,
    pub family: SmugToPolymFamily,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    /// `d^m` values, inputs in lexicographic order with the last coordinate
    /// varying fastest.
    Dense(Vec<Value>),
    Implicit(Rule),
}

/// An `m`-ary function `[d]^m -> [d]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    d: usize,
    arity: usize,
    body: Body,
}

impl FunctionTable {
    pub fn dense(d: usize, arity: usize, values: Vec<Value>) -> Result<Self> {
        if !(2..=MAX_DOMAIN).contains(&d) {
            return Err(Error::InvalidParams(format!("domain size {d} unsupported")));
        }
        let len = pow_sat(d as u128, arity as u32);
        if values.len() as u128 != len {
            return Err(Error::InvalidParams(format!(
                "dense table needs {len} values, got {}",
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v < 1 || v as usize > d) {
            return Err(Error::InvalidParams(format!("table value {v} outside 1..={d}")));
        }
        Ok(FunctionTable {
            d,
            arity,
            body: Body::Dense(values),
        })
    }

    pub fn implicit(d: usize, arity: usize, rule: Rule) -> Result<Self> {
        if rule.family.ground() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: rule.family.ground(),
            });
        }
        Ok(FunctionTable {
            d,
            arity,
            body: Body::Implicit(rule),
        })
    }

    /// Tabulates `f` over all inputs.
    pub fn from_fn(
        d: usize,
        arity: usize,
        budget: u128,
        mut f: impl FnMut(&[Value]) -> Value,
    ) -> Result<Self> {
        check_dense_budget(d, arity, budget)?;
        let mut values = Vec::with_capacity(pow_sat(d as u128, arity as u32) as usize);
        for_each_input(d, arity, |_, x| values.push(f(x)));
        Self::dense(d, arity, values)
    }

    /// Projection to 0-based coordinate `j`.
    pub fn dictator(d: usize, arity: usize, j: usize) -> Result<Self> {
        if j >= arity {
            return Err(Error::InvalidParams(format!(
                "dictator coordinate {} outside 1..={arity}",
                j + 1
            )));
        }
        Self::from_fn(d, arity, DEFAULT_TABLE_BUDGET, |x| x[j])
    }

    pub fn constant(d: usize, arity: usize, v: Value) -> Result<Self> {
        Self::from_fn(d, arity, DEFAULT_TABLE_BUDGET, |_| v)
    }

    /// Boolean majority of three.
    pub fn majority3() -> Self {
        Self::from_fn(2, 3, DEFAULT_TABLE_BUDGET, |x| {
            if x.iter().filter(|&&v| v == 1).count() >= 2 {
                1
            } else {
                2
            }
        })
        .expect("tiny table")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn body(&self) -> &Body {
        &self.body
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.body, Body::Dense(_))
    }

    pub fn values(&self) -> Option<&[Value]> {
        match &self.body {
            Body::Dense(v) => Some(v),
            Body::Implicit(_) => None,
        }
    }

    /// Values of a dense table, or [`Error::NotDense`].
    pub fn dense_values(&self) -> Result<&[Value]> {
        match &self.body {
            Body::Dense(v) => Ok(v),
            Body::Implicit(r) => Err(Error::NotDense(format!("{:?}", r.kind))),
        }
    }

    /// Index of an input in the dense order.
    #[inline]
    pub fn index_of(&self, input: &[Value]) -> usize {
        input
            .iter()
            .fold(0usize, |acc, &v| acc * self.d + (v as usize - 1))
    }

    #[inline]
    pub fn eval(&self, input: &[Value]) -> Value {
        debug_assert_eq!(input.len(), self.arity);
        match &self.body {
            Body::Dense(v) => v[self.index_of(input)],
            Body::Implicit(rule) => rule
                .family
                .evaluate(input)
                .expect("implicit family validated as total"),
        }
    }

    /// Materializes an implicit table.
    pub fn to_dense(&self, budget: u128) -> Result<FunctionTable> {
        match &self.body {
            Body::Dense(_) => Ok(self.clone()),
            Body::Implicit(_) => Self::from_fn(self.d, self.arity, budget, |x| self.eval(x)),
        }
    }

    /// Invariance under every permutation of the coordinates (dense only).
    pub fn is_symmetric(&self) -> Result<bool> {
        let vals = self.dense_values()?;
        let mut ok = true;
        let mut swapped = vec![0 as Value; self.arity];
        for_each_input(self.d, self.arity, |idx, x| {
            if !ok {
                return;
            }
            for i in 0..self.arity.saturating_sub(1) {
                if x[i] == x[i + 1] {
                    continue;
                }
                swapped.copy_from_slice(x);
                swapped.swap(i, i + 1);
                if vals[self.index_of(&swapped)] != vals[idx] {
                    ok = false;
                    return;
                }
            }
        });
        Ok(ok)
    }
}

pub(crate) fn check_dense_budget(d: usize, arity: usize, budget: u128) -> Result<()> {
    let need = pow_sat(d as u128, arity as u32);
    if need > budget || arity >= 64 {
        return Err(Error::budget("dense table entries d^m", need, budget));
    }
    Ok(())
}

/// Calls `f(index, input)` for every input of `[d]^m` in dense order.
pub fn for_each_input(d: usize, arity: usize, mut f: impl FnMut(usize, &[Value])) {
    let radix = vec![d; arity];
    let mut digits = vec![0usize; arity];
    let mut x = vec![1 as Value; arity];
    let mut idx = 0usize;
    loop {
        f(idx, &x);
        idx += 1;
        if !odometer_next(&mut digits, &radix) {
            break;
        }
        for (v, &dg) in x.iter_mut().zip(&digits) {
            *v = (dg + 1) as Value;
        }
    }
}

/// A coordinate map `π: [n] -> [m]`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MinorMap {
    target_arity: usize,
    map: Vec<usize>,
}

impl MinorMap {
    pub fn new(map: Vec<usize>, target_arity: usize) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&t| t >= target_arity) {
            return Err(Error::InvalidParams(format!(
                "minor map sends to {} outside 1..={target_arity}",
                bad + 1
            )));
        }
        Ok(MinorMap { target_arity, map })
    }

    pub fn one_based(map: &[usize], target_arity: usize) -> Result<Self> {
        if map.iter().any(|&t| t == 0) {
            return Err(Error::InvalidParams("minor map values are 1-based".into()));
        }
        Self::new(map.iter().map(|&t| t - 1).collect(), target_arity)
    }

    pub fn identity(n: usize) -> Self {
        MinorMap {
            target_arity: n,
            map: (0..n).collect(),
        }
    }

    pub fn source_arity(&self) -> usize {
        self.map.len()
    }

    pub fn target_arity(&self) -> usize {
        self.target_arity
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    /// `π^{-1}(S)` for a set of target coordinates.
    pub fn preimage(&self, target: &super::CoordSet) -> super::CoordSet {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &t)| target.contains(t))
            .map(|(i, _)| i)
            .collect()
    }

    /// `π(S)`
    pub fn image(&self, source: &super::CoordSet) -> super::CoordSet {
        source.iter().map(|i| self.map[i]).collect()
    }
}

impl fmt::Display for MinorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.map.iter().map(|t| (t + 1).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `g(x_1..x_m) = f(x_{π(1)}, ..., x_{π(n)})` as a dense table.
pub fn apply_minor(f: &FunctionTable, pi: &MinorMap, budget: u128) -> Result<FunctionTable> {
    if pi.source_arity() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: pi.source_arity(),
        });
    }
    let mut buf = vec![0 as Value; f.arity()];
    FunctionTable::from_fn(f.d(), pi.target_arity(), budget, |x| {
        for (slot, &t) in buf.iter_mut().zip(pi.as_slice()) {
            *slot = x[t];
        }
        f.eval(&buf)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_minor_is_noop() {
        let f = FunctionTable::majority3();
        let g = apply_minor(&f, &MinorMap::identity(3), DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn majority_minor_is_projection() {
        // Oracle: maj(x,x,y) over the 4 inputs of [2]^2 equals x.
        let f = FunctionTable::majority3();
        let pi = MinorMap::one_based(&[1, 1, 2], 2).unwrap();
        let g = apply_minor(&f, &pi, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(g.values().unwrap(), &[1, 1, 2, 2]);
        assert_eq!(g, FunctionTable::dictator(2, 2, 0).unwrap());
    }

    #[test]
    fn minor_arity_mismatch() {
        let f = FunctionTable::majority3();
        let pi = MinorMap::identity(2);
        assert!(matches!(
            apply_minor(&f, &pi, DEFAULT_TABLE_BUDGET),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn dense_validation() {
        assert!(FunctionTable::dense(2, 2, vec![1, 2, 2]).is_err());
        assert!(FunctionTable::dense(2, 1, vec![1, 3]).is_err());
        assert!(FunctionTable::dense(2, 0, vec![2]).is_ok());
    }

    #[test]
    fn symmetry_detection() {
        assert!(FunctionTable::majority3().is_symmetric().unwrap());
        assert!(!FunctionTable::dictator(3, 2, 0).unwrap().is_symmetric().unwrap());
    }
}
