//! SetSAT instances, assignments and satisfaction counting.
//!
//! Domain values are 1-based (`1..=d`). Variables are 1-based in files and
//! 0-based in memory.

pub(crate) mod format;
mod template;

use std::fmt;

use crate::{Error, Result, Value, MAX_DOMAIN};

pub use format::{parse_instance, serialize_instance};
pub use template::{build_pcsp_template, Template, DEFAULT_TEMPLATE_BUDGET};

/// The five integers fixing an `(a, g, k)`-SetSAT problem with set size `s`
/// over domain `[d]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SetSatParams {
    pub d: usize,
    pub s: usize,
    pub a: usize,
    pub g: usize,
    pub k: usize,
}

impl SetSatParams {
    pub fn new(d: usize, s: usize, a: usize, g: usize, k: usize) -> Result<Self> {
        let p = SetSatParams { d, s, a, g, k };
        p.validate()?;
        Ok(p)
    }

    /// Shorthand for `(1, g, k)` with `d = s + 1`.
    pub fn boolean_like(s: usize, g: usize, k: usize) -> Result<Self> {
        Self::new(s + 1, s, 1, g, k)
    }

    pub fn validate(&self) -> Result<()> {
        let SetSatParams { d, s, a, g, k } = *self;
        if d < 2 || d > MAX_DOMAIN {
            return Err(Error::InvalidParams(format!(
                "domain size d={d} outside 2..={MAX_DOMAIN}"
            )));
        }
        if s < 1 || s >= d {
            return Err(Error::InvalidParams(format!("need 1 <= s < d, got s={s}, d={d}")));
        }
        if !(1 <= a && a <= g && g <= k) {
            return Err(Error::InvalidParams(format!(
                "need 1 <= a <= g <= k, got a={a}, g={g}, k={k}"
            )));
        }
        Ok(())
    }

    /// Sign of `g/k - s/(s+1)`.
    pub fn cmp_threshold(&self) -> std::cmp::Ordering {
        (self.g * (self.s + 1)).cmp(&(self.k * self.s))
    }

    /// `g/k > 1/2`
    pub fn above_half(&self) -> bool {
        2 * self.g > self.k
    }

    pub fn is_boolean_like(&self) -> bool {
        self.d == self.s + 1
    }
}

impl fmt::Display for SetSatParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{}) d={} s={}",
            self.a, self.g, self.k, self.d, self.s
        )
    }
}

/// A subset of `[d]` stored as a bit mask (bit `v-1` for value `v`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ValueSet(u64);

impl ValueSet {
    pub fn from_values(values: impl IntoIterator<Item = Value>) -> Self {
        let mut m = 0u64;
        for v in values {
            debug_assert!(v >= 1 && (v as usize) <= MAX_DOMAIN);
            m |= 1u64 << (v - 1);
        }
        ValueSet(m)
    }

    /// `[d] \ {excluded}`
    pub fn all_but(d: usize, excluded: Value) -> Self {
        let full = if d == 64 { u64::MAX } else { (1u64 << d) - 1 };
        ValueSet(full & !(1u64 << (excluded - 1)))
    }

    /// `{1, ..., n}`
    pub fn prefix(n: usize) -> Self {
        ValueSet(if n == 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    #[inline]
    pub fn contains(&self, v: Value) -> bool {
        v >= 1 && (self.0 >> (v - 1)) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn with(&self, v: Value) -> Self {
        ValueSet(self.0 | (1u64 << (v - 1)))
    }

    /// Values in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = Value> + '_ {
        let bits = self.0;
        (0..64u32)
            .filter(move |i| (bits >> i) & 1 == 1)
            .map(|i| (i + 1) as Value)
    }

    /// All `s`-subsets of `[d]`, ordered lexicographically by their sorted
    /// value lists.
    pub fn all_of_size(d: usize, s: usize) -> Vec<ValueSet> {
        crate::combin::subsets(d, s)
            .into_iter()
            .map(|c| ValueSet::from_values(c.into_iter().map(|i| (i + 1) as Value)))
            .collect()
    }
}

impl fmt::Debug for ValueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Set-membership literal `x_var ∈ set`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 0-based variable index.
    pub var: usize,
    pub set: ValueSet,
}

impl Literal {
    pub fn new(var: usize, set: ValueSet) -> Self {
        Literal { var, set }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub literals: Vec<Literal>,
}

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Self {
        Clause { literals }
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }
}

/// A SetSAT formula. Promise levels are not part of the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    d: usize,
    s: usize,
    k: usize,
    n: usize,
    clauses: Vec<Clause>,
}

impl Instance {
    pub fn new(d: usize, s: usize, k: usize, n: usize, clauses: Vec<Clause>) -> Result<Self> {
        if d < 2 || d > MAX_DOMAIN || s < 1 || s >= d {
            return Err(Error::InvalidParams(format!(
                "need 1 <= s < d <= {MAX_DOMAIN}, got s={s}, d={d}"
            )));
        }
        if k < 1 {
            return Err(Error::InvalidParams("clause width k must be >= 1".into()));
        }
        let limit = ValueSet::prefix(d);
        for (ci, c) in clauses.iter().enumerate() {
            if c.width() != k {
                return Err(Error::InvalidParams(format!(
                    "clause {} has width {} != k={k}",
                    ci + 1,
                    c.width()
                )));
            }
            for l in &c.literals {
                if l.var >= n {
                    return Err(Error::InvalidParams(format!(
                        "clause {} uses variable {} > n={n}",
                        ci + 1,
                        l.var + 1
                    )));
                }
                if l.set.len() != s || l.set.bits() & !limit.bits() != 0 {
                    return Err(Error::InvalidParams(format!(
                        "clause {} has literal set {:?} not an {s}-subset of [{d}]",
                        ci + 1,
                        l.set
                    )));
                }
            }
        }
        Ok(Instance { d, s, k, n, clauses })
    }

    pub fn empty(d: usize, s: usize, k: usize, n: usize) -> Result<Self> {
        Self::new(d, s, k, n, Vec::new())
    }

    pub fn d(&self) -> usize {
        self.d
    }
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn num_vars(&self) -> usize {
        self.n
    }
    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }
    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    /// Same clauses read over a larger domain.
    pub fn with_domain(&self, d: usize) -> Result<Self> {
        Instance::new(d, self.s, self.k, self.n, self.clauses.clone())
    }

    /// Smallest satisfied-literal count over all clauses (`k` when empty).
    pub fn min_satisfied(&self, assign: &Assignment) -> usize {
        self.clauses
            .iter()
            .map(|c| count_satisfied(assign, c))
            .min()
            .unwrap_or(self.k)
    }
}

/// Values for variables `1..=n`, each in `1..=d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Assignment(pub Vec<Value>);

impl Assignment {
    pub fn new(values: Vec<Value>, d: usize) -> Result<Self> {
        if let Some(v) = values.iter().find(|&&v| v < 1 || v as usize > d) {
            return Err(Error::InvalidParams(format!("value {v} outside 1..={d}")));
        }
        Ok(Assignment(values))
    }

    pub fn constant(n: usize, v: Value) -> Self {
        Assignment(vec![v; n])
    }

    #[inline]
    pub fn get(&self, var: usize) -> Value {
        self.0[var]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Value] {
        &self.0
    }
}

/// Number of literals of `clause` satisfied by `assign`; repeated literals
/// count separately.
#[inline]
pub fn count_satisfied(assign: &Assignment, clause: &Clause) -> usize {
    clause
        .literals
        .iter()
        .filter(|l| l.set.contains(assign.get(l.var)))
        .count()
}

/// Whether every clause has at least `g` satisfied literals.
pub fn is_g_satisfying(assign: &Assignment, inst: &Instance, g: usize) -> bool {
    inst.clauses.iter().all(|c| count_satisfied(assign, c) >= g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(var: usize, vals: &[Value]) -> Literal {
        Literal::new(var, ValueSet::from_values(vals.iter().copied()))
    }

    fn five_literal_clause() -> Clause {
        // x1≠3 ∨ x2≠2 ∨ x3≠1 ∨ x4≠3 ∨ x5≠3 over d=3
        let ex = [3, 2, 1, 3, 3];
        Clause::new(
            ex.iter()
                .enumerate()
                .map(|(i, &b)| Literal::new(i, ValueSet::all_but(3, b)))
                .collect(),
        )
    }

    #[test]
    fn params_validation() {
        assert!(SetSatParams::new(3, 2, 1, 2, 3).is_ok());
        assert!(SetSatParams::new(3, 3, 1, 2, 3).is_err());
        assert!(SetSatParams::new(3, 0, 1, 2, 3).is_err());
        assert!(SetSatParams::new(3, 2, 2, 1, 3).is_err());
        assert!(SetSatParams::new(3, 2, 1, 4, 3).is_err());
        assert!(SetSatParams::new(1, 1, 1, 1, 1).is_err());
    }

    #[test]
    fn threshold_comparison() {
        use std::cmp::Ordering::*;
        assert_eq!(SetSatParams::new(3, 2, 1, 2, 3).unwrap().cmp_threshold(), Equal);
        assert_eq!(SetSatParams::new(3, 2, 1, 3, 4).unwrap().cmp_threshold(), Greater);
        assert_eq!(SetSatParams::new(3, 2, 1, 3, 5).unwrap().cmp_threshold(), Less);
    }

    #[test]
    fn count_examples() {
        let c = Clause::new(vec![lit(0, &[1, 2]), lit(1, &[2, 3]), lit(1, &[1, 3])]);
        assert_eq!(count_satisfied(&Assignment(vec![1, 2]), &c), 2);
        assert_eq!(count_satisfied(&Assignment(vec![3, 2]), &c), 1);
        let none = Clause::new(vec![lit(0, &[1, 2]), lit(0, &[1, 2])]);
        assert_eq!(count_satisfied(&Assignment(vec![3]), &none), 0);
        assert_eq!(count_satisfied(&Assignment(vec![1]), &none), 2);
    }

    #[test]
    fn five_literal_clause_counts() {
        let inst = Instance::new(3, 2, 5, 5, vec![five_literal_clause()]).unwrap();
        let col = Assignment(vec![3, 3, 3, 1, 1]);
        assert_eq!(count_satisfied(&col, &inst.clauses()[0]), 4);
        assert!(is_g_satisfying(&col, &inst, 4));
        assert!(!is_g_satisfying(&col, &inst, 5));
    }

    #[test]
    fn vacuous_and_falsified() {
        let empty = Instance::empty(3, 2, 3, 2).unwrap();
        assert!(is_g_satisfying(&Assignment(vec![1, 1]), &empty, 3));
        let c = Clause::new(vec![lit(0, &[2]), lit(1, &[2])]);
        let inst = Instance::new(2, 1, 2, 2, vec![c]).unwrap();
        assert!(!is_g_satisfying(&Assignment(vec![1, 1]), &inst, 1));
    }

    #[test]
    fn instance_rejects_bad_literals() {
        let c = Clause::new(vec![lit(0, &[1])]);
        assert!(Instance::new(3, 2, 1, 1, vec![c.clone()]).is_err());
        assert!(Instance::new(3, 1, 2, 1, vec![c.clone()]).is_err());
        assert!(Instance::new(3, 1, 1, 0, vec![c]).is_err());
    }

    #[test]
    fn value_set_helpers() {
        let s = ValueSet::all_but(4, 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3, 4]);
        assert_eq!(ValueSet::all_of_size(3, 2).len(), 3);
        assert_eq!(
            ValueSet::all_of_size(3, 2)[0].iter().collect::<Vec<_>>(),
            vec![1, 2]
        );
    }
}
