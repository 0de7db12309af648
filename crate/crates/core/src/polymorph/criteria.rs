use super::cover::find_low_cover;
use super::smug::{smug_of, SmugEntry, SmugScan};
use super::table::{for_each_input, check_dense_budget, FunctionTable};
use super::CoordSet;
use crate::model::{SetSatParams, ValueSet};
use crate::{Error, Result, Value};

/// A clause `x_1 ≠ b_1 ∨ ... ∨ x_k ≠ b_k`, `m` columns each `g`-satisfying
/// it, and the row-wise image of `f`, which equals `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonPolymorphismWitness {
    pub forbidden: Vec<Value>,
    /// `columns[l][j]` is row `j` of column `l`.
    pub columns: Vec<Vec<Value>>,
    pub output: Vec<Value>,
}

impl NonPolymorphismWitness {
    /// Stacks `k` input rows of `f`; the clause forbids the row outputs.
    pub fn from_rows(f: &FunctionTable, rows: &[Vec<Value>]) -> Result<Self> {
        for r in rows {
            if r.len() != f.arity() {
                return Err(Error::ArityMismatch {
                    expected: f.arity(),
                    got: r.len(),
                });
            }
        }
        let output: Vec<Value> = rows.iter().map(|r| f.eval(r)).collect();
        let columns = (0..f.arity())
            .map(|l| rows.iter().map(|r| r[l]).collect())
            .collect();
        Ok(NonPolymorphismWitness {
            forbidden: output.clone(),
            columns,
            output,
        })
    }

    pub fn rows(&self) -> Vec<Vec<Value>> {
        (0..self.forbidden.len())
            .map(|j| self.columns.iter().map(|c| c[j]).collect())
            .collect()
    }

    /// Clause literals `[d] \ {b_j}`.
    pub fn literal_sets(&self, d: usize) -> Vec<ValueSet> {
        self.forbidden.iter().map(|&b| ValueSet::all_but(d, b)).collect()
    }

    /// Checks every column `g`-satisfies the clause and the image equals `b`.
    pub fn verify(&self, f: &FunctionTable, params: &SetSatParams) -> Result<()> {
        let k = self.forbidden.len();
        if k != params.k || self.columns.len() != f.arity() || self.output.len() != k {
            return Err(Error::Verification("witness has wrong shape".into()));
        }
        for (l, col) in self.columns.iter().enumerate() {
            if col.len() != k {
                return Err(Error::Verification(format!("column {} has wrong length", l + 1)));
            }
            let sat = col.iter().zip(&self.forbidden).filter(|(v, b)| v != b).count();
            if sat < params.g {
                return Err(Error::Verification(format!(
                    "column {} satisfies only {sat} < g={} literals",
                    l + 1,
                    params.g
                )));
            }
        }
        for (j, row) in self.rows().iter().enumerate() {
            let o = f.eval(row);
            if o != self.output[j] || o != self.forbidden[j] {
                return Err(Error::Verification(format!(
                    "row {} maps to {o}, not the forbidden value {}",
                    j + 1,
                    self.forbidden[j]
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    /// `k` smug sets, each coordinate covered at most `k-g` times.
    pub multiset: Vec<SmugEntry>,
    pub witness: NonPolymorphismWitness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Polymorphism,
    NotPolymorphism(Box<Refutation>),
}

impl Verdict {
    pub fn is_polymorphism(&self) -> bool {
        matches!(self, Verdict::Polymorphism)
    }
}

pub(crate) fn require_boolean_like(f: &FunctionTable, params: &SetSatParams) -> Result<()> {
    params.validate()?;
    if params.d != params.s + 1 || params.a != 1 {
        return Err(Error::Precondition(format!(
            "smug-set criterion needs d = s+1 and a = 1, got {params}"
        )));
    }
    if f.d() != params.d {
        return Err(Error::Precondition(format!(
            "function domain {} differs from d={}",
            f.d(),
            params.d
        )));
    }
    Ok(())
}

/// Polymorphism test through smug sets: `f` fails iff some `k` minimal smug
/// sets cover every coordinate at most `k-g` times.
pub fn is_polymorphism_smug(f: &FunctionTable, params: &SetSatParams, budget: u128) -> Result<Verdict> {
    require_boolean_like(f, params)?;
    let scan = SmugScan::new(f, budget)?;
    Ok(verdict_from_scan(f, &scan, params))
}

pub(crate) fn verdict_from_scan(f: &FunctionTable, scan: &SmugScan, params: &SetSatParams) -> Verdict {
    let fam = scan.minimal();
    let sets: Vec<Vec<usize>> = fam.entries.iter().map(|e| e.set.iter().collect()).collect();
    match find_low_cover(&sets, f.arity(), params.k, params.k - params.g) {
        None => Verdict::Polymorphism,
        Some(idx) => {
            let multiset: Vec<SmugEntry> = idx.iter().map(|&i| fam.entries[i].clone()).collect();
            let rows: Vec<Vec<Value>> = multiset.iter().map(|e| e.witness.clone()).collect();
            let witness = NonPolymorphismWitness::from_rows(f, &rows).expect("arity checked");
            Verdict::NotPolymorphism(Box::new(Refutation { multiset, witness }))
        }
    }
}

/// Evaluates a given multiset of input rows: `Some(witness)` when their smug
/// sets cover every coordinate at most `k-g` times.
pub fn check_row_multiset(
    f: &FunctionTable,
    rows: &[Vec<Value>],
    params: &SetSatParams,
) -> Result<Option<NonPolymorphismWitness>> {
    if rows.len() != params.k {
        return Err(Error::InvalidParams(format!(
            "need k={} rows, got {}",
            params.k,
            rows.len()
        )));
    }
    let mut count = vec![0usize; f.arity()];
    for r in rows {
        for i in smug_of(f, r)?.iter() {
            count[i] += 1;
        }
    }
    if count.iter().all(|&c| c <= params.k - params.g) {
        Ok(Some(NonPolymorphismWitness::from_rows(f, rows)?))
    } else {
        Ok(None)
    }
}

/// Default node limit of [`is_polymorphism_direct`].
pub const DEFAULT_DIRECT_BUDGET: u128 = 50_000_000;

/// Polymorphism test from the definition, for any `d > s` and `a`.
///
/// A counterexample is a clause with literal sets `S_1..S_k` and rows
/// `r_1..r_k ∈ [d]^m` such that every column meets at least `g` of the sets
/// while fewer than `a` outputs `f(r_j)` land in `S_j`. Each (set, row) pair
/// contributes a column-satisfaction mask and an output-hit bit, so the
/// search runs over multisets of `k` such items, after discarding dominated
/// ones.
pub fn is_polymorphism_direct(f: &FunctionTable, params: &SetSatParams, budget: u128) -> Result<bool> {
    params.validate()?;
    if f.d() != params.d {
        return Err(Error::Precondition(format!(
            "function domain {} differs from d={}",
            f.d(),
            params.d
        )));
    }
    let m = f.arity();
    if m > 63 {
        return Err(Error::InvalidParams("arity too large for the direct test".into()));
    }
    check_dense_budget(f.d(), m, budget)?;
    let sets = ValueSet::all_of_size(params.d, params.s);
    // items[hit] = distinct masks
    let mut items: [Vec<u64>; 2] = [Vec::new(), Vec::new()];
    let mut seen = std::collections::HashSet::new();
    for_each_input(f.d(), m, |_, x| {
        let out = f.eval(x);
        for set in &sets {
            let mut mask = 0u64;
            for (i, &xi) in x.iter().enumerate() {
                if set.contains(xi) {
                    mask |= 1 << i;
                }
            }
            let hit = set.contains(out) as usize;
            if seen.insert((mask, hit)) {
                items[hit].push(mask);
            }
        }
    });
    // A miss dominates any item whose mask it contains; a hit item only
    // matters when no miss dominates it.
    let maximal = |masks: &[u64]| -> Vec<u64> {
        let mut v: Vec<u64> = masks
            .iter()
            .copied()
            .filter(|&a| !masks.iter().any(|&b| b != a && a & !b == 0))
            .collect();
        v.sort_unstable_by_key(|&b| std::cmp::Reverse(b.count_ones()));
        v
    };
    let misses = maximal(&items[0]);
    let hits: Vec<u64> = maximal(&items[1])
        .into_iter()
        .filter(|&h| !misses.iter().any(|&b| h & !b == 0))
        .collect();
    let all: Vec<(u64, usize)> = misses
        .iter()
        .map(|&b| (b, 0))
        .chain(hits.iter().map(|&b| (b, 1)))
        .collect();

    struct Search<'a> {
        all: &'a [(u64, usize)],
        m: usize,
        k: usize,
        g: usize,
        a: usize,
        nodes: u128,
        budget: u128,
    }
    impl Search<'_> {
        fn rec(&mut self, from: usize, depth: usize, hits: usize, count: &mut [usize]) -> Result<bool> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::budget("direct polymorphism search nodes", self.nodes, self.budget));
            }
            let left = self.k - depth;
            if count.iter().any(|&c| c + left < self.g) {
                return Ok(false);
            }
            if left == 0 {
                return Ok(true);
            }
            for idx in from..self.all.len() {
                let (mask, hit) = self.all[idx];
                if hits + hit >= self.a {
                    continue;
                }
                for (i, c) in count.iter_mut().enumerate().take(self.m) {
                    *c += ((mask >> i) & 1) as usize;
                }
                let found = self.rec(idx, depth + 1, hits + hit, count)?;
                for (i, c) in count.iter_mut().enumerate().take(self.m) {
                    *c -= ((mask >> i) & 1) as usize;
                }
                if found {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
    let mut s = Search {
        all: &all,
        m,
        k: params.k,
        g: params.g,
        a: params.a,
        nodes: 0,
        budget,
    };
    let mut count = vec![0usize; m];
    Ok(!s.rec(0, 0, 0, &mut count)?)
}

/// `f(v) ∈ {v_1, ..., v_m}` for every input.
pub fn is_conservative(f: &FunctionTable) -> Result<bool> {
    let vals = f.dense_values()?;
    let mut ok = true;
    for_each_input(f.d(), f.arity(), |idx, x| {
        if ok && !x.contains(&vals[idx]) {
            ok = false;
        }
    });
    Ok(ok)
}

/// First input whose output is not among its entries.
pub fn conservativity_violation(f: &FunctionTable) -> Result<Option<Vec<Value>>> {
    let vals = f.dense_values()?;
    let mut bad = None;
    for_each_input(f.d(), f.arity(), |idx, x| {
        if bad.is_none() && !x.contains(&vals[idx]) {
            bad = Some(x.to_vec());
        }
    });
    Ok(bad)
}

/// Coverage counts of a multiset of sets over `0..m`.
pub fn coverage(sets: &[CoordSet], m: usize) -> Vec<usize> {
    let mut count = vec![0usize; m];
    for s in sets {
        for i in s.iter() {
            count[i] += 1;
        }
    }
    count
}
