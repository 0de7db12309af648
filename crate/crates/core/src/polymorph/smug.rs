use std::collections::HashMap;

use super::table::{check_dense_budget, for_each_input, FunctionTable, MinorMap};
use super::CoordSet;
use crate::{Error, Result, Value};

/// A smug set together with an input realizing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmugEntry {
    pub set: CoordSet,
    pub witness: Vec<Value>,
}

impl SmugEntry {
    /// Re-derives the set from the witness.
    pub fn verify(&self, f: &FunctionTable) -> bool {
        smug_of(f, &self.witness).map_or(false, |s| s == self.set)
    }
}

/// Smug sets of a function, sorted by size then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmugFamily {
    pub entries: Vec<SmugEntry>,
    /// Whether only inclusion-minimal sets are listed.
    pub minimal: bool,
}

impl SmugFamily {
    pub fn sets(&self) -> Vec<CoordSet> {
        self.entries.iter().map(|e| e.set).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// `{i : v_i = f(v)}`
pub fn smug_of(f: &FunctionTable, v: &[Value]) -> Result<CoordSet> {
    if v.len() != f.arity() {
        return Err(Error::ArityMismatch {
            expected: f.arity(),
            got: v.len(),
        });
    }
    if f.arity() > 64 {
        return Err(Error::InvalidParams(format!(
            "coordinate sets support arity <= 64, got {}",
            f.arity()
        )));
    }
    let out = f.eval(v);
    Ok(v.iter()
        .enumerate()
        .filter(|(_, &x)| x == out)
        .map(|(i, _)| i)
        .collect())
}

/// Witness transport along a minor: `u_i := v_{π(i)}`. If `v` realizes the
/// smug set `S` of the minor, `u` realizes `π^{-1}(S)` for the source.
pub fn transport_witness(pi: &MinorMap, v: &[Value]) -> Vec<Value> {
    pi.as_slice().iter().map(|&t| v[t]).collect()
}

/// Every smug set of a dense function, from one scan over `[d]^m`, with the
/// lexicographically first witness of each.
#[derive(Debug, Clone)]
pub struct SmugScan {
    d: usize,
    arity: usize,
    /// set bits -> index of first witness
    sets: HashMap<u64, usize>,
}

impl SmugScan {
    pub fn new(f: &FunctionTable, budget: u128) -> Result<Self> {
        let vals = f.dense_values()?;
        check_dense_budget(f.d(), f.arity(), budget)?;
        if f.arity() > 63 {
            return Err(Error::InvalidParams("arity too large for a smug scan".into()));
        }
        let mut sets = HashMap::new();
        for_each_input(f.d(), f.arity(), |idx, x| {
            let out = vals[idx];
            let mut bits = 0u64;
            for (i, &xi) in x.iter().enumerate() {
                if xi == out {
                    bits |= 1 << i;
                }
            }
            sets.entry(bits).or_insert(idx);
        });
        Ok(SmugScan {
            d: f.d(),
            arity: f.arity(),
            sets,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_smug(&self, s: CoordSet) -> bool {
        self.sets.contains_key(&s.bits())
    }

    pub fn witness(&self, s: CoordSet) -> Option<Vec<Value>> {
        self.sets.get(&s.bits()).map(|&idx| self.decode(idx))
    }

    fn decode(&self, mut idx: usize) -> Vec<Value> {
        let mut v = vec![0 as Value; self.arity];
        for slot in v.iter_mut().rev() {
            *slot = (idx % self.d + 1) as Value;
            idx /= self.d;
        }
        v
    }

    fn entry(&self, s: CoordSet) -> SmugEntry {
        SmugEntry {
            set: s,
            witness: self.witness(s).expect("set from scan"),
        }
    }

    /// All smug sets, sorted.
    pub fn sorted_sets(&self) -> Vec<CoordSet> {
        let mut v: Vec<CoordSet> = self.sets.keys().map(|&b| CoordSet::from_bits(b)).collect();
        v.sort();
        v
    }

    pub fn all(&self) -> SmugFamily {
        SmugFamily {
            entries: self.sorted_sets().into_iter().map(|s| self.entry(s)).collect(),
            minimal: false,
        }
    }

    /// Inclusion-minimal smug sets.
    pub fn minimal(&self) -> SmugFamily {
        let mut kept: Vec<CoordSet> = Vec::new();
        for s in self.sorted_sets() {
            if !kept.iter().any(|k| k.is_subset(&s)) {
                kept.push(s);
            }
        }
        SmugFamily {
            entries: kept.into_iter().map(|s| self.entry(s)).collect(),
            minimal: true,
        }
    }

    /// Size of the smallest smug set.
    pub fn min_size(&self) -> usize {
        self.sets
            .keys()
            .map(|b| b.count_ones() as usize)
            .min()
            .unwrap_or(usize::MAX)
    }

    /// Smallest-then-lexicographic smug set `X` with `keep ⊆ X ⊆ within`.
    /// Such a set is inclusion-minimal among smug sets containing `keep`.
    pub fn smallest_between(&self, keep: CoordSet, within: CoordSet) -> Option<CoordSet> {
        self.sets
            .keys()
            .map(|&b| CoordSet::from_bits(b))
            .filter(|s| keep.is_subset(s) && s.is_subset(&within))
            .min()
    }

    pub fn smallest(&self) -> Option<CoordSet> {
        self.sorted_sets().into_iter().next()
    }
}

pub fn minimal_smug_sets(f: &FunctionTable, budget: u128) -> Result<SmugFamily> {
    Ok(SmugScan::new(f, budget)?.minimal())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymorph::table::DEFAULT_TABLE_BUDGET;

    #[test]
    fn five_violating_rows() {
        let f = FunctionTable::from_fn(3, 10, DEFAULT_TABLE_BUDGET, |x| {
            if x == [3, 3, 3, 3, 3, 1, 1, 2, 1, 2] || x == [1, 2, 1, 2, 1, 2, 1, 2, 3, 3] {
                3
            } else {
                x[0]
            }
        })
        .unwrap();
        assert_eq!(
            smug_of(&f, &[3, 3, 3, 3, 3, 1, 1, 2, 1, 2]).unwrap(),
            CoordSet::one_based(&[1, 2, 3, 4, 5])
        );
        assert_eq!(
            smug_of(&f, &[1, 2, 1, 2, 1, 2, 1, 2, 3, 3]).unwrap(),
            CoordSet::one_based(&[9, 10])
        );
    }

    #[test]
    fn majority_minimal_sets() {
        let fam = minimal_smug_sets(&FunctionTable::majority3(), DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(
            fam.sets(),
            vec![
                CoordSet::one_based(&[1, 2]),
                CoordSet::one_based(&[1, 3]),
                CoordSet::one_based(&[2, 3])
            ]
        );
        for e in &fam.entries {
            assert!(e.verify(&FunctionTable::majority3()));
        }
    }

    #[test]
    fn dictator_minimal_is_singleton() {
        let f = FunctionTable::dictator(3, 3, 1).unwrap();
        let fam = minimal_smug_sets(&f, DEFAULT_TABLE_BUDGET).unwrap();
        assert_eq!(fam.sets(), vec![CoordSet::one_based(&[2])]);
        let all = SmugScan::new(&f, DEFAULT_TABLE_BUDGET).unwrap();
        assert!(all.sorted_sets().iter().all(|s| s.contains(1)));
    }

    #[test]
    fn constant_input_is_full() {
        let f = FunctionTable::majority3();
        assert_eq!(smug_of(&f, &[2, 2, 2]).unwrap(), CoordSet::full(3));
    }

    #[test]
    fn implicit_rejected() {
        let f = crate::polymorph::family::SmugToPolymFamily::siggers();
        let t = FunctionTable::implicit(
            3,
            6,
            crate::polymorph::table::Rule {
                kind: crate::polymorph::table::RuleKind::Siggers,
                family: f,
            },
        )
        .unwrap();
        assert!(matches!(SmugScan::new(&t, DEFAULT_TABLE_BUDGET), Err(Error::NotDense(_))));
    }
}
