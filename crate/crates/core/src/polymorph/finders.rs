//! Constructive searches for small and disjoint smug sets of polymorphisms
//! of `(1,g,k)`-SetSAT with `d = s+1`.
//!
//! Every probe input is evaluated and its output compared with the value the
//! argument predicts; a mismatch means `f` is not a polymorphism and is
//! reported as [`Error::Verification`].

use std::cmp::Ordering;

use super::cover::max_coverage;
use super::criteria::{require_boolean_like, verdict_from_scan};
use super::smug::{SmugEntry, SmugScan};
use super::table::FunctionTable;
use super::CoordSet;
use crate::model::SetSatParams;
use crate::{Error, Result, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisjointOutcome {
    /// A smug set of size at most `s-1`.
    Small(SmugEntry),
    /// `s` pairwise disjoint minimal smug sets.
    Disjoint(Vec<SmugEntry>),
}

/// Trace of the small-set search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallSmugReport {
    pub set: SmugEntry,
    /// `S_1..S_t` at the moment the search stopped.
    pub chain: Vec<CoordSet>,
    /// Transversal coordinates in the order they were added; the `i`-th is
    /// the coordinate of `T` inside `chain[i]`.
    pub transversal: Vec<usize>,
}

impl SmallSmugReport {
    pub fn t(&self) -> CoordSet {
        self.transversal.iter().copied().collect()
    }
}

struct Ctx<'a> {
    f: &'a FunctionTable,
    scan: SmugScan,
    m: usize,
}

impl Ctx<'_> {
    fn entry(&self, s: CoordSet) -> SmugEntry {
        SmugEntry {
            set: s,
            witness: self.scan.witness(s).expect("smug"),
        }
    }

    /// Evaluates `v`, demanding output `expect`.
    fn probe(&self, v: &[Value], expect: Value) -> Result<()> {
        let out = self.f.eval(v);
        if out != expect {
            return Err(Error::Verification(format!(
                "probe {v:?} gives {out}, expected {expect}; f is not a polymorphism"
            )));
        }
        Ok(())
    }

    /// With `t < s` disjoint minimal smug sets, probes `t+2` on `T`, `i` on
    /// `S_i \ T` and `t+1` on the rest `R`. The output is forced to be `t+1`,
    /// so `R` is smug; the next set is the smallest smug subset of `R`.
    fn extend_disjoint(&self, chain: &mut Vec<CoordSet>, trans: &mut Vec<usize>) -> Result<()> {
        let t = chain.len();
        let tset: CoordSet = trans.iter().copied().collect();
        let mut v = vec![(t + 1) as Value; self.m];
        let mut rest = CoordSet::full(self.m);
        for (i, s) in chain.iter().enumerate() {
            for c in s.iter() {
                v[c] = (i + 1) as Value;
            }
            rest = rest.difference(s);
        }
        for c in tset.iter() {
            v[c] = (t + 2) as Value;
        }
        self.probe(&v, (t + 1) as Value)?;
        let next = self
            .scan
            .smallest_between(CoordSet::EMPTY, rest)
            .ok_or_else(|| Error::Verification("probe set is not smug".into()))?;
        trans.push(next.first().expect("nonempty smug set"));
        chain.push(next);
        Ok(())
    }
}

fn setup<'a>(f: &'a FunctionTable, params: &SetSatParams, budget: u128) -> Result<Ctx<'a>> {
    require_boolean_like(f, params)?;
    if params.g >= params.k {
        return Err(Error::Precondition("needs g < k".into()));
    }
    let scan = SmugScan::new(f, budget)?;
    if !verdict_from_scan(f, &scan, params).is_polymorphism() {
        return Err(Error::Precondition(format!("function is not a polymorphism of {params}")));
    }
    Ok(Ctx { f, scan, m: f.arity() })
}

/// A smug set of size at most `s-1`, or `s` disjoint minimal smug sets.
pub fn find_disjoint_minimal_smug(
    f: &FunctionTable,
    params: &SetSatParams,
    budget: u128,
) -> Result<DisjointOutcome> {
    let ctx = setup(f, params, budget)?;
    if ctx.scan.min_size() < params.s {
        return Ok(DisjointOutcome::Small(ctx.entry(ctx.scan.smallest().expect("nonempty"))));
    }
    let mut chain = Vec::new();
    let mut trans = Vec::new();
    while chain.len() < params.s {
        ctx.extend_disjoint(&mut chain, &mut trans)?;
    }
    Ok(DisjointOutcome::Disjoint(chain.into_iter().map(|s| ctx.entry(s)).collect()))
}

/// A smug set of size at most `g`, for `g/k < s/(s+1)`.
///
/// Builds `S_1, S_2, ...` and the transversal `T` stage by stage, returning
/// the smallest smug set as soon as one of size at most the current stage
/// exists. Below stage `s` the sets are disjoint; from stage `s` on, the
/// probe puts `s+1` on `T`, `i+1` on `S_{t-i} \ T` for `i < s-1` and `s` on
/// the rest `R`, and `S_{t+1}` is the smallest smug set between
/// `S_{t-s+1} \ T` and `R`. Reaching stage `g+1` is impossible for a
/// polymorphism and is reported as an error together with the refuting
/// multiset.
pub fn find_small_smug_set(
    f: &FunctionTable,
    params: &SetSatParams,
    budget: u128,
) -> Result<SmallSmugReport> {
    if params.cmp_threshold() != Ordering::Less {
        return Err(Error::Precondition(format!("needs g/k < s/(s+1), got {params}")));
    }
    let ctx = setup(f, params, budget)?;
    let SetSatParams { s, g, k, .. } = *params;
    let mu = ctx.scan.min_size();
    let mut chain: Vec<CoordSet> = Vec::new();
    let mut trans: Vec<usize> = Vec::new();
    let done = |chain: &Vec<CoordSet>, trans: &Vec<usize>| SmallSmugReport {
        set: ctx.entry(ctx.scan.smallest().expect("nonempty")),
        chain: chain.clone(),
        transversal: trans.clone(),
    };

    while chain.len() < s {
        let t = chain.len();
        if t > g {
            // t >= g+1 disjoint smug sets: repeat each up to k-g times
            let reps: Vec<CoordSet> = chain
                .iter()
                .flat_map(|s| std::iter::repeat(*s).take(k - g))
                .take(k)
                .collect();
            return Err(contradiction(&reps, ctx.m, k, g));
        }
        if mu <= t {
            return Ok(done(&chain, &trans));
        }
        ctx.extend_disjoint(&mut chain, &mut trans)?;
    }

    loop {
        let t = chain.len();
        if mu <= t && t <= g {
            return Ok(done(&chain, &trans));
        }
        if t > g {
            break;
        }
        let tset: CoordSet = trans.iter().copied().collect();
        let mut v = vec![s as Value; ctx.m];
        let mut rest = CoordSet::full(ctx.m).difference(&tset);
        for i in 0..s - 1 {
            let si = chain[t - 1 - i].difference(&tset);
            for c in si.iter() {
                v[c] = (i + 1) as Value;
            }
            rest = rest.difference(&chain[t - 1 - i]);
        }
        for c in tset.iter() {
            v[c] = (s + 1) as Value;
        }
        ctx.probe(&v, s as Value)?;
        let keep = chain[t - s].difference(&tset);
        let next = ctx
            .scan
            .smallest_between(keep, rest)
            .ok_or_else(|| Error::Verification("probe set is not smug".into()))?;
        let ell = next
            .difference(&chain[t - s])
            .first()
            .ok_or_else(|| Error::Verification("extension adds no new coordinate".into()))?;
        trans.push(ell);
        chain.push(next);
    }

    // stage t = g+1
    let t = chain.len();
    let tset: CoordSet = trans.iter().copied().collect();
    let mut v = vec![(s + 1) as Value; ctx.m];
    let mut covered = CoordSet::EMPTY;
    for i in 0..s {
        let si = chain[t - 1 - i].difference(&tset);
        for c in si.iter() {
            v[c] = (i + 1) as Value;
        }
        covered = covered.union(&chain[t - 1 - i]);
    }
    ctx.probe(&v, (s + 1) as Value)?;
    let r = CoordSet::full(ctx.m).difference(&covered).union(&tset);
    let mut multiset = chain.clone();
    multiset.extend(std::iter::repeat(r).take(k - g - 1));
    Err(contradiction(&multiset, ctx.m, k, g))
}

fn contradiction(multiset: &[CoordSet], m: usize, k: usize, g: usize) -> Error {
    let sets: Vec<Vec<usize>> = multiset.iter().map(|s| s.iter().collect()).collect();
    let idx: Vec<usize> = (0..sets.len()).collect();
    let cov = max_coverage(&sets, &idx, m);
    Error::Verification(format!(
        "smug sets {multiset:?} ({} of k={k}) cover each coordinate at most {cov} <= k-g={} times",
        multiset.len(),
        k - g
    ))
}

/// Size of the largest pairwise disjoint family of smug sets, computed over
/// the minimal ones by branch and bound.
pub fn max_disjoint_smug(f: &FunctionTable, budget: u128) -> Result<usize> {
    let scan = SmugScan::new(f, budget)?;
    let sets = scan.minimal().sets();
    fn rec(sets: &[CoordSet], from: usize, used: CoordSet, size: usize, best: &mut usize) {
        if size > *best {
            *best = size;
        }
        if size + (sets.len() - from) <= *best {
            return;
        }
        for i in from..sets.len() {
            if size + (sets.len() - i) <= *best {
                return;
            }
            if !sets[i].intersects(&used) {
                rec(sets, i + 1, used.union(&sets[i]), size + 1, best);
            }
        }
    }
    let mut best = 0;
    rec(&sets, 0, CoordSet::EMPTY, 0, &mut best);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymorph::plurality::plurality;
    use crate::polymorph::table::DEFAULT_TABLE_BUDGET;

    const B: u128 = DEFAULT_TABLE_BUDGET;

    fn p135() -> SetSatParams {
        SetSatParams::new(3, 2, 1, 3, 5).unwrap()
    }

    #[test]
    fn dictator_small_sets() {
        let f = FunctionTable::dictator(3, 4, 2).unwrap();
        let r = find_small_smug_set(&f, &p135(), B).unwrap();
        assert_eq!(r.set.set, CoordSet::one_based(&[3]));
        match find_disjoint_minimal_smug(&f, &p135(), B).unwrap() {
            DisjointOutcome::Small(e) => assert_eq!(e.set, CoordSet::one_based(&[3])),
            other => panic!("{other:?}"),
        }
        assert_eq!(max_disjoint_smug(&f, B).unwrap(), 1);
    }

    #[test]
    fn plurality_disjoint_pair() {
        let p = SetSatParams::new(3, 2, 1, 3, 4).unwrap();
        let f = plurality(3, 4).unwrap();
        match find_disjoint_minimal_smug(&f, &p, B).unwrap() {
            DisjointOutcome::Disjoint(v) => {
                assert_eq!(v.len(), 2);
                assert!(!v[0].set.intersects(&v[1].set));
                assert!(v.iter().all(|e| e.verify(&f)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn majority_disjoint_count() {
        assert_eq!(max_disjoint_smug(&FunctionTable::majority3(), B).unwrap(), 1);
    }

    #[test]
    fn threshold_precondition() {
        let p = SetSatParams::new(3, 2, 1, 2, 3).unwrap();
        let f = FunctionTable::dictator(3, 2, 0).unwrap();
        assert!(matches!(find_small_smug_set(&f, &p, B), Err(Error::Precondition(_))));
    }

    #[test]
    fn non_polymorphism_rejected() {
        let f = FunctionTable::constant(3, 2, 1).unwrap();
        assert!(matches!(find_small_smug_set(&f, &p135(), B), Err(Error::Precondition(_))));
    }
}
