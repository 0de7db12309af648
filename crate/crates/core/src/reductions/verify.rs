use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    apply_reduction, backward_witness, forward_witness, Cnf, Graph, Hypergraph, ReductionKind, SourceProblem,
    DEFAULT_REDUCTION_BUDGET,
};
use crate::combin::odometer_next;
use crate::model::{is_g_satisfying, Assignment, Clause, Instance, Literal, SetSatParams, ValueSet};
use crate::solvers::{brute_force_find, plant_instance, DEFAULT_BRUTE_BUDGET};
use crate::{Error, Result, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub samples: usize,
    /// Largest number of source variables.
    pub max_vars: usize,
    /// Largest source domain (or colour count).
    pub max_domain: usize,
    pub seed: u64,
    /// Limit on brute-force assignments per oracle call.
    pub budget: u128,
}

impl VerifyConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        VerifyConfig { samples, max_vars: 8, max_domain: 4, seed, budget: DEFAULT_BRUTE_BUDGET }
    }
}

/// One sample. `forward` is `None` when the source is outside the promise,
/// `backward` is `None` when the target has no solution at the lower level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleVerdict {
    pub source: SourceProblem,
    pub target: Instance,
    pub target_params: SetSatParams,
    pub forward: Option<bool>,
    pub backward: Option<bool>,
    /// Description of the violation, with the witness involved.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub kind: ReductionKind,
    pub samples: Vec<SampleVerdict>,
}

impl ReductionReport {
    pub fn violations(&self) -> usize {
        self.samples.iter().filter(|s| s.failure.is_some()).count()
    }

    pub fn forward_checked(&self) -> usize {
        self.samples.iter().filter(|s| s.forward.is_some()).count()
    }

    pub fn backward_checked(&self) -> usize {
        self.samples.iter().filter(|s| s.backward.is_some()).count()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }
}

/// Runs every sample through the reduction and both oracles.
pub fn verify_reduction(kind: ReductionKind, cfg: &VerifyConfig) -> Result<ReductionReport> {
    if cfg.max_vars < 2 || cfg.max_domain < 2 {
        return Err(Error::InvalidParams("size bounds need max_vars >= 2 and max_domain >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut samples = Vec::with_capacity(cfg.samples);
    for i in 0..cfg.samples {
        let src = random_source(kind, cfg.max_vars, cfg.max_domain, i % 2 == 0, &mut rng)?;
        samples.push(check_sample(kind, src, cfg.budget)?);
    }
    Ok(ReductionReport { kind, samples })
}

fn check_sample(kind: ReductionKind, src: SourceProblem, budget: u128) -> Result<SampleVerdict> {
    let (target, tp) = apply_reduction(kind, &src, DEFAULT_REDUCTION_BUDGET)?;
    let mut failure = None;

    let forward = match promise_witness(&src, budget)? {
        None => None,
        Some(w) => {
            let t = forward_witness(kind, &src, &w);
            let ok = t.len() == target.num_vars() && is_g_satisfying(&t, &target, tp.g);
            if !ok {
                failure = Some(format!("forward: source witness {w:?} maps to {t:?}, not {}-satisfying", tp.g));
            }
            Some(ok)
        }
    };

    let backward = match brute_force_find(&target, tp.a, budget)? {
        None => None,
        Some(t) => {
            let back = backward_witness(kind, &src, &t);
            let mapped = is_solution(&src, &back);
            let exists = mapped || solvable(&src, budget)?;
            if !exists {
                failure.get_or_insert(format!(
                    "backward: target is {}-satisfied by {t:?} but the source has no solution",
                    tp.a
                ));
            } else if !mapped {
                failure.get_or_insert(format!("backward: {t:?} maps to {back:?}, not a source solution"));
            }
            Some(exists && mapped)
        }
    };

    Ok(SampleVerdict { source: src, target, target_params: tp, forward, backward, failure })
}

fn for_each_vector(n: usize, q: usize, budget: u128, mut visit: impl FnMut(&[usize]) -> bool) -> Result<()> {
    let total = crate::combin::pow_sat(q as u128, n as u32);
    if total > budget {
        return Err(Error::budget("source assignments", total, budget));
    }
    let mut digits = vec![0usize; n];
    let radix = vec![q; n];
    loop {
        if visit(&digits) {
            return Ok(());
        }
        if !odometer_next(&mut digits, &radix) {
            return Ok(());
        }
    }
}

/// A witness at the upper promise level, found by brute force.
fn promise_witness(src: &SourceProblem, budget: u128) -> Result<Option<Vec<Value>>> {
    let mut found = None;
    match src {
        SourceProblem::SetSat { instance, params } => {
            return Ok(brute_force_find(instance, params.g, budget)?.map(|a| a.0));
        }
        SourceProblem::Cnf { formula, .. } => for_each_vector(formula.num_vars, 2, budget, |v| {
            let b: Vec<bool> = v.iter().map(|&x| x == 1).collect();
            if formula.is_satisfied(&b) {
                found = Some(v.iter().map(|&x| x as Value + 1).collect());
            }
            found.is_some()
        })?,
        SourceProblem::Coloring { graph, colors } => for_each_vector(graph.n, *colors, budget, |v| {
            if graph.is_proper(v) {
                found = Some(v.iter().map(|&x| x as Value).collect());
            }
            found.is_some()
        })?,
        SourceProblem::HypergraphColoring { hypergraph, g, r, .. } => {
            for_each_vector(hypergraph.n, *r, budget, |v| {
                if hypergraph.each_colour_at_least(v, *r, g - 1) {
                    found = Some(v.iter().map(|&x| x as Value).collect());
                }
                found.is_some()
            })?
        }
    }
    Ok(found)
}

/// Whether `sol` solves the source at the lower promise level.
fn is_solution(src: &SourceProblem, sol: &[Value]) -> bool {
    match src {
        SourceProblem::SetSat { instance, params } => {
            sol.len() == instance.num_vars()
                && sol.iter().all(|&v| v >= 1 && v as usize <= params.d)
                && is_g_satisfying(&Assignment(sol.to_vec()), instance, params.a)
        }
        SourceProblem::Cnf { formula, .. } => {
            sol.len() == formula.num_vars
                && sol.iter().all(|&v| v == 1 || v == 2)
                && formula.is_satisfied(&sol.iter().map(|&v| v == 2).collect::<Vec<_>>())
        }
        SourceProblem::Coloring { graph, colors } => {
            let c: Vec<usize> = sol.iter().map(|&v| v as usize).collect();
            c.len() == graph.n && c.iter().all(|&x| x < *colors) && graph.is_proper(&c)
        }
        SourceProblem::HypergraphColoring { hypergraph, c, .. } => {
            let col: Vec<usize> = sol.iter().map(|&v| v as usize).collect();
            col.len() == hypergraph.n && col.iter().all(|&x| x < *c) && hypergraph.no_monochromatic_edge(&col)
        }
    }
}

/// Brute-force solvability at the lower promise level.
fn solvable(src: &SourceProblem, budget: u128) -> Result<bool> {
    let (n, q, shift) = match src {
        SourceProblem::SetSat { instance, params } => {
            return Ok(brute_force_find(instance, params.a, budget)?.is_some());
        }
        SourceProblem::Cnf { formula, .. } => (formula.num_vars, 2, 1),
        SourceProblem::Coloring { graph, colors } => (graph.n, *colors, 0),
        SourceProblem::HypergraphColoring { hypergraph, c, .. } => (hypergraph.n, *c, 0),
    };
    let mut ok = false;
    for_each_vector(n, q, budget, |v| {
        let sol: Vec<Value> = v.iter().map(|&x| (x + shift) as Value).collect();
        ok = is_solution(src, &sol);
        ok
    })?;
    Ok(ok)
}

fn random_setsat(
    params: SetSatParams,
    n: usize,
    m: usize,
    planted: bool,
    rng: &mut ChaCha8Rng,
) -> Result<SourceProblem> {
    let instance = if planted {
        plant_instance(params, n, m, rng.gen())?.0
    } else {
        let sets = ValueSet::all_of_size(params.d, params.s);
        let clauses = (0..m)
            .map(|_| {
                Clause::new(
                    (0..params.k)
                        .map(|_| Literal::new(rng.gen_range(0..n), *sets.choose(rng).unwrap()))
                        .collect(),
                )
            })
            .collect();
        Instance::new(params.d, params.s, params.k, n, clauses)?
    };
    Ok(SourceProblem::SetSat { instance, params })
}

/// Random `a <= g <= k` with `k <= k_max` and `a >= a_min`.
fn random_levels(rng: &mut ChaCha8Rng, a_min: usize, k_max: usize) -> (usize, usize, usize) {
    let k = rng.gen_range(a_min.max(1)..=k_max);
    let g = rng.gen_range(a_min.max(1)..=k);
    let a = rng.gen_range(a_min.max(1)..=g);
    (a, g, k)
}

/// A random source for `kind` within the size bounds; `planted` sources
/// are built around a hidden promise witness.
pub fn random_source(
    kind: ReductionKind,
    max_vars: usize,
    max_domain: usize,
    planted: bool,
    rng: &mut ChaCha8Rng,
) -> Result<SourceProblem> {
    let too_small = || Error::InvalidParams(format!("size bounds too small for {}", kind.name()));
    match kind {
        ReductionKind::ShiftUp | ReductionKind::ShiftDown | ReductionKind::ExtendDomain | ReductionKind::WidenClause => {
            // target brute force stays within (d+1)^(n+1) assignments
            let n = rng.gen_range(2..=max_vars);
            let d = rng.gen_range(2..=max_domain);
            let s = rng.gen_range(1..d);
            let (a, g, k) = if kind == ReductionKind::ShiftDown {
                random_levels(rng, 2, 4)
            } else {
                random_levels(rng, 1, 3)
            };
            let m = rng.gen_range(1..=6);
            random_setsat(SetSatParams::new(d, s, a, g, k)?, n, m, planted, rng)
        }
        ReductionKind::LiftSetSize => {
            if max_domain < 3 {
                return Err(too_small());
            }
            let n = rng.gen_range(2..=max_vars);
            let d = rng.gen_range(3..=max_domain);
            let s = rng.gen_range(1..=d - 2);
            let (_, g, k) = random_levels(rng, 1, 2);
            let m = rng.gen_range(1..=4);
            random_setsat(SetSatParams::new(d, s, 1, g, k)?, n, m, planted, rng)
        }
        ReductionKind::PadTo2g { .. } => {
            let n = rng.gen_range(2..=max_vars);
            let d = rng.gen_range(2..=max_domain);
            let m = rng.gen_range(1..=5);
            random_setsat(SetSatParams::new(d, d - 1, 1, 1, 2)?, n, m, planted, rng)
        }
        ReductionKind::From3Sat => {
            if max_domain < 3 {
                return Err(too_small());
            }
            let n = rng.gen_range(3..=max_vars.max(3));
            let s = rng.gen_range(2..max_domain);
            let truth: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            let m = rng.gen_range(1..=3 * n);
            let clauses = (0..m)
                .map(|_| loop {
                    let c: Vec<i64> = (0..3)
                        .map(|_| {
                            let v = rng.gen_range(1..=n) as i64;
                            if rng.gen() {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect();
                    if !planted || c.iter().any(|&l| truth[l.unsigned_abs() as usize - 1] == (l > 0)) {
                        break c;
                    }
                })
                .collect();
            Ok(SourceProblem::Cnf { formula: Cnf::new(n, clauses)?, s })
        }
        ReductionKind::FromGraphColoring => {
            let n = rng.gen_range(2..=max_vars);
            let colors = rng.gen_range(2..=max_domain);
            let col: Vec<usize> = (0..n).map(|_| rng.gen_range(0..colors)).collect();
            let p = rng.gen_range(0.2..0.8);
            let edges = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|&(u, v)| rng.gen_bool(p) && (!planted || col[u] != col[v]))
                .collect();
            Ok(SourceProblem::Coloring { graph: Graph::new(n, edges)?, colors })
        }
        ReductionKind::FromHypergraphColoring => {
            let shapes: Vec<(usize, usize)> = [(2, 2), (2, 3), (2, 4), (3, 2), (4, 2)]
                .into_iter()
                .filter(|&(r, g)| r <= max_domain && r * g <= max_vars)
                .collect();
            let &(r, g) = shapes.choose(rng).ok_or_else(too_small)?;
            let w = r * g;
            let n = rng.gen_range(w..=max_vars);
            let m = rng.gen_range(1..=4);
            let mut verts: Vec<usize> = (0..n).collect();
            let edges = if planted {
                // every colour class has at least g-1 vertices
                verts.shuffle(rng);
                let col: Vec<usize> = {
                    let mut c = vec![0; n];
                    for (i, &v) in verts.iter().enumerate() {
                        c[v] = if i < r * (g - 1) { i % r } else { rng.gen_range(0..r) };
                    }
                    c
                };
                (0..m)
                    .map(|_| {
                        let mut e = Vec::with_capacity(w);
                        for colour in 0..r {
                            let mut class: Vec<usize> = (0..n).filter(|&v| col[v] == colour).collect();
                            class.shuffle(rng);
                            e.extend_from_slice(&class[..g - 1]);
                        }
                        let mut rest: Vec<usize> = (0..n).filter(|v| !e.contains(v)).collect();
                        rest.shuffle(rng);
                        e.extend_from_slice(&rest[..w - e.len()]);
                        e.sort_unstable();
                        e
                    })
                    .collect()
            } else {
                (0..m)
                    .map(|_| {
                        verts.shuffle(rng);
                        let mut e = verts[..w].to_vec();
                        e.sort_unstable();
                        e
                    })
                    .collect()
            };
            Ok(SourceProblem::HypergraphColoring { hypergraph: Hypergraph::new(n, edges)?, g, r, c: r })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solvers::brute_force_best_g;

    fn small(samples: usize, seed: u64) -> VerifyConfig {
        VerifyConfig { max_vars: 5, max_domain: 3, ..VerifyConfig::new(samples, seed) }
    }

    #[test]
    fn every_kind_passes_small_samples() {
        for kind in ReductionKind::all(2) {
            let r = verify_reduction(kind, &small(12, 7)).unwrap();
            assert!(r.passed(), "{kind}: {:?}", r.samples.iter().find_map(|s| s.failure.clone()));
            assert_eq!(r.samples.len(), 12);
            assert!(r.forward_checked() > 0, "{kind} never checked forward");
        }
    }

    #[test]
    fn restriction_clauses_are_needed() {
        let all: Vec<Vec<i64>> = (0..8)
            .map(|m| (1..=3).map(|v| if m >> (v - 1) & 1 == 1 { v } else { -v }).collect())
            .collect();
        let src = SourceProblem::Cnf { formula: Cnf::new(3, all).unwrap(), s: 3 };
        let (t, _) = apply_reduction(ReductionKind::From3Sat, &src, DEFAULT_REDUCTION_BUDGET).unwrap();
        assert!(brute_force_find(&t, 1, DEFAULT_BRUTE_BUDGET).unwrap().is_none());
        let broken = Instance::new(t.d(), t.s(), t.k(), t.num_vars(), t.clauses()[..8].to_vec()).unwrap();
        let a = brute_force_find(&broken, 1, DEFAULT_BRUTE_BUDGET).unwrap().unwrap();
        assert!(!is_solution(&src, &backward_witness(ReductionKind::From3Sat, &src, &a)));
    }

    #[test]
    fn shift_down_after_shift_up_is_equisatisfiable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..10 {
            let src = random_source(ReductionKind::ShiftDown, 4, 3, i % 2 == 0, &mut rng).unwrap();
            let SourceProblem::SetSat { instance, params } = &src else { unreachable!() };
            let (up, up_p) = apply_reduction(ReductionKind::ShiftUp, &src, DEFAULT_REDUCTION_BUDGET).unwrap();
            let mid = SourceProblem::SetSat { instance: up, params: up_p };
            let (down, down_p) = apply_reduction(ReductionKind::ShiftDown, &mid, DEFAULT_REDUCTION_BUDGET).unwrap();
            assert_eq!(down_p, *params);
            let best_src = brute_force_best_g(instance, DEFAULT_BRUTE_BUDGET).unwrap().0;
            let best_down = brute_force_best_g(&down, DEFAULT_BRUTE_BUDGET).unwrap().0;
            assert_eq!(best_src >= params.g, best_down >= params.g);
            assert_eq!(best_src >= params.a, best_down >= params.a);
        }
    }

    #[test]
    fn hypergraph_planting_keeps_the_promise() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let src = random_source(ReductionKind::FromHypergraphColoring, 8, 4, true, &mut rng).unwrap();
            assert!(promise_witness(&src, DEFAULT_BRUTE_BUDGET).unwrap().is_some());
        }
    }
}
