//! Gadget reductions between SetSAT promise problems, from 3-SAT, graph
//! colouring and hypergraph colouring, with a brute-force verification
//! harness.
//!
//! `N_i(x)` below is the literal `x ∈ [s+1] \ {i}`.

mod format;
mod verify;

use std::fmt;
use std::str::FromStr;

use crate::combin::{binomial, odometer_next, pow_sat};
use crate::model::{Assignment, Clause, Instance, Literal, SetSatParams, ValueSet};
use crate::{Error, Result, Value, MAX_DOMAIN};

pub use format::{parse_cnf, parse_graph, parse_hgr, serialize_cnf, serialize_graph, serialize_hgr};
pub use verify::{random_source, verify_reduction, ReductionReport, SampleVerdict, VerifyConfig};

/// Default limit on the number of target clauses.
pub const DEFAULT_REDUCTION_BUDGET: u128 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    /// `(a,g,k) → (a+1,g+1,k+1)`: add `S(y)` for a fresh `y` to every clause.
    ShiftUp,
    /// `(a,g,k) → (a-1,g-1,k-1)`: every clause becomes its `k` subclauses of
    /// width `k-1`.
    ShiftDown,
    /// Domain `d → d+1`, same clauses.
    ExtendDomain,
    /// Set size `s → s+1` for `s ≤ d-2`: each literal ranges over the
    /// supersets of its set.
    LiftSetSize,
    /// `k → k+1`: each clause gets `N_i(y)` in turn, `i = 1..s+1`.
    WidenClause,
    /// 3-SAT to `(1,1,3)` over `d = s+1`.
    From3Sat,
    /// `(s+1)`-colouring to `(1,1,2)` over `d = s+1`.
    FromGraphColoring,
    /// `(1,1,2) → (1,g,2g)`: one clause per `g`-multiset of clauses.
    PadTo2g { g: usize },
    /// Hypergraph colouring to `(1, s(g-1), (s+1)g)` over `d = s+1`.
    FromHypergraphColoring,
}

impl ReductionKind {
    /// Every kind, with `pad_g` as the padding target.
    pub fn all(pad_g: usize) -> Vec<ReductionKind> {
        use ReductionKind::*;
        vec![
            ShiftUp,
            ShiftDown,
            ExtendDomain,
            LiftSetSize,
            WidenClause,
            From3Sat,
            FromGraphColoring,
            PadTo2g { g: pad_g },
            FromHypergraphColoring,
        ]
    }

    pub fn name(&self) -> &'static str {
        match self {
            ReductionKind::ShiftUp => "shift-up",
            ReductionKind::ShiftDown => "shift-down",
            ReductionKind::ExtendDomain => "extend-domain",
            ReductionKind::LiftSetSize => "lift-set-size",
            ReductionKind::WidenClause => "widen-clause",
            ReductionKind::From3Sat => "from-3sat",
            ReductionKind::FromGraphColoring => "from-graph-coloring",
            ReductionKind::PadTo2g { .. } => "pad-to-2g",
            ReductionKind::FromHypergraphColoring => "from-hypergraph-coloring",
        }
    }

    /// Parses a kind name; `pad-to-2g` takes its target `g` from `pad_g`.
    pub fn parse(name: &str, pad_g: Option<usize>) -> Result<Self> {
        let norm = name.replace('_', "-");
        if norm == "pad-to-2g" {
            let g = pad_g.ok_or_else(|| Error::InvalidParams("pad-to-2g needs a target g".into()))?;
            return Ok(ReductionKind::PadTo2g { g });
        }
        ReductionKind::all(1)
            .into_iter()
            .find(|k| k.name() == norm && !matches!(k, ReductionKind::PadTo2g { .. }))
            .ok_or_else(|| Error::InvalidParams(format!("unknown reduction `{name}`")))
    }

    /// Target parameters for a SetSAT source with parameters `p`.
    pub fn target_params(&self, p: &SetSatParams) -> Result<SetSatParams> {
        p.validate()?;
        let SetSatParams { d, s, a, g, k } = *p;
        match self {
            ReductionKind::ShiftUp => SetSatParams::new(d, s, a + 1, g + 1, k + 1),
            ReductionKind::ShiftDown => {
                if a < 2 {
                    return Err(Error::Precondition(format!("shift-down needs a >= 2, got {p}")));
                }
                SetSatParams::new(d, s, a - 1, g - 1, k - 1)
            }
            ReductionKind::ExtendDomain => {
                if d + 1 > MAX_DOMAIN {
                    return Err(Error::Precondition(format!("domain {} exceeds {MAX_DOMAIN}", d + 1)));
                }
                SetSatParams::new(d + 1, s, a, g, k)
            }
            ReductionKind::LiftSetSize => {
                if s + 2 > d || a != 1 {
                    return Err(Error::Precondition(format!("lift-set-size needs s <= d-2 and a = 1, got {p}")));
                }
                SetSatParams::new(d, s + 1, a, g, k)
            }
            ReductionKind::WidenClause => {
                if s + 1 > d {
                    return Err(Error::Precondition(format!("widen-clause needs s+1 <= d, got {p}")));
                }
                SetSatParams::new(d, s, a, g, k + 1)
            }
            ReductionKind::PadTo2g { g: t } => {
                if (a, g, k) != (1, 1, 2) || d != s + 1 || *t == 0 {
                    return Err(Error::Precondition(format!(
                        "pad-to-2g needs a (1,1,2) source with d = s+1 and g >= 1, got {p}"
                    )));
                }
                SetSatParams::new(d, s, 1, *t, 2 * t)
            }
            _ => Err(Error::Precondition(format!("{} does not take a SetSAT source", self.name()))),
        }
    }
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionKind::PadTo2g { g } => write!(f, "pad-to-2g(g={g})"),
            k => f.write_str(k.name()),
        }
    }
}

impl FromStr for ReductionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s, None)
    }
}

/// CNF formula with DIMACS literals: `v` is `x_v`, `-v` its negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i64>>,
}

impl Cnf {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i64>>) -> Result<Self> {
        for (ci, c) in clauses.iter().enumerate() {
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > num_vars) {
                return Err(Error::InvalidParams(format!(
                    "clause {} has literal {l} outside 1..={num_vars}",
                    ci + 1
                )));
            }
        }
        Ok(Cnf { num_vars, clauses })
    }

    pub fn is_satisfied(&self, values: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|&l| values[l.unsigned_abs() as usize - 1] == (l > 0)))
    }
}

/// Undirected graph on `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(Error::InvalidParams(format!("edge ({},{}) outside 1..={n}", u + 1, v + 1)));
        }
        Ok(Graph { n, edges })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Graph { n, edges }
    }

    /// Colours are 0-based.
    pub fn is_proper(&self, colouring: &[usize]) -> bool {
        self.edges.iter().all(|&(u, v)| colouring[u] != colouring[v])
    }
}

/// Hypergraph on `0..n`; every edge lists its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        for e in &edges {
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidParams(format!("hyperedge vertex {} outside 1..={n}", v + 1)));
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// Every edge has at least two colours.
    pub fn no_monochromatic_edge(&self, colouring: &[usize]) -> bool {
        self.edges
            .iter()
            .all(|e| e.iter().any(|&v| colouring[v] != colouring[e[0]]))
    }

    /// Every colour in `0..r` appears at least `t` times in every edge.
    pub fn each_colour_at_least(&self, colouring: &[usize], r: usize, t: usize) -> bool {
        self.edges.iter().all(|e| {
            (0..r).all(|c| e.iter().filter(|&&v| colouring[v] == c).count() >= t)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SourceProblem {
    SetSat { instance: Instance, params: SetSatParams },
    /// 3-CNF to be encoded with set size `s` over `d = s+1`.
    Cnf { formula: Cnf, s: usize },
    /// Graph colouring with `colors = s+1`.
    Coloring { graph: Graph, colors: usize },
    /// `gr`-uniform hypergraph promised an `r`-colouring with every colour
    /// at least `g-1` times per edge; a `c`-colouring without monochromatic
    /// edges is sought.
    HypergraphColoring { hypergraph: Hypergraph, g: usize, r: usize, c: usize },
}

fn lit(var: usize, set: ValueSet) -> Literal {
    Literal::new(var, set)
}

/// `N_i(x)`, 1-based `i`.
fn n_lit(var: usize, s: usize, i: usize) -> Literal {
    lit(var, ValueSet::all_but(s + 1, i as Value))
}

fn check_clauses(count: u128, budget: u128) -> Result<()> {
    if count > budget {
        return Err(Error::budget("target clauses", count, budget));
    }
    Ok(())
}

/// The target instance and its promise parameters.
pub fn apply_reduction(
    kind: ReductionKind,
    src: &SourceProblem,
    budget: u128,
) -> Result<(Instance, SetSatParams)> {
    match (kind, src) {
        (ReductionKind::From3Sat, SourceProblem::Cnf { formula, s }) => from_3sat(formula, *s, budget),
        (ReductionKind::FromGraphColoring, SourceProblem::Coloring { graph, colors }) => {
            from_graph_coloring(graph, *colors, budget)
        }
        (ReductionKind::FromHypergraphColoring, SourceProblem::HypergraphColoring { hypergraph, g, r, c }) => {
            from_hypergraph_coloring(hypergraph, *g, *r, *c, budget)
        }
        (
            ReductionKind::From3Sat | ReductionKind::FromGraphColoring | ReductionKind::FromHypergraphColoring,
            _,
        ) => Err(Error::Precondition(format!("{} needs a different source problem", kind.name()))),
        (_, SourceProblem::SetSat { instance, params }) => {
            if (instance.d(), instance.s(), instance.k()) != (params.d, params.s, params.k) {
                return Err(Error::Precondition(format!(
                    "instance (d={}, s={}, k={}) does not match {params}",
                    instance.d(),
                    instance.s(),
                    instance.k()
                )));
            }
            let target = kind.target_params(params)?;
            let inst = setsat_reduction(kind, instance, params, budget)?;
            Ok((inst, target))
        }
        _ => Err(Error::Precondition(format!("{} needs a SetSAT source", kind.name()))),
    }
}

fn setsat_reduction(kind: ReductionKind, inst: &Instance, p: &SetSatParams, budget: u128) -> Result<Instance> {
    let SetSatParams { d, s, k, .. } = *p;
    let n = inst.num_vars();
    let m = inst.num_clauses() as u128;
    match kind {
        ReductionKind::ShiftUp => {
            check_clauses(m, budget)?;
            let sy = lit(n, ValueSet::prefix(s));
            let cs = inst
                .clauses()
                .iter()
                .map(|c| {
                    let mut l = c.literals.clone();
                    l.push(sy);
                    Clause::new(l)
                })
                .collect();
            Instance::new(d, s, k + 1, n + 1, cs)
        }
        ReductionKind::ShiftDown => {
            check_clauses(m * k as u128, budget)?;
            let mut cs = Vec::new();
            for c in inst.clauses() {
                for drop in 0..k {
                    let l = c
                        .literals
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, l)| *l)
                        .collect();
                    cs.push(Clause::new(l));
                }
            }
            Instance::new(d, s, k - 1, n, cs)
        }
        ReductionKind::ExtendDomain => inst.with_domain(d + 1),
        ReductionKind::LiftSetSize => {
            check_clauses(m.saturating_mul(pow_sat((d - s) as u128, k as u32)), budget)?;
            let mut cs = Vec::new();
            for c in inst.clauses() {
                let extra: Vec<Vec<Value>> = c
                    .literals
                    .iter()
                    .map(|l| (1..=d as Value).filter(|&v| !l.set.contains(v)).collect())
                    .collect();
                let radix: Vec<usize> = extra.iter().map(|e| e.len()).collect();
                let mut digits = vec![0usize; k];
                loop {
                    let l = c
                        .literals
                        .iter()
                        .zip(&extra)
                        .zip(&digits)
                        .map(|((l, e), &dg)| lit(l.var, l.set.with(e[dg])))
                        .collect();
                    cs.push(Clause::new(l));
                    if !odometer_next(&mut digits, &radix) {
                        break;
                    }
                }
            }
            Instance::new(d, s + 1, k, n, cs)
        }
        ReductionKind::WidenClause => {
            check_clauses(m * (s as u128 + 1), budget)?;
            let mut cs = Vec::new();
            for c in inst.clauses() {
                for i in 1..=s + 1 {
                    let mut l = c.literals.clone();
                    l.push(n_lit(n, s, i));
                    cs.push(Clause::new(l));
                }
            }
            Instance::new(d, s, k + 1, n + 1, cs)
        }
        ReductionKind::PadTo2g { g } => {
            check_clauses(binomial(m as u64 + g as u64 - 1, g as u64), budget)?;
            let mut cs = Vec::new();
            let mut pick = vec![0usize; g];
            if m > 0 {
                loop {
                    let l = pick
                        .iter()
                        .flat_map(|&i| inst.clauses()[i].literals.iter().copied())
                        .collect();
                    cs.push(Clause::new(l));
                    // next non-decreasing index tuple
                    let mut p = g;
                    while p > 0 && pick[p - 1] == m as usize - 1 {
                        p -= 1;
                    }
                    if p == 0 {
                        break;
                    }
                    pick[p - 1] += 1;
                    let v = pick[p - 1];
                    pick[p..].iter_mut().for_each(|x| *x = v);
                }
            }
            Instance::new(d, s, 2 * g, n, cs)
        }
        _ => unreachable!("non-SetSAT kinds are dispatched earlier"),
    }
}

fn from_3sat(f: &Cnf, s: usize, budget: u128) -> Result<(Instance, SetSatParams)> {
    if s < 2 {
        return Err(Error::Precondition("from-3sat needs s >= 2".into()));
    }
    if let Some(i) = f.clauses.iter().position(|c| c.len() != 3) {
        return Err(Error::Precondition(format!("clause {} does not have exactly 3 literals", i + 1)));
    }
    let params = SetSatParams::new(s + 1, s, 1, 1, 3)?;
    check_clauses(f.clauses.len() as u128 + (f.num_vars * (s - 1)) as u128, budget)?;
    let mut cs: Vec<Clause> = f
        .clauses
        .iter()
        .map(|c| {
            // x is true (value 2) unless it is 1; ¬x is true unless it is 2
            Clause::new(
                c.iter()
                    .map(|&l| n_lit(l.unsigned_abs() as usize - 1, s, if l > 0 { 1 } else { 2 }))
                    .collect(),
            )
        })
        .collect();
    for i in 3..=s + 1 {
        for x in 0..f.num_vars {
            cs.push(Clause::new(vec![n_lit(x, s, i); 3]));
        }
    }
    Ok((Instance::new(s + 1, s, 3, f.num_vars, cs)?, params))
}

fn from_graph_coloring(gr: &Graph, colors: usize, budget: u128) -> Result<(Instance, SetSatParams)> {
    if colors < 2 {
        return Err(Error::Precondition("graph colouring needs at least 2 colours".into()));
    }
    let s = colors - 1;
    let params = SetSatParams::new(s + 1, s, 1, 1, 2)?;
    check_clauses((gr.edges.len() * colors) as u128, budget)?;
    let mut cs = Vec::new();
    for &(u, v) in &gr.edges {
        for i in 1..=colors {
            // S_{i,i}(x_u, x_v) forbids x_u = x_v = i
            cs.push(Clause::new(vec![n_lit(u, s, i), n_lit(v, s, i)]));
        }
    }
    Ok((Instance::new(s + 1, s, 2, gr.n, cs)?, params))
}

fn from_hypergraph_coloring(
    h: &Hypergraph,
    g: usize,
    r: usize,
    c: usize,
    budget: u128,
) -> Result<(Instance, SetSatParams)> {
    if r != c || r < 2 || g < 2 {
        return Err(Error::Precondition(format!(
            "hypergraph colouring reduction needs r = c >= 2 and g >= 2, got g={g}, r={r}, c={c}"
        )));
    }
    let s = r - 1;
    let width = g * r;
    if let Some(i) = h.edges.iter().position(|e| e.len() != width) {
        return Err(Error::Precondition(format!("hyperedge {} does not have {width} vertices", i + 1)));
    }
    let params = SetSatParams::new(s + 1, s, 1, s * (g - 1), width)?;
    check_clauses((h.edges.len() * r) as u128, budget)?;
    let mut cs = Vec::new();
    for e in &h.edges {
        for i in 1..=s + 1 {
            cs.push(Clause::new(e.iter().map(|&x| n_lit(x, s, i)).collect()));
        }
    }
    Ok((Instance::new(s + 1, s, width, h.n, cs)?, params))
}

/// Maps a promise witness of the source to an assignment of the target.
/// For graph and hypergraph sources the witness is a 0-based colouring,
/// for CNF sources value 2 means true.
pub fn forward_witness(kind: ReductionKind, src: &SourceProblem, witness: &[Value]) -> Assignment {
    let mut v = witness.to_vec();
    match (kind, src) {
        (ReductionKind::ShiftUp | ReductionKind::WidenClause, _) => v.push(1),
        (_, SourceProblem::Coloring { .. } | SourceProblem::HypergraphColoring { .. }) => {
            v.iter_mut().for_each(|x| *x += 1)
        }
        _ => {}
    }
    Assignment(v)
}

/// Reads a source solution off a target assignment.
pub fn backward_witness(kind: ReductionKind, src: &SourceProblem, target: &Assignment) -> Vec<Value> {
    let mut v = target.0.clone();
    match (kind, src) {
        (ReductionKind::ShiftUp | ReductionKind::WidenClause, _) => {
            v.pop();
        }
        (ReductionKind::ExtendDomain, SourceProblem::SetSat { params, .. }) => {
            v.iter_mut().filter(|x| **x as usize > params.d).for_each(|x| *x = 1)
        }
        (_, SourceProblem::Coloring { .. } | SourceProblem::HypergraphColoring { .. }) => {
            v.iter_mut().for_each(|x| *x -= 1)
        }
        _ => {}
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_g_satisfying;
    use crate::solvers::{brute_force_best_g, DEFAULT_BRUTE_BUDGET};

    const B: u128 = DEFAULT_REDUCTION_BUDGET;

    fn one_clause(d: usize, s: usize, k: usize) -> Instance {
        let l = (0..k).map(|i| lit(i, ValueSet::prefix(s))).collect();
        Instance::new(d, s, k, k, vec![Clause::new(l)]).unwrap()
    }

    #[test]
    fn shift_up_appends_fresh_literal() {
        let p = SetSatParams::new(3, 2, 1, 2, 3).unwrap();
        let src = SourceProblem::SetSat { instance: one_clause(3, 2, 3), params: p };
        let (t, tp) = apply_reduction(ReductionKind::ShiftUp, &src, B).unwrap();
        assert_eq!(tp, SetSatParams::new(3, 2, 2, 3, 4).unwrap());
        assert_eq!(t.num_vars(), 4);
        assert_eq!(t.clauses()[0].literals[3], lit(3, ValueSet::prefix(2)));
    }

    #[test]
    fn coloring_triangle_and_k4() {
        let k3 = SourceProblem::Coloring { graph: Graph::complete(3), colors: 3 };
        let (t, tp) = apply_reduction(ReductionKind::FromGraphColoring, &k3, B).unwrap();
        assert_eq!(t.num_clauses(), 9);
        assert_eq!(tp, SetSatParams::new(3, 2, 1, 1, 2).unwrap());
        assert!(brute_force_best_g(&t, DEFAULT_BRUTE_BUDGET).unwrap().0 >= 1);
        let k4 = SourceProblem::Coloring { graph: Graph::complete(4), colors: 3 };
        let (t, _) = apply_reduction(ReductionKind::FromGraphColoring, &k4, B).unwrap();
        assert_eq!(brute_force_best_g(&t, DEFAULT_BRUTE_BUDGET).unwrap().0, 0);
    }

    #[test]
    fn lift_set_size_count() {
        let p = SetSatParams::new(3, 1, 1, 1, 2).unwrap();
        let src = SourceProblem::SetSat { instance: one_clause(3, 1, 2), params: p };
        let (t, tp) = apply_reduction(ReductionKind::LiftSetSize, &src, B).unwrap();
        assert_eq!(t.num_clauses(), 4);
        assert_eq!(tp.s, 2);
        assert!(t.clauses().iter().all(|c| c.literals.iter().all(|l| l.set.len() == 2)));
    }

    #[test]
    fn hypergraph_edge() {
        let h = Hypergraph::new(6, vec![(0..6).collect()]).unwrap();
        let src = SourceProblem::HypergraphColoring { hypergraph: h, g: 2, r: 3, c: 3 };
        let (t, tp) = apply_reduction(ReductionKind::FromHypergraphColoring, &src, B).unwrap();
        assert_eq!(t.num_clauses(), 3);
        assert!(t.clauses().iter().all(|c| c.width() == 6));
        assert_eq!(tp, SetSatParams::new(3, 2, 1, 2, 6).unwrap());
        let w = forward_witness(ReductionKind::FromHypergraphColoring, &src, &[0, 0, 1, 1, 2, 2]);
        assert!(is_g_satisfying(&w, &t, 2));
    }

    #[test]
    fn pad_multisets() {
        let p = SetSatParams::new(3, 2, 1, 1, 2).unwrap();
        let c = |a: usize, b: usize| Clause::new(vec![lit(a, ValueSet::prefix(2)), lit(b, ValueSet::prefix(2))]);
        let inst = Instance::new(3, 2, 2, 3, vec![c(0, 1), c(1, 2), c(0, 2)]).unwrap();
        let src = SourceProblem::SetSat { instance: inst, params: p };
        let (t, tp) = apply_reduction(ReductionKind::PadTo2g { g: 2 }, &src, B).unwrap();
        assert_eq!(t.num_clauses(), 6);
        assert_eq!((tp.g, tp.k), (2, 4));
    }

    #[test]
    fn from_3sat_encoding() {
        let f = Cnf::new(3, vec![vec![1, -2, -3]]).unwrap();
        let src = SourceProblem::Cnf { formula: f, s: 3 };
        let (t, _) = apply_reduction(ReductionKind::From3Sat, &src, B).unwrap();
        // 1 clause plus (s-1)·n restriction clauses
        assert_eq!(t.num_clauses(), 1 + 2 * 3);
        let c = &t.clauses()[0];
        assert_eq!(c.literals[0].set, ValueSet::from_values([2, 3, 4]));
        assert_eq!(c.literals[1].set, ValueSet::from_values([1, 3, 4]));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in ReductionKind::all(3) {
            assert_eq!(ReductionKind::parse(k.name(), Some(3)).unwrap(), k);
        }
        assert!("pad-to-2g".parse::<ReductionKind>().is_err());
        assert!(ReductionKind::parse("bogus", None).is_err());
    }

    #[test]
    fn parameter_arithmetic() {
        let p = SetSatParams::new(4, 2, 2, 3, 5).unwrap();
        assert_eq!(ReductionKind::ShiftDown.target_params(&p).unwrap(), SetSatParams::new(4, 2, 1, 2, 4).unwrap());
        assert_eq!(ReductionKind::ExtendDomain.target_params(&p).unwrap().d, 5);
        assert_eq!(ReductionKind::WidenClause.target_params(&p).unwrap().k, 6);
        assert!(ReductionKind::LiftSetSize.target_params(&p).is_err());
        let one = SetSatParams::new(3, 2, 1, 2, 3).unwrap();
        assert!(ReductionKind::ShiftDown.target_params(&one).is_err());
    }
}
