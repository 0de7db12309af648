use std::collections::HashSet;
use std::fmt;

use num_rational::Ratio;

use super::instance::{ratio, BipartiteLC, Chain, LayeredAssignment, LayeredLC};
use crate::combin::{odometer_next, pow_sat};
use crate::model::SetSatParams;
use crate::polymorph::{find_small_smug_set, for_each_input, qm_minor_maps, CoordSet, FunctionTable, MinorMap};
use crate::{Error, Fraction, Result, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    U,
    V,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::U => "U",
            Side::V => "V",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Symbol {
    pub name: String,
    pub side: Side,
    pub arity: usize,
}

/// `f →π g`: `g(x_1..x_m) ≈ f(x_π(1), ..., x_π(n))`, symbols by index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorIdentity {
    pub f: usize,
    pub g: usize,
    pub pi: MinorMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMinorCondition {
    symbols: Vec<Symbol>,
    identities: Vec<MinorIdentity>,
}

impl BipartiteMinorCondition {
    pub fn new(symbols: Vec<Symbol>, identities: Vec<MinorIdentity>) -> Result<Self> {
        let mut names = HashSet::new();
        for s in &symbols {
            if s.name.is_empty() || s.name.contains(char::is_whitespace) {
                return Err(Error::InvalidParams(format!("invalid symbol name `{}`", s.name)));
            }
            if s.arity == 0 {
                return Err(Error::InvalidParams(format!("symbol `{}` has arity 0", s.name)));
            }
            if !names.insert(s.name.as_str()) {
                return Err(Error::InvalidParams(format!("duplicate symbol `{}`", s.name)));
            }
        }
        for id in &identities {
            let (f, g) = match (symbols.get(id.f), symbols.get(id.g)) {
                (Some(f), Some(g)) => (f, g),
                _ => return Err(Error::InvalidParams("identity refers to an unknown symbol".into())),
            };
            if id.f == id.g {
                return Err(Error::InvalidParams(format!("identity from `{}` to itself", f.name)));
            }
            if id.pi.source_arity() != f.arity || id.pi.target_arity() != g.arity {
                return Err(Error::ArityMismatch {
                    expected: f.arity,
                    got: id.pi.source_arity(),
                });
            }
        }
        Ok(BipartiteMinorCondition { symbols, identities })
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn identities(&self) -> &[MinorIdentity] {
        &self.identities
    }

    pub fn symbol_index(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }

    /// Every identity goes from a `V` symbol to a `U` symbol.
    pub fn is_bipartite(&self) -> bool {
        self.identities
            .iter()
            .all(|id| self.symbols[id.f].side == Side::V && self.symbols[id.g].side == Side::U)
    }

    /// Identities satisfied when symbol `i` is the projection to `choice[i]`.
    pub fn satisfied_by_projections(&self, choice: &[usize]) -> usize {
        self.identities
            .iter()
            .filter(|id| id.pi.apply(choice[id.f]) == choice[id.g])
            .count()
    }

    /// Identities `ξ(f) →π ξ(g)` that hold, checked on every input of `g`.
    pub fn satisfied_by(&self, xi: &MinionAssignment, budget: u128) -> Result<usize> {
        if xi.tables.len() != self.symbols.len() {
            return Err(Error::InvalidParams("assignment does not cover every symbol".into()));
        }
        let mut count = 0;
        for id in &self.identities {
            let (f, g) = (&xi.tables[id.f], &xi.tables[id.g]);
            let inputs = pow_sat(g.d() as u128, g.arity() as u32);
            if inputs > budget {
                return Err(Error::budget("minor check inputs", inputs, budget));
            }
            let mut holds = true;
            let mut buf: Vec<Value> = vec![0; f.arity()];
            for_each_input(g.d(), g.arity(), |_, x| {
                if holds {
                    for (i, b) in buf.iter_mut().enumerate() {
                        *b = x[id.pi.apply(i)];
                    }
                    holds = f.eval(&buf) == g.eval(x);
                }
            });
            count += holds as usize;
        }
        Ok(count)
    }

    /// `f_y →φ f_z` per constraint; `y` symbols on side `V`, `z` on `U`.
    pub fn from_bipartite(blc: &BipartiteLC) -> Self {
        let m = blc.m();
        let mut symbols: Vec<Symbol> = (0..blc.ny())
            .map(|y| Symbol { name: format!("y{}", y + 1), side: Side::V, arity: m })
            .collect();
        symbols.extend((0..blc.nz()).map(|z| Symbol { name: format!("z{}", z + 1), side: Side::U, arity: m }));
        let identities = blc
            .constraints()
            .iter()
            .map(|c| MinorIdentity {
                f: c.y,
                g: blc.ny() + c.z,
                pi: MinorMap::new(c.map.clone(), m).expect("validated constraint"),
            })
            .collect();
        Self::new(symbols, identities).expect("well-formed")
    }

    /// `f_x →φ f_y` per constraint, one symbol `x<i>_<n>` per variable in
    /// layer-major order. Even layers are on side `V` and odd layers on `U`,
    /// so only identities between layers of different parity are bipartite.
    pub fn from_layered(llc: &LayeredLC) -> Self {
        let m = llc.m();
        let mut symbols = Vec::with_capacity(llc.num_vars());
        for (i, &n) in llc.layers().iter().enumerate() {
            let side = if i % 2 == 0 { Side::V } else { Side::U };
            symbols.extend((0..n).map(|x| Symbol { name: format!("x{i}_{}", x + 1), side, arity: m }));
        }
        let identities = llc
            .constraints()
            .iter()
            .map(|c| MinorIdentity {
                f: llc.var_id(c.i, c.x),
                g: llc.var_id(c.j, c.y),
                pi: MinorMap::new(c.map.clone(), m).expect("validated constraint"),
            })
            .collect();
        Self::new(symbols, identities).expect("well-formed")
    }

    /// `f →π_i g` for `i = 1..m`, `f` of arity `C(m,3)+1` and `g` of arity
    /// `m+1`.
    pub fn qm(m: usize) -> Result<Self> {
        let maps = qm_minor_maps(m);
        if maps.is_empty() || m < 4 {
            return Err(Error::InvalidParams(format!("q_m needs m >= 4, got {m}")));
        }
        let symbols = vec![
            Symbol { name: "f".into(), side: Side::V, arity: maps[0].source_arity() },
            Symbol { name: "g".into(), side: Side::U, arity: m + 1 },
        ];
        let identities = maps.into_iter().map(|pi| MinorIdentity { f: 0, g: 1, pi }).collect();
        Self::new(symbols, identities)
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.symbols.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for id in &self.identities {
            let (a, b) = (find(&mut parent, id.f), find(&mut parent, id.g));
            parent[a.max(b)] = a.min(b);
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for s in 0..n {
            let r = find(&mut parent, s);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(s);
        }
        groups
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Robustness {
    /// Most identities satisfiable at once by projections.
    pub max: usize,
    pub total: usize,
    pub fraction: Fraction,
    /// A projection coordinate per symbol attaining `max`.
    pub choice: Vec<usize>,
}

/// Exact maximum number of identities satisfiable by projections. Works per
/// connected component; symbols that only occur as targets are not
/// enumerated but take the coordinate most identities point to. `budget`
/// bounds the product of enumerated arities in each component.
pub fn projection_robustness(sigma: &BipartiteMinorCondition, budget: u128) -> Result<Robustness> {
    let n = sigma.symbols.len();
    let mut choice = vec![0usize; n];
    let mut is_source = vec![false; n];
    for id in &sigma.identities {
        is_source[id.f] = true;
    }
    let mut comp_of = vec![0usize; n];
    let comps = sigma.components();
    for (ci, c) in comps.iter().enumerate() {
        for &s in c {
            comp_of[s] = ci;
        }
    }
    let mut ids_of: Vec<Vec<usize>> = vec![Vec::new(); comps.len()];
    for (ii, id) in sigma.identities.iter().enumerate() {
        ids_of[comp_of[id.f]].push(ii);
    }
    let mut max = 0;
    for (ci, comp) in comps.iter().enumerate() {
        if ids_of[ci].is_empty() {
            continue;
        }
        let free: Vec<usize> = comp.iter().copied().filter(|&s| is_source[s]).collect();
        let voted: Vec<usize> = comp.iter().copied().filter(|&s| !is_source[s]).collect();
        let radix: Vec<usize> = free.iter().map(|&s| sigma.symbols[s].arity).collect();
        let space = radix.iter().fold(1u128, |a, &r| a.saturating_mul(r as u128));
        if space > budget {
            return Err(Error::budget("projection choices", space, budget));
        }
        let mut local = vec![0usize; n];
        let mut votes: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &g in &voted {
            votes[g] = vec![0; sigma.symbols[g].arity];
        }
        let mut digits = vec![0usize; free.len()];
        let mut best: Option<(usize, Vec<usize>)> = None;
        loop {
            for (p, &s) in free.iter().enumerate() {
                local[s] = digits[p];
            }
            for &g in &voted {
                votes[g].iter_mut().for_each(|v| *v = 0);
            }
            let mut sat = 0;
            for &ii in &ids_of[ci] {
                let id = &sigma.identities[ii];
                let target = id.pi.apply(local[id.f]);
                if is_source[id.g] {
                    sat += (target == local[id.g]) as usize;
                } else {
                    votes[id.g][target] += 1;
                }
            }
            for &g in &voted {
                let (c, v) = votes[g]
                    .iter()
                    .enumerate()
                    .fold((0, 0), |b, (c, &v)| if v > b.1 { (c, v) } else { b });
                local[g] = c;
                sat += v;
            }
            if best.as_ref().map_or(true, |b| sat > b.0) {
                best = Some((sat, comp.iter().map(|&s| local[s]).collect()));
                if sat == ids_of[ci].len() {
                    break;
                }
            }
            if !odometer_next(&mut digits, &radix) {
                break;
            }
        }
        let (sat, vals) = best.expect("nonempty component");
        max += sat;
        for (&s, v) in comp.iter().zip(vals) {
            choice[s] = v;
        }
    }
    let total = sigma.identities.len();
    Ok(Robustness { max, total, fraction: ratio(max, total), choice })
}

/// Plain exhaustive search over one coordinate per symbol, for
/// cross-checking [`projection_robustness`].
pub fn projection_robustness_brute(sigma: &BipartiteMinorCondition, budget: u128) -> Result<Robustness> {
    let radix: Vec<usize> = sigma.symbols.iter().map(|s| s.arity).collect();
    let space = radix.iter().fold(1u128, |a, &r| a.saturating_mul(r as u128));
    if space > budget {
        return Err(Error::budget("projection choices", space, budget));
    }
    let mut digits = vec![0usize; radix.len()];
    let mut best = (0usize, digits.clone());
    loop {
        let sat = sigma.satisfied_by_projections(&digits);
        if sat > best.0 {
            best = (sat, digits.clone());
        }
        if !odometer_next(&mut digits, &radix) {
            break;
        }
    }
    let total = sigma.identities.len();
    Ok(Robustness { max: best.0, total, fraction: ratio(best.0, total), choice: best.1 })
}

/// A function for every symbol of a minor condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinionAssignment {
    tables: Vec<FunctionTable>,
}

impl MinionAssignment {
    pub fn new(sigma: &BipartiteMinorCondition, tables: Vec<FunctionTable>) -> Result<Self> {
        if tables.len() != sigma.symbols.len() {
            return Err(Error::InvalidParams(format!(
                "{} tables for {} symbols",
                tables.len(),
                sigma.symbols.len()
            )));
        }
        for (s, t) in sigma.symbols.iter().zip(&tables) {
            if s.arity != t.arity() {
                return Err(Error::ArityMismatch { expected: s.arity, got: t.arity() });
            }
        }
        Ok(MinionAssignment { tables })
    }

    pub fn tables(&self) -> &[FunctionTable] {
        &self.tables
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinionDecodeReport {
    pub assignment: LayeredAssignment,
    /// `sel` of each variable's function, layer-major.
    pub sel: Vec<CoordSet>,
    pub k_sel: usize,
    /// Weakly satisfied fraction of chains under `assignment`.
    pub fraction: Fraction,
    /// Expected weak fraction when every variable picks uniformly from `sel`.
    pub expectation: Fraction,
    /// `1/k_sel²`.
    pub threshold: Fraction,
}

type Wide = Ratio<u128>;

/// Probability that a chain is weakly satisfied when unfixed variables pick
/// uniformly from their `sel`.
fn chain_probability(
    llc: &LayeredLC,
    chain: &Chain,
    edges: &[usize],
    opts: &[Vec<usize>],
    fixed: &[Option<usize>],
) -> Wide {
    let ids: Vec<usize> = chain.vars.iter().enumerate().map(|(i, &x)| llc.var_id(i, x)).collect();
    let choices: Vec<Vec<usize>> = ids
        .iter()
        .map(|&v| match fixed[v] {
            Some(c) => vec![c],
            None => opts[v].clone(),
        })
        .collect();
    let radix: Vec<usize> = choices.iter().map(|c| c.len()).collect();
    let mut digits = vec![0usize; radix.len()];
    let (mut hit, mut all) = (0u128, 0u128);
    loop {
        all += 1;
        let val = |layer: usize| choices[layer][digits[layer]];
        let weak = edges.iter().any(|&e| {
            let c = &llc.constraints()[e];
            c.map[val(c.i)] == val(c.j)
        });
        hit += weak as u128;
        if !odometer_next(&mut digits, &radix) {
            break;
        }
    }
    Wide::new(hit, all)
}

fn narrow(w: Wide) -> Result<Fraction> {
    match (u64::try_from(*w.numer()), u64::try_from(*w.denom())) {
        (Ok(n), Ok(d)) => Ok(Fraction::new(n, d)),
        _ => Err(Error::budget("fraction denominator", *w.denom(), u64::MAX as u128)),
    }
}

/// Decodes functions assigned to the symbols of a layered instance's minor
/// condition into a label assignment. Each variable `x` reads `sel(f_x)`,
/// the small smug set found for its function, and the random choice of a
/// coordinate from `sel` is derandomized by conditional expectations in
/// layer-major order.
pub fn decode_minion_assignment(
    llc: &LayeredLC,
    xi: &MinionAssignment,
    params: &SetSatParams,
    budget: u128,
) -> Result<MinionDecodeReport> {
    let sigma = BipartiteMinorCondition::from_layered(llc);
    if xi.tables.len() != sigma.symbols.len() {
        return Err(Error::InvalidParams("assignment does not cover every variable".into()));
    }
    let mut sel = Vec::with_capacity(xi.tables.len());
    for t in &xi.tables {
        if t.arity() != llc.m() {
            return Err(Error::ArityMismatch { expected: llc.m(), got: t.arity() });
        }
        sel.push(find_small_smug_set(t, params, budget)?.set.set);
    }
    let opts: Vec<Vec<usize>> = sel.iter().map(|s| s.iter().collect()).collect();
    let k_sel = opts.iter().map(|o| o.len()).max().unwrap_or(1).max(1);
    let chains = llc.chains(budget)?;
    let edges: Vec<Vec<usize>> = chains.iter().map(|c| llc.chain_edges(c)).collect();
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); llc.num_vars()];
    for (h, c) in chains.iter().enumerate() {
        for (i, &x) in c.vars.iter().enumerate() {
            through[llc.var_id(i, x)].push(h);
        }
    }
    let mut fixed: Vec<Option<usize>> = vec![None; llc.num_vars()];
    let total = chains
        .iter()
        .zip(&edges)
        .fold(Wide::from_integer(0), |a, (c, e)| a + chain_probability(llc, c, e, &opts, &fixed));
    let expectation = if chains.is_empty() {
        Fraction::from_integer(1)
    } else {
        narrow(total / Wide::from_integer(chains.len() as u128))?
    };
    for v in 0..llc.num_vars() {
        let mut best: Option<(Wide, usize)> = None;
        for &c in &opts[v] {
            fixed[v] = Some(c);
            let score = through[v]
                .iter()
                .fold(Wide::from_integer(0), |a, &h| a + chain_probability(llc, &chains[h], &edges[h], &opts, &fixed));
            if best.as_ref().map_or(true, |b| score > b.0) {
                best = Some((score, c));
            }
        }
        fixed[v] = best.map(|b| b.1);
    }
    let mut assignment: LayeredAssignment = llc.layers().iter().map(|&n| vec![0; n]).collect();
    for (i, &n) in llc.layers().iter().enumerate() {
        for x in 0..n {
            assignment[i][x] = fixed[llc.var_id(i, x)].unwrap_or(0);
        }
    }
    let fraction = llc.weak_sat_fraction(&assignment)?;
    Ok(MinionDecodeReport {
        assignment,
        sel,
        k_sel,
        fraction,
        expectation,
        threshold: Fraction::new(1, (k_sel * k_sel) as u64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelcover::instance::{build_layered, LcEdge, DEFAULT_LC_BUDGET};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn qm_robustness() {
        for m in [4, 5, 6, 8] {
            let s = BipartiteMinorCondition::qm(m).unwrap();
            assert!(s.is_bipartite());
            let r = projection_robustness(&s, DEFAULT_LC_BUDGET).unwrap();
            assert_eq!(r.max, 3, "m={m}");
            assert_eq!(r.fraction, Fraction::new(3, m as u64));
            assert_eq!(projection_robustness_brute(&s, DEFAULT_LC_BUDGET).unwrap().max, 3);
            assert_eq!(s.satisfied_by_projections(&r.choice), 3);
        }
    }

    #[test]
    fn satisfiable_cover_is_trivial() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let (b, sigma) = BipartiteLC::random_biregular(3, 3, 2, 3, true, &mut rng).unwrap();
        let s = BipartiteMinorCondition::from_bipartite(&b);
        assert!(s.is_bipartite());
        let r = projection_robustness(&s, DEFAULT_LC_BUDGET).unwrap();
        assert_eq!(r.fraction, Fraction::from_integer(1));
        let sigma = sigma.unwrap();
        let choice: Vec<usize> = sigma.y.iter().chain(&sigma.z).copied().collect();
        assert_eq!(s.satisfied_by_projections(&choice), b.constraints().len());
        let tables = choice.iter().map(|&c| FunctionTable::dictator(2, 3, c).unwrap()).collect();
        let xi = MinionAssignment::new(&s, tables).unwrap();
        assert_eq!(s.satisfied_by(&xi, DEFAULT_LC_BUDGET).unwrap(), b.constraints().len());
    }

    #[test]
    fn single_constraint_identity() {
        let b = BipartiteLC::new(2, 1, 1, vec![LcEdge { y: 0, z: 0, map: vec![1, 0] }]).unwrap();
        let s = BipartiteMinorCondition::from_bipartite(&b);
        assert_eq!(s.identities().len(), 1);
        assert_eq!(s.identities()[0].pi.as_slice(), &[1, 0]);
        assert_eq!((s.identities()[0].f, s.identities()[0].g), (0, 1));
    }

    #[test]
    fn dictators_decode_to_the_labels() {
        let p = SetSatParams::new(3, 2, 1, 3, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let (b, sigma) = BipartiteLC::random_biregular(2, 2, 1, 2, true, &mut rng).unwrap();
        let l = build_layered(&b, 2, DEFAULT_LC_BUDGET).unwrap();
        let lifted = l.lift_assignment(&sigma.unwrap()).unwrap();
        let tables = lifted
            .iter()
            .flatten()
            .map(|&c| FunctionTable::dictator(3, l.m(), c).unwrap())
            .collect();
        let s = BipartiteMinorCondition::from_layered(&l);
        let xi = MinionAssignment::new(&s, tables).unwrap();
        let r = decode_minion_assignment(&l, &xi, &p, DEFAULT_LC_BUDGET).unwrap();
        assert_eq!(r.assignment, lifted);
        assert_eq!(r.fraction, Fraction::from_integer(1));
        assert_eq!(r.threshold, Fraction::from_integer(1));
    }
}
