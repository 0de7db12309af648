use std::collections::HashMap;

use super::instance::{
    decode_tuple, ratio, tuple_radix, BipartiteAssignment, BipartiteLC, LayeredAssignment, LayeredLC,
};
use crate::combin::{binomial, pow_sat};
use crate::{Error, Fraction, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeReport {
    pub assignment: BipartiteAssignment,
    /// Fraction of source constraints satisfied by `assignment`.
    pub achieved: Fraction,
    /// Weakly satisfied fraction of chains under the layered assignment.
    pub weak: Fraction,
    /// `weak / C(ℓ+1, 2)`.
    pub threshold: Fraction,
    /// Layers `i < j` and 0-based tuple coordinate the decoding came from.
    pub origin: (usize, usize, usize),
}

/// Groups `X_i` by all tuple coordinates except `k`; each class lists, for
/// every source variable in slot `k`, the layer variable holding it.
fn classes(src: &BipartiteLC, ell: usize, i: usize, size: usize, k: usize) -> Vec<Vec<usize>> {
    let radix = tuple_radix(src, ell, i);
    let width = radix[k];
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for x in 0..size {
        let mut t = decode_tuple(&radix, x);
        let slot = t[k];
        t[k] = 0;
        let id = *ids.entry(t).or_insert_with(|| {
            out.push(vec![usize::MAX; width]);
            out.len() - 1
        });
        out[id][slot] = x;
    }
    out
}

/// Reads coordinate `k` of the tuple value `v ∈ [m]^ℓ`.
fn digit(v: usize, m: usize, ell: usize, k: usize) -> usize {
    (v / m.pow((ell - 1 - k) as u32)) % m
}

/// Decodes a layered assignment back to the source instance. Every layer
/// pair `i < j`, coordinate `k ∈ i+1..j` and pair of classes (tuples
/// agreeing off `k`) yields a candidate reading `σ'(y)`, `σ'(z)` off the
/// `k`-th value coordinates; the best candidate is returned, ties going to
/// the first in that order.
pub fn decode_layered(llc: &LayeredLC, sigma: &LayeredAssignment, budget: u128) -> Result<DecodeReport> {
    let src = &llc.require_provenance()?.source;
    let weak = llc.weak_sat_fraction(sigma)?;
    let ell = llc.ell();
    let threshold = weak / Fraction::from_integer(binomial(ell as u64 + 1, 2) as u64);
    let m = src.m();
    let mut work: u128 = 0;
    let mut best: Option<(usize, BipartiteAssignment, (usize, usize, usize))> = None;
    for i in 0..ell {
        for j in i + 1..=ell {
            for k in i..j {
                let ci = classes(src, ell, i, llc.layers()[i], k);
                let cj = classes(src, ell, j, llc.layers()[j], k);
                work = work.saturating_add(
                    (ci.len() as u128 * cj.len() as u128).saturating_mul(src.constraints().len().max(1) as u128),
                );
                if work > budget {
                    return Err(Error::budget("decode candidates", work, budget));
                }
                let ys: Vec<Vec<usize>> = ci
                    .iter()
                    .map(|cl| cl.iter().map(|&x| digit(sigma[i][x], m, ell, k)).collect())
                    .collect();
                let zs: Vec<Vec<usize>> = cj
                    .iter()
                    .map(|cl| cl.iter().map(|&x| digit(sigma[j][x], m, ell, k)).collect())
                    .collect();
                for y in &ys {
                    for z in &zs {
                        let cand = BipartiteAssignment { y: y.clone(), z: z.clone() };
                        let sat = src.satisfied(&cand)?;
                        if best.as_ref().map_or(true, |b| sat > b.0) {
                            best = Some((sat, cand, (i, j, k)));
                        }
                    }
                }
            }
        }
    }
    let (sat, assignment, origin) = best.expect("ell >= 1 gives a candidate");
    Ok(DecodeReport {
        assignment,
        achieved: ratio(sat, src.constraints().len()),
        weak,
        threshold,
        origin,
    })
}

/// Optimal assignment of a bipartite instance: exhaustive over `Y`, each
/// `z` then takes its most supported value.
pub fn brute_solve_bipartite(blc: &BipartiteLC, budget: u128) -> Result<(BipartiteAssignment, Fraction)> {
    let (m, ny, nz) = (blc.m(), blc.ny(), blc.nz());
    let total = pow_sat(m as u128, ny as u32);
    if total > budget {
        return Err(Error::budget("assignments m^|Y|", total, budget));
    }
    let mut into: Vec<Vec<usize>> = vec![Vec::new(); nz];
    for (ci, c) in blc.constraints().iter().enumerate() {
        into[c.z].push(ci);
    }
    let mut y = vec![0usize; ny];
    let radix = vec![m; ny];
    let mut best: Option<(usize, BipartiteAssignment)> = None;
    let mut votes = vec![0usize; m];
    loop {
        let mut sat = 0;
        let mut z = vec![0usize; nz];
        for (zi, cs) in into.iter().enumerate() {
            votes.iter_mut().for_each(|v| *v = 0);
            for &ci in cs {
                let c = &blc.constraints()[ci];
                votes[c.map[y[c.y]]] += 1;
            }
            let (val, cnt) = votes
                .iter()
                .enumerate()
                .fold((0, 0), |b, (v, &c)| if c > b.1 { (v, c) } else { b });
            z[zi] = val;
            sat += cnt;
        }
        if best.as_ref().map_or(true, |b| sat > b.0) {
            best = Some((sat, BipartiteAssignment { y: y.clone(), z }));
            if sat == blc.constraints().len() {
                break;
            }
        }
        if !crate::combin::odometer_next(&mut y, &radix) {
            break;
        }
    }
    let (sat, a) = best.expect("at least one assignment");
    Ok((a, ratio(sat, blc.constraints().len())))
}

/// Assignment maximizing the weakly satisfied fraction of chains, by branch
/// and bound over variables that lie on a chain. `budget` bounds the number
/// of search nodes.
pub fn brute_solve_layered(llc: &LayeredLC, budget: u128) -> Result<(LayeredAssignment, Fraction)> {
    let chains = llc.chains(budget)?;
    let edges: Vec<Vec<usize>> = chains.iter().map(|c| llc.chain_edges(c)).collect();
    let mut on_chain: Vec<Vec<usize>> = vec![Vec::new(); llc.constraints().len()];
    for (h, es) in edges.iter().enumerate() {
        for &e in es {
            on_chain[e].push(h);
        }
    }
    // branch over chain variables in layer-major order
    let mut used = vec![false; llc.num_vars()];
    for c in &chains {
        for (i, &x) in c.vars.iter().enumerate() {
            used[llc.var_id(i, x)] = true;
        }
    }
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (i, &n) in llc.layers().iter().enumerate() {
        for x in 0..n {
            if used[llc.var_id(i, x)] {
                order.push((i, x));
            }
        }
    }
    let mut pos = vec![usize::MAX; llc.num_vars()];
    for (p, &(i, x)) in order.iter().enumerate() {
        pos[llc.var_id(i, x)] = p;
    }
    // constraints decided when the later endpoint is assigned
    let mut closing: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
    for (ci, c) in llc.constraints().iter().enumerate() {
        if on_chain[ci].is_empty() {
            continue;
        }
        let p = pos[llc.var_id(c.i, c.x)].max(pos[llc.var_id(c.j, c.y)]);
        closing[p].push(ci);
    }
    struct Search<'a> {
        llc: &'a LayeredLC,
        order: Vec<(usize, usize)>,
        closing: Vec<Vec<usize>>,
        on_chain: Vec<Vec<usize>>,
        sat: Vec<u32>,
        open: Vec<u32>,
        dead: usize,
        total: usize,
        best: usize,
        best_asg: LayeredAssignment,
        asg: LayeredAssignment,
        nodes: u128,
        budget: u128,
    }
    impl Search<'_> {
        fn run(&mut self, p: usize) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::budget("search nodes", self.nodes, self.budget));
            }
            if p == self.order.len() {
                let val = self.total - self.dead;
                if val > self.best || self.best_asg.is_empty() {
                    self.best = val;
                    self.best_asg = self.asg.clone();
                }
                return Ok(());
            }
            let (i, x) = self.order[p];
            for v in 0..self.llc.m() {
                self.asg[i][x] = v;
                let mut touched: Vec<(usize, bool)> = Vec::new();
                for &ci in &self.closing[p] {
                    let ok = self.llc.is_satisfied(&self.llc.constraints()[ci], &self.asg);
                    touched.push((ci, ok));
                    for &h in &self.on_chain[ci] {
                        self.open[h] -= 1;
                        if ok {
                            self.sat[h] += 1;
                        }
                        if self.open[h] == 0 && self.sat[h] == 0 {
                            self.dead += 1;
                        }
                    }
                }
                if self.total - self.dead > self.best || self.best_asg.is_empty() {
                    self.run(p + 1)?;
                }
                for &(ci, ok) in touched.iter().rev() {
                    for &h in &self.on_chain[ci] {
                        if self.open[h] == 0 && self.sat[h] == 0 {
                            self.dead -= 1;
                        }
                        self.open[h] += 1;
                        if ok {
                            self.sat[h] -= 1;
                        }
                    }
                }
                if self.best == self.total && !self.best_asg.is_empty() {
                    break;
                }
            }
            self.asg[i][x] = 0;
            Ok(())
        }
    }
    let asg: LayeredAssignment = llc.layers().iter().map(|&n| vec![0; n]).collect();
    let mut s = Search {
        llc,
        order,
        closing,
        open: edges.iter().map(|e| e.len() as u32).collect(),
        sat: vec![0; chains.len()],
        on_chain,
        dead: 0,
        total: chains.len(),
        best: 0,
        best_asg: Vec::new(),
        asg,
        nodes: 0,
        budget,
    };
    s.run(0)?;
    Ok((s.best_asg, ratio(s.best, s.total)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::labelcover::instance::{build_layered, LcEdge, DEFAULT_LC_BUDGET};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn contradictory_pair_is_half() {
        let b = BipartiteLC::new(
            2,
            1,
            1,
            vec![LcEdge { y: 0, z: 0, map: vec![0, 0] }, LcEdge { y: 0, z: 0, map: vec![1, 1] }],
        )
        .unwrap();
        assert_eq!(brute_solve_bipartite(&b, DEFAULT_LC_BUDGET).unwrap().1, Fraction::new(1, 2));
    }

    #[test]
    fn lifted_assignment_decodes_fully() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (b, sigma) = BipartiteLC::random_biregular(3, 3, 2, 3, true, &mut rng).unwrap();
        let l = build_layered(&b, 2, DEFAULT_LC_BUDGET).unwrap();
        let lifted = l.lift_assignment(&sigma.unwrap()).unwrap();
        let r = decode_layered(&l, &lifted, DEFAULT_LC_BUDGET).unwrap();
        assert_eq!(r.achieved, Fraction::from_integer(1));
        assert_eq!(r.threshold, Fraction::new(1, 3));
    }

    #[test]
    fn decode_meets_threshold_on_random_assignments() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (b, _) = BipartiteLC::random_biregular(4, 4, 2, 3, false, &mut rng).unwrap();
        let l = build_layered(&b, 2, DEFAULT_LC_BUDGET).unwrap();
        for _ in 0..30 {
            let a: LayeredAssignment =
                l.layers().iter().map(|&n| (0..n).map(|_| rng.gen_range(0..l.m())).collect()).collect();
            let r = decode_layered(&l, &a, DEFAULT_LC_BUDGET).unwrap();
            assert!(r.achieved >= r.threshold, "{r:?}");
        }
    }

    #[test]
    fn hand_written_layered_is_rejected() {
        let l = LayeredLC::new(1, 1, vec![1, 1], vec![]).unwrap();
        assert!(matches!(
            decode_layered(&l, &vec![vec![0], vec![0]], DEFAULT_LC_BUDGET),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn layered_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let (b, _) = BipartiteLC::random_biregular(2, 2, 2, 2, true, &mut rng).unwrap();
        let l = build_layered(&b, 2, DEFAULT_LC_BUDGET).unwrap();
        let (a, frac) = brute_solve_layered(&l, DEFAULT_LC_BUDGET).unwrap();
        assert_eq!(frac, Fraction::from_integer(1));
        assert_eq!(l.weak_sat_fraction(&a).unwrap(), frac);
        let (_, f1) = brute_solve_bipartite(&b, DEFAULT_LC_BUDGET).unwrap();
        assert_eq!(f1, Fraction::from_integer(1));
    }
}
