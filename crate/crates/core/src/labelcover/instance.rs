use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::combin::{odometer_next, pow_sat};
use crate::{Error, Fraction, Result};

/// Default limit on instance sizes and enumerations in this module.
pub const DEFAULT_LC_BUDGET: u128 = 1 << 24;

/// `num/den`, with an empty denominator counting as fully satisfied.
pub(crate) fn ratio(num: usize, den: usize) -> Fraction {
    if den == 0 {
        Fraction::from_integer(1)
    } else {
        Fraction::new(num as u64, den as u64)
    }
}

/// A projection constraint `φ_{y→z}` of a bipartite instance, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcEdge {
    pub y: usize,
    pub z: usize,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteLC {
    m: usize,
    ny: usize,
    nz: usize,
    constraints: Vec<LcEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteAssignment {
    pub y: Vec<usize>,
    pub z: Vec<usize>,
}

fn check_map(map: &[usize], m: usize, what: &str) -> Result<()> {
    if map.len() != m {
        return Err(Error::InvalidParams(format!(
            "{what} has {} values, domain is {m}",
            map.len()
        )));
    }
    if let Some(v) = map.iter().find(|&&v| v >= m) {
        return Err(Error::InvalidParams(format!("{what} maps to {} outside 1..={m}", v + 1)));
    }
    Ok(())
}

impl BipartiteLC {
    pub fn new(m: usize, ny: usize, nz: usize, constraints: Vec<LcEdge>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParams("label cover domain must be nonempty".into()));
        }
        for c in &constraints {
            if c.y >= ny || c.z >= nz {
                return Err(Error::InvalidParams(format!(
                    "constraint y{} -> z{} outside |Y|={ny}, |Z|={nz}",
                    c.y + 1,
                    c.z + 1
                )));
            }
            check_map(&c.map, m, "constraint")?;
        }
        Ok(BipartiteLC { m, ny, nz, constraints })
    }

    /// Bi-regular instance with `|Y|·d_plus / |Z|` constraints per `z`,
    /// random projections and, when `planted`, a hidden satisfying
    /// assignment which is also returned.
    pub fn random_biregular<R: Rng>(
        ny: usize,
        nz: usize,
        d_plus: usize,
        m: usize,
        planted: bool,
        rng: &mut R,
    ) -> Result<(Self, Option<BipartiteAssignment>)> {
        if d_plus == 0 || d_plus > nz || (ny * d_plus) % nz != 0 {
            return Err(Error::InvalidParams(format!(
                "no bi-regular graph with |Y|={ny}, |Z|={nz}, d+={d_plus}"
            )));
        }
        let mut zperm: Vec<usize> = (0..nz).collect();
        zperm.shuffle(rng);
        let sigma = planted.then(|| BipartiteAssignment {
            y: (0..ny).map(|_| rng.gen_range(0..m)).collect(),
            z: (0..nz).map(|_| rng.gen_range(0..m)).collect(),
        });
        let mut constraints = Vec::with_capacity(ny * d_plus);
        for y in 0..ny {
            for t in 0..d_plus {
                let z = zperm[(y * d_plus + t) % nz];
                let mut map: Vec<usize> = (0..m).map(|_| rng.gen_range(0..m)).collect();
                if let Some(s) = &sigma {
                    map[s.y[y]] = s.z[z];
                }
                constraints.push(LcEdge { y, z, map });
            }
        }
        Ok((Self::new(m, ny, nz, constraints)?, sigma))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn constraints(&self) -> &[LcEdge] {
        &self.constraints
    }

    /// `(d_plus, d_minus)` when every `y` meets exactly `d_plus` constraints
    /// and every `z` exactly `d_minus`.
    pub fn degrees(&self) -> Option<(usize, usize)> {
        let mut dy = vec![0usize; self.ny];
        let mut dz = vec![0usize; self.nz];
        for c in &self.constraints {
            dy[c.y] += 1;
            dz[c.z] += 1;
        }
        let uniform = |v: &[usize]| match v.split_first() {
            Some((&h, rest)) if rest.iter().all(|&x| x == h) => Some(h),
            _ => None,
        };
        Some((uniform(&dy)?, uniform(&dz)?))
    }

    pub fn has_parallel(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        !self.constraints.iter().all(|c| seen.insert((c.y, c.z)))
    }

    fn check_assignment(&self, a: &BipartiteAssignment) -> Result<()> {
        if a.y.len() != self.ny || a.z.len() != self.nz {
            return Err(Error::InvalidParams("assignment shape does not match instance".into()));
        }
        if a.y.iter().chain(&a.z).any(|&v| v >= self.m) {
            return Err(Error::InvalidParams("assignment value outside domain".into()));
        }
        Ok(())
    }

    pub fn satisfied(&self, a: &BipartiteAssignment) -> Result<usize> {
        self.check_assignment(a)?;
        Ok(self.constraints.iter().filter(|c| c.map[a.y[c.y]] == a.z[c.z]).count())
    }

    pub fn sat_fraction(&self, a: &BipartiteAssignment) -> Result<Fraction> {
        Ok(ratio(self.satisfied(a)?, self.constraints.len()))
    }
}

/// A constraint `φ_{x→y}` from `x ∈ X_i` to `y ∈ X_j`, `i < j`, 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerEdge {
    pub i: usize,
    pub x: usize,
    pub j: usize,
    pub y: usize,
    pub map: Vec<usize>,
}

/// Record of [`build_layered`]: variables of `X_i` are tuples of `i`
/// variables of `Z` followed by `ℓ-i` of `Y`, indexed in lexicographic
/// order; values are tuples in `[m]^ℓ` indexed the same way.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub source: BipartiteLC,
}

/// Value of each variable, per layer.
pub type LayeredAssignment = Vec<Vec<usize>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    /// `x_0, ..., x_ℓ`, one variable index per layer.
    pub vars: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LayeredLC {
    ell: usize,
    m: usize,
    layers: Vec<usize>,
    constraints: Vec<LayerEdge>,
    index: HashMap<(usize, usize, usize, usize), usize>,
    /// `out[i][x]`: constraints leaving `x ∈ X_i`.
    out: Vec<Vec<Vec<usize>>>,
    provenance: Option<Provenance>,
}

impl PartialEq for LayeredLC {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell
            && self.m == other.m
            && self.layers == other.layers
            && self.constraints == other.constraints
            && self.provenance == other.provenance
    }
}

impl Eq for LayeredLC {}

impl LayeredLC {
    pub fn new(ell: usize, m: usize, layers: Vec<usize>, constraints: Vec<LayerEdge>) -> Result<Self> {
        if ell == 0 || layers.len() != ell + 1 {
            return Err(Error::InvalidParams(format!(
                "need ell >= 1 and ell+1 layer sizes, got ell={ell} with {} layers",
                layers.len()
            )));
        }
        if m == 0 {
            return Err(Error::InvalidParams("label cover domain must be nonempty".into()));
        }
        let mut index = HashMap::with_capacity(constraints.len());
        let mut out: Vec<Vec<Vec<usize>>> = layers.iter().map(|&n| vec![Vec::new(); n]).collect();
        for (ci, c) in constraints.iter().enumerate() {
            if c.i >= c.j || c.j > ell || c.x >= layers[c.i] || c.y >= layers[c.j] {
                return Err(Error::InvalidParams(format!(
                    "constraint {} {} -> {} {} is not a forward edge between existing variables",
                    c.i,
                    c.x + 1,
                    c.j,
                    c.y + 1
                )));
            }
            check_map(&c.map, m, "constraint")?;
            if index.insert((c.i, c.x, c.j, c.y), ci).is_some() {
                return Err(Error::InvalidParams(format!(
                    "parallel constraints {} {} -> {} {}",
                    c.i,
                    c.x + 1,
                    c.j,
                    c.y + 1
                )));
            }
            out[c.i][c.x].push(ci);
        }
        Ok(LayeredLC {
            ell,
            m,
            layers,
            constraints,
            index,
            out,
            provenance: None,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Domain size.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn layers(&self) -> &[usize] {
        &self.layers
    }

    pub fn num_vars(&self) -> usize {
        self.layers.iter().sum()
    }

    pub fn constraints(&self) -> &[LayerEdge] {
        &self.constraints
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn without_provenance(mut self) -> Self {
        self.provenance = None;
        self
    }

    pub fn edge(&self, i: usize, x: usize, j: usize, y: usize) -> Option<usize> {
        self.index.get(&(i, x, j, y)).copied()
    }

    /// Position of `x ∈ X_i` in layer-major variable order.
    pub fn var_id(&self, i: usize, x: usize) -> usize {
        self.layers[..i].iter().sum::<usize>() + x
    }

    pub fn check_assignment(&self, a: &LayeredAssignment) -> Result<()> {
        if a.len() != self.layers.len() || a.iter().zip(&self.layers).any(|(l, &n)| l.len() != n) {
            return Err(Error::InvalidParams("assignment shape does not match layers".into()));
        }
        if a.iter().flatten().any(|&v| v >= self.m) {
            return Err(Error::InvalidParams("assignment value outside domain".into()));
        }
        Ok(())
    }

    pub fn is_satisfied(&self, c: &LayerEdge, a: &LayeredAssignment) -> bool {
        c.map[a[c.i][c.x]] == a[c.j][c.y]
    }

    /// Visits every chain in lexicographic order of `(x_0, ..., x_ℓ)`;
    /// `visit` returns `false` to stop. Returns the number visited.
    pub fn for_each_chain(&self, mut visit: impl FnMut(&Chain) -> bool) -> u64 {
        let mut chain = Chain { vars: vec![0; self.ell + 1] };
        let mut count = 0u64;
        for x0 in 0..self.layers[0] {
            chain.vars[0] = x0;
            if !self.extend_chain(1, &mut chain, &mut count, &mut visit) {
                break;
            }
        }
        count
    }

    fn extend_chain(
        &self,
        t: usize,
        chain: &mut Chain,
        count: &mut u64,
        visit: &mut impl FnMut(&Chain) -> bool,
    ) -> bool {
        if t > self.ell {
            *count += 1;
            return visit(chain);
        }
        let x0 = chain.vars[0];
        for &ci in &self.out[0][x0] {
            let c = &self.constraints[ci];
            if c.j != t {
                continue;
            }
            let y = c.y;
            if (1..t).all(|i| self.edge(i, chain.vars[i], t, y).is_some()) {
                chain.vars[t] = y;
                if !self.extend_chain(t + 1, chain, count, visit) {
                    return false;
                }
            }
        }
        true
    }

    pub fn count_chains(&self) -> u64 {
        self.for_each_chain(|_| true)
    }

    /// All chains, or a budget error when there are more than `budget`.
    pub fn chains(&self, budget: u128) -> Result<Vec<Chain>> {
        let mut v = Vec::new();
        let mut over = false;
        self.for_each_chain(|c| {
            if v.len() as u128 >= budget {
                over = true;
                return false;
            }
            v.push(c.clone());
            true
        });
        if over {
            return Err(Error::budget("chains", budget + 1, budget));
        }
        Ok(v)
    }

    /// Constraint indices of a chain, in order `(0,1), (0,2), ..., (ℓ-1,ℓ)`.
    pub fn chain_edges(&self, chain: &Chain) -> Vec<usize> {
        let mut e = Vec::with_capacity((self.ell + 1) * self.ell / 2);
        for i in 0..=self.ell {
            for j in i + 1..=self.ell {
                e.push(self.edge(i, chain.vars[i], j, chain.vars[j]).expect("chain edge"));
            }
        }
        e
    }

    /// Number of chains through each constraint.
    pub fn chain_multiplicity(&self) -> Vec<u64> {
        let mut mult = vec![0u64; self.constraints.len()];
        self.for_each_chain(|c| {
            for e in self.chain_edges(c) {
                mult[e] += 1;
            }
            true
        });
        mult
    }

    /// Fraction of chains with at least one satisfied constraint.
    pub fn weak_sat_fraction(&self, a: &LayeredAssignment) -> Result<Fraction> {
        self.check_assignment(a)?;
        let sat: Vec<bool> = self.constraints.iter().map(|c| self.is_satisfied(c, a)).collect();
        let mut weak = 0usize;
        let total = self.for_each_chain(|c| {
            if self.chain_edges(c).iter().any(|&e| sat[e]) {
                weak += 1;
            }
            true
        });
        Ok(ratio(weak, total as usize))
    }

    /// Tuple of source variables behind `x ∈ X_i`.
    pub fn tuple_of(&self, i: usize, x: usize) -> Result<Vec<usize>> {
        let p = self.require_provenance()?;
        Ok(decode_tuple(&tuple_radix(&p.source, self.ell, i), x))
    }

    pub(crate) fn require_provenance(&self) -> Result<&Provenance> {
        self.provenance.as_ref().ok_or_else(|| {
            Error::Precondition("layered instance has no construction record; build it from a bipartite instance".into())
        })
    }

    /// `x̄ ↦ (σ(x_1), ..., σ(x_ℓ))`.
    pub fn lift_assignment(&self, sigma: &BipartiteAssignment) -> Result<LayeredAssignment> {
        let p = self.require_provenance()?;
        p.source.check_assignment(sigma)?;
        let vr = vec![p.source.m; self.ell];
        let mut out = Vec::with_capacity(self.ell + 1);
        for (i, &n) in self.layers.iter().enumerate() {
            let radix = tuple_radix(&p.source, self.ell, i);
            let vals = (0..n)
                .map(|x| {
                    let t = decode_tuple(&radix, x);
                    let v: Vec<usize> =
                        t.iter().enumerate().map(|(k, &u)| if k < i { sigma.z[u] } else { sigma.y[u] }).collect();
                    encode_tuple(&vr, &v)
                })
                .collect();
            out.push(vals);
        }
        Ok(out)
    }
}

pub(crate) fn tuple_radix(src: &BipartiteLC, ell: usize, i: usize) -> Vec<usize> {
    (0..ell).map(|k| if k < i { src.nz } else { src.ny }).collect()
}

pub(crate) fn encode_tuple(radix: &[usize], t: &[usize]) -> usize {
    t.iter().zip(radix).fold(0, |acc, (&d, &r)| acc * r + d)
}

pub(crate) fn decode_tuple(radix: &[usize], mut idx: usize) -> Vec<usize> {
    let mut t = vec![0; radix.len()];
    for k in (0..radix.len()).rev() {
        t[k] = idx % radix[k];
        idx /= radix[k];
    }
    t
}

/// Layers `X_i = Z^i × Y^{ℓ-i}` over domain `[m]^ℓ`. A constraint joins
/// `(z_1..z_i, y_{i+1}..y_ℓ) ∈ X_i` to `(z_1..z_j, y_{j+1}..y_ℓ) ∈ X_j`
/// whenever `φ_{y_k→z_k}` exists for `k = i+1..j`, and applies those maps
/// on coordinates `i+1..j` while copying the others.
pub fn build_layered(blc: &BipartiteLC, ell: usize, budget: u128) -> Result<LayeredLC> {
    if ell == 0 {
        return Err(Error::InvalidParams("layer count must be at least 1".into()));
    }
    if blc.has_parallel() {
        return Err(Error::Precondition("bipartite instance has parallel constraints".into()));
    }
    let dom = pow_sat(blc.m as u128, ell as u32);
    let sizes: Vec<u128> = (0..=ell)
        .map(|i| pow_sat(blc.nz as u128, i as u32).saturating_mul(pow_sat(blc.ny as u128, (ell - i) as u32)))
        .collect();
    let vars: u128 = sizes.iter().fold(0u128, |a, &b| a.saturating_add(b));
    if dom > budget {
        return Err(Error::budget("layered domain m^ell", dom, budget));
    }
    if vars > budget {
        return Err(Error::budget("layered variables", vars, budget));
    }
    let dom = dom as usize;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); blc.ny];
    for (ci, c) in blc.constraints.iter().enumerate() {
        adj[c.y].push(ci);
    }
    let vr = vec![blc.m; ell];
    let values: Vec<Vec<usize>> = (0..dom).map(|v| decode_tuple(&vr, v)).collect();
    let mut constraints = Vec::new();
    let mut entries: u128 = 0;
    for i in 0..ell {
        let ri = tuple_radix(blc, ell, i);
        for j in i + 1..=ell {
            let rj = tuple_radix(blc, ell, j);
            for x in 0..sizes[i] as usize {
                let t = decode_tuple(&ri, x);
                let opts: Vec<&[usize]> = (i..j).map(|k| adj[t[k]].as_slice()).collect();
                if opts.iter().any(|o| o.is_empty()) {
                    continue;
                }
                let radix: Vec<usize> = opts.iter().map(|o| o.len()).collect();
                let mut pick = vec![0usize; radix.len()];
                loop {
                    let edges: Vec<&LcEdge> =
                        pick.iter().enumerate().map(|(p, &c)| &blc.constraints[opts[p][c]]).collect();
                    let mut t2 = t.clone();
                    for (p, e) in edges.iter().enumerate() {
                        t2[i + p] = e.z;
                    }
                    entries += dom as u128;
                    if entries > budget {
                        return Err(Error::budget("layered constraint entries", entries, budget));
                    }
                    let map = values
                        .iter()
                        .map(|a| {
                            let mut b = a.clone();
                            for (p, e) in edges.iter().enumerate() {
                                b[i + p] = e.map[a[i + p]];
                            }
                            encode_tuple(&vr, &b)
                        })
                        .collect();
                    constraints.push(LayerEdge { i, x, j, y: encode_tuple(&rj, &t2), map });
                    if !odometer_next(&mut pick, &radix) {
                        break;
                    }
                }
            }
        }
    }
    let mut llc = LayeredLC::new(ell, dom, sizes.iter().map(|&s| s as usize).collect(), constraints)?;
    llc.provenance = Some(Provenance { source: blc.clone() });
    Ok(llc)
}
