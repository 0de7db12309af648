//! Functions reconstructed from a prescribed family of smug sets.
//!
//! A family is given by tiers of generator sets over a ground set `U`. Its
//! members are all supersets of generators. Members are ordered tier by tier
//! (a set belongs to the first tier having a generator inside it) and by
//! size, then lexicographically, within a tier. On input `x`, `q` partitions
//! `U` into value classes and returns the value whose class is the earliest
//! member.

use std::fmt;

use super::cover::find_low_cover;
use super::table::{FunctionTable, MinorMap, Rule, RuleKind, DEFAULT_TABLE_BUDGET};
use crate::combin::{binomial, pow_sat, subsets};
use crate::model::SetSatParams;
use crate::{Error, Result, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmugToPolymFamily {
    ground: usize,
    /// 0-based, each generator sorted and deduplicated.
    tiers: Vec<Vec<Vec<usize>>>,
}

impl SmugToPolymFamily {
    pub fn new(ground: usize, tiers: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let mut clean = Vec::with_capacity(tiers.len());
        for tier in tiers {
            if tier.is_empty() {
                return Err(Error::InvalidParams("empty tier in family".into()));
            }
            let mut t = Vec::with_capacity(tier.len());
            for mut g in tier {
                g.sort_unstable();
                g.dedup();
                if g.is_empty() {
                    return Err(Error::InvalidParams("family sets must be nonempty".into()));
                }
                if let Some(&u) = g.iter().find(|&&u| u >= ground) {
                    return Err(Error::InvalidParams(format!(
                        "coordinate {} outside ground set 1..={ground}",
                        u + 1
                    )));
                }
                t.push(g);
            }
            clean.push(t);
        }
        if clean.is_empty() {
            return Err(Error::InvalidParams("family needs at least one set".into()));
        }
        Ok(SmugToPolymFamily { ground, tiers: clean })
    }

    pub fn single_tier(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        Self::new(ground, vec![sets])
    }

    /// `S1={1,2,6}, S2={1,3,5}, S3={2,3,4}` then `{1}`.
    pub fn olsak() -> Self {
        Self::new(
            6,
            vec![vec![vec![0, 1, 5], vec![0, 2, 4], vec![1, 2, 3]], vec![vec![0]]],
        )
        .expect("static family")
    }

    /// `{1,3}, {2,4}` then `{1}`.
    pub fn siggers() -> Self {
        Self::new(6, vec![vec![vec![0, 2], vec![1, 3]], vec![vec![0]]]).expect("static family")
    }

    /// Triples of `[m]` in lexicographic order, then `⊥`. Tier one holds
    /// `S_i` (the triples containing `i`), tier two holds `{⊥}`.
    pub fn qm(m: usize) -> Result<Self> {
        if m < 4 {
            return Err(Error::InvalidParams(format!("q_m needs m >= 4, got {m}")));
        }
        let triples = subsets(m, 3);
        let bottom = triples.len();
        let s_sets: Vec<Vec<usize>> = (0..m)
            .map(|i| {
                triples
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| t.contains(&i))
                    .map(|(idx, _)| idx)
                    .collect()
            })
            .collect();
        Self::new(bottom + 1, vec![s_sets, vec![vec![bottom]]])
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn tiers(&self) -> &[Vec<Vec<usize>>] {
        &self.tiers
    }

    pub fn generators(&self) -> Vec<Vec<usize>> {
        self.tiers.iter().flatten().cloned().collect()
    }

    /// `q(x)`, or `None` when no value class is a member.
    pub fn evaluate(&self, x: &[Value]) -> Option<Value> {
        debug_assert_eq!(x.len(), self.ground);
        let mut size = [0usize; 65];
        let mut first = [usize::MAX; 65];
        for (i, &v) in x.iter().enumerate() {
            let v = v as usize;
            size[v] += 1;
            if first[v] == usize::MAX {
                first[v] = i;
            }
        }
        for tier in &self.tiers {
            let mut best: Option<(usize, usize, Value)> = None;
            for g in tier {
                let v = x[g[0]];
                if g.iter().all(|&u| x[u] == v) {
                    let key = (size[v as usize], first[v as usize], v);
                    if best.map_or(true, |b| (key.0, key.1) < (b.0, b.1)) {
                        best = Some(key);
                    }
                }
            }
            if let Some((_, _, v)) = best {
                return Some(v);
            }
        }
        None
    }

    /// Every partition of `U` into `s+1` classes has a member class, i.e.
    /// no `(s+1)`-colouring leaves all generators non-monochromatic.
    pub fn check_condition1(&self, s: usize) -> Result<()> {
        let colours = s + 1;
        let mut gens = self.generators();
        // small generators first so that they close early in the search
        gens.sort_by_key(|g| g.len());
        let mut order: Vec<usize> = Vec::new();
        let mut seen = vec![false; self.ground];
        for g in &gens {
            for &u in g {
                if !seen[u] {
                    seen[u] = true;
                    order.push(u);
                }
            }
        }
        let mut pos = vec![usize::MAX; self.ground];
        for (p, &u) in order.iter().enumerate() {
            pos[u] = p;
        }
        // generators closing at each position of the order
        let mut closing: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
        for (gi, g) in gens.iter().enumerate() {
            let last = g.iter().map(|&u| pos[u]).max().expect("nonempty");
            closing[last].push(gi);
        }
        let mut colour = vec![usize::MAX; self.ground];
        fn rec(
            p: usize,
            used: usize,
            colours: usize,
            order: &[usize],
            closing: &[Vec<usize>],
            gens: &[Vec<usize>],
            colour: &mut [usize],
        ) -> bool {
            if p == order.len() {
                return true;
            }
            let u = order[p];
            for c in 0..colours.min(used + 1) {
                colour[u] = c;
                let mono = closing[p]
                    .iter()
                    .any(|&gi| gens[gi].iter().all(|&w| colour[w] == c));
                if !mono && rec(p + 1, used.max(c + 1), colours, order, closing, gens, colour) {
                    return true;
                }
            }
            colour[u] = usize::MAX;
            false
        }
        if rec(0, 0, colours, &order, &closing, &gens, &mut colour) {
            let values: Vec<String> = (0..self.ground)
                .map(|u| {
                    if colour[u] == usize::MAX {
                        "1".to_string()
                    } else {
                        (colour[u] + 1).to_string()
                    }
                })
                .collect();
            return Err(Error::FamilyCondition {
                condition: 1,
                detail: format!("no member class under colouring ({})", values.join(",")),
            });
        }
        Ok(())
    }

    /// Every `k` members cover some coordinate at least `k-g+1` times. Only
    /// generators need checking since supersets only raise coverage.
    pub fn check_condition2(&self, k: usize, g: usize) -> Result<()> {
        let gens = self.generators();
        if let Some(multi) = find_low_cover(&gens, self.ground, k, k - g) {
            let parts: Vec<String> = multi.iter().map(|&i| one_based(&gens[i])).collect();
            return Err(Error::FamilyCondition {
                condition: 2,
                detail: format!(
                    "sets {} cover every coordinate at most {} times",
                    parts.join(" "),
                    k - g
                ),
            });
        }
        Ok(())
    }

    pub fn validate(&self, params: &SetSatParams) -> Result<()> {
        self.check_condition1(params.s)?;
        self.check_condition2(params.k, params.g)
    }

    /// `<ground>:<set>;<set>|<set>` with 1-based coordinates, `;` between
    /// sets of a tier and `|` between tiers.
    pub fn to_spec(&self) -> String {
        let tiers: Vec<String> = self
            .tiers
            .iter()
            .map(|t| t.iter().map(|g| one_based_bare(g)).collect::<Vec<_>>().join(";"))
            .collect();
        format!("{}:{}", self.ground, tiers.join("|"))
    }

    pub fn from_spec(spec: &str) -> Result<Self> {
        let (ground, rest) = spec
            .split_once(':')
            .ok_or_else(|| Error::InvalidParams(format!("family spec `{spec}` lacks ground size")))?;
        let ground: usize = ground
            .parse()
            .map_err(|_| Error::InvalidParams(format!("invalid ground size `{ground}`")))?;
        let mut tiers = Vec::new();
        for t in rest.split('|') {
            let mut tier = Vec::new();
            for set in t.split(';') {
                let mut g = Vec::new();
                for tok in set.split(',') {
                    let c: usize = tok
                        .parse()
                        .map_err(|_| Error::InvalidParams(format!("invalid coordinate `{tok}`")))?;
                    if c == 0 {
                        return Err(Error::InvalidParams("coordinates are 1-based".into()));
                    }
                    g.push(c - 1);
                }
                tier.push(g);
            }
            tiers.push(tier);
        }
        Self::new(ground, tiers)
    }
}

impl fmt::Display for SmugToPolymFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spec())
    }
}

fn one_based_bare(g: &[usize]) -> String {
    g.iter().map(|u| (u + 1).to_string()).collect::<Vec<_>>().join(",")
}

fn one_based(g: &[usize]) -> String {
    format!("{{{}}}", one_based_bare(g))
}

fn require_polym_params(params: &SetSatParams) -> Result<()> {
    params.validate()?;
    if params.d != params.s + 1 || params.a != 1 {
        return Err(Error::Precondition(format!(
            "constructions target (1,g,k) with d = s+1, got {params}"
        )));
    }
    Ok(())
}

/// Wraps a family as a function table: dense when `(s+1)^|U|` fits the
/// default table budget, implicit otherwise.
pub fn table_from_family(d: usize, kind: RuleKind, family: SmugToPolymFamily) -> Result<FunctionTable> {
    let arity = family.ground();
    let implicit = FunctionTable::implicit(d, arity, Rule { kind, family })?;
    if arity < 64 && pow_sat(d as u128, arity as u32) <= DEFAULT_TABLE_BUDGET {
        implicit.to_dense(DEFAULT_TABLE_BUDGET)
    } else {
        Ok(implicit)
    }
}

/// `q_S` after checking both family conditions for `params`.
pub fn q_from_family(family: &SmugToPolymFamily, params: &SetSatParams) -> Result<FunctionTable> {
    require_polym_params(params)?;
    family.validate(params)?;
    table_from_family(params.d, RuleKind::Family, family.clone())
}

/// `q_m` and the maps `π_1..π_m` with `q_m →π_i` projection to `m+1`.
pub fn build_qm(m: usize, params: &SetSatParams) -> Result<(FunctionTable, Vec<MinorMap>)> {
    require_polym_params(params)?;
    if params.k - params.g + 1 != 3 || !params.above_half() {
        return Err(Error::Precondition(format!(
            "q_m needs k-g+1 = 3 and g/k > 1/2, got {params}"
        )));
    }
    let family = SmugToPolymFamily::qm(m)?;
    family.validate(params)?;
    let table = table_from_family(params.d, RuleKind::Qm(m), family)?;
    Ok((table, qm_minor_maps(m)))
}

/// `π_i(I) = m+1` for triples `I ∋ i`, otherwise `i`; `π_i(⊥) = i`.
pub fn qm_minor_maps(m: usize) -> Vec<MinorMap> {
    let triples = subsets(m, 3);
    debug_assert_eq!(triples.len() as u128, binomial(m as u64, 3));
    (0..m)
        .map(|i| {
            let mut map: Vec<usize> = triples
                .iter()
                .map(|t| if t.contains(&i) { m } else { i })
                .collect();
            map.push(i);
            MinorMap::new(map, m + 1).expect("in range")
        })
        .collect()
}

pub fn build_olsak(params: &SetSatParams) -> Result<FunctionTable> {
    require_polym_params(params)?;
    if !params.above_half() {
        return Err(Error::Precondition(format!(
            "an Olšák polymorphism needs g/k > 1/2, got {params}"
        )));
    }
    let family = SmugToPolymFamily::olsak();
    family.validate(params)?;
    table_from_family(params.d, RuleKind::Olsak, family)
}

/// Siggers polymorphism; the identity and the polymorphism property are both
/// checked before returning.
pub fn build_siggers(params: &SetSatParams) -> Result<FunctionTable> {
    use super::criteria::{is_polymorphism_smug, Verdict};
    use super::identities::{check_identities, IdentitySet};

    require_polym_params(params)?;
    if !params.above_half() {
        return Err(Error::Precondition(format!(
            "the Siggers construction needs g/k > 1/2, got {params}"
        )));
    }
    let family = SmugToPolymFamily::siggers();
    family.validate(params)?;
    let table = table_from_family(params.d, RuleKind::Siggers, family)?;
    let check = check_identities(&[("s", &table)], &IdentitySet::siggers(), params.d)?;
    if let Some(v) = check.violation {
        return Err(Error::Verification(format!("Siggers identity fails: {v}")));
    }
    let dense = table.to_dense(DEFAULT_TABLE_BUDGET)?;
    if let Verdict::NotPolymorphism(_) = is_polymorphism_smug(&dense, params, DEFAULT_TABLE_BUDGET)? {
        return Err(Error::Verification("Siggers table is not a polymorphism".into()));
    }
    Ok(table)
}
