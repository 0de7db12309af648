//! Materialization of the promise template `(A, B)` for `(a, g, k)`-SetSAT.
//!
//! There is one relation pair per clause type, i.e. per `k`-tuple of
//! `s`-subsets of `[d]`. A tuple over `[d]^k` belongs to `R^A` when it
//! satisfies at least `g` literals of the type and to `R^B` at `a`.

use super::{SetSatParams, ValueSet};
use crate::combin::{binomial, pow_sat};
use crate::{Error, Result, Value};

/// Default limit on `L * d^k` tuples examined.
pub const DEFAULT_TEMPLATE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone)]
pub struct Template {
    pub params: SetSatParams,
    /// Clause types in lexicographic order of their literal-set indices.
    pub clause_types: Vec<Vec<ValueSet>>,
    /// Tuple indices (see [`Template::decode_tuple`]) of `R^A_i`, ascending.
    pub rel_a: Vec<Vec<u32>>,
    /// Tuple indices of `R^B_i`, ascending.
    pub rel_b: Vec<Vec<u32>>,
}

impl Template {
    pub fn num_types(&self) -> usize {
        self.clause_types.len()
    }

    /// Tuple with 1-based entries for a lexicographic index (last entry
    /// fastest).
    pub fn decode_tuple(&self, mut idx: u32) -> Vec<Value> {
        let d = self.params.d as u32;
        let mut t = vec![0; self.params.k];
        for slot in t.iter_mut().rev() {
            *slot = (idx % d + 1) as Value;
            idx /= d;
        }
        t
    }

    pub fn encode_tuple(&self, t: &[Value]) -> u32 {
        t.iter()
            .fold(0u32, |acc, &v| acc * self.params.d as u32 + (v as u32 - 1))
    }

    /// Index of the clause type with the given literal sets.
    pub fn type_index(&self, sets: &[ValueSet]) -> Option<usize> {
        self.clause_types.iter().position(|t| t == sets)
    }

    /// `R^A_i ⊆ R^B_i` for every type.
    pub fn a_subset_of_b(&self) -> bool {
        self.rel_a.iter().zip(&self.rel_b).all(|(ra, rb)| {
            ra.iter().all(|t| rb.binary_search(t).is_ok())
        })
    }
}

pub fn build_pcsp_template(params: SetSatParams, budget: u128) -> Result<Template> {
    params.validate()?;
    let SetSatParams { d, s, a, g, k } = params;
    let literal_count = binomial(d as u64, s as u64);
    let types = pow_sat(literal_count, k as u32);
    let tuples = pow_sat(d as u128, k as u32);
    let need = types.saturating_mul(tuples);
    if need > budget || tuples > u32::MAX as u128 {
        return Err(Error::budget("template tuples", need, budget));
    }

    let literals = ValueSet::all_of_size(d, s);
    let mut clause_types = Vec::with_capacity(types as usize);
    let mut idx = vec![0usize; k];
    let radix = vec![literals.len(); k];
    loop {
        clause_types.push(idx.iter().map(|&i| literals[i]).collect::<Vec<_>>());
        if !crate::combin::odometer_next(&mut idx, &radix) {
            break;
        }
    }

    let mut rel_a = Vec::with_capacity(clause_types.len());
    let mut rel_b = Vec::with_capacity(clause_types.len());
    let mut tuple = vec![0usize; k];
    let dradix = vec![d; k];
    for ty in &clause_types {
        let mut ra = Vec::new();
        let mut rb = Vec::new();
        tuple.iter_mut().for_each(|t| *t = 0);
        let mut code = 0u32;
        loop {
            let hits = tuple
                .iter()
                .zip(ty)
                .filter(|(&v, set)| set.contains((v + 1) as Value))
                .count();
            if hits >= g {
                ra.push(code);
            }
            if hits >= a {
                rb.push(code);
            }
            code += 1;
            if !crate::combin::odometer_next(&mut tuple, &dradix) {
                break;
            }
        }
        rel_a.push(ra);
        rel_b.push(rb);
    }

    Ok(Template {
        params,
        clause_types,
        rel_a,
        rel_b,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_two_clause_types() {
        let p = SetSatParams::new(2, 1, 1, 1, 2).unwrap();
        let t = build_pcsp_template(p, DEFAULT_TEMPLATE_BUDGET).unwrap();
        assert_eq!(t.num_types(), 4);
        let one = ValueSet::from_values([1]);
        let i = t.type_index(&[one, one]).unwrap();
        // Oracle: of the 4 tuples over [2]^2, only (2,2) misses both literals.
        let expect: Vec<Vec<Value>> = vec![vec![1, 1], vec![1, 2], vec![2, 1]];
        let got: Vec<Vec<Value>> = t.rel_a[i].iter().map(|&c| t.decode_tuple(c)).collect();
        assert_eq!(got, expect);
        assert_eq!(t.rel_a[i], t.rel_b[i]);
    }

    #[test]
    fn equal_levels_give_equal_relations() {
        let p = SetSatParams::new(3, 2, 2, 2, 3).unwrap();
        let t = build_pcsp_template(p, DEFAULT_TEMPLATE_BUDGET).unwrap();
        assert_eq!(t.num_types(), 27);
        assert_eq!(t.rel_a, t.rel_b);
    }

    #[test]
    fn a_side_included_in_b_side() {
        for (d, s, a, g, k) in [(3, 2, 1, 2, 3), (3, 1, 1, 2, 2), (4, 2, 1, 3, 3), (2, 1, 1, 2, 3)] {
            let p = SetSatParams::new(d, s, a, g, k).unwrap();
            let t = build_pcsp_template(p, DEFAULT_TEMPLATE_BUDGET).unwrap();
            assert!(t.a_subset_of_b(), "{p}");
            for ra in &t.rel_a {
                for &c in ra {
                    let tup = t.decode_tuple(c);
                    assert_eq!(tup.len(), k);
                    assert_eq!(t.encode_tuple(&tup), c);
                }
            }
        }
    }

    #[test]
    fn budget_guard() {
        let p = SetSatParams::new(6, 3, 1, 2, 6).unwrap();
        assert!(matches!(
            build_pcsp_template(p, DEFAULT_TEMPLATE_BUDGET),
            Err(Error::Budget { .. })
        ));
    }
}
