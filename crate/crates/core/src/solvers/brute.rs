use crate::combin::{odometer_next, pow_sat};
use crate::model::{Assignment, Instance};
use crate::{Error, Result, Value};

/// Default limit on `d^n` for exhaustive search.
pub const DEFAULT_BRUTE_BUDGET: u128 = 2_000_000;

fn check_budget(inst: &Instance, budget: u128) -> Result<()> {
    let need = pow_sat(inst.d() as u128, inst.num_vars() as u32);
    if need > budget {
        return Err(Error::budget("assignments d^n", need, budget));
    }
    Ok(())
}

fn min_count_with_cutoff(inst: &Instance, values: &[Value], cutoff: usize) -> usize {
    let mut min = inst.k();
    for c in inst.clauses() {
        let cnt = c
            .literals
            .iter()
            .filter(|l| l.set.contains(values[l.var]))
            .count();
        if cnt < min {
            min = cnt;
            if min <= cutoff {
                break;
            }
        }
    }
    min
}

/// Largest `g` such that the instance is `g`-satisfiable, with a witness.
/// The first witness in lexicographic order attaining it is returned.
pub fn brute_force_best_g(inst: &Instance, budget: u128) -> Result<(usize, Assignment)> {
    check_budget(inst, budget)?;
    let n = inst.num_vars();
    let radix = vec![inst.d(); n];
    let mut digits = vec![0usize; n];
    let mut values = vec![1 as Value; n];
    let mut best: Option<(usize, Vec<Value>)> = None;
    loop {
        let cutoff = best.as_ref().map(|(b, _)| *b).unwrap_or(0);
        let min = min_count_with_cutoff(inst, &values, cutoff);
        if best.is_none() || min > cutoff {
            best = Some((min, values.clone()));
            if min == inst.k() {
                break;
            }
        }
        if !odometer_next(&mut digits, &radix) {
            break;
        }
        for (v, &dg) in values.iter_mut().zip(&digits) {
            *v = (dg + 1) as Value;
        }
    }
    let (g, w) = best.expect("at least one assignment");
    Ok((g, Assignment(w)))
}

/// First `g`-satisfying assignment in lexicographic order, if any.
pub fn brute_force_find(inst: &Instance, g: usize, budget: u128) -> Result<Option<Assignment>> {
    check_budget(inst, budget)?;
    let n = inst.num_vars();
    let radix = vec![inst.d(); n];
    let mut digits = vec![0usize; n];
    let mut values = vec![1 as Value; n];
    loop {
        if g == 0 || min_count_with_cutoff(inst, &values, g.saturating_sub(1)) >= g {
            return Ok(Some(Assignment(values)));
        }
        if !odometer_next(&mut digits, &radix) {
            return Ok(None);
        }
        for (v, &dg) in values.iter_mut().zip(&digits) {
            *v = (dg + 1) as Value;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{count_satisfied, parse_instance};

    #[test]
    fn two_clause_boolean() {
        let inst = parse_instance("p setsat 2 1 2 2 2\n1:1 2:1\n1:2 2:2\n").unwrap();
        let (g, w) = brute_force_best_g(&inst, DEFAULT_BRUTE_BUDGET).unwrap();
        assert_eq!(g, 1);
        assert_eq!(w.0, vec![1, 2]);
        assert_eq!(brute_force_find(&inst, 2, DEFAULT_BRUTE_BUDGET).unwrap(), None);
    }

    #[test]
    fn repeated_clause_is_single_clause_max() {
        let text = "p setsat 3 1 2 3 3\n1:1 2:2 1:3\n1:1 2:2 1:3\n1:1 2:2 1:3\n";
        let inst = parse_instance(text).unwrap();
        let (g, w) = brute_force_best_g(&inst, DEFAULT_BRUTE_BUDGET).unwrap();
        assert_eq!(g, 2);
        assert_eq!(count_satisfied(&w, &inst.clauses()[0]), 2);
    }

    #[test]
    fn empty_instance_convention() {
        let inst = Instance::empty(3, 2, 4, 2).unwrap();
        assert_eq!(brute_force_best_g(&inst, DEFAULT_BRUTE_BUDGET).unwrap().0, 4);
    }

    #[test]
    fn budget_exceeded() {
        let inst = Instance::empty(3, 2, 4, 40).unwrap();
        assert!(matches!(
            brute_force_best_g(&inst, DEFAULT_BRUTE_BUDGET),
            Err(Error::Budget { .. })
        ));
    }
}
