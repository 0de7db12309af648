use super::criteria::{is_polymorphism_direct, is_polymorphism_smug, DEFAULT_DIRECT_BUDGET};
use super::table::{FunctionTable, DEFAULT_TABLE_BUDGET};
use crate::combin::{odometer_next, pow_sat};
use crate::model::SetSatParams;
use crate::{Error, Result, Value};

/// Default limit on the number of tables `d^(d^m)`.
pub const DEFAULT_ENUM_BUDGET: u128 = 1 << 20;

/// Calls `visit` on every `m`-ary table over `[d]`, in lexicographic order
/// of value vectors.
pub fn for_each_table(
    d: usize,
    m: usize,
    budget: u128,
    mut visit: impl FnMut(&FunctionTable) -> Result<()>,
) -> Result<()> {
    let len = pow_sat(d as u128, m as u32);
    let total = pow_sat(d as u128, len.min(u32::MAX as u128) as u32);
    if len > 64 || total > budget {
        return Err(Error::budget("tables d^(d^m)", total, budget));
    }
    let len = len as usize;
    let radix = vec![d; len];
    let mut digits = vec![0usize; len];
    loop {
        let values: Vec<Value> = digits.iter().map(|&x| (x + 1) as Value).collect();
        visit(&FunctionTable::dense(d, m, values)?)?;
        if !odometer_next(&mut digits, &radix) {
            return Ok(());
        }
    }
}

/// All `m`-ary polymorphisms. With `d = s+1` and `a = 1` each table is
/// decided by the smug-set criterion and cross-checked against the direct
/// test; otherwise the direct test decides.
pub fn enumerate_polymorphisms(params: &SetSatParams, m: usize, budget: u128) -> Result<Vec<FunctionTable>> {
    params.validate()?;
    let smug_applies = params.d == params.s + 1 && params.a == 1;
    let mut out = Vec::new();
    for_each_table(params.d, m, budget, |f| {
        let direct = is_polymorphism_direct(f, params, DEFAULT_DIRECT_BUDGET)?;
        if smug_applies {
            let smug = is_polymorphism_smug(f, params, DEFAULT_TABLE_BUDGET)?.is_polymorphism();
            if smug != direct {
                return Err(Error::Verification(format!(
                    "criteria disagree on {:?}: smug {smug}, direct {direct}",
                    f.values()
                )));
            }
        }
        if direct {
            out.push(f.clone());
        }
        Ok(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymorph::criteria::is_conservative;
    use crate::polymorph::plurality::plurality;

    #[test]
    fn unary_boolean() {
        let p = SetSatParams::new(2, 1, 1, 1, 2).unwrap();
        let polys = enumerate_polymorphisms(&p, 1, DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(polys, vec![FunctionTable::dictator(2, 1, 0).unwrap()]);
    }

    #[test]
    fn binary_ternary_domain() {
        let p = SetSatParams::new(3, 2, 1, 2, 3).unwrap();
        let polys = enumerate_polymorphisms(&p, 2, DEFAULT_ENUM_BUDGET).unwrap();
        assert!(polys.iter().all(|f| is_conservative(f).unwrap()));
        assert!(polys.contains(&plurality(3, 2).unwrap()));
    }

    #[test]
    fn budget_guard() {
        let p = SetSatParams::new(3, 2, 1, 2, 3).unwrap();
        assert!(matches!(
            enumerate_polymorphisms(&p, 3, DEFAULT_ENUM_BUDGET),
            Err(Error::Budget { .. })
        ));
    }
}
