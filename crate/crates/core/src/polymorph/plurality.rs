use super::criteria::NonPolymorphismWitness;
use super::table::{FunctionTable, DEFAULT_TABLE_BUDGET};
use crate::model::SetSatParams;
use crate::{Error, Result, Value};

/// Most frequent input value; ties go to the smallest such value.
pub fn plurality(d: usize, m: usize) -> Result<FunctionTable> {
    if m == 0 {
        return Err(Error::InvalidParams("plurality needs arity >= 1".into()));
    }
    let mut count = vec![0usize; d + 1];
    FunctionTable::from_fn(d, m, DEFAULT_TABLE_BUDGET, |x| {
        count.iter_mut().for_each(|c| *c = 0);
        for &v in x {
            count[v as usize] += 1;
        }
        let mut best = 1;
        for v in 2..=d {
            if count[v] > count[best] {
                best = v;
            }
        }
        best as Value
    })
}

/// Refutes a symmetric `f` at `g/k = s/(s+1)` with `(s+1) | m`.
///
/// `M` is the `(s+1)×(s+1)` matrix whose row `i` is `1..s+1` shifted left
/// cyclically `i` times. Stacking `k/(s+1)` copies and tiling `m/(s+1)`
/// copies gives `M'`; every row holds each value equally often, so `f`
/// returns one value `b` on all rows, and every column satisfies exactly `g`
/// of the literals `x_j ≠ b`.
pub fn symmetric_witness(f: &FunctionTable, params: &SetSatParams) -> Result<NonPolymorphismWitness> {
    params.validate()?;
    let SetSatParams { d, s, g, k, .. } = *params;
    let w = s + 1;
    if d != w || f.d() != d {
        return Err(Error::Precondition(format!("needs d = s+1 = {w}, got d={d}")));
    }
    if g * w != k * s {
        return Err(Error::Precondition(format!(
            "needs g/k = s/(s+1), got g={g}, k={k}, s={s}"
        )));
    }
    let m = f.arity();
    if m == 0 || m % w != 0 {
        return Err(Error::Precondition(format!(
            "arity {m} is not a positive multiple of s+1={w}"
        )));
    }
    if !f.is_symmetric()? {
        return Err(Error::Precondition("function is not symmetric".into()));
    }
    let cell = |r: usize, c: usize| (((r % w) + (c % w)) % w + 1) as Value;
    let rows: Vec<Vec<Value>> = (0..k).map(|r| (0..m).map(|c| cell(r, c)).collect()).collect();
    let witness = NonPolymorphismWitness::from_rows(f, &rows)?;
    witness.verify(f, params)?;
    Ok(witness)
}
