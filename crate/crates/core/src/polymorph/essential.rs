use super::table::{for_each_input, FunctionTable};
use super::CoordSet;
use crate::{Error, Result};

/// Coordinates whose value can change the output.
pub fn essential_coordinates(f: &FunctionTable) -> Result<CoordSet> {
    let vals = f.dense_values()?;
    let (d, m) = (f.d(), f.arity());
    if m > 64 {
        return Err(Error::InvalidParams("arity too large".into()));
    }
    // stride of coordinate i in the dense order
    let strides: Vec<usize> = (0..m).map(|i| d.pow((m - 1 - i) as u32)).collect();
    let mut ess = CoordSet::EMPTY;
    for_each_input(d, m, |idx, x| {
        for i in 0..m {
            if ess.contains(i) || x[i] != 1 {
                continue;
            }
            let base = vals[idx];
            if (1..d).any(|step| vals[idx + step * strides[i]] != base) {
                ess.insert(i);
            }
        }
    });
    Ok(ess)
}
