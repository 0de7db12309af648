use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Assignment, Clause, Instance, Literal, SetSatParams, ValueSet};
use crate::{Error, Result, Value};

/// Random instance with a planted `g`-satisfying assignment.
///
/// Each clause draws `k` variables uniformly (with replacement), marks a
/// uniform `g`-subset of its positions as forced, and samples literal sets
/// uniformly; forced positions resample until the set contains the planted
/// value.
pub fn plant_instance(
    params: SetSatParams,
    n: usize,
    m_clauses: usize,
    seed: u64,
) -> Result<(Instance, Assignment)> {
    params.validate()?;
    if n == 0 && m_clauses > 0 {
        return Err(Error::InvalidParams("clauses need at least one variable".into()));
    }
    let SetSatParams { d, s, g, k, .. } = params;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let planted: Vec<Value> = (0..n).map(|_| rng.gen_range(1..=d) as Value).collect();
    let sets = ValueSet::all_of_size(d, s);

    let mut clauses = Vec::with_capacity(m_clauses);
    for _ in 0..m_clauses {
        let vars: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
        let mut forced = vec![false; k];
        for p in sample(&mut rng, k, g).iter() {
            forced[p] = true;
        }
        let lits = vars
            .iter()
            .zip(&forced)
            .map(|(&var, &must)| loop {
                let set = sets[rng.gen_range(0..sets.len())];
                if !must || set.contains(planted[var]) {
                    break Literal::new(var, set);
                }
            })
            .collect();
        clauses.push(Clause::new(lits));
    }
    let inst = Instance::new(d, s, k, n, clauses)?;
    Ok((inst, Assignment(planted)))
}
