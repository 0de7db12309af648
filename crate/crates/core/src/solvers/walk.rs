use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{count_satisfied, is_g_satisfying, Assignment, Instance};
use crate::{Error, Result, Value};

/// Default constant `c` in the per-round step cap `c * n^2`.
pub const DEFAULT_STEP_FACTOR: u64 = 100;

/// Configuration of [`random_walk_solve`].
///
/// Randomness comes from ChaCha8 seeded with `seed`; round `r` uses stream `r`
/// of that generator, so rounds are independent and reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    pub seed: u64,
    /// Steps per round; `None` means `DEFAULT_STEP_FACTOR * n^2`.
    pub step_cap: Option<u64>,
    pub rounds: usize,
}

impl Default for WalkConfig {
    fn default() -> Self {
        WalkConfig {
            seed: 0,
            step_cap: None,
            rounds: 8,
        }
    }
}

impl WalkConfig {
    pub fn with_seed(seed: u64) -> Self {
        WalkConfig {
            seed,
            ..Default::default()
        }
    }

    pub fn effective_step_cap(&self, n: usize) -> u64 {
        self.step_cap
            .unwrap_or_else(|| DEFAULT_STEP_FACTOR.saturating_mul((n as u64).pow(2)))
            .max(1)
    }

    fn validate(&self) -> Result<()> {
        if self.rounds == 0 || self.step_cap == Some(0) {
            return Err(Error::InvalidParams(
                "rounds and step cap must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub result: Option<Assignment>,
    pub steps_used: u64,
    pub rounds_used: usize,
}

impl fmt::Display for SolveReport {
    /// `SAT <v1> ... <vn>` or `UNKNOWN <steps>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.result {
            Some(a) => {
                write!(f, "SAT")?;
                for v in a.values() {
                    write!(f, " {v}")?;
                }
                Ok(())
            }
            None => write!(f, "UNKNOWN {}", self.steps_used),
        }
    }
}

/// One iteration of the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkStep {
    pub clause: usize,
    pub literal: usize,
    pub var: usize,
    pub old: Value,
    pub new: Value,
}

/// State of one round: the current assignment, per-clause satisfied counts
/// and the set of falsified clauses.
pub struct Walker<'a> {
    inst: &'a Instance,
    assign: Assignment,
    sat: Vec<usize>,
    falsified: BTreeSet<usize>,
    /// var -> (clause, multiplicity) pairs
    occurs: Vec<Vec<(usize, usize)>>,
    rng: ChaCha8Rng,
}

impl<'a> Walker<'a> {
    /// Starts from the all-ones assignment.
    pub fn new(inst: &'a Instance, seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        let assign = Assignment::constant(inst.num_vars(), 1);
        let mut occurs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); inst.num_vars()];
        for (ci, c) in inst.clauses().iter().enumerate() {
            for l in &c.literals {
                match occurs[l.var].last_mut() {
                    Some((last, mult)) if *last == ci => *mult += 1,
                    _ => occurs[l.var].push((ci, 1)),
                }
            }
        }
        let sat: Vec<usize> = inst
            .clauses()
            .iter()
            .map(|c| count_satisfied(&assign, c))
            .collect();
        let falsified = sat
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 0)
            .map(|(i, _)| i)
            .collect();
        Walker {
            inst,
            assign,
            sat,
            falsified,
            occurs,
            rng,
        }
    }

    pub fn assignment(&self) -> &Assignment {
        &self.assign
    }

    pub fn is_satisfying(&self) -> bool {
        self.falsified.is_empty()
    }

    /// Repairs the lowest-index falsified clause by moving a uniformly chosen
    /// literal's variable to a uniform value of that literal's set. `None`
    /// when nothing is falsified.
    pub fn step(&mut self) -> Option<WalkStep> {
        let &clause = self.falsified.iter().next()?;
        let lits = &self.inst.clauses()[clause].literals;
        let literal = self.rng.gen_range(0..lits.len());
        let lit = lits[literal];
        let choices: Vec<Value> = lit.set.iter().collect();
        let new = choices[self.rng.gen_range(0..choices.len())];
        let old = self.assign.get(lit.var);
        self.set_var(lit.var, new);
        Some(WalkStep {
            clause,
            literal,
            var: lit.var,
            old,
            new,
        })
    }

    fn set_var(&mut self, var: usize, new: Value) {
        let old = self.assign.0[var];
        if old == new {
            return;
        }
        self.assign.0[var] = new;
        for &(ci, _) in &self.occurs[var] {
            let mut count = self.sat[ci];
            for l in &self.inst.clauses()[ci].literals {
                if l.var != var {
                    continue;
                }
                if l.set.contains(old) {
                    count -= 1;
                }
                if l.set.contains(new) {
                    count += 1;
                }
            }
            let was = self.sat[ci];
            self.sat[ci] = count;
            if was == 0 && count > 0 {
                self.falsified.remove(&ci);
            } else if was > 0 && count == 0 {
                self.falsified.insert(ci);
            }
        }
    }
}

/// Randomized walk for `(1, g, k)`-SetSAT.
///
/// Returns a 1-satisfying assignment or gives up after `rounds` rounds of
/// `step_cap` steps; never returns a wrong answer.
pub fn random_walk_solve(inst: &Instance, cfg: &WalkConfig) -> Result<SolveReport> {
    cfg.validate()?;
    let cap = cfg.effective_step_cap(inst.num_vars());
    let mut steps_used = 0u64;
    for round in 0..cfg.rounds {
        let mut w = Walker::new(inst, cfg.seed, round as u64);
        let mut steps = 0u64;
        while !w.is_satisfying() && steps < cap {
            w.step();
            steps += 1;
        }
        steps_used += steps;
        if w.is_satisfying() {
            let result = w.assign;
            if !is_g_satisfying(&result, inst, 1) {
                return Err(Error::Verification(
                    "random walk produced a non-satisfying assignment".into(),
                ));
            }
            return Ok(SolveReport {
                result: Some(result),
                steps_used,
                rounds_used: round + 1,
            });
        }
    }
    Ok(SolveReport {
        result: None,
        steps_used,
        rounds_used: cfg.rounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_instance;

    fn two_clause() -> Instance {
        parse_instance("p setsat 2 1 2 2 2\n1:1 2:1\n1:2 2:2\n").unwrap()
    }

    #[test]
    fn empty_instance_returns_start() {
        let inst = Instance::empty(3, 2, 3, 4).unwrap();
        let r = random_walk_solve(&inst, &WalkConfig::default()).unwrap();
        assert_eq!(r.result, Some(Assignment(vec![1; 4])));
        assert_eq!(r.steps_used, 0);
        assert_eq!(r.to_string(), "SAT 1 1 1 1");
    }

    #[test]
    fn boolean_two_clause_example() {
        // Brute force over [2]^2: exactly (1,2) and (2,1) satisfy both clauses.
        let inst = two_clause();
        for seed in 0..20 {
            let r = random_walk_solve(&inst, &WalkConfig::with_seed(seed)).unwrap();
            let a = r.result.expect("satisfiable");
            assert!(a.0 == vec![1, 2] || a.0 == vec![2, 1]);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let inst = two_clause();
        let cfg = WalkConfig::with_seed(42);
        assert_eq!(
            random_walk_solve(&inst, &cfg).unwrap(),
            random_walk_solve(&inst, &cfg).unwrap()
        );
    }

    #[test]
    fn unsatisfiable_gives_unknown() {
        let inst = parse_instance("p setsat 2 1 1 2 1\n1:1\n1:2\n").unwrap();
        let cfg = WalkConfig {
            seed: 3,
            step_cap: Some(50),
            rounds: 2,
        };
        let r = random_walk_solve(&inst, &cfg).unwrap();
        assert_eq!(r.result, None);
        assert_eq!(r.steps_used, 100);
        assert_eq!(r.to_string(), "UNKNOWN 100");
    }

    #[test]
    fn step_changes_one_variable_into_literal_set() {
        let inst = parse_instance(
            "p setsat 3 2 3 3 3\n1:2,3 2:2,3 3:2,3\n1:1,3 2:1,2 3:1,2\n1:2,3 1:2,3 2:1,3\n",
        )
        .unwrap();
        let mut w = Walker::new(&inst, 9, 0);
        for _ in 0..50 {
            let before = w.assignment().clone();
            let Some(st) = w.step() else { break };
            let after = w.assignment();
            let lit = inst.clauses()[st.clause].literals[st.literal];
            assert_eq!(lit.var, st.var);
            assert!(lit.set.contains(after.get(st.var)));
            let changed = (0..inst.num_vars())
                .filter(|&i| before.get(i) != after.get(i))
                .count();
            assert!(changed <= 1);
            assert_eq!(before.get(st.var), st.old);
        }
    }
}
