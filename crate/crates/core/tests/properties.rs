use std::sync::OnceLock;

use proptest::prelude::*;

use setsat::labelcover::{parse_blc, serialize_blc, BipartiteLC, LcEdge};
use setsat::model::{
    build_pcsp_template, count_satisfied, is_g_satisfying, parse_instance, serialize_instance, Clause, Instance,
    Literal, SetSatParams, ValueSet, DEFAULT_TEMPLATE_BUDGET,
};
use setsat::polymorph::{
    apply_minor, enumerate_polymorphisms, is_polymorphism_direct, is_polymorphism_smug, parse_function,
    serialize_function, smug_of, transport_witness, FunctionTable, MinorMap, DEFAULT_DIRECT_BUDGET,
    DEFAULT_ENUM_BUDGET, DEFAULT_TABLE_BUDGET,
};
use setsat::solvers::{brute_force_best_g, random_walk_solve, WalkConfig, DEFAULT_BRUTE_BUDGET};
use setsat::Value;

/// (d, s, k, n) then clauses as (var, set index) per literal.
fn instance() -> impl Strategy<Value = Instance> {
    (2usize..=4, 1usize..=3, 1usize..=3, 1usize..=5)
        .prop_filter("s < d", |(d, s, _, _)| s < d)
        .prop_flat_map(|(d, s, k, n)| {
            let sets = ValueSet::all_of_size(d, s);
            let lit = (0..n, 0..sets.len());
            let clauses = prop::collection::vec(prop::collection::vec(lit, k), 0..8);
            (Just((d, s, k, n, sets)), clauses)
        })
        .prop_map(|((d, s, k, n, sets), cs)| {
            let clauses =
                cs.into_iter().map(|c| Clause::new(c.into_iter().map(|(v, i)| Literal::new(v, sets[i])).collect()));
            Instance::new(d, s, k, n, clauses.collect()).unwrap()
        })
}

fn table(max_d: usize, max_arity: usize) -> impl Strategy<Value = FunctionTable> {
    (2..=max_d, 1..=max_arity).prop_flat_map(|(d, m)| {
        prop::collection::vec(1..=d as Value, d.pow(m as u32)).prop_map(move |v| FunctionTable::dense(d, m, v).unwrap())
    })
}

fn minor_map(source: usize) -> impl Strategy<Value = MinorMap> {
    (1..=3usize).prop_flat_map(move |t| {
        prop::collection::vec(0..t, source).prop_map(move |m| MinorMap::new(m, t).unwrap())
    })
}

fn input(d: usize, arity: usize) -> impl Strategy<Value = Vec<Value>> {
    prop::collection::vec(1..=d as Value, arity)
}

/// Arity-2 polymorphisms of (1,3,5)-SetSAT over [3].
fn polymorphisms() -> &'static [FunctionTable] {
    static P: OnceLock<Vec<FunctionTable>> = OnceLock::new();
    P.get_or_init(|| {
        let p = SetSatParams::new(3, 2, 1, 3, 5).unwrap();
        enumerate_polymorphisms(&p, 2, DEFAULT_ENUM_BUDGET).unwrap()
    })
}

/// Exhaustive homomorphism search from the instance's structure into one side
/// of the template, working only with the template's relation tuples.
fn homomorphism_exists(inst: &Instance, params: SetSatParams, b_side: bool) -> bool {
    let t = build_pcsp_template(params, DEFAULT_TEMPLATE_BUDGET).unwrap();
    let d = inst.d();
    let n = inst.num_vars();
    let facts: Vec<(usize, Vec<usize>)> = inst
        .clauses()
        .iter()
        .map(|c| {
            let sets: Vec<ValueSet> = c.literals.iter().map(|l| l.set).collect();
            (t.type_index(&sets).unwrap(), c.literals.iter().map(|l| l.var).collect())
        })
        .collect();
    let rels = if b_side { &t.rel_b } else { &t.rel_a };
    let mut h = vec![1 as Value; n];
    loop {
        let ok = facts.iter().all(|(ty, vars)| {
            let tuple: Vec<Value> = vars.iter().map(|&v| h[v]).collect();
            rels[*ty].binary_search(&t.encode_tuple(&tuple)).is_ok()
        });
        if ok {
            return true;
        }
        let mut i = 0;
        while i < n && h[i] as usize == d {
            h[i] = 1;
            i += 1;
        }
        if i == n {
            return false;
        }
        h[i] += 1;
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn setsat_round_trip(inst in instance()) {
        let text = serialize_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn count_is_bounded(inst in instance(), seed in any::<u64>()) {
        let vals: Vec<Value> = (0..inst.num_vars()).map(|i| ((seed >> (i * 3)) as usize % inst.d() + 1) as Value).collect();
        let a = setsat::model::Assignment::new(vals, inst.d()).unwrap();
        for c in inst.clauses() {
            prop_assert!(count_satisfied(&a, c) <= inst.k());
        }
    }

    #[test]
    fn function_round_trip(f in table(4, 3)) {
        let text = serialize_function(&f);
        let back = parse_function(&text).unwrap();
        prop_assert_eq!(back.values(), f.values());
        prop_assert_eq!(serialize_function(&back), text);
    }

    #[test]
    fn blc_round_trip(m in 1usize..4, ny in 1usize..4, nz in 1usize..4, raw in prop::collection::vec((0usize..16, 0usize..16, prop::collection::vec(0usize..16, 4)), 0..8)) {
        let mut seen = std::collections::HashSet::new();
        let cs: Vec<LcEdge> = raw
            .into_iter()
            .map(|(y, z, map)| LcEdge { y: y % ny, z: z % nz, map: map[..m].iter().map(|v| v % m).collect() })
            .filter(|e| seen.insert((e.y, e.z)))
            .collect();
        let b = BipartiteLC::new(m, ny, nz, cs).unwrap();
        let text = serialize_blc(&b);
        prop_assert_eq!(serialize_blc(&parse_blc(&text).unwrap()), text);
    }

    #[test]
    fn smug_preimage_of_minor(
        (f, pi, v) in table(3, 4).prop_flat_map(|f| {
            let a = f.arity();
            let d = f.d();
            (Just(f), minor_map(a)).prop_flat_map(move |(f, pi)| {
                let t = pi.target_arity();
                (Just(f), Just(pi), input(d, t))
            })
        })
    ) {
        let g = apply_minor(&f, &pi, DEFAULT_TABLE_BUDGET).unwrap();
        let s = smug_of(&g, &v).unwrap();
        let u = transport_witness(&pi, &v);
        prop_assert_eq!(smug_of(&f, &u).unwrap(), pi.preimage(&s));
    }

    #[test]
    fn minors_of_polymorphisms_are_polymorphisms(idx in any::<prop::sample::Index>(), pi in minor_map(2)) {
        let p = SetSatParams::new(3, 2, 1, 3, 5).unwrap();
        let all = polymorphisms();
        let f = &all[idx.index(all.len())];
        let g = apply_minor(f, &pi, DEFAULT_TABLE_BUDGET).unwrap();
        prop_assert!(is_polymorphism_smug(&g, &p, DEFAULT_TABLE_BUDGET).unwrap().is_polymorphism());
    }

    #[test]
    fn smug_agrees_with_direct(f in table(3, 2), g in 2usize..=4) {
        prop_assume!(f.d() == 3);
        let p = SetSatParams::new(3, 2, 1, g, g + 1).unwrap();
        let smug = is_polymorphism_smug(&f, &p, DEFAULT_TABLE_BUDGET).unwrap().is_polymorphism();
        prop_assert_eq!(smug, is_polymorphism_direct(&f, &p, DEFAULT_DIRECT_BUDGET).unwrap());
    }

    #[test]
    fn walk_is_sound_and_deterministic(inst in instance(), seed in any::<u64>()) {
        let cfg = WalkConfig { seed, step_cap: Some(200), rounds: 2 };
        let r = random_walk_solve(&inst, &cfg).unwrap();
        if let Some(a) = &r.result {
            prop_assert!(is_g_satisfying(a, &inst, 1));
        }
        let again = random_walk_solve(&inst, &cfg).unwrap();
        prop_assert_eq!(again.result, r.result);
        prop_assert_eq!(again.steps_used, r.steps_used);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn template_homomorphism_matches_brute_force(inst in instance()) {
        prop_assume!(inst.d() <= 3 && inst.num_vars() <= 5);
        let (best, _) = brute_force_best_g(&inst, DEFAULT_BRUTE_BUDGET).unwrap();
        let k = inst.k();
        for g in 1..=k {
            let p = SetSatParams::new(inst.d(), inst.s(), 1, g, k).unwrap();
            prop_assert_eq!(homomorphism_exists(&inst, p, false), best >= g, "g={}", g);
        }
        let p = SetSatParams::new(inst.d(), inst.s(), 1, k, k).unwrap();
        prop_assert_eq!(homomorphism_exists(&inst, p, true), best >= 1);
    }
}
