use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};

use setsat::labelcover::{
    brute_solve_bipartite, brute_solve_layered, build_layered, decode_layered, decode_minion_assignment, parse_blc,
    parse_bmc, parse_llc, projection_robustness, serialize_bmc, serialize_llc, BipartiteAssignment,
    BipartiteMinorCondition, LayeredAssignment, LayeredLC, MinionAssignment, DEFAULT_LC_BUDGET,
};
use setsat::model::{parse_instance, serialize_instance, Assignment, SetSatParams};
use setsat::polymorph::{
    apply_minor, build_olsak, build_qm, build_siggers, check_identities, enumerate_polymorphisms,
    find_disjoint_minimal_smug, find_small_smug_set, is_polymorphism_direct, is_polymorphism_smug,
    max_disjoint_smug, parse_function, plurality, q_from_family, serialize_function, DisjointOutcome,
    FunctionTable, IdentitySet, MinorMap, SmugScan, SmugToPolymFamily, Verdict, DEFAULT_DIRECT_BUDGET,
    DEFAULT_ENUM_BUDGET, DEFAULT_TABLE_BUDGET,
};
use setsat::reductions::{
    apply_reduction, parse_cnf, parse_graph, parse_hgr, verify_reduction, ReductionKind, SourceProblem,
    VerifyConfig, DEFAULT_REDUCTION_BUDGET,
};
use setsat::solvers::{brute_force_best_g, plant_instance, random_walk_solve, WalkConfig, DEFAULT_BRUTE_BUDGET};
use setsat::Value;

use crate::args::{BuildCommand, Command, LcCommand, McCommand, PolyCommand, ReduceArgs};
use crate::Report;

type Outcome = Result<(Report, Option<PathBuf>)>;

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn parse_params(s: &str) -> Result<SetSatParams> {
    let v: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| anyhow!("--params expects d,s,a,g,k, got `{s}`"))?;
    if v.len() != 5 {
        bail!("--params expects five numbers d,s,a,g,k, got `{s}`");
    }
    Ok(SetSatParams::new(v[0], v[1], v[2], v[3], v[4])?)
}

fn parse_values(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().map_err(|_| anyhow!("invalid value `{t}`")))
        .collect()
}

/// 1-based values to 0-based labels below `m`.
fn labels(s: &str, m: usize) -> Result<Vec<usize>> {
    parse_values(s)?
        .into_iter()
        .map(|v| if v == 0 || v > m { Err(anyhow!("value {v} outside 1..={m}")) } else { Ok(v - 1) })
        .collect()
}

fn join<T: ToString>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn show_layered(a: &LayeredAssignment) -> String {
    a.iter().map(|l| join(l.iter().map(|v| v + 1))).collect::<Vec<_>>().join(" / ")
}

fn show_bipartite(a: &BipartiteAssignment) -> String {
    format!("{} / {}", join(a.y.iter().map(|v| v + 1)), join(a.z.iter().map(|v| v + 1)))
}

/// Reads a `.fun` file; implicit tables are tabulated when the budget allows.
fn load_function(path: &Path, budget: Option<u128>) -> Result<FunctionTable> {
    let f = parse_function(&read(path)?).with_context(|| format!("in {}", path.display()))?;
    if f.is_dense() {
        return Ok(f);
    }
    Ok(f.to_dense(budget.unwrap_or(DEFAULT_TABLE_BUDGET)).unwrap_or(f))
}

/// The `p <kind>` tag of the first content line.
fn header_kind(text: &str) -> Option<&str> {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c'))
        .and_then(|l| l.split_whitespace().nth(1))
}

enum Lc {
    Bipartite(setsat::labelcover::BipartiteLC),
    Layered(LayeredLC),
}

fn load_lc(path: &Path) -> Result<Lc> {
    let text = read(path)?;
    let ctx = || format!("in {}", path.display());
    match header_kind(&text) {
        Some("blc") => Ok(Lc::Bipartite(parse_blc(&text).with_context(ctx)?)),
        Some("llc") => Ok(Lc::Layered(parse_llc(&text).with_context(ctx)?)),
        _ => bail!("{} is neither a .blc nor a .llc file", path.display()),
    }
}

fn layered_assignment(s: &str, llc: &LayeredLC) -> Result<LayeredAssignment> {
    let parts: Vec<&str> = s.split('/').collect();
    if parts.len() != llc.layers().len() {
        bail!("expected {} layers separated by `/`, got {}", llc.layers().len(), parts.len());
    }
    parts.iter().map(|p| labels(p, llc.m())).collect()
}

pub fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Solve(a) => {
            let inst = parse_instance(&read(&a.input.input)?)?;
            let cfg = WalkConfig { seed: a.seed, step_cap: a.steps_cap, rounds: a.rounds };
            let r = random_walk_solve(&inst, &cfg)?;
            let mut rep = Report::new(r.result.is_some())
                .line(r.to_string())
                .kv("result", if r.result.is_some() { "SAT" } else { "UNKNOWN" });
            if let Some(x) = &r.result {
                rep = rep.kv("assignment", join(x.values()));
            }
            rep = rep.kv("steps", r.steps_used).kv("rounds", r.rounds_used).seed(a.seed);
            if let Some(g) = a.g {
                let inside = g * (inst.s() + 1) >= inst.k() * inst.s();
                rep = rep.kv("regime", if inside { "g/k>=s/(s+1)" } else { "g/k<s/(s+1)" });
                if !inside {
                    rep = rep.line("note: g/k < s/(s+1), the walk is sound but may fail");
                }
            }
            Ok((rep, None))
        }
        Command::BestG(a) => {
            let inst = parse_instance(&read(&a.input.input)?)?;
            let (g, w) = brute_force_best_g(&inst, a.budget.budget.unwrap_or(DEFAULT_BRUTE_BUDGET))?;
            let rep = Report::new(true)
                .line(format!("BEST_G {g} {}", join(w.values())))
                .kv("g_star", g)
                .kv("witness", join(w.values()));
            Ok((rep, None))
        }
        Command::Check(a) => {
            let inst = parse_instance(&read(&a.input.input)?)?;
            let vals: Vec<Value> = parse_values(&a.assign)?
                .into_iter()
                .map(|v| Value::try_from(v).map_err(|_| anyhow!("value {v} too large")))
                .collect::<Result<_>>()?;
            if vals.len() != inst.num_vars() {
                bail!("assignment has {} values, instance has {} variables", vals.len(), inst.num_vars());
            }
            let asg = Assignment::new(vals, inst.d())?;
            let min = inst.min_satisfied(&asg);
            let rep = if min >= a.g {
                Report::new(true).line(format!("SATISFIED g={} min={min}", a.g))
            } else {
                let (i, c) = inst
                    .clauses()
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i, setsat::model::count_satisfied(&asg, c)))
                    .find(|&(_, c)| c < a.g)
                    .expect("some clause is below g");
                Report::new(false).line(format!("FALSIFIED g={} clause={} count={c}", a.g, i + 1)).kv("clause", i + 1)
            };
            Ok((rep.kv("satisfied", min >= a.g).kv("min", min), None))
        }
        Command::Gen(a) => {
            let p = parse_params(&a.params.params)?;
            let (inst, planted) = plant_instance(p, a.n, a.m, a.seed)?;
            let file = format!(
                "c seed={}\nc planted {}\n{}",
                a.seed,
                join(planted.values()),
                serialize_instance(&inst)
            );
            let rep = Report::new(true)
                .line(format!("GENERATED n={} m={} {p}", a.n, a.m))
                .kv("n", a.n)
                .kv("m", a.m)
                .seed(a.seed)
                .file(file);
            Ok((rep, a.out.out))
        }
        Command::Poly(c) => poly(c),
        Command::Build(c) => build(c),
        Command::Reduce(a) => reduce(a),
        Command::Lc(c) => lc(c),
        Command::Mc(c) => mc(c),
    }
}

fn poly(cmd: PolyCommand) -> Outcome {
    match cmd {
        PolyCommand::Check { input, params, budget } => {
            let f = load_function(&input, budget.budget)?;
            let p = parse_params(&params.params)?;
            if p.d == p.s + 1 && p.a == 1 {
                let verdict = is_polymorphism_smug(&f, &p, budget.budget.unwrap_or(DEFAULT_TABLE_BUDGET))?;
                let rep = match verdict {
                    Verdict::Polymorphism => Report::new(true).line("POLYMORPHISM"),
                    Verdict::NotPolymorphism(r) => {
                        let mut rep = Report::new(false).line("NOT_POLYMORPHISM");
                        for e in &r.multiset {
                            rep = rep.line(format!("row {} -> {} smug {}", join(&e.witness), f.eval(&e.witness), e.set));
                        }
                        rep.kv("witness_rows", r.multiset.len())
                    }
                };
                let v = if rep.ok { "POLYMORPHISM" } else { "NOT_POLYMORPHISM" };
                Ok((rep.kv("verdict", v).kv("method", "smug"), None))
            } else {
                let ok = is_polymorphism_direct(&f, &p, budget.budget.unwrap_or(DEFAULT_DIRECT_BUDGET))?;
                let v = if ok { "POLYMORPHISM" } else { "NOT_POLYMORPHISM" };
                Ok((Report::new(ok).line(v).kv("verdict", v).kv("method", "direct"), None))
            }
        }
        PolyCommand::Enumerate { params, arity, budget, out } => {
            let p = parse_params(&params.params)?;
            let all = enumerate_polymorphisms(&p, arity, budget.budget.unwrap_or(DEFAULT_ENUM_BUDGET))?;
            let file: String = all.iter().map(serialize_function).collect();
            let rep = Report::new(true).line(format!("COUNT {}", all.len())).kv("count", all.len()).file(file);
            Ok((rep, out.out))
        }
        PolyCommand::Smug { input, all, budget } => {
            let f = load_function(&input, budget.budget)?;
            let scan = SmugScan::new(&f, budget.budget.unwrap_or(DEFAULT_TABLE_BUDGET))?;
            let fam = if all { scan.all() } else { scan.minimal() };
            let mut rep = Report::new(true).kv("count", fam.len()).kv("minimal", !all);
            for e in &fam.entries {
                rep = rep.line(format!("{} witness {}", e.set, join(&e.witness)));
            }
            let sets = fam.entries.iter().map(|e| e.set.to_string()).collect::<Vec<_>>().join(" ");
            Ok((rep.kv("sets", sets), None))
        }
        PolyCommand::FindSmug { input, params, budget } => {
            let f = load_function(&input, budget.budget)?;
            let p = parse_params(&params.params)?;
            let b = budget.budget.unwrap_or(DEFAULT_TABLE_BUDGET);
            if !is_polymorphism_smug(&f, &p, b)?.is_polymorphism() {
                return Ok((Report::new(false).line("NOT_POLYMORPHISM").kv("verdict", "NOT_POLYMORPHISM"), None));
            }
            let mut rep = Report::new(true);
            if p.cmp_threshold().is_lt() {
                let r = find_small_smug_set(&f, &p, b)?;
                rep = rep
                    .line(format!("SMALL {} witness {}", r.set.set, join(&r.set.witness)))
                    .kv("small", r.set.set);
            }
            match find_disjoint_minimal_smug(&f, &p, b)? {
                DisjointOutcome::Small(e) => {
                    rep = rep.line(format!("BELOW_S {} witness {}", e.set, join(&e.witness))).kv("below_s", e.set)
                }
                DisjointOutcome::Disjoint(v) => {
                    let sets = join(v.iter().map(|e| e.set));
                    rep = rep.line(format!("DISJOINT {sets}")).kv("disjoint", sets)
                }
            }
            let md = max_disjoint_smug(&f, b)?;
            Ok((rep.line(format!("MAX_DISJOINT {md}")).kv("max_disjoint", md), None))
        }
        PolyCommand::Minor { input, map, arity, budget, out } => {
            let f = load_function(&input, budget.budget)?;
            let map = parse_values(&map)?;
            let target = arity.unwrap_or_else(|| map.iter().copied().max().unwrap_or(1));
            let pi = MinorMap::one_based(&map, target)?;
            let g = apply_minor(&f, &pi, budget.budget.unwrap_or(DEFAULT_TABLE_BUDGET))?;
            let rep = Report::new(true).line(format!("MINOR arity={}", g.arity())).kv("arity", g.arity());
            Ok((rep.file(serialize_function(&g)), out.out))
        }
        PolyCommand::Identities { input, set } => {
            let f = load_function(&input, None)?;
            let ids = identity_set(&set)?;
            let syms = ids.symbols();
            if syms.len() != 1 {
                bail!("identity set `{set}` uses {} symbols; one function is given", syms.len());
            }
            let chk = check_identities(&[(syms[0].0, &f)], &ids, f.d())?;
            let rep = match &chk.violation {
                None => Report::new(true).line(format!("HOLDS valuations={}", chk.valuations)),
                Some(v) => Report::new(false).line(format!("VIOLATED {v}")),
            };
            Ok((rep.kv("holds", chk.holds()).kv("valuations", chk.valuations), None))
        }
    }
}

/// `olsak`, `siggers` or `gloop:<n>:<u>-<v>,...` with 1-based vertices.
fn identity_set(s: &str) -> Result<IdentitySet> {
    match s {
        "olsak" => Ok(IdentitySet::olsak()),
        "siggers" => Ok(IdentitySet::siggers()),
        _ => {
            let rest = s.strip_prefix("gloop:").ok_or_else(|| anyhow!("unknown identity set `{s}`"))?;
            let (n, edges) = rest.split_once(':').ok_or_else(|| anyhow!("expected gloop:<n>:<u-v,...>"))?;
            let n: usize = n.parse().map_err(|_| anyhow!("invalid vertex count `{n}`"))?;
            let edges = edges
                .split(',')
                .map(|e| {
                    let (u, v) = e.split_once('-').ok_or_else(|| anyhow!("invalid edge `{e}`"))?;
                    let u: usize = u.parse().map_err(|_| anyhow!("invalid edge `{e}`"))?;
                    let v: usize = v.parse().map_err(|_| anyhow!("invalid edge `{e}`"))?;
                    if u == 0 || v == 0 {
                        bail!("vertices are 1-based in `{e}`");
                    }
                    Ok((u - 1, v - 1))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(IdentitySet::gloop(n, &edges)?)
        }
    }
}

fn built(name: &str, f: FunctionTable, out: Option<PathBuf>) -> Outcome {
    let kind = if f.is_dense() { "dense" } else { "implicit" };
    let rep = Report::new(true)
        .line(format!("BUILT {name} arity={} {kind}", f.arity()))
        .kv("arity", f.arity())
        .kv("table", kind)
        .file(serialize_function(&f));
    Ok((rep, out))
}

fn build(cmd: BuildCommand) -> Outcome {
    match cmd {
        BuildCommand::Qm { m, params, out } => built("qm", build_qm(m, &parse_params(&params.params)?)?.0, out.out),
        BuildCommand::Olsak { params, out } => built("olsak", build_olsak(&parse_params(&params.params)?)?, out.out),
        BuildCommand::Siggers { params, out } => {
            built("siggers", build_siggers(&parse_params(&params.params)?)?, out.out)
        }
        BuildCommand::Plurality { d, arity, out } => built("plurality", plurality(d, arity)?, out.out),
        BuildCommand::Family { spec, params, out } => {
            let fam = SmugToPolymFamily::from_spec(&spec)?;
            built("family", q_from_family(&fam, &parse_params(&params.params)?)?, out.out)
        }
    }
}

fn reduce(a: ReduceArgs) -> Outcome {
    let kind = ReductionKind::parse(&a.kind, a.g)?;
    if a.verify {
        let cfg = VerifyConfig { budget: a.budget.budget.unwrap_or(DEFAULT_BRUTE_BUDGET), ..VerifyConfig::new(a.samples, a.seed) };
        let r = verify_reduction(kind, &cfg)?;
        let mut rep = Report::new(r.passed())
            .kv("kind", kind.name())
            .kv("samples", r.samples.len())
            .kv("forward_checked", r.forward_checked())
            .kv("backward_checked", r.backward_checked())
            .kv("violations", r.violations());
        rep = if r.passed() {
            rep.line(format!(
                "VERIFIED {kind} samples={} forward={} backward={}",
                r.samples.len(),
                r.forward_checked(),
                r.backward_checked()
            ))
        } else {
            let (i, s) = r.samples.iter().enumerate().find(|(_, s)| s.failure.is_some()).expect("a violation");
            rep.line(format!("VIOLATION {kind} sample={}: {}", i + 1, s.failure.as_deref().unwrap_or("")))
        };
        return Ok((rep.seed(a.seed), None));
    }
    let path = a.input.as_deref().ok_or_else(|| anyhow!("--in is required unless --verify is given"))?;
    let text = read(path)?;
    let ctx = || format!("in {}", path.display());
    let src = match kind {
        ReductionKind::From3Sat => SourceProblem::Cnf {
            formula: parse_cnf(&text).with_context(ctx)?,
            s: a.s.ok_or_else(|| anyhow!("from-3sat needs --s"))?,
        },
        ReductionKind::FromGraphColoring => SourceProblem::Coloring {
            graph: parse_graph(&text).with_context(ctx)?,
            colors: a.colors.ok_or_else(|| anyhow!("from-graph-coloring needs --colors"))?,
        },
        ReductionKind::FromHypergraphColoring => {
            let c = a.colors.ok_or_else(|| anyhow!("from-hypergraph-coloring needs --colors"))?;
            SourceProblem::HypergraphColoring {
                hypergraph: parse_hgr(&text).with_context(ctx)?,
                g: a.g.ok_or_else(|| anyhow!("from-hypergraph-coloring needs --g"))?,
                r: c,
                c,
            }
        }
        _ => SourceProblem::SetSat {
            instance: parse_instance(&text).with_context(ctx)?,
            params: parse_params(a.params.as_deref().ok_or_else(|| anyhow!("{} needs --params", kind.name()))?)?,
        },
    };
    let (inst, tp) = apply_reduction(kind, &src, a.budget.budget.unwrap_or(DEFAULT_REDUCTION_BUDGET))?;
    let tag = format!("{},{},{},{},{}", tp.d, tp.s, tp.a, tp.g, tp.k);
    let rep = Report::new(true)
        .line(format!("REDUCED {kind} target={tag} n={} m={}", inst.num_vars(), inst.num_clauses()))
        .kv("target", &tag)
        .kv("n", inst.num_vars())
        .kv("m", inst.num_clauses())
        .file(format!("c params {tag}\n{}", serialize_instance(&inst)));
    Ok((rep, a.out.out))
}

fn lc(cmd: LcCommand) -> Outcome {
    match cmd {
        LcCommand::Layer { input, ell, budget, out } => {
            let blc = parse_blc(&read(&input.input)?)?;
            let l = build_layered(&blc, ell, budget.budget.unwrap_or(DEFAULT_LC_BUDGET))?;
            let rep = Report::new(true)
                .line(format!("LAYERED ell={ell} vars={} constraints={}", l.num_vars(), l.constraints().len()))
                .kv("vars", l.num_vars())
                .kv("constraints", l.constraints().len())
                .file(serialize_llc(&l));
            Ok((rep, out.out))
        }
        LcCommand::Chains { input } => {
            let Lc::Layered(l) = load_lc(&input.input)? else {
                bail!("chains need a layered (.llc) instance");
            };
            let n = l.count_chains();
            let mut rep = Report::new(true).line(format!("CHAINS {n}")).kv("chains", n);
            let mult = l.chain_multiplicity();
            for (c, m) in l.constraints().iter().zip(&mult) {
                rep = rep.line(format!("e {} {} {} {} multiplicity {m}", c.i, c.x + 1, c.j, c.y + 1));
            }
            Ok((rep.kv("multiplicities", join(&mult)), None))
        }
        LcCommand::Eval { input, assign } => {
            let frac = match load_lc(&input.input)? {
                Lc::Bipartite(b) => {
                    let (y, z) = assign.split_once('/').ok_or_else(|| anyhow!("expected `<Y values> / <Z values>`"))?;
                    b.sat_fraction(&BipartiteAssignment { y: labels(y, b.m())?, z: labels(z, b.m())? })?
                }
                Lc::Layered(l) => l.weak_sat_fraction(&layered_assignment(&assign, &l)?)?,
            };
            Ok((Report::new(true).line(format!("FRACTION {frac}")).kv("fraction", frac), None))
        }
        LcCommand::Decode { input, ell, assign, budget } => {
            let blc = parse_blc(&read(&input.input)?)?;
            let b = budget.budget.unwrap_or(DEFAULT_LC_BUDGET);
            let l = build_layered(&blc, ell, b)?;
            let r = decode_layered(&l, &layered_assignment(&assign, &l)?, b)?;
            let ok = r.achieved >= r.threshold;
            let (i, j, k) = r.origin;
            let rep = Report::new(ok)
                .line(format!("DECODED {}", show_bipartite(&r.assignment)))
                .line(format!("achieved={} weak={} threshold={}", r.achieved, r.weak, r.threshold))
                .line(format!("origin i={i} j={j} coordinate={}", k + 1))
                .kv("assignment", show_bipartite(&r.assignment))
                .kv("achieved", r.achieved)
                .kv("weak", r.weak)
                .kv("threshold", r.threshold);
            Ok((rep, None))
        }
        LcCommand::Solve { input, budget } => {
            let b = budget.budget.unwrap_or(DEFAULT_LC_BUDGET);
            let (shown, frac) = match load_lc(&input.input)? {
                Lc::Bipartite(blc) => {
                    let (a, f) = brute_solve_bipartite(&blc, b)?;
                    (show_bipartite(&a), f)
                }
                Lc::Layered(l) => {
                    let (a, f) = brute_solve_layered(&l, b)?;
                    (show_layered(&a), f)
                }
            };
            let rep = Report::new(true)
                .line(format!("OPTIMUM {frac}"))
                .line(format!("ASSIGNMENT {shown}"))
                .kv("optimum", frac)
                .kv("assignment", shown);
            Ok((rep, None))
        }
    }
}

fn mc(cmd: McCommand) -> Outcome {
    match cmd {
        McCommand::FromLc { input, out } => {
            let cond = match load_lc(&input.input)? {
                Lc::Bipartite(b) => BipartiteMinorCondition::from_bipartite(&b),
                Lc::Layered(l) => BipartiteMinorCondition::from_layered(&l),
            };
            let rep = Report::new(true)
                .line(format!("CONDITION symbols={} identities={}", cond.symbols().len(), cond.identities().len()))
                .kv("symbols", cond.symbols().len())
                .kv("identities", cond.identities().len())
                .file(serialize_bmc(&cond));
            Ok((rep, out.out))
        }
        McCommand::Qm { m, out } => {
            let cond = BipartiteMinorCondition::qm(m)?;
            let rep = Report::new(true)
                .line(format!("CONDITION symbols={} identities={}", cond.symbols().len(), cond.identities().len()))
                .kv("symbols", cond.symbols().len())
                .kv("identities", cond.identities().len())
                .file(serialize_bmc(&cond));
            Ok((rep, out.out))
        }
        McCommand::Robustness { input, budget } => {
            let cond = parse_bmc(&read(&input.input)?).with_context(|| format!("in {}", input.input.display()))?;
            let r = projection_robustness(&cond, budget.budget.unwrap_or(DEFAULT_LC_BUDGET))?;
            let rep = Report::new(true)
                .line(format!("max={} frac={}", r.max, r.fraction))
                .kv("max", r.max)
                .kv("total", r.total)
                .kv("frac", r.fraction)
                .kv("choice", join(r.choice.iter().map(|c| c + 1)));
            Ok((rep, None))
        }
        McCommand::Decode { input, tables, params, budget } => {
            let l = parse_llc(&read(&input.input)?)?;
            let p = parse_params(&params.params)?;
            let b = budget.budget.unwrap_or(DEFAULT_LC_BUDGET);
            let text = read(&tables)?;
            let fs = split_functions(&text)
                .into_iter()
                .enumerate()
                .map(|(i, t)| {
                    let f = parse_function(t).with_context(|| format!("table {} of {}", i + 1, tables.display()))?;
                    Ok(if f.is_dense() { f } else { f.to_dense(DEFAULT_TABLE_BUDGET).unwrap_or(f) })
                })
                .collect::<Result<Vec<_>>>()?;
            let cond = BipartiteMinorCondition::from_layered(&l);
            let xi = MinionAssignment::new(&cond, fs)?;
            let r = decode_minion_assignment(&l, &xi, &p, b)?;
            let ok = r.fraction >= r.expectation;
            let rep = Report::new(ok)
                .line(format!("DECODED {}", show_layered(&r.assignment)))
                .line(format!(
                    "fraction={} expectation={} threshold={} k_sel={}",
                    r.fraction, r.expectation, r.threshold, r.k_sel
                ))
                .kv("assignment", show_layered(&r.assignment))
                .kv("fraction", r.fraction)
                .kv("expectation", r.expectation)
                .kv("threshold", r.threshold)
                .kv("k_sel", r.k_sel);
            Ok((rep, None))
        }
    }
}

/// Splits concatenated `.fun` texts at their `p` headers.
fn split_functions(text: &str) -> Vec<&str> {
    let mut starts: Vec<usize> = Vec::new();
    let mut pos = 0;
    for line in text.split_inclusive('\n') {
        if line.trim_start().starts_with("p ") {
            starts.push(pos);
        }
        pos += line.len();
    }
    if starts.is_empty() {
        return vec![text];
    }
    starts[0] = 0;
    starts.iter().enumerate().map(|(i, &s)| &text[s..starts.get(i + 1).copied().unwrap_or(text.len())]).collect()
}
