//! Acceptance suite. Runs without the test harness so each criterion prints
//! exactly one PASS or FAIL line; the process fails if any criterion does.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use centieq::affine::{leq_forall, AffExpr, ForallCheck};
use centieq::corpus::{bi_nash_sweep, theorem_sweep};
use centieq::escalation::{agu, ngu};
use centieq::fingame::{
    a_owned_nodes, best_deviation, enumerate_deviations, f2u, fin_convertible, random_choices, random_game, FinStrategy,
};
use centieq::infgame::random::{agent_set, random_coalg_game, random_periodic_game, random_periodic_strategy, SpineGenConfig};
use centieq::infgame::{
    decompose, evt_right, i2u, is_inf_nash, is_sgpe, recompose, InfNashWitness, Spine, SpineStrategy, StrategySegment,
};
use centieq::syntax::{self, Body, GameDoc};
use centieq::{AgentId, Choice, GeNat, LeNum, Preference, Verdict};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn some_agent<R: Rng>(agents: &centieq::AgentSet, rng: &mut R) -> AgentId {
    agents.get(rng.random_range(0..agents.len())).unwrap().clone()
}

// 1
fn bi_implies_nash() -> Outcome {
    let t = Instant::now();
    let sweep = bi_nash_sweep(2024, 1000, 6, &GeNat).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    ensure(sweep.games == 1000, || format!("only {} games", sweep.games))?;
    ensure(sweep.violations.is_empty(), || format!("{} violations, first at game {}", sweep.violations.len(), sweep.violations[0].index))?;
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("1000 games, {} profiles, 0 violations, {:.2?}", sweep.profiles, elapsed))
}

/// Convertible iff every node not owned by `a` makes the same choice.
fn convertible_oracle(a: &AgentId, s: &FinStrategy<u64>, t: &FinStrategy<u64>) -> bool {
    match (s, t) {
        (FinStrategy::Leaf(x), FinStrategy::Leaf(y)) => x == y,
        (
            FinStrategy::Node { agent, choice, left, right },
            FinStrategy::Node { agent: agent2, choice: choice2, left: left2, right: right2 },
        ) => {
            agent == agent2
                && (agent == a || choice == choice2)
                && convertible_oracle(a, left, left2)
                && convertible_oracle(a, right, right2)
        }
        _ => false,
    }
}

/// Re-randomizes the choices of `a`'s nodes only.
fn perturb<R: Rng>(a: &AgentId, s: &FinStrategy<u64>, rng: &mut R) -> FinStrategy<u64> {
    match s {
        FinStrategy::Leaf(ua) => FinStrategy::Leaf(ua.clone()),
        FinStrategy::Node { agent, choice, left, right } => {
            let choice = if agent == a && rng.random_bool(0.5) { choice.flip() } else { *choice };
            let (l, r) = (perturb(a, left, rng), perturb(a, right, rng));
            FinStrategy::node(agent.clone(), choice, l, r)
        }
    }
}

// 2
fn convertibility_laws() -> Outcome {
    let mut r = rng(2);
    let mut transitive_premises = 0;
    for i in 0..1000 {
        let agents = agent_set(r.random_range(2..=3));
        let g = random_game(&agents, 6, 0..=9, &mut r);
        let a = some_agent(&agents, &mut r);
        let s1 = random_choices(&g, &mut r);
        // Half of the triples are chains of a-only changes so transitivity
        // is exercised with true premises.
        let (s2, s3) = if i % 2 == 0 {
            let s2 = perturb(&a, &s1, &mut r);
            let s3 = perturb(&a, &s2, &mut r);
            (s2, s3)
        } else {
            (random_choices(&g, &mut r), random_choices(&g, &mut r))
        };
        let c = |x: &FinStrategy<u64>, y: &FinStrategy<u64>| fin_convertible(&a, x, y);
        for (x, y) in [(&s1, &s2), (&s2, &s3), (&s1, &s3)] {
            ensure(c(x, y) == convertible_oracle(&a, x, y), || format!("triple {i}: disagrees with oracle"))?;
            ensure(c(x, y) == c(y, x), || format!("triple {i}: not symmetric"))?;
        }
        for x in [&s1, &s2, &s3] {
            ensure(c(x, x), || format!("triple {i}: not reflexive"))?;
        }
        if c(&s1, &s2) && c(&s2, &s3) {
            transitive_premises += 1;
            ensure(c(&s1, &s3), || format!("triple {i}: not transitive"))?;
        }
    }
    Ok(format!("1000 triples, {transitive_premises} with transitivity premises, 0 violations"))
}

// 3
fn best_deviation_agrees() -> Outcome {
    let mut r = rng(3);
    let mut checked = 0;
    let mut outcomes = 0usize;
    while checked < 500 {
        let agents = agent_set(r.random_range(2..=3));
        let g = random_game(&agents, 6, 0..=9, &mut r);
        let s = random_choices(&g, &mut r);
        let a = some_agent(&agents, &mut r);
        if a_owned_nodes(&a, &s) > 10 {
            continue;
        }
        for (ord, name) in [(&GeNat as &dyn Preference<u64>, "ge"), (&LeNum, "le")] {
            let best = *f2u(&best_deviation(&a, &s, ord).map_err(|e| e.to_string())?).get(&a).unwrap();
            let mut oracle: Option<u64> = None;
            for d in enumerate_deviations(&a, &s) {
                ensure(fin_convertible(&a, &s, &d), || format!("game {checked}: enumerated a non-deviation"))?;
                let u = *f2u(&d).get(&a).unwrap();
                outcomes += 1;
                oracle = Some(match oracle {
                    Some(m) if ord.leq(&u, &m) => m,
                    _ => u,
                });
            }
            ensure(Some(best) == oracle, || format!("game {checked} ({name}): best {best}, oracle {oracle:?}"))?;
        }
        checked += 1;
    }
    Ok(format!("500 games under both orders, {outcomes} deviations enumerated, exact agreement"))
}

/// The same strategy behind a step function: position `i` is the periodic
/// description instantiated at `i`.
fn as_coalg(s: &SpineStrategy) -> SpineStrategy {
    let p = s.clone();
    Spine::coalg(0, move |i| (p.segment_at(i as usize), i + 1))
}

// 4
fn i2u_exists_and_is_unique() -> Outcome {
    let mut r = rng(4);
    let mut checked = 0;
    while checked < 200 {
        let s = random_periodic_strategy(&SpineGenConfig::default(), &mut r);
        if !evt_right(&s, 64).is_holds() {
            continue;
        }
        let unfolded = as_coalg(&s);
        // oracle: walk the spine to the first Right and read the leaf
        let seen = s.observe(64);
        let k = seen.iter().position(|seg: &StrategySegment<u64>| seg.choice == Choice::Right).ok_or("no right in 64")?;
        for a in s.agents(64) {
            let exact = i2u(&a, &s, 64).map_err(|e| e.to_string())?;
            let walked = i2u(&a, &unfolded, 64).map_err(|e| e.to_string())?;
            let oracle = *f2u(&seen[k].right).get(&a).unwrap();
            ensure(exact.is_some(), || format!("strategy {checked}: i2u undefined for {a}"))?;
            ensure(exact == walked && exact == Some(oracle), || {
                format!("strategy {checked}, {a}: periodic {exact:?}, unfolded {walked:?}, oracle {oracle}")
            })?;
        }
        checked += 1;
    }
    Ok("200 strategies, every agent defined, both evaluations agree".into())
}

// 5
fn always_give_up_is_sgpe() -> Outcome {
    for n in 0..=100u64 {
        let s = agu(n);
        ensure(is_sgpe(&s, &GeNat).map_err(|e| e.to_string())?.is_holds(), || format!("agu({n}) not certified"))?;
        // Unrolled: at every spine node the mover pays no more by exiting
        // than by passing to the next node, which exits at once.
        let seen = s.observe(51);
        for i in 0..50 {
            let mover = &seen[i].agent;
            let exit = *f2u(&seen[i].right).get(mover).unwrap();
            let pass = *f2u(&seen[i + 1].right).get(mover).unwrap();
            ensure(exit <= pass, || format!("agu({n}) position {i}: exit {exit} > pass {pass}"))?;
        }
    }
    Ok("n = 0..=100 Holds; 50 unrolled node inequalities each confirmed".into())
}

// 6
fn never_give_up_is_refuted() -> Outcome {
    for n in 0..=100u64 {
        let s = ngu(n);
        ensure(evt_right(&s, 64).is_refuted(), || format!("ngu({n}): evt_right not refuted"))?;
        let v = is_inf_nash(&s, &GeNat, 64).map_err(|e| e.to_string())?;
        ensure(matches!(v, Verdict::Refuted(InfNashWitness::EvtRightFails(_))), || format!("ngu({n}): {:?}", v.kind()))?;
    }
    Ok("n = 0..=100 Refuted, reason EvtRight fails".into())
}

// 7
fn main_theorem_holds() -> Outcome {
    let mut parts = Vec::new();
    for (ord, name) in [(&GeNat as &dyn Preference<u64>, "ge"), (&LeNum, "le")] {
        let sweep = theorem_sweep(7, 200, 64, ord).map_err(|e| e.to_string())?;
        ensure(sweep.violations.is_empty(), || format!("{name}: {} violations, first at {}", sweep.violations.len(), sweep.violations[0].index))?;
        parts.push(format!("{name}: premises {} nash {}", sweep.premises_hold, sweep.nash_holds));
    }
    Ok(format!("200 strategies per order, 0 violations ({})", parts.join(", ")))
}

// 8
fn decomposition_round_trips() -> Outcome {
    let mut r = rng(8);
    for i in 0..100u64 {
        let g = if i % 4 == 3 {
            random_coalg_game(r.random_range(2..=3), 2, r.random(), (i % 8 == 7).then_some(5))
        } else {
            random_periodic_game(&SpineGenConfig::default(), &mut r)
        };
        let (agent, left, right) = decompose(&g);
        let back = recompose(agent.clone(), left.clone(), right.clone());
        ensure(back.observe(20) == g.observe(20), || format!("game {i}: round trip differs"))?;
        let head = &g.observe(1)[0];
        ensure(head.agent == agent && head.right == right, || format!("game {i}: root differs"))?;
        ensure(left.observe(19) == g.observe(20)[1..], || format!("game {i}: left subgame differs"))?;
    }
    Ok("100 games (75 periodic, 25 step-function), equal to depth 20".into())
}

fn random_doc<R: Rng>(i: usize, rng: &mut R) -> GameDoc {
    let agents = agent_set(rng.random_range(1..=4));
    let body = match i % 4 {
        0 => Body::FinGame(random_game(&agents, 5, 0..=1000, rng)),
        1 => {
            let g = random_game(&agents, 5, 0..=1000, rng);
            Body::FinStrategy(random_choices(&g, rng))
        }
        _ => {
            let n = agents.len();
            let cfg = SpineGenConfig { agents: n..=n, intercepts: 0..=20, ..SpineGenConfig::default() };
            let s = random_periodic_strategy(&cfg, rng);
            if i % 4 == 2 {
                Body::SpineStrategy(s.as_periodic().unwrap().clone())
            } else {
                Body::SpineGame(s.erase().as_periodic().unwrap().clone())
            }
        }
    };
    GameDoc { agents, body }
}

// 9
fn parser_is_robust() -> Outcome {
    let mut r = rng(9);
    let mut texts = Vec::new();
    for i in 0..500 {
        let doc = random_doc(i, &mut r);
        let text = syntax::print(&doc);
        let back = syntax::parse(&text).map_err(|e| format!("document {i}: {e}"))?;
        ensure(back == doc, || format!("document {i}: structure changed"))?;
        ensure(syntax::print(&back) == text, || format!("document {i}: text changed"))?;
        texts.push(text);
    }
    let mut rejected = 0;
    for i in 0..10_000 {
        let bytes: Vec<u8> = if i % 2 == 0 {
            let len = r.random_range(0..200);
            (0..len).map(|_| r.random()).collect()
        } else {
            // mutate a valid document so the input gets past the reader
            let mut b = texts[r.random_range(0..texts.len())].as_bytes().to_vec();
            for _ in 0..r.random_range(1..4) {
                let at = r.random_range(0..b.len());
                match r.random_range(0..3) {
                    0 => b[at] = r.random(),
                    1 => {
                        b.remove(at);
                    }
                    _ => b.insert(at, b"()ab 0-;\n"[r.random_range(0..9)]),
                }
            }
            b
        };
        let result = catch_unwind(|| syntax::parse_bytes(&bytes)).map_err(|_| format!("input {i} panicked: {bytes:?}"))?;
        if let Err(e) = result {
            ensure(e.pos.line >= 1 && e.pos.column >= 1, || format!("input {i}: position {}", e.pos))?;
            rejected += 1;
        }
    }
    Ok(format!("500 round trips exact; 10000 fuzzed inputs, {rejected} rejected gracefully, 0 crashes"))
}

fn numeric_leq(lhs: AffExpr, rhs: AffExpr, k: u64) -> bool {
    let v = |e: AffExpr| e.slope as i128 * k as i128 + e.intercept as i128;
    v(lhs) >= v(rhs)
}

// 10
fn affine_engine_agrees() -> Outcome {
    let mut r = rng(10);
    let mut fails = 0;
    for i in 0..1000 {
        let e = |r: &mut ChaCha8Rng| AffExpr::new(r.random_range(0..=10), r.random_range(-50..=200));
        let (lhs, rhs) = (e(&mut r), e(&mut r));
        let n0 = r.random_range(0..=100u64);
        let window = n0..=n0 + 1000;
        let numeric = window.clone().all(|k| numeric_leq(lhs, rhs, k));
        match leq_forall(lhs, rhs, n0) {
            ForallCheck::Valid => ensure(numeric, || format!("pair {i}: {lhs} =< {rhs} from {n0} claimed but fails numerically"))?,
            ForallCheck::Fails { at } => {
                fails += 1;
                ensure(!numeric, || format!("pair {i}: refuted at {at} but holds on the window"))?;
                ensure(window.contains(&at) && !numeric_leq(lhs, rhs, at), || format!("pair {i}: witness {at} invalid"))?;
                ensure((n0..at).all(|k| numeric_leq(lhs, rhs, k)), || format!("pair {i}: witness {at} not the first"))?;
            }
        }
    }
    Ok(format!("1000 pairs, {fails} refuted with valid least witnesses"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("bi-implies-nash", bi_implies_nash),
        ("convertibility-laws", convertibility_laws),
        ("best-deviation-oracle", best_deviation_agrees),
        ("i2u-exists-unique", i2u_exists_and_is_unique),
        ("agu-sgpe", always_give_up_is_sgpe),
        ("ngu-refuted", never_give_up_is_refuted),
        ("main-theorem-sweep", main_theorem_holds),
        ("decompose-round-trip", decomposition_round_trips),
        ("parser-robustness", parser_is_robust),
        ("affine-engine", affine_engine_agrees),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
