//! Random spine strategies and games for property tests and corpus sweeps.

use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spine::{GameSegment, Spine, SpineGame, SpineStrategy, StrategySegment};
use crate::affine::AffExpr;
use crate::fingame::{random_game, solve_bi, FinGame, FinStrategy};
use crate::model::{AgentId, AgentSet, Choice, Preference, UtilityAssignment};

const NAMES: [&str; 4] = ["alice", "bob", "carol", "dave"];

#[derive(Debug, Clone, PartialEq)]
pub struct SpineGenConfig {
    pub agents: RangeInclusive<usize>,
    pub prefix_len: RangeInclusive<usize>,
    pub period_len: RangeInclusive<usize>,
    /// Maximum depth of each right subtree.
    pub template_depth: usize,
    pub slopes: RangeInclusive<i64>,
    pub intercepts: RangeInclusive<i64>,
    pub start: RangeInclusive<u64>,
    /// Probability that a spine node chooses Right.
    pub right_probability: f64,
    /// Set right-subtree choices by backward induction instead of at random.
    pub solve_templates: bool,
}

impl Default for SpineGenConfig {
    fn default() -> Self {
        Self {
            agents: 2..=3,
            prefix_len: 0..=2,
            period_len: 1..=3,
            template_depth: 2,
            slopes: 0..=2,
            intercepts: 0..=9,
            start: 0..=5,
            right_probability: 0.5,
            solve_templates: false,
        }
    }
}

/// Compares affine payoffs by their eventual value under the escalation
/// order. Total, so backward induction always succeeds.
struct Eventually;

impl Preference<AffExpr> for Eventually {
    fn leq(&self, u: &AffExpr, v: &AffExpr) -> bool {
        (u.slope, u.intercept) >= (v.slope, v.intercept)
    }
}

pub fn agent_set(n: usize) -> AgentSet {
    AgentSet::new(NAMES[..n.clamp(1, NAMES.len())].iter().copied()).expect("distinct names")
}

fn random_expr<R: Rng + ?Sized>(cfg: &SpineGenConfig, rng: &mut R) -> AffExpr {
    AffExpr::new(rng.random_range(cfg.slopes.clone()), rng.random_range(cfg.intercepts.clone()))
}

fn random_template<R: Rng + ?Sized>(cfg: &SpineGenConfig, agents: &AgentSet, rng: &mut R) -> FinStrategy<AffExpr> {
    let shape = random_game(agents, cfg.template_depth, 0..=0, rng);
    let game = shape.map_payoffs(&mut |_| AffExpr::default());
    let game = fill(&game, cfg, rng);
    if cfg.solve_templates {
        solve_bi(&game, &Eventually).expect("total order")
    } else {
        crate::fingame::random_choices(&game, rng)
    }
}

fn fill<R: Rng + ?Sized>(g: &FinGame<AffExpr>, cfg: &SpineGenConfig, rng: &mut R) -> FinGame<AffExpr> {
    match g {
        FinGame::Leaf(ua) => FinGame::Leaf(UtilityAssignment::from_pairs(ua.agents().map(|a| (a.clone(), random_expr(cfg, rng))).collect::<Vec<_>>())),
        FinGame::Node { agent, left, right } => {
            let left = fill(left, cfg, rng);
            let right = fill(right, cfg, rng);
            FinGame::node(agent.clone(), left, right)
        }
    }
}

fn random_segment<R: Rng + ?Sized>(cfg: &SpineGenConfig, agents: &AgentSet, rng: &mut R) -> StrategySegment<AffExpr> {
    let agent = pick(agents, rng);
    let choice = if rng.random_bool(cfg.right_probability) { Choice::Right } else { Choice::Left };
    StrategySegment { agent, choice, right: random_template(cfg, agents, rng) }
}

fn pick<R: Rng + ?Sized>(agents: &AgentSet, rng: &mut R) -> AgentId {
    agents.get(rng.random_range(0..agents.len())).expect("nonempty agent set").clone()
}

/// A random eventually periodic strategy. Slopes and intercepts must be
/// non-negative for the result to be well formed.
pub fn random_periodic_strategy<R: Rng + ?Sized>(cfg: &SpineGenConfig, rng: &mut R) -> SpineStrategy {
    let agents = agent_set(rng.random_range(cfg.agents.clone()));
    let prefix = (0..rng.random_range(cfg.prefix_len.clone())).map(|_| random_segment(cfg, &agents, rng)).collect();
    let period = (0..rng.random_range(cfg.period_len.clone())).map(|_| random_segment(cfg, &agents, rng)).collect();
    let start = rng.random_range(cfg.start.clone());
    Spine::periodic(start, prefix, period).expect("non-negative coefficients")
}

pub fn random_periodic_game<R: Rng + ?Sized>(cfg: &SpineGenConfig, rng: &mut R) -> SpineGame {
    random_periodic_strategy(cfg, rng).erase()
}

/// A coalgebraic game whose segment at each step is drawn from a generator
/// seeded by the state, so the unfolding is deterministic. The state walks
/// through `0..cycle` forever when `cycle` is given.
pub fn random_coalg_game(agents: usize, template_depth: usize, seed: u64, cycle: Option<u64>) -> SpineGame {
    let agents = Arc::new(agent_set(agents));
    Spine::coalg(seed, move |state| {
        let mut rng = ChaCha8Rng::seed_from_u64(state);
        let agent = pick(&agents, &mut rng);
        let right = random_game(&agents, template_depth, 0..=9, &mut rng);
        let next = match cycle {
            Some(c) => (state + 1) % c.max(1),
            None => state.wrapping_add(1),
        };
        (GameSegment { agent, right }, next)
    })
}
