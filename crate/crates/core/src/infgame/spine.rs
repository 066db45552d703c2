//! Finite descriptions of infinite spine games and strategies.
//!
//! A spine is an infinite leftward path; position `i` carries an owner, a
//! finite right subtree and, for strategies, a choice. Two descriptions are
//! supported:
//!
//! * [`Periodic`]: a prefix followed by a period repeated forever. Payoffs
//!   are [`AffExpr`]s in the spine index. The prefix is evaluated at the
//!   start index `n0`; the `m`-th traversal of the period at `n0 + m`.
//! * [`Coalg`]: a seed and a deterministic step function, unfolded lazily,
//!   optionally preceded by a finite list of explicit segments.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::affine::{AffExpr, AffineError};
use crate::fingame::{FinGame, FinStrategy};
use crate::model::{AgentId, Choice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpineError {
    #[error("the period must contain at least one segment")]
    EmptyPeriod,
    #[error("prefix segment {position}: {source}")]
    Prefix { position: usize, source: AffineError },
    #[error("period segment {offset}: {source}")]
    Period { offset: usize, source: AffineError },
}

/// A spine position of a game: owner plus the finite right subgame.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameSegment<P> {
    pub agent: AgentId,
    pub right: FinGame<P>,
}

/// A spine position of a strategy: owner, choice, and the finite right
/// substrategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategySegment<P> {
    pub agent: AgentId,
    pub choice: Choice,
    pub right: FinStrategy<P>,
}

impl<P: Clone> StrategySegment<P> {
    pub fn erase(&self) -> GameSegment<P> {
        GameSegment { agent: self.agent.clone(), right: self.right.erase() }
    }
}

/// Common view of concrete and template segments.
pub trait Segment: Clone + PartialEq + fmt::Debug {
    fn agent(&self) -> &AgentId;
    fn collect_agents(&self, out: &mut BTreeSet<AgentId>);
}

impl<P: Clone + PartialEq + fmt::Debug> Segment for GameSegment<P> {
    fn agent(&self) -> &AgentId {
        &self.agent
    }

    fn collect_agents(&self, out: &mut BTreeSet<AgentId>) {
        out.insert(self.agent.clone());
        for leaf in self.right.leaves() {
            out.extend(leaf.agents().cloned());
        }
    }
}

impl<P: Clone + PartialEq + fmt::Debug> Segment for StrategySegment<P> {
    fn agent(&self) -> &AgentId {
        &self.agent
    }

    fn collect_agents(&self, out: &mut BTreeSet<AgentId>) {
        out.insert(self.agent.clone());
        self.right.collect_agents(out);
    }
}

/// A segment whose payoffs are affine in the spine index.
pub trait Template: Segment {
    type Concrete: Segment;

    fn try_instantiate(&self, k: u64) -> Result<Self::Concrete, AffineError>;

    fn instantiate(&self, k: u64) -> Self::Concrete {
        self.try_instantiate(k).expect("template validated at construction")
    }

    /// Substitutes `k + by` for `k`.
    fn shift(&self, by: u64) -> Self;

    /// The constant template denoting `concrete` at every index.
    fn lift(concrete: &Self::Concrete) -> Self;

    fn payoffs(&self) -> Vec<AffExpr>;
}

fn lift_value(v: &u64) -> AffExpr {
    AffExpr::constant(i64::try_from(*v).expect("payoff fits in i64"))
}

impl Template for GameSegment<AffExpr> {
    type Concrete = GameSegment<u64>;

    fn try_instantiate(&self, k: u64) -> Result<GameSegment<u64>, AffineError> {
        Ok(GameSegment { agent: self.agent.clone(), right: self.right.try_map_payoffs(&mut |e| e.eval(k))? })
    }

    fn shift(&self, by: u64) -> Self {
        GameSegment { agent: self.agent.clone(), right: self.right.map_payoffs(&mut |e| e.shift(by)) }
    }

    fn lift(c: &GameSegment<u64>) -> Self {
        GameSegment { agent: c.agent.clone(), right: c.right.map_payoffs(&mut lift_value) }
    }

    fn payoffs(&self) -> Vec<AffExpr> {
        self.right.leaves().into_iter().flat_map(|ua| ua.iter().map(|(_, e)| *e).collect::<Vec<_>>()).collect()
    }
}

impl Template for StrategySegment<AffExpr> {
    type Concrete = StrategySegment<u64>;

    fn try_instantiate(&self, k: u64) -> Result<StrategySegment<u64>, AffineError> {
        Ok(StrategySegment {
            agent: self.agent.clone(),
            choice: self.choice,
            right: self.right.try_map_payoffs(&mut |e| e.eval(k))?,
        })
    }

    fn shift(&self, by: u64) -> Self {
        StrategySegment { agent: self.agent.clone(), choice: self.choice, right: self.right.map_payoffs(&mut |e| e.shift(by)) }
    }

    fn lift(c: &StrategySegment<u64>) -> Self {
        StrategySegment { agent: c.agent.clone(), choice: c.choice, right: c.right.map_payoffs(&mut lift_value) }
    }

    fn payoffs(&self) -> Vec<AffExpr> {
        self.right.erase().leaves().into_iter().flat_map(|ua| ua.iter().map(|(_, e)| *e).collect::<Vec<_>>()).collect()
    }
}

/// Eventually periodic description with affine payoffs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Periodic<T> {
    start: u64,
    prefix: Vec<T>,
    period: Vec<T>,
}

impl<T: Template> Periodic<T> {
    pub fn new(start: u64, prefix: Vec<T>, period: Vec<T>) -> Result<Self, SpineError> {
        if period.is_empty() {
            return Err(SpineError::EmptyPeriod);
        }
        for (position, seg) in prefix.iter().enumerate() {
            seg.try_instantiate(start).map_err(|source| SpineError::Prefix { position, source })?;
        }
        for (offset, seg) in period.iter().enumerate() {
            for e in seg.payoffs() {
                if e.slope < 0 {
                    return Err(SpineError::Period { offset, source: AffineError::Decreasing { expr: e } });
                }
                e.eval(start).map_err(|source| SpineError::Period { offset, source })?;
            }
        }
        Ok(Self { start, prefix, period })
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    pub fn period(&self) -> &[T] {
        &self.period
    }

    /// Template at spine position `i` and the index it is evaluated at.
    pub fn locate(&self, i: usize) -> (&T, u64) {
        if i < self.prefix.len() {
            (&self.prefix[i], self.start)
        } else {
            let j = i - self.prefix.len();
            let l = self.period.len();
            (&self.period[j % l], self.start + (j / l) as u64)
        }
    }

    pub fn segment_at(&self, i: usize) -> T::Concrete {
        let (t, k) = self.locate(i);
        t.instantiate(k)
    }

    /// Absolute position of period offset `offset` in traversal `k - n0`.
    pub fn period_position(&self, offset: usize, k: u64) -> usize {
        self.prefix.len() + (k - self.start) as usize * self.period.len() + offset
    }

    /// The strategy or game after dropping the first `d` positions.
    pub fn residual(&self, d: usize) -> Self {
        if d <= self.prefix.len() {
            return Self { start: self.start, prefix: self.prefix[d..].to_vec(), period: self.period.clone() };
        }
        let j = d - self.prefix.len();
        let l = self.period.len();
        let (m, r) = (j / l, j % l);
        let mut period: Vec<T> = self.period[r..].to_vec();
        period.extend(self.period[..r].iter().map(|t| t.shift(1)));
        Self { start: self.start + m as u64, prefix: Vec::new(), period }
    }

    pub fn map<S: Template>(&self, f: impl Fn(&T) -> S) -> Periodic<S> {
        Periodic { start: self.start, prefix: self.prefix.iter().map(&f).collect(), period: self.period.iter().map(&f).collect() }
    }

    /// Positions after which two descriptions can no longer start to agree:
    /// past the longer prefix, every residue class modulo the common period
    /// is affine in the traversal count, so two traversals decide it.
    fn agreement_horizon(&self, other: &Self) -> usize {
        let m = lcm(self.period.len(), other.period.len());
        self.prefix.len().max(other.prefix.len()) + 2 * m
    }

    /// Equality of the denoted infinite sequences.
    pub fn observationally_equal(&self, other: &Self) -> bool {
        (0..self.agreement_horizon(other)).all(|i| self.segment_at(i) == other.segment_at(i))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

pub type StepFn<C> = Arc<dyn Fn(u64) -> (C, u64) + Send + Sync>;

/// Lazily unfolded spine: `step(seed)` yields the segment at the current
/// position and the next seed. The step must be deterministic and free of
/// side effects.
pub struct Coalg<C> {
    head: Vec<C>,
    seed: u64,
    step: StepFn<C>,
}

impl<C: Clone> Clone for Coalg<C> {
    fn clone(&self) -> Self {
        Self { head: self.head.clone(), seed: self.seed, step: Arc::clone(&self.step) }
    }
}

impl<C: fmt::Debug> fmt::Debug for Coalg<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Coalg").field("head", &self.head).field("seed", &self.seed).finish_non_exhaustive()
    }
}

impl<C: Segment> Coalg<C> {
    pub fn new(seed: u64, step: impl Fn(u64) -> (C, u64) + Send + Sync + 'static) -> Self {
        Self { head: Vec::new(), seed, step: Arc::new(step) }
    }

    pub fn from_step(seed: u64, step: StepFn<C>) -> Self {
        Self { head: Vec::new(), seed, step }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn head(&self) -> &[C] {
        &self.head
    }

    /// The first segment and the rest.
    pub fn advance(&self) -> (C, Self) {
        if let Some((first, rest)) = self.head.split_first() {
            return (first.clone(), Self { head: rest.to_vec(), seed: self.seed, step: Arc::clone(&self.step) });
        }
        let (seg, seed) = (self.step)(self.seed);
        (seg, Self { head: Vec::new(), seed, step: Arc::clone(&self.step) })
    }

    pub fn observe(&self, n: usize) -> Vec<C> {
        let mut out: Vec<C> = self.head.iter().take(n).cloned().collect();
        let mut seed = self.seed;
        while out.len() < n {
            let (seg, next) = (self.step)(seed);
            out.push(seg);
            seed = next;
        }
        out
    }

    pub fn residual(&self, d: usize) -> Self {
        if d <= self.head.len() {
            return Self { head: self.head[d..].to_vec(), seed: self.seed, step: Arc::clone(&self.step) };
        }
        let mut seed = self.seed;
        for _ in self.head.len()..d {
            seed = (self.step)(seed).1;
        }
        Self { head: Vec::new(), seed, step: Arc::clone(&self.step) }
    }

    /// Same explicit head, same seed, same step function.
    pub fn same_representation(&self, other: &Self) -> bool {
        self.seed == other.seed && Arc::ptr_eq(&self.step, &other.step) && self.head == other.head
    }

    /// Unfolds up to `budget` steps looking for a repeated seed. A repeat
    /// makes the unfolding exactly eventually periodic.
    pub fn lasso(&self, budget: usize) -> Option<(Vec<C>, Vec<C>)> {
        let mut seen: HashMap<u64, usize> = HashMap::new();
        let mut segs = Vec::new();
        let mut seed = self.seed;
        for i in 0..=budget {
            if let Some(&j) = seen.get(&seed) {
                let cycle = segs.split_off(j);
                let mut prefix = self.head.clone();
                prefix.extend(segs);
                return Some((prefix, cycle));
            }
            if i == budget {
                break;
            }
            seen.insert(seed, i);
            let (seg, next) = (self.step)(seed);
            segs.push(seg);
            seed = next;
        }
        None
    }
}

/// An infinite spine game or strategy in one of the two representations.
pub enum Spine<T: Template> {
    Coalg(Coalg<T::Concrete>),
    Periodic(Periodic<T>),
}

pub type SpineGame = Spine<GameSegment<AffExpr>>;
pub type SpineStrategy = Spine<StrategySegment<AffExpr>>;
pub type PeriodicGame = Periodic<GameSegment<AffExpr>>;
pub type PeriodicStrategy = Periodic<StrategySegment<AffExpr>>;

impl<T: Template> Clone for Spine<T> {
    fn clone(&self) -> Self {
        match self {
            Spine::Coalg(c) => Spine::Coalg(c.clone()),
            Spine::Periodic(p) => Spine::Periodic(p.clone()),
        }
    }
}

impl<T: Template> fmt::Debug for Spine<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Spine::Coalg(c) => c.fmt(f),
            Spine::Periodic(p) => p.fmt(f),
        }
    }
}

/// Representation-level equality: structural for periodic descriptions,
/// identity of head, seed and step for coalgebraic ones.
impl<T: Template> PartialEq for Spine<T> {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Spine::Periodic(a), Spine::Periodic(b)) => a == b,
            (Spine::Coalg(a), Spine::Coalg(b)) => a.same_representation(b),
            _ => false,
        }
    }
}

impl<T: Template> From<Periodic<T>> for Spine<T> {
    fn from(p: Periodic<T>) -> Self {
        Spine::Periodic(p)
    }
}

impl<T: Template> Spine<T> {
    pub fn periodic(start: u64, prefix: Vec<T>, period: Vec<T>) -> Result<Self, SpineError> {
        Periodic::new(start, prefix, period).map(Spine::Periodic)
    }

    pub fn coalg(seed: u64, step: impl Fn(u64) -> (T::Concrete, u64) + Send + Sync + 'static) -> Self {
        Spine::Coalg(Coalg::new(seed, step))
    }

    pub fn as_periodic(&self) -> Option<&Periodic<T>> {
        match self {
            Spine::Periodic(p) => Some(p),
            Spine::Coalg(_) => None,
        }
    }

    pub fn segment_at(&self, i: usize) -> T::Concrete {
        match self {
            Spine::Periodic(p) => p.segment_at(i),
            Spine::Coalg(c) => c.observe(i + 1).pop().expect("observed at least one segment"),
        }
    }

    /// The first `n` positions.
    pub fn observe(&self, n: usize) -> Vec<T::Concrete> {
        match self {
            Spine::Periodic(p) => (0..n).map(|i| p.segment_at(i)).collect(),
            Spine::Coalg(c) => c.observe(n),
        }
    }

    pub fn residual(&self, d: usize) -> Self {
        match self {
            Spine::Periodic(p) => Spine::Periodic(p.residual(d)),
            Spine::Coalg(c) => Spine::Coalg(c.residual(d)),
        }
    }

    /// Root segment and left residual.
    pub fn decompose(&self) -> (T::Concrete, Self) {
        match self {
            Spine::Periodic(p) => (p.segment_at(0), Spine::Periodic(p.residual(1))),
            Spine::Coalg(c) => {
                let (seg, rest) = c.advance();
                (seg, Spine::Coalg(rest))
            }
        }
    }

    /// Inverse of [`Spine::decompose`].
    pub fn recompose(root: T::Concrete, left: Self) -> Self {
        Self::with_head(vec![root], left)
    }

    /// `head` followed by `tail`.
    pub fn with_head(head: Vec<T::Concrete>, tail: Self) -> Self {
        match tail {
            Spine::Periodic(p) => {
                let mut prefix: Vec<T> = head.iter().map(T::lift).collect();
                prefix.extend(p.prefix);
                Spine::Periodic(Periodic { start: p.start, prefix, period: p.period })
            }
            Spine::Coalg(c) => {
                let mut all = head;
                all.extend(c.head);
                Spine::Coalg(Coalg { head: all, seed: c.seed, step: c.step })
            }
        }
    }

    /// An eventually periodic description, when one is available: periodic
    /// descriptions as they are, coalgebraic ones when their seed repeats
    /// within `budget` steps.
    pub fn lasso(&self, budget: usize) -> Option<Periodic<T>> {
        match self {
            Spine::Periodic(p) => Some(p.clone()),
            Spine::Coalg(c) => {
                let (prefix, cycle) = c.lasso(budget)?;
                Some(Periodic { start: 0, prefix: prefix.iter().map(T::lift).collect(), period: cycle.iter().map(T::lift).collect() })
            }
        }
    }

    /// Decidable equality of the denoted sequences for periodic
    /// descriptions; representation identity for coalgebraic ones.
    pub fn observationally_equal(&self, other: &Self) -> bool {
        match (self, other) {
            (Spine::Periodic(a), Spine::Periodic(b)) => a.observationally_equal(b),
            (Spine::Coalg(a), Spine::Coalg(b)) => a.same_representation(b),
            _ => false,
        }
    }

    /// Agents occurring in the description; coalgebraic spines are observed
    /// for `budget` positions.
    pub fn agents(&self, budget: usize) -> BTreeSet<AgentId> {
        let mut out = BTreeSet::new();
        match self {
            Spine::Periodic(p) => {
                for t in p.prefix.iter().chain(&p.period) {
                    t.collect_agents(&mut out);
                }
            }
            Spine::Coalg(c) => {
                for seg in c.observe(budget.max(1)) {
                    seg.collect_agents(&mut out);
                }
            }
        }
        out
    }
}

impl SpineStrategy {
    /// Forgets the spine and template choices.
    pub fn erase(&self) -> SpineGame {
        match self {
            Spine::Periodic(p) => Spine::Periodic(p.map(|t| t.erase())),
            Spine::Coalg(c) => {
                let step = Arc::clone(&c.step);
                let erased: StepFn<GameSegment<u64>> = Arc::new(move |seed| {
                    let (seg, next) = step(seed);
                    (seg.erase(), next)
                });
                Spine::Coalg(Coalg { head: c.head.iter().map(|s| s.erase()).collect(), seed: c.seed, step: erased })
            }
        }
    }
}

/// Root agent, left residual and right finite subgame of a spine game.
pub fn decompose(g: &SpineGame) -> (AgentId, SpineGame, FinGame<u64>) {
    let (seg, left) = g.decompose();
    (seg.agent, left, seg.right)
}

/// Inverse of [`decompose`].
pub fn recompose(agent: AgentId, left: SpineGame, right: FinGame<u64>) -> SpineGame {
    Spine::recompose(GameSegment { agent, right }, left)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AgentSet, UtilityAssignment};

    fn agents() -> (AgentId, AgentId) {
        let set = AgentSet::new(["alice", "bob"]).unwrap();
        (set.by_name("alice").unwrap().clone(), set.by_name("bob").unwrap().clone())
    }

    fn leaf(alice: AgentId, bob: AgentId, a: AffExpr, b: AffExpr) -> FinGame<AffExpr> {
        FinGame::leaf(UtilityAssignment::from_pairs([(alice, a), (bob, b)]))
    }

    fn escalation_game(n: u64) -> SpineGame {
        let (a, b) = agents();
        let alice = GameSegment { agent: a.clone(), right: leaf(a.clone(), b.clone(), AffExpr::new(2, 1), AffExpr::new(2, 0)) };
        let bob = GameSegment { agent: b.clone(), right: leaf(a, b, AffExpr::new(2, 1), AffExpr::new(2, 2)) };
        Spine::periodic(n, vec![], vec![alice, bob]).unwrap()
    }

    fn payoffs(seg: &GameSegment<u64>) -> Vec<u64> {
        match &seg.right {
            FinGame::Leaf(ua) => ua.iter().map(|(_, v)| *v).collect(),
            _ => unreachable!(),
        }
    }

    #[test]
    fn decomposition_of_the_escalation_game() {
        let (a, b) = agents();
        for n in [0u64, 3, 10] {
            let g = escalation_game(n);
            let (agent, left, right) = decompose(&g);
            assert_eq!(agent, a);
            assert_eq!(payoffs(&GameSegment { agent: a.clone(), right }), vec![2 * n + 1, 2 * n]);
            let (next, _, right) = decompose(&left);
            assert_eq!(next, b);
            assert_eq!(payoffs(&GameSegment { agent: b.clone(), right }), vec![2 * n + 1, 2 * n + 2]);
        }
    }

    #[test]
    fn recomposition_restores_the_unfolding() {
        let g = escalation_game(4);
        let (agent, left, right) = decompose(&g);
        let back = recompose(agent, left, right);
        assert_eq!(back.observe(20), g.observe(20));
        assert!(back.observationally_equal(&g));
    }

    #[test]
    fn period_index_increments_once_per_traversal() {
        let g = escalation_game(0);
        let seen: Vec<Vec<u64>> = g.observe(6).iter().map(payoffs).collect();
        assert_eq!(seen, vec![vec![1, 0], vec![1, 2], vec![3, 2], vec![3, 4], vec![5, 4], vec![5, 6]]);
    }

    #[test]
    fn residual_matches_shifted_observation() {
        let (a, b) = agents();
        let pre = GameSegment { agent: b.clone(), right: leaf(a.clone(), b.clone(), AffExpr::new(1, 0), AffExpr::new(0, 9)) };
        let p1 = GameSegment { agent: a.clone(), right: leaf(a.clone(), b.clone(), AffExpr::new(1, 2), AffExpr::new(3, 0)) };
        let p2 = GameSegment { agent: b.clone(), right: leaf(a.clone(), b.clone(), AffExpr::new(0, 1), AffExpr::new(2, 5)) };
        let p3 = GameSegment { agent: a.clone(), right: leaf(a, b, AffExpr::new(2, 2), AffExpr::new(1, 1)) };
        let g = Spine::periodic(5, vec![pre], vec![p1, p2, p3]).unwrap();
        let long = g.observe(40);
        for d in 0..20 {
            assert_eq!(g.residual(d).observe(20), long[d..d + 20].to_vec(), "residual at {d}");
        }
    }

    #[test]
    fn coalgebraic_decompose_advances_one_step() {
        let (a, b) = agents();
        let g: SpineGame = Spine::coalg(7, move |seed| {
            let right = FinGame::leaf(UtilityAssignment::from_pairs([(a.clone(), seed), (b.clone(), seed + 1)]));
            (GameSegment { agent: a.clone(), right }, seed + 1)
        });
        let (_, left) = g.decompose();
        match left {
            Spine::Coalg(c) => assert_eq!(c.seed(), 8),
            _ => unreachable!(),
        }
    }

    #[test]
    fn coalgebraic_lasso_detection() {
        let (a, b) = agents();
        // seeds 0,1,2,3,1,2,3,...
        let g: SpineGame = Spine::coalg(0, move |seed| {
            let right = FinGame::leaf(UtilityAssignment::from_pairs([(a.clone(), seed), (b.clone(), 0)]));
            (GameSegment { agent: a.clone(), right }, if seed == 3 { 1 } else { seed + 1 })
        });
        let p = g.lasso(10).expect("cycle within budget");
        assert_eq!(p.prefix().len(), 1);
        assert_eq!(p.period().len(), 3);
        assert_eq!(Spine::Periodic(p).observe(30), g.observe(30));
        assert!(g.lasso(2).is_none());
    }

    #[test]
    fn observational_equality_sees_through_unrolling() {
        let g = escalation_game(2);
        let unrolled = Spine::with_head(g.observe(5), g.residual(5));
        assert!(unrolled.observationally_equal(&g));
        assert_ne!(unrolled, g);
        assert!(!escalation_game(3).observationally_equal(&g));
        assert!(g.residual(2).observationally_equal(&escalation_game(3)));
    }

    #[test]
    fn empty_period_and_negative_payoffs_are_rejected() {
        let (a, b) = agents();
        assert_eq!(SpineGame::periodic(0, vec![], vec![]).unwrap_err(), SpineError::EmptyPeriod);
        let neg = GameSegment { agent: a.clone(), right: leaf(a.clone(), b.clone(), AffExpr::new(1, -3), AffExpr::new(0, 0)) };
        assert!(SpineGame::periodic(0, vec![], vec![neg.clone()]).is_err());
        assert!(SpineGame::periodic(3, vec![], vec![neg]).is_ok());
        let dec = GameSegment { agent: a.clone(), right: leaf(a, b, AffExpr::new(-1, 30), AffExpr::new(0, 0)) };
        assert!(SpineGame::periodic(0, vec![], vec![dec.clone()]).is_err());
        // evaluated once only, a decreasing prefix payoff is fine
        assert!(SpineGame::periodic(0, vec![dec.clone()], vec![dec.clone()]).is_err());
        assert!(SpineGame::periodic(0, vec![dec], vec![escalation_game(0).as_periodic().unwrap().period()[0].clone()]).is_ok());
    }
}
