use std::fmt::Debug;

use super::{f2u, FinStrategy};
use crate::model::{prefer, AgentId, Choice, ModelError, Preference, Preferred, UtilityAssignment};
use crate::verdict::Verdict;

/// Per-agent evidence that no deviation improves on the current outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgentCheck<U> {
    pub agent: AgentId,
    pub current: U,
    /// Utility of the best response when the preference was total on the
    /// outcomes involved; `None` when every reachable outcome was compared
    /// individually instead.
    pub best_response: Option<U>,
    pub reachable_outcomes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinNashCertificate<U> {
    pub agents: Vec<AgentCheck<U>>,
}

/// A profitable unilateral deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinNashWitness<U> {
    pub agent: AgentId,
    pub deviation: FinStrategy<U>,
    pub deviating: U,
    pub current: U,
}

pub type FinNashVerdict<U> = Verdict<FinNashCertificate<U>, FinNashWitness<U>>;

/// Best response of `agent` to the rest of `s`, computed bottom-up: at
/// `agent`-owned nodes pick the child whose induced outcome is preferred
/// (Left on ties), elsewhere keep the fixed choice.
pub fn best_deviation<U, P>(agent: &AgentId, s: &FinStrategy<U>, ord: &P) -> Result<FinStrategy<U>, ModelError>
where
    U: Clone + Debug,
    P: Preference<U> + ?Sized,
{
    match s {
        FinStrategy::Leaf(ua) => Ok(FinStrategy::Leaf(ua.clone())),
        FinStrategy::Node { agent: owner, choice, left, right } => {
            let left = best_deviation(agent, left, ord)?;
            let right = best_deviation(agent, right, ord)?;
            let choice = if owner == agent {
                let ul = f2u(&left).get(agent)?;
                let ur = f2u(&right).get(agent)?;
                match prefer(ord, ul, ur)? {
                    Preferred::Second => Choice::Right,
                    Preferred::First | Preferred::Tie => Choice::Left,
                }
            } else {
                *choice
            };
            Ok(FinStrategy::node(owner.clone(), choice, left, right))
        }
    }
}

/// Every leaf `agent` can reach by changing only its own choices, with the
/// full descent path from the root.
pub fn reachable_outcomes<'s, U>(agent: &AgentId, s: &'s FinStrategy<U>) -> Vec<(Vec<Choice>, &'s UtilityAssignment<U>)> {
    fn go<'s, U>(
        agent: &AgentId,
        s: &'s FinStrategy<U>,
        path: &mut Vec<Choice>,
        out: &mut Vec<(Vec<Choice>, &'s UtilityAssignment<U>)>,
    ) {
        match s {
            FinStrategy::Leaf(ua) => out.push((path.clone(), ua)),
            FinStrategy::Node { agent: owner, choice, left, right } => {
                let options: &[Choice] = if owner == agent { &[Choice::Left, Choice::Right] } else { std::slice::from_ref(choice) };
                for &c in options {
                    path.push(c);
                    go(agent, if c == Choice::Left { left } else { right }, path, out);
                    path.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(agent, s, &mut Vec::new(), &mut out);
    out
}

/// Sets the choices along `path` at `agent`-owned nodes. The remaining
/// nodes of the path must already agree with `path`.
pub fn steer<U: Clone>(agent: &AgentId, s: &FinStrategy<U>, path: &[Choice]) -> FinStrategy<U> {
    match (s, path.split_first()) {
        (FinStrategy::Node { agent: owner, choice, left, right }, Some((&c, rest))) => {
            debug_assert!(owner == agent || *choice == c, "path leaves the profile at a foreign node");
            let choice = if owner == agent { c } else { *choice };
            let (left, right) = match c {
                Choice::Left => (steer(agent, left, rest), (**right).clone()),
                Choice::Right => ((**left).clone(), steer(agent, right, rest)),
            };
            FinStrategy::node(owner.clone(), choice, left, right)
        }
        _ => s.clone(),
    }
}

/// Nash check: no agent improves by an `agent`-convertible deviation.
///
/// Runs on the best-response route; if the preference turns out not to be
/// total on the outcomes involved it falls back to comparing every
/// reachable outcome, which is valid for any preorder.
pub fn is_fin_nash<U, P>(s: &FinStrategy<U>, ord: &P) -> Result<FinNashVerdict<U>, ModelError>
where
    U: Clone + Debug,
    P: Preference<U> + ?Sized,
{
    let outcome = f2u(s);
    let mut checks = Vec::new();
    for agent in s.agents() {
        let current = outcome.get(&agent)?.clone();
        let reachable = reachable_outcomes(&agent, s);
        match best_deviation(&agent, s, ord) {
            Ok(best) => {
                let deviating = f2u(&best).get(&agent)?.clone();
                if !ord.leq(&deviating, &current) {
                    return Ok(Verdict::Refuted(FinNashWitness { agent, deviation: best, deviating, current }));
                }
                checks.push(AgentCheck {
                    agent,
                    current,
                    best_response: Some(deviating),
                    reachable_outcomes: reachable.len(),
                });
            }
            Err(ModelError::Incomparable(..)) => {
                for (path, leaf) in &reachable {
                    let deviating = leaf.get(&agent)?;
                    if !ord.leq(deviating, &current) {
                        let deviation = steer(&agent, s, path);
                        let deviating = deviating.clone();
                        return Ok(Verdict::Refuted(FinNashWitness { agent, deviation, deviating, current }));
                    }
                }
                checks.push(AgentCheck { agent, current, best_response: None, reachable_outcomes: reachable.len() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(Verdict::Holds(FinNashCertificate { agents: checks }))
}
