use std::fmt::Debug;

use super::{f2u, FinGame, FinStrategy};
use crate::model::{prefer, AgentId, Choice, ModelError, Preference, Preferred};

/// The backward-induction predicate: every node's owner weakly prefers the
/// outcome of the chosen child to the outcome of the other one, and both
/// children are themselves backward-induction profiles.
pub fn is_bi<U, P>(s: &FinStrategy<U>, ord: &P) -> bool
where
    P: Preference<U> + ?Sized,
{
    match s {
        FinStrategy::Leaf(_) => true,
        FinStrategy::Node { agent, choice, left, right } => {
            is_bi(left, ord) && is_bi(right, ord) && node_ok(agent, *choice, left, right, ord)
        }
    }
}

fn node_ok<U, P>(agent: &AgentId, choice: Choice, left: &FinStrategy<U>, right: &FinStrategy<U>, ord: &P) -> bool
where
    P: Preference<U> + ?Sized,
{
    let (Ok(ul), Ok(ur)) = (f2u(left).get(agent), f2u(right).get(agent)) else {
        return false;
    };
    match choice {
        Choice::Left => ord.leq(ur, ul),
        Choice::Right => ord.leq(ul, ur),
    }
}

/// A backward-induction profile of `g`; ties go Left.
pub fn solve_bi<U, P>(g: &FinGame<U>, ord: &P) -> Result<FinStrategy<U>, ModelError>
where
    U: Clone + Debug,
    P: Preference<U> + ?Sized,
{
    match g {
        FinGame::Leaf(ua) => Ok(FinStrategy::Leaf(ua.clone())),
        FinGame::Node { agent, left, right } => {
            let left = solve_bi(left, ord)?;
            let right = solve_bi(right, ord)?;
            let ul = f2u(&left).get(agent)?;
            let ur = f2u(&right).get(agent)?;
            let choice = match prefer(ord, ul, ur)? {
                Preferred::Second => Choice::Right,
                Preferred::First | Preferred::Tie => Choice::Left,
            };
            Ok(FinStrategy::node(agent.clone(), choice, left, right))
        }
    }
}

/// Every backward-induction profile of `g`. Order: left-subgame profiles
/// outermost, then right-subgame profiles, then Left before Right.
pub fn solve_bi_all<U, P>(g: &FinGame<U>, ord: &P) -> Result<Vec<FinStrategy<U>>, ModelError>
where
    U: Clone + Debug,
    P: Preference<U> + ?Sized,
{
    match g {
        FinGame::Leaf(ua) => Ok(vec![FinStrategy::Leaf(ua.clone())]),
        FinGame::Node { agent, left, right } => {
            let lefts = solve_bi_all(left, ord)?;
            let rights = solve_bi_all(right, ord)?;
            let mut out = Vec::new();
            for l in &lefts {
                let ul = f2u(l).get(agent)?;
                for r in &rights {
                    let ur = f2u(r).get(agent)?;
                    let pref = prefer(ord, ul, ur)?;
                    if matches!(pref, Preferred::First | Preferred::Tie) {
                        out.push(FinStrategy::node(agent.clone(), Choice::Left, l.clone(), r.clone()));
                    }
                    if matches!(pref, Preferred::Second | Preferred::Tie) {
                        out.push(FinStrategy::node(agent.clone(), Choice::Right, l.clone(), r.clone()));
                    }
                }
            }
            Ok(out)
        }
    }
}
