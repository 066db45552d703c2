//! Finite binary games and strategy profiles.

mod bi;
mod convert;
mod nash;
mod random;

pub use bi::{is_bi, solve_bi, solve_bi_all};
pub use convert::{a_owned_nodes, enumerate_deviations, fin_convertible, Deviations};
pub use nash::{
    best_deviation, is_fin_nash, reachable_outcomes, steer, AgentCheck, FinNashCertificate, FinNashVerdict,
    FinNashWitness,
};
pub use random::{random_choices, random_game, random_game_seeded, random_strategy};

use std::collections::BTreeSet;

use crate::model::{AgentId, Choice, UtilityAssignment};

/// A finite binary game: leaves carry a utility assignment, nodes an owner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FinGame<U> {
    Leaf(UtilityAssignment<U>),
    Node { agent: AgentId, left: Box<FinGame<U>>, right: Box<FinGame<U>> },
}

/// A finite strategy profile: a game where every node also fixes a choice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FinStrategy<U> {
    Leaf(UtilityAssignment<U>),
    Node { agent: AgentId, choice: Choice, left: Box<FinStrategy<U>>, right: Box<FinStrategy<U>> },
}

impl<U> FinGame<U> {
    pub fn leaf(ua: UtilityAssignment<U>) -> Self {
        FinGame::Leaf(ua)
    }

    pub fn node(agent: AgentId, left: FinGame<U>, right: FinGame<U>) -> Self {
        FinGame::Node { agent, left: Box::new(left), right: Box::new(right) }
    }

    /// Length of the longest root-to-leaf path; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            FinGame::Leaf(_) => 0,
            FinGame::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            FinGame::Leaf(_) => 0,
            FinGame::Node { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }

    pub fn leaves(&self) -> Vec<&UtilityAssignment<U>> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(g) = stack.pop() {
            match g {
                FinGame::Leaf(ua) => out.push(ua),
                FinGame::Node { left, right, .. } => {
                    stack.push(right);
                    stack.push(left);
                }
            }
        }
        out
    }

    pub fn map_payoffs<V>(&self, f: &mut impl FnMut(&U) -> V) -> FinGame<V> {
        match self {
            FinGame::Leaf(ua) => FinGame::Leaf(ua.map(&mut *f)),
            FinGame::Node { agent, left, right } => {
                FinGame::node(agent.clone(), left.map_payoffs(f), right.map_payoffs(f))
            }
        }
    }

    pub fn try_map_payoffs<V, E>(&self, f: &mut impl FnMut(&U) -> Result<V, E>) -> Result<FinGame<V>, E> {
        Ok(match self {
            FinGame::Leaf(ua) => FinGame::Leaf(ua.try_map(&mut *f)?),
            FinGame::Node { agent, left, right } => {
                FinGame::node(agent.clone(), left.try_map_payoffs(f)?, right.try_map_payoffs(f)?)
            }
        })
    }

    /// Annotates every node with `choice`.
    pub fn with_uniform_choice(&self, choice: Choice) -> FinStrategy<U>
    where
        U: Clone,
    {
        match self {
            FinGame::Leaf(ua) => FinStrategy::Leaf(ua.clone()),
            FinGame::Node { agent, left, right } => FinStrategy::node(
                agent.clone(),
                choice,
                left.with_uniform_choice(choice),
                right.with_uniform_choice(choice),
            ),
        }
    }
}

impl<U> FinStrategy<U> {
    pub fn leaf(ua: UtilityAssignment<U>) -> Self {
        FinStrategy::Leaf(ua)
    }

    pub fn node(agent: AgentId, choice: Choice, left: FinStrategy<U>, right: FinStrategy<U>) -> Self {
        FinStrategy::Node { agent, choice, left: Box::new(left), right: Box::new(right) }
    }

    pub fn depth(&self) -> usize {
        match self {
            FinStrategy::Leaf(_) => 0,
            FinStrategy::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            FinStrategy::Leaf(_) => 0,
            FinStrategy::Node { left, right, .. } => 1 + left.node_count() + right.node_count(),
        }
    }

    /// Every agent that owns a node or appears in a leaf.
    pub fn agents(&self) -> BTreeSet<AgentId> {
        let mut out = BTreeSet::new();
        self.collect_agents(&mut out);
        out
    }

    pub(crate) fn collect_agents(&self, out: &mut BTreeSet<AgentId>) {
        match self {
            FinStrategy::Leaf(ua) => out.extend(ua.agents().cloned()),
            FinStrategy::Node { agent, left, right, .. } => {
                out.insert(agent.clone());
                left.collect_agents(out);
                right.collect_agents(out);
            }
        }
    }

    /// Forgets the choices.
    pub fn erase(&self) -> FinGame<U>
    where
        U: Clone,
    {
        match self {
            FinStrategy::Leaf(ua) => FinGame::Leaf(ua.clone()),
            FinStrategy::Node { agent, left, right, .. } => FinGame::node(agent.clone(), left.erase(), right.erase()),
        }
    }

    pub fn map_payoffs<V>(&self, f: &mut impl FnMut(&U) -> V) -> FinStrategy<V> {
        match self {
            FinStrategy::Leaf(ua) => FinStrategy::Leaf(ua.map(&mut *f)),
            FinStrategy::Node { agent, choice, left, right } => {
                FinStrategy::node(agent.clone(), *choice, left.map_payoffs(f), right.map_payoffs(f))
            }
        }
    }

    pub fn try_map_payoffs<V, E>(&self, f: &mut impl FnMut(&U) -> Result<V, E>) -> Result<FinStrategy<V>, E> {
        Ok(match self {
            FinStrategy::Leaf(ua) => FinStrategy::Leaf(ua.try_map(&mut *f)?),
            FinStrategy::Node { agent, choice, left, right } => {
                FinStrategy::node(agent.clone(), *choice, left.try_map_payoffs(f)?, right.try_map_payoffs(f)?)
            }
        })
    }

    /// Leaf reached by following the profile's own choices.
    pub fn outcome(&self) -> &UtilityAssignment<U> {
        f2u(self)
    }
}

/// The utility assignment at the leaf reached by following every choice.
pub fn f2u<U>(s: &FinStrategy<U>) -> &UtilityAssignment<U> {
    let mut cur = s;
    loop {
        match cur {
            FinStrategy::Leaf(ua) => return ua,
            FinStrategy::Node { choice: Choice::Left, left, .. } => cur = left,
            FinStrategy::Node { choice: Choice::Right, right, .. } => cur = right,
        }
    }
}

/// True iff erasing the choices of `s` gives exactly `g`.
pub fn strategy_of_game<U: PartialEq>(s: &FinStrategy<U>, g: &FinGame<U>) -> bool {
    match (s, g) {
        (FinStrategy::Leaf(u), FinGame::Leaf(v)) => u == v,
        (
            FinStrategy::Node { agent: a, left: sl, right: sr, .. },
            FinGame::Node { agent: b, left: gl, right: gr },
        ) => a == b && strategy_of_game(sl, gl) && strategy_of_game(sr, gr),
        _ => false,
    }
}


#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use crate::model::Choice::{Left, Right};

    #[test]
    fn f2u_follows_choices() {
        let (set, a, b) = ab();
        let leaf = FinStrategy::leaf(ua(&set, 1, 2));
        assert_eq!(f2u(&leaf), &ua(&set, 1, 2));

        let s = FinStrategy::node(a.clone(), Left, FinStrategy::leaf(ua(&set, 5, 0)), FinStrategy::leaf(ua(&set, 0, 5)));
        assert_eq!(f2u(&s), &ua(&set, 5, 0));

        let s = FinStrategy::node(
            a,
            Right,
            FinStrategy::leaf(ua(&set, 5, 0)),
            FinStrategy::node(b, Left, FinStrategy::leaf(ua(&set, 1, 1)), FinStrategy::leaf(ua(&set, 9, 9))),
        );
        assert_eq!(f2u(&s), &ua(&set, 1, 1));
    }

    #[test]
    fn shape_correspondence() {
        let (set, a, b) = ab();
        let u = ua(&set, 0, 0);
        assert!(strategy_of_game(&FinStrategy::leaf(u.clone()), &FinGame::leaf(u.clone())));
        let l = FinStrategy::leaf(u.clone());
        let s = FinStrategy::node(a, Left, l.clone(), l.clone());
        let g = FinGame::node(b, FinGame::leaf(u.clone()), FinGame::leaf(u.clone()));
        assert!(!strategy_of_game(&s, &g));
        assert!(strategy_of_game(&s, &s.erase()));
        assert!(!strategy_of_game(&FinStrategy::leaf(ua(&set, 1, 0)), &FinGame::leaf(u)));
    }

    #[test]
    fn depth_and_counts() {
        let (set, a, b) = ab();
        let u = ua(&set, 0, 0);
        let g = FinGame::node(a, FinGame::leaf(u.clone()), FinGame::node(b, FinGame::leaf(u.clone()), FinGame::leaf(u)));
        assert_eq!(g.depth(), 2);
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.leaves().len(), 3);
    }
}
