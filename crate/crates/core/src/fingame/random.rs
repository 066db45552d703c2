use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FinGame, FinStrategy};
use crate::model::{AgentSet, Choice, UtilityAssignment};

/// Random finite game. A node at depth `d` becomes a leaf with probability
/// `(d + 1) / (depth_max + 1)`, and always at `depth_max`.
pub fn random_game<R: Rng + ?Sized>(
    agents: &AgentSet,
    depth_max: usize,
    utilities: RangeInclusive<u64>,
    rng: &mut R,
) -> FinGame<u64> {
    grow(agents, 0, depth_max, &utilities, rng)
}

pub fn random_game_seeded(agents: &AgentSet, depth_max: usize, utilities: RangeInclusive<u64>, seed: u64) -> FinGame<u64> {
    random_game(agents, depth_max, utilities, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn grow<R: Rng + ?Sized>(
    agents: &AgentSet,
    depth: usize,
    depth_max: usize,
    utilities: &RangeInclusive<u64>,
    rng: &mut R,
) -> FinGame<u64> {
    let leaf = depth >= depth_max || rng.random_ratio((depth + 1) as u32, (depth_max + 1) as u32);
    if leaf {
        let ua = UtilityAssignment::from_pairs(agents.iter().map(|a| (a.clone(), rng.random_range(utilities.clone()))));
        return FinGame::Leaf(ua);
    }
    let owner = agents.get(rng.random_range(0..agents.len())).expect("nonempty agent set").clone();
    let left = grow(agents, depth + 1, depth_max, utilities, rng);
    let right = grow(agents, depth + 1, depth_max, utilities, rng);
    FinGame::node(owner, left, right)
}

/// Annotates `g` with uniformly random choices.
pub fn random_choices<U: Clone, R: Rng + ?Sized>(g: &FinGame<U>, rng: &mut R) -> FinStrategy<U> {
    match g {
        FinGame::Leaf(ua) => FinStrategy::Leaf(ua.clone()),
        FinGame::Node { agent, left, right } => {
            let choice = if rng.random_bool(0.5) { Choice::Right } else { Choice::Left };
            let left = random_choices(left, rng);
            let right = random_choices(right, rng);
            FinStrategy::node(agent.clone(), choice, left, right)
        }
    }
}

pub fn random_strategy<R: Rng + ?Sized>(
    agents: &AgentSet,
    depth_max: usize,
    utilities: RangeInclusive<u64>,
    rng: &mut R,
) -> FinStrategy<u64> {
    let g = random_game(agents, depth_max, utilities, rng);
    random_choices(&g, rng)
}
