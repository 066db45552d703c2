use super::FinStrategy;
use crate::model::AgentId;

/// `s` and `s2` are `agent`-convertible: same shape, same leaves, and equal
/// choices everywhere except at nodes owned by `agent`.
pub fn fin_convertible<U: PartialEq>(agent: &AgentId, s: &FinStrategy<U>, s2: &FinStrategy<U>) -> bool {
    match (s, s2) {
        (FinStrategy::Leaf(u), FinStrategy::Leaf(v)) => u == v,
        (
            FinStrategy::Node { agent: a1, choice: c1, left: l1, right: r1 },
            FinStrategy::Node { agent: a2, choice: c2, left: l2, right: r2 },
        ) => {
            a1 == a2
                && (a1 == agent || c1 == c2)
                && fin_convertible(agent, l1, l2)
                && fin_convertible(agent, r1, r2)
        }
        _ => false,
    }
}

/// Number of nodes of `s` owned by `agent`.
pub fn a_owned_nodes<U>(agent: &AgentId, s: &FinStrategy<U>) -> usize {
    match s {
        FinStrategy::Leaf(_) => 0,
        FinStrategy::Node { agent: owner, left, right, .. } => {
            usize::from(owner == agent) + a_owned_nodes(agent, left) + a_owned_nodes(agent, right)
        }
    }
}

/// Every strategy `agent`-convertible to `s`, exactly once each.
///
/// The `agent`-owned nodes are numbered in pre-order; the i-th element of
/// the sequence flips the nodes whose bit is set in `i`, so the first
/// element is `s` itself.
///
/// Panics if `s` has 64 or more `agent`-owned nodes.
pub fn enumerate_deviations<'s, U: Clone>(agent: &AgentId, s: &'s FinStrategy<U>) -> Deviations<'s, U> {
    let owned = a_owned_nodes(agent, s);
    assert!(owned < 64, "{owned} owned nodes is too many to enumerate");
    Deviations { base: s, agent: agent.clone(), next: 0, end: 1u64 << owned }
}

pub struct Deviations<'s, U> {
    base: &'s FinStrategy<U>,
    agent: AgentId,
    next: u64,
    end: u64,
}

impl<U: Clone> Iterator for Deviations<'_, U> {
    type Item = FinStrategy<U>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next == self.end {
            return None;
        }
        let mask = self.next;
        self.next += 1;
        let mut index = 0;
        Some(apply_flips(&self.agent, self.base, mask, &mut index))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl<U: Clone> ExactSizeIterator for Deviations<'_, U> {}

fn apply_flips<U: Clone>(agent: &AgentId, s: &FinStrategy<U>, mask: u64, index: &mut u32) -> FinStrategy<U> {
    match s {
        FinStrategy::Leaf(ua) => FinStrategy::Leaf(ua.clone()),
        FinStrategy::Node { agent: owner, choice, left, right } => {
            let choice = if owner == agent {
                let bit = (mask >> *index) & 1 == 1;
                *index += 1;
                if bit {
                    choice.flip()
                } else {
                    *choice
                }
            } else {
                *choice
            };
            let left = apply_flips(agent, left, mask, index);
            let right = apply_flips(agent, right, mask, index);
            FinStrategy::node(owner.clone(), choice, left, right)
        }
    }
}
