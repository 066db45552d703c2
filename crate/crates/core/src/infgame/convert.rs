use super::spine::{lcm, Spine, SpineStrategy, StrategySegment};
use crate::fingame::{enumerate_deviations, fin_convertible};
use crate::model::AgentId;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvertFailure {
    AgentMismatch,
    /// A choice changed at a node the deviating agent does not own.
    ForeignChoiceChanged,
    RightSubtreeNotConvertible,
    /// The descriptions never agree from any position on.
    TailsNeverAgree,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConvertWitness {
    pub position: usize,
    pub failure: ConvertFailure,
}

/// `Holds(d)`: the strategies agree from spine depth `d` on, and every
/// position above `d` differs only in ways `agent` controls.
pub type ConvertVerdict = Verdict<usize, ConvertWitness>;

fn position_clause(agent: &AgentId, x: &StrategySegment<u64>, y: &StrategySegment<u64>) -> Result<(), ConvertFailure> {
    if x.agent != y.agent {
        return Err(ConvertFailure::AgentMismatch);
    }
    if x.agent != *agent && x.choice != y.choice {
        return Err(ConvertFailure::ForeignChoiceChanged);
    }
    if !fin_convertible(agent, &x.right, &y.right) {
        return Err(ConvertFailure::RightSubtreeNotConvertible);
    }
    Ok(())
}

/// `agent`-convertibility of infinite strategies, searching the depth at
/// which the two tails coincide up to `prefix_budget`.
///
/// Tails are compared with [`Spine::observationally_equal`]. For two
/// periodic descriptions the search is complete once it passes the depth
/// after which tails cannot start to agree, so the answer is exact there.
pub fn inf_convertible(agent: &AgentId, s: &SpineStrategy, s2: &SpineStrategy, prefix_budget: usize) -> ConvertVerdict {
    let exact_horizon = match (s, s2) {
        (Spine::Periodic(a), Spine::Periodic(b)) => {
            let m = lcm(a.period().len(), b.period().len());
            Some(a.prefix().len().max(b.prefix().len()) + 2 * m)
        }
        _ => None,
    };
    let xs = s.observe(prefix_budget);
    let ys = s2.observe(prefix_budget);
    for d in 0..=prefix_budget {
        if s.residual(d).observationally_equal(&s2.residual(d)) {
            return Verdict::Holds(d);
        }
        if exact_horizon.is_some_and(|h| d >= h) {
            return Verdict::Refuted(ConvertWitness { position: d, failure: ConvertFailure::TailsNeverAgree });
        }
        if d == prefix_budget {
            break;
        }
        if let Err(failure) = position_clause(agent, &xs[d], &ys[d]) {
            return Verdict::Refuted(ConvertWitness { position: d, failure });
        }
    }
    Verdict::Unknown { budget: prefix_budget }
}

/// Options at one spine position: spine choice (flippable iff `agent`
/// owns the node) crossed with every convertible right substrategy.
fn position_options(agent: &AgentId, seg: &StrategySegment<u64>) -> Vec<StrategySegment<u64>> {
    let choices = if seg.agent == *agent { vec![seg.choice, seg.choice.flip()] } else { vec![seg.choice] };
    let rights: Vec<_> = enumerate_deviations(agent, &seg.right).collect();
    let mut out = Vec::with_capacity(choices.len() * rights.len());
    for &choice in &choices {
        for right in &rights {
            out.push(StrategySegment { agent: seg.agent.clone(), choice, right: right.clone() });
        }
    }
    out
}

/// Every `agent`-deviation of `s` whose modifications lie above spine
/// depth `depth`; the tail from `depth` on is `s`'s own. Mixed-radix
/// order with position 0 varying fastest; the first element denotes `s`.
pub fn deviations_within(agent: &AgentId, s: &SpineStrategy, depth: usize) -> Vec<SpineStrategy> {
    if depth == 0 {
        return vec![s.clone()];
    }
    let options: Vec<Vec<StrategySegment<u64>>> = s.observe(depth).iter().map(|seg| position_options(agent, seg)).collect();
    let tail = s.residual(depth);
    let mut out = Vec::new();
    let mut digits = vec![0usize; depth];
    loop {
        let head = digits.iter().zip(&options).map(|(&i, opts)| opts[i].clone()).collect();
        out.push(Spine::with_head(head, tail.clone()));
        let mut pos = 0;
        loop {
            if pos == depth {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < options[pos].len() {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
