use super::spine::{Periodic, Spine, SpineStrategy, StrategySegment};
use super::InfError;
use crate::affine::AffExpr;
use crate::fingame::f2u;
use crate::model::{AgentId, Choice};
use crate::verdict::Verdict;

/// Lasso shape of a strategy whose spine choices are all Left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AllLeft {
    pub prefix_len: usize,
    pub period_len: usize,
}

/// Evidence that every suffix turns right: the period has a Right at
/// `right_offset`, so from any position the next traversal reaches it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RightInPeriod {
    pub prefix_len: usize,
    pub period_len: usize,
    pub right_offset: usize,
}

/// Every spine position from `from` onwards chooses Left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeftForeverFrom {
    pub from: usize,
    pub period_len: usize,
}

/// `Holds(k)`: position `k` is the first spine node choosing Right.
pub type EvtRightVerdict = Verdict<usize, AllLeft>;
pub type AlwEvtRightVerdict = Verdict<RightInPeriod, LeftForeverFrom>;

fn first_right(choices: impl IntoIterator<Item = Choice>) -> Option<usize> {
    choices.into_iter().position(|c| c == Choice::Right)
}

pub(crate) fn evt_right_periodic(p: &Periodic<StrategySegment<AffExpr>>) -> EvtRightVerdict {
    let choices = p.prefix().iter().chain(p.period()).map(|t| t.choice);
    match first_right(choices) {
        Some(k) => Verdict::Holds(k),
        None => Verdict::Refuted(AllLeft { prefix_len: p.prefix().len(), period_len: p.period().len() }),
    }
}

/// Whether the spine path eventually turns right. Periodic descriptions
/// are decided exactly; coalgebraic ones are searched for `budget`
/// positions and refuted only if their seed cycles.
pub fn evt_right(s: &SpineStrategy, budget: usize) -> EvtRightVerdict {
    match s {
        Spine::Periodic(p) => evt_right_periodic(p),
        Spine::Coalg(c) => {
            if let Some(k) = first_right(c.observe(budget).iter().map(|seg| seg.choice)) {
                return Verdict::Holds(k);
            }
            match s.lasso(budget) {
                Some(p) => evt_right_periodic(&p),
                None => Verdict::Unknown { budget },
            }
        }
    }
}

pub(crate) fn alw_evt_right_periodic(p: &Periodic<StrategySegment<AffExpr>>) -> AlwEvtRightVerdict {
    match first_right(p.period().iter().map(|t| t.choice)) {
        Some(right_offset) => Verdict::Holds(RightInPeriod {
            prefix_len: p.prefix().len(),
            period_len: p.period().len(),
            right_offset,
        }),
        None => Verdict::Refuted(LeftForeverFrom { from: p.prefix().len(), period_len: p.period().len() }),
    }
}

/// Whether every suffix of the spine path eventually turns right. Right
/// subtrees are finite, so only the spine matters. Coalgebraic spines are
/// decided only when their seed cycles within `budget`.
pub fn alw_evt_right(s: &SpineStrategy, budget: usize) -> AlwEvtRightVerdict {
    match s.lasso(budget) {
        Some(p) => alw_evt_right_periodic(&p),
        None => Verdict::Unknown { budget },
    }
}

/// Utility of `agent` under `s`: the outcome of the right substrategy at
/// the first Right on the spine, or `None` if the path stays left forever.
pub fn i2u(agent: &AgentId, s: &SpineStrategy, budget: usize) -> Result<Option<u64>, InfError> {
    match evt_right(s, budget) {
        Verdict::Holds(k) => {
            let seg = s.segment_at(k);
            Ok(Some(*f2u(&seg.right).get(agent)?))
        }
        Verdict::Refuted(_) => Ok(None),
        Verdict::Unknown { budget } => Err(InfError::Undecided { budget }),
    }
}
