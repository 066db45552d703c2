use super::path::{alw_evt_right_periodic, evt_right, LeftForeverFrom, RightInPeriod};
use super::spine::{Periodic, Spine, SpineStrategy, StrategySegment, Template};
use super::{constant, InfError, NodeRef, Obligation, Site};
use crate::affine::{AffExpr, ForallCheck};
use crate::fingame::{f2u, FinStrategy};
use crate::model::{AgentId, Choice, ModelError, Preference};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SgpeCertificate {
    pub right_in_period: RightInPeriod,
    /// Every inequality verified, one per spine node and per node of each
    /// right subtree, for all indices at once.
    pub obligations: Vec<Obligation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SgpeWitness {
    NotAlwaysEventuallyRight(LeftForeverFrom),
    /// `obligation` fails at spine `position`, evaluated at `index`.
    Inequality { obligation: Obligation, position: usize, index: u64 },
}

pub type SgpeVerdict = Verdict<SgpeCertificate, SgpeWitness>;

/// Backward-induction inequalities of a right subtree, root first.
fn bi_obligations(
    site: &Site,
    from: u64,
    s: &FinStrategy<AffExpr>,
    path: &mut Vec<Choice>,
    out: &mut Vec<Obligation>,
) -> Result<(), ModelError> {
    if let FinStrategy::Node { agent, choice, left, right } = s {
        let l = *f2u(left).get(agent)?;
        let r = *f2u(right).get(agent)?;
        let (lhs, rhs) = match choice {
            Choice::Left => (r, l),
            Choice::Right => (l, r),
        };
        out.push(Obligation { site: site.clone(), node: NodeRef::Template(path.clone()), agent: agent.clone(), lhs, rhs, from });
        for (c, child) in [(Choice::Left, left), (Choice::Right, right)] {
            path.push(c);
            bi_obligations(site, from, child, path, out)?;
            path.pop();
        }
    }
    Ok(())
}

/// The spine-node inequality at a node owned by `agent` choosing `choice`,
/// where `u` is the agent's utility under the left residual.
fn spine_obligation(site: Site, seg: &StrategySegment<AffExpr>, u: AffExpr, from: u64) -> Result<Obligation, ModelError> {
    let sr = *f2u(&seg.right).get(&seg.agent)?;
    let (lhs, rhs) = match seg.choice {
        Choice::Left => (sr, u),
        Choice::Right => (u, sr),
    };
    Ok(Obligation { site, node: NodeRef::Spine, agent: seg.agent.clone(), lhs, rhs, from })
}

fn exit_payoff(seg: &StrategySegment<AffExpr>, agent: &AgentId) -> Result<AffExpr, ModelError> {
    Ok(*f2u(&seg.right).get(agent)?)
}

fn periodic_obligations(p: &Periodic<StrategySegment<AffExpr>>, first_right: usize) -> Result<Vec<Obligation>, ModelError> {
    let n0 = p.start();
    let mut out = Vec::new();
    let prefix: Vec<StrategySegment<AffExpr>> = (0..p.prefix().len()).map(|i| StrategySegment::lift(&p.segment_at(i))).collect();
    // the first Right of the period, evaluated at traversal 0
    let entry = StrategySegment::lift(&p.segment_at(p.prefix().len() + first_right));
    for (i, seg) in prefix.iter().enumerate() {
        let next = prefix[i + 1..].iter().find(|t| t.choice == Choice::Right).unwrap_or(&entry);
        let site = Site::Position(i);
        out.push(spine_obligation(site.clone(), seg, exit_payoff(next, &seg.agent)?, n0)?);
        bi_obligations(&site, n0, &seg.right, &mut Vec::new(), &mut out)?;
    }
    let period = p.period();
    for (o, seg) in period.iter().enumerate() {
        let u = match period[o + 1..].iter().find(|t| t.choice == Choice::Right) {
            Some(next) => exit_payoff(next, &seg.agent)?,
            // wraps into the next traversal
            None => exit_payoff(&period[first_right], &seg.agent)?.shift(1),
        };
        let site = Site::Period(o);
        out.push(spine_obligation(site.clone(), seg, u, n0)?);
        bi_obligations(&site, n0, &seg.right, &mut Vec::new(), &mut out)?;
    }
    Ok(out)
}

/// Exact subgame-perfection check for periodic strategies.
///
/// Every suffix must eventually turn right, and every spine node and every
/// node of every right subtree must satisfy its local inequality. For a
/// period position the inequality is affine in the index, so one symbolic
/// check covers every traversal, and with it every subgame.
pub fn is_sgpe<P>(s: &SpineStrategy, ord: &P) -> Result<SgpeVerdict, InfError>
where
    P: Preference<u64> + ?Sized,
{
    let p = match s {
        Spine::Periodic(p) => p,
        Spine::Coalg(_) => return Err(InfError::Representation("exact subgame-perfection needs a periodic description")),
    };
    let right_in_period = match alw_evt_right_periodic(p) {
        Verdict::Holds(r) => r,
        Verdict::Refuted(w) => return Ok(Verdict::Refuted(SgpeWitness::NotAlwaysEventuallyRight(w))),
        Verdict::Unknown { budget } => return Ok(Verdict::Unknown { budget }),
    };
    let obligations = periodic_obligations(p, right_in_period.right_offset)?;
    for ob in &obligations {
        match ob.check(ord).ok_or(InfError::UnsupportedOrder)? {
            ForallCheck::Valid => {}
            ForallCheck::Fails { at } => {
                let position = match ob.site {
                    Site::Position(i) => i,
                    Site::Period(o) => p.period_position(o, at),
                };
                return Ok(Verdict::Refuted(SgpeWitness::Inequality { obligation: ob.clone(), position, index: at }));
            }
        }
    }
    Ok(Verdict::Holds(SgpeCertificate { right_in_period, obligations }))
}

/// Numeric unrolling of the first `depth` spine positions, for any
/// representation and any order. It can only refute; `Unknown` means no
/// violation within `depth`.
pub fn is_sgpe_bounded<P>(s: &SpineStrategy, ord: &P, depth: usize) -> Result<SgpeVerdict, InfError>
where
    P: Preference<u64> + ?Sized,
{
    let budget = depth.max(1);
    for (i, seg) in s.observe(depth).iter().enumerate() {
        let left = s.residual(i + 1);
        let next = match evt_right(&left, budget) {
            Verdict::Holds(k) => s.segment_at(i + 1 + k),
            Verdict::Refuted(w) => {
                return Ok(Verdict::Refuted(SgpeWitness::NotAlwaysEventuallyRight(LeftForeverFrom {
                    from: i + 1,
                    period_len: w.period_len,
                })))
            }
            Verdict::Unknown { .. } => break,
        };
        let seg = StrategySegment::lift(seg);
        let site = Site::Position(i);
        let mut obligations = vec![spine_obligation(site.clone(), &seg, constant(*f2u(&next.right).get(&seg.agent)?), 0)?];
        bi_obligations(&site, 0, &seg.right, &mut Vec::new(), &mut obligations)?;
        for ob in obligations {
            if let Some(ForallCheck::Fails { at }) = ob.check(ord) {
                return Ok(Verdict::Refuted(SgpeWitness::Inequality { obligation: ob, position: i, index: at }));
            }
        }
    }
    Ok(Verdict::Unknown { budget: depth })
}
