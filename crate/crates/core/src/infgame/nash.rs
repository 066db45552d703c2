use std::collections::BTreeSet;
use std::convert::Infallible;

use super::path::{evt_right, AllLeft};
use super::spine::{Periodic, Spine, SpineStrategy, StrategySegment};
use super::{constant, InfError, NodeRef, Obligation, Site};
use crate::affine::{AffExpr, ForallCheck};
use crate::fingame::{f2u, reachable_outcomes, steer};
use crate::model::{AgentId, Choice, Preference};
use crate::verdict::Verdict;

/// A finite deviation that gives its author a strictly better outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationWitness {
    pub agent: AgentId,
    /// Spine position of the first Right under the deviation.
    pub exit_position: usize,
    pub deviation: SpineStrategy,
    pub deviating: u64,
    pub current: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InfNashWitness {
    /// The strategy itself has no utility.
    EvtRightFails(AllLeft),
    Deviation(DeviationWitness),
}

/// Every place a deviation can leave the spine, with the inequality that
/// makes it unprofitable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfNashCertificate {
    pub first_right: usize,
    pub utilities: Vec<(AgentId, u64)>,
    pub obligations: Vec<Obligation>,
}

pub type InfNashVerdict = Verdict<InfNashCertificate, InfNashWitness>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvtMaxUCertificate {
    pub depth: usize,
    pub nash: InfNashCertificate,
}

/// Never refuted: see [`evt_max_u`].
pub type EvtMaxUVerdict = Verdict<EvtMaxUCertificate, Infallible>;

enum Scan {
    /// No deviation can reach past the listed exits.
    Certain(Vec<Obligation>),
    Violation(DeviationWitness),
    /// Exits beyond the scanned depth were not examined.
    Open,
}

fn passable(seg_agent: &AgentId, choice: Choice, agent: &AgentId) -> bool {
    choice == Choice::Left || seg_agent == agent
}

fn is_exit(seg_agent: &AgentId, choice: Choice, agent: &AgentId) -> bool {
    choice == Choice::Right || seg_agent == agent
}

/// `s` changed by `agent` so that the path runs left down to `exit`, turns
/// right there and follows `path` inside the right subtree.
fn deviation_through(agent: &AgentId, s: &SpineStrategy, exit: usize, path: &[Choice]) -> SpineStrategy {
    let mut head = s.observe(exit + 1);
    for seg in &mut head[..exit] {
        seg.choice = Choice::Left;
    }
    let last = &mut head[exit];
    last.choice = Choice::Right;
    last.right = steer(agent, &last.right, path);
    Spine::with_head(head, s.residual(exit + 1))
}

struct Ctx<'a, P: ?Sized> {
    agent: &'a AgentId,
    s: &'a SpineStrategy,
    current: u64,
    ord: &'a P,
}

impl<P: Preference<u64> + ?Sized> Ctx<'_, P> {
    /// Checks every outcome reachable by leaving at concrete position `j`.
    fn exit_at(&self, j: usize, seg: &StrategySegment<u64>, out: &mut Vec<Obligation>) -> Result<Option<DeviationWitness>, InfError> {
        for (path, leaf) in reachable_outcomes(self.agent, &seg.right) {
            let v = *leaf.get(self.agent)?;
            if !self.ord.leq(&v, &self.current) {
                return Ok(Some(DeviationWitness {
                    agent: self.agent.clone(),
                    exit_position: j,
                    deviation: deviation_through(self.agent, self.s, j, &path),
                    deviating: v,
                    current: self.current,
                }));
            }
            out.push(Obligation {
                site: Site::Position(j),
                node: NodeRef::Exit(path),
                agent: self.agent.clone(),
                lhs: constant(v),
                rhs: constant(self.current),
                from: 0,
            });
        }
        Ok(None)
    }

    /// Scans concrete positions in order until the path is blocked.
    /// Returns `Ok(None)` when every scanned position was passable.
    fn scan_concrete(
        &self,
        segs: impl IntoIterator<Item = (usize, StrategySegment<u64>)>,
        out: &mut Vec<Obligation>,
    ) -> Result<Option<Scan>, InfError> {
        for (j, seg) in segs {
            if is_exit(&seg.agent, seg.choice, self.agent) {
                if let Some(w) = self.exit_at(j, &seg, out)? {
                    return Ok(Some(Scan::Violation(w)));
                }
            }
            if !passable(&seg.agent, seg.choice, self.agent) {
                return Ok(Some(Scan::Certain(std::mem::take(out))));
            }
        }
        Ok(None)
    }

    /// Exact over every deviation; `None` if the order cannot be decided
    /// symbolically.
    fn exact(&self, p: &Periodic<StrategySegment<AffExpr>>) -> Result<Option<Scan>, InfError> {
        let mut out = Vec::new();
        let prefix = (0..p.prefix().len()).map(|i| (i, p.segment_at(i)));
        if let Some(scan) = self.scan_concrete(prefix, &mut out)? {
            return Ok(Some(scan));
        }
        let all_passable = p.period().iter().all(|t| passable(&t.agent, t.choice, self.agent));
        if !all_passable {
            // blocked within the first traversal
            let first = (0..p.period().len()).map(|o| {
                let j = p.prefix().len() + o;
                (j, p.segment_at(j))
            });
            return Ok(Some(self.scan_concrete(first, &mut out)?.expect("a blocking position in the period")));
        }
        let u = constant(self.current);
        for (o, t) in p.period().iter().enumerate() {
            if !is_exit(&t.agent, t.choice, self.agent) {
                continue;
            }
            for (path, leaf) in reachable_outcomes(self.agent, &t.right) {
                let ob = Obligation {
                    site: Site::Period(o),
                    node: NodeRef::Exit(path.clone()),
                    agent: self.agent.clone(),
                    lhs: *leaf.get(self.agent)?,
                    rhs: u,
                    from: p.start(),
                };
                match ob.check(self.ord) {
                    None => return Ok(None),
                    Some(ForallCheck::Valid) => out.push(ob),
                    Some(ForallCheck::Fails { at }) => {
                        let j = p.period_position(o, at);
                        let deviating = ob.lhs.eval(at).expect("validated template");
                        return Ok(Some(Scan::Violation(DeviationWitness {
                            agent: self.agent.clone(),
                            exit_position: j,
                            deviation: deviation_through(self.agent, self.s, j, &path),
                            deviating,
                            current: self.current,
                        })));
                    }
                }
            }
        }
        Ok(Some(Scan::Certain(out)))
    }

    /// Deviations confined to the first `depth` positions.
    fn bounded(&self, depth: usize) -> Result<Scan, InfError> {
        let mut out = Vec::new();
        let head = self.s.observe(depth);
        if let Some(scan) = self.scan_concrete(head.iter().cloned().enumerate(), &mut out)? {
            return Ok(scan);
        }
        // every position above `depth` is passable: the path can also run
        // on into the unchanged tail and leave at its first Right
        if let Verdict::Holds(k) = evt_right(&self.s.residual(depth), depth.max(1)) {
            let j = depth + k;
            let v = *f2u(&self.s.segment_at(j).right).get(self.agent)?;
            if !self.ord.leq(&v, &self.current) {
                let mut head = head;
                for seg in &mut head {
                    seg.choice = Choice::Left;
                }
                return Ok(Scan::Violation(DeviationWitness {
                    agent: self.agent.clone(),
                    exit_position: j,
                    deviation: Spine::with_head(head, self.s.residual(depth)),
                    deviating: v,
                    current: self.current,
                }));
            }
        }
        Ok(Scan::Open)
    }
}

/// Nash check for an infinite strategy.
///
/// A deviation changes finitely many choices, so it leaves the spine at
/// some position it can reach by flipping its author's nodes to Left, and
/// ends in a leaf of that position's right subtree reachable by the author.
/// For periodic descriptions these exits are checked for every traversal at
/// once, which decides the question exactly; otherwise the scan covers
/// `depth_budget` positions and is exact only if the path is blocked within
/// them.
pub fn is_inf_nash<P>(s: &SpineStrategy, ord: &P, depth_budget: usize) -> Result<InfNashVerdict, InfError>
where
    P: Preference<u64> + ?Sized,
{
    let first_right = match evt_right(s, depth_budget.max(1)) {
        Verdict::Holds(k) => k,
        Verdict::Refuted(w) => return Ok(Verdict::Refuted(InfNashWitness::EvtRightFails(w))),
        Verdict::Unknown { budget } => return Ok(Verdict::Unknown { budget }),
    };
    let outcome = f2u(&s.segment_at(first_right).right).clone();
    let mut agents: BTreeSet<AgentId> = s.agents(depth_budget);
    agents.extend(outcome.agents().cloned());

    let mut utilities = Vec::new();
    let mut obligations = Vec::new();
    let mut open = false;
    for agent in &agents {
        let current = *outcome.get(agent)?;
        utilities.push((agent.clone(), current));
        let ctx = Ctx { agent, s, current, ord };
        let exact = match s {
            Spine::Periodic(p) => ctx.exact(p)?,
            Spine::Coalg(_) => None,
        };
        let scan = match exact {
            Some(scan) => scan,
            None => ctx.bounded(depth_budget)?,
        };
        match scan {
            Scan::Certain(obs) => obligations.extend(obs),
            Scan::Violation(w) => return Ok(Verdict::Refuted(InfNashWitness::Deviation(w))),
            Scan::Open => open = true,
        }
    }
    if open {
        return Ok(Verdict::Unknown { budget: depth_budget });
    }
    Ok(Verdict::Holds(InfNashCertificate { first_right, utilities, obligations }))
}

/// Searches spine depths `d <= budget` for a residual from which no agent
/// can improve by any deviation. Only certified depths count, so the
/// answer is `Holds(d)` or `Unknown`.
pub fn evt_max_u<P>(s: &SpineStrategy, ord: &P, budget: usize) -> Result<EvtMaxUVerdict, InfError>
where
    P: Preference<u64> + ?Sized,
{
    for depth in 0..=budget {
        if let Verdict::Holds(nash) = is_inf_nash(&s.residual(depth), ord, budget)? {
            return Ok(Verdict::Holds(EvtMaxUCertificate { depth, nash }));
        }
    }
    Ok(Verdict::Unknown { budget })
}
