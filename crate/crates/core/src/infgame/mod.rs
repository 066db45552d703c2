//! Infinite spine games and strategies and the checkers over them.

mod convert;
mod nash;
mod path;
pub mod random;
mod sgpe;
mod spine;
mod theorem;

use std::fmt;

use thiserror::Error;

use crate::affine::{leq_forall, AffExpr, ForallCheck};
use crate::model::{AgentId, Choice, ModelError, OrderKind, Preference};

pub use convert::{deviations_within, inf_convertible, ConvertFailure, ConvertVerdict, ConvertWitness};
pub use nash::{
    evt_max_u, is_inf_nash, DeviationWitness, EvtMaxUCertificate, EvtMaxUVerdict, InfNashCertificate, InfNashVerdict,
    InfNashWitness,
};
pub use path::{
    alw_evt_right, evt_right, i2u, AllLeft, AlwEvtRightVerdict, EvtRightVerdict, LeftForeverFrom, RightInPeriod,
};
pub use sgpe::{is_sgpe, is_sgpe_bounded, SgpeCertificate, SgpeVerdict, SgpeWitness};
pub use spine::{
    decompose, recompose, Coalg, GameSegment, Periodic, PeriodicGame, PeriodicStrategy, Segment, Spine, SpineError,
    SpineGame, SpineStrategy, StepFn, StrategySegment, Template,
};
pub use theorem::{check_main_theorem, TheoremReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InfError {
    #[error("undecided within budget {budget}")]
    Undecided { budget: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Representation(&'static str),
    #[error("the preference order has no symbolic decision procedure")]
    UnsupportedOrder,
    #[error(transparent)]
    Spine(#[from] SpineError),
}

/// Where an inequality was checked.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Site {
    /// A single concrete spine position.
    Position(usize),
    /// A period offset, at every traversal.
    Period(usize),
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Position(i) => write!(f, "position {i}"),
            Site::Period(o) => write!(f, "period offset {o}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NodeRef {
    /// The spine node itself.
    Spine,
    /// A node inside the right subtree, reached by the given path.
    Template(Vec<Choice>),
    /// A leaf of the right subtree the deviating agent can reach.
    Exit(Vec<Choice>),
}

fn write_path(f: &mut fmt::Formatter<'_>, path: &[Choice]) -> fmt::Result {
    if path.is_empty() {
        return f.write_str("root");
    }
    let s: Vec<&str> = path.iter().map(|c| if *c == Choice::Left { "L" } else { "R" }).collect();
    f.write_str(&s.join("."))
}

impl fmt::Display for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeRef::Spine => f.write_str("spine"),
            NodeRef::Template(p) => {
                f.write_str("subtree ")?;
                write_path(f, p)
            }
            NodeRef::Exit(p) => {
                f.write_str("exit ")?;
                write_path(f, p)
            }
        }
    }
}

/// `lhs =< rhs` for `agent`, at every index `k >= from`. Concrete
/// obligations have constant sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Obligation {
    pub site: Site,
    pub node: NodeRef,
    pub agent: AgentId,
    pub lhs: AffExpr,
    pub rhs: AffExpr,
    pub from: u64,
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}: {} =< {}", self.site, self.node, self.agent, self.lhs, self.rhs)?;
        if !(self.lhs.is_constant() && self.rhs.is_constant()) {
            write!(f, " for k >= {}", self.from)?;
        }
        Ok(())
    }
}

/// Decides `lhs(k) =< rhs(k)` for all `k >= from`, or `None` when the order
/// has no symbolic procedure and the sides are not both constant.
pub(crate) fn forall_leq<P: Preference<u64> + ?Sized>(ord: &P, lhs: AffExpr, rhs: AffExpr, from: u64) -> Option<ForallCheck> {
    match ord.kind() {
        OrderKind::GeNat => Some(leq_forall(lhs, rhs, from)),
        OrderKind::LeNum => Some(leq_forall(rhs, lhs, from)),
        OrderKind::Other if lhs.is_constant() && rhs.is_constant() => {
            let (l, r) = (lhs.eval(from).ok()?, rhs.eval(from).ok()?);
            Some(if ord.leq(&l, &r) { ForallCheck::Valid } else { ForallCheck::Fails { at: from } })
        }
        OrderKind::Other => None,
    }
}

impl Obligation {
    pub(crate) fn check<P: Preference<u64> + ?Sized>(&self, ord: &P) -> Option<ForallCheck> {
        forall_leq(ord, self.lhs, self.rhs, self.from)
    }
}

pub(crate) fn constant(v: u64) -> AffExpr {
    AffExpr::constant(i64::try_from(v).expect("utility fits in i64"))
}
