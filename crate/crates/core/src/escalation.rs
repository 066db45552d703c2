//! The dollar auction: two bidders alternately raise or give up, and the
//! loser pays too.
//!
//! Alice moves first. At stage `k` her exit leaf is `(2k+1, 2k)` and Bob's
//! is `(2k+1, 2k+2)`, payoffs being costs under [`GeNat`]. One Alice/Bob
//! pair is one period, so the stage advances once per traversal.

use std::sync::OnceLock;

use crate::affine::AffExpr;
use crate::fingame::FinStrategy;
use crate::infgame::{
    alw_evt_right, check_main_theorem, evt_max_u, evt_right, i2u, is_inf_nash, is_sgpe, Spine, SpineGame,
    SpineStrategy, StrategySegment,
};
use crate::model::{AgentId, AgentSet, Choice, GeNat, UtilityAssignment};
use crate::report::{self, Report};

pub fn escalation_agents() -> &'static AgentSet {
    static AGENTS: OnceLock<AgentSet> = OnceLock::new();
    AGENTS.get_or_init(|| AgentSet::new(["alice", "bob"]).expect("two distinct names"))
}

pub fn alice() -> AgentId {
    escalation_agents().by_name("alice").expect("declared").clone()
}

pub fn bob() -> AgentId {
    escalation_agents().by_name("bob").expect("declared").clone()
}

fn exit_leaf(alice_cost: AffExpr, bob_cost: AffExpr) -> FinStrategy<AffExpr> {
    FinStrategy::leaf(UtilityAssignment::from_pairs([(alice(), alice_cost), (bob(), bob_cost)]))
}

/// One stage of the auction with the given spine choices.
pub fn enlarge(c1: Choice, c2: Choice) -> [StrategySegment<AffExpr>; 2] {
    [
        StrategySegment { agent: alice(), choice: c1, right: exit_leaf(AffExpr::new(2, 1), AffExpr::new(2, 0)) },
        StrategySegment { agent: bob(), choice: c2, right: exit_leaf(AffExpr::new(2, 1), AffExpr::new(2, 2)) },
    ]
}

fn repeat(n: u64, c1: Choice, c2: Choice) -> SpineStrategy {
    Spine::periodic(n, Vec::new(), enlarge(c1, c2).to_vec()).expect("escalation templates are well formed")
}

/// Never give up: both bidders always raise.
pub fn ngu(n: u64) -> SpineStrategy {
    repeat(n, Choice::Left, Choice::Left)
}

/// Always give up: each bidder stops at once.
pub fn agu(n: u64) -> SpineStrategy {
    repeat(n, Choice::Right, Choice::Right)
}

pub fn escalation_game(n: u64) -> SpineGame {
    ngu(n).erase()
}

/// Runs the case study at stage `n` and reports both claims.
pub fn escalation_report(n: u64, budget: usize) -> Report {
    let ord = GeNat;
    let mut r = Report::new();
    r.field("instance", "dollar-auction").field("n", n).field("budget", budget);

    let never = ngu(n);
    let nash_ngu = is_inf_nash(&never, &ord, budget).expect("escalation payoffs cover both agents");
    r.field("ngu.evt_right", evt_right(&never, budget).kind());
    r.field("ngu.alw_evt_right", alw_evt_right(&never, budget).kind());
    for a in [alice(), bob()] {
        let u = i2u(&a, &never, budget).expect("periodic strategies are decided");
        r.field(&format!("ngu.i2u.{a}"), u.map_or("undefined".to_string(), |u| u.to_string()));
    }
    r.nest("ngu.inf_nash", &report::inf_nash(&nash_ngu));

    let always = agu(n);
    let sgpe = is_sgpe(&always, &ord).expect("periodic strategy under the escalation order");
    r.field("agu.evt_right", evt_right(&always, budget).kind());
    r.field("agu.alw_evt_right", alw_evt_right(&always, budget).kind());
    for a in [alice(), bob()] {
        let u = i2u(&a, &always, budget).expect("periodic strategies are decided");
        r.field(&format!("agu.i2u.{a}"), u.map_or("undefined".to_string(), |u| u.to_string()));
    }
    r.nest("agu.sgpe", &report::sgpe(&sgpe));
    let emu = evt_max_u(&always, &ord, budget).expect("escalation payoffs cover both agents");
    r.nest("agu.evt_max_u", &report::evt_max_u(&emu));
    let thm = check_main_theorem(&always, &ord, budget).expect("escalation payoffs cover both agents");
    r.nest("agu.theorem", &report::theorem(&thm));

    let ngu_claim = if nash_ngu.is_refuted() { "ngu is not a Nash equilibrium (EvtRight fails)" } else { "ngu was not refuted" };
    let agu_claim = if sgpe.is_holds() { "agu is subgame perfect" } else { "agu was not certified subgame perfect" };
    r.field("summary", format!("{ngu_claim}; {agu_claim}"));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingame::f2u;
    use crate::infgame::Template;
    use crate::verdict::Verdict;

    fn leaf_of(seg: &StrategySegment<u64>) -> (u64, u64) {
        let ua = f2u(&seg.right);
        (*ua.get(&alice()).unwrap(), *ua.get(&bob()).unwrap())
    }

    #[test]
    fn enlarge_instantiates_the_stage_payoffs() {
        let [a, b] = enlarge(Choice::Left, Choice::Left);
        assert_eq!(leaf_of(&a.instantiate(0)), (1, 0));
        assert_eq!(leaf_of(&b.instantiate(0)), (1, 2));
        let [a, b] = enlarge(Choice::Right, Choice::Right);
        assert_eq!(leaf_of(&a.instantiate(2)), (5, 4));
        assert_eq!(leaf_of(&b.instantiate(2)), (5, 6));
        let [a, b] = enlarge(Choice::Right, Choice::Left);
        assert_eq!((a.choice, b.choice), (Choice::Right, Choice::Left));
    }

    #[test]
    fn strategy_families() {
        assert!(ngu(0).observe(10).iter().all(|s| s.choice == Choice::Left));
        assert!(evt_right(&ngu(0), 1).is_refuted());
        assert!(is_inf_nash(&ngu(5), &GeNat, 50).unwrap().is_refuted());
        assert_eq!(i2u(&alice(), &agu(3), 1).unwrap(), Some(7));
        assert_eq!(i2u(&bob(), &agu(3), 1).unwrap(), Some(6));
        assert!(alw_evt_right(&agu(0), 1).is_holds());
    }

    #[test]
    fn costs_grow_with_the_stage() {
        let g = escalation_game(0);
        let seen = g.observe(20);
        for i in 0..18 {
            let (now, later) = (&seen[i].right, &seen[i + 2].right);
            for a in [alice(), bob()] {
                let x = *crate::fingame::FinGame::leaves(now)[0].get(&a).unwrap();
                let y = *crate::fingame::FinGame::leaves(later)[0].get(&a).unwrap();
                assert!(y > x);
            }
        }
    }

    #[test]
    fn report_states_both_claims() {
        let text = escalation_report(0, 64).to_string();
        assert!(text.contains("ngu.inf_nash.verdict: Refuted"));
        assert!(text.contains("ngu.inf_nash.reason: EvtRight fails"));
        assert!(text.contains("agu.sgpe.verdict: Holds"));
        assert!(text.contains("agu.theorem.violation: false"));
        assert_eq!(text, escalation_report(0, 64).to_string());
        let ten = escalation_report(10, 50).to_string();
        assert!(ten.contains("agu.i2u.alice: 21"));
        assert!(ten.contains("agu.theorem.violation: false"));
    }

    #[test]
    fn always_give_up_for_the_first_hundred_stages() {
        for n in 0..=100 {
            assert!(is_sgpe(&agu(n), &GeNat).unwrap().is_holds());
            assert!(matches!(is_inf_nash(&ngu(n), &GeNat, 8).unwrap(), Verdict::Refuted(_)));
        }
    }
}
