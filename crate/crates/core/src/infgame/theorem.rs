use super::nash::{evt_max_u, is_inf_nash, EvtMaxUVerdict, InfNashVerdict};
use super::sgpe::{is_sgpe, is_sgpe_bounded, SgpeVerdict};
use super::spine::SpineStrategy;
use super::InfError;
use crate::model::Preference;

/// The three verdicts behind "eventually maximal and subgame perfect
/// implies Nash" on one strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremReport {
    pub evt_max_u: EvtMaxUVerdict,
    pub sgpe: SgpeVerdict,
    pub inf_nash: InfNashVerdict,
}

impl TheoremReport {
    pub fn premises_hold(&self) -> bool {
        self.evt_max_u.is_holds() && self.sgpe.is_holds()
    }

    /// Both premises certified, conclusion refuted.
    pub fn violation(&self) -> bool {
        self.premises_hold() && self.inf_nash.is_refuted()
    }
}

pub fn check_main_theorem<P>(s: &SpineStrategy, ord: &P, budget: usize) -> Result<TheoremReport, InfError>
where
    P: Preference<u64> + ?Sized,
{
    let evt_max_u = evt_max_u(s, ord, budget)?;
    let sgpe = match is_sgpe(s, ord) {
        Err(InfError::Representation(_) | InfError::UnsupportedOrder) => is_sgpe_bounded(s, ord, budget)?,
        other => other?,
    };
    let inf_nash = is_inf_nash(s, ord, budget)?;
    Ok(TheoremReport { evt_max_u, sgpe, inf_nash })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::escalation::{agu, ngu};
    use crate::model::GeNat;

    #[test]
    fn escalation_families() {
        let r = check_main_theorem(&agu(4), &GeNat, 16).unwrap();
        assert!(r.premises_hold());
        assert!(r.inf_nash.is_holds());
        assert!(!r.violation());

        let r = check_main_theorem(&ngu(4), &GeNat, 16).unwrap();
        assert!(!r.premises_hold());
        assert!(r.inf_nash.is_refuted());
        assert!(!r.violation());
    }
}
