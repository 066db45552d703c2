//! Seeded corpora and the two implication sweeps run over them.
//!
//! Instance `i` of a corpus with seed `s` draws from ChaCha8 seeded with `s`
//! on stream `i`, so instances are independent of the corpus size and of the
//! order in which they are evaluated.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::fingame::{is_fin_nash, random_game, solve_bi_all, FinGame, FinStrategy};
use crate::infgame::random::{agent_set, random_periodic_strategy, SpineGenConfig};
use crate::infgame::{check_main_theorem, InfError, SpineStrategy, TheoremReport};
use crate::model::{ModelError, Preference};

pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Finite game `index`: 2 or 3 agents, depth at most `depth_max`, utilities 0 to 9.
pub fn corpus_game(seed: u64, index: u64, depth_max: usize) -> FinGame<u64> {
    let mut rng = instance_rng(seed, index);
    let agents = agent_set(if rand::Rng::random_bool(&mut rng, 0.5) { 2 } else { 3 });
    random_game(&agents, depth_max, 0..=9, &mut rng)
}

/// Spine strategy `index`. Odd instances solve their right subtrees by
/// backward induction and lean towards Right, so the theorem's premises
/// are met often enough to matter.
pub fn corpus_strategy(seed: u64, index: u64) -> SpineStrategy {
    let mut cfg = SpineGenConfig::default();
    if index % 2 == 1 {
        cfg.solve_templates = true;
        cfg.right_probability = 0.8;
    }
    random_periodic_strategy(&cfg, &mut instance_rng(seed, index))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FinViolation {
    pub index: u64,
    pub strategy: FinStrategy<u64>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FinSweep {
    pub games: u64,
    pub profiles: u64,
    pub violations: Vec<FinViolation>,
}

/// Checks every backward-induction profile of every corpus game for Nash.
pub fn bi_nash_sweep<P>(seed: u64, size: u64, depth_max: usize, ord: &P) -> Result<FinSweep, ModelError>
where
    P: Preference<u64> + ?Sized,
{
    let mut out = FinSweep::default();
    for index in 0..size {
        let g = corpus_game(seed, index, depth_max);
        out.games += 1;
        for s in solve_bi_all(&g, ord)? {
            out.profiles += 1;
            if !is_fin_nash(&s, ord)?.is_holds() {
                out.violations.push(FinViolation { index, strategy: s });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremViolation {
    pub index: u64,
    pub strategy: SpineStrategy,
    pub report: TheoremReport,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TheoremSweep {
    pub strategies: u64,
    pub premises_hold: u64,
    pub nash_holds: u64,
    pub nash_unknown: u64,
    pub violations: Vec<TheoremViolation>,
}

/// Runs the main-theorem check on every corpus strategy.
pub fn theorem_sweep<P>(seed: u64, size: u64, budget: usize, ord: &P) -> Result<TheoremSweep, InfError>
where
    P: Preference<u64> + ?Sized,
{
    let mut out = TheoremSweep::default();
    for index in 0..size {
        let s = corpus_strategy(seed, index);
        let report = check_main_theorem(&s, ord, budget)?;
        out.strategies += 1;
        out.premises_hold += u64::from(report.premises_hold());
        out.nash_holds += u64::from(report.inf_nash.is_holds());
        out.nash_unknown += u64::from(report.inf_nash.is_unknown());
        if report.violation() {
            out.violations.push(TheoremViolation { index, strategy: s, report });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GeNat, LeNum};

    #[test]
    fn instances_do_not_depend_on_corpus_size() {
        assert_eq!(corpus_game(7, 3, 6), corpus_game(7, 3, 6));
        assert_ne!(corpus_game(7, 3, 6), corpus_game(7, 4, 6));
        assert_eq!(corpus_strategy(7, 5).observe(12), corpus_strategy(7, 5).observe(12));
    }

    #[test]
    fn small_sweeps_are_clean() {
        let fin = bi_nash_sweep(1, 50, 5, &GeNat).unwrap();
        assert_eq!(fin.games, 50);
        assert!(fin.profiles >= 50);
        assert!(fin.violations.is_empty());
        let thm = theorem_sweep(1, 100, 32, &GeNat).unwrap();
        assert!(thm.violations.is_empty());
        assert!(thm.premises_hold > 0);
        assert!(theorem_sweep(1, 100, 32, &LeNum).unwrap().violations.is_empty());
    }
}
