//! Line-oriented `key: value` reports.
//!
//! Nested evidence goes in indented blocks introduced by a bare key such as
//! `witness:` or `certificate:`. Output is a pure function of the input.

use std::fmt;

use crate::fingame::{FinNashVerdict, FinNashWitness, FinStrategy};
use crate::infgame::{
    EvtMaxUVerdict, EvtRightVerdict, InfNashVerdict, InfNashWitness, SgpeVerdict, SgpeWitness, Spine, SpineStrategy,
    TheoremReport,
};
use crate::syntax;
use crate::verdict::Verdict;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    lines: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.lines.push(format!("{key}: {value}"));
        self
    }

    pub fn block<I, S>(&mut self, key: &str, lines: I) -> &mut Self
    where
        I: IntoIterator<Item = S>,
        S: fmt::Display,
    {
        self.lines.push(format!("{key}:"));
        for l in lines {
            for part in l.to_string().lines() {
                self.lines.push(format!("  {part}"));
            }
        }
        self
    }

    /// Appends `other` with every key prefixed by `prefix.`.
    pub fn nest(&mut self, prefix: &str, other: &Report) -> &mut Self {
        for l in &other.lines {
            if l.starts_with(' ') {
                self.lines.push(l.clone());
            } else {
                self.lines.push(format!("{prefix}.{l}"));
            }
        }
        self
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.lines {
            writeln!(f, "{l}")?;
        }
        Ok(())
    }
}

fn strategy_text(s: &FinStrategy<u64>) -> String {
    syntax::print_fin_strategy(s)
}

fn spine_text(s: &SpineStrategy, positions: usize) -> String {
    match s {
        Spine::Periodic(p) => syntax::print_spine_strategy(p),
        Spine::Coalg(_) => {
            let head = s.observe(positions);
            let segs: Vec<String> = head.iter().map(syntax::print_concrete_segment).collect();
            format!("(unfolding {})", segs.join(" "))
        }
    }
}

pub fn fin_nash(v: &FinNashVerdict<u64>) -> Report {
    let mut r = Report::new();
    r.field("verdict", v.kind());
    match v {
        Verdict::Holds(c) => {
            r.block(
                "certificate",
                c.agents.iter().map(|a| match &a.best_response {
                    Some(b) => format!("{}: current {} best response {} over {} outcomes", a.agent, a.current, b, a.reachable_outcomes),
                    None => format!("{}: current {} compared with {} outcomes", a.agent, a.current, a.reachable_outcomes),
                }),
            );
        }
        Verdict::Refuted(FinNashWitness { agent, deviation, deviating, current }) => {
            r.field("agent", agent).field("current", current).field("deviating", deviating);
            r.block("witness", [strategy_text(deviation)]);
        }
        Verdict::Unknown { budget } => {
            r.field("budget", budget);
        }
    }
    r
}

pub fn evt_right(v: &EvtRightVerdict) -> Report {
    let mut r = Report::new();
    r.field("verdict", v.kind());
    match v {
        Verdict::Holds(k) => r.field("first_right", k),
        Verdict::Refuted(w) => r.field("all_left", format!("prefix {} period {}", w.prefix_len, w.period_len)),
        Verdict::Unknown { budget } => r.field("budget", budget),
    };
    r
}

pub fn inf_nash(v: &InfNashVerdict) -> Report {
    let mut r = Report::new();
    r.field("verdict", v.kind());
    match v {
        Verdict::Holds(c) => {
            r.field("first_right", c.first_right);
            for (a, u) in &c.utilities {
                r.field(&format!("utility.{a}"), u);
            }
            r.block("certificate", &c.obligations);
        }
        Verdict::Refuted(InfNashWitness::EvtRightFails(w)) => {
            r.field("reason", "EvtRight fails");
            r.block("witness", [format!("every spine choice is left (prefix {}, period {})", w.prefix_len, w.period_len)]);
        }
        Verdict::Refuted(InfNashWitness::Deviation(w)) => {
            r.field("reason", "profitable deviation")
                .field("agent", &w.agent)
                .field("exit_position", w.exit_position)
                .field("current", w.current)
                .field("deviating", w.deviating);
            r.block("witness", [spine_text(&w.deviation, w.exit_position + 1)]);
        }
        Verdict::Unknown { budget } => {
            r.field("budget", budget);
        }
    }
    r
}

pub fn sgpe(v: &SgpeVerdict) -> Report {
    let mut r = Report::new();
    r.field("verdict", v.kind());
    match v {
        Verdict::Holds(c) => {
            r.field("right_offset", c.right_in_period.right_offset);
            r.block("certificate", &c.obligations);
        }
        Verdict::Refuted(SgpeWitness::NotAlwaysEventuallyRight(w)) => {
            r.field("reason", "AlwEvtRight fails");
            r.block("witness", [format!("every spine choice from position {} on is left", w.from)]);
        }
        Verdict::Refuted(SgpeWitness::Inequality { obligation, position, index }) => {
            r.field("reason", "inequality fails").field("position", position).field("index", index);
            r.block("witness", [obligation]);
        }
        Verdict::Unknown { budget } => {
            r.field("budget", budget);
        }
    }
    r
}

pub fn evt_max_u(v: &EvtMaxUVerdict) -> Report {
    let mut r = Report::new();
    r.field("verdict", v.kind());
    match v {
        Verdict::Holds(c) => r.field("depth", c.depth),
        Verdict::Refuted(never) => match *never {},
        Verdict::Unknown { budget } => r.field("budget", budget),
    };
    r
}

pub fn theorem(t: &TheoremReport) -> Report {
    let mut r = Report::new();
    r.field("evt_max_u", t.evt_max_u.kind())
        .field("sgpe", t.sgpe.kind())
        .field("inf_nash", t.inf_nash.kind())
        .field("premises", if t.premises_hold() { "hold" } else { "not certified" })
        .field("violation", t.violation());
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nesting_prefixes_keys_only() {
        let mut inner = Report::new();
        inner.field("verdict", "Holds").block("certificate", ["a", "b"]);
        let mut outer = Report::new();
        outer.nest("agu", &inner);
        assert_eq!(outer.to_string(), "agu.verdict: Holds\nagu.certificate:\n  a\n  b\n");
    }
}
