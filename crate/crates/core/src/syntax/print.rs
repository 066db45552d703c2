use std::fmt::{Display, Write};

use super::{Body, GameDoc};
use crate::affine::AffExpr;
use crate::fingame::{FinGame, FinStrategy};
use crate::infgame::{GameSegment, PeriodicGame, PeriodicStrategy, StrategySegment};
use crate::model::UtilityAssignment;

trait Payoff {
    fn write(&self, out: &mut String);
}

impl Payoff for u64 {
    fn write(&self, out: &mut String) {
        write!(out, "{self}").expect("writing to a string");
    }
}

impl Payoff for AffExpr {
    fn write(&self, out: &mut String) {
        if self.is_constant() && self.intercept >= 0 {
            write!(out, "{}", self.intercept)
        } else {
            write!(out, "(affine {} {})", self.slope, self.intercept)
        }
        .expect("writing to a string");
    }
}

fn leaf<U: Payoff>(keyword: &str, ua: &UtilityAssignment<U>, out: &mut String) {
    out.push('(');
    out.push_str(keyword);
    for (a, u) in ua.iter() {
        write!(out, " ({a} ").expect("writing to a string");
        u.write(out);
        out.push(')');
    }
    out.push(')');
}

fn game<U: Payoff>(g: &FinGame<U>, out: &mut String) {
    match g {
        FinGame::Leaf(ua) => leaf("leaf", ua, out),
        FinGame::Node { agent, left, right } => {
            write!(out, "(node {agent} ").expect("writing to a string");
            game(left, out);
            out.push(' ');
            game(right, out);
            out.push(')');
        }
    }
}

fn strategy<U: Payoff>(s: &FinStrategy<U>, leaf_keyword: &str, out: &mut String) {
    match s {
        FinStrategy::Leaf(ua) => leaf(leaf_keyword, ua, out),
        FinStrategy::Node { agent, choice, left, right } => {
            write!(out, "(snode {agent} {choice} ").expect("writing to a string");
            strategy(left, leaf_keyword, out);
            out.push(' ');
            strategy(right, leaf_keyword, out);
            out.push(')');
        }
    }
}

fn seg(s: &StrategySegment<impl Payoff>, out: &mut String) {
    write!(out, "(seg {} {} ", s.agent, s.choice).expect("writing to a string");
    strategy(&s.right, "leaf", out);
    out.push(')');
}

fn gseg(s: &GameSegment<AffExpr>, out: &mut String) {
    write!(out, "(gseg {} ", s.agent).expect("writing to a string");
    game(&s.right, out);
    out.push(')');
}

fn spine<T>(keyword: &str, start: u64, prefix: &[T], period: &[T], each: fn(&T, &mut String), out: &mut String) {
    write!(out, "({keyword} (start {start})").expect("writing to a string");
    for (name, segs) in [("prefix", prefix), ("period", period)] {
        if segs.is_empty() {
            continue;
        }
        write!(out, " ({name}").expect("writing to a string");
        for s in segs {
            out.push(' ');
            each(s, out);
        }
        out.push(')');
    }
    out.push(')');
}

pub fn print_fin_game(g: &FinGame<u64>) -> String {
    let mut out = String::new();
    game(g, &mut out);
    out
}

pub fn print_fin_strategy(s: &FinStrategy<u64>) -> String {
    let mut out = String::new();
    strategy(s, "sleaf", &mut out);
    out
}

pub fn print_spine_strategy(p: &PeriodicStrategy) -> String {
    let mut out = String::new();
    spine("spine", p.start(), p.prefix(), p.period(), seg, &mut out);
    out
}

pub fn print_spine_game(p: &PeriodicGame) -> String {
    let mut out = String::new();
    spine("spinegame", p.start(), p.prefix(), p.period(), gseg, &mut out);
    out
}

/// One evaluated spine position, in segment syntax.
pub fn print_concrete_segment(s: &StrategySegment<u64>) -> String {
    let mut out = String::new();
    seg(s, &mut out);
    out
}

fn join<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

/// Canonical text: agents sorted by name, then the body on one line.
pub fn print(doc: &GameDoc) -> String {
    let body = match &doc.body {
        Body::FinGame(g) => format!("(fingame {})", print_fin_game(g)),
        Body::FinStrategy(s) => format!("(finstrat {})", print_fin_strategy(s)),
        Body::SpineStrategy(p) => print_spine_strategy(p),
        Body::SpineGame(p) => print_spine_game(p),
    };
    format!("(agents {})\n{body}\n", join(doc.agents.iter().map(|a| a.name())))
}
