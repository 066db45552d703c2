use std::collections::BTreeSet;

use super::sexp::{end_pos, read_all, Pos, Sexp};
use super::{Body, GameDoc, ParseError, ParseErrorKind};
use crate::affine::AffExpr;
use crate::fingame::FinStrategy;
use crate::infgame::{GameSegment, Periodic, SpineError, StrategySegment, Template};
use crate::model::{AgentId, AgentSet, Choice, UtilityAssignment};

const GAME_FORMS: &[&str] = &["leaf", "node"];
const STRAT_FORMS: &[&str] = &["sleaf", "snode", "leaf"];
const BODY_FORMS: &[&str] = &["fingame", "finstrat", "spine", "spinegame", "node", "leaf", "snode", "sleaf"];

#[derive(Debug, Clone, Copy)]
enum Value {
    Nat(u64),
    Affine(AffExpr),
}

struct RawPayoff {
    name: String,
    pos: Pos,
    value: Value,
}

enum Raw {
    Leaf { pos: Pos, payoffs: Vec<RawPayoff> },
    Node { owner: String, owner_pos: Pos, choice: Choice, left: Box<Raw>, right: Box<Raw> },
}

struct RawSeg {
    pos: Pos,
    owner: String,
    owner_pos: Pos,
    choice: Choice,
    tree: Raw,
}

struct RawSpine {
    start: u64,
    prefix: Vec<RawSeg>,
    period: Vec<RawSeg>,
}

enum RawBody {
    Game(Raw),
    Strat(Raw),
    Spine(RawSpine),
    SpineGame(RawSpine),
}

fn err(pos: Pos, kind: ParseErrorKind) -> ParseError {
    ParseError::new(pos, kind)
}

fn describe(s: &Sexp) -> String {
    match s {
        Sexp::Atom { text, .. } => format!("`{text}`"),
        Sexp::List { items, .. } if items.is_empty() => "`()`".into(),
        Sexp::List { .. } => "list".into(),
    }
}

/// The items of a list form whose head is one of `heads`.
fn form<'a>(s: &'a Sexp, heads: &[&str]) -> Result<(&'a str, &'a [Sexp], Pos), ParseError> {
    let expected: Vec<String> = heads.iter().map(|h| format!("({h}")).collect();
    let expected: Vec<&str> = expected.iter().map(String::as_str).collect();
    let Sexp::List { items, pos } = s else {
        return Err(err(s.pos(), ParseErrorKind::Unexpected(describe(s))).expecting(&expected));
    };
    match items.first() {
        Some(Sexp::Atom { text, .. }) if heads.contains(&text.as_str()) => Ok((text.as_str(), &items[1..], *pos)),
        Some(head) => Err(err(head.pos(), ParseErrorKind::Unexpected(describe(head))).expecting(heads)),
        None => Err(err(*pos, ParseErrorKind::Unexpected("`()`".into())).expecting(heads)),
    }
}

fn arity(form: &str, args: &[Sexp], pos: Pos, expected: usize) -> Result<(), ParseError> {
    if args.len() != expected {
        return Err(err(pos, ParseErrorKind::Arity { form: form.into(), expected: expected.to_string(), found: args.len() }));
    }
    Ok(())
}

fn at_least(form: &str, args: &[Sexp], pos: Pos, min: usize) -> Result<(), ParseError> {
    if args.len() < min {
        return Err(err(pos, ParseErrorKind::Arity { form: form.into(), expected: format!("{min} or more"), found: args.len() }));
    }
    Ok(())
}

fn atom<'a>(s: &'a Sexp, what: &str) -> Result<(&'a str, Pos), ParseError> {
    match s {
        Sexp::Atom { text, pos } => Ok((text, *pos)),
        Sexp::List { pos, .. } => Err(err(*pos, ParseErrorKind::Unexpected(describe(s))).expecting(&[what])),
    }
}

fn name(s: &Sexp) -> Result<(String, Pos), ParseError> {
    let (text, pos) = atom(s, "agent name")?;
    let first = text.chars().next().expect("atoms are nonempty");
    if !(first.is_alphabetic() || first == '_') {
        return Err(err(pos, ParseErrorKind::Unexpected(describe(s))).expecting(&["agent name"]));
    }
    Ok((text.to_string(), pos))
}

fn nat(s: &Sexp) -> Result<u64, ParseError> {
    let (text, pos) = atom(s, "natural number")?;
    if !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(pos, ParseErrorKind::Number(text.into())).expecting(&["natural number"]));
    }
    text.parse().map_err(|_| err(pos, ParseErrorKind::Number(text.into())))
}

fn int(s: &Sexp) -> Result<i64, ParseError> {
    let (text, pos) = atom(s, "integer")?;
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(pos, ParseErrorKind::MalformedAffine(format!("`{text}` is not an integer"))).expecting(&["integer"]));
    }
    text.parse().map_err(|_| err(pos, ParseErrorKind::MalformedAffine(format!("`{text}` is out of range"))))
}

fn choice(s: &Sexp) -> Result<Choice, ParseError> {
    match atom(s, "choice")? {
        ("left", _) => Ok(Choice::Left),
        ("right", _) => Ok(Choice::Right),
        (_, pos) => Err(err(pos, ParseErrorKind::Unexpected(describe(s))).expecting(&["left", "right"])),
    }
}

fn in_range(e: AffExpr, pos: Pos) -> Result<AffExpr, ParseError> {
    e.validate_range().map_err(|source| err(pos, ParseErrorKind::MalformedAffine(source.to_string())))?;
    Ok(e)
}

fn payoff(s: &Sexp, affine: bool) -> Result<RawPayoff, ParseError> {
    let Sexp::List { items, pos } = s else {
        return Err(err(s.pos(), ParseErrorKind::Unexpected(describe(s))).expecting(&["(agent value)"]));
    };
    if items.len() != 2 {
        return Err(err(*pos, ParseErrorKind::Arity { form: "payoff".into(), expected: "2".into(), found: items.len() }));
    }
    let (name, _) = name(&items[0])?;
    let value = match &items[1] {
        v @ Sexp::Atom { pos: vpos, .. } => {
            let n = nat(v)?;
            if affine {
                let c = i64::try_from(n).map_err(|_| err(*vpos, ParseErrorKind::MalformedAffine("constant out of range".into())))?;
                Value::Affine(in_range(AffExpr::constant(c), *vpos)?)
            } else {
                Value::Nat(n)
            }
        }
        v @ Sexp::List { .. } => {
            let (_, args, apos) = form(v, &["affine"])?;
            if !affine {
                return Err(err(apos, ParseErrorKind::MalformedAffine("affine payoffs are only allowed in spine segments".into())));
            }
            if args.len() != 2 {
                return Err(err(apos, ParseErrorKind::MalformedAffine(format!("expected slope and intercept, found {} values", args.len()))));
            }
            Value::Affine(in_range(AffExpr::new(int(&args[0])?, int(&args[1])?), apos)?)
        }
    };
    Ok(RawPayoff { name, pos: *pos, value })
}

fn tree(s: &Sexp, strat: bool, affine: bool) -> Result<Raw, ParseError> {
    let (head, args, pos) = form(s, if strat { STRAT_FORMS } else { GAME_FORMS })?;
    match head {
        "leaf" | "sleaf" => {
            at_least(head, args, pos, 1)?;
            let payoffs = args.iter().map(|p| payoff(p, affine)).collect::<Result<_, _>>()?;
            Ok(Raw::Leaf { pos, payoffs })
        }
        "node" => {
            arity(head, args, pos, 3)?;
            let (owner, owner_pos) = name(&args[0])?;
            let left = tree(&args[1], false, affine)?;
            let right = tree(&args[2], false, affine)?;
            Ok(Raw::Node { owner, owner_pos, choice: Choice::Left, left: Box::new(left), right: Box::new(right) })
        }
        _ => {
            arity(head, args, pos, 4)?;
            let (owner, owner_pos) = name(&args[0])?;
            let choice = choice(&args[1])?;
            let left = tree(&args[2], true, affine)?;
            let right = tree(&args[3], true, affine)?;
            Ok(Raw::Node { owner, owner_pos, choice, left: Box::new(left), right: Box::new(right) })
        }
    }
}

fn segment(s: &Sexp, strat: bool) -> Result<RawSeg, ParseError> {
    if strat {
        let (head, args, pos) = form(s, &["seg"])?;
        arity(head, args, pos, 3)?;
        let (owner, owner_pos) = name(&args[0])?;
        let choice = choice(&args[1])?;
        Ok(RawSeg { pos, owner, owner_pos, choice, tree: tree(&args[2], true, true)? })
    } else {
        let (head, args, pos) = form(s, &["gseg"])?;
        arity(head, args, pos, 2)?;
        let (owner, owner_pos) = name(&args[0])?;
        Ok(RawSeg { pos, owner, owner_pos, choice: Choice::Left, tree: tree(&args[1], false, true)? })
    }
}

fn spine(head: &str, args: &[Sexp], pos: Pos, strat: bool) -> Result<RawSpine, ParseError> {
    if !(2..=3).contains(&args.len()) {
        return Err(err(pos, ParseErrorKind::Arity { form: head.into(), expected: "2 or 3".into(), found: args.len() }));
    }
    let (h, a, p) = form(&args[0], &["start"])?;
    arity(h, a, p, 1)?;
    let start = nat(&a[0])?;
    if start > AffExpr::MAX_INDEX {
        return Err(err(a[0].pos(), ParseErrorKind::Invalid(format!("start index {start} is out of range"))));
    }
    let mut prefix = Vec::new();
    let mut rest = &args[1..];
    if rest.len() == 2 {
        let (_, a, _) = form(&rest[0], &["prefix"])?;
        prefix = a.iter().map(|s| segment(s, strat)).collect::<Result<_, _>>()?;
        rest = &rest[1..];
    }
    let heads: &[&str] = if args.len() == 2 { &["prefix", "period"] } else { &["period"] };
    let (h, a, p) = form(&rest[0], heads)?;
    if h == "prefix" {
        return Err(err(p, ParseErrorKind::Arity { form: head.into(), expected: "a period".into(), found: 0 }).expecting(&["(period"]));
    }
    if a.is_empty() {
        return Err(err(p, ParseErrorKind::EmptyPeriod));
    }
    let period = a.iter().map(|s| segment(s, strat)).collect::<Result<_, _>>()?;
    Ok(RawSpine { start, prefix, period })
}

fn body(s: &Sexp) -> Result<RawBody, ParseError> {
    let (head, args, pos) = form(s, BODY_FORMS)?;
    match head {
        "fingame" => {
            arity(head, args, pos, 1)?;
            Ok(RawBody::Game(tree(&args[0], false, false)?))
        }
        "finstrat" => {
            arity(head, args, pos, 1)?;
            Ok(RawBody::Strat(tree(&args[0], true, false)?))
        }
        "spine" => Ok(RawBody::Spine(spine(head, args, pos, true)?)),
        "spinegame" => Ok(RawBody::SpineGame(spine(head, args, pos, false)?)),
        "node" | "leaf" => Ok(RawBody::Game(tree(s, false, false)?)),
        _ => Ok(RawBody::Strat(tree(s, true, false)?)),
    }
}

fn declaration(args: &[Sexp], pos: Pos) -> Result<AgentSet, ParseError> {
    at_least("agents", args, pos, 1)?;
    let mut seen = BTreeSet::new();
    for a in args {
        let (n, npos) = name(a)?;
        if !seen.insert(n.clone()) {
            return Err(err(npos, ParseErrorKind::DuplicateAgent(n)));
        }
    }
    Ok(AgentSet::new(seen).expect("nonempty and distinct"))
}

fn collect_names<'a>(raw: &'a Raw, out: &mut Vec<(&'a str, Pos)>) {
    match raw {
        Raw::Leaf { payoffs, .. } => out.extend(payoffs.iter().map(|p| (p.name.as_str(), p.pos))),
        Raw::Node { owner, owner_pos, left, right, .. } => {
            out.push((owner, *owner_pos));
            collect_names(left, out);
            collect_names(right, out);
        }
    }
}

fn resolve(set: &AgentSet, name: &str, pos: Pos) -> Result<AgentId, ParseError> {
    set.by_name(name).cloned().map_err(|_| err(pos, ParseErrorKind::UndeclaredAgent(name.into())))
}

fn build<V>(raw: &Raw, set: &AgentSet, value: &impl Fn(Value) -> V) -> Result<FinStrategy<V>, ParseError> {
    match raw {
        Raw::Leaf { pos, payoffs } => {
            let mut pairs = Vec::with_capacity(payoffs.len());
            let mut seen = BTreeSet::new();
            for p in payoffs {
                let agent = resolve(set, &p.name, p.pos)?;
                if !seen.insert(agent.clone()) {
                    return Err(err(p.pos, ParseErrorKind::DuplicatePayoff(p.name.clone())));
                }
                pairs.push((agent, value(p.value)));
            }
            if let Some(missing) = set.iter().find(|a| !seen.contains(*a)) {
                return Err(err(*pos, ParseErrorKind::MissingPayoff(missing.name().into())));
            }
            Ok(FinStrategy::leaf(UtilityAssignment::from_pairs(pairs)))
        }
        Raw::Node { owner, owner_pos, choice, left, right } => {
            let agent = resolve(set, owner, *owner_pos)?;
            Ok(FinStrategy::node(agent, *choice, build(left, set, value)?, build(right, set, value)?))
        }
    }
}

fn nat_value(v: Value) -> u64 {
    match v {
        Value::Nat(n) => n,
        Value::Affine(_) => unreachable!("affine literals are rejected outside spines"),
    }
}

fn affine_value(v: Value) -> AffExpr {
    match v {
        Value::Affine(e) => e,
        Value::Nat(_) => unreachable!("spine payoffs are read as affine"),
    }
}

fn spine_error(e: SpineError, raw: &RawSpine) -> ParseError {
    let (pos, what) = match &e {
        SpineError::Prefix { position, .. } => (raw.prefix[*position].pos, "prefix"),
        SpineError::Period { offset, .. } => (raw.period[*offset].pos, "period"),
        SpineError::EmptyPeriod => unreachable!("checked while reading"),
    };
    let msg = match e {
        SpineError::Prefix { source, .. } | SpineError::Period { source, .. } => format!("{what} segment: {source}"),
        SpineError::EmptyPeriod => unreachable!(),
    };
    err(pos, ParseErrorKind::Invalid(msg))
}

fn strategy_segments(raw: &[RawSeg], set: &AgentSet) -> Result<Vec<StrategySegment<AffExpr>>, ParseError> {
    raw.iter()
        .map(|s| {
            Ok(StrategySegment {
                agent: resolve(set, &s.owner, s.owner_pos)?,
                choice: s.choice,
                right: build(&s.tree, set, &affine_value)?,
            })
        })
        .collect()
}

fn game_segments(raw: &[RawSeg], set: &AgentSet) -> Result<Vec<GameSegment<AffExpr>>, ParseError> {
    Ok(strategy_segments(raw, set)?.iter().map(StrategySegment::erase).collect())
}

fn periodic<T: Template>(raw: &RawSpine, prefix: Vec<T>, period: Vec<T>) -> Result<Periodic<T>, ParseError> {
    Periodic::new(raw.start, prefix, period).map_err(|e| spine_error(e, raw))
}

/// Parses a document.
pub fn parse(text: &str) -> Result<GameDoc, ParseError> {
    let forms = read_all(text)?;
    let mut forms = forms.iter();
    let mut first = forms.next();
    let mut declared = None;
    if let Some(s @ Sexp::List { items, .. }) = first {
        if matches!(items.first(), Some(Sexp::Atom { text, .. }) if text == "agents") {
            let (_, args, pos) = form(s, &["agents"])?;
            declared = Some(declaration(args, pos)?);
            first = forms.next();
        }
    }
    let Some(main) = first else {
        let mut expected: Vec<String> = BODY_FORMS.iter().map(|h| format!("({h}")).collect();
        if declared.is_none() {
            expected.insert(0, "(agents".into());
        }
        return Err(ParseError { pos: end_pos(text), kind: ParseErrorKind::UnexpectedEof, expected });
    };
    let raw = body(main)?;
    if let Some(extra) = forms.next() {
        return Err(err(extra.pos(), ParseErrorKind::Unexpected(describe(extra))).expecting(&["end of input"]));
    }

    let mut names = Vec::new();
    match &raw {
        RawBody::Game(t) | RawBody::Strat(t) => collect_names(t, &mut names),
        RawBody::Spine(sp) | RawBody::SpineGame(sp) => {
            for s in sp.prefix.iter().chain(&sp.period) {
                names.push((s.owner.as_str(), s.owner_pos));
                collect_names(&s.tree, &mut names);
            }
        }
    }
    let agents = match declared {
        Some(set) => set,
        None => AgentSet::new(names.iter().map(|(n, _)| *n).collect::<BTreeSet<_>>()).expect("every document names an agent"),
    };

    let body = match raw {
        RawBody::Game(t) => Body::FinGame(build(&t, &agents, &nat_value)?.erase()),
        RawBody::Strat(t) => Body::FinStrategy(build(&t, &agents, &nat_value)?),
        RawBody::Spine(sp) => {
            let prefix = strategy_segments(&sp.prefix, &agents)?;
            let period = strategy_segments(&sp.period, &agents)?;
            Body::SpineStrategy(periodic(&sp, prefix, period)?)
        }
        RawBody::SpineGame(sp) => {
            let prefix = game_segments(&sp.prefix, &agents)?;
            let period = game_segments(&sp.period, &agents)?;
            Body::SpineGame(periodic(&sp, prefix, period)?)
        }
    };
    Ok(GameDoc { agents, body })
}

/// Parses raw bytes; invalid UTF-8 is reported at the first bad byte.
pub fn parse_bytes(bytes: &[u8]) -> Result<GameDoc, ParseError> {
    match std::str::from_utf8(bytes) {
        Ok(text) => parse(text),
        Err(e) => {
            let valid = std::str::from_utf8(&bytes[..e.valid_up_to()]).expect("valid prefix");
            Err(err(end_pos(valid), ParseErrorKind::InvalidUtf8))
        }
    }
}
