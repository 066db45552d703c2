use super::*;
use crate::escalation::{agu, alice, bob};
use crate::fingame::{random_game_seeded, random_strategy};
use crate::infgame::random::{agent_set, random_periodic_game, random_periodic_strategy, SpineGenConfig};
use crate::model::UtilityAssignment;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const AGU0: &str = "(spine (start 0) (period (seg alice right (leaf (alice (affine 2 1)) (bob (affine 2 0)))) (seg bob right (leaf (alice (affine 2 1)) (bob (affine 2 2))))))";

#[test]
fn one_node_game() {
    let doc = parse("(agents alice bob) (fingame (node alice (leaf (alice 0) (bob 0)) (leaf (alice 1) (bob 0))))").unwrap();
    let Body::FinGame(g) = &doc.body else { panic!("{doc:?}") };
    assert_eq!(g.node_count(), 1);
    let leaf = |a, b| FinGame::leaf(UtilityAssignment::from_pairs([(alice(), a), (bob(), b)]));
    assert_eq!(*g, FinGame::node(alice(), leaf(0, 0), leaf(1, 0)));
}

#[test]
fn always_give_up_document() {
    let doc = parse(AGU0).unwrap();
    assert_eq!(doc.body, Body::SpineStrategy(agu(0).as_periodic().unwrap().clone()));
    let printed = print(&doc);
    assert_eq!(printed, format!("(agents alice bob)\n{AGU0}\n"));
    assert_eq!(print(&parse(&printed).unwrap()), printed);
}

#[test]
fn node_arity() {
    let e = parse("(node alice (leaf (alice 0)))").unwrap_err();
    assert_eq!(e.kind, ParseErrorKind::Arity { form: "node".into(), expected: "3".into(), found: 2 });
    assert_eq!(e.pos, Pos { line: 1, column: 1 });
}

#[test]
fn agents_are_printed_sorted() {
    let doc = parse("(agents zed amy) (leaf (zed 1) (amy 2))").unwrap();
    assert!(print(&doc).starts_with("(agents amy zed)\n(fingame (leaf (amy 2) (zed 1)))"));
}

#[test]
fn error_kinds() {
    let kind = |t: &str| parse(t).unwrap_err().kind;
    assert_eq!(kind("(agents a) (leaf (a 1) (b 2))"), ParseErrorKind::UndeclaredAgent("b".into()));
    assert_eq!(kind("(agents a b) (leaf (a 1))"), ParseErrorKind::MissingPayoff("b".into()));
    assert_eq!(kind("(leaf (a 1) (a 2))"), ParseErrorKind::DuplicatePayoff("a".into()));
    assert_eq!(kind("(agents a a) (leaf (a 1))"), ParseErrorKind::DuplicateAgent("a".into()));
    assert_eq!(kind("(spine (start 0) (period))"), ParseErrorKind::EmptyPeriod);
    assert!(matches!(kind("(spine (start 0) (period (seg a left (leaf (a (affine x 1))))))"), ParseErrorKind::MalformedAffine(_)));
    assert!(matches!(kind("(spine (start 0) (period (seg a left (leaf (a (affine 1))))))"), ParseErrorKind::MalformedAffine(_)));
    assert!(matches!(kind("(leaf (a (affine 1 1)))"), ParseErrorKind::MalformedAffine(_)));
    assert!(matches!(kind("(spine (start 0) (period (seg a left (leaf (a (affine 1 -3))))))"), ParseErrorKind::Invalid(_)));
    assert!(parse("(spine (start 3) (period (seg a left (leaf (a (affine 1 -3))))))").is_ok());
    assert!(matches!(kind("(snode a up (sleaf (a 1)) (sleaf (a 2)))"), ParseErrorKind::Unexpected(_)));
    assert_eq!(kind("(agents a)"), ParseErrorKind::UnexpectedEof);
    assert!(matches!(kind("(leaf (a 1)) (leaf (a 2))"), ParseErrorKind::Unexpected(_)));
    assert!(matches!(kind("(leaf (a 99999999999999999999999))"), ParseErrorKind::Number(_)));
}

#[test]
fn errors_carry_position_and_expectations() {
    let e = parse("(agents a b)\n(finstrat\n  (snode a sideways (sleaf (a 1) (b 1)) (sleaf (a 1) (b 1))))").unwrap_err();
    assert_eq!(e.pos, Pos { line: 3, column: 12 });
    assert_eq!(e.expected, vec!["left".to_string(), "right".to_string()]);
    assert_eq!(e.to_string(), "3:12: unexpected `sideways`; expected one of: left, right");
    let e = parse_bytes(b"(leaf (a \xff))").unwrap_err();
    assert_eq!((e.kind, e.pos), (ParseErrorKind::InvalidUtf8, Pos { line: 1, column: 10 }));
}

#[test]
fn comments_and_inferred_agents() {
    let doc = parse("; a strategy\n(sleaf (b 1) (a 2)) ; trailing").unwrap();
    assert_eq!(doc.agents.len(), 2);
    assert!(matches!(doc.body, Body::FinStrategy(_)));
}

#[test]
fn random_documents_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let set = agent_set(3);
    for seed in 0..100 {
        let docs = [
            GameDoc { agents: set.clone(), body: Body::FinGame(random_game_seeded(&set, 5, 0..=9, seed)) },
            GameDoc { agents: set.clone(), body: Body::FinStrategy(random_strategy(&set, 5, 0..=9, &mut rng)) },
        ];
        for doc in docs {
            assert_eq!(parse(&print(&doc)).unwrap(), doc);
        }
        let cfg = SpineGenConfig { agents: 3..=3, ..SpineGenConfig::default() };
        let s = random_periodic_strategy(&cfg, &mut rng);
        let doc = GameDoc { agents: set.clone(), body: Body::SpineStrategy(s.as_periodic().unwrap().clone()) };
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
        let g = random_periodic_game(&cfg, &mut rng);
        let doc = GameDoc { agents: set.clone(), body: Body::SpineGame(g.as_periodic().unwrap().clone()) };
        assert_eq!(parse(&print(&doc)).unwrap(), doc);
    }
}

proptest! {
    #[test]
    fn arbitrary_text_never_panics(s in "\\PC{0,200}") {
        let _ = parse(&s);
    }

    #[test]
    fn arbitrary_bytes_never_panic(b in proptest::collection::vec(any::<u8>(), 0..200)) {
        let _ = parse_bytes(&b);
    }

    #[test]
    fn token_soup_never_panics(tokens in proptest::collection::vec(
        prop::sample::select(vec!["(", ")", "agents", "leaf", "node", "sleaf", "snode", "spine", "seg", "start",
            "period", "prefix", "affine", "left", "right", "a", "b", "0", "7", "-2", " "]), 0..60)) {
        let _ = parse(&tokens.join(" "));
    }
}
