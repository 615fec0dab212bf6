#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use taulattice::dsl::predicate::{Predicate, Rel, Term};
use taulattice::dsl::Scenario;
use taulattice::trace::Trace;

pub fn scenario_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../scenarios")
        .join(name)
}

pub fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures/golden")
        .join(name)
}

pub fn load(name: &str) -> Scenario {
    let text = std::fs::read_to_string(scenario_path(name)).unwrap();
    Scenario::parse(&text).unwrap()
}

pub fn run(name: &str, steps: usize) -> (Scenario, Trace) {
    let s = load(name);
    let t = s.run(steps);
    (s, t)
}

pub fn arb_term(kinds: usize) -> impl Strategy<Value = Term> {
    prop_oneof![
        (1..=kinds).prop_map(Term::Own),
        (1..=kinds).prop_map(Term::Opp),
        Just(Term::OwnTotal),
        Just(Term::OppTotal),
        (0u64..=3).prop_map(Term::Lit),
    ]
}

pub fn arb_rel() -> impl Strategy<Value = Rel> {
    prop_oneof![
        Just(Rel::Eq),
        Just(Rel::Ne),
        Just(Rel::Lt),
        Just(Rel::Le),
        Just(Rel::Gt),
        Just(Rel::Ge),
    ]
}

/// Predicates of depth at most 3 over colours `1..=kinds`.
pub fn arb_predicate(kinds: usize) -> impl Strategy<Value = Predicate> {
    let leaf =
        (arb_term(kinds), arb_rel(), arb_term(kinds)).prop_map(|(a, r, b)| Predicate::Cmp(a, r, b));
    leaf.prop_recursive(2, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|p| Predicate::Not(Box::new(p))),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Predicate::And),
            prop::collection::vec(inner, 2..=3).prop_map(Predicate::Or),
        ]
    })
}
