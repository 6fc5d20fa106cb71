//! Shared fixtures: a small automaton corpus and brute-force set operations
//! over explicit word enumerations.
#![allow(dead_code)]

use num_rational::BigRational;
use pqn::automata::{BoolOp, Direction};
use pqn::builtins;
use pqn::numeration::{Base, QkNumber, TupleWord};
use pqn::MultiTapeAutomaton;

pub fn b32() -> Base {
    Base::new(3, 2).unwrap()
}

pub fn val(s: &str) -> QkNumber {
    QkNumber::parse(s, b32()).unwrap()
}

/// The six automata used for the set-algebra checks.
pub fn corpus() -> Vec<(&'static str, MultiTapeAutomaton)> {
    let b = b32();
    let half = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    vec![
        ("equality", builtins::build_equality(b, 2).unwrap()),
        ("addition-projected", builtins::build_addition(b).unwrap().project(0).unwrap()),
        ("le_len", builtins::build_le_len(b).unwrap()),
        ("modulo-5", builtins::build_modulo(b, 5, &[0]).unwrap()),
        ("constant-2", builtins::build_constant(b, &val("2")).unwrap()),
        ("interval-0-1", builtins::build_interval(b, &half(0, 1), &half(1, 1)).unwrap()),
    ]
}

/// Every `d`-tape word of length exactly `len`.
pub fn words_of_len(base: Base, d: usize, len: usize) -> Vec<TupleWord> {
    let p = base.p();
    let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * (p as usize).pow(d as u32));
        for cols in &out {
            for letter in 0..(p as usize).pow(d as u32) {
                let mut col = Vec::with_capacity(d);
                let mut l = letter;
                for _ in 0..d {
                    col.push((l % p as usize) as u32);
                    l /= p as usize;
                }
                let mut c = cols.clone();
                c.push(col);
                next.push(c);
            }
        }
        out = next;
    }
    out.iter().map(|cols| TupleWord::from_columns(base, d, cols).unwrap()).collect()
}

pub fn words_up_to(base: Base, d: usize, max_len: usize) -> Vec<TupleWord> {
    (0..=max_len).flat_map(|l| words_of_len(base, d, l)).collect()
}

pub fn accepts(a: &MultiTapeAutomaton, w: &TupleWord) -> bool {
    a.accepts(w).unwrap()
}

/// First word where `got` and the predicate disagree.
pub fn first_disagreement(
    got: &MultiTapeAutomaton,
    words: &[TupleWord],
    expected: impl Fn(&TupleWord) -> bool,
) -> Option<TupleWord> {
    words.iter().find(|w| accepts(got, w) != expected(w)).cloned()
}

/// `w` with the word `u` inserted as tape `t`, both left-padded to a common length.
pub fn insert_tape(w: &TupleWord, t: usize, u: &[u32]) -> TupleWord {
    let len = w.len().max(u.len());
    let mut tapes: Vec<Vec<u32>> = w.tapes().iter().map(|r| pad(r, len)).collect();
    tapes.insert(t, pad(u, len));
    TupleWord::from_tapes(w.base(), tapes).unwrap()
}

fn pad(r: &[u32], len: usize) -> Vec<u32> {
    let mut v = vec![0; len - r.len()];
    v.extend_from_slice(r);
    v
}

/// Checks product, complement, projection and padding closure against
/// brute force; returns a description of every failure.
pub fn set_algebra_failures(max_len: usize, proj_len: usize) -> Vec<String> {
    let b = b32();
    let corpus = corpus();
    let mut failures = Vec::new();
    // the corpus has at most two tapes; three-tape words of length 6 would not fit in memory
    let words: Vec<Vec<TupleWord>> = (1..=2).map(|d| words_up_to(b, d, max_len)).collect();
    let ws = |a: &MultiTapeAutomaton| &words[a.tapes() - 1];

    for (name, a) in &corpus {
        let c = a.complement();
        if let Some(w) = first_disagreement(&c, ws(a), |w| !accepts(a, w)) {
            failures.push(format!("complement of {name} at {w}"));
        }
        let pc = a.pad_close().unwrap();
        if let Some(w) = first_disagreement(&pc, ws(a), |w| accepts(a, w)) {
            failures.push(format!("pad_close of padded {name} at {w}"));
        }
    }
    for (i, (na, a)) in corpus.iter().enumerate() {
        for (nb, b2) in corpus.iter().skip(i + 1) {
            if a.tapes() != b2.tapes() {
                continue;
            }
            for op in [BoolOp::And, BoolOp::Or] {
                let got = a.product(b2, op).unwrap();
                let expect = |w: &TupleWord| match op {
                    BoolOp::And => accepts(a, w) && accepts(b2, w),
                    BoolOp::Or => accepts(a, w) || accepts(b2, w),
                };
                if let Some(w) = first_disagreement(&got, ws(a), expect) {
                    failures.push(format!("{op:?} of {na} and {nb} at {w}"));
                }
            }
        }
    }
    // projections of short words, witnesses searched two digits further
    let add = builtins::build_addition(b).unwrap();
    let mut projected: Vec<(String, MultiTapeAutomaton)> =
        corpus.iter().filter(|(_, a)| a.tapes() >= 2).map(|(n, a)| (n.to_string(), a.clone())).collect();
    projected.push(("addition".into(), add));
    for (name, a) in &projected {
        let witnesses = words_up_to(b, 1, proj_len + 2);
        for t in 0..a.tapes() {
            let got = a.project(t).unwrap();
            let short = words_up_to(b, a.tapes() - 1, proj_len);
            let expect = |w: &TupleWord| witnesses.iter().any(|u| accepts(a, &insert_tape(w, t, &u.tapes()[0])));
            if let Some(w) = first_disagreement(&got, &short, expect) {
                failures.push(format!("projection of {name} on tape {t} at {w}"));
            }
        }
    }
    // padding closure of automata that are not closed
    for (name, a) in unpadded() {
        let got = a.pad_close().unwrap();
        if !got.check_padded() {
            failures.push(format!("pad_close of {name} is not padded"));
        }
        let expect = |w: &TupleWord| {
            let s = w.strip();
            (0..=8).any(|n| accepts(&a, &s.pad(n)))
        };
        let ws = words_up_to(b, a.tapes(), max_len);
        if let Some(w) = first_disagreement(&got, &ws, expect) {
            failures.push(format!("pad_close of {name} at {w}"));
        }
    }
    failures
}

/// Automata whose languages are not closed under leading zero columns.
pub fn unpadded() -> Vec<(&'static str, MultiTapeAutomaton)> {
    let b = b32();
    // exactly "21", no zero loop
    let mut chain = MultiTapeAutomaton::new(b, 1, Direction::RightToLeft, 3).unwrap();
    chain.set_transition(0, &[1], 1).unwrap();
    chain.set_transition(1, &[2], 2).unwrap();
    chain.set_final(2, true).unwrap();
    // words of even length, read left to right
    let mut even = MultiTapeAutomaton::new(b, 1, Direction::LeftToRight, 2).unwrap();
    for d in 0..3 {
        even.set_transition(0, &[d], 1).unwrap();
        even.set_transition(1, &[d], 0).unwrap();
    }
    even.set_final(0, true).unwrap();
    // pairs whose first tape is exactly one digit longer than the word read
    let mut pairs = MultiTapeAutomaton::new(b, 2, Direction::LeftToRight, 3).unwrap();
    pairs.set_transition(0, &[1, 0], 1).unwrap();
    pairs.set_transition(1, &[0, 2], 2).unwrap();
    pairs.set_transition(2, &[2, 2], 2).unwrap();
    pairs.set_final(2, true).unwrap();
    vec![("chain-21", chain), ("even-length", even), ("pairs", pairs)]
}
