mod common;

use common::*;
use pqn::builtins;
use pqn::logic::{self, *};
use pqn::numeration::{self, QkNumber, Word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// First assignment over the bounded domain where the compiled automaton and
/// the direct evaluation disagree.
fn disagreement(f: &Formula, vars: &[&str], bound: usize) -> Option<Vec<QkNumber>> {
    let b = b32();
    let aut = compile(f, vars, b).unwrap();
    let ev = Evaluator::new(b, bound);
    let dom: Vec<QkNumber> = ev.domain().cloned().collect();
    let mut idx = vec![0usize; vars.len()];
    loop {
        let vals: Vec<QkNumber> = idx.iter().map(|&i| dom[i].clone()).collect();
        let asg: Vec<(&str, QkNumber)> = vars.iter().copied().zip(vals.iter().cloned()).collect();
        if aut.accepts_value(&vals).unwrap() != ev.eval(f, &asg).unwrap() {
            return Some(vals);
        }
        let mut i = 0;
        loop {
            if i == vars.len() {
                return None;
            }
            idx[i] += 1;
            if idx[i] < dom.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[test]
fn macros_compile_like_they_evaluate() {
    let cases: &[(&str, &[&str])] = &[
        ("zero(x)", &["x"]),
        ("one(x)", &["x"]),
        ("beta(x)", &["x"]),
        ("W(x, y)", &["x", "y"]),
        ("ltlen(x, y)", &["x", "y"]),
        ("star(a, y, z)", &["a", "y", "z"]),
        ("digit(x, y, a)", &["x", "y", "a"]),
        ("phi(1, 2, x)", &["x"]),
        ("phi(3, 4, x)", &["x"]),
        ("phi(1, 4, x)", &["x"]),
        ("mod(x, 5, 2)", &["x"]),
    ];
    for (text, vars) in cases {
        let f = parse(text).unwrap();
        assert_eq!(disagreement(&f, vars, 3), None, "{text}");
    }
    let m = modulo_relation(5, "x", "y");
    assert_eq!(disagreement(&m, &["x", "y"], 3), None);
}

#[test]
fn phi_constants() {
    let b = b32();
    let members = |text: &str| {
        let a = compile(&parse(text).unwrap(), &["x"], b).unwrap();
        words_up_to(b, 1, 6)
            .into_iter()
            .filter(|w| accepts(&a, w))
            .map(|w| w.tape(0).value())
            .collect::<std::collections::BTreeSet<_>>()
    };
    assert_eq!(members("phi(1, 2, x)").into_iter().collect::<Vec<_>>(), [val("1/2")]);
    assert_eq!(members("phi(3, 4, x)").into_iter().collect::<Vec<_>>(), [val("3/4")]);
    assert!(compile(&parse("phi(1, 4, x)").unwrap(), &["x"], b).unwrap().is_empty());
}

#[test]
fn digit_reads_the_representation() {
    // digit(x, y, a): y = val(1 0^i) and the digit of x at position i is a
    let b = b32();
    let a = compile(&parse("digit(x, y, a)").unwrap(), &["x", "y", "a"], b).unwrap();
    for w in words_up_to(b, 1, 5) {
        let x = w.tape(0).value();
        let rep = numeration::represent(&x, b).unwrap();
        let digits: Vec<u32> = rep.digits().iter().rev().copied().collect();
        for i in 0..6usize {
            let mut one = vec![1u32];
            one.extend(std::iter::repeat_n(0, i));
            let y = numeration::evaluate(&Word::new(one, b).unwrap());
            for d in 0..3u32 {
                let expect = digits.get(i).copied().unwrap_or(0) == d;
                let got = a.accepts_value(&[x.clone(), y.clone(), QkNumber::from_integer(d as u64, 2)]).unwrap();
                assert_eq!(got, expect, "digit {i} of {rep}");
            }
        }
    }
}

#[test]
fn modulo_formula() {
    let b = b32();
    let a = compile(&modulo_relation(5, "x", "y"), &["x", "y"], b).unwrap();
    for w in words_up_to(b, 1, 6) {
        let x = w.tape(0).value();
        let r = numeration::mod_value(&x, 5, b).unwrap();
        for y in 0..7u64 {
            assert_eq!(a.accepts_value(&[x.clone(), QkNumber::from_integer(y, 2)]).unwrap(), y == r);
        }
    }
}

#[test]
fn doubling_by_formula_matches_the_builtin() {
    let b = b32();
    let a = compile(&parse("x + x = y").unwrap(), &["x", "y"], b).unwrap();
    let m = builtins::build_mult_by_rational(b, 2, 1).unwrap();
    assert_eq!(a.equivalent(&m).unwrap(), None);
}

#[test]
fn emitted_formulas_have_one_variable_per_state() {
    let b = b32();
    let a = builtins::build_le_len(b).unwrap();
    let f = emit_formula(&a).unwrap();
    let n = normalize(&a).unwrap().states();
    assert!(matches!(f, Formula::Exists(..)));
    let names = f.to_string();
    for i in 0..n {
        assert!(names.contains(&format!("s{i}")), "{names}");
    }
    assert!(!names.contains(&format!("s{n}")));
    assert!(f.free_vars().iter().eq(["x0", "x1"].iter()));
    // the emitted text parses back to the same formula
    assert_eq!(parse(&names).unwrap(), f);
}

#[test]
fn sentences_are_decided() {
    let b = b32();
    for (text, truth) in [
        ("A x. E y. x + x = y", true),
        ("E x. x + x = 1", true),
        ("E x. 4*x = 1", false),
        ("A x. x <=len x", true),
        ("E x. beta(x) & x = 3/q^2", true),
        ("A x y. x + y = y + x", true),
    ] {
        assert_eq!(decide(&parse(text).unwrap(), b).unwrap(), truth, "{text}");
    }
}

// Random formulas. Every quantified variable is guarded by the length of a
// free one, so evaluation over a bounded domain is exact.

const FREE: [&str; 3] = ["x", "y", "z"];

fn term(rng: &mut ChaCha8Rng, scope: &[String]) -> Term {
    let v = |rng: &mut ChaCha8Rng| var(&scope[rng.gen_range(0..scope.len())]);
    match rng.gen_range(0..6) {
        0 => Term::Sum(vec![v(rng), v(rng)]),
        1 => nat(rng.gen_range(0..3)),
        2 => vpq(v(rng)),
        _ => v(rng),
    }
}

fn atom(rng: &mut ChaCha8Rng, scope: &[String]) -> Formula {
    let v = |rng: &mut ChaCha8Rng| var(&scope[rng.gen_range(0..scope.len())]);
    match rng.gen_range(0..6) {
        0 => Formula::LeLen(v(rng), v(rng)),
        1 => Formula::LtLen(v(rng), v(rng)),
        2 => call("beta", vec![v(rng)]),
        _ => Formula::Eq(term(rng, scope), term(rng, scope)),
    }
}

fn random_formula(rng: &mut ChaCha8Rng, scope: &mut Vec<String>, free: usize, quants: usize, depth: u32) -> Formula {
    if depth == 0 {
        return atom(rng, scope);
    }
    match rng.gen_range(0..5) {
        0 if quants > 0 => {
            let name = format!("v{}", scope.len());
            let guard = Formula::LeLen(var(&name), var(FREE[rng.gen_range(0..free)]));
            scope.push(name.clone());
            let body = random_formula(rng, scope, free, quants - 1, depth - 1);
            scope.pop();
            if rng.gen_bool(0.5) {
                exists(&[&name], Formula::And(vec![guard, body]))
            } else {
                forall(&[&name], implies(guard, body))
            }
        }
        1 => not(random_formula(rng, scope, free, quants, depth - 1)),
        2 => Formula::Or(vec![
            random_formula(rng, scope, free, quants / 2, depth - 1),
            random_formula(rng, scope, free, quants - quants / 2, depth - 1),
        ]),
        _ => Formula::And(vec![
            random_formula(rng, scope, free, quants / 2, depth - 1),
            random_formula(rng, scope, free, quants - quants / 2, depth - 1),
        ]),
    }
}

#[test]
fn random_guarded_formulas_compile_like_they_evaluate() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for i in 0..20 {
        let free = rng.gen_range(1..=3);
        let mut scope: Vec<String> = FREE[..free].iter().map(|s| s.to_string()).collect();
        let f = random_formula(&mut rng, &mut scope, free, 2, 3);
        let vars: Vec<&str> = FREE[..free].to_vec();
        // variables that happen not to occur still get a tape
        assert_eq!(disagreement(&f, &vars, 3), None, "formula {i}: {f}");
    }
}

fn arb_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["x", "y", "z", "u"]).prop_map(var),
        (0u64..20).prop_map(nat),
        (1u64..20, 1u32..4).prop_map(|(n, k)| lit(n, k)),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(vpq),
            (2u64..5, inner.clone()).prop_map(|(n, t)| Term::ScalarMul(n, Box::new(t))),
            prop::collection::vec(inner, 2..4).prop_map(|ts| {
                Term::Sum(
                    ts.into_iter()
                        .flat_map(|t| match t {
                            Term::Sum(inner) => inner,
                            t => vec![t],
                        })
                        .collect(),
                )
            }),
        ]
    })
}

fn flat(parts: Vec<Formula>, and: bool) -> Formula {
    let mut out = Vec::new();
    for p in parts {
        match p {
            Formula::And(ps) if and => out.extend(ps),
            Formula::Or(ps) if !and => out.extend(ps),
            p => out.push(p),
        }
    }
    if and {
        Formula::And(out)
    } else {
        Formula::Or(out)
    }
}

fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::Eq(a, b)),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::LeLen(a, b)),
        (arb_term(), arb_term()).prop_map(|(a, b)| Formula::LtLen(a, b)),
        arb_term().prop_map(|t| call("beta", vec![t])),
        (arb_term(), arb_term()).prop_map(|(a, b)| call("W", vec![a, b])),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(|fs| flat(fs, true)),
            prop::collection::vec(inner.clone(), 2..4).prop_map(|fs| flat(fs, false)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| implies(a, b)),
            (prop::sample::subsequence(vec!["x", "y", "u"], 1..3), inner.clone()).prop_map(|(vs, f)| exists(&vs, f)),
            (prop::sample::subsequence(vec!["y", "z"], 1..3), inner).prop_map(|(vs, f)| forall(&vs, f)),
        ]
    })
}

proptest! {
    #[test]
    fn printing_then_parsing_is_the_identity(f in arb_formula()) {
        let text = f.to_string();
        prop_assert_eq!(logic::parse(&text).unwrap(), f, "{}", text);
    }
}
