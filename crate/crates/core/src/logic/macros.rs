//! Derived predicates of the logic, each defined by a first-order formula
//! over `+`, `V` and the length preorder.

use std::collections::BTreeSet;

use super::ast::*;
use crate::error::{Error, Result};
use crate::numeration::Base;

/// `(name, arity)` of every macro.
const MACROS: [(&str, usize); 9] =
    [("zero", 1), ("one", 1), ("phi", 3), ("W", 2), ("beta", 1), ("ltlen", 2), ("star", 3), ("digit", 3), ("mod", 3)];

pub fn names() -> Vec<&'static str> {
    MACROS.iter().map(|(n, _)| *n).collect()
}

pub fn is_macro(name: &str) -> bool {
    MACROS.iter().any(|(n, _)| *n == name)
}

pub fn arity(name: &str) -> Option<usize> {
    MACROS.iter().find(|(n, _)| *n == name).map(|(_, a)| *a)
}

/// `mod(x, n, r)` holds when the generalized residue of `x` modulo `n` is
/// `r`. It is evaluated directly (automaton or arithmetic) instead of being
/// expanded.
pub fn is_native(name: &str) -> bool {
    name == "mod"
}

/// Expands a macro call into its defining formula. Bound variables are named
/// by `fresh`, which must avoid every name occurring in `args`.
pub fn expand_with(name: &str, args: &[Term], base: Base, fresh: &mut dyn FnMut(&str) -> String) -> Result<Formula> {
    let expected = arity(name).ok_or_else(|| Error::UnknownMacro {
        name: name.to_string(),
        candidates: names().iter().map(|s| s.to_string()).collect(),
    })?;
    if args.len() != expected {
        return Err(Error::Arity { name: name.to_string(), expected, found: args.len() });
    }
    let (p, q) = (base.p() as u64, base.q() as u64);
    let a = |i: usize| args[i].clone();
    Ok(match name {
        // A z. x <=len z
        "zero" => {
            let z = fresh("z");
            forall(&[&z], Formula::LeLen(a(0), var(&z)))
        }
        // V(x) = x & A y. (V(y) = y -> (y = 0 | x <=len y))
        "one" => {
            let y = fresh("y");
            Formula::And(vec![
                Formula::Eq(vpq(a(0)), a(0)),
                forall(
                    &[&y],
                    implies(
                        Formula::Eq(vpq(var(&y)), var(&y)),
                        Formula::Or(vec![Formula::Eq(var(&y), nat(0)), Formula::LeLen(a(0), var(&y))]),
                    ),
                ),
            ])
        }
        // 1 + ... + 1 (n times) = x + ... + x (m times)
        "phi" => {
            let n = nat_arg(name, &args[0])?;
            let m = nat_arg(name, &args[1])?;
            Formula::Eq(repeat_sum(&nat(1), n), repeat_sum(&a(2), m))
        }
        // V(x) = z + ... + z (q times)
        "W" => Formula::Eq(vpq(a(0)), repeat_sum(&a(1), q)),
        // W(x) = x & ~(x = 0), i.e. V(x) = q x for nonzero x
        "beta" => Formula::And(vec![call("W", vec![a(0), a(0)]), not(Formula::Eq(a(0), nat(0)))]),
        // x <=len y & ~(y <=len x)
        "ltlen" => Formula::And(vec![Formula::LeLen(a(0), a(1)), not(Formula::LeLen(a(1), a(0)))]),
        // OR_i (a = i & z = y + ... + y (i times))
        "star" => or_all(
            (0..p)
                .map(|i| Formula::And(vec![Formula::Eq(a(0), nat(i)), Formula::Eq(a(2), repeat_sum(&a(1), i))]))
                .collect(),
        ),
        // beta(y) & E l, m, r. x = l + m + r & star(a, y, m)
        //   & (l = 0 | y <len W(l)) & r <len y
        "digit" => {
            let (l, m, r, w) = (fresh("l"), fresh("m"), fresh("r"), fresh("w"));
            Formula::And(vec![
                call("beta", vec![a(1)]),
                exists(
                    &[&l, &m, &r],
                    Formula::And(vec![
                        Formula::Eq(a(0), Term::Sum(vec![var(&l), var(&m), var(&r)])),
                        call("star", vec![a(2), a(1), var(&m)]),
                        Formula::Or(vec![
                            Formula::Eq(var(&l), nat(0)),
                            exists(
                                &[&w],
                                Formula::And(vec![call("W", vec![var(&l), var(&w)]), Formula::LtLen(a(1), var(&w))]),
                            ),
                        ]),
                        Formula::LtLen(var(&r), a(1)),
                    ]),
                ),
            ])
        }
        "mod" => {
            return Err(Error::InvalidArgument("`mod` has no expansion; it is compiled and evaluated directly".into()))
        }
        _ => unreachable!("arity table and expansions agree"),
    })
}

/// Expands with bound names chosen to avoid the argument variables.
pub fn expand_macro(name: &str, args: &[Term], base: Base) -> Result<Formula> {
    let mut used: BTreeSet<String> = BTreeSet::new();
    for t in args {
        t.collect_vars(&mut used);
    }
    let mut fresh = |stem: &str| fresh_name(stem, &mut used);
    expand_with(name, args, base, &mut fresh)
}

/// `stem`, `stem1`, `stem2`, ... whichever is first unused; records it.
pub fn fresh_name(stem: &str, used: &mut BTreeSet<String>) -> String {
    let mut name = stem.to_string();
    let mut i = 0;
    while used.contains(&name) {
        i += 1;
        name = format!("{stem}{i}");
    }
    used.insert(name.clone());
    name
}

fn nat_arg(name: &str, t: &Term) -> Result<u64> {
    match t {
        Term::Const(c) => c.as_nat(),
        _ => None,
    }
    .ok_or_else(|| Error::InvalidArgument(format!("`{name}` expects natural number constants, got {t}")))
}

/// The relation `y = x mod n` as a disjunction over the residues.
pub fn modulo_relation(n: u64, x: &str, y: &str) -> Formula {
    or_all(
        (0..n)
            .map(|r| Formula::And(vec![Formula::Eq(var(y), nat(r)), call("mod", vec![var(x), nat(n), nat(r)])]))
            .collect(),
    )
}
