use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::numeration::QkNumber;

/// A constant `num / q^kexp`, kept base-agnostic until compilation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub num: BigUint,
    pub kexp: u32,
}

impl Literal {
    pub fn int(n: u64) -> Literal {
        Literal { num: n.into(), kexp: 0 }
    }

    pub fn new(num: impl Into<BigUint>, kexp: u32) -> Literal {
        Literal { num: num.into(), kexp }
    }

    pub fn value(&self, q: u32) -> QkNumber {
        QkNumber::new(self.num.clone(), self.kexp, q)
    }

    /// The literal as a small natural number, if it is one.
    pub fn as_nat(&self) -> Option<u64> {
        if self.kexp == 0 {
            self.num.to_u64()
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.kexp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/q^{}", self.num, self.kexp)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    Const(Literal),
    Sum(Vec<Term>),
    ScalarMul(u64, Box<Term>),
    Vpq(Box<Term>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    True,
    False,
    Eq(Term, Term),
    LeLen(Term, Term),
    LtLen(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
    MacroCall(String, Vec<Term>),
}

pub fn var(name: &str) -> Term {
    Term::Var(name.to_string())
}

pub fn nat(n: u64) -> Term {
    Term::Const(Literal::int(n))
}

pub fn lit(num: u64, kexp: u32) -> Term {
    Term::Const(Literal::new(num, kexp))
}

/// `t + t + ... + t` (`n` copies); zero copies give the constant 0.
pub fn repeat_sum(t: &Term, n: u64) -> Term {
    match n {
        0 => nat(0),
        1 => t.clone(),
        _ => Term::Sum(vec![t.clone(); n as usize]),
    }
}

pub fn vpq(t: Term) -> Term {
    Term::Vpq(Box::new(t))
}

pub fn call(name: &str, args: Vec<Term>) -> Formula {
    Formula::MacroCall(name.to_string(), args)
}

pub fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}

pub fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

pub fn exists(vars: &[&str], body: Formula) -> Formula {
    Formula::Exists(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
}

pub fn forall(vars: &[&str], body: Formula) -> Formula {
    Formula::Forall(vars.iter().map(|v| v.to_string()).collect(), Box::new(body))
}

/// Conjunction; empty gives `true`, a single conjunct is returned as is.
pub fn and_all(mut parts: Vec<Formula>) -> Formula {
    match parts.len() {
        0 => Formula::True,
        1 => parts.pop().unwrap(),
        _ => Formula::And(parts),
    }
}

/// Disjunction; empty gives `false`.
pub fn or_all(mut parts: Vec<Formula>) -> Formula {
    match parts.len() {
        0 => Formula::False,
        1 => parts.pop().unwrap(),
        _ => Formula::Or(parts),
    }
}

impl Term {
    pub fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::Const(_) => {}
            Term::Sum(ts) => ts.iter().for_each(|t| t.collect_vars(out)),
            Term::ScalarMul(_, t) | Term::Vpq(t) => t.collect_vars(out),
        }
    }

    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn is_ground(&self) -> bool {
        self.vars().is_empty()
    }
}

impl Formula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out, &mut Vec::new());
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>, bound: &mut Vec<String>) {
        let terms = |ts: &[&Term], out: &mut BTreeSet<String>| {
            for t in ts {
                for v in t.vars() {
                    if !bound.contains(&v) {
                        out.insert(v);
                    }
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) | Formula::LeLen(a, b) | Formula::LtLen(a, b) => terms(&[a, b], out),
            Formula::MacroCall(_, args) => terms(&args.iter().collect::<Vec<_>>(), out),
            Formula::Not(f) => f.collect_free(out, bound),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_free(out, bound)),
            Formula::Implies(a, b) => {
                a.collect_free(out, bound);
                b.collect_free(out, bound);
            }
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                let n = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(out, bound);
                bound.truncate(n);
            }
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Eq(a, b) | Formula::LeLen(a, b) | Formula::LtLen(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Formula::MacroCall(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Not(f) => f.all_names(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.all_names(out)),
            Formula::Implies(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                out.extend(vs.iter().cloned());
                f.all_names(out);
            }
        }
    }

    /// Number of nodes, for reporting.
    pub fn size(&self) -> usize {
        match self {
            Formula::True
            | Formula::False
            | Formula::Eq(..)
            | Formula::LeLen(..)
            | Formula::LtLen(..)
            | Formula::MacroCall(..) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.size(),
            Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Formula::Implies(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Largest number of nested quantifier blocks.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Not(f) => f.quantifier_depth(),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_depth(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::quantifier_depth).max().unwrap_or(0),
            Formula::Implies(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            _ => 0,
        }
    }
}

// Printer. Precedence: quantifiers 0, -> 1, | 2, & 3, unary 4.

fn term_prec(t: &Term) -> u8 {
    match t {
        Term::Sum(_) => 0,
        Term::ScalarMul(..) => 1,
        _ => 2,
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, t: &Term, min: u8) -> fmt::Result {
    let paren = term_prec(t) < min;
    if paren {
        f.write_str("(")?;
    }
    match t {
        Term::Var(v) => f.write_str(v)?,
        Term::Const(c) => write!(f, "{c}")?,
        Term::Sum(ts) => {
            for (i, t) in ts.iter().enumerate() {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                write_term(f, t, 1)?;
            }
        }
        Term::ScalarMul(n, t) => {
            write!(f, "{n}*")?;
            write_term(f, t, 1)?;
        }
        Term::Vpq(t) => {
            f.write_str("V(")?;
            write_term(f, t, 0)?;
            f.write_str(")")?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, self, 0)
    }
}

fn formula_prec(phi: &Formula) -> u8 {
    match phi {
        Formula::Exists(..) | Formula::Forall(..) => 0,
        Formula::Implies(..) => 1,
        Formula::Or(_) => 2,
        Formula::And(_) => 3,
        _ => 4,
    }
}

fn write_formula(f: &mut fmt::Formatter<'_>, phi: &Formula, min: u8) -> fmt::Result {
    let paren = formula_prec(phi) < min;
    if paren {
        f.write_str("(")?;
    }
    match phi {
        Formula::True => f.write_str("true")?,
        Formula::False => f.write_str("false")?,
        Formula::Eq(a, b) => write!(f, "{a} = {b}")?,
        Formula::LeLen(a, b) => write!(f, "{a} <=len {b}")?,
        Formula::LtLen(a, b) => write!(f, "{a} <len {b}")?,
        Formula::Not(g) => {
            f.write_str("~")?;
            write_formula(f, g, 4)?;
        }
        Formula::And(gs) | Formula::Or(gs) => {
            let (op, child) = if matches!(phi, Formula::And(_)) { (" & ", 4) } else { (" | ", 3) };
            for (i, g) in gs.iter().enumerate() {
                if i > 0 {
                    f.write_str(op)?;
                }
                write_formula(f, g, child)?;
            }
        }
        Formula::Implies(a, b) => {
            write_formula(f, a, 2)?;
            f.write_str(" -> ")?;
            write_formula(f, b, 1)?;
        }
        Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
            let q = if matches!(phi, Formula::Exists(..)) { "E" } else { "A" };
            write!(f, "{q} {}. ", vs.join(", "))?;
            write_formula(f, g, 0)?;
        }
        Formula::MacroCall(name, args) => {
            write!(f, "{name}(")?;
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write_term(f, a, 0)?;
            }
            f.write_str(")")?;
        }
    }
    if paren {
        f.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(f, self, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prints_with_minimal_parentheses() {
        let f = exists(&["x"], Formula::Eq(Term::Sum(vec![var("x"), var("x")]), var("y")));
        assert_eq!(f.to_string(), "E x. x + x = y");
        let g = Formula::And(vec![
            Formula::Or(vec![Formula::True, Formula::False]),
            not(Formula::LeLen(var("a"), lit(3, 2))),
        ]);
        assert_eq!(g.to_string(), "(true | false) & ~a <=len 3/q^2");
        let h = implies(implies(Formula::True, Formula::True), Formula::False);
        assert_eq!(h.to_string(), "(true -> true) -> false");
        let t = Term::ScalarMul(2, Box::new(Term::Sum(vec![var("x"), vpq(var("y"))])));
        assert_eq!(t.to_string(), "2*(x + V(y))");
    }

    #[test]
    fn free_variables_respect_binding() {
        let f = Formula::And(vec![exists(&["x"], Formula::Eq(var("x"), var("y"))), Formula::Eq(var("x"), nat(0))]);
        let names: Vec<String> = f.free_vars().into_iter().collect();
        assert_eq!(names, ["x", "y"]);
    }
}
