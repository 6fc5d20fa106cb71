//! Direct evaluation of formulas with quantifiers ranging over the numbers
//! whose representation has at most `B` digits.
//!
//! Only the numeration layer is used, so this serves as an oracle for the
//! compiler. Quantifier blocks are searched as conjunctive problems: ground
//! conjuncts are checked as soon as possible, linear equations with a single
//! unknown are solved exactly, and the remaining unknowns are enumerated,
//! smallest domain first.

use std::cell::{Cell, RefCell};
use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ast::*;
use super::macros;
use crate::error::{Error, Result};
use crate::numeration::{self, Base, QkNumber, Word};

/// Truth of `f` under `assignment` when every quantifier ranges over
/// `{x : |rep(x)| <= bound}`. Exact for quantifier-free formulas.
pub fn eval_bounded(f: &Formula, assignment: &[(&str, QkNumber)], bound: usize, base: Base) -> Result<bool> {
    let ev = Evaluator::new(base, bound);
    let mut env: HashMap<String, QkNumber> = assignment.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
    if let Some(v) = f.free_vars().into_iter().find(|v| !env.contains_key(v)) {
        return Err(Error::UnboundVariable(v));
    }
    ev.formula(f, &mut env)
}

/// Reusable evaluator; keeps its domain and length cache across calls.
pub struct Evaluator {
    base: Base,
    bound: usize,
    /// `by_len[l]` holds the numbers whose representation has `l` digits.
    by_len: Vec<Vec<QkNumber>>,
    lens: RefCell<HashMap<QkNumber, usize>>,
    counter: Cell<usize>,
}

struct Conj {
    f: Formula,
    vars: BTreeSet<String>,
}

impl Conj {
    fn new(f: Formula) -> Conj {
        let vars = f.free_vars();
        Conj { f, vars }
    }
}

impl Evaluator {
    pub fn new(base: Base, bound: usize) -> Evaluator {
        let p = base.p();
        let mut by_len: Vec<Vec<QkNumber>> = vec![Vec::new(); bound + 1];
        let mut lens = HashMap::new();
        // every word without leading zeros is the representation of its value
        let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
        for len in 0..=bound {
            let mut next = Vec::new();
            for digits in frontier {
                let w = Word::new(digits.clone(), base).expect("digits below p");
                let v = numeration::evaluate(&w);
                lens.insert(v.clone(), len);
                by_len[len].push(v);
                if len < bound {
                    for a in 0..p {
                        if len == 0 && a == 0 {
                            continue;
                        }
                        let mut d = digits.clone();
                        d.push(a);
                        next.push(d);
                    }
                }
            }
            frontier = next;
        }
        Evaluator { base, bound, by_len, lens: RefCell::new(lens), counter: Cell::new(0) }
    }

    /// Domain values in increasing representation length.
    pub fn domain(&self) -> impl Iterator<Item = &QkNumber> {
        self.by_len.iter().flatten()
    }

    pub fn eval(&self, f: &Formula, assignment: &[(&str, QkNumber)]) -> Result<bool> {
        let mut env: HashMap<String, QkNumber> = assignment.iter().map(|(n, v)| (n.to_string(), v.clone())).collect();
        self.formula(f, &mut env)
    }

    fn rep_len(&self, x: &QkNumber) -> Result<usize> {
        if let Some(&l) = self.lens.borrow().get(x) {
            return Ok(l);
        }
        let l = numeration::rep_len(x, self.base)?;
        self.lens.borrow_mut().insert(x.clone(), l);
        Ok(l)
    }

    fn fresh(&self, stem: &str) -> String {
        let n = self.counter.get();
        self.counter.set(n + 1);
        format!("{stem}#{n}")
    }

    fn term(&self, t: &Term, env: &HashMap<String, QkNumber>) -> Result<QkNumber> {
        let q = self.base.q();
        Ok(match t {
            Term::Var(v) => env.get(v).cloned().ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            Term::Const(l) => {
                let c = l.value(q);
                if !numeration::is_member(&c, self.base) {
                    return Err(numeration::not_member(&c, self.base));
                }
                c
            }
            Term::Sum(ts) => {
                let mut acc = QkNumber::zero(q);
                for t in ts {
                    acc = &acc + &self.term(t, env)?;
                }
                acc
            }
            Term::ScalarMul(n, t) => self.term(t, env)?.scale(&(*n).into()),
            Term::Vpq(t) => numeration::v_pq(&self.term(t, env)?, self.base)?,
        })
    }

    fn formula(&self, f: &Formula, env: &mut HashMap<String, QkNumber>) -> Result<bool> {
        Ok(match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Eq(a, b) => self.term(a, env)? == self.term(b, env)?,
            Formula::LeLen(a, b) => self.rep_len(&self.term(a, env)?)? <= self.rep_len(&self.term(b, env)?)?,
            Formula::LtLen(a, b) => self.rep_len(&self.term(a, env)?)? < self.rep_len(&self.term(b, env)?)?,
            Formula::Not(g) => !self.formula(g, env)?,
            Formula::And(gs) => {
                for g in gs {
                    if !self.formula(g, env)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(gs) => {
                for g in gs {
                    if self.formula(g, env)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Implies(a, b) => !self.formula(a, env)? || self.formula(b, env)?,
            Formula::Exists(..) => {
                let (conj, unknowns) = self.flattened(f, true)?;
                self.solve(conj, &unknowns, env)?
            }
            Formula::Forall(..) => {
                let (conj, unknowns) = self.flattened(f, false)?;
                !self.solve(conj, &unknowns, env)?
            }
            Formula::MacroCall(name, args) if macros::is_native(name) => self.native_mod(args, env)?,
            Formula::MacroCall(name, args) => {
                let body = macros::expand_with(name, args, self.base, &mut |s| self.fresh(s))?;
                self.formula(&body, env)?
            }
        })
    }

    fn native_mod(&self, args: &[Term], env: &HashMap<String, QkNumber>) -> Result<bool> {
        let nat = |t: &Term| match t {
            Term::Const(l) => l.as_nat(),
            _ => None,
        };
        if args.len() != 3 {
            return Err(Error::Arity { name: "mod".into(), expected: 3, found: args.len() });
        }
        let (Some(n), Some(r)) = (nat(&args[1]), nat(&args[2])) else {
            return Err(Error::InvalidArgument("`mod(x, n, r)` needs natural number constants n and r".into()));
        };
        let x = self.term(&args[0], env)?;
        Ok(r < n && numeration::mod_value(&x, n, self.base)? == r)
    }

    fn flattened(&self, f: &Formula, positive: bool) -> Result<(Vec<Conj>, Vec<String>)> {
        let mut out = Vec::new();
        let mut unknowns = Vec::new();
        self.flatten(f, positive, &mut out, &mut unknowns)?;
        Ok((out, unknowns))
    }

    /// Splits `f` (or its negation) into conjuncts, lifting existential
    /// blocks into the surrounding search with fresh names.
    fn flatten(&self, f: &Formula, positive: bool, out: &mut Vec<Conj>, unknowns: &mut Vec<String>) -> Result<()> {
        match (f, positive) {
            (Formula::True, true) | (Formula::False, false) => {}
            (Formula::And(gs), true) | (Formula::Or(gs), false) => {
                for g in gs {
                    self.flatten(g, positive, out, unknowns)?;
                }
            }
            (Formula::Not(g), _) => self.flatten(g, !positive, out, unknowns)?,
            (Formula::Implies(a, b), false) => {
                self.flatten(a, true, out, unknowns)?;
                self.flatten(b, false, out, unknowns)?;
            }
            (Formula::Exists(vs, g), true) | (Formula::Forall(vs, g), false) => {
                let mut body = (**g).clone();
                for v in vs {
                    let fresh = self.fresh(v);
                    body = rename(&body, v, &fresh);
                    unknowns.push(fresh);
                }
                self.flatten(&body, positive, out, unknowns)?;
            }
            (Formula::MacroCall(name, args), _) if !macros::is_native(name) => {
                let body = macros::expand_with(name, args, self.base, &mut |s| self.fresh(s))?;
                self.flatten(&body, positive, out, unknowns)?;
            }
            (g, true) => out.push(Conj::new(g.clone())),
            (g, false) => out.push(Conj::new(not(g.clone()))),
        }
        Ok(())
    }

    fn ground(&self, c: &Conj, env: &HashMap<String, QkNumber>) -> bool {
        c.vars.iter().all(|v| env.contains_key(v))
    }

    /// Is there an assignment of the unknowns (within the bound) making every
    /// conjunct true?
    fn solve(&self, conj: Vec<Conj>, unknowns: &[String], env: &mut HashMap<String, QkNumber>) -> Result<bool> {
        let mut conj = conj;
        let mut unknowns = unknowns.to_vec();
        // check ground conjuncts and prune disjunctions until nothing changes
        let pending = loop {
            let mut pending = Vec::new();
            let mut inlined = None;
            for (i, c) in conj.iter().enumerate() {
                if self.ground(c, env) {
                    if !self.formula(&c.f, env)? {
                        return Ok(false);
                    }
                    continue;
                }
                if let Formula::Or(ds) = &c.f {
                    let mut live = Vec::new();
                    let mut satisfied = false;
                    for d in ds {
                        let dc = Conj::new(d.clone());
                        if self.ground(&dc, env) {
                            if self.formula(d, env)? {
                                satisfied = true;
                                break;
                            }
                        } else if !self.refuted(d, env)? {
                            live.push(d);
                        }
                    }
                    if satisfied {
                        continue;
                    }
                    match live.len() {
                        0 => return Ok(false),
                        1 => {
                            inlined = Some((i, live[0].clone()));
                            break;
                        }
                        _ => {}
                    }
                }
                pending.push(i);
            }
            match inlined {
                Some((i, d)) => {
                    let c = conj.remove(i);
                    drop(c);
                    self.flatten(&d, true, &mut conj, &mut unknowns)?;
                }
                None => break pending,
            }
        };
        let pending: Vec<Conj> = {
            let keep: BTreeSet<usize> = pending.into_iter().collect();
            conj.into_iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, c)| c).collect()
        };
        let open: Vec<String> = unknowns
            .iter()
            .filter(|u| !env.contains_key(*u) && pending.iter().any(|c| c.vars.contains(*u)))
            .cloned()
            .collect();
        if pending.is_empty() {
            return Ok(true);
        }

        // an equation that pins down one unknown
        for c in &pending {
            if let Formula::Eq(a, b) = &c.f {
                let unknown: Vec<&String> = open.iter().filter(|u| c.vars.contains(*u)).collect();
                if unknown.len() != 1 {
                    continue;
                }
                let u = unknown[0].clone();
                if let Some(sol) = self.solve_linear(a, b, &u, env)? {
                    let Some(v) = sol else { return Ok(false) };
                    if self.rep_len(&v)? > self.bound {
                        return Ok(false);
                    }
                    env.insert(u.clone(), v);
                    let r = self.solve(pending, &open, env);
                    env.remove(&u);
                    return r;
                }
            }
        }

        // enumerate the unknown with the smallest domain
        let mut best: Option<(usize, usize, &String)> = None;
        for u in &open {
            let cap = match self.length_cap(u, &pending, env)? {
                Some(c) => c,
                None => return Ok(false),
            };
            let size: usize = self.by_len[..=cap].iter().map(Vec::len).sum();
            if best.is_none_or(|(s, _, _)| size < s) {
                best = Some((size, cap, u));
            }
        }
        let Some((_, cap, u)) = best else {
            return Err(Error::InvalidArgument("unbound variable in bounded evaluation".into()));
        };
        let u = u.clone();
        for len in 0..=cap {
            for v in &self.by_len[len] {
                env.insert(u.clone(), v.clone());
                let r = self.solve(pending_clone(&pending), &open, env);
                env.remove(&u);
                if r? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Largest representation length allowed for `u` by the length
    /// conjuncts already decided on the right; `None` if no length fits.
    fn length_cap(&self, u: &str, pending: &[Conj], env: &HashMap<String, QkNumber>) -> Result<Option<usize>> {
        let mut cap = self.bound as i64;
        for c in pending {
            let (lhs, rhs, strict) = match &c.f {
                Formula::LeLen(a, b) => (a, b, false),
                Formula::LtLen(a, b) => (a, b, true),
                _ => continue,
            };
            if !matches!(lhs, Term::Var(v) if v == u) || !rhs.vars().iter().all(|v| env.contains_key(v)) {
                continue;
            }
            let l = self.rep_len(&self.term(rhs, env)?)? as i64;
            cap = cap.min(if strict { l - 1 } else { l });
        }
        Ok(usize::try_from(cap).ok())
    }

    /// A conjunction with a false ground conjunct.
    fn refuted(&self, d: &Formula, env: &mut HashMap<String, QkNumber>) -> Result<bool> {
        if let Formula::And(gs) = d {
            for g in gs {
                if g.free_vars().iter().all(|v| env.contains_key(v)) && !self.formula(g, env)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// Solves `a = b` for `u` when `u` occurs only linearly. `None` when the
    /// equation is not of that shape; `Some(None)` when it has no solution in
    /// the number system.
    fn solve_linear(
        &self,
        a: &Term,
        b: &Term,
        u: &str,
        env: &HashMap<String, QkNumber>,
    ) -> Result<Option<Option<QkNumber>>> {
        let (Some((ca, ra)), Some((cb, rb))) = (self.linear(a, u, env)?, self.linear(b, u, env)?) else {
            return Ok(None);
        };
        let coef = ca - cb;
        if coef.is_zero() {
            return Ok(None);
        }
        let x = (rb - ra) / BigRational::from_integer(coef);
        Ok(Some(QkNumber::from_rational(&x, self.base.q()).filter(|v| numeration::is_member(v, self.base))))
    }

    fn linear(&self, t: &Term, u: &str, env: &HashMap<String, QkNumber>) -> Result<Option<(BigInt, BigRational)>> {
        Ok(match t {
            Term::Var(v) if v == u => Some((BigInt::one(), BigRational::zero())),
            Term::Var(_) | Term::Const(_) => Some((BigInt::zero(), self.term(t, env)?.to_rational())),
            Term::Sum(ts) => {
                let mut c = BigInt::zero();
                let mut r = BigRational::zero();
                for t in ts {
                    match self.linear(t, u, env)? {
                        Some((ct, rt)) => {
                            c += ct;
                            r += rt;
                        }
                        None => return Ok(None),
                    }
                }
                Some((c, r))
            }
            Term::ScalarMul(n, t) => self.linear(t, u, env)?.map(|(c, r)| {
                let n = BigInt::from(*n);
                (&c * &n, r * BigRational::from_integer(n))
            }),
            Term::Vpq(inner) => {
                if inner.vars().contains(u) {
                    None
                } else {
                    Some((BigInt::zero(), self.term(t, env)?.to_rational()))
                }
            }
        })
    }
}

fn pending_clone(cs: &[Conj]) -> Vec<Conj> {
    cs.iter().map(|c| Conj { f: c.f.clone(), vars: c.vars.clone() }).collect()
}

fn rename_term(t: &Term, from: &str, to: &str) -> Term {
    match t {
        Term::Var(v) if v == from => Term::Var(to.to_string()),
        Term::Var(_) | Term::Const(_) => t.clone(),
        Term::Sum(ts) => Term::Sum(ts.iter().map(|t| rename_term(t, from, to)).collect()),
        Term::ScalarMul(n, t) => Term::ScalarMul(*n, Box::new(rename_term(t, from, to))),
        Term::Vpq(t) => Term::Vpq(Box::new(rename_term(t, from, to))),
    }
}

/// Renames the free occurrences of `from`; `to` must be fresh.
fn rename(f: &Formula, from: &str, to: &str) -> Formula {
    let rt = |t: &Term| rename_term(t, from, to);
    let rf = |g: &Formula| rename(g, from, to);
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Eq(a, b) => Formula::Eq(rt(a), rt(b)),
        Formula::LeLen(a, b) => Formula::LeLen(rt(a), rt(b)),
        Formula::LtLen(a, b) => Formula::LtLen(rt(a), rt(b)),
        Formula::Not(g) => Formula::Not(Box::new(rf(g))),
        Formula::And(gs) => Formula::And(gs.iter().map(rf).collect()),
        Formula::Or(gs) => Formula::Or(gs.iter().map(rf).collect()),
        Formula::Implies(a, b) => Formula::Implies(Box::new(rf(a)), Box::new(rf(b))),
        Formula::Exists(vs, _) | Formula::Forall(vs, _) if vs.iter().any(|v| v == from) => f.clone(),
        Formula::Exists(vs, g) => Formula::Exists(vs.clone(), Box::new(rf(g))),
        Formula::Forall(vs, g) => Formula::Forall(vs.clone(), Box::new(rf(g))),
        Formula::MacroCall(n, args) => Formula::MacroCall(n.clone(), args.iter().map(rt).collect()),
    }
}
