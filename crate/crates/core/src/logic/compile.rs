//! Formula to automaton compiler.
//!
//! Every variable gets a numeric id; an intermediate result is an automaton
//! whose tapes are its free variables in increasing id order. Variables of the
//! requested order get ids `0..n`, so the final tape order is that order.

use std::collections::{BTreeSet, HashMap};

use super::ast::{Formula, Term};
use super::macros;
use crate::automata::{BoolOp, Direction, MultiTapeAutomaton};
use crate::builtins;
use crate::error::{Error, Result};
use crate::numeration::{self, Base, QkNumber};

#[derive(Clone, Debug)]
enum Compiled {
    Const(bool),
    Aut { vars: Vec<u32>, aut: MultiTapeAutomaton },
}

#[derive(Clone, Debug)]
enum Operand {
    Var(u32),
    Const(QkNumber),
    /// The term was written directly into the requested target variable.
    Target,
}

#[derive(Clone, Debug)]
enum CachedMacro {
    Const(bool),
    Aut { aut: MultiTapeAutomaton, params: Vec<usize> },
}

struct Compiler {
    base: Base,
    next_id: u32,
    scope: Vec<(String, u32)>,
    relations: HashMap<String, MultiTapeAutomaton>,
    macros: HashMap<String, CachedMacro>,
}

/// Compiles `f` into a padded right-to-left automaton whose tape `i` carries
/// the variable `var_order[i]`.
pub fn compile(f: &Formula, var_order: &[&str], base: Base) -> Result<MultiTapeAutomaton> {
    if var_order.is_empty() {
        return Err(Error::Shape("a variable order needs at least one variable; use `decide` for sentences".into()));
    }
    let mut seen = BTreeSet::new();
    for v in var_order {
        if !seen.insert(*v) {
            return Err(Error::InvalidArgument(format!("variable `{v}` listed twice")));
        }
    }
    if let Some(v) = f.free_vars().into_iter().find(|v| !seen.contains(v.as_str())) {
        return Err(Error::UnboundVariable(v));
    }
    let mut c = Compiler::new(base);
    for v in var_order {
        c.bind(v);
    }
    let all: Vec<u32> = (0..var_order.len() as u32).collect();
    let res = c.formula(f)?;
    c.materialize(res, &all)
}

/// Truth value of a sentence.
pub fn decide(f: &Formula, base: Base) -> Result<bool> {
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::UnboundVariable(v));
    }
    let mut c = Compiler::new(base);
    match c.formula(f)? {
        Compiled::Const(b) => Ok(b),
        Compiled::Aut { aut, .. } => Ok(!aut.is_empty()),
    }
}

impl Compiler {
    fn new(base: Base) -> Compiler {
        Compiler { base, next_id: 0, scope: Vec::new(), relations: HashMap::new(), macros: HashMap::new() }
    }

    fn fresh(&mut self) -> u32 {
        self.next_id += 1;
        self.next_id - 1
    }

    fn bind(&mut self, name: &str) -> u32 {
        let id = self.fresh();
        self.scope.push((name.to_string(), id));
        id
    }

    fn lookup(&self, name: &str) -> Result<u32> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, id)| id)
            .ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    fn materialize(&mut self, c: Compiled, all: &[u32]) -> Result<MultiTapeAutomaton> {
        let dir = Direction::RightToLeft;
        Ok(match c {
            Compiled::Const(true) => MultiTapeAutomaton::universal(self.base, all.len(), dir)?,
            Compiled::Const(false) => MultiTapeAutomaton::empty(self.base, all.len(), dir)?,
            Compiled::Aut { vars, aut } => align(&aut, &vars, all)?,
        })
    }

    // relation automata -------------------------------------------------

    fn relation(&mut self, key: &str) -> Result<MultiTapeAutomaton> {
        if let Some(a) = self.relations.get(key) {
            return Ok(a.clone());
        }
        let base = self.base;
        let a = match key {
            "add" => builtins::build_addition(base)?,
            "eq" => builtins::build_equality(base, 2)?,
            "lelen" => builtins::build_le_len(base)?,
            "ltlen" => builtins::build_lt_len(base)?,
            "vpq" => builtins::build_vpq(base)?,
            _ => unreachable!("unknown relation {key}"),
        };
        self.relations.insert(key.to_string(), a.clone());
        Ok(a)
    }

    /// `(x, n x)`, built by doubling.
    fn multiplier(&mut self, n: u64) -> Result<MultiTapeAutomaton> {
        let key = format!("mul{n}");
        if let Some(a) = self.relations.get(&key) {
            return Ok(a.clone());
        }
        debug_assert!(n >= 2);
        let (x, y, t) = (self.fresh(), self.fresh(), self.fresh());
        let a = if n.is_multiple_of(2) {
            let half = self.times(n / 2, x, t)?;
            let add = self.relation("add")?;
            let double = atom(&add, &[t, t, y])?;
            let both = and(half, double)?;
            exists(t, both)?
        } else {
            let most = self.times(n - 1, x, t)?;
            let add = self.relation("add")?;
            let plus = atom(&add, &[t, x, y])?;
            let both = and(most, plus)?;
            exists(t, both)?
        };
        let aut = match a {
            Compiled::Aut { vars, aut } => align(&aut, &vars, &[x, y])?,
            Compiled::Const(_) => unreachable!("multiplication is a proper relation"),
        };
        self.relations.insert(key, aut.clone());
        Ok(aut)
    }

    fn times(&mut self, n: u64, x: u32, y: u32) -> Result<Compiled> {
        if n == 1 {
            let eq = self.relation("eq")?;
            atom(&eq, &[x, y])
        } else {
            let m = self.multiplier(n)?;
            atom(&m, &[x, y])
        }
    }

    fn constant(&self, c: &QkNumber, x: u32) -> Result<Compiled> {
        let a = builtins::build_constant(self.base, c)?;
        atom(&a, &[x])
    }

    fn member(&self, c: QkNumber) -> Result<QkNumber> {
        if numeration::is_member(&c, self.base) {
            Ok(c)
        } else {
            Err(numeration::not_member(&c, self.base))
        }
    }

    // terms ----------------------------------------------------------------

    /// Flattens `t`, pushing one constraint per operation and recording the
    /// fresh variables introduced.
    fn term(
        &mut self,
        t: &Term,
        target: Option<u32>,
        cons: &mut Vec<Compiled>,
        fresh: &mut Vec<u32>,
    ) -> Result<Operand> {
        let q = self.base.q();
        match t {
            Term::Var(v) => Ok(Operand::Var(self.lookup(v)?)),
            Term::Const(l) => Ok(Operand::Const(self.member(l.value(q))?)),
            Term::ScalarMul(n, inner) => {
                let o = self.term(inner, None, cons, fresh)?;
                match (o, *n) {
                    (_, 0) => Ok(Operand::Const(QkNumber::zero(q))),
                    (o, 1) => Ok(o),
                    (Operand::Const(c), n) => Ok(Operand::Const(c.scale(&n.into()))),
                    (Operand::Var(x), n) => {
                        let out = self.output(target, fresh);
                        cons.push(self.times(n, x, out)?);
                        Ok(self.result(target, out))
                    }
                    (Operand::Target, _) => unreachable!("no target passed down"),
                }
            }
            Term::Vpq(inner) => match self.term(inner, None, cons, fresh)? {
                Operand::Const(c) => Ok(Operand::Const(numeration::v_pq(&c, self.base)?)),
                Operand::Var(x) => {
                    let out = self.output(target, fresh);
                    let v = self.relation("vpq")?;
                    cons.push(atom(&v, &[x, out])?);
                    Ok(self.result(target, out))
                }
                Operand::Target => unreachable!("no target passed down"),
            },
            Term::Sum(parts) => {
                let mut constant = QkNumber::zero(q);
                let mut counts: Vec<(u32, u64)> = Vec::new();
                for part in parts {
                    match self.term(part, None, cons, fresh)? {
                        Operand::Const(c) => constant = &constant + &c,
                        Operand::Var(x) => match counts.iter_mut().find(|(y, _)| *y == x) {
                            Some((_, n)) => *n += 1,
                            None => counts.push((x, 1)),
                        },
                        Operand::Target => unreachable!("no target passed down"),
                    }
                }
                let mut summands: Vec<u32> = Vec::new();
                for (x, n) in counts {
                    if n == 1 {
                        summands.push(x);
                    } else {
                        let r = self.fresh();
                        fresh.push(r);
                        cons.push(self.times(n, x, r)?);
                        summands.push(r);
                    }
                }
                if !constant.is_zero() {
                    if summands.is_empty() {
                        return Ok(Operand::Const(constant));
                    }
                    let c = self.fresh();
                    fresh.push(c);
                    cons.push(self.constant(&constant, c)?);
                    summands.push(c);
                }
                match summands.len() {
                    0 => Ok(Operand::Const(constant)),
                    1 => Ok(Operand::Var(summands[0])),
                    n => {
                        let mut acc = summands[0];
                        for (i, &next) in summands[1..].iter().enumerate() {
                            let out = if i + 2 == n {
                                self.output(target, fresh)
                            } else {
                                let r = self.fresh();
                                fresh.push(r);
                                r
                            };
                            let add = self.relation("add")?;
                            cons.push(atom(&add, &[acc, next, out])?);
                            acc = out;
                        }
                        Ok(self.result(target, acc))
                    }
                }
            }
        }
    }

    fn output(&mut self, target: Option<u32>, fresh: &mut Vec<u32>) -> u32 {
        target.unwrap_or_else(|| {
            let r = self.fresh();
            fresh.push(r);
            r
        })
    }

    fn result(&self, target: Option<u32>, out: u32) -> Operand {
        if target.is_some() {
            Operand::Target
        } else {
            Operand::Var(out)
        }
    }

    /// Turns a constant operand into a fresh variable pinned to it.
    fn as_var(&mut self, o: Operand, cons: &mut Vec<Compiled>, fresh: &mut Vec<u32>) -> Result<u32> {
        match o {
            Operand::Var(x) => Ok(x),
            Operand::Const(c) => {
                let v = self.fresh();
                fresh.push(v);
                cons.push(self.constant(&c, v)?);
                Ok(v)
            }
            Operand::Target => unreachable!("no target passed down"),
        }
    }

    /// Conjunction of the constraints, projecting each fresh variable as soon
    /// as no later constraint mentions it.
    fn close(&self, cons: Vec<Compiled>, fresh: &[u32]) -> Result<Compiled> {
        let mut acc = Compiled::Const(true);
        let uses: Vec<Vec<u32>> = cons.iter().map(vars_of).collect();
        for (i, c) in cons.into_iter().enumerate() {
            acc = and(acc, c)?;
            for &v in fresh {
                if vars_of(&acc).contains(&v) && !uses[i + 1..].iter().any(|u| u.contains(&v)) {
                    acc = exists(v, acc)?;
                }
            }
        }
        Ok(acc)
    }

    // formulas -------------------------------------------------------------

    fn formula(&mut self, f: &Formula) -> Result<Compiled> {
        match f {
            Formula::True => Ok(Compiled::Const(true)),
            Formula::False => Ok(Compiled::Const(false)),
            Formula::Eq(a, b) => self.equation(a, b),
            Formula::LeLen(a, b) => self.length(a, b, false),
            Formula::LtLen(a, b) => self.length(a, b, true),
            Formula::Not(g) => Ok(not(self.formula(g)?)),
            Formula::And(gs) => {
                let mut acc = Compiled::Const(true);
                for g in gs {
                    acc = and(acc, self.formula(g)?)?;
                    if matches!(acc, Compiled::Const(false)) {
                        break;
                    }
                }
                Ok(acc)
            }
            Formula::Or(gs) => {
                let mut acc = Compiled::Const(false);
                for g in gs {
                    acc = or(acc, self.formula(g)?)?;
                    if matches!(acc, Compiled::Const(true)) {
                        break;
                    }
                }
                Ok(acc)
            }
            Formula::Implies(a, b) => {
                let lhs = not(self.formula(a)?);
                if matches!(lhs, Compiled::Const(true)) {
                    return Ok(lhs);
                }
                or(lhs, self.formula(b)?)
            }
            Formula::Exists(vs, g) => {
                let depth = self.scope.len();
                let ids: Vec<u32> = vs.iter().map(|v| self.bind(v)).collect();
                let body = self.formula(g);
                self.scope.truncate(depth);
                let mut acc = body?;
                for id in ids.into_iter().rev() {
                    acc = exists(id, acc)?;
                }
                Ok(acc)
            }
            Formula::Forall(vs, g) => {
                let depth = self.scope.len();
                let ids: Vec<u32> = vs.iter().map(|v| self.bind(v)).collect();
                let body = self.formula(g);
                self.scope.truncate(depth);
                let mut acc = not(body?);
                for id in ids.into_iter().rev() {
                    acc = exists(id, acc)?;
                }
                Ok(not(acc))
            }
            Formula::MacroCall(name, args) => self.macro_call(name, args),
        }
    }

    fn equation(&mut self, a: &Term, b: &Term) -> Result<Compiled> {
        let mut cons = Vec::new();
        let mut fresh = Vec::new();
        // write a compound side straight into a variable on the other side
        let (lhs, rhs) = match (a, b) {
            (Term::Var(_), Term::Var(_)) => (a, b),
            (_, Term::Var(_)) => (b, a),
            _ => (a, b),
        };
        let o1 = self.term(lhs, None, &mut cons, &mut fresh)?;
        let o2 = match o1 {
            Operand::Var(x) if !matches!(rhs, Term::Var(_) | Term::Const(_)) => {
                self.term(rhs, Some(x), &mut cons, &mut fresh)?
            }
            _ => self.term(rhs, None, &mut cons, &mut fresh)?,
        };
        match (o1, o2) {
            (_, Operand::Target) => {}
            (Operand::Const(c), Operand::Const(d)) => return Ok(Compiled::Const(c == d)),
            (Operand::Var(x), Operand::Var(y)) => {
                if x == y {
                    return self.close(cons, &fresh);
                }
                let eq = self.relation("eq")?;
                cons.push(atom(&eq, &[x, y])?);
            }
            (Operand::Var(x), Operand::Const(c)) | (Operand::Const(c), Operand::Var(x)) => {
                cons.push(self.constant(&c, x)?);
            }
            (Operand::Target, _) => unreachable!("no target passed down"),
        }
        self.close(cons, &fresh)
    }

    fn length(&mut self, a: &Term, b: &Term, strict: bool) -> Result<Compiled> {
        let mut cons = Vec::new();
        let mut fresh = Vec::new();
        let o1 = self.term(a, None, &mut cons, &mut fresh)?;
        let o2 = self.term(b, None, &mut cons, &mut fresh)?;
        if let (Operand::Const(c), Operand::Const(d)) = (&o1, &o2) {
            let (lc, ld) = (numeration::rep_len(c, self.base)?, numeration::rep_len(d, self.base)?);
            return Ok(Compiled::Const(if strict { lc < ld } else { lc <= ld }));
        }
        let x = self.as_var(o1, &mut cons, &mut fresh)?;
        let y = self.as_var(o2, &mut cons, &mut fresh)?;
        let rel = self.relation(if strict { "ltlen" } else { "lelen" })?;
        cons.push(atom(&rel, &[x, y])?);
        self.close(cons, &fresh)
    }

    fn macro_call(&mut self, name: &str, args: &[Term]) -> Result<Compiled> {
        let expected = macros::arity(name).ok_or_else(|| Error::UnknownMacro {
            name: name.to_string(),
            candidates: macros::names().iter().map(|s| s.to_string()).collect(),
        })?;
        if args.len() != expected {
            return Err(Error::Arity { name: name.to_string(), expected, found: args.len() });
        }
        if macros::is_native(name) {
            return self.native_mod(args);
        }
        let mut cons = Vec::new();
        let mut fresh = Vec::new();
        // pattern: variables by first occurrence, constants literally
        let mut key = name.to_string();
        let mut ids: Vec<u32> = Vec::new();
        let mut template_args: Vec<Term> = Vec::new();
        for a in args {
            match a {
                Term::Const(l) => {
                    key.push_str(&format!("|c{l}"));
                    template_args.push(a.clone());
                }
                _ => {
                    let o = self.term(a, None, &mut cons, &mut fresh)?;
                    let x = match o {
                        Operand::Const(c) => {
                            let l = super::ast::Literal::new(c.num().clone(), c.kexp());
                            key.push_str(&format!("|c{l}"));
                            template_args.push(Term::Const(l));
                            continue;
                        }
                        o => self.as_var(o, &mut cons, &mut fresh)?,
                    };
                    let slot = match ids.iter().position(|&y| y == x) {
                        Some(i) => i,
                        None => {
                            ids.push(x);
                            ids.len() - 1
                        }
                    };
                    key.push_str(&format!("|v{slot}"));
                    template_args.push(Term::Var(format!("%{slot}")));
                }
            }
        }
        let cached = match self.macros.get(&key) {
            Some(c) => c.clone(),
            None => {
                let c = self.compile_template(name, &template_args, ids.len())?;
                self.macros.insert(key, c.clone());
                c
            }
        };
        let call = match cached {
            CachedMacro::Const(b) => Compiled::Const(b),
            CachedMacro::Aut { aut, params } => {
                let tape_ids: Vec<u32> = params.iter().map(|&i| ids[i]).collect();
                atom(&aut, &tape_ids)?
            }
        };
        cons.push(call);
        self.close(cons, &fresh)
    }

    fn compile_template(&mut self, name: &str, args: &[Term], slots: usize) -> Result<CachedMacro> {
        let mut used = BTreeSet::new();
        for t in args {
            t.collect_vars(&mut used);
        }
        let mut gen = |stem: &str| macros::fresh_name(stem, &mut used);
        let body = macros::expand_with(name, args, self.base, &mut gen)?;
        let saved = std::mem::take(&mut self.scope);
        let slot_ids: Vec<u32> = (0..slots).map(|i| self.bind(&format!("%{i}"))).collect();
        let res = self.formula(&body);
        self.scope = saved;
        Ok(match res? {
            Compiled::Const(b) => CachedMacro::Const(b),
            Compiled::Aut { vars, aut } => CachedMacro::Aut {
                aut,
                params: vars
                    .iter()
                    .map(|v| slot_ids.iter().position(|s| s == v).expect("template is closed"))
                    .collect(),
            },
        })
    }

    fn native_mod(&mut self, args: &[Term]) -> Result<Compiled> {
        let nat = |t: &Term| match t {
            Term::Const(l) => l.as_nat(),
            _ => None,
        };
        let (n, r) = match (nat(&args[1]), nat(&args[2])) {
            (Some(n), Some(r)) => (n, r),
            _ => return Err(Error::InvalidArgument("`mod(x, n, r)` needs natural number constants n and r".into())),
        };
        let mut cons = Vec::new();
        let mut fresh = Vec::new();
        match self.term(&args[0], None, &mut cons, &mut fresh)? {
            Operand::Const(c) => Ok(Compiled::Const(r < n && numeration::mod_value(&c, n, self.base)? == r)),
            o => {
                let x = self.as_var(o, &mut cons, &mut fresh)?;
                let remainders: Vec<u64> = if r < n { vec![r] } else { vec![] };
                let key = format!("mod{n}|{r}");
                let aut = match self.relations.get(&key) {
                    Some(a) => a.clone(),
                    None => {
                        let a = builtins::build_modulo(self.base, n, &remainders)?
                            .with_direction(Direction::RightToLeft)?;
                        self.relations.insert(key, a.clone());
                        a
                    }
                };
                cons.push(atom(&aut, &[x])?);
                self.close(cons, &fresh)
            }
        }
    }
}

fn vars_of(c: &Compiled) -> Vec<u32> {
    match c {
        Compiled::Const(_) => Vec::new(),
        Compiled::Aut { vars, .. } => vars.clone(),
    }
}

/// Places a relation automaton on the variables `ids` (tape `t` carries
/// `ids[t]`); repeated variables are identified.
fn atom(aut: &MultiTapeAutomaton, ids: &[u32]) -> Result<Compiled> {
    let mut aut = aut.with_direction(Direction::RightToLeft)?;
    let mut ids = ids.to_vec();
    'outer: loop {
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if ids[i] == ids[j] {
                    if ids.len() == 2 {
                        let diag = aut.identify_tapes(i, j)?.minimize();
                        return Ok(Compiled::Const(!diag.is_empty())).and_then(|c| {
                            // keep the surviving variable when the relation is proper
                            if diag.is_empty() {
                                Ok(c)
                            } else {
                                let single = diag.project(j)?;
                                finish(vec![ids[i]], single)
                            }
                        });
                    }
                    aut = aut.identify_tapes(i, j)?.project(j)?;
                    ids.remove(j);
                    continue 'outer;
                }
            }
        }
        break;
    }
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by_key(|&t| ids[t]);
    let mut perm = vec![0; ids.len()];
    for (rank, &t) in order.iter().enumerate() {
        perm[t] = rank;
    }
    let aut = aut.permute_tapes(&perm)?;
    let mut vars = ids;
    vars.sort_unstable();
    finish(vars, aut)
}

/// Minimizes and collapses trivial relations to constants.
fn finish(vars: Vec<u32>, aut: MultiTapeAutomaton) -> Result<Compiled> {
    let aut = aut.minimize();
    if aut.is_empty() {
        return Ok(Compiled::Const(false));
    }
    if aut.states() == 1 && aut.is_complete() && aut.is_final(0) {
        return Ok(Compiled::Const(true));
    }
    Ok(Compiled::Aut { vars, aut })
}

/// Re-tapes `aut` (over `vars`) onto the superset `target`.
fn align(aut: &MultiTapeAutomaton, vars: &[u32], target: &[u32]) -> Result<MultiTapeAutomaton> {
    if vars == target {
        return Ok(aut.clone());
    }
    let map: Vec<usize> =
        vars.iter().map(|v| target.iter().position(|t| t == v).expect("target covers vars")).collect();
    aut.reindex_tapes(target.len(), &map)
}

fn union_vars(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut v: Vec<u32> = a.iter().chain(b).copied().collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn combine(a: Compiled, b: Compiled, op: BoolOp) -> Result<Compiled> {
    match (a, b) {
        (Compiled::Const(x), other) | (other, Compiled::Const(x)) => Ok(match (op, x) {
            (BoolOp::And, true) | (BoolOp::Or, false) => other,
            (BoolOp::And, false) => Compiled::Const(false),
            (BoolOp::Or, true) => Compiled::Const(true),
        }),
        (Compiled::Aut { vars: va, aut: a }, Compiled::Aut { vars: vb, aut: b }) => {
            let vars = union_vars(&va, &vb);
            let a = align(&a, &va, &vars)?;
            let b = align(&b, &vb, &vars)?;
            finish(vars, a.product(&b, op)?)
        }
    }
}

fn and(a: Compiled, b: Compiled) -> Result<Compiled> {
    combine(a, b, BoolOp::And)
}

fn or(a: Compiled, b: Compiled) -> Result<Compiled> {
    combine(a, b, BoolOp::Or)
}

fn not(a: Compiled) -> Compiled {
    match a {
        Compiled::Const(b) => Compiled::Const(!b),
        Compiled::Aut { vars, aut } => Compiled::Aut { vars, aut: aut.complement().minimize() },
    }
}

fn exists(id: u32, a: Compiled) -> Result<Compiled> {
    match a {
        Compiled::Aut { vars, aut } => match vars.iter().position(|&v| v == id) {
            None => Ok(Compiled::Aut { vars, aut }),
            Some(_) if vars.len() == 1 => Ok(Compiled::Const(!aut.is_empty())),
            Some(t) => {
                let mut rest = vars.clone();
                rest.remove(t);
                finish(rest, aut.project(t)?)
            }
        },
        c => Ok(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse;

    fn b32() -> Base {
        Base::new(3, 2).unwrap()
    }

    fn v(s: &str) -> QkNumber {
        QkNumber::parse(s, b32()).unwrap()
    }

    fn c(text: &str, vars: &[&str]) -> MultiTapeAutomaton {
        compile(&parse(text).unwrap(), vars, b32()).unwrap()
    }

    #[test]
    fn doubling_matches_multiplication() {
        let a = c("x + x = y", &["x", "y"]);
        assert!(a.accepts_value(&[v("1"), v("2")]).unwrap());
        assert!(a.accepts_value(&[v("1/2"), v("1")]).unwrap());
        assert!(!a.accepts_value(&[v("1"), v("3")]).unwrap());
        let b = c("2*x = y", &["x", "y"]);
        assert!(a.equivalent(&b).unwrap().is_none());
        let five = c("5*x = y", &["x", "y"]);
        assert!(five.accepts_value(&[v("3/2"), v("15/2")]).unwrap());
        assert!(!five.accepts_value(&[v("3/2"), v("7")]).unwrap());
    }

    #[test]
    fn quantifiers_and_constants() {
        let u = c("E x. x = x", &["y"]);
        assert!(u.is_universal());
        let one = c("y = 1/q^1 + 1/q^1", &["y"]);
        assert!(one.accepts_value(&[v("1")]).unwrap());
        assert!(!one.accepts_value(&[v("2")]).unwrap());
        assert!(matches!(compile(&parse("y = 1/q^2").unwrap(), &["y"], b32()), Err(Error::NotMember { .. })));
        assert!(matches!(compile(&parse("y = z").unwrap(), &["y"], b32()), Err(Error::UnboundVariable(_))));
        assert!(decide(&parse("A x. E y. x + x = y").unwrap(), b32()).unwrap());
        assert!(!decide(&parse("E x. x + x = 1/q^1").unwrap(), b32()).unwrap());
        assert!(decide(&parse("E x. x + x + x = 3/q^1").unwrap(), b32()).unwrap());
    }

    #[test]
    fn shadowing_and_repeated_variables() {
        let a = c("x = y & (E x. x + x = y)", &["x", "y"]);
        assert!(a.accepts_value(&[v("2"), v("2")]).unwrap());
        assert!(!a.accepts_value(&[v("3/4"), v("3/4")]).unwrap());
        let b = c("V(x) = x", &["x"]);
        assert!(b.accepts_value(&[v("3/2")]).unwrap());
        assert!(!b.accepts_value(&[v("2")]).unwrap());
    }

    #[test]
    fn tape_order_follows_request() {
        let a = c("x <len y", &["y", "x"]);
        assert!(a.accepts_value(&[v("2"), v("1")]).unwrap());
        assert!(!a.accepts_value(&[v("1"), v("2")]).unwrap());
        let padded = c("x = 1", &["x", "y"]);
        assert!(padded.accepts_value(&[v("1"), v("7/4")]).unwrap());
    }
}
