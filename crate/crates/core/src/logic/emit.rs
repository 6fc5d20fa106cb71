//! From an automaton back to a formula: the run of the automaton on the
//! representations is encoded digit by digit in one variable per state.

use super::ast::*;
use crate::automata::{Direction, MultiTapeAutomaton};
use crate::error::Result;

/// Knobs for [`emit_formula_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EmitOptions {
    /// Only constrain the trailing-zero count of the state variables at
    /// position 0, as in the plain initial-state formula. This is too weak
    /// (the position-0 digit of `s0` may be any nonzero digit, which leaves the
    /// run unconstrained) and exists to demonstrate the failure.
    pub literal_xi: bool,
}

/// Complete, right-to-left, minimal, padded; initial state 0.
pub fn normalize(a: &MultiTapeAutomaton) -> Result<MultiTapeAutomaton> {
    let a = a.pad_close()?.with_direction(Direction::RightToLeft)?.minimize().complete();
    debug_assert_eq!(a.initial(), 0);
    Ok(a)
}

/// A formula over `x0, …, x{d-1}` defining the relation recognised by `a`.
pub fn emit_formula(a: &MultiTapeAutomaton) -> Result<Formula> {
    emit_formula_with(a, EmitOptions::default())
}

pub fn emit_formula_with(a: &MultiTapeAutomaton, opts: EmitOptions) -> Result<Formula> {
    let a = normalize(a)?;
    let base = a.base();
    let (p, q) = (base.p() as u64, base.q() as u64);
    let d = a.tapes();
    let m = a.states();
    let xs: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    let ss: Vec<String> = (0..m).map(|i| format!("s{i}")).collect();
    let one = lit(1, 1); // val(1)
    let ten = lit(p, 2); // val(10)
    let basis = |t: &str| Formula::And(vec![call("beta", vec![var("j")]), Formula::LtLen(var("j"), var(t))]);

    // k = val(1 0^K) with K the length of the longest representation
    let mut lambda = vec![call("beta", vec![var("k")])];
    lambda.extend(xs.iter().map(|x| Formula::LtLen(var(x), var("k"))));
    lambda.push(forall(
        &["j"],
        implies(basis("k"), or_all(xs.iter().map(|x| Formula::LeLen(var("j"), var(x))).collect())),
    ));

    // position 0: the run starts in state 0
    let mut xi = vec![call("W", vec![var(&ss[0]), one.clone()])];
    if !opts.literal_xi {
        xi.push(call("digit", vec![var(&ss[0]), one.clone(), nat(1)]));
    }
    for s in &ss[1..] {
        xi.push(Formula::Or(vec![
            exists(
                &["w"],
                Formula::And(vec![call("W", vec![var(s), var("w")]), Formula::LeLen(ten.clone(), var("w"))]),
            ),
            Formula::Eq(var(s), nat(0)),
        ]));
    }

    // one step of the run, from position j to position h
    let alphabet = a.alphabet();
    let mut steps = Vec::new();
    for i in 0..m {
        for letter in 0..alphabet.size() {
            let column = alphabet.decode(letter);
            let target = a.next(i as u32, letter).expect("complete") as usize;
            let mut lhs = vec![call("digit", vec![var(&ss[i]), var("j"), nat(1)])];
            lhs.extend(column.iter().zip(&xs).map(|(&c, x)| call("digit", vec![var(x), var("j"), nat(c as u64)])));
            let mut rhs = vec![call("digit", vec![var(&ss[target]), var("h"), nat(1)])];
            rhs.extend((0..m).filter(|&l| l != target).map(|l| call("digit", vec![var(&ss[l]), var("h"), nat(0)])));
            steps.push(implies(and_all(lhs), and_all(rhs)));
        }
    }
    let mut delta = vec![Formula::Eq(repeat_sum(&var("j"), p), repeat_sum(&var("h"), q))];
    delta.extend(steps);
    let delta = exists(&["h"], and_all(delta));

    let finals: Vec<Formula> =
        a.finals().into_iter().map(|i| call("digit", vec![var(&ss[i as usize]), var("k"), nat(1)])).collect();
    let phi = if finals.is_empty() { Formula::False } else { or_all(finals) };

    let s_refs: Vec<&str> = ss.iter().map(String::as_str).collect();
    let mut body = xi;
    body.push(forall(&["j"], implies(basis("k"), delta)));
    body.push(phi);
    lambda.push(exists(&s_refs, and_all(body)));
    Ok(exists(&["k"], and_all(lambda)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::Base;

    fn count_exists(f: &Formula) -> usize {
        match f {
            Formula::Exists(vs, g) => vs.len() + count_exists(g),
            Formula::And(gs) => gs.iter().map(count_exists).sum(),
            _ => 0,
        }
    }

    #[test]
    fn one_variable_per_state() {
        let b = Base::new(3, 2).unwrap();
        let le = crate::builtins::build_le_len(b).unwrap();
        let f = emit_formula(&le).unwrap();
        let n = normalize(&le).unwrap().states();
        // k, the state variables, and the nested w of the xi conjuncts
        assert_eq!(count_exists(&f), 1 + n);
        let mut free: Vec<String> = f.free_vars().into_iter().collect();
        free.sort();
        assert_eq!(free, vec!["x0", "x1"]);
        assert!(f.to_string().starts_with("E k. beta(k) & x0 <len k & x1 <len k"));
    }

    #[test]
    fn empty_language_has_false_final_condition() {
        let b = Base::new(3, 2).unwrap();
        let e = MultiTapeAutomaton::empty(b, 1, Direction::RightToLeft).unwrap();
        let f = emit_formula(&e).unwrap();
        assert!(f.to_string().contains("false"));
    }
}
