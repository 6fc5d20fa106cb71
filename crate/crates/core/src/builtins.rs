//! Constructors for the concrete automata of rational base arithmetic.
//!
//! Every builder returns a padded automaton; all but [`build_modulo`] read
//! right to left.

use num_rational::BigRational;

use crate::automata::{Direction, MultiTapeAutomaton};
use crate::error::{Error, Result};
use crate::logic;
use crate::numeration::{self, Base, QkNumber};

/// Largest carry of the addition automaton: `1 + floor((p-2)/(p-q))`.
pub fn addition_carry_bound(base: Base) -> u32 {
    1 + (base.p() - 2) / (base.p() - base.q())
}

/// `{(x, y, z) : x + y = z}`; states are carries, `q s + a + b = p s' + c`.
pub fn build_addition(base: Base) -> Result<MultiTapeAutomaton> {
    let (p, q) = (base.p(), base.q());
    let m = addition_carry_bound(base);
    let mut aut = MultiTapeAutomaton::new(base, 3, Direction::RightToLeft, m as usize + 1)?;
    for s in 0..=m {
        for a in 0..p {
            for b in 0..p {
                let total = q * s + a + b;
                let (next, c) = (total / p, total % p);
                if next <= m {
                    aut.set_transition(s, &[a, b, c], next)?;
                }
            }
        }
    }
    aut.set_final(0, true)?;
    aut.mark_padded()?;
    Ok(aut.with_name("add"))
}

/// All `d` tapes carry the same value.
pub fn build_equality(base: Base, d: usize) -> Result<MultiTapeAutomaton> {
    let mut aut = MultiTapeAutomaton::new(base, d, Direction::RightToLeft, 1)?;
    for a in 0..base.p() {
        aut.set_transition(0, &vec![a; d], 0)?;
    }
    aut.set_final(0, true)?;
    aut.mark_padded()?;
    Ok(aut.with_name("eq"))
}

/// `|rep x| <= |rep y|`.
pub fn build_le_len(base: Base) -> Result<MultiTapeAutomaton> {
    build_len_order(base, false)
}

/// `|rep x| < |rep y|`.
pub fn build_lt_len(base: Base) -> Result<MultiTapeAutomaton> {
    build_len_order(base, true)
}

/// Read left to right: state 0 while both tapes are still in their leading
/// zeros, state 1 once `y` has started no later than `x`.
fn build_len_order(base: Base, strict: bool) -> Result<MultiTapeAutomaton> {
    let p = base.p();
    let mut aut = MultiTapeAutomaton::new(base, 2, Direction::LeftToRight, 2)?;
    aut.set_transition(0, &[0, 0], 0)?;
    for b in 1..p {
        aut.set_transition(0, &[0, b], 1)?;
        if !strict {
            for a in 1..p {
                aut.set_transition(0, &[a, b], 1)?;
            }
        }
    }
    for a in 0..p {
        for b in 0..p {
            aut.set_transition(1, &[a, b], 1)?;
        }
    }
    aut.set_final(1, true)?;
    aut.set_final(0, !strict)?;
    aut.mark_padded()?;
    let name = if strict { "ltlen" } else { "lelen" };
    Ok(aut.reverse()?.with_name(name))
}

/// `y = V_{p/q}(x)`: `rep y` is the digit `q` followed by as many zeros as
/// `rep x` ends with.
pub fn build_vpq(base: Base) -> Result<MultiTapeAutomaton> {
    let (p, q) = (base.p(), base.q());
    let mut aut = MultiTapeAutomaton::new(base, 2, Direction::RightToLeft, 2)?;
    aut.set_transition(0, &[0, 0], 0)?;
    for a in 1..p {
        aut.set_transition(0, &[a, q], 1)?;
    }
    for a in 0..p {
        aut.set_transition(1, &[a, 0], 1)?;
    }
    aut.set_final(0, true)?;
    aut.set_final(1, true)?;
    aut.mark_padded()?;
    Ok(aut.with_name("vpq"))
}

/// Left to right over `Z/nZ`: reading `a` from `s` leads to
/// `q^-1 (s p + a) mod n`, so a run ends in the generalized residue of the
/// value read so far. Accepts the residues in `remainders`.
pub fn build_modulo(base: Base, n: u64, remainders: &[u64]) -> Result<MultiTapeAutomaton> {
    let q_inv = numeration::q_inverse(n, base)?;
    if n > u32::MAX as u64 {
        return Err(Error::InvalidArgument(format!("modulus {n} is too large")));
    }
    let mut aut = MultiTapeAutomaton::new(base, 1, Direction::LeftToRight, n as usize)?;
    for s in 0..n {
        for a in 0..base.p() as u64 {
            let t = (s * base.p() as u64 + a) % n * q_inv % n;
            aut.set_transition(s as u32, &[a as u32], t as u32)?;
        }
    }
    for &r in remainders {
        if r >= n {
            return Err(Error::InvalidArgument(format!("remainder {r} is not below {n}")));
        }
        aut.set_final(r as u32, true)?;
    }
    aut.mark_padded()?;
    Ok(aut.with_name(format!("mod{n}")))
}

/// `{c}`: a chain over the digits of `rep c`, least significant first, with
/// a zero loop at the end.
pub fn build_constant(base: Base, c: &QkNumber) -> Result<MultiTapeAutomaton> {
    let rep = numeration::represent(c, base).ok_or_else(|| numeration::not_member(c, base))?;
    let len = rep.len();
    let mut aut = MultiTapeAutomaton::new(base, 1, Direction::RightToLeft, len + 1)?;
    for (i, &d) in rep.digits().iter().rev().enumerate() {
        aut.set_transition(i as u32, &[d], i as u32 + 1)?;
    }
    aut.set_transition(len as u32, &[0], len as u32)?;
    aut.set_final(len as u32, true)?;
    aut.mark_padded()?;
    Ok(aut.with_name(format!("const {c}")))
}

/// Members `z` with `r < z < s`. Extending a word on the right never lowers
/// its value, so the search below `s` is finite.
pub fn build_interval(base: Base, r: &BigRational, s: &BigRational) -> Result<MultiTapeAutomaton> {
    if r >= s {
        return Err(Error::InvalidArgument(format!("empty interval ({r}, {s})")));
    }
    let mut members: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(word) = stack.pop() {
        let value = numeration::evaluate(&numeration::Word::new(word.clone(), base)?).to_rational();
        if &value >= s {
            continue;
        }
        if &value > r {
            members.push(word.clone());
        }
        let first = if word.is_empty() { 1 } else { 0 };
        for d in first..base.p() {
            let mut next = word.clone();
            next.push(d);
            stack.push(next);
        }
    }
    // trie over the reversed representations
    let mut trie: Vec<Vec<(u32, u32)>> = vec![Vec::new()];
    let mut accept = vec![false];
    for w in &members {
        let mut node = 0usize;
        for &d in w.iter().rev() {
            node = match trie[node].iter().find(|(e, _)| *e == d) {
                Some(&(_, t)) => t as usize,
                None => {
                    trie.push(Vec::new());
                    accept.push(false);
                    let t = trie.len() - 1;
                    trie[node].push((d, t as u32));
                    t
                }
            };
        }
        accept[node] = true;
    }
    let mut aut = MultiTapeAutomaton::new(base, 1, Direction::RightToLeft, trie.len())?;
    for (node, edges) in trie.iter().enumerate() {
        for &(d, t) in edges {
            aut.set_transition(node as u32, &[d], t)?;
        }
        aut.set_final(node as u32, accept[node])?;
    }
    Ok(aut.pad_close()?.minimize().with_name(format!("interval ({r}, {s})")))
}

/// `{(y, z) : (s/t) y = z}`, compiled from `s*y = t*z`.
pub fn build_mult_by_rational(base: Base, s: u64, t: u64) -> Result<MultiTapeAutomaton> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidArgument("numerator and denominator must be positive".into()));
    }
    let f = logic::parse(&format!("{s}*y = {t}*z"))?;
    let aut = logic::compile(&f, &["y", "z"], base)?;
    Ok(aut.with_name(format!("mul {s}/{t}")))
}
