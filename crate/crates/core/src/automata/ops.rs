use std::collections::HashMap;

use super::nfa::Nfa;
use super::{state_budget, Alphabet, Direction, MultiTapeAutomaton, NONE};
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BoolOp {
    And,
    Or,
}

impl MultiTapeAutomaton {
    /// Synchronous product over reachable pairs; a missing transition acts as
    /// a non-final sink, so `Or` yields the union.
    pub fn product(&self, other: &Self, op: BoolOp) -> Result<Self> {
        self.check_compatible(other)?;
        let converted;
        let other = if other.direction == self.direction {
            other
        } else {
            converted = other.reverse()?;
            &converted
        };
        let k = self.alphabet.size();
        let budget = state_budget();
        let mut index: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(self.initial, other.initial)];
        index.insert(pairs[0], 0);
        let mut delta = Vec::new();
        let mut finals = Vec::new();
        let fin = |a: &Self, s: u32| s != NONE && a.is_final(s);
        let mut cur = 0;
        while cur < pairs.len() {
            let (s, t) = pairs[cur];
            finals.push(match op {
                BoolOp::And => fin(self, s) && fin(other, t),
                BoolOp::Or => fin(self, s) || fin(other, t),
            });
            for letter in 0..k {
                let s2 = if s == NONE { NONE } else { self.row(s)[letter] };
                let t2 = if t == NONE { NONE } else { other.row(t)[letter] };
                let dead = match op {
                    BoolOp::And => s2 == NONE || t2 == NONE,
                    BoolOp::Or => s2 == NONE && t2 == NONE,
                };
                if dead {
                    delta.push(NONE);
                    continue;
                }
                let id = *index.entry((s2, t2)).or_insert_with(|| {
                    pairs.push((s2, t2));
                    (pairs.len() - 1) as u32
                });
                delta.push(id);
            }
            if pairs.len() > budget {
                return Err(Error::StateBudget { budget });
            }
            cur += 1;
        }
        Ok(Self::from_table(self.base, self.alphabet, self.direction, 0, finals, delta, self.padded && other.padded))
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(self.product(other, BoolOp::And)?.minimize())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(self.product(other, BoolOp::Or)?.minimize())
    }

    /// Complement with respect to all tuple words. Closure under leading
    /// zero columns is inherited from the input.
    pub fn complement(&self) -> Self {
        let mut c = self.complete();
        for f in &mut c.finals {
            *f = !*f;
        }
        c
    }

    /// Moves old tape `t` to position `map[t]` of a `new_tapes`-tape
    /// automaton; unmapped new tapes are ignored (read but unconstrained).
    pub fn reindex_tapes(&self, new_tapes: usize, map: &[usize]) -> Result<Self> {
        let d = self.tapes();
        if map.len() != d {
            return Err(Error::Shape(format!("tape map of length {} for {d} tapes", map.len())));
        }
        let mut used = vec![false; new_tapes];
        for &m in map {
            if m >= new_tapes {
                return Err(Error::TapeIndex { index: m, tapes: new_tapes });
            }
            if std::mem::replace(&mut used[m], true) {
                return Err(Error::Shape(format!("tape map sends two tapes to {m}")));
            }
        }
        let alphabet = Alphabet::new(self.base, new_tapes)?;
        let old_of_new: Vec<usize> = (0..alphabet.size())
            .map(|l| {
                let col: Vec<u32> = map.iter().map(|&m| alphabet.digit(l, m)).collect();
                self.alphabet.encode(&col)
            })
            .collect();
        let n = self.states();
        let mut delta = Vec::with_capacity(n * alphabet.size());
        for s in 0..n as u32 {
            let row = self.row(s);
            delta.extend(old_of_new.iter().map(|&old| row[old]));
        }
        Ok(Self::from_table(self.base, alphabet, self.direction, self.initial, self.finals.clone(), delta, self.padded))
    }

    /// Inserts an unconstrained tape at `position`.
    pub fn cylindrify(&self, position: usize) -> Result<Self> {
        let d = self.tapes();
        if position > d {
            return Err(Error::TapeIndex { index: position, tapes: d + 1 });
        }
        let map: Vec<usize> = (0..d).map(|t| if t < position { t } else { t + 1 }).collect();
        self.reindex_tapes(d + 1, &map)
    }

    /// Old tape `t` becomes tape `perm[t]`.
    pub fn permute_tapes(&self, perm: &[usize]) -> Result<Self> {
        self.reindex_tapes(self.tapes(), perm)
    }

    /// Keeps only the transitions whose labels agree on tapes `i` and `j`.
    pub fn identify_tapes(&self, i: usize, j: usize) -> Result<Self> {
        let d = self.tapes();
        for t in [i, j] {
            if t >= d {
                return Err(Error::TapeIndex { index: t, tapes: d });
            }
        }
        let mut out = self.clone();
        let k = self.alphabet.size();
        for (idx, t) in out.delta.iter_mut().enumerate() {
            let l = idx % k;
            if self.alphabet.digit(l, i) != self.alphabet.digit(l, j) {
                *t = NONE;
            }
        }
        Ok(out)
    }

    /// Erases tape `tape`, determinizes, restores closure under leading zero
    /// columns and minimizes. Realizes existential quantification.
    pub fn project(&self, tape: usize) -> Result<Self> {
        let d = self.tapes();
        if tape >= d {
            return Err(Error::TapeIndex { index: tape, tapes: d });
        }
        if d < 2 {
            return Err(Error::Shape("cannot erase the only tape".into()));
        }
        let alphabet = Alphabet::new(self.base, d - 1)?;
        let mut nfa = Nfa::new(self.base, alphabet, self.states());
        nfa.initial.push(self.initial);
        nfa.finals.clone_from(&self.finals);
        let erase = |l: usize| {
            let mut col = self.alphabet.decode(l);
            col.remove(tape);
            alphabet.encode(&col)
        };
        let erased: Vec<usize> = (0..self.alphabet.size()).map(erase).collect();
        for (s, l, t) in self.transitions() {
            nfa.add_edge(s, erased[l], t);
        }
        let trimmed = nfa.determinize(self.direction)?.minimize();
        trimmed.pad_close()
    }

    /// Same language, read in the opposite direction.
    pub fn reverse(&self) -> Result<Self> {
        let mut r = self.reversed_nfa().determinize(self.direction.flipped())?.minimize();
        r.padded = self.padded;
        r.name.clone_from(&self.name);
        Ok(r)
    }

    /// Same language, read in direction `dir`.
    pub fn with_direction(&self, dir: Direction) -> Result<Self> {
        if self.direction == dir {
            Ok(self.clone())
        } else {
            self.reverse()
        }
    }

    /// `0* . strip(L)`: acceptance becomes a function of the tape values.
    pub fn pad_close(&self) -> Result<Self> {
        if self.padded {
            return Ok(self.clone());
        }
        let mut out = match self.direction {
            Direction::RightToLeft => self.pad_close_rl()?,
            Direction::LeftToRight => self.pad_close_lr()?,
        };
        out.padded = true;
        out.name.clone_from(&self.name);
        Ok(out)
    }

    /// Reading right to left, the leading zeros come last: a word is accepted
    /// iff the state reached after its last nonzero column can reach a final
    /// state on zeros. States are pairs (run state, that flag).
    fn pad_close_rl(&self) -> Result<Self> {
        let a = self.complete();
        let n = a.states();
        let k = a.alphabet.size();
        let mut good = a.finals.clone();
        loop {
            let mut changed = false;
            for s in 0..n {
                let z = a.row(s as u32)[0] as usize;
                if !good[s] && good[z] {
                    good[s] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let code = |s: u32, g: bool| 2 * s + g as u32;
        let mut delta = vec![NONE; 2 * n * k];
        let mut finals = vec![false; 2 * n];
        for s in 0..n as u32 {
            for g in [false, true] {
                let c = code(s, g) as usize;
                finals[c] = g;
                let row = a.row(s);
                delta[c * k] = code(row[0], g);
                for l in 1..k {
                    let t = row[l];
                    delta[c * k + l] = code(t, good[t as usize]);
                }
            }
        }
        let init = code(a.initial, good[a.initial as usize]);
        let paired = Self::from_table(a.base, a.alphabet, a.direction, init, finals, delta, true);
        Ok(paired.minimize())
    }

    /// Reading left to right, the leading zeros come first: a fresh initial
    /// state loops on zeros and then continues like any state reachable from
    /// the old initial state by zeros.
    fn pad_close_lr(&self) -> Result<Self> {
        let n = self.states();
        let k = self.alphabet.size();
        let mut zset = vec![self.initial];
        let mut seen = vec![false; n];
        seen[self.initial as usize] = true;
        let mut s = self.initial;
        while let Some(t) = self.next(s, 0) {
            if seen[t as usize] {
                break;
            }
            seen[t as usize] = true;
            zset.push(t);
            s = t;
        }
        let fresh = n as u32;
        let mut nfa = self.to_nfa();
        nfa.edges.push(Vec::new());
        nfa.finals.push(zset.iter().any(|&z| self.is_final(z)));
        nfa.initial = vec![fresh];
        nfa.add_edge(fresh, 0, fresh);
        for &z in &zset {
            for l in 1..k {
                if let Some(t) = self.next(z, l) {
                    nfa.add_edge(fresh, l, t);
                }
            }
        }
        Ok(nfa.determinize(Direction::LeftToRight)?.minimize())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeration::{Base, TupleWord};

    fn b32() -> Base {
        Base::new(3, 2).unwrap()
    }

    fn w(s: &str) -> TupleWord {
        TupleWord::parse_tapes(&[s], b32()).unwrap()
    }

    /// Accepts exactly the single word `word`.
    fn single(word: &str, dir: Direction) -> MultiTapeAutomaton {
        let digits: Vec<u32> = word.chars().map(|c| c.to_digit(10).unwrap()).collect();
        let mut a = MultiTapeAutomaton::new(b32(), 1, dir, digits.len() + 1).unwrap();
        let order: Vec<u32> = match dir {
            Direction::LeftToRight => digits.clone(),
            Direction::RightToLeft => digits.iter().rev().copied().collect(),
        };
        for (i, &d) in order.iter().enumerate() {
            a.set_transition(i as u32, &[d], i as u32 + 1).unwrap();
        }
        a.set_final(digits.len() as u32, true).unwrap();
        a
    }

    #[test]
    fn pad_close_both_directions() {
        for dir in [Direction::LeftToRight, Direction::RightToLeft] {
            let a = single("021", dir).pad_close().unwrap();
            assert!(a.is_padded());
            for word in ["21", "021", "0021", "00021"] {
                assert!(a.accepts(&w(word)).unwrap(), "{dir} {word}");
            }
            for word in ["", "1", "121", "210", "0"] {
                assert!(!a.accepts(&w(word)).unwrap(), "{dir} {word}");
            }
            assert!(a.check_padded());
        }
    }

    #[test]
    fn reverse_keeps_language() {
        let a = single("201", Direction::LeftToRight);
        let r = a.reverse().unwrap();
        assert_eq!(r.direction(), Direction::RightToLeft);
        assert!(r.accepts(&w("201")).unwrap());
        assert!(!r.accepts(&w("102")).unwrap());
    }

    #[test]
    fn cylindrify_then_project() {
        let a = single("21", Direction::RightToLeft).pad_close().unwrap();
        let c = a.cylindrify(0).unwrap();
        assert_eq!(c.states(), a.states());
        let two = TupleWord::parse_tapes(&["12", "21"], b32()).unwrap();
        assert!(c.accepts(&two).unwrap());
        let back = c.project(0).unwrap();
        assert!(back.equivalent(&a).unwrap().is_none());
    }
}
