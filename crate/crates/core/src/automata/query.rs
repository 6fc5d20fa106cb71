use std::collections::HashMap;

use super::{Direction, MultiTapeAutomaton, NONE};
use crate::error::Result;
use crate::numeration::{QkNumber, TupleWord};

impl MultiTapeAutomaton {
    pub fn is_empty(&self) -> bool {
        let reach = self.reachable();
        !(0..self.states()).any(|s| reach[s] && self.is_final(s as u32))
    }

    /// Whether every tuple word is accepted.
    pub fn is_universal(&self) -> bool {
        self.complement().is_empty()
    }

    /// Value-level equivalence: both sides are closed under leading zero
    /// columns first. Returns a shortest distinguishing word (without leading
    /// zero columns), or `None` when the automata realise the same relation.
    pub fn equivalent(&self, other: &Self) -> Result<Option<TupleWord>> {
        let a = self.pad_close()?;
        let b = other.pad_close()?;
        Ok(a.language_difference(&b)?.map(|w| w.strip()))
    }

    /// Word-level comparison: a shortest word accepted by exactly one side.
    pub fn language_difference(&self, other: &Self) -> Result<Option<TupleWord>> {
        self.check_compatible(other)?;
        let converted;
        let other = if other.direction == self.direction {
            other
        } else {
            converted = other.reverse()?;
            &converted
        };
        let k = self.alphabet.size();
        let fin = |a: &Self, s: u32| s != NONE && a.is_final(s);
        let start = (self.initial, other.initial);
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        let mut pairs = vec![start];
        let mut parent: Vec<(usize, usize)> = vec![(usize::MAX, 0)];
        index.insert(start, 0);
        let mut cur = 0;
        while cur < pairs.len() {
            let (s, t) = pairs[cur];
            if fin(self, s) != fin(other, t) {
                let mut letters = Vec::new();
                let mut i = cur;
                while parent[i].0 != usize::MAX {
                    letters.push(parent[i].1);
                    i = parent[i].0;
                }
                // `letters` is in reverse reading order
                if self.direction == Direction::LeftToRight {
                    letters.reverse();
                }
                let columns: Vec<Vec<u32>> = letters.iter().map(|&l| self.alphabet.decode(l)).collect();
                return Ok(Some(TupleWord::from_columns(self.base, self.tapes(), &columns)?));
            }
            for l in 0..k {
                let s2 = if s == NONE { NONE } else { self.row(s)[l] };
                let t2 = if t == NONE { NONE } else { other.row(t)[l] };
                if s2 == NONE && t2 == NONE {
                    continue;
                }
                index.entry((s2, t2)).or_insert_with(|| {
                    pairs.push((s2, t2));
                    parent.push((cur, l));
                    pairs.len() - 1
                });
            }
            cur += 1;
        }
        Ok(None)
    }

    /// Checks that `u` is accepted iff `0 u` is, for every tuple word `u`.
    pub fn check_padded(&self) -> bool {
        let a = self.complete();
        let reach = a.reachable();
        match a.direction {
            Direction::RightToLeft => {
                (0..a.states() as u32).all(|s| !reach[s as usize] || a.is_final(s) == a.is_final(a.row(s)[0]))
            }
            Direction::LeftToRight => a.states_equivalent(a.initial, a.row(a.initial)[0]),
        }
    }

    /// Language equivalence of two states of a complete automaton.
    fn states_equivalent(&self, s: u32, t: u32) -> bool {
        let k = self.alphabet.size();
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![(s, t)];
        seen.insert((s, t));
        while let Some((s, t)) = stack.pop() {
            if self.is_final(s) != self.is_final(t) {
                return false;
            }
            for l in 0..k {
                let next = (self.row(s)[l], self.row(t)[l]);
                if next.0 != next.1 && seen.insert(next) {
                    stack.push(next);
                }
            }
        }
        true
    }

    /// Accepted words of length at most `max_len`, shorter first, then
    /// lexicographically by column (tape 0 compared first).
    pub fn enumerate(&self, max_len: usize) -> Result<Vec<TupleWord>> {
        let a = self.with_direction(Direction::LeftToRight)?;
        let k = a.alphabet.size();
        let n = a.states();
        // alive[r][s]: some word of length exactly r leads from s to a final state
        let mut alive = vec![a.finals.clone()];
        for r in 1..=max_len {
            let prev = &alive[r - 1];
            let row: Vec<bool> =
                (0..n as u32).map(|s| a.row(s).iter().any(|&t| t != NONE && prev[t as usize])).collect();
            alive.push(row);
        }
        let mut order: Vec<(Vec<u32>, usize)> = (0..k).map(|l| (a.alphabet.decode(l), l)).collect();
        order.sort();

        let mut out = Vec::new();
        let mut path: Vec<usize> = Vec::new();
        for len in 0..=max_len {
            if alive[len][a.initial as usize] {
                a.enumerate_rec(a.initial, len, &alive, &order, &mut path, &mut out)?;
            }
        }
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        s: u32,
        rem: usize,
        alive: &[Vec<bool>],
        order: &[(Vec<u32>, usize)],
        path: &mut Vec<usize>,
        out: &mut Vec<TupleWord>,
    ) -> Result<()> {
        if rem == 0 {
            let columns: Vec<Vec<u32>> = path.iter().map(|&l| self.alphabet.decode(l)).collect();
            out.push(TupleWord::from_columns(self.base, self.tapes(), &columns)?);
            return Ok(());
        }
        for (_, l) in order {
            let t = self.row(s)[*l];
            if t != NONE && alive[rem - 1][t as usize] {
                path.push(*l);
                self.enumerate_rec(t, rem - 1, alive, order, path, out)?;
                path.pop();
            }
        }
        Ok(())
    }

    /// Value tuples whose joint representation has length at most `max_len`
    /// and is accepted.
    pub fn accepted_values(&self, max_len: usize) -> Result<Vec<Vec<QkNumber>>> {
        Ok(self
            .enumerate(max_len)?
            .into_iter()
            .filter(|w| w.is_empty() || w.column(0).iter().any(|&d| d != 0))
            .map(|w| w.values())
            .collect())
    }
}
