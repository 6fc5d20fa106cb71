use std::collections::HashMap;

use super::{state_budget, Alphabet, Direction, MultiTapeAutomaton, NONE};
use crate::error::{Error, Result};
use crate::numeration::Base;

/// Nondeterministic intermediate used by reversal, projection and padding.
pub(crate) struct Nfa {
    pub base: Base,
    pub alphabet: Alphabet,
    pub initial: Vec<u32>,
    pub finals: Vec<bool>,
    /// Per state, `(letter, target)` pairs sorted and deduplicated.
    pub edges: Vec<Vec<(u32, u32)>>,
}

impl Nfa {
    pub fn new(base: Base, alphabet: Alphabet, states: usize) -> Nfa {
        Nfa { base, alphabet, initial: Vec::new(), finals: vec![false; states], edges: vec![Vec::new(); states] }
    }

    pub fn add_edge(&mut self, s: u32, letter: usize, t: u32) {
        self.edges[s as usize].push((letter as u32, t));
    }

    fn normalize(&mut self) {
        for e in &mut self.edges {
            e.sort_unstable();
            e.dedup();
        }
        self.initial.sort_unstable();
        self.initial.dedup();
    }

    /// Subset construction; the empty set becomes a missing transition.
    pub fn determinize(mut self, direction: Direction) -> Result<MultiTapeAutomaton> {
        self.normalize();
        let budget = state_budget();
        let k = self.alphabet.size();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut sets: Vec<Vec<u32>> = Vec::new();
        let mut delta: Vec<u32> = Vec::new();
        let mut finals: Vec<bool> = Vec::new();

        let start = self.initial.clone();
        index.insert(start.clone(), 0);
        sets.push(start);
        let mut buf: Vec<(u32, u32)> = Vec::new();
        let mut cur = 0usize;
        while cur < sets.len() {
            let set = std::mem::take(&mut sets[cur]);
            finals.push(set.iter().any(|&s| self.finals[s as usize]));
            let mut row = vec![NONE; k];
            buf.clear();
            for &s in &set {
                buf.extend_from_slice(&self.edges[s as usize]);
            }
            buf.sort_unstable();
            buf.dedup();
            let mut i = 0;
            while i < buf.len() {
                let letter = buf[i].0;
                let mut j = i;
                let mut target = Vec::new();
                while j < buf.len() && buf[j].0 == letter {
                    target.push(buf[j].1);
                    j += 1;
                }
                let id = match index.get(&target) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len() as u32;
                        if sets.len() >= budget {
                            return Err(Error::StateBudget { budget });
                        }
                        index.insert(target.clone(), id);
                        sets.push(target);
                        id
                    }
                };
                row[letter as usize] = id;
                i = j;
            }
            delta.extend_from_slice(&row);
            sets[cur] = set;
            cur += 1;
        }
        Ok(MultiTapeAutomaton::from_table(self.base, self.alphabet, direction, 0, finals, delta, false))
    }
}

impl MultiTapeAutomaton {
    pub(crate) fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.base, self.alphabet, self.states());
        nfa.initial.push(self.initial);
        nfa.finals.clone_from(&self.finals);
        for (s, letter, t) in self.transitions() {
            nfa.add_edge(s, letter, t);
        }
        nfa
    }

    /// The same transitions reversed, started in the final states.
    pub(crate) fn reversed_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.base, self.alphabet, self.states());
        nfa.initial = self.finals();
        nfa.finals[self.initial as usize] = true;
        for (s, letter, t) in self.transitions() {
            nfa.add_edge(t, letter, s);
        }
        nfa
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_construction_merges_targets() {
        let base = Base::new(3, 2).unwrap();
        let al = Alphabet::new(base, 1).unwrap();
        // words ending with 1, read left to right
        let mut nfa = Nfa::new(base, al, 2);
        nfa.initial.push(0);
        nfa.finals[1] = true;
        for d in 0..3 {
            nfa.add_edge(0, d, 0);
        }
        nfa.add_edge(0, 1, 1);
        let dfa = nfa.determinize(Direction::LeftToRight).unwrap();
        assert_eq!(dfa.states(), 2);
        assert_eq!(dfa.run_letters([2, 1]).map(|s| dfa.is_final(s)), Some(true));
        assert_eq!(dfa.run_letters([1, 2]).map(|s| dfa.is_final(s)), Some(false));
    }
}
