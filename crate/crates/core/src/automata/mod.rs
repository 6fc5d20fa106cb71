//! Deterministic multi-tape synchronous automata over `(A_p)^d`.
//!
//! A letter is a column of `d` digits, encoded as `sum a_t p^t` (tape 0 is the
//! least significant position of the code). Words are stored most significant
//! column first; a right-to-left automaton consumes the last column first.

mod io;
mod minimize;
mod nfa;
mod ops;
mod query;

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeration::{self, Base, QkNumber, TupleWord};

pub use ops::BoolOp;

/// Marker for a missing transition.
pub const NONE: u32 = u32::MAX;

/// Largest alphabet `p^d` accepted by the dense transition table.
pub const MAX_LETTERS: usize = 1 << 16;

static STATE_BUDGET: AtomicUsize = AtomicUsize::new(1_000_000);

/// Maximum number of states a subset or product construction may create.
pub fn state_budget() -> usize {
    STATE_BUDGET.load(Ordering::Relaxed)
}

pub fn set_state_budget(budget: usize) {
    STATE_BUDGET.store(budget.max(1), Ordering::Relaxed);
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "LR")]
    LeftToRight,
    #[serde(rename = "RL")]
    RightToLeft,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::LeftToRight => Direction::RightToLeft,
            Direction::RightToLeft => Direction::LeftToRight,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::LeftToRight => "LR",
            Direction::RightToLeft => "RL",
        })
    }
}

/// The column alphabet `(A_p)^d`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Alphabet {
    p: u32,
    tapes: usize,
    size: usize,
}

impl Alphabet {
    pub fn new(base: Base, tapes: usize) -> Result<Alphabet> {
        let too_large = || Error::AlphabetTooLarge { p: base.p(), tapes };
        let mut size = 1usize;
        for _ in 0..tapes {
            size = size.checked_mul(base.p() as usize).ok_or_else(too_large)?;
            if size > MAX_LETTERS {
                return Err(too_large());
            }
        }
        Ok(Alphabet { p: base.p(), tapes, size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn tapes(&self) -> usize {
        self.tapes
    }

    pub fn encode(&self, column: &[u32]) -> usize {
        debug_assert_eq!(column.len(), self.tapes);
        column.iter().rev().fold(0, |acc, &a| acc * self.p as usize + a as usize)
    }

    pub fn decode(&self, letter: usize) -> Vec<u32> {
        let mut rest = letter;
        (0..self.tapes)
            .map(|_| {
                let a = (rest % self.p as usize) as u32;
                rest /= self.p as usize;
                a
            })
            .collect()
    }

    pub fn digit(&self, letter: usize, tape: usize) -> u32 {
        ((letter / (self.p as usize).pow(tape as u32)) % self.p as usize) as u32
    }
}

/// A deterministic automaton reading `d` tapes in lockstep.
///
/// Transitions live in a dense `states x letters` table with [`NONE`] for
/// missing entries. The `padded` flag records that the language is closed
/// under adding and removing leading zero columns, i.e. that acceptance only
/// depends on the values on the tapes.
#[derive(Clone, Debug)]
pub struct MultiTapeAutomaton {
    base: Base,
    alphabet: Alphabet,
    direction: Direction,
    initial: u32,
    finals: Vec<bool>,
    delta: Vec<u32>,
    padded: bool,
    name: String,
}

impl MultiTapeAutomaton {
    /// An automaton with `states` states, no transitions and no final state.
    pub fn new(base: Base, tapes: usize, direction: Direction, states: usize) -> Result<Self> {
        if tapes == 0 {
            return Err(Error::Shape("an automaton needs at least one tape".into()));
        }
        if states == 0 {
            return Err(Error::InvalidAutomaton("an automaton needs at least one state".into()));
        }
        let alphabet = Alphabet::new(base, tapes)?;
        Ok(MultiTapeAutomaton {
            base,
            alphabet,
            direction,
            initial: 0,
            finals: vec![false; states],
            delta: vec![NONE; states * alphabet.size()],
            padded: false,
            name: String::new(),
        })
    }

    /// Accepts nothing.
    pub fn empty(base: Base, tapes: usize, direction: Direction) -> Result<Self> {
        let mut a = Self::new(base, tapes, direction, 1)?;
        a.padded = true;
        Ok(a)
    }

    /// Accepts every tuple word.
    pub fn universal(base: Base, tapes: usize, direction: Direction) -> Result<Self> {
        let mut a = Self::new(base, tapes, direction, 1)?;
        a.finals[0] = true;
        a.delta.fill(0);
        a.padded = true;
        Ok(a)
    }

    pub(crate) fn from_table(
        base: Base,
        alphabet: Alphabet,
        direction: Direction,
        initial: u32,
        finals: Vec<bool>,
        delta: Vec<u32>,
        padded: bool,
    ) -> Self {
        debug_assert_eq!(delta.len(), finals.len() * alphabet.size());
        MultiTapeAutomaton { base, alphabet, direction, initial, finals, delta, padded, name: String::new() }
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn tapes(&self) -> usize {
        self.alphabet.tapes()
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn states(&self) -> usize {
        self.finals.len()
    }

    pub fn initial(&self) -> u32 {
        self.initial
    }

    pub fn is_final(&self, s: u32) -> bool {
        self.finals[s as usize]
    }

    pub fn finals(&self) -> Vec<u32> {
        (0..self.states() as u32).filter(|&s| self.is_final(s)).collect()
    }

    pub fn final_flags(&self) -> &[bool] {
        &self.finals
    }

    /// Target of `(s, letter)`, if any.
    pub fn next(&self, s: u32, letter: usize) -> Option<u32> {
        let t = self.delta[s as usize * self.alphabet.size() + letter];
        (t != NONE).then_some(t)
    }

    pub(crate) fn row(&self, s: u32) -> &[u32] {
        let k = self.alphabet.size();
        &self.delta[s as usize * k..(s as usize + 1) * k]
    }

    /// All defined transitions as `(source, letter, target)`.
    pub fn transitions(&self) -> impl Iterator<Item = (u32, usize, u32)> + '_ {
        let k = self.alphabet.size();
        self.delta.iter().enumerate().filter(|(_, &t)| t != NONE).map(move |(i, &t)| ((i / k) as u32, i % k, t))
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().filter(|&&t| t != NONE).count()
    }

    /// Whether the automaton is known to accept by value; see [`Self::check_padded`].
    pub fn is_padded(&self) -> bool {
        self.padded
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn set_initial(&mut self, s: u32) -> Result<()> {
        self.check_state(s)?;
        self.initial = s;
        Ok(())
    }

    pub fn set_final(&mut self, s: u32, is_final: bool) -> Result<()> {
        self.check_state(s)?;
        self.finals[s as usize] = is_final;
        self.padded = false;
        Ok(())
    }

    /// Adds `s --column--> t`; conflicting targets are rejected.
    pub fn set_transition(&mut self, s: u32, column: &[u32], t: u32) -> Result<()> {
        self.check_state(s)?;
        self.check_state(t)?;
        if column.len() != self.tapes() {
            return Err(Error::Shape(format!("label of width {} on a {}-tape automaton", column.len(), self.tapes())));
        }
        if let Some(&d) = column.iter().find(|&&d| d >= self.base.p()) {
            return Err(Error::InvalidDigit { digit: d.into(), base: self.base });
        }
        let idx = s as usize * self.alphabet.size() + self.alphabet.encode(column);
        match self.delta[idx] {
            NONE => self.delta[idx] = t,
            old if old == t => {}
            old => {
                return Err(Error::InvalidAutomaton(format!("state {s} has two targets ({old} and {t}) on {column:?}")))
            }
        }
        self.padded = false;
        Ok(())
    }

    /// Sets the padded flag after verifying the property.
    pub fn mark_padded(&mut self) -> Result<()> {
        if !self.check_padded() {
            return Err(Error::InvalidAutomaton("language is not closed under leading zero columns".into()));
        }
        self.padded = true;
        Ok(())
    }

    fn check_state(&self, s: u32) -> Result<()> {
        if (s as usize) < self.states() {
            Ok(())
        } else {
            Err(Error::InvalidAutomaton(format!("state {s} out of range 0..{}", self.states())))
        }
    }

    fn check_word(&self, u: &TupleWord) -> Result<()> {
        if u.base() != self.base {
            return Err(Error::Shape(format!("word in base {} for an automaton in base {}", u.base(), self.base)));
        }
        if u.tape_count() != self.tapes() {
            return Err(Error::Shape(format!("{}-tape word for a {}-tape automaton", u.tape_count(), self.tapes())));
        }
        Ok(())
    }

    pub(crate) fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base || self.tapes() != other.tapes() {
            return Err(Error::Shape(format!(
                "automata over {}^{} and {}^{}",
                self.base,
                self.tapes(),
                other.base,
                other.tapes()
            )));
        }
        Ok(())
    }

    /// The letters of `u` in reading order.
    pub fn letters_of(&self, u: &TupleWord) -> Result<Vec<usize>> {
        self.check_word(u)?;
        let mut letters: Vec<usize> = (0..u.len()).map(|i| self.alphabet.encode(&u.column(i))).collect();
        if self.direction == Direction::RightToLeft {
            letters.reverse();
        }
        Ok(letters)
    }

    /// End state of the run on `u`, or `None` when the run blocks.
    pub fn run(&self, u: &TupleWord) -> Result<Option<u32>> {
        let mut s = self.initial;
        for letter in self.letters_of(u)? {
            match self.next(s, letter) {
                Some(t) => s = t,
                None => return Ok(None),
            }
        }
        Ok(Some(s))
    }

    /// Runs on letters already in reading order.
    pub fn run_letters(&self, letters: impl IntoIterator<Item = usize>) -> Option<u32> {
        let mut s = self.initial;
        for letter in letters {
            s = self.next(s, letter)?;
        }
        Some(s)
    }

    pub fn accepts(&self, u: &TupleWord) -> Result<bool> {
        Ok(self.run(u)?.is_some_and(|s| self.is_final(s)))
    }

    /// Runs the joint representation of `values` (no leading zero column).
    pub fn accepts_value(&self, values: &[QkNumber]) -> Result<bool> {
        if values.len() != self.tapes() {
            return Err(Error::Shape(format!("{} values for a {}-tape automaton", values.len(), self.tapes())));
        }
        let words = values
            .iter()
            .map(|x| numeration::represent(x, self.base).ok_or_else(|| numeration::not_member(x, self.base)))
            .collect::<Result<Vec<_>>>()?;
        self.accepts(&TupleWord::from_words(&words)?)
    }

    /// Adds a non-final sink if some transition is missing.
    pub fn complete(&self) -> Self {
        if !self.delta.contains(&NONE) {
            return self.clone();
        }
        let n = self.states();
        let k = self.alphabet.size();
        let sink = n as u32;
        let mut delta: Vec<u32> = self.delta.iter().map(|&t| if t == NONE { sink } else { t }).collect();
        delta.extend(std::iter::repeat_n(sink, k));
        let mut finals = self.finals.clone();
        finals.push(false);
        let mut out =
            Self::from_table(self.base, self.alphabet, self.direction, self.initial, finals, delta, self.padded);
        out.name = self.name.clone();
        out
    }

    pub fn is_complete(&self) -> bool {
        !self.delta.contains(&NONE)
    }

    /// States reachable from the initial state.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states()];
        let mut stack = vec![self.initial];
        seen[self.initial as usize] = true;
        while let Some(s) = stack.pop() {
            for &t in self.row(s) {
                if t != NONE && !seen[t as usize] {
                    seen[t as usize] = true;
                    stack.push(t);
                }
            }
        }
        seen
    }

    /// States from which a final state is reachable.
    pub fn coreachable(&self) -> Vec<bool> {
        let n = self.states();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (s, _, t) in self.transitions() {
            preds[t as usize].push(s);
        }
        let mut seen = self.finals.clone();
        let mut stack: Vec<u32> = self.finals();
        while let Some(t) = stack.pop() {
            for &s in &preds[t as usize] {
                if !seen[s as usize] {
                    seen[s as usize] = true;
                    stack.push(s);
                }
            }
        }
        seen
    }
}
