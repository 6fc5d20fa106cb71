//! Exhaustive cross-checks of automata against arithmetic.

use std::fmt;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::automata::MultiTapeAutomaton;
use crate::builtins;
use crate::error::{Error, Result};
use crate::logic;
use crate::numeration::{self, Base, QkNumber, TupleWord, Word};

/// Every word without leading zeros of length at most `max_len`.
pub(crate) fn representations(base: Base, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(base)];
    let mut frontier = vec![Vec::<u32>::new()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for a in (if len == 1 { 1 } else { 0 })..base.p() {
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|d| Word::new(d.clone(), base).expect("digits below p")));
        frontier = next;
    }
    out
}

#[derive(Clone, Debug)]
pub struct ModuloMismatch {
    pub word: Word,
    pub state: u32,
    pub expected: u64,
}

#[derive(Clone, Debug)]
pub struct ModuloReport {
    pub base: Base,
    pub n: u64,
    pub max_len: usize,
    pub checked: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<ModuloMismatch>,
}

impl ModuloReport {
    pub fn to_csv(&self) -> String {
        let first = self.first_mismatch.as_ref().map(|m| m.word.to_string()).unwrap_or_default();
        format!(
            "base,n,max_len,checked,mismatches,first_mismatch\n{},{},{},{},{},{}\n",
            self.base, self.n, self.max_len, self.checked, self.mismatches, first
        )
    }
}

impl fmt::Display for ModuloReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "modulo {} in base {}: {} words up to length {}, {} mismatches",
            self.n, self.base, self.checked, self.max_len, self.mismatches
        )?;
        if let Some(m) = &self.first_mismatch {
            write!(f, "\nfirst mismatch: \"{}\" ends in {} but the residue is {}", m.word, m.state, m.expected)?;
        }
        Ok(())
    }
}

/// Runs the modulo automaton on every representation up to `max_len` and
/// compares the end state with the residue computed arithmetically.
pub fn modulo_cross_check(base: Base, n: u64, max_len: usize) -> Result<ModuloReport> {
    let aut = builtins::build_modulo(base, n, &[])?;
    let mut report = ModuloReport { base, n, max_len, checked: 0, mismatches: 0, first_mismatch: None };
    for w in representations(base, max_len) {
        let state = aut.run_letters(w.digits().iter().map(|&d| d as usize)).expect("complete");
        let expected = numeration::mod_value(&numeration::evaluate(&w), n, base)?;
        report.checked += 1;
        if state as u64 != expected {
            report.mismatches += 1;
            report.first_mismatch.get_or_insert(ModuloMismatch { word: w, state, expected });
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct SeparatorVerdict {
    pub base: Base,
    pub max_value: u64,
    pub checked: u64,
    /// First integer where membership in the candidate differs from
    /// divisibility by `q`: `(n, accepted, expected)`.
    pub first_failure: Option<(u64, bool, bool)>,
}

impl SeparatorVerdict {
    pub fn passes(&self) -> bool {
        self.first_failure.is_none()
    }

    pub fn to_csv(&self) -> String {
        let (n, acc, exp) = match self.first_failure {
            Some((n, a, e)) => (n.to_string(), a.to_string(), e.to_string()),
            None => Default::default(),
        };
        format!(
            "base,max_value,checked,first_failure,accepted,expected\n{},{},{},{},{},{}\n",
            self.base, self.max_value, self.checked, n, acc, exp
        )
    }
}

impl fmt::Display for SeparatorVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.first_failure {
            None => write!(
                f,
                "candidate agrees with the multiples of {} on 0..={} ({} integers)",
                self.base.q(),
                self.max_value,
                self.checked
            ),
            Some((n, acc, _)) => write!(
                f,
                "candidate fails at {n}: it {} {n}, which {} a multiple of {}",
                if acc { "accepts" } else { "rejects" },
                if acc { "is not" } else { "is" },
                self.base.q()
            ),
        }
    }
}

/// Does the one-tape candidate accept exactly the multiples of `q` among the
/// integers `0..=max_value`?
pub fn mq_separator_probe(base: Base, candidate: &MultiTapeAutomaton, max_value: u64) -> Result<SeparatorVerdict> {
    if candidate.tapes() != 1 {
        return Err(Error::Shape(format!("separator candidates have one tape, not {}", candidate.tapes())));
    }
    let q = base.q() as u64;
    let mut verdict = SeparatorVerdict { base, max_value, checked: 0, first_failure: None };
    for n in 0..=max_value {
        let accepted = candidate.accepts_value(&[QkNumber::from_integer(n, base.q())])?;
        let expected = n % q == 0;
        verdict.checked += 1;
        if accepted != expected {
            verdict.first_failure = Some((n, accepted, expected));
            break;
        }
    }
    Ok(verdict)
}

#[derive(Clone, Debug)]
pub struct DensityReport {
    pub base: Base,
    pub k: u32,
    pub window: u64,
    pub mk: BigUint,
    /// Numerators `n` in `1..=m_k + window` with `n / q^k` not a member.
    pub non_members: Vec<u64>,
    /// Non-members above `m_k`; the bound says there are none.
    pub violations: Vec<u64>,
    /// Largest non-member numerator, i.e. the least bound that works here.
    pub observed_bound: u64,
}

impl DensityReport {
    pub fn to_csv(&self) -> String {
        format!(
            "base,k,window,mk,non_members,violations,observed_bound\n{},{},{},{},{},{},{}\n",
            self.base,
            self.k,
            self.window,
            self.mk,
            self.non_members.len(),
            self.violations.len(),
            self.observed_bound
        )
    }
}

impl fmt::Display for DensityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n/q^{} for n in 1..={} in base {}: {} non-members, largest {}",
            self.k,
            &self.mk + self.window,
            self.base,
            self.non_members.len(),
            self.observed_bound
        )?;
        write!(
            f,
            "bound m_{} = {}: {}",
            self.k,
            self.mk,
            if self.violations.is_empty() {
                "no non-member above it".to_string()
            } else {
                format!("{} non-members above it", self.violations.len())
            }
        )
    }
}

/// Which `n / q^k` with `0 < n <= m_k + window` are members.
pub fn mk_density_scan(base: Base, k: u32, window: u64) -> Result<DensityReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let mk = numeration::mk_bound(k, base);
    let top = (&mk + window).to_u64().ok_or_else(|| Error::InvalidArgument(format!("m_{k} is too large to scan")))?;
    let mkv = mk.to_u64().expect("below top");
    let mut non_members = Vec::new();
    for n in 1..=top {
        if !numeration::is_member(&QkNumber::new(n.into(), k, base.q()), base) {
            non_members.push(n);
        }
    }
    let violations = non_members.iter().copied().filter(|&n| n > mkv).collect();
    let observed_bound = non_members.last().copied().unwrap_or(0);
    Ok(DensityReport { base, k, window, mk, non_members, violations, observed_bound })
}

#[derive(Clone, Debug)]
pub struct RoundTripReport {
    pub name: String,
    pub states: usize,
    pub formula_size: usize,
    pub compiled_states: usize,
    pub checked: usize,
    pub disagreements: usize,
    pub first_disagreement: Option<Vec<QkNumber>>,
    pub equivalent: bool,
}

impl fmt::Display for RoundTripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} states, formula of size {}, compiled back to {} states; \
             {} tuples checked, {} disagreements; {}",
            self.name,
            self.states,
            self.formula_size,
            self.compiled_states,
            self.checked,
            self.disagreements,
            if self.equivalent { "equivalent" } else { "not equivalent" }
        )
    }
}

/// Converts `aut` to a formula, compiles that formula, and compares the two
/// automata on every tuple of representations up to `max_len` digits.
pub fn roundtrip_check(aut: &MultiTapeAutomaton, max_len: usize, opts: logic::EmitOptions) -> Result<RoundTripReport> {
    let base = aut.base();
    let d = aut.tapes();
    let f = logic::emit_formula_with(aut, opts)?;
    let names: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let back = logic::compile(&f, &refs, base)?;
    let reps = representations(base, max_len);
    let mut report = RoundTripReport {
        name: aut.name().to_string(),
        states: logic::normalize(aut)?.states(),
        formula_size: f.size(),
        compiled_states: back.states(),
        checked: 0,
        disagreements: 0,
        first_disagreement: None,
        equivalent: back.equivalent(aut)?.is_none(),
    };
    let mut idx = vec![0usize; d];
    loop {
        let words: Vec<Word> = idx.iter().map(|&i| reps[i].clone()).collect();
        let t = TupleWord::from_words(&words)?;
        report.checked += 1;
        if aut.accepts(&t)? != back.accepts(&t)? {
            report.disagreements += 1;
            report.first_disagreement.get_or_insert_with(|| t.values());
        }
        // odometer over the tuple
        let mut i = 0;
        loop {
            if i == d {
                return Ok(report);
            }
            idx[i] += 1;
            if idx[i] < reps.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Direction;

    fn b32() -> Base {
        Base::new(3, 2).unwrap()
    }

    #[test]
    fn modulo_checks() {
        let r = modulo_cross_check(b32(), 5, 6).unwrap();
        assert_eq!(r.mismatches, 0);
        assert_eq!(r.checked, representations(b32(), 6).len());
        assert!(matches!(modulo_cross_check(b32(), 2, 3), Err(Error::NotCoprime { .. })));
    }

    #[test]
    fn separator_candidates_fail() {
        let b = b32();
        let m = builtins::build_modulo(b, 5, &[0]).unwrap();
        assert_eq!(mq_separator_probe(b, &m, 50).unwrap().first_failure.map(|f| f.0), Some(2));
        let e = MultiTapeAutomaton::empty(b, 1, Direction::RightToLeft).unwrap();
        assert_eq!(mq_separator_probe(b, &e, 50).unwrap().first_failure.map(|f| f.0), Some(0));
        let u = MultiTapeAutomaton::universal(b, 1, Direction::RightToLeft).unwrap();
        assert_eq!(mq_separator_probe(b, &u, 50).unwrap().first_failure.map(|f| f.0), Some(1));
    }

    #[test]
    fn density_bound() {
        let r = mk_density_scan(b32(), 2, 500).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.observed_bound <= 6);
        let r = mk_density_scan(b32(), 1, 500).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.observed_bound <= 1);
    }
}
