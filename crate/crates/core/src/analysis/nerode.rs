//! Counting residuals of two-tape languages by brute force.
//!
//! Prefixes of a fixed length are grouped by their acceptance signature over
//! every suffix up to a given length. Growth of the class count with the
//! prefix length is evidence (not proof) that the language is not regular.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use rayon::prelude::*;

use crate::automata::{Direction, MultiTapeAutomaton};
use crate::error::{Error, Result};
use crate::numeration::Base;

/// Largest number of prefixes enumerated for one length.
pub const PREFIX_GUARD: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NerodeRow {
    pub prefix_len: usize,
    pub prefixes: u64,
    pub classes: usize,
}

#[derive(Clone, Debug)]
pub struct NerodeReport {
    pub language: String,
    pub base: Base,
    pub suffix_len_max: usize,
    pub rows: Vec<NerodeRow>,
}

impl NerodeReport {
    pub fn counts(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.classes).collect()
    }

    pub fn strictly_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[0].classes < w[1].classes)
    }

    /// Constant from some prefix length on (at least over the last two rows).
    pub fn plateaus(&self) -> bool {
        let n = self.rows.len();
        n >= 2 && self.rows[n - 1].classes == self.rows[n - 2].classes
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("language,base,suffix_len_max,prefix_len,prefixes,classes\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.language, self.base, self.suffix_len_max, r.prefix_len, r.prefixes, r.classes
            ));
        }
        out
    }
}

impl fmt::Display for NerodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "residual classes of {} in base {} (suffixes up to length {})",
            self.language, self.base, self.suffix_len_max
        )?;
        writeln!(f, "{:>10} {:>12} {:>8}", "prefix", "prefixes", "classes")?;
        for r in &self.rows {
            writeln!(f, "{:>10} {:>12} {:>8}", r.prefix_len, r.prefixes, r.classes)?;
        }
        let verdict = if self.strictly_increasing() {
            "class count grows strictly over the tested range"
        } else if self.plateaus() {
            "class count levels off over the tested range"
        } else {
            "class count neither grows strictly nor levels off"
        };
        writeln!(f, "{verdict}")?;
        write!(f, "this is evidence, not proof: only finitely many prefixes and suffixes were examined")
    }
}

fn guard(base: Base, len: usize) -> Result<u64> {
    let letters = (base.p() as u64).pow(2);
    letters
        .checked_pow(len as u32)
        .filter(|&n| n <= PREFIX_GUARD)
        .ok_or_else(|| Error::InvalidArgument(format!("more than {PREFIX_GUARD} prefixes of length {len}")))
}

/// Integer numerator of every word of length `len`: `N(ua) = p N(u) + a q^|u|`,
/// so that the value is `N / q^len`.
fn numerators(base: Base, len: usize) -> Vec<i128> {
    let (p, q) = (base.p() as i128, base.q() as i128);
    let mut cur = vec![0i128];
    for i in 0..len {
        let qi = q.pow(i as u32);
        cur = cur.iter().flat_map(|&n| (0..p).map(move |a| p * n + a * qi)).collect();
    }
    cur
}

/// `{(v, w) : val(v) < val(w)}` over pairs of equal-length words.
pub fn nerode_order_growth(base: Base, prefix_len_max: usize, suffix_len_max: usize) -> Result<NerodeReport> {
    for l in 0..=prefix_len_max.max(suffix_len_max) {
        guard(base, l)?;
    }
    let (p, q) = (base.p() as i128, base.q() as i128);
    // a suffix only matters through its length and the difference of numerators
    let mut suffixes: Vec<(u32, i128)> = Vec::new();
    for n in 0..=suffix_len_max {
        let nums = numerators(base, n);
        let diffs: std::collections::BTreeSet<i128> =
            nums.iter().flat_map(|a| nums.iter().map(move |b| a - b)).collect();
        suffixes.extend(diffs.into_iter().map(|e| (n as u32, e)));
    }
    let mut rows = Vec::new();
    for len in 0..=prefix_len_max {
        let nums = numerators(base, len);
        let prefixes = (nums.len() as u64).pow(2);
        let diffs: Vec<i128> = nums
            .iter()
            .flat_map(|a| nums.iter().map(move |b| a - b))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let ql = q.pow(len as u32);
        // u s in L iff  D p^n + E q^len < 0
        let signatures: Vec<Vec<u64>> = diffs
            .par_iter()
            .map(|&d| {
                let mut bits = vec![0u64; suffixes.len().div_ceil(64)];
                for (i, &(n, e)) in suffixes.iter().enumerate() {
                    if d * p.pow(n) + e * ql < 0 {
                        bits[i / 64] |= 1 << (i % 64);
                    }
                }
                bits
            })
            .collect();
        let classes = signatures.into_iter().collect::<HashSet<_>>().len();
        rows.push(NerodeRow { prefix_len: len, prefixes, classes });
    }
    Ok(NerodeReport { language: "order".into(), base, suffix_len_max, rows })
}

/// The same count for the language of a two-tape automaton, prefixes being
/// read most significant digit first.
pub fn nerode_automaton_growth(
    aut: &MultiTapeAutomaton,
    prefix_len_max: usize,
    suffix_len_max: usize,
) -> Result<NerodeReport> {
    let base = aut.base();
    let lr = aut.with_direction(Direction::LeftToRight)?.complete();
    let k = lr.alphabet().size();
    for l in 0..=prefix_len_max.max(suffix_len_max) {
        let n = (k as u64).checked_pow(l as u32).unwrap_or(u64::MAX);
        if n > PREFIX_GUARD {
            return Err(Error::InvalidArgument(format!("more than {PREFIX_GUARD} words of length {l}")));
        }
    }
    let suffixes: Vec<Vec<usize>> = (0..=suffix_len_max).flat_map(|n| words(k, n)).collect();
    let mut rows = Vec::new();
    for len in 0..=prefix_len_max {
        // prefixes that reach the same state share their residual; run each
        // suffix from one witness prefix per state
        let mut witness: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        let mut count = 0u64;
        for u in words(k, len) {
            count += 1;
            let s = lr.run_letters(u.iter().copied()).expect("complete");
            witness.entry(s).or_insert(u);
        }
        let signatures: Vec<Vec<bool>> = witness
            .values()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|u| {
                suffixes
                    .iter()
                    .map(|s| {
                        let end = lr.run_letters(u.iter().chain(s).copied()).expect("complete");
                        lr.is_final(end)
                    })
                    .collect()
            })
            .collect();
        let classes = signatures.into_iter().collect::<HashSet<_>>().len();
        rows.push(NerodeRow { prefix_len: len, prefixes: count, classes });
    }
    Ok(NerodeReport { language: aut.name().to_string(), base, suffix_len_max, rows })
}

fn words(k: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_language_keeps_growing() {
        let b = Base::new(3, 2).unwrap();
        let r = nerode_order_growth(b, 4, 4).unwrap();
        assert_eq!(r.rows[0].classes, 1);
        assert!(r.rows[1..].windows(2).all(|w| w[0].classes < w[1].classes), "{r}");
        assert!(r.to_string().contains("evidence, not proof"));
    }

    #[test]
    fn guard_rejects_huge_runs() {
        let b = Base::new(3, 2).unwrap();
        assert!(nerode_order_growth(b, 9, 2).is_err());
    }
}
