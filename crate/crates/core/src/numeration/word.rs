use std::fmt;

use super::{Base, QkNumber};
use crate::error::{Error, Result};

/// A digit string over `A_p`, most significant digit first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    digits: Vec<u32>,
    base: Base,
}

impl Word {
    pub fn new(digits: Vec<u32>, base: Base) -> Result<Word> {
        if let Some(&d) = digits.iter().find(|&&d| d >= base.p()) {
            return Err(Error::InvalidDigit { digit: d.into(), base });
        }
        Ok(Word { digits, base })
    }

    pub fn empty(base: Base) -> Word {
        Word { digits: Vec::new(), base }
    }

    /// Parses a digit string (`p <= 10`) or comma-separated digits.
    pub fn parse(s: &str, base: Base) -> Result<Word> {
        let s = s.trim();
        let malformed = || Error::Malformed { what: "word", text: s.to_string() };
        let digits: Vec<u32> = if s.is_empty() {
            Vec::new()
        } else if s.contains(',') || base.p() > 10 {
            s.split(',').map(|t| t.trim().parse::<u32>().map_err(|_| malformed())).collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(malformed)).collect::<Result<_>>()?
        };
        Word::new(digits, base)
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// The word without its leading zeros.
    pub fn strip_leading_zeros(&self) -> Word {
        let start = self.digits.iter().position(|&d| d != 0).unwrap_or(self.digits.len());
        Word { digits: self.digits[start..].to_vec(), base: self.base }
    }

    /// Left-pads with zeros up to `len`.
    pub fn padded_to(&self, len: usize) -> Word {
        let mut digits = vec![0; len.saturating_sub(self.digits.len())];
        digits.extend_from_slice(&self.digits);
        Word { digits, base: self.base }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Word { digits, base: self.base }
    }

    pub fn value(&self) -> QkNumber {
        super::evaluate(self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_digits(f, &self.digits, self.base)
    }
}

fn write_digits(f: &mut fmt::Formatter<'_>, digits: &[u32], base: Base) -> fmt::Result {
    if base.p() <= 10 {
        for d in digits {
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        let parts: Vec<String> = digits.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A `d`-tape word: `d` digit strings of identical length.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TupleWord {
    base: Base,
    tapes: Vec<Vec<u32>>,
    len: usize,
}

impl TupleWord {
    /// Left-pads every component with zeros to the longest one.
    pub fn from_words(words: &[Word]) -> Result<TupleWord> {
        let base =
            words.first().map(Word::base).ok_or_else(|| Error::Shape("a tuple word needs at least one tape".into()))?;
        if words.iter().any(|w| w.base() != base) {
            return Err(Error::Shape("tape words use different bases".into()));
        }
        let len = words.iter().map(Word::len).max().unwrap_or(0);
        let tapes = words.iter().map(|w| w.padded_to(len).digits).collect();
        Ok(TupleWord { base, tapes, len })
    }

    /// Builds from equal-length digit rows, one per tape.
    pub fn from_tapes(base: Base, tapes: Vec<Vec<u32>>) -> Result<TupleWord> {
        if tapes.is_empty() {
            return Err(Error::Shape("a tuple word needs at least one tape".into()));
        }
        let len = tapes[0].len();
        if tapes.iter().any(|t| t.len() != len) {
            return Err(Error::Shape("tapes must have equal length".into()));
        }
        for t in &tapes {
            if let Some(&d) = t.iter().find(|&&d| d >= base.p()) {
                return Err(Error::InvalidDigit { digit: d.into(), base });
            }
        }
        Ok(TupleWord { base, tapes, len })
    }

    /// Builds from columns, each given as `d` digits (most significant column first).
    pub fn from_columns(base: Base, d: usize, columns: &[Vec<u32>]) -> Result<TupleWord> {
        let mut tapes = vec![Vec::with_capacity(columns.len()); d];
        for col in columns {
            if col.len() != d {
                return Err(Error::Shape(format!("column of width {} for {d} tapes", col.len())));
            }
            for (t, &digit) in tapes.iter_mut().zip(col) {
                t.push(digit);
            }
        }
        if d == 0 {
            return Err(Error::Shape("a tuple word needs at least one tape".into()));
        }
        TupleWord::from_tapes(base, tapes)
    }

    pub fn base(&self) -> Base {
        self.base
    }

    pub fn tape_count(&self) -> usize {
        self.tapes.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn tape(&self, i: usize) -> Word {
        Word { digits: self.tapes[i].clone(), base: self.base }
    }

    pub fn tapes(&self) -> &[Vec<u32>] {
        &self.tapes
    }

    /// Column `i` (0 = most significant).
    pub fn column(&self, i: usize) -> Vec<u32> {
        self.tapes.iter().map(|t| t[i]).collect()
    }

    pub fn values(&self) -> Vec<QkNumber> {
        (0..self.tapes.len()).map(|i| self.tape(i).value()).collect()
    }

    /// Prepends `n` all-zero columns.
    pub fn pad(&self, n: usize) -> TupleWord {
        let tapes = self
            .tapes
            .iter()
            .map(|t| {
                let mut v = vec![0; n];
                v.extend_from_slice(t);
                v
            })
            .collect();
        TupleWord { base: self.base, tapes, len: self.len + n }
    }

    /// Removes leading all-zero columns.
    pub fn strip(&self) -> TupleWord {
        let start = (0..self.len).find(|&i| self.tapes.iter().any(|t| t[i] != 0)).unwrap_or(self.len);
        let tapes = self.tapes.iter().map(|t| t[start..].to_vec()).collect();
        TupleWord { base: self.base, tapes, len: self.len - start }
    }

    /// Parses tapes separated by `,` (digit strings, `p <= 10`) or given one per item.
    pub fn parse_tapes(items: &[&str], base: Base) -> Result<TupleWord> {
        let words: Vec<Word> = if items.len() == 1 && base.p() <= 10 && items[0].contains(',') {
            items[0].split(',').map(|s| Word::parse(s, base)).collect::<Result<_>>()?
        } else {
            items.iter().map(|s| Word::parse(s, base)).collect::<Result<_>>()?
        };
        TupleWord::from_words(&words)
    }
}

impl fmt::Display for TupleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.tapes.iter().enumerate() {
            if i > 0 {
                f.write_str(if self.base.p() <= 10 { "," } else { "; " })?;
            }
            write!(f, "\"")?;
            write_digits(f, t, self.base)?;
            write!(f, "\"")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rejects_bad_digits() {
        let b = Base::new(3, 2).unwrap();
        assert!(Word::parse("213", b).is_err());
        assert_eq!(Word::parse("", b).unwrap().len(), 0);
        let big = Base::new(11, 2).unwrap();
        let w = Word::parse("10,3,0", big).unwrap();
        assert_eq!(w.digits(), &[10, 3, 0]);
        assert_eq!(w.to_string(), "10,3,0");
    }

    #[test]
    fn tuple_pads_left() {
        let b = Base::new(3, 2).unwrap();
        let t = TupleWord::from_words(&[Word::parse("2", b).unwrap(), Word::parse("21", b).unwrap()]).unwrap();
        assert_eq!(t.tapes(), &[vec![0, 2], vec![2, 1]]);
        assert_eq!(t.to_string(), "(\"02\",\"21\")");
        assert_eq!(t.pad(1).strip(), t);
    }
}
