//! Recursive-descent parser for formulas.
//!
//! ```text
//! formula := "E" vars "." formula | "A" vars "." formula | implies
//! implies := or ("->" implies)?
//! or      := and ("|" and)*
//! and     := unary ("&" unary)*
//! unary   := "~" unary | "E" ... | "A" ... | "true" | "false"
//!          | atom | "(" formula ")"
//! atom    := term ("=" | "<len" | "<=len") term | ident "(" terms ")"
//! term    := factor ("+" factor)*
//! factor  := nat "*" factor | "V" "(" term ")" | ident | nat
//!          | nat "/" "q^" nat | "(" term ")"
//! ```

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::ast::{Formula, Literal, Term};
use super::macros;
use crate::error::{Error, ParseError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigUint),
    Plus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    Dot,
    Eq,
    LtLen,
    LeLen,
    Not,
    And,
    Or,
    Arrow,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::End => "end of input".into(),
            other => format!(
                "`{}`",
                match other {
                    Tok::Plus => "+",
                    Tok::Star => "*",
                    Tok::Slash => "/",
                    Tok::Caret => "^",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::Comma => ",",
                    Tok::Dot => ".",
                    Tok::Eq => "=",
                    Tok::LtLen => "<len",
                    Tok::LeLen => "<=len",
                    Tok::Not => "~",
                    Tok::And => "&",
                    Tok::Or => "|",
                    _ => "->",
                }
            ),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let err = |line, column, message: String| Error::Parse(ParseError { line, column, message });
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Eq),
            '~' | '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            _ => None,
        };
        let (tok, len) = if let Some(t) = single {
            (t, 1)
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            (Tok::Arrow, 2)
        } else if c == '<' {
            let rest: String = chars[i..chars.len().min(i + 5)].iter().collect();
            if rest.starts_with("<=len") {
                (Tok::LeLen, 5)
            } else if rest.starts_with("<len") {
                (Tok::LtLen, 4)
            } else {
                return Err(err(line, col, "expected `<len` or `<=len`".into()));
            }
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let s: String = chars[i..j].iter().collect();
            (Tok::Nat(s.parse().unwrap()), j - i)
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else {
            return Err(err(line, col, format!("unexpected character `{c}`")));
        };
        out.push(Token { tok, line: start_line, column: start_col });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::End, line, column: col });
    Ok(out)
}

const RESERVED: [&str; 5] = ["E", "A", "V", "true", "false"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse(ParseError { line: t.line, column: t.column, message: message.into() })
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected {}, found {}", tok.describe(), self.peek().describe())))
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == "E" || s == "A") && matches!(self.peek_at(1), Tok::Ident(_))
    }

    fn formula(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            return self.quantified();
        }
        self.implies()
    }

    fn quantified(&mut self) -> Result<Formula> {
        let exists = matches!(self.bump(), Tok::Ident(s) if s == "E");
        let mut vars = Vec::new();
        loop {
            match self.bump() {
                Tok::Ident(v) if !RESERVED.contains(&v.as_str()) => vars.push(v),
                other => {
                    self.pos -= 1;
                    return Err(self.error(format!("expected a variable name, found {}", other.describe())));
                }
            }
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::Dot => {
                    self.bump();
                    break;
                }
                Tok::Ident(_) => {}
                other => return Err(self.error(format!("expected `,` or `.`, found {}", other.describe()))),
            }
        }
        let body = Box::new(self.formula()?);
        Ok(if exists { Formula::Exists(vars, body) } else { Formula::Forall(vars, body) })
    }

    fn implies(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implies_rhs()?;
            return Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn implies_rhs(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            return self.quantified();
        }
        self.implies()
    }

    fn or(&mut self) -> Result<Formula> {
        let mut parts = vec![self.and()?];
        while *self.peek() == Tok::Or {
            self.bump();
            parts.push(self.and()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn and(&mut self) -> Result<Formula> {
        let mut parts = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.bump();
            parts.push(self.unary()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.is_quantifier() {
            return self.quantified();
        }
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(Formula::Not(Box::new(self.unary()?)))
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                // either a parenthesized term starting a relation, or a formula
                let save = self.pos;
                if let Ok(f) = self.relation() {
                    return Ok(f);
                }
                self.pos = save;
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) if name != "V" && *self.peek_at(1) == Tok::LParen => self.macro_call(name),
            _ => self.relation(),
        }
    }

    fn macro_call(&mut self, name: String) -> Result<Formula> {
        let at = self.pos;
        if !macros::is_macro(&name) {
            return Err(Error::UnknownMacro {
                name: format!("{name} (at {}:{})", self.toks[at].line, self.toks[at].column),
                candidates: macros::names().iter().map(|s| s.to_string()).collect(),
            });
        }
        self.bump();
        self.expect(Tok::LParen)?;
        let mut args = Vec::new();
        if *self.peek() != Tok::RParen {
            loop {
                args.push(self.term()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::RParen)?;
        let expected = macros::arity(&name).unwrap();
        if args.len() != expected {
            return Err(Error::Arity { name, expected, found: args.len() });
        }
        Ok(Formula::MacroCall(name, args))
    }

    fn relation(&mut self) -> Result<Formula> {
        let lhs = self.term()?;
        let op = self.bump();
        let rhs = match op {
            Tok::Eq | Tok::LtLen | Tok::LeLen => self.term()?,
            other => {
                self.pos -= 1;
                return Err(self.error(format!("expected `=`, `<len` or `<=len`, found {}", other.describe())));
            }
        };
        Ok(match op {
            Tok::Eq => Formula::Eq(lhs, rhs),
            Tok::LtLen => Formula::LtLen(lhs, rhs),
            _ => Formula::LeLen(lhs, rhs),
        })
    }

    fn term(&mut self) -> Result<Term> {
        let mut parts = vec![self.factor()?];
        while *self.peek() == Tok::Plus {
            self.bump();
            parts.push(self.factor()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Term::Sum(parts) })
    }

    fn factor(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Nat(n) => {
                self.bump();
                match self.peek() {
                    Tok::Star => {
                        self.bump();
                        let coeff = n.to_u64().ok_or_else(|| self.error("coefficient does not fit in 64 bits"))?;
                        Ok(Term::ScalarMul(coeff, Box::new(self.factor()?)))
                    }
                    Tok::Slash => {
                        self.bump();
                        match self.bump() {
                            Tok::Ident(q) if q == "q" => {}
                            _ => {
                                self.pos -= 1;
                                return Err(self.error("expected `q^k` as denominator"));
                            }
                        }
                        self.expect(Tok::Caret)?;
                        match self.bump() {
                            Tok::Nat(k) => {
                                let k = k.to_u32().ok_or_else(|| self.error("exponent too large"))?;
                                Ok(Term::Const(Literal { num: n, kexp: k }))
                            }
                            _ => {
                                self.pos -= 1;
                                Err(self.error("expected an exponent"))
                            }
                        }
                    }
                    _ => Ok(Term::Const(Literal { num: n, kexp: 0 })),
                }
            }
            Tok::Ident(v) if v == "V" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(Term::Vpq(Box::new(t)))
            }
            Tok::Ident(v) if RESERVED.contains(&v.as_str()) => Err(self.error(format!("`{v}` is reserved"))),
            Tok::Ident(v) => {
                self.bump();
                Ok(Term::Var(v))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a term, found {}", other.describe()))),
        }
    }
}

/// Parses a formula.
pub fn parse(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(f)
}

/// Parses a term.
pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let t = p.term()?;
    if *p.peek() != Tok::End {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::ast::*;

    #[test]
    fn parses_examples() {
        assert_eq!(
            parse("E x. x + x = y").unwrap(),
            exists(&["x"], Formula::Eq(Term::Sum(vec![var("x"), var("x")]), var("y")))
        );
        assert_eq!(
            parse("V(x) = x & ~(x = 0)").unwrap(),
            Formula::And(vec![Formula::Eq(vpq(var("x")), var("x")), not(Formula::Eq(var("x"), nat(0))),])
        );
        assert_eq!(parse("x <len y").unwrap(), Formula::LtLen(var("x"), var("y")));
        assert_eq!(parse("x <=len 3/q^2").unwrap(), Formula::LeLen(var("x"), lit(3, 2)));
        assert_eq!(
            parse("A x y. (x + y) = 2*z").unwrap(),
            forall(
                &["x", "y"],
                Formula::Eq(Term::Sum(vec![var("x"), var("y")]), Term::ScalarMul(2, Box::new(var("z"))))
            )
        );
    }

    #[test]
    fn precedence() {
        let f = parse("a = b | c = d & e = f -> g = h").unwrap();
        assert!(matches!(f, Formula::Implies(..)));
        let g = parse("a = b -> c = d -> e = f").unwrap();
        match g {
            Formula::Implies(_, rhs) => assert!(matches!(*rhs, Formula::Implies(..))),
            _ => panic!(),
        }
        let h = parse("x = y & E z. z = x & z = y").unwrap();
        match h {
            Formula::And(parts) => assert!(matches!(parts[1], Formula::Exists(..))),
            _ => panic!(),
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse("x = y &\n  = z") {
            Err(Error::Parse(e)) => assert_eq!((e.line, e.column), (2, 3)),
            other => panic!("{other:?}"),
        }
        match parse("frob(x)") {
            Err(Error::UnknownMacro { candidates, .. }) => assert!(candidates.contains(&"digit".to_string())),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("beta(x, y)"), Err(Error::Arity { .. })));
        assert!(parse("E . x = x").is_err());
        assert!(parse("x = 1/3").is_err());
        assert!(parse("x < y").is_err());
    }
}
