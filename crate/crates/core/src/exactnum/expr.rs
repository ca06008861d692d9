//! A small infix expression reader shared by the textual formats.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr    := sign? term (('+' | '-') term)*
//! term    := power (('*' | '/')? power)*        juxtaposition multiplies
//! power   := primary ('^' '-'? integer)?
//! primary := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are one letter followed by optional digits (`h`, `c`, `z12`).
//! Division is only allowed by an integer literal.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::CycNum;
use crate::error::{Error, Result};

/// Ring operations needed by the reader.
pub(crate) trait ExprValue: Sized {
    fn from_integer(n: BigInt) -> Self;
    fn atom(name: &str) -> Option<Self>;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    fn neg(self) -> Self;
    fn pow(self, e: i64) -> std::result::Result<Self, String>;
    fn div_integer(self, d: &BigInt) -> std::result::Result<Self, String>;
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
    col0: usize,
    end_col: usize,
}

impl Lexer {
    fn new(text: &str, line: usize, col0: usize) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let ch = chars[i];
            if ch.is_whitespace() {
                i += 1;
            } else if ch.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                toks.push((Tok::Int(s.parse().unwrap()), start));
            } else if ch.is_ascii_alphabetic() {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
            } else if "+-*/^()·".contains(ch) {
                let sym = if ch == '·' { '*' } else { ch };
                toks.push((Tok::Sym(sym), i));
                i += 1;
            } else {
                return Err(Error::parse(line, col0 + i, format!("unexpected character '{ch}'")));
            }
        }
        Ok(Lexer {
            toks,
            pos: 0,
            line,
            col0,
            end_col: col0 + chars.len(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| self.col0 + c)
            .unwrap_or(self.end_col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.col(), msg)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
}

/// Parses `text`; error positions are reported relative to `line` and the
/// 1-based column `col0` of the first character.
pub(crate) fn parse_expr<V: ExprValue>(text: &str, line: usize, col0: usize) -> Result<V> {
    let mut lx = Lexer::new(text, line, col0)?;
    if lx.toks.is_empty() {
        return Err(lx.err("empty expression"));
    }
    let v = expr(&mut lx)?;
    if lx.pos != lx.toks.len() {
        return Err(lx.err("unexpected trailing input"));
    }
    Ok(v)
}

fn expr<V: ExprValue>(lx: &mut Lexer) -> Result<V> {
    let negate = if lx.eat('-') {
        true
    } else {
        lx.eat('+');
        false
    };
    let mut acc = term::<V>(lx)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        if lx.eat('+') {
            acc = acc.add(term(lx)?);
        } else if lx.eat('-') {
            acc = acc.sub(term(lx)?);
        } else {
            return Ok(acc);
        }
    }
}

fn starts_primary(t: Option<&Tok>) -> bool {
    matches!(t, Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
}

fn term<V: ExprValue>(lx: &mut Lexer) -> Result<V> {
    let mut acc = power::<V>(lx)?;
    loop {
        if lx.eat('*') {
            acc = acc.mul(power(lx)?);
        } else if lx.eat('/') {
            let col = lx.col();
            let d = match lx.peek() {
                Some(Tok::Int(d)) => d.clone(),
                _ => return Err(lx.err("expected an integer divisor")),
            };
            lx.pos += 1;
            if d.is_zero() {
                return Err(Error::parse(lx.line, col, "division by zero"));
            }
            acc = acc
                .div_integer(&d)
                .map_err(|m| Error::parse(lx.line, col, m))?;
        } else if starts_primary(lx.peek()) {
            acc = acc.mul(power(lx)?);
        } else {
            return Ok(acc);
        }
    }
}

fn power<V: ExprValue>(lx: &mut Lexer) -> Result<V> {
    let base = primary::<V>(lx)?;
    if !lx.eat('^') {
        return Ok(base);
    }
    let col = lx.col();
    let neg = lx.eat('-');
    let e = match lx.peek() {
        Some(Tok::Int(e)) => e.clone(),
        _ => return Err(lx.err("expected an integer exponent")),
    };
    lx.pos += 1;
    let e: i64 = e
        .try_into()
        .map_err(|_| Error::parse(lx.line, col, "exponent too large"))?;
    base.pow(if neg { -e } else { e })
        .map_err(|m| Error::parse(lx.line, col, m))
}

fn primary<V: ExprValue>(lx: &mut Lexer) -> Result<V> {
    let col = lx.col();
    match lx.peek().cloned() {
        Some(Tok::Int(n)) => {
            lx.pos += 1;
            Ok(V::from_integer(n))
        }
        Some(Tok::Ident(name)) => {
            lx.pos += 1;
            V::atom(&name).ok_or_else(|| Error::parse(lx.line, col, format!("unknown symbol '{name}'")))
        }
        Some(Tok::Sym('(')) => {
            lx.pos += 1;
            let v = expr(lx)?;
            if !lx.eat(')') {
                return Err(lx.err("expected ')'"));
            }
            Ok(v)
        }
        Some(t) => Err(lx.err(format!("unexpected token {t:?}"))),
        None => Err(lx.err("unexpected end of input")),
    }
}

impl ExprValue for CycNum {
    fn from_integer(n: BigInt) -> Self {
        CycNum::from_integer(n)
    }

    /// `z<N>` is the primitive root `exp(2πi/N)`.
    fn atom(name: &str) -> Option<Self> {
        let n: u32 = name.strip_prefix('z')?.parse().ok()?;
        (n >= 1).then(|| CycNum::root(n, 1))
    }

    fn add(self, rhs: Self) -> Self {
        self + rhs
    }

    fn sub(self, rhs: Self) -> Self {
        self - rhs
    }

    fn mul(self, rhs: Self) -> Self {
        self * rhs
    }

    fn neg(self) -> Self {
        -self
    }

    fn pow(self, e: i64) -> std::result::Result<Self, String> {
        if e >= 0 {
            Ok(CycNum::pow(&self, e as u64))
        } else {
            let inv = self.inv().ok_or("negative power of zero")?;
            Ok(CycNum::pow(&inv, e.unsigned_abs()))
        }
    }

    fn div_integer(self, d: &BigInt) -> std::result::Result<Self, String> {
        let q = num_rational::BigRational::new(BigInt::one(), d.clone());
        Ok(self * CycNum::from_rational(&q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> CycNum {
        parse_expr(s, 1, 1).unwrap()
    }

    #[test]
    fn grammar() {
        assert_eq!(p("z3^1 + z3^2"), CycNum::from(-1));
        assert_eq!(p("z3 + z3^2 + 1"), CycNum::zero());
        assert_eq!(p("-1/2 + 3/2"), CycNum::one());
        assert_eq!(p("2*z5^2 - z5^3"), p("2 z5^2 - z5^3"));
        assert_eq!(p("(1 + z3)(1 + z3^2)"), CycNum::one());
        assert_eq!(p("z7^-1"), CycNum::root(7, 6));
        assert_eq!(p("z4^2"), CycNum::from(-1));
        assert_eq!(p("z7 + z7^2 + z7^4"), p("-1 - z7^3 - z7^5 - z7^6"));
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_expr::<CycNum>("1 + q5", 3, 10).unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 3,
                column: 14,
                message: "unknown symbol 'q5'".into()
            }
        );
        assert!(matches!(parse_expr::<CycNum>("1 +", 1, 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr::<CycNum>("1/0", 1, 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr::<CycNum>("(1", 1, 1), Err(Error::Parse { .. })));
        assert!(matches!(parse_expr::<CycNum>("1 $ 2", 1, 1), Err(Error::Parse { column: 3, .. })));
        assert!(matches!(parse_expr::<CycNum>("", 1, 1), Err(Error::Parse { .. })));
    }
}
