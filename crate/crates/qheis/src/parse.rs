//! Expression parsing for algebra elements, bivariate polynomials and
//! Laurent vectors.
//!
//! One grammar serves all three targets; only the symbol alphabet differs:
//!
//! ```text
//! expr   := ['-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' exponent)?
//! atom   := symbol | rational | '(' expr ')'
//! ```
//!
//! Multiplication is explicit: juxtaposition (`A B`) is a parse error, so
//! noncommutative input is always visually unambiguous. Exponents are
//! nonnegative integer literals except on `t`, which admits negative
//! exponents. The symbol `q` is available only when the mode keeps q
//! symbolic (symbolic or root-of-unity modes). Parsed elements come back
//! already in normal form.

use crate::algebra::HqElement;
use crate::laurent::LaurentVector;
use crate::poly::BiPoly;
use crate::scalar::QMode;
use num_rational::BigRational;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedEnd,
    UnexpectedToken(String),
    UnknownSymbol(char),
    Juxtaposition,
    NegativeExponent,
    QNotAllowedInRationalMode,
    InvalidNumber(String),
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[error("parse error at byte {pos}: {}", self.describe())]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn describe(&self) -> String {
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => format!("unexpected character '{c}'"),
            ParseErrorKind::UnexpectedEnd => "unexpected end of input".to_string(),
            ParseErrorKind::UnexpectedToken(t) => format!("unexpected token '{t}'"),
            ParseErrorKind::UnknownSymbol(c) => format!("symbol '{c}' is not valid here"),
            ParseErrorKind::Juxtaposition => {
                "juxtaposition is not multiplication; write '*'".to_string()
            }
            ParseErrorKind::NegativeExponent => {
                "negative exponents are only allowed on t".to_string()
            }
            ParseErrorKind::QNotAllowedInRationalMode => {
                "the symbol q is only available in symbolic or root-of-unity modes".to_string()
            }
            ParseErrorKind::InvalidNumber(s) => format!("invalid number '{s}'"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Symbol(char),
    Number(BigRational),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Symbol(c) => write!(f, "{c}"),
            Token::Number(n) => write!(f, "{n}"),
            Token::Plus => write!(f, "+"),
            Token::Minus => write!(f, "-"),
            Token::Star => write!(f, "*"),
            Token::Caret => write!(f, "^"),
            Token::LParen => write!(f, "("),
            Token::RParen => write!(f, ")"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                // a/b is one rational literal
                if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                let text = &src[start..i];
                let value = BigRational::from_str(text).map_err(|_| ParseError {
                    pos: start,
                    kind: ParseErrorKind::InvalidNumber(text.to_string()),
                })?;
                out.push((start, Token::Number(value)));
            }
            c if c.is_ascii_alphabetic() => {
                out.push((i, Token::Symbol(c)));
                i += 1;
            }
            other => {
                return Err(ParseError {
                    pos: i,
                    kind: ParseErrorKind::UnexpectedChar(other),
                })
            }
        }
    }
    Ok(out)
}

/// The value domain a parse evaluates into. Implementations supply the ring
/// operations and say which symbols exist.
trait Target: Sized + Clone {
    fn from_rational(mode: &QMode, r: &BigRational) -> Self;
    fn symbol(mode: &QMode, c: char, pos: usize) -> Result<Self, ParseError>;
    fn add(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError>;
    /// Whether a symbol admits a negative exponent.
    fn allows_negative_exponent(c: char) -> bool {
        let _ = c;
        false
    }
}

fn check_q_allowed(mode: &QMode, pos: usize) -> Result<(), ParseError> {
    match mode {
        QMode::Rational(_) => Err(ParseError {
            pos,
            kind: ParseErrorKind::QNotAllowedInRationalMode,
        }),
        _ => Ok(()),
    }
}

impl Target for HqElement {
    fn from_rational(mode: &QMode, r: &BigRational) -> Self {
        HqElement::from_scalar(mode, mode.from_rational(r))
    }

    fn symbol(mode: &QMode, c: char, pos: usize) -> Result<Self, ParseError> {
        match c {
            'A' => Ok(HqElement::gen_a(mode)),
            'B' => Ok(HqElement::gen_b(mode)),
            'q' => {
                check_q_allowed(mode, pos)?;
                Ok(HqElement::from_scalar(mode, mode.q()))
            }
            other => Err(ParseError {
                pos,
                kind: ParseErrorKind::UnknownSymbol(other),
            }),
        }
    }

    fn add(&self, other: &Self) -> Self {
        HqElement::add(self, other)
    }

    fn neg(&self) -> Self {
        HqElement::neg(self)
    }

    fn mul(&self, other: &Self) -> Self {
        HqElement::mul(self, other)
    }

    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError> {
        if e < 0 {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::NegativeExponent,
            });
        }
        Ok(HqElement::pow(self, e as u32))
    }
}

#[derive(Clone)]
struct BiPolyWithMode {
    poly: BiPoly,
    mode: QMode,
}

impl Target for BiPolyWithMode {
    fn from_rational(mode: &QMode, r: &BigRational) -> Self {
        BiPolyWithMode {
            poly: BiPoly::monomial(0, 0, mode.from_rational(r)),
            mode: mode.clone(),
        }
    }

    fn symbol(mode: &QMode, c: char, pos: usize) -> Result<Self, ParseError> {
        let poly = match c {
            'x' => BiPoly::monomial(1, 0, mode.one()),
            'y' => BiPoly::monomial(0, 1, mode.one()),
            'q' => {
                check_q_allowed(mode, pos)?;
                BiPoly::monomial(0, 0, mode.q())
            }
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownSymbol(other),
                })
            }
        };
        Ok(BiPolyWithMode {
            poly,
            mode: mode.clone(),
        })
    }

    fn add(&self, other: &Self) -> Self {
        BiPolyWithMode {
            poly: self.poly.add(&other.poly),
            mode: self.mode.clone(),
        }
    }

    fn neg(&self) -> Self {
        BiPolyWithMode {
            poly: self.poly.neg(),
            mode: self.mode.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        BiPolyWithMode {
            poly: self.poly.mul(&other.poly),
            mode: self.mode.clone(),
        }
    }

    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError> {
        if e < 0 {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::NegativeExponent,
            });
        }
        let mut acc = BiPolyWithMode {
            poly: BiPoly::monomial(0, 0, self.mode.one()),
            mode: self.mode.clone(),
        };
        for _ in 0..e {
            acc = acc.mul(self);
        }
        Ok(acc)
    }
}

#[derive(Clone)]
struct LaurentWithMode {
    vec: LaurentVector,
    mode: QMode,
}

impl Target for LaurentWithMode {
    fn from_rational(mode: &QMode, r: &BigRational) -> Self {
        LaurentWithMode {
            vec: LaurentVector::monomial(0, mode.from_rational(r)),
            mode: mode.clone(),
        }
    }

    fn symbol(mode: &QMode, c: char, pos: usize) -> Result<Self, ParseError> {
        let vec = match c {
            't' => LaurentVector::monomial(1, mode.one()),
            'q' => {
                check_q_allowed(mode, pos)?;
                LaurentVector::monomial(0, mode.q())
            }
            other => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnknownSymbol(other),
                })
            }
        };
        Ok(LaurentWithMode {
            vec,
            mode: mode.clone(),
        })
    }

    fn add(&self, other: &Self) -> Self {
        LaurentWithMode {
            vec: self.vec.add(&other.vec),
            mode: self.mode.clone(),
        }
    }

    fn neg(&self) -> Self {
        LaurentWithMode {
            vec: self.vec.neg(),
            mode: self.mode.clone(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        LaurentWithMode {
            vec: self.vec.mul(&other.vec),
            mode: self.mode.clone(),
        }
    }

    fn pow(&self, e: i64, pos: usize) -> Result<Self, ParseError> {
        if e >= 0 {
            let mut acc = LaurentWithMode {
                vec: LaurentVector::monomial(0, self.mode.one()),
                mode: self.mode.clone(),
            };
            for _ in 0..e {
                acc = acc.mul(self);
            }
            return Ok(acc);
        }
        // negative exponents only on a bare t monomial
        match self.vec.window() {
            Some((n, hi)) if n == hi && n == 1 && self.vec.coeff(1).map(|c| c.is_one()) == Some(true) => {
                Ok(LaurentWithMode {
                    vec: LaurentVector::monomial(e, self.mode.one()),
                    mode: self.mode.clone(),
                })
            }
            _ => Err(ParseError {
                pos,
                kind: ParseErrorKind::NegativeExponent,
            }),
        }
    }

    fn allows_negative_exponent(c: char) -> bool {
        c == 't'
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    mode: &'a QMode,
    src_len: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &str, mode: &'a QMode) -> Result<Self, ParseError> {
        Ok(Parser {
            tokens: lex(src)?,
            pos: 0,
            mode,
            src_len: src.len(),
        })
    }

    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<(usize, Token)> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|(p, _)| *p).unwrap_or(self.src_len)
    }

    fn expr<T: Target>(&mut self) -> Result<T, ParseError> {
        let mut negate = false;
        if matches!(self.peek(), Some((_, Token::Minus))) {
            self.next();
            negate = true;
        }
        let mut acc = self.term::<T>()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some((_, Token::Plus)) => {
                    self.next();
                    let t = self.term::<T>()?;
                    acc = acc.add(&t);
                }
                Some((_, Token::Minus)) => {
                    self.next();
                    let t = self.term::<T>()?;
                    acc = acc.add(&t.neg());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term<T: Target>(&mut self) -> Result<T, ParseError> {
        let mut acc = self.factor::<T>()?;
        loop {
            match self.peek() {
                Some((_, Token::Star)) => {
                    self.next();
                    let f = self.factor::<T>()?;
                    acc = acc.mul(&f);
                }
                // an atom right after a factor is juxtaposition
                Some((p, Token::Symbol(_)))
                | Some((p, Token::Number(_)))
                | Some((p, Token::LParen)) => {
                    return Err(ParseError {
                        pos: *p,
                        kind: ParseErrorKind::Juxtaposition,
                    });
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor<T: Target>(&mut self) -> Result<T, ParseError> {
        let (atom, sym) = self.atom::<T>()?;
        if matches!(self.peek(), Some((_, Token::Caret))) {
            self.next();
            let caret_pos = self.here();
            let mut sign = 1i64;
            if matches!(self.peek(), Some((_, Token::Minus))) {
                let allowed = sym.map(T::allows_negative_exponent).unwrap_or(false);
                if !allowed {
                    return Err(ParseError {
                        pos: self.here(),
                        kind: ParseErrorKind::NegativeExponent,
                    });
                }
                self.next();
                sign = -1;
            }
            match self.next() {
                Some((p, Token::Number(n))) => {
                    if !n.is_integer() {
                        return Err(ParseError {
                            pos: p,
                            kind: ParseErrorKind::UnexpectedToken(n.to_string()),
                        });
                    }
                    let e: i64 = n.to_integer().try_into().map_err(|_| ParseError {
                        pos: p,
                        kind: ParseErrorKind::InvalidNumber(n.to_string()),
                    })?;
                    return atom.pow(sign * e, p);
                }
                Some((p, other)) => {
                    return Err(ParseError {
                        pos: p,
                        kind: ParseErrorKind::UnexpectedToken(other.to_string()),
                    })
                }
                None => {
                    return Err(ParseError {
                        pos: caret_pos,
                        kind: ParseErrorKind::UnexpectedEnd,
                    })
                }
            }
        }
        Ok(atom)
    }

    /// Returns the atom and, when it was a bare symbol, which one.
    fn atom<T: Target>(&mut self) -> Result<(T, Option<char>), ParseError> {
        match self.next() {
            Some((p, Token::Symbol(c))) => Ok((T::symbol(self.mode, c, p)?, Some(c))),
            Some((_, Token::Number(n))) => Ok((T::from_rational(self.mode, &n), None)),
            Some((_, Token::LParen)) => {
                let inner = self.expr::<T>()?;
                match self.next() {
                    Some((_, Token::RParen)) => Ok((inner, None)),
                    Some((p, other)) => Err(ParseError {
                        pos: p,
                        kind: ParseErrorKind::UnexpectedToken(other.to_string()),
                    }),
                    None => Err(ParseError {
                        pos: self.src_len,
                        kind: ParseErrorKind::UnexpectedEnd,
                    }),
                }
            }
            Some((p, other)) => Err(ParseError {
                pos: p,
                kind: ParseErrorKind::UnexpectedToken(other.to_string()),
            }),
            None => Err(ParseError {
                pos: self.src_len,
                kind: ParseErrorKind::UnexpectedEnd,
            }),
        }
    }

    fn finish<T>(&mut self, value: T) -> Result<T, ParseError> {
        match self.peek() {
            None => Ok(value),
            Some((p, t)) => Err(ParseError {
                pos: *p,
                kind: ParseErrorKind::UnexpectedToken(t.to_string()),
            }),
        }
    }
}

fn parse_with<T: Target>(src: &str, mode: &QMode) -> Result<T, ParseError> {
    let mut parser = Parser::new(src, mode)?;
    let value = parser.expr::<T>()?;
    parser.finish(value)
}

/// Parses an algebra element; the result is in normal form.
pub fn parse_element(src: &str, mode: &QMode) -> Result<HqElement, ParseError> {
    parse_with::<HqElement>(src, mode)
}

/// Parses a commutative bivariate polynomial in x and y.
pub fn parse_bipoly(src: &str, mode: &QMode) -> Result<BiPoly, ParseError> {
    parse_with::<BiPolyWithMode>(src, mode).map(|p| p.poly)
}

/// Parses a Laurent vector in t; exponents may be negative.
pub fn parse_laurent(src: &str, mode: &QMode) -> Result<LaurentVector, ParseError> {
    parse_with::<LaurentWithMode>(src, mode).map(|v| v.vec)
}
