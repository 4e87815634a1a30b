//! Polynomial text <-> exponent matrix.
//!
//! ```text
//! poly   := term ('+' term)*
//! term   := [coeff '*'] factor ('*' factor)*
//! factor := 'x' INDEX ['^' EXP]
//! ```
//!
//! Whitespace is ignored. Variable indices start at 1 and must be contiguous.
//! Coefficients are positive decimals (`3`, `1.5`, `2/3`); they do not affect
//! any invariant computed here, so they are dropped with a warning.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write};

use thiserror::Error;

use crate::matrix::ExponentMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedEnd,
    UnexpectedChar(char),
    ExpectedVariable,
    BadIndex,
    BadExponent,
    /// Variable indices used were not exactly `1..=n`.
    MissingVariable(usize),
    ZeroCoefficient,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}", describe(.kind, *.position))]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub position: usize,
}

fn describe(kind: &ParseErrorKind, pos: usize) -> String {
    let mut s = String::new();
    let _ = match kind {
        ParseErrorKind::UnexpectedEnd => write!(s, "unexpected end of input at byte {pos}"),
        ParseErrorKind::UnexpectedChar(c) => write!(s, "unexpected character {c:?} at byte {pos}"),
        ParseErrorKind::ExpectedVariable => write!(s, "expected a variable x<index> at byte {pos}"),
        ParseErrorKind::BadIndex => write!(s, "variable index must be an integer >= 1 (byte {pos})"),
        ParseErrorKind::BadExponent => write!(s, "exponent must be an integer >= 1 (byte {pos})"),
        ParseErrorKind::MissingVariable(i) => write!(s, "variable x{i} is missing; indices must run 1..n"),
        ParseErrorKind::ZeroCoefficient => write!(s, "term at byte {pos} has coefficient 0"),
    };
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A coefficient other than 1 was dropped.
    CoefficientNormalized { term: usize, coefficient: String },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::CoefficientNormalized { term, coefficient } => {
                write!(f, "coefficient {coefficient} of monomial {} normalized to 1", term + 1)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPolynomial {
    pub matrix: ExponentMatrix,
    pub warnings: Vec<ParseWarning>,
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError { kind, position: self.pos }
    }

    fn unexpected(&mut self) -> ParseError {
        match self.peek() {
            None => self.err(ParseErrorKind::UnexpectedEnd),
            Some(_) => {
                // report the full char, not a UTF-8 fragment
                let c = core::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('\u{fffd}');
                self.err(ParseErrorKind::UnexpectedChar(c))
            }
        }
    }

    fn digits(&mut self) -> &[u8] {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn positive_int(&mut self, kind: ParseErrorKind) -> Result<u32, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let digits = self.digits();
        let value = core::str::from_utf8(digits).ok().and_then(|s| s.parse::<u32>().ok());
        match value {
            Some(v) if v >= 1 => Ok(v),
            _ => Err(ParseError { kind, position: at }),
        }
    }

    /// `digits ['.' digits | '/' digits]`, returned verbatim (whitespace removed).
    fn coefficient(&mut self) -> Result<(String, bool), ParseError> {
        let mut text = String::new();
        let mut nonzero = false;
        let whole = self.digits();
        nonzero |= whole.iter().any(|&b| b != b'0');
        text.push_str(core::str::from_utf8(whole).unwrap_or_default());
        match self.peek() {
            Some(b'.') => {
                self.pos += 1;
                let frac = self.digits();
                nonzero |= frac.iter().any(|&b| b != b'0');
                text.push('.');
                text.push_str(core::str::from_utf8(frac).unwrap_or_default());
            }
            Some(b'/') => {
                self.pos += 1;
                let at = self.pos;
                let den = self.digits();
                if den.is_empty() || den.iter().all(|&b| b == b'0') {
                    return Err(ParseError { kind: ParseErrorKind::UnexpectedChar('/'), position: at - 1 });
                }
                text.push('/');
                text.push_str(core::str::from_utf8(den).unwrap_or_default());
            }
            _ => {}
        }
        Ok((text, nonzero))
    }
}

/// Parses a polynomial into its exponent matrix, monomials in textual order.
pub fn parse_polynomial(text: &str) -> Result<ParsedPolynomial, ParseError> {
    let mut cur = Cursor { src: text.as_bytes(), pos: 0 };
    let mut terms: Vec<BTreeMap<usize, u32>> = Vec::new();
    let mut warnings = Vec::new();

    loop {
        let term_start = {
            cur.skip_ws();
            cur.pos
        };
        let mut exps = BTreeMap::new();
        match cur.peek() {
            Some(c) if c.is_ascii_digit() => {
                let (coefficient, nonzero) = cur.coefficient()?;
                if !nonzero {
                    return Err(ParseError { kind: ParseErrorKind::ZeroCoefficient, position: term_start });
                }
                if cur.peek() != Some(b'*') {
                    return Err(cur.unexpected());
                }
                cur.pos += 1;
                if !is_one(&coefficient) {
                    warnings.push(ParseWarning::CoefficientNormalized { term: terms.len(), coefficient });
                }
            }
            Some(b'x') => {}
            Some(_) => return Err(cur.err(ParseErrorKind::ExpectedVariable)),
            None => return Err(cur.err(ParseErrorKind::UnexpectedEnd)),
        }
        loop {
            if cur.peek() != Some(b'x') {
                return Err(match cur.peek() {
                    None => cur.err(ParseErrorKind::UnexpectedEnd),
                    Some(_) => cur.err(ParseErrorKind::ExpectedVariable),
                });
            }
            cur.pos += 1;
            let index = cur.positive_int(ParseErrorKind::BadIndex)? as usize;
            let exp = if cur.peek() == Some(b'^') {
                cur.pos += 1;
                cur.positive_int(ParseErrorKind::BadExponent)?
            } else {
                1
            };
            let slot = exps.entry(index).or_insert(0u32);
            *slot = slot.checked_add(exp).ok_or(ParseError { kind: ParseErrorKind::BadExponent, position: cur.pos })?;
            if cur.peek() == Some(b'*') {
                cur.pos += 1;
            } else {
                break;
            }
        }
        terms.push(exps);
        match cur.peek() {
            Some(b'+') => cur.pos += 1,
            None => break,
            Some(_) => return Err(cur.unexpected()),
        }
    }

    let n = terms.iter().filter_map(|t| t.keys().next_back().copied()).max().unwrap_or(0);
    let mut seen = vec![false; n];
    for t in &terms {
        for &i in t.keys() {
            seen[i - 1] = true;
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(ParseError { kind: ParseErrorKind::MissingVariable(missing + 1), position: 0 });
    }
    let rows = terms.iter().map(|t| (1..=n).map(|i| t.get(&i).copied().unwrap_or(0)).collect()).collect();
    let matrix = ExponentMatrix::new(rows).expect("parsed terms are nonconstant and cover every variable");
    Ok(ParsedPolynomial { matrix, warnings })
}

fn is_one(coefficient: &str) -> bool {
    let (num, den) = match coefficient.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (coefficient, None),
    };
    let trimmed = |s: &str| -> String {
        let s = s.trim_start_matches('0');
        let s = match s.split_once('.') {
            Some((w, f)) => {
                let f = f.trim_end_matches('0');
                if f.is_empty() {
                    String::from(w)
                } else {
                    let mut o = String::from(w);
                    o.push('.');
                    o.push_str(f);
                    o
                }
            }
            None => String::from(s),
        };
        s
    };
    let num = trimmed(num);
    match den {
        None => num == "1",
        Some(d) => num == trimmed(d),
    }
}

/// Renders an exponent matrix as `x1^2*x2 + x2^3`, monomials in row order.
pub fn format_polynomial(m: &ExponentMatrix) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        if i > 0 {
            out.push_str(" + ");
        }
        let mut first = true;
        for (j, &e) in m.row(i).iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            let _ = write!(out, "x{}", j + 1);
            if e > 1 {
                let _ = write!(out, "^{e}");
            }
        }
    }
    out
}
