//! Text and matrix-literal input for invertible polynomials.
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := (uint '*'?)? factor ('*'? factor)*
//! factor := ident ('^' uint)?
//! ident  := letter alnum*
//! ```
//!
//! A numeric coefficient other than 1 (or a leading `-`) is accepted with a
//! warning and discarded. Input starting with `{` is read as a JSON matrix
//! literal `{"E": [[...], ...], "vars": [...]}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::InvertiblePolynomial;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A parsed polynomial together with any normalization warnings.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub polynomial: InvertiblePolynomial,
    pub warnings: Vec<String>,
}

pub fn parse_polynomial(text: &str) -> Result<ParseOutcome> {
    if text.trim_start().starts_with('{') {
        return parse_matrix_literal(text);
    }
    let mut p = Parser::new(text);
    let terms = p.poly()?;
    build(terms, p.warnings)
}

struct Term {
    factors: Vec<(String, u64)>,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
    warnings: Vec<String>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            text,
            warnings: Vec::new(),
        }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        (line, column)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let (line, column) = self.location(pos);
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn poly(&mut self) -> Result<Vec<Term>> {
        if self.text.trim().is_empty() {
            return Err(self.error_at(0, "empty input"));
        }
        let mut terms = Vec::new();
        let mut negated = matches!(self.peek(), Some('-'));
        if negated {
            self.pos += 1;
        }
        loop {
            terms.push(self.term(negated)?);
            match self.peek() {
                None => break,
                Some('+') => {
                    self.pos += 1;
                    negated = false;
                }
                Some('-') => {
                    self.pos += 1;
                    negated = true;
                }
                Some(c) => return Err(self.error_at(self.pos, format!("unexpected '{c}'"))),
            }
        }
        Ok(terms)
    }

    fn term(&mut self, negated: bool) -> Result<Term> {
        let start = self.pos;
        let mut coefficient: Option<u64> = None;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coefficient = Some(self.uint("coefficient")?);
            if self.peek() == Some('*') {
                self.pos += 1;
            }
        }
        if negated || coefficient.is_some_and(|c| c != 1) {
            let (line, column) = self.location(start);
            let c = coefficient.unwrap_or(1);
            let sign = if negated { "-" } else { "" };
            self.warnings.push(format!(
                "line {line}, column {column}: coefficient {sign}{c} normalized to 1"
            ));
        }
        if coefficient == Some(0) {
            return Err(self.error_at(start, "zero coefficient"));
        }
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(c) if c.is_alphabetic() => factors.push(self.factor()?),
                Some('*') if !factors.is_empty() => {
                    self.pos += 1;
                    match self.peek() {
                        Some(c) if c.is_alphabetic() => {}
                        _ => return Err(self.error_at(self.pos, "expected a variable after '*'")),
                    }
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            return Err(self.error_at(self.pos, "expected a monomial"));
        }
        Ok(Term { factors })
    }

    fn factor(&mut self) -> Result<(String, u64)> {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let mut exponent = 1;
        if self.peek() == Some('^') {
            self.pos += 1;
            match self.peek() {
                Some('-') => return Err(self.error_at(self.pos, "negative exponent")),
                Some(c) if c.is_ascii_digit() => exponent = self.uint("exponent")?,
                _ => return Err(self.error_at(self.pos, "expected an exponent after '^'")),
            }
            if self.chars.get(self.pos) == Some(&'.') {
                return Err(self.error_at(self.pos, "non-integer exponent"));
            }
        }
        Ok((name, exponent))
    }

    fn uint(&mut self, what: &str) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| self.error_at(start, format!("invalid {what} '{s}'")))
    }
}

/// Splits `x12` into `("x", 12)`.
fn indexed_name(name: &str) -> Option<(&str, u64)> {
    let split = name.find(|c: char| c.is_ascii_digit())?;
    let (prefix, digits) = name.split_at(split);
    if prefix.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    Some((prefix, digits.parse().ok()?))
}

fn build(terms: Vec<Term>, warnings: Vec<String>) -> Result<ParseOutcome> {
    let mut variables: Vec<String> = Vec::new();
    for t in &terms {
        for (name, _) in &t.factors {
            if !variables.contains(name) {
                variables.push(name.clone());
            }
        }
    }
    // x1, x2, ... are ordered by index rather than by appearance.
    let indexed: Option<Vec<(&str, u64)>> = variables.iter().map(|v| indexed_name(v)).collect();
    if let Some(idx) = indexed {
        if idx.iter().all(|(p, _)| *p == idx[0].0) {
            let mut order: Vec<usize> = (0..variables.len()).collect();
            order.sort_by_key(|&i| idx[i].1);
            variables = order.into_iter().map(|i| variables[i].clone()).collect();
        }
    }
    if terms.len() != variables.len() {
        return Err(Error::Shape {
            monomials: terms.len(),
            variables: variables.len(),
        });
    }
    let position: BTreeMap<&str, usize> = variables
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let n = variables.len();
    let mut rows = vec![vec![0u64; n]; n];
    for (i, t) in terms.iter().enumerate() {
        for (name, e) in &t.factors {
            rows[i][position[name.as_str()]] += e;
        }
    }
    let polynomial = InvertiblePolynomial::new(IntMatrix::from_rows(&rows)?, variables)?;
    Ok(ParseOutcome { polynomial, warnings })
}

fn json_error(message: impl Into<String>) -> Error {
    Error::Parse {
        line: 1,
        column: 1,
        message: message.into(),
    }
}

fn parse_matrix_literal(text: &str) -> Result<ParseOutcome> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let rows = value
        .get("E")
        .and_then(|e| e.as_array())
        .ok_or_else(|| json_error("matrix literal needs an \"E\" array"))?;
    let mut matrix: Vec<Vec<BigInt>> = Vec::new();
    for row in rows {
        let row = row
            .as_array()
            .ok_or_else(|| json_error("each row of E must be an array"))?;
        let mut out = Vec::new();
        for x in row {
            let v = x
                .as_i64()
                .ok_or_else(|| json_error(format!("exponent {x} is not an integer")))?;
            if v < 0 {
                return Err(json_error(format!("negative exponent {v}")));
            }
            out.push(BigInt::from(v));
        }
        matrix.push(out);
    }
    if matrix.is_empty() {
        return Err(json_error("E is empty"));
    }
    if matrix.iter().any(|r| r.len() != matrix.len()) {
        return Err(Error::Shape {
            monomials: matrix.len(),
            variables: matrix.iter().map(Vec::len).max().unwrap_or(0),
        });
    }
    let exponents = IntMatrix::from_rows(&matrix)?;
    let polynomial = match value.get("vars") {
        None | Some(serde_json::Value::Null) => InvertiblePolynomial::from_matrix(exponents)?,
        Some(vars) => {
            let names = vars
                .as_array()
                .ok_or_else(|| json_error("\"vars\" must be an array of names"))?
                .iter()
                .map(|v| {
                    v.as_str()
                        .map(str::to_owned)
                        .ok_or_else(|| json_error("variable names must be strings"))
                })
                .collect::<Result<Vec<_>>>()?;
            InvertiblePolynomial::new(exponents, names)?
        }
    };
    Ok(ParseOutcome {
        polynomial,
        warnings: Vec::new(),
    })
}

pub(crate) fn entry_u64(x: &BigInt) -> Option<u64> {
    if x.is_negative() {
        None
    } else {
        x.to_u64()
    }
}
