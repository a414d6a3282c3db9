//! Parametric vector patterns such as `[b,-b-c-d,c,d]`.
//!
//! Grammar:
//!
//! ```text
//! pattern := '[' expr (',' expr)* ']'
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := coeff | param | coeff '*' param
//! coeff   := digits ['.' digits] ['/' digits]
//! param   := 'a'..='z'
//! ```
//!
//! Every entry must be homogeneous linear in the parameters, so that the set
//! of all assignments is a subspace.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, Scalar};
use crate::subspace::Subspace;

/// One pattern entry: parameter -> rational coefficient, zero coefficients dropped.
pub type LinearForm = BTreeMap<char, BigRational>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternVector {
    entries: Vec<LinearForm>,
}

impl PatternVector {
    pub fn entries(&self) -> &[LinearForm] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn parameters(&self) -> BTreeSet<char> {
        self.entries.iter().flat_map(|e| e.keys().copied()).collect()
    }

    /// `len x #parameters`; column `j` holds the coefficients of the `j`-th
    /// parameter in alphabetical order.
    pub fn coefficient_matrix(&self) -> Matrix<Scalar> {
        let params: Vec<char> = self.parameters().into_iter().collect();
        let mut m = Matrix::zeros(self.len(), params.len());
        for (i, entry) in self.entries.iter().enumerate() {
            for (j, p) in params.iter().enumerate() {
                if let Some(c) = entry.get(p) {
                    m.set(i, j, Scalar::from_rational(c.clone()));
                }
            }
        }
        m
    }
}

impl FromStr for PatternVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pattern(s)
    }
}

impl fmt::Display for PatternVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, entry) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if entry.is_empty() {
                f.write_str("0")?;
                continue;
            }
            for (k, (p, c)) in entry.iter().enumerate() {
                let neg = c < &BigRational::zero();
                let mag = if neg { -c.clone() } else { c.clone() };
                if neg {
                    f.write_str("-")?;
                } else if k > 0 {
                    f.write_str("+")?;
                }
                if !mag.is_one() {
                    write!(f, "{}*", Scalar::from_rational(mag))?;
                }
                write!(f, "{p}")?;
            }
        }
        f.write_str("]")
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += self.peek().map_or(0, char::len_utf8);
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            match self.peek() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn coeff(&mut self) -> Result<BigRational> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.' || c == '/') {
            self.pos += 1;
        }
        match parse_rational(&self.src[start..self.pos]) {
            Some(r) => Ok(r),
            None => {
                self.pos = start;
                self.err(format!("malformed coefficient {:?}", &self.src[start..]))
            }
        }
    }

    fn param(&mut self) -> Result<char> {
        self.skip_ws();
        match self.peek() {
            Some(c @ 'a'..='z') => {
                self.pos += 1;
                if self.peek().is_some_and(|n| n.is_ascii_alphanumeric()) {
                    return self.err("parameters are single letters a-z");
                }
                Ok(c)
            }
            Some(c) => self.err(format!("expected a parameter a-z, found '{c}'")),
            None => self.err("expected a parameter, found end of input"),
        }
    }

    /// Returns the linear part and the constant term of one entry.
    fn expr(&mut self) -> Result<(LinearForm, BigRational)> {
        let mut form = LinearForm::new();
        let mut constant = BigRational::zero();
        let mut first = true;
        loop {
            self.skip_ws();
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    BigRational::one()
                }
                Some('-') => {
                    self.pos += 1;
                    -BigRational::one()
                }
                _ if first => BigRational::one(),
                _ => break,
            };
            first = false;
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() || c == '.' => {
                    let c = self.coeff()?;
                    if self.eat('*') {
                        let p = self.param()?;
                        *form.entry(p).or_insert_with(BigRational::zero) += sign * c;
                    } else if self.peek().is_some_and(|n| n.is_ascii_alphabetic()) {
                        return self.err("expected '*' between coefficient and parameter");
                    } else {
                        constant += sign * c;
                    }
                }
                Some('a'..='z') => {
                    let p = self.param()?;
                    *form.entry(p).or_insert_with(BigRational::zero) += sign;
                }
                Some(c) => return self.err(format!("expected a term, found '{c}'")),
                None => return self.err("expected a term, found end of input"),
            }
        }
        form.retain(|_, c| !c.is_zero());
        Ok((form, constant))
    }
}

/// Parses a bracketed pattern; see the module docs for the grammar.
pub fn parse_pattern(text: &str) -> Result<PatternVector> {
    let mut p = Parser { src: text, pos: 0 };
    p.expect('[')?;
    let mut entries = Vec::new();
    loop {
        let (form, constant) = p.expr()?;
        if !constant.is_zero() {
            return Err(Error::NonHomogeneous {
                entry: entries.len() + 1,
                constant: Scalar::from_rational(constant).to_string(),
            });
        }
        entries.push(form);
        if !p.eat(',') {
            break;
        }
    }
    p.expect(']')?;
    p.skip_ws();
    if p.pos != text.len() {
        return p.err("trailing input after ']'");
    }
    Ok(PatternVector { entries })
}

/// The subspace of all parameter assignments of the pattern.
pub fn subspace_from_pattern(pattern: &PatternVector, ambient_dim: usize) -> Result<Subspace<Scalar>> {
    if pattern.len() != ambient_dim {
        return Err(Error::DimensionMismatch { expected: ambient_dim, found: pattern.len() });
    }
    let coeffs = pattern.coefficient_matrix();
    if coeffs.cols() == 0 {
        return Ok(Subspace::zero(ambient_dim));
    }
    Subspace::from_spanning(ambient_dim, &coeffs)
}

/// Parses `text` and builds its subspace, converting into the target field.
pub fn pattern_subspace<F: Field>(
    text: &str,
    ambient_dim: usize,
    convert: impl Fn(&Scalar) -> F,
) -> Result<Subspace<F>> {
    Ok(subspace_from_pattern(&parse_pattern(text)?, ambient_dim)?.convert(convert))
}
