//! Indeterminates, monomials and polynomials with positive integer coefficients.
//!
//! Monomials are power-products stored as a sorted list of
//! `(indeterminate, exponent)` pairs. Most of the crate works with square-free
//! monomials only; the general form exists for the relaxed parser and for
//! interpolating polynomials of trees that repeat a label along a path.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Errors raised while building or parsing polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Malformed polynomial text. `position` is a byte offset into the input.
    Syntax { position: usize, message: String },
    /// A term multiplies an indeterminate by itself (strict parser only).
    NonSquareFreeTerm { position: usize, variable: String },
    /// `multiply_label` in strict mode hit a monomial already divisible by the label.
    NonSquareFreeResult { variable: String },
    /// Not a valid identifier: letter followed by letters, digits or underscores.
    InvalidIdentifier(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Syntax { position, message } => {
                write!(f, "syntax error at byte {position}: {message}")
            }
            PolyError::NonSquareFreeTerm { position, variable } => write!(
                f,
                "term at byte {position} is not square-free: `{variable}` occurs more than once"
            ),
            PolyError::NonSquareFreeResult { variable } => write!(
                f,
                "multiplying by `{variable}` would produce a non-square-free monomial"
            ),
            PolyError::InvalidIdentifier(name) => write!(f, "invalid identifier `{name}`"),
        }
    }
}

impl core::error::Error for PolyError {}

/// A label/indeterminate. Ordered byte-wise by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Indeterminate(Arc<str>);

impl Indeterminate {
    pub fn new(name: &str) -> Result<Self, PolyError> {
        if is_identifier(name) {
            Ok(Indeterminate(Arc::from(name)))
        } else {
            Err(PolyError::InvalidIdentifier(name.to_string()))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() => chars.all(|c| c.is_alphanumeric() || c == '_'),
        _ => false,
    }
}

/// A power-product. The empty product is the monomial `1`.
///
/// Monomials are ordered by degree first, then lexicographically on their
/// sorted factor lists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Indeterminate, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(x: Indeterminate) -> Self {
        Monomial {
            factors: alloc::vec![(x, 1)],
        }
    }

    /// Square-free product of the given indeterminates; a repeated one is an error.
    pub fn from_vars<I: IntoIterator<Item = Indeterminate>>(vars: I) -> Result<Self, PolyError> {
        let mut set = BTreeSet::new();
        for v in vars {
            if set.contains(&v) {
                return Err(PolyError::NonSquareFreeResult {
                    variable: v.name().to_string(),
                });
            }
            set.insert(v);
        }
        Ok(Monomial {
            factors: set.into_iter().map(|v| (v, 1)).collect(),
        })
    }

    /// General power-product; exponents of repeated indeterminates add up and
    /// zero exponents are dropped.
    pub fn from_powers<I: IntoIterator<Item = (Indeterminate, u32)>>(powers: I) -> Self {
        let mut map: BTreeMap<Indeterminate, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial {
            factors: map.into_iter().filter(|(_, e)| *e > 0).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|(_, e)| *e == 1)
    }

    /// The indeterminates dividing this monomial, in ascending order.
    pub fn vars(&self) -> impl ExactSizeIterator<Item = &Indeterminate> + '_ {
        self.factors.iter().map(|(v, _)| v)
    }

    pub fn factors(&self) -> &[(Indeterminate, u32)] {
        &self.factors
    }

    pub fn exponent(&self, x: &Indeterminate) -> u32 {
        match self.factors.binary_search_by(|(v, _)| v.cmp(x)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    pub fn contains(&self, x: &Indeterminate) -> bool {
        self.exponent(x) > 0
    }

    /// `self | other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.factors.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// Multiply by `x`, failing if `x` already divides `self`.
    pub fn mul_var(&self, x: &Indeterminate) -> Result<Monomial, PolyError> {
        if self.contains(x) {
            return Err(PolyError::NonSquareFreeResult {
                variable: x.name().to_string(),
            });
        }
        Ok(self.mul_var_general(x))
    }

    /// Multiply by `x`, raising its exponent if already present.
    pub fn mul_var_general(&self, x: &Indeterminate) -> Monomial {
        let mut factors = self.factors.clone();
        match factors.binary_search_by(|(v, _)| v.cmp(x)) {
            Ok(i) => factors[i].1 += 1,
            Err(i) => factors.insert(i, (x.clone(), 1)),
        }
        Monomial { factors }
    }

    /// Divide by `x` once; `None` if `x` does not divide `self`.
    pub fn div_var(&self, x: &Indeterminate) -> Option<Monomial> {
        let i = self.factors.binary_search_by(|(v, _)| v.cmp(x)).ok()?;
        let mut factors = self.factors.clone();
        if factors[i].1 == 1 {
            factors.remove(i);
        } else {
            factors[i].1 -= 1;
        }
        Some(Monomial { factors })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    /// Greatest common divisor.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            factors: self
                .factors
                .iter()
                .filter_map(|(v, e)| {
                    let m = (*e).min(other.exponent(v));
                    (m > 0).then(|| (v.clone(), m))
                })
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> core::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<core::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with positive integer coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, BigUint>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::from_monomials([Monomial::one()])
    }

    /// Sum of the given monomials; repeats add up.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut p = Polynomial::zero();
        for m in monomials {
            p.add_term(m, BigUint::one());
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, coefficient: BigUint) {
        if coefficient.is_zero() {
            return;
        }
        *self.terms.entry(m).or_insert_with(BigUint::zero) += coefficient;
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigUint)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigUint> {
        self.terms.get(m)
    }

    /// The power-products actually occurring, in ascending order.
    pub fn support(&self) -> Vec<Monomial> {
        self.terms.keys().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn all_coefficients_one(&self) -> bool {
        self.terms.values().all(|c| c.is_one())
    }

    pub fn is_square_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_square_free)
    }

    /// Maximal monomial degree; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<Indeterminate> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    /// `x * self`, rejecting any monomial that `x` already divides.
    pub fn multiply_label(&self, x: &Indeterminate) -> Result<Polynomial, PolyError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.mul_var(x)?, c.clone());
        }
        Ok(Polynomial { terms })
    }

    /// `x * self`, raising exponents where needed.
    pub fn multiply_label_general(&self, x: &Indeterminate) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul_var_general(x), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with real coefficients, such as a network polynomial.
#[derive(Clone, PartialEq, Default, Debug)]
pub struct RealPolynomial {
    terms: BTreeMap<Monomial, f64>,
}

impl RealPolynomial {
    pub fn add_term(&mut self, m: Monomial, coefficient: f64) {
        let c = self.terms.entry(m.clone()).or_insert(0.0);
        *c += coefficient;
        if *c == 0.0 {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &f64)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> f64 {
        self.terms.get(m).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

impl From<&Polynomial> for RealPolynomial {
    fn from(p: &Polynomial) -> Self {
        let mut r = RealPolynomial::default();
        for (m, c) in p.terms() {
            // Counts beyond f64 range saturate to infinity.
            let value = c.to_u64_digits().iter().rev().fold(0.0f64, |acc, d| {
                acc * 18_446_744_073_709_551_616.0 + *d as f64
            });
            r.add_term(m.clone(), value);
        }
        r
    }
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if *c == 1.0 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Parse a sum of square-free terms, e.g. `"t1*f1 + t1*f2 + 2*t2"`.
///
/// Like terms are combined. A term repeating an indeterminate (`x*x`, or
/// `x^2`) is rejected with [`PolyError::NonSquareFreeTerm`].
pub fn parse_polynomial(text: &str) -> Result<Polynomial, PolyError> {
    Parser::new(text, true).polynomial()
}

/// Like [`parse_polynomial`] but also accepts exponents (`x^2`) and repeated factors.
pub fn parse_polynomial_general(text: &str) -> Result<Polynomial, PolyError> {
    Parser::new(text, false).polynomial()
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    strict: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, strict: bool) -> Self {
        Parser {
            text,
            pos: 0,
            strict,
        }
    }

    fn error(&self, message: &str) -> PolyError {
        PolyError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn polynomial(mut self) -> Result<Polynomial, PolyError> {
        let mut p = Polynomial::zero();
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c);
            if !self.eat('+') {
                break;
            }
        }
        if self.peek().is_some() {
            return Err(self.error("expected `+` or end of input"));
        }
        Ok(p)
    }

    fn term(&mut self) -> Result<(Monomial, BigUint), PolyError> {
        let mut coefficient = BigUint::one();
        let mut powers: Vec<(Indeterminate, u32)> = Vec::new();
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coefficient = self.integer()?;
                if coefficient.is_zero() {
                    return Err(PolyError::Syntax {
                        position: start,
                        message: "coefficients must be positive".to_string(),
                    });
                }
                if !self.eat('*') {
                    return Ok((Monomial::one(), coefficient));
                }
                powers.push(self.factor()?);
            }
            Some(_) => powers.push(self.factor()?),
            None => return Err(self.error("expected a term")),
        }
        while self.eat('*') {
            powers.push(self.factor()?);
        }
        if self.strict {
            let mut seen = BTreeSet::new();
            for (v, e) in &powers {
                if *e > 1 || !seen.insert(v.clone()) {
                    return Err(PolyError::NonSquareFreeTerm {
                        position: start,
                        variable: v.name().to_string(),
                    });
                }
            }
        }
        Ok((Monomial::from_powers(powers), coefficient))
    }

    fn factor(&mut self) -> Result<(Indeterminate, u32), PolyError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() => {}
            Some((_, c)) if c.is_ascii_digit() => {
                return Err(self.error("a coefficient may only start a term"))
            }
            _ => return Err(self.error("expected an identifier")),
        }
        let end = chars
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let var = Indeterminate(Arc::from(&rest[..end]));
        self.pos += end;
        let mut exponent = 1;
        if self.eat('^') {
            let e = self.integer()?;
            exponent = u32::try_from(e).map_err(|_| self.error("exponent too large"))?;
            if exponent == 0 {
                return Err(self.error("exponents must be positive"));
            }
        }
        Ok((var, exponent))
    }

    fn integer(&mut self) -> Result<BigUint, PolyError> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let end = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if end == 0 {
            return Err(self.error("expected an integer"));
        }
        let value = BigUint::parse_bytes(&rest.as_bytes()[..end], 10)
            .ok_or_else(|| self.error("invalid integer"))?;
        self.pos += end;
        Ok(value)
    }
}
