//! Nested representations `f = Σ_{x∈A} x·f_x`, their text form and parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! nesting := "1" | item ("+" item)*
//! item    := ident [ ["*"] "(" nesting ")" ]
//! ```
//!
//! A bare `ident` stands for `ident*(1)`. The parser is purely syntactic;
//! structural rules (at least two distinct labels per sum) are checked by
//! [`Nesting::validate`].

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::poly::{Indeterminate, PolyError, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Nesting {
    /// The constant `1` (a leaf).
    Unit,
    /// `Σ x·f_x` over the listed labels.
    Sum(Vec<(Indeterminate, Nesting)>),
}

/// Why a nesting is not a valid nested representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NestingError {
    SingleTerm { label: String },
    RepeatedLabel { label: String },
    Empty,
}

impl fmt::Display for NestingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NestingError::SingleTerm { label } => {
                write!(f, "sum starting with `{label}` has a single term")
            }
            NestingError::RepeatedLabel { label } => {
                write!(f, "label `{label}` repeats within one sum")
            }
            NestingError::Empty => f.write_str("empty sum"),
        }
    }
}

impl Nesting {
    pub fn parse(text: &str) -> Result<Nesting, PolyError> {
        let mut p = NestParser { text, pos: 0 };
        let n = p.nesting()?;
        if p.peek().is_some() {
            return Err(p.error("expected `+` or end of input"));
        }
        Ok(n)
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Nesting::Unit)
    }

    /// Every sum has at least two terms with distinct labels.
    pub fn validate(&self) -> Result<(), NestingError> {
        match self {
            Nesting::Unit => Ok(()),
            Nesting::Sum(items) => {
                match items.len() {
                    0 => return Err(NestingError::Empty),
                    1 => {
                        return Err(NestingError::SingleTerm {
                            label: items[0].0.name().to_string(),
                        })
                    }
                    _ => {}
                }
                let mut labels: Vec<&Indeterminate> = items.iter().map(|(x, _)| x).collect();
                labels.sort();
                if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
                    return Err(NestingError::RepeatedLabel {
                        label: w[0].name().to_string(),
                    });
                }
                items.iter().try_for_each(|(_, f)| f.validate())
            }
        }
    }

    /// Sibling order normalized by label, recursively.
    pub fn canonical(&self) -> Nesting {
        match self {
            Nesting::Unit => Nesting::Unit,
            Nesting::Sum(items) => {
                let mut items: Vec<(Indeterminate, Nesting)> = items
                    .iter()
                    .map(|(x, f)| (x.clone(), f.canonical()))
                    .collect();
                items.sort();
                Nesting::Sum(items)
            }
        }
    }

    /// The distributed polynomial (exponents rise if a label repeats along a path).
    pub fn expand(&self) -> Polynomial {
        match self {
            Nesting::Unit => Polynomial::one(),
            Nesting::Sum(items) => items.iter().fold(Polynomial::zero(), |acc, (x, f)| {
                acc.add(&f.expand().multiply_label_general(x))
            }),
        }
    }
}

impl fmt::Display for Nesting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nesting::Unit => f.write_str("1"),
            Nesting::Sum(items) => {
                for (i, (x, sub)) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    match sub {
                        Nesting::Unit => write!(f, "{x}")?,
                        _ => write!(f, "{x}*({sub})")?,
                    }
                }
                Ok(())
            }
        }
    }
}

struct NestParser<'a> {
    text: &'a str,
    pos: usize,
}

impl NestParser<'_> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Option<char> {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
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

    fn nesting(&mut self) -> Result<Nesting, PolyError> {
        if self.peek() == Some('1') {
            self.pos += 1;
            if self.text[self.pos..]
                .chars()
                .next()
                .is_some_and(|c| c.is_alphanumeric() || c == '_')
            {
                return Err(self.error("unexpected character after `1`"));
            }
            return Ok(Nesting::Unit);
        }
        let mut items = Vec::new();
        loop {
            items.push(self.item()?);
            if !self.eat('+') {
                break;
            }
        }
        Ok(Nesting::Sum(items))
    }

    fn item(&mut self) -> Result<(Indeterminate, Nesting), PolyError> {
        let label = self.ident()?;
        let star = self.eat('*');
        if self.eat('(') {
            let inner = self.nesting()?;
            if !self.eat(')') {
                return Err(self.error("expected `)`"));
            }
            Ok((label, inner))
        } else if star {
            Err(self.error("expected `(` after `*`"))
        } else {
            Ok((label, Nesting::Unit))
        }
    }

    fn ident(&mut self) -> Result<Indeterminate, PolyError> {
        self.peek();
        let rest = &self.text[self.pos..];
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if c.is_alphabetic() => {}
            _ => return Err(self.error("expected a label")),
        }
        let end = chars
            .find(|(_, c)| !(c.is_alphanumeric() || *c == '_'))
            .map(|(i, _)| i)
            .unwrap_or(rest.len());
        let name: Arc<str> = Arc::from(&rest[..end]);
        self.pos += end;
        Indeterminate::new(&name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    #[test]
    fn parse_and_print() {
        let n = Nesting::parse("t0*(1) + t1(f1+f2) + t2*(f1 + f2)").unwrap();
        assert_eq!(n.to_string(), "t0 + t1*(f1 + f2) + t2*(f1 + f2)");
        assert_eq!(Nesting::parse("1").unwrap(), Nesting::Unit);
        assert_eq!(Nesting::parse(&n.to_string()).unwrap(), n);
    }

    #[test]
    fn expands_to_distributed_form() {
        let n = Nesting::parse("t1*(f1 + f2 + f3) + t2*(f1 + f2*(s1 + s2 + s3) + f3)").unwrap();
        let p = parse_polynomial(
            "t1*f1 + t1*f2 + t1*f3 + t2*f1 + t2*f2*s1 + t2*f2*s2 + t2*f2*s3 + t2*f3",
        )
        .unwrap();
        assert_eq!(n.expand(), p);
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Nesting::parse("x*(a + b)").unwrap().validate(),
            Err(NestingError::SingleTerm { .. })
        ));
        assert!(matches!(
            Nesting::parse("x + x").unwrap().validate(),
            Err(NestingError::RepeatedLabel { .. })
        ));
        assert!(Nesting::parse("x + y*(a + b)").unwrap().validate().is_ok());
    }

    #[test]
    fn syntax_errors() {
        assert!(Nesting::parse("x*").is_err());
        assert!(Nesting::parse("x*(a + b").is_err());
        assert!(Nesting::parse("x + ").is_err());
        assert!(Nesting::parse("12").is_err());
        assert!(Nesting::parse("x y").is_err());
    }

    #[test]
    fn canonical_sorts_siblings() {
        let a = Nesting::parse("y*(b + a) + x").unwrap();
        let b = Nesting::parse("x + y*(a + b)").unwrap();
        assert_ne!(a, b);
        assert_eq!(a.canonical(), b.canonical());
    }
}
