//! Text syntax for polynomials: `3/2 x1^2 x3 - y`, with `*`, parentheses and
//! integer powers. Variables are `x1..xn`; for at most three variables `x, y, z`
//! are accepted as aliases.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use super::poly::{default_variable_names, TruncatedPolynomial, UNBOUNDED};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parses with the default variable names for `nvars` variables.
pub fn parse_polynomial<S: Scalar>(text: &str, nvars: usize) -> Result<TruncatedPolynomial<S>> {
    let mut names: HashMap<String, usize> = (0..nvars).map(|i| (format!("x{}", i + 1), i)).collect();
    for (i, n) in default_variable_names(nvars).into_iter().enumerate() {
        names.insert(n, i);
    }
    Parser::new(text, nvars, names).parse()
}

/// Parses with an explicit list of variable names.
pub fn parse_polynomial_with<S: Scalar>(text: &str, names: &[String]) -> Result<TruncatedPolynomial<S>> {
    let map = names.iter().cloned().enumerate().map(|(i, n)| (n, i)).collect();
    Parser::new(text, names.len(), map).parse()
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    nvars: usize,
    names: HashMap<String, usize>,
    lex_error: Option<Error>,
}

fn err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (at, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((at, Token::Int(s.parse().expect("digits"))));
            }
            c if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push((at, Token::Ident(s)));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                let t = match c {
                    '+' => Token::Plus,
                    '-' => Token::Minus,
                    '*' => Token::Star,
                    '/' => Token::Slash,
                    '^' => Token::Caret,
                    '(' => Token::LParen,
                    _ => Token::RParen,
                };
                out.push((at, t));
                i += 1;
            }
            other => return Err(err(at, format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

impl Parser {
    fn new(text: &str, nvars: usize, names: HashMap<String, usize>) -> Self {
        let (tokens, lex_error) = match lex(text) {
            Ok(t) => (t, None),
            Err(e) => (Vec::new(), Some(e)),
        };
        Parser { tokens, pos: 0, end: text.len(), nvars, names, lex_error }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn parse<S: Scalar>(mut self) -> Result<TruncatedPolynomial<S>> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        if self.tokens.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let p = self.expr()?;
        if self.pos != self.tokens.len() {
            return Err(err(self.here(), "unexpected trailing input"));
        }
        Ok(p)
    }

    fn expr<S: Scalar>(&mut self) -> Result<TruncatedPolynomial<S>> {
        let mut acc = TruncatedPolynomial::zero(self.nvars, UNBOUNDED);
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    1
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Token::Int(_) | Token::Ident(_) | Token::LParen))
    }

    fn term<S: Scalar>(&mut self) -> Result<TruncatedPolynomial<S>> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Token::Star)) {
                self.pos += 1;
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor<S: Scalar>(&mut self) -> Result<TruncatedPolynomial<S>> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.pos += 1;
            let at = self.here();
            match self.peek().cloned() {
                Some(Token::Int(e)) => {
                    self.pos += 1;
                    let e: u32 = e.try_into().map_err(|_| err(at, "exponent too large"))?;
                    return Ok(base.pow(e, UNBOUNDED));
                }
                _ => return Err(err(at, "expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom<S: Scalar>(&mut self) -> Result<TruncatedPolynomial<S>> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Token::Int(num)) => {
                self.pos += 1;
                let mut den = BigInt::one();
                if matches!(self.peek(), Some(Token::Slash)) {
                    self.pos += 1;
                    let at = self.here();
                    match self.peek().cloned() {
                        Some(Token::Int(d)) => {
                            self.pos += 1;
                            den = d;
                        }
                        _ => return Err(err(at, "expected a denominator")),
                    }
                }
                let c = S::from_ratio(&num, &den).ok_or_else(|| err(at, "invalid rational literal"))?;
                Ok(TruncatedPolynomial::constant(self.nvars, UNBOUNDED, c))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                let v = *self.names.get(&name).ok_or_else(|| err(at, format!("unknown variable '{name}'")))?;
                Ok(TruncatedPolynomial::variable(self.nvars, UNBOUNDED, v))
            }
            Some(Token::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !matches!(self.peek(), Some(Token::RParen)) {
                    return Err(err(self.here(), "expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(err(at, "expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::monomial::MultiIndex;
    use num_rational::BigRational;

    type P = TruncatedPolynomial<BigRational>;

    #[test]
    fn parses_juxtaposed_terms() {
        let f: P = parse_polynomial("3/2 x1^2 x3 - y", 3).unwrap();
        assert_eq!(f.coeff(&MultiIndex::new(vec![2, 0, 1])), BigRational::new(3.into(), 2.into()));
        assert_eq!(f.coeff(&MultiIndex::new(vec![0, 1, 0])), BigRational::from_integer((-1).into()));
        assert_eq!(f.len(), 2);
    }

    #[test]
    fn aliases_only_up_to_three_variables() {
        assert!(parse_polynomial::<BigRational>("x1 + x", 1).is_ok());
        assert!(parse_polynomial::<BigRational>("y", 4).is_err());
        assert!(parse_polynomial::<BigRational>("x4", 4).is_ok());
    }

    #[test]
    fn parentheses_and_powers() {
        let f: P = parse_polynomial("(x + y)^2 - 2*x*y", 2).unwrap();
        let g: P = parse_polynomial("x^2 + y^2", 2).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn errors_carry_positions() {
        match parse_polynomial::<BigRational>("x + ? y", 2) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        match parse_polynomial::<BigRational>("x + w", 2) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_polynomial::<BigRational>("", 2).is_err());
        assert!(parse_polynomial::<BigRational>("x^", 2).is_err());
        assert!(parse_polynomial::<BigRational>("(x", 2).is_err());
        assert!(parse_polynomial::<BigRational>("1/0", 2).is_err());
    }

    #[test]
    fn display_round_trips() {
        for s in ["y - x^2", "1 - 3/4 x y + z^3", "-x"] {
            let f: P = parse_polynomial(s, 3).unwrap();
            assert_eq!(parse_polynomial::<BigRational>(&f.to_string(), 3).unwrap(), f);
        }
    }
}
