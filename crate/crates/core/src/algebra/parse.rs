//! Parser for the canonical text form, e.g. `t1^3 - 2*t1*t2 + 1`.

use num_bigint::BigInt;

use super::{LaurentPoly, VarSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad integer `{digits}`: {e}")))?;
            tokens.push(Token::Int(value));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            tokens.push(Token::Ident(chars[start..i].iter().collect()));
        } else {
            match c {
                '+' => tokens.push(Token::Plus),
                '-' => tokens.push(Token::Minus),
                '*' => tokens.push(Token::Star),
                '^' => tokens.push(Token::Caret),
                _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
            }
            i += 1;
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    vars: &'a VarSet,
    tokens: Vec<Token>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_poly(&mut self) -> Result<LaurentPoly> {
        let mut terms: Vec<(Vec<i64>, BigInt)> = Vec::new();
        let mut first = true;
        while self.peek().is_some() {
            let mut sign = BigInt::from(1);
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    if first {
                        return Err(Error::Parse("polynomial cannot start with `+`".into()));
                    }
                }
                Some(Token::Minus) => {
                    self.next();
                    sign = BigInt::from(-1);
                }
                _ if !first => {
                    return Err(Error::Parse("expected `+` or `-` between terms".into()));
                }
                _ => {}
            }
            let (exps, coeff) = self.parse_term()?;
            terms.push((exps, sign * coeff));
            first = false;
        }
        if first {
            return Err(Error::Parse("empty polynomial".into()));
        }
        Ok(LaurentPoly::from_terms(self.vars.clone(), terms))
    }

    fn parse_term(&mut self) -> Result<(Vec<i64>, BigInt)> {
        let mut coeff = BigInt::from(1);
        let mut exps = vec![0i64; self.vars.len()];
        self.parse_factor(&mut coeff, &mut exps)?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            self.parse_factor(&mut coeff, &mut exps)?;
        }
        Ok((exps, coeff))
    }

    fn parse_factor(&mut self, coeff: &mut BigInt, exps: &mut [i64]) -> Result<()> {
        match self.next() {
            Some(Token::Int(v)) => {
                *coeff *= v;
                Ok(())
            }
            Some(Token::Ident(name)) => {
                let idx = self
                    .vars
                    .index_of(&name)
                    .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
                let mut exp = 1i64;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.next();
                    let negative = if matches!(self.peek(), Some(Token::Minus)) {
                        self.next();
                        true
                    } else {
                        false
                    };
                    match self.next() {
                        Some(Token::Int(v)) => {
                            let mag: i64 = v.try_into().map_err(|_| {
                                Error::Parse("exponent too large".into())
                            })?;
                            exp = if negative { -mag } else { mag };
                        }
                        _ => return Err(Error::Parse("expected integer exponent after `^`".into())),
                    }
                }
                exps[idx] += exp;
                Ok(())
            }
            other => Err(Error::Parse(format!(
                "expected a coefficient or variable, found {other:?}"
            ))),
        }
    }
}

pub(super) fn parse(vars: &VarSet, input: &str) -> Result<LaurentPoly> {
    let tokens = lex(input)?;
    let mut parser = Parser {
        vars,
        tokens,
        pos: 0,
    };
    parser.parse_poly()
}

#[cfg(test)]
mod tests {
    use super::super::{LaurentPoly, VarSet};

    #[test]
    fn roundtrip_simple() {
        let v = VarSet::indexed("t", 2);
        for s in [
            "t1^3 - 2*t1*t2 + 1",
            "0",
            "-1",
            "5 + t1^-2",
            "-t2 + 3*t1*t2^-4",
        ] {
            let poly = LaurentPoly::parse(&v, s).unwrap();
            assert_eq!(poly.to_string(), s, "canonical form of `{s}`");
            let again = LaurentPoly::parse(&v, &poly.to_string()).unwrap();
            assert_eq!(poly, again);
        }
    }

    #[test]
    fn merges_repeated_terms() {
        let v = VarSet::new(["t"]).unwrap();
        let poly = LaurentPoly::parse(&v, "t + t - 2*t").unwrap();
        assert!(poly.is_zero());
    }

    #[test]
    fn rejects_garbage() {
        let v = VarSet::new(["t"]).unwrap();
        assert!(LaurentPoly::parse(&v, "t +").is_err());
        assert!(LaurentPoly::parse(&v, "x").is_err());
        assert!(LaurentPoly::parse(&v, "").is_err());
        assert!(LaurentPoly::parse(&v, "t ^ x").is_err());
    }
}
