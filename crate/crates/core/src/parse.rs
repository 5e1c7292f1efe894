//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := rational | name | '(' expr ')'
//! ```
//!
//! Rationals are written `a` or `a/b`; the slash only binds digits, so
//! `1/2*x` is one half times `x`. Positions in errors are byte offsets.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Int(u32),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => toks.push((Tok::Plus, start)),
            b'-' => toks.push((Tok::Minus, start)),
            b'*' => toks.push((Tok::Star, start)),
            b'^' => toks.push((Tok::Caret, start)),
            b'(' => toks.push((Tok::LParen, start)),
            b')' => toks.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = text[start..i].parse().expect("digits");
                if i < bytes.len() && bytes[i] == b'/' {
                    let slash = i;
                    i += 1;
                    let dstart = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(Error::Syntax {
                            pos: slash,
                            msg: "expected digits after '/'".into(),
                        });
                    }
                    let den: BigInt = text[dstart..i].parse().expect("digits");
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            pos: dstart,
                            msg: "zero denominator".into(),
                        });
                    }
                    toks.push((Tok::Num(Rational::new(num, den)), start));
                } else {
                    let small = u32::try_from(&num).ok();
                    match small {
                        Some(v) => toks.push((Tok::Int(v), start)),
                        None => toks.push((Tok::Num(Rational::from_integer(num)), start)),
                    }
                }
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Name(text[start..i].to_string()), start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character '{ch}'"),
                });
            }
        }
        i += 1;
    }
    toks.push((Tok::End, text.len()));
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Tok::Minus => {
                self.bump();
                Ok(-&self.unary()?)
            }
            Tok::Plus => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        match self.bump() {
            Tok::Int(e) => Ok(base.pow(e)),
            Tok::Minus => Err(Error::NegativeExponent { pos }),
            Tok::Num(_) => Err(Error::Syntax {
                pos,
                msg: "exponent must be a small nonnegative integer".into(),
            }),
            _ => Err(Error::Syntax {
                pos,
                msg: "expected exponent after '^'".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(c) => Ok(MultiPoly::constant(self.nvars(), c)),
            Tok::Int(v) => Ok(MultiPoly::constant(self.nvars(), Rational::from_integer(v.into()))),
            Tok::Name(name) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => MultiPoly::var(self.nvars(), i),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Tok::RParen => Ok(inner),
                    _ => Err(Error::Syntax {
                        pos: close,
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            t => Err(Error::Syntax {
                pos,
                msg: format!("unexpected token {t:?}"),
            }),
        }
    }
}

/// Parses `text` as a polynomial in the named variables (in order).
pub fn parse_polynomial(text: &str, vars: &[&str]) -> Result<MultiPoly> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, at: 0, vars };
    let poly = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(Error::Syntax {
            pos: parser.pos(),
            msg: "unexpected trailing input".into(),
        });
    }
    Ok(poly)
}

/// Same as [`parse_polynomial`] for owned name lists.
pub fn parse_with_names<S: AsRef<str>>(text: &str, vars: &[S]) -> Result<MultiPoly> {
    let names: Vec<&str> = vars.iter().map(AsRef::as_ref).collect();
    parse_polynomial(text, &names)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn reads_example_polynomial() {
        let p = parse_polynomial("2*y - x^2 + x^4", &["x", "y"]).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.coeff(&[0, 1]), int(2));
        assert_eq!(p.coeff(&[2, 0]), int(-1));
        assert_eq!(p.coeff(&[4, 0]), int(1));
    }

    #[test]
    fn zero_and_cancellation() {
        assert!(parse_polynomial("0", &["x"]).unwrap().is_zero());
        assert!(parse_polynomial("(x+1)^2 - x^2 - 2*x - 1", &["x"]).unwrap().is_zero());
    }

    #[test]
    fn rationals_and_unary_minus() {
        let p = parse_polynomial("-1/2*x^2 + -(3/4)", &["x"]).unwrap();
        assert_eq!(p.coeff(&[2]), ratio(-1, 2));
        assert_eq!(p.coeff(&[0]), ratio(-3, 4));
        // unary minus binds looser than '^'
        let q = parse_polynomial("-x^2", &["x"]).unwrap();
        assert_eq!(q.coeff(&[2]), int(-1));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_polynomial("x + z", &["x", "y"]).unwrap_err(),
            Error::UnknownVariable {
                name: "z".into(),
                pos: 4
            }
        );
        assert_eq!(
            parse_polynomial("x^-2", &["x"]).unwrap_err(),
            Error::NegativeExponent { pos: 2 }
        );
        assert!(matches!(
            parse_polynomial("x + ", &["x"]).unwrap_err(),
            Error::Syntax { pos: 4, .. }
        ));
        assert!(matches!(
            parse_polynomial("(x + 1", &["x"]).unwrap_err(),
            Error::Syntax { pos: 6, .. }
        ));
        assert!(matches!(
            parse_polynomial("x $ 1", &["x"]).unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
        assert!(matches!(
            parse_polynomial("1/0", &["x"]).unwrap_err(),
            Error::Syntax { .. }
        ));
        assert!(matches!(
            parse_polynomial("x y", &["x", "y"]).unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
    }

    #[test]
    fn printed_form_reparses() {
        let vars = ["x", "y", "t"];
        let p = parse_polynomial("(x - 1/3*y + t)^3 - 5/7*x*t + 2", &vars).unwrap();
        let again = parse_polynomial(&p.to_string_with(&vars), &vars).unwrap();
        assert_eq!(p, again);
    }
}
