//! Text input for polynomials and size forms.
//!
//! Grammar: integer literals, declared variables, binary `+ - *`, unary `-`,
//! `^` with a non-negative integer literal exponent, and parentheses.
//! Precedence from tightest: `^`, unary `-`, `*`, then `+ -`. Implicit
//! multiplication is not accepted.

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::{AffineForm, Polynomial, Rational, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("bad exponent at position {pos}: {msg}")]
    BadExponent { pos: usize, msg: String },
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate variable `{0}` in the allowed list")]
    DuplicateVariable(String),
    #[error("`{text}` is not affine-linear: {msg}")]
    NotAffine { text: String, msg: String },
    #[error("`{text}` is not a valid size form: {msg}")]
    InvalidAffine { text: String, msg: String },
}

/// Expression text plus the variables it may mention.
#[derive(Clone, Debug)]
pub struct ExprSource<'a> {
    pub text: &'a str,
    pub allowed_vars: &'a [Var],
}

impl<'a> ExprSource<'a> {
    pub fn new(text: &'a str, allowed_vars: &'a [Var]) -> Self {
        ExprSource { text, allowed_vars }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((Tok::Plus, start)),
            '-' => out.push((Tok::Minus, start)),
            '*' => out.push((Tok::Star, start)),
            '^' => out.push((Tok::Caret, start)),
            '(' => out.push((Tok::LParen, start)),
            ')' => out.push((Tok::RParen, start)),
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'.' || bytes[i].is_ascii_alphabetic()) {
                    return Err(ParseError::Syntax {
                        pos: i,
                        msg: "expected an operator after the number (use explicit `*`)".into(),
                    });
                }
                out.push((Tok::Int(text[start..i].parse().expect("digits")), start));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'[' {
                    let open = i;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == open + 1 || i >= bytes.len() || bytes[i] != b']' {
                        return Err(ParseError::Syntax {
                            pos: open,
                            msg: "malformed index, expected `[<digits>]`".into(),
                        });
                    }
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

const SUM_BP: u8 = 1;
const PRODUCT_BP: u8 = 3;
const UNARY_BP: u8 = 5;
const POWER_BP: u8 = 7;

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    allowed: &'a [Var],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn next(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<Var, ParseError> {
        if let Some(v) = self.allowed.iter().find(|v| v.name() == name) {
            return Ok(v.clone());
        }
        // `a1` is accepted for `a[1]`
        let split = name.find(|c: char| c.is_ascii_digit());
        if let Some(k) = split.filter(|&k| k > 0 && name[k..].bytes().all(|b| b.is_ascii_digit())) {
            let indexed = format!("{}[{}]", &name[..k], &name[k..]);
            if let Some(v) = self.allowed.iter().find(|v| v.name() == indexed) {
                return Ok(v.clone());
            }
        }
        Err(ParseError::UnknownVariable {
            name: name.to_string(),
            pos,
        })
    }

    fn expr(&mut self, min_bp: u8) -> Result<Polynomial, ParseError> {
        let pos = self.here();
        let mut lhs = match self.next() {
            Some((Tok::Int(n), _)) => Polynomial::constant(Rational::from_integer(n)),
            Some((Tok::Ident(name), p)) => Polynomial::var(self.resolve(&name, p)?),
            Some((Tok::LParen, _)) => {
                let inner = self.expr(0)?;
                match self.next() {
                    Some((Tok::RParen, _)) => inner,
                    _ => {
                        return Err(ParseError::Syntax {
                            pos: self.toks.get(self.pos - 1).map_or(self.end, |(_, p)| *p),
                            msg: "expected `)`".into(),
                        })
                    }
                }
            }
            Some((Tok::Minus, _)) => -self.expr(UNARY_BP)?,
            Some((t, p)) => {
                return Err(ParseError::Syntax {
                    pos: p,
                    msg: format!("unexpected {}", describe(&t)),
                })
            }
            None => {
                return Err(ParseError::Syntax {
                    pos,
                    msg: "unexpected end of input".into(),
                })
            }
        };

        loop {
            let (lbp, rbp) = match self.peek() {
                Some(Tok::Plus | Tok::Minus) => (SUM_BP, SUM_BP + 1),
                Some(Tok::Star) => (PRODUCT_BP, PRODUCT_BP + 1),
                Some(Tok::Caret) => (POWER_BP, POWER_BP + 1),
                Some(Tok::RParen) | None => break,
                Some(t) => {
                    return Err(ParseError::Syntax {
                        pos: self.here(),
                        msg: format!("expected an operator, found {}", describe(t)),
                    })
                }
            };
            if lbp < min_bp {
                break;
            }
            let (op, op_pos) = self.next().expect("peeked");
            lhs = match op {
                Tok::Plus => &lhs + &self.expr(rbp)?,
                Tok::Minus => &lhs - &self.expr(rbp)?,
                Tok::Star => &lhs * &self.expr(rbp)?,
                Tok::Caret => lhs.pow(self.exponent(op_pos)?),
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn exponent(&mut self, caret: usize) -> Result<u32, ParseError> {
        match self.next() {
            Some((Tok::Int(n), p)) => u32::try_from(&n).map_err(|_| ParseError::BadExponent {
                pos: p,
                msg: format!("exponent {n} is too large"),
            }),
            Some((Tok::Minus, p)) => Err(ParseError::BadExponent {
                pos: p,
                msg: "negative exponents are not polynomial".into(),
            }),
            Some((t, p)) => Err(ParseError::BadExponent {
                pos: p,
                msg: format!(
                    "expected a non-negative integer literal, found {}",
                    describe(&t)
                ),
            }),
            None => Err(ParseError::BadExponent {
                pos: caret,
                msg: "missing exponent".into(),
            }),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
    }
}

pub fn parse_poly(src: &ExprSource<'_>) -> Result<Polynomial, ParseError> {
    for (i, v) in src.allowed_vars.iter().enumerate() {
        if src.allowed_vars[..i].contains(v) {
            return Err(ParseError::DuplicateVariable(v.to_string()));
        }
    }
    let mut p = Parser {
        toks: lex(src.text)?,
        pos: 0,
        end: src.text.len(),
        allowed: src.allowed_vars,
    };
    let out = p.expr(0)?;
    if let Some((t, pos)) = p.toks.get(p.pos) {
        return Err(ParseError::Syntax {
            pos: *pos,
            msg: format!("unexpected {}", describe(t)),
        });
    }
    Ok(out)
}

/// Parses a degree ≤ 1 form without checking the positivity conditions;
/// every allowed variable gets a coefficient entry.
pub fn parse_linear(src: &ExprSource<'_>) -> Result<AffineForm, ParseError> {
    let p = parse_poly(src)?;
    AffineForm::from_polynomial(&p, src.allowed_vars).map_err(|msg| ParseError::NotAffine {
        text: src.text.to_string(),
        msg,
    })
}

/// [`parse_linear`] followed by size-form validation.
pub fn parse_affine(src: &ExprSource<'_>) -> Result<AffineForm, ParseError> {
    let form = parse_linear(src)?;
    let problems = form.violations();
    if problems.is_empty() {
        Ok(form)
    } else {
        Err(ParseError::InvalidAffine {
            text: src.text.to_string(),
            msg: problems.join("; "),
        })
    }
}
