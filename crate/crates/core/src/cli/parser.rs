//! Recursive-descent parser for equations `u_t = <expr>` and for
//! characteristic expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*        division by constants only
//! unary  := "-" unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | "u" | "u_" integer | "y" | "t"
//!         | "exp" "(" expr ")" | "(" expr ")"
//! ```
//!
//! The argument of `exp` must be a linear combination of `t`, `y` and `u`
//! without constant term.

use num_traits::Zero;
use thiserror::Error;

use crate::algebra::Rational;
use crate::engine::{EngineError, EvolutionEquation};
use crate::jet::{Coord, ExpPolyExpr, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {}, found {found}", .expected.join(" or "))]
    Syntax {
        position: usize,
        expected: Vec<String>,
        found: String,
    },
    #[error("scope error: {0}")]
    Scope(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(n) => format!("number {n}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".into(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Int(s.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|p| p.1).collect())));
        } else if "+-*/^()=".contains(c) {
            out.push((pos, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ParseError::Syntax {
                position: pos,
                expected: vec!["a token".into()],
                found: format!("'{c}'"),
            });
        }
    }
    out.push((src.len(), Tok::End));
    Ok(out)
}

const OPERAND: [&str; 6] = ["number", "'u'", "'u_k'", "'y'", "'exp'", "'('"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    allow_t: bool,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError::Syntax {
            position: self.pos(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&[&format!("'{c}'")]))
        }
    }

    fn expr(&mut self) -> Result<ExpPolyExpr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ExpPolyExpr, ParseError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if *self.peek() == Tok::Sym('/') {
                let pos = self.pos();
                self.at += 1;
                let d = self.unary()?;
                let c = constant_value(&d).filter(|c| !c.is_zero()).ok_or(ParseError::Syntax {
                    position: pos,
                    expected: vec!["a nonzero constant divisor".into()],
                    found: d.to_string(),
                })?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ExpPolyExpr, ParseError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ExpPolyExpr, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let Tok::Int(n) = self.peek().clone() else {
                return Err(self.error(&["non-negative integer exponent"]));
            };
            let e: u32 = n.try_into().map_err(|_| self.error(&["small exponent"]))?;
            self.at += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExpPolyExpr, ParseError> {
        let tok = self.peek().clone();
        match tok {
            Tok::Int(n) => {
                self.at += 1;
                Ok(ExpPolyExpr::constant(Rational::from_integer(n)))
            }
            Tok::Sym('(') => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "exp" => {
                self.at += 1;
                self.expect('(')?;
                let pos = self.pos();
                let arg = self.expr()?;
                self.expect(')')?;
                exponential(&arg).ok_or(ParseError::Syntax {
                    position: pos,
                    expected: vec!["a linear combination of t, y and u".into()],
                    found: arg.to_string(),
                })
            }
            Tok::Ident(name) => match Coord::from_name(&name) {
                Some(Coord::T) if !self.allow_t => Err(ParseError::Scope(
                    "characteristics may not depend on t".into(),
                )),
                Some(c) => {
                    self.at += 1;
                    Ok(ExpPolyExpr::var(c))
                }
                None => Err(self.error(&OPERAND)),
            },
            _ => Err(self.error(&OPERAND)),
        }
    }
}

fn constant_value(e: &ExpPolyExpr) -> Option<Rational> {
    if e.is_zero() {
        return Some(Rational::zero());
    }
    let mut terms = e.terms();
    let (m, c) = terms.next()?;
    (terms.next().is_none() && *m == Monomial::one()).then(|| c.clone())
}

fn exponential(arg: &ExpPolyExpr) -> Option<ExpPolyExpr> {
    let mut m = Monomial::one();
    for (mono, c) in arg.terms() {
        if !mono.exps().is_empty() {
            return None;
        }
        let [(coord, 1)] = mono.powers() else {
            return None;
        };
        if !coord.is_zero_jet() {
            return None;
        }
        m.set_weight(*coord, c.clone()).ok()?;
    }
    Some(ExpPolyExpr::term(m, Rational::from_integer(1.into())))
}

fn parse_all(src: &str, allow_t: bool) -> Result<ExpPolyExpr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        allow_t,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

/// Parses a characteristic; `t` is rejected.
pub fn parse_expression(src: &str) -> Result<ExpPolyExpr, ParseError> {
    parse_all(src, false)
}

/// Parses `u_t = <expr>`.
pub fn parse_equation(src: &str) -> Result<EvolutionEquation, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        allow_t: true,
    };
    if *p.peek() != Tok::Ident("u_t".into()) {
        return Err(p.error(&["'u_t'"]));
    }
    p.at += 1;
    p.expect('=')?;
    let rhs = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    EvolutionEquation::new(rhs).map_err(|e| match e {
        EngineError::Scope(msg) => ParseError::Scope(msg),
        other => ParseError::Scope(other.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn equations() {
        assert_eq!(parse_equation("u_t = u_2").unwrap().order(), 2);
        let e = parse_equation("u_t=u_2 - u").unwrap();
        assert_eq!(e.rhs().to_string(), "-u + u_2");
        assert_eq!(
            parse_equation("u_t = u_3 + u*u_1").unwrap().rhs().to_string(),
            "u_3 + u*u_1"
        );
        assert!(matches!(parse_equation("u_t = y*u_2"), Err(ParseError::Scope(_))));
        assert!(matches!(parse_equation("u_t = t*u_2"), Err(ParseError::Scope(_))));
        assert!(matches!(parse_equation("u_t = u_1"), Err(ParseError::Scope(_))));
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse_equation("u_t = u_2 +") {
            Err(ParseError::Syntax { position, expected, .. }) => {
                assert_eq!(position, 11);
                assert!(expected.contains(&"'u'".to_string()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_equation("u_x = u_2"), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(parse_equation("u_t = u_2 $"), Err(ParseError::Syntax { position: 10, .. })));
        assert!(matches!(parse_equation("u_t = u_2 / u"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_equation("u_t = (u_2"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_expression("exp(y + 1)"), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn expressions() {
        let e = parse_expression("3*exp(2*y)*y^2*u_1 - u/2").unwrap();
        assert_eq!(e.to_string(), "3*exp(2*y)*y^2*u_1 - 1/2*u");
        let e = parse_expression("exp(y)*exp(-u/2)").unwrap();
        assert_eq!(e.to_string(), "exp(y - 1/2*u)");
        assert_eq!(parse_expression("(u + 1)^2").unwrap(), {
            let u = ExpPolyExpr::var(Coord::U);
            &(&u * &u) + &(&u.scale(&int(2)) + &ExpPolyExpr::one())
        });
        assert!(matches!(parse_expression("t*u"), Err(ParseError::Scope(_))));
    }

    #[test]
    fn render_round_trip() {
        for src in [
            "u_2",
            "-u + u_2",
            "exp(-y)",
            "1/3*y*u_1^2 - 7",
            "exp(3/2*y - u)*(u_1 + y)",
            "u_10*u_3 - 2*u*u_1",
        ] {
            let e = parse_expression(src).unwrap();
            assert_eq!(parse_expression(&e.to_string()).unwrap(), e, "{src}");
        }
    }
}
