//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' nat)?
//! atom   := var | int | int '/' int | 'zeta(' nat ')' ('^' int)? | '(' expr ')' | '-' atom
//! ```
//!
//! Implicit multiplication is rejected with a dedicated diagnostic. Every
//! error carries the 1-based line and column where it was detected.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, ToPrimitive, Zero};
use thiserror::Error;

use crate::cyclotomic::CycNum;
use crate::poly::{Poly, VarTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownVariable(String),
    MalformedExponent,
    DivisionByZero,
    ZetaOrderZero,
    ImplicitMultiplication,
    InvalidCharacter(char),
    UnexpectedToken(String),
    UnexpectedEnd,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub span: Span,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.span)?;
        match &self.kind {
            ParseErrorKind::UnknownVariable(name) => write!(f, "unknown variable `{name}`"),
            ParseErrorKind::MalformedExponent => {
                write!(f, "malformed exponent; expected a nonnegative integer")
            }
            ParseErrorKind::DivisionByZero => write!(f, "division by zero in rational literal"),
            ParseErrorKind::ZetaOrderZero => write!(f, "root-of-unity order must be positive"),
            ParseErrorKind::ImplicitMultiplication => {
                write!(f, "implicit multiplication is not supported; use `*`")
            }
            ParseErrorKind::InvalidCharacter(c) => write!(f, "invalid character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
        }
    }
}

fn err<T>(kind: ParseErrorKind, span: Span) -> Result<T, ParseError> {
    Err(ParseError { kind, span })
}

/// Expression tree with a source span per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprKind {
    Var(String),
    Int(BigInt),
    Rational(BigInt, BigInt),
    Zeta { order: u64, power: i64 },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Caret => write!(f, "^"),
            Tok::Slash => write!(f, "/"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1u32;
    let mut col = 1u32;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let span = Span { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            c if c.is_ascii_digit() => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(digits.parse().expect("digit string")), span));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(ident), span));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '/' => Tok::Slash,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    other => return err(ParseErrorKind::InvalidCharacter(other), span),
                };
                chars.next();
                col += 1;
                out.push((tok, span));
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.tokens
            .get(self.pos)
            .map(|(_, s)| *s)
            .unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let item = self.tokens.get(self.pos).cloned();
        if item.is_some() {
            self.pos += 1;
        }
        item
    }

    fn expect(&mut self, want: &Tok) -> Result<Span, ParseError> {
        match self.next() {
            Some((tok, span)) if &tok == want => Ok(span),
            Some((tok, span)) => err(ParseErrorKind::UnexpectedToken(tok.to_string()), span),
            None => err(ParseErrorKind::UnexpectedEnd, self.end),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Ident(_)) | Some(Tok::Int(_)) | Some(Tok::LParen)
        )
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let rhs = self.term()?;
                    let span = lhs.span;
                    lhs = Expr {
                        kind: ExprKind::Add(Box::new(lhs), Box::new(rhs)),
                        span,
                    };
                }
                Some(Tok::Minus) => {
                    self.next();
                    let rhs = self.term()?;
                    let span = lhs.span;
                    lhs = Expr {
                        kind: ExprKind::Sub(Box::new(lhs), Box::new(rhs)),
                        span,
                    };
                }
                _ => break,
            }
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if let Some(Tok::Star) = self.peek() {
                self.next();
                let rhs = self.factor()?;
                let span = lhs.span;
                lhs = Expr {
                    kind: ExprKind::Mul(Box::new(lhs), Box::new(rhs)),
                    span,
                };
            } else if self.starts_atom() {
                return err(ParseErrorKind::ImplicitMultiplication, self.span());
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let atom = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            let span = self.span();
            match self.next() {
                Some((Tok::Int(n), _)) => {
                    let e = n.to_u32().ok_or(ParseError {
                        kind: ParseErrorKind::MalformedExponent,
                        span,
                    })?;
                    let aspan = atom.span;
                    return Ok(Expr {
                        kind: ExprKind::Pow(Box::new(atom), e),
                        span: aspan,
                    });
                }
                Some(_) | None => return err(ParseErrorKind::MalformedExponent, span),
            }
        }
        Ok(atom)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        match self.next() {
            Some((Tok::Minus, _)) => {
                let inner = self.atom()?;
                Ok(Expr {
                    kind: ExprKind::Neg(Box::new(inner)),
                    span,
                })
            }
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(Expr {
                    kind: inner.kind,
                    span,
                })
            }
            Some((Tok::Int(n), _)) => {
                if let Some(Tok::Slash) = self.peek() {
                    self.next();
                    let dspan = self.span();
                    match self.next() {
                        Some((Tok::Int(d), _)) => {
                            if d.is_zero() {
                                return err(ParseErrorKind::DivisionByZero, dspan);
                            }
                            Ok(Expr {
                                kind: ExprKind::Rational(n, d),
                                span,
                            })
                        }
                        Some((tok, s)) => err(ParseErrorKind::UnexpectedToken(tok.to_string()), s),
                        None => err(ParseErrorKind::UnexpectedEnd, self.end),
                    }
                } else {
                    Ok(Expr {
                        kind: ExprKind::Int(n),
                        span,
                    })
                }
            }
            Some((Tok::Ident(name), _)) => {
                if name == "zeta" && self.peek() == Some(&Tok::LParen) {
                    self.next();
                    let ospan = self.span();
                    let order = match self.next() {
                        Some((Tok::Int(n), _)) => n.to_u64().ok_or(ParseError {
                            kind: ParseErrorKind::UnexpectedToken(n.to_string()),
                            span: ospan,
                        })?,
                        Some((tok, s)) => {
                            return err(ParseErrorKind::UnexpectedToken(tok.to_string()), s)
                        }
                        None => return err(ParseErrorKind::UnexpectedEnd, self.end),
                    };
                    if order == 0 {
                        return err(ParseErrorKind::ZetaOrderZero, ospan);
                    }
                    self.expect(&Tok::RParen)?;
                    let mut power = 1i64;
                    if let Some(Tok::Caret) = self.peek() {
                        self.next();
                        let pspan = self.span();
                        let negative = if let Some(Tok::Minus) = self.peek() {
                            self.next();
                            true
                        } else {
                            false
                        };
                        match self.next() {
                            Some((Tok::Int(n), _)) => {
                                let k = n.to_i64().ok_or(ParseError {
                                    kind: ParseErrorKind::MalformedExponent,
                                    span: pspan,
                                })?;
                                power = if negative { -k } else { k };
                            }
                            Some(_) | None => return err(ParseErrorKind::MalformedExponent, pspan),
                        }
                    }
                    Ok(Expr {
                        kind: ExprKind::Zeta { order, power },
                        span,
                    })
                } else {
                    Ok(Expr {
                        kind: ExprKind::Var(name),
                        span,
                    })
                }
            }
            Some((tok, s)) => err(ParseErrorKind::UnexpectedToken(tok.to_string()), s),
            None => err(ParseErrorKind::UnexpectedEnd, self.end),
        }
    }
}

/// Parses a full expression source into an [`Expr`] tree.
pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let tokens = lex(src)?;
    let lines = src.lines().count().max(1) as u32;
    let last_len = src.lines().last().map(|l| l.chars().count()).unwrap_or(0) as u32;
    let end = Span {
        line: lines,
        col: last_len + 1,
    };
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
    };
    let expr = parser.expr()?;
    match parser.next() {
        None => Ok(expr),
        Some((tok, span)) => err(ParseErrorKind::UnexpectedToken(tok.to_string()), span),
    }
}

/// Lowers an expression tree to a polynomial over `table`. Variable
/// references are resolved here, so unknown names are reported with the
/// span of the reference.
pub fn lower(expr: &Expr, table: &Arc<VarTable>) -> Result<Poly, ParseError> {
    match &expr.kind {
        ExprKind::Var(name) => match table.index_of(name) {
            Some(i) => Ok(Poly::variable(table, i)),
            None => err(ParseErrorKind::UnknownVariable(name.clone()), expr.span),
        },
        ExprKind::Int(n) => Ok(Poly::constant(
            table,
            CycNum::from_rational(BigRational::from_integer(n.clone())),
        )),
        ExprKind::Rational(n, d) => Ok(Poly::constant(
            table,
            CycNum::from_rational(BigRational::new(n.clone(), d.clone())),
        )),
        ExprKind::Zeta { order, power } => {
            let c = CycNum::root_of_unity(*power, *order).map_err(|_| ParseError {
                kind: ParseErrorKind::ZetaOrderZero,
                span: expr.span,
            })?;
            Ok(Poly::constant(table, c))
        }
        ExprKind::Neg(inner) => Ok(lower(inner, table)?.neg()),
        ExprKind::Add(a, b) => Ok(lower(a, table)?.add(&lower(b, table)?)),
        ExprKind::Sub(a, b) => Ok(lower(a, table)?.sub(&lower(b, table)?)),
        ExprKind::Mul(a, b) => Ok(lower(a, table)?.mul(&lower(b, table)?)),
        ExprKind::Pow(base, e) => Ok(lower(base, table)?.pow(*e)),
    }
}

/// Parses and lowers a polynomial expression in one step.
pub fn parse_poly(src: &str, table: &Arc<VarTable>) -> Result<Poly, ParseError> {
    lower(&parse_expr(src)?, table)
}

/// Parses a constant (variable-free) expression into a cyclotomic scalar.
pub fn parse_scalar(src: &str) -> Result<CycNum, ParseError> {
    static EMPTY: std::sync::OnceLock<Arc<VarTable>> = std::sync::OnceLock::new();
    let table = EMPTY.get_or_init(|| VarTable::new(&[]).unwrap());
    let poly = parse_poly(src, table)?;
    let constant = poly.terms().next().map(|(_, c)| c.clone());
    Ok(constant.unwrap_or_else(CycNum::zero))
}

/// Canonical text form of a polynomial; inverse of [`parse_poly`].
pub fn print_poly(p: &Poly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z3z3_table() -> Arc<VarTable> {
        VarTable::with_pairs(&["z1", "z1b", "z2", "z2b"], &[("z1", "z1b"), ("z2", "z2b")]).unwrap()
    }

    fn d6_table() -> Arc<VarTable> {
        VarTable::with_pairs(
            &["z1", "z1b", "z2", "z2b", "z3", "z3b"],
            &[("z1", "z1b"), ("z2", "z2b"), ("z3", "z3b")],
        )
        .unwrap()
    }

    #[test]
    fn parses_conjugate_monomials() {
        let t = z3z3_table();
        let p = parse_poly("z1*z1b", &t).unwrap();
        let q = Poly::variable(&t, 0).mul(&Poly::variable(&t, 1));
        assert_eq!(p, q);
    }

    #[test]
    fn parses_symmetrized_cubic() {
        let t = d6_table();
        let p = parse_poly("z1*z2*z3 + z1b*z2b*z3b", &t).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.total_degree(), Some(3));
        assert_eq!(p, p.conj());
    }

    #[test]
    fn zeroth_power_is_one() {
        let t = z3z3_table();
        let p = parse_poly("zeta(3)^2 * z1^0", &t).unwrap();
        let expected = Poly::constant(&t, CycNum::root_of_unity(2, 3).unwrap());
        assert_eq!(p, expected);
    }

    #[test]
    fn unknown_variable_reports_position() {
        let t = z3z3_table();
        let e = parse_poly("z1*q2", &t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("q2".into()));
        assert_eq!(e.span, Span { line: 1, col: 4 });
    }

    #[test]
    fn malformed_exponent_reports_position() {
        let t = z3z3_table();
        let e = parse_poly("z1^-2", &t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedExponent);
        let e = parse_poly("z1^z2", &t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::MalformedExponent);
    }

    #[test]
    fn rational_literals_and_zero_denominator() {
        let c = parse_scalar("3/4 - 1/2").unwrap();
        assert_eq!(
            c,
            CycNum::from_rational(BigRational::new(BigInt::from(1), BigInt::from(4)))
        );
        let e = parse_scalar("1/0").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DivisionByZero);
    }

    #[test]
    fn implicit_multiplication_is_rejected() {
        let t = z3z3_table();
        let e = parse_poly("z1 z2", &t).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ImplicitMultiplication);
        assert_eq!(e.span, Span { line: 1, col: 4 });
    }

    #[test]
    fn zeta_literals() {
        assert_eq!(
            parse_scalar("zeta(6)").unwrap(),
            CycNum::root_of_unity(1, 6).unwrap()
        );
        assert_eq!(
            parse_scalar("zeta(6)^-1").unwrap(),
            CycNum::root_of_unity(5, 6).unwrap()
        );
        assert_eq!(parse_scalar("zeta(2)").unwrap(), CycNum::from_integer(-1));
        let e = parse_scalar("zeta(0)").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::ZetaOrderZero);
    }

    #[test]
    fn negation_binds_to_atoms() {
        let t = z3z3_table();
        // -z1^2 parses as (-z1)^2 under the grammar; printing avoids the form.
        let p = parse_poly("-z1^2", &t).unwrap();
        assert_eq!(p, Poly::variable(&t, 0).pow(2));
        let q = parse_poly("-1*z1^2", &t).unwrap();
        assert_eq!(q, Poly::variable(&t, 0).pow(2).neg());
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        let term = (
            proptest::collection::vec(0u32..3, 3),
            -3i64..=3,
            1i64..=2,
            0i64..6,
            prop_oneof![Just(1u64), Just(3), Just(4)],
        );
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            let t = VarTable::with_pairs(&["z", "zb", "x"], &[("z", "zb")]).unwrap();
            let mut acc = Poly::zero(&t);
            for (exps, num, den, zexp, zord) in terms {
                let c =
                    CycNum::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
                        .mul(&CycNum::root_of_unity(zexp, zord).unwrap());
                let mut mono = Poly::constant(&t, c);
                for (i, &e) in exps.iter().enumerate() {
                    mono = mono.mul(&Poly::variable(&t, i).pow(e));
                }
                acc = acc.add(&mono);
            }
            acc
        })
    }

    fn arb_scalar() -> impl Strategy<Value = CycNum> {
        proptest::collection::vec((0i64..8, -5i64..=5, 1i64..=4, 1u64..=12), 0..4).prop_map(
            |terms| {
                let mut acc = CycNum::zero();
                for (zexp, num, den, zord) in terms {
                    let c = CycNum::from_rational(BigRational::new(
                        BigInt::from(num),
                        BigInt::from(den),
                    ));
                    acc = acc.add(&c.mul(&CycNum::root_of_unity(zexp, zord).unwrap()));
                }
                acc
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let text = print_poly(&p);
            let reparsed = parse_poly(&text, p.table()).unwrap();
            prop_assert_eq!(reparsed, p);
        }

        #[test]
        fn scalar_print_parse_round_trip(c in arb_scalar()) {
            let reparsed = parse_scalar(&c.to_string()).unwrap();
            prop_assert_eq!(reparsed, c);
        }

        #[test]
        fn parser_never_panics(src in "[ -~]{0,40}") {
            let _ = parse_expr(&src);
        }

        #[test]
        fn parser_never_panics_on_tokenish_input(src in "[z1b2x*+^/() 0-9zeta-]{0,30}") {
            let _ = parse_expr(&src);
        }
    }
}
