//! Recursive-descent parser for the expression grammar used by every text
//! input:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/' | <implicit>) unary)*
//! unary  := ('+' | '-') unary | factor
//! factor := atom (('^' | '**') uint)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is ignored. Positions in errors are 0-based character columns
//! and never exceed the input length.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::fields::{Field, FqContext, FqElement, Rational};
use crate::funcfield::{BuchiForm, RatFunc};
use crate::poly::Poly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} at column {pos}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    WrongVariable(char),
    NegativeExponent,
    DivisionInPolyContext,
    DivisionByZero,
    InvalidForm(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::WrongVariable(c) => write!(f, "unexpected variable '{c}'"),
            ParseErrorKind::NegativeExponent => f.write_str("negative exponent"),
            ParseErrorKind::DivisionInPolyContext => {
                f.write_str("division by a non-constant in a polynomial context")
            }
            ParseErrorKind::DivisionByZero => f.write_str("division by zero"),
            ParseErrorKind::InvalidForm(m) => write!(f, "invalid form: {m}"),
        }
    }
}

/// Syntax tree; every node keeps the column where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt, usize),
    Var(char, usize),
    Neg(Box<Expr>, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push((Tok::Int(digits.parse().expect("digits")), start));
                continue;
            }
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '*' if chars.get(i + 1) == Some(&'*') => {
                i += 1;
                Tok::Caret
            }
            '*' => Tok::Star,
            c if c.is_alphabetic() => Tok::Var(c),
            other => {
                return Err(ParseError {
                    kind: ParseErrorKind::Syntax(format!("unexpected character '{other}'")),
                    pos: start,
                })
            }
        };
        i += 1;
        out.push((tok, start));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn error(&self, msg: &str) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax(msg.to_string()),
            pos: self.pos(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Some(Tok::Slash) => {
                    let pos = self.pos();
                    self.at += 1;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                Some(Tok::Int(_) | Tok::Var(_) | Tok::LParen) => {
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                let pos = self.pos();
                self.at += 1;
                Ok(Expr::Neg(Box::new(self.unary()?), pos))
            }
            Some(Tok::Plus) => {
                self.at += 1;
                self.unary()
            }
            _ => self.factor(),
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        if self.peek() == Some(&Tok::Minus) {
            return Err(ParseError {
                kind: ParseErrorKind::NegativeExponent,
                pos: self.pos(),
            });
        }
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(k)) => {
                self.at += 1;
                let k = k.to_u32().ok_or(ParseError {
                    kind: ParseErrorKind::Syntax("exponent too large".into()),
                    pos,
                })?;
                Ok(Expr::Pow(Box::new(base), k))
            }
            _ => Err(self.error("expected a non-negative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(Expr::Int(n, pos))
            }
            Some(Tok::Var(c)) => {
                self.at += 1;
                Ok(Expr::Var(c, pos))
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.error("expected ')'"));
                }
                self.at += 1;
                Ok(e)
            }
            Some(_) => Err(self.error("expected a number, variable or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        at: 0,
        end: src.chars().count(),
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

/// Target algebra an [`Expr`] is folded into.
trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Self::V;
    fn var(&self, c: char) -> Option<Self::V>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, ParseErrorKind>;
    fn pow(&self, a: &Self::V, k: u32) -> Self::V;
}

fn fold<A: Algebra>(alg: &A, e: &Expr) -> Result<A::V, ParseError> {
    Ok(match e {
        Expr::Int(n, _) => alg.int(n),
        Expr::Var(c, pos) => alg.var(*c).ok_or(ParseError {
            kind: ParseErrorKind::WrongVariable(*c),
            pos: *pos,
        })?,
        Expr::Neg(a, _) => alg.neg(&fold(alg, a)?),
        Expr::Add(a, b) => alg.add(&fold(alg, a)?, &fold(alg, b)?),
        Expr::Sub(a, b) => alg.sub(&fold(alg, a)?, &fold(alg, b)?),
        Expr::Mul(a, b) => alg.mul(&fold(alg, a)?, &fold(alg, b)?),
        Expr::Div(a, b, pos) => alg
            .div(&fold(alg, a)?, &fold(alg, b)?)
            .map_err(|kind| ParseError { kind, pos: *pos })?,
        Expr::Pow(a, k) => alg.pow(&fold(alg, a)?, *k),
    })
}

/// Polynomials over a field in one named variable; division only by
/// nonzero constants.
struct PolyAlg<F: Field> {
    var: char,
    one: F,
    embed: Box<dyn Fn(&BigInt) -> F>,
}

impl<F: Field> Algebra for PolyAlg<F> {
    type V = Poly<F>;
    fn int(&self, n: &BigInt) -> Poly<F> {
        Poly::constant((self.embed)(n))
    }
    fn var(&self, c: char) -> Option<Poly<F>> {
        (c == self.var).then(|| Poly::monomial(self.one.clone(), 1))
    }
    fn add(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a + b
    }
    fn sub(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a - b
    }
    fn mul(&self, a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
        a * b
    }
    fn neg(&self, a: &Poly<F>) -> Poly<F> {
        -a
    }
    fn div(&self, a: &Poly<F>, b: &Poly<F>) -> Result<Poly<F>, ParseErrorKind> {
        if b.is_zero() {
            return Err(ParseErrorKind::DivisionByZero);
        }
        if b.deg() != Some(0) {
            return Err(ParseErrorKind::DivisionInPolyContext);
        }
        let inv = b.lc().expect("nonzero").inv().map_err(|_| ParseErrorKind::DivisionByZero)?;
        Ok(a.scale(&inv))
    }
    fn pow(&self, a: &Poly<F>, k: u32) -> Poly<F> {
        if k == 0 {
            return Poly::constant(self.one.clone());
        }
        a.pow(u64::from(k))
    }
}

/// Elements of Q(v).
struct RatFuncAlg {
    var: char,
}

impl Algebra for RatFuncAlg {
    type V = RatFunc<Rational>;
    fn int(&self, n: &BigInt) -> Self::V {
        RatFunc::constant(Rational::from_bigint(n.clone()))
    }
    fn var(&self, c: char) -> Option<Self::V> {
        (c == self.var).then(|| RatFunc::x(&Rational::one()))
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a.add(b)
    }
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a.sub(b)
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a.mul(b)
    }
    fn neg(&self, a: &Self::V) -> Self::V {
        a.neg()
    }
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, ParseErrorKind> {
        a.div(b).map_err(|_| ParseErrorKind::DivisionByZero)
    }
    fn pow(&self, a: &Self::V, k: u32) -> Self::V {
        a.pow(u64::from(k))
    }
}

/// Polynomials in t with coefficients in Q(x).
struct FormAlg;

impl Algebra for FormAlg {
    type V = Poly<RatFunc<Rational>>;
    fn int(&self, n: &BigInt) -> Self::V {
        Poly::constant(RatFunc::constant(Rational::from_bigint(n.clone())))
    }
    fn var(&self, c: char) -> Option<Self::V> {
        let one = RatFunc::constant(Rational::one());
        match c {
            't' => Some(Poly::monomial(one, 1)),
            'x' => Some(Poly::constant(RatFunc::x(&Rational::one()))),
            _ => None,
        }
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a + b
    }
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a - b
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        a * b
    }
    fn neg(&self, a: &Self::V) -> Self::V {
        -a
    }
    fn div(&self, a: &Self::V, b: &Self::V) -> Result<Self::V, ParseErrorKind> {
        if b.is_zero() {
            return Err(ParseErrorKind::DivisionByZero);
        }
        if b.deg() != Some(0) {
            return Err(ParseErrorKind::DivisionInPolyContext);
        }
        let inv = b.lc().expect("nonzero").inv().map_err(|_| ParseErrorKind::DivisionByZero)?;
        Ok(a.scale(&inv))
    }
    fn pow(&self, a: &Self::V, k: u32) -> Self::V {
        if k == 0 {
            return Poly::constant(RatFunc::constant(Rational::one()));
        }
        a.pow(u64::from(k))
    }
}

/// Polynomial over Q in `var`.
pub fn parse_poly(src: &str, var: char) -> Result<Poly<Rational>, ParseError> {
    let alg = PolyAlg {
        var,
        one: Rational::one(),
        embed: Box::new(|n: &BigInt| Rational::from_bigint(n.clone())),
    };
    fold(&alg, &parse_expr(src)?)
}

/// Element of Q(x).
pub fn parse_ratfunc(src: &str) -> Result<RatFunc<Rational>, ParseError> {
    parse_ratfunc_in(src, 'x')
}

/// Element of Q(var).
pub fn parse_ratfunc_in(src: &str, var: char) -> Result<RatFunc<Rational>, ParseError> {
    fold(&RatFuncAlg { var }, &parse_expr(src)?)
}

/// Monic polynomial in t over Q(x), e.g. `"t^2 - x^2"`.
pub fn parse_form_expr(src: &str) -> Result<BuchiForm<Rational>, ParseError> {
    let p = fold(&FormAlg, &parse_expr(src)?)?;
    BuchiForm::from_poly(&p).map_err(|e| ParseError {
        kind: ParseErrorKind::InvalidForm(e.to_string()),
        pos: 0,
    })
}

/// Element of F_q written as a polynomial in y.
pub fn parse_fq(src: &str, ctx: &Arc<FqContext>) -> Result<FqElement, ParseError> {
    let base = ctx.base();
    let p = BigInt::from(base.p());
    let alg = PolyAlg {
        var: 'y',
        one: base.one(),
        embed: Box::new(move |n: &BigInt| {
            base.element((n % &p).to_i64().expect("residue fits"))
        }),
    };
    Ok(ctx.element(&fold(&alg, &parse_expr(src)?)?))
}

/// Wire format of a form: `{"n": 3, "coeffs": ["x^3", "3*x^2", "3*x"]}`,
/// coefficients `a_0..a_{n-1}` lowest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormJson {
    pub n: usize,
    pub coeffs: Vec<String>,
}

impl FormJson {
    pub fn to_form(&self) -> Result<BuchiForm<Rational>, ParseError> {
        let invalid = |m: String| ParseError {
            kind: ParseErrorKind::InvalidForm(m),
            pos: 0,
        };
        if self.coeffs.len() != self.n {
            return Err(invalid(format!(
                "n = {} but {} coefficients given",
                self.n,
                self.coeffs.len()
            )));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| parse_ratfunc(c))
            .collect::<Result<Vec<_>, _>>()?;
        BuchiForm::new(coeffs).map_err(|e| invalid(e.to_string()))
    }

    pub fn from_form(form: &BuchiForm<Rational>) -> Self {
        FormJson {
            n: form.n(),
            coeffs: form.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

pub fn parse_form(json: &str) -> Result<BuchiForm<Rational>, ParseError> {
    let raw: FormJson = serde_json::from_str(json).map_err(|e| ParseError {
        kind: ParseErrorKind::InvalidForm(e.to_string()),
        pos: 0,
    })?;
    raw.to_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_fq;
    use crate::poly::tests::q;
    use proptest::prelude::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("x^2 - 2*x + 1", 'x').unwrap(), q(&[1, -2, 1]));
        assert_eq!(parse_poly("3x**2-x", 'x').unwrap(), q(&[0, -1, 3]));
        assert_eq!(parse_poly("-(x+1)^2", 'x').unwrap(), q(&[-1, -2, -1]));
        assert_eq!(parse_poly("x/2", 'x').unwrap().to_string(), "1/2*x");
        assert_eq!(parse_poly("(x)^0", 'x').unwrap(), q(&[1]));
        assert_eq!(parse_poly("t^3", 't').unwrap(), q(&[0, 0, 0, 1]));
    }

    #[test]
    fn rational_functions() {
        let f = parse_ratfunc("(x^2+1)/(x-3)").unwrap();
        assert_eq!(f.numer(), &q(&[1, 0, 1]));
        assert_eq!(f.denom(), &q(&[-3, 1]));
        assert_eq!(parse_ratfunc("x^2/(2x)").unwrap().to_string(), "1/2*x");
        assert_eq!(parse_ratfunc("(x^3+1)/x").unwrap().to_string(), "(x^3+1)/x");
    }

    #[test]
    fn forms() {
        let f = parse_form(r#"{"n": 3, "coeffs": ["x^3", "3*x^2", "3*x"]}"#).unwrap();
        assert_eq!(f.to_string(), "t^3+3*x*t^2+3*x^2*t+x^3");
        assert_eq!(parse_form_expr("t^3+3x t^2+3x^2 t+x^3").unwrap(), f);
        assert_eq!(FormJson::from_form(&f).to_form().unwrap(), f);
        assert!(parse_form(r#"{"n": 2, "coeffs": ["x"]}"#).is_err());
        assert!(parse_form_expr("2t^2+1").is_err());
    }

    #[test]
    fn finite_field_elements() {
        let f9 = make_fq(3, 2).unwrap();
        let a = parse_fq("2*y+1", &f9).unwrap();
        assert_eq!(a.to_string(), "2*y+1");
        assert_eq!(parse_fq("y^2", &f9).unwrap(), f9.from_i64(2));
        assert_eq!(parse_fq("4", &f9).unwrap(), f9.from_i64(1));
    }

    #[test]
    fn errors() {
        let e = parse_poly("x^2 + y", 'x').unwrap_err();
        assert_eq!(e, ParseError { kind: ParseErrorKind::WrongVariable('y'), pos: 6 });
        let e = parse_poly("x^-2", 'x').unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NegativeExponent);
        let e = parse_poly("1/(x+1)", 'x').unwrap_err();
        assert_eq!(e, ParseError { kind: ParseErrorKind::DivisionInPolyContext, pos: 1 });
        let e = parse_poly("x +", 'x').unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(parse_poly("x/0", 'x').unwrap_err().kind, ParseErrorKind::DivisionByZero);
        assert_eq!(parse_poly("(x", 'x').unwrap_err().pos, 2);
        assert_eq!(parse_poly("x $ 2", 'x').unwrap_err().pos, 2);
    }

    fn rat() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..7).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn poly() -> impl Strategy<Value = Poly<Rational>> {
        prop::collection::vec(rat(), 0..6).prop_map(Poly::from_coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(500))]

        #[test]
        fn poly_round_trip(p in poly()) {
            prop_assert_eq!(parse_poly(&p.to_string(), 'x').unwrap(), p);
        }

        #[test]
        fn ratfunc_round_trip(n in poly(), d in poly()) {
            prop_assume!(!d.is_zero());
            let f = RatFunc::new(n, d).unwrap();
            prop_assert_eq!(parse_ratfunc(&f.to_string()).unwrap(), f);
        }

        #[test]
        fn error_positions_in_range(src in "[-+*/^()x0-9 y$]{0,12}") {
            if let Err(e) = parse_ratfunc(&src) {
                prop_assert!(e.pos <= src.chars().count());
            }
        }
    }
}
