//! Surface syntax: a small recursive-descent parser for expressions such as
//! `q^2*x*px + (q^2-1)*x*py` or `x*Dx - 1/2*Dpy`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Symbols the parser accepts.
pub const SYMBOLS: [&str; 16] =
    ["x", "y", "px", "py", "dx", "dy", "dpx", "dpy", "a", "b", "c", "d", "Dx", "Dy", "Dpx", "Dpy"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigRational),
    Q,
    Sym(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unknown symbol `{symbol}` at column {column}")]
    UnknownSymbol { symbol: String, column: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("number {n}"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

/// Tokens with 1-based columns.
fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            out.push((Tok::Int(digits.parse().expect("digits")), col));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return Err(ParseError::Syntax { column: col, message: format!("unexpected character `{c}`") }),
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn col(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { column: self.col(), message: message.into() })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.factor()
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            return match self.bump() {
                Tok::Int(n) => match u32::try_from(&n) {
                    Ok(e) => Ok(Expr::Pow(Box::new(base), e)),
                    Err(_) => self.error("exponent too large"),
                },
                t => {
                    self.pos -= usize::from(t != Tok::End);
                    self.error(format!("expected a non-negative integer exponent, found {}", describe(&t)))
                }
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let col = self.col();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        Tok::Int(d) if !d.is_zero() => Ok(Expr::Num(BigRational::new(n, d))),
                        Tok::Int(_) => Err(ParseError::Syntax { column: col, message: "zero denominator".into() }),
                        t => {
                            self.pos -= usize::from(t != Tok::End);
                            self.error(format!("expected a denominator, found {}", describe(&t)))
                        }
                    }
                } else {
                    Ok(Expr::Num(BigRational::from_integer(n)))
                }
            }
            Tok::Ident(s) => {
                self.bump();
                if s == "q" {
                    Ok(Expr::Q)
                } else if SYMBOLS.contains(&s.as_str()) {
                    Ok(Expr::Sym(s))
                } else {
                    Err(ParseError::UnknownSymbol { symbol: s, column: col })
                }
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error(format!("expected `)`, found {}", describe(self.peek())));
                }
                self.bump();
                Ok(e)
            }
            t => self.error(format!("expected a number, `q`, a symbol or `(`, found {}", describe(&t))),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    Ok(e)
}

impl Expr {
    /// Symbols used anywhere in the tree.
    pub fn symbols(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_symbols(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_symbols<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Num(_) | Expr::Q => {}
            Expr::Sym(s) => out.push(s),
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_symbols(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_symbols(out);
                b.collect_symbols(out);
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(r) if !r.is_integer() || r.is_negative() => 2,
            _ => 5,
        }
    }
}

fn wrap(e: &Expr, min: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if e.precedence() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Fully explicit printing that reparses to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(r) => {
                if r.is_negative() {
                    // only produced programmatically; reparses as Neg(Num)
                    write!(f, "-")?;
                    return wrap(&Expr::Num(-r.clone()), 3, f);
                }
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Expr::Q => write!(f, "q"),
            Expr::Sym(s) => write!(f, "{s}"),
            Expr::Neg(a) => {
                write!(f, "-")?;
                wrap(a, 3, f)
            }
            Expr::Add(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " + ")?;
                wrap(b, 2, f)
            }
            Expr::Sub(a, b) => {
                wrap(a, 1, f)?;
                write!(f, " - ")?;
                wrap(b, 2, f)
            }
            Expr::Mul(a, b) => {
                wrap(a, 2, f)?;
                write!(f, "*")?;
                wrap(b, 3, f)
            }
            Expr::Pow(a, n) => {
                wrap(a, 5, f)?;
                write!(f, "^{n}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym(s: &str) -> Box<Expr> {
        Box::new(Expr::Sym(s.into()))
    }

    #[test]
    fn product_keeps_order() {
        assert_eq!(parse("px*x").unwrap(), Expr::Mul(sym("px"), sym("x")));
    }

    #[test]
    fn two_term_sum() {
        let e = parse("q^2*x*px + (q^2-1)*x*py").unwrap();
        assert!(matches!(e, Expr::Add(..)));
    }

    #[test]
    fn trailing_operator_column() {
        assert_eq!(
            parse("x**"),
            Err(ParseError::Syntax {
                column: 3,
                message: "expected a number, `q`, a symbol or `(`, found `*`".into()
            })
        );
    }

    #[test]
    fn unknown_symbol() {
        assert!(matches!(parse("x*z"), Err(ParseError::UnknownSymbol { column: 3, .. })));
    }

    #[test]
    fn rationals_and_unary_minus() {
        let e = parse("-1/2*q").unwrap();
        let half = Expr::Num(BigRational::new(1.into(), 2.into()));
        // unary minus binds tighter than `*`
        assert_eq!(e, Expr::Mul(Box::new(Expr::Neg(Box::new(half))), Box::new(Expr::Q)));
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (0i64..20, 1i64..5).prop_map(|(n, d)| Expr::Num(BigRational::new(n.into(), d.into()))),
            Just(Expr::Q),
            prop::sample::select(SYMBOLS.to_vec()).prop_map(|s| Expr::Sym(s.to_string())),
        ];
        leaf.prop_recursive(4, 32, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
                (inner, 0u32..4).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_then_parse_is_identity(e in arb_expr()) {
            let printed = e.to_string();
            let back = parse(&printed).unwrap();
            prop_assert_eq!(&back, &normalize_literals(&e), "printed {}", printed);
            prop_assert_eq!(back.to_string(), printed);
        }
    }

    /// Integer-valued rationals like `4/2` print as `2`.
    fn normalize_literals(e: &Expr) -> Expr {
        match e {
            Expr::Num(r) => Expr::Num(r.clone()),
            Expr::Q | Expr::Sym(_) => e.clone(),
            Expr::Neg(a) => Expr::Neg(Box::new(normalize_literals(a))),
            Expr::Pow(a, n) => Expr::Pow(Box::new(normalize_literals(a)), *n),
            Expr::Add(a, b) => Expr::Add(Box::new(normalize_literals(a)), Box::new(normalize_literals(b))),
            Expr::Sub(a, b) => Expr::Sub(Box::new(normalize_literals(a)), Box::new(normalize_literals(b))),
            Expr::Mul(a, b) => Expr::Mul(Box::new(normalize_literals(a)), Box::new(normalize_literals(b))),
        }
    }
}
