//! Ordinal expressions: parsing, canonical printing and lowering to names.
//!
//! ```text
//! expr := sum
//! sum  := prod { "+" prod }
//! prod := pow { "*" pow }
//! pow  := atom [ "^" pow ]
//! atom := NAT | "w" | "eps0" | "suc" "(" args ")" | "sup" "(" args ")"
//!       | "ack" "(" expr "," expr "," expr ")" | "(" expr ")"
//! ```
//!
//! `+` and `*` associate to the left, `^` to the right.

use std::fmt;

use ord_core::arith::{acko, add, eps0, mul, pow};
use ord_core::{omega, suc_list, sup_finite, und, OrdName};
use thiserror::Error;

/// Numerals are unary chains of successors, so they are kept small.
pub const MAX_NUMERAL: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Nat(u64),
    Omega,
    Eps0,
    Suc(Vec<Expr>),
    Sup(Vec<Expr>),
    Ack(Box<Expr>, Box<Expr>, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("column {column}: {message}")]
pub struct ParseError {
    /// 1-based character position.
    pub column: usize,
    pub message: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Num(u64),
    Word(&'a str),
    Sym(char),
    End,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Word(w) => write!(f, "`{w}`"),
            Tok::Sym(c) => write!(f, "`{c}`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok<'_>, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    let column = |byte: usize| src[..byte].chars().count() + 1;
    while let Some(&(start, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            let text = &src[start..end];
            if text.len() > 1 && text.starts_with('0') {
                return Err(ParseError {
                    column: column(start),
                    message: format!("numeral `{text}` has a leading zero"),
                });
            }
            let n = text.parse().ok().filter(|&n| n <= MAX_NUMERAL).ok_or_else(|| ParseError {
                column: column(start),
                message: format!("numeral `{text}` exceeds {MAX_NUMERAL}"),
            })?;
            out.push((Tok::Num(n), column(start)));
        } else if c.is_ascii_alphabetic() {
            let mut end = start;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_alphanumeric() {
                    break;
                }
                end = i + 1;
                chars.next();
            }
            out.push((Tok::Word(&src[start..end]), column(start)));
        } else if "+*^(),".contains(c) {
            out.push((Tok::Sym(c), column(start)));
            chars.next();
        } else {
            return Err(ParseError { column: column(start), message: format!("unexpected character `{c}`") });
        }
    }
    out.push((Tok::End, src.chars().count() + 1));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok<'a>, usize)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Tok<'a> {
        self.toks[self.pos].0
    }

    fn column(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok<'a> {
        let t = self.peek();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: String) -> Result<T, ParseError> {
        Err(ParseError { column: self.column(), message })
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.peek()))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.prod()?;
        while self.peek() == Tok::Sym('+') {
            self.bump();
            lhs = Expr::Add(Box::new(lhs), Box::new(self.prod()?));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.pow()?;
        while self.peek() == Tok::Sym('*') {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.pow()?));
        }
        Ok(lhs)
    }

    fn pow(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() == Tok::Sym('^') {
            self.bump();
            return Ok(Expr::Pow(Box::new(base), Box::new(self.pow()?)));
        }
        Ok(base)
    }

    fn args(&mut self) -> Result<Vec<Expr>, ParseError> {
        self.expect('(')?;
        let mut args = vec![self.sum()?];
        while self.peek() == Tok::Sym(',') {
            self.bump();
            args.push(self.sum()?);
        }
        self.expect(')')?;
        Ok(args)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let column = self.column();
        match self.bump() {
            Tok::Num(n) => Ok(Expr::Nat(n)),
            Tok::Word("w") => Ok(Expr::Omega),
            Tok::Word("eps0") => Ok(Expr::Eps0),
            Tok::Word("suc") => Ok(Expr::Suc(self.args()?)),
            Tok::Word("sup") => Ok(Expr::Sup(self.args()?)),
            Tok::Word("ack") => {
                let args = self.args()?;
                let count = args.len();
                match <[Expr; 3]>::try_from(args) {
                    Ok([a, b, c]) => Ok(Expr::Ack(Box::new(a), Box::new(b), Box::new(c))),
                    Err(_) => Err(ParseError { column, message: format!("`ack` takes 3 arguments, got {count}") }),
                }
            }
            Tok::Word(w) => Err(ParseError { column, message: format!("unknown name `{w}`") }),
            Tok::Sym('(') => {
                let inner = self.sum()?;
                self.expect(')')?;
                Ok(inner)
            }
            t => Err(ParseError { column, message: format!("expected an expression, found {t}") }),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.sum()?;
    match p.peek() {
        Tok::End => Ok(e),
        t => p.error(format!("unexpected {t} after expression")),
    }
}

impl Expr {
    /// Binding strength: sums 1, products 2, powers 3, atoms 4.
    fn level(&self) -> u8 {
        match self {
            Expr::Add(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Pow(..) => 3,
            _ => 4,
        }
    }
}

struct Operand<'a>(&'a Expr, u8);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.level() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

fn list(f: &mut fmt::Formatter<'_>, head: &str, items: &[&Expr]) -> fmt::Result {
    write!(f, "{head}(")?;
    for (i, e) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{e}")?;
    }
    write!(f, ")")
}

/// Canonical form: spaces around `+` and after commas only, and only the parentheses
/// that parsing needs.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Nat(n) => write!(f, "{n}"),
            Expr::Omega => write!(f, "w"),
            Expr::Eps0 => write!(f, "eps0"),
            Expr::Suc(args) => list(f, "suc", &args.iter().collect::<Vec<_>>()),
            Expr::Sup(args) => list(f, "sup", &args.iter().collect::<Vec<_>>()),
            Expr::Ack(a, b, c) => list(f, "ack", &[a, b, c]),
            Expr::Add(a, b) => write!(f, "{} + {}", Operand(a, 1), Operand(b, 2)),
            Expr::Mul(a, b) => write!(f, "{}*{}", Operand(a, 2), Operand(b, 3)),
            Expr::Pow(a, b) => write!(f, "{}^{}", Operand(a, 4), Operand(b, 3)),
        }
    }
}

pub fn lower(e: &Expr) -> OrdName {
    match e {
        Expr::Nat(n) => und(*n),
        Expr::Omega => omega(),
        Expr::Eps0 => eps0(),
        Expr::Suc(args) => suc_list(&args.iter().map(lower).collect::<Vec<_>>()).expect("grammar requires an argument"),
        Expr::Sup(args) => sup_finite(&args.iter().map(lower).collect::<Vec<_>>()),
        Expr::Ack(a, b, c) => acko(&lower(a), &lower(b), &lower(c)),
        Expr::Add(a, b) => add(&lower(a), &lower(b)),
        Expr::Mul(a, b) => mul(&lower(a), &lower(b)),
        Expr::Pow(a, b) => pow(&lower(a), &lower(b)),
    }
}

/// An expression for a name built from finite families, `w` and `eps0`. Numerals are
/// recognized; any other node is written as `suc` of its subordinals.
pub fn describe(name: &OrdName) -> Option<Expr> {
    if name.ident() == omega().ident() {
        return Some(Expr::Omega);
    }
    if name.ident() == eps0().ident() {
        return Some(Expr::Eps0);
    }
    let mut depth = 0;
    let mut here = name.clone();
    loop {
        match here.subordinals().and_then(|f| f.members()) {
            None if here.is_zero() => return Some(Expr::Nat(depth)),
            None => return None,
            Some([only]) => {
                depth += 1;
                here = only.clone();
            }
            Some(members) => {
                let mut inner = Expr::Suc(members.iter().map(describe).collect::<Option<_>>()?);
                for _ in 0..depth {
                    inner = Expr::Suc(vec![inner]);
                }
                return Some(inner);
            }
        }
    }
}

/// [`describe`], or `#` and the identity token for names it cannot write.
pub fn describe_or_ident(name: &OrdName) -> String {
    describe(name).map_or_else(|| format!("#{}", name.ident()), |e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use ord_core::compare::{eq, Fuel};
    use ord_core::TriBool;

    #[test]
    fn precedence_and_associativity() {
        let e = parse("w^w + w*3 + 2").unwrap();
        let expected = Expr::Add(
            Box::new(Expr::Add(
                Box::new(Expr::Pow(Box::new(Expr::Omega), Box::new(Expr::Omega))),
                Box::new(Expr::Mul(Box::new(Expr::Omega), Box::new(Expr::Nat(3)))),
            )),
            Box::new(Expr::Nat(2)),
        );
        assert_eq!(e, expected);
        assert_eq!(parse("2^3^4").unwrap(), parse("2^(3^4)").unwrap());
        assert_eq!(parse("1 + 2 + 3").unwrap(), parse("(1 + 2) + 3").unwrap());
    }

    #[test]
    fn canonical_printing() {
        for (src, canon) in [
            ("w^w+w*3+2", "w^w + w*3 + 2"),
            ("(1+2)+3", "1 + 2 + 3"),
            ("1+(2+3)", "1 + (2 + 3)"),
            ("(2^3)^4", "(2^3)^4"),
            ("2^(3^4)", "2^3^4"),
            ("(w*2)*3", "w*2*3"),
            ("w*(2*3)", "w*(2*3)"),
            ("(w+1)*2", "(w + 1)*2"),
            ("w^(2*3)", "w^(2*3)"),
            ("suc( 0 ,w )", "suc(0, w)"),
            ("ack(w,w,1)", "ack(w, w, 1)"),
            ("((eps0))", "eps0"),
        ] {
            assert_eq!(parse(src).unwrap().to_string(), canon, "{src}");
        }
    }

    #[test]
    fn positioned_errors() {
        let err = |s: &str| parse(s).unwrap_err();
        assert_eq!(err("").column, 1);
        assert_eq!(err("w +").column, 4);
        assert_eq!(err("w $ 1").column, 3);
        assert_eq!(err("suc(1").column, 6);
        assert_eq!(err("foo").message, "unknown name `foo`");
        assert_eq!(err("1 + ack(1, 2)").message, "`ack` takes 3 arguments, got 2");
        assert_eq!(err("1 + ack(1, 2)").column, 5);
        assert_eq!(err("w w").column, 3);
        assert_eq!(err("007").column, 1);
        assert!(err("100001").message.contains("exceeds"));
        assert!(parse("sup()").is_err());
    }

    #[test]
    fn lowering() {
        let fuel = Fuel::default();
        assert_eq!(lower(&parse("suc(0)").unwrap()), und(1));
        assert_eq!(lower(&parse("w").unwrap()).ident(), omega().ident());
        let pairs = [("2 + 3", "5"), ("2*3", "6"), ("2^3", "8"), ("sup(2, 3)", "3"), ("suc(1, 2)", "3")];
        for (a, b) in pairs {
            let v = eq(&lower(&parse(a).unwrap()), &lower(&parse(b).unwrap()), fuel).unwrap();
            assert_eq!(v.value, TriBool::True, "{a} = {b}");
        }
    }

    #[test]
    fn describing_names() {
        assert_eq!(describe(&und(4)), Some(Expr::Nat(4)));
        assert_eq!(describe(&OrdName::Zero), Some(Expr::Nat(0)));
        assert_eq!(describe(&omega()), Some(Expr::Omega));
        let pair = suc_list(&[und(1), und(3)]).unwrap();
        assert_eq!(describe(&pair).unwrap().to_string(), "suc(1, 3)");
        let lifted = ord_core::suc(&pair);
        assert_eq!(describe(&lifted).unwrap().to_string(), "suc(suc(1, 3))");
        assert_eq!(describe(&add(&omega(), &und(1))), None);
        assert!(describe_or_ident(&add(&omega(), &und(1))).starts_with('#'));
    }
}
