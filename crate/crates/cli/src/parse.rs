//! Operator expressions: integers, `z`, `D`, `+ - * / ^` and parentheses.
//! Products are always explicit.

use std::fmt;

use gop_core::{op_mul, DiffOp, Poly, Rat, RatFunc};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the source.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Z,
    D,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Divisor position kept for error reporting.
    Div(Box<Expr>, Box<Expr>, usize),
    Pow(Box<Expr>, i64, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Z,
    D,
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let s = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(src[s..i].parse().unwrap()), s));
            }
            'z' => {
                out.push((Tok::Z, i));
                i += 1;
            }
            'D' => {
                out.push((Tok::D, i));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((Tok::Op(c), i));
                i += 1;
            }
            _ => {
                return Err(ParseError {
                    pos: i,
                    msg: format!("unexpected character '{c}'"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map_or(self.end, |(_, p)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Op('/')) {
                self.i += 1;
                let p = self.pos();
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?), p);
            } else {
                match self.peek() {
                    Some(Tok::Int(_)) | Some(Tok::Z) | Some(Tok::D) | Some(Tok::Op('(')) => {
                        return self.err("missing operator ('*' must be explicit)")
                    }
                    _ => return Ok(lhs),
                }
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let p = self.pos();
        let paren = self.eat('(');
        let neg = self.eat('-');
        let k = match self.peek() {
            Some(Tok::Int(n)) => {
                let n: i64 = n.try_into().map_err(|_| ParseError {
                    pos: self.pos(),
                    msg: "exponent too large".into(),
                })?;
                self.i += 1;
                if neg {
                    -n
                } else {
                    n
                }
            }
            _ => return self.err("expected an integer exponent"),
        };
        if paren && !self.eat(')') {
            return self.err("expected ')'");
        }
        Ok(Expr::Pow(Box::new(base), k, p))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Z) => {
                self.i += 1;
                Ok(Expr::Z)
            }
            Some(Tok::D) => {
                self.i += 1;
                Ok(Expr::D)
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse_operator(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        i: 0,
        end: src.len(),
    };
    let e = p.sum()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

fn scalar(op: &DiffOp) -> Option<RatFunc> {
    (op.order() == 0).then(|| op.coeff(0))
}

/// Evaluates to an element of `Q(z)[D]`. Quotients must be scalar on both
/// sides: `(1/z)*D` is accepted, `D/z` is not.
pub fn eval(e: &Expr) -> Result<DiffOp, ParseError> {
    Ok(match e {
        Expr::Int(n) => DiffOp::from_ratfunc(RatFunc::constant(Rat::from_integer(n.clone()))),
        Expr::Z => DiffOp::from_ratfunc(RatFunc::z()),
        Expr::D => DiffOp::d(),
        Expr::Neg(a) => -&eval(a)?,
        Expr::Add(a, b) => &eval(a)? + &eval(b)?,
        Expr::Sub(a, b) => &eval(a)? - &eval(b)?,
        Expr::Mul(a, b) => op_mul(&eval(a)?, &eval(b)?),
        Expr::Div(a, b, pos) => {
            let n = eval(a)?;
            let d = eval(b)?;
            let (Some(_), Some(r)) = (scalar(&n), scalar(&d)) else {
                return Err(ParseError {
                    pos: *pos,
                    msg: "operator in denominator".into(),
                });
            };
            if r.is_zero() {
                return Err(ParseError {
                    pos: *pos,
                    msg: "division by zero".into(),
                });
            }
            op_mul(&n, &DiffOp::from_ratfunc(r.recip()))
        }
        Expr::Pow(a, k, pos) => {
            let base = eval(a)?;
            if *k >= 0 {
                let mut acc = DiffOp::one();
                for _ in 0..*k {
                    acc = op_mul(&acc, &base);
                }
                acc
            } else {
                let Some(r) = scalar(&base) else {
                    return Err(ParseError {
                        pos: *pos,
                        msg: "negative power of an operator".into(),
                    });
                };
                if r.is_zero() {
                    return Err(ParseError {
                        pos: *pos,
                        msg: "division by zero".into(),
                    });
                }
                DiffOp::from_ratfunc(r.pow(*k))
            }
        }
    })
}

pub fn parse_diffop(src: &str) -> Result<DiffOp, ParseError> {
    eval(&parse_operator(src)?)
}

/// A scalar rational function; operators are rejected.
pub fn parse_ratfunc(src: &str) -> Result<RatFunc, ParseError> {
    let op = parse_diffop(src)?;
    scalar(&op).ok_or(ParseError {
        pos: 0,
        msg: "expected a rational function, found an operator".into(),
    })
}

/// `sum c_i z^i` rendered with the operator syntax.
pub fn poly_text(p: &Poly) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use gop_core::rat;

    fn rf(n: &[i64], d: &[i64]) -> RatFunc {
        RatFunc::new(Poly::from_ints(n), Poly::from_ints(d))
    }

    #[test]
    fn examples() {
        let l = parse_diffop("D^2 + (1/z)*D").unwrap();
        assert_eq!(
            l,
            DiffOp::new(vec![RatFunc::zero(), rf(&[1], &[0, 1]), RatFunc::one()])
        );
        let l = parse_diffop("z^2*D^2 + 2/9").unwrap();
        assert_eq!(
            l,
            DiffOp::new(vec![
                RatFunc::constant(rat(2, 9)),
                RatFunc::zero(),
                rf(&[0, 0, 1], &[1])
            ])
        );
        let e = parse_diffop("D/(z)").unwrap_err();
        assert_eq!(e.msg, "operator in denominator");
        assert_eq!(e.pos, 2);
    }

    #[test]
    fn products_are_ore_products() {
        // D*z = z*D + 1
        let l = parse_diffop("D*z").unwrap();
        assert_eq!(l, parse_diffop("z*D + 1").unwrap());
        assert_eq!(parse_diffop("z^-1").unwrap(), parse_diffop("1/z").unwrap());
        assert_eq!(
            parse_diffop("z^(-2)").unwrap(),
            parse_diffop("1/z^2").unwrap()
        );
    }

    #[test]
    fn rejections() {
        assert_eq!(parse_operator("2z").unwrap_err().pos, 1);
        assert!(parse_operator("D^x").is_err());
        assert!(parse_diffop("D^-1").is_err());
        assert!(parse_operator("(z+1").is_err());
        assert!(parse_operator("z $ 1").is_err());
        assert!(parse_diffop("1/(z-z)").is_err());
        assert!(parse_ratfunc("D + 1").is_err());
        assert_eq!(
            parse_diffop("(z*D)/2").unwrap_err().msg,
            "operator in denominator"
        );
        assert_eq!(parse_diffop("1/D").unwrap_err().pos, 2);
    }

    #[test]
    fn print_parse_fixed_point() {
        for src in [
            "z*(1-z)*D^2 + (1-2*z)*D - 1/4",
            "D - 1/(2*(z-1))",
            "(z^2+1)*D^2 + 2*z*D",
            "D^3 + 3/z*D^2 - 1/(3*z^2 + 2)",
            "-D + 1/2/(z - 3)",
        ] {
            let a = parse_diffop(src).unwrap();
            let b = parse_diffop(&a.to_string()).unwrap();
            assert_eq!(a, b, "{src} -> {a}");
            assert_eq!(a.to_string(), b.to_string());
        }
    }
}
