//! Prefix text grammar for holomorphic expressions.
//!
//! ```text
//! expr    := "id" | "w" | complex
//!          | "const(" complex ")"
//!          | "recip(" expr ")" | "exp(" expr ")" | "log(" expr ")"
//!          | "pow(" expr "," integer ")"
//!          | "scale(" complex "," expr ")"
//!          | "add(" expr "," expr ")" | "mul(" expr "," expr ")" | "div(" expr "," expr ")"
//!          | "compose(" expr "," expr ")"          (outer, inner)
//!          | "mobius(" complex "," complex "," complex "," complex ")"
//! complex := real | real? "i" | real ("+" | "-") real? "i"
//! ```
//!
//! Whitespace is ignored. Examples: `recip(id)`, `mobius(1,0,-1,1)`,
//! `scale(2,id)`, `mul(1+0.5i,pow(id,3))`.

use num_complex::Complex64;

use super::expr::Expr;
use super::mobius::Mobius;
use crate::error::{Error, Result};

pub fn parse_expr(text: &str) -> Result<Expr> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: compact.as_bytes(), pos: 0 };
    let e = p.expr()?;
    if p.pos != p.s.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::Parse(format!("invalid complex literal `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    let real = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let coeff = |t: &str| match t {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        t => real(t),
    };
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex64::new(real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let z = match split {
        Some(k) => Complex64::new(real(&body[..k])?, coeff(&body[k..])?),
        None => Complex64::new(0.0, coeff(body)?),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(bad())
    }
}

pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => format!("{im}i"),
        (false, false) if im < 0.0 => format!("{re}-{}i", -im),
        (false, false) => format!("{re}+{im}i"),
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.s)
        ))
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    /// Raw token up to the next top-level `,` or `)`.
    fn literal(&mut self) -> Result<&str> {
        let start = self.pos;
        while self.pos < self.s.len() && !matches!(self.s[self.pos], b',' | b')' | b'(') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a literal"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).map_err(|_| self.error("non-utf8 literal"))
    }

    fn complex(&mut self) -> Result<Complex64> {
        let lit = self.literal()?.to_string();
        parse_complex(&lit)
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_lowercase() || self.s[self.pos] == b'_') {
            self.pos += 1;
        }
        if self.s.get(self.pos) == Some(&b'(') && self.pos > start {
            Some(String::from_utf8_lossy(&self.s[start..self.pos]).into_owned())
        } else {
            self.pos = start;
            None
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let Some(name) = self.ident() else {
            let lit = self.literal()?.to_string();
            return match lit.as_str() {
                "id" | "w" => Ok(Expr::Identity),
                _ => Ok(Expr::Const(parse_complex(&lit)?)),
            };
        };
        self.expect(b'(')?;
        let e = match name.as_str() {
            "const" => Expr::Const(self.complex()?),
            "recip" => Expr::Recip(Box::new(self.expr()?)),
            "exp" => Expr::Exp(Box::new(self.expr()?)),
            "log" => Expr::Log(Box::new(self.expr()?)),
            "pow" => {
                let base = self.expr()?;
                self.expect(b',')?;
                let lit = self.literal()?.to_string();
                let n = lit.parse::<i32>().map_err(|_| self.error("expected an integer exponent"))?;
                Expr::Pow(Box::new(base), n)
            }
            "scale" => {
                let k = self.complex()?;
                self.expect(b',')?;
                Expr::Scale(k, Box::new(self.expr()?))
            }
            "add" | "mul" | "div" | "compose" => {
                let a = Box::new(self.expr()?);
                self.expect(b',')?;
                let b = Box::new(self.expr()?);
                match name.as_str() {
                    "add" => Expr::Sum(a, b),
                    "mul" => Expr::Product(a, b),
                    "div" => Expr::Quotient(a, b),
                    _ => Expr::Compose(a, b),
                }
            }
            "mobius" => {
                let mut c = [Complex64::new(0.0, 0.0); 4];
                for (k, slot) in c.iter_mut().enumerate() {
                    if k > 0 {
                        self.expect(b',')?;
                    }
                    *slot = self.complex()?;
                }
                Expr::Mobius(Mobius::new(c[0], c[1], c[2], c[3])?)
            }
            other => return Err(self.error(&format!("unknown function `{other}`"))),
        };
        self.expect(b')')?;
        Ok(e)
    }
}

impl std::fmt::Display for Expr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Expr::Const(c) => write!(f, "{}", format_complex(*c)),
            Expr::Identity => write!(f, "id"),
            Expr::Pow(e, n) => write!(f, "pow({e},{n})"),
            Expr::Recip(e) => write!(f, "recip({e})"),
            Expr::Exp(e) => write!(f, "exp({e})"),
            Expr::Log(e) => write!(f, "log({e})"),
            Expr::Scale(k, e) => write!(f, "scale({},{e})", format_complex(*k)),
            Expr::Sum(a, b) => write!(f, "add({a},{b})"),
            Expr::Product(a, b) => write!(f, "mul({a},{b})"),
            Expr::Quotient(a, b) => write!(f, "div({a},{b})"),
            Expr::Compose(a, b) => write!(f, "compose({a},{b})"),
            Expr::Mobius(m) => write!(f, "{m}"),
        }
    }
}
