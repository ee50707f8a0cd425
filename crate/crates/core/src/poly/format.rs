//! Text forms of polynomials: the plain grammar (parsed and emitted), LaTeX
//! and JSON.
//!
//! Plain grammar, whitespace allowed around tokens:
//!
//! ```text
//! poly  := term ('+' term)*
//! term  := coeff | coeff '*' var ['^' exp] | var ['^' exp]
//! coeff := ['-'] digits
//! var   := 't' | 'q'
//! ```
//!
//! Repeated exponents are summed. All variables in one literal must agree.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Coefficient, Poly, Var};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let src: &'a [u8] = self.src;
        (self.pos > start).then(|| std::str::from_utf8(&src[start..self.pos]).unwrap())
    }
}

fn describe(b: Option<u8>) -> String {
    match b {
        Some(b) => format!("unexpected '{}'", b as char),
        None => "unexpected end of input".to_string(),
    }
}

pub fn parse_poly<C: Coefficient>(text: &str) -> Result<Poly<C>, ParseError> {
    let mut cur = Cursor {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut coeffs: Vec<C> = Vec::new();
    let mut var: Option<Var> = None;

    loop {
        let (c, exp, v) = parse_term::<C>(&mut cur)?;
        if let Some(v) = v {
            match var {
                Some(prev) if prev != v => {
                    return Err(ParseError::new(
                        cur.pos,
                        format!("mixed variables {prev} and {v}"),
                    ));
                }
                _ => var = Some(v),
            }
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, C::zero());
        }
        coeffs[exp] += &c;
        if !cur.eat(b'+') {
            break;
        }
    }
    if let Some(b) = cur.peek() {
        let msg = if b.is_ascii_alphabetic() || b == b'(' {
            format!("unexpected '{}' (missing '*'?)", b as char)
        } else {
            describe(Some(b))
        };
        return Err(ParseError::new(cur.pos, msg));
    }
    Ok(Poly::from_coeffs(coeffs).with_var(var.unwrap_or_default()))
}

fn parse_term<C: Coefficient>(cur: &mut Cursor<'_>) -> Result<(C, usize, Option<Var>), ParseError> {
    let start = {
        cur.skip_ws();
        cur.pos
    };
    let coeff = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            let at = cur.pos;
            let d = cur
                .digits()
                .ok_or_else(|| ParseError::new(at, "expected digits after '-'"))?;
            Some(-parse_digits::<C>(d, start)?)
        }
        Some(b) if b.is_ascii_digit() => Some(parse_digits::<C>(cur.digits().unwrap(), start)?),
        _ => None,
    };
    let want_var = match coeff {
        Some(_) => cur.eat(b'*'),
        None => true,
    };
    if !want_var {
        return Ok((coeff.unwrap(), 0, None));
    }
    let v = match cur.peek().and_then(|b| Var::from_symbol(b as char)) {
        Some(v) => {
            cur.pos += 1;
            v
        }
        None => {
            return Err(ParseError::new(
                cur.pos,
                format!("{}, expected coefficient or variable", describe(cur.peek())),
            ))
        }
    };
    let exp = if cur.eat(b'^') {
        cur.skip_ws();
        let at = cur.pos;
        let d = cur
            .digits()
            .ok_or_else(|| ParseError::new(at, "expected exponent"))?;
        d.parse::<usize>()
            .map_err(|_| ParseError::new(at, "exponent out of range"))?
    } else {
        1
    };
    Ok((coeff.unwrap_or_else(C::one), exp, Some(v)))
}

fn parse_digits<C: Coefficient>(d: &str, pos: usize) -> Result<C, ParseError> {
    d.parse::<C>()
        .map_err(|_| ParseError::new(pos, "coefficient out of range for this coefficient type"))
}

/// Ascending exponents, zero terms omitted, `1*` and `^1` dropped.
pub fn emit_plain<C: Coefficient>(p: &Poly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let x = p.var().symbol();
    let mut parts = Vec::new();
    for (k, c) in p.terms() {
        let s = match (k, c.is_one()) {
            (0, _) => c.to_string(),
            (1, true) => x.to_string(),
            (1, false) => format!("{c}*{x}"),
            (_, true) => format!("{x}^{k}"),
            (_, false) => format!("{c}*{x}^{k}"),
        };
        parts.push(s);
    }
    parts.join("+")
}

/// Ascending powers in the usual display style: `1+2t^2+15t^{10}`.
pub fn emit_latex<C: Coefficient>(p: &Poly<C>) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let x = p.var().symbol();
    let mut out = String::new();
    for (i, (k, c)) in p.terms().enumerate() {
        let neg = c.is_negative();
        let mag = c.abs();
        if neg {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        if k == 0 || !mag.is_one() {
            out.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            1 => out.push(x),
            k if k < 10 => out.push_str(&format!("{x}^{k}")),
            k => out.push_str(&format!("{x}^{{{k}}}")),
        }
    }
    out
}

/// `{"variable": "t", "terms": [[exponent, "coefficient"], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub variable: String,
    pub terms: Vec<(usize, String)>,
}

impl<C: Coefficient> From<&Poly<C>> for PolyJson {
    fn from(p: &Poly<C>) -> Self {
        PolyJson {
            variable: p.var().symbol().to_string(),
            terms: p.terms().map(|(k, c)| (k, c.to_string())).collect(),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum JsonError {
    #[error("malformed json: {0}")]
    Syntax(String),
    #[error("unknown variable {0:?}")]
    Variable(String),
    #[error("exponents must be strictly ascending")]
    Order,
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
}

impl PolyJson {
    pub fn to_poly<C: Coefficient>(&self) -> Result<Poly<C>, JsonError> {
        let mut chars = self.variable.chars();
        let var = match (chars.next().and_then(Var::from_symbol), chars.next()) {
            (Some(v), None) => v,
            _ => return Err(JsonError::Variable(self.variable.clone())),
        };
        if self.terms.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(JsonError::Order);
        }
        let len = self.terms.last().map_or(0, |t| t.0 + 1);
        let mut coeffs = vec![C::zero(); len];
        for (k, s) in &self.terms {
            coeffs[*k] = s.parse().map_err(|_| JsonError::Coefficient(s.clone()))?;
        }
        Ok(Poly::from_coeffs(coeffs).with_var(var))
    }
}

pub fn emit_json<C: Coefficient>(p: &Poly<C>) -> String {
    serde_json::to_string(&PolyJson::from(p)).expect("serializing plain data")
}

pub fn parse_json<C: Coefficient>(text: &str) -> Result<Poly<C>, JsonError> {
    let j: PolyJson = serde_json::from_str(text).map_err(|e| JsonError::Syntax(e.to_string()))?;
    j.to_poly()
}
