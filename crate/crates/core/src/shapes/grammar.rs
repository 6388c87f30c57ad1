//! Shape specifications: `name(key=value,...)`, e.g. `torus(R=2,r=0.5)`.
//!
//! ```text
//! spec   := ident [ '(' [ pair { ',' pair } ] ')' ]
//! pair   := ident '=' number
//! ident  := letter { letter | digit | '-' | '_' }
//! number := ['+'|'-'] digits ['.' digits] [('e'|'E') ['+'|'-'] digits]
//! ```
//! Whitespace is allowed between tokens.

use std::collections::BTreeMap;

use crate::error::{Result, RieszError};

use super::{builtin_shape, Shape};

#[derive(Debug, Clone, PartialEq)]
pub struct ShapeSpec {
    pub name: String,
    pub params: BTreeMap<String, f64>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(RieszError::Parse { pos: self.pos + 1, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return self.err("expected a name"),
        }
        while let Some(&c) = self.src.get(self.pos) {
            if c.is_ascii_alphanumeric() || c == b'-' || c == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            p.pos > s
        };
        if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
            self.pos += 1;
        }
        let int = digits(self);
        let mut frac = false;
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac = digits(self);
        }
        if !int && !frac {
            self.pos = start;
            return self.err("expected a number");
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if !digits(self) {
                return self.err("malformed exponent");
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("invalid number '{text}'"))
            }
        }
    }

    fn spec(&mut self) -> Result<ShapeSpec> {
        let name = self.ident()?;
        let mut params = BTreeMap::new();
        if self.peek() == Some(b'(') {
            self.pos += 1;
            if self.peek() != Some(b')') {
                loop {
                    let key = self.ident()?;
                    self.expect(b'=')?;
                    let val = self.number()?;
                    if params.insert(key.clone(), val).is_some() {
                        return self.err(format!("duplicate parameter '{key}'"));
                    }
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b')') => break,
                        _ => return self.err("expected ',' or ')'"),
                    }
                }
            }
            self.expect(b')')?;
        }
        if self.peek().is_some() {
            return self.err("trailing input");
        }
        Ok(ShapeSpec { name, params })
    }
}

pub fn parse_spec(s: &str) -> Result<ShapeSpec> {
    Parser { src: s.as_bytes(), pos: 0 }.spec()
}

pub fn parse_shape(s: &str) -> Result<Shape> {
    let spec = parse_spec(s)?;
    builtin_shape(&spec.name, &spec.params)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_specs() {
        let s = parse_spec(" torus( R = 2 , r=5e-1 ) ").unwrap();
        assert_eq!(s.name, "torus");
        assert_eq!(s.params["R"], 2.0);
        assert_eq!(s.params["r"], 0.5);
        assert_eq!(parse_spec("sphere").unwrap().params.len(), 0);
        assert_eq!(parse_spec("superellipse-domain(p=4)").unwrap().name, "superellipse-domain");
        assert!(parse_spec("circle()").unwrap().params.is_empty());
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_spec("circle(r=)"), Err(RieszError::Parse { pos: 10, msg: "expected a number".into() }));
        assert!(matches!(parse_spec("circle(r=1"), Err(RieszError::Parse { .. })));
        assert!(matches!(parse_spec("circle(r=1,r=2)"), Err(RieszError::Parse { .. })));
        assert!(matches!(parse_spec("circle(r=1) x"), Err(RieszError::Parse { .. })));
        assert!(matches!(parse_spec("1circle"), Err(RieszError::Parse { .. })));
    }
}
