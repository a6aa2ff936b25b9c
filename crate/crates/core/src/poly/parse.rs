use crate::field::FiniteField;

use super::multi::MultiPoly;
use super::PolyError;

/// Largest exponent accepted on a parenthesized or multi-term factor.
pub const MAX_PAREN_EXPONENT: u32 = 1024;

/// Parses `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := atom ('^' uint)?`, `atom := uint | 't' | VAR | '(' expr ')'`.
///
/// A leading minus on the first term is accepted. Integer literals reduce mod
/// p; `t` is the extension generator and is unknown over a prime field.
pub fn parse_poly(text: &str, field: &FiniteField, vars: &[char]) -> Result<MultiPoly, PolyError> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
        field,
        vars,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error("unexpected character"));
    }
    Ok(poly)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a FiniteField,
    vars: &'a [char],
}

impl Parser<'_> {
    fn error(&self, message: &str) -> PolyError {
        PolyError::SyntaxError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyError> {
        let negate = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = if negate { first.neg(self.field) } else { first };
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' {
                acc.add(self.field, &rhs)
            } else {
                acc.sub(self.field, &rhs)
            };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = acc.mul(self.field, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let e = self.uint_exponent()?;
        if base.num_terms() > 1 && e > MAX_PAREN_EXPONENT {
            self.pos = start;
            return Err(self.error("exponent too large for a multi-term base"));
        }
        Ok(base.pow(self.field, e))
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyError> {
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        match c {
            '0'..='9' => {
                let value = self.uint_mod_p();
                Ok(MultiPoly::constant(self.field, self.vars, value))
            }
            '(' => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            't' => match self.field.t() {
                Some(t) => {
                    self.pos += 1;
                    Ok(MultiPoly::constant(self.field, self.vars, t))
                }
                None => Err(PolyError::UnknownVariable("t".to_string())),
            },
            c if c.is_alphabetic() => {
                if !c.is_ascii_uppercase() || !self.vars.contains(&c) {
                    return Err(PolyError::UnknownVariable(c.to_string()));
                }
                self.pos += 1;
                Ok(MultiPoly::variable(self.vars, c).expect("declared variable"))
            }
            _ => Err(self.error("expected a coefficient, variable or `(`")),
        }
    }

    fn uint_mod_p(&mut self) -> crate::field::FieldElement {
        let p = self.field.p() as u64;
        let mut acc = 0u64;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            acc = (acc * 10 + d as u64) % p;
            self.pos += 1;
        }
        self.field.from_int(acc as i64)
    }

    fn uint_exponent(&mut self) -> Result<u32, PolyError> {
        let start = self.pos;
        let mut acc = 0u32;
        while let Some(d) = self.chars.get(self.pos).and_then(|c| c.to_digit(10)) {
            acc = acc
                .checked_mul(10)
                .and_then(|a| a.checked_add(d))
                .ok_or_else(|| PolyError::SyntaxError {
                    position: start,
                    message: "exponent out of range".to_string(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected an exponent"));
        }
        Ok(acc)
    }
}
