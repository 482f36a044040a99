use core::str::FromStr;

use alloc::string::ToString;
use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GaussRat, QScalar};
use crate::error::Error;

/// Recursive-descent reader for scalar text such as
/// `(1 - i)*q^(3/2) + 2*q^(-1)`.
pub(crate) struct ScalarParser<'a> {
    src: &'a [u8],
    pub(crate) pos: usize,
}

fn err(pos: usize, msg: &str) -> Error {
    Error::Syntax {
        pos,
        msg: msg.to_string(),
    }
}

impl<'a> ScalarParser<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        ScalarParser {
            src: src.as_bytes(),
            pos: 0,
        }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.pos, &alloc::format!("expected `{}`", c as char)))
        }
    }

    pub(crate) fn parse_all(mut self) -> Result<QScalar, Error> {
        let v = self.expr()?;
        if self.peek().is_some() {
            return Err(err(self.pos, "unexpected trailing input"));
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<QScalar, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QScalar, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let inv = d
                    .inv_monomial()
                    .ok_or_else(|| err(at, "divisor must be a nonzero monomial"))?;
                acc = &acc * &inv;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<QScalar, Error> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<QScalar, Error> {
        let at = self.pos;
        let (base, is_q) = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let (num, den) = self.exponent()?;
        if den == 2 {
            if !is_q {
                return Err(err(at, "half-integer powers apply to q only"));
            }
            return Ok(QScalar::q_half_pow(num));
        }
        if num >= 0 {
            return Ok(base.pow(num as u32));
        }
        let inv = base
            .inv_monomial()
            .ok_or_else(|| err(at, "negative power of a non-monomial"))?;
        Ok(inv.pow((-num) as u32))
    }

    fn exponent(&mut self) -> Result<(i64, i64), Error> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let n = if neg { -n } else { n };
            let d = if self.eat(b'/') { self.integer()? } else { 1 };
            self.expect(b')')?;
            match d {
                1 => Ok((n, 1)),
                2 if n % 2 != 0 => Ok((n, 2)),
                2 => Ok((n / 2, 1)),
                _ => Err(err(self.pos, "exponent denominator must be 1 or 2")),
            }
        } else {
            Ok((self.integer()?, 1))
        }
    }

    fn integer(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(start, "expected integer"));
        }
        core::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<i64>()
            .map_err(|_| err(start, "integer out of range"))
    }

    fn atom(&mut self) -> Result<(QScalar, bool), Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok((v, false))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok((QScalar::q(), true))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok((QScalar::i(), false))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = core::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: BigInt = text.parse().map_err(|_| err(start, "bad integer"))?;
                Ok((
                    QScalar::constant(GaussRat::new(
                        BigRational::from_integer(n),
                        BigRational::default(),
                    )),
                    false,
                ))
            }
            Some(_) => Err(err(self.pos, "unexpected character")),
            None => Err(err(self.pos, "unexpected end of input")),
        }
    }
}

impl FromStr for QScalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        ScalarParser::new(s).parse_all()
    }
}

/// Parses scalar text, panicking on malformed input. Intended for built-in
/// data tables.
pub fn qs(s: &str) -> QScalar {
    match s.parse() {
        Ok(v) => v,
        Err(e) => panic!("bad scalar literal {:?}: {}", s, e),
    }
}

impl FromStr for super::QFraction {
    type Err = Error;
    /// Accepts scalar text or the rendered quotient form `(a)/(b)`.
    fn from_str(s: &str) -> Result<Self, Error> {
        if let Ok(v) = s.parse::<QScalar>() {
            return Ok(super::QFraction::from_scalar(v));
        }
        let t = s.trim();
        let mut depth = 0i32;
        for (i, ch) in t.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 && t[i + 1..].trim_start().starts_with('(') && t.ends_with(')') => {
                    let num: QScalar = t[..i].parse()?;
                    let den: QScalar = t[i + 1..].parse().map_err(|e| match e {
                        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + i + 1, msg },
                        other => other,
                    })?;
                    return super::QFraction::new(num, den).ok_or_else(|| err(i, "zero denominator"));
                }
                _ => {}
            }
        }
        Err(s.parse::<QScalar>().unwrap_err())
    }
}
