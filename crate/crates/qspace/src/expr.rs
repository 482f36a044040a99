//! Expression language for elements of a quantum space.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('-' | '+') unary | power
//! power  := factor ('^' exponent)?
//! factor := scalar | symbol | 'conj(' expr ')' | 'star(' expr ',' expr ')'
//!         | 'd' kind index '(' expr ')' | '(' expr ')'
//! kind   := 'l' | 'r' | 'hl' | 'hr'
//! ```
//!
//! Scalars use the `QScalar` text form (`q`, `i`, integers, `q^(1/2)`).
//! Symbols are the coordinate generators (`X1`, `X+`, ...), momenta (`P1`,
//! `P+`, ...) and Grassmann generators (`theta1`, `theta3/0`, ...). A
//! derivative index is the generator suffix, as in `dl+(X+*X3)`. Division is
//! allowed by nonzero scalar monomials only; `^` takes a nonnegative integer
//! except on `q`.
//!
//! Parsing folds constant subexpressions into a single scalar and collects
//! the scalar factors of a product in front, so that rendering and parsing
//! again reproduces the same tree.

use std::fmt;

use qspace_core::grassmann::GrassmannSpace;
use qspace_core::ncalg::{dequantize, quantize};
use qspace_core::phasespace::{derivative_action, Calculus, DerivKind, Ordering, PhaseAlgebra, Side};
use qspace_core::{Error, NCPoly, QFraction, QScalar, Result, SpaceSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Position,
    Momentum,
    Grassmann,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Symbol {
    pub kind: SymbolKind,
    /// Generator position within its family.
    pub index: u8,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(QScalar),
    Symbol(Symbol),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Conj(Box<Expr>),
    Star(Box<Expr>, Box<Expr>),
    Deriv { kind: DerivKind, index: u8, suffix: String, arg: Box<Expr> },
}

/// Names a space's symbols can take in expressions.
#[derive(Clone, Debug)]
pub struct SymbolTable {
    entries: Vec<Symbol>,
    suffixes: Vec<String>,
}

impl SymbolTable {
    pub fn new(space: &SpaceSpec) -> Self {
        let suffixes: Vec<String> = space
            .labels()
            .iter()
            .map(|l| l.strip_prefix('X').unwrap_or(l).to_string())
            .collect();
        let mut entries = Vec::new();
        for (i, l) in space.labels().iter().enumerate() {
            entries.push(Symbol {
                kind: SymbolKind::Position,
                index: i as u8,
                text: l.clone(),
            });
            entries.push(Symbol {
                kind: SymbolKind::Momentum,
                index: i as u8,
                text: format!("P{}", suffixes[i]),
            });
        }
        let g = GrassmannSpace::preset(space.kind);
        for (i, l) in g.labels.iter().enumerate() {
            entries.push(Symbol {
                kind: SymbolKind::Grassmann,
                index: i as u8,
                text: format!("theta{}", l),
            });
        }
        SymbolTable { entries, suffixes }
    }

    fn longest_symbol(&self, rest: &str) -> Option<&Symbol> {
        self.entries
            .iter()
            .filter(|s| rest.starts_with(&s.text))
            .max_by_key(|s| s.text.len())
    }

    fn longest_suffix(&self, rest: &str) -> Option<(u8, &str)> {
        self.suffixes
            .iter()
            .enumerate()
            .filter(|(_, s)| rest.starts_with(s.as_str()))
            .max_by_key(|(_, s)| s.len())
            .map(|(i, s)| (i as u8, s.as_str()))
    }
}

fn kind_text(k: DerivKind) -> &'static str {
    match (k.calculus, k.side) {
        (Calculus::Unhatted, Side::Left) => "l",
        (Calculus::Unhatted, Side::Right) => "r",
        (Calculus::Hatted, Side::Left) => "hl",
        (Calculus::Hatted, Side::Right) => "hr",
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    table: &'a SymbolTable,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(syntax(self.pos, format!("expected `{}`", s)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat("+") {
                terms.push(self.term()?);
            } else if self.eat("-") {
                terms.push(negate(self.term()?));
            } else {
                return Ok(make_sum(terms));
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat("*") {
                factors.push(self.unary()?);
            } else if self.peek() == Some('/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.unary()?;
                let inv = match &d {
                    Expr::Scalar(s) => s.inv_monomial(),
                    _ => None,
                }
                .ok_or_else(|| syntax(at, "divisor must be a nonzero scalar monomial"))?;
                factors.push(Expr::Scalar(inv));
            } else {
                return Ok(make_product(factors));
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat("-") {
            return Ok(negate(self.unary()?));
        }
        if self.eat("+") {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let at = self.pos;
        let (base, is_q) = self.factor()?;
        if !self.eat("^") {
            return Ok(base);
        }
        let (num, den) = self.exponent()?;
        if den == 2 {
            if !is_q {
                return Err(syntax(at, "half-integer powers apply to q only"));
            }
            return Ok(Expr::Scalar(QScalar::q_half_pow(num)));
        }
        if let Expr::Scalar(s) = &base {
            if num >= 0 {
                return Ok(Expr::Scalar(s.pow(num as u32)));
            }
            let inv = s
                .inv_monomial()
                .ok_or_else(|| syntax(at, "negative power of a non-monomial"))?;
            return Ok(Expr::Scalar(inv.pow((-num) as u32)));
        }
        if num < 0 {
            return Err(syntax(at, "negative power of a non-scalar"));
        }
        if num == 0 {
            return Ok(Expr::Scalar(QScalar::one()));
        }
        Ok(make_product(vec![base; num as usize]))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let digits = self.rest().bytes().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err(syntax(self.pos, "expected integer"));
        }
        let v = self.rest()[..digits]
            .parse::<i64>()
            .map_err(|_| syntax(self.pos, "integer out of range"))?;
        self.pos += digits;
        Ok(v)
    }

    fn exponent(&mut self) -> Result<(i64, i64)> {
        if self.eat("(") {
            let neg = self.eat("-");
            let n = self.integer()?;
            let n = if neg { -n } else { n };
            let d = if self.eat("/") { self.integer()? } else { 1 };
            self.expect(")")?;
            match d {
                1 => Ok((n, 1)),
                2 if n % 2 != 0 => Ok((n, 2)),
                2 => Ok((n / 2, 1)),
                _ => Err(syntax(self.pos, "exponent denominator must be 1 or 2")),
            }
        } else {
            Ok((self.integer()?, 1))
        }
    }

    fn factor(&mut self) -> Result<(Expr, bool)> {
        self.skip_ws();
        let start = self.pos;
        let rest = self.rest();
        if rest.is_empty() {
            return Err(syntax(start, "unexpected end of input"));
        }
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok((e, false));
        }
        if self.eat("conj(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok((fold(Expr::Conj(Box::new(e))), false));
        }
        if self.eat("star(") {
            let a = self.expr()?;
            self.expect(",")?;
            let b = self.expr()?;
            self.expect(")")?;
            return Ok((Expr::Star(Box::new(a), Box::new(b)), false));
        }
        if let Some(sym) = self.table.longest_symbol(rest) {
            self.pos += sym.text.len();
            return Ok((Expr::Symbol(sym.clone()), false));
        }
        if let Some(after_d) = rest.strip_prefix('d') {
            let kinds = [
                ("hl", DerivKind::new(Calculus::Hatted, Side::Left)),
                ("hr", DerivKind::new(Calculus::Hatted, Side::Right)),
                ("l", DerivKind::new(Calculus::Unhatted, Side::Left)),
                ("r", DerivKind::new(Calculus::Unhatted, Side::Right)),
            ];
            for (t, kind) in kinds {
                if let Some(after_k) = after_d.strip_prefix(t) {
                    let (index, suffix) = self
                        .table
                        .longest_suffix(after_k)
                        .ok_or_else(|| syntax(start + 1 + t.len(), "unknown derivative index"))?;
                    let suffix = suffix.to_string();
                    self.pos += 1 + t.len() + suffix.len();
                    if !self.rest().starts_with('(') {
                        return Err(syntax(self.pos, "expected `(`"));
                    }
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect(")")?;
                    return Ok((
                        Expr::Deriv {
                            kind,
                            index,
                            suffix,
                            arg: Box::new(arg),
                        },
                        false,
                    ));
                }
            }
            return Err(syntax(start, "unknown derivative kind"));
        }
        if rest.starts_with('q') {
            self.pos += 1;
            return Ok((Expr::Scalar(QScalar::q()), true));
        }
        if rest.starts_with('i') {
            self.pos += 1;
            return Ok((Expr::Scalar(QScalar::i()), false));
        }
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let n = self.integer()?;
            return Ok((Expr::Scalar(QScalar::from_int(n)), false));
        }
        let word: String = rest.chars().take_while(|c| c.is_alphanumeric()).collect();
        if word.is_empty() {
            Err(syntax(start, "unexpected character"))
        } else {
            Err(Error::UnknownSymbol(word))
        }
    }
}

fn negate(e: Expr) -> Expr {
    make_product(vec![Expr::Scalar(-QScalar::one()), e])
}

fn fold(e: Expr) -> Expr {
    match e {
        Expr::Conj(inner) => match *inner {
            Expr::Scalar(s) => Expr::Scalar(s.conj()),
            other => Expr::Conj(Box::new(other)),
        },
        other => other,
    }
}

/// Flattens nested sums and merges the scalar terms into the position of
/// the first one.
fn make_sum(terms: Vec<Expr>) -> Expr {
    let mut flat = Vec::new();
    for t in terms {
        match t {
            Expr::Sum(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    let mut out: Vec<Expr> = Vec::new();
    let mut scalar_at: Option<usize> = None;
    for t in flat {
        if let Expr::Scalar(s) = &t {
            if let Some(i) = scalar_at {
                if let Expr::Scalar(acc) = &mut out[i] {
                    *acc += s;
                }
                continue;
            }
            scalar_at = Some(out.len());
        }
        out.push(t);
    }
    if out.len() > 1 {
        if let Some(i) = scalar_at {
            if matches!(&out[i], Expr::Scalar(s) if s.is_zero()) {
                out.remove(i);
            }
        }
    }
    match out.len() {
        0 => Expr::Scalar(QScalar::zero()),
        1 => out.pop().unwrap(),
        _ => Expr::Sum(out),
    }
}

/// Flattens nested products and collects the scalar factors in front.
fn make_product(factors: Vec<Expr>) -> Expr {
    let mut scalar = QScalar::one();
    let mut rest = Vec::new();
    for f in factors {
        match f {
            Expr::Scalar(s) => scalar = &scalar * &s,
            Expr::Product(inner) => {
                for g in inner {
                    match g {
                        Expr::Scalar(s) => scalar = &scalar * &s,
                        other => rest.push(other),
                    }
                }
            }
            other => rest.push(other),
        }
    }
    if rest.is_empty() || scalar.is_zero() {
        return Expr::Scalar(scalar);
    }
    if scalar.is_one() && rest.len() == 1 {
        return rest.pop().unwrap();
    }
    let mut out = Vec::with_capacity(rest.len() + 1);
    if !scalar.is_one() {
        out.push(Expr::Scalar(scalar));
    }
    out.extend(rest);
    Expr::Product(out)
}

/// Parses `src` against the symbols of `space`.
pub fn parse(src: &str, space: &SpaceSpec) -> Result<Expr> {
    let table = SymbolTable::new(space);
    parse_with(src, &table)
}

pub fn parse_with(src: &str, table: &SymbolTable) -> Result<Expr> {
    let mut p = Parser { src, pos: 0, table };
    if p.peek().is_none() {
        return Err(syntax(0, "empty expression"));
    }
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(syntax(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

fn scalar_is_atom(s: &QScalar) -> bool {
    s.len() <= 1
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Scalar(s) => write!(f, "{}", s),
            Expr::Symbol(s) => f.write_str(&s.text),
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    let text = t.to_string();
                    match (i, text.strip_prefix('-')) {
                        (0, _) => f.write_str(&text)?,
                        (_, Some(r)) => write!(f, " - {}", r)?,
                        (_, None) => write!(f, " + {}", text)?,
                    }
                }
                Ok(())
            }
            Expr::Product(factors) => {
                for (i, x) in factors.iter().enumerate() {
                    match x {
                        Expr::Scalar(s) if i == 0 && s == &-QScalar::one() => {
                            f.write_str("-")?;
                            continue;
                        }
                        Expr::Scalar(s) if i == 0 && scalar_is_atom(s) => write!(f, "{}", s)?,
                        Expr::Scalar(s) => write!(f, "({})", s)?,
                        Expr::Sum(_) => write!(f, "({})", x)?,
                        other => write!(f, "{}", other)?,
                    }
                    if i + 1 < factors.len() {
                        f.write_str("*")?;
                    }
                }
                Ok(())
            }
            Expr::Conj(e) => write!(f, "conj({})", e),
            Expr::Star(a, b) => write!(f, "star({}, {})", a, b),
            Expr::Deriv { kind, suffix, arg, .. } => write!(f, "d{}{}({})", kind_text(*kind), suffix, arg),
        }
    }
}

impl Expr {
    pub fn uses(&self, kind: SymbolKind) -> bool {
        match self {
            Expr::Scalar(_) => false,
            Expr::Symbol(s) => s.kind == kind,
            Expr::Sum(v) | Expr::Product(v) => v.iter().any(|e| e.uses(kind)),
            Expr::Conj(e) => e.uses(kind),
            Expr::Star(a, b) => a.uses(kind) || b.uses(kind),
            Expr::Deriv { arg, .. } => arg.uses(kind),
        }
    }
}

/// Evaluates into the coordinate algebra, or into the phase space of the
/// unhatted calculus with positions left of momenta when a momentum occurs.
pub struct Evaluator<'a> {
    space: &'a SpaceSpec,
    phase: Option<PhaseAlgebra>,
}

impl<'a> Evaluator<'a> {
    pub fn new(space: &'a SpaceSpec, e: &Expr) -> Result<Self> {
        if e.uses(SymbolKind::Grassmann) {
            return Err(Error::UnsupportedSpace(format!(
                "{}: Grassmann generators only enter the sesquilinear forms",
                space.name()
            )));
        }
        let phase = if e.uses(SymbolKind::Momentum) {
            Some(PhaseAlgebra::new(space, Calculus::Unhatted, Ordering::XP)?)
        } else {
            None
        };
        Ok(Evaluator { space, phase })
    }

    pub fn eval(&self, e: &Expr) -> Result<NCPoly<QFraction>> {
        match &self.phase {
            None => self.coord(e),
            Some(ph) => self.phase_eval(ph, e),
        }
    }

    fn coord(&self, e: &Expr) -> Result<NCPoly<QFraction>> {
        let sys = &self.space.algebra;
        Ok(match e {
            Expr::Scalar(s) => NCPoly::constant(sys, QFraction::from_scalar(s.clone())),
            Expr::Symbol(s) => match s.kind {
                SymbolKind::Position => self.space.generator(s.index),
                _ => return Err(Error::UnknownSymbol(s.text.clone())),
            },
            Expr::Sum(v) => {
                let mut acc = NCPoly::zero(sys);
                for t in v {
                    acc = acc.add(&self.coord(t)?)?;
                }
                acc
            }
            Expr::Product(v) => {
                let mut acc = NCPoly::one(sys);
                for t in v {
                    acc = acc.ncmul(&self.coord(t)?)?;
                }
                acc
            }
            Expr::Conj(inner) => self.space.conjugate(&self.coord(inner)?)?,
            Expr::Star(a, b) => {
                let fa = dequantize(&self.coord(a)?);
                let fb = dequantize(&self.coord(b)?);
                quantize(sys, &self.space.star_product(&fa, &fb)?)?
            }
            Expr::Deriv { kind, index, arg, .. } => derivative_action(self.space, *kind, *index, &self.coord(arg)?)?,
        })
    }

    fn phase_eval(&self, ph: &PhaseAlgebra, e: &Expr) -> Result<NCPoly<QFraction>> {
        let sys = ph.system();
        Ok(match e {
            Expr::Scalar(s) => NCPoly::constant(sys, QFraction::from_scalar(s.clone())),
            Expr::Symbol(s) => {
                let g = match s.kind {
                    SymbolKind::Position => ph.x(s.index),
                    SymbolKind::Momentum => ph.p(s.index),
                    SymbolKind::Grassmann => return Err(Error::UnknownSymbol(s.text.clone())),
                };
                NCPoly::generator(sys, g)
            }
            Expr::Sum(v) => {
                let mut acc = NCPoly::zero(sys);
                for t in v {
                    acc = acc.add(&self.phase_eval(ph, t)?)?;
                }
                acc
            }
            Expr::Product(v) => {
                let mut acc = NCPoly::one(sys);
                for t in v {
                    acc = acc.ncmul(&self.phase_eval(ph, t)?)?;
                }
                acc
            }
            other => {
                if other.uses(SymbolKind::Momentum) {
                    return Err(Error::UnsupportedSpace(format!(
                        "{}: conj, star and derivatives act on position elements only",
                        self.space.name()
                    )));
                }
                ph.embed_x(&self.coord(other)?)
            }
        })
    }
}

/// Parses and normal-orders an expression.
pub fn normal_order(src: &str, space: &SpaceSpec) -> Result<NCPoly<QFraction>> {
    let e = parse(src, space)?;
    Evaluator::new(space, &e)?.eval(&e)
}
