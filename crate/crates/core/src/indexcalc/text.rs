//! Text form of exponents, index sets and families, and a small expression evaluator.
//!
//! ```text
//! expr     := call | family | set | number
//! call     := name '(' expr (',' expr)* ')'
//! family   := '[' set ',' set (',' set)? ']'
//! set      := 'inf' | '{' [item (',' item)*] '}' ['<' number] | exponent
//! item     := '(' exponent ',' uint ')' | '(' kexpr ',' kexpr ')' ':' 'k'
//! exponent := ['+'|'-'] atom (('+'|'-') atom)*      atom := uint | [uint] 'z'
//! ```
//!
//! `ζ` may be written for `z`. A comprehension item ranges over `k = 0, 1, …` while the real
//! part stays below the set's truncation, which is then mandatory.

use std::fmt;

use super::{
    compose_families, compose_family_boundary, ext_union, plain_union, re_min, smooth_closure, sum,
    truncate, BoundaryIndexFamily, Exponent, IndexCtx, IndexFamily, IndexSet, IndexTerm,
};
use crate::error::{Error, Result};

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.zeta, self.offset) {
            (0, p) => write!(f, "{p}"),
            (q, p) => {
                if q == 1 {
                    f.write_str("z")?;
                } else {
                    write!(f, "{q}z")?;
                }
                match p {
                    0 => Ok(()),
                    p if p > 0 => write!(f, "+{p}"),
                    p => write!(f, "{p}"),
                }
            }
        }
    }
}

impl fmt::Display for IndexTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.log)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            return f.write_str("inf");
        }
        f.write_str("{")?;
        for (i, t) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")?;
        if self.truncation().is_finite() {
            write!(f, "<{:?}", self.truncation())?;
        }
        Ok(())
    }
}

impl fmt::Display for IndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.left, self.right, self.front)
    }
}

impl fmt::Display for BoundaryIndexFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.left, self.right)
    }
}

/// Result of [`evaluate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Number(f64),
    Set(IndexSet),
    Family(IndexFamily),
    Boundary(BoundaryIndexFamily),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Number(x) => write!(f, "{x:?}"),
            Value::Set(s) => write!(f, "{s}"),
            Value::Family(s) => write!(f, "{s}"),
            Value::Boundary(s) => write!(f, "{s}"),
        }
    }
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Number(_) => "number",
            Value::Set(_) => "index set",
            Value::Family(_) => "index family",
            Value::Boundary(_) => "boundary index family",
        }
    }
}

/// Linear form `p + q·ζ + c·k` used by comprehensions.
#[derive(Default, Clone, Copy)]
struct KForm {
    p: i64,
    q: i64,
    c: i64,
}

struct Parser<'a> {
    ctx: &'a IndexCtx,
    s: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(ctx: &'a IndexCtx, text: &str) -> Self {
        Self { ctx, s: text.chars().collect(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.s.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn uint(&mut self) -> Result<i64> {
        self.ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn is_z(c: Option<char>) -> bool {
        matches!(c, Some('z') | Some('ζ'))
    }

    fn ident(&mut self) -> String {
        self.ws();
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    fn kform(&mut self, allow_k: bool) -> Result<KForm> {
        let mut f = KForm::default();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) { Some(self.uint()?) } else { None };
            let next = self.s.get(self.pos).copied();
            if Self::is_z(next) {
                self.pos += 1;
                f.q += sign * coeff.unwrap_or(1);
            } else if allow_k && next == Some('k') {
                self.pos += 1;
                f.c += sign * coeff.unwrap_or(1);
            } else if let Some(v) = coeff {
                f.p += sign * v;
            } else {
                return self.err("expected an integer or 'z'");
            }
        }
        Ok(f)
    }

    fn exponent(&mut self) -> Result<Exponent> {
        let start = self.pos;
        let f = self.kform(false)?;
        if f.q < 0 || f.q > u32::MAX as i64 {
            self.pos = start;
            return self.err("the multiplicity of z must be a nonnegative integer");
        }
        Ok(Exponent::new(f.p, f.q as u32))
    }

    fn number(&mut self) -> Result<f64> {
        self.ws();
        let start = self.pos;
        while self
            .s
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '+' | '-'))
        {
            self.pos += 1;
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse::<f64>().or_else(|_| {
            self.pos = start;
            self.err("expected a number")
        })
    }

    fn set(&mut self) -> Result<IndexSet> {
        match self.peek() {
            Some('{') => {
                self.pos += 1;
                let mut terms = Vec::new();
                let mut families = Vec::new();
                if !self.eat('}') {
                    loop {
                        self.item(&mut terms, &mut families)?;
                        if self.eat('}') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                let m = if self.eat('<') { self.number()? } else { f64::INFINITY };
                if !families.is_empty() {
                    if !m.is_finite() {
                        return self.err("a comprehension needs a finite truncation '<M'");
                    }
                    for (a, l) in families {
                        self.expand(a, l, m, &mut terms)?;
                    }
                }
                Ok(IndexSet::truncated(self.ctx, terms, m))
            }
            Some('i') => {
                let start = self.pos;
                if self.ident() == "inf" {
                    Ok(IndexSet::infinity())
                } else {
                    self.pos = start;
                    self.err("expected 'inf'")
                }
            }
            _ => Ok(IndexSet::single(self.exponent()?)),
        }
    }

    fn item(&mut self, terms: &mut Vec<IndexTerm>, families: &mut Vec<(KForm, KForm)>) -> Result<()> {
        self.expect('(')?;
        let start = self.pos;
        let a = self.kform(true)?;
        self.expect(',')?;
        let l = self.kform(true)?;
        self.expect(')')?;
        if self.eat(':') {
            self.ws();
            if self.ident() != "k" {
                return self.err("expected the bound variable 'k'");
            }
            families.push((a, l));
            return Ok(());
        }
        if a.c != 0 || l.c != 0 || l.q != 0 || a.q < 0 || l.p < 0 {
            self.pos = start;
            return self.err("a term is (exponent, nonnegative integer)");
        }
        terms.push(IndexTerm::new(Exponent::new(a.p, a.q as u32), l.p as u32));
        Ok(())
    }

    fn expand(&self, a: KForm, l: KForm, m: f64, out: &mut Vec<IndexTerm>) -> Result<()> {
        if l.q != 0 || l.c < 0 || l.p < 0 || a.q < 0 {
            return self.err("comprehension log power must be nonnegative and nondecreasing in k");
        }
        if a.c < 0 || (a.c == 0 && l.c != 0) {
            return self.err("comprehension exponent must increase with k");
        }
        let mut k = 0;
        loop {
            let e = Exponent::new(a.p + a.c * k, a.q as u32);
            if self.ctx.re(e) >= m {
                break;
            }
            out.push(IndexTerm::new(e, (l.p + l.c * k) as u32));
            if a.c == 0 {
                break;
            }
            k += 1;
        }
        Ok(())
    }

    fn family_or_boundary(&mut self) -> Result<Value> {
        self.expect('[')?;
        let mut sets = vec![self.set()?];
        while self.eat(',') {
            sets.push(self.set()?);
        }
        self.expect(']')?;
        let mut it = sets.into_iter();
        match (it.next(), it.next(), it.next(), it.next()) {
            (Some(l), Some(r), None, None) => Ok(Value::Boundary(BoundaryIndexFamily::new(l, r))),
            (Some(l), Some(r), Some(f), None) => Ok(Value::Family(IndexFamily::new(l, r, f))),
            _ => self.err("a family has two or three faces"),
        }
    }

    fn expr(&mut self, n: i64) -> Result<Value> {
        match self.peek() {
            Some('[') => self.family_or_boundary(),
            Some('{') => Ok(Value::Set(self.set()?)),
            Some(c) if c.is_ascii_alphabetic() && c != 'z' => {
                let start = self.pos;
                let name = self.ident();
                if name == "inf" {
                    return Ok(Value::Set(IndexSet::infinity()));
                }
                if !self.eat('(') {
                    self.pos = start;
                    return self.err(format!("unknown name '{name}'"));
                }
                let mut args = vec![self.expr(n)?];
                while self.eat(',') {
                    args.push(self.expr(n)?);
                }
                self.expect(')')?;
                self.apply(start, &name, args, n)
            }
            _ => Ok(Value::Set(self.set()?)),
        }
    }

    fn apply(&self, at: usize, name: &str, args: Vec<Value>, n: i64) -> Result<Value> {
        let ctx = self.ctx;
        let v = match (name, args.as_slice()) {
            ("sum", [Value::Set(a), Value::Set(b)]) => Value::Set(sum(ctx, a, b)),
            ("union", [Value::Set(a), Value::Set(b)]) => Value::Set(ext_union(ctx, a, b)?),
            ("plain", [Value::Set(a), Value::Set(b)]) => Value::Set(plain_union(ctx, a, b)),
            ("re", [Value::Set(a)]) => Value::Number(re_min(ctx, a)),
            ("closure", [Value::Set(a)]) => Value::Set(smooth_closure(ctx, a)?),
            ("truncate", [Value::Set(a), Value::Number(m)]) => Value::Set(truncate(ctx, a, *m)),
            ("truncate", [Value::Set(a), Value::Set(m)]) => {
                let m = set_as_number(m).ok_or(Error::Parse { pos: at, msg: "expected a number".into() })?;
                Value::Set(truncate(ctx, a, m))
            }
            ("compose", [Value::Family(a), Value::Family(b)]) => Value::Family(compose_families(ctx, a, b, n)?),
            ("compose", [Value::Family(a), Value::Boundary(b)]) => {
                Value::Boundary(compose_family_boundary(ctx, a, b, n)?)
            }
            _ => {
                let kinds: Vec<_> = args.iter().map(Value::kind).collect();
                return Err(Error::Parse { pos: at, msg: format!("{name} does not accept ({})", kinds.join(", ")) });
            }
        };
        Ok(v)
    }
}

/// An integer exponent read back as a number (used for `truncate(S, 4)`).
fn set_as_number(s: &IndexSet) -> Option<f64> {
    let mut it = s.terms();
    match (it.next(), it.next()) {
        (Some(t), None) if t.a.zeta == 0 && t.log == 0 && !s.truncation().is_finite() => Some(t.a.offset as f64),
        _ => None,
    }
}

pub fn parse_exponent(text: &str) -> Result<Exponent> {
    let ctx = IndexCtx::new(Default::default());
    let mut p = Parser::new(&ctx, text);
    let e = p.exponent()?;
    p.finish()?;
    Ok(e)
}

/// Parses a set; `ctx` supplies `Re ζ` for truncation and comprehensions.
pub fn parse_set(ctx: &IndexCtx, text: &str) -> Result<IndexSet> {
    let mut p = Parser::new(ctx, text);
    let s = p.set()?;
    p.finish()?;
    Ok(s)
}

pub fn parse_family(ctx: &IndexCtx, text: &str) -> Result<IndexFamily> {
    let mut p = Parser::new(ctx, text);
    let v = p.family_or_boundary()?;
    p.finish()?;
    match v {
        Value::Family(f) => Ok(f),
        _ => Err(Error::Parse { pos: 0, msg: "expected three faces".into() }),
    }
}

/// Evaluates an expression built from `sum`, `union` (extended), `plain`, `re`, `closure`,
/// `truncate` and `compose` (family ∘ family or family ∘ boundary family, dimension `n`).
pub fn evaluate(ctx: &IndexCtx, text: &str, n: i64) -> Result<Value> {
    let mut p = Parser::new(ctx, text);
    let v = p.expr(n)?;
    p.finish()?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn ctx() -> IndexCtx {
        IndexCtx::new(C64::new(0.6, 0.7))
    }

    #[test]
    fn exponent_forms() {
        assert_eq!(parse_exponent("z+1").unwrap(), Exponent::new(1, 1));
        assert_eq!(parse_exponent(" -3 + 2z").unwrap(), Exponent::new(-3, 2));
        assert_eq!(parse_exponent("ζ").unwrap(), Exponent::new(0, 1));
        assert_eq!(Exponent::new(-3, 2).to_string(), "2z-3");
        assert_eq!(Exponent::new(0, 0).to_string(), "0");
        assert!(parse_exponent("1-z").is_err());
        assert!(parse_exponent("").is_err());
    }

    #[test]
    fn set_forms() {
        let c = ctx();
        let s = parse_set(&c, "{(z+1,0), (2z,3)}").unwrap();
        assert_eq!(s.to_string(), "{(z+1,0),(2z,3)}");
        assert!(parse_set(&c, "inf").unwrap().is_infinity());
        assert_eq!(parse_set(&c, "z").unwrap(), IndexSet::single(Exponent::new(0, 1)));
        let t = parse_set(&c, "{(z,0),(z+3,0)}<2.5").unwrap();
        assert_eq!(t.to_string(), "{(z,0)}<2.5");
        assert!(parse_set(&c, "{(z,0)").is_err());
    }

    #[test]
    fn comprehension() {
        let c = ctx();
        let s = parse_set(&c, "{ (z+1+k, k) : k }<3.7").unwrap();
        assert_eq!(s.to_string(), "{(z+1,0),(z+2,1),(z+3,2)}<3.7");
        assert!(parse_set(&c, "{(z+k,k):k}").is_err());
    }

    #[test]
    fn expressions() {
        let c = ctx();
        assert_eq!(evaluate(&c, "sum({(1,0)},{(2,3)})", 1).unwrap().to_string(), "{(3,3)}");
        assert_eq!(evaluate(&c, "union({(1,0)},{(2,1)})", 1).unwrap().to_string(), "{(1,0),(2,2)}");
        assert_eq!(evaluate(&c, "re({(z,0),(z+1,1)})", 1).unwrap(), Value::Number(0.6));
        let r = evaluate(&c, "compose([z,z,0],[z,z,0])", 1).unwrap();
        assert_eq!(r.to_string(), "[{(z,0),(z,1)},{(z,0),(z,1)},{(0,0),(2z,0)}]");
        assert!(matches!(evaluate(&c, "compose([0,0,0],[0,0,0])", 1), Err(Error::Hypothesis { .. })));
        assert!(evaluate(&c, "frob(z)", 1).is_err());
    }
}
