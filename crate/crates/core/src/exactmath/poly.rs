//! Dense-exponent multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by graded-lexicographic monomials, so
//! two polynomials over the same variable list are equal exactly when
//! their canonical forms are equal. Identities are checked by expanding
//! `lhs - rhs` and testing for the zero polynomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    fn empty_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &[&str], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.push_term(Monomial(vec![0; vars.len()]), c);
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(vars: &[&str], name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .ok_or_else(|| Error::MissingVariable(name.to_string()))?;
        let mut p = Self::zero(vars);
        let mut e = vec![0; vars.len()];
        e[idx] = 1;
        p.push_term(Monomial(e), Rational::one());
        Ok(p)
    }

    /// All ring variables as polynomials, in order.
    pub fn vars_of(vars: &[&str]) -> Vec<Self> {
        vars.iter().map(|v| Self::var(vars, v).expect("listed variable")).collect()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    fn push_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "polynomials over different variable lists: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return self.empty_like();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant_in(&self.vars, Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    fn constant_in(vars: &Arc<[String]>, c: Rational) -> Self {
        let mut p = MultiPoly { vars: vars.clone(), terms: BTreeMap::new() };
        p.push_term(Monomial(vec![0; vars.len()]), c);
        p
    }

    /// Evaluation at values listed in variable order.
    pub fn eval(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.vars.len() {
            return Err(Error::Dimension { expected: self.vars.len(), got: values.len() });
        }
        let mut powers: Vec<Vec<Rational>> = values.iter().map(|v| vec![Rational::one(), v.clone()]).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &table[1];
                    table.push(next);
                }
                t *= &table[e as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at a named assignment; every ring variable must be bound.
    pub fn eval_named(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        let values = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, r)| r.clone())
                    .ok_or_else(|| Error::MissingVariable(v.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        self.eval(&values)
    }

    /// Substitutes `subst[i]` for the i-th variable. All substitutes must
    /// share one variable list, which becomes the ring of the result.
    pub fn compose(&self, subst: &[MultiPoly]) -> Result<MultiPoly> {
        if subst.len() != self.vars.len() {
            return Err(Error::Dimension { expected: self.vars.len(), got: subst.len() });
        }
        let target = subst
            .first()
            .map(|p| p.vars.clone())
            .ok_or(Error::Dimension { expected: 1, got: 0 })?;
        for s in subst {
            s.check_ring(&subst[0]);
        }
        let mut powers: Vec<Vec<MultiPoly>> = subst
            .iter()
            .map(|s| vec![Self::constant_in(&target, Rational::one()), s.clone()])
            .collect();
        let mut acc = MultiPoly { vars: target.clone(), terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let mut t = Self::constant_in(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &table[1];
                    table.push(next);
                }
                t = &t * &table[e as usize];
            }
            acc = acc + t;
        }
        Ok(acc)
    }

    /// Substitution by variable name; names not mentioned are kept as-is
    /// provided the target ring contains them.
    pub fn compose_named(&self, subst: &[(&str, MultiPoly)]) -> Result<MultiPoly> {
        let target_vars: Vec<String> = match subst.first() {
            Some((_, p)) => p.vars.to_vec(),
            None => return Ok(self.clone()),
        };
        let target: Vec<&str> = target_vars.iter().map(String::as_str).collect();
        let full = self
            .vars
            .iter()
            .map(|v| match subst.iter().find(|(n, _)| n == v) {
                Some((_, p)) => Ok(p.clone()),
                None => Self::var(&target, v),
            })
            .collect::<Result<Vec<_>>>()?;
        self.compose(&full)
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = self.empty_like();
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.push_term(m2, c * Rational::from_integer(e.into()));
        }
        out
    }

    /// Parses an expression such as `(X+Y+Z)^3 + 2*X*Y*Z - 1/2*W^2`.
    ///
    /// Supports `+ - * ^`, parentheses, integer literals and division by
    /// constant subexpressions. Multiplication must be written out.
    pub fn parse(expr: &str, vars: &[&str]) -> Result<Self> {
        let mut p = Parser { src: expr.as_bytes(), pos: 0, vars };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self.check_ring(&rhs);
        for (m, c) in rhs.terms {
            self.push_term(m, c);
        }
        self
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_ring(rhs);
        let mut out = self.empty_like();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                #[allow(clippy::suspicious_arithmetic_impl)]
                let m = Monomial(ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect());
                out.push_term(m, ca * cb);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl fmt::Display for MultiPoly {
    /// Highest graded-lex term first, e.g. `X^2*Y - 3/2*Z + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let factors: Vec<String> = m
                .0
                .iter()
                .zip(self.vars.iter())
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in polynomial expression", self.pos))
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

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(op @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == b'*' {
                acc = &acc * &rhs;
            } else {
                let c = constant_value(&rhs).ok_or_else(|| self.error("division by a non-constant"))?;
                if c.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                acc = acc.scale(&c.recip());
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(MultiPoly::constant(self.vars, Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                MultiPoly::var(self.vars, name)
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

fn constant_value(p: &MultiPoly) -> Option<Rational> {
    match p.terms.len() {
        0 => Some(Rational::zero()),
        1 => {
            let (m, c) = p.terms.iter().next().unwrap();
            (m.degree() == 0).then(|| c.clone())
        }
        _ => None,
    }
}
