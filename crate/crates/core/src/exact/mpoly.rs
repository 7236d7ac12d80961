//! Sparse multivariate polynomials with rational coefficients, used to store
//! literal polynomial data and to check polynomial identities exactly.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed as _, Zero};

use super::poly::UniPoly;
use super::rational::format_rational;
use super::ring::Ring;
use super::Rational;
use crate::error::Error;

/// Exponent vector as sorted `(variable, exponent)` pairs with positive
/// exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.iter().find(|(v, _)| v == var).map_or(0, |(_, e)| *e)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut m: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            *m.entry(v.clone()).or_insert(0) += e;
        }
        Monomial(m.into_iter().collect())
    }

    /// `self / other` when `other` divides `self`.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m: BTreeMap<String, u32> = self.0.iter().cloned().collect();
        for (v, e) in &other.0 {
            let slot = m.get_mut(v)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
        }
        Some(Monomial(m.into_iter().filter(|(_, e)| *e > 0).collect()))
    }

    fn without(&self, var: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect())
    }
}

/// Graded lexicographic order, variables compared by name.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let a = self.0.get(i);
            let b = other.0.get(j);
            match (a, b) {
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        i += 1;
                        j += 1;
                    }
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => break,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn var(name: &str) -> Self {
        let mut p = Self::zero();
        p.add_term(Monomial::var(name), Rational::one());
        p
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(n)))
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c);
            }
        }
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

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(n, _)| n.clone()))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn to_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    /// Evaluates in any ring, looking variables up by name.
    pub fn eval<R: Ring>(&self, lookup: &dyn Fn(&str) -> R) -> R {
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (v, e) in &m.0 {
                t = t * lookup(v).pow(*e);
            }
            acc = acc + t;
        }
        acc
    }

    /// Evaluates with every variable bound in `vals`; panics on a free
    /// variable.
    pub fn eval_map<R: Ring>(&self, vals: &BTreeMap<&str, R>) -> R {
        self.eval(&|v| {
            vals.get(v)
                .cloned()
                .unwrap_or_else(|| panic!("unbound variable {v}"))
        })
    }

    /// Replaces `var` by `value`.
    pub fn substitute(&self, var: &str, value: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let rest = MPoly {
                terms: BTreeMap::from([(m.without(var), c.clone())]),
            };
            out = out + rest * value.pow(e);
        }
        out
    }

    /// Univariate view in `var` when it is the only variable.
    pub fn to_univariate(&self, var: &str) -> Option<UniPoly<Rational>> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().any(|(v, _)| v != var) {
                return None;
            }
            coeffs[m.exponent(var) as usize] += c;
        }
        Some(UniPoly::new(coeffs))
    }

    /// View as a polynomial in `outer` with coefficients in `Q[inner]`, when
    /// those are the only variables.
    pub fn to_bivariate(&self, outer: &str, inner: &str) -> Option<UniPoly<UniPoly<Rational>>> {
        let mut rows = vec![Vec::new(); self.degree_in(outer) as usize + 1];
        for (m, c) in &self.terms {
            if m.0.iter().any(|(v, _)| v != outer && v != inner) {
                return None;
            }
            let row: &mut Vec<Rational> = &mut rows[m.exponent(outer) as usize];
            let j = m.exponent(inner) as usize;
            if row.len() <= j {
                row.resize(j + 1, Rational::zero());
            }
            row[j] += c;
        }
        Some(UniPoly::new(rows.into_iter().map(UniPoly::new).collect()))
    }

    pub fn from_univariate(p: &UniPoly<Rational>, var: &str) -> MPoly {
        let x = MPoly::var(var);
        p.coeffs().iter().rev().fold(MPoly::zero(), |acc, c| {
            acc * x.clone() + MPoly::constant(c.clone())
        })
    }

    /// Quotient when `d` divides `self` exactly, by repeated cancellation of
    /// leading terms.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut r = self.clone();
        let mut q = MPoly::zero();
        while let Some((m, c)) = r.leading() {
            let qm = m.div(&dm)?;
            let qc = c / &dc;
            let t = MPoly {
                terms: BTreeMap::from([(qm, qc)]),
            };
            r = r - t.clone() * d.clone();
            q = q + t;
        }
        Some(q)
    }

    /// Whether `self = c·other` for a nonzero rational `c`; returns `c`.
    pub fn proportional(&self, other: &MPoly) -> Option<Rational> {
        let (m, c) = self.leading()?;
        let oc = other.terms.get(m)?;
        let ratio = c / oc;
        (other.scale(&ratio) == *self).then_some(ratio)
    }

    pub fn parse(s: &str) -> Result<MPoly, Error> {
        let mut p = Parser {
            toks: tokenize(s)?,
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in polynomial {s:?}")));
        }
        Ok(out)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        MPoly { terms: acc }
    }
}

impl Ring for MPoly {
    fn from_rational(r: &Rational) -> Self {
        MPoly::constant(r.clone())
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::int(1)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono: Vec<String> =
                m.0.iter()
                    .map(|(v, e)| {
                        if *e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser: sums of products of powers, integers, identifiers and parentheses.

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().unwrap()));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!(
                "unexpected character {c:?} in polynomial"
            )));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, Error> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .to_constant()
                    .filter(|c| !c.is_zero())
                    .ok_or_else(|| Error::Parse("division only by nonzero constants".into()))?;
                acc = acc.scale(&c.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly, Error> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::Parse(
                    "exponent must be a non-negative integer".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly, Error> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(MPoly::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn parse_and_expand() {
        let p = MPoly::parse("(X+Y)^2 - X^2 - 2*X*Y").unwrap();
        assert_eq!(p, MPoly::parse("Y^2").unwrap());
        let q = MPoly::parse("-3/4*rho + 1/2").unwrap();
        let v = q.eval(&|_| int(2));
        assert_eq!(v, int(-1));
        assert!(MPoly::parse("X*/Y").is_err());
        assert!(MPoly::parse("X^Y").is_err());
        assert!(MPoly::parse("2/(X)").is_err());
    }

    #[test]
    fn exact_division() {
        let a = MPoly::parse("X^2 - Y^2").unwrap();
        let b = MPoly::parse("X - Y").unwrap();
        assert_eq!(a.div_exact(&b).unwrap(), MPoly::parse("X + Y").unwrap());
        assert!(MPoly::parse("X^2 + Y^2").unwrap().div_exact(&b).is_none());
    }

    #[test]
    fn substitution_and_proportionality() {
        let p = MPoly::parse("X*Y + Y").unwrap();
        let s = p.substitute("Y", &MPoly::parse("2*X").unwrap());
        assert_eq!(s, MPoly::parse("2*X^2 + 2*X").unwrap());
        assert_eq!(
            s.proportional(&MPoly::parse("X^2+X").unwrap()),
            Some(int(2))
        );
        assert_eq!(
            s.to_univariate("X").unwrap().coeffs(),
            &[int(0), int(2), int(2)]
        );
        assert_eq!(MPoly::parse("X/2").unwrap().to_string(), "1/2*X");
        assert_eq!(
            MPoly::from_univariate(&crate::exact::poly::qpoly(&[1, 0, 3]), "t"),
            MPoly::parse("3*t^2+1").unwrap()
        );
    }
}
