//! Sparse multivariate polynomials over the rationals, used for symbolic
//! identities (catalog impedances, resultants in the pole/zero parameters).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Signed, Zero};

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rat};

type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Rat>,
}

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn constant(c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, Rat::one());
        MPoly { terms }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var).copied().unwrap_or(0)).max()
    }

    /// Substitutes rational values for variables; unlisted variables stay.
    pub fn substitute(&self, values: &[(usize, Rat)]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = e.clone();
            for (v, x) in values {
                if let Some(k) = rest.get_mut(*v) {
                    coeff *= num_traits::pow(x.clone(), *k as usize);
                    *k = 0;
                }
            }
            out.add_term(trim(rest), coeff);
        }
        out
    }

    /// Value when every variable is assigned, `None` if some variable is missing.
    pub fn eval(&self, values: &[Rat]) -> Option<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t *= num_traits::pow(values.get(i)?.clone(), k as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    /// Rewrites as a polynomial in `var` with multivariate coefficients.
    pub fn as_univariate_in(&self, var: usize) -> Poly<MPoly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut coeffs = vec![MPoly::zero(); deg + 1];
        for (e, c) in &self.terms {
            let k = e.get(var).copied().unwrap_or(0) as usize;
            let mut rest = e.clone();
            if let Some(x) = rest.get_mut(var) {
                *x = 0;
            }
            coeffs[k].add_term(trim(rest), c.clone());
        }
        Poly::new(coeffs)
    }

    /// Inverse of `as_univariate_in`.
    pub fn from_univariate_in(p: &Poly<MPoly>, var: usize) -> MPoly {
        let x = MPoly::var(var);
        let mut acc = MPoly::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            acc = acc + c * &x.pow(i as u32);
        }
        acc
    }

    /// Univariate rational polynomial when only `var` occurs.
    pub fn to_univariate(&self, var: usize) -> Result<Poly<Rat>> {
        let u = self.as_univariate_in(var);
        let coeffs = u
            .coeffs()
            .iter()
            .map(|c| {
                if c.terms.keys().all(|e| e.is_empty()) {
                    Ok(c.terms.get(&Vec::new()).cloned().unwrap_or_else(Rat::zero))
                } else {
                    Err(Error::InvalidInput("polynomial has other free variables".into()))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(coeffs))
    }

    pub fn from_univariate(p: &Poly<Rat>, var: usize) -> MPoly {
        MPoly::from_univariate_in(&p.map(|c| MPoly::constant(c.clone())), var)
    }

    /// Exact quotient by `d` if `d` divides `self`, by trial division with a
    /// lexicographic leading term.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        let (dl_e, dl_c) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut q = MPoly::zero();
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let n = e.len().max(dl_e.len());
            let mut qe = Vec::with_capacity(n);
            for i in 0..n {
                let a = e.get(i).copied().unwrap_or(0);
                let b = dl_e.get(i).copied().unwrap_or(0);
                if a < b {
                    return None;
                }
                qe.push(a - b);
            }
            let mut t = MPoly::zero();
            t.add_term(trim(qe), c / dl_c);
            rem = rem - &t * d;
            q = q + t;
        }
        Some(q)
    }

    fn add_term(&mut self, e: Exponents, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Parses an expression over the named variables using `+ - * ^`,
    /// parentheses, integers, decimals and `n/d` written as division of
    /// literals.
    pub fn parse(src: &str, vars: &[&str]) -> Result<MPoly> {
        let mut p = Parser { toks: tokenize(src)?, pos: 0, vars };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(Error::Parse(format!("trailing input in {src:?}")));
        }
        Ok(e)
    }

    pub fn display_with(&self, vars: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                let name = vars.get(i).map(|s| s.to_string()).unwrap_or(format!("x{i}"));
                match k {
                    0 => {}
                    1 => mono.push(name),
                    _ => mono.push(format!("{name}^{k}")),
                }
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => format_rational(&mag),
                (false, true) => mono.join("*"),
                (false, false) => format!("{}*{}", format_rational(&mag), mono.join("*")),
            };
            parts.push(format!("{sign} {body}"));
        }
        let s = parts.join(" ");
        s.strip_prefix("+ ").map(str::to_string).unwrap_or(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Tok::Num(parse_rational(&s)?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {src:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let t = self.term()?;
            acc = if op == '+' { acc + t } else { acc - t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let f = self.power()?;
            if op == '*' {
                acc = &acc * &f;
            } else {
                let c = match (f.terms.len(), f.terms.get(&Vec::new())) {
                    (1, Some(c)) => c.clone(),
                    _ => return Err(Error::Parse("division only by nonzero constants".into())),
                };
                acc = &acc * &MPoly::constant(Rat::one() / c);
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) if n.is_integer() && !n.is_negative() => {
                    let k: u32 = n.to_integer().try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(n) => Ok(MPoly::constant(n)),
            Tok::Ident(name) => self
                .vars
                .iter()
                .position(|v| *v == name)
                .map(MPoly::var)
                .ok_or_else(|| Error::Parse(format!("unknown variable {name}"))),
            Tok::Op('(') => {
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(Error::Parse("missing closing parenthesis".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::Op('-') => Ok(-self.power()?),
            Tok::Op(c) => Err(Error::Parse(format!("unexpected operator {c}"))),
        }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

impl Zero for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for MPoly {
    fn one() -> Self {
        MPoly::constant(Rat::one())
    }
}

impl FromPrimitive for MPoly {
    fn from_i64(n: i64) -> Option<Self> {
        Rat::from_i64(n).map(MPoly::constant)
    }
    fn from_u64(n: u64) -> Option<Self> {
        Rat::from_u64(n).map(MPoly::constant)
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(mut self, rhs: MPoly) -> MPoly {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        self + (-rhs)
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(mut self) -> MPoly {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul<&MPoly> for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut terms: BTreeMap<Exponents, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let n = ea.len().max(eb.len());
                let e: Exponents = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                *terms.entry(e).or_insert_with(Rat::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    const V: &[&str] = &["p", "z", "q"];

    #[test]
    fn parse_and_expand() {
        let a = MPoly::parse("(p+z)^2", V).unwrap();
        let b = MPoly::parse("p^2 + 2*p*z + z^2", V).unwrap();
        assert_eq!(a, b);
        let c = MPoly::parse("-p*(p - 2*z) + 1/2*q", V).unwrap();
        assert_eq!(c.eval(&[int(1), int(1), int(4)]), Some(int(3)));
        assert!(MPoly::parse("p^", V).is_err());
        assert!(MPoly::parse("w + 1", V).is_err());
        assert!(MPoly::parse("(p + 1", V).is_err());
    }

    #[test]
    fn cancellation_removes_terms() {
        let a = MPoly::parse("p*z - z*p + 3", V).unwrap();
        assert_eq!(a, MPoly::constant(int(3)));
        assert!((MPoly::var(0) - MPoly::var(0)).is_zero());
    }

    #[test]
    fn univariate_views() {
        let a = MPoly::parse("2*p*q^2 + z*q - p^2", V).unwrap();
        let u = a.as_univariate_in(2);
        assert_eq!(u.degree(), Some(2));
        assert_eq!(MPoly::from_univariate_in(&u, 2), a);
        let s = a.substitute(&[(0, int(1)), (1, rat(1, 2))]);
        let q = s.to_univariate(2).unwrap();
        assert_eq!(q.coeffs(), &[int(-1), rat(1, 2), int(2)]);
    }

    #[test]
    fn exact_division() {
        let a = MPoly::parse("(p - z)^3 * (p + 2*z)", V).unwrap();
        let d = MPoly::parse("p - z", V).unwrap();
        assert_eq!(a.exact_div(&d).unwrap(), MPoly::parse("(p - z)^2 * (p + 2*z)", V).unwrap());
        assert!(MPoly::parse("p + 1", V).unwrap().exact_div(&d).is_none());
    }

    #[test]
    fn displays_readably() {
        let a = MPoly::parse("p^2 - 3*z + 1/2", V).unwrap();
        assert_eq!(a.display_with(V), "p^2 - 3*z + 1/2");
    }
}
