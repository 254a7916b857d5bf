use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Ring, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree with no
/// trailing zeros. The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^n`.
    pub fn monomial(c: R, n: usize) -> Self {
        let mut v = vec![R::zero(); n];
        v.push(c);
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> R {
        self.coeffs.last().cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero_poly(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_usize(i).expect("small integer"))
                .collect(),
        )
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `x^n`.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero_poly() {
            return self.clone();
        }
        let mut v = vec![R::zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Coefficients reversed over `n + 1` slots: `x^n p(1/x)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v: Vec<R> = (0..=n).map(|i| self.coeff(i)).collect();
        v.reverse();
        Self::new(v)
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Composition `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * q.clone() + Self::constant(c.clone());
        }
        acc
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidInput("division by the zero polynomial".into()))?;
        let lead = d.lead();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let c = rem[i + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
                }
            }
            rem[i + dd] = F::zero();
            q[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(q), Self::new(rem)))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero_poly() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c.clone() / l.clone()).collect())
    }
}

impl<T: Scalar> Poly<T> {
    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |m, c| T::max_of(m, c.abs()))
    }

    /// Whether every coefficient is negligible relative to `scale`.
    pub fn negligible(&self, scale: &T) -> bool {
        let tol = T::zero_tolerance() * scale.clone();
        self.coeffs.iter().all(|c| c.abs() <= tol)
    }

    /// Monic greatest common divisor. Remainders whose coefficients fall
    /// below the scalar's zero tolerance (relative to the inputs) count as
    /// zero, which makes this exact for rationals.
    pub fn gcd(&self, other: &Self) -> Self {
        let scale = T::max_of(self.norm_inf(), other.norm_inf());
        let (mut a, mut b) = (self.clone(), other.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero_poly() && !b.negligible(&scale) {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free part, made monic.
    pub fn square_free(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("nonzero gcd").0.monic()
    }
}

impl<R: Ring> Zero for Poly<R> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<R: Ring> One for Poly<R> {
    fn one() -> Self {
        Self::constant(R::one())
    }
}

impl<R: Ring> FromPrimitive for Poly<R> {
    fn from_i64(n: i64) -> Option<Self> {
        R::from_i64(n).map(Self::constant)
    }
    fn from_u64(n: u64) -> Option<Self> {
        R::from_u64(n).map(Self::constant)
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl<R: Ring> Mul<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return Poly::zero();
        }
        let mut v = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(v)
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<T: Scalar> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let c = crate::scalar::display_scalar(c);
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})s")?,
                _ => write!(f, "({c})s^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rat};

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn trims_and_reports_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[3]).degree(), Some(0));
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero_poly());
        let (q, r) = p(&[1, 0, 1]).div_rem(&p(&[0, 2])).unwrap();
        assert_eq!(q, Poly::new(vec![int(0), rat(1, 2)]));
        assert_eq!(r, p(&[1]));
        assert!(a.div_rem(&Poly::zero()).is_err());
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[1, 1]));
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
        assert_eq!(Poly::zero().gcd(&p(&[2, 2])), p(&[1, 1]));
    }

    #[test]
    fn square_free_part() {
        let a = p(&[1, 1]) * p(&[1, 1]) * p(&[-2, 1]);
        assert_eq!(a.square_free(), p(&[1, 1]) * p(&[-2, 1]));
    }

    #[test]
    fn eval_compose_reverse() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.eval(&int(2)), int(17));
        assert_eq!(a.compose(&p(&[1, 1])), p(&[6, 8, 3]));
        assert_eq!(a.reversed(3), p(&[0, 3, 2, 1]));
        assert_eq!(a.derivative(), p(&[2, 6]));
    }

    #[test]
    fn approximate_gcd_in_floats() {
        let a = Poly::new(vec![-1.0, 0.0, 1.0]);
        let b = Poly::new(vec![1.0 + 1e-13, 1.0]);
        let g = a.gcd(&b);
        assert_eq!(g.degree(), Some(1));
    }
}
