use num_traits::One;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Reduced rational function with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalFn<T: Scalar> {
    num: Poly<T>,
    den: Poly<T>,
}

impl<T: Scalar> RationalFn<T> {
    pub fn new(num: Poly<T>, den: Poly<T>) -> Result<Self> {
        if den.is_zero_poly() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_zero_poly() {
            return Ok(RationalFn { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        let l = den.lead();
        let inv = T::one() / l;
        Ok(RationalFn { num: num.scale(&inv), den: den.scale(&inv) })
    }

    pub fn from_poly(p: Poly<T>) -> Self {
        RationalFn { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly<T> {
        &self.num
    }

    pub fn den(&self) -> &Poly<T> {
        &self.den
    }

    pub fn eval(&self, x: &T) -> Option<T> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }

    /// `max(deg num, deg den)`.
    pub fn degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// The function of `1/s`.
    pub fn at_reciprocal_variable(&self) -> Self {
        let n = self.degree();
        Self::new(self.num.reversed(n), self.den.reversed(n)).expect("reversed denominator is nonzero")
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero denominators")
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
        .expect("nonzero denominators")
    }

    pub fn is_one(&self) -> bool {
        self.num == Poly::one() && self.den == Poly::one()
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&T) -> S) -> Result<RationalFn<S>> {
        RationalFn::new(self.num.map(&f), self.den.map(&f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use crate::scalar::{int, Rat};

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn reduces_common_factors() {
        let f = RationalFn::new(p(&[-2, 0, 2]), p(&[2, 2])).unwrap();
        assert_eq!(f.num(), &p(&[-1, 1]));
        assert_eq!(f.den(), &p(&[1]));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(RationalFn::new(p(&[1]), Poly::zero()).is_err());
    }

    #[test]
    fn reciprocal_variable() {
        let f = RationalFn::new(p(&[0, 1]), p(&[1, 1])).unwrap();
        let g = f.at_reciprocal_variable();
        assert_eq!(g.num(), &p(&[1]));
        assert_eq!(g.den(), &p(&[1, 1]));
        assert_eq!(f.mul(&f.recip().unwrap()), RationalFn::from_poly(p(&[1])));
    }
}
