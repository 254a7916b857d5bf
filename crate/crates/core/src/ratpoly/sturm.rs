use std::cmp::Ordering;

use num_traits::Zero;

use super::Poly;
use crate::error::{Error, Result};
use crate::scalar::{Rat, Scalar};

/// Sturm sequence of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain<T: Scalar> {
    chain: Vec<Poly<T>>,
}

impl<T: Scalar> SturmChain<T> {
    pub fn new(a: &Poly<T>) -> Result<Self> {
        if a.degree().is_none() {
            return Err(Error::InvalidInput("Sturm sequence of the zero polynomial".into()));
        }
        let p0 = a.square_free();
        let mut chain = vec![p0.clone(), p0.derivative()];
        while chain.last().is_some_and(|p| p.degree().unwrap_or(0) > 0) {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1])?;
            if r.is_zero_poly() {
                break;
            }
            chain.push(-r);
        }
        chain.retain(|p| !p.is_zero_poly());
        Ok(SturmChain { chain })
    }

    pub fn base(&self) -> &Poly<T> {
        &self.chain[0]
    }

    pub fn variations(&self, x: &T) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for p in &self.chain {
            let v = p.eval(x);
            if v.is_zero() {
                continue;
            }
            let pos = v > T::zero();
            if last.is_some_and(|l| l != pos) {
                count += 1;
            }
            last = Some(pos);
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &T, hi: &T) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Number of distinct real roots of `a` in `(lo, hi]`.
pub fn sturm_count<T: Scalar>(a: &Poly<T>, lo: &T, hi: &T) -> Result<usize> {
    if lo >= hi {
        return Err(Error::InvalidInput("empty interval".into()));
    }
    Ok(SturmChain::new(a)?.count(lo, hi))
}

/// Bisects `(lo, hi]`, which must hold exactly one root, down to `width`.
pub fn isolate_root<T: Scalar>(a: &Poly<T>, lo: &T, hi: &T, width: &T) -> Result<(T, T)> {
    let chain = SturmChain::new(a)?;
    isolate_with(&chain, lo.clone(), hi.clone(), width)
}

fn isolate_with<T: Scalar>(chain: &SturmChain<T>, mut lo: T, mut hi: T, width: &T) -> Result<(T, T)> {
    if lo >= hi {
        return Err(Error::InvalidInput("empty interval".into()));
    }
    if *width <= T::zero() {
        return Err(Error::InvalidInput("width must be positive".into()));
    }
    let n = chain.count(&lo, &hi);
    if n != 1 {
        return Err(Error::Precondition(format!("interval holds {n} roots, expected exactly one")));
    }
    let two = T::from_int(2);
    while hi.clone() - lo.clone() > *width {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if chain.count(&lo, &mid) == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok((lo, hi))
}

/// Isolating intervals of width at most `width` for every root in `(lo, hi]`.
pub fn isolate_all<T: Scalar>(a: &Poly<T>, lo: &T, hi: &T, width: &T) -> Result<Vec<(T, T)>> {
    let chain = SturmChain::new(a)?;
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    let two = T::from_int(2);
    while let Some((l, h)) = stack.pop() {
        match chain.count(&l, &h) {
            0 => {}
            1 => out.push(isolate_with(&chain, l, h, width)?),
            _ => {
                let mid = (l.clone() + h.clone()) / two.clone();
                stack.push((mid.clone(), h));
                stack.push((l, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
    Ok(out)
}

/// A real algebraic number: the unique root of a square-free rational
/// polynomial inside `(lo, hi]`.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    chain: SturmChain<Rat>,
    lo: Rat,
    hi: Rat,
}

impl RealAlgebraic {
    pub fn new(poly: &Poly<Rat>, lo: Rat, hi: Rat) -> Result<Self> {
        let chain = SturmChain::new(poly)?;
        if lo >= hi {
            return Err(Error::InvalidInput("empty interval".into()));
        }
        let n = chain.count(&lo, &hi);
        if n != 1 {
            return Err(Error::Precondition(format!(
                "isolating interval holds {n} roots, expected exactly one"
            )));
        }
        Ok(RealAlgebraic { chain, lo, hi })
    }

    pub fn rational(r: Rat) -> Self {
        let p = Poly::new(vec![-r.clone(), Rat::from_int(1)]);
        RealAlgebraic::new(&p, r.clone() - Rat::from_int(1), r).expect("linear polynomial has one root")
    }

    pub fn poly(&self) -> &Poly<Rat> {
        self.chain.base()
    }

    pub fn interval(&self) -> (&Rat, &Rat) {
        (&self.lo, &self.hi)
    }

    /// Halves the isolating interval.
    pub fn refine(&mut self) {
        let mid = (self.lo.clone() + self.hi.clone()) / Rat::from_int(2);
        if self.chain.count(&self.lo, &mid) == 1 {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    pub fn refine_to(&mut self, width: &Rat) {
        while self.hi.clone() - self.lo.clone() > *width {
            self.refine();
        }
    }

    pub fn approx(&mut self, width: &Rat) -> Rat {
        self.refine_to(width);
        (self.lo.clone() + self.hi.clone()) / Rat::from_int(2)
    }

    /// Exact sign of `f` at this number.
    pub fn sign_of(&self, f: &Poly<Rat>) -> Ordering {
        if f.is_zero_poly() {
            return Ordering::Equal;
        }
        let g = self.poly().gcd(f);
        if g.degree().unwrap_or(0) > 0 && sturm_count(&g, &self.lo, &self.hi).unwrap_or(0) == 1 {
            return Ordering::Equal;
        }
        let fchain = SturmChain::new(f).expect("nonzero polynomial");
        let mut me = self.clone();
        while fchain.count(&me.lo, &me.hi) > 0 {
            me.refine();
        }
        f.eval(&me.hi).partial_cmp(&Rat::zero()).unwrap_or(Ordering::Equal)
    }

    /// Comparison with a rational.
    pub fn cmp_rational(&self, r: &Rat) -> Ordering {
        self.sign_of(&Poly::new(vec![-r.clone(), Rat::from_int(1)]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn counts_distinct_roots() {
        let a = p(&[2, -3, 1]);
        assert_eq!(sturm_count(&a, &int(0), &int(3)).unwrap(), 2);
        assert_eq!(sturm_count(&a, &int(1), &int(2)).unwrap(), 1);
        assert_eq!(sturm_count(&a, &int(0), &int(1)).unwrap(), 1);
        let sq = p(&[1, 2, 1]);
        assert_eq!(sturm_count(&sq, &int(-2), &int(0)).unwrap(), 1);
        assert!(sturm_count(&a, &int(1), &int(1)).is_err());
    }

    #[test]
    fn isolates_half_exactly() {
        let a = p(&[-1, 2]);
        let (lo, hi) = isolate_root(&a, &int(0), &int(1), &rat(1, 1_000_000)).unwrap();
        assert!(lo < rat(1, 2) && rat(1, 2) <= hi);
        assert!(hi - lo <= rat(1, 1_000_000));
    }

    #[test]
    fn isolation_requires_single_root() {
        let a = p(&[2, -3, 1]);
        assert!(isolate_root(&a, &int(0), &int(3), &rat(1, 10)).is_err());
        let all = isolate_all(&a, &int(0), &int(3), &rat(1, 100)).unwrap();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn algebraic_signs() {
        let sqrt2 = RealAlgebraic::new(&p(&[-2, 0, 1]), int(1), int(2)).unwrap();
        assert_eq!(sqrt2.sign_of(&p(&[-2, 0, 1])), Ordering::Equal);
        assert_eq!(sqrt2.sign_of(&p(&[-4, 0, 2])), Ordering::Equal);
        assert_eq!(sqrt2.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&rat(142, 100)), Ordering::Less);
        assert_eq!(sqrt2.sign_of(&p(&[-3, 0, 1])), Ordering::Less);
        assert!(RealAlgebraic::new(&p(&[-2, 0, 1]), int(-2), int(2)).is_err());
    }
}
