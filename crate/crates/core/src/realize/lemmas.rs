//! Realizability lemmas for `(alpha s^2 + beta s + gamma)/(s + p)^2`.

use crate::biquad::PoleSquaredForm;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Outcome of a lemma: whether it holds and the first satisfied condition
/// (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    pub holds: bool,
    pub condition: Option<usize>,
}

impl LemmaOutcome {
    fn from_flags(flags: &[bool]) -> Self {
        let condition = flags.iter().position(|&f| f).map(|i| i + 1);
        LemmaOutcome { holds: condition.is_some(), condition }
    }
}

struct Terms<T> {
    a: T,
    b: T,
    g: T,
    p: T,
}

impl<T: Scalar> Terms<T> {
    fn of(f: &PoleSquaredForm<T>) -> Self {
        Terms { a: f.alpha.clone(), b: f.beta.clone(), g: f.gamma.clone(), p: f.p.clone() }
    }
    fn n(i: i64) -> T {
        T::from_int(i)
    }
    fn all_positive(&self) -> bool {
        let z = T::zero();
        self.a > z && self.b > z && self.g > z
    }
    /// `alpha p^2`
    fn ap2(&self) -> T {
        self.a.clone() * self.p.clone() * self.p.clone()
    }
}

/// Condition 1 is read as `alpha = gamma = 0`: with only one of them zero
/// the form needs more than three elements (for instance `gamma = 2 beta p`
/// is required when `alpha = 0`, which is condition 4).
pub fn lemma_three_element<T: Scalar>(f: &PoleSquaredForm<T>) -> LemmaOutcome {
    let t = Terms::of(f);
    let (a, b, g, p) = (&t.a, &t.b, &t.g, &t.p);
    let two = Terms::<T>::n(2);
    LemmaOutcome::from_flags(&[
        a.is_zero() && g.is_zero(),
        b.is_zero() && (t.ap2() - g.clone()).is_zero(),
        g.is_zero() && (a.clone() * p.clone() - two.clone() * b.clone()).is_zero(),
        a.is_zero() && (two * b.clone() * p.clone() - g.clone()).is_zero(),
        (t.ap2() - b.clone() * p.clone() + g.clone()).is_zero(),
    ])
}

fn four_element_flags<T: Scalar>(t: &Terms<T>) -> [bool; 6] {
    let (a, b, g, p) = (t.a.clone(), t.b.clone(), t.g.clone(), t.p.clone());
    let n = Terms::<T>::n;
    let zero = T::zero();
    let ap2 = t.ap2();
    let bp = b.clone() * p.clone();
    let pos = t.all_positive();
    let c4a = n(3) * ap2.clone() + g.clone() - n(2) * bp.clone();
    let c4b = bp.clone() * bp.clone() + g.clone() * g.clone() - ap2.clone() * g.clone() - n(2) * bp.clone() * g.clone();
    let c5a = ap2.clone() + n(3) * g.clone() - n(2) * bp.clone();
    let c5b = a.clone() * a.clone() * p.clone() * p.clone() + b.clone() * b.clone()
        - n(2) * a.clone() * b.clone() * p.clone()
        - a.clone() * g.clone();
    let c6 = ap2.clone() * ap2.clone() - n(2) * a.clone() * bp.clone() * p.clone() * p.clone()
        + n(6) * ap2.clone() * g.clone()
        - n(2) * bp.clone() * g.clone()
        + g.clone() * g.clone();
    [
        a.is_zero() && g < n(2) * bp.clone(),
        g.is_zero() && a.clone() * p.clone() < n(2) * b.clone(),
        pos && (ap2.clone() - g.clone()).is_zero(),
        pos && ap2 < g && (c4a.is_zero() || c4b.is_zero()),
        pos && t.ap2() > g && (c5a.is_zero() || c5b.is_zero()),
        pos && c6 == zero,
    ]
}

/// The six four-element conditions, without the precondition check.
pub fn four_element_conditions<T: Scalar>(f: &PoleSquaredForm<T>) -> LemmaOutcome {
    LemmaOutcome::from_flags(&four_element_flags(&Terms::of(f)))
}

pub fn lemma_four_element<T: Scalar>(f: &PoleSquaredForm<T>) -> Result<LemmaOutcome> {
    if lemma_three_element(f).holds {
        return Err(Error::Precondition("three-element lemma already holds".into()));
    }
    Ok(four_element_conditions(f))
}

/// The four strict-inequality conditions for two-reactive five-element
/// realizations, without the precondition checks.
pub fn five_element_two_reactive_conditions<T: Scalar>(f: &PoleSquaredForm<T>) -> LemmaOutcome {
    let t = Terms::of(f);
    let n = Terms::<T>::n;
    let zero = T::zero();
    let (a, b, g, p) = (t.a.clone(), t.b.clone(), t.g.clone(), t.p.clone());
    let ap2 = t.ap2();
    let bp = b.clone() * p.clone();
    let c1 = ap2.clone() + n(3) * g.clone() - n(2) * bp.clone();
    let c2 = a.clone() * a.clone() * p.clone() * p.clone() + b.clone() * b.clone()
        - n(2) * a.clone() * bp.clone()
        - a.clone() * g.clone();
    let c3 = n(3) * ap2.clone() + g.clone() - n(2) * bp.clone();
    let c4 = bp.clone() * bp.clone() + g.clone() * g.clone() - ap2.clone() * g.clone() - n(2) * bp * g.clone();
    LemmaOutcome::from_flags(&[
        ap2 > g && c1 < zero,
        t.ap2() > g && c2 < zero,
        t.ap2() < g && c3 < zero,
        t.ap2() < g && c4 < zero,
    ])
}

pub fn lemma_five_element_two_reactive<T: Scalar>(f: &PoleSquaredForm<T>) -> Result<LemmaOutcome> {
    if !Terms::of(f).all_positive() {
        return Err(Error::Precondition("alpha, beta and gamma must be positive".into()));
    }
    if lemma_three_element(f).holds {
        return Err(Error::Precondition("three-element lemma already holds".into()));
    }
    if four_element_conditions(f).holds {
        return Err(Error::Precondition("four-element lemma already holds".into()));
    }
    Ok(five_element_two_reactive_conditions(f))
}
