//! Target impedances `k(s+z)^2/(s+p)^2`, the general biquadratic form, the
//! pole-squared form, positive-realness and the induced parameter maps.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::network::Transform;
use crate::ratpoly::{Poly, RationalFn};
use crate::scalar::{display_scalar, parse_rational, Rat, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalBiquad<T> {
    pub k: T,
    pub z: T,
    pub p: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneralBiquad<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub e: T,
    pub f: T,
}

/// `(alpha s^2 + beta s + gamma)/(s + p)^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct PoleSquaredForm<T> {
    pub alpha: T,
    pub beta: T,
    pub gamma: T,
    pub p: T,
}

impl<T: Scalar> CanonicalBiquad<T> {
    pub fn new(k: T, z: T, p: T) -> Result<Self> {
        let zero = T::zero();
        if k <= zero || z <= zero || p <= zero {
            return Err(Error::InvalidInput("k, z and p must be positive".into()));
        }
        if p == z {
            return Err(Error::InvalidInput("p must differ from z".into()));
        }
        Ok(CanonicalBiquad { k, z, p })
    }

    /// `p/z`.
    pub fn ratio(&self) -> T {
        self.p.clone() / self.z.clone()
    }

    pub fn to_general(&self, x: &T) -> Result<GeneralBiquad<T>> {
        canonical_to_general(self, x)
    }

    /// `p^2 - 6zp + z^2`; nonpositive exactly when the impedance is positive real.
    pub fn pr_margin(&self) -> T {
        let (z, p) = (self.z.clone(), self.p.clone());
        p.clone() * p.clone() - T::from_int(6) * z.clone() * p + z.clone() * z
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> CanonicalBiquad<U> {
        CanonicalBiquad { k: f(&self.k), z: f(&self.z), p: f(&self.p) }
    }

    pub fn to_rational_fn(&self) -> RationalFn<T> {
        let two = T::from_int(2);
        let k = self.k.clone();
        let (z, p) = (self.z.clone(), self.p.clone());
        let num = Poly::new(vec![
            k.clone() * z.clone() * z.clone(),
            k.clone() * two.clone() * z,
            k,
        ]);
        let den = Poly::new(vec![p.clone() * p.clone(), two * p, T::one()]);
        RationalFn::new(num, den).expect("monic denominator")
    }
}

impl<T: Scalar> GeneralBiquad<T> {
    pub fn new(a: T, b: T, c: T, d: T, e: T, f: T) -> Result<Self> {
        let zero = T::zero();
        if [&a, &b, &c, &d, &e, &f].iter().any(|x| **x < zero) {
            return Err(Error::InvalidInput("coefficients must be nonnegative".into()));
        }
        if a.is_zero() && b.is_zero() && c.is_zero() {
            return Err(Error::InvalidInput("numerator is identically zero".into()));
        }
        if d.is_zero() && e.is_zero() && f.is_zero() {
            return Err(Error::InvalidInput("denominator is identically zero".into()));
        }
        Ok(GeneralBiquad { a, b, c, d, e, f })
    }

    pub fn to_rational_fn(&self) -> RationalFn<T> {
        RationalFn::new(
            Poly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()]),
            Poly::new(vec![self.f.clone(), self.e.clone(), self.d.clone()]),
        )
        .expect("validated nonzero denominator")
    }
}

impl<T: Scalar> PoleSquaredForm<T> {
    pub fn new(alpha: T, beta: T, gamma: T, p: T) -> Result<Self> {
        let zero = T::zero();
        if p <= zero {
            return Err(Error::InvalidInput("p must be positive".into()));
        }
        if alpha < zero || beta < zero || gamma < zero {
            return Err(Error::InvalidInput("alpha, beta, gamma must be nonnegative".into()));
        }
        if alpha.is_zero() && beta.is_zero() && gamma.is_zero() {
            return Err(Error::InvalidInput("alpha, beta, gamma all zero".into()));
        }
        Ok(PoleSquaredForm { alpha, beta, gamma, p })
    }

    pub fn scaled(&self, c: &T) -> Self {
        PoleSquaredForm {
            alpha: self.alpha.clone() * c.clone(),
            beta: self.beta.clone() * c.clone(),
            gamma: self.gamma.clone() * c.clone(),
            p: self.p.clone(),
        }
    }

    pub fn to_rational_fn(&self) -> RationalFn<T> {
        let p = self.p.clone();
        RationalFn::new(
            Poly::new(vec![self.gamma.clone(), self.beta.clone(), self.alpha.clone()]),
            Poly::new(vec![p.clone() * p.clone(), T::from_int(2) * p, T::one()]),
        )
        .expect("monic denominator")
    }
}

/// Scales the canonical form into six coefficients with common factor `x`.
pub fn canonical_to_general<T: Scalar>(b: &CanonicalBiquad<T>, x: &T) -> Result<GeneralBiquad<T>> {
    if *x <= T::zero() {
        return Err(Error::InvalidInput("scale must be positive".into()));
    }
    let two = T::from_int(2);
    let (k, z, p, x) = (b.k.clone(), b.z.clone(), b.p.clone(), x.clone());
    Ok(GeneralBiquad {
        a: k.clone() * x.clone(),
        b: two.clone() * k.clone() * z.clone() * x.clone(),
        c: k * z.clone() * z * x.clone(),
        d: x.clone(),
        e: two * p.clone() * x.clone(),
        f: p.clone() * p * x,
    })
}

/// `(sqrt(AF) - sqrt(CD))^2 <= BE`, decided by squaring instead of taking roots.
pub fn is_positive_real<T: Scalar>(g: &GeneralBiquad<T>) -> bool {
    let af = g.a.clone() * g.f.clone();
    let cd = g.c.clone() * g.d.clone();
    let lhs = af.clone() + cd.clone() - g.b.clone() * g.e.clone();
    if lhs <= T::zero() {
        return true;
    }
    lhs.clone() * lhs <= T::from_int(4) * af * cd
}

pub fn canonical_positive_real<T: Scalar>(b: &CanonicalBiquad<T>) -> bool {
    b.pr_margin() <= T::zero()
}

pub fn transform_params<T: Scalar>(b: &CanonicalBiquad<T>, t: Transform) -> CanonicalBiquad<T> {
    let one = T::one();
    let (k, z, p) = (b.k.clone(), b.z.clone(), b.p.clone());
    match t {
        Transform::Dual => CanonicalBiquad { k: one / k, z: p, p: z },
        Transform::Inv => CanonicalBiquad {
            k: k * z.clone() * z.clone() / (p.clone() * p.clone()),
            z: one.clone() / z,
            p: one / p,
        },
        Transform::GDu => CanonicalBiquad {
            k: p.clone() * p.clone() / (k * z.clone() * z.clone()),
            z: one.clone() / p,
            p: one / z,
        },
    }
}

/// A target given either canonically or by six coefficients.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Canonical(CanonicalBiquad<Rat>),
    General(GeneralBiquad<Rat>),
}

impl Target {
    pub fn to_rational_fn(&self) -> RationalFn<Rat> {
        match self {
            Target::Canonical(b) => b.to_rational_fn(),
            Target::General(g) => g.to_rational_fn(),
        }
    }

    pub fn is_positive_real(&self) -> bool {
        match self {
            Target::Canonical(b) => canonical_positive_real(b),
            Target::General(g) => is_positive_real(g),
        }
    }

    pub fn to_json(&self) -> Value {
        let s = display_scalar::<Rat>;
        match self {
            Target::Canonical(b) => json!({"k": s(&b.k), "z": s(&b.z), "p": s(&b.p)}),
            Target::General(g) => json!({
                "A": s(&g.a), "B": s(&g.b), "C": s(&g.c), "D": s(&g.d), "E": s(&g.e), "F": s(&g.f)
            }),
        }
    }

    /// Reads `{"k","z","p"}` or `{"A",...,"F"}` with rational or decimal values.
    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |name: &str| -> Result<Option<Rat>> {
            match v.get(name) {
                None => Ok(None),
                Some(Value::String(s)) => parse_rational(s).map(Some),
                Some(Value::Number(n)) => parse_rational(&n.to_string()).map(Some),
                Some(other) => Err(Error::Parse(format!("field {name} must be a number or string, got {other}"))),
            }
        };
        if let (Some(k), Some(z), Some(p)) = (field("k")?, field("z")?, field("p")?) {
            return Ok(Target::Canonical(CanonicalBiquad::new(k, z, p)?));
        }
        let names = ["A", "B", "C", "D", "E", "F"];
        let vals = names
            .iter()
            .map(|n| field(n)?.ok_or_else(|| Error::Parse(format!("target needs k, z, p or A..F; missing {n}"))))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d, e, f]: [Rat; 6] = vals.try_into().expect("six values");
        Ok(Target::General(GeneralBiquad::new(a, b, c, d, e, f)?))
    }
}
