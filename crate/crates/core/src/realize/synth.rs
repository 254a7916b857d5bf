//! Closed-form element values for the seven-element assemblies.

use std::cmp::Ordering;

use super::conditions::{check_fig3a_condition, check_n4a_condition, check_n5a_condition};
use super::polys::{self, p1_poly_at};
use crate::biquad::CanonicalBiquad;
use crate::error::{Error, Result};
use crate::network::catalog::{build_config, ConfigId};
use crate::network::SpNet;
use crate::ratpoly::Poly;
use crate::scalar::Scalar;

fn n<T: Scalar>(i: i64) -> T {
    T::from_int(i)
}

fn sign<T: Scalar>(x: &T) -> Ordering {
    x.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal)
}

fn bisection_steps<T: Scalar>() -> usize {
    4 * T::significant_digits() + 64
}

/// Root of `f` in `(lo, hi)` given a sign change, to working precision.
fn bisect<T: Scalar>(f: &Poly<T>, mut lo: T, mut hi: T) -> T {
    let two = n::<T>(2);
    let s_lo = sign(&f.eval(&lo));
    for _ in 0..bisection_steps::<T>() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        if mid == lo || mid == hi {
            break;
        }
        match sign(&f.eval(&mid)) {
            Ordering::Equal => return mid,
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    (lo + hi) / two
}

/// The single positive root of a quadratic whose root product is negative.
pub fn unique_positive_root<T: Scalar>(f: &Poly<T>) -> Result<T> {
    if f.degree() != Some(2) {
        return Err(Error::Inconsistent("expected a quadratic in p1".into()));
    }
    let product = f.coeff(0) / f.coeff(2);
    if sign(&product) != Ordering::Less {
        return Err(Error::Inconsistent(
            "p1 quadratic does not have exactly one positive root".into(),
        ));
    }
    let lead = f.lead().abs();
    let bound = f.coeffs().iter().fold(T::one(), |acc, c| acc + c.abs() / lead.clone());
    Ok(bisect(f, T::zero(), bound))
}

/// Root shared by `a` and `b`, from the last linear remainder of their
/// Euclidean sequence. Fails unless the shared root is simple and isolated.
pub fn common_root<T: Scalar>(a: &Poly<T>, b: &Poly<T>) -> Result<T> {
    let (mut u, mut v) =
        if a.degree() >= b.degree() { (a.monic(), b.monic()) } else { (b.monic(), a.monic()) };
    let loose = T::from_f64_lossy(1e-12);
    loop {
        match v.degree() {
            Some(1) => break,
            None | Some(0) => return Err(Error::Inconsistent("p1 polynomials share no root".into())),
            _ => {}
        }
        let (_, r) = u.div_rem(&v)?;
        if r.norm_inf() <= loose.clone() * u.norm_inf() {
            return Err(Error::Inconsistent("p1 polynomials share more than one root".into()));
        }
        u = v;
        v = r.monic();
    }
    let root = -v.coeff(0) / v.coeff(1);
    for f in [a, b] {
        let scale = f
            .coeffs()
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * root.abs() + c.abs());
        if f.eval(&root).abs() > loose.clone() * scale {
            return Err(Error::Inconsistent("p1 candidate does not annihilate both polynomials".into()));
        }
    }
    Ok(root)
}

fn require_positive<T: Scalar>(id: ConfigId, values: &[(&str, T)]) -> Result<()> {
    for (name, v) in values {
        if sign(v) != Ordering::Greater {
            return Err(Error::Inconsistent(format!("{} element {name} = {v} is not positive", id.name())));
        }
    }
    Ok(())
}

fn assemble<T: Scalar>(id: ConfigId, values: Vec<(&str, T)>) -> Result<SpNet<T>> {
    require_positive(id, &values)?;
    build_config(id, &values)
}

/// Elements of the Fig9e part for `(alpha s^2 + beta s + gamma)/(s + p)^2`.
fn fig9e_part<T: Scalar>(alpha: &T, beta: &T, gamma: &T, p: &T, p1: &T) -> Vec<(&'static str, T)> {
    let d = n::<T>(2) * alpha.clone() * p.clone() + alpha.clone() * p1.clone() - beta.clone();
    let a2 = alpha.clone() * alpha.clone();
    vec![
        ("C21", T::one() / alpha.clone()),
        ("R21", a2.clone() / d.clone()),
        ("L21", a2 * beta.clone() / (gamma.clone() * d.clone())),
        ("C22", d / (alpha.clone() * beta.clone())),
    ]
}

/// The auxiliary pole `p1` of the Fig3a construction.
pub fn fig3a_p1<T: Scalar>(z: &T, p: &T) -> Result<T> {
    unique_positive_root(&p1_poly_at(polys::FIG3A_P1, p, z))
}

pub fn synth_fig3a<T: Scalar>(b: &CanonicalBiquad<T>) -> Result<SpNet<T>> {
    let (k, z, p) = (b.k.clone(), b.z.clone(), b.p.clone());
    if !check_fig3a_condition(&z, &p) {
        return Err(Error::Precondition(format!("Fig3a condition fails at z = {z}, p = {p}")));
    }
    let p1 = fig3a_p1(&z, &p)?;
    let two = n::<T>(2);
    let pmz = p.clone() - z.clone();
    let p2 = p.clone() * p.clone();
    let p3 = p2.clone() * p.clone();
    let tail = p2.clone() + z.clone() * p.clone() - two.clone() * z.clone() * p1.clone();
    let alpha = k.clone() * pmz.clone() * (two.clone() * p.clone() + p1.clone()) * tail.clone()
        / (two.clone() * p3.clone() * p.clone());
    let beta = two.clone()
        * k.clone()
        * pmz.clone()
        * (-(z.clone() * p1.clone() * p1.clone()) + p.clone() * pmz.clone() * p1.clone() + z.clone() * p2.clone())
        / p3;
    let gamma = k.clone() * p1.clone() * pmz * tail / (two.clone() * p2.clone());
    let q = k.clone() * p1.clone() * z.clone() * z.clone() / p2;
    let m = k - alpha.clone();
    let qm = q.clone() - m.clone() * p1.clone();
    let values = vec![
        ("R1", q.clone() / p1.clone()),
        ("R2", m * q.clone() / qm.clone()),
        ("C1", qm / (q.clone() * q)),
        ("R21", alpha.clone()),
        ("L21", alpha.clone() / (two * p + p1)),
        ("L22", alpha * beta.clone() / gamma),
        ("C21", T::one() / beta),
    ];
    assemble(ConfigId::Fig3a, values)
}

/// The auxiliary pole `p1` of the N4a construction.
pub fn n4a_p1<T: Scalar>(z: &T, p: &T) -> Result<T> {
    let a = p1_poly_at(polys::N4A_P1_FIRST, p, z);
    let b = p1_poly_at(polys::N4A_P1_SECOND, p, z);
    let p1 = common_root(&a, &b)?;
    if sign(&p1) != Ordering::Greater {
        return Err(Error::Inconsistent(format!("N4a auxiliary pole {p1} is not positive")));
    }
    let side = p1_poly_at(polys::N4A_P1_SIDE, p, z).eval(&p1);
    if sign(&side) != Ordering::Greater {
        return Err(Error::Inconsistent("N4a side inequality fails at the common root".into()));
    }
    Ok(p1)
}

pub fn synth_n4a<T: Scalar>(b: &CanonicalBiquad<T>) -> Result<SpNet<T>> {
    let (k, z, p) = (b.k.clone(), b.z.clone(), b.p.clone());
    if !check_n4a_condition(&z, &p) {
        return Err(Error::Precondition(format!("N4a condition fails at z = {z}, p = {p}")));
    }
    let p1 = n4a_p1(&z, &p)?;
    let two = n::<T>(2);
    let alpha = -(k.clone() * (p.clone() - p1.clone() - two.clone() * z.clone()));
    let beta = -(k.clone() * (p1.clone() * p.clone() - two * z.clone() * p1.clone() - z.clone() * z.clone()));
    let gamma = -(k.clone() * p1.clone() * (p.clone() - z.clone()) * (p.clone() + z));
    let m = k;
    let mut values = vec![
        ("R1", m.clone()),
        ("L1", m.clone() / (p.clone() + p1.clone())),
        ("C1", (p.clone() + p1.clone()) / (m * p.clone() * p1.clone())),
    ];
    values.extend(fig9e_part(&alpha, &beta, &gamma, &p, &p1));
    assemble(ConfigId::Fig4a, values)
}

/// The auxiliary pole `p1` of the N5a construction.
pub fn n5a_p1<T: Scalar>(z: &T, p: &T) -> Result<T> {
    let a = p1_poly_at(polys::N5A_P1_CUBIC, p, z);
    let b = p1_poly_at(polys::N5A_P1_QUARTIC, p, z);
    let p1 = common_root(&a, &b)?;
    if sign(&p1) != Ordering::Greater {
        return Err(Error::Inconsistent(format!("N5a auxiliary pole {p1} is not positive")));
    }
    Ok(p1)
}

pub fn synth_n5a<T: Scalar>(b: &CanonicalBiquad<T>) -> Result<SpNet<T>> {
    let (k, z, p) = (b.k.clone(), b.z.clone(), b.p.clone());
    if !check_n5a_condition(&z, &p) {
        return Err(Error::Precondition(format!("N5a condition fails at z = {z}, p = {p}")));
    }
    let p1 = n5a_p1(&z, &p)?;
    let two = n::<T>(2);
    let z2 = z.clone() * z;
    let wide = p.clone() + two.clone() * p1.clone();
    let gamma = k.clone() * p1.clone() * z2.clone();
    let alpha = gamma.clone() / (p.clone() * wide.clone());
    let sum = p.clone() + p1.clone();
    let beta = two * gamma.clone() * sum.clone() * sum.clone() / (wide.clone() * wide * p.clone());
    let q = p1.clone() * p.clone() / sum.clone();
    let m = k;
    let mut values = vec![
        ("R1", m.clone()),
        ("L1", m.clone() / sum),
        ("C1", T::one() / (m * q)),
    ];
    values.extend(fig9e_part(&alpha, &beta, &gamma, &p, &p1));
    assemble(ConfigId::Fig5a, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::impedance;
    use crate::scalar::int;
    use crate::Hp;

    #[test]
    fn fig3a_p1_matches_closed_form() {
        let p1 = fig3a_p1(&1.0f64, &5.0f64).unwrap();
        assert!((p1 - (-10.0 + 5.0 * 5f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn fig3a_at_ratio_five() {
        let b = CanonicalBiquad::new(1.0f64, 1.0, 5.0).unwrap();
        let net = synth_fig3a(&b).unwrap();
        assert_eq!(net.element_count(), 7);
        let z = impedance(&net);
        let t = b.to_rational_fn();
        for (x, y) in z.num().coeffs().iter().zip(t.num().coeffs()) {
            assert!((x - y).abs() < 1e-9, "{z:?} vs {t:?}");
        }
        assert_eq!(z.den().coeffs().len(), 3);
    }

    #[test]
    fn fig3a_rejects_outside_region() {
        let b = CanonicalBiquad::new(int(1), int(1), int(2)).unwrap();
        assert!(matches!(synth_fig3a(&b), Err(Error::Precondition(_))));
    }

    #[test]
    fn common_root_of_shared_factor() {
        let a = Poly::new(vec![-2.0, -1.0, 1.0]);
        let b = Poly::new(vec![-6.0, 1.0, 1.0]);
        assert!((common_root(&a, &b).unwrap() - 2.0).abs() < 1e-12);
        let c = Poly::new(vec![3.0, 1.0]);
        assert!(common_root(&a, &c).is_err());
    }

    #[test]
    fn n4a_builds_positive_network() {
        let z = Hp::from_int(1);
        let mut root = super::super::conditions::isolated_ratio(
            polys::N4A_QUARTIC,
            crate::scalar::rat(3, 20),
            crate::scalar::rat(1, 5),
        )
        .unwrap();
        let width = crate::Rat::new(1.into(), num_bigint::BigInt::from(10u8).pow(30));
        let p = Hp::from_rational(&root.approx(&width));
        let b = CanonicalBiquad::new(Hp::from_int(1), z, p).unwrap();
        let net = synth_n4a(&b).unwrap();
        assert_eq!(net.reactive_count(), 5);
    }
}
