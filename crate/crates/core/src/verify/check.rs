//! Exact and numeric impedance matching.

use crate::error::{Error, Result};
use crate::network::{impedance, impedance_unreduced, SpNet};
use crate::ratpoly::{Poly, RationalFn};
use crate::scalar::Scalar;

/// Whether the network's impedance equals `target` exactly. Rejects
/// inexact scalar types.
pub fn verify_exact<T: Scalar>(net: &SpNet<T>, target: &RationalFn<T>) -> Result<bool> {
    if !T::is_exact() {
        return Err(Error::InvalidInput("verify_exact needs exact element values; use verify_numeric".into()));
    }
    Ok(impedance(net) == *target)
}

fn rel_err<T: Scalar>(got: &T, want: &T) -> T {
    let diff = (got.clone() - want.clone()).abs();
    if want.is_zero() {
        diff
    } else {
        diff / want.abs()
    }
}

/// Remainder size relative to the dividend.
fn division_residual<T: Scalar>(rem: &Poly<T>, dividend: &Poly<T>) -> T {
    let scale = dividend.norm_inf();
    if scale.is_zero() {
        return rem.norm_inf();
    }
    rem.norm_inf() / scale
}

/// Max relative coefficient error between the network's impedance and
/// `target`, both with monic denominators. Zero target coefficients are
/// compared absolutely. Common factors in the network's unreduced form are
/// divided out using the target's denominator.
pub fn impedance_residual<T: Scalar>(net: &SpNet<T>, target: &RationalFn<T>) -> T {
    let (mut num, mut den) = impedance_unreduced(net);
    let mut worst = T::zero();
    let excess = den.degree().unwrap_or(0).saturating_sub(target.den().degree().unwrap_or(0));
    if excess > 0 {
        let deflated = den.div_rem(target.den()).and_then(|(g, r_den)| {
            let (n, r_num) = num.div_rem(&g)?;
            let (d, r_g) = den.div_rem(&g)?;
            Ok((g, n, d, [r_den, r_num, r_g]))
        });
        match deflated {
            Ok((g, n, d, rems)) if !g.is_zero_poly() => {
                worst = T::max_of(worst, division_residual(&rems[0], &den));
                worst = T::max_of(worst, division_residual(&rems[1], &num));
                worst = T::max_of(worst, division_residual(&rems[2], &den));
                num = n;
                den = d;
            }
            _ => return T::one(),
        }
    }
    if den.is_zero_poly() {
        return T::one();
    }
    let inv = T::one() / den.lead();
    let num = num.scale(&inv);
    let den = den.scale(&inv);
    for (got, want) in [(&num, target.num()), (&den, target.den())] {
        let len = got.coeffs().len().max(want.coeffs().len());
        for i in 0..len {
            worst = T::max_of(worst, rel_err(&got.coeff(i), &want.coeff(i)));
        }
    }
    worst
}

/// `(residual <= tol, residual)`.
pub fn verify_numeric<T: Scalar>(net: &SpNet<T>, target: &RationalFn<T>, tol: &T) -> (bool, T) {
    let r = impedance_residual(net, target);
    (r <= *tol, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::catalog::{build_config, ConfigId};
    use crate::network::Kind;
    use crate::scalar::{int, Rat};

    fn rl() -> SpNet<Rat> {
        SpNet::series(vec![SpNet::element(Kind::R, int(1)), SpNet::element(Kind::L, int(1))]).unwrap()
    }

    #[test]
    fn exact_series_rl() {
        let t1 = RationalFn::from_poly(Poly::new(vec![int(1), int(1)]));
        let t2 = RationalFn::from_poly(Poly::new(vec![int(2), int(1)]));
        assert!(verify_exact(&rl(), &t1).unwrap());
        assert!(!verify_exact(&rl(), &t2).unwrap());
        let f = rl().map_scalar(crate::scalar::rat_to_f64);
        assert!(verify_exact(&f, &t1.map(crate::scalar::rat_to_f64).unwrap()).is_err());
    }

    #[test]
    fn fig8b_against_formula() {
        let net = build_config(ConfigId::Fig8b, &[("R1", int(1)), ("L1", int(1)), ("C1", int(1))]).unwrap();
        let t = RationalFn::new(Poly::new(vec![int(1), int(0), int(1)]), Poly::new(vec![int(1), int(1), int(1)]))
            .unwrap();
        assert!(verify_exact(&net, &t).unwrap());
        assert_eq!(verify_numeric(&net, &t, &int(0)), (true, int(0)));
    }

    #[test]
    fn perturbation_is_detected() {
        let net = build_config(ConfigId::Fig8b, &[("R1", 1.01), ("L1", 1.0), ("C1", 1.0)]).unwrap();
        let t = RationalFn::new(Poly::new(vec![1.0, 0.0, 1.0]), Poly::new(vec![1.0, 1.0, 1.0])).unwrap();
        let (ok, r) = verify_numeric(&net, &t, &1e-6);
        assert!(!ok && r > 1e-3);
    }
}
