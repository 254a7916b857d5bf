//! Named polynomials in the pole `p`, zero `z` and the auxiliary pole `p1`.

use std::sync::OnceLock;

use crate::ratpoly::{MPoly, Poly};
use crate::scalar::{Rat, Scalar};

/// Variable order for every polynomial in this module.
pub const VARS: [&str; 3] = ["p", "z", "p1"];
pub const P: usize = 0;
pub const Z: usize = 1;
pub const P1: usize = 2;

pub const FIG3A_QUARTIC: &str = "p^4 - 6*z*p^3 + 6*z^2*p^2 - 14*z^3*p + 5*z^4";
pub const N4A_QUARTIC: &str = "16*p^4 - 40*z*p^3 + 31*z^2*p^2 - 10*z^3*p + z^4";
pub const N5A_DEG10: &str = "p^10 - 16*z*p^9 + 118*z^2*p^8 - 476*z^3*p^7 + 1066*z^4*p^6 - 1372*z^5*p^5 \
     + 1064*z^6*p^4 - 524*z^7*p^3 + 161*z^8*p^2 - 28*z^9*p + 2*z^10";
/// Negative exactly when `p < z/(2 + sqrt 5)`.
pub const SMALL_POLE_BOUND: &str = "p^2 + 4*z*p - z^2";

pub const FIG3A_P1: &str = "(3*z - p)*p1^2 - 2*p*(p - z)*p1 + p^2*(p - 3*z)";
pub const N4A_P1_FIRST: &str = "2*p*p1^2 + z*(4*p - z)*p1 - p^2*(p - 2*z)";
pub const N4A_P1_SECOND: &str = "(2*p^2 - z^2)*p1^2 + 2*p*z*(2*p - z)*p1 - (p^4 - 5*z^2*p^2 + 4*z^3*p - z^4)";
/// Must be positive at the common root.
pub const N4A_P1_SIDE: &str = "p1^2 + 2*p*p1 - (2*p^2 - 4*z*p + z^2)";
pub const N5A_P1_CUBIC: &str = "2*p*p1^3 - (p^2 - 4*z*p + z^2)*p1^2 - p*(3*p^2 - 6*z*p + z^2)*p1 - p^3*(p - 2*z)";
pub const N5A_P1_QUARTIC: &str = "2*z*(4*p - z)*p1^4 - 2*p*(2*p^2 - 8*z*p + z^2)*p1^3 \
     - 2*p^2*(2*p^2 - 5*z*p - z^2)*p1^2 - p^3*(p + z)*(p - 3*z)*p1 + z^2*p^4";

pub fn parse(src: &str) -> MPoly {
    MPoly::parse(src, &VARS).expect("catalog polynomial parses")
}

/// Polynomial in the ratio `eta = p/z` (that is, with `z = 1`).
pub fn in_ratio(src: &str) -> Poly<Rat> {
    parse(src)
        .substitute(&[(Z, Rat::from_int(1))])
        .to_univariate(P)
        .expect("only p remains")
}

/// Value at `(p, z)` for any scalar type.
pub fn eval_pz<T: Scalar>(poly: &MPoly, p: &T, z: &T) -> T {
    let mut acc = T::zero();
    for (e, c) in poly.terms() {
        let mut t = T::from_rational(c);
        for (i, &k) in e.iter().enumerate() {
            let base = match i {
                P => p,
                Z => z,
                _ => panic!("unexpected variable in a (p, z) polynomial"),
            };
            for _ in 0..k {
                t = t * base.clone();
            }
        }
        acc = acc + t;
    }
    acc
}

/// Polynomial in `p1` with coefficients evaluated at `(p, z)`.
pub fn p1_poly_at<T: Scalar>(src: &str, p: &T, z: &T) -> Poly<T> {
    let u = parse(src).as_univariate_in(P1);
    u.map(|c| eval_pz(c, p, z))
}

/// An auxiliary polynomial identity from the non-realizability arguments.
#[derive(Clone, Debug)]
pub struct AuxPolynomial {
    pub name: &'static str,
    pub expr: &'static str,
}

impl AuxPolynomial {
    pub fn poly(&self) -> MPoly {
        parse(self.expr)
    }
}

pub fn auxiliary_condition_polynomials() -> &'static [AuxPolynomial] {
    static AUX: OnceLock<Vec<AuxPolynomial>> = OnceLock::new();
    AUX.get_or_init(|| {
        vec![
            AuxPolynomial {
                name: "two_reactive_b_with_fig8f",
                expr: "8*p^8 + 48*z*p^7 - 312*z^2*p^6 + 624*z^3*p^5 - 617*z^4*p^4 + 336*z^5*p^3 \
                       - 102*z^6*p^2 + 16*z^7*p - z^8",
            },
            AuxPolynomial {
                name: "two_reactive_c_with_fig9a",
                expr: "p^6 - 8*z*p^5 + 20*z^2*p^4 - 28*z^3*p^3 + 21*z^4*p^2 - 12*z^5*p + 2*z^6",
            },
            AuxPolynomial {
                name: "two_reactive_c_with_fig9f",
                expr: "2*p^4 - 12*z*p^3 + 18*z^2*p^2 - 8*z^3*p + z^4",
            },
            AuxPolynomial { name: "fig9h_auxiliary_pole", expr: "(5*z - 3*p)*p1^2 + (p - 3*z)*p^2" },
        ]
    })
}

/// A pair of `p1`-polynomials whose resultant in `p1` is stated in closed form.
#[derive(Clone, Debug)]
pub struct ResultantClaim {
    pub name: &'static str,
    pub first: &'static str,
    pub second: &'static str,
    pub stated: &'static str,
}

pub fn resultant_claims() -> Vec<ResultantClaim> {
    vec![
        ResultantClaim {
            name: "n4a",
            first: N4A_P1_FIRST,
            second: N4A_P1_SECOND,
            stated: "z^2*(p + z)*(p - z)^3*(16*p^4 - 40*z*p^3 + 31*z^2*p^2 - 10*z^3*p + z^4)",
        },
        ResultantClaim {
            name: "n5a",
            first: N5A_P1_CUBIC,
            second: N5A_P1_QUARTIC,
            stated: "-4*z^3*p^10*(4*p - z)*(p^10 - 16*z*p^9 + 118*z^2*p^8 - 476*z^3*p^7 + 1066*z^4*p^6 \
                     - 1372*z^5*p^5 + 1064*z^6*p^4 - 524*z^7*p^3 + 161*z^8*p^2 - 28*z^9*p + 2*z^10)",
        },
        ResultantClaim {
            name: "two_reactive_b_with_fig8f",
            first: "p1^2 + 2*p*p1 - (2*p^2 - 4*z*p + z^2)",
            second: "(p^2 - 4*z*p + z^2)*p1^2 - 4*p^3*p1 + 2*p^3*(p - 2*z)",
            stated: "8*p^8 + 48*z*p^7 - 312*z^2*p^6 + 624*z^3*p^5 - 617*z^4*p^4 + 336*z^5*p^3 \
                     - 102*z^6*p^2 + 16*z^7*p - z^8",
        },
        ResultantClaim {
            name: "two_reactive_c_with_fig9a",
            first: "(p - z)*(p + z)*p1^2 - p*(p^2 - 2*z*p + 3*z^2)*p1 - p^2*(p^2 - 2*z*p + 2*z^2)",
            second: "2*z*p1^2 - (p^2 - 2*z*p - z^2)*p1 + z^2*p",
            stated: "-p^4*(p^6 - 8*z*p^5 + 20*z^2*p^4 - 28*z^3*p^3 + 21*z^4*p^2 - 12*z^5*p + 2*z^6)",
        },
        ResultantClaim {
            name: "two_reactive_c_with_fig9f",
            first: "2*p*p1^3 + z*(4*p - z)*p1^2 - 2*p*(2*p^2 - 4*z*p + z^2)*p1 - 2*p^3*(p - 2*z)",
            second: "z*(4*p - z)*p1^3 - 2*p*(p^2 - 4*z*p + z^2)*p1^2 - 2*p^3*(p - 2*z)*p1 + 2*z^2*p^3",
            stated: "-4*p^6*z^4*(2*p^4 - 12*z*p^3 + 18*z^2*p^2 - 8*z^3*p + z^4)^2",
        },
    ]
}

impl ResultantClaim {
    /// Resultant in `p1` computed from the two polynomials.
    pub fn computed(&self) -> MPoly {
        let a = parse(self.first).as_univariate_in(P1);
        let b = parse(self.second).as_univariate_in(P1);
        crate::ratpoly::resultant(&a, &b).expect("positive degree in p1")
    }

    pub fn stated_poly(&self) -> MPoly {
        parse(self.stated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn ratio_forms() {
        let q = in_ratio(FIG3A_QUARTIC);
        assert_eq!(q.eval(&int(5)), int(-40));
        assert_eq!(q.eval(&int(4)), int(-83));
        let n4 = in_ratio(N4A_QUARTIC);
        assert_eq!(n4.eval(&rat(1, 3)), rat(-14, 81));
        let n5 = in_ratio(N5A_DEG10);
        assert_eq!(n5.degree(), Some(10));
        assert_eq!(n5.eval(&rat(1, 10)), rat(3796995641, 10_000_000_000));
    }

    #[test]
    fn auxiliary_catalog() {
        let aux = auxiliary_condition_polynomials();
        assert_eq!(aux[0].poly().degree_in(P), Some(8));
        assert_eq!(in_ratio(aux[2].expr).eval(&int(1)), int(1));
        assert_eq!(aux.len(), 4);
    }

    #[test]
    fn p1_polynomial_at_values() {
        let q = p1_poly_at(FIG3A_P1, &5.0f64, &1.0f64);
        assert_eq!(q.coeffs(), &[50.0, -40.0, -2.0]);
    }
}
