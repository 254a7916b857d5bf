use num_traits::One;

use super::spnet::{Kind, SpNet};
use crate::ratpoly::{Poly, RationalFn};
use crate::scalar::{Ring, Scalar};

/// Folds a network into an unreduced impedance fraction `(num, den)` over any
/// ring, given each leaf's impedance as a fraction.
pub fn compose_impedance<V, R: Ring>(net: &SpNet<V>, leaf: &mut impl FnMut(Kind, &V) -> (R, R)) -> (R, R) {
    match net {
        SpNet::Element { kind, value } => leaf(*kind, value),
        SpNet::Series(c) => {
            let mut it = c.iter().map(|n| compose_impedance(n, leaf));
            let first = it.next().unwrap_or((R::zero(), R::one()));
            it.fold(first, |(n1, d1), (n2, d2)| (n1 * d2.clone() + n2 * d1.clone(), d1 * d2))
        }
        SpNet::Parallel(c) => {
            let mut it = c.iter().map(|n| compose_impedance(n, leaf));
            let first = it.next().unwrap_or((R::one(), R::zero()));
            it.fold(first, |(n1, d1), (n2, d2)| {
                (n1.clone() * n2.clone(), n1 * d2 + n2 * d1)
            })
        }
    }
}

/// Leaf impedance in the complex-frequency variable: `R`, `Ls`, `1/(Cs)`.
pub fn leaf_impedance<T: Scalar>(kind: Kind, value: &T) -> (Poly<T>, Poly<T>) {
    match kind {
        Kind::R => (Poly::constant(value.clone()), Poly::one()),
        Kind::L => (Poly::monomial(value.clone(), 1), Poly::one()),
        Kind::C => (Poly::one(), Poly::monomial(value.clone(), 1)),
    }
}

/// Impedance before cancelling common factors; the denominator degree equals
/// the number of independent reactive states introduced by composition.
pub fn impedance_unreduced<T: Scalar>(net: &SpNet<T>) -> (Poly<T>, Poly<T>) {
    compose_impedance(net, &mut |k, v| leaf_impedance(k, v))
}

/// Reduced driving-point impedance.
pub fn impedance<T: Scalar>(net: &SpNet<T>) -> RationalFn<T> {
    let (n, d) = impedance_unreduced(net);
    RationalFn::new(n, d).expect("positive element values give a nonzero denominator")
}

/// Impedance of a kind-only template with values supplied in leaf order.
pub fn template_impedance<T: Scalar>(template: &SpNet<()>, values: &[T]) -> (Poly<T>, Poly<T>) {
    let mut i = 0;
    compose_impedance(template, &mut |k, _| {
        let v = &values[i];
        i += 1;
        leaf_impedance(k, v)
    })
}
