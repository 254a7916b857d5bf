//! Realizability conditions on the pole/zero ratio, evaluated exactly for
//! rational and real algebraic inputs.

use std::cmp::Ordering;

use num_traits::Zero;
use serde_json::{json, Value};

use super::polys::{self, eval_pz, in_ratio};
use crate::network::Transform;
use crate::ratpoly::{Poly, RealAlgebraic};
use crate::scalar::{format_decimal, format_rational, Rat, Scalar};

/// Equality conditions on irrational loci accept rational inputs whose
/// ratio-form value is within this bound.
pub const NEAR_ZERO: f64 = 1e-20;

pub fn near_zero_tolerance<T: Scalar>() -> T {
    let tol = T::from_rational(&Rat::new(1.into(), num_bigint::BigInt::from(10u8).pow(20)));
    T::max_of(tol, T::zero_tolerance())
}

/// The ratio `p/z`, either rational or a real algebraic number.
#[derive(Clone, Debug)]
pub enum Ratio {
    Rational(Rat),
    Algebraic(RealAlgebraic),
}

impl Ratio {
    /// Exact sign of `f` at the ratio.
    pub fn sign_of(&self, f: &Poly<Rat>) -> Ordering {
        match self {
            Ratio::Rational(r) => f.eval(r).cmp(&Rat::zero()),
            Ratio::Algebraic(a) => a.sign_of(f),
        }
    }

    /// Value of `f` at the ratio, exact for rationals.
    pub fn value_of(&self, f: &Poly<Rat>) -> Rat {
        match self {
            Ratio::Rational(r) => f.eval(r),
            Ratio::Algebraic(a) => {
                if a.sign_of(f) == Ordering::Equal {
                    return Rat::zero();
                }
                let mut a = a.clone();
                let width = Rat::new(1.into(), num_bigint::BigInt::from(10u8).pow(40));
                f.eval(&a.approx(&width))
            }
        }
    }

    pub fn is_exact_rational(&self) -> bool {
        matches!(self, Ratio::Rational(_))
    }

    /// The ratio after a parameter transform: Inv and Dual invert it, GDu keeps it.
    pub fn transformed(&self, t: Transform) -> Ratio {
        match t {
            Transform::GDu => self.clone(),
            Transform::Inv | Transform::Dual => self.recip(),
        }
    }

    pub fn recip(&self) -> Ratio {
        match self {
            Ratio::Rational(r) => Ratio::Rational(r.recip()),
            Ratio::Algebraic(a) => match algebraic_recip(a) {
                Some(x) => Ratio::Algebraic(x),
                None => {
                    let (_, hi) = a.interval();
                    Ratio::Rational(hi.recip())
                }
            },
        }
    }

    pub fn approx_f64(&self) -> f64 {
        match self {
            Ratio::Rational(r) => crate::scalar::rat_to_f64(r),
            Ratio::Algebraic(a) => {
                let mut a = a.clone();
                crate::scalar::rat_to_f64(&a.approx(&Rat::new(1.into(), (1u64 << 60).into())))
            }
        }
    }
}

/// Reciprocal of a positive algebraic number. `None` when the number is the
/// rational upper end of its interval (the caller then takes it exactly).
fn algebraic_recip(a: &RealAlgebraic) -> Option<RealAlgebraic> {
    let mut a = a.clone();
    while a.interval().0 <= &Rat::zero() {
        a.refine();
    }
    let (lo, hi) = (a.interval().0.clone(), a.interval().1.clone());
    if a.poly().eval(&hi).is_zero() {
        return None;
    }
    let n = a.poly().degree().unwrap_or(0);
    let rev = a.poly().reversed(n);
    RealAlgebraic::new(&rev, hi.recip(), lo.recip()).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Test {
    Negative,
    NonPositive,
    Positive,
    /// Exact equality.
    Zero,
    /// Exact for algebraic ratios, within [`NEAR_ZERO`] for rational ones.
    NearZero,
}

impl Test {
    fn accepts(self, sign: Ordering) -> bool {
        match self {
            Test::Negative => sign == Ordering::Less,
            Test::NonPositive => sign != Ordering::Greater,
            Test::Positive => sign == Ordering::Greater,
            Test::Zero | Test::NearZero => sign == Ordering::Equal,
        }
    }
}

/// One sign test on a homogeneous polynomial in `(p, z)`.
#[derive(Clone, Copy, Debug)]
pub struct Atom {
    pub name: &'static str,
    pub expr: &'static str,
    pub test: Test,
}

/// A named condition: a disjunction of conjunctions of atoms.
#[derive(Clone, Debug)]
pub struct NamedCondition {
    pub name: &'static str,
    pub clauses: Vec<Vec<Atom>>,
}

const fn atom(name: &'static str, expr: &'static str, test: Test) -> Atom {
    Atom { name, expr, test }
}

pub fn positive_real() -> NamedCondition {
    NamedCondition {
        name: "positive_real",
        clauses: vec![vec![atom("margin", "p^2 - 6*z*p + z^2", Test::NonPositive)]],
    }
}

pub fn four_element() -> NamedCondition {
    NamedCondition {
        name: "four_element",
        clauses: vec![vec![atom("ratio_third_or_three", "(3*p - z)*(p - 3*z)", Test::Zero)]],
    }
}

pub fn five_element() -> NamedCondition {
    NamedCondition {
        name: "five_element",
        clauses: vec![
            vec![
                atom("above_third", "3*p - z", Test::Positive),
                atom("below_three", "3*z - p", Test::Positive),
            ],
            vec![
                atom("upper_surd", "p^2 - 4*z*p + 2*z^2", Test::Zero),
                atom("upper_branch", "p - 2*z", Test::Positive),
            ],
            vec![
                atom("lower_surd", "2*p^2 - 4*z*p + z^2", Test::Zero),
                atom("lower_branch", "z - 2*p", Test::Positive),
            ],
        ],
    }
}

pub fn fig3a() -> NamedCondition {
    NamedCondition {
        name: "fig3a",
        clauses: vec![vec![
            atom("ordering", "(p - z)*(p - 3*z)", Test::Positive),
            atom("quartic", polys::FIG3A_QUARTIC, Test::Negative),
        ]],
    }
}

pub fn n4a() -> NamedCondition {
    NamedCondition {
        name: "n4a",
        clauses: vec![vec![
            atom("quartic", polys::N4A_QUARTIC, Test::NearZero),
            atom("small_pole", polys::SMALL_POLE_BOUND, Test::Negative),
        ]],
    }
}

pub fn n5a() -> NamedCondition {
    NamedCondition {
        name: "n5a",
        clauses: vec![vec![
            atom("degree_ten", polys::N5A_DEG10, Test::NearZero),
            atom("small_pole", polys::SMALL_POLE_BOUND, Test::Negative),
        ]],
    }
}

/// One evaluated atom or condition, as reported.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionValue {
    pub name: String,
    /// Exact rational string or decimal approximation; `None` for composites.
    pub value: Option<String>,
    pub exact: bool,
    pub pass: bool,
}

impl ConditionValue {
    pub fn to_json(&self) -> Value {
        json!({"name": self.name, "value": self.value, "exact": self.exact, "pass": self.pass})
    }
}

/// Where a condition is evaluated: the ratio, plus the actual `(p, z)` when
/// known (used only for reporting values).
#[derive(Clone, Debug)]
pub struct Point {
    pub ratio: Ratio,
    pub pz: Option<(Rat, Rat)>,
}

impl Point {
    pub fn rational(p: Rat, z: Rat) -> Self {
        Point { ratio: Ratio::Rational(p.clone() / z.clone()), pz: Some((p, z)) }
    }

    pub fn algebraic(ratio: RealAlgebraic) -> Self {
        Point { ratio: Ratio::Algebraic(ratio), pz: None }
    }
}

fn eval_atom(a: &Atom, at: &Point) -> (bool, String, bool) {
    let f = in_ratio(a.expr);
    let sign = at.ratio.sign_of(&f);
    let mut pass = a.test.accepts(sign);
    if a.test == Test::NearZero && !pass && at.ratio.is_exact_rational() {
        let v = at.ratio.value_of(&f);
        pass = v.abs() <= near_zero_tolerance::<Rat>();
    }
    let (value, exact) = match (&at.ratio, &at.pz) {
        (Ratio::Rational(_), Some((p, z))) => (format_rational(&eval_pz(&polys::parse(a.expr), p, z)), true),
        (Ratio::Rational(r), None) => (format_rational(&f.eval(r)), true),
        (Ratio::Algebraic(_), _) => {
            let v = at.ratio.value_of(&f);
            if v.is_zero() {
                ("0".to_string(), true)
            } else {
                (format_decimal(&v, 20), false)
            }
        }
    };
    (pass, value, exact)
}

/// Evaluates a condition, appending every atom and then the composite under
/// `prefix.name`. Returns whether it holds.
pub fn evaluate(cond: &NamedCondition, prefix: &str, at: &Point, out: &mut Vec<ConditionValue>) -> bool {
    let full = if prefix.is_empty() { cond.name.to_string() } else { format!("{prefix}.{}", cond.name) };
    let mut any = false;
    for clause in &cond.clauses {
        let mut all = true;
        for a in clause {
            let (pass, value, exact) = eval_atom(a, at);
            out.push(ConditionValue { name: format!("{full}.{}", a.name), value: Some(value), exact, pass });
            all &= pass;
        }
        any |= all;
    }
    out.push(ConditionValue { name: full, value: None, exact: true, pass: any });
    any
}

fn holds<T: Scalar>(a: &Atom, p: &T, z: &T) -> bool {
    let v = eval_pz(&polys::parse(a.expr), p, z);
    match a.test {
        Test::NearZero => {
            let deg = polys::parse(a.expr).degree_in(polys::P).unwrap_or(0);
            let mut scale = T::one();
            for _ in 0..deg {
                scale = scale * z.clone();
            }
            (v / scale).abs() <= near_zero_tolerance::<T>()
        }
        t => {
            let sign = v.partial_cmp(&T::zero()).unwrap_or(Ordering::Equal);
            t.accepts(sign)
        }
    }
}

/// Whether a named condition holds at `(p, z)`; zero tests use the
/// near-zero tolerance.
pub fn check_at_point<T: Scalar>(cond: &NamedCondition, z: &T, p: &T) -> bool {
    check(cond, z, p)
}

fn check<T: Scalar>(cond: &NamedCondition, z: &T, p: &T) -> bool {
    cond.clauses.iter().any(|c| c.iter().all(|a| holds(a, p, z)))
}

/// `(p - z)(p - 3z) > 0` and the Fig3a quartic is negative.
pub fn check_fig3a_condition<T: Scalar>(z: &T, p: &T) -> bool {
    check(&fig3a(), z, p)
}

/// The N4a quartic vanishes (within [`NEAR_ZERO`] for inexact inputs) and
/// `p < z/(2 + sqrt 5)`.
pub fn check_n4a_condition<T: Scalar>(z: &T, p: &T) -> bool {
    check(&n4a(), z, p)
}

/// As [`check_n4a_condition`] with the degree-10 polynomial.
pub fn check_n5a_condition<T: Scalar>(z: &T, p: &T) -> bool {
    check(&n5a(), z, p)
}

/// Exact check of a named condition at an algebraic ratio.
pub fn check_at(cond: &NamedCondition, ratio: &Ratio) -> bool {
    let at = Point { ratio: ratio.clone(), pz: None };
    let mut sink = Vec::new();
    evaluate(cond, "", &at, &mut sink)
}

/// The unique root of `f` (in the ratio) inside `(lo, hi]`.
pub fn isolated_ratio(expr: &str, lo: Rat, hi: Rat) -> crate::Result<RealAlgebraic> {
    RealAlgebraic::new(&in_ratio(expr), lo, hi)
}

/// `1/(2 + sqrt 5)` lies in this open interval; used as a rational upper
/// bound for root isolation on the small-pole branch.
pub fn small_pole_bound() -> (Rat, Rat) {
    (Rat::new(4236.into(), 1000.into()).recip(), Rat::new(4235.into(), 1000.into()).recip())
}
