pub mod error;
pub mod hp;
pub mod scalar;

pub use error::{Error, Result};
pub use hp::Hp;
pub use scalar::{Field, Rat, Ring, Scalar};
pub mod ratpoly;

pub use ratpoly::{MPoly, Poly, RationalFn};

pub type ExactPoly = Poly<Rat>;
pub type ExactRationalFn = RationalFn<Rat>;
pub type HpPoly = Poly<Hp>;
pub mod network;

pub use network::{Kind, SpNet, Template, Transform};

pub type ExactNet = SpNet<Rat>;
pub type HpNet = SpNet<Hp>;
pub type FloatNet = SpNet<f64>;
pub mod biquad;

pub use biquad::{CanonicalBiquad, GeneralBiquad, PoleSquaredForm, Target};

pub type ExactBiquad = CanonicalBiquad<Rat>;
pub mod realize;
pub use realize::{classify, RealizationClass, RealizationReport};
pub mod verify;
pub use verify::{verify_exact, verify_numeric};
