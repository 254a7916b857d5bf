use serde::{Deserialize, Serialize};

use super::spnet::{Kind, SpNet};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Network transformations. Each is an involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transform {
    /// Frequency inversion `s -> 1/s`: inductors and capacitors swap with
    /// reciprocal values.
    Inv,
    /// Principle of duality `Z -> 1/Z`.
    Dual,
    /// Frequency inversion composed with duality, `Z(s) -> 1/Z(1/s)`.
    GDu,
}

impl Transform {
    pub const ALL: [Transform; 3] = [Transform::Inv, Transform::Dual, Transform::GDu];

    pub fn name(self) -> &'static str {
        match self {
            Transform::Inv => "inv",
            Transform::Dual => "dual",
            Transform::GDu => "gdu",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "inv" => Ok(Transform::Inv),
            "dual" => Ok(Transform::Dual),
            "gdu" => Ok(Transform::GDu),
            _ => Err(Error::Parse(format!("unknown transform {s:?}, expected inv, dual or gdu"))),
        }
    }
}

pub fn apply_transform<T: Scalar>(net: &SpNet<T>, t: Transform) -> SpNet<T> {
    let recip = |v: &T| T::one() / v.clone();
    let mapped = net.map_leaves(&mut |k, v| match (t, k) {
        (Transform::Inv, Kind::R) => (Kind::R, v.clone()),
        (Transform::Inv, Kind::L) => (Kind::C, recip(v)),
        (Transform::Inv, Kind::C) => (Kind::L, recip(v)),
        (Transform::Dual, Kind::R) => (Kind::R, recip(v)),
        (Transform::Dual, Kind::L) => (Kind::C, v.clone()),
        (Transform::Dual, Kind::C) => (Kind::L, v.clone()),
        (Transform::GDu, k) => (k, recip(v)),
    });
    let mapped = match t {
        Transform::Inv => mapped,
        Transform::Dual | Transform::GDu => mapped.swap_composition(),
    };
    mapped.canonicalize()
}
