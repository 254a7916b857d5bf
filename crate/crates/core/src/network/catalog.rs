//! Named configurations with symbolic element slots and their stated
//! driving-point impedances.

use serde::{Deserialize, Serialize};

use super::impedance::compose_impedance;
use super::spnet::{Kind, SpNet};
use crate::error::{Error, Result};
use crate::ratpoly::MPoly;
use crate::scalar::{Rat, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConfigId {
    Fig7a,
    Fig7b,
    Fig8a,
    Fig8b,
    Fig8c,
    Fig8d,
    Fig9a,
    Fig9b,
    Fig9c,
    Fig9d,
    Fig9e,
    Fig9f,
    Fig9g,
    Fig9h,
    Fig3a,
    Fig4a,
    Fig5a,
}

type Slots = SpNet<&'static str>;

fn e(kind: Kind, name: &'static str) -> Slots {
    SpNet::element(kind, name)
}

fn s(children: Vec<Slots>) -> Slots {
    SpNet::series(children).expect("catalog composites have two or more children")
}

fn p(children: Vec<Slots>) -> Slots {
    SpNet::parallel(children).expect("catalog composites have two or more children")
}

use Kind::{C, L, R};

impl ConfigId {
    pub const ALL: [ConfigId; 17] = [
        ConfigId::Fig7a,
        ConfigId::Fig7b,
        ConfigId::Fig8a,
        ConfigId::Fig8b,
        ConfigId::Fig8c,
        ConfigId::Fig8d,
        ConfigId::Fig9a,
        ConfigId::Fig9b,
        ConfigId::Fig9c,
        ConfigId::Fig9d,
        ConfigId::Fig9e,
        ConfigId::Fig9f,
        ConfigId::Fig9g,
        ConfigId::Fig9h,
        ConfigId::Fig3a,
        ConfigId::Fig4a,
        ConfigId::Fig5a,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConfigId::Fig7a => "fig7a",
            ConfigId::Fig7b => "fig7b",
            ConfigId::Fig8a => "fig8a",
            ConfigId::Fig8b => "fig8b",
            ConfigId::Fig8c => "fig8c",
            ConfigId::Fig8d => "fig8d",
            ConfigId::Fig9a => "fig9a",
            ConfigId::Fig9b => "fig9b",
            ConfigId::Fig9c => "fig9c",
            ConfigId::Fig9d => "fig9d",
            ConfigId::Fig9e => "fig9e",
            ConfigId::Fig9f => "fig9f",
            ConfigId::Fig9g => "fig9g",
            ConfigId::Fig9h => "fig9h",
            ConfigId::Fig3a => "fig3a",
            ConfigId::Fig4a => "fig4a",
            ConfigId::Fig5a => "fig5a",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        let lower = name.to_ascii_lowercase();
        let alias = match lower.as_str() {
            "n4a" => "fig4a",
            "n5a" => "fig5a",
            other => other,
        };
        Self::ALL
            .into_iter()
            .find(|c| c.name() == alias)
            .ok_or_else(|| Error::Parse(format!("unknown configuration {name:?}")))
    }

    /// The network shape with each element named by its slot.
    pub fn slots(self) -> Slots {
        match self {
            ConfigId::Fig7a => p(vec![e(R, "R1"), s(vec![e(R, "R2"), e(C, "C1")])]),
            ConfigId::Fig7b => p(vec![e(R, "R1"), s(vec![e(R, "R2"), e(L, "L1")])]),
            ConfigId::Fig8a => p(vec![e(R, "R1"), e(L, "L1"), e(C, "C1")]),
            ConfigId::Fig8b => p(vec![e(R, "R1"), s(vec![e(L, "L1"), e(C, "C1")])]),
            ConfigId::Fig8c => p(vec![e(L, "L1"), s(vec![e(R, "R1"), e(C, "C1")])]),
            ConfigId::Fig8d => p(vec![e(C, "C1"), s(vec![e(R, "R1"), e(L, "L1")])]),
            ConfigId::Fig9a => p(vec![e(R, "R21"), e(C, "C21"), s(vec![e(L, "L21"), e(C, "C22")])]),
            ConfigId::Fig9b => p(vec![e(R, "R21"), e(L, "L21"), s(vec![e(L, "L22"), e(C, "C21")])]),
            ConfigId::Fig9c => p(vec![e(L, "L21"), e(C, "C21"), s(vec![e(R, "R21"), e(C, "C22")])]),
            ConfigId::Fig9d => p(vec![e(L, "L21"), e(C, "C21"), s(vec![e(R, "R21"), e(L, "L22")])]),
            ConfigId::Fig9e => p(vec![
                e(C, "C21"),
                s(vec![e(R, "R21"), p(vec![e(L, "L21"), e(C, "C22")])]),
            ]),
            ConfigId::Fig9f => p(vec![
                e(C, "C21"),
                s(vec![e(L, "L21"), p(vec![e(R, "R21"), e(C, "C22")])]),
            ]),
            ConfigId::Fig9g => p(vec![
                e(L, "L21"),
                s(vec![e(R, "R21"), p(vec![e(C, "C21"), e(L, "L22")])]),
            ]),
            ConfigId::Fig9h => p(vec![
                e(L, "L21"),
                s(vec![e(C, "C21"), p(vec![e(R, "R21"), e(L, "L22")])]),
            ]),
            ConfigId::Fig3a => s(vec![ConfigId::Fig7a.slots(), ConfigId::Fig9g.slots()]),
            ConfigId::Fig4a => s(vec![ConfigId::Fig8b.slots(), ConfigId::Fig9e.slots()]),
            ConfigId::Fig5a => s(vec![ConfigId::Fig8c.slots(), ConfigId::Fig9e.slots()]),
        }
    }

    /// Slot names in depth-first order.
    pub fn slot_names(self) -> Vec<&'static str> {
        self.slots().leaves().map(|(_, n)| *n).collect()
    }

    pub fn reactive_count(self) -> usize {
        self.slots().reactive_count()
    }

    /// The two series halves of an assembled configuration.
    pub fn parts(self) -> Option<(ConfigId, ConfigId)> {
        match self {
            ConfigId::Fig3a => Some((ConfigId::Fig7a, ConfigId::Fig9g)),
            ConfigId::Fig4a => Some((ConfigId::Fig8b, ConfigId::Fig9e)),
            ConfigId::Fig5a => Some((ConfigId::Fig8c, ConfigId::Fig9e)),
            _ => None,
        }
    }

    /// Stated impedance `(numerator, denominator)` as expressions in `s` and
    /// the slot names.
    pub fn stated_impedance(self) -> (&'static str, &'static str) {
        match self {
            ConfigId::Fig7a => ("R1*(R2*C1*s + 1)", "(R1 + R2)*C1*s + 1"),
            ConfigId::Fig7b => ("R1*(R2 + L1*s)", "R1 + R2 + L1*s"),
            ConfigId::Fig8a => ("R1*L1*s", "R1*L1*C1*s^2 + L1*s + R1"),
            ConfigId::Fig8b => ("R1*L1*C1*s^2 + R1", "L1*C1*s^2 + R1*C1*s + 1"),
            ConfigId::Fig8c => ("s*(R1*L1*C1*s + L1)", "L1*C1*s^2 + R1*C1*s + 1"),
            ConfigId::Fig8d => ("L1*s + R1", "L1*C1*s^2 + R1*C1*s + 1"),
            ConfigId::Fig9a => (
                "R21*L21*C22*s^2 + R21",
                "R21*L21*C21*C22*s^3 + L21*C22*s^2 + R21*(C21 + C22)*s + 1",
            ),
            ConfigId::Fig9b => (
                "R21*L21*L22*C21*s^3 + R21*L21*s",
                "L21*L22*C21*s^3 + R21*C21*(L21 + L22)*s^2 + L21*s + R21",
            ),
            ConfigId::Fig9c => (
                "R21*L21*C22*s^2 + L21*s",
                "R21*L21*C21*C22*s^3 + L21*(C21 + C22)*s^2 + R21*C22*s + 1",
            ),
            ConfigId::Fig9d => (
                "L21*L22*s^2 + R21*L21*s",
                "L21*L22*C21*s^3 + R21*L21*C21*s^2 + (L21 + L22)*s + R21",
            ),
            ConfigId::Fig9e => (
                "R21*L21*C22*s^2 + L21*s + R21",
                "R21*L21*C21*C22*s^3 + L21*(C21 + C22)*s^2 + R21*C21*s + 1",
            ),
            ConfigId::Fig9f => (
                "R21*L21*C22*s^2 + L21*s + R21",
                "R21*L21*C21*C22*s^3 + L21*C21*s^2 + R21*(C21 + C22)*s + 1",
            ),
            ConfigId::Fig9g => (
                "s*(R21*L21*L22*C21*s^2 + L21*L22*s + R21*L21)",
                "L21*L22*C21*s^3 + R21*L22*C21*s^2 + (L21 + L22)*s + R21",
            ),
            ConfigId::Fig9h => (
                "s*(R21*L21*L22*C21*s^2 + L21*L22*s + R21*L21)",
                "L21*L22*C21*s^3 + R21*(L21 + L22)*C21*s^2 + L22*s + R21",
            ),
            ConfigId::Fig3a | ConfigId::Fig4a | ConfigId::Fig5a => ("", ""),
        }
    }

    /// Variable order for symbolic work: `s` then the slots.
    pub fn variables(self) -> Vec<&'static str> {
        let mut v = vec!["s"];
        v.extend(self.slot_names());
        v
    }

    /// Stated impedance as polynomials; assembled configurations add the
    /// stated impedances of their halves.
    pub fn stated_impedance_poly(self) -> Result<(MPoly, MPoly)> {
        let vars = self.variables();
        if let Some((a, b)) = self.parts() {
            let (na, da) = a.stated_impedance();
            let (nb, db) = b.stated_impedance();
            let (na, da) = (MPoly::parse(na, &vars)?, MPoly::parse(da, &vars)?);
            let (nb, db) = (MPoly::parse(nb, &vars)?, MPoly::parse(db, &vars)?);
            return Ok((&na * &db + &nb * &da, &da * &db));
        }
        let (n, d) = self.stated_impedance();
        Ok((MPoly::parse(n, &vars)?, MPoly::parse(d, &vars)?))
    }

    /// Impedance computed from the network shape with symbolic values.
    pub fn symbolic_impedance(self) -> (MPoly, MPoly) {
        let vars = self.variables();
        let sym = |name: &str| MPoly::var(vars.iter().position(|v| *v == name).expect("slot listed"));
        let svar = MPoly::var(0);
        compose_impedance(&self.slots(), &mut |k, name| match k {
            Kind::R => (sym(name), MPoly::constant(Rat::from_int(1))),
            Kind::L => (&sym(name) * &svar, MPoly::constant(Rat::from_int(1))),
            Kind::C => (MPoly::constant(Rat::from_int(1)), &sym(name) * &svar),
        })
    }

    /// Whether the computed and stated impedances agree as rational functions.
    pub fn matches_stated_impedance(self) -> Result<bool> {
        let (n, d) = self.symbolic_impedance();
        let (ns, ds) = self.stated_impedance_poly()?;
        Ok(&n * &ds == &ns * &d)
    }
}

/// Instantiates a configuration with named slot values.
pub fn build_config<T: Scalar>(id: ConfigId, values: &[(&str, T)]) -> Result<SpNet<T>> {
    let names = id.slot_names();
    for (n, _) in values {
        if !names.contains(n) {
            return Err(Error::InvalidInput(format!("{} has no slot named {n}", id.name())));
        }
    }
    let mut missing = None;
    let net = id.slots().map_leaves(&mut |k, name| {
        let v = values.iter().find(|(n, _)| n == name).map(|(_, v)| v.clone());
        if v.is_none() {
            missing = Some(*name);
        }
        (k, v.unwrap_or_else(T::one))
    });
    if let Some(name) = missing {
        return Err(Error::InvalidInput(format!("missing value for slot {name} of {}", id.name())));
    }
    net.validate()?;
    Ok(net.canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn every_stated_impedance_matches_its_shape() {
        for id in ConfigId::ALL {
            assert!(id.matches_stated_impedance().unwrap(), "{} mismatch", id.name());
        }
    }

    #[test]
    fn reactive_counts() {
        assert_eq!(ConfigId::Fig7a.reactive_count(), 1);
        assert_eq!(ConfigId::Fig8b.reactive_count(), 2);
        assert_eq!(ConfigId::Fig9e.reactive_count(), 3);
        assert_eq!(ConfigId::Fig3a.reactive_count(), 4);
        assert_eq!(ConfigId::Fig4a.reactive_count(), 5);
        assert_eq!(ConfigId::Fig5a.slot_names().len(), 7);
    }

    #[test]
    fn build_checks_slots() {
        let v = [("R1", int(1)), ("L1", int(2)), ("C1", int(3))];
        let n = build_config(ConfigId::Fig8b, &v).unwrap();
        assert_eq!(n.element_count(), 3);
        assert!(build_config(ConfigId::Fig8b, &v[..2]).is_err());
        assert!(build_config(ConfigId::Fig8b, &[("R1", int(1)), ("L1", int(2)), ("C1", int(0))]).is_err());
        assert!(build_config(ConfigId::Fig8b, &[("R9", int(1))]).is_err());
        assert_eq!(ConfigId::parse("N4a").unwrap(), ConfigId::Fig4a);
    }
}
