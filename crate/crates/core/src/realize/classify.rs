//! Fixed-order classification with a full condition report.

use std::fmt;

use serde_json::{json, Value};

use super::conditions::{self, evaluate, ConditionValue, NamedCondition, Point, Ratio};
use super::synth::{synth_fig3a, synth_n4a, synth_n5a};
use crate::biquad::{transform_params, CanonicalBiquad};
use crate::error::{Error, Result};
use crate::hp::{self, Hp};
use crate::network::catalog::ConfigId;
use crate::network::{apply_transform, netlist, SpNet, Transform};
use crate::scalar::{display_scalar, format_rational, Rat, Scalar};
use crate::verify::verify_numeric;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RealizationClass {
    NotPositiveReal,
    FourElement,
    FiveElement,
    /// A cataloged seven-element assembly, reached directly or through a
    /// transform of the parameters.
    SevenElementCatalog { config: ConfigId, transform: Option<Transform> },
    UnknownWithinScope,
}

impl RealizationClass {
    pub fn name(&self) -> &'static str {
        match self {
            RealizationClass::NotPositiveReal => "NotPositiveReal",
            RealizationClass::FourElement => "FourElement",
            RealizationClass::FiveElement => "FiveElement",
            RealizationClass::SevenElementCatalog { .. } => "SevenElementCatalog",
            RealizationClass::UnknownWithinScope => "UnknownWithinScope",
        }
    }

    /// Whether the impedance is known to be realizable.
    pub fn is_realizable(&self) -> bool {
        !matches!(self, RealizationClass::NotPositiveReal | RealizationClass::UnknownWithinScope)
    }
}

impl fmt::Display for RealizationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealizationClass::SevenElementCatalog { config, transform: None } => {
                write!(f, "SevenElementCatalog({})", config.name())
            }
            RealizationClass::SevenElementCatalog { config, transform: Some(t) } => {
                write!(f, "SevenElementCatalog({} of {})", t.name(), config.name())
            }
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RealizationReport {
    pub input: CanonicalBiquad<Rat>,
    pub class: RealizationClass,
    pub conditions: Vec<ConditionValue>,
    pub network: Option<SpNet<Hp>>,
    /// Max relative coefficient error of `network` against the input.
    pub residual: Option<Hp>,
    /// Set when a seven-element condition held but synthesis failed.
    pub synthesis_error: Option<String>,
}

impl RealizationReport {
    pub fn to_json(&self) -> Value {
        let (config, transform) = match self.class {
            RealizationClass::SevenElementCatalog { config, transform } => {
                (Some(config.name()), transform.map(|t| t.name()))
            }
            _ => (None, None),
        };
        json!({
            "input": {
                "k": format_rational(&self.input.k),
                "z": format_rational(&self.input.z),
                "p": format_rational(&self.input.p),
            },
            "class": self.class.name(),
            "config": config,
            "transform": transform,
            "conditions": self.conditions.iter().map(ConditionValue::to_json).collect::<Vec<_>>(),
            "network": self.network.as_ref().map(netlist::to_json),
            "residual": self.residual.as_ref().map(display_scalar),
            "synthesis_error": self.synthesis_error,
            "precision_bits": hp::precision(),
        })
    }
}

fn seven_element_conditions() -> [(ConfigId, NamedCondition); 3] {
    [
        (ConfigId::Fig3a, conditions::fig3a()),
        (ConfigId::Fig4a, conditions::n4a()),
        (ConfigId::Fig5a, conditions::n5a()),
    ]
}

/// Evaluates every condition in order and returns the first class that holds.
fn decide(at: &Point, transformed: impl Fn(Transform) -> Point) -> (RealizationClass, Vec<ConditionValue>) {
    let mut out = Vec::new();
    let mut class = None;
    let mut pick = |c: RealizationClass, hit: bool| {
        if hit && class.is_none() {
            class = Some(c);
        }
    };
    let pr = evaluate(&conditions::positive_real(), "", at, &mut out);
    pick(RealizationClass::NotPositiveReal, !pr);
    pick(RealizationClass::FourElement, evaluate(&conditions::four_element(), "", at, &mut out));
    pick(RealizationClass::FiveElement, evaluate(&conditions::five_element(), "", at, &mut out));
    for (config, cond) in seven_element_conditions() {
        let hit = evaluate(&cond, "", at, &mut out);
        pick(RealizationClass::SevenElementCatalog { config, transform: None }, hit);
    }
    for t in Transform::ALL {
        let tat = transformed(t);
        for (config, cond) in seven_element_conditions() {
            let hit = evaluate(&cond, t.name(), &tat, &mut out);
            pick(RealizationClass::SevenElementCatalog { config, transform: Some(t) }, hit);
        }
    }
    (class.unwrap_or(RealizationClass::UnknownWithinScope), out)
}

/// Class and condition report for a ratio `p/z` alone; exact for algebraic
/// ratios.
pub fn classify_ratio(ratio: &Ratio) -> (RealizationClass, Vec<ConditionValue>) {
    let at = Point { ratio: ratio.clone(), pz: None };
    decide(&at, |t| Point { ratio: ratio.transformed(t), pz: None })
}

fn synthesize(b: &CanonicalBiquad<Rat>, config: ConfigId, transform: Option<Transform>) -> Result<SpNet<Hp>> {
    let source = match transform {
        Some(t) => transform_params(b, t),
        None => b.clone(),
    };
    let bh = source.map(Hp::from_rational);
    let net = match config {
        ConfigId::Fig3a => synth_fig3a(&bh)?,
        ConfigId::Fig4a => synth_n4a(&bh)?,
        _ => synth_n5a(&bh)?,
    };
    Ok(match transform {
        Some(t) => apply_transform(&net, t),
        None => net,
    })
}

/// Synthesizes `config` for `b`, directly or through the first parameter
/// transform under which its condition holds.
pub fn synth_config(b: &CanonicalBiquad<Rat>, config: ConfigId) -> Result<(SpNet<Hp>, Option<Transform>)> {
    let cond = seven_element_conditions()
        .into_iter()
        .find(|(c, _)| *c == config)
        .map(|(_, cond)| cond)
        .ok_or_else(|| Error::InvalidInput(format!("{} has no closed-form synthesis", config.name())))?;
    let candidates = std::iter::once(None).chain(Transform::ALL.into_iter().map(Some));
    for t in candidates {
        let source = t.map_or_else(|| b.clone(), |t| transform_params(b, t));
        if conditions::check_at_point(&cond, &source.z, &source.p) {
            return Ok((synthesize(b, config, t)?, t));
        }
    }
    Err(Error::Precondition(format!(
        "the {} condition fails for z = {}, p = {} and its transforms",
        config.name(),
        format_rational(&b.z),
        format_rational(&b.p)
    )))
}

/// Classifies `k (s + z)^2 / (s + p)^2`, synthesizing and verifying a network
/// for seven-element catalog hits.
pub fn classify(b: &CanonicalBiquad<Rat>) -> RealizationReport {
    let at = Point::rational(b.p.clone(), b.z.clone());
    let (class, conditions) = decide(&at, |t| {
        let tb = transform_params(b, t);
        Point::rational(tb.p, tb.z)
    });
    let mut report =
        RealizationReport { input: b.clone(), class, conditions, network: None, residual: None, synthesis_error: None };
    if let RealizationClass::SevenElementCatalog { config, transform } = class {
        match synthesize(b, config, transform) {
            Ok(net) => {
                let target = b.map(Hp::from_rational).to_rational_fn();
                let tol = conditions::near_zero_tolerance::<Hp>();
                let (_, r) = verify_numeric(&net, &target, &tol);
                report.network = Some(net);
                report.residual = Some(r);
            }
            Err(e) => report.synthesis_error = Some(e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn class_of(k: i64, z: i64, p: Rat) -> RealizationClass {
        classify(&CanonicalBiquad::new(int(k), int(z), p).unwrap()).class
    }

    #[test]
    fn spec_examples() {
        assert_eq!(class_of(1, 1, int(3)), RealizationClass::FourElement);
        assert_eq!(class_of(1, 1, int(2)), RealizationClass::FiveElement);
        assert_eq!(class_of(1, 1, int(6)), RealizationClass::NotPositiveReal);
        assert_eq!(class_of(1, 3, int(1)), RealizationClass::FourElement);
        assert_eq!(
            class_of(1, 1, int(5)),
            RealizationClass::SevenElementCatalog { config: ConfigId::Fig3a, transform: None }
        );
    }

    #[test]
    fn fig3a_report_carries_verified_network() {
        let r = classify(&CanonicalBiquad::new(int(1), int(1), int(5)).unwrap());
        let net = r.network.as_ref().unwrap();
        assert_eq!(net.element_count(), 7);
        assert!(r.residual.as_ref().unwrap().to_f64() < 1e-25);
        let names: Vec<_> = r.conditions.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"gdu.n5a"));
        let json = r.to_json();
        assert_eq!(json["class"], "SevenElementCatalog");
        assert_eq!(json["config"], "fig3a");
    }

    #[test]
    fn inverted_ratio_uses_transformed_network() {
        let r = classify(&CanonicalBiquad::new(int(2), int(5), int(1)).unwrap());
        assert!(matches!(r.class, RealizationClass::SevenElementCatalog { transform: Some(_), .. }));
        assert!(r.residual.unwrap().to_f64() < 1e-25);
    }

    #[test]
    fn gap_between_regions_is_unknown() {
        assert_eq!(class_of(1, 1, rat(29, 5)), RealizationClass::UnknownWithinScope);
    }
}
