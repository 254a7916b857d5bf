//! Damped least-squares fitting of element values to a target impedance, and
//! an exhaustive small-network falsification run built on it.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::check::verify_numeric;
use crate::error::{Error, Result};
use crate::network::netlist::{element_names, template_to_json};
use crate::network::{enumerate_labeled, is_irreducible, template_impedance, violates_cutset_rule, FilterSet, SpNet, Template};
use crate::ratpoly::{Poly, RationalFn};

/// Largest element count `falsify_small` accepts.
pub const FALSIFY_MAX_ELEMENTS: usize = 5;

#[derive(Clone, Debug)]
pub struct FitOptions {
    /// Iterations per start.
    pub max_iterations: usize,
    pub starts: usize,
    pub seed: u64,
    /// Success threshold on the verified residual.
    pub tol: f64,
    /// Starting log-values are drawn from `[-spread, spread]`.
    pub spread: f64,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions { max_iterations: 200, starts: 32, seed: 0, tol: 1e-8, spread: 3.0 }
    }
}

#[derive(Clone, Debug)]
pub struct FitResult {
    pub success: bool,
    /// Element names (R1, L1, ...) in leaf order with fitted values.
    pub values: Vec<(String, f64)>,
    /// Max relative coefficient error of the instantiated network.
    pub residual: f64,
    pub iterations: usize,
}

impl FitResult {
    pub fn to_json(&self) -> Value {
        json!({
            "success": self.success,
            "values": self.values.iter().map(|(n, v)| json!({"name": n, "value": v})).collect::<Vec<_>>(),
            "residual": self.residual,
            "iterations": self.iterations,
        })
    }
}

/// Instantiates a template with values in leaf order.
pub fn instantiate(template: &Template, values: &[f64]) -> SpNet<f64> {
    let mut i = 0;
    template.map_leaves(&mut |k, _| {
        let v = values[i];
        i += 1;
        (k, v)
    })
}

fn conv(a: &Poly<f64>, b: &Poly<f64>) -> Vec<f64> {
    (a * b).into_coeffs()
}

/// Coefficients of `N Dt - Nt D` with `D` made monic, each scaled by the
/// magnitude of the two products it compares.
fn residuals(template: &Template, theta: &[f64], target: &RationalFn<f64>) -> Vec<f64> {
    let values: Vec<f64> = theta.iter().map(|t| t.exp()).collect();
    let (n, d) = template_impedance(template, &values);
    let lead = d.lead();
    let (n, d) = (n.scale(&(1.0 / lead)), d.scale(&(1.0 / lead)));
    let a = conv(&n, target.den());
    let b = conv(target.num(), &d);
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| {
            let (x, y) = (a.get(i).copied().unwrap_or(0.0), b.get(i).copied().unwrap_or(0.0));
            let s = x.abs() + y.abs();
            if s == 0.0 {
                0.0
            } else {
                (x - y) / s
            }
        })
        .collect()
}

fn sum_sq(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum()
}

/// Levenberg-Marquardt from one start; returns the final log-values and the
/// iterations used.
fn descend(template: &Template, target: &RationalFn<f64>, mut theta: Vec<f64>, opts: &FitOptions) -> (Vec<f64>, usize) {
    let n = theta.len();
    let mut r = residuals(template, &theta, target);
    let mut cost = sum_sq(&r);
    let mut lambda = 1e-3;
    let mut used = 0;
    for it in 0..opts.max_iterations {
        used = it + 1;
        if cost < 1e-30 {
            break;
        }
        let m = r.len();
        let mut jac = DMatrix::<f64>::zeros(m, n);
        for j in 0..n {
            let h = 1e-7;
            let mut t = theta.clone();
            t[j] += h;
            let rj = residuals(template, &t, target);
            for i in 0..m {
                jac[(i, j)] = (rj.get(i).copied().unwrap_or(0.0) - r[i]) / h;
            }
        }
        let rv = DVector::from_column_slice(&r);
        let jtj = jac.transpose() * &jac;
        let g = jac.transpose() * rv;
        let mut improved = false;
        while lambda < 1e12 {
            let mut a = jtj.clone();
            for j in 0..n {
                a[(j, j)] += lambda * (jtj[(j, j)] + 1e-12);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                continue;
            };
            let cand: Vec<f64> = theta.iter().zip(step.iter()).map(|(t, s)| (t + s).clamp(-40.0, 40.0)).collect();
            let rc = residuals(template, &cand, target);
            let c = sum_sq(&rc);
            if c.is_finite() && c < cost {
                theta = cand;
                r = rc;
                cost = c;
                lambda = (lambda / 3.0).max(1e-15);
                improved = true;
                break;
            }
            lambda *= 4.0;
        }
        if !improved {
            break;
        }
    }
    (theta, used)
}

/// Best-effort fit of element values. Failure means "not found within the
/// budget", never "not realizable".
pub fn fit_topology(template: &Template, target: &RationalFn<f64>, opts: &FitOptions) -> FitResult {
    let names = element_names(template);
    let k = names.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut iterations = 0;
    for _ in 0..opts.starts.max(1) {
        let start: Vec<f64> = (0..k).map(|_| rng.gen_range(-opts.spread..=opts.spread)).collect();
        let (theta, used) = descend(template, target, start, opts);
        iterations += used;
        let values: Vec<f64> = theta.iter().map(|t| t.exp()).collect();
        let (_, res) = verify_numeric(&instantiate(template, &values), target, &opts.tol);
        let res = if res.is_finite() { res } else { f64::INFINITY };
        if best.as_ref().is_none_or(|(b, _)| res < *b) {
            best = Some((res, values));
        }
        if res <= opts.tol {
            break;
        }
    }
    let (residual, values) = best.expect("at least one start");
    FitResult {
        success: residual <= opts.tol,
        values: names.into_iter().zip(values).collect(),
        residual,
        iterations,
    }
}

/// One topology in a falsification run.
#[derive(Clone, Debug)]
pub struct FalsifyEntry {
    pub topology: Template,
    pub elements: usize,
    /// Skipped by a structural filter; `reason` says which.
    pub filtered: bool,
    pub reason: Option<&'static str>,
    pub fit: Option<FitResult>,
}

impl FalsifyEntry {
    pub fn best_residual(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.residual)
    }

    pub fn success(&self) -> bool {
        self.fit.as_ref().is_some_and(|f| f.success)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "topology": template_to_json(&self.topology),
            "elements": self.elements,
            "filtered": self.filtered,
            "reason": self.reason,
            "best_residual": self.best_residual(),
            "success": self.success(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct FalsifyReport {
    pub entries: Vec<FalsifyEntry>,
}

impl FalsifyReport {
    /// Smallest fitted residual among topologies with exactly `n` elements.
    pub fn best_residual(&self, n: usize) -> Option<f64> {
        self.entries
            .iter()
            .filter(|e| e.elements == n)
            .filter_map(|e| e.best_residual())
            .min_by(f64::total_cmp)
    }

    pub fn successes(&self) -> impl Iterator<Item = &FalsifyEntry> {
        self.entries.iter().filter(|e| e.success())
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.entries.iter().map(FalsifyEntry::to_json).collect())
    }
}

fn filter_reason(t: &Template, degree: usize) -> Option<&'static str> {
    if violates_cutset_rule(t) {
        Some("cut_set")
    } else if t.reactive_count() < degree {
        Some("too_few_reactive")
    } else if !is_irreducible(t) {
        Some("reducible")
    } else {
        None
    }
}

/// Multistart fits over every labeled topology with up to `n_max` elements.
/// Topologies that break the cut-set rule, have fewer reactive elements than
/// the target's degree, or merge into a smaller network are reported as
/// filtered and not fitted.
pub fn falsify_small(target: &RationalFn<f64>, n_max: usize, opts: &FitOptions) -> Result<FalsifyReport> {
    if n_max == 0 || n_max > FALSIFY_MAX_ELEMENTS {
        return Err(Error::Budget(format!("n_max must be in 1..={FALSIFY_MAX_ELEMENTS}, got {n_max}")));
    }
    let degree = target.degree();
    let mut work = Vec::new();
    for n in 1..=n_max {
        for t in enumerate_labeled(n, &FilterSet::none())? {
            work.push((n, t));
        }
    }
    let entries = work
        .into_par_iter()
        .enumerate()
        .map(|(i, (n, t))| {
            let reason = filter_reason(&t, degree);
            let fit = reason.is_none().then(|| {
                let o = FitOptions { seed: opts.seed.wrapping_add(i as u64), ..opts.clone() };
                fit_topology(&t, target, &o)
            });
            FalsifyEntry { topology: t, elements: n, filtered: reason.is_some(), reason, fit }
        })
        .collect();
    Ok(FalsifyReport { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::Kind;

    fn leaf(k: Kind) -> Template {
        SpNet::element(k, ())
    }

    fn poly(c: &[f64]) -> Poly<f64> {
        Poly::new(c.to_vec())
    }

    #[test]
    fn series_rl_to_s_plus_one() {
        let t = SpNet::series(vec![leaf(Kind::R), leaf(Kind::L)]).unwrap();
        let target = RationalFn::from_poly(poly(&[1.0, 1.0]));
        let r = fit_topology(&t, &target, &FitOptions::default());
        assert!(r.success, "{r:?}");
        for (_, v) in &r.values {
            assert!((v - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn parallel_resistors_underdetermined() {
        let t = SpNet::parallel(vec![leaf(Kind::R), leaf(Kind::R)]).unwrap();
        let target = RationalFn::from_poly(poly(&[0.5]));
        let r = fit_topology(&t, &target, &FitOptions::default());
        assert!(r.success);
        let (a, b) = (r.values[0].1, r.values[1].1);
        assert!((a * b / (a + b) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn series_rl_cannot_match_a_pole() {
        let t = SpNet::series(vec![leaf(Kind::R), leaf(Kind::L)]).unwrap();
        let target = RationalFn::new(poly(&[1.0]), poly(&[1.0, 1.0])).unwrap();
        let r = fit_topology(&t, &target, &FitOptions { starts: 4, ..FitOptions::default() });
        assert!(!r.success);
        assert!(r.residual > 1e-3);
    }

    #[test]
    fn falsify_rejects_large_budgets() {
        let target = RationalFn::from_poly(poly(&[1.0]));
        assert!(matches!(falsify_small(&target, 6, &FitOptions::default()), Err(Error::Budget(_))));
    }
}
