//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
//! criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bqsynth::biquad::canonical_positive_real;
use bqsynth::network::catalog::ConfigId;
use bqsynth::network::{apply_transform, enumerate_topologies, impedance};
use bqsynth::ratpoly::{sturm_count, RationalFn, RealAlgebraic};
use bqsynth::realize::conditions::isolated_ratio;
use bqsynth::realize::{
    check_fig3a_condition, classify_ratio, polys, resultant_claims, synth_fig3a, synth_n4a, synth_n5a, Ratio,
};
use bqsynth::scalar::{int, rat, rat_to_f64};
use bqsynth::verify::{falsify_small, verify_numeric, FitOptions};
use bqsynth::{classify, CanonicalBiquad, Hp, Kind, Rat, RealizationClass, Scalar, SpNet, Transform};

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass_if(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pow10(n: u32) -> Rat {
    Rat::from_integer(BigInt::from(10u8).pow(n))
}

fn class_at(eta: Rat) -> RealizationClass {
    classify(&CanonicalBiquad::new(int(1), int(1), eta).unwrap()).class
}

fn four_element_boundary() -> Outcome {
    let eps = pow10(6).recip();
    let mut bad = Vec::new();
    for eta in [rat(1, 3), int(3)] {
        if class_at(eta.clone()) != RealizationClass::FourElement {
            bad.push(format!("{eta} not FourElement"));
        }
        for off in [eta.clone() + eps.clone(), eta.clone() - eps.clone()] {
            if class_at(off.clone()) == RealizationClass::FourElement {
                bad.push(format!("{off} FourElement"));
            }
        }
    }
    pass_if(bad.is_empty(), if bad.is_empty() { "1/3 and 3 hit, 1e-6 neighbours miss".into() } else { bad.join("; ") })
}

fn five_element_set() -> Outcome {
    let mut bad = Vec::new();
    for eta in [rat(1, 2), rat(9, 10), int(2), rat(29, 10)] {
        if class_at(eta.clone()) != RealizationClass::FiveElement {
            bad.push(format!("{eta} not FiveElement"));
        }
    }
    for eta in [rat(16, 5), int(4)] {
        if class_at(eta.clone()) == RealizationClass::FiveElement {
            bad.push(format!("{eta} FiveElement"));
        }
    }
    let upper = isolated_ratio("p^2 - 4*z*p + 2*z^2", int(3), rat(7, 2)).unwrap();
    for (label, ratio) in [("2+sqrt2", Ratio::Algebraic(upper.clone())), ("1/(2+sqrt2)", Ratio::Algebraic(upper).recip())] {
        if classify_ratio(&ratio).0 != RealizationClass::FiveElement {
            bad.push(format!("{label} not FiveElement"));
        }
    }
    // A rational witness next to the surd must not pass the equality branch.
    let witness = rat(3414213562373095, 1_000_000_000_000_000);
    if class_at(witness.clone()) == RealizationClass::FiveElement {
        bad.push(format!("rational witness {witness} FiveElement"));
    }
    pass_if(bad.is_empty(), if bad.is_empty() { "interval, both surd points, and exclusions".into() } else { bad.join("; ") })
}

fn random_ratio(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Rat {
    let den = 1_000_000i64;
    let x = rng.gen_range(lo..hi);
    rat((x * den as f64) as i64, den)
}

fn fig3a_synthesis() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let tol = Hp::from_rational(&pow10(20).recip());
    let mut worst = 0.0f64;
    let mut done = 0;
    let mut branches = [0usize; 2];
    while done < 200 {
        let branch = done % 2;
        let eta = if branch == 0 { random_ratio(&mut rng, 3.0, 5.8284) } else { random_ratio(&mut rng, 0.3, 1.0) };
        let z = random_ratio(&mut rng, 0.1, 10.0);
        let k = random_ratio(&mut rng, 0.1, 10.0);
        let p = eta * z.clone();
        if !check_fig3a_condition(&z, &p) {
            continue;
        }
        let b = CanonicalBiquad::new(k, z, p).unwrap().map(Hp::from_rational);
        let net = match synth_fig3a(&b) {
            Ok(n) => n,
            Err(e) => return pass_if(false, format!("synthesis failed at {b:?}: {e}")),
        };
        let positive = net.leaves().all(|(_, v)| v > &Hp::from_int(0));
        let (ok, r) = verify_numeric(&net, &b.to_rational_fn(), &tol);
        if net.element_count() != 7 || !positive || !ok {
            return pass_if(false, format!("bad network at {b:?}: residual {r}"));
        }
        worst = worst.max(r.to_f64());
        branches[branch] += 1;
        done += 1;
    }
    pass_if(true, format!("200 syntheses ({} with p > z, {} with p < z), worst residual {worst:.2e}", branches[0], branches[1]))
}

/// Distinct roots of the ratio polynomial in `(0, 1/(2 + sqrt 5))`.
fn count_below_small_pole_bound(expr: &str) -> Result<usize, String> {
    let f = polys::in_ratio(expr);
    let (below, above) = (rat(10000, 42361), rat(10000, 42360));
    let bound = polys::in_ratio(polys::SMALL_POLE_BOUND);
    if bound.eval(&below) >= int(0) || bound.eval(&above) <= int(0) {
        return Err("rational brackets do not straddle 1/(2+sqrt5)".into());
    }
    if sturm_count(&f, &below, &above).map_err(|e| e.to_string())? != 0 {
        return Err("a root lies in the bracket around 1/(2+sqrt5)".into());
    }
    sturm_count(&f, &int(0), &below).map_err(|e| e.to_string())
}

fn root_counts() -> Outcome {
    let quartic = count_below_small_pole_bound(polys::N4A_QUARTIC);
    let deg10 = count_below_small_pole_bound(polys::N5A_DEG10);
    pass_if(quartic == Ok(1) && deg10 == Ok(1), format!("quartic {quartic:?}, degree ten {deg10:?}"))
}

fn resultant_identity() -> Outcome {
    let claim = resultant_claims().into_iter().find(|c| c.name == "n4a").unwrap();
    let (got, want) = (claim.computed(), claim.stated_poly());
    let ok = got == want || got == -want;
    pass_if(ok, if ok { "matches up to sign" } else { "mismatch" })
}

fn at_isolated_root(expr: &str) -> Hp {
    let mut r: RealAlgebraic = isolated_ratio(expr, rat(1, 100), rat(10000, 42361)).unwrap();
    Hp::from_rational(&r.approx(&pow10(30).recip()))
}

fn five_reactive_synthesis() -> Outcome {
    let tol = Hp::from_rational(&pow10(20).recip());
    let mut notes = Vec::new();
    let mut ok = true;
    for (name, expr) in [("n4a", polys::N4A_QUARTIC), ("n5a", polys::N5A_DEG10)] {
        let b = CanonicalBiquad::new(Hp::from_int(1), Hp::from_int(1), at_isolated_root(expr)).unwrap();
        let net = if name == "n4a" { synth_n4a(&b) } else { synth_n5a(&b) };
        match net {
            Ok(net) => {
                let positive = net.leaves().all(|(_, v)| v > &Hp::from_int(0));
                let (pass, r) = verify_numeric(&net, &b.to_rational_fn(), &tol);
                ok &= positive && pass && net.element_count() == 7 && net.reactive_count() == 5;
                notes.push(format!("{name} residual {:.2e}", r.to_f64()));
            }
            Err(e) => {
                ok = false;
                notes.push(format!("{name} failed: {e}"));
            }
        }
    }
    pass_if(ok, notes.join(", "))
}

fn random_net(rng: &mut ChaCha8Rng, leaves: usize) -> SpNet<Rat> {
    if leaves == 1 {
        let kind = Kind::ALL[rng.gen_range(0..3)];
        return SpNet::element(kind, rat(rng.gen_range(1..30), rng.gen_range(1..10)));
    }
    let split = rng.gen_range(1..leaves);
    let kids = vec![random_net(rng, split), random_net(rng, leaves - split)];
    if rng.gen_bool(0.5) { SpNet::series(kids) } else { SpNet::parallel(kids) }.unwrap()
}

fn transform_identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let leaves = rng.gen_range(1..=7);
        let n = random_net(&mut rng, leaves);
        let z = impedance(&n);
        let dual = apply_transform(&n, Transform::Dual);
        let inv = apply_transform(&n, Transform::Inv);
        let gdu = apply_transform(&n, Transform::GDu);
        let checks = [
            impedance(&dual).mul(&z).is_one(),
            impedance(&inv) == z.at_reciprocal_variable(),
            impedance(&gdu) == z.at_reciprocal_variable().recip().unwrap(),
            apply_transform(&inv, Transform::GDu) == dual,
        ];
        if let Some(which) = checks.iter().position(|c| !c) {
            return pass_if(false, format!("network {i} ({n}) fails identity {which}"));
        }
    }
    pass_if(true, "1000 networks: Dual, Inv, GDu impedance relations and Dual = GDu after Inv")
}

/// Canonical strings of every series-parallel shape with `n` edges, built
/// from all binary splits and deduplicated after flattening.
fn brute_force_shapes(n: usize, memo: &mut Vec<BTreeSet<String>>) -> BTreeSet<String> {
    fn join(kind: char, a: &str, b: &str) -> String {
        let mut parts = Vec::new();
        for x in [a, b] {
            if x.starts_with(kind) {
                parts.extend(split_children(&x[2..x.len() - 1]));
            } else {
                parts.push(x.to_string());
            }
        }
        parts.sort();
        format!("{kind}({})", parts.join(","))
    }
    fn split_children(s: &str) -> Vec<String> {
        let (mut out, mut depth, mut cur) = (Vec::new(), 0, String::new());
        for ch in s.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    out.push(std::mem::take(&mut cur));
                    continue;
                }
                _ => {}
            }
            cur.push(ch);
        }
        out.push(cur);
        out
    }
    while memo.len() <= n {
        let m = memo.len();
        let mut set = BTreeSet::new();
        if m == 1 {
            set.insert("e".to_string());
        }
        for a in 1..m.max(1) {
            let b = m - a;
            for x in memo[a].clone() {
                for y in memo[b].clone() {
                    set.insert(join('S', &x, &y));
                    set.insert(join('P', &x, &y));
                }
            }
        }
        memo.push(set);
    }
    memo[n].clone()
}

fn enumeration_counts() -> Outcome {
    let mut memo = vec![BTreeSet::new()];
    let mut got = Vec::new();
    let mut oracle = Vec::new();
    for n in 1..=5 {
        got.push(enumerate_topologies(n).map(|v| v.len()).unwrap_or(0));
        oracle.push(brute_force_shapes(n, &mut memo).len());
    }
    let ok = got == [1, 2, 4, 10, 24] && got == oracle;
    pass_if(ok, format!("counts {got:?}, brute-force oracle {oracle:?}"))
}

/// Minimum of Re Z(jw) over log-spaced frequencies around sqrt(zp).
fn min_real_part(k: f64, z: f64, p: f64, samples: usize) -> f64 {
    let centre = (z * p).sqrt();
    let mut min = f64::INFINITY;
    for i in 0..samples {
        let w = centre * 10f64.powf(-4.0 + 8.0 * i as f64 / (samples - 1) as f64);
        // (z + jw)^2 / (p + jw)^2 = (z + jw)^2 (p - jw)^2 / (p^2 + w^2)^2
        let (ur, ui) = (z * p + w * w, w * (p - z));
        let re = k * (ur * ur - ui * ui) / (p * p + w * w).powi(2);
        min = min.min(re);
    }
    min
}

fn positive_real_boundary() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let root2 = Rat::from_float(std::f64::consts::SQRT_2).unwrap();
    let edges = [int(3) + int(2) * root2.clone(), int(3) - int(2) * root2];
    let mut disagreements = Vec::new();
    for i in 0..500 {
        let z = random_ratio(&mut rng, 0.1, 10.0);
        let eta = if i % 2 == 0 {
            random_ratio(&mut rng, 0.05, 8.0)
        } else {
            let edge = edges[(i / 2) % 2].clone();
            let rel = 10f64.powf(rng.gen_range(-6.0..-2.0)) * if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            edge * (int(1) + Rat::from_float(rel).unwrap())
        };
        let p = eta * z.clone();
        if p == z {
            continue;
        }
        let b = CanonicalBiquad::new(int(1), z.clone(), p.clone()).unwrap();
        let exact = canonical_positive_real(&b);
        let numeric = min_real_part(1.0, rat_to_f64(&z), rat_to_f64(&p), 100_000) >= -1e-12;
        if exact != numeric {
            disagreements.push(format!("z={} p={}", rat_to_f64(&z), rat_to_f64(&p)));
        }
    }
    pass_if(disagreements.is_empty(), format!("500 samples, {} disagreements {:?}", disagreements.len(), disagreements))
}

fn catalog_fidelity() -> Outcome {
    let bad: Vec<_> = ConfigId::ALL
        .iter()
        .filter(|c| !c.matches_stated_impedance().unwrap_or(false))
        .map(|c| c.name())
        .collect();
    pass_if(bad.is_empty(), format!("{} configurations checked, mismatches {bad:?}", ConfigId::ALL.len()))
}

fn target(p: i64) -> RationalFn<f64> {
    CanonicalBiquad::new(1.0, 1.0, p as f64).unwrap().to_rational_fn()
}

fn minimality_falsification() -> Outcome {
    let opts = FitOptions::default();
    let two = falsify_small(&target(2), 5, &opts).unwrap();
    let small_floor = (1..=3).filter_map(|n| two.best_residual(n)).fold(f64::INFINITY, f64::min);
    let five = two.best_residual(5).unwrap_or(f64::INFINITY);
    let three = falsify_small(&target(3), 4, &opts).unwrap();
    let four = three.best_residual(4).unwrap_or(f64::INFINITY);
    let ok = small_floor > 1e-6 && five <= 1e-8 && four <= 1e-8;
    pass_if(
        ok,
        format!("p=2: best <=3-element residual {small_floor:.2e}, best 5-element {five:.2e}; p=3: best 4-element {four:.2e}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 11] = [
        ("four-element boundary", four_element_boundary, Duration::from_secs(1)),
        ("five-element set", five_element_set, Duration::from_secs(5)),
        ("Fig3a synthesis", fig3a_synthesis, Duration::from_secs(30)),
        ("root counts", root_counts, Duration::from_secs(1)),
        ("N4a resultant identity", resultant_identity, Duration::from_secs(5)),
        ("N4a/N5a synthesis", five_reactive_synthesis, Duration::from_secs(30)),
        ("transform identities", transform_identities, Duration::from_secs(20)),
        ("enumeration counts", enumeration_counts, Duration::from_secs(5)),
        ("positive-real boundary", positive_real_boundary, Duration::from_secs(60)),
        ("catalog fidelity", catalog_fidelity, Duration::from_secs(5)),
        ("minimality falsification", minimality_falsification, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *limit;
        let pass = out.pass && in_time;
        if !pass {
            failed += 1;
        }
        let timing = if in_time { String::new() } else { format!(" [over the {:?} limit]", limit) };
        println!(
            "AC{:02} {} {name}: {} ({:.2?}){timing}",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
