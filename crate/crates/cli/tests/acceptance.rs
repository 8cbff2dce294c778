//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use parchern_core::chow_model::{mono, ChowDescription, Variety};
use parchern_core::grothendieck::{
    solve_from_relation, verify_corollary1, verify_prop1, verify_relation, verify_relation_with,
};
use parchern_core::parabolic::{
    scaled_classes_integral, OrdinaryBundleClass, ParabolicBundle, WeightedSummand,
};
use parchern_core::random::{random_scene, rng_from_seed, RandomConfig};
use parchern_core::rational::{from_bigint, pow, rat};
use parchern_core::{Rational, RingElement};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: parchern_core::Error) -> String {
    e.to_string()
}

/// The 200 bundles of the sweep: `E` and `F` of 100 random scenes.
fn sweep_bundles() -> Vec<ParabolicBundle> {
    let cfg = RandomConfig::default();
    let mut rng = rng_from_seed(2024);
    (0..100)
        .flat_map(|_| {
            let (_, scene) = random_scene(&mut rng, &cfg);
            [scene.parabolics["E"].clone(), scene.parabolics["F"].clone()]
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let x = Variety::new(ChowDescription::new("X", 2).divisor("D1")).map_err(err)?;
    let o = OrdinaryBundleClass::trivial(x.ring(), 1).map_err(err)?;
    let e = ParabolicBundle::new(
        &x,
        vec![
            WeightedSummand::new(o.clone(), &[("D1", rat(1, 3))]),
            WeightedSummand::new(o, &[("D1", rat(2, 3))]),
        ],
    )
    .map_err(err)?;
    let d = x.divisor_class(0);
    let d2 = d.pow(2);
    let ring = x.ring();
    ensure(e.big_n() == BigInt::from(3), || {
        format!("N = {}", e.big_n())
    })?;
    let ch = e.chern_character().map_err(err)?;
    let expected_ch = vec![ring.constant(rat(2, 1)), d.clone(), d2.scale(&rat(5, 18))];
    ensure(ch == expected_ch, || format!("ch = {ch:?}"))?;
    let c = e.parabolic_chern().map_err(err)?;
    let expected_c = vec![ring.one(), d.clone(), d2.scale(&rat(2, 9))];
    ensure(c == expected_c, || format!("c = {c:?}"))?;
    let tilde = e.tilde_c().map_err(err)?;
    let expected_tilde = vec![
        ring.constant(rat(1, 9)),
        d.scale(&rat(1, 3)),
        d2.scale(&rat(2, 9)),
    ];
    ensure(tilde == expected_tilde, || format!("C~ = {tilde:?}"))?;
    ensure(verify_relation(&e).map_err(err)?.passed, || {
        "relation failed".into()
    })?;
    ensure(verify_corollary1(&e).map_err(err)?.passed, || {
        "corollary failed".into()
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "N = 3, ch = 2 + D1 + 5/18*D1^2, c = (1, D1, 2/9*D1^2), C~ = (1/9, 1/3*D1, 2/9*D1^2) in {elapsed:.2?}"
    ))
}

fn criterion_2(bundles: &[ParabolicBundle]) -> Outcome {
    let start = Instant::now();
    for (k, e) in bundles.iter().enumerate() {
        let x = e.variety();
        ensure(
            e.rank() <= 4 && x.divisor_count() <= 3 && x.dim() <= 3,
            || format!("bundle {k} outside the sweep bounds"),
        )?;
        for s in e.summands() {
            for w in s.weights() {
                ensure(*w.denom() <= BigInt::from(12), || {
                    format!("bundle {k}: weight {w}")
                })?;
            }
            for c in s.bundle().chern_classes() {
                ensure(c.coefficients_integral(), || {
                    format!("bundle {k}: non-integral input")
                })?;
            }
        }
        let check = verify_relation(e).map_err(err)?;
        ensure(check.passed, || {
            format!("bundle {k}: residual {}", check.residual)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{} bundles satisfy the relation in {elapsed:.2?}",
        bundles.len()
    ))
}

/// A random nonzero degree-`i` class, or `None` when every degree-`i` class
/// vanishes.
fn random_class<R: Rng>(rng: &mut R, e: &ParabolicBundle, i: u32) -> Option<RingElement> {
    let ring = e.variety().ring();
    if i > ring.cutoff() {
        return None;
    }
    let monomials = ring.normal_monomials(i);
    if monomials.is_empty() {
        return None;
    }
    loop {
        let c = ring.from_terms(monomials.iter().map(|m| {
            let n: i64 = rng.random_range(-5..=5);
            let d: i64 = rng.random_range(1..=4);
            (m.clone(), rat(n, d))
        }));
        if !c.is_zero() {
            return Some(c);
        }
    }
}

fn criterion_3() -> Outcome {
    let cfg = RandomConfig::default();
    let mut rng = rng_from_seed(77);
    let mut probes = 0;
    let mut skipped = 0;
    for k in 0..50 {
        let (_, scene) = random_scene(&mut rng, &cfg);
        let e = &scene.parabolics["E"];
        let tilde = e.tilde_c().map_err(err)?;
        for i in 1..=e.rank() {
            let Some(bump) = random_class(&mut rng, e, i) else {
                skipped += 1;
                continue;
            };
            let mut perturbed = tilde.clone();
            perturbed[i as usize] = perturbed[i as usize].add(&bump).map_err(err)?;
            let check = verify_relation_with(e, &perturbed).map_err(err)?;
            ensure(!check.passed, || {
                format!("instance {k}: perturbing C~_{i} by {bump} went unnoticed")
            })?;
            probes += 1;
        }
    }
    Ok(format!(
        "50 instances, {probes} perturbations all detected ({skipped} indices have no nonzero class)"
    ))
}

fn criterion_4(bundles: &[ParabolicBundle]) -> Outcome {
    for (k, e) in bundles.iter().enumerate() {
        let solved = solve_from_relation(e).map_err(err)?;
        let direct = e.parabolic_chern().map_err(err)?;
        ensure(solved == direct, || {
            format!("bundle {k}: solved classes differ")
        })?;
    }
    Ok(format!("{} bundles", bundles.len()))
}

fn criterion_5() -> Outcome {
    let cfg = RandomConfig::default();
    let mut rng = rng_from_seed(5150);
    for k in 0..100 {
        let (_, scene) = random_scene(&mut rng, &cfg);
        let (e, f) = (&scene.parabolics["E"], &scene.parabolics["F"]);
        let check = verify_prop1(e, f).map_err(err)?;
        for c in check.checks() {
            ensure(c.passed, || format!("pair {k}: {} identity failed", c.name))?;
        }
        for b in [e, f] {
            let tilde = b.tilde_c().map_err(err)?;
            let expected = pow(&from_bigint(&b.big_n()), b.rank()).recip();
            ensure(tilde[0] == b.variety().ring().constant(expected), || {
                format!("pair {k}: C~_0 = {}", tilde[0])
            })?;
        }
    }
    Ok("100 pairs: Whitney, dual and tensor identities exact; C~_0 = 1/N^r".into())
}

fn criterion_6(bundles: &[ParabolicBundle]) -> Outcome {
    for (k, e) in bundles.iter().enumerate() {
        let summands: Vec<WeightedSummand> = e
            .summands()
            .iter()
            .map(|s| WeightedSummand::new(s.bundle().clone(), &[]))
            .collect();
        let plain = ParabolicBundle::new(e.variety(), summands).map_err(err)?;
        ensure(plain.big_n().is_one(), || {
            format!("bundle {k}: N = {}", plain.big_n())
        })?;
        let ordinary = e
            .summands()
            .iter()
            .map(|s| s.bundle().clone())
            .reduce(|a, b| a.direct_sum(&b).expect("same ring"))
            .expect("at least one summand");
        let got = plain.parabolic_chern().map_err(err)?;
        ensure(got == ordinary.chern_classes(), || {
            format!("bundle {k}: zero-weight classes differ from ordinary ones")
        })?;
    }
    // A hand-written instance as well.
    let x = Variety::new(
        ChowDescription::new("S", 2)
            .divisor("D")
            .class("H", 1)
            .relation(mono(&[("D", 2)]), vec![]),
    )
    .map_err(err)?;
    let h = x.ring().generator("H").map_err(err)?;
    let v = OrdinaryBundleClass::new(2, x.ring().one().add(&h.scale(&rat(3, 1))).map_err(err)?)
        .map_err(err)?;
    let e = ParabolicBundle::new(
        &x,
        vec![WeightedSummand::new(v.clone(), &[("D", Rational::zero())])],
    )
    .map_err(err)?;
    ensure(e.big_n().is_one(), || "N != 1".into())?;
    ensure(
        e.parabolic_chern().map_err(err)? == v.chern_classes(),
        || "hand instance".into(),
    )?;
    Ok(format!(
        "{} stripped bundles plus one explicit instance",
        bundles.len()
    ))
}

fn criterion_7(bundles: &[ParabolicBundle]) -> Outcome {
    for (k, e) in bundles.iter().enumerate() {
        let c = e.parabolic_chern().map_err(err)?;
        ensure(scaled_classes_integral(&c, &e.big_n()), || {
            format!("bundle {k}: some N^i c_i is not integral")
        })?;
    }
    Ok(format!("{} bundles", bundles.len()))
}

fn criterion_8(bundles: &[ParabolicBundle]) -> Outcome {
    for (k, e) in bundles.iter().enumerate() {
        let cm = e.cover_model().map_err(err)?;
        let upstairs = e
            .to_cover_bundle(&cm)
            .map_err(err)?
            .character()
            .map_err(err)?;
        let pushed = upstairs
            .iter()
            .map(|p| cm.pushdown(p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        ensure(pushed == e.chern_character().map_err(err)?, || {
            format!("bundle {k}: the two characters differ")
        })?;
    }
    Ok(format!("{} bundles", bundles.len()))
}

fn criterion_9() -> Outcome {
    let valid = common::check_valid_corpus()?;
    let invalid = common::check_invalid_corpus()?;
    ensure(valid >= 10 && invalid >= 10, || {
        format!("corpus too small: {valid} valid, {invalid} invalid")
    })?;
    Ok(format!(
        "{valid} valid scenes byte-identical, {invalid} invalid scenes diagnosed"
    ))
}

fn main() {
    let bundles = sweep_bundles();
    let results: Vec<(u32, Outcome)> = vec![
        (1, criterion_1()),
        (2, criterion_2(&bundles)),
        (3, criterion_3()),
        (4, criterion_4(&bundles)),
        (5, criterion_5()),
        (6, criterion_6(&bundles)),
        (7, criterion_7(&bundles)),
        (8, criterion_8(&bundles)),
        (9, criterion_9()),
    ];
    let mut failed = 0;
    for (n, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n}: PASS ({detail})"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
