use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use parchern_core::chow_model::CoverModel;
use parchern_core::grothendieck::{
    solve_from_relation, verify_corollary1, verify_prop1, verify_relation, ProjBundleRing,
};
use parchern_core::parabolic::{scaled_classes_integral, ParabolicBundle};
use parchern_core::random::{random_scene, rng_from_seed, RandomConfig};
use parchern_core::rational::{from_bigint, pow, Rational};
use parchern_core::{Result, RingElement};
use proptest::prelude::*;

fn pair(seed: u64) -> (ParabolicBundle, ParabolicBundle) {
    let (_, scene) = random_scene(&mut rng_from_seed(seed), &RandomConfig::default());
    (scene.parabolics["E"].clone(), scene.parabolics["F"].clone())
}

fn binomial(n: u32, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * Rational::from_integer(BigInt::from(n - i))
            / Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Total Chern class of `E'` by the splitting formula
/// `c(V (x) L) = sum_i c_i(V) (1 + l)^{r-i}` and Whitney, without going
/// through the Chern character.
fn cover_chern_oracle(e: &ParabolicBundle, cm: &CoverModel) -> Result<RingElement> {
    let cover = cm.cover_ring();
    let n = from_bigint(cm.n());
    let mut total = cover.one();
    for s in e.summands() {
        let mut l = cover.zero();
        for (i, w) in s.weights().iter().enumerate() {
            l = l.add(&cm.cover_divisor(i).scale(&(&n * w)))?;
        }
        let r = s.bundle().rank();
        let mut c = cover.zero();
        for (i, ci) in s.bundle().chern_classes().iter().enumerate() {
            let i = i as u32;
            let mut twist = cover.zero();
            for k in 0..=(r - i) {
                twist = twist.add(&l.pow(k).scale(&binomial(r - i, k)))?;
            }
            c = c.add(&cm.pullback(ci)?.mul(&twist)?)?;
        }
        total = total.mul(&c)?;
    }
    Ok(total)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn relation_holds_and_determines_the_classes(seed in any::<u64>()) {
        let (e, _) = pair(seed);
        let check = verify_relation(&e).unwrap();
        prop_assert!(check.passed, "residual {}", check.residual);
        prop_assert_eq!(solve_from_relation(&e).unwrap(), e.parabolic_chern().unwrap());
        let n = from_bigint(&e.big_n());
        let ring = e.variety().ring();
        prop_assert_eq!(
            &check.tilde[0],
            &ring.constant(pow(&n, e.rank()).recip())
        );
    }

    #[test]
    fn corollary_and_two_path_character(seed in any::<u64>()) {
        let (e, _) = pair(seed);
        prop_assert!(verify_corollary1(&e).unwrap().passed);
        let cm = e.cover_model().unwrap();
        let upstairs = e.to_cover_bundle(&cm).unwrap().character().unwrap();
        let pushed: Vec<RingElement> = upstairs.iter().map(|p| cm.pushdown(p).unwrap()).collect();
        prop_assert_eq!(e.chern_character().unwrap(), pushed);
    }

    #[test]
    fn cover_bundle_matches_splitting_oracle(seed in any::<u64>()) {
        let (e, _) = pair(seed);
        let cm = e.cover_model().unwrap();
        let via_character = e.to_cover_bundle(&cm).unwrap();
        prop_assert_eq!(via_character.total_chern(), &cover_chern_oracle(&e, &cm).unwrap());
    }

    #[test]
    fn scaled_classes_are_integral(seed in any::<u64>()) {
        let (e, _) = pair(seed);
        prop_assert!(scaled_classes_integral(&e.parabolic_chern().unwrap(), &e.big_n()));
    }

    #[test]
    fn whitney_dual_and_tensor_identities(seed in any::<u64>()) {
        let (e, f) = pair(seed);
        let check = verify_prop1(&e, &f).unwrap();
        for c in check.checks() {
            prop_assert!(c.passed, "{} failed", c.name);
        }
    }

    #[test]
    fn operations_preserve_weight_data(seed in any::<u64>()) {
        let (e, f) = pair(seed);
        prop_assert_eq!(e.dual().big_n(), e.big_n());
        prop_assert_eq!(e.dual().dual().parabolic_chern().unwrap(), e.parabolic_chern().unwrap());
        let t = e.tensor(&f).unwrap();
        prop_assert_eq!(t.rank(), e.rank() * f.rank());
        prop_assert!(e.big_n().lcm(&f.big_n()).is_multiple_of(&t.big_n()));
        let s = e.direct_sum(&f).unwrap();
        prop_assert_eq!(s.big_n(), e.big_n().lcm(&f.big_n()));
        for i in 0..e.variety().divisor_count() {
            let name = e.variety().divisor_name(i).to_string();
            let steps = e.quasiparabolic_data(&name).unwrap();
            prop_assert_eq!(steps.iter().map(|(_, r)| r).sum::<u32>(), e.rank());
            for w in steps.windows(2) {
                prop_assert!(w[0].0 < w[1].0);
            }
            for (w, _) in &steps {
                prop_assert!(*w >= Rational::from_integer(0.into()) && *w < Rational::one());
            }
        }
    }

    #[test]
    fn projective_bundle_ring_is_commutative_and_associative(seed in any::<u64>()) {
        let (e, f) = pair(seed);
        let cm = e.cover_model().unwrap();
        let proj = ProjBundleRing::new(&e.to_cover_bundle(&cm).unwrap());
        let lift = |x: &RingElement| proj.from_base(&cm.pullback(x).unwrap()).unwrap();
        let c = f.chern_character().unwrap();
        let a = lift(&c[0]).add(&proj.h()).unwrap();
        let b = lift(c.get(1).unwrap_or(&c[0])).add(&proj.h().pow(2)).unwrap();
        let d = proj.h().pow(e.rank() + 1).sub(&proj.one()).unwrap();
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.sub(&b.mul(&a).unwrap()).unwrap().is_zero());
        let left = ab.mul(&d).unwrap();
        let right = a.mul(&b.mul(&d).unwrap()).unwrap();
        prop_assert!(left.sub(&right).unwrap().is_zero());
    }
}

#[test]
fn zero_weights_give_ordinary_classes() {
    for seed in 0..30 {
        let (e, _) = pair(seed);
        let summands: Vec<_> = e
            .summands()
            .iter()
            .map(|s| parchern_core::parabolic::WeightedSummand {
                bundle: s.bundle().clone(),
                weights: Vec::new(),
            })
            .collect();
        let plain = ParabolicBundle::new(e.variety(), summands).unwrap();
        assert_eq!(plain.big_n(), BigInt::one());
        let ordinary = e
            .summands()
            .iter()
            .map(|s| s.bundle().clone())
            .reduce(|a, b| a.direct_sum(&b).unwrap())
            .unwrap();
        let mut expected = ordinary.chern_classes();
        expected.resize(plain.rank() as usize + 1, e.variety().ring().zero());
        assert_eq!(plain.parabolic_chern().unwrap(), expected);
    }
}
