//! Seeded generator of random scene files, used for property sweeps.
//!
//! Every scene declares one variety, a few divisor components, ordinary
//! bundles `V1, V2, ...` with integral Chern classes and two parabolic
//! bundles `E` and `F` on the same variety, followed by a fixed command mix.

use std::fmt::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{elaborate, parse_program, Scene};
use crate::parabolic::Limits;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomConfig {
    pub max_dim: u32,
    pub max_divisors: u32,
    pub max_rank: u32,
    pub max_denominator: u32,
    /// Chern class coefficients are drawn from `-coeff_bound..=coeff_bound`.
    pub coeff_bound: i64,
    pub max_bundles: u32,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig {
            max_dim: 3,
            max_divisors: 3,
            max_rank: 4,
            max_denominator: 12,
            coeff_bound: 3,
            max_bundles: 3,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All monomials of degree `k` in the degree-1 generators `names`.
fn monomials(names: &[String], k: u32) -> Vec<String> {
    fn go(
        names: &[String],
        k: u32,
        start: usize,
        acc: &mut Vec<(usize, u32)>,
        out: &mut Vec<String>,
    ) {
        if k == 0 {
            let parts: Vec<String> = acc
                .iter()
                .map(|&(i, e)| {
                    if e == 1 {
                        names[i].clone()
                    } else {
                        format!("{}^{e}", names[i])
                    }
                })
                .collect();
            out.push(parts.join("*"));
            return;
        }
        for i in start..names.len() {
            for e in (1..=k).rev() {
                acc.push((i, e));
                go(names, k - e, i + 1, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(names, k, 0, &mut Vec::new(), &mut out);
    out
}

fn random_weight<R: Rng>(rng: &mut R, max_denominator: u32) -> String {
    let b = rng.random_range(1..=max_denominator);
    let a = rng.random_range(0..b);
    format!("{a}/{b}")
}

fn random_parabolic<R: Rng>(
    rng: &mut R,
    cfg: &RandomConfig,
    divisors: &[String],
    bundles: &[(String, u32)],
) -> String {
    let target = rng.random_range(1..=cfg.max_rank);
    let mut rank = 0;
    let mut summands = Vec::new();
    while rank < target {
        let fitting: Vec<&(String, u32)> =
            bundles.iter().filter(|(_, r)| rank + r <= target).collect();
        let (name, r) = if fitting.is_empty() || rng.random_bool(0.4) {
            ("O".to_string(), 1)
        } else {
            let (n, r) = fitting[rng.random_range(0..fitting.len())];
            (n.clone(), *r)
        };
        rank += r;
        let mut weights = Vec::new();
        for d in divisors {
            if rng.random_bool(0.7) {
                weights.push(format!("{d}: {}", random_weight(rng, cfg.max_denominator)));
            }
        }
        summands.push(format!("{name}{{{}}}", weights.join(", ")));
    }
    summands.join(" (+) ")
}

/// Source text of one random scene.
pub fn random_scene_source<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> String {
    let dim = rng.random_range(1..=cfg.max_dim);
    let k = rng.random_range(1..=cfg.max_divisors);
    let divisors: Vec<String> = (1..=k).map(|i| format!("D{i}")).collect();
    let with_h = rng.random_bool(0.5);
    let mut generators = divisors.clone();
    let mut src = String::new();
    writeln!(src, "variety X dim {dim};").unwrap();
    writeln!(src, "divisor {};", divisors.join(", ")).unwrap();
    if with_h {
        writeln!(src, "class H deg 1;").unwrap();
        generators.push("H".into());
    }
    if dim >= 2 {
        for i in 0..divisors.len() {
            for j in (i + 1)..divisors.len() {
                if rng.random_bool(0.3) {
                    writeln!(src, "relation {}*{} = 0;", divisors[i], divisors[j]).unwrap();
                }
            }
        }
    }
    if dim == 1 {
        for g in &generators {
            writeln!(src, "integral {g} = {};", rng.random_range(1..=3)).unwrap();
        }
    }

    let mut bundles = Vec::new();
    for b in 1..=rng.random_range(1..=cfg.max_bundles) {
        let rank = rng.random_range(1..=cfg.max_rank.min(3));
        let mut poly = String::from("1");
        for deg in 1..=rank.min(dim) {
            let monos = monomials(&generators, deg);
            for _ in 0..rng.random_range(0..=2) {
                let c = rng.random_range(-cfg.coeff_bound..=cfg.coeff_bound);
                if c == 0 {
                    continue;
                }
                let m = &monos[rng.random_range(0..monos.len())];
                let sign = if c < 0 { '-' } else { '+' };
                if c.abs() == 1 {
                    write!(poly, " {sign} {m}").unwrap();
                } else {
                    write!(poly, " {sign} {}*{m}", c.abs()).unwrap();
                }
            }
        }
        let name = format!("V{b}");
        writeln!(src, "bundle {name} rank {rank} chern {poly};").unwrap();
        bundles.push((name, rank));
    }
    for p in ["E", "F"] {
        writeln!(
            src,
            "parabolic {p} = {};",
            random_parabolic(rng, cfg, &divisors, &bundles)
        )
        .unwrap();
    }
    src.push_str("compute chern E;\ncompute ch E;\ncompute ctpoly F;\n");
    if dim == 1 {
        src.push_str("compute degree E;\n");
    }
    src.push_str("verify grothendieck;\nverify corollary1;\nverify prop1 E F;\n");
    src
}

/// A random scene, parsed and elaborated.
pub fn random_scene<R: Rng>(rng: &mut R, cfg: &RandomConfig) -> (String, Scene) {
    let src = random_scene_source(rng, cfg);
    let program = parse_program(&src).expect("generated scenes parse");
    let scene = elaborate(&program, &Limits::default()).expect("generated scenes elaborate");
    (src, scene)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomials_of_degree_two() {
        let names = vec!["A".to_string(), "B".to_string()];
        assert_eq!(monomials(&names, 2), ["A^2", "A*B", "B^2"]);
    }

    #[test]
    fn generation_is_deterministic() {
        let cfg = RandomConfig::default();
        let a = random_scene_source(&mut rng_from_seed(7), &cfg);
        let b = random_scene_source(&mut rng_from_seed(7), &cfg);
        assert_eq!(a, b);
    }

    #[test]
    fn scenes_respect_bounds() {
        let cfg = RandomConfig::default();
        let mut rng = rng_from_seed(1);
        for _ in 0..40 {
            let (_, scene) = random_scene(&mut rng, &cfg);
            assert!(scene.variety.dim() <= 3);
            assert!(scene.variety.divisor_count() <= 3);
            for p in scene.parabolics.values() {
                assert!(p.rank() <= 4);
                for s in p.summands() {
                    for w in s.weights() {
                        assert!(*w.denom() <= 12.into());
                    }
                }
            }
        }
    }
}
