//! Variety models and the formal Galois cover.
//!
//! A [`ChowDescription`] names the generators of a rational Chow ring (the
//! boundary divisor components among them), its relations, and an optional
//! degree table. [`Variety`] is the validated, built form.
//!
//! The cover `Y -> X` is never constructed geometrically. [`CoverModel`] only
//! records the ring map `D_i -> N * D~_i` (other generators fixed) onto the
//! invariant part of the Chow ring of `Y`, which is an isomorphism; its inverse
//! is [`CoverModel::pushdown`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::graded_ring::{
    Generator, GradedRing, Monomial, RewriteRule, RingElement, DEFAULT_RULE_ITERATION_CAP,
};
use crate::rational::{from_bigint, pow, Rational};

/// Product of named generator powers, e.g. `[("D1", 2), ("H", 1)]`.
pub type NamedMonomial = Vec<(String, u32)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTerm {
    pub coeff: Rational,
    pub monomial: NamedMonomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: NamedMonomial,
    pub rhs: Vec<NamedTerm>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// A boundary divisor component, always of degree 1.
    Divisor,
    Class,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowDescription {
    pub name: String,
    pub dim: u32,
    /// Generators in declaration order.
    pub generators: Vec<GeneratorDecl>,
    pub relations: Vec<Relation>,
    pub integrals: Vec<(NamedMonomial, Rational)>,
    pub rule_iteration_cap: usize,
}

pub fn mono(factors: &[(&str, u32)]) -> NamedMonomial {
    factors.iter().map(|(n, e)| (n.to_string(), *e)).collect()
}

impl ChowDescription {
    pub fn new(name: impl Into<String>, dim: u32) -> Self {
        ChowDescription {
            name: name.into(),
            dim,
            generators: Vec::new(),
            relations: Vec::new(),
            integrals: Vec::new(),
            rule_iteration_cap: DEFAULT_RULE_ITERATION_CAP,
        }
    }

    pub fn divisor(mut self, name: &str) -> Self {
        self.generators.push(GeneratorDecl {
            name: name.to_string(),
            degree: 1,
            kind: GeneratorKind::Divisor,
        });
        self
    }

    pub fn class(mut self, name: &str, degree: u32) -> Self {
        self.generators.push(GeneratorDecl {
            name: name.to_string(),
            degree,
            kind: GeneratorKind::Class,
        });
        self
    }

    pub fn relation(mut self, lhs: NamedMonomial, rhs: Vec<(Rational, NamedMonomial)>) -> Self {
        self.relations.push(Relation {
            lhs,
            rhs: rhs
                .into_iter()
                .map(|(coeff, monomial)| NamedTerm { coeff, monomial })
                .collect(),
        });
        self
    }

    pub fn integral(mut self, monomial: NamedMonomial, value: Rational) -> Self {
        self.integrals.push((monomial, value));
        self
    }

    pub fn divisor_names(&self) -> Vec<&str> {
        self.generators
            .iter()
            .filter(|g| g.kind == GeneratorKind::Divisor)
            .map(|g| g.name.as_str())
            .collect()
    }

    pub fn extra_generators(&self) -> Vec<(&str, u32)> {
        self.generators
            .iter()
            .filter(|g| g.kind == GeneratorKind::Class)
            .map(|g| (g.name.as_str(), g.degree))
            .collect()
    }
}

fn resolve_monomial(generators: &[Generator], named: &NamedMonomial) -> Result<Monomial> {
    let mut exps = vec![0; generators.len()];
    for (name, e) in named {
        let i = generators
            .iter()
            .position(|g| &g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        exps[i] += e;
    }
    Ok(Monomial::from_exponents(exps))
}

/// Builds the truncated ring described by `desc`.
pub fn build_ring(desc: &ChowDescription) -> Result<GradedRing> {
    let generators: Vec<Generator> = desc
        .generators
        .iter()
        .map(|g| Generator::new(g.name.clone(), g.degree))
        .collect();
    for g in &desc.generators {
        if g.kind == GeneratorKind::Divisor && g.degree != 1 {
            return Err(Error::InvalidGenerator {
                name: g.name.clone(),
                reason: "divisor components have degree 1".into(),
            });
        }
    }
    let mut rules = Vec::with_capacity(desc.relations.len());
    for rel in &desc.relations {
        let lhs = resolve_monomial(&generators, &rel.lhs)?;
        let mut rhs = Vec::with_capacity(rel.rhs.len());
        for t in &rel.rhs {
            rhs.push((resolve_monomial(&generators, &t.monomial)?, t.coeff.clone()));
        }
        rules.push(RewriteRule::new(lhs, rhs));
    }
    GradedRing::with_cap(generators, desc.dim, rules, desc.rule_iteration_cap)
}

struct VarietyData {
    desc: ChowDescription,
    ring: GradedRing,
    integrals: BTreeMap<Monomial, Rational>,
    divisor_generators: Vec<usize>,
}

/// A validated [`ChowDescription`] together with its ring. Cheap to clone.
#[derive(Clone)]
pub struct Variety(Arc<VarietyData>);

impl PartialEq for Variety {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.desc == other.0.desc
    }
}

impl std::fmt::Debug for Variety {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Variety({}, dim {})", self.0.desc.name, self.0.desc.dim)
    }
}

impl Variety {
    pub fn new(desc: ChowDescription) -> Result<Self> {
        let ring = build_ring(&desc)?;
        let mut integrals = BTreeMap::new();
        for (named, value) in &desc.integrals {
            let m = resolve_monomial(ring.generators(), named)?;
            if ring.degree(&m) != desc.dim {
                return Err(Error::IntegralDegree {
                    monomial: ring.format_monomial(&m),
                    dim: desc.dim,
                });
            }
            integrals.insert(m, value.clone());
        }
        let divisor_generators = desc
            .generators
            .iter()
            .enumerate()
            .filter(|(_, g)| g.kind == GeneratorKind::Divisor)
            .map(|(i, _)| i)
            .collect();
        Ok(Variety(Arc::new(VarietyData {
            desc,
            ring,
            integrals,
            divisor_generators,
        })))
    }

    pub fn description(&self) -> &ChowDescription {
        &self.0.desc
    }

    pub fn name(&self) -> &str {
        &self.0.desc.name
    }

    pub fn dim(&self) -> u32 {
        self.0.desc.dim
    }

    pub fn ring(&self) -> &GradedRing {
        &self.0.ring
    }

    pub fn divisor_count(&self) -> usize {
        self.0.divisor_generators.len()
    }

    /// Generator index of the `i`-th divisor component.
    pub fn divisor_generator(&self, i: usize) -> usize {
        self.0.divisor_generators[i]
    }

    pub fn divisor_position(&self, name: &str) -> Option<usize> {
        self.0
            .divisor_generators
            .iter()
            .position(|&g| self.0.ring.generators()[g].name == name)
    }

    pub fn divisor_name(&self, i: usize) -> &str {
        &self.0.ring.generators()[self.0.divisor_generators[i]].name
    }

    /// Class of the `i`-th divisor component.
    pub fn divisor_class(&self, i: usize) -> RingElement {
        self.0.ring.generator_at(self.divisor_generator(i))
    }

    pub fn has_integrals(&self) -> bool {
        !self.0.integrals.is_empty()
    }

    /// Degree functional: the integral table applied linearly to the top
    /// graded part; lower parts contribute nothing.
    pub fn integrate(&self, a: &RingElement) -> Result<Rational> {
        if a.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        let top = a.graded_part(self.dim())?;
        let mut total = Rational::zero();
        for (m, c) in top.sorted_terms() {
            let v = self
                .0
                .integrals
                .get(m)
                .ok_or_else(|| Error::MissingIntegral(self.ring().format_monomial(m)))?;
            total += c * v;
        }
        Ok(total)
    }

    /// The formal cover of degree-scaling `n`.
    pub fn cover(&self, n: &BigInt) -> Result<CoverModel> {
        if !n.is_positive() {
            return Err(Error::ZeroCoverDegree);
        }
        let base = self.ring();
        let is_divisor: Vec<bool> = (0..base.generator_count())
            .map(|g| self.0.divisor_generators.contains(&g))
            .collect();
        let generators: Vec<Generator> = base
            .generators()
            .iter()
            .zip(&is_divisor)
            .map(|(g, &d)| {
                if d {
                    Generator::new(format!("{}~", g.name), g.degree)
                } else {
                    g.clone()
                }
            })
            .collect();
        let n_rat = from_bigint(n);
        let divisor_exponent = |m: &Monomial| -> u32 {
            m.exponents()
                .iter()
                .zip(&is_divisor)
                .filter(|(_, &d)| d)
                .map(|(e, _)| *e)
                .sum()
        };
        // m(D) -> c_j m_j(D) becomes N^{e(m)} m(D~) -> c_j N^{e(m_j)} m_j(D~).
        let rules = base
            .rules()
            .iter()
            .map(|r| {
                let e_lhs = divisor_exponent(&r.lhs) as i64;
                RewriteRule::new(
                    r.lhs.clone(),
                    r.rhs.iter().map(|(m, c)| {
                        let shift = divisor_exponent(m) as i64 - e_lhs;
                        (m.clone(), c * scale_power(&n_rat, shift))
                    }),
                )
            })
            .collect();
        let cover_ring =
            GradedRing::with_cap(generators, base.cutoff(), rules, base.rule_iteration_cap())?;
        Ok(CoverModel {
            base: self.clone(),
            n: n.clone(),
            cover_ring,
            is_divisor,
        })
    }
}

fn scale_power(n: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        pow(n, exp as u32)
    } else {
        pow(n, (-exp) as u32).recip()
    }
}

/// The formal cover `gamma: Y -> X` with `gamma^*(D_i) = N * D~_i`.
#[derive(Clone, Debug)]
pub struct CoverModel {
    base: Variety,
    n: BigInt,
    cover_ring: GradedRing,
    is_divisor: Vec<bool>,
}

impl CoverModel {
    pub fn base(&self) -> &Variety {
        &self.base
    }

    pub fn n(&self) -> &BigInt {
        &self.n
    }

    pub fn base_ring(&self) -> &GradedRing {
        self.base.ring()
    }

    pub fn cover_ring(&self) -> &GradedRing {
        &self.cover_ring
    }

    /// `D~_i` on the cover.
    pub fn cover_divisor(&self, i: usize) -> RingElement {
        self.cover_ring.generator_at(self.base.divisor_generator(i))
    }

    fn divisor_exponent(&self, m: &Monomial) -> u32 {
        m.exponents()
            .iter()
            .zip(&self.is_divisor)
            .filter(|(_, &d)| d)
            .map(|(e, _)| *e)
            .sum()
    }

    fn transport(&self, a: &RingElement, target: &GradedRing, invert: bool) -> RingElement {
        let n = from_bigint(&self.n);
        let n = if invert { n.recip() } else { n };
        target.from_terms(a.terms().iter().map(|(m, c)| {
            let e = self.divisor_exponent(m);
            (m.clone(), c * pow(&n, e))
        }))
    }

    /// `gamma^*`: `D_i -> N D~_i`, other generators and rationals fixed.
    pub fn pullback(&self, a: &RingElement) -> Result<RingElement> {
        if a.ring() != self.base.ring() {
            return Err(Error::RingMismatch);
        }
        Ok(self.transport(a, &self.cover_ring, false))
    }

    /// Inverse of [`pullback`](Self::pullback): `D~_i -> D_i / N`.
    pub fn pushdown(&self, b: &RingElement) -> Result<RingElement> {
        if b.ring() != &self.cover_ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.transport(b, self.base.ring(), true))
    }
}

/// Builds `desc` and its cover of scaling `n`.
pub fn make_cover(desc: &ChowDescription, n: &BigInt) -> Result<CoverModel> {
    Variety::new(desc.clone())?.cover(n)
}

/// Integrates `a` against the degree table of `desc`.
pub fn integrate(desc: &ChowDescription, a: &RingElement) -> Result<Rational> {
    Variety::new(desc.clone())?.integrate(a)
}
