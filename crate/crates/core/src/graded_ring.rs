//! Truncated graded-commutative polynomial rings over the rationals.
//!
//! A [`GradedRing`] is a polynomial ring on finitely many positively graded
//! generators, truncated above a fixed degree and reduced by a list of
//! monomial rewrite rules `m -> p` with `p` homogeneous of the same degree as
//! `m`. Every [`RingElement`] is kept in normal form: no stored monomial is
//! divisible by a rule's left side, none exceeds the cutoff, and no
//! coefficient is zero. Equality of elements is therefore equality of their
//! term maps.
//!
//! Normal forms of all reducible monomials up to the cutoff are computed once
//! when the ring is built. A rule set whose rewriting does not settle within
//! the iteration cap is rejected at that point, so arithmetic never loops.
//! Rule sets that are not confluent are accepted; their normal forms depend on
//! rule order.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

pub const DEFAULT_RULE_ITERATION_CAP: usize = 1000;

/// Exponent vector indexed by generator position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(generators: usize) -> Self {
        Monomial(vec![0; generators])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / divisor`, when `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Option<Monomial> {
        if !divisor.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0.iter().zip(&divisor.0).map(|(a, b)| a - b).collect(),
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
        }
    }
}

/// `lhs -> rhs`, both sides of the same degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub lhs: Monomial,
    pub rhs: BTreeMap<Monomial, Rational>,
}

impl RewriteRule {
    pub fn new(lhs: Monomial, rhs: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut terms = BTreeMap::new();
        for (m, c) in rhs {
            accumulate(&mut terms, m, c);
        }
        RewriteRule { lhs, rhs: terms }
    }

    /// `lhs -> 0`
    pub fn vanishing(lhs: Monomial) -> Self {
        RewriteRule {
            lhs,
            rhs: BTreeMap::new(),
        }
    }
}

struct RingData {
    generators: Vec<Generator>,
    cutoff: u32,
    rules: Vec<RewriteRule>,
    cap: usize,
    // Normal forms of every reducible monomial of degree <= cutoff.
    normal_forms: HashMap<Monomial, BTreeMap<Monomial, Rational>>,
}

/// A truncated graded polynomial ring with monomial rewrite rules.
///
/// Cloning is cheap; clones share the same underlying data.
#[derive(Clone)]
pub struct GradedRing(Arc<RingData>);

impl PartialEq for GradedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.cutoff == other.0.cutoff
                && self.0.generators == other.0.generators
                && self.0.rules == other.0.rules)
    }
}

impl Eq for GradedRing {}

impl fmt::Debug for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedRing")
            .field("generators", &self.0.generators)
            .field("cutoff", &self.0.cutoff)
            .field("rules", &self.0.rules.len())
            .finish()
    }
}

impl GradedRing {
    pub fn new(generators: Vec<Generator>, cutoff: u32, rules: Vec<RewriteRule>) -> Result<Self> {
        Self::with_cap(generators, cutoff, rules, DEFAULT_RULE_ITERATION_CAP)
    }

    pub fn with_cap(
        generators: Vec<Generator>,
        cutoff: u32,
        rules: Vec<RewriteRule>,
        cap: usize,
    ) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::ZeroCutoff);
        }
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::InvalidGenerator {
                    name: g.name.clone(),
                    reason: "empty name".into(),
                });
            }
            if g.degree == 0 {
                return Err(Error::InvalidGenerator {
                    name: g.name.clone(),
                    reason: "degree must be at least 1".into(),
                });
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut ring = RingData {
            generators,
            cutoff,
            rules: Vec::with_capacity(rules.len()),
            cap: cap.max(1),
            normal_forms: HashMap::new(),
        };
        let n = ring.generators.len();
        for mut rule in rules {
            let lhs_name = format_monomial(&ring.generators, &rule.lhs);
            if rule.lhs.len() != n || rule.rhs.keys().any(|m| m.len() != n) {
                return Err(Error::InhomogeneousRelation {
                    lhs: lhs_name,
                    detail: "monomial length does not match the generator count".into(),
                });
            }
            if rule.lhs.is_one() {
                return Err(Error::InhomogeneousRelation {
                    lhs: lhs_name,
                    detail: "left side must have positive degree".into(),
                });
            }
            rule.rhs.retain(|_, c| !c.is_zero());
            let d = degree_in(&ring.generators, &rule.lhs);
            if let Some(bad) = rule
                .rhs
                .keys()
                .find(|m| degree_in(&ring.generators, m) != d)
            {
                return Err(Error::InhomogeneousRelation {
                    lhs: lhs_name,
                    detail: format!(
                        "right side term `{}` has degree {}, expected {}",
                        format_monomial(&ring.generators, bad),
                        degree_in(&ring.generators, bad),
                        d
                    ),
                });
            }
            ring.rules.push(rule);
        }
        if !ring.rules.is_empty() {
            let mut table = HashMap::new();
            for k in 1..=cutoff {
                for m in monomials_of_degree(&ring.generators, k) {
                    if ring.rules.iter().any(|r| r.lhs.divides(&m)) {
                        let nf = ring.rewrite_to_fixpoint(&m)?;
                        table.insert(m, nf);
                    }
                }
            }
            ring.normal_forms = table;
        }
        Ok(GradedRing(Arc::new(ring)))
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0.generators
    }

    pub fn generator_count(&self) -> usize {
        self.0.generators.len()
    }

    pub fn cutoff(&self) -> u32 {
        self.0.cutoff
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.0.rules
    }

    pub fn rule_iteration_cap(&self) -> usize {
        self.0.cap
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.generators.iter().position(|g| g.name == name)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        degree_in(&self.0.generators, m)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        format_monomial(&self.0.generators, m)
    }

    /// Canonical term order: ascending degree, then lexicographic in
    /// generator declaration order (higher power of an earlier generator
    /// first).
    pub fn canonical_cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| b.exponents().cmp(a.exponents()))
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.degree(m) <= self.0.cutoff && !self.0.rules.iter().any(|r| r.lhs.divides(m))
    }

    /// Monomials of degree exactly `k` that no rule rewrites, in canonical order.
    pub fn normal_monomials(&self, k: u32) -> Vec<Monomial> {
        if k > self.0.cutoff {
            return Vec::new();
        }
        let mut out: Vec<_> = monomials_of_degree(&self.0.generators, k)
            .into_iter()
            .filter(|m| self.is_normal(m))
            .collect();
        out.sort_by(|a, b| self.canonical_cmp(a, b));
        out
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> RingElement {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> RingElement {
        self.term(Monomial::one(self.generator_count()), c)
    }

    pub fn generator(&self, name: &str) -> Result<RingElement> {
        let i = self
            .generator_index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.generator_at(i))
    }

    pub fn generator_at(&self, index: usize) -> RingElement {
        let mut e = vec![0; self.generator_count()];
        e[index] = 1;
        self.term(Monomial(e), Rational::one())
    }

    pub fn term(&self, m: Monomial, c: Rational) -> RingElement {
        self.from_terms([(m, c)])
    }

    /// Builds and normalizes an element from raw terms. Every monomial must
    /// have one exponent per generator.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> RingElement {
        let mut raw = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), self.generator_count(), "monomial arity");
            accumulate(&mut raw, m, c);
        }
        RingElement {
            ring: self.clone(),
            terms: self.normalize_terms(raw),
        }
    }

    fn normalize_terms(&self, raw: BTreeMap<Monomial, Rational>) -> BTreeMap<Monomial, Rational> {
        let data = &self.0;
        if data.rules.is_empty() {
            let mut raw = raw;
            raw.retain(|m, c| !c.is_zero() && self.degree(m) <= data.cutoff);
            return raw;
        }
        let mut out = BTreeMap::new();
        for (m, c) in raw {
            if c.is_zero() || self.degree(&m) > data.cutoff {
                continue;
            }
            match data.normal_forms.get(&m) {
                Some(nf) => {
                    for (n, d) in nf {
                        accumulate(&mut out, n.clone(), &c * d);
                    }
                }
                None => accumulate(&mut out, m, c),
            }
        }
        out
    }
}

impl RingData {
    fn rewrite_to_fixpoint(&self, m: &Monomial) -> Result<BTreeMap<Monomial, Rational>> {
        let mut poly = BTreeMap::new();
        poly.insert(m.clone(), Rational::one());
        for _ in 0..self.cap {
            let mut next = BTreeMap::new();
            let mut changed = false;
            for (mono, c) in poly {
                let hit = self
                    .rules
                    .iter()
                    .find_map(|r| mono.quotient(&r.lhs).map(|q| (r, q)));
                match hit {
                    Some((rule, q)) => {
                        changed = true;
                        for (rm, rc) in &rule.rhs {
                            accumulate(&mut next, q.mul(rm), &c * rc);
                        }
                    }
                    None => accumulate(&mut next, mono, c),
                }
            }
            poly = next;
            if !changed {
                return Ok(poly);
            }
        }
        Err(Error::NonTerminating {
            monomial: format_monomial(&self.generators, m),
            cap: self.cap,
        })
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Rational>, m: Monomial, c: Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn degree_in(generators: &[Generator], m: &Monomial) -> u32 {
    generators
        .iter()
        .zip(m.exponents())
        .map(|(g, e)| g.degree * e)
        .sum()
}

fn monomials_of_degree(generators: &[Generator], k: u32) -> Vec<Monomial> {
    fn go(gens: &[Generator], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == gens.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let d = gens[i].degree;
        for e in 0..=left / d {
            cur[i] = e;
            go(gens, i + 1, left - e * d, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(generators, 0, k, &mut vec![0; generators.len()], &mut out);
    out
}

fn format_monomial(generators: &[Generator], m: &Monomial) -> String {
    let parts: Vec<String> = generators
        .iter()
        .zip(m.exponents())
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| {
            if e == 1 {
                g.name.clone()
            } else {
                format!("{}^{}", g.name, e)
            }
        })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

/// An element of a [`GradedRing`], always in normal form.
#[derive(Clone)]
pub struct RingElement {
    ring: GradedRing,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.ring == other.ring
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                f.write_str(&self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", magnitude, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl RingElement {
    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    /// Terms in canonical order (see [`GradedRing::canonical_cmp`]).
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| self.ring.canonical_cmp(a.0, b.0));
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .get(&Monomial::one(self.ring.generator_count()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// True when every term has degree `k` (the zero element is homogeneous
    /// of every degree).
    pub fn is_homogeneous(&self, k: u32) -> bool {
        self.terms.keys().all(|m| self.ring.degree(m) == k)
    }

    pub fn coefficients_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    fn check_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Ok(RingElement {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> RingElement {
        if factor.is_zero() {
            return self.ring.zero();
        }
        RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check_ring(other)?;
        Ok(self.mul_same_ring(other))
    }

    fn mul_same_ring(&self, other: &RingElement) -> RingElement {
        let cutoff = self.ring.cutoff();
        let mut raw = BTreeMap::new();
        for (a, ca) in &self.terms {
            let da = self.ring.degree(a);
            for (b, cb) in &other.terms {
                if da + self.ring.degree(b) > cutoff {
                    continue;
                }
                accumulate(&mut raw, a.mul(b), ca * cb);
            }
        }
        RingElement {
            ring: self.ring.clone(),
            terms: self.ring.normalize_terms(raw),
        }
    }

    pub fn pow(&self, exp: u32) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..exp {
            acc = acc.mul_same_ring(self);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }

    /// Projection onto degree `k`.
    pub fn graded_part(&self, k: u32) -> Result<RingElement> {
        if k > self.ring.cutoff() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                cutoff: self.ring.cutoff(),
            });
        }
        Ok(RingElement {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| self.ring.degree(m) == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        })
    }

    /// All graded parts `0..=cutoff`.
    pub fn graded_parts(&self) -> Vec<RingElement> {
        (0..=self.ring.cutoff())
            .map(|k| self.graded_part(k).expect("k within cutoff"))
            .collect()
    }

    /// `sum a^k / k!`, finite because `a` has no degree-0 part.
    pub fn exp_nilpotent(&self) -> Result<RingElement> {
        let c0 = self.constant_term();
        if !c0.is_zero() {
            return Err(Error::NotNilpotent(c0.to_string()));
        }
        let mut sum = self.ring.one();
        let mut power = self.ring.one();
        for k in 1..=self.ring.cutoff() {
            power = power.mul_same_ring(self);
            if power.is_zero() {
                break;
            }
            let inv = Rational::new(BigInt::one(), factorial(k));
            sum = sum.add(&power.scale(&inv))?;
        }
        Ok(sum)
    }

    /// `sum_{k>=1} (-1)^{k+1} (a-1)^k / k`, the inverse of [`exp_nilpotent`](Self::exp_nilpotent).
    pub fn log_unipotent(&self) -> Result<RingElement> {
        let c0 = self.constant_term();
        if !c0.is_one() {
            return Err(Error::NotUnipotent(c0.to_string()));
        }
        let x = self.sub(&self.ring.one())?;
        let mut sum = self.ring.zero();
        let mut power = self.ring.one();
        for k in 1..=self.ring.cutoff() {
            power = power.mul_same_ring(&x);
            if power.is_zero() {
                break;
            }
            let mut coeff = Rational::new(BigInt::one(), BigInt::from(k));
            if k % 2 == 0 {
                coeff = -coeff;
            }
            sum = sum.add(&power.scale(&coeff))?;
        }
        Ok(sum)
    }
}

/// Sums a list of elements of one ring; `None` for an empty list.
pub fn sum_elements<'a>(
    items: impl IntoIterator<Item = &'a RingElement>,
) -> Result<Option<RingElement>> {
    let mut acc: Option<RingElement> = None;
    for x in items {
        acc = Some(match acc {
            None => x.clone(),
            Some(a) => a.add(x)?,
        });
    }
    Ok(acc)
}

/// Chern classes `c_0..c_rank` from the graded parts of a Chern character,
/// by Newton's identities on the power sums `p_k = k! ch_k`.
pub fn chern_from_character(ch_parts: &[RingElement], rank: u32) -> Result<Vec<RingElement>> {
    let first = ch_parts
        .first()
        .ok_or(Error::TooFewParts { needed: 1, got: 0 })?;
    let ring = first.ring().clone();
    let top = rank.min(ring.cutoff()) as usize;
    if ch_parts.len() < top + 1 {
        return Err(Error::TooFewParts {
            needed: top + 1,
            got: ch_parts.len(),
        });
    }
    for (k, part) in ch_parts.iter().enumerate().take(top + 1) {
        if part.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if !part.is_homogeneous(k as u32) {
            return Err(Error::NonHomogeneousPart { index: k });
        }
    }
    let expected_rank = Rational::from_integer(BigInt::from(rank));
    if ch_parts[0].constant_term() != expected_rank {
        return Err(Error::RankMismatch {
            expected: rank.to_string(),
            found: ch_parts[0].constant_term().to_string(),
        });
    }

    let power_sums: Vec<RingElement> = (0..=top)
        .map(|k| ch_parts[k].scale(&Rational::from_integer(factorial(k as u32))))
        .collect();
    let mut c = vec![ring.one()];
    for k in 1..=top {
        // k c_k = sum_{j=1}^k (-1)^{j-1} c_{k-j} p_j
        let mut acc = ring.zero();
        for j in 1..=k {
            let t = c[k - j].mul_same_ring(&power_sums[j]);
            acc = if j % 2 == 1 {
                acc.add(&t)?
            } else {
                acc.sub(&t)?
            };
        }
        c.push(acc.scale(&Rational::new(BigInt::one(), BigInt::from(k))));
    }
    while c.len() < rank as usize + 1 {
        c.push(ring.zero());
    }
    Ok(c)
}

/// Graded parts `ch_0..ch_cutoff` of the Chern character of a rank-`rank`
/// bundle with Chern classes `c` (entries past the end of `c` are zero).
pub fn character_from_chern(c: &[RingElement], rank: u32) -> Result<Vec<RingElement>> {
    let first = c.first().ok_or(Error::TooFewParts { needed: 1, got: 0 })?;
    let ring = first.ring().clone();
    if first != &ring.one() {
        return Err(Error::LeadingClassNotOne(first.to_string()));
    }
    for (k, ck) in c.iter().enumerate() {
        if ck.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if !ck.is_homogeneous(k as u32) {
            return Err(Error::NonHomogeneousPart { index: k });
        }
    }
    let cutoff = ring.cutoff() as usize;
    let class = |i: usize| -> Option<&RingElement> {
        if i <= rank as usize {
            c.get(i)
        } else {
            None
        }
    };
    // p_k = sum_{i=1}^{k-1} (-1)^{i-1} c_i p_{k-i} + (-1)^{k-1} k c_k
    let mut p: Vec<RingElement> = vec![ring.constant(Rational::from_integer(BigInt::from(rank)))];
    for k in 1..=cutoff {
        let mut acc = ring.zero();
        for i in 1..k {
            if let Some(ci) = class(i) {
                let t = ci.mul_same_ring(&p[k - i]);
                acc = if i % 2 == 1 {
                    acc.add(&t)?
                } else {
                    acc.sub(&t)?
                };
            }
        }
        if let Some(ck) = class(k) {
            let t = ck.scale(&Rational::from_integer(BigInt::from(k)));
            acc = if k % 2 == 1 {
                acc.add(&t)?
            } else {
                acc.sub(&t)?
            };
        }
        p.push(acc);
    }
    Ok(p.into_iter()
        .enumerate()
        .map(|(k, pk)| pk.scale(&Rational::new(BigInt::one(), factorial(k as u32))))
        .collect())
}

/// Renders `sum_k coeffs[k] var^k`, parenthesizing compound coefficients.
pub fn format_univariate(coeffs: &[RingElement], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let text = c.to_string();
        if i == 0 {
            out.push_str(&text);
            continue;
        }
        let power = if i == 1 {
            var.to_string()
        } else {
            format!("{var}^{i}")
        };
        if c.terms().len() == 1 && !text.starts_with('-') {
            if text == "1" {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{text}*{power}"));
            }
        } else {
            out.push_str(&format!("({text})*{power}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
