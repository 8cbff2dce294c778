//! Parabolic vector bundles in split (weighted-sum) presentation.
//!
//! A [`ParabolicBundle`] is a direct sum of ordinary bundle classes, each
//! carrying a rational weight in `[0,1)` along every boundary divisor
//! component. Its Chern classes are computed on the cover `Y`: the summand
//! `(V, lambda)` becomes `gamma^* V (x) O(sum_i N lambda_i D~_i)`, an ordinary
//! bundle since every `N lambda_i` is an integer, and the classes of the sum
//! are pushed back down to `X`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::chow_model::{CoverModel, Variety};
use crate::error::{Error, Result};
use crate::graded_ring::{
    character_from_chern, chern_from_character, format_univariate, GradedRing, RingElement,
};
use crate::rational::{check_denominator, from_bigint, lcm_of_denominators, pow, Rational};

/// Input limits applied when a bundle is constructed from user data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_denominator: BigInt,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_denominator: BigInt::from(1_000_000u32),
        }
    }
}

/// Chern data of an ordinary vector bundle: its rank and total Chern class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryBundleClass {
    rank: u32,
    total_chern: RingElement,
}

impl OrdinaryBundleClass {
    pub fn new(rank: u32, total_chern: RingElement) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidBundle("rank must be at least 1".into()));
        }
        if total_chern.graded_part(0)? != total_chern.ring().one() {
            return Err(Error::LeadingClassNotOne(
                total_chern.graded_part(0)?.to_string(),
            ));
        }
        let cutoff = total_chern.ring().cutoff();
        for k in (rank + 1)..=cutoff {
            let part = total_chern.graded_part(k)?;
            if !part.is_zero() {
                return Err(Error::InvalidBundle(format!(
                    "degree-{k} part `{part}` exceeds rank {rank}"
                )));
            }
        }
        Ok(OrdinaryBundleClass { rank, total_chern })
    }

    pub fn trivial(ring: &GradedRing, rank: u32) -> Result<Self> {
        Self::new(rank, ring.one())
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: &RingElement) -> Result<Self> {
        if !c1.is_homogeneous(1) {
            return Err(Error::NonHomogeneousPart { index: 1 });
        }
        Self::new(1, c1.ring().one().add(c1)?)
    }

    /// Recovers the classes from graded Chern character parts.
    pub fn from_character(parts: &[RingElement], rank: u32) -> Result<Self> {
        let c = chern_from_character(parts, rank)?;
        Self::new(rank, sum(&c)?)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn total_chern(&self) -> &RingElement {
        &self.total_chern
    }

    pub fn ring(&self) -> &GradedRing {
        self.total_chern.ring()
    }

    /// `c_0..c_rank`; classes above the ring cutoff are zero.
    pub fn chern_classes(&self) -> Vec<RingElement> {
        let cutoff = self.ring().cutoff();
        (0..=self.rank)
            .map(|k| {
                if k <= cutoff {
                    self.total_chern.graded_part(k).expect("k within cutoff")
                } else {
                    self.ring().zero()
                }
            })
            .collect()
    }

    /// Graded parts `ch_0..ch_cutoff`.
    pub fn character(&self) -> Result<Vec<RingElement>> {
        character_from_chern(&self.chern_classes(), self.rank)
    }

    /// `c_i(V^*) = (-1)^i c_i(V)`.
    pub fn dual(&self) -> Self {
        let classes: Vec<RingElement> = self
            .chern_classes()
            .into_iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c })
            .collect();
        OrdinaryBundleClass {
            rank: self.rank,
            total_chern: sum(&classes).expect("same ring"),
        }
    }

    /// `V (x) L` for the line bundle with `c_1(L) = line`:
    /// `c(V (x) L) = sum_i c_i(V) (1 + line)^{r-i}`.
    pub fn twist(&self, line: &RingElement) -> Result<Self> {
        if line.ring() != self.ring() {
            return Err(Error::RingMismatch);
        }
        if !line.is_homogeneous(1) {
            return Err(Error::NonHomogeneousPart { index: 1 });
        }
        let one_plus = self.ring().one().add(line)?;
        let mut total = self.ring().zero();
        for (i, ci) in self.chern_classes().iter().enumerate() {
            let factor = one_plus.pow(self.rank - i as u32);
            total = total.add(&ci.mul(&factor)?)?;
        }
        Ok(OrdinaryBundleClass {
            rank: self.rank,
            total_chern: total,
        })
    }

    /// `V (x) W`, through `ch(V (x) W) = ch(V) ch(W)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let ch = sum(&self.character()?)?.mul(&sum(&other.character()?)?)?;
        Self::from_character(&ch.graded_parts(), self.rank * other.rank)
    }

    /// `V (+) W`: total Chern classes multiply.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.rank + other.rank,
            self.total_chern.mul(&other.total_chern)?,
        )
    }
}

fn sum(items: &[RingElement]) -> Result<RingElement> {
    let mut it = items.iter();
    let first = it.next().expect("nonempty").clone();
    it.try_fold(first, |acc, x| acc.add(x))
}

/// One summand: an ordinary bundle and its weight on every divisor component
/// (indexed like [`Variety::divisor_name`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    bundle: OrdinaryBundleClass,
    weights: Vec<Rational>,
}

impl Summand {
    pub fn bundle(&self) -> &OrdinaryBundleClass {
        &self.bundle
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }
}

/// A summand as given by a caller: weights keyed by divisor name, omitted
/// divisors meaning weight 0.
#[derive(Clone, Debug)]
pub struct WeightedSummand {
    pub bundle: OrdinaryBundleClass,
    pub weights: Vec<(String, Rational)>,
}

impl WeightedSummand {
    pub fn new(bundle: OrdinaryBundleClass, weights: &[(&str, Rational)]) -> Self {
        WeightedSummand {
            bundle,
            weights: weights
                .iter()
                .map(|(n, w)| (n.to_string(), w.clone()))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ParabolicBundle {
    variety: Variety,
    summands: Vec<Summand>,
}

impl ParabolicBundle {
    pub fn new(variety: &Variety, summands: Vec<WeightedSummand>) -> Result<Self> {
        Self::with_limits(variety, summands, &Limits::default())
    }

    pub fn with_limits(
        variety: &Variety,
        summands: Vec<WeightedSummand>,
        limits: &Limits,
    ) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::EmptyBundle);
        }
        let mut out = Vec::with_capacity(summands.len());
        for s in summands {
            if s.bundle.ring() != variety.ring() {
                return Err(Error::VarietyMismatch);
            }
            let mut weights = vec![Rational::zero(); variety.divisor_count()];
            let mut seen = vec![false; variety.divisor_count()];
            for (name, w) in s.weights {
                let i = variety
                    .divisor_position(&name)
                    .ok_or_else(|| Error::UnknownDivisor(name.clone()))?;
                if seen[i] {
                    return Err(Error::InvalidBundle(format!(
                        "weight on `{name}` given twice"
                    )));
                }
                seen[i] = true;
                if w.is_negative() || w >= Rational::one() {
                    return Err(Error::WeightOutOfRange {
                        divisor: name,
                        weight: w.to_string(),
                    });
                }
                check_denominator(&w, &limits.max_denominator)?;
                weights[i] = w;
            }
            out.push(Summand {
                bundle: s.bundle,
                weights,
            });
        }
        Ok(ParabolicBundle {
            variety: variety.clone(),
            summands: out,
        })
    }

    /// `O^rank` with all weights zero.
    pub fn trivial(variety: &Variety, rank: u32) -> Result<Self> {
        let bundle = OrdinaryBundleClass::trivial(variety.ring(), rank)?;
        Self::new(variety, vec![WeightedSummand::new(bundle, &[])])
    }

    pub fn variety(&self) -> &Variety {
        &self.variety
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn rank(&self) -> u32 {
        self.summands.iter().map(|s| s.bundle.rank).sum()
    }

    /// lcm of all weight denominators; 1 when every weight is 0.
    pub fn big_n(&self) -> BigInt {
        lcm_of_denominators(self.summands.iter().flat_map(|s| s.weights.iter()))
    }

    /// Distinct weights along `divisor` in increasing order, each with the
    /// total rank of the summands carrying it.
    pub fn quasiparabolic_data(&self, divisor: &str) -> Result<Vec<(Rational, u32)>> {
        let i = self
            .variety
            .divisor_position(divisor)
            .ok_or_else(|| Error::UnknownDivisor(divisor.to_string()))?;
        let mut steps: BTreeMap<Rational, u32> = BTreeMap::new();
        for s in &self.summands {
            *steps.entry(s.weights[i].clone()).or_default() += s.bundle.rank;
        }
        Ok(steps.into_iter().collect())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.variety != other.variety {
            return Err(Error::VarietyMismatch);
        }
        let mut summands = self.summands.clone();
        summands.extend(other.summands.iter().cloned());
        Ok(ParabolicBundle {
            variety: self.variety.clone(),
            summands,
        })
    }

    /// Parabolic dual: weight `lambda > 0` becomes `1 - lambda` with the
    /// underlying dual twisted by `O(-D_i)`; weight 0 stays 0.
    pub fn dual(&self) -> Self {
        let summands = self
            .summands
            .iter()
            .map(|s| {
                let mut shift = self.variety.ring().zero();
                let weights = s
                    .weights
                    .iter()
                    .enumerate()
                    .map(|(i, w)| {
                        if w.is_zero() {
                            Rational::zero()
                        } else {
                            shift = shift
                                .sub(&self.variety.divisor_class(i))
                                .expect("same ring");
                            Rational::one() - w
                        }
                    })
                    .collect();
                let bundle = s.bundle.dual().twist(&shift).expect("degree-1 shift");
                Summand { bundle, weights }
            })
            .collect();
        ParabolicBundle {
            variety: self.variety.clone(),
            summands,
        }
    }

    /// Parabolic tensor product: weights add summand-wise, a sum `>= 1` is
    /// reduced by 1 and carried into a twist by `O(D_i)`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if self.variety != other.variety {
            return Err(Error::VarietyMismatch);
        }
        let mut summands = Vec::with_capacity(self.summands.len() * other.summands.len());
        for a in &self.summands {
            for b in &other.summands {
                let mut carry = self.variety.ring().zero();
                let weights = a
                    .weights
                    .iter()
                    .zip(&b.weights)
                    .enumerate()
                    .map(|(i, (x, y))| {
                        let w = x + y;
                        if w >= Rational::one() {
                            carry = carry
                                .add(&self.variety.divisor_class(i))
                                .expect("same ring");
                            w - Rational::one()
                        } else {
                            w
                        }
                    })
                    .collect();
                let bundle = a.bundle.tensor(&b.bundle)?.twist(&carry)?;
                summands.push(Summand { bundle, weights });
            }
        }
        Ok(ParabolicBundle {
            variety: self.variety.clone(),
            summands,
        })
    }

    /// The cover of scaling `N(E)`.
    pub fn cover_model(&self) -> Result<CoverModel> {
        self.variety.cover(&self.big_n())
    }

    /// The bundle `E'` on the cover:
    /// `ch(E') = sum_k gamma^* ch(V_k) exp(sum_i N lambda_{k,i} D~_i)`.
    pub fn to_cover_bundle(&self, cm: &CoverModel) -> Result<OrdinaryBundleClass> {
        if cm.base() != &self.variety {
            return Err(Error::VarietyMismatch);
        }
        let big_n = self.big_n();
        if !cm.n().is_multiple_of(&big_n) {
            return Err(Error::IncompatibleCover {
                n: cm.n().to_string(),
                big_n: big_n.to_string(),
            });
        }
        let n = from_bigint(cm.n());
        let cover = cm.cover_ring();
        let mut ch = cover.zero();
        for s in &self.summands {
            let mut exponent = cover.zero();
            for (i, w) in s.weights.iter().enumerate() {
                let k = &n * w;
                debug_assert!(k.is_integer());
                exponent = exponent.add(&cm.cover_divisor(i).scale(&k))?;
            }
            let base_ch = sum(&s.bundle.character()?)?;
            let term = cm.pullback(&base_ch)?.mul(&exponent.exp_nilpotent()?)?;
            ch = ch.add(&term)?;
        }
        OrdinaryBundleClass::from_character(&ch.graded_parts(), self.rank())
    }

    /// `c_i(E) = pushdown c_i(E')` for the cover of scaling `N(E)`.
    pub fn parabolic_chern(&self) -> Result<Vec<RingElement>> {
        let cm = self.cover_model()?;
        let upstairs = self.to_cover_bundle(&cm)?;
        upstairs
            .chern_classes()
            .iter()
            .map(|c| cm.pushdown(c))
            .collect()
    }

    /// `C~_i = c_i(E) / N^{r-i}`; in particular `C~_0 = 1/N^r`.
    pub fn tilde_c(&self) -> Result<Vec<RingElement>> {
        let n = from_bigint(&self.big_n());
        let r = self.rank();
        Ok(self
            .parabolic_chern()?
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.scale(&pow(&n, r - i as u32).recip()))
            .collect())
    }

    /// Graded parts of `ch(E) = sum_k ch(V_k) prod_i exp(lambda_{k,i} D_i)`,
    /// computed directly on `X`.
    pub fn chern_character(&self) -> Result<Vec<RingElement>> {
        let ring = self.variety.ring();
        let mut ch = ring.zero();
        for s in &self.summands {
            let mut exponent = ring.zero();
            for (i, w) in s.weights.iter().enumerate() {
                exponent = exponent.add(&self.variety.divisor_class(i).scale(w))?;
            }
            let term = sum(&s.bundle.character()?)?.mul(&exponent.exp_nilpotent()?)?;
            ch = ch.add(&term)?;
        }
        Ok(ch.graded_parts())
    }

    /// Coefficients `c_0..c_up_to` of `c_t(E)`.
    pub fn chern_polynomial(&self, up_to: u32) -> Result<ChernPolynomial> {
        let mut c = self.parabolic_chern()?;
        let zero = self.variety.ring().zero();
        c.resize(up_to as usize + 1, zero);
        Ok(ChernPolynomial::new(c))
    }

    /// `int_X c_1(E)`.
    pub fn parabolic_degree(&self) -> Result<Rational> {
        let c = self.parabolic_chern()?;
        let c1 = c
            .get(1)
            .cloned()
            .unwrap_or_else(|| self.variety.ring().zero());
        self.variety.integrate(&c1)
    }
}

/// `c_t = sum_i c_i t^i` with coefficients in the Chow ring.
#[derive(Clone, Debug)]
pub struct ChernPolynomial {
    coeffs: Vec<RingElement>,
}

impl ChernPolynomial {
    pub fn new(coeffs: Vec<RingElement>) -> Self {
        assert!(!coeffs.is_empty(), "Chern polynomial needs c_0");
        ChernPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    /// Coefficient of `t^i`, zero past the end.
    pub fn coeff(&self, i: usize) -> RingElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.coeffs[0].ring().zero())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let ring = self.coeffs[0].ring();
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![ring.zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(ChernPolynomial { coeffs: out })
    }

    /// `c_{-t}`.
    pub fn negate_variable(&self) -> Self {
        ChernPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
                .collect(),
        }
    }

    /// Coefficientwise difference, padded to the longer length.
    pub fn difference(&self, other: &Self) -> Result<Vec<RingElement>> {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| self.coeff(i).sub(&other.coeff(i)))
            .collect()
    }
}

impl PartialEq for ChernPolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.difference(other)
            .map(|d| d.iter().all(RingElement::is_zero))
            .unwrap_or(false)
    }
}

impl fmt::Display for ChernPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_univariate(&self.coeffs, "t"))
    }
}

/// `N^i c_i` has integer coefficients for every `i`.
pub fn scaled_classes_integral(classes: &[RingElement], n: &BigInt) -> bool {
    let n = from_bigint(n);
    classes
        .iter()
        .enumerate()
        .all(|(i, c)| c.scale(&pow(&n, i as u32)).coefficients_integral())
}
