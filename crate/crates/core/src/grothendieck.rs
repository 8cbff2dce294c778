//! The Chow ring of the projective bundle `P(E')` over the cover and the
//! checks built on it.
//!
//! Elements are polynomials `sum_{k<r} a_k h^k` with coefficients in the cover
//! ring, where `h = c_1(O(1))`. Products are reduced with
//! `h^r = sum_{i=1}^r (-1)^{i-1} c_i(E') h^{r-i}`. Since `1, h, ..., h^{r-1}`
//! is a free basis, an element is zero exactly when every coefficient is.
//!
//! The tautological class of the parabolic projectivization pulls back to
//! `N h`, so the parabolic relation is checked on `P(E')` after pullback.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graded_ring::{format_univariate, GradedRing, RingElement};
use crate::parabolic::{ChernPolynomial, OrdinaryBundleClass, ParabolicBundle};
use crate::rational::{from_bigint, pow, Rational};

struct ProjData {
    base: GradedRing,
    rank: u32,
    // c_1..c_r
    reduction: Vec<RingElement>,
}

/// `CH(P(E'))` presented over the cover ring.
#[derive(Clone)]
pub struct ProjBundleRing(Arc<ProjData>);

impl PartialEq for ProjBundleRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.rank == other.0.rank
                && self.0.base == other.0.base
                && self.0.reduction == other.0.reduction)
    }
}

impl fmt::Debug for ProjBundleRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ProjBundleRing(rank {}, c = {:?})",
            self.0.rank, self.0.reduction
        )
    }
}

impl ProjBundleRing {
    pub fn new(bundle: &OrdinaryBundleClass) -> Self {
        let classes = bundle.chern_classes();
        ProjBundleRing(Arc::new(ProjData {
            base: bundle.ring().clone(),
            rank: bundle.rank(),
            reduction: classes[1..].to_vec(),
        }))
    }

    pub fn base(&self) -> &GradedRing {
        &self.0.base
    }

    pub fn rank(&self) -> u32 {
        self.0.rank
    }

    /// `c_1..c_r` of the bundle.
    pub fn reduction(&self) -> &[RingElement] {
        &self.0.reduction
    }

    fn r(&self) -> usize {
        self.0.rank as usize
    }

    pub fn zero(&self) -> ProjBundleElement {
        ProjBundleElement {
            ring: self.clone(),
            coeffs: vec![self.0.base.zero(); self.r()],
        }
    }

    pub fn one(&self) -> ProjBundleElement {
        self.reduce(vec![self.0.base.one()])
    }

    /// `h = c_1(O(1))`.
    pub fn h(&self) -> ProjBundleElement {
        self.reduce(vec![self.0.base.zero(), self.0.base.one()])
    }

    pub fn from_base(&self, a: &RingElement) -> Result<ProjBundleElement> {
        if a.ring() != &self.0.base {
            return Err(Error::RingMismatch);
        }
        Ok(self.reduce(vec![a.clone()]))
    }

    /// Reduces `sum_k coeffs[k] h^k` (any length) to degree `< r` in `h`.
    pub fn reduce(&self, mut coeffs: Vec<RingElement>) -> ProjBundleElement {
        let r = self.r();
        while coeffs.len() > r {
            let k = coeffs.len() - 1;
            let top = coeffs.pop().expect("nonempty");
            if !top.is_zero() {
                // h^k = h^{k-r} h^r = sum_i (-1)^{i-1} c_i h^{k-i}
                for (idx, ci) in self.0.reduction.iter().enumerate() {
                    let i = idx + 1;
                    let t = top.mul(ci).expect("same ring");
                    let slot = &mut coeffs[k - i];
                    *slot = if i % 2 == 1 {
                        slot.add(&t)
                    } else {
                        slot.sub(&t)
                    }
                    .expect("same ring");
                }
            }
        }
        coeffs.resize(r, self.0.base.zero());
        ProjBundleElement {
            ring: self.clone(),
            coeffs,
        }
    }

    /// `sum_{i=0}^r (-1)^i h^{r-i} c_i`, which must vanish.
    pub fn relation_element(&self) -> ProjBundleElement {
        let mut classes = vec![self.0.base.one()];
        classes.extend(self.0.reduction.iter().cloned());
        let mut acc = self.zero();
        for (i, c) in classes.iter().enumerate() {
            let term = self
                .h()
                .pow(self.0.rank - i as u32)
                .mul(&self.from_base(c).expect("same ring"))
                .expect("same ring");
            acc = if i % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
            .expect("same ring");
        }
        acc
    }
}

#[derive(Clone, PartialEq)]
pub struct ProjBundleElement {
    ring: ProjBundleRing,
    coeffs: Vec<RingElement>,
}

impl fmt::Debug for ProjBundleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjBundleElement({self})")
    }
}

impl fmt::Display for ProjBundleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_univariate(&self.coeffs, "h"))
    }
}

impl ProjBundleElement {
    pub fn ring(&self) -> &ProjBundleRing {
        &self.ring
    }

    /// Coefficients of `1, h, ..., h^{r-1}`.
    pub fn coeffs(&self) -> &[RingElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RingElement::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(ProjBundleElement {
            ring: self.ring.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ProjBundleElement {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| c.scale(factor)).collect(),
        }
    }

    /// Product reduced by the projective-bundle relation.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let base = self.ring.base();
        let mut raw = vec![base.zero(); self.coeffs.len() + other.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                raw[i + j] = raw[i + j].add(&a.mul(b)?)?;
            }
        }
        Ok(self.ring.reduce(raw))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..exp {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }
}

/// Outcome of checking `sum_i (-1)^i (N h)^{r-i} gamma^* C~_i = 0` on `P(E')`.
#[derive(Clone, Debug)]
pub struct RelationCheck {
    pub passed: bool,
    pub n: BigInt,
    pub tilde: Vec<RingElement>,
    pub residual: ProjBundleElement,
}

/// Checks the defining relation with the classes `C~_i` of `e`.
pub fn verify_relation(e: &ParabolicBundle) -> Result<RelationCheck> {
    verify_relation_with(e, &e.tilde_c()?)
}

/// Checks the defining relation with caller-supplied classes `tilde[0..=r]`
/// on `X`.
pub fn verify_relation_with(e: &ParabolicBundle, tilde: &[RingElement]) -> Result<RelationCheck> {
    let r = e.rank();
    if tilde.len() != r as usize + 1 {
        return Err(Error::TooFewParts {
            needed: r as usize + 1,
            got: tilde.len(),
        });
    }
    let n = e.big_n();
    let cm = e.cover_model()?;
    let upstairs = e.to_cover_bundle(&cm)?;
    let proj = ProjBundleRing::new(&upstairs);
    let nh = proj.h().scale(&from_bigint(&n));
    let mut residual = proj.zero();
    for (i, c) in tilde.iter().enumerate() {
        let term = nh
            .pow(r - i as u32)
            .mul(&proj.from_base(&cm.pullback(c)?)?)?;
        residual = if i % 2 == 0 {
            residual.add(&term)?
        } else {
            residual.sub(&term)?
        };
    }
    Ok(RelationCheck {
        passed: residual.is_zero(),
        n,
        tilde: tilde.to_vec(),
        residual,
    })
}

/// Recovers `c_0..c_r` of `e` from the projective-bundle relation alone:
/// reduce `h^r`, read `gamma^* C~_i` off the `h^{r-i}` coefficients, push
/// down, and rescale by `N^{r-i}`.
pub fn solve_from_relation(e: &ParabolicBundle) -> Result<Vec<RingElement>> {
    let r = e.rank();
    let n = from_bigint(&e.big_n());
    let cm = e.cover_model()?;
    let proj = ProjBundleRing::new(&e.to_cover_bundle(&cm)?);
    // (N h)^r / N^r = h^r = -sum_{i>=1} (-1)^i N^{r-i} h^{r-i} gamma^* C~_i
    let top = proj.h().scale(&n).pow(r).scale(&pow(&n, r).recip());
    let mut classes = vec![e.variety().ring().one()];
    for i in 1..=r {
        let coeff = &top.coeffs()[(r - i) as usize];
        let sign = if i % 2 == 1 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let tilde_up = coeff.scale(&(sign / pow(&n, r - i)));
        let tilde = cm.pushdown(&tilde_up)?;
        classes.push(tilde.scale(&pow(&n, r - i)));
    }
    Ok(classes)
}

/// One exact identity check with its residual (zero when it holds).
#[derive(Clone, Debug)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub passed: bool,
    pub residual: Vec<RingElement>,
}

impl IdentityCheck {
    fn from_residual(name: &'static str, residual: Vec<RingElement>) -> Self {
        IdentityCheck {
            name,
            passed: residual.iter().all(RingElement::is_zero),
            residual,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Prop1Check {
    pub whitney: IdentityCheck,
    pub dual: IdentityCheck,
    pub tensor: IdentityCheck,
}

impl Prop1Check {
    pub fn passed(&self) -> bool {
        self.whitney.passed && self.dual.passed && self.tensor.passed
    }

    pub fn checks(&self) -> [&IdentityCheck; 3] {
        [&self.whitney, &self.dual, &self.tensor]
    }
}

/// The parabolic operations checked by [`verify_prop1_with`].
pub trait BundleOperations {
    fn direct_sum(&self, e: &ParabolicBundle, f: &ParabolicBundle) -> Result<ParabolicBundle> {
        e.direct_sum(f)
    }

    fn dual(&self, e: &ParabolicBundle) -> Result<ParabolicBundle> {
        Ok(e.dual())
    }

    fn tensor(&self, e: &ParabolicBundle, f: &ParabolicBundle) -> Result<ParabolicBundle> {
        e.tensor(f)
    }
}

pub struct StandardOperations;

impl BundleOperations for StandardOperations {}

pub fn verify_prop1(e: &ParabolicBundle, f: &ParabolicBundle) -> Result<Prop1Check> {
    verify_prop1_with(&StandardOperations, e, f)
}

/// Whitney `c_t(E+F) = c_t(E) c_t(F)`, dual `c_t(E^*) = c_{-t}(E)`, and
/// tensor `ch(E (x) F) = ch(E) ch(F)`.
pub fn verify_prop1_with(
    ops: &impl BundleOperations,
    e: &ParabolicBundle,
    f: &ParabolicBundle,
) -> Result<Prop1Check> {
    if e.variety() != f.variety() {
        return Err(Error::VarietyMismatch);
    }
    let sum = ops.direct_sum(e, f)?;
    let ct_sum = sum.chern_polynomial(sum.rank())?;
    let product = e
        .chern_polynomial(e.rank())?
        .mul(&f.chern_polynomial(f.rank())?)?;
    let whitney = IdentityCheck::from_residual("whitney", ct_sum.difference(&product)?);

    let dual = ops.dual(e)?;
    let ct_dual: ChernPolynomial = dual.chern_polynomial(dual.rank())?;
    let negated = e.chern_polynomial(e.rank())?.negate_variable();
    let dual_check = IdentityCheck::from_residual("dual", ct_dual.difference(&negated)?);

    let tensor = ops.tensor(e, f)?;
    let ch_tensor = tensor.chern_character()?;
    let ring = e.variety().ring();
    let ch_e = sum_parts(&e.chern_character()?, ring)?;
    let ch_f = sum_parts(&f.chern_character()?, ring)?;
    let ch_product = ch_e.mul(&ch_f)?.graded_parts();
    let tensor_residual = ch_tensor
        .iter()
        .zip(&ch_product)
        .map(|(a, b)| a.sub(b))
        .collect::<Result<Vec<_>>>()?;
    let tensor_check = IdentityCheck::from_residual("tensor", tensor_residual);

    Ok(Prop1Check {
        whitney,
        dual: dual_check,
        tensor: tensor_check,
    })
}

fn sum_parts(parts: &[RingElement], ring: &GradedRing) -> Result<RingElement> {
    parts.iter().try_fold(ring.zero(), |acc, p| acc.add(p))
}

/// `gamma^* c_i(E) = c_i(E')` for every `i`.
pub fn verify_corollary1(e: &ParabolicBundle) -> Result<IdentityCheck> {
    let cm = e.cover_model()?;
    let upstairs = e.to_cover_bundle(&cm)?.chern_classes();
    let downstairs = e.parabolic_chern()?;
    let residual = downstairs
        .iter()
        .zip(&upstairs)
        .map(|(c, u)| cm.pullback(c)?.sub(u))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityCheck::from_residual("corollary1", residual))
}
