//! Exact truncated graded-commutative ring engine.
//!
//! Generators all have weight 1 (half the cohomological degree). A ring
//! carries an ordered list of rewrite rules (monomial → polynomial), e.g.
//! σ·σ → −L·σ on a fibration and h^n → 0, t² → 0 on a product with a curve.
//! Classes are finite maps from normal-form monomials to exact rationals,
//! truncated at a weight N (default 8, overridable through the
//! ELLBUNDLE_TRUNCATION environment variable).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("classes live in different rings")]
    MixedRings,
    #[error("exp needs a vanishing weight-0 part")]
    NonNilpotentExp,
    #[error("inverse needs a nonzero weight-0 part")]
    NonUnit,
    #[error("substitution needs one image per generator, got {got} for {want}")]
    BadSubstitution { want: usize, got: usize },
    #[error("generator index {0} out of range")]
    BadGenerator(usize),
}

pub type Monomial = Vec<u32>;

fn weight(m: &Monomial) -> u32 {
    m.iter().sum()
}

fn divides(lhs: &Monomial, m: &Monomial) -> bool {
    lhs.iter().zip(m).all(|(a, b)| a <= b)
}

/// The default truncation weight: ELLBUNDLE_TRUNCATION if set, else 8.
pub fn default_truncation() -> u32 {
    std::env::var("ELLBUNDLE_TRUNCATION")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Rule {
    lhs: Monomial,
    rhs: Vec<(Monomial, BigRational)>,
}

/// A truncated graded-commutative polynomial ring with rewrite rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingSpec {
    names: Vec<String>,
    truncation: u32,
    rules: Vec<Rule>,
}

impl RingSpec {
    pub fn new(names: &[&str], truncation: u32) -> Arc<Self> {
        Arc::new(RingSpec {
            names: names.iter().map(|s| s.to_string()).collect(),
            truncation,
            rules: Vec::new(),
        })
    }

    /// Add the rule lhs → rhs. Every rule must strictly decrease the exponent
    /// of its leading generator (or map to fewer-support monomials), which
    /// makes rewriting terminate; the shipped rule sets are confluent.
    pub fn with_rule(
        self: &Arc<Self>,
        lhs: &[(usize, u32)],
        rhs: &[(&[(usize, u32)], BigRational)],
    ) -> Arc<Self> {
        let mut spec = (**self).clone();
        let k = spec.names.len();
        let mono = |pairs: &[(usize, u32)]| -> Monomial {
            let mut m = vec![0u32; k];
            for &(i, e) in pairs {
                m[i] += e;
            }
            m
        };
        spec.rules.push(Rule {
            lhs: mono(lhs),
            rhs: rhs.iter().map(|(m, c)| (mono(m), c.clone())).collect(),
        });
        Arc::new(spec)
    }

    /// Nilpotency rule: generator^power → 0.
    pub fn with_nilpotent(self: &Arc<Self>, gen: usize, power: u32) -> Arc<Self> {
        self.with_rule(&[(gen, power)], &[])
    }

    /// The relative-moduli-space ring ℚ[σ, ζ, L] with σ² = −Lσ.
    pub fn fibration(truncation: u32) -> Arc<Self> {
        let spec = RingSpec::new(&["sigma", "zeta", "L"], truncation);
        let minus_one = BigRational::from_integer(BigInt::from(-1));
        spec.with_rule(&[(0, 2)], &[(&[(2, 1), (0, 1)], minus_one)])
    }

    /// The section ring ℚ[σ, α, L] with σ² = −Lσ.
    pub fn section(truncation: u32) -> Arc<Self> {
        let spec = RingSpec::new(&["sigma", "alpha", "L"], truncation);
        let minus_one = BigRational::from_integer(BigInt::from(-1));
        spec.with_rule(&[(0, 2)], &[(&[(2, 1), (0, 1)], minus_one)])
    }

    /// The section ring over a curve base: α and L are pulled back from B,
    /// so any product of two base classes vanishes.
    pub fn section_over_curve(truncation: u32) -> Arc<Self> {
        Self::section(truncation)
            .with_nilpotent(1, 2)
            .with_rule(&[(1, 1), (2, 1)], &[])
            .with_nilpotent(2, 2)
    }

    /// The single-curve ring ℚ[h, t]/(h^n, t²) of ℙ^{n−1} × E.
    pub fn single_curve(n: u32, truncation: u32) -> Arc<Self> {
        RingSpec::new(&["h", "t"], truncation)
            .with_nilpotent(0, n)
            .with_nilpotent(1, 2)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn truncation(&self) -> u32 {
        self.truncation
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn normalize_into(
        &self,
        order: &[usize],
        m: Monomial,
        coeff: BigRational,
        out: &mut BTreeMap<Monomial, BigRational>,
    ) {
        if weight(&m) > self.truncation || coeff.is_zero() {
            return;
        }
        for &ri in order {
            let rule = &self.rules[ri];
            if divides(&rule.lhs, &m) {
                let rest: Monomial = m.iter().zip(&rule.lhs).map(|(a, b)| a - b).collect();
                for (rm, rc) in &rule.rhs {
                    let prod: Monomial = rest.iter().zip(rm).map(|(a, b)| a + b).collect();
                    self.normalize_into(order, prod, &coeff * rc, out);
                }
                return;
            }
        }
        let entry = out.entry(m).or_insert_with(BigRational::zero);
        *entry += coeff;
    }

    fn rule_order(&self) -> Vec<usize> {
        (0..self.rules.len()).collect()
    }
}

/// An element of a truncated ring: normal-form monomials → exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedClass {
    spec: Arc<RingSpec>,
    terms: BTreeMap<Monomial, BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl GradedClass {
    pub fn zero(spec: &Arc<RingSpec>) -> Self {
        GradedClass { spec: spec.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(spec: &Arc<RingSpec>, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; spec.names.len()], c);
        }
        GradedClass { spec: spec.clone(), terms }
    }

    pub fn int(spec: &Arc<RingSpec>, c: i64) -> Self {
        Self::constant(spec, rat(c))
    }

    pub fn one(spec: &Arc<RingSpec>) -> Self {
        Self::int(spec, 1)
    }

    pub fn generator(spec: &Arc<RingSpec>, i: usize) -> Result<Self, RingError> {
        if i >= spec.names.len() {
            return Err(RingError::BadGenerator(i));
        }
        let mut m = vec![0u32; spec.names.len()];
        m[i] = 1;
        let mut out = BTreeMap::new();
        spec.normalize_into(&spec.rule_order(), m, BigRational::one(), &mut out);
        Ok(GradedClass { spec: spec.clone(), terms: prune(out) })
    }

    pub fn named_generator(spec: &Arc<RingSpec>, name: &str) -> Result<Self, RingError> {
        let i = spec
            .generator_index(name)
            .ok_or(RingError::BadGenerator(usize::MAX))?;
        Self::generator(spec, i)
    }

    pub fn spec(&self) -> &Arc<RingSpec> {
        &self.spec
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    fn check_spec(&self, other: &Self) -> Result<(), RingError> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(RingError::MixedRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_spec(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let e = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *e += c;
        }
        Ok(GradedClass { spec: self.spec.clone(), terms: prune(terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        GradedClass { spec: self.spec.clone(), terms }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.spec);
        }
        let terms = self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect();
        GradedClass { spec: self.spec.clone(), terms }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&rat(c))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_spec(other)?;
        self.mul_with_order(other, &self.spec.rule_order())
    }

    fn mul_with_order(&self, other: &Self, order: &[usize]) -> Result<Self, RingError> {
        let mut out = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let prod: Monomial = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                self.spec.normalize_into(order, prod, c1 * c2, &mut out);
            }
        }
        Ok(GradedClass { spec: self.spec.clone(), terms: prune(out) })
    }

    pub fn pow(&self, k: u32) -> Result<Self, RingError> {
        let mut acc = Self::one(&self.spec);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The weight-k graded piece.
    pub fn weight_part(&self, k: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| weight(m) == k)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        GradedClass { spec: self.spec.clone(), terms }
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&vec![0; self.spec.names.len()])
    }

    /// Σ x^k / k!, truncated. Requires vanishing weight-0 part.
    pub fn exp(&self) -> Result<Self, RingError> {
        if !self.constant_term().is_zero() {
            return Err(RingError::NonNilpotentExp);
        }
        let mut acc = Self::one(&self.spec);
        let mut term = Self::one(&self.spec);
        for k in 1..=self.spec.truncation {
            term = term.mul(self)?.scale(&BigRational::new(BigInt::one(), BigInt::from(k)));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse of a class with invertible weight-0 part,
    /// by geometric series.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(RingError::NonUnit);
        }
        let cinv = c.recip();
        // self = c(1 + u); inverse = c⁻¹ Σ (−u)^k.
        let u = self.scale(&cinv).sub(&Self::one(&self.spec))?;
        let mut acc = Self::one(&self.spec);
        let mut term = Self::one(&self.spec);
        for _ in 1..=self.spec.truncation {
            term = term.mul(&u)?.neg();
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc.scale(&cinv))
    }

    /// Ring homomorphism sending generator i to images[i], applied termwise.
    pub fn substitute(
        &self,
        target: &Arc<RingSpec>,
        images: &[GradedClass],
    ) -> Result<Self, RingError> {
        if images.len() != self.spec.names.len() {
            return Err(RingError::BadSubstitution {
                want: self.spec.names.len(),
                got: images.len(),
            });
        }
        for img in images {
            if img.spec != *target {
                return Err(RingError::MixedRings);
            }
        }
        let mut acc = GradedClass::zero(target);
        for (m, c) in &self.terms {
            let mut term = GradedClass::constant(target, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }
}

fn prune(terms: BTreeMap<Monomial, BigRational>) -> BTreeMap<Monomial, BigRational> {
    terms.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Sort by (weight, lexicographic exponent vector).
        let mut keys: Vec<&Monomial> = self.terms.keys().collect();
        keys.sort_by_key(|m| (weight(m), (*m).clone()));
        for (i, m) in keys.iter().enumerate() {
            let c = &self.terms[*m];
            let mono = monomial_string(&self.spec, m);
            let abs = c.abs();
            let coeff = if abs.denom().is_one() {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match mono {
                None => write!(f, "{coeff}")?,
                Some(ms) => {
                    if abs.is_one() {
                        write!(f, "{ms}")?;
                    } else {
                        write!(f, "{coeff}*{ms}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn monomial_string(spec: &RingSpec, m: &Monomial) -> Option<String> {
    let mut parts = Vec::new();
    for (i, &e) in m.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(spec.names[i].clone()),
            _ => parts.push(format!("{}^{}", spec.names[i], e)),
        }
    }
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

/// (1 − e^{cx}) / (1 − e^x) as a class in the generator `gen`, by power-series
/// long division of the two series with vanishing constant term.
pub fn series_ratio(spec: &Arc<RingSpec>, c: i64, gen: usize) -> Result<GradedClass, RingError> {
    let n = spec.truncation as usize;
    // Coefficient vectors of (1−e^{cx}) and (1−e^{x}) with the common factor
    // x divided out: num[k] = −c^{k+1}/(k+1)!, den[k] = −1/(k+1)!.
    let mut fact = BigRational::one();
    let mut cpow = rat(c);
    let mut num = Vec::with_capacity(n + 1);
    let mut den = Vec::with_capacity(n + 1);
    for k in 0..=n {
        fact *= BigRational::from_integer(BigInt::from(k as i64 + 1));
        num.push(-&cpow / &fact);
        den.push(-fact.recip());
        cpow *= rat(c);
    }
    // q with num = q·den, den[0] = −1.
    let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num[k].clone();
        for j in 0..k {
            acc -= &q[j] * &den[k - j];
        }
        q.push(acc / &den[0]);
    }
    let x = GradedClass::generator(spec, gen)?;
    let mut out = GradedClass::zero(spec);
    let mut xk = GradedClass::one(spec);
    for (k, qk) in q.iter().enumerate() {
        if k > 0 {
            xk = xk.mul(&x)?;
        }
        out = out.add(&xk.scale(qk))?;
    }
    Ok(out)
}

/// The weight-2 coefficient of series_ratio: P(c) = c(2c−1)(c−1)/12.
pub fn p_of(c: i64) -> BigRational {
    rat(c) * rat(2 * c - 1) * rat(c - 1) / rat(12)
}

/// Chern data of a bundle: the rank together with either the total Chern
/// class or the Chern character, stored as graded components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernData {
    rank: i64,
    kind: ChernKind,
    comps: Vec<GradedClass>, // comps[k-1] = weight-k piece
    spec: Arc<RingSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChernKind {
    TotalChern,
    Character,
}

impl ChernData {
    /// Split a full character class (weight-0 part = rank) into components.
    pub fn from_character(cls: &GradedClass) -> Self {
        let rank_q = cls.constant_term();
        debug_assert!(rank_q.denom().is_one(), "rank must be an integer");
        let rank: i64 = rank_q.to_integer().try_into().expect("rank fits i64");
        Self::split(rank, ChernKind::Character, cls)
    }

    /// Split a total Chern class (weight-0 part = 1) into components; the
    /// rank is supplied separately.
    pub fn from_total_chern(rank: i64, cls: &GradedClass) -> Self {
        debug_assert!(cls.constant_term().is_one(), "total Chern class starts at 1");
        Self::split(rank, ChernKind::TotalChern, cls)
    }

    fn split(rank: i64, kind: ChernKind, cls: &GradedClass) -> Self {
        let n = cls.spec().truncation();
        let comps = (1..=n).map(|k| cls.weight_part(k)).collect();
        ChernData { rank, kind, comps, spec: cls.spec().clone() }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn kind(&self) -> ChernKind {
        self.kind
    }

    /// Weight-k component (k ≥ 1).
    pub fn component(&self, k: u32) -> &GradedClass {
        &self.comps[(k - 1) as usize]
    }

    /// Reassemble the total class (constant term rank or 1).
    pub fn total(&self) -> GradedClass {
        let c0 = match self.kind {
            ChernKind::TotalChern => 1,
            ChernKind::Character => self.rank,
        };
        let mut acc = GradedClass::int(&self.spec, c0);
        for c in &self.comps {
            acc = acc.add(c).expect("same ring");
        }
        acc
    }

    /// Newton-identity conversion Chern character → total Chern class:
    /// p_k = k!·ch_k and e_k = (1/k)·Σ_{i=1}^k (−1)^{i−1} e_{k−i} p_i.
    pub fn to_total_chern(&self) -> Result<ChernData, RingError> {
        match self.kind {
            ChernKind::TotalChern => Ok(self.clone()),
            ChernKind::Character => {
                let n = self.spec.truncation();
                let mut p: Vec<GradedClass> = Vec::new();
                let mut fact = BigRational::one();
                for k in 1..=n {
                    fact *= BigRational::from_integer(BigInt::from(k as i64));
                    p.push(self.component(k).scale(&fact));
                }
                let mut e: Vec<GradedClass> = vec![GradedClass::one(&self.spec)];
                for k in 1..=n as usize {
                    let mut acc = GradedClass::zero(&self.spec);
                    for i in 1..=k {
                        let term = e[k - i].mul(&p[i - 1])?;
                        acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
                    }
                    e.push(acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k as i64))));
                }
                Ok(ChernData {
                    rank: self.rank,
                    kind: ChernKind::TotalChern,
                    comps: e[1..].to_vec(),
                    spec: self.spec.clone(),
                })
            }
        }
    }

    /// Newton-identity conversion total Chern class → Chern character:
    /// p_k = Σ_{i=1}^{k−1} (−1)^{i−1} e_i p_{k−i} + (−1)^{k−1} k e_k.
    pub fn to_character(&self) -> Result<ChernData, RingError> {
        match self.kind {
            ChernKind::Character => Ok(self.clone()),
            ChernKind::TotalChern => {
                let n = self.spec.truncation();
                let e: Vec<&GradedClass> = (1..=n).map(|k| self.component(k)).collect();
                let mut p: Vec<GradedClass> = Vec::new();
                for k in 1..=n as usize {
                    let mut acc = e[k - 1].scale_int(k as i64);
                    if k % 2 == 0 {
                        acc = acc.neg();
                    }
                    for i in 1..k {
                        let term = e[i - 1].mul(&p[k - i - 1])?;
                        acc = if i % 2 == 1 { acc.add(&term)? } else { acc.sub(&term)? };
                    }
                    p.push(acc);
                }
                let mut fact = BigRational::one();
                let mut comps = Vec::new();
                for (k, pk) in p.iter().enumerate() {
                    fact *= BigRational::from_integer(BigInt::from(k as i64 + 1));
                    comps.push(pk.scale(&fact.recip()));
                }
                Ok(ChernData {
                    rank: self.rank,
                    kind: ChernKind::Character,
                    comps,
                    spec: self.spec.clone(),
                })
            }
        }
    }
}
