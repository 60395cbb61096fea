//! Weierstrass cubics Y²Z = 4X³ − g₂XZ² − g₃Z³ with marked point p₀ = [0:1:0]:
//! discriminant, fiber-type classification, the chord-tangent group law on the
//! smooth locus, torsion, and membership in |np₀|.

use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::field::{Field, FieldElem, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("the singular point is not in the group")]
    SingularPoint,
    #[error("torsion solve unsupported: {0}")]
    UnsupportedTorsion(String),
    #[error("expected {expected} points, got {got}")]
    CardinalityMismatch { expected: usize, got: usize },
}

/// Fiber type of a Weierstrass cubic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FiberType {
    Smooth,
    Nodal,
    Cuspidal,
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FiberType::Smooth => "Smooth",
            FiberType::Nodal => "Nodal",
            FiberType::Cuspidal => "Cuspidal",
        };
        f.write_str(s)
    }
}

/// A projective point on a Weierstrass cubic, normalized so that affine points
/// have Z = 1 and the identity is p₀ = [0:1:0].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CurvePoint {
    Identity,
    Affine { x: FieldElem, y: FieldElem },
}

impl CurvePoint {
    pub fn affine(x: FieldElem, y: FieldElem) -> Self {
        CurvePoint::Affine { x, y }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, CurvePoint::Identity)
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Identity => write!(f, "[0:1:0]"),
            CurvePoint::Affine { x, y } => write!(f, "[{x}:{y}:1]"),
        }
    }
}

/// The cubic Y²Z = 4X³ − g₂XZ² − g₃Z³ over ℚ or F_p (p > 3).
#[derive(Debug, Clone)]
pub struct WeierstrassCurve {
    g2: FieldElem,
    g3: FieldElem,
    field: Field,
    disc: OnceLock<FieldElem>,
}

impl PartialEq for WeierstrassCurve {
    fn eq(&self, other: &Self) -> bool {
        self.g2 == other.g2 && self.g3 == other.g3
    }
}
impl Eq for WeierstrassCurve {}

/// Δ(g₂, g₃) = g₂³ − 27 g₃².
pub fn discriminant(g2: &FieldElem, g3: &FieldElem) -> Result<FieldElem, FieldError> {
    let g2cubed = g2.mul(g2)?.mul(g2)?;
    let g3sq = g3.mul(g3)?;
    let twenty_seven = FieldElem::from_i64(g2.field(), 27);
    g2cubed.sub(&twenty_seven.mul(&g3sq)?)
}

impl WeierstrassCurve {
    pub fn new(g2: FieldElem, g3: FieldElem) -> Result<Self, CurveError> {
        let field = g2.field();
        if g3.field() != field {
            return Err(FieldError::Mixed(field, g3.field()).into());
        }
        field.validate()?;
        Ok(WeierstrassCurve { g2, g3, field, disc: OnceLock::new() })
    }

    pub fn from_i64(field: Field, g2: i64, g3: i64) -> Result<Self, CurveError> {
        Self::new(FieldElem::from_i64(field, g2), FieldElem::from_i64(field, g3))
    }

    pub fn g2(&self) -> &FieldElem {
        &self.g2
    }

    pub fn g3(&self) -> &FieldElem {
        &self.g3
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn identity(&self) -> CurvePoint {
        CurvePoint::Identity
    }

    /// Cached Δ = g₂³ − 27g₃².
    pub fn disc(&self) -> &FieldElem {
        self.disc
            .get_or_init(|| discriminant(&self.g2, &self.g3).expect("same field"))
    }

    pub fn classify(&self) -> FiberType {
        if !self.disc().is_zero() {
            FiberType::Smooth
        } else if self.g2.is_zero() && self.g3.is_zero() {
            FiberType::Cuspidal
        } else {
            FiberType::Nodal
        }
    }

    /// The singular point: absent for smooth fibers, (0,0) for the cusp,
    /// (−3g₃/(2g₂), 0) for the node (the double root of 4x³ − g₂x − g₃).
    pub fn singular_point(&self) -> Option<CurvePoint> {
        match self.classify() {
            FiberType::Smooth => None,
            FiberType::Cuspidal => Some(CurvePoint::affine(
                FieldElem::zero(self.field),
                FieldElem::zero(self.field),
            )),
            FiberType::Nodal => {
                let three_g3 = FieldElem::from_i64(self.field, 3).mul(&self.g3).unwrap();
                let two_g2 = FieldElem::from_i64(self.field, 2).mul(&self.g2).unwrap();
                let x0 = three_g3.neg().div(&two_g2).expect("g2 != 0 on nodal curve");
                Some(CurvePoint::affine(x0, FieldElem::zero(self.field)))
            }
        }
    }

    /// Right-hand side 4x³ − g₂x − g₃.
    fn rhs(&self, x: &FieldElem) -> FieldElem {
        let four = FieldElem::from_i64(self.field, 4);
        let x3 = x.mul(x).unwrap().mul(x).unwrap();
        four.mul(&x3)
            .unwrap()
            .sub(&self.g2.mul(x).unwrap())
            .unwrap()
            .sub(&self.g3)
            .unwrap()
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Identity => true,
            CurvePoint::Affine { x, y } => {
                x.field() == self.field && y.mul(y).map(|y2| y2 == self.rhs(x)).unwrap_or(false)
            }
        }
    }

    pub fn is_smooth_point(&self, p: &CurvePoint) -> bool {
        self.contains(p) && self.singular_point().as_ref() != Some(p)
    }

    fn check_smooth(&self, p: &CurvePoint) -> Result<(), CurveError> {
        if !self.contains(p) {
            Err(CurveError::NotOnCurve)
        } else if self.singular_point().as_ref() == Some(p) {
            Err(CurveError::SingularPoint)
        } else {
            Ok(())
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine { x, y } => CurvePoint::affine(x.clone(), y.neg()),
        }
    }

    /// Chord-tangent addition on the smooth locus. One code path covers the
    /// elliptic, multiplicative (nodal) and additive (cuspidal) groups.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check_smooth(p)?;
        self.check_smooth(q)?;
        let (x1, y1) = match p {
            CurvePoint::Identity => return Ok(q.clone()),
            CurvePoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Identity => return Ok(p.clone()),
            CurvePoint::Affine { x, y } => (x, y),
        };
        if x1 == x2 && *y1 == y2.neg() {
            return Ok(CurvePoint::Identity);
        }
        // Slope of the chord (or tangent, from 2y·y' = 12x² − g₂).
        let m = if x1 == x2 {
            let twelve = FieldElem::from_i64(self.field, 12);
            let num = twelve.mul(&x1.mul(x1)?)?.sub(&self.g2)?;
            let two_y = FieldElem::from_i64(self.field, 2).mul(y1)?;
            num.div(&two_y)?
        } else {
            y2.sub(y1)?.div(&x2.sub(x1)?)?
        };
        // Substituting y = m(x−x1)+y1 into y² = 4x³ − g₂x − g₃ gives a cubic
        // with root sum m²/4.
        let c = y1.sub(&m.mul(x1)?)?;
        let four = FieldElem::from_i64(self.field, 4);
        let x3 = m.mul(&m)?.div(&four)?.sub(x1)?.sub(x2)?;
        let y3 = m.mul(&x3)?.add(&c)?.neg();
        let r = CurvePoint::affine(x3, y3);
        debug_assert!(self.is_smooth_point(&r));
        Ok(r)
    }

    pub fn scalar_mul(&self, k: i64, p: &CurvePoint) -> Result<CurvePoint, CurveError> {
        self.check_smooth(p)?;
        let (mut k, mut base) = if k < 0 {
            (k.unsigned_abs(), self.neg(p))
        } else {
            (k as u64, p.clone())
        };
        let mut acc = CurvePoint::Identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// All smooth points, identity included. Prime fields only.
    pub fn enumerate_points(&self) -> Result<Vec<CurvePoint>, CurveError> {
        let p = match self.field {
            Field::Fp(p) => p,
            Field::Q => {
                return Err(CurveError::UnsupportedTorsion(
                    "point enumeration needs a prime field".into(),
                ))
            }
        };
        let mut roots: Vec<Vec<u64>> = vec![Vec::new(); p as usize];
        for y in 0..p {
            roots[((y as u128 * y as u128) % p as u128) as usize].push(y);
        }
        let mut pts = vec![CurvePoint::Identity];
        for x in 0..p {
            let xe = FieldElem::Fp { p, r: x };
            let rhs = self.rhs(&xe);
            let r = match rhs {
                FieldElem::Fp { r, .. } => r,
                _ => unreachable!(),
            };
            for &y in &roots[r as usize] {
                let pt = CurvePoint::affine(xe.clone(), FieldElem::Fp { p, r: y });
                if self.is_smooth_point(&pt) {
                    pts.push(pt);
                }
            }
        }
        Ok(pts)
    }

    /// Whether the node's tangent slopes lie in the field (nodal curves only).
    pub fn is_split_nodal(&self) -> Option<bool> {
        if self.classify() != FiberType::Nodal {
            return None;
        }
        // Near the node x₀ the curve is y² = 4(x−x₀)²(x−x₁) + O((x−x₀)³) with
        // x₁ = −2x₀, so the tangent slopes are ±2√(3x₀).
        let x0 = match self.singular_point().unwrap() {
            CurvePoint::Affine { x, .. } => x,
            _ => unreachable!(),
        };
        let three = FieldElem::from_i64(self.field, 3);
        Some(three.mul(&x0).unwrap().is_square())
    }

    /// All smooth points P with n·P = p₀. Enumeration over F_p; direct solve
    /// for n ≤ 4 over ℚ.
    pub fn torsion_points(&self, n: u32) -> Result<Vec<CurvePoint>, CurveError> {
        if n == 0 {
            return Err(CurveError::UnsupportedTorsion("n must be positive".into()));
        }
        let mut out = match self.field {
            Field::Fp(_) => {
                let mut v = Vec::new();
                for pt in self.enumerate_points()? {
                    if self.scalar_mul(n as i64, &pt)?.is_identity() {
                        v.push(pt);
                    }
                }
                v
            }
            Field::Q => {
                if n > 4 {
                    return Err(CurveError::UnsupportedTorsion(format!(
                        "n = {n} > 4 over Q"
                    )));
                }
                let mut candidates = vec![CurvePoint::Identity];
                candidates.extend(self.two_torsion_q());
                if n == 3 {
                    candidates.extend(self.three_torsion_q());
                }
                if n == 4 {
                    candidates.extend(self.four_torsion_q());
                }
                let mut v = Vec::new();
                for pt in candidates {
                    if self.is_smooth_point(&pt) && self.scalar_mul(n as i64, &pt)?.is_identity() {
                        v.push(pt);
                    }
                }
                v
            }
        };
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn two_torsion_q(&self) -> Vec<CurvePoint> {
        // y = 0: rational roots of 4x³ − g₂x − g₃.
        let g2 = rational_of(&self.g2);
        let g3 = rational_of(&self.g3);
        let poly = [-g3, -g2, BigRational::zero(), BigRational::from_integer(4.into())];
        rational_roots(&poly)
            .into_iter()
            .map(|x| CurvePoint::affine(FieldElem::Q(x), FieldElem::zero(Field::Q)))
            .collect()
    }

    fn three_torsion_q(&self) -> Vec<CurvePoint> {
        // x(2P) = x(P) with P not 2-torsion reduces to
        // 48x⁴ − 24g₂x² − 48g₃x − g₂² = 0.
        let g2 = rational_of(&self.g2);
        let g3 = rational_of(&self.g3);
        let poly = [
            -(&g2 * &g2),
            BigRational::from_integer((-48).into()) * &g3,
            BigRational::from_integer((-24).into()) * &g2,
            BigRational::zero(),
            BigRational::from_integer(48.into()),
        ];
        self.points_over_roots(&rational_roots(&poly))
    }

    fn four_torsion_q(&self) -> Vec<CurvePoint> {
        // 2P = (t,0) for each 2-torsion t reduces to
        // 16x⁴ − 64t·x³ + 8g₂x² + (16g₂t + 32g₃)x + (g₂² + 16g₃t) = 0.
        let g2 = rational_of(&self.g2);
        let g3 = rational_of(&self.g3);
        let mut pts = Vec::new();
        for t2 in self.two_torsion_q() {
            let t = match t2 {
                CurvePoint::Affine { x, .. } => rational_of(&x),
                _ => continue,
            };
            let poly = [
                &g2 * &g2 + BigRational::from_integer(16.into()) * &g3 * &t,
                BigRational::from_integer(16.into()) * &g2 * &t
                    + BigRational::from_integer(32.into()) * &g3,
                BigRational::from_integer(8.into()) * &g2,
                BigRational::from_integer((-64).into()) * &t,
                BigRational::from_integer(16.into()),
            ];
            pts.extend(self.points_over_roots(&rational_roots(&poly)));
        }
        pts
    }

    fn points_over_roots(&self, xs: &[BigRational]) -> Vec<CurvePoint> {
        let mut pts = Vec::new();
        for x in xs {
            let xe = FieldElem::Q(x.clone());
            if let Some(y) = self.rhs(&xe).sqrt() {
                pts.push(CurvePoint::affine(xe.clone(), y.neg()));
                pts.push(CurvePoint::affine(xe, y));
            }
        }
        pts
    }

    /// True iff the multiset of smooth points has cardinality n and group-law
    /// sum p₀, i.e. the divisor lies in |np₀|.
    pub fn in_linear_system(&self, points: &[CurvePoint], n: usize) -> Result<bool, CurveError> {
        if points.len() != n {
            return Err(CurveError::CardinalityMismatch { expected: n, got: points.len() });
        }
        let mut acc = CurvePoint::Identity;
        for p in points {
            acc = self.add(&acc, p)?;
        }
        Ok(acc.is_identity())
    }
}

fn rational_of(e: &FieldElem) -> BigRational {
    match e {
        FieldElem::Q(q) => q.clone(),
        _ => unreachable!("rational-only path"),
    }
}

/// All rational roots of a polynomial with rational coefficients
/// (coeffs[k] is the x^k coefficient), by the rational root theorem.
fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.last().map(|t| t.is_zero()).unwrap_or(false) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    // Clear denominators.
    let mut den = BigInt::from(1);
    for q in &c {
        den = num_integer::lcm(den, q.denom().clone());
    }
    let ints: Vec<BigInt> = c.iter().map(|q| (q * &den).to_integer()).collect();
    let mut roots = Vec::new();
    let eval = |x: &BigRational| -> BigRational {
        let mut acc = BigRational::zero();
        for co in ints.iter().rev() {
            acc = acc * x + BigRational::from_integer(co.clone());
        }
        acc
    };
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
    }
    let a0 = ints
        .iter()
        .find(|c| !c.is_zero())
        .expect("nonzero polynomial")
        .abs();
    let lead = ints.last().unwrap().abs();
    for p in divisors(&a0) {
        for q in divisors(&lead) {
            for sign in [1i64, -1] {
                let cand = BigRational::new(&p * BigInt::from(sign), q.clone());
                if eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n: u128 = n
        .abs()
        .try_into()
        .expect("rational root search coefficient too large");
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            out.push(BigInt::from(n / d));
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qcurve(g2: i64, g3: i64) -> WeierstrassCurve {
        WeierstrassCurve::from_i64(Field::Q, g2, g3).unwrap()
    }

    fn qpt(c: &WeierstrassCurve, x: i64, y: i64) -> CurvePoint {
        let p = CurvePoint::affine(
            FieldElem::from_i64(Field::Q, x),
            FieldElem::from_i64(Field::Q, y),
        );
        assert!(c.contains(&p), "({x},{y}) not on curve");
        p
    }

    #[test]
    fn discriminant_values() {
        let f = Field::Q;
        let d = |a, b| {
            discriminant(&FieldElem::from_i64(f, a), &FieldElem::from_i64(f, b)).unwrap()
        };
        assert_eq!(d(1, 0), FieldElem::from_i64(f, 1));
        assert_eq!(d(0, 0), FieldElem::from_i64(f, 0));
        assert_eq!(d(4, 0), FieldElem::from_i64(f, 64));
    }

    #[test]
    fn classification() {
        assert_eq!(qcurve(1, 0).classify(), FiberType::Smooth);
        assert_eq!(qcurve(0, 0).classify(), FiberType::Cuspidal);
        assert_eq!(qcurve(3, 1).classify(), FiberType::Nodal);
    }

    #[test]
    fn singular_point_location() {
        assert_eq!(qcurve(1, 0).singular_point(), None);
        assert_eq!(
            qcurve(0, 0).singular_point(),
            Some(CurvePoint::affine(
                FieldElem::from_i64(Field::Q, 0),
                FieldElem::from_i64(Field::Q, 0)
            ))
        );
        // Independent check: x₀ = −1/2 satisfies p(x₀) = p′(x₀) = 0 for
        // p = 4x³ − 3x − 1.
        let c = qcurve(3, 1);
        let x0 = FieldElem::from_rational(-1, 2);
        assert!(c.rhs(&x0).is_zero());
        let twelve = FieldElem::from_i64(Field::Q, 12);
        let deriv = twelve.mul(&x0.mul(&x0).unwrap()).unwrap().sub(c.g2()).unwrap();
        assert!(deriv.is_zero());
        assert_eq!(
            c.singular_point(),
            Some(CurvePoint::affine(x0, FieldElem::zero(Field::Q)))
        );
    }

    #[test]
    fn chord_addition_on_two_torsion() {
        // y² = 4x³−4x = 4x(x−1)(x+1); (−1,0)+(0,0) = (1,0) via the chord y=0.
        let c = qcurve(4, 0);
        let a = qpt(&c, -1, 0);
        let b = qpt(&c, 0, 0);
        let s = c.add(&a, &b).unwrap();
        assert_eq!(s, qpt(&c, 1, 0));
        // Each y=0 point is 2-torsion (vertical tangent).
        for p in [qpt(&c, -1, 0), qpt(&c, 0, 0), qpt(&c, 1, 0)] {
            assert_eq!(c.scalar_mul(2, &p).unwrap(), CurvePoint::Identity);
        }
        // Identity law.
        assert_eq!(c.add(&a, &CurvePoint::Identity).unwrap(), a);
    }

    #[test]
    fn symbolic_line_oracle_for_generic_chord() {
        // Independent oracle: intersect the chord through P, Q with the cubic
        // by expanding 4x³ − m²x² − (2mc+g₂)x − (c²+g₃) and checking the third
        // root matches add()'s x-coordinate, with y on the line, negated.
        let c = qcurve(2, 1); // smooth: Δ = 8−27 ≠ 0
        let p1 = qpt(&c, 1, 1);
        let p2 = c.add(&p1, &p1).unwrap();
        if p2.is_identity() || p1 == p2 {
            return;
        }
        let (x1, y1) = match &p1 {
            CurvePoint::Affine { x, y } => (x.clone(), y.clone()),
            _ => unreachable!(),
        };
        let (x2, y2) = match &p2 {
            CurvePoint::Affine { x, y } => (x.clone(), y.clone()),
            _ => unreachable!(),
        };
        let m = y2.sub(&y1).unwrap().div(&x2.sub(&x1).unwrap()).unwrap();
        let b = y1.sub(&m.mul(&x1).unwrap()).unwrap();
        // Third root of 4x³ − m²x² − ... : root sum is m²/4.
        let four = FieldElem::from_i64(Field::Q, 4);
        let x3 = m
            .mul(&m)
            .unwrap()
            .div(&four)
            .unwrap()
            .sub(&x1)
            .unwrap()
            .sub(&x2)
            .unwrap();
        let y_on_line = m.mul(&x3).unwrap().add(&b).unwrap();
        let sum = c.add(&p1, &p2).unwrap();
        assert_eq!(
            sum,
            CurvePoint::affine(x3, y_on_line.neg())
        );
    }

    #[test]
    fn torsion_over_q() {
        let c = qcurve(4, 0);
        assert_eq!(c.torsion_points(1).unwrap(), vec![CurvePoint::Identity]);
        let t2 = c.torsion_points(2).unwrap();
        assert_eq!(t2.len(), 4);
        for (x, y) in [(0, 0), (1, 0), (-1, 0)] {
            assert!(t2.contains(&qpt(&c, x, y)));
        }
        assert!(t2.contains(&CurvePoint::Identity));
        // 4-torsion contains the 2-torsion; x = ±... gives extra points:
        // 2P = (1,0) at x satisfying the quartic; e.g. (1+√2, ...) is
        // irrational, but (−1±√2...) — just check the subgroup property and
        // scalar_mul consistency.
        let t4 = c.torsion_points(4).unwrap();
        for p in &t2 {
            assert!(t4.contains(p));
        }
        for p in &t4 {
            assert!(c.scalar_mul(4, p).unwrap().is_identity());
        }
    }

    #[test]
    fn torsion_over_fp_matches_scalar_mul() {
        let c = WeierstrassCurve::from_i64(Field::Fp(5), 4, 0).unwrap();
        let t2 = c.torsion_points(2).unwrap();
        assert_eq!(t2.len(), 4);
        for p in c.enumerate_points().unwrap() {
            let in_t2 = t2.contains(&p);
            assert_eq!(c.scalar_mul(2, &p).unwrap().is_identity(), in_t2);
        }
    }

    #[test]
    fn singular_group_orders() {
        for p in [5u64, 7, 11, 13] {
            let cusp = WeierstrassCurve::from_i64(Field::Fp(p), 0, 0).unwrap();
            assert_eq!(cusp.classify(), FiberType::Cuspidal);
            assert_eq!(cusp.enumerate_points().unwrap().len() as u64, p);
            // Nodal family g₂ = 3k², g₃ = k³ has node at −k/2 and is split
            // iff 3·(−k/2)... search k for both behaviours.
            for k in 1..p as i64 {
                let c = WeierstrassCurve::from_i64(Field::Fp(p), 3 * k * k, k * k * k).unwrap();
                if c.classify() != FiberType::Nodal {
                    continue;
                }
                let order = c.enumerate_points().unwrap().len() as u64;
                match c.is_split_nodal() {
                    Some(true) => assert_eq!(order, p - 1),
                    Some(false) => assert_eq!(order, p + 1),
                    None => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn linear_system_membership() {
        let c = qcurve(4, 0);
        let o = CurvePoint::Identity;
        assert!(c
            .in_linear_system(&[o.clone(), o.clone(), o.clone()], 3)
            .unwrap());
        let pts = vec![qpt(&c, 0, 0), qpt(&c, 1, 0), qpt(&c, -1, 0)];
        assert!(c.in_linear_system(&pts, 3).unwrap());
        assert!(!c
            .in_linear_system(&[qpt(&c, 0, 0), qpt(&c, 1, 0)], 2)
            .unwrap());
        assert!(matches!(
            c.in_linear_system(&pts, 2),
            Err(CurveError::CardinalityMismatch { .. })
        ));
    }

    #[test]
    fn singular_point_rejected_from_group() {
        let c = qcurve(0, 0);
        let s = c.singular_point().unwrap();
        assert!(matches!(
            c.add(&s, &CurvePoint::Identity),
            Err(CurveError::SingularPoint)
        ));
        let off = CurvePoint::affine(
            FieldElem::from_i64(Field::Q, 5),
            FieldElem::from_i64(Field::Q, 5),
        );
        assert!(matches!(
            c.add(&off, &CurvePoint::Identity),
            Err(CurveError::NotOnCurve)
        ));
    }
}
