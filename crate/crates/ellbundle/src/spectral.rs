//! Combinatorics of the n-sheeted spectral cover ν: T → |np₀| of a single
//! curve, reduced to multiset statements about divisors: fibers and their
//! ramification indices, the n² order-n ramification divisors, the fibers of
//! the tautological map r over a fixed point, and a splitness certificate for
//! sampled families.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::bundles::{BundleError, LinearSystemDivisor};
use crate::curve::{CurveError, CurvePoint, WeierstrassCurve};
use crate::field::Field;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Bundle(#[from] BundleError),
    #[error("divisor has singular support")]
    SingularSupport,
    #[error("point must be a smooth point of the curve")]
    BadPoint,
    #[error("n must be at least 2")]
    RankTooSmall,
    #[error("family fibers have inconsistent degrees")]
    InconsistentRanks,
    #[error("sampling |np0 - e| for n >= 3 needs a prime field")]
    SamplingUnsupported,
}

/// The fiber of ν over a divisor D ∈ |np₀|: the distinct points of D with
/// their multiplicities as ramification indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralFiber {
    base: LinearSystemDivisor,
    points: Vec<(CurvePoint, u32)>,
}

impl SpectralFiber {
    pub fn base(&self) -> &LinearSystemDivisor {
        &self.base
    }

    pub fn points(&self) -> &[(CurvePoint, u32)] {
        &self.points
    }

    pub fn total_index(&self) -> u32 {
        self.points.iter().map(|(_, m)| m).sum()
    }

    pub fn is_unramified(&self) -> bool {
        self.points.iter().all(|&(_, m)| m == 1)
    }

    /// Order-n ramification: the fiber is a single point of index n.
    pub fn is_total_ramification(&self) -> bool {
        self.points.len() == 1 && self.points[0].1 == self.base.degree()
    }
}

/// The fiber of the spectral cover over a smooth-supported divisor.
pub fn fiber(d: &LinearSystemDivisor) -> Result<SpectralFiber, SpectralError> {
    if d.singular_mult() > 0 {
        return Err(SpectralError::SingularSupport);
    }
    let points: Vec<(CurvePoint, u32)> = d
        .smooth_part()
        .iter()
        .map(|(p, &m)| (p.clone(), m))
        .collect();
    Ok(SpectralFiber { base: d.clone(), points })
}

/// The divisors of order-n ramification: {n·e : e ∈ E[n]} — one per
/// n-torsion point, n² of them when the full torsion is rational.
pub fn full_ramification_locus(
    curve: &WeierstrassCurve,
    n: u32,
) -> Result<Vec<LinearSystemDivisor>, SpectralError> {
    let mut out = Vec::new();
    for e in curve.torsion_points(n)? {
        out.push(LinearSystemDivisor::new(curve.clone(), vec![(e, n)], 0)?);
    }
    Ok(out)
}

/// Sampled divisors from the fiber |np₀ − e| of the tautological map r over a
/// smooth point e: each has e in its support and group-law sum p₀. For n = 2
/// the fiber is the single divisor e + (−e); for n ≥ 3 over a prime field the
/// free points are drawn deterministically from the point enumeration, and
/// over ℚ from the multiples of e.
pub fn fiber_of_r(
    curve: &WeierstrassCurve,
    n: u32,
    e: &CurvePoint,
    samples: usize,
) -> Result<Vec<LinearSystemDivisor>, SpectralError> {
    if n < 2 {
        return Err(SpectralError::RankTooSmall);
    }
    if !curve.is_smooth_point(e) {
        return Err(SpectralError::BadPoint);
    }
    if n == 2 {
        let d = LinearSystemDivisor::new(
            curve.clone(),
            vec![(e.clone(), 1), (curve.neg(e), 1)],
            0,
        )?;
        return Ok(vec![d]);
    }
    let free_pool: Vec<CurvePoint> = match curve.field() {
        Field::Fp(_) => curve.enumerate_points()?,
        Field::Q => (1..=samples as i64 + 1)
            .map(|k| curve.scalar_mul(k, e))
            .collect::<Result<_, _>>()?,
    };
    let mut out = Vec::new();
    let mut idx = 0usize;
    while out.len() < samples && idx + (n as usize - 2) <= free_pool.len() {
        let free: Vec<CurvePoint> = free_pool[idx..idx + n as usize - 2].to_vec();
        idx += 1;
        let mut sum = e.clone();
        for p in &free {
            sum = curve.add(&sum, p)?;
        }
        let last = curve.neg(&sum);
        let mut points = vec![(e.clone(), 1)];
        points.extend(free.into_iter().map(|p| (p, 1)));
        points.push((last, 1));
        let d = LinearSystemDivisor::new(curve.clone(), points, 0)?;
        debug_assert!(d.is_in_np0().unwrap());
        debug_assert_eq!(d.degree(), n);
        out.push(d);
    }
    Ok(out)
}

/// Heuristic irreducibility certificate for a sampled family of fibers of a
/// spectral cover C → B: returns false when the sample admits a constant
/// sub-multisection of degree r with 0 < r < n (the matching between
/// consecutive sample fibers is by exact coordinate equality, so this is
/// exact for families split off by constant sections, e.g. a section lying in
/// the subbundle ℋ), true otherwise.
pub fn cover_is_irreducible(family: &[LinearSystemDivisor]) -> Result<bool, SpectralError> {
    let Some(first) = family.first() else {
        return Err(SpectralError::InconsistentRanks);
    };
    let n = first.degree();
    if family.iter().any(|d| d.degree() != n) {
        return Err(SpectralError::InconsistentRanks);
    }
    // Expand each fiber into a point → multiplicity map (the singular point,
    // if present, participates as one more support point).
    let expand = |d: &LinearSystemDivisor| -> BTreeMap<Option<CurvePoint>, u32> {
        let mut m: BTreeMap<Option<CurvePoint>, u32> = BTreeMap::new();
        for (p, &k) in d.smooth_part() {
            m.insert(Some(p.clone()), k);
        }
        if d.singular_mult() > 0 {
            m.insert(None, d.singular_mult());
        }
        m
    };
    let fibers: Vec<BTreeMap<Option<CurvePoint>, u32>> = family.iter().map(expand).collect();
    // The constant sub-multisets common to every fiber: for each support
    // point take the minimum multiplicity across the family. Any nonempty
    // proper sub-multiset of that intersection is a constant sub-multisection.
    let mut common: BTreeMap<Option<CurvePoint>, u32> = fibers[0].clone();
    for f in &fibers[1..] {
        common = common
            .into_iter()
            .filter_map(|(p, m)| f.get(&p).map(|&m2| (p, m.min(m2))))
            .filter(|&(_, m)| m > 0)
            .collect();
    }
    let common_degree: u32 = common.values().sum();
    // A constant sub-multisection of degree r exists for any 0 < r ≤ degree
    // of the common part; r = 1 already splits the cover when n ≥ 2.
    Ok(!(common_degree > 0 && n >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;

    fn qcurve(g2: i64, g3: i64) -> WeierstrassCurve {
        WeierstrassCurve::from_i64(Field::Q, g2, g3).unwrap()
    }

    fn qpt(c: &WeierstrassCurve, x: i64, y: i64) -> CurvePoint {
        let p = CurvePoint::affine(
            FieldElem::from_i64(Field::Q, x),
            FieldElem::from_i64(Field::Q, y),
        );
        assert!(c.contains(&p));
        p
    }

    fn fppt(c: &WeierstrassCurve, p: u64, x: i64, y: i64) -> CurvePoint {
        let pt = CurvePoint::affine(
            FieldElem::from_i64(Field::Fp(p), x),
            FieldElem::from_i64(Field::Fp(p), y),
        );
        assert!(c.contains(&pt));
        pt
    }

    #[test]
    fn fiber_indices() {
        let c = qcurve(4, 0);
        // n·p0: single point of index n.
        let d = LinearSystemDivisor::new(c.clone(), vec![(CurvePoint::Identity, 3)], 0).unwrap();
        let f = fiber(&d).unwrap();
        assert_eq!(f.points().len(), 1);
        assert!(f.is_total_ramification());
        assert_eq!(f.total_index(), 3);
        // 2e + e': indices {2,1}.
        let d2 = LinearSystemDivisor::new(
            c.clone(),
            vec![(qpt(&c, 0, 0), 2), (qpt(&c, 1, 0), 1)],
            0,
        )
        .unwrap();
        let f2 = fiber(&d2).unwrap();
        let mut idx: Vec<u32> = f2.points().iter().map(|&(_, m)| m).collect();
        idx.sort();
        assert_eq!(idx, vec![1, 2]);
        assert!(!f2.is_unramified());
    }

    #[test]
    fn fiber_over_fp_unramified_pair() {
        // Over F5 on g2=4, g3=0: (2,3) = −(2,2), so (2,2)+(2,3) sums to p0.
        let c = WeierstrassCurve::from_i64(Field::Fp(5), 4, 0).unwrap();
        let e = fppt(&c, 5, 2, 2);
        let me = fppt(&c, 5, 2, 3);
        assert_eq!(c.add(&e, &me).unwrap(), CurvePoint::Identity);
        let d = LinearSystemDivisor::new(c.clone(), vec![(e, 1), (me, 1)], 0).unwrap();
        assert!(d.is_in_np0().unwrap());
        let f = fiber(&d).unwrap();
        assert_eq!(f.points().len(), 2);
        assert!(f.is_unramified());
    }

    #[test]
    fn singular_support_rejected() {
        let nodal = qcurve(3, 1);
        let d = LinearSystemDivisor::new(nodal, vec![], 2).unwrap();
        assert!(matches!(fiber(&d), Err(SpectralError::SingularSupport)));
    }

    #[test]
    fn ramification_locus() {
        let c = qcurve(4, 0);
        let r1 = full_ramification_locus(&c, 1).unwrap();
        assert_eq!(r1.len(), 1);
        assert_eq!(r1[0].smooth_part().get(&CurvePoint::Identity), Some(&1));
        let r2 = full_ramification_locus(&c, 2).unwrap();
        assert_eq!(r2.len(), 4);
        for d in &r2 {
            assert!(fiber(d).unwrap().is_total_ramification());
            assert!(d.is_in_np0().unwrap());
        }
        let c5 = WeierstrassCurve::from_i64(Field::Fp(5), 4, 0).unwrap();
        assert_eq!(full_ramification_locus(&c5, 2).unwrap().len(), 4);
    }

    #[test]
    fn fiber_of_r_n2_unique() {
        let c = qcurve(4, 0);
        let e = qpt(&c, 0, 0);
        let ds = fiber_of_r(&c, 2, &e, 5).unwrap();
        assert_eq!(ds.len(), 1);
        assert!(ds[0].smooth_part().contains_key(&e));
        assert!(ds[0].is_in_np0().unwrap());
    }

    #[test]
    fn fiber_of_r_samples_postconditions() {
        let c = WeierstrassCurve::from_i64(Field::Fp(13), 1, 0).unwrap();
        let pts = c.enumerate_points().unwrap();
        let e = pts.iter().find(|p| !p.is_identity()).unwrap().clone();
        for n in [3u32, 4] {
            let ds = fiber_of_r(&c, n, &e, 6).unwrap();
            assert!(!ds.is_empty());
            for d in ds {
                assert_eq!(d.degree(), n);
                assert!(d.smooth_part().contains_key(&e));
                assert!(d.is_in_np0().unwrap());
            }
        }
    }

    #[test]
    fn fiber_of_r_rejects_singular_point() {
        let nodal = qcurve(3, 1);
        let s = nodal.singular_point().unwrap();
        assert!(matches!(
            fiber_of_r(&nodal, 2, &s, 1),
            Err(SpectralError::BadPoint)
        ));
    }

    #[test]
    fn branch_divisor_count_n2() {
        // For n = 2 over F_p the branch divisors (index-2 fibers) are exactly
        // the 2·e with e ∈ E[2].
        for p in [5u64, 7, 11, 13] {
            let c = WeierstrassCurve::from_i64(Field::Fp(p), 4, 0).unwrap();
            let torsion2 = c.torsion_points(2).unwrap();
            let branches = full_ramification_locus(&c, 2).unwrap();
            assert_eq!(branches.len(), torsion2.len());
        }
    }

    #[test]
    fn irreducibility_certificate() {
        let c = WeierstrassCurve::from_i64(Field::Fp(13), 1, 0).unwrap();
        let pts: Vec<CurvePoint> = c
            .enumerate_points()
            .unwrap()
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect();
        // Family with one point always p0 (a section lying in H): reducible.
        let mut fam = Vec::new();
        for i in 0..4 {
            let e = pts[i].clone();
            let rest = c.neg(&e);
            fam.push(
                LinearSystemDivisor::new(
                    c.clone(),
                    vec![(CurvePoint::Identity, 1), (e, 1), (rest, 1)],
                    0,
                )
                .unwrap(),
            );
        }
        assert!(!cover_is_irreducible(&fam).unwrap());
        // Fully split constant family: reducible.
        let split = vec![
            LinearSystemDivisor::new(
                c.clone(),
                vec![(pts[0].clone(), 1), (c.neg(&pts[0]), 1)],
                0,
            )
            .unwrap();
            5
        ];
        assert!(!cover_is_irreducible(&split).unwrap());
        // Generic family with no constant subfamily: certified irreducible.
        let mut generic = Vec::new();
        for i in 0..4 {
            let e = pts[2 * i].clone();
            let f = pts[2 * i + 1].clone();
            let sum = c.add(&e, &f).unwrap();
            let last = c.neg(&sum);
            generic.push(
                LinearSystemDivisor::new(c.clone(), vec![(e, 1), (f, 1), (last, 1)], 0).unwrap(),
            );
        }
        assert!(cover_is_irreducible(&generic).unwrap());
        // Degree mismatch is rejected.
        let mixed = vec![generic[0].clone(), split[0].clone()];
        assert!(matches!(
            cover_is_irreducible(&mixed),
            Err(SpectralError::InconsistentRanks)
        ));
    }
}
