//! End-to-end acceptance suite: twelve exact criteria, one pass/fail line
//! each. Everything runs in exact rational / finite-field arithmetic.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ellbundle::bundles::{AtiyahBundle, DegreeZeroSheaf, LinearSystemDivisor};
use ellbundle::chern;
use ellbundle::cohomology::{GradedClass, RingSpec};
use ellbundle::curve::{CurvePoint, FiberType, WeierstrassCurve};
use ellbundle::field::Field;
use ellbundle::fibration::{self, PicModel, SectionFlags, SectionSpec};
use ellbundle::spectral;
use ellbundle::stability::{self, BundleNumerics, SurfaceLattice};

const TRUNC: u32 = 8;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// -- criterion 1 ------------------------------------------------------------

fn criterion_master() -> Result<(), String> {
    let count = chern::verify_master_identity(6, TRUNC)?;
    if count == 0 {
        return Err("no identities checked".into());
    }
    Ok(())
}

// -- criterion 2 ------------------------------------------------------------

fn criterion_recursion() -> Result<(), String> {
    chern::verify_modification_recursion(6, 5, TRUNC)?;
    Ok(())
}

// -- criterion 3 ------------------------------------------------------------

fn criterion_c1_c2() -> Result<(), String> {
    chern::verify_c1_c2_display(6, 5, TRUNC)?;
    Ok(())
}

// -- criterion 4 ------------------------------------------------------------

fn criterion_branches() -> Result<(), String> {
    // each branch against the Newton conversion on its own range
    chern::verify_chern_product_branches(6, 5, TRUNC)?;
    // pairwise agreement on the overlaps: branches 1/2 at a = 0, branches
    // 2/3 at a = -(n-1)
    let spec = chern::fibration_ring(TRUNC);
    for n in 2u32..=6 {
        let b1 = chern::c_ua_fibration_branch(&spec, n, 0, 1)
            .map_err(|e| e.to_string())?
            .ok_or("branch 1 undefined at a=0")?;
        let b2 = chern::c_ua_fibration_branch(&spec, n, 0, 2)
            .map_err(|e| e.to_string())?
            .ok_or("branch 2 undefined at a=0")?;
        if b1 != b2 {
            return Err(format!("branch 1/2 overlap mismatch at n={n}, a=0"));
        }
        let a = -(n as i64) + 1;
        let b2 = chern::c_ua_fibration_branch(&spec, n, a, 2)
            .map_err(|e| e.to_string())?
            .ok_or("branch 2 undefined at a=1-n")?;
        let b3 = chern::c_ua_fibration_branch(&spec, n, a, 3)
            .map_err(|e| e.to_string())?
            .ok_or("branch 3 undefined at a=1-n")?;
        if b2 != b3 {
            return Err(format!("branch 2/3 overlap mismatch at n={n}, a={a}"));
        }
    }
    Ok(())
}

// -- criterion 5 ------------------------------------------------------------

fn criterion_specialization() -> Result<(), String> {
    chern::verify_single_curve_specialization(6, TRUNC)?;
    chern::verify_wn_restriction(6, TRUNC)?;
    Ok(())
}

// -- criterion 6 ------------------------------------------------------------

fn section(l: &[i64], alpha: &[i64], n: u32, dim_b: u32) -> SectionSpec {
    SectionSpec::new(
        PicModel {
            rank: l.len(),
            l: l.to_vec(),
            alpha: alpha.to_vec(),
            h: None,
            dim_b,
        },
        n,
        SectionFlags::default(),
    )
    .unwrap()
}

fn criterion_section_coherence() -> Result<(), String> {
    let spec = RingSpec::section(TRUNC);
    let l = GradedClass::named_generator(&spec, "L").map_err(|e| e.to_string())?;
    let alpha = GradedClass::named_generator(&spec, "alpha").map_err(|e| e.to_string())?;
    for n in 2u32..=6 {
        for a in -3i64..=3 {
            let s = section(&[1, 0], &[0, 1], n, 2);
            // determinant = weight-1 part of the character
            let ch = fibration::ch_vaa(&spec, &s, a).map_err(|e| e.to_string())?;
            let det = fibration::det_vaa(&s, a);
            let expected = l
                .scale_int(det[0])
                .add(&alpha.scale_int(det[1]))
                .map_err(|e| e.to_string())?;
            if ch.weight_part(1) != expected {
                return Err(format!("det mismatch at n={n}, a={a}"));
            }
            // trivial-section formula: ch = e^{aL} + ... + e^{(a+n-1)L}
            let trivial = section(&[1], &[0], n, 2);
            let ch0 = fibration::ch_vaa(&spec, &trivial, a).map_err(|e| e.to_string())?;
            let mut sum = GradedClass::zero(&spec);
            for i in a..a + n as i64 {
                sum = sum
                    .add(&l.scale_int(i).exp().map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
            }
            if ch0 != sum {
                return Err(format!("trivial-section formula fails at n={n}, a={a}"));
            }
            // rank-increment recursion with [D] = alpha - (n-1)L
            let prev = section(&[1, 0], &[0, 1], n - 1, 2);
            let (inc, d) = fibration::reducible_step(&spec, &s, a).map_err(|e| e.to_string())?;
            let diff = ch
                .sub(&fibration::ch_vaa(&spec, &prev, a).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if diff != inc {
                return Err(format!("recursion fails at n={n}, a={a}"));
            }
            if d != vec![-(n as i64 - 1), 1] {
                return Err(format!("[D] wrong at n={n}"));
            }
        }
    }
    Ok(())
}

// -- criterion 7 ------------------------------------------------------------

fn criterion_trivial_det() -> Result<(), String> {
    for n in 2u32..=6 {
        for l0 in -3i64..=3 {
            for l1 in -3i64..=3 {
                for a0 in -3i64..=3 {
                    for a1 in -3i64..=3 {
                        let s = section(&[l0, l1], &[a0, a1], n, 2);
                        let guaranteed = n % 2 == 1
                            || (l0 % 2 == 0 && l1 % 2 == 0)
                            || ((a0 - l0) % 2 == 0 && (a1 - l1) % 2 == 0);
                        if guaranteed && fibration::trivial_det_solve(&s).is_none() {
                            return Err(format!(
                                "no solution at n={n} L=({l0},{l1}) alpha=({a0},{a1})"
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

// -- criterion 8 ------------------------------------------------------------

fn split_nodal_curve(p: u64) -> WeierstrassCurve {
    // g2 = 3k^2, g3 = k^3 is nodal for k != 0; pick a k with split tangents
    for k in 1..p as i64 {
        let c = WeierstrassCurve::from_i64(Field::Fp(p), 3 * k * k, k * k * k).unwrap();
        if c.is_split_nodal() == Some(true) {
            return c;
        }
    }
    unreachable!("every F_p, p > 3, admits a split nodal member");
}

fn criterion_group_law() -> Result<(), String> {
    for p in [5u64, 7, 11, 13] {
        let smooth = {
            // first smooth member of a small coefficient scan
            let mut found = None;
            'scan: for g2 in 0..p as i64 {
                for g3 in 1..p as i64 {
                    let c = WeierstrassCurve::from_i64(Field::Fp(p), g2, g3).unwrap();
                    if c.classify() == FiberType::Smooth {
                        found = Some(c);
                        break 'scan;
                    }
                }
            }
            found.unwrap()
        };
        let nodal = split_nodal_curve(p);
        let cusp = WeierstrassCurve::from_i64(Field::Fp(p), 0, 0).unwrap();
        for curve in [&smooth, &nodal, &cusp] {
            let pts = curve.enumerate_points().map_err(|e| e.to_string())?;
            let mut rng = ChaCha8Rng::seed_from_u64(p);
            for _ in 0..1000 {
                let a = &pts[rng.gen_range(0..pts.len())];
                let b = &pts[rng.gen_range(0..pts.len())];
                let c = &pts[rng.gen_range(0..pts.len())];
                let ab_c = curve
                    .add(&curve.add(a, b).map_err(|e| e.to_string())?, c)
                    .map_err(|e| e.to_string())?;
                let a_bc = curve
                    .add(a, &curve.add(b, c).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                if ab_c != a_bc {
                    return Err(format!("associativity fails over F{p}"));
                }
                if curve.add(a, &CurvePoint::Identity).map_err(|e| e.to_string())? != *a {
                    return Err(format!("identity fails over F{p}"));
                }
                if curve.add(a, &curve.neg(a)).map_err(|e| e.to_string())? != CurvePoint::Identity {
                    return Err(format!("inverse fails over F{p}"));
                }
            }
        }
        // smooth-locus orders of the singular members
        if cusp.enumerate_points().unwrap().len() as u64 != p {
            return Err(format!("cuspidal order != {p}"));
        }
        if nodal.enumerate_points().unwrap().len() as u64 != p - 1 {
            return Err(format!("split nodal order != {}", p - 1));
        }
    }
    Ok(())
}

// -- criterion 9 ------------------------------------------------------------

fn criterion_spectral_ramification() -> Result<(), String> {
    for field in [Field::Q, Field::Fp(5)] {
        let curve = WeierstrassCurve::from_i64(field, 4, 0).unwrap();
        let torsion = curve.torsion_points(2).map_err(|e| e.to_string())?;
        if torsion.len() != 4 {
            return Err(format!("|E[2]| = {} over {field:?}", torsion.len()));
        }
        let locus = spectral::full_ramification_locus(&curve, 2).map_err(|e| e.to_string())?;
        if locus.len() != 4 {
            return Err(format!("locus cardinality {} over {field:?}", locus.len()));
        }
        let got: BTreeSet<Vec<(CurvePoint, u32)>> = locus
            .iter()
            .map(|d| d.smooth_part().iter().map(|(p, &m)| (p.clone(), m)).collect())
            .collect();
        let expected: BTreeSet<Vec<(CurvePoint, u32)>> =
            torsion.iter().map(|e| vec![(e.clone(), 2)]).collect();
        if got != expected {
            return Err(format!("locus is not {{2e : e in E[2]}} over {field:?}"));
        }
        for d in &locus {
            let f = spectral::fiber(d).map_err(|e| e.to_string())?;
            if !f.is_total_ramification() {
                return Err("fiber not totally ramified".into());
            }
        }
    }
    Ok(())
}

// -- criterion 10 -----------------------------------------------------------

fn partitions(n: u32) -> Vec<Vec<u32>> {
    fn go(n: u32, max: u32) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (1..=n.min(max)).rev() {
            for mut rest in go(n - first, first) {
                let mut p = vec![first];
                p.append(&mut rest);
                out.push(p);
            }
        }
        out
    }
    go(n, n)
}

fn criterion_bundle_algebra() -> Result<(), String> {
    let curve = WeierstrassCurve::from_i64(Field::Fp(7), 1, 1).unwrap();
    assert_eq!(curve.classify(), FiberType::Smooth);
    let pts = curve.enumerate_points().map_err(|e| e.to_string())?;
    let sheaves: Vec<DegreeZeroSheaf> = pts
        .iter()
        .take(3)
        .map(|p| DegreeZeroSheaf::LineBundle(p.clone()))
        .collect();
    let mut checked = 0u64;
    for total in 1u32..=6 {
        for r1 in 0..=total {
            for r2 in 0..=(total - r1) {
                let r3 = total - r1 - r2;
                for p1 in partitions(r1) {
                    for p2 in partitions(r2) {
                        for p3 in partitions(r3) {
                            let mut comps = Vec::new();
                            for (sheaf, parts) in
                                sheaves.iter().zip([&p1, &p2, &p3])
                            {
                                if !parts.is_empty() {
                                    comps.push((sheaf.clone(), parts.clone()));
                                }
                            }
                            if comps.is_empty() {
                                continue;
                            }
                            let v = AtiyahBundle::new(curve.clone(), comps)
                                .map_err(|e| e.to_string())?;
                            let hom = v.dim_hom(&v).map_err(|e| e.to_string())?;
                            let regular = v.is_regular().map_err(|e| e.to_string())?;
                            if hom < v.rank() as u64 {
                                return Err(format!("dim Hom < rank for {v:?}"));
                            }
                            if (hom == v.rank() as u64) != regular {
                                return Err(format!("regularity mismatch for {v:?}"));
                            }
                            // zeta / regular-representative round trip
                            let z = v.zeta();
                            let rr = z.regular_representative().map_err(|e| e.to_string())?;
                            if !rr.is_regular().map_err(|e| e.to_string())? {
                                return Err("representative not regular".into());
                            }
                            if rr.zeta().smooth_part() != z.smooth_part() {
                                return Err("zeta round trip fails".into());
                            }
                            if regular && rr != v {
                                return Err("regular bundle not fixed by round trip".into());
                            }
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    if checked < 100 {
        return Err(format!("only {checked} bundles enumerated"));
    }
    Ok(())
}

// -- criterion 11 -----------------------------------------------------------

fn criterion_stability() -> Result<(), String> {
    let lattice = SurfaceLattice::new(
        vec!["sigma".into(), "f".into()],
        vec![vec![-1, 1], vec![1, 0]],
        vec![1, 2],
        1,
    )
    .map_err(|e| e.to_string())?;
    // Bogomolov identity on 10^3 random Whitney splits
    let mut rng = ChaCha8Rng::seed_from_u64(715);
    for _ in 0..1000 {
        let v1 = BundleNumerics {
            n: rng.gen_range(1..=3),
            c1: vec![rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
            c2: rng.gen_range(-4..=4),
        };
        let v2 = BundleNumerics {
            n: rng.gen_range(1..=3),
            c1: vec![rng.gen_range(-5..=5), rng.gen_range(-5..=5)],
            c2: rng.gen_range(-4..=4),
        };
        if !stability::bogomolov_identity_check(&lattice, &v1, &v2).map_err(|e| e.to_string())? {
            return Err(format!("Bogomolov identity fails for {v1:?} + {v2:?}"));
        }
    }
    // wall search at and below the threshold
    let t0 = stability::stability_threshold(2, 1).map_err(|e| e.to_string())?;
    if t0 != num_rational::Rational64::new(2, 1) {
        return Err(format!("t0 = {t0}, expected 2"));
    }
    let at = stability::wall_search(&lattice, 2, 1, t0, 10).map_err(|e| e.to_string())?;
    if !at.is_empty() {
        return Err(format!("walls at t0: {at:?}"));
    }
    let below = stability::wall_search(
        &lattice,
        2,
        1,
        num_rational::Rational64::new(0, 1),
        10,
    )
    .map_err(|e| e.to_string())?;
    if !below.contains(&vec![1, -1]) {
        return Err("no destabilizing witness at t = 0".into());
    }
    // the sigma*alpha coefficient of ch2 V_{A,a} is -1 over a curve base,
    // so c2 = (deg M) * (sigma.alpha-part of the surface class)
    let spec = RingSpec::section_over_curve(TRUNC);
    for n in 2u32..=6 {
        for a in -3i64..=3 {
            let s = section(&[1], &[3], n, 1);
            let ch = fibration::ch_vaa(&spec, &s, a).map_err(|e| e.to_string())?;
            let coeff = ch.coefficient(&vec![1, 1, 0]);
            if coeff != -rat(1) {
                return Err(format!("sigma*alpha coefficient {coeff} at n={n}, a={a}"));
            }
        }
    }
    Ok(())
}

// -- criterion 12 -----------------------------------------------------------

fn criterion_splitting_types() -> Result<(), String> {
    let spec = chern::fibration_ring(TRUNC);
    for n in 2u32..=5 {
        // table off p0: O^{1-a} + O(-1)^{n-1+a} on the nominal range
        for a in (2 - n as i64)..=1 {
            let t = fibration::splitting_type_slice(n, a, false, false)
                .map_err(|e| e.to_string())?;
            let mut expected = vec![0i64; (1 - a) as usize];
            expected.extend(vec![-1i64; (n as i64 - 1 + a) as usize]);
            if t != expected {
                return Err(format!("table mismatch at n={n}, a={a}: {t:?}"));
            }
        }
        // table at p0, a = 1: O(-k-1)^{n-2} + O(-k) + O(-k-2)
        for k in -2i64..=2 {
            let a = 1 + n as i64 * k;
            let t = fibration::splitting_type_slice(n, a, true, true)
                .map_err(|e| e.to_string())?;
            let mut expected = vec![-k, -k - 2];
            expected.extend(vec![-k - 1; n as usize - 2]);
            expected.sort_unstable();
            expected.reverse();
            if t != expected {
                return Err(format!("p0 table mismatch at n={n}, k={k}: {t:?}"));
            }
        }
        // degree sum = -(n+a-1) matches the restriction of c1
        for a in -6i64..=6 {
            for at_p0 in [false, true] {
                let t = fibration::splitting_type_slice(n, a, at_p0, true)
                    .map_err(|e| e.to_string())?;
                let sum: i64 = t.iter().sum();
                if sum != -(n as i64 + a - 1) {
                    return Err(format!("degree sum {sum} at n={n}, a={a}"));
                }
                // cross-check against c1(U_a): the zeta-coefficient is the
                // fiber degree of det, i.e. the degree on a slice
                let c1 = chern::c1_ua_display(&spec, n, a).map_err(|e| e.to_string())?;
                let zeta_coeff = c1.coefficient(&vec![0, 1, 0]);
                if zeta_coeff != rat(sum) {
                    return Err(format!("c1 restriction mismatch at n={n}, a={a}"));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Result<(), String>)> = vec![
        ("criterion 1 (master identity)", criterion_master),
        ("criterion 2 (modification recursion)", criterion_recursion),
        ("criterion 3 (c1/c2 extraction)", criterion_c1_c2),
        ("criterion 4 (product-formula branches)", criterion_branches),
        ("criterion 5 (single-curve specialization)", criterion_specialization),
        ("criterion 6 (section coherence)", criterion_section_coherence),
        ("criterion 7 (trivial determinant)", criterion_trivial_det),
        ("criterion 8 (group law)", criterion_group_law),
        ("criterion 9 (spectral ramification)", criterion_spectral_ramification),
        ("criterion 10 (bundle algebra)", criterion_bundle_algebra),
        ("criterion 11 (stability)", criterion_stability),
        ("criterion 12 (splitting types)", criterion_splitting_types),
    ];
    let mut failures = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(()) => println!("{name}: PASS"),
            Err(e) => {
                println!("{name}: FAIL ({e})");
                failures.push(format!("{name}: {e}"));
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
