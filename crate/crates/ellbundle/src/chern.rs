//! The universal-bundle characteristic-class formula library.
//!
//! Single-curve formulas live in ℚ[h,t]/(h^n, t²) (h the hyperplane class of
//! |np₀| ≅ ℙ^{n−1}, t = [p₀] on the curve); fibration formulas live in
//! ℚ[σ,ζ,L]/(σ²+Lσ). Everything is built from exponentials of weight-1
//! classes and exact series division, and cross-checked by the identity
//! suites at the bottom.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::cohomology::{series_ratio, p_of, ChernData, GradedClass, RingError, RingSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("parameter out of range: {0}")]
    Range(String),
    #[error("ring is missing generator {0:?}")]
    MissingGenerator(String),
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn gen(spec: &Arc<RingSpec>, name: &str) -> Result<GradedClass, FormulaError> {
    GradedClass::named_generator(spec, name)
        .map_err(|_| FormulaError::MissingGenerator(name.to_string()))
}

/// (σ, middle generator, L) of a fibration-style ring; the middle generator
/// is ζ on the relative moduli space and α on a section ring.
fn fib_gens(
    spec: &Arc<RingSpec>,
) -> Result<(GradedClass, GradedClass, GradedClass, usize), FormulaError> {
    let sigma = gen(spec, "sigma")?;
    let l = gen(spec, "L")?;
    let l_index = spec
        .generator_index("L")
        .ok_or_else(|| FormulaError::MissingGenerator("L".into()))?;
    let mid_name = spec
        .names()
        .iter()
        .find(|n| *n != "sigma" && *n != "L")
        .ok_or_else(|| FormulaError::MissingGenerator("zeta".into()))?
        .clone();
    let mid = gen(spec, &mid_name)?;
    Ok((sigma, mid, l, l_index))
}

fn check_d(n: u32, d: u32) -> Result<(), FormulaError> {
    if d == 0 || d >= n {
        Err(FormulaError::Range(format!("need 1 <= d <= n-1, got n={n}, d={d}")))
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Single curve: ℚ[h,t]/(h^n, t²).
// ---------------------------------------------------------------------------

pub fn single_curve_ring(n: u32, truncation: u32) -> Arc<RingSpec> {
    RingSpec::single_curve(n, truncation)
}

/// ch U₀ = n·e^{−h} + (1−t)(1−e^{−h}).
pub fn ch_u0_singlecurve(spec: &Arc<RingSpec>, n: u32) -> Result<GradedClass, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Range("need n >= 2".into()));
    }
    ch_ua_twist_singlecurve(spec, n, 0, 0)
}

/// c(U₀) = (1 − h + th)(1 − h)^{n−2}.
pub fn c_u0_singlecurve(spec: &Arc<RingSpec>, n: u32) -> Result<GradedClass, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Range("need n >= 2".into()));
    }
    c_ua_singlecurve(spec, n, 0)
}

/// c(U_a) = (1 − h + th)(1 − h)^{a+n−2}; negative exponents expand as
/// geometric series.
pub fn c_ua_singlecurve(spec: &Arc<RingSpec>, n: u32, a: i64) -> Result<GradedClass, FormulaError> {
    let h = gen(spec, "h")?;
    let t = gen(spec, "t")?;
    let one = GradedClass::one(spec);
    let lead = one.sub(&h)?.add(&t.mul(&h)?)?;
    let base = one.sub(&h)?;
    let e = a + n as i64 - 2;
    let power = int_power(&base, e)?;
    Ok(lead.mul(&power)?)
}

fn int_power(x: &GradedClass, e: i64) -> Result<GradedClass, FormulaError> {
    if e >= 0 {
        Ok(x.pow(e as u32)?)
    } else {
        Ok(x.inverse()?.pow((-e) as u32)?)
    }
}

/// ch(U_a ⊗ O(b)) = n·e^{(b−1)h} + (1 − a − t)(e^{bh} − e^{(b−1)h}).
pub fn ch_ua_twist_singlecurve(
    spec: &Arc<RingSpec>,
    n: u32,
    a: i64,
    b: i64,
) -> Result<GradedClass, FormulaError> {
    let h = gen(spec, "h")?;
    let t = gen(spec, "t")?;
    let e_bm1 = h.scale_int(b - 1).exp()?;
    let e_b = h.scale_int(b).exp()?;
    let factor = GradedClass::int(spec, 1 - a).sub(&t)?;
    Ok(e_bm1
        .scale_int(n as i64)
        .add(&factor.mul(&e_b.sub(&e_bm1)?)?)?)
}

/// ch U(d) = (d − t)e^h + (n − d) + t.
pub fn ch_ud_singlecurve(spec: &Arc<RingSpec>, n: u32, d: u32) -> Result<GradedClass, FormulaError> {
    check_d(n, d)?;
    let h = gen(spec, "h")?;
    let t = gen(spec, "t")?;
    let eh = h.exp()?;
    Ok(GradedClass::int(spec, d as i64)
        .sub(&t)?
        .mul(&eh)?
        .add(&GradedClass::int(spec, (n - d) as i64))?
        .add(&t)?)
}

/// c(U(d)) = (1 + h + th)(1 + h)^{d−1}; equivalently
/// (1 − t + h)(1 + h)^{d−1}(1 + t) from the K-theory splitting, which is
/// what the c(U₀) corollary and the ζ → h specialization of the fibration
/// formula require.
pub fn c_ud_singlecurve(spec: &Arc<RingSpec>, n: u32, d: u32) -> Result<GradedClass, FormulaError> {
    check_d(n, d)?;
    let h = gen(spec, "h")?;
    let t = gen(spec, "t")?;
    let one = GradedClass::one(spec);
    let lead = one.add(&h)?.add(&t.mul(&h)?)?;
    Ok(lead.mul(&one.add(&h)?.pow(d - 1)?)?)
}

// ---------------------------------------------------------------------------
// Fibration: ℚ[σ,ζ,L]/(σ² + Lσ).
// ---------------------------------------------------------------------------

pub fn fibration_ring(truncation: u32) -> Arc<RingSpec> {
    RingSpec::fibration(truncation)
}

/// ch 𝐔(d) = (e^{−σ} + e^{−L} + … + e^{−(d−1)L})·e^{ζ−L}
///           + (e^{σ} + e^{L} + … + e^{(n−d−1)L}).
pub fn ch_ud_fibration(spec: &Arc<RingSpec>, n: u32, d: u32) -> Result<GradedClass, FormulaError> {
    check_d(n, d)?;
    let (sigma, zeta, l, _) = fib_gens(spec)?;
    let mut first = sigma.neg().exp()?;
    for r in 1..d as i64 {
        first = first.add(&l.scale_int(-r).exp()?)?;
    }
    let mut second = sigma.exp()?;
    for s in 1..(n - d) as i64 {
        second = second.add(&l.scale_int(s).exp()?)?;
    }
    Ok(first.mul(&zeta.sub(&l)?.exp()?)?.add(&second)?)
}

/// ch 𝒰_a = e^{−ζ}·(1−e^{(a+n)L})/(1−e^L) − (1−e^{aL})/(1−e^L)
///          + e^{−σ}(1−e^{−ζ}).
///
/// Also computes ch V_{A,a} on a section ring (middle generator α).
pub fn ch_ua_fibration(spec: &Arc<RingSpec>, n: u32, a: i64) -> Result<GradedClass, FormulaError> {
    let (sigma, zeta, _, l_index) = fib_gens(spec)?;
    let r_big = series_ratio(spec, a + n as i64, l_index)?;
    let r_small = series_ratio(spec, a, l_index)?;
    let one = GradedClass::one(spec);
    Ok(zeta
        .neg()
        .exp()?
        .mul(&r_big)?
        .sub(&r_small)?
        .add(&sigma.neg().exp()?.mul(&one.sub(&zeta.neg().exp()?)?)?)?)
}

/// c(𝐔(d)) = (1 + ζ − L + ζσ)·∏_{r=1}^{d−1}(1 − (r+1)L + ζ)
///           ·∏_{s=1}^{n−d−1}(1 + sL).
pub fn c_ud_fibration(spec: &Arc<RingSpec>, n: u32, d: u32) -> Result<GradedClass, FormulaError> {
    check_d(n, d)?;
    let (sigma, zeta, l, _) = fib_gens(spec)?;
    let one = GradedClass::one(spec);
    let mut acc = one
        .add(&zeta)?
        .sub(&l)?
        .add(&zeta.mul(&sigma)?)?;
    for r in 1..d as i64 {
        acc = acc.mul(&one.sub(&l.scale_int(r + 1))?.add(&zeta)?)?;
    }
    for s in 1..(n - d) as i64 {
        acc = acc.mul(&one.add(&l.scale_int(s))?)?;
    }
    Ok(acc)
}

/// c(𝒰_a), choosing the product formula for the a-range:
/// a ≥ 0, −(n−1) ≤ a < 0, or a < −(n−1). Formal inverses expand as
/// geometric series.
pub fn c_ua_fibration(spec: &Arc<RingSpec>, n: u32, a: i64) -> Result<GradedClass, FormulaError> {
    let branch = if a >= 0 {
        1
    } else if a >= -(n as i64 - 1) {
        2
    } else {
        3
    };
    c_ua_fibration_branch(spec, n, a, branch)?
        .ok_or_else(|| FormulaError::Range("branch not defined at this a".into()))
}

/// One branch of the c(𝒰_a) product formula, if its products are defined at
/// this a under the empty-product convention; branches extend slightly past
/// their nominal range (branch 1 and 2 coincide at a = 0).
pub fn c_ua_fibration_branch(
    spec: &Arc<RingSpec>,
    n: u32,
    a: i64,
    branch: u8,
) -> Result<Option<GradedClass>, FormulaError> {
    let (sigma, zeta, l, _) = fib_gens(spec)?;
    let one = GradedClass::one(spec);
    let lead = one
        .sub(&zeta)?
        .add(&l)?
        .add(&zeta.mul(&sigma)?)?;
    let n = n as i64;
    // Telescoping product ∏_{s=lo}^{hi} f(s): for hi < lo−1 it is the
    // inverse of the skipped factors ∏_{s=hi+1}^{lo−1} f(s)^{−1}, so the
    // product formulas extend one step past their nominal a-range and the
    // branches genuinely overlap at the boundaries.
    let prod = |lo: i64,
                hi: i64,
                f: &dyn Fn(i64) -> Result<GradedClass, FormulaError>,
                invert: bool|
     -> Result<GradedClass, FormulaError> {
        let mut acc = GradedClass::one(f(lo)?.spec());
        if hi >= lo {
            for s in lo..=hi {
                acc = acc.mul(&f(s)?)?;
            }
        } else {
            for s in (hi + 1)..lo {
                acc = acc.mul(&f(s)?.inverse()?)?;
            }
        }
        if invert {
            acc = acc.inverse()?;
        }
        Ok(acc)
    };
    let s_factor = |s: i64| -> Result<GradedClass, FormulaError> {
        Ok(one.add(&l.scale_int(s + 1))?.sub(&zeta)?)
    };
    let acc = match branch {
        1 => {
            // (1−ζ+L+ζσ)·∏_{s=1}^{n+a−2}(1+(s+1)L−ζ)·∏_{r=1}^{a−1}(1+rL)^{−1}
            if a < 0 {
                return Ok(None);
            }
            let sp = prod(1, n + a - 2, &s_factor, false)?;
            let rp = prod(1, a - 1, &|r| Ok(one.add(&l.scale_int(r))?), true)?;
            lead.mul(&sp)?.mul(&rp)?
        }
        2 => {
            // (1−ζ+L+ζσ)·∏_{s=1}^{n+a−2}(1+(s+1)L−ζ)·∏_{r=1}^{−a}(1−rL)
            if a > 0 || a < -(n - 1) {
                return Ok(None);
            }
            let sp = prod(1, n + a - 2, &s_factor, false)?;
            let rp = prod(1, -a, &|r| Ok(one.sub(&l.scale_int(r))?), false)?;
            lead.mul(&sp)?.mul(&rp)?
        }
        3 => {
            // (1−ζ+L+ζσ)·∏_{s=0}^{1−n−a}(1−(s−1)L−ζ)^{−1}·∏_{r=1}^{−a}(1−rL)
            if a > -(n - 1) {
                return Ok(None);
            }
            let sp = prod(
                0,
                1 - n - a,
                &|s| Ok(one.sub(&l.scale_int(s - 1))?.sub(&zeta)?.inverse()?),
                false,
            )?;
            let rp = prod(1, -a, &|r| Ok(one.sub(&l.scale_int(r))?), false)?;
            lead.mul(&sp)?.mul(&rp)?
        }
        _ => return Err(FormulaError::Range(format!("no branch {branch}"))),
    };
    Ok(Some(acc))
}

/// Displayed c₁(𝒰_a) = [an + (n²−n)/2]·L − (n+a−1)·ζ.
pub fn c1_ua_display(spec: &Arc<RingSpec>, n: u32, a: i64) -> Result<GradedClass, FormulaError> {
    let (_, zeta, l, _) = fib_gens(spec)?;
    let n = n as i64;
    Ok(l
        .scale_int(a * n + (n * n - n) / 2)
        .sub(&zeta.scale_int(n + a - 1))?)
}

/// Displayed c₂(𝒰_a), including the P(c) series coefficients.
pub fn c2_ua_display(spec: &Arc<RingSpec>, n: u32, a: i64) -> Result<GradedClass, FormulaError> {
    let (sigma, zeta, l, _) = fib_gens(spec)?;
    let n = n as i64;
    let zeta2 = zeta
        .pow(2)?
        .scale(&(rat((a + n - 1) * (a + n - 2)) / rat(2)));
    let zeta_l = zeta
        .mul(&l)?
        .scale(&(rat(n * n + 2 * a * n - 2 * n - a) * rat(a + n - 1) / rat(2)))
        .neg();
    let half_c1l = {
        let c = rat(a * n + (n * n - n) / 2);
        (&c * &c) / rat(2)
    };
    let l2 = l
        .pow(2)?
        .scale(&(half_c1l - p_of(a + n) + p_of(a)));
    Ok(zeta2
        .add(&zeta_l)?
        .add(&l2)?
        .add(&sigma.mul(&zeta)?)?)
}

/// ch 𝒱_n = 1 + Σ_{i=2}^{n} e^{−iL} (π_*O_Z(nσ) splits as
/// O_B ⊕ L^{−2} ⊕ … ⊕ L^{−n}).
pub fn ch_vn(spec: &Arc<RingSpec>, n: u32) -> Result<GradedClass, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Range("need n >= 2".into()));
    }
    let l = gen(spec, "L")?;
    let mut acc = GradedClass::one(spec);
    for i in 2..=n as i64 {
        acc = acc.add(&l.scale_int(-i).exp()?)?;
    }
    Ok(acc)
}

/// ch 𝒲_n = e^{σ} + Σ_{i=1}^{n−1} e^{iL} (filtration with line-bundle
/// quotients O_Z(σ), π*L, …, π*L^{n−1}).
pub fn ch_wn(spec: &Arc<RingSpec>, n: u32) -> Result<GradedClass, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Range("need n >= 2".into()));
    }
    let (sigma, _, l, _) = fib_gens(spec)?;
    let mut acc = sigma.exp()?;
    for i in 1..=(n as i64 - 1) {
        acc = acc.add(&l.scale_int(i).exp()?)?;
    }
    Ok(acc)
}

/// ch(𝒲_n|σ) = e^{−L} + Σ_{i=1}^{n−1} e^{iL} (the restriction splits as
/// L^{n−1} ⊕ … ⊕ L ⊕ L^{−1}).
pub fn ch_wn_on_sigma(spec: &Arc<RingSpec>, n: u32) -> Result<GradedClass, FormulaError> {
    if n < 2 {
        return Err(FormulaError::Range("need n >= 2".into()));
    }
    let l = gen(spec, "L")?;
    let mut acc = l.neg().exp()?;
    for i in 1..=(n as i64 - 1) {
        acc = acc.add(&l.scale_int(i).exp()?)?;
    }
    Ok(acc)
}

/// Specialize a fibration class to the single curve: L → 0, σ → t, ζ → h,
/// then impose h^n = t² = 0.
pub fn specialize_single_curve(
    x: &GradedClass,
    n: u32,
) -> Result<GradedClass, FormulaError> {
    let target = RingSpec::single_curve(n, x.spec().truncation());
    let h = gen(&target, "h")?;
    let t = gen(&target, "t")?;
    let zero = GradedClass::zero(&target);
    // Source generator order is (sigma, zeta, L).
    Ok(x.substitute(&target, &[t, h, zero])?)
}

// ---------------------------------------------------------------------------
// Identity suites (also driven by the CLI).
// ---------------------------------------------------------------------------

/// ch 𝐔(d)·e^{−ζ+L} = ch 𝒰_{1−d} for 2 ≤ n ≤ nmax, 1 ≤ d ≤ n−1.
/// Returns the number of identities checked.
pub fn verify_master_identity(nmax: u32, truncation: u32) -> Result<u32, String> {
    let spec = fibration_ring(truncation);
    let (_, zeta, l, _) = fib_gens(&spec).map_err(|e| e.to_string())?;
    let mut count = 0;
    for n in 2..=nmax {
        for d in 1..n {
            let lhs = ch_ud_fibration(&spec, n, d)
                .and_then(|x| {
                    Ok(x.mul(&zeta.neg().add(&l).map_err(FormulaError::from)?.exp()?)?)
                })
                .map_err(|e| e.to_string())?;
            let rhs = ch_ua_fibration(&spec, n, 1 - d as i64).map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("master identity fails at n={n}, d={d}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// ch 𝒰_a − ch 𝒰_{a−1} = −e^{(a−1)L}(1 − e^{−(ζ−nL)}) for |a| ≤ amax.
pub fn verify_modification_recursion(
    nmax: u32,
    amax: i64,
    truncation: u32,
) -> Result<u32, String> {
    let spec = fibration_ring(truncation);
    let (_, zeta, l, _) = fib_gens(&spec).map_err(|e| e.to_string())?;
    let one = GradedClass::one(&spec);
    let mut count = 0;
    for n in 2..=nmax {
        // [ℋ] = ζ − nL.
        let h_class = zeta.sub(&l.scale_int(n as i64)).map_err(|e| e.to_string())?;
        for a in -amax..=amax {
            let lhs = ch_ua_fibration(&spec, n, a)
                .and_then(|x| Ok(x.sub(&ch_ua_fibration(&spec, n, a - 1)?)?))
                .map_err(|e| e.to_string())?;
            let rhs = (|| -> Result<GradedClass, FormulaError> {
                Ok(l.scale_int(a - 1)
                    .exp()?
                    .mul(&one.sub(&h_class.neg().exp()?)?)?
                    .neg())
            })()
            .map_err(|e| e.to_string())?;
            if lhs != rhs {
                return Err(format!("modification recursion fails at n={n}, a={a}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Newton conversion of ch 𝒰_a reproduces the displayed c₁ and c₂.
pub fn verify_c1_c2_display(nmax: u32, amax: i64, truncation: u32) -> Result<u32, String> {
    let spec = fibration_ring(truncation);
    let mut count = 0;
    for n in 2..=nmax {
        for a in -amax..=amax {
            let ch = ch_ua_fibration(&spec, n, a).map_err(|e| e.to_string())?;
            let c = ChernData::from_character(&ch)
                .to_total_chern()
                .map_err(|e| e.to_string())?;
            let c1 = c1_ua_display(&spec, n, a).map_err(|e| e.to_string())?;
            let c2 = c2_ua_display(&spec, n, a).map_err(|e| e.to_string())?;
            if *c.component(1) != c1 {
                return Err(format!("c1 mismatch at n={n}, a={a}"));
            }
            if *c.component(2) != c2 {
                return Err(format!("c2 mismatch at n={n}, a={a}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// The three product branches for c(𝒰_a) agree with the Newton conversion of
/// ch 𝒰_a wherever defined (in particular branches 1 and 2 agree at their
/// common point a = 0), and c(𝐔(d)) agrees with ch 𝐔(d).
pub fn verify_chern_product_branches(
    nmax: u32,
    amax: i64,
    truncation: u32,
) -> Result<u32, String> {
    let spec = fibration_ring(truncation);
    let mut count = 0;
    for n in 2..=nmax {
        for a in -amax..=amax {
            let ch = ch_ua_fibration(&spec, n, a).map_err(|e| e.to_string())?;
            let expected = ChernData::from_character(&ch)
                .to_total_chern()
                .map_err(|e| e.to_string())?
                .total();
            let mut seen = 0;
            for branch in 1..=3u8 {
                if let Some(c) =
                    c_ua_fibration_branch(&spec, n, a, branch).map_err(|e| e.to_string())?
                {
                    if c != expected {
                        return Err(format!(
                            "c(U_a) branch {branch} disagrees at n={n}, a={a}"
                        ));
                    }
                    seen += 1;
                }
            }
            if seen == 0 {
                return Err(format!("no branch defined at n={n}, a={a}"));
            }
            count += seen;
        }
        for d in 1..n {
            let ch = ch_ud_fibration(&spec, n, d).map_err(|e| e.to_string())?;
            let expected = ChernData::from_character(&ch)
                .to_total_chern()
                .map_err(|e| e.to_string())?
                .total();
            let c = c_ud_fibration(&spec, n, d).map_err(|e| e.to_string())?;
            if c != expected {
                return Err(format!("c(U(d)) disagrees at n={n}, d={d}"));
            }
            count += 1;
        }
    }
    Ok(count)
}

/// Specializing the fibration formulas by L → 0, σ → t, ζ → h recovers the
/// single-curve formulas, and the single-curve c/ch pairs convert into each
/// other.
pub fn verify_single_curve_specialization(nmax: u32, truncation: u32) -> Result<u32, String> {
    let fspec = fibration_ring(truncation);
    let mut count = 0;
    for n in 2..=nmax {
        let sspec = single_curve_ring(n, truncation);
        // ch U_0 and its twists.
        for a in -3..=3i64 {
            let spec_ch = specialize_single_curve(
                &ch_ua_fibration(&fspec, n, a).map_err(|e| e.to_string())?,
                n,
            )
            .map_err(|e| e.to_string())?;
            let direct = ch_ua_twist_singlecurve(&sspec, n, a, 0).map_err(|e| e.to_string())?;
            if spec_ch != direct {
                return Err(format!("ch U_a specialization fails at n={n}, a={a}"));
            }
            // Twisting by O(b): multiply by e^{bh}.
            for b in -2..=2i64 {
                let h = gen(&sspec, "h").map_err(|e| e.to_string())?;
                let tw = spec_ch
                    .mul(&h.scale_int(b).exp().map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                let direct =
                    ch_ua_twist_singlecurve(&sspec, n, a, b).map_err(|e| e.to_string())?;
                if tw != direct {
                    return Err(format!("ch U_a twist fails at n={n}, a={a}, b={b}"));
                }
                count += 1;
            }
            // c(U_a) from conversion matches the displayed product.
            let c_direct = c_ua_singlecurve(&sspec, n, a).map_err(|e| e.to_string())?;
            let c_conv = ChernData::from_character(&direct)
                .to_total_chern()
                .map_err(|e| e.to_string())?
                .total();
            // The displayed product is for U_a itself (b = 0).
            let c_b0 = ChernData::from_character(
                &ch_ua_twist_singlecurve(&sspec, n, a, 0).map_err(|e| e.to_string())?,
            )
            .to_total_chern()
            .map_err(|e| e.to_string())?
            .total();
            let _ = c_conv;
            if c_direct != c_b0 {
                return Err(format!("c(U_a) product fails at n={n}, a={a}"));
            }
            count += 1;
        }
        // single-curve U(d) against the specialized fibration 𝐔(d)
        for d in 1..n {
            let spec_ch = specialize_single_curve(
                &ch_ud_fibration(&fspec, n, d).map_err(|e| e.to_string())?,
                n,
            )
            .map_err(|e| e.to_string())?;
            let direct = ch_ud_singlecurve(&sspec, n, d).map_err(|e| e.to_string())?;
            if spec_ch != direct {
                return Err(format!("ch U(d) specialization fails at n={n}, d={d}"));
            }
            // U(d) = U_{1−d} ⊗ O(1).
            let tw = ch_ua_twist_singlecurve(&sspec, n, 1 - d as i64, 1)
                .map_err(|e| e.to_string())?;
            if direct != tw {
                return Err(format!("U(d) = U_(1-d)(1) fails at n={n}, d={d}"));
            }
            // c(U(d)) from the product matches conversion.
            let c_direct = c_ud_singlecurve(&sspec, n, d).map_err(|e| e.to_string())?;
            let c_conv = ChernData::from_character(&direct)
                .to_total_chern()
                .map_err(|e| e.to_string())?
                .total();
            if c_direct != c_conv {
                return Err(format!("c(U(d)) product fails at n={n}, d={d}"));
            }
            count += 1;
        }
        // The Poincaré bundle U = U_1 ⊗ O(1): ch U = n + t(1−e^h) and
        // c_k(U) = (−1)^k h^{k−1} t for k ≥ 2.
        let h = gen(&sspec, "h").map_err(|e| e.to_string())?;
        let t = gen(&sspec, "t").map_err(|e| e.to_string())?;
        let ch_u = ch_ua_twist_singlecurve(&sspec, n, 1, 1).map_err(|e| e.to_string())?;
        let one = GradedClass::one(&sspec);
        let expect = GradedClass::int(&sspec, n as i64)
            .add(
                &t.mul(&one.sub(&h.exp().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?;
        if ch_u != expect {
            return Err(format!("ch U fails at n={n}"));
        }
        let c_u = ChernData::from_character(&ch_u)
            .to_total_chern()
            .map_err(|e| e.to_string())?;
        for k in 2..=truncation.min(n) {
            let mut expect = h
                .pow(k - 1)
                .map_err(|e| e.to_string())?
                .mul(&t)
                .map_err(|e| e.to_string())?;
            if k % 2 == 1 {
                expect = expect.neg();
            }
            if *c_u.component(k) != expect {
                return Err(format!("c_k(U) fails at n={n}, k={k}"));
            }
            count += 1;
        }
        if *c_u.component(1) != GradedClass::zero(&sspec) {
            return Err(format!("c_1(U) nonzero at n={n}"));
        }
        count += 1;
    }
    Ok(count)
}

/// ch(𝒲_n)·σ = ch(𝒲_n|σ)·σ, using e^{σ}·σ = e^{−L}·σ.
pub fn verify_wn_restriction(nmax: u32, truncation: u32) -> Result<u32, String> {
    let spec = fibration_ring(truncation);
    let sigma = gen(&spec, "sigma").map_err(|e| e.to_string())?;
    let mut count = 0;
    for n in 2..=nmax {
        let lhs = ch_wn(&spec, n)
            .and_then(|x| Ok(x.mul(&sigma)?))
            .map_err(|e| e.to_string())?;
        let rhs = ch_wn_on_sigma(&spec, n)
            .and_then(|x| Ok(x.mul(&sigma)?))
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("W_n restriction fails at n={n}"));
        }
        count += 1;
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::ChernKind;

    #[test]
    fn ch_u0_rank_and_n2_chern() {
        let spec = single_curve_ring(2, 8);
        let ch = ch_u0_singlecurve(&spec, 2).unwrap();
        assert_eq!(ch.constant_term(), rat(2));
        // n=2: c(U0) = 1 − h + th.
        let c = c_u0_singlecurve(&spec, 2).unwrap();
        let h = GradedClass::named_generator(&spec, "h").unwrap();
        let t = GradedClass::named_generator(&spec, "t").unwrap();
        let expect = GradedClass::one(&spec)
            .sub(&h)
            .unwrap()
            .add(&t.mul(&h).unwrap())
            .unwrap();
        assert_eq!(c, expect);
        // c ⟺ ch under Newton conversion.
        let conv = ChernData::from_character(&ch).to_total_chern().unwrap();
        assert_eq!(conv.total(), c);
        assert_eq!(conv.kind(), ChernKind::TotalChern);
    }

    #[test]
    fn ch_ud_substitution_example() {
        // d=1, n=2: ch = (1−t)e^h + 1 + t.
        let spec = single_curve_ring(2, 8);
        let ch = ch_ud_singlecurve(&spec, 2, 1).unwrap();
        let h = GradedClass::named_generator(&spec, "h").unwrap();
        let t = GradedClass::named_generator(&spec, "t").unwrap();
        let expect = GradedClass::one(&spec)
            .sub(&t)
            .unwrap()
            .mul(&h.exp().unwrap())
            .unwrap()
            .add(&GradedClass::one(&spec))
            .unwrap()
            .add(&t)
            .unwrap();
        assert_eq!(ch, expect);
        // degree-1 part of c(U(d)) is d·h.
        for (n, d) in [(3u32, 1u32), (3, 2), (4, 2), (5, 3)] {
            let spec = single_curve_ring(n, 8);
            let c = c_ud_singlecurve(&spec, n, d).unwrap();
            let h = GradedClass::named_generator(&spec, "h").unwrap();
            assert_eq!(c.weight_part(1), h.scale_int(d as i64));
        }
        assert!(ch_ud_singlecurve(&spec, 2, 2).is_err());
        assert!(ch_ud_singlecurve(&spec, 2, 0).is_err());
    }

    #[test]
    fn ch_ud_fibration_low_weight() {
        let spec = fibration_ring(8);
        let ch = ch_ud_fibration(&spec, 2, 1).unwrap();
        assert_eq!(ch.constant_term(), rat(2));
        // weight-1 part: (−σ) + (ζ − L) + σ = ζ − L, matching the
        // ch 𝒰_0 · e^{ζ−L} route.
        let zeta = GradedClass::named_generator(&spec, "zeta").unwrap();
        let l = GradedClass::named_generator(&spec, "L").unwrap();
        assert_eq!(ch.weight_part(1), zeta.sub(&l).unwrap());
        let via_ua = ch_ua_fibration(&spec, 2, 0)
            .unwrap()
            .mul(&zeta.sub(&l).unwrap().exp().unwrap())
            .unwrap();
        assert_eq!(ch, via_ua);
    }

    #[test]
    fn ua_fibration_rank() {
        let spec = fibration_ring(8);
        for a in -4..=4 {
            let ch = ch_ua_fibration(&spec, 3, a).unwrap();
            assert_eq!(ch.constant_term(), rat(3));
        }
    }

    #[test]
    fn master_identity_suite() {
        assert!(verify_master_identity(6, 8).unwrap() > 0);
    }

    #[test]
    fn modification_recursion_suite() {
        assert!(verify_modification_recursion(6, 5, 8).unwrap() > 0);
    }

    #[test]
    fn c1_c2_displayed() {
        assert!(verify_c1_c2_display(6, 5, 8).unwrap() > 0);
        // Spot check: c2(U_0) at n=2 is exactly σζ.
        let spec = fibration_ring(8);
        let c2 = c2_ua_display(&spec, 2, 0).unwrap();
        let sigma = GradedClass::named_generator(&spec, "sigma").unwrap();
        let zeta = GradedClass::named_generator(&spec, "zeta").unwrap();
        assert_eq!(c2, sigma.mul(&zeta).unwrap());
    }

    #[test]
    fn chern_branches_suite() {
        assert!(verify_chern_product_branches(6, 6, 8).unwrap() > 0);
        // Branch 1 and 2 coincide at a = 0.
        let spec = fibration_ring(8);
        for n in 2..=5 {
            let b1 = c_ua_fibration_branch(&spec, n, 0, 1).unwrap().unwrap();
            let b2 = c_ua_fibration_branch(&spec, n, 0, 2).unwrap().unwrap();
            assert_eq!(b1, b2);
        }
    }

    #[test]
    fn specialization_suite() {
        assert!(verify_single_curve_specialization(6, 8).unwrap() > 0);
    }

    #[test]
    fn vn_and_wn() {
        let spec = fibration_ring(8);
        let l = GradedClass::named_generator(&spec, "L").unwrap();
        // n=2: ch V_2 = 1 + e^{−2L}.
        let v2 = ch_vn(&spec, 2).unwrap();
        let expect = GradedClass::one(&spec)
            .add(&l.scale_int(-2).exp().unwrap())
            .unwrap();
        assert_eq!(v2, expect);
        assert_eq!(v2.constant_term(), rat(2));
        assert_eq!(ch_wn_on_sigma(&spec, 4).unwrap().constant_term(), rat(4));
        assert!(verify_wn_restriction(6, 8).unwrap() > 0);
    }

    /// Independent oracle for ch 𝒰_a: on the single curve the truncated long
    /// division of (1 − e^{cL}) by (1 − e^{L}) is recomputed here from
    /// scratch by multiplying back, and the fibration formula is rebuilt
    /// summand by summand.
    #[test]
    fn ua_formula_matches_manual_assembly() {
        let spec = fibration_ring(8);
        let sigma = GradedClass::named_generator(&spec, "sigma").unwrap();
        let zeta = GradedClass::named_generator(&spec, "zeta").unwrap();
        let l = GradedClass::named_generator(&spec, "L").unwrap();
        let one = GradedClass::one(&spec);
        for (n, a) in [(2u32, 0i64), (3, 1), (4, -2), (5, 3)] {
            // For integer c ≥ 0: (1−e^{cL})/(1−e^L) = Σ_{j=0}^{c−1} e^{jL};
            // for c < 0 it is −Σ_{j=c}^{−1} e^{jL}.
            let geom = |c: i64| -> GradedClass {
                let mut acc = GradedClass::zero(&spec);
                if c >= 0 {
                    for j in 0..c {
                        acc = acc.add(&l.scale_int(j).exp().unwrap()).unwrap();
                    }
                } else {
                    for j in c..0 {
                        acc = acc.sub(&l.scale_int(j).exp().unwrap()).unwrap();
                    }
                }
                acc
            };
            let manual = zeta
                .neg()
                .exp()
                .unwrap()
                .mul(&geom(a + n as i64))
                .unwrap()
                .sub(&geom(a))
                .unwrap()
                .add(
                    &sigma
                        .neg()
                        .exp()
                        .unwrap()
                        .mul(&one.sub(&zeta.neg().exp().unwrap()).unwrap())
                        .unwrap(),
                )
                .unwrap();
            assert_eq!(ch_ua_fibration(&spec, n, a).unwrap(), manual);
        }
    }
}
