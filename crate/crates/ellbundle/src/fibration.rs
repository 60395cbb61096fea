//! Section-level calculators: characteristic data of the bundles V_{A,a}
//! attached to a section A of an elliptic fibration, determinant and
//! trivial-determinant bookkeeping in a free Picard model, the parity
//! necessary condition for symmetric bundles, reducible-section steps, and
//! splitting types on linear slices.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chern::{self, FormulaError};
use crate::cohomology::{GradedClass, RingSpec};

#[derive(Debug, Error)]
pub enum SectionError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error("Pic vector has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("trivial section requires alpha = 0")]
    TrivialSectionAlpha,
    #[error("parameter out of range: {0}")]
    Range(String),
}

/// A free-abelian model of Pic B with the distinguished classes L and
/// α = c₁(M) recorded as coordinate vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicModel {
    pub rank: usize,
    pub l: Vec<i64>,
    pub alpha: Vec<i64>,
    pub h: Option<Vec<i64>>,
    pub dim_b: u32,
}

impl PicModel {
    fn validate(&self) -> Result<(), SectionError> {
        for v in [Some(&self.l), Some(&self.alpha), self.h.as_ref()]
            .into_iter()
            .flatten()
        {
            if v.len() != self.rank {
                return Err(SectionError::RankMismatch {
                    expected: self.rank,
                    got: v.len(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SectionFlags {
    #[serde(default)]
    pub is_trivial_section: bool,
    #[serde(default, rename = "lies_in_H")]
    pub lies_in_h: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawSection {
    #[serde(rename = "picRank")]
    pic_rank: usize,
    #[serde(rename = "L")]
    l: Vec<i64>,
    alpha: Vec<i64>,
    n: u32,
    #[serde(rename = "dimB")]
    dim_b: u32,
    #[serde(default)]
    flags: SectionFlags,
}

/// A section A of the fibration together with the rank n of the bundles
/// V_{A,a} built on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSection", into = "RawSection")]
pub struct SectionSpec {
    pub pic: PicModel,
    pub n: u32,
    pub flags: SectionFlags,
}

impl TryFrom<RawSection> for SectionSpec {
    type Error = SectionError;

    fn try_from(raw: RawSection) -> Result<Self, SectionError> {
        SectionSpec::new(
            PicModel {
                rank: raw.pic_rank,
                l: raw.l,
                alpha: raw.alpha,
                h: None,
                dim_b: raw.dim_b,
            },
            raw.n,
            raw.flags,
        )
    }
}

impl From<SectionSpec> for RawSection {
    fn from(s: SectionSpec) -> RawSection {
        RawSection {
            pic_rank: s.pic.rank,
            l: s.pic.l,
            alpha: s.pic.alpha,
            n: s.n,
            dim_b: s.pic.dim_b,
            flags: s.flags,
        }
    }
}

impl SectionSpec {
    pub fn new(pic: PicModel, n: u32, flags: SectionFlags) -> Result<Self, SectionError> {
        pic.validate()?;
        if n == 0 {
            return Err(SectionError::Range("rank n must be positive".into()));
        }
        if flags.is_trivial_section && pic.alpha.iter().any(|&c| c != 0) {
            return Err(SectionError::TrivialSectionAlpha);
        }
        Ok(SectionSpec { pic, n, flags })
    }

    /// The symbolic ring for classes along this section: ℚ[σ, α, L] with
    /// σ² = −Lσ, and with all weight-2 base monomials killed when the base
    /// is a curve.
    pub fn ring(&self, truncation: u32) -> Arc<RingSpec> {
        if self.pic.dim_b == 1 {
            RingSpec::section_over_curve(truncation)
        } else {
            RingSpec::section(truncation)
        }
    }
}

fn pic_combine(section: &SectionSpec, c_alpha: i64, c_l: i64) -> Vec<i64> {
    section
        .pic
        .alpha
        .iter()
        .zip(&section.pic.l)
        .map(|(&a, &l)| c_alpha * a + c_l * l)
        .collect()
}

/// For a section with α = 0 the symbolic α generator is redundant; map it
/// to zero so the class lives in ℚ[σ, L] ⊂ the section ring.
fn reduce_trivial_alpha(
    spec: &Arc<RingSpec>,
    section: &SectionSpec,
    class: GradedClass,
) -> Result<GradedClass, SectionError> {
    if section.pic.alpha.iter().any(|&c| c != 0) {
        return Ok(class);
    }
    let images = [
        GradedClass::named_generator(spec, "sigma").map_err(FormulaError::from)?,
        GradedClass::zero(spec),
        GradedClass::named_generator(spec, "L").map_err(FormulaError::from)?,
    ];
    Ok(class.substitute(spec, &images).map_err(FormulaError::from)?)
}

/// ch V_{A,a} = e^{−α}·(1 − e^{(a+n)L})/(1 − e^L) − (1 − e^{aL})/(1 − e^L)
///              + e^{−σ}(1 − e^{−α}).
pub fn ch_vaa(
    spec: &Arc<RingSpec>,
    section: &SectionSpec,
    a: i64,
) -> Result<GradedClass, SectionError> {
    let ch = chern::ch_ua_fibration(spec, section.n, a)?;
    reduce_trivial_alpha(spec, section, ch)
}

/// det V_{A,a} = −(n+a−1)·α + [a·n + (n²−n)/2]·L as a Pic vector.
pub fn det_vaa(section: &SectionSpec, a: i64) -> Vec<i64> {
    let n = section.n as i64;
    pic_combine(section, -(n + a - 1), a * n + (n * n - n) / 2)
}

/// Search a ∈ {0, …, n−1} for (a−1)·α ≡ (n(n−1)/2)·L componentwise mod n;
/// on success also return N₀ = −det V_{A,a} / n (always integral for a
/// solving the congruence).
pub fn trivial_det_solve(section: &SectionSpec) -> Option<(u32, Vec<i64>)> {
    let n = section.n as i64;
    let rhs: Vec<i64> = section
        .pic
        .l
        .iter()
        .map(|&l| (n * (n - 1) / 2 * l).rem_euclid(n))
        .collect();
    for a in 0..n {
        let solves = section
            .pic
            .alpha
            .iter()
            .zip(&rhs)
            .all(|(&al, &r)| ((a - 1) * al).rem_euclid(n) == r);
        if solves {
            let n0 = det_vaa(section, a).iter().map(|c| -c / n).collect();
            return Some((a as u32, n0));
        }
    }
    None
}

/// c₁ of the twisted bundle V_{A,0} ⊗ N:
/// −(n−1)·α + ((n²−n)/2)·L + (g_A)_* c₁(N).
pub fn c1_va0_twist(
    section: &SectionSpec,
    pushforward_c1n: &[i64],
) -> Result<Vec<i64>, SectionError> {
    if pushforward_c1n.len() != section.pic.rank {
        return Err(SectionError::RankMismatch {
            expected: section.pic.rank,
            got: pushforward_c1n.len(),
        });
    }
    let n = section.n as i64;
    Ok(pic_combine(section, -(n - 1), (n * n - n) / 2)
        .iter()
        .zip(pushforward_c1n)
        .map(|(base, extra)| base + extra)
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityCheck {
    /// The necessary condition (n even and α ≡ L mod 2) holds; existence of
    /// a symmetric model is not decided here.
    NecessaryHolds,
    Fails,
}

/// Necessary condition for V_{A,a} to admit a symmetric model: n even and
/// α ≡ L componentwise mod 2.
pub fn symmetric_parity_check(section: &SectionSpec) -> ParityCheck {
    let parity_match = section
        .pic
        .alpha
        .iter()
        .zip(&section.pic.l)
        .all(|(&a, &l)| (a - l).rem_euclid(2) == 0);
    if section.n % 2 == 0 && parity_match {
        ParityCheck::NecessaryHolds
    } else {
        ParityCheck::Fails
    }
}

/// The rank-increment step for a reducible section: the class
/// e^{(a+n−1)L−α} = ch(L^a ⊗ O(−D)) with
/// ch V_{A,a}(n) = ch V_{A,a}(n−1) + e^{(a+n−1)L−α},
/// together with the divisor class [D] = α − (n−1)·L.
pub fn reducible_step(
    spec: &Arc<RingSpec>,
    section: &SectionSpec,
    a: i64,
) -> Result<(GradedClass, Vec<i64>), SectionError> {
    if section.n < 2 {
        return Err(SectionError::Range("reducible step needs n >= 2".into()));
    }
    let n = section.n as i64;
    let l = GradedClass::named_generator(spec, "L")
        .map_err(FormulaError::from)?;
    let alpha = GradedClass::named_generator(spec, "alpha")
        .map_err(FormulaError::from)?;
    let increment = l
        .scale_int(a + n - 1)
        .sub(&alpha)
        .map_err(FormulaError::from)?
        .exp()
        .map_err(FormulaError::from)?;
    let increment = reduce_trivial_alpha(spec, section, increment)?;
    Ok((increment, pic_combine(section, 1, -(n - 1))))
}

/// The class of the spectral cover C_A ⊂ Z: the pair (n·σ, α) describing
/// O_Z(nσ) ⊗ π*M.
pub fn spectral_cover_class(section: &SectionSpec) -> (u32, Vec<i64>) {
    (section.n, section.pic.alpha.clone())
}

/// ch of the normal sheaf of the spectral cover inside Z:
/// ch(𝒱_n)·e^{α} − 1.
pub fn normal_bundle_ch(
    spec: &Arc<RingSpec>,
    section: &SectionSpec,
) -> Result<GradedClass, SectionError> {
    let alpha = GradedClass::named_generator(spec, "alpha")
        .map_err(FormulaError::from)?;
    let vn = chern::ch_vn(spec, section.n)?;
    Ok(vn
        .mul(&alpha.exp().map_err(FormulaError::from)?)
        .map_err(FormulaError::from)?
        .sub(&GradedClass::one(spec))
        .map_err(FormulaError::from)?)
}

/// Splitting type of U_a restricted to a line ℓ × E, as a multiset of
/// degrees. Writing a = a′ + n·k with a′ ∈ [2−n, 1]:
/// for a′ = 1 with e = p₀ the type is (−k−1)^{n−2}, −k, −k−2; otherwise it
/// is (−k)^{1−a′}, (−k−1)^{n−1+a′}. Lines with k ≠ 0 must be generic.
pub fn splitting_type_slice(
    n: u32,
    a: i64,
    at_p0: bool,
    generic_line: bool,
) -> Result<Vec<i64>, SectionError> {
    if n < 2 {
        return Err(SectionError::Range("need n >= 2".into()));
    }
    let n = n as i64;
    // canonical representative a′ ∈ [2−n, 1]
    let a_prime = (a - (2 - n)).rem_euclid(n) + 2 - n;
    let k = (a - a_prime) / n;
    if k != 0 && !generic_line {
        return Err(SectionError::Range(format!(
            "a = {a} lies outside [{}, 1]; only generic lines are supported",
            2 - n
        )));
    }
    let mut degrees = Vec::with_capacity(n as usize);
    if at_p0 && a_prime == 1 {
        degrees.extend(std::iter::repeat_n(-k - 1, n as usize - 2));
        degrees.push(-k);
        degrees.push(-k - 2);
    } else {
        degrees.extend(std::iter::repeat_n(-k, (1 - a_prime) as usize));
        degrees.extend(std::iter::repeat_n(-k - 1, (n - 1 + a_prime) as usize));
    }
    degrees.sort_unstable();
    degrees.reverse();
    Ok(degrees)
}
