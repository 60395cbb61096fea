//! Numeric stability analysis on an elliptic surface: the intersection
//! lattice with its section and fiber classes, slopes with respect to a
//! polarization, Bogomolov numbers and the Whitney-split identity, the
//! suitability threshold t₀, and a bounded wall search.

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum StabilityError {
    #[error("Gram matrix must be square and symmetric")]
    BadGram,
    #[error("lattice needs generators named sigma and f")]
    MissingGenerators,
    #[error("sigma/f rows must satisfy sigma^2 = -degL, sigma.f = 1, f^2 = 0")]
    BadSectionRelations,
    #[error("ample class must have H0.f > 0")]
    BadAmpleClass,
    #[error("vector has {got} coordinates, expected {expected}")]
    RankMismatch { expected: usize, got: usize },
    #[error("bundle rank must be positive")]
    ZeroRank,
    #[error("polarization must have nonnegative fiber degree")]
    BadPolarization,
    #[error("c2 must be nonnegative")]
    NegativeC2,
    #[error("modification degree e must be negative")]
    NonNegativeE,
    #[error("modification would drop c2 below zero")]
    PositivityFloor,
}

/// Numerical intersection lattice of an elliptic surface with a section:
/// the generators include the section class σ (σ² = −deg L) and the fiber
/// class f (σ·f = 1, f² = 0), plus an ample class H₀.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLattice", into = "RawLattice")]
pub struct SurfaceLattice {
    pub generators: Vec<String>,
    pub gram: Vec<Vec<i64>>,
    pub h0: Vec<i64>,
    pub deg_l: i64,
    sigma_index: usize,
    f_index: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RawLattice {
    generators: Vec<String>,
    gram: Vec<Vec<i64>>,
    #[serde(rename = "H0")]
    h0: Vec<i64>,
    #[serde(rename = "degL")]
    deg_l: i64,
}

impl TryFrom<RawLattice> for SurfaceLattice {
    type Error = StabilityError;

    fn try_from(raw: RawLattice) -> Result<Self, StabilityError> {
        SurfaceLattice::new(raw.generators, raw.gram, raw.h0, raw.deg_l)
    }
}

impl From<SurfaceLattice> for RawLattice {
    fn from(l: SurfaceLattice) -> RawLattice {
        RawLattice {
            generators: l.generators,
            gram: l.gram,
            h0: l.h0,
            deg_l: l.deg_l,
        }
    }
}

impl SurfaceLattice {
    pub fn new(
        generators: Vec<String>,
        gram: Vec<Vec<i64>>,
        h0: Vec<i64>,
        deg_l: i64,
    ) -> Result<Self, StabilityError> {
        let k = generators.len();
        if gram.len() != k || gram.iter().any(|row| row.len() != k) {
            return Err(StabilityError::BadGram);
        }
        for i in 0..k {
            for j in 0..k {
                if gram[i][j] != gram[j][i] {
                    return Err(StabilityError::BadGram);
                }
            }
        }
        let sigma_index = generators
            .iter()
            .position(|g| g == "sigma")
            .ok_or(StabilityError::MissingGenerators)?;
        let f_index = generators
            .iter()
            .position(|g| g == "f")
            .ok_or(StabilityError::MissingGenerators)?;
        if gram[sigma_index][sigma_index] != -deg_l
            || gram[sigma_index][f_index] != 1
            || gram[f_index][f_index] != 0
        {
            return Err(StabilityError::BadSectionRelations);
        }
        if h0.len() != k {
            return Err(StabilityError::RankMismatch {
                expected: k,
                got: h0.len(),
            });
        }
        let lattice = SurfaceLattice {
            generators,
            gram,
            h0,
            deg_l,
            sigma_index,
            f_index,
        };
        if lattice.dot(&lattice.h0, &lattice.fiber())? <= 0 {
            return Err(StabilityError::BadAmpleClass);
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn sigma(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[self.sigma_index] = 1;
        v
    }

    pub fn fiber(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[self.f_index] = 1;
        v
    }

    pub fn dot(&self, u: &[i64], v: &[i64]) -> Result<i64, StabilityError> {
        for w in [u, v] {
            if w.len() != self.rank() {
                return Err(StabilityError::RankMismatch {
                    expected: self.rank(),
                    got: w.len(),
                });
            }
        }
        let mut acc = 0i64;
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                acc += ui * self.gram[i][j] * vj;
            }
        }
        Ok(acc)
    }
}

/// Discrete invariants of a bundle on the surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleNumerics {
    pub n: u32,
    pub c1: Vec<i64>,
    pub c2: i64,
}

/// μ(W) = c₁(W)·H / rank W.
pub fn slope(
    lattice: &SurfaceLattice,
    w: &BundleNumerics,
    polarization: &[i64],
) -> Result<Rational64, StabilityError> {
    if w.n == 0 {
        return Err(StabilityError::ZeroRank);
    }
    if lattice.dot(polarization, &lattice.fiber())? < 0 {
        return Err(StabilityError::BadPolarization);
    }
    let num = lattice.dot(&w.c1, polarization)?;
    Ok(Rational64::new(num, w.n as i64))
}

/// B(W) = 2r·c₂(W) − (r−1)·c₁(W)².
pub fn bogomolov(lattice: &SurfaceLattice, w: &BundleNumerics) -> Result<i64, StabilityError> {
    let r = w.n as i64;
    Ok(2 * r * w.c2 - (r - 1) * lattice.dot(&w.c1, &w.c1)?)
}

/// The Whitney-sum numerics of V′ ⊕ V″: c₁ adds and
/// c₂ = c₂′ + c₂″ + c₁′·c₁″.
pub fn whitney_sum(
    lattice: &SurfaceLattice,
    v1: &BundleNumerics,
    v2: &BundleNumerics,
) -> Result<BundleNumerics, StabilityError> {
    let c1 = v1
        .c1
        .iter()
        .zip(&v2.c1)
        .map(|(a, b)| a + b)
        .collect::<Vec<_>>();
    if v1.c1.len() != v2.c1.len() {
        return Err(StabilityError::RankMismatch {
            expected: v1.c1.len(),
            got: v2.c1.len(),
        });
    }
    Ok(BundleNumerics {
        n: v1.n + v2.n,
        c1,
        c2: v1.c2 + v2.c2 + lattice.dot(&v1.c1, &v2.c1)?,
    })
}

/// Check B(V) = (n/r′)·B(V′) + (n/r″)·B(V″) − D²/(r′r″) for the Whitney
/// sum V = V′ ⊕ V″, with D = r′·c₁(V″) − r″·c₁(V′). Exact rational
/// arithmetic; returns whether the identity holds.
pub fn bogomolov_identity_check(
    lattice: &SurfaceLattice,
    v1: &BundleNumerics,
    v2: &BundleNumerics,
) -> Result<bool, StabilityError> {
    if v1.n == 0 || v2.n == 0 {
        return Err(StabilityError::ZeroRank);
    }
    let v = whitney_sum(lattice, v1, v2)?;
    let (r1, r2, n) = (v1.n as i64, v2.n as i64, v.n as i64);
    let d: Vec<i64> = v2
        .c1
        .iter()
        .zip(&v1.c1)
        .map(|(b, a)| r1 * b - r2 * a)
        .collect();
    let d2 = lattice.dot(&d, &d)?;
    let lhs = Rational64::from_integer(bogomolov(lattice, &v)?);
    let rhs = Rational64::new(n * bogomolov(lattice, v1)?, r1)
        + Rational64::new(n * bogomolov(lattice, v2)?, r2)
        - Rational64::new(d2, r1 * r2);
    Ok(lhs == rhs)
}

/// t₀ = n³·c₂/4: polarizations H₀ + t·f with t ≥ t₀ are suitable.
pub fn stability_threshold(n: u32, c2: i64) -> Result<Rational64, StabilityError> {
    if c2 < 0 {
        return Err(StabilityError::NegativeC2);
    }
    let n = n as i64;
    Ok(Rational64::new(n * n * n * c2, 4))
}

/// Search the coordinate box [−bound, bound]^k for potential walls: classes
/// D with D·f > 0, −(n³/2)·c₂ ≤ D² < 0, and D·(H₀ + t·f) ≤ 0. The list is
/// empty for t ≥ t₀ within any box.
pub fn wall_search(
    lattice: &SurfaceLattice,
    n: u32,
    c2: i64,
    t: Rational64,
    bound: i64,
) -> Result<Vec<Vec<i64>>, StabilityError> {
    if c2 < 0 {
        return Err(StabilityError::NegativeC2);
    }
    let k = lattice.rank();
    let f = lattice.fiber();
    let n3 = (n as i64).pow(3);
    let mut walls = Vec::new();
    let mut d = vec![-bound; k];
    loop {
        let d2 = lattice.dot(&d, &d)?;
        let df = lattice.dot(&d, &f)?;
        if df > 0 && d2 < 0 && 2 * d2 >= -n3 * c2 {
            let dh = lattice.dot(&d, &lattice.h0)?;
            if Rational64::from_integer(dh) + t * Rational64::from_integer(df)
                <= Rational64::from_integer(0)
            {
                walls.push(d.clone());
            }
        }
        // odometer over the box
        let mut i = 0;
        loop {
            if i == k {
                return Ok(walls);
            }
            if d[i] < bound {
                d[i] += 1;
                break;
            }
            d[i] = -bound;
            i += 1;
        }
    }
}

/// c₂ after an allowable elementary modification of fiber degree e < 0.
pub fn allowable_modification_c2(c2: i64, e: i64) -> Result<i64, StabilityError> {
    if e >= 0 {
        return Err(StabilityError::NonNegativeE);
    }
    let next = c2 + e;
    if next < 0 {
        return Err(StabilityError::PositivityFloor);
    }
    Ok(next)
}
