//! Command-line front end: flag/JSON parsing, dispatch to every module
//! operation, canonical text or JSON output.
//!
//! Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::bundles::{h0_bound_check, AtiyahBundle, DegreeZeroSheaf, LinearSystemDivisor};
use crate::chern;
use crate::cohomology::{default_truncation, GradedClass, RingSpec};
use crate::curve::{discriminant, CurvePoint, WeierstrassCurve};
use crate::field::{Field, FieldElem};
use crate::fibration::{self, ParityCheck, SectionSpec};
use crate::spectral;
use crate::stability::{self, BundleNumerics, SurfaceLattice};

#[derive(Debug, Parser)]
#[command(name = "ellbundle", version, about = "Exact calculator for bundles on elliptic fibrations")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Verb {
    /// Weierstrass cubic arithmetic.
    #[command(subcommand)]
    Curve(CurveCmd),
    /// Semistable bundle algebra and the zeta map.
    #[command(subcommand)]
    Zeta(ZetaCmd),
    /// Regular representative of a point of |n p0|.
    RegularRep {
        /// Divisor JSON {curve, points:[{point,index}], singular}.
        #[arg(long)]
        divisor: String,
    },
    /// Spectral-cover fibers and ramification.
    #[command(subcommand)]
    SpectralFiber(SpectralCmd),
    /// Characteristic-class formula library.
    #[command(subcommand)]
    Chern(ChernCmd),
    /// Section-level V_{A,a} calculators.
    #[command(subcommand)]
    Section(SectionCmd),
    /// Elliptic-surface stability analysis.
    #[command(subcommand)]
    Stability(StabilityCmd),
    /// Run the cross-identity suites.
    VerifyIdentities {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 6)]
        nmax: u32,
        #[arg(long, default_value_t = 5)]
        amax: i64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct CurveFlags {
    /// Base field: "Q" or "F<p>".
    #[arg(long, default_value = "Q")]
    pub field: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub g3: String,
}

#[derive(Debug, Subcommand)]
pub enum CurveCmd {
    /// Smooth/Nodal/Cuspidal by the discriminant.
    Classify(CurveFlags),
    /// Δ = g₂³ − 27g₃².
    Discriminant(CurveFlags),
    /// The singular point, if any.
    SingularPoint(CurveFlags),
    /// Membership and smoothness of a point.
    CheckPoint {
        #[command(flatten)]
        curve: CurveFlags,
        /// Point JSON {X,Y,Z}.
        #[arg(long)]
        p: String,
    },
    /// Group-law sum of two smooth points.
    Add {
        #[command(flatten)]
        curve: CurveFlags,
        #[arg(long)]
        p: String,
        #[arg(long)]
        q: String,
    },
    /// Group-law inverse.
    Neg {
        #[command(flatten)]
        curve: CurveFlags,
        #[arg(long)]
        p: String,
    },
    /// Scalar multiple k·P.
    Mul {
        #[command(flatten)]
        curve: CurveFlags,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        p: String,
    },
    /// Enumerate all points (finite fields only).
    Points(CurveFlags),
    /// Whether a nodal curve has split tangent directions.
    SplitNodal(CurveFlags),
    /// The n-torsion subgroup of the smooth locus.
    Torsion {
        #[command(flatten)]
        curve: CurveFlags,
        #[arg(long)]
        n: u32,
    },
    /// Whether a point multiset lies in |n p0|.
    InSystem {
        #[command(flatten)]
        curve: CurveFlags,
        /// JSON array of points.
        #[arg(long)]
        points: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZetaCmd {
    /// ζ(V): the spectral divisor of a bundle.
    Compute {
        /// Bundle JSON {curve, components:[{point|"F", partition}]}.
        #[arg(long)]
        bundle: String,
    },
    /// Rank and regularity report.
    Inspect {
        #[arg(long)]
        bundle: String,
    },
    /// dim Hom(V, W).
    DimHom {
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        other: String,
    },
    /// V ⊕ W in normal form.
    DirectSum {
        #[arg(long)]
        bundle: String,
        #[arg(long)]
        other: String,
    },
    /// The dual bundle.
    Dual {
        #[arg(long)]
        bundle: String,
    },
    /// Determinant as a point of the curve group.
    DetPoint {
        #[arg(long)]
        bundle: String,
    },
    /// h⁰(V ⊗ λ⁻¹) for a degree-zero sheaf λ.
    H0Twist {
        #[arg(long)]
        bundle: String,
        /// Sheaf JSON: a point {X,Y,Z} or "F".
        #[arg(long)]
        sheaf: String,
    },
    /// Check an h⁰ value against the max(μ₀,1)·rank bound.
    H0Bound {
        /// JSON array of [rank, degree] pairs.
        #[arg(long)]
        profile: String,
        #[arg(long)]
        h0: u64,
    },
    /// Divisor report: degree, class point, |n p0| membership.
    Divisor {
        #[arg(long)]
        divisor: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpectralCmd {
    /// The fiber over a smooth-supported divisor, with ramification indices.
    Of {
        #[arg(long)]
        divisor: String,
    },
    /// The order-n ramification divisors {n·e : e ∈ E[n]}.
    Ramification {
        #[command(flatten)]
        curve: CurveFlags,
        #[arg(long)]
        n: u32,
    },
    /// Sampled fibers of the tautological map r over a point e.
    OfR {
        #[command(flatten)]
        curve: CurveFlags,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        e: String,
        #[arg(long, default_value_t = 5)]
        samples: usize,
    },
    /// Constant-subsection irreducibility certificate for sampled fibers.
    Irreducible {
        /// JSON array of divisors.
        #[arg(long)]
        family: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingChoice {
    Fibration,
    Section,
    SingleCurve,
}

#[derive(Debug, Subcommand)]
pub enum ChernCmd {
    /// ch 𝒰_a (fibration/section ring) or ch U_a (single curve).
    Ua {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, value_enum, default_value_t = RingChoice::Fibration)]
        ring: RingChoice,
    },
    /// ch 𝐔(d) (fibration) or ch U(d) (single curve).
    Ud {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = RingChoice::Fibration)]
        ring: RingChoice,
    },
    /// Total Chern class of 𝒰_a / U_a.
    CUa {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, value_enum, default_value_t = RingChoice::Fibration)]
        ring: RingChoice,
        /// Force one of the three product formulas (1, 2, 3).
        #[arg(long)]
        branch: Option<u8>,
    },
    /// Total Chern class of 𝐔(d) / U(d).
    CUd {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long, value_enum, default_value_t = RingChoice::Fibration)]
        ring: RingChoice,
    },
    /// ch or c of U₀ on the single curve.
    U0 {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "ch")]
        kind: String,
    },
    /// ch(U_a ⊗ O(b p0)) on the single curve.
    Twist {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// ch 𝒱_n = π_*O(nσ).
    Vn {
        #[arg(long)]
        n: u32,
    },
    /// ch 𝒲_n, optionally restricted to σ.
    Wn {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        on_sigma: bool,
    },
    /// Displayed c₁(𝒰_a).
    C1 {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Displayed c₂(𝒰_a).
    C2 {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Specialize ch 𝒰_a to the single-curve ring (σ→t, ζ→h, L→0).
    Specialize {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SectionCmd {
    /// ch V_{A,a}.
    Ch {
        /// Section JSON {picRank, L, alpha, n, dimB, flags}.
        #[arg(long)]
        section: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// det V_{A,a} as a Pic vector.
    Det {
        #[arg(long)]
        section: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Solve the trivial-determinant congruence.
    TrivialDet {
        #[arg(long)]
        section: String,
    },
    /// c₁ of V_{A,0} ⊗ N given (g_A)_* c₁(N).
    TwistC1 {
        #[arg(long)]
        section: String,
        /// JSON integer vector.
        #[arg(long)]
        pushforward: String,
    },
    /// Parity necessary condition for symmetric bundles.
    Parity {
        #[arg(long)]
        section: String,
    },
    /// Reducible-section increment and the divisor class [D].
    ReducibleStep {
        #[arg(long)]
        section: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Class of the spectral cover: (nσ, α).
    CoverClass {
        #[arg(long)]
        section: String,
    },
    /// ch of the normal sheaf of the spectral cover.
    NormalBundle {
        #[arg(long)]
        section: String,
    },
    /// Splitting type of U_a on a line slice.
    Splitting {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long)]
        at_p0: bool,
        #[arg(long)]
        generic_line: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum StabilityCmd {
    /// μ(W) = c₁·H / rank.
    Slope {
        /// Lattice JSON {generators, gram, H0, degL}.
        #[arg(long)]
        lattice: String,
        /// Bundle JSON {n, c1, c2}.
        #[arg(long)]
        bundle: String,
        /// Polarization vector JSON.
        #[arg(long)]
        polarization: String,
    },
    /// B(W) = 2r·c₂ − (r−1)·c₁².
    Bogomolov {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        bundle: String,
    },
    /// Check the Whitney-split Bogomolov identity.
    Identity {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Whitney-sum numerics of two bundles.
    Sum {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        v1: String,
        #[arg(long)]
        v2: String,
    },
    /// Suitability threshold t₀ = n³c₂/4.
    Threshold {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
    /// Bounded box search for potential walls.
    Walls {
        #[arg(long)]
        lattice: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        c2: i64,
        /// Rational t in the polarization H₀ + t·f, as "p/q" or an integer.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
        #[arg(long, default_value_t = 10)]
        bound: i64,
    },
    /// c₂ after an allowable elementary modification.
    Modify {
        #[arg(long)]
        c2: i64,
        #[arg(long, allow_hyphen_values = true)]
        e: i64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Master,
    Recursion,
    C1c2,
    Branches,
    Specialization,
    Wn,
    All,
}

// ---------------------------------------------------------------------------
// JSON adapters
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct JsonCurve {
    field: String,
    g2: String,
    g3: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonPoint {
    #[serde(rename = "X")]
    x: String,
    #[serde(rename = "Y")]
    y: String,
    #[serde(rename = "Z")]
    z: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonComponent {
    point: Value,
    partition: Vec<u32>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonBundle {
    curve: JsonCurve,
    components: Vec<JsonComponent>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDivisorEntry {
    point: JsonPoint,
    index: u32,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonDivisor {
    curve: JsonCurve,
    points: Vec<JsonDivisorEntry>,
    #[serde(default)]
    singular: u32,
}

fn parse_field(s: &str) -> Result<Field, String> {
    if s.eq_ignore_ascii_case("q") {
        return Ok(Field::Q);
    }
    let digits = s.strip_prefix('F').or_else(|| s.strip_prefix('f')).unwrap_or(s);
    let p: u64 = digits
        .parse()
        .map_err(|_| format!("unrecognized field {s:?}: expected \"Q\" or \"F<p>\""))?;
    Field::Fp(p).validate().map_err(|e| e.to_string())
}

fn parse_curve_flags(flags: &CurveFlags) -> Result<WeierstrassCurve, String> {
    let field = parse_field(&flags.field)?;
    let g2 = FieldElem::parse(field, &flags.g2).map_err(|e| e.to_string())?;
    let g3 = FieldElem::parse(field, &flags.g3).map_err(|e| e.to_string())?;
    WeierstrassCurve::new(g2, g3).map_err(|e| e.to_string())
}

fn curve_from_json(j: &JsonCurve) -> Result<WeierstrassCurve, String> {
    parse_curve_flags(&CurveFlags {
        field: j.field.clone(),
        g2: j.g2.clone(),
        g3: j.g3.clone(),
    })
}

fn curve_to_json(c: &WeierstrassCurve) -> JsonCurve {
    JsonCurve {
        field: c.field().to_string(),
        g2: c.g2().to_string(),
        g3: c.g3().to_string(),
    }
}

fn point_from_json(field: Field, j: &JsonPoint) -> Result<CurvePoint, String> {
    let x = FieldElem::parse(field, &j.x).map_err(|e| e.to_string())?;
    let y = FieldElem::parse(field, &j.y).map_err(|e| e.to_string())?;
    let z = FieldElem::parse(field, &j.z).map_err(|e| e.to_string())?;
    if z.is_zero() {
        return Ok(CurvePoint::Identity);
    }
    let zi = z.inv().map_err(|e| e.to_string())?;
    Ok(CurvePoint::affine(
        x.mul(&zi).map_err(|e| e.to_string())?,
        y.mul(&zi).map_err(|e| e.to_string())?,
    ))
}

fn parse_point_arg(field: Field, s: &str) -> Result<CurvePoint, String> {
    let j: JsonPoint = serde_json::from_str(s).map_err(|e| format!("bad point JSON: {e}"))?;
    point_from_json(field, &j)
}

fn point_to_json(p: &CurvePoint) -> JsonPoint {
    match p {
        CurvePoint::Identity => JsonPoint {
            x: "0".into(),
            y: "1".into(),
            z: "0".into(),
        },
        CurvePoint::Affine { x, y } => JsonPoint {
            x: x.to_string(),
            y: y.to_string(),
            z: "1".into(),
        },
    }
}

fn bundle_from_json(s: &str) -> Result<AtiyahBundle, String> {
    let j: JsonBundle = serde_json::from_str(s).map_err(|e| format!("bad bundle JSON: {e}"))?;
    let curve = curve_from_json(&j.curve)?;
    let mut components = Vec::new();
    for comp in &j.components {
        let sheaf = match &comp.point {
            Value::String(s) if s == "F" => DegreeZeroSheaf::TorsionF,
            v => {
                let jp: JsonPoint = serde_json::from_value(v.clone())
                    .map_err(|e| format!("bad component point: {e}"))?;
                DegreeZeroSheaf::LineBundle(point_from_json(curve.field(), &jp)?)
            }
        };
        components.push((sheaf, comp.partition.clone()));
    }
    AtiyahBundle::new(curve, components).map_err(|e| e.to_string())
}

fn bundle_to_json(b: &AtiyahBundle) -> JsonBundle {
    JsonBundle {
        curve: curve_to_json(b.curve()),
        components: b
            .components()
            .iter()
            .map(|(sheaf, partition)| JsonComponent {
                point: match sheaf {
                    DegreeZeroSheaf::TorsionF => Value::String("F".into()),
                    DegreeZeroSheaf::LineBundle(p) => {
                        serde_json::to_value(point_to_json(p)).unwrap()
                    }
                },
                partition: partition.clone(),
            })
            .collect(),
    }
}

fn divisor_from_json(s: &str) -> Result<LinearSystemDivisor, String> {
    let j: JsonDivisor = serde_json::from_str(s).map_err(|e| format!("bad divisor JSON: {e}"))?;
    let curve = curve_from_json(&j.curve)?;
    let mut points = Vec::new();
    for entry in &j.points {
        points.push((point_from_json(curve.field(), &entry.point)?, entry.index));
    }
    LinearSystemDivisor::new(curve, points, j.singular).map_err(|e| e.to_string())
}

fn divisor_to_json(d: &LinearSystemDivisor) -> JsonDivisor {
    JsonDivisor {
        curve: curve_to_json(d.curve()),
        points: d
            .smooth_part()
            .iter()
            .map(|(p, &m)| JsonDivisorEntry {
                point: point_to_json(p),
                index: m,
            })
            .collect(),
        singular: d.singular_mult(),
    }
}

fn parse_rational(s: &str) -> Result<Rational64, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: i64 = num.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    let d: i64 = den.trim().parse().map_err(|_| format!("bad rational {s:?}"))?;
    if d == 0 {
        return Err(format!("bad rational {s:?}: zero denominator"));
    }
    Ok(Rational64::new(n, d))
}

fn parse_vec(s: &str) -> Result<Vec<i64>, String> {
    serde_json::from_str(s).map_err(|e| format!("bad integer vector: {e}"))
}

// ---------------------------------------------------------------------------
// Output assembly
// ---------------------------------------------------------------------------

struct Output {
    text: String,
    json: Value,
}

fn class_output(c: &GradedClass) -> Output {
    // coefficient map keyed by monomial, e.g. "sigma*L^2" -> "-1/2"
    let names = c.spec().names();
    let mut coefficients = serde_json::Map::new();
    for (monomial, coeff) in c.terms() {
        let key = monomial
            .iter()
            .zip(names)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, name)| {
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*");
        let key = if key.is_empty() { "1".to_string() } else { key };
        coefficients.insert(key, Value::String(coeff.to_string()));
    }
    Output {
        text: c.to_string(),
        json: json!({ "class": c.to_string(), "coefficients": coefficients }),
    }
}

fn scalar_output(key: &str, text: String) -> Output {
    Output {
        text: text.clone(),
        json: json!({ key: text }),
    }
}

fn divisor_output(d: &LinearSystemDivisor) -> Output {
    let text = d
        .smooth_part()
        .iter()
        .map(|(p, m)| format!("{m}*{p}"))
        .chain((d.singular_mult() > 0).then(|| format!("{}*sing", d.singular_mult())))
        .collect::<Vec<_>>()
        .join(" + ");
    Output {
        text: if text.is_empty() { "0".into() } else { text },
        json: serde_json::to_value(divisor_to_json(d)).unwrap(),
    }
}

fn bundle_output(b: &AtiyahBundle) -> Output {
    let text = b
        .components()
        .iter()
        .flat_map(|(sheaf, parts)| {
            parts
                .iter()
                .map(move |r| format!("I_{r}({sheaf})"))
        })
        .collect::<Vec<_>>()
        .join(" + ");
    Output {
        text,
        json: serde_json::to_value(bundle_to_json(b)).unwrap(),
    }
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

fn run_curve(cmd: &CurveCmd) -> Result<Output, String> {
    match cmd {
        CurveCmd::Classify(flags) => {
            let c = parse_curve_flags(flags)?;
            Ok(scalar_output("type", c.classify().to_string()))
        }
        CurveCmd::Discriminant(flags) => {
            let field = parse_field(&flags.field)?;
            let g2 = FieldElem::parse(field, &flags.g2).map_err(|e| e.to_string())?;
            let g3 = FieldElem::parse(field, &flags.g3).map_err(|e| e.to_string())?;
            let d = discriminant(&g2, &g3).map_err(|e| e.to_string())?;
            Ok(scalar_output("discriminant", d.to_string()))
        }
        CurveCmd::SingularPoint(flags) => {
            let c = parse_curve_flags(flags)?;
            match c.singular_point() {
                Some(p) => Ok(Output {
                    text: p.to_string(),
                    json: serde_json::to_value(point_to_json(&p)).unwrap(),
                }),
                None => Ok(scalar_output("singular_point", "none".into())),
            }
        }
        CurveCmd::CheckPoint { curve, p } => {
            let c = parse_curve_flags(curve)?;
            let p = parse_point_arg(c.field(), p)?;
            let on = c.contains(&p);
            let smooth = c.is_smooth_point(&p);
            Ok(Output {
                text: format!("on_curve={on} smooth={smooth}"),
                json: json!({ "on_curve": on, "smooth": smooth }),
            })
        }
        CurveCmd::Add { curve, p, q } => {
            let c = parse_curve_flags(curve)?;
            let p = parse_point_arg(c.field(), p)?;
            let q = parse_point_arg(c.field(), q)?;
            let s = c.add(&p, &q).map_err(|e| e.to_string())?;
            Ok(Output {
                text: s.to_string(),
                json: serde_json::to_value(point_to_json(&s)).unwrap(),
            })
        }
        CurveCmd::Neg { curve, p } => {
            let c = parse_curve_flags(curve)?;
            let p = parse_point_arg(c.field(), p)?;
            let s = c.neg(&p);
            Ok(Output {
                text: s.to_string(),
                json: serde_json::to_value(point_to_json(&s)).unwrap(),
            })
        }
        CurveCmd::Mul { curve, k, p } => {
            let c = parse_curve_flags(curve)?;
            let p = parse_point_arg(c.field(), p)?;
            let s = c.scalar_mul(*k, &p).map_err(|e| e.to_string())?;
            Ok(Output {
                text: s.to_string(),
                json: serde_json::to_value(point_to_json(&s)).unwrap(),
            })
        }
        CurveCmd::Points(flags) => {
            let c = parse_curve_flags(flags)?;
            let pts = c.enumerate_points().map_err(|e| e.to_string())?;
            Ok(Output {
                text: pts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: Value::Array(
                    pts.iter()
                        .map(|p| serde_json::to_value(point_to_json(p)).unwrap())
                        .collect(),
                ),
            })
        }
        CurveCmd::SplitNodal(flags) => {
            let c = parse_curve_flags(flags)?;
            let text = match c.is_split_nodal() {
                Some(true) => "split",
                Some(false) => "non-split",
                None => "not nodal",
            };
            Ok(scalar_output("split_nodal", text.into()))
        }
        CurveCmd::Torsion { curve, n } => {
            let c = parse_curve_flags(curve)?;
            let pts = c.torsion_points(*n).map_err(|e| e.to_string())?;
            Ok(Output {
                text: pts
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: Value::Array(
                    pts.iter()
                        .map(|p| serde_json::to_value(point_to_json(p)).unwrap())
                        .collect(),
                ),
            })
        }
        CurveCmd::InSystem { curve, points, n } => {
            let c = parse_curve_flags(curve)?;
            let jps: Vec<JsonPoint> =
                serde_json::from_str(points).map_err(|e| format!("bad points JSON: {e}"))?;
            let pts = jps
                .iter()
                .map(|j| point_from_json(c.field(), j))
                .collect::<Result<Vec<_>, _>>()?;
            let ok = c.in_linear_system(&pts, *n).map_err(|e| e.to_string())?;
            Ok(Output {
                text: ok.to_string(),
                json: json!({ "in_system": ok }),
            })
        }
    }
}

fn run_zeta(cmd: &ZetaCmd) -> Result<Output, String> {
    match cmd {
        ZetaCmd::Compute { bundle } => {
            let b = bundle_from_json(bundle)?;
            Ok(divisor_output(&b.zeta()))
        }
        ZetaCmd::Inspect { bundle } => {
            let b = bundle_from_json(bundle)?;
            let regular = b.is_regular().map_err(|e| e.to_string())?;
            Ok(Output {
                text: format!("rank={} regular={regular}", b.rank()),
                json: json!({ "rank": b.rank(), "regular": regular }),
            })
        }
        ZetaCmd::DimHom { bundle, other } => {
            let b = bundle_from_json(bundle)?;
            let o = bundle_from_json(other)?;
            let d = b.dim_hom(&o).map_err(|e| e.to_string())?;
            Ok(Output {
                text: d.to_string(),
                json: json!({ "dim_hom": d }),
            })
        }
        ZetaCmd::DirectSum { bundle, other } => {
            let b = bundle_from_json(bundle)?;
            let o = bundle_from_json(other)?;
            Ok(bundle_output(&b.direct_sum(&o).map_err(|e| e.to_string())?))
        }
        ZetaCmd::Dual { bundle } => {
            let b = bundle_from_json(bundle)?;
            Ok(bundle_output(&b.dual()))
        }
        ZetaCmd::DetPoint { bundle } => {
            let b = bundle_from_json(bundle)?;
            let p = b.det_point().map_err(|e| e.to_string())?;
            Ok(Output {
                text: p.to_string(),
                json: serde_json::to_value(point_to_json(&p)).unwrap(),
            })
        }
        ZetaCmd::H0Twist { bundle, sheaf } => {
            let b = bundle_from_json(bundle)?;
            let sheaf = match serde_json::from_str::<Value>(sheaf) {
                Ok(Value::String(s)) if s == "F" => DegreeZeroSheaf::TorsionF,
                _ => {
                    let p = parse_point_arg(b.curve().field(), sheaf)?;
                    DegreeZeroSheaf::LineBundle(p)
                }
            };
            let h = b.h0_twist(&sheaf);
            Ok(Output {
                text: h.to_string(),
                json: json!({ "h0": h }),
            })
        }
        ZetaCmd::H0Bound { profile, h0 } => {
            let profile: Vec<(u32, i64)> =
                serde_json::from_str(profile).map_err(|e| format!("bad profile JSON: {e}"))?;
            let (bound, ok) = h0_bound_check(&profile, *h0).map_err(|e| e.to_string())?;
            Ok(Output {
                text: format!("bound={bound} satisfied={ok}"),
                json: json!({ "bound": bound.to_string(), "satisfied": ok }),
            })
        }
        ZetaCmd::Divisor { divisor } => {
            let d = divisor_from_json(divisor)?;
            let class = d.class_point().map_err(|e| e.to_string())?;
            let in_np0 = d.is_in_np0().map_err(|e| e.to_string())?;
            Ok(Output {
                text: format!("degree={} class={class} in_np0={in_np0}", d.degree()),
                json: json!({
                    "degree": d.degree(),
                    "class": serde_json::to_value(point_to_json(&class)).unwrap(),
                    "in_np0": in_np0,
                }),
            })
        }
    }
}

fn run_spectral(cmd: &SpectralCmd) -> Result<Output, String> {
    match cmd {
        SpectralCmd::Of { divisor } => {
            let d = divisor_from_json(divisor)?;
            let f = spectral::fiber(&d).map_err(|e| e.to_string())?;
            let text = f
                .points()
                .iter()
                .map(|(p, m)| format!("{p} (index {m})"))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output {
                text: format!(
                    "{text}\ntotal={} unramified={} total_ramification={}",
                    f.total_index(),
                    f.is_unramified(),
                    f.is_total_ramification()
                ),
                json: json!({
                    "points": f.points().iter().map(|(p, m)| json!({
                        "point": serde_json::to_value(point_to_json(p)).unwrap(),
                        "index": m,
                    })).collect::<Vec<_>>(),
                    "total_index": f.total_index(),
                    "unramified": f.is_unramified(),
                    "total_ramification": f.is_total_ramification(),
                }),
            })
        }
        SpectralCmd::Ramification { curve, n } => {
            let c = parse_curve_flags(curve)?;
            let locus = spectral::full_ramification_locus(&c, *n).map_err(|e| e.to_string())?;
            let outs: Vec<Output> = locus.iter().map(divisor_output).collect();
            Ok(Output {
                text: outs
                    .iter()
                    .map(|o| o.text.clone())
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: Value::Array(outs.into_iter().map(|o| o.json).collect()),
            })
        }
        SpectralCmd::OfR {
            curve,
            n,
            e,
            samples,
        } => {
            let c = parse_curve_flags(curve)?;
            let e = parse_point_arg(c.field(), e)?;
            let fam = spectral::fiber_of_r(&c, *n, &e, *samples).map_err(|e| e.to_string())?;
            let outs: Vec<Output> = fam.iter().map(divisor_output).collect();
            Ok(Output {
                text: outs
                    .iter()
                    .map(|o| o.text.clone())
                    .collect::<Vec<_>>()
                    .join("\n"),
                json: Value::Array(outs.into_iter().map(|o| o.json).collect()),
            })
        }
        SpectralCmd::Irreducible { family } => {
            let raw: Vec<Value> =
                serde_json::from_str(family).map_err(|e| format!("bad family JSON: {e}"))?;
            let fam = raw
                .iter()
                .map(|v| divisor_from_json(&v.to_string()))
                .collect::<Result<Vec<_>, _>>()?;
            let irred = spectral::cover_is_irreducible(&fam).map_err(|e| e.to_string())?;
            Ok(Output {
                text: irred.to_string(),
                json: json!({ "irreducible": irred }),
            })
        }
    }
}

fn chern_ring(choice: RingChoice, n: u32) -> Arc<RingSpec> {
    let trunc = default_truncation();
    match choice {
        RingChoice::Fibration => chern::fibration_ring(trunc),
        RingChoice::Section => RingSpec::section(trunc),
        RingChoice::SingleCurve => chern::single_curve_ring(n, trunc),
    }
}

fn run_chern(cmd: &ChernCmd) -> Result<Output, String> {
    let class = |r: Result<GradedClass, chern::FormulaError>| -> Result<Output, String> {
        r.map(|c| class_output(&c)).map_err(|e| e.to_string())
    };
    match cmd {
        ChernCmd::Ua { n, a, ring } => {
            let spec = chern_ring(*ring, *n);
            match ring {
                RingChoice::SingleCurve => class(chern::ch_ua_twist_singlecurve(&spec, *n, *a, 0)),
                _ => class(chern::ch_ua_fibration(&spec, *n, *a)),
            }
        }
        ChernCmd::Ud { n, d, ring } => {
            let spec = chern_ring(*ring, *n);
            match ring {
                RingChoice::SingleCurve => class(chern::ch_ud_singlecurve(&spec, *n, *d)),
                _ => class(chern::ch_ud_fibration(&spec, *n, *d)),
            }
        }
        ChernCmd::CUa { n, a, ring, branch } => {
            let spec = chern_ring(*ring, *n);
            match (ring, branch) {
                (RingChoice::SingleCurve, _) => class(chern::c_ua_singlecurve(&spec, *n, *a)),
                (_, Some(b)) => {
                    let r = chern::c_ua_fibration_branch(&spec, *n, *a, *b)
                        .map_err(|e| e.to_string())?;
                    match r {
                        Some(c) => Ok(class_output(&c)),
                        None => Err(format!("branch {b} is not defined at a = {a}")),
                    }
                }
                (_, None) => class(chern::c_ua_fibration(&spec, *n, *a)),
            }
        }
        ChernCmd::CUd { n, d, ring } => {
            let spec = chern_ring(*ring, *n);
            match ring {
                RingChoice::SingleCurve => class(chern::c_ud_singlecurve(&spec, *n, *d)),
                _ => class(chern::c_ud_fibration(&spec, *n, *d)),
            }
        }
        ChernCmd::U0 { n, kind } => {
            let spec = chern_ring(RingChoice::SingleCurve, *n);
            match kind.as_str() {
                "ch" => class(chern::ch_u0_singlecurve(&spec, *n)),
                "c" => class(chern::c_u0_singlecurve(&spec, *n)),
                other => Err(format!("unknown kind {other:?}: expected \"ch\" or \"c\"")),
            }
        }
        ChernCmd::Twist { n, a, b } => {
            let spec = chern_ring(RingChoice::SingleCurve, *n);
            class(chern::ch_ua_twist_singlecurve(&spec, *n, *a, *b))
        }
        ChernCmd::Vn { n } => {
            let spec = chern_ring(RingChoice::Fibration, *n);
            class(chern::ch_vn(&spec, *n))
        }
        ChernCmd::Wn { n, on_sigma } => {
            let spec = chern_ring(RingChoice::Fibration, *n);
            if *on_sigma {
                class(chern::ch_wn_on_sigma(&spec, *n))
            } else {
                class(chern::ch_wn(&spec, *n))
            }
        }
        ChernCmd::C1 { n, a } => {
            let spec = chern_ring(RingChoice::Fibration, *n);
            class(chern::c1_ua_display(&spec, *n, *a))
        }
        ChernCmd::C2 { n, a } => {
            let spec = chern_ring(RingChoice::Fibration, *n);
            class(chern::c2_ua_display(&spec, *n, *a))
        }
        ChernCmd::Specialize { n, a } => {
            let spec = chern_ring(RingChoice::Fibration, *n);
            let x = chern::ch_ua_fibration(&spec, *n, *a).map_err(|e| e.to_string())?;
            class(chern::specialize_single_curve(&x, *n))
        }
    }
}

fn parse_section(s: &str) -> Result<SectionSpec, String> {
    serde_json::from_str(s).map_err(|e| format!("bad section JSON: {e}"))
}

fn vec_output(v: &[i64]) -> Output {
    Output {
        text: format!(
            "[{}]",
            v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", ")
        ),
        json: serde_json::to_value(v).unwrap(),
    }
}

fn run_section(cmd: &SectionCmd) -> Result<Output, String> {
    match cmd {
        SectionCmd::Ch { section, a } => {
            let s = parse_section(section)?;
            let spec = s.ring(default_truncation());
            let ch = fibration::ch_vaa(&spec, &s, *a).map_err(|e| e.to_string())?;
            Ok(class_output(&ch))
        }
        SectionCmd::Det { section, a } => {
            let s = parse_section(section)?;
            Ok(vec_output(&fibration::det_vaa(&s, *a)))
        }
        SectionCmd::TrivialDet { section } => {
            let s = parse_section(section)?;
            match fibration::trivial_det_solve(&s) {
                Some((a, n0)) => Ok(Output {
                    text: format!("a={a} (mod {}) N0={}", s.n, vec_output(&n0).text),
                    json: json!({ "a_mod_n": a, "N0": n0 }),
                }),
                None => Ok(Output {
                    text: "no solution".into(),
                    json: json!({ "a_mod_n": Value::Null }),
                }),
            }
        }
        SectionCmd::TwistC1 {
            section,
            pushforward,
        } => {
            let s = parse_section(section)?;
            let push = parse_vec(pushforward)?;
            let v = fibration::c1_va0_twist(&s, &push).map_err(|e| e.to_string())?;
            Ok(vec_output(&v))
        }
        SectionCmd::Parity { section } => {
            let s = parse_section(section)?;
            let text = match fibration::symmetric_parity_check(&s) {
                ParityCheck::NecessaryHolds => "Necessary-holds",
                ParityCheck::Fails => "Fails",
            };
            Ok(scalar_output("parity", text.into()))
        }
        SectionCmd::ReducibleStep { section, a } => {
            let s = parse_section(section)?;
            let spec = s.ring(default_truncation());
            let (inc, d) = fibration::reducible_step(&spec, &s, *a).map_err(|e| e.to_string())?;
            Ok(Output {
                text: format!("increment = {inc}\n[D] = {}", vec_output(&d).text),
                json: json!({ "increment": inc.to_string(), "D": d }),
            })
        }
        SectionCmd::CoverClass { section } => {
            let s = parse_section(section)?;
            let (n, alpha) = fibration::spectral_cover_class(&s);
            Ok(Output {
                text: format!("{n}*sigma + {}", vec_output(&alpha).text),
                json: json!({ "sigma_coefficient": n, "alpha": alpha }),
            })
        }
        SectionCmd::NormalBundle { section } => {
            let s = parse_section(section)?;
            let spec = s.ring(default_truncation());
            let ch = fibration::normal_bundle_ch(&spec, &s).map_err(|e| e.to_string())?;
            Ok(class_output(&ch))
        }
        SectionCmd::Splitting {
            n,
            a,
            at_p0,
            generic_line,
        } => {
            let t = fibration::splitting_type_slice(*n, *a, *at_p0, *generic_line)
                .map_err(|e| e.to_string())?;
            Ok(vec_output(&t))
        }
    }
}

fn parse_lattice(s: &str) -> Result<SurfaceLattice, String> {
    serde_json::from_str(s).map_err(|e| format!("bad lattice JSON: {e}"))
}

fn parse_numerics(s: &str) -> Result<BundleNumerics, String> {
    serde_json::from_str(s).map_err(|e| format!("bad bundle numerics JSON: {e}"))
}

fn run_stability(cmd: &StabilityCmd) -> Result<Output, String> {
    match cmd {
        StabilityCmd::Slope {
            lattice,
            bundle,
            polarization,
        } => {
            let l = parse_lattice(lattice)?;
            let w = parse_numerics(bundle)?;
            let pol = parse_vec(polarization)?;
            let mu = stability::slope(&l, &w, &pol).map_err(|e| e.to_string())?;
            Ok(scalar_output("slope", mu.to_string()))
        }
        StabilityCmd::Bogomolov { lattice, bundle } => {
            let l = parse_lattice(lattice)?;
            let w = parse_numerics(bundle)?;
            let b = stability::bogomolov(&l, &w).map_err(|e| e.to_string())?;
            Ok(scalar_output("bogomolov", b.to_string()))
        }
        StabilityCmd::Identity { lattice, v1, v2 } => {
            let l = parse_lattice(lattice)?;
            let v1 = parse_numerics(v1)?;
            let v2 = parse_numerics(v2)?;
            let ok =
                stability::bogomolov_identity_check(&l, &v1, &v2).map_err(|e| e.to_string())?;
            Ok(Output {
                text: ok.to_string(),
                json: json!({ "identity_holds": ok }),
            })
        }
        StabilityCmd::Sum { lattice, v1, v2 } => {
            let l = parse_lattice(lattice)?;
            let v1 = parse_numerics(v1)?;
            let v2 = parse_numerics(v2)?;
            let v = stability::whitney_sum(&l, &v1, &v2).map_err(|e| e.to_string())?;
            Ok(Output {
                text: format!("n={} c1={} c2={}", v.n, vec_output(&v.c1).text, v.c2),
                json: serde_json::to_value(&v).unwrap(),
            })
        }
        StabilityCmd::Threshold { n, c2 } => {
            let t0 = stability::stability_threshold(*n, *c2).map_err(|e| e.to_string())?;
            Ok(scalar_output("t0", t0.to_string()))
        }
        StabilityCmd::Walls {
            lattice,
            n,
            c2,
            t,
            bound,
        } => {
            let l = parse_lattice(lattice)?;
            let t = parse_rational(t)?;
            let walls = stability::wall_search(&l, *n, *c2, t, *bound).map_err(|e| e.to_string())?;
            Ok(Output {
                text: if walls.is_empty() {
                    "no walls".into()
                } else {
                    walls
                        .iter()
                        .map(|d| vec_output(d).text)
                        .collect::<Vec<_>>()
                        .join("\n")
                },
                json: serde_json::to_value(&walls).unwrap(),
            })
        }
        StabilityCmd::Modify { c2, e } => {
            let next = stability::allowable_modification_c2(*c2, *e).map_err(|e| e.to_string())?;
            Ok(scalar_output("c2", next.to_string()))
        }
    }
}

fn run_verify(suite: Suite, nmax: u32, amax: i64) -> Result<Output, String> {
    let trunc = default_truncation();
    let mut lines = Vec::new();
    let mut counts = serde_json::Map::new();
    let mut run = |name: &str, r: Result<u32, String>| -> Result<(), String> {
        let count = r.map_err(|e| format!("{name}: {e}"))?;
        lines.push(format!("{name}: PASS ({count} identities)"));
        counts.insert(name.to_string(), json!(count));
        Ok(())
    };
    let all = suite == Suite::All;
    if all || suite == Suite::Master {
        run("master", chern::verify_master_identity(nmax, trunc))?;
    }
    if all || suite == Suite::Recursion {
        run(
            "recursion",
            chern::verify_modification_recursion(nmax, amax, trunc),
        )?;
    }
    if all || suite == Suite::C1c2 {
        run("c1c2", chern::verify_c1_c2_display(nmax, amax, trunc))?;
    }
    if all || suite == Suite::Branches {
        run(
            "branches",
            chern::verify_chern_product_branches(nmax, amax, trunc),
        )?;
    }
    if all || suite == Suite::Specialization {
        run(
            "specialization",
            chern::verify_single_curve_specialization(nmax, trunc),
        )?;
    }
    if all || suite == Suite::Wn {
        run("wn", chern::verify_wn_restriction(nmax, trunc))?;
    }
    Ok(Output {
        text: lines.join("\n"),
        json: Value::Object(counts),
    })
}

fn run_verb(verb: &Verb) -> Result<Output, String> {
    match verb {
        Verb::Curve(cmd) => run_curve(cmd),
        Verb::Zeta(cmd) => run_zeta(cmd),
        Verb::RegularRep { divisor } => {
            let d = divisor_from_json(divisor)?;
            let b = d.regular_representative().map_err(|e| e.to_string())?;
            Ok(bundle_output(&b))
        }
        Verb::SpectralFiber(cmd) => run_spectral(cmd),
        Verb::Chern(cmd) => run_chern(cmd),
        Verb::Section(cmd) => run_section(cmd),
        Verb::Stability(cmd) => run_stability(cmd),
        Verb::VerifyIdentities { suite, nmax, amax } => run_verify(*suite, *nmax, *amax),
    }
}

/// Parse and run; returns (exit code, stdout, stderr). The binary wraps this.
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (0, e.to_string(), String::new())
                }
                _ => (2, String::new(), e.to_string()),
            };
        }
    };
    match run_verb(&cli.verb) {
        Ok(out) => {
            let stdout = match cli.format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).unwrap(),
            };
            (0, stdout + "\n", String::new())
        }
        Err(msg) => {
            let err = serde_json::to_string(&json!({ "error": msg })).unwrap();
            (1, String::new(), err + "\n")
        }
    }
}

/// Static table mapping each module operation to a sample invocation, used
/// by the coverage test and as living documentation.
pub fn dispatch_table() -> Vec<(&'static str, Vec<&'static str>)> {
    const CURVE: [&str; 6] = ["--field", "F5", "--g2", "4", "--g3", "0"];
    const P11: &str = r#"{"X":"2","Y":"2","Z":"1"}"#;
    const DIV: &str = r#"{"curve":{"field":"F5","g2":"4","g3":"0"},"points":[{"point":{"X":"0","Y":"1","Z":"0"},"index":2}],"singular":0}"#;
    const BUNDLE: &str = r#"{"curve":{"field":"F5","g2":"4","g3":"0"},"components":[{"point":{"X":"0","Y":"1","Z":"0"},"partition":[2]}]}"#;
    const SECTION: &str = r#"{"picRank":1,"L":[1],"alpha":[3],"n":2,"dimB":1,"flags":{}}"#;
    const LATTICE: &str = r#"{"generators":["sigma","f"],"gram":[[-1,1],[1,0]],"H0":[1,2],"degL":1}"#;
    const NUM: &str = r#"{"n":2,"c1":[0,1],"c2":1}"#;
    let with_curve = |mut v: Vec<&'static str>| -> Vec<&'static str> {
        v.extend(CURVE);
        v
    };
    vec![
        ("curve::discriminant", with_curve(vec!["curve", "discriminant"])),
        ("curve::classify", with_curve(vec!["curve", "classify"])),
        ("curve::singular_point", with_curve(vec!["curve", "singular-point"])),
        ("curve::check_smooth", {
            let mut v = with_curve(vec!["curve", "check-point"]);
            v.extend(["--p", P11]);
            v
        }),
        ("curve::add", {
            let mut v = with_curve(vec!["curve", "add"]);
            v.extend(["--p", P11, "--q", P11]);
            v
        }),
        ("curve::neg", {
            let mut v = with_curve(vec!["curve", "neg"]);
            v.extend(["--p", P11]);
            v
        }),
        ("curve::scalar_mul", {
            let mut v = with_curve(vec!["curve", "mul"]);
            v.extend(["--k", "3", "--p", P11]);
            v
        }),
        ("curve::enumerate_points", with_curve(vec!["curve", "points"])),
        ("curve::is_split_nodal", with_curve(vec!["curve", "split-nodal"])),
        ("curve::torsion_points", {
            let mut v = with_curve(vec!["curve", "torsion"]);
            v.extend(["--n", "2"]);
            v
        }),
        ("curve::in_linear_system", {
            let mut v = with_curve(vec!["curve", "in-system"]);
            v.extend(["--points", r#"[{"X":"0","Y":"1","Z":"0"},{"X":"0","Y":"1","Z":"0"}]"#, "--n", "2"]);
            v
        }),
        ("bundles::zeta", vec!["zeta", "compute", "--bundle", BUNDLE]),
        ("bundles::rank", vec!["zeta", "inspect", "--bundle", BUNDLE]),
        ("bundles::is_regular", vec!["zeta", "inspect", "--bundle", BUNDLE]),
        ("bundles::dim_hom", vec!["zeta", "dim-hom", "--bundle", BUNDLE, "--other", BUNDLE]),
        ("bundles::direct_sum", vec!["zeta", "direct-sum", "--bundle", BUNDLE, "--other", BUNDLE]),
        ("bundles::dual", vec!["zeta", "dual", "--bundle", BUNDLE]),
        ("bundles::det_point", vec!["zeta", "det-point", "--bundle", BUNDLE]),
        ("bundles::h0_twist", vec!["zeta", "h0-twist", "--bundle", BUNDLE, "--sheaf", r#"{"X":"0","Y":"1","Z":"0"}"#]),
        ("bundles::h0_bound_check", vec!["zeta", "h0-bound", "--profile", "[[1,1],[2,0]]", "--h0", "2"]),
        ("bundles::class_point", vec!["zeta", "divisor", "--divisor", DIV]),
        ("bundles::is_in_np0", vec!["zeta", "divisor", "--divisor", DIV]),
        ("bundles::regular_representative", vec!["regular-rep", "--divisor", DIV]),
        ("spectral::fiber", vec!["spectral-fiber", "of", "--divisor", DIV]),
        ("spectral::full_ramification_locus", {
            let mut v = vec!["spectral-fiber", "ramification"];
            v.extend(CURVE);
            v.extend(["--n", "2"]);
            v
        }),
        ("spectral::fiber_of_r", {
            let mut v = vec!["spectral-fiber", "of-r"];
            v.extend(CURVE);
            v.extend(["--n", "2", "--e", P11]);
            v
        }),
        ("spectral::cover_is_irreducible", {
            vec!["spectral-fiber", "irreducible", "--family", r#"[{"curve":{"field":"F5","g2":"4","g3":"0"},"points":[{"point":{"X":"0","Y":"1","Z":"0"},"index":2}],"singular":0}]"#]
        }),
        ("chern::ch_ua_fibration", vec!["chern", "ua", "--n", "3", "--a", "0", "--ring", "fibration"]),
        ("chern::ch_ud_fibration", vec!["chern", "ud", "--n", "3", "--d", "1", "--ring", "fibration"]),
        ("chern::ch_ua_twist_singlecurve", vec!["chern", "twist", "--n", "3", "--a", "1", "--b", "1"]),
        ("chern::ch_ud_singlecurve", vec!["chern", "ud", "--n", "3", "--d", "1", "--ring", "single-curve"]),
        ("chern::c_ua_fibration", vec!["chern", "c-ua", "--n", "3", "--a", "0"]),
        ("chern::c_ua_fibration_branch", vec!["chern", "c-ua", "--n", "3", "--a", "0", "--branch", "1"]),
        ("chern::c_ud_fibration", vec!["chern", "c-ud", "--n", "3", "--d", "1"]),
        ("chern::c_ua_singlecurve", vec!["chern", "c-ua", "--n", "3", "--a", "0", "--ring", "single-curve"]),
        ("chern::c_ud_singlecurve", vec!["chern", "c-ud", "--n", "3", "--d", "1", "--ring", "single-curve"]),
        ("chern::ch_u0_singlecurve", vec!["chern", "u0", "--n", "3", "--kind", "ch"]),
        ("chern::c_u0_singlecurve", vec!["chern", "u0", "--n", "3", "--kind", "c"]),
        ("chern::ch_vn", vec!["chern", "vn", "--n", "3"]),
        ("chern::ch_wn", vec!["chern", "wn", "--n", "3"]),
        ("chern::ch_wn_on_sigma", vec!["chern", "wn", "--n", "3", "--on-sigma"]),
        ("chern::c1_ua_display", vec!["chern", "c1", "--n", "3", "--a", "0"]),
        ("chern::c2_ua_display", vec!["chern", "c2", "--n", "3", "--a", "0"]),
        ("chern::specialize_single_curve", vec!["chern", "specialize", "--n", "3", "--a", "0"]),
        ("chern::verify_master_identity", vec!["verify-identities", "--suite", "master", "--nmax", "4"]),
        ("chern::verify_modification_recursion", vec!["verify-identities", "--suite", "recursion", "--nmax", "4", "--amax", "3"]),
        ("chern::verify_c1_c2_display", vec!["verify-identities", "--suite", "c1c2", "--nmax", "4", "--amax", "3"]),
        ("chern::verify_chern_product_branches", vec!["verify-identities", "--suite", "branches", "--nmax", "4", "--amax", "3"]),
        ("chern::verify_single_curve_specialization", vec!["verify-identities", "--suite", "specialization", "--nmax", "4"]),
        ("chern::verify_wn_restriction", vec!["verify-identities", "--suite", "wn", "--nmax", "4"]),
        ("fibration::ch_vaa", vec!["section", "ch", "--section", SECTION, "--a", "0"]),
        ("fibration::det_vaa", vec!["section", "det", "--section", SECTION, "--a", "0"]),
        ("fibration::trivial_det_solve", vec!["section", "trivial-det", "--section", SECTION]),
        ("fibration::c1_va0_twist", vec!["section", "twist-c1", "--section", SECTION, "--pushforward", "[5]"]),
        ("fibration::symmetric_parity_check", vec!["section", "parity", "--section", SECTION]),
        ("fibration::reducible_step", vec!["section", "reducible-step", "--section", SECTION, "--a", "0"]),
        ("fibration::spectral_cover_class", vec!["section", "cover-class", "--section", SECTION]),
        ("fibration::normal_bundle_ch", vec!["section", "normal-bundle", "--section", SECTION]),
        ("fibration::splitting_type_slice", vec!["section", "splitting", "--n", "3", "--a", "0"]),
        ("stability::slope", vec!["stability", "slope", "--lattice", LATTICE, "--bundle", NUM, "--polarization", "[1,2]"]),
        ("stability::bogomolov", vec!["stability", "bogomolov", "--lattice", LATTICE, "--bundle", NUM]),
        ("stability::bogomolov_identity_check", vec!["stability", "identity", "--lattice", LATTICE, "--v1", NUM, "--v2", NUM]),
        ("stability::whitney_sum", vec!["stability", "sum", "--lattice", LATTICE, "--v1", NUM, "--v2", NUM]),
        ("stability::stability_threshold", vec!["stability", "threshold", "--n", "2", "--c2", "1"]),
        ("stability::wall_search", vec!["stability", "walls", "--lattice", LATTICE, "--n", "2", "--c2", "1", "--t", "0", "--bound", "5"]),
        ("stability::allowable_modification_c2", vec!["stability", "modify", "--c2", "5", "--e", "-2"]),
    ]
}
