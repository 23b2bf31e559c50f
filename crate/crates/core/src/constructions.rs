//! Named builders for every design family this crate constructs, each paired
//! with its claimed closed-form parameters, plus the claim-by-claim checker.
//!
//! Builders are deterministic: a given construction name, field and side
//! always produce the same block list in the same order. Claimed parameters
//! are computed from q alone, before any enumeration, so the checker
//! compares two independent routes.
//!
//! Two conventions used throughout:
//!
//! - `alpha` is the antiflag constant and `beta` the flag constant. Some
//!   some recorded displays list the pair in the opposite order; claims carry
//!   `order_adjudicated` where that is known, and the checker reports which
//!   order the enumerated design actually satisfies.
//! - With the row-vector action, the upper-triangular Borel subgroup (g21 = 0)
//!   preserves the row torus F_q^* x F_q, and the lower-triangular one
//!   (g12 = 0) preserves the column torus F_q x F_q^*. `side` selects the
//!   torus; the matching subgroup follows.

use serde::{Deserialize, Serialize};

use crate::cyclotomy::{plane_block, CycloSystem, PlaneBlockKind, Point};
use crate::design::{
    feasibility_check, pgd_check, simplicity_check, t_design_check, tactical_check, Feasibility,
    IncidenceStructure, PointSet, UniverseKind,
};
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::matgroup::{class_filter, enumerate_gl2, enumerate_sl2, enumerate_sa2, MatrixClass};
use crate::orbitstab::block_orbit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionName {
    Sl2NonzeroTorus,
    Gl2NonzeroTorus,
    Sl2BorelPair,
    Gl2BorelPair,
    Sa2CyclotomicBibd,
    Sl2Cyclotomic,
    KroneckerTorus,
    QrDevelopment,
    RepeatedCopyBibd,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 9] = [
        ConstructionName::Sl2NonzeroTorus,
        ConstructionName::Gl2NonzeroTorus,
        ConstructionName::Sl2BorelPair,
        ConstructionName::Gl2BorelPair,
        ConstructionName::Sa2CyclotomicBibd,
        ConstructionName::Sl2Cyclotomic,
        ConstructionName::KroneckerTorus,
        ConstructionName::QrDevelopment,
        ConstructionName::RepeatedCopyBibd,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionName::Sl2NonzeroTorus => "sl2-nonzero-torus",
            ConstructionName::Gl2NonzeroTorus => "gl2-nonzero-torus",
            ConstructionName::Sl2BorelPair => "sl2-borel-pair",
            ConstructionName::Gl2BorelPair => "gl2-borel-pair",
            ConstructionName::Sa2CyclotomicBibd => "sa2-cyclotomic-bibd",
            ConstructionName::Sl2Cyclotomic => "sl2-cyclotomic",
            ConstructionName::KroneckerTorus => "kronecker-torus",
            ConstructionName::QrDevelopment => "qr-development",
            ConstructionName::RepeatedCopyBibd => "repeated-copy-bibd",
        }
    }

    pub fn parse(name: &str) -> Result<ConstructionName> {
        Self::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == name)
            .ok_or_else(|| Error::UnknownConstruction(name.to_string()))
    }

    /// Does this construction take a row/column side?
    pub fn takes_side(&self) -> bool {
        matches!(
            self,
            ConstructionName::Sl2BorelPair | ConstructionName::Gl2BorelPair
        )
    }
}

impl std::fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Row,
    Column,
}

impl Side {
    pub fn as_str(&self) -> &'static str {
        match self {
            Side::Row => "row",
            Side::Column => "column",
        }
    }

    pub fn parse(s: &str) -> Option<Side> {
        match s {
            "row" => Some(Side::Row),
            "column" => Some(Side::Column),
            _ => None,
        }
    }
}

/// What to build: a named construction, the field order, and (for the Borel
/// pair families) which torus to act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub name: ConstructionName,
    pub q: u32,
    pub side: Option<Side>,
}

impl ConstructionSpec {
    pub fn new(name: ConstructionName, q: u32) -> ConstructionSpec {
        ConstructionSpec {
            name,
            q,
            side: None,
        }
    }

    pub fn with_side(name: ConstructionName, q: u32, side: Side) -> ConstructionSpec {
        ConstructionSpec {
            name,
            q,
            side: Some(side),
        }
    }

    /// Provenance string stored in design files: name, q, side.
    pub fn provenance(&self) -> String {
        let mut s = format!("{} q={}", self.name, self.q);
        if let Some(side) = self.side {
            s.push_str(&format!(" side={}", side.as_str()));
        }
        s
    }

    pub fn parse_provenance(text: &str) -> Result<ConstructionSpec> {
        let bad = || Error::BadProvenance(text.to_string());
        let mut parts = text.split_whitespace();
        let name = ConstructionName::parse(parts.next().ok_or_else(bad)?)?;
        let mut q = None;
        let mut side = None;
        for part in parts {
            if let Some(value) = part.strip_prefix("q=") {
                q = Some(value.parse::<u32>().map_err(|_| bad())?);
            } else if let Some(value) = part.strip_prefix("side=") {
                side = Some(Side::parse(value).ok_or_else(bad)?);
            } else {
                return Err(bad());
            }
        }
        let q = q.ok_or_else(bad)?;
        let spec = ConstructionSpec { name, q, side };
        if name.takes_side() && side.is_none() {
            return Err(bad());
        }
        Ok(spec)
    }
}

/// The kind of design each family claims to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClaimKind {
    /// A partial geometric design with the given constants, when known.
    /// `order_adjudicated` marks pairs whose recorded print order is
    /// suspect; the checker accepts the swap but reports it.
    PartialGeometric {
        alpha: Option<u64>,
        beta: Option<u64>,
        order_adjudicated: bool,
    },
    /// A 2-design with the given lambda.
    TwoDesign { lambda: u64 },
    /// `copies` multiset copies of a base 2-design.
    ReplicatedTwoDesign {
        copies: u64,
        base_lambda: u64,
        base_b: u64,
    },
}

/// Closed-form parameters a construction claims, computed from q before any
/// enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedParameters {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub kind: ClaimKind,
    pub simple_expected: bool,
    pub formula_source: String,
    /// Context the checker copies into its report.
    pub notes: Vec<String>,
}

/// A built design together with its claims and provenance.
#[derive(Debug, Clone)]
pub struct BuiltDesign {
    pub structure: IncidenceStructure,
    pub claims: ClaimedParameters,
    pub provenance: String,
}

fn require(spec: &ConstructionSpec, ok: bool, requirement: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ConstraintViolated {
            construction: spec.name.to_string(),
            q: spec.q,
            requirement: requirement.to_string(),
        })
    }
}

fn check_field(spec: &ConstructionSpec, ctx: &FieldCtx) -> Result<()> {
    require(spec, ctx.q() == spec.q, "a field of matching order")
}

/// Build a named construction over the given field.
///
/// `repeated-copy-bibd` needs an externally supplied base design; use
/// [`build_repeated_copy`] for it.
pub fn build_named(spec: &ConstructionSpec, ctx: &FieldCtx) -> Result<BuiltDesign> {
    check_field(spec, ctx)?;
    match spec.name {
        ConstructionName::Sl2NonzeroTorus => build_torus_orbit(spec, ctx, false),
        ConstructionName::Gl2NonzeroTorus => build_torus_orbit(spec, ctx, true),
        ConstructionName::Sl2BorelPair => build_borel_pair(spec, ctx, false),
        ConstructionName::Gl2BorelPair => build_borel_pair(spec, ctx, true),
        ConstructionName::Sa2CyclotomicBibd => build_sa2_bibd(spec, ctx),
        ConstructionName::Sl2Cyclotomic => build_sl2_cyclotomic(spec, ctx),
        ConstructionName::KroneckerTorus => build_kronecker(spec, ctx),
        ConstructionName::QrDevelopment => build_qr_development(spec, ctx),
        ConstructionName::RepeatedCopyBibd => Err(Error::MissingBaseDesign {
            construction: spec.name.to_string(),
        }),
    }
}

/// Orbit of the nonzero torus under SL2 or GL2 on the punctured plane.
fn build_torus_orbit(spec: &ConstructionSpec, ctx: &FieldCtx, general: bool) -> Result<BuiltDesign> {
    let q = spec.q as u64;
    require(spec, spec.q >= 3, "q >= 3")?;
    let base = plane_block(ctx, PlaneBlockKind::NonzeroTorus)?;
    let elements = if general {
        enumerate_gl2(ctx)?.elements
    } else {
        enumerate_sl2(ctx)?.elements
    };
    let orbit = block_orbit(ctx, &elements, &base.points);
    let structure = IncidenceStructure::from_point_blocks(
        PointSet::new(ctx, UniverseKind::PuncturedPlane),
        &orbit.distinct_images,
    )?;

    let r = q * (q - 1) / 2;
    let alpha = (q - 1).pow(3) * (q - 2) / 2;
    let claims = ClaimedParameters {
        v: q * q - 1,
        b: q * (q + 1) / 2,
        k: (q - 1) * (q - 1),
        r,
        kind: ClaimKind::PartialGeometric {
            alpha: Some(alpha),
            beta: Some(alpha - r + 1),
            order_adjudicated: false,
        },
        simple_expected: true,
        formula_source: format!(
            "closed forms for the nonzero-torus orbit under {}",
            if general { "GL2(q)" } else { "SL2(q)" }
        ),
        notes: vec![
            "one recorded display of these closed forms lists the flag constant \
             first; alpha here is always the antiflag constant, matching the worked \
             examples"
                .to_string(),
        ],
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: spec.provenance(),
    })
}

/// Union of the orbits of the even and odd cyclotomic subsets under a Borel
/// subgroup, on the torus that subgroup preserves. Requires q = 3 (mod 4).
fn build_borel_pair(spec: &ConstructionSpec, ctx: &FieldCtx, general: bool) -> Result<BuiltDesign> {
    let q = spec.q as u64;
    require(spec, spec.q % 4 == 3, "q == 3 (mod 4)")?;
    let side = spec.side.ok_or(Error::ConstraintViolated {
        construction: spec.name.to_string(),
        q: spec.q,
        requirement: "a side (row or column)".to_string(),
    })?;
    // The upper-triangular Borel preserves the row torus, the
    // lower-triangular one the column torus.
    let (universe, class) = match side {
        Side::Row => (UniverseKind::RowTorus, MatrixClass::ZeroAt21),
        Side::Column => (UniverseKind::ColumnTorus, MatrixClass::ZeroAt12),
    };
    let elements = if general {
        class_filter(&enumerate_gl2(ctx)?, class)
    } else {
        class_filter(&enumerate_sl2(ctx)?, class)
    };
    let even = plane_block(ctx, PlaneBlockKind::EvenCyclotomic)?;
    let odd = plane_block(ctx, PlaneBlockKind::OddCyclotomic)?;
    let mut blocks = block_orbit(ctx, &elements, &even.points).distinct_images;
    blocks.extend(block_orbit(ctx, &elements, &odd.points).distinct_images);
    if general {
        // Under the full Borel the two orbits coincide as sets (a diagonal
        // matrix of nonsquare determinant swaps the parities), so the
        // claimed block count is reached by the set union.
        blocks.sort_unstable();
        blocks.dedup();
    }
    let structure =
        IncidenceStructure::from_point_blocks(PointSet::new(ctx, universe), &blocks)?;

    let rho = (q - 1) * (q - 1) * (q - 3) / 4;
    let (alpha, beta, adjudicated, mut notes) = if general {
        (
            rho + 1,
            rho,
            true,
            vec![
                "the recorded pair for this family is (rho+1, rho); the checker \
                 adjudicates which order the enumerated design satisfies"
                    .to_string(),
                "the two cyclotomic orbits coincide as block sets under the full \
                 Borel subgroup; blocks are deduplicated to realize the claimed \
                 count"
                    .to_string(),
            ],
        )
    } else {
        (rho, rho + 1, false, Vec::new())
    };
    notes.push(format!(
        "side={}: the {} Borel subgroup acting on {}",
        side.as_str(),
        match side {
            Side::Row => "upper-triangular",
            Side::Column => "lower-triangular",
        },
        universe.name()
    ));
    let claims = ClaimedParameters {
        v: q * (q - 1),
        b: 2 * q,
        k: (q - 1) * (q - 1) / 2,
        r: q - 1,
        kind: ClaimKind::PartialGeometric {
            alpha: Some(alpha),
            beta: Some(beta),
            order_adjudicated: adjudicated,
        },
        simple_expected: true,
        formula_source: format!(
            "closed forms for the paired cyclotomic orbits under a {} Borel subgroup",
            if general { "GL2(q)" } else { "SL2(q)" }
        ),
        notes,
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: spec.provenance(),
    })
}

/// Orbit of the even cyclotomic subset under the special affine group: a
/// balanced incomplete block design on all of F_q^2.
fn build_sa2_bibd(spec: &ConstructionSpec, ctx: &FieldCtx) -> Result<BuiltDesign> {
    let q = spec.q as u64;
    require(spec, spec.q % 2 == 1 && spec.q >= 5, "odd q >= 5")?;
    let base = plane_block(ctx, PlaneBlockKind::EvenCyclotomic)?;
    let sa2 = enumerate_sa2(ctx)?;
    let orbit = block_orbit(ctx, &sa2.elements, &base.points);
    let structure = IncidenceStructure::from_point_blocks(
        PointSet::new(ctx, UniverseKind::FullPlane),
        &orbit.distinct_images,
    )?;

    let k = (q - 1) * (q - 1) / 2;
    let (lambda, b) = if q % 4 == 1 {
        (q * (q - 1) / 4 * (k - 1), (q.pow(4) + q.pow(3)) / 2)
    } else {
        (q * (q - 1) / 2 * (k - 1), q.pow(4) + q.pow(3))
    };
    let claims = ClaimedParameters {
        v: q * q,
        b,
        k,
        r: b * k / (q * q),
        kind: ClaimKind::TwoDesign { lambda },
        simple_expected: true,
        formula_source: "closed forms for the cyclotomic orbit under SA2(q)".to_string(),
        notes: Vec::new(),
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: spec.provenance(),
    })
}

/// Orbit of the even cyclotomic subset under all of SL2 on the punctured
/// plane. The flag constants for this family are only known numerically, at
/// q = 5, 7, 11; elsewhere they are left open and the checker reports the
/// enumerated truth.
fn build_sl2_cyclotomic(spec: &ConstructionSpec, ctx: &FieldCtx) -> Result<BuiltDesign> {
    let q = spec.q as u64;
    require(spec, spec.q % 2 == 1 && spec.q >= 5, "odd q >= 5")?;
    let base = plane_block(ctx, PlaneBlockKind::EvenCyclotomic)?;
    let sl2 = enumerate_sl2(ctx)?;
    let orbit = block_orbit(ctx, &sl2.elements, &base.points);
    let structure = IncidenceStructure::from_point_blocks(
        PointSet::new(ctx, UniverseKind::PuncturedPlane),
        &orbit.distinct_images,
    )?;

    let k = (q - 1) * (q - 1) / 2;
    let b = if q % 4 == 1 { q * (q + 1) / 2 } else { q * (q + 1) };
    let r = b * k / (q * q - 1);
    // Recorded numeric pairs, listed flag-first where they appear.
    let quoted: Option<(u64, u64)> = match q {
        5 => Some((12, 8)),
        7 => Some((160, 108)),
        11 => Some((1246, 1000)),
        _ => None,
    };
    let mut notes = vec![
        "this family's flag constants are recorded numerically, not by a proved \
         closed form; any mismatch is a finding about those numbers"
            .to_string(),
    ];
    if quoted.is_some() {
        notes.push(
            "the recorded pair is printed flag-first; the checker adjudicates the \
             order against the enumerated antiflag/flag constants"
                .to_string(),
        );
    }
    let claims = ClaimedParameters {
        v: q * q - 1,
        b,
        k,
        r,
        kind: ClaimKind::PartialGeometric {
            alpha: quoted.map(|(a, _)| a),
            beta: quoted.map(|(_, b)| b),
            order_adjudicated: true,
        },
        simple_expected: true,
        formula_source: "closed tactical forms for the cyclotomic orbit under SL2(q); \
                         flag constants recorded numerically"
            .to_string(),
        notes,
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: spec.provenance(),
    })
}

/// The repeated-block comparison for the torus family: the incidence matrix
/// is the Kronecker product of a (q-1) x q all-one matrix with the
/// (q+1) x (q+1)/2 matrix whose column j vanishes exactly at rows j and
/// j + (q+1)/2. Same tactical parameters as the torus orbit, never simple.
fn build_kronecker(spec: &ConstructionSpec, ctx: &FieldCtx) -> Result<BuiltDesign> {
    let q = spec.q as u64;
    require(spec, spec.q % 2 == 1 && spec.q >= 5, "odd q >= 5")?;
    let qz = spec.q as usize;
    let half = (qz + 1) / 2;
    let mut blocks: Vec<Vec<u32>> = Vec::with_capacity(qz * half);
    for _copy in 0..qz {
        for j in 0..half {
            let mut block = Vec::with_capacity((qz - 1) * (qz - 1));
            for row_group in 0..qz - 1 {
                for i in 0..qz + 1 {
                    if i != j && i != j + half {
                        block.push((row_group * (qz + 1) + i) as u32);
                    }
                }
            }
            blocks.push(block);
        }
    }
    let structure =
        IncidenceStructure::new(PointSet::new(ctx, UniverseKind::PuncturedPlane), blocks)?;

    let r = q * (q - 1) / 2;
    let torus_alpha = (q - 1).pow(3) * (q - 2) / 2;
    // Enumerated (and directly countable) constants of the Kronecker design
    // itself. They differ from the torus orbit's pair even though the recorded
    // comparison claim asserts equal parameters; the claims keep that pair
    // so the checker surfaces the difference.
    let real_alpha = q * (q - 1) * (q - 1) * (q - 3) / 2;
    let real_beta =
        (q - 1) * ((q - 1) * (q - 1) - 1) + q * ((q + 1) / 2 - 2) * ((q - 1) * (q - 3) - 1);
    let claims = ClaimedParameters {
        v: q * q - 1,
        b: q * (q + 1) / 2,
        k: (q - 1) * (q - 1),
        r,
        kind: ClaimKind::PartialGeometric {
            alpha: Some(torus_alpha),
            beta: Some(torus_alpha - r + 1),
            order_adjudicated: false,
        },
        simple_expected: false,
        formula_source: "comparison build: all-one Kronecker inflation of a paired \
                         complement-of-diagonal pattern"
            .to_string(),
        notes: vec![format!(
            "the recorded comparison asserts the torus orbit's flag constants here; \
             direct counting gives alpha={real_alpha}, beta={real_beta} instead, so \
             the alpha/beta lines below are expected to mismatch"
        )],
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: spec.provenance(),
    })
}

/// The simple comparison for the Borel pair family: blocks F_q^* x (D_l + c)
/// for both quadratic classes and all translates c. Requires q = 3 (mod 4).
fn build_qr_development(spec: &ConstructionSpec, ctx: &FieldCtx) -> Result<BuiltDesign> {
    let q = spec.q as u64;
    require(spec, spec.q % 4 == 3, "q == 3 (mod 4)")?;
    let sys = CycloSystem::new(ctx, 2)?;
    let mut blocks: Vec<Vec<Point>> = Vec::with_capacity(2 * spec.q as usize);
    for class_index in 0..2 {
        let class = sys.class(class_index)?.to_vec();
        for c in ctx.elements() {
            let mut block = Vec::with_capacity(class.len() * (spec.q as usize - 1));
            for &x in &class {
                let translated = ctx.add(x, c);
                for u in ctx.nonzero_elements() {
                    block.push((u, translated));
                }
            }
            blocks.push(block);
        }
    }
    let structure =
        IncidenceStructure::from_point_blocks(PointSet::new(ctx, UniverseKind::RowTorus), &blocks)?;

    let rho = (q - 1) * (q - 1) * (q - 3) / 4;
    let claims = ClaimedParameters {
        v: q * (q - 1),
        b: 2 * q,
        k: (q - 1) * (q - 1) / 2,
        r: q - 1,
        kind: ClaimKind::PartialGeometric {
            alpha: Some(rho),
            beta: Some(rho + 1),
            order_adjudicated: false,
        },
        simple_expected: true,
        formula_source: "comparison build: all-one inflation of the development of \
                         both quadratic classes"
            .to_string(),
        notes: Vec::new(),
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: spec.provenance(),
    })
}

/// `copies` multiset copies of a supplied base 2-design. The base must pass
/// the 2-design check; the result keeps its points and replicates its block
/// multiset, so it is never simple (for copies >= 2).
pub fn build_repeated_copy(
    q: u32,
    base: &IncidenceStructure,
    copies: u32,
) -> Result<BuiltDesign> {
    if copies < 2 {
        return Err(Error::BadBaseDesign {
            reason: format!("copies = {copies}, need at least 2"),
        });
    }
    let base_lambda = t_design_check(base, 2).map_err(|e| Error::BadBaseDesign {
        reason: format!("{e:?}"),
    })?;
    let params = tactical_check(base).expect("2-design is tactical");

    let mut blocks = Vec::with_capacity(base.b() * copies as usize);
    for _ in 0..copies {
        blocks.extend(base.blocks().iter().cloned());
    }
    let structure = IncidenceStructure::new(base.points().clone(), blocks)?;

    let claims = ClaimedParameters {
        v: params.v,
        b: params.b * copies as u64,
        k: params.k,
        r: params.r * copies as u64,
        kind: ClaimKind::ReplicatedTwoDesign {
            copies: copies as u64,
            base_lambda,
            base_b: params.b,
        },
        simple_expected: false,
        formula_source: "multiset union of copies of a supplied base 2-design".to_string(),
        notes: Vec::new(),
    };
    Ok(BuiltDesign {
        structure,
        claims,
        provenance: format!("repeated-copy-bibd q={q}"),
    })
}

/// One compared quantity in a claims report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCheck {
    pub name: String,
    pub claimed: String,
    pub computed: String,
    pub status: ClaimStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Match,
    Mismatch,
    /// The values match after swapping the claimed pair; the print order of
    /// the recorded display was under adjudication.
    AdjudicatedSwap,
    /// Nothing was claimed; the computed value is reported for the record.
    Info,
}

/// Everything the checker computed, for the structured report file.
/// `is_pgd` is absent when the claim kind did not call for the partial
/// geometric check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComputedSummary {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    pub lambda: Option<u64>,
    pub is_pgd: Option<bool>,
    pub is_simple: bool,
    pub feasibility: Option<Feasibility>,
}

/// Claim-by-claim comparison of a built design against its closed forms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClaimsReport {
    pub construction: String,
    pub checks: Vec<ClaimCheck>,
    pub notes: Vec<String>,
    pub computed: ComputedSummary,
    pub pass: bool,
}

impl ClaimsReport {
    /// One line per claim: CLAIMED vs COMPUTED vs status, then notes, then
    /// the verdict. Deterministic ordering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("construction: {}\n", self.construction));
        for check in &self.checks {
            let status = match check.status {
                ClaimStatus::Match => "MATCH",
                ClaimStatus::Mismatch => "MISMATCH",
                ClaimStatus::AdjudicatedSwap => "SWAPPED (documented)",
                ClaimStatus::Info => "COMPUTED",
            };
            out.push_str(&format!(
                "{:<14} claimed {:<10} computed {:<10} {}\n",
                check.name, check.claimed, check.computed, status
            ));
        }
        if let Some(f) = &self.computed.feasibility {
            out.push_str(&format!(
                "feasibility    r*beta even: {}; quotient {}: {}\n",
                if f.r_beta_even { "yes" } else { "no" },
                match f.quotient {
                    Some(value) => format!("= {value}"),
                    None => "undefined (zero denominator)".to_string(),
                },
                if f.quotient_integral { "integer" } else { "NOT integral" },
            ));
        }
        for note in &self.notes {
            out.push_str(&format!("note: {note}\n"));
        }
        out.push_str(if self.pass { "PASS\n" } else { "MISMATCH\n" });
        out
    }
}

fn push_check(
    checks: &mut Vec<ClaimCheck>,
    name: &str,
    claimed: impl std::fmt::Display,
    computed: impl std::fmt::Display,
    status: ClaimStatus,
) {
    checks.push(ClaimCheck {
        name: name.to_string(),
        claimed: claimed.to_string(),
        computed: computed.to_string(),
        status,
    });
}

fn compare_u64(checks: &mut Vec<ClaimCheck>, name: &str, claimed: u64, computed: u64) {
    let status = if claimed == computed {
        ClaimStatus::Match
    } else {
        ClaimStatus::Mismatch
    };
    push_check(checks, name, claimed, computed, status);
}

/// Run every applicable check on a built design and compare the results
/// against its claims. Mismatches are report content, not errors.
pub fn verify_recorded_claims(built: &BuiltDesign) -> ClaimsReport {
    verify_claims(&built.structure, &built.claims, &built.provenance)
}

pub fn verify_claims(
    structure: &IncidenceStructure,
    claims: &ClaimedParameters,
    provenance: &str,
) -> ClaimsReport {
    let mut checks = Vec::new();
    let mut notes = claims.notes.clone();

    let tactical = tactical_check(structure);
    let is_simple = simplicity_check(structure);
    let mut computed = ComputedSummary {
        v: structure.v() as u64,
        b: structure.b() as u64,
        k: 0,
        r: 0,
        alpha: None,
        beta: None,
        lambda: None,
        is_pgd: None,
        is_simple,
        feasibility: None,
    };

    match tactical {
        Err(failure) => {
            push_check(
                &mut checks,
                "tactical",
                "constant k, r",
                format!("{failure:?}"),
                ClaimStatus::Mismatch,
            );
        }
        Ok(params) => {
            computed.k = params.k;
            computed.r = params.r;
            compare_u64(&mut checks, "v", claims.v, params.v);
            compare_u64(&mut checks, "b", claims.b, params.b);
            compare_u64(&mut checks, "k", claims.k, params.k);
            compare_u64(&mut checks, "r", claims.r, params.r);

            match claims.kind {
                ClaimKind::PartialGeometric {
                    alpha,
                    beta,
                    order_adjudicated,
                } => {
                    let report = pgd_check(structure).expect("tactical already verified");
                    computed.is_pgd = Some(report.is_pgd);
                    computed.alpha = report.alpha;
                    computed.beta = report.beta;
                    push_check(
                        &mut checks,
                        "pgd",
                        "s(u,B) two-valued",
                        if report.is_pgd { "two-valued" } else { "varies" },
                        if report.is_pgd {
                            ClaimStatus::Match
                        } else {
                            ClaimStatus::Mismatch
                        },
                    );
                    compare_pgd_pair(
                        &mut checks,
                        &mut notes,
                        alpha,
                        beta,
                        report.alpha,
                        report.beta,
                        order_adjudicated,
                    );
                    if let (Some(a), Some(bt)) = (report.alpha, report.beta) {
                        let f = feasibility_check(params.v, params.k, params.r, a, bt);
                        push_check(
                            &mut checks,
                            "feasibility",
                            "r*beta even, quotient integral",
                            format!(
                                "{}, {}",
                                if f.r_beta_even { "even" } else { "odd" },
                                if f.quotient_integral {
                                    "integral"
                                } else {
                                    "not integral"
                                }
                            ),
                            if f.r_beta_even && f.quotient_integral {
                                ClaimStatus::Match
                            } else {
                                ClaimStatus::Mismatch
                            },
                        );
                        computed.feasibility = Some(f);
                    }
                }
                ClaimKind::TwoDesign { lambda } => match t_design_check(structure, 2) {
                    Ok(found) => {
                        computed.lambda = Some(found);
                        compare_u64(&mut checks, "lambda", lambda, found);
                    }
                    Err(failure) => {
                        push_check(
                            &mut checks,
                            "lambda",
                            lambda,
                            format!("not a 2-design: {failure:?}"),
                            ClaimStatus::Mismatch,
                        );
                    }
                },
                ClaimKind::ReplicatedTwoDesign {
                    copies,
                    base_lambda,
                    base_b,
                } => match t_design_check(structure, 2) {
                    Ok(found) => {
                        computed.lambda = Some(found);
                        compare_u64(&mut checks, "lambda", copies * base_lambda, found);
                        push_check(
                            &mut checks,
                            "copies",
                            format!("{copies} x {base_b} blocks"),
                            params.b,
                            if copies * base_b == params.b {
                                ClaimStatus::Match
                            } else {
                                ClaimStatus::Mismatch
                            },
                        );
                        let multiplicities_ok = block_multiplicities_divisible(structure, copies);
                        push_check(
                            &mut checks,
                            "multiplicity",
                            format!("every block multiplicity divisible by {copies}"),
                            if multiplicities_ok { "yes" } else { "no" },
                            if multiplicities_ok {
                                ClaimStatus::Match
                            } else {
                                ClaimStatus::Mismatch
                            },
                        );
                    }
                    Err(failure) => {
                        push_check(
                            &mut checks,
                            "lambda",
                            copies * base_lambda,
                            format!("not a 2-design: {failure:?}"),
                            ClaimStatus::Mismatch,
                        );
                    }
                },
            }
        }
    }

    push_check(
        &mut checks,
        "simple",
        claims.simple_expected,
        is_simple,
        if claims.simple_expected == is_simple {
            ClaimStatus::Match
        } else {
            ClaimStatus::Mismatch
        },
    );

    let pass = checks.iter().all(|c| c.status != ClaimStatus::Mismatch);
    ClaimsReport {
        construction: provenance.to_string(),
        checks,
        notes,
        computed,
        pass,
    }
}

fn compare_pgd_pair(
    checks: &mut Vec<ClaimCheck>,
    notes: &mut Vec<String>,
    claimed_alpha: Option<u64>,
    claimed_beta: Option<u64>,
    computed_alpha: Option<u64>,
    computed_beta: Option<u64>,
    order_adjudicated: bool,
) {
    let fmt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    match (claimed_alpha, claimed_beta, computed_alpha, computed_beta) {
        (Some(ca), Some(cb), Some(xa), Some(xb)) => {
            if ca == xa && cb == xb {
                push_check(checks, "alpha", ca, xa, ClaimStatus::Match);
                push_check(checks, "beta", cb, xb, ClaimStatus::Match);
            } else if order_adjudicated && ca == xb && cb == xa {
                push_check(checks, "alpha", ca, xa, ClaimStatus::AdjudicatedSwap);
                push_check(checks, "beta", cb, xb, ClaimStatus::AdjudicatedSwap);
                notes.push(format!(
                    "adjudicated: the design satisfies antiflag={xa}, flag={xb}; the \
                     recorded pair ({ca}, {cb}) lists the same values in the opposite \
                     order"
                ));
            } else {
                push_check(
                    checks,
                    "alpha",
                    ca,
                    xa,
                    if ca == xa {
                        ClaimStatus::Match
                    } else {
                        ClaimStatus::Mismatch
                    },
                );
                push_check(
                    checks,
                    "beta",
                    cb,
                    xb,
                    if cb == xb {
                        ClaimStatus::Match
                    } else {
                        ClaimStatus::Mismatch
                    },
                );
            }
        }
        _ => {
            push_check(checks, "alpha", fmt(claimed_alpha), fmt(computed_alpha), ClaimStatus::Info);
            push_check(checks, "beta", fmt(claimed_beta), fmt(computed_beta), ClaimStatus::Info);
        }
    }
}

fn block_multiplicities_divisible(structure: &IncidenceStructure, copies: u64) -> bool {
    let mut counts: std::collections::HashMap<&[u32], u64> = std::collections::HashMap::new();
    for block in structure.blocks() {
        *counts.entry(block.as_slice()).or_insert(0) += 1;
    }
    counts.values().all(|&c| c % copies == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn build(name: ConstructionName, q: u32, side: Option<Side>) -> BuiltDesign {
        let ctx = make_field(q, 1, None).unwrap();
        let spec = ConstructionSpec { name, q, side };
        build_named(&spec, &ctx).unwrap()
    }

    #[test]
    fn torus_orbit_counts_and_claims() {
        let built = build(ConstructionName::Sl2NonzeroTorus, 5, None);
        assert_eq!(built.structure.b(), 15);
        assert_eq!(built.claims.v, 24);
        assert_eq!(
            built.claims.kind,
            ClaimKind::PartialGeometric {
                alpha: Some(96),
                beta: Some(87),
                order_adjudicated: false,
            }
        );
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
        let text = report.render();
        assert!(text.contains("PASS"));
        assert!(!text.contains("\nMISMATCH"));
        assert!(text.contains("quotient = 5"), "{text}");
    }

    #[test]
    fn sl2_and_gl2_torus_orbits_coincide() {
        for q in [5u32, 7] {
            let sl2 = build(ConstructionName::Sl2NonzeroTorus, q, None);
            let gl2 = build(ConstructionName::Gl2NonzeroTorus, q, None);
            assert_eq!(sl2.structure.blocks(), gl2.structure.blocks());
        }
    }

    #[test]
    fn borel_pair_requires_three_mod_four() {
        let ctx = make_field(5, 1, None).unwrap();
        let spec = ConstructionSpec::with_side(ConstructionName::Sl2BorelPair, 5, Side::Row);
        let err = build_named(&spec, &ctx).unwrap_err();
        assert!(err.to_string().contains("q == 3 (mod 4)"));
    }

    #[test]
    fn borel_pair_both_sides_verify() {
        for side in [Side::Row, Side::Column] {
            let built = build(ConstructionName::Sl2BorelPair, 7, Some(side));
            assert_eq!(built.structure.b(), 14);
            let report = verify_recorded_claims(&built);
            assert!(report.pass, "{}", report.render());
        }
    }

    #[test]
    fn gl2_borel_pair_adjudicates_the_swap() {
        let built = build(ConstructionName::Gl2BorelPair, 7, Some(Side::Row));
        assert_eq!(built.structure.b(), 14);
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
        assert!(report
            .checks
            .iter()
            .any(|c| c.status == ClaimStatus::AdjudicatedSwap));
        assert!(report.render().contains("SWAPPED (documented)"));
    }

    #[test]
    fn sa2_bibd_small_case() {
        let built = build(ConstructionName::Sa2CyclotomicBibd, 5, None);
        assert_eq!(built.structure.b(), 375);
        assert_eq!(built.claims.kind, ClaimKind::TwoDesign { lambda: 35 });
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
    }

    #[test]
    fn sl2_cyclotomic_adjudicates_print_order() {
        let built = build(ConstructionName::Sl2Cyclotomic, 5, None);
        assert_eq!(built.structure.b(), 15);
        assert!(built
            .structure
            .blocks()
            .iter()
            .all(|block| block.len() == 8));
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
        assert_eq!(report.computed.alpha, Some(8));
        assert_eq!(report.computed.beta, Some(12));
        assert!(report
            .checks
            .iter()
            .any(|c| c.status == ClaimStatus::AdjudicatedSwap));
    }

    #[test]
    fn kronecker_mismatch_is_reported_not_swallowed() {
        let built = build(ConstructionName::KroneckerTorus, 5, None);
        let report = verify_recorded_claims(&built);
        assert!(!report.pass);
        assert_eq!(report.computed.alpha, Some(80));
        assert_eq!(report.computed.beta, Some(95));
        // tactical parameters do match the torus orbit
        for name in ["v", "b", "k", "r"] {
            assert!(report
                .checks
                .iter()
                .any(|c| c.name == name && c.status == ClaimStatus::Match));
        }
        assert!(!report.computed.is_simple);
    }

    #[test]
    fn kronecker_tactical_parameters_track_the_torus_orbit() {
        use crate::design::{simplicity_check, tactical_check};
        for q in [5u32, 7] {
            let torus = build(ConstructionName::Sl2NonzeroTorus, q, None);
            let kron = build(ConstructionName::KroneckerTorus, q, None);
            assert_eq!(
                tactical_check(&torus.structure).unwrap(),
                tactical_check(&kron.structure).unwrap()
            );
            assert!(simplicity_check(&torus.structure));
            assert!(!simplicity_check(&kron.structure));
        }
    }

    #[test]
    fn qr_development_matches_borel_claims() {
        let built = build(ConstructionName::QrDevelopment, 7, None);
        assert_eq!(built.structure.b(), 14);
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
        assert!(report.computed.is_simple);
    }

    #[test]
    fn repeated_copy_replicates_a_base() {
        let base = build(ConstructionName::Sa2CyclotomicBibd, 5, None);
        let built = build_repeated_copy(5, &base.structure, 5).unwrap();
        assert_eq!(built.structure.b(), 1875);
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
        assert_eq!(report.computed.lambda, Some(175));
        assert!(!report.computed.is_simple);

        let ctx = make_field(5, 1, None).unwrap();
        let spec = ConstructionSpec::new(ConstructionName::RepeatedCopyBibd, 5);
        assert!(matches!(
            build_named(&spec, &ctx),
            Err(Error::MissingBaseDesign { .. })
        ));
    }

    #[test]
    fn builders_are_deterministic() {
        let a = build(ConstructionName::Sl2Cyclotomic, 7, None);
        let b = build(ConstructionName::Sl2Cyclotomic, 7, None);
        assert_eq!(a.structure.blocks(), b.structure.blocks());
        assert_eq!(a.claims, b.claims);
    }

    /// The torus closed forms verify at every admissible q up to 11,
    /// including even characteristic and proper prime powers, for both the
    /// special and general linear groups.
    #[test]
    fn torus_family_sweep() {
        for (p, n) in [(3u32, 1u32), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1)] {
            let ctx = make_field(p, n, None).unwrap();
            let q = ctx.q();
            for name in [
                ConstructionName::Sl2NonzeroTorus,
                ConstructionName::Gl2NonzeroTorus,
            ] {
                let spec = ConstructionSpec::new(name, q);
                let report = verify_recorded_claims(&build_named(&spec, &ctx).unwrap());
                assert!(report.pass, "{name} q={q}: {}", report.render());
            }
        }
    }

    /// Borel pair sweep: both groups, both sides, both admissible q <= 11.
    #[test]
    fn borel_family_sweep() {
        for q in [7u32, 11] {
            let ctx = make_field(q, 1, None).unwrap();
            for name in [ConstructionName::Sl2BorelPair, ConstructionName::Gl2BorelPair] {
                for side in [Side::Row, Side::Column] {
                    let spec = ConstructionSpec::with_side(name, q, side);
                    let report = verify_recorded_claims(&build_named(&spec, &ctx).unwrap());
                    assert!(report.pass, "{name} q={q} {side:?}: {}", report.render());
                }
            }
        }
    }

    /// The affine family verifies at q = 11 as well: a 2-(121,50,2695)
    /// design with 15972 blocks.
    #[test]
    fn sa2_bibd_q11_verifies() {
        let built = build(ConstructionName::Sa2CyclotomicBibd, 11, None);
        let report = verify_recorded_claims(&built);
        assert!(report.pass, "{}", report.render());
        assert_eq!(report.computed.b, 15972);
        assert_eq!(report.computed.lambda, Some(2695));
    }

    /// At q = 9 the affine orbit is still a simple 2-design, but the claimed
    /// block count inherits the stabilizer anomaly: b = 1215, not 3645.
    #[test]
    fn sa2_bibd_q9_mismatch_is_a_finding() {
        let ctx = make_field(3, 2, None).unwrap();
        let spec = ConstructionSpec::new(ConstructionName::Sa2CyclotomicBibd, 9);
        let built = build_named(&spec, &ctx).unwrap();
        let report = verify_recorded_claims(&built);
        assert!(!report.pass);
        assert_eq!(report.computed.b, 1215);
        assert_eq!(report.computed.lambda, Some(186));
        assert!(report.computed.is_simple);
    }

    /// At q = 9 the cyclotomic orbit's stabilizer is larger than the closed
    /// form assumes, so the claimed block count fails — but the orbit is
    /// still a simple partial geometric design. Both facts are pinned.
    #[test]
    fn sl2_cyclotomic_q9_mismatch_is_a_finding() {
        let ctx = make_field(3, 2, None).unwrap();
        let spec = ConstructionSpec::new(ConstructionName::Sl2Cyclotomic, 9);
        let built = build_named(&spec, &ctx).unwrap();
        let report = verify_recorded_claims(&built);
        assert!(!report.pass);
        assert_eq!(report.computed.b, 15); // claimed q(q+1)/2 = 45
        assert_eq!(report.computed.r, 6); // claimed 18
        assert_eq!(report.computed.is_pgd, Some(true));
        assert_eq!(
            (report.computed.alpha, report.computed.beta),
            (Some(64), Some(59))
        );
        assert!(report.computed.is_simple);
    }

    /// For a single-orbit design, r = (|G| / |G_S|) * k / v.
    #[test]
    fn single_orbit_replication_identity() {
        use crate::design::tactical_check;
        for q in [5u32, 7] {
            let built = build(ConstructionName::Sl2NonzeroTorus, q, None);
            let params = tactical_check(&built.structure).unwrap();
            assert_eq!(params.r, params.b * params.k / params.v);
            assert_eq!(params.r * params.v, params.b * params.k);
        }
    }

    #[test]
    fn provenance_round_trip() {
        let spec = ConstructionSpec::with_side(ConstructionName::Sl2BorelPair, 7, Side::Column);
        let text = spec.provenance();
        assert_eq!(text, "sl2-borel-pair q=7 side=column");
        assert_eq!(ConstructionSpec::parse_provenance(&text).unwrap(), spec);
        assert!(ConstructionSpec::parse_provenance("sl2-borel-pair q=7").is_err());
        assert!(ConstructionSpec::parse_provenance("nonsense q=7").is_err());
    }
}
