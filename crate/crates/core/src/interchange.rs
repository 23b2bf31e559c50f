//! The JSON design interchange format and the structured report records.
//!
//! A design file is a single self-describing document:
//!
//! ```json
//! {
//!   "field": {"p": 5, "n": 1, "modulus": [0, 1], "gamma": 2},
//!   "universe_kind": "punctured_plane",
//!   "points": [[0, 1], ...],
//!   "blocks": [[0, 3, 7, ...], ...],
//!   "provenance": "sl2-nonzero-torus q=5"
//! }
//! ```
//!
//! Keys are emitted in this fixed order, UTF-8, LF line endings, newline
//! terminated, so identical designs serialize to identical bytes and files
//! round-trip bit-exactly through parse + re-serialize.

use serde::{Deserialize, Serialize};

use crate::cyclotomy::Point;
use crate::design::{Feasibility, IncidenceStructure, PgdReport, PointSet, UniverseKind};
use crate::error::{Error, Result};
use crate::gf::{make_field_with_cap, FieldCtx, FieldDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub field: FieldDescriptor,
    pub universe_kind: String,
    pub points: Vec<Point>,
    pub blocks: Vec<Vec<u32>>,
    pub provenance: String,
}

impl DesignFile {
    pub fn from_structure(
        ctx: &FieldCtx,
        structure: &IncidenceStructure,
        provenance: &str,
    ) -> Result<DesignFile> {
        if structure.blocks().is_empty() {
            return Err(Error::EmptyDesign);
        }
        if structure.points().q != ctx.q() {
            return Err(Error::BadDesignFile(format!(
                "structure is over GF({}), field is GF({})",
                structure.points().q,
                ctx.q()
            )));
        }
        Ok(DesignFile {
            field: ctx.descriptor(),
            universe_kind: structure.points().kind.name().to_string(),
            points: structure.points().points().to_vec(),
            blocks: structure.blocks().to_vec(),
            provenance: provenance.to_string(),
        })
    }

    /// Rebuild the field and the structure. The field is reconstructed from
    /// (p, n, modulus) and must reproduce the recorded gamma, so element
    /// numbering is guaranteed to match the file.
    pub fn to_structure(&self) -> Result<(FieldCtx, IncidenceStructure)> {
        let d = &self.field;
        let ctx = make_field_with_cap(d.p, d.n, Some(&d.modulus), d.p.saturating_pow(d.n))?;
        if ctx.gamma() != d.gamma {
            return Err(Error::BadDesignFile(format!(
                "field descriptor records gamma={}, reconstruction gives {}",
                d.gamma,
                ctx.gamma()
            )));
        }
        let kind = UniverseKind::parse(&self.universe_kind)
            .ok_or_else(|| Error::BadDesignFile(format!(
                "unknown universe kind `{}`",
                self.universe_kind
            )))?;
        let points = PointSet::from_points(kind, ctx.q(), self.points.clone())?;
        let structure = IncidenceStructure::new(points, self.blocks.clone())?;
        Ok((ctx, structure))
    }

    /// Canonical bytes: pretty JSON, newline terminated.
    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }

    pub fn from_json(text: &str) -> Result<DesignFile> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Structured output of `verify`: the computed design report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DesignReport {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    pub alpha: Option<u64>,
    pub beta: Option<u64>,
    pub is_pgd: bool,
    pub is_simple: bool,
    pub feasibility: Option<Feasibility>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u64>,
}

impl DesignReport {
    pub fn from_pgd(report: &PgdReport, feasibility: Option<Feasibility>) -> DesignReport {
        DesignReport {
            v: report.v,
            b: report.b,
            k: report.k,
            r: report.r,
            alpha: report.alpha,
            beta: report.beta,
            is_pgd: report.is_pgd,
            is_simple: report.is_simple,
            feasibility,
            lambda: None,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}
