//! Incidence structures and their verification predicates.
//!
//! An incidence structure is a point universe plus a block collection with
//! multiset semantics (repeated blocks are legal and meaningful — several of
//! the comparison constructions are deliberately non-simple). The checks:
//!
//! - tactical: constant block size k and constant replication r;
//! - t-design: every t-subset of points lies in exactly lambda blocks;
//! - partial geometric: the flag count s(u, B) is one constant on antiflags
//!   and another on flags;
//! - simplicity: no repeated blocks;
//! - feasibility: the two arithmetic conditions every partial geometric
//!   design must satisfy.
//!
//! Throughout, `alpha` is the antiflag constant and `beta` the flag
//! constant. One recorded parameter display lists them in the opposite
//! order; the checker's convention is authoritative and reports surface the
//! difference rather than guessing.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::cyclotomy::Point;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;

/// The point universes the constructions live on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UniverseKind {
    /// All of F_q^2; v = q^2.
    FullPlane,
    /// F_q^2 minus the origin; v = q^2 - 1.
    PuncturedPlane,
    /// F_q^* x F_q; v = q(q-1).
    RowTorus,
    /// F_q x F_q^*; v = q(q-1).
    ColumnTorus,
    /// F_q embedded as (x, 0); v = q.
    BaseLine,
}

impl UniverseKind {
    pub fn name(&self) -> &'static str {
        match self {
            UniverseKind::FullPlane => "full_plane",
            UniverseKind::PuncturedPlane => "punctured_plane",
            UniverseKind::RowTorus => "row_torus",
            UniverseKind::ColumnTorus => "column_torus",
            UniverseKind::BaseLine => "base_line",
        }
    }

    pub fn parse(name: &str) -> Option<UniverseKind> {
        Some(match name {
            "full_plane" => UniverseKind::FullPlane,
            "punctured_plane" => UniverseKind::PuncturedPlane,
            "row_torus" => UniverseKind::RowTorus,
            "column_torus" => UniverseKind::ColumnTorus,
            "base_line" => UniverseKind::BaseLine,
            _ => return None,
        })
    }

    pub fn expected_size(&self, q: u64) -> u64 {
        match self {
            UniverseKind::FullPlane => q * q,
            UniverseKind::PuncturedPlane => q * q - 1,
            UniverseKind::RowTorus | UniverseKind::ColumnTorus => q * (q - 1),
            UniverseKind::BaseLine => q,
        }
    }

    pub fn contains(&self, q: u32, p: Point) -> bool {
        let in_field = p.0 < q && p.1 < q;
        in_field
            && match self {
                UniverseKind::FullPlane => true,
                UniverseKind::PuncturedPlane => p != (0, 0),
                UniverseKind::RowTorus => p.0 != 0,
                UniverseKind::ColumnTorus => p.1 != 0,
                UniverseKind::BaseLine => p.1 == 0,
            }
    }
}

/// An indexed point universe in canonical (lexicographic) order.
#[derive(Debug, Clone)]
pub struct PointSet {
    pub kind: UniverseKind,
    pub q: u32,
    points: Vec<Point>,
    index: HashMap<Point, u32>,
}

impl PointSet {
    pub fn new(ctx: &FieldCtx, kind: UniverseKind) -> PointSet {
        let q = ctx.q();
        let points: Vec<Point> = (0..q)
            .flat_map(|a| (0..q).map(move |b| (a, b)))
            .filter(|&p| kind.contains(q, p))
            .collect();
        PointSet::from_raw(kind, q, points)
    }

    /// Adopt an externally supplied point list (e.g. from a design file).
    /// The list must enumerate the universe exactly, in any order.
    pub fn from_points(kind: UniverseKind, q: u32, points: Vec<Point>) -> Result<PointSet> {
        if points.len() as u64 != kind.expected_size(q as u64) {
            return Err(Error::BadDesignFile(format!(
                "{} over GF({q}) has {} points, file lists {}",
                kind.name(),
                kind.expected_size(q as u64),
                points.len()
            )));
        }
        for &p in &points {
            if !kind.contains(q, p) {
                return Err(Error::BadDesignFile(format!(
                    "point ({}, {}) does not lie in {}",
                    p.0,
                    p.1,
                    kind.name()
                )));
            }
        }
        let ps = PointSet::from_raw(kind, q, points);
        if ps.index.len() != ps.points.len() {
            return Err(Error::BadDesignFile("repeated point".into()));
        }
        Ok(ps)
    }

    fn from_raw(kind: UniverseKind, q: u32, points: Vec<Point>) -> PointSet {
        let index = points
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32))
            .collect();
        PointSet {
            kind,
            q,
            points,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, index: u32) -> Point {
        self.points[index as usize]
    }

    pub fn index_of(&self, p: Point) -> Option<u32> {
        self.index.get(&p).copied()
    }
}

/// Points, blocks (sorted index lists, multiset semantics), and the derived
/// inverse incidence lists.
#[derive(Debug, Clone)]
pub struct IncidenceStructure {
    points: PointSet,
    blocks: Vec<Vec<u32>>,
    point_to_blocks: Vec<Vec<u32>>,
}

impl IncidenceStructure {
    /// Build from index blocks, validating indices and sorting each block.
    pub fn new(points: PointSet, blocks: Vec<Vec<u32>>) -> Result<IncidenceStructure> {
        if blocks.is_empty() {
            return Err(Error::EmptyDesign);
        }
        let v = points.len();
        let mut sorted_blocks = Vec::with_capacity(blocks.len());
        for (bi, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock { block: bi });
            }
            block.sort_unstable();
            if let Some(&bad) = block.iter().find(|&&i| i as usize >= v) {
                return Err(Error::BlockIndexOutOfRange {
                    block: bi,
                    index: bad,
                    v,
                });
            }
            if block.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::RepeatedIndexInBlock { block: bi });
            }
            sorted_blocks.push(block);
        }

        let mut point_to_blocks = vec![Vec::new(); v];
        for (bi, block) in sorted_blocks.iter().enumerate() {
            for &pi in block {
                point_to_blocks[pi as usize].push(bi as u32);
            }
        }
        Ok(IncidenceStructure {
            points,
            blocks: sorted_blocks,
            point_to_blocks,
        })
    }

    /// Build from coordinate blocks, resolving every point to its index.
    pub fn from_point_blocks(
        points: PointSet,
        coord_blocks: &[Vec<Point>],
    ) -> Result<IncidenceStructure> {
        let mut blocks = Vec::with_capacity(coord_blocks.len());
        for (bi, cb) in coord_blocks.iter().enumerate() {
            let mut block = Vec::with_capacity(cb.len());
            for &p in cb {
                let idx = points.index_of(p).ok_or(Error::BadDesignFile(format!(
                    "block {bi} contains ({}, {}), which is outside {}",
                    p.0,
                    p.1,
                    points.kind.name()
                )))?;
                block.push(idx);
            }
            blocks.push(block);
        }
        IncidenceStructure::new(points, blocks)
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn v(&self) -> usize {
        self.points.len()
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn blocks_through(&self, point: u32) -> &[u32] {
        &self.point_to_blocks[point as usize]
    }
}

/// (v, b, k, r) of a tactical configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticalParams {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
}

/// Why a structure is not tactical, with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TacticalFailure {
    BlockSizeVaries {
        block: usize,
        size: u64,
        expected: u64,
    },
    ReplicationVaries {
        point: u32,
        replication: u64,
        expected: u64,
    },
}

/// Constant block size and constant replication; reports (v, b, k, r) with
/// bk = vr holding by construction.
pub fn tactical_check(s: &IncidenceStructure) -> std::result::Result<TacticalParams, TacticalFailure> {
    let k = s.blocks[0].len() as u64;
    for (bi, block) in s.blocks.iter().enumerate() {
        if block.len() as u64 != k {
            return Err(TacticalFailure::BlockSizeVaries {
                block: bi,
                size: block.len() as u64,
                expected: k,
            });
        }
    }
    let r = s.point_to_blocks[0].len() as u64;
    for (pi, list) in s.point_to_blocks.iter().enumerate() {
        if list.len() as u64 != r {
            return Err(TacticalFailure::ReplicationVaries {
                point: pi as u32,
                replication: list.len() as u64,
                expected: r,
            });
        }
    }
    let params = TacticalParams {
        v: s.v() as u64,
        b: s.b() as u64,
        k,
        r,
    };
    debug_assert_eq!(params.b * params.k, params.v * params.r);
    Ok(params)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TDesignFailure {
    NotTactical(TacticalFailure),
    UnsupportedStrength(u8),
    NotBalanced {
        subset: Vec<u32>,
        count: u64,
        expected: u64,
    },
}

/// lambda for a t-design, t in {1, 2}, by exhaustive subset counting.
pub fn t_design_check(s: &IncidenceStructure, t: u8) -> std::result::Result<u64, TDesignFailure> {
    let params = tactical_check(s).map_err(TDesignFailure::NotTactical)?;
    match t {
        1 => Ok(params.r),
        2 => {
            let v = s.v();
            let mut pair_counts = vec![0u64; v * v];
            for block in &s.blocks {
                for (i, &a) in block.iter().enumerate() {
                    for &b in &block[i + 1..] {
                        pair_counts[a as usize * v + b as usize] += 1;
                    }
                }
            }
            let mut lambda = None;
            for a in 0..v {
                for b in a + 1..v {
                    let count = pair_counts[a * v + b];
                    match lambda {
                        None => lambda = Some(count),
                        Some(l) if l != count => {
                            return Err(TDesignFailure::NotBalanced {
                                subset: vec![a as u32, b as u32],
                                count,
                                expected: l,
                            });
                        }
                        _ => {}
                    }
                }
            }
            Ok(lambda.expect("a design has at least two points"))
        }
        other => Err(TDesignFailure::UnsupportedStrength(other)),
    }
}

/// A deviating (point, block) pair and the flag count it attained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SWitness {
    pub point: u32,
    pub block: u32,
    pub s_value: u64,
    pub expected: u64,
}

const MAX_WITNESSES: usize = 16;

/// Result of the partial geometric check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PgdReport {
    pub v: u64,
    pub b: u64,
    pub k: u64,
    pub r: u64,
    /// Antiflag constant, when the antiflag values are constant.
    pub alpha: Option<u64>,
    /// Flag constant, when the flag values are constant.
    pub beta: Option<u64>,
    pub is_tactical: bool,
    pub is_pgd: bool,
    pub is_simple: bool,
    pub witnesses: Vec<SWitness>,
}

/// Bitmasks of all blocks over the point universe, `words` u64s per block.
fn block_masks(s: &IncidenceStructure) -> (usize, Vec<u64>) {
    let words = s.v().div_ceil(64);
    let mut masks = vec![0u64; s.b() * words];
    for (bi, block) in s.blocks.iter().enumerate() {
        for &pi in block {
            masks[bi * words + (pi as usize >> 6)] |= 1u64 << (pi as usize & 63);
        }
    }
    (words, masks)
}

/// s(u, B) for every pair, row-major by point then block instance:
/// `s(u, B) = sum over blocks C != B containing u of |C ∩ (B \ {u})|`.
///
/// Computed from the b x b block-intersection table. Block identity is by
/// instance, so repeated blocks count separately — exactly the multiset
/// semantics the flag definition needs. Works on any structure, tactical or
/// not.
pub fn s_values(s: &IncidenceStructure) -> Vec<u64> {
    let v = s.v();
    let b = s.b();
    let (words, masks) = block_masks(s);
    let mut table = vec![0u32; b * b];
    for i in 0..b {
        for j in i..b {
            let mut inter = 0u32;
            for w in 0..words {
                inter += (masks[i * words + w] & masks[j * words + w]).count_ones();
            }
            table[i * b + j] = inter;
            table[j * b + i] = inter;
        }
    }

    let mut values = vec![0u64; v * b];
    for bi in 0..b {
        let block_mask = &masks[bi * words..(bi + 1) * words];
        let k = s.blocks[bi].len() as u64;
        for u in 0..v {
            let u_in_b = block_mask[u >> 6] >> (u & 63) & 1 == 1;
            let mut total: u64 = s.point_to_blocks[u]
                .iter()
                .map(|&ci| table[bi * b + ci as usize] as u64)
                .sum();
            if u_in_b {
                // remove the C = B term and the u-in-intersection overcount
                total -= k; // |B ∩ B|
                total -= s.point_to_blocks[u].len() as u64 - 1; // one per other C containing u
            }
            values[u * b + bi] = total;
        }
    }
    values
}

/// Partial geometric check, classifying s(u, B) by flag/antiflag.
pub fn pgd_check(s: &IncidenceStructure) -> std::result::Result<PgdReport, TacticalFailure> {
    let params = tactical_check(s)?;
    let v = s.v();
    let b = s.b();
    let values = s_values(s);
    let (words, masks) = block_masks(s);

    let mut alpha: Option<u64> = None;
    let mut beta: Option<u64> = None;
    let mut alpha_constant = true;
    let mut beta_constant = true;
    let mut witnesses = Vec::new();

    for bi in 0..b {
        let block_mask = &masks[bi * words..(bi + 1) * words];
        for u in 0..v {
            let u_in_b = block_mask[u >> 6] >> (u & 63) & 1 == 1;
            let total = values[u * b + bi];
            let (slot, constant): (&mut Option<u64>, &mut bool) = if u_in_b {
                (&mut beta, &mut beta_constant)
            } else {
                (&mut alpha, &mut alpha_constant)
            };
            match *slot {
                None => *slot = Some(total),
                Some(reference) if reference != total => {
                    *constant = false;
                    if witnesses.len() < MAX_WITNESSES {
                        witnesses.push(SWitness {
                            point: u as u32,
                            block: bi as u32,
                            s_value: total,
                            expected: reference,
                        });
                    }
                }
                _ => {}
            }
        }
    }

    let is_pgd = alpha_constant && beta_constant;
    Ok(PgdReport {
        v: params.v,
        b: params.b,
        k: params.k,
        r: params.r,
        alpha: if alpha_constant { alpha } else { None },
        beta: if beta_constant { beta } else { None },
        is_tactical: true,
        is_pgd,
        is_simple: simplicity_check(s),
        witnesses,
    })
}

/// True when all blocks are pairwise distinct as sets.
pub fn simplicity_check(s: &IncidenceStructure) -> bool {
    let mut seen: std::collections::HashSet<&[u32]> = std::collections::HashSet::new();
    s.blocks.iter().all(|b| seen.insert(b.as_slice()))
}

/// The two arithmetic feasibility conditions for partial geometric
/// parameters: r*beta is even, and r(v-k)/(r+k+beta-alpha-1) is an integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Feasibility {
    pub r_beta_even: bool,
    pub denominator: i64,
    pub quotient: Option<i64>,
    pub quotient_integral: bool,
}

pub fn feasibility_check(v: u64, k: u64, r: u64, alpha: u64, beta: u64) -> Feasibility {
    let (v, k, r, alpha, beta) = (v as i64, k as i64, r as i64, alpha as i64, beta as i64);
    let r_beta_even = (r * beta) % 2 == 0;
    let denominator = r + k + beta - alpha - 1;
    let numerator = r * (v - k);
    if denominator == 0 {
        return Feasibility {
            r_beta_even,
            denominator,
            quotient: None,
            quotient_integral: false,
        };
    }
    let quotient_integral = numerator % denominator == 0;
    Feasibility {
        r_beta_even,
        denominator,
        quotient: quotient_integral.then(|| numerator / denominator),
        quotient_integral,
    }
}
