//! Enumeration of GL2(q), SL2(q) and SA2(q) over a small field, together
//! with their actions on the plane.
//!
//! Points are row vectors and groups act by right multiplication:
//! `x^g = x * g`, so `(x*g)_1 = x1*g11 + x2*g21` and
//! `(x*g)_2 = x1*g12 + x2*g22`. Affine elements act by `x^(g,z) = x*g + z`.
//! Keeping this convention fixed everywhere matters: a silent column
//! convention would swap the roles of the upper and lower triangular
//! subgroups and break every triangular-subset identity checked downstream.

use std::collections::BTreeSet;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::cyclotomy::Point;
use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_GROUP_CAP: u64 = 1_000_000;

/// A 2x2 matrix over GF(q). Field order is the lexicographic enumeration
/// order (g11, g12, g21, g22), which `derive(Ord)` preserves. Serializes as
/// the flat entry list `[g11, g12, g21, g22]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[Fe; 4]", from = "[Fe; 4]")]
pub struct Mat2 {
    pub g11: Fe,
    pub g12: Fe,
    pub g21: Fe,
    pub g22: Fe,
}

impl From<Mat2> for [Fe; 4] {
    fn from(m: Mat2) -> [Fe; 4] {
        m.entries()
    }
}

impl From<[Fe; 4]> for Mat2 {
    fn from(e: [Fe; 4]) -> Mat2 {
        Mat2::new(e[0], e[1], e[2], e[3])
    }
}

impl Mat2 {
    pub fn new(g11: Fe, g12: Fe, g21: Fe, g22: Fe) -> Self {
        Mat2 { g11, g12, g21, g22 }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn det(&self, ctx: &FieldCtx) -> Fe {
        ctx.sub(ctx.mul(self.g11, self.g22), ctx.mul(self.g12, self.g21))
    }

    pub fn mul(&self, ctx: &FieldCtx, rhs: &Mat2) -> Mat2 {
        Mat2 {
            g11: ctx.add(ctx.mul(self.g11, rhs.g11), ctx.mul(self.g12, rhs.g21)),
            g12: ctx.add(ctx.mul(self.g11, rhs.g12), ctx.mul(self.g12, rhs.g22)),
            g21: ctx.add(ctx.mul(self.g21, rhs.g11), ctx.mul(self.g22, rhs.g21)),
            g22: ctx.add(ctx.mul(self.g21, rhs.g12), ctx.mul(self.g22, rhs.g22)),
        }
    }

    /// Inverse via the adjugate. Panics on singular input.
    pub fn inverse(&self, ctx: &FieldCtx) -> Mat2 {
        let d = ctx.inv(self.det(ctx));
        Mat2 {
            g11: ctx.mul(self.g22, d),
            g12: ctx.mul(ctx.neg(self.g12), d),
            g21: ctx.mul(ctx.neg(self.g21), d),
            g22: ctx.mul(self.g11, d),
        }
    }

    /// Right action on a row vector: `x * g`.
    #[inline]
    pub fn apply(&self, ctx: &FieldCtx, x: Point) -> Point {
        (
            ctx.add(ctx.mul(x.0, self.g11), ctx.mul(x.1, self.g21)),
            ctx.add(ctx.mul(x.0, self.g12), ctx.mul(x.1, self.g22)),
        )
    }

    pub fn entries(&self) -> [Fe; 4] {
        [self.g11, self.g12, self.g21, self.g22]
    }
}

/// An affine map x -> x*g + z with g in SL2(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AffineMap {
    pub g: Mat2,
    pub z: Point,
}

impl AffineMap {
    pub fn new(g: Mat2, z: Point) -> Self {
        AffineMap { g, z }
    }

    pub fn identity() -> Self {
        AffineMap::new(Mat2::identity(), (0, 0))
    }

    #[inline]
    pub fn apply(&self, ctx: &FieldCtx, x: Point) -> Point {
        let y = self.g.apply(ctx, x);
        (ctx.add(y.0, self.z.0), ctx.add(y.1, self.z.1))
    }

    /// Composition compatible with the right action: applying `self` and then
    /// `rhs` equals applying `self.compose(rhs)`, i.e.
    /// `(g, z)(g', z') = (g g', z g' + z')`.
    pub fn compose(&self, ctx: &FieldCtx, rhs: &AffineMap) -> AffineMap {
        let zg = rhs.g.apply(ctx, self.z);
        AffineMap {
            g: self.g.mul(ctx, &rhs.g),
            z: (ctx.add(zg.0, rhs.z.0), ctx.add(zg.1, rhs.z.1)),
        }
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> AffineMap {
        let gi = self.g.inverse(ctx);
        let zi = gi.apply(ctx, self.z);
        AffineMap {
            g: gi,
            z: (ctx.neg(zi.0), ctx.neg(zi.1)),
        }
    }
}

/// Anything that acts on plane points and composes like a group element.
/// `compose` follows application order: `x^(a.compose(b)) = (x^a)^b`.
pub trait Action: Copy + Eq + Ord + Hash {
    fn apply_point(&self, ctx: &FieldCtx, x: Point) -> Point;
    fn compose_with(&self, ctx: &FieldCtx, then: &Self) -> Self;
    fn invert(&self, ctx: &FieldCtx) -> Self;
    fn identity_element() -> Self;
}

impl Action for Mat2 {
    fn apply_point(&self, ctx: &FieldCtx, x: Point) -> Point {
        self.apply(ctx, x)
    }
    fn compose_with(&self, ctx: &FieldCtx, then: &Self) -> Self {
        self.mul(ctx, then)
    }
    fn invert(&self, ctx: &FieldCtx) -> Self {
        self.inverse(ctx)
    }
    fn identity_element() -> Self {
        Mat2::identity()
    }
}

impl Action for AffineMap {
    fn apply_point(&self, ctx: &FieldCtx, x: Point) -> Point {
        self.apply(ctx, x)
    }
    fn compose_with(&self, ctx: &FieldCtx, then: &Self) -> Self {
        self.compose(ctx, then)
    }
    fn invert(&self, ctx: &FieldCtx) -> Self {
        self.inverse(ctx)
    }
    fn identity_element() -> Self {
        AffineMap::identity()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GroupKind {
    Gl2,
    Sl2,
    Sa2,
}

impl GroupKind {
    pub fn order(&self, q: u32) -> u64 {
        let q = q as u64;
        match self {
            GroupKind::Gl2 => (q * q - 1) * (q * q - q),
            GroupKind::Sl2 => q * (q * q - 1),
            GroupKind::Sa2 => q * q * q * (q * q - 1),
        }
    }
}

/// A fully enumerated group in deterministic (lexicographic) order.
#[derive(Debug, Clone)]
pub struct GroupView<E> {
    pub kind: GroupKind,
    pub q: u32,
    pub elements: Vec<E>,
}

impl<E> GroupView<E> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_cap(kind: GroupKind, q: u32, cap: u64) -> Result<()> {
    let order = kind.order(q);
    if order > cap {
        return Err(Error::GroupTooLarge { order, cap });
    }
    Ok(())
}

/// Enumerate SL2(q) in lexicographic entry order.
pub fn enumerate_sl2(ctx: &FieldCtx) -> Result<GroupView<Mat2>> {
    enumerate_sl2_with_cap(ctx, DEFAULT_GROUP_CAP)
}

pub fn enumerate_sl2_with_cap(ctx: &FieldCtx, cap: u64) -> Result<GroupView<Mat2>> {
    check_cap(GroupKind::Sl2, ctx.q(), cap)?;
    let view = enumerate_by_det(ctx, GroupKind::Sl2);
    debug_assert_eq!(view.len() as u64, GroupKind::Sl2.order(ctx.q()));
    Ok(view)
}

/// Enumerate GL2(q) in lexicographic entry order.
pub fn enumerate_gl2(ctx: &FieldCtx) -> Result<GroupView<Mat2>> {
    enumerate_gl2_with_cap(ctx, DEFAULT_GROUP_CAP)
}

pub fn enumerate_gl2_with_cap(ctx: &FieldCtx, cap: u64) -> Result<GroupView<Mat2>> {
    check_cap(GroupKind::Gl2, ctx.q(), cap)?;
    let view = enumerate_by_det(ctx, GroupKind::Gl2);
    debug_assert_eq!(view.len() as u64, GroupKind::Gl2.order(ctx.q()));
    Ok(view)
}

fn enumerate_by_det(ctx: &FieldCtx, kind: GroupKind) -> GroupView<Mat2> {
    let q = ctx.q();
    let mut elements = Vec::new();
    for g11 in 0..q {
        for g12 in 0..q {
            for g21 in 0..q {
                for g22 in 0..q {
                    let m = Mat2::new(g11, g12, g21, g22);
                    let d = m.det(ctx);
                    let keep = match kind {
                        GroupKind::Sl2 => d == 1,
                        GroupKind::Gl2 => d != 0,
                        GroupKind::Sa2 => unreachable!(),
                    };
                    if keep {
                        elements.push(m);
                    }
                }
            }
        }
    }
    GroupView {
        kind,
        q,
        elements,
    }
}

/// Enumerate SA2(q) = SL2(q) x F_q^2 as explicit (matrix, translation)
/// pairs, matrix-major lexicographic order.
pub fn enumerate_sa2(ctx: &FieldCtx) -> Result<GroupView<AffineMap>> {
    enumerate_sa2_with_cap(ctx, DEFAULT_GROUP_CAP)
}

pub fn enumerate_sa2_with_cap(ctx: &FieldCtx, cap: u64) -> Result<GroupView<AffineMap>> {
    check_cap(GroupKind::Sa2, ctx.q(), cap)?;
    let q = ctx.q();
    let sl2 = enumerate_sl2_with_cap(ctx, cap)?;
    let mut elements = Vec::with_capacity(sl2.len() * (q * q) as usize);
    for &g in &sl2.elements {
        for z1 in 0..q {
            for z2 in 0..q {
                elements.push(AffineMap::new(g, (z1, z2)));
            }
        }
    }
    debug_assert_eq!(elements.len() as u64, GroupKind::Sa2.order(q));
    Ok(GroupView {
        kind: GroupKind::Sa2,
        q,
        elements,
    })
}

/// The matrix subsets singled out by entry-vanishing patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixClass {
    /// g11 = 0.
    ZeroAt11,
    /// g12 = 0 (lower triangular).
    ZeroAt12,
    /// g21 = 0 (upper triangular).
    ZeroAt21,
    /// g22 = 0.
    ZeroAt22,
    /// Both off-diagonal entries zero.
    Diagonal,
    /// Both diagonal entries zero.
    AntiDiagonal,
    /// No entry zero.
    AllNonzero,
}

impl MatrixClass {
    pub fn matches(&self, m: &Mat2) -> bool {
        match self {
            MatrixClass::ZeroAt11 => m.g11 == 0,
            MatrixClass::ZeroAt12 => m.g12 == 0,
            MatrixClass::ZeroAt21 => m.g21 == 0,
            MatrixClass::ZeroAt22 => m.g22 == 0,
            MatrixClass::Diagonal => m.g12 == 0 && m.g21 == 0,
            MatrixClass::AntiDiagonal => m.g11 == 0 && m.g22 == 0,
            MatrixClass::AllNonzero => m.entries().iter().all(|&e| e != 0),
        }
    }
}

/// Exact subset of a group matching a class predicate, order preserved.
pub fn class_filter(view: &GroupView<Mat2>, class: MatrixClass) -> Vec<Mat2> {
    view.elements
        .iter()
        .copied()
        .filter(|m| class.matches(m))
        .collect()
}

/// Set product {x y : x in xs, y in ys}, deduplicated and sorted.
pub fn subset_product(ctx: &FieldCtx, xs: &[Mat2], ys: &[Mat2]) -> Vec<Mat2> {
    let mut out = BTreeSet::new();
    for x in xs {
        for y in ys {
            out.insert(x.mul(ctx, y));
        }
    }
    out.into_iter().collect()
}

/// Inverse set {x^{-1} : x in xs}, sorted.
pub fn subset_inverse(ctx: &FieldCtx, xs: &[Mat2]) -> Vec<Mat2> {
    let mut out: Vec<Mat2> = xs.iter().map(|x| x.inverse(ctx)).collect();
    out.sort_unstable();
    out
}

pub fn sorted_set(xs: &[Mat2]) -> Vec<Mat2> {
    let mut out = xs.to_vec();
    out.sort_unstable();
    out.dedup();
    out
}

/// Is the subset transitive (t = 1) or transitive on unordered pairs (t = 2)
/// over the given point domain? Checked by expanding the orbit of one
/// t-subset and comparing against all of them.
pub fn check_homogeneity<E: Action>(
    ctx: &FieldCtx,
    elements: &[E],
    domain: &[Point],
    t: u8,
) -> Result<bool> {
    if domain.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    match t {
        1 => {
            let mut orbit: BTreeSet<Point> =
                elements.iter().map(|g| g.apply_point(ctx, domain[0])).collect();
            orbit.insert(domain[0]);
            Ok(domain.iter().all(|p| orbit.contains(p)))
        }
        2 => {
            if domain.len() < 2 {
                return Err(Error::EmptyPointSet);
            }
            let (a, b) = (domain[0], domain[1]);
            let mut orbit: BTreeSet<(Point, Point)> = BTreeSet::new();
            for g in elements {
                let (x, y) = (g.apply_point(ctx, a), g.apply_point(ctx, b));
                orbit.insert(if x <= y { (x, y) } else { (y, x) });
            }
            let total = domain.len() * (domain.len() - 1) / 2;
            Ok(orbit.len() == total)
        }
        _ => Ok(false),
    }
}
