//! Orbits, setwise stabilizers, transversals, and intersection-size
//! profiles of group elements acting on plane points.
//!
//! Groups here are small enough that every computation iterates the full
//! element list; there is no generating-set machinery. Outputs are sorted,
//! so results are deterministic regardless of internal iteration order.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::cyclotomy::Point;
use crate::design::PointSet;
use crate::error::{Error, Result};
use crate::gf::FieldCtx;
use crate::matgroup::Action;

/// The orbit of a block under a group: deduplicated images plus the order of
/// the setwise stabilizer observed along the way.
#[derive(Debug, Clone)]
pub struct BlockOrbit {
    pub base_block: Vec<Point>,
    pub distinct_images: Vec<Vec<Point>>,
    pub stabilizer_order: u64,
}

/// Serialized orbit: blocks as point-index lists over a named universe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockOrbitFile {
    pub base: Vec<u32>,
    pub blocks: Vec<Vec<u32>>,
    pub stabilizer_order: u64,
}

impl BlockOrbit {
    /// Index the orbit against a point universe for serialization.
    pub fn to_file(&self, points: &PointSet) -> Result<BlockOrbitFile> {
        let index_block = |block: &[Point]| -> Result<Vec<u32>> {
            block
                .iter()
                .map(|&p| {
                    points.index_of(p).ok_or_else(|| {
                        Error::BadDesignFile(format!(
                            "orbit point ({}, {}) lies outside {}",
                            p.0,
                            p.1,
                            points.kind.name()
                        ))
                    })
                })
                .collect()
        };
        Ok(BlockOrbitFile {
            base: index_block(&self.base_block)?,
            blocks: self
                .distinct_images
                .iter()
                .map(|b| index_block(b))
                .collect::<Result<_>>()?,
            stabilizer_order: self.stabilizer_order,
        })
    }
}

/// Histogram of intersection sizes `|S1 ∩ S2^g|` as g runs over a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionProfile {
    pub histogram: BTreeMap<usize, u64>,
}

impl IntersectionProfile {
    pub fn total(&self) -> u64 {
        self.histogram.values().sum()
    }
}

/// `{x^g : g in G}`, sorted.
pub fn point_orbit<E: Action>(ctx: &FieldCtx, elements: &[E], x: Point) -> Vec<Point> {
    let mut orbit: Vec<Point> = elements.iter().map(|g| g.apply_point(ctx, x)).collect();
    orbit.sort_unstable();
    orbit.dedup();
    orbit
}

/// `{g in G : S^g = S}`, in enumeration order.
///
/// Group elements are bijections, so `S^g ⊆ S` already forces equality.
pub fn setwise_stabilizer<E: Action>(ctx: &FieldCtx, elements: &[E], set: &[Point]) -> Vec<E> {
    let members: HashSet<Point> = set.iter().copied().collect();
    elements
        .iter()
        .copied()
        .filter(|g| set.iter().all(|&x| members.contains(&g.apply_point(ctx, x))))
        .collect()
}

/// Deduplicated images of a block, with the orbit-stabilizer identity
/// asserted: `|orbit| * |stabilizer| = |G|`.
pub fn block_orbit<E: Action>(ctx: &FieldCtx, elements: &[E], base: &[Point]) -> BlockOrbit {
    let mut base_block = base.to_vec();
    base_block.sort_unstable();

    let mut images: HashSet<Vec<Point>> = HashSet::new();
    let mut stabilizer_order = 0u64;
    for g in elements {
        let mut image: Vec<Point> = base.iter().map(|&x| g.apply_point(ctx, x)).collect();
        image.sort_unstable();
        if image == base_block {
            stabilizer_order += 1;
        }
        images.insert(image);
    }
    let mut distinct_images: Vec<Vec<Point>> = images.into_iter().collect();
    distinct_images.sort_unstable();

    debug_assert_eq!(
        distinct_images.len() as u64 * stabilizer_order,
        elements.len() as u64
    );
    BlockOrbit {
        base_block,
        distinct_images,
        stabilizer_order,
    }
}

/// One representative per right coset of `subgroup` in `group`, with the
/// identity representing the subgroup itself. Errors when the claimed
/// subgroup is not closed under products.
pub fn transversal<E: Action>(ctx: &FieldCtx, group: &[E], subgroup: &[E]) -> Result<Vec<E>> {
    let sub_set: HashSet<E> = subgroup.iter().copied().collect();
    for a in subgroup {
        for b in subgroup {
            if !sub_set.contains(&a.compose_with(ctx, b)) {
                return Err(Error::NotASubgroup {
                    order: subgroup.len(),
                });
            }
        }
    }

    let index: HashMap<E, usize> = group
        .iter()
        .enumerate()
        .map(|(i, &g)| (g, i))
        .collect();
    let mut covered = vec![false; group.len()];
    let mut reps = Vec::with_capacity(group.len() / subgroup.len().max(1));

    // The identity leads so that the subgroup's own coset is represented
    // canonically; the rest follow enumeration order.
    let identity = E::identity_element();
    for g in std::iter::once(&identity).chain(group.iter()) {
        let gi = match index.get(g) {
            Some(&i) => i,
            None => continue,
        };
        if covered[gi] {
            continue;
        }
        reps.push(*g);
        for h in subgroup {
            let hg = h.compose_with(ctx, g);
            let hi = *index.get(&hg).ok_or(Error::NotASubgroup {
                order: subgroup.len(),
            })?;
            covered[hi] = true;
        }
    }
    Ok(reps)
}

/// Histogram of `|S1 ∩ S2^g|` over all g.
pub fn intersection_profile<E: Action>(
    ctx: &FieldCtx,
    s1: &[Point],
    s2: &[Point],
    elements: &[E],
) -> IntersectionProfile {
    let reference: HashSet<Point> = s1.iter().copied().collect();
    let mut histogram = BTreeMap::new();
    for g in elements {
        let size = s2
            .iter()
            .filter(|&&x| reference.contains(&g.apply_point(ctx, x)))
            .count();
        *histogram.entry(size).or_insert(0) += 1;
    }
    IntersectionProfile { histogram }
}

/// Same histogram, split by a caller-supplied grouping of the elements.
/// The intersection-size facts checked downstream are stated by cases over
/// matrix shape, so they are checked by cases.
pub fn intersection_profile_by<E: Action, K: Ord, F: Fn(&E) -> K>(
    ctx: &FieldCtx,
    s1: &[Point],
    s2: &[Point],
    elements: &[E],
    bucket: F,
) -> BTreeMap<K, IntersectionProfile> {
    let reference: HashSet<Point> = s1.iter().copied().collect();
    let mut out: BTreeMap<K, IntersectionProfile> = BTreeMap::new();
    for g in elements {
        let size = s2
            .iter()
            .filter(|&&x| reference.contains(&g.apply_point(ctx, x)))
            .count();
        let profile = out.entry(bucket(g)).or_insert_with(|| IntersectionProfile {
            histogram: BTreeMap::new(),
        });
        *profile.histogram.entry(size).or_insert(0) += 1;
    }
    out
}
