//! Cyclotomic classes and numbers, plus the distinguished subsets of the
//! plane F_q^2 and developments of subsets of F_q used by the design
//! builders.
//!
//! The cyclotomic classes of order e (for e dividing q-1) are the cosets
//! `D_i = gamma^i <gamma^e>` of the e-th powers in the multiplicative group;
//! the cyclotomic number `(i, j)_e` counts `|D_i ∩ (D_j + 1)|`. Order two is
//! the workhorse here: closed forms are known and every enumerated value is
//! checked against them in the tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Fe, FieldCtx};

/// A point of the plane F_q^2, as a pair of packed elements.
pub type Point = (Fe, Fe);

/// Cyclotomic classes of order e over a fixed field.
pub struct CycloSystem<'a> {
    ctx: &'a FieldCtx,
    e: u32,
    classes: Vec<Vec<Fe>>,
}

impl<'a> CycloSystem<'a> {
    /// Requires e >= 1 and e | q-1.
    pub fn new(ctx: &'a FieldCtx, e: u32) -> Result<Self> {
        let qm1 = ctx.q() - 1;
        if e == 0 || qm1 % e != 0 {
            return Err(Error::BadCyclotomyOrder { e, qm1 });
        }
        let mut classes = vec![Vec::with_capacity((qm1 / e) as usize); e as usize];
        for x in ctx.nonzero_elements() {
            let i = ctx.dlog(x)? % e;
            classes[i as usize].push(x);
        }
        Ok(CycloSystem { ctx, e, classes })
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ctx
    }

    /// The class D_i as a sorted element list.
    pub fn class(&self, i: u32) -> Result<&[Fe]> {
        self.classes
            .get(i as usize)
            .map(Vec::as_slice)
            .ok_or(Error::ClassIndexOutOfRange {
                index: i,
                e: self.e,
            })
    }

    /// Index i with x in D_i; errors on x = 0.
    pub fn class_of(&self, x: Fe) -> Result<u32> {
        Ok(self.ctx.dlog(x)? % self.e)
    }

    /// `(i, j)_e`: the number of x in D_i with x + 1 in D_j, by direct
    /// enumeration. Equivalently `|(D_i + 1) ∩ D_j|`.
    ///
    /// Note the orientation: this is the classical convention, the one under
    /// which the order-two closed forms actually hold. Writing the same
    /// quantity as `|D_i ∩ (D_j + 1)|` swaps (0,1) with (1,0) for
    /// q = 3 (mod 4) and breaks the closed-form table, as enumeration at
    /// q = 3 already shows.
    pub fn cyclotomic_number(&self, i: u32, j: u32) -> Result<u64> {
        if i >= self.e || j >= self.e {
            return Err(Error::ClassIndexOutOfRange {
                index: i.max(j),
                e: self.e,
            });
        }
        let mut count = 0;
        for &x in &self.classes[i as usize] {
            let y = self.ctx.add(x, 1);
            if y != 0 && self.class_of(y)? == j {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Closed form for the order-two cyclotomic numbers of GF(q), q odd.
///
/// For q = 1 (mod 4): (0,0) = (q-5)/4 and the other three equal (q-1)/4.
/// For q = 3 (mod 4): (0,1) = (q+1)/4 and the other three equal (q-3)/4.
pub fn order2_closed_form(q: u32, i: u32, j: u32) -> Result<u64> {
    if q % 2 == 0 {
        return Err(Error::BadCyclotomyOrder { e: 2, qm1: q - 1 });
    }
    if i > 1 || j > 1 {
        return Err(Error::ClassIndexOutOfRange {
            index: i.max(j),
            e: 2,
        });
    }
    let q = q as u64;
    Ok(if q % 4 == 1 {
        match (i, j) {
            (0, 0) => (q - 5) / 4,
            _ => (q - 1) / 4,
        }
    } else {
        match (i, j) {
            (0, 1) => (q + 1) / 4,
            _ => (q - 3) / 4,
        }
    })
}

/// The three distinguished subsets of F_q^2 the builders act on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneBlockKind {
    /// Both coordinates nonzero; size (q-1)^2.
    NonzeroTorus,
    /// Both nonzero with even dlog sum; size (q-1)^2/2.
    EvenCyclotomic,
    /// Both nonzero with odd dlog sum; size (q-1)^2/2.
    OddCyclotomic,
}

/// A named subset of the plane with its explicit, sorted point list.
/// Serializes as `{"kind": ..., "q": ..., "points": [[x1, x2], ...]}` with
/// packed element encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneBlock {
    pub kind: PlaneBlockKind,
    pub q: u32,
    pub points: Vec<Point>,
}

/// Materialize one of the distinguished subsets. The cyclotomic kinds need
/// q odd (dlog-sum parity is only meaningful when 2 | q-1).
pub fn plane_block(ctx: &FieldCtx, kind: PlaneBlockKind) -> Result<PlaneBlock> {
    let q = ctx.q();
    if q < 3 {
        return Err(Error::ConstraintViolated {
            construction: format!("{kind:?}"),
            q,
            requirement: "q >= 3".to_string(),
        });
    }
    if kind != PlaneBlockKind::NonzeroTorus && q % 2 == 0 {
        return Err(Error::BadCyclotomyOrder { e: 2, qm1: q - 1 });
    }
    let mut points = Vec::new();
    for x1 in ctx.nonzero_elements() {
        for x2 in ctx.nonzero_elements() {
            let keep = match kind {
                PlaneBlockKind::NonzeroTorus => true,
                PlaneBlockKind::EvenCyclotomic => {
                    (ctx.dlog(x1)? + ctx.dlog(x2)?) % 2 == 0
                }
                PlaneBlockKind::OddCyclotomic => (ctx.dlog(x1)? + ctx.dlog(x2)?) % 2 == 1,
            };
            if keep {
                points.push((x1, x2));
            }
        }
    }
    Ok(PlaneBlock { kind, q, points })
}

/// The development of S: the q translates `x + S`, in translate order
/// x = 0, 1, ..., q-1, each sorted. Translates are kept as a multiset.
pub fn development(ctx: &FieldCtx, s: &[Fe]) -> Vec<Vec<Fe>> {
    ctx.elements()
        .map(|x| {
            let mut translate: Vec<Fe> = s.iter().map(|&y| ctx.add(x, y)).collect();
            translate.sort_unstable();
            translate
        })
        .collect()
}
