use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::{opposite, pair_name, FinCat, FinCatBuilder, Functor, Mor, Obj};
use crate::limits::Limits;
use crate::util::{FastMap, FastSet};

/// A commutative square of functors
///
/// ```text
/// A --top--> B
/// |          |
/// left     right
/// v          v
/// C -bottom-> D
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square {
    pub top: Functor,
    pub left: Functor,
    pub right: Functor,
    pub bottom: Functor,
}

impl Square {
    /// Checks that the four functors form a square and that it commutes exactly.
    pub fn new(top: Functor, left: Functor, right: Functor, bottom: Functor) -> Result<Self> {
        let sq = Square {
            top,
            left,
            right,
            bottom,
        };
        sq.check()?;
        Ok(sq)
    }

    pub fn check(&self) -> Result<()> {
        let fits = same_cat(self.top.source(), self.left.source())
            && same_cat(self.top.target(), self.right.source())
            && same_cat(self.left.target(), self.bottom.source())
            && same_cat(self.right.target(), self.bottom.target());
        if !fits {
            return Err(Error::ShapeMismatch("functors do not form a square".into()));
        }
        if self.right.after(&self.top)? != self.bottom.after(&self.left)? {
            return Err(Error::ShapeMismatch("square does not commute".into()));
        }
        Ok(())
    }

    /// Corners in the order A (top left), B (top right), C (bottom left), D (bottom right).
    pub fn corners(&self) -> [&Arc<FinCat>; 4] {
        [
            self.top.source(),
            self.top.target(),
            self.bottom.source(),
            self.bottom.target(),
        ]
    }

    /// The same square reflected in its diagonal: `B` and `C` swap.
    pub fn transposed(&self) -> Square {
        Square {
            top: self.left.clone(),
            left: self.top.clone(),
            right: self.bottom.clone(),
            bottom: self.right.clone(),
        }
    }

    /// The square of opposite categories and functors.
    pub fn opposite(&self) -> Square {
        let [a, b, c, d] = self.corners().map(|x| Arc::new(opposite(x)));
        Square {
            top: self.top.opposite(a.clone(), b.clone()),
            left: self.left.opposite(a, c.clone()),
            right: self.right.opposite(b, d.clone()),
            bottom: self.bottom.opposite(c, d),
        }
    }

    /// Whether `A` is the strict pullback of `C → D ← B`: the comparison functor
    /// `a ↦ (left a, top a)` is a bijection onto the pairs agreeing in `D`, on
    /// objects and on morphisms.
    pub fn is_strict_pullback(&self) -> bool {
        let (b, c) = (self.top.target(), self.left.target());
        let count = |pairs: &mut dyn Iterator<Item = (u32, u32)>, n: usize| {
            let mut seen = FastSet::default();
            for p in pairs {
                if !seen.insert(p) {
                    return false;
                }
            }
            seen.len() == n
        };
        let obj_pairs = pairs_over(
            c.objects().map(|x| self.bottom.on_obj(x).0),
            b.objects().map(|y| self.right.on_obj(y).0),
        );
        let mor_pairs = pairs_over(
            c.morphisms().map(|f| self.bottom.on_mor(f).0),
            b.morphisms().map(|g| self.right.on_mor(g).0),
        );
        let a = self.top.source();
        a.num_objects() == obj_pairs
            && a.num_morphisms() == mor_pairs
            && count(
                &mut a
                    .objects()
                    .map(|o| (self.left.on_obj(o).0, self.top.on_obj(o).0)),
                obj_pairs,
            )
            && count(
                &mut a
                    .morphisms()
                    .map(|m| (self.left.on_mor(m).0, self.top.on_mor(m).0)),
                mor_pairs,
            )
    }
}

/// Number of pairs `(i, j)` with `left[i] = right[j]`.
fn pairs_over(left: impl Iterator<Item = u32>, right: impl Iterator<Item = u32>) -> usize {
    let mut counts: FastMap<u32, usize> = FastMap::default();
    for x in right {
        *counts.entry(x).or_default() += 1;
    }
    left.map(|x| counts.get(&x).copied().unwrap_or(0)).sum()
}

/// The strict pullback of `u: C → D ← B: q`, objects and morphisms being the
/// pairs agreeing in `D` in lexicographic order, as a square with `u` at the bottom.
pub fn strict_pullback(u: &Functor, q: &Functor, limits: &Limits) -> Result<Square> {
    if !same_cat(u.target(), q.target()) {
        return Err(Error::ShapeMismatch(
            "pullback of functors with different codomains".into(),
        ));
    }
    let (c, b) = (u.source(), q.source());
    let n_obj = pairs_over(
        c.objects().map(|x| u.on_obj(x).0),
        b.objects().map(|y| q.on_obj(y).0),
    );
    let n_mor = pairs_over(
        c.morphisms().map(|f| u.on_mor(f).0),
        b.morphisms().map(|g| q.on_mor(g).0),
    );
    limits.check_objects("pullback", n_obj)?;
    limits.check_morphisms("pullback", n_mor)?;

    let mut over_obj: FastMap<Obj, Vec<Obj>> = FastMap::default();
    for y in b.objects() {
        over_obj.entry(q.on_obj(y)).or_default().push(y);
    }
    let mut over_mor: FastMap<Mor, Vec<Mor>> = FastMap::default();
    for g in b.morphisms() {
        over_mor.entry(q.on_mor(g)).or_default().push(g);
    }
    let mut builder = FinCatBuilder::new();
    let mut objs: Vec<(Obj, Obj)> = Vec::with_capacity(n_obj);
    let mut obj_index: FastMap<(Obj, Obj), Obj> = FastMap::default();
    for x in c.objects() {
        for &y in over_obj.get(&u.on_obj(x)).map(Vec::as_slice).unwrap_or(&[]) {
            let o = builder.add_object(pair_name(c.obj_name(x), b.obj_name(y)))?;
            obj_index.insert((x, y), o);
            objs.push((x, y));
        }
    }
    let mut mors: Vec<(Mor, Mor)> = Vec::with_capacity(n_mor);
    let mut mor_index: FastMap<(Mor, Mor), Mor> = FastMap::default();
    for f in c.morphisms() {
        for &g in over_mor.get(&u.on_mor(f)).map(Vec::as_slice).unwrap_or(&[]) {
            let m = builder.add_morphism(
                pair_name(c.mor_name(f), b.mor_name(g)),
                obj_index[&(c.src(f), b.src(g))],
                obj_index[&(c.tgt(f), b.tgt(g))],
            )?;
            mor_index.insert((f, g), m);
            mors.push((f, g));
        }
    }
    for (i, &(x, y)) in objs.iter().enumerate() {
        builder.set_identity(Obj(i as u32), mor_index[&(c.id(x), b.id(y))]);
    }
    for (i, &(f1, g1)) in mors.iter().enumerate() {
        for &h in c.out_of(c.tgt(f1)) {
            for &k in b.out_of(b.tgt(g1)) {
                if let Some(&second) = mor_index.get(&(h, k)) {
                    let comp = mor_index[&(c.compose(h, f1).unwrap(), b.compose(k, g1).unwrap())];
                    builder.set_composite(second, Mor(i as u32), comp)?;
                }
            }
        }
    }
    let p = Arc::new(builder.build_trusted()?);
    let left = Functor::new_unchecked(
        p.clone(),
        c.clone(),
        objs.iter().map(|&(x, _)| x).collect(),
        mors.iter().map(|&(f, _)| f).collect(),
    );
    let top = Functor::new_unchecked(
        p.clone(),
        b.clone(),
        objs.iter().map(|&(_, y)| y).collect(),
        mors.iter().map(|&(_, g)| g).collect(),
    );
    Ok(Square {
        top,
        left,
        right: q.clone(),
        bottom: u.clone(),
    })
}

/// Composite of two squares side by side sharing the middle vertical edge.
pub fn compose_horizontal(left: &Square, right: &Square) -> Result<Square> {
    if left.right != right.left {
        return Err(Error::EdgeMismatch(
            "the right edge of the left square is not the left edge of the right square".into(),
        ));
    }
    Ok(Square {
        top: right.top.after(&left.top)?,
        left: left.left.clone(),
        right: right.right.clone(),
        bottom: right.bottom.after(&left.bottom)?,
    })
}

/// Composite of two stacked squares sharing the middle horizontal edge.
pub fn compose_vertical(upper: &Square, lower: &Square) -> Result<Square> {
    if upper.bottom != lower.top {
        return Err(Error::EdgeMismatch(
            "the bottom edge of the upper square is not the top edge of the lower square".into(),
        ));
    }
    Ok(Square {
        top: upper.top.clone(),
        left: lower.left.after(&upper.left)?,
        right: lower.right.after(&upper.right)?,
        bottom: lower.bottom.clone(),
    })
}

/// The functor `A' → A` into the corner of a strict pullback square induced by
/// a pair of functors into its legs' sources that agree in the base.
pub fn factor_through(square: &Square, to_left: &Functor, to_top: &Functor) -> Result<Functor> {
    let p = square.top.source();
    let a = to_left.source();
    if !same_cat(a, to_top.source())
        || !same_cat(to_left.target(), square.left.target())
        || !same_cat(to_top.target(), square.top.target())
    {
        return Err(Error::ShapeMismatch(
            "functors do not fit the pullback legs".into(),
        ));
    }
    let objs: FastMap<(Obj, Obj), Obj> = p
        .objects()
        .map(|o| ((square.left.on_obj(o), square.top.on_obj(o)), o))
        .collect();
    let mors: FastMap<(Mor, Mor), Mor> = p
        .morphisms()
        .map(|m| ((square.left.on_mor(m), square.top.on_mor(m)), m))
        .collect();
    let missing = || Error::ShapeMismatch("pair does not lie in the pullback".into());
    let obj_map = a
        .objects()
        .map(|o| {
            objs.get(&(to_left.on_obj(o), to_top.on_obj(o)))
                .copied()
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = a
        .morphisms()
        .map(|m| {
            mors.get(&(to_left.on_mor(m), to_top.on_mor(m)))
                .copied()
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(a.clone(), p.clone(), obj_map, mor_map)
}
