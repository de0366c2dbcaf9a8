use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, FunctorCat, Mor, Obj};
use crate::groth::{mixed_grothendieck, CatValuedBifunctor};
use crate::limits::Limits;
use crate::relcat::{path_images, weq_rel_fun, zigzag_category, zigzag_shape, RelCat, ZigzagType};

/// `C^[k](−, −)` as a bifunctor `weq C × weq C^op → Cat`, together with the
/// zigzag categories behind its values.
#[derive(Clone, Debug)]
pub struct ZigzagBifunctor {
    pub k: ZigzagType,
    pub bifunctor: CatValuedBifunctor,
    /// `cells[x·|C| + y]` is `C^[k](x, y)`.
    pub cells: Vec<FunctorCat>,
}

/// Images of the generating arrows between `j` and `j+1` of the zigzag shape.
fn edges_of(shape: &FinCat, leftward: &[bool], mor_map: &[Mor]) -> Vec<Mor> {
    leftward
        .iter()
        .enumerate()
        .map(|(j, &left)| {
            let (a, b) = (Obj(j as u32), Obj(j as u32 + 1));
            let m = if left {
                shape.hom(b, a)[0]
            } else {
                shape.hom(a, b)[0]
            };
            mor_map[m.idx()]
        })
        .collect()
}

/// The functor between zigzag categories replacing the first or last arrow
/// of every zigzag, and the outer ladder components by identities.
fn reattach(
    c: &RelCat,
    shape: &FinCat,
    leftward: &[bool],
    from: &FunctorCat,
    to: &FunctorCat,
    start: Obj,
    end: Obj,
    edit: impl Fn(&mut [Mor]),
) -> Result<Functor> {
    let und = c.und();
    let n = leftward.len();
    let missing =
        || Error::ShapeMismatch("reattached zigzag is not in the target zigzag category".into());
    let obj_map = from
        .cat()
        .objects()
        .map(|z| {
            let mut edges = edges_of(shape, leftward, from.mor_map(z));
            edit(&mut edges);
            to.find_object(&path_images(shape, und, start, &edges))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = from
        .cat()
        .morphisms()
        .map(|m| {
            let mut comps = from.components(m).to_vec();
            comps[0] = und.id(start);
            comps[n] = und.id(end);
            let (s, t) = (
                obj_map[from.cat().src(m).idx()],
                obj_map[from.cat().tgt(m).idx()],
            );
            to.find_morphism(s, t, &comps).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Functor::new_unchecked(
        from.cat().clone(),
        to.cat().clone(),
        obj_map,
        mor_map,
    ))
}

/// The bifunctor `(X, Y) ↦ C^[k](X, Y)`, covariant in `X` by postcomposing the
/// first arrow and contravariant in `Y` by precomposing the last one.
pub fn zigzag_bifunctor(c: &RelCat, k: &ZigzagType, limits: &Limits) -> Result<ZigzagBifunctor> {
    if !k.ends_leftward() {
        return Err(Error::BadZigzagType(format!(
            "{k} must begin and end with a backward segment"
        )));
    }
    let und = c.und();
    let w = c.weq_subcategory().clone();
    let shape = zigzag_shape(k).und().clone();
    let leftward = k.leftward();
    let n = leftward.len();
    let no = und.num_objects();
    let mut cells = Vec::with_capacity(no * no);
    for x in und.objects() {
        for y in und.objects() {
            cells.push(zigzag_category(c, k, x, y, limits)?);
        }
    }
    let cell = |x: Obj, y: Obj| &cells[x.idx() * no + y.idx()];
    let mut push = Vec::with_capacity(w.num_morphisms() * no);
    for wm in w.morphisms() {
        let f = c.from_weq(wm);
        let (x, x2) = (und.src(f), und.tgt(f));
        for y in und.objects() {
            push.push(reattach(
                c,
                &shape,
                &leftward,
                cell(x, y),
                cell(x2, y),
                x2,
                y,
                |e| {
                    e[0] = und.compose(f, e[0]).unwrap();
                },
            )?);
        }
    }
    let mut pull = Vec::with_capacity(no * w.num_morphisms());
    for x in und.objects() {
        for um in w.morphisms() {
            let u = c.from_weq(um);
            let (y, y2) = (und.src(u), und.tgt(u));
            pull.push(reattach(
                c,
                &shape,
                &leftward,
                cell(x, y2),
                cell(x, y),
                x,
                y,
                |e| {
                    e[n - 1] = und.compose(e[n - 1], u).unwrap();
                },
            )?);
        }
    }
    let values: Vec<Arc<FinCat>> = cells.iter().map(|fc| fc.cat().clone()).collect();
    let bifunctor = CatValuedBifunctor::new(w.clone(), w, values, push, pull)?;
    Ok(ZigzagBifunctor {
        k: k.clone(),
        bifunctor,
        cells,
    })
}

/// Builds the comparison `* ⊗ C^[k] ⊗ * → weq RelFun([k], C)` and checks that it
/// is a strict bifunctor, an isomorphism, and compatible with both projections
/// to `weq C`.
pub fn verify_canonical_iso(c: &RelCat, k: &ZigzagType, limits: &Limits) -> Result<bool> {
    let zb = zigzag_bifunctor(c, k, limits)?;
    if zb.bifunctor.check().is_err() {
        return Ok(false);
    }
    let (total, pr_left, pr_right) = mixed_grothendieck(&zb.bifunctor, limits)?;
    let target = weq_rel_fun(c, k, limits)?;
    let n = k.len();
    let no = c.und().num_objects();
    let obj_map: Option<Vec<Obj>> = total
        .objects
        .iter()
        .map(|&(x, y, z)| target.find_object(zb.cells[x.idx() * no + y.idx()].mor_map(z)))
        .collect();
    let Some(obj_map) = obj_map else {
        return Ok(false);
    };
    let mor_map: Option<Vec<Mor>> = total
        .cat
        .morphisms()
        .map(|m| {
            let (w, u, phi) = total.morphisms[m.idx()];
            let (_, y, _) = total.objects[total.cat.src(m).idx()];
            let x2 = c.und().tgt(c.from_weq(w));
            let mut comps = zb.cells[x2.idx() * no + y.idx()].components(phi).to_vec();
            comps[0] = c.from_weq(w);
            comps[n] = c.from_weq(u);
            let (s, t) = (
                obj_map[total.cat.src(m).idx()],
                obj_map[total.cat.tgt(m).idx()],
            );
            target.find_morphism(s, t, &comps)
        })
        .collect();
    let Some(mor_map) = mor_map else {
        return Ok(false);
    };
    let Ok(comparison) = Functor::new(total.cat.clone(), target.cat().clone(), obj_map, mor_map)
    else {
        return Ok(false);
    };
    if !comparison.is_bijective() {
        return Ok(false);
    }
    let dom = c.corestrict(&target.evaluate(Obj(0)))?;
    let codom = c.corestrict(&target.evaluate(Obj(n as u32)))?;
    Ok(dom.after(&comparison)? == pr_left && codom.after(&comparison)? == pr_right)
}
