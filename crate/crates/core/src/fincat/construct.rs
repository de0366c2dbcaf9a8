use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::{FinCat, FinCatBuilder, Functor, Mor, Obj};
use crate::limits::Limits;

/// The opposite category. Indices and names are unchanged; sources, targets
/// and the composition table are transposed.
pub fn opposite(c: &FinCat) -> FinCat {
    let mut b = FinCatBuilder::new();
    for o in c.objects() {
        b.add_object(c.obj_name(o)).expect("names are unique");
    }
    for m in c.morphisms() {
        b.add_morphism(c.mor_name(m), c.tgt(m), c.src(m))
            .expect("names are unique");
    }
    for o in c.objects() {
        b.set_identity(o, c.id(o));
    }
    for (g, f, h) in c.composition_table() {
        b.set_composite(f, g, h)
            .expect("transposed entry is well typed");
    }
    b.build_trusted()
        .expect("opposite of a category is a category")
}

/// Name of the pair `(a, b)` used for products and pullbacks.
pub fn pair_name(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

/// `C × D` with objects and morphisms ordered lexicographically, and its two projections.
pub fn product(
    c: &Arc<FinCat>,
    d: &Arc<FinCat>,
    limits: &Limits,
) -> Result<(Arc<FinCat>, Functor, Functor)> {
    limits.check_objects("product", c.num_objects() * d.num_objects())?;
    limits.check_morphisms("product", c.num_morphisms() * d.num_morphisms())?;
    let mut b = FinCatBuilder::new();
    for x in c.objects() {
        for y in d.objects() {
            b.add_object(pair_name(c.obj_name(x), d.obj_name(y)))?;
        }
    }
    let nd_o = d.num_objects() as u32;
    let nd_m = d.num_morphisms() as u32;
    let pobj = |x: Obj, y: Obj| Obj(x.0 * nd_o + y.0);
    let pmor = |f: Mor, g: Mor| Mor(f.0 * nd_m + g.0);
    for f in c.morphisms() {
        for g in d.morphisms() {
            b.add_morphism(
                pair_name(c.mor_name(f), d.mor_name(g)),
                pobj(c.src(f), d.src(g)),
                pobj(c.tgt(f), d.tgt(g)),
            )?;
        }
    }
    for x in c.objects() {
        for y in d.objects() {
            b.set_identity(pobj(x, y), pmor(c.id(x), d.id(y)));
        }
    }
    for (g1, f1, h1) in c.composition_table() {
        for (g2, f2, h2) in d.composition_table() {
            b.set_composite(pmor(g1, g2), pmor(f1, f2), pmor(h1, h2))?;
        }
    }
    let p = Arc::new(b.build_trusted()?);
    let pr1 = Functor::new_unchecked(
        p.clone(),
        c.clone(),
        p.objects().map(|o| Obj(o.0 / nd_o)).collect(),
        p.morphisms().map(|m| Mor(m.0 / nd_m)).collect(),
    );
    let pr2 = Functor::new_unchecked(
        p.clone(),
        d.clone(),
        p.objects().map(|o| Obj(o.0 % nd_o)).collect(),
        p.morphisms().map(|m| Mor(m.0 % nd_m)).collect(),
    );
    Ok((p, pr1, pr2))
}

/// `F × G : A × B → C × D` between explicitly given product categories.
pub fn product_functor(
    f: &Functor,
    g: &Functor,
    source: &Arc<FinCat>,
    target: &Arc<FinCat>,
) -> Result<Functor> {
    let (sb_o, sb_m) = (
        g.source().num_objects() as u32,
        g.source().num_morphisms() as u32,
    );
    let (tb_o, tb_m) = (
        g.target().num_objects() as u32,
        g.target().num_morphisms() as u32,
    );
    if source.num_objects() as u32 != f.source().num_objects() as u32 * sb_o
        || target.num_objects() as u32 != f.target().num_objects() as u32 * tb_o
    {
        return Err(Error::ShapeMismatch(
            "product functor between non-products".into(),
        ));
    }
    let obj_map = source
        .objects()
        .map(|o| {
            let (x, y) = (Obj(o.0 / sb_o), Obj(o.0 % sb_o));
            Obj(f.on_obj(x).0 * tb_o + g.on_obj(y).0)
        })
        .collect();
    let mor_map = source
        .morphisms()
        .map(|m| {
            let (x, y) = (Mor(m.0 / sb_m), Mor(m.0 % sb_m));
            Mor(f.on_mor(x).0 * tb_m + g.on_mor(y).0)
        })
        .collect();
    Functor::new(source.clone(), target.clone(), obj_map, mor_map)
}

/// `⟨F, G⟩ : A → C × D` into an explicitly given product category.
pub fn pairing(f: &Functor, g: &Functor, target: &Arc<FinCat>) -> Result<Functor> {
    let (nd_o, nd_m) = (
        g.target().num_objects() as u32,
        g.target().num_morphisms() as u32,
    );
    if !same_cat(f.source(), g.source())
        || target.num_objects() as u32 != f.target().num_objects() as u32 * nd_o
        || target.num_morphisms() as u32 != f.target().num_morphisms() as u32 * nd_m
    {
        return Err(Error::ShapeMismatch("pairing into a non-product".into()));
    }
    let a = f.source();
    Functor::new(
        a.clone(),
        target.clone(),
        a.objects()
            .map(|o| Obj(f.on_obj(o).0 * nd_o + g.on_obj(o).0))
            .collect(),
        a.morphisms()
            .map(|m| Mor(f.on_mor(m).0 * nd_m + g.on_mor(m).0))
            .collect(),
    )
}

/// Name of the morphism `i → j` of an ordinal or zigzag shape.
pub fn arrow_name(i: usize, j: usize) -> String {
    if i == j {
        format!("id_{i}")
    } else {
        format!("{i}->{j}")
    }
}

/// The poset `[n] = {0 < 1 < … < n}`.
pub fn ordinal(n: usize) -> FinCat {
    let mut b = FinCatBuilder::new();
    for i in 0..=n {
        b.add_object(i.to_string()).unwrap();
    }
    let mut index = vec![vec![Mor(u32::MAX); n + 1]; n + 1];
    for i in 0..=n {
        for j in i..=n {
            let m = b
                .add_morphism(arrow_name(i, j), Obj(i as u32), Obj(j as u32))
                .unwrap();
            index[i][j] = m;
            if i == j {
                b.set_identity(Obj(i as u32), m);
            }
        }
    }
    for i in 0..=n {
        for j in i..=n {
            for k in j..=n {
                b.set_composite(index[j][k], index[i][j], index[i][k])
                    .unwrap();
            }
        }
    }
    b.build_trusted().unwrap()
}

/// The terminal category `[0]`.
pub fn terminal() -> FinCat {
    ordinal(0)
}

/// The unique functor to `[0]`.
pub fn to_terminal(c: &Arc<FinCat>, pt: &Arc<FinCat>) -> Functor {
    Functor::constant(c, pt, Obj(0))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SliceSide {
    Over,
    Under,
}

/// The slice `C/X` (side `Over`) or coslice `X\C` (side `Under`) with its projection to `C`.
///
/// Objects carry the names of the morphisms they are; a morphism `h` between
/// `f` and `g` is named `h:f->g`.
pub fn slice(c: &Arc<FinCat>, x: Obj, side: SliceSide) -> Result<(Arc<FinCat>, Functor)> {
    if x.idx() >= c.num_objects() {
        return Err(Error::UnknownObject(format!("#{}", x.0)));
    }
    let objs: Vec<Mor> = match side {
        SliceSide::Over => c.incoming(x).to_vec(),
        SliceSide::Under => c.out_of(x).to_vec(),
    };
    let mut b = FinCatBuilder::new();
    for &f in &objs {
        b.add_object(c.mor_name(f))?;
    }
    // the apex of each slice object, i.e. where the projection sends it
    let apex = |f: Mor| match side {
        SliceSide::Over => c.src(f),
        SliceSide::Under => c.tgt(f),
    };
    let mut under_map = Vec::new();
    let mut key = crate::util::FastMap::default();
    for (i, &f) in objs.iter().enumerate() {
        for (j, &g) in objs.iter().enumerate() {
            let (s, t) = (apex(f), apex(g));
            for &h in c.hom(s, t) {
                let commutes = match side {
                    SliceSide::Over => c.compose(g, h) == Some(f),
                    SliceSide::Under => c.compose(h, f) == Some(g),
                };
                if commutes {
                    let name = format!("{}:{}->{}", c.mor_name(h), c.mor_name(f), c.mor_name(g));
                    let m = b.add_morphism(name, Obj(i as u32), Obj(j as u32))?;
                    if i == j && h == c.id(s) {
                        b.set_identity(Obj(i as u32), m);
                    }
                    key.insert((i, j, h), m);
                    under_map.push(h);
                }
            }
        }
    }
    let num = under_map.len();
    for m1 in 0..num {
        let f1 = Mor(m1 as u32);
        let (i, j) = (b.src(f1).idx(), b.tgt(f1).idx());
        for m2 in 0..num {
            let f2 = Mor(m2 as u32);
            if b.src(f2).idx() != j {
                continue;
            }
            let k = b.tgt(f2).idx();
            let h = c.compose(under_map[m2], under_map[m1]).expect("composable");
            b.set_composite(f2, f1, key[&(i, k, h)])?;
        }
    }
    let s = Arc::new(b.build_trusted()?);
    let proj = Functor::new_unchecked(
        s.clone(),
        c.clone(),
        objs.iter().map(|&f| apex(f)).collect(),
        under_map,
    );
    Ok((s, proj))
}

/// The arrow category `Fun([1], C)` with its domain and codomain projections.
pub fn arrow_category(
    c: &Arc<FinCat>,
    limits: &Limits,
) -> Result<(crate::fincat::FunctorCat, Functor, Functor)> {
    let fc = crate::fincat::functor_category(&Arc::new(ordinal(1)), c, limits)?;
    let dom = fc.evaluate(Obj(0));
    let codom = fc.evaluate(Obj(1));
    Ok((fc, dom, codom))
}

/// The subcategory on the given objects and morphisms (which must contain the
/// identities of those objects and be closed under composition), with its inclusion.
/// Indices keep their relative order; names are unchanged.
pub fn subcategory(
    c: &Arc<FinCat>,
    keep_obj: impl Fn(Obj) -> bool,
    keep_mor: impl Fn(Mor) -> bool,
) -> Result<(Arc<FinCat>, Functor)> {
    let mut b = FinCatBuilder::new();
    let mut obj_new = vec![None; c.num_objects()];
    let mut obj_map = Vec::new();
    for o in c.objects().filter(|&o| keep_obj(o)) {
        obj_new[o.idx()] = Some(b.add_object(c.obj_name(o))?);
        obj_map.push(o);
    }
    let mut mor_new = vec![None; c.num_morphisms()];
    let mut mor_map = Vec::new();
    for m in c.morphisms() {
        let (Some(s), Some(t)) = (obj_new[c.src(m).idx()], obj_new[c.tgt(m).idx()]) else {
            continue;
        };
        if keep_mor(m) {
            mor_new[m.idx()] = Some(b.add_morphism(c.mor_name(m), s, t)?);
            mor_map.push(m);
        }
    }
    for &o in &obj_map {
        let id = mor_new[c.id(o).idx()].ok_or_else(|| {
            Error::BadIdentity(format!(
                "subcategory drops the identity of `{}`",
                c.obj_name(o)
            ))
        })?;
        b.set_identity(obj_new[o.idx()].unwrap(), id);
    }
    for (g, f, h) in c.composition_table() {
        if let (Some(g2), Some(f2)) = (mor_new[g.idx()], mor_new[f.idx()]) {
            let h2 = mor_new[h.idx()].ok_or_else(|| Error::MissingComposite {
                g: c.mor_name(g).into(),
                f: c.mor_name(f).into(),
            })?;
            b.set_composite(g2, f2, h2)?;
        }
    }
    let sub = Arc::new(b.build_trusted()?);
    let incl = Functor::new_unchecked(sub.clone(), c.clone(), obj_map, mor_map);
    Ok((sub, incl))
}
