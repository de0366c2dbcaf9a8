use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::{FinCat, FinCatBuilder, Functor, Mor, Obj};
use crate::limits::Limits;
use crate::util::FastMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Covariant,
    Contravariant,
}

/// A strict functor `C → Cat` or `C^op → Cat` into finite categories.
#[derive(Clone, Debug)]
pub struct CatDiagram {
    base: Arc<FinCat>,
    variance: Variance,
    values: Vec<Arc<FinCat>>,
    actions: Vec<Functor>,
}

impl CatDiagram {
    /// Checks that each action goes between the right values and that
    /// identities and composites are preserved exactly.
    pub fn new(
        base: Arc<FinCat>,
        variance: Variance,
        values: Vec<Arc<FinCat>>,
        actions: Vec<Functor>,
    ) -> Result<Self> {
        if values.len() != base.num_objects() || actions.len() != base.num_morphisms() {
            return Err(Error::InvalidFunctor(
                "diagram sizes do not match its base".into(),
            ));
        }
        let d = CatDiagram {
            base,
            variance,
            values,
            actions,
        };
        d.check()?;
        Ok(d)
    }

    /// The constant diagram at `value`.
    pub fn constant(base: &Arc<FinCat>, variance: Variance, value: &Arc<FinCat>) -> Self {
        CatDiagram {
            base: base.clone(),
            variance,
            values: vec![value.clone(); base.num_objects()],
            actions: vec![Functor::identity(value); base.num_morphisms()],
        }
    }

    fn check(&self) -> Result<()> {
        let c = &self.base;
        for m in c.morphisms() {
            let (from, to) = self.ends(m);
            let a = &self.actions[m.idx()];
            if !same_cat(a.source(), &self.values[from.idx()])
                || !same_cat(a.target(), &self.values[to.idx()])
            {
                return Err(Error::InvalidFunctor(format!(
                    "action of `{}` has the wrong source or target",
                    c.mor_name(m)
                )));
            }
        }
        for o in c.objects() {
            if self.actions[c.id(o).idx()] != Functor::identity(&self.values[o.idx()]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` does not act as the identity",
                    c.obj_name(o)
                )));
            }
        }
        for (g, f, h) in c.composition_table() {
            let (ag, af) = (&self.actions[g.idx()], &self.actions[f.idx()]);
            let composite = match self.variance {
                Variance::Covariant => ag.after(af)?,
                Variance::Contravariant => af.after(ag)?,
            };
            if composite != self.actions[h.idx()] {
                return Err(Error::InvalidFunctor(format!(
                    "action does not preserve the composite of ({}, {})",
                    c.mor_name(g),
                    c.mor_name(f)
                )));
            }
        }
        Ok(())
    }

    /// The values the action of `m` goes between.
    fn ends(&self, m: Mor) -> (Obj, Obj) {
        let (s, t) = (self.base.src(m), self.base.tgt(m));
        match self.variance {
            Variance::Covariant => (s, t),
            Variance::Contravariant => (t, s),
        }
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn value(&self, o: Obj) -> &Arc<FinCat> {
        &self.values[o.idx()]
    }

    pub fn action(&self, m: Mor) -> &Functor {
        &self.actions[m.idx()]
    }
}

/// A category of triples over a base with the data needed to map out of it.
#[derive(Clone, Debug)]
pub struct TotalCategory {
    pub cat: Arc<FinCat>,
    /// Index data per object and morphism; meaning depends on the construction.
    pub objects: Vec<(Obj, Obj, Obj)>,
    pub morphisms: Vec<(Mor, Mor, Mor)>,
    obj_index: FastMap<(Obj, Obj, Obj), Obj>,
    mor_index: FastMap<(Obj, Obj, Mor, Mor, Mor), Mor>,
}

impl TotalCategory {
    pub fn find_object(&self, key: (Obj, Obj, Obj)) -> Option<Obj> {
        self.obj_index.get(&key).copied()
    }

    pub fn find_morphism(&self, src: Obj, tgt: Obj, key: (Mor, Mor, Mor)) -> Option<Mor> {
        self.mor_index
            .get(&(src, tgt, key.0, key.1, key.2))
            .copied()
    }
}

/// Assembles a total category from its objects, its morphisms (source, target,
/// key) and a composition rule on keys. Morphism names that would collide get
/// their target appended.
fn assemble(
    obj_names: Vec<String>,
    objects: Vec<(Obj, Obj, Obj)>,
    mut morphisms: Vec<(Obj, Obj, (Mor, Mor, Mor), String)>,
    identity: impl Fn(Obj) -> (Mor, Mor, Mor),
    compose: impl Fn(&(Mor, Mor, Mor), &(Mor, Mor, Mor), Obj) -> (Mor, Mor, Mor),
    limits: &Limits,
) -> Result<TotalCategory> {
    limits.check_morphisms("two-sided construction", morphisms.len())?;
    morphisms.sort_by(|a, b| (a.0, a.1, a.2).cmp(&(b.0, b.1, b.2)));
    let mut b = FinCatBuilder::new();
    for n in &obj_names {
        b.add_object(n.clone())?;
    }
    let mut count: FastMap<&str, usize> = FastMap::default();
    for m in &morphisms {
        *count.entry(m.3.as_str()).or_default() += 1;
    }
    let mut mor_index = FastMap::default();
    for (s, t, key, name) in &morphisms {
        let name = if count[name.as_str()] > 1 {
            format!("{name}:{}->{}", obj_names[s.idx()], obj_names[t.idx()])
        } else {
            name.clone()
        };
        let m = b.add_morphism(name, *s, *t)?;
        mor_index.insert((*s, *t, key.0, key.1, key.2), m);
    }
    for (i, _) in objects.iter().enumerate() {
        let o = Obj(i as u32);
        let id = identity(o);
        b.set_identity(o, mor_index[&(o, o, id.0, id.1, id.2)]);
    }
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); objects.len()];
    for (i, m) in morphisms.iter().enumerate() {
        out[m.0.idx()].push(i);
    }
    for (i, (s1, t1, k1, _)) in morphisms.iter().enumerate() {
        for &j in &out[t1.idx()] {
            let (_, t2, k2, _) = &morphisms[j];
            let k = compose(k2, k1, *s1);
            let h = mor_index
                .get(&(*s1, *t2, k.0, k.1, k.2))
                .copied()
                .ok_or_else(|| Error::MissingComposite {
                    g: morphisms[j].3.clone(),
                    f: morphisms[i].3.clone(),
                })?;
            b.set_composite(Mor(j as u32), Mor(i as u32), h)?;
        }
    }
    let cat = Arc::new(b.build_trusted()?);
    let obj_index = objects
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, Obj(i as u32)))
        .collect();
    Ok(TotalCategory {
        cat,
        objects,
        morphisms: morphisms.into_iter().map(|m| m.2).collect(),
        obj_index,
        mor_index,
    })
}

fn triple_name(a: &str, b: &str, c: &str) -> String {
    format!("({a},{b},{c})")
}

/// The two-sided Grothendieck construction `F ⊗_C G` for `F` contravariant and
/// `G` covariant over the same base, with its projection to the base.
///
/// Objects `(x, C, y)` are ordered by `C`, then `x`, then `y`, and recorded as
/// `(C, x, y)`; morphisms `(f, c, g)` are recorded as `(c, f, g)`.
pub fn two_sided_grothendieck(
    f: &CatDiagram,
    g: &CatDiagram,
    limits: &Limits,
) -> Result<(TotalCategory, Functor)> {
    if !same_cat(f.base(), g.base()) {
        return Err(Error::ShapeMismatch("diagrams over different bases".into()));
    }
    if f.variance() != Variance::Contravariant || g.variance() != Variance::Covariant {
        return Err(Error::InvalidFunctor(
            "expected a contravariant and a covariant diagram".into(),
        ));
    }
    let c = f.base().clone();
    let total: usize = c
        .objects()
        .map(|o| f.value(o).num_objects() * g.value(o).num_objects())
        .sum();
    limits.check_objects("two-sided construction", total)?;
    let mut objects = Vec::with_capacity(total);
    let mut names = Vec::with_capacity(total);
    for o in c.objects() {
        let (fc, gc) = (f.value(o), g.value(o));
        for x in fc.objects() {
            for y in gc.objects() {
                objects.push((o, x, y));
                names.push(triple_name(fc.obj_name(x), c.obj_name(o), gc.obj_name(y)));
            }
        }
    }
    let index: FastMap<(Obj, Obj, Obj), Obj> = objects
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, Obj(i as u32)))
        .collect();
    let mut morphisms = Vec::new();
    for (i, &(c1, x1, y1)) in objects.iter().enumerate() {
        for &cm in c.out_of(c1) {
            let c2 = c.tgt(cm);
            let (fa, ga) = (f.action(cm), g.action(cm));
            let (f1, g2) = (f.value(c1), g.value(c2));
            let gy = ga.on_obj(y1);
            for x2 in f.value(c2).objects() {
                let fx = fa.on_obj(x2);
                for y2 in g2.objects() {
                    for &fm in f1.hom(x1, fx) {
                        for &gm in g2.hom(gy, y2) {
                            morphisms.push((
                                Obj(i as u32),
                                index[&(c2, x2, y2)],
                                (cm, fm, gm),
                                triple_name(f1.mor_name(fm), c.mor_name(cm), g2.mor_name(gm)),
                            ));
                        }
                    }
                }
            }
        }
    }
    let tc = assemble(
        names,
        objects.clone(),
        morphisms,
        |o| {
            let (co, x, y) = objects[o.idx()];
            (c.id(co), f.value(co).id(x), g.value(co).id(y))
        },
        |&(c2, f2, g2), &(c1, f1, g1), s| {
            let c0 = objects[s.idx()].0;
            let cc = c.compose(c2, c1).unwrap();
            let ff = f.value(c0).compose(f.action(c1).on_mor(f2), f1).unwrap();
            let gg = g
                .value(c.tgt(c2))
                .compose(g2, g.action(c2).on_mor(g1))
                .unwrap();
            (cc, ff, gg)
        },
        limits,
    )?;
    let proj = Functor::new_unchecked(
        tc.cat.clone(),
        c.clone(),
        tc.objects.iter().map(|t| t.0).collect(),
        tc.morphisms.iter().map(|t| t.0).collect(),
    );
    Ok((tc, proj))
}

/// A natural transformation between diagrams with the same base and variance,
/// given by one functor per base object.
#[derive(Clone, Debug)]
pub struct DiagramMap {
    pub source: CatDiagram,
    pub target: CatDiagram,
    pub components: Vec<Functor>,
}

impl DiagramMap {
    pub fn new(source: CatDiagram, target: CatDiagram, components: Vec<Functor>) -> Result<Self> {
        if !same_cat(source.base(), target.base()) || source.variance() != target.variance() {
            return Err(Error::ShapeMismatch(
                "diagram map between unrelated diagrams".into(),
            ));
        }
        let base = source.base().clone();
        if components.len() != base.num_objects() {
            return Err(Error::InvalidFunctor(
                "one component per base object expected".into(),
            ));
        }
        for m in base.morphisms() {
            let (from, to) = source.ends(m);
            let lhs = components[to.idx()].after(source.action(m))?;
            let rhs = target.action(m).after(&components[from.idx()])?;
            if lhs != rhs {
                return Err(Error::InvalidFunctor(format!(
                    "diagram map is not natural at `{}`",
                    base.mor_name(m)
                )));
            }
        }
        Ok(DiagramMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(d: &CatDiagram) -> Self {
        DiagramMap {
            source: d.clone(),
            target: d.clone(),
            components: d.values.iter().map(Functor::identity).collect(),
        }
    }
}

/// The functor `φ ⊗_C ψ` induced on two-sided constructions.
pub fn two_sided_map(
    phi: &DiagramMap,
    psi: &DiagramMap,
    source: &TotalCategory,
    target: &TotalCategory,
) -> Result<Functor> {
    let missing = || Error::InvalidFunctor("image is not in the target construction".into());
    let obj_map = source
        .objects
        .iter()
        .map(|&(c, x, y)| {
            target
                .find_object((
                    c,
                    phi.components[c.idx()].on_obj(x),
                    psi.components[c.idx()].on_obj(y),
                ))
                .ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = source
        .cat
        .morphisms()
        .map(|m| {
            let (cm, fm, gm) = source.morphisms[m.idx()];
            let base = phi.source.base();
            let (c1, c2) = (base.src(cm), base.tgt(cm));
            let key = (
                cm,
                phi.components[c1.idx()].on_mor(fm),
                psi.components[c2.idx()].on_mor(gm),
            );
            let (s, t) = (
                obj_map[source.cat.src(m).idx()],
                obj_map[source.cat.tgt(m).idx()],
            );
            target.find_morphism(s, t, key).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(source.cat.clone(), target.cat.clone(), obj_map, mor_map)
}

/// A strict functor `L × R^op → Cat`: covariant in the left slot, contravariant
/// in the right one.
#[derive(Clone, Debug)]
pub struct CatValuedBifunctor {
    left: Arc<FinCat>,
    right: Arc<FinCat>,
    values: Vec<Arc<FinCat>>,
    push: Vec<Functor>,
    pull: Vec<Functor>,
}

impl CatValuedBifunctor {
    /// `values[x·|R| + y]` is `H(x, y)`; `push[w·|R| + y]` is `H(w, y): H(x, y) → H(x', y)`
    /// for `w: x → x'`; `pull[x·|R₁| + u]` is `H(x, u): H(x, y') → H(x, y)` for `u: y → y'`.
    pub fn new(
        left: Arc<FinCat>,
        right: Arc<FinCat>,
        values: Vec<Arc<FinCat>>,
        push: Vec<Functor>,
        pull: Vec<Functor>,
    ) -> Result<Self> {
        let h = CatValuedBifunctor {
            left,
            right,
            values,
            push,
            pull,
        };
        if h.values.len() != h.left.num_objects() * h.right.num_objects()
            || h.push.len() != h.left.num_morphisms() * h.right.num_objects()
            || h.pull.len() != h.left.num_objects() * h.right.num_morphisms()
        {
            return Err(Error::InvalidFunctor(
                "bifunctor sizes do not match its bases".into(),
            ));
        }
        Ok(h)
    }

    pub fn left(&self) -> &Arc<FinCat> {
        &self.left
    }

    pub fn right(&self) -> &Arc<FinCat> {
        &self.right
    }

    pub fn value(&self, x: Obj, y: Obj) -> &Arc<FinCat> {
        &self.values[x.idx() * self.right.num_objects() + y.idx()]
    }

    pub fn push(&self, w: Mor, y: Obj) -> &Functor {
        &self.push[w.idx() * self.right.num_objects() + y.idx()]
    }

    pub fn pull(&self, x: Obj, u: Mor) -> &Functor {
        &self.pull[x.idx() * self.right.num_morphisms() + u.idx()]
    }

    /// Strict functoriality in each slot and exact interchange of the two actions.
    pub fn check(&self) -> Result<()> {
        let (l, r) = (&self.left, &self.right);
        let bad = |what: String| Err(Error::InvalidFunctor(what));
        for y in r.objects() {
            for w in l.morphisms() {
                let p = self.push(w, y);
                if !same_cat(p.source(), self.value(l.src(w), y))
                    || !same_cat(p.target(), self.value(l.tgt(w), y))
                {
                    return bad(format!(
                        "action of `{}` has the wrong source or target",
                        l.mor_name(w)
                    ));
                }
            }
            for x in l.objects() {
                if *self.push(l.id(x), y) != Functor::identity(self.value(x, y)) {
                    return bad(format!(
                        "identity of `{}` does not act as the identity",
                        l.obj_name(x)
                    ));
                }
            }
            for (g, f, h) in l.composition_table() {
                if *self.push(h, y) != self.push(g, y).after(self.push(f, y))? {
                    return bad(format!(
                        "composite of ({}, {}) is not preserved",
                        l.mor_name(g),
                        l.mor_name(f)
                    ));
                }
            }
        }
        for x in l.objects() {
            for u in r.morphisms() {
                let p = self.pull(x, u);
                if !same_cat(p.source(), self.value(x, r.tgt(u)))
                    || !same_cat(p.target(), self.value(x, r.src(u)))
                {
                    return bad(format!(
                        "action of `{}` has the wrong source or target",
                        r.mor_name(u)
                    ));
                }
            }
            for y in r.objects() {
                if *self.pull(x, r.id(y)) != Functor::identity(self.value(x, y)) {
                    return bad(format!(
                        "identity of `{}` does not act as the identity",
                        r.obj_name(y)
                    ));
                }
            }
            for (g, f, h) in r.composition_table() {
                if *self.pull(x, h) != self.pull(x, f).after(self.pull(x, g))? {
                    return bad(format!(
                        "composite of ({}, {}) is not preserved",
                        r.mor_name(g),
                        r.mor_name(f)
                    ));
                }
            }
        }
        for w in l.morphisms() {
            for u in r.morphisms() {
                let (x, x2, y, y2) = (l.src(w), l.tgt(w), r.src(u), r.tgt(u));
                let a = self.push(w, y).after(self.pull(x, u))?;
                let b = self.pull(x2, u).after(self.push(w, y2))?;
                if a != b {
                    return bad(format!(
                        "actions of `{}` and `{}` do not commute",
                        l.mor_name(w),
                        r.mor_name(u)
                    ));
                }
            }
        }
        Ok(())
    }
}

/// The total category `* ⊗_L H ⊗_R *` of a bifunctor, with its projections to `L` and `R`.
///
/// Objects are `(x, y, z)` with `z` in `H(x, y)`; a morphism `(x, y, z) → (x', y', z')`
/// is `(w, u, φ)` with `w: x → x'`, `u: y → y'` and `φ: H(w, y)(z) → H(x', u)(z')`
/// in `H(x', y)`.
pub fn mixed_grothendieck(
    h: &CatValuedBifunctor,
    limits: &Limits,
) -> Result<(TotalCategory, Functor, Functor)> {
    let (l, r) = (h.left.clone(), h.right.clone());
    let total: usize = h.values.iter().map(|v| v.num_objects()).sum();
    limits.check_objects("two-sided construction", total)?;
    let mut objects = Vec::with_capacity(total);
    let mut names = Vec::with_capacity(total);
    for x in l.objects() {
        for y in r.objects() {
            let v = h.value(x, y);
            for z in v.objects() {
                objects.push((x, y, z));
                names.push(triple_name(l.obj_name(x), r.obj_name(y), v.obj_name(z)));
            }
        }
    }
    let index: FastMap<(Obj, Obj, Obj), Obj> = objects
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, Obj(i as u32)))
        .collect();
    let mut morphisms = Vec::new();
    for (i, &(x, y, z)) in objects.iter().enumerate() {
        for &w in l.out_of(x) {
            let x2 = l.tgt(w);
            let pushed = h.push(w, y).on_obj(z);
            let cell = h.value(x2, y);
            for &u in r.out_of(y) {
                let y2 = r.tgt(u);
                let pull = h.pull(x2, u);
                for z2 in h.value(x2, y2).objects() {
                    for &phi in cell.hom(pushed, pull.on_obj(z2)) {
                        morphisms.push((
                            Obj(i as u32),
                            index[&(x2, y2, z2)],
                            (w, u, phi),
                            triple_name(l.mor_name(w), r.mor_name(u), cell.mor_name(phi)),
                        ));
                    }
                }
            }
        }
    }
    let tc = assemble(
        names,
        objects.clone(),
        morphisms,
        |o| {
            let (x, y, z) = objects[o.idx()];
            (l.id(x), r.id(y), h.value(x, y).id(z))
        },
        |&(w2, u2, p2), &(w1, u1, p1), s| {
            let (_, y, _) = objects[s.idx()];
            let x3 = l.tgt(w2);
            let first = h.push(w2, y).on_mor(p1);
            let second = h.pull(x3, u1).on_mor(p2);
            (
                l.compose(w2, w1).unwrap(),
                r.compose(u2, u1).unwrap(),
                h.value(x3, y).compose(second, first).unwrap(),
            )
        },
        limits,
    )?;
    let pr_left = Functor::new_unchecked(
        tc.cat.clone(),
        l.clone(),
        tc.objects.iter().map(|t| t.0).collect(),
        tc.morphisms.iter().map(|t| t.0).collect(),
    );
    let pr_right = Functor::new_unchecked(
        tc.cat.clone(),
        r.clone(),
        tc.objects.iter().map(|t| t.1).collect(),
        tc.morphisms.iter().map(|t| t.1).collect(),
    );
    Ok((tc, pr_left, pr_right))
}
