use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Mor, Obj};

/// A functor between finite categories, stored as explicit object and morphism maps.
#[derive(Clone)]
pub struct Functor {
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && same_cat(&self.source, &other.source)
            && same_cat(&self.target, &other.target)
    }
}

impl Eq for Functor {}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Functor")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("obj_map", &self.obj_map)
            .finish()
    }
}

pub(crate) fn same_cat(a: &Arc<FinCat>, b: &Arc<FinCat>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Functor {
    /// Builds a functor and checks that it preserves sources, targets, identities and composites.
    pub fn new(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self> {
        let f = Functor {
            source,
            target,
            obj_map,
            mor_map,
        };
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Self {
        debug_assert_eq!(obj_map.len(), source.num_objects());
        debug_assert_eq!(mor_map.len(), source.num_morphisms());
        Functor {
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    /// Builds a functor by matching names: each source object/morphism goes to the
    /// target element carrying the name produced by `rename`.
    pub fn by_names(
        source: Arc<FinCat>,
        target: Arc<FinCat>,
        rename_obj: impl Fn(&str) -> String,
        rename_mor: impl Fn(&str) -> String,
    ) -> Result<Self> {
        let obj_map = source
            .objects()
            .map(|o| target.obj(&rename_obj(source.obj_name(o))))
            .collect::<Result<Vec<_>>>()?;
        let mor_map = source
            .morphisms()
            .map(|m| target.mor(&rename_mor(source.mor_name(m))))
            .collect::<Result<Vec<_>>>()?;
        Functor::new(source, target, obj_map, mor_map)
    }

    pub fn identity(cat: &Arc<FinCat>) -> Self {
        Functor {
            source: cat.clone(),
            target: cat.clone(),
            obj_map: cat.objects().collect(),
            mor_map: cat.morphisms().collect(),
        }
    }

    /// The constant functor at `obj`.
    pub fn constant(source: &Arc<FinCat>, target: &Arc<FinCat>, obj: Obj) -> Self {
        let id = target.id(obj);
        Functor {
            source: source.clone(),
            target: target.clone(),
            obj_map: vec![obj; source.num_objects()],
            mor_map: vec![id; source.num_morphisms()],
        }
    }

    pub fn source(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCat> {
        &self.target
    }

    #[inline]
    pub fn on_obj(&self, o: Obj) -> Obj {
        self.obj_map[o.idx()]
    }

    #[inline]
    pub fn on_mor(&self, m: Mor) -> Mor {
        self.mor_map[m.idx()]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    pub fn check(&self) -> Result<()> {
        let (c, d) = (&*self.source, &*self.target);
        if self.obj_map.len() != c.num_objects() || self.mor_map.len() != c.num_morphisms() {
            return Err(Error::InvalidFunctor(
                "map sizes do not match source".into(),
            ));
        }
        if self.obj_map.iter().any(|o| o.idx() >= d.num_objects())
            || self.mor_map.iter().any(|m| m.idx() >= d.num_morphisms())
        {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        for m in c.morphisms() {
            let fm = self.on_mor(m);
            if d.src(fm) != self.on_obj(c.src(m)) || d.tgt(fm) != self.on_obj(c.tgt(m)) {
                return Err(Error::InvalidFunctor(format!(
                    "`{}` is sent to `{}` with mismatched endpoints",
                    c.mor_name(m),
                    d.mor_name(fm)
                )));
            }
        }
        for o in c.objects() {
            if self.on_mor(c.id(o)) != d.id(self.on_obj(o)) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` is not preserved",
                    c.obj_name(o)
                )));
            }
        }
        for (g, f, h) in c.composition_table() {
            if d.compose(self.on_mor(g), self.on_mor(f)) != Some(self.on_mor(h)) {
                return Err(Error::InvalidFunctor(format!(
                    "composite `{}` ∘ `{}` is not preserved",
                    c.mor_name(g),
                    c.mor_name(f)
                )));
            }
        }
        Ok(())
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Functor) -> Result<Functor> {
        if !same_cat(&first.target, &self.source) {
            return Err(Error::InvalidFunctor(
                "composite of functors with mismatched middle category".into(),
            ));
        }
        Ok(Functor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.on_obj(o)).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.on_mor(m)).collect(),
        })
    }

    /// Composite of a chain of functors given in application order.
    pub fn chain(functors: &[Functor]) -> Result<Functor> {
        let (first, rest) = functors
            .split_first()
            .ok_or_else(|| Error::InvalidFunctor("empty functor chain".into()))?;
        rest.iter().try_fold(first.clone(), |acc, f| f.after(&acc))
    }

    /// Same maps viewed between the opposite categories.
    pub fn opposite(&self, source_op: Arc<FinCat>, target_op: Arc<FinCat>) -> Functor {
        Functor {
            source: source_op,
            target: target_op,
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn is_bijective(&self) -> bool {
        let d = &*self.target;
        if self.obj_map.len() != d.num_objects() || self.mor_map.len() != d.num_morphisms() {
            return false;
        }
        let mut seen_o = vec![false; d.num_objects()];
        for &o in &self.obj_map {
            if std::mem::replace(&mut seen_o[o.idx()], true) {
                return false;
            }
        }
        let mut seen_m = vec![false; d.num_morphisms()];
        for &m in &self.mor_map {
            if std::mem::replace(&mut seen_m[m.idx()], true) {
                return false;
            }
        }
        true
    }

    /// Preimage of an object (strict fiber object set).
    pub fn objects_over(&self, b: Obj) -> impl Iterator<Item = Obj> + '_ {
        self.source.objects().filter(move |&o| self.on_obj(o) == b)
    }
}

/// A natural transformation `source ⇒ target` between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub source: Functor,
    pub target: Functor,
    pub components: Vec<Mor>,
}

impl NatTrans {
    pub fn new(source: Functor, target: Functor, components: Vec<Mor>) -> Result<Self> {
        let t = NatTrans {
            source,
            target,
            components,
        };
        t.check()?;
        Ok(t)
    }

    pub fn check(&self) -> Result<()> {
        let (f, g) = (&self.source, &self.target);
        if !same_cat(f.source(), g.source()) || !same_cat(f.target(), g.target()) {
            return Err(Error::InvalidFunctor(
                "natural transformation between non-parallel functors".into(),
            ));
        }
        if !is_natural(f, g, &self.components) {
            return Err(Error::InvalidFunctor("components are not natural".into()));
        }
        Ok(())
    }
}

/// Checks that `components` define a natural transformation `f ⇒ g`.
pub fn is_natural(f: &Functor, g: &Functor, components: &[Mor]) -> bool {
    let (c, d) = (f.source(), f.target());
    if components.len() != c.num_objects() {
        return false;
    }
    for x in c.objects() {
        let a = components[x.idx()];
        if a.idx() >= d.num_morphisms() || d.src(a) != f.on_obj(x) || d.tgt(a) != g.on_obj(x) {
            return false;
        }
    }
    c.non_identities().all(|m| {
        let (x, y) = (c.src(m), c.tgt(m));
        d.compose(g.on_mor(m), components[x.idx()]) == d.compose(components[y.idx()], f.on_mor(m))
    })
}

/// Searches for one natural transformation `f ⇒ g`, lexicographically least by component index.
pub fn find_nat_trans(f: &Functor, g: &Functor) -> Option<Vec<Mor>> {
    let mut found = None;
    search_nat_trans(f, g, &mut |comps| {
        found = Some(comps.to_vec());
        false
    });
    found
}

/// Enumerates natural transformations `f ⇒ g`; stops early once `visit` returns false.
pub fn search_nat_trans(f: &Functor, g: &Functor, visit: &mut dyn FnMut(&[Mor]) -> bool) {
    let c = f.source().clone();
    let d = f.target().clone();
    let n = c.num_objects();
    // morphisms whose endpoints are both decided once object `i` is decided
    let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for m in c.non_identities() {
        let last = c.src(m).idx().max(c.tgt(m).idx());
        checks[last].push(m);
    }
    let candidates: Vec<&[Mor]> = c
        .objects()
        .map(|x| d.hom(f.on_obj(x), g.on_obj(x)))
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut comps = vec![Mor(0); n];
    fn rec(
        i: usize,
        c: &FinCat,
        d: &FinCat,
        f: &Functor,
        g: &Functor,
        candidates: &[&[Mor]],
        checks: &[Vec<Mor>],
        comps: &mut Vec<Mor>,
        visit: &mut dyn FnMut(&[Mor]) -> bool,
    ) -> bool {
        if i == comps.len() {
            return visit(comps);
        }
        for &a in candidates[i] {
            comps[i] = a;
            let ok = checks[i].iter().all(|&m| {
                let (x, y) = (c.src(m), c.tgt(m));
                d.compose(g.on_mor(m), comps[x.idx()]) == d.compose(comps[y.idx()], f.on_mor(m))
            });
            if ok && !rec(i + 1, c, d, f, g, candidates, checks, comps, visit) {
                return false;
            }
        }
        true
    }
    rec(0, &c, &d, f, g, &candidates, &checks, &mut comps, visit);
}

/// Enumerates all functors `c → d` by backtracking with composite propagation.
///
/// Returns `(object map, morphism map)` pairs in a deterministic order; fails
/// once more than `limit` functors have been produced, or once the search has
/// tried `STEPS_PER_FUNCTOR` assignments per allowed functor without finishing.
pub fn enumerate_functors(
    c: &FinCat,
    d: &FinCat,
    limit: usize,
) -> Result<Vec<(Vec<Obj>, Vec<Mor>)>> {
    let mut out = Vec::new();
    let mut exceeded = false;
    let mut search = FunctorSearch::new(c, d);
    search.steps_left = limit.saturating_mul(STEPS_PER_FUNCTOR);
    search.run(&mut |om, mm| {
        if out.len() >= limit {
            exceeded = true;
            return false;
        }
        out.push((om.to_vec(), mm.to_vec()));
        true
    });
    if exceeded || search.steps_left == 0 {
        return Err(Error::SizeBudgetExceeded {
            what: "functor enumeration".into(),
            limit,
        });
    }
    Ok(out)
}

const UNSET: u32 = u32::MAX;

/// Backtracking can wander for a long time between hits, so the search is
/// also bounded by assignments tried.
const STEPS_PER_FUNCTOR: usize = 64;

struct FunctorSearch<'a> {
    c: &'a FinCat,
    d: &'a FinCat,
    obj: Vec<Obj>,
    mor: Vec<Mor>,
    trail: Vec<Slot>,
    // for each m: pairs (f, m∘f) and (g, g∘m)
    right: Vec<Vec<(Mor, Mor)>>,
    left: Vec<Vec<(Mor, Mor)>>,
    order: Vec<Mor>,
    steps_left: usize,
}

#[derive(Clone, Copy)]
enum Slot {
    O(usize),
    M(usize),
}

impl<'a> FunctorSearch<'a> {
    fn new(c: &'a FinCat, d: &'a FinCat) -> Self {
        let mut right = vec![Vec::new(); c.num_morphisms()];
        let mut left = vec![Vec::new(); c.num_morphisms()];
        for (g, f, h) in c.composition_table() {
            if c.is_identity(g) || c.is_identity(f) {
                continue;
            }
            right[g.idx()].push((f, h));
            left[f.idx()].push((g, h));
        }
        for v in right.iter_mut().chain(left.iter_mut()) {
            v.sort();
        }
        FunctorSearch {
            c,
            d,
            obj: vec![Obj(UNSET); c.num_objects()],
            mor: vec![Mor(UNSET); c.num_morphisms()],
            trail: Vec::new(),
            right,
            left,
            order: c.non_identities().collect(),
            steps_left: usize::MAX,
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Slot::O(i) => self.obj[i] = Obj(UNSET),
                Slot::M(i) => self.mor[i] = Mor(UNSET),
            }
        }
    }

    fn set_obj(&mut self, o: Obj, v: Obj) -> bool {
        let cur = self.obj[o.idx()];
        if cur.0 != UNSET {
            return cur == v;
        }
        self.obj[o.idx()] = v;
        self.trail.push(Slot::O(o.idx()));
        let id = self.c.id(o);
        let dv = self.d.id(v);
        self.set_mor(id, dv)
    }

    fn set_mor(&mut self, m: Mor, v: Mor) -> bool {
        let mut stack = vec![(m, v)];
        while let Some((m, v)) = stack.pop() {
            let cur = self.mor[m.idx()];
            if cur.0 != UNSET {
                if cur != v {
                    return false;
                }
                continue;
            }
            self.mor[m.idx()] = v;
            self.trail.push(Slot::M(m.idx()));
            for (o, dv) in [
                (self.c.src(m), self.d.src(v)),
                (self.c.tgt(m), self.d.tgt(v)),
            ] {
                let cur = self.obj[o.idx()];
                if cur.0 != UNSET {
                    if cur != dv {
                        return false;
                    }
                } else {
                    self.obj[o.idx()] = dv;
                    self.trail.push(Slot::O(o.idx()));
                    stack.push((self.c.id(o), self.d.id(dv)));
                }
            }
            for i in 0..self.right[m.idx()].len() {
                let (f, h) = self.right[m.idx()][i];
                let fv = self.mor[f.idx()];
                if fv.0 != UNSET {
                    match self.d.compose(v, fv) {
                        Some(hv) => stack.push((h, hv)),
                        None => return false,
                    }
                }
            }
            for i in 0..self.left[m.idx()].len() {
                let (g, h) = self.left[m.idx()][i];
                let gv = self.mor[g.idx()];
                if gv.0 != UNSET {
                    match self.d.compose(gv, v) {
                        Some(hv) => stack.push((h, hv)),
                        None => return false,
                    }
                }
            }
        }
        true
    }

    fn step(&mut self) -> bool {
        self.steps_left = self.steps_left.saturating_sub(1);
        self.steps_left > 0
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool) {
        self.rec(0, visit);
    }

    fn rec(&mut self, pos: usize, visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool) -> bool {
        let mut pos = pos;
        while pos < self.order.len() && self.mor[self.order[pos].idx()].0 != UNSET {
            pos += 1;
        }
        if pos == self.order.len() {
            return self.rec_objects(0, visit);
        }
        let m = self.order[pos];
        let (s, t) = (self.obj[self.c.src(m).idx()], self.obj[self.c.tgt(m).idx()]);
        let cands: Vec<Mor> = match (s.0 != UNSET, t.0 != UNSET) {
            (true, true) => self.d.hom(s, t).to_vec(),
            (true, false) => self.d.out_of(s).to_vec(),
            (false, true) => self.d.incoming(t).to_vec(),
            (false, false) => self.d.morphisms().collect(),
        };
        for v in cands {
            if !self.step() {
                return false;
            }
            let mark = self.trail.len();
            if self.set_mor(m, v) && !self.rec(pos + 1, visit) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }

    fn rec_objects(&mut self, start: usize, visit: &mut dyn FnMut(&[Obj], &[Mor]) -> bool) -> bool {
        let next = (start..self.obj.len()).find(|&i| self.obj[i].0 == UNSET);
        let Some(i) = next else {
            return visit(&self.obj, &self.mor);
        };
        for v in 0..self.d.num_objects() as u32 {
            if !self.step() {
                return false;
            }
            let mark = self.trail.len();
            if self.set_obj(Obj(i as u32), Obj(v)) && !self.rec_objects(i + 1, visit) {
                self.undo_to(mark);
                return false;
            }
            self.undo_to(mark);
        }
        true
    }
}

/// A generating set of morphisms: first every non-identity morphism that is not
/// a composite of two non-identities, then, greedily in index order, whatever
/// is still not generated.
pub fn generating_morphisms(c: &FinCat) -> Vec<Mor> {
    let mut decomposable = vec![false; c.num_morphisms()];
    for (g, f, h) in c.composition_table() {
        if !c.is_identity(g) && !c.is_identity(f) {
            decomposable[h.idx()] = true;
        }
    }
    let mut generated = vec![false; c.num_morphisms()];
    for o in c.objects() {
        generated[c.id(o).idx()] = true;
    }
    let mut gens = Vec::new();
    let irreducible: Vec<Mor> = c
        .non_identities()
        .filter(|m| !decomposable[m.idx()])
        .collect();
    for m in irreducible.into_iter().chain(c.morphisms()) {
        if generated[m.idx()] {
            continue;
        }
        gens.push(m);
        generated[m.idx()] = true;
        // close under composition with what is already generated
        let mut frontier = vec![m];
        while let Some(x) = frontier.pop() {
            let mut fresh = Vec::new();
            for &g in c.out_of(c.tgt(x)) {
                if generated[g.idx()] {
                    fresh.push(c.compose(g, x).unwrap());
                }
            }
            for &f in c.incoming(c.src(x)) {
                if generated[f.idx()] {
                    fresh.push(c.compose(x, f).unwrap());
                }
            }
            for h in fresh {
                if !generated[h.idx()] {
                    generated[h.idx()] = true;
                    frontier.push(h);
                }
            }
        }
    }
    gens.sort();
    gens
}

/// Canonical name of a functor, used as the object name inside functor categories.
///
/// Lists the images of the source's generating morphisms; object images are
/// prepended when some object is not touched by a generator.
pub fn functor_name(
    source: &FinCat,
    target: &FinCat,
    generators: &[Mor],
    obj_map: &[Obj],
    mor_map: &[Mor],
) -> String {
    let mut touched = vec![false; source.num_objects()];
    for &g in generators {
        touched[source.src(g).idx()] = true;
        touched[source.tgt(g).idx()] = true;
    }
    let mors = generators
        .iter()
        .map(|g| target.mor_name(mor_map[g.idx()]))
        .collect::<Vec<_>>()
        .join(",");
    if touched.iter().all(|&t| t) {
        format!("<{mors}>")
    } else {
        let objs = obj_map
            .iter()
            .map(|&o| target.obj_name(o))
            .collect::<Vec<_>>()
            .join(",");
        format!("<{objs}|{mors}>")
    }
}

/// Canonical name of a natural transformation between named functors.
pub fn nat_trans_name(target: &FinCat, components: &[Mor], from: &str, to: &str) -> String {
    let comps = components
        .iter()
        .map(|&m| target.mor_name(m))
        .collect::<Vec<_>>()
        .join(",");
    format!("[{comps}]:{from}=>{to}")
}
