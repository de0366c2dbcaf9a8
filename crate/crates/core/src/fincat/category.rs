use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::util::FastMap;

/// Index of an object in a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Obj(pub u32);

/// Index of a morphism in a [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mor(pub u32);

impl Obj {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A finite category given by an explicit, total composition table.
#[derive(Clone)]
pub struct FinCat {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    ident: Vec<Mor>,
    comp: FastMap<(Mor, Mor), Mor>,
    hom: FastMap<(Obj, Obj), Vec<Mor>>,
    out: Vec<Vec<Mor>>,
    inc: Vec<Vec<Mor>>,
    obj_by_name: HashMap<String, Obj>,
    mor_by_name: HashMap<String, Mor>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self, other) {
            return true;
        }
        self.obj_names == other.obj_names
            && self.mor_names == other.mor_names
            && self.src == other.src
            && self.tgt == other.tgt
            && self.ident == other.ident
            && self.comp == other.comp
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.obj_names.len())
            .field("morphisms", &self.mor_names.len())
            .finish()
    }
}

impl FinCat {
    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + '_ {
        (0..self.obj_names.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + '_ {
        (0..self.mor_names.len() as u32).map(Mor)
    }

    pub fn non_identities(&self) -> impl Iterator<Item = Mor> + '_ {
        self.morphisms().filter(move |&m| !self.is_identity(m))
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.obj_names[o.idx()]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.mor_names[m.idx()]
    }

    pub fn obj_names(&self) -> &[String] {
        &self.obj_names
    }

    pub fn mor_names(&self) -> &[String] {
        &self.mor_names
    }

    pub fn find_obj(&self, name: &str) -> Option<Obj> {
        self.obj_by_name.get(name).copied()
    }

    pub fn find_mor(&self, name: &str) -> Option<Mor> {
        self.mor_by_name.get(name).copied()
    }

    pub fn obj(&self, name: &str) -> Result<Obj> {
        self.find_obj(name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn mor(&self, name: &str) -> Result<Mor> {
        self.find_mor(name)
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    #[inline]
    pub fn src(&self, m: Mor) -> Obj {
        self.src[m.idx()]
    }

    #[inline]
    pub fn tgt(&self, m: Mor) -> Obj {
        self.tgt[m.idx()]
    }

    #[inline]
    pub fn id(&self, o: Obj) -> Mor {
        self.ident[o.idx()]
    }

    #[inline]
    pub fn is_identity(&self, m: Mor) -> bool {
        self.src(m) == self.tgt(m) && self.ident[self.src(m).idx()] == m
    }

    /// `g ∘ f`, defined exactly when `tgt(f) = src(g)`.
    #[inline]
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.comp.get(&(g, f)).copied()
    }

    /// Composite of a path given in diagrammatic order (`path[0]` first).
    pub fn compose_path(&self, path: &[Mor]) -> Option<Mor> {
        let (&first, rest) = path.split_first()?;
        rest.iter().try_fold(first, |acc, &m| self.compose(m, acc))
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        self.hom.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn out_of(&self, x: Obj) -> &[Mor] {
        &self.out[x.idx()]
    }

    pub fn incoming(&self, x: Obj) -> &[Mor] {
        &self.inc[x.idx()]
    }

    pub fn composition_table(&self) -> impl Iterator<Item = (Mor, Mor, Mor)> + '_ {
        self.comp.iter().map(|(&(g, f), &h)| (g, f, h))
    }

    pub fn num_composable_pairs(&self) -> usize {
        self.comp.len()
    }

    /// True when every hom-set has at most one element.
    pub fn is_thin(&self) -> bool {
        self.hom.values().all(|v| v.len() <= 1)
    }

    pub fn is_empty(&self) -> bool {
        self.obj_names.is_empty()
    }

    /// Exhaustively checks composability, identity and associativity laws.
    pub fn check_laws(&self) -> Result<()> {
        for (&(g, f), &h) in &self.comp {
            if self.tgt(f) != self.src(g)
                || self.src(h) != self.src(f)
                || self.tgt(h) != self.tgt(g)
            {
                return Err(Error::BadComposite {
                    g: self.mor_name(g).into(),
                    f: self.mor_name(f).into(),
                    gf: self.mor_name(h).into(),
                });
            }
        }
        for x in self.objects() {
            for &f in self.incoming(x) {
                for &g in self.out_of(x) {
                    if self.compose(g, f).is_none() {
                        return Err(Error::MissingComposite {
                            g: self.mor_name(g).into(),
                            f: self.mor_name(f).into(),
                        });
                    }
                }
            }
        }
        for o in self.objects() {
            let i = self.id(o);
            if self.src(i) != o || self.tgt(i) != o {
                return Err(Error::BadIdentity(format!(
                    "`{}` is not an endomorphism of `{}`",
                    self.mor_name(i),
                    self.obj_name(o)
                )));
            }
        }
        for f in self.morphisms() {
            let left = self.compose(self.id(self.tgt(f)), f);
            let right = self.compose(f, self.id(self.src(f)));
            if left != Some(f) || right != Some(f) {
                return Err(Error::BadIdentity(format!(
                    "identity law fails at `{}`",
                    self.mor_name(f)
                )));
            }
        }
        for f in self.morphisms() {
            for &g in self.out_of(self.tgt(f)) {
                let gf = self.comp[&(g, f)];
                for &h in self.out_of(self.tgt(g)) {
                    let hg = self.comp[&(h, g)];
                    if self.comp[&(h, gf)] != self.comp[&(hg, f)] {
                        return Err(Error::NonAssociative {
                            h: self.mor_name(h).into(),
                            g: self.mor_name(g).into(),
                            f: self.mor_name(f).into(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Connected components of the underlying graph, as a component id per object.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut uf = crate::util::UnionFind::new(self.num_objects());
        for m in self.morphisms() {
            uf.union(self.src(m).idx(), self.tgt(m).idx());
        }
        let mut label = vec![usize::MAX; self.num_objects()];
        let mut next = 0;
        let mut comp = vec![0; self.num_objects()];
        for o in 0..self.num_objects() {
            let r = uf.find(o);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            comp[o] = label[r];
        }
        (next, comp)
    }
}

/// Incremental construction of a [`FinCat`].
#[derive(Default)]
pub struct FinCatBuilder {
    obj_names: Vec<String>,
    mor_names: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    ident: Vec<Option<Mor>>,
    comp: FastMap<(Mor, Mor), Mor>,
    obj_by_name: HashMap<String, Obj>,
    mor_by_name: HashMap<String, Mor>,
}

impl FinCatBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn num_objects(&self) -> usize {
        self.obj_names.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.mor_names.len()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> Result<Obj> {
        let name = name.into();
        if self.obj_by_name.contains_key(&name) {
            return Err(Error::Duplicate(name));
        }
        let o = Obj(self.obj_names.len() as u32);
        self.obj_by_name.insert(name.clone(), o);
        self.obj_names.push(name);
        self.ident.push(None);
        Ok(o)
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, src: Obj, tgt: Obj) -> Result<Mor> {
        let name = name.into();
        if self.mor_by_name.contains_key(&name) {
            return Err(Error::Duplicate(name));
        }
        let m = Mor(self.mor_names.len() as u32);
        self.mor_by_name.insert(name.clone(), m);
        self.mor_names.push(name);
        self.src.push(src);
        self.tgt.push(tgt);
        Ok(m)
    }

    /// Adds a morphism and declares it the identity of `obj`.
    pub fn add_identity(&mut self, obj: Obj, name: impl Into<String>) -> Result<Mor> {
        let m = self.add_morphism(name, obj, obj)?;
        self.ident[obj.idx()] = Some(m);
        Ok(m)
    }

    pub fn set_identity(&mut self, obj: Obj, m: Mor) {
        self.ident[obj.idx()] = Some(m);
    }

    pub fn identity_of(&self, obj: Obj) -> Option<Mor> {
        self.ident[obj.idx()]
    }

    pub fn find_obj(&self, name: &str) -> Option<Obj> {
        self.obj_by_name.get(name).copied()
    }

    pub fn find_mor(&self, name: &str) -> Option<Mor> {
        self.mor_by_name.get(name).copied()
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.src[m.idx()]
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.tgt[m.idx()]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.mor_names[m.idx()]
    }

    /// Records `g ∘ f = gf`; a conflicting earlier entry is an error.
    pub fn set_composite(&mut self, g: Mor, f: Mor, gf: Mor) -> Result<()> {
        if self.tgt(f) != self.src(g) || self.src(gf) != self.src(f) || self.tgt(gf) != self.tgt(g)
        {
            return Err(Error::BadComposite {
                g: self.mor_names[g.idx()].clone(),
                f: self.mor_names[f.idx()].clone(),
                gf: self.mor_names[gf.idx()].clone(),
            });
        }
        match self.comp.insert((g, f), gf) {
            Some(prev) if prev != gf => Err(Error::BadComposite {
                g: self.mor_names[g.idx()].clone(),
                f: self.mor_names[f.idx()].clone(),
                gf: self.mor_names[gf.idx()].clone(),
            }),
            _ => Ok(()),
        }
    }

    /// Fills in `id ∘ f = f = f ∘ id` wherever the table has no entry yet.
    pub fn fill_identity_composites(&mut self) -> Result<()> {
        for i in 0..self.mor_names.len() {
            let f = Mor(i as u32);
            let (s, t) = (self.src(f), self.tgt(f));
            let (Some(is), Some(it)) = (self.ident[s.idx()], self.ident[t.idx()]) else {
                return Err(Error::BadIdentity(format!(
                    "object of `{}` has no identity",
                    self.mor_names[i]
                )));
            };
            self.comp.entry((it, f)).or_insert(f);
            self.comp.entry((f, is)).or_insert(f);
        }
        Ok(())
    }

    fn assemble(self) -> Result<FinCat> {
        let n = self.obj_names.len();
        let mut ident = Vec::with_capacity(n);
        for (o, id) in self.ident.iter().enumerate() {
            match id {
                Some(m) => ident.push(*m),
                None => {
                    return Err(Error::BadIdentity(format!(
                        "object `{}` has no identity",
                        self.obj_names[o]
                    )))
                }
            }
        }
        let mut hom: FastMap<(Obj, Obj), Vec<Mor>> = FastMap::default();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for (i, (&s, &t)) in self.src.iter().zip(&self.tgt).enumerate() {
            let m = Mor(i as u32);
            hom.entry((s, t)).or_default().push(m);
            out[s.idx()].push(m);
            inc[t.idx()].push(m);
        }
        Ok(FinCat {
            obj_names: self.obj_names,
            mor_names: self.mor_names,
            src: self.src,
            tgt: self.tgt,
            ident,
            comp: self.comp,
            hom,
            out,
            inc,
            obj_by_name: self.obj_by_name,
            mor_by_name: self.mor_by_name,
        })
    }

    /// Builds and exhaustively validates all category laws.
    pub fn build(self) -> Result<FinCat> {
        let cat = self.assemble()?;
        cat.check_laws()?;
        Ok(cat)
    }

    /// Builds a category produced by a construction that is correct by design;
    /// checks totality of composition but not associativity.
    pub fn build_trusted(self) -> Result<FinCat> {
        let cat = self.assemble()?;
        let expected: usize = cat
            .objects()
            .map(|x| cat.incoming(x).len() * cat.out_of(x).len())
            .sum();
        if expected != cat.comp.len() {
            cat.check_laws()?;
        }
        Ok(cat)
    }
}
