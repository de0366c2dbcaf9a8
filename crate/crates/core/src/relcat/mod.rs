//! Relative categories, zigzag types and shapes, relative functor categories
//! and zigzag categories.

mod relfun;
mod zigzag;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::{validate_category, FinCat, FinCatBuilder, Functor, Mor, RawCategory};

pub(crate) use relfun::path_images;
pub use relfun::{
    insertion_functor, precompose_along, rel_functor_category, weq_rel_fun, zigzag_category,
    zigzag_functors, RelFun,
};
pub use zigzag::{zigzag_shape, ShapeMap, ZigzagType};

/// A finite category with a wide subcategory of weak equivalences.
#[derive(Clone, Debug)]
pub struct RelCat {
    und: Arc<FinCat>,
    weq: Vec<bool>,
    weq_cat: Arc<FinCat>,
    weq_to_und: Vec<Mor>,
    und_to_weq: Vec<Option<Mor>>,
}

impl PartialEq for RelCat {
    fn eq(&self, other: &Self) -> bool {
        self.weq == other.weq && self.und == other.und
    }
}

impl Eq for RelCat {}

/// Closes a set of generators under composition and identities.
pub fn make_relative(c: Arc<FinCat>, generators: &[Mor]) -> Result<RelCat> {
    let mut weq = vec![false; c.num_morphisms()];
    for o in c.objects() {
        weq[c.id(o).idx()] = true;
    }
    for &g in generators {
        if g.idx() >= c.num_morphisms() {
            return Err(Error::UnknownMorphism(format!("#{}", g.0)));
        }
        weq[g.idx()] = true;
    }
    let mut frontier: Vec<Mor> = c.morphisms().filter(|m| weq[m.idx()]).collect();
    while let Some(f) = frontier.pop() {
        let mut fresh = Vec::new();
        for &g in c.out_of(c.tgt(f)) {
            if weq[g.idx()] {
                fresh.push(c.compose(g, f).unwrap());
            }
        }
        for &e in c.incoming(c.src(f)) {
            if weq[e.idx()] {
                fresh.push(c.compose(f, e).unwrap());
            }
        }
        for h in fresh {
            if !weq[h.idx()] {
                weq[h.idx()] = true;
                frontier.push(h);
            }
        }
    }
    Ok(RelCat::from_flags(c, weq))
}

impl RelCat {
    /// Builds a relative category from a weq flag per morphism, which must already
    /// contain the identities and be closed under composition.
    pub(crate) fn from_flags(und: Arc<FinCat>, weq: Vec<bool>) -> RelCat {
        let mut b = FinCatBuilder::new();
        for o in und.objects() {
            b.add_object(und.obj_name(o)).unwrap();
        }
        let mut und_to_weq = vec![None; und.num_morphisms()];
        let mut weq_to_und = Vec::new();
        for m in und.morphisms().filter(|m| weq[m.idx()]) {
            let w = b
                .add_morphism(und.mor_name(m), und.src(m), und.tgt(m))
                .unwrap();
            und_to_weq[m.idx()] = Some(w);
            weq_to_und.push(m);
        }
        for o in und.objects() {
            b.set_identity(
                o,
                und_to_weq[und.id(o).idx()].expect("identities are weak equivalences"),
            );
        }
        for (g, f, h) in und.composition_table() {
            if let (Some(g), Some(f)) = (und_to_weq[g.idx()], und_to_weq[f.idx()]) {
                let h = und_to_weq[h.idx()].expect("weak equivalences compose");
                b.set_composite(g, f, h).unwrap();
            }
        }
        let weq_cat = Arc::new(b.build_trusted().expect("wide subcategory"));
        RelCat {
            und,
            weq,
            weq_cat,
            weq_to_und,
            und_to_weq,
        }
    }

    /// Parses and validates the JSON input format; `weq_generators` defaults to none.
    pub fn from_raw(raw: &RawCategory) -> Result<RelCat> {
        let c = Arc::new(validate_category(raw)?);
        let gens = raw
            .weq_generators
            .iter()
            .flatten()
            .map(|g| c.mor(g))
            .collect::<Result<Vec<_>>>()?;
        make_relative(c, &gens)
    }

    pub fn from_json(text: &str) -> Result<RelCat> {
        RelCat::from_raw(&RawCategory::from_json(text)?)
    }

    /// The relative category where every morphism is a weak equivalence.
    pub fn all_weq(c: Arc<FinCat>) -> RelCat {
        let n = c.num_morphisms();
        RelCat::from_flags(c, vec![true; n])
    }

    /// The relative category whose weak equivalences are the identities.
    pub fn minimal(c: Arc<FinCat>) -> RelCat {
        let mut weq = vec![false; c.num_morphisms()];
        for o in c.objects() {
            weq[c.id(o).idx()] = true;
        }
        RelCat::from_flags(c, weq)
    }

    pub fn und(&self) -> &Arc<FinCat> {
        &self.und
    }

    #[inline]
    pub fn is_weq(&self, m: Mor) -> bool {
        self.weq[m.idx()]
    }

    pub fn weq_flags(&self) -> &[bool] {
        &self.weq
    }

    /// Weak equivalences that are not identities, in index order.
    pub fn weq_generators(&self) -> Vec<Mor> {
        self.und
            .non_identities()
            .filter(|&m| self.weq[m.idx()])
            .collect()
    }

    /// `weq C`, the wide subcategory of weak equivalences.
    pub fn weq_subcategory(&self) -> &Arc<FinCat> {
        &self.weq_cat
    }

    /// The inclusion `weq C → und C`.
    pub fn weq_inclusion(&self) -> Functor {
        Functor::new_unchecked(
            self.weq_cat.clone(),
            self.und.clone(),
            self.und.objects().collect(),
            self.weq_to_und.clone(),
        )
    }

    /// Index in `weq C` of a weak equivalence of `und C`.
    pub fn to_weq(&self, m: Mor) -> Option<Mor> {
        self.und_to_weq[m.idx()]
    }

    /// Index in `und C` of a morphism of `weq C`.
    pub fn from_weq(&self, w: Mor) -> Mor {
        self.weq_to_und[w.idx()]
    }

    /// The same functor with its target restricted to `weq C`; every morphism in
    /// its image must be a weak equivalence.
    pub fn corestrict(&self, f: &Functor) -> Result<Functor> {
        if !crate::fincat::functor::same_cat(f.target(), &self.und) {
            return Err(Error::ShapeMismatch(
                "functor does not land in this category".into(),
            ));
        }
        let mor_map = f
            .mor_map()
            .iter()
            .map(|&m| {
                self.to_weq(m).ok_or_else(|| {
                    Error::InvalidFunctor(format!(
                        "`{}` is not a weak equivalence",
                        self.und.mor_name(m)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Functor::new_unchecked(
            f.source().clone(),
            self.weq_cat.clone(),
            f.obj_map().to_vec(),
            mor_map,
        ))
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut raw = crate::fincat::to_raw(&self.und);
        raw.weq_generators = Some(
            self.weq_generators()
                .into_iter()
                .map(|m| self.und.mor_name(m).to_string())
                .collect(),
        );
        raw
    }
}

/// A composable pair violating two-out-of-three, as `(f, g, g∘f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoOfThreeWitness {
    pub f: Mor,
    pub g: Mor,
    pub gf: Mor,
}

/// Checks the two-out-of-three property; returns the first violating pair in
/// index order of `(f, g)`.
pub fn two_out_of_three(r: &RelCat) -> Option<TwoOfThreeWitness> {
    let c = r.und();
    for f in c.morphisms() {
        for &g in c.out_of(c.tgt(f)) {
            let gf = c.compose(g, f).unwrap();
            let count = [f, g, gf].iter().filter(|&&m| r.is_weq(m)).count();
            if count == 2 {
                return Some(TwoOfThreeWitness { f, g, gf });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests;
