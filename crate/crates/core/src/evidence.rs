//! Name-based encoding of categories, functors and natural transformations, so
//! that certificates can be checked from their JSON form alone.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::functor::same_cat;
use crate::fincat::{
    is_natural, to_raw, validate_category, Direction, FinCat, Functor, Mor, NatStep, RawCategory,
};
use crate::limits::Limits;

/// Version tag written into every JSON report.
pub const SCHEMA_VERSION: u32 = 1;

/// A functor by names: each source morphism goes to the named target morphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctorJson {
    pub source: String,
    pub target: String,
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

/// One zigzag step: a natural transformation into (forward) or out of
/// (backward) the functor `to`, with components indexed by source object.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NatStepJson {
    pub direction: Direction,
    pub to: FunctorJson,
    pub components: BTreeMap<String, String>,
}

/// Interns the categories mentioned by a report under short identifiers.
#[derive(Default)]
pub struct CatTable {
    cats: Vec<Arc<FinCat>>,
}

impl CatTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, c: &Arc<FinCat>) -> String {
        let i = match self.cats.iter().position(|d| Arc::ptr_eq(c, d)) {
            Some(i) => i,
            None => match self.cats.iter().position(|d| same_cat(c, d)) {
                Some(i) => i,
                None => {
                    self.cats.push(c.clone());
                    self.cats.len() - 1
                }
            },
        };
        cat_id(i)
    }

    pub fn functor(&mut self, f: &Functor) -> FunctorJson {
        let (s, t) = (f.source(), f.target());
        FunctorJson {
            source: self.intern(s),
            target: self.intern(t),
            objects: s
                .objects()
                .map(|o| {
                    (
                        s.obj_name(o).to_string(),
                        t.obj_name(f.on_obj(o)).to_string(),
                    )
                })
                .collect(),
            morphisms: s
                .morphisms()
                .map(|m| {
                    (
                        s.mor_name(m).to_string(),
                        t.mor_name(f.on_mor(m)).to_string(),
                    )
                })
                .collect(),
        }
    }

    pub fn steps(&mut self, steps: &[NatStep]) -> Vec<NatStepJson> {
        steps
            .iter()
            .map(|st| {
                let (s, t) = (st.functor.source(), st.functor.target());
                NatStepJson {
                    direction: st.direction,
                    to: self.functor(&st.functor),
                    components: s
                        .objects()
                        .map(|o| {
                            (
                                s.obj_name(o).to_string(),
                                t.mor_name(st.components[o.idx()]).to_string(),
                            )
                        })
                        .collect(),
                }
            })
            .collect()
    }

    /// Errors when writing out the interned categories would list more
    /// composites than the simplex budget allows; composable pairs are the
    /// 2-simplices of the nerve.
    pub fn check_size(&self, limits: &Limits) -> Result<()> {
        let pairs = self.cats.iter().map(|c| c.num_composable_pairs()).sum();
        limits.check_simplices("embedded category", pairs)
    }

    pub fn into_map(self) -> BTreeMap<String, RawCategory> {
        self.cats
            .iter()
            .enumerate()
            .map(|(i, c)| (cat_id(i), to_raw(c)))
            .collect()
    }
}

fn cat_id(i: usize) -> String {
    format!("C{i:03}")
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Verification(msg.into())
}

/// Rebuilds the categories of a serialized report.
pub struct CatStore {
    cats: BTreeMap<String, Arc<FinCat>>,
}

impl CatStore {
    pub fn new(raw: &BTreeMap<String, RawCategory>) -> Result<Self> {
        let cats = raw
            .iter()
            .map(|(k, r)| Ok((k.clone(), Arc::new(validate_category(r)?))))
            .collect::<Result<_>>()?;
        Ok(CatStore { cats })
    }

    pub fn cat(&self, id: &str) -> Result<Arc<FinCat>> {
        self.cats
            .get(id)
            .cloned()
            .ok_or_else(|| bad(format!("unknown category `{id}`")))
    }

    pub fn functor(&self, j: &FunctorJson) -> Result<Functor> {
        let (s, t) = (self.cat(&j.source)?, self.cat(&j.target)?);
        if j.morphisms.len() != s.num_morphisms() || j.objects.len() != s.num_objects() {
            return Err(bad("functor does not list every source element"));
        }
        let f = Functor::by_names(
            s.clone(),
            t,
            |o| j.objects.get(o).cloned().unwrap_or_default(),
            |m| j.morphisms.get(m).cloned().unwrap_or_default(),
        )
        .map_err(|e| bad(format!("functor: {e}")))?;
        Ok(f)
    }

    /// Decodes a zigzag starting at `start`, checking every step's naturality.
    pub fn steps(&self, start: &Functor, j: &[NatStepJson]) -> Result<Vec<NatStep>> {
        let mut prev = start.clone();
        let mut out = Vec::with_capacity(j.len());
        for st in j {
            let to = self.functor(&st.to)?;
            if !same_cat(to.source(), prev.source()) || !same_cat(to.target(), prev.target()) {
                return Err(bad("zigzag step between non-parallel functors"));
            }
            let (s, t) = (to.source(), to.target());
            let components =
                s.objects()
                    .map(|o| {
                        let name = st.components.get(s.obj_name(o)).ok_or_else(|| {
                            bad(format!("missing component at `{}`", s.obj_name(o)))
                        })?;
                        t.mor(name).map_err(|e| bad(e.to_string()))
                    })
                    .collect::<Result<Vec<Mor>>>()?;
            let step = NatStep {
                functor: to,
                direction: st.direction,
                components,
            };
            check_step(&prev, &step)?;
            prev = step.functor.clone();
            out.push(step);
        }
        Ok(out)
    }
}

/// A category in input format with morphisms listed by name, so that two
/// categories differing only in the internal order of morphisms compare equal.
pub fn canonical_raw(c: &FinCat) -> RawCategory {
    to_raw(c)
}

/// Equality of functors up to renumbering of morphisms: same categories by
/// names and the same name maps.
pub fn same_functor(f: &Functor, g: &Functor) -> bool {
    if f == g {
        return true;
    }
    let names = |h: &Functor| {
        let (s, t) = (h.source(), h.target());
        let mut mors: Vec<(&str, &str)> = s
            .morphisms()
            .map(|m| (s.mor_name(m), t.mor_name(h.on_mor(m))))
            .collect();
        mors.sort();
        mors.into_iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect::<Vec<_>>()
    };
    canonical_raw(f.source()) == canonical_raw(g.source())
        && canonical_raw(f.target()) == canonical_raw(g.target())
        && names(f) == names(g)
}

/// Checks that a zigzag step is a natural transformation in its stated direction.
pub fn check_step(prev: &Functor, step: &NatStep) -> Result<()> {
    let ok = match step.direction {
        Direction::Forward => is_natural(prev, &step.functor, &step.components),
        Direction::Backward => is_natural(&step.functor, prev, &step.components),
    };
    if ok {
        Ok(())
    } else {
        Err(bad("zigzag step is not a natural transformation"))
    }
}

/// Checks a whole zigzag from `start` and returns its final functor.
pub fn check_zigzag(start: &Functor, steps: &[NatStep]) -> Result<Functor> {
    let mut prev = start;
    for st in steps {
        if !same_cat(st.functor.source(), prev.source())
            || !same_cat(st.functor.target(), prev.target())
        {
            return Err(bad("zigzag step between non-parallel functors"));
        }
        check_step(prev, st)?;
        prev = &st.functor;
    }
    Ok(prev.clone())
}
