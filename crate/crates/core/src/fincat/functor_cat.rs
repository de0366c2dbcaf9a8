use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::functor::{
    functor_name, generating_morphisms, nat_trans_name, search_nat_trans,
};
use crate::fincat::{enumerate_functors, FinCat, FinCatBuilder, Functor, Mor, Obj};
use crate::limits::Limits;
use crate::util::{par_map, FastMap};

/// A (possibly restricted) functor category together with the functor and
/// natural-transformation data behind each of its objects and morphisms.
#[derive(Clone, Debug)]
pub struct FunctorCat {
    cat: Arc<FinCat>,
    source: Arc<FinCat>,
    target: Arc<FinCat>,
    obj_maps: Vec<Vec<Obj>>,
    mor_maps: Vec<Vec<Mor>>,
    components: Vec<Vec<Mor>>,
    obj_index: FastMap<Vec<Mor>, Obj>,
    mor_index: FastMap<(Obj, Obj, Vec<Mor>), Mor>,
}

/// The full functor category `Fun(C, D)`.
pub fn functor_category(c: &Arc<FinCat>, d: &Arc<FinCat>, limits: &Limits) -> Result<FunctorCat> {
    let functors = enumerate_functors(c, d, limits.max_objects)?;
    FunctorCat::build(
        c,
        d,
        functors.into_iter().map(|(_, m)| m).collect(),
        &|_, _| true,
        limits,
    )
}

impl FunctorCat {
    /// Builds the category whose objects are the given functors (as morphism maps)
    /// and whose morphisms are the natural transformations all of whose
    /// components satisfy `allowed(object, component)`.
    ///
    /// `allowed` must hold for identities and be closed under composition.
    pub fn build(
        source: &Arc<FinCat>,
        target: &Arc<FinCat>,
        mut functors: Vec<Vec<Mor>>,
        allowed: &(dyn Fn(Obj, Mor) -> bool + Sync),
        limits: &Limits,
    ) -> Result<FunctorCat> {
        functors.sort();
        functors.dedup();
        limits.check_objects("functor category", functors.len())?;
        let (c, d) = (&**source, &**target);
        let obj_maps: Vec<Vec<Obj>> = functors
            .iter()
            .map(|mm| c.objects().map(|x| d.src(mm[c.id(x).idx()])).collect())
            .collect();
        let n = functors.len();
        let shells: Vec<Functor> = (0..n)
            .map(|i| {
                Functor::new_unchecked(
                    source.clone(),
                    target.clone(),
                    obj_maps[i].clone(),
                    functors[i].clone(),
                )
            })
            .collect();
        let out: Vec<Vec<(usize, Vec<Mor>)>> = par_map(n, |i| {
            let mut found = Vec::new();
            for j in 0..n {
                let feasible = c.objects().all(|x| {
                    d.hom(obj_maps[i][x.idx()], obj_maps[j][x.idx()])
                        .iter()
                        .any(|&m| allowed(x, m))
                });
                if !feasible {
                    continue;
                }
                search_nat_trans(&shells[i], &shells[j], &mut |comps| {
                    if comps
                        .iter()
                        .enumerate()
                        .all(|(x, &m)| allowed(Obj(x as u32), m))
                    {
                        found.push((j, comps.to_vec()));
                    }
                    true
                });
            }
            found
        });
        let total: usize = out.iter().map(Vec::len).sum();
        limits.check_morphisms("functor category", total)?;

        let gens = generating_morphisms(c);
        let names: Vec<String> = (0..n)
            .map(|i| functor_name(c, d, &gens, &obj_maps[i], &functors[i]))
            .collect();
        let mut b = FinCatBuilder::new();
        for name in &names {
            b.add_object(name.clone())?;
        }
        let mut components = Vec::with_capacity(total);
        let mut mor_index = FastMap::default();
        let mut out_of: Vec<Vec<Mor>> = vec![Vec::new(); n];
        for (i, list) in out.into_iter().enumerate() {
            let idents: Vec<Mor> = obj_maps[i].iter().map(|&o| d.id(o)).collect();
            for (j, comps) in list {
                let name = nat_trans_name(d, &comps, &names[i], &names[j]);
                let m = b.add_morphism(name, Obj(i as u32), Obj(j as u32))?;
                if i == j && comps == idents {
                    b.set_identity(Obj(i as u32), m);
                }
                out_of[i].push(m);
                mor_index.insert((Obj(i as u32), Obj(j as u32), comps.clone()), m);
                components.push(comps);
            }
        }
        // composable pairs are the 2-simplices of the nerve
        let pairs: usize = (0..total)
            .map(|a| out_of[b.tgt(Mor(a as u32)).idx()].len())
            .sum();
        limits.check_simplices("functor category degree-2", pairs)?;
        let composites: Vec<Vec<(Mor, Mor)>> = par_map(total, |a| {
            let alpha = Mor(a as u32);
            let (i, j) = (b.src(alpha), b.tgt(alpha));
            out_of[j.idx()]
                .iter()
                .map(|&beta| {
                    let k = b.tgt(beta);
                    let comps: Vec<Mor> = components[a]
                        .iter()
                        .zip(&components[beta.idx()])
                        .map(|(&f, &g)| d.compose(g, f).expect("components compose"))
                        .collect();
                    (beta, mor_index[&(i, k, comps)])
                })
                .collect()
        });
        for (a, list) in composites.into_iter().enumerate() {
            for (beta, gamma) in list {
                b.set_composite(beta, Mor(a as u32), gamma)?;
            }
        }
        let cat = Arc::new(b.build_trusted()?);
        let obj_index = functors
            .iter()
            .enumerate()
            .map(|(i, mm)| (mm.clone(), Obj(i as u32)))
            .collect();
        Ok(FunctorCat {
            cat,
            source: source.clone(),
            target: target.clone(),
            obj_maps,
            mor_maps: functors,
            components,
            obj_index,
            mor_index,
        })
    }

    pub fn cat(&self) -> &Arc<FinCat> {
        &self.cat
    }

    /// The indexing category `C` of `Fun(C, D)`.
    pub fn shape(&self) -> &Arc<FinCat> {
        &self.source
    }

    pub fn values(&self) -> &Arc<FinCat> {
        &self.target
    }

    pub fn obj_map(&self, o: Obj) -> &[Obj] {
        &self.obj_maps[o.idx()]
    }

    pub fn mor_map(&self, o: Obj) -> &[Mor] {
        &self.mor_maps[o.idx()]
    }

    pub fn components(&self, m: Mor) -> &[Mor] {
        &self.components[m.idx()]
    }

    /// The functor represented by an object.
    pub fn functor(&self, o: Obj) -> Functor {
        Functor::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.obj_maps[o.idx()].clone(),
            self.mor_maps[o.idx()].clone(),
        )
    }

    pub fn find_object(&self, mor_map: &[Mor]) -> Option<Obj> {
        self.obj_index.get(mor_map).copied()
    }

    pub fn find_morphism(&self, src: Obj, tgt: Obj, components: &[Mor]) -> Option<Mor> {
        self.mor_index
            .get(&(src, tgt, components.to_vec()))
            .copied()
    }

    /// Evaluation at an object of the indexing category.
    pub fn evaluate(&self, x: Obj) -> Functor {
        Functor::new_unchecked(
            self.cat.clone(),
            self.target.clone(),
            self.obj_maps.iter().map(|om| om[x.idx()]).collect(),
            self.components.iter().map(|cs| cs[x.idx()]).collect(),
        )
    }

    /// The functor `F ↦ F ∘ σ` into another functor category indexed by `σ`'s source.
    pub fn precompose(&self, sigma: &Functor, into: &FunctorCat) -> Result<Functor> {
        let obj_map = (0..self.mor_maps.len())
            .map(|i| {
                let mm: Vec<Mor> = sigma
                    .mor_map()
                    .iter()
                    .map(|&m| self.mor_maps[i][m.idx()])
                    .collect();
                into.find_object(&mm).ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "`{}` restricted along the shape map is not an object of the target",
                        self.cat.obj_name(Obj(i as u32))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = self
            .cat
            .morphisms()
            .map(|m| {
                let comps: Vec<Mor> = sigma
                    .obj_map()
                    .iter()
                    .map(|&x| self.components[m.idx()][x.idx()])
                    .collect();
                let (s, t) = (
                    obj_map[self.cat.src(m).idx()],
                    obj_map[self.cat.tgt(m).idx()],
                );
                into.find_morphism(s, t, &comps).ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "`{}` restricted along the shape map is not a morphism of the target",
                        self.cat.mor_name(m)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(self.cat.clone(), into.cat.clone(), obj_map, mor_map)
    }

    /// The functor `F ↦ H ∘ F` into another functor category with the same indexing category.
    pub fn postcompose(&self, h: &Functor, into: &FunctorCat) -> Result<Functor> {
        let obj_map = (0..self.mor_maps.len())
            .map(|i| {
                let mm: Vec<Mor> = self.mor_maps[i].iter().map(|&m| h.on_mor(m)).collect();
                into.find_object(&mm).ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "image of `{}` is not an object of the target",
                        self.cat.obj_name(Obj(i as u32))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = self
            .cat
            .morphisms()
            .map(|m| {
                let comps: Vec<Mor> = self.components[m.idx()]
                    .iter()
                    .map(|&c| h.on_mor(c))
                    .collect();
                let (s, t) = (
                    obj_map[self.cat.src(m).idx()],
                    obj_map[self.cat.tgt(m).idx()],
                );
                into.find_morphism(s, t, &comps).ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "image of `{}` is not a morphism of the target",
                        self.cat.mor_name(m)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(self.cat.clone(), into.cat.clone(), obj_map, mor_map)
    }

    /// The diagonal `D → Fun(C, D)` sending an object to the constant functor at it.
    pub fn diagonal(&self) -> Result<Functor> {
        let (c, d) = (&self.source, &self.target);
        let obj_map = d
            .objects()
            .map(|y| {
                let mm = vec![d.id(y); c.num_morphisms()];
                self.find_object(&mm).ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "constant functor at `{}` is missing",
                        d.obj_name(y)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = d
            .morphisms()
            .map(|f| {
                let comps = vec![f; c.num_objects()];
                let (s, t) = (obj_map[d.src(f).idx()], obj_map[d.tgt(f).idx()]);
                self.find_morphism(s, t, &comps).ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "constant transformation at `{}` is missing",
                        d.mor_name(f)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Functor::new(d.clone(), self.cat.clone(), obj_map, mor_map)
    }
}
