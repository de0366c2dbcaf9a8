use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::fincat::{Functor, FunctorCat};
use crate::homology::{homology, nerve_complex, HomologySummary};
use crate::limits::Limits;
use crate::relcat::{precompose_along, weq_rel_fun, RelCat, ShapeMap, ZigzagType};
use crate::util::par_map;

/// The ordinal `[n]` as a zigzag type.
pub fn ordinal_type(n: usize) -> ZigzagType {
    ZigzagType::new(&[n as i64])
}

/// Level `n` of the classification diagram: `weq RelFun([n], C)`, whose objects
/// are the length-`n` chains of `C` and whose morphisms are ladders of weak
/// equivalences.
pub fn classification_level(c: &RelCat, n: usize, limits: &Limits) -> Result<FunctorCat> {
    weq_rel_fun(c, &ordinal_type(n), limits)
}

/// The functor between two categories of zigzags given by restricting along
/// `sigma : [from] → [to]`.
pub(crate) fn restriction(
    from: &ZigzagType,
    to: &ZigzagType,
    sigma: Vec<usize>,
    source: &FunctorCat,
    target: &FunctorCat,
) -> Result<Functor> {
    let map = ShapeMap::new(from.clone(), to.clone(), sigma)?;
    precompose_along(&map, source, target)
}

/// Face operator `d_i : level n → level n−1`.
pub fn face_functor(
    source: &FunctorCat,
    target: &FunctorCat,
    n: usize,
    i: usize,
) -> Result<Functor> {
    let sigma = (0..n).map(|j| if j < i { j } else { j + 1 }).collect();
    restriction(
        &ordinal_type(n - 1),
        &ordinal_type(n),
        sigma,
        source,
        target,
    )
}

/// Degeneracy operator `s_i : level n → level n+1`.
pub fn degeneracy_functor(
    source: &FunctorCat,
    target: &FunctorCat,
    n: usize,
    i: usize,
) -> Result<Functor> {
    let sigma = (0..n + 2).map(|j| if j <= i { j } else { j - 1 }).collect();
    restriction(
        &ordinal_type(n + 1),
        &ordinal_type(n),
        sigma,
        source,
        target,
    )
}

/// One row of the classification homology table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelHomology {
    pub level: usize,
    pub objects: usize,
    pub morphisms: usize,
    pub homology: HomologySummary,
}

/// Nerve homology through degree `d` of levels `0..=n_max`.
pub fn classification_homology_table(
    c: &RelCat,
    n_max: usize,
    d: usize,
    limits: &Limits,
) -> Result<Vec<LevelHomology>> {
    par_map(n_max + 1, |n| {
        let level = classification_level(c, n, limits)?;
        let k = level.cat();
        let nerve = nerve_complex(k, d, limits)?;
        Ok(LevelHomology {
            level: n,
            objects: k.num_objects(),
            morphisms: k.num_morphisms(),
            homology: homology(&nerve.complex, d)?,
        })
    })
    .into_iter()
    .collect()
}
