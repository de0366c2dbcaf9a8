use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, FinCat, Functor, FunctorCat, Mor, Obj};
use crate::limits::Limits;
use crate::relcat::{zigzag_shape, RelCat, ShapeMap, ZigzagType};

/// All relative functors `[k] → C` as morphism maps over `zigzag_shape(k)`,
/// optionally with fixed domain `x` and codomain `y`.
///
/// Since `[k]` is free on a line, a functor is a choice of one morphism per
/// arrow with matching endpoints; leftward arrows must go to weak equivalences.
pub fn zigzag_functors(
    c: &RelCat,
    k: &ZigzagType,
    x: Option<Obj>,
    y: Option<Obj>,
    limits: &Limits,
) -> Result<Vec<Vec<Mor>>> {
    let und = c.und();
    let left = k.leftward();
    let n = left.len();
    let shape = zigzag_shape(k);
    let s = shape.und().clone();
    let mut out = Vec::new();
    let mut edges: Vec<Mor> = Vec::with_capacity(n);
    let starts: Vec<Obj> = match x {
        Some(x) => vec![x],
        None => und.objects().collect(),
    };
    struct Ctx<'a> {
        c: &'a RelCat,
        left: &'a [bool],
        y: Option<Obj>,
        s: &'a FinCat,
        out: &'a mut Vec<Vec<Mor>>,
        limit: usize,
    }
    fn rec(ctx: &mut Ctx, cur: Obj, start: Obj, edges: &mut Vec<Mor>) -> Result<()> {
        let j = edges.len();
        let und = ctx.c.und();
        if j == ctx.left.len() {
            if ctx.y.is_some_and(|y| y != cur) {
                return Ok(());
            }
            if ctx.out.len() >= ctx.limit {
                return Err(Error::SizeBudgetExceeded {
                    what: "zigzag enumeration objects".into(),
                    limit: ctx.limit,
                });
            }
            ctx.out.push(path_images(ctx.s, und, start, edges));
            return Ok(());
        }
        if ctx.left[j] {
            for &e in und.incoming(cur) {
                if ctx.c.is_weq(e) {
                    edges.push(e);
                    rec(ctx, und.src(e), start, edges)?;
                    edges.pop();
                }
            }
        } else {
            for &e in und.out_of(cur) {
                edges.push(e);
                rec(ctx, und.tgt(e), start, edges)?;
                edges.pop();
            }
        }
        Ok(())
    }
    let mut ctx = Ctx {
        c,
        left: &left,
        y,
        s: &s,
        out: &mut out,
        limit: limits.max_objects,
    };
    for x0 in starts {
        rec(&mut ctx, x0, x0, &mut edges)?;
    }
    Ok(out)
}

/// Extends a choice of arrow images to the full morphism map of `[k]`.
pub(crate) fn path_images(shape: &FinCat, c: &FinCat, start: Obj, edges: &[Mor]) -> Vec<Mor> {
    // objects along the line
    let mut objs = Vec::with_capacity(edges.len() + 1);
    objs.push(start);
    for &e in edges {
        let last = *objs.last().unwrap();
        objs.push(if c.src(e) == last { c.tgt(e) } else { c.src(e) });
    }
    shape
        .morphisms()
        .map(|m| {
            let (i, j) = (shape.src(m).idx(), shape.tgt(m).idx());
            let mut acc = c.id(objs[i]);
            if i < j {
                for &e in &edges[i..j] {
                    acc = c.compose(e, acc).unwrap();
                }
            } else {
                for &e in edges[j..i].iter().rev() {
                    acc = c.compose(e, acc).unwrap();
                }
            }
            acc
        })
        .collect()
}

/// `weq RelFun([k], C)`: relative functors with natural transformations whose
/// components are all weak equivalences.
pub fn weq_rel_fun(c: &RelCat, k: &ZigzagType, limits: &Limits) -> Result<FunctorCat> {
    let shape = zigzag_shape(k).und().clone();
    let functors = zigzag_functors(c, k, None, None, limits)?;
    FunctorCat::build(&shape, c.und(), functors, &|_, m| c.is_weq(m), limits)
}

/// The zigzag category `C^[k](X, Y)`: zigzags of type `k` from `X` to `Y`, and
/// ladders whose vertical arrows are weak equivalences and identities at both ends.
pub fn zigzag_category(
    c: &RelCat,
    k: &ZigzagType,
    x: Obj,
    y: Obj,
    limits: &Limits,
) -> Result<FunctorCat> {
    for o in [x, y] {
        if o.idx() >= c.und().num_objects() {
            return Err(Error::UnknownObject(format!("#{}", o.0)));
        }
    }
    let shape = zigzag_shape(k).und().clone();
    let n = k.len() as u32;
    let functors = zigzag_functors(c, k, Some(x), Some(y), limits)?;
    let und = c.und().clone();
    FunctorCat::build(
        &shape,
        c.und(),
        functors,
        &move |o, m| {
            if o.0 == 0 || o.0 == n {
                und.is_identity(m)
            } else {
                c.is_weq(m)
            }
        },
        limits,
    )
}

/// `RelFun(K, C)` as a relative category, with the functor data.
#[derive(Clone, Debug)]
pub struct RelFun {
    pub functors: FunctorCat,
    pub rel: RelCat,
}

/// All relative functors `K → C` and all natural transformations between them;
/// weak equivalences are the componentwise weak equivalences.
pub fn rel_functor_category(k: &RelCat, c: &RelCat, limits: &Limits) -> Result<RelFun> {
    let all = enumerate_functors(k.und(), c.und(), limits.max_objects)?;
    let relative: Vec<Vec<Mor>> = all
        .into_iter()
        .filter(|(_, mm)| {
            k.und()
                .morphisms()
                .all(|m| !k.is_weq(m) || c.is_weq(mm[m.idx()]))
        })
        .map(|(_, mm)| mm)
        .collect();
    let functors = FunctorCat::build(k.und(), c.und(), relative, &|_, _| true, limits)?;
    let flags = functors
        .cat()
        .morphisms()
        .map(|m| functors.components(m).iter().all(|&x| c.is_weq(x)))
        .collect();
    let rel = RelCat::from_flags(functors.cat().clone(), flags);
    Ok(RelFun { functors, rel })
}

/// The functor `C^[to](X, Y) → C^[from](X, Y)` given by precomposition with the
/// shape map, together with both zigzag categories. Without endpoints the
/// functor is between `weq RelFun([to], C)` and `weq RelFun([from], C)`.
pub fn insertion_functor(
    c: &RelCat,
    map: &ShapeMap,
    endpoints: Option<(Obj, Obj)>,
    limits: &Limits,
) -> Result<(FunctorCat, FunctorCat, Functor)> {
    let (source, target) = match endpoints {
        Some((x, y)) => {
            if !map.fixes_endpoints() {
                return Err(Error::ShapeMismatch(format!(
                    "shape map {} → {} moves an endpoint",
                    map.from, map.to
                )));
            }
            (
                zigzag_category(c, &map.to, x, y, limits)?,
                zigzag_category(c, &map.from, x, y, limits)?,
            )
        }
        None => (
            weq_rel_fun(c, &map.to, limits)?,
            weq_rel_fun(c, &map.from, limits)?,
        ),
    };
    let f = precompose_along(map, &source, &target)?;
    Ok((source, target, f))
}

/// Precomposition with a shape map between two already built categories of zigzags.
pub fn precompose_along(
    map: &ShapeMap,
    source: &FunctorCat,
    target: &FunctorCat,
) -> Result<Functor> {
    let sigma = map.functor_between(&zigzag_shape(&map.from), &zigzag_shape(&map.to))?;
    source.precompose(&sigma, target)
}
