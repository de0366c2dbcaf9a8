use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{opposite, subcategory, FinCat, Functor, Mor, Obj};
use crate::util::{par_map, FastMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Fibration,
    Opfibration,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Fibration => "fibration",
            Variant::Opfibration => "opfibration",
        }
    }
}

/// A chosen (co)cartesian lift of the base morphism `base` at `object`.
///
/// For a fibration `base: B' → P(object)` and `lift: f^*E → object`; for an
/// opfibration `base: P(object) → B'` and `lift: object → f_!E`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Lift {
    pub object: Obj,
    pub base: Mor,
    pub lift: Mor,
}

#[derive(Clone, Debug)]
pub struct FibrationReport {
    pub functor: Functor,
    pub variant: Variant,
    pub verdict: bool,
    /// Sorted by `(object, base)`; complete when the verdict is yes.
    pub lifts: Vec<Lift>,
    pub split: bool,
    pub counterexample: Option<(Obj, Mor)>,
}

impl FibrationReport {
    pub fn lift(&self, object: Obj, base: Mor) -> Option<Mor> {
        self.lifts
            .binary_search_by(|l| (l.object, l.base).cmp(&(object, base)))
            .ok()
            .map(|i| self.lifts[i].lift)
    }

    /// The report with object and morphism names, for serialization.
    pub fn summary(&self) -> FibrationSummary {
        let (e, b) = (self.functor.source(), self.functor.target());
        let mut lifts: Vec<NamedLift> = self
            .lifts
            .iter()
            .map(|l| NamedLift {
                object: e.obj_name(l.object).into(),
                base: b.mor_name(l.base).into(),
                lift: e.mor_name(l.lift).into(),
            })
            .collect();
        // by name, so the order survives renumbering on reload
        lifts.sort_by(|x, y| (&x.object, &x.base).cmp(&(&y.object, &y.base)));
        FibrationSummary {
            variant: self.variant,
            verdict: if self.verdict { "yes" } else { "no" }.into(),
            split: self.split,
            lifts,
            counterexample: self.counterexample.map(|(o, f)| NamedPair {
                object: e.obj_name(o).into(),
                base: b.mor_name(f).into(),
            }),
        }
    }
}

impl FibrationReport {
    /// Rebuilds a report for `functor` from its named summary; the result still
    /// has to pass [`verify_report`].
    pub fn from_summary(functor: Functor, s: &FibrationSummary) -> Result<Self> {
        let (e, b) = (functor.source().clone(), functor.target().clone());
        let verdict = match s.verdict.as_str() {
            "yes" => true,
            "no" => false,
            other => return Err(Error::Verification(format!("unknown verdict `{other}`"))),
        };
        let mut lifts = s
            .lifts
            .iter()
            .map(|l| {
                Ok(Lift {
                    object: e.obj(&l.object)?,
                    base: b.mor(&l.base)?,
                    lift: e.mor(&l.lift)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        lifts.sort();
        let counterexample = match &s.counterexample {
            Some(c) => Some((e.obj(&c.object)?, b.mor(&c.base)?)),
            None => None,
        };
        Ok(FibrationReport {
            functor,
            variant: s.variant,
            verdict,
            lifts,
            split: s.split,
            counterexample,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLift {
    pub object: String,
    pub base: String,
    pub lift: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedPair {
    pub object: String,
    pub base: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationSummary {
    pub variant: Variant,
    pub verdict: String,
    pub split: bool,
    pub lifts: Vec<NamedLift>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<NamedPair>,
}

/// Whether `phi: S → E` is cartesian over `f = P(phi)`: for every `E''` the map
/// `ψ ↦ (phi∘ψ, P(ψ))` from `E(E'', S)` to `{(h, g) : P(h) = f∘g}` is a bijection.
pub fn is_cartesian(p: &Functor, phi: Mor) -> bool {
    let (e, b) = (&**p.source(), &**p.target());
    let (s, t) = (e.src(phi), e.tgt(phi));
    let f = p.on_mor(phi);
    let b_src = b.src(f);
    e.objects().all(|e2| {
        let lhs = e.hom(e2, s);
        let mut images: Vec<(Mor, Mor)> = lhs
            .iter()
            .map(|&psi| (e.compose(phi, psi).unwrap(), p.on_mor(psi)))
            .collect();
        images.sort_unstable();
        images.dedup();
        if images.len() != lhs.len() {
            return false;
        }
        let base_hom = b.hom(p.on_obj(e2), b_src);
        let rhs: usize = e
            .hom(e2, t)
            .iter()
            .map(|&h| {
                let ph = p.on_mor(h);
                base_hom
                    .iter()
                    .filter(|&&g| b.compose(f, g) == Some(ph))
                    .count()
            })
            .sum();
        rhs == lhs.len()
    })
}

/// Exhaustive (op)fibration check. Lifts over identities are identities; among
/// the remaining cartesian lifts the lexicographically least family that
/// composes strictly is chosen when one exists, otherwise the least lift for
/// each pair.
pub fn check_fibration(p: &Functor, variant: Variant) -> FibrationReport {
    match variant {
        Variant::Fibration => check_cartesian_lifts(p),
        Variant::Opfibration => {
            let e_op = Arc::new(opposite(p.source()));
            let b_op = Arc::new(opposite(p.target()));
            let mut report = check_cartesian_lifts(&p.opposite(e_op, b_op));
            report.functor = p.clone();
            report.variant = Variant::Opfibration;
            report
        }
    }
}

/// Search budget (assignment attempts) for a split family of lifts.
const SPLIT_SEARCH_BUDGET: usize = 200_000;

fn check_cartesian_lifts(p: &Functor) -> FibrationReport {
    let (e, b) = (p.source().clone(), p.target().clone());
    type Candidates = Vec<(Mor, Vec<Mor>)>;
    let per_object: Vec<std::result::Result<Candidates, Mor>> = par_map(e.num_objects(), |i| {
        let obj = Obj(i as u32);
        let mut out = Vec::new();
        for &f in b.incoming(p.on_obj(obj)) {
            let cands: Vec<Mor> = if b.is_identity(f) {
                vec![e.id(obj)]
            } else {
                e.incoming(obj)
                    .iter()
                    .copied()
                    .filter(|&phi| p.on_mor(phi) == f && is_cartesian(p, phi))
                    .collect()
            };
            if cands.is_empty() {
                return Err(f);
            }
            out.push((f, cands));
        }
        Ok(out)
    });
    let mut pairs = Vec::new();
    let mut domains = Vec::new();
    for (i, r) in per_object.into_iter().enumerate() {
        match r {
            Ok(cs) => {
                for (f, c) in cs {
                    pairs.push((Obj(i as u32), f));
                    domains.push(c);
                }
            }
            Err(f) => {
                return FibrationReport {
                    functor: p.clone(),
                    variant: Variant::Fibration,
                    verdict: false,
                    lifts: Vec::new(),
                    split: false,
                    counterexample: Some((Obj(i as u32), f)),
                }
            }
        }
    }
    let least: Vec<Mor> = domains.iter().map(|d| d[0]).collect();
    let chosen = if family_composes(&e, &b, &pairs, &least) {
        least
    } else {
        SplitSearch::new(&e, &b, &pairs, &domains)
            .run()
            .unwrap_or(least)
    };
    let lifts: Vec<Lift> = pairs
        .iter()
        .zip(chosen)
        .map(|(&(object, base), lift)| Lift { object, base, lift })
        .collect();
    let mut report = FibrationReport {
        functor: p.clone(),
        variant: Variant::Fibration,
        verdict: true,
        lifts,
        split: false,
        counterexample: None,
    };
    report.split = lifts_compose(&report, &e, &b);
    report
}

fn family_composes(e: &FinCat, b: &FinCat, pairs: &[(Obj, Mor)], lifts: &[Mor]) -> bool {
    let index: FastMap<(Obj, Mor), usize> =
        pairs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    pairs.iter().zip(lifts).all(|(&(obj, f), &phi)| {
        let s = e.src(phi);
        b.incoming(b.src(f)).iter().all(|&f2| {
            let inner = lifts[index[&(s, f2)]];
            let outer = lifts[index[&(obj, b.compose(f, f2).unwrap())]];
            e.compose(phi, inner) == Some(outer)
        })
    })
}

/// Search for a family of lifts satisfying `lift(E, f∘f') = lift(E, f) ∘ lift(f^*E, f')`:
/// forced composites are propagated, candidates are filtered against the
/// current assignment, and the pair with the fewest remaining candidates
/// (least index on ties) is branched on first.
struct SplitSearch<'a> {
    e: &'a FinCat,
    b: &'a FinCat,
    pairs: &'a [(Obj, Mor)],
    domains: &'a [Vec<Mor>],
    index: FastMap<(Obj, Mor), usize>,
    value: Vec<Option<Mor>>,
    /// Assigned pairs grouped by the source of their lift.
    by_source: Vec<Vec<usize>>,
    trail: Vec<usize>,
    budget: usize,
}

impl<'a> SplitSearch<'a> {
    fn new(e: &'a FinCat, b: &'a FinCat, pairs: &'a [(Obj, Mor)], domains: &'a [Vec<Mor>]) -> Self {
        SplitSearch {
            e,
            b,
            pairs,
            domains,
            index: pairs.iter().enumerate().map(|(i, &k)| (k, i)).collect(),
            value: vec![None; pairs.len()],
            by_source: vec![Vec::new(); e.num_objects()],
            trail: Vec::new(),
            budget: SPLIT_SEARCH_BUDGET,
        }
    }

    fn run(mut self) -> Option<Vec<Mor>> {
        for i in 0..self.pairs.len() {
            if self.b.is_identity(self.pairs[i].1) && !self.assign(i, self.domains[i][0]) {
                return None;
            }
        }
        if self.solve() {
            Some(self.value.into_iter().map(|v| v.unwrap()).collect())
        } else {
            None
        }
    }

    /// Whether assigning `phi` to pair `i` contradicts an already forced composite.
    fn consistent(&self, i: usize, phi: Mor) -> bool {
        let (obj, f) = self.pairs[i];
        let s = self.e.src(phi);
        let agrees = |r: usize, v: Mor| self.value[r].is_none_or(|x| x == v);
        self.b.incoming(self.b.src(f)).iter().all(|&f2| {
            let q = self.index[&(s, f2)];
            match self.value[q] {
                Some(inner) => agrees(
                    self.index[&(obj, self.b.compose(f, f2).unwrap())],
                    self.e.compose(phi, inner).unwrap(),
                ),
                None => true,
            }
        }) && self.by_source[obj.idx()].iter().all(|&p| {
            let (obj_p, f_p) = self.pairs[p];
            agrees(
                self.index[&(obj_p, self.b.compose(f_p, f).unwrap())],
                self.e.compose(self.value[p].unwrap(), phi).unwrap(),
            )
        })
    }

    fn solve(&mut self) -> bool {
        let mut best: Option<(usize, Vec<Mor>)> = None;
        for i in 0..self.pairs.len() {
            if self.value[i].is_some() {
                continue;
            }
            let ok: Vec<Mor> = self.domains[i]
                .iter()
                .copied()
                .filter(|&phi| self.consistent(i, phi))
                .collect();
            if best.as_ref().is_none_or(|(_, b)| ok.len() < b.len()) {
                let done = ok.len() <= 1;
                best = Some((i, ok));
                if done {
                    break;
                }
            }
        }
        let Some((next, options)) = best else {
            return true;
        };
        for phi in options {
            if self.budget == 0 {
                return false;
            }
            self.budget -= 1;
            let mark = self.trail.len();
            if self.assign(next, phi) && self.solve() {
                return true;
            }
            self.undo(mark);
        }
        false
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            let src = self.e.src(self.value[i].unwrap());
            self.by_source[src.idx()].pop();
            self.value[i] = None;
        }
    }

    /// Assigns and propagates forced composites; false on a conflict.
    fn assign(&mut self, first: usize, phi: Mor) -> bool {
        let mut queue = vec![(first, phi)];
        while let Some((i, phi)) = queue.pop() {
            match self.value[i] {
                Some(v) if v == phi => continue,
                Some(_) => return false,
                None => {}
            }
            if self.domains[i].binary_search(&phi).is_err() {
                return false;
            }
            self.value[i] = Some(phi);
            self.by_source[self.e.src(phi).idx()].push(i);
            self.trail.push(i);
            let (obj, f) = self.pairs[i];
            let s = self.e.src(phi);
            // i as the outer lift: compose with assigned lifts at its source
            for &f2 in self.b.incoming(self.b.src(f)) {
                if let Some(inner) = self.value[self.index[&(s, f2)]] {
                    let r = self.index[&(obj, self.b.compose(f, f2).unwrap())];
                    queue.push((r, self.e.compose(phi, inner).unwrap()));
                }
            }
            // i as the inner lift: every assigned lift whose source is `obj`
            for &p in &self.by_source[obj.idx()] {
                let (obj_p, f_p) = self.pairs[p];
                let outer = self.value[p].unwrap();
                let r = self.index[&(obj_p, self.b.compose(f_p, f).unwrap())];
                queue.push((r, self.e.compose(outer, phi).unwrap()));
            }
        }
        true
    }
}

/// Whether the chosen lifts satisfy `lift(E, f∘f') = lift(E, f) ∘ lift(f^*E, f')`,
/// computed on the fibration side (i.e. in the opposites for an opfibration).
fn lifts_compose(report: &FibrationReport, e: &FinCat, b: &FinCat) -> bool {
    report.lifts.iter().all(|l| {
        let mid = e.src(l.lift);
        b.incoming(b.src(l.base)).iter().all(|&f2| {
            let outer = report.lift(l.object, b.compose(l.base, f2).unwrap());
            let inner = report.lift(mid, f2);
            match (outer, inner) {
                (Some(o), Some(i)) => e.compose(l.lift, i) == Some(o),
                _ => false,
            }
        })
    })
}

/// Re-verifies every recorded lift and the completeness of the family
/// (or, for a no verdict, that the counterexample indeed has no lift).
pub fn verify_report(report: &FibrationReport) -> bool {
    let p = &report.functor;
    let (e, b) = (p.source(), p.target());
    let (p_fib, e_fib, b_fib) = match report.variant {
        Variant::Fibration => (p.clone(), e.clone(), b.clone()),
        Variant::Opfibration => {
            let e_op = Arc::new(opposite(e));
            let b_op = Arc::new(opposite(b));
            (p.opposite(e_op.clone(), b_op.clone()), e_op, b_op)
        }
    };
    if !report.verdict {
        let Some((obj, f)) = report.counterexample else {
            return false;
        };
        if obj.idx() >= e_fib.num_objects()
            || f.idx() >= b_fib.num_morphisms()
            || b_fib.tgt(f) != p_fib.on_obj(obj)
        {
            return false;
        }
        return !e_fib
            .incoming(obj)
            .iter()
            .any(|&phi| p_fib.on_mor(phi) == f && is_cartesian(&p_fib, phi));
    }
    let expected: usize = e_fib
        .objects()
        .map(|o| b_fib.incoming(p_fib.on_obj(o)).len())
        .sum();
    if report.lifts.len() != expected {
        return false;
    }
    let well_formed = report.lifts.windows(2).all(|w| w[0] < w[1])
        && report.lifts.iter().all(|l| {
            l.object.idx() < e_fib.num_objects()
                && l.lift.idx() < e_fib.num_morphisms()
                && l.base.idx() < b_fib.num_morphisms()
                && e_fib.tgt(l.lift) == l.object
                && p_fib.on_mor(l.lift) == l.base
        });
    if !well_formed || !report.lifts.iter().all(|l| is_cartesian(&p_fib, l.lift)) {
        return false;
    }
    !report.split || lifts_compose(report, &e_fib, &b_fib)
}

/// The strict fiber `P⁻¹{b}` with its inclusion into the total category.
pub fn fiber(p: &Functor, b: Obj) -> Result<(Arc<FinCat>, Functor)> {
    let base = p.target();
    if b.idx() >= base.num_objects() {
        return Err(Error::UnknownObject(format!("#{}", b.0)));
    }
    let id_b = base.id(b);
    subcategory(p.source(), |o| p.on_obj(o) == b, |m| p.on_mor(m) == id_b)
}

/// The functor between fibers induced by the chosen lifts along `f`:
/// `P⁻¹{b} → P⁻¹{b'}` for `f: b' → b` (fibration) or `f: b → b'` (opfibration).
pub fn transition_functor(report: &FibrationReport, f: Mor) -> Result<Functor> {
    let p = &report.functor;
    let b = p.target();
    if f.idx() >= b.num_morphisms() {
        return Err(Error::UnknownMorphism(format!("#{}", f.0)));
    }
    let (from, to) = match report.variant {
        Variant::Fibration => (b.tgt(f), b.src(f)),
        Variant::Opfibration => (b.src(f), b.tgt(f)),
    };
    let (_, incl_from) = fiber(p, from)?;
    let (_, incl_to) = fiber(p, to)?;
    transition_between(report, f, &incl_from, &incl_to)
}

/// `transition_functor` between already built fibers (given by their inclusions).
pub fn transition_between(
    report: &FibrationReport,
    f: Mor,
    incl_from: &Functor,
    incl_to: &Functor,
) -> Result<Functor> {
    if !report.verdict {
        return Err(Error::NotAFibration(report.variant.as_str().into()));
    }
    let p = &report.functor;
    let e = p.source();
    let to_base = match report.variant {
        Variant::Fibration => p.target().src(f),
        Variant::Opfibration => p.target().tgt(f),
    };
    let id_to = p.target().id(to_base);
    let missing =
        || Error::NotAFibration(format!("{} has no lift recorded", report.variant.as_str()));
    let local_obj = |o: Obj| {
        incl_to
            .obj_map()
            .binary_search(&o)
            .ok()
            .map(|i| Obj(i as u32))
    };
    let local_mor = |m: Mor| {
        incl_to
            .mor_map()
            .binary_search(&m)
            .ok()
            .map(|i| Mor(i as u32))
    };
    let from_cat = incl_from.source();
    let lifts: Vec<Mor> = from_cat
        .objects()
        .map(|o| report.lift(incl_from.on_obj(o), f).ok_or_else(missing))
        .collect::<Result<_>>()?;
    let moved = |phi: Mor| match report.variant {
        Variant::Fibration => e.src(phi),
        Variant::Opfibration => e.tgt(phi),
    };
    let obj_map = lifts
        .iter()
        .map(|&phi| local_obj(moved(phi)).ok_or_else(missing))
        .collect::<Result<Vec<_>>>()?;
    let mor_map = from_cat
        .morphisms()
        .map(|m| {
            let alpha = incl_from.on_mor(m);
            let (l1, l2) = (lifts[from_cat.src(m).idx()], lifts[from_cat.tgt(m).idx()]);
            let (s, t) = (moved(l1), moved(l2));
            let psi = e.hom(s, t).iter().copied().find(|&psi| {
                p.on_mor(psi) == id_to
                    && match report.variant {
                        Variant::Fibration => e.compose(l2, psi) == e.compose(alpha, l1),
                        Variant::Opfibration => e.compose(psi, l1) == e.compose(l2, alpha),
                    }
            });
            psi.and_then(local_mor).ok_or_else(missing)
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(from_cat.clone(), incl_to.source().clone(), obj_map, mor_map)
}
