use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{CatStore, CatTable};
use crate::fincat::{FinCat, Functor, Mor, Obj, RawCategory};
use crate::homology::{CertOptions, WheCert, WheCertJson, WheHints};
use crate::limits::Limits;
use crate::relcat::{weq_rel_fun, RelCat, ZigzagType};
use crate::util::{FastMap, UnionFind};

use super::level::{classification_level, ordinal_type, restriction};

/// What a bounded congruence computation does and does not establish.
pub const HO_SEMANTICS: &str = "heuristic: zigzags of length at most L modulo the congruence generated by composing \
     adjacent arrows of the same direction, deleting identities and cancelling w against its reverse, using only \
     zigzags of length at most L; `equal` is sound, `distinct-at-bound` is not a proof of inequality in Ho C";

/// One arrow of a zigzag, traversed forwards or (for a weak equivalence) backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub mor: Mor,
    pub backward: bool,
}

/// A zigzag of morphisms, listed in the order it is walked.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Zigzag(pub Vec<Step>);

impl Zigzag {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Walks the zigzag from `start`, returning the end point if every step fits.
    pub fn walk(&self, c: &RelCat, start: Obj) -> Option<Obj> {
        let und = c.und();
        self.0.iter().try_fold(start, |at, s| {
            let (from, to) = if s.backward {
                (und.tgt(s.mor), und.src(s.mor))
            } else {
                (und.src(s.mor), und.tgt(s.mor))
            };
            (from == at && (!s.backward || c.is_weq(s.mor))).then_some(to)
        })
    }

    pub fn then(&self, other: &Zigzag) -> Zigzag {
        Zigzag(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn display<'a>(&'a self, c: &'a FinCat) -> impl fmt::Display + 'a {
        ZigzagDisplay(self, c)
    }

    pub fn to_json(&self, c: &FinCat) -> Vec<StepJson> {
        self.0
            .iter()
            .map(|s| StepJson {
                morphism: c.mor_name(s.mor).to_string(),
                backward: s.backward,
            })
            .collect()
    }

    pub fn from_json(j: &[StepJson], c: &FinCat) -> Result<Zigzag> {
        j.iter()
            .map(|s| {
                Ok(Step {
                    mor: c.mor(&s.morphism)?,
                    backward: s.backward,
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Zigzag)
    }
}

struct ZigzagDisplay<'a>(&'a Zigzag, &'a FinCat);

impl fmt::Display for ZigzagDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, s) in self.0 .0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            f.write_str(self.1.mor_name(s.mor))?;
            if s.backward {
                f.write_str("⁻¹")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub morphism: String,
    pub backward: bool,
}

/// All zigzags one elementary move shorter: an identity deleted, two adjacent
/// arrows of the same direction composed, or `w` next to its reverse cancelled.
pub fn reductions(c: &RelCat, z: &Zigzag) -> Vec<Zigzag> {
    let und = c.und();
    let s = &z.0;
    let mut out = Vec::new();
    let without = |i: usize, n: usize, insert: Option<Step>| {
        let mut v = s[..i].to_vec();
        v.extend(insert);
        v.extend_from_slice(&s[i + n..]);
        Zigzag(v)
    };
    for i in 0..s.len() {
        if und.is_identity(s[i].mor) {
            out.push(without(i, 1, None));
        }
        if i + 1 < s.len() {
            let (a, b) = (s[i], s[i + 1]);
            if a.backward == b.backward {
                // forward a then b is b∘a; backward a then backward b is (a∘b) reversed
                let m = if a.backward {
                    und.compose(a.mor, b.mor)
                } else {
                    und.compose(b.mor, a.mor)
                };
                if let Some(m) = m {
                    out.push(without(
                        i,
                        2,
                        Some(Step {
                            mor: m,
                            backward: a.backward,
                        }),
                    ));
                }
            } else if a.mor == b.mor && c.is_weq(a.mor) {
                out.push(without(i, 2, None));
            }
        }
    }
    out
}

/// Whether `a` and `b` differ by one elementary move in either direction.
pub fn is_move(c: &RelCat, a: &Zigzag, b: &Zigzag) -> bool {
    reductions(c, a).contains(b) || reductions(c, b).contains(a)
}

/// Applies the first available reduction until none is left; the path starts at `z`.
pub fn normalize(c: &RelCat, z: &Zigzag) -> Vec<Zigzag> {
    let mut path = vec![z.clone()];
    while let Some(next) = reductions(c, path.last().unwrap()).into_iter().next() {
        path.push(next);
    }
    path
}

/// All zigzags from `x` to `y` with at most `bound` arrows, shortest first and
/// lexicographic within a length.
pub fn enumerate_zigzags(
    c: &RelCat,
    x: Obj,
    y: Obj,
    bound: usize,
    limits: &Limits,
) -> Result<Vec<Zigzag>> {
    let und = c.und();
    let moves: Vec<Vec<(Step, Obj)>> = und
        .objects()
        .map(|o| {
            let mut v: Vec<(Step, Obj)> = und
                .out_of(o)
                .iter()
                .map(|&m| {
                    (
                        Step {
                            mor: m,
                            backward: false,
                        },
                        und.tgt(m),
                    )
                })
                .chain(und.incoming(o).iter().filter(|&&m| c.is_weq(m)).map(|&m| {
                    (
                        Step {
                            mor: m,
                            backward: true,
                        },
                        und.src(m),
                    )
                }))
                .collect();
            v.sort();
            v
        })
        .collect();
    // steps needed to reach y, for pruning
    let mut dist = vec![usize::MAX; und.num_objects()];
    dist[y.idx()] = 0;
    let mut queue = VecDeque::from([y]);
    while let Some(o) = queue.pop_front() {
        for p in und.objects() {
            if dist[p.idx()] == usize::MAX && moves[p.idx()].iter().any(|&(_, t)| t == o) {
                dist[p.idx()] = dist[o.idx()] + 1;
                queue.push_back(p);
            }
        }
    }
    let mut out = Vec::new();
    let mut path = Vec::new();
    fn rec(
        at: Obj,
        y: Obj,
        bound: usize,
        moves: &[Vec<(Step, Obj)>],
        dist: &[usize],
        path: &mut Vec<Step>,
        out: &mut Vec<Zigzag>,
        limit: usize,
    ) -> Result<()> {
        if at == y {
            if out.len() >= limit {
                return Err(Error::SizeBudgetExceeded {
                    what: "zigzag enumeration".into(),
                    limit,
                });
            }
            out.push(Zigzag(path.clone()));
        }
        for &(s, t) in &moves[at.idx()] {
            if dist[t.idx()] != usize::MAX && path.len() + 1 + dist[t.idx()] <= bound {
                path.push(s);
                rec(t, y, bound, moves, dist, path, out, limit)?;
                path.pop();
            }
        }
        Ok(())
    }
    if dist[x.idx()] <= bound {
        rec(
            x,
            y,
            bound,
            &moves,
            &dist,
            &mut path,
            &mut out,
            limits.max_objects,
        )?;
    }
    out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    Ok(out)
}

/// Equality verdict for two zigzags in the bounded congruence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum HoVerdict {
    Equal,
    DistinctAtBound,
    Inconclusive,
}

/// A congruence class: its least member and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoClass {
    pub representative: Zigzag,
    pub size: usize,
}

/// Bounded approximation of `Ho C(X, Y)`.
#[derive(Clone, Debug)]
pub struct HoHomReport {
    pub x: Obj,
    pub y: Obj,
    pub bound: usize,
    pub zigzags: Vec<Zigzag>,
    pub class_of: Vec<usize>,
    pub classes: Vec<HoClass>,
    /// The classes at bound `L − 1` correspond bijectively to those at `L`.
    pub stabilized: bool,
    index: FastMap<Zigzag, usize>,
    down: Vec<Vec<usize>>,
    up: Vec<Vec<usize>>,
}

/// Zigzags from `x` to `y` of length at most `bound` up to the bounded congruence.
pub fn ho_homset(c: &RelCat, x: Obj, y: Obj, bound: usize, limits: &Limits) -> Result<HoHomReport> {
    if bound == 0 {
        return Err(Error::InvalidBound("L must be at least 1".into()));
    }
    let und = c.und();
    for o in [x, y] {
        if o.idx() >= und.num_objects() {
            return Err(Error::UnknownObject(format!("#{}", o.0)));
        }
    }
    let zigzags = enumerate_zigzags(c, x, y, bound, limits)?;
    let index: FastMap<Zigzag, usize> = zigzags
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, z)| (z, i))
        .collect();
    let n = zigzags.len();
    let mut down = vec![Vec::new(); n];
    let mut up = vec![Vec::new(); n];
    let mut uf = UnionFind::new(n);
    let mut before: Option<Vec<usize>> = None;
    for (i, z) in zigzags.iter().enumerate() {
        if z.len() == bound && before.is_none() {
            before = Some((0..i).map(|j| uf.find(j)).collect());
        }
        for r in reductions(c, z) {
            let j = index[&r];
            down[i].push(j);
            up[j].push(i);
            uf.union(i, j);
        }
    }
    let before = before.unwrap_or_else(|| (0..n).map(|j| uf.find(j)).collect());
    // classes numbered by their least member
    let mut number: FastMap<usize, usize> = FastMap::default();
    let mut class_of = Vec::with_capacity(n);
    let mut classes: Vec<HoClass> = Vec::new();
    for (i, z) in zigzags.iter().enumerate() {
        let root = uf.find(i);
        let k = *number.entry(root).or_insert_with(|| {
            classes.push(HoClass {
                representative: z.clone(),
                size: 0,
            });
            classes.len() - 1
        });
        classes[k].size += 1;
        class_of.push(k);
    }
    // stable iff every class has a short member and no two short classes merged
    let mut seen: FastMap<usize, usize> = FastMap::default();
    let mut stabilized = classes.iter().all(|cl| cl.representative.len() < bound);
    for (j, &r) in before.iter().enumerate() {
        if let Some(&other) = seen.get(&class_of[j]) {
            stabilized &= other == r;
        } else {
            seen.insert(class_of[j], r);
        }
    }
    Ok(HoHomReport {
        x,
        y,
        bound,
        zigzags,
        class_of,
        classes,
        stabilized,
        index,
        down,
        up,
    })
}

impl HoHomReport {
    pub fn class(&self, z: &Zigzag) -> Option<usize> {
        self.index.get(z).map(|&i| self.class_of[i])
    }

    pub fn compare(&self, a: &Zigzag, b: &Zigzag) -> HoVerdict {
        match (self.class(a), self.class(b)) {
            (Some(p), Some(q)) if p == q => HoVerdict::Equal,
            (Some(_), Some(_)) if self.stabilized => HoVerdict::DistinctAtBound,
            _ => HoVerdict::Inconclusive,
        }
    }

    /// A chain of elementary moves from `a` to `b` through zigzags within the bound.
    pub fn derivation(&self, a: &Zigzag, b: &Zigzag) -> Option<Vec<Zigzag>> {
        let (s, t) = (*self.index.get(a)?, *self.index.get(b)?);
        let mut parent = vec![usize::MAX; self.zigzags.len()];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &v in self.down[u].iter().chain(&self.up[u]) {
                if parent[v] == usize::MAX {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            return None;
        }
        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(parent[*path.last().unwrap()]);
        }
        Some(
            path.into_iter()
                .rev()
                .map(|i| self.zigzags[i].clone())
                .collect(),
        )
    }

    pub fn to_json(&self, c: &RelCat) -> HoHomJson {
        let und = c.und();
        HoHomJson {
            x: und.obj_name(self.x).to_string(),
            y: und.obj_name(self.y).to_string(),
            bound: self.bound,
            zigzags: self.zigzags.len(),
            stabilized: self.stabilized,
            semantics: HO_SEMANTICS.into(),
            classes: self
                .classes
                .iter()
                .map(|cl| HoClassJson {
                    representative: cl.representative.to_json(und),
                    text: cl.representative.display(und).to_string(),
                    size: cl.size,
                })
                .collect(),
            input: c.to_raw(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoClassJson {
    pub representative: Vec<StepJson>,
    pub text: String,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoHomJson {
    pub x: String,
    pub y: String,
    pub bound: usize,
    pub zigzags: usize,
    pub stabilized: bool,
    pub semantics: String,
    pub classes: Vec<HoClassJson>,
    pub input: RawCategory,
}

/// A two-sided inverse of a morphism in the bounded congruence, with the chains
/// of elementary moves reducing both composites to the empty zigzag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseWitness {
    pub inverse: Zigzag,
    /// From `f` followed by the inverse to the empty zigzag at the source.
    pub left: Vec<Zigzag>,
    /// From the inverse followed by `f` to the empty zigzag at the target.
    pub right: Vec<Zigzag>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationEntry {
    pub morphism: Mor,
    /// `Some` when the morphism is invertible although not a weak equivalence.
    pub witness: Option<InverseWitness>,
}

/// For each morphism that is not a weak equivalence, a search for an inverse
/// up to the bounded congruence.
#[derive(Clone, Debug)]
pub struct SaturationReport {
    pub rel: RelCat,
    pub bound: usize,
    pub entries: Vec<SaturationEntry>,
}

impl SaturationReport {
    /// Whether some non-weak-equivalence was shown invertible.
    pub fn violated(&self) -> bool {
        self.entries.iter().any(|e| e.witness.is_some())
    }

    pub fn verdict(&self) -> &'static str {
        if self.violated() {
            "not-saturated"
        } else {
            "no-violation-at-bound"
        }
    }

    /// Morphisms shown invertible that are not weak equivalences.
    pub fn violations(&self) -> Vec<Mor> {
        self.entries
            .iter()
            .filter(|e| e.witness.is_some())
            .map(|e| e.morphism)
            .collect()
    }

    /// Checks every recorded witness move by move.
    pub fn verify(&self) -> Result<()> {
        let c = &self.rel;
        let und = c.und();
        let expected: Vec<Mor> = und.morphisms().filter(|&m| !c.is_weq(m)).collect();
        if self.entries.iter().map(|e| e.morphism).collect::<Vec<_>>() != expected {
            return Err(Error::Verification(
                "entries do not list every non-weak-equivalence".into(),
            ));
        }
        for e in &self.entries {
            let Some(w) = &e.witness else { continue };
            let f = Zigzag(vec![Step {
                mor: e.morphism,
                backward: false,
            }]);
            let (x, y) = (und.src(e.morphism), und.tgt(e.morphism));
            if w.inverse.walk(c, y) != Some(x) {
                return Err(Error::Verification(
                    "inverse does not run back to the source".into(),
                ));
            }
            check_derivation(c, &f.then(&w.inverse), &w.left)?;
            check_derivation(c, &w.inverse.then(&f), &w.right)?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> SaturationJson {
        let und = self.rel.und();
        let steps = |p: &[Zigzag]| p.iter().map(|z| z.to_json(und)).collect();
        SaturationJson {
            verdict: self.verdict().into(),
            bound: self.bound,
            semantics: HO_SEMANTICS.into(),
            entries: self
                .entries
                .iter()
                .map(|e| SaturationEntryJson {
                    morphism: und.mor_name(e.morphism).to_string(),
                    verdict: if e.witness.is_some() {
                        "invertible"
                    } else {
                        "inconclusive-at-bound"
                    }
                    .into(),
                    inverse: e.witness.as_ref().map(|w| w.inverse.to_json(und)),
                    left: e.witness.as_ref().map(|w| steps(&w.left)),
                    right: e.witness.as_ref().map(|w| steps(&w.right)),
                })
                .collect(),
            input: self.rel.to_raw(),
        }
    }

    pub fn from_json(j: &SaturationJson) -> Result<SaturationReport> {
        let rel = RelCat::from_raw(&j.input)?;
        let und = rel.und().clone();
        let path = |p: &[Vec<StepJson>]| {
            p.iter()
                .map(|z| Zigzag::from_json(z, &und))
                .collect::<Result<Vec<_>>>()
        };
        let entries = j
            .entries
            .iter()
            .map(|e| {
                let witness = match (&e.inverse, &e.left, &e.right) {
                    (Some(inv), Some(l), Some(r)) => Some(InverseWitness {
                        inverse: Zigzag::from_json(inv, &und)?,
                        left: path(l)?,
                        right: path(r)?,
                    }),
                    (None, None, None) => None,
                    _ => return Err(Error::Verification("incomplete inverse witness".into())),
                };
                Ok(SaturationEntry {
                    morphism: und.mor(&e.morphism)?,
                    witness,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let report = SaturationReport {
            rel,
            bound: j.bound,
            entries,
        };
        if j.verdict != report.verdict() {
            return Err(Error::Verification(
                "recorded verdict does not match the entries".into(),
            ));
        }
        Ok(report)
    }
}

fn check_derivation(c: &RelCat, start: &Zigzag, path: &[Zigzag]) -> Result<()> {
    if path.first() != Some(start) || !path.last().is_some_and(Zigzag::is_empty) {
        return Err(Error::Verification(
            "derivation does not run from the composite to the empty zigzag".into(),
        ));
    }
    if !path.windows(2).all(|w| is_move(c, &w[0], &w[1])) {
        return Err(Error::Verification(
            "derivation contains a step that is not an elementary move".into(),
        ));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationEntryJson {
    pub morphism: String,
    pub verdict: String,
    pub inverse: Option<Vec<StepJson>>,
    pub left: Option<Vec<Vec<StepJson>>>,
    pub right: Option<Vec<Vec<StepJson>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SaturationJson {
    pub verdict: String,
    pub bound: usize,
    pub semantics: String,
    pub entries: Vec<SaturationEntryJson>,
    pub input: RawCategory,
}

/// Searches, for each morphism `f: X → Y` that is not a weak equivalence, a
/// zigzag `g: Y ⇝ X` of length at most `L` such that both composites reduce
/// to the empty zigzag: first greedily, then within the congruence at bound `L`.
pub fn saturation_report(c: &RelCat, bound: usize, limits: &Limits) -> Result<SaturationReport> {
    if bound == 0 {
        return Err(Error::InvalidBound("L must be at least 1".into()));
    }
    let und = c.und();
    let mut cache: FastMap<(Obj, Obj), HoHomReport> = FastMap::default();
    let mut ho = |a: Obj, b: Obj| -> Result<HoHomReport> {
        if let Some(r) = cache.get(&(a, b)) {
            return Ok(r.clone());
        }
        let r = ho_homset(c, a, b, bound, limits)?;
        cache.insert((a, b), r.clone());
        Ok(r)
    };
    let mut entries = Vec::new();
    for f in und.morphisms().filter(|&m| !c.is_weq(m)) {
        let (x, y) = (und.src(f), und.tgt(f));
        let fz = Zigzag(vec![Step {
            mor: f,
            backward: false,
        }]);
        let (back, loops_x, loops_y) = (ho(y, x)?, ho(x, x)?, ho(y, y)?);
        let reduce = |start: Zigzag, loops: &HoHomReport| -> Option<Vec<Zigzag>> {
            let mut path = normalize(c, &start);
            let rest = loops.derivation(path.last()?, &Zigzag::default())?;
            path.extend(rest.into_iter().skip(1));
            Some(path)
        };
        let witness = back.zigzags.iter().find_map(|g| {
            let left = reduce(fz.then(g), &loops_x)?;
            let right = reduce(g.then(&fz), &loops_y)?;
            Some(InverseWitness {
                inverse: g.clone(),
                left,
                right,
            })
        });
        entries.push(SaturationEntry {
            morphism: f,
            witness,
        });
    }
    Ok(SaturationReport {
        rel: c.clone(),
        bound,
        entries,
    })
}

/// Outcome of the completeness check at bounds `(L, d)`.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub saturation: SaturationReport,
    pub d: usize,
    /// Certificate for the degeneracy `weq C → Fun([1], weq C)`, issued only
    /// when the invertible vertices of level 1 are exactly the weak equivalences.
    pub cert: Option<WheCert>,
}

impl CompletenessReport {
    pub fn holds(&self) -> bool {
        !self.saturation.violated() && self.cert.as_ref().is_some_and(WheCert::holds)
    }

    pub fn verify(&self, opts: &CertOptions) -> Result<()> {
        self.saturation.verify()?;
        match &self.cert {
            Some(cert) => {
                let expected = degeneracy(&self.saturation.rel, &opts.limits)?;
                if !crate::evidence::same_functor(&expected, &cert.functor) {
                    return Err(Error::Verification(
                        "certificate is not for the degeneracy functor".into(),
                    ));
                }
                cert.verify(&opts.limits)
            }
            None if !self.saturation.violated() => Err(Error::Verification(
                "no discrepancy but no degeneracy certificate".into(),
            )),
            None => Ok(()),
        }
    }

    pub fn to_json(&self, t: &mut CatTable) -> CompletenessJson {
        let und = self.saturation.rel.und();
        CompletenessJson {
            verdict: if self.holds() {
                "complete-at-bound"
            } else {
                "not-complete"
            }
            .into(),
            bound: self.saturation.bound,
            d: self.d,
            discrepancy: self
                .saturation
                .violations()
                .iter()
                .map(|&m| und.mor_name(m).to_string())
                .collect(),
            saturation: self.saturation.to_json(),
            cert: self.cert.as_ref().map(|c| c.to_json(t)),
        }
    }

    pub fn from_json(j: &CompletenessJson, store: &CatStore) -> Result<CompletenessReport> {
        let report = CompletenessReport {
            saturation: SaturationReport::from_json(&j.saturation)?,
            d: j.d,
            cert: j
                .cert
                .as_ref()
                .map(|c| WheCert::from_json(c, store))
                .transpose()?,
        };
        let verdict = if report.holds() {
            "complete-at-bound"
        } else {
            "not-complete"
        };
        if j.verdict != verdict {
            return Err(Error::Verification(
                "recorded verdict does not match the evidence".into(),
            ));
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletenessJson {
    pub verdict: String,
    pub bound: usize,
    pub d: usize,
    pub discrepancy: Vec<String>,
    pub saturation: SaturationJson,
    pub cert: Option<WheCertJson>,
}

/// The degeneracy `weq C → Fun([1], weq C)`, with `Fun([1], weq C)` realized
/// as `weq RelFun([-1], C)`.
fn degeneracy(c: &RelCat, limits: &Limits) -> Result<Functor> {
    let w = classification_level(c, 0, limits)?;
    let arrows = weq_rel_fun(c, &ZigzagType::new(&[-1]), limits)?;
    restriction(
        &ZigzagType::new(&[-1]),
        &ordinal_type(0),
        vec![0, 0],
        &w,
        &arrows,
    )
}

/// Compares the vertices of level 1 invertible in the bounded congruence with
/// the weak equivalences; when they agree, certifies the degeneracy functor
/// with the domain functor as homotopy inverse.
pub fn completeness_report(
    c: &RelCat,
    bound: usize,
    opts: &CertOptions,
) -> Result<CompletenessReport> {
    let saturation = saturation_report(c, bound, &opts.limits)?;
    if saturation.violated() {
        return Ok(CompletenessReport {
            saturation,
            d: opts.d,
            cert: None,
        });
    }
    let limits = &opts.limits;
    let w = classification_level(c, 0, limits)?;
    let arrows = weq_rel_fun(c, &ZigzagType::new(&[-1]), limits)?;
    let deg = degeneracy(c, limits)?;
    let dom = restriction(
        &ordinal_type(0),
        &ZigzagType::new(&[-1]),
        vec![1],
        &arrows,
        &w,
    )?;
    let hints = WheHints {
        inverse: Some(dom),
        ..WheHints::default()
    };
    let cert = opts.whe(&deg, Some(&hints))?;
    Ok(CompletenessReport {
        saturation,
        d: opts.d,
        cert: Some(cert),
    })
}
