use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{check_zigzag, CatStore, CatTable, FunctorJson, NatStepJson};
use crate::fincat::{
    connect, enumerate_functors, find_nat_trans, nat_trans_zigzag, zigzag_through, Direction,
    FinCat, Functor, NatStep, Obj,
};
use crate::homology::complex::{chain_map, homology, mapping_cone, nerve_complex, HomologySummary};
use crate::limits::Limits;

/// What the weakest certificate stratum guarantees about a functor.
pub const HOMOLOGY_SEMANTICS: &str =
    "H_n(F) is an isomorphism for n < d and surjective in degree d, and π_0(F) is a bijection";
const ISO_SEMANTICS: &str = "F is an isomorphism of categories";
const ZIGZAG_SEMANTICS: &str =
    "F has a homotopy inverse G: zigzags of natural transformations connect id with G∘F and F∘G with id";
const CONTRACTION_SEMANTICS: &str =
    "source and target of F are contractible: each identity functor is connected to a constant functor by natural transformations";
const REFUSED_SEMANTICS: &str =
    "no certificate: the mapping cone has homology in some degree n ≤ d or π_0(F) is not a bijection";

/// Functors tried as homotopy inverses by the unhinted search.
const INVERSE_SEARCH_CAP: usize = 512;
/// Endofunctors enumerated when searching longer zigzags.
const ZIGZAG_SEARCH_CAP: usize = 2_000;

/// Certificate strata, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertKind {
    ExactIso,
    NatZigzag,
    MaxElementContraction,
    HomologyDEquivalence,
}

impl CertKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertKind::ExactIso => "exact-iso",
            CertKind::NatZigzag => "nat-zigzag",
            CertKind::MaxElementContraction => "max-element-contraction",
            CertKind::HomologyDEquivalence => "homology-d-equivalence",
        }
    }

    /// Whether the stratum rests on natural transformations rather than homology.
    pub fn is_strong(self) -> bool {
        self != CertKind::HomologyDEquivalence
    }
}

impl fmt::Display for CertKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A zigzag of natural transformations from the identity of a category to the
/// constant functor at `apex`. A single forward step is a maximum element, a
/// single backward step a minimum element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub apex: Obj,
    pub steps: Vec<NatStep>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    ExactIso,
    /// `unit` runs from `id_C` to `G∘F`, `counit` from `F∘G` to `id_D`.
    NatZigzag {
        inverse: Functor,
        unit: Vec<NatStep>,
        counit: Vec<NatStep>,
    },
    Contraction {
        source: Contraction,
        target: Contraction,
    },
    Homology {
        cone: HomologySummary,
    },
    Refused {
        cone: HomologySummary,
        pi0_bijective: bool,
    },
}

/// Evidence that a functor is a weak homotopy equivalence, or a refusal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WheCert {
    pub functor: Functor,
    pub d: usize,
    pub evidence: Evidence,
}

/// Caller-supplied candidates for the natural-transformation stratum: a homotopy
/// inverse and the intermediate functors of the unit and counit zigzags.
#[derive(Clone, Debug, Default)]
pub struct WheHints {
    pub inverse: Option<Functor>,
    pub unit_through: Vec<Functor>,
    pub counit_through: Vec<Functor>,
}

impl WheCert {
    pub fn holds(&self) -> bool {
        !matches!(self.evidence, Evidence::Refused { .. })
    }

    pub fn kind(&self) -> Option<CertKind> {
        Some(match self.evidence {
            Evidence::ExactIso => CertKind::ExactIso,
            Evidence::NatZigzag { .. } => CertKind::NatZigzag,
            Evidence::Contraction { .. } => CertKind::MaxElementContraction,
            Evidence::Homology { .. } => CertKind::HomologyDEquivalence,
            Evidence::Refused { .. } => return None,
        })
    }

    pub fn semantics(&self) -> &'static str {
        match self.evidence {
            Evidence::ExactIso => ISO_SEMANTICS,
            Evidence::NatZigzag { .. } => ZIGZAG_SEMANTICS,
            Evidence::Contraction { .. } => CONTRACTION_SEMANTICS,
            Evidence::Homology { .. } => HOMOLOGY_SEMANTICS,
            Evidence::Refused { .. } => REFUSED_SEMANTICS,
        }
    }

    /// Re-checks the evidence; searches are never repeated, only checked.
    pub fn verify(&self, limits: &Limits) -> Result<()> {
        let f = &self.functor;
        f.check().map_err(|e| Error::Verification(e.to_string()))?;
        match &self.evidence {
            Evidence::ExactIso => {
                if !f.is_bijective() {
                    return Err(Error::Verification("functor is not bijective".into()));
                }
            }
            Evidence::NatZigzag {
                inverse,
                unit,
                counit,
            } => {
                let gf = inverse
                    .after(f)
                    .map_err(|e| Error::Verification(e.to_string()))?;
                let fg = f
                    .after(inverse)
                    .map_err(|e| Error::Verification(e.to_string()))?;
                if check_zigzag(&Functor::identity(f.source()), unit)? != gf {
                    return Err(Error::Verification(
                        "unit zigzag does not end at G∘F".into(),
                    ));
                }
                if check_zigzag(&fg, counit)? != Functor::identity(f.target()) {
                    return Err(Error::Verification(
                        "counit zigzag does not end at the identity".into(),
                    ));
                }
            }
            Evidence::Contraction { source, target } => {
                verify_contraction(f.source(), source)?;
                verify_contraction(f.target(), target)?;
            }
            Evidence::Homology { cone } | Evidence::Refused { cone, .. } => {
                let fresh = homology_equivalence_cert(f, self.d, limits)?;
                if fresh.evidence != self.evidence {
                    return Err(Error::Verification(
                        "recorded cone homology or π_0 verdict does not match".into(),
                    ));
                }
                debug_assert_eq!(cone.d, self.d);
            }
        }
        Ok(())
    }

    pub fn to_json(&self, t: &mut CatTable) -> WheCertJson {
        let evidence = match &self.evidence {
            Evidence::ExactIso => EvidenceJson::ExactIso {},
            Evidence::NatZigzag {
                inverse,
                unit,
                counit,
            } => EvidenceJson::NatZigzag {
                inverse: t.functor(inverse),
                unit: t.steps(unit),
                counit: t.steps(counit),
            },
            Evidence::Contraction { source, target } => EvidenceJson::MaxElementContraction {
                source: contraction_json(self.functor.source(), source, t),
                target: contraction_json(self.functor.target(), target, t),
            },
            Evidence::Homology { cone } => EvidenceJson::HomologyDEquivalence {
                cone: cone.clone(),
                pi0_bijective: true,
            },
            Evidence::Refused {
                cone,
                pi0_bijective,
            } => EvidenceJson::Refused {
                cone: cone.clone(),
                pi0_bijective: *pi0_bijective,
            },
        };
        WheCertJson {
            verdict: if self.holds() { "certified" } else { "refused" }.into(),
            d: self.d,
            semantics: self.semantics().into(),
            functor: t.functor(&self.functor),
            evidence,
        }
    }

    /// Rebuilds a certificate from JSON; call [`WheCert::verify`] to check it.
    pub fn from_json(j: &WheCertJson, store: &CatStore) -> Result<WheCert> {
        let functor = store.functor(&j.functor)?;
        let evidence = match &j.evidence {
            EvidenceJson::ExactIso {} => Evidence::ExactIso,
            EvidenceJson::NatZigzag {
                inverse,
                unit,
                counit,
            } => {
                let inverse = store.functor(inverse)?;
                let fg = functor
                    .after(&inverse)
                    .map_err(|e| Error::Verification(e.to_string()))?;
                Evidence::NatZigzag {
                    unit: store.steps(&Functor::identity(functor.source()), unit)?,
                    counit: store.steps(&fg, counit)?,
                    inverse,
                }
            }
            EvidenceJson::MaxElementContraction { source, target } => Evidence::Contraction {
                source: contraction_from_json(functor.source(), source, store)?,
                target: contraction_from_json(functor.target(), target, store)?,
            },
            EvidenceJson::HomologyDEquivalence {
                cone,
                pi0_bijective,
            } => {
                if !pi0_bijective {
                    return Err(Error::Verification(
                        "homology certificate without π_0 bijection".into(),
                    ));
                }
                Evidence::Homology { cone: cone.clone() }
            }
            EvidenceJson::Refused {
                cone,
                pi0_bijective,
            } => Evidence::Refused {
                cone: cone.clone(),
                pi0_bijective: *pi0_bijective,
            },
        };
        let cert = WheCert {
            functor,
            d: j.d,
            evidence,
        };
        let verdict = if cert.holds() { "certified" } else { "refused" };
        if j.verdict != verdict || j.semantics != cert.semantics() {
            return Err(Error::Verification(
                "verdict or semantics inconsistent with evidence".into(),
            ));
        }
        Ok(cert)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionJson {
    pub apex: String,
    pub steps: Vec<NatStepJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EvidenceJson {
    ExactIso {},
    NatZigzag {
        inverse: FunctorJson,
        unit: Vec<NatStepJson>,
        counit: Vec<NatStepJson>,
    },
    MaxElementContraction {
        source: ContractionJson,
        target: ContractionJson,
    },
    HomologyDEquivalence {
        cone: HomologySummary,
        pi0_bijective: bool,
    },
    Refused {
        cone: HomologySummary,
        pi0_bijective: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheCertJson {
    pub verdict: String,
    pub d: usize,
    pub semantics: String,
    pub functor: FunctorJson,
    pub evidence: EvidenceJson,
}

fn contraction_json(k: &Arc<FinCat>, c: &Contraction, t: &mut CatTable) -> ContractionJson {
    ContractionJson {
        apex: k.obj_name(c.apex).to_string(),
        steps: t.steps(&c.steps),
    }
}

fn contraction_from_json(
    k: &Arc<FinCat>,
    j: &ContractionJson,
    store: &CatStore,
) -> Result<Contraction> {
    let apex = k
        .obj(&j.apex)
        .map_err(|e| Error::Verification(e.to_string()))?;
    Ok(Contraction {
        apex,
        steps: store.steps(&Functor::identity(k), &j.steps)?,
    })
}

fn verify_contraction(k: &Arc<FinCat>, c: &Contraction) -> Result<()> {
    if c.apex.idx() >= k.num_objects() {
        return Err(Error::Verification("contraction apex out of range".into()));
    }
    let end = check_zigzag(&Functor::identity(k), &c.steps)?;
    if end != Functor::constant(k, k, c.apex) {
        return Err(Error::Verification(
            "contraction does not end at a constant functor".into(),
        ));
    }
    Ok(())
}

/// Finds a contraction of `k`: first an object reached from (or reaching) every
/// object naturally, then, when `max_len > 1` and `k` is small, a longer zigzag.
pub fn find_contraction(k: &Arc<FinCat>, max_len: usize, limits: &Limits) -> Option<Contraction> {
    let id = Functor::identity(k);
    // maximum elements first, then minimum elements
    for forward in [true, false] {
        for m in k.objects() {
            // a natural transformation id ⇒ Δm needs an arrow from every object to m
            let reaches = |x| {
                if forward {
                    !k.hom(x, m).is_empty()
                } else {
                    !k.hom(m, x).is_empty()
                }
            };
            if !k.objects().all(reaches) {
                continue;
            }
            let delta = Functor::constant(k, k, m);
            if id == delta {
                return Some(Contraction {
                    apex: m,
                    steps: Vec::new(),
                });
            }
            let found = if forward {
                find_nat_trans(&id, &delta)
            } else {
                find_nat_trans(&delta, &id)
            };
            if let Some(components) = found {
                let direction = if forward {
                    Direction::Forward
                } else {
                    Direction::Backward
                };
                let steps = vec![NatStep {
                    functor: delta,
                    direction,
                    components,
                }];
                return Some(Contraction { apex: m, steps });
            }
        }
    }
    if max_len > 1 {
        let small = Limits {
            max_objects: ZIGZAG_SEARCH_CAP.min(limits.max_objects),
            ..*limits
        };
        for m in k.objects() {
            let delta = Functor::constant(k, k, m);
            match nat_trans_zigzag(&id, &delta, max_len, &small) {
                Ok(Some(steps)) => return Some(Contraction { apex: m, steps }),
                Ok(None) => {}
                Err(_) => return None,
            }
        }
    }
    None
}

/// The homology stratum on its own: certificate iff the mapping cone of the
/// induced chain map has no homology through degree `d` and `π_0(F)` is a bijection.
pub fn homology_equivalence_cert(f: &Functor, d: usize, limits: &Limits) -> Result<WheCert> {
    let source = nerve_complex(f.source(), d, limits)?;
    let target = nerve_complex(f.target(), d, limits)?;
    let maps = chain_map(f, &source, &target)?;
    let cone = mapping_cone(&maps, &source.complex, &target.complex);
    let cone = homology(&cone, d)?;
    let pi0_bijective = pi0_bijective(f);
    let evidence = if pi0_bijective && cone.vanishes() {
        Evidence::Homology { cone }
    } else {
        Evidence::Refused {
            cone,
            pi0_bijective,
        }
    };
    Ok(WheCert {
        functor: f.clone(),
        d,
        evidence,
    })
}

/// Whether `F` induces a bijection on connected components.
pub fn pi0_bijective(f: &Functor) -> bool {
    let (nc, cc) = f.source().components();
    let (nd, cd) = f.target().components();
    if nc != nd {
        return false;
    }
    let mut image = vec![usize::MAX; nc];
    for o in f.source().objects() {
        let t = cd[f.on_obj(o).idx()];
        let s = cc[o.idx()];
        if image[s] == usize::MAX {
            image[s] = t;
        } else if image[s] != t {
            return false;
        }
    }
    let mut hit = vec![false; nd];
    image
        .iter()
        .all(|&t| t != usize::MAX && !std::mem::replace(&mut hit[t], true))
}

/// Tries the strata in order: exact isomorphism, natural-transformation zigzags
/// through the hinted functors, contraction of source and target, a bounded
/// search for a homotopy inverse, and finally homology through degree `d`.
pub fn whe_certificate(
    f: &Functor,
    max_zigzag: usize,
    d: usize,
    hints: Option<&WheHints>,
    limits: &Limits,
) -> Result<WheCert> {
    let cert = |evidence| WheCert {
        functor: f.clone(),
        d,
        evidence,
    };
    if f.is_bijective() {
        return Ok(cert(Evidence::ExactIso));
    }
    if let Some(h) = hints {
        if let Some(ev) = hinted_zigzag(f, h) {
            return Ok(cert(ev));
        }
    }
    if !f.source().is_empty() {
        if let Some(target) = find_contraction(f.target(), max_zigzag, limits) {
            if let Some(source) = find_contraction(f.source(), max_zigzag, limits) {
                return Ok(cert(Evidence::Contraction { source, target }));
            }
        }
    }
    if let Some(ev) = search_inverse(f, max_zigzag, limits) {
        return Ok(cert(ev));
    }
    homology_equivalence_cert(f, d, limits)
}

fn hinted_zigzag(f: &Functor, h: &WheHints) -> Option<Evidence> {
    let g = h.inverse.as_ref()?;
    let gf = g.after(f).ok()?;
    let fg = f.after(g).ok()?;
    let mut unit_path = h.unit_through.clone();
    unit_path.push(gf);
    let mut counit_path = h.counit_through.clone();
    counit_path.push(Functor::identity(f.target()));
    let unit = zigzag_through(&Functor::identity(f.source()), &unit_path)?;
    let counit = zigzag_through(&fg, &counit_path)?;
    Some(Evidence::NatZigzag {
        inverse: g.clone(),
        unit,
        counit,
    })
}

fn search_inverse(f: &Functor, max_zigzag: usize, limits: &Limits) -> Option<Evidence> {
    if max_zigzag == 0 {
        return None;
    }
    let (c, d) = (f.source(), f.target());
    let candidates = enumerate_functors(d, c, INVERSE_SEARCH_CAP).ok()?;
    let candidates: Vec<Functor> = candidates
        .into_iter()
        .filter_map(|(om, mm)| Functor::new(d.clone(), c.clone(), om, mm).ok())
        .collect();
    let id_c = Functor::identity(c);
    let id_d = Functor::identity(d);
    // single natural transformations first
    for g in &candidates {
        let (gf, fg) = (g.after(f).ok()?, f.after(g).ok()?);
        let unit = if gf == id_c {
            Some(Vec::new())
        } else {
            connect(&id_c, &gf).map(|s| vec![s])
        };
        let Some(unit) = unit else { continue };
        let counit = if fg == id_d {
            Some(Vec::new())
        } else {
            connect(&fg, &id_d).map(|s| vec![s])
        };
        if let Some(counit) = counit {
            return Some(Evidence::NatZigzag {
                inverse: g.clone(),
                unit,
                counit,
            });
        }
    }
    if max_zigzag < 2 {
        return None;
    }
    let small = Limits {
        max_objects: ZIGZAG_SEARCH_CAP.min(limits.max_objects),
        ..*limits
    };
    for g in &candidates {
        let (gf, fg) = (g.after(f).ok()?, f.after(g).ok()?);
        let unit = match nat_trans_zigzag(&id_c, &gf, max_zigzag, &small) {
            Ok(Some(u)) => u,
            Ok(None) => continue,
            Err(_) => return None,
        };
        match nat_trans_zigzag(&fg, &id_d, max_zigzag, &small) {
            Ok(Some(counit)) => {
                return Some(Evidence::NatZigzag {
                    inverse: g.clone(),
                    unit,
                    counit,
                })
            }
            Ok(None) => {}
            Err(_) => return None,
        }
    }
    None
}

/// Degree, zigzag length and size limits shared by every certificate search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertOptions {
    pub d: usize,
    pub max_zigzag: usize,
    pub limits: Limits,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            d: 2,
            max_zigzag: 2,
            limits: Limits::default(),
        }
    }
}

impl CertOptions {
    pub fn whe(&self, f: &Functor, hints: Option<&WheHints>) -> Result<WheCert> {
        whe_certificate(f, self.max_zigzag, self.d, hints, &self.limits)
    }
}
