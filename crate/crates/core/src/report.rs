//! Versioned JSON documents for every batch operation, with re-checking.
//!
//! A document records its input, the bounds it was computed with and, for
//! certificates, every category the evidence mentions, so `verify` needs
//! nothing but the document.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::classify::{
    classification_homology_table, completeness_report, ho_homset, hom_space_certificate,
    htac_certificate, saturation_report, segal_certificate, segal_cube, CompletenessJson,
    CompletenessReport, HoHomJson, HomSpaceCert, HomSpaceCertJson, HtacCert, HtacCertJson,
    LevelHomology, SaturationJson, SaturationReport, SegalCert, SegalCertJson,
};
use crate::error::{Error, Result};
use crate::evidence::{same_functor, CatStore, CatTable, SCHEMA_VERSION};
use crate::fincat::{
    arrow_category, slice, FinCat, Functor, FunctorCat, Obj, RawCategory, SliceSide,
};
use crate::groth::{
    check_fibration, fiber, verify_canonical_iso, verify_report, FibrationReport, FibrationSummary,
    Variant,
};
use crate::homology::{find_contraction, homology, nerve_complex, CertOptions, HomologySummary};
use crate::limits::Limits;
use crate::relcat::{
    rel_functor_category, two_out_of_three, weq_rel_fun, zigzag_category, zigzag_shape, RelCat,
    ZigzagType,
};

/// Subcommands that produce a document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    NerveHomology,
    Zigzag,
    CheckFibration,
    TwoSided,
    Htac,
    HomSpace,
    Classify,
    Segal,
    HoHom,
    Saturation,
    Completeness,
}

/// A derived category to run on instead of the one given.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Construction {
    /// The arrow category, weak equivalences being squares of weak equivalences.
    Arrow,
}

/// The category a document was computed from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<Construction>,
    pub category: RawCategory,
}

/// A functor leg of an arrow or zigzag category.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Leg {
    Dom,
    Codom,
}

/// Bounds and parameters; every document records the full set it used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub d: usize,
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub max_zigzag: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zigzag_type: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leg: Option<Leg>,
    pub limits: Limits,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            d: 2,
            k: 2,
            l: 4,
            n: 1,
            max_zigzag: 2,
            x: None,
            y: None,
            zigzag_type: None,
            leg: None,
            limits: Limits::default(),
        }
    }
}

impl Config {
    pub fn cert_options(&self) -> CertOptions {
        CertOptions {
            d: self.d,
            max_zigzag: self.max_zigzag,
            limits: self.limits,
        }
    }

    fn zigzag_type(&self, default: &[i64]) -> ZigzagType {
        ZigzagType::new(self.zigzag_type.as_deref().unwrap_or(default))
    }

    fn object(&self, c: &FinCat, name: &Option<String>, flag: &str) -> Result<Obj> {
        let name = name
            .as_deref()
            .ok_or_else(|| Error::InvalidBound(format!("--{flag} is required")))?;
        c.obj(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleJson {
    pub f: String,
    pub g: String,
    pub gf: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateJson {
    pub objects: usize,
    pub morphisms: usize,
    pub weak_equivalences: usize,
    pub composable_pairs: usize,
    pub two_out_of_three: bool,
    pub witness: Option<TripleJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NerveHomologyJson {
    /// Nondegenerate simplices per degree, through `d + 1`.
    pub simplices: Vec<usize>,
    pub homology: HomologySummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZigzagJson {
    pub zigzag_type: Vec<i64>,
    pub x: String,
    pub y: String,
    pub objects: Vec<String>,
    pub morphisms: usize,
    /// An object every other object maps to uniquely, if there is one.
    pub maximum: Option<String>,
    pub homology: HomologySummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberJson {
    pub base: String,
    pub objects: usize,
    pub morphisms: usize,
    /// For arrow categories: whether the fiber is isomorphic to the coslice
    /// (dom) or slice (codom) by the evident functor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub slice_iso: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFibrationJson {
    pub leg: Leg,
    /// `None` for arrow categories; otherwise the zigzag type `k` of `weq RelFun(k, C) → weq C`.
    pub zigzag_type: Option<Vec<i64>>,
    pub fibration: FibrationSummary,
    pub fibers: Vec<FiberJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoSidedJson {
    pub zigzag_type: Vec<i64>,
    pub canonical_iso: bool,
    pub objects: usize,
    pub morphisms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub levels: Vec<LevelHomology>,
}

/// The report proper, tagged by subcommand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "report", rename_all = "kebab-case")]
pub enum Body {
    Validate(ValidateJson),
    NerveHomology(NerveHomologyJson),
    Zigzag(ZigzagJson),
    CheckFibration(CheckFibrationJson),
    TwoSided(TwoSidedJson),
    Htac(HtacCertJson),
    HomSpace(Box<HomSpaceCertJson>),
    Classify(ClassifyJson),
    Segal(Box<SegalCertJson>),
    HoHom(HoHomJson),
    Saturation(SaturationJson),
    Completeness(Box<CompletenessJson>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema_version: u32,
    pub config: Config,
    pub input: InputSpec,
    #[serde(flatten)]
    pub body: Body,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub categories: BTreeMap<String, RawCategory>,
}

impl Document {
    /// Whether the report is a success: a certificate issued, a property found.
    pub fn passed(&self) -> bool {
        match &self.body {
            Body::Validate(_)
            | Body::NerveHomology(_)
            | Body::Zigzag(_)
            | Body::Classify(_)
            | Body::HoHom(_) => true,
            Body::CheckFibration(j) => j.fibration.verdict == "yes",
            Body::TwoSided(j) => j.canonical_iso,
            Body::Htac(j) => j.verdict == "pass",
            Body::HomSpace(j) => j.verdict == "pass",
            Body::Segal(j) => j.verdict == "pass",
            Body::Saturation(j) => j.verdict != "not-saturated",
            Body::Completeness(j) => j.verdict == "complete-at-bound",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Document> {
        let doc: Document =
            serde_json::from_str(text).map_err(|e| Error::InputParse(e.to_string()))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(Error::InputParse(format!(
                "schema version {} is not supported (expected {SCHEMA_VERSION})",
                doc.schema_version
            )));
        }
        Ok(doc)
    }
}

/// Builds the relative category a document works on.
pub fn load_input(input: &InputSpec, limits: &Limits) -> Result<RelCat> {
    let base = RelCat::from_raw(&input.category)?;
    match input.construction {
        None => Ok(base),
        Some(Construction::Arrow) => {
            let shape = zigzag_shape(&ZigzagType::new(&[1]));
            Ok(rel_functor_category(&shape, &base, limits)?.rel)
        }
    }
}

fn names(c: &FinCat, objs: impl Iterator<Item = Obj>) -> Vec<String> {
    objs.map(|o| c.obj_name(o).to_string()).collect()
}

/// Runs one subcommand.
pub fn run(command: Command, input: &InputSpec, config: &Config) -> Result<Document> {
    let limits = &config.limits;
    let opts = config.cert_options();
    let mut table = CatTable::new();
    let body = match command {
        Command::CheckFibration => Body::CheckFibration(fibration_report(input, config)?),
        _ => {
            let c = load_input(input, limits)?;
            let und = c.und();
            match command {
                Command::Validate => {
                    let witness = two_out_of_three(&c);
                    Body::Validate(ValidateJson {
                        objects: und.num_objects(),
                        morphisms: und.num_morphisms(),
                        weak_equivalences: c.weq_flags().iter().filter(|&&w| w).count(),
                        composable_pairs: und.num_composable_pairs(),
                        two_out_of_three: witness.is_none(),
                        witness: witness.map(|w| TripleJson {
                            f: und.mor_name(w.f).into(),
                            g: und.mor_name(w.g).into(),
                            gf: und.mor_name(w.gf).into(),
                        }),
                    })
                }
                Command::NerveHomology => {
                    let nerve = nerve_complex(und, config.d, limits)?;
                    Body::NerveHomology(NerveHomologyJson {
                        simplices: (0..=nerve.complex.top()).map(|n| nerve.count(n)).collect(),
                        homology: homology(&nerve.complex, config.d)?,
                    })
                }
                Command::Zigzag => {
                    let k = config.zigzag_type(&[-1, 1, -1]);
                    let (x, y) = (
                        config.object(und, &config.x, "x")?,
                        config.object(und, &config.y, "y")?,
                    );
                    let zz = zigzag_category(&c, &k, x, y, limits)?;
                    let cat = zz.cat();
                    let maximum = find_contraction(cat, 1, limits)
                        .filter(|ct| {
                            !cat.is_empty()
                                && ct
                                    .steps
                                    .iter()
                                    .all(|s| s.direction == crate::fincat::Direction::Forward)
                        })
                        .map(|ct| cat.obj_name(ct.apex).to_string());
                    let nerve = nerve_complex(cat, config.d, limits)?;
                    Body::Zigzag(ZigzagJson {
                        zigzag_type: k.entries().to_vec(),
                        x: und.obj_name(x).into(),
                        y: und.obj_name(y).into(),
                        objects: names(cat, cat.objects()),
                        morphisms: cat.num_morphisms(),
                        maximum,
                        homology: homology(&nerve.complex, config.d)?,
                    })
                }
                Command::TwoSided => {
                    let k = config.zigzag_type(&[-1, 1, -1]);
                    let iso = verify_canonical_iso(&c, &k, limits)?;
                    let fc = weq_rel_fun(&c, &k, limits)?;
                    Body::TwoSided(TwoSidedJson {
                        zigzag_type: k.entries().to_vec(),
                        canonical_iso: iso,
                        objects: fc.cat().num_objects(),
                        morphisms: fc.cat().num_morphisms(),
                    })
                }
                Command::Htac => {
                    Body::Htac(htac_certificate(&c, config.k, &opts)?.to_json(&mut table))
                }
                Command::HomSpace => {
                    let (x, y) = (
                        config.object(und, &config.x, "x")?,
                        config.object(und, &config.y, "y")?,
                    );
                    let cert = hom_space_certificate(&c, x, y, config.k, &opts)?;
                    Body::HomSpace(Box::new(cert.to_json(&mut table)))
                }
                Command::Classify => Body::Classify(ClassifyJson {
                    levels: classification_homology_table(&c, config.n, config.d, limits)?,
                }),
                Command::Segal => Body::Segal(Box::new(
                    segal_certificate(&c, config.n, &opts)?.to_json(&mut table),
                )),
                Command::HoHom => {
                    let (x, y) = (
                        config.object(und, &config.x, "x")?,
                        config.object(und, &config.y, "y")?,
                    );
                    Body::HoHom(ho_homset(&c, x, y, config.l, limits)?.to_json(&c))
                }
                Command::Saturation => {
                    Body::Saturation(saturation_report(&c, config.l, limits)?.to_json())
                }
                Command::Completeness => Body::Completeness(Box::new(
                    completeness_report(&c, config.l, &opts)?.to_json(&mut table),
                )),
                Command::CheckFibration => unreachable!(),
            }
        }
    };
    table.check_size(limits)?;
    Ok(Document {
        schema_version: SCHEMA_VERSION,
        config: config.clone(),
        input: input.clone(),
        body,
        categories: table.into_map(),
    })
}

/// The leg functor a fibration check runs on, with the arrow category or
/// zigzag functor category it starts from.
fn leg_functor(
    input: &InputSpec,
    config: &Config,
) -> Result<(Functor, FunctorCat, Variant, Option<ZigzagType>)> {
    let limits = &config.limits;
    let leg = config.leg.unwrap_or(Leg::Dom);
    let base = RelCat::from_raw(&input.category)?;
    match input.construction {
        Some(Construction::Arrow) => {
            let (arrows, dom, codom) = arrow_category(base.und(), limits)?;
            Ok(match leg {
                Leg::Dom => (dom, arrows, Variant::Fibration, None),
                Leg::Codom => (codom, arrows, Variant::Opfibration, None),
            })
        }
        None => {
            let k = config.zigzag_type(&[-1, 1, -1]);
            if k.is_empty() {
                return Err(Error::BadZigzagType(
                    "the zigzag type must have at least one arrow".into(),
                ));
            }
            let fc = weq_rel_fun(&base, &k, limits)?;
            let w = weq_rel_fun(&base, &ZigzagType::new(&[]), limits)?;
            let end = match leg {
                Leg::Dom => 0,
                Leg::Codom => k.len(),
            };
            let point = ZigzagType::new(&[]);
            let map = crate::relcat::ShapeMap::new(point, k.clone(), vec![end])?;
            let f = crate::relcat::precompose_along(&map, &fc, &w)?;
            let variant = match leg {
                Leg::Dom => Variant::Opfibration,
                Leg::Codom => Variant::Fibration,
            };
            Ok((f, fc, variant, Some(k)))
        }
    }
}

fn fibration_report(input: &InputSpec, config: &Config) -> Result<CheckFibrationJson> {
    let leg = config.leg.unwrap_or(Leg::Dom);
    let (p, arrows, variant, k) = leg_functor(input, config)?;
    let report = check_fibration(&p, variant);
    let base = p.target();
    let fibers = base
        .objects()
        .map(|b| {
            let (fib, incl) = fiber(&p, b)?;
            let slice_iso = match k {
                None => Some(arrow_fiber_is_slice(&arrows, &fib, &incl, b, leg)?),
                Some(_) => None,
            };
            Ok(FiberJson {
                base: base.obj_name(b).into(),
                objects: fib.num_objects(),
                morphisms: fib.num_morphisms(),
                slice_iso,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckFibrationJson {
        leg,
        zigzag_type: k.map(|k| k.entries().to_vec()),
        fibration: report.summary(),
        fibers,
    })
}

/// Whether the evident functor from the fiber of `dom` (resp. `codom`) over
/// `b` to the coslice `b\C` (resp. slice `C/b`) is an isomorphism.
fn arrow_fiber_is_slice(
    arrows: &FunctorCat,
    fib: &Arc<FinCat>,
    incl: &Functor,
    b: Obj,
    leg: Leg,
) -> Result<bool> {
    let c = arrows.values();
    let (side, moving) = match leg {
        Leg::Dom => (SliceSide::Under, 1),
        Leg::Codom => (SliceSide::Over, 0),
    };
    let (target, _) = slice(c, b, side)?;
    let arrow_of = |o: Obj| arrows.mor_map(incl.on_obj(o))[1];
    let f = Functor::by_names(
        fib.clone(),
        target,
        |name| {
            c.mor_name(arrow_of(fib.obj(name).expect("fiber object")))
                .to_string()
        },
        |name| {
            let m = fib.mor(name).expect("fiber morphism");
            let h = arrows.components(incl.on_mor(m))[moving];
            format!(
                "{}:{}->{}",
                c.mor_name(h),
                c.mor_name(arrow_of(fib.src(m))),
                c.mor_name(arrow_of(fib.tgt(m)))
            )
        },
    );
    Ok(f.is_ok_and(|f| f.is_bijective()))
}

fn mismatch(what: &str) -> Error {
    Error::Verification(format!("{what} does not match its recomputation"))
}

/// Re-checks a document from its serialized form: certificates by checking
/// their evidence, plain reports by recomputing them.
pub fn verify(doc: &Document) -> Result<()> {
    let config = &doc.config;
    let opts = config.cert_options();
    let store = CatStore::new(&doc.categories)?;
    let c = load_input(&doc.input, &config.limits)?;
    let same_input = |raw: &RawCategory| -> Result<()> {
        if RelCat::from_raw(raw)? != c {
            return Err(Error::Verification(
                "embedded input differs from the document input".into(),
            ));
        }
        Ok(())
    };
    // re-serialization must reproduce the document byte for byte
    let reencode = |body: Body, table: CatTable| -> Result<()> {
        let again = Document {
            body,
            categories: table.into_map(),
            ..doc.clone()
        };
        if again.to_json() != doc.to_json() {
            return Err(Error::Verification(
                "document is not in canonical form".into(),
            ));
        }
        Ok(())
    };
    match &doc.body {
        Body::CheckFibration(j) => {
            let (p, _, variant, _) = leg_functor(&doc.input, config)?;
            if j.fibration.variant != variant || Some(j.leg) != config.leg.or(Some(Leg::Dom)) {
                return Err(Error::Verification(
                    "fibration variant does not match the leg".into(),
                ));
            }
            let report = FibrationReport::from_summary(p, &j.fibration)?;
            if !verify_report(&report) {
                return Err(Error::Verification(
                    "fibration report does not check".into(),
                ));
            }
            if fibration_report(&doc.input, config)?.fibers != j.fibers {
                return Err(mismatch("fiber table"));
            }
        }
        Body::Htac(j) => {
            same_input(&j.input)?;
            let cert = HtacCert::from_json(j, &store)?;
            cert.verify(&opts)?;
            let mut t = CatTable::new();
            reencode(Body::Htac(cert.to_json(&mut t)), t)?;
        }
        Body::HomSpace(j) => {
            same_input(&j.htac.input)?;
            let cert = HomSpaceCert::from_json(j, &store)?;
            cert.verify(&opts)?;
            let und = c.und();
            if config.x.as_deref() != Some(cert.x.as_str())
                || config.y.as_deref() != Some(cert.y.as_str())
            {
                return Err(Error::Verification(
                    "endpoints differ from the configuration".into(),
                ));
            }
            und.obj(&cert.x)?;
            und.obj(&cert.y)?;
            let mut t = CatTable::new();
            reencode(Body::HomSpace(Box::new(cert.to_json(&mut t))), t)?;
        }
        Body::Segal(j) => {
            let cert = SegalCert::from_json(j, &store)?;
            cert.verify(&opts)?;
            if cert.n != config.n {
                return Err(Error::Verification(
                    "n differs from the configuration".into(),
                ));
            }
            let (back, _, _) = segal_cube(&c, cert.n, &opts)?;
            let sq = &cert.cert.square;
            let same = same_functor(&back.top, &sq.top)
                && same_functor(&back.left, &sq.left)
                && same_functor(&back.right, &sq.right)
                && same_functor(&back.bottom, &sq.bottom);
            if !same {
                return Err(Error::Verification(
                    "certified square is not the Segal square of the input".into(),
                ));
            }
            let mut t = CatTable::new();
            reencode(Body::Segal(Box::new(cert.to_json(&mut t))), t)?;
        }
        Body::Saturation(j) => {
            same_input(&j.input)?;
            let report = SaturationReport::from_json(j)?;
            report.verify()?;
            reencode(Body::Saturation(report.to_json()), CatTable::new())?;
        }
        Body::Completeness(j) => {
            same_input(&j.saturation.input)?;
            let report = CompletenessReport::from_json(j, &store)?;
            report.verify(&opts)?;
            let mut t = CatTable::new();
            reencode(Body::Completeness(Box::new(report.to_json(&mut t))), t)?;
        }
        Body::Validate(_)
        | Body::NerveHomology(_)
        | Body::Zigzag(_)
        | Body::TwoSided(_)
        | Body::Classify(_)
        | Body::HoHom(_) => {
            let command = match &doc.body {
                Body::Validate(_) => Command::Validate,
                Body::NerveHomology(_) => Command::NerveHomology,
                Body::Zigzag(_) => Command::Zigzag,
                Body::TwoSided(_) => Command::TwoSided,
                Body::Classify(_) => Command::Classify,
                _ => Command::HoHom,
            };
            if run(command, &doc.input, config)?.body != doc.body {
                return Err(mismatch("report"));
            }
        }
    }
    Ok(())
}

/// A short human-readable summary.
pub fn text_summary(doc: &Document) -> String {
    let mut s = String::new();
    let status = if doc.passed() { "pass" } else { "fail" };
    match &doc.body {
        Body::Validate(j) => {
            let _ = writeln!(
                s,
                "valid: {} objects, {} morphisms, {} weak equivalences, {} composable pairs",
                j.objects, j.morphisms, j.weak_equivalences, j.composable_pairs
            );
            match &j.witness {
                None => s.push_str("two-out-of-three: holds\n"),
                Some(w) => {
                    let _ = writeln!(
                        s,
                        "two-out-of-three: fails at f = {}, g = {}, g∘f = {}",
                        w.f, w.g, w.gf
                    );
                }
            }
        }
        Body::NerveHomology(j) => {
            let _ = writeln!(s, "simplices per degree: {:?}", j.simplices);
            let _ = writeln!(s, "{}", j.homology);
        }
        Body::Zigzag(j) => {
            let _ = writeln!(
                s,
                "C^{}({}, {}): {} objects, {} morphisms",
                ZigzagType::new(&j.zigzag_type),
                j.x,
                j.y,
                j.objects.len(),
                j.morphisms
            );
            if let Some(m) = &j.maximum {
                let _ = writeln!(s, "maximum: {m}");
            }
            let _ = writeln!(s, "{}", j.homology);
        }
        Body::CheckFibration(j) => {
            let _ = writeln!(
                s,
                "{} leg is {}a split {}: {}",
                match j.leg {
                    Leg::Dom => "dom",
                    Leg::Codom => "codom",
                },
                if j.fibration.split { "" } else { "not " },
                match j.fibration.variant {
                    Variant::Fibration => "fibration",
                    Variant::Opfibration => "opfibration",
                },
                j.fibration.verdict
            );
            let which = match j.leg {
                Leg::Dom => "coslice",
                Leg::Codom => "slice",
            };
            for f in &j.fibers {
                let iso = match f.slice_iso {
                    Some(true) => format!(", isomorphic to the {which}"),
                    Some(false) => format!(", not isomorphic to the {which}"),
                    None => String::new(),
                };
                let _ = writeln!(
                    s,
                    "  fiber over {}: {} objects, {} morphisms{iso}",
                    f.base, f.objects, f.morphisms
                );
            }
        }
        Body::TwoSided(j) => {
            let _ = writeln!(
                s,
                "weq RelFun({}, C): {} objects, {} morphisms; canonical isomorphism with the two-sided construction: {}",
                ZigzagType::new(&j.zigzag_type),
                j.objects,
                j.morphisms,
                j.canonical_iso
            );
        }
        Body::Htac(j) => {
            let _ = writeln!(
                s,
                "three-arrow calculus (K = {}, d = {}): {}",
                j.k_max, j.d, j.verdict
            );
            if let Some(w) = j.weakest {
                let _ = writeln!(s, "weakest certificate: {w}");
            }
            if let Some(f) = &j.failure {
                let _ = writeln!(
                    s,
                    "first failure: k = {}, l = {}, X = {}, Y = {}",
                    f.k, f.l, f.x, f.y
                );
            }
        }
        Body::HomSpace(j) => {
            let _ = writeln!(s, "hom-space square for ({}, {}): {}", j.x, j.y, j.verdict);
            if let Some(m) = &j.missing_prerequisite {
                let _ = writeln!(s, "missing prerequisite: {m}");
            }
        }
        Body::Classify(j) => {
            for row in &j.levels {
                let _ = writeln!(
                    s,
                    "level {}: {} objects, {} morphisms; {}",
                    row.level, row.objects, row.morphisms, row.homology
                );
            }
        }
        Body::Segal(j) => {
            let _ = writeln!(
                s,
                "Segal square n = {} (d = {}): {}; front face pullback: {}, back face pullback: {}",
                j.n, j.d, j.verdict, j.front_is_pullback, j.back_is_pullback
            );
        }
        Body::HoHom(j) => {
            let _ = writeln!(
                s,
                "Ho({}, {}) at L = {}: {} zigzags in {} classes, stabilized: {}",
                j.x,
                j.y,
                j.bound,
                j.zigzags,
                j.classes.len(),
                j.stabilized
            );
            for cl in &j.classes {
                let _ = writeln!(s, "  [{}] ({} zigzags)", cl.text, cl.size);
            }
        }
        Body::Saturation(j) => {
            let _ = writeln!(s, "saturation at L = {}: {}", j.bound, j.verdict);
            for e in &j.entries {
                let _ = writeln!(s, "  {}: {}", e.morphism, e.verdict);
            }
        }
        Body::Completeness(j) => {
            let _ = writeln!(
                s,
                "completeness at (L, d) = ({}, {}): {}",
                j.bound, j.d, j.verdict
            );
            if !j.discrepancy.is_empty() {
                let _ = writeln!(s, "discrepancy: {}", j.discrepancy.join(", "));
            }
        }
    }
    let _ = writeln!(s, "result: {status}");
    s
}
