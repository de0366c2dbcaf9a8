use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, FinCatBuilder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub g: String,
    pub f: String,
    pub gf: String,
}

/// The JSON input format for categories; relative categories add `weq_generators`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    #[serde(default)]
    pub composition: Vec<RawComposite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weq_generators: Option<Vec<String>>,
}

impl RawCategory {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InputParse(e.to_string()))
    }
}

/// Validates a raw description and builds the category.
///
/// Objects keep their input order; morphisms are sorted by identifier.
/// Composites with an identity may be omitted from the table; every other
/// composable pair must be listed.
pub fn validate_category(raw: &RawCategory) -> Result<FinCat> {
    let mut b = FinCatBuilder::new();
    for o in &raw.objects {
        b.add_object(o.clone())?;
    }
    let mut mors: Vec<&RawMorphism> = raw.morphisms.iter().collect();
    mors.sort_by(|a, b| a.id.cmp(&b.id));
    for m in mors {
        let s = b
            .find_obj(&m.src)
            .ok_or_else(|| Error::UnknownObject(m.src.clone()))?;
        let t = b
            .find_obj(&m.tgt)
            .ok_or_else(|| Error::UnknownObject(m.tgt.clone()))?;
        b.add_morphism(m.id.clone(), s, t)?;
    }
    for (o, m) in &raw.identities {
        let obj = b
            .find_obj(o)
            .ok_or_else(|| Error::UnknownObject(o.clone()))?;
        let mor = b
            .find_mor(m)
            .ok_or_else(|| Error::UnknownMorphism(m.clone()))?;
        if b.src(mor) != obj || b.tgt(mor) != obj {
            return Err(Error::BadIdentity(format!(
                "`{m}` is not an endomorphism of `{o}`"
            )));
        }
        if b.identity_of(obj).is_some() {
            return Err(Error::Duplicate(format!("identity of `{o}`")));
        }
        b.set_identity(obj, mor);
    }
    for c in &raw.composition {
        let look = |name: &str| {
            b.find_mor(name)
                .ok_or_else(|| Error::UnknownMorphism(name.into()))
        };
        let (g, f, gf) = (look(&c.g)?, look(&c.f)?, look(&c.gf)?);
        b.set_composite(g, f, gf)?;
    }
    b.fill_identity_composites()?;
    b.build()
}

/// Serializes a category back to the input format, listing only composites
/// of two non-identity morphisms.
pub fn to_raw(c: &FinCat) -> RawCategory {
    let mut composition: Vec<RawComposite> = c
        .composition_table()
        .filter(|&(g, f, _)| !c.is_identity(g) && !c.is_identity(f))
        .map(|(g, f, h)| RawComposite {
            g: c.mor_name(g).into(),
            f: c.mor_name(f).into(),
            gf: c.mor_name(h).into(),
        })
        .collect();
    composition.sort_by(|a, b| (&a.g, &a.f).cmp(&(&b.g, &b.f)));
    let mut morphisms: Vec<RawMorphism> = c
        .morphisms()
        .map(|m| RawMorphism {
            id: c.mor_name(m).into(),
            src: c.obj_name(c.src(m)).into(),
            tgt: c.obj_name(c.tgt(m)).into(),
        })
        .collect();
    // the order validate_category rebuilds in, so output survives a round trip
    morphisms.sort_by(|a, b| a.id.cmp(&b.id));
    RawCategory {
        objects: c.obj_names().to_vec(),
        morphisms,
        identities: c
            .objects()
            .map(|o| (c.obj_name(o).to_string(), c.mor_name(c.id(o)).to_string()))
            .collect(),
        composition,
        weq_generators: None,
    }
}
