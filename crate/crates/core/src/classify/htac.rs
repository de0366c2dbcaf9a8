use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{same_functor, CatStore, CatTable};
use crate::fincat::{Functor, Obj, RawCategory};
use crate::homology::{CertKind, CertOptions, WheCert, WheCertJson};
use crate::relcat::{insertion_functor, RelCat, ShapeMap, ZigzagType};
use crate::util::par_map;

/// One instance of the three-arrow condition: the insertion functor
/// `C^[-1;k;l;-1](X, Y) → C^[-1;k;-1;l;-1](X, Y)` and its certificate.
#[derive(Clone, Debug)]
pub struct HtacCell {
    pub k: usize,
    pub l: usize,
    pub x: Obj,
    pub y: Obj,
    pub cert: WheCert,
}

/// The three-arrow condition checked for all `k, l ≤ k_max` and all pairs of objects.
#[derive(Clone, Debug)]
pub struct HtacCert {
    pub rel: RelCat,
    pub k_max: usize,
    pub d: usize,
    pub cells: Vec<HtacCell>,
}

/// The shape map whose precomposition inserts an identity weak equivalence
/// between the `k` and `l` runs of `[-1;k;l;-1]`.
pub fn htac_shape_map(k: usize, l: usize) -> Result<ShapeMap> {
    let before = ZigzagType::new(&[-1, k as i64, l as i64, -1]);
    ShapeMap::insert_identity(&before, 1 + k, true)
}

/// The insertion functor of one cell.
pub fn htac_insertion(
    c: &RelCat,
    k: usize,
    l: usize,
    x: Obj,
    y: Obj,
    opts: &CertOptions,
) -> Result<Functor> {
    let (_, _, f) = insertion_functor(c, &htac_shape_map(k, l)?, Some((x, y)), &opts.limits)?;
    Ok(f)
}

impl HtacCert {
    pub fn holds(&self) -> bool {
        self.cells.iter().all(|c| c.cert.holds())
    }

    /// The first cell without a certificate, in `(k, l, X, Y)` order.
    pub fn first_failure(&self) -> Option<&HtacCell> {
        self.cells.iter().find(|c| !c.cert.holds())
    }

    /// The weakest certificate stratum used, when every cell is certified.
    pub fn weakest(&self) -> Option<CertKind> {
        self.cells
            .iter()
            .map(|c| c.cert.kind())
            .collect::<Option<Vec<_>>>()?
            .into_iter()
            .max()
    }

    /// Re-checks every cell, including that its functor is exactly the insertion.
    pub fn verify(&self, opts: &CertOptions) -> Result<()> {
        let und = self.rel.und();
        let mut expected = Vec::new();
        for k in 0..=self.k_max {
            for l in 0..=self.k_max {
                for x in und.objects() {
                    for y in und.objects() {
                        expected.push((k, l, x, y));
                    }
                }
            }
        }
        let got: Vec<_> = self.cells.iter().map(|c| (c.k, c.l, c.x, c.y)).collect();
        if got != expected {
            return Err(Error::Verification(
                "cells do not cover every (k, l, X, Y) in order".into(),
            ));
        }
        for cell in &self.cells {
            let f = htac_insertion(&self.rel, cell.k, cell.l, cell.x, cell.y, opts)?;
            if !same_functor(&f, &cell.cert.functor) {
                return Err(Error::Verification(format!(
                    "cell (k={}, l={}) does not certify the insertion functor",
                    cell.k, cell.l
                )));
            }
            cell.cert.verify(&opts.limits)?;
        }
        Ok(())
    }

    pub fn to_json(&self, t: &mut CatTable) -> HtacCertJson {
        let und = self.rel.und();
        let failure = self.first_failure().map(|c| HtacWitness {
            k: c.k,
            l: c.l,
            x: und.obj_name(c.x).to_string(),
            y: und.obj_name(c.y).to_string(),
        });
        HtacCertJson {
            verdict: if self.holds() { "pass" } else { "fail" }.into(),
            k_max: self.k_max,
            d: self.d,
            weakest: self.weakest(),
            failure,
            input: self.rel.to_raw(),
            cells: self
                .cells
                .iter()
                .map(|c| HtacCellJson {
                    k: c.k,
                    l: c.l,
                    x: und.obj_name(c.x).to_string(),
                    y: und.obj_name(c.y).to_string(),
                    cert: c.cert.to_json(t),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &HtacCertJson, store: &CatStore) -> Result<HtacCert> {
        let rel = RelCat::from_raw(&j.input)?;
        let und = rel.und().clone();
        let cells = j
            .cells
            .iter()
            .map(|c| {
                Ok(HtacCell {
                    k: c.k,
                    l: c.l,
                    x: und.obj(&c.x)?,
                    y: und.obj(&c.y)?,
                    cert: WheCert::from_json(&c.cert, store)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let cert = HtacCert {
            rel,
            k_max: j.k_max,
            d: j.d,
            cells,
        };
        let verdict = if cert.holds() { "pass" } else { "fail" };
        if j.verdict != verdict || j.weakest != cert.weakest() {
            return Err(Error::Verification(
                "recorded verdict does not match the cells".into(),
            ));
        }
        Ok(cert)
    }
}

/// Checks the three-arrow condition for all `0 ≤ k, l ≤ k_max` and all
/// objects `X, Y`, certifying each insertion functor by any stratum.
pub fn htac_certificate(c: &RelCat, k_max: usize, opts: &CertOptions) -> Result<HtacCert> {
    if k_max == 0 {
        return Err(Error::InvalidBound("K must be at least 1".into()));
    }
    let und = c.und();
    let mut keys = Vec::new();
    for k in 0..=k_max {
        for l in 0..=k_max {
            for x in und.objects() {
                for y in und.objects() {
                    keys.push((k, l, x, y));
                }
            }
        }
    }
    let certs = par_map(keys.len(), |i| {
        let (k, l, x, y) = keys[i];
        opts.whe(&htac_insertion(c, k, l, x, y, opts)?, None)
    });
    let cells = keys
        .into_iter()
        .zip(certs)
        .map(|((k, l, x, y), cert)| {
            Ok(HtacCell {
                k,
                l,
                x,
                y,
                cert: cert?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HtacCert {
        rel: c.clone(),
        k_max,
        d: opts.d,
        cells,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtacWitness {
    pub k: usize,
    pub l: usize,
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtacCellJson {
    pub k: usize,
    pub l: usize,
    pub x: String,
    pub y: String,
    pub cert: WheCertJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HtacCertJson {
    pub verdict: String,
    pub k_max: usize,
    pub d: usize,
    pub weakest: Option<CertKind>,
    pub failure: Option<HtacWitness>,
    pub input: RawCategory,
    pub cells: Vec<HtacCellJson>,
}
