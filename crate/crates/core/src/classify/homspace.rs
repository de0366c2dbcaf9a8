use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{CatStore, CatTable};
use crate::fincat::{
    pairing, product, product_functor, terminal, to_terminal, Functor, FunctorCat, Obj,
};
use crate::groth::Variant;
use crate::homology::CertOptions;
use crate::hpb::{
    compose_horizontal, factor_through, parallel_equivalences_certificate, paste_certificates,
    strict_pullback, theorem_b_certificate, HpbCert, HpbCertJson, Paste, Square,
};
use crate::relcat::{weq_rel_fun, RelCat, ZigzagType};

use super::htac::{htac_certificate, HtacCert, HtacCertJson};
use super::level::{classification_level, ordinal_type, restriction};
use super::segal::{r2_certificate, three_arrow_type};

/// Certificate that `C^[-1;1;-1](X, Y)` is the homotopy pullback of
/// `W/X × Y\\W → W × W ← weq RelFun([1], C)`, together with the three-arrow
/// certificate it presupposes. Without that prerequisite no square is certified.
#[derive(Clone, Debug)]
pub struct HomSpaceCert {
    pub x: String,
    pub y: String,
    pub htac: HtacCert,
    pub cert: Option<HpbCert>,
}

impl HomSpaceCert {
    pub fn holds(&self) -> bool {
        self.htac.holds() && self.cert.as_ref().is_some_and(HpbCert::holds)
    }

    pub fn verify(&self, opts: &CertOptions) -> Result<()> {
        self.htac.verify(opts)?;
        if let Some(cert) = &self.cert {
            cert.verify(&opts.limits)?;
        } else if self.htac.holds() {
            return Err(Error::Verification(
                "three-arrow condition holds but no square is certified".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self, t: &mut CatTable) -> HomSpaceCertJson {
        HomSpaceCertJson {
            verdict: if self.holds() { "pass" } else { "fail" }.into(),
            x: self.x.clone(),
            y: self.y.clone(),
            missing_prerequisite: (!self.htac.holds())
                .then(|| "homotopical three-arrow calculus".to_string()),
            htac: self.htac.to_json(t),
            cert: self.cert.as_ref().map(|c| c.to_json(t)),
        }
    }

    pub fn from_json(j: &HomSpaceCertJson, store: &CatStore) -> Result<HomSpaceCert> {
        let cert = HomSpaceCert {
            x: j.x.clone(),
            y: j.y.clone(),
            htac: HtacCert::from_json(&j.htac, store)?,
            cert: j
                .cert
                .as_ref()
                .map(|c| HpbCert::from_json(c, store))
                .transpose()?,
        };
        if j.verdict != if cert.holds() { "pass" } else { "fail" } {
            return Err(Error::Verification(
                "recorded verdict does not match the evidence".into(),
            ));
        }
        Ok(cert)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomSpaceCertJson {
    pub verdict: String,
    pub x: String,
    pub y: String,
    pub missing_prerequisite: Option<String>,
    pub htac: HtacCertJson,
    pub cert: Option<HpbCertJson>,
}

/// Replays the hom-space argument on `C`, `X`, `Y`:
///
/// ```text
/// C^T(X,Y) ----> weq RelFun(T) --r²--> weq RelFun([1])
///    |   (A)          | π        (B)        | ⟨dom, codom⟩
///    v                v                     v
/// W/X × Y\W ---> Fun×Fun --dom×codom--> W × W
///    |   (C)          | codom×dom
///    v                v
///   [0] --(X,Y)--> W × W
/// ```
///
/// with `T = [-1;1;-1]` and `Fun = weq RelFun([-1], C) ≅ Fun([1], W)`. The
/// rectangle (AC) is split as (D)(E) over `W`, where (D) and (EF) are Theorem B
/// squares for `codom` and `dom` and (F) is the projection square; (E), (A)
/// follow by converse pasting, (B) and (C) because two parallel edges are weak
/// equivalences, and (AB) by pasting.
pub fn hom_space_certificate(
    c: &RelCat,
    x: Obj,
    y: Obj,
    k_max: usize,
    opts: &CertOptions,
) -> Result<HomSpaceCert> {
    let und = c.und();
    for o in [x, y] {
        if o.idx() >= und.num_objects() {
            return Err(Error::UnknownObject(format!("#{}", o.0)));
        }
    }
    let htac = htac_certificate(c, k_max, opts)?;
    let (xn, yn) = (und.obj_name(x).to_string(), und.obj_name(y).to_string());
    if !htac.holds() {
        return Ok(HomSpaceCert {
            x: xn,
            y: yn,
            htac,
            cert: None,
        });
    }
    let cert = hom_space_square(c, x, y, opts)?;
    Ok(HomSpaceCert {
        x: xn,
        y: yn,
        htac,
        cert: Some(cert),
    })
}

fn hom_space_square(c: &RelCat, x: Obj, y: Obj, opts: &CertOptions) -> Result<HpbCert> {
    let limits = &opts.limits;
    let point = ordinal_type(0);
    let t = three_arrow_type(1);
    let arrow_w = ZigzagType::new(&[-1]);
    let w: FunctorCat = classification_level(c, 0, limits)?;
    let chains_1 = classification_level(c, 1, limits)?;
    let zz = weq_rel_fun(c, &t, limits)?;
    let fun = weq_rel_fun(c, &arrow_w, limits)?;
    let pt = Arc::new(terminal());
    let wc = w.cat();
    let (ww, pr1, pr2) = product(wc, wc, limits)?;
    let (ff, _, _) = product(fun.cat(), fun.cat(), limits)?;

    // objects of W are the constant chains; find the ones at X and Y
    let at = |o: Obj| {
        w.find_object(&[c.und().id(o)])
            .ok_or_else(|| Error::UnknownObject(c.und().obj_name(o).into()))
    };
    let (wx, wy) = (at(x)?, at(y)?);
    let point_at = |o: Obj| Functor::constant(&pt, wc, o);

    let dom = restriction(&point, &t, vec![0], &zz, &w)?;
    let codom = restriction(&point, &t, vec![3], &zz, &w)?;
    let dom_codom = pairing(&dom, &codom, &ww)?;
    // Fun ≅ Fun([1], W): object 0 carries the codomain, object 1 the domain
    let fun_codom = restriction(&point, &arrow_w, vec![0], &fun, &w)?;
    let fun_dom = restriction(&point, &arrow_w, vec![1], &fun, &w)?;

    // (EF), (F), (E), (D)
    let ef = strict_pullback(&point_at(wx), &pr1.after(&dom_codom)?, limits)?;
    let x_id = pairing(&Functor::constant(wc, wc, wx), &Functor::identity(wc), &ww)?;
    let f_sq = Square::new(
        x_id.clone(),
        to_terminal(wc, &pt),
        pr1.clone(),
        point_at(wx),
    )?;
    let e_left = pr2.after(&dom_codom)?.after(&ef.top)?;
    let e_sq = Square::new(ef.top.clone(), e_left.clone(), dom_codom.clone(), x_id)?;
    let d_sq = strict_pullback(&point_at(wy), &e_left, limits)?;

    let ef_cert = theorem_b_certificate(&ef, Variant::Opfibration, opts)?;
    let f_cert = theorem_b_certificate(&f_sq, Variant::Opfibration, opts)?;
    let e_cert = paste_certificates(&ef_cert, &f_cert, Paste::VerticalConverse, Some(&e_sq))?;
    let d_cert = theorem_b_certificate(&d_sq, Variant::Fibration, opts)?;
    let de_cert = paste_certificates(&d_cert, &e_cert, Paste::Horizontal, None)?;
    let de = compose_horizontal(&d_sq, &e_sq)?;

    // (C)
    let codom_dom = product_functor(&fun_codom, &fun_dom, &ff, &ww)?;
    let c_sq = strict_pullback(
        &pairing(&point_at(wx), &point_at(wy), &ww)?,
        &codom_dom,
        limits,
    )?;
    let c_cert = parallel_equivalences_certificate(
        &c_sq,
        opts.whe(&c_sq.left, None)?,
        opts.whe(&c_sq.right, None)?,
    )?;

    // (A)
    let pi = pairing(
        &restriction(&arrow_w, &t, vec![0, 1], &zz, &fun)?,
        &restriction(&arrow_w, &t, vec![2, 3], &zz, &fun)?,
        &ff,
    )?;
    let a_left = factor_through(&c_sq, &de.left, &pi.after(&de.top)?)?;
    let a_sq = Square::new(de.top.clone(), a_left, pi.clone(), c_sq.top.clone())?;
    let a_cert = paste_certificates(&de_cert, &c_cert, Paste::VerticalConverse, Some(&a_sq))?;

    // (B)
    let r2 = restriction(&ordinal_type(1), &t, vec![1, 2], &zz, &chains_1)?;
    let dom_1 = restriction(&point, &ordinal_type(1), vec![0], &chains_1, &w)?;
    let codom_1 = restriction(&point, &ordinal_type(1), vec![1], &chains_1, &w)?;
    let b_sq = Square::new(
        r2,
        pi,
        pairing(&dom_1, &codom_1, &ww)?,
        product_functor(&fun_dom, &fun_codom, &ff, &ww)?,
    )?;
    let b_cert = parallel_equivalences_certificate(
        &b_sq,
        r2_certificate(1, &chains_1, &zz, opts)?,
        opts.whe(&b_sq.bottom, None)?,
    )?;
    paste_certificates(&a_cert, &b_cert, Paste::Horizontal, None)
}
