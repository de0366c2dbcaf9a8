use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{CatStore, CatTable};
use crate::fincat::{Functor, FunctorCat};
use crate::groth::Variant;
use crate::homology::{CertOptions, WheCert, WheHints};
use crate::hpb::{
    theorem_b_certificate, transport_certificate, CubeDirection, HpbCert, HpbCertJson, HpbEvidence,
    Square,
};
use crate::relcat::{weq_rel_fun, RelCat, ShapeMap, ZigzagType};

use super::level::{classification_level, ordinal_type, restriction};

/// Evidence that the Segal square for `n` is a homotopy pullback: the
/// certificate of its back face, transported from the front face of the cube
/// built from `T_1 = [-1;1;-1]`, `T_n = [-1;n;-1]` and `M_n = [-1;1;-2;n;-1]`.
#[derive(Clone, Debug)]
pub struct SegalCert {
    pub n: usize,
    pub d: usize,
    pub front_is_pullback: bool,
    pub back_is_pullback: bool,
    pub cert: HpbCert,
}

impl SegalCert {
    pub fn holds(&self) -> bool {
        self.front_is_pullback && self.back_is_pullback && self.cert.holds()
    }

    pub fn verify(&self, opts: &CertOptions) -> Result<()> {
        self.cert.verify(&opts.limits)?;
        let HpbEvidence::Transported { front, .. } = &self.cert.evidence else {
            if self.holds() {
                return Err(Error::Verification(
                    "Segal certificate is not transported from a front face".into(),
                ));
            }
            return Ok(());
        };
        if front.square.is_strict_pullback() != self.front_is_pullback
            || self.cert.square.is_strict_pullback() != self.back_is_pullback
        {
            return Err(Error::Verification(
                "recorded pullback checks do not match the faces".into(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self, t: &mut CatTable) -> SegalCertJson {
        SegalCertJson {
            verdict: if self.holds() { "pass" } else { "fail" }.into(),
            n: self.n,
            d: self.d,
            front_is_pullback: self.front_is_pullback,
            back_is_pullback: self.back_is_pullback,
            cert: self.cert.to_json(t),
        }
    }

    pub fn from_json(j: &SegalCertJson, store: &CatStore) -> Result<SegalCert> {
        let cert = SegalCert {
            n: j.n,
            d: j.d,
            front_is_pullback: j.front_is_pullback,
            back_is_pullback: j.back_is_pullback,
            cert: HpbCert::from_json(&j.cert, store)?,
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
pub struct SegalCertJson {
    pub verdict: String,
    pub n: usize,
    pub d: usize,
    pub front_is_pullback: bool,
    pub back_is_pullback: bool,
    pub cert: HpbCertJson,
}

/// `[-1;k;-1]`.
pub(crate) fn three_arrow_type(k: usize) -> ZigzagType {
    ZigzagType::new(&[-1, k as i64, -1])
}

/// Certificate for `s² : weq RelFun([k], C) → weq RelFun([-1;k;-1], C)` with the
/// homotopy inverse `r²`: `r² ∘ s² = id`, and `s² ∘ r² ⇐ H ⇒ id` where `H`
/// replaces the first arrow by an identity.
pub(crate) fn s2_certificate(
    k: usize,
    chains: &FunctorCat,
    zigzags: &FunctorCat,
    opts: &CertOptions,
) -> Result<WheCert> {
    let t = three_arrow_type(k);
    let s2 = crate::relcat::precompose_along(&ShapeMap::s2(k)?, chains, zigzags)?;
    let r2 = crate::relcat::precompose_along(&ShapeMap::r2(k)?, zigzags, chains)?;
    let h = first_arrow_collapse(&t, k, zigzags)?;
    let hints = WheHints {
        inverse: Some(r2),
        unit_through: Vec::new(),
        counit_through: vec![h],
    };
    opts.whe(&s2, Some(&hints))
}

/// The same for `r²`, whose homotopy inverse is `s²`.
pub(crate) fn r2_certificate(
    k: usize,
    chains: &FunctorCat,
    zigzags: &FunctorCat,
    opts: &CertOptions,
) -> Result<WheCert> {
    let t = three_arrow_type(k);
    let s2 = crate::relcat::precompose_along(&ShapeMap::s2(k)?, chains, zigzags)?;
    let r2 = crate::relcat::precompose_along(&ShapeMap::r2(k)?, zigzags, chains)?;
    let h = first_arrow_collapse(&t, k, zigzags)?;
    let hints = WheHints {
        inverse: Some(s2),
        unit_through: vec![h],
        counit_through: Vec::new(),
    };
    opts.whe(&r2, Some(&hints))
}

/// The endofunctor of `weq RelFun([-1;k;-1], C)` replacing `X ← X̂` by `X̂ ← X̂`.
fn first_arrow_collapse(t: &ZigzagType, k: usize, zigzags: &FunctorCat) -> Result<Functor> {
    let sigma = std::iter::once(1).chain(1..=k + 2).collect();
    restriction(t, t, sigma, zigzags, zigzags)
}

/// The Segal cube for `n ≥ 1`. Back face:
///
/// ```text
/// weq RelFun([n+1]) --d_0--> weq RelFun([n])
///        | p                      | dom
///        v                        v
/// weq RelFun([1]) --codom--> weq RelFun([0])
/// ```
///
/// front face the same with `M_n`, `T_n`, `T_1`; the connecting functors
/// insert identities.
pub fn segal_cube(
    c: &RelCat,
    n: usize,
    opts: &CertOptions,
) -> Result<(Square, Square, [Functor; 4])> {
    let cube = build_cube(c, n, opts)?;
    Ok((cube.back, cube.front, cube.connecting))
}

struct Cube {
    back: Square,
    front: Square,
    connecting: [Functor; 4],
    chains_n: FunctorCat,
    chains_1: FunctorCat,
    zz_n: FunctorCat,
    zz_1: FunctorCat,
}

fn build_cube(c: &RelCat, n: usize, opts: &CertOptions) -> Result<Cube> {
    if n == 0 {
        return Err(Error::InvalidBound("n must be positive".into()));
    }
    let limits = &opts.limits;
    let [chains_n1, chains_n, chains_1, w] =
        [n + 1, n, 1, 0].map(|k| classification_level(c, k, limits));
    let (chains_n1, chains_n, chains_1, w) = (chains_n1?, chains_n?, chains_1?, w?);
    let t_1 = three_arrow_type(1);
    let t_n = three_arrow_type(n);
    let m_n = ZigzagType::new(&[-1, 1, -2, n as i64, -1]);
    let zz_1 = weq_rel_fun(c, &t_1, limits)?;
    let zz_n = weq_rel_fun(c, &t_n, limits)?;
    let zz_m = weq_rel_fun(c, &m_n, limits)?;
    let point = ordinal_type(0);

    let back = Square::new(
        restriction(
            &ordinal_type(n),
            &ordinal_type(n + 1),
            (1..=n + 1).collect(),
            &chains_n1,
            &chains_n,
        )?,
        restriction(
            &ordinal_type(1),
            &ordinal_type(n + 1),
            vec![0, 1],
            &chains_n1,
            &chains_1,
        )?,
        restriction(&point, &ordinal_type(n), vec![0], &chains_n, &w)?,
        restriction(&point, &ordinal_type(1), vec![1], &chains_1, &w)?,
    )?;
    let front = Square::new(
        restriction(&t_n, &m_n, (3..=n + 5).collect(), &zz_m, &zz_n)?,
        restriction(&t_1, &m_n, (0..=3).collect(), &zz_m, &zz_1)?,
        restriction(&point, &t_n, vec![0], &zz_n, &w)?,
        restriction(&point, &t_1, vec![3], &zz_1, &w)?,
    )?;
    // [n+1] → M_n: ←id, f_1, ←id ←id, f_2 … f_{n+1}, ←id
    let sigma_m = (0..=n + 5).map(|i| match i {
        0 | 1 => 0,
        2..=4 => 1,
        _ => (i - 3).min(n + 1),
    });
    let connecting = [
        restriction(
            &m_n,
            &ordinal_type(n + 1),
            sigma_m.collect(),
            &chains_n1,
            &zz_m,
        )?,
        crate::relcat::precompose_along(&ShapeMap::s2(n)?, &chains_n, &zz_n)?,
        crate::relcat::precompose_along(&ShapeMap::s2(1)?, &chains_1, &zz_1)?,
        Functor::identity(w.cat()),
    ];
    Ok(Cube {
        back,
        front,
        connecting,
        chains_n,
        chains_1,
        zz_n,
        zz_1,
    })
}

/// Certifies the Segal square for `n`: Theorem B on the front face of the
/// cube (the `dom` leg as an opfibration, fiber transitions checked at degree
/// `d`), weak equivalence certificates on the four connecting functors, and
/// transport to the back face.
pub fn segal_certificate(c: &RelCat, n: usize, opts: &CertOptions) -> Result<SegalCert> {
    let Cube {
        back,
        front,
        connecting,
        chains_n,
        chains_1,
        zz_n,
        zz_1,
    } = build_cube(c, n, opts)?;
    let front_cert = theorem_b_certificate(&front, Variant::Opfibration, opts)?;
    let [into_m, _, _, id_w] = connecting;
    let corners = [
        opts.whe(&into_m, None)?,
        s2_certificate(n, &chains_n, &zz_n, opts)?,
        s2_certificate(1, &chains_1, &zz_1, opts)?,
        opts.whe(&id_w, None)?,
    ];
    let front_is_pullback = front.is_strict_pullback();
    let back_is_pullback = back.is_strict_pullback();
    let cert = transport_certificate(&front_cert, &back, CubeDirection::BackToFront, corners)?;
    Ok(SegalCert {
        n,
        d: opts.d,
        front_is_pullback,
        back_is_pullback,
        cert,
    })
}
