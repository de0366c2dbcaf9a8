use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::evidence::{same_functor, CatStore, CatTable, FunctorJson};
use crate::fincat::{Functor, Mor};
use crate::groth::{
    check_fibration, fiber, transition_between, transition_functor, verify_report, FibrationReport,
    FibrationSummary, Variant,
};
use crate::homology::{CertOptions, WheCert, WheCertJson};
use crate::hpb::square::{compose_horizontal, compose_vertical, Square};
use crate::limits::Limits;
use crate::util::par_map;

/// How two certified squares are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Paste {
    /// `first` is the left square, `second` the right one; certifies the rectangle.
    Horizontal,
    /// `first` is the upper square, `second` the lower one; certifies the rectangle.
    Vertical,
    /// `first` is the rectangle, `second` its right square; certifies the left square.
    HorizontalConverse,
    /// `first` is the rectangle, `second` its lower square; certifies the upper square.
    VerticalConverse,
}

/// Orientation of the four connecting functors of a cube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubeDirection {
    /// Connecting functors run from the back face to the certified front face.
    BackToFront,
    FrontToBack,
}

#[derive(Clone, Debug)]
pub enum Failure {
    NotPullback,
    NotFibration {
        report: FibrationReport,
    },
    Transition {
        report: FibrationReport,
        base: Mor,
        cert: WheCert,
    },
    Corner {
        corner: usize,
        cert: WheCert,
    },
    Sub {
        cert: Box<HpbCert>,
    },
}

#[derive(Clone, Debug)]
pub enum HpbEvidence {
    /// The square is a strict pullback, the right leg is an (op)fibration and
    /// every transition functor between its fibers is a weak equivalence.
    TheoremB {
        report: FibrationReport,
        transitions: Vec<(Mor, WheCert)>,
    },
    /// A strict pullback over a one-morphism category, that is a product.
    Product,
    Pasted {
        paste: Paste,
        first: Box<HpbCert>,
        second: Box<HpbCert>,
    },
    /// The front face of a cube is certified and its four connecting functors
    /// are weak equivalences; corners in the order A, B, C, D.
    Transported {
        direction: CubeDirection,
        front: Box<HpbCert>,
        corners: Box<[WheCert; 4]>,
    },
    Transposed {
        source: Box<HpbCert>,
    },
    Refused {
        failure: Failure,
    },
}

/// A homotopy pullback certificate for a square, or a refusal naming the failed check.
#[derive(Clone, Debug)]
pub struct HpbCert {
    pub square: Square,
    pub d: usize,
    pub evidence: HpbEvidence,
}

fn refused(square: &Square, d: usize, failure: Failure) -> HpbCert {
    HpbCert {
        square: square.clone(),
        d,
        evidence: HpbEvidence::Refused { failure },
    }
}

impl HpbCert {
    pub fn holds(&self) -> bool {
        !matches!(self.evidence, HpbEvidence::Refused { .. })
    }

    /// The fiber-transition direction checked for a variant, in words.
    pub fn base_direction(variant: Variant) -> &'static str {
        match variant {
            Variant::Fibration => "for f: b' -> b, the fiber over b maps to the fiber over b'",
            Variant::Opfibration => "for f: b -> b', the fiber over b maps to the fiber over b'",
        }
    }

    /// Re-checks the whole evidence tree.
    pub fn verify(&self, limits: &Limits) -> Result<()> {
        let fail = |msg: &str| Err(Error::Verification(msg.into()));
        self.square
            .check()
            .map_err(|e| Error::Verification(e.to_string()))?;
        match &self.evidence {
            HpbEvidence::TheoremB {
                report,
                transitions,
            } => {
                if !self.square.is_strict_pullback() {
                    return fail("square is not a strict pullback");
                }
                check_report(&self.square, report, true)?;
                let base = self.square.right.target();
                let expected: Vec<Mor> = base.non_identities().collect();
                if transitions.len() != expected.len()
                    || transitions.iter().zip(&expected).any(|((m, _), e)| m != e)
                {
                    return fail("transition certificates do not cover the base morphisms");
                }
                for (m, cert) in transitions {
                    let t = transition_functor(report, *m)
                        .map_err(|e| Error::Verification(e.to_string()))?;
                    if !same_functor(&t, &cert.functor) {
                        return fail("certified functor is not the transition functor");
                    }
                    if !cert.holds() {
                        return fail("transition certificate is a refusal");
                    }
                    cert.verify(limits)?;
                }
            }
            HpbEvidence::Product => {
                let d = self.square.right.target();
                if d.num_morphisms() != 1 || !self.square.is_strict_pullback() {
                    return fail("not a product square");
                }
            }
            HpbEvidence::Pasted {
                paste,
                first,
                second,
            } => {
                for sub in [first, second] {
                    if !sub.holds() {
                        return fail("pasted certificate is a refusal");
                    }
                    sub.verify(limits)?;
                }
                let (a, b) = (&first.square, &second.square);
                let expected = match paste {
                    Paste::Horizontal => compose_horizontal(a, b)?,
                    Paste::Vertical => compose_vertical(a, b)?,
                    Paste::HorizontalConverse => {
                        if compose_horizontal(&self.square, b)? != *a {
                            return fail("left and right squares do not compose to the rectangle");
                        }
                        self.square.clone()
                    }
                    Paste::VerticalConverse => {
                        if compose_vertical(&self.square, b)? != *a {
                            return fail("upper and lower squares do not compose to the rectangle");
                        }
                        self.square.clone()
                    }
                };
                if expected != self.square {
                    return fail("pasted square differs from the recorded square");
                }
            }
            HpbEvidence::Transported {
                direction,
                front,
                corners,
            } => {
                if !front.holds() {
                    return fail("front face certificate is a refusal");
                }
                front.verify(limits)?;
                check_cube(
                    &front.square,
                    &self.square,
                    *direction,
                    corners.each_ref().map(|c| &c.functor),
                )
                .map_err(|e| Error::Verification(e.to_string()))?;
                for c in corners.iter() {
                    if !c.holds() {
                        return fail("connecting functor certificate is a refusal");
                    }
                    c.verify(limits)?;
                }
            }
            HpbEvidence::Transposed { source } => {
                if !source.holds() {
                    return fail("transposed certificate is a refusal");
                }
                source.verify(limits)?;
                if source.square.transposed() != self.square {
                    return fail("square is not the transpose of the certified square");
                }
            }
            HpbEvidence::Refused { failure } => match failure {
                Failure::NotPullback => {
                    if self.square.is_strict_pullback() {
                        return fail("refusal claims a strict pullback fails, but it holds");
                    }
                }
                Failure::NotFibration { report } => check_report(&self.square, report, false)?,
                Failure::Transition { report, base, cert } => {
                    check_report(&self.square, report, true)?;
                    let t = transition_functor(report, *base)
                        .map_err(|e| Error::Verification(e.to_string()))?;
                    if !same_functor(&t, &cert.functor) || cert.holds() {
                        return fail("refused transition does not match");
                    }
                    cert.verify(limits)?;
                }
                Failure::Corner { cert, .. } => {
                    if cert.holds() {
                        return fail("refused corner carries a certificate");
                    }
                    cert.verify(limits)?;
                }
                Failure::Sub { cert } => {
                    if cert.holds() {
                        return fail("refused sub-certificate holds");
                    }
                    cert.verify(limits)?;
                }
            },
        }
        Ok(())
    }

    pub fn to_json(&self, t: &mut CatTable) -> HpbCertJson {
        let evidence = match &self.evidence {
            HpbEvidence::TheoremB {
                report,
                transitions,
            } => HpbEvidenceJson::TheoremB {
                variant: report.variant,
                base_direction: Self::base_direction(report.variant).into(),
                fibration: report.summary(),
                transitions: {
                    // by name, so the order survives renumbering on reload
                    let base = report.functor.target();
                    let mut sorted: Vec<&(Mor, WheCert)> = transitions.iter().collect();
                    sorted.sort_by_key(|(m, _)| base.mor_name(*m));
                    sorted
                        .into_iter()
                        .map(|(m, c)| TransitionJson {
                            base: base.mor_name(*m).into(),
                            cert: c.to_json(t),
                        })
                        .collect()
                },
            },
            HpbEvidence::Product => HpbEvidenceJson::Product {},
            HpbEvidence::Pasted {
                paste,
                first,
                second,
            } => HpbEvidenceJson::Pasted {
                paste: *paste,
                first: Box::new(first.to_json(t)),
                second: Box::new(second.to_json(t)),
            },
            HpbEvidence::Transported {
                direction,
                front,
                corners,
            } => HpbEvidenceJson::Transported {
                direction: *direction,
                front: Box::new(front.to_json(t)),
                corners: corners.iter().map(|c| c.to_json(t)).collect(),
            },
            HpbEvidence::Transposed { source } => HpbEvidenceJson::Transposed {
                source: Box::new(source.to_json(t)),
            },
            HpbEvidence::Refused { failure } => HpbEvidenceJson::Refused {
                failure: match failure {
                    Failure::NotPullback => FailureJson::NotPullback {},
                    Failure::NotFibration { report } => FailureJson::NotFibration {
                        fibration: report.summary(),
                    },
                    Failure::Transition { report, base, cert } => FailureJson::Transition {
                        fibration: report.summary(),
                        base: report.functor.target().mor_name(*base).into(),
                        cert: cert.to_json(t),
                    },
                    Failure::Corner { corner, cert } => FailureJson::Corner {
                        corner: *corner,
                        cert: cert.to_json(t),
                    },
                    Failure::Sub { cert } => FailureJson::Sub {
                        cert: Box::new(cert.to_json(t)),
                    },
                },
            },
        };
        HpbCertJson {
            verdict: if self.holds() { "certified" } else { "refused" }.into(),
            d: self.d,
            square: SquareJson {
                top: t.functor(&self.square.top),
                left: t.functor(&self.square.left),
                right: t.functor(&self.square.right),
                bottom: t.functor(&self.square.bottom),
            },
            evidence,
        }
    }

    /// Rebuilds a certificate from JSON; call [`HpbCert::verify`] to check it.
    pub fn from_json(j: &HpbCertJson, store: &CatStore) -> Result<HpbCert> {
        let square = Square {
            top: store.functor(&j.square.top)?,
            left: store.functor(&j.square.left)?,
            right: store.functor(&j.square.right)?,
            bottom: store.functor(&j.square.bottom)?,
        };
        let report = |s: &FibrationSummary| FibrationReport::from_summary(square.right.clone(), s);
        let base = |name: &str| square.right.target().mor(name);
        let evidence = match &j.evidence {
            HpbEvidenceJson::TheoremB {
                variant,
                fibration,
                transitions,
                base_direction,
            } => {
                if fibration.variant != *variant || base_direction != Self::base_direction(*variant)
                {
                    return Err(Error::Verification("variant fields disagree".into()));
                }
                let mut transitions = transitions
                    .iter()
                    .map(|tr| Ok((base(&tr.base)?, WheCert::from_json(&tr.cert, store)?)))
                    .collect::<Result<Vec<_>>>()?;
                transitions.sort_by_key(|(m, _)| *m);
                HpbEvidence::TheoremB {
                    report: report(fibration)?,
                    transitions,
                }
            }
            HpbEvidenceJson::Product {} => HpbEvidence::Product,
            HpbEvidenceJson::Pasted {
                paste,
                first,
                second,
            } => HpbEvidence::Pasted {
                paste: *paste,
                first: Box::new(HpbCert::from_json(first, store)?),
                second: Box::new(HpbCert::from_json(second, store)?),
            },
            HpbEvidenceJson::Transported {
                direction,
                front,
                corners,
            } => {
                let corners: Vec<WheCert> = corners
                    .iter()
                    .map(|c| WheCert::from_json(c, store))
                    .collect::<Result<_>>()?;
                let corners: [WheCert; 4] = corners.try_into().map_err(|_| {
                    Error::Verification("a cube has four connecting functors".into())
                })?;
                HpbEvidence::Transported {
                    direction: *direction,
                    front: Box::new(HpbCert::from_json(front, store)?),
                    corners: Box::new(corners),
                }
            }
            HpbEvidenceJson::Transposed { source } => HpbEvidence::Transposed {
                source: Box::new(HpbCert::from_json(source, store)?),
            },
            HpbEvidenceJson::Refused { failure } => HpbEvidence::Refused {
                failure: match failure {
                    FailureJson::NotPullback {} => Failure::NotPullback,
                    FailureJson::NotFibration { fibration } => Failure::NotFibration {
                        report: report(fibration)?,
                    },
                    FailureJson::Transition {
                        fibration,
                        base: b,
                        cert,
                    } => Failure::Transition {
                        report: report(fibration)?,
                        base: base(b)?,
                        cert: WheCert::from_json(cert, store)?,
                    },
                    FailureJson::Corner { corner, cert } => Failure::Corner {
                        corner: *corner,
                        cert: WheCert::from_json(cert, store)?,
                    },
                    FailureJson::Sub { cert } => Failure::Sub {
                        cert: Box::new(HpbCert::from_json(cert, store)?),
                    },
                },
            },
        };
        let cert = HpbCert {
            square,
            d: j.d,
            evidence,
        };
        if j.verdict != if cert.holds() { "certified" } else { "refused" } {
            return Err(Error::Verification(
                "verdict inconsistent with evidence".into(),
            ));
        }
        Ok(cert)
    }
}

fn check_report(square: &Square, report: &FibrationReport, verdict: bool) -> Result<()> {
    if report.functor != square.right || report.verdict != verdict || !verify_report(report) {
        return Err(Error::Verification(
            "fibration report does not re-verify".into(),
        ));
    }
    Ok(())
}

/// Checks that the connecting functors make all four side faces of the cube commute.
fn check_cube(
    front: &Square,
    back: &Square,
    direction: CubeDirection,
    corners: [&Functor; 4],
) -> Result<()> {
    let (from, to) = match direction {
        CubeDirection::BackToFront => (back, front),
        CubeDirection::FrontToBack => (front, back),
    };
    let (fc, tc) = (from.corners(), to.corners());
    for (i, f) in corners.iter().enumerate() {
        if !crate::fincat::functor::same_cat(f.source(), fc[i])
            || !crate::fincat::functor::same_cat(f.target(), tc[i])
        {
            return Err(Error::CubeNotCommutative(format!(
                "connecting functor {i} has the wrong corners"
            )));
        }
    }
    // edges as (source corner, target corner, functor on each face)
    let edges = [
        (0, 1, &from.top, &to.top, "top"),
        (0, 2, &from.left, &to.left, "left"),
        (1, 3, &from.right, &to.right, "right"),
        (2, 3, &from.bottom, &to.bottom, "bottom"),
    ];
    for (s, t, e_from, e_to, name) in edges {
        if corners[t].after(e_from)? != e_to.after(corners[s])? {
            return Err(Error::CubeNotCommutative(format!(
                "the {name} face does not commute"
            )));
        }
    }
    Ok(())
}

/// Checks the hypotheses of Quillen's Theorem B: the square is a strict
/// pullback, its right leg is an (op)fibration, and every transition functor
/// along a non-identity base morphism has a weak equivalence certificate.
pub fn theorem_b_certificate(
    square: &Square,
    variant: Variant,
    opts: &CertOptions,
) -> Result<HpbCert> {
    square.check()?;
    if !square.is_strict_pullback() {
        return Ok(refused(square, opts.d, Failure::NotPullback));
    }
    let report = check_fibration(&square.right, variant);
    if !report.verdict {
        return Ok(refused(square, opts.d, Failure::NotFibration { report }));
    }
    let q = &square.right;
    let base = q.target();
    let fibers = par_map(base.num_objects(), |b| {
        fiber(q, crate::fincat::Obj(b as u32))
    });
    let fibers = fibers.into_iter().collect::<Result<Vec<_>>>()?;
    let morphisms: Vec<Mor> = base.non_identities().collect();
    let certs = par_map(morphisms.len(), |i| -> Result<WheCert> {
        let f = morphisms[i];
        let (from, to) = match variant {
            Variant::Fibration => (base.tgt(f), base.src(f)),
            Variant::Opfibration => (base.src(f), base.tgt(f)),
        };
        let t = transition_between(&report, f, &fibers[from.idx()].1, &fibers[to.idx()].1)?;
        opts.whe(&t, None)
    });
    let mut transitions = Vec::with_capacity(morphisms.len());
    for (f, cert) in morphisms.into_iter().zip(certs) {
        let cert = cert?;
        if !cert.holds() {
            return Ok(refused(
                square,
                opts.d,
                Failure::Transition {
                    report,
                    base: f,
                    cert,
                },
            ));
        }
        transitions.push((f, cert));
    }
    Ok(HpbCert {
        square: square.clone(),
        d: opts.d,
        evidence: HpbEvidence::TheoremB {
            report,
            transitions,
        },
    })
}

/// A strict pullback over a category with a single morphism is a product,
/// which is always a homotopy pullback.
pub fn product_certificate(square: &Square, d: usize) -> Result<HpbCert> {
    square.check()?;
    let evidence = if square.right.target().num_morphisms() == 1 && square.is_strict_pullback() {
        HpbEvidence::Product
    } else {
        HpbEvidence::Refused {
            failure: Failure::NotPullback,
        }
    };
    Ok(HpbCert {
        square: square.clone(),
        d,
        evidence,
    })
}

/// Combines two certificates by the pasting lemma.
///
/// For the converse directions `square` is the square to be certified (the
/// left or upper one); for the forward directions it is ignored and may be `None`.
pub fn paste_certificates(
    first: &HpbCert,
    second: &HpbCert,
    paste: Paste,
    square: Option<&Square>,
) -> Result<HpbCert> {
    let target = match paste {
        Paste::Horizontal => compose_horizontal(&first.square, &second.square)?,
        Paste::Vertical => compose_vertical(&first.square, &second.square)?,
        Paste::HorizontalConverse | Paste::VerticalConverse => {
            let sq = square.ok_or_else(|| {
                Error::EdgeMismatch("converse pasting needs the square to certify".into())
            })?;
            let rect = if paste == Paste::HorizontalConverse {
                compose_horizontal(sq, &second.square)?
            } else {
                compose_vertical(sq, &second.square)?
            };
            if rect != first.square {
                return Err(Error::EdgeMismatch(
                    "squares do not compose to the certified rectangle".into(),
                ));
            }
            sq.clone()
        }
    };
    let d = first.d.min(second.d);
    for sub in [first, second] {
        if !sub.holds() {
            return Ok(refused(
                &target,
                d,
                Failure::Sub {
                    cert: Box::new(sub.clone()),
                },
            ));
        }
    }
    Ok(HpbCert {
        square: target,
        d,
        evidence: HpbEvidence::Pasted {
            paste,
            first: Box::new(first.clone()),
            second: Box::new(second.clone()),
        },
    })
}

/// Moves a certificate across a cube whose connecting functors carry weak
/// equivalence certificates.
pub fn transport_certificate(
    front: &HpbCert,
    back: &Square,
    direction: CubeDirection,
    corners: [WheCert; 4],
) -> Result<HpbCert> {
    back.check()?;
    check_cube(
        &front.square,
        back,
        direction,
        corners.each_ref().map(|c| &c.functor),
    )?;
    let d = corners
        .iter()
        .map(|c| c.d)
        .min()
        .unwrap_or(front.d)
        .min(front.d);
    if !front.holds() {
        return Ok(refused(
            back,
            d,
            Failure::Sub {
                cert: Box::new(front.clone()),
            },
        ));
    }
    if let Some(i) = corners.iter().position(|c| !c.holds()) {
        return Ok(refused(
            back,
            d,
            Failure::Corner {
                corner: i,
                cert: corners[i].clone(),
            },
        ));
    }
    Ok(HpbCert {
        square: back.clone(),
        d,
        evidence: HpbEvidence::Transported {
            direction,
            front: Box::new(front.clone()),
            corners: Box::new(corners),
        },
    })
}

/// A square whose two parallel edges (top and bottom, or left and right) are
/// weak equivalences is a homotopy pullback: it is the transport of a square
/// with two identity edges, whose identity leg is trivially a fibration.
pub fn parallel_equivalences_certificate(
    square: &Square,
    first: WheCert,
    second: WheCert,
) -> Result<HpbCert> {
    square.check()?;
    let d = first.d.min(second.d);
    if first.functor == square.left && second.functor == square.right {
        let flipped = parallel_equivalences_certificate(&square.transposed(), first, second)?;
        return Ok(transpose_certificate(&flipped));
    }
    if first.functor != square.top || second.functor != square.bottom {
        return Err(Error::ShapeMismatch(
            "certificates are not on parallel edges of the square".into(),
        ));
    }
    let (a, c) = (square.top.source(), square.bottom.source());
    let front = Square {
        top: Functor::identity(a),
        left: square.left.clone(),
        right: square.left.clone(),
        bottom: Functor::identity(c),
    };
    let opts = CertOptions {
        d,
        ..CertOptions::default()
    };
    let identity_leg = theorem_b_certificate(&front.transposed(), Variant::Fibration, &opts)?;
    let front_cert = transpose_certificate(&identity_leg);
    let corners = [
        opts.whe(&Functor::identity(a), None)?,
        first,
        opts.whe(&Functor::identity(c), None)?,
        second,
    ];
    transport_certificate(&front_cert, square, CubeDirection::FrontToBack, corners)
}

/// The certificate of the transposed square.
pub fn transpose_certificate(cert: &HpbCert) -> HpbCert {
    let square = cert.square.transposed();
    if !cert.holds() {
        return refused(
            &square,
            cert.d,
            Failure::Sub {
                cert: Box::new(cert.clone()),
            },
        );
    }
    HpbCert {
        square,
        d: cert.d,
        evidence: HpbEvidence::Transposed {
            source: Box::new(cert.clone()),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareJson {
    pub top: FunctorJson,
    pub left: FunctorJson,
    pub right: FunctorJson,
    pub bottom: FunctorJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionJson {
    pub base: String,
    pub cert: WheCertJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum FailureJson {
    NotPullback {},
    NotFibration {
        fibration: FibrationSummary,
    },
    Transition {
        fibration: FibrationSummary,
        base: String,
        cert: WheCertJson,
    },
    Corner {
        corner: usize,
        cert: WheCertJson,
    },
    Sub {
        cert: Box<HpbCertJson>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum HpbEvidenceJson {
    TheoremB {
        variant: Variant,
        base_direction: String,
        fibration: FibrationSummary,
        transitions: Vec<TransitionJson>,
    },
    Product {},
    Pasted {
        paste: Paste,
        first: Box<HpbCertJson>,
        second: Box<HpbCertJson>,
    },
    Transported {
        direction: CubeDirection,
        front: Box<HpbCertJson>,
        corners: Vec<WheCertJson>,
    },
    Transposed {
        source: Box<HpbCertJson>,
    },
    Refused {
        failure: FailureJson,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HpbCertJson {
    pub verdict: String,
    pub d: usize,
    pub square: SquareJson,
    pub evidence: HpbEvidenceJson,
}
