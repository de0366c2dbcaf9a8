//! Strict pullback squares and homotopy pullback certificates: Quillen's
//! Theorem B hypotheses, products, pasting, transport along cubes.

mod cert;
mod square;

pub use cert::{
    parallel_equivalences_certificate, paste_certificates, product_certificate,
    theorem_b_certificate, transport_certificate, transpose_certificate, CubeDirection, Failure,
    FailureJson, HpbCert, HpbCertJson, HpbEvidence, HpbEvidenceJson, Paste, SquareJson,
    TransitionJson,
};
pub use square::{compose_horizontal, compose_vertical, factor_through, strict_pullback, Square};
