//! Normalized nerve chain complexes, exact integral homology and stratified
//! weak-homotopy-equivalence certificates.

mod cert;
mod complex;
mod matrix;

pub use cert::{
    find_contraction, homology_equivalence_cert, pi0_bijective, whe_certificate, CertKind,
    CertOptions, Contraction, ContractionJson, Evidence, EvidenceJson, WheCert, WheCertJson,
    WheHints, HOMOLOGY_SEMANTICS,
};
pub use complex::{
    chain_map, homology, is_chain_map, mapping_cone, nerve_complex, ChainComplex, HomologyGroup,
    HomologySummary, NerveComplex,
};
pub use matrix::{dense_snf, smith_invariants, Snf, SparseMat};

#[cfg(test)]
mod tests;
