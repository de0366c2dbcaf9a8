//! The classification diagram of a relative category: its levels, the
//! homotopical three-arrow calculus, hom-space and Segal certificates, and a
//! bounded model of the homotopy category.

mod hohom;
mod homspace;
mod htac;
mod level;
mod segal;


pub use hohom::{
    completeness_report, enumerate_zigzags, ho_homset, is_move, normalize, reductions,
    saturation_report, CompletenessJson, CompletenessReport, HoClass, HoClassJson, HoHomJson,
    HoHomReport, HoVerdict, InverseWitness, SaturationEntry, SaturationEntryJson, SaturationJson,
    SaturationReport, Step, StepJson, Zigzag, HO_SEMANTICS,
};
pub use homspace::{hom_space_certificate, HomSpaceCert, HomSpaceCertJson};
pub use htac::{
    htac_certificate, htac_insertion, htac_shape_map, HtacCell, HtacCellJson, HtacCert,
    HtacCertJson, HtacWitness,
};
pub use level::{
    classification_homology_table, classification_level, degeneracy_functor, face_functor,
    ordinal_type, LevelHomology,
};
pub use segal::{segal_certificate, segal_cube, SegalCert, SegalCertJson};
