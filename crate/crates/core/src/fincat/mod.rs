//! Finite categories as explicit composition tables, functors, natural
//! transformations and the basic constructions on them.

mod category;
mod construct;
pub(crate) mod functor;
mod functor_cat;
mod io;
mod zigzag_search;

pub use category::{FinCat, FinCatBuilder, Mor, Obj};
pub use construct::{
    arrow_category, arrow_name, opposite, ordinal, pair_name, pairing, product, product_functor,
    slice, subcategory, terminal, to_terminal, SliceSide,
};
pub use functor::{
    enumerate_functors, find_nat_trans, generating_morphisms, is_natural, search_nat_trans,
    Functor, NatTrans,
};
pub use functor_cat::{functor_category, FunctorCat};
pub use io::{to_raw, validate_category, RawCategory, RawComposite, RawMorphism};
pub use zigzag_search::{connect, nat_trans_zigzag, zigzag_through, Direction, NatStep};
