//! Grothendieck (op)fibrations, their fibers and transition functors, and
//! two-sided Grothendieck constructions.

mod fibration;
mod twosided;
mod zigzag;

pub use fibration::{
    check_fibration, fiber, is_cartesian, transition_between, transition_functor, verify_report,
    FibrationReport, FibrationSummary, Lift, NamedLift, NamedPair, Variant,
};
pub use twosided::{
    mixed_grothendieck, two_sided_grothendieck, two_sided_map, CatDiagram, CatValuedBifunctor,
    DiagramMap, TotalCategory, Variance,
};
pub use zigzag::{verify_canonical_iso, zigzag_bifunctor, ZigzagBifunctor};

#[cfg(test)]
mod tests;
