//! Effectively presented countable spaces and their certificate machinery.

mod basic;
mod cd;
mod convergence;
mod covers;
mod point;
mod presentation;

pub use basic::{BasicOpen, OpenSet};
pub use cd::{
    accumulation_certificate, cd_certificate, AccumulationCertificate, CdOutcome,
    ClosednessProbe, SeparationCertificate,
};
pub use convergence::{converges_at_horizon, ConvergenceVerdict};
pub use covers::{
    escape_map, gamma_equals_s_vec_o_check, subcover_is_vec_o, vec_cover_class, CoverClass,
    CoverMode, CoverSequence, EscapeWitness, GammaSamplingReport,
};
pub use point::{FiniteSubset, Point, Rational, ZkPoint};
pub use presentation::{builtin_space, SpaceFlags, SpacePresentation};
