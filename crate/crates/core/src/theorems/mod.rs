//! Theorem checkers and their verdicts.

mod checkers;
mod gate;
mod verdict;

pub use checkers::{
    cauchy_davenport, cauchy_davenport_unconditional, cover_normalization, distinct_sum_chain,
    erdos_heilbronn, freiman_24, freiman_3k3, hsz, lemma2_two_point, symmetry_identity,
    theorem_con, vosper, HszVariant,
};
pub use gate::FreimanGate;
pub use verdict::{Instance, InstanceKind, TheoremId, TheoremVerdict, Witness};
