//! Sequence-level evidence: endograph-metric traces, Γ-convergence probes,
//! the connectedness condition and hypothesis checks for the equivalence
//! theorems. Every verdict is based on a finite schedule of indices.

mod analysis;
mod classify;
mod sequence;
mod verdict;

use thiserror::Error;

pub use analysis::{
    connectedness_condition, cut_distance, default_eps, eventual_boundedness, family_cut_union, gamma_test,
    hausdorff_level_trace, hend_trace, s_trace, BoundednessReport, ConnectednessReport, EpsWitness, GammaOptions,
    GammaReport, LevelVerdict, SLimit, STrace,
};
pub use classify::{classify_pair, MemberFlags, PairReport, TheoremFlags, WccpReport, XiCheck};
pub use sequence::{instantiate_all, ConstSeq, FnSeq, FuzzySeq, FuzzySequence, Schedule, SeqBody, SeqError};
pub use verdict::{default_probes, kuratowski_probe, verdict_hend, Status, TracePoint, Verdict, DEFAULT_TOL};

use crate::endograph::EndographError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvergenceError {
    #[error(transparent)]
    Seq(#[from] SeqError),
    #[error("level {0} is a threshold of the limit")]
    JumpLevel(String),
    #[error("levels must satisfy 0 < alpha < beta <= 1")]
    BadLevels,
    #[error(transparent)]
    Endograph(#[from] EndographError),
}
