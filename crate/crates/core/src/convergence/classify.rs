//! Which equivalence theorems between endograph-metric convergence and
//! Γ-convergence have their hypotheses met on sampled evidence.

use serde::Serialize;

use super::analysis::{connectedness_condition, default_eps, ConnectednessReport};
use super::sequence::{instantiate_all, FuzzySequence, Schedule};
use super::verdict::{verdict_hend, Status, TracePoint};
use super::ConvergenceError;
use crate::endograph::{hend, truncate, Engine};
use crate::fuzzy_set::{ClassFlags, StepFuzzySet};
use crate::num::Level;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MemberFlags {
    /// every sampled `u_n` has connected cuts
    pub all_con: bool,
    pub all_uscg: bool,
    pub all_normal: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct XiCheck {
    pub xi: Level,
    pub below_s: bool,
    pub end_compact: bool,
    /// first scheduled index from which `end_xi u_n` is connected
    pub connected_from: Option<u64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WccpReport {
    /// `H_end(u_n, u) → 0` on the schedule, which alone makes the pair weakly
    /// connectedness compact
    pub via_hend: bool,
    pub xi: Option<XiCheck>,
    pub holds: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremFlags {
    /// `u` normal with compact cuts, members normal with compact connected cuts
    pub fer: bool,
    /// `u` normal with compact cuts, members normal with connected cuts
    pub fce: bool,
    /// `u` non-empty with compact cuts, members with connected cuts
    pub comg: bool,
    /// `u` non-empty with compact cuts, members satisfy the connectedness condition
    pub fceg: bool,
    /// weak connectedness compact pair (sufficient evidence only)
    pub fcegun: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairReport {
    pub limit: ClassFlags,
    /// `u` has compact cuts and is not empty
    pub limit_uscg_nonempty: bool,
    pub members: MemberFlags,
    pub connectedness: ConnectednessReport,
    pub hend_status: Status,
    pub wccp: WccpReport,
    pub theorems: TheoremFlags,
}

/// Evaluates the hypotheses for `u` and the sampled members of `seq`.
pub fn classify_pair(
    u: &StepFuzzySet,
    seq: &dyn FuzzySequence,
    sched: &Schedule,
    xi: Option<&Level>,
    tol: f64,
) -> Result<PairReport, ConvergenceError> {
    let limit = u.classify();
    let limit_uscg_nonempty = limit.is_uscg && !u.is_empty();
    let members = instantiate_all(seq, sched)?;
    let flags: Vec<ClassFlags> = members.iter().map(|(_, un)| un.classify()).collect();
    let member_flags = MemberFlags {
        all_con: flags.iter().all(|f| f.is_con),
        all_uscg: flags.iter().all(|f| f.is_uscg),
        all_normal: flags.iter().all(|f| f.is_normal),
    };
    let connectedness = connectedness_condition(seq, &default_eps(), sched)?;
    let trace: Vec<TracePoint> = members.iter().map(|(n, un)| TracePoint::new(*n, hend(un, u))).collect();
    let hend_status = verdict_hend(&trace, tol).status;

    let xi_check = match xi {
        Some(xi) => Some(check_xi(u, &members, xi)?),
        None => None,
    };
    let via_hend = hend_status == Status::Converges && !u.is_empty();
    let wccp_holds = via_hend || xi_check.as_ref().is_some_and(|c| c.holds);
    let wccp = WccpReport {
        via_hend,
        xi: xi_check,
        holds: wccp_holds,
        note: "sufficient conditions only; quantification over subsequences is not verified".into(),
    };

    let normal_limit = limit.is_normal && limit.is_uscg;
    let theorems = TheoremFlags {
        fer: normal_limit && member_flags.all_normal && member_flags.all_con && member_flags.all_uscg,
        fce: normal_limit && member_flags.all_normal && member_flags.all_con,
        comg: limit_uscg_nonempty && member_flags.all_con,
        fceg: limit_uscg_nonempty && connectedness.satisfied,
        fcegun: !u.is_empty() && wccp_holds,
    };
    Ok(PairReport {
        limit,
        limit_uscg_nonempty,
        members: member_flags,
        connectedness,
        hend_status,
        wccp,
        theorems,
    })
}

fn check_xi(u: &StepFuzzySet, members: &[(u64, StepFuzzySet)], xi: &Level) -> Result<XiCheck, ConvergenceError> {
    let below_s = *xi < u.s_value();
    let end_compact = truncate(u, xi, &Level::one())?.is_compact()?;
    let mut connected_from = None;
    for (n, un) in members.iter().rev() {
        if truncate(un, xi, &Level::one())?.is_connected(&Engine::Structural)? {
            connected_from = Some(*n);
        } else {
            break;
        }
    }
    let deadline = members[super::sequence::tail_start(members.len())].0;
    let holds = below_s && end_compact && connected_from.is_some_and(|n| n <= deadline);
    Ok(XiCheck { xi: xi.clone(), below_s, end_compact, connected_from, holds })
}
