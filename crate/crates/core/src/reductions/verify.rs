//! Equivalence verification: replay corpora through a transformation and
//! compare brute-force verdicts on source and target.

use super::bkp::{
    bkp_enforce_gap, bkp_enforce_ordering, bkp_shift_positive, bkp_to_mepvcb_2paths,
    subsetsum_to_bkp_signed,
};
use super::embed::{
    add_apex_for_delta, embed_complete, embed_complete_bipartition, embed_regular,
    identify_into_tree, link_into_path_or_cycle, LinkShape,
};
use super::{Reduced, ReductionError};
use crate::format::{digest_any, serialize_any};
use crate::instance::AnyInstance;
use crate::num::Weight;
use crate::solvers::{brute_force_bkp, brute_force_mepvcb, brute_force_subsetsum, SolveError};
use serde::Serialize;

/// Every shipped transformation, plus the composed subset-sum chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    SubsetsumToBkpSigned,
    BkpShiftPositive,
    BkpEnforceOrdering,
    BkpEnforceGap,
    BkpToMepvcb2Paths,
    EmbedRegular,
    EmbedComplete,
    IdentifyIntoTree,
    LinkIntoPath,
    LinkIntoCycle,
    AddApexForDelta,
    EmbedCompleteBipartition,
    /// subset sum -> signed BKP -> positive BKP -> ordered BKP -> 2-paths.
    ChainSubsetsumTo2Paths,
}

impl ReductionKind {
    pub const ALL: [ReductionKind; 13] = [
        ReductionKind::SubsetsumToBkpSigned,
        ReductionKind::BkpShiftPositive,
        ReductionKind::BkpEnforceOrdering,
        ReductionKind::BkpEnforceGap,
        ReductionKind::BkpToMepvcb2Paths,
        ReductionKind::EmbedRegular,
        ReductionKind::EmbedComplete,
        ReductionKind::IdentifyIntoTree,
        ReductionKind::LinkIntoPath,
        ReductionKind::LinkIntoCycle,
        ReductionKind::AddApexForDelta,
        ReductionKind::EmbedCompleteBipartition,
        ReductionKind::ChainSubsetsumTo2Paths,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ReductionKind::SubsetsumToBkpSigned => "subsetsum-to-bkp",
            ReductionKind::BkpShiftPositive => "bkp-shift-positive",
            ReductionKind::BkpEnforceOrdering => "bkp-enforce-ordering",
            ReductionKind::BkpEnforceGap => "bkp-enforce-gap",
            ReductionKind::BkpToMepvcb2Paths => "bkp-to-2paths",
            ReductionKind::EmbedRegular => "embed-regular",
            ReductionKind::EmbedComplete => "embed-complete",
            ReductionKind::IdentifyIntoTree => "identify-into-tree",
            ReductionKind::LinkIntoPath => "link-into-path",
            ReductionKind::LinkIntoCycle => "link-into-cycle",
            ReductionKind::AddApexForDelta => "add-apex",
            ReductionKind::EmbedCompleteBipartition => "embed-complete-bipartition",
            ReductionKind::ChainSubsetsumTo2Paths => "chain-subsetsum-to-2paths",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    /// The instance kind this transformation consumes.
    pub fn source_kind(self) -> &'static str {
        match self {
            ReductionKind::SubsetsumToBkpSigned | ReductionKind::ChainSubsetsumTo2Paths => {
                "subset-sum"
            }
            ReductionKind::BkpShiftPositive
            | ReductionKind::BkpEnforceOrdering
            | ReductionKind::BkpEnforceGap
            | ReductionKind::BkpToMepvcb2Paths => "bkp",
            _ => "mepvcb",
        }
    }
}

/// Apply a transformation to a wrapped instance, checking the source kind.
/// `mutated` selects the deliberately broken variant (test-only).
pub fn apply_reduction<W: Weight>(
    kind: ReductionKind,
    source: &AnyInstance<W>,
    mutated: bool,
) -> Result<Reduced<AnyInstance<W>>, ReductionError> {
    let wrong = || ReductionError::WrongKind {
        expected: kind.source_kind(),
        actual: source.kind_name(),
    };
    match kind {
        ReductionKind::SubsetsumToBkpSigned => {
            let AnyInstance::SubsetSum(ss) = source else {
                return Err(wrong());
            };
            Ok(subsetsum_to_bkp_signed(ss, mutated)?.map(AnyInstance::Bkp))
        }
        ReductionKind::BkpShiftPositive => {
            let AnyInstance::Bkp(bkp) = source else {
                return Err(wrong());
            };
            Ok(bkp_shift_positive(bkp, mutated)?.map(AnyInstance::Bkp))
        }
        ReductionKind::BkpEnforceOrdering => {
            let AnyInstance::Bkp(bkp) = source else {
                return Err(wrong());
            };
            Ok(bkp_enforce_ordering(bkp, mutated)?.map(AnyInstance::Bkp))
        }
        ReductionKind::BkpEnforceGap => {
            let AnyInstance::Bkp(bkp) = source else {
                return Err(wrong());
            };
            Ok(bkp_enforce_gap(bkp, mutated)?.map(AnyInstance::Bkp))
        }
        ReductionKind::BkpToMepvcb2Paths => {
            let AnyInstance::Bkp(bkp) = source else {
                return Err(wrong());
            };
            Ok(bkp_to_mepvcb_2paths(bkp, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::EmbedRegular => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(embed_regular(inst, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::EmbedComplete => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(embed_complete(inst, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::IdentifyIntoTree => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(identify_into_tree(inst, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::LinkIntoPath => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(link_into_path_or_cycle(inst, LinkShape::Path, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::LinkIntoCycle => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(link_into_path_or_cycle(inst, LinkShape::Cycle, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::AddApexForDelta => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(add_apex_for_delta(inst, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::EmbedCompleteBipartition => {
            let AnyInstance::Mepvcb(inst) = source else {
                return Err(wrong());
            };
            Ok(embed_complete_bipartition(inst, mutated)?.map(AnyInstance::Mepvcb))
        }
        ReductionKind::ChainSubsetsumTo2Paths => {
            let AnyInstance::SubsetSum(ss) = source else {
                return Err(wrong());
            };
            // The mutated chain mutates its first stage only.
            let signed = subsetsum_to_bkp_signed(ss, mutated)?;
            let positive = bkp_shift_positive(&signed.target, false)?;
            let ordered = bkp_enforce_ordering(&positive.target, false)?;
            let image = bkp_to_mepvcb_2paths(&ordered.target, false)?;
            let mut params = super::ParamMap::new();
            for (stage, map) in [
                ("signed", &signed.params),
                ("positive", &positive.params),
                ("ordered", &ordered.params),
                ("2paths", &image.params),
            ] {
                for (k, v) in map {
                    params.insert(format!("{stage}.{k}"), v.clone());
                }
            }
            Ok(Reduced {
                target: AnyInstance::Mepvcb(image.target),
                params,
            })
        }
    }
}

/// Size caps for the brute-force oracles used during verification.
#[derive(Debug, Clone, Copy)]
pub struct OracleCaps {
    pub vertex_cap: usize,
    pub item_cap: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            vertex_cap: 20,
            item_cap: 24,
        }
    }
}

/// Ground-truth verdict for any instance kind.
pub fn oracle_verdict<W: Weight>(
    inst: &AnyInstance<W>,
    caps: OracleCaps,
) -> Result<bool, SolveError> {
    match inst {
        AnyInstance::Mepvcb(i) => Ok(brute_force_mepvcb(i, caps.vertex_cap)?.is_yes()),
        AnyInstance::Bkp(i) => Ok(brute_force_bkp(i, caps.item_cap)?.is_some()),
        AnyInstance::SubsetSum(i) => Ok(brute_force_subsetsum(i, caps.item_cap)?.is_some()),
    }
}

/// Verification status of one corpus instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum VerifyStatus {
    Equivalent,
    /// Source and target verdicts disagree; carries the serialized source
    /// instance as a replayable counterexample.
    Mismatch {
        witness: String,
        source_answer: bool,
        target_answer: bool,
    },
    /// The instance could not be checked (oracle cap or reduction error).
    Unverified { reason: String },
}

/// One verified (or unverifiable) corpus entry.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionReport {
    pub reduction: String,
    pub source_digest: String,
    pub target_digest: Option<String>,
    /// Source and target budget parameters; the FPT-reduction contract
    /// requires the target budget to be a function of the source budget
    /// (these transformations keep it equal except for the subset-sum
    /// image, where it equals the requested subset size).
    pub source_budget: usize,
    pub target_budget: Option<usize>,
    /// Scale and shift constants recorded by the transformation.
    pub params: super::ParamMap,
    #[serde(flatten)]
    pub status: VerifyStatus,
}

fn verify_one<W: Weight>(
    kind: ReductionKind,
    source: &AnyInstance<W>,
    caps: OracleCaps,
    mutated: bool,
) -> ReductionReport {
    let source_digest = digest_any(source);
    let base = ReductionReport {
        reduction: kind.name().to_string(),
        source_digest,
        target_digest: None,
        source_budget: source.budget(),
        target_budget: None,
        params: super::ParamMap::new(),
        status: VerifyStatus::Equivalent,
    };
    let reduced = match apply_reduction(kind, source, mutated) {
        Ok(r) => r,
        Err(err) => {
            return ReductionReport {
                status: VerifyStatus::Unverified {
                    reason: err.to_string(),
                },
                ..base
            }
        }
    };
    let target_digest = Some(digest_any(&reduced.target));
    let target_budget = Some(reduced.target.budget());
    let source_answer = match oracle_verdict(source, caps) {
        Ok(a) => a,
        Err(err) => {
            return ReductionReport {
                target_digest,
                target_budget,
                params: reduced.params,
                status: VerifyStatus::Unverified {
                    reason: format!("source oracle: {err}"),
                },
                ..base
            }
        }
    };
    let target_answer = match oracle_verdict(&reduced.target, caps) {
        Ok(a) => a,
        Err(err) => {
            return ReductionReport {
                target_digest,
                target_budget,
                params: reduced.params,
                status: VerifyStatus::Unverified {
                    reason: format!("target oracle: {err}"),
                },
                ..base
            }
        }
    };
    let status = if source_answer == target_answer {
        VerifyStatus::Equivalent
    } else {
        VerifyStatus::Mismatch {
            witness: serialize_any(source),
            source_answer,
            target_answer,
        }
    };
    ReductionReport {
        target_digest,
        target_budget,
        params: reduced.params,
        status,
        ..base
    }
}

/// Verify a transformation over a corpus, optionally fanning instances out
/// to `workers` threads. Reports come back in corpus order regardless of
/// the worker count.
pub fn verify_reduction<W: Weight>(
    kind: ReductionKind,
    corpus: &[AnyInstance<W>],
    caps: OracleCaps,
    mutated: bool,
    workers: usize,
) -> Vec<ReductionReport> {
    if workers <= 1 {
        return corpus
            .iter()
            .map(|inst| verify_one(kind, inst, caps, mutated))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool");
    pool.install(|| {
        use rayon::prelude::*;
        corpus
            .par_iter()
            .map(|inst| verify_one(kind, inst, caps, mutated))
            .collect()
    })
}
