//! Problem instances, certificates and verdicts.
//!
//! The central decision problem asks for a vertex set of size at most `k1`
//! whose covered edges weigh at least `k2` and contain a matching of weight
//! at least `k3`. Knapsack and subset-sum instances appear as sources of the
//! constructive reductions.

use crate::graph::{BipartiteGraph, EdgeId, GraphError, Vertex};
use crate::num::{add_checked, headroom_limit, sum_checked, ArithmeticOverflow, Weight};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{name} must be at least 1")]
    NonPositiveThreshold { name: &'static str },
    #[error("k1 = {k1} exceeds the vertex count {vertices}")]
    BudgetExceedsVertices { k1: usize, vertices: usize },
    #[error("profit lists have different lengths ({len1} vs {len2})")]
    ProfitLengthMismatch { len1: usize, len2: usize },
    #[error("item count must be at least 1")]
    EmptyItems,
    #[error("budget {budget} outside 1..={items}")]
    BudgetOutOfRange { budget: usize, items: usize },
    #[error("size {size} outside 1..={items}")]
    SizeOutOfRange { size: usize, items: usize },
    #[error("total profit magnitude exceeds the scalar headroom bound")]
    ProfitOverflow,
}

impl From<ArithmeticOverflow> for InstanceError {
    fn from(_: ArithmeticOverflow) -> Self {
        InstanceError::ProfitOverflow
    }
}

/// Decision instance: graph plus thresholds `(k1, k2, k3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MepvcbInstance<W> {
    pub graph: BipartiteGraph<W>,
    /// Vertex budget, at most `|V|`.
    pub k1: usize,
    /// Coverage weight threshold.
    pub k2: W,
    /// Matching weight threshold.
    pub k3: W,
}

impl<W: Weight> MepvcbInstance<W> {
    pub fn new(graph: BipartiteGraph<W>, k1: usize, k2: W, k3: W) -> Result<Self, InstanceError> {
        if k1 == 0 {
            return Err(InstanceError::NonPositiveThreshold { name: "k1" });
        }
        if k1 > graph.vertex_count() {
            return Err(InstanceError::BudgetExceedsVertices {
                k1,
                vertices: graph.vertex_count(),
            });
        }
        if k2 < W::one() {
            return Err(InstanceError::NonPositiveThreshold { name: "k2" });
        }
        if k3 < W::one() {
            return Err(InstanceError::NonPositiveThreshold { name: "k3" });
        }
        Ok(Self { graph, k1, k2, k3 })
    }
}

/// Cardinality semantics of a knapsack instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CardinalityMode {
    /// A feasible subset must have exactly `budget` items.
    ExactlyBudget,
    /// A feasible subset must have at most `budget` items.
    AtMostBudget,
}

/// Bi-objective knapsack: unit costs, two profit functions, one budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BkpInstance<W> {
    pub profits1: Vec<W>,
    pub profits2: Vec<W>,
    pub budget: usize,
    pub threshold1: W,
    pub threshold2: W,
    pub mode: CardinalityMode,
}

impl<W: Weight> BkpInstance<W> {
    pub fn new(
        profits1: Vec<W>,
        profits2: Vec<W>,
        budget: usize,
        threshold1: W,
        threshold2: W,
        mode: CardinalityMode,
    ) -> Result<Self, InstanceError> {
        if profits1.len() != profits2.len() {
            return Err(InstanceError::ProfitLengthMismatch {
                len1: profits1.len(),
                len2: profits2.len(),
            });
        }
        if profits1.is_empty() {
            return Err(InstanceError::EmptyItems);
        }
        if budget == 0 || budget > profits1.len() {
            return Err(InstanceError::BudgetOutOfRange {
                budget,
                items: profits1.len(),
            });
        }
        if profits1
            .iter()
            .chain(profits2.iter())
            .any(|p| *p == W::min_value())
        {
            return Err(InstanceError::ProfitOverflow);
        }
        let magnitude = sum_checked(
            profits1
                .iter()
                .chain(profits2.iter())
                .map(|p| p.abs()),
        )?;
        // Reductions shift every profit by roughly the total magnitude per
        // item; demand headroom so a single shift stage cannot overflow a
        // freshly validated instance.
        if magnitude > headroom_limit::<W>() / W::from_count(profits1.len() + 1)? {
            return Err(InstanceError::ProfitOverflow);
        }
        Ok(Self {
            profits1,
            profits2,
            budget,
            threshold1,
            threshold2,
            mode,
        })
    }

    pub fn items(&self) -> usize {
        self.profits1.len()
    }

    /// Sum of `profits1` over the item indices in `subset`.
    pub fn profit1(&self, subset: &[usize]) -> W {
        sum_checked(subset.iter().map(|&i| self.profits1[i]))
            .expect("validated profit magnitudes cannot overflow on subsets")
    }

    pub fn profit2(&self, subset: &[usize]) -> W {
        sum_checked(subset.iter().map(|&i| self.profits2[i]))
            .expect("validated profit magnitudes cannot overflow on subsets")
    }

    /// True when both profits of every item are strictly positive.
    pub fn profits_positive(&self) -> bool {
        self.profits1
            .iter()
            .chain(self.profits2.iter())
            .all(|p| *p > W::zero())
    }

    /// Per-item ordering restriction `pr1 - pr2 <= pr2 < pr1`.
    pub fn satisfies_ordering(&self) -> bool {
        self.profits1
            .iter()
            .zip(&self.profits2)
            .all(|(&p1, &p2)| p1 - p2 <= p2 && p2 < p1)
    }

    /// Gap restriction `sum(pr1 - pr2) < min pr2` on top of the ordering.
    pub fn satisfies_gap(&self) -> bool {
        if !self.satisfies_ordering() {
            return false;
        }
        let spread = sum_checked(
            self.profits1
                .iter()
                .zip(&self.profits2)
                .map(|(&p1, &p2)| p1 - p2),
        )
        .expect("validated profit magnitudes cannot overflow on sums");
        let min2 = self.profits2.iter().copied().min().expect("non-empty");
        spread < min2
    }
}

/// Sized subset sum: find exactly `size` values summing to `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetSumInstance<W> {
    pub values: Vec<W>,
    pub target: W,
    pub size: usize,
}

impl<W: Weight> SubsetSumInstance<W> {
    pub fn new(values: Vec<W>, target: W, size: usize) -> Result<Self, InstanceError> {
        if values.is_empty() {
            return Err(InstanceError::EmptyItems);
        }
        if size == 0 || size > values.len() {
            return Err(InstanceError::SizeOutOfRange {
                size,
                items: values.len(),
            });
        }
        if values.iter().any(|v| *v == W::min_value()) || target == W::min_value() {
            return Err(InstanceError::ProfitOverflow);
        }
        let magnitude = sum_checked(values.iter().map(|v| v.abs()))?;
        if magnitude > headroom_limit::<W>() / W::from_count(values.len() + 1)? {
            return Err(InstanceError::ProfitOverflow);
        }
        Ok(Self {
            values,
            target,
            size,
        })
    }
}

/// A claimed solution: the chosen vertices, the edges they cover, and a
/// matching inside the covered edges, with both achieved totals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<W> {
    pub chosen: BTreeSet<Vertex>,
    pub covered: BTreeSet<EdgeId>,
    pub matching: BTreeSet<EdgeId>,
    pub covered_weight: W,
    pub matching_weight: W,
}

impl<W: Weight> Certificate<W> {
    /// Assemble a certificate from a chosen vertex set and a matching,
    /// computing the covered set and both totals from the graph.
    pub fn from_parts(
        graph: &BipartiteGraph<W>,
        chosen: BTreeSet<Vertex>,
        matching: BTreeSet<EdgeId>,
    ) -> Result<Self, GraphError> {
        let covered = graph.covered_edges(&chosen)?;
        let covered_weight = graph.weight_of(covered.iter().copied());
        let matching_weight = graph.weight_of(matching.iter().copied());
        Ok(Self {
            chosen,
            covered,
            matching,
            covered_weight,
            matching_weight,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateViolation {
    #[error("chosen set has {actual} vertices, budget k1 = {k1}")]
    TooManyVertices { actual: usize, k1: usize },
    #[error("chosen vertex {vertex} out of range")]
    ChosenOutOfRange { vertex: Vertex },
    #[error("covered set disagrees with the edges covered by the chosen set")]
    CoveredSetMismatch,
    #[error("matching edge {edge:?} is not in the covered set")]
    MatchingNotCovered { edge: EdgeId },
    #[error("not a matching: edges {first:?} and {second:?} share a vertex")]
    NotAMatching { first: EdgeId, second: EdgeId },
    #[error("covered weight recorded as {recorded}, recomputed {actual}")]
    WrongCoveredWeight { recorded: String, actual: String },
    #[error("matching weight recorded as {recorded}, recomputed {actual}")]
    WrongMatchingWeight { recorded: String, actual: String },
    #[error("covered weight {actual} < {k2}")]
    CoverageBelowThreshold { actual: String, k2: String },
    #[error("matching weight {actual} < {k3}")]
    MatchingBelowThreshold { actual: String, k3: String },
}

/// Validate a certificate against an instance.
pub fn check_certificate<W: Weight>(
    inst: &MepvcbInstance<W>,
    cert: &Certificate<W>,
) -> Result<(), CertificateViolation> {
    let g = &inst.graph;
    if cert.chosen.len() > inst.k1 {
        return Err(CertificateViolation::TooManyVertices {
            actual: cert.chosen.len(),
            k1: inst.k1,
        });
    }
    let covered = g
        .covered_edges(&cert.chosen)
        .map_err(|e| match e {
            GraphError::VertexOutOfRange { vertex } => {
                CertificateViolation::ChosenOutOfRange { vertex }
            }
            _ => CertificateViolation::CoveredSetMismatch,
        })?;
    if covered != cert.covered {
        return Err(CertificateViolation::CoveredSetMismatch);
    }
    let mut seen: Vec<EdgeId> = Vec::new();
    for &e in &cert.matching {
        if !cert.covered.contains(&e) {
            return Err(CertificateViolation::MatchingNotCovered { edge: e });
        }
        let (a, b) = g.endpoints(e);
        for &f in &seen {
            let (c, d) = g.endpoints(f);
            if a == c || a == d || b == c || b == d {
                return Err(CertificateViolation::NotAMatching { first: f, second: e });
            }
        }
        seen.push(e);
    }
    let covered_weight = g.weight_of(cert.covered.iter().copied());
    if covered_weight != cert.covered_weight {
        return Err(CertificateViolation::WrongCoveredWeight {
            recorded: cert.covered_weight.to_string(),
            actual: covered_weight.to_string(),
        });
    }
    let matching_weight = g.weight_of(cert.matching.iter().copied());
    if matching_weight != cert.matching_weight {
        return Err(CertificateViolation::WrongMatchingWeight {
            recorded: cert.matching_weight.to_string(),
            actual: matching_weight.to_string(),
        });
    }
    if covered_weight < inst.k2 {
        return Err(CertificateViolation::CoverageBelowThreshold {
            actual: covered_weight.to_string(),
            k2: inst.k2.to_string(),
        });
    }
    if matching_weight < inst.k3 {
        return Err(CertificateViolation::MatchingBelowThreshold {
            actual: matching_weight.to_string(),
            k3: inst.k3.to_string(),
        });
    }
    Ok(())
}

/// Decision answer, with a certificate on the positive side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer<W> {
    Yes(Certificate<W>),
    No,
}

/// Answer plus the label of the rule or solver that decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict<W> {
    pub answer: Answer<W>,
    pub method: String,
}

impl<W> Verdict<W> {
    pub fn yes(certificate: Certificate<W>, method: impl Into<String>) -> Self {
        Self {
            answer: Answer::Yes(certificate),
            method: method.into(),
        }
    }

    pub fn no(method: impl Into<String>) -> Self {
        Self {
            answer: Answer::No,
            method: method.into(),
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self.answer, Answer::Yes(_))
    }

    pub fn certificate(&self) -> Option<&Certificate<W>> {
        match &self.answer {
            Answer::Yes(c) => Some(c),
            Answer::No => None,
        }
    }
}

/// Any of the three instance kinds handled by the reduction workbench.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyInstance<W> {
    Mepvcb(MepvcbInstance<W>),
    Bkp(BkpInstance<W>),
    SubsetSum(SubsetSumInstance<W>),
}

impl<W> AnyInstance<W> {
    pub fn kind_name(&self) -> &'static str {
        match self {
            AnyInstance::Mepvcb(_) => "mepvcb",
            AnyInstance::Bkp(_) => "bkp",
            AnyInstance::SubsetSum(_) => "subset-sum",
        }
    }

    /// The FPT budget parameter of the instance (`k1`, `B`, or `k`).
    pub fn budget(&self) -> usize {
        match self {
            AnyInstance::Mepvcb(i) => i.k1,
            AnyInstance::Bkp(i) => i.budget,
            AnyInstance::SubsetSum(i) => i.size,
        }
    }
}

/// Sum of the `count` largest weights in `values`.
pub fn top_weights_sum<W: Weight>(values: impl IntoIterator<Item = W>, count: usize) -> W {
    let mut all: Vec<W> = values.into_iter().collect();
    all.sort();
    all.iter()
        .rev()
        .take(count)
        .fold(W::zero(), |acc, &w| {
            add_checked(acc, w).expect("validated weights cannot overflow on sums")
        })
}
