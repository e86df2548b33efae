//! Knapsack-side transformations: subset sum into signed BKP, the
//! shift-to-positive, ordering and gap restrictions, and the 2-path gadget
//! graph construction.

use super::{ParamMap, Reduced, ReductionError};
use crate::graph::BipartiteGraph;
use crate::instance::{
    BkpInstance, CardinalityMode, MepvcbInstance, SubsetSumInstance,
};
use crate::num::{add_checked, div_ceil, mul_checked, sum_checked, Weight};

/// Sized subset sum as a signed bi-objective knapsack with exact-budget
/// semantics: `pr1 = x`, `pr2 = -x`, `B = k`, `P1 = s`, `P2 = -s`. A subset
/// sums to exactly `s` precisely when both signed thresholds are met.
pub fn subsetsum_to_bkp_signed<W: Weight>(
    ss: &SubsetSumInstance<W>,
    mutated: bool,
) -> Result<Reduced<BkpInstance<W>>, ReductionError> {
    let profits1 = ss.values.clone();
    let profits2: Vec<W> = ss.values.iter().map(|&v| -v).collect();
    let threshold2 = if mutated { ss.target } else { -ss.target };
    let bkp = BkpInstance::new(
        profits1,
        profits2,
        ss.size,
        ss.target,
        threshold2,
        CardinalityMode::ExactlyBudget,
    )?;
    Ok(Reduced::new(bkp)
        .with("b", ss.size)
        .with("p1", ss.target)
        .with("p2", threshold2))
}

fn canonical_bkp<W: Weight>(yes: bool) -> BkpInstance<W> {
    let one = W::one();
    let threshold = if yes { one } else { one + one };
    BkpInstance::new(
        vec![one],
        vec![one],
        1,
        threshold,
        threshold,
        CardinalityMode::AtMostBudget,
    )
    .expect("canonical instance is valid")
}

/// Shift a signed exact-budget instance to strictly positive profits with
/// at-most-budget semantics: `Q_i = 1 + sum |pr_i|`, `pr'_i = pr_i + Q_i`,
/// `P'_i = P_i + B * Q_i`.
///
/// Thresholds out of range are handled first: `P_i >= Q_i` is unreachable
/// (the instance collapses to a canonical no-instance), `P_i <= -Q_i` is
/// vacuous (the threshold is clamped to the always-satisfied `1 - Q_i`; if
/// both are vacuous the instance collapses to a canonical yes-instance).
/// With positive profits a feasible subset of fewer than `B` items extends
/// to exactly `B` items without losing feasibility, which is what makes the
/// exact-to-at-most switch sound.
pub fn bkp_shift_positive<W: Weight>(
    bkp: &BkpInstance<W>,
    mutated: bool,
) -> Result<Reduced<BkpInstance<W>>, ReductionError> {
    if bkp.mode != CardinalityMode::ExactlyBudget {
        return Err(ReductionError::Precondition(
            "shift-to-positive expects exact-budget semantics".into(),
        ));
    }
    let mut q = [W::zero(); 2];
    for (slot, profits) in [(0, &bkp.profits1), (1, &bkp.profits2)] {
        let magnitude = sum_checked(profits.iter().map(|p| p.abs()))?;
        // The mutated variant drops the +1, which breaks the trivial-instance
        // guards on thresholds equal to the total magnitude.
        q[slot] = if mutated {
            magnitude
        } else {
            add_checked(magnitude, W::one())?
        };
    }
    let budget_w = W::from_count(bkp.budget)?;

    let mut params = ParamMap::new();
    params.insert("q1".into(), q[0].to_string());
    params.insert("q2".into(), q[1].to_string());

    let mut thresholds = [bkp.threshold1, bkp.threshold2];
    let mut vacuous = [false, false];
    for i in 0..2 {
        if thresholds[i] >= q[i] {
            params.insert("canonical".into(), "no".into());
            return Ok(Reduced {
                target: canonical_bkp(false),
                params,
            });
        }
        if thresholds[i] <= -q[i] {
            vacuous[i] = true;
            thresholds[i] = W::one() - q[i];
        }
    }
    if vacuous[0] && vacuous[1] {
        params.insert("canonical".into(), "yes".into());
        return Ok(Reduced {
            target: canonical_bkp(true),
            params,
        });
    }

    let shift = |profits: &[W], qi: W| -> Result<Vec<W>, ReductionError> {
        profits
            .iter()
            .map(|&p| add_checked(p, qi).map_err(ReductionError::from))
            .collect()
    };
    let profits1 = shift(&bkp.profits1, q[0])?;
    let profits2 = shift(&bkp.profits2, q[1])?;
    let threshold1 = add_checked(thresholds[0], mul_checked(budget_w, q[0])?)?;
    let threshold2 = add_checked(thresholds[1], mul_checked(budget_w, q[1])?)?;
    debug_assert!(
        mutated || profits1.iter().chain(&profits2).all(|p| *p > W::zero()),
        "the faithful shift makes every profit strictly positive"
    );

    let target = BkpInstance::new(
        profits1,
        profits2,
        bkp.budget,
        threshold1,
        threshold2,
        CardinalityMode::AtMostBudget,
    )?;
    params.insert("p1'".into(), threshold1.to_string());
    params.insert("p2'".into(), threshold2.to_string());
    Ok(Reduced { target, params })
}

/// Restrict positive profits to `pr1 - pr2 <= pr2 < pr1` per item.
///
/// Stage one scales the first profit by `Q = 1 + max ceil(pr2 / pr1)`,
/// establishing `pr2 < pr1`. Stage two shifts both profits by
/// `P0 = max(1, max(pr1 - 2 pr2))` and the thresholds by `B * P0`,
/// establishing `pr1 <= 2 pr2` without disturbing the first inequality.
pub fn bkp_enforce_ordering<W: Weight>(
    bkp: &BkpInstance<W>,
    mutated: bool,
) -> Result<Reduced<BkpInstance<W>>, ReductionError> {
    if !bkp.profits_positive() {
        return Err(ReductionError::Precondition(
            "ordering restriction expects strictly positive profits".into(),
        ));
    }
    let budget_w = W::from_count(bkp.budget)?;
    let q = add_checked(
        bkp.profits1
            .iter()
            .zip(&bkp.profits2)
            .map(|(&p1, &p2)| div_ceil(p2, p1))
            .max()
            .expect("instances are non-empty"),
        W::one(),
    )?;
    let profits1: Vec<W> = bkp
        .profits1
        .iter()
        .map(|&p| mul_checked(p, q))
        .collect::<Result<_, _>>()?;
    let threshold1 = mul_checked(bkp.threshold1, q)?;

    let p0 = profits1
        .iter()
        .zip(&bkp.profits2)
        .map(|(&p1, &p2)| p1 - (p2 + p2))
        .max()
        .expect("instances are non-empty")
        .max(W::one());
    let profits1: Vec<W> = profits1
        .into_iter()
        .map(|p| add_checked(p, p0))
        .collect::<Result<_, _>>()?;
    let profits2: Vec<W> = bkp
        .profits2
        .iter()
        .map(|&p| add_checked(p, p0))
        .collect::<Result<_, _>>()?;
    // The mutated variant shifts the thresholds one budget slot short.
    let slots = if mutated {
        budget_w - W::one()
    } else {
        budget_w
    };
    let threshold1 = add_checked(threshold1, mul_checked(slots, p0)?)?;
    let threshold2 = add_checked(bkp.threshold2, mul_checked(slots, p0)?)?;

    let target = BkpInstance::new(
        profits1,
        profits2,
        bkp.budget,
        threshold1,
        threshold2,
        bkp.mode,
    )?;
    assert!(
        target.satisfies_ordering(),
        "the two-stage transform establishes the per-item ordering"
    );
    Ok(Reduced::new(target)
        .with("q", q)
        .with("p0", p0)
        .with("p1'", threshold1)
        .with("p2'", threshold2))
}

/// On top of the ordering restriction, establish
/// `sum(pr1 - pr2) < min pr2` by shifting every profit by `T + 1` where
/// `T = sum(pr1 - pr2)`; the per-item differences are shift-invariant and
/// the minimum second profit grows past `T`.
pub fn bkp_enforce_gap<W: Weight>(
    bkp: &BkpInstance<W>,
    mutated: bool,
) -> Result<Reduced<BkpInstance<W>>, ReductionError> {
    if !bkp.satisfies_ordering() {
        return Err(ReductionError::Precondition(
            "gap restriction expects the per-item ordering".into(),
        ));
    }
    let spread = sum_checked(
        bkp.profits1
            .iter()
            .zip(&bkp.profits2)
            .map(|(&p1, &p2)| p1 - p2),
    )?;
    let shift = add_checked(spread, W::one())?;
    let budget_w = W::from_count(bkp.budget)?;
    let profits1: Vec<W> = bkp
        .profits1
        .iter()
        .map(|&p| add_checked(p, shift))
        .collect::<Result<_, _>>()?;
    let profits2: Vec<W> = bkp
        .profits2
        .iter()
        .map(|&p| add_checked(p, shift))
        .collect::<Result<_, _>>()?;
    // The mutated variant shifts the thresholds by B * T instead of
    // B * (T + 1).
    let threshold_shift = if mutated {
        mul_checked(budget_w, spread)?
    } else {
        mul_checked(budget_w, shift)?
    };
    let threshold1 = add_checked(bkp.threshold1, threshold_shift)?;
    let threshold2 = add_checked(bkp.threshold2, threshold_shift)?;

    let target = BkpInstance::new(
        profits1,
        profits2,
        bkp.budget,
        threshold1,
        threshold2,
        bkp.mode,
    )?;
    assert!(target.satisfies_gap(), "shifting by T + 1 establishes the gap");
    Ok(Reduced::new(target)
        .with("t", spread)
        .with("shift", shift))
}

/// The item-gadget graph: one 2-path per item with edge weights
/// `pr1 - pr2` (light) and `pr2` (heavy), thresholds `k1 = B`, `k2 = P1`,
/// `k3 = P2`.
///
/// Selecting the centers of an item subset `S` covers weight exactly
/// `pr1(S)`, and the heaviest matching inside those edges takes the heavy
/// edge of each path for exactly `pr2(S)` (the ordering restriction makes
/// the heavy edge the per-path maximum). Degree-one vertices are dominated
/// by their centers, so center subsets are exhaustive.
///
/// Non-positive thresholds are vacuous for positive profits and are clamped
/// to 1, which any non-empty selection satisfies.
pub fn bkp_to_mepvcb_2paths<W: Weight>(
    bkp: &BkpInstance<W>,
    mutated: bool,
) -> Result<Reduced<MepvcbInstance<W>>, ReductionError> {
    if !bkp.satisfies_ordering() {
        return Err(ReductionError::Precondition(
            "the 2-path gadget expects the per-item ordering".into(),
        ));
    }
    let n = bkp.items();
    let mut edges = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (p1, p2) = (bkp.profits1[i], bkp.profits2[i]);
        let (light, heavy) = if mutated {
            // The mutated variant forgets to subtract, breaking the
            // coverage identity w(E_S) = pr1(S).
            (p1, p2)
        } else {
            (p1 - p2, p2)
        };
        edges.push((i, 2 * i, light));
        edges.push((i, 2 * i + 1, heavy));
    }
    let graph = BipartiteGraph::new(n, 2 * n, edges)?;
    let k2 = bkp.threshold1.max(W::one());
    let k3 = bkp.threshold2.max(W::one());
    let inst = MepvcbInstance::new(graph, bkp.budget, k2, k3)?;
    Ok(Reduced::new(inst)
        .with("k1", bkp.budget)
        .with("k2", k2)
        .with("k3", k3))
}
