//! Integer scalar abstraction for edge weights, profits and thresholds.
//!
//! Everything in this crate is exact integer arithmetic; there are no
//! floating-point weights. The solver core is generic over the scalar so the
//! same algorithms run on `i64` (the default used by the CLI) or `i128` when
//! a reduction chain needs more headroom. Aggregate arithmetic is
//! overflow-checked: instance constructors enforce a headroom bound on total
//! magnitudes (see [`headroom_limit`]) so that internal sums and alternating
//! path gains cannot wrap, and reductions that scale weights report overflow
//! as a hard error instead of wrapping.

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, NumCast, PrimInt, Signed};
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Signed integer scalar. Implemented for all signed primitive integers.
pub trait Weight:
    PrimInt
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + Hash
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Parse a decimal integer, rejecting values outside the scalar range.
    fn parse_decimal(text: &str) -> Option<Self> {
        let wide: i128 = text.parse().ok()?;
        NumCast::from(wide)
    }

    /// Lift a small unsigned count into the scalar, erroring on overflow.
    fn from_count(count: usize) -> Result<Self, ArithmeticOverflow> {
        NumCast::from(count).ok_or(ArithmeticOverflow)
    }
}

impl<T> Weight for T where
    T: PrimInt
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + Hash
        + Display
        + Debug
        + Send
        + Sync
        + 'static
{
}

/// Overflow during weight or profit arithmetic. Never silently wrapped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("integer overflow in weight arithmetic")]
pub struct ArithmeticOverflow;

/// Upper bound on the total absolute magnitude an instance may carry.
///
/// Keeping every instance's total weight below `MAX / 4` guarantees that any
/// sum of a subset of weights, and any difference of two such sums (as used
/// by alternating-path gains), stays in range.
pub fn headroom_limit<W: Weight>() -> W {
    W::max_value() / W::from_count(4).expect("small constant fits any scalar")
}

/// Checked sum of an iterator of scalars.
pub fn sum_checked<W: Weight>(
    values: impl IntoIterator<Item = W>,
) -> Result<W, ArithmeticOverflow> {
    let mut acc = W::zero();
    for v in values {
        acc = acc.checked_add(&v).ok_or(ArithmeticOverflow)?;
    }
    Ok(acc)
}

/// `a + b` with overflow reported as an error.
pub fn add_checked<W: Weight>(a: W, b: W) -> Result<W, ArithmeticOverflow> {
    a.checked_add(&b).ok_or(ArithmeticOverflow)
}

/// `a * b` with overflow reported as an error.
pub fn mul_checked<W: Weight>(a: W, b: W) -> Result<W, ArithmeticOverflow> {
    a.checked_mul(&b).ok_or(ArithmeticOverflow)
}

/// Ceiling division of non-negative integers, `ceil(a / b)` with `b > 0`.
pub fn div_ceil<W: Weight>(a: W, b: W) -> W {
    debug_assert!(a >= W::zero() && b > W::zero());
    let (q, r) = (a / b, a % b);
    if r.is_zero() {
        q
    } else {
        q + W::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_decimal_respects_scalar_range() {
        assert_eq!(i64::parse_decimal("42"), Some(42));
        assert_eq!(i64::parse_decimal("-7"), Some(-7));
        assert_eq!(i32::parse_decimal("3000000000"), None);
        assert_eq!(i64::parse_decimal("abc"), None);
    }

    #[test]
    fn sum_checked_detects_overflow() {
        assert_eq!(sum_checked([1i64, 2, 3]), Ok(6));
        assert_eq!(
            sum_checked([i64::MAX, 1]),
            Err(ArithmeticOverflow)
        );
    }

    #[test]
    fn div_ceil_rounds_up() {
        assert_eq!(div_ceil(7i64, 2), 4);
        assert_eq!(div_ceil(6i64, 2), 3);
        assert_eq!(div_ceil(0i64, 5), 0);
    }
}
