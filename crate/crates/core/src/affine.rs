//! Affine integer expressions `slope * k + intercept` in the spine index `k`,
//! and "for all `k >= n0`" comparisons under the escalation order.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AffineError {
    #[error("{expr} is negative at index {index}")]
    Negative { expr: AffExpr, index: u64 },
    #[error("{expr} takes negative values for large indices")]
    Decreasing { expr: AffExpr },
    #[error("coefficient {0} is outside the supported range")]
    CoefficientRange(i64),
    #[error("index {0} is outside the supported range")]
    IndexRange(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AffExpr {
    pub slope: i64,
    pub intercept: i64,
}

/// Result of a universally quantified comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForallCheck {
    Valid,
    /// Smallest index at which the comparison fails.
    Fails { at: u64 },
}

impl ForallCheck {
    pub fn is_valid(self) -> bool {
        matches!(self, ForallCheck::Valid)
    }
}

impl AffExpr {
    /// Largest accepted absolute coefficient; keeps every evaluation at an
    /// index up to [`AffExpr::MAX_INDEX`] inside `i64`.
    pub const MAX_COEFF: i64 = 1 << 30;
    pub const MAX_INDEX: u64 = 1 << 31;

    pub const fn new(slope: i64, intercept: i64) -> Self {
        Self { slope, intercept }
    }

    pub const fn constant(value: i64) -> Self {
        Self { slope: 0, intercept: value }
    }

    pub fn is_constant(&self) -> bool {
        self.slope == 0
    }

    fn value_at(&self, k: u64) -> i128 {
        self.slope as i128 * k as i128 + self.intercept as i128
    }

    /// Value at index `k` as a natural number.
    pub fn eval(&self, k: u64) -> Result<u64, AffineError> {
        let v = self.value_at(k);
        if v < 0 {
            return Err(AffineError::Negative { expr: *self, index: k });
        }
        u64::try_from(v).map_err(|_| AffineError::IndexRange(k))
    }

    /// The expression after substituting `k + by` for `k`.
    pub fn shift(&self, by: u64) -> AffExpr {
        let intercept = self.value_at(by);
        AffExpr { slope: self.slope, intercept: i64::try_from(intercept).expect("shifted intercept fits in i64") }
    }

    /// Checks coefficient ranges and that the value is a natural number at
    /// every index `k >= n0`.
    pub fn validate_from(&self, n0: u64) -> Result<(), AffineError> {
        self.validate_range()?;
        if n0 > Self::MAX_INDEX {
            return Err(AffineError::IndexRange(n0));
        }
        if self.slope < 0 {
            return Err(AffineError::Decreasing { expr: *self });
        }
        self.eval(n0).map(|_| ())
    }

    pub fn validate_range(&self) -> Result<(), AffineError> {
        for c in [self.slope, self.intercept] {
            if c.unsigned_abs() > Self::MAX_COEFF as u64 {
                return Err(AffineError::CoefficientRange(c));
            }
        }
        Ok(())
    }
}

impl fmt::Display for AffExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.slope, self.intercept) {
            (0, i) => write!(f, "{i}"),
            (s, 0) => write!(f, "{s}k"),
            (s, i) if i < 0 => write!(f, "{s}k-{}", i.unsigned_abs()),
            (s, i) => write!(f, "{s}k+{i}"),
        }
    }
}

/// Decides `lhs =< rhs` under the escalation order for every index
/// `k >= n0`, i.e. `lhs(k) >= rhs(k)` numerically. A failure reports the
/// smallest index where the comparison breaks.
pub fn leq_forall(lhs: AffExpr, rhs: AffExpr, n0: u64) -> ForallCheck {
    // d(k) = lhs(k) - rhs(k) must stay >= 0 on [n0, inf)
    let ds = lhs.slope as i128 - rhs.slope as i128;
    let di = lhs.intercept as i128 - rhs.intercept as i128;
    let d = |k: i128| ds * k + di;
    let n0i = n0 as i128;
    if ds >= 0 {
        return if d(n0i) >= 0 { ForallCheck::Valid } else { ForallCheck::Fails { at: n0 } };
    }
    // decreasing: first k with ds*k + di < 0 is floor(di / -ds) + 1
    let crossing = di.div_euclid(-ds) + 1;
    let at = crossing.max(n0i);
    ForallCheck::Fails { at: u64::try_from(at).expect("witness index fits in u64") }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn eval_examples() {
        assert_eq!(AffExpr::new(2, 1).eval(3), Ok(7));
        assert_eq!(AffExpr::new(0, 5).eval(0), Ok(5));
        assert_eq!(AffExpr::new(0, 5).eval(1_000), Ok(5));
        assert_eq!(AffExpr::new(2, 0).eval(0), Ok(0));
        assert!(matches!(AffExpr::new(1, -3).eval(2), Err(AffineError::Negative { index: 2, .. })));
    }

    #[test]
    fn leq_forall_examples() {
        assert_eq!(leq_forall(AffExpr::new(2, 2), AffExpr::new(2, 1), 0), ForallCheck::Valid);
        assert_eq!(leq_forall(AffExpr::new(2, 1), AffExpr::new(2, 2), 0), ForallCheck::Fails { at: 0 });
        assert_eq!(leq_forall(AffExpr::new(3, 0), AffExpr::new(2, 10), 11), ForallCheck::Valid);
        // same pair from below the crossing point fails at the first index
        assert_eq!(leq_forall(AffExpr::new(3, 0), AffExpr::new(2, 10), 0), ForallCheck::Fails { at: 0 });
        // decreasing difference: 10 - k >= 0 breaks at k = 11
        assert_eq!(leq_forall(AffExpr::new(0, 10), AffExpr::new(1, 0), 0), ForallCheck::Fails { at: 11 });
        assert_eq!(leq_forall(AffExpr::new(0, 10), AffExpr::new(1, 0), 20), ForallCheck::Fails { at: 20 });
    }

    #[test]
    fn shift_substitutes_index() {
        let e = AffExpr::new(2, 1);
        assert_eq!(e.shift(3), AffExpr::new(2, 7));
        for k in 0..10 {
            assert_eq!(e.shift(4).eval(k), e.eval(k + 4));
        }
    }

    #[test]
    fn validation() {
        assert!(AffExpr::new(2, 0).validate_from(0).is_ok());
        assert!(AffExpr::new(1, -3).validate_from(3).is_ok());
        assert!(AffExpr::new(1, -3).validate_from(2).is_err());
        assert!(matches!(AffExpr::new(-1, 100).validate_from(0), Err(AffineError::Decreasing { .. })));
        assert!(AffExpr::new(AffExpr::MAX_COEFF + 1, 0).validate_from(0).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(AffExpr::new(2, 1).to_string(), "2k+1");
        assert_eq!(AffExpr::new(2, 0).to_string(), "2k");
        assert_eq!(AffExpr::new(0, 7).to_string(), "7");
        assert_eq!(AffExpr::new(1, -2).to_string(), "1k-2");
    }

    proptest! {
        #[test]
        fn agrees_with_numeric_spot_check(
            s1 in -5i64..=5, i1 in -20i64..=20, s2 in -5i64..=5, i2 in -20i64..=20, n0 in 0u64..50
        ) {
            let (e1, e2) = (AffExpr::new(s1, i1), AffExpr::new(s2, i2));
            let numeric = |k: u64| e1.value_at(k) >= e2.value_at(k);
            match leq_forall(e1, e2, n0) {
                ForallCheck::Valid => {
                    for k in n0..=n0 + 1000 {
                        prop_assert!(numeric(k), "claimed valid but fails at {k}");
                    }
                }
                ForallCheck::Fails { at } => {
                    prop_assert!(at >= n0);
                    prop_assert!(!numeric(at));
                    for k in n0..at {
                        prop_assert!(numeric(k), "witness {at} is not the first failure ({k})");
                    }
                }
            }
        }
    }
}
