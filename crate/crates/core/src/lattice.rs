//! Lattice points of N0 x N0 under the product order, and validated minimal
//! generating sets.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::ValidationError;

/// A pair of nonnegative pole orders `(a, b)` at the two places.
///
/// Ordered lexicographically (`a`, then `b`) so that sorted collections are
/// deterministic; the product order is exposed through [`LatticePoint::precedes`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint {
    a: i64,
    b: i64,
}

impl LatticePoint {
    pub const ORIGIN: LatticePoint = LatticePoint { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Result<Self, ValidationError> {
        if a < 0 || b < 0 {
            return Err(ValidationError::ZeroOrNegativeCoordinate(LatticePoint { a, b }));
        }
        Ok(LatticePoint { a, b })
    }

    /// Caller guarantees both coordinates are nonnegative.
    pub(crate) const fn raw(a: i64, b: i64) -> Self {
        LatticePoint { a, b }
    }

    #[inline]
    pub fn a(&self) -> i64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> i64 {
        self.b
    }

    #[inline]
    pub fn lub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint { a: self.a.max(other.a), b: self.b.max(other.b) }
    }

    #[inline]
    pub fn glb(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint { a: self.a.min(other.a), b: self.b.min(other.b) }
    }

    /// `self ⪯ other` in the product order.
    #[inline]
    pub fn precedes(&self, other: &LatticePoint) -> bool {
        self.a <= other.a && self.b <= other.b
    }

    #[inline]
    pub fn incomparable(&self, other: &LatticePoint) -> bool {
        (self.a > other.a && self.b < other.b) || (self.a < other.a && self.b > other.b)
    }

    /// The point with its coordinates exchanged.
    #[inline]
    pub fn swap(&self) -> LatticePoint {
        LatticePoint { a: self.b, b: self.a }
    }

    /// `self + w_j`, or `None` if the result leaves N0 x N0 or overflows.
    pub fn translate(&self, w: TranslationVector) -> Option<LatticePoint> {
        let shift = w.shift()?;
        let a = self.a.checked_sub(shift)?;
        let b = self.b.checked_add(shift)?;
        (a >= 0 && b >= 0).then_some(LatticePoint { a, b })
    }

    /// `self - w_j`, or `None` if the result leaves N0 x N0 or overflows.
    pub fn translate_back(&self, w: TranslationVector) -> Option<LatticePoint> {
        let shift = w.shift()?;
        let a = self.a.checked_add(shift)?;
        let b = self.b.checked_sub(shift)?;
        (a >= 0 && b >= 0).then_some(LatticePoint { a, b })
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.a, self.b].serialize(serializer)
    }
}

impl From<LatticePoint> for (i64, i64) {
    fn from(p: LatticePoint) -> Self {
        (p.a, p.b)
    }
}

impl TryFrom<(i64, i64)> for LatticePoint {
    type Error = ValidationError;

    fn try_from((a, b): (i64, i64)) -> Result<Self, Self::Error> {
        LatticePoint::new(a, b)
    }
}

pub fn lub(p: LatticePoint, q: LatticePoint) -> LatticePoint {
    p.lub(&q)
}

pub fn glb(p: LatticePoint, q: LatticePoint) -> LatticePoint {
    p.glb(&q)
}

pub fn incomparable(p: LatticePoint, q: LatticePoint) -> bool {
    p.incomparable(&q)
}

/// The vector `w_j = (-j·π, j·π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TranslationVector {
    pub j: u64,
    pub period: i64,
}

impl TranslationVector {
    pub fn new(j: u64, period: i64) -> Self {
        TranslationVector { j, period }
    }

    /// `j·π`, the magnitude of both components.
    pub fn shift(&self) -> Option<i64> {
        i64::try_from(self.j).ok()?.checked_mul(self.period)
    }
}

/// A validated minimal generating set: the graph of the bijection between
/// the gap sequences at the two places, together with the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingSet {
    points: Vec<LatticePoint>,
    period: i64,
}

impl GeneratingSet {
    /// Points in lexicographic order.
    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn genus(&self) -> usize {
        self.points.len()
    }

    /// The second coordinate paired with `beta`, if `beta` is a first coordinate.
    pub fn tau(&self, beta: i64) -> Option<i64> {
        // first coordinates are distinct, so lexicographic order sorts by `a`
        self.points
            .binary_search_by(|p| p.a.cmp(&beta))
            .ok()
            .map(|i| self.points[i].b)
    }

    /// True when the set is invariant under exchanging coordinates.
    pub fn is_swap_symmetric(&self) -> bool {
        self.points.iter().all(|p| self.tau(p.b) == Some(p.a))
    }

    /// True when `β ≡ τ(β) (mod π)` for every point.
    pub fn is_diagonal(&self) -> bool {
        self.points.iter().all(|p| (p.a - p.b).rem_euclid(self.period) == 0)
    }
}

/// Checks every invariant of a minimal generating set and returns it sorted.
///
/// Checks run in a fixed order (duplicates, positivity, divisibility by the
/// period, the period property, the `2g - 1` gap bound) and the first
/// failure found in lexicographic point order is reported.
pub fn validate_generating_set<I>(points: I, period: i64) -> Result<GeneratingSet, ValidationError>
where
    I: IntoIterator<Item = LatticePoint>,
{
    if period < 1 {
        return Err(ValidationError::InvalidPeriod(period));
    }
    let mut points: Vec<LatticePoint> = points.into_iter().collect();
    points.sort_unstable();

    for pair in points.windows(2) {
        if pair[0].a == pair[1].a {
            return Err(ValidationError::DuplicateFirstCoordinate(pair[0].a));
        }
    }
    let mut seconds: Vec<i64> = points.iter().map(|p| p.b).collect();
    seconds.sort_unstable();
    for pair in seconds.windows(2) {
        if pair[0] == pair[1] {
            return Err(ValidationError::DuplicateSecondCoordinate(pair[0]));
        }
    }

    for p in &points {
        if p.a <= 0 || p.b <= 0 {
            return Err(ValidationError::ZeroOrNegativeCoordinate(*p));
        }
    }
    for p in &points {
        if p.a % period == 0 || p.b % period == 0 {
            return Err(ValidationError::CoordinateDivisibleByPeriod { point: *p, period });
        }
    }

    let set = GeneratingSet { points, period };
    check_period_property(&set)?;

    let genus = i64::try_from(set.genus()).map_err(|_| ValidationError::Overflow)?;
    let bound = 2 * genus - 1;
    for p in &set.points {
        if p.a > bound || p.b > bound {
            return Err(ValidationError::CoordinateExceedsGapBound { point: *p, bound });
        }
    }
    Ok(set)
}

fn check_period_property(set: &GeneratingSet) -> Result<(), ValidationError> {
    let Some(max_a) = set.points.last().map(|p| p.a) else {
        return Ok(());
    };
    let period = set.period;
    for p in &set.points {
        let mut k: i64 = 1;
        loop {
            let shift = k.checked_mul(period).ok_or(ValidationError::Overflow)?;
            let shifted = p.a.checked_add(shift).ok_or(ValidationError::Overflow)?;
            if shifted > max_a && shift >= p.b {
                break;
            }
            let in_gamma = set.tau(shifted);
            let expected = shift < p.b;
            match in_gamma {
                Some(t) if expected && t == p.b - shift => {}
                None if !expected => {}
                _ => return Err(ValidationError::PeriodPropertyViolation { beta: p.a, k }),
            }
            k += 1;
        }
    }
    Ok(())
}
