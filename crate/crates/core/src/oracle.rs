//! Brute-force reference computations straight from the definitions.
//!
//! Nothing here touches the box decomposition: the semigroup comes from
//! lubs of generators, the pure gaps from glbs of every incomparable pair,
//! and the period property is re-checked from a plain lookup table.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::lattice::{GeneratingSet, LatticePoint};

/// The two gap sequences: first and second coordinates of the generating set.
pub fn gap_projections(gamma: &GeneratingSet) -> (Vec<i64>, Vec<i64>) {
    let mut gaps1: Vec<i64> = gamma.points().iter().map(|p| p.a()).collect();
    let mut gaps2: Vec<i64> = gamma.points().iter().map(|p| p.b()).collect();
    gaps1.sort_unstable();
    gaps2.sort_unstable();
    (gaps1, gaps2)
}

/// `H(P1, P2) ∩ [0, B]²` as a dense membership table.
#[derive(Debug, Clone)]
pub struct SemigroupBox {
    bound: i64,
    table: Vec<bool>,
}

impl SemigroupBox {
    pub fn bound(&self) -> i64 {
        self.bound
    }

    fn index(&self, a: i64, b: i64) -> Option<usize> {
        if a < 0 || b < 0 || a > self.bound || b > self.bound {
            return None;
        }
        Some((a * (self.bound + 1) + b) as usize)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.index(p.a(), p.b()).map(|i| self.table[i]).unwrap_or(false)
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> Vec<LatticePoint> {
        let side = self.bound + 1;
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| LatticePoint::raw(i as i64 / side, i as i64 % side))
            .collect()
    }

    /// Every lub of two members is a member (lubs never leave the box).
    pub fn is_lub_closed(&self) -> bool {
        let members = self.members();
        members.iter().all(|x| members.iter().all(|y| self.contains(&x.lub(y))))
    }

    /// Every point of the box with `a + b >= threshold` is a member.
    pub fn is_complete_above(&self, threshold: i64) -> bool {
        (0..=self.bound).all(|a| (0..=self.bound).all(|b| a + b < threshold || self.table[self.index(a, b).unwrap()]))
    }
}

/// All lubs of pairs drawn from `Γ ∪ (H(P1)×{0}) ∪ ({0}×H(P2))`, clipped to `[0, B]²`.
///
/// `H(Pi) ∩ [0, B]` is taken as the complement of the gap projection.
pub fn semigroup_box(gamma: &GeneratingSet, bound: i64) -> SemigroupBox {
    let (gaps1, gaps2) = gap_projections(gamma);
    let mut generators: Vec<LatticePoint> =
        gamma.points().iter().filter(|p| p.a() <= bound && p.b() <= bound).copied().collect();
    for s in 0..=bound {
        if gaps1.binary_search(&s).is_err() {
            generators.push(LatticePoint::raw(s, 0));
        }
        if gaps2.binary_search(&s).is_err() {
            generators.push(LatticePoint::raw(0, s));
        }
    }
    let side = (bound + 1) as usize;
    let mut table = vec![false; side * side];
    for x in &generators {
        for y in &generators {
            let l = x.lub(y);
            table[l.a() as usize * side + l.b() as usize] = true;
        }
    }
    SemigroupBox { bound, table }
}

/// `G0 = {glb(x, y) : x, y ∈ Γ incomparable}` by scanning every pair.
pub fn pure_gaps_direct(gamma: &GeneratingSet) -> Vec<LatticePoint> {
    let points = gamma.points();
    let mut out: Vec<LatticePoint> = (0..points.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = points[i];
            points[i + 1..].iter().filter(move |y| x.incomparable(y)).map(move |y| x.glb(y))
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// How a point fails the period property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodFinding {
    /// `kπ < τ(β)` but `β + kπ` is not a first coordinate.
    MissingTranslate,
    /// `β + kπ` is a first coordinate although `kπ >= τ(β)`.
    UnexpectedTranslate,
    /// `τ(β + kπ) != τ(β) - kπ`.
    WrongDisplacement { expected: i64, found: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodViolation {
    pub beta: i64,
    pub k: i64,
    pub finding: PeriodFinding,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PeriodReport {
    pub checked: usize,
    pub violations: Vec<PeriodViolation>,
}

impl PeriodReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `β + kπ ∈ G(P1) ⟺ kπ < τ(β)` and `τ(β + kπ) = τ(β) - kπ` for
/// every listed `β` and every `k >= 1` up to the largest first coordinate.
///
/// Works on raw points so that tampered data can be inspected.
pub fn check_period_property(points: &[LatticePoint], period: i64) -> PeriodReport {
    let tau: HashMap<i64, i64> = points.iter().map(|p| (p.a(), p.b())).collect();
    let max_a = points.iter().map(|p| p.a()).max().unwrap_or(0);
    let mut report = PeriodReport::default();
    for p in points {
        let (beta, t) = (p.a(), p.b());
        let mut k = 1i64;
        while beta + k * period <= max_a || k * period < t {
            let shifted = beta + k * period;
            report.checked += 1;
            let finding = match (tau.get(&shifted), k * period < t) {
                (None, true) => Some(PeriodFinding::MissingTranslate),
                (Some(_), false) => Some(PeriodFinding::UnexpectedTranslate),
                (Some(&found), true) if found != t - k * period => {
                    Some(PeriodFinding::WrongDisplacement { expected: t - k * period, found })
                }
                _ => None,
            };
            if let Some(finding) = finding {
                report.violations.push(PeriodViolation { beta, k, finding });
            }
            k += 1;
        }
    }
    report
}

pub fn check_generating_set(gamma: &GeneratingSet) -> PeriodReport {
    check_period_property(gamma.points(), gamma.period())
}
