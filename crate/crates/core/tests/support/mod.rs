//! Generators and property checks shared by the property suite and the
//! acceptance harness.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::TestCaseError;

use puregaps::arith::gcd;
use puregaps::engine::{self, G4Strategy};
use puregaps::{gk, kummer, oracle, GeneratingSet, LatticePoint, TranslationVector};

pub const CASES: u32 = 1000;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, ..ProptestConfig::default() }
}

pub fn point() -> impl Strategy<Value = LatticePoint> {
    (0i64..400, 0i64..400).prop_map(|(a, b)| LatticePoint::new(a, b).unwrap())
}

pub fn family_gamma() -> impl Strategy<Value = GeneratingSet> {
    prop_oneof![
        1 => (2i64..=3).prop_map(|q| gk::gk_generating_set(q).unwrap()),
        4 => (2i64..=24, 2i64..=24)
            .prop_filter("coprime", |&(m, r)| gcd(m, r) == 1)
            .prop_map(|(m, r)| kummer::kummer_generating_set(m, r).unwrap()),
    ]
}

/// A generating set built from random row-zero boxes: each chosen residue
/// pair `(x, y)` at row `k` expands to `((k-j)π + x, jπ + y)` for `j = 0..=k`,
/// which satisfies the period property by construction. When `symmetric`,
/// residues are paired so the set is invariant under swapping coordinates.
pub fn synthetic_gamma(symmetric: bool) -> impl Strategy<Value = GeneratingSet> {
    (3i64..=14)
        .prop_flat_map(|period| {
            let residues: Vec<i64> = (1..period).collect();
            let len = residues.len();
            (
                Just(period),
                Just(residues.clone()).prop_shuffle(),
                Just(residues).prop_shuffle(),
                1..=len,
                prop::collection::vec(0i64..3, len),
                prop::collection::vec(any::<bool>(), len),
            )
        })
        .prop_filter_map("coordinates above 2g-1", move |(period, xs, ys, n, rows, pair)| {
            let mut seeds = Vec::new();
            if symmetric {
                let mut idx = 0;
                while idx < n {
                    if pair[idx] && idx + 1 < n {
                        seeds.push((xs[idx], xs[idx + 1], rows[idx]));
                        seeds.push((xs[idx + 1], xs[idx], rows[idx]));
                        idx += 2;
                    } else {
                        seeds.push((xs[idx], xs[idx], rows[idx]));
                        idx += 1;
                    }
                }
            } else {
                seeds.extend((0..n).map(|i| (xs[i], ys[i], rows[i])));
            }
            let mut points = Vec::new();
            for (x, y, k) in seeds {
                for j in 0..=k {
                    points.push(LatticePoint::new((k - j) * period + x, j * period + y).unwrap());
                }
            }
            puregaps::validate_generating_set(points, period).ok()
        })
}

pub fn any_gamma() -> impl Strategy<Value = GeneratingSet> {
    prop_oneof![family_gamma(), synthetic_gamma(false), synthetic_gamma(true)]
}

pub fn lattice_laws(p: LatticePoint, q: LatticePoint) -> Result<(), TestCaseError> {
    prop_assert_eq!(p.lub(&q), q.lub(&p));
    prop_assert_eq!(p.glb(&q), q.glb(&p));
    prop_assert_eq!(p.lub(&p), p);
    prop_assert_eq!(p.glb(&p), p);
    prop_assert!(p.glb(&q).precedes(&p) && p.glb(&q).precedes(&q));
    prop_assert!(p.precedes(&p.lub(&q)) && q.precedes(&p.lub(&q)));
    prop_assert_eq!(p.glb(&q) == p, p.precedes(&q));
    prop_assert_eq!(p.lub(&q) == q, p.precedes(&q));
    let (glb, lub) = (p.glb(&q), p.lub(&q));
    prop_assert_eq!(p.incomparable(&q), glb != p && glb != q);
    prop_assert_eq!(p.incomparable(&q), lub != p && lub != q);
    Ok(())
}

pub fn translation_inverts(p: LatticePoint, j: u64, period: i64) -> Result<(), TestCaseError> {
    let w = TranslationVector::new(j, period);
    if p.a() >= j as i64 * period {
        prop_assert_eq!(p.translate(w).and_then(|t| t.translate_back(w)), Some(p));
    } else {
        prop_assert_eq!(p.translate(w), None);
    }
    Ok(())
}

pub fn genus_identity(gamma: &GeneratingSet) -> Result<(), TestCaseError> {
    let boxed = engine::decompose(gamma).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let sum: usize = boxed.row_sizes().iter().enumerate().map(|(k, s)| (k + 1) * s).sum();
    prop_assert_eq!(sum, gamma.genus());
    Ok(())
}

pub fn period_checker_passes(gamma: &GeneratingSet) -> Result<(), TestCaseError> {
    prop_assert!(oracle::check_generating_set(gamma).is_clean());
    Ok(())
}

/// Raising one `τ(β)` by `π` must break the period property: either the
/// translate at `β + π` is missing or its displacement is wrong.
pub fn period_checker_catches_tampering(gamma: &GeneratingSet, pick: Index) -> Result<(), TestCaseError> {
    if gamma.genus() == 0 {
        return Ok(());
    }
    let mut points = gamma.points().to_vec();
    let i = pick.index(points.len());
    points[i] = LatticePoint::new(points[i].a(), points[i].b() + gamma.period()).unwrap();
    prop_assert!(!oracle::check_period_property(&points, gamma.period()).is_clean());
    prop_assert!(puregaps::validate_generating_set(points, gamma.period()).is_err());
    Ok(())
}

pub fn diagonal_lemma(gamma: &GeneratingSet) -> Result<(), TestCaseError> {
    prop_assert!(gamma.is_diagonal());
    let boxed = engine::decompose(gamma).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for k in 0..boxed.kmax() {
        prop_assert!(engine::compute_g2(&boxed, k).is_empty());
        let g3 = engine::compute_g3(&boxed, k);
        prop_assert_eq!(engine::compute_g4(&boxed, k), engine::reflect_g3(&g3, k, boxed.period()));
    }
    prop_assert!(engine::assemble_pure_gaps_with(&boxed, G4Strategy::Verify).is_ok());
    Ok(())
}

pub fn engine_matches_oracle(gamma: &GeneratingSet) -> Result<(), TestCaseError> {
    let boxed = engine::decompose(gamma).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let res = engine::assemble_pure_gaps_with(&boxed, G4Strategy::Verify).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&res.g0, &oracle::pure_gaps_direct(gamma));
    prop_assert!(res.lower_bound <= res.cardinality);
    prop_assert!(res.cardinality <= res.upper_bound);
    prop_assert!(res.cardinality <= res.homma_kim_bound);
    Ok(())
}

pub fn swap_symmetry(gamma: &GeneratingSet) -> Result<(), TestCaseError> {
    prop_assert!(gamma.is_swap_symmetric());
    let res = engine::pure_gaps(gamma).map_err(|e| TestCaseError::fail(e.to_string()))?;
    for p in &res.g0 {
        prop_assert!(res.g0.binary_search(&p.swap()).is_ok(), "{} has no mirror", p);
    }
    Ok(())
}

/// The four components of each box are disjoint, every translate
/// `G_{k,0} + w_j` stays in box `(k-j, j)`, and no two translates meet.
pub fn translates_disjoint(gamma: &GeneratingSet) -> Result<(), TestCaseError> {
    let period = gamma.period();
    let res = engine::pure_gaps(gamma).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let mut all = Vec::new();
    for (k, comps) in res.per_box.iter().enumerate() {
        let parts = comps.parts();
        for x in 0..4 {
            for y in x + 1..4 {
                prop_assert!(parts[x].iter().all(|p| parts[y].binary_search(p).is_err()));
            }
        }
        for j in 0..=k {
            for p in comps.union() {
                let t = p.translate(TranslationVector::new(j as u64, period)).unwrap();
                prop_assert_eq!((t.a() / period, t.b() / period), ((k - j) as i64, j as i64));
                all.push(t);
            }
        }
    }
    let n = all.len();
    all.sort_unstable();
    all.dedup();
    prop_assert_eq!(all.len(), n);
    prop_assert_eq!(all, res.g0);
    Ok(())
}
