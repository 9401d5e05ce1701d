//! Period-based box decomposition of a minimal generating set and the
//! assembly of the full pure gap set from the row-zero boxes.
//!
//! Only the boxes `Γ_{k,0}` are stored. Every other box is a translate,
//! `Γ_{i,j} = Γ_{i+j,0} + w_j`, and likewise `G_{i,j} = G_{i+j,0} + w_j`, so
//! the pure gap set is the disjoint union of `G_{k,0} + w_j` over
//! `0 <= j <= k < kmax` with `kmax = ⌈(2g-1)/π⌉`.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, ceil_div};
use crate::error::{Error, Result};
use crate::lattice::{GeneratingSet, LatticePoint, TranslationVector};

/// The row-zero boxes `Γ_{k,0}` of a generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxedGamma {
    rows: Vec<Vec<LatticePoint>>,
    period: i64,
    genus: usize,
    kmax: usize,
    diagonal: bool,
}

impl BoxedGamma {
    /// `Γ_{k,0}`, sorted; empty for `k >= kmax`.
    pub fn row(&self, k: usize) -> &[LatticePoint] {
        self.rows.get(k).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn rows(&self) -> &[Vec<LatticePoint>] {
        &self.rows
    }

    pub fn row_sizes(&self) -> Vec<usize> {
        self.rows.iter().map(Vec::len).collect()
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `⌈(2g-1)/π⌉`; all boxes with `k1 + k2 >= kmax` are empty.
    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// Whether `β ≡ τ(β) (mod π)` holds on the whole generating set.
    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    // Row points satisfy kπ < a, so shifting by w_j with j <= k stays in N0².
    fn shift(&self, p: &LatticePoint, j: usize) -> LatticePoint {
        let s = j as i64 * self.period;
        LatticePoint::raw(p.a() - s, p.b() + s)
    }
}

/// `kmax = ⌈(2g-1)/π⌉`, zero for genus zero.
pub fn box_cutoff(genus: usize, period: i64) -> usize {
    if genus == 0 {
        return 0;
    }
    ceil_div(2 * genus as i64 - 1, period) as usize
}

pub fn decompose(gamma: &GeneratingSet) -> Result<BoxedGamma> {
    let period = gamma.period();
    let genus = gamma.genus();
    let kmax = box_cutoff(genus, period);
    let mut rows = vec![Vec::new(); kmax];
    for p in gamma.points() {
        if p.b() / period != 0 {
            continue;
        }
        let k = (p.a() / period) as usize;
        match rows.get_mut(k) {
            Some(row) => row.push(*p),
            None => {
                return Err(Error::CardinalityMismatch {
                    what: "row index against the box cutoff".into(),
                    left: k as i128,
                    right: kmax as i128,
                })
            }
        }
    }
    // points arrive sorted, so each row is sorted too
    let sum: i128 = rows.iter().enumerate().map(|(k, r)| (k as i128 + 1) * r.len() as i128).sum();
    if sum != genus as i128 {
        return Err(Error::GenusIdentityViolation { sum, genus });
    }
    Ok(BoxedGamma { rows, period, genus, kmax, diagonal: gamma.is_diagonal() })
}

/// `Γ_{i,j} = Γ_{i+j,0} + w_j`.
pub fn reconstruct_box(boxed: &BoxedGamma, i: usize, j: usize) -> Vec<LatticePoint> {
    boxed.row(i + j).iter().map(|p| boxed.shift(p, j)).collect()
}

fn sorted_set(mut v: Vec<LatticePoint>) -> Vec<LatticePoint> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `G¹_{k,0} = {glb(u + w_{k2-k}, v) : u ∈ Γ_{k2,0}, v ∈ Γ_{k1,0}, k < k1, k < k2}`.
pub fn compute_g1(boxed: &BoxedGamma, k: usize) -> Result<Vec<LatticePoint>> {
    let above: Vec<LatticePoint> = (k + 1..boxed.kmax).flat_map(|k1| boxed.row(k1).iter().copied()).collect();
    let mut out = Vec::with_capacity(above.len() * above.len());
    for k2 in k + 1..boxed.kmax {
        for u in boxed.row(k2) {
            let moved = boxed.shift(u, k2 - k);
            out.extend(above.iter().map(|v| moved.glb(v)));
        }
    }
    let out = sorted_set(out);
    let expected = (above.len() as i128).pow(2);
    if out.len() as i128 != expected {
        return Err(Error::CardinalityMismatch {
            what: format!("|G1_({k},0)| against the squared tail count"),
            left: out.len() as i128,
            right: expected,
        });
    }
    Ok(out)
}

/// `G²_{k,0}`: glbs of incomparable pairs inside `Γ_{k,0}`.
pub fn compute_g2(boxed: &BoxedGamma, k: usize) -> Vec<LatticePoint> {
    let row = boxed.row(k);
    let mut out = Vec::new();
    for (idx, u) in row.iter().enumerate() {
        for v in &row[idx + 1..] {
            if u.incomparable(v) {
                out.push(u.glb(v));
            }
        }
    }
    sorted_set(out)
}

/// `G³_{k,0} = {glb(u, v) : u ∈ Γ_{k,0}, v ∈ Γ_{k1,0}, u ⋠ v, k < k1}`.
pub fn compute_g3(boxed: &BoxedGamma, k: usize) -> Vec<LatticePoint> {
    let mut out = Vec::new();
    for u in boxed.row(k) {
        for k1 in k + 1..boxed.kmax {
            out.extend(boxed.row(k1).iter().filter(|v| !u.precedes(v)).map(|v| u.glb(v)));
        }
    }
    sorted_set(out)
}

/// `G⁴_{k,0} = {glb(u + w_{k2-k}, v) : u ∈ Γ_{k2,0}, v ∈ Γ_{k,0}, v ⋠ u + w_{k2-k}, k < k2}`.
pub fn compute_g4(boxed: &BoxedGamma, k: usize) -> Vec<LatticePoint> {
    let row = boxed.row(k);
    let mut out = Vec::new();
    for k2 in k + 1..boxed.kmax {
        for u in boxed.row(k2) {
            let moved = boxed.shift(u, k2 - k);
            out.extend(row.iter().filter(|v| !v.precedes(&moved)).map(|v| moved.glb(v)));
        }
    }
    sorted_set(out)
}

/// `{(b, a) : (a, b) ∈ G³_{k,0}} - w_k`, which equals `G⁴_{k,0}` whenever
/// the generating set is diagonal.
pub fn reflect_g3(g3: &[LatticePoint], k: usize, period: i64) -> Vec<LatticePoint> {
    let s = k as i64 * period;
    sorted_set(g3.iter().map(|p| LatticePoint::raw(p.b() + s, p.a() - s)).collect())
}

/// How `G⁴` is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum G4Strategy {
    /// Reflect `G³` when the diagonal condition holds, otherwise the general formula.
    #[default]
    Fast,
    /// Always run the general formula; on diagonal input also run the
    /// reflection and require `G²` empty and both `G⁴` routes equal.
    Verify,
}

/// `G_{k,0}` split into its four disjoint components.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoxComponents {
    pub g1: Vec<LatticePoint>,
    pub g2: Vec<LatticePoint>,
    pub g3: Vec<LatticePoint>,
    pub g4: Vec<LatticePoint>,
}

impl BoxComponents {
    pub fn len(&self) -> usize {
        self.g1.len() + self.g2.len() + self.g3.len() + self.g4.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn parts(&self) -> [&[LatticePoint]; 4] {
        [&self.g1, &self.g2, &self.g3, &self.g4]
    }

    /// `G_{k,0}` as one sorted set.
    pub fn union(&self) -> Vec<LatticePoint> {
        sorted_set(self.parts().iter().flat_map(|p| p.iter().copied()).collect())
    }

    /// Fails if two of the four components share a point.
    pub fn check_disjoint(&self, k: usize) -> Result<()> {
        let parts = self.parts();
        for x in 0..4 {
            for y in x + 1..4 {
                if let Some(p) = first_common(parts[x], parts[y]) {
                    return Err(Error::DisjointnessViolation(format!(
                        "G{}_({k},0) and G{}_({k},0) share {p}",
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
        Ok(())
    }
}

fn first_common(xs: &[LatticePoint], ys: &[LatticePoint]) -> Option<LatticePoint> {
    let (mut i, mut j) = (0, 0);
    while i < xs.len() && j < ys.len() {
        match xs[i].cmp(&ys[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Some(xs[i]),
        }
    }
    None
}

/// All four components of `G_{k,0}`.
pub fn compute_box(boxed: &BoxedGamma, k: usize, strategy: G4Strategy) -> Result<BoxComponents> {
    let g1 = compute_g1(boxed, k)?;
    let g2 = compute_g2(boxed, k);
    let g3 = compute_g3(boxed, k);
    let g4 = match strategy {
        G4Strategy::Fast if boxed.diagonal => reflect_g3(&g3, k, boxed.period),
        G4Strategy::Fast => compute_g4(boxed, k),
        G4Strategy::Verify => {
            let general = compute_g4(boxed, k);
            if boxed.diagonal && (!g2.is_empty() || general != reflect_g3(&g3, k, boxed.period)) {
                return Err(Error::DiagonalReflectionMismatch { k });
            }
            general
        }
    };
    let comps = BoxComponents { g1, g2, g3, g4 };
    comps.check_disjoint(k)?;
    Ok(comps)
}

/// The three cardinality bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub lower: i128,
    pub upper: i128,
    pub homma_kim: i128,
}

/// Bounds from the row sizes `|Γ_{k,0}|` alone:
/// `Σ(k+1)(Σ_{k<k1}|Γ_{k1,0}|)² <= |G0| <= Σ(k+1)(Σ_{k<=k1}|Γ_{k1,0}|)² - g`,
/// next to the generic `g(g-1)/2`.
pub fn bounds_from_row_sizes(sizes: &[i128], genus: i128) -> Result<Bounds> {
    let mut lower = 0i128;
    let mut upper = 0i128;
    let mut tail = 0i128;
    for (k, &size) in sizes.iter().enumerate().rev() {
        let weight = k as i128 + 1;
        lower = arith::add(lower, arith::mul(weight, arith::mul(tail, tail)?)?)?;
        tail = arith::add(tail, size)?;
        upper = arith::add(upper, arith::mul(weight, arith::mul(tail, tail)?)?)?;
    }
    let upper = arith::sub(upper, genus)?;
    let homma_kim = arith::mul(genus, genus - 1)? / 2;
    Ok(Bounds { lower, upper, homma_kim })
}

pub fn bounds(boxed: &BoxedGamma) -> Result<Bounds> {
    let sizes: Vec<i128> = boxed.rows.iter().map(|r| r.len() as i128).collect();
    bounds_from_row_sizes(&sizes, boxed.genus as i128)
}

/// The pure gap set with its per-box breakdown and bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PureGapResult {
    /// `G0(P1, P2)` in lexicographic order.
    pub g0: Vec<LatticePoint>,
    /// Index `k` holds the components of `G_{k,0}`.
    pub per_box: Vec<BoxComponents>,
    pub cardinality: i128,
    pub lower_bound: i128,
    pub upper_bound: i128,
    pub homma_kim_bound: i128,
}

impl PureGapResult {
    pub fn bounds(&self) -> Bounds {
        Bounds { lower: self.lower_bound, upper: self.upper_bound, homma_kim: self.homma_kim_bound }
    }

    /// `|G_{k,0}|` for each `k`.
    pub fn box_sizes(&self) -> Vec<usize> {
        self.per_box.iter().map(BoxComponents::len).collect()
    }
}

pub fn assemble_pure_gaps(boxed: &BoxedGamma) -> Result<PureGapResult> {
    assemble_pure_gaps_with(boxed, G4Strategy::Fast)
}

pub fn assemble_pure_gaps_with(boxed: &BoxedGamma, strategy: G4Strategy) -> Result<PureGapResult> {
    let per_box = (0..boxed.kmax)
        .into_par_iter()
        .map(|k| compute_box(boxed, k, strategy))
        .collect::<Result<Vec<_>>>()?;
    assemble_from_components(per_box, boxed.period, bounds(boxed)?)
}

/// Builds `G0 = ⋃_{0<=j<=k} (G_{k,0} + w_j)` from per-box components,
/// checking that every translate lands in its own box `(k-j, j)` and that
/// `|G0| = Σ(k+1)|G_{k,0}|`.
pub fn assemble_from_components(per_box: Vec<BoxComponents>, period: i64, bounds: Bounds) -> Result<PureGapResult> {
    let mut cardinality = 0i128;
    for (k, comps) in per_box.iter().enumerate() {
        cardinality = arith::add(cardinality, arith::mul(k as i128 + 1, comps.len() as i128)?)?;
    }
    let total = usize::try_from(cardinality).map_err(|_| Error::Overflow("pure gap count exceeds memory"))?;

    let translates = per_box
        .par_iter()
        .enumerate()
        .map(|(k, comps)| {
            let members = comps.union();
            if members.len() != comps.len() {
                return Err(Error::DisjointnessViolation(format!("components of G_({k},0) overlap")));
            }
            let mut out = Vec::with_capacity(members.len() * (k + 1));
            for j in 0..=k {
                let w = TranslationVector::new(j as u64, period);
                for p in &members {
                    let moved = p
                        .translate(w)
                        .ok_or_else(|| Error::DisjointnessViolation(format!("{p} + w_{j} leaves the quadrant")))?;
                    if moved.a() / period != (k - j) as i64 || moved.b() / period != j as i64 {
                        return Err(Error::DisjointnessViolation(format!(
                            "{p} + w_{j} = {moved} is outside box ({}, {j})",
                            k - j
                        )));
                    }
                    out.push(moved);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut g0 = Vec::with_capacity(total);
    for chunk in translates {
        g0.extend(chunk);
    }
    g0.par_sort_unstable();
    if let Some(w) = g0.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DisjointnessViolation(format!("{} appears in two translates", w[0])));
    }
    if g0.len() as i128 != cardinality {
        return Err(Error::CardinalityMismatch {
            what: "|G0| against sum (k+1)|G_(k,0)|".into(),
            left: g0.len() as i128,
            right: cardinality,
        });
    }
    Ok(PureGapResult {
        g0,
        per_box,
        cardinality,
        lower_bound: bounds.lower,
        upper_bound: bounds.upper,
        homma_kim_bound: bounds.homma_kim,
    })
}

/// Decompose and assemble in one call.
pub fn pure_gaps(gamma: &GeneratingSet) -> Result<PureGapResult> {
    assemble_pure_gaps(&decompose(gamma)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::validate_generating_set;

    fn pt(a: i64, b: i64) -> LatticePoint {
        LatticePoint::new(a, b).unwrap()
    }

    fn pts(v: &[(i64, i64)]) -> Vec<LatticePoint> {
        v.iter().map(|&(a, b)| pt(a, b)).collect()
    }

    fn gk2() -> GeneratingSet {
        validate_generating_set(
            pts(&[(3, 3), (5, 5), (7, 7), (11, 2), (13, 4), (19, 1), (2, 11), (4, 13), (1, 19), (10, 10)]),
            9,
        )
        .unwrap()
    }

    fn kummer43() -> GeneratingSet {
        validate_generating_set(pts(&[(1, 5), (5, 1), (2, 2)]), 4).unwrap()
    }

    #[test]
    fn decompose_gk2() {
        let boxed = decompose(&gk2()).unwrap();
        assert_eq!(boxed.kmax(), 3);
        assert_eq!(boxed.row(0), pts(&[(3, 3), (5, 5), (7, 7)]).as_slice());
        assert_eq!(boxed.row(1), pts(&[(11, 2), (13, 4)]).as_slice());
        assert_eq!(boxed.row(2), pts(&[(19, 1)]).as_slice());
        assert!(boxed.row(3).is_empty());
    }

    #[test]
    fn decompose_kummer_and_empty() {
        let boxed = decompose(&kummer43()).unwrap();
        assert_eq!(boxed.row(0), pts(&[(2, 2)]).as_slice());
        assert_eq!(boxed.row(1), pts(&[(5, 1)]).as_slice());
        let empty = decompose(&validate_generating_set(vec![], 1).unwrap()).unwrap();
        assert_eq!(empty.kmax(), 0);
        assert_eq!(empty.genus(), 0);
        assert!(empty.rows().is_empty());
    }

    #[test]
    fn reconstruct_gk2_boxes() {
        let boxed = decompose(&gk2()).unwrap();
        assert_eq!(reconstruct_box(&boxed, 0, 1), pts(&[(2, 11), (4, 13)]));
        assert_eq!(reconstruct_box(&boxed, 1, 1), pts(&[(10, 10)]));
        assert_eq!(reconstruct_box(&boxed, 0, 2), pts(&[(1, 19)]));
        assert!(reconstruct_box(&boxed, 2, 1).is_empty());
        assert!(reconstruct_box(&boxed, 0, 7).is_empty());
    }

    #[test]
    fn gk2_components() {
        let boxed = decompose(&gk2()).unwrap();
        assert_eq!(
            compute_g1(&boxed, 0).unwrap(),
            pts(&[(1, 1), (1, 2), (1, 4), (2, 1), (2, 2), (2, 4), (4, 1), (4, 2), (4, 4)])
        );
        assert_eq!(compute_g1(&boxed, 1).unwrap(), pts(&[(10, 1)]));
        assert!(compute_g1(&boxed, 2).unwrap().is_empty());
        assert!(compute_g2(&boxed, 0).is_empty());
        assert_eq!(compute_g3(&boxed, 0), pts(&[(3, 1), (3, 2), (5, 1), (5, 2), (5, 4), (7, 1), (7, 2), (7, 4)]));
        assert_eq!(compute_g3(&boxed, 1), pts(&[(11, 1), (13, 1)]));
        assert_eq!(compute_g4(&boxed, 0), pts(&[(1, 3), (1, 5), (1, 7), (2, 3), (2, 5), (2, 7), (4, 5), (4, 7)]));
        assert_eq!(compute_g4(&boxed, 1), pts(&[(10, 2), (10, 4)]));
        assert_eq!(reflect_g3(&compute_g3(&boxed, 1), 1, 9), compute_g4(&boxed, 1));
    }

    #[test]
    fn g2_of_incomparable_row_pair() {
        // π = 7, Γ_{1,0} = {(π+1, 5), (π+3, 2)}; row 0 is a chain that only supplies genus
        let gamma =
            validate_generating_set(pts(&[(2, 1), (4, 3), (5, 4), (8, 5), (10, 2), (1, 12), (3, 9)]), 7).unwrap();
        let boxed = decompose(&gamma).unwrap();
        assert_eq!(boxed.row(1), pts(&[(8, 5), (10, 2)]).as_slice());
        assert_eq!(compute_g2(&boxed, 1), pts(&[(8, 2)]));
        assert!(compute_g2(&boxed, 0).is_empty());
        assert!(!boxed.is_diagonal());
    }

    #[test]
    fn kummer43_components() {
        let boxed = decompose(&kummer43()).unwrap();
        assert_eq!(compute_g3(&boxed, 0), pts(&[(2, 1)]));
        assert_eq!(compute_g4(&boxed, 0), pts(&[(1, 2)]));
        assert_eq!(compute_g1(&boxed, 0).unwrap(), pts(&[(1, 1)]));
        assert!(compute_g2(&boxed, 0).is_empty());
    }

    #[test]
    fn assemble_gk2() {
        let res = assemble_pure_gaps_with(&decompose(&gk2()).unwrap(), G4Strategy::Verify).unwrap();
        assert_eq!(res.cardinality, 35);
        assert_eq!(res.g0.len(), 35);
        assert_eq!(res.g0[0], pt(1, 1));
        assert_eq!(res.upper_bound, 47);
        assert_eq!(res.lower_bound, 11);
        assert_eq!(res.homma_kim_bound, 45);
        assert_eq!(res.box_sizes(), vec![25, 5, 0]);
    }

    #[test]
    fn assemble_kummer_and_empty() {
        let res = pure_gaps(&kummer43()).unwrap();
        assert_eq!(res.g0, pts(&[(1, 1), (1, 2), (2, 1)]));
        assert_eq!(res.upper_bound, 3);
        assert_eq!(res.lower_bound, 1);
        assert_eq!(res.homma_kim_bound, 3);

        let empty = pure_gaps(&validate_generating_set(vec![], 1).unwrap()).unwrap();
        assert!(empty.g0.is_empty());
        assert_eq!(empty.cardinality, 0);
        assert_eq!(empty.upper_bound, 0);
        assert_eq!(empty.homma_kim_bound, 0);
    }

    #[test]
    fn bounds_from_sizes() {
        let b = bounds_from_row_sizes(&[3, 2, 1], 10).unwrap();
        assert_eq!((b.lower, b.upper, b.homma_kim), (11, 47, 45));
        assert!(bounds_from_row_sizes(&[i128::MAX / 2], 1).is_err());
    }

    #[test]
    fn overlapping_components_detected() {
        let comps = BoxComponents { g1: pts(&[(1, 1)]), g2: vec![], g3: pts(&[(1, 1)]), g4: vec![] };
        assert!(matches!(comps.check_disjoint(0), Err(Error::DisjointnessViolation(_))));
    }
}
