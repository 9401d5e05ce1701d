//! The GK function field at the place pair `(P0, P∞)`: closed-form
//! generating set, row boxes, explicit pure gap components and counts.
//!
//! All of it depends only on the integer `q`; no curve arithmetic is done.

use crate::arith::{self, eval_poly, exact_div};
use crate::engine::{self, BoxComponents, G4Strategy, PureGapResult};
use crate::error::{Error, Result};
use crate::lattice::{validate_generating_set, GeneratingSet, LatticePoint};

/// Largest `q` accepted. Coordinates stay far inside `i64` and every
/// closed form stays inside `i128` well beyond this.
pub const MAX_Q: i64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GkParams {
    q: i64,
}

impl GkParams {
    pub fn new(q: i64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParams(format!("GK needs q >= 2, got {q}")));
        }
        if q > MAX_Q {
            return Err(Error::InvalidParams(format!("GK q = {q} exceeds the supported maximum {MAX_Q}")));
        }
        Ok(GkParams { q })
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    /// `π = q³ + 1`.
    pub fn period(&self) -> i64 {
        self.q.pow(3) + 1
    }

    /// `g = (q³+1)(q²-2)/2 + 1`.
    pub fn genus(&self) -> i64 {
        let q = self.q;
        (q.pow(3) + 1) * (q * q - 2) / 2 + 1
    }

    /// Only prime powers give an actual curve; the combinatorics runs for any `q`.
    pub fn is_prime_power(&self) -> bool {
        let mut n = self.q;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                while n % p == 0 {
                    n /= p;
                }
                return n == 1;
            }
            p += 1;
        }
        true
    }

    fn top_row(&self) -> i64 {
        self.q * self.q - 2
    }

    /// Lowest and highest `i` with `γ_{i, k-i+2, k+1} ∈ Γ_{k,0}`.
    fn row_index_range(&self, k: i64) -> (i64, i64) {
        let q = self.q;
        (0.max(k - q * q + q + 2), q.min(k + 2))
    }
}

/// The two-coordinate formula shared by `γ_{i,j,k}` and the doubly indexed
/// points of the component lemmas: `(c-1)(q³+1) + (q+1-a)(q²-q+1) - b`.
fn gamma_coord(q: i64, a: i64, b: i64, c: i64) -> i64 {
    (c - 1) * (q.pow(3) + 1) + (q + 1 - a) * (q * q - q + 1) - b
}

/// `γ_{i,j,k}` checked against the unified index ranges.
pub fn gk_gamma_point(i: i64, j: i64, k: i64, q: i64) -> Result<LatticePoint> {
    let params = GkParams::new(q)?;
    let q = params.q;
    let k_ok = (1..=q * q - 1).contains(&k);
    let i_ok = (0.max(k - q * q + q + 1)..=q).contains(&i);
    let j_ok = (0.max(k - i + 1)..=q * q - q).contains(&j);
    if !(k_ok && i_ok && j_ok) {
        return Err(Error::IndexOutOfRange(format!("gamma_({i},{j},{k}) for q = {q}")));
    }
    Ok(LatticePoint::raw(gamma_coord(q, i, j, k), gamma_coord(q, i, j, i + j - k)))
}

/// `Γ(P0, P∞)` from the unified description over all valid `(i, j, k)`.
pub fn gk_generating_set(q: i64) -> Result<GeneratingSet> {
    let params = GkParams::new(q)?;
    let q = params.q;
    let mut points = Vec::with_capacity(params.genus() as usize);
    for k in 1..=q * q - 1 {
        for i in 0.max(k - q * q + q + 1)..=q {
            for j in 0.max(k - i + 1)..=q * q - q {
                points.push(gk_gamma_point(i, j, k, q)?);
            }
        }
    }
    let gamma = validate_generating_set(points, params.period())?;
    if gamma.genus() as i64 != params.genus() {
        return Err(Error::CardinalityMismatch {
            what: format!("|Γ| against the GK genus at q = {q}"),
            left: gamma.genus() as i128,
            right: params.genus() as i128,
        });
    }
    Ok(gamma)
}

/// `Γ_{k,0} = {γ_{i, k-i+2, k+1}}` in lexicographic order; empty past `q²-2`.
pub fn gk_gamma_k0(q: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = GkParams::new(q)?;
    let k = k as i64;
    if k > params.top_row() {
        return Ok(Vec::new());
    }
    let (lo, hi) = params.row_index_range(k);
    let mut row: Vec<LatticePoint> = (lo..=hi).map(|i| gk_gamma_point(i, k - i + 2, k + 1, q)).collect::<Result<_>>()?;
    row.sort_unstable();
    Ok(row)
}

/// `|Γ_{k,0}|` from the explicit index range, cross-checked against every
/// branch of the three-piece formula that covers `k`.
pub fn gk_card_gamma_k0(q: i64, k: usize) -> Result<i64> {
    let params = GkParams::new(q)?;
    let q = params.q;
    let kk = k as i64;
    if kk > params.top_row() {
        return Ok(0);
    }
    let (lo, hi) = params.row_index_range(kk);
    let explicit = hi - lo + 1;
    let branches = [
        ((0..=q - 2).contains(&kk), kk + 3),
        ((q - 1..=q * q - q - 3).contains(&kk), q + 1),
        ((q * q - q - 2..=q * q - 2).contains(&kk), q * q - 1 - kk),
    ];
    for (applies, piecewise) in branches {
        if applies && piecewise != explicit {
            return Err(Error::PiecewiseMismatch { k, explicit, piecewise });
        }
    }
    Ok(explicit)
}

/// `γ^{a2,b2,c2}_{a1,b1,c1}`: first coordinate from the upper index triple,
/// second from the lower one.
fn double_gamma(q: i64, upper: (i64, i64, i64), lower: (i64, i64, i64)) -> LatticePoint {
    LatticePoint::raw(gamma_coord(q, upper.0, upper.1, upper.2), gamma_coord(q, lower.0, lower.1, lower.2))
}

fn components_in_range(params: &GkParams, k: usize) -> bool {
    (k as i64) <= params.q * params.q - 3
}

/// `G¹_{k,0}` from its explicit index set.
pub fn gk_g1(q: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = GkParams::new(q)?;
    if !components_in_range(&params, k) {
        return Ok(Vec::new());
    }
    let k = k as i64;
    let top = params.top_row();
    let mut out = Vec::new();
    for k2 in k + 1..=top {
        let (lo2, hi2) = params.row_index_range(k2);
        for i2 in lo2..=hi2 {
            for k1 in k + 1..=top {
                let (lo1, hi1) = params.row_index_range(k1);
                for i1 in lo1..=hi1 {
                    out.push(double_gamma(q, (i2, k2 - i2 + 2, k + 1), (i1, k1 - i1 + 2, 1)));
                }
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `G²_{k,0}`, empty for every `k`.
pub fn gk_g2(q: i64, _k: usize) -> Result<Vec<LatticePoint>> {
    GkParams::new(q)?;
    Ok(Vec::new())
}

/// `G³_{k,0}` from its explicit index set, with `i2 <= i1` and `k < k1 <= q²-2`.
pub fn gk_g3(q: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = GkParams::new(q)?;
    if !components_in_range(&params, k) {
        return Ok(Vec::new());
    }
    let k = k as i64;
    let (lo2, hi2) = params.row_index_range(k);
    let mut out = Vec::new();
    for k1 in k + 1..=params.top_row() {
        let (lo1, hi1) = params.row_index_range(k1);
        for i1 in lo1..=hi1 {
            for i2 in lo2..=hi2.min(i1) {
                out.push(double_gamma(q, (i2, k - i2 + 2, k + 1), (i1, k1 - i1 + 2, 1)));
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `G⁴_{k,0}`: the reflection of `G³_{k,0}` shifted by `-w_k`.
pub fn gk_g4(q: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = GkParams::new(q)?;
    Ok(engine::reflect_g3(&gk_g3(q, k)?, k, params.period()))
}

fn gk_box(q: i64, k: usize) -> Result<BoxComponents> {
    Ok(BoxComponents { g1: gk_g1(q, k)?, g2: gk_g2(q, k)?, g3: gk_g3(q, k)?, g4: gk_g4(q, k)? })
}

/// `G0(P0, P∞)` assembled from the explicit components over `0 <= j <= k <= q²-3`,
/// checked against [`gk_card_g0`].
pub fn gk_pure_gaps(q: i64) -> Result<PureGapResult> {
    let params = GkParams::new(q)?;
    let rows = (q * q - 2) as usize;
    let per_box = (0..rows).map(|k| gk_box(q, k)).collect::<Result<Vec<_>>>()?;
    let sizes = (0..=rows).map(|k| gk_card_gamma_k0(q, k).map(i128::from)).collect::<Result<Vec<_>>>()?;
    let bounds = engine::bounds_from_row_sizes(&sizes, params.genus() as i128)?;
    let result = engine::assemble_from_components(per_box, params.period(), bounds)?;
    let closed_form = gk_card_g0(q)?;
    if closed_form != result.cardinality {
        return Err(Error::ClosedFormMismatch {
            what: format!("|G0| for GK q = {q}"),
            closed_form,
            enumerated: result.cardinality,
        });
    }
    Ok(result)
}

/// `q(q-1)(10q⁸+10q⁷-25q⁶-9q⁵+71q⁴-111q³-86q²+128q-12)/120`.
pub fn gk_card_g0(q: i64) -> Result<i128> {
    GkParams::new(q)?;
    let x = q as i128;
    let inner = eval_poly(&[10, 10, -25, -9, 71, -111, -86, 128, -12], x)?;
    let num = arith::mul(arith::mul(x, x - 1)?, inner)?;
    exact_div(num, 120, "GK pure gap count")
}

/// `(10q¹⁰-15q⁸-4q⁷+20q⁶-56q⁵-35q⁴+124q³-40q²-4q)/120`.
pub fn gk_upper_bound(q: i64) -> Result<i128> {
    GkParams::new(q)?;
    let num = eval_poly(&[10, 0, -15, -4, 20, -56, -35, 124, -40, -4, 0], q as i128)?;
    exact_div(num, 120, "GK upper bound")
}

/// Compares every explicit component and the assembled set with the generic
/// engine run on [`gk_generating_set`].
pub fn gk_cross_check(q: i64) -> Result<PureGapResult> {
    let gamma = gk_generating_set(q)?;
    let boxed = engine::decompose(&gamma)?;
    for k in 0..boxed.kmax() {
        let explicit_row = gk_gamma_k0(q, k)?;
        if explicit_row.as_slice() != boxed.row(k) {
            return Err(Error::GenericMismatch(format!("GK q = {q}: Γ_({k},0)")));
        }
        if gk_card_gamma_k0(q, k)? as usize != explicit_row.len() {
            return Err(Error::GenericMismatch(format!("GK q = {q}: |Γ_({k},0)|")));
        }
        let generic = engine::compute_box(&boxed, k, G4Strategy::Verify)?;
        let explicit = gk_box(q, k)?;
        for (name, e, g) in [
            ("G1", &explicit.g1, &generic.g1),
            ("G2", &explicit.g2, &generic.g2),
            ("G3", &explicit.g3, &generic.g3),
            ("G4", &explicit.g4, &generic.g4),
        ] {
            if e != g {
                return Err(Error::GenericMismatch(format!("GK q = {q}: {name}_({k},0)")));
            }
        }
    }
    let family = gk_pure_gaps(q)?;
    let generic = engine::assemble_pure_gaps(&boxed)?;
    if family.g0 != generic.g0 {
        return Err(Error::GenericMismatch(format!("GK q = {q}: assembled G0")));
    }
    if family.bounds() != generic.bounds() {
        return Err(Error::GenericMismatch(format!("GK q = {q}: bounds")));
    }
    Ok(family)
}
