//! Kummer extensions `y^m = f(x)^λ`, `deg f = r`, at two totally ramified
//! places other than `P∞`.
//!
//! The gap structure depends on `(m, r)` only. Callers are responsible for
//! a curve actually existing (`p ∤ m`, `gcd(m, λr) = 1`); here only
//! `gcd(m, r) = 1` is enforced.

use crate::arith::{self, ceil_div, floor_div, gcd};
use crate::engine::{self, BoxComponents, G4Strategy, PureGapResult};
use crate::error::{Error, Result};
use crate::lattice::{validate_generating_set, GeneratingSet, LatticePoint};

/// Largest `m` and `r` accepted.
pub const MAX_PARAM: i64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KummerParams {
    m: i64,
    r: i64,
}

impl KummerParams {
    pub fn new(m: i64, r: i64) -> Result<Self> {
        if m < 2 || r < 2 {
            return Err(Error::InvalidParams(format!("Kummer needs m, r >= 2, got m = {m}, r = {r}")));
        }
        if m > MAX_PARAM || r > MAX_PARAM {
            return Err(Error::InvalidParams(format!("Kummer m = {m}, r = {r} exceeds the supported maximum {MAX_PARAM}")));
        }
        if gcd(m, r) != 1 {
            return Err(Error::InvalidParams(format!("Kummer needs gcd(m, r) = 1, got gcd({m}, {r}) = {}", gcd(m, r))));
        }
        Ok(KummerParams { m, r })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// `π = m`.
    pub fn period(&self) -> i64 {
        self.m
    }

    /// `g = (m-1)(r-1)/2`.
    pub fn genus(&self) -> i64 {
        (self.m - 1) * (self.r - 1) / 2
    }

    /// `r - 2 - ⌊r/m⌋`, the last row with a generating-set point.
    pub fn top_row(&self) -> i64 {
        self.r - 2 - floor_div(self.r, self.m)
    }

    /// `m - 1 - ⌊m(k+1)/r⌋`.
    fn row_high(&self, k: i64) -> i64 {
        self.m - 1 - floor_div(self.m * (k + 1), self.r)
    }

    /// `m - ⌊m(k+2)/r⌋`.
    fn row_low(&self, k: i64) -> i64 {
        self.m - floor_div(self.m * (k + 2), self.r)
    }
}

/// `Γ(P1, P2) = {(mk1 + j, mk2 + j) : 1 <= j <= m-1-⌊m/r⌋, k1 + k2 = r-2-⌊rj/m⌋}`.
pub fn kummer_generating_set(m: i64, r: i64) -> Result<GeneratingSet> {
    let params = KummerParams::new(m, r)?;
    let mut points = Vec::with_capacity(params.genus() as usize);
    for j in 1..=m - 1 - floor_div(m, r) {
        let sum = r - 2 - floor_div(r * j, m);
        for k1 in 0..=sum {
            points.push(LatticePoint::raw(m * k1 + j, m * (sum - k1) + j));
        }
    }
    let gamma = validate_generating_set(points, params.period())?;
    if gamma.genus() as i64 != params.genus() {
        return Err(Error::CardinalityMismatch {
            what: format!("|Γ| against the Kummer genus at m = {m}, r = {r}"),
            left: gamma.genus() as i128,
            right: params.genus() as i128,
        });
    }
    Ok(gamma)
}

/// `Γ_{k,0} = {(mk + j, j) : max{1, m-⌊m(k+2)/r⌋} <= j <= m-1-⌊m(k+1)/r⌋}`.
pub fn kummer_gamma_k0(m: i64, r: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = KummerParams::new(m, r)?;
    let k = k as i64;
    if k > params.top_row() {
        return Ok(Vec::new());
    }
    let lo = params.row_low(k).max(1);
    Ok((lo..=params.row_high(k)).map(|j| LatticePoint::raw(m * k + j, j)).collect())
}

/// `|Γ_{k,0}|`: `⌈m(k+2)/r⌉ - ⌈m(k+1)/r⌉` below the top row, the explicit
/// count `m - 1 - ⌊m(k+1)/r⌋` on it.
///
/// On the top row with `r < m` the explicit count is also checked against
/// `m - ⌈m(r-1)/r⌉`.
pub fn kummer_card_gamma_k0(m: i64, r: i64, k: usize) -> Result<i64> {
    let params = KummerParams::new(m, r)?;
    let kk = k as i64;
    let top = params.top_row();
    if kk > top {
        return Ok(0);
    }
    let explicit = params.row_high(kk) - params.row_low(kk).max(1) + 1;
    let formula = if kk < top {
        ceil_div(m * (kk + 2), r) - ceil_div(m * (kk + 1), r)
    } else if r < m {
        m - ceil_div(m * (r - 1), r)
    } else {
        explicit
    };
    if formula != explicit {
        return Err(Error::PiecewiseMismatch { k, explicit, piecewise: formula });
    }
    Ok(formula)
}

fn components_in_range(params: &KummerParams, k: usize) -> bool {
    (k as i64) < params.top_row()
}

/// `G¹_{k,0} = {(mk + j2, j1) : 1 <= j1, j2 <= m-1-⌊m(k+2)/r⌋}`.
pub fn kummer_g1(m: i64, r: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = KummerParams::new(m, r)?;
    if !components_in_range(&params, k) {
        return Ok(Vec::new());
    }
    let k = k as i64;
    let side = params.row_high(k + 1);
    let mut out = Vec::with_capacity((side * side).max(0) as usize);
    for j2 in 1..=side {
        for j1 in 1..=side {
            out.push(LatticePoint::raw(m * k + j2, j1));
        }
    }
    Ok(out)
}

/// `G²_{k,0}`, empty for every `k`.
pub fn kummer_g2(m: i64, r: i64, _k: usize) -> Result<Vec<LatticePoint>> {
    KummerParams::new(m, r)?;
    Ok(Vec::new())
}

/// `G³_{k,0} = {(mk + j, j1) : m-⌊m(k+2)/r⌋ <= j <= m-1-⌊m(k+1)/r⌋, 1 <= j1 <= m-1-⌊m(k+2)/r⌋}`.
pub fn kummer_g3(m: i64, r: i64, k: usize) -> Result<Vec<LatticePoint>> {
    let params = KummerParams::new(m, r)?;
    if !components_in_range(&params, k) {
        return Ok(Vec::new());
    }
    let k = k as i64;
    let side = params.row_high(k + 1);
    let mut out = Vec::new();
    for j in params.row_low(k)..=params.row_high(k) {
        for j1 in 1..=side {
            out.push(LatticePoint::raw(m * k + j, j1));
        }
    }
    Ok(out)
}

/// `G⁴_{k,0}`: the reflection of `G³_{k,0}` shifted by `-w_k`.
pub fn kummer_g4(m: i64, r: i64, k: usize) -> Result<Vec<LatticePoint>> {
    Ok(engine::reflect_g3(&kummer_g3(m, r, k)?, k, m))
}

fn kummer_box(m: i64, r: i64, k: usize) -> Result<BoxComponents> {
    Ok(BoxComponents {
        g1: kummer_g1(m, r, k)?,
        g2: kummer_g2(m, r, k)?,
        g3: kummer_g3(m, r, k)?,
        g4: kummer_g4(m, r, k)?,
    })
}

/// `G0(P1, P2)` assembled from the explicit components over
/// `0 <= j <= k <= r-3-⌊r/m⌋`, checked against [`kummer_card_g0`].
pub fn kummer_pure_gaps(m: i64, r: i64) -> Result<PureGapResult> {
    let params = KummerParams::new(m, r)?;
    let top = params.top_row().max(0) as usize;
    let per_box = (0..top).map(|k| kummer_box(m, r, k)).collect::<Result<Vec<_>>>()?;
    let sizes = (0..=top).map(|k| kummer_card_gamma_k0(m, r, k).map(i128::from)).collect::<Result<Vec<_>>>()?;
    let bounds = engine::bounds_from_row_sizes(&sizes, params.genus() as i128)?;
    let result = engine::assemble_from_components(per_box, m, bounds)?;
    let closed_form = kummer_card_g0(m, r)?;
    if closed_form != result.cardinality {
        return Err(Error::ClosedFormMismatch {
            what: format!("|G0| for Kummer m = {m}, r = {r}"),
            closed_form,
            enumerated: result.cardinality,
        });
    }
    Ok(result)
}

/// `Σ_{k=1}^{r-2-⌊r/m⌋} k[(m - ⌈mk/r⌉)² - (⌈m(k+1)/r⌉ - ⌈mk/r⌉)²]`.
pub fn kummer_card_g0(m: i64, r: i64) -> Result<i128> {
    let params = KummerParams::new(m, r)?;
    let mut total = 0i128;
    for k in 1..=params.top_row() {
        let c_k = ceil_div(m * k, r) as i128;
        let c_next = ceil_div(m * (k + 1), r) as i128;
        let outer = m as i128 - c_k;
        let step = c_next - c_k;
        let term = arith::mul(k as i128, arith::sub(arith::mul(outer, outer)?, arith::mul(step, step)?)?)?;
        total = arith::add(total, term)?;
    }
    Ok(total)
}

/// `u²(r-1)(r-2)r(r+3)/12`, the count for `m = ur + 1`.
pub fn kummer_card_special_ur1(u: i64, r: i64) -> Result<i128> {
    if u < 1 || r < 2 {
        return Err(Error::InvalidParams(format!("m = ur + 1 case needs u >= 1, r >= 2, got u = {u}, r = {r}")));
    }
    let (u, r) = (u as i128, r as i128);
    let num = [u, u, r - 1, r - 2, r, r + 3].into_iter().try_fold(1i128, arith::mul)?;
    let closed = arith::exact_div(num, 12, "m = ur + 1 count")?;
    Ok(closed)
}

/// Same as [`kummer_card_special_ur1`], required to agree with [`kummer_card_g0`].
pub fn kummer_card_special_ur1_checked(u: i64, r: i64) -> Result<i128> {
    let closed = kummer_card_special_ur1(u, r)?;
    let m = u.checked_mul(r).and_then(|x| x.checked_add(1)).ok_or(Error::Overflow("m = ur + 1"))?;
    let sum = kummer_card_g0(m, r)?;
    if sum != closed {
        return Err(Error::ClosedFormMismatch { what: format!("m = ur + 1, u = {u}, r = {r}"), closed_form: closed, enumerated: sum });
    }
    Ok(closed)
}

/// `(q+1)(m-1)/12·((q+1)(m-1) - 2m + N + 7) - q(m-1)` with `m = (q+1)/N`, `r = q`.
pub fn kummer_card_special_qn(q: i64, n: i64) -> Result<i128> {
    if q < 2 || n < 1 || (q + 1) % n != 0 {
        return Err(Error::InvalidParams(format!("m = (q+1)/N case needs N | q + 1, got q = {q}, N = {n}")));
    }
    if q - 2 - n < 0 {
        return Err(Error::InvalidParams(format!("m = (q+1)/N case needs q - 2 - N >= 0, got q = {q}, N = {n}")));
    }
    let m = (q + 1) / n;
    if m < 2 {
        return Err(Error::InvalidParams(format!("m = (q+1)/N = {m} must be at least 2")));
    }
    let (q, n, m) = (q as i128, n as i128, m as i128);
    let base = arith::mul(q + 1, m - 1)?;
    let num = arith::mul(base, base - 2 * m + n + 7)?;
    let first = arith::exact_div(num, 12, "m = (q+1)/N count")?;
    arith::sub(first, arith::mul(q, m - 1)?)
}

/// Same as [`kummer_card_special_qn`], required to agree with [`kummer_card_g0`].
pub fn kummer_card_special_qn_checked(q: i64, n: i64) -> Result<i128> {
    let closed = kummer_card_special_qn(q, n)?;
    let sum = kummer_card_g0((q + 1) / n, q)?;
    if sum != closed {
        return Err(Error::ClosedFormMismatch { what: format!("m = (q+1)/N, q = {q}, N = {n}"), closed_form: closed, enumerated: sum });
    }
    Ok(closed)
}

/// Compares every explicit component and the assembled set with the generic
/// engine run on [`kummer_generating_set`].
pub fn kummer_cross_check(m: i64, r: i64) -> Result<PureGapResult> {
    let gamma = kummer_generating_set(m, r)?;
    let boxed = engine::decompose(&gamma)?;
    let rows = boxed.kmax().max(KummerParams::new(m, r)?.top_row().max(0) as usize + 1);
    for k in 0..rows {
        let explicit_row = kummer_gamma_k0(m, r, k)?;
        if explicit_row.as_slice() != boxed.row(k) {
            return Err(Error::GenericMismatch(format!("Kummer m = {m}, r = {r}: Γ_({k},0)")));
        }
        if kummer_card_gamma_k0(m, r, k)? as usize != explicit_row.len() {
            return Err(Error::GenericMismatch(format!("Kummer m = {m}, r = {r}: |Γ_({k},0)|")));
        }
        let generic = engine::compute_box(&boxed, k, G4Strategy::Verify)?;
        let explicit = kummer_box(m, r, k)?;
        for (name, e, g) in [
            ("G1", &explicit.g1, &generic.g1),
            ("G2", &explicit.g2, &generic.g2),
            ("G3", &explicit.g3, &generic.g3),
            ("G4", &explicit.g4, &generic.g4),
        ] {
            if e != g {
                return Err(Error::GenericMismatch(format!("Kummer m = {m}, r = {r}: {name}_({k},0)")));
            }
        }
    }
    let family = kummer_pure_gaps(m, r)?;
    let generic = engine::assemble_pure_gaps(&boxed)?;
    if family.g0 != generic.g0 {
        return Err(Error::GenericMismatch(format!("Kummer m = {m}, r = {r}: assembled G0")));
    }
    if family.bounds() != generic.bounds() {
        return Err(Error::GenericMismatch(format!("Kummer m = {m}, r = {r}: bounds")));
    }
    Ok(family)
}
