//! Runs the engine on one parameter point and checks it against the
//! oracle, the closed forms and the structural invariants.

use std::time::Instant;

use rayon::prelude::*;

use puregaps::engine::{self, PureGapResult};
use puregaps::{gk, kummer, oracle, GeneratingSet, LatticePoint, Result};

use crate::report::{RunReport, Timings, Verdict, Verdicts};

#[derive(Debug, Clone)]
pub enum Subject {
    Gk { q: i64 },
    Kummer { m: i64, r: i64 },
    /// Kummer with `m = ur + 1`, checked against its own closed form.
    KummerUr1 { u: i64, r: i64 },
    /// Kummer with `m = (q+1)/N`, `r = q`.
    KummerQn { q: i64, n: i64 },
    Generic { gamma: GeneratingSet },
}

impl Subject {
    pub fn family(&self) -> &'static str {
        match self {
            Subject::Gk { .. } => "gk",
            Subject::Kummer { .. } => "kummer",
            Subject::KummerUr1 { .. } => "kummer-ur1",
            Subject::KummerQn { .. } => "kummer-qn",
            Subject::Generic { .. } => "generic",
        }
    }

    pub fn params(&self) -> String {
        match self {
            Subject::Gk { q } => format!("q={q}"),
            Subject::Kummer { m, r } => format!("m={m},r={r}"),
            Subject::KummerUr1 { u, r } => format!("u={u},r={r},m={}", u * r + 1),
            Subject::KummerQn { q, n } => format!("q={q},N={n},m={}", (q + 1) / n),
            Subject::Generic { .. } => "-".to_string(),
        }
    }

    /// `(m, r)` for the Kummer variants.
    fn kummer_params(&self) -> Option<(i64, i64)> {
        match *self {
            Subject::Kummer { m, r } => Some((m, r)),
            Subject::KummerUr1 { u, r } => Some((u * r + 1, r)),
            Subject::KummerQn { q, n } => Some(((q + 1) / n, q)),
            _ => None,
        }
    }

    pub fn generating_set(&self) -> Result<GeneratingSet> {
        match self {
            Subject::Gk { q } => gk::gk_generating_set(*q),
            Subject::Generic { gamma } => Ok(gamma.clone()),
            other => {
                let (m, r) = other.kummer_params().unwrap();
                kummer::kummer_generating_set(m, r)
            }
        }
    }

    fn closed_form(&self) -> Option<Result<i128>> {
        match *self {
            Subject::Gk { q } => Some(gk::gk_card_g0(q)),
            Subject::Kummer { m, r } => Some(kummer::kummer_card_g0(m, r)),
            Subject::KummerUr1 { u, r } => Some(kummer::kummer_card_special_ur1_checked(u, r)),
            Subject::KummerQn { q, n } => Some(kummer::kummer_card_special_qn_checked(q, n)),
            Subject::Generic { .. } => None,
        }
    }

    fn family_enumeration(&self) -> Option<Result<PureGapResult>> {
        match self {
            Subject::Gk { q } => Some(gk::gk_pure_gaps(*q)),
            Subject::Generic { .. } => None,
            other => other.kummer_params().map(|(m, r)| kummer::kummer_pure_gaps(m, r)),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub oracle: bool,
    pub timings: bool,
}

pub struct Analysis {
    pub report: RunReport,
    pub result: PureGapResult,
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// First point in exactly one of two sorted sets, labeled by which side lacks it.
pub fn first_difference(engine: &[LatticePoint], other: &[LatticePoint], other_name: &str) -> Option<String> {
    let (mut i, mut j) = (0, 0);
    while i < engine.len() || j < other.len() {
        match (engine.get(i), other.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => return Some(format!("{x} from the engine is missing in {other_name}")),
            (Some(x), None) => return Some(format!("{x} from the engine is missing in {other_name}")),
            (_, Some(y)) => return Some(format!("{y} from {other_name} is missing in the engine")),
            (None, None) => break,
        }
    }
    None
}

pub fn analyze(subject: &Subject, opts: Options) -> Result<Analysis> {
    let gamma = subject.generating_set()?;
    let mut counterexample: Option<String> = None;
    let mut note = |msg: String| {
        counterexample.get_or_insert(msg);
    };

    let start = Instant::now();
    let boxed = engine::decompose(&gamma)?;
    let result = engine::assemble_pure_gaps(&boxed)?;
    let engine_ms = ms(start);

    let gamma_k0 = boxed.row_sizes();
    let row_sum: usize = gamma_k0.iter().enumerate().map(|(k, s)| (k + 1) * s).sum();
    let genus_identity = Verdict::from_bool(row_sum == gamma.genus());
    if genus_identity == Verdict::Fail {
        note(format!("sum (k+1)|Γ_(k,0)| = {row_sum} but g = {}", gamma.genus()));
    }

    let period_report = oracle::check_generating_set(&gamma);
    let period_property = Verdict::from_bool(period_report.is_clean());
    if let Some(v) = period_report.violations.first() {
        note(format!("period property fails at beta = {}, k = {}: {:?}", v.beta, v.k, v.finding));
    }

    let diagonal_lemma = if boxed.is_diagonal() {
        let bad = (0..boxed.kmax()).into_par_iter().find_first(|&k| {
            let g3 = engine::compute_g3(&boxed, k);
            !engine::compute_g2(&boxed, k).is_empty()
                || engine::compute_g4(&boxed, k) != engine::reflect_g3(&g3, k, boxed.period())
        });
        if let Some(k) = bad {
            note(format!("general G4 differs from reflected G3 at k = {k}"));
        }
        Verdict::from_bool(bad.is_none())
    } else {
        Verdict::Skipped
    };

    let mut sandwich = result.lower_bound <= result.cardinality
        && result.cardinality <= result.upper_bound
        && result.cardinality <= result.homma_kim_bound;
    if let Subject::Gk { q } = *subject {
        sandwich &= gk::gk_upper_bound(q)? == result.upper_bound;
        if q >= 3 {
            sandwich &= result.upper_bound < result.homma_kim_bound;
        }
    }
    if !sandwich {
        note(format!(
            "bounds violated: lower {} |G0| {} upper {} Homma-Kim {}",
            result.lower_bound, result.cardinality, result.upper_bound, result.homma_kim_bound
        ));
    }
    let bound_sandwich = Verdict::from_bool(sandwich);

    let mut oracle_ms = None;
    let engine_vs_oracle = if opts.oracle {
        let start = Instant::now();
        let direct = oracle::pure_gaps_direct(&gamma);
        oracle_ms = Some(ms(start));
        let diff = first_difference(&result.g0, &direct, "the oracle");
        let ok = diff.is_none();
        if let Some(d) = diff {
            note(d);
        }
        Verdict::from_bool(ok)
    } else {
        Verdict::Skipped
    };

    let start = Instant::now();
    let (closed_form_vs_enumeration, closed_form, mismatch) = check_closed_form(subject, &result)?;
    let closed_form_ms = (closed_form_vs_enumeration != Verdict::Skipped).then(|| ms(start));
    if let Some(m) = mismatch {
        note(m);
    }

    let report = RunReport {
        family: subject.family().to_string(),
        params: subject.params(),
        genus: gamma.genus(),
        period: gamma.period(),
        gamma_k0,
        pure_gaps: result.cardinality,
        lower_bound: result.lower_bound,
        upper_bound: result.upper_bound,
        homma_kim_bound: result.homma_kim_bound,
        closed_form,
        verdicts: Verdicts {
            genus_identity,
            period_property,
            engine_vs_oracle,
            closed_form_vs_enumeration,
            bound_sandwich,
            diagonal_lemma,
        },
        timings: opts.timings.then_some(Timings { engine_ms, oracle_ms, closed_form_ms }),
        counterexample,
    };
    Ok(Analysis { report, result })
}

/// Closed-form count and explicit family sets against the engine result.
fn check_closed_form(subject: &Subject, result: &PureGapResult) -> Result<(Verdict, Option<i128>, Option<String>)> {
    let (Some(closed), Some(family)) = (subject.closed_form(), subject.family_enumeration()) else {
        return Ok((Verdict::Skipped, None, None));
    };
    let outcome = closed.and_then(|c| family.map(|f| (c, f)));
    let (c, family) = match outcome {
        Ok(v) => v,
        Err(e) if e.is_internal() => return Ok((Verdict::Fail, None, Some(e.to_string()))),
        Err(e) => return Err(e),
    };
    let mismatch = if c != result.cardinality {
        Some(format!("closed form {c} but the engine enumerates {}", result.cardinality))
    } else if let Some(d) = first_difference(&result.g0, &family.g0, "the explicit family sets") {
        Some(d)
    } else if family.bounds() != result.bounds() {
        Some("family row counts give different bounds".to_string())
    } else {
        None
    };
    Ok((Verdict::from_bool(mismatch.is_none()), Some(c), mismatch))
}
