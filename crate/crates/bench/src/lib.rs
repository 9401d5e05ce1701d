//! Workloads shared by the benchmarks.

use puregaps::{gk, kummer, GeneratingSet, Result};

/// A named generating set to time.
pub struct Workload {
    pub name: String,
    pub gamma: GeneratingSet,
}

/// GK at `q = 3, 4` and a few Kummer pairs, small enough for criterion's
/// repeated sampling on both methods.
pub fn workloads() -> Result<Vec<Workload>> {
    let mut out = Vec::new();
    for q in [3, 4] {
        out.push(Workload { name: format!("gk/q={q}"), gamma: gk::gk_generating_set(q)? });
    }
    for (m, r) in [(13, 12), (31, 30), (64, 9)] {
        out.push(Workload { name: format!("kummer/m={m},r={r}"), gamma: kummer::kummer_generating_set(m, r)? });
    }
    Ok(out)
}
