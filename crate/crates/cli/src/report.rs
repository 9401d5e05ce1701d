use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub genus_identity: Verdict,
    pub period_property: Verdict,
    pub engine_vs_oracle: Verdict,
    pub closed_form_vs_enumeration: Verdict,
    pub bound_sandwich: Verdict,
    pub diagonal_lemma: Verdict,
}

impl Verdicts {
    pub fn entries(&self) -> [(&'static str, Verdict); 6] {
        [
            ("genus_identity", self.genus_identity),
            ("period_property", self.period_property),
            ("engine_vs_oracle", self.engine_vs_oracle),
            ("closed_form_vs_enumeration", self.closed_form_vs_enumeration),
            ("bound_sandwich", self.bound_sandwich),
            ("diagonal_lemma", self.diagonal_lemma),
        ]
    }

    pub fn any_failed(&self) -> bool {
        self.entries().iter().any(|(_, v)| *v == Verdict::Fail)
    }
}

/// Wall-clock milliseconds per method.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timings {
    pub engine_ms: f64,
    pub oracle_ms: Option<f64>,
    pub closed_form_ms: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub family: String,
    pub params: String,
    pub genus: usize,
    pub period: i64,
    /// `|Γ_{k,0}|` for each row `k`.
    pub gamma_k0: Vec<usize>,
    pub pure_gaps: i128,
    pub lower_bound: i128,
    pub upper_bound: i128,
    pub homma_kim_bound: i128,
    pub closed_form: Option<i128>,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl RunReport {
    pub fn failed(&self) -> bool {
        self.verdicts.any_failed()
    }

    /// `key<TAB>value` lines.
    pub fn to_tsv(&self) -> String {
        let mut s = String::new();
        let rows = self.gamma_k0.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let closed = self.closed_form.map_or_else(|| "-".to_string(), |c| c.to_string());
        for (k, v) in [
            ("family", self.family.clone()),
            ("params", self.params.clone()),
            ("genus", self.genus.to_string()),
            ("period", self.period.to_string()),
            ("gamma_k0", rows),
            ("pure_gaps", self.pure_gaps.to_string()),
            ("lower_bound", self.lower_bound.to_string()),
            ("upper_bound", self.upper_bound.to_string()),
            ("homma_kim_bound", self.homma_kim_bound.to_string()),
            ("closed_form", closed),
        ] {
            let _ = writeln!(s, "{k}\t{v}");
        }
        for (k, v) in self.verdicts.entries() {
            let _ = writeln!(s, "{k}\t{}", v.as_str());
        }
        if let Some(t) = &self.timings {
            let _ = writeln!(s, "engine_ms\t{:.3}", t.engine_ms);
            if let Some(ms) = t.oracle_ms {
                let _ = writeln!(s, "oracle_ms\t{ms:.3}");
            }
            if let Some(ms) = t.closed_form_ms {
                let _ = writeln!(s, "closed_form_ms\t{ms:.3}");
            }
        }
        if let Some(c) = &self.counterexample {
            let _ = writeln!(s, "counterexample\t{c}");
        }
        s
    }

    /// One tab-separated line of `key=value` fields, ending in PASS or FAIL.
    pub fn to_tsv_line(&self) -> String {
        let mut fields = vec![
            self.family.clone(),
            self.params.clone(),
            format!("genus={}", self.genus),
            format!("period={}", self.period),
            format!("pure_gaps={}", self.pure_gaps),
            format!("lower={}", self.lower_bound),
            format!("upper={}", self.upper_bound),
            format!("homma_kim={}", self.homma_kim_bound),
            format!("closed_form={}", self.closed_form.map_or_else(|| "-".to_string(), |c| c.to_string())),
        ];
        fields.extend(self.verdicts.entries().iter().map(|(k, v)| format!("{k}={}", v.as_str())));
        fields.push(if self.failed() { "FAIL" } else { "PASS" }.to_string());
        fields.join("\t")
    }
}
