//! Text format for generating sets: `#` comments, one `period <π>` header,
//! then one `β<TAB>τ` pair per line.

use std::fmt;
use std::path::Path;

use puregaps::{validate_generating_set, GeneratingSet, LatticePoint, ValidationError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(n) if !self.message.contains(" at line ") => write!(f, "line {n}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

fn at(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line: Some(line), message: message.into() }
}

pub fn load(path: &Path) -> Result<GeneratingSet, ParseError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ParseError { line: None, message: format!("cannot read {}: {e}", path.display()) })?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<GeneratingSet, ParseError> {
    let mut period: Option<(usize, i64)> = None;
    let mut rows: Vec<(usize, i64, i64)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let n = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("period") {
            if period.is_some() {
                return Err(at(n, "second period header"));
            }
            if !rows.is_empty() {
                return Err(at(n, "period header must precede the points"));
            }
            let value = rest.trim().parse::<i64>().map_err(|_| at(n, format!("bad period header {line:?}")))?;
            period = Some((n, value));
            continue;
        }
        if period.is_none() {
            return Err(at(n, "expected \"period <π>\" before the first point"));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parsed = match fields.as_slice() {
            [a, b] => a.parse::<i64>().ok().zip(b.parse::<i64>().ok()),
            _ => None,
        };
        let (a, b) = parsed.ok_or_else(|| at(n, format!("expected \"β<TAB>τ\", got {line:?}")))?;
        rows.push((n, a, b));
    }
    let (header_line, period) = period.ok_or(ParseError { line: None, message: "missing \"period <π>\" header".into() })?;

    let mut points = Vec::with_capacity(rows.len());
    for &(n, a, b) in &rows {
        let p = LatticePoint::new(a, b).map_err(|e| validation_at(&e, Some(n)))?;
        points.push(p);
    }
    validate_generating_set(points, period).map_err(|e| {
        let line = match &e {
            ValidationError::InvalidPeriod(_) => Some(header_line),
            ValidationError::DuplicateFirstCoordinate(beta) => second_match(&rows, |r| r.1 == *beta),
            ValidationError::DuplicateSecondCoordinate(tau) => second_match(&rows, |r| r.2 == *tau),
            other => other.offending_beta().and_then(|beta| rows.iter().find(|r| r.1 == beta).map(|r| r.0)),
        };
        validation_at(&e, line)
    })
}

fn second_match(rows: &[(usize, i64, i64)], pred: impl Fn(&(usize, i64, i64)) -> bool) -> Option<usize> {
    rows.iter().filter(|r| pred(r)).nth(1).map(|r| r.0)
}

fn validation_at(e: &ValidationError, line: Option<usize>) -> ParseError {
    let kind = e.kind();
    let text = e.to_string();
    let detail = text.strip_prefix(&format!("{kind}: ")).unwrap_or(&text);
    let message = match line {
        Some(n) => format!("{kind} at line {n}: {detail}"),
        None => format!("{kind}: {detail}"),
    };
    ParseError { line, message }
}

/// Inverse of [`parse`].
pub fn render(gamma: &GeneratingSet) -> String {
    let mut s = format!("# genus {}\nperiod {}\n", gamma.genus(), gamma.period());
    for p in gamma.points() {
        s.push_str(&format!("{}\t{}\n", p.a(), p.b()));
    }
    s
}
