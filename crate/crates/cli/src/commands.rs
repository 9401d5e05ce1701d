use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use puregaps::arith::gcd;
use puregaps::{engine, oracle, Error, GeneratingSet, GkParams, KummerParams, LatticePoint};

use crate::analysis::{analyze, first_difference, Options, Subject};
use crate::args::{BenchArgs, BenchFamily, Command, Emit, Format, OutputArgs, Special, VerifyArgs, VerifyFamily};
use crate::gammafile;
use crate::report::RunReport;

/// Largest GK `q` the verify and bench grids accept; `q = 7` already
/// materializes about 2·10⁷ pure gaps per method.
const GRID_MAX_Q: i64 = 7;
const GRID_MAX_KUMMER: i64 = 100;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Internal(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Internal(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CmdResult = Result<i32, CliError>;

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Gk { q, output } => {
            let params = GkParams::new(q)?;
            if !params.is_prime_power() {
                writeln!(err, "warning: q = {q} is not a prime power; no GK curve exists, results are purely combinatorial")?;
            }
            emit(&Subject::Gk { q }, &output, out)
        }
        Command::Kummer { m, r, output } => {
            KummerParams::new(m, r)?;
            emit(&Subject::Kummer { m, r }, &output, out)
        }
        Command::Generic { input, output } => {
            let gamma = gammafile::load(&input).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(&Subject::Generic { gamma }, &output, out)
        }
        Command::Verify(args) => verify(&args, out, err),
        Command::Bench(args) => bench(&args, out),
    }
}

fn emit(subject: &Subject, output: &OutputArgs, out: &mut dyn Write) -> CmdResult {
    match output.emit {
        Emit::Gamma => {
            let gamma = subject.generating_set()?;
            write_gamma(&gamma, output.format, out)?;
            Ok(0)
        }
        Emit::Puregaps => {
            let gamma = subject.generating_set()?;
            let result = engine::pure_gaps(&gamma)?;
            write_points(&result.g0, output.format, out)?;
            Ok(0)
        }
        Emit::Summary => {
            let analysis = analyze(subject, Options { oracle: !output.skip_oracle, timings: output.timings })?;
            let report = analysis.report;
            match output.format {
                Format::Tsv => out.write_all(report.to_tsv().as_bytes())?,
                Format::Json => writeln!(out, "{}", to_json_pretty(&report)?)?,
            }
            Ok(if report.failed() { 1 } else { 0 })
        }
    }
}

fn to_json_pretty<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))
}

pub fn write_points(points: &[LatticePoint], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Tsv => {
            for p in points {
                writeln!(out, "{}\t{}", p.a(), p.b())?;
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, points)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct GammaJson<'a> {
    period: i64,
    points: &'a [LatticePoint],
}

fn write_gamma(gamma: &GeneratingSet, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Tsv => out.write_all(gammafile::render(gamma).as_bytes()),
        Format::Json => {
            serde_json::to_writer(&mut *out, &GammaJson { period: gamma.period(), points: gamma.points() })?;
            writeln!(out)
        }
    }
}

fn check_range(name: &str, value: i64, lo: i64, hi: i64) -> Result<(), CliError> {
    if value < lo || value > hi {
        return Err(CliError::Usage(format!("--{name} must be in {lo}..={hi}, got {value}")));
    }
    Ok(())
}

/// Parameter points in the order they are reported.
fn verify_subjects(args: &VerifyArgs) -> Result<Vec<Subject>, CliError> {
    let gk = matches!(args.family, VerifyFamily::Gk | VerifyFamily::All);
    let kummer = matches!(args.family, VerifyFamily::Kummer | VerifyFamily::All);
    if args.family == VerifyFamily::Gk && args.special.is_some() {
        return Err(CliError::Usage("--special applies to the Kummer family".into()));
    }
    let grid = args.family == VerifyFamily::All || (kummer && args.special.is_none());
    let ur1 = args.family == VerifyFamily::All || args.special == Some(Special::Ur1);
    let qn = args.family == VerifyFamily::All || args.special == Some(Special::Qn);

    let mut subjects = Vec::new();
    if gk {
        check_range("q-max", args.q_max, 2, GRID_MAX_Q)?;
        subjects.extend((2..=args.q_max).map(|q| Subject::Gk { q }));
    }
    if grid {
        check_range("max", args.max, 2, GRID_MAX_KUMMER)?;
        for m in 2..=args.max {
            for r in 2..=args.max {
                if gcd(m, r) == 1 {
                    subjects.push(Subject::Kummer { m, r });
                }
            }
        }
    }
    if ur1 {
        let r_max = args.r_max.unwrap_or(10);
        check_range("u-max", args.u_max, 1, 20)?;
        check_range("r-max", r_max, 2, GRID_MAX_KUMMER)?;
        for u in 1..=args.u_max {
            for r in 2..=r_max {
                subjects.push(Subject::KummerUr1 { u, r });
            }
        }
    }
    if qn {
        let q_max = args.r_max.unwrap_or(11);
        check_range("r-max", q_max, 3, GRID_MAX_KUMMER)?;
        for q in 3..=q_max {
            for n in 1..=q - 2 {
                if (q + 1) % n == 0 && (q + 1) / n >= 2 {
                    subjects.push(Subject::KummerQn { q, n });
                }
            }
        }
    }
    Ok(subjects)
}

fn verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let subjects = verify_subjects(args)?;
    let opts = Options { oracle: true, timings: false };
    let reports: Vec<Result<RunReport, Error>> =
        subjects.par_iter().map(|s| analyze(s, opts).map(|a| a.report)).collect();

    let mut first_failure: Option<String> = None;
    let mut failures = 0usize;
    for (subject, outcome) in subjects.iter().zip(&reports) {
        match outcome {
            Ok(report) => {
                match args.format {
                    Format::Tsv => writeln!(out, "{}", report.to_tsv_line())?,
                    Format::Json => writeln!(out, "{}", serde_json::to_string(report).map_err(|e| CliError::Internal(e.to_string()))?)?,
                }
                if report.failed() {
                    failures += 1;
                    first_failure.get_or_insert_with(|| to_json_pretty(report).unwrap_or_default());
                }
            }
            Err(e) => {
                failures += 1;
                let line = format!("{}\t{}\terror={e}\tFAIL", subject.family(), subject.params());
                writeln!(out, "{line}")?;
                first_failure.get_or_insert(line);
            }
        }
    }
    match first_failure {
        None => {
            writeln!(err, "verified {} parameter points: all pass", subjects.len())?;
            Ok(0)
        }
        Some(detail) => {
            writeln!(err, "{failures} of {} parameter points failed; first counterexample:\n{detail}", subjects.len())?;
            Ok(1)
        }
    }
}

#[derive(Serialize)]
struct BenchReport {
    family: String,
    params: String,
    genus: usize,
    period: i64,
    pure_gaps: usize,
    direct_pair_evaluations: u128,
    outputs_equal: bool,
    decomposition_ms: f64,
    direct_ms: f64,
}

fn bench(args: &BenchArgs, out: &mut dyn Write) -> CmdResult {
    let subject = match args.family {
        BenchFamily::Gk => {
            let q = args.q.ok_or_else(|| CliError::Usage("bench --family gk needs --q".into()))?;
            GkParams::new(q)?;
            check_range("q", q, 2, GRID_MAX_Q)?;
            Subject::Gk { q }
        }
        BenchFamily::Kummer => {
            let (m, r) = args
                .m
                .zip(args.r)
                .ok_or_else(|| CliError::Usage("bench --family kummer needs --m and --r".into()))?;
            KummerParams::new(m, r)?;
            Subject::Kummer { m, r }
        }
    };
    let gamma = subject.generating_set()?;

    let start = Instant::now();
    let engine_g0 = engine::pure_gaps(&gamma)?.g0;
    let decomposition_ms = start.elapsed().as_secs_f64() * 1e3;

    let start = Instant::now();
    let direct = oracle::pure_gaps_direct(&gamma);
    let direct_ms = start.elapsed().as_secs_f64() * 1e3;

    if let Some(d) = first_difference(&engine_g0, &direct, "the direct method") {
        return Err(CliError::Internal(format!(
            "outputs differ for {} {}: {d} ({} vs {} points)",
            subject.family(),
            subject.params(),
            engine_g0.len(),
            direct.len()
        )));
    }
    let g = gamma.genus() as u128;
    let report = BenchReport {
        family: subject.family().to_string(),
        params: subject.params(),
        genus: gamma.genus(),
        period: gamma.period(),
        pure_gaps: engine_g0.len(),
        direct_pair_evaluations: g * g.saturating_sub(1) / 2,
        outputs_equal: true,
        decomposition_ms,
        direct_ms,
    };
    match args.format {
        Format::Tsv => {
            writeln!(out, "family\t{}", report.family)?;
            writeln!(out, "params\t{}", report.params)?;
            writeln!(out, "genus\t{}", report.genus)?;
            writeln!(out, "period\t{}", report.period)?;
            writeln!(out, "pure_gaps\t{}", report.pure_gaps)?;
            writeln!(out, "direct_pair_evaluations\t{}", report.direct_pair_evaluations)?;
            writeln!(out, "outputs_equal\t{}", report.outputs_equal)?;
            writeln!(out, "method\tms")?;
            writeln!(out, "decomposition\t{:.3}", report.decomposition_ms)?;
            writeln!(out, "direct\t{:.3}", report.direct_ms)?;
        }
        Format::Json => writeln!(out, "{}", to_json_pretty(&report)?)?,
    }
    Ok(0)
}
