use std::io::{BufWriter, Write};
use std::time::Instant;

use iepoly::analyzer::{
    check_recursive_bound, default_r_max, run_verify, scan_flat, verify_residue_classes, Finding,
    Severity, VerifyConfig,
};
use iepoly::arith::gcd;
use iepoly::iep::compute_with_stats;
use iepoly::ternary::FnSink;
use iepoly::{phi_degree, validate, Error, IntPoly, Method, Rho, TernaryContext};
use serde::Serialize;

use crate::args::{Cli, Command, Format, GlobalOpts, MethodArg, ScanMode};
use crate::exit;
use crate::output::*;
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

/// Sizes the global worker pool; call once, before [`run`].
pub fn configure_threads(jobs: Option<u64>) -> Result<()> {
    if let Some(jobs) = jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

/// Runs one command, writing data to `out` and diagnostics to `err`.
/// Returns the exit status for a completed run.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let mut out = BufWriter::new(out);
    let code = dispatch(cli, &mut out, err)?;
    out.flush()?;
    Ok(code)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Compute { params, method } => compute(params, *method, g, out),
        Command::Analyze { p, q, r } => analyze(*p, *q, *r, g, out),
        Command::Scan { p, q, r_max, mode } => scan(*p, *q, *r_max, *mode, g, out, err),
        Command::Verify {
            max_n0,
            order4_samples,
            random_triples,
            inject_fault,
        } => {
            let config = VerifyConfig {
                max_n0: *max_n0,
                seed: g.seed,
                order4_samples: *order4_samples,
                random_triples: *random_triples,
                inject_fault: *inject_fault,
                ..VerifyConfig::default()
            };
            verify(&config, g, out, err)
        }
        Command::Bench { rungs } => bench(*rungs as usize, g, out),
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, doc)?;
    writeln!(out)?;
    Ok(())
}

/// CSV with a header; plain is the same table tab-separated.
fn write_table<T: Serialize>(out: &mut dyn Write, format: Format, rows: &[T]) -> Result<()> {
    let delimiter = if format == Format::Plain { b'\t' } else { b',' };
    let mut w = csv::WriterBuilder::new().delimiter(delimiter).from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

fn write_findings(err: &mut dyn Write, findings: &[Finding]) -> Result<()> {
    for f in findings {
        writeln!(err, "finding: {}", serde_json::to_string(f)?)?;
    }
    Ok(())
}

fn compute(params: &[u64], method: MethodArg, g: &GlobalOpts, out: &mut dyn Write) -> Result<u8> {
    let rho = validate(params)?;
    let format = g.format.unwrap_or(Format::Plain);
    let use_stream = match method {
        MethodArg::Auto => rho.is_ternary(),
        MethodArg::Stream if !rho.is_ternary() => {
            return Err(Error::InvalidArgument(
                "the stream method needs exactly three parameters, each at least 3".into(),
            )
            .into())
        }
        MethodArg::Stream => true,
        _ => false,
    };
    let degree = phi_degree(&rho)?;
    if use_stream {
        let ctx = TernaryContext::from_rho(&rho)?;
        return match format {
            Format::Json => {
                if degree >= g.degree_cap {
                    return Err(Error::DegreeCapExceeded {
                        degree,
                        cap: g.degree_cap,
                    }
                    .into());
                }
                write_compute_json(out, &rho, degree, ctx.coefficients()?)
            }
            Format::Plain | Format::Csv => stream_rows(out, format, &ctx),
        };
    }
    let method = match method {
        MethodArg::Series => Method::Series,
        MethodArg::Product => Method::Product,
        _ => Method::Division,
    };
    let poly = iepoly::compute(&rho, method, g.degree_cap)?;
    match format {
        Format::Json => write_compute_json(out, &rho, degree, poly.into_coeffs()),
        Format::Plain | Format::Csv => {
            write_coeff_rows(out, format, &poly)?;
            Ok(exit::OK)
        }
    }
}

fn write_compute_json(out: &mut dyn Write, rho: &Rho, degree: u64, coeffs: Vec<i64>) -> Result<u8> {
    let doc = ComputeDoc {
        schema_version: SCHEMA_VERSION,
        rho: rho.params().to_vec(),
        degree,
        coeffs,
    };
    write_json(out, &doc)?;
    Ok(exit::OK)
}

fn coeff_line(out: &mut dyn Write, format: Format, m: u64, a: i64) -> std::io::Result<()> {
    match format {
        Format::Csv => writeln!(out, "{m},{a}"),
        _ => writeln!(out, "{m} {a}"),
    }
}

fn write_coeff_rows(out: &mut dyn Write, format: Format, poly: &IntPoly) -> Result<()> {
    if format == Format::Csv {
        writeln!(out, "m,a_m")?;
    }
    for (m, &a) in poly.coeffs().iter().enumerate() {
        coeff_line(out, format, m as u64, a)?;
    }
    Ok(())
}

/// Writes coefficients as the stream produces them.
fn stream_rows(out: &mut dyn Write, format: Format, ctx: &TernaryContext) -> Result<u8> {
    if format == Format::Csv {
        writeln!(out, "m,a_m")?;
    }
    let mut io_error = None;
    ctx.stream(FnSink(|m, a| {
        if io_error.is_none() {
            io_error = coeff_line(out, format, m, a).err();
        }
    }))?;
    match io_error {
        Some(e) => Err(e.into()),
        None => Ok(exit::OK),
    }
}

fn analyze(p: u64, q: u64, r: u64, g: &GlobalOpts, out: &mut dyn Write) -> Result<u8> {
    let ctx = TernaryContext::sorted(p, q, r)?;
    let summary = ctx.summary()?;
    let (p, q, r) = (ctx.p() as u64, ctx.q() as u64, ctx.r() as u64);
    match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(
            out,
            &AnalyzeDoc {
                schema_version: SCHEMA_VERSION,
                p,
                q,
                r,
                summary,
            },
        )?,
        format => write_table(
            out,
            format,
            &[AnalyzeRow {
                p,
                q,
                r,
                degree: summary.degree,
                a_plus: summary.a_plus,
                a_minus: summary.a_minus,
                height: summary.height,
                coeff_set: join(&summary.coeff_set),
                flat: summary.is_flat,
            }],
        )?,
    }
    Ok(exit::OK)
}

fn scan(
    p: u64,
    q: u64,
    r_max: Option<u64>,
    mode: ScanMode,
    g: &GlobalOpts,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8> {
    let r_max = r_max.unwrap_or_else(|| default_r_max(p, q));
    let format = g.format.unwrap_or(Format::Csv);
    match mode {
        ScanMode::Residue => {
            let classes = verify_residue_classes(p, q, r_max)?;
            let passed = classes.iter().all(|c| c.passed());
            if format == Format::Json {
                write_json(
                    out,
                    &ResidueScanDoc {
                        schema_version: SCHEMA_VERSION,
                        p,
                        q,
                        r_max,
                        passed,
                        classes,
                    },
                )?;
            } else {
                let rows: Vec<ResidueRow> = classes
                    .iter()
                    .map(|c| ResidueRow {
                        p,
                        q,
                        residue: c.residue,
                        members: c.members.len(),
                        r_values: join(c.members.iter().map(|m| m.r)),
                        coeff_set: c.coeff_set().map(join).unwrap_or_default(),
                        verdict: c.verdict,
                        mirror_residue: c.negation_partner,
                        mirror_verdict: c.mirror_verdict,
                    })
                    .collect();
                write_table(out, format, &rows)?;
            }
            Ok(if passed { exit::OK } else { exit::VERIFICATION })
        }
        ScanMode::Flat => {
            let scan = scan_flat(p, q, r_max)?;
            let passed = scan.holds();
            if !passed {
                writeln!(err, "not flat although r = ±1 mod pq: {}", join(&scan.missing_pm1))?;
            }
            if format == Format::Json {
                write_json(
                    out,
                    &FlatScanDoc {
                        schema_version: SCHEMA_VERSION,
                        passed,
                        scan,
                    },
                )?;
            } else {
                let pq = p * q;
                let rows: Vec<FlatRow> = scan
                    .flat
                    .iter()
                    .map(|&r| FlatRow {
                        p,
                        q,
                        r,
                        residue: r % pq,
                        pm1: r % pq == 1 || r % pq == pq - 1,
                    })
                    .collect();
                write_table(out, format, &rows)?;
            }
            Ok(if passed { exit::OK } else { exit::VERIFICATION })
        }
        ScanMode::Bounds => {
            let pq = p.checked_mul(q).ok_or(Error::Overflow("pq"))?;
            if r_max <= pq {
                return Err(Error::OutOfRange {
                    what: "r_max",
                    value: r_max as i64,
                    range: format!("({pq}, inf)"),
                }
                .into());
            }
            let mut rows = Vec::new();
            let mut findings = Vec::new();
            for s in (1..=r_max - pq).filter(|&s| gcd(s, pq) == 1) {
                let report = check_recursive_bound(p, q, s)?;
                if !report.within_bounds() {
                    findings.push(Finding::new(
                        Severity::High,
                        "recursive_bound",
                        &[p, q, s],
                        format!("A(s)={}, A(pq+s)={}, A(pq-s)={:?}", report.a_s, report.a_up, report.a_down),
                    ));
                }
                rows.push(report);
            }
            write_findings(err, &findings)?;
            if format == Format::Json {
                write_json(
                    out,
                    &BoundsScanDoc {
                        schema_version: SCHEMA_VERSION,
                        p,
                        q,
                        r_max,
                        rows,
                        findings,
                    },
                )?;
            } else {
                let table: Vec<BoundsRow> = rows
                    .iter()
                    .map(|b| BoundsRow {
                        p,
                        q,
                        s: b.s,
                        a_s: b.a_s,
                        r_up: b.r_up,
                        a_up: b.a_up,
                        r_down: b.r_down,
                        a_down: b.a_down,
                        within_bounds: b.within_bounds(),
                        recursive_regime: b.recursive_regime,
                    })
                    .collect();
                write_table(out, format, &table)?;
            }
            Ok(exit::OK)
        }
    }
}

fn verify(config: &VerifyConfig, g: &GlobalOpts, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let report = run_verify(config)?;
    let high: Vec<Finding> = report
        .findings
        .iter()
        .filter(|f| f.severity == Severity::High)
        .cloned()
        .collect();
    write_findings(err, &high)?;
    let passed = report.passed;
    match g.format.unwrap_or(Format::Json) {
        Format::Json => write_json(
            out,
            &VerifyDoc {
                schema_version: SCHEMA_VERSION,
                report,
            },
        )?,
        format => {
            for check in &report.checks {
                for failure in &check.failures {
                    writeln!(err, "failure: {}", serde_json::to_string(failure)?)?;
                }
            }
            let rows: Vec<CheckRow> = report
                .checks
                .iter()
                .map(|c| CheckRow {
                    check: c.name.clone(),
                    cases: c.cases,
                    failures: c.failures.len(),
                    passed: c.passed,
                })
                .collect();
            write_table(out, format, &rows)?;
        }
    }
    Ok(if passed { exit::OK } else { exit::VERIFICATION })
}

const LADDER: [u64; 3] = [1001, 10001, 100001];

fn bench(rungs: usize, g: &GlobalOpts, out: &mut dyn Write) -> Result<u8> {
    let mut rows = Vec::new();
    for &r in &LADDER[..rungs.min(LADDER.len())] {
        let ctx = TernaryContext::new(3, 5, r)?;
        let rho = ctx.to_rho();
        let degree = ctx.degree() as u64;
        let probe = degree / 3;
        let expected = ctx.coeff_at(probe as i64)?;
        for method in Method::ALL {
            let start = Instant::now();
            let (poly, stats) = compute_with_stats(&rho, method, g.degree_cap)?;
            let seconds = start.elapsed().as_secs_f64();
            rows.push(BenchRow {
                r,
                method: method.name().into(),
                degree,
                seconds,
                coeffs_per_sec: (degree + 1) as f64 / seconds,
                peak_len: stats.peak_len,
                memory: "linear".into(),
                spot_check: poly.coeff(probe as usize) == expected,
            });
        }
        let start = Instant::now();
        let mut at_probe = None;
        ctx.stream(FnSink(|m, a| {
            if m == probe {
                at_probe = Some(a);
            }
        }))?;
        let seconds = start.elapsed().as_secs_f64();
        rows.push(BenchRow {
            r,
            method: "stream".into(),
            degree,
            seconds,
            coeffs_per_sec: (degree + 1) as f64 / seconds,
            peak_len: 0,
            memory: "constant".into(),
            spot_check: at_probe == Some(expected),
        });
    }
    let passed = rows.iter().all(|row| row.spot_check);
    match g.format.unwrap_or(Format::Plain) {
        Format::Json => write_json(
            out,
            &BenchDoc {
                schema_version: SCHEMA_VERSION,
                rows,
            },
        )?,
        format => write_table(out, format, &rows)?,
    }
    Ok(if passed { exit::OK } else { exit::VERIFICATION })
}
