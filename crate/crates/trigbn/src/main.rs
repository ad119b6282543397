use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use trigbn_core::components::parse_indices;
use trigbn_core::harness::{
    class_signature, delta_parity_check, disjointness_certificate, run_case, Case, ClassExpr,
    HarnessError,
};
use trigbn_core::{
    admissible_region, classify, count_w0, h0_twist, s_n_k, ClassifyError, Curve, CurveParams,
    LabelError, MAX_CIRCLES,
};

use trigbn::report::{
    CertificateRecord, ClassificationRecord, DeltaParityRecord, H0Record, RegionPointRecord,
    RegionRecord, SignatureRecord, ValidationRecord,
};
use trigbn::sweep::{self, SweepRow, MAX_SWEEP_GENUS};

/// Exact component counts for real Brill-Noether loci of real trigonal curves.
///
/// Exit status: 0 on success, 1 when the parameters are rejected or a
/// certificate fails, 2 on a usage error.
#[derive(Parser)]
#[command(name = "trigbn", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,
    /// Shorthand for `--format json`.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args, Clone, Copy)]
struct CurveArgs {
    /// Genus.
    g: i64,
    /// Number of real circles.
    n: i64,
    /// δ-invariant of the trigonal pencil (1 or 3).
    #[arg(value_name = "DELTA_T")]
    delta_t: i64,
    /// Maroni invariant.
    m: i64,
}

impl CurveArgs {
    fn params(self) -> CurveParams {
        CurveParams {
            genus: self.g,
            circles: self.n,
            delta_t: self.delta_t,
            maroni: self.m,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check curve invariants and print the derived ones.
    #[command(allow_negative_numbers = true)]
    Validate(CurveArgs),
    /// Number of components of X_k(ℝ) on a curve with n circles.
    #[command(allow_negative_numbers = true)]
    Snk {
        #[arg(value_parser = clap::value_parser!(i64).range(0..=MAX_CIRCLES))]
        n: i64,
        k: i64,
    },
    /// Number of components of W⁰_d(ℝ).
    #[command(allow_negative_numbers = true)]
    W0 {
        #[command(flatten)]
        curve: CurveArgs,
        d: i64,
    },
    /// Count or bound the components of W^r_d(ℝ).
    #[command(allow_negative_numbers = true)]
    Classify {
        #[command(flatten)]
        curve: CurveArgs,
        d: i64,
        r: i64,
    },
    /// Lattice points (d, r) of the admissible segment.
    #[command(allow_negative_numbers = true)]
    Region {
        g: i64,
        m: i64,
        /// Also write the segment as an SVG figure.
        #[arg(long, value_name = "PATH")]
        svg: Option<std::path::PathBuf>,
    },
    /// h⁰(K + kT) and its split over the pushforward summands.
    #[command(allow_negative_numbers = true)]
    H0 { g: i64, m: i64, k: i64 },
    /// Degree and parity vector of a class such as `K - 2*T + 1*R(1,a)`.
    #[command(allow_negative_numbers = true)]
    Signature {
        #[command(flatten)]
        curve: CurveArgs,
        expr: String,
    },
    /// Run a divisor construction and check it.
    #[command(subcommand)]
    Harness(HarnessCommand),
    /// Classify every valid (g, n, deltaT, m, d, r) with 5 <= g <= N.
    Sweep {
        #[arg(long, value_name = "N", value_parser = clap::value_parser!(i64).range(5..=MAX_SWEEP_GENUS))]
        g_max: i64,
    },
}

#[derive(Args, Clone, Copy)]
struct Locus {
    #[command(flatten)]
    curve: CurveArgs,
    d: i64,
    r: i64,
}

#[derive(Subcommand)]
enum HarnessCommand {
    /// One circle: the unique V component meets U.
    #[command(allow_negative_numbers = true)]
    Case1(Locus),
    /// Several circles, deltaT = 1: a non-exceptional V component meets U.
    #[command(allow_negative_numbers = true)]
    Case2 {
        #[command(flatten)]
        locus: Locus,
        /// Target label, e.g. `2,3` or `V(0)`.
        label: String,
    },
    /// deltaT = 3: the given V component meets U.
    #[command(allow_negative_numbers = true)]
    Case3 {
        #[command(flatten)]
        locus: Locus,
        label: String,
    },
    /// One base point: refute an intersection for an exceptional label.
    #[command(allow_negative_numbers = true)]
    Obstruction {
        #[command(flatten)]
        locus: Locus,
        label: String,
    },
    /// Parity test of deltaT against a single base point.
    #[command(allow_negative_numbers = true)]
    DeltaParity { g: i64, m: i64, d: i64, r: i64 },
    /// Vanishing certificate for m > d - 2r - 1.
    #[command(allow_negative_numbers = true)]
    Disjoint(Locus),
}

enum Failure {
    /// Rejected parameters or a failed certificate.
    Domain(String),
    Usage(String),
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type Outcome = Result<(), Failure>;

fn curve(params: CurveParams) -> Result<Curve, Failure> {
    params
        .validate()
        .map_err(|rej| Failure::Domain(format!("invalid curve: {rej}")))
}

/// Curve used when only `(g, m)` matter.
fn curve_gm(g: i64, m: i64) -> Result<Curve, Failure> {
    curve(CurveParams {
        genus: g,
        circles: 1,
        delta_t: 1,
        maroni: m,
    })
}

fn json_line(out: &mut impl Write, value: &impl Serialize) -> Outcome {
    serde_json::to_writer(&mut *out, value).map_err(io::Error::from)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn csv_rows<const N: usize>(
    out: &mut impl Write,
    header: [&str; N],
    rows: &[[String; N]],
) -> Outcome {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn run(cli: Cli, out: &mut impl Write) -> Outcome {
    let format = if cli.json { Format::Json } else { cli.format };
    match cli.command {
        Command::Validate(args) => {
            let params = args.params();
            let result = params.validate();
            let rec = ValidationRecord::from_result(params, &result);
            match format {
                Format::Json => json_line(out, &rec)?,
                Format::Csv => csv_rows(
                    out,
                    [
                        "g",
                        "n",
                        "deltaT",
                        "m",
                        "valid",
                        "violations",
                        "a",
                        "moduli_dim",
                    ],
                    &[[
                        rec.g.to_string(),
                        rec.n.to_string(),
                        rec.delta_t.to_string(),
                        rec.m.to_string(),
                        rec.valid.to_string(),
                        rec.violations.join(";"),
                        opt(rec.a),
                        opt(rec.moduli_dim),
                    ]],
                )?,
                Format::Table => match &result {
                    Ok(_) => writeln!(
                        out,
                        "valid: g={} n={} deltaT={} m={}\na = {}\nmoduli dimension = {}",
                        rec.g,
                        rec.n,
                        rec.delta_t,
                        rec.m,
                        opt(rec.a),
                        opt(rec.moduli_dim)
                    )?,
                    Err(_) => writeln!(out, "invalid: {}", rec.violations.join(", "))?,
                },
            }
            if let Err(rej) = result {
                return Err(Failure::Domain(rej.to_string()));
            }
        }
        Command::Snk { n, k } => {
            let count = s_n_k(n, k);
            match format {
                Format::Json => {
                    json_line(out, &serde_json::json!({ "n": n, "k": k, "count": count }))?
                }
                Format::Csv => csv_rows(
                    out,
                    ["n", "k", "count"],
                    &[[n.to_string(), k.to_string(), count.to_string()]],
                )?,
                Format::Table => writeln!(out, "{count}")?,
            }
        }
        Command::W0 { curve: args, d } => {
            let x = curve(args.params())?;
            let count = count_w0(&x, d);
            let p = x.params();
            match format {
                Format::Json => json_line(
                    out,
                    &serde_json::json!({
                        "g": p.genus, "n": p.circles, "deltaT": p.delta_t, "m": p.maroni,
                        "d": d, "count": count
                    }),
                )?,
                Format::Csv => csv_rows(
                    out,
                    ["g", "n", "deltaT", "m", "d", "count"],
                    &[[
                        p.genus.to_string(),
                        p.circles.to_string(),
                        p.delta_t.to_string(),
                        p.maroni.to_string(),
                        d.to_string(),
                        count.to_string(),
                    ]],
                )?,
                Format::Table => writeln!(out, "{count}")?,
            }
        }
        Command::Classify { curve: args, d, r } => {
            let x = curve(args.params())?;
            let c = classify(&x, d, r).map_err(|e| match e {
                ClassifyError::Inconsistent => Failure::Domain(e.to_string()),
                other => Failure::Usage(other.to_string()),
            })?;
            let rec = ClassificationRecord::new(&x, &c);
            match format {
                Format::Json => json_line(out, &rec)?,
                Format::Csv => {
                    let row =
                        SweepRow::classify(&x, d, r).map_err(|e| Failure::Usage(e.to_string()))?;
                    let mut w = csv::Writer::from_writer(&mut *out);
                    w.serialize(row.to_csv())?;
                    w.flush()?;
                }
                Format::Table => {
                    let count = match (rec.value, rec.lower, rec.upper) {
                        (Some(v), _, _) => format!("exact {v}"),
                        (None, Some(l), Some(u)) => format!("between {l} and {u}"),
                        _ => "empty".to_owned(),
                    };
                    writeln!(out, "n(W^{r}_{d}) : {count}")?;
                    writeln!(out, "provenance  : {}", rec.provenance.join(", "))?;
                    if let Some(note) = &rec.note {
                        writeln!(out, "note        : {note}")?;
                    }
                }
            }
        }
        Command::Region { g, m, svg } => {
            let x = curve_gm(g, m)?;
            let points = admissible_region(&x);
            if let Some(path) = svg {
                std::fs::write(&path, trigbn::svg::render_region(&x))
                    .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            let rec = RegionRecord {
                g,
                m,
                points: points.iter().map(RegionPointRecord::from).collect(),
            };
            match format {
                Format::Json => json_line(out, &rec)?,
                Format::Csv => {
                    let rows: Vec<[String; 6]> = rec
                        .points
                        .iter()
                        .map(|p| {
                            [
                                g.to_string(),
                                m.to_string(),
                                p.d.to_string(),
                                p.r.to_string(),
                                p.base_points.to_string(),
                                p.tag.clone(),
                            ]
                        })
                        .collect();
                    csv_rows(out, ["g", "m", "d", "r", "base_points", "tag"], &rows)?;
                }
                Format::Table => {
                    if rec.points.is_empty() {
                        writeln!(out, "no admissible (d, r) for g={g} m={m}")?;
                    }
                    for p in &rec.points {
                        writeln!(
                            out,
                            "d={:<3} r={:<3} base points={:<3} {}",
                            p.d, p.r, p.base_points, p.tag
                        )?;
                    }
                }
            }
        }
        Command::H0 { g, m, k } => {
            let x = curve_gm(g, m)?;
            let t = h0_twist(&x, k);
            let rec = H0Record {
                g,
                m,
                k,
                degree: t.degree,
                h0: t.h0,
                summands: t.summands,
            };
            match format {
                Format::Json => json_line(out, &rec)?,
                Format::Csv => csv_rows(
                    out,
                    ["g", "m", "k", "degree", "h0"],
                    &[[
                        g.to_string(),
                        m.to_string(),
                        k.to_string(),
                        t.degree.to_string(),
                        t.h0.to_string(),
                    ]],
                )?,
                Format::Table => writeln!(
                    out,
                    "h0(K{k:+}T) = {} = {} + {} + {}  (degree {})",
                    t.h0, t.summands[0], t.summands[1], t.summands[2], t.degree
                )?,
            }
        }
        Command::Signature { curve: args, expr } => {
            let x = curve(args.params())?;
            let e = ClassExpr::parse(&expr, x.circles() as u32)
                .map_err(|e| Failure::Usage(format!("cannot parse {expr:?}: {e}")))?;
            let sig = class_signature(&x, &e);
            let rec = SignatureRecord::new(e.to_string(), &sig);
            match format {
                Format::Json => json_line(out, &rec)?,
                Format::Csv => csv_rows(
                    out,
                    ["expr", "degree", "parity", "delta"],
                    &[[
                        rec.expr.clone(),
                        rec.degree.to_string(),
                        sig.parity.to_string(),
                        rec.delta.to_string(),
                    ]],
                )?,
                Format::Table => writeln!(
                    out,
                    "{}: degree {} parity {} delta {}",
                    rec.expr, rec.degree, sig.parity, rec.delta
                )?,
            }
        }
        Command::Harness(h) => harness(h, format, out)?,
        Command::Sweep { g_max } => match format {
            Format::Json => sweep::write_json_lines(g_max, out)?,
            Format::Csv => sweep::write_csv(g_max, out)?,
            Format::Table => {
                writeln!(
                    out,
                    "{:>3} {:>3} {:>6} {:>3} {:>3} {:>3}  {:<12} {:>10} {:>10}",
                    "g", "n", "deltaT", "m", "d", "r", "kind", "lower", "upper"
                )?;
                for row in sweep::rows(g_max) {
                    let c = row.to_csv();
                    writeln!(
                        out,
                        "{:>3} {:>3} {:>6} {:>3} {:>3} {:>3}  {:<12} {:>10} {:>10}",
                        c.g,
                        c.n,
                        c.delta_t,
                        c.m,
                        c.d,
                        c.r,
                        c.kind,
                        opt(c.lower),
                        opt(c.upper)
                    )?;
                }
            }
        },
    }
    Ok(())
}

fn label(src: &str) -> Result<Vec<u32>, Failure> {
    parse_indices(src).map_err(|e: LabelError| Failure::Usage(format!("bad label {src:?}: {e}")))
}

fn harness_failure(e: HarnessError) -> Failure {
    Failure::Domain(e.to_string())
}

fn harness(cmd: HarnessCommand, format: Format, out: &mut impl Write) -> Outcome {
    let (locus, case) = match cmd {
        HarnessCommand::DeltaParity { g, m, d, r } => {
            let v = delta_parity_check(g, m, d, r).map_err(harness_failure)?;
            let rec = DeltaParityRecord::new(g, m, d, r, &v);
            match format {
                Format::Json => json_line(out, &rec)?,
                Format::Csv => {
                    let rows: Vec<[String; 4]> = rec
                        .hypotheses
                        .iter()
                        .map(|h| {
                            [
                                h.delta_t.to_string(),
                                h.residual_delta.to_string(),
                                h.pencil_delta.to_string(),
                                h.consistent.to_string(),
                            ]
                        })
                        .collect();
                    csv_rows(
                        out,
                        ["deltaT", "residual_delta", "pencil_delta", "consistent"],
                        &rows,
                    )?;
                }
                Format::Table => {
                    for h in &rec.hypotheses {
                        writeln!(
                            out,
                            "deltaT={}: delta(K-{}T)={} delta({}T)={} {}",
                            h.delta_t,
                            rec.residual_multiple,
                            h.residual_delta,
                            rec.pencil_multiple,
                            h.pencil_delta,
                            if h.consistent {
                                "consistent"
                            } else {
                                "contradiction"
                            }
                        )?;
                    }
                    writeln!(out, "{}", rec.verdict)?;
                }
            }
            return Ok(());
        }
        HarnessCommand::Disjoint(locus) => {
            let x = curve(locus.curve.params())?;
            let cert = disjointness_certificate(&x, locus.d, locus.r).map_err(harness_failure)?;
            return emit_certificate(CertificateRecord::from(&cert), format, out);
        }
        HarnessCommand::Case1(locus) => (locus, Case::Case1),
        HarnessCommand::Case2 { locus, label: l } => (locus, Case::Case2(label(&l)?)),
        HarnessCommand::Case3 { locus, label: l } => (locus, Case::Case3(label(&l)?)),
        HarnessCommand::Obstruction { locus, label: l } => (locus, Case::Obstruction(label(&l)?)),
    };
    let x = curve(locus.curve.params())?;
    let cert = run_case(&x, locus.d, locus.r, &case).map_err(harness_failure)?;
    emit_certificate(CertificateRecord::from(&cert), format, out)
}

fn emit_certificate(rec: CertificateRecord, format: Format, out: &mut impl Write) -> Outcome {
    match format {
        Format::Json => json_line(out, &rec)?,
        Format::Csv => {
            let rows: Vec<[String; 2]> = rec
                .checks
                .iter()
                .map(|c| [c.name.clone(), c.passed.to_string()])
                .collect();
            csv_rows(out, ["check", "passed"], &rows)?;
        }
        Format::Table => {
            writeln!(
                out,
                "{} g={} n={} deltaT={} m={} d={} r={}",
                rec.case, rec.g, rec.n, rec.delta_t, rec.m, rec.d, rec.r
            )?;
            for (name, v) in [
                ("target", &rec.target),
                ("D1", &rec.d1),
                ("D2", &rec.d2),
                ("D3", &rec.d3),
            ] {
                if let Some(v) = v {
                    writeln!(out, "{name:<7}: {v}")?;
                }
            }
            for m in &rec.members {
                writeln!(out, "member : {m}")?;
            }
            for c in &rec.checks {
                writeln!(
                    out,
                    "[{}] {}",
                    if c.passed { "pass" } else { "FAIL" },
                    c.name
                )?;
            }
            if let Some(s) = &rec.search {
                writeln!(
                    out,
                    "search : {} configurations, {} witnesses ({})",
                    s.configurations, s.witnesses, s.bound
                )?;
            }
            for n in &rec.notes {
                writeln!(out, "note   : {n}")?;
            }
        }
    }
    if rec.passed {
        Ok(())
    } else {
        Err(Failure::Domain(format!("{} certificate failed", rec.case)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result.and(flushed.map_err(Failure::Io)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("trigbn: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("trigbn: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("trigbn: {e}");
            ExitCode::from(2)
        }
    }
}
