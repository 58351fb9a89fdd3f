use std::io::Read;
use std::path::Path;
use std::time::Duration;

use serde::Serialize;

use distchrom::bounds::{aggregate, BoundsReport};
use distchrom::colorings::{
    bipartition_circles, circle_graph, color_bose_chowla, color_sum, color_symmetric,
    color_theorem1, verify_proper, Certificate, Circle, ColoringError, Verdict, Violation,
};
use distchrom::distgraph::GraphSpec;
use distchrom::exact::{
    exact_chromatic_number, exact_independence_number, AdjacencyMatrix, Outcome, SolveLimits,
};
use distchrom::gf::{bose_chowla_from_field, field_build, verify_bh};
use distchrom::numtheory::{check_t1_condition, primes_in_class, PrimeModulus};

use crate::error::CliError;
use crate::{Format, MethodArg, SpecArgs, Which};

pub const SCAN_LIMIT_CAP: u64 = 1_000_000;
pub const TABLE_N_CAP: usize = 200;

/// Rendered output plus an optional failure that still lets the output be
/// written (an improper certificate, an exhausted search).
pub struct Output {
    pub text: String,
    pub failure: Option<CliError>,
}

impl Output {
    fn ok(text: String) -> Self {
        Self {
            text,
            failure: None,
        }
    }
}

fn need(value: Option<usize>, flag: &str, what: &str) -> Result<usize, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{what} requires -{flag}")))
}

fn pick_format(
    fmt: Option<Format>,
    default: Format,
    allowed: &[Format],
    cmd: &str,
) -> Result<Format, CliError> {
    let f = fmt.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(CliError::Usage(
            format!("{cmd} does not support --format {f:?}").to_lowercase(),
        ))
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string(value)?;
    s.push('\n');
    Ok(s)
}

fn full_spec(args: &SpecArgs, what: &str) -> Result<GraphSpec, CliError> {
    let r = need(args.r, "r", what)?;
    let s = need(args.s, "s", what)?;
    Ok(GraphSpec::new(args.n, r, s)?)
}

pub fn color(method: MethodArg, args: &SpecArgs, fmt: Option<Format>) -> Result<Output, CliError> {
    let fmt = pick_format(fmt, Format::Json, &[Format::Json, Format::Text], "color")?;
    let n = args.n;
    let coloring = match method {
        MethodArg::Theorem1 => {
            if args.r.is_some_and(|r| r != 3) || args.s.is_some_and(|s| s != 2) {
                return Err(CliError::InvalidParams(
                    "theorem1 colors G(n,3,2) only".into(),
                ));
            }
            color_theorem1(n)?
        }
        MethodArg::Sum => {
            let r = need(args.r, "r", "--method sum")?;
            if args.s.is_some_and(|s| s + 1 != r) {
                return Err(CliError::InvalidParams(
                    "sum coloring targets s = r - 1".into(),
                ));
            }
            color_sum(n, r)?
        }
        MethodArg::BoseChowla => {
            let spec = full_spec(args, "--method bose-chowla")?;
            color_bose_chowla(spec.n, spec.r, spec.s)?
        }
        MethodArg::Symmetric => {
            let spec = full_spec(args, "--method symmetric")?;
            color_symmetric(spec.n, spec.r, spec.s)?
        }
    };
    let verdict = verify_proper(&coloring.spec, &coloring)?;
    let cert = Certificate::new(&coloring, &verdict);
    let text = match fmt {
        Format::Text => format!(
            "{} {}: {} colors used, palette bound {}, {}\n",
            coloring.spec,
            coloring.method.name(),
            cert.colors_used,
            cert.palette_bound,
            if cert.proper { "proper" } else { "NOT proper" }
        ),
        _ => json_line(&cert)?,
    };
    let failure = match verdict {
        Verdict::Proper => None,
        Verdict::Violation(v) => Some(CliError::Improper(describe(&v))),
    };
    Ok(Output { text, failure })
}

fn describe(v: &Violation) -> String {
    format!(
        "monochromatic edge {:?} - {:?} (color {})",
        v.u.elements(),
        v.v.elements(),
        v.shared_color
    )
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    r: usize,
    s: usize,
    method: distchrom::Method,
    proper: bool,
    colors_used: usize,
    labels_within_palette: bool,
    claims_match: bool,
    violation: Option<Violation>,
}

pub fn verify(input: &Path, fmt: Option<Format>) -> Result<Output, CliError> {
    let fmt = pick_format(fmt, Format::Json, &[Format::Json, Format::Text], "verify")?;
    let raw = if input.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Io(e.to_string()))?;
        buf
    } else {
        std::fs::read_to_string(input)
            .map_err(|e| CliError::Io(format!("{}: {e}", input.display())))?
    };
    let cert: Certificate = serde_json::from_str(&raw)?;
    let coloring = cert.to_coloring()?;
    let verdict = verify_proper(&coloring.spec, &coloring)?;
    let colors_used = coloring.colors_used();
    let labels_within_palette = coloring.labels.iter().all(|&c| c < coloring.palette_bound);
    let claims_match = cert.proper == verdict.is_proper() && cert.colors_used == colors_used;
    let violation = match &verdict {
        Verdict::Violation(v) => Some(v.clone()),
        Verdict::Proper => None,
    };
    let failure = if let Some(v) = &violation {
        Some(CliError::Improper(describe(v)))
    } else if !labels_within_palette {
        Some(CliError::Improper(
            "a label is not below palette_bound".into(),
        ))
    } else if !claims_match {
        Some(CliError::Improper(
            "certificate claims disagree with recomputed values".into(),
        ))
    } else {
        None
    };
    let report = VerifyReport {
        n: cert.n,
        r: cert.r,
        s: cert.s,
        method: cert.method,
        proper: verdict.is_proper(),
        colors_used,
        labels_within_palette,
        claims_match,
        violation,
    };
    let text = match fmt {
        Format::Text => format!(
            "{}: {} ({} colors)\n",
            coloring.spec,
            if failure.is_none() { "OK" } else { "FAILED" },
            colors_used
        ),
        _ => json_line(&report)?,
    };
    Ok(Output { text, failure })
}

pub fn bounds(args: &SpecArgs, fmt: Option<Format>) -> Result<Output, CliError> {
    let fmt = pick_format(fmt, Format::Json, &[Format::Json, Format::Text], "bounds")?;
    let spec = full_spec(args, "bounds")?;
    let report = aggregate(spec.n, spec.r, spec.s)?;
    Ok(Output::ok(match fmt {
        Format::Text => format!("{}: {}\n", spec, report.summary()),
        _ => json_line(&report)?,
    }))
}

#[derive(Serialize)]
struct ExactReport {
    n: usize,
    r: usize,
    s: usize,
    which: &'static str,
    #[serde(flatten)]
    outcome: Outcome,
}

pub fn exact(
    which: Which,
    args: &SpecArgs,
    max_nodes: Option<u64>,
    time_budget: Option<f64>,
    workers: usize,
    fmt: Option<Format>,
) -> Result<Output, CliError> {
    let fmt = pick_format(fmt, Format::Json, &[Format::Json, Format::Text], "exact")?;
    let spec = full_spec(args, "exact")?;
    let mut limits = match which {
        Which::Chi => SolveLimits::chromatic(),
        Which::Alpha => SolveLimits::independence(),
    };
    if let Some(m) = max_nodes {
        limits.max_nodes = m;
    }
    if let Some(t) = time_budget {
        limits.time_budget = Duration::try_from_secs_f64(t)
            .map_err(|_| CliError::InvalidParams(format!("bad --time-budget {t}")))?;
    }
    limits.workers = workers;
    let g = AdjacencyMatrix::from_spec(&spec, limits.max_vertices)?;
    let outcome = match which {
        Which::Chi => exact_chromatic_number(&g, &limits)?,
        Which::Alpha => exact_independence_number(&g, &limits)?,
    };
    let name = match which {
        Which::Chi => "chi",
        Which::Alpha => "alpha",
    };
    let failure = match outcome {
        Outcome::Exhausted { lower, upper } => Some(CliError::Exhausted(format!(
            "search budget exhausted; {name} in [{lower}, {upper}]"
        ))),
        Outcome::Solved { .. } => None,
    };
    let text = match (&outcome, fmt) {
        (Outcome::Solved { value, .. }, Format::Text) => format!("{spec}: {name} = {value}\n"),
        (Outcome::Exhausted { lower, upper }, Format::Text) => {
            format!("{spec}: {name} in [{lower}, {upper}] (exhausted)\n")
        }
        _ => json_line(&ExactReport {
            n: spec.n,
            r: spec.r,
            s: spec.s,
            which: name,
            outcome,
        })?,
    };
    Ok(Output { text, failure })
}

#[derive(Serialize)]
struct ConditionRow {
    p: u64,
    p_mod_8: u64,
    order_of_two: u64,
    condition_holds: bool,
    witness_r: Option<u64>,
}

pub fn scan_condition(limit: u64, fmt: Option<Format>) -> Result<Output, CliError> {
    let fmt = pick_format(
        fmt,
        Format::Csv,
        &[Format::Csv, Format::Json],
        "scan-condition",
    )?;
    if limit > SCAN_LIMIT_CAP {
        return Err(CliError::TooLarge(format!(
            "--limit {limit} exceeds {SCAN_LIMIT_CAP}"
        )));
    }
    let rows = primes_in_class(limit, 0, 1)
        .into_iter()
        .filter(|&p| p > 3)
        .map(|p| {
            let rep = check_t1_condition(p)?;
            Ok(ConditionRow {
                p,
                p_mod_8: p % 8,
                order_of_two: rep.order_of_two,
                condition_holds: rep.condition_holds,
                witness_r: rep.witness_r,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Output::ok(match fmt {
        Format::Json => json_line(&rows)?,
        _ => to_csv(&rows)?,
    }))
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

#[derive(Serialize)]
struct BhReport {
    q: u64,
    h: usize,
    modulus: u64,
    modulus_poly: Vec<u64>,
    elements: Vec<u64>,
    verified: bool,
}

pub fn bhset(q: u64, h: usize, fmt: Option<Format>) -> Result<Output, CliError> {
    pick_format(fmt, Format::Json, &[Format::Json], "bhset")?;
    let field = field_build(q, h)?;
    let set = bose_chowla_from_field(&field);
    let verified = verify_bh(&set.elements, h, set.modulus);
    let report = BhReport {
        q,
        h,
        modulus: set.modulus,
        modulus_poly: field.modulus_poly,
        elements: set.elements,
        verified,
    };
    let failure =
        (!verified).then(|| CliError::Internal("generated set failed the B_h check".into()));
    Ok(Output {
        text: json_line(&report)?,
        failure,
    })
}

#[derive(Serialize)]
struct CirclesReport {
    p: u64,
    order_of_two: u64,
    condition_holds: bool,
    vertices: Vec<Circle>,
    edges: Vec<(usize, usize)>,
    /// Class (1 or 2) per vertex, absent when the 2-coloring fails.
    bipartition: Option<Vec<u8>>,
}

pub fn circles(p: u64, fmt: Option<Format>) -> Result<Output, CliError> {
    pick_format(fmt, Format::Json, &[Format::Json], "circles")?;
    let rep = check_t1_condition(p)?;
    let pm = PrimeModulus::new(p)?;
    let graph = circle_graph(pm)?;
    let bipartition = match bipartition_circles(pm) {
        Ok(b) => Some(b.classes),
        Err(ColoringError::OddCycle(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let report = CirclesReport {
        p,
        order_of_two: rep.order_of_two,
        condition_holds: rep.condition_holds,
        vertices: graph.circles,
        edges: graph.edges,
        bipartition,
    };
    Ok(Output::ok(json_line(&report)?))
}

#[derive(Serialize)]
struct TableRow {
    n: usize,
    best_lower: u64,
    best_upper: u64,
    exact: Option<u64>,
    sources: String,
}

fn table_row(report: &BoundsReport) -> TableRow {
    let tags = |entries, v| {
        BoundsReport::sources_of(entries, v)
            .iter()
            .map(|s| s.tag())
            .collect::<Vec<_>>()
            .join("+")
    };
    TableRow {
        n: report.spec.n,
        best_lower: report.best_lower,
        best_upper: report.best_upper,
        exact: report.exact,
        sources: format!(
            "lower={};upper={}",
            tags(&report.lower, report.best_lower),
            tags(&report.upper, report.best_upper)
        ),
    }
}

pub fn table(n_max: usize, fmt: Option<Format>) -> Result<Output, CliError> {
    let fmt = pick_format(fmt, Format::Csv, &[Format::Csv, Format::Json], "table")?;
    if n_max > TABLE_N_CAP {
        return Err(CliError::TooLarge(format!(
            "--n-max {n_max} exceeds {TABLE_N_CAP}"
        )));
    }
    let rows = (4..=n_max)
        .map(|n| aggregate(n, 3, 2).map(|rep| table_row(&rep)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Output::ok(match fmt {
        Format::Json => json_line(&rows)?,
        _ => to_csv(&rows)?,
    }))
}
