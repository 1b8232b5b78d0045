//! Command-line entry point. Every run prints one versioned JSON document
//! (or CSV / JSON lines where requested) and exits 0 iff the status is `ok`.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::parse::parse_nonzero_polynomial;
use crate::arith::{parse_rational, rat_string, FiniteField, Integer, Polynomial, QuadExt, Rational};
use crate::elliptic::counting::count_points;
use crate::elliptic::{CubicTwistCurve, HessePoint, Point};
use crate::error::{Error, Result};
use crate::function_field::{
    build_family, cm_extended_differentials, compare_with_printed, lfunction, printed_pullbacks,
    pullback_differential, rank_bounds, z_rank, FunctionFieldCurve, HolDifferential, LMethod,
    LPolynomial,
};
use crate::identities::{
    nearmiss_stream, taxicab_search, verify_all, verify_euler_family, IdentityReport, NearMissConfig,
};
use crate::surface::{analyze_with, geometric_fiber_count, AnalyzeOptions, SurfaceReport};
use crate::twists::{twist_table, CertificateOutcome, TwistRecord};

pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable capping the worker count.
pub const WORKERS_ENV: &str = "TAXICAB_WORKERS";

#[derive(Parser, Debug)]
#[command(name = "taxicab", version, about = "Exact computations around 1729 and Ramanujan's K3 surface")]
pub struct Cli {
    /// Worker threads for the point-counting kernels.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Polynomial identities, taxicab numbers and near-miss families.
    #[command(subcommand)]
    Identities(IdentitiesCmd),
    /// Point counts and model maps for X³ + Y³ = d.
    #[command(subcommand)]
    Ec(EcCmd),
    /// The curve X³ + Y³ = k(T) over Q(T).
    #[command(subcommand)]
    Ff(FfCmd),
    /// The elliptic surface v² = u³ − 432k(T)².
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Specializations T = t and rank certificates.
    #[command(subcommand)]
    Twists(TwistsCmd),
}

#[derive(Subcommand, Debug)]
pub enum IdentitiesCmd {
    Verify,
    Taxicab {
        #[arg(long, default_value_t = 2000)]
        bound: u64,
        #[arg(long, default_value_t = 2)]
        reps: usize,
    },
    Nearmiss {
        #[arg(long, value_enum, default_value_t = NearMissFamily::Zero)]
        family: NearMissFamily,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NearMissFamily {
    Zero,
    Infinity,
}

#[derive(Subcommand, Debug)]
pub enum EcCmd {
    /// #E(F_q) for v² = u³ + A, q = pⁿ.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Hesse point (x, y) on X³ + Y³ = d to Weierstrass and back.
    Map {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum FfCmd {
    /// Ranks of the pullback differentials over Q and Q(ω).
    Rank {
        /// Also bound the rank from above by L at this prime.
        #[arg(long)]
        p: Option<u64>,
    },
    Lfunction {
        #[arg(long)]
        p: u64,
        /// Count all eight power sums instead of completing by duality.
        #[arg(long)]
        direct: bool,
        #[arg(long)]
        k: Option<String>,
    },
    Differentials,
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCmd {
    Analyze {
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, default_value_t = 17)]
        confirm_prime: u64,
        /// Skip the L-function upper bound on the rank.
        #[arg(long)]
        no_confirm: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Jsonl,
    Csv,
}

#[derive(Args, Debug)]
pub struct TableArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: i64,
    #[arg(long)]
    pub certify: bool,
    #[arg(long, default_value_t = 50)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Subcommand, Debug)]
pub enum TwistsCmd {
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Failed,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub command: String,
    pub parameters: Value,
    pub results: Value,
    pub status: Status,
    pub timing: Timing,
}

/// Exit code and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

type Payload = (Value, Value, Status);

fn int(n: &Integer) -> Value {
    Value::String(n.to_string())
}

fn q(r: &Rational) -> Value {
    Value::String(rat_string(r))
}

fn parse_q(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| Error::Parse(format!("not a rational number: {s}")))
}

fn parse_k(k: &Option<String>) -> Result<Option<Polynomial<Rational>>> {
    k.as_deref().map(|s| parse_nonzero_polynomial(s, "T")).transpose()
}

fn identity_json(r: &IdentityReport) -> Value {
    json!({
        "name": r.name,
        "check": "symbolic expansion to the zero polynomial",
        "expanded_terms": r.expanded_terms,
        "specializations": r.specializations.iter().map(|s| json!({
            "parameters": s.parameters.iter().map(|(n, v)| (n.clone(), int(v))).collect::<serde_json::Map<_, _>>(),
            "divisor": int(&s.divisor),
            "lhs": int(&s.lhs),
            "rhs": s.rhs.iter().map(int).collect::<Vec<_>>(),
            "holds": s.holds(),
        })).collect::<Vec<_>>(),
    })
}

fn run_identities(cmd: &IdentitiesCmd) -> Result<Payload> {
    match cmd {
        IdentitiesCmd::Verify => {
            let reports = verify_all()?;
            let (lambda, quad) = verify_euler_family(
                &Rational::from_integer(3.into()),
                &Rational::from_integer(0.into()),
                &Rational::from_integer(1.into()),
            )?;
            let results = json!({
                "identities": reports.iter().map(identity_json).collect::<Vec<_>>(),
                "euler_family_at_3_0_1": {
                    "lambda": q(&lambda),
                    "quadruple": [q(&quad.x), q(&quad.y), q(&quad.z), q(&quad.w)],
                },
            });
            Ok((json!({}), results, Status::Ok))
        }
        IdentitiesCmd::Taxicab { bound, reps } => {
            let entries = taxicab_search(*bound, *reps)?;
            let results = json!({
                "entries": entries.iter().map(|e| json!({
                    "n": e.n.to_string(),
                    "representations": e.representations.iter()
                        .map(|(a, b)| [a.to_string(), b.to_string()]).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            Ok((json!({"bound": bound, "reps": reps}), results, Status::Ok))
        }
        IdentitiesCmd::Nearmiss { family, count } => {
            let config = match family {
                NearMissFamily::Zero => NearMissConfig::default_zero(),
                NearMissFamily::Infinity => NearMissConfig::default_infinity(),
            };
            let tuples = nearmiss_stream(&config, *count)?;
            let results = json!({
                "family": config.name,
                "tuples": tuples.iter().map(|t| json!({
                    "n": t.n,
                    "a": int(&t.a),
                    "b": int(&t.b),
                    "c": int(&t.c),
                    "epsilon": t.epsilon,
                })).collect::<Vec<_>>(),
            });
            let family = match family {
                NearMissFamily::Zero => "zero",
                NearMissFamily::Infinity => "infinity",
            };
            Ok((json!({"family": family, "count": count}), results, Status::Ok))
        }
    }
}

fn run_ec(cmd: &EcCmd) -> Result<Payload> {
    match cmd {
        EcCmd::Count { p, n, a } => {
            let field = FiniteField::new(*p, *n)?;
            let count = count_points(&field, &field.from_i64(*a))?;
            let q_size = field.size();
            let trace = q_size as i128 + 1 - count as i128;
            let results = json!({
                "q": q_size.to_string(),
                "points": count.to_string(),
                "trace": trace.to_string(),
                "hasse_ok": trace * trace <= 4 * q_size as i128,
            });
            Ok((json!({"p": p, "n": n, "a": a}), results, Status::Ok))
        }
        EcCmd::Map { d, x, y } => {
            let (d, x, y) = (parse_q(d)?, parse_q(x)?, parse_q(y)?);
            let curve = CubicTwistCurve::new(d.clone())?;
            let w = curve.to_weierstrass(&x, &y)?;
            let back = curve.from_weierstrass(&w)?;
            let weierstrass = match &w {
                Point::Infinity => Value::Null,
                Point::Affine(u, v) => json!({"u": q(u), "v": q(v)}),
            };
            let round_trip = back == HessePoint::Affine(x.clone(), y.clone());
            let results = json!({
                "weierstrass_a": q(&(Rational::from_integer((-432).into()) * &d * &d)),
                "weierstrass": weierstrass,
                "round_trip": round_trip,
            });
            let status = if round_trip { Status::Ok } else { Status::Failed };
            Ok((json!({"d": q(&d), "x": q(&x), "y": q(&y)}), results, status))
        }
    }
}

fn lpoly_json(l: &LPolynomial) -> Value {
    let (arith, geom) = rank_bounds(l);
    json!({
        "p": l.p,
        "degree": l.degree(),
        "coefficients": l.coeffs.iter().map(int).collect::<Vec<_>>(),
        "factorization": l.factor().display_with("u"),
        "sign": l.sign,
        "method": match l.method {
            Some(LMethod::Direct) => "direct",
            Some(LMethod::FunctionalEquation) => "functional_equation",
            None => "given",
        },
        "counted_power_sums": l.counted.iter().map(|(n, c)| json!({"n": n, "c": int(c)})).collect::<Vec<_>>(),
        "functional_equation_holds": l.functional_equation_sign().is_some(),
        "weil_bound_holds": l.satisfies_weil_bound(1e-9),
        "arith_bound": arith,
        "geom_bound": geom,
    })
}

fn diff_text(w: &HolDifferential<Rational>) -> String {
    format!("({})/({}) dT/S^2", w.w.num().display_with("T"), w.w.den().display_with("T"))
}

fn run_ff(cmd: &FfCmd) -> Result<Payload> {
    let family = build_family()?;
    match cmd {
        FfCmd::Rank { p } => {
            let w: Vec<HolDifferential<QuadExt>> = [&family.p1, &family.p2]
                .iter()
                .map(|s| pullback_differential(s).to_quad())
                .collect();
            let rank_q = z_rank(&w);
            let rank_cm = z_rank(&cm_extended_differentials(&family));
            let mut results = json!({"rank_over_q": rank_q, "rank_over_q_omega": rank_cm});
            let mut status = Status::Ok;
            if let Some(p) = p {
                let l = lfunction(&family.curve, *p, LMethod::FunctionalEquation)?;
                let (arith, geom) = rank_bounds(&l);
                results["arith_bound"] = json!(arith);
                results["geom_bound"] = json!(geom);
                if rank_q > arith || rank_cm > geom {
                    status = Status::Failed;
                }
            }
            Ok((json!({"p": p}), results, status))
        }
        FfCmd::Lfunction { p, direct, k } => {
            let curve = match parse_k(k)? {
                Some(k) => FunctionFieldCurve::new(k)?,
                None => family.curve.clone(),
            };
            let method = if *direct { LMethod::Direct } else { LMethod::FunctionalEquation };
            let l = lfunction(&curve, *p, method)?;
            let params = json!({"p": p, "direct": direct, "k": curve.k().display_with("T")});
            Ok((params, lpoly_json(&l), Status::Ok))
        }
        FfCmd::Differentials => {
            let printed = printed_pullbacks(family.curve.k());
            let entries: Vec<Value> = [&family.p1, &family.p2]
                .iter()
                .zip(printed.iter())
                .enumerate()
                .map(|(i, (s, pr))| {
                    let w = pullback_differential(s);
                    let (ratio, constant) = compare_with_printed(&w, pr);
                    json!({
                        "section": format!("P{}", i + 1),
                        "wronskian": diff_text(&w),
                        "printed": diff_text(pr),
                        "ratio": format!("({})/({})", ratio.num().display_with("T"), ratio.den().display_with("T")),
                        "constant_multiple": constant,
                    })
                })
                .collect();
            Ok((json!({}), json!({"differentials": entries}), Status::Ok))
        }
    }
}

fn surface_json(r: &SurfaceReport) -> Value {
    json!({
        "k": r.k.display_with("T"),
        "fibers": r.fibers.iter().map(|f| json!({
            "place": f.place.to_string(),
            "degree": f.degree(),
            "v_a": f.v_a,
            "type": f.kind.symbol(),
            "m": f.m,
            "e": f.e,
            "f": f.f,
        })).collect::<Vec<_>>(),
        "geometric_bad_fibers": geometric_fiber_count(&r.fibers),
        "euler_number": int(&r.euler_number),
        "chi": int(&r.chi),
        "is_k3": r.is_k3,
        "rank_input": r.rank_input,
        "rank_upper_bound": r.rank_upper_bound.map(|(p, b)| json!({"p": p, "geom_bound": b})),
        "picard": r.picard,
    })
}

fn run_surface(cmd: &SurfaceCmd) -> Result<Payload> {
    let SurfaceCmd::Analyze { k, rank, confirm_prime, no_confirm } = cmd;
    let opts = AnalyzeOptions {
        k: parse_k(k)?,
        rank: *rank,
        confirm_prime: (!no_confirm).then_some(*confirm_prime),
    };
    let report = analyze_with(&opts)?;
    let params = json!({
        "k": report.k.display_with("T"),
        "rank": rank,
        "confirm_prime": opts.confirm_prime,
    });
    Ok((params, surface_json(&report), Status::Ok))
}

fn record_json(r: &TwistRecord) -> Value {
    let cert = match &r.certificate {
        None => Value::Null,
        Some(CertificateOutcome::Certified(c)) => json!({
            "status": "certified",
            "p": c.p,
            "group_order": c.group_order.to_string(),
            "order_p1": c.order_p1.to_string(),
            "order_p2": c.order_p2.to_string(),
            "subgroup_order": c.subgroup_order.to_string(),
        }),
        Some(CertificateOutcome::Exhausted { primes_tried }) => json!({
            "status": "exhausted",
            "primes_tried": primes_tried,
        }),
    };
    json!({
        "t": q(&r.t),
        "k": q(&r.k_t),
        "d": int(&r.d),
        "x1": q(&r.p1.0),
        "y1": q(&r.p1.1),
        "x2": q(&r.p2.0),
        "y2": q(&r.p2.1),
        "on_curve": r.is_valid(),
        "certificate": cert,
    })
}

fn run_twists(cmd: &TwistsCmd) -> Result<Payload> {
    let TwistsCmd::Table(a) = cmd;
    let table = twist_table(a.from, a.to, a.certify.then_some(a.budget))?;
    let status = if table.records.iter().any(|r| !r.is_valid()) {
        Status::Failed
    } else if a.certify
        && !table.records.is_empty()
        && table.records.iter().all(|r| r.certificate.as_ref().and_then(|c| c.prime()).is_none())
    {
        Status::Exhausted
    } else {
        Status::Ok
    };
    let results = json!({
        "records": table.records.iter().map(record_json).collect::<Vec<_>>(),
        "distinct_d": table.distinct_d,
        "max_abs_d": table.max_abs_d.as_ref().map(int),
        "certified": table.records.iter().filter(|r| r.certificate.as_ref().and_then(|c| c.prime()).is_some()).count(),
    });
    let params = json!({"from": a.from, "to": a.to, "certify": a.certify, "budget": a.budget});
    Ok((params, results, status))
}

/// Columns of the CSV table output.
pub const CSV_COLUMNS: [&str; 8] = ["t", "k", "d", "x1", "y1", "x2", "y2", "cert_prime"];

fn table_csv(results: &Value) -> String {
    let mut out = CSV_COLUMNS.join(",");
    out.push('\n');
    for r in results["records"].as_array().into_iter().flatten() {
        let cert = r["certificate"]["p"].as_u64().map(|p| p.to_string()).unwrap_or_default();
        let row: Vec<String> = CSV_COLUMNS[..7]
            .iter()
            .map(|c| r[*c].as_str().unwrap_or_default().to_string())
            .chain(std::iter::once(cert))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn command_name(c: &Command) -> String {
    let (group, sub) = match c {
        Command::Identities(i) => ("identities", match i {
            IdentitiesCmd::Verify => "verify",
            IdentitiesCmd::Taxicab { .. } => "taxicab",
            IdentitiesCmd::Nearmiss { .. } => "nearmiss",
        }),
        Command::Ec(e) => ("ec", match e {
            EcCmd::Count { .. } => "count",
            EcCmd::Map { .. } => "map",
        }),
        Command::Ff(f) => ("ff", match f {
            FfCmd::Rank { .. } => "rank",
            FfCmd::Lfunction { .. } => "lfunction",
            FfCmd::Differentials => "differentials",
        }),
        Command::Surface(_) => ("surface", "analyze"),
        Command::Twists(_) => ("twists", "table"),
    };
    format!("{group} {sub}")
}

/// Worker count: the flag, else the processor count, capped by the environment.
pub fn resolve_workers(flag: Option<usize>, env_cap: Option<&str>) -> usize {
    let base = flag.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cap = env_cap.and_then(|s| s.trim().parse::<usize>().ok()).filter(|&c| c > 0);
    cap.map_or(base, |c| base.min(c)).max(1)
}

fn run(cli: &Cli) -> Result<Payload> {
    match &cli.command {
        Command::Identities(c) => run_identities(c),
        Command::Ec(c) => run_ec(c),
        Command::Ff(c) => run_ff(c),
        Command::Surface(c) => run_surface(c),
        Command::Twists(c) => run_twists(c),
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn dispatch<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let workers = resolve_workers(cli.workers, std::env::var(WORKERS_ENV).ok().as_deref());
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
    let result = match pool {
        Ok(pool) => pool.install(|| run(&cli)),
        Err(e) => Err(Error::InvalidInput(format!("thread pool: {e}"))),
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let command = command_name(&cli.command);
    let (parameters, results, status, stderr) = match result {
        Ok((p, r, s)) => (p, r, s, String::new()),
        Err(e) => (json!({}), json!({"error": e.to_string()}), Status::Failed, format!("error: {e}\n")),
    };
    let code = if status == Status::Ok { 0 } else { 1 };
    let format = match &cli.command {
        Command::Twists(TwistsCmd::Table(a)) if stderr.is_empty() => a.format,
        _ => OutputFormat::Json,
    };
    let stdout = match format {
        OutputFormat::Csv => table_csv(&results),
        OutputFormat::Jsonl => results["records"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|r| format!("{r}\n"))
            .collect(),
        OutputFormat::Json => {
            let report = RunReport {
                schema: SCHEMA_VERSION,
                command,
                parameters,
                results,
                status,
                timing: Timing { elapsed_ms, workers },
            };
            let mut s = serde_json::to_string_pretty(&report).expect("JSON values serialize");
            s.push('\n');
            s
        }
    };
    Outcome { code, stdout, stderr }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_ok(args: &[&str]) -> RunReport {
        let out = dispatch(std::iter::once("taxicab").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{args:?}: {}{}", out.stderr, out.stdout);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn taxicab_report() {
        let r = run_ok(&["identities", "taxicab", "--bound", "2000", "--reps", "2"]);
        assert_eq!(r.schema, 1);
        assert_eq!(r.command, "identities taxicab");
        let e = &r.results["entries"];
        assert_eq!(e.as_array().unwrap().len(), 1);
        assert_eq!(e[0]["n"], "1729");
        assert_eq!(e[0]["representations"], json!([["1", "12"], ["9", "10"]]));
    }

    #[test]
    fn reports_round_trip() {
        for args in [
            vec!["identities", "verify"],
            vec!["identities", "nearmiss", "--family", "infinity", "--count", "4"],
            vec!["ec", "count", "--p", "7", "--a", "-432"],
            vec!["ec", "map", "--d", "1729", "--x", "10", "--y", "9"],
            vec!["ff", "differentials"],
            vec!["ff", "rank"],
            vec!["surface", "analyze", "--no-confirm"],
            vec!["twists", "table", "--from", "0", "--to", "3"],
        ] {
            let r = run_ok(&args);
            let text = serde_json::to_string(&r).unwrap();
            let again: RunReport = serde_json::from_str(&text).unwrap();
            assert_eq!(again, r, "{args:?}");
            assert_eq!(r.status, Status::Ok);
        }
    }

    #[test]
    fn results_are_deterministic_across_worker_counts() {
        let a = run_ok(&["--workers", "1", "ff", "lfunction", "--p", "5"]);
        let b = run_ok(&["--workers", "3", "ff", "lfunction", "--p", "5"]);
        assert_eq!(a.results, b.results);
        assert_eq!(a.timing.workers, 1);
        assert_eq!(b.timing.workers, 3);
        let c = run_ok(&["ff", "lfunction", "--p", "5", "--direct"]);
        assert_eq!(a.results["coefficients"], c.results["coefficients"]);
    }

    #[test]
    fn factorization_string_parses_back() {
        let r = run_ok(&["ff", "lfunction", "--p", "5"]);
        let f = parse_nonzero_polynomial(r.results["factorization"].as_str().unwrap(), "u").unwrap();
        let coeffs: Vec<Value> = f.coeffs().iter().map(|c| Value::String(rat_string(c))).collect();
        assert_eq!(Value::Array(coeffs), r.results["coefficients"]);
    }

    #[test]
    fn usage_errors() {
        let out = dispatch(["taxicab", "bogus"]);
        assert_ne!(out.code, 0);
        assert!(out.stdout.is_empty() && !out.stderr.is_empty());
        let out = dispatch(["taxicab", "ec", "count", "--p", "seven", "--a", "1"]);
        assert_ne!(out.code, 0);
        let out = dispatch(["taxicab", "ff", "lfunction", "--p", "7"]);
        assert_eq!(out.code, 1);
        let r: RunReport = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(r.status, Status::Failed);
    }

    #[test]
    fn csv_and_jsonl_tables() {
        let out = dispatch(["taxicab", "twists", "table", "--from", "3", "--to", "3", "--format", "csv"]);
        assert_eq!(out.code, 0);
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines[0], "t,k,d,x1,y1,x2,y2,cert_prime");
        assert_eq!(lines[1], "3,46683,1729,46/3,-37/3,10,9,");
        let out = dispatch(["taxicab", "twists", "table", "--from", "0", "--to", "3", "--format", "jsonl"]);
        let recs: Vec<Value> = out.stdout.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(recs.len(), 4);
    }

    #[test]
    fn worker_resolution() {
        assert_eq!(resolve_workers(Some(8), Some("2")), 2);
        assert_eq!(resolve_workers(Some(1), Some("4")), 1);
        assert_eq!(resolve_workers(Some(3), Some("junk")), 3);
        assert_eq!(resolve_workers(Some(0), None), 1);
    }
}
