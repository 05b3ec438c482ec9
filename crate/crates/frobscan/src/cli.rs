//! Argument parsing and subcommand dispatch.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage,
//! input or computation errors. Reports go to stdout; errors go to stdout
//! as JSON under `--format json` and to stderr otherwise.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobscan_core::bounds::{
    self, check_value1, curve_value1, delta_ell, gamma, larger_sieve_bound, q_bound,
    surface_value1, surface_value1_assembled, threefold_value1, threefold_value1_assembled,
    SieveParams, Value1Input,
};
use frobscan_core::constructions::{build_cq, genus2_first, genus2_second};
use frobscan_core::counting::{CountMethod, DEFAULT_WORK_CAP};
use frobscan_core::density::{
    classify_congruence, classify_nondivisibility, congruence_predicate, nondivisibility_predicate,
    DensityScan, ScanError,
};
use frobscan_core::family::{family_primes, FamilySpec};
use frobscan_core::primes::{abel_ratio, least_prime_in_ap, prime_power_log_sum};
use frobscan_core::{CountConfig, DensityReport, UniPoly, Variety};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::files::{parse_surface, parse_variety};
use crate::fixtures::{read_input, Fixtures};
use crate::par;
use crate::report::{render_error, Format, Report};
use crate::suite;

#[derive(Debug, Parser)]
#[command(
    name = "frobscan",
    version,
    about = "Point counts of integer varieties over prime fields"
)]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Worker threads; defaults to the hardware parallelism.
    #[arg(long, env = "FROBSCAN_THREADS", global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,
    /// Maximum evaluated tuples per (variety, prime) count.
    #[arg(long, default_value_t = DEFAULT_WORK_CAP, global = true)]
    pub work_cap: u64,
    /// Seed for randomized searches.
    #[arg(long, default_value_t = 2024, global = true)]
    pub seed: u64,
    /// Directory whose files shadow the built-in fixtures.
    #[arg(long, global = true)]
    pub fixture_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count points of a variety at one prime or at every prime up to a bound.
    Count(CountArgs),
    /// Density of good primes satisfying a congruence or non-divisibility predicate.
    Density(DensityArgs),
    /// Least prime in an arithmetic progression, or least prime avoiding given counts.
    #[command(subcommand)]
    LeastPrime(LeastPrimeCmd),
    /// The one-parameter family y^2 = f(t)(t - u).
    FamilyScan(FamilyArgs),
    /// Closed-form sieve constants and bounds.
    #[command(subcommand)]
    SieveBound(SieveCmd),
    /// Build the explicit curves and check them.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Check a divisibility claim prime by prime.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Check every built-in reference value.
    VerifyPaper(VerifyPaperArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Method {
    Auto,
    BruteForce,
    CharSum,
}

impl From<Method> for CountMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Auto => CountMethod::Auto,
            Method::BruteForce => CountMethod::BruteForce,
            Method::CharSum => CountMethod::CharSum,
        }
    }
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("primes").required(true))]
pub struct CountArgs {
    /// Variety file, or `builtin:NAME`.
    #[arg(long)]
    pub variety: PathBuf,
    #[arg(long, group = "primes")]
    pub p: Option<u64>,
    #[arg(long, group = "primes")]
    pub primes_up_to: Option<u64>,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    pub method: Method,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("predicate").required(true))]
pub struct DensityArgs {
    #[arg(long)]
    pub variety: PathBuf,
    /// Predicate `N(p) = r mod m`; needs `--modulus`.
    #[arg(
        long,
        group = "predicate",
        requires = "modulus",
        allow_hyphen_values = true
    )]
    pub residue: Option<i64>,
    #[arg(long)]
    pub modulus: Option<u64>,
    /// Predicate `p does not divide N(p) - alpha` for every listed alpha.
    #[arg(
        long,
        group = "predicate",
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub not_dividing: Option<Vec<BigInt>>,
    #[arg(long)]
    pub x_max: u64,
    /// A JSON density report to extend instead of starting from scratch.
    #[arg(long)]
    pub resume: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum LeastPrimeCmd {
    /// Least prime `p = a mod q`.
    Ap {
        #[arg(long)]
        q: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Least good `p <= bound` with `p` dividing no `N(p) - alpha`.
    Variety {
        #[arg(long)]
        variety: PathBuf,
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            default_value = "0"
        )]
        alpha: Vec<BigInt>,
        #[arg(long)]
        bound: u64,
    },
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("excluded").required(true))]
pub struct FamilyArgs {
    /// Separable `f` of even degree, in the variable `t`.
    #[arg(long)]
    pub f: String,
    /// Point-count constants; the excluded traces are `-alpha`.
    #[arg(long, group = "excluded", value_parser = int_list, allow_hyphen_values = true)]
    pub alpha: Option<IntList>,
    /// The integers `a = 1 + alpha`; the excluded traces are `1 - a`.
    #[arg(long, group = "excluded", value_parser = int_list, allow_hyphen_values = true)]
    pub a: Option<IntList>,
    #[command(subcommand)]
    pub action: FamilyCmd,
}

/// Comma-separated integers; the empty string is the empty list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

fn int_list(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("`{t}` is not an integer")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// The exceptional residues `D_p` at one prime or all good primes up to a bound.
    Dp {
        #[arg(
            long,
            conflicts_with = "primes_up_to",
            required_unless_present = "primes_up_to"
        )]
        p: Option<u64>,
        #[arg(long)]
        primes_up_to: Option<u64>,
    },
    /// `S(T, Q)`: integers `|u| <= T` exceptional at every good prime below `Q`.
    Exceptional {
        #[arg(long)]
        t: u64,
        #[arg(long)]
        q: u64,
    },
    /// `S(T, Q)` at the sieve level `Q = Q_g(T)`, against the sieve bounds.
    Sieve {
        #[arg(long)]
        t: u64,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        /// Largest prime bound actually scanned.
        #[arg(long, default_value_t = 20_000)]
        q_cap: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SieveCmd {
    /// `4g^2 + 2g + 4`.
    Gamma {
        #[arg(long)]
        g: u32,
    },
    /// Sieve level `Q_g(T)` for genus `g`, `n` excluded values and constant `K`.
    QBound {
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        n: u32,
        #[arg(long, default_value_t = 1.0)]
        k: f64,
        #[arg(long)]
        t: f64,
    },
    /// `(ell - n)/ell * (ell/(ell + 1))^(2g^2 + g + 1)`, exactly.
    Delta {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        g: u32,
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Monic p-symplectic polynomials over `F_ell`; all `p` in `1..ell` unless `--p` is given.
    PSymplectic {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        excluded: Vec<i64>,
    },
    /// Larger-sieve bound with `nu(p) = p` or a constant `nu`.
    LargerSieve {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        t: f64,
        /// `p`, or a positive constant.
        #[arg(long, default_value = "p")]
        nu: String,
    },
    /// `max(|M1 - b_-|, |M1 - b_+|) >= b_+ - b_-`.
    Value1 {
        #[arg(long, allow_hyphen_values = true)]
        m1: i64,
        #[arg(long, allow_hyphen_values = true)]
        b_minus: i64,
        #[arg(long, allow_hyphen_values = true)]
        b_plus: i64,
    },
    /// Value-1 criterion for curves: `M1 = chi - a` in the band `[0, 2]`.
    CurveValue1 {
        #[arg(long, allow_hyphen_values = true)]
        chi: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Value-1 criterion for surfaces, closed form and assembled.
    SurfaceValue1 {
        #[arg(long)]
        b1_y: i64,
        #[arg(long)]
        b2_y: i64,
        #[arg(long)]
        b2_c: i64,
        #[arg(long, allow_hyphen_values = true)]
        chi_c: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// Value-1 criterion for threefolds, closed form and assembled.
    ThreefoldValue1 {
        #[arg(long)]
        b2_y: i64,
        #[arg(long)]
        b0_s: i64,
        #[arg(long)]
        b1_s: i64,
        #[arg(long)]
        b2_s: i64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
    /// `sum_{p <= L} p^alpha log(p)^beta` and its ratio to the asymptotic.
    Abel {
        #[arg(long)]
        l: u64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructCmd {
    /// `y^2 = x^q + 1`, checked at every good prime below the least `p = 1 mod q`.
    Cq {
        #[arg(long)]
        q: u64,
    },
    /// A quintic anomalous at every odd prime below `N`, lifted by CRT.
    Genus2 {
        #[arg(long)]
        primes_below: u64,
        /// Candidate quintics tried per prime.
        #[arg(long, default_value_t = 10_000_000)]
        cap: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// `p | N_S(p)` at every odd `p <= pmax`.
    Nonex {
        #[arg(long, default_value = "builtin:nonex.srf")]
        surface: PathBuf,
        #[arg(long)]
        pmax: u64,
    },
    /// `N(p) = p` for `y^2 = x^q + 1` at every good `p` below the least `p = 1 mod q`.
    Cq {
        #[arg(long)]
        q: u64,
    },
    /// `N_1(p) = p or N_2(p) = p` at every good odd `p < bound`.
    Genus2Pair {
        #[arg(long, default_value_t = 401)]
        bound: u64,
        #[arg(long, default_value_t = 401)]
        pmax: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyPaperArgs {
    /// Groups to leave out: x1, c17, c457, genus2, gamma, least-prime.
    #[arg(long, value_delimiter = ',')]
    pub skip: Vec<String>,
}

/// A failure that ends the run with exit status 2.
#[derive(Debug)]
pub struct Failure {
    pub code: &'static str,
    pub message: String,
    pub partial: Option<Box<DensityReport>>,
}

fn fail(code: &'static str, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
        partial: None,
    }
}

fn compute<E: ToString>(e: E) -> Failure {
    fail("compute", e)
}

fn scan_failure(e: ScanError) -> Failure {
    match e {
        ScanError::Truncated { p, source, partial } => Failure {
            code: "truncated",
            message: format!("scan stopped at p = {p}: {source}"),
            partial: Some(partial),
        },
        e => compute(e),
    }
}

struct Ctx {
    cfg: CountConfig,
    seed: u64,
    fixtures: Fixtures,
}

impl Ctx {
    fn variety(&self, path: &Path) -> Result<Variety, Failure> {
        let text = read_input(path, &self.fixtures)
            .map_err(|e| fail("io", format!("{}: {e}", path.display())))?;
        parse_variety(&text).map_err(|e| fail("parse", format!("{}: {e}", path.display())))
    }
}

fn records_table(recs: &[frobscan_core::PointCountRecord]) -> Vec<Vec<Value>> {
    recs.iter()
        .map(|r| {
            vec![
                json!(r.p),
                json!(r.n_affine),
                json!(r.n_mod_p),
                json!(r.trace),
                json!(r.good_reduction),
            ]
        })
        .collect()
}

fn count(ctx: &Ctx, a: &CountArgs) -> Result<Report, Failure> {
    let v = ctx.variety(&a.variety)?;
    let primes = match (a.p, a.primes_up_to) {
        (Some(p), _) => vec![p],
        (None, Some(x)) => par::primes_in(2, x).map_err(compute)?,
        (None, None) => unreachable!("clap requires one of --p and --primes-up-to"),
    };
    let recs = par::count_many(&v, &primes, a.method.into(), &ctx.cfg).map_err(compute)?;
    let body = json!({
        "variety": a.variety.display().to_string(),
        "variables": v.variables(),
        "equations": v.equations().iter().map(|e| e.to_string()).collect::<Vec<_>>(),
        "bad_primes": v.bad_primes().describe(),
        "records": recs,
    });
    let table = records_table(&recs);
    Ok(Report::new(&body).with_table(
        &["p", "n_affine", "n_mod_p", "trace", "good_reduction"],
        table,
    ))
}

fn density(ctx: &Ctx, a: &DensityArgs) -> Result<Report, Failure> {
    let v = ctx.variety(&a.variety)?;
    let cfg = &ctx.cfg;
    let predicate = match (&a.residue, &a.not_dividing) {
        (Some(r), _) => {
            let m = a.modulus.expect("clap requires --modulus with --residue");
            if m < 2 {
                return Err(scan_failure(ScanError::BadModulus(m)));
            }
            congruence_predicate(&v, *r, m)
        }
        (None, Some(alphas)) => nondivisibility_predicate(&v, alphas),
        (None, None) => unreachable!("clap requires a predicate"),
    };
    let scan = match &a.resume {
        None => DensityScan::new(predicate),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| fail("io", format!("{}: {e}", path.display())))?;
            let prior: DensityReport = serde_json::from_str(&text)
                .map_err(|e| fail("parse", format!("{}: {e}", path.display())))?;
            if prior.predicate != predicate {
                return Err(fail(
                    "usage",
                    format!("resume file scans `{}`, not `{predicate}`", prior.predicate),
                ));
            }
            if prior.x_max > a.x_max {
                return Err(fail(
                    "usage",
                    format!(
                        "resume file already covers x = {} > --x-max {}",
                        prior.x_max, a.x_max
                    ),
                ));
            }
            DensityScan::resume(prior)
        }
    };
    let report = match (&a.residue, &a.not_dividing) {
        (Some(r), _) => {
            let m = a.modulus.expect("checked above");
            par::extend_scan(scan, a.x_max, |p| classify_congruence(&v, *r, m, p, cfg))
        }
        (None, Some(alphas)) => par::extend_scan(scan, a.x_max, |p| {
            classify_nondivisibility(&v, alphas, p, cfg)
        }),
        (None, None) => unreachable!("clap requires a predicate"),
    }
    .map_err(scan_failure)?;
    let rows = report
        .checkpoints
        .iter()
        .map(|(x, d)| vec![json!(x), json!(d)])
        .collect();
    Ok(Report::new(&report).with_table(&["x", "density"], rows))
}

fn least_prime(ctx: &Ctx, c: &LeastPrimeCmd) -> Result<Report, Failure> {
    match c {
        LeastPrimeCmd::Ap { q, a } => {
            let p = least_prime_in_ap(*q, *a).map_err(compute)?;
            Ok(Report::new(&json!({ "q": q, "a": a, "p": p })))
        }
        LeastPrimeCmd::Variety {
            variety,
            alpha,
            bound,
        } => {
            let v = ctx.variety(variety)?;
            let predicate = nondivisibility_predicate(&v, alpha);
            let p = par::least_hit(*bound, &predicate, |p| {
                classify_nondivisibility(&v, alpha, p, &ctx.cfg)
            })
            .map_err(scan_failure)?;
            Ok(Report::new(&json!({
                "predicate": predicate,
                "alpha": alpha.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                "bound": bound,
                "p": p,
            })))
        }
    }
}

fn family(ctx: &Ctx, a: &FamilyArgs) -> Result<Report, Failure> {
    let f = UniPoly::parse(&a.f, "t").map_err(|e| fail("parse", format!("--f: {e}")))?;
    let spec = match (&a.alpha, &a.a) {
        (Some(alpha), _) => FamilySpec::from_alphas(f, &alpha.0),
        (None, Some(list)) => FamilySpec::new(f, list.0.clone()),
        (None, None) => unreachable!("clap requires --alpha or --a"),
    }
    .map_err(|e| fail("usage", e))?;
    let head = json!({
        "f": spec.f().to_string(),
        "g": spec.genus(),
        "alpha": spec.alphas(),
        "a": spec.a_list(),
    });
    let merge = |extra: Value| -> Value {
        let mut h = head.clone();
        if let (Value::Object(h), Value::Object(e)) = (&mut h, extra) {
            h.extend(e);
        }
        h
    };
    match &a.action {
        FamilyCmd::Dp { p, primes_up_to } => {
            let primes = match (p, primes_up_to) {
                (Some(p), _) => vec![*p],
                (None, Some(x)) => family_primes(&spec, *x).map_err(compute)?,
                (None, None) => unreachable!("clap requires --p or --primes-up-to"),
            };
            let recs = par::dp_records(&spec, &primes, &ctx.cfg).map_err(compute)?;
            let rows = recs
                .iter()
                .map(|r| {
                    vec![
                        json!(r.p),
                        json!(r.size),
                        json!(r.skipped_bad_u),
                        json!(r.members),
                    ]
                })
                .collect();
            Ok(Report::new(&merge(json!({ "records": recs })))
                .with_table(&["p", "size", "skipped_bad_u", "members"], rows))
        }
        FamilyCmd::Exceptional { t, q } => {
            let e = par::exceptional_count(&spec, *t, *q, &ctx.cfg).map_err(compute)?;
            Ok(Report::new(&merge(json!({
                "T": t,
                "Q": q,
                "S": e.count,
                "witnesses": e.witnesses,
            }))))
        }
        FamilyCmd::Sieve { t, k, q_cap } => {
            let r = par::sieve_experiment(&spec, *t, *k, *q_cap, &ctx.cfg).map_err(compute)?;
            Ok(Report::new(&r))
        }
    }
}

fn sieve_bound(ctx: &Ctx, c: &SieveCmd) -> Result<Report, Failure> {
    let r = match c {
        SieveCmd::Gamma { g } => json!({ "g": g, "gamma": gamma(*g) }),
        SieveCmd::QBound { g, n, k, t } => {
            let params = SieveParams::new(*g, *n, *k, *t).map_err(compute)?;
            json!({ "g": g, "n": n, "K": k, "T": t, "gamma": params.gamma(), "Q": q_bound(&params).map_err(compute)? })
        }
        SieveCmd::Delta { ell, g, n } => {
            let d = delta_ell(*ell, *g, *n).map_err(compute)?;
            let approx = num_traits::ToPrimitive::to_f64(&d).unwrap_or(f64::NAN);
            json!({ "ell": ell, "g": g, "n": n, "delta": d.to_string(), "value": approx })
        }
        SieveCmd::PSymplectic {
            ell,
            g,
            p,
            excluded,
        } => {
            let counts = match p {
                Some(p) => vec![(
                    *p,
                    bounds::count_p_symplectic(*ell, *g, *p, excluded, ctx.cfg.work_cap)
                        .map_err(compute)?,
                )],
                None => {
                    par::p_symplectic_all(*ell, *g, excluded, ctx.cfg.work_cap).map_err(compute)?
                }
            };
            json!({
                "ell": ell,
                "g": g,
                "excluded": excluded,
                "ell_pow_g": ell.checked_pow(*g),
                "counts": counts,
            })
        }
        SieveCmd::LargerSieve { q, t, nu } => {
            let primes = par::primes_in(2, *q).map_err(compute)?;
            let map: BTreeMap<u64, f64> = if nu == "p" {
                primes.iter().map(|&p| (p, p as f64)).collect()
            } else {
                let c: f64 = nu.parse().map_err(|_| {
                    fail("usage", format!("--nu must be `p` or a number, got `{nu}`"))
                })?;
                primes.iter().map(|&p| (p, c)).collect()
            };
            json!({ "Q": q, "T": t, "nu": nu, "bound": larger_sieve_bound(*q, *t, &map).map_err(compute)? })
        }
        SieveCmd::Value1 {
            m1,
            b_minus,
            b_plus,
        } => {
            let v = Value1Input::new(*m1, *b_minus, *b_plus).map_err(compute)?;
            json!({ "m1": m1, "b_minus": b_minus, "b_plus": b_plus, "holds": check_value1(v) })
        }
        SieveCmd::CurveValue1 { chi, a } => {
            json!({ "chi": chi, "a": a, "holds": curve_value1(*chi, *a) })
        }
        SieveCmd::SurfaceValue1 {
            b1_y,
            b2_y,
            b2_c,
            chi_c,
            a,
        } => json!({
            "b1_y": b1_y, "b2_y": b2_y, "b2_c": b2_c, "chi_c": chi_c, "a": a,
            "holds": surface_value1(*b1_y, *b2_y, *b2_c, *chi_c, *a),
            "assembled": surface_value1_assembled(*b1_y, *b2_y, *b2_c, *chi_c, *a),
        }),
        SieveCmd::ThreefoldValue1 {
            b2_y,
            b0_s,
            b1_s,
            b2_s,
            a,
        } => json!({
            "b2_y": b2_y, "b0_s": b0_s, "b1_s": b1_s, "b2_s": b2_s, "a": a,
            "holds": threefold_value1(*b2_y, *b0_s, *b1_s, *b2_s, *a),
            "assembled": threefold_value1_assembled(*b2_y, *b0_s, *b1_s, *b2_s, *a),
        }),
        SieveCmd::Abel { l, alpha, beta } => json!({
            "L": l, "alpha": alpha, "beta": beta,
            "sum": prime_power_log_sum(*l, *alpha, *beta).map_err(compute)?,
            "ratio": abel_ratio(*l, *alpha, *beta).map_err(compute)?,
        }),
    };
    Ok(Report::new(&r))
}

fn construct(ctx: &Ctx, c: &ConstructCmd) -> Result<Report, Failure> {
    match c {
        ConstructCmd::Cq { q } => {
            let v = build_cq(*q).map_err(|e| fail("usage", e))?;
            let r = par::verify_cq(*q, &ctx.cfg).map_err(compute)?;
            let body = json!({
                "equation": v.equations()[0].to_string(),
                "bad_primes": v.bad_primes().describe(),
                "report": r,
            });
            Ok(Report::new(&body).ok(r.holds))
        }
        ConstructCmd::Genus2 { primes_below, cap } => {
            let r =
                par::construct_genus2(*primes_below, ctx.seed, *cap, &ctx.cfg).map_err(compute)?;
            let rows = r
                .counts
                .iter()
                .map(|(p, n)| vec![json!(p), json!(n)])
                .collect();
            let holds = r.holds;
            Ok(Report::new(&r)
                .with_table(&["p", "n_affine"], rows)
                .ok(holds))
        }
    }
}

fn verify(ctx: &Ctx, c: &VerifyCmd) -> Result<Report, Failure> {
    match c {
        VerifyCmd::Nonex { surface, pmax } => {
            let text = read_input(surface, &ctx.fixtures)
                .map_err(|e| fail("io", format!("{}: {e}", surface.display())))?;
            let s = parse_surface(&text)
                .map_err(|e| fail("parse", format!("{}: {e}", surface.display())))?;
            let r = par::check_nonex(&s, *pmax, &ctx.cfg).map_err(compute)?;
            let rows = r
                .counts
                .iter()
                .map(|(p, n)| vec![json!(p), json!(n), json!(n % p == 0)])
                .collect();
            let holds = r.holds;
            Ok(Report::new(&r)
                .with_table(&["p", "n", "divisible"], rows)
                .ok(holds))
        }
        VerifyCmd::Cq { q } => {
            let r = par::verify_cq(*q, &ctx.cfg).map_err(compute)?;
            let holds = r.holds;
            Ok(Report::new(&r).ok(holds))
        }
        VerifyCmd::Genus2Pair { bound, pmax } => {
            let r = par::verify_genus2_pair(
                &[genus2_first(), genus2_second()],
                *bound,
                *pmax,
                &ctx.cfg,
            )
            .map_err(compute)?;
            let rows = r
                .primes
                .iter()
                .map(|x| vec![json!(x.p), json!(x.n1), json!(x.n2), json!(x.passes())])
                .collect();
            let holds = r.holds;
            Ok(Report::new(&r)
                .with_table(&["p", "n1", "n2", "passes"], rows)
                .ok(holds))
        }
    }
}

fn verify_paper(ctx: &Ctx, a: &VerifyPaperArgs) -> Result<Report, Failure> {
    let r = suite::run(&ctx.fixtures, &a.skip, ctx.cfg).map_err(|e| fail("usage", e))?;
    let rows = r
        .items
        .iter()
        .map(|i| {
            vec![
                json!(i.name),
                i.expected.clone(),
                i.got.clone(),
                json!(i.pass),
            ]
        })
        .collect();
    let ok = r.all_pass;
    Ok(Report::new(&r)
        .with_table(&["item", "expected", "got", "pass"], rows)
        .ok(ok))
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    let ctx = Ctx {
        cfg: CountConfig {
            work_cap: cli.work_cap,
            ..CountConfig::default()
        },
        seed: cli.seed,
        fixtures: Fixtures::new(cli.fixture_dir.clone()),
    };
    match &cli.command {
        Command::Count(a) => count(&ctx, a),
        Command::Density(a) => density(&ctx, a),
        Command::LeastPrime(c) => least_prime(&ctx, c),
        Command::FamilyScan(a) => family(&ctx, a),
        Command::SieveBound(c) => sieve_bound(&ctx, c),
        Command::Construct(c) => construct(&ctx, c),
        Command::Verify(c) => verify(&ctx, c),
        Command::VerifyPaper(a) => verify_paper(&ctx, a),
    }
}

/// Whether raw arguments ask for JSON, for errors raised before parsing completes.
fn wants_json(args: &[OsString]) -> bool {
    args.iter()
        .zip(args.iter().skip(1))
        .any(|(a, b)| a == "--format" && b == "json")
        || args.iter().any(|a| a == "--format=json")
}

/// Runs one invocation, writing the report to `out` and errors to `err`
/// (or to `out` in JSON mode). Returns the exit status.
pub fn run(args: Vec<OsString>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if wants_json(&args) {
                let msg = e
                    .kind()
                    .as_str()
                    .map(String::from)
                    .unwrap_or_else(|| e.to_string());
                let _ = out.write_all(
                    render_error(
                        "usage",
                        &msg,
                        Some(("detail", json!(e.to_string()))),
                        Format::Json,
                    )
                    .as_bytes(),
                );
            } else {
                let _ = write!(err, "{e}");
            }
            return 2;
        }
    };
    let threads = cli.threads.map(|t| t as usize).unwrap_or_else(|| {
        std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1)
    });
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = err.write_all(render_error("io", &e.to_string(), None, cli.format).as_bytes());
            return 2;
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(report) => {
            let _ = out.write_all(report.render(cli.format).as_bytes());
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let partial = f.partial.map(|p| {
                (
                    "partial",
                    serde_json::to_value(p).expect("reports serialize"),
                )
            });
            let text = render_error(f.code, &f.message, partial, cli.format);
            let sink: &mut dyn Write = if cli.format == Format::Json { out } else { err };
            let _ = sink.write_all(text.as_bytes());
            2
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(
        std::env::args_os().collect(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let args = std::iter::once("frobscan")
            .chain(args.iter().copied())
            .map(OsString::from)
            .collect();
        let code = run(args, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn json_of(args: &[&str]) -> Value {
        let mut a = vec!["--format", "json"];
        a.extend_from_slice(args);
        let (code, out, err) = call(&a);
        assert_eq!(code, 0, "{out}{err}");
        serde_json::from_str(&out).unwrap()
    }

    #[test]
    fn count_builtin_threefold() {
        let v = json_of(&["count", "--variety", "builtin:x1.var", "--p", "7"]);
        assert_eq!(v["records"][0]["n_affine"], 584);
    }

    #[test]
    fn sieve_bound_subcommands() {
        assert_eq!(json_of(&["sieve-bound", "gamma", "--g", "2"])["gamma"], 24);
        assert_eq!(
            json_of(&["sieve-bound", "delta", "--ell", "2", "--g", "1"])["delta"],
            "8/81"
        );
        let v = json_of(&["sieve-bound", "p-symplectic", "--ell", "5", "--g", "2"]);
        assert!(v["counts"].as_array().unwrap().iter().all(|c| c[1] == 25));
        let v = json_of(&["sieve-bound", "curve-value1", "--chi", "2", "--a", "1"]);
        assert_eq!(v["holds"], false);
        let v = json_of(&[
            "sieve-bound",
            "value1",
            "--m1",
            "-3",
            "--b-minus",
            "0",
            "--b-plus",
            "2",
        ]);
        assert_eq!(v["holds"], true);
        let v = json_of(&[
            "sieve-bound",
            "larger-sieve",
            "--q",
            "10",
            "--t",
            "1",
            "--nu",
            "1",
        ]);
        assert!((v["bound"].as_f64().unwrap() - 1.149).abs() < 1e-3);
    }

    #[test]
    fn family_subcommands() {
        let v = json_of(&[
            "family-scan",
            "--f",
            "t^4 + 1",
            "--alpha",
            "0",
            "exceptional",
            "--t",
            "50",
            "--q",
            "3",
        ]);
        assert_eq!(v["S"], 101);
        assert_eq!(v["a"][0], 1);
        let v = json_of(&[
            "family-scan",
            "--f",
            "t^4 + 1",
            "--a",
            "",
            "dp",
            "--p",
            "13",
        ]);
        assert_eq!(v["records"][0]["size"], 0);
    }

    #[test]
    fn errors_and_exit_codes() {
        let (code, out, _) = call(&[
            "--format",
            "json",
            "count",
            "--variety",
            "builtin:nope",
            "--p",
            "5",
        ]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["code"], "io");
        let (code, out, _) = call(&["--format", "json", "count", "--bogus"]);
        assert_eq!(code, 2);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["code"], "usage");
        let (code, _, err) = call(&[
            "count",
            "--variety",
            "builtin:x1.var",
            "--p",
            "7",
            "--work-cap",
            "10",
        ]);
        assert_eq!(code, 2);
        assert!(err.starts_with("error[compute]"), "{err}");
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("verify-paper"));
    }
}
