//! Command-line front end. `run` maps every outcome to an exit code and a report;
//! error paths produce no standard output.

mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use crate::certificate::{Certificate, Verdict};
use crate::error::{Error, Result};
use crate::exactpoly::json::{parse_rat_poly, parse_rational};
use crate::exactpoly::{clear_denominators, format_int_poly, zx, IntPoly};
use crate::factorengine::{stability_certificate, FactorEngine, FactorLabel, FactorProduct, FactorProductJson, FactorTerm};
use crate::modarith::DEFAULT_SEED;
use crate::numberfield::{irreducibility_certificate_seeded, is_eisenstein, FieldJson, IrreducibilityCertificate, NfElem, NumberField, RefutationWitness};
use crate::obstructions::{disc_iterate, ideal_power_audit, nonabelian_certificate, NonabelianCase};
use crate::pcforbits::{exact_type, format_cyc_poly, gleason, misiurewicz, orbit_values, CycPolyJson, ExactKind, DEFAULT_BUDGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

/// Orbit steps searched when classifying `c_0`.
const TYPE_BOUND: usize = 64;

#[derive(Parser, Debug)]
#[command(name = "pcfcert", version, about = "Exact factorization and certificates for post-critically finite x^d + c")]
struct Cli {
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Seed for randomized factorization modulo primes.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest iterate degree `d^k` any step may build.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Where `K = Q[c]/(g)` comes from; exactly one source.
#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct FieldSource {
    /// `K` cut out by the Gleason polynomial of period `n`.
    #[arg(long = "gleason-n")]
    gleason_n: Option<usize>,
    /// `K` cut out by the Misiurewicz norm form of type `m,n`.
    #[arg(long, value_parser = parse_pair)]
    misiurewicz: Option<(usize, usize)>,
    /// `K` cut out by a monic polynomial in `c`, e.g. `c^2 + 1`.
    #[arg(long)]
    g: Option<String>,
    /// `K` read from a JSON file `{"g": {"var": "c", "coeffs": [...]}}`.
    #[arg(long)]
    field: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gleason polynomial `G_{d,n}`.
    Gleason {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: usize,
    },
    /// Misiurewicz polynomial `M_{d,m,n}` over `Z[zeta_d]` and its norm form.
    Misiurewicz {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// The critical orbit `a_0, ..., a_len` in `K`.
    Orbit {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long, default_value_t = 8)]
        len: usize,
    },
    /// Exact type of `c_0`.
    ExactType {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long, default_value_t = TYPE_BOUND)]
        bound: usize,
    },
    /// Closed-form factorization of `f^k` at a periodic parameter.
    Factor {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long)]
        k: usize,
        /// Also check expansion, coprimality and the factor count.
        #[arg(long)]
        verify: bool,
    },
    /// Verify a factorization of `f^k`, read from `--product` or rebuilt from the closed form.
    VerifyFactor {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long)]
        k: usize,
        /// FactorProduct JSON as printed by `factor`.
        #[arg(long)]
        product: Option<PathBuf>,
    },
    /// Eisenstein stability certificate for `f^k - alpha`, `k <= kmax`.
    StabilityCert {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        kmax: usize,
    },
    /// Irreducibility certificate for the factor `F(k,i)`.
    FIrredCert {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
    },
    /// Discriminant of `f^k - x0` by recursion, checked against resultants.
    DiscCheck {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long)]
        k: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        x0: String,
    },
    /// Compare `<a_i> ^ A = <d>` with both printed exponent branches.
    IdealAudit {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long)]
        i: usize,
    },
    /// Non-abelian certificate for one of the periodic or preperiodic cases.
    NonabelianCert {
        #[arg(long)]
        d: u64,
        #[command(flatten)]
        source: FieldSource,
        #[arg(long, value_parser = parse_case)]
        case: NonabelianCase,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        alpha: String,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected m,n, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_case(s: &str) -> std::result::Result<NonabelianCase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Exit code, standard output and standard error of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::HypothesisUnmet(_) | Error::ShapeViolation(_) | Error::NotUnit(_) | Error::NotIntegral(_) => {
            EXIT_INCONCLUSIVE
        }
        Error::OracleMismatch(_) | Error::NotDivisible(_) => EXIT_REFUTED,
        Error::Unsupported(_)
        | Error::PrecisionExceeded(_)
        | Error::BudgetExceeded { .. }
        | Error::BoundExceeded(_) => EXIT_UNSUPPORTED,
        _ => EXIT_USAGE,
    }
}

pub fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::Verified => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
        Verdict::Unsupported => EXIT_UNSUPPORTED,
    }
}

/// Run one command line; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err(e) => Outcome { code: exit_code(&e), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

struct Ctx {
    seed: u64,
    budget: u128,
}

fn emit<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidInput(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn require_prime(d: u64) -> Result<()> {
    if crate::modarith::is_prime(d) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("d = {d} must be prime")))
    }
}

fn execute(cli: &Cli) -> Result<(i32, String)> {
    let ctx = Ctx { seed: cli.seed, budget: cli.budget };
    let text = |default: Format| cli.format.unwrap_or(default) == Format::Text;
    match &cli.command {
        Command::Gleason { d, n } => {
            require_prime(*d)?;
            let g = gleason(*d, *n, ctx.budget)?;
            let out = if text(Format::Text) {
                format!("{}\n", format_int_poly(&g, "c"))
            } else {
                emit(&json!({ "d": d, "n": n, "degree": g.degree(), "poly": render::int_poly_json(&g) }))?
            };
            Ok((EXIT_OK, out))
        }
        Command::Misiurewicz { d, m, n } => {
            require_prime(*d)?;
            let mis = misiurewicz(*d, *m, *n, ctx.budget)?;
            let eis = is_eisenstein(&mis.norm_form, *d);
            let out = if text(Format::Text) {
                format!(
                    "{}\nnorm form: {}\neisenstein at {d}: {eis}\n",
                    format_cyc_poly(&mis.ring, &mis.poly),
                    format_int_poly(&mis.norm_form, "c")
                )
            } else {
                emit(&json!({
                    "d": d, "m": m, "n": n,
                    "poly": CycPolyJson::from_poly(&mis.ring, &mis.poly),
                    "norm_form": render::int_poly_json(&mis.norm_form),
                    "eisenstein_at_d": eis,
                }))?
            };
            Ok((EXIT_OK, out))
        }
        Command::Orbit { d, source, len } => {
            let field = build_field(&ctx, *d, source)?;
            let orbit = orbit_values(&field, *d, *len);
            let out = if text(Format::Text) {
                orbit.iter().enumerate().map(|(i, a)| format!("a_{i} = {a}\n")).collect()
            } else {
                let values: Vec<_> = orbit.iter().map(|a| field.elem_to_json(a)).collect();
                emit(&json!({ "field": field.to_json(), "d": d, "orbit": values }))?
            };
            Ok((EXIT_OK, out))
        }
        Command::ExactType { d, source, bound } => {
            let field = build_field(&ctx, *d, source)?;
            let ty = exact_type(&field, *d, *bound)?;
            let out = if text(Format::Text) {
                format!("{}\n", ty.kind)
            } else {
                let orbit: Vec<_> = ty.orbit.iter().map(|a| field.elem_to_json(a)).collect();
                emit(&json!({ "field": field.to_json(), "d": d, "type": ty.kind, "orbit": orbit }))?
            };
            Ok((EXIT_OK, out))
        }
        Command::Factor { d, source, k, verify } => {
            let field = build_field(&ctx, *d, source)?;
            let mut engine = periodic_engine(&ctx, &field, *d)?;
            let product = engine.closed_form_factorization(*k)?;
            let cert = if *verify { Some(engine.verify_factorization(&product, *k)?) } else { None };
            let code = cert.as_ref().map_or(EXIT_OK, |c| verdict_code(c.verdict));
            let out = if text(Format::Json) {
                let mut s = render::factor_product_text(&field, &product);
                if let Some(c) = &cert {
                    s.push_str(&render::certificate_text(c));
                }
                s
            } else {
                let mut value = serde_json::to_value(product.to_json(&field)).map_err(|e| Error::InvalidInput(e.to_string()))?;
                if let Some(c) = &cert {
                    value["certificate"] = serde_json::to_value(c).map_err(|e| Error::InvalidInput(e.to_string()))?;
                }
                emit(&value)?
            };
            Ok((code, out))
        }
        Command::VerifyFactor { d, source, k, product } => {
            let field = build_field(&ctx, *d, source)?;
            let mut engine = periodic_engine(&ctx, &field, *d)?;
            let product = match product {
                Some(path) => read_product(&engine, path)?,
                None => engine.closed_form_factorization(*k)?,
            };
            let cert = engine.verify_factorization(&product, *k)?;
            certificate_output(&cert, text(Format::Json))
        }
        Command::StabilityCert { d, source, alpha, kmax } => {
            let field = build_field(&ctx, *d, source)?;
            let alpha = parse_alpha(&field, alpha)?;
            let cert = stability_certificate(&field, *d, &alpha, *kmax, ctx.budget)?;
            certificate_output(&cert, text(Format::Json))
        }
        Command::FIrredCert { d, source, k, i } => {
            let field = build_field(&ctx, *d, source)?;
            let mut engine = periodic_engine(&ctx, &field, *d)?;
            let cert = engine.factor_certificate(FactorLabel::F { k: *k, i: *i })?;
            certificate_output(&cert, text(Format::Json))
        }
        Command::DiscCheck { d, source, k, x0 } => {
            let field = build_field(&ctx, *d, source)?;
            let x0 = parse_alpha(&field, x0)?;
            let trace = disc_iterate(&field, *d, &x0, *k)?;
            let out = if text(Format::Json) {
                render::disc_text(&field, &trace)?
            } else {
                emit(&json!({ "field": field.to_json(), "d": d, "x0": field.elem_to_json(&x0), "trace": trace }))?
            };
            Ok((EXIT_OK, out))
        }
        Command::IdealAudit { d, source, i } => {
            let field = build_field(&ctx, *d, source)?;
            let ty = exact_type(&field, *d, TYPE_BOUND)?;
            let audit = ideal_power_audit(&field, *d, &ty, *i)?;
            let out = if text(Format::Json) {
                render::audit_text(&audit)
            } else {
                emit(&json!({ "field": field.to_json(), "d": d, "type": ty.kind, "audit": audit }))?
            };
            Ok((EXIT_OK, out))
        }
        Command::NonabelianCert { d, source, case, alpha } => {
            let field = build_field(&ctx, *d, source)?;
            let alpha = parse_alpha(&field, alpha)?;
            let cert = nonabelian_certificate(*case, &field, *d, &alpha, ctx.budget)?;
            certificate_output(&cert, text(Format::Json))
        }
    }
}

fn certificate_output(cert: &Certificate, text: bool) -> Result<(i32, String)> {
    let out = if text { render::certificate_text(cert) } else { emit(cert)? };
    Ok((verdict_code(cert.verdict), out))
}

fn parse_alpha(field: &NumberField, s: &str) -> Result<NfElem> {
    field.parse_elem(s)
}

fn periodic_engine<'f>(ctx: &Ctx, field: &'f NumberField, d: u64) -> Result<FactorEngine<'f>> {
    let ty = exact_type(field, d, TYPE_BOUND)?;
    match ty.kind {
        ExactKind::Periodic { n } if n >= 2 => FactorEngine::new(field, d, n, ctx.budget),
        k => Err(Error::HypothesisUnmet(format!("factorization needs a periodic parameter of period >= 2, got {k}"))),
    }
}

/// `x - a_j` names the orbit index `j`.
fn linear_label(engine: &FactorEngine<'_>, poly: &crate::numberfield::NfPoly) -> Result<FactorLabel> {
    let field = engine.field();
    let kx = field.poly_ring();
    (0..engine.n())
        .find(|&j| *poly == kx.sub_constant(&kx.x(), engine.orbit(j)))
        .map(|index| FactorLabel::Linear { index })
        .ok_or_else(|| Error::InvalidInput("linear factor is not x - a_j(c0)".into()))
}

fn read_product(engine: &FactorEngine<'_>, path: &PathBuf) -> Result<FactorProduct> {
    let field = engine.field();
    let raw = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let parsed: FactorProductJson = serde_json::from_str(&raw).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    let terms = parsed
        .factors
        .iter()
        .map(|f| {
            let poly = f.poly.to_poly(field)?;
            let label = match f.label.as_str() {
                "linear" => linear_label(engine, &poly)?,
                other => FactorLabel::parse(other)?,
            };
            Ok(FactorTerm { label, poly, exp: f.exp })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FactorProduct { terms })
}

/// Defining polynomial named by the field source, before any factor selection.
fn source_polynomial(ctx: &Ctx, d: u64, source: &FieldSource) -> Result<IntPoly> {
    if let Some(n) = source.gleason_n {
        return gleason(d, n, ctx.budget);
    }
    if let Some((m, n)) = source.misiurewicz {
        return Ok(misiurewicz(d, m, n, ctx.budget)?.norm_form);
    }
    if let Some(g) = &source.g {
        let (den, p) = clear_denominators(&parse_rat_poly(g, 'c')?);
        if !num_traits::One::is_one(&den) {
            return Err(Error::InvalidInput(format!("g = {g} must have integer coefficients")));
        }
        return Ok(p);
    }
    if let Some(path) = &source.field {
        let raw = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        let json: FieldJson = serde_json::from_str(&raw).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        return json.g.to_poly();
    }
    Err(Error::InvalidInput("no field source".into()))
}

/// `K` from the source; a reducible built-in polynomial is replaced by its first certified factor.
fn build_field(ctx: &Ctx, d: u64, source: &FieldSource) -> Result<NumberField> {
    require_prime(d)?;
    let mut g = source_polynomial(ctx, d, source)?;
    let builtin = source.gleason_n.is_some() || source.misiurewicz.is_some();
    loop {
        match irreducibility_certificate_seeded(&g, ctx.seed) {
            IrreducibilityCertificate::Refuted(why) if builtin => {
                g = match why {
                    RefutationWitness::Factor { factor } | RefutationWitness::RepeatedFactor { factor } => {
                        clear_denominators(&parse_rat_poly(&factor, 'c')?).1
                    }
                    RefutationWitness::RationalRoot { root } => {
                        let r = parse_rational(&root)?;
                        if !r.is_integer() {
                            return Err(Error::InvalidInput(format!("non-integral rational root {root}")));
                        }
                        zx().from_coeffs(vec![-r.to_integer(), BigInt::from(1)])
                    }
                };
            }
            _ => return NumberField::new_seeded(&g, ctx.seed),
        }
    }
}
