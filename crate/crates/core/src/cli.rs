//! Command-line front end. Every command prints one JSON value.
//!
//! Exit codes: 0 when a report passes, 1 when it records a violation,
//! 2 on malformed input.

use crate::arith::{hn_posint, hn_vecspace, jh_subtraction};
use crate::binom::{convolution_euler, is_positive_system, is_slope_polynomial, BinomPoly, HomTable};
use crate::bounds::{
    bogomolov, ch2_upper_bound, check_boundedness, delta_upper_bound, hodge_check, lan_inequality,
    mmin, pbar, pbar_crude, pbar_general, pbar_sup2, pushforward_bounds, rank_deg_slopes,
    restriction_bound, rr_growth_witness, validate_ambient, AmbientGeometry, ChernSurface,
    NumericalClass,
};
use crate::p1::{hilbert_p1, hn_p1, kronecker_dim, kronecker_slope, tilt_p1, SheafP1};
use crate::rational::{self, Rational};
use crate::tilt::{
    central_charge, check_slope_sequence, cone_euler, phase, slope_poly_q, tilted_coeffs, TiltParams,
};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};
use std::io::Read;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Exit code and the text destined for standard output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct InputError(String);

fn input<E: std::fmt::Display>(e: E) -> InputError {
    InputError(e.to_string())
}

type Res<T> = Result<T, InputError>;

#[derive(Parser, Debug)]
#[command(name = "deltastab", version, about = "Exact slope-stability calculations")]
struct Cli {
    /// Read the JSON input from FILE instead of standard input.
    #[arg(short = 'f', long = "file", global = true)]
    file: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Decompositions in the arithmetic categories.
    Hn {
        #[command(subcommand)]
        op: HnOp,
    },
    /// Binomial-basis polynomials and positivity checks.
    Poly {
        #[command(subcommand)]
        op: PolyOp,
    },
    /// Sheaves on the projective line.
    P1 {
        #[command(subcommand)]
        op: P1Op,
    },
    /// Bounds for sheaves on a polarized variety.
    Bound {
        #[command(subcommand)]
        op: Box<BoundOp>,
    },
    /// Tilted central charges on surfaces.
    Charge {
        #[command(subcommand)]
        op: ChargeOp,
    },
    /// Run built-in consistency sweeps.
    Selftest,
    /// Run a JSON array of `{"args": [...], "input": ...}` jobs.
    Batch,
}

#[derive(Subcommand, Debug)]
enum HnOp {
    /// Prime-power factors of N, by descending prime.
    Factor { n: String },
    /// The chain 1 -> 2 -> ... -> N under subtraction.
    Jh { n: u64 },
    /// Factors of the span of the lines with the given indices.
    Vec { indices: String },
}

#[derive(Subcommand, Debug)]
enum PolyOp {
    /// Fit samples P(0), P(1), ... in the binomial basis.
    Fit { values: Option<String> },
    /// Evaluate at a rational point, or at `i`.
    Eval {
        #[arg(long)]
        coeffs: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Check a list of coefficient tuples for positivity.
    CheckPositive { tuples: Option<String> },
    /// Check that every nonzero polynomial has positive leading coefficient.
    CheckSlope { polys: Option<String> },
    /// Compare both sides of the convolution Euler identity.
    Euler { spec: Option<String> },
}

#[derive(Subcommand, Debug)]
enum P1Op {
    Hn,
    Hilbert,
    Kronecker,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum PbarMode {
    Explicit,
    Crude,
    Sup2,
}

#[derive(Subcommand, Debug)]
enum BoundOp {
    /// Evaluate the boundedness polynomial.
    Pbar {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        muhat: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        mu: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        max: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        min: Option<Rational>,
        #[arg(long, value_enum, default_value = "explicit")]
        mode: PbarMode,
    },
    /// Check the boundedness inequality for the document class.
    Check {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        max: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        min: Option<Rational>,
    },
    /// Least admissible restriction degree.
    Restrict,
    /// Least m0 for the tilt slope m1/m2.
    Mmin {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        m1: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        m2: BigInt,
    },
    /// Weighted spread inequality for a descending slope list.
    Lan {
        #[arg(long)]
        r: Option<String>,
        #[arg(long)]
        mu: Option<String>,
    },
    /// Discriminant and instability certificate.
    Bogomolov,
    /// Upper bounds for the discriminant and ch2.
    Delta {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        mu: Option<Rational>,
    },
    /// Hodge index inequality, with an optional growth witness.
    Hodge {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        c1_sq: BigInt,
        #[arg(long = "int", allow_hyphen_values = true, value_parser = parse_z)]
        int_c1_c: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        c_sq: BigInt,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        c1_k: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_z)]
        chi: Option<BigInt>,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        bound: Option<Rational>,
    },
    /// Canonical-degree check on the ambient.
    Validate,
    /// Rank, degree and both slopes of the document class.
    Slopes,
    /// Slope bounds under a finite pushforward.
    Pushforward {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_q)]
        mu: Rational,
    },
}

#[derive(Subcommand, Debug)]
enum ChargeOp {
    Z,
    Phase,
    Coeffs,
    CheckSeq,
}

fn parse_q(s: &str) -> Result<Rational, String> {
    rational::parse(s).map_err(|e| e.to_string())
}

fn parse_z(s: &str) -> Result<BigInt, String> {
    rational::parse_int(s).map_err(|e| e.to_string())
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct Options {
    #[serde(default, with = "crate::rational::q_opt")]
    muhat: Option<Rational>,
    #[serde(default, with = "crate::rational::q_opt")]
    mu: Option<Rational>,
    #[serde(default, with = "crate::rational::q_opt")]
    muhat_max: Option<Rational>,
    #[serde(default, with = "crate::rational::q_opt")]
    muhat_min: Option<Rational>,
    #[serde(default)]
    samples: Option<Vec<NumericalClass>>,
    #[serde(default, with = "crate::rational::q_vec_opt")]
    weights: Option<Vec<Rational>>,
    #[serde(default, with = "crate::rational::q_vec_opt")]
    slopes: Option<Vec<Rational>>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
struct Document {
    ambient: Option<AmbientGeometry>,
    class: Option<NumericalClass>,
    chern: Option<ChernSurface>,
    tilt: Option<TiltParams>,
    p1: Option<SheafP1>,
    #[serde(default)]
    options: Options,
}

impl Document {
    fn ambient(&self) -> Res<&AmbientGeometry> {
        self.ambient.as_ref().ok_or_else(|| InputError("document lacks `ambient`".into()))
    }

    fn class(&self) -> Res<&NumericalClass> {
        self.class.as_ref().ok_or_else(|| InputError("document lacks `class`".into()))
    }

    fn chern(&self) -> Res<&ChernSurface> {
        self.chern.as_ref().ok_or_else(|| InputError("document lacks `chern`".into()))
    }

    fn tilt(&self) -> Res<&TiltParams> {
        self.tilt.as_ref().ok_or_else(|| InputError("document lacks `tilt`".into()))
    }
}

struct Ctx<'a> {
    file: Option<PathBuf>,
    stdin: &'a mut dyn Read,
}

impl Ctx<'_> {
    fn raw(&mut self) -> Res<String> {
        match &self.file {
            Some(p) => std::fs::read_to_string(p).map_err(|e| InputError(format!("{}: {e}", p.display()))),
            None => {
                let mut s = String::new();
                self.stdin.read_to_string(&mut s).map_err(input)?;
                Ok(s)
            }
        }
    }

    /// JSON from an inline argument, else from the file or standard input.
    fn json<T: for<'de> Deserialize<'de>>(&mut self, inline: Option<&str>) -> Res<T> {
        let text = match inline {
            Some(s) => s.to_string(),
            None => self.raw()?,
        };
        serde_json::from_str(&text).map_err(input)
    }

    fn document(&mut self) -> Res<Document> {
        self.json(None)
    }
}

fn q(v: &Rational) -> Value {
    Value::String(rational::format(v))
}

fn znum(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => Value::String(v.to_string()),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn verdict(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

fn run_hn(op: &HnOp) -> Res<(i32, Value)> {
    match op {
        HnOp::Factor { n } => {
            let n: BigUint = n.trim().parse().map_err(|_| InputError(format!("`{n}` is not a positive integer")))?;
            let r = hn_posint(&n).map_err(input)?;
            Ok((EXIT_OK, to_value(&r)))
        }
        HnOp::Jh { n } => {
            let c = jh_subtraction(*n).map_err(input)?;
            let mut out = json!({ "length": c.length() });
            // the chain is listed only while it stays printable
            if c.top <= 10_000 {
                out["chain"] = json!(c.terms().collect::<Vec<_>>());
            }
            Ok((EXIT_OK, out))
        }
        HnOp::Vec { indices } => {
            let idx = indices
                .split(',')
                .filter(|s| !s.trim().is_empty())
                .map(|s| s.trim().parse::<u64>().map_err(|_| InputError(format!("bad index `{s}`"))))
                .collect::<Res<Vec<_>>>()?;
            let f = hn_vecspace(&idx).map_err(input)?;
            Ok((EXIT_OK, json!({ "factors": f })))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EulerInput {
    #[serde(rename = "t")]
    t_dims: Vec<u64>,
    #[serde(default)]
    t_offset: Option<i64>,
    table: HomTable,
    n: usize,
}

fn run_poly(op: &PolyOp, ctx: &mut Ctx) -> Res<(i32, Value)> {
    match op {
        PolyOp::Fit { values } => {
            let v: Qs = ctx.json(values.as_deref())?;
            let p = BinomPoly::from_samples(&v.0).map_err(input)?;
            Ok((EXIT_OK, json!({ "coeffs": to_value(&p)["coeffs"], "monomial": v_q(&p.to_monomial()) })))
        }
        PolyOp::Eval { coeffs, at } => {
            let c: Qs = ctx.json(coeffs.as_deref())?;
            let p = BinomPoly::new(c.0);
            if at.trim() == "i" {
                let (re, im) = p.evaluate_gauss();
                Ok((EXIT_OK, json!({ "re": q(&re), "im": q(&im) })))
            } else {
                let t = rational::parse(at).map_err(input)?;
                Ok((EXIT_OK, json!({ "value": q(&p.evaluate(&t)) })))
            }
        }
        PolyOp::CheckPositive { tuples } => {
            let t: Vec<Qs> = ctx.json(tuples.as_deref())?;
            let t: Vec<Vec<Rational>> = t.into_iter().map(|x| x.0).collect();
            let r = is_positive_system(&t).map_err(input)?;
            Ok((verdict(r.positive), to_value(&r)))
        }
        PolyOp::CheckSlope { polys } => {
            let p: Vec<Qs> = ctx.json(polys.as_deref())?;
            let p: Vec<BinomPoly> = p.into_iter().map(|x| BinomPoly::new(x.0)).collect();
            let r = is_slope_polynomial(&p);
            Ok((verdict(r.ok), to_value(&r)))
        }
        PolyOp::Euler { spec } => {
            let e: EulerInput = ctx.json(spec.as_deref())?;
            let off = e.t_offset.unwrap_or(-(e.n as i64));
            let r = convolution_euler(&e.t_dims, off, &e.table, e.n).map_err(input)?;
            Ok((verdict(r.equal), to_value(&r)))
        }
    }
}

fn v_q(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

/// A JSON array of rationals.
struct Qs(Vec<Rational>);

impl<'de> Deserialize<'de> for Qs {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        crate::rational::q_vec::deserialize(d).map(Qs)
    }
}

fn read_sheaf(ctx: &mut Ctx) -> Res<SheafP1> {
    let v: Value = ctx.json(None)?;
    if v.get("p1").is_some() || v.get("options").is_some() {
        let doc: Document = serde_json::from_value(v).map_err(input)?;
        doc.p1.ok_or_else(|| InputError("document lacks `p1`".into()))
    } else {
        serde_json::from_value(v).map_err(input)
    }
}

fn run_p1(op: &P1Op, ctx: &mut Ctx) -> Res<(i32, Value)> {
    let e = read_sheaf(ctx)?;
    match op {
        P1Op::Hn => {
            let seq = hn_p1(&e).map_err(input)?;
            Ok((EXIT_OK, json!({ "factors": to_value(&seq.factors) })))
        }
        P1Op::Hilbert => {
            let p = hilbert_p1(&e);
            Ok((
                EXIT_OK,
                json!({ "rank": e.rank(), "chi": e.euler(), "coeffs": to_value(&p)["coeffs"] }),
            ))
        }
        P1Op::Kronecker => {
            let t = tilt_p1(&e);
            let (a, b) = kronecker_dim(&t);
            Ok((
                EXIT_OK,
                json!({ "tilted": to_value(&t), "slope": kronecker_slope(&t), "dim": [a, b] }),
            ))
        }
    }
}

fn run_bound(op: &BoundOp, ctx: &mut Ctx) -> Res<(i32, Value)> {
    if let BoundOp::Hodge {
        c1_sq,
        int_c1_c,
        c_sq,
        c1_k,
        chi,
        bound,
    } = op
    {
        let ok = hodge_check(c1_sq, int_c1_c, c_sq).map_err(input)?;
        let mut out = json!({ "holds": ok });
        if let (Some(k), Some(chi), Some(bound)) = (c1_k, chi, bound) {
            out["witness"] = match rr_growth_witness(c1_sq, k, chi, bound) {
                Some(m) => znum(&m),
                None => Value::Null,
            };
        }
        return Ok((verdict(ok), out));
    }
    if let BoundOp::Lan { r, mu } = op {
        let (weights, slopes) = match (r, mu) {
            (Some(r), Some(mu)) => {
                let r: Qs = serde_json::from_str(r).map_err(input)?;
                let mu: Qs = serde_json::from_str(mu).map_err(input)?;
                (r.0, mu.0)
            }
            _ => {
                let doc = ctx.document()?;
                match (doc.options.weights, doc.options.slopes) {
                    (Some(r), Some(mu)) => (r, mu),
                    _ => return Err(InputError("need --r and --mu, or options.weights and options.slopes".into())),
                }
            }
        };
        let rep = lan_inequality(&weights, &slopes).map_err(input)?;
        return Ok((verdict(rep.holds), to_value(&rep)));
    }
    let doc = ctx.document()?;
    match op {
        BoundOp::Pbar {
            muhat,
            mu,
            max,
            min,
            mode,
        } => {
            let amb = doc.ambient()?;
            let o = &doc.options;
            let muhat = match (muhat.clone().or(o.muhat.clone()), mu.clone().or(o.mu.clone())) {
                (Some(m), _) => m,
                (None, Some(mu)) => amb.muhat_from_mu(&mu),
                (None, None) => return Err(InputError("need --muhat or --mu".into())),
            };
            let value = match mode {
                PbarMode::Explicit => {
                    let max = max.clone().or(o.muhat_max.clone());
                    let min = min.clone().or(o.muhat_min.clone());
                    match (max, min) {
                        (None, None) => pbar(&muhat, amb),
                        (max, min) => pbar_general(
                            &muhat,
                            max.as_ref().unwrap_or(&muhat),
                            min.as_ref().unwrap_or(&muhat),
                            amb,
                        )
                        .map_err(input)?,
                    }
                }
                PbarMode::Crude => pbar_crude(&muhat, &amb.d),
                PbarMode::Sup2 => pbar_sup2(&amb.mu_from_muhat(&muhat), amb).map_err(input)?,
            };
            Ok((EXIT_OK, json!({ "muhat": q(&muhat), "pbar": q(&value) })))
        }
        BoundOp::Check { max, min } => {
            let o = &doc.options;
            let max = max.clone().or(o.muhat_max.clone());
            let min = min.clone().or(o.muhat_min.clone());
            let r = check_boundedness(doc.class()?, doc.ambient()?, max.as_ref(), min.as_ref()).map_err(input)?;
            Ok((verdict(r.status.is_pass()), to_value(&r)))
        }
        BoundOp::Restrict => {
            let l = restriction_bound(doc.class()?, doc.ambient()?).map_err(input)?;
            Ok((EXIT_OK, json!({ "l": znum(&l) })))
        }
        BoundOp::Mmin { m1, m2 } => {
            let m = mmin(m1, m2, doc.ambient()?).map_err(input)?;
            Ok((EXIT_OK, json!({ "mmin": znum(&m) })))
        }
        BoundOp::Bogomolov => {
            let r = bogomolov(doc.chern()?);
            Ok((verdict(r.certificate.is_none()), to_value(&r)))
        }
        BoundOp::Delta { mu } => {
            let ch = doc.chern()?;
            let amb = doc.ambient()?;
            let mu = mu.clone().or(doc.options.mu.clone()).unwrap_or_else(|| ch.mu());
            let delta = delta_upper_bound(ch, &mu, amb).map_err(input)?;
            let ch2 = ch2_upper_bound(ch, &mu, amb).map_err(input)?;
            Ok((EXIT_OK, json!({ "mu": q(&mu), "delta_bound": q(&delta), "ch2_bound": q(&ch2) })))
        }
        BoundOp::Validate => {
            let r = validate_ambient(doc.ambient()?);
            Ok((verdict(r.status.is_pass()), to_value(&r)))
        }
        BoundOp::Slopes => {
            let s = rank_deg_slopes(doc.class()?, doc.ambient()?).map_err(input)?;
            Ok((EXIT_OK, to_value(&s)))
        }
        BoundOp::Pushforward { mu } => {
            let r = pushforward_bounds(mu, doc.ambient()?).map_err(input)?;
            Ok((EXIT_OK, to_value(&r)))
        }
        BoundOp::Hodge { .. } | BoundOp::Lan { .. } => unreachable!("handled above"),
    }
}

fn run_charge(op: &ChargeOp, ctx: &mut Ctx) -> Res<(i32, Value)> {
    let doc = ctx.document()?;
    let amb = doc.ambient()?;
    let tp = doc.tilt()?;
    match op {
        ChargeOp::CheckSeq => {
            let samples = match &doc.options.samples {
                Some(s) => s.clone(),
                None => vec![doc.class()?.clone()],
            };
            let r = check_slope_sequence(tp, amb, &samples).map_err(input)?;
            Ok((verdict(r.status.is_pass()), to_value(&r)))
        }
        ChargeOp::Coeffs => {
            let cls = doc.class()?;
            let c = tilted_coeffs(cls, tp, amb).map_err(input)?;
            let p = slope_poly_q(cls, tp, amb).map_err(input)?;
            let cone = cone_euler(cls, tp, amb).map_err(input)?;
            let mut out = to_value(&c);
            out["poly"] = to_value(&p)["coeffs"].clone();
            out["cone"] = to_value(&cone)["coeffs"].clone();
            if p.is_zero() {
                out["flag"] = json!("outside exhaustive system");
            }
            Ok((EXIT_OK, out))
        }
        ChargeOp::Z => {
            let z = central_charge(doc.class()?, tp, amb).map_err(input)?;
            Ok((EXIT_OK, to_value(&z)))
        }
        ChargeOp::Phase => {
            let z = central_charge(doc.class()?, tp, amb).map_err(input)?;
            let ph = phase(&z).map_err(input)?;
            Ok((EXIT_OK, json!({ "z": to_value(&z), "phase": to_value(&ph) })))
        }
    }
}

/// Sweeps that exercise the boundedness polynomial against closed forms.
pub fn selftest() -> (bool, Value) {
    let amb = AmbientGeometry::p2();
    let mut checks = 0u64;
    let mut failures = Vec::new();
    for p in -40i64..=40 {
        for d in 1i64..=12 {
            let m = rational::frac(p, d);
            checks += 1;
            let closed = &m * (&m - rational::int(1)) / rational::int(2);
            if pbar(&m, &amb) != closed {
                failures.push(format!("pbar({})", rational::format(&m)));
            }
        }
    }
    let mm = [(0, 1, 1), (2, 1, 2), (0, 2, 1)];
    for (m1, m2, want) in mm {
        checks += 1;
        if mmin(&BigInt::from(m1), &BigInt::from(m2), &amb).ok() != Some(BigInt::from(want)) {
            failures.push(format!("mmin({m1},{m2})"));
        }
    }
    let ok = failures.is_empty();
    (
        ok,
        json!({ "status": if ok { "pass" } else { "violation" }, "checks": checks, "failures": failures }),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Job {
    args: Vec<String>,
    #[serde(default)]
    input: Option<Value>,
}

fn run_batch(ctx: &mut Ctx) -> Res<(i32, Value)> {
    let jobs: Vec<Job> = ctx.json(None)?;
    let results: Vec<Outcome> = jobs
        .par_iter()
        .map(|job| {
            let text = job.input.as_ref().map(Value::to_string).unwrap_or_default();
            let args = std::iter::once("deltastab".to_string()).chain(job.args.iter().cloned());
            run(args, &mut text.as_bytes())
        })
        .collect();
    let code = results.iter().map(|o| o.code).max().unwrap_or(EXIT_OK);
    let out = results
        .iter()
        .map(|o| {
            let output = serde_json::from_str::<Value>(&o.stdout).unwrap_or(Value::String(o.stdout.clone()));
            json!({ "code": o.code, "output": output })
        })
        .collect();
    Ok((code, Value::Array(out)))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            return Outcome {
                code,
                stdout: e.render().to_string(),
            };
        }
    };
    let mut ctx = Ctx {
        file: cli.file.clone(),
        stdin,
    };
    let res = match &cli.cmd {
        Cmd::Hn { op } => run_hn(op),
        Cmd::Poly { op } => run_poly(op, &mut ctx),
        Cmd::P1 { op } => run_p1(op, &mut ctx),
        Cmd::Bound { op } => run_bound(op, &mut ctx),
        Cmd::Charge { op } => run_charge(op, &mut ctx),
        Cmd::Selftest => {
            let (ok, v) = selftest();
            Ok((verdict(ok), v))
        }
        Cmd::Batch => run_batch(&mut ctx),
    };
    match res {
        Ok((code, v)) => Outcome {
            code,
            stdout: v.to_string(),
        },
        Err(e) => Outcome {
            code: EXIT_INPUT,
            stdout: json!({ "error": e.0 }).to_string(),
        },
    }
}
