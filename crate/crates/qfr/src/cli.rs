//! Command-line front end: every solver behind a subcommand with stable,
//! machine-readable output.
//!
//! Exit codes: 0 for ok, 1 for a mathematically determined negative answer
//! (a representation FAILURE), 2 for invalid input.  All big integers are
//! emitted as decimal strings under --json.

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Map, Value};

use crate::arith;
use crate::contfrac;
use crate::elliptic;
use crate::error::{Error, Result};
use crate::forms::{self, Discriminant, QuadraticForm};
use crate::genus;
use crate::hilbert::{self, ClassLabel, SplitTest};
use crate::ideals;
use crate::represent::{self, FactoredInteger, GOutcome};

pub const DEFAULT_SEED: u64 = 0x5eed_0000_0042;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failure,
    Error,
}

/// Outcome of one CLI invocation.
#[derive(Debug, Clone)]
pub struct CommandResult {
    pub status: Status,
    pub payload: Value,
}

impl CommandResult {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failure => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qfr", version, about = "binary quadratic form toolkit", disable_help_subcommand = true)]
struct Cli {
    /// Emit one JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the randomized square-root backend.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Gauss-reduce a form, reporting the transformation.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
    },
    /// Compose two forms of equal discriminant.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        form1: String,
        #[arg(long, allow_hyphen_values = true)]
        form2: String,
    },
    /// Enumerate the reduced class representatives.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
    },
    /// Genus partition, or the signature of one integer.
    Genus {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, allow_hyphen_values = true)]
        int: Option<String>,
    },
    /// Continued fraction of (p + sqrt(n))/q, or the S-sequence of a
    /// positive discriminant.
    Cf {
        #[arg(long, value_name = "P,Q,N", allow_hyphen_values = true)]
        surd: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        disc: Option<String>,
    },
    /// Fundamental unit of a positive discriminant.
    Unit {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
    },
    /// Count points of y^2 = x^3 + Ax + B over F_p.
    CurveCount {
        #[arg(long, value_name = "A,B@p", allow_hyphen_values = true)]
        curve: String,
    },
    /// Square root of the discriminant modulo p.
    Sqrtdisc {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, allow_hyphen_values = true)]
        prime: String,
        /// auto, tonelli, rand, or curve (trace route through the class
        /// polynomial).
        #[arg(long, default_value = "auto")]
        method: String,
    },
    /// Embedded table record, optionally with a splitting test at a prime.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, allow_hyphen_values = true)]
        prime: Option<String>,
        /// Recompute the class polynomial instead of looking it up.
        #[arg(long)]
        compute: bool,
    },
    /// Which class represents the prime.
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, allow_hyphen_values = true)]
        prime: String,
    },
    /// Solve form = m.
    Represent {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, allow_hyphen_values = true)]
        prime: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        m: Option<String>,
        /// Factorization of m as "p:e,p:e" (required with --m).
        #[arg(long, allow_hyphen_values = true)]
        factors: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        /// gauss, norm, or alt.
        #[arg(long, default_value = "gauss")]
        method: String,
        /// Power for --method norm.
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Diophantine system of a class.
    System {
        #[arg(long, allow_hyphen_values = true)]
        disc: String,
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
    },
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad integer literal {s:?}")))
}

fn parse_form(s: &str) -> Result<QuadraticForm> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Error::Parse(format!("form literal must be a,b,c, got {s:?}")));
    }
    QuadraticForm::new(parse_bigint(parts[0])?, parse_bigint(parts[1])?, parse_bigint(parts[2])?)
}

fn parse_disc(s: &str) -> Result<Discriminant> {
    Discriminant::new(parse_bigint(s)?)
}

fn parse_curve(s: &str) -> Result<elliptic::CurveFp> {
    let (ab, p) = s
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("curve literal must be A,B@p, got {s:?}")))?;
    let (a, b) = ab
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("curve literal must be A,B@p, got {s:?}")))?;
    elliptic::CurveFp::new(parse_bigint(p)?, parse_bigint(a)?, parse_bigint(b)?)
}

fn parse_factors(s: &str) -> Result<Vec<(BigInt, u32)>> {
    s.split(',')
        .map(|chunk| {
            let (p, e) = match chunk.split_once(':') {
                Some((p, e)) => (p, e),
                None => (chunk, "1"),
            };
            let exp: u32 = e
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {chunk:?}")))?;
            Ok((parse_bigint(p)?, exp))
        })
        .collect()
}

fn big_str(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn form_json(f: &QuadraticForm) -> Value {
    json!([f.a().to_string(), f.b().to_string(), f.c().to_string()])
}

fn ints_json(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(big_str).collect())
}

fn label_json(label: &ClassLabel) -> Value {
    match label {
        ClassLabel::Principal => json!({ "label": "principal" }),
        ClassLabel::SelfReciprocalNonPrincipal => json!({ "label": "self-reciprocal" }),
        ClassLabel::ReciprocalPair(sig) => {
            json!({ "label": "reciprocal-pair", "genus": genus::signature_string(sig) })
        }
        ClassLabel::GenusOnly(sig) => {
            json!({ "label": "genus-only", "genus": genus::signature_string(sig) })
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(Status, Value)> {
    let seed = cli.seed;
    match &cli.cmd {
        Cmd::Reduce { form } => {
            let f = parse_form(form)?;
            let (g, m) = f.reduce()?;
            Ok((
                Status::Ok,
                json!({
                    "form": form_json(&g),
                    "map": [[m.p.to_string(), m.q.to_string()],
                            [m.r.to_string(), m.s.to_string()]],
                }),
            ))
        }
        Cmd::Compose { form1, form2 } => {
            let f1 = parse_form(form1)?;
            let f2 = parse_form(form2)?;
            let comp = forms::compose(&f1, &f2)?;
            let (reduced, _) = comp.form.reduce()?;
            let matrix: Vec<Vec<String>> = comp
                .matrix
                .iter()
                .map(|row| row.iter().map(|c| c.to_string()).collect())
                .collect();
            Ok((
                Status::Ok,
                json!({
                    "form": form_json(&comp.form),
                    "reduced": form_json(&reduced),
                    "matrix": matrix,
                }),
            ))
        }
        Cmd::Classgroup { disc } => {
            let d = parse_disc(disc)?;
            let classes = forms::enumerate_classes(&d);
            Ok((
                Status::Ok,
                json!({
                    "h": classes.len(),
                    "forms": classes.iter().map(form_json).collect::<Vec<_>>(),
                }),
            ))
        }
        Cmd::Genus { disc, int } => {
            let d = parse_disc(disc)?;
            match int {
                Some(m) => {
                    let sig = genus::signature_of_int(&parse_bigint(m)?, &d)?;
                    Ok((Status::Ok, json!({ "signature": genus::signature_string(&sig) })))
                }
                None => {
                    let groups = genus::genus_partition(&d)?;
                    let out: Vec<Value> = groups
                        .iter()
                        .map(|(sig, fs)| {
                            json!({
                                "signature": genus::signature_string(sig),
                                "forms": fs.iter().map(form_json).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    Ok((Status::Ok, json!({ "genera": out })))
                }
            }
        }
        Cmd::Cf { surd, disc } => match (surd, disc) {
            (Some(s), None) => {
                let parts: Vec<&str> = s.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse("surd literal must be P,Q,N".into()));
                }
                let e = contfrac::cf_sqrt_quadratic(
                    &parse_bigint(parts[0])?,
                    &parse_bigint(parts[1])?,
                    &parse_bigint(parts[2])?,
                )?;
                Ok((
                    Status::Ok,
                    json!({ "head": ints_json(&e.head), "period": ints_json(&e.period) }),
                ))
            }
            (None, Some(ds)) => {
                let d = parse_disc(ds)?;
                let s = contfrac::s_sequence(&d)?;
                Ok((
                    Status::Ok,
                    json!({
                        "s_values": ints_json(&s.values),
                        "period": s.period,
                        "unit_norm": s.unit_norm,
                    }),
                ))
            }
            _ => Err(Error::Parse("cf needs exactly one of --surd or --disc".into())),
        },
        Cmd::Unit { disc } => {
            let d = parse_disc(disc)?;
            let (u, v, norm) = contfrac::fundamental_unit(&d)?;
            Ok((
                Status::Ok,
                json!({ "u": u.to_string(), "v": v.to_string(), "norm": norm }),
            ))
        }
        Cmd::CurveCount { curve } => {
            let c = parse_curve(curve)?;
            let t = elliptic::count_points(&c)?;
            Ok((
                Status::Ok,
                json!({
                    "p": c.p().to_string(),
                    "points": t.n.to_string(),
                    "trace": t.a_q.to_string(),
                }),
            ))
        }
        Cmd::Sqrtdisc { disc, prime, method } => {
            let d = parse_disc(disc)?;
            let p = parse_bigint(prime)?;
            let delta_mod = d.delta().clone();
            let root = match method.as_str() {
                "tonelli" => arith::sqrt_mod_prime(&delta_mod, &p)?,
                "rand" => arith::sqrt_mod_prime_rand(&delta_mod, &p, seed)?,
                "curve" => curve_route(&d, &p, seed)?,
                "auto" => {
                    if d.delta().is_negative() {
                        match curve_route(&d, &p, seed) {
                            Ok(r) => r,
                            Err(_) => arith::sqrt_mod_prime(&delta_mod, &p)?,
                        }
                    } else if p.clone() % BigInt::from(4) == BigInt::from(1) {
                        elliptic::sqrt_pos_disc(&d, &p)?
                    } else {
                        arith::sqrt_mod_prime(&delta_mod, &p)?
                    }
                }
                other => return Err(Error::Parse(format!("unknown method {other:?}"))),
            };
            Ok((Status::Ok, json!({ "root": root.to_string() })))
        }
        Cmd::Hilbert { disc, prime, compute } => {
            let d = parse_disc(disc)?;
            let poly = if *compute {
                hilbert::compute_class_poly(&d, 0)?
            } else {
                hilbert::class_poly_for(&d)?
            };
            let mut payload = Map::new();
            payload.insert("delta".into(), big_str(d.delta()));
            payload.insert("coefficients".into(), ints_json(poly.coeffs()));
            if let Ok(rec) = hilbert::lookup_table(&d) {
                payload.insert("h".into(), json!(rec.h));
                payload.insert(
                    "forms".into(),
                    rec.forms.iter().map(form_json).collect::<Vec<_>>().into(),
                );
                payload.insert(
                    "ideals".into(),
                    rec.ideals.iter().map(|i| json!(i.to_string())).collect::<Vec<_>>().into(),
                );
                if let Some(pi) = &rec.pi_a {
                    payload.insert("pi".into(), json!([pi.u.to_string(), pi.v.to_string()]));
                }
            }
            if let Some(ps) = prime {
                let p = parse_bigint(ps)?;
                match hilbert::hilbert_split_test(&poly, &p)? {
                    SplitTest::Pattern { fully_splits, degrees } => {
                        payload.insert("prime".into(), big_str(&p));
                        payload.insert("fully_splits".into(), json!(fully_splits));
                        payload.insert("pattern".into(), json!(degrees));
                    }
                    SplitTest::Ramified => {
                        payload.insert("prime".into(), big_str(&p));
                        payload.insert("ramified".into(), json!(true));
                    }
                }
            }
            Ok((Status::Ok, Value::Object(payload)))
        }
        Cmd::Classify { disc, prime } => {
            let d = parse_disc(disc)?;
            let p = parse_bigint(prime)?;
            let label = hilbert::classify_prime(&p, &d)?;
            Ok((Status::Ok, label_json(&label)))
        }
        Cmd::Represent { disc, prime, m, factors, form, method, power } => {
            let d = parse_disc(disc)?;
            match method.as_str() {
                "norm" => {
                    let p = parse_bigint(prime.as_deref().ok_or_else(|| {
                        Error::Parse("--method norm needs --prime".into())
                    })?)?;
                    let (u, v) = represent::represent_norm_power(&p, *power, &d)?;
                    Ok((
                        Status::Ok,
                        json!({ "u": u.to_string(), "v": v.to_string(), "power": power }),
                    ))
                }
                "alt" => {
                    let p = parse_bigint(prime.as_deref().ok_or_else(|| {
                        Error::Parse("--method alt needs --prime".into())
                    })?)?;
                    let target = match form {
                        Some(fs) => parse_form(fs)?,
                        None => represent::represent_prime(&p, &d)?.form,
                    };
                    let rep = represent::represent_alternative(&p, &d, &target)?;
                    Ok((
                        Status::Ok,
                        json!({
                            "form": form_json(&rep.form),
                            "x": rep.x.to_string(),
                            "y": rep.y.to_string(),
                            "value": rep.value.to_string(),
                            "method": "alt",
                        }),
                    ))
                }
                "gauss" => {
                    let (target, fm) = match (prime, m) {
                        (Some(ps), None) => {
                            let p = parse_bigint(ps)?;
                            let fi = FactoredInteger::new(p.clone(), vec![(p.clone(), 1)])?;
                            let target = match form {
                                Some(fs) => parse_form(fs)?,
                                None => represent::represent_prime(&p, &d)?.form,
                            };
                            (target, fi)
                        }
                        (None, Some(ms)) => {
                            let mv = parse_bigint(ms)?;
                            let fs = factors.as_deref().ok_or_else(|| {
                                Error::Parse("--m needs --factors p:e,...".into())
                            })?;
                            let fi = FactoredInteger::new(mv, parse_factors(fs)?)?;
                            let target = parse_form(form.as_deref().ok_or_else(|| {
                                Error::Parse("--m needs --form".into())
                            })?)?;
                            (target, fi)
                        }
                        _ => {
                            return Err(Error::Parse(
                                "represent needs exactly one of --prime or --m".into(),
                            ))
                        }
                    };
                    if target.delta() != *d.delta() {
                        return Err(Error::Mismatch("form discriminant differs from --disc".into()));
                    }
                    match represent::algorithm_g(&target, &fm)? {
                        GOutcome::Found(rep) => Ok((
                            Status::Ok,
                            json!({
                                "form": form_json(&rep.form),
                                "x": rep.x.to_string(),
                                "y": rep.y.to_string(),
                                "value": rep.value.to_string(),
                                "method": "gauss",
                            }),
                        )),
                        GOutcome::Failure => Ok((
                            Status::Failure,
                            json!({ "failure": "no class represents the target" }),
                        )),
                    }
                }
                other => Err(Error::Parse(format!("unknown method {other:?}"))),
            }
        }
        Cmd::System { disc, form } => {
            let d = parse_disc(disc)?;
            let target = match form {
                Some(fs) => parse_form(fs)?,
                None => {
                    let rec = hilbert::lookup_table(&d)?;
                    let sys = rec
                        .system
                        .as_ref()
                        .ok_or_else(|| Error::NotInTable(d.delta().to_string()))?;
                    // Rebuild straight from the tabulated data.
                    let (a1, a2) = represent::build_system_raw(
                        &d,
                        &sys.a,
                        &sys.beta,
                        sys.ell,
                        rec.pi_a.as_ref().ok_or(Error::NotPrincipal)?,
                    )?;
                    return Ok((
                        Status::Ok,
                        json!({
                            "ell": sys.ell,
                            "a": sys.a.to_string(),
                            "beta": sys.beta.to_string(),
                            "u": a1.to_string(),
                            "v": a2.to_string(),
                            "u_coeffs": ints_json(&a1.coeffs),
                            "v_coeffs": ints_json(&a2.coeffs),
                        }),
                    ));
                }
            };
            let (reduced, _) = target.reduce()?;
            let ideal = ideals::ideal_from_form(&reduced)?;
            let h = forms::enumerate_classes(&d).len() as u32;
            let mut found = None;
            for ell in 1..=h {
                if h % ell != 0 {
                    continue;
                }
                if let Ok(gen) = ideals::ideal_power_principal_gen(&ideal, ell) {
                    found = Some((ell, gen));
                    break;
                }
            }
            let (ell, gen) = found.ok_or(Error::NotPrincipal)?;
            let sys = represent::build_system(&ideal, ell, &gen.pi)?;
            Ok((
                Status::Ok,
                json!({
                    "ell": ell,
                    "a": sys.source_a.to_string(),
                    "beta": sys.source_beta.to_string(),
                    "pi": [gen.pi.u.to_string(), gen.pi.v.to_string()],
                    "u": sys.a1.to_string(),
                    "v": sys.a2.to_string(),
                    "u_coeffs": ints_json(&sys.a1.coeffs),
                    "v_coeffs": ints_json(&sys.a2.coeffs),
                }),
            ))
        }
    }
}

fn curve_route(d: &Discriminant, p: &BigInt, seed: u64) -> Result<BigInt> {
    if !d.delta().is_negative() {
        return Err(Error::InvalidArgument("curve route needs delta < 0".into()));
    }
    let h = hilbert::class_poly_for(d)?;
    let roots = arith::roots_mod_p(&h, p, seed)?;
    if let Some(j) = roots.first() {
        return elliptic::sqrt_disc_via_curve(d, p, j);
    }
    // No root: the prime above p is not principal.  Try the degree-2 branch.
    match arith::extract_factor_deg(&h, p, 2, seed)? {
        Some(factor) => elliptic::sqrt_disc_via_curve_deg2(d, p, &factor),
        None => Err(Error::CurveInconsistency(
            "class polynomial has no factor of degree 1 or 2 mod p".into(),
        )),
    }
}

/// Flatten the payload into "key: value" lines for the default text output.
fn render_text(payload: &Value, out: &mut String) {
    match payload {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Array(_) | Value::Object(_) => {
                        out.push_str(&format!("{k}: {}", compact(v)));
                    }
                    _ => out.push_str(&format!("{k}: {}", plain(v))),
                }
                out.push('\n');
            }
        }
        other => {
            out.push_str(&compact(other));
            out.push('\n');
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn compact(v: &Value) -> String {
    v.to_string()
}

/// Run one invocation; returns the rendered output and the process exit
/// code.  Errors render on the same channel with status "error".
pub fn run(argv: &[String]) -> (String, i32) {
    let mut full = Vec::with_capacity(argv.len() + 1);
    full.push("qfr".to_string());
    full.extend(argv.iter().cloned());
    let cli = match Cli::try_parse_from(&full) {
        Ok(cli) => cli,
        Err(e) => {
            // clap already formats usage errors (and handles --help).
            let code = if e.use_stderr() { 2 } else { 0 };
            return (e.to_string(), code);
        }
    };
    let (result, rendered) = match dispatch(&cli) {
        Ok((status, payload)) => {
            let result = CommandResult { status, payload };
            let rendered = if cli.json {
                let mut doc = Map::new();
                doc.insert(
                    "status".into(),
                    json!(match result.status {
                        Status::Ok => "ok",
                        Status::Failure => "failure",
                        Status::Error => "error",
                    }),
                );
                doc.insert("result".into(), result.payload.clone());
                format!("{}\n", Value::Object(doc))
            } else {
                let mut text = String::new();
                render_text(&result.payload, &mut text);
                text
            };
            (result, rendered)
        }
        Err(err) => {
            let result = CommandResult {
                status: Status::Error,
                payload: json!({ "error": err.to_string() }),
            };
            let rendered = if cli.json {
                format!("{}\n", json!({ "status": "error", "error": err.to_string() }))
            } else {
                format!("error: {err}\n")
            };
            (result, rendered)
        }
    };
    (rendered, result.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn run_args(args: &[&str]) -> (String, i32) {
        run(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    #[test]
    fn reduce_command() {
        let (out, code) = run_args(&["reduce", "--form", "3,10,9", "--json"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["status"], "ok");
        assert_eq!(doc["result"]["form"], json!(["1", "0", "2"]));
    }

    #[test]
    fn classify_command() {
        let (out, code) = run_args(&["classify", "--disc", "328", "--prime", "73", "--json"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["label"], "principal");
    }

    #[test]
    fn represent_alt_command() {
        let (out, code) = run_args(&[
            "represent", "--disc", "328", "--prime", "8081", "--method", "alt", "--form",
            "2,0,-41", "--json",
        ]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["form"], json!(["2", "0", "-41"]));
        assert_eq!(doc["result"]["value"], "8081");
        let x: i64 = doc["result"]["x"].as_str().unwrap().parse().unwrap();
        let y: i64 = doc["result"]["y"].as_str().unwrap().parse().unwrap();
        assert_eq!((x.abs(), y.abs()), (65, 3));
    }

    #[test]
    fn represent_failure_exit_code() {
        let (out, code) = run_args(&[
            "represent", "--disc", "-4", "--m", "21", "--factors", "3,7", "--form", "1,0,1",
            "--json",
        ]);
        assert_eq!(code, 1, "{out}");
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["status"], "failure");
    }

    #[test]
    fn error_exit_code() {
        let (_, code) = run_args(&["reduce", "--form", "2,4,6"]);
        assert_eq!(code, 2);
        let (_, code) = run_args(&["nonsense"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn deterministic_output() {
        let a = run_args(&["sqrtdisc", "--disc", "-20", "--prime", "29", "--method", "rand", "--json"]);
        let b = run_args(&["sqrtdisc", "--disc", "-20", "--prime", "29", "--method", "rand", "--json"]);
        assert_eq!(a, b);
        let c = run_args(&["classgroup", "--disc", "-23", "--json"]);
        let d = run_args(&["classgroup", "--disc", "-23", "--json"]);
        assert_eq!(c, d);
    }

    #[test]
    fn cf_and_unit_commands() {
        let (out, code) = run_args(&["cf", "--surd", "0,1,82", "--json"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["head"], json!(["9"]));
        assert_eq!(doc["result"]["period"], json!(["18"]));

        let (out, code) = run_args(&["unit", "--disc", "328", "--json"]);
        assert_eq!(code, 0);
        let doc: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["result"]["u"], "9");
        assert_eq!(doc["result"]["norm"], -1);
    }

    #[test]
    fn sqrtdisc_curve_command() {
        let (out, code) =
            run_args(&["sqrtdisc", "--disc", "-20", "--prime", "29", "--method", "curve", "--json"]);
        assert_eq!(code, 0, "{out}");
        let doc: Value = serde_json::from_str(&out).unwrap();
        let root: BigInt = doc["result"]["root"].as_str().unwrap().parse().unwrap();
        assert_eq!(
            (&root * &root) % BigInt::from(29),
            BigInt::from(-20i64).mod_floor(&BigInt::from(29))
        );
    }
}

