//! The `diophz` command line.
//!
//! Exit codes: 0 on success, 1 when a check or verification fails, 2 on
//! usage or parse errors.

use std::ffi::OsString;
use std::io::Read;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::approx::{approximate_by_c_with_budget, ApproxError, DEFAULT_DEGREE_BUDGET};
use crate::arith::{embeddings, FieldDescriptor, NumberFieldElement, MAX_PRECISION, MIN_PRECISION};
use crate::cert::{CertDocument, Certificate};
use crate::encode::{decompose_basis, Subring};
use crate::poly::Valuation;
use crate::qf::{assemble_kr_forms, valuation_case_analysis, HypothesisHConfig};
use crate::special::{chebyshev_pair, cyclotomic, recognize_c};
use crate::text::{parse_element, parse_field, parse_poly, parse_ratfunc, parse_zpoly};
use crate::witness::{
    build_degree_witness, build_divisor_certificate, build_divu_witness, build_zz_witness_with_budget,
    certify_c_membership, Verdict,
};

/// Environment variable consulted when `--precision` is absent.
pub const PRECISION_ENV: &str = "DIOPHZ_PRECISION";
pub const DEFAULT_PRECISION: u64 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "diophz",
    version,
    about = "Cyclotomic and Chebyshev constructions, witness certificates and verifiers"
)]
struct Cli {
    /// Ambient number field, `Q` or `Q(a)/<polynomial in a>`.
    #[arg(long, global = true, default_value = "Q")]
    field: String,

    /// Bits of precision for certified embeddings.
    #[arg(long, global = true)]
    precision: Option<u64>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chebyshev pair (X_n, Y_n).
    Cheb {
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// The n-th cyclotomic polynomial.
    Cyclo { n: u64 },
    /// Factor an integer polynomial as ± a product of distinct cyclotomics.
    #[command(name = "recognize-c")]
    RecognizeC {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Root-of-unity polynomial M with M ≡ F (mod Z^d).
    Approx {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        d: usize,
        /// Largest degree of M that will be expanded.
        #[arg(long, default_value_t = DEFAULT_DEGREE_BUDGET)]
        budget: u64,
    },
    /// Build a certificate and print it as JSON.
    Witness {
        #[command(subcommand)]
        kind: WitnessKind,
    },
    /// Verify a certificate file (`-` for stdin).
    Verify { file: String },
    /// v_Z and v_Zinf of a rational function.
    Valuation {
        #[arg(allow_hyphen_values = true)]
        ratfunc: String,
    },
    /// Quadratic-form constructions.
    Qf {
        #[command(subcommand)]
        command: QfCommand,
    },
    /// Power-basis decomposition X = (X_0 + X_1 a + ...)/y.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        /// Coefficient ring to check membership in: Z, Q, O, K, Z[1/p,...], O[1/p,...].
        #[arg(long)]
        ring: Option<String>,
    },
    /// Certified complex embeddings of the field generator.
    Embeddings,
}

#[derive(Debug, Subcommand)]
enum WitnessKind {
    /// G | Z^u - 1 with G(0) = 1 and deg G >= 3.
    Divu {
        #[arg(allow_hyphen_values = true)]
        g: String,
        u: u64,
    },
    /// F | Z^u - 1 through G = lcm(Z^3 - 1, F).
    Divisor {
        #[arg(allow_hyphen_values = true)]
        f: String,
        u: u64,
    },
    /// F is a root-of-unity polynomial, given F | Z^u - 1.
    Cmember {
        #[arg(allow_hyphen_values = true)]
        f: String,
        u: u64,
    },
    /// X is in Z[Z].
    Zz {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(long, default_value_t = DEFAULT_DEGREE_BUDGET)]
        budget: u64,
    },
    /// deg F = d.
    Degree {
        #[arg(allow_hyphen_values = true)]
        f: String,
        d: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
enum QfCommand {
    /// Valuations of G = ((Z + Z^2) + X^3)/(Z^3 + Z^2 X^3) against the case table.
    Case {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// The two eight-dimensional forms attached to F.
    Forms {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        pi: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    stdout: String,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        stdout: String::new(),
        message: message.to_string(),
    }
}

fn check(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        stdout: String::new(),
        message: message.to_string(),
    }
}

struct Ctx {
    field: Arc<FieldDescriptor>,
    precision: u64,
    output: OutputFormat,
}

impl Ctx {
    fn emit(&self, text: String, value: Value) -> String {
        match self.output {
            OutputFormat::Text => text,
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

/// Runs the command line, reading standard input only for `verify -`.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_stdin(args, None)
}

/// Like [`run`], with `stdin` standing in for standard input when given.
pub fn run_with_stdin<I, T>(args: I, stdin: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli, stdin) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: f.stdout,
            stderr: format!("{}\n", f.message),
        },
    }
}

fn precision(flag: Option<u64>) -> Result<u64, Failure> {
    let bits = match (flag, std::env::var(PRECISION_ENV)) {
        (Some(p), _) => p,
        (None, Ok(v)) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{} must be a positive integer, got {:?}", PRECISION_ENV, v)))?,
        (None, Err(_)) => DEFAULT_PRECISION,
    };
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&bits) {
        return Err(usage(format!(
            "precision must be between {} and {} bits",
            MIN_PRECISION, MAX_PRECISION
        )));
    }
    Ok(bits)
}

fn execute(cli: Cli, stdin: Option<&str>) -> Result<String, Failure> {
    let ctx = Ctx {
        field: parse_field(&cli.field).map_err(|e| usage(format!("invalid field {:?}: {}", cli.field, e)))?,
        precision: precision(cli.precision)?,
        output: cli.output,
    };
    let field = ctx.field.clone();
    let kpoly = |s: &str| parse_poly(s, &field).map_err(|e| usage(format!("cannot parse {:?}: {}", s, e)));
    let zpoly = |s: &str| parse_zpoly(s).map_err(|e| usage(format!("cannot parse {:?}: {}", s, e)));

    match cli.command {
        Command::Cheb { n } => {
            let p = chebyshev_pair(n);
            Ok(ctx.emit(
                format!("X = {}\nY = {}\n", p.x, p.y),
                json!({"n": n, "X": p.x.to_string(), "Y": p.y.to_string()}),
            ))
        }
        Command::Cyclo { n } => {
            if n == 0 {
                return Err(usage("n must be positive"));
            }
            let p = cyclotomic(n);
            Ok(ctx.emit(format!("{}\n", p), json!({"n": n, "poly": p.to_string()})))
        }
        Command::RecognizeC { poly } => {
            let f = zpoly(&poly)?;
            if f.is_zero() {
                return Err(check("zero polynomial"));
            }
            let c0 = f.constant_term();
            if c0 != 1.into() && c0 != (-1).into() {
                return Err(check("constant term not ±1"));
            }
            let lead = f.leading_coefficient().cloned().unwrap_or_default();
            if lead != 1.into() && lead != (-1).into() {
                return Err(check("leading coefficient not ±1"));
            }
            let fact = recognize_c(&f).ok_or_else(|| check("not a product of distinct cyclotomic polynomials"))?;
            let sign = if fact.sign() < 0 { "-" } else { "+" };
            Ok(ctx.emit(
                format!("sign = {}1\nindices = {:?}\n", sign, fact.indices()),
                json!({"sign": fact.sign(), "indices": fact.indices()}),
            ))
        }
        Command::Approx { poly, d, budget } => {
            let f = zpoly(&poly)?;
            if d == 0 {
                return Err(usage("d must be positive"));
            }
            let (m, trace) = approximate_by_c_with_budget(&f, d, budget).map_err(|e| match e {
                ApproxError::BadConstantTerm => check("constant term not ±1"),
                other => check(other),
            })?;
            let mut text = format!("M = {}\n", m);
            for s in &trace.steps {
                text.push_str(&format!("level {}: c = {}, indices = {:?}\n", s.level, s.c, s.indices));
            }
            let steps: Vec<Value> = trace
                .steps
                .iter()
                .map(|s| {
                    json!({
                        "level": s.level,
                        "c": s.c.to_string().parse::<serde_json::Number>().expect("integer"),
                        "indices": s.indices,
                    })
                })
                .collect();
            Ok(ctx.emit(
                text,
                json!({
                    "M": m.to_string(),
                    "sign": trace.result.sign(),
                    "indices": trace.result.indices(),
                    "steps": steps,
                }),
            ))
        }
        Command::Witness { kind } => {
            let cert = match kind {
                WitnessKind::Divu { g, u } => Certificate::DivU(build_divu_witness(&kpoly(&g)?, u).map_err(check)?),
                WitnessKind::Divisor { f, u } => {
                    Certificate::Divisor(build_divisor_certificate(&kpoly(&f)?, u).map_err(check)?)
                }
                WitnessKind::Cmember { f, u } => {
                    Certificate::CMember(certify_c_membership(&kpoly(&f)?, u).map_err(check)?)
                }
                WitnessKind::Zz { x, budget } => {
                    Certificate::ZZ(build_zz_witness_with_budget(&zpoly(&x)?, budget).map_err(check)?)
                }
                WitnessKind::Degree { f, d } => {
                    let f = kpoly(&f)?;
                    let d = d.unwrap_or_else(|| f.degree().unwrap_or(0) as u64);
                    Certificate::Degree(build_degree_witness(&f, d).map_err(check)?)
                }
            };
            Ok(CertDocument::new(&ctx.field, cert).to_json_string())
        }
        Command::Verify { file } => {
            let text = if file == "-" {
                match stdin {
                    Some(s) => s.to_string(),
                    None => {
                        let mut s = String::new();
                        std::io::stdin()
                            .read_to_string(&mut s)
                            .map_err(|e| usage(format!("cannot read stdin: {}", e)))?;
                        s
                    }
                }
            } else {
                std::fs::read_to_string(&file).map_err(|e| usage(format!("cannot read {}: {}", file, e)))?
            };
            let doc = CertDocument::from_json_str(&text).map_err(usage)?;
            match doc.cert.verify() {
                Verdict::Accept(detail) => Ok(ctx.emit(
                    format!("accept ({}): {}\n", doc.cert.kind(), detail),
                    json!({"verdict": "accept", "kind": doc.cert.kind(), "detail": detail}),
                )),
                Verdict::Reject(clause) => Err(Failure {
                    code: 1,
                    stdout: match ctx.output {
                        OutputFormat::Text => String::new(),
                        OutputFormat::Json => ctx.emit(
                            String::new(),
                            json!({"verdict": "reject", "kind": doc.cert.kind(), "clause": clause}),
                        ),
                    },
                    message: format!("reject: {}", clause),
                }),
            }
        }
        Command::Valuation { ratfunc } => {
            let f = parse_ratfunc(&ratfunc, &ctx.field).map_err(|e| usage(format!("cannot parse {:?}: {}", ratfunc, e)))?;
            let (vz, vzinf) = (f.v_z(), f.v_zinf());
            Ok(ctx.emit(
                format!("v_Z = {}\nv_Zinf = {}\n", vz, vzinf),
                json!({"v_Z": valuation_json(vz), "v_Zinf": valuation_json(vzinf)}),
            ))
        }
        Command::Qf { command } => match command {
            QfCommand::Case { x } => {
                let x = parse_ratfunc(&x, &ctx.field).map_err(|e| usage(format!("cannot parse {:?}: {}", x, e)))?;
                let rep = valuation_case_analysis(&x).map_err(check)?;
                let out = ctx.emit(
                    format!(
                        "case = {}\nv_Z(G) = {}\nv_Zinf(G) = {}\nconsistent = {}\n",
                        rep.case, rep.vz_g, rep.vzinf_g, rep.consistent
                    ),
                    json!({
                        "case": rep.case.to_string(),
                        "v_Z(G)": rep.vz_g,
                        "v_Zinf(G)": rep.vzinf_g,
                        "consistent": rep.consistent,
                    }),
                );
                if rep.consistent {
                    Ok(out)
                } else {
                    Err(Failure {
                        code: 1,
                        stdout: out,
                        message: "valuations disagree with the case table".into(),
                    })
                }
            }
            QfCommand::Forms { f, p, alpha, pi } => {
                let f = parse_ratfunc(&f, &ctx.field).map_err(|e| usage(format!("cannot parse {:?}: {}", f, e)))?;
                let element = |s: &str| -> Result<NumberFieldElement, Failure> {
                    parse_element(s, &ctx.field).map_err(|e| usage(format!("cannot parse {:?}: {}", s, e)))
                };
                let cfg = HypothesisHConfig::new(&ctx.field, p, element(&alpha)?, element(&pi)?).map_err(check)?;
                let (q1, q2) = assemble_kr_forms(&f, &cfg).map_err(check)?;
                Ok(ctx.emit(
                    format!(
                        "q1 = {}\nq2 = {}\nsqrt(-1) in K: {}\n",
                        q1, q2, cfg.has_sqrt_minus_one
                    ),
                    json!({
                        "q1": q1.to_json(),
                        "q2": q2.to_json(),
                        "has_sqrt_minus_one": cfg.has_sqrt_minus_one,
                        "unchecked_claims": cfg.unchecked_claims,
                    }),
                ))
            }
        },
        Command::Decompose { poly, ring } => {
            let x = kpoly(&poly)?;
            if let Some(r) = ring {
                let ring: Subring = r.parse().map_err(usage)?;
                ring.check_generator(&ctx.field).map_err(check)?;
                if !ring.contains_poly(&x) {
                    return Err(check(format!("X has a coefficient outside {}", ring)));
                }
            }
            let b = decompose_basis(&x, &ctx.field);
            let mut text = String::new();
            for (i, p) in b.parts.iter().enumerate() {
                text.push_str(&format!("X{} = {}\n", i, p));
            }
            text.push_str(&format!("y = {}\n", b.y));
            Ok(ctx.emit(text, b.to_json()))
        }
        Command::Embeddings => {
            let balls = embeddings(&ctx.field, ctx.precision).map_err(check)?;
            let mut text = String::new();
            let mut items = Vec::new();
            for b in &balls {
                let re = b.re().to_f64().unwrap_or(f64::NAN);
                let im = b.im().to_f64().unwrap_or(f64::NAN);
                text.push_str(&format!(
                    "{} {} {}i\n",
                    fmt_f64(re),
                    if im < 0.0 { "-" } else { "+" },
                    fmt_f64(im.abs())
                ));
                items.push(json!({
                    "re": b.re().to_string(),
                    "im": b.im().to_string(),
                    "radius": b.radius().to_string(),
                }));
            }
            Ok(ctx.emit(
                text,
                json!({"field": ctx.field.label(), "precision": ctx.precision, "roots": items}),
            ))
        }
    }
}

fn fmt_f64(x: f64) -> String {
    // avoid printing -0.000…
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.15}", x)
}

fn valuation_json(v: Valuation) -> Value {
    match v {
        Valuation::Finite(n) => json!(n),
        Valuation::Infinity => json!("inf"),
    }
}
