//! Command-line front end. [`run`] is the whole program minus process exit, so
//! tests can drive it in-process.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::code::{
    weight_distribution_bruteforce, weight_distribution_closed, ConstacyclicCode,
    WeightDistribution, DEFAULT_CAP,
};
use crate::error::Error;
use crate::factor::{
    factor_cyclic, factor_ell_binomial, format_factor, BinomialFactor, CodeParams,
};
use crate::field::{FieldCtx, FieldElement};
use crate::verify;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNSUPPORTED: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_TOO_LARGE: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "constacode",
    version,
    about = "Irreducible constacyclic codes of length ℓ^n over F_q"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Irreducible factorization of x^(ℓ^n) - μ_k (k = 0 gives x^(ℓ^n) - 1)
    Factor(ParamArgs),
    /// Irreducible factorization of x^(ℓ^n) - 1
    Cyclic(CyclicArgs),
    /// Parameters and generator polynomial of C_{k,i}
    Code(CodeArgs),
    /// Weight distribution of C_{k,i}
    Weights(WeightsArgs),
    /// Encode a message into a codeword of C_{k,i}
    Encode(EncodeArgs),
    /// Run the invariant suite for the given parameters
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Field order (prime power)
    #[arg(long)]
    q: u64,
    /// Prime ℓ dividing q - 1
    #[arg(long)]
    ell: u64,
    /// Length exponent: codes have length ℓ^n
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args, Debug)]
struct CyclicArgs {
    #[command(flatten)]
    field: FieldArgs,
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Level k: μ_k is a primitive ℓ^k-th root of unity
    #[arg(long)]
    k: u32,
    /// Explicit μ_k (must have order ℓ^k)
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<String>,
    /// Explicit μ_{k+r} (must have order ℓ^(k+r)); μ_k becomes its ℓ^r-th power
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mu")]
    mu_lift: Option<String>,
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Code index 1 ≤ i ≤ ℓ^r (default ℓ^r, the canonical code)
    #[arg(long)]
    i: Option<u64>,
}

#[derive(Args, Debug)]
struct CapArg {
    /// Maximum number of codewords to enumerate
    #[arg(long, env = "CONSTACODE_CAP", default_value_t = DEFAULT_CAP)]
    cap: u64,
}

#[derive(Args, Debug)]
struct WeightsArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Cross-check the closed form against brute-force enumeration
    #[arg(long)]
    check: bool,
    #[command(flatten)]
    cap: CapArg,
}

#[derive(Args, Debug)]
struct EncodeArgs {
    #[command(flatten)]
    code: CodeArgs,
    /// Message symbols, comma-separated (';'-separated for extension fields), first symbol first
    #[arg(long, allow_hyphen_values = true)]
    message: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    cap: CapArg,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    status: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InvalidParams(_) | Error::NoSuchRoot { .. } | Error::IndexOutOfRange { .. } => {
                EXIT_INVALID
            }
            Error::UnsupportedCase(_) => EXIT_UNSUPPORTED,
            Error::TooLarge { .. } => EXIT_TOO_LARGE,
            Error::InvalidArgument(_)
            | Error::LengthMismatch { .. }
            | Error::MixedFields
            | Error::DivisionByZero => EXIT_USAGE,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome {
                        status: EXIT_OK,
                        stdout: text,
                        stderr: String::new(),
                    }
                }
                _ => Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(Failure {
            status, message, ..
        }) if status == EXIT_MISMATCH => {
            // mismatches still carry the report on stdout
            let (stdout, diag) = message.split_once('\u{0}').unwrap_or(("", &message));
            Outcome {
                status,
                stdout: stdout.to_string(),
                stderr: format!("error: {diag}\n"),
            }
        }
        Err(Failure { status, message }) => Outcome {
            status,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        },
    }
}

fn mismatch(stdout: String, diag: &str) -> Failure {
    Failure {
        status: EXIT_MISMATCH,
        message: format!("{stdout}\u{0}{diag}"),
    }
}

fn dispatch(command: Command) -> Res<String> {
    match command {
        Command::Factor(args) if args.k == 0 => {
            let field = FieldCtx::with_order(args.field.q)?;
            cyclic_output(&field, &args.field)
        }
        Command::Factor(args) => factor_output(&build_params(&args)?, args.field.format),
        Command::Cyclic(args) => {
            let field = FieldCtx::with_order(args.field.q)?;
            cyclic_output(&field, &args.field)
        }
        Command::Code(args) => {
            let code = build_code(&args)?;
            code_output(&code, args.params.field.format)
        }
        Command::Weights(args) => weights_output(&args),
        Command::Encode(args) => encode_output(&args),
        Command::Verify(args) => verify_output(&args),
    }
}

fn parse_element(field: &FieldCtx, s: &str) -> Res<FieldElement> {
    field.parse(s).map_err(Failure::from)
}

fn build_params(args: &ParamArgs) -> Res<CodeParams> {
    let f = &args.field;
    let field = FieldCtx::with_order(f.q)?;
    let params = match (&args.mu, &args.mu_lift) {
        (Some(mu), _) => {
            CodeParams::with_mu(&field, f.ell, f.n, args.k, parse_element(&field, mu)?)
        }
        (None, Some(lift)) => {
            CodeParams::with_lifted_root(&field, f.ell, f.n, args.k, parse_element(&field, lift)?)
        }
        (None, None) => CodeParams::new(&field, f.ell, f.n, args.k),
    }?;
    Ok(params)
}

fn build_code(args: &CodeArgs) -> Res<ConstacyclicCode> {
    let params = build_params(&args.params)?;
    let i = args.i.unwrap_or_else(|| params.num_factors());
    Ok(ConstacyclicCode::new(&params, i)?)
}

fn field_json(field: &FieldCtx) -> Value {
    json!({
        "p": field.p().to_string(),
        "m": field.m().to_string(),
        "modulus": field.modulus().iter().map(u64::to_string).collect::<Vec<_>>(),
    })
}

fn params_json(params: &CodeParams) -> Value {
    let f = params.field();
    json!({
        "q": params.q().to_string(),
        "field": field_json(f),
        "ell": params.ell().to_string(),
        "n": params.n().to_string(),
        "k": params.k().to_string(),
        "s": params.s().to_string(),
        "r": params.r().to_string(),
        "mu_k": f.format(params.mu_k()),
        "mu_k_plus_r": f.format(params.mu_k_plus_r()),
    })
}

fn factors_json(field: &FieldCtx, factors: &[BinomialFactor]) -> Value {
    factors
        .iter()
        .map(|b| json!({"sub_degree": b.sub_degree.to_string(), "constant": field.format(b.constant)}))
        .collect()
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn product_text(
    field: &FieldCtx,
    degree: u64,
    constant: FieldElement,
    factors: &[BinomialFactor],
) -> String {
    let product: String = factors
        .iter()
        .map(|b| format!("({})", format_factor(field, b.sub_degree, b.constant)))
        .collect();
    format!("{} = {product}\n", format_factor(field, degree, constant))
}

fn factors_csv(field: &FieldCtx, factors: &[BinomialFactor]) -> String {
    let mut out = String::from("sub_degree,constant\n");
    for b in factors {
        out.push_str(&format!(
            "{},{}\n",
            b.sub_degree,
            csv_field(&field.format(b.constant))
        ));
    }
    out
}

fn factor_output(params: &CodeParams, format: Format) -> Res<String> {
    let field = params.field();
    let factors = factor_ell_binomial(params);
    let degree = params.length() as u64;
    Ok(match format {
        Format::Text => format!(
            "# q={} ell={} n={} k={} s={} r={} mu_k={} mu_k_plus_r={}\n{}",
            params.q(),
            params.ell(),
            params.n(),
            params.k(),
            params.s(),
            params.r(),
            field.format(params.mu_k()),
            field.format(params.mu_k_plus_r()),
            product_text(field, degree, params.mu_k(), &factors)
        ),
        Format::Json => to_json(&json!({
            "binomial": {"degree": degree.to_string(), "constant": field.format(params.mu_k())},
            "factors": factors_json(field, &factors),
            "params": params_json(params),
        })),
        Format::Csv => factors_csv(field, &factors),
    })
}

fn cyclic_output(field: &FieldCtx, args: &FieldArgs) -> Res<String> {
    let factors = factor_cyclic(field, args.ell, args.n)?;
    let degree = args.ell.pow(args.n);
    let v = crate::arith::ell_adic_valuation(field.q() - 1, args.ell)?;
    Ok(match args.format {
        Format::Text => format!(
            "# q={} ell={} n={} v={}\n{}",
            field.q(),
            args.ell,
            args.n,
            v,
            product_text(field, degree, field.one(), &factors)
        ),
        Format::Json => to_json(&json!({
            "binomial": {"degree": degree.to_string(), "constant": field.format(field.one())},
            "factors": factors_json(field, &factors),
            "params": {
                "q": field.q().to_string(),
                "field": field_json(field),
                "ell": args.ell.to_string(),
                "n": args.n.to_string(),
                "v": v.to_string(),
            },
        })),
        Format::Csv => factors_csv(field, &factors),
    })
}

fn code_json(code: &ConstacyclicCode) -> Value {
    let f = code.field();
    let p = code.params();
    json!({
        "length": code.length().to_string(),
        "dimension": code.dimension().to_string(),
        "min_distance": code.min_distance().to_string(),
        "q": p.q().to_string(),
        "ell": p.ell().to_string(),
        "n": p.n().to_string(),
        "k": p.k().to_string(),
        "r": p.r().to_string(),
        "index": code.index().to_string(),
        "mu_k": f.format(p.mu_k()),
        "mu_k_plus_r": f.format(p.mu_k_plus_r()),
        "check_constant": f.format(code.check_constant()),
        "generator": code.generator().to_coeff_strings(),
    })
}

fn code_output(code: &ConstacyclicCode, format: Format) -> Res<String> {
    let f = code.field();
    let p = code.params();
    Ok(match format {
        Format::Text => format!(
            "[{}, {}]_{} {}-constacyclic code C_{{{},{}}}\nmin_distance: {}\ncheck: {}\ngenerator: {}\n",
            code.length(),
            code.dimension(),
            p.q(),
            f.format(p.mu_k()),
            p.k(),
            code.index(),
            code.min_distance(),
            code.check_polynomial(),
            code.generator()
        ),
        Format::Json => to_json(&json!({"code": code_json(code)})),
        Format::Csv => {
            let mut out = String::from("degree,coefficient\n");
            for (d, c) in code.generator().to_coeff_strings().iter().enumerate().rev() {
                if c != "0" {
                    out.push_str(&format!("{d},{}\n", csv_field(c)));
                }
            }
            out
        }
    })
}

fn weights_json(w: &WeightDistribution) -> Value {
    let map: serde_json::Map<String, Value> = w
        .entries()
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
        .collect();
    Value::Object(map)
}

fn weights_output(args: &WeightsArgs) -> Res<String> {
    let code = build_code(&args.code)?;
    let closed = weight_distribution_closed(&code);
    let format = args.code.params.field.format;
    let mut verified = None;
    if args.check {
        let brute = weight_distribution_bruteforce(&code, args.cap.cap)?;
        verified = Some(brute == closed);
    }
    let out = match format {
        Format::Text => {
            let mut out = format!(
                "# [{}, {}]_{} weight distribution\n",
                code.length(),
                code.dimension(),
                code.field().q()
            );
            for (w, c) in closed.entries() {
                out.push_str(&format!("A_{w} = {c}\n"));
            }
            if let Some(ok) = verified {
                out.push_str(if ok {
                    "# enumeration: match\n"
                } else {
                    "# enumeration: MISMATCH\n"
                });
            }
            out
        }
        Format::Json => {
            let mut v = json!({"code": code_json(&code), "weights": weights_json(&closed)});
            if let Some(ok) = verified {
                v["enumeration_matches"] = Value::Bool(ok);
            }
            to_json(&v)
        }
        Format::Csv => {
            let mut out = String::from("weight,count\n");
            for (w, c) in closed.entries() {
                out.push_str(&format!("{w},{c}\n"));
            }
            out
        }
    };
    match verified {
        Some(false) => Err(mismatch(
            out,
            "closed-form weight distribution disagrees with enumeration",
        )),
        _ => Ok(out),
    }
}

fn encode_output(args: &EncodeArgs) -> Res<String> {
    let code = build_code(&args.code)?;
    let f = code.field();
    let sep = if f.m() == 1 { ',' } else { ';' };
    let message = args
        .message
        .split(sep)
        .map(|s| parse_element(f, s))
        .collect::<Res<Vec<_>>>()?;
    let word = code.encode(&message)?;
    let symbols = word.format();
    Ok(match args.code.params.field.format {
        Format::Text => format!("{}\n", symbols.join(&sep.to_string())),
        Format::Json => to_json(&json!({
            "code": code_json(&code),
            "message": message.iter().map(|&a| f.format(a)).collect::<Vec<_>>(),
            "codeword": symbols,
            "weight": word.weight().to_string(),
        })),
        Format::Csv => {
            let mut out = String::from("position,symbol\n");
            for (i, s) in symbols.iter().enumerate() {
                out.push_str(&format!("{i},{}\n", csv_field(s)));
            }
            out
        }
    })
}

fn verify_output(args: &VerifyArgs) -> Res<String> {
    let params = build_params(&args.params)?;
    let report = verify::run(&params, args.cap.cap)?;
    let out = match args.params.field.format {
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                out.push_str(&format!(
                    "{:<7} {}: {}\n",
                    c.status.as_str().to_uppercase(),
                    c.name,
                    c.detail
                ));
            }
            out.push_str(if report.passed() { "OK\n" } else { "FAILED\n" });
            out
        }
        Format::Json => to_json(&json!({
            "params": params_json(&params),
            "checks": report.checks.iter().map(|c| json!({
                "name": c.name,
                "status": c.status.as_str(),
                "detail": c.detail,
            })).collect::<Vec<_>>(),
            "passed": report.passed(),
        })),
        Format::Csv => {
            let mut out = String::from("name,status,detail\n");
            for c in &report.checks {
                out.push_str(&format!(
                    "{},{},{}\n",
                    c.name,
                    c.status.as_str(),
                    csv_field(&c.detail)
                ));
            }
            out
        }
    };
    if report.passed() {
        Ok(out)
    } else {
        Err(mismatch(out, "verification failed"))
    }
}
