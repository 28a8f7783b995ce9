//! Command implementations behind the `f4decomp` binary. Every command
//! produces one JSON value on success; failures carry the exit code they
//! map to and a structured JSON body for stderr.

pub mod golden;
pub mod selftest;

use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use f4decomp::decomp::Decomposer;
use f4decomp::harmonic::{c_gamma, c_quadrature, QuadratureSpec, SpectralParam};
use f4decomp::linalg::from_row_major;
use f4decomp::liegroup::verify;
use f4decomp::word::Word;
use f4decomp::{Error, GroupElement, JordanElement, Tolerance};

#[derive(Parser, Debug)]
#[command(name = "f4decomp", version, about = "Evaluate F4(-20) group words and compute their factorizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a word to its verified 27x27 matrix.
    Eval {
        #[arg(long)]
        word: String,
        /// Also write the element JSON to this file (readable by `verify`).
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// g = k a_t n with k in K.
    Iwasawa {
        #[arg(long)]
        word: String,
    },
    /// g = k_eps a_t n with k_eps in K_eps (open cell only).
    Keps {
        #[arg(long)]
        word: String,
    },
    /// g = k_eps (g0) m a_t n on either Matsuki cell.
    Matsuki {
        #[arg(long)]
        word: String,
    },
    /// g = n- m a_t n+ (open Bruhat cell only).
    Gauss {
        #[arg(long)]
        word: String,
    },
    /// Bruhat and Matsuki cells of g and the orbit labels of the flag gP-.
    Classify {
        #[arg(long)]
        word: String,
    },
    /// The c-function at lambda_alpha = re[,im].
    Cfunction {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, value_enum, default_value_t = Method::Gamma)]
        method: Method,
        /// Relative tolerance of the quadrature route.
        #[arg(long, default_value_t = 1e-6)]
        rel_tol: f64,
    },
    /// Check that a {"mat": [729 reals]} file is an automorphism.
    Verify {
        #[arg(long, value_name = "FILE")]
        matrix: PathBuf,
    },
    /// Run the invariant suites and replay the golden fixtures.
    Selftest {
        /// Regenerate the fixture file instead of replaying it.
        #[arg(long)]
        bless: bool,
        #[arg(long, value_name = "FILE")]
        fixtures: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Gamma,
    Quad,
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, msg: String },
    Json(String),
    Selftest(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, msg } => write!(f, "{}: {msg}", path.display()),
            CliError::Json(msg) => write!(f, "{msg}"),
            CliError::Selftest(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io { .. } => "IoError",
            CliError::Json(_) => "JsonError",
            CliError::Selftest(_) => "SelftestFailed",
        }
    }

    /// 2 for degenerate-cell errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_degenerate() => 2,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind(), "message": self.to_string()})
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_owned(), msg: e.to_string() })
}

pub fn write_file(path: &Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|e| CliError::Io { path: path.to_owned(), msg: e.to_string() })
}

/// Parses `re` or `re,im`.
pub fn parse_lambda(s: &str) -> CliResult<SpectralParam> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let num = |p: &str| {
        p.parse::<f64>()
            .map_err(|_| CliError::Core(Error::InvalidArgument(format!("bad lambda component `{p}`"))))
    };
    match parts.as_slice() {
        [re] => Ok(SpectralParam::real(num(re)?)),
        [re, im] => Ok(SpectralParam::new(num(re)?, num(im)?)),
        _ => Err(Error::InvalidArgument(format!("lambda must be `re` or `re,im`, got `{s}`")).into()),
    }
}

fn parse_word(src: &str) -> CliResult<(Word, GroupElement)> {
    let w = Word::parse(src)?;
    let g = w.eval()?;
    Ok((w, g))
}

fn with_word(mut v: Value, w: &Word) -> Value {
    if let Value::Object(map) = &mut v {
        map.insert("word".into(), Value::String(w.to_string()));
    }
    v
}

/// Cell and flag-orbit labels of `g`.
pub fn classify(dec: &Decomposer, g: &GroupElement) -> CliResult<Value> {
    let y = g.apply(&JordanElement::p_minus());
    Ok(json!({
        "bruhat": dec.bruhat_classify(g),
        "matsuki": dec.matsuki_cell(g),
        "flag": {
            "nminus": dec.flag_classify_nminus(&y)?.label(),
            "keps": dec.flag_classify_keps(&y)?.label(),
        },
        "stabilizer": dec.stabilizer_flag(g),
    }))
}

/// Residual of a `{"mat": [...]}` document, without the pass/fail cut.
pub fn matrix_residual(doc: &Value) -> CliResult<f64> {
    let mat = doc
        .get("mat")
        .and_then(|m| m.as_array())
        .map(|a| a.iter().map(|v| v.as_f64()).collect::<Option<Vec<f64>>>())
        .and_then(|v| v.and_then(|v| from_row_major(&v)))
        .ok_or_else(|| CliError::Json("expected {\"mat\": [729 reals]}".into()))?;
    Ok(verify(&mat))
}

pub fn run(cli: Cli) -> CliResult<Value> {
    let tol = Tolerance::from_env()?;
    let dec = Decomposer::new(tol);
    match cli.command {
        Command::Eval { word, out } => {
            let (w, g) = parse_word(&word)?;
            let v = with_word(serde_json::to_value(&g).map_err(|e| CliError::Json(e.to_string()))?, &w);
            if let Some(path) = out {
                write_file(&path, &format!("{v}\n"))?;
            }
            Ok(v)
        }
        Command::Iwasawa { word } => {
            let (w, g) = parse_word(&word)?;
            Ok(with_word(dec.iwasawa(&g)?.to_json(), &w))
        }
        Command::Keps { word } => {
            let (w, g) = parse_word(&word)?;
            Ok(with_word(dec.keps_iwasawa(&g)?.to_json(), &w))
        }
        Command::Matsuki { word } => {
            let (w, g) = parse_word(&word)?;
            Ok(with_word(dec.matsuki(&g)?.to_json(), &w))
        }
        Command::Gauss { word } => {
            let (w, g) = parse_word(&word)?;
            Ok(with_word(dec.gauss(&g)?.to_json(), &w))
        }
        Command::Classify { word } => {
            let (w, g) = parse_word(&word)?;
            Ok(with_word(classify(&dec, &g)?, &w))
        }
        Command::Cfunction { lambda, method, rel_tol } => {
            let l = parse_lambda(&lambda)?;
            let lv = l.value();
            match method {
                Method::Gamma => {
                    let c = c_gamma(l)?;
                    Ok(json!({"lambda_alpha": [lv.re, lv.im], "c": [c.re, c.im], "method": "gamma"}))
                }
                Method::Quad => {
                    let spec = QuadratureSpec { rel_tol, ..QuadratureSpec::default() };
                    let r = c_quadrature(l, &spec)?;
                    Ok(json!({
                        "lambda_alpha": [lv.re, lv.im], "c": [r.value.re, r.value.im],
                        "method": "quad", "error": r.error,
                    }))
                }
            }
        }
        Command::Verify { matrix } => {
            let doc: Value = serde_json::from_str(&read_file(&matrix)?)
                .map_err(|e| CliError::Json(format!("{}: {e}", matrix.display())))?;
            let residual = matrix_residual(&doc)?;
            if !(residual < tol.verify) {
                return Err(Error::NotAutomorphism { residual }.into());
            }
            Ok(json!({"automorphism": true, "residual": residual, "tol": tol.verify}))
        }
        Command::Selftest { bless, fixtures } => {
            let path = fixtures.unwrap_or_else(golden::default_path);
            if bless {
                let n = golden::bless(&path)?;
                return Ok(json!({"blessed": n, "path": path.display().to_string()}));
            }
            selftest::run(&path)
        }
    }
}
