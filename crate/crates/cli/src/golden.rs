//! Golden fixtures: one `{"word", "expect"}` JSON object per line. The
//! expectation holds every factorization's scalar data (`t` and the `N`
//! parameters), the cell and flag labels, or the error kind, all quantized
//! to a 1e-9 grid so that replay compares bit-for-bit.

use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

use f4decomp::decomp::Decomposer;
use f4decomp::sample::Sampler;
use f4decomp::word::Word;
use f4decomp::{Error, Result, Tolerance};

use crate::{classify, read_file, write_file, CliError, CliResult};

pub const GRID: f64 = 1e-9;

const HAND_PICKED: &[&str] = &[
    "S1",
    "S2",
    "S3",
    "S1*S1",
    "A3(0.5;1)",
    "A3(0.3;1)*A3(-0.3;1)",
    "A1(0.7;e1)",
    "A2(0.4;1)",
    "A2(-0.6;e5)*A3(0.2;1)",
    "A1(-1.5707963267948966;1)",
    "G1(1+2e3)*S1^-1",
    "G1(e2)",
    "Gm1(0.5e4;0.3e7)",
    "G2(e1)*G1(e2)",
    "Gm2(0.25e6)*A3(0.1;1)",
    "G1(0.3;0.2e1)^-1*Gm1(0.1e2)",
    "D4(1,1,e3)",
    "D4(2,e1,-e1)*A3(0.2;1)",
    "S1*A3(0.4;1)*G1(0.2e5)",
    "(A3(0.2;e2)*S2)^2",
];

const RANDOM_SEED: u64 = 2024;
const RANDOM_COUNT: usize = 16;

pub fn default_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/golden.jsonl")
}

/// The fixture words: the hand-picked list followed by seeded random words.
pub fn words() -> Vec<String> {
    let mut s = Sampler::new(RANDOM_SEED);
    let mut out: Vec<String> = HAND_PICKED.iter().map(|w| w.to_string()).collect();
    out.extend((0..RANDOM_COUNT).map(|_| s.word(5).to_string()));
    out
}

pub fn quantize(v: &Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => {
                let q = (x / GRID).round() * GRID;
                // Avoid a distinct `-0.0` token in the file.
                json!(if q == 0.0 { 0.0 } else { q })
            }
            _ => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(quantize).collect()),
        Value::Object(m) => Value::Object(m.iter().map(|(k, v)| (k.clone(), quantize(v))).collect()),
        other => other.clone(),
    }
}

fn entry<T>(r: Result<T>, f: impl FnOnce(T) -> Value) -> Value {
    match r {
        Ok(x) => f(x),
        Err(e) => json!({"error": e.kind()}),
    }
}

/// The expectation of one word at the default tolerance, unquantized.
pub fn summarize(word: &str) -> CliResult<Value> {
    let dec = Decomposer::new(Tolerance::default());
    let w = Word::parse(word)?;
    let g = w.eval()?;
    let mut out = Map::new();
    out.insert("classify".into(), classify(&dec, &g)?);
    out.insert("iwasawa".into(), entry(dec.iwasawa(&g), |f| json!({"t": f.t, "n": f.n})));
    out.insert("keps".into(), entry(dec.keps_iwasawa(&g), |f| json!({"t": f.t, "n": f.n})));
    out.insert(
        "matsuki".into(),
        entry(dec.matsuki(&g), |f| json!({"cell": f.cell, "w": f.w, "t": f.t, "n": f.n})),
    );
    out.insert("gauss".into(), entry(dec.gauss(&g), |f| json!({"z": f.z, "t": f.t, "n": f.n})));
    Ok(Value::Object(out))
}

pub fn expect(word: &str) -> CliResult<Value> {
    summarize(word).map(|v| quantize(&v))
}

/// Regenerates the fixture file; returns the number of entries.
pub fn bless(path: &Path) -> CliResult<usize> {
    let mut text = String::new();
    let words = words();
    for w in &words {
        text.push_str(&json!({"word": w, "expect": expect(w)?}).to_string());
        text.push('\n');
    }
    write_file(path, &text)?;
    Ok(words.len())
}

#[derive(Debug)]
pub struct Mismatch {
    pub line: usize,
    pub word: String,
    pub expected: Value,
    pub found: Value,
}

/// Replays every fixture line; returns the entry count and the mismatches.
pub fn replay(path: &Path) -> CliResult<(usize, Vec<Mismatch>)> {
    let text = read_file(path)?;
    let mut count = 0;
    let mut bad = Vec::new();
    for (k, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let doc: Value = serde_json::from_str(line)
            .map_err(|e| CliError::Json(format!("{}:{}: {e}", path.display(), k + 1)))?;
        let word = doc
            .get("word")
            .and_then(Value::as_str)
            .ok_or_else(|| CliError::Json(format!("{}:{}: missing \"word\"", path.display(), k + 1)))?;
        let expected = doc.get("expect").cloned().unwrap_or(Value::Null);
        let found = match expect(word) {
            Ok(v) => v,
            Err(CliError::Core(e)) => json!({"error": Error::kind(&e)}),
            Err(e) => return Err(e),
        };
        count += 1;
        if found != expected {
            bad.push(Mismatch { line: k + 1, word: word.to_string(), expected, found });
        }
    }
    Ok((count, bad))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantize_rounds_to_the_grid() {
        let v = json!({"t": 0.123_456_789_49, "n": [-1e-12, 2.0], "w": true, "s": "closed"});
        let q = quantize(&v);
        assert_eq!(q["t"].as_f64().unwrap(), (0.123_456_789_49f64 / GRID).round() * GRID);
        assert_eq!(q["n"][0].to_string(), "0.0");
        assert_eq!(q["n"][1].as_f64().unwrap(), 2.0);
        assert_eq!(q["w"], true);
        assert_eq!(q["s"], "closed");
        let back: Value = serde_json::from_str(&q.to_string()).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn fixture_words_parse_and_round_trip() {
        let words = words();
        assert!(words.len() >= 30);
        for w in &words {
            assert_eq!(&Word::parse(w).unwrap().to_string(), w);
        }
    }
}
