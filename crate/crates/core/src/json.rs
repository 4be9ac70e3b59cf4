//! JSON file formats and output with 17 significant digits.

use std::io;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::ser::Formatter;
use thiserror::Error;

use crate::frames::FrameSystem;
use crate::linalg::QMatrix;
use crate::superspace::{oplus_op, SuperFrame};

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: invalid JSON at line {line} column {column}: {message}")]
    Syntax { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Content { path: PathBuf, message: String },
}

/// Writes every `f64` with 17 significant digits: positional for decimal
/// exponents in `[-4, 16)`, scientific otherwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct Digits17;

pub fn format_f64(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{x:.16e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).expect("exponent present");
    if (-4..16).contains(&exp) {
        format!("{x:.prec$}", prec = (16 - exp) as usize)
    } else {
        sci
    }
}

impl Formatter for Digits17 {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_f64(value).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_string<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Digits17);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(out).expect("serde_json emits UTF-8"))
}

/// An operator file: a block pair `{"K1", "K2"}` or one full matrix.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorFile {
    Blocks {
        #[serde(rename = "K1")]
        k1: QMatrix,
        #[serde(rename = "K2")]
        k2: QMatrix,
    },
    Full(QMatrix),
}

impl OperatorFile {
    /// `K1⊕K2` for block pairs.
    pub fn combined(&self) -> QMatrix {
        match self {
            OperatorFile::Blocks { k1, k2 } => oplus_op(k1, k2),
            OperatorFile::Full(k) => k.clone(),
        }
    }
}

fn read(path: &Path) -> Result<String, LoadError> {
    std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.into(), source })
}

fn parse_value(path: &Path, text: &str) -> Result<serde_json::Value, LoadError> {
    serde_json::from_str(text).map_err(|e| LoadError::Syntax {
        path: path.into(),
        line: e.line(),
        column: e.column(),
        message: strip_position(&e),
    })
}

fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_string(),
        None => s,
    }
}

/// Parses `text` as `T`; syntax and content errors carry line and column.
pub fn parse<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, LoadError> {
    parse_value(path, text)?;
    serde_json::from_str(text).map_err(|e| {
        if e.line() > 0 {
            LoadError::Syntax { path: path.into(), line: e.line(), column: e.column(), message: strip_position(&e) }
        } else {
            LoadError::Content { path: path.into(), message: e.to_string() }
        }
    })
}

/// Reads `path` as an untyped JSON value.
pub fn load_value(path: &Path) -> Result<serde_json::Value, LoadError> {
    parse_value(path, &read(path)?)
}

/// Converts a value read from `path` into `T`.
pub fn decode<T: DeserializeOwned>(path: &Path, value: serde_json::Value) -> Result<T, LoadError> {
    serde_json::from_value(value).map_err(|e| LoadError::Content { path: path.into(), message: e.to_string() })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T, LoadError> {
    parse(path, &read(path)?)
}

pub fn load_frame(path: &Path) -> Result<FrameSystem, LoadError> {
    load(path)
}

pub fn load_super_frame(path: &Path) -> Result<SuperFrame, LoadError> {
    load(path)
}

/// Operator files are told apart by the presence of a `"K1"` key so that
/// errors in either layout keep their position.
pub fn load_operator(path: &Path) -> Result<OperatorFile, LoadError> {
    let text = read(path)?;
    let value = parse_value(path, &text)?;
    if value.get("K1").is_some() || value.get("K2").is_some() {
        #[derive(Deserialize)]
        struct Blocks {
            #[serde(rename = "K1")]
            k1: QMatrix,
            #[serde(rename = "K2")]
            k2: QMatrix,
        }
        let b: Blocks = parse(path, &text)?;
        Ok(OperatorFile::Blocks { k1: b.k1, k2: b.k2 })
    } else {
        Ok(OperatorFile::Full(parse(path, &text)?))
    }
}

pub fn save<T: Serialize + ?Sized>(path: &Path, value: &T) -> io::Result<()> {
    let mut s = to_string(value).map_err(io::Error::other)?;
    s.push('\n');
    std::fs::write(path, s)
}
