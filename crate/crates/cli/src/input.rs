use std::fs;
use std::str::FromStr;

use exactgrp::Rational;
use num_bigint::BigInt;
use serde_json::Value;

use crate::report::{usage, CliError};

/// The argument itself, or the trimmed contents of the file for `@path`.
pub fn resolve(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map(|s| s.trim().to_string()).map_err(|e| usage(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn json(arg: &str) -> Result<Value, CliError> {
    let s = resolve(arg)?;
    serde_json::from_str(&s).map_err(|e| usage(format!("invalid JSON {s:?}: {e}")))
}

pub fn parsed<T: FromStr>(arg: &str, what: &str) -> Result<T, CliError> {
    let s = resolve(arg)?;
    s.trim().parse().map_err(|_| usage(format!("invalid {what}: {s:?}")))
}

pub fn bigint(arg: &str) -> Result<BigInt, CliError> {
    parsed(arg, "integer")
}

pub fn rational(arg: &str) -> Result<Rational, CliError> {
    let r: Rational = parsed(arg, "rational")?;
    Ok(r)
}

/// Splits `kind:arg` (the argument is optional).
pub fn kind(spec: &str) -> (&str, Option<&str>) {
    match spec.split_once(':') {
        Some((k, a)) => (k.trim(), Some(a.trim())),
        None => (spec.trim(), None),
    }
}

pub fn kind_usize(spec: &str, default: usize) -> Result<(String, usize), CliError> {
    let (k, a) = kind(spec);
    let n = match a {
        Some(a) => a.parse().map_err(|_| usage(format!("invalid size in {spec:?}")))?,
        None => default,
    };
    Ok((k.to_string(), n))
}
