//! JSON input files: `{"roots": [[re, im], ...]}`, `{"coeffs": ...}`,
//! `{"nodes": ...}`, and for the doubled-condition problem
//! `{"nodes": ..., "values": ...}`.

use calab_core::{Complex64, Polynomial};
use serde::Deserialize;

use crate::InputError;

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    roots: Option<Vec<Complex64>>,
    coeffs: Option<Vec<Complex64>>,
    nodes: Option<Vec<Complex64>>,
    values: Option<Vec<Complex64>>,
}

/// A polynomial given either by roots or by ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub enum PolySource {
    Roots(Vec<Complex64>),
    Coeffs(Vec<Complex64>),
}

impl PolySource {
    /// Monic polynomial; coefficient input is divided by its leading coefficient.
    pub fn polynomial(&self) -> Result<Polynomial, calab_core::Error> {
        match self {
            PolySource::Roots(r) => Polynomial::from_roots(r),
            PolySource::Coeffs(c) => Ok(Polynomial::new(c.clone())?.to_monic()),
        }
    }
}

/// 1-based line and column of byte offset `at`.
fn position(text: &str, at: usize) -> (usize, usize) {
    let before = &text[..at.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
    (line, column)
}

fn key_position(text: &str, key: &str) -> (usize, usize) {
    let needle = format!("\"{key}\"");
    text.find(&needle)
        .or_else(|| text.find('{'))
        .map_or((1, 1), |at| position(text, at))
}

fn parse(text: &str) -> Result<InputFile, InputError> {
    serde_json::from_str(text).map_err(|e| InputError {
        line: e.line().max(1),
        column: e.column().max(1),
        message: e.to_string(),
    })
}

fn at(text: &str, key: &str, message: String) -> InputError {
    let (line, column) = key_position(text, key);
    InputError { line, column, message }
}

fn reject_extra(text: &str, file: &InputFile, allowed: &[&str]) -> Result<(), InputError> {
    let present = [
        ("roots", file.roots.is_some()),
        ("coeffs", file.coeffs.is_some()),
        ("nodes", file.nodes.is_some()),
        ("values", file.values.is_some()),
    ];
    for (key, is_set) in present {
        if is_set && !allowed.contains(&key) {
            return Err(at(text, key, format!("key \"{key}\" is not accepted by this command")));
        }
    }
    Ok(())
}

fn nonempty(text: &str, key: &str, v: Vec<Complex64>) -> Result<Vec<Complex64>, InputError> {
    if v.is_empty() {
        Err(at(text, key, format!("\"{key}\" must not be empty")))
    } else {
        Ok(v)
    }
}

pub fn polynomial_input(text: &str) -> Result<PolySource, InputError> {
    let file = parse(text)?;
    reject_extra(text, &file, &["roots", "coeffs"])?;
    match (file.roots, file.coeffs) {
        (Some(r), None) => Ok(PolySource::Roots(nonempty(text, "roots", r)?)),
        (None, Some(c)) => {
            let c = nonempty(text, "coeffs", c)?;
            if c.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
                return Err(at(text, "coeffs", "coefficients are all zero".into()));
            }
            if c.len() < 2 || c[1..].iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
                return Err(at(text, "coeffs", "polynomial must have degree >= 1".into()));
            }
            Ok(PolySource::Coeffs(c))
        }
        (Some(_), Some(_)) => Err(at(text, "coeffs", "give exactly one of \"roots\" or \"coeffs\"".into())),
        (None, None) => Err(at(text, "", "expected key \"roots\" or \"coeffs\"".into())),
    }
}

pub fn nodes_input(text: &str) -> Result<Vec<Complex64>, InputError> {
    let file = parse(text)?;
    reject_extra(text, &file, &["nodes"])?;
    match file.nodes {
        Some(n) => nonempty(text, "nodes", n),
        None => Err(at(text, "", "expected key \"nodes\"".into())),
    }
}

pub fn problem3_input(text: &str) -> Result<(Vec<Complex64>, Vec<Complex64>), InputError> {
    let file = parse(text)?;
    reject_extra(text, &file, &["nodes", "values"])?;
    let nodes = file.nodes.ok_or_else(|| at(text, "", "expected key \"nodes\"".into()))?;
    let values = file.values.ok_or_else(|| at(text, "", "expected key \"values\"".into()))?;
    let nodes = nonempty(text, "nodes", nodes)?;
    if values.len() != nodes.len() {
        return Err(at(
            text,
            "values",
            format!("\"values\" has {} entries, \"nodes\" has {}", values.len(), nodes.len()),
        ));
    }
    Ok((nodes, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_roots_and_coeffs() {
        let src = polynomial_input(r#"{"roots": [[1, 0], [-1, 0.5]]}"#).unwrap();
        assert_eq!(src, PolySource::Roots(vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.5)]));
        let src = polynomial_input(r#"{"coeffs": [[2, 0], [0, 0], [2, 0]]}"#).unwrap();
        let p = src.polynomial().unwrap();
        assert!(p.is_monic());
        assert_eq!(p.coeffs()[0], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn syntax_error_has_position() {
        let e = polynomial_input("{\n  \"roots\": [[1, 0],, ]\n}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.column > 1);
    }

    #[test]
    fn key_errors() {
        let e = polynomial_input("{\"roots\": [[1,0]],\n \"coeffs\": [[1,0],[1,0]]}").unwrap_err();
        assert_eq!((e.line, e.column), (2, 2));
        assert!(polynomial_input("{}").is_err());
        assert!(polynomial_input(r#"{"nodes": [[1,0]]}"#).is_err());
        assert!(polynomial_input(r#"{"bogus": 1}"#).is_err());
        assert!(polynomial_input(r#"{"roots": []}"#).is_err());
        assert!(polynomial_input(r#"{"coeffs": [[3,0]]}"#).is_err());
        assert!(nodes_input(r#"{"roots": [[1,0]]}"#).is_err());
    }

    #[test]
    fn problem3_lengths() {
        assert!(problem3_input(r#"{"nodes": [[1,0],[2,0]], "values": [[0,0],[0,0]]}"#).is_ok());
        let e = problem3_input(r#"{"nodes": [[1,0],[2,0]], "values": [[0,0]]}"#).unwrap_err();
        assert!(e.message.contains("values"));
    }
}
