//! File formats: moduli, Whitney fields, point lists and atomic functionals.
//!
//! Every JSON argument may be given inline (text starting with `{` or `[`)
//! or as a path to a file.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use whitney_core::multi_index::MultiIndexSet;
use whitney_core::predual::Atom;
use whitney_core::{Modulus, MultiIndex, WhitneyField};

use crate::error::{input, CliResult};

fn is_inline(arg: &str) -> bool {
    matches!(arg.trim_start().chars().next(), Some('{') | Some('['))
}

fn read_text(path: &str, what: &str) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| input(format!("{what}: cannot read {path}: {e}")))
}

/// Parses inline JSON or the contents of a file into `T`.
pub fn load<T: for<'de> Deserialize<'de>>(arg: &str, what: &str) -> CliResult<T> {
    let text = if is_inline(arg) { arg.to_string() } else { read_text(arg, what)? };
    serde_json::from_str(&text).map_err(|e| input(format!("{what}: malformed JSON: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModulusSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub breakpoints: Option<Vec<(f64, f64)>>,
}

impl ModulusSpec {
    pub fn to_modulus(&self) -> CliResult<Modulus> {
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| input(format!("modulus kind {:?} needs {name:?}", self.kind)));
        Ok(match self.kind.as_str() {
            "linear" => Modulus::Linear,
            "power" => Modulus::power(need(self.exponent, "exponent")?)?,
            "capped" => Modulus::capped(need(self.exponent, "exponent")?, need(self.cap, "cap")?)?,
            "table" => {
                let b = self.breakpoints.clone().ok_or_else(|| input("modulus kind \"table\" needs \"breakpoints\""))?;
                Modulus::table(b)?
            }
            other => return Err(input(format!("unknown modulus kind {other:?}"))),
        })
    }

    pub fn from_modulus(m: &Modulus) -> Self {
        let mut spec = ModulusSpec { kind: String::new(), exponent: None, cap: None, breakpoints: None };
        match m {
            Modulus::Linear => spec.kind = "linear".into(),
            Modulus::Power { exponent } => {
                spec.kind = "power".into();
                spec.exponent = Some(*exponent);
            }
            Modulus::Capped { exponent, cap } => {
                spec.kind = "capped".into();
                spec.exponent = Some(*exponent);
                spec.cap = Some(*cap);
            }
            Modulus::Table { breakpoints } => {
                spec.kind = "table".into();
                spec.breakpoints = Some(breakpoints.clone());
            }
        }
        spec
    }
}

/// `None` means the linear modulus.
pub fn load_modulus(arg: Option<&str>) -> CliResult<Modulus> {
    match arg {
        None => Ok(Modulus::Linear),
        Some(a) => load::<ModulusSpec>(a, "modulus")?.to_modulus(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetEntry {
    pub alpha: Vec<u32>,
    pub value: f64,
}

/// JSON form of a Whitney field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldFile {
    pub k: usize,
    pub n: usize,
    pub points: Vec<Vec<f64>>,
    pub jets: Vec<Vec<JetEntry>>,
}

impl FieldFile {
    pub fn to_field(&self) -> CliResult<WhitneyField> {
        if self.n == 0 {
            return Err(input("field: n must be >= 1"));
        }
        if self.points.len() != self.jets.len() {
            return Err(input(format!("field: {} points but {} jets", self.points.len(), self.jets.len())));
        }
        let set = MultiIndexSet::new(self.n, self.k);
        let mut coeffs = Vec::with_capacity(self.jets.len());
        for (i, (p, jet)) in self.points.iter().zip(&self.jets).enumerate() {
            if p.len() != self.n {
                return Err(input(format!("field: point {i} has {} coordinates, expected {}", p.len(), self.n)));
            }
            let mut c = vec![None; set.len()];
            for e in jet {
                let alpha = MultiIndex::new(e.alpha.clone());
                let pos = set
                    .position(&alpha)
                    .ok_or_else(|| input(format!("field: point {i}: multi-index {alpha} is not of order <= {} in R^{}", self.k, self.n)))?;
                if c[pos].replace(e.value).is_some() {
                    return Err(input(format!("field: point {i}: multi-index {alpha} given twice")));
                }
            }
            let c = c
                .into_iter()
                .enumerate()
                .map(|(j, v)| v.ok_or_else(|| input(format!("field: point {i}: missing multi-index {}", set.get(j)))))
                .collect::<CliResult<Vec<f64>>>()?;
            coeffs.push(c);
        }
        Ok(WhitneyField::new(self.n, self.k, self.points.clone(), coeffs)?)
    }

    pub fn from_field(field: &WhitneyField) -> Self {
        let set = field.indices();
        FieldFile {
            k: field.order(),
            n: field.dim(),
            points: field.points().map(|p| p.to_vec()).collect(),
            jets: field
                .jets()
                .iter()
                .map(|j| {
                    set.iter()
                        .zip(j.coeffs())
                        .map(|(a, &value)| JetEntry { alpha: a.entries().to_vec(), value })
                        .collect()
                })
                .collect(),
        }
    }
}

/// Reads `x_1, ..., x_n, f` rows; a non-numeric first row is a header.
pub fn parse_csv_field(text: &str) -> CliResult<WhitneyField> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.as_bytes());
    let mut points = Vec::new();
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| input(format!("field CSV: {e}")))?;
        let parsed: Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        let row = match parsed {
            Ok(r) => r,
            Err(_) if line == 0 => continue,
            Err(e) => return Err(input(format!("field CSV: line {}: {e}", line + 1))),
        };
        if row.len() < 2 {
            return Err(input(format!("field CSV: line {}: need at least one coordinate and a value", line + 1)));
        }
        let (x, f) = row.split_at(row.len() - 1);
        points.push(x.to_vec());
        values.push(vec![f[0]]);
    }
    let n = points.first().map(Vec::len).ok_or_else(|| input("field CSV: no data rows"))?;
    if let Some(i) = points.iter().position(|p| p.len() != n) {
        return Err(input(format!("field CSV: row {} has {} coordinates, expected {n}", i + 1, points[i].len())));
    }
    Ok(WhitneyField::new(n, 0, points, values)?)
}

/// A field from inline JSON, a JSON file, or a `.csv` file (k = 0).
pub fn load_field(arg: &str) -> CliResult<WhitneyField> {
    let is_csv = !is_inline(arg) && Path::new(arg).extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        parse_csv_field(&read_text(arg, "field")?)
    } else {
        load::<FieldFile>(arg, "field")?.to_field()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointList {
    Bare(Vec<Vec<f64>>),
    Wrapped { points: Vec<Vec<f64>> },
}

impl PointList {
    pub fn into_points(self) -> Vec<Vec<f64>> {
        match self {
            PointList::Bare(p) | PointList::Wrapped { points: p } => p,
        }
    }
}

pub fn load_points(arg: &str, what: &str) -> CliResult<Vec<Vec<f64>>> {
    Ok(load::<PointList>(arg, what)?.into_points())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    Delta,
    Diff,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AtomSpec {
    #[serde(rename = "type")]
    pub kind: AtomKind,
    pub x: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<f64>>,
    pub alpha: Vec<u32>,
    pub coef: f64,
}

impl AtomSpec {
    pub fn to_atom(&self) -> CliResult<(Atom, f64)> {
        let alpha = MultiIndex::new(self.alpha.clone());
        let atom = match (self.kind, &self.y) {
            (AtomKind::Delta, None) => Atom::delta(self.x.clone(), alpha),
            (AtomKind::Diff, Some(y)) => Atom::difference(self.x.clone(), y.clone(), alpha),
            (AtomKind::Delta, Some(_)) => return Err(input("atoms: a delta atom takes no \"y\"")),
            (AtomKind::Diff, None) => return Err(input("atoms: a diff atom needs \"y\"")),
        };
        Ok((atom, self.coef))
    }

    pub fn from_atom(atom: &Atom, coef: f64) -> Self {
        match atom {
            Atom::Delta { x, alpha } => {
                AtomSpec { kind: AtomKind::Delta, x: x.clone(), y: None, alpha: alpha.entries().to_vec(), coef }
            }
            Atom::Difference { x, y, alpha } => AtomSpec {
                kind: AtomKind::Diff,
                x: x.clone(),
                y: Some(y.clone()),
                alpha: alpha.entries().to_vec(),
                coef,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_round_trip() {
        let text = r#"{"k":1,"n":1,"points":[[0.0],[1.0]],
            "jets":[[{"alpha":[0],"value":1.0},{"alpha":[1],"value":-0.5}],
                    [{"alpha":[1],"value":2.0},{"alpha":[0],"value":0.25}]]}"#;
        let field = load_field(text).unwrap();
        let back = FieldFile::from_field(&field);
        assert_eq!(back.to_field().unwrap(), field);
        assert_eq!(back.jets[1][0], JetEntry { alpha: vec![0], value: 0.25 });
    }

    #[test]
    fn missing_and_repeated_indices_are_rejected() {
        let missing = r#"{"k":1,"n":1,"points":[[0.0]],"jets":[[{"alpha":[0],"value":1.0}]]}"#;
        assert!(load_field(missing).unwrap_err().to_string().contains("missing multi-index (1)"));
        let twice = r#"{"k":0,"n":1,"points":[[0.0]],"jets":[[{"alpha":[0],"value":1.0},{"alpha":[0],"value":2.0}]]}"#;
        assert!(load_field(twice).unwrap_err().to_string().contains("given twice"));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = load_field("{\"k\": 0,\n \"n\": }").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
    }

    #[test]
    fn csv_with_and_without_header() {
        let a = parse_csv_field("x1,x2,f\n0,0,1\n1,0,2\n").unwrap();
        let b = parse_csv_field("0,0,1\n1,0,2\n").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(parse_csv_field("x,f\n0,1\n1,oops\n").is_err());
    }

    #[test]
    fn modulus_specs() {
        let m: ModulusSpec = serde_json::from_str(r#"{"kind":"capped","exponent":0.5,"cap":2}"#).unwrap();
        assert_eq!(m.to_modulus().unwrap(), Modulus::capped(0.5, 2.0).unwrap());
        assert_eq!(ModulusSpec::from_modulus(&m.to_modulus().unwrap()), m);
        let bad: ModulusSpec = serde_json::from_str(r#"{"kind":"power"}"#).unwrap();
        assert!(bad.to_modulus().is_err());
    }
}
