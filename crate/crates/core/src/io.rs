//! File formats and number formatting.
//!
//! Channels and operators are JSON documents. A matrix is a row-major list
//! of `[re, im]` pairs; a list of rows of pairs is accepted on input too.
//!
//! ```json
//! {"dim_in": 2, "dim_out": 2, "kraus": [[[1,0],[0,0],[0,0],[1,0]]]}
//! {"matrix": [[0.5,0],[0,0],[0,0],[0.5,0]], "dims": [2]}
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::channel::KrausChannel;
use crate::operator::{BipartiteState, CMat, DensityOperator, HermitianOperator, PositiveOperator};
use crate::{Error, Result};

/// `x` with 9 significant digits, in the style of C's `%.9g`.
pub fn format_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..9).contains(&exp) {
        let decimals = (8 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

fn parse_err(field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        field: field.to_string(),
        message: message.into(),
    }
}

fn get<'a>(obj: &'a Value, field: &str) -> Result<&'a Value> {
    obj.get(field).ok_or_else(|| parse_err(field, "missing"))
}

fn as_dim(v: &Value, field: &str) -> Result<usize> {
    match v.as_u64() {
        Some(n) if n > 0 => Ok(n as usize),
        _ => Err(parse_err(field, format!("expected a positive integer, got {v}"))),
    }
}

fn entry(v: &Value, field: &str) -> Result<num_complex::Complex64> {
    let pair = v
        .as_array()
        .filter(|p| p.len() == 2)
        .ok_or_else(|| parse_err(field, format!("expected an [re, im] pair, got {v}")))?;
    let re = pair[0].as_f64();
    let im = pair[1].as_f64();
    match (re, im) {
        (Some(re), Some(im)) if re.is_finite() && im.is_finite() => Ok(num_complex::Complex64::new(re, im)),
        _ => Err(parse_err(field, format!("non-numeric entry {v}"))),
    }
}

/// A matrix of the given shape from either encoding; `rows = None` infers a
/// square shape.
fn parse_matrix(v: &Value, field: &str, shape: Option<(usize, usize)>) -> Result<CMat> {
    let items = v
        .as_array()
        .ok_or_else(|| parse_err(field, "expected a list of [re, im] pairs"))?;
    let nested = items
        .first()
        .and_then(|x| x.as_array())
        .and_then(|x| x.first())
        .is_some_and(|x| x.is_array());
    let flat: Vec<&Value> = if nested {
        let width = items[0].as_array().map_or(0, |r| r.len());
        let mut out = Vec::new();
        for row in items {
            let row = row
                .as_array()
                .filter(|r| r.len() == width)
                .ok_or_else(|| parse_err(field, "rows of unequal length"))?;
            out.extend(row.iter());
        }
        out
    } else {
        items.iter().collect()
    };
    let (rows, cols) = match shape {
        Some(s) => s,
        None => {
            let d = (flat.len() as f64).sqrt().round() as usize;
            (d, d)
        }
    };
    if rows == 0 || flat.len() != rows * cols {
        return Err(parse_err(
            field,
            format!("{} entries, expected {rows}x{cols} = {}", flat.len(), rows * cols),
        ));
    }
    let values = flat.iter().map(|x| entry(x, field)).collect::<Result<Vec<_>>>()?;
    Ok(CMat::from_row_iterator(rows, cols, values))
}

fn matrix_json(m: &CMat) -> Value {
    let mut out = Vec::with_capacity(m.len());
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[(i, j)];
            out.push(json!([z.re, z.im]));
        }
    }
    Value::Array(out)
}

pub fn parse_channel(text: &str) -> Result<KrausChannel> {
    let doc: Value = serde_json::from_str(text)?;
    let dim_in = as_dim(get(&doc, "dim_in")?, "dim_in")?;
    let dim_out = as_dim(get(&doc, "dim_out")?, "dim_out")?;
    let list = get(&doc, "kraus")?
        .as_array()
        .ok_or_else(|| parse_err("kraus", "expected a list of matrices"))?;
    if list.is_empty() {
        return Err(parse_err("kraus", "empty list"));
    }
    let kraus = list
        .iter()
        .map(|m| parse_matrix(m, "kraus", Some((dim_out, dim_in))))
        .collect::<Result<Vec<_>>>()?;
    KrausChannel::new(dim_in, dim_out, kraus)
}

pub fn channel_to_json(phi: &KrausChannel) -> String {
    let doc = json!({
        "dim_in": phi.dim_in(),
        "dim_out": phi.dim_out(),
        "kraus": phi.kraus().iter().map(matrix_json).collect::<Vec<_>>(),
    });
    serde_json::to_string_pretty(&doc).expect("serializable")
}

/// Operator document: the matrix and the declared factor dimensions
/// (defaulting to a single factor).
fn parse_operator_doc(text: &str) -> Result<(CMat, Vec<usize>)> {
    let doc: Value = serde_json::from_str(text)?;
    let m = parse_matrix(get(&doc, "matrix")?, "matrix", None)?;
    let dims = match doc.get("dims") {
        None => vec![m.nrows()],
        Some(v) => {
            let list = v
                .as_array()
                .ok_or_else(|| parse_err("dims", "expected a list of integers"))?;
            let dims = list.iter().map(|d| as_dim(d, "dims")).collect::<Result<Vec<_>>>()?;
            if dims.iter().product::<usize>() != m.nrows() {
                return Err(parse_err(
                    "dims",
                    format!("{dims:?} do not multiply to {}", m.nrows()),
                ));
            }
            dims
        }
    };
    Ok((m, dims))
}

pub fn parse_state(text: &str) -> Result<DensityOperator> {
    let (m, _) = parse_operator_doc(text)?;
    DensityOperator::from_matrix(m)
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteState> {
    let (m, dims) = parse_operator_doc(text)?;
    BipartiteState::new(DensityOperator::from_matrix(m)?, dims)
}

pub fn parse_positive(text: &str) -> Result<PositiveOperator> {
    let (m, _) = parse_operator_doc(text)?;
    PositiveOperator::from_matrix(m)
}

pub fn parse_hermitian(text: &str) -> Result<HermitianOperator> {
    let (m, _) = parse_operator_doc(text)?;
    HermitianOperator::new(m)
}

pub fn operator_to_json(m: &CMat, dims: Option<&[usize]>) -> String {
    let mut doc = json!({ "matrix": matrix_json(m) });
    if let Some(d) = dims {
        doc["dims"] = json!(d);
    }
    serde_json::to_string_pretty(&doc).expect("serializable")
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

pub fn read_channel(path: &Path) -> Result<KrausChannel> {
    parse_channel(&read(path)?)
}

pub fn read_state(path: &Path) -> Result<DensityOperator> {
    parse_state(&read(path)?)
}

pub fn read_positive(path: &Path) -> Result<PositiveOperator> {
    parse_positive(&read(path)?)
}

pub fn read_hermitian(path: &Path) -> Result<HermitianOperator> {
    parse_hermitian(&read(path)?)
}

/// Seeded random inputs used when a sweep configuration names no files.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RandomInputs {
    pub dim_in: Option<usize>,
    pub dim_out: Option<usize>,
    pub n_kraus: Option<usize>,
    pub rank: Option<usize>,
}

/// Sweep configuration document. Relative paths resolve against the
/// directory of the configuration file.
#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub lemma: Option<String>,
    pub channel: Option<PathBuf>,
    pub state: Option<PathBuf>,
    /// Positive operators `A` and `B` for the relative-entropy sweeps.
    pub a: Option<PathBuf>,
    pub b: Option<PathBuf>,
    pub hamiltonian: Option<PathBuf>,
    /// Ranks of the coordinate projector ladder.
    pub ranks: Option<Vec<usize>>,
    pub betas: Option<Vec<f64>>,
    pub lambdas: Option<Vec<f64>>,
    pub count: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub random: RandomInputs,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    /// Reads a configuration and makes its paths absolute.
    pub fn load(path: &Path) -> Result<Self> {
        let mut cfg = Self::parse(&read(path)?)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for p in [
            &mut cfg.channel,
            &mut cfg.state,
            &mut cfg.a,
            &mut cfg.b,
            &mut cfg.hamiltonian,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::random_channel;
    use crate::operator::max_norm;
    use crate::random;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(1.3862943611198906), "1.38629436");
        assert_eq!(format_sig(-0.1308121), "-0.1308121");
        assert_eq!(format_sig(1e-12), "1e-12");
        assert_eq!(format_sig(2.5e-7), "2.5e-7");
        assert_eq!(format_sig(123456789012.0), "1.23456789e11");
        assert_eq!(format_sig(42.0), "42");
        assert_eq!(format_sig(9.9999999999), "10");
        assert_eq!(format_sig(f64::INFINITY), "inf");
    }

    #[test]
    fn channel_round_trip() {
        let phi = random_channel(2, 3, 2, 1).unwrap();
        let back = parse_channel(&channel_to_json(&phi)).unwrap();
        assert_eq!(back.n_kraus(), 2);
        assert!(max_norm(&(back.choi() - phi.choi())) < 1e-15);
    }

    #[test]
    fn state_round_trip_and_nested_rows() {
        let rho = random::density(3, 2, 4);
        let back = parse_state(&operator_to_json(rho.matrix(), None)).unwrap();
        assert!(max_norm(&(back.matrix() - rho.matrix())) < 1e-15);

        let nested = r#"{"matrix": [[[0.5,0],[0,0]],[[0,0],[0.5,0]]]}"#;
        assert_eq!(parse_state(nested).unwrap().dim(), 2);

        let bip = r#"{"matrix": [[0.25,0],[0,0],[0,0],[0,0],[0,0],[0.25,0],[0,0],[0,0],[0,0],[0,0],[0.25,0],[0,0],[0,0],[0,0],[0,0],[0.25,0]], "dims": [2,2]}"#;
        assert_eq!(parse_bipartite(bip).unwrap().dims(), &[2, 2]);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = r#"{"dim_in": 2, "dim_out": 2, "kraus": [[[1,0],[0,0],[0,0]]]}"#;
        match parse_channel(bad) {
            Err(Error::Parse { field, .. }) => assert_eq!(field, "kraus"),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"dim_in": 2, "dim_out": 2, "kraus": "identity"}"#;
        assert!(matches!(parse_channel(bad), Err(Error::Parse { field, .. }) if field == "kraus"));
        let bad = r#"{"dim_out": 2, "kraus": []}"#;
        assert!(matches!(parse_channel(bad), Err(Error::Parse { field, .. }) if field == "dim_in"));
        let bad = r#"{"matrix": [[1,0],[0,0],[0,0],[0,0]], "dims": [3]}"#;
        assert!(matches!(parse_state(bad), Err(Error::Parse { field, .. }) if field == "dims"));
    }

    #[test]
    fn non_trace_preserving_channel_is_rejected() {
        let bad = r#"{"dim_in": 2, "dim_out": 2, "kraus": [[[0.9,0],[0,0],[0,0],[1,0]]]}"#;
        assert!(matches!(parse_channel(bad), Err(Error::NotTracePreserving(_))));
    }

    #[test]
    fn sweep_config_rejects_unknown_fields() {
        assert!(SweepConfig::parse(r#"{"lemma": "lemma1", "ranks": [1, 2]}"#).is_ok());
        assert!(matches!(SweepConfig::parse(r#"{"lema": "x"}"#), Err(Error::Config(_))));
    }
}
