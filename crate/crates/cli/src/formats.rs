//! Coefficient (JSON) and sample (CSV) files.
//!
//! Coefficients are a JSON array of `{"m": [..], "re": .., "im": ..}`
//! records. Samples are CSV with a header `x1,…,xn,re,im`; on discrete grids
//! the coordinates are integer numerators `k` of `s = k/N`.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use symxform_core::discrete_ft::{DiscreteCoefficients, SpectrumSet};
use symxform_core::fourier_series::CoefficientMap;
use symxform_core::{Symmetry, C64};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientRecord {
    pub m: Vec<i64>,
    pub re: f64,
    pub im: f64,
}

impl CoefficientRecord {
    pub fn value(&self) -> C64 {
        C64::new(self.re, self.im)
    }
}

pub fn read_coefficients<R: Read>(reader: R) -> Result<Vec<CoefficientRecord>, CliError> {
    serde_json::from_reader(reader).map_err(|e| CliError::Format(format!("coefficient file: {e}")))
}

pub fn write_coefficients<W: Write>(mut writer: W, records: &[CoefficientRecord]) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut writer, records).map_err(|e| CliError::Format(e.to_string()))?;
    writeln!(writer)?;
    Ok(())
}

pub fn records_from_map(map: &CoefficientMap) -> Vec<CoefficientRecord> {
    // descending, like the discrete spectra
    let mut records: Vec<CoefficientRecord> = map
        .iter()
        .map(|(m, c)| CoefficientRecord {
            m: m.to_vec(),
            re: c.re,
            im: c.im,
        })
        .collect();
    records.reverse();
    records
}

pub fn map_from_records(records: &[CoefficientRecord], symmetry: Symmetry) -> Result<CoefficientMap, CliError> {
    let mut map = CoefficientMap::new(symmetry);
    for r in records {
        map.insert(r.m.clone(), r.value())?;
    }
    Ok(map)
}

pub fn records_from_discrete(coeffs: &DiscreteCoefficients) -> Vec<CoefficientRecord> {
    coeffs
        .iter()
        .map(|(m, c)| CoefficientRecord {
            m: m.to_vec(),
            re: c.re,
            im: c.im,
        })
        .collect()
}

/// Places records at their spectrum positions; every spectrum entry must be
/// present exactly once.
pub fn discrete_from_records(
    records: &[CoefficientRecord],
    spectrum: &SpectrumSet,
) -> Result<DiscreteCoefficients, CliError> {
    let mut values: Vec<Option<C64>> = vec![None; spectrum.len()];
    for r in records {
        let pos = spectrum
            .position(&r.m)
            .ok_or_else(|| CliError::Format(format!("weight {:?} is not in the spectrum", r.m)))?;
        if values[pos].replace(r.value()).is_some() {
            return Err(CliError::Format(format!("weight {:?} appears twice", r.m)));
        }
    }
    let values = values
        .into_iter()
        .zip(spectrum.weights())
        .map(|(v, m)| v.ok_or_else(|| CliError::Format(format!("missing coefficient for {m:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(DiscreteCoefficients::new(spectrum.clone(), values)?)
}

/// Sampled values, one row per point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleTable {
    pub points: Vec<Vec<f64>>,
    pub values: Vec<C64>,
}

impl SampleTable {
    pub fn dim(&self) -> Option<usize> {
        self.points.first().map(Vec::len)
    }
}

fn header(n: usize) -> Vec<String> {
    let mut h: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    h.push("re".into());
    h.push("im".into());
    h
}

pub fn read_samples<R: Read>(reader: R) -> Result<SampleTable, CliError> {
    let mut csv = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let head = csv.headers().map_err(|e| CliError::Format(e.to_string()))?.clone();
    let n = head.len().checked_sub(2).filter(|&n| n > 0).ok_or_else(|| {
        CliError::Format("sample header must be x1,…,xn,re,im".into())
    })?;
    let expected = header(n);
    if head.iter().ne(expected.iter().map(String::as_str)) {
        return Err(CliError::Format(format!("sample header must be {}", expected.join(","))));
    }
    let mut table = SampleTable {
        points: Vec::new(),
        values: Vec::new(),
    };
    for (line, row) in csv.records().enumerate() {
        let row = row.map_err(|e| CliError::Format(e.to_string()))?;
        let nums = row
            .iter()
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<f64>, _>>()
            .map_err(|e| CliError::Format(format!("sample row {}: {e}", line + 2)))?;
        table.points.push(nums[..n].to_vec());
        table.values.push(C64::new(nums[n], nums[n + 1]));
    }
    Ok(table)
}

pub fn write_samples<W: Write>(writer: W, table: &SampleTable) -> Result<(), CliError> {
    let n = table.dim().unwrap_or(0);
    let mut csv = csv::Writer::from_writer(writer);
    let io = |e: csv::Error| CliError::Format(e.to_string());
    csv.write_record(header(n)).map_err(io)?;
    for (p, v) in table.points.iter().zip(&table.values) {
        let mut row: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        row.push(v.re.to_string());
        row.push(v.im.to_string());
        csv.write_record(&row).map_err(io)?;
    }
    csv.flush()?;
    Ok(())
}

/// Converts sample coordinates to integer numerators, rejecting anything
/// that is not an integer.
pub fn numerators(point: &[f64]) -> Result<Vec<i64>, CliError> {
    point
        .iter()
        .map(|&c| {
            if c.fract() == 0.0 && c.is_finite() {
                Ok(c as i64)
            } else {
                Err(CliError::Format(format!("grid coordinate {c} is not an integer numerator")))
            }
        })
        .collect()
}
