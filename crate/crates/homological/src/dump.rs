//! Complex dump: a JSON index plus one matrix file per differential.

use std::fs;
use std::path::Path;

use exact_linalg::{read_matrix, write_matrix, Field};
use serde::{Deserialize, Serialize};

use crate::complex::ChainComplex;
use crate::HomError;

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ComplexIndex {
    pub field: String,
    /// Inclusive degree range `[lo, hi]`.
    pub degrees: [i32; 2],
    pub dims: Vec<usize>,
    /// `(k, file)` pairs: the file holds `d^k`.
    pub differentials: Vec<(i32, String)>,
}

/// Writes `complex.json` and `d<k>.mat` files into `dir`.
pub fn write_complex<F: Field>(c: &ChainComplex<F>, dir: &Path) -> Result<(), HomError> {
    fs::create_dir_all(dir)?;
    let mut diffs = Vec::new();
    for k in c.lo()..c.hi() {
        let name = format!("d{k}.mat");
        fs::write(dir.join(&name), write_matrix(c.d_ref(k).expect("interior degree")))?;
        diffs.push((k, name));
    }
    let idx = ComplexIndex {
        field: c.field().kind().token(),
        degrees: [c.lo(), c.hi()],
        dims: c.degrees().map(|k| c.dim(k)).collect(),
        differentials: diffs,
    };
    fs::write(dir.join("complex.json"), serde_json::to_string_pretty(&idx)?)?;
    Ok(())
}

pub fn read_complex<F: Field>(field: F, dir: &Path) -> Result<ChainComplex<F>, HomError> {
    let idx: ComplexIndex = serde_json::from_str(&fs::read_to_string(dir.join("complex.json"))?)?;
    if idx.field != field.kind().token() {
        return Err(HomError::Shape(format!("complex is over {}, not {}", idx.field, field.kind())));
    }
    let mut interior = Vec::new();
    for (k, name) in &idx.differentials {
        let m = read_matrix(field.clone(), &fs::read_to_string(dir.join(name))?).map_err(|e| HomError::Shape(format!("d{k}: {e}")))?;
        interior.push(m);
    }
    if idx.dims.is_empty() {
        return Ok(ChainComplex::zero(field));
    }
    ChainComplex::new(field, idx.degrees[0], idx.dims, interior)
}
