//! Debug export of sampled point pairs.

use std::io::Write;

use crate::points::{ProjectivePoint, SpherePoint};
use crate::GeomError;

/// Writes one row per pair: the coordinates of `x`, of `y` (complex entries
/// split into real and imaginary columns) and their distance.
pub fn write_pairs_csv<W: Write>(out: W, rows: &[(Vec<f64>, Vec<f64>, f64)]) -> Result<(), GeomError> {
    let err = |e: csv::Error| GeomError::Csv(e.to_string());
    let mut w = csv::Writer::from_writer(out);
    if let Some((x, y, _)) = rows.first() {
        let mut header: Vec<String> = (0..x.len()).map(|i| format!("x{i}")).collect();
        header.extend((0..y.len()).map(|i| format!("y{i}")));
        header.push("dist".into());
        w.write_record(&header).map_err(err)?;
    }
    for (x, y, d) in rows {
        let rec: Vec<String> = x.iter().chain(y).chain(std::iter::once(d)).map(|v| v.to_string()).collect();
        w.write_record(&rec).map_err(err)?;
    }
    w.flush().map_err(|e| GeomError::Csv(e.to_string()))
}

pub fn sphere_row(x: &SpherePoint, y: &SpherePoint) -> (Vec<f64>, Vec<f64>, f64) {
    (x.coords().to_vec(), y.coords().to_vec(), crate::dist_sphere(x, y))
}

pub fn cpn_row(x: &ProjectivePoint, y: &ProjectivePoint) -> (Vec<f64>, Vec<f64>, f64) {
    let split = |p: &ProjectivePoint| p.coords().iter().flat_map(|z| [z.re, z.im]).collect();
    (split(x), split(y), crate::dist_cpn(x, y))
}
