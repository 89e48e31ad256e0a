//! Plain-text matrix format.
//!
//! ```text
//! rows cols field
//! r c value
//! ...
//! ```
//! Entries are written row-major; parsing and re-writing is byte-identical.

use std::fmt::Write as _;

use crate::field::{Field, FieldKind};
use crate::sparse::SparseMatrix;
use crate::LinalgError;

pub fn write_matrix<F: Field>(m: &SparseMatrix<F>) -> String {
    let f = m.field();
    let mut s = format!("{} {} {}\n", m.rows(), m.cols(), f.kind().token());
    for (r, c, v) in m.triplets() {
        let _ = writeln!(s, "{r} {c} {}", f.fmt_elem(&v));
    }
    s
}

/// Reads only the header line.
pub fn read_header(text: &str) -> Result<(usize, usize, FieldKind), LinalgError> {
    let line = text.lines().next().ok_or_else(|| LinalgError::Parse("empty matrix file".into()))?;
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(LinalgError::Parse(format!("bad header `{line}`")));
    }
    let rows = parts[0].parse().map_err(|_| LinalgError::Parse(format!("bad header `{line}`")))?;
    let cols = parts[1].parse().map_err(|_| LinalgError::Parse(format!("bad header `{line}`")))?;
    Ok((rows, cols, FieldKind::parse(parts[2])?))
}

pub fn read_matrix<F: Field>(field: F, text: &str) -> Result<SparseMatrix<F>, LinalgError> {
    let (rows, cols, kind) = read_header(text)?;
    if kind != field.kind() {
        return Err(LinalgError::FieldMismatch { expected: field.kind(), found: kind });
    }
    let mut entries = Vec::new();
    for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(LinalgError::Parse(format!("bad entry `{line}`")));
        }
        let r: usize = parts[0].parse().map_err(|_| LinalgError::Parse(format!("bad entry `{line}`")))?;
        let c: usize = parts[1].parse().map_err(|_| LinalgError::Parse(format!("bad entry `{line}`")))?;
        entries.push((r, c, field.parse_elem(parts[2])?));
    }
    SparseMatrix::from_triplets(field, rows, cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn roundtrip_is_byte_exact() {
        let q = Rationals;
        let m = SparseMatrix::from_triplets(
            q,
            2,
            3,
            vec![(1, 2, q.parse_elem("-7/3").unwrap()), (0, 1, q.from_i64(5))],
        )
        .unwrap();
        let text = write_matrix(&m);
        assert_eq!(text, "2 3 rational\n0 1 5\n1 2 -7/3\n");
        let back = read_matrix(q, &text).unwrap();
        assert_eq!(back, m);
        assert_eq!(write_matrix(&back), text);
    }

    #[test]
    fn field_must_match() {
        let m = SparseMatrix::identity(PrimeField::F2, 2);
        let text = write_matrix(&m);
        assert!(read_matrix(PrimeField::new(3).unwrap(), &text).is_err());
    }
}
