use std::io::{Read, Write};

use super::field::PiecewiseField;
use super::mesh::Mesh1D;
use super::poly::Quadratic;
use crate::error::{Error, Result};

const HEADER: [&str; 5] = ["breakpoint_left", "breakpoint_right", "c0", "c1", "c2"];

/// One row per cell: `breakpoint_left,breakpoint_right,c0,c1,c2`, polynomial in `x - left`.
pub fn write_field_csv<W: Write>(field: &PiecewiseField, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Parse(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for ((l, r), q) in field.mesh().cells().zip(field.cells()) {
        let [c0, c1, c2] = q.coeffs();
        w.write_record([l, r, c0, c1, c2].map(|v| v.to_string())).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_field_csv<R: Read>(input: R) -> Result<PiecewiseField> {
    let mut rd = csv::Reader::from_reader(input);
    let mut points = Vec::new();
    let mut cells = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        let vals = rec
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Parse(format!("row {}: {e}", i + 1)))?;
        if vals.len() != 5 {
            return Err(Error::Parse(format!(
                "row {}: expected 5 columns, got {}",
                i + 1,
                vals.len()
            )));
        }
        match points.last() {
            None => points.push(vals[0]),
            Some(&p) if p != vals[0] => return Err(Error::Parse(format!("row {}: cell does not start at {p}", i + 1))),
            _ => {}
        }
        points.push(vals[1]);
        cells.push(Quadratic([vals[2], vals[3], vals[4]]));
    }
    PiecewiseField::new(Mesh1D::new(points)?, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let f = PiecewiseField::piecewise_linear(&[0.0, 0.1, 0.7, 1.0], &[0.0, -1.0 / 3.0, 2.5, 0.0]).unwrap();
        let mut buf = Vec::new();
        write_field_csv(&f, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("breakpoint_left,breakpoint_right,c0,c1,c2\n"));
        assert_eq!(read_field_csv(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn gap_between_rows_is_rejected() {
        let text = "breakpoint_left,breakpoint_right,c0,c1,c2\n0,0.5,0,0,0\n0.6,1,0,0,0\n";
        assert!(read_field_csv(text.as_bytes()).is_err());
    }
}
