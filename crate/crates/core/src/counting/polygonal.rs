//! Double surfaces whose point counts are square, hexagonal, octagonal and
//! decagonal numbers at `n = q`.

use serde::Serialize;

use crate::field::FiniteField;
use crate::poly::SurfaceSpec;

use super::{count_double_surface, Caps, CountError, Method};

/// `S_m(n) = n((m-2)n - (m-4))/2`.
pub fn polygonal_number(m: u64, n: u64) -> u64 {
    let (m, n) = (m as i128, n as i128);
    (n * ((m - 2) * n - (m - 4)) / 2) as u64
}

/// Gonality realized by each row: 4, 6, 8, 10.
pub fn row_gonality(row: u8) -> Result<u64, CountError> {
    match row {
        1..=4 => Ok(2 * row as u64 + 2),
        _ => Err(CountError::BadRow(row)),
    }
}

/// `(P(0,Z), Q(0,Y,Z))` of each row.
fn row_pair(row: u8, q: u32) -> Result<(String, &'static str), CountError> {
    let field_poly = format!("Z^{q} - Z");
    Ok(match row {
        1 => ("Z^2".to_string(), "Y^2"),
        2 => (field_poly, "Y^2"),
        3 => (field_poly, "Y^2 - Z*Y"),
        4 => (field_poly, "Y^4 - Y + Z*(Y^2 - Y)"),
        _ => return Err(CountError::BadRow(row)),
    })
}

/// The row's surface with `d1 = 2`, `d2 = 3`. The padding terms `X*Z` and
/// `X*Y*Z` vanish at `X = 0`.
pub fn polygonal_row(field: &FiniteField, row: u8) -> Result<SurfaceSpec, CountError> {
    let (p0, q0) = row_pair(row, field.q())?;
    let p = format!("{p0} + X*Z");
    let q = format!("{q0} + X*Y*Z");
    Ok(SurfaceSpec::parse_double(field, 2, 3, &p, &q)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PolygonalCheck {
    pub row: u8,
    pub q: u64,
    pub count: u64,
    pub expected: u64,
    pub matched: bool,
}

/// Counts the row's surface and compares it with `S_m(q)`.
pub fn verify_polygonal_family(
    row: u8,
    field: &FiniteField,
    caps: &Caps,
) -> Result<PolygonalCheck, CountError> {
    let m = row_gonality(row)?;
    let spec = polygonal_row(field, row)?;
    let report = count_double_surface(&spec, field, &Method::ALL, caps)?;
    let q = field.q() as u64;
    let expected = polygonal_number(m, q);
    Ok(PolygonalCheck {
        row,
        q,
        count: report.total_points,
        expected,
        matched: report.agreement && report.total_points == expected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygonal_numbers() {
        assert_eq!(polygonal_number(4, 5), 25);
        assert_eq!(polygonal_number(6, 5), 45);
        for m in 3..20 {
            assert_eq!(polygonal_number(m, 1), 1);
            assert_eq!(polygonal_number(m, 0), 0);
        }
        assert_eq!(polygonal_number(3, 4), 10);
    }

    #[test]
    fn rows_match() {
        let caps = Caps::default();
        for (row, q, total) in [
            (1, 7, 49),
            (4, 3, 27),
            (3, 2, 8),
            (2, 7, 91),
            (4, 2, 10),
            (3, 5, 65),
        ] {
            let f = FiniteField::from_order(q, 1 << 20).unwrap();
            let c = verify_polygonal_family(row, &f, &caps).unwrap();
            assert_eq!(
                (c.count, c.expected, c.matched),
                (total, total, true),
                "row {row} q {q}"
            );
        }
        let f = FiniteField::new(3, 1).unwrap();
        assert_eq!(
            verify_polygonal_family(5, &f, &caps),
            Err(CountError::BadRow(5))
        );
    }
}
