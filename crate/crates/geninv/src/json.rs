//! Numbers are written with 17 significant digits (`{:.16e}`), which is
//! enough for every `f64` to parse back to the same bits. Non-finite values
//! are written as `null` and read back as NaN.

use geninv_core::{ComplexMatrix, C64};
use serde::de::Deserializer;
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num(x)
    }
}

fn raw(x: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{x:.16e}")).expect("exponent notation is valid JSON")
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            raw(self.0).serialize(s)
        } else {
            s.serialize_none()
        }
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(Num(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN)))
    }
}

/// Serializes a matrix as rows of `[re, im]` pairs.
pub struct MatrixRef<'a>(pub &'a ComplexMatrix);

struct Row<'a>(&'a ComplexMatrix, usize);

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.cols()))?;
        for j in 0..self.0.cols() {
            let z = self.0.get(self.1, j);
            seq.serialize_element(&[Num(z.re), Num(z.im)])?;
        }
        seq.end()
    }
}

impl Serialize for MatrixRef<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.rows()))?;
        for i in 0..self.0.rows() {
            seq.serialize_element(&Row(self.0, i))?;
        }
        seq.end()
    }
}

/// Owned form used by report DTOs.
#[derive(Clone, Debug, PartialEq)]
pub struct JsonMatrix(pub ComplexMatrix);

impl Serialize for JsonMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRef(&self.0).serialize(s)
    }
}

impl<'de> Deserialize<'de> for JsonMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<[f64; 2]>>::deserialize(d)?;
        matrix_from_rows(&rows).map(JsonMatrix).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn matrix_from_rows(rows: &[Vec<[f64; 2]>]) -> Result<ComplexMatrix, String> {
    let m = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    if m == 0 || n == 0 {
        return Err("matrix has no entries".into());
    }
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(format!("row {i} has {} entries, expected {n}", rows[i].len()));
    }
    let entries = rows.iter().flatten().map(|&[re, im]| C64::new(re, im)).collect();
    ComplexMatrix::from_row_major(m, n, entries).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_round_trip_bit_exactly() {
        for x in [0.1, -0.0, 1.0 / 3.0, f64::MIN_POSITIVE, 5e-324, f64::MAX, -2.5e300, 1e-17] {
            let s = serde_json::to_string(&Num(x)).unwrap();
            let back: Num = serde_json::from_str(&s).unwrap();
            assert_eq!(back.0.to_bits(), x.to_bits(), "{s}");
        }
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(serde_json::to_string(&Num(f64::NAN)).unwrap(), "null");
        assert_eq!(serde_json::to_string(&Num(f64::INFINITY)).unwrap(), "null");
        let back: Num = serde_json::from_str("null").unwrap();
        assert!(back.0.is_nan());
    }

    #[test]
    fn matrix_layout() {
        let a = ComplexMatrix::from_row_major(1, 2, vec![C64::new(1.0, 0.0), C64::new(0.0, -2.0)]).unwrap();
        let s = serde_json::to_string(&MatrixRef(&a)).unwrap();
        assert_eq!(s, "[[[1.0000000000000000e0,0.0000000000000000e0],[0.0000000000000000e0,-2.0000000000000000e0]]]");
        let back: JsonMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, a);
    }

    #[test]
    fn ragged_and_empty_rows_are_rejected() {
        assert!(serde_json::from_str::<JsonMatrix>("[[[1,0]],[[1,0],[2,0]]]").is_err());
        assert!(serde_json::from_str::<JsonMatrix>("[]").is_err());
        assert!(serde_json::from_str::<JsonMatrix>("[[]]").is_err());
        assert!(serde_json::from_str::<JsonMatrix>("[[[1,0,3]]]").is_err());
    }
}
