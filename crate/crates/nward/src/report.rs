//! JSON encoding with full-precision floats.
//!
//! Reports are compared byte-for-byte across runs, so every float is
//! written with 17 significant digits in scientific notation: enough to
//! round-trip any f64 exactly, with one fixed formatting rule everywhere.
//! Output is single-line JSON; no timestamps or other run-varying data may
//! enter a report.

use serde::Serialize;
use serde_json::ser::Formatter;
use std::io;

use crate::error::{Error, Result};

/// Compact JSON formatter whose only deviation from the default is float
/// encoding: `{:.16e}` (17 significant digits, exponent form).
pub struct FullPrecision;

impl Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Serializes a value to single-line JSON with full-precision floats.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    value
        .serialize(&mut ser)
        .map_err(|e| Error::Config(format!("report encode: {e}")))?;
    String::from_utf8(out).map_err(|e| Error::Config(format!("report encode: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_exactly() {
        let values = [
            0.1,
            1.0 / 3.0,
            2f64.sqrt(),
            1e-300,
            -123456.789,
            0.0,
            101f64.sqrt() - 100f64.sqrt(),
        ];
        for &v in &values {
            let json = to_json_string(&v).unwrap();
            let back: f64 = serde_json::from_str(&json).unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v} -> {json}");
        }
    }

    #[test]
    fn integers_stay_integers() {
        #[derive(Serialize)]
        struct Mixed {
            count: usize,
            value: f64,
        }
        let json = to_json_string(&Mixed {
            count: 42,
            value: 2.0,
        })
        .unwrap();
        assert_eq!(json, "{\"count\":42,\"value\":2.0000000000000000e0}");
    }

    #[test]
    fn encoding_is_reproducible() {
        let value = vec![0.1, 0.2, 0.30000000000000004];
        assert_eq!(
            to_json_string(&value).unwrap(),
            to_json_string(&value).unwrap()
        );
    }
}
