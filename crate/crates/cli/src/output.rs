//! Serialization helpers shared by every subcommand.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use gtlax_core::numerics::{CMat, HermitianMatrix};
use gtlax_core::orbit::OrbitSpec;
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::CliResult;

pub const SCHEMA_VERSION: u32 = 1;

/// Seventeen significant digits, so every `f64` round-trips.
pub fn fmt_f64(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        v.to_string()
    }
}

/// Pretty JSON whose floats are always written by [`fmt_f64`].
struct Float17<'a>(PrettyFormatter<'a>);

impl Formatter for Float17<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(fmt_f64(v).as_bytes())
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> CliResult<Vec<u8>> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Float17(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(buf)
}

/// A file when a path is given, stdout otherwise.
pub fn open_sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let bytes = to_json_bytes(value)?;
    let mut sink = open_sink(path)?;
    sink.write_all(&bytes)?;
    sink.flush()?;
    Ok(())
}

/// `out.csv` becomes `out.<suffix>`.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    path.with_extension(suffix)
}

#[derive(Serialize)]
pub struct SpecJson {
    pub n: usize,
    pub lambda: Vec<f64>,
    pub blocks: Vec<BlockJson>,
    pub orbit_dim: usize,
    pub half_dim: usize,
}

#[derive(Serialize)]
pub struct BlockJson {
    pub value: f64,
    pub multiplicity: usize,
}

impl From<&OrbitSpec> for SpecJson {
    fn from(s: &OrbitSpec) -> Self {
        Self {
            n: s.n,
            lambda: s.lambda.clone(),
            blocks: s
                .blocks
                .iter()
                .map(|&(value, multiplicity)| BlockJson { value, multiplicity })
                .collect(),
            orbit_dim: s.orbit_dim,
            half_dim: s.half_dim,
        }
    }
}

/// Row-major rows of `[re, im]` pairs.
pub fn complex_rows(m: &CMat) -> Vec<Vec<[f64; 2]>> {
    let n = m.dim();
    (0..n)
        .map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

pub fn hermitian_rows(m: &HermitianMatrix) -> Vec<Vec<[f64; 2]>> {
    complex_rows(m.as_cmat())
}

pub fn entry_name(j: usize, k: usize) -> String {
    format!("a[{j},{k}]")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        assert_eq!(fmt_f64(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
        let back: f64 = fmt_f64(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }

    #[test]
    fn json_floats_use_fixed_digits() {
        #[derive(Serialize)]
        struct T {
            x: f64,
            v: Vec<f64>,
        }
        let s = String::from_utf8(to_json_bytes(&T { x: 1.5, v: vec![0.25] }).unwrap()).unwrap();
        assert!(s.contains("\"x\": 1.5000000000000000e0"), "{s}");
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["v"][0].as_f64(), Some(0.25));
    }

    #[test]
    fn non_finite_floats_become_null() {
        let s = String::from_utf8(to_json_bytes(&vec![f64::NAN]).unwrap()).unwrap();
        assert!(s.contains("null"), "{s}");
    }
}
