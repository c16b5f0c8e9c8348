//! Binary sample dumps.
//!
//! Layout (little-endian): a 16-byte header holding a 4-byte magic, the
//! sample count as `u32` and the sample rate as `f64`, followed by the
//! samples as `f64`. Complex dumps interleave real and imaginary parts and
//! count complex samples. Each dump gets a plain-text `<path>.meta` sidecar
//! of `key = value` lines.

use std::fs;
use std::io;
use std::path::Path;

use num_complex::Complex64;

pub const MAGIC_REAL: [u8; 4] = *b"PLWR";
pub const MAGIC_COMPLEX: [u8; 4] = *b"PLWC";
pub const HEADER_LEN: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Dump {
    pub magic: [u8; 4],
    pub sample_rate: f64,
    /// Raw `f64` payload; interleaved for complex dumps.
    pub values: Vec<f64>,
}

impl Dump {
    pub fn real(&self) -> Option<&[f64]> {
        (self.magic == MAGIC_REAL).then_some(&self.values)
    }

    pub fn complex(&self) -> Option<Vec<Complex64>> {
        (self.magic == MAGIC_COMPLEX).then(|| {
            self.values
                .chunks_exact(2)
                .map(|c| Complex64::new(c[0], c[1]))
                .collect()
        })
    }
}

fn encode(magic: [u8; 4], count: usize, sample_rate: f64, values: &[f64]) -> io::Result<Vec<u8>> {
    let count = u32::try_from(count)
        .map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "too many samples for dump"))?;
    let mut buf = Vec::with_capacity(HEADER_LEN + 8 * values.len());
    buf.extend_from_slice(&magic);
    buf.extend_from_slice(&count.to_le_bytes());
    buf.extend_from_slice(&sample_rate.to_le_bytes());
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    Ok(buf)
}

pub fn encode_real(samples: &[f64], sample_rate: f64) -> io::Result<Vec<u8>> {
    encode(MAGIC_REAL, samples.len(), sample_rate, samples)
}

pub fn encode_complex(samples: &[Complex64], sample_rate: f64) -> io::Result<Vec<u8>> {
    let flat: Vec<f64> = samples.iter().flat_map(|c| [c.re, c.im]).collect();
    encode(MAGIC_COMPLEX, samples.len(), sample_rate, &flat)
}

pub fn decode(bytes: &[u8]) -> io::Result<Dump> {
    let bad = |msg: &str| io::Error::new(io::ErrorKind::InvalidData, msg.to_string());
    if bytes.len() < HEADER_LEN {
        return Err(bad("dump shorter than header"));
    }
    let magic: [u8; 4] = bytes[0..4].try_into().unwrap();
    let count = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let sample_rate = f64::from_le_bytes(bytes[8..16].try_into().unwrap());
    let per = match magic {
        MAGIC_REAL => 1,
        MAGIC_COMPLEX => 2,
        _ => return Err(bad("unknown dump magic")),
    };
    let payload = &bytes[HEADER_LEN..];
    if payload.len() != count * per * 8 {
        return Err(bad("payload length does not match header count"));
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Dump { magic, sample_rate, values })
}

fn write_with_meta(path: &Path, bytes: &[u8], meta: &[(&str, String)]) -> io::Result<()> {
    fs::write(path, bytes)?;
    write_meta(path, meta)
}

/// Writes the `<path>.meta` sidecar of `key = value` lines.
pub fn write_meta(path: &Path, meta: &[(&str, String)]) -> io::Result<()> {
    let mut text = String::new();
    for (k, v) in meta {
        text.push_str(&format!("{k} = {v}\n"));
    }
    let mut meta_path = path.as_os_str().to_owned();
    meta_path.push(".meta");
    fs::write(meta_path, text)
}

pub fn write_real(
    path: &Path,
    samples: &[f64],
    sample_rate: f64,
    meta: &[(&str, String)],
) -> io::Result<()> {
    let mut all = vec![
        ("kind", "real".to_string()),
        ("byte_order", "little-endian".to_string()),
        ("count", samples.len().to_string()),
        ("sample_rate_gsps", format!("{sample_rate}")),
    ];
    all.extend(meta.iter().cloned());
    write_with_meta(path, &encode_real(samples, sample_rate)?, &all)
}

pub fn write_complex(
    path: &Path,
    samples: &[Complex64],
    sample_rate: f64,
    meta: &[(&str, String)],
) -> io::Result<()> {
    let mut all = vec![
        ("kind", "complex".to_string()),
        ("byte_order", "little-endian".to_string()),
        ("count", samples.len().to_string()),
        ("sample_rate_gsps", format!("{sample_rate}")),
    ];
    all.extend(meta.iter().cloned());
    write_with_meta(path, &encode_complex(samples, sample_rate)?, &all)
}

pub fn read(path: &Path) -> io::Result<Dump> {
    decode(&fs::read(path)?)
}
