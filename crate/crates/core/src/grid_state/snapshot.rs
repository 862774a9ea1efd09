use std::fs;
use std::path::Path;

use super::{FieldState, RadialGrid};
use crate::error::{Error, Result};

pub const SNAPSHOT_MAGIC: &[u8; 4] = b"EWM1";
pub const SNAPSHOT_VERSION: u32 = 1;

const HEADER_LEN: usize = 4 + 4 + 8 + 8 + 8;

/// Serialize a slice: magic, version, n_points, dR, time, then
/// v, v_T, r, r_T, Z, Z_T as little-endian f64.
pub fn encode_snapshot(s: &FieldState) -> Vec<u8> {
    let n = s.n();
    let mut buf = Vec::with_capacity(HEADER_LEN + 6 * 8 * n);
    buf.extend_from_slice(SNAPSHOT_MAGIC);
    buf.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(n as u64).to_le_bytes());
    buf.extend_from_slice(&s.grid.dr.to_le_bytes());
    buf.extend_from_slice(&s.time.to_le_bytes());
    for arr in [&s.v, &s.v_t, &s.r, &s.r_t, &s.z, &s.z_t] {
        for x in arr.iter() {
            buf.extend_from_slice(&x.to_le_bytes());
        }
    }
    buf
}

pub fn decode_snapshot(bytes: &[u8], path: &Path) -> Result<FieldState> {
    let bad = |message: String| Error::Snapshot {
        path: path.to_path_buf(),
        message,
    };
    if bytes.len() < HEADER_LEN {
        return Err(bad(format!("file too short ({} bytes)", bytes.len())));
    }
    if &bytes[0..4] != SNAPSHOT_MAGIC {
        return Err(bad("missing EWM1 magic".into()));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let u64_at = |o: usize| u64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != SNAPSHOT_VERSION {
        return Err(bad(format!("unsupported version {version}")));
    }
    let n = u64_at(8) as usize;
    let dr = f64_at(16);
    let time = f64_at(24);
    let expected = HEADER_LEN + 6 * 8 * n;
    if bytes.len() != expected {
        return Err(bad(format!(
            "expected {expected} bytes for {n} points, found {}",
            bytes.len()
        )));
    }
    let mut arrays = (0..6).map(|k| {
        let base = HEADER_LEN + k * 8 * n;
        (0..n).map(|i| f64_at(base + 8 * i)).collect::<Vec<f64>>()
    });
    let mut next = || arrays.next().unwrap();
    Ok(FieldState {
        time,
        grid: RadialGrid::new(n, dr),
        v: next(),
        v_t: next(),
        r: next(),
        r_t: next(),
        z: next(),
        z_t: next(),
    })
}

pub fn write_snapshot(path: &Path, s: &FieldState) -> Result<()> {
    fs::write(path, encode_snapshot(s))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<FieldState> {
    let bytes = fs::read(path)?;
    decode_snapshot(&bytes, path)
}
