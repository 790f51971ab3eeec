//! On-disk formats shared across the pipeline.
//!
//! Two primitives cover everything:
//!
//! * flat little-endian `f32` arrays (`.f32` files) for raw samples,
//!   ground-truth latents, and feature frames;
//! * a versioned binary container (`EEGC` magic, JSON header, named `f32`
//!   payload arrays) for model checkpoints, the KPCA model, and the LM.
//!
//! Values are computed in `f64` and stored as `f32`; round-tripping the
//! stored bytes is exact.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{de::DeserializeOwned, Serialize};

use crate::{Error, Result};

/// Write a slice of `f64` values as little-endian `f32`.
pub fn write_f32_file(path: &Path, values: &[f64]) -> Result<()> {
    let mut bytes = Vec::with_capacity(values.len() * 4);
    for &v in values {
        bytes.extend_from_slice(&(v as f32).to_le_bytes());
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// Read a little-endian `f32` file into `f64` values.
pub fn read_f32_file(path: &Path) -> Result<Vec<f64>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    if bytes.len() % 4 != 0 {
        return Err(Error::format(
            path,
            format!("length {} is not a multiple of 4", bytes.len()),
        ));
    }
    Ok(bytes
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
        .collect())
}

const MAGIC: &[u8; 4] = b"EEGC";
pub const CONTAINER_VERSION: u32 = 1;

/// A named `f32` array inside a container payload.
#[derive(Debug, Clone, serde::Serialize, serde::Deserialize)]
pub struct ArrayEntry {
    pub name: String,
    pub len: usize,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct ContainerHeader<H> {
    version: u32,
    kind: String,
    meta: H,
    arrays: Vec<ArrayEntry>,
}

/// Serialize a container: magic, header length, JSON header, then each
/// array as little-endian `f32` in header order.
pub fn write_container<H: Serialize>(
    path: &Path,
    kind: &str,
    meta: &H,
    arrays: &[(String, &[f64])],
) -> Result<()> {
    let header = ContainerHeader {
        version: CONTAINER_VERSION,
        kind: kind.to_string(),
        meta,
        arrays: arrays
            .iter()
            .map(|(name, data)| ArrayEntry {
                name: name.clone(),
                len: data.len(),
            })
            .collect(),
    };
    let header_json = serde_json::to_vec(&header)
        .map_err(|e| Error::format(path, format!("header encode: {e}")))?;

    let mut out = Vec::new();
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&(header_json.len() as u32).to_le_bytes());
    out.extend_from_slice(&header_json);
    for (_, data) in arrays {
        for &v in *data {
            out.extend_from_slice(&(v as f32).to_le_bytes());
        }
    }
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

/// Deserialized container: header metadata plus named arrays widened to `f64`.
pub struct Container<H> {
    pub kind: String,
    pub meta: H,
    pub arrays: Vec<(String, Vec<f64>)>,
}

impl<H> Container<H> {
    pub fn array(&self, name: &str) -> Result<&[f64]> {
        self.arrays
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d.as_slice())
            .ok_or_else(|| Error::Invariant(format!("container missing array `{name}`")))
    }
}

pub fn read_container<H: DeserializeOwned>(path: &Path, expect_kind: &str) -> Result<Container<H>> {
    let mut file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut magic = [0u8; 4];
    file.read_exact(&mut magic).map_err(|e| Error::io(path, e))?;
    if &magic != MAGIC {
        return Err(Error::format(path, "bad magic (not a container file)"));
    }
    let mut len_bytes = [0u8; 4];
    file.read_exact(&mut len_bytes)
        .map_err(|e| Error::io(path, e))?;
    let header_len = u32::from_le_bytes(len_bytes) as usize;
    let mut header_json = vec![0u8; header_len];
    file.read_exact(&mut header_json)
        .map_err(|e| Error::io(path, e))?;
    let header: ContainerHeader<H> = serde_json::from_slice(&header_json)
        .map_err(|e| Error::format(path, format!("header decode: {e}")))?;
    if header.version != CONTAINER_VERSION {
        return Err(Error::UnsupportedVersion {
            found: header.version,
            supported: CONTAINER_VERSION,
        });
    }
    if header.kind != expect_kind {
        return Err(Error::format(
            path,
            format!("kind `{}` where `{expect_kind}` was expected", header.kind),
        ));
    }
    let mut arrays = Vec::with_capacity(header.arrays.len());
    for entry in &header.arrays {
        let mut bytes = vec![0u8; entry.len * 4];
        file.read_exact(&mut bytes).map_err(|e| Error::io(path, e))?;
        let data = bytes
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes([c[0], c[1], c[2], c[3]]) as f64)
            .collect();
        arrays.push((entry.name.clone(), data));
    }
    let mut rest = Vec::new();
    file.read_to_end(&mut rest).map_err(|e| Error::io(path, e))?;
    if !rest.is_empty() {
        return Err(Error::format(
            path,
            format!("{} trailing bytes after payload", rest.len()),
        ));
    }
    Ok(Container {
        kind: header.kind,
        meta: header.meta,
        arrays,
    })
}

/// Write a JSON value with a trailing newline (stable output for diffing).
pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::format(path, format!("encode: {e}")))?;
    text.push('\n');
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::format(path, format!("decode: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f32_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("x.f32");
        let values = vec![0.0, -1.5, 3.25, 1e-7];
        write_f32_file(&path, &values).unwrap();
        let back = read_f32_file(&path).unwrap();
        assert_eq!(back, values);
    }

    #[test]
    fn container_round_trip_is_byte_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        let meta = serde_json::json!({"seed": 7, "epoch": 3});
        let a: Vec<f64> = (0..10).map(|i| i as f64 * 0.5).collect();
        let b = vec![-1.0, 2.0];
        let arrays = vec![("w".to_string(), a.as_slice()), ("b".to_string(), b.as_slice())];
        write_container(&path, "test", &meta, &arrays).unwrap();
        let first = std::fs::read(&path).unwrap();

        let loaded: Container<serde_json::Value> = read_container(&path, "test").unwrap();
        assert_eq!(loaded.array("w").unwrap(), a.as_slice());
        let reread = vec![
            ("w".to_string(), loaded.array("w").unwrap()),
            ("b".to_string(), loaded.array("b").unwrap()),
        ];
        let path2 = dir.path().join("m2.ckpt");
        write_container(&path2, "test", &loaded.meta, &reread).unwrap();
        assert_eq!(first, std::fs::read(&path2).unwrap());
    }

    #[test]
    fn container_rejects_wrong_kind() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.ckpt");
        write_container(&path, "alpha", &serde_json::json!({}), &[]).unwrap();
        let err = read_container::<serde_json::Value>(&path, "beta").unwrap_err();
        assert!(err.to_string().contains("alpha"));
    }
}
