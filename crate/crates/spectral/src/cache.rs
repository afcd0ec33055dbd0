//! Binary cache: magic, format version, then little-endian arrays.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use ndarray::Array2;

use crate::data::{SectorSpectrum, SpectralData};
use crate::error::SpectralError;

const MAGIC: &[u8; 8] = b"DLSPECTR";
const VERSION: u32 = 1;

/// File-name key for `(parameter description, seed, realization index)`, FNV-1a.
pub fn cache_key(params: &str, seed: u64, index: u64) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in params.bytes().chain(seed.to_le_bytes()).chain(index.to_le_bytes()) {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}-{seed}-{index}.spec")
}

pub fn save(sd: &SpectralData, path: &Path) -> Result<(), SpectralError> {
    let mut buf: Vec<u8> = Vec::new();
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&(sd.dims.len() as u64).to_le_bytes());
    buf.extend_from_slice(&sd.cap.unwrap_or(f64::NAN).to_le_bytes());
    buf.extend_from_slice(&sd.scale.to_le_bytes());
    for (dim, s) in sd.dims.iter().zip(&sd.sectors) {
        buf.extend_from_slice(&(*dim as u64).to_le_bytes());
        buf.extend_from_slice(&(s.values.len() as u64).to_le_bytes());
        buf.push(s.complete as u8);
        for v in &s.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
        for v in s.vectors.iter() {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    let mut f = fs::File::create(path)?;
    f.write_all(&buf)?;
    Ok(())
}

struct Reader {
    buf: Vec<u8>,
    pos: usize,
}

impl Reader {
    fn take(&mut self, n: usize) -> Result<&[u8], SpectralError> {
        if self.pos + n > self.buf.len() {
            return Err(SpectralError::Cache("truncated file".into()));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u64(&mut self) -> Result<u64, SpectralError> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64, SpectralError> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
}

pub fn load(path: &Path) -> Result<SpectralData, SpectralError> {
    let mut buf = Vec::new();
    fs::File::open(path)?.read_to_end(&mut buf)?;
    let mut r = Reader { buf, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err(SpectralError::Cache("bad magic".into()));
    }
    let version = u32::from_le_bytes(r.take(4)?.try_into().unwrap());
    if version != VERSION {
        return Err(SpectralError::Cache(format!("unsupported version {version}")));
    }
    let n = r.u64()? as usize;
    let cap = r.f64()?;
    let scale = r.f64()?;
    let mut dims = Vec::with_capacity(n);
    let mut sectors = Vec::with_capacity(n);
    for _ in 0..n {
        let dim = r.u64()? as usize;
        let m = r.u64()? as usize;
        let complete = r.take(1)?[0] == 1;
        let values = (0..m).map(|_| r.f64()).collect::<Result<Vec<_>, _>>()?;
        let flat = (0..dim * m).map(|_| r.f64()).collect::<Result<Vec<_>, _>>()?;
        let vectors = Array2::from_shape_vec((dim, m), flat).map_err(|e| SpectralError::Cache(e.to_string()))?;
        dims.push(dim);
        sectors.push(SectorSpectrum { values, vectors, complete });
    }
    if r.pos != r.buf.len() {
        return Err(SpectralError::Cache("trailing bytes".into()));
    }
    Ok(SpectralData::assemble(dims, sectors, (!cap.is_nan()).then_some(cap), scale))
}
