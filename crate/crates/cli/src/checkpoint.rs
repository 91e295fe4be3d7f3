//! Binary state checkpoints.
//!
//! Layout, all little endian:
//!
//! | bytes   | content                        |
//! |---------|--------------------------------|
//! | 4       | magic `RNLW`                   |
//! | 4       | format version (`u32`)         |
//! | 8       | `r_max` (`f64`)                |
//! | 8       | `n` (`u64`)                    |
//! | 8       | `t` (`f64`)                    |
//! | 8n      | `φ`                            |
//! | 8n      | `φ_t`                          |
//! | 8       | FNV-1a 64 of everything above  |

use std::hash::Hasher;
use std::path::Path;

use fnv::FnvHasher;
use nlw_core::radial_field::{make_grid, FieldState, RadialField};

use crate::error::{CliError, Result};

pub const MAGIC: &[u8; 4] = b"RNLW";
pub const FORMAT_VERSION: u32 = 1;
const HEADER: usize = 4 + 4 + 8 + 8 + 8;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h = FnvHasher::default();
    h.write(bytes);
    h.finish()
}

pub fn encode(st: &FieldState<f64>) -> Vec<u8> {
    let g = st.grid();
    let n = g.n();
    let mut buf = Vec::with_capacity(HEADER + 16 * n + 8);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&g.r_max().to_le_bytes());
    buf.extend_from_slice(&(n as u64).to_le_bytes());
    buf.extend_from_slice(&st.t.to_le_bytes());
    for x in st.u.phi().iter().chain(st.ut.phi()) {
        buf.extend_from_slice(&x.to_le_bytes());
    }
    let sum = fnv1a(&buf);
    buf.extend_from_slice(&sum.to_le_bytes());
    buf
}

pub fn decode(bytes: &[u8]) -> std::result::Result<FieldState<f64>, String> {
    let word = |at: usize| -> [u8; 8] { bytes[at..at + 8].try_into().expect("8 bytes") };
    if bytes.len() < HEADER + 8 || &bytes[..4] != MAGIC {
        return Err("not an RNLW checkpoint".into());
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes"));
    if version != FORMAT_VERSION {
        return Err(format!("unsupported format version {version}"));
    }
    let r_max = f64::from_le_bytes(word(8));
    let n = u64::from_le_bytes(word(16)) as usize;
    let t = f64::from_le_bytes(word(24));
    let expected = n.checked_mul(16).and_then(|x| x.checked_add(HEADER + 8));
    if expected != Some(bytes.len()) {
        return Err(format!("length {} does not match n = {n}", bytes.len()));
    }
    let body = bytes.len() - 8;
    if fnv1a(&bytes[..body]) != u64::from_le_bytes(word(body)) {
        return Err("checksum mismatch".into());
    }
    let grid = make_grid(r_max, n).map_err(|e| e.to_string())?;
    let read = |from: usize| -> Vec<f64> {
        (0..n)
            .map(|i| f64::from_le_bytes(word(from + 8 * i)))
            .collect()
    };
    let u = RadialField::from_phi(grid, read(HEADER)).map_err(|e| e.to_string())?;
    let ut = RadialField::from_phi(grid, read(HEADER + 8 * n)).map_err(|e| e.to_string())?;
    FieldState::new(t, u, ut).map_err(|e| e.to_string())
}

pub fn write(path: &Path, st: &FieldState<f64>) -> Result<()> {
    std::fs::write(path, encode(st)).map_err(|e| CliError::io(path, e))
}

pub fn read(path: &Path) -> Result<FieldState<f64>> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    decode(&bytes).map_err(|message| CliError::Checkpoint {
        path: path.to_path_buf(),
        message,
    })
}
