//! Binary dumps of dense matrices with JSON metadata.
//!
//! A dump is the row-major sequence of entries, each written as two
//! little-endian `f64` values (real part, then imaginary part).

use std::io::{Read, Write};

use numeric_core::{c64, CMatrix};
use serde::{Deserialize, Serialize};

use crate::error::MpdoError;
use crate::state::MpdoState;

/// Layout tag written into every metadata record.
pub const LAYOUT: &str = "row-major complex128 little-endian";

/// Write the entries of `m`.
pub fn write_matrix(mut w: impl Write, m: &CMatrix) -> Result<(), MpdoError> {
    let mut buf = Vec::with_capacity(16 * m.data().len());
    for z in m.data() {
        buf.extend_from_slice(&z.re.to_le_bytes());
        buf.extend_from_slice(&z.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Read a `rows × cols` matrix written by [`write_matrix`].
pub fn read_matrix(mut r: impl Read, rows: usize, cols: usize) -> Result<CMatrix, MpdoError> {
    let mut buf = vec![0u8; 16 * rows * cols];
    r.read_exact(&mut buf)?;
    let data = buf
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            c64(re, im)
        })
        .collect();
    Ok(CMatrix::from_vec(rows, cols, data)?)
}

/// Metadata accompanying a state dump.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateMetadata {
    /// Number of sites.
    pub n_sites: usize,
    /// Dimension of one site.
    pub site_dim: usize,
    /// Description of the generating element.
    pub x_label: String,
    /// `ω(x)`.
    pub norm_omega: f64,
    /// Rows of the dumped matrix.
    pub rows: usize,
    /// Columns of the dumped matrix.
    pub cols: usize,
    /// Entry layout, always [`LAYOUT`].
    pub layout: String,
}

impl StateMetadata {
    /// Metadata for `state`.
    pub fn of(state: &MpdoState) -> Self {
        StateMetadata {
            n_sites: state.n_sites,
            site_dim: state.site_dim,
            x_label: state.x_label.clone(),
            norm_omega: state.norm_omega,
            rows: state.rho.rows(),
            cols: state.rho.cols(),
            layout: LAYOUT.into(),
        }
    }
}
