//! Canonical JSON interchange format.
//!
//! An algebra file is one JSON object:
//!
//! ```text
//! { "version": 1, "n": N, "basis": [labels],
//!   "mult": [[i, j, k, re, im], …],        e_i e_j ∋ (re + i·im) e_k
//!   "unit": [[re, im], …],                 dense, length N
//!   "star": [[i, j, re, im], …],           star matrix entry (i, j)
//!   "coproduct": [[k, i, j, re, im], …],   Δ(e_k) ∋ (re + i·im) e_i ⊗ e_j
//!   "counit": [[re, im], …],               dense, length N
//!   "antipode": [[i, j, re, im], …],       antipode matrix entry (i, j)
//!   "rep": { "dim": d, "matrices": [[[r, c, re, im], …], …] } }
//! ```
//!
//! Sparse lists hold exactly the nonzero entries in lexicographic index order.
//! Negative zero is written as zero. Writing a loaded canonical file
//! reproduces it byte for byte.

use std::fmt::Write as _;
use std::path::Path;

use numeric_core::{c64, CMatrix, C64};
use serde::Deserialize;

use crate::error::SpecError;
use crate::spec::{SpecParts, WhaSpec};

/// Format version written by [`to_canonical_json`].
pub const FORMAT_VERSION: u32 = 1;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    dim: usize,
    matrices: Vec<Vec<(usize, usize, f64, f64)>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    version: u32,
    n: usize,
    basis: Vec<String>,
    mult: Vec<(usize, usize, usize, f64, f64)>,
    unit: Vec<(f64, f64)>,
    star: Vec<(usize, usize, f64, f64)>,
    coproduct: Vec<(usize, usize, usize, f64, f64)>,
    counit: Vec<(f64, f64)>,
    antipode: Vec<(usize, usize, f64, f64)>,
    rep: RepFile,
}

fn num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    serde_json::to_string(&x).expect("finite float")
}

fn pair(z: C64) -> String {
    format!("{}, {}", num(z.re), num(z.im))
}

fn is_zero(z: C64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

fn write_list(out: &mut String, key: &str, items: &[String], last: bool) {
    if items.is_empty() {
        let _ = writeln!(out, "  \"{key}\": []{}", if last { "" } else { "," });
        return;
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (i, it) in items.iter().enumerate() {
        let sep = if i + 1 == items.len() { "" } else { "," };
        let _ = writeln!(out, "    [{it}]{sep}");
    }
    let _ = writeln!(out, "  ]{}", if last { "" } else { "," });
}

fn tensor_entries(t: &[C64], n: usize) -> Vec<String> {
    let mut v = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let z = t[(a * n + b) * n + c];
                if !is_zero(z) {
                    v.push(format!("{a}, {b}, {c}, {}", pair(z)));
                }
            }
        }
    }
    v
}

fn matrix_entries(m: &CMatrix) -> Vec<String> {
    let mut v = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let z = m[(r, c)];
            if !is_zero(z) {
                v.push(format!("{r}, {c}, {}", pair(z)));
            }
        }
    }
    v
}

/// Serialize an algebra in canonical form.
pub fn to_canonical_json(spec: &WhaSpec) -> String {
    let n = spec.n();
    let mut out = String::from("{\n");
    let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"n\": {n},");
    let labels: Vec<String> = spec
        .labels()
        .iter()
        .map(|s| serde_json::to_string(s).expect("string"))
        .collect();
    let _ = writeln!(out, "  \"basis\": [{}],", labels.join(", "));
    write_list(
        &mut out,
        "mult",
        &tensor_entries(spec.mult_tensor(), n),
        false,
    );
    let dense = |v: &[C64]| v.iter().map(|&z| pair(z)).collect::<Vec<_>>();
    write_list(&mut out, "unit", &dense(spec.unit().coeffs()), false);
    write_list(&mut out, "star", &matrix_entries(spec.star_matrix()), false);
    write_list(
        &mut out,
        "coproduct",
        &tensor_entries(spec.coproduct_tensor(), n),
        false,
    );
    write_list(&mut out, "counit", &dense(spec.counit().coeffs()), false);
    write_list(
        &mut out,
        "antipode",
        &matrix_entries(spec.antipode_matrix()),
        false,
    );
    let _ = writeln!(out, "  \"rep\": {{");
    let _ = writeln!(out, "    \"dim\": {},", spec.rep_dim());
    let _ = writeln!(out, "    \"matrices\": [");
    for (i, m) in spec.rep().iter().enumerate() {
        let entries: Vec<String> = matrix_entries(m).iter().map(|e| format!("[{e}]")).collect();
        let sep = if i + 1 == n { "" } else { "," };
        let _ = writeln!(out, "      [{}]{sep}", entries.join(", "));
    }
    out.push_str("    ]\n  }\n}\n");
    out
}

fn sparse_matrix(
    what: &str,
    rows: usize,
    cols: usize,
    entries: &[(usize, usize, f64, f64)],
) -> Result<CMatrix, SpecError> {
    let mut m = CMatrix::zeros(rows, cols);
    for &(r, c, re, im) in entries {
        if r >= rows || c >= cols {
            return Err(SpecError::Dimension(format!(
                "{what}: entry ({r}, {c}) outside {rows}x{cols}"
            )));
        }
        m[(r, c)] += c64(re, im);
    }
    Ok(m)
}

fn sparse_tensor(
    what: &str,
    n: usize,
    entries: &[(usize, usize, usize, f64, f64)],
) -> Result<Vec<C64>, SpecError> {
    let mut t = vec![c64(0.0, 0.0); n * n * n];
    for &(a, b, c, re, im) in entries {
        if a >= n || b >= n || c >= n {
            return Err(SpecError::Dimension(format!(
                "{what}: entry ({a}, {b}, {c}) outside n = {n}"
            )));
        }
        t[(a * n + b) * n + c] += c64(re, im);
    }
    Ok(t)
}

/// Parse and validate an algebra from JSON text.
pub fn from_json_str(text: &str) -> Result<WhaSpec, SpecError> {
    let f: SpecFile = serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))?;
    if f.version != FORMAT_VERSION {
        return Err(SpecError::Parse(format!(
            "unsupported version {}",
            f.version
        )));
    }
    let n = f.n;
    if f.basis.len() != n {
        return Err(SpecError::Dimension(format!(
            "{} labels for n = {n}",
            f.basis.len()
        )));
    }
    if f.unit.len() != n || f.counit.len() != n {
        return Err(SpecError::Dimension(
            "unit and counit need n entries".into(),
        ));
    }
    if f.rep.matrices.len() != n {
        return Err(SpecError::Dimension(format!(
            "{} representation matrices for n = {n}",
            f.rep.matrices.len()
        )));
    }
    let rep = f
        .rep
        .matrices
        .iter()
        .map(|m| sparse_matrix("rep", f.rep.dim, f.rep.dim, m))
        .collect::<Result<Vec<_>, _>>()?;
    WhaSpec::new(SpecParts {
        labels: f.basis,
        mult: sparse_tensor("mult", n, &f.mult)?,
        unit: f.unit.iter().map(|&(re, im)| c64(re, im)).collect(),
        star: sparse_matrix("star", n, n, &f.star)?,
        coproduct: sparse_tensor("coproduct", n, &f.coproduct)?,
        counit: f.counit.iter().map(|&(re, im)| c64(re, im)).collect(),
        antipode: sparse_matrix("antipode", n, n, &f.antipode)?,
        rep_dim: f.rep.dim,
        rep,
    })
}

/// Read an algebra file.
pub fn load_spec(path: impl AsRef<Path>) -> Result<WhaSpec, SpecError> {
    from_json_str(&std::fs::read_to_string(path)?)
}

/// Write an algebra file in canonical form.
pub fn save_spec(spec: &WhaSpec, path: impl AsRef<Path>) -> Result<(), SpecError> {
    std::fs::write(path, to_canonical_json(spec))?;
    Ok(())
}
