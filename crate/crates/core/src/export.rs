//! Serialization of basis matrices and structure tensors.
//!
//! Binary layout (all little-endian):
//!
//! ```text
//! magic  b"E6MX"
//! u32    version (1)
//! u32    count, u32 rows, u32 cols
//! f64    re, im for each entry, matrix by matrix, row-major
//! ```

use std::io::{Read, Write};

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::e6::StructureTensor;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

const MAGIC: &[u8; 4] = b"E6MX";
const VERSION: u32 = 1;

/// One matrix as rows of [re, im] pairs.
pub fn matrix_to_json(m: &CMatrix) -> Value {
    Value::Array(
        (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| json!([m[(r, c)].re, m[(r, c)].im])).collect()))
            .collect(),
    )
}

pub fn matrices_to_json(labels: &[usize], ms: &[CMatrix]) -> Value {
    Value::Array(labels.iter().zip(ms).map(|(l, m)| json!({"label": l, "entries": matrix_to_json(m)})).collect())
}

/// Long format: label,row,col,re,im with 1-based indices; zero entries skipped.
pub fn matrices_to_csv(labels: &[usize], ms: &[CMatrix]) -> String {
    let mut s = String::from("label,row,col,re,im\n");
    for (l, m) in labels.iter().zip(ms) {
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let z = m[(r, c)];
                if z.re != 0.0 || z.im != 0.0 {
                    s.push_str(&format!("{l},{},{},{:e},{:e}\n", r + 1, c + 1, z.re, z.im));
                }
            }
        }
    }
    s
}

pub fn write_binary<W: Write>(mut w: W, ms: &[CMatrix]) -> std::io::Result<()> {
    let (rows, cols) = ms.first().map_or((0, 0), |m| m.shape());
    w.write_all(MAGIC)?;
    for v in [VERSION, ms.len() as u32, rows as u32, cols as u32] {
        w.write_all(&v.to_le_bytes())?;
    }
    for m in ms {
        for r in 0..rows {
            for c in 0..cols {
                w.write_all(&m[(r, c)].re.to_le_bytes())?;
                w.write_all(&m[(r, c)].im.to_le_bytes())?;
            }
        }
    }
    Ok(())
}

pub fn read_binary<R: Read>(mut r: R) -> Result<Vec<CMatrix>> {
    let corrupt = |what: &str| Error::CorruptDataset(format!("binary matrices: {what}"));
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic).map_err(|_| corrupt("truncated header"))?;
    if &magic != MAGIC {
        return Err(corrupt("bad magic"));
    }
    let mut word = || -> Result<u32> {
        let mut b = [0u8; 4];
        r.read_exact(&mut b).map_err(|_| corrupt("truncated header"))?;
        Ok(u32::from_le_bytes(b))
    };
    let version = word()?;
    if version != VERSION {
        return Err(corrupt(&format!("unsupported version {version}")));
    }
    let (count, rows, cols) = (word()? as usize, word()? as usize, word()? as usize);
    let mut out = Vec::with_capacity(count);
    let mut b = [0u8; 8];
    for _ in 0..count {
        let mut m = CMatrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                r.read_exact(&mut b).map_err(|_| corrupt("truncated body"))?;
                let re = f64::from_le_bytes(b);
                r.read_exact(&mut b).map_err(|_| corrupt("truncated body"))?;
                m[(i, j)] = Complex64::new(re, f64::from_le_bytes(b));
            }
        }
        out.push(m);
    }
    let mut rest = Vec::new();
    r.read_to_end(&mut rest).map_err(|e| corrupt(&e.to_string()))?;
    if !rest.is_empty() {
        return Err(corrupt("trailing bytes"));
    }
    Ok(out)
}

/// One `{"i","j","k","v"}` object per line, canonical order.
pub fn tensor_to_jsonl(t: &StructureTensor) -> String {
    let mut s = String::new();
    for (i, j, k, v) in t.rows() {
        s.push_str(&json!({"i": i, "j": j, "k": k, "v": v}).to_string());
        s.push('\n');
    }
    s
}

pub fn tensor_to_csv(t: &StructureTensor) -> String {
    let mut s = String::from("i,j,k,v\n");
    for (i, j, k, v) in t.rows() {
        s.push_str(&format!("{i},{j},{k},{v:e}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn sample() -> Vec<CMatrix> {
        (0..3)
            .map(|k| CMatrix::from_fn(4, 4, |r, c| Complex64::new((r * 4 + c + k) as f64 / 7.0, -(k as f64) * 0.1)))
            .collect()
    }

    #[test]
    fn binary_round_trip_is_bit_exact() {
        let ms = sample();
        let mut buf = Vec::new();
        write_binary(&mut buf, &ms).unwrap();
        assert_eq!(buf.len(), 20 + 3 * 16 * 16);
        let back = read_binary(buf.as_slice()).unwrap();
        for (a, b) in ms.iter().zip(&back) {
            for (x, y) in a.iter().zip(b.iter()) {
                assert_eq!(x.re.to_bits(), y.re.to_bits());
                assert_eq!(x.im.to_bits(), y.im.to_bits());
            }
        }
    }

    #[test]
    fn binary_rejects_damage() {
        let mut buf = Vec::new();
        write_binary(&mut buf, &sample()).unwrap();
        assert!(read_binary(&buf[..buf.len() - 1]).is_err());
        let mut extra = buf.clone();
        extra.push(0);
        assert!(read_binary(extra.as_slice()).is_err());
        buf[0] = b'X';
        assert!(read_binary(buf.as_slice()).is_err());
    }

    #[test]
    fn json_is_row_major_pairs() {
        let m = CMatrix::from_fn(2, 2, |r, c| Complex64::new(r as f64, c as f64));
        assert_eq!(matrix_to_json(&m), json!([[[0.0, 0.0], [0.0, 1.0]], [[1.0, 0.0], [1.0, 1.0]]]));
    }

    #[test]
    fn jsonl_lines() {
        let mut e = BTreeMap::new();
        e.insert((1, 2, 3), 0.5);
        e.insert((1, 4, 5), -1.0);
        let t = StructureTensor::from_entries(5, vec![1.0; 5], e);
        let s = tensor_to_jsonl(&t);
        let lines: Vec<Value> = s.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines[0], json!({"i":1,"j":2,"k":3,"v":0.5}));
        assert_eq!(lines[1]["v"], json!(-1.0));
    }
}
