use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::{Array2, ArrayView1};

use crate::error::{Error, Result};
use crate::scalar::Real;

const MAP_MAGIC: &str = "semshift-map v1";

/// Learned transformation `W` (target_dim x source_dim) from one space into
/// another, with a record of how it was trained.
#[derive(Clone, Debug)]
pub struct LinearMap<T> {
    pub source_id: String,
    pub target_id: String,
    pub weights: Array2<T>,
    pub anchors_used: usize,
    pub final_loss: T,
    pub iterations_run: usize,
    /// `(iteration, mean squared loss)` checkpoints.
    pub loss_trace: Vec<(usize, T)>,
}

impl<T: Real> LinearMap<T> {
    /// Wraps a bare matrix; training metadata is left empty.
    pub fn from_matrix(source_id: impl Into<String>, target_id: impl Into<String>, weights: Array2<T>) -> Result<Self> {
        if weights.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParam("map has non-finite entries".into()));
        }
        Ok(LinearMap {
            source_id: source_id.into(),
            target_id: target_id.into(),
            weights,
            anchors_used: 0,
            final_loss: T::zero(),
            iterations_run: 0,
            loss_trace: Vec::new(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_matrix("", "", Array2::eye(dim)).expect("identity is finite")
    }

    pub fn source_dim(&self) -> usize {
        self.weights.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.weights.nrows()
    }

    /// `W v`.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        if v.len() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source_dim(),
                got: v.len(),
            });
        }
        Ok(self.weights.dot(&ArrayView1::from(v)).to_vec())
    }

    pub fn write<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{MAP_MAGIC} {} {}", self.source_dim(), self.target_dim())?;
        for row in self.weights.rows() {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        self.write(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(path, e))
    }

    /// Parses a map file. Viewpoint ids are not part of the format and come
    /// back empty.
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let header = match lines.next() {
            Some(l) => l.map_err(|e| Error::io("<map>", e))?,
            None => return Err(Error::parse(1, "empty map file")),
        };
        let rest = header
            .strip_prefix(MAP_MAGIC)
            .ok_or_else(|| Error::parse(1, format!("expected `{MAP_MAGIC} <src_dim> <dst_dim>`")))?;
        let dims: Vec<usize> = rest
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::parse(1, format!("bad dimension `{t}`"))))
            .collect::<Result<_>>()?;
        let [src_dim, dst_dim] = dims[..] else {
            return Err(Error::parse(1, "expected two dimensions"));
        };
        let mut data = Vec::with_capacity(src_dim * dst_dim);
        let mut rows = 0;
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            let line = line.map_err(|e| Error::io("<map>", e))?;
            if line.trim().is_empty() {
                continue;
            }
            let before = data.len();
            for tok in line.split_whitespace() {
                let v: T = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("cannot parse `{tok}`")))?;
                if !v.is_finite() {
                    return Err(Error::parse(lineno, "non-finite entry"));
                }
                data.push(v);
            }
            if data.len() - before != src_dim {
                return Err(Error::parse(
                    lineno,
                    format!("expected {src_dim} entries, found {}", data.len() - before),
                ));
            }
            rows += 1;
        }
        if rows != dst_dim {
            return Err(Error::parse(1, format!("header declares {dst_dim} rows, found {rows}")));
        }
        let w = Array2::from_shape_vec((dst_dim, src_dim), data).expect("shape checked");
        Self::from_matrix("", "", w)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read(BufReader::new(file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn apply_examples() {
        let id = LinearMap::<f64>::identity(3);
        assert_eq!(id.apply(&[1.0, -2.0, 3.5]).unwrap(), vec![1.0, -2.0, 3.5]);

        let double = LinearMap::from_matrix("a", "b", Array2::<f64>::eye(2) * 2.0).unwrap();
        assert_eq!(double.apply(&[1.5, -4.0]).unwrap(), vec![3.0, -8.0]);

        let swap = LinearMap::from_matrix("a", "b", array![[0.0, 1.0], [1.0, 0.0]]).unwrap();
        assert_eq!(swap.apply(&[3.0, 4.0]).unwrap(), vec![4.0, 3.0]);

        assert!(matches!(
            swap.apply(&[1.0]),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn rectangular_map_file() {
        let m = LinearMap::from_matrix("a", "b", array![[0.1, 2.0, -3.0], [1e-9, 0.0, 1.0 / 7.0]]).unwrap();
        let mut buf = Vec::new();
        m.write(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("semshift-map v1 3 2\n"));
        let back = LinearMap::<f64>::read(text.as_bytes()).unwrap();
        assert_eq!(back.weights, m.weights);
    }

    #[test]
    fn malformed_map_files() {
        for text in [
            "",
            "semshift-map v2 1 1\n1",
            "semshift-map v1 2 1\n1",
            "semshift-map v1 1 2\n1",
            "semshift-map v1 1 1\nx",
        ] {
            assert!(LinearMap::<f64>::read(text.as_bytes()).is_err(), "{text:?}");
        }
    }
}
