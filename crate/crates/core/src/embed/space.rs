use std::collections::HashMap;
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use ndarray::{Array2, ArrayView1};

use crate::error::{Error, Result};
use crate::scalar::{self, Real};

/// On-disk text layouts for embedding files.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TextFormat {
    /// First line `<n> <dim>`, then one `word v1 .. vdim` row per word.
    Word2Vec,
    /// Rows only; the dimensionality is taken from the first row.
    Headerless,
}

impl FromStr for TextFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word2vec-text" | "word2vec" => Ok(TextFormat::Word2Vec),
            "headerless-text" | "headerless" | "glove" => Ok(TextFormat::Headerless),
            other => Err(Error::InvalidParam(format!("unknown embedding format `{other}`"))),
        }
    }
}

impl fmt::Display for TextFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TextFormat::Word2Vec => "word2vec-text",
            TextFormat::Headerless => "headerless-text",
        })
    }
}

/// Vocabulary plus a dense `n_words x dim` matrix for one viewpoint.
///
/// Rows are validated on construction: finite entries, nonzero norm, no
/// duplicate words. The space is immutable afterwards.
#[derive(Clone, Debug)]
pub struct EmbeddingSpace<T> {
    id: String,
    words: Vec<String>,
    vocab: HashMap<String, usize>,
    vectors: Array2<T>,
}

impl<T: Real> EmbeddingSpace<T> {
    pub fn new(id: impl Into<String>, words: Vec<String>, vectors: Array2<T>) -> Result<Self> {
        if words.len() != vectors.nrows() {
            return Err(Error::Mismatch(format!(
                "{} words but {} vector rows",
                words.len(),
                vectors.nrows()
            )));
        }
        if vectors.ncols() == 0 {
            return Err(Error::InvalidParam("dimension must be positive".into()));
        }
        let mut vocab = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            // Rows are 1-based in error messages to line up with headerless files.
            if vocab.insert(w.clone(), i).is_some() {
                return Err(Error::parse(i + 1, format!("duplicate word `{w}`")));
            }
            check_row(vectors.row(i), i + 1)?;
        }
        // Standard layout so `row` can hand out slices.
        let vectors = if vectors.is_standard_layout() {
            vectors
        } else {
            vectors.as_standard_layout().to_owned()
        };
        Ok(EmbeddingSpace {
            id: id.into(),
            words,
            vocab,
            vectors,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn vectors(&self) -> &Array2<T> {
        &self.vectors
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.vocab.get(word).copied()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.vocab.contains_key(word)
    }

    /// Row `i` as a contiguous slice.
    pub fn row(&self, i: usize) -> &[T] {
        self.vectors
            .row(i)
            .to_slice()
            .expect("standard layout enforced at construction")
    }

    pub fn vector(&self, word: &str) -> Result<&[T]> {
        self.index_of(word)
            .map(|i| self.row(i))
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    /// Cosine similarity between the vectors of two words.
    pub fn cosine(&self, a: &str, b: &str) -> Result<T> {
        Ok(scalar::cosine_of(self.vector(a)?, self.vector(b)?))
    }

    /// Reads a space from `path`; the viewpoint id defaults to the file stem.
    pub fn load(path: impl AsRef<Path>, format: TextFormat) -> Result<Self> {
        let path = path.as_ref();
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Self::read(BufReader::new(file), format, id).map_err(|e| match e {
            Error::Io { source, .. } => Error::io(path, source),
            other => other,
        })
    }

    pub fn read<R: BufRead>(reader: R, format: TextFormat, id: impl Into<String>) -> Result<Self> {
        let mut lines = reader.lines().enumerate();
        let mut header: Option<(usize, usize)> = None;
        if format == TextFormat::Word2Vec {
            let line = match lines.next() {
                Some((_, line)) => line.map_err(|e| Error::io("<input>", e))?,
                None => return Err(Error::parse(1, "missing `<n> <dim>` header")),
            };
            header = Some(parse_header(&line)?);
        }

        let mut dim = header.map(|(_, d)| d);
        let mut words = Vec::with_capacity(header.map_or(0, |(n, _)| n));
        let mut data: Vec<T> = Vec::new();
        let mut seen: HashMap<String, usize> = HashMap::new();

        for (i, line) in lines {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::io("<input>", e))?;
            if line.trim().is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let word = parts.next().expect("non-blank line has a token");
            let row_start = data.len();
            for tok in parts {
                let v: T = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("cannot parse `{tok}` as a number")))?;
                if !v.is_finite() {
                    return Err(Error::parse(lineno, format!("non-finite value `{tok}`")));
                }
                data.push(v);
            }
            let arity = data.len() - row_start;
            let expected = *dim.get_or_insert(arity);
            if arity != expected || arity == 0 {
                return Err(Error::parse(
                    lineno,
                    format!("expected {expected} values for `{word}`, found {arity}"),
                ));
            }
            if data[row_start..].iter().all(|v| *v == T::zero()) {
                return Err(Error::parse(lineno, format!("zero vector for `{word}`")));
            }
            if let Some(prev) = seen.insert(word.to_string(), lineno) {
                return Err(Error::parse(
                    lineno,
                    format!("duplicate word `{word}` (first seen on line {prev})"),
                ));
            }
            words.push(word.to_string());
        }

        if let Some((n, _)) = header {
            if n != words.len() {
                return Err(Error::parse(
                    1,
                    format!("header declares {n} rows but {} were read", words.len()),
                ));
            }
        }
        let dim = match dim {
            Some(d) if !words.is_empty() => d,
            _ => return Err(Error::parse(1, "no embedding rows")),
        };
        let vectors = Array2::from_shape_vec((words.len(), dim), data)
            .expect("row arity checked while parsing");
        EmbeddingSpace::new(id, words, vectors)
    }

    /// Writes the space in word2vec text format. Values use the shortest
    /// representation that parses back to the same number.
    pub fn write_word2vec<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "{} {}", self.len(), self.dim())?;
        for (i, w) in self.words.iter().enumerate() {
            out.write_all(w.as_bytes())?;
            for v in self.row(i) {
                write!(out, " {v}")?;
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        self.write_word2vec(&mut out)
            .and_then(|_| out.flush())
            .map_err(|e| Error::io(path, e))
    }
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    let bad = || Error::parse(1, format!("malformed header `{}`, expected `<n> <dim>`", line.trim()));
    if fields.len() != 2 {
        return Err(bad());
    }
    let n: usize = fields[0].parse().map_err(|_| bad())?;
    let dim: usize = fields[1].parse().map_err(|_| bad())?;
    if dim == 0 {
        return Err(bad());
    }
    Ok((n, dim))
}

fn check_row<T: Real>(row: ArrayView1<'_, T>, lineno: usize) -> Result<()> {
    if row.iter().any(|v| !v.is_finite()) {
        return Err(Error::parse(lineno, "non-finite value"));
    }
    if row.iter().all(|v| *v == T::zero()) {
        return Err(Error::parse(lineno, "zero vector"));
    }
    Ok(())
}
