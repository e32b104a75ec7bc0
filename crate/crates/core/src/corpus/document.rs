use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub label: Option<String>,
    pub tokens: Vec<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, label: Option<&str>, tokens: Vec<String>) -> Self {
        Document {
            id: id.into(),
            label: label.map(str::to_string),
            tokens,
        }
    }

    pub fn from_text(id: impl Into<String>, label: Option<&str>, text: &str) -> Self {
        Self::new(id, label, tokenize(text))
    }
}

/// Lowercases and splits on anything that is not a letter, digit or
/// underscore.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !(c.is_alphanumeric() || c == '_'))
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyTable {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl FrequencyTable {
    pub fn get(&self, word: &str) -> u64 {
        self.counts.get(word).copied().unwrap_or(0)
    }
}

pub fn count_frequencies(docs: &[Document]) -> FrequencyTable {
    let mut table = FrequencyTable::default();
    for tok in docs.iter().flat_map(|d| &d.tokens) {
        *table.counts.entry(tok.clone()).or_default() += 1;
        table.total += 1;
    }
    table
}

/// Reads `id<TAB>label<TAB>text` lines; an empty label means unlabeled.
pub fn read_corpus(path: impl AsRef<Path>) -> Result<Vec<Document>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut docs = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(3, '\t');
        let (Some(id), Some(label), Some(text)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::parse(i + 1, "expected `id<TAB>label<TAB>text`"));
        };
        let label = (!label.is_empty()).then_some(label);
        docs.push(Document::from_text(id, label, text));
    }
    Ok(docs)
}

pub fn write_corpus<W: Write>(docs: &[Document], mut out: W) -> std::io::Result<()> {
    for d in docs {
        writeln!(
            out,
            "{}\t{}\t{}",
            d.id,
            d.label.as_deref().unwrap_or(""),
            d.tokens.join(" ")
        )?;
    }
    Ok(())
}
