use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

const DEFAULT_STOPWORDS: &str = include_str!("../../data/stopwords.txt");

/// Parses an anchor list: one word per line, `#` starts a comment.
pub fn parse_anchors(text: &str) -> Vec<String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn load_anchors(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    Ok(parse_anchors(&text))
}

/// Bundled English stopword list with a few very frequent words added.
pub fn default_anchors() -> Vec<String> {
    parse_anchors(DEFAULT_STOPWORDS)
}
