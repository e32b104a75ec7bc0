use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{CliError, CliResult};

/// `# key<TAB>value` lines placed at the top of every TSV output.
#[derive(Default)]
pub struct Header {
    lines: Vec<(String, String)>,
}

impl Header {
    pub fn new() -> Self {
        Header::default()
    }

    pub fn add(&mut self, key: &str, value: impl Display) -> &mut Self {
        self.lines.push((key.to_string(), value.to_string()));
        self
    }

    pub fn render(&self) -> String {
        self.lines.iter().map(|(k, v)| format!("# {k}\t{v}\n")).collect()
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::user(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| CliError::user(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to stdout when no path is given.
pub fn emit(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::user(format!("stdout: {e}")))
        }
    }
}

pub fn is_json(path: Option<&Path>) -> bool {
    path.is_some_and(|p| p.extension().is_some_and(|e| e == "json"))
}

pub fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

pub fn require_file(path: &Path) -> CliResult<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(CliError::user(format!("{}: no such file", path.display())))
    }
}
