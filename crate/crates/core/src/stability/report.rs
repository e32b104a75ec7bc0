use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Linear,
    Neighbor,
    Combination,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Linear => "linear",
            Method::Neighbor => "neighbor",
            Method::Combination => "combination",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Method::Linear),
            "neighbor" => Ok(Method::Neighbor),
            "combination" => Ok(Method::Combination),
            other => Err(Error::InvalidParam(format!("unknown method `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StabilityParams {
    /// Neighbors per word.
    pub m: usize,
    /// Number of propagation rounds.
    pub iterations: usize,
    /// Neighbors below this cosine (in their own space) are ignored by the
    /// neighbor-based method.
    pub sim_floor: f64,
    /// Lower clamp on prior scores before dividing by them.
    pub prior_epsilon: f64,
}

impl Default for StabilityParams {
    fn default() -> Self {
        StabilityParams {
            m: 100,
            iterations: 5,
            sim_floor: 0.4,
            prior_epsilon: 1e-6,
        }
    }
}

impl StabilityParams {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 {
            return Err(Error::InvalidParam("m must be at least 1".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParam("iterations must be at least 1".into()));
        }
        if !(-1.0..=1.0).contains(&self.sim_floor) {
            return Err(Error::InvalidParam("sim_floor must lie in [-1, 1]".into()));
        }
        if !(self.prior_epsilon > 0.0) {
            return Err(Error::InvalidParam("prior_epsilon must be positive".into()));
        }
        Ok(())
    }
}

/// Stability score in `[0, 1]` for every shared word.
///
/// `words` is sorted and `scores` aligned with it. `trace` keeps the
/// normalized scores after each iteration (empty for the linear method); it
/// is not serialized.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport<T> {
    pub method: Method,
    pub iterations: usize,
    pub params: StabilityParams,
    pub spaces: (String, String),
    words: Vec<String>,
    scores: Vec<T>,
    pub trace: Vec<Vec<T>>,
}

#[derive(Serialize, Deserialize)]
struct ReportJson {
    method: Method,
    iterations: usize,
    m: usize,
    sim_floor: f64,
    prior_epsilon: f64,
    lambda: String,
    space0: String,
    space1: String,
    scores: Vec<WordScore>,
}

#[derive(Serialize, Deserialize)]
struct WordScore {
    word: String,
    score: f64,
}

fn lambda_policy(method: Method) -> &'static str {
    match method {
        Method::Combination => "adaptive{1,0,0.5}",
        _ => "n/a",
    }
}

impl<T: Real> StabilityReport<T> {
    pub(crate) fn new(
        method: Method,
        iterations: usize,
        params: StabilityParams,
        spaces: (String, String),
        words: Vec<String>,
        scores: Vec<T>,
        trace: Vec<Vec<T>>,
    ) -> Self {
        debug_assert!(words.windows(2).all(|p| p[0] < p[1]));
        StabilityReport { method, iterations, params, spaces, words, scores, trace }
    }

    /// Builds a report from arbitrary `(word, score)` pairs.
    pub fn from_pairs(
        method: Method,
        iterations: usize,
        params: StabilityParams,
        spaces: (String, String),
        mut pairs: Vec<(String, T)>,
    ) -> Result<Self> {
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        if pairs.windows(2).any(|p| p[0].0 == p[1].0) {
            return Err(Error::InvalidParam("duplicate word in report".into()));
        }
        if pairs.iter().any(|(_, s)| !(s.is_finite() && *s >= T::zero() && *s <= T::one())) {
            return Err(Error::InvalidParam("report scores must lie in [0, 1]".into()));
        }
        let (words, scores) = pairs.into_iter().unzip();
        Ok(StabilityReport { method, iterations, params, spaces, words, scores, trace: Vec::new() })
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn scores(&self) -> &[T] {
        &self.scores
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<T> {
        self.words
            .binary_search_by(|w| w.as_str().cmp(word))
            .ok()
            .map(|i| self.scores[i])
    }

    /// `(word, score)` pairs by ascending score, ties by word.
    pub fn sorted(&self) -> Vec<(&str, T)> {
        let mut pairs: Vec<(&str, T)> = self.words.iter().map(String::as_str).zip(self.scores.iter().copied()).collect();
        pairs.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap_or(std::cmp::Ordering::Equal).then(a.0.cmp(b.0)));
        pairs
    }

    /// Score at the given percentile (0-100) of the distribution, using the
    /// nearest-rank rule.
    pub fn percentile(&self, pct: f64) -> T {
        let mut s = self.scores.clone();
        s.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        if s.is_empty() {
            return T::zero();
        }
        let rank = ((pct / 100.0) * s.len() as f64).ceil() as usize;
        s[rank.clamp(1, s.len()) - 1]
    }

    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "# method\t{}", self.method)?;
        writeln!(out, "# iterations\t{}", self.iterations)?;
        writeln!(out, "# m\t{}", self.params.m)?;
        writeln!(out, "# sim_floor\t{}", self.params.sim_floor)?;
        writeln!(out, "# prior_epsilon\t{}", self.params.prior_epsilon)?;
        writeln!(out, "# lambda\t{}", lambda_policy(self.method))?;
        writeln!(out, "# space0\t{}", self.spaces.0)?;
        writeln!(out, "# space1\t{}", self.spaces.1)?;
        for (w, s) in self.sorted() {
            writeln!(out, "{w}\t{s}")?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let json = ReportJson {
            method: self.method,
            iterations: self.iterations,
            m: self.params.m,
            sim_floor: self.params.sim_floor,
            prior_epsilon: self.params.prior_epsilon,
            lambda: lambda_policy(self.method).to_string(),
            space0: self.spaces.0.clone(),
            space1: self.spaces.1.clone(),
            scores: self
                .sorted()
                .into_iter()
                .map(|(w, s)| WordScore { word: w.to_string(), score: s.as_f64() })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&json)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let json: ReportJson = serde_json::from_str(text)?;
        let params = StabilityParams {
            m: json.m,
            iterations: json.iterations.max(1),
            sim_floor: json.sim_floor,
            prior_epsilon: json.prior_epsilon,
        };
        let pairs = json.scores.into_iter().map(|ws| (ws.word, T::of(ws.score))).collect();
        Self::from_pairs(json.method, json.iterations, params, (json.space0, json.space1), pairs)
    }

    pub fn read_tsv<R: BufRead>(reader: R) -> Result<Self> {
        let mut method = None;
        let mut iterations = 0;
        let mut params = StabilityParams::default();
        let mut spaces = (String::new(), String::new());
        let mut pairs = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line.map_err(|e| Error::io("<report>", e))?;
            if let Some(meta) = line.strip_prefix('#') {
                let mut kv = meta.trim().splitn(2, '\t');
                let key = kv.next().unwrap_or("").trim();
                let val = kv.next().unwrap_or("").trim();
                let num = |v: &str| -> Result<f64> {
                    v.parse().map_err(|_| Error::parse(lineno, format!("bad value for `{key}`")))
                };
                match key {
                    "method" => method = Some(val.parse::<Method>()?),
                    "iterations" => iterations = num(val)? as usize,
                    "m" => params.m = num(val)? as usize,
                    "sim_floor" => params.sim_floor = num(val)?,
                    "prior_epsilon" => params.prior_epsilon = num(val)?,
                    "space0" => spaces.0 = val.to_string(),
                    "space1" => spaces.1 = val.to_string(),
                    _ => {}
                }
                continue;
            }
            if line.trim().is_empty() {
                continue;
            }
            let (w, s) = line
                .split_once('\t')
                .ok_or_else(|| Error::parse(lineno, "expected `word<TAB>score`"))?;
            let s: T = s
                .trim()
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad score `{s}`")))?;
            pairs.push((w.to_string(), s));
        }
        let method = method.ok_or_else(|| Error::parse(1, "missing `# method` header"))?;
        params.iterations = iterations.max(1);
        Self::from_pairs(method, iterations, params, spaces, pairs)
    }

    /// Loads a report, choosing JSON or TSV by the file extension.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        if path.extension().is_some_and(|e| e == "json") {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            return Self::from_json(&text);
        }
        let file = File::open(path).map_err(|e| Error::io(path, e))?;
        Self::read_tsv(BufReader::new(file))
    }

    /// Saves as JSON when the extension is `.json`, TSV otherwise.
    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        let res = if path.extension().is_some_and(|e| e == "json") {
            let text = self.to_json()?;
            writeln!(out, "{text}")
        } else {
            self.write_tsv(&mut out)
        };
        res.and_then(|_| out.flush()).map_err(|e| Error::io(path, e))
    }
}
