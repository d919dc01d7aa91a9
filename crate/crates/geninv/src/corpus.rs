//! Corpus files.
//!
//! ```json
//! {"version": 1,
//!  "spec": {"kind": "ep", "n": 4, "rank": 2, "seed": 7, "count": 10} | null,
//!  "samples": [{"id": "...", "n": 4, "matrix": [[[re, im], ...], ...],
//!               "claimed": {"ep": true, "normal": null, ...}}]}
//! ```
//!
//! A file holding a single sample object, or a bare matrix, is also accepted.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use geninv_core::corpusgen::{Claimed, GeneratorKind, GeneratorSpec, Sample};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::json::{matrix_from_rows, MatrixRef};
use crate::{Error, Result};

pub const VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Corpus {
    /// Present when every sample came from one generator run.
    pub spec: Option<GeneratorSpec>,
    pub samples: Vec<Sample>,
}

impl Corpus {
    pub fn new(spec: Option<GeneratorSpec>, samples: Vec<Sample>) -> Self {
        Self { spec, samples }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SpecDto {
    kind: String,
    n: usize,
    rank: usize,
    seed: u64,
    count: usize,
}

impl SpecDto {
    fn from_spec(s: &GeneratorSpec) -> Self {
        Self {
            kind: s.kind.name().to_string(),
            n: s.n,
            rank: s.rank(),
            seed: s.seed,
            count: s.count,
        }
    }

    fn to_spec(&self) -> Result<GeneratorSpec, geninv_core::Error> {
        let kind: GeneratorKind = self.kind.parse()?;
        GeneratorSpec::new(kind, self.n, Some(self.rank), self.seed, self.count)
    }
}

#[derive(Clone, Copy, Debug, Default, Serialize, Deserialize)]
struct ClaimedDto {
    #[serde(default)]
    ep: Option<bool>,
    #[serde(default)]
    normal: Option<bool>,
    #[serde(default)]
    group_invertible: Option<bool>,
    #[serde(default)]
    nilpotent: Option<bool>,
}

impl From<Claimed> for ClaimedDto {
    fn from(c: Claimed) -> Self {
        Self {
            ep: c.ep,
            normal: c.normal,
            group_invertible: c.group_invertible,
            nilpotent: c.nilpotent,
        }
    }
}

impl From<ClaimedDto> for Claimed {
    fn from(c: ClaimedDto) -> Self {
        Self {
            ep: c.ep,
            normal: c.normal,
            group_invertible: c.group_invertible,
            nilpotent: c.nilpotent,
        }
    }
}

#[derive(Serialize)]
struct SampleOut<'a> {
    id: &'a str,
    n: usize,
    matrix: MatrixRef<'a>,
    claimed: ClaimedDto,
}

#[derive(Serialize)]
struct CorpusOut<'a> {
    version: u32,
    spec: Option<SpecDto>,
    samples: Vec<SampleOut<'a>>,
}

#[derive(Deserialize)]
struct SampleIn {
    #[serde(default)]
    id: Option<String>,
    #[serde(default)]
    n: Option<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
    #[serde(default)]
    claimed: ClaimedDto,
}

#[derive(Deserialize)]
struct CorpusIn {
    version: u32,
    #[serde(default)]
    spec: Option<SpecDto>,
    samples: Vec<SampleIn>,
}

/// Pretty-printed JSON with a trailing newline; identical input gives
/// identical bytes.
pub fn corpus_to_string(corpus: &Corpus) -> String {
    let out = CorpusOut {
        version: VERSION,
        spec: corpus.spec.as_ref().map(SpecDto::from_spec),
        samples: corpus
            .samples
            .iter()
            .map(|s| SampleOut {
                id: &s.id,
                n: s.matrix.rows(),
                matrix: MatrixRef(&s.matrix),
                claimed: s.claimed.into(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&out).expect("corpus serialization cannot fail");
    text.push('\n');
    text
}

pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, corpus_to_string(corpus)).map_err(|e| Error::io(path, e))
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("sample");
    parse_corpus(&text, &path.display().to_string(), stem)
}

/// Parses corpus text. `origin` names the source in error messages and
/// `default_id` names samples that carry no id.
pub fn parse_corpus(text: &str, origin: &str, default_id: &str) -> Result<Corpus> {
    let json_err = |source| Error::Json {
        path: origin.to_string(),
        source,
    };
    let value: Value = serde_json::from_str(text).map_err(json_err)?;
    let (spec, raw) = match &value {
        Value::Object(map) if map.contains_key("samples") => {
            let c: CorpusIn = serde_json::from_value(value).map_err(json_err)?;
            if c.version != VERSION {
                return Err(Error::format(origin, format!("unsupported version {}", c.version)));
            }
            let spec = c
                .spec
                .map(|s| s.to_spec())
                .transpose()
                .map_err(|e| Error::format(origin, format!("spec: {e}")))?;
            (spec, c.samples)
        }
        Value::Object(_) => (None, vec![serde_json::from_value(value).map_err(json_err)?]),
        Value::Array(_) => {
            let matrix = serde_json::from_value(value).map_err(json_err)?;
            (
                None,
                vec![SampleIn {
                    id: None,
                    n: None,
                    matrix,
                    claimed: ClaimedDto::default(),
                }],
            )
        }
        _ => return Err(Error::format(origin, "expected a corpus, a sample or a matrix")),
    };
    let single = raw.len() == 1;
    let mut seen = BTreeSet::new();
    let mut samples = Vec::with_capacity(raw.len());
    for (k, s) in raw.into_iter().enumerate() {
        let id = s.id.unwrap_or_else(|| {
            if single {
                default_id.to_string()
            } else {
                format!("{default_id}-{k:04}")
            }
        });
        let matrix = matrix_from_rows(&s.matrix).map_err(|r| Error::format(origin, format!("sample {id}: {r}")))?;
        if let Some(n) = s.n {
            if matrix.shape() != (n, n) {
                return Err(Error::format(
                    origin,
                    format!("sample {id}: n = {n} but matrix is {}x{}", matrix.rows(), matrix.cols()),
                ));
            }
        }
        if !seen.insert(id.clone()) {
            return Err(Error::format(origin, format!("duplicate sample id {id}")));
        }
        samples.push(Sample {
            id,
            matrix,
            claimed: s.claimed.into(),
            generator: spec,
        });
    }
    Ok(Corpus { spec, samples })
}
