//! The JSON descriptor format.
//!
//! ```json
//! {
//!   "dim": 3,
//!   "label": "nodal quadric threefold",
//!   "components": [{"id": 1, "discrepancy": 1}],
//!   "strata": {
//!     "": {"0,0": 1, "1,1": 3, "2,2": 3, "3,3": 1},
//!     "1": {"builtin": "quadric_surface"}
//!   }
//! }
//! ```
//!
//! A stratum key is the comma-joined list of component ids (empty for `Y`).
//! A diamond is a dense `(d+1) x (d+1)` matrix, a sparse `{"p,q": h}` map or
//! a catalog entry `{"builtin": key, "params": [..]}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use stringy_core::analysis::{ExceptionalFiberDescriptor, FiberComponent, PairCount};
use stringy_core::sncweights::{format_rational, parse_rational, HodgePiece, QMatrix, SncComplexData, SncComponent};
use stringy_core::stringy::{Component, Stratum};
use stringy_core::{builtin_diamond, HodgeDiamond, ResolutionDescriptor};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DescriptorFile {
    pub dim: u32,
    pub label: String,
    #[serde(default)]
    pub components: Vec<ComponentEntry>,
    pub strata: BTreeMap<String, DiamondEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub snc: Option<SncBlock>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fibers: Vec<FiberEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentEntry {
    pub id: u32,
    pub discrepancy: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DiamondEntry {
    Dense(Vec<Vec<u64>>),
    Builtin {
        builtin: String,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        params: Vec<u64>,
    },
    Sparse(BTreeMap<String, u64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncBlock {
    pub levels: Vec<Vec<SncEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SncEntry {
    pub ids: Vec<u32>,
    pub diamond: DiamondEntry,
    /// Indices into the previous level; derived from `ids` when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<usize>>,
}

/// `delta_1, delta_2, ...` on the `(p, q)` piece, as rows of `"num/den"` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapEntry {
    pub p: u32,
    pub q: u32,
    pub matrices: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberEntry {
    pub point: String,
    pub components: Vec<FiberComponentEntry>,
    #[serde(default)]
    pub pairs: Vec<PairEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberComponentEntry {
    pub id: u32,
    pub discrepancy: i64,
    pub diamond: DiamondEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntry {
    pub a: u32,
    pub b: u32,
    pub count: i64,
}

/// Everything a descriptor file describes, validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedDescriptor {
    pub descriptor: ResolutionDescriptor,
    pub snc: Option<SncComplexData>,
    pub fibers: Vec<ExceptionalFiberDescriptor>,
}

fn invalid(at: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Invalid {
        at: at.into(),
        message: message.into(),
    }
}

/// Parses JSON text; errors carry the key path and the line/column.
pub fn parse(text: &str) -> Result<DescriptorFile, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        let (line, column) = (inner.line(), inner.column());
        let full = inner.to_string();
        let suffix = format!(" at line {line} column {column}");
        CliError::Parse {
            at: path,
            line,
            column,
            message: full.strip_suffix(&suffix).unwrap_or(&full).to_string(),
        }
    })
}

pub fn load_str(text: &str) -> Result<LoadedDescriptor, CliError> {
    parse(text)?.to_model()
}

pub fn load_path(path: &std::path::Path) -> Result<LoadedDescriptor, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    load_str(&text)
}

fn discrepancy(at: &str, value: i64) -> Result<u32, CliError> {
    if value < 0 {
        return Err(invalid(
            at,
            format!("discrepancy {value} is negative; only canonical singularities are supported"),
        ));
    }
    u32::try_from(value).map_err(|_| invalid(at, format!("discrepancy {value} is too large")))
}

fn parse_stratum_key(at: &str, key: &str) -> Result<Vec<u32>, CliError> {
    if key.trim().is_empty() {
        return Ok(Vec::new());
    }
    key.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| invalid(at, format!("stratum key {key:?} is not a comma-separated id list")))
        })
        .collect()
}

impl DiamondEntry {
    pub fn to_diamond(&self, at: &str, dim: u32) -> Result<HodgeDiamond, CliError> {
        let diamond = match self {
            DiamondEntry::Dense(rows) => HodgeDiamond::new(rows.len().saturating_sub(1) as u32, rows.clone()),
            DiamondEntry::Sparse(map) => {
                let mut entries = Vec::with_capacity(map.len());
                for (key, h) in map {
                    let pq: Vec<&str> = key.split(',').collect();
                    let parsed = match pq.as_slice() {
                        [p, q] => p.trim().parse::<u32>().ok().zip(q.trim().parse::<u32>().ok()),
                        _ => None,
                    };
                    let (p, q) =
                        parsed.ok_or_else(|| invalid(at, format!("key {key:?} is not of the form \"p,q\"")))?;
                    entries.push(((p, q), *h));
                }
                HodgeDiamond::from_entries(dim, entries)
            }
            DiamondEntry::Builtin { builtin, params } => builtin_diamond(builtin, params),
        }
        .map_err(|e| invalid(at, e.to_string()))?;
        if diamond.dim() != dim {
            return Err(invalid(
                at,
                format!("diamond has dimension {}, expected {dim}", diamond.dim()),
            ));
        }
        Ok(diamond)
    }

    /// Canonical form: the dense matrix.
    pub fn from_diamond(d: &HodgeDiamond) -> Self {
        DiamondEntry::Dense(d.rows())
    }
}

impl DescriptorFile {
    pub fn to_model(&self) -> Result<LoadedDescriptor, CliError> {
        let mut components = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let at = format!("components[{i}].discrepancy");
            components.push(Component::new(c.id, discrepancy(&at, c.discrepancy)?));
        }
        let mut strata = BTreeMap::new();
        for (key, entry) in &self.strata {
            let at = format!("strata.{key:?}");
            let ids = parse_stratum_key(&at, key)?;
            let codim = ids.len() as u32;
            if codim > self.dim {
                return Err(invalid(
                    &at,
                    format!("{codim} components cannot meet in dimension {}", self.dim),
                ));
            }
            let diamond = entry.to_diamond(&at, self.dim - codim)?;
            let stratum = Stratum::new(ids).ok_or_else(|| invalid(&at, "repeated id in stratum key"))?;
            if strata.insert(stratum, diamond).is_some() {
                return Err(invalid(&at, "the same stratum is given twice"));
            }
        }
        let descriptor = ResolutionDescriptor::new(self.dim, self.label.clone(), components, strata)
            .map_err(|e| invalid("strata", e.to_string()))?;
        let snc = self.snc.as_ref().map(SncBlock::to_model).transpose()?;
        let fibers = self
            .fibers
            .iter()
            .enumerate()
            .map(|(i, f)| f.to_model(&format!("fibers[{i}]")))
            .collect::<Result<_, _>>()?;
        Ok(LoadedDescriptor {
            descriptor,
            snc,
            fibers,
        })
    }

    /// Normalized file for a loaded descriptor: dense diamonds, explicit faces.
    pub fn from_model(model: &LoadedDescriptor) -> Self {
        let d = &model.descriptor;
        Self {
            dim: d.dim(),
            label: d.label().to_string(),
            components: d
                .components()
                .iter()
                .map(|c| ComponentEntry {
                    id: c.id,
                    discrepancy: i64::from(c.discrepancy),
                })
                .collect(),
            strata: d
                .strata()
                .map(|(s, h)| {
                    let key = s.ids().iter().map(u32::to_string).collect::<Vec<_>>().join(",");
                    (key, DiamondEntry::from_diamond(h))
                })
                .collect(),
            snc: model.snc.as_ref().map(SncBlock::from_model),
            fibers: model.fibers.iter().map(FiberEntry::from_model).collect(),
        }
    }
}

impl SncBlock {
    fn to_model(&self) -> Result<SncComplexData, CliError> {
        // D(r) has dimension dim D(1) - r + 1; the first component fixes dim D(1).
        let mut levels: Vec<Vec<SncComponent>> = Vec::with_capacity(self.levels.len());
        let mut base_dim = None;
        for (r, level) in self.levels.iter().enumerate() {
            let mut out = Vec::with_capacity(level.len());
            for (i, entry) in level.iter().enumerate() {
                let at = format!("snc.levels[{r}][{i}]");
                let dim = match base_dim {
                    Some(b) => u32::try_from(i64::from(b) - r as i64)
                        .map_err(|_| invalid(&at, "intersection of more components than the dimension allows"))?,
                    None => guess_dim(&entry.diamond).ok_or_else(|| {
                        invalid(
                            &at,
                            "the first component needs a dense or builtin diamond to fix the dimension",
                        )
                    })?,
                };
                let diamond = entry.diamond.to_diamond(&format!("{at}.diamond"), dim)?;
                base_dim.get_or_insert(dim);
                let faces = match &entry.faces {
                    Some(f) => f.clone(),
                    None if r == 0 => Vec::new(),
                    None => derive_faces(&entry.ids, &levels[r - 1]).ok_or_else(|| {
                        invalid(&at, format!("some facet of {:?} is missing from level {r}", entry.ids))
                    })?,
                };
                out.push(SncComponent {
                    ids: entry.ids.clone(),
                    diamond,
                    faces,
                });
            }
            levels.push(out);
        }
        let bare =
            SncComplexData::new(levels.clone(), BTreeMap::new()).map_err(|e| invalid("snc.levels", e.to_string()))?;
        let mut maps = BTreeMap::new();
        for (i, m) in self.maps.iter().enumerate() {
            let piece = HodgePiece { p: m.p, q: m.q };
            let mut list = Vec::with_capacity(m.matrices.len());
            for (j, rows) in m.matrices.iter().enumerate() {
                let at = format!("snc.maps[{i}].matrices[{j}]");
                let parsed: Vec<Vec<_>> = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                parse_rational(s)
                                    .ok_or_else(|| invalid(&at, format!("{s:?} is not a rational \"num/den\"")))
                            })
                            .collect::<Result<_, _>>()
                    })
                    .collect::<Result<_, _>>()?;
                // An empty list stands for the map into a zero-dimensional piece.
                let matrix = if parsed.is_empty() {
                    Some(QMatrix::zeros(0, bare.piece_dim(piece, j + 1)))
                } else {
                    QMatrix::from_rows(parsed)
                };
                list.push(matrix.ok_or_else(|| invalid(&at, "rows have different lengths"))?);
            }
            if maps.insert(piece, list).is_some() {
                return Err(invalid(format!("snc.maps[{i}]"), "piece given twice"));
            }
        }
        SncComplexData::new(levels, maps).map_err(|e| invalid("snc.maps", e.to_string()))
    }

    fn from_model(data: &SncComplexData) -> Self {
        Self {
            levels: data
                .levels()
                .iter()
                .map(|level| {
                    level
                        .iter()
                        .map(|c| SncEntry {
                            ids: c.ids.clone(),
                            diamond: DiamondEntry::from_diamond(&c.diamond),
                            faces: Some(c.faces.clone()),
                        })
                        .collect()
                })
                .collect(),
            maps: data
                .maps()
                .iter()
                .map(|(piece, list)| MapEntry {
                    p: piece.p,
                    q: piece.q,
                    matrices: list
                        .iter()
                        .map(|m| {
                            m.to_rows()
                                .iter()
                                .map(|row| row.iter().map(format_rational).collect())
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

fn guess_dim(entry: &DiamondEntry) -> Option<u32> {
    match entry {
        DiamondEntry::Dense(rows) => Some(rows.len().saturating_sub(1) as u32),
        DiamondEntry::Builtin { builtin, params } => builtin_diamond(builtin, params).ok().map(|d| d.dim()),
        DiamondEntry::Sparse(_) => None,
    }
}

fn derive_faces(ids: &[u32], previous: &[SncComponent]) -> Option<Vec<usize>> {
    (0..ids.len())
        .map(|i| {
            let mut face = ids.to_vec();
            face.remove(i);
            previous.iter().position(|c| c.ids == face)
        })
        .collect()
}

impl FiberEntry {
    fn to_model(&self, at: &str) -> Result<ExceptionalFiberDescriptor, CliError> {
        let mut components = Vec::with_capacity(self.components.len());
        for (i, c) in self.components.iter().enumerate() {
            let here = format!("{at}.components[{i}]");
            components.push(FiberComponent {
                id: c.id,
                discrepancy: discrepancy(&format!("{here}.discrepancy"), c.discrepancy)?,
                diamond: c.diamond.to_diamond(&format!("{here}.diamond"), 2)?,
            });
        }
        let mut pairs = Vec::with_capacity(self.pairs.len());
        for (i, p) in self.pairs.iter().enumerate() {
            let count = u64::try_from(p.count).map_err(|_| {
                invalid(
                    format!("{at}.pairs[{i}].count"),
                    format!("count {} is negative", p.count),
                )
            })?;
            pairs.push(PairCount { a: p.a, b: p.b, count });
        }
        ExceptionalFiberDescriptor::new(self.point.clone(), components, pairs).map_err(|e| invalid(at, e.to_string()))
    }

    fn from_model(fd: &ExceptionalFiberDescriptor) -> Self {
        Self {
            point: fd.point().to_string(),
            components: fd
                .components()
                .iter()
                .map(|c| FiberComponentEntry {
                    id: c.id,
                    discrepancy: i64::from(c.discrepancy),
                    diamond: DiamondEntry::from_diamond(&c.diamond),
                })
                .collect(),
            pairs: fd
                .pairs()
                .iter()
                .map(|p| PairEntry {
                    a: p.a,
                    b: p.b,
                    count: p.count as i64,
                })
                .collect(),
        }
    }
}

/// Pretty-printed JSON of the normalized file.
pub fn to_json(model: &LoadedDescriptor) -> String {
    serde_json::to_string_pretty(&DescriptorFile::from_model(model)).expect("plain data serializes")
}
