use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Matroid, Repr, EXPLICIT_MAX};
use crate::element::{bits, ElementId, ElementSet};
use crate::error::{Error, Result};
use crate::gf::Prime;

/// On-disk matroid description. See `docs/formats.md`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum MatroidSpec {
    Linear {
        field: u32,
        columns: BTreeMap<String, Vec<u8>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        names: BTreeMap<String, String>,
    },
    Graphic {
        edges: BTreeMap<String, (u32, u32)>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        names: BTreeMap<String, String>,
    },
    Explicit {
        elements: Vec<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rank: Option<BTreeMap<String, u8>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        independent_sets: Option<Vec<Vec<u32>>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        names: BTreeMap<String, String>,
    },
}

/// Key of a subset in an explicit rank map: sorted labels joined by commas; `""` is the empty set.
pub fn subset_key(set: &ElementSet) -> String {
    set.iter().map(|e| e.0.to_string()).collect::<Vec<_>>().join(",")
}

/// Parses an element label used as a JSON object key.
pub(crate) fn parse_id(key: &str) -> Result<ElementId> {
    key.trim().parse::<u32>().map(ElementId).map_err(|_| Error::Format(format!("bad element label \"{key}\"")))
}

fn keyed<T: Clone>(map: &BTreeMap<String, T>) -> Result<BTreeMap<ElementId, T>> {
    map.iter().map(|(k, v)| Ok((parse_id(k)?, v.clone()))).collect()
}

impl MatroidSpec {
    pub fn build(&self) -> Result<Matroid> {
        match self {
            MatroidSpec::Linear { field, columns, names } => {
                let field = Prime::new(*field)?;
                Ok(Matroid::linear(field, keyed(columns)?)?.with_names(keyed(names)?))
            }
            MatroidSpec::Graphic { edges, names } => {
                Ok(Matroid::graphic(keyed(edges)?)?.with_names(keyed(names)?))
            }
            MatroidSpec::Explicit { elements, rank, independent_sets, names } => {
                let ground: ElementSet = elements.iter().map(|&e| ElementId(e)).collect();
                if ground.len() != elements.len() {
                    return Err(Error::Format("duplicate element in `elements`".into()));
                }
                if ground.len() > EXPLICIT_MAX {
                    return Err(Error::resource(format!("explicit matroid with {} elements", ground.len())));
                }
                let order: Vec<ElementId> = ground.iter().copied().collect();
                let table = match (rank, independent_sets) {
                    (Some(rank), None) => {
                        let mut table = Vec::with_capacity(1 << order.len());
                        for m in 0..(1u64 << order.len()) {
                            let key = subset_key(&bits(m).map(|i| order[i]).collect());
                            let r = rank.get(&key).ok_or_else(|| Error::Format(format!("rank map lacks key \"{key}\"")))?;
                            table.push(*r);
                        }
                        table
                    }
                    (None, Some(sets)) => {
                        let mut masks = Vec::new();
                        for s in sets {
                            let mut m = 0u64;
                            for e in s {
                                let i = order.binary_search(&ElementId(*e)).map_err(|_| {
                                    Error::Format(format!("independent set mentions unknown element {e}"))
                                })?;
                                m |= 1 << i;
                            }
                            masks.push(m);
                        }
                        (0..(1u64 << order.len()))
                            .map(|x| masks.iter().map(|i| (i & x).count_ones() as u8).max().unwrap_or(0))
                            .collect()
                    }
                    _ => return Err(Error::Format("explicit matroid needs exactly one of `rank` or `independent_sets`".into())),
                };
                Ok(Matroid::from_rank_table(&ground, table)?.with_names(keyed(names)?))
            }
        }
    }

    /// Serializable description; linear matroids keep their columns, everything else becomes a rank map.
    pub fn from_matroid(m: &Matroid) -> Result<Self> {
        let names: BTreeMap<String, String> = m.names().iter().map(|(k, v)| (k.0.to_string(), v.clone())).collect();
        if let Repr::Linear { field, columns, .. } = &m.inner.repr {
            return Ok(MatroidSpec::Linear {
                field: field.get(),
                columns: m.elements().iter().map(|e| e.0.to_string()).zip(columns.iter().cloned()).collect(),
                names,
            });
        }
        if m.len() > EXPLICIT_MAX {
            return Err(Error::resource(format!("cannot write a rank table over {} elements", m.len())));
        }
        let rank = (0..(1u64 << m.len())).map(|x| (subset_key(&m.set_of(x)), m.rank_mask(x) as u8)).collect();
        Ok(MatroidSpec::Explicit {
            elements: m.elements().iter().map(|e| e.0).collect(),
            rank: Some(rank),
            independent_sets: None,
            names,
        })
    }
}

impl Matroid {
    pub fn from_json_str(text: &str) -> Result<Matroid> {
        let spec: MatroidSpec = serde_json::from_str(text)?;
        spec.build()
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Matroid> {
        Matroid::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::to_value(MatroidSpec::from_matroid(self)?)?)
    }
}
