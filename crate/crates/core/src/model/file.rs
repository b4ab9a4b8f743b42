//! JSON space definitions:
//! `{"name": …, "dims": [..], "triples": [{"i":1,"j":2,"k":3,"value":"1/3"}]}`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{catalog::catalog_space, parse_rational, ModelError, SpaceModel};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceFile {
    pub name: String,
    pub dims: Vec<u32>,
    pub triples: Vec<TripleEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TripleEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

impl SpaceFile {
    pub fn from_space(space: &SpaceModel) -> Self {
        Self {
            name: space.name().to_string(),
            dims: space.dims().to_vec(),
            triples: space
                .triples()
                .iter()
                .map(|t| {
                    let [i, j, k] = t.indices();
                    TripleEntry {
                        i,
                        j,
                        k,
                        value: t.value().to_string(),
                    }
                })
                .collect(),
        }
    }

    pub fn into_space(self) -> Result<SpaceModel, ModelError> {
        let triples = self
            .triples
            .iter()
            .map(|t| Ok((t.i, t.j, t.k, parse_rational(&t.value)?)))
            .collect::<Result<Vec<_>, ModelError>>()?;
        SpaceModel::new(self.name, self.dims, &triples)
    }
}

pub fn space_from_json(text: &str) -> Result<SpaceModel, ModelError> {
    let file: SpaceFile =
        serde_json::from_str(text).map_err(|e| ModelError::InvalidFile(e.to_string()))?;
    file.into_space()
}

pub fn space_to_json(space: &SpaceModel) -> String {
    serde_json::to_string_pretty(&SpaceFile::from_space(space)).expect("plain data serializes")
}

/// Resolves a catalog id, falling back to a JSON file path.
pub fn load_space(id_or_path: &str) -> Result<SpaceModel, ModelError> {
    match catalog_space(id_or_path) {
        Ok(space) => Ok(space),
        Err(ModelError::UnknownSpace(_)) if Path::new(id_or_path).is_file() => {
            let text = std::fs::read_to_string(id_or_path)
                .map_err(|e| ModelError::InvalidFile(format!("{id_or_path}: {e}")))?;
            space_from_json(&text)
        }
        Err(e) => Err(e),
    }
}
