//! The bundled corpus of tiny yes/no instances and the pipeline manifest
//! describing it.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::error::{Error, Result};
use crate::hampath::CubicalInstance;
use crate::solver::SearchBudget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    Yes,
    No,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stage {
    pub stage: String,
    /// Schemas consumed, joined with `+`.
    pub input: String,
    pub output: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusItem {
    pub name: String,
    /// Path of the cubical instance, relative to the manifest.
    pub input: String,
    pub expected: Expected,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineManifest {
    pub seed: u64,
    pub limits: SearchBudget,
    pub stages: Vec<Stage>,
    pub items: Vec<CorpusItem>,
}

const MANIFEST: &str = include_str!("../corpus/manifest.json");
const FILES: [(&str, &str); 5] = [
    ("one_bit.json", include_str!("../corpus/one_bit.json")),
    ("two_apart.json", include_str!("../corpus/two_apart.json")),
    ("three_path.json", include_str!("../corpus/three_path.json")),
    ("star.json", include_str!("../corpus/star.json")),
    ("worked_example.json", include_str!("../corpus/worked_example.json")),
];

impl PipelineManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let m: PipelineManifest = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        m.check_stages()?;
        Ok(m)
    }

    pub fn bundled() -> Self {
        PipelineManifest::parse(MANIFEST).expect("bundled manifest is valid")
    }

    /// Every schema a stage consumes is the corpus input or was produced by
    /// an earlier stage.
    pub fn check_stages(&self) -> Result<()> {
        let mut available = vec!["cubical".to_string()];
        for st in &self.stages {
            for need in st.input.split('+') {
                if !available.iter().any(|a| a == need) {
                    return Err(Error::Schema(format!(
                        "stage `{}` consumes `{need}`, which no earlier stage produces",
                        st.stage
                    )));
                }
            }
            available.push(st.output.clone());
        }
        Ok(())
    }
}

fn parse_instance(name: &str, text: &str) -> Result<CubicalInstance> {
    serde_json::from_str(text).map_err(|e| Error::Schema(format!("{name}: {e}")))
}

/// The bundled items with their instances.
pub fn bundled_items() -> Vec<(CorpusItem, CubicalInstance)> {
    PipelineManifest::bundled()
        .items
        .into_iter()
        .map(|item| {
            let (_, text) = FILES
                .iter()
                .find(|(f, _)| *f == item.input)
                .expect("bundled manifest names bundled files");
            let inst = parse_instance(&item.input, text).expect("bundled instance is valid");
            (item, inst)
        })
        .collect()
}

/// Loads a manifest and its instances from disk.
pub fn load_manifest(path: &Path) -> Result<(PipelineManifest, Vec<(CorpusItem, CubicalInstance)>)> {
    let manifest = PipelineManifest::parse(&std::fs::read_to_string(path)?)?;
    let dir = path.parent().unwrap_or(Path::new("."));
    let items = manifest
        .items
        .iter()
        .map(|item| {
            let text = std::fs::read_to_string(dir.join(&item.input))?;
            Ok((item.clone(), parse_instance(&item.input, &text)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((manifest, items))
}
