//! Finitely presented groups with marked geometric generators, their JSON
//! file format (`presentation/1`), and the built-in data pack builders.

use super::MonoError;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePresentation {
    pub name: String,
    pub generators: Vec<String>,
    /// Words as signed 1-based generator indices.
    pub relators: Vec<Vec<i32>>,
    /// 1-based indices of the geometric generators; nonempty.
    pub geometric: Vec<usize>,
    pub provenance: String,
    pub expectations: Option<Expectations>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expectations {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abelianization: Option<AbelianizationExpectation>,
    #[serde(default, rename = "homCounts", skip_serializing_if = "Option::is_none")]
    pub hom_counts: Option<Vec<HomCountExpectation>>,
    #[serde(
        default,
        rename = "geometricCount",
        skip_serializing_if = "Option::is_none"
    )]
    pub geometric_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianizationExpectation {
    #[serde(rename = "freeRank")]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCountExpectation {
    pub degree: usize,
    #[serde(rename = "type")]
    pub cyclical_type: Vec<usize>,
    pub total: usize,
}

/// On-disk shape, schema `presentation/1`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationFile {
    pub schema: String,
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
    pub geometric: Vec<usize>,
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expectations: Option<Expectations>,
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<FinitePresentation, MonoError> {
        if self.schema != "presentation/1" {
            return Err(MonoError::Presentation(format!(
                "schema: expected \"presentation/1\", got \"{}\"",
                self.schema
            )));
        }
        let g = self.generators.len();
        for (i, r) in self.relators.iter().enumerate() {
            for &letter in r {
                let idx = letter.unsigned_abs() as usize;
                if letter == 0 || idx == 0 || idx > g {
                    return Err(MonoError::Presentation(format!(
                        "relators[{i}]: index {letter} out of range (generators: {g})"
                    )));
                }
            }
        }
        if self.geometric.is_empty() {
            return Err(MonoError::Presentation(
                "geometric: must be nonempty".into(),
            ));
        }
        for &idx in &self.geometric {
            if idx == 0 || idx > g {
                return Err(MonoError::Presentation(format!(
                    "geometric: index {idx} out of range (generators: {g})"
                )));
            }
        }
        Ok(FinitePresentation {
            name: self.name,
            generators: self.generators,
            relators: self.relators,
            geometric: self.geometric,
            provenance: self.provenance,
            expectations: self.expectations,
        })
    }

    pub fn from_presentation(p: &FinitePresentation) -> PresentationFile {
        PresentationFile {
            schema: "presentation/1".into(),
            name: p.name.clone(),
            generators: p.generators.clone(),
            relators: p.relators.clone(),
            geometric: p.geometric.clone(),
            provenance: p.provenance.clone(),
            expectations: p.expectations.clone(),
        }
    }
}

/// Loads every `*.json` presentation in a directory, sorted by file name.
pub fn load_data_pack(dir: &Path) -> Result<Vec<(String, FinitePresentation)>, MonoError> {
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| MonoError::Presentation(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
        .collect();
    entries.sort();
    let mut out = Vec::new();
    for path in entries {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| MonoError::Presentation(format!("{}: {e}", path.display())))?;
        let file: PresentationFile = serde_json::from_str(&text)
            .map_err(|e| MonoError::Presentation(format!("{}: {e}", path.display())))?;
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        out.push((name, file.into_presentation()?));
    }
    Ok(out)
}

/// Alternating word a b a b ... of the given length, starting from
/// `first` (1-based indices over two generators).
fn alternating(first: i32, second: i32, len: usize) -> Vec<i32> {
    (0..len)
        .map(|i| if i % 2 == 0 { first } else { second })
        .collect()
}

/// Local fundamental-group presentation of the A_k germ v^2 = z^(k+1):
/// two geometric generators with the relation
/// (a b a ...) = (b a b ...), words of length k+1. A1 is the commuting
/// relation, A2 the braid relation.
pub fn ak_presentation(k: usize) -> FinitePresentation {
    assert!(k >= 1, "A0 is the free group of rank 1; use free_rank_one");
    let lhs = alternating(1, 2, k + 1);
    let rhs = alternating(2, 1, k + 1);
    let mut relator = lhs;
    relator.extend(rhs.iter().rev().map(|&x| -x));
    FinitePresentation {
        name: format!("A{k} local fundamental group"),
        generators: vec!["a".into(), "b".into()],
        relators: vec![relator],
        geometric: vec![1, 2],
        provenance: format!(
            "standard van Kampen presentation of the local group of the A{k} germ \
             (two meridian generators, torus-link relation)"
        ),
        expectations: None,
    }
}

/// Free group of rank 1: the local group of a smooth germ (A0).
pub fn free_rank_one() -> FinitePresentation {
    FinitePresentation {
        name: "A0 (smooth germ) local fundamental group, free of rank 1".into(),
        generators: vec!["a".into()],
        relators: vec![],
        geometric: vec![1],
        provenance: "local group of a smooth branch: infinite cyclic on one meridian".into(),
        expectations: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ak_relators() {
        assert_eq!(ak_presentation(1).relators, vec![vec![1, 2, -1, -2]]);
        assert_eq!(ak_presentation(2).relators, vec![vec![1, 2, 1, -2, -1, -2]]);
    }

    #[test]
    fn json_round_trip() {
        let pres = ak_presentation(3);
        let file = PresentationFile::from_presentation(&pres);
        let text = serde_json::to_string_pretty(&file).unwrap();
        let back: PresentationFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.into_presentation().unwrap(), pres);
    }

    #[test]
    fn schema_and_ranges_enforced() {
        let mut file = PresentationFile::from_presentation(&ak_presentation(1));
        file.schema = "presentation/2".into();
        assert!(file.clone().into_presentation().is_err());
        file.schema = "presentation/1".into();
        file.relators = vec![vec![3]];
        assert!(file.clone().into_presentation().is_err());
        file.relators = vec![];
        file.geometric = vec![];
        assert!(file.into_presentation().is_err());
    }
}
