//! Input document schemas and their conversion into core types.
//!
//! All documents are strict: unknown fields are rejected so a typo in a
//! field name fails loudly instead of silently defaulting.

use std::collections::BTreeMap;

use anyhow::{bail, Context, Result};
use serde::Deserialize;

use hkcover_core::{
    ArrangementCombinatorics, CurveProfile, EnumerationCaps, FamilyGrid, NcComponent,
    NormalCrossingModel, SearchMode, SearchSpec, SurfaceModel,
};

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceDoc {
    Hirzebruch { e: i64 },
    NefCanonical { euler: i64, ksq: i64, a: i64, b: i64 },
    Plane { d: i64 },
}

impl SurfaceDoc {
    pub fn to_model(&self) -> SurfaceModel {
        match *self {
            SurfaceDoc::Hirzebruch { e } => SurfaceModel::Hirzebruch { e },
            SurfaceDoc::NefCanonical { euler, ksq, a, b } => {
                SurfaceModel::NefCanonical { euler, ksq, a, b }
            }
            SurfaceDoc::Plane { d } => SurfaceModel::Plane { d },
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileDoc {
    pub j: usize,
    pub r_profile: BTreeMap<String, i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrangementDoc {
    pub surface: SurfaceDoc,
    pub k: i64,
    pub t: BTreeMap<String, i64>,
    #[serde(default)]
    pub star_property: Option<bool>,
    #[serde(default)]
    pub profiles: Option<Vec<ProfileDoc>>,
}

fn parse_counts(raw: &BTreeMap<String, i64>) -> Result<BTreeMap<i64, i64>> {
    raw.iter()
        .map(|(key, &count)| {
            let r: i64 = key
                .parse()
                .with_context(|| format!("multiplicity key {key:?} is not an integer"))?;
            Ok((r, count))
        })
        .collect()
}

pub struct ParsedArrangement {
    pub surface: SurfaceModel,
    pub combo: ArrangementCombinatorics,
    pub profiles: Option<Vec<CurveProfile>>,
}

impl ArrangementDoc {
    pub fn parse(&self) -> Result<ParsedArrangement> {
        let surface = self.surface.to_model();
        let star = self
            .star_property
            .unwrap_or(matches!(surface, SurfaceModel::Hirzebruch { .. }));
        let combo = ArrangementCombinatorics::new(self.k, parse_counts(&self.t)?, star)
            .map_err(|e| anyhow::anyhow!("{e}"))?;
        let profiles = match &self.profiles {
            None => None,
            Some(docs) => Some(
                docs.iter()
                    .map(|doc| {
                        CurveProfile::new(doc.j, parse_counts(&doc.r_profile)?)
                            .map_err(|e| anyhow::anyhow!("{e}"))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        Ok(ParsedArrangement { surface, combo, profiles })
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseDoc {
    pub euler: i64,
    pub ksq: i64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentDoc {
    pub id: String,
    pub euler: i64,
    pub self_int: i64,
    pub k_deg: i64,
    pub exceptional: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    pub k: i64,
    pub base: BaseDoc,
    pub components: Vec<ComponentDoc>,
    pub pairwise: Vec<(String, String, i64)>,
}

impl ModelDoc {
    pub fn parse(&self) -> Result<NormalCrossingModel> {
        let components = self
            .components
            .iter()
            .map(|c| NcComponent {
                id: c.id.clone(),
                euler: c.euler,
                self_int: c.self_int,
                k_deg: c.k_deg,
                exceptional: c.exceptional,
            })
            .collect();
        NormalCrossingModel::new(self.k, self.base.euler, self.base.ksq, components, &self.pairwise)
            .map_err(|e| anyhow::anyhow!("{e}"))
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyDoc {
    Hirzebruch { e: (i64, i64) },
    Plane { d: (i64, i64) },
    NefCanonical { surfaces: Vec<SurfaceDoc> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsDoc {
    #[serde(default)]
    pub max_solutions: Option<u64>,
    #[serde(default)]
    pub max_target: Option<i64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchSpecDoc {
    pub family: FamilyDoc,
    pub k: (i64, i64),
    #[serde(default)]
    pub n: Vec<i64>,
    pub mode: String,
    #[serde(default)]
    pub caps: Option<CapsDoc>,
}

impl SearchSpecDoc {
    /// Builds the core spec. `cap_override` (from HK_CAP_SUM) wins over the
    /// document's target cap.
    pub fn parse(&self, cap_override: Option<i64>) -> Result<SearchSpec> {
        let grid = match &self.family {
            FamilyDoc::Hirzebruch { e } => FamilyGrid::Hirzebruch { e: *e },
            FamilyDoc::Plane { d } => FamilyGrid::Plane { d: *d },
            FamilyDoc::NefCanonical { surfaces } => FamilyGrid::NefCanonical {
                surfaces: surfaces.iter().map(|s| s.to_model()).collect(),
            },
        };
        let mode = match self.mode.as_str() {
            "lemma_f0" => SearchMode::LemmaF0,
            "theorem_scan" => SearchMode::TheoremScan,
            "gap_minimum" => SearchMode::GapMinimum,
            other => bail!("unknown mode {other:?} (expected lemma_f0, theorem_scan or gap_minimum)"),
        };
        let defaults = EnumerationCaps::default();
        let mut caps = EnumerationCaps {
            max_solutions: self
                .caps
                .as_ref()
                .and_then(|c| c.max_solutions)
                .unwrap_or(defaults.max_solutions),
            max_target: self
                .caps
                .as_ref()
                .and_then(|c| c.max_target)
                .unwrap_or(defaults.max_target),
        };
        if let Some(cap) = cap_override {
            caps.max_target = cap;
        }
        Ok(SearchSpec { grid, k_range: self.k, n_set: self.n.clone(), mode, caps })
    }
}
