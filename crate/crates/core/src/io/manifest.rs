use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::kh::Deformation;
use crate::link::{parse_pd, BraidWord, LinkDiagram};
use crate::link::braid_closure;

/// A knot or link given by a braid word (`"3: 1 -2 1"`) or a PD code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotEntry {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub braid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pd: Option<String>,
    /// Declared writhe, checked against the diagram.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub writhe: Option<i32>,
    /// Declared "all crossings negative", checked against the diagram.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative: Option<bool>,
}

impl KnotEntry {
    pub fn braid(name: &str, word: &str) -> Self {
        KnotEntry { name: name.into(), braid: Some(word.into()), pd: None, writhe: None, negative: None }
    }

    pub fn pd(name: &str, code: &str) -> Self {
        KnotEntry { name: name.into(), braid: None, pd: Some(code.into()), writhe: None, negative: None }
    }

    pub fn diagram(&self) -> Result<LinkDiagram> {
        match (&self.braid, &self.pd) {
            (Some(b), None) => braid_closure(&b.parse::<BraidWord>()?),
            (None, Some(p)) => parse_pd(p),
            _ => Err(Error::Manifest(format!("{}: give exactly one of braid and pd", self.name))),
        }
    }

    /// The diagram, after checking the declared writhe and negativity.
    pub fn validated(&self) -> Result<LinkDiagram> {
        let d = self.diagram()?;
        if let Some(w) = self.writhe {
            if w != d.writhe() {
                return Err(Error::Manifest(format!("{}: declared writhe {w}, diagram has {}", self.name, d.writhe())));
            }
        }
        if let Some(neg) = self.negative {
            if neg != (d.n_plus() == 0) {
                return Err(Error::Manifest(format!("{}: declared negative = {neg}, diagram has {} positive crossings", self.name, d.n_plus())));
            }
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum Task {
    Homology,
    SInvariant,
    /// Skein triangles at one crossing, or at every crossing.
    Triangle {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        crossing: Option<usize>,
    },
    Induct {
        max_m: usize,
    },
    VerifySinv {
        n: usize,
    },
}

impl Task {
    pub fn name(&self) -> String {
        match self {
            Task::Homology => "homology".into(),
            Task::SInvariant => "s-invariant".into(),
            Task::Triangle { crossing: Some(x) } => format!("triangle@{x}"),
            Task::Triangle { crossing: None } => "triangle".into(),
            Task::Induct { max_m } => format!("induct(m<={max_m})"),
            Task::VerifySinv { n } => format!("verify-sinv(n={n})"),
        }
    }
}

fn default_field() -> u32 {
    3
}

fn default_deformation() -> Deformation {
    Deformation::Lee
}

fn default_budget() -> usize {
    60
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub knots: Vec<KnotEntry>,
    #[serde(default = "default_field")]
    pub field: u32,
    #[serde(default = "default_deformation")]
    pub deformation: Deformation,
    #[serde(default = "default_budget")]
    pub budget_crossings: usize,
    /// Generator budget of the scanning engine.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memory_budget: Option<usize>,
    pub tasks: Vec<Task>,
}

impl RunManifest {
    pub fn new(knots: Vec<KnotEntry>, tasks: Vec<Task>) -> Self {
        RunManifest { knots, field: 3, deformation: Deformation::Lee, budget_crossings: 60, memory_budget: None, tasks }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("manifest serializes")
    }

    /// Problems with the manifest, one per offending entry.
    pub fn validate(&self) -> Vec<String> {
        let mut out = vec![];
        match PrimeField::new(self.field) {
            Err(e) => out.push(e.to_string()),
            Ok(f) if f.p() == 2 && self.deformation == Deformation::Lee => out.push(Error::CharacteristicTwo.to_string()),
            _ => {}
        }
        for k in &self.knots {
            if let Err(e) = k.validated() {
                out.push(e.to_string());
            }
        }
        out
    }
}
