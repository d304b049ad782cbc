//! Versioned JSON schemas for complexes of groups, cusped-space specs, and
//! peripheral assignments, used by the CLI and the bundled example files.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::boundary::PeripheralAssignment;
use crate::cog::ComplexOfGroups;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::scwol::Scwol;
use crate::subgroup::SubgroupSpec;
use crate::word::Word;

pub const SCHEMA_VERSION: u32 = 1;

/// A local group named by construction rather than by element table.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GroupRef {
    Trivial,
    Cyclic { n: usize, gen: String },
    Dihedral { n: usize },
    Free { names: Vec<String> },
}

impl GroupRef {
    pub fn to_spec(&self) -> GroupSpec {
        match self {
            GroupRef::Trivial => GroupSpec::trivial(),
            GroupRef::Cyclic { n, gen } => GroupSpec::cyclic(*n, gen),
            GroupRef::Dihedral { n } => GroupSpec::dihedral(*n),
            GroupRef::Free { names } => {
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                GroupSpec::free(refs.len(), &refs)
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArrowJson {
    pub i: usize,
    pub t: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompositionJson {
    pub a: usize,
    pub b: usize,
    pub ab: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwistJson {
    pub a: usize,
    pub b: usize,
    pub g: Word,
}

/// On-disk complex of groups: the base small category, one group per object,
/// generator images along each arrow, and the twisting cochain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CogJson {
    pub schema_version: u32,
    pub objects: Vec<String>,
    pub arrows: Vec<ArrowJson>,
    #[serde(default)]
    pub composition: Vec<CompositionJson>,
    pub groups: Vec<GroupRef>,
    pub psi: Vec<Vec<Word>>,
    #[serde(default)]
    pub twist: Vec<TwistJson>,
    #[serde(default)]
    pub tree: Option<Vec<usize>>,
}

impl CogJson {
    pub fn to_cog(&self) -> Result<ComplexOfGroups> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        if self.groups.len() != self.objects.len() {
            return Err(Error::Invalid("one group per object required".into()));
        }
        if self.psi.len() != self.arrows.len() {
            return Err(Error::Invalid("one psi entry per arrow required".into()));
        }
        let mut comp = HashMap::new();
        for c in &self.composition {
            comp.insert((c.a, c.b), c.ab);
        }
        let scwol = Scwol {
            object_names: self.objects.clone(),
            arrows: self.arrows.iter().map(|a| (a.i, a.t)).collect(),
            comp,
        };
        scwol.validate()?;
        let tree = match &self.tree {
            Some(t) => {
                if !scwol.is_spanning_tree(t) {
                    return Err(Error::InvalidTree("declared tree is not spanning".into()));
                }
                t.clone()
            }
            None => scwol.spanning_tree()?,
        };
        let mut twist = HashMap::new();
        for t in &self.twist {
            twist.insert((t.a, t.b), t.g.clone());
        }
        let cog = ComplexOfGroups {
            scwol,
            local_groups: self.groups.iter().map(|g| g.to_spec()).collect(),
            psi: self.psi.clone(),
            twist,
            tree,
        };
        Ok(cog)
    }
}

pub fn cog_from_json_str(s: &str) -> Result<ComplexOfGroups> {
    let j: CogJson = serde_json::from_str(s)?;
    j.to_cog()
}

/// On-disk cusped-space input: an ambient group, peripheral letter
/// subgroups, a Cayley-ball radius, and a horoball depth.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CuspedJson {
    pub schema_version: u32,
    pub group: GroupRef,
    pub peripherals: Vec<Vec<Word>>,
    pub radius: usize,
    pub depth: u32,
}

impl CuspedJson {
    pub fn peripheral_specs(&self) -> Vec<SubgroupSpec> {
        self.peripherals
            .iter()
            .map(|gens| SubgroupSpec::new(gens.clone()))
            .collect()
    }
}

pub fn cusped_from_json_str(s: &str) -> Result<CuspedJson> {
    Ok(serde_json::from_str(s)?)
}

/// On-disk peripheral assignment for the boundary pipeline.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AssignJson {
    pub schema_version: u32,
    /// per object: peripheral subgroup generator lists
    pub peripherals: Vec<Vec<Vec<Word>>>,
    /// per arrow: [source peripheral, target peripheral, conjugator word]
    pub arrow_maps: Vec<Vec<(usize, usize, Word)>>,
}

impl AssignJson {
    pub fn to_assignment(&self) -> Result<PeripheralAssignment> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported schema_version {}",
                self.schema_version
            )));
        }
        let peripherals = self
            .peripherals
            .iter()
            .map(|ps| ps.iter().map(|gens| SubgroupSpec::new(gens.clone())).collect())
            .collect();
        let arrow_maps = self
            .arrow_maps
            .iter()
            .map(|ms| {
                ms.iter()
                    .map(|(p, q, c)| (*p, (*q, c.clone())))
                    .collect()
            })
            .collect();
        Ok(PeripheralAssignment {
            peripherals,
            arrow_maps,
        })
    }
}

pub fn assignment_from_json_str(s: &str) -> Result<PeripheralAssignment> {
    let j: AssignJson = serde_json::from_str(s)?;
    j.to_assignment()
}

/// Serialize with sorted keys and a trailing newline, byte-stable across runs.
pub fn to_canonical_string(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cog_roundtrip_validates() {
        let s = r#"{
            "schema_version": 1,
            "objects": ["v0", "v1", "e"],
            "arrows": [{"i": 2, "t": 0}, {"i": 2, "t": 1}],
            "groups": [
                {"kind": "cyclic", "n": 4, "gen": "x"},
                {"kind": "cyclic", "n": 6, "gen": "y"},
                {"kind": "cyclic", "n": 2, "gen": "z"}
            ],
            "psi": [[[1, 1]], [[1, 1, 1]]]
        }"#;
        let cog = cog_from_json_str(s).unwrap();
        let report = crate::cog::validate_cocycles(&cog).unwrap();
        assert!(report.valid());
    }

    #[test]
    fn bad_schema_version_rejected() {
        let s = r#"{
            "schema_version": 99,
            "objects": ["v"],
            "arrows": [],
            "groups": [{"kind": "trivial"}],
            "psi": []
        }"#;
        assert!(cog_from_json_str(s).is_err());
    }

    #[test]
    fn canonical_json_is_key_sorted() {
        let v = serde_json::json!({"zeta": 1, "alpha": 2});
        let s = to_canonical_string(&v);
        assert!(s.find("alpha").unwrap() < s.find("zeta").unwrap());
    }
}
