//! Tensor heads and vector spaces.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::canon::Metric;
use crate::error::{Error, Result};
use crate::group::{schreier_sims, GeneratingSet, StrongGeneratingSet};
use crate::perm::{ExtendedImages, Sign, SignedPerm};

#[derive(Clone, Debug)]
pub struct TensorHead {
    pub name: String,
    pub arity: usize,
    pub symmetry: StrongGeneratingSet,
    pub commuting: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorSpace {
    pub name: String,
    pub metric: Metric,
    /// Index names belonging to this space. A space without a list takes every name not
    /// claimed elsewhere; the first such space is the default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub indices: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct HeadJson {
    name: String,
    arity: usize,
    #[serde(default)]
    base: Vec<usize>,
    #[serde(default)]
    genset: Vec<ExtendedImages>,
    #[serde(default = "yes")]
    commuting: bool,
}

fn yes() -> bool {
    true
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct RegistryJson {
    #[serde(default)]
    heads: Vec<HeadJson>,
    #[serde(default)]
    spaces: Vec<VectorSpace>,
}

/// Heads and spaces known to the frontend. Heads not registered get no slot symmetry.
#[derive(Clone, Debug)]
pub struct Registry {
    heads: BTreeMap<String, TensorHead>,
    spaces: Vec<VectorSpace>,
}

fn cycles(n: usize, cs: &[&[usize]], sign: Sign) -> SignedPerm {
    let cs: Vec<Vec<usize>> = cs.iter().map(|c| c.to_vec()).collect();
    SignedPerm::from_cycles(n, &cs, sign).expect("built-in generator")
}

impl Default for Registry {
    /// `R` with Riemann symmetries, `F` antisymmetric, `S` symmetric, one space `M` with a
    /// symmetric metric.
    fn default() -> Self {
        let mut reg = Registry::empty();
        let riemann = vec![
            cycles(4, &[&[1, 2]], Sign::Minus),
            cycles(4, &[&[1, 3], &[2, 4]], Sign::Plus),
        ];
        reg.add_head("R", 4, riemann, true).unwrap();
        reg.add_head("F", 2, vec![cycles(2, &[&[1, 2]], Sign::Minus)], true)
            .unwrap();
        reg.add_head("S", 2, vec![cycles(2, &[&[1, 2]], Sign::Plus)], true)
            .unwrap();
        reg.spaces.push(VectorSpace {
            name: "M".into(),
            metric: Metric::Symmetric,
            indices: None,
        });
        reg
    }
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            heads: BTreeMap::new(),
            spaces: Vec::new(),
        }
    }

    /// Registers a head; its strong generating set is computed from `gens`.
    pub fn add_head(
        &mut self,
        name: &str,
        arity: usize,
        gens: Vec<SignedPerm>,
        commuting: bool,
    ) -> Result<()> {
        let gs = GeneratingSet::new(arity, gens)?;
        self.add_head_sgs(name, schreier_sims(&[], &gs)?, commuting);
        Ok(())
    }

    pub fn add_head_sgs(&mut self, name: &str, symmetry: StrongGeneratingSet, commuting: bool) {
        self.heads.insert(
            name.to_string(),
            TensorHead {
                name: name.to_string(),
                arity: symmetry.degree(),
                symmetry,
                commuting,
            },
        );
    }

    pub fn add_space(&mut self, space: VectorSpace) {
        self.spaces.push(space);
    }

    /// Reads `{heads: [{name, arity, base, genset, commuting?}], spaces: [{name, metric,
    /// indices?}]}`. Without spaces, the default space `M` (symmetric metric) is used.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RegistryJson =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let mut reg = Registry::empty();
        for h in raw.heads {
            let gens = h
                .genset
                .iter()
                .map(|g| {
                    if g.0.len() != h.arity + 2 {
                        return Err(Error::Format(format!(
                            "head {}: generator of length {} for arity {}",
                            h.name,
                            g.0.len(),
                            h.arity
                        )));
                    }
                    g.decode()
                })
                .collect::<Result<Vec<_>>>()?;
            let gs = GeneratingSet::new(h.arity, gens)?;
            let sgs = schreier_sims(&h.base, &gs)?;
            reg.add_head_sgs(&h.name, sgs, h.commuting);
        }
        reg.spaces = raw.spaces;
        if reg.spaces.is_empty() {
            reg.spaces.push(VectorSpace {
                name: "M".into(),
                metric: Metric::Symmetric,
                indices: None,
            });
        }
        Ok(reg)
    }

    pub fn head(&self, name: &str) -> Option<&TensorHead> {
        self.heads.get(name)
    }

    pub fn spaces(&self) -> &[VectorSpace] {
        &self.spaces
    }

    /// Space of an abstract index name.
    pub fn space_of(&self, name: &str) -> Result<usize> {
        if let Some(i) = self.spaces.iter().position(|s| {
            s.indices
                .as_ref()
                .is_some_and(|l| l.iter().any(|x| x == name))
        }) {
            return Ok(i);
        }
        self.default_space().ok_or_else(|| {
            Error::InvalidExpression(format!("index {name} belongs to no vector space"))
        })
    }

    pub fn default_space(&self) -> Option<usize> {
        self.spaces.iter().position(|s| s.indices.is_none())
    }
}
