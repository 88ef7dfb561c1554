//! JSON forms of strong generating sets and canonicalization requests.
//!
//! Permutations are always written as extended images (degree `n + 2`, the last two points
//! carrying the sign).

use serde::{Deserialize, Serialize};

use crate::canon::{
    canonical_perm_with, CanonOptions, CanonStats, CanonicalResult, DummySet, Metric,
    RepeatedSet, SlotSymmetry, SymmetryDescriptor,
};
use crate::error::{invalid, Error, Result};
use crate::group::{GeneratingSet, StrongGeneratingSet};
use crate::perm::{ExtendedImages, SignedPerm};

fn is_false(b: &bool) -> bool {
    !*b
}

/// `{base, genset}`, optionally with the extended degree `n` (needed when `genset` is empty).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SgsJson {
    #[serde(default)]
    pub base: Vec<usize>,
    pub genset: Vec<ExtendedImages>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub sign_degenerate: bool,
}

impl SgsJson {
    pub fn from_sgs(sgs: &StrongGeneratingSet) -> Self {
        SgsJson {
            base: sgs.base(),
            genset: sgs
                .generators()
                .generators()
                .iter()
                .map(ExtendedImages::encode)
                .collect(),
            n: Some(sgs.degree() + 2),
            sign_degenerate: sgs.is_sign_degenerate(),
        }
    }

    /// Degree of the permutations, without the sign points.
    pub fn degree(&self) -> Result<usize> {
        let from_gens = self.genset.first().map(|g| g.0.len());
        let ext = match (self.n, from_gens) {
            (Some(n), Some(m)) if n != m => {
                return Err(Error::Format(format!(
                    "n = {n} but generators have {m} points"
                )))
            }
            (Some(n), _) | (None, Some(n)) => n,
            (None, None) => return Err(Error::Format("empty genset needs an explicit n".into())),
        };
        if ext < 2 {
            return Err(Error::Format(format!("extended degree {ext} is below 2")));
        }
        Ok(ext - 2)
    }

    pub fn generating_set(&self) -> Result<GeneratingSet> {
        let n = self.degree()?;
        let gens = self
            .genset
            .iter()
            .map(ExtendedImages::decode)
            .collect::<Result<Vec<_>>>()?;
        GeneratingSet::new(n, gens)
    }

    /// Reads the set as already strong with respect to `base`.
    pub fn to_sgs(&self) -> Result<StrongGeneratingSet> {
        StrongGeneratingSet::from_parts(self.base.clone(), self.generating_set()?)
    }
}

/// A generating set given as one flat list of `m·n` points or as a list of `m` lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenList {
    Nested(Vec<Vec<usize>>),
    Flat(Vec<usize>),
}

impl GenList {
    pub fn decode(&self, ext_degree: usize) -> Result<Vec<SignedPerm>> {
        let lists: Vec<Vec<usize>> = match self {
            GenList::Nested(v) => v.clone(),
            GenList::Flat(v) => {
                if ext_degree == 0 || v.len() % ext_degree != 0 {
                    return Err(Error::Format(format!(
                        "flat GS of length {} is not a multiple of n = {ext_degree}",
                        v.len()
                    )));
                }
                v.chunks(ext_degree).map(|c| c.to_vec()).collect()
            }
        };
        lists
            .into_iter()
            .map(|l| {
                if l.len() != ext_degree {
                    return Err(Error::Format(format!(
                        "generator has {} points, expected {ext_degree}",
                        l.len()
                    )));
                }
                ExtendedImages(l).decode()
            })
            .collect()
    }
}

/// Request mirroring the low-level canonicalization entry point.
///
/// `n` is the extended degree. Dummies are listed flat as `[up1, down1, up2, down2, ...]`,
/// split into vector spaces by the lengths in `vds`, with one metric flag per space in `mQ`.
/// Repeated indices are split likewise by `vrs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonRequest {
    pub perm: Vec<usize>,
    pub n: usize,
    #[serde(rename = "SGSQ", default)]
    pub sgsq: u8,
    #[serde(default)]
    pub base: Vec<usize>,
    #[serde(rename = "GS")]
    pub gs: GenList,
    #[serde(default)]
    pub frees: Vec<usize>,
    #[serde(default)]
    pub vds: Vec<usize>,
    #[serde(default)]
    pub dummies: Vec<usize>,
    #[serde(rename = "mQ", default)]
    pub mq: Vec<i64>,
    #[serde(default)]
    pub vrs: Vec<usize>,
    #[serde(default)]
    pub repes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CanonResponse {
    Perm { cperm: Vec<usize> },
    Zero { zero: bool },
}

impl From<&CanonicalResult> for CanonResponse {
    fn from(r: &CanonicalResult) -> Self {
        match r {
            CanonicalResult::Zero => CanonResponse::Zero { zero: true },
            CanonicalResult::Perm(p) => CanonResponse::Perm {
                cperm: ExtendedImages::encode(p).0,
            },
        }
    }
}

fn split_by_lengths<'a>(what: &str, flat: &'a [usize], lens: &[usize]) -> Result<Vec<&'a [usize]>> {
    let total: usize = lens.iter().sum();
    if total != flat.len() {
        return invalid(format!(
            "{what} lengths add up to {total} but {} entries were given",
            flat.len()
        ));
    }
    let mut out = Vec::with_capacity(lens.len());
    let mut at = 0;
    for &l in lens {
        out.push(&flat[at..at + l]);
        at += l;
    }
    Ok(out)
}

impl CanonRequest {
    pub fn permutation(&self) -> Result<SignedPerm> {
        if self.perm.len() != self.n {
            return Err(Error::Format(format!(
                "perm has {} points but n = {}",
                self.perm.len(),
                self.n
            )));
        }
        ExtendedImages(self.perm.clone()).decode()
    }

    pub fn symmetry(&self) -> Result<SlotSymmetry> {
        let degree = self.n.checked_sub(2).ok_or_else(|| Error::Format("n below 2".into()))?;
        let gens = GeneratingSet::new(degree, self.gs.decode(self.n)?)?;
        match self.sgsq {
            1 => Ok(SlotSymmetry::Strong(StrongGeneratingSet::from_parts(
                self.base.clone(),
                gens,
            )?)),
            0 => Ok(SlotSymmetry::Generators(gens)),
            v => invalid(format!("SGSQ must be 0 or 1, got {v}")),
        }
    }

    pub fn descriptor(&self) -> Result<SymmetryDescriptor> {
        let degree = self.n.checked_sub(2).ok_or_else(|| Error::Format("n below 2".into()))?;
        if self.mq.len() != self.vds.len() {
            return invalid(format!(
                "{} metric flags for {} dummy sets",
                self.mq.len(),
                self.vds.len()
            ));
        }
        let dummy_sets = split_by_lengths("dummy-set", &self.dummies, &self.vds)?
            .into_iter()
            .zip(&self.mq)
            .map(|(flat, &m)| {
                let metric = Metric::try_from(m).map_err(Error::InvalidArgument)?;
                DummySet::from_flat(metric, flat)
            })
            .collect::<Result<Vec<_>>>()?;
        let repeated_sets = split_by_lengths("repeated-set", &self.repes, &self.vrs)?
            .into_iter()
            .map(|r| RepeatedSet::new(r.to_vec()))
            .collect();
        SymmetryDescriptor::new(degree, self.frees.clone(), dummy_sets, repeated_sets)
    }

    pub fn run(&self, opts: &CanonOptions) -> Result<(CanonicalResult, CanonStats)> {
        canonical_perm_with(&self.permutation()?, self.symmetry()?, &self.descriptor()?, opts)
    }
}
