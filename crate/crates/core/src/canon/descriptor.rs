//! Free, dummy and repeated index data, and the index-symmetry group it implies.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::group::GeneratingSet;
use crate::perm::{Sign, SignedPerm};

/// Symmetry of the metric of a vector space, as seen by its dummy pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Metric {
    Antisymmetric,
    /// No metric: contravariant and covariant positions never swap.
    None,
    Symmetric,
}

impl Metric {
    pub fn as_i64(self) -> i64 {
        match self {
            Metric::Antisymmetric => -1,
            Metric::None => 0,
            Metric::Symmetric => 1,
        }
    }

    /// Sign picked up by swapping the two members of a dummy pair, if that swap is allowed.
    pub fn swap_sign(self) -> Option<Sign> {
        match self {
            Metric::Antisymmetric => Some(Sign::Minus),
            Metric::None => None,
            Metric::Symmetric => Some(Sign::Plus),
        }
    }
}

impl TryFrom<i64> for Metric {
    type Error = String;

    fn try_from(v: i64) -> std::result::Result<Self, String> {
        match v {
            -1 => Ok(Metric::Antisymmetric),
            0 => Ok(Metric::None),
            1 => Ok(Metric::Symmetric),
            _ => Err(format!("metric flag must be -1, 0 or 1, got {v}")),
        }
    }
}

impl From<Metric> for i64 {
    fn from(m: Metric) -> i64 {
        m.as_i64()
    }
}

/// Dummy pairs of one vector space: `(contravariant, covariant)` positions in the canonical
/// index list, 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DummySet {
    pub metric: Metric,
    pub pairs: Vec<(usize, usize)>,
}

impl DummySet {
    pub fn new(metric: Metric, pairs: Vec<(usize, usize)>) -> Self {
        DummySet { metric, pairs }
    }

    /// From a flat list `[up1, down1, up2, down2, ...]`.
    pub fn from_flat(metric: Metric, flat: &[usize]) -> Result<Self> {
        if flat.len() % 2 != 0 {
            return invalid(format!("dummy list of odd length {}", flat.len()));
        }
        Ok(DummySet {
            metric,
            pairs: flat.chunks(2).map(|c| (c[0], c[1])).collect(),
        })
    }
}

/// Positions of one component index occurring several times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepeatedSet {
    pub positions: Vec<usize>,
}

impl RepeatedSet {
    pub fn new(positions: Vec<usize>) -> Self {
        RepeatedSet { positions }
    }
}

/// Everything needed to build the index-symmetry group of one canonicalization problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryDescriptor {
    degree: usize,
    frees: Vec<usize>,
    dummy_sets: Vec<DummySet>,
    repeated_sets: Vec<RepeatedSet>,
}

impl SymmetryDescriptor {
    /// Validates that every position is in range and that no position is used twice.
    pub fn new(
        degree: usize,
        frees: Vec<usize>,
        dummy_sets: Vec<DummySet>,
        repeated_sets: Vec<RepeatedSet>,
    ) -> Result<Self> {
        let mut used = HashSet::new();
        let mut claim = |p: usize, what: &str| -> Result<()> {
            if p == 0 || p > degree {
                return invalid(format!("{what} position {p} out of range 1..={degree}"));
            }
            if !used.insert(p) {
                return invalid(format!("position {p} appears in more than one role"));
            }
            Ok(())
        };
        for &f in &frees {
            claim(f, "free")?;
        }
        for ds in &dummy_sets {
            for &(u, d) in &ds.pairs {
                claim(u, "dummy")?;
                claim(d, "dummy")?;
            }
        }
        for rs in &repeated_sets {
            if rs.positions.len() < 2 {
                return invalid("a repeated set needs at least two positions");
            }
            for &p in &rs.positions {
                claim(p, "repeated")?;
            }
        }
        Ok(SymmetryDescriptor {
            degree,
            frees,
            dummy_sets,
            repeated_sets,
        })
    }

    /// No frees, dummies or repeated indices.
    pub fn empty(degree: usize) -> Self {
        SymmetryDescriptor {
            degree,
            frees: Vec::new(),
            dummy_sets: Vec::new(),
            repeated_sets: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn frees(&self) -> &[usize] {
        &self.frees
    }

    pub fn dummy_sets(&self) -> &[DummySet] {
        &self.dummy_sets
    }

    pub fn repeated_sets(&self) -> &[RepeatedSet] {
        &self.repeated_sets
    }
}

/// Generators of the index-symmetry group: exchange of consecutive dummy pairs, the
/// contravariant/covariant swap of each pair (signed by the metric, absent without one), and
/// adjacent transpositions inside each repeated set.
pub fn d_generators(desc: &SymmetryDescriptor) -> GeneratingSet {
    let n = desc.degree();
    let mut gens = Vec::new();
    let perm = |cycles: Vec<Vec<usize>>, sign| {
        SignedPerm::from_cycles(n, &cycles, sign).expect("validated descriptor positions")
    };
    for ds in desc.dummy_sets() {
        for w in ds.pairs.windows(2) {
            let ((u1, d1), (u2, d2)) = (w[0], w[1]);
            gens.push(perm(vec![vec![u1, u2], vec![d1, d2]], Sign::Plus));
        }
    }
    for ds in desc.dummy_sets() {
        if let Some(sign) = ds.metric.swap_sign() {
            for &(u, d) in &ds.pairs {
                gens.push(perm(vec![vec![u, d]], sign));
            }
        }
    }
    for rs in desc.repeated_sets() {
        for w in rs.positions.windows(2) {
            gens.push(perm(vec![vec![w[0], w[1]]], Sign::Plus));
        }
    }
    GeneratingSet::new(n, gens).expect("generators share the descriptor degree")
}
