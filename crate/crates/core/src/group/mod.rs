//! Permutation groups given by generators: enumeration, orbits, stabilizer chains.

mod chain;
mod orbit;

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::perm::SignedPerm;

pub use chain::{order_of_group, perm_member, schreier_sims, StrongGeneratingSet};
pub(crate) use chain::{schreier_sims_with, SimsOptions, StabilizerChain};
pub use orbit::{orbit, schreier_vector, trace, SchreierVector};
pub(crate) use orbit::GenPool;

/// Default cap on the number of elements [`dimino`] will enumerate.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// Generators of a group of signed permutations, all of one degree.
///
/// Construction drops exact duplicates and the positive identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingSet {
    degree: usize,
    gens: Vec<SignedPerm>,
}

impl GeneratingSet {
    pub fn new(degree: usize, gens: Vec<SignedPerm>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if g.degree() != degree {
                return invalid(format!(
                    "generator of degree {} in a set of degree {degree}",
                    g.degree()
                ));
            }
            if g.is_identity() || !seen.insert(g.clone()) {
                continue;
            }
            kept.push(g);
        }
        Ok(GeneratingSet { degree, gens: kept })
    }

    pub fn trivial(degree: usize) -> Self {
        GeneratingSet {
            degree,
            gens: Vec::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[SignedPerm] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }
}

/// Order of a group, exact.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupOrder(pub BigUint);

impl GroupOrder {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl fmt::Display for GroupOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for GroupOrder {
    fn from(v: u64) -> Self {
        GroupOrder(BigUint::from(v))
    }
}

// Serialized as a decimal string; orders overflow every JSON number type.
impl Serialize for GroupOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupOrder {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<BigUint>()
            .map(GroupOrder)
            .map_err(serde::de::Error::custom)
    }
}

/// All elements of the group generated by `gs` (signs included), by Dimino's algorithm.
pub fn dimino(gs: &GeneratingSet) -> Result<Vec<SignedPerm>> {
    dimino_capped(gs, DEFAULT_ENUMERATION_CAP)
}

pub fn dimino_capped(gs: &GeneratingSet, cap: usize) -> Result<Vec<SignedPerm>> {
    let id = SignedPerm::identity(gs.degree());
    let mut elements = vec![id.clone()];
    let mut set: HashSet<SignedPerm> = HashSet::from([id]);
    let gens = gs.generators();
    let over = |len: usize| -> Result<()> {
        if len > cap {
            Err(Error::ResourceLimit(format!(
                "group enumeration exceeded {cap} elements"
            )))
        } else {
            Ok(())
        }
    };

    for (i, g) in gens.iter().enumerate() {
        if set.contains(g) {
            continue;
        }
        let prev_order = elements.len();
        // the first new coset H*g
        for k in 0..prev_order {
            let e = elements[k].then(g);
            set.insert(e.clone());
            elements.push(e);
        }
        over(elements.len())?;
        let mut rep_pos = prev_order;
        while rep_pos < elements.len() {
            let rep = elements[rep_pos].clone();
            for s in &gens[..=i] {
                let elt = rep.then(s);
                if set.contains(&elt) {
                    continue;
                }
                for k in 0..prev_order {
                    let e = elements[k].then(&elt);
                    set.insert(e.clone());
                    elements.push(e);
                }
                over(elements.len())?;
            }
            rep_pos += prev_order;
        }
    }
    Ok(elements)
}

/// Generators of `gs` fixing every listed 1-based point. This filters the given list; it is
/// the full point stabilizer only when `gs` is strong relative to a base starting with `points`.
pub fn stabilizer(points: &[usize], gs: &GeneratingSet) -> Result<GeneratingSet> {
    for &p in points {
        if p == 0 || p > gs.degree() {
            return invalid(format!("point {p} out of range 1..={}", gs.degree()));
        }
    }
    Ok(GeneratingSet {
        degree: gs.degree(),
        gens: gs
            .generators()
            .iter()
            .filter(|g| points.iter().all(|&p| !g.moves(p - 1)))
            .cloned()
            .collect(),
    })
}
