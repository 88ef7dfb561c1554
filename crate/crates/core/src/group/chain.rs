//! Stabilizer chains and the Schreier-Sims construction.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::error::{invalid, Error, Result};
use crate::group::{GenPool, GeneratingSet, GroupOrder, SchreierVector};
use crate::perm::SignedPerm;

/// A base and a generating set that is strong relative to it.
///
/// `sign_degenerate` records that the group contains `-id`; such a group cannot be described by
/// its action on points alone, and every tensor with this symmetry vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongGeneratingSet {
    base: Vec<usize>,
    gens: GeneratingSet,
    sign_degenerate: bool,
}

impl StrongGeneratingSet {
    /// Wraps a base (1-based points) and generators assumed strong relative to it. No
    /// Schreier-Sims is run; use [`schreier_sims`] for arbitrary generators.
    ///
    /// A `-id` generator marks the set sign-degenerate and is not kept.
    pub fn from_parts(base: Vec<usize>, gens: GeneratingSet) -> Result<Self> {
        let n = gens.degree();
        let base0 = check_base(&base, n)?;
        let mut sign_degenerate = false;
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens.generators() {
            if g.is_identity_perm() {
                sign_degenerate |= g.sign().is_minus();
                continue;
            }
            if base0.iter().all(|&b| !g.moves(b)) {
                return invalid(format!("generator {g} fixes every base point"));
            }
            kept.push(g.clone());
        }
        Ok(StrongGeneratingSet {
            base: base0,
            gens: GeneratingSet::new(n, kept)?,
            sign_degenerate,
        })
    }

    /// The trivial group `{+id}` of the given degree.
    pub fn trivial(degree: usize) -> Self {
        StrongGeneratingSet {
            base: Vec::new(),
            gens: GeneratingSet::trivial(degree),
            sign_degenerate: false,
        }
    }

    pub fn degree(&self) -> usize {
        self.gens.degree()
    }

    /// 1-based base points.
    pub fn base(&self) -> Vec<usize> {
        self.base.iter().map(|b| b + 1).collect()
    }

    pub fn generators(&self) -> &GeneratingSet {
        &self.gens
    }

    pub fn is_sign_degenerate(&self) -> bool {
        self.sign_degenerate
    }

    pub fn order(&self) -> GroupOrder {
        GroupOrder(self.chain().order())
    }

    pub fn contains(&self, p: &SignedPerm) -> Result<bool> {
        if p.degree() != self.degree() {
            return invalid(format!(
                "permutation of degree {} tested against a group of degree {}",
                p.degree(),
                self.degree()
            ));
        }
        Ok(self.chain().contains(p))
    }

    pub(crate) fn chain(&self) -> StabilizerChain {
        StabilizerChain::new(
            self.degree(),
            self.base.clone(),
            self.gens.generators().to_vec(),
            self.sign_degenerate,
        )
    }
}

fn check_base(base: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut seen = HashSet::new();
    base.iter()
        .map(|&b| {
            if b == 0 || b > n {
                invalid(format!("base point {b} out of range 1..={n}"))
            } else if !seen.insert(b) {
                invalid(format!("base point {b} repeated"))
            } else {
                Ok(b - 1)
            }
        })
        .collect()
}

/// Builds a strong generating set from arbitrary generators. The returned base starts with
/// `partial_base` (1-based); further points are the smallest points moved by the generator that
/// required them.
pub fn schreier_sims(partial_base: &[usize], gs: &GeneratingSet) -> Result<StrongGeneratingSet> {
    let base0 = check_base(partial_base, gs.degree())?;
    let chain = schreier_sims_with(
        gs.degree(),
        base0,
        gs.generators().to_vec(),
        &SimsOptions::default(),
    )?;
    Ok(chain.to_sgs())
}

pub fn order_of_group(sgs: &StrongGeneratingSet) -> GroupOrder {
    sgs.order()
}

pub fn perm_member(p: &SignedPerm, sgs: &StrongGeneratingSet) -> Result<bool> {
    sgs.contains(p)
}

#[derive(Clone, Debug)]
pub(crate) struct SimsOptions {
    /// Stop as soon as the chain reaches this order.
    pub known_order: Option<BigUint>,
    /// Drop base points whose fundamental orbit is trivial.
    pub prune: bool,
    /// Upper bound on the number of strong generators.
    pub max_generators: usize,
}

impl Default for SimsOptions {
    fn default() -> Self {
        SimsOptions {
            known_order: None,
            prune: false,
            max_generators: 100_000,
        }
    }
}

/// Levels of a stabilizer chain: level `l` holds the generators fixing `base[..l]` and the
/// Schreier vector of `base[l]` under them.
#[derive(Clone, Debug)]
pub(crate) struct StabilizerChain {
    degree: usize,
    pool: GenPool,
    base: Vec<usize>,
    level_gens: Vec<Vec<usize>>,
    svs: Vec<SchreierVector>,
    degenerate: bool,
}

impl StabilizerChain {
    pub fn new(degree: usize, base: Vec<usize>, gens: Vec<SignedPerm>, degenerate: bool) -> Self {
        let mut chain = StabilizerChain {
            degree,
            pool: GenPool::new(gens),
            base: Vec::new(),
            level_gens: Vec::new(),
            svs: Vec::new(),
            degenerate,
        };
        for b in base {
            chain.push_level(b);
        }
        chain
    }

    fn push_level(&mut self, b: usize) {
        let l = self.base.len();
        self.base.push(b);
        let gens: Vec<usize> = if l == 0 {
            (0..self.pool.len()).collect()
        } else {
            let prev_b = self.base[l - 1];
            self.level_gens[l - 1]
                .iter()
                .copied()
                .filter(|&g| !self.pool.gens[g].moves(prev_b))
                .collect()
        };
        self.svs
            .push(SchreierVector::build(b, self.degree, &self.pool, &gens));
        self.level_gens.push(gens);
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> &[usize] {
        &self.base
    }

    pub fn pool(&self) -> &GenPool {
        &self.pool
    }

    pub fn sv(&self, level: usize) -> &SchreierVector {
        &self.svs[level]
    }

    pub fn level_generators(&self, level: usize) -> &[usize] {
        &self.level_gens[level]
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    /// Divides `h` by coset representatives from level `from` on. Returns the residue and the
    /// first level at which sifting failed (the chain length if it went through).
    pub fn sift(&self, mut h: SignedPerm, from: usize) -> (SignedPerm, usize) {
        for l in from..self.base.len() {
            let beta = h.at(self.base[l]);
            if !self.svs[l].contains0(beta) {
                return (h, l);
            }
            self.svs[l].right_divide(beta, &mut h, &self.pool);
        }
        (h, self.base.len())
    }

    pub fn contains(&self, p: &SignedPerm) -> bool {
        let (res, level) = self.sift(p.clone(), 0);
        level == self.base.len()
            && res.is_identity_perm()
            && (!res.sign().is_minus() || self.degenerate)
    }

    pub fn order(&self) -> BigUint {
        let mut order: BigUint = self
            .svs
            .iter()
            .map(|sv| BigUint::from(sv.orbit_len()))
            .product();
        if self.degenerate {
            order *= 2u32;
        }
        order
    }

    fn add_generator(&mut self, g: SignedPerm, through_level: usize, from_level: usize) {
        if through_level == self.base.len() {
            let b = g.first_moved().expect("residue must move a point");
            let idx = self.pool.push(g);
            for gens in &mut self.level_gens {
                gens.push(idx);
            }
            self.push_level(b);
        } else {
            let idx = self.pool.push(g);
            for gens in &mut self.level_gens[..=through_level] {
                gens.push(idx);
            }
        }
        for l in from_level + 1..=through_level {
            self.svs[l] = SchreierVector::build(self.base[l], self.degree, &self.pool, &self.level_gens[l]);
        }
    }

    fn prune_trivial_levels(&mut self) {
        let keep: Vec<bool> = self.svs.iter().map(|sv| sv.orbit_len() > 1).collect();
        let mut k = keep.iter();
        self.base.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        self.level_gens.retain(|_| *k.next().unwrap());
        let mut k = keep.iter();
        self.svs.retain(|_| *k.next().unwrap());
    }

    /// The chain from level `from` on, sharing the generator pool.
    pub fn tail(&self, from: usize) -> StabilizerChain {
        StabilizerChain {
            degree: self.degree,
            pool: self.pool.clone(),
            base: self.base[from..].to_vec(),
            level_gens: self.level_gens[from..].to_vec(),
            svs: self.svs[from..].to_vec(),
            degenerate: self.degenerate,
        }
    }

    pub fn to_sgs(&self) -> StrongGeneratingSet {
        StrongGeneratingSet {
            base: self.base.clone(),
            gens: GeneratingSet::new(self.degree, self.pool.gens.clone())
                .expect("chain generators share the chain degree"),
            sign_degenerate: self.degenerate,
        }
    }
}

/// Deterministic Schreier-Sims. Schreier generators are checked level by level from the bottom
/// of the chain; a non-trivial residue is added at every level it fixes and checking resumes at
/// the deepest of those levels.
pub(crate) fn schreier_sims_with(
    degree: usize,
    partial_base: Vec<usize>,
    gens: Vec<SignedPerm>,
    opts: &SimsOptions,
) -> Result<StabilizerChain> {
    let mut degenerate = false;
    let mut seen = HashSet::new();
    let mut pool = Vec::new();
    for g in gens {
        if g.degree() != degree {
            return invalid(format!("generator of degree {} in degree {degree}", g.degree()));
        }
        if g.is_identity_perm() {
            degenerate |= g.sign().is_minus();
            continue;
        }
        if seen.insert(g.clone()) {
            pool.push(g);
        }
    }
    let mut base = partial_base;
    for g in &pool {
        if base.iter().all(|&b| !g.moves(b)) {
            base.push(g.first_moved().expect("non-identity generator"));
        }
    }

    let mut chain = StabilizerChain::new(degree, base, pool, degenerate);
    let mut level = chain.base.len() as isize - 1;
    'outer: while level >= 0 {
        if let Some(target) = &opts.known_order {
            if &chain.order() == target {
                break;
            }
        }
        let l = level as usize;
        let orbit = chain.svs[l].orbit0().to_vec();
        let gens_l = chain.level_gens[l].clone();
        for &beta in &orbit {
            let u = chain.svs[l].representative(beta, &chain.pool);
            for &s in &gens_l {
                let h = u.then(&chain.pool.gens[s]);
                let (res, j) = chain.sift(h, l);
                if j == chain.base.len() && res.is_identity_perm() {
                    if res.sign().is_minus() {
                        chain.degenerate = true;
                    }
                    continue;
                }
                if chain.pool.len() >= opts.max_generators {
                    return Err(Error::ResourceLimit(format!(
                        "Schreier-Sims exceeded {} strong generators",
                        opts.max_generators
                    )));
                }
                chain.add_generator(res, j, l);
                level = j as isize;
                continue 'outer;
            }
        }
        level -= 1;
    }
    if opts.prune {
        chain.prune_trivial_levels();
    }
    Ok(chain)
}
