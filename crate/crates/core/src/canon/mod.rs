//! Canonical representatives of right cosets `S·g` and double cosets `S·g·D`.
//!
//! The canonical representative of `S·g·D` is the element whose index configuration, read slot
//! by slot in ascending slot order, is lexicographically smallest, index priority being the
//! position in the canonical index list. If the double coset contains some permutation with
//! both signs the expression vanishes and [`CanonicalResult::Zero`] is returned.
//!
//! Slots are processed in order. For each slot the candidate table holds permutations `h`
//! standing for the cosets `S_b·h·D_p`, where `S_b` fixes the slots already processed and `D_p`
//! fixes the indices already placed; a slot receives the smallest index reachable from any
//! candidate, and every way of reaching it becomes a candidate for the next slot.

mod descriptor;
mod index_group;

use num_bigint::BigUint;

use crate::error::{invalid, Error, Result};
use crate::group::{
    schreier_sims, schreier_sims_with, GeneratingSet, SimsOptions, StabilizerChain,
    StrongGeneratingSet, SchreierVector,
};
use crate::perm::SignedPerm;

pub use descriptor::{d_generators, DummySet, Metric, RepeatedSet, SymmetryDescriptor};
use index_group::IndexSymmetry;

/// Default memory budget for the candidate table, in bytes.
pub const DEFAULT_MEM_LIMIT: usize = 1 << 30;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CanonicalResult {
    Zero,
    Perm(SignedPerm),
}

impl CanonicalResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, CanonicalResult::Zero)
    }

    pub fn perm(&self) -> Option<&SignedPerm> {
        match self {
            CanonicalResult::Zero => None,
            CanonicalResult::Perm(p) => Some(p),
        }
    }

    pub fn negated(&self) -> CanonicalResult {
        match self {
            CanonicalResult::Zero => CanonicalResult::Zero,
            CanonicalResult::Perm(p) => CanonicalResult::Perm(p.negated()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CanonOptions {
    /// Upper bound on the memory held by the candidate table.
    pub mem_limit_bytes: usize,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions {
            mem_limit_bytes: DEFAULT_MEM_LIMIT,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CanonStats {
    /// Largest candidate table built during the sweep, counted before equal candidates are
    /// merged. This is the quantity bounded by the memory budget.
    pub peak_candidates: usize,
    /// Largest candidate table after merging equal candidates.
    pub peak_distinct: usize,
}

/// Slot symmetries, either already strong or as plain generators.
#[derive(Clone, Debug)]
pub enum SlotSymmetry {
    Strong(StrongGeneratingSet),
    Generators(GeneratingSet),
}

impl SlotSymmetry {
    fn degree(&self) -> usize {
        match self {
            SlotSymmetry::Strong(s) => s.degree(),
            SlotSymmetry::Generators(g) => g.degree(),
        }
    }

    fn into_strong(self) -> Result<StrongGeneratingSet> {
        match self {
            SlotSymmetry::Strong(s) => Ok(s),
            SlotSymmetry::Generators(g) => schreier_sims(&[], &g),
        }
    }
}

impl From<StrongGeneratingSet> for SlotSymmetry {
    fn from(s: StrongGeneratingSet) -> Self {
        SlotSymmetry::Strong(s)
    }
}

impl From<GeneratingSet> for SlotSymmetry {
    fn from(g: GeneratingSet) -> Self {
        SlotSymmetry::Generators(g)
    }
}

/// Canonical representative of the right coset `S·g` with respect to the free indices: the
/// first free index (lowest canonical position) is moved to the lowest slot it can reach, then
/// the second free index to the lowest slot reachable without moving the first, and so on.
pub fn right_coset_rep(
    g: &SignedPerm,
    sgs: &StrongGeneratingSet,
    frees: &[usize],
) -> Result<SignedPerm> {
    check_degree(g, sgs.degree())?;
    let frees0 = frees_to_labels(frees, g.degree())?;
    Ok(free_stage(g, sgs, &frees0)?.0)
}

/// Canonical representative of the double coset `S·g·D`, `D` being described by `desc`.
pub fn double_coset_rep(
    g: &SignedPerm,
    sgs: &StrongGeneratingSet,
    desc: &SymmetryDescriptor,
) -> Result<CanonicalResult> {
    Ok(double_coset_rep_with(g, sgs, desc, &CanonOptions::default())?.0)
}

pub fn double_coset_rep_with(
    g: &SignedPerm,
    sgs: &StrongGeneratingSet,
    desc: &SymmetryDescriptor,
    opts: &CanonOptions,
) -> Result<(CanonicalResult, CanonStats)> {
    check_degree(g, sgs.degree())?;
    check_degree(g, desc.degree())?;
    if sgs.is_sign_degenerate() {
        return Ok((CanonicalResult::Zero, CanonStats::default()));
    }
    let chain = ascending_chain(sgs)?;
    sweep(g, &chain, desc, opts)
}

/// Free indices through [`right_coset_rep`], then the remaining indices through the double
/// coset of the slot symmetries fixing the free slots.
pub fn canonical_perm(
    g: &SignedPerm,
    symmetry: impl Into<SlotSymmetry>,
    desc: &SymmetryDescriptor,
) -> Result<CanonicalResult> {
    Ok(canonical_perm_with(g, symmetry, desc, &CanonOptions::default())?.0)
}

pub fn canonical_perm_with(
    g: &SignedPerm,
    symmetry: impl Into<SlotSymmetry>,
    desc: &SymmetryDescriptor,
    opts: &CanonOptions,
) -> Result<(CanonicalResult, CanonStats)> {
    let symmetry = symmetry.into();
    check_degree(g, symmetry.degree())?;
    check_degree(g, desc.degree())?;
    let sgs = symmetry.into_strong()?;
    if sgs.is_sign_degenerate() {
        return Ok((CanonicalResult::Zero, CanonStats::default()));
    }
    let frees0 = frees_to_labels(desc.frees(), g.degree())?;
    if frees0.is_empty() || sgs.generators().is_empty() {
        let chain = ascending_chain(&sgs)?;
        return sweep(g, &chain, desc, opts);
    }
    let (g1, targets, gens, order) = free_stage(g, &sgs, &frees0)?;
    let chain = stabilizer_chain_of_slots(g.degree(), &targets, gens, order)?;
    sweep(&g1, &chain, desc, opts)
}

fn check_degree(g: &SignedPerm, n: usize) -> Result<()> {
    if g.degree() != n {
        return invalid(format!(
            "permutation of degree {} with symmetry data of degree {n}",
            g.degree()
        ));
    }
    Ok(())
}

fn frees_to_labels(frees: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(frees.len());
    for &f in frees {
        if f == 0 || f > n {
            return invalid(format!("free position {f} out of range 1..={n}"));
        }
        out.push(f - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Returns the transformed permutation, the slots now holding the free indices (in free-index
/// order), strong generators for a base starting with those slots, and the group order.
fn free_stage(
    g: &SignedPerm,
    sgs: &StrongGeneratingSet,
    frees0: &[usize],
) -> Result<(SignedPerm, Vec<usize>, Vec<SignedPerm>, BigUint)> {
    let n = g.degree();
    let order = sgs.order().0;
    let mut h = g.clone();
    let mut gens = sgs.generators().generators().to_vec();
    let mut targets: Vec<usize> = Vec::with_capacity(frees0.len());
    for &f in frees0 {
        let slot = h.inverse().at(f);
        let chain = schreier_sims_with(
            n,
            targets.clone(),
            gens,
            &SimsOptions {
                known_order: Some(order.clone()),
                ..SimsOptions::default()
            },
        )?;
        // generators of the pointwise stabilizer of the targets chosen so far
        let level = targets.len();
        let stab: Vec<usize> = if level < chain.base().len() {
            chain.level_generators(level).to_vec()
        } else {
            Vec::new()
        };
        let sv = SchreierVector::build(slot, n, chain.pool(), &stab);
        let best = *sv.orbit0().iter().min().expect("orbit contains its root");
        if best != slot {
            // u maps slot -> best; u^-1 * h carries f to `best`
            let u = sv.representative(best, chain.pool());
            h = u.inverse().then(&h);
        }
        targets.push(best);
        gens = chain.pool().gens.clone();
    }
    Ok((h, targets, gens, order))
}

/// Chain for the pointwise stabilizer of `slots`, with a base compatible with ascending slot
/// order.
fn stabilizer_chain_of_slots(
    n: usize,
    slots: &[usize],
    gens: Vec<SignedPerm>,
    order: BigUint,
) -> Result<StabilizerChain> {
    let mut base: Vec<usize> = slots.to_vec();
    base.extend((0..n).filter(|p| !slots.contains(p)));
    let chain = schreier_sims_with(
        n,
        base,
        gens,
        &SimsOptions {
            known_order: Some(order),
            prune: true,
            ..SimsOptions::default()
        },
    )?;
    let skip = chain.base().iter().take_while(|b| slots.contains(b)).count();
    Ok(chain.tail(skip))
}

/// A chain for `sgs` whose base is processed in ascending slot order: the base is increasing,
/// and every slot that is not a base point is fixed by the stabilizer of the slots before it.
/// The given base is reused when it qualifies; otherwise the chain is rebuilt.
pub(crate) fn ascending_chain(sgs: &StrongGeneratingSet) -> Result<StabilizerChain> {
    let chain = sgs.chain();
    if is_ascending_compatible(&chain) {
        return Ok(chain);
    }
    let n = sgs.degree();
    let order = chain.order();
    schreier_sims_with(
        n,
        (0..n).collect(),
        sgs.generators().generators().to_vec(),
        &SimsOptions {
            known_order: Some(order),
            prune: true,
            ..SimsOptions::default()
        },
    )
}

fn is_ascending_compatible(chain: &StabilizerChain) -> bool {
    let base = chain.base();
    if base.windows(2).any(|w| w[0] >= w[1]) {
        return false;
    }
    let pool = chain.pool();
    let mut level = 0;
    for slot in 0..chain.degree() {
        if level < base.len() && base[level] == slot {
            level += 1;
            continue;
        }
        if level >= base.len() {
            break;
        }
        // the generators of the level about to be processed must fix this slot
        if chain
            .level_generators(level)
            .iter()
            .any(|&gi| pool.gens[gi].moves(slot))
        {
            return false;
        }
    }
    true
}

/// The slot-by-slot double coset sweep.
fn sweep(
    g: &SignedPerm,
    chain: &StabilizerChain,
    desc: &SymmetryDescriptor,
    opts: &CanonOptions,
) -> Result<(CanonicalResult, CanonStats)> {
    let n = g.degree();
    if chain.is_degenerate() {
        return Ok((CanonicalResult::Zero, CanonStats::default()));
    }
    let mut level_of = vec![None; n];
    for (l, &b) in chain.base().iter().enumerate() {
        level_of[b] = Some(l);
    }
    let entry_bytes = n * std::mem::size_of::<usize>() + std::mem::size_of::<SignedPerm>();
    let max_entries = (opts.mem_limit_bytes / entry_bytes.max(1)).max(1);

    let mut dsym = IndexSymmetry::new(desc);
    let mut table = vec![g.clone()];
    let mut stats = CanonStats {
        peak_candidates: 1,
        peak_distinct: 1,
    };
    for slot in 0..n {
        let md = dsym.orbit_mins();
        let single = [slot];
        let (orbit, sv): (&[usize], Option<&SchreierVector>) = match level_of[slot] {
            Some(l) => (chain.sv(l).orbit0(), Some(chain.sv(l))),
            None => (&single, None),
        };

        let mut best = usize::MAX;
        for h in &table {
            for &x in orbit {
                best = best.min(md[h.at(x)]);
            }
        }

        let mut next = Vec::new();
        for h in &table {
            for &x in orbit {
                let label = h.at(x);
                if md[label] != best {
                    continue;
                }
                let mut h1 = h.clone();
                if x != slot {
                    sv.expect("moved slots come from a chain level")
                        .left_apply(x, &mut h1, chain.pool());
                }
                dsym.relabel(&mut h1, label, best);
                debug_assert_eq!(h1.at(slot), best);
                next.push(h1);
                if next.len() > max_entries {
                    return Err(Error::ResourceLimit(format!(
                        "candidate table exceeded {} entries ({} bytes budget)",
                        max_entries, opts.mem_limit_bytes
                    )));
                }
            }
        }

        stats.peak_candidates = stats.peak_candidates.max(next.len());
        next.sort_unstable();
        next.dedup();
        if next.windows(2).any(|w| w[0].raw() == w[1].raw()) {
            return Ok((CanonicalResult::Zero, stats));
        }
        stats.peak_distinct = stats.peak_distinct.max(next.len());
        table = next;
        dsym.fix(best);
    }
    let result = table.swap_remove(0);
    Ok((CanonicalResult::Perm(result), stats))
}
