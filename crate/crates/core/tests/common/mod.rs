//! Brute-force reference implementation for small groups. Shares nothing with the library
//! beyond the public value types used to pass instances in and out.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use permcanon::canon::{CanonicalResult, DummySet, Metric, RepeatedSet, SymmetryDescriptor};
use permcanon::group::GeneratingSet;
use permcanon::{Sign, SignedPerm};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

/// 0-based images and a negative flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Raw {
    pub img: Vec<usize>,
    pub neg: bool,
}

impl Raw {
    pub fn identity(n: usize) -> Raw {
        Raw {
            img: (0..n).collect(),
            neg: false,
        }
    }

    /// Apply `self` first, then `other`.
    pub fn then(&self, other: &Raw) -> Raw {
        Raw {
            img: self.img.iter().map(|&i| other.img[i]).collect(),
            neg: self.neg ^ other.neg,
        }
    }

    pub fn inverse(&self) -> Raw {
        let mut img = vec![0; self.img.len()];
        for (i, &v) in self.img.iter().enumerate() {
            img[v] = i;
        }
        Raw { img, neg: self.neg }
    }

    pub fn transposition(n: usize, a: usize, b: usize, neg: bool) -> Raw {
        let mut r = Raw::identity(n);
        r.img.swap(a, b);
        r.neg = neg;
        r
    }

    pub fn from_signed(p: &SignedPerm) -> Raw {
        Raw {
            img: p.images().iter().map(|v| v - 1).collect(),
            neg: p.sign() == Sign::Minus,
        }
    }

    pub fn to_signed(&self) -> SignedPerm {
        let sign = if self.neg { Sign::Minus } else { Sign::Plus };
        SignedPerm::new(self.img.iter().map(|v| v + 1).collect(), sign).unwrap()
    }
}

/// Every element of the group generated by `gens`, or `None` past `cap` elements.
pub fn closure(n: usize, gens: &[Raw], cap: usize) -> Option<Vec<Raw>> {
    let id = Raw::identity(n);
    let mut seen: HashSet<Raw> = HashSet::new();
    seen.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return None;
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Raw> = seen.into_iter().collect();
    out.sort();
    Some(out)
}

/// Index-group generators written from scratch: every pair exchange, every metric swap and
/// every transposition inside a repeated set.
pub fn index_group_generators(desc: &SymmetryDescriptor) -> Vec<Raw> {
    let n = desc.degree();
    let mut gens = Vec::new();
    for ds in desc.dummy_sets() {
        for i in 0..ds.pairs.len() {
            for j in i + 1..ds.pairs.len() {
                let (u1, d1) = ds.pairs[i];
                let (u2, d2) = ds.pairs[j];
                let mut r = Raw::identity(n);
                r.img.swap(u1 - 1, u2 - 1);
                r.img.swap(d1 - 1, d2 - 1);
                gens.push(r);
            }
            let (u, d) = ds.pairs[i];
            match ds.metric {
                Metric::Symmetric => gens.push(Raw::transposition(n, u - 1, d - 1, false)),
                Metric::Antisymmetric => gens.push(Raw::transposition(n, u - 1, d - 1, true)),
                Metric::None => {}
            }
        }
    }
    for rs in desc.repeated_sets() {
        for i in 0..rs.positions.len() {
            for j in i + 1..rs.positions.len() {
                gens.push(Raw::transposition(
                    n,
                    rs.positions[i] - 1,
                    rs.positions[j] - 1,
                    false,
                ));
            }
        }
    }
    gens
}

fn has_sign_collision(set: &HashSet<Raw>) -> bool {
    set.iter().any(|p| {
        set.contains(&Raw {
            img: p.img.clone(),
            neg: !p.neg,
        })
    })
}

/// The full double coset `S·g·D`.
pub fn double_coset(g: &Raw, s: &[Raw], d: &[Raw]) -> HashSet<Raw> {
    let mut out = HashSet::new();
    for si in s {
        let sg = si.then(g);
        for di in d {
            out.insert(sg.then(di));
        }
    }
    out
}

/// Lexicographically smallest image list in `S·g·D`, or `None` when the coset holds both signs
/// of some permutation.
pub fn oracle_double_coset(g: &Raw, s: &[Raw], d: &[Raw]) -> Option<Raw> {
    let all = double_coset(g, s, d);
    if has_sign_collision(&all) {
        return None;
    }
    all.into_iter().min()
}

/// Slots holding the labels in `frees`, in that order.
pub fn free_slots(p: &Raw, frees0: &[usize]) -> Vec<usize> {
    let inv = p.inverse();
    frees0.iter().map(|&f| inv.img[f]).collect()
}

/// Free labels placed first (smallest slot vector over `S·g`), then the smallest image list
/// among the double-coset elements keeping that placement.
pub fn oracle_canonical(g: &Raw, s: &[Raw], d: &[Raw], frees0: &[usize]) -> Option<Raw> {
    let all = double_coset(g, s, d);
    if has_sign_collision(&all) {
        return None;
    }
    let best = s
        .iter()
        .map(|si| free_slots(&si.then(g), frees0))
        .min()
        .unwrap();
    all.into_iter()
        .filter(|p| free_slots(p, frees0) == best)
        .min()
}

pub fn oracle_result(r: Option<Raw>) -> CanonicalResult {
    match r {
        None => CanonicalResult::Zero,
        Some(p) => CanonicalResult::Perm(p.to_signed()),
    }
}

/// A random problem: slot group generators, index descriptor and a configuration.
#[derive(Clone, Debug)]
pub struct Instance {
    pub n: usize,
    pub slot_gens: Vec<Raw>,
    pub desc: SymmetryDescriptor,
    pub g: Raw,
}

impl Instance {
    pub fn generating_set(&self) -> GeneratingSet {
        GeneratingSet::new(
            self.n,
            self.slot_gens.iter().map(Raw::to_signed).collect(),
        )
        .unwrap()
    }

    pub fn frees0(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self.desc.frees().iter().map(|v| v - 1).collect();
        f.sort_unstable();
        f
    }
}

/// Symmetry of a block of `len` consecutive slots starting at `at`.
fn block_generators(rng: &mut impl Rng, n: usize, at: usize, len: usize) -> Vec<Raw> {
    let t = |a: usize, b: usize, neg: bool| Raw::transposition(n, at + a, at + b, neg);
    match len {
        1 => vec![],
        2 => match rng.gen_range(0..3) {
            0 => vec![],
            1 => vec![t(0, 1, false)],
            _ => vec![t(0, 1, true)],
        },
        3 => match rng.gen_range(0..3) {
            0 => vec![t(0, 1, true), t(1, 2, true)],
            1 => vec![t(0, 1, false), t(1, 2, false)],
            _ => vec![t(1, 2, true)],
        },
        _ => match rng.gen_range(0..3) {
            // Riemann-like pair symmetries
            0 => {
                let mut ex = Raw::identity(n);
                ex.img.swap(at, at + 2);
                ex.img.swap(at + 1, at + 3);
                vec![t(0, 1, true), t(2, 3, true), ex]
            }
            1 => vec![t(0, 1, false), t(1, 2, false), t(2, 3, false)],
            _ => vec![t(0, 1, true), t(2, 3, false)],
        },
    }
}

/// Exchange of two equal-length slot blocks.
fn block_exchange(n: usize, a: usize, b: usize, len: usize) -> Raw {
    let mut r = Raw::identity(n);
    for k in 0..len {
        r.img.swap(a + k, b + k);
    }
    r
}

fn random_slot_group(rng: &mut impl Rng, n: usize) -> Vec<Raw> {
    let mut gens = Vec::new();
    let mut at = 0;
    let mut blocks: Vec<(usize, usize, usize)> = Vec::new();
    let mut kinds = Vec::new();
    while at < n {
        let len = rng.gen_range(1..=4).min(n - at);
        let before = gens.len();
        let mut sub = rand_chacha::ChaCha8Rng::seed_from_u64(rng.gen());
        gens.extend(block_generators(&mut sub, n, at, len));
        kinds.push(gens[before..].to_vec());
        blocks.push((at, len, kinds.len() - 1));
        at += len;
    }
    // exchange of consecutive blocks that share length and symmetry
    for w in blocks.windows(2) {
        let ((a, la, ka), (b, lb, kb)) = (w[0], w[1]);
        if la != lb {
            continue;
        }
        let ex = block_exchange(n, a, b, la);
        let mut shifted: Vec<Raw> = kinds[ka].iter().map(|g| ex.then(g).then(&ex)).collect();
        shifted.sort();
        let mut other = kinds[kb].clone();
        other.sort();
        let same = shifted == other;
        if same && rng.gen_bool(0.7) {
            gens.push(block_exchange(n, a, b, la));
        }
    }
    if rng.gen_bool(0.15) {
        // an unstructured extra generator
        let mut img: Vec<usize> = (0..n).collect();
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        img.swap(a, b);
        let c = rng.gen_range(0..n);
        let d = rng.gen_range(0..n);
        img.swap(c, d);
        gens.push(Raw {
            img,
            neg: rng.gen_bool(0.5),
        });
    }
    gens.retain(|g| g != &Raw::identity(n));
    gens
}

fn random_metric(rng: &mut impl Rng) -> Metric {
    match rng.gen_range(0..4) {
        0 => Metric::Antisymmetric,
        1 => Metric::None,
        _ => Metric::Symmetric,
    }
}

/// Random roles for the labels 1..=n.
pub fn random_descriptor(rng: &mut impl Rng, n: usize) -> SymmetryDescriptor {
    let mut labels: Vec<usize> = (1..=n).collect();
    if rng.gen_bool(0.5) {
        labels.shuffle(rng);
    }
    let mut frees = Vec::new();
    let mut dummy_sets: Vec<DummySet> = Vec::new();
    let mut repeated_sets = Vec::new();
    let mut i = 0;
    let spaces = rng.gen_range(1..=2);
    for _ in 0..spaces {
        dummy_sets.push(DummySet::new(random_metric(rng), vec![]));
    }
    while i < n {
        let left = n - i;
        match rng.gen_range(0..10) {
            0..=1 => {
                frees.push(labels[i]);
                i += 1;
            }
            2..=6 if left >= 2 => {
                let k = rng.gen_range(0..spaces);
                dummy_sets[k].pairs.push((labels[i], labels[i + 1]));
                i += 2;
            }
            7 if left >= 2 => {
                let len = rng.gen_range(2..=left.min(3));
                repeated_sets.push(RepeatedSet::new(labels[i..i + len].to_vec()));
                i += len;
            }
            _ => {
                // a label with no symmetry at all
                i += 1;
            }
        }
    }
    dummy_sets.retain(|d| !d.pairs.is_empty());
    SymmetryDescriptor::new(n, frees, dummy_sets, repeated_sets).unwrap()
}

pub fn random_raw(rng: &mut impl Rng, n: usize) -> Raw {
    let mut img: Vec<usize> = (0..n).collect();
    img.shuffle(rng);
    Raw {
        img,
        neg: rng.gen_bool(0.5),
    }
}

/// A random instance with `|S|·|D| <= cap`, together with the enumerated groups.
pub fn random_instance(rng: &mut impl Rng, cap: usize) -> (Instance, Vec<Raw>, Vec<Raw>) {
    loop {
        let n = rng.gen_range(2..=8);
        let slot_gens = random_slot_group(rng, n);
        let desc = random_descriptor(rng, n);
        let Some(s) = closure(n, &slot_gens, cap) else {
            continue;
        };
        let Some(d) = closure(n, &index_group_generators(&desc), cap) else {
            continue;
        };
        if s.len() * d.len() > cap {
            continue;
        }
        let g = random_raw(rng, n);
        return (
            Instance {
                n,
                slot_gens,
                desc,
                g,
            },
            s,
            d,
        );
    }
}

/// Distinct elements picked from an enumerated group.
pub fn pick<'a>(rng: &mut impl Rng, elems: &'a [Raw]) -> &'a Raw {
    &elems[rng.gen_range(0..elems.len())]
}
