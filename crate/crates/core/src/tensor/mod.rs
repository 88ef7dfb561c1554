//! Tensor monomials as canonicalization problems, and back.
//!
//! A monomial with `n` slots is described by a canonical index list `C0` and a permutation
//! `g` such that slot `s` holds `C0[g(s)]`. The slot symmetries come from the heads (shifted
//! into each factor's block, plus exchanges of identical factors); the index symmetries come
//! from the free, dummy and repeated entries of `C0`.

mod parse;
mod registry;

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigUint;

use crate::canon::{
    canonical_perm_with, CanonOptions, CanonStats, CanonicalResult, DummySet, Metric,
    RepeatedSet, SymmetryDescriptor,
};
use crate::error::{Error, Result};
use crate::group::{schreier_sims, GeneratingSet, StrongGeneratingSet};
use crate::perm::{Sign, SignedPerm};

pub use parse::{parse_expression, Expression, Factor, IndexAtom, IndexValue, Monomial};
pub use registry::{Registry, TensorHead, VectorSpace};

/// A monomial resolved against a registry, factors in canonical order.
#[derive(Clone, Debug)]
pub struct TensorExpressionIR {
    pub sign: Sign,
    pub factors: Vec<Factor>,
    symmetries: Vec<StrongGeneratingSet>,
    /// Space of every abstract index name, and the metric of every space.
    spaces: HashMap<String, usize>,
    metrics: Vec<Metric>,
}

impl TensorExpressionIR {
    pub fn new(m: &Monomial, reg: &Registry) -> Result<Self> {
        let mut arities: HashMap<&str, usize> = HashMap::new();
        for f in &m.factors {
            let arity = f.indices.len();
            if let Some(h) = reg.head(&f.head) {
                if h.arity != arity {
                    return Err(Error::InvalidExpression(format!(
                        "{} takes {} indices, got {arity}",
                        f.head, h.arity
                    )));
                }
                if !h.commuting && m.factors.len() > 1 {
                    return Err(Error::InvalidExpression(format!(
                        "{} is declared non-commuting; only commuting products are supported",
                        f.head
                    )));
                }
            }
            if let Some(&a) = arities.get(f.head.as_str()) {
                if a != arity {
                    return Err(Error::InvalidExpression(format!(
                        "{} used with {a} and {arity} indices",
                        f.head
                    )));
                }
            }
            arities.insert(&f.head, arity);
        }
        let mut factors = m.factors.clone();
        factors.sort_by(|a, b| (&a.head, a.indices.len()).cmp(&(&b.head, b.indices.len())));
        let symmetries = factors
            .iter()
            .map(|f| match reg.head(&f.head) {
                Some(h) => h.symmetry.clone(),
                None => StrongGeneratingSet::trivial(f.indices.len()),
            })
            .collect();
        let mut spaces = HashMap::new();
        for f in &factors {
            for idx in &f.indices {
                if let Some(name) = idx.name() {
                    if !spaces.contains_key(name) {
                        spaces.insert(name.to_string(), reg.space_of(name)?);
                    }
                }
            }
        }
        Ok(TensorExpressionIR {
            sign: m.sign,
            factors,
            symmetries,
            spaces,
            metrics: reg.spaces().iter().map(|s| s.metric).collect(),
        })
    }

    /// Total number of slots.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(|f| f.indices.len()).sum()
    }

    pub fn slots(&self) -> impl Iterator<Item = &IndexAtom> {
        self.factors.iter().flat_map(|f| f.indices.iter())
    }

    pub fn to_monomial(&self) -> Monomial {
        Monomial {
            sign: self.sign,
            factors: self.factors.clone(),
        }
    }

    fn space(&self, atom: &IndexAtom) -> usize {
        atom.name().map_or(0, |n| self.spaces[n])
    }

    fn rename(&mut self, map: &HashMap<String, String>) {
        for f in &mut self.factors {
            for idx in &mut f.indices {
                if let IndexValue::Symbol(s) = &mut idx.value {
                    if let Some(t) = map.get(s.as_str()) {
                        *s = t.clone();
                    }
                }
            }
        }
        self.spaces = self
            .spaces
            .drain()
            .map(|(k, v)| (map.get(&k).cloned().unwrap_or(k), v))
            .collect();
    }
}

/// The canonical index list and the index symmetries it implies.
#[derive(Clone, Debug)]
pub struct CanonicalConfiguration {
    pub c0: Vec<IndexAtom>,
    pub descriptor: SymmetryDescriptor,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Free,
    Dummy,
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
enum SortKey<'a> {
    Symbol {
        uppercase: bool,
        dummy: bool,
        space: usize,
        name: &'a str,
        down: bool,
    },
    Component {
        value: u64,
        down: bool,
    },
}

fn roles(ir: &TensorExpressionIR) -> Result<BTreeMap<String, Role>> {
    let mut seen: BTreeMap<String, Vec<bool>> = BTreeMap::new();
    for atom in ir.slots() {
        if let Some(name) = atom.name() {
            seen.entry(name.to_string()).or_default().push(atom.up);
        }
    }
    seen.into_iter()
        .map(|(name, ups)| match ups.as_slice() {
            [_] => Ok((name, Role::Free)),
            [a, b] if a != b => Ok((name, Role::Dummy)),
            [_, _] => Err(Error::InvalidExpression(format!(
                "index {name} appears twice with the same variance"
            ))),
            _ => Err(Error::InvalidExpression(format!(
                "index {name} appears {} times",
                ups.len()
            ))),
        })
        .collect()
}

/// Sorts the indices of `ir`: symbols before components, lowercase before uppercase, frees
/// before dummies, then by space and name, contravariant before covariant. Components are
/// sorted by value and variance.
pub fn build_canonical_configuration(ir: &TensorExpressionIR) -> Result<CanonicalConfiguration> {
    let roles = roles(ir)?;
    fn key<'a>(
        a: &'a IndexAtom,
        roles: &BTreeMap<String, Role>,
        ir: &TensorExpressionIR,
    ) -> SortKey<'a> {
        match &a.value {
            IndexValue::Symbol(name) => SortKey::Symbol {
                uppercase: name.starts_with(|c: char| c.is_ascii_uppercase()),
                dummy: roles[name.as_str()] == Role::Dummy,
                space: ir.space(a),
                name,
                down: !a.up,
            },
            IndexValue::Component(v) => SortKey::Component {
                value: *v,
                down: !a.up,
            },
        }
    }
    let mut c0: Vec<IndexAtom> = ir.slots().cloned().collect();
    c0.sort_by(|a, b| key(a, &roles, ir).cmp(&key(b, &roles, ir)));

    let mut frees = Vec::new();
    let mut pairs: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    let mut repeated = Vec::new();
    let mut i = 0;
    while i < c0.len() {
        let pos = i + 1;
        match &c0[i].value {
            IndexValue::Symbol(name) if roles[name.as_str()] == Role::Free => {
                frees.push(pos);
                i += 1;
            }
            IndexValue::Symbol(_) => {
                // sorted up-then-down, so the partner is next
                pairs.entry(ir.space(&c0[i])).or_default().push((pos, pos + 1));
                i += 2;
            }
            IndexValue::Component(_) => {
                let run = c0[i..].iter().take_while(|a| **a == c0[i]).count();
                if run > 1 {
                    repeated.push(RepeatedSet::new((pos..pos + run).collect()));
                }
                i += run;
            }
        }
    }
    let dummy_sets = pairs
        .into_iter()
        .map(|(space, p)| DummySet::new(ir.metrics[space], p))
        .collect();
    let descriptor = SymmetryDescriptor::new(c0.len(), frees, dummy_sets, repeated)?;
    Ok(CanonicalConfiguration { c0, descriptor })
}

/// Slot symmetries of the product: each factor's symmetries in its slot block, plus exchange
/// of adjacent identical factors. The base is the concatenation of the factor bases, with the
/// first slot of every exchanged block added when missing.
pub fn build_product_sgs(ir: &TensorExpressionIR) -> Result<StrongGeneratingSet> {
    let n = ir.degree();
    let mut base = Vec::new();
    let mut gens = Vec::new();
    let mut expected = BigUint::from(1u32);
    let mut offset = 0;
    let mut run = 0usize;
    for (i, f) in ir.factors.iter().enumerate() {
        let arity = f.indices.len();
        let sym = &ir.symmetries[i];
        let same_as_prev = i > 0 && ir.factors[i - 1].head == f.head;
        let same_as_next = ir.factors.get(i + 1).is_some_and(|g| g.head == f.head);
        run = if same_as_prev { run + 1 } else { 1 };
        expected *= sym.order().0 * BigUint::from(run);

        let mut block_base: Vec<usize> = sym.base().iter().map(|b| b + offset).collect();
        if (same_as_prev || same_as_next) && !block_base.contains(&(offset + 1)) {
            block_base.insert(0, offset + 1);
        }
        base.extend(block_base);
        for g in sym.generators().generators() {
            gens.push(shift(g, offset, n));
        }
        if same_as_next {
            let mut img: Vec<usize> = (1..=n).collect();
            for k in 0..arity {
                img.swap(offset + k, offset + arity + k);
            }
            gens.push(SignedPerm::new(img, Sign::Plus)?);
        }
        offset += arity;
    }
    let gs = GeneratingSet::new(n, gens)?;
    if let Ok(sgs) = StrongGeneratingSet::from_parts(base.clone(), gs.clone()) {
        if sgs.order().0 == expected {
            return Ok(sgs);
        }
    }
    schreier_sims(&base, &gs)
}

fn shift(g: &SignedPerm, offset: usize, n: usize) -> SignedPerm {
    let mut img: Vec<usize> = (1..=n).collect();
    for (s, v) in g.images().into_iter().enumerate() {
        img[offset + s] = offset + v;
    }
    SignedPerm::new(img, g.sign()).expect("shifted block permutation")
}

/// `g` with slot `s` holding `C0[g(s)]`; equal components are matched in slot order.
pub fn expression_to_perm(
    ir: &TensorExpressionIR,
    conf: &CanonicalConfiguration,
) -> Result<SignedPerm> {
    let mut free_pos: HashMap<&IndexAtom, VecDeque<usize>> = HashMap::new();
    for (i, a) in conf.c0.iter().enumerate() {
        free_pos.entry(a).or_default().push_back(i + 1);
    }
    let images = ir
        .slots()
        .map(|a| {
            free_pos
                .get_mut(a)
                .and_then(VecDeque::pop_front)
                .ok_or_else(|| Error::InvalidExpression(format!("index {a} not in the index list")))
        })
        .collect::<Result<Vec<_>>>()?;
    SignedPerm::new(images, Sign::Plus)
}

/// Refills the slots of `ir` from `C0` through `p`; `None` for zero.
pub fn perm_to_expression(
    p: &CanonicalResult,
    ir: &TensorExpressionIR,
    conf: &CanonicalConfiguration,
) -> Option<Monomial> {
    let p = p.perm()?;
    let mut images = p.images().into_iter();
    let factors = ir
        .factors
        .iter()
        .map(|f| Factor {
            head: f.head.clone(),
            indices: f
                .indices
                .iter()
                .map(|_| conf.c0[images.next().expect("degree matches") - 1].clone())
                .collect(),
        })
        .collect();
    Some(Monomial {
        sign: ir.sign * p.sign(),
        factors,
    })
}

/// Index names handed out to dummies: a space's declared list, or `a..z`, `a1..z1`, ...
fn fresh_names(space: &VectorSpace) -> Box<dyn Iterator<Item = String> + '_> {
    match &space.indices {
        Some(list) => Box::new(list.iter().cloned()),
        None => Box::new((0..).flat_map(|round: usize| {
            (b'a'..=b'z').map(move |c| {
                if round == 0 {
                    (c as char).to_string()
                } else {
                    format!("{}{round}", c as char)
                }
            })
        })),
    }
}

/// Renames dummies to the first unused names of their space, in index-list order. Dummy names
/// carry no meaning, so this makes the result independent of them.
fn normalize_dummies(ir: &mut TensorExpressionIR, reg: &Registry) -> Result<()> {
    let roles = roles(ir)?;
    let mut taken: HashSet<String> = roles
        .iter()
        .filter(|(_, r)| **r == Role::Free)
        .map(|(n, _)| n.clone())
        .collect();
    let mut by_space: BTreeMap<usize, Vec<&String>> = BTreeMap::new();
    for (name, role) in &roles {
        if *role == Role::Dummy {
            by_space.entry(ir.spaces[name.as_str()]).or_default().push(name);
        }
    }
    let mut map = HashMap::new();
    for (space, names) in by_space {
        let mut pool = fresh_names(&reg.spaces()[space]);
        for name in names {
            let fresh = pool
                .by_ref()
                .find(|c| !taken.contains(c) && reg.space_of(c).ok() == Some(space))
                .ok_or_else(|| {
                    Error::InvalidExpression(format!(
                        "space {} has no index name left for dummy {name}",
                        reg.spaces()[space].name
                    ))
                })?;
            taken.insert(fresh.clone());
            map.insert(name.clone(), fresh);
        }
    }
    ir.rename(&map);
    Ok(())
}

/// Everything needed to canonicalize one monomial.
#[derive(Clone, Debug)]
pub struct Problem {
    pub ir: TensorExpressionIR,
    pub config: CanonicalConfiguration,
    pub perm: SignedPerm,
    pub sgs: StrongGeneratingSet,
}

impl Problem {
    pub fn new(m: &Monomial, reg: &Registry) -> Result<Self> {
        let mut ir = TensorExpressionIR::new(m, reg)?;
        normalize_dummies(&mut ir, reg)?;
        let config = build_canonical_configuration(&ir)?;
        let perm = expression_to_perm(&ir, &config)?;
        let sgs = build_product_sgs(&ir)?;
        Ok(Problem {
            ir,
            config,
            perm,
            sgs,
        })
    }

    pub fn solve(&self, opts: &CanonOptions) -> Result<(CanonicalResult, CanonStats)> {
        let (r, stats) =
            canonical_perm_with(&self.perm, self.sgs.clone(), &self.config.descriptor, opts)?;
        Ok((r, stats))
    }
}

/// Canonical form of a monomial, `None` if it vanishes.
pub fn canonicalize_monomial(
    m: &Monomial,
    reg: &Registry,
    opts: &CanonOptions,
) -> Result<(Option<Monomial>, CanonStats)> {
    let problem = Problem::new(m, reg)?;
    let (r, stats) = problem.solve(opts)?;
    Ok((perm_to_expression(&r, &problem.ir, &problem.config), stats))
}

/// Canonicalizes every term of a sum independently; vanishing terms are dropped.
pub fn canonicalize_expression(text: &str, reg: &Registry, opts: &CanonOptions) -> Result<String> {
    let expr = parse_expression(text)?;
    let mut terms = Vec::new();
    for t in &expr.terms {
        if let (Some(c), _) = canonicalize_monomial(t, reg, opts)? {
            terms.push(c);
        }
    }
    Ok(Expression { terms }.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::ExtendedImages;

    fn ir(text: &str) -> TensorExpressionIR {
        let e = parse_expression(text).unwrap();
        TensorExpressionIR::new(&e.terms[0], &Registry::default()).unwrap()
    }

    fn canon(text: &str) -> String {
        canonicalize_expression(text, &Registry::default(), &CanonOptions::default()).unwrap()
    }

    #[test]
    fn two_riemann_configuration() {
        let ir = ir("R[-b,1,d,1] R[-c,b,a,c]");
        let conf = build_canonical_configuration(&ir).unwrap();
        let shown: Vec<String> = conf.c0.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["a", "d", "b", "-b", "c", "-c", "1", "1"]);
        assert_eq!(conf.descriptor.frees(), &[1, 2]);
        assert_eq!(
            conf.descriptor.dummy_sets(),
            &[DummySet::new(Metric::Symmetric, vec![(3, 4), (5, 6)])]
        );
        assert_eq!(conf.descriptor.repeated_sets(), &[RepeatedSet::new(vec![7, 8])]);
        let g = expression_to_perm(&ir, &conf).unwrap();
        assert_eq!(
            ExtendedImages::encode(&g).0,
            vec![4, 7, 2, 8, 6, 3, 1, 5, 9, 10]
        );
    }

    #[test]
    fn mixed_case_configuration() {
        let ir = ir("T[c,B,1,a,-1,-1,-c]");
        let conf = build_canonical_configuration(&ir).unwrap();
        let shown: Vec<String> = conf.c0.iter().map(|a| a.to_string()).collect();
        assert_eq!(shown, ["a", "c", "-c", "B", "1", "-1", "-1"]);
        let g = expression_to_perm(&ir, &conf).unwrap();
        assert_eq!(g.to_string(), "(1 2 4)(3 5 6 7)");
    }

    #[test]
    fn product_sgs_of_two_riemanns() {
        let sgs = build_product_sgs(&ir("R[-b,1,d,1] R[-c,b,a,c]")).unwrap();
        assert_eq!(sgs.base(), vec![1, 3, 5, 7]);
        assert_eq!(sgs.generators().len(), 7);
        assert_eq!(sgs.order().to_string(), "128");
        assert!(sgs
            .generators()
            .generators()
            .iter()
            .any(|g| g.to_string() == "(1 5)(2 6)(3 7)(4 8)"));
    }

    #[test]
    fn product_sgs_of_antisymmetric_chain() {
        let sgs = build_product_sgs(&ir("F[a,-b] F[b,-c] F[c,-a]")).unwrap();
        let shown: Vec<String> = sgs
            .generators()
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect();
        assert_eq!(
            shown,
            ["-(1 2)", "(1 3)(2 4)", "-(3 4)", "(3 5)(4 6)", "-(5 6)"]
        );
        assert_eq!(sgs.order().to_string(), "48");
    }

    #[test]
    fn worked_example_end_to_end() {
        assert_eq!(canon("R[-b,1,d,1] R[-c,b,a,c]"), "R[a,b,-b,c] R[d,1,-c,1]");
        assert_eq!(canon("R[a,b,-b,c] R[d,1,-c,1]"), "R[a,b,-b,c] R[d,1,-c,1]");
    }

    #[test]
    fn chain_parity() {
        assert_eq!(canon("F[a,-b] F[b,-c] F[c,-a]"), "0");
        assert_ne!(canon("F[a,-b] F[b,-a]"), "0");
    }

    #[test]
    fn sums_and_signs() {
        assert_eq!(canon("F[b,a]"), "-F[a,b]");
        assert_eq!(canon("F[a,b] + F[b,a] - S[b,a]"), "F[a,b] - F[a,b] - S[a,b]");
        assert_eq!(canon("F[a,-a] + S[a,b]"), "S[a,b]");
    }

    #[test]
    fn dummy_names_do_not_matter() {
        assert_eq!(canon("R[-x,1,d,1] R[-y,x,a,y]"), canon("R[-b,1,d,1] R[-c,b,a,c]"));
    }

    #[test]
    fn invalid_expressions() {
        let reg = Registry::default();
        let opts = CanonOptions::default();
        for bad in ["R[a,b]", "F[a,a]", "F[a,-a] S[a,b]", "F[a,b", "T[a] T[a,b]"] {
            assert!(canonicalize_expression(bad, &reg, &opts).is_err(), "{bad}");
        }
    }
}
