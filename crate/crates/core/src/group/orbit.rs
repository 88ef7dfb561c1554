//! Orbits and Schreier vectors.

use crate::error::{invalid, Error, Result};
use crate::group::GeneratingSet;
use crate::perm::SignedPerm;

/// Generators together with their inverses, shared by every level of a stabilizer chain.
#[derive(Clone, Debug)]
pub(crate) struct GenPool {
    pub gens: Vec<SignedPerm>,
    pub invs: Vec<SignedPerm>,
}

impl GenPool {
    pub fn new(gens: Vec<SignedPerm>) -> Self {
        let invs = gens.iter().map(SignedPerm::inverse).collect();
        GenPool { gens, invs }
    }

    pub fn push(&mut self, g: SignedPerm) -> usize {
        self.invs.push(g.inverse());
        self.gens.push(g);
        self.gens.len() - 1
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Edge {
    Root,
    /// Reached by applying generator `i` to the parent.
    Forward(u32),
    /// Reached by applying the inverse of generator `i` to the parent.
    Inverse(u32),
}

/// For each orbit point, the generator (and direction) by which it was first reached from the
/// root. Coset representatives are recomposed on demand.
#[derive(Clone, Debug)]
pub struct SchreierVector {
    root: usize,
    edges: Vec<Option<Edge>>,
    orbit: Vec<usize>,
}

impl SchreierVector {
    /// Breadth-first over `subset` (indices into `pool`) and their inverses.
    pub(crate) fn build(root: usize, degree: usize, pool: &GenPool, subset: &[usize]) -> Self {
        let mut edges = vec![None; degree];
        edges[root] = Some(Edge::Root);
        let mut orbit = vec![root];
        let mut head = 0;
        while head < orbit.len() {
            let p = orbit[head];
            head += 1;
            for &gi in subset {
                let q = pool.gens[gi].at(p);
                if edges[q].is_none() {
                    edges[q] = Some(Edge::Forward(gi as u32));
                    orbit.push(q);
                }
                let q = pool.invs[gi].at(p);
                if edges[q].is_none() {
                    edges[q] = Some(Edge::Inverse(gi as u32));
                    orbit.push(q);
                }
            }
        }
        SchreierVector { root, edges, orbit }
    }

    /// 1-based root.
    pub fn root(&self) -> usize {
        self.root + 1
    }

    /// 1-based orbit points, sorted.
    pub fn orbit(&self) -> Vec<usize> {
        let mut o: Vec<usize> = self.orbit.iter().map(|p| p + 1).collect();
        o.sort_unstable();
        o
    }

    /// 0-based orbit points in discovery order.
    pub(crate) fn orbit0(&self) -> &[usize] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    #[inline]
    pub(crate) fn contains0(&self, point: usize) -> bool {
        self.edges[point].is_some()
    }

    /// Walks from `point` back to the root, yielding for each step the permutation `e` of the
    /// tree edge (so the representative is the product of the yielded permutations in reverse
    /// order) as `(generator index, is_inverse)`.
    fn path(&self, mut point: usize, pool: &GenPool, mut step: impl FnMut(&SignedPerm, &SignedPerm)) {
        loop {
            match self.edges[point].expect("point not in orbit") {
                Edge::Root => return,
                Edge::Forward(i) => {
                    let (e, e_inv) = (&pool.gens[i as usize], &pool.invs[i as usize]);
                    step(e, e_inv);
                    point = e_inv.at(point);
                }
                Edge::Inverse(i) => {
                    let (e, e_inv) = (&pool.invs[i as usize], &pool.gens[i as usize]);
                    step(e, e_inv);
                    point = e_inv.at(point);
                }
            }
        }
    }

    /// The coset representative `u` with `u(root) = point` (0-based point).
    pub(crate) fn representative(&self, point: usize, pool: &GenPool) -> SignedPerm {
        let mut u = SignedPerm::identity(self.edges.len());
        self.path(point, pool, |e, _| u = e.then(&u));
        u
    }

    /// Replaces `h` by `u * h` where `u` is the representative of `point`.
    pub(crate) fn left_apply(&self, point: usize, h: &mut SignedPerm, pool: &GenPool) {
        self.path(point, pool, |e, _| *h = e.then(h));
    }

    /// Replaces `h` by `h * u^-1` where `u` is the representative of `point`.
    pub(crate) fn right_divide(&self, point: usize, h: &mut SignedPerm, pool: &GenPool) {
        self.path(point, pool, |_, e_inv| *h = h.then(e_inv));
    }

    /// The representative mapping the root to the 1-based `point`.
    pub fn trace(&self, point: usize, gs: &GeneratingSet) -> Result<SignedPerm> {
        if point == 0 || point > self.edges.len() {
            return invalid(format!("point {point} out of range 1..={}", self.edges.len()));
        }
        if !self.contains0(point - 1) {
            return Err(Error::NotInOrbit {
                point,
                root: self.root + 1,
            });
        }
        let pool = GenPool::new(gs.generators().to_vec());
        Ok(self.representative(point - 1, &pool))
    }
}

/// Orbit of a 1-based point under the group generated by `gs`, sorted.
pub fn orbit(point: usize, gs: &GeneratingSet) -> Result<Vec<usize>> {
    Ok(schreier_vector(point, gs)?.orbit())
}

pub fn schreier_vector(point: usize, gs: &GeneratingSet) -> Result<SchreierVector> {
    let n = gs.degree();
    if point == 0 || point > n {
        return invalid(format!("point {point} out of range 1..={n}"));
    }
    let pool = GenPool::new(gs.generators().to_vec());
    let all: Vec<usize> = (0..pool.len()).collect();
    Ok(SchreierVector::build(point - 1, n, &pool, &all))
}

/// Representative mapping the root of `sv` to `point`.
pub fn trace(point: usize, sv: &SchreierVector, gs: &GeneratingSet) -> Result<SignedPerm> {
    sv.trace(point, gs)
}
