//! Signed permutations.
//!
//! A [`SignedPerm`] is a bijection of the points `1..=n` together with a sign. Permutations act
//! on the right: in the product `p1 * p2` the permutation `p1` is applied first, so that
//! `(p1 * p2)[i] = p2[p1[i]]`.
//!
//! Points are 1-based in every public constructor and accessor. Storage is 0-based.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(value: i64) -> Result<Sign> {
        match value {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => invalid(format!("sign must be +1 or -1, got {value}")),
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// A permutation of `1..=n` carrying an explicit sign.
///
/// The derived ordering compares images lexicographically, then the sign (`+` before `-`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPerm {
    images: Vec<usize>,
    sign: Sign,
}

impl SignedPerm {
    pub fn identity(degree: usize) -> Self {
        SignedPerm {
            images: (0..degree).collect(),
            sign: Sign::Plus,
        }
    }

    /// Builds a permutation from its list of images, `images[s - 1]` being the image of `s`.
    pub fn new(images: Vec<usize>, sign: Sign) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut raw = Vec::with_capacity(n);
        for &im in &images {
            if im == 0 || im > n {
                return invalid(format!("image {im} out of range 1..={n}"));
            }
            if std::mem::replace(&mut seen[im - 1], true) {
                return invalid(format!("image {im} repeated"));
            }
            raw.push(im - 1);
        }
        Ok(SignedPerm { images: raw, sign })
    }

    /// Builds a permutation of the given degree from disjoint cycles of 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>], sign: Sign) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            for &pt in cycle {
                if pt == 0 || pt > degree {
                    return invalid(format!("cycle point {pt} out of range 1..={degree}"));
                }
                if std::mem::replace(&mut used[pt - 1], true) {
                    return invalid(format!("point {pt} repeated in cycles"));
                }
            }
            for (k, &pt) in cycle.iter().enumerate() {
                images[pt - 1] = cycle[(k + 1) % cycle.len()] - 1;
            }
        }
        Ok(SignedPerm { images, sign })
    }

    /// Builds from 0-based images without validation beyond a debug check.
    pub(crate) fn from_raw(images: Vec<usize>, sign: Sign) -> Self {
        debug_assert!(is_bijection(&images));
        SignedPerm { images, sign }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.images
    }

    pub(crate) fn raw_mut(&mut self) -> &mut [usize] {
        &mut self.images
    }

    pub(crate) fn flip_sign(&mut self) {
        self.sign = -self.sign;
    }

    #[inline]
    pub(crate) fn at(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    pub fn negated(&self) -> Self {
        SignedPerm {
            images: self.images.clone(),
            sign: -self.sign,
        }
    }

    /// True when the underlying permutation is the identity, whatever the sign.
    pub fn is_identity_perm(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &im)| i == im)
    }

    pub fn is_identity(&self) -> bool {
        self.sign == Sign::Plus && self.is_identity_perm()
    }

    /// `self` followed by `other`. Panics on degree mismatch; see [`product`] for the checked form.
    pub fn then(&self, other: &SignedPerm) -> SignedPerm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        SignedPerm {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
            sign: self.sign * other.sign,
        }
    }

    pub fn inverse(&self) -> SignedPerm {
        let mut inv = vec![0; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            inv[im] = i;
        }
        SignedPerm {
            images: inv,
            sign: self.sign,
        }
    }

    /// Image of a 1-based point.
    pub fn image_of(&self, point: usize) -> Result<usize> {
        if point == 0 || point > self.degree() {
            return invalid(format!("point {point} out of range 1..={}", self.degree()));
        }
        Ok(self.images[point - 1] + 1)
    }

    /// Applies the permutation to a list in the index-configuration sense: the output holds at
    /// position `s` the entry `list[self(s)]`.
    ///
    /// With `list` a canonical index list and `self` the permutation of an expression, the
    /// result is the index configuration of that expression.
    pub fn permute_list<T: Clone>(&self, list: &[T]) -> Result<Vec<T>> {
        if list.len() != self.degree() {
            return invalid(format!(
                "list of length {} for permutation of degree {}",
                list.len(),
                self.degree()
            ));
        }
        Ok(self.images.iter().map(|&i| list[i].clone()).collect())
    }

    pub(crate) fn moves(&self, point0: usize) -> bool {
        self.images[point0] != point0
    }

    /// Smallest 0-based point moved, if any.
    pub(crate) fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &im)| *i != im).map(|(i, _)| i)
    }

    /// Disjoint cycles (1-based), each starting at its smallest point, fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p + 1);
                p = self.images[p];
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for SignedPerm {
    /// Disjoint cycle notation, `-` prefix for a negative sign: `-(1 2)`, `(1 3)(2 4)`, `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_minus() {
            write!(f, "-")?;
        }
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedPerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPerm[{}; {}]", self.degree(), self)
    }
}

impl Mul for &SignedPerm {
    type Output = SignedPerm;

    fn mul(self, rhs: &SignedPerm) -> SignedPerm {
        self.then(rhs)
    }
}

impl Neg for &SignedPerm {
    type Output = SignedPerm;

    fn neg(self) -> SignedPerm {
        self.negated()
    }
}

/// Checked product `p1 * p2` (apply `p1` first).
pub fn product(p1: &SignedPerm, p2: &SignedPerm) -> Result<SignedPerm> {
    if p1.degree() != p2.degree() {
        return invalid(format!(
            "degree mismatch in product: {} vs {}",
            p1.degree(),
            p2.degree()
        ));
    }
    Ok(p1.then(p2))
}

/// The permutation sending each position of `list` to the rank of its entry in the stably
/// sorted list. With `sorted = list` sorted, `g.permute_list(&sorted) == list`.
///
/// This is a sort-to-permutation helper in the spirit of a `PermSort`; it has not been checked
/// against any other system's definition of that name.
pub fn sorting_perm<T: Ord>(list: &[T]) -> SignedPerm {
    let mut order: Vec<usize> = (0..list.len()).collect();
    order.sort_by(|&a, &b| list[a].cmp(&list[b]));
    let mut images = vec![0; list.len()];
    for (rank, &pos) in order.iter().enumerate() {
        images[pos] = rank;
    }
    SignedPerm::from_raw(images, Sign::Plus)
}

fn is_bijection(images: &[usize]) -> bool {
    let mut seen = vec![false; images.len()];
    images
        .iter()
        .all(|&i| i < images.len() && !std::mem::replace(&mut seen[i], true))
}

/// The four textual encodings of a signed permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    Images,
    Rearrangement,
    Cycles,
    Rules,
}

/// A signed permutation written in one of the four notations. All points are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PermRepr {
    /// `images[s - 1]` is the image of `s`.
    Images { images: Vec<usize>, sign: Sign },
    /// `list[k - 1]` is the object that ends up at position `k`; the inverse of the images.
    Rearrangement { list: Vec<usize>, sign: Sign },
    Cycles {
        degree: usize,
        cycles: Vec<Vec<usize>>,
        sign: Sign,
    },
    /// `point -> image` for every moved point.
    Rules {
        degree: usize,
        rules: Vec<(usize, usize)>,
        sign: Sign,
    },
}

impl PermRepr {
    pub fn notation(&self) -> Notation {
        match self {
            PermRepr::Images { .. } => Notation::Images,
            PermRepr::Rearrangement { .. } => Notation::Rearrangement,
            PermRepr::Cycles { .. } => Notation::Cycles,
            PermRepr::Rules { .. } => Notation::Rules,
        }
    }

    pub fn to_perm(&self) -> Result<SignedPerm> {
        match self {
            PermRepr::Images { images, sign } => SignedPerm::new(images.clone(), *sign),
            PermRepr::Rearrangement { list, sign } => {
                Ok(SignedPerm::new(list.clone(), *sign)?.inverse())
            }
            PermRepr::Cycles {
                degree,
                cycles,
                sign,
            } => SignedPerm::from_cycles(*degree, cycles, *sign),
            PermRepr::Rules {
                degree,
                rules,
                sign,
            } => {
                let mut images: Vec<usize> = (1..=*degree).collect();
                let mut from_seen = vec![false; *degree];
                for &(from, to) in rules {
                    if from == 0 || from > *degree || to == 0 || to > *degree {
                        return invalid(format!("rule {from}->{to} out of range 1..={degree}"));
                    }
                    if std::mem::replace(&mut from_seen[from - 1], true) {
                        return invalid(format!("point {from} has two rules"));
                    }
                    images[from - 1] = to;
                }
                SignedPerm::new(images, *sign)
            }
        }
    }

    pub fn from_perm(p: &SignedPerm, notation: Notation) -> PermRepr {
        let sign = p.sign();
        match notation {
            Notation::Images => PermRepr::Images {
                images: p.images(),
                sign,
            },
            Notation::Rearrangement => PermRepr::Rearrangement {
                list: p.inverse().images(),
                sign,
            },
            Notation::Cycles => PermRepr::Cycles {
                degree: p.degree(),
                cycles: p.cycles(),
                sign,
            },
            Notation::Rules => PermRepr::Rules {
                degree: p.degree(),
                rules: p
                    .cycles()
                    .iter()
                    .flat_map(|c| (0..c.len()).map(move |k| (c[k], c[(k + 1) % c.len()])))
                    .collect(),
                sign,
            },
        }
    }

    pub fn translate(&self, to: Notation) -> Result<PermRepr> {
        Ok(PermRepr::from_perm(&self.to_perm()?, to))
    }
}

/// The external encoding of a signed permutation of degree `n` as `n + 2` images, the last two
/// points being `n+1, n+2` for sign `+` and `n+2, n+1` for sign `-`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExtendedImages(pub Vec<usize>);

impl ExtendedImages {
    pub fn encode(p: &SignedPerm) -> Self {
        let n = p.degree();
        let mut points = p.images();
        match p.sign() {
            Sign::Plus => points.extend([n + 1, n + 2]),
            Sign::Minus => points.extend([n + 2, n + 1]),
        }
        ExtendedImages(points)
    }

    pub fn decode(&self) -> Result<SignedPerm> {
        let pts = &self.0;
        if pts.len() < 2 {
            return Err(Error::Format(format!(
                "extended images need at least 2 points, got {}",
                pts.len()
            )));
        }
        let n = pts.len() - 2;
        let sign = match (pts[n], pts[n + 1]) {
            (a, b) if a == n + 1 && b == n + 2 => Sign::Plus,
            (a, b) if a == n + 2 && b == n + 1 => Sign::Minus,
            (a, b) => {
                return Err(Error::Format(format!(
                    "sign tail must be ({}, {}) or ({}, {}), got ({a}, {b})",
                    n + 1,
                    n + 2,
                    n + 2,
                    n + 1
                )))
            }
        };
        SignedPerm::new(pts[..n].to_vec(), sign).map_err(|e| Error::Format(e.to_string()))
    }

    /// Whitespace-separated integers.
    pub fn parse_text(text: &str) -> Result<Self> {
        text.split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Format(format!("not a point: {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(ExtendedImages)
    }

    pub fn to_text(&self) -> String {
        let strs: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        strs.join(" ")
    }
}
