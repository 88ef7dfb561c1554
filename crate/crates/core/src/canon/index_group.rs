//! The index-symmetry group, never materialized: its stabilizer chain is known from the
//! structure of the dummy and repeated sets, so orbits and transversals are read off directly.

use crate::canon::descriptor::{Metric, SymmetryDescriptor};
use crate::perm::SignedPerm;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Owner {
    Fixed,
    Dummy { block: usize, pair: usize, up: bool },
    Repeated { block: usize },
}

#[derive(Clone, Debug)]
struct DummyBlock {
    metric: Metric,
    pairs: Vec<(usize, usize)>,
    alive: Vec<bool>,
}

#[derive(Clone, Debug)]
struct RepeatedBlock {
    positions: Vec<usize>,
    alive: Vec<bool>,
}

/// The pointwise stabilizer in the index group of the labels fixed so far.
#[derive(Clone, Debug)]
pub(crate) struct IndexSymmetry {
    owner: Vec<Owner>,
    dummies: Vec<DummyBlock>,
    repeated: Vec<RepeatedBlock>,
}

impl IndexSymmetry {
    pub fn new(desc: &SymmetryDescriptor) -> Self {
        let mut owner = vec![Owner::Fixed; desc.degree()];
        let dummies = desc
            .dummy_sets()
            .iter()
            .enumerate()
            .map(|(block, ds)| {
                let pairs: Vec<(usize, usize)> =
                    ds.pairs.iter().map(|&(u, d)| (u - 1, d - 1)).collect();
                for (pair, &(u, d)) in pairs.iter().enumerate() {
                    owner[u] = Owner::Dummy { block, pair, up: true };
                    owner[d] = Owner::Dummy { block, pair, up: false };
                }
                DummyBlock {
                    metric: ds.metric,
                    alive: vec![true; pairs.len()],
                    pairs,
                }
            })
            .collect();
        let repeated = desc
            .repeated_sets()
            .iter()
            .enumerate()
            .map(|(block, rs)| {
                let positions: Vec<usize> = rs.positions.iter().map(|p| p - 1).collect();
                for &p in &positions {
                    owner[p] = Owner::Repeated { block };
                }
                RepeatedBlock {
                    alive: vec![true; positions.len()],
                    positions,
                }
            })
            .collect();
        IndexSymmetry {
            owner,
            dummies,
            repeated,
        }
    }

    /// For every label, the smallest label in its orbit.
    pub fn orbit_mins(&self) -> Vec<usize> {
        let mut md: Vec<usize> = (0..self.owner.len()).collect();
        for block in &self.dummies {
            let live = || {
                block
                    .pairs
                    .iter()
                    .zip(&block.alive)
                    .filter(|(_, &a)| a)
                    .map(|(p, _)| *p)
            };
            let min_up = live().map(|(u, _)| u).min();
            let min_down = live().map(|(_, d)| d).min();
            let (Some(min_up), Some(min_down)) = (min_up, min_down) else {
                continue;
            };
            let min_all = min_up.min(min_down);
            for (u, d) in live() {
                if block.metric == Metric::None {
                    md[u] = min_up;
                    md[d] = min_down;
                } else {
                    md[u] = min_all;
                    md[d] = min_all;
                }
            }
        }
        for block in &self.repeated {
            let live: Vec<usize> = block
                .positions
                .iter()
                .zip(&block.alive)
                .filter(|(_, &a)| a)
                .map(|(p, _)| *p)
                .collect();
            if let Some(&m) = live.iter().min() {
                for p in live {
                    md[p] = m;
                }
            }
        }
        md
    }

    /// Restricts to the stabilizer of `label`. Fixing one member of a dummy pair fixes its
    /// partner too.
    pub fn fix(&mut self, label: usize) {
        match self.owner[label] {
            Owner::Fixed => {}
            Owner::Dummy { block, pair, .. } => {
                let b = &mut self.dummies[block];
                b.alive[pair] = false;
                let (u, d) = b.pairs[pair];
                self.owner[u] = Owner::Fixed;
                self.owner[d] = Owner::Fixed;
            }
            Owner::Repeated { block } => {
                let b = &mut self.repeated[block];
                let k = b.positions.iter().position(|&p| p == label).unwrap();
                b.alive[k] = false;
                self.owner[label] = Owner::Fixed;
            }
        }
    }

    /// Replaces `h` by `h * d` for an element `d` of the current group with `d(from) = to`.
    /// The two labels must lie in one orbit.
    pub fn relabel(&self, h: &mut SignedPerm, from: usize, to: usize) {
        if from == to {
            return;
        }
        match (self.owner[from], self.owner[to]) {
            (
                Owner::Dummy {
                    block,
                    pair: k,
                    up: from_up,
                },
                Owner::Dummy {
                    block: block_to,
                    pair: l,
                    up: to_up,
                },
            ) => {
                debug_assert_eq!(block, block_to);
                let b = &self.dummies[block];
                let (uk, dk) = b.pairs[k];
                let (ul, dl) = b.pairs[l];
                let flip = from_up != to_up;
                debug_assert!(!flip || b.metric != Metric::None);
                let map = |mut y: usize| {
                    if k != l {
                        y = if y == uk {
                            ul
                        } else if y == ul {
                            uk
                        } else if y == dk {
                            dl
                        } else if y == dl {
                            dk
                        } else {
                            y
                        };
                    }
                    if flip {
                        y = if y == ul {
                            dl
                        } else if y == dl {
                            ul
                        } else {
                            y
                        };
                    }
                    y
                };
                for v in h.raw_mut() {
                    *v = map(*v);
                }
                if flip && b.metric == Metric::Antisymmetric {
                    h.flip_sign();
                }
            }
            (Owner::Repeated { block }, Owner::Repeated { block: block_to }) => {
                debug_assert_eq!(block, block_to);
                for v in h.raw_mut() {
                    if *v == from {
                        *v = to;
                    } else if *v == to {
                        *v = from;
                    }
                }
            }
            _ => unreachable!("relabel between labels in different orbits"),
        }
    }
}
