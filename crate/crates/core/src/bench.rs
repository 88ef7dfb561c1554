//! Benchmark families and CSV records.

use std::io::Write;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{CanonOptions, CanonicalResult};
use crate::error::{Error, Result};
use crate::perm::Sign;
use crate::tensor::{Factor, IndexAtom, Monomial, Problem, Registry};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResultClass {
    Zero,
    Nonzero,
    /// The candidate table outgrew the memory budget.
    Limit,
}

/// One canonicalization run. Field order is the CSV column order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub experiment: String,
    pub n: usize,
    pub seed: u64,
    pub result: ResultClass,
    pub micros: u64,
    pub peak: usize,
}

fn factor(head: &str, indices: Vec<IndexAtom>) -> Factor {
    Factor {
        head: head.to_string(),
        indices,
    }
}

fn up(name: String) -> IndexAtom {
    IndexAtom::symbol(&name, true)
}

fn down(name: String) -> IndexAtom {
    IndexAtom::symbol(&name, false)
}

/// `F[a1,-a2] F[a2,-a3] ... F[an,-a1]`.
pub fn antisymmetric_chain(n: usize) -> Monomial {
    let a = |i: usize| format!("a{}", i % n + 1);
    Monomial {
        sign: Sign::Plus,
        factors: (0..n)
            .map(|i| factor("F", vec![up(a(i)), down(a(i + 1))]))
            .collect(),
    }
}

/// `R[a1,b1,-a2,-b2] R[a2,b2,-a3,-b3] ... R[an,bn,-a1,-b1]`.
pub fn hard_cycle(n: usize) -> Monomial {
    let a = |i: usize| format!("a{}", i % n + 1);
    let b = |i: usize| format!("b{}", i % n + 1);
    Monomial {
        sign: Sign::Plus,
        factors: (0..n)
            .map(|i| factor("R", vec![up(a(i)), up(b(i)), down(a(i + 1)), down(b(i + 1))]))
            .collect(),
    }
}

/// `n` Riemann tensors with all `4n` slots contracted by a uniformly random perfect matching.
/// The earlier slot of each pair is contravariant; names `d1, d2, ...` follow first appearance.
pub fn random_riemann(n: usize, seed: u64) -> Monomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut slots: Vec<usize> = (0..4 * n).collect();
    slots.shuffle(&mut rng);
    let mut partner = vec![0; 4 * n];
    for pair in slots.chunks(2) {
        partner[pair[0]] = pair[1];
        partner[pair[1]] = pair[0];
    }
    let mut name = vec![None; 4 * n];
    let mut next = 0;
    let mut atoms = Vec::with_capacity(4 * n);
    for s in 0..4 * n {
        match name[s].take() {
            Some(k) => atoms.push(down(format!("d{k}"))),
            None => {
                next += 1;
                name[partner[s]] = Some(next);
                atoms.push(up(format!("d{next}")));
            }
        }
    }
    Monomial {
        sign: Sign::Plus,
        factors: atoms
            .chunks(4)
            .map(|c| factor("R", c.to_vec()))
            .collect(),
    }
}

/// Canonicalizes `m` and times it; running out of memory budget is recorded, not raised.
pub fn run_instance(
    experiment: &str,
    n: usize,
    seed: u64,
    m: &Monomial,
    reg: &Registry,
    opts: &CanonOptions,
) -> Result<(BenchRecord, CanonicalResult)> {
    let start = Instant::now();
    let problem = Problem::new(m, reg)?;
    let (result, class, peak) = match problem.solve(opts) {
        Ok((r, stats)) => {
            let class = if r.is_zero() {
                ResultClass::Zero
            } else {
                ResultClass::Nonzero
            };
            (r, class, stats.peak_candidates)
        }
        Err(Error::ResourceLimit(_)) => (CanonicalResult::Zero, ResultClass::Limit, 0),
        Err(e) => return Err(e),
    };
    let micros = (start.elapsed().as_micros() as u64).max(1);
    Ok((
        BenchRecord {
            experiment: experiment.to_string(),
            n,
            seed,
            result: class,
            micros,
            peak,
        },
        result,
    ))
}

/// The chain for `n = 3..=n_max`, `reps` timings each. Errors if a result breaks the parity
/// law (zero exactly for odd `n`).
pub fn bench_antisymmetric_chain(
    n_max: usize,
    reps: usize,
    opts: &CanonOptions,
) -> Result<Vec<BenchRecord>> {
    let reg = Registry::default();
    let mut out = Vec::new();
    for n in 3..=n_max {
        let m = antisymmetric_chain(n);
        for rep in 0..reps.max(1) {
            let (rec, _) = run_instance("chain", n, rep as u64, &m, &reg, opts)?;
            let expected = if n % 2 == 1 {
                ResultClass::Zero
            } else {
                ResultClass::Nonzero
            };
            if rec.result != expected {
                return Err(Error::InvalidExpression(format!(
                    "chain of length {n} gave {:?}",
                    rec.result
                )));
            }
            out.push(rec);
        }
    }
    Ok(out)
}

/// Instance seeds for the random family, derived from one master seed.
pub fn instance_seeds(seed: u64, n_max: usize, per_n: usize) -> Vec<(usize, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (1..=n_max)
        .flat_map(|n| (0..per_n).map(move |_| n))
        .map(|n| (n, rng.gen()))
        .collect()
}

pub fn bench_random_riemann(
    n_max: usize,
    per_n: usize,
    seed: u64,
    opts: &CanonOptions,
) -> Result<Vec<BenchRecord>> {
    let reg = Registry::default();
    instance_seeds(seed, n_max, per_n)
        .into_iter()
        .map(|(n, s)| Ok(run_instance("riemann", n, s, &random_riemann(n, s), &reg, opts)?.0))
        .collect()
}

pub fn bench_hard_cycle(n_max: usize, opts: &CanonOptions) -> Result<Vec<BenchRecord>> {
    let reg = Registry::default();
    (2..=n_max)
        .map(|n| Ok(run_instance("cycle", n, 0, &hard_cycle(n), &reg, opts)?.0))
        .collect()
}

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r).map_err(|e| Error::Format(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Format(e.to_string()))?;
    Ok(())
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
