mod common;

use common::*;
use permcanon::canon::{canonical_perm, double_coset_rep, right_coset_rep, CanonicalResult};
use permcanon::group::schreier_sims;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const CAP: usize = 100_000;

#[test]
fn double_coset_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut zeros, mut both) = (0, 0);
    for _ in 0..600 {
        let (inst, s, d) = random_instance(&mut rng, CAP);
        both += (s.len() > 2 && d.len() > 2) as usize;
        let sgs = schreier_sims(&[], &inst.generating_set()).unwrap();
        let got = double_coset_rep(&inst.g.to_signed(), &sgs, &inst.desc).unwrap();
        let want = oracle_result(oracle_double_coset(&inst.g, &s, &d));
        zeros += want.is_zero() as usize;
        assert_eq!(got, want, "{inst:?}");
    }
    assert!(zeros > 20, "too few vanishing instances: {zeros}");
    assert!(both > 200, "too few instances with both groups non-trivial: {both}");
}

#[test]
fn canonical_perm_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..600 {
        let (inst, s, d) = random_instance(&mut rng, CAP);
        let got = canonical_perm(&inst.g.to_signed(), inst.generating_set(), &inst.desc).unwrap();
        let want = oracle_result(oracle_canonical(&inst.g, &s, &d, &inst.frees0()));
        assert_eq!(got, want, "{inst:?}");
    }
}

#[test]
fn right_coset_places_frees_minimally() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..300 {
        let (inst, s, _) = random_instance(&mut rng, CAP);
        let frees = inst.frees0();
        let sgs = schreier_sims(&[], &inst.generating_set()).unwrap();
        let got = Raw::from_signed(
            &right_coset_rep(&inst.g.to_signed(), &sgs, inst.desc.frees()).unwrap(),
        );
        let coset: Vec<Raw> = s.iter().map(|x| x.then(&inst.g)).collect();
        assert!(coset.contains(&got), "{inst:?}");
        let best = coset.iter().map(|p| free_slots(p, &frees)).min().unwrap();
        assert_eq!(free_slots(&got, &frees), best);
    }
}

#[test]
fn invariant_under_both_symmetries() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..200 {
        let (inst, s, d) = random_instance(&mut rng, CAP);
        let gs = inst.generating_set();
        let sgs = schreier_sims(&[], &gs).unwrap();
        let base = canonical_perm(&inst.g.to_signed(), sgs.clone(), &inst.desc).unwrap();
        for _ in 0..20 {
            let moved = pick(&mut rng, &s).then(&inst.g).then(pick(&mut rng, &d));
            let again = canonical_perm(&moved.to_signed(), sgs.clone(), &inst.desc).unwrap();
            assert_eq!(again, base, "{inst:?}");
        }
    }
}

#[test]
fn negation_and_idempotence() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..200 {
        let (inst, _, _) = random_instance(&mut rng, CAP);
        let sgs = schreier_sims(&[], &inst.generating_set()).unwrap();
        let g = inst.g.to_signed();
        let out = canonical_perm(&g, sgs.clone(), &inst.desc).unwrap();
        let neg = canonical_perm(&g.negated(), sgs.clone(), &inst.desc).unwrap();
        assert_eq!(neg, out.negated());
        if let CanonicalResult::Perm(p) = &out {
            let twice = canonical_perm(p, sgs.clone(), &inst.desc).unwrap();
            assert_eq!(&twice, &out);
        }
    }
}
