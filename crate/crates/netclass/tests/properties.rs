use std::sync::OnceLock;

use netclass::algebra::{
    apolar_annihilator, classify_algebra, hilbert_vector, pairing, structure_constants,
};
use netclass::cubic::classify_cubic;
use netclass::gf::{FieldCtx, PrimeField};
use netclass::linalg;
use netclass::net::{
    act, classify_net, net_disc, net_slice, random_gl3, random_net, representatives,
};
use netclass::pencil::{pencil_representatives, PencilClassifier};
use netclass::subspace::Grassmannian;
use proptest::prelude::*;

const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn ctx(p: u64) -> &'static FieldCtx {
    static CTXS: OnceLock<Vec<FieldCtx>> = OnceLock::new();
    let all = CTXS.get_or_init(|| {
        PRIMES
            .iter()
            .map(|&p| FieldCtx::standard(p).unwrap())
            .collect()
    });
    &all[PRIMES.iter().position(|&q| q == p).unwrap()]
}

fn classifier(p: u64) -> &'static PencilClassifier {
    static CLS: OnceLock<Vec<PencilClassifier>> = OnceLock::new();
    let all = CLS.get_or_init(|| {
        PRIMES
            .iter()
            .map(|&p| PencilClassifier::calibrate(ctx(p)).unwrap())
            .collect()
    });
    &all[PRIMES.iter().position(|&q| q == p).unwrap()]
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(PRIMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn labels_are_gl_invariant(p in prime(), s in any::<u64>(), m in any::<u64>()) {
        let c = ctx(p);
        let f = c.prime_field();
        let w = random_net(&f, s);
        let moved = act(&f, &random_gl3(&f, m), &w).unwrap();
        prop_assert_eq!(classify_net(c, &moved).unwrap(), classify_net(c, &w).unwrap());
    }

    #[test]
    fn representative_orbits_keep_their_labels(p in prime(), row in 0usize..10, m in any::<u64>()) {
        let c = ctx(p);
        let f = c.prime_field();
        let (label, w) = representatives(&f)[row].clone();
        let moved = act(&f, &random_gl3(&f, m), &w).unwrap();
        prop_assert_eq!(classify_net(c, &moved).unwrap(), label);
    }

    #[test]
    fn disc_and_slice_types_are_gl_invariant(p in prime(), s in any::<u64>(), m in any::<u64>()) {
        let c = ctx(p);
        let f = c.prime_field();
        let w = random_net(&f, s);
        let moved = act(&f, &random_gl3(&f, m), &w).unwrap();
        prop_assert_eq!(classify_cubic(c, &net_disc(&f, &moved)).unwrap(), classify_cubic(c, &net_disc(&f, &w)).unwrap());
        prop_assert_eq!(classify_cubic(c, &net_slice(&f, &moved)).unwrap(), classify_cubic(c, &net_slice(&f, &w)).unwrap());
    }

    #[test]
    fn action_is_a_right_action(p in prime(), s in any::<u64>(), a in any::<u64>(), b in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let w = random_net(&f, s);
        let (m1, m2) = (random_gl3(&f, a), random_gl3(&f, b));
        let once = act(&f, &linalg::mat_mul(&f, &m1, &m2), &w).unwrap();
        let twice = act(&f, &m2, &act(&f, &m1, &w).unwrap()).unwrap();
        prop_assert_eq!(once.canonical(), twice.canonical());
        let id = act(&f, &linalg::identity(&f), &w).unwrap();
        prop_assert_eq!(id.canonical(), w.canonical());
    }

    #[test]
    fn annihilator_is_three_dimensional_and_orthogonal(p in prime(), s in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let w = random_net(&f, s);
        let ann = apolar_annihilator(&f, &w);
        prop_assert_eq!(ann.dim(), 3);
        for q in ann.forms() {
            for a in w.basis() {
                prop_assert_eq!(pairing(&f, &q, a).0, 0);
            }
        }
    }

    #[test]
    fn structure_constants_give_type_33_local_algebras(p in prop::sample::select(vec![5u64, 11, 13]), s in any::<u64>()) {
        let c = ctx(p);
        let f = c.prime_field();
        let w = random_net(&f, s);
        let t = structure_constants(&w);
        prop_assert!(t.check_commutative().is_ok());
        prop_assert!(t.check_associative(&f).is_ok());
        prop_assert!(hilbert_vector(&f, &t).unwrap().is_type33());
        prop_assert_eq!(classify_algebra(c, &t).unwrap(), classify_net(c, &w).unwrap());
    }

    #[test]
    fn grassmannian_rank_round_trips(p in prop::sample::select(vec![5u64, 7]), s in any::<u64>()) {
        let f = PrimeField::new(p).unwrap();
        let g = Grassmannian::<3>::new(f);
        let idx = s % g.len();
        let sub = g.unrank(idx);
        prop_assert_eq!(g.rank(&sub), idx);
        let w = random_net(&f, s);
        prop_assert_eq!(g.unrank(g.rank(w.canonical())), *w.canonical());
    }

    #[test]
    fn pencil_labels_are_gl_invariant(p in prime(), row in 0usize..8, m in any::<u64>()) {
        let c = ctx(p);
        let f = c.prime_field();
        let (label, u) = pencil_representatives(&f)[row].clone();
        let moved = u.act(&f, &random_gl3(&f, m)).unwrap();
        prop_assert_eq!(classifier(p).classify(c, &moved).unwrap(), label);
    }
}
