//! Property-based invariants of the combinatorial layer.

use membrane::perm::{
    block_binomial, concat_perm, is_shuffle, restricted_shuffles, shuffles, triple_shuffles,
    Permutation,
};
use membrane::series::shuffle_expand;
use membrane::word::{canonicalize, relabel, MonomialClass, Word};
use proptest::prelude::*;

fn arb_perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_n).prop_flat_map(|n| {
        Just(n).prop_perturb(move |n, mut rng| {
            let mut images: Vec<usize> = (1..=n).collect();
            for i in (1..images.len()).rev() {
                let j = rng.random_range(0..=i);
                images.swap(i, j);
            }
            Permutation::from_images(images).expect("shuffled identity")
        })
    })
}

fn arb_perm_exact(n: usize) -> impl Strategy<Value = Permutation> {
    Just(n).prop_perturb(move |n, mut rng| {
        let mut images: Vec<usize> = (1..=n).collect();
        for i in (1..images.len()).rev() {
            let j = rng.random_range(0..=i);
            images.swap(i, j);
        }
        Permutation::from_images(images).expect("shuffled identity")
    })
}

proptest! {
    #[test]
    fn shuffle_count_is_binomial(sigma in arb_perm(4), tau in arb_perm(4)) {
        let set = shuffles(&sigma, &tau);
        prop_assert_eq!(set.len(), block_binomial(sigma.len(), tau.len()));
        // no duplicates, lexicographically sorted
        let mut sorted = set.clone();
        sorted.dedup();
        prop_assert_eq!(&sorted, &set);
    }

    #[test]
    fn shuffles_agree_with_membership_oracle(sigma in arb_perm(3), tau in arb_perm(3)) {
        let set = shuffles(&sigma, &tau);
        let brute: Vec<Permutation> = Permutation::all(sigma.len() + tau.len())
            .into_iter()
            .filter(|rho| is_shuffle(rho, &sigma, &tau).unwrap())
            .collect();
        prop_assert_eq!(set, brute);
    }

    #[test]
    fn concat_is_always_a_shuffle(sigma in arb_perm(4), tau in arb_perm(4)) {
        let rho = concat_perm(&sigma, &tau);
        prop_assert!(is_shuffle(&rho, &sigma, &tau).unwrap());
    }

    #[test]
    fn restricted_degenerate_cuts_match(sigma in arb_perm(3), tau in arb_perm(3)) {
        let plain = shuffles(&sigma, &tau);
        prop_assert_eq!(
            restricted_shuffles(&sigma, &tau, 0, 0).unwrap(),
            plain.clone()
        );
        prop_assert_eq!(
            restricted_shuffles(&sigma, &tau, sigma.len(), tau.len()).unwrap(),
            plain
        );
    }

    #[test]
    fn restricted_counts_factor(sigma in arb_perm_exact(3), tau in arb_perm_exact(2), i in 0usize..=3, j in 0usize..=2) {
        let set = restricted_shuffles(&sigma, &tau, i, j).unwrap();
        let below = block_binomial(i, j);
        let above = block_binomial(3 - i, 2 - j);
        prop_assert_eq!(set.len(), below * above);
    }

    #[test]
    fn triple_shuffles_grouping_independent(
        a in arb_perm(2), b in arb_perm(2), c in arb_perm(2)
    ) {
        let front = triple_shuffles(&a, &b, &c);
        let mut back = Vec::new();
        for rho in shuffles(&b, &c) {
            back.extend(shuffles(&a, &rho));
        }
        back.sort();
        back.dedup();
        prop_assert_eq!(front, back);
    }

    #[test]
    fn permutation_display_parse_round_trip(p in arb_perm(6)) {
        let text = p.to_string();
        let back: Permutation = text.parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn canonicalization_is_orbit_invariant(
        s1 in arb_perm_exact(3), s2 in arb_perm_exact(3), s0 in arb_perm_exact(3),
        letters in proptest::collection::vec(1u8..=2, 3)
    ) {
        let word = Word(letters);
        let base = canonicalize(&word, &s1, &s2).unwrap();
        let (w, t1, t2) = relabel(&word, &s1, &s2, &s0);
        prop_assert_eq!(canonicalize(&w, &t1, &t2).unwrap(), base);
    }

    #[test]
    fn shuffle_product_is_commutative_on_classes(
        s2a in arb_perm_exact(2), s2b in arb_perm_exact(2),
        wa in proptest::collection::vec(1u8..=2, 2),
        wb in proptest::collection::vec(1u8..=2, 2)
    ) {
        let a = MonomialClass { word: Word(wa), sigma2: s2a };
        let b = MonomialClass { word: Word(wb), sigma2: s2b };
        prop_assert_eq!(shuffle_expand(&a, &b), shuffle_expand(&b, &a));
        // total multiplicity C(4,2)^2
        let total: usize = shuffle_expand(&a, &b).iter().map(|(_, m)| m).sum();
        prop_assert_eq!(total, 36);
    }
}
