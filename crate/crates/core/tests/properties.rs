use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regdil::dilation::{
    build_gram, check_regular_dilation, construct_dilation, uniqueness_check, verify_comp_identities, verify_dilation,
    Coordinates, Tolerances,
};
use regdil::gradedspace::{
    apply_swap_path, reorder_unitary, signed_subset_sum, theta_embed, MultiIndex, ProductSystem, Subset, TwistFamily,
};
use regdil::io::{PolynomialFile, RepresentationFile, SystemFile};
use regdil::linalg::{identity, kron, random_unitary, residual};
use regdil::representation::{random_cc, NcPolynomial, Representation};

const FAMILIES: [TwistFamily; 4] = [
    TwistFamily::Untwisted,
    TwistFamily::Diagonal,
    TwistFamily::Permutation,
    TwistFamily::DenseUnitary,
];

fn system(rng: &mut ChaCha8Rng, k: usize) -> ProductSystem {
    let dims: Vec<usize> = (0..k).map(|_| rng.random_range(1..=2)).collect();
    let family = FAMILIES[rng.random_range(0..FAMILIES.len())];
    ProductSystem::random(rng, dims, family).unwrap()
}

fn valid_rep(rng: &mut ChaCha8Rng, k: usize, h: usize) -> Representation {
    let sys = system(rng, k);
    random_cc(rng, &sys, h).unwrap()
}

fn sorting_path(rng: &mut ChaCha8Rng, word: &[usize]) -> Vec<usize> {
    let mut w = word.to_vec();
    let mut path = Vec::new();
    loop {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect();
        if inversions.is_empty() {
            return path;
        }
        let p = inversions[rng.random_range(0..inversions.len())];
        w.swap(p, p + 1);
        path.push(p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn reordering_is_path_independent(seed in any::<u64>(), word in proptest::collection::vec(0usize..3, 1..6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = system(&mut rng, 3);
        let mut sorted = word.clone();
        sorted.sort();
        let direct = reorder_unitary(&sys, &word, &sorted).unwrap();
        let (other, end) = apply_swap_path(&sys, &word, &sorting_path(&mut rng, &word)).unwrap();
        prop_assert_eq!(end, sorted);
        prop_assert!(residual(&direct, &other) <= 1e-12);
    }

    #[test]
    fn reordering_back_is_the_inverse(seed in any::<u64>(), word in proptest::collection::vec(0usize..3, 1..6)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = system(&mut rng, 3);
        let mut sorted = word.clone();
        sorted.sort();
        let there = reorder_unitary(&sys, &word, &sorted).unwrap();
        let back = reorder_unitary(&sys, &sorted, &word).unwrap();
        prop_assert!(residual(&(back * there), &identity(sys.word_dim(&word))) <= 1e-12);
    }

    #[test]
    fn theta_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = system(&mut rng, 3);
        let grades = MultiIndex::from(vec![1, 1, 1]).box_grades();
        let mut pick = || grades[rng.random_range(0..grades.len())].clone();
        let (a, b, p) = (pick(), pick(), pick());
        let dim = |g: &MultiIndex| sys.word_dim(&g.word().unwrap());
        let lhs = theta_embed(&sys, &a.add(&b).unwrap(), &p).unwrap()
            * kron(&theta_embed(&sys, &a, &b).unwrap(), &identity(dim(&p)));
        let rhs = theta_embed(&sys, &a, &b.add(&p).unwrap()).unwrap()
            * kron(&identity(dim(&a)), &theta_embed(&sys, &b, &p).unwrap());
        prop_assert!(residual(&lhs, &rhs) <= 1e-12);
    }

    #[test]
    fn symbol_of_negated_index_is_adjoint(seed in any::<u64>(), n in proptest::collection::vec(-2i64..=2, 2)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = valid_rep(&mut rng, 2, 2);
        let n = MultiIndex::from(n);
        let minus = MultiIndex::from(n.entries().iter().map(|x| -x).collect::<Vec<_>>());
        let a = rep.symbol(&n).unwrap();
        let b = rep.symbol(&minus).unwrap();
        prop_assert!(residual(&a, &b.adjoint()) <= 1e-12);
    }

    #[test]
    fn brehmer_spectrum_is_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = valid_rep(&mut rng, 2, 3);
        let u = random_unitary(&mut rng, 3);
        let a = check_regular_dilation(&rep, 1e-10).unwrap();
        let b = check_regular_dilation(&rep.conjugate(&u).unwrap(), 1e-10).unwrap();
        for (x, y) in a.subsets.iter().zip(&b.subsets) {
            prop_assert!((x.min_eigenvalue - y.min_eigenvalue).abs() <= 1e-10);
        }
        prop_assert_eq!(a.holds, b.holds);
    }

    #[test]
    fn double_commutation_is_unitarily_invariant(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = valid_rep(&mut rng, 2, 2);
        let u = random_unitary(&mut rng, 2);
        let a = rep.is_doubly_commuting().max_residual;
        let b = rep.conjugate(&u).unwrap().is_doubly_commuting().max_residual;
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn signed_subset_sum_detects_zero_support(bits in 0u32..8, n in proptest::collection::vec(0i64..3, 3)) {
        let v = Subset::from_bits(bits);
        let n = MultiIndex::from(n);
        let expected = i64::from(v.indices().all(|i| n.get(i) == 0));
        prop_assert_eq!(signed_subset_sum(v, &n), expected);
    }

    #[test]
    fn gram_identities_are_exact_on_boxes(seed in any::<u64>(), b1 in 0i64..=2, b2 in 0i64..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = valid_rep(&mut rng, 2, 2);
        let gram = build_gram(&rep, &MultiIndex::from(vec![b1, b2]), usize::MAX).unwrap();
        prop_assert!(verify_comp_identities(&gram).max() <= 1e-10);
    }

    #[test]
    fn single_contractions_always_dilate(seed in any::<u64>(), d in 1usize..=3, h in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = ProductSystem::untwisted(vec![d]).unwrap();
        let rep = random_cc(&mut rng, &sys, h).unwrap();
        prop_assert!(check_regular_dilation(&rep, 1e-10).unwrap().holds);
        let tol = Tolerances::default();
        let dil = construct_dilation(&rep, &MultiIndex::from(vec![3]), Coordinates::Spectral, &tol, usize::MAX).unwrap();
        prop_assert!(verify_dilation(&rep, &dil, 1e-8).unwrap().passed);
    }

    #[test]
    fn dilations_agree_across_coordinates(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = valid_rep(&mut rng, 2, 2);
        prop_assume!(check_regular_dilation(&rep, 1e-10).unwrap().holds);
        let tol = Tolerances::default();
        let bound = MultiIndex::from(vec![1, 2]);
        let a = construct_dilation(&rep, &bound, Coordinates::Spectral, &tol, usize::MAX).unwrap();
        let b = construct_dilation(&rep, &bound, Coordinates::Rotated(seed), &tol, usize::MAX).unwrap();
        prop_assert!(uniqueness_check(&a, &b).unwrap().max() <= 1e-8);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rep = valid_rep(&mut rng, 3, 2);
        let sys_text = serde_json::to_string(&SystemFile::from_system(rep.system())).unwrap();
        let sys = serde_json::from_str::<SystemFile>(&sys_text).unwrap().to_system().unwrap();
        let rep_text = serde_json::to_string(&RepresentationFile::from_representation(&rep)).unwrap();
        let back = serde_json::from_str::<RepresentationFile>(&rep_text).unwrap().to_representation(Some(sys)).unwrap();
        prop_assert_eq!(back.blocks(), rep.blocks());
        let p = NcPolynomial::random(&mut rng, rep.system().dims(), 3, 3);
        let p_text = serde_json::to_string(&PolynomialFile::from_polynomial(&p)).unwrap();
        prop_assert_eq!(serde_json::from_str::<PolynomialFile>(&p_text).unwrap().to_polynomial().unwrap(), p);
    }
}
