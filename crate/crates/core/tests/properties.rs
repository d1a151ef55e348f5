use proptest::prelude::*;
use zp_sumsets::theorems::{
    cover_normalization, distinct_sum_chain, hsz, theorem_con, HszVariant, Witness,
};
use zp_sumsets::zp::{
    affine_image, companion_set, deficiency, diameter, double, min_cover_ap, restricted_sumset,
    sumset,
};
use zp_sumsets::{AffineMap, PrimeModulus, ResidueSet};

const PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 31, 61, 67, 127];

fn arb_modulus() -> impl Strategy<Value = PrimeModulus> {
    proptest::sample::select(PRIMES.to_vec()).prop_map(|p| PrimeModulus::new(p).unwrap())
}

fn arb_set(m: PrimeModulus) -> impl Strategy<Value = ResidueSet> {
    let p = m.get();
    proptest::collection::vec(0..p, 1..=(p as usize).min(24))
        .prop_map(move |xs| ResidueSet::from_residues(m, xs.into_iter().map(i64::from)))
}

fn arb_map(m: PrimeModulus) -> impl Strategy<Value = AffineMap> {
    let p = m.get();
    (1..p, 0..p).prop_map(move |(x, y)| AffineMap::new(m, x, y).unwrap())
}

fn small_modulus() -> impl Strategy<Value = PrimeModulus> {
    proptest::sample::select(vec![5u64, 7, 11, 13]).prop_map(|p| PrimeModulus::new(p).unwrap())
}

proptest! {
    #[test]
    fn sumset_commutes_and_associates(
        (a, b, c) in arb_modulus().prop_flat_map(|m| (arb_set(m), arb_set(m), arb_set(m)))
    ) {
        prop_assert_eq!(sumset(&a, &b).unwrap(), sumset(&b, &a).unwrap());
        let left = sumset(&sumset(&a, &b).unwrap(), &c).unwrap();
        let right = sumset(&a, &sumset(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sumset_is_affine_equivariant(
        (a, b, f) in arb_modulus().prop_flat_map(|m| (arb_set(m), arb_set(m), arb_map(m)))
    ) {
        // f(a) + f(b) = x(a + b) + 2y
        let lhs = sumset(&affine_image(&a, &f).unwrap(), &affine_image(&b, &f).unwrap()).unwrap();
        let m = a.modulus();
        let g = AffineMap::new(m, f.scale(), m.add(f.shift(), f.shift())).unwrap();
        prop_assert_eq!(lhs, affine_image(&sumset(&a, &b).unwrap(), &g).unwrap());
    }

    #[test]
    fn diameter_is_affine_invariant(
        (a, f) in arb_modulus().prop_flat_map(|m| (arb_set(m), arb_map(m)))
    ) {
        let img = affine_image(&a, &f).unwrap();
        prop_assert_eq!(diameter(&a).unwrap(), diameter(&img).unwrap());
        let cover = min_cover_ap(&a).unwrap();
        prop_assert!(cover.covers(&a));
        prop_assert!(cover.is_canonical());
        prop_assert_eq!(cover.len(), diameter(&a).unwrap());
        prop_assert!(diameter(&a).unwrap() as usize >= a.cardinality());
    }

    #[test]
    fn restricted_sums_fit_inside_the_double(a in arb_modulus().prop_flat_map(arb_set)) {
        prop_assume!(a.cardinality() >= 2);
        let s = restricted_sumset(&a).unwrap();
        let t = double(&a).unwrap();
        prop_assert!(s.is_subset(&t));
        prop_assert!(s.cardinality() + a.cardinality() >= t.cardinality());
    }

    #[test]
    fn deficiency_is_symmetric(
        (a, b) in arb_modulus().prop_flat_map(|m| (arb_set(m), arb_set(m)))
    ) {
        let r = deficiency(&a, &b).unwrap();
        prop_assert_eq!(r, deficiency(&b, &a).unwrap());
        let c = companion_set(&a, &b).unwrap();
        if !c.is_empty() {
            let p = a.p() as i64;
            prop_assert_eq!(
                p + 1 - r,
                (a.cardinality() + b.cardinality() + c.cardinality()) as i64
            );
            let abc = sumset(&sumset(&a, &b).unwrap(), &c).unwrap();
            prop_assert!(!abc.contains(0));
        }
    }

    #[test]
    fn checkers_are_affine_covariant(
        (a, b, x, ya, yb) in small_modulus().prop_flat_map(|m| {
            let p = m.get();
            (arb_set(m), arb_set(m), 1..p, 0..p, 0..p)
        })
    ) {
        let m = a.modulus();
        let fa = AffineMap::new(m, x, ya).unwrap().image(&a);
        let fb = AffineMap::new(m, x, yb).unwrap().image(&b);
        for variant in [HszVariant::Standard, HszVariant::Conjecture] {
            let before = hsz(&a, &b, variant).unwrap();
            let after = hsz(&fa, &fb, variant).unwrap();
            prop_assert_eq!(before.conclusion, after.conclusion);
        }
        prop_assert_eq!(
            theorem_con(&a, &b).unwrap().conclusion,
            theorem_con(&fa, &fb).unwrap().conclusion
        );
    }

    #[test]
    fn hsz_witnesses_have_exact_lengths(
        (a, b) in small_modulus().prop_flat_map(|m| (arb_set(m), arb_set(m)))
    ) {
        let r = deficiency(&a, &b).unwrap();
        for variant in [HszVariant::Standard, HszVariant::Conjecture] {
            let v = hsz(&a, &b, variant).unwrap();
            prop_assert!(v.witness_validates());
            if let Some(Witness::CommonDifference { difference, a_cover, b_cover }) = &v.witness {
                prop_assert_eq!(a_cover.len() as i64, a.cardinality() as i64 + r);
                prop_assert_eq!(b_cover.len() as i64, b.cardinality() as i64 + r);
                prop_assert_eq!(a_cover.difference(), *difference);
                prop_assert_eq!(b_cover.difference(), *difference);
            }
        }
    }

    #[test]
    fn chain_sums_are_distinct_restricted_sums(
        a in proptest::sample::select(vec![31u64, 61, 127])
            .prop_flat_map(|p| {
                let m = PrimeModulus::new(p).unwrap();
                proptest::collection::btree_set(0..12u32, 2..8)
                    .prop_map(move |xs| ResidueSet::from_members(m, xs).unwrap())
            })
    ) {
        let k = a.cardinality();
        let (_, normalized) = cover_normalization(&a).unwrap();
        let chain = distinct_sum_chain(&a).unwrap();
        let restricted = restricted_sumset(&normalized).unwrap();
        prop_assert!(chain.iter().all(|&s| restricted.contains(s)));
        let mut sorted = chain.clone();
        sorted.sort_unstable();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), chain.len());
        let p = a.p() as usize;
        if diameter(&a).unwrap() as usize <= 2 * k - 3 && p + 5 >= 4 * k {
            prop_assert_eq!(chain.len(), 2 * k - 3);
        }
    }
}

/// Whenever both directions of the diameter bound hold, the two covers
/// can be chosen with one common difference.
#[test]
fn diameter_bound_both_ways_gives_common_difference() {
    for p in [5u64, 7, 11] {
        let m = PrimeModulus::new(p).unwrap();
        let all = 1u64 << p;
        for amask in (1..all).step_by(2) {
            let a = ResidueSet::from_mask(m, amask);
            for bmask in (1..all).step_by(2) {
                let b = ResidueSet::from_mask(m, bmask);
                if !(theorem_con(&a, &b).unwrap().holds() && theorem_con(&b, &a).unwrap().holds()) {
                    continue;
                }
                let v = hsz(&a, &b, HszVariant::Standard).unwrap();
                assert!(v.holds(), "{a} {b}");
            }
        }
    }
}
