use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coxbrauer::arith::pow_mod;
use coxbrauer::brauer_tree::{
    build_hlm_tree_with, check_unitriangular, decomposition_matrix, default_ell, from_json, height, to_json, Branch,
    Ordering, PlanarBrauerTree, SeriesDatum,
};
use coxbrauer::ell_arith::{hensel_root, TruncatedPadic};
use coxbrauer::homotopy::{cohomology, euler_character, homotopy_hom_all, rickard_complex, trim, CharacterVector};
use coxbrauer::selftest::{ext_matches_successors, random_padding};
use coxbrauer::tree_algebra::TreeAlgebra;

fn tree_strategy() -> impl Strategy<Value = PlanarBrauerTree> {
    (1u64..=6, any::<u64>(), 0u64..=3, 1u64..=3).prop_map(|(h0, cuts, r, mu)| {
        let mut bounds = vec![0];
        bounds.extend((1..h0).filter(|k| cuts >> k & 1 == 1));
        bounds.push(h0);
        let branches =
            bounds.windows(2).enumerate().map(|(i, w)| Branch { zeta: i as i64, m: w[0], big_m: w[1] - 1 }).collect();
        build_hlm_tree_with(&SeriesDatum { h0, branches }, r, mu).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hensel_tower(ell in prop::sample::select(vec![7u64, 13, 19, 31, 37]), seed in 1u64..7, k in 0i128..10_000, n in 1u32..5) {
        let e = 6;
        let a = pow_mod(seed, e, ell) as i128 + ell as i128 * k;
        let lo = hensel_root(TruncatedPadic::new(a, ell, n).unwrap(), e, seed).unwrap();
        let hi = hensel_root(TruncatedPadic::new(a, ell, n + 1).unwrap(), e, seed).unwrap();
        prop_assert_eq!(hi.truncate(n), lo);
        prop_assert_eq!(hi.pow(e), TruncatedPadic::new(a, ell, n + 1).unwrap());
    }

    #[test]
    fn json_round_trip(t in tree_strategy()) {
        prop_assert_eq!(from_json(&to_json(&t)).unwrap(), t);
    }

    #[test]
    fn decomposition_columns(t in tree_strategy()) {
        let d = decomposition_matrix(&t);
        for e in 0..t.n_edges() {
            let total: u64 = d.collapsed().iter().map(|r| r[e]).sum();
            prop_assert_eq!(total, 2);
        }
        prop_assert!(check_unitriangular(&t, &d, &Ordering::Height).unwrap().ok);
    }

    #[test]
    fn algebra_invariants(t in tree_strategy()) {
        let alg = TreeAlgebra::from_tree(&t, default_ell(&t)).unwrap();
        prop_assert_eq!(alg.dim(), TreeAlgebra::dim_formula(&t));
        prop_assert!(ext_matches_successors(&alg));
        let c = coxbrauer::brauer_tree::cartan_matrix(&decomposition_matrix(&t));
        prop_assert_eq!(alg.hom_matrix(), c);
    }

    #[test]
    fn rickard_invariants(t in tree_strategy()) {
        let alg = TreeAlgebra::from_tree(&t, default_ell(&t)).unwrap();
        for j in 0..t.n_edges() {
            let cx = rickard_complex(&alg, j).unwrap();
            prop_assert!(cx.check_d2(&alg));
            prop_assert_eq!(cx.hi() - cx.lo, height(&t, j) as i64);
            let coh = cohomology(&alg, &cx);
            for (deg, dims) in &coh {
                if *deg != cx.lo && *deg != cx.hi() {
                    prop_assert!(dims.iter().all(|&x| x == 0));
                }
            }
            let sign = if t.offset(j) % 2 == 0 { 1 } else { -1 };
            let expect = CharacterVector::chi(&t, t.exceptional(), 1).add(&CharacterVector::chi(&t, j, sign));
            prop_assert_eq!(euler_character(&t, &cx), expect);
        }
    }

    #[test]
    fn trim_preserves_homs(t in tree_strategy(), seed in any::<u64>()) {
        let alg = TreeAlgebra::from_tree(&t, default_ell(&t)).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let j = (seed % t.n_edges() as u64) as usize;
        let cx = rickard_complex(&alg, j).unwrap();
        let padded = random_padding(&alg, &cx, &mut rng);
        let trimmed = trim(&alg, &padded, cx.lo, cx.hi()).unwrap();
        prop_assert_eq!(&trimmed.terms, &cx.terms);
        let nz = |m: std::collections::BTreeMap<i64, usize>| m.into_iter().filter(|x| x.1 != 0).collect::<Vec<_>>();
        prop_assert_eq!(nz(homotopy_hom_all(&alg, &padded, &cx)), nz(homotopy_hom_all(&alg, &cx, &cx)));
    }
}
