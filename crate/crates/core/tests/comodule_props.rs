use std::sync::Arc;

use hopf_join::classical::{enumerate_actions, fun_comodule, is_free, FiniteGSet, FiniteGroup};
use hopf_join::comodule::{
    balanced_tensor, canonical_map, check_comodule, check_strong_connection, coinvariants, is_principal,
    solve_strong_connection, translation_inverse, ComoduleAlgebra,
};
use proptest::prelude::*;

fn small_gset() -> impl Strategy<Value = FiniteGSet> {
    let groups = [
        Arc::new(FiniteGroup::cyclic(2)),
        Arc::new(FiniteGroup::cyclic(3)),
        Arc::new(FiniteGroup::cyclic(4)),
        Arc::new(FiniteGroup::cyclic(2).product(&FiniteGroup::cyclic(2))),
        Arc::new(FiniteGroup::symmetric(3)),
    ];
    (0..groups.len(), 1usize..=4, any::<prop::sample::Index>()).prop_map(move |(g, n, pick)| {
        let all = enumerate_actions(&groups[g], n);
        all[pick.index(all.len())].clone()
    })
}

struct Verdicts {
    comodule: bool,
    galois: bool,
    principal: bool,
    unital: bool,
    inverse: Option<bool>,
}

fn verdicts(pa: &ComoduleAlgebra) -> Verdicts {
    let b = coinvariants(pa).unwrap();
    let bt = balanced_tensor(pa, &b);
    let principal = is_principal(pa).unwrap();
    let inverse = principal
        .certificate
        .connection()
        .map(|ell| translation_inverse(pa, ell).unwrap().verdict());
    Verdicts {
        comodule: check_comodule(pa).passed(),
        galois: canonical_map(pa, &bt).unwrap().bijective,
        principal: principal.principal,
        unital: solve_strong_connection(pa, true).unwrap().is_feasible(),
        inverse,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn free_galois_principal_agree(a in small_gset()) {
        let pa = fun_comodule(&a);
        let v = verdicts(&pa);
        prop_assert!(v.comodule);
        prop_assert_eq!(is_free(&a), v.galois);
        prop_assert_eq!(v.galois, v.principal);
        // relaxing ℓ(1) = 1⊗1 cannot lose feasibility
        if v.unital {
            prop_assert!(v.principal);
        }
        if let Some(inv) = v.inverse {
            prop_assert!(inv);
        }
    }

    #[test]
    fn found_connections_split(a in small_gset()) {
        let pa = fun_comodule(&a);
        if let Some(ell) = solve_strong_connection(&pa, false).unwrap().connection() {
            let report = check_strong_connection(&pa, ell);
            prop_assert!(report.passed(), "{}", report);
            prop_assert!(report.get("m∘ℓ = ε").unwrap().passed);
        }
    }

    #[test]
    fn verdicts_survive_basis_permutation(
        (a, order) in small_gset().prop_flat_map(|a| {
            let n = a.len();
            (Just(a), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let pa = fun_comodule(&a);
        let shuffled = pa.permuted(&order);
        let (x, y) = (verdicts(&pa), verdicts(&shuffled));
        prop_assert_eq!(
            (x.comodule, x.galois, x.principal, x.unital, x.inverse),
            (y.comodule, y.galois, y.principal, y.unital, y.inverse)
        );
    }
}
