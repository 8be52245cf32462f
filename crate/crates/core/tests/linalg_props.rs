use hopf_join::linalg::{format_scalar, parse_scalar, ratio, LinearMap, Scalar, Space, SparseVec, Subspace};
use hopf_join::Exec;
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        3 => Just(ratio(0, 1)),
        2 => (-3i64..=3).prop_map(|n| ratio(n, 1)),
        1 => (-5i64..=5, 1i64..=4).prop_map(|(n, d)| ratio(n, d)),
    ]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = LinearMap> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(scalar(), c), r)
            .prop_map(move |rows| LinearMap::from_dense(Space::indexed("u", c), Space::indexed("v", r), &rows).unwrap())
    })
}

fn vector(dim: usize) -> impl Strategy<Value = SparseVec> {
    prop::collection::vec(scalar(), dim).prop_map(|v| SparseVec::from_dense(&v))
}

proptest! {
    #[test]
    fn rank_nullity(f in matrix(6, 6)) {
        let k = f.kernel();
        prop_assert_eq!(f.rank() + k.dim(), f.cols());
        prop_assert_eq!(f.image().dim(), f.rank());
        for v in k.basis() {
            prop_assert!(f.apply(v).is_zero());
        }
    }

    #[test]
    fn kron_acts_on_pure_tensors(f in matrix(3, 3), g in matrix(3, 3), seed in any::<u64>()) {
        let v = SparseVec::unit(seed as usize % f.cols());
        let w = SparseVec::unit((seed >> 8) as usize % g.cols());
        let lhs = f.kron(&g).apply(&v.tensor(&w, g.cols()));
        let rhs = f.apply(&v).tensor(&g.apply(&w), g.rows());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn preimage_of_image_is_everything(f in matrix(5, 5)) {
        let pre = f.preimage(&f.image()).unwrap();
        prop_assert_eq!(pre, Subspace::full(f.source()));
    }

    #[test]
    fn intersection_commutative_and_idempotent(h in matrix(5, 8), split in 1usize..8) {
        // images of two column blocks of one matrix live in the same space
        let split = split.min(h.cols());
        let (a, b) = (Subspace::span(h.target(), &h.columns()[..split]), Subspace::span(h.target(), &h.columns()[split..]));
        let ab = a.intersection(&b).unwrap();
        prop_assert_eq!(&ab, &b.intersection(&a).unwrap());
        prop_assert_eq!(&a.intersection(&a).unwrap(), &a);
        prop_assert!(a.contains_subspace(&ab) && b.contains_subspace(&ab));
        // dim(A ∩ B) + dim(A + B) = dim A + dim B
        prop_assert_eq!(ab.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
    }

    #[test]
    fn particular_solution_solves_or_certifies(f in matrix(6, 6), seed in any::<u64>()) {
        let y = SparseVec::from_pairs(vec![(seed as usize % f.rows(), ratio(1, 1))]);
        let seq = f.solve_particular_with(Exec::Sequential, &y).unwrap();
        let par = f.solve_particular_with(Exec::Parallel, &y).unwrap();
        prop_assert_eq!(&seq, &par);
        match seq {
            Some(x) => prop_assert_eq!(f.apply(&x), y),
            None => prop_assert!(!f.image().contains(&y)),
        }
    }

    #[test]
    fn image_contains_every_value(f in matrix(4, 4), v in vector(4)) {
        let v = SparseVec::from_pairs(v.iter().filter(|(i, _)| *i < f.cols()).map(|(i, x)| (i, x.clone())).collect());
        prop_assert!(f.image().contains(&f.apply(&v)));
    }

    #[test]
    fn scalars_print_in_lowest_terms(n in -50i64..50, d in 1i64..50) {
        let x = ratio(n, d);
        let text = format_scalar(&x);
        prop_assert_eq!(parse_scalar(&text).unwrap(), x.clone());
        if let Some((p, q)) = text.split_once('/') {
            let (p, q): (i64, i64) = (p.parse().unwrap(), q.parse().unwrap());
            prop_assert!(q > 1);
            prop_assert_eq!(num_gcd(p.abs(), q), 1);
        }
    }
}

fn num_gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
