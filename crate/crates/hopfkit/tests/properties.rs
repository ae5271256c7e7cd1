//! Property tests for the algebraic invariants that hold on all inputs,
//! not just the desk examples: field axioms, kernel correctness, tensor
//! functoriality, the braid relation, and the symmetrizer oracle.

use hopfkit::bialgebra::group_algebra;
use hopfkit::matrix::{tensor_of_maps, Matrix};
use hopfkit::nichols::{
    diagonal_module, nichols_truncate, quantum_symmetrizer, symmetrizer_brute_force,
};
use hopfkit::yd::{braiding, check_yd};
use hopfkit::{Field, Scalar};
use proptest::prelude::*;
use std::sync::Arc;

fn rational() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| {
        Field::Rationals
            .parse(&format!("{n}/{d}"))
            .expect("valid rational")
    })
}

fn mod13() -> impl Strategy<Value = Scalar> {
    (0i64..13).prop_map(|n| Field::prime(13).unwrap().from_i64(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), Field::Rationals.zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Field::Rationals.one());
        }
    }

    #[test]
    fn mod_field_axioms(a in mod13(), b in mod13(), c in mod13()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Field::prime(13).unwrap().one());
        }
    }

    #[test]
    fn kernel_basis_annihilates_and_counts(
        entries in proptest::collection::vec(-5i64..=5, 12),
        rows in 1usize..=4,
    ) {
        let cols = 12 / rows;
        let used = rows * cols;
        let m = Matrix::from_i64(Field::Rationals, rows, cols, &entries[..used]);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), m.cols() - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
        if !kernel.is_empty() {
            let km = Matrix::from_rows(Field::Rationals, kernel.clone());
            prop_assert_eq!(km.rank(), kernel.len());
        }
    }

    #[test]
    fn kernel_basis_mod_p(entries in proptest::collection::vec(0i64..13, 9)) {
        let f13 = Field::prime(13).unwrap();
        let m = Matrix::from_i64(f13, 3, 3, &entries);
        let kernel = m.kernel_basis();
        prop_assert_eq!(kernel.len(), 3 - m.rank());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn tensor_rank_multiplicative(
        a in proptest::collection::vec(-3i64..=3, 6),
        b in proptest::collection::vec(-3i64..=3, 6),
    ) {
        let f = Matrix::from_i64(Field::Rationals, 2, 3, &a);
        let g = Matrix::from_i64(Field::Rationals, 3, 2, &b);
        let fg = tensor_of_maps(&f, &g).unwrap();
        prop_assert_eq!(fg.rank(), f.rank() * g.rank());
    }
}

/// Random diagonal module over k[Z/m] in F_13 with nontrivial-or-trivial
/// characters given by powers of a primitive m-th root of unity.
fn diagonal_strategy() -> impl Strategy<Value = (usize, Vec<usize>, Vec<usize>)> {
    // m in divisors of 12 so roots exist in F_13; up to 2 generators
    let orders = prop_oneof![Just(2usize), Just(3), Just(4), Just(6)];
    orders.prop_flat_map(|m| {
        let gens = 1usize..=2;
        gens.prop_flat_map(move |n| {
            (
                Just(m),
                proptest::collection::vec(0..m, n),
                proptest::collection::vec(0..m, n),
            )
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn braid_relation_and_symmetrizer_oracle((m, grades, chars) in diagonal_strategy()) {
        let f13 = Field::prime(13).unwrap();
        let root = hopfkit::primitive_root_of_unity(m as u64, f13).unwrap();
        let hopf = Arc::new(group_algebra(&[m], f13));
        let v = diagonal_module(
            hopf,
            &[m],
            &grades.iter().map(|&g| vec![g]).collect::<Vec<_>>(),
            &chars
                .iter()
                .map(|&e| vec![root.pow(e as i64).unwrap()])
                .collect::<Vec<_>>(),
            (0..grades.len()).map(|i| format!("v{i}")).collect(),
        )
        .unwrap();
        prop_assert!(check_yd(&v.module).ok());
        // braid relation on V (x) V (x) V
        let c = braiding(&v.module, &v.module).unwrap();
        let id = Matrix::identity(f13, v.module.dim());
        let c12 = tensor_of_maps(&c, &id).unwrap();
        let c23 = tensor_of_maps(&id, &c).unwrap();
        prop_assert_eq!(c12.mul(&c23).mul(&c12), c23.mul(&c12).mul(&c23));
        // the deterministic recursion equals the brute-force lift sum
        for d in 0..=3 {
            prop_assert_eq!(
                quantum_symmetrizer(&v.module, d).unwrap(),
                symmetrizer_brute_force(&v.module, d).unwrap()
            );
        }
    }

    #[test]
    fn truncation_dimensions_are_braiding_data((m, grades, chars) in diagonal_strategy()) {
        // B(V)(0) = k and B(V)(1) = V for every diagonal module
        let f13 = Field::prime(13).unwrap();
        let root = hopfkit::primitive_root_of_unity(m as u64, f13).unwrap();
        let hopf = Arc::new(group_algebra(&[m], f13));
        let v = diagonal_module(
            hopf,
            &[m],
            &grades.iter().map(|&g| vec![g]).collect::<Vec<_>>(),
            &chars
                .iter()
                .map(|&e| vec![root.pow(e as i64).unwrap()])
                .collect::<Vec<_>>(),
            (0..grades.len()).map(|i| format!("v{i}")).collect(),
        )
        .unwrap();
        let n = nichols_truncate(&v.module, 3, 512).unwrap();
        let dims = n.dims();
        prop_assert_eq!(dims[0], 1);
        prop_assert_eq!(dims[1], v.module.dim());
        // primitives concentrate in degree one
        prop_assert_eq!(n.primitives(1).len(), v.module.dim());
        for d in 2..=3 {
            prop_assert!(n.primitives(d).is_empty());
        }
    }
}
