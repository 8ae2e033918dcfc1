mod common;

use common::{poly, q, vector};
use proptest::prelude::*;
use weiljets::exact_linear::{invert, kernel, mat_mul, mat_vec, rank, solve, Subspace, UNBOUNDED};
use weiljets::{QSubspace, Rational};

const AMBIENT: usize = 5;

fn subspace() -> impl Strategy<Value = (Vec<Vec<Rational>>, QSubspace)> {
    proptest::collection::vec(vector(AMBIENT), 0..5).prop_map(|vs| {
        let s = Subspace::from_vectors(&vs, AMBIENT).unwrap();
        (vs, s)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grassmann_formula((_, u) in subspace(), (_, v) in subspace()) {
        let sum = u.sum(&v).unwrap();
        let meet = u.intersection(&v).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), u.dim() + v.dim());
        prop_assert!(sum.contains_subspace(&u).unwrap() && u.contains_subspace(&meet).unwrap());
    }

    #[test]
    fn canonical_basis_ignores_order((mut vs, u) in subspace(), seed in any::<u64>()) {
        let n = vs.len();
        if n > 1 {
            vs.rotate_left((seed as usize) % n);
            vs.swap(0, n - 1);
        }
        prop_assert_eq!(Subspace::from_vectors(&vs, AMBIENT).unwrap(), u);
    }

    #[test]
    fn annihilator_is_an_involution((_, u) in subspace()) {
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim() + u.dim(), AMBIENT);
        prop_assert_eq!(ann.annihilator(), u.clone());
        for w in ann.basis() {
            for v in u.basis() {
                let dot = w.iter().zip(v).fold(q(0), |acc, (a, b)| acc + a * b);
                prop_assert_eq!(dot, q(0));
            }
        }
    }

    #[test]
    fn solutions_and_kernel(rows in proptest::collection::vec(vector(4), 1..5), x in vector(4)) {
        let rhs = mat_vec(&rows, &x);
        let y = solve(&rows, &rhs, 4).expect("consistent system");
        prop_assert_eq!(mat_vec(&rows, &y), rhs);
        let k = kernel(&rows, 4);
        prop_assert_eq!(k.dim() + rank(&rows, 4), 4);
        for v in k.basis() {
            prop_assert!(mat_vec(&rows, v).iter().all(|c| *c == q(0)));
        }
    }

    #[test]
    fn inverse_when_full_rank(m in proptest::collection::vec(vector(3), 3)) {
        match invert(&m) {
            Some(inv) => {
                let id = mat_mul(&m, &inv);
                for (i, row) in id.iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        prop_assert_eq!(c.clone(), if i == j { q(1) } else { q(0) });
                    }
                }
            }
            None => prop_assert!(rank(&m, 3) < 3),
        }
    }

    #[test]
    fn truncated_ring_laws(f in poly(2, 0, 3), g in poly(2, 0, 3), h in poly(2, 0, 3)) {
        let b = 3;
        let fg = f.truncated_product(&g, b).unwrap();
        prop_assert_eq!(fg.clone(), g.truncated_product(&f, b).unwrap());
        let left = fg.truncated_product(&h, b).unwrap();
        let right = f.truncated_product(&g.truncated_product(&h, b).unwrap(), b).unwrap();
        prop_assert_eq!(left, right);
        let dist = f.truncated_product(&(&g + &h), b).unwrap();
        prop_assert_eq!(dist, &fg + &f.truncated_product(&h, b).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map(f in poly(2, 0, 3), g in poly(2, 0, 3), s1 in poly(2, 1, 2), s2 in poly(2, 1, 2)) {
        let images = [s1, s2];
        let b = 4;
        let sub = |p: &weiljets::QPoly| p.truncated_substitute(&images, b, true).unwrap();
        let fg = (&f * &g).retruncate(b);
        prop_assert_eq!(sub(&fg), sub(&f).truncated_product(&sub(&g), b).unwrap());
        prop_assert_eq!(sub(&(&f + &g)), &sub(&f) + &sub(&g));
    }

    #[test]
    fn leibniz_rule(f in poly(3, 0, 3), g in poly(3, 0, 3), var in 0usize..3) {
        let lhs = (&f * &g).partial_derivative(var);
        let rhs = &(&f.partial_derivative(var) * &g) + &(&f * &g.partial_derivative(var));
        prop_assert_eq!(lhs.retruncate(UNBOUNDED), rhs.retruncate(UNBOUNDED));
    }
}
