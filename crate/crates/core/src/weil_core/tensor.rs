use super::algebra::WeilAlgebra;
use crate::exact_linear::unit_vector;
use crate::scalar::Scalar;

impl<S: Scalar> WeilAlgebra<S> {
    /// `A ⊗ B` on the disjoint union of the generators.
    ///
    /// Basis vector `(α, β)` is stored at index `α · dim B + β` and labelled by
    /// the concatenated monomial.
    pub fn tensor(&self, other: &Self) -> Self {
        let (da, db) = (self.dim(), other.dim());
        let d = da * db;
        let labels = self.labels().iter().flat_map(|a| other.labels().iter().map(move |b| a.concat(b))).collect();
        let ca = self.structure_constants();
        let cb = other.structure_constants();
        let mut constants = vec![vec![vec![S::zero(); d]; d]; d];
        for (i, row) in constants.iter_mut().enumerate() {
            let (a1, b1) = (i / db, i % db);
            for (j, out) in row.iter_mut().enumerate() {
                let (a2, b2) = (j / db, j % db);
                for (g, x) in ca[a1][a2].iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (h, y) in cb[b1][b2].iter().enumerate() {
                        if !y.is_zero() {
                            out[g * db + h] = x.clone() * y.clone();
                        }
                    }
                }
            }
        }
        let mut images: Vec<Vec<S>> = Vec::with_capacity(self.nvars() + other.nvars());
        for g in self.generator_images() {
            let mut v = vec![S::zero(); d];
            for (a, x) in g.iter().enumerate() {
                v[a * db] = x.clone();
            }
            images.push(v);
        }
        for g in other.generator_images() {
            let mut v = vec![S::zero(); d];
            v[..db].clone_from_slice(g);
            images.push(v);
        }
        debug_assert_eq!(unit_vector::<S>(d, 0), constants[0][0]);
        Self::assemble(self.nvars() + other.nvars(), labels, constants, images)
            .expect("tensor of Weil algebras is Weil")
    }

    /// Index of `e_α ⊗ e_β` in a tensor product with `other` on the right.
    pub fn pair_index(other: &Self, alpha: usize, beta: usize) -> usize {
        alpha * other.dim() + beta
    }
}
