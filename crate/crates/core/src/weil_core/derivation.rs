use super::algebra::WeilAlgebra;
use crate::exact_linear::{kernel, Subspace};
use crate::scalar::Scalar;

/// `Der(A, A)`, stored through the images of the generators.
///
/// A derivation `δ` is determined by the tuple `(δ[x^1], …, δ[x^n]) ∈ A^n`;
/// the space is the set of tuples with `Σ_i [∂_i g] δ[x^i] = 0` for every
/// element `g` of the defining ideal. Tuples are laid out variable-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationSpace<S> {
    algebra: WeilAlgebra<S>,
    space: Subspace<S>,
}

impl<S: Scalar> WeilAlgebra<S> {
    /// Rows of the linear system `Σ_i [∂_i g] v_i = 0` over the ideal basis.
    fn leibniz_rows(&self) -> Vec<Vec<S>> {
        let n = self.nvars();
        let d = self.dim();
        let mut rows = Vec::new();
        for g in self.ideal_polynomials() {
            let mats: Vec<Vec<Vec<S>>> =
                (0..n).map(|i| self.multiplication_matrix(&self.class_of(&g.partial_derivative(i)))).collect();
            for gamma in 0..d {
                let row: Vec<S> = (0..n).flat_map(|i| mats[i][gamma].iter().cloned()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    pub fn derivations(&self) -> DerivationSpace<S> {
        let space = kernel(&self.leibniz_rows(), self.nvars() * self.dim());
        DerivationSpace { algebra: self.clone(), space }
    }
}

impl<S: Scalar> DerivationSpace<S> {
    pub fn algebra(&self) -> &WeilAlgebra<S> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Canonical basis of generator-image tuples.
    pub fn basis(&self) -> &[Vec<S>] {
        self.space.basis()
    }

    pub fn as_subspace(&self) -> &Subspace<S> {
        &self.space
    }

    pub fn contains(&self, images: &[S]) -> bool {
        self.space.contains(images)
    }

    /// Image of `a` under the derivation with generator images `images`.
    pub fn apply(&self, images: &[S], a: &[S]) -> Vec<S> {
        let alg = &self.algebra;
        let d = alg.dim();
        let mut out = alg.zero();
        for (label, c) in alg.labels().iter().zip(a) {
            if c.is_zero() {
                continue;
            }
            for i in 0..alg.nvars() {
                let Some(lower) = label.lower(i) else { continue };
                let e = S::from_int(label.exponents()[i] as i64);
                let coeff = alg.monomial_class(&lower);
                let term = alg.mul(&coeff, &images[i * d..(i + 1) * d]);
                out = alg.add(&out, &alg.scale(&(c.clone() * e), &term));
            }
        }
        out
    }

    /// Matrix of the derivation over the algebra basis, rows by output coordinate.
    pub fn matrix(&self, images: &[S]) -> Vec<Vec<S>> {
        let d = self.algebra.dim();
        let cols: Vec<Vec<S>> = (0..d).map(|a| self.apply(images, &self.algebra.unit(a))).collect();
        (0..d).map(|g| cols.iter().map(|c| c[g].clone()).collect()).collect()
    }

    /// Generator images of `[δ_u, δ_v]`.
    pub fn commutator(&self, u: &[S], v: &[S]) -> Vec<S> {
        let d = self.algebra.dim();
        (0..self.algebra.nvars())
            .flat_map(|i| {
                let a = self.apply(u, &v[i * d..(i + 1) * d]);
                let b = self.apply(v, &u[i * d..(i + 1) * d]);
                self.algebra.sub(&a, &b)
            })
            .collect()
    }
}
