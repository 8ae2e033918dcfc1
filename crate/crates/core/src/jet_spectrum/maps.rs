use super::jet::Jet;
use crate::error::{Error, Result};
use crate::exact_linear::{kernel, MonomialBasis, Subspace, TruncatedPolynomial, UNBOUNDED};
use crate::scalar::Scalar;

type Poly<S> = TruncatedPolynomial<S>;

fn check_map<S: Scalar>(p: &Jet<S>, map: &[Poly<S>]) -> Result<()> {
    match map.iter().find(|f| f.nvars() != p.nvars()) {
        Some(f) => Err(Error::VariableCountMismatch { expected: p.nvars(), found: f.nvars() }),
        None => Ok(()),
    }
}

/// `φ(base)` and the centered components `φ(x + base) − φ(base)`.
fn centered_map<S: Scalar>(p: &Jet<S>, map: &[Poly<S>]) -> (Vec<S>, Vec<Poly<S>>) {
    let image: Vec<S> = map.iter().map(|f| f.evaluate(p.base_point())).collect();
    let centered = map
        .iter()
        .zip(&image)
        .map(|(f, q)| {
            let g = p.center(&f.retruncate(UNBOUNDED));
            &g - &Poly::constant(g.nvars(), UNBOUNDED, q.clone())
        })
        .collect();
    (image, centered)
}

/// `φ(p) = {g : g ∘ φ ∈ p}`, for a polynomial map given in original coordinates.
pub fn pushforward<S: Scalar>(p: &Jet<S>, map: &[Poly<S>]) -> Result<Jet<S>> {
    check_map(p, map)?;
    let (point, centered) = centered_map(p, map);
    let a = p.algebra();
    let classes: Vec<Vec<S>> = centered.iter().map(|f| a.class_of(f)).collect();
    let order = p.order();
    let target = MonomialBasis::new(map.len(), order + 1);
    let columns: Vec<Vec<S>> =
        target.monomials().iter().map(|m| a.eval(&Poly::monomial(m.clone(), UNBOUNDED), &classes)).collect();
    let rows: Vec<Vec<S>> = (0..a.dim()).map(|g| columns.iter().map(|c| c[g].clone()).collect()).collect();
    let gens: Vec<Poly<S>> =
        kernel(&rows, target.len()).basis().iter().map(|v| Poly::from_dense(&target, v, order)).collect();
    Jet::from_centered(map.len(), point, &gens, order)
}

/// Smallest subspace of `A` containing `1` and `gens`, closed under products.
pub(crate) fn subalgebra<S: Scalar>(a: &crate::weil_core::WeilAlgebra<S>, gens: &[Vec<S>]) -> Subspace<S> {
    let mut span = Subspace::zero(a.dim());
    span.insert(a.one());
    let mut frontier = vec![a.one()];
    while let Some(v) = frontier.pop() {
        for g in gens {
            let w = a.mul(&v, g);
            if span.insert(w.clone()) {
                frontier.push(w);
            }
        }
    }
    span
}

/// Tangent map of `φ` at `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentMap<S> {
    /// `φ(p)`.
    pub target: Jet<S>,
    /// `D φ*B ⊆ φ*B + p` for every field `D`.
    pub exists: bool,
    /// `φ*B + p` is all of `C∞(M)`.
    pub regular: bool,
    /// Matrix from `A^n` to `B^N` (rows indexed by output coordinate), when the map exists.
    pub matrix: Option<Vec<Vec<S>>>,
}

impl<S: Scalar> TangentMap<S> {
    pub fn apply(&self, v: &[S]) -> Option<Vec<S>> {
        self.matrix.as_ref().map(|m| crate::exact_linear::mat_vec(m, v))
    }
}

pub fn tangent_map<S: Scalar>(p: &Jet<S>, map: &[Poly<S>]) -> Result<TangentMap<S>> {
    let target = pushforward(p, map)?;
    let (_, centered) = centered_map(p, map);
    let a = p.algebra();
    let d = a.dim();
    let n = p.nvars();
    let images: Vec<Vec<S>> = centered.iter().map(|f| a.class_of(f)).collect();
    let sub = subalgebra(a, &images);
    let regular = sub.dim() == d;

    // Since φ*B + p is a subalgebra, it is enough to test `a ∂_i φ^j` for a basis of A.
    let partials: Vec<Vec<Vec<S>>> =
        centered.iter().map(|f| (0..n).map(|i| a.class_of(&f.partial_derivative(i))).collect()).collect();
    let exists = partials.iter().flatten().all(|g| (0..d).all(|b| sub.contains(&a.mul(g, &a.unit(b)))));
    if !exists {
        return Ok(TangentMap { target, exists, regular, matrix: None });
    }

    // ι: B → A, e_β ↦ [label_β ∘ φ]; injective because φ(p) is the kernel.
    let b = target.algebra();
    let e = b.dim();
    let iota: Vec<Vec<S>> = b.labels().iter().map(|m| a.eval(&Poly::monomial(m.clone(), UNBOUNDED), &images)).collect();
    let iota_rows: Vec<Vec<S>> = (0..d).map(|g| iota.iter().map(|c| c[g].clone()).collect()).collect();
    let mut matrix = vec![vec![S::zero(); n * d]; map.len() * e];
    for (j, grads) in partials.iter().enumerate() {
        for (i, g) in grads.iter().enumerate() {
            for beta in 0..d {
                let w = a.mul(g, &a.unit(beta));
                let coords = crate::exact_linear::solve(&iota_rows, &w, e)
                    .ok_or_else(|| Error::Internal("tangent value outside the image subalgebra".into()))?;
                for (k, c) in coords.into_iter().enumerate() {
                    let entry = &mut matrix[j * e + k][i * d + beta];
                    *entry = entry.clone() + c;
                }
            }
        }
    }
    let relations = a.derivations();
    let target_relations = b.derivations();
    for v in relations.basis() {
        if !target_relations.contains(&crate::exact_linear::mat_vec(&matrix, v)) {
            return Err(Error::Internal("tangent map does not respect the relations".into()));
        }
    }
    Ok(TangentMap { target, exists, regular, matrix: Some(matrix) })
}

/// `ψ ∘ φ` for polynomial maps.
pub fn compose_maps<S: Scalar>(outer: &[Poly<S>], inner: &[Poly<S>]) -> Result<Vec<Poly<S>>> {
    outer.iter().map(|f| f.retruncate(UNBOUNDED).truncated_substitute(inner, UNBOUNDED, false)).collect()
}
