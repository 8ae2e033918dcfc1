use super::algebra::WeilAlgebra;
use crate::error::{Error, Result};
use crate::exact_linear::{default_variable_names, solve, MultiIndex, Subspace, TruncatedPolynomial};
use crate::scalar::Scalar;

/// A unital algebra morphism `A → B`, fixed by the images of the generators of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraMorphism<S> {
    source: WeilAlgebra<S>,
    target: WeilAlgebra<S>,
    images: Vec<Vec<S>>,
    epimorphism: bool,
}

impl<S: Scalar> AlgebraMorphism<S> {
    /// Validates that every element of the defining ideal of `source` maps to zero.
    pub fn new(source: WeilAlgebra<S>, target: WeilAlgebra<S>, images: Vec<Vec<S>>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::VariableCountMismatch { expected: source.nvars(), found: images.len() });
        }
        if let Some(v) = images.iter().find(|v| v.len() != target.dim()) {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: v.len() });
        }
        let names = default_variable_names(source.nvars());
        for g in source.ideal_polynomials() {
            if target.eval(&g, &images).iter().any(|c| !c.is_zero()) {
                return Err(Error::NotWellDefined { witness: g.display_with(&names).to_string() });
            }
        }
        let epimorphism = spans_cotangent(&target, &images);
        Ok(AlgebraMorphism { source, target, images, epimorphism })
    }

    pub fn identity(algebra: &WeilAlgebra<S>) -> Self {
        let images = algebra.generator_images().to_vec();
        Self::new(algebra.clone(), algebra.clone(), images).expect("identity is well defined")
    }

    pub fn source(&self) -> &WeilAlgebra<S> {
        &self.source
    }

    pub fn target(&self) -> &WeilAlgebra<S> {
        &self.target
    }

    pub fn images(&self) -> &[Vec<S>] {
        &self.images
    }

    /// Whether the images span `m_B / m_B^2`, i.e. the morphism is onto.
    pub fn is_epimorphism(&self) -> bool {
        self.epimorphism
    }

    pub fn apply(&self, a: &[S]) -> Vec<S> {
        self.target.eval(&self.source.lift(a), &self.images)
    }

    /// Image of a polynomial in the generators of the source.
    pub fn apply_polynomial(&self, f: &TruncatedPolynomial<S>) -> Vec<S> {
        self.target.eval(f, &self.images)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if next.source != self.target {
            return Err(Error::AlgebraMismatch);
        }
        let images = self.images.iter().map(|v| next.apply(v)).collect();
        Self::new(self.source.clone(), next.target.clone(), images)
    }

    /// Linear matrix over the bases, rows by target coordinate.
    pub fn matrix(&self) -> Vec<Vec<S>> {
        let cols: Vec<Vec<S>> = (0..self.source.dim()).map(|a| self.apply(&self.source.unit(a))).collect();
        (0..self.target.dim()).map(|g| cols.iter().map(|c| c[g].clone()).collect()).collect()
    }
}

/// Whether the maximal-ideal parts of `elements` span `m / m^2`.
fn spans_cotangent<S: Scalar>(alg: &WeilAlgebra<S>, elements: &[Vec<S>]) -> bool {
    let mut acc = alg.max_ideal_power(2);
    for v in elements {
        let mut v = v.clone();
        v[0] = S::zero();
        acc.insert(v);
    }
    acc.dim() == alg.max_ideal_power(1).dim()
}

/// Polynomial `P` in the variables `vars` with `P(images) = target`, if any.
fn express<S: Scalar>(
    alg: &WeilAlgebra<S>,
    nvars: usize,
    vars: &[usize],
    images: &[Vec<S>],
    target: &[S],
) -> Option<TruncatedPolynomial<S>> {
    let window = crate::exact_linear::MonomialBasis::new(nvars, alg.order().max(1));
    let monos: Vec<&MultiIndex> = window
        .monomials()
        .iter()
        .filter(|m| m.degree() >= 1 && m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || vars.contains(&i)))
        .collect();
    let cols: Vec<Vec<S>> = monos
        .iter()
        .map(|m| alg.eval(&TruncatedPolynomial::monomial((*m).clone(), crate::exact_linear::UNBOUNDED), images))
        .collect();
    let rows: Vec<Vec<S>> = (0..alg.dim()).map(|g| cols.iter().map(|c| c[g].clone()).collect()).collect();
    let coeffs = solve(&rows, target, monos.len())?;
    Some(TruncatedPolynomial::from_terms(nvars, crate::exact_linear::UNBOUNDED, monos.into_iter().cloned().zip(coeffs)))
}

/// An automorphism `g` of `R_n^ℓ` with `β = α ∘ g`, for epimorphisms `α, β: R_n^ℓ → A`.
///
/// Picks generators `x^i, i ∈ I` whose `α`-images form a basis of `m_A/m_A^2`,
/// writes `β(x^j) = P_j(α(x^I))` and `α(x^k) = R_k(α(x^I))`, and sets
/// `g(x^j) = P_j(x^I)` plus, for the `j` outside a maximal independent set of
/// linear parts, a kernel element `x^k − R_k(x^I)` with `k ∉ I` that makes the
/// linear part invertible.
pub fn factor_epimorphism<S: Scalar>(
    alpha: &AlgebraMorphism<S>,
    beta: &AlgebraMorphism<S>,
) -> Result<AlgebraMorphism<S>> {
    if alpha.source != beta.source || alpha.target != beta.target {
        return Err(Error::AlgebraMismatch);
    }
    if !alpha.is_epimorphism() || !beta.is_epimorphism() {
        return Err(Error::NotEpimorphism);
    }
    let source = &alpha.source;
    let n = source.nvars();
    if !source.is_classical() || source.width() != n {
        return Err(Error::InvalidAlgebra("source must be a truncated polynomial algebra R_n^l".into()));
    }
    let a = &alpha.target;

    let mut acc = a.max_ideal_power(2);
    let chosen: Vec<usize> = (0..n).filter(|&i| acc.insert(alpha.images[i].clone())).collect();
    let rest: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
    let pick = |target: &[S]| {
        express(a, n, &chosen, &alpha.images, target).ok_or_else(|| Error::Internal("generators do not span".into()))
    };

    let p: Vec<TruncatedPolynomial<S>> = beta.images.iter().map(|t| pick(t)).collect::<Result<_>>()?;
    let linear =
        |f: &TruncatedPolynomial<S>| -> Vec<S> { (0..n).map(|i| f.coeff(&MultiIndex::variable(n, i))).collect() };
    let mut lin_acc = Subspace::zero(n);
    let spanning: Vec<usize> = (0..n).filter(|&j| lin_acc.insert(linear(&p[j]))).collect();
    let others: Vec<usize> = (0..n).filter(|j| !spanning.contains(j)).collect();
    if others.len() != rest.len() {
        return Err(Error::Internal("rank of linear parts differs from the width".into()));
    }
    let mut g = p;
    for (&j, &k) in others.iter().zip(&rest) {
        let r = pick(&alpha.images[k])?;
        let x = TruncatedPolynomial::variable(n, crate::exact_linear::UNBOUNDED, k);
        g[j] = &(&g[j] + &x) - &r;
    }
    let images = g.iter().map(|f| source.class_of(f)).collect();
    let g = AlgebraMorphism::new(source.clone(), source.clone(), images)?;
    if !g.is_epimorphism() {
        return Err(Error::Internal("factor has a singular linear part".into()));
    }
    if g.then(alpha)?.images != beta.images {
        return Err(Error::Internal("factorization check failed".into()));
    }
    Ok(g)
}

/// Outcome of testing whether an ideal `I ⊆ A` is preserved by symmetries of `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct StabilityReport<S> {
    /// `δ(I) ⊆ I` for every derivation of `A`.
    pub der_stable: bool,
    /// Index of a basis derivation moving `I`, when one exists.
    pub witness: Option<usize>,
    /// For each supplied automorphism, whether `g(I) = I`.
    pub automorphisms: Vec<bool>,
    /// `A / I`, present when the ideal is derivation stable.
    pub quotient: Option<WeilAlgebra<S>>,
    /// Generator-image tuples of the projected basis derivations on `A / I`.
    pub projected_derivations: Vec<Vec<S>>,
    pub note: &'static str,
}

pub const CONNECTEDNESS_NOTE: &str = "derivation stability is the infinitesimal test and only covers the identity component of Aut A; explicit automorphisms are reported separately";

/// Derivation and automorphism stability of an ideal `I` of `A`.
pub fn ideal_stability<S: Scalar>(
    algebra: &WeilAlgebra<S>,
    ideal: &Subspace<S>,
    automorphisms: &[AlgebraMorphism<S>],
) -> Result<StabilityReport<S>> {
    if !algebra.is_ideal(ideal) {
        return Err(Error::NotAnIdeal);
    }
    let der = algebra.derivations();
    let witness = der.basis().iter().position(|v| ideal.basis().iter().any(|b| !ideal.contains(&der.apply(v, b))));
    let mut autos = Vec::with_capacity(automorphisms.len());
    for g in automorphisms {
        if g.source() != algebra || g.target() != algebra {
            return Err(Error::AlgebraMismatch);
        }
        let image = ideal.image(algebra.dim(), |v| g.apply(v));
        autos.push(image == *ideal);
    }
    let (quotient, projected) = if witness.is_none() {
        let q = algebra.quotient_by(ideal)?;
        let proj = AlgebraMorphism::new(algebra.clone(), q.clone(), q.generator_images().to_vec())?;
        let d = algebra.dim();
        let projected: Vec<Vec<S>> = der
            .basis()
            .iter()
            .map(|v| (0..algebra.nvars()).flat_map(|i| proj.apply(&v[i * d..(i + 1) * d])).collect())
            .collect();
        let qder = q.derivations();
        if projected.iter().any(|v| !qder.contains(v)) {
            return Err(Error::Internal("projected map is not a derivation".into()));
        }
        (Some(q), projected)
    } else {
        (None, Vec::new())
    };
    Ok(StabilityReport {
        der_stable: witness.is_none(),
        witness,
        automorphisms: autos,
        quotient,
        projected_derivations: projected,
        note: CONNECTEDNESS_NOTE,
    })
}
