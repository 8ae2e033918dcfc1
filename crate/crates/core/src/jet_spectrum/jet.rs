use crate::error::{Error, Result};
use crate::exact_linear::{binomial, combine, kernel, MonomialBasis, Subspace, TruncatedPolynomial, UNBOUNDED};
use crate::scalar::Scalar;
use crate::weil_core::WeilAlgebra;

/// A jet at a point of `R^n`: an ideal `p` of the local ring containing
/// `m^(ℓ+1)` and no unit.
///
/// The ideal is stored translated to the origin, as the defining ideal of its
/// quotient algebra in the window `ℓ + 1`. Polynomials passed to and returned
/// from jet methods are in these centered coordinates unless a method says
/// otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S> {
    nvars: usize,
    base: Vec<S>,
    algebra: WeilAlgebra<S>,
}

impl<S: Scalar> Jet<S> {
    /// `(generators) + m^(bound+1)` for generators already centered at `base`.
    pub fn from_centered(
        nvars: usize,
        base: Vec<S>,
        generators: &[TruncatedPolynomial<S>],
        bound: u32,
    ) -> Result<Self> {
        if base.len() != nvars {
            return Err(Error::DimensionMismatch { expected: nvars, found: base.len() });
        }
        let algebra = WeilAlgebra::quotient(nvars, generators, bound)?;
        Ok(Jet { nvars, base, algebra })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn base_point(&self) -> &[S] {
        &self.base
    }

    /// Quotient algebra `A = O / p`.
    pub fn algebra(&self) -> &WeilAlgebra<S> {
        &self.algebra
    }

    pub fn order(&self) -> u32 {
        self.algebra.order()
    }

    pub fn width(&self) -> usize {
        self.algebra.width()
    }

    pub fn window(&self) -> u32 {
        self.algebra.window()
    }

    /// `dim A`, the codimension of `p`.
    pub fn quotient_dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Dimension of `R_m^ℓ` for the width and order of this jet.
    pub fn classical_dim(&self) -> usize {
        binomial(self.width() as u64 + self.order() as u64, self.order() as u64) as usize
    }

    /// Whether the quotient is `R_m^ℓ`, i.e. `p` is the jet of an `m`-dimensional submanifold.
    pub fn is_classical(&self) -> bool {
        self.algebra.is_classical()
    }

    pub fn ideal(&self) -> &Subspace<S> {
        self.algebra.ideal()
    }

    /// Canonical basis of the ideal in the window `ℓ + 1`.
    pub fn generators(&self) -> Vec<TruncatedPolynomial<S>> {
        self.algebra.ideal_polynomials()
    }

    /// Ideal generators that are not redundant modulo the variables times the ideal.
    pub fn minimal_generators(&self) -> Vec<TruncatedPolynomial<S>> {
        let basis = self.algebra.window_basis();
        let w = self.window();
        let ideal = self.ideal();
        let mut smaller = Subspace::zero(basis.len());
        for f in self.generators() {
            for i in 0..self.nvars {
                let x = TruncatedPolynomial::variable(self.nvars, w, i);
                smaller.insert(f.truncated_product(&x, w).expect("same arity").to_dense(basis));
            }
        }
        ideal.complement_basis(&smaller).iter().map(|v| TruncatedPolynomial::from_dense(basis, v, w)).collect()
    }

    /// `f(x + base)`: from original to centered coordinates.
    pub fn center(&self, f: &TruncatedPolynomial<S>) -> TruncatedPolynomial<S> {
        f.translate(&self.base)
    }

    /// `f(x − base)`: from centered to original coordinates.
    pub fn uncenter(&self, f: &TruncatedPolynomial<S>) -> TruncatedPolynomial<S> {
        let shift: Vec<S> = self.base.iter().map(|c| -c.clone()).collect();
        f.retruncate(UNBOUNDED).translate(&shift)
    }

    /// Whether a centered polynomial lies in `p`.
    pub fn contains(&self, f: &TruncatedPolynomial<S>) -> bool {
        self.algebra.kills(f)
    }

    /// `other ⊆ self` as ideals at the same point.
    pub fn contains_jet(&self, other: &Self) -> bool {
        self.base == other.base && other.generators().iter().all(|f| self.contains(f))
    }

    /// `p` read in the window `W`, as `(basis of R_n^W, ideal subspace)`.
    pub fn ideal_in_window(&self, window: u32) -> (MonomialBasis, Subspace<S>) {
        let basis = MonomialBasis::new(self.nvars, window);
        let mut vectors: Vec<Vec<S>> =
            self.generators().iter().map(|f| f.retruncate(window).to_dense(&basis)).collect();
        for d in self.window() + 1..=window {
            vectors.extend(basis.degree_range(d).map(|k| crate::exact_linear::unit_vector(basis.len(), k)));
        }
        let ideal = Subspace::span(vectors, basis.len());
        (basis, ideal)
    }

    /// Jet generated by centered polynomials at the same base point.
    pub(crate) fn sibling(&self, generators: &[TruncatedPolynomial<S>], bound: u32) -> Result<Self> {
        Self::from_centered(self.nvars, self.base.clone(), generators, bound)
    }

    /// Class `[f] ∈ A^n` of each coefficient of a field `Σ a^i ∂_i`.
    pub fn field_value(&self, coefficients: &[TruncatedPolynomial<S>]) -> Vec<S> {
        assert_eq!(coefficients.len(), self.nvars, "one coefficient per variable");
        coefficients.iter().flat_map(|a| self.algebra.class_of(a)).collect()
    }

    /// `([∂_1 f], …, [∂_n f])` in `A^n`.
    pub(crate) fn gradient_classes(&self, f: &TruncatedPolynomial<S>) -> Vec<Vec<S>> {
        (0..self.nvars).map(|i| self.algebra.class_of(&f.partial_derivative(i))).collect()
    }
}

/// `(generators) + m^(hint+1)` at `base_point`, generators in original coordinates.
pub fn jet_from_ideal<S: Scalar>(
    nvars: usize,
    base_point: &[S],
    generators: &[TruncatedPolynomial<S>],
    max_order_hint: u32,
) -> Result<Jet<S>> {
    if base_point.len() != nvars {
        return Err(Error::DimensionMismatch { expected: nvars, found: base_point.len() });
    }
    let mut centered = Vec::with_capacity(generators.len());
    for (index, g) in generators.iter().enumerate() {
        if g.nvars() != nvars {
            return Err(Error::VariableCountMismatch { expected: nvars, found: g.nvars() });
        }
        let c = g.retruncate(UNBOUNDED).translate(base_point);
        if !c.constant_term().is_zero() {
            return Err(Error::GeneratorNotVanishing { index });
        }
        let degree = c.degree().unwrap_or(0);
        if degree > max_order_hint + 1 {
            return Err(Error::HintTooSmall { index, degree, window: max_order_hint + 1 });
        }
        centered.push(c);
    }
    Jet::from_centered(nvars, base_point.to_vec(), &centered, max_order_hint)
}

/// The `ℓ`-jet of the graph `y^j = f^j(x)` at `base_point`.
///
/// Each entry of `graph` is `(j, f^j)`: the graph variable and a polynomial in
/// the remaining variables, in original coordinates.
pub fn classical_jet<S: Scalar>(
    nvars: usize,
    base_point: &[S],
    graph: &[(usize, TruncatedPolynomial<S>)],
    order: u32,
) -> Result<Jet<S>> {
    if base_point.len() != nvars {
        return Err(Error::DimensionMismatch { expected: nvars, found: base_point.len() });
    }
    let ys: Vec<usize> = graph.iter().map(|(j, _)| *j).collect();
    for (k, (j, f)) in graph.iter().enumerate() {
        if *j >= nvars || ys[..k].contains(j) {
            return Err(Error::InvalidGraph(format!("graph variable {j} is out of range or repeated")));
        }
        if f.nvars() != nvars {
            return Err(Error::VariableCountMismatch { expected: nvars, found: f.nvars() });
        }
        if f.terms().any(|(m, _)| ys.iter().any(|&y| m.exponents()[y] > 0)) {
            return Err(Error::InvalidGraph(format!("graph function {k} depends on a graph variable")));
        }
    }
    let mut centered = Vec::with_capacity(graph.len());
    for (index, (j, f)) in graph.iter().enumerate() {
        let y = TruncatedPolynomial::variable(nvars, UNBOUNDED, *j);
        let g = (&y - &f.retruncate(UNBOUNDED)).translate(base_point);
        if !g.constant_term().is_zero() {
            return Err(Error::GeneratorNotVanishing { index });
        }
        centered.push(g.retruncate(order));
    }
    let jet = Jet::from_centered(nvars, base_point.to_vec(), &centered, order)?;
    let m = nvars - graph.len();
    let expected_width = if order == 0 { 0 } else { m };
    let expected_dim = binomial((m as u64) + order as u64, order as u64) as usize;
    let expected_order = if m == 0 { 0 } else { order };
    if jet.quotient_dim() != expected_dim || jet.width() != expected_width || jet.order() != expected_order {
        return Err(Error::Internal("classicality check failed for a graph jet".into()));
    }
    Ok(jet)
}

/// `p̂ = {f ∈ p : ∂_i f ∈ p for all i}`, computed in the window `ℓ + 2`.
pub fn hat_ideal<S: Scalar>(p: &Jet<S>) -> Result<Jet<S>> {
    let n = p.nvars();
    let window = p.window() + 1;
    let (basis, ideal) = p.ideal_in_window(window);
    let rows: Vec<TruncatedPolynomial<S>> =
        ideal.basis().iter().map(|v| TruncatedPolynomial::from_dense(&basis, v, window)).collect();
    let d = p.quotient_dim();
    let columns: Vec<Vec<S>> = rows.iter().map(|f| p.gradient_classes(f).concat()).collect();
    let matrix: Vec<Vec<S>> = (0..n * d).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let coeffs = kernel(&matrix, rows.len());
    let hat: Vec<TruncatedPolynomial<S>> = coeffs
        .basis()
        .iter()
        .map(|c| TruncatedPolynomial::from_dense(&basis, &combine(ideal.basis(), c, basis.len()), window))
        .collect();
    let jet = p.sibling(&hat, window)?;
    if !p.contains_jet(&jet) {
        return Err(Error::Internal("hat ideal is not inside p".into()));
    }
    for (i, f) in rows.iter().enumerate() {
        for g in &rows[i..] {
            if !jet.contains(&f.truncated_product(g, window).expect("same arity")) {
                return Err(Error::Internal("p^2 is not inside the hat ideal".into()));
            }
        }
    }
    Ok(jet)
}

/// `T_pM = A^n / Der(A, A)`, with tangent vectors kept as tuples in `A^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentModule<S> {
    jet: Jet<S>,
    relations: Subspace<S>,
}

impl<S: Scalar> TangentModule<S> {
    pub fn jet(&self) -> &Jet<S> {
        &self.jet
    }

    /// `n · dim A`.
    pub fn ambient_dim(&self) -> usize {
        self.relations.ambient()
    }

    /// Image of `Der(A, A)` under `δ ↦ (δ[x^i])`.
    pub fn relations(&self) -> &Subspace<S> {
        &self.relations
    }

    pub fn dim(&self) -> usize {
        self.ambient_dim() - self.relations.dim()
    }

    /// Class of the field `Σ a^i ∂_i`, given by centered coefficients.
    pub fn value_of_field(&self, coefficients: &[TruncatedPolynomial<S>]) -> Vec<S> {
        self.jet.field_value(coefficients)
    }

    /// Whether two tuples define the same tangent vector.
    pub fn same_vector(&self, u: &[S], v: &[S]) -> bool {
        let diff: Vec<S> = u.iter().zip(v).map(|(a, b)| a.clone() - b.clone()).collect();
        self.relations.contains(&diff)
    }
}

pub fn tangent_module<S: Scalar>(p: &Jet<S>) -> TangentModule<S> {
    let relations = p.algebra().derivations().as_subspace().clone();
    TangentModule { jet: p.clone(), relations }
}

/// `T*_pM = p / p̂`.
#[derive(Clone, Debug, PartialEq)]
pub struct Cotangent<S> {
    pub dim: usize,
    /// Representatives of a basis of `p / p̂`, centered.
    pub basis: Vec<TruncatedPolynomial<S>>,
    pub hat: Jet<S>,
}

pub fn cotangent_module<S: Scalar>(p: &Jet<S>) -> Result<Cotangent<S>> {
    let hat = hat_ideal(p)?;
    let window = hat.window().max(p.window());
    let (basis, ideal) = p.ideal_in_window(window);
    let (_, small) = hat.ideal_in_window(window);
    let reps: Vec<TruncatedPolynomial<S>> =
        ideal.complement_basis(&small).iter().map(|v| TruncatedPolynomial::from_dense(&basis, v, window)).collect();
    Ok(Cotangent { dim: reps.len(), basis: reps, hat })
}

/// `d_p f (D) = Σ_i [∂_i f] v_i ∈ A` for `f ∈ p` and a tangent tuple `v ∈ A^n`.
pub fn differential<S: Scalar>(p: &Jet<S>, f: &TruncatedPolynomial<S>, vector: &[S]) -> Result<Vec<S>> {
    let a = p.algebra();
    let d = a.dim();
    if vector.len() != p.nvars() * d {
        return Err(Error::DimensionMismatch { expected: p.nvars() * d, found: vector.len() });
    }
    if !p.contains(f) {
        return Err(Error::FNotInIdeal);
    }
    let mut out = a.zero();
    for (i, g) in p.gradient_classes(f).iter().enumerate() {
        out = a.add(&out, &a.mul(g, &vector[i * d..(i + 1) * d]));
    }
    Ok(out)
}

/// Fields `Σ a^i ∂_i` with `a^i` of degree at most `ℓ` and `D(p) ⊆ p`.
///
/// Vectors are laid out variable-major over the monomial basis of `R_n^ℓ`.
#[derive(Clone, Debug, PartialEq)]
pub struct JetFields<S> {
    pub basis: MonomialBasis,
    pub space: Subspace<S>,
}

impl<S: Scalar> JetFields<S> {
    pub fn fields(&self) -> Vec<Vec<TruncatedPolynomial<S>>> {
        self.space.basis().iter().map(|v| self.to_field(v)).collect()
    }

    pub fn to_field(&self, v: &[S]) -> Vec<TruncatedPolynomial<S>> {
        let k = self.basis.len();
        let n = v.len() / k.max(1);
        (0..n)
            .map(|i| TruncatedPolynomial::from_dense(&self.basis, &v[i * k..(i + 1) * k], self.basis.max_degree()))
            .collect()
    }

    pub fn to_vector(&self, field: &[TruncatedPolynomial<S>]) -> Vec<S> {
        field.iter().flat_map(|a| a.to_dense(&self.basis)).collect()
    }
}

pub fn jet_fields<S: Scalar>(p: &Jet<S>) -> JetFields<S> {
    let n = p.nvars();
    let a = p.algebra();
    let basis = MonomialBasis::new(n, p.order());
    let mut columns: Vec<Vec<S>> = Vec::with_capacity(n * basis.len());
    let gens = p.generators();
    for i in 0..n {
        let derivs: Vec<TruncatedPolynomial<S>> = gens.iter().map(|f| f.partial_derivative(i)).collect();
        for m in basis.monomials() {
            let mono = TruncatedPolynomial::monomial(m.clone(), UNBOUNDED);
            columns.push(derivs.iter().flat_map(|g| a.class_of(&(&mono * g))).collect());
        }
    }
    let rows = columns.first().map_or(0, Vec::len);
    let matrix: Vec<Vec<S>> = (0..rows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let space = kernel(&matrix, n * basis.len());
    JetFields { basis, space }
}

/// Whether the field `Σ a^i ∂_i` maps every element of `p` into `p`.
pub fn preserves<S: Scalar>(p: &Jet<S>, field: &[TruncatedPolynomial<S>]) -> bool {
    let bound = p.window();
    p.generators().iter().all(|f| p.contains(&f.apply_field(field, bound)))
}
