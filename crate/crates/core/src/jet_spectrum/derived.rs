use super::jet::Jet;
use crate::error::{Error, Result};
use crate::exact_linear::{invert, solve, unit_vector, MonomialBasis, Subspace, TruncatedPolynomial, UNBOUNDED};
use crate::scalar::Scalar;

type Poly<S> = TruncatedPolynomial<S>;

/// Adapted coordinates in which `p = (y^1..y^r) + m^(ℓ+1) + (Q^h(x))`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<S> {
    /// Original coordinates as polynomials in the adapted ones.
    pub sigma: Vec<Poly<S>>,
    /// Adapted coordinates as polynomials in the original ones.
    pub phi: Vec<Poly<S>>,
    /// Indices of the adapted `y` coordinates (pivots of the linear part of `p`).
    pub y_vars: Vec<usize>,
    pub x_vars: Vec<usize>,
    /// Polynomials in the `x` coordinates of degree `2..=ℓ`.
    pub q_list: Vec<Poly<S>>,
    /// `p` in the adapted coordinates, at the origin.
    pub transformed: Jet<S>,
}

impl<S> NormalForm<S> {
    pub fn r(&self) -> usize {
        self.y_vars.len()
    }
}

/// Rows of the canonical ideal basis whose pivot is a variable, with that variable.
fn linear_pivot_rows<S: Scalar>(p: &Jet<S>) -> Vec<(usize, Poly<S>)> {
    let basis = p.algebra().window_basis();
    let linear = basis.degree_range(1);
    p.ideal()
        .basis()
        .iter()
        .zip(p.ideal().pivots())
        .filter(|(_, k)| linear.contains(k))
        .map(|(v, &k)| (k - linear.start, Poly::from_dense(basis, v, p.window())))
        .collect()
}

fn split_variables<S: Scalar>(p: &Jet<S>) -> (Vec<(usize, Poly<S>)>, Vec<usize>) {
    let rows = linear_pivot_rows(p);
    let xs = (0..p.nvars()).filter(|i| !rows.iter().any(|(y, _)| y == i)).collect();
    (rows, xs)
}

fn linear_combination<S: Scalar>(coeffs: &[S], polys: &[Poly<S>], nvars: usize, bound: u32) -> Poly<S> {
    let mut out = Poly::zero(nvars, bound);
    for (c, f) in coeffs.iter().zip(polys) {
        if !c.is_zero() {
            out = &out + &f.scale(c);
        }
    }
    out
}

/// Inverse of a substitution with zero constant terms, truncated at `bound`.
///
/// Solves `φ(σ(z)) = z` by the iteration `σ ← Λ^{-1}(z − N(σ))`, where `Λ` is
/// the linear part of `φ` and `N` the rest; each pass fixes one more degree.
pub fn invert_substitution<S: Scalar>(phi: &[Poly<S>], bound: u32) -> Result<Vec<Poly<S>>> {
    let n = phi.len();
    let lambda: Vec<Vec<S>> = phi
        .iter()
        .map(|f| (0..n).map(|i| f.coeff(&crate::exact_linear::MultiIndex::variable(n, i))).collect())
        .collect();
    let inv = invert(&lambda).ok_or_else(|| Error::Internal("coordinate change has a singular linear part".into()))?;
    let z: Vec<Poly<S>> = (0..n).map(|i| Poly::variable(n, bound, i)).collect();
    let nonlinear: Vec<Poly<S>> =
        phi.iter().map(|f| &f.retruncate(bound) - &f.homogeneous_part(1).retruncate(bound)).collect();
    let mut sigma: Vec<Poly<S>> = (0..n).map(|i| linear_combination(&inv[i], &z, n, bound)).collect();
    for _ in 1..bound {
        let rhs: Vec<Poly<S>> = (0..n)
            .map(|k| Ok(&z[k] - &nonlinear[k].truncated_substitute(&sigma, bound, true)?))
            .collect::<Result<_>>()?;
        sigma = (0..n).map(|i| linear_combination(&inv[i], &rhs, n, bound)).collect();
    }
    for (k, f) in phi.iter().enumerate() {
        if f.truncated_substitute(&sigma, bound, true)? != z[k] {
            return Err(Error::Internal("truncated inverse substitution did not converge".into()));
        }
    }
    Ok(sigma)
}

fn x_only<S: Scalar>(f: &Poly<S>, xs: &[usize]) -> bool {
    f.terms().all(|(m, _)| m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || xs.contains(&i)))
}

/// Subspace of the window spanned by monomials in the `xs` variables with degree in `degrees`.
fn x_monomial_span<S: Scalar>(
    basis: &MonomialBasis,
    xs: &[usize],
    degrees: std::ops::RangeInclusive<u32>,
) -> Subspace<S> {
    let vectors = basis
        .monomials()
        .iter()
        .enumerate()
        .filter(|(_, m)| {
            degrees.contains(&m.degree()) && m.exponents().iter().enumerate().all(|(i, &e)| e == 0 || xs.contains(&i))
        })
        .map(|(k, _)| unit_vector(basis.len(), k))
        .collect::<Vec<_>>();
    Subspace::span(vectors, basis.len())
}

pub fn normal_form<S: Scalar>(p: &Jet<S>) -> Result<NormalForm<S>> {
    let n = p.nvars();
    let order = p.order();
    let bound = order.max(1);
    let (rows, xs) = split_variables(p);
    let mut phi: Vec<Poly<S>> = (0..n).map(|i| Poly::variable(n, bound, i)).collect();
    for (y, u) in &rows {
        phi[*y] = u.retruncate(bound);
    }
    let sigma = invert_substitution(&phi, bound)?;
    let origin = vec![S::zero(); n];
    let moved: Vec<Poly<S>> =
        p.generators().iter().map(|f| f.truncated_substitute(&sigma, order, true)).collect::<Result<_>>()?;
    let transformed = Jet::from_centered(n, origin.clone(), &moved, order)?;

    let basis = transformed.algebra().window_basis().clone();
    let window = transformed.window();
    let s = transformed.ideal().intersection(&x_monomial_span(&basis, &xs, 2..=order))?;
    let mut shifted = Subspace::zero(basis.len());
    for v in s.basis() {
        let f = Poly::from_dense(&basis, v, window);
        for &k in &xs {
            let g = f.truncated_product(&Poly::variable(n, window, k), order).expect("same arity");
            shifted.insert(g.retruncate(window).to_dense(&basis));
        }
    }
    let q_list: Vec<Poly<S>> =
        s.complement_basis(&shifted).iter().map(|v| Poly::from_dense(&basis, v, order)).collect();

    let ys: Vec<usize> = rows.iter().map(|(y, _)| *y).collect();
    let mut gens: Vec<Poly<S>> = ys.iter().map(|&y| Poly::variable(n, order, y)).collect();
    gens.extend(q_list.iter().cloned());
    if Jet::from_centered(n, origin, &gens, order)? != transformed {
        return Err(Error::Internal("normal form does not reproduce the jet".into()));
    }
    Ok(NormalForm { sigma, phi, y_vars: ys, x_vars: xs, q_list, transformed })
}

/// `p′ = p + m^ℓ + (∂Q^h/∂x^α)`, through the normal form.
///
/// For `ℓ = 0` the jet is the maximal ideal and is returned unchanged.
pub fn derived_jet<S: Scalar>(p: &Jet<S>) -> Result<Jet<S>> {
    let order = p.order();
    if order == 0 {
        return Ok(p.clone());
    }
    let n = p.nvars();
    let nf = normal_form(p)?;
    let mut gens: Vec<Poly<S>> = nf.y_vars.iter().map(|&y| Poly::variable(n, UNBOUNDED, y)).collect();
    for q in &nf.q_list {
        gens.push(q.clone());
        gens.extend(nf.x_vars.iter().map(|&a| q.partial_derivative(a)));
    }
    let pulled: Vec<Poly<S>> =
        gens.iter().map(|g| g.truncated_substitute(&nf.phi, order - 1, true)).collect::<Result<_>>()?;
    Jet::from_centered(n, p.base_point().to_vec(), &pulled, order - 1)
}

/// Fields tangent to the submanifolds of dimension `width` through `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanFields<S> {
    pub y_vars: Vec<usize>,
    pub x_vars: Vec<usize>,
    /// `G^j(x)` with `y^j − G^j ∈ p`: the reference graph through `p`.
    pub graph: Vec<Poly<S>>,
    /// Basis of `p ∩ R[x]` in the window: every graph through `p` is `y = G + H`.
    pub x_part: Vec<Poly<S>>,
    /// Coefficient tuples of the generating fields.
    pub fields: Vec<Vec<Poly<S>>>,
}

/// The generating family, built in the original centered coordinates.
///
/// Graphs through `p` are `y^j = G^j + H^j` with `H^j ∈ p ∩ R[x]`; their
/// tangent fields are spanned by `∂_α + Σ_j ∂_α G^j ∂_{y^j}` and
/// `(∂_α H) ∂_{y^j}`.
pub fn cartan_fields<S: Scalar>(p: &Jet<S>) -> Result<CartanFields<S>> {
    let n = p.nvars();
    let a = p.algebra();
    let window = p.window();
    let (rows, xs) = split_variables(p);
    let ys: Vec<usize> = rows.iter().map(|(y, _)| *y).collect();

    let small = MonomialBasis::new(n, p.order());
    let monos: Vec<Poly<S>> = small
        .monomials()
        .iter()
        .filter(|m| m.degree() >= 1)
        .map(|m| Poly::monomial(m.clone(), UNBOUNDED))
        .filter(|f| x_only(f, &xs))
        .collect();
    let classes: Vec<Vec<S>> = monos.iter().map(|f| a.class_of(f)).collect();
    let matrix: Vec<Vec<S>> = (0..a.dim()).map(|g| classes.iter().map(|c| c[g].clone()).collect()).collect();
    let mut graph = Vec::with_capacity(ys.len());
    for &y in &ys {
        let target = a.class_of(&Poly::variable(n, UNBOUNDED, y));
        let c = solve(&matrix, &target, monos.len())
            .ok_or_else(|| Error::Internal("x-classes do not generate the quotient".into()))?;
        graph.push(linear_combination(&c, &monos, n, UNBOUNDED));
    }

    let basis = a.window_basis();
    let x_part: Vec<Poly<S>> = p
        .ideal()
        .intersection(&x_monomial_span(basis, &xs, 1..=window))?
        .basis()
        .iter()
        .map(|v| Poly::from_dense(basis, v, UNBOUNDED))
        .collect();

    let zero = Poly::zero(n, UNBOUNDED);
    let mut fields = Vec::new();
    for &alpha in &xs {
        let mut f = vec![zero.clone(); n];
        f[alpha] = Poly::one(n, UNBOUNDED);
        for (g, &y) in graph.iter().zip(&ys) {
            f[y] = g.partial_derivative(alpha);
        }
        fields.push(f);
    }
    for h in &x_part {
        for &alpha in &xs {
            let dh = h.partial_derivative(alpha);
            if dh.is_zero() {
                continue;
            }
            for &y in &ys {
                let mut f = vec![zero.clone(); n];
                f[y] = dh.clone();
                fields.push(f);
            }
        }
    }
    Ok(CartanFields { y_vars: ys, x_vars: xs, graph, x_part, fields })
}

/// `p + (D f)` over the generating fields and a basis of `p`, with no normal form.
pub fn cartan_generation_oracle<S: Scalar>(p: &Jet<S>) -> Result<Jet<S>> {
    let family = cartan_fields(p)?;
    let window = p.window();
    let mut gens = p.generators();
    let base = gens.clone();
    for field in &family.fields {
        gens.extend(base.iter().map(|f| f.apply_field(field, window)));
    }
    Jet::from_centered(p.nvars(), p.base_point().to_vec(), &gens, window)
}

/// `C_p` as a subspace of `A^n`: the `A`-span of the values of the generating
/// fields, plus the relations.
pub fn cartan_from_fields<S: Scalar>(p: &Jet<S>) -> Result<Subspace<S>> {
    let a = p.algebra();
    let d = a.dim();
    let n = p.nvars();
    let mut span = a.derivations().as_subspace().clone();
    for field in cartan_fields(p)?.fields {
        let value = p.field_value(&field);
        for b in 0..d {
            let e = a.unit(b);
            span.insert((0..n).flat_map(|i| a.mul(&e, &value[i * d..(i + 1) * d])).collect());
        }
    }
    Ok(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::parse_polynomial;
    use crate::jet_spectrum::jet_from_ideal;
    use num_rational::BigRational;

    type Q = BigRational;

    fn poly(t: &str, n: usize) -> Poly<Q> {
        parse_polynomial(t, n).unwrap()
    }

    fn jet(n: usize, gens: &[&str], hint: u32) -> Jet<Q> {
        let gens: Vec<_> = gens.iter().map(|g| poly(g, n)).collect();
        jet_from_ideal(n, &vec![Q::from_integer(0.into()); n], &gens, hint).unwrap()
    }

    #[test]
    fn inverse_substitution() {
        let phi = vec![poly("x", 2), poly("y - x^2 + x y", 2)];
        let sigma = invert_substitution(&phi, 4).unwrap();
        for (k, s) in sigma.iter().enumerate() {
            let back = s.truncated_substitute(&phi, 4, true).unwrap();
            assert_eq!(back, Poly::variable(2, 4, k));
        }
    }

    #[test]
    fn normal_form_examples() {
        let nf = normal_form(&jet(2, &["y - x^2"], 2)).unwrap();
        assert_eq!((nf.r(), nf.q_list.len()), (1, 0));
        assert_eq!(nf.sigma[1].retruncate(UNBOUNDED), poly("y + x^2", 2));
        assert_eq!(nf.transformed, jet(2, &["y"], 2));

        let nf = normal_form(&jet(3, &["z", "x^2"], 2)).unwrap();
        assert_eq!((nf.r(), nf.y_vars.clone()), (1, vec![2]));
        assert_eq!(nf.sigma, vec![Poly::variable(3, 2, 0), Poly::variable(3, 2, 1), Poly::variable(3, 2, 2)]);
        assert_eq!(nf.q_list.iter().map(|q| q.retruncate(UNBOUNDED)).collect::<Vec<_>>(), vec![poly("x^2", 3)]);

        let nf = normal_form(&jet(2, &["x^3"], 2)).unwrap();
        assert_eq!((nf.r(), nf.q_list.len()), (0, 0));
    }

    #[test]
    fn derived_examples() {
        let p = jet(2, &["y - x"], 1);
        assert_eq!(derived_jet(&p).unwrap(), jet(2, &["x", "y"], 0));
        assert_eq!(derived_jet(&jet(2, &[], 2)).unwrap(), jet(2, &[], 1));
        assert_eq!(derived_jet(&jet(3, &["z", "x^2"], 2)).unwrap(), jet(3, &["z", "x"], 1));
        assert_eq!(derived_jet(&jet(2, &["y - x^2"], 2)).unwrap(), jet(2, &["y"], 1));
        let m = jet(1, &["x"], 0);
        assert_eq!(derived_jet(&m).unwrap(), m);
    }

    #[test]
    fn oracle_examples() {
        for p in [
            jet(2, &["y - x"], 1),
            jet(2, &[], 2),
            jet(3, &["z", "x^2"], 2),
            jet(2, &["y"], 2),
            jet(1, &[], 1),
            jet(2, &["x^2", "y^2"], 3),
        ] {
            assert_eq!(cartan_generation_oracle(&p).unwrap(), derived_jet(&p).unwrap());
        }
        assert_eq!(cartan_generation_oracle(&jet(2, &["y"], 2)).unwrap(), jet(2, &["y"], 1));
        assert_eq!(cartan_generation_oracle(&jet(1, &[], 1)).unwrap(), jet(1, &["x"], 0));
    }

    #[test]
    fn reference_graph_lies_in_p() {
        let p = jet(3, &["z - x y", "y - x^2"], 3);
        let family = cartan_fields(&p).unwrap();
        for (g, &y) in family.graph.iter().zip(&family.y_vars) {
            assert!(p.contains(&(&Poly::variable(3, UNBOUNDED, y) - g)));
        }
    }
}
