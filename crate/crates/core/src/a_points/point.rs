use crate::error::{Error, Result};
use crate::exact_linear::{default_variable_names, kernel, MonomialBasis, TruncatedPolynomial, UNBOUNDED};
use crate::jet_spectrum::Jet;
use crate::scalar::Scalar;
use crate::weil_core::{AlgebraMorphism, Polynomials, WeilAlgebra};

type Poly<S> = TruncatedPolynomial<S>;

/// A morphism `R[x^1..x^n] → A`, given by the images of the coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct APoint<S> {
    algebra: WeilAlgebra<S>,
    images: Vec<Vec<S>>,
}

impl<S: Scalar> APoint<S> {
    pub fn new(algebra: WeilAlgebra<S>, images: Vec<Vec<S>>) -> Result<Self> {
        let d = algebra.dim();
        if let Some(bad) = images.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: bad.len() });
        }
        Ok(APoint { algebra, images })
    }

    /// The `A`-point "take values at `point`".
    pub fn constant(algebra: WeilAlgebra<S>, point: &[S]) -> Self {
        let images = point.iter().map(|c| algebra.constant(c.clone())).collect();
        APoint { algebra, images }
    }

    pub fn algebra(&self) -> &WeilAlgebra<S> {
        &self.algebra
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[Vec<S>] {
        &self.images
    }

    /// Real components `x^i_α`, variable-major.
    pub fn coordinates(&self) -> Vec<S> {
        self.images.iter().flatten().cloned().collect()
    }

    /// The point of `R^n` under the augmentation `A → R`.
    pub fn base_point(&self) -> Vec<S> {
        self.images.iter().map(|v| v[0].clone()).collect()
    }

    /// Images of `x^i − x^i(p)`, all in `m_A`.
    pub fn centered_images(&self) -> Vec<Vec<S>> {
        self.images
            .iter()
            .map(|v| {
                let mut w = v.clone();
                w[0] = S::zero();
                w
            })
            .collect()
    }

    /// `f(p^A)`, i.e. the real components of `f` at this point.
    pub fn evaluate(&self, f: &Poly<S>) -> Result<Vec<S>> {
        if f.nvars() != self.nvars() {
            return Err(Error::VariableCountMismatch { expected: self.nvars(), found: f.nvars() });
        }
        Ok(self.algebra.eval(f, &self.images))
    }

    /// The images of `x^i − x^i(p)` span `m_A / m_A^2`.
    pub fn is_regular(&self) -> bool {
        let a = &self.algebra;
        let mut span = a.max_ideal_power(2);
        for v in self.centered_images() {
            span.insert(v);
        }
        span.dim() == a.max_ideal_power(1).dim()
    }

    /// The jet `Ker p^A` at the base point.
    pub fn kernel(&self) -> Result<Jet<S>> {
        let a = &self.algebra;
        let order = a.order();
        let centered = self.centered_images();
        let basis = MonomialBasis::new(self.nvars(), order + 1);
        let columns: Vec<Vec<S>> =
            basis.monomials().iter().map(|m| a.eval(&Poly::monomial(m.clone(), UNBOUNDED), &centered)).collect();
        let rows: Vec<Vec<S>> = (0..a.dim()).map(|g| columns.iter().map(|c| c[g].clone()).collect()).collect();
        let gens: Vec<Poly<S>> =
            kernel(&rows, basis.len()).basis().iter().map(|v| Poly::from_dense(&basis, v, order)).collect();
        Jet::from_centered(self.nvars(), self.base_point(), &gens, order)
    }

    pub fn regularity_and_kernel(&self) -> Result<(bool, Jet<S>)> {
        Ok((self.is_regular(), self.kernel()?))
    }

    /// `p^A × q^A` on `R^(n+m)`.
    pub fn cartesian_product(&self, other: &Self) -> Result<Self> {
        if self.algebra != other.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let mut images = self.images.clone();
        images.extend(other.images.iter().cloned());
        Ok(APoint { algebra: self.algebra.clone(), images })
    }

    /// Restriction to the listed coordinates.
    pub fn restrict(&self, vars: &[usize]) -> Self {
        APoint { algebra: self.algebra.clone(), images: vars.iter().map(|&v| self.images[v].clone()).collect() }
    }

    /// `α ∘ p^A` for a morphism `α: A → B`.
    pub fn push(&self, morphism: &AlgebraMorphism<S>) -> Result<Self> {
        if morphism.source() != &self.algebra {
            return Err(Error::AlgebraMismatch);
        }
        let images = self.images.iter().map(|v| morphism.apply(v)).collect();
        Ok(APoint { algebra: morphism.target().clone(), images })
    }
}

/// Names `x_0, x_1, …` for the real-component coordinates, variable-major.
pub fn prolonged_variable_names(nvars: usize, dim: usize) -> Vec<String> {
    default_variable_names(nvars).iter().flat_map(|x| (0..dim).map(move |a| format!("{x}_{a}"))).collect()
}

/// Real components of `f` at the generic `A`-point, as polynomials in the
/// `n · dim A` coordinates `x^i_α` (index `i · dim A + α`).
pub fn prolong_polynomial<S: Scalar>(f: &Poly<S>, algebra: &WeilAlgebra<S>) -> Vec<Poly<S>> {
    let n = f.nvars();
    let d = algebra.dim();
    let ring = Polynomials { nvars: n * d };
    let images: Vec<Vec<Poly<S>>> =
        (0..n).map(|i| (0..d).map(|a| Poly::variable(n * d, UNBOUNDED, i * d + a)).collect()).collect();
    algebra.eval_in(&f.retruncate(UNBOUNDED), &images, &ring)
}

/// For each generator, its `dim A` real-component polynomials.
pub fn prolong_ideal<S: Scalar>(generators: &[Poly<S>], algebra: &WeilAlgebra<S>) -> Vec<Vec<Poly<S>>> {
    generators.iter().map(|f| prolong_polynomial(f, algebra)).collect()
}

/// Both sides of `(f_α)_β((p^A)^B) = f_(αβ)(p^(A⊗B))`, indexed `α · dim B + β`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilIsoReport<S> {
    pub two_stage: Vec<S>,
    pub one_stage: Vec<S>,
    pub equal: bool,
}

/// Compares two-stage and one-stage real components at an `A ⊗ B`-point.
///
/// `images` gives each coordinate in `A ⊗ B` with the paired basis.
pub fn weil_iso_check<S: Scalar>(
    f: &Poly<S>,
    a: &WeilAlgebra<S>,
    b: &WeilAlgebra<S>,
    images: &[Vec<S>],
) -> Result<WeilIsoReport<S>> {
    let ab = a.tensor(b);
    let one_stage = APoint::new(ab, images.to_vec())?.evaluate(f)?;
    let (da, db) = (a.dim(), b.dim());
    // The B-point of M^A: x^i_α ↦ Σ_β c^i_(αβ) b^β.
    let b_images: Vec<Vec<S>> =
        images.iter().flat_map(|v| (0..da).map(move |al| v[al * db..(al + 1) * db].to_vec())).collect();
    let inner = APoint::new(b.clone(), b_images)?;
    let mut two_stage = Vec::with_capacity(da * db);
    for component in prolong_polynomial(f, a) {
        two_stage.extend(inner.evaluate(&component)?);
    }
    let equal = two_stage == one_stage;
    Ok(WeilIsoReport { two_stage, one_stage, equal })
}

/// `(Df)(p^A)` against `D̄ f_α`, where `D̄` has components `(D x^i)_α(p^A)`.
pub fn tangent_correspondence_check<S: Scalar>(f: &Poly<S>, point: &APoint<S>, field: &[Poly<S>]) -> Result<bool> {
    let n = point.nvars();
    if field.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: field.len() });
    }
    let direct = point.evaluate(&f.retruncate(UNBOUNDED).apply_field(field, UNBOUNDED))?;
    let d = point.algebra().dim();
    let mut direction = Vec::with_capacity(n * d);
    for a in field {
        direction.extend(point.evaluate(a)?);
    }
    let coords = point.coordinates();
    let induced: Vec<S> = prolong_polynomial(f, point.algebra())
        .iter()
        .map(|fa| {
            (0..n * d).fold(S::zero(), |acc, k| {
                if direction[k].is_zero() {
                    acc
                } else {
                    acc + fa.partial_derivative(k).evaluate(&coords) * direction[k].clone()
                }
            })
        })
        .collect();
    Ok(induced == direct)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::parse_polynomial;
    use crate::jet_spectrum::jet_from_ideal;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn poly(t: &str, n: usize) -> Poly<Q> {
        parse_polynomial(t, n).unwrap()
    }

    fn dual() -> WeilAlgebra<Q> {
        WeilAlgebra::classical(1, 1)
    }

    /// `Σ (1/λ!) D^λ f(p) (x − x(p))^λ` with the powers taken in `A`.
    fn taylor_oracle(f: &Poly<Q>, p: &APoint<Q>) -> Vec<Q> {
        let a = p.algebra();
        let n = p.nvars();
        let base = p.base_point();
        let centered = p.centered_images();
        let mut out = a.zero();
        for lambda in MonomialBasis::new(n, a.order()).monomials() {
            let mut derivative = f.clone();
            for (i, &e) in lambda.exponents().iter().enumerate() {
                for _ in 0..e {
                    derivative = derivative.partial_derivative(i);
                }
            }
            let coeff = derivative.evaluate(&base) / Q::from_integer((lambda.factorial() as i64).into());
            let power = a.eval(&Poly::monomial(lambda.clone(), UNBOUNDED), &centered);
            out = a.add(&out, &a.scale(&coeff, &power));
        }
        out
    }

    #[test]
    fn dual_number_square() {
        let p = APoint::new(dual(), vec![vec![q(3), q(1)]]).unwrap();
        assert_eq!(p.evaluate(&poly("x^2", 1)).unwrap(), vec![q(9), q(6)]);
        assert!(p.evaluate(&poly("x y", 2)).is_err());
    }

    #[test]
    fn tensor_square_points() {
        let a = dual().tensor(&dual());
        // basis 1, ε2, ε1, ε1ε2
        let p = APoint::new(a.clone(), vec![vec![q(0), q(1), q(1), q(0)]]).unwrap();
        assert_eq!(p.evaluate(&poly("x^2", 1)).unwrap(), vec![q(0), q(0), q(0), q(2)]);
        let p = APoint::new(a, vec![vec![q(0), q(0), q(1), q(0)], vec![q(0), q(1), q(0), q(0)]]).unwrap();
        assert_eq!(p.evaluate(&poly("x y", 2)).unwrap(), vec![q(0), q(0), q(0), q(1)]);
        let (regular, kernel) = p.regularity_and_kernel().unwrap();
        assert!(regular);
        let expected = jet_from_ideal(2, &[q(0), q(0)], &[poly("x^2", 2), poly("y^2", 2)], 2).unwrap();
        assert_eq!(kernel, expected);
        assert_eq!(kernel.quotient_dim(), 4);
    }

    #[test]
    fn evaluation_matches_taylor_formula() {
        let a = WeilAlgebra::quotient(2, &[poly("x^2 - y^3", 2), poly("x y", 2)], 4).unwrap();
        let images = vec![
            vec![q(2), q(1), q(-1), q(3), q(0)][..a.dim()].to_vec(),
            vec![q(-1), q(0), q(2), q(1), q(1)][..a.dim()].to_vec(),
            vec![q(1), q(1), q(1), q(1), q(1)][..a.dim()].to_vec(),
        ];
        let p = APoint::new(a, images).unwrap();
        for f in ["x^3 y - 2 z", "x y z + y^4", "7", "x^2 z^3 - y"] {
            let f = poly(f, 3);
            assert_eq!(p.evaluate(&f).unwrap(), taylor_oracle(&f, &p));
        }
    }

    #[test]
    fn regularity_examples() {
        let p = APoint::new(dual(), vec![vec![q(5), q(1)]]).unwrap();
        let (regular, kernel) = p.regularity_and_kernel().unwrap();
        assert!(regular);
        assert_eq!(kernel, jet_from_ideal(1, &[q(5)], &[], 1).unwrap());

        let p = APoint::constant(dual(), &[q(0)]);
        let (regular, kernel) = p.regularity_and_kernel().unwrap();
        assert!(!regular);
        assert_eq!(kernel.quotient_dim(), 1);
    }

    #[test]
    fn products_restrict_to_factors() {
        let p = APoint::new(dual(), vec![vec![q(2), q(1)]]).unwrap();
        let r = APoint::constant(dual(), &[q(7)]);
        let pr = p.cartesian_product(&r).unwrap();
        assert_eq!(pr.images(), &[vec![q(2), q(1)], vec![q(7), q(0)]]);
        assert_eq!(pr.restrict(&[0]), p);
        let a = dual();
        let xy = pr.evaluate(&poly("x y", 2)).unwrap();
        assert_eq!(xy, a.mul(&p.evaluate(&poly("x", 1)).unwrap(), &r.evaluate(&poly("x", 1)).unwrap()));
        let other = APoint::constant(WeilAlgebra::classical(1, 2), &[q(0)]);
        assert_eq!(p.cartesian_product(&other), Err(Error::AlgebraMismatch));
        let plain = APoint::constant(WeilAlgebra::reals(), &[q(1)]);
        let pair = plain.cartesian_product(&APoint::constant(WeilAlgebra::reals(), &[q(2)])).unwrap();
        assert_eq!(pair.base_point(), vec![q(1), q(2)]);
    }

    #[test]
    fn prolonged_parabola() {
        let names = prolonged_variable_names(2, 2);
        let components = &prolong_ideal(&[poly("y - x^2", 2)], &dual())[0];
        let expected: Vec<Poly<Q>> = ["y_0 - x_0^2", "y_1 - 2*x_0*x_1"]
            .iter()
            .map(|t| crate::exact_linear::parse_polynomial_with(t, &names).unwrap())
            .collect();
        assert_eq!(components, &expected);
        assert_eq!(components[1].display_with(&names).to_string(), "y_1 - 2 x_0 x_1");

        let three = &prolong_ideal(&[poly("y - x^2", 2)], &WeilAlgebra::classical(1, 2))[0];
        let x = |i: usize| Poly::<Q>::variable(6, UNBOUNDED, i);
        assert_eq!(three[2], &x(5) - &(&(&x(0) * &x(2)).scale(&q(2)) + &(&x(1) * &x(1))));
        let linear = &prolong_ideal(&[poly("x", 1)], &dual())[0];
        assert_eq!(linear, &vec![Poly::variable(2, UNBOUNDED, 0), Poly::variable(2, UNBOUNDED, 1)]);
    }

    #[test]
    fn weil_isomorphism_second_order() {
        let (t, a, b, c) = (q(3), q(2), q(-5), q(7));
        let images = vec![vec![t.clone(), b.clone(), a.clone(), c.clone()]];
        let report = weil_iso_check(&poly("x^2", 1), &dual(), &dual(), &images).unwrap();
        assert!(report.equal);
        let two = q(2);
        assert_eq!(
            report.one_stage,
            vec![
                t.clone() * t.clone(),
                two.clone() * t.clone() * b.clone(),
                two.clone() * t.clone() * a.clone(),
                two.clone() * t * c + two * a * b
            ]
        );
        assert!(weil_iso_check(&poly("x^3 - x", 1), &dual(), &dual(), &images).unwrap().equal);
    }

    #[test]
    fn tangent_correspondence() {
        let p = APoint::new(dual(), vec![vec![q(4), q(1)]]).unwrap();
        assert!(tangent_correspondence_check(&poly("x^2", 1), &p, &[poly("1", 1)]).unwrap());
        assert!(tangent_correspondence_check(&poly("5", 1), &p, &[poly("x", 1)]).unwrap());
        let p = APoint::new(dual(), vec![vec![q(2), q(-3)], vec![q(1), q(5)]]).unwrap();
        assert!(tangent_correspondence_check(&poly("x y", 2), &p, &[poly("0", 2), poly("x", 2)]).unwrap());
    }
}
