use super::point::APoint;
use crate::error::{Error, Result};
use crate::exact_linear::{invert, mat_mul, mat_vec, TruncatedPolynomial, UNBOUNDED};
use crate::scalar::Scalar;
use crate::weil_core::WeilAlgebra;

type Poly<S> = TruncatedPolynomial<S>;

/// `∂f^k/∂x^i` at a real point, rows indexed by `k`.
pub fn jacobian<S: Scalar>(maps: &[Poly<S>], point: &[S]) -> Vec<Vec<S>> {
    maps.iter().map(|f| (0..f.nvars()).map(|i| f.partial_derivative(i).evaluate(point)).collect()).collect()
}

/// A polynomial group law on `R^n`: `Φ(a, b)` in the `2n` variables `a1..an, b1..bn`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupLaw<S> {
    dim: usize,
    law: Vec<Poly<S>>,
    identity: Vec<S>,
    inverse: Vec<Poly<S>>,
}

fn substitute<S: Scalar>(f: &Poly<S>, images: &[Poly<S>]) -> Result<Poly<S>> {
    f.truncated_substitute(images, UNBOUNDED, false)
}

impl<S: Scalar> GroupLaw<S> {
    /// Validates unit, inverse and associativity as exact polynomial identities.
    pub fn new(dim: usize, law: Vec<Poly<S>>, identity: Vec<S>, inverse: Vec<Poly<S>>) -> Result<Self> {
        if law.len() != dim || inverse.len() != dim || identity.len() != dim {
            return Err(Error::GroupAxiom(format!(
                "expected {dim} law components, inverse components and identity coordinates"
            )));
        }
        if let Some(f) = law.iter().find(|f| f.nvars() != 2 * dim) {
            return Err(Error::VariableCountMismatch { expected: 2 * dim, found: f.nvars() });
        }
        if let Some(f) = inverse.iter().find(|f| f.nvars() != dim) {
            return Err(Error::VariableCountMismatch { expected: dim, found: f.nvars() });
        }
        let law: Vec<Poly<S>> = law.iter().map(|f| f.retruncate(UNBOUNDED)).collect();
        let inverse: Vec<Poly<S>> = inverse.iter().map(|f| f.retruncate(UNBOUNDED)).collect();
        let g = GroupLaw { dim, law, identity, inverse };
        g.validate()?;
        Ok(g)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        let var = |m: usize, i: usize| Poly::variable(m, UNBOUNDED, i);
        let e: Vec<Poly<S>> = self.identity.iter().map(|c| Poly::constant(n, UNBOUNDED, c.clone())).collect();
        let x: Vec<Poly<S>> = (0..n).map(|i| var(n, i)).collect();
        let check = |images: Vec<Poly<S>>, expected: &[Poly<S>], what: &str| -> Result<()> {
            for (k, f) in self.law.iter().enumerate() {
                if substitute(f, &images)? != expected[k] {
                    return Err(Error::GroupAxiom(format!("{what} fails in component {}", k + 1)));
                }
            }
            Ok(())
        };
        check(e.iter().chain(&x).cloned().collect(), &x, "left identity")?;
        check(x.iter().chain(&e).cloned().collect(), &x, "right identity")?;
        check(x.iter().chain(&self.inverse).cloned().collect(), &e, "right inverse")?;
        check(self.inverse.iter().chain(&x).cloned().collect(), &e, "left inverse")?;

        let m = 3 * n;
        let a: Vec<Poly<S>> = (0..n).map(|i| var(m, i)).collect();
        let b: Vec<Poly<S>> = (0..n).map(|i| var(m, n + i)).collect();
        let c: Vec<Poly<S>> = (0..n).map(|i| var(m, 2 * n + i)).collect();
        let apply = |u: &[Poly<S>], v: &[Poly<S>]| -> Result<Vec<Poly<S>>> {
            let images: Vec<Poly<S>> = u.iter().chain(v).cloned().collect();
            self.law.iter().map(|f| substitute(f, &images)).collect()
        };
        let left = apply(&apply(&a, &b)?, &c)?;
        let right = apply(&a, &apply(&b, &c)?)?;
        if let Some(k) = (0..n).find(|&k| left[k] != right[k]) {
            return Err(Error::GroupAxiom(format!("associativity fails in component {}", k + 1)));
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn law(&self) -> &[Poly<S>] {
        &self.law
    }

    pub fn identity(&self) -> &[S] {
        &self.identity
    }

    pub fn inverse_map(&self) -> &[Poly<S>] {
        &self.inverse
    }

    fn check_point(&self, p: &APoint<S>) -> Result<()> {
        if p.nvars() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: p.nvars() });
        }
        Ok(())
    }

    /// `p^A · q^A`: the law evaluated at `p^A × q^A`.
    pub fn multiply(&self, p: &APoint<S>, q: &APoint<S>) -> Result<APoint<S>> {
        self.check_point(p)?;
        self.check_point(q)?;
        let pq = p.cartesian_product(q)?;
        let images = self.law.iter().map(|f| pq.evaluate(f)).collect::<Result<_>>()?;
        APoint::new(p.algebra().clone(), images)
    }

    /// "Take values at `e`".
    pub fn identity_point(&self, algebra: &WeilAlgebra<S>) -> APoint<S> {
        APoint::constant(algebra.clone(), &self.identity)
    }

    pub fn invert(&self, p: &APoint<S>) -> Result<APoint<S>> {
        self.check_point(p)?;
        let images = self.inverse.iter().map(|f| p.evaluate(f)).collect::<Result<_>>()?;
        APoint::new(p.algebra().clone(), images)
    }

    pub fn product(&self, p: &[S], q: &[S]) -> Vec<S> {
        let point: Vec<S> = p.iter().chain(q).cloned().collect();
        self.law.iter().map(|f| f.evaluate(&point)).collect()
    }

    pub fn inverse_of(&self, p: &[S]) -> Vec<S> {
        self.inverse.iter().map(|f| f.evaluate(p)).collect()
    }

    fn split_jacobian(&self, p: &[S], q: &[S]) -> (Vec<Vec<S>>, Vec<Vec<S>>) {
        let point: Vec<S> = p.iter().chain(q).cloned().collect();
        let full = jacobian(&self.law, &point);
        let n = self.dim;
        let a = full.iter().map(|r| r[..n].to_vec()).collect();
        let b = full.iter().map(|r| r[n..].to_vec()).collect();
        (a, b)
    }

    /// Differential of `R_q` at `p`.
    pub fn right_translation(&self, p: &[S], q: &[S]) -> Vec<Vec<S>> {
        self.split_jacobian(p, q).0
    }

    /// Differential of `L_p` at `q`.
    pub fn left_translation(&self, p: &[S], q: &[S]) -> Vec<Vec<S>> {
        self.split_jacobian(p, q).1
    }

    /// `Ad p = dR_(p⁻¹)(p) · dL_p(e)`.
    pub fn adjoint(&self, p: &[S]) -> Vec<Vec<S>> {
        let inv = self.inverse_of(p);
        mat_mul(&self.right_translation(p, &inv), &self.left_translation(p, &self.identity))
    }

    /// Checks the tangent group formulas on `A = R_1^1` points `(p, L_p δ)` and `(q, L_q δ̄)`.
    pub fn tangent_group_check(&self, p: &[S], delta: &[S], q: &[S], delta_bar: &[S]) -> Result<TangentGroupReport> {
        let dual = WeilAlgebra::classical(1, 1);
        let e = self.identity.clone();
        let at = |base: &[S], v: &[S]| {
            APoint::new(dual.clone(), base.iter().zip(v).map(|(b, t)| vec![b.clone(), t.clone()]).collect())
        };
        let tangent = |pt: &APoint<S>| -> Vec<S> { pt.images().iter().map(|v| v[1].clone()).collect() };
        let dp = mat_vec(&self.left_translation(p, &e), delta);
        let dq = mat_vec(&self.left_translation(q, &e), delta_bar);
        let pp = at(p, &dp)?;
        let qq = at(q, &dq)?;

        let prod = self.multiply(&pp, &qq)?;
        let pq = self.product(p, q);
        let expected: Vec<S> = mat_vec(&self.right_translation(p, q), &dp)
            .into_iter()
            .zip(mat_vec(&self.left_translation(p, q), &dq))
            .map(|(x, y)| x + y)
            .collect();
        let product_matches = prod.base_point() == pq && tangent(&prod) == expected;

        // In left-trivialised coordinates: (p,δ)(q,δ̄) = (pq, Ad(q⁻¹)δ + δ̄).
        let lpq = invert(&self.left_translation(&pq, &e))
            .ok_or_else(|| Error::GroupAxiom("left translation is singular".into()))?;
        let trivial = mat_vec(&lpq, &tangent(&prod));
        let lie: Vec<S> = mat_vec(&self.adjoint(&self.inverse_of(q)), delta)
            .into_iter()
            .zip(delta_bar)
            .map(|(x, y)| x + y.clone())
            .collect();
        let lie_product_matches = trivial == lie;

        let inv = self.invert(&pp)?;
        let p_inv = self.inverse_of(p);
        let minus_ad: Vec<S> = mat_vec(&self.adjoint(p), delta).into_iter().map(|x| -x).collect();
        let expected_inv = mat_vec(&self.left_translation(&p_inv, &e), &minus_ad);
        let inverse_matches = inv.base_point() == p_inv && tangent(&inv) == expected_inv;

        let unit = self.identity_point(&dual);
        let identity_matches = self.multiply(&pp, &unit)? == pp && self.multiply(&unit, &pp)? == pp;
        Ok(TangentGroupReport { product_matches, lie_product_matches, inverse_matches, identity_matches })
    }

    /// Associativity, identity and inverse laws on concrete `A`-points.
    pub fn axioms_hold_on(&self, p: &APoint<S>, q: &APoint<S>, r: &APoint<S>) -> Result<bool> {
        let unit = self.identity_point(p.algebra());
        let assoc = self.multiply(&self.multiply(p, q)?, r)? == self.multiply(p, &self.multiply(q, r)?)?;
        let ident = self.multiply(p, &unit)? == *p && self.multiply(&unit, p)? == *p;
        let inv = self.multiply(p, &self.invert(p)?)? == unit && self.multiply(&self.invert(p)?, p)? == unit;
        Ok(assoc && ident && inv)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TangentGroupReport {
    /// `(p, D_p)(q, D̄_q) = (pq, R_q D_p + L_p D̄_q)`.
    pub product_matches: bool,
    pub lie_product_matches: bool,
    /// `(p, δ)⁻¹ = (p⁻¹, −(Ad p) δ)`.
    pub inverse_matches: bool,
    pub identity_matches: bool,
}

impl TangentGroupReport {
    pub fn all(&self) -> bool {
        self.product_matches && self.lie_product_matches && self.inverse_matches && self.identity_matches
    }
}
