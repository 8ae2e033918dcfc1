use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact_linear::{binomial, kernel, unit_vector, MonomialBasis, MultiIndex, Subspace, TruncatedPolynomial};
use crate::scalar::Scalar;

/// Largest truncation degree tried when detecting the order of a presentation.
pub const ORDER_SEARCH_LIMIT: u32 = 16;

/// Window sizes beyond this are not explored during order detection.
const WINDOW_SIZE_LIMIT: usize = 2000;

/// A finite-dimensional local `R`-algebra `R[x^1..x^n] / I` with `I ⊇ m^(L+1)`.
///
/// Elements are coordinate vectors over `labels`, a list of monomials whose
/// classes form a basis; `labels[0]` is always the constant monomial. The
/// presentation is kept in the minimal window `order + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeilAlgebra<S> {
    nvars: usize,
    window: u32,
    monomials: MonomialBasis,
    labels: Vec<MultiIndex>,
    constants: Vec<Vec<Vec<S>>>,
    generator_images: Vec<Vec<S>>,
    monomial_images: Vec<Vec<S>>,
    ideal: Subspace<S>,
    powers: Vec<Subspace<S>>,
    order: u32,
    width: usize,
}

/// Arithmetic needed to evaluate polynomials with coefficients in `A ⊗ T`.
pub trait CoefficientRing<S, T> {
    fn zero(&self) -> T;
    fn from_scalar(&self, c: &S) -> T;
    fn add(&self, a: &T, b: &T) -> T;
    fn mul(&self, a: &T, b: &T) -> T;
    fn is_zero(&self, a: &T) -> bool;
}

/// The scalars themselves.
#[derive(Clone, Copy, Debug, Default)]
pub struct Scalars;

impl<S: Scalar> CoefficientRing<S, S> for Scalars {
    fn zero(&self) -> S {
        S::zero()
    }
    fn from_scalar(&self, c: &S) -> S {
        c.clone()
    }
    fn add(&self, a: &S, b: &S) -> S {
        a.clone() + b.clone()
    }
    fn mul(&self, a: &S, b: &S) -> S {
        a.clone() * b.clone()
    }
    fn is_zero(&self, a: &S) -> bool {
        a.is_zero()
    }
}

/// Untruncated polynomials in a fixed number of variables.
#[derive(Clone, Copy, Debug)]
pub struct Polynomials {
    pub nvars: usize,
}

impl<S: Scalar> CoefficientRing<S, TruncatedPolynomial<S>> for Polynomials {
    fn zero(&self) -> TruncatedPolynomial<S> {
        TruncatedPolynomial::zero(self.nvars, crate::exact_linear::UNBOUNDED)
    }
    fn from_scalar(&self, c: &S) -> TruncatedPolynomial<S> {
        TruncatedPolynomial::constant(self.nvars, crate::exact_linear::UNBOUNDED, c.clone())
    }
    fn add(&self, a: &TruncatedPolynomial<S>, b: &TruncatedPolynomial<S>) -> TruncatedPolynomial<S> {
        a + b
    }
    fn mul(&self, a: &TruncatedPolynomial<S>, b: &TruncatedPolynomial<S>) -> TruncatedPolynomial<S> {
        a * b
    }
    fn is_zero(&self, a: &TruncatedPolynomial<S>) -> bool {
        a.is_zero()
    }
}

/// Numerical invariants used to compare algebras without an isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraInvariants {
    pub dim: usize,
    pub order: u32,
    pub width: usize,
    pub filtration: Vec<usize>,
    pub der_dim: usize,
}

/// Closes `generators` under multiplication by the variables inside `R_n^L`.
pub(crate) fn saturate<S: Scalar>(
    nvars: usize,
    generators: &[TruncatedPolynomial<S>],
    bound: u32,
    basis: &MonomialBasis,
) -> Subspace<S> {
    let mut ideal = Subspace::zero(basis.len());
    let mut queue: VecDeque<TruncatedPolynomial<S>> = generators.iter().map(|g| g.retruncate(bound)).collect();
    while let Some(g) = queue.pop_front() {
        if g.is_zero() || !ideal.insert(g.to_dense(basis)) {
            continue;
        }
        for i in 0..nvars {
            let x = TruncatedPolynomial::variable(nvars, bound, i);
            let next = g.truncated_product(&x, bound).expect("same arity");
            if !next.is_zero() {
                queue.push_back(next);
            }
        }
    }
    ideal
}

impl<S: Scalar> WeilAlgebra<S> {
    /// `R[x^1..x^n] / ((generators) + m^(L+1))`.
    pub fn quotient(nvars: usize, generators: &[TruncatedPolynomial<S>], bound: u32) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableCountMismatch { expected: nvars, found: g.nvars() });
        }
        let basis = MonomialBasis::new(nvars, bound);
        let ideal = saturate(nvars, generators, bound, &basis);
        Self::from_window_ideal(nvars, &basis, &ideal)
    }

    /// Quotient by an ideal already saturated inside the window `bound`.
    pub(crate) fn from_window_ideal(nvars: usize, basis: &MonomialBasis, ideal: &Subspace<S>) -> Result<Self> {
        if ideal.pivots().first() == Some(&0) {
            return Err(Error::EmptyQuotient);
        }
        let free = ideal.non_pivots();
        let labels: Vec<MultiIndex> = free.iter().map(|&k| basis.get(k).clone()).collect();
        let d = labels.len();
        let class = |m: &MultiIndex| -> Vec<S> {
            match basis.index_of(m) {
                Some(k) => {
                    let r = ideal.reduce(&unit_vector(basis.len(), k));
                    free.iter().map(|&c| r[c].clone()).collect()
                }
                None => vec![S::zero(); d],
            }
        };
        let constants = (0..d).map(|a| (0..d).map(|b| class(&labels[a].mul(&labels[b]))).collect()).collect();
        let generator_images = (0..nvars).map(|i| class(&MultiIndex::variable(nvars, i))).collect();
        Self::assemble(nvars, labels, constants, generator_images)
    }

    /// Presentation from relations alone, detecting the truncation degree.
    ///
    /// Finds the least `L` with `m^(L+1) ⊆ (relations) + m^(L+2)`; by
    /// Nakayama the local quotient then equals the quotient in window `L`.
    pub fn from_relations(nvars: usize, relations: &[TruncatedPolynomial<S>]) -> Result<Self> {
        if let Some(g) = relations.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableCountMismatch { expected: nvars, found: g.nvars() });
        }
        if relations.iter().any(|g| !g.constant_term().is_zero()) {
            return Err(Error::EmptyQuotient);
        }
        for bound in 0..=ORDER_SEARCH_LIMIT {
            let window = MonomialBasis::new(nvars, bound + 1);
            if window.len() > WINDOW_SIZE_LIMIT {
                return Err(Error::NotFiniteDimensional { limit: bound });
            }
            let ideal = saturate(nvars, relations, bound + 1, &window);
            if window.degree_range(bound + 1).all(|k| ideal.contains(&unit_vector(window.len(), k))) {
                return Self::quotient(nvars, relations, bound);
            }
        }
        Err(Error::NotFiniteDimensional { limit: ORDER_SEARCH_LIMIT })
    }

    /// `R_m^ℓ = R[x^1..x^m] / m^(ℓ+1)`.
    pub fn classical(m: usize, order: u32) -> Self {
        Self::quotient(m, &[], order).expect("truncated polynomial rings are local")
    }

    /// The field itself, with no generators.
    pub fn reals() -> Self {
        Self::classical(0, 0)
    }

    /// Builds an algebra from a multiplication table and generator images.
    ///
    /// `constants[a][b]` is the coordinate vector of `e_a e_b`. The table must
    /// be commutative and associative with unit `e_0`, the other basis
    /// vectors must span a nilpotent ideal, and each label monomial evaluated
    /// at the generator images must give the corresponding basis vector.
    pub fn from_parts(
        nvars: usize,
        labels: Vec<MultiIndex>,
        constants: Vec<Vec<Vec<S>>>,
        generator_images: Vec<Vec<S>>,
    ) -> Result<Self> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::EmptyQuotient);
        }
        let shape_ok = constants.len() == d
            && constants.iter().all(|row| row.len() == d && row.iter().all(|v| v.len() == d))
            && generator_images.len() == nvars
            && generator_images.iter().all(|v| v.len() == d)
            && labels.iter().all(|m| m.nvars() == nvars);
        if !shape_ok {
            return Err(Error::InvalidAlgebra("table shapes do not match the basis".into()));
        }
        if labels[0].degree() != 0 {
            return Err(Error::InvalidAlgebra("first basis label must be the constant monomial".into()));
        }
        for a in 0..d {
            if constants[0][a] != unit_vector::<S>(d, a) {
                return Err(Error::InvalidAlgebra(format!("e_0 is not a unit on e_{a}")));
            }
            for b in 0..d {
                if constants[a][b] != constants[b][a] {
                    return Err(Error::InvalidAlgebra(format!("e_{a} e_{b} != e_{b} e_{a}")));
                }
                if a > 0 && b > 0 && !constants[a][b][0].is_zero() {
                    return Err(Error::InvalidAlgebra(format!("e_{a} e_{b} leaves the maximal ideal")));
                }
            }
        }
        if generator_images.iter().any(|v| !v[0].is_zero()) {
            return Err(Error::InvalidAlgebra("generator images must lie in the maximal ideal".into()));
        }
        let alg = Self::assemble(nvars, labels, constants, generator_images)?;
        for a in 1..d {
            for b in a..d {
                for c in b..d {
                    let left = alg.mul(&alg.mul(&alg.unit(a), &alg.unit(b)), &alg.unit(c));
                    let right = alg.mul(&alg.unit(a), &alg.mul(&alg.unit(b), &alg.unit(c)));
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!("(e_{a} e_{b}) e_{c} != e_{a} (e_{b} e_{c})")));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub(crate) fn assemble(
        nvars: usize,
        labels: Vec<MultiIndex>,
        constants: Vec<Vec<Vec<S>>>,
        generator_images: Vec<Vec<S>>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut alg = WeilAlgebra {
            nvars,
            window: 0,
            monomials: MonomialBasis::new(nvars, 0),
            labels,
            constants,
            generator_images,
            monomial_images: Vec::new(),
            ideal: Subspace::zero(1),
            powers: Vec::new(),
            order: 0,
            width: 0,
        };
        let mut power = Subspace::span((1..d).map(|a| unit_vector(d, a)).collect::<Vec<_>>(), d);
        let mut powers = Vec::new();
        while !power.is_zero() {
            let next = Subspace::span(
                (1..d)
                    .flat_map(|a| power.basis().iter().map(move |v| (a, v)))
                    .map(|(a, v)| alg.mul(&alg.unit(a), v))
                    .collect::<Vec<_>>(),
                d,
            );
            if next.dim() >= power.dim() {
                return Err(Error::InvalidAlgebra("maximal ideal is not nilpotent".into()));
            }
            powers.push(power);
            power = next;
        }
        alg.order = powers.len() as u32;
        alg.width = match powers.len() {
            0 => 0,
            1 => powers[0].dim(),
            _ => powers[0].dim() - powers[1].dim(),
        };
        powers.push(power);
        alg.powers = powers;
        alg.window = alg.order + 1;
        alg.monomials = MonomialBasis::new(nvars, alg.window);
        let mut images: Vec<Vec<S>> = Vec::with_capacity(alg.monomials.len());
        for m in alg.monomials.monomials() {
            let img = match m.exponents().iter().position(|&e| e > 0) {
                None => unit_vector(d, 0),
                Some(i) => {
                    let lower = alg
                        .monomials
                        .index_of(&m.lower(i).expect("positive exponent"))
                        .expect("window is downward closed");
                    alg.mul(&images[lower], &alg.generator_images[i])
                }
            };
            images.push(img);
        }
        alg.monomial_images = images;
        let rows: Vec<Vec<S>> = (0..d).map(|g| alg.monomial_images.iter().map(|v| v[g].clone()).collect()).collect();
        alg.ideal = kernel(&rows, alg.monomials.len());
        for (a, m) in alg.labels.iter().enumerate() {
            let ok = alg.monomials.index_of(m).is_some_and(|k| alg.monomial_images[k] == unit_vector::<S>(d, a));
            if !ok {
                return Err(Error::InvalidAlgebra(format!("basis label {m} does not evaluate to e_{a}")));
            }
        }
        Ok(alg)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Degree `order + 1` of the truncation window.
    pub fn window(&self) -> u32 {
        self.window
    }

    pub fn window_basis(&self) -> &MonomialBasis {
        &self.monomials
    }

    pub fn labels(&self) -> &[MultiIndex] {
        &self.labels
    }

    /// Defining ideal inside the coefficient space of `R_n^window`.
    pub fn ideal(&self) -> &Subspace<S> {
        &self.ideal
    }

    /// Ideal basis as polynomials bounded by the window.
    pub fn ideal_polynomials(&self) -> Vec<TruncatedPolynomial<S>> {
        self.ideal.basis().iter().map(|v| TruncatedPolynomial::from_dense(&self.monomials, v, self.window)).collect()
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<S>>] {
        &self.constants
    }

    /// Non-zero structure constants as `(α, β, γ, c)` with `α ≤ β`.
    pub fn structure_constants_sparse(&self) -> Vec<(usize, usize, usize, S)> {
        let d = self.dim();
        let mut out = Vec::new();
        for a in 0..d {
            for b in a..d {
                for (g, c) in self.constants[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out.push((a, b, g, c.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn generator_image(&self, i: usize) -> &[S] {
        &self.generator_images[i]
    }

    pub fn generator_images(&self) -> &[Vec<S>] {
        &self.generator_images
    }

    /// `m_A^k` as a subspace of coordinates; zero for `k > order`.
    pub fn max_ideal_power(&self, k: u32) -> Subspace<S> {
        if k == 0 {
            return Subspace::full(self.dim());
        }
        let idx = (k as usize - 1).min(self.powers.len() - 1);
        self.powers[idx].clone()
    }

    /// `[dim m, dim m^2, …, dim m^order]`.
    pub fn filtration(&self) -> Vec<usize> {
        self.powers[..self.powers.len() - 1].iter().map(Subspace::dim).collect()
    }

    /// True when this is `R_m^ℓ` up to isomorphism, i.e. the dimension bound is attained.
    pub fn is_classical(&self) -> bool {
        self.dim() as u64 == binomial(self.width as u64 + self.order as u64, self.order as u64)
    }

    pub fn zero(&self) -> Vec<S> {
        vec![S::zero(); self.dim()]
    }

    pub fn one(&self) -> Vec<S> {
        self.unit(0)
    }

    pub fn unit(&self, a: usize) -> Vec<S> {
        unit_vector(self.dim(), a)
    }

    pub fn constant(&self, c: S) -> Vec<S> {
        let mut v = self.zero();
        v[0] = c;
        v
    }

    pub fn mul(&self, a: &[S], b: &[S]) -> Vec<S> {
        self.mul_in(a, b, &Scalars)
    }

    /// Product in `A ⊗ T` where elements are coordinate vectors over `T`.
    pub fn mul_in<T: Clone, R: CoefficientRing<S, T>>(&self, a: &[T], b: &[T], ring: &R) -> Vec<T> {
        let d = self.dim();
        let mut out: Vec<T> = (0..d).map(|_| ring.zero()).collect();
        for (i, x) in a.iter().enumerate() {
            if ring.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if ring.is_zero(y) {
                    continue;
                }
                let xy = ring.mul(x, y);
                for (g, c) in self.constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[g] = ring.add(&out[g], &ring.mul(&ring.from_scalar(c), &xy));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[S], b: &[S]) -> Vec<S> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    pub fn sub(&self, a: &[S], b: &[S]) -> Vec<S> {
        a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
    }

    pub fn scale(&self, c: &S, a: &[S]) -> Vec<S> {
        a.iter().map(|x| c.clone() * x.clone()).collect()
    }

    /// Matrix of `b ↦ a b`, as rows indexed by output coordinate.
    pub fn multiplication_matrix(&self, a: &[S]) -> Vec<Vec<S>> {
        let d = self.dim();
        let cols: Vec<Vec<S>> = (0..d).map(|b| self.mul(a, &self.unit(b))).collect();
        (0..d).map(|g| cols.iter().map(|c| c[g].clone()).collect()).collect()
    }

    /// Class of a monomial; zero beyond the window.
    pub fn monomial_class(&self, m: &MultiIndex) -> Vec<S> {
        match self.monomials.index_of(m) {
            Some(k) => self.monomial_images[k].clone(),
            None => self.zero(),
        }
    }

    /// Class `[f]` of a polynomial in the generators.
    pub fn class_of(&self, f: &TruncatedPolynomial<S>) -> Vec<S> {
        assert_eq!(f.nvars(), self.nvars, "polynomial arity");
        let mut out = self.zero();
        for (m, c) in f.terms() {
            if let Some(k) = self.monomials.index_of(m) {
                for (o, x) in out.iter_mut().zip(&self.monomial_images[k]) {
                    if !x.is_zero() {
                        *o = o.clone() + c.clone() * x.clone();
                    }
                }
            }
        }
        out
    }

    /// Whether `f` lies in the defining ideal.
    pub fn kills(&self, f: &TruncatedPolynomial<S>) -> bool {
        self.class_of(f).iter().all(|x| x.is_zero())
    }

    /// `Σ a_α label_α`, a polynomial representative of `a`.
    pub fn lift(&self, a: &[S]) -> TruncatedPolynomial<S> {
        TruncatedPolynomial::from_terms(self.nvars, self.window, self.labels.iter().cloned().zip(a.iter().cloned()))
    }

    /// `f(images)` computed with the multiplication table of `A ⊗ T`.
    pub fn eval_in<T: Clone, R: CoefficientRing<S, T>>(
        &self,
        f: &TruncatedPolynomial<S>,
        images: &[Vec<T>],
        ring: &R,
    ) -> Vec<T> {
        assert_eq!(f.nvars(), images.len(), "one image per variable");
        let d = self.dim();
        let mut powers: Vec<Vec<Vec<T>>> = images
            .iter()
            .map(|img| {
                let mut one: Vec<T> = (0..d).map(|_| ring.zero()).collect();
                one[0] = ring.from_scalar(&S::one());
                vec![one, img.clone()]
            })
            .collect();
        let mut out: Vec<T> = (0..d).map(|_| ring.zero()).collect();
        for (m, c) in f.terms() {
            let mut term: Vec<T> = (0..d).map(|_| ring.zero()).collect();
            term[0] = ring.from_scalar(c);
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = self.mul_in(powers[v].last().unwrap(), &powers[v][1], ring);
                    powers[v].push(next);
                }
                term = self.mul_in(&term, &powers[v][e as usize], ring);
            }
            for (o, t) in out.iter_mut().zip(&term) {
                *o = ring.add(o, t);
            }
        }
        out
    }

    /// `f(images)` for scalar coordinate images.
    pub fn eval(&self, f: &TruncatedPolynomial<S>, images: &[Vec<S>]) -> Vec<S> {
        self.eval_in(f, images, &Scalars)
    }

    /// `A / I` for an ideal `I` given in coordinates.
    pub fn quotient_by(&self, ideal: &Subspace<S>) -> Result<Self> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let mut gens = self.ideal_polynomials();
        gens.extend(ideal.basis().iter().map(|v| self.lift(v)));
        Self::quotient(self.nvars, &gens, self.window)
    }

    /// Whether a coordinate subspace is closed under multiplication by the generators.
    pub fn is_ideal(&self, ideal: &Subspace<S>) -> bool {
        ideal.ambient() == self.dim()
            && ideal.basis().iter().all(|v| self.generator_images.iter().all(|g| ideal.contains(&self.mul(g, v))))
    }

    pub fn invariants(&self) -> AlgebraInvariants {
        AlgebraInvariants {
            dim: self.dim(),
            order: self.order,
            width: self.width,
            filtration: self.filtration(),
            der_dim: self.derivations().dim(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::parse_polynomial;
    use num_rational::BigRational;

    type Q = BigRational;
    type A = WeilAlgebra<Q>;

    fn polys(texts: &[&str], n: usize) -> Vec<TruncatedPolynomial<Q>> {
        texts.iter().map(|t| parse_polynomial(t, n).unwrap()).collect()
    }

    fn mono(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn dual_numbers() {
        let a = A::quotient(1, &polys(&["x^2"], 1), 2).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.labels(), &[mono(&[0]), mono(&[1])]);
        assert_eq!((a.order(), a.width()), (1, 1));
        assert_eq!(a.window(), 2);
    }

    #[test]
    fn two_squares() {
        let a = A::quotient(2, &polys(&["x^2", "y^2"], 2), 3).unwrap();
        assert_eq!(a.labels(), &[mono(&[0, 0]), mono(&[1, 0]), mono(&[0, 1]), mono(&[1, 1])]);
        assert_eq!((a.order(), a.width()), (2, 2));
        // brute-force products of basis pairs inside m
        let mut m2 = Subspace::zero(4);
        for i in 1..4 {
            for j in 1..4 {
                m2.insert(a.mul(&a.unit(i), &a.unit(j)));
            }
        }
        assert_eq!(m2, Subspace::span(vec![a.unit(3)], 4));
        assert_eq!(a.max_ideal_power(2), m2);
        assert!(a.max_ideal_power(3).is_zero());
        assert_eq!(a.filtration(), vec![3, 1]);
    }

    #[test]
    fn truncated_rings() {
        for m in 0..=3 {
            for l in 0..=4 {
                let a = A::classical(m, l);
                assert_eq!(a.dim() as u64, binomial((m as u64) + l as u64, l as u64));
                assert_eq!(a.order(), if m == 0 { 0 } else { l });
                assert!(a.is_classical());
            }
        }
        let r = A::reals();
        assert_eq!((r.dim(), r.order(), r.width()), (1, 0, 0));
    }

    #[test]
    fn unit_generator_is_rejected() {
        assert!(matches!(A::quotient(1, &polys(&["1 + x"], 1), 2), Err(Error::EmptyQuotient)));
        assert!(matches!(A::from_relations(1, &polys(&["1 + x"], 1)), Err(Error::EmptyQuotient)));
    }

    #[test]
    fn relations_detect_the_window() {
        let a = A::from_relations(2, &polys(&["x^2", "y^2"], 2)).unwrap();
        assert_eq!(a, A::quotient(2, &polys(&["x^2", "y^2"], 2), 5).unwrap());
        let b = A::from_relations(2, &polys(&["y - x^2", "x^3"], 2)).unwrap();
        assert_eq!((b.dim(), b.order(), b.width()), (3, 2, 1));
        assert!(matches!(A::from_relations(2, &polys(&["x^2"], 2)), Err(Error::NotFiniteDimensional { .. })));
    }

    #[test]
    fn presentation_is_minimal() {
        let big = A::quotient(1, &polys(&["x^2"], 1), 6).unwrap();
        let small = A::quotient(1, &polys(&["x^2"], 1), 2).unwrap();
        assert_eq!(big, small);
    }

    #[test]
    fn non_monomial_relation() {
        let a = A::quotient(2, &polys(&["y - x^2"], 2), 2).unwrap();
        assert_eq!(a.labels(), &[mono(&[0, 0]), mono(&[1, 0]), mono(&[2, 0])]);
        assert_eq!(a.class_of(&parse_polynomial("y", 2).unwrap()), a.unit(2));
    }

    #[test]
    fn evaluation_is_multiplicative() {
        let a = A::quotient(2, &polys(&["x^2", "y^2"], 2), 3).unwrap();
        let f = parse_polynomial::<Q>("1 + x - 2 y + x y", 2).unwrap();
        let g = parse_polynomial::<Q>("3 - x y + y", 2).unwrap();
        let imgs = vec![a.add(&a.constant(Q::from_integer(2.into())), &a.unit(1)), a.unit(2)];
        let fg = &f * &g;
        assert_eq!(a.eval(&fg, &imgs), a.mul(&a.eval(&f, &imgs), &a.eval(&g, &imgs)));
    }

    #[test]
    fn from_parts_rejects_bad_tables() {
        let a = A::classical(1, 1);
        let mut c = a.structure_constants().to_vec();
        c[1][1][0] = Q::from_integer(1.into());
        let r = A::from_parts(1, a.labels().to_vec(), c, a.generator_images().to_vec());
        assert!(matches!(r, Err(Error::InvalidAlgebra(_))));
        let ok = A::from_parts(1, a.labels().to_vec(), a.structure_constants().to_vec(), a.generator_images().to_vec());
        assert_eq!(ok.unwrap(), a);
    }
}
