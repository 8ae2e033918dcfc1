use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::{MonomialBasis, MultiIndex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Bound used for polynomials that are not truncated at all.
pub const UNBOUNDED: u32 = u32::MAX;

/// An element of `R[x^1..x^n] / (x)^(L+1)`, stored sparsely.
///
/// No stored coefficient is zero and every stored monomial has degree at most
/// the bound. A bound of [`UNBOUNDED`] means an ordinary polynomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedPolynomial<S> {
    nvars: usize,
    bound: u32,
    terms: BTreeMap<MultiIndex, S>,
}

impl<S: Scalar> TruncatedPolynomial<S> {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        TruncatedPolynomial { nvars, bound, terms: BTreeMap::new() }
    }

    /// An untruncated polynomial from `(monomial, coefficient)` pairs.
    pub fn from_terms(nvars: usize, bound: u32, terms: impl IntoIterator<Item = (MultiIndex, S)>) -> Self {
        let mut p = Self::zero(nvars, bound);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn constant(nvars: usize, bound: u32, c: S) -> Self {
        Self::from_terms(nvars, bound, [(MultiIndex::zero(nvars), c)])
    }

    pub fn one(nvars: usize, bound: u32) -> Self {
        Self::constant(nvars, bound, S::one())
    }

    pub fn variable(nvars: usize, bound: u32, var: usize) -> Self {
        Self::from_terms(nvars, bound, [(MultiIndex::variable(nvars, var), S::one())])
    }

    pub fn monomial(m: MultiIndex, bound: u32) -> Self {
        let n = m.nvars();
        Self::from_terms(n, bound, [(m, S::one())])
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &S)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &MultiIndex) -> S {
        self.terms.get(m).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    /// Largest degree of a stored term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    /// Smallest degree of a stored term.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).min()
    }

    /// Adds `c * m`, dropping it when beyond the bound.
    pub fn add_term(&mut self, m: MultiIndex, c: S) {
        if m.degree() > self.bound || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Same element read in `R_n^L`: drops terms above `L` and sets the bound.
    pub fn retruncate(&self, bound: u32) -> Self {
        let terms =
            self.terms.iter().filter(|(m, _)| m.degree() <= bound).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncatedPolynomial { nvars: self.nvars, bound, terms }
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect();
        TruncatedPolynomial { nvars: self.nvars, bound: self.bound, terms }
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars, self.bound);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v.clone() * c.clone())).collect();
        TruncatedPolynomial { nvars: self.nvars, bound: self.bound, terms }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCountMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// Convolution of coefficients, discarding every monomial of degree above `bound`.
    pub fn truncated_product(&self, other: &Self, bound: u32) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(self.nvars, bound);
        for (ma, ca) in &self.terms {
            if ma.degree() > bound {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > bound {
                    continue;
                }
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32, bound: u32) -> Self {
        let mut acc = Self::one(self.nvars, bound);
        for _ in 0..e {
            acc = acc.truncated_product(self, bound).expect("same arity");
        }
        acc
    }

    /// `f(σ^1, …, σ^n)` truncated at `bound`.
    ///
    /// With `coordinate_change` set, every image must have zero constant term.
    pub fn truncated_substitute(&self, images: &[Self], bound: u32, coordinate_change: bool) -> Result<Self> {
        if images.len() != self.nvars {
            return Err(Error::VariableCountMismatch { expected: self.nvars, found: images.len() });
        }
        let target = images.first().map(|p| p.nvars);
        if let Some(t) = target {
            if let Some(bad) = images.iter().find(|p| p.nvars != t) {
                return Err(Error::VariableCountMismatch { expected: t, found: bad.nvars });
            }
        }
        if coordinate_change {
            if let Some(i) = images.iter().position(|p| !p.constant_term().is_zero()) {
                return Err(Error::ConstantTermInCoordinateChange { index: i });
            }
        }
        let target = match target {
            Some(t) => t,
            // substitution of a polynomial in zero variables
            None => return Ok(Self::constant(0, bound, self.constant_term()).retruncate(bound)),
        };
        let mut powers: Vec<Vec<Self>> =
            images.iter().map(|p| vec![Self::one(target, bound), p.retruncate(bound)]).collect();
        let mut out = Self::zero(target, bound);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, bound, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = powers[v].last().unwrap().truncated_product(&powers[v][1], bound)?;
                    powers[v].push(next);
                }
                term = term.truncated_product(&powers[v][e as usize], bound)?;
                if term.is_zero() {
                    break;
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.nvars, self.bound);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if let Some(lower) = m.lower(var) {
                out.add_term(lower, c.clone() * S::from_int(e as i64));
            }
        }
        out
    }

    /// `Σ a^i ∂f/∂x^i` truncated at `bound`.
    pub fn apply_field(&self, coefficients: &[Self], bound: u32) -> Self {
        let mut out = Self::zero(self.nvars, bound);
        for (i, a) in coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let d = self.partial_derivative(i);
            out = &out + &a.truncated_product(&d, bound).expect("same arity");
        }
        out
    }

    pub fn evaluate(&self, point: &[S]) -> S {
        assert_eq!(point.len(), self.nvars, "point arity");
        let mut total = S::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            total = total + t;
        }
        total
    }

    /// `f(x + shift)`, exact.
    pub fn translate(&self, shift: &[S]) -> Self {
        let n = self.nvars;
        let images: Vec<Self> = (0..n)
            .map(|i| &Self::variable(n, UNBOUNDED, i) + &Self::constant(n, UNBOUNDED, shift[i].clone()))
            .collect();
        let bound = self.degree().unwrap_or(0);
        let out = self.truncated_substitute(&images, bound, false).expect("consistent arity");
        TruncatedPolynomial { bound: self.bound, ..out }
    }

    /// Renames variable `i` to `map[i]` in a ring with `nvars` variables.
    pub fn remap_variables(&self, nvars: usize, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(nvars, self.bound);
        for (m, c) in &self.terms {
            let mut e = vec![0; nvars];
            for (i, &x) in m.exponents().iter().enumerate() {
                e[map[i]] += x;
            }
            out.add_term(MultiIndex::new(e), c.clone());
        }
        out
    }

    /// Coefficients on the given window basis; terms outside the window are dropped.
    pub fn to_dense(&self, basis: &MonomialBasis) -> Vec<S> {
        let mut v = vec![S::zero(); basis.len()];
        for (m, c) in &self.terms {
            if let Some(i) = basis.index_of(m) {
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn from_dense(basis: &MonomialBasis, coords: &[S], bound: u32) -> Self {
        assert_eq!(coords.len(), basis.len());
        let mut p = Self::zero(basis.nvars(), bound);
        for (i, c) in coords.iter().enumerate() {
            p.add_term(basis.get(i).clone(), c.clone());
        }
        p
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, names }
    }
}

/// `x, y, z` for up to three variables, `x1..xn` beyond.
pub fn default_variable_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub struct PolyDisplay<'a, S> {
    poly: &'a TruncatedPolynomial<S>,
    names: &'a [String],
}

impl<S: Scalar> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.poly.terms.iter().enumerate() {
            let negative = c.is_negative_value();
            let abs = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.names[v].clone()),
                    _ => factors.push(format!("{}^{}", self.names[v], e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", abs.to_ratio_string())?;
            } else {
                if !abs.is_one() {
                    write!(f, "{} ", abs.to_ratio_string())?;
                }
                write!(f, "{}", factors.join(" "))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Display for TruncatedPolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_variable_names(self.nvars);
        write!(f, "{}", self.display_with(&names))
    }
}

impl<S: Scalar> Add for &TruncatedPolynomial<S> {
    type Output = TruncatedPolynomial<S>;

    fn add(self, rhs: Self) -> TruncatedPolynomial<S> {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.retruncate(self.bound.min(rhs.bound));
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<S: Scalar> Sub for &TruncatedPolynomial<S> {
    type Output = TruncatedPolynomial<S>;

    fn sub(self, rhs: Self) -> TruncatedPolynomial<S> {
        self + &(-rhs)
    }
}

impl<S: Scalar> Neg for &TruncatedPolynomial<S> {
    type Output = TruncatedPolynomial<S>;

    fn neg(self) -> TruncatedPolynomial<S> {
        self.scale(&-S::one())
    }
}

impl<S: Scalar> Mul for &TruncatedPolynomial<S> {
    type Output = TruncatedPolynomial<S>;

    /// Product in the ring with the smaller bound.
    fn mul(self, rhs: Self) -> TruncatedPolynomial<S> {
        let bound = self.bound.min(rhs.bound);
        self.truncated_product(rhs, bound).expect("variable count mismatch")
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr for TruncatedPolynomial<S> {
            type Output = TruncatedPolynomial<S>;

            fn $method(self, rhs: Self) -> TruncatedPolynomial<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
