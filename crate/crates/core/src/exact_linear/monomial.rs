use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

/// Exponent vector of a monomial.
///
/// Ordered by total degree first; within a degree, the index with the larger
/// exponent in the lowest-numbered variable comes first, so in two variables
/// the order reads `1, x, y, x^2, xy, y^2, ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex {
    exponents: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        MultiIndex { exponents, degree }
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex { exponents: vec![0; nvars], degree: 0 }
    }

    /// The monomial `x^var`.
    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        MultiIndex { exponents: e, degree: 1 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exponents.len()
    }

    pub fn mul(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        MultiIndex { exponents, degree: self.degree + other.degree }
    }

    /// `self / x^var`, when `x^var` divides.
    pub fn lower(&self, var: usize) -> Option<MultiIndex> {
        if self.exponents[var] == 0 {
            return None;
        }
        let mut e = self.exponents.clone();
        e[var] -= 1;
        Some(MultiIndex { exponents: e, degree: self.degree - 1 })
    }

    pub fn raise(&self, var: usize) -> MultiIndex {
        let mut e = self.exponents.clone();
        e[var] += 1;
        MultiIndex { exponents: e, degree: self.degree + 1 }
    }

    /// Concatenation `(self, other)` as a monomial in disjoint variables.
    pub fn concat(&self, other: &MultiIndex) -> MultiIndex {
        let mut e = self.exponents.clone();
        e.extend_from_slice(&other.exponents);
        MultiIndex { exponents: e, degree: self.degree + other.degree }
    }

    /// Keeps the exponents of the given variables, in order.
    pub fn restrict(&self, vars: &[usize]) -> MultiIndex {
        MultiIndex::new(vars.iter().map(|&v| self.exponents[v]).collect())
    }

    pub fn is_divisible_by(&self, other: &MultiIndex) -> bool {
        self.exponents.iter().zip(&other.exponents).all(|(a, b)| a >= b)
    }

    /// `λ!` as an integer.
    pub fn factorial(&self) -> u64 {
        self.exponents.iter().map(|&e| (1..=e as u64).product::<u64>()).product()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| other.exponents.cmp(&self.exponents))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// All monomials in `nvars` variables of degree at most `max_degree`, sorted,
/// together with a lookup from monomial to coordinate index.
///
/// This fixes the coordinate layout of the truncated ring `R_n^L`.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    nvars: usize,
    max_degree: u32,
    monomials: Vec<MultiIndex>,
    index: HashMap<MultiIndex, usize>,
}

impl PartialEq for MonomialBasis {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.max_degree == other.max_degree
    }
}

impl Eq for MonomialBasis {}

impl MonomialBasis {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        let mut monomials = Vec::new();
        for d in 0..=max_degree {
            let mut of_degree = Vec::new();
            homogeneous(nvars, d, &mut vec![0; nvars], 0, &mut of_degree);
            of_degree.sort();
            monomials.extend(of_degree);
        }
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { nvars, max_degree, monomials, index }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[MultiIndex] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &MultiIndex {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &MultiIndex) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinate indices of monomials of exactly degree `d`.
    pub fn degree_range(&self, d: u32) -> std::ops::Range<usize> {
        let start = self.monomials.partition_point(|m| m.degree() < d);
        let end = self.monomials.partition_point(|m| m.degree() <= d);
        start..end
    }
}

fn homogeneous(nvars: usize, remaining: u32, cur: &mut Vec<u32>, var: usize, out: &mut Vec<MultiIndex>) {
    if nvars == 0 {
        if remaining == 0 {
            out.push(MultiIndex::new(Vec::new()));
        }
        return;
    }
    if var == nvars - 1 {
        cur[var] = remaining;
        out.push(MultiIndex::new(cur.clone()));
        cur[var] = 0;
        return;
    }
    for e in 0..=remaining {
        cur[var] = e;
        homogeneous(nvars, remaining - e, cur, var + 1, out);
    }
    cur[var] = 0;
}

/// `C(n, k)` for small arguments.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
