use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A linear subspace of `S^n`, stored as its reduced row-echelon basis.
///
/// Rows are in reduced row-echelon form with strictly increasing pivots, so
/// two subspaces are equal iff their stored bases are identical.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace<S> {
    ambient: usize,
    rows: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit_vector(ambient, i)).collect();
        Subspace { ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Canonical basis of the span of `vectors`.
    pub fn from_vectors<V: AsRef<[S]>>(vectors: impl IntoIterator<Item = V>, ambient: usize) -> Result<Self> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            let v = v.as_ref();
            if v.len() != ambient {
                return Err(Error::DimensionMismatch { expected: ambient, found: v.len() });
            }
            s.insert(v.to_vec());
        }
        Ok(s)
    }

    /// Span of vectors already known to have the right length.
    pub(crate) fn span(vectors: impl IntoIterator<Item = Vec<S>>, ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            debug_assert_eq!(v.len(), ambient);
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates that are not pivots, ascending.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient - self.dim());
        let mut k = 0;
        for c in 0..self.ambient {
            if k < self.pivots.len() && self.pivots[k] == c {
                k += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let c = v[p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.clone() - c.clone() * r.clone();
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<S>) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = x.clone() * inv.clone();
            }
        }
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let c = row[p].clone();
            for (r, x) in row.iter_mut().zip(&v) {
                if !x.is_zero() {
                    *r = r.clone() - c.clone() * x.clone();
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn contains(&self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient mismatch");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Coefficients of `v` on the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn contains_subspace(&self, other: &Self) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|r| self.contains(r)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        Ok(s)
    }

    /// Intersection through the kernel of `(a, b) ↦ Σ a_i u_i − Σ b_j v_j`.
    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let du = self.dim();
        let cols = du + other.dim();
        let stacked: Vec<Vec<S>> = (0..self.ambient)
            .map(|k| {
                let mut row = Vec::with_capacity(cols);
                row.extend(self.rows.iter().map(|u| u[k].clone()));
                row.extend(other.rows.iter().map(|v| -v[k].clone()));
                row
            })
            .collect();
        let ker = kernel(&stacked, cols);
        let vectors = ker.rows.iter().map(|ab| combine(&self.rows, &ab[..du], self.ambient));
        Ok(Self::span(vectors, self.ambient))
    }

    /// `dim self − dim sub`, requiring `sub ⊆ self`.
    pub fn quotient_dimension(&self, sub: &Self) -> Result<usize> {
        if !self.contains_subspace(sub)? {
            return Err(Error::NotASubspace);
        }
        Ok(self.dim() - sub.dim())
    }

    /// `{w : ⟨w, v⟩ = 0 for all v in self}`.
    pub fn annihilator(&self) -> Self {
        kernel(&self.rows, self.ambient)
    }

    /// Image under the linear map `v ↦ map(v)` into `S^target`.
    pub fn image(&self, target: usize, map: impl Fn(&[S]) -> Vec<S>) -> Self {
        Self::span(self.rows.iter().map(|r| map(r)), target)
    }

    /// Canonical basis vectors of a complement of `sub` inside `self`.
    pub fn complement_basis(&self, sub: &Self) -> Vec<Vec<S>> {
        let mut acc = sub.clone();
        self.rows.iter().filter(|r| acc.insert((*r).clone())).cloned().collect()
    }
}

/// Query kinds offered on subspaces.
#[derive(Clone, Debug)]
pub enum SubspaceQuery<'a, S> {
    Sum(&'a Subspace<S>),
    Intersection(&'a Subspace<S>),
    ContainsVector(&'a [S]),
    ContainsSubspace(&'a Subspace<S>),
    QuotientDimension(&'a Subspace<S>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum SubspaceAnswer<S> {
    Subspace(Subspace<S>),
    Boolean(bool),
    Integer(usize),
}

/// Single entry point for the subspace queries.
pub fn subspace_query<S: Scalar>(u: &Subspace<S>, query: SubspaceQuery<'_, S>) -> Result<SubspaceAnswer<S>> {
    Ok(match query {
        SubspaceQuery::Sum(v) => SubspaceAnswer::Subspace(u.sum(v)?),
        SubspaceQuery::Intersection(v) => SubspaceAnswer::Subspace(u.intersection(v)?),
        SubspaceQuery::ContainsVector(v) => {
            if v.len() != u.ambient() {
                return Err(Error::DimensionMismatch { expected: u.ambient(), found: v.len() });
            }
            SubspaceAnswer::Boolean(u.contains(v))
        }
        SubspaceQuery::ContainsSubspace(v) => SubspaceAnswer::Boolean(u.contains_subspace(v)?),
        SubspaceQuery::QuotientDimension(v) => SubspaceAnswer::Integer(u.quotient_dimension(v)?),
    })
}

pub fn unit_vector<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

/// `Σ coeffs_i vectors_i`.
pub fn combine<S: Scalar>(vectors: &[Vec<S>], coeffs: &[S], ambient: usize) -> Vec<S> {
    let mut out = vec![S::zero(); ambient];
    for (v, c) in vectors.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.clone() + c.clone() * x.clone();
            }
        }
    }
    out
}

/// Null space `{v : M v = 0}` of a matrix given by rows of length `ncols`.
pub fn kernel<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Subspace<S> {
    let rref = Subspace::span(rows.iter().cloned(), ncols);
    let vectors = rref.non_pivots().into_iter().map(|f| {
        let mut v = vec![S::zero(); ncols];
        v[f] = S::one();
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            v[p] = -row[f].clone();
        }
        v
    });
    Subspace::span(vectors.collect::<Vec<_>>(), ncols)
}

/// Some solution of `M x = b`, if one exists.
pub fn solve<S: Scalar>(rows: &[Vec<S>], rhs: &[S], ncols: usize) -> Option<Vec<S>> {
    assert_eq!(rows.len(), rhs.len());
    let augmented = rows.iter().zip(rhs).map(|(r, b)| {
        let mut a = r.clone();
        a.push(b.clone());
        a
    });
    let rref = Subspace::span(augmented.collect::<Vec<_>>(), ncols + 1);
    if rref.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![S::zero(); ncols];
    for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
        x[p] = row[ncols].clone();
    }
    Some(x)
}

/// Rank of a matrix given by rows.
pub fn rank<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> usize {
    Subspace::span(rows.iter().cloned(), ncols).dim()
}

/// `M v`.
pub fn mat_vec<S: Scalar>(rows: &[Vec<S>], v: &[S]) -> Vec<S> {
    rows.iter()
        .map(|r| {
            r.iter().zip(v).fold(
                S::zero(),
                |acc, (a, b)| {
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc + a.clone() * b.clone()
                    }
                },
            )
        })
        .collect()
}

/// `A B` for row-major matrices.
pub fn mat_mul<S: Scalar>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| row.iter().zip(b).fold(S::zero(), |acc, (x, brow)| acc + x.clone() * brow[j].clone()))
                .collect()
        })
        .collect()
}

/// Inverse of a square matrix, if invertible.
pub fn invert<S: Scalar>(m: &[Vec<S>]) -> Option<Vec<Vec<S>>> {
    let n = m.len();
    let augmented: Vec<Vec<S>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend(unit_vector::<S>(n, i));
            a
        })
        .collect();
    let rref = Subspace::span(augmented, 2 * n);
    if rref.dim() != n || rref.pivots.iter().enumerate().any(|(i, &p)| p != i) {
        return None;
    }
    Some(rref.rows.iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    fn vecq(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn span(vs: &[&[i64]], n: usize) -> Subspace<Q> {
        Subspace::from_vectors(vs.iter().map(|v| vecq(v)), n).unwrap()
    }

    /// Determinant by cofactor expansion; independent of elimination.
    fn det(m: &[Vec<Q>]) -> Q {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut total = q(0);
        for j in 0..m.len() {
            let minor: Vec<Vec<Q>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = m[0][j].clone() * det(&minor);
            total = if j % 2 == 0 { total + term } else { total - term };
        }
        total
    }

    #[test]
    fn canonical_basis_examples() {
        let s = span(&[&[1, 1], &[2, 2]], 2);
        assert_eq!(s.basis(), &[vecq(&[1, 1])]);
        assert_eq!(Subspace::<Q>::from_vectors(Vec::<Vec<Q>>::new(), 3).unwrap().dim(), 0);
        let rows = [vecq(&[0, 1, 1]), vecq(&[1, 0, 1]), vecq(&[1, 1, 0])];
        assert_eq!(det(&rows), q(2));
        let s = Subspace::from_vectors(rows.iter(), 3).unwrap();
        assert_eq!(s, Subspace::full(3));
    }

    #[test]
    fn canonical_basis_rejects_mismatched_lengths() {
        let r = Subspace::from_vectors([vecq(&[1, 0]), vecq(&[1, 0, 0])], 2);
        assert!(matches!(r, Err(Error::DimensionMismatch { expected: 2, found: 3 })));
    }

    #[test]
    fn query_examples() {
        let e1 = span(&[&[1, 0]], 2);
        let e2 = span(&[&[0, 1]], 2);
        assert!(e1.intersection(&e2).unwrap().is_zero());
        assert_eq!(e1.sum(&span(&[&[1, 1]], 2)).unwrap(), Subspace::full(2));

        let u = span(&[&[1, 1, 0], &[0, 0, 1]], 3);
        let v = span(&[&[1, 1, 1]], 3);
        let meet = u.intersection(&v).unwrap();
        assert_eq!(meet, v);
        // brute force: which small combinations of u's basis land in v
        let mut found = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                let w = vecq(&[a, a, b]);
                if v.contains(&w) && (a, b) != (0, 0) {
                    found.push((a, b));
                }
            }
        }
        assert!(found.iter().all(|&(a, b)| a == b));
        assert!(found.iter().all(|&(a, b)| meet.contains(&vecq(&[a, a, b]))));
    }

    #[test]
    fn query_errors() {
        let a = span(&[&[1, 0]], 2);
        let b = span(&[&[1, 0, 0]], 3);
        assert!(a.sum(&b).is_err());
        assert!(a.intersection(&b).is_err());
        let c = span(&[&[0, 1]], 2);
        assert!(matches!(a.quotient_dimension(&c), Err(Error::NotASubspace)));
        assert_eq!(Subspace::full(2).quotient_dimension(&c).unwrap(), 1);
        assert!(matches!(
            subspace_query(&a, SubspaceQuery::ContainsVector(&vecq(&[1]))),
            Err(Error::DimensionMismatch { .. })
        ));
        assert_eq!(subspace_query(&a, SubspaceQuery::ContainsSubspace(&c)).unwrap(), SubspaceAnswer::Boolean(false));
    }

    #[test]
    fn solve_and_invert() {
        let m = vec![vecq(&[2, 1]), vecq(&[1, 1])];
        let x = solve(&m, &vecq(&[3, 2]), 2).unwrap();
        assert_eq!(x, vecq(&[1, 1]));
        assert!(solve(&[vecq(&[1, 1]), vecq(&[2, 2])], &vecq(&[1, 3]), 2).is_none());
        let inv = invert(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), vec![vecq(&[1, 0]), vecq(&[0, 1])]);
        assert!(invert(&[vecq(&[1, 2]), vecq(&[2, 4])]).is_none());
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(&[vecq(&[1, 2, 3])], 3);
        assert_eq!(k.dim(), 2);
        for v in k.basis() {
            assert_eq!(mat_vec(&[vecq(&[1, 2, 3])], v), vecq(&[0]));
        }
    }
}
