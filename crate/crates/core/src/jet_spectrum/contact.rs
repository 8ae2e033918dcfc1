use super::derived::derived_jet;
use super::jet::{hat_ideal, Jet};
use crate::error::{Error, Result};
use crate::exact_linear::{Subspace, TruncatedPolynomial};
use crate::scalar::Scalar;
use crate::weil_core::WeilAlgebra;

/// Quotient map `A → A′` for `p ⊆ p′`, as the `A′`-class of each basis label of `A`.
pub fn projection_columns<S: Scalar>(p: &Jet<S>, coarser: &Jet<S>) -> Vec<Vec<S>> {
    let target = coarser.algebra();
    p.algebra()
        .labels()
        .iter()
        .map(|m| target.class_of(&TruncatedPolynomial::monomial(m.clone(), crate::exact_linear::UNBOUNDED)))
        .collect()
}

fn project<S: Scalar>(columns: &[Vec<S>], target_dim: usize, a: &[S]) -> Vec<S> {
    let mut out = vec![S::zero(); target_dim];
    for (x, col) in a.iter().zip(columns) {
        if x.is_zero() {
            continue;
        }
        for (o, c) in out.iter_mut().zip(col) {
            if !c.is_zero() {
                *o = o.clone() + x.clone() * c.clone();
            }
        }
    }
    out
}

/// `π_*` on tuples: `A^n → A′^n`, componentwise.
fn project_tuple<S: Scalar>(columns: &[Vec<S>], d: usize, target_dim: usize, v: &[S]) -> Vec<S> {
    v.chunks(d.max(1)).take(v.len() / d.max(1)).flat_map(|c| project(columns, target_dim, c)).collect()
}

/// Real-valued functionals on `A^n`: the `A′`-components of `v ↦ π(Σ [∂_i f] v_i)`.
fn contact_functionals<S: Scalar>(
    p: &Jet<S>,
    columns: &[Vec<S>],
    target: &WeilAlgebra<S>,
    f: &TruncatedPolynomial<S>,
) -> Vec<Vec<S>> {
    let a = p.algebra();
    let d = a.dim();
    let e = target.dim();
    let mut out = vec![vec![S::zero(); p.nvars() * d]; e];
    for (i, g) in p.gradient_classes(f).iter().enumerate() {
        if g.iter().all(|x| x.is_zero()) {
            continue;
        }
        for beta in 0..d {
            let image = project(columns, e, &a.mul(g, &a.unit(beta)));
            for (gamma, x) in image.into_iter().enumerate() {
                out[gamma][i * d + beta] = x;
            }
        }
    }
    out
}

/// Contact and Cartan systems at a jet, in the tuple model `A^n` of `T_pM`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContactData<S> {
    pub jet: Jet<S>,
    pub derived: Jet<S>,
    /// Columns of `π: A → A′`.
    pub projection: Vec<Vec<S>>,
    /// Span of the real components of every `d′_p f`, as functionals on `A^n`.
    pub omega: Subspace<S>,
    /// Annihilator of `omega` in `A^n`; contains the relations.
    pub cartan: Subspace<S>,
    /// `Der(A, A)` inside `A^n`.
    pub relations: Subspace<S>,
    pub rank: usize,
    pub tangent_dim: usize,
    /// `dim C_p` as a subspace of `T_pM`.
    pub cartan_dim: usize,
    /// `ker π_* ⊆ C_p`.
    pub kernel_in_cartan: bool,
    /// `π_*` maps `Der(A, A)` into `Der(A′, A′)`.
    pub derivations_descend: bool,
}

pub fn contact_and_cartan<S: Scalar>(p: &Jet<S>) -> Result<ContactData<S>> {
    let derived = derived_jet(p)?;
    contact_with(p, derived)
}

pub(crate) fn contact_with<S: Scalar>(p: &Jet<S>, derived: Jet<S>) -> Result<ContactData<S>> {
    let a = p.algebra();
    let n = p.nvars();
    let d = a.dim();
    let target = derived.algebra();
    let e = target.dim();
    let columns = projection_columns(p, &derived);

    let mut omega = Subspace::zero(n * d);
    for f in p.generators() {
        for row in contact_functionals(p, &columns, target, &f) {
            omega.insert(row);
        }
    }
    let relations = a.derivations().as_subspace().clone();
    let cartan = omega.annihilator();
    if !cartan.contains_subspace(&relations)? {
        return Err(Error::Internal("contact forms do not vanish on the derivations".into()));
    }

    let target_relations = target.derivations().as_subspace().clone();
    let pushed = relations.image(n * e, |v| project_tuple(&columns, d, e, v));
    let derivations_descend = target_relations.contains_subspace(&pushed)?;

    // ker π_* = {v : π(v) ∈ Der(A′)}, cut out by the annihilator of Der(A′) pulled back.
    let pulled: Vec<Vec<S>> = target_relations
        .annihilator()
        .basis()
        .iter()
        .map(|phi| {
            (0..n * d)
                .map(|k| {
                    let image = project_tuple(&columns, d, e, &crate::exact_linear::unit_vector(n * d, k));
                    image.iter().zip(phi).fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
                })
                .collect()
        })
        .collect();
    let kernel = crate::exact_linear::kernel(&pulled, n * d);
    let kernel_in_cartan = cartan.contains_subspace(&kernel)?;

    let tangent_dim = n * d - relations.dim();
    Ok(ContactData {
        jet: p.clone(),
        rank: omega.dim(),
        cartan_dim: cartan.dim() - relations.dim(),
        tangent_dim,
        derived,
        projection: columns,
        omega,
        cartan,
        relations,
        kernel_in_cartan,
        derivations_descend,
    })
}

impl<S: Scalar> ContactData<S> {
    /// `π_*` applied to a tuple of `A^n`.
    pub fn push(&self, v: &[S]) -> Vec<S> {
        project_tuple(&self.projection, self.jet.algebra().dim(), self.derived.algebra().dim(), v)
    }
}

/// The Taylor map at `p`: `π_* C_p ⊆ T_{p′}M`.
#[derive(Clone, Debug, PartialEq)]
pub struct TaylorData<S> {
    pub contact: ContactData<S>,
    /// `π_*(C_p) + Der(A′, A′)` in `A′^n`.
    pub image: Subspace<S>,
    /// `dim π_* C_p` in `T_{p′}M`.
    pub image_dim: usize,
    /// `p̂′ ⊆ p`.
    pub taylor_condition: bool,
    /// `π_* C_p ⊆ C_{p′}`; `None` when the widths of `p` and `p′` differ.
    pub cartan_maps_to_cartan: Option<bool>,
}

impl<S: Scalar> TaylorData<S> {
    pub fn derived(&self) -> &Jet<S> {
        &self.contact.derived
    }
}

pub fn taylor_map<S: Scalar>(p: &Jet<S>) -> Result<TaylorData<S>> {
    let contact = contact_and_cartan(p)?;
    if !contact.derivations_descend {
        return Err(Error::Internal("no tangent projection onto the derived jet".into()));
    }
    let derived = &contact.derived;
    let n = p.nvars();
    let target = derived.algebra();
    let target_relations = target.derivations().as_subspace().clone();
    let image = contact.cartan.image(n * target.dim(), |v| contact.push(v)).sum(&target_relations)?;
    let image_dim = image.dim() - target_relations.dim();
    let taylor_condition = p.contains_jet(&hat_ideal(derived)?);
    let cartan_maps_to_cartan = if derived.width() == p.width() {
        let next = contact_and_cartan(derived)?;
        Some(next.cartan.contains_subspace(&image)?)
    } else {
        None
    };
    Ok(TaylorData { contact, image, image_dim, taylor_condition, cartan_maps_to_cartan })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::parse_polynomial;
    use crate::jet_spectrum::{cartan_from_fields, jet_from_ideal};
    use num_rational::BigRational;

    type Q = BigRational;

    fn jet(n: usize, gens: &[&str], hint: u32) -> Jet<Q> {
        let gens: Vec<_> = gens.iter().map(|g| parse_polynomial(g, n).unwrap()).collect();
        jet_from_ideal(n, &vec![Q::from_integer(0.into()); n], &gens, hint).unwrap()
    }

    #[test]
    fn first_order_line() {
        let c = contact_and_cartan(&jet(2, &["y"], 1)).unwrap();
        assert_eq!((c.rank, c.tangent_dim, c.cartan_dim), (1, 3, 2));
        assert!(c.kernel_in_cartan && c.derivations_descend);
    }

    #[test]
    fn full_width_jets_have_no_contact() {
        for p in [jet(2, &[], 2), jet(2, &["x^2", "y^2"], 3), jet(1, &[], 1)] {
            let c = contact_and_cartan(&p).unwrap();
            assert_eq!(c.rank, 0);
            assert_eq!(c.cartan_dim, c.tangent_dim);
        }
    }

    #[test]
    fn cartan_matches_field_span() {
        for p in [jet(2, &["y - x^2"], 2), jet(3, &["z", "x^2"], 2), jet(2, &["y"], 1), jet(3, &["z - x y"], 2)] {
            let c = contact_and_cartan(&p).unwrap();
            assert_eq!(c.cartan, cartan_from_fields(&p).unwrap());
            assert!(c.kernel_in_cartan);
        }
    }

    #[test]
    fn parabola_taylor_data() {
        let t = taylor_map(&jet(2, &["y - x^2"], 2)).unwrap();
        assert_eq!(t.derived(), &jet(2, &["y"], 1));
        assert_eq!(t.image_dim, 1);
        assert!(t.taylor_condition);
        assert_eq!(t.cartan_maps_to_cartan, Some(true));
        let other = taylor_map(&jet(2, &["y + x^2"], 2)).unwrap();
        assert_ne!(t.image, other.image);
    }

    #[test]
    fn order_zero_taylor_data() {
        let t = taylor_map(&jet(2, &["x", "y"], 0)).unwrap();
        assert_eq!((t.contact.tangent_dim, t.contact.rank, t.contact.cartan_dim), (2, 2, 0));
        assert_eq!(t.image_dim, 0);
        assert!(t.taylor_condition);
    }
}
