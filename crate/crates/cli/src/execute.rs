//! Runs a parsed session against the kernel.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::{json, Value};
use weiljets::a_points::{prolong_ideal, prolonged_variable_names, weil_iso_check, APoint, GroupLaw};
use weiljets::exact_linear::{default_variable_names, MultiIndex, Subspace};
use weiljets::jet_spectrum::{
    cartan_from_fields, cartan_generation_oracle, classical_jet, contact_and_cartan, cotangent_module, derived_jet,
    hat_ideal, jet_fields, jet_from_ideal, normal_form, pushforward, tangent_map, tangent_module, taylor_map,
};
use weiljets::weil_core::ideal_stability;
use weiljets::{QAlgebra, QGroupLaw, QJet, QPoint, QPoly, Rational, Scalar};

use crate::error::CliError;
use crate::session::{AlgebraSource, Binding, Command, Session};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    pub fail_fast: bool,
    pub verify_oracles: bool,
}

/// Outcome of one command.
#[derive(Clone, Debug, PartialEq)]
pub struct Entry {
    pub index: usize,
    pub op: &'static str,
    pub subject: String,
    pub outcome: Result<Value, String>,
}

/// Outcome of one binding; failed bindings poison the commands that use them.
#[derive(Clone, Debug, PartialEq)]
pub struct BindingStatus {
    pub name: String,
    pub kind: &'static str,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub bindings: Vec<BindingStatus>,
    pub entries: Vec<Entry>,
    /// Wall-clock time per command; never part of the rendered report.
    pub timings: Vec<Duration>,
    pub stopped_early: bool,
}

impl Report {
    pub fn has_errors(&self) -> bool {
        self.entries.iter().any(|e| e.outcome.is_err()) || self.bindings.iter().any(|b| b.error.is_some())
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_errors())
    }

    /// Canonical JSON form; object keys are sorted.
    pub fn to_json(&self) -> Value {
        let bindings: Vec<Value> = self
            .bindings
            .iter()
            .map(|b| {
                let mut v = json!({"name": b.name, "kind": b.kind});
                if let Some(e) = &b.error {
                    v["error"] = json!(e);
                }
                v
            })
            .collect();
        let results: Vec<Value> = self
            .entries
            .iter()
            .map(|e| match &e.outcome {
                Ok(v) => json!({"index": e.index, "op": e.op, "subject": e.subject, "result": v}),
                Err(msg) => json!({"index": e.index, "op": e.op, "subject": e.subject, "error": msg}),
            })
            .collect();
        json!({
            "bindings": bindings,
            "results": results,
            "status": self.exit_code(),
            "stopped_early": self.stopped_early,
        })
    }
}

enum Bound {
    Algebra(QAlgebra),
    Jet(QJet),
    Point(QPoint),
    Group(QGroupLaw),
    Map(Vec<QPoly>),
}

#[derive(Default)]
struct Env {
    values: BTreeMap<String, Result<Bound, String>>,
}

impl Env {
    fn get(&self, name: &str) -> Result<&Bound, CliError> {
        match self.values.get(name) {
            Some(Ok(b)) => Ok(b),
            Some(Err(_)) => Err(CliError::FailedBinding(name.to_string())),
            None => Err(CliError::UnknownName(name.to_string())),
        }
    }

    fn algebra(&self, name: &str) -> Result<&QAlgebra, CliError> {
        match self.get(name)? {
            Bound::Algebra(a) => Ok(a),
            _ => Err(CliError::WrongKind { name: name.into(), expected: "an algebra", found: "another kind" }),
        }
    }

    fn jet(&self, name: &str) -> Result<&QJet, CliError> {
        match self.get(name)? {
            Bound::Jet(j) => Ok(j),
            _ => Err(CliError::WrongKind { name: name.into(), expected: "a jet", found: "another kind" }),
        }
    }

    fn point(&self, name: &str) -> Result<&QPoint, CliError> {
        match self.get(name)? {
            Bound::Point(p) => Ok(p),
            _ => Err(CliError::WrongKind { name: name.into(), expected: "an A-point", found: "another kind" }),
        }
    }

    fn group(&self, name: &str) -> Result<&QGroupLaw, CliError> {
        match self.get(name)? {
            Bound::Group(g) => Ok(g),
            _ => Err(CliError::WrongKind { name: name.into(), expected: "a group law", found: "another kind" }),
        }
    }

    fn map(&self, name: &str) -> Result<&[QPoly], CliError> {
        match self.get(name)? {
            Bound::Map(m) => Ok(m),
            _ => Err(CliError::WrongKind { name: name.into(), expected: "a map", found: "another kind" }),
        }
    }
}

fn build(binding: &Binding, env: &Env) -> Result<Bound, CliError> {
    Ok(match binding {
        Binding::Algebra { source, .. } => Bound::Algebra(match source {
            AlgebraSource::Relations { vars, relations, bound: Some(b) } => QAlgebra::quotient(*vars, relations, *b)?,
            AlgebraSource::Relations { vars, relations, bound: None } => QAlgebra::from_relations(*vars, relations)?,
            AlgebraSource::Classical { width, order } => QAlgebra::classical(*width, *order),
            AlgebraSource::Tensor(a, b) => env.algebra(a)?.tensor(env.algebra(b)?),
        }),
        Binding::Jet { vars, point, generators, order_hint, .. } => {
            Bound::Jet(jet_from_ideal(*vars, point, generators, *order_hint)?)
        }
        Binding::ClassicalJet { vars, point, graph, order, .. } => {
            Bound::Jet(classical_jet(*vars, point, graph, *order)?)
        }
        Binding::Point { algebra, images, .. } => {
            Bound::Point(APoint::new(env.algebra(algebra)?.clone(), images.clone())?)
        }
        Binding::Group { dim, law, identity, inverse, .. } => {
            Bound::Group(GroupLaw::new(*dim, law.clone(), identity.clone(), inverse.clone())?)
        }
        Binding::Map { components, .. } => Bound::Map(components.clone()),
    })
}

fn kind_of(binding: &Binding) -> &'static str {
    match binding {
        Binding::Algebra { .. } => "algebra",
        Binding::Jet { .. } | Binding::ClassicalJet { .. } => "jet",
        Binding::Point { .. } => "point",
        Binding::Group { .. } => "group",
        Binding::Map { .. } => "map",
    }
}

/// Executes every command in order; errors are recorded per command.
pub fn execute(session: &Session, options: Options) -> Report {
    let mut env = Env::default();
    let mut report = Report::default();
    for b in &session.bindings {
        let built = build(b, &env).map_err(|e| e.to_string());
        report.bindings.push(BindingStatus {
            name: b.name().to_string(),
            kind: kind_of(b),
            error: built.as_ref().err().cloned(),
        });
        env.values.insert(b.name().to_string(), built);
    }
    if options.fail_fast && report.has_errors() {
        report.stopped_early = true;
        return report;
    }
    for (index, command) in session.commands.iter().enumerate() {
        let start = Instant::now();
        let outcome = run(command, &env, options).map_err(|e| e.to_string());
        report.timings.push(start.elapsed());
        let failed = outcome.is_err();
        report.entries.push(Entry { index, op: command.op(), subject: command.subject(), outcome });
        if failed && options.fail_fast {
            report.stopped_early = index + 1 < session.commands.len();
            break;
        }
    }
    report
}

fn q(x: &Rational) -> Value {
    Value::String(x.to_ratio_string())
}

fn qs(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(q).collect())
}

fn matrix(m: &[Vec<Rational>]) -> Value {
    Value::Array(m.iter().map(|r| qs(r)).collect())
}

fn exponents(m: &MultiIndex) -> Value {
    json!(m.exponents())
}

fn subspace(s: &Subspace<Rational>) -> Value {
    json!({"dim": s.dim(), "basis": matrix(s.basis())})
}

fn polys(ps: &[QPoly], names: &[String]) -> Value {
    Value::Array(ps.iter().map(|p| json!(p.display_with(names).to_string())).collect())
}

pub(crate) fn jet_value(jet: &QJet) -> Value {
    let names = default_variable_names(jet.nvars());
    let generators: Vec<QPoly> = jet.minimal_generators().iter().map(|g| jet.uncenter(g)).collect();
    let labels: Vec<Value> = jet.algebra().labels().iter().map(exponents).collect();
    json!({
        "vars": jet.nvars(),
        "point": qs(jet.base_point()),
        "order": jet.order(),
        "width": jet.width(),
        "dim": jet.quotient_dim(),
        "classical_dim": jet.classical_dim(),
        "classical": jet.is_classical(),
        "generators": polys(&generators, &names),
        "quotient_basis": labels,
    })
}

fn algebra_value(a: &QAlgebra) -> Value {
    let inv = a.invariants();
    let constants: Vec<Value> =
        a.structure_constants_sparse().iter().map(|(i, j, k, c)| json!([i, j, k, q(c)])).collect();
    json!({
        "dim": inv.dim,
        "order": inv.order,
        "width": inv.width,
        "der_dim": inv.der_dim,
        "filtration": inv.filtration,
        "classical": a.is_classical(),
        "basis": a.labels().iter().map(exponents).collect::<Vec<_>>(),
        "structure_constants": constants,
    })
}

fn point_value(p: &QPoint) -> Value {
    json!({
        "algebra_dim": p.algebra().dim(),
        "images": matrix(p.images()),
        "base_point": qs(&p.base_point()),
    })
}

fn run(command: &Command, env: &Env, options: Options) -> Result<Value, CliError> {
    Ok(match command {
        Command::Info { of } => algebra_value(env.algebra(of)?),
        Command::Derivations { of } => {
            let der = env.algebra(of)?.derivations();
            json!({"dim": der.dim(), "basis": matrix(der.basis())})
        }
        Command::Stability { of, ideal } => {
            let a = env.algebra(of)?;
            let mut span = Subspace::zero(a.dim());
            for g in ideal {
                let c = a.class_of(g);
                for k in 0..a.dim() {
                    span.insert(a.mul(&c, &a.unit(k)));
                }
            }
            let r = ideal_stability(a, &span, &[])?;
            json!({
                "ideal": subspace(&span),
                "der_stable": r.der_stable,
                "witness": r.witness,
                "quotient": r.quotient.as_ref().map(algebra_value),
                "projected_derivations": matrix(&r.projected_derivations),
                "note": r.note,
            })
        }
        Command::Jet { of } => jet_value(env.jet(of)?),
        Command::Hat { of } => jet_value(&hat_ideal(env.jet(of)?)?),
        Command::Cotangent { of } => {
            let p = env.jet(of)?;
            let c = cotangent_module(p)?;
            let basis: Vec<QPoly> = c.basis.iter().map(|f| p.uncenter(f)).collect();
            json!({"dim": c.dim, "basis": polys(&basis, &default_variable_names(p.nvars())), "hat": jet_value(&c.hat)})
        }
        Command::Tangent { of } => {
            let t = tangent_module(env.jet(of)?);
            json!({"dim": t.dim(), "ambient_dim": t.ambient_dim(), "relations": subspace(t.relations())})
        }
        Command::Fields { of } => {
            let p = env.jet(of)?;
            let names = default_variable_names(p.nvars());
            let fields: Vec<Value> = jet_fields(p)
                .fields()
                .iter()
                .map(|f| polys(&f.iter().map(|c| p.uncenter(c)).collect::<Vec<_>>(), &names))
                .collect();
            json!({"dim": fields.len(), "fields": fields})
        }
        Command::NormalForm { of } => {
            let p = env.jet(of)?;
            let nf = normal_form(p)?;
            let names = default_variable_names(p.nvars());
            let pick = |v: &[usize]| v.iter().map(|&i| names[i].clone()).collect::<Vec<_>>();
            json!({
                "coordinates": "centered",
                "graph_variables": pick(&nf.y_vars),
                "free_variables": pick(&nf.x_vars),
                "sigma": polys(&nf.sigma, &names),
                "phi": polys(&nf.phi, &names),
                "q": polys(&nf.q_list, &names),
                "r": nf.r(),
                "transformed": jet_value(&nf.transformed),
            })
        }
        Command::Derive { of } => {
            let p = env.jet(of)?;
            let derived = derived_jet(p)?;
            let taylor_condition = p.contains_jet(&hat_ideal(&derived)?);
            let mut v = json!({"derived": jet_value(&derived), "taylor_condition": taylor_condition});
            if options.verify_oracles {
                v["oracle_agrees"] = json!(cartan_generation_oracle(p)? == derived);
            }
            v
        }
        Command::Contact { of } => {
            let p = env.jet(of)?;
            let c = contact_and_cartan(p)?;
            let mut v = json!({
                "derived": jet_value(&c.derived),
                "rank": c.rank,
                "tangent_dim": c.tangent_dim,
                "cartan_dim": c.cartan_dim,
                "omega_functionals": subspace(&c.omega),
                "cartan_tuples": subspace(&c.cartan),
                "kernel_in_cartan": c.kernel_in_cartan,
                "derivations_descend": c.derivations_descend,
            });
            if options.verify_oracles {
                v["oracle_agrees"] = json!(cartan_from_fields(p)? == c.cartan);
            }
            v
        }
        Command::Taylor { of } => {
            let t = taylor_map(env.jet(of)?)?;
            let cartan_to_cartan = match t.cartan_maps_to_cartan {
                Some(b) => json!(b),
                None => json!("not applicable: widths differ"),
            };
            json!({
                "derived": jet_value(t.derived()),
                "image_tuples": subspace(&t.image),
                "image_dim": t.image_dim,
                "taylor_condition": t.taylor_condition,
                "cartan_maps_to_cartan": cartan_to_cartan,
            })
        }
        Command::Pushforward { of, map } => jet_value(&pushforward(env.jet(of)?, env.map(map)?)?),
        Command::TangentMap { of, map } => {
            let t = tangent_map(env.jet(of)?, env.map(map)?)?;
            json!({
                "target": jet_value(&t.target),
                "exists": t.exists,
                "regular": t.regular,
                "matrix": t.matrix.as_deref().map(matrix),
            })
        }
        Command::Evaluate { at, f } => {
            let p = env.point(at)?;
            json!({"value": qs(&p.evaluate(f)?), "basis": p.algebra().labels().iter().map(exponents).collect::<Vec<_>>()})
        }
        Command::Regularity { of } => {
            let (regular, kernel) = env.point(of)?.regularity_and_kernel()?;
            json!({"regular": regular, "kernel": jet_value(&kernel)})
        }
        Command::Product { left, right } => point_value(&env.point(left)?.cartesian_product(env.point(right)?)?),
        Command::Prolong { algebra, vars, generators } => {
            let a = env.algebra(algebra)?;
            let names = prolonged_variable_names(*vars, a.dim());
            let components: Vec<Value> = prolong_ideal(generators, a).iter().map(|c| polys(c, &names)).collect();
            json!({"variables": names, "components": components})
        }
        Command::WeilIso { f, a, b, images } => {
            let r = weil_iso_check(f, env.algebra(a)?, env.algebra(b)?, images)?;
            json!({"equal": r.equal, "two_stage": qs(&r.two_stage), "one_stage": qs(&r.one_stage)})
        }
        Command::GroupProduct { group, left, right } => {
            point_value(&env.group(group)?.multiply(env.point(left)?, env.point(right)?)?)
        }
        Command::GroupInverse { group, of } => point_value(&env.group(group)?.invert(env.point(of)?)?),
        Command::GroupAxioms { group, points } => {
            let [a, b, c] = points;
            json!({"hold": env.group(group)?.axioms_hold_on(env.point(a)?, env.point(b)?, env.point(c)?)?})
        }
        Command::TangentGroup { group, p, delta, q: qq, delta_bar } => {
            let g = env.group(group)?;
            let r = g.tangent_group_check(p, delta, qq, delta_bar)?;
            json!({
                "product_matches": r.product_matches,
                "lie_product_matches": r.lie_product_matches,
                "inverse_matches": r.inverse_matches,
                "identity_matches": r.identity_matches,
                "adjoint": matrix(&g.adjoint(p)),
            })
        }
    })
}
