//! The JSON session format.
//!
//! A session is `{"bind": [...], "run": [...]}`. Bindings introduce named
//! algebras, jets, A-points, group laws and polynomial maps; commands refer to
//! them by name. Every name must be bound before it is used.

use std::collections::BTreeMap;

use serde_json::{Map, Value};
use weiljets::exact_linear::{default_variable_names, parse_polynomial_with};
use weiljets::{QPoly, Rational, Scalar};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq)]
pub enum AlgebraSource {
    Relations { vars: usize, relations: Vec<QPoly>, bound: Option<u32> },
    Classical { width: usize, order: u32 },
    Tensor(String, String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Algebra { name: String, source: AlgebraSource },
    Jet { name: String, vars: usize, point: Vec<Rational>, generators: Vec<QPoly>, order_hint: u32 },
    ClassicalJet { name: String, vars: usize, point: Vec<Rational>, graph: Vec<(usize, QPoly)>, order: u32 },
    Point { name: String, algebra: String, images: Vec<Vec<Rational>> },
    Group { name: String, dim: usize, law: Vec<QPoly>, identity: Vec<Rational>, inverse: Vec<QPoly> },
    Map { name: String, source: usize, components: Vec<QPoly> },
}

impl Binding {
    pub fn name(&self) -> &str {
        match self {
            Binding::Algebra { name, .. }
            | Binding::Jet { name, .. }
            | Binding::ClassicalJet { name, .. }
            | Binding::Point { name, .. }
            | Binding::Group { name, .. }
            | Binding::Map { name, .. } => name,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Info { of: String },
    Derivations { of: String },
    Stability { of: String, ideal: Vec<QPoly> },
    Jet { of: String },
    Hat { of: String },
    Cotangent { of: String },
    Tangent { of: String },
    Fields { of: String },
    NormalForm { of: String },
    Derive { of: String },
    Contact { of: String },
    Taylor { of: String },
    Pushforward { of: String, map: String },
    TangentMap { of: String, map: String },
    Evaluate { at: String, f: QPoly },
    Regularity { of: String },
    Product { left: String, right: String },
    Prolong { algebra: String, vars: usize, generators: Vec<QPoly> },
    WeilIso { f: QPoly, a: String, b: String, images: Vec<Vec<Rational>> },
    GroupProduct { group: String, left: String, right: String },
    GroupInverse { group: String, of: String },
    GroupAxioms { group: String, points: [String; 3] },
    TangentGroup { group: String, p: Vec<Rational>, delta: Vec<Rational>, q: Vec<Rational>, delta_bar: Vec<Rational> },
}

impl Command {
    pub fn op(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Derivations { .. } => "derivations",
            Command::Stability { .. } => "stability",
            Command::Jet { .. } => "jet",
            Command::Hat { .. } => "hat",
            Command::Cotangent { .. } => "cotangent",
            Command::Tangent { .. } => "tangent",
            Command::Fields { .. } => "fields",
            Command::NormalForm { .. } => "normal_form",
            Command::Derive { .. } => "derive",
            Command::Contact { .. } => "contact",
            Command::Taylor { .. } => "taylor",
            Command::Pushforward { .. } => "pushforward",
            Command::TangentMap { .. } => "tangent_map",
            Command::Evaluate { .. } => "evaluate",
            Command::Regularity { .. } => "regularity",
            Command::Product { .. } => "product",
            Command::Prolong { .. } => "prolong",
            Command::WeilIso { .. } => "weil_iso",
            Command::GroupProduct { .. } => "group_product",
            Command::GroupInverse { .. } => "group_inverse",
            Command::GroupAxioms { .. } => "group_axioms",
            Command::TangentGroup { .. } => "tangent_group",
        }
    }
}

impl Command {
    /// The names a command acts on, for report headings.
    pub fn subject(&self) -> String {
        match self {
            Command::Info { of }
            | Command::Derivations { of }
            | Command::Stability { of, .. }
            | Command::Jet { of }
            | Command::Hat { of }
            | Command::Cotangent { of }
            | Command::Tangent { of }
            | Command::Fields { of }
            | Command::NormalForm { of }
            | Command::Derive { of }
            | Command::Contact { of }
            | Command::Taylor { of }
            | Command::Regularity { of } => of.clone(),
            Command::Pushforward { of, map } | Command::TangentMap { of, map } => format!("{map}_*{of}"),
            Command::Evaluate { at, f } => format!("{f} at {at}"),
            Command::Product { left, right } => format!("{left} x {right}"),
            Command::Prolong { algebra, .. } => algebra.clone(),
            Command::WeilIso { f, a, b, .. } => format!("{f} over {a} (x) {b}"),
            Command::GroupProduct { group, left, right } => format!("{group}: {left} * {right}"),
            Command::GroupInverse { group, of } => format!("{group}: {of}^-1"),
            Command::GroupAxioms { group, points } => format!("{group}: {}", points.join(", ")),
            Command::TangentGroup { group, .. } => group.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Session {
    pub bindings: Vec<Binding>,
    pub commands: Vec<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Algebra { vars: usize },
    Jet { vars: usize },
    Point { vars: usize },
    Group { dim: usize },
    Map { source: usize },
}

impl Kind {
    fn label(&self) -> &'static str {
        match self {
            Kind::Algebra { .. } => "an algebra",
            Kind::Jet { .. } => "a jet",
            Kind::Point { .. } => "an A-point",
            Kind::Group { .. } => "a group law",
            Kind::Map { .. } => "a map",
        }
    }
}

/// Variable names `a1..an, b1..bn` of a group law.
pub fn group_variable_names(dim: usize) -> Vec<String> {
    (1..=dim).map(|i| format!("a{i}")).chain((1..=dim).map(|i| format!("b{i}"))).collect()
}

struct Ctx<'a> {
    path: String,
    obj: &'a Map<String, Value>,
}

impl<'a> Ctx<'a> {
    fn new(path: String, value: &'a Value) -> Result<Self, CliError> {
        match value.as_object() {
            Some(obj) => Ok(Ctx { path, obj }),
            None => Err(CliError::schema(path, "expected an object")),
        }
    }

    fn at(&self, key: &str) -> String {
        format!("{}.{}", self.path, key)
    }

    fn get(&self, key: &str) -> Result<&'a Value, CliError> {
        self.obj.get(key).ok_or_else(|| CliError::schema(self.path.clone(), format!("missing field {key:?}")))
    }

    fn has(&self, key: &str) -> bool {
        self.obj.contains_key(key)
    }

    fn str(&self, key: &str) -> Result<&'a str, CliError> {
        self.get(key)?.as_str().ok_or_else(|| CliError::schema(self.at(key), "expected a string"))
    }

    fn uint(&self, key: &str) -> Result<u64, CliError> {
        self.get(key)?.as_u64().ok_or_else(|| CliError::schema(self.at(key), "expected a non-negative integer"))
    }

    fn list(&self, key: &str) -> Result<&'a Vec<Value>, CliError> {
        self.get(key)?.as_array().ok_or_else(|| CliError::schema(self.at(key), "expected an array"))
    }

    fn strings(&self, key: &str) -> Result<Vec<&'a str>, CliError> {
        self.list(key)?
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.as_str().ok_or_else(|| CliError::schema(format!("{}[{i}]", self.at(key)), "expected a string"))
            })
            .collect()
    }

    fn polys(&self, key: &str, names: &[String]) -> Result<Vec<QPoly>, CliError> {
        self.strings(key)?
            .into_iter()
            .enumerate()
            .map(|(i, t)| poly(&format!("{}[{i}]", self.at(key)), t, names))
            .collect()
    }

    fn rationals(&self, key: &str) -> Result<Vec<Rational>, CliError> {
        rational_list(&self.at(key), self.get(key)?)
    }

    fn matrix(&self, key: &str) -> Result<Vec<Vec<Rational>>, CliError> {
        self.list(key)?.iter().enumerate().map(|(i, v)| rational_list(&format!("{}[{i}]", self.at(key)), v)).collect()
    }
}

fn poly(path: &str, text: &str, names: &[String]) -> Result<QPoly, CliError> {
    parse_polynomial_with(text, names).map_err(|source| CliError::Polynomial { path: path.to_string(), source })
}

fn rational(path: &str, v: &Value) -> Result<Rational, CliError> {
    if let Some(i) = v.as_i64() {
        return Ok(Rational::from_integer(i.into()));
    }
    v.as_str()
        .and_then(Rational::parse_ratio)
        .ok_or_else(|| CliError::schema(path, "expected an integer or a rational string \"p/q\""))
}

fn rational_list(path: &str, v: &Value) -> Result<Vec<Rational>, CliError> {
    let items = v.as_array().ok_or_else(|| CliError::schema(path, "expected an array"))?;
    items.iter().enumerate().map(|(i, x)| rational(&format!("{path}[{i}]"), x)).collect()
}

struct Scope {
    kinds: BTreeMap<String, Kind>,
}

impl Scope {
    fn lookup(&self, name: &str) -> Result<Kind, CliError> {
        self.kinds.get(name).copied().ok_or_else(|| CliError::UnknownName(name.to_string()))
    }

    fn expect(
        &self,
        name: &str,
        expected: &'static str,
        ok: impl Fn(Kind) -> Option<usize>,
    ) -> Result<usize, CliError> {
        let kind = self.lookup(name)?;
        ok(kind).ok_or(CliError::WrongKind { name: name.to_string(), expected, found: kind.label() })
    }

    fn algebra(&self, name: &str) -> Result<usize, CliError> {
        self.expect(name, "an algebra", |k| match k {
            Kind::Algebra { vars } => Some(vars),
            _ => None,
        })
    }

    fn jet(&self, name: &str) -> Result<usize, CliError> {
        self.expect(name, "a jet", |k| match k {
            Kind::Jet { vars } => Some(vars),
            _ => None,
        })
    }

    fn point(&self, name: &str) -> Result<usize, CliError> {
        self.expect(name, "an A-point", |k| match k {
            Kind::Point { vars } => Some(vars),
            _ => None,
        })
    }

    fn group(&self, name: &str) -> Result<usize, CliError> {
        self.expect(name, "a group law", |k| match k {
            Kind::Group { dim } => Some(dim),
            _ => None,
        })
    }

    fn map(&self, name: &str) -> Result<usize, CliError> {
        self.expect(name, "a map", |k| match k {
            Kind::Map { source } => Some(source),
            _ => None,
        })
    }
}

fn parse_binding(ctx: &Ctx<'_>, scope: &Scope) -> Result<(Binding, Kind), CliError> {
    if ctx.has("jet") {
        let name = ctx.str("jet")?.to_string();
        let vars = ctx.uint("vars")? as usize;
        let names = default_variable_names(vars);
        let point =
            if ctx.has("point") { ctx.rationals("point")? } else { vec![Rational::from_integer(0.into()); vars] };
        if point.len() != vars {
            return Err(CliError::schema(ctx.at("point"), format!("expected {vars} coordinates")));
        }
        if ctx.has("graph") {
            let mut graph = Vec::new();
            for (i, entry) in ctx.list("graph")?.iter().enumerate() {
                let g = Ctx::new(format!("{}[{i}]", ctx.at("graph")), entry)?;
                let var = g.str("var")?;
                let index = names
                    .iter()
                    .position(|n| n == var)
                    .ok_or_else(|| CliError::schema(g.at("var"), format!("unknown variable {var:?}")))?;
                graph.push((index, poly(&g.at("f"), g.str("f")?, &names)?));
            }
            let order = ctx.uint("order")? as u32;
            return Ok((Binding::ClassicalJet { name, vars, point, graph, order }, Kind::Jet { vars }));
        }
        let generators = if ctx.has("generators") { ctx.polys("generators", &names)? } else { Vec::new() };
        let order_hint = ctx.uint("order_hint")? as u32;
        return Ok((Binding::Jet { name, vars, point, generators, order_hint }, Kind::Jet { vars }));
    }
    if ctx.has("point") {
        let name = ctx.str("point")?.to_string();
        let algebra = ctx.str("algebra")?.to_string();
        scope.algebra(&algebra)?;
        let images = ctx.matrix("images")?;
        let vars = images.len();
        return Ok((Binding::Point { name, algebra, images }, Kind::Point { vars }));
    }
    if ctx.has("algebra") {
        let name = ctx.str("algebra")?.to_string();
        if ctx.has("classical") {
            let pair = ctx.list("classical")?;
            let (width, order) = match pair.as_slice() {
                [m, l] => (m.as_u64(), l.as_u64()),
                _ => (None, None),
            };
            let (Some(width), Some(order)) = (width, order) else {
                return Err(CliError::schema(ctx.at("classical"), "expected [width, order]"));
            };
            let kind = Kind::Algebra { vars: width as usize };
            let source = AlgebraSource::Classical { width: width as usize, order: order as u32 };
            return Ok((Binding::Algebra { name, source }, kind));
        }
        if ctx.has("tensor") {
            let parts = ctx.strings("tensor")?;
            let [a, b] = parts.as_slice() else {
                return Err(CliError::schema(ctx.at("tensor"), "expected two algebra names"));
            };
            let vars = scope.algebra(a)? + scope.algebra(b)?;
            let source = AlgebraSource::Tensor(a.to_string(), b.to_string());
            return Ok((Binding::Algebra { name, source }, Kind::Algebra { vars }));
        }
        let vars = ctx.uint("vars")? as usize;
        let names = default_variable_names(vars);
        let relations = if ctx.has("relations") { ctx.polys("relations", &names)? } else { Vec::new() };
        let bound = if ctx.has("bound") { Some(ctx.uint("bound")? as u32) } else { None };
        let source = AlgebraSource::Relations { vars, relations, bound };
        return Ok((Binding::Algebra { name, source }, Kind::Algebra { vars }));
    }
    if ctx.has("group") {
        let name = ctx.str("group")?.to_string();
        let dim = ctx.uint("dim")? as usize;
        let names = group_variable_names(dim);
        let law = ctx.polys("law", &names)?;
        let inverse = ctx.polys("inverse", &names[..dim])?;
        let identity = ctx.rationals("identity")?;
        return Ok((Binding::Group { name, dim, law, identity, inverse }, Kind::Group { dim }));
    }
    if ctx.has("map") {
        let name = ctx.str("map")?.to_string();
        let source = ctx.uint("source")? as usize;
        let components = ctx.polys("components", &default_variable_names(source))?;
        return Ok((Binding::Map { name, source, components }, Kind::Map { source }));
    }
    Err(CliError::schema(ctx.path.clone(), "binding needs one of \"algebra\", \"jet\", \"point\", \"group\", \"map\""))
}

fn pair(ctx: &Ctx<'_>, key: &str) -> Result<(String, String), CliError> {
    let items = ctx.strings(key)?;
    match items.as_slice() {
        [a, b] => Ok((a.to_string(), b.to_string())),
        _ => Err(CliError::schema(ctx.at(key), "expected two names")),
    }
}

fn parse_command(ctx: &Ctx<'_>, scope: &Scope) -> Result<Command, CliError> {
    let op = ctx.str("op")?;
    let of = || ctx.str("of").map(str::to_string);
    let jet = || -> Result<String, CliError> {
        let name = of()?;
        scope.jet(&name)?;
        Ok(name)
    };
    Ok(match op {
        "info" | "derivations" => {
            let name = of()?;
            scope.algebra(&name)?;
            if op == "info" {
                Command::Info { of: name }
            } else {
                Command::Derivations { of: name }
            }
        }
        "stability" => {
            let name = of()?;
            let vars = scope.algebra(&name)?;
            let ideal = ctx.polys("ideal", &default_variable_names(vars))?;
            Command::Stability { of: name, ideal }
        }
        "jet" => Command::Jet { of: jet()? },
        "hat" => Command::Hat { of: jet()? },
        "cotangent" => Command::Cotangent { of: jet()? },
        "tangent" => Command::Tangent { of: jet()? },
        "fields" => Command::Fields { of: jet()? },
        "normal_form" => Command::NormalForm { of: jet()? },
        "derive" => Command::Derive { of: jet()? },
        "contact" => Command::Contact { of: jet()? },
        "taylor" => Command::Taylor { of: jet()? },
        "pushforward" | "tangent_map" => {
            let of = jet()?;
            let map = ctx.str("map")?.to_string();
            let source = scope.map(&map)?;
            let vars = scope.jet(&of)?;
            if source != vars {
                return Err(CliError::schema(
                    ctx.at("map"),
                    format!("map has {source} source variables, jet has {vars}"),
                ));
            }
            if op == "pushforward" {
                Command::Pushforward { of, map }
            } else {
                Command::TangentMap { of, map }
            }
        }
        "evaluate" => {
            let at = ctx.str("at")?.to_string();
            let vars = scope.point(&at)?;
            let f = poly(&ctx.at("f"), ctx.str("f")?, &default_variable_names(vars))?;
            Command::Evaluate { at, f }
        }
        "regularity" => {
            let name = of()?;
            scope.point(&name)?;
            Command::Regularity { of: name }
        }
        "product" => {
            let (left, right) = pair(ctx, "of")?;
            scope.point(&left)?;
            scope.point(&right)?;
            Command::Product { left, right }
        }
        "prolong" => {
            let algebra = ctx.str("algebra")?.to_string();
            scope.algebra(&algebra)?;
            let vars = ctx.uint("vars")? as usize;
            let generators = ctx.polys("generators", &default_variable_names(vars))?;
            Command::Prolong { algebra, vars, generators }
        }
        "weil_iso" => {
            let (a, b) = pair(ctx, "algebras")?;
            scope.algebra(&a)?;
            scope.algebra(&b)?;
            let images = ctx.matrix("images")?;
            let f = poly(&ctx.at("f"), ctx.str("f")?, &default_variable_names(images.len()))?;
            Command::WeilIso { f, a, b, images }
        }
        "group_product" | "group_inverse" | "group_axioms" | "tangent_group" => {
            let group = ctx.str("group")?.to_string();
            let dim = scope.group(&group)?;
            let point = |name: &str| -> Result<String, CliError> {
                if scope.point(name)? != dim {
                    return Err(CliError::schema(ctx.at("of"), format!("{name:?} does not have {dim} coordinates")));
                }
                Ok(name.to_string())
            };
            match op {
                "group_product" => {
                    let (l, r) = pair(ctx, "of")?;
                    Command::GroupProduct { group, left: point(&l)?, right: point(&r)? }
                }
                "group_inverse" => Command::GroupInverse { of: point(&of()?)?, group },
                "group_axioms" => {
                    let names = ctx.strings("of")?;
                    let [a, b, c] = names.as_slice() else {
                        return Err(CliError::schema(ctx.at("of"), "expected three names"));
                    };
                    Command::GroupAxioms { points: [point(a)?, point(b)?, point(c)?], group }
                }
                _ => {
                    let vectors = ["p", "delta", "q", "delta_bar"]
                        .iter()
                        .map(|k| {
                            let v = ctx.rationals(k)?;
                            if v.len() != dim {
                                return Err(CliError::schema(ctx.at(k), format!("expected {dim} coordinates")));
                            }
                            Ok(v)
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let [p, delta, q, delta_bar]: [Vec<Rational>; 4] = vectors.try_into().expect("four vectors");
                    Command::TangentGroup { group, p, delta, q, delta_bar }
                }
            }
        }
        other => return Err(CliError::schema(ctx.at("op"), format!("unknown operation {other:?}"))),
    })
}

/// Parses and validates a session; names must be bound before use.
pub fn parse_session(text: &str) -> Result<Session, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    parse_session_value(&value)
}

pub fn parse_session_value(value: &Value) -> Result<Session, CliError> {
    let root = Ctx::new("session".into(), value)?;
    if let Some(key) = root.obj.keys().find(|k| *k != "bind" && *k != "run") {
        return Err(CliError::schema("session", format!("unexpected field {key:?}")));
    }
    let empty = Vec::new();
    let binds = if root.has("bind") { root.list("bind")? } else { &empty };
    let runs = if root.has("run") { root.list("run")? } else { &empty };

    let mut scope = Scope { kinds: BTreeMap::new() };
    let mut bindings = Vec::with_capacity(binds.len());
    for (i, b) in binds.iter().enumerate() {
        let ctx = Ctx::new(format!("bind[{i}]"), b)?;
        let (binding, kind) = parse_binding(&ctx, &scope)?;
        if scope.kinds.insert(binding.name().to_string(), kind).is_some() {
            return Err(CliError::DuplicateName(binding.name().to_string()));
        }
        bindings.push(binding);
    }
    let commands = runs
        .iter()
        .enumerate()
        .map(|(i, c)| parse_command(&Ctx::new(format!("run[{i}]"), c)?, &scope))
        .collect::<Result<_, _>>()?;
    Ok(Session { bindings, commands })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_session() {
        let s =
            parse_session(r#"{"bind":[{"algebra":"A","vars":1,"relations":["x^2"]}],"run":[{"op":"info","of":"A"}]}"#)
                .unwrap();
        assert_eq!(s.bindings.len(), 1);
        assert_eq!(s.commands, vec![Command::Info { of: "A".into() }]);
    }

    #[test]
    fn unbound_names_are_rejected() {
        let err = parse_session(r#"{"run":[{"op":"info","of":"B"}]}"#).unwrap_err();
        assert!(matches!(err, CliError::UnknownName(ref n) if n == "B"));
        let err = parse_session(r#"{"bind":[{"algebra":"T","tensor":["A","A"]},{"algebra":"A","classical":[1,1]}]}"#)
            .unwrap_err();
        assert!(matches!(err, CliError::UnknownName(_)));
    }

    #[test]
    fn jet_generators_are_parsed() {
        let s = parse_session(r#"{"bind":[{"jet":"p","vars":2,"generators":["y - x^2"],"order_hint":2}]}"#).unwrap();
        let Binding::Jet { generators, order_hint, .. } = &s.bindings[0] else { panic!("expected a jet") };
        assert_eq!(*order_hint, 2);
        assert_eq!(generators[0].to_string(), "y - x^2");
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_session("{\n  \"bind\": [,]\n}").unwrap_err();
        assert!(matches!(err, CliError::Syntax { line: 2, .. }));
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn kinds_and_duplicates() {
        let err = parse_session(r#"{"bind":[{"algebra":"A","classical":[1,1]},{"algebra":"A","classical":[1,2]}]}"#)
            .unwrap_err();
        assert!(matches!(err, CliError::DuplicateName(_)));
        let err = parse_session(r#"{"bind":[{"algebra":"A","classical":[1,1]}],"run":[{"op":"derive","of":"A"}]}"#)
            .unwrap_err();
        assert!(matches!(err, CliError::WrongKind { .. }));
    }
}
