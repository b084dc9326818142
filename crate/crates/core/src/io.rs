//! JSON documents: categories, Γ-categories, multimorphisms, modifications
//! and monoids, collected into a [`Workspace`].
//!
//! Every top-level document carries `"version": 1`. Γ-categories and
//! multimorphisms may be given as explicit tables or as references to the
//! built-in fixtures, e.g. `{"builtin": "HBool", "truncation": 8}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde_json::{json, Value};

use crate::cat::{FiniteCategory, Functor, Mor, MorphismEntry, Ob, PointedCategory};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::fskel::{hom_set, PtdMap};
use crate::gamma::{GammaCategory, GammaModification, GammaMultimorphism};
use crate::ringcat::GammaMonoid;

pub const VERSION: u64 = 1;

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidDocument(msg.into())
}

pub fn check_version(doc: &Value) -> Result<()> {
    match doc.get("version").and_then(Value::as_u64) {
        Some(VERSION) => Ok(()),
        Some(v) => Err(bad(format!("unsupported version {v}"))),
        None => Err(bad("missing \"version\" field")),
    }
}

fn str_field<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| bad(format!("missing string field \"{key}\"")))
}

fn array_field<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    v.get(key).and_then(Value::as_array).ok_or_else(|| bad(format!("missing array field \"{key}\"")))
}

fn usize_field(v: &Value, key: &str) -> Result<Option<usize>> {
    match v.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(x) => x.as_u64().map(|n| Some(n as usize)).ok_or_else(|| bad(format!("\"{key}\" is not a number"))),
    }
}

fn levels_field(v: &Value) -> Result<Vec<usize>> {
    array_field(v, "levels")?
        .iter()
        .map(|p| p.as_u64().map(|n| n as usize).ok_or_else(|| bad("levels must be numbers")))
        .collect()
}

/// Parses a category document; returns the category and its basepoint.
pub fn category_from_json(v: &Value) -> Result<(FiniteCategory, Option<Ob>)> {
    let objects: Vec<String> = array_field(v, "objects")?
        .iter()
        .map(|o| o.as_str().map(String::from).ok_or_else(|| bad("object names must be strings")))
        .collect::<Result<_>>()?;
    let ob_index: HashMap<&str, Ob> = objects.iter().enumerate().map(|(i, o)| (o.as_str(), Ob(i as u32))).collect();
    let ob = |name: &str| ob_index.get(name).copied().ok_or_else(|| Error::UnknownReference(format!("object {name}")));
    let mut morphisms = Vec::new();
    for m in array_field(v, "morphisms")? {
        morphisms.push(MorphismEntry {
            name: str_field(m, "id")?.to_string(),
            src: ob(str_field(m, "src")?)?,
            tgt: ob(str_field(m, "tgt")?)?,
        });
    }
    let mor_index: HashMap<&str, Mor> = morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), Mor(i as u32))).collect();
    let mor = |name: &str| mor_index.get(name).copied().ok_or_else(|| Error::UnknownReference(format!("morphism {name}")));
    let ids = v.get("identity").and_then(Value::as_object).ok_or_else(|| bad("missing \"identity\" map"))?;
    let identities = objects
        .iter()
        .map(|o| {
            let name = ids.get(o).and_then(Value::as_str).ok_or_else(|| bad(format!("no identity for {o}")))?;
            mor(name)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut compose = HashMap::new();
    for row in array_field(v, "compose")? {
        let row = row.as_array().filter(|r| r.len() == 3).ok_or_else(|| bad("compose rows are [g, f, gf]"))?;
        let name = |i: usize| row[i].as_str().ok_or_else(|| bad("compose rows hold morphism names"));
        compose.insert((mor(name(0)?)?, mor(name(1)?)?), mor(name(2)?)?);
    }
    // Composites with an identity may be left implicit.
    for (i, e) in morphisms.iter().enumerate() {
        let m = Mor(i as u32);
        compose.entry((identities[e.tgt.index()], m)).or_insert(m);
        compose.entry((m, identities[e.src.index()])).or_insert(m);
    }
    let basepoint = match v.get("basepoint") {
        None | Some(Value::Null) => None,
        Some(b) => Some(ob(b.as_str().ok_or_else(|| bad("basepoint must be an object name"))?)?),
    };
    Ok((FiniteCategory::from_tables(objects, morphisms, identities, compose)?, basepoint))
}

/// `{"objects": {name: name}, "morphisms": {name: name}}`.
pub fn functor_to_json(f: &Functor) -> Value {
    let obs: serde_json::Map<String, Value> = f
        .dom
        .objects()
        .map(|o| (f.dom.object_name(o), json!(f.cod.object_name(f.ob(o)))))
        .collect();
    let mors: serde_json::Map<String, Value> = f
        .dom
        .morphisms()
        .map(|m| (f.dom.morphism_name(m), json!(f.cod.morphism_name(f.mor(m)))))
        .collect();
    json!({"objects": obs, "morphisms": mors})
}

pub fn functor_from_json(v: &Value, dom: Arc<FiniteCategory>, cod: Arc<FiniteCategory>) -> Result<Functor> {
    let obs = v.get("objects").and_then(Value::as_object).ok_or_else(|| bad("functor needs an \"objects\" map"))?;
    let mors = v.get("morphisms").and_then(Value::as_object).ok_or_else(|| bad("functor needs a \"morphisms\" map"))?;
    let objects = dom
        .objects()
        .map(|o| {
            let name = dom.object_name(o);
            let image = obs.get(&name).and_then(Value::as_str).ok_or_else(|| bad(format!("no image for object {name}")))?;
            cod.find_object(image).ok_or_else(|| Error::UnknownReference(format!("object {image}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let morphisms = dom
        .morphisms()
        .map(|m| {
            let name = dom.morphism_name(m);
            let image = mors.get(&name).and_then(Value::as_str).ok_or_else(|| bad(format!("no image for morphism {name}")))?;
            cod.find_morphism(image).ok_or_else(|| Error::UnknownReference(format!("morphism {image}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Functor::new(dom, cod, objects, morphisms)
}

/// Explicit tables for every level and every pointed map up to the truncation.
pub fn gamma_to_json(x: &GammaCategory) -> Result<Value> {
    let n = x.truncation();
    let mut levels = Vec::new();
    for p in 0..=n {
        levels.push(x.category(p)?.to_json(Some(x.basepoint(p)?)));
    }
    let mut action = Vec::new();
    for a in 0..=n {
        for b in 0..=n {
            for f in hom_set(a, b) {
                let functor = x.action_functor(&f)?;
                action.push(json!({"map": f, "functor": functor_to_json(&functor)}));
            }
        }
    }
    Ok(json!({"name": x.name(), "truncation": n, "levels": levels, "action": action}))
}

/// A Γ-category document: either `{"builtin", "truncation"?}` or explicit
/// `{"truncation", "levels", "action"}` tables.
pub fn gamma_from_json(name: &str, v: &Value, default_truncation: usize) -> Result<Arc<GammaCategory>> {
    let truncation = usize_field(v, "truncation")?.unwrap_or(default_truncation);
    if let Some(b) = v.get("builtin") {
        let b = b.as_str().ok_or_else(|| bad("builtin must be a name"))?;
        // Built-ins keep their own names, which identify them.
        return fixtures::gamma_by_name(b, truncation);
    }
    let docs = array_field(v, "levels")?;
    if docs.len() != truncation + 1 {
        return Err(bad(format!("{} levels given for truncation {truncation}", docs.len())));
    }
    let mut levels = Vec::new();
    for (p, d) in docs.iter().enumerate() {
        let (c, base) = category_from_json(d)?;
        let base = base.ok_or_else(|| bad(format!("level {p} has no basepoint")))?;
        levels.push(PointedCategory::new(Arc::new(c), base)?);
    }
    let mut action = BTreeMap::new();
    for entry in array_field(v, "action")? {
        let f: PtdMap = serde_json::from_value(entry.get("map").cloned().ok_or_else(|| bad("action entry needs \"map\""))?)
            .map_err(|e| bad(format!("bad pointed map: {e}")))?;
        if f.dom() > truncation || f.cod() > truncation {
            return Err(Error::TruncationExceeded {
                level: f.dom().max(f.cod()),
                truncation,
            });
        }
        let functor = functor_from_json(
            entry.get("functor").ok_or_else(|| bad("action entry needs \"functor\""))?,
            levels[f.dom()].cat.clone(),
            levels[f.cod()].cat.clone(),
        )?;
        action.insert(f, functor);
    }
    GammaCategory::from_tables(name, truncation, levels, action).map(Arc::new)
}

/// Components at every level tuple whose product is within the truncation.
pub fn multimorphism_to_json(f: &GammaMultimorphism) -> Result<Value> {
    let sources: Vec<&str> = f.sources().iter().map(|s| s.name()).collect();
    if let Some(v) = f.nullary_value() {
        let c = f.target().category(1)?;
        return Ok(json!({"name": f.name(), "arity": 0, "target": f.target().name(), "value": c.object_name(v)}));
    }
    let mut components = Vec::new();
    for levels in crate::gamma::level_tuples(f, usize::MAX) {
        let dom = f.domain_category(&levels)?;
        let cod = f.target().category(levels.iter().product())?.clone();
        let d2 = dom.clone();
        let d3 = dom.clone();
        let functor = Functor::from_fns(
            dom,
            cod,
            |o| f.object(&levels, &d2.object_coords(o)),
            |m| f.morphism(&levels, &d3.morphism_coords(m)),
        )?;
        components.push(json!({"levels": levels, "functor": functor_to_json(&functor)}));
    }
    Ok(json!({
        "name": f.name(),
        "arity": f.arity(),
        "sources": sources,
        "target": f.target().name(),
        "components": components,
    }))
}

/// Named objects of a workspace, used to resolve references.
#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub truncation: usize,
    pub gammas: BTreeMap<String, Arc<GammaCategory>>,
    pub multimorphisms: BTreeMap<String, Arc<GammaMultimorphism>>,
    pub modifications: BTreeMap<String, Arc<GammaModification>>,
    pub monoids: BTreeMap<String, GammaMonoid>,
}

impl Workspace {
    pub fn new(truncation: usize) -> Self {
        Workspace {
            truncation,
            ..Default::default()
        }
    }

    /// Adds the documents of `doc`. Later definitions may refer to earlier
    /// ones and to built-ins.
    pub fn load(&mut self, doc: &Value) -> Result<()> {
        check_version(doc)?;
        if let Some(t) = usize_field(doc, "truncation")? {
            self.truncation = t;
        }
        let section = |key: &str| -> Vec<(String, Value)> {
            doc.get(key)
                .and_then(Value::as_object)
                .map(|m| m.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
                .unwrap_or_default()
        };
        for (name, v) in section("gammas") {
            let x = gamma_from_json(&name, &v, self.truncation)?;
            self.gammas.insert(name, x);
        }
        for (name, v) in section("multimorphisms") {
            let f = self.multimorphism_from_json(&name, &v)?;
            self.multimorphisms.insert(name, Arc::new(f));
        }
        for (name, v) in section("modifications") {
            let t = self.modification_from_json(&name, &v)?;
            self.modifications.insert(name, Arc::new(t));
        }
        for (name, v) in section("monoids") {
            let m = self.monoid_from_json(&name, &v)?;
            self.monoids.insert(name, m);
        }
        Ok(())
    }

    pub fn load_str(&mut self, text: &str) -> Result<()> {
        let doc: Value = serde_json::from_str(text).map_err(|e| bad(format!("parse error: {e}")))?;
        self.load(&doc)
    }

    /// A workspace name, or else a built-in Γ-category at the workspace
    /// truncation.
    pub fn gamma(&self, name: &str) -> Result<Arc<GammaCategory>> {
        if let Some(x) = self.gammas.get(name) {
            return Ok(x.clone());
        }
        fixtures::gamma_by_name(name, self.truncation)
    }

    /// A workspace name, or a built-in written `kind:Gamma` (e.g. `mu:HBool`,
    /// `proj:HF2sq:HZ2`, `zero2:HZ2`, `id:J`).
    pub fn multimorphism(&self, name: &str) -> Result<Arc<GammaMultimorphism>> {
        if let Some(f) = self.multimorphisms.get(name) {
            return Ok(f.clone());
        }
        let parts: Vec<&str> = name.split(':').collect();
        let on: Vec<Arc<GammaCategory>> = parts[1..].iter().map(|g| self.gamma(g)).collect::<Result<_>>()?;
        self.builtin_multimorphism(parts[0], &on)
            .map(Arc::new)
            .map_err(|e| match e {
                Error::InvalidDocument(_) => Error::UnknownReference(format!("multimorphism {name}")),
                e => e,
            })
    }

    fn builtin_multimorphism(&self, kind: &str, on: &[Arc<GammaCategory>]) -> Result<GammaMultimorphism> {
        let one = |i: usize| on.get(i).ok_or_else(|| bad(format!("{kind} needs {} Γ-categories", i + 1)));
        match kind {
            "mu" if one(0)?.name() == "J" => fixtures::j_multiplication(&on[0]),
            "mu" => fixtures::multiplication(one(0)?),
            "eta" => fixtures::unit_element(one(0)?),
            "id" => Ok(GammaMultimorphism::identity(one(0)?.clone())),
            "proj" => fixtures::projection(one(0)?, one(1)?),
            "diag" => fixtures::diagonal(one(0)?, one(1)?),
            "skew" => fixtures::skew_form(one(0)?, one(1)?),
            k if k.starts_with("zero") => {
                let arity: usize = k[4..].parse().map_err(|_| bad(format!("bad arity in {k}")))?;
                fixtures::zero_multimorphism(one(0)?, arity)
            }
            _ => Err(bad(format!("unknown built-in {kind}"))),
        }
    }

    fn multimorphism_from_json(&self, name: &str, v: &Value) -> Result<GammaMultimorphism> {
        if let Some(b) = v.get("builtin") {
            let b = b.as_str().ok_or_else(|| bad("builtin must be a name"))?;
            let on: Vec<Arc<GammaCategory>> = match v.get("on") {
                Some(Value::String(s)) => vec![self.gamma(s)?],
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|g| self.gamma(g.as_str().ok_or_else(|| bad("\"on\" holds Γ-category names"))?))
                    .collect::<Result<_>>()?,
                _ => return Err(bad("built-in multimorphisms need \"on\"")),
            };
            let f = self.builtin_multimorphism(b, &on)?;
            return Ok(f.renamed(name));
        }
        let target = self.gamma(str_field(v, "target")?)?;
        if let Some(value) = v.get("value") {
            let value = value.as_str().ok_or_else(|| bad("value must be an object name"))?;
            let o = target
                .category(1)?
                .find_object(value)
                .ok_or_else(|| Error::UnknownReference(format!("object {value}")))?;
            return GammaMultimorphism::nullary(name, target, o);
        }
        let sources: Vec<Arc<GammaCategory>> = array_field(v, "sources")?
            .iter()
            .map(|s| self.gamma(s.as_str().ok_or_else(|| bad("sources are Γ-category names"))?))
            .collect::<Result<_>>()?;
        let mut components = BTreeMap::new();
        for c in array_field(v, "components")? {
            let levels = levels_field(c)?;
            if levels.len() != sources.len() {
                return Err(bad(format!("component levels {levels:?} do not match the arity")));
            }
            for (&p, s) in levels.iter().zip(&sources) {
                if p > s.truncation() {
                    return Err(Error::TruncationExceeded {
                        level: p,
                        truncation: s.truncation(),
                    });
                }
            }
            let prod: usize = levels.iter().product();
            let factors = levels.iter().zip(&sources).map(|(&p, s)| s.category(p).cloned()).collect::<Result<Vec<_>>>()?;
            let dom = Arc::new(FiniteCategory::product(factors));
            let cod = target.category(prod)?.clone();
            let functor = functor_from_json(c.get("functor").ok_or_else(|| bad("component needs \"functor\""))?, dom, cod)?;
            components.insert(levels, functor);
        }
        GammaMultimorphism::from_tables(name, sources, target, components)
    }

    /// A workspace name, or a built-in `twist:Gamma`, `theta:Gamma`,
    /// `theta':Gamma`.
    pub fn modification(&self, name: &str) -> Result<Arc<GammaModification>> {
        if let Some(t) = self.modifications.get(name) {
            return Ok(t.clone());
        }
        let (kind, on) = name.split_once(':').ok_or_else(|| Error::UnknownReference(format!("modification {name}")))?;
        let x = self.gamma(on)?;
        self.builtin_modification(kind, &x).map(Arc::new)
    }

    fn builtin_modification(&self, kind: &str, x: &Arc<GammaCategory>) -> Result<GammaModification> {
        match kind {
            "twist" => fixtures::twist(x),
            "theta" => Ok(fixtures::thin_pair(x)?.0),
            "theta'" => Ok(fixtures::thin_pair(x)?.1),
            _ => Err(Error::UnknownReference(format!("modification {kind}"))),
        }
    }

    fn modification_from_json(&self, name: &str, v: &Value) -> Result<GammaModification> {
        if let Some(b) = v.get("builtin") {
            let b = b.as_str().ok_or_else(|| bad("builtin must be a name"))?;
            let x = self.gamma(str_field(v, "on")?)?;
            return self.builtin_modification(b, &x);
        }
        let source = self.multimorphism(str_field(v, "source")?)?;
        let target = self.multimorphism(str_field(v, "target")?)?;
        if source.arity() == 0 {
            let c = target.target().category(1)?;
            let m = str_field(v, "component")?;
            let m = c.find_morphism(m).ok_or_else(|| Error::UnknownReference(format!("morphism {m}")))?;
            return GammaModification::nullary(name, source, target, m);
        }
        if v.get("thin").and_then(Value::as_bool) == Some(true) {
            return GammaModification::thin(name, source, target);
        }
        let mut components = BTreeMap::new();
        for c in array_field(v, "components")? {
            let levels = levels_field(c)?;
            let dom = source.domain_category(&levels)?;
            let cod = source.target().category(levels.iter().product())?;
            let table = c.get("components").and_then(Value::as_object).ok_or_else(|| bad("components need a map"))?;
            let row = dom
                .objects()
                .map(|o| {
                    let key = dom.object_name(o);
                    let m = table.get(&key).and_then(Value::as_str).ok_or_else(|| bad(format!("no component at {key}")))?;
                    cod.find_morphism(m).ok_or_else(|| Error::UnknownReference(format!("morphism {m}")))
                })
                .collect::<Result<Vec<_>>>()?;
            components.insert(levels, row);
        }
        GammaModification::from_tables(name, source, target, components)
    }

    /// A workspace name, or a built-in monoid named by its Γ-category.
    pub fn monoid(&self, name: &str) -> Result<GammaMonoid> {
        if let Some(m) = self.monoids.get(name) {
            return Ok(m.clone());
        }
        fixtures::monoid_by_name(name, self.truncation)
    }

    fn monoid_from_json(&self, name: &str, v: &Value) -> Result<GammaMonoid> {
        if let Some(b) = v.get("builtin") {
            let b = b.as_str().ok_or_else(|| bad("builtin must be a name"))?;
            let t = usize_field(v, "truncation")?.unwrap_or(self.truncation);
            return fixtures::monoid_by_name(b, t);
        }
        let x = self.gamma(str_field(v, "gamma")?)?;
        let mu = self.multimorphism(str_field(v, "mu")?)?;
        let eta = self.multimorphism(str_field(v, "eta")?)?;
        GammaMonoid::new(name, x, mu, eta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::validate_gamma;

    #[test]
    fn versions() {
        assert!(check_version(&json!({"version": 1})).is_ok());
        assert!(matches!(check_version(&json!({"version": 2})), Err(Error::InvalidDocument(_))));
        assert!(check_version(&json!({})).is_err());
        let mut w = Workspace::new(2);
        assert!(w.load_str("{\"version\": 7}").is_err());
        assert!(w.load_str("not json").is_err());
    }

    #[test]
    fn category_round_trip() {
        let x = fixtures::hz2_twisted(2);
        let c = x.category(2).unwrap();
        let v = c.to_json(Some(x.basepoint(2).unwrap()));
        let (d, base) = category_from_json(&v).unwrap();
        assert_eq!(base, Some(x.basepoint(2).unwrap()));
        assert_eq!(d.to_json(base), v);
    }

    #[test]
    fn gamma_round_trip() {
        let x = fixtures::hbool(2);
        let v = gamma_to_json(&x).unwrap();
        let y = gamma_from_json("copy", &v, 0).unwrap();
        assert_eq!(y.truncation(), 2);
        assert!(validate_gamma(&y, 2).is_ok());
        let mut w = gamma_to_json(&y).unwrap();
        w["name"] = json!(x.name());
        assert_eq!(w, v);
    }

    #[test]
    fn corrupted_gamma_is_rejected_or_invalid() {
        let x = fixtures::hz2(2);
        let mut v = gamma_to_json(&x).unwrap();
        v["levels"].as_array_mut().unwrap().pop();
        assert!(gamma_from_json("bad", &v, 0).is_err());
    }

    #[test]
    fn multimorphism_round_trip() {
        let x = fixtures::hbool(2);
        let mu = fixtures::multiplication(&x).unwrap();
        let doc = json!({
            "version": 1,
            "gammas": {x.name(): gamma_to_json(&x).unwrap()},
            "multimorphisms": {"m": multimorphism_to_json(&mu).unwrap()},
        });
        let mut w = Workspace::new(2);
        w.load(&doc).unwrap();
        let m = w.multimorphism("m").unwrap();
        let mut back = multimorphism_to_json(&m).unwrap();
        back["name"] = json!(mu.name());
        assert_eq!(back, multimorphism_to_json(&mu).unwrap());
    }

    #[test]
    fn builtin_references() {
        let w = Workspace::new(4);
        assert_eq!(w.gamma("HBool").unwrap().truncation(), 4);
        assert_eq!(w.multimorphism("mu:HBool").unwrap().arity(), 2);
        assert_eq!(w.multimorphism("eta:HZ2").unwrap().arity(), 0);
        assert_eq!(w.multimorphism("zero3:HZ2").unwrap().arity(), 3);
        assert_eq!(w.multimorphism("proj:HF2sq:HZ2").unwrap().arity(), 1);
        assert!(matches!(w.multimorphism("nope:HZ2"), Err(Error::UnknownReference(_))));
        assert!(w.modification("twist:HZ2twisted").is_ok());
        assert!(w.modification("twist").is_err());
        assert_eq!(w.monoid("J").unwrap().x.name(), "J");
    }

    #[test]
    fn workspace_sections() {
        let mut w = Workspace::new(2);
        w.load(&json!({
            "version": 1,
            "truncation": 3,
            "gammas": {"X": {"builtin": "HZ2codiscrete"}},
            "multimorphisms": {
                "m": {"builtin": "mu", "on": "X"},
                "e": {"target": "X", "value": "(1)"},
            },
            "modifications": {"t": {"source": "m", "target": "m", "thin": true}},
            "monoids": {"R": {"gamma": "X", "mu": "m", "eta": "e"}},
        }))
        .unwrap();
        assert_eq!(w.gamma("X").unwrap().truncation(), 3);
        assert_eq!(w.multimorphism("m").unwrap().name(), "m");
        assert!(w.modification("t").is_ok());
        assert_eq!(w.monoid("R").unwrap().name, "R");
    }
}
