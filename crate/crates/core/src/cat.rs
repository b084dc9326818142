//! Finite categories, functors and natural transformations.
//!
//! A category is either an explicit table or a product of other categories.
//! Products are never materialized: objects and morphisms of a product are
//! tuples encoded in mixed radix with the first factor most significant, and
//! composition happens coordinatewise.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::report::Report;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Ob(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Mor(pub u32);

impl Ob {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Mixed-radix tuple coder, first coordinate most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radix {
    radices: Vec<usize>,
    total: usize,
}

impl Radix {
    pub fn new(radices: Vec<usize>) -> Self {
        let total = radices.iter().product();
        Radix { radices, total }
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn len(&self) -> usize {
        self.radices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radices.is_empty()
    }

    pub fn encode(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.radices.len());
        digits
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&d, &r)| acc * r + d)
    }

    pub fn decode_into(&self, mut code: usize, out: &mut [usize]) {
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = code % r;
            code /= r;
        }
    }

    pub fn decode(&self, code: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        self.decode_into(code, &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismEntry {
    pub name: String,
    pub src: Ob,
    pub tgt: Ob,
}

#[derive(Clone, Debug)]
struct TableCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismEntry>,
    identities: Vec<Mor>,
    compose: HashMap<(Mor, Mor), Mor>,
    homs: HashMap<(Ob, Ob), Vec<Mor>>,
    ob_lookup: HashMap<String, Ob>,
    mor_lookup: HashMap<String, Mor>,
}

#[derive(Clone, Debug)]
struct ProductCat {
    factors: Vec<Arc<FiniteCategory>>,
    obs: Radix,
    mors: Radix,
}

#[derive(Clone, Debug)]
enum Repr {
    Table(TableCat),
    Product(ProductCat),
}

#[derive(Clone, Debug)]
pub struct FiniteCategory {
    repr: Repr,
}

impl FiniteCategory {
    /// Builds a category from explicit tables. Only typing is checked here;
    /// the category laws are checked by [`validate_category`].
    pub fn from_tables(
        objects: Vec<String>,
        morphisms: Vec<MorphismEntry>,
        identities: Vec<Mor>,
        compose: HashMap<(Mor, Mor), Mor>,
    ) -> Result<Self> {
        let no = objects.len();
        if identities.len() != no {
            return Err(Error::InvalidDocument(format!(
                "{} objects but {} identities",
                no,
                identities.len()
            )));
        }
        let mut ob_lookup = HashMap::new();
        for (i, name) in objects.iter().enumerate() {
            if ob_lookup.insert(name.clone(), Ob(i as u32)).is_some() {
                return Err(Error::InvalidDocument(format!("duplicate object {name}")));
            }
        }
        let mut mor_lookup = HashMap::new();
        let mut homs: HashMap<(Ob, Ob), Vec<Mor>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.src.index() >= no || m.tgt.index() >= no {
                return Err(Error::InvalidDocument(format!("morphism {} has unknown endpoints", m.name)));
            }
            if mor_lookup.insert(m.name.clone(), Mor(i as u32)).is_some() {
                return Err(Error::InvalidDocument(format!("duplicate morphism {}", m.name)));
            }
            homs.entry((m.src, m.tgt)).or_default().push(Mor(i as u32));
        }
        for (i, id) in identities.iter().enumerate() {
            let e = morphisms
                .get(id.index())
                .ok_or_else(|| Error::InvalidDocument(format!("identity of {} is unknown", objects[i])))?;
            if e.src != Ob(i as u32) || e.tgt != Ob(i as u32) {
                return Err(Error::InvalidDocument(format!("identity {} is not an endomorphism of {}", e.name, objects[i])));
            }
        }
        for (&(g, f), &gf) in &compose {
            let (Some(ge), Some(fe), Some(gfe)) = (morphisms.get(g.index()), morphisms.get(f.index()), morphisms.get(gf.index())) else {
                return Err(Error::InvalidDocument("composition table mentions unknown morphisms".into()));
            };
            if fe.tgt != ge.src || gfe.src != fe.src || gfe.tgt != ge.tgt {
                return Err(Error::InvalidDocument(format!(
                    "composite {} o {} = {} is ill-typed",
                    ge.name, fe.name, gfe.name
                )));
            }
        }
        Ok(FiniteCategory {
            repr: Repr::Table(TableCat {
                objects,
                morphisms,
                identities,
                compose,
                homs,
                ob_lookup,
                mor_lookup,
            }),
        })
    }

    /// The category with one object and one morphism.
    pub fn terminal() -> Self {
        Self::discrete(&["*"])
    }

    /// Only identity morphisms, named `1_a`.
    pub fn discrete(names: &[&str]) -> Self {
        Self::preorder(names, |a, b| a == b)
    }

    /// The thin category with a morphism `a->b` whenever `leq(a, b)`.
    /// Identities are named `1_a`. `leq` must be reflexive and transitive.
    pub fn preorder(names: &[&str], leq: impl Fn(usize, usize) -> bool) -> Self {
        let n = names.len();
        let mut morphisms = Vec::new();
        let mut index = HashMap::new();
        let mut identities = vec![Mor(0); n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    let name = if a == b {
                        format!("1_{}", names[a])
                    } else {
                        format!("{}->{}", names[a], names[b])
                    };
                    let m = Mor(morphisms.len() as u32);
                    if a == b {
                        identities[a] = m;
                    }
                    index.insert((a, b), m);
                    morphisms.push(MorphismEntry {
                        name,
                        src: Ob(a as u32),
                        tgt: Ob(b as u32),
                    });
                }
            }
        }
        let mut compose = HashMap::new();
        for (&(a, b), &f) in &index {
            for c in 0..n {
                if let Some(&g) = index.get(&(b, c)) {
                    let gf = index[&(a, c)];
                    compose.insert((g, f), gf);
                }
            }
        }
        Self::from_tables(names.iter().map(|s| s.to_string()).collect(), morphisms, identities, compose)
            .expect("preorder tables are well typed")
    }

    /// The product category. The empty product is terminal.
    pub fn product(factors: Vec<Arc<FiniteCategory>>) -> Self {
        let obs = Radix::new(factors.iter().map(|c| c.object_count()).collect());
        let mors = Radix::new(factors.iter().map(|c| c.morphism_count()).collect());
        FiniteCategory {
            repr: Repr::Product(ProductCat { factors, obs, mors }),
        }
    }

    /// The `n`-fold power of `c`.
    pub fn power(c: &Arc<FiniteCategory>, n: usize) -> Self {
        Self::product(vec![c.clone(); n])
    }

    pub fn factors(&self) -> Option<&[Arc<FiniteCategory>]> {
        match &self.repr {
            Repr::Product(p) => Some(&p.factors),
            Repr::Table(_) => None,
        }
    }

    pub fn object_count(&self) -> usize {
        match &self.repr {
            Repr::Table(t) => t.objects.len(),
            Repr::Product(p) => p.obs.total(),
        }
    }

    pub fn morphism_count(&self) -> usize {
        match &self.repr {
            Repr::Table(t) => t.morphisms.len(),
            Repr::Product(p) => p.mors.total(),
        }
    }

    pub fn objects(&self) -> impl Iterator<Item = Ob> {
        (0..self.object_count() as u32).map(Ob)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> {
        (0..self.morphism_count() as u32).map(Mor)
    }

    pub fn contains_object(&self, o: Ob) -> bool {
        o.index() < self.object_count()
    }

    pub fn contains_morphism(&self, m: Mor) -> bool {
        m.index() < self.morphism_count()
    }

    /// Coordinates of a product object.
    pub fn object_coords(&self, o: Ob) -> Vec<Ob> {
        match &self.repr {
            Repr::Product(p) => p.obs.decode(o.index()).into_iter().map(|i| Ob(i as u32)).collect(),
            Repr::Table(_) => vec![o],
        }
    }

    pub fn morphism_coords(&self, m: Mor) -> Vec<Mor> {
        match &self.repr {
            Repr::Product(p) => p.mors.decode(m.index()).into_iter().map(|i| Mor(i as u32)).collect(),
            Repr::Table(_) => vec![m],
        }
    }

    /// The product object with the given coordinates.
    pub fn tuple_object(&self, coords: &[Ob]) -> Ob {
        match &self.repr {
            Repr::Product(p) => {
                let d: Vec<usize> = coords.iter().map(|o| o.index()).collect();
                Ob(p.obs.encode(&d) as u32)
            }
            Repr::Table(_) => coords[0],
        }
    }

    pub fn tuple_morphism(&self, coords: &[Mor]) -> Mor {
        match &self.repr {
            Repr::Product(p) => {
                let d: Vec<usize> = coords.iter().map(|m| m.index()).collect();
                Mor(p.mors.encode(&d) as u32)
            }
            Repr::Table(_) => coords[0],
        }
    }

    pub fn src(&self, m: Mor) -> Ob {
        match &self.repr {
            Repr::Table(t) => t.morphisms[m.index()].src,
            Repr::Product(p) => {
                let c: Vec<Ob> = self.morphism_coords(m).iter().zip(&p.factors).map(|(&m, f)| f.src(m)).collect();
                self.tuple_object(&c)
            }
        }
    }

    pub fn tgt(&self, m: Mor) -> Ob {
        match &self.repr {
            Repr::Table(t) => t.morphisms[m.index()].tgt,
            Repr::Product(p) => {
                let c: Vec<Ob> = self.morphism_coords(m).iter().zip(&p.factors).map(|(&m, f)| f.tgt(m)).collect();
                self.tuple_object(&c)
            }
        }
    }

    pub fn identity(&self, o: Ob) -> Mor {
        match &self.repr {
            Repr::Table(t) => t.identities[o.index()],
            Repr::Product(p) => {
                let c: Vec<Mor> = self.object_coords(o).iter().zip(&p.factors).map(|(&o, f)| f.identity(o)).collect();
                self.tuple_morphism(&c)
            }
        }
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        let s = self.src(m);
        s == self.tgt(m) && self.identity(s) == m
    }

    /// `g ∘ f`, or `None` when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        match &self.repr {
            Repr::Table(t) => t.compose.get(&(g, f)).copied(),
            Repr::Product(p) => {
                let gs = p.mors.decode(g.index());
                let fs = p.mors.decode(f.index());
                let mut out = Vec::with_capacity(gs.len());
                for ((fac, &gi), &fi) in p.factors.iter().zip(&gs).zip(&fs) {
                    out.push(fac.compose(Mor(gi as u32), Mor(fi as u32))?.index());
                }
                Some(Mor(p.mors.encode(&out) as u32))
            }
        }
    }

    pub fn hom(&self, a: Ob, b: Ob) -> Vec<Mor> {
        match &self.repr {
            Repr::Table(t) => t.homs.get(&(a, b)).cloned().unwrap_or_default(),
            Repr::Product(p) => {
                let ac = self.object_coords(a);
                let bc = self.object_coords(b);
                let per: Vec<Vec<Mor>> = p
                    .factors
                    .iter()
                    .zip(ac.iter().zip(&bc))
                    .map(|(f, (&x, &y))| f.hom(x, y))
                    .collect();
                cartesian(&per).into_iter().map(|c| self.tuple_morphism(&c)).collect()
            }
        }
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (a, b) = (self.src(m), self.tgt(m));
        self.hom(b, a).into_iter().find(|&g| {
            self.compose(g, m) == Some(self.identity(a)) && self.compose(m, g) == Some(self.identity(b))
        })
    }

    pub fn is_isomorphism(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// All composable pairs `(g, f)` with `g ∘ f` defined by typing.
    pub fn composable_pairs(&self) -> Vec<(Mor, Mor)> {
        let mut by_src: HashMap<Ob, Vec<Mor>> = HashMap::new();
        for m in self.morphisms() {
            by_src.entry(self.src(m)).or_default().push(m);
        }
        let mut out = Vec::new();
        for f in self.morphisms() {
            if let Some(gs) = by_src.get(&self.tgt(f)) {
                out.extend(gs.iter().map(|&g| (g, f)));
            }
        }
        out
    }

    pub fn object_name(&self, o: Ob) -> String {
        match &self.repr {
            Repr::Table(t) => t.objects[o.index()].clone(),
            Repr::Product(p) => {
                let parts: Vec<String> = self.object_coords(o).iter().zip(&p.factors).map(|(&o, f)| f.object_name(o)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn morphism_name(&self, m: Mor) -> String {
        match &self.repr {
            Repr::Table(t) => t.morphisms[m.index()].name.clone(),
            Repr::Product(p) => {
                let parts: Vec<String> = self.morphism_coords(m).iter().zip(&p.factors).map(|(&m, f)| f.morphism_name(m)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn find_object(&self, name: &str) -> Option<Ob> {
        match &self.repr {
            Repr::Table(t) => t.ob_lookup.get(name).copied(),
            Repr::Product(p) => {
                let parts = split_tuple(name)?;
                if parts.len() != p.factors.len() {
                    return None;
                }
                let c: Option<Vec<Ob>> = parts.iter().zip(&p.factors).map(|(s, f)| f.find_object(s)).collect();
                Some(self.tuple_object(&c?))
            }
        }
    }

    pub fn find_morphism(&self, name: &str) -> Option<Mor> {
        match &self.repr {
            Repr::Table(t) => t.mor_lookup.get(name).copied(),
            Repr::Product(p) => {
                let parts = split_tuple(name)?;
                if parts.len() != p.factors.len() {
                    return None;
                }
                let c: Option<Vec<Mor>> = parts.iter().zip(&p.factors).map(|(s, f)| f.find_morphism(s)).collect();
                Some(self.tuple_morphism(&c?))
            }
        }
    }

    /// Renders the category as a JSON document.
    pub fn to_json(&self, basepoint: Option<Ob>) -> serde_json::Value {
        let objects: Vec<String> = self.objects().map(|o| self.object_name(o)).collect();
        let morphisms: Vec<_> = self
            .morphisms()
            .map(|m| {
                json!({
                    "id": self.morphism_name(m),
                    "src": self.object_name(self.src(m)),
                    "tgt": self.object_name(self.tgt(m)),
                })
            })
            .collect();
        let identity: serde_json::Map<String, serde_json::Value> = self
            .objects()
            .map(|o| (self.object_name(o), json!(self.morphism_name(self.identity(o)))))
            .collect();
        let compose: Vec<_> = self
            .composable_pairs()
            .into_iter()
            .filter_map(|(g, f)| {
                self.compose(g, f)
                    .map(|gf| json!([self.morphism_name(g), self.morphism_name(f), self.morphism_name(gf)]))
            })
            .collect();
        let mut doc = json!({
            "objects": objects,
            "morphisms": morphisms,
            "identity": identity,
            "compose": compose,
        });
        if let Some(b) = basepoint {
            doc["basepoint"] = json!(self.object_name(b));
        }
        doc
    }
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.object_count() == other.object_count()
            && self.morphism_count() == other.morphism_count()
            && self.objects().all(|o| self.identity(o) == other.identity(o))
            && self
                .morphisms()
                .all(|m| self.src(m) == other.src(m) && self.tgt(m) == other.tgt(m))
            && self
                .composable_pairs()
                .into_iter()
                .all(|(g, f)| self.compose(g, f) == other.compose(g, f))
    }
}

impl fmt::Display for FiniteCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "category({} objects, {} morphisms)", self.object_count(), self.morphism_count())
    }
}

/// Splits `"(a,(b,c))"` into `["a", "(b,c)"]`.
fn split_tuple(name: &str) -> Option<Vec<&str>> {
    let inner = name.strip_prefix('(')?.strip_suffix(')')?;
    if inner.is_empty() {
        return Some(Vec::new());
    }
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&inner[start..]);
    Some(parts)
}

/// All tuples choosing one element from each list, first list slowest.
pub fn cartesian<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out = vec![Vec::with_capacity(lists.len())];
    for list in lists {
        let mut next = Vec::with_capacity(out.len() * list.len());
        for prefix in &out {
            for x in list {
                let mut t = prefix.clone();
                t.push(x.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

/// Checks the category laws exhaustively.
pub fn validate_category(c: &FiniteCategory) -> Report {
    let mut r = Report::new("category");
    for o in c.objects() {
        let id = c.identity(o);
        r.check(c.src(id) == o && c.tgt(id) == o, "identity.typing", || {
            (format!("identity of {} is not an endomorphism", c.object_name(o)), json!(c.object_name(o)))
        });
    }
    for f in c.morphisms() {
        let (a, b) = (c.src(f), c.tgt(f));
        let ok = c.compose(f, c.identity(a)) == Some(f) && c.compose(c.identity(b), f) == Some(f);
        r.check(ok, "identity.unit", || ("identity is not a unit".into(), json!(c.morphism_name(f))));
    }
    let pairs = c.composable_pairs();
    for &(g, f) in &pairs {
        match c.compose(g, f) {
            None => r.fail(
                "composition.total",
                "composable pair has no composite",
                json!([c.morphism_name(g), c.morphism_name(f)]),
            ),
            Some(gf) => r.check(c.src(gf) == c.src(f) && c.tgt(gf) == c.tgt(g), "composition.typing", || {
                ("composite has the wrong endpoints".into(), json!([c.morphism_name(g), c.morphism_name(f)]))
            }),
        }
    }
    for &(g, f) in &pairs {
        let Some(gf) = c.compose(g, f) else { continue };
        for h in c.morphisms().filter(|&h| c.src(h) == c.tgt(g)) {
            let lhs = c.compose(h, gf);
            let rhs = c.compose(h, g).and_then(|hg| c.compose(hg, f));
            r.check(lhs == rhs, "composition.associativity", || {
                (
                    "composition is not associative".into(),
                    json!([c.morphism_name(h), c.morphism_name(g), c.morphism_name(f)]),
                )
            });
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct PointedCategory {
    pub cat: Arc<FiniteCategory>,
    pub basepoint: Ob,
}

impl PointedCategory {
    pub fn new(cat: Arc<FiniteCategory>, basepoint: Ob) -> Result<Self> {
        if !cat.contains_object(basepoint) {
            return Err(Error::InvalidDocument("basepoint is not an object".into()));
        }
        Ok(PointedCategory { cat, basepoint })
    }

    pub fn base_identity(&self) -> Mor {
        self.cat.identity(self.basepoint)
    }
}

#[derive(Clone, Debug)]
pub struct Functor {
    pub dom: Arc<FiniteCategory>,
    pub cod: Arc<FiniteCategory>,
    objects: Vec<Ob>,
    morphisms: Vec<Mor>,
}

impl Functor {
    /// Builds a functor from its tables, checking sizes and ranges only.
    pub fn new(dom: Arc<FiniteCategory>, cod: Arc<FiniteCategory>, objects: Vec<Ob>, morphisms: Vec<Mor>) -> Result<Self> {
        if objects.len() != dom.object_count() || morphisms.len() != dom.morphism_count() {
            return Err(Error::DomainMismatch("functor tables do not cover the domain".into()));
        }
        if objects.iter().any(|&o| !cod.contains_object(o)) || morphisms.iter().any(|&m| !cod.contains_morphism(m)) {
            return Err(Error::DomainMismatch("functor tables leave the codomain".into()));
        }
        Ok(Functor { dom, cod, objects, morphisms })
    }

    pub fn from_fns(
        dom: Arc<FiniteCategory>,
        cod: Arc<FiniteCategory>,
        on_ob: impl Fn(Ob) -> Result<Ob>,
        on_mor: impl Fn(Mor) -> Result<Mor>,
    ) -> Result<Self> {
        let objects = dom.objects().map(&on_ob).collect::<Result<Vec<_>>>()?;
        let morphisms = dom.morphisms().map(&on_mor).collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, objects, morphisms)
    }

    pub fn identity(c: &Arc<FiniteCategory>) -> Self {
        Functor {
            dom: c.clone(),
            cod: c.clone(),
            objects: c.objects().collect(),
            morphisms: c.morphisms().collect(),
        }
    }

    pub fn constant(dom: Arc<FiniteCategory>, cod: Arc<FiniteCategory>, o: Ob) -> Self {
        let id = cod.identity(o);
        Functor {
            objects: vec![o; dom.object_count()],
            morphisms: vec![id; dom.morphism_count()],
            dom,
            cod,
        }
    }

    pub fn ob(&self, o: Ob) -> Ob {
        self.objects[o.index()]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.morphisms[m.index()]
    }

    pub fn object_table(&self) -> &[Ob] {
        &self.objects
    }

    pub fn morphism_table(&self) -> &[Mor] {
        &self.morphisms
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Functor) -> Result<Functor> {
        if *inner.cod != *self.dom {
            return Err(Error::DomainMismatch("functors are not composable".into()));
        }
        Ok(Functor {
            dom: inner.dom.clone(),
            cod: self.cod.clone(),
            objects: inner.objects.iter().map(|&o| self.ob(o)).collect(),
            morphisms: inner.morphisms.iter().map(|&m| self.mor(m)).collect(),
        })
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects && self.morphisms == other.morphisms && *self.dom == *other.dom && *self.cod == *other.cod
    }
}

/// Checks typing, identities and composition for a functor.
pub fn validate_functor(f: &Functor) -> Report {
    let mut r = Report::new("functor");
    let (d, c) = (&f.dom, &f.cod);
    for m in d.morphisms() {
        let ok = c.src(f.mor(m)) == f.ob(d.src(m)) && c.tgt(f.mor(m)) == f.ob(d.tgt(m));
        r.check(ok, "functor.typing", || ("image has the wrong endpoints".into(), json!(d.morphism_name(m))));
    }
    for o in d.objects() {
        r.check(f.mor(d.identity(o)) == c.identity(f.ob(o)), "functor.identity", || {
            ("identity not preserved".into(), json!(d.object_name(o)))
        });
    }
    for (g, h) in d.composable_pairs() {
        let Some(gh) = d.compose(g, h) else { continue };
        let ok = c.compose(f.mor(g), f.mor(h)) == Some(f.mor(gh));
        r.check(ok, "functor.composition", || {
            ("composition not preserved".into(), json!([d.morphism_name(g), d.morphism_name(h)]))
        });
    }
    r
}

/// Functor checks plus preservation of the basepoint.
pub fn validate_pointed_functor(f: &Functor, dom_base: Ob, cod_base: Ob) -> Report {
    let mut r = validate_functor(f);
    r.suite = "pointed functor".into();
    r.check(f.ob(dom_base) == cod_base, "functor.pointed", || {
        ("basepoint not preserved".into(), json!(f.dom.object_name(dom_base)))
    });
    r
}

#[derive(Clone, Debug, PartialEq)]
pub struct NatTransformation {
    pub source: Functor,
    pub target: Functor,
    components: Vec<Mor>,
}

impl NatTransformation {
    pub fn new(source: Functor, target: Functor, components: Vec<Mor>) -> Result<Self> {
        if *source.dom != *target.dom || *source.cod != *target.cod {
            return Err(Error::DomainMismatch("source and target functors differ in type".into()));
        }
        if components.len() != source.dom.object_count() {
            return Err(Error::DomainMismatch("one component per object is required".into()));
        }
        Ok(NatTransformation { source, target, components })
    }

    pub fn identity(f: &Functor) -> Self {
        let components = f.dom.objects().map(|o| f.cod.identity(f.ob(o))).collect();
        NatTransformation {
            source: f.clone(),
            target: f.clone(),
            components,
        }
    }

    pub fn component(&self, o: Ob) -> Mor {
        self.components[o.index()]
    }

    /// `self ∘ inner`, componentwise.
    pub fn vertical(&self, inner: &NatTransformation) -> Result<Self> {
        if inner.target != self.source {
            return Err(Error::DomainMismatch("transformations are not composable".into()));
        }
        let cod = &self.source.cod;
        let components = inner
            .components
            .iter()
            .zip(&self.components)
            .map(|(&a, &b)| cod.compose(b, a).ok_or_else(|| Error::IllTyped("components do not compose".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(NatTransformation {
            source: inner.source.clone(),
            target: self.target.clone(),
            components,
        })
    }
}

/// Checks component typing and naturality.
pub fn validate_nat(t: &NatTransformation) -> Report {
    let mut r = Report::new("natural transformation");
    let (d, c) = (&t.source.dom, &t.source.cod);
    for o in d.objects() {
        let m = t.component(o);
        let ok = c.src(m) == t.source.ob(o) && c.tgt(m) == t.target.ob(o);
        r.check(ok, "nat.typing", || ("component has the wrong endpoints".into(), json!(d.object_name(o))));
    }
    for f in d.morphisms() {
        let lhs = c.compose(t.target.mor(f), t.component(d.src(f)));
        let rhs = c.compose(t.component(d.tgt(f)), t.source.mor(f));
        r.check(lhs.is_some() && lhs == rhs, "nat.naturality", || {
            ("naturality square does not commute".into(), json!(d.morphism_name(f)))
        });
    }
    r
}

/// Naturality plus an identity component at the basepoint.
pub fn validate_pointed_nat(t: &NatTransformation, dom_base: Ob) -> Report {
    let mut r = validate_nat(t);
    r.suite = "pointed natural transformation".into();
    let c = &t.source.cod;
    r.check(c.is_identity(t.component(dom_base)), "nat.pointed", || {
        ("component at the basepoint is not an identity".into(), json!(t.source.dom.object_name(dom_base)))
    });
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> Arc<FiniteCategory> {
        Arc::new(FiniteCategory::preorder(&["0", "1"], |a, b| a <= b))
    }

    #[test]
    fn preorder_is_a_category() {
        let c = arrow();
        assert_eq!(c.object_count(), 2);
        assert_eq!(c.morphism_count(), 3);
        assert!(validate_category(&c).is_ok());
    }

    #[test]
    fn product_counts_and_names() {
        let a = arrow();
        let p = FiniteCategory::power(&a, 3);
        assert_eq!(p.object_count(), 8);
        assert_eq!(p.morphism_count(), 27);
        assert!(validate_category(&p).is_ok());
        let o = p.find_object("(0,1,1)").unwrap();
        assert_eq!(p.object_name(o), "(0,1,1)");
        assert_eq!(o, Ob(3));
        let m = p.find_morphism("(0->1,1_1,1_0)").unwrap();
        assert_eq!(p.src(m), p.find_object("(0,1,0)").unwrap());
        assert_eq!(p.hom(p.find_object("(0,0,0)").unwrap(), p.find_object("(1,1,1)").unwrap()).len(), 1);
    }

    #[test]
    fn empty_product_is_terminal() {
        let p = FiniteCategory::product(vec![]);
        assert_eq!(p.object_count(), 1);
        assert_eq!(p.morphism_count(), 1);
        assert_eq!(p.object_name(Ob(0)), "()");
        assert_eq!(p.find_object("()"), Some(Ob(0)));
        assert!(validate_category(&p).is_ok());
    }

    #[test]
    fn nested_tuple_names_round_trip() {
        let a = arrow();
        let p = Arc::new(FiniteCategory::power(&a, 2));
        let q = FiniteCategory::product(vec![p, a]);
        for o in q.objects() {
            assert_eq!(q.find_object(&q.object_name(o)), Some(o));
        }
        for m in q.morphisms() {
            assert_eq!(q.find_morphism(&q.morphism_name(m)), Some(m));
        }
    }

    #[test]
    fn broken_table_is_caught() {
        // Two parallel endomorphisms e, e' of one object where e∘e' is missing.
        let morphisms = vec![
            MorphismEntry { name: "1".into(), src: Ob(0), tgt: Ob(0) },
            MorphismEntry { name: "e".into(), src: Ob(0), tgt: Ob(0) },
        ];
        let mut compose = HashMap::new();
        compose.insert((Mor(0), Mor(0)), Mor(0));
        compose.insert((Mor(0), Mor(1)), Mor(1));
        compose.insert((Mor(1), Mor(0)), Mor(1));
        let c = FiniteCategory::from_tables(vec!["x".into()], morphisms, vec![Mor(0)], compose).unwrap();
        let r = validate_category(&c);
        assert!(r.has_law("composition.total"));
    }

    #[test]
    fn functor_and_nat_checks() {
        let a = arrow();
        let id = Functor::identity(&a);
        assert!(validate_functor(&id).is_ok());
        let zero = Functor::constant(a.clone(), a.clone(), Ob(0));
        let one = Functor::constant(a.clone(), a.clone(), Ob(1));
        let t = NatTransformation::new(zero.clone(), id.clone(), a.objects().map(|o| a.hom(Ob(0), o)[0]).collect()).unwrap();
        assert!(validate_nat(&t).is_ok());
        let u = NatTransformation::new(id.clone(), one.clone(), a.objects().map(|o| a.hom(o, Ob(1))[0]).collect()).unwrap();
        assert!(validate_nat(&u).is_ok());
        let v = u.vertical(&t).unwrap();
        assert!(validate_nat(&v).is_ok());
        assert!(!validate_pointed_nat(&v, Ob(0)).is_ok());
        // Swapping the two objects is not a functor on the arrow category.
        let swap = Functor::new(a.clone(), a.clone(), vec![Ob(1), Ob(0)], vec![Mor(2), Mor(1), Mor(0)]).unwrap();
        assert!(!validate_functor(&swap).is_ok());
    }

    #[test]
    fn radix_round_trip() {
        let r = Radix::new(vec![3, 1, 4]);
        for code in 0..r.total() {
            assert_eq!(r.encode(&r.decode(code)), code);
        }
        assert_eq!(r.encode(&[1, 0, 2]), 6);
    }
}
