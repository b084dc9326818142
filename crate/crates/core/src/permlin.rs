//! Permutative categories, multilinear functors and multilinear
//! transformations, with exhaustive checkers over bounded pools.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fskel::{braid, hom_set, smash_map, PtdMap};
use crate::indexing::{block_swap, enumerate_amorphisms, AMorphism, AObject, Permutation, SeqBound};
use crate::report::Report;

/// A permutative category, possibly infinite, with finite pools of objects
/// and morphisms over which the checkers quantify. Checks with three or
/// more quantified variables use the small pools.
pub trait Permutative: Send + Sync {
    type Ob: Clone + Eq + Hash + Debug + Send + Sync;
    type Mor: Clone + Eq + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn dom(&self, f: &Self::Mor) -> Self::Ob;
    fn cod(&self, f: &Self::Mor) -> Self::Ob;
    fn identity(&self, a: &Self::Ob) -> Self::Mor;
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn unit(&self) -> Self::Ob;
    fn tensor(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Ob;
    fn tensor_mor(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    fn braiding(&self, a: &Self::Ob, b: &Self::Ob) -> Self::Mor;
    fn is_isomorphism(&self, f: &Self::Mor) -> bool;

    fn is_identity(&self, f: &Self::Mor) -> bool {
        *f == self.identity(&self.dom(f))
    }

    /// Checks a morphism produced by some construction against the
    /// category's own typing rules.
    fn check_morphism(&self, _f: &Self::Mor) -> Result<()> {
        Ok(())
    }

    fn object_pool(&self) -> &[Self::Ob];
    fn morphism_pool(&self) -> &[Self::Mor];

    fn small_object_pool(&self) -> &[Self::Ob] {
        self.object_pool()
    }

    fn small_morphism_pool(&self) -> &[Self::Mor] {
        self.morphism_pool()
    }

    fn object_json(&self, a: &Self::Ob) -> Value;
    fn morphism_json(&self, f: &Self::Mor) -> Value;

    fn bound_json(&self) -> Value {
        json!({
            "objects": self.object_pool().len(),
            "morphisms": self.morphism_pool().len(),
            "small_objects": self.small_object_pool().len(),
            "small_morphisms": self.small_morphism_pool().len(),
        })
    }
}

/// Calls `f` on every tuple of the cartesian product, last pool fastest.
pub fn for_each_tuple<T: Clone>(pools: &[&[T]], mut f: impl FnMut(&[T])) {
    if pools.iter().any(|p| p.is_empty()) {
        return;
    }
    let mut idx = vec![0; pools.len()];
    let mut cur: Vec<T> = pools.iter().map(|p| p[0].clone()).collect();
    loop {
        f(&cur);
        let mut i = pools.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < pools[i].len() {
                cur[i] = pools[i][idx[i]].clone();
                break;
            }
            idx[i] = 0;
            cur[i] = pools[i][0].clone();
        }
    }
}

fn replaced<T: Clone>(xs: &[T], i: usize, v: T) -> Vec<T> {
    let mut out = xs.to_vec();
    out[i] = v;
    out
}

/// Morphisms of the pool grouped by domain.
fn by_domain<C: Permutative>(c: &C, pool: &[C::Mor]) -> HashMap<C::Ob, Vec<C::Mor>> {
    let mut out: HashMap<C::Ob, Vec<C::Mor>> = HashMap::new();
    for f in pool {
        out.entry(c.dom(f)).or_default().push(f.clone());
    }
    out
}

fn eq_or<C: Permutative>(r: Result<C::Mor>, other: Result<C::Mor>) -> Result<bool> {
    Ok(r? == other?)
}

pub fn validate_permutative<C: Permutative>(c: &C) -> Report {
    let mut r = Report::new(format!("permutative:{}", c.name())).with_bound(c.bound_json());
    let obs = c.object_pool();
    let mors = c.morphism_pool();
    let small_obs = c.small_object_pool();
    let small = c.small_morphism_pool();
    let e = c.unit();

    for a in obs {
        let id = c.identity(a);
        r.check(c.dom(&id) == *a && c.cod(&id) == *a, "identity.typing", || {
            ("identity has the wrong endpoints".into(), c.object_json(a))
        });
    }
    for f in mors {
        let (d, t) = (c.dom(f), c.cod(f));
        let ok = eq_or::<C>(c.compose(f, &c.identity(&d)), Ok(f.clone()))
            .and_then(|l| Ok(l && c.compose(&c.identity(&t), f)? == *f));
        r.outcome("identity.unit", ok, || c.morphism_json(f));
    }
    let out = by_domain(c, mors);
    for f in mors {
        for g in out.get(&c.cod(f)).into_iter().flatten() {
            let ok = c.compose(g, f).map(|h| c.dom(&h) == c.dom(f) && c.cod(&h) == c.cod(g));
            r.outcome("composition.typing", ok, || json!([c.morphism_json(g), c.morphism_json(f)]));
        }
    }
    let small_out = by_domain(c, small);
    for f in small {
        for g in small_out.get(&c.cod(f)).into_iter().flatten() {
            for h in small_out.get(&c.cod(g)).into_iter().flatten() {
                let ok = (|| {
                    let l = c.compose(h, &c.compose(g, f)?)?;
                    let rr = c.compose(&c.compose(h, g)?, f)?;
                    Ok(l == rr)
                })();
                r.outcome("composition.associativity", ok, || {
                    json!([c.morphism_json(h), c.morphism_json(g), c.morphism_json(f)])
                });
            }
        }
    }

    let id_e = c.identity(&e);
    for a in obs {
        r.check(c.tensor(&e, a) == *a && c.tensor(a, &e) == *a, "tensor.unit", || {
            ("unit is not strict".into(), c.object_json(a))
        });
    }
    for f in mors {
        r.check(c.tensor_mor(&id_e, f) == *f && c.tensor_mor(f, &id_e) == *f, "tensor.unit", || {
            ("unit is not strict on morphisms".into(), c.morphism_json(f))
        });
    }
    for_each_tuple(&[small_obs, small_obs, small_obs], |t| {
        let l = c.tensor(&c.tensor(&t[0], &t[1]), &t[2]);
        let rr = c.tensor(&t[0], &c.tensor(&t[1], &t[2]));
        r.check(l == rr, "tensor.associativity", || {
            ("tensor is not strictly associative".into(), json!(t.iter().map(|a| c.object_json(a)).collect::<Vec<_>>()))
        });
    });
    for_each_tuple(&[small, small, small], |t| {
        let l = c.tensor_mor(&c.tensor_mor(&t[0], &t[1]), &t[2]);
        let rr = c.tensor_mor(&t[0], &c.tensor_mor(&t[1], &t[2]));
        r.check(l == rr, "tensor.associativity", || {
            ("tensor is not strictly associative on morphisms".into(), json!(t.iter().map(|f| c.morphism_json(f)).collect::<Vec<_>>()))
        });
    });
    for_each_tuple(&[obs, obs], |t| {
        let ok = c.tensor_mor(&c.identity(&t[0]), &c.identity(&t[1])) == c.identity(&c.tensor(&t[0], &t[1]));
        r.check(ok, "tensor.functoriality", || {
            ("tensor of identities is not an identity".into(), json!([c.object_json(&t[0]), c.object_json(&t[1])]))
        });
    });
    for_each_tuple(&[mors, mors], |t| {
        let fg = c.tensor_mor(&t[0], &t[1]);
        let ok = c.dom(&fg) == c.tensor(&c.dom(&t[0]), &c.dom(&t[1]))
            && c.cod(&fg) == c.tensor(&c.cod(&t[0]), &c.cod(&t[1]));
        r.check(ok, "tensor.typing", || {
            ("tensor of morphisms has the wrong endpoints".into(), json!([c.morphism_json(&t[0]), c.morphism_json(&t[1])]))
        });
    });
    let small_pairs: Vec<(C::Mor, C::Mor)> = small
        .iter()
        .flat_map(|f| small_out.get(&c.cod(f)).into_iter().flatten().map(move |g| (g.clone(), f.clone())))
        .collect();
    for (g, f) in &small_pairs {
        for (g2, f2) in &small_pairs {
            let ok = (|| {
                let l = c.compose(&c.tensor_mor(g, g2), &c.tensor_mor(f, f2))?;
                let rr = c.tensor_mor(&c.compose(g, f)?, &c.compose(g2, f2)?);
                Ok(l == rr)
            })();
            r.outcome("tensor.functoriality", ok, || {
                json!([c.morphism_json(g), c.morphism_json(f), c.morphism_json(g2), c.morphism_json(f2)])
            });
        }
    }

    for_each_tuple(&[obs, obs], |t| {
        let (a, b) = (&t[0], &t[1]);
        let x = c.braiding(a, b);
        let w = || json!([c.object_json(a), c.object_json(b)]);
        r.check(
            c.dom(&x) == c.tensor(a, b) && c.cod(&x) == c.tensor(b, a) && c.is_isomorphism(&x),
            "braiding.typing",
            || ("braiding is not an isomorphism a⊕b → b⊕a".into(), w()),
        );
        let inv = c.compose(&c.braiding(b, a), &x).map(|h| c.is_identity(&h));
        r.outcome("braiding.involution", inv, w);
    });
    for a in obs {
        let ok = c.is_identity(&c.braiding(a, &e)) && c.is_identity(&c.braiding(&e, a));
        r.check(ok, "braiding.unit", || ("braiding with the unit is not an identity".into(), c.object_json(a)));
    }
    for_each_tuple(&[small_obs, small_obs, small_obs], |t| {
        let (a, b, cc) = (&t[0], &t[1], &t[2]);
        let ok = (|| {
            let l = c.braiding(a, &c.tensor(b, cc));
            let rr = c.compose(
                &c.tensor_mor(&c.identity(b), &c.braiding(a, cc)),
                &c.tensor_mor(&c.braiding(a, b), &c.identity(cc)),
            )?;
            Ok(l == rr)
        })();
        r.outcome("braiding.hexagon", ok, || json!(t.iter().map(|x| c.object_json(x)).collect::<Vec<_>>()));
    });
    for_each_tuple(&[mors, mors], |t| {
        let (f, g) = (&t[0], &t[1]);
        let ok = (|| {
            let l = c.compose(&c.tensor_mor(g, f), &c.braiding(&c.dom(f), &c.dom(g)))?;
            let rr = c.compose(&c.braiding(&c.cod(f), &c.cod(g)), &c.tensor_mor(f, g))?;
            Ok(l == rr)
        })();
        r.outcome("braiding.naturality", ok, || json!([c.morphism_json(f), c.morphism_json(g)]));
    });
    r
}

type ObFn<C> = dyn Fn(&[<C as Permutative>::Ob]) -> Result<<C as Permutative>::Ob> + Send + Sync;
type MorFn<C> = dyn Fn(&[<C as Permutative>::Mor]) -> Result<<C as Permutative>::Mor> + Send + Sync;
type ConstraintFn<C> =
    dyn Fn(usize, &[<C as Permutative>::Ob], &<C as Permutative>::Ob) -> Result<<C as Permutative>::Mor> + Send + Sync;

/// A k-linear functor `C_1 × … × C_k → D`. The constraint `F²_i` at
/// `(⟨X⟩, X')` is a morphism `F⟨X⟩ ⊕ F⟨X ∘_i X'⟩ → F⟨X ∘_i (X_i ⊕ X')⟩`.
pub struct MultilinearFunctor<C: Permutative> {
    name: String,
    sources: Vec<Arc<C>>,
    target: Arc<C>,
    on_objects: Arc<ObFn<C>>,
    on_morphisms: Arc<MorFn<C>>,
    constraint: Arc<ConstraintFn<C>>,
}

impl<C: Permutative> Clone for MultilinearFunctor<C> {
    fn clone(&self) -> Self {
        MultilinearFunctor {
            name: self.name.clone(),
            sources: self.sources.clone(),
            target: self.target.clone(),
            on_objects: self.on_objects.clone(),
            on_morphisms: self.on_morphisms.clone(),
            constraint: self.constraint.clone(),
        }
    }
}

impl<C: Permutative + 'static> MultilinearFunctor<C> {
    pub fn new(
        name: impl Into<String>,
        sources: Vec<Arc<C>>,
        target: Arc<C>,
        on_objects: impl Fn(&[C::Ob]) -> Result<C::Ob> + Send + Sync + 'static,
        on_morphisms: impl Fn(&[C::Mor]) -> Result<C::Mor> + Send + Sync + 'static,
        constraint: impl Fn(usize, &[C::Ob], &C::Ob) -> Result<C::Mor> + Send + Sync + 'static,
    ) -> Self {
        MultilinearFunctor {
            name: name.into(),
            sources,
            target,
            on_objects: Arc::new(on_objects),
            on_morphisms: Arc::new(on_morphisms),
            constraint: Arc::new(constraint),
        }
    }

    /// The 0-linear functor picking out `value`.
    pub fn constant(name: impl Into<String>, target: Arc<C>, value: C::Ob) -> Self {
        let t = target.clone();
        let v = value.clone();
        MultilinearFunctor::new(
            name,
            Vec::new(),
            target,
            move |_| Ok(value.clone()),
            move |_| Ok(t.identity(&v)),
            |_, _, _| Err(Error::IllTyped("a 0-linear functor has no constraints".into())),
        )
    }

    /// The identity 1-linear functor.
    pub fn identity(c: Arc<C>) -> Self {
        let c2 = c.clone();
        MultilinearFunctor::new(
            format!("1_{}", c.name()),
            vec![c.clone()],
            c,
            |xs| Ok(xs[0].clone()),
            |fs| Ok(fs[0].clone()),
            move |_, xs, x| Ok(c2.identity(&c2.tensor(&xs[0], x))),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut out = self.clone();
        out.name = name.into();
        out
    }

    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[Arc<C>] {
        &self.sources
    }

    pub fn target(&self) -> &Arc<C> {
        &self.target
    }

    pub fn object(&self, xs: &[C::Ob]) -> Result<C::Ob> {
        self.check_arity(xs.len())?;
        (self.on_objects)(xs)
    }

    pub fn morphism(&self, fs: &[C::Mor]) -> Result<C::Mor> {
        self.check_arity(fs.len())?;
        (self.on_morphisms)(fs)
    }

    pub fn constraint(&self, i: usize, xs: &[C::Ob], extra: &C::Ob) -> Result<C::Mor> {
        self.check_arity(xs.len())?;
        if i >= self.arity() {
            return Err(Error::OutOfBound(format!("no constraint in variable {}", i + 1)));
        }
        (self.constraint)(i, xs, extra)
    }

    /// Replaces the constraint, for building deliberately broken fixtures.
    pub fn with_constraint(
        &self,
        constraint: impl Fn(usize, &[C::Ob], &C::Ob) -> Result<C::Mor> + Send + Sync + 'static,
    ) -> Self {
        let mut out = self.clone();
        out.constraint = Arc::new(constraint);
        out
    }

    fn check_arity(&self, n: usize) -> Result<()> {
        if n != self.arity() {
            return Err(Error::DomainMismatch(format!("{} takes {} arguments, got {n}", self.name, self.arity())));
        }
        Ok(())
    }

    fn objects_json(&self, xs: &[C::Ob]) -> Value {
        json!(xs.iter().zip(&self.sources).map(|(x, c)| c.object_json(x)).collect::<Vec<_>>())
    }

    fn morphisms_json(&self, fs: &[C::Mor]) -> Value {
        json!(fs.iter().zip(&self.sources).map(|(f, c)| c.morphism_json(f)).collect::<Vec<_>>())
    }
}

/// Per-axiom results of [`validate_multilinear`].
#[derive(Clone, Debug)]
pub struct MultilinearReport {
    pub name: String,
    pub axioms: BTreeMap<String, Report>,
    pub strong: bool,
    pub strict: bool,
}

impl MultilinearReport {
    pub fn is_ok(&self) -> bool {
        self.axioms.values().all(Report::is_ok)
    }

    pub fn axiom(&self, name: &str) -> Option<&Report> {
        self.axioms.get(name)
    }

    /// All axioms merged into one report.
    pub fn combined(&self) -> Report {
        let mut r = Report::new(format!("multilinear:{}", self.name));
        for a in self.axioms.values() {
            if r.bound.is_null() {
                r.bound = a.bound.clone();
            }
            r.absorb(a.clone());
        }
        r
    }

    pub fn to_json(&self) -> Value {
        let axioms: serde_json::Map<String, Value> = self.axioms.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        json!({
            "suite": format!("multilinear:{}", self.name),
            "axioms": axioms,
            "strong": self.strong,
            "strict": self.strict,
            "ok": self.is_ok(),
        })
    }
}

pub const MULTILINEAR_AXIOMS: [&str; 7] = [
    "functoriality",
    "unity",
    "constraint_naturality",
    "constraint_unity",
    "constraint_associativity",
    "constraint_symmetry",
    "constraint_2by2",
];

/// Checks functoriality, naturality of the constraints and the five
/// multilinear functor axioms over the source pools.
pub fn validate_multilinear<C: Permutative + 'static>(f: &MultilinearFunctor<C>) -> MultilinearReport {
    let k = f.arity();
    let d = f.target.as_ref();
    let bound = json!(f.sources.iter().map(|c| c.bound_json()).collect::<Vec<_>>());
    let mut axioms: BTreeMap<String, Report> = MULTILINEAR_AXIOMS
        .iter()
        .map(|a| (a.to_string(), Report::new(*a).with_bound(bound.clone())))
        .collect();
    let mut strong = true;
    let mut strict = true;
    let obs: Vec<&[C::Ob]> = f.sources.iter().map(|c| c.object_pool()).collect();
    let small_obs: Vec<&[C::Ob]> = f.sources.iter().map(|c| c.small_object_pool()).collect();
    let mors: Vec<&[C::Mor]> = f.sources.iter().map(|c| c.morphism_pool()).collect();
    let small: Vec<&[C::Mor]> = f.sources.iter().map(|c| c.small_morphism_pool()).collect();

    // Functoriality.
    {
        let r = axioms.get_mut("functoriality").unwrap();
        for_each_tuple(&obs, |xs| {
            let ids: Vec<C::Mor> = xs.iter().zip(&f.sources).map(|(x, c)| c.identity(x)).collect();
            let ok = (|| Ok(f.morphism(&ids)? == d.identity(&f.object(xs)?)))();
            r.outcome("identity", ok, || f.objects_json(xs));
        });
        for_each_tuple(&mors, |fs| {
            let ok = (|| {
                let m = f.morphism(fs)?;
                d.check_morphism(&m)?;
                let doms: Vec<C::Ob> = fs.iter().zip(&f.sources).map(|(g, c)| c.dom(g)).collect();
                let cods: Vec<C::Ob> = fs.iter().zip(&f.sources).map(|(g, c)| c.cod(g)).collect();
                Ok(d.dom(&m) == f.object(&doms)? && d.cod(&m) == f.object(&cods)?)
            })();
            r.outcome("typing", ok, || f.morphisms_json(fs));
        });
        let outs: Vec<HashMap<C::Ob, Vec<C::Mor>>> =
            f.sources.iter().zip(&small).map(|(c, p)| by_domain(c.as_ref(), p)).collect();
        for_each_tuple(&small, |fs| {
            let nexts: Vec<&[C::Mor]> = fs
                .iter()
                .enumerate()
                .map(|(i, g)| outs[i].get(&f.sources[i].cod(g)).map(|v| v.as_slice()).unwrap_or(&[]))
                .collect();
            for_each_tuple(&nexts, |gs| {
                let ok = (|| {
                    let comp: Vec<C::Mor> = (0..k)
                        .map(|i| f.sources[i].compose(&gs[i], &fs[i]))
                        .collect::<Result<_>>()?;
                    Ok(f.morphism(&comp)? == d.compose(&f.morphism(gs)?, &f.morphism(fs)?)?)
                })();
                r.outcome("composition", ok, || json!([f.morphisms_json(gs), f.morphisms_json(fs)]));
            });
        });
    }

    // Unity.
    {
        let r = axioms.get_mut("unity").unwrap();
        let e = d.unit();
        for j in 0..k {
            let ej = f.sources[j].unit();
            let mut pools = obs.clone();
            let unit_slice = [ej.clone()];
            pools[j] = &unit_slice;
            for_each_tuple(&pools, |xs| {
                let ok = f.object(xs).map(|y| y == e);
                r.outcome("objects", ok, || f.objects_json(xs));
            });
            let id = [f.sources[j].identity(&ej)];
            let mut mpools = mors.clone();
            mpools[j] = &id;
            for_each_tuple(&mpools, |fs| {
                let ok = f.morphism(fs).map(|m| d.is_identity(&m) && d.dom(&m) == e);
                r.outcome("morphisms", ok, || f.morphisms_json(fs));
            });
        }
    }

    // Naturality and typing of the constraints.
    {
        let r = axioms.get_mut("constraint_naturality").unwrap();
        for i in 0..k {
            let ci = f.sources[i].as_ref();
            let mut pools = obs.clone();
            pools.push(obs[i]);
            for_each_tuple(&pools, |t| {
                let (xs, x) = (&t[..k], &t[k]);
                let ok = (|| {
                    let c2 = f.constraint(i, xs, x)?;
                    d.check_morphism(&c2)?;
                    let dom = d.tensor(&f.object(xs)?, &f.object(&replaced(xs, i, x.clone()))?);
                    let cod = f.object(&replaced(xs, i, ci.tensor(&xs[i], x)))?;
                    if !d.is_isomorphism(&c2) {
                        strong = false;
                    }
                    if !d.is_identity(&c2) {
                        strict = false;
                    }
                    Ok(d.dom(&c2) == dom && d.cod(&c2) == cod)
                })();
                r.outcome("typing", ok, || json!({"variable": i + 1, "objects": f.objects_json(xs), "extra": ci.object_json(x)}));
            });
            let mut mpools = small.clone();
            mpools.push(small[i]);
            for_each_tuple(&mpools, |t| {
                let (fs, g) = (&t[..k], &t[k]);
                let ok = (|| {
                    let doms: Vec<C::Ob> = fs.iter().zip(&f.sources).map(|(h, c)| c.dom(h)).collect();
                    let cods: Vec<C::Ob> = fs.iter().zip(&f.sources).map(|(h, c)| c.cod(h)).collect();
                    let l = d.compose(
                        &f.morphism(&replaced(fs, i, ci.tensor_mor(&fs[i], g)))?,
                        &f.constraint(i, &doms, &ci.dom(g))?,
                    )?;
                    let rr = d.compose(
                        &f.constraint(i, &cods, &ci.cod(g))?,
                        &d.tensor_mor(&f.morphism(fs)?, &f.morphism(&replaced(fs, i, g.clone()))?),
                    )?;
                    Ok(l == rr)
                })();
                r.outcome("naturality", ok, || {
                    json!({"variable": i + 1, "morphisms": f.morphisms_json(fs), "extra": ci.morphism_json(g)})
                });
            });
        }
    }

    // Constraint unity.
    {
        let r = axioms.get_mut("constraint_unity").unwrap();
        for i in 0..k {
            let ci = f.sources[i].as_ref();
            let mut pools = obs.clone();
            pools.push(obs[i]);
            for_each_tuple(&pools, |t| {
                let (xs, x) = (&t[..k], &t[k]);
                let has_unit = *x == ci.unit() || xs.iter().zip(&f.sources).any(|(y, c)| *y == c.unit());
                if !has_unit {
                    return;
                }
                let ok = f.constraint(i, xs, x).map(|m| d.is_identity(&m));
                r.outcome("identity", ok, || json!({"variable": i + 1, "objects": f.objects_json(xs), "extra": ci.object_json(x)}));
            });
        }
    }

    // Constraint associativity.
    {
        let r = axioms.get_mut("constraint_associativity").unwrap();
        for i in 0..k {
            let ci = f.sources[i].as_ref();
            let mut pools = small_obs.clone();
            pools.push(small_obs[i]);
            pools.push(small_obs[i]);
            for_each_tuple(&pools, |t| {
                let (xs, x1, x2) = (&t[..k], &t[k], &t[k + 1]);
                let ok = (|| {
                    let at = |y: &C::Ob| f.object(&replaced(xs, i, y.clone()));
                    let x12 = ci.tensor(x1, x2);
                    let x01 = ci.tensor(&xs[i], x1);
                    let l = d.compose(
                        &f.constraint(i, xs, &x12)?,
                        &d.tensor_mor(&d.identity(&f.object(xs)?), &f.constraint(i, &replaced(xs, i, x1.clone()), x2)?),
                    )?;
                    let rr = d.compose(
                        &f.constraint(i, &replaced(xs, i, x01), x2)?,
                        &d.tensor_mor(&f.constraint(i, xs, x1)?, &d.identity(&at(x2)?)),
                    )?;
                    Ok(l == rr)
                })();
                r.outcome("square", ok, || {
                    json!({"variable": i + 1, "objects": f.objects_json(xs), "extra": [ci.object_json(x1), ci.object_json(x2)]})
                });
            });
        }
    }

    // Constraint symmetry.
    {
        let r = axioms.get_mut("constraint_symmetry").unwrap();
        for i in 0..k {
            let ci = f.sources[i].as_ref();
            let mut pools = obs.clone();
            pools.push(obs[i]);
            for_each_tuple(&pools, |t| {
                let (xs, x) = (&t[..k], &t[k]);
                let ok = (|| {
                    let ids: Vec<C::Mor> = xs.iter().zip(&f.sources).map(|(y, c)| c.identity(y)).collect();
                    let swap = f.morphism(&replaced(&ids, i, ci.braiding(&xs[i], x)))?;
                    let l = d.compose(&swap, &f.constraint(i, xs, x)?)?;
                    let xs2 = replaced(xs, i, x.clone());
                    let rr = d.compose(
                        &f.constraint(i, &xs2, &xs[i])?,
                        &d.braiding(&f.object(xs)?, &f.object(&xs2)?),
                    )?;
                    Ok(l == rr)
                })();
                r.outcome("square", ok, || json!({"variable": i + 1, "objects": f.objects_json(xs), "extra": ci.object_json(x)}));
            });
        }
    }

    // Constraint 2-by-2.
    {
        let r = axioms.get_mut("constraint_2by2").unwrap();
        for i in 0..k {
            for kk in 0..k {
                if i == kk {
                    continue;
                }
                let (ci, ck) = (f.sources[i].as_ref(), f.sources[kk].as_ref());
                let mut pools = small_obs.clone();
                pools.push(small_obs[i]);
                pools.push(small_obs[kk]);
                for_each_tuple(&pools, |t| {
                    let (xs, xi2, xk2) = (&t[..k], &t[k], &t[k + 1]);
                    let ok = (|| {
                        let set = |a: &C::Ob, b: &C::Ob| replaced(&replaced(xs, i, a.clone()), kk, b.clone());
                        let (xi, xk) = (&xs[i], &xs[kk]);
                        let si = ci.tensor(xi, xi2);
                        let sk = ck.tensor(xk, xk2);
                        // F²_k ∘ (F²_i ⊕ F²_i)
                        let l = d.compose(
                            &f.constraint(kk, &set(&si, xk), xk2)?,
                            &d.tensor_mor(&f.constraint(i, &set(xi, xk), xi2)?, &f.constraint(i, &set(xi, xk2), xi2)?),
                        )?;
                        // F²_i ∘ (F²_k ⊕ F²_k) ∘ (1 ⊕ ξ ⊕ 1)
                        let a = f.object(&set(xi, xk))?;
                        let b = f.object(&set(xi2, xk))?;
                        let c = f.object(&set(xi, xk2))?;
                        let dd = f.object(&set(xi2, xk2))?;
                        let mid = d.tensor_mor(
                            &d.tensor_mor(&d.identity(&a), &d.braiding(&b, &c)),
                            &d.identity(&dd),
                        );
                        let rr = d.compose(
                            &d.compose(
                                &f.constraint(i, &set(xi, &sk), xi2)?,
                                &d.tensor_mor(&f.constraint(kk, &set(xi, xk), xk2)?, &f.constraint(kk, &set(xi2, xk), xk2)?),
                            )?,
                            &mid,
                        )?;
                        Ok(l == rr)
                    })();
                    r.outcome("square", ok, || {
                        json!({
                            "variables": [i + 1, kk + 1],
                            "objects": f.objects_json(xs),
                            "extra": [ci.object_json(xi2), ck.object_json(xk2)],
                        })
                    });
                });
            }
        }
    }

    MultilinearReport {
        name: f.name.clone(),
        axioms,
        strong,
        strict,
    }
}

/// Per-variable object pools for a quantification over `vars` variables:
/// three or more variables range over the small pools.
fn object_pools<C: Permutative>(sources: &[Arc<C>], vars: usize) -> Vec<&[C::Ob]> {
    sources
        .iter()
        .map(|c| if vars >= 3 { c.small_object_pool() } else { c.object_pool() })
        .collect()
}

fn morphism_pools<C: Permutative>(sources: &[Arc<C>], vars: usize) -> Vec<&[C::Mor]> {
    sources
        .iter()
        .map(|c| if vars >= 3 { c.small_morphism_pool() } else { c.morphism_pool() })
        .collect()
}

/// Compares two multilinear functors on objects, morphisms and constraints
/// over the pools of the first one's sources.
pub fn multilinear_equal<C: Permutative + 'static>(f: &MultilinearFunctor<C>, g: &MultilinearFunctor<C>) -> Report {
    let mut r = Report::new(format!("equal:{}:{}", f.name, g.name))
        .with_bound(json!(f.sources.iter().map(|c| c.bound_json()).collect::<Vec<_>>()));
    if f.arity() != g.arity() {
        r.fail("arity", format!("{} ≠ {}", f.arity(), g.arity()), Value::Null);
        return r;
    }
    let k = f.arity();
    let obs = object_pools(&f.sources, k);
    let mors = morphism_pools(&f.sources, k);
    for_each_tuple(&obs, |xs| {
        let ok = (|| Ok(f.object(xs)? == g.object(xs)?))();
        r.outcome("objects", ok, || f.objects_json(xs));
    });
    for_each_tuple(&mors, |fs| {
        let ok = (|| Ok(f.morphism(fs)? == g.morphism(fs)?))();
        r.outcome("morphisms", ok, || f.morphisms_json(fs));
    });
    for i in 0..k {
        let mut pools = object_pools(&f.sources, k + 1);
        pools.push(pools[i]);
        for_each_tuple(&pools, |t| {
            let ok = (|| Ok(f.constraint(i, &t[..k], &t[k])? == g.constraint(i, &t[..k], &t[k])?))();
            r.outcome("constraints", ok, || {
                json!({"variable": i + 1, "objects": f.objects_json(&t[..k]), "extra": f.sources[i].object_json(&t[k])})
            });
        });
    }
    r
}

/// `G ∘ (F_1, …, F_n)`. The constraint in variable j of `F_i` is
/// `G(1, …, (F_i)²_j, …, 1) ∘ G²_i`.
pub fn compose_multilinear<C: Permutative + 'static>(
    g: &MultilinearFunctor<C>,
    fs: &[MultilinearFunctor<C>],
) -> Result<MultilinearFunctor<C>> {
    if fs.len() != g.arity() {
        return Err(Error::DomainMismatch(format!("{} needs {} inputs, got {}", g.name, g.arity(), fs.len())));
    }
    let mut sources = Vec::new();
    let mut offsets = Vec::new();
    for f in fs {
        offsets.push(sources.len());
        sources.extend(f.sources.iter().cloned());
    }
    let name = format!(
        "{}({})",
        g.name,
        fs.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(",")
    );
    // Variable index → (input, position within it).
    let owner: Vec<(usize, usize)> = fs
        .iter()
        .enumerate()
        .flat_map(|(i, f)| (0..f.arity()).map(move |j| (i, j)))
        .collect();
    let split = {
        let offsets = offsets.clone();
        let arities: Vec<usize> = fs.iter().map(|f| f.arity()).collect();
        move |i: usize| offsets[i]..offsets[i] + arities[i]
    };
    let (g1, fs1, sp1) = (g.clone(), fs.to_vec(), split.clone());
    let on_objects = move |xs: &[C::Ob]| {
        let inner = fs1.iter().enumerate().map(|(i, f)| f.object(&xs[sp1(i)])).collect::<Result<Vec<_>>>()?;
        g1.object(&inner)
    };
    let (g2, fs2, sp2) = (g.clone(), fs.to_vec(), split.clone());
    let on_morphisms = move |ms: &[C::Mor]| {
        let inner = fs2.iter().enumerate().map(|(i, f)| f.morphism(&ms[sp2(i)])).collect::<Result<Vec<_>>>()?;
        g2.morphism(&inner)
    };
    let (g3, fs3, sp3) = (g.clone(), fs.to_vec(), split);
    let constraint = move |v: usize, xs: &[C::Ob], x: &C::Ob| {
        let (i, j) = owner[v];
        let fi = &fs3[i];
        let local = &xs[sp3(i)];
        let inner = fs3.iter().enumerate().map(|(a, f)| f.object(&xs[sp3(a)])).collect::<Result<Vec<_>>>()?;
        let moved = fi.object(&replaced(local, j, x.clone()))?;
        let outer = g3.constraint(i, &inner, &moved)?;
        let ids: Vec<C::Mor> = inner
            .iter()
            .zip(&g3.sources)
            .map(|(y, c)| c.identity(y))
            .collect();
        let lifted = g3.morphism(&replaced(&ids, i, fi.constraint(j, local, x)?))?;
        g3.target.compose(&lifted, &outer)
    };
    Ok(MultilinearFunctor::new(name, sources, g.target.clone(), on_objects, on_morphisms, constraint))
}

/// The right action `F^σ(y_1, …, y_k) = F(y_{σ⁻¹(1)}, …, y_{σ⁻¹(k)})`: input
/// `i` of `F^σ` feeds slot `σ(i)` of `F`.
pub fn sigma_act_multilinear<C: Permutative + 'static>(
    f: &MultilinearFunctor<C>,
    sigma: &Permutation,
) -> Result<MultilinearFunctor<C>> {
    if sigma.len() != f.arity() {
        return Err(Error::DomainMismatch("permutation length differs from the arity".into()));
    }
    let sources = (0..f.arity()).map(|i| f.sources[sigma.apply(i)].clone()).collect();
    let reorder = {
        let s = sigma.clone();
        move |ys: &[C::Ob]| {
            let mut xs = ys.to_vec();
            for (i, y) in ys.iter().enumerate() {
                xs[s.apply(i)] = y.clone();
            }
            xs
        }
    };
    let reorder_m = {
        let s = sigma.clone();
        move |ys: &[C::Mor]| {
            let mut xs = ys.to_vec();
            for (i, y) in ys.iter().enumerate() {
                xs[s.apply(i)] = y.clone();
            }
            xs
        }
    };
    let (f1, r1) = (f.clone(), reorder.clone());
    let (f2, f3, s3) = (f.clone(), f.clone(), sigma.clone());
    Ok(MultilinearFunctor::new(
        format!("{}^{:?}", f.name, sigma.images()),
        sources,
        f.target.clone(),
        move |ys| f1.object(&r1(ys)),
        move |ms| f2.morphism(&reorder_m(ms)),
        move |i, ys, y| f3.constraint(s3.apply(i), &reorder(ys), y),
    ))
}

type CompFn<C> = dyn Fn(&[<C as Permutative>::Ob]) -> Result<<C as Permutative>::Mor> + Send + Sync;

/// A multilinear transformation `α: F ⇒ F'` between k-linear functors.
pub struct MultilinearTransformation<C: Permutative> {
    name: String,
    source: MultilinearFunctor<C>,
    target: MultilinearFunctor<C>,
    component: Arc<CompFn<C>>,
}

impl<C: Permutative> Clone for MultilinearTransformation<C> {
    fn clone(&self) -> Self {
        MultilinearTransformation {
            name: self.name.clone(),
            source: self.source.clone(),
            target: self.target.clone(),
            component: self.component.clone(),
        }
    }
}

impl<C: Permutative + 'static> MultilinearTransformation<C> {
    pub fn new(
        name: impl Into<String>,
        source: MultilinearFunctor<C>,
        target: MultilinearFunctor<C>,
        component: impl Fn(&[C::Ob]) -> Result<C::Mor> + Send + Sync + 'static,
    ) -> Result<Self> {
        if source.arity() != target.arity() {
            return Err(Error::DomainMismatch("source and target arities differ".into()));
        }
        Ok(MultilinearTransformation {
            name: name.into(),
            source,
            target,
            component: Arc::new(component),
        })
    }

    pub fn identity(f: &MultilinearFunctor<C>) -> Self {
        let f2 = f.clone();
        MultilinearTransformation {
            name: format!("1_{}", f.name),
            source: f.clone(),
            target: f.clone(),
            component: Arc::new(move |xs| Ok(f2.target.identity(&f2.object(xs)?))),
        }
    }

    /// `outer ∘ inner`.
    pub fn vertical(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.source.name != inner.target.name {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {} after {}",
                outer.name, inner.name
            )));
        }
        let (o, i) = (outer.clone(), inner.clone());
        MultilinearTransformation::new(
            format!("{}*{}", outer.name, inner.name),
            inner.source.clone(),
            outer.target.clone(),
            move |xs| o.source.target.compose(&o.component(xs)?, &i.component(xs)?),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &MultilinearFunctor<C> {
        &self.source
    }

    pub fn target(&self) -> &MultilinearFunctor<C> {
        &self.target
    }

    pub fn component(&self, xs: &[C::Ob]) -> Result<C::Mor> {
        self.source.check_arity(xs.len())?;
        (self.component)(xs)
    }
}

/// Typing, naturality, the multilinearity square and unit components.
pub fn validate_mltrans<C: Permutative + 'static>(a: &MultilinearTransformation<C>) -> Report {
    let (f, g) = (&a.source, &a.target);
    let d = f.target.as_ref();
    let k = f.arity();
    let mut r = Report::new(format!("mltrans:{}", a.name))
        .with_bound(json!(f.sources.iter().map(|c| c.bound_json()).collect::<Vec<_>>()));
    let obs = object_pools(&f.sources, k);
    let mors = morphism_pools(&f.sources, k);
    for_each_tuple(&obs, |xs| {
        let ok = (|| {
            let c = a.component(xs)?;
            d.check_morphism(&c)?;
            let typed = d.dom(&c) == f.object(xs)? && d.cod(&c) == g.object(xs)?;
            let unital = !xs.iter().zip(&f.sources).any(|(x, s)| *x == s.unit()) || d.is_identity(&c);
            Ok(typed && unital)
        })();
        r.outcome("component", ok, || f.objects_json(xs));
    });
    for_each_tuple(&mors, |fs| {
        let ok = (|| {
            let doms: Vec<C::Ob> = fs.iter().zip(&f.sources).map(|(h, c)| c.dom(h)).collect();
            let cods: Vec<C::Ob> = fs.iter().zip(&f.sources).map(|(h, c)| c.cod(h)).collect();
            let l = d.compose(&g.morphism(fs)?, &a.component(&doms)?)?;
            let rr = d.compose(&a.component(&cods)?, &f.morphism(fs)?)?;
            Ok(l == rr)
        })();
        r.outcome("naturality", ok, || f.morphisms_json(fs));
    });
    for i in 0..k {
        let ci = f.sources[i].as_ref();
        let mut pools = object_pools(&f.sources, k + 1);
        pools.push(pools[i]);
        for_each_tuple(&pools, |t| {
            let (xs, x) = (&t[..k], &t[k]);
            let ok = (|| {
                let xs2 = replaced(xs, i, x.clone());
                let l = d.compose(&g.constraint(i, xs, x)?, &d.tensor_mor(&a.component(xs)?, &a.component(&xs2)?))?;
                let rr = d.compose(&a.component(&replaced(xs, i, ci.tensor(&xs[i], x)))?, &f.constraint(i, xs, x)?)?;
                Ok(l == rr)
            })();
            r.outcome("multilinearity", ok, || {
                json!({"variable": i + 1, "objects": f.objects_json(xs), "extra": ci.object_json(x)})
            });
        });
    }
    r
}

/// Componentwise equality of two transformations over the source pools.
pub fn mltrans_equal<C: Permutative + 'static>(a: &MultilinearTransformation<C>, b: &MultilinearTransformation<C>) -> Report {
    let mut r = Report::new(format!("equal:{}:{}", a.name, b.name));
    let obs = object_pools(&a.source.sources, a.source.arity());
    for_each_tuple(&obs, |xs| {
        let ok = (|| Ok(a.component(xs)? == b.component(xs)?))();
        r.outcome("components", ok, || a.source.objects_json(xs));
    });
    r
}

/// `(Fskel, ∧, ⟨1⟩)` on the levels `0..=max_level`.
#[derive(Clone, Debug)]
pub struct FskelCat {
    max_level: usize,
    objects: Vec<usize>,
    morphisms: Vec<PtdMap>,
    small_morphisms: Vec<PtdMap>,
}

impl FskelCat {
    pub fn new(max_level: usize, small_level: usize) -> Self {
        let homs = |n: usize| {
            let mut out = Vec::new();
            for a in 0..=n {
                for b in 0..=n {
                    out.extend(hom_set(a, b));
                }
            }
            out
        };
        FskelCat {
            max_level,
            objects: (0..=max_level).collect(),
            morphisms: homs(max_level),
            small_morphisms: homs(small_level.min(max_level)),
        }
    }
}

impl Permutative for FskelCat {
    type Ob = usize;
    type Mor = PtdMap;

    fn name(&self) -> String {
        format!("Fskel<={}", self.max_level)
    }

    fn dom(&self, f: &PtdMap) -> usize {
        f.dom()
    }

    fn cod(&self, f: &PtdMap) -> usize {
        f.cod()
    }

    fn identity(&self, a: &usize) -> PtdMap {
        PtdMap::identity(*a)
    }

    fn compose(&self, g: &PtdMap, f: &PtdMap) -> Result<PtdMap> {
        PtdMap::compose(g, f)
    }

    fn unit(&self) -> usize {
        1
    }

    fn tensor(&self, a: &usize, b: &usize) -> usize {
        a * b
    }

    fn tensor_mor(&self, f: &PtdMap, g: &PtdMap) -> PtdMap {
        smash_map(f, g)
    }

    fn braiding(&self, a: &usize, b: &usize) -> PtdMap {
        braid(*a, *b)
    }

    fn is_isomorphism(&self, f: &PtdMap) -> bool {
        f.is_bijection()
    }

    fn object_pool(&self) -> &[usize] {
        &self.objects
    }

    fn morphism_pool(&self) -> &[PtdMap] {
        &self.morphisms
    }

    fn small_morphism_pool(&self) -> &[PtdMap] {
        &self.small_morphisms
    }

    fn object_json(&self, a: &usize) -> Value {
        json!(a)
    }

    fn morphism_json(&self, f: &PtdMap) -> Value {
        serde_json::to_value(f).unwrap_or(Value::Null)
    }
}

/// The indexing category under concatenation, on sequences within a bound.
#[derive(Clone, Debug)]
pub struct IndexCat {
    bound: SeqBound,
    objects: Vec<AObject>,
    morphisms: Vec<AMorphism>,
    small_objects: Vec<AObject>,
    small_morphisms: Vec<AMorphism>,
}

impl IndexCat {
    /// The small pools use sequences of total at most 2.
    pub fn new(bound: SeqBound) -> Self {
        Self::with_small(bound, bound.with_total(2))
    }

    pub fn with_small(bound: SeqBound, small: SeqBound) -> Self {
        let homs = |objects: &[AObject]| {
            let mut out = Vec::new();
            for a in objects {
                for b in objects {
                    out.extend(enumerate_amorphisms(a, b));
                }
            }
            out
        };
        let objects = bound.sequences();
        let small_objects = small.sequences();
        IndexCat {
            bound,
            morphisms: homs(&objects),
            small_morphisms: homs(&small_objects),
            objects,
            small_objects,
        }
    }
}

impl Permutative for IndexCat {
    type Ob = AObject;
    type Mor = AMorphism;

    fn name(&self) -> String {
        "A".into()
    }

    fn dom(&self, f: &AMorphism) -> AObject {
        f.dom().clone()
    }

    fn cod(&self, f: &AMorphism) -> AObject {
        f.cod().clone()
    }

    fn identity(&self, a: &AObject) -> AMorphism {
        AMorphism::identity(a)
    }

    fn compose(&self, g: &AMorphism, f: &AMorphism) -> Result<AMorphism> {
        AMorphism::compose(g, f)
    }

    fn unit(&self) -> AObject {
        AObject::empty()
    }

    fn tensor(&self, a: &AObject, b: &AObject) -> AObject {
        a.concat(b)
    }

    fn tensor_mor(&self, f: &AMorphism, g: &AMorphism) -> AMorphism {
        AMorphism::concat(f, g)
    }

    fn braiding(&self, a: &AObject, b: &AObject) -> AMorphism {
        block_swap(a, b).to_morphism()
    }

    fn is_isomorphism(&self, f: &AMorphism) -> bool {
        f.is_bijective()
    }

    fn object_pool(&self) -> &[AObject] {
        &self.objects
    }

    fn morphism_pool(&self) -> &[AMorphism] {
        &self.morphisms
    }

    fn small_object_pool(&self) -> &[AObject] {
        &self.small_objects
    }

    fn small_morphism_pool(&self) -> &[AMorphism] {
        &self.small_morphisms
    }

    fn object_json(&self, a: &AObject) -> Value {
        json!(a)
    }

    fn morphism_json(&self, f: &AMorphism) -> Value {
        f.to_json()
    }

    fn bound_json(&self) -> Value {
        json!({
            "objects": self.bound.to_json(),
            "pool": [self.objects.len(), self.morphisms.len()],
            "small_pool": [self.small_objects.len(), self.small_morphisms.len()],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tuples_in_order() {
        let a = [1, 2];
        let b = [3, 4, 5];
        let mut seen = Vec::new();
        for_each_tuple(&[&a[..], &b[..]], |t| seen.push(t.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 4]);
        let mut n = 0;
        for_each_tuple::<u8>(&[], |_| n += 1);
        assert_eq!(n, 1);
    }

    #[test]
    fn fskel_is_permutative() {
        let r = validate_permutative(&FskelCat::new(3, 2));
        assert!(r.is_ok(), "{}", r.summary());
    }

    #[test]
    fn index_category_is_permutative() {
        let r = validate_permutative(&IndexCat::new(SeqBound::new(2, 2)));
        assert!(r.is_ok(), "{}", r.summary());
    }

    #[test]
    fn identity_functor_is_strict() {
        let c = Arc::new(IndexCat::new(SeqBound::new(2, 2)));
        let id = MultilinearFunctor::identity(c);
        let rep = validate_multilinear(&id);
        assert!(rep.is_ok() && rep.strict && rep.strong);
    }

    #[test]
    fn constant_unit_is_bilinear() {
        let c = Arc::new(IndexCat::new(SeqBound::new(1, 2)));
        let e = c.unit();
        let c2 = c.clone();
        let f = MultilinearFunctor::new(
            "e",
            vec![c.clone(), c.clone()],
            c.clone(),
            move |_| Ok(AObject::empty()),
            move |_| Ok(AMorphism::identity(&AObject::empty())),
            move |_, _, _| Ok(c2.identity(&e)),
        );
        let rep = validate_multilinear(&f);
        assert!(rep.is_ok(), "{:?}", rep.combined().summary());
    }
}
