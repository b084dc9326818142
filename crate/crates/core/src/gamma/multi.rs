//! Multimorphisms of Γ-categories, stored as their multi-pointed component
//! functors `∏ X_i⟨p_i⟩ → Z⟨p_1⋯p_k⟩`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::cat::{cartesian, FiniteCategory, Functor, Mor, Ob};
use crate::error::{Error, Result};
use crate::fskel::{factor_permutation, hom_set, smash_maps, PtdMap};
use crate::indexing::Permutation;
use crate::report::Report;

use super::GammaCategory;

/// Component functors given by a rule. `levels` has one entry per source.
pub trait ComponentRule: Send + Sync {
    fn object(&self, levels: &[usize], xs: &[Ob]) -> Result<Ob>;
    fn morphism(&self, levels: &[usize], fs: &[Mor]) -> Result<Mor>;
}

#[derive(Clone)]
enum Body {
    Nullary(Ob),
    Table(BTreeMap<Vec<usize>, Functor>),
    Rule(Arc<dyn ComponentRule>),
}

#[derive(Clone)]
pub struct GammaMultimorphism {
    name: String,
    sources: Vec<Arc<GammaCategory>>,
    target: Arc<GammaCategory>,
    body: Body,
}

impl fmt::Debug for GammaMultimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let srcs: Vec<&str> = self.sources.iter().map(|s| s.name()).collect();
        write!(f, "GammaMultimorphism({}: {:?} -> {})", self.name, srcs, self.target.name())
    }
}

impl GammaMultimorphism {
    /// A 0-ary multimorphism, determined by an object of `Z⟨1⟩`.
    pub fn nullary(name: impl Into<String>, target: Arc<GammaCategory>, value: Ob) -> Result<Self> {
        if !target.category(1)?.contains_object(value) {
            return Err(Error::DomainMismatch("value is not an object of level 1".into()));
        }
        Ok(GammaMultimorphism {
            name: name.into(),
            sources: Vec::new(),
            target,
            body: Body::Nullary(value),
        })
    }

    pub fn from_rule(
        name: impl Into<String>,
        sources: Vec<Arc<GammaCategory>>,
        target: Arc<GammaCategory>,
        rule: Arc<dyn ComponentRule>,
    ) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::InvalidDocument("use GammaMultimorphism::nullary for arity 0".into()));
        }
        Ok(GammaMultimorphism {
            name: name.into(),
            sources,
            target,
            body: Body::Rule(rule),
        })
    }

    /// Builds a multimorphism from explicit component functors, one for
    /// every level tuple within truncation.
    pub fn from_tables(
        name: impl Into<String>,
        sources: Vec<Arc<GammaCategory>>,
        target: Arc<GammaCategory>,
        components: BTreeMap<Vec<usize>, Functor>,
    ) -> Result<Self> {
        if sources.is_empty() {
            return Err(Error::InvalidDocument("use GammaMultimorphism::nullary for arity 0".into()));
        }
        let mut m = GammaMultimorphism {
            name: name.into(),
            sources,
            target,
            body: Body::Table(BTreeMap::new()),
        };
        for levels in level_tuples(&m, usize::MAX) {
            let f = components
                .get(&levels)
                .ok_or_else(|| Error::InvalidDocument(format!("no component at levels {levels:?}")))?;
            if *f.dom != *m.domain_category(&levels)? || *f.cod != **m.target.category(levels.iter().product())? {
                return Err(Error::DomainMismatch(format!("component at levels {levels:?} has the wrong type")));
            }
        }
        for levels in components.keys() {
            m.check_levels(levels)?;
        }
        m.body = Body::Table(components);
        Ok(m)
    }

    /// The identity 1-ary multimorphism of `x`.
    pub fn identity(x: Arc<GammaCategory>) -> Self {
        GammaMultimorphism {
            name: format!("1_{}", x.name()),
            sources: vec![x.clone()],
            target: x,
            body: Body::Rule(Arc::new(IdentityRule)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut m = self.clone();
        m.name = name.into();
        m
    }

    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[Arc<GammaCategory>] {
        &self.sources
    }

    pub fn target(&self) -> &Arc<GammaCategory> {
        &self.target
    }

    pub fn nullary_value(&self) -> Option<Ob> {
        match self.body {
            Body::Nullary(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_table(&self) -> bool {
        matches!(self.body, Body::Table(_))
    }

    /// Checks a level tuple against every truncation and returns the
    /// product level.
    pub fn check_levels(&self, levels: &[usize]) -> Result<usize> {
        if levels.len() != self.arity() {
            return Err(Error::DomainMismatch(format!("{} levels for arity {}", levels.len(), self.arity())));
        }
        for (p, x) in levels.iter().zip(&self.sources) {
            if *p > x.truncation() {
                return Err(Error::TruncationExceeded {
                    level: *p,
                    truncation: x.truncation(),
                });
            }
        }
        let prod: usize = levels.iter().product();
        if prod > self.target.truncation() {
            return Err(Error::TruncationExceeded {
                level: prod,
                truncation: self.target.truncation(),
            });
        }
        Ok(prod)
    }

    /// `∏ X_i⟨p_i⟩`.
    pub fn domain_category(&self, levels: &[usize]) -> Result<Arc<FiniteCategory>> {
        self.check_levels(levels)?;
        let factors = levels
            .iter()
            .zip(&self.sources)
            .map(|(&p, x)| x.category(p).cloned())
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(FiniteCategory::product(factors)))
    }

    /// The component at `levels` applied to an object tuple.
    pub fn object(&self, levels: &[usize], xs: &[Ob]) -> Result<Ob> {
        if let Body::Nullary(v) = self.body {
            if !levels.is_empty() || !xs.is_empty() {
                return Err(Error::DomainMismatch("a 0-ary multimorphism takes no arguments".into()));
            }
            return Ok(v);
        }
        self.check_levels(levels)?;
        if xs.len() != levels.len() {
            return Err(Error::DomainMismatch("argument count differs from arity".into()));
        }
        for ((&x, &p), src) in xs.iter().zip(levels).zip(&self.sources) {
            if !src.category(p)?.contains_object(x) {
                return Err(Error::DomainMismatch(format!("argument {} is not an object of {}⟨{}⟩", x.0, src.name(), p)));
            }
        }
        match &self.body {
            Body::Nullary(_) => unreachable!(),
            Body::Table(t) => {
                let f = &t[levels];
                Ok(f.ob(f.dom.tuple_object(xs)))
            }
            Body::Rule(r) => r.object(levels, xs),
        }
    }

    pub fn morphism(&self, levels: &[usize], fs: &[Mor]) -> Result<Mor> {
        if let Body::Nullary(v) = self.body {
            if !levels.is_empty() || !fs.is_empty() {
                return Err(Error::DomainMismatch("a 0-ary multimorphism takes no arguments".into()));
            }
            return Ok(self.target.category(1)?.identity(v));
        }
        self.check_levels(levels)?;
        if fs.len() != levels.len() {
            return Err(Error::DomainMismatch("argument count differs from arity".into()));
        }
        for ((&f, &p), src) in fs.iter().zip(levels).zip(&self.sources) {
            if !src.category(p)?.contains_morphism(f) {
                return Err(Error::DomainMismatch(format!("argument {} is not a morphism of {}⟨{}⟩", f.0, src.name(), p)));
            }
        }
        match &self.body {
            Body::Nullary(_) => unreachable!(),
            Body::Table(t) => {
                let func = &t[levels];
                Ok(func.mor(func.dom.tuple_morphism(fs)))
            }
            Body::Rule(r) => r.morphism(levels, fs),
        }
    }

    /// The component functor at `levels`, materialized.
    pub fn component_functor(&self, levels: &[usize]) -> Result<Functor> {
        if let Body::Table(t) = &self.body {
            self.check_levels(levels)?;
            return Ok(t[levels].clone());
        }
        let dom = self.domain_category(levels)?;
        let cod = self.target.category(levels.iter().product())?.clone();
        let d = dom.clone();
        Functor::from_fns(
            dom,
            cod,
            |o| self.object(levels, &d.object_coords(o)),
            |m| self.morphism(levels, &d.morphism_coords(m)),
        )
    }

    /// The multicategory composite `F ∘ (G_1, …, G_k)`. A 0-ary `G_i` is
    /// plugged in at level 1 through its value, using ⟨p·1⟩ = ⟨p⟩.
    pub fn compose_multi(f: &Arc<GammaMultimorphism>, gs: &[Arc<GammaMultimorphism>]) -> Result<GammaMultimorphism> {
        if gs.len() != f.arity() {
            return Err(Error::DomainMismatch(format!("{} inputs for arity {}", gs.len(), f.arity())));
        }
        for (i, (g, x)) in gs.iter().zip(&f.sources).enumerate() {
            if !g.target.same_as(x) {
                return Err(Error::DomainMismatch(format!(
                    "input {} lands in {} but {} expects {}",
                    i + 1,
                    g.target.name(),
                    f.name,
                    x.name()
                )));
            }
        }
        let names: Vec<&str> = gs.iter().map(|g| g.name()).collect();
        let name = format!("{}({})", f.name, names.join(","));
        let sources: Vec<Arc<GammaCategory>> = gs.iter().flat_map(|g| g.sources.iter().cloned()).collect();
        if sources.is_empty() {
            let values: Vec<Ob> = gs.iter().map(|g| g.nullary_value().expect("0-ary")).collect();
            let value = f.object(&vec![1; f.arity()], &values)?;
            return GammaMultimorphism::nullary(name, f.target.clone(), value);
        }
        Ok(GammaMultimorphism {
            name,
            sources,
            target: f.target.clone(),
            body: Body::Rule(Arc::new(CompositeRule {
                outer: f.clone(),
                inner: gs.to_vec(),
            })),
        })
    }

    /// The right action of a permutation: `F^σ` has sources
    /// `(X_{σ(1)}, …, X_{σ(k)})`, feeds its i-th argument to slot `σ(i)` of
    /// `F`, then reorders the smash factors of the result.
    pub fn sigma_act(f: &Arc<GammaMultimorphism>, sigma: &Permutation) -> Result<GammaMultimorphism> {
        if sigma.len() != f.arity() {
            return Err(Error::DomainMismatch(format!("permutation of {} letters for arity {}", sigma.len(), f.arity())));
        }
        if f.arity() == 0 {
            return Ok((**f).clone());
        }
        let sources = (0..f.arity()).map(|i| f.sources[sigma.apply(i)].clone()).collect();
        Ok(GammaMultimorphism {
            name: format!("{}^{:?}", f.name, sigma.images()),
            sources,
            target: f.target.clone(),
            body: Body::Rule(Arc::new(SigmaRule {
                inner: f.clone(),
                sigma: sigma.clone(),
            })),
        })
    }
}

struct IdentityRule;

impl ComponentRule for IdentityRule {
    fn object(&self, _levels: &[usize], xs: &[Ob]) -> Result<Ob> {
        Ok(xs[0])
    }

    fn morphism(&self, _levels: &[usize], fs: &[Mor]) -> Result<Mor> {
        Ok(fs[0])
    }
}

struct CompositeRule {
    outer: Arc<GammaMultimorphism>,
    inner: Vec<Arc<GammaMultimorphism>>,
}

impl CompositeRule {
    fn run<T: Copy>(
        &self,
        levels: &[usize],
        args: &[T],
        inner: impl Fn(&GammaMultimorphism, &[usize], &[T]) -> Result<T>,
        nullary: impl Fn(&GammaMultimorphism) -> Result<T>,
        outer: impl Fn(&GammaMultimorphism, &[usize], &[T]) -> Result<T>,
    ) -> Result<T> {
        let mut outer_levels = Vec::with_capacity(self.inner.len());
        let mut outer_args = Vec::with_capacity(self.inner.len());
        let mut at = 0;
        for g in &self.inner {
            let n = g.arity();
            if n == 0 {
                outer_levels.push(1);
                outer_args.push(nullary(g)?);
            } else {
                let ls = &levels[at..at + n];
                outer_levels.push(ls.iter().product());
                outer_args.push(inner(g, ls, &args[at..at + n])?);
            }
            at += n;
        }
        outer(&self.outer, &outer_levels, &outer_args)
    }
}

impl ComponentRule for CompositeRule {
    fn object(&self, levels: &[usize], xs: &[Ob]) -> Result<Ob> {
        self.run(
            levels,
            xs,
            |g, l, a| g.object(l, a),
            |g| Ok(g.nullary_value().expect("0-ary")),
            |f, l, a| f.object(l, a),
        )
    }

    fn morphism(&self, levels: &[usize], fs: &[Mor]) -> Result<Mor> {
        self.run(
            levels,
            fs,
            |g, l, a| g.morphism(l, a),
            |g| g.morphism(&[], &[]),
            |f, l, a| f.morphism(l, a),
        )
    }
}

struct SigmaRule {
    inner: Arc<GammaMultimorphism>,
    sigma: Permutation,
}

impl SigmaRule {
    /// Levels as seen by the inner multimorphism, and the map reordering its
    /// smash factors back into the outer order.
    fn reindex<T: Copy>(&self, levels: &[usize], args: &[T]) -> (Vec<usize>, Vec<T>, PtdMap) {
        let k = levels.len();
        let mut inner_levels = vec![0; k];
        let mut inner_args = Vec::with_capacity(k);
        for i in 0..k {
            inner_levels[self.sigma.apply(i)] = levels[i];
        }
        let inv = self.sigma.inverse();
        for j in 0..k {
            inner_args.push(args[inv.apply(j)]);
        }
        let beta = factor_permutation(&inner_levels, inv.images());
        (inner_levels, inner_args, beta)
    }
}

impl ComponentRule for SigmaRule {
    fn object(&self, levels: &[usize], xs: &[Ob]) -> Result<Ob> {
        let (l, a, beta) = self.reindex(levels, xs);
        let z = self.inner.object(&l, &a)?;
        self.inner.target.act_object(&beta, z)
    }

    fn morphism(&self, levels: &[usize], fs: &[Mor]) -> Result<Mor> {
        let (l, a, beta) = self.reindex(levels, fs);
        let z = self.inner.morphism(&l, &a)?;
        self.inner.target.act_morphism(&beta, z)
    }
}

/// All level tuples within every truncation and with each level and the
/// product at most `limit`.
pub fn level_tuples(f: &GammaMultimorphism, limit: usize) -> Vec<Vec<usize>> {
    let top = f.target.truncation().min(limit);
    let ranges: Vec<Vec<usize>> = f.sources.iter().map(|x| (0..=x.truncation().min(limit)).collect()).collect();
    cartesian(&ranges)
        .into_iter()
        .filter(|p| p.iter().product::<usize>() <= top)
        .collect()
}

/// Object and morphism tuples of `∏ X_i⟨p_i⟩`.
fn tuples(f: &GammaMultimorphism, levels: &[usize]) -> Result<(Vec<Vec<Ob>>, Vec<Vec<Mor>>)> {
    let cats = levels
        .iter()
        .zip(&f.sources)
        .map(|(&p, x)| x.category(p).cloned())
        .collect::<Result<Vec<_>>>()?;
    let obs: Vec<Vec<Ob>> = cats.iter().map(|c| c.objects().collect()).collect();
    let mors: Vec<Vec<Mor>> = cats.iter().map(|c| c.morphisms().collect()).collect();
    Ok((cartesian(&obs), cartesian(&mors)))
}

/// Compares two multimorphisms componentwise on all level tuples up to
/// `limit`.
pub fn components_equal(f: &GammaMultimorphism, g: &GammaMultimorphism, limit: usize) -> Report {
    let mut r = Report::new("multimorphism equality").with_bound(json!({"max_level": limit}));
    if f.arity() != g.arity()
        || !f.target.same_as(&g.target)
        || f.sources.iter().zip(&g.sources).any(|(a, b)| !a.same_as(b))
    {
        r.fail("signature", "multimorphisms have different signatures", json!([f.name, g.name]));
        return r;
    }
    if f.arity() == 0 {
        r.check(f.nullary_value() == g.nullary_value(), "components.objects", || {
            ("0-ary values differ".into(), json!([f.name, g.name]))
        });
        return r;
    }
    for levels in level_tuples(f, limit) {
        let Ok((obs, mors)) = tuples(f, &levels) else {
            r.skip();
            continue;
        };
        for xs in &obs {
            let (a, b) = (f.object(&levels, xs), g.object(&levels, xs));
            match (a, b) {
                (Ok(a), Ok(b)) => r.check(a == b, "components.objects", || {
                    ("components differ on an object".into(), json!({"levels": levels, "objects": xs}))
                }),
                (Err(e), _) | (_, Err(e)) if e.is_out_of_scope() => r.skip(),
                (Err(e), _) | (_, Err(e)) => r.fail("components.defined", e.to_string(), json!({"levels": levels})),
            }
        }
        for fs in &mors {
            let (a, b) = (f.morphism(&levels, fs), g.morphism(&levels, fs));
            match (a, b) {
                (Ok(a), Ok(b)) => r.check(a == b, "components.morphisms", || {
                    ("components differ on a morphism".into(), json!({"levels": levels, "morphisms": fs}))
                }),
                (Err(e), _) | (_, Err(e)) if e.is_out_of_scope() => r.skip(),
                (Err(e), _) | (_, Err(e)) => r.fail("components.defined", e.to_string(), json!({"levels": levels})),
            }
        }
    }
    r
}

/// Checks functoriality, multi-pointedness and naturality of every
/// component on level tuples up to `limit`.
pub fn validate_multimorphism(f: &GammaMultimorphism, limit: usize) -> Report {
    let mut r = Report::new("multimorphism").with_bound(json!({"multimorphism": f.name, "max_level": limit}));
    if f.arity() == 0 {
        let ok = f
            .target
            .category(1)
            .map(|c| c.contains_object(f.nullary_value().expect("0-ary")))
            .unwrap_or(false);
        r.check(ok, "nullary.value", || ("value is not an object of level 1".into(), json!(f.name)));
        return r;
    }
    let k = f.arity();
    let all_levels = level_tuples(f, limit);
    // Component values, cached per level tuple for the naturality pass.
    let mut cache: BTreeMap<Vec<usize>, (Vec<Vec<Ob>>, Vec<Ob>, Vec<Vec<Mor>>, Vec<Mor>)> = BTreeMap::new();
    for levels in &all_levels {
        let prod: usize = levels.iter().product();
        let (Ok((obs, mors)), Ok(zcat), Ok(zbase)) = (tuples(f, levels), f.target.category(prod), f.target.basepoint(prod)) else {
            r.skip();
            continue;
        };
        let cats: Vec<&Arc<FiniteCategory>> = levels.iter().zip(&f.sources).map(|(&p, x)| x.category(p).unwrap()).collect();
        let bases: Vec<Ob> = levels.iter().zip(&f.sources).map(|(&p, x)| x.basepoint(p).unwrap()).collect();
        let mut ob_vals = Vec::with_capacity(obs.len());
        for xs in &obs {
            match f.object(levels, xs) {
                Ok(z) if zcat.contains_object(z) => {
                    ob_vals.push(z);
                    if xs.iter().zip(&bases).any(|(x, b)| x == b) {
                        r.check(z == zbase, "multipointed.objects", || {
                            ("basepoint coordinate not sent to the basepoint".into(), json!({"levels": levels, "objects": xs}))
                        });
                    }
                }
                Ok(_) => {
                    r.fail("component.defined", "value outside the target level", json!({"levels": levels, "objects": xs}));
                    ob_vals.push(zbase);
                }
                Err(e) => {
                    r.fail("component.defined", e.to_string(), json!({"levels": levels, "objects": xs}));
                    ob_vals.push(zbase);
                }
            }
        }
        let ob_index = |xs: &[Ob]| -> usize {
            let mut acc = 0;
            for (c, x) in cats.iter().zip(xs) {
                acc = acc * c.object_count() + x.index();
            }
            acc
        };
        let mut mor_vals = Vec::with_capacity(mors.len());
        for fs in &mors {
            let m = match f.morphism(levels, fs) {
                Ok(m) if zcat.contains_morphism(m) => m,
                Ok(_) | Err(_) => {
                    r.fail("component.defined", "morphism value undefined", json!({"levels": levels, "morphisms": fs}));
                    mor_vals.push(zcat.identity(zbase));
                    continue;
                }
            };
            mor_vals.push(m);
            let srcs: Vec<Ob> = fs.iter().zip(&cats).map(|(&g, c)| c.src(g)).collect();
            let tgts: Vec<Ob> = fs.iter().zip(&cats).map(|(&g, c)| c.tgt(g)).collect();
            r.check(
                zcat.src(m) == ob_vals[ob_index(&srcs)] && zcat.tgt(m) == ob_vals[ob_index(&tgts)],
                "component.typing",
                || ("component is ill-typed on a morphism".into(), json!({"levels": levels, "morphisms": fs})),
            );
            if fs.iter().zip(&cats).all(|(&g, c)| c.is_identity(g)) {
                r.check(zcat.is_identity(m), "component.identity", || {
                    ("identity not preserved".into(), json!({"levels": levels, "morphisms": fs}))
                });
            }
            if fs.iter().zip(cats.iter().zip(&bases)).any(|(&g, (c, &b))| g == c.identity(b)) {
                r.check(m == zcat.identity(zbase), "multipointed.morphisms", || {
                    ("basepoint identity coordinate not sent to the basepoint identity".into(), json!({"levels": levels, "morphisms": fs}))
                });
            }
        }
        let mor_index = |fs: &[Mor]| -> usize {
            let mut acc = 0;
            for (c, g) in cats.iter().zip(fs) {
                acc = acc * c.morphism_count() + g.index();
            }
            acc
        };
        let pair_lists: Vec<Vec<(Mor, Mor)>> = cats.iter().map(|c| c.composable_pairs()).collect();
        for pairs in cartesian(&pair_lists) {
            let gs: Vec<Mor> = pairs.iter().map(|p| p.0).collect();
            let hs: Vec<Mor> = pairs.iter().map(|p| p.1).collect();
            let ghs: Vec<Mor> = pairs.iter().zip(&cats).map(|(&(g, h), c)| c.compose(g, h).unwrap_or(g)).collect();
            let ok = zcat.compose(mor_vals[mor_index(&gs)], mor_vals[mor_index(&hs)]) == Some(mor_vals[mor_index(&ghs)]);
            r.check(ok, "component.composition", || {
                ("composition not preserved".into(), json!({"levels": levels, "pairs": pairs.iter().map(|p| [p.0, p.1]).collect::<Vec<_>>()}))
            });
        }
        cache.insert(levels.clone(), (obs, ob_vals, mors, mor_vals));
    }
    // Naturality against every tuple of pointed maps between cached levels.
    for p in &all_levels {
        let Some((obs, ob_vals, mors, mor_vals)) = cache.get(p) else { continue };
        for q in &all_levels {
            let Some((_, q_obs, _, q_mors)) = cache.get(q) else { continue };
            let q_cats: Vec<&Arc<FiniteCategory>> = q.iter().zip(&f.sources).map(|(&l, x)| x.category(l).unwrap()).collect();
            let map_lists: Vec<Vec<PtdMap>> = (0..k).map(|i| hom_set(p[i], q[i])).collect();
            for maps in cartesian(&map_lists) {
                let smash = smash_maps(&maps);
                for (xs, &z) in obs.iter().zip(ob_vals) {
                    let moved: Vec<Ob> = (0..k).map(|i| f.sources[i].act_object(&maps[i], xs[i]).unwrap()).collect();
                    let mut idx = 0;
                    for (c, x) in q_cats.iter().zip(&moved) {
                        idx = idx * c.object_count() + x.index();
                    }
                    let lhs = f.target.act_object(&smash, z);
                    r.check(lhs.as_ref().ok() == Some(&q_obs[idx]), "naturality.objects", || {
                        ("naturality square fails on an object".into(), json!({"from": p, "to": q, "maps": maps, "objects": xs}))
                    });
                }
                for (fs, &m) in mors.iter().zip(mor_vals) {
                    let moved: Vec<Mor> = (0..k).map(|i| f.sources[i].act_morphism(&maps[i], fs[i]).unwrap()).collect();
                    let mut idx = 0;
                    for (c, g) in q_cats.iter().zip(&moved) {
                        idx = idx * c.morphism_count() + g.index();
                    }
                    let lhs = f.target.act_morphism(&smash, m);
                    r.check(lhs.as_ref().ok() == Some(&q_mors[idx]), "naturality.morphisms", || {
                        ("naturality square fails on a morphism".into(), json!({"from": p, "to": q, "maps": maps, "morphisms": fs}))
                    });
                }
            }
        }
    }
    r
}
