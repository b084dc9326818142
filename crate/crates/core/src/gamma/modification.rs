//! Pointed modifications between parallel multimorphisms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::cat::{cartesian, FiniteCategory, Mor, Ob};
use crate::error::{Error, Result};
use crate::fskel::{hom_set, smash_maps, PtdMap};
use crate::report::Report;

use super::multi::level_tuples;
use super::GammaMultimorphism;

/// Components given by a rule: a morphism `F_p(xs) → G_p(xs)`.
pub trait ModificationRule: Send + Sync {
    fn component(&self, levels: &[usize], xs: &[Ob]) -> Result<Mor>;
}

#[derive(Clone)]
enum Body {
    Nullary(Mor),
    /// Components indexed by the encoded object tuple of `∏ X_i⟨p_i⟩`.
    Table(BTreeMap<Vec<usize>, Vec<Mor>>),
    Rule(Arc<dyn ModificationRule>),
    Identity,
    Thin,
    Vertical(Arc<GammaModification>, Arc<GammaModification>),
}

#[derive(Clone)]
pub struct GammaModification {
    name: String,
    source: Arc<GammaMultimorphism>,
    target: Arc<GammaMultimorphism>,
    body: Body,
}

impl fmt::Debug for GammaModification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaModification({}: {} => {})", self.name, self.source.name(), self.target.name())
    }
}

fn parallel(f: &GammaMultimorphism, g: &GammaMultimorphism) -> Result<()> {
    let ok = f.arity() == g.arity()
        && f.target().same_as(g.target())
        && f.sources().iter().zip(g.sources()).all(|(a, b)| a.same_as(b));
    if ok {
        Ok(())
    } else {
        Err(Error::DomainMismatch(format!("{} and {} are not parallel", f.name(), g.name())))
    }
}

impl GammaModification {
    pub fn from_rule(
        name: impl Into<String>,
        source: Arc<GammaMultimorphism>,
        target: Arc<GammaMultimorphism>,
        rule: Arc<dyn ModificationRule>,
    ) -> Result<Self> {
        parallel(&source, &target)?;
        Ok(GammaModification {
            name: name.into(),
            source,
            target,
            body: Body::Rule(rule),
        })
    }

    /// A modification between 0-ary multimorphisms: one morphism of `Z⟨1⟩`.
    pub fn nullary(
        name: impl Into<String>,
        source: Arc<GammaMultimorphism>,
        target: Arc<GammaMultimorphism>,
        component: Mor,
    ) -> Result<Self> {
        parallel(&source, &target)?;
        let (Some(a), Some(b)) = (source.nullary_value(), target.nullary_value()) else {
            return Err(Error::DomainMismatch("nullary modification between non-nullary multimorphisms".into()));
        };
        let c = source.target().category(1)?;
        if !c.contains_morphism(component) || c.src(component) != a || c.tgt(component) != b {
            return Err(Error::IllTyped("component is not a morphism between the two values".into()));
        }
        Ok(GammaModification {
            name: name.into(),
            source,
            target,
            body: Body::Nullary(component),
        })
    }

    /// Components listed per level tuple, indexed by encoded object tuple.
    pub fn from_tables(
        name: impl Into<String>,
        source: Arc<GammaMultimorphism>,
        target: Arc<GammaMultimorphism>,
        components: BTreeMap<Vec<usize>, Vec<Mor>>,
    ) -> Result<Self> {
        parallel(&source, &target)?;
        for levels in level_tuples(&source, usize::MAX) {
            let dom = source.domain_category(&levels)?;
            let comps = components
                .get(&levels)
                .ok_or_else(|| Error::InvalidDocument(format!("no components at levels {levels:?}")))?;
            if comps.len() != dom.object_count() {
                return Err(Error::DomainMismatch(format!("wrong number of components at levels {levels:?}")));
            }
        }
        Ok(GammaModification {
            name: name.into(),
            source,
            target,
            body: Body::Table(components),
        })
    }

    pub fn identity(f: Arc<GammaMultimorphism>) -> Self {
        GammaModification {
            name: format!("1_{}", f.name()),
            source: f.clone(),
            target: f,
            body: Body::Identity,
        }
    }

    /// The modification whose components are the unique morphisms
    /// `F_p(x) → G_p(x)`; evaluation fails where there is not exactly one.
    pub fn thin(name: impl Into<String>, source: Arc<GammaMultimorphism>, target: Arc<GammaMultimorphism>) -> Result<Self> {
        parallel(&source, &target)?;
        Ok(GammaModification {
            name: name.into(),
            source,
            target,
            body: Body::Thin,
        })
    }

    /// `outer ∘ inner`.
    pub fn vertical(outer: &Arc<GammaModification>, inner: &Arc<GammaModification>) -> Result<Self> {
        if inner.target.name() != outer.source.name() {
            return Err(Error::DomainMismatch(format!(
                "cannot compose {} after {}",
                outer.name, inner.name
            )));
        }
        parallel(&inner.source, &outer.target)?;
        Ok(GammaModification {
            name: format!("{}*{}", outer.name, inner.name),
            source: inner.source.clone(),
            target: outer.target.clone(),
            body: Body::Vertical(outer.clone(), inner.clone()),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Arc<GammaMultimorphism> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GammaMultimorphism> {
        &self.target
    }

    fn level_category(&self, levels: &[usize]) -> Result<&Arc<FiniteCategory>> {
        self.source.target().category(levels.iter().product())
    }

    /// The component at an object tuple of `∏ X_i⟨p_i⟩`.
    pub fn component(&self, levels: &[usize], xs: &[Ob]) -> Result<Mor> {
        match &self.body {
            Body::Nullary(m) => Ok(*m),
            Body::Table(t) => {
                let dom = self.source.domain_category(levels)?;
                let comps = t
                    .get(levels)
                    .ok_or_else(|| Error::UnknownReference(format!("levels {levels:?}")))?;
                Ok(comps[dom.tuple_object(xs).index()])
            }
            Body::Rule(r) => r.component(levels, xs),
            Body::Identity => {
                let z = self.source.object(levels, xs)?;
                Ok(self.level_category(levels)?.identity(z))
            }
            Body::Thin => {
                let a = self.source.object(levels, xs)?;
                let b = self.target.object(levels, xs)?;
                let hom = self.level_category(levels)?.hom(a, b);
                if hom.len() == 1 {
                    Ok(hom[0])
                } else {
                    Err(Error::IllTyped(format!("{} morphisms where exactly one is required", hom.len())))
                }
            }
            Body::Vertical(outer, inner) => {
                let a = inner.component(levels, xs)?;
                let b = outer.component(levels, xs)?;
                self.level_category(levels)?
                    .compose(b, a)
                    .ok_or_else(|| Error::IllTyped("components do not compose".into()))
            }
        }
    }
}

/// Checks typing, naturality, multi-pointedness and the modification axiom
/// on level tuples up to `limit`.
pub fn validate_modification(theta: &GammaModification, limit: usize) -> Report {
    let mut r = Report::new("modification").with_bound(json!({"modification": theta.name, "max_level": limit}));
    if let Err(e) = parallel(&theta.source, &theta.target) {
        r.fail("signature", e.to_string(), json!(theta.name));
        return r;
    }
    let (f, g) = (&theta.source, &theta.target);
    let k = f.arity();
    if k == 0 {
        let ok = theta.component(&[], &[]).ok().and_then(|m| {
            let c = f.target().category(1).ok()?;
            Some(c.contains_morphism(m) && c.src(m) == f.nullary_value()? && c.tgt(m) == g.nullary_value()?)
        });
        r.check(ok == Some(true), "component.typing", || ("0-ary component is ill-typed".into(), json!(theta.name)));
        return r;
    }
    let all_levels = level_tuples(f, limit);
    let mut comps: BTreeMap<Vec<usize>, Vec<Option<Mor>>> = BTreeMap::new();
    for levels in &all_levels {
        let prod: usize = levels.iter().product();
        let (Ok(dom), Ok(zcat), Ok(zbase)) = (f.domain_category(levels), f.target().category(prod), f.target().basepoint(prod)) else {
            r.skip();
            continue;
        };
        let bases: Vec<Ob> = levels.iter().zip(f.sources()).map(|(&p, x)| x.basepoint(p).unwrap()).collect();
        let mut row = Vec::with_capacity(dom.object_count());
        for o in dom.objects() {
            let xs = dom.object_coords(o);
            let res = theta.component(levels, &xs).and_then(|m| {
                let a = f.object(levels, &xs)?;
                let b = g.object(levels, &xs)?;
                Ok((m, a, b))
            });
            match res {
                Ok((m, a, b)) => {
                    let typed = zcat.contains_morphism(m) && zcat.src(m) == a && zcat.tgt(m) == b;
                    r.check(typed, "component.typing", || {
                        ("component has the wrong endpoints".into(), json!({"levels": levels, "objects": xs}))
                    });
                    if xs.iter().zip(&bases).any(|(x, b)| x == b) {
                        r.check(m == zcat.identity(zbase), "multipointed", || {
                            ("component at a basepoint coordinate is not the identity".into(), json!({"levels": levels, "objects": xs}))
                        });
                    }
                    row.push(typed.then_some(m));
                }
                Err(e) if e.is_out_of_scope() => {
                    r.skip();
                    row.push(None);
                }
                Err(e) => {
                    r.fail("component.defined", e.to_string(), json!({"levels": levels, "objects": xs}));
                    row.push(None);
                }
            }
        }
        for m in dom.morphisms() {
            let fs = dom.morphism_coords(m);
            let (s, t) = (dom.src(m), dom.tgt(m));
            let (Some(ts), Some(tt)) = (row[s.index()], row[t.index()]) else { continue };
            let (Ok(fm), Ok(gm)) = (f.morphism(levels, &fs), g.morphism(levels, &fs)) else {
                r.fail("naturality", "multimorphism undefined on a morphism", json!({"levels": levels, "morphisms": fs}));
                continue;
            };
            let ok = zcat.compose(gm, ts).is_some() && zcat.compose(gm, ts) == zcat.compose(tt, fm);
            r.check(ok, "naturality", || {
                ("naturality square fails".into(), json!({"levels": levels, "morphisms": fs}))
            });
        }
        comps.insert(levels.clone(), row);
    }
    for p in &all_levels {
        let Some(row_p) = comps.get(p) else { continue };
        let Ok(dom_p) = f.domain_category(p) else { continue };
        for q in &all_levels {
            let Some(row_q) = comps.get(q) else { continue };
            let Ok(dom_q) = f.domain_category(q) else { continue };
            let map_lists: Vec<Vec<PtdMap>> = (0..k).map(|i| hom_set(p[i], q[i])).collect();
            for maps in cartesian(&map_lists) {
                let smash = smash_maps(&maps);
                for o in dom_p.objects() {
                    let Some(m) = row_p[o.index()] else { continue };
                    let xs = dom_p.object_coords(o);
                    let moved: Vec<Ob> = (0..k).map(|i| f.sources()[i].act_object(&maps[i], xs[i]).unwrap()).collect();
                    let lhs = f.target().act_morphism(&smash, m).ok();
                    let rhs = row_q[dom_q.tuple_object(&moved).index()];
                    r.check(lhs.is_some() && lhs == rhs, "modification_axiom", || {
                        ("components are not compatible with pointed maps".into(), json!({"from": p, "to": q, "maps": maps, "objects": xs}))
                    });
                }
            }
        }
    }
    r
}
