//! Level-truncated Γ-categories, their multimorphisms in component form,
//! and pointed modifications.

mod em;
mod modification;
mod multi;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::json;

use crate::cat::{validate_category, validate_pointed_functor, FiniteCategory, Functor, Mor, Ob, PointedCategory};
use crate::error::{Error, Result};
use crate::fskel::{hom_set, PtdMap};
use crate::report::Report;

pub use em::{em_gamma, CommutativeMonoidCategory, MultiAdditive, MAX_EM_LEVEL};
pub use modification::{validate_modification, GammaModification, ModificationRule};
pub use multi::{
    components_equal, level_tuples, validate_multimorphism, ComponentRule, GammaMultimorphism,
};

/// The action of pointed maps on a Γ-category given by a rule rather than a
/// table.
pub trait ActionRule: Send + Sync {
    fn act_object(&self, f: &PtdMap, x: Ob) -> Ob;
    fn act_morphism(&self, f: &PtdMap, m: Mor) -> Mor;
}

#[derive(Clone)]
enum Action {
    Table(BTreeMap<PtdMap, Functor>),
    Rule(Arc<dyn ActionRule>),
}

/// A pointed functor from pointed finite sets ⟨0⟩..⟨N⟩ to finite categories.
#[derive(Clone)]
pub struct GammaCategory {
    name: String,
    truncation: usize,
    levels: Vec<PointedCategory>,
    action: Action,
}

impl fmt::Debug for GammaCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GammaCategory({}, truncation {})", self.name, self.truncation)
    }
}

impl GammaCategory {
    /// Builds a Γ-category from an explicit action table, which must cover
    /// every pointed map between levels `0..=truncation`.
    pub fn from_tables(
        name: impl Into<String>,
        truncation: usize,
        levels: Vec<PointedCategory>,
        action: BTreeMap<PtdMap, Functor>,
    ) -> Result<Self> {
        if levels.len() != truncation + 1 {
            return Err(Error::InvalidDocument(format!(
                "{} levels given for truncation {}",
                levels.len(),
                truncation
            )));
        }
        for a in 0..=truncation {
            for b in 0..=truncation {
                for f in hom_set(a, b) {
                    let functor = action
                        .get(&f)
                        .ok_or_else(|| Error::InvalidDocument(format!("no action given for {f}")))?;
                    if *functor.dom != *levels[a].cat || *functor.cod != *levels[b].cat {
                        return Err(Error::DomainMismatch(format!("action of {f} has the wrong type")));
                    }
                }
            }
        }
        if action.keys().any(|f| f.dom() > truncation || f.cod() > truncation) {
            return Err(Error::TruncationExceeded {
                level: action.keys().map(|f| f.dom().max(f.cod())).max().unwrap_or(0),
                truncation,
            });
        }
        Ok(GammaCategory {
            name: name.into(),
            truncation,
            levels,
            action: Action::Table(action),
        })
    }

    pub fn from_rule(
        name: impl Into<String>,
        truncation: usize,
        levels: Vec<PointedCategory>,
        rule: Arc<dyn ActionRule>,
    ) -> Result<Self> {
        if levels.len() != truncation + 1 {
            return Err(Error::InvalidDocument(format!(
                "{} levels given for truncation {}",
                levels.len(),
                truncation
            )));
        }
        Ok(GammaCategory {
            name: name.into(),
            truncation,
            levels,
            action: Action::Rule(rule),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn level(&self, n: usize) -> Result<&PointedCategory> {
        self.levels.get(n).ok_or(Error::TruncationExceeded {
            level: n,
            truncation: self.truncation,
        })
    }

    pub fn category(&self, n: usize) -> Result<&Arc<FiniteCategory>> {
        Ok(&self.level(n)?.cat)
    }

    pub fn basepoint(&self, n: usize) -> Result<Ob> {
        Ok(self.level(n)?.basepoint)
    }

    fn check_map(&self, f: &PtdMap) -> Result<()> {
        let top = f.dom().max(f.cod());
        if top > self.truncation {
            return Err(Error::TruncationExceeded {
                level: top,
                truncation: self.truncation,
            });
        }
        Ok(())
    }

    pub fn act_object(&self, f: &PtdMap, x: Ob) -> Result<Ob> {
        self.check_map(f)?;
        if !self.levels[f.dom()].cat.contains_object(x) {
            return Err(Error::DomainMismatch(format!("object {} is not in level {}", x.0, f.dom())));
        }
        Ok(match &self.action {
            Action::Table(t) => t[f].ob(x),
            Action::Rule(r) => r.act_object(f, x),
        })
    }

    pub fn act_morphism(&self, f: &PtdMap, m: Mor) -> Result<Mor> {
        self.check_map(f)?;
        if !self.levels[f.dom()].cat.contains_morphism(m) {
            return Err(Error::DomainMismatch(format!("morphism {} is not in level {}", m.0, f.dom())));
        }
        Ok(match &self.action {
            Action::Table(t) => t[f].mor(m),
            Action::Rule(r) => r.act_morphism(f, m),
        })
    }

    /// The functor X(f), materialized.
    pub fn action_functor(&self, f: &PtdMap) -> Result<Functor> {
        self.check_map(f)?;
        if let Action::Table(t) = &self.action {
            return Ok(t[f].clone());
        }
        let dom = self.levels[f.dom()].cat.clone();
        let cod = self.levels[f.cod()].cat.clone();
        Functor::from_fns(dom, cod, |x| self.act_object(f, x), |m| self.act_morphism(f, m))
    }

    /// The same Γ-category under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        let mut g = self.clone();
        g.name = name.into();
        g
    }

    /// Whether `other` is usable where `self` is expected. Γ-categories are
    /// identified by name and truncation.
    pub fn same_as(&self, other: &GammaCategory) -> bool {
        self.name == other.name && self.truncation == other.truncation
    }
}

/// Checks the Γ-category laws on levels up to `min(truncation, limit)`.
pub fn validate_gamma(x: &GammaCategory, limit: usize) -> Report {
    let top = x.truncation.min(limit);
    let mut r = Report::new("gamma").with_bound(json!({"gamma": x.name, "max_level": top}));
    let l0 = &x.levels[0].cat;
    r.check(l0.object_count() == 1 && l0.morphism_count() == 1, "level0.terminal", || {
        ("level 0 is not terminal".into(), json!(0))
    });
    for n in 0..=top {
        let mut sub = validate_category(&x.levels[n].cat);
        for v in &mut sub.violations {
            v.witness = json!({"level": n, "witness": v.witness});
        }
        r.absorb(sub);
    }
    let maps: Vec<Vec<Vec<PtdMap>>> = (0..=top).map(|a| (0..=top).map(|b| hom_set(a, b)).collect()).collect();
    let mut functors: BTreeMap<PtdMap, Functor> = BTreeMap::new();
    for a in 0..=top {
        for b in 0..=top {
            for f in &maps[a][b] {
                match x.action_functor(f) {
                    Ok(func) => {
                        let mut sub = validate_pointed_functor(&func, x.levels[a].basepoint, x.levels[b].basepoint);
                        for v in &mut sub.violations {
                            v.witness = json!({"map": f, "witness": v.witness});
                        }
                        r.absorb(sub);
                        if f.is_zero() {
                            let konst = Functor::constant(func.dom.clone(), func.cod.clone(), x.levels[b].basepoint);
                            r.check(func == konst, "action.zero", || {
                                ("zero map does not act by the basepoint".into(), json!(f))
                            });
                        }
                        if f.is_identity() {
                            r.check(func == Functor::identity(&func.dom), "action.identity", || {
                                ("identity map does not act by the identity".into(), json!(f))
                            });
                        }
                        functors.insert(f.clone(), func);
                    }
                    Err(e) => r.fail("action.defined", e.to_string(), json!(f)),
                }
            }
        }
    }
    for a in 0..=top {
        for b in 0..=top {
            for c in 0..=top {
                for f in &maps[a][b] {
                    for g in &maps[b][c] {
                        let gf = PtdMap::compose(g, f).expect("composable by construction");
                        let (Some(xf), Some(xg), Some(xgf)) = (functors.get(f), functors.get(g), functors.get(&gf)) else {
                            continue;
                        };
                        let ok = xf
                            .object_table()
                            .iter()
                            .map(|&o| xg.ob(o))
                            .eq(xgf.object_table().iter().copied())
                            && xf
                                .morphism_table()
                                .iter()
                                .map(|&m| xg.mor(m))
                                .eq(xgf.morphism_table().iter().copied());
                        r.check(ok, "action.composition", || {
                            ("action does not preserve composition".into(), json!({"f": f, "g": g}))
                        });
                    }
                }
            }
        }
    }
    r
}

#[derive(Debug)]
struct UnitAction;

impl ActionRule for UnitAction {
    fn act_object(&self, f: &PtdMap, x: Ob) -> Ob {
        Ob(f.apply(x.index()) as u32)
    }

    fn act_morphism(&self, f: &PtdMap, m: Mor) -> Mor {
        // Level categories are discrete, with morphism i the identity of object i.
        Mor(f.apply(m.index()) as u32)
    }
}

/// The unit Γ-category J: level n is the discrete category on {0,…,n}.
pub fn unit_gamma(truncation: usize) -> GammaCategory {
    let levels = (0..=truncation)
        .map(|n| {
            let names: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            PointedCategory {
                cat: Arc::new(FiniteCategory::discrete(&refs)),
                basepoint: Ob(0),
            }
        })
        .collect();
    GammaCategory::from_rule("J", truncation, levels, Arc::new(UnitAction)).expect("level count matches")
}
