//! Ring categories, monoids in Γ-categories, and the ring categories that 𝒫
//! produces from them.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gamma::{components_equal, GammaCategory, GammaMultimorphism};
use crate::groth::BoundedPCat;
use crate::indexing::Ordering;
use crate::permlin::{for_each_tuple, validate_permutative, MultilinearFunctor, Permutative};
use crate::pinv::{assemble_multilinear, p_zero_ary, PCats};
use crate::report::Report;

/// A monoid `(X, μ, η)` in Γ-categories.
#[derive(Clone, Debug)]
pub struct GammaMonoid {
    pub name: String,
    pub x: Arc<GammaCategory>,
    pub mu: Arc<GammaMultimorphism>,
    pub eta: Arc<GammaMultimorphism>,
}

impl GammaMonoid {
    pub fn new(
        name: impl Into<String>,
        x: Arc<GammaCategory>,
        mu: Arc<GammaMultimorphism>,
        eta: Arc<GammaMultimorphism>,
    ) -> Result<Self> {
        let ok = mu.arity() == 2
            && eta.arity() == 0
            && mu.sources().iter().all(|s| s.same_as(&x))
            && mu.target().same_as(&x)
            && eta.target().same_as(&x);
        if !ok {
            return Err(Error::DomainMismatch("a monoid needs μ: (X, X) → X and η: () → X".into()));
        }
        Ok(GammaMonoid {
            name: name.into(),
            x,
            mu,
            eta,
        })
    }
}

/// Associativity and both unit laws as equalities of component tables on
/// levels up to `limit`.
pub fn validate_gamma_monoid(m: &GammaMonoid, limit: usize) -> Result<Report> {
    let mut r = Report::new(format!("monoid:{}", m.name));
    let id = Arc::new(GammaMultimorphism::identity(m.x.clone()));
    let left = GammaMultimorphism::compose_multi(&m.mu, &[m.mu.clone(), id.clone()])?;
    let right = GammaMultimorphism::compose_multi(&m.mu, &[id.clone(), m.mu.clone()])?;
    let tag = |mut sub: Report, law: &str| {
        for v in &mut sub.violations {
            v.law = format!("{law}.{}", v.law);
        }
        sub
    };
    r.absorb(tag(components_equal(&left, &right, limit), "associativity"));
    let lu = GammaMultimorphism::compose_multi(&m.mu, &[m.eta.clone(), id.clone()])?;
    r.absorb(tag(components_equal(&lu, &id, limit), "left_unit"));
    let ru = GammaMultimorphism::compose_multi(&m.mu, &[id.clone(), m.eta.clone()])?;
    r.absorb(tag(components_equal(&ru, &id, limit), "right_unit"));
    Ok(r)
}

type Factorization<C> = dyn Fn(&<C as Permutative>::Ob, &<C as Permutative>::Ob, &<C as Permutative>::Ob) -> Result<<C as Permutative>::Mor>
    + Send
    + Sync;

/// A ring category: a permutative category with a strict monoidal product
/// `⊗` and the factorization morphisms
/// `fal: AC ⊕ BC → (A ⊕ B)C` and `far: AB ⊕ AC → A(B ⊕ C)`.
pub struct RingCategory<C: Permutative> {
    pub name: String,
    pub additive: Arc<C>,
    pub times: MultilinearFunctor<C>,
    pub one: C::Ob,
    fal: Arc<Factorization<C>>,
    far: Arc<Factorization<C>>,
}

impl<C: Permutative> Clone for RingCategory<C> {
    fn clone(&self) -> Self {
        RingCategory {
            name: self.name.clone(),
            additive: self.additive.clone(),
            times: self.times.clone(),
            one: self.one.clone(),
            fal: self.fal.clone(),
            far: self.far.clone(),
        }
    }
}

impl<C: Permutative + 'static> RingCategory<C> {
    /// The ring category of a 2-linear functor: `fal` and `far` are its first
    /// and second linearity constraints.
    pub fn from_bilinear(name: impl Into<String>, times: MultilinearFunctor<C>, one: C::Ob) -> Result<Self> {
        if times.arity() != 2 {
            return Err(Error::DomainMismatch("the product must be 2-linear".into()));
        }
        let (t1, t2) = (times.clone(), times.clone());
        Ok(RingCategory {
            name: name.into(),
            additive: times.target().clone(),
            fal: Arc::new(move |a, b, c| t1.constraint(0, &[a.clone(), c.clone()], b)),
            far: Arc::new(move |a, b, c| t2.constraint(1, &[a.clone(), b.clone()], c)),
            times,
            one,
        })
    }

    pub fn fal(&self, a: &C::Ob, b: &C::Ob, c: &C::Ob) -> Result<C::Mor> {
        (self.fal)(a, b, c)
    }

    pub fn far(&self, a: &C::Ob, b: &C::Ob, c: &C::Ob) -> Result<C::Mor> {
        (self.far)(a, b, c)
    }

    pub fn with_fal(&self, fal: impl Fn(&C::Ob, &C::Ob, &C::Ob) -> Result<C::Mor> + Send + Sync + 'static) -> Self {
        let mut out = self.clone();
        out.fal = Arc::new(fal);
        out
    }

    pub fn with_far(&self, far: impl Fn(&C::Ob, &C::Ob, &C::Ob) -> Result<C::Mor> + Send + Sync + 'static) -> Self {
        let mut out = self.clone();
        out.far = Arc::new(far);
        out
    }

    pub fn zero(&self) -> C::Ob {
        self.additive.unit()
    }

    pub fn mul(&self, a: &C::Ob, b: &C::Ob) -> Result<C::Ob> {
        self.times.object(&[a.clone(), b.clone()])
    }

    pub fn mul_mor(&self, f: &C::Mor, g: &C::Mor) -> Result<C::Mor> {
        self.times.morphism(&[f.clone(), g.clone()])
    }
}

/// `derive_ring`: the product is `𝒫μ`, the unit `𝒫η`, and the
/// factorization morphisms are the linearity constraints of `𝒫μ`.
pub fn derive_ring(m: &GammaMonoid, cats: &PCats) -> Result<RingCategory<BoundedPCat>> {
    let times = assemble_multilinear(&m.mu, cats, Ordering::RevLex)?;
    let one = p_zero_ary(&m.eta)?;
    RingCategory::from_bilinear(format!("P{}", m.name), times, one)
}

pub const RING_AXIOMS: [&str; 7] = [
    "multiplicative_zero",
    "zero_factorization",
    "unit_factorization",
    "symmetry_factorization",
    "internal_factorization",
    "external_factorization",
    "2by2_factorization",
];

/// Per-axiom results of [`validate_ring`], plus the structural checks.
#[derive(Clone, Debug)]
pub struct RingReport {
    pub name: String,
    pub axioms: BTreeMap<String, Report>,
    pub structure: BTreeMap<String, Report>,
    pub tight: bool,
}

impl RingReport {
    pub fn is_ok(&self) -> bool {
        self.axioms.values().chain(self.structure.values()).all(Report::is_ok)
    }

    pub fn coverage(&self) -> f64 {
        let (mut checked, mut skipped) = (0u64, 0u64);
        for r in self.axioms.values().chain(self.structure.values()) {
            checked += r.checked;
            skipped += r.skipped;
        }
        if checked + skipped == 0 {
            1.0
        } else {
            checked as f64 / (checked + skipped) as f64
        }
    }

    pub fn to_json(&self) -> Value {
        let map = |m: &BTreeMap<String, Report>| -> serde_json::Map<String, Value> {
            m.iter().map(|(k, v)| (k.clone(), v.to_json())).collect()
        };
        json!({
            "suite": format!("ring:{}", self.name),
            "axioms": map(&self.axioms),
            "structure": map(&self.structure),
            "tight": self.tight,
            "coverage": self.coverage(),
            "ok": self.is_ok(),
        })
    }
}

/// Checks the seven ring category axioms, the additive and multiplicative
/// structure, naturality of `fal` and `far`, and whether they are invertible.
pub fn validate_ring<C: Permutative + 'static>(ring: &RingCategory<C>) -> RingReport {
    let c = ring.additive.as_ref();
    let bound = c.bound_json();
    let new = |s: &str| Report::new(s).with_bound(bound.clone());
    let mut axioms: BTreeMap<String, Report> = RING_AXIOMS.iter().map(|a| (a.to_string(), new(a))).collect();
    let mut structure = BTreeMap::new();
    let obs = c.object_pool();
    let small = c.small_object_pool();
    let mors = c.morphism_pool();
    let zero = ring.zero();
    let one = ring.one.clone();
    let oj = |xs: &[C::Ob]| json!(xs.iter().map(|x| c.object_json(x)).collect::<Vec<_>>());
    let mul = |a: &C::Ob, b: &C::Ob| ring.mul(a, b);
    let id = |a: &C::Ob| c.identity(a);
    let is_id_of = |m: &C::Mor, a: &C::Ob| *m == c.identity(a);

    structure.insert("additive".to_string(), validate_permutative(c));

    // Strict monoidal structure of ⊗.
    {
        let mut r = new("multiplicative");
        for a in obs {
            let ok = (|| Ok(mul(&one, a)? == *a && mul(a, &one)? == *a))();
            r.outcome("unit", ok, || oj(std::slice::from_ref(a)));
        }
        for f in mors {
            let ok = (|| Ok(ring.mul_mor(&id(&one), f)? == *f && ring.mul_mor(f, &id(&one))? == *f))();
            r.outcome("unit", ok, || c.morphism_json(f));
        }
        for_each_tuple(&[small, small, small], |t| {
            let ok = (|| Ok(mul(&mul(&t[0], &t[1])?, &t[2])? == mul(&t[0], &mul(&t[1], &t[2])?)?))();
            r.outcome("associativity", ok, || oj(t));
        });
        let smalls = c.small_morphism_pool();
        for_each_tuple(&[smalls, smalls, smalls], |t| {
            let ok = (|| {
                let l = ring.mul_mor(&ring.mul_mor(&t[0], &t[1])?, &t[2])?;
                let rr = ring.mul_mor(&t[0], &ring.mul_mor(&t[1], &t[2])?)?;
                Ok(l == rr)
            })();
            r.outcome("associativity", ok, || json!(t.iter().map(|f| c.morphism_json(f)).collect::<Vec<_>>()));
        });
        structure.insert("multiplicative".to_string(), r);
    }

    // Naturality and invertibility of fal and far.
    let mut tight = true;
    {
        let mut r = new("factorization_naturality");
        let smalls = c.small_morphism_pool();
        for_each_tuple(&[smalls, smalls, smalls], |t| {
            let (f, g, h) = (&t[0], &t[1], &t[2]);
            let ok = (|| {
                let (a, b, cc) = (c.dom(f), c.dom(g), c.dom(h));
                let (a2, b2, c2) = (c.cod(f), c.cod(g), c.cod(h));
                let l = c.compose(&ring.mul_mor(&c.tensor_mor(f, g), h)?, &ring.fal(&a, &b, &cc)?)?;
                let rr = c.compose(
                    &ring.fal(&a2, &b2, &c2)?,
                    &c.tensor_mor(&ring.mul_mor(f, h)?, &ring.mul_mor(g, h)?),
                )?;
                let l2 = c.compose(&ring.mul_mor(f, &c.tensor_mor(g, h))?, &ring.far(&a, &b, &cc)?)?;
                let r2 = c.compose(
                    &ring.far(&a2, &b2, &c2)?,
                    &c.tensor_mor(&ring.mul_mor(f, g)?, &ring.mul_mor(f, h)?),
                )?;
                Ok(l == rr && l2 == r2)
            })();
            r.outcome("naturality", ok, || json!(t.iter().map(|f| c.morphism_json(f)).collect::<Vec<_>>()));
        });
        for_each_tuple(&[obs, obs, obs], |t| {
            let (a, b, cc) = (&t[0], &t[1], &t[2]);
            let ok = (|| {
                let fal = ring.fal(a, b, cc)?;
                let far = ring.far(a, b, cc)?;
                c.check_morphism(&fal)?;
                c.check_morphism(&far)?;
                let typed = c.dom(&fal) == c.tensor(&mul(a, cc)?, &mul(b, cc)?)
                    && c.cod(&fal) == mul(&c.tensor(a, b), cc)?
                    && c.dom(&far) == c.tensor(&mul(a, b)?, &mul(a, cc)?)
                    && c.cod(&far) == mul(a, &c.tensor(b, cc))?;
                if !(c.is_isomorphism(&fal) && c.is_isomorphism(&far)) {
                    tight = false;
                }
                Ok(typed)
            })();
            r.outcome("typing", ok, || oj(t));
        });
        structure.insert("factorization".to_string(), r);
    }

    // Multiplicative zero.
    {
        let r = axioms.get_mut("multiplicative_zero").unwrap();
        for a in obs {
            let ok = (|| Ok(mul(&zero, a)? == zero && mul(a, &zero)? == zero))();
            r.outcome("objects", ok, || oj(std::slice::from_ref(a)));
        }
        let z = id(&zero);
        for f in mors {
            let ok = (|| Ok(ring.mul_mor(&z, f)? == z && ring.mul_mor(f, &z)? == z))();
            r.outcome("morphisms", ok, || c.morphism_json(f));
        }
    }

    // Zero factorization.
    {
        let r = axioms.get_mut("zero_factorization").unwrap();
        for_each_tuple(&[obs, obs], |t| {
            let (x, y) = (&t[0], &t[1]);
            let w = || oj(t);
            let checks: [(&str, Result<bool>); 6] = [
                ("fal_0BC", (|| Ok(is_id_of(&ring.fal(&zero, x, y)?, &mul(x, y)?)))()),
                ("fal_A0C", (|| Ok(is_id_of(&ring.fal(x, &zero, y)?, &mul(x, y)?)))()),
                ("fal_AB0", (|| Ok(is_id_of(&ring.fal(x, y, &zero)?, &zero)))()),
                ("far_0BC", (|| Ok(is_id_of(&ring.far(&zero, x, y)?, &zero)))()),
                ("far_A0C", (|| Ok(is_id_of(&ring.far(x, &zero, y)?, &mul(x, y)?)))()),
                ("far_AB0", (|| Ok(is_id_of(&ring.far(x, y, &zero)?, &mul(x, y)?)))()),
            ];
            for (law, ok) in checks {
                r.outcome(law, ok, w);
            }
        });
    }

    // Unit factorization.
    {
        let r = axioms.get_mut("unit_factorization").unwrap();
        for_each_tuple(&[obs, obs], |t| {
            let (x, y) = (&t[0], &t[1]);
            let ok = (|| Ok(is_id_of(&ring.fal(x, y, &one)?, &c.tensor(x, y))))();
            r.outcome("fal_AB1", ok, || oj(t));
            let ok = (|| Ok(is_id_of(&ring.far(&one, x, y)?, &c.tensor(x, y))))();
            r.outcome("far_1BC", ok, || oj(t));
        });
    }

    // Symmetry factorization.
    {
        let r = axioms.get_mut("symmetry_factorization").unwrap();
        for_each_tuple(&[small, small, small], |t| {
            let (a, b, cc) = (&t[0], &t[1], &t[2]);
            let ok = (|| {
                let l = c.compose(&ring.mul_mor(&c.braiding(a, b), &id(cc))?, &ring.fal(a, b, cc)?)?;
                let rr = c.compose(&ring.fal(b, a, cc)?, &c.braiding(&mul(a, cc)?, &mul(b, cc)?))?;
                Ok(l == rr)
            })();
            r.outcome("fal", ok, || oj(t));
            let ok = (|| {
                let l = c.compose(&ring.mul_mor(&id(a), &c.braiding(b, cc))?, &ring.far(a, b, cc)?)?;
                let rr = c.compose(&ring.far(a, cc, b)?, &c.braiding(&mul(a, b)?, &mul(a, cc)?))?;
                Ok(l == rr)
            })();
            r.outcome("far", ok, || oj(t));
        });
    }

    // Internal factorization.
    {
        let r = axioms.get_mut("internal_factorization").unwrap();
        for_each_tuple(&[small, small, small, small], |t| {
            let (a, a1, a2, b) = (&t[0], &t[1], &t[2], &t[3]);
            let ok = (|| {
                let l = c.compose(
                    &ring.fal(&c.tensor(a, a1), a2, b)?,
                    &c.tensor_mor(&ring.fal(a, a1, b)?, &id(&mul(a2, b)?)),
                )?;
                let rr = c.compose(
                    &ring.fal(a, &c.tensor(a1, a2), b)?,
                    &c.tensor_mor(&id(&mul(a, b)?), &ring.fal(a1, a2, b)?),
                )?;
                Ok(l == rr)
            })();
            r.outcome("fal", ok, || oj(t));
            // Read the same tuple as (A, B, B', B'').
            let (a, b, b1, b2) = (&t[0], &t[1], &t[2], &t[3]);
            let ok = (|| {
                let l = c.compose(
                    &ring.far(a, &c.tensor(b, b1), b2)?,
                    &c.tensor_mor(&ring.far(a, b, b1)?, &id(&mul(a, b2)?)),
                )?;
                let rr = c.compose(
                    &ring.far(a, b, &c.tensor(b1, b2))?,
                    &c.tensor_mor(&id(&mul(a, b)?), &ring.far(a, b1, b2)?),
                )?;
                Ok(l == rr)
            })();
            r.outcome("far", ok, || oj(t));
        });
    }

    // External factorization.
    {
        let r = axioms.get_mut("external_factorization").unwrap();
        for_each_tuple(&[small, small, small, small], |t| {
            let (a, a1, b, cc) = (&t[0], &t[1], &t[2], &t[3]);
            let ok = (|| {
                let bc = mul(b, cc)?;
                let l = ring.fal(a, a1, &bc)?;
                let rr = c.compose(&ring.mul_mor(&ring.fal(a, a1, b)?, &id(cc))?, &ring.fal(&mul(a, b)?, &mul(a1, b)?, cc)?)?;
                Ok(l == rr)
            })();
            r.outcome("fal_fal", ok, || oj(t));
            let (a, b, b1, cc) = (&t[0], &t[1], &t[2], &t[3]);
            let ok = (|| {
                let l = c.compose(
                    &ring.mul_mor(&ring.far(a, b, b1)?, &id(cc))?,
                    &ring.fal(&mul(a, b)?, &mul(a, b1)?, cc)?,
                )?;
                let rr = c.compose(
                    &ring.mul_mor(&id(a), &ring.fal(b, b1, cc)?)?,
                    &ring.far(a, &mul(b, cc)?, &mul(b1, cc)?)?,
                )?;
                Ok(l == rr)
            })();
            r.outcome("far_fal", ok, || oj(t));
            let (a, b, cc, c1) = (&t[0], &t[1], &t[2], &t[3]);
            let ok = (|| {
                let l = ring.far(&mul(a, b)?, cc, c1)?;
                let rr = c.compose(
                    &ring.mul_mor(&id(a), &ring.far(b, cc, c1)?)?,
                    &ring.far(a, &mul(b, cc)?, &mul(b, c1)?)?,
                )?;
                Ok(l == rr)
            })();
            r.outcome("far_far", ok, || oj(t));
        });
    }

    // 2-by-2 factorization.
    {
        let r = axioms.get_mut("2by2_factorization").unwrap();
        for_each_tuple(&[small, small, small, small], |t| {
            let (a, a1, b, b1) = (&t[0], &t[1], &t[2], &t[3]);
            let ok = (|| {
                let l = c.compose(
                    &ring.fal(a, a1, &c.tensor(b, b1))?,
                    &c.tensor_mor(&ring.far(a, b, b1)?, &ring.far(a1, b, b1)?),
                )?;
                let mid = c.tensor_mor(
                    &c.tensor_mor(&id(&mul(a, b)?), &c.braiding(&mul(a, b1)?, &mul(a1, b)?)),
                    &id(&mul(a1, b1)?),
                );
                let rr = c.compose(
                    &c.compose(
                        &ring.far(&c.tensor(a, a1), b, b1)?,
                        &c.tensor_mor(&ring.fal(a, a1, b)?, &ring.fal(a, a1, b1)?),
                    )?,
                    &mid,
                )?;
                Ok(l == rr)
            })();
            r.outcome("square", ok, || oj(t));
        });
    }

    RingReport {
        name: ring.name.clone(),
        axioms,
        structure,
        tight,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::cat::Ob;
    use crate::groth::PBounds;

    fn small_ring(name: &str) -> RingCategory<BoundedPCat> {
        let m = fixtures::monoid_by_name(name, 2).unwrap();
        let cats = PCats::single(BoundedPCat::new(m.x.clone(), PBounds::standard(2, 1)).unwrap());
        derive_ring(&m, &cats).unwrap()
    }

    #[test]
    fn builtin_monoids_are_valid() {
        for name in ["HBool", "J", "HZ2"] {
            let m = fixtures::monoid_by_name(name, 4).unwrap();
            let r = validate_gamma_monoid(&m, 2).unwrap();
            assert!(r.is_ok(), "{name}: {}", r.summary());
        }
    }

    #[test]
    fn zero_unit_fails_unit_law() {
        let m = fixtures::monoid_by_name("HBool", 4).unwrap();
        let eta = Arc::new(GammaMultimorphism::nullary("zero", m.x.clone(), Ob(0)).unwrap());
        let bad = GammaMonoid::new("bad", m.x.clone(), m.mu.clone(), eta).unwrap();
        let r = validate_gamma_monoid(&bad, 2).unwrap();
        assert!(!r.is_ok());
        assert!(r.violations.iter().any(|v| v.law.starts_with("left_unit")));
        assert!(r.violations.iter().any(|v| v.law.starts_with("right_unit")));
    }

    #[test]
    fn factorizations_with_unit_are_identities() {
        let ring = small_ring("HBool");
        let c = ring.additive.clone();
        let e = c.unit();
        for b in c.small_object_pool() {
            for d in c.small_object_pool() {
                assert!(c.is_identity(&ring.fal(&e, b, d).unwrap()));
                assert!(c.is_identity(&ring.far(&e, b, d).unwrap()));
                assert!(c.is_identity(&ring.far(&ring.one, b, d).unwrap()));
                assert!(c.is_identity(&ring.fal(b, d, &ring.one).unwrap()));
            }
        }
    }

    #[test]
    fn derived_rings_satisfy_axioms() {
        for name in ["HBool", "J"] {
            let r = validate_ring(&small_ring(name));
            assert!(r.is_ok(), "{name}: {}", r.to_json());
            assert!(r.axioms.values().all(|a| a.checked > 0));
        }
    }

    #[test]
    fn corrupted_far_breaks_symmetry_factorization() {
        let ring = small_ring("HBool");
        let c = ring.additive.clone();
        let (c1, c2) = (c.clone(), c.clone());
        let times = ring.times.clone();
        let orig = ring.far.clone();
        let bad = ring.with_far(move |a, b, d| {
            let f = orig(a, b, d)?;
            let ab = times.object(&[a.clone(), b.clone()])?;
            let ad = times.object(&[a.clone(), d.clone()])?;
            if ab == ad && b != d && format!("{b:?}") < format!("{d:?}") {
                c1.compose(&f, &c2.braiding(&ab, &ad))
            } else {
                Ok(f)
            }
        });
        let r = validate_ring(&bad);
        assert!(!r.is_ok());
        assert!(!r.axioms["symmetry_factorization"].is_ok());
    }
}
