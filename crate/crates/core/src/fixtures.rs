//! Built-in monoids, Γ-categories, multimorphisms and modifications used by
//! the test suites and the command line.

use std::collections::HashMap;
use std::sync::Arc;

use crate::cat::{FiniteCategory, Mor, MorphismEntry, Ob};
use crate::error::{Error, Result};
use crate::fskel::lex_tuple;
use crate::ringcat::GammaMonoid;
use crate::gamma::{
    em_gamma, unit_gamma, CommutativeMonoidCategory, ComponentRule, GammaCategory, GammaModification, GammaMultimorphism,
    ModificationRule, MultiAdditive,
};

/// Z/2 as a discrete category.
pub fn z2() -> Arc<CommutativeMonoidCategory> {
    Arc::new(CommutativeMonoidCategory::discrete("Z/2", &["0", "1"], |a, b| (a + b) % 2).expect("valid monoid"))
}

/// Z/2 with a unique morphism between any two objects.
pub fn z2_codiscrete() -> Arc<CommutativeMonoidCategory> {
    Arc::new(CommutativeMonoidCategory::codiscrete("Z/2~", &["0", "1"], |a, b| (a + b) % 2).expect("valid monoid"))
}

/// The booleans under disjunction, ordered 0 ≤ 1.
pub fn bool_or() -> Arc<CommutativeMonoidCategory> {
    Arc::new(CommutativeMonoidCategory::preorder("Bool", &["0", "1"], |a, b| a <= b, |a, b| a | b).expect("valid monoid"))
}

/// F2² as a discrete category under addition.
pub fn f2_squared() -> Arc<CommutativeMonoidCategory> {
    Arc::new(
        CommutativeMonoidCategory::discrete("F2^2", &["00", "01", "10", "11"], |a, b| a ^ b).expect("valid monoid"),
    )
}

/// Z/2 × BZ/2: objects Z/2, each with automorphism group Z/2. The morphism
/// `(x, g)` has index `2x + g` and is named `1_x` or `t_x`.
pub fn z2_twisted() -> Arc<CommutativeMonoidCategory> {
    let objects = vec!["0".to_string(), "1".to_string()];
    let mut morphisms = Vec::new();
    for x in 0..2u32 {
        for name in ["1", "t"] {
            morphisms.push(MorphismEntry {
                name: format!("{name}_{x}"),
                src: Ob(x),
                tgt: Ob(x),
            });
        }
    }
    let mut compose = HashMap::new();
    for x in 0..2u32 {
        for g in 0..2u32 {
            for h in 0..2u32 {
                compose.insert((Mor(2 * x + g), Mor(2 * x + h)), Mor(2 * x + (g ^ h)));
            }
        }
    }
    let cat = FiniteCategory::from_tables(objects, morphisms, vec![Mor(0), Mor(2)], compose).expect("valid tables");
    Arc::new(
        CommutativeMonoidCategory::new(
            "Z/2xBZ/2",
            Arc::new(cat),
            Ob(0),
            |a, b| Ob(a.0 ^ b.0),
            |f, g| Some(Mor(f.0 ^ g.0)),
        )
        .expect("valid monoid"),
    )
}

pub fn j(truncation: usize) -> Arc<GammaCategory> {
    Arc::new(unit_gamma(truncation))
}

pub fn hz2(truncation: usize) -> Arc<GammaCategory> {
    Arc::new(em_gamma(z2(), truncation).expect("valid truncation"))
}

pub fn hz2_codiscrete(truncation: usize) -> Arc<GammaCategory> {
    Arc::new(em_gamma(z2_codiscrete(), truncation).expect("valid truncation"))
}

pub fn hbool(truncation: usize) -> Arc<GammaCategory> {
    Arc::new(em_gamma(bool_or(), truncation).expect("valid truncation"))
}

pub fn hf2_squared(truncation: usize) -> Arc<GammaCategory> {
    Arc::new(em_gamma(f2_squared(), truncation).expect("valid truncation"))
}

pub fn hz2_twisted(truncation: usize) -> Arc<GammaCategory> {
    Arc::new(em_gamma(z2_twisted(), truncation).expect("valid truncation"))
}

/// Names accepted by [`gamma_by_name`].
pub const GAMMA_NAMES: [&str; 6] = ["J", "HZ2", "HZ2codiscrete", "HBool", "HF2sq", "HZ2twisted"];

pub fn gamma_by_name(name: &str, truncation: usize) -> Result<Arc<GammaCategory>> {
    Ok(match name {
        "J" => j(truncation),
        "HZ2" => hz2(truncation),
        "HZ2codiscrete" => hz2_codiscrete(truncation),
        "HBool" => hbool(truncation),
        "HF2sq" => hf2_squared(truncation),
        "HZ2twisted" => hz2_twisted(truncation),
        _ => return Err(Error::UnknownReference(format!("no built-in Γ-category {name}"))),
    })
}

/// The Eilenberg–MacLane multimorphism induced by a multi-additive functor.
pub fn em_multimorphism(
    name: &str,
    sources: Vec<Arc<GammaCategory>>,
    target: Arc<GammaCategory>,
    b: MultiAdditive,
) -> Result<GammaMultimorphism> {
    GammaMultimorphism::from_rule(name, sources, target, Arc::new(b).component_rule())
}

fn monoid_of(x: &GammaCategory) -> Result<Arc<CommutativeMonoidCategory>> {
    Ok(match x.name() {
        "H(Z/2)" => z2(),
        "H(Z/2~)" => z2_codiscrete(),
        "H(Bool)" => bool_or(),
        "H(F2^2)" => f2_squared(),
        "H(Z/2xBZ/2)" => z2_twisted(),
        other => return Err(Error::UnknownReference(format!("{other} is not a built-in Eilenberg–MacLane Γ-category"))),
    })
}

/// Multiplication on H(Z/2), H(Z/2~), H(Z/2xBZ/2) or H(Bool); the product
/// of two morphisms is the unique one between the products of the
/// endpoints, or componentwise for the twisted monoid.
pub fn multiplication(x: &Arc<GammaCategory>) -> Result<GammaMultimorphism> {
    let m = monoid_of(x)?;
    let c = m.category().clone();
    let twisted = m.name() == "Z/2xBZ/2";
    let on_ob = |xs: &[Ob]| Ob(xs[0].0 & xs[1].0);
    let c2 = c.clone();
    let on_mor = move |fs: &[Mor]| {
        if twisted {
            // (x, g)(y, h) = (xy, xh + yg)
            let (x, g) = (fs[0].0 >> 1, fs[0].0 & 1);
            let (y, h) = (fs[1].0 >> 1, fs[1].0 & 1);
            return Mor(2 * (x & y) + ((x & h) ^ (y & g)));
        }
        let s = Ob(c2.src(fs[0]).0 & c2.src(fs[1]).0);
        let t = Ob(c2.tgt(fs[0]).0 & c2.tgt(fs[1]).0);
        c2.hom(s, t)[0]
    };
    if m.name() == "F2^2" {
        return Err(Error::InvalidMonoid("F2^2 carries no built-in multiplication".into()));
    }
    let b = MultiAdditive::new(vec![m.clone(), m.clone()], m, on_ob, on_mor)?;
    em_multimorphism("mu", vec![x.clone(), x.clone()], x.clone(), b)
}

/// The 0-ary multimorphism with value `(1)` in level 1.
pub fn unit_element(x: &Arc<GammaCategory>) -> Result<GammaMultimorphism> {
    GammaMultimorphism::nullary("eta", x.clone(), Ob(1))
}

/// The zero multimorphism of the given arity on an Eilenberg–MacLane
/// Γ-category.
pub fn zero_multimorphism(x: &Arc<GammaCategory>, arity: usize) -> Result<GammaMultimorphism> {
    let m = monoid_of(x)?;
    let c = m.category().clone();
    let z = m.zero();
    let b = MultiAdditive::new(vec![m.clone(); arity], m, move |_| z, move |_| c.identity(z))?;
    em_multimorphism(&format!("zero{arity}"), vec![x.clone(); arity], x.clone(), b)
}

/// The bilinear form `x_0 y_1` on F2², which is not symmetric.
pub fn skew_form(x: &Arc<GammaCategory>, z: &Arc<GammaCategory>) -> Result<GammaMultimorphism> {
    let (m, t) = (monoid_of(x)?, monoid_of(z)?);
    let tc = t.category().clone();
    // Objects "00","01","10","11" have indices 0..3; bit 1 is x_0, bit 0 is x_1.
    let on_ob = |xs: &[Ob]| Ob((xs[0].0 >> 1) & xs[1].0 & 1);
    let on_mor = move |fs: &[Mor]| tc.identity(Ob((fs[0].0 >> 1) & fs[1].0 & 1));
    let b = MultiAdditive::new(vec![m.clone(), m], t, on_ob, on_mor)?;
    em_multimorphism("skew", vec![x.clone(), x.clone()], z.clone(), b)
}

/// The projection F2² → Z/2 onto the first coordinate.
pub fn projection(x: &Arc<GammaCategory>, z: &Arc<GammaCategory>) -> Result<GammaMultimorphism> {
    let (m, t) = (monoid_of(x)?, monoid_of(z)?);
    let tc = t.category().clone();
    let b = MultiAdditive::new(vec![m], t, |xs| Ob(xs[0].0 >> 1), move |fs| tc.identity(Ob(fs[0].0 >> 1)))?;
    em_multimorphism("proj", vec![x.clone()], z.clone(), b)
}

/// The diagonal Z/2 → F2².
pub fn diagonal(x: &Arc<GammaCategory>, z: &Arc<GammaCategory>) -> Result<GammaMultimorphism> {
    let (m, t) = (monoid_of(x)?, monoid_of(z)?);
    let tc = t.category().clone();
    let b = MultiAdditive::new(vec![m], t, |xs| Ob(3 * xs[0].0), move |fs| tc.identity(Ob(3 * fs[0].0)))?;
    em_multimorphism("diag", vec![x.clone()], z.clone(), b)
}

struct LexProduct {
    j: Arc<GammaCategory>,
}

impl ComponentRule for LexProduct {
    fn object(&self, levels: &[usize], xs: &[Ob]) -> Result<Ob> {
        let coords: Vec<usize> = xs.iter().map(|o| o.index()).collect();
        Ok(Ob(lex_tuple(levels, &coords) as u32))
    }

    fn morphism(&self, levels: &[usize], fs: &[Mor]) -> Result<Mor> {
        // Every morphism of J is an identity.
        let xs: Vec<Ob> = fs
            .iter()
            .zip(levels)
            .map(|(&f, &p)| Ok(self.j.category(p)?.src(f)))
            .collect::<Result<_>>()?;
        let o = self.object(levels, &xs)?;
        Ok(self.j.category(levels.iter().product())?.identity(o))
    }
}

/// `⟨p⟩ ∧ ⟨q⟩ ≅ ⟨pq⟩` on J.
pub fn j_multiplication(j: &Arc<GammaCategory>) -> Result<GammaMultimorphism> {
    GammaMultimorphism::from_rule("mu", vec![j.clone(), j.clone()], j.clone(), Arc::new(LexProduct { j: j.clone() }))
}

/// Names accepted by [`monoid_by_name`].
pub const MONOID_NAMES: [&str; 5] = ["J", "HZ2", "HZ2codiscrete", "HBool", "HZ2twisted"];

/// The built-in monoid structure `(μ, η)` on a Γ-category.
pub fn monoid_by_name(name: &str, truncation: usize) -> Result<GammaMonoid> {
    if !MONOID_NAMES.contains(&name) {
        return Err(Error::UnknownReference(format!("no built-in monoid on {name}")));
    }
    let x = gamma_by_name(name, truncation)?;
    let mu = if name == "J" { j_multiplication(&x)? } else { multiplication(&x)? };
    let eta = unit_element(&x)?;
    GammaMonoid::new(name, x, Arc::new(mu), Arc::new(eta))
}

struct TwistRule {
    x: Arc<GammaCategory>,
}

impl ModificationRule for TwistRule {
    fn component(&self, levels: &[usize], xs: &[Ob]) -> Result<Mor> {
        let c = self.x.category(levels[0])?;
        let coords: Vec<Mor> = c.object_coords(xs[0]).iter().map(|o| Mor(2 * o.0 + o.0)).collect();
        Ok(c.tuple_morphism(&coords))
    }
}

/// The modification `1 ⇒ 1` on H(Z/2xBZ/2) whose component at `x` is the
/// automorphism `(x, x)` in each coordinate.
pub fn twist(x: &Arc<GammaCategory>) -> Result<GammaModification> {
    let id = Arc::new(GammaMultimorphism::identity(x.clone()));
    GammaModification::from_rule("twist", id.clone(), id, Arc::new(TwistRule { x: x.clone() }))
}

/// The pair `zero ⇒ 1 ⇒ zero` of thin modifications on H(Z/2~).
pub fn thin_pair(x: &Arc<GammaCategory>) -> Result<(GammaModification, GammaModification)> {
    let id = Arc::new(GammaMultimorphism::identity(x.clone()));
    let zero = Arc::new(zero_multimorphism(x, 1)?);
    Ok((
        GammaModification::thin("theta", zero.clone(), id.clone())?,
        GammaModification::thin("theta'", id, zero)?,
    ))
}
