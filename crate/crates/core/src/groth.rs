//! The functor AX on the indexing category and the Grothendieck
//! construction 𝒫X, with its concatenation tensor and block-swap braiding.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cat::{cartesian, FiniteCategory, Functor, Mor, Ob};
use crate::error::{Error, Result};
use crate::gamma::GammaCategory;
use crate::permlin::Permutative;
use crate::indexing::{block_swap, enumerate_amorphisms, AMorphism, AObject, SeqBound};

/// An object `(m, x)` of 𝒫X: a sequence and an object of each `X⟨m_i⟩`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PObject {
    pub m: AObject,
    pub x: Vec<Ob>,
}

impl PObject {
    /// The monoidal unit `((), *)`.
    pub fn unit() -> Self {
        PObject::default()
    }

    pub fn is_unit(&self) -> bool {
        self.m.is_empty()
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn concat(&self, other: &PObject) -> PObject {
        let mut x = self.x.clone();
        x.extend_from_slice(&other.x);
        PObject {
            m: self.m.concat(&other.m),
            x,
        }
    }
}

impl fmt::Display for PObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let xs: Vec<String> = self.x.iter().map(|o| o.0.to_string()).collect();
        write!(f, "({}, [{}])", self.m, xs.join(","))
    }
}

/// A morphism `(φ, f): (m, x) → (n, y)` with `f_j: φ_*(x)_j → y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMorphism {
    source: PObject,
    target: PObject,
    phi: AMorphism,
    f: Vec<Mor>,
}

impl PMorphism {
    /// Assembles a morphism without checking it; see [`PCat::check_morphism`].
    pub(crate) fn from_parts(source: PObject, target: PObject, phi: AMorphism, f: Vec<Mor>) -> Self {
        PMorphism { source, target, phi, f }
    }

    pub fn source(&self) -> &PObject {
        &self.source
    }

    pub fn target(&self) -> &PObject {
        &self.target
    }

    pub fn phi(&self) -> &AMorphism {
        &self.phi
    }

    pub fn components(&self) -> &[Mor] {
        &self.f
    }
}

/// `(AX)(m) = ∏ X⟨m_i⟩`; the empty product is terminal.
pub fn ax_on_object(x: &GammaCategory, m: &AObject) -> Result<FiniteCategory> {
    let factors = m
        .entries()
        .iter()
        .map(|&n| x.category(n).cloned())
        .collect::<Result<Vec<_>>>()?;
    Ok(FiniteCategory::product(factors))
}

/// `φ_*` on an object tuple: coordinate j is `X(φ_{i,j})(x_i)`, or the
/// basepoint when the preimage of block j is empty.
pub fn push_objects(x: &GammaCategory, phi: &AMorphism, xs: &[Ob]) -> Result<Vec<Ob>> {
    if xs.len() != phi.dom().len() {
        return Err(Error::DomainMismatch("object tuple does not match the domain".into()));
    }
    phi.block_maps()?
        .into_iter()
        .enumerate()
        .map(|(j, bm)| match bm {
            None => x.basepoint(phi.cod().entries()[j]),
            Some((i, f)) => x.act_object(&f, xs[i]),
        })
        .collect()
}

/// `φ_*` on a morphism tuple.
pub fn push_morphisms(x: &GammaCategory, phi: &AMorphism, fs: &[Mor]) -> Result<Vec<Mor>> {
    if fs.len() != phi.dom().len() {
        return Err(Error::DomainMismatch("morphism tuple does not match the domain".into()));
    }
    phi.block_maps()?
        .into_iter()
        .enumerate()
        .map(|(j, bm)| match bm {
            None => {
                let n = phi.cod().entries()[j];
                Ok(x.level(n)?.base_identity())
            }
            Some((i, f)) => x.act_morphism(&f, fs[i]),
        })
        .collect()
}

/// The functor `φ_*: (AX)(m) → (AX)(n)`, materialized.
pub fn ax_on_morphism(x: &GammaCategory, phi: &AMorphism) -> Result<Functor> {
    phi.source_blocks()?;
    let dom = Arc::new(ax_on_object(x, phi.dom())?);
    let cod = Arc::new(ax_on_object(x, phi.cod())?);
    let (d, c) = (dom.clone(), cod.clone());
    Functor::from_fns(
        dom,
        cod,
        |o| Ok(c.tuple_object(&push_objects(x, phi, &d.object_coords(o))?)),
        |m| Ok(c.tuple_morphism(&push_morphisms(x, phi, &d.morphism_coords(m))?)),
    )
}

/// The Grothendieck construction 𝒫X.
#[derive(Clone)]
pub struct PCat {
    gamma: Arc<GammaCategory>,
}

impl fmt::Debug for PCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({})", self.gamma.name())
    }
}

impl PCat {
    pub fn new(gamma: Arc<GammaCategory>) -> Self {
        PCat { gamma }
    }

    pub fn gamma(&self) -> &Arc<GammaCategory> {
        &self.gamma
    }

    pub fn check_object(&self, a: &PObject) -> Result<()> {
        if a.m.len() != a.x.len() {
            return Err(Error::DomainMismatch(format!("{a}: sequence and tuple lengths differ")));
        }
        for (&n, &o) in a.m.entries().iter().zip(&a.x) {
            if !self.gamma.category(n)?.contains_object(o) {
                return Err(Error::DomainMismatch(format!("{a}: {} is not an object of level {n}", o.0)));
            }
        }
        Ok(())
    }

    pub fn object(&self, m: AObject, x: Vec<Ob>) -> Result<PObject> {
        let a = PObject { m, x };
        self.check_object(&a)?;
        Ok(a)
    }

    /// Builds `(φ, f)`, recomputing `φ_*(x)` and rejecting ill-typed `f`.
    pub fn morphism(&self, source: PObject, target: PObject, phi: AMorphism, f: Vec<Mor>) -> Result<PMorphism> {
        self.check_object(&source)?;
        self.check_object(&target)?;
        if *phi.dom() != source.m || *phi.cod() != target.m {
            return Err(Error::IllTyped(format!("φ: {} → {} does not match {} → {}", phi.dom(), phi.cod(), source, target)));
        }
        let pushed = push_objects(&self.gamma, &phi, &source.x)?;
        if f.len() != target.x.len() {
            return Err(Error::IllTyped("wrong number of components".into()));
        }
        for (j, ((&fj, &pj), &yj)) in f.iter().zip(&pushed).zip(&target.x).enumerate() {
            let c = self.gamma.category(target.m.entries()[j])?;
            if !c.contains_morphism(fj) || c.src(fj) != pj || c.tgt(fj) != yj {
                return Err(Error::IllTyped(format!(
                    "component {} is not a morphism {} → {} of level {}",
                    j + 1,
                    c.object_name(pj),
                    c.object_name(yj),
                    target.m.entries()[j]
                )));
            }
        }
        Ok(PMorphism { source, target, phi, f })
    }

    /// Re-validates a morphism built elsewhere.
    pub fn check_morphism(&self, f: &PMorphism) -> Result<()> {
        if !f.phi.is_valid() {
            return Err(Error::BlockMismatch(format!("{:?} violates the block condition", f.phi)));
        }
        self.morphism(f.source.clone(), f.target.clone(), f.phi.clone(), f.f.clone()).map(|_| ())
    }

    pub fn identity(&self, a: &PObject) -> PMorphism {
        let f = a
            .m
            .entries()
            .iter()
            .zip(&a.x)
            .map(|(&n, &o)| self.gamma.category(n).expect("checked object").identity(o))
            .collect();
        PMorphism {
            source: a.clone(),
            target: a.clone(),
            phi: AMorphism::identity(&a.m),
            f,
        }
    }

    /// `(ψ, g) ∘ (φ, f) = (ψφ, g ∘ ψ_*(f))`.
    pub fn compose(&self, g: &PMorphism, f: &PMorphism) -> Result<PMorphism> {
        if f.target != g.source {
            return Err(Error::DomainMismatch(format!("cannot compose: {} ≠ {}", f.target, g.source)));
        }
        let phi = AMorphism::compose(&g.phi, &f.phi)?;
        let pushed = push_morphisms(&self.gamma, &g.phi, &f.f)?;
        let comps = pushed
            .iter()
            .zip(&g.f)
            .enumerate()
            .map(|(j, (&p, &gj))| {
                self.gamma
                    .category(g.target.m.entries()[j])?
                    .compose(gj, p)
                    .ok_or_else(|| Error::IllTyped("components do not compose".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PMorphism {
            source: f.source.clone(),
            target: g.target.clone(),
            phi,
            f: comps,
        })
    }

    pub fn unit(&self) -> PObject {
        PObject::unit()
    }

    pub fn box_objects(&self, a: &PObject, b: &PObject) -> PObject {
        a.concat(b)
    }

    pub fn box_morphisms(&self, f: &PMorphism, g: &PMorphism) -> PMorphism {
        let mut comps = f.f.clone();
        comps.extend_from_slice(&g.f);
        PMorphism {
            source: f.source.concat(&g.source),
            target: f.target.concat(&g.target),
            phi: AMorphism::concat(&f.phi, &g.phi),
            f: comps,
        }
    }

    /// `ξ = (τ, 1): a □ b → b □ a`.
    pub fn braiding(&self, a: &PObject, b: &PObject) -> PMorphism {
        let target = b.concat(a);
        let f = self.identity(&target).f;
        PMorphism {
            source: a.concat(b),
            target,
            phi: block_swap(&a.m, &b.m).to_morphism(),
            f,
        }
    }

    pub fn inverse(&self, f: &PMorphism) -> Option<PMorphism> {
        let inv_phi = f.phi.inverse()?;
        // (φ, f)^{-1} = (φ^{-1}, φ^{-1}_*(f^{-1})).
        let inv_f = f
            .f
            .iter()
            .enumerate()
            .map(|(j, &fj)| self.gamma.category(f.target.m.entries()[j]).ok()?.inverse(fj))
            .collect::<Option<Vec<_>>>()?;
        let pushed = push_morphisms(&self.gamma, &inv_phi, &inv_f).ok()?;
        self.morphism(f.target.clone(), f.source.clone(), inv_phi, pushed).ok()
    }

    pub fn is_isomorphism(&self, f: &PMorphism) -> bool {
        self.inverse(f).is_some()
    }

    /// All morphisms `a → b`.
    pub fn hom(&self, a: &PObject, b: &PObject) -> Result<Vec<PMorphism>> {
        let mut out = Vec::new();
        for phi in enumerate_amorphisms(&a.m, &b.m) {
            let pushed = push_objects(&self.gamma, &phi, &a.x)?;
            let lists = pushed
                .iter()
                .zip(&b.x)
                .zip(b.m.entries())
                .map(|((&p, &y), &n)| Ok(self.gamma.category(n)?.hom(p, y)))
                .collect::<Result<Vec<_>>>()?;
            for f in cartesian(&lists) {
                out.push(PMorphism {
                    source: a.clone(),
                    target: b.clone(),
                    phi: phi.clone(),
                    f,
                });
            }
        }
        Ok(out)
    }

    /// Objects whose sequence lies in `bound`, ordered by sequence, then by
    /// the tuple of level objects.
    pub fn enumerate_objects(&self, bound: &SeqBound) -> Result<Vec<PObject>> {
        if bound.max_len > 0 && bound.max_entry > self.gamma.truncation() {
            return Err(Error::TruncationExceeded {
                level: bound.max_entry,
                truncation: self.gamma.truncation(),
            });
        }
        let mut out = Vec::new();
        for m in bound.sequences() {
            let lists = m
                .entries()
                .iter()
                .map(|&n| Ok(self.gamma.category(n)?.objects().collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            for x in cartesian(&lists) {
                out.push(PObject { m: m.clone(), x });
            }
        }
        Ok(out)
    }

    pub fn object_json(&self, a: &PObject) -> Value {
        let names: Vec<String> = a
            .m
            .entries()
            .iter()
            .zip(&a.x)
            .map(|(&n, &o)| self.gamma.category(n).map(|c| c.object_name(o)).unwrap_or_default())
            .collect();
        json!({"m": a.m, "x": names})
    }

    pub fn morphism_json(&self, f: &PMorphism) -> Value {
        let names: Vec<String> = f
            .target
            .m
            .entries()
            .iter()
            .zip(&f.f)
            .map(|(&n, &m)| self.gamma.category(n).map(|c| c.morphism_name(m)).unwrap_or_default())
            .collect();
        json!({
            "source": self.object_json(&f.source),
            "target": self.object_json(&f.target),
            "phi": f.phi,
            "f": names,
        })
    }

    /// Parses `{"m": [..], "x": [names]}`.
    pub fn object_from_json(&self, v: &Value) -> Result<PObject> {
        let m: AObject = serde_json::from_value(v.get("m").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::InvalidDocument(format!("object sequence: {e}")))?;
        let names: Vec<String> = serde_json::from_value(v.get("x").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::InvalidDocument(format!("object tuple: {e}")))?;
        if names.len() != m.len() {
            return Err(Error::InvalidDocument("sequence and tuple lengths differ".into()));
        }
        let x = m
            .entries()
            .iter()
            .zip(&names)
            .map(|(&n, s)| {
                self.gamma
                    .category(n)?
                    .find_object(s)
                    .ok_or_else(|| Error::UnknownReference(format!("object {s} of level {n}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.object(m, x)
    }

    /// Parses `{"source": .., "phi": .., "f": [names]}`; the target is read
    /// off the components when absent.
    pub fn morphism_from_json(&self, v: &Value) -> Result<PMorphism> {
        let source = self.object_from_json(v.get("source").ok_or_else(|| Error::InvalidDocument("morphism needs a source".into()))?)?;
        let phi: AMorphism = serde_json::from_value(v.get("phi").cloned().unwrap_or(Value::Null))
            .map_err(|e| Error::InvalidDocument(format!("phi: {e}")))?;
        let names: Vec<String> = serde_json::from_value(v.get("f").cloned().unwrap_or(json!([])))
            .map_err(|e| Error::InvalidDocument(format!("components: {e}")))?;
        if names.len() != phi.cod().len() {
            return Err(Error::InvalidDocument("one component per codomain block is required".into()));
        }
        let mut f = Vec::new();
        let mut y = Vec::new();
        for (&n, s) in phi.cod().entries().iter().zip(&names) {
            let c = self.gamma.category(n)?;
            let m = c
                .find_morphism(s)
                .ok_or_else(|| Error::UnknownReference(format!("morphism {s} of level {n}")))?;
            f.push(m);
            y.push(c.tgt(m));
        }
        let target = match v.get("target") {
            Some(t) => self.object_from_json(t)?,
            None => PObject { m: phi.cod().clone(), x: y },
        };
        self.morphism(source, target, phi, f)
    }
}

/// Bounds for the pools a bounded 𝒫X quantifies over. Morphism pools
/// contain every morphism between objects admitted by the bound. Checks with
/// three or more quantified variables draw from the small pools.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PBounds {
    pub objects: SeqBound,
    pub morphisms: SeqBound,
    pub small_objects: SeqBound,
    pub small_morphisms: SeqBound,
}

impl PBounds {
    pub fn uniform(b: SeqBound) -> Self {
        PBounds {
            objects: b,
            morphisms: b,
            small_objects: b,
            small_morphisms: b,
        }
    }

    /// Objects of length ≤ `max_len` and entries ≤ `max_entry`; morphisms
    /// and the small object pool between sequences of total ≤ `max_entry`;
    /// small morphisms between sequences of total ≤ 1.
    pub fn standard(max_len: usize, max_entry: usize) -> Self {
        let b = SeqBound::new(max_len, max_entry);
        PBounds {
            objects: b,
            morphisms: b.with_total(max_entry),
            small_objects: b.with_total(max_entry),
            small_morphisms: b.with_total(max_entry.min(1)),
        }
    }

    pub fn max_entry(&self) -> usize {
        [self.objects, self.morphisms, self.small_objects, self.small_morphisms]
            .iter()
            .filter(|b| b.max_len > 0)
            .map(|b| b.max_entry)
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "objects": self.objects.to_json(),
            "morphisms": self.morphisms.to_json(),
            "small_objects": self.small_objects.to_json(),
            "small_morphisms": self.small_morphisms.to_json(),
        })
    }
}

/// 𝒫X together with finite pools of objects and morphisms for quantified
/// checks. The operations themselves are unrestricted.
#[derive(Clone)]
pub struct BoundedPCat {
    pcat: PCat,
    bounds: Option<PBounds>,
    objects: Vec<PObject>,
    morphisms: Vec<PMorphism>,
    small_objects: Vec<PObject>,
    small_morphisms: Vec<PMorphism>,
}

impl fmt::Debug for BoundedPCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P({}) [{} objects, {} morphisms]",
            self.pcat.gamma.name(),
            self.objects.len(),
            self.morphisms.len()
        )
    }
}

impl BoundedPCat {
    pub fn new(gamma: Arc<GammaCategory>, bounds: PBounds) -> Result<Self> {
        let pcat = PCat::new(gamma);
        let homs = |b: &SeqBound| -> Result<Vec<PMorphism>> {
            let obs = pcat.enumerate_objects(b)?;
            let mut out = Vec::new();
            for a in &obs {
                for c in &obs {
                    out.extend(pcat.hom(a, c)?);
                }
            }
            Ok(out)
        };
        let objects = pcat.enumerate_objects(&bounds.objects)?;
        let small_objects = pcat.enumerate_objects(&bounds.small_objects)?;
        let morphisms = homs(&bounds.morphisms)?;
        let small_morphisms = homs(&bounds.small_morphisms)?;
        Ok(BoundedPCat {
            pcat,
            bounds: Some(bounds),
            objects,
            morphisms,
            small_objects,
            small_morphisms,
        })
    }

    /// 𝒫X with only the unit in its pools, for use as a target.
    pub fn unbounded(gamma: Arc<GammaCategory>) -> Self {
        let pcat = PCat::new(gamma);
        let unit = PObject::unit();
        let id = pcat.identity(&unit);
        BoundedPCat {
            pcat,
            bounds: None,
            objects: vec![unit.clone()],
            morphisms: vec![id.clone()],
            small_objects: vec![unit],
            small_morphisms: vec![id],
        }
    }

    pub fn pcat(&self) -> &PCat {
        &self.pcat
    }

    pub fn gamma(&self) -> &Arc<GammaCategory> {
        &self.pcat.gamma
    }

    pub fn bounds(&self) -> Option<&PBounds> {
        self.bounds.as_ref()
    }

    pub fn dump(&self) -> Value {
        json!({
            "gamma": self.pcat.gamma.name(),
            "truncation": self.pcat.gamma.truncation(),
            "bound": self.bounds.map(|b| b.objects.to_json()),
            "objects": self.objects.iter().map(|a| self.pcat.object_json(a)).collect::<Vec<_>>(),
            "morphisms": self.morphisms.iter().map(|f| self.pcat.morphism_json(f)).collect::<Vec<_>>(),
        })
    }
}

/// 𝒫X with the standard pools for objects of length ≤ `max_len` and entries
/// ≤ `max_entry`.
pub fn build_pcat(gamma: Arc<GammaCategory>, max_len: usize, max_entry: usize) -> Result<BoundedPCat> {
    BoundedPCat::new(gamma, PBounds::standard(max_len, max_entry))
}

impl Permutative for BoundedPCat {
    type Ob = PObject;
    type Mor = PMorphism;

    fn name(&self) -> String {
        format!("P{}", self.pcat.gamma.name())
    }

    fn dom(&self, f: &PMorphism) -> PObject {
        f.source.clone()
    }

    fn cod(&self, f: &PMorphism) -> PObject {
        f.target.clone()
    }

    fn identity(&self, a: &PObject) -> PMorphism {
        self.pcat.identity(a)
    }

    fn compose(&self, g: &PMorphism, f: &PMorphism) -> Result<PMorphism> {
        self.pcat.compose(g, f)
    }

    fn unit(&self) -> PObject {
        PObject::unit()
    }

    fn tensor(&self, a: &PObject, b: &PObject) -> PObject {
        a.concat(b)
    }

    fn tensor_mor(&self, f: &PMorphism, g: &PMorphism) -> PMorphism {
        self.pcat.box_morphisms(f, g)
    }

    fn braiding(&self, a: &PObject, b: &PObject) -> PMorphism {
        self.pcat.braiding(a, b)
    }

    fn is_isomorphism(&self, f: &PMorphism) -> bool {
        self.pcat.is_isomorphism(f)
    }

    fn check_morphism(&self, f: &PMorphism) -> Result<()> {
        self.pcat.check_morphism(f)
    }

    fn is_identity(&self, f: &PMorphism) -> bool {
        f.source == f.target && f.phi.is_identity() && *f == self.pcat.identity(&f.source)
    }

    fn object_pool(&self) -> &[PObject] {
        &self.objects
    }

    fn morphism_pool(&self) -> &[PMorphism] {
        &self.morphisms
    }

    fn small_object_pool(&self) -> &[PObject] {
        &self.small_objects
    }

    fn small_morphism_pool(&self) -> &[PMorphism] {
        &self.small_morphisms
    }

    fn object_json(&self, a: &PObject) -> Value {
        self.pcat.object_json(a)
    }

    fn morphism_json(&self, f: &PMorphism) -> Value {
        self.pcat.morphism_json(f)
    }

    fn bound_json(&self) -> Value {
        json!({
            "gamma": self.pcat.gamma.name(),
            "truncation": self.pcat.gamma.truncation(),
            "bounds": self.bounds.map(|b| b.to_json()),
            "pool": [self.objects.len(), self.morphisms.len()],
            "small_pool": [self.small_objects.len(), self.small_morphisms.len()],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::indexing::Element;
    use crate::permlin::validate_permutative;

    fn obj(c: &PCat, m: &[usize], xs: &[&str]) -> PObject {
        let m = AObject::new(m.to_vec()).unwrap();
        let x = m
            .entries()
            .iter()
            .zip(xs)
            .map(|(&n, s)| c.gamma().category(n).unwrap().find_object(s).unwrap())
            .collect();
        c.object(m, x).unwrap()
    }

    #[test]
    fn ax_on_object_sizes() {
        let x = fixtures::hz2(3);
        let c = ax_on_object(&x, &AObject::new(vec![2, 1]).unwrap()).unwrap();
        assert_eq!((c.object_count(), c.morphism_count()), (8, 8));
        let e = ax_on_object(&x, &AObject::empty()).unwrap();
        assert_eq!(e.object_count(), 1);
        let j = fixtures::j(2);
        assert_eq!(ax_on_object(&j, &AObject::new(vec![1]).unwrap()).unwrap().object_count(), 2);
        assert!(matches!(
            ax_on_object(&x, &AObject::new(vec![4]).unwrap()),
            Err(Error::TruncationExceeded { level: 4, .. })
        ));
    }

    #[test]
    fn empty_preimage_goes_to_basepoint() {
        let x = fixtures::hz2(2);
        // (1) → (1, 2) hitting only the first block.
        let phi = AMorphism::new(
            AObject::new(vec![1]).unwrap(),
            AObject::new(vec![1, 2]).unwrap(),
            vec![Element { block: 0, index: 0 }],
        )
        .unwrap();
        let f = ax_on_morphism(&x, &phi).unwrap();
        for o in f.dom.objects() {
            let out = f.cod.object_coords(f.ob(o));
            assert_eq!(out[0], f.dom.object_coords(o)[0]);
            assert_eq!(out[1], x.basepoint(2).unwrap());
        }
    }

    #[test]
    fn identity_and_unit_laws() {
        let c = PCat::new(fixtures::hz2(2));
        let a = obj(&c, &[2], &["(1,0)"]);
        let b = obj(&c, &[1, 1], &["(1)", "(0)"]);
        for f in c.hom(&a, &b).unwrap() {
            assert_eq!(c.compose(&c.identity(&b), &f).unwrap(), f);
            assert_eq!(c.compose(&f, &c.identity(&a)).unwrap(), f);
        }
        let e = c.unit();
        assert_eq!(c.box_objects(&e, &a), a);
        assert_eq!(c.box_objects(&a, &e), a);
    }

    #[test]
    fn concatenation_example() {
        let c = PCat::new(fixtures::hz2(2));
        let a = obj(&c, &[2], &["(1,1)"]);
        let b = obj(&c, &[1], &["(1)"]);
        let ab = c.box_objects(&a, &b);
        assert_eq!(ab.m.entries(), &[2, 1]);
        assert_eq!(ab.x, vec![a.x[0], b.x[0]]);
    }

    #[test]
    fn composition_is_associative_on_a_triple() {
        let c = BoundedPCat::new(fixtures::hz2(2), PBounds::standard(2, 2)).unwrap();
        let p = c.pcat();
        let pool = c.small_morphism_pool();
        let mut n = 0;
        for f in pool {
            for g in pool.iter().filter(|g| g.source() == f.target()) {
                for h in pool.iter().filter(|h| h.source() == g.target()) {
                    let l = p.compose(h, &p.compose(g, f).unwrap()).unwrap();
                    let r = p.compose(&p.compose(h, g).unwrap(), f).unwrap();
                    assert_eq!(l, r);
                    p.check_morphism(&l).unwrap();
                    n += 1;
                }
            }
        }
        assert!(n > 0);
    }

    #[test]
    fn box_of_morphisms_is_typed_by_concatenated_phi() {
        let c = PCat::new(fixtures::hbool(2));
        let a = obj(&c, &[2], &["(1,0)"]);
        let b = obj(&c, &[1], &["(1)"]);
        let homs = c.hom(&a, &a).unwrap();
        let homs2 = c.hom(&b, &b).unwrap();
        for f in &homs {
            for g in &homs2 {
                let h = c.box_morphisms(f, g);
                assert_eq!(*h.phi(), AMorphism::concat(f.phi(), g.phi()));
                c.check_morphism(&h).unwrap();
            }
        }
    }

    #[test]
    fn braiding_laws() {
        let c = PCat::new(fixtures::hz2(2));
        let a = obj(&c, &[2], &["(1,0)"]);
        let b = obj(&c, &[1, 1], &["(1)", "(1)"]);
        let e = c.unit();
        assert_eq!(c.braiding(&a, &e), c.identity(&a));
        assert_eq!(c.braiding(&e, &a), c.identity(&a));
        let xi = c.compose(&c.braiding(&b, &a), &c.braiding(&a, &b)).unwrap();
        assert_eq!(xi, c.identity(&c.box_objects(&a, &b)));
        assert!(c.is_isomorphism(&c.braiding(&a, &b)));
    }

    #[test]
    fn ill_typed_components_are_rejected() {
        let c = PCat::new(fixtures::hbool(2));
        let a = obj(&c, &[1], &["(0)"]);
        let b = obj(&c, &[1], &["(1)"]);
        let phi = AMorphism::identity(&a.m);
        let cat = c.gamma().category(1).unwrap();
        // There is a morphism 0 → 1 in Bool but none 1 → 0.
        let up = cat.hom(a.x[0], b.x[0])[0];
        assert!(c.morphism(a.clone(), b.clone(), phi.clone(), vec![up]).is_ok());
        assert!(matches!(c.morphism(b, a, phi, vec![up]), Err(Error::IllTyped(_))));
    }

    #[test]
    fn small_bounds_are_permutative() {
        let c = BoundedPCat::new(fixtures::j(2), PBounds::uniform(SeqBound::new(1, 2))).unwrap();
        assert!(validate_permutative(&c).is_ok());
        let empty = BoundedPCat::new(fixtures::hz2(2), PBounds::uniform(SeqBound::new(0, 2))).unwrap();
        assert_eq!(empty.object_pool(), &[PObject::unit()]);
        assert_eq!(empty.morphism_pool().len(), 1);
    }

    #[test]
    fn bound_beyond_truncation_fails() {
        assert!(matches!(
            BoundedPCat::new(fixtures::hz2(1), PBounds::standard(2, 2)),
            Err(Error::TruncationExceeded { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let c = BoundedPCat::new(fixtures::hbool(2), PBounds::standard(2, 2)).unwrap();
        for a in c.object_pool() {
            assert_eq!(c.pcat().object_from_json(&c.pcat().object_json(a)).unwrap(), *a);
        }
        for f in c.small_morphism_pool() {
            assert_eq!(c.pcat().morphism_from_json(&c.pcat().morphism_json(f)).unwrap(), *f);
        }
    }
}
