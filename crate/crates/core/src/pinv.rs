//! 𝒫 on multimorphisms: the image functors, their linearity constraints,
//! the image of modifications, and the comparison suites for composition,
//! the symmetric group action and the lexicographic variant.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::cat::{Mor, Ob};
use crate::error::{Error, Result};
use crate::gamma::{GammaCategory, GammaModification, GammaMultimorphism};
use crate::groth::{BoundedPCat, PMorphism, PObject};
use crate::indexing::{sigma_linearity, AMorphism, AObject, BlockPermutation, Element, GridIndex, Ordering, Permutation};
use crate::permlin::{
    compose_multilinear, multilinear_equal, validate_mltrans, MultilinearFunctor, MultilinearTransformation, Permutative,
};
use crate::report::Report;

/// Calls `f` with every coordinate tuple `a` (0-based, `a_i < levels[i]`) in
/// lexicographic order, which is the order of L-positions.
fn for_each_coords(levels: &[usize], mut f: impl FnMut(&[usize])) {
    if levels.contains(&0) {
        return;
    }
    let mut a = vec![0; levels.len()];
    loop {
        f(&a);
        let mut i = levels.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < levels[i] {
                break;
            }
            a[i] = 0;
        }
    }
}

/// 0-based L-position of a 0-based coordinate tuple.
fn lex_index(levels: &[usize], a: &[usize]) -> usize {
    levels.iter().zip(a).fold(0, |acc, (&l, &c)| acc * l + c)
}

fn check_arity(f: &GammaMultimorphism, n: usize) -> Result<()> {
    if f.arity() != n {
        return Err(Error::DomainMismatch(format!("{} takes {} arguments, got {n}", f.name(), f.arity())));
    }
    Ok(())
}

/// `((1), F_1(1))` for a 0-ary `F`.
pub fn p_zero_ary(f: &GammaMultimorphism) -> Result<PObject> {
    let v = f
        .nullary_value()
        .ok_or_else(|| Error::DomainMismatch(format!("{} is not 0-ary", f.name())))?;
    Ok(PObject {
        m: AObject::new(vec![1])?,
        x: vec![v],
    })
}

/// `(𝒫F)(⟨(m^i, x^i)⟩) = (m^{1..k}, F(x^{1..k}))` with cells listed in the
/// given ordering.
pub fn p_on_objects(f: &GammaMultimorphism, inputs: &[PObject], ordering: Ordering) -> Result<PObject> {
    check_arity(f, inputs.len())?;
    let rs: Vec<usize> = inputs.iter().map(|a| a.len()).collect();
    if rs.contains(&0) {
        return Ok(PObject::unit());
    }
    let grid = GridIndex::new(&rs, ordering);
    let k = inputs.len();
    let mut m = Vec::with_capacity(grid.len());
    let mut x = Vec::with_capacity(grid.len());
    let mut levels = vec![0; k];
    let mut xs = vec![Ob(0); k];
    for pos in 0..grid.len() {
        let js = grid.cell(pos);
        for i in 0..k {
            levels[i] = inputs[i].m.entries()[js[i]];
            xs[i] = inputs[i].x[js[i]];
        }
        m.push(levels.iter().product());
        x.push(f.object(&levels, &xs)?);
    }
    Ok(PObject { m: AObject::new(m)?, x })
}

/// `(𝒫F)(⟨(φ^i, f^i)⟩) = (φ, f)`: `φ` sends `(a_1, …, a_k)` to
/// `(φ^1(a_1), …, φ^k(a_k))` and the cell of `f` at `(ℓ_1, …, ℓ_k)` is
/// `F(f^1_{ℓ_1}, …, f^k_{ℓ_k})`.
pub fn p_on_morphisms(f: &GammaMultimorphism, inputs: &[PMorphism], ordering: Ordering) -> Result<PMorphism> {
    check_arity(f, inputs.len())?;
    let doms: Vec<PObject> = inputs.iter().map(|g| g.source().clone()).collect();
    let cods: Vec<PObject> = inputs.iter().map(|g| g.target().clone()).collect();
    let source = p_on_objects(f, &doms, ordering)?;
    let target = p_on_objects(f, &cods, ordering)?;
    let k = inputs.len();
    let rs: Vec<usize> = doms.iter().map(|a| a.len()).collect();
    let ss: Vec<usize> = cods.iter().map(|a| a.len()).collect();
    let src_grid = GridIndex::new(&rs, ordering);
    let tgt_grid = GridIndex::new(&ss, ordering);
    let mut map = Vec::with_capacity(source.m.total());
    if !source.is_unit() {
        let mut levels = vec![0; k];
        let mut out_cell = vec![0; k];
        let mut out_coords = vec![0; k];
        let mut out_levels = vec![0; k];
        for pos in 0..src_grid.len() {
            let js = src_grid.cell(pos);
            for i in 0..k {
                levels[i] = doms[i].m.entries()[js[i]];
            }
            for_each_coords(&levels, |a| {
                for i in 0..k {
                    let e = inputs[i].phi().apply(Element { block: js[i], index: a[i] });
                    out_cell[i] = e.block;
                    out_coords[i] = e.index;
                    out_levels[i] = cods[i].m.entries()[e.block];
                }
                map.push(Element {
                    block: tgt_grid.position(&out_cell),
                    index: lex_index(&out_levels, &out_coords),
                });
            });
        }
    }
    let phi = AMorphism::new(source.m.clone(), target.m.clone(), map)?;
    let mut comps = Vec::with_capacity(target.len());
    if !target.is_unit() {
        let mut levels = vec![0; k];
        let mut fs = vec![Mor(0); k];
        for pos in 0..tgt_grid.len() {
            let ls = tgt_grid.cell(pos);
            for i in 0..k {
                levels[i] = cods[i].m.entries()[ls[i]];
                fs[i] = inputs[i].components()[ls[i]];
            }
            comps.push(f.morphism(&levels, &fs)?);
        }
    }
    Ok(PMorphism::from_parts(source, target, phi, comps))
}

/// The linearity constraint `(𝒫F)²_b = (σ, 1)` from
/// `𝒫F(⟨X⟩) □ 𝒫F(⟨X⟩ ∘_b X̂)` to `𝒫F(⟨X⟩ ∘_b (X_b □ X̂))`. `b` is 0-based.
pub fn p_linearity(
    f: &GammaMultimorphism,
    z: &GammaCategory,
    inputs: &[PObject],
    b: usize,
    hat: &PObject,
    ordering: Ordering,
) -> Result<PMorphism> {
    check_arity(f, inputs.len())?;
    if b >= inputs.len() {
        return Err(Error::OutOfBound(format!("no variable {}", b + 1)));
    }
    let mut with_hat = inputs.to_vec();
    with_hat[b] = hat.clone();
    let mut with_sum = inputs.to_vec();
    with_sum[b] = inputs[b].concat(hat);
    let first = p_on_objects(f, inputs, ordering)?;
    let second = p_on_objects(f, &with_hat, ordering)?;
    let target = p_on_objects(f, &with_sum, ordering)?;
    let source = first.concat(&second);
    let rs: Vec<usize> = inputs.iter().map(|a| a.len()).collect();
    let phi = if rs.iter().enumerate().any(|(i, &r)| r == 0 && i != b) {
        AMorphism::identity(&source.m)
    } else {
        let sigma = sigma_linearity(&rs, b, hat.len(), ordering);
        BlockPermutation::new(source.m.clone(), sigma)?.to_morphism()
    };
    if *phi.cod() != target.m {
        return Err(Error::IllTyped("linearity permutation does not reach the target sequence".into()));
    }
    let comps = target
        .m
        .entries()
        .iter()
        .zip(&target.x)
        .map(|(&n, &o)| Ok(z.category(n)?.identity(o)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PMorphism::from_parts(source, target, phi, comps))
}

/// Bounded 𝒫X for each Γ-category in play.
#[derive(Clone, Default)]
pub struct PCats {
    cats: Vec<Arc<BoundedPCat>>,
}

impl PCats {
    pub fn new(cats: Vec<Arc<BoundedPCat>>) -> Self {
        PCats { cats }
    }

    pub fn single(c: BoundedPCat) -> Self {
        PCats { cats: vec![Arc::new(c)] }
    }

    pub fn push(&mut self, c: BoundedPCat) {
        self.cats.push(Arc::new(c));
    }

    /// The registered 𝒫X, or one with empty pools.
    pub fn get(&self, x: &Arc<GammaCategory>) -> Arc<BoundedPCat> {
        self.cats
            .iter()
            .find(|c| c.gamma().same_as(x))
            .cloned()
            .unwrap_or_else(|| Arc::new(BoundedPCat::unbounded(x.clone())))
    }
}

/// `(𝒫F, {(𝒫F)²_i})` as a multilinear functor between bounded categories.
pub fn assemble_multilinear(
    f: &Arc<GammaMultimorphism>,
    cats: &PCats,
    ordering: Ordering,
) -> Result<MultilinearFunctor<BoundedPCat>> {
    let target = cats.get(f.target());
    let name = match ordering {
        Ordering::RevLex => format!("P{}", f.name()),
        Ordering::Lex => format!("P'{}", f.name()),
    };
    if f.arity() == 0 {
        return Ok(MultilinearFunctor::constant(name, target, p_zero_ary(f)?));
    }
    let sources = f.sources().iter().map(|x| cats.get(x)).collect();
    let (f1, f2, f3) = (f.clone(), f.clone(), f.clone());
    let z = f.target().clone();
    Ok(MultilinearFunctor::new(
        name,
        sources,
        target,
        move |xs| p_on_objects(&f1, xs, ordering),
        move |ms| p_on_morphisms(&f2, ms, ordering),
        move |i, xs, x| p_linearity(&f3, &z, xs, i, x, ordering),
    ))
}

/// `𝒫θ`: at `⟨(m^i, x^i)⟩` the component is `(1, θ-components)`.
pub fn p_on_modifications(
    theta: &Arc<GammaModification>,
    cats: &PCats,
    ordering: Ordering,
) -> Result<MultilinearTransformation<BoundedPCat>> {
    let source = assemble_multilinear(theta.source(), cats, ordering)?;
    let target = assemble_multilinear(theta.target(), cats, ordering)?;
    let th = theta.clone();
    let name = format!("P{}", theta.name());
    MultilinearTransformation::new(name, source, target, move |xs: &[PObject]| {
        let f = th.source();
        let g = th.target();
        let (a, b) = if f.arity() == 0 {
            (p_zero_ary(f)?, p_zero_ary(g)?)
        } else {
            (p_on_objects(f, xs, ordering)?, p_on_objects(g, xs, ordering)?)
        };
        let mut comps = Vec::with_capacity(a.len());
        if f.arity() == 0 {
            comps.push(th.component(&[], &[])?);
        } else if !a.is_unit() {
            let rs: Vec<usize> = xs.iter().map(|o| o.len()).collect();
            let grid = GridIndex::new(&rs, ordering);
            for pos in 0..grid.len() {
                let js = grid.cell(pos);
                let levels: Vec<usize> = js.iter().enumerate().map(|(i, &j)| xs[i].m.entries()[j]).collect();
                let cell: Vec<Ob> = js.iter().enumerate().map(|(i, &j)| xs[i].x[j]).collect();
                comps.push(th.component(&levels, &cell)?);
            }
        }
        let phi = AMorphism::identity(&a.m);
        Ok(PMorphism::from_parts(a, b, phi, comps))
    })
}

/// Compares `𝒫(F ∘ (G_1, …, G_n))` with `𝒫F ∘ (𝒫G_1, …, 𝒫G_n)` on objects,
/// morphisms and linearity constraints.
pub fn check_composition(
    f: &Arc<GammaMultimorphism>,
    gs: &[Arc<GammaMultimorphism>],
    cats: &PCats,
    ordering: Ordering,
) -> Result<Report> {
    let composite = Arc::new(GammaMultimorphism::compose_multi(f, gs)?);
    let lhs = assemble_multilinear(&composite, cats, ordering)?;
    let pf = assemble_multilinear(f, cats, ordering)?;
    let pgs = gs
        .iter()
        .map(|g| assemble_multilinear(g, cats, ordering))
        .collect::<Result<Vec<_>>>()?;
    let rhs = compose_multilinear(&pf, &pgs)?;
    let mut r = multilinear_equal(&lhs, &rhs);
    r.suite = format!("multifunctor-composition:{}", composite.name());
    Ok(r)
}

/// The outcome of comparing `(𝒫F)^σ` with `𝒫(F^σ)` at one input tuple.
#[derive(Clone, Debug)]
pub struct SymmetryComparison {
    /// `(𝒫F)^σ` at the inputs.
    pub lhs: PObject,
    /// `𝒫(F^σ)` at the inputs.
    pub rhs: PObject,
    /// `(π, 1): rhs → lhs`.
    pub iso: PMorphism,
    pub equal: bool,
    pub iso_valid: bool,
}

impl SymmetryComparison {
    pub fn to_json(&self, c: &BoundedPCat) -> Value {
        json!({
            "lhs": c.object_json(&self.lhs),
            "rhs": c.object_json(&self.rhs),
            "iso": c.morphism_json(&self.iso),
            "equal": self.equal,
            "iso_valid": self.iso_valid,
        })
    }
}

/// Inputs reordered for `F^σ`: slot `σ(i)` of `F` receives input `i`.
fn reorder<T: Clone>(sigma: &Permutation, ys: &[T]) -> Vec<T> {
    let mut xs = ys.to_vec();
    for (i, y) in ys.iter().enumerate() {
        xs[sigma.apply(i)] = y.clone();
    }
    xs
}

/// The block map `π` from the cells of `𝒫(F^σ)` to those of `(𝒫F)^σ`. It
/// moves each cell to its place in the reordered grid and reorders the
/// L-coordinates inside it.
pub fn symmetry_pi(inputs: &[PObject], sigma: &Permutation, ordering: Ordering) -> Result<AMorphism> {
    let k = inputs.len();
    let rs: Vec<usize> = inputs.iter().map(|a| a.len()).collect();
    let rs2 = reorder(sigma, &rs);
    let (g1, g2) = (GridIndex::new(&rs, ordering), GridIndex::new(&rs2, ordering));
    let cell_entries = |grid: &GridIndex, objs: &[PObject]| -> Vec<usize> {
        if objs.iter().any(|o| o.is_unit()) {
            return Vec::new();
        }
        (0..grid.len())
            .map(|p| grid.cell(p).iter().enumerate().map(|(i, &j)| objs[i].m.entries()[j]).product())
            .collect()
    };
    let permuted = reorder(sigma, inputs);
    let dom = AObject::new(cell_entries(&g1, inputs))?;
    let cod = AObject::new(cell_entries(&g2, &permuted))?;
    let mut map = Vec::with_capacity(dom.total());
    if !dom.is_empty() {
        for pos in 0..g1.len() {
            let js = g1.cell(pos);
            let levels: Vec<usize> = (0..k).map(|i| inputs[i].m.entries()[js[i]]).collect();
            let levels2 = reorder(sigma, &levels);
            let block = g2.position(&reorder(sigma, &js));
            for_each_coords(&levels, |a| {
                map.push(Element {
                    block,
                    index: lex_index(&levels2, &reorder(sigma, a)),
                });
            });
        }
    }
    AMorphism::new(dom, cod, map)
}

/// Evaluates both sides of the symmetric-group comparison and the
/// isomorphism `(π, 1)` between them.
pub fn check_symmetry_failure(
    f: &Arc<GammaMultimorphism>,
    sigma: &Permutation,
    inputs: &[PObject],
    ordering: Ordering,
) -> Result<SymmetryComparison> {
    check_arity(f, inputs.len())?;
    let fs = GammaMultimorphism::sigma_act(f, sigma)?;
    let lhs = p_on_objects(f, &reorder(sigma, inputs), ordering)?;
    let rhs = p_on_objects(&fs, inputs, ordering)?;
    let pi = symmetry_pi(inputs, sigma, ordering)?;
    let pcat = crate::groth::PCat::new(f.target().clone());
    let ids = pcat.identity(&lhs).components().to_vec();
    let (iso, iso_valid) = match pcat.morphism(rhs.clone(), lhs.clone(), pi.clone(), ids.clone()) {
        Ok(m) => {
            let ok = pcat.is_isomorphism(&m);
            (m, ok)
        }
        Err(_) => (PMorphism::from_parts(rhs.clone(), lhs.clone(), pi, ids), false),
    };
    Ok(SymmetryComparison {
        equal: lhs == rhs,
        lhs,
        rhs,
        iso,
        iso_valid,
    })
}

/// The block permutation taking the reverse-lexicographic cell order of the
/// grid over `rs` to the lexicographic one.
pub fn transpose_permutation(rs: &[usize]) -> Permutation {
    let rev = GridIndex::new(rs, Ordering::RevLex);
    let lex = GridIndex::new(rs, Ordering::Lex);
    Permutation::new((0..rev.len()).map(|p| lex.position(&rev.cell(p))).collect()).expect("a bijection of cells")
}

/// The canonical isomorphism `α = (α^A, 1): 𝒫F ⇒ 𝒫′F`.
pub fn lex_comparison(f: &Arc<GammaMultimorphism>, cats: &PCats) -> Result<MultilinearTransformation<BoundedPCat>> {
    let source = assemble_multilinear(f, cats, Ordering::RevLex)?;
    let target = assemble_multilinear(f, cats, Ordering::Lex)?;
    let f1 = f.clone();
    let z = f.target().clone();
    MultilinearTransformation::new(format!("alpha_{}", f.name()), source, target, move |xs: &[PObject]| {
        let a = if f1.arity() == 0 { p_zero_ary(&f1)? } else { p_on_objects(&f1, xs, Ordering::RevLex)? };
        let b = if f1.arity() == 0 { p_zero_ary(&f1)? } else { p_on_objects(&f1, xs, Ordering::Lex)? };
        let phi = if a.is_unit() {
            AMorphism::identity(&a.m)
        } else {
            let rs: Vec<usize> = xs.iter().map(|o| o.len()).collect();
            BlockPermutation::new(a.m.clone(), transpose_permutation(&rs))?.to_morphism()
        };
        let comps = b
            .m
            .entries()
            .iter()
            .zip(&b.x)
            .map(|(&n, &o)| Ok(z.category(n)?.identity(o)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PMorphism::from_parts(a, b, phi, comps))
    })
}

/// Checks that `𝒫′F` differs from `𝒫F` exactly by `α`: every component is
/// a valid isomorphism with identity second part, and `α` is a
/// multilinear transformation.
pub fn check_lex_variant(f: &Arc<GammaMultimorphism>, cats: &PCats) -> Result<Report> {
    let alpha = lex_comparison(f, cats)?;
    let mut r = validate_mltrans(&alpha);
    r.suite = format!("lex-variant:{}", f.name());
    let target = cats.get(f.target());
    let obs: Vec<&[PObject]> = alpha.source().sources().iter().map(|c| c.object_pool()).collect();
    crate::permlin::for_each_tuple(&obs, |xs| {
        let ok = (|| {
            let c = alpha.component(xs)?;
            target.check_morphism(&c)?;
            let ids_only = c
                .components()
                .iter()
                .zip(c.target().m.entries())
                .all(|(&m, &n)| target.gamma().category(n).map(|cat| cat.is_identity(m)).unwrap_or(false));
            Ok(ids_only && c.phi().is_bijective() && target.is_isomorphism(&c))
        })();
        r.outcome("alpha.shape", ok, || json!(xs.iter().map(|x| target.object_json(x)).collect::<Vec<_>>()));
    });
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groth::{PBounds, PCat};

    fn obj(x: &GammaCategory, m: &[usize], xs: &[&str]) -> PObject {
        let x_obs = m
            .iter()
            .zip(xs)
            .map(|(&n, s)| x.category(n).unwrap().find_object(s).unwrap())
            .collect();
        PObject { m: AObject::new(m.to_vec()).unwrap(), x: x_obs }
    }

    fn any_obj(x: &GammaCategory, m: &[usize]) -> PObject {
        let xs = m.iter().map(|&n| x.category(n).unwrap().objects().last().unwrap()).collect();
        PObject { m: AObject::new(m.to_vec()).unwrap(), x: xs }
    }

    #[test]
    fn cell_order_of_products() {
        let j = fixtures::j(15);
        let mu = fixtures::j_multiplication(&j).unwrap();
        let ins = [any_obj(&j, &[2, 3]), any_obj(&j, &[4, 5])];
        let rev = p_on_objects(&mu, &ins, Ordering::RevLex).unwrap();
        assert_eq!(rev.m.entries(), &[8, 12, 10, 15]);
        let lex = p_on_objects(&mu, &ins, Ordering::Lex).unwrap();
        assert_eq!(lex.m.entries(), &[8, 10, 12, 15]);
    }

    #[test]
    fn product_example() {
        let x = fixtures::hbool(4);
        let mu = fixtures::multiplication(&x).unwrap();
        let a = obj(&x, &[2], &["(1,0)"]);
        let b = obj(&x, &[1, 1], &["(1)", "(1)"]);
        let out = p_on_objects(&mu, &[a.clone(), b], Ordering::RevLex).unwrap();
        assert_eq!(out, obj(&x, &[2, 2], &["(1,0)", "(1,0)"]));
        assert!(p_on_objects(&mu, &[a, PObject::unit()], Ordering::RevLex).unwrap().is_unit());
    }

    #[test]
    fn nullary_image() {
        let x = fixtures::hbool(2);
        let eta = fixtures::unit_element(&x).unwrap();
        assert_eq!(p_zero_ary(&eta).unwrap(), obj(&x, &[1], &["(1)"]));
        let mu = fixtures::multiplication(&x).unwrap();
        assert!(p_zero_ary(&mu).is_err());
    }

    #[test]
    fn linearity_block_images() {
        let x = fixtures::hz2(2);
        let mu = fixtures::multiplication(&x).unwrap();
        let ins = [any_obj(&x, &[1]), any_obj(&x, &[1, 1])];
        let hat = any_obj(&x, &[1]);
        let c = p_linearity(&mu, &x, &ins, 0, &hat, Ordering::RevLex).unwrap();
        let blocks: Vec<usize> = (0..4).map(|i| c.phi().apply(Element { block: i, index: 0 }).block).collect();
        assert_eq!(blocks, vec![0, 2, 1, 3]);
        let c = p_linearity(&mu, &x, &ins, 1, &hat, Ordering::RevLex).unwrap();
        assert!(c.phi().is_identity());
        let p = PCat::new(x.clone());
        p.check_morphism(&c).unwrap();
        assert_eq!(c.components(), p.identity(c.target()).components());
    }

    #[test]
    fn linearity_with_unit_is_identity() {
        let x = fixtures::hz2(2);
        let mu = fixtures::multiplication(&x).unwrap();
        let ins = [PObject::unit(), any_obj(&x, &[2])];
        let c = p_linearity(&mu, &x, &ins, 1, &any_obj(&x, &[1]), Ordering::RevLex).unwrap();
        assert!(c.source().is_unit() && c.target().is_unit());
        let c = p_linearity(&mu, &x, &[any_obj(&x, &[2]), PObject::unit()], 0, &any_obj(&x, &[1]), Ordering::Lex).unwrap();
        assert!(c.phi().is_identity());
    }

    #[test]
    fn identities_go_to_identities() {
        let x = fixtures::hbool(4);
        let mu = fixtures::multiplication(&x).unwrap();
        let p = PCat::new(x.clone());
        let a = obj(&x, &[2, 1], &["(1,0)", "(0)"]);
        let b = obj(&x, &[1, 2], &["(1)", "(1,1)"]);
        let out = p_on_morphisms(&mu, &[p.identity(&a), p.identity(&b)], Ordering::RevLex).unwrap();
        let ab = p_on_objects(&mu, &[a, b], Ordering::RevLex).unwrap();
        assert_eq!(out, p.identity(&ab));
    }

    #[test]
    fn symmetry_with_identity_is_equality() {
        let x = fixtures::hbool(4);
        let mu = Arc::new(fixtures::multiplication(&x).unwrap());
        let ins = [obj(&x, &[2, 1], &["(1,0)", "(1)"]), obj(&x, &[2], &["(1,1)"])];
        let s = check_symmetry_failure(&mu, &Permutation::identity(2), &ins, Ordering::RevLex).unwrap();
        assert!(s.equal && s.iso_valid);
        assert!(s.iso.phi().is_identity());
    }

    #[test]
    fn symmetry_with_single_blocks_still_reorders_coordinates() {
        let x = fixtures::hbool(4);
        let mu = Arc::new(fixtures::multiplication(&x).unwrap());
        let swap = Permutation::new(vec![1, 0]).unwrap();
        let ins = [obj(&x, &[2], &["(1,0)"]), obj(&x, &[2], &["(1,1)"])];
        let s = check_symmetry_failure(&mu, &swap, &ins, Ordering::RevLex).unwrap();
        assert!(s.iso_valid);
        assert!(!s.iso.phi().is_identity());
        let ins = [obj(&x, &[1], &["(1)"]), obj(&x, &[1], &["(0)"])];
        let s = check_symmetry_failure(&mu, &swap, &ins, Ordering::RevLex).unwrap();
        assert!(s.equal && s.iso.phi().is_identity());
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose_permutation(&[2, 2]).images(), &[0, 2, 1, 3]);
        assert!(transpose_permutation(&[3]).is_identity());
        assert_eq!(transpose_permutation(&[2, 3]).images(), &[0, 3, 1, 4, 2, 5]);
    }

    #[test]
    fn identity_modification_goes_to_identity() {
        let x = fixtures::hz2(4);
        let mu = Arc::new(fixtures::multiplication(&x).unwrap());
        let cats = PCats::single(BoundedPCat::new(x.clone(), PBounds::standard(2, 2)).unwrap());
        let one = Arc::new(GammaModification::identity(mu));
        let p1 = p_on_modifications(&one, &cats, Ordering::RevLex).unwrap();
        let c = cats.get(&x);
        for a in c.object_pool() {
            for b in c.object_pool() {
                let comp = p1.component(&[a.clone(), b.clone()]).unwrap();
                assert_eq!(comp, c.identity(comp.source()));
            }
        }
    }

    #[test]
    fn composing_with_identities() {
        let x = fixtures::hz2(4);
        let mu = Arc::new(fixtures::multiplication(&x).unwrap());
        let id = Arc::new(GammaMultimorphism::identity(x.clone()));
        let cats = PCats::single(BoundedPCat::new(x, PBounds::standard(2, 2)).unwrap());
        let r = check_composition(&mu, &[id.clone(), id], &cats, Ordering::RevLex).unwrap();
        assert!(r.is_ok(), "{}", r.summary());
        assert!(r.checked > 0);
    }
}
