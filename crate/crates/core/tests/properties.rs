use std::sync::OnceLock;

use proptest::prelude::*;

use pinv_core::fixtures;
use pinv_core::fskel::{lex_tuple, smash_map, unlex_tuple, PtdMap};
use pinv_core::groth::{BoundedPCat, PBounds, PMorphism};
use pinv_core::indexing::{
    enumerate_amorphisms, sigma_linearity, validate_amorphism, AMorphism, AObject, GridIndex, Ordering,
};
use pinv_core::permlin::Permutative;
use pinv_core::pinv::{p_on_morphisms, p_on_objects};
use pinv_core::gamma::GammaMultimorphism;

fn ordering() -> impl Strategy<Value = Ordering> {
    prop_oneof![Just(Ordering::RevLex), Just(Ordering::Lex)]
}

fn ptd_map(dom: usize, cod: usize) -> impl Strategy<Value = PtdMap> {
    prop::collection::vec(0..=cod, dom).prop_map(move |v| PtdMap::new(dom, cod, v).unwrap())
}

/// Three composable maps ⟨a⟩ → ⟨b⟩ → ⟨c⟩ → ⟨d⟩.
fn ptd_chain() -> impl Strategy<Value = (PtdMap, PtdMap, PtdMap)> {
    (0usize..4, 0usize..4, 0usize..4, 0usize..4)
        .prop_flat_map(|(a, b, c, d)| (ptd_map(a, b), ptd_map(b, c), ptd_map(c, d)))
}

fn a_object() -> impl Strategy<Value = AObject> {
    prop::collection::vec(1usize..3, 0..3).prop_map(|v| AObject::new(v).unwrap())
}

fn a_morphism_from(dom: AObject) -> impl Strategy<Value = (AObject, AMorphism)> {
    a_object()
        .prop_map(move |cod| (enumerate_amorphisms(&dom, &cod), cod))
        .prop_filter("a nonempty hom set", |(all, _)| !all.is_empty())
        .prop_flat_map(|(all, cod)| prop::sample::select(all).prop_map(move |f| (cod.clone(), f)))
}

fn a_chain() -> impl Strategy<Value = (AMorphism, AMorphism, AMorphism)> {
    a_object()
        .prop_flat_map(a_morphism_from)
        .prop_flat_map(|(b, f)| a_morphism_from(b).prop_map(move |(c, g)| (f.clone(), c, g)))
        .prop_flat_map(|(f, c, g)| a_morphism_from(c).prop_map(move |(_, h)| (f.clone(), g.clone(), h)))
}

struct Setup {
    c: BoundedPCat,
    mu: GammaMultimorphism,
    composable: Vec<(PMorphism, PMorphism)>,
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let x = fixtures::hbool(4);
        let c = BoundedPCat::new(x.clone(), PBounds::standard(2, 2)).unwrap();
        let mu = fixtures::multiplication(&x).unwrap();
        let pool = c.morphism_pool();
        let mut composable = Vec::new();
        for f in pool {
            for g in pool.iter().filter(|g| g.source() == f.target()) {
                composable.push((f.clone(), g.clone()));
            }
        }
        Setup { c, mu, composable }
    })
}

fn pair_index() -> impl Strategy<Value = prop::sample::Index> {
    any::<prop::sample::Index>()
}

proptest! {
    #[test]
    fn lex_round_trip(levels in prop::collection::vec(1usize..5, 1..4), seed in any::<u64>()) {
        let total: usize = levels.iter().product();
        let pos = (seed as usize) % total + 1;
        let c = unlex_tuple(&levels, pos);
        prop_assert!(c.iter().zip(&levels).all(|(&x, &n)| 1 <= x && x <= n));
        prop_assert_eq!(lex_tuple(&levels, &c), pos);
    }

    #[test]
    fn grid_is_a_bijection(rows in prop::collection::vec(0usize..4, 0..4), ord in ordering()) {
        let g = GridIndex::new(&rows, ord);
        prop_assert_eq!(g.len(), rows.iter().product::<usize>());
        for p in 0..g.len() {
            let js = g.cell(p);
            prop_assert!(js.iter().zip(&rows).all(|(j, r)| j < r));
            prop_assert_eq!(g.position(&js), p);
        }
    }

    #[test]
    fn sigma_linearity_is_a_permutation(
        rs in prop::collection::vec(0usize..4, 1..4),
        b_seed in any::<usize>(),
        rhat in 0usize..4,
        ord in ordering(),
    ) {
        let b = b_seed % rs.len();
        let s = sigma_linearity(&rs, b, rhat, ord);
        let mut rs_hat = rs.clone();
        rs_hat[b] = rhat;
        let n = rs.iter().product::<usize>() + rs_hat.iter().product::<usize>();
        let mut imgs = s.images().to_vec();
        imgs.sort_unstable();
        prop_assert_eq!(imgs, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn ptd_maps_compose_associatively((f, g, h) in ptd_chain()) {
        let l = PtdMap::compose(&h, &PtdMap::compose(&g, &f).unwrap()).unwrap();
        let r = PtdMap::compose(&PtdMap::compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn smash_is_functorial((f, g, _) in ptd_chain(), (f2, g2, _) in ptd_chain()) {
        let lhs = smash_map(&PtdMap::compose(&g, &f).unwrap(), &PtdMap::compose(&g2, &f2).unwrap());
        let rhs = PtdMap::compose(&smash_map(&g, &g2), &smash_map(&f, &f2)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(smash_map(&PtdMap::identity(f.dom()), &PtdMap::identity(f2.dom())).is_identity());
    }

    #[test]
    fn a_morphisms_compose_within_the_category((f, g, h) in a_chain()) {
        let gf = AMorphism::compose(&g, &f).unwrap();
        prop_assert!(validate_amorphism(&gf).is_ok());
        let l = AMorphism::compose(&h, &gf).unwrap();
        let r = AMorphism::compose(&AMorphism::compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(AMorphism::compose(&f, &AMorphism::identity(f.dom())).unwrap(), f);
    }

    #[test]
    fn box_is_associative(i in pair_index(), j in pair_index(), k in pair_index()) {
        let s = setup();
        let pool = s.c.morphism_pool();
        let (f, g, h) = (i.get(pool), j.get(pool), k.get(pool));
        let l = s.c.tensor_mor(f, &s.c.tensor_mor(g, h));
        let r = s.c.tensor_mor(&s.c.tensor_mor(f, g), h);
        prop_assert_eq!(&l, &r);
        s.c.check_morphism(&l).unwrap();
    }

    #[test]
    fn braiding_is_an_involution(i in pair_index(), j in pair_index()) {
        let s = setup();
        let obs = s.c.object_pool();
        let (a, b) = (i.get(obs), j.get(obs));
        let xi = s.c.compose(&s.c.braiding(b, a), &s.c.braiding(a, b)).unwrap();
        prop_assert!(s.c.is_identity(&xi));
    }

    #[test]
    fn image_preserves_composition(i in pair_index(), j in pair_index(), ord in ordering()) {
        let s = setup();
        let (f1, g1) = i.get(&s.composable);
        let (f2, g2) = j.get(&s.composable);
        let gf = [s.c.compose(g1, f1).unwrap(), s.c.compose(g2, f2).unwrap()];
        let lhs = p_on_morphisms(&s.mu, &gf, ord).unwrap();
        let pf = p_on_morphisms(&s.mu, &[f1.clone(), f2.clone()], ord).unwrap();
        let pg = p_on_morphisms(&s.mu, &[g1.clone(), g2.clone()], ord).unwrap();
        prop_assert_eq!(&lhs, &s.c.compose(&pg, &pf).unwrap());
        s.c.check_morphism(&lhs).unwrap();
    }

    #[test]
    fn unit_input_gives_unit(i in pair_index(), left in any::<bool>(), ord in ordering()) {
        let s = setup();
        let a = i.get(s.c.object_pool()).clone();
        let e = s.c.unit();
        let ins = if left { [e, a] } else { [a, e] };
        prop_assert!(p_on_objects(&s.mu, &ins, ord).unwrap().is_unit());
    }
}

#[test]
fn setup_pools_are_nonempty() {
    let s = setup();
    assert!(!s.composable.is_empty());
    assert_eq!(s.mu.arity(), 2);
}
