use std::sync::Arc;

use pinv_core::fixtures;
use pinv_core::gamma::{components_equal, GammaMultimorphism};
use pinv_core::groth::{BoundedPCat, PBounds};
use pinv_core::indexing::{Ordering, Permutation};
use pinv_core::permlin::{multilinear_equal, sigma_act_multilinear, validate_multilinear, Permutative};
use pinv_core::pinv::{assemble_multilinear, PCats};

fn cats() -> PCats {
    PCats::single(BoundedPCat::new(fixtures::hbool(2), PBounds::standard(2, 1)).unwrap())
}

#[test]
fn braided_constraint_is_caught() {
    let x = fixtures::hbool(2);
    let mu = Arc::new(fixtures::multiplication(&x).unwrap());
    let cats = cats();
    let f = assemble_multilinear(&mu, &cats, Ordering::RevLex).unwrap();
    assert!(validate_multilinear(&f).is_ok());
    let (g, c) = (f.clone(), cats.get(&x));
    // Swap the two summands whenever they coincide.
    let bad = f.with_constraint(move |i, xs, extra| {
        let m = g.constraint(i, xs, extra)?;
        let a = g.object(xs)?;
        let mut ys = xs.to_vec();
        ys[i] = extra.clone();
        if a == g.object(&ys)? && !a.is_unit() {
            c.compose(&m, &c.braiding(&a, &a))
        } else {
            Ok(m)
        }
    });
    let r = validate_multilinear(&bad);
    assert!(!r.is_ok());
    let assoc = r.axiom("constraint_associativity").unwrap();
    assert!(!assoc.is_ok());
    assert!(!assoc.violations[0].witness.is_null());
}

#[test]
fn permutations_act_on_the_right() {
    let x = fixtures::hbool(8);
    let mu = Arc::new(fixtures::multiplication(&x).unwrap());
    let id = Arc::new(GammaMultimorphism::identity(x.clone()));
    let f = Arc::new(GammaMultimorphism::compose_multi(&mu, &[mu.clone(), id]).unwrap());
    for s in Permutation::all(3) {
        for t in Permutation::all(3) {
            let st = Arc::new(GammaMultimorphism::sigma_act(&f, &s).unwrap());
            let twice = GammaMultimorphism::sigma_act(&st, &t).unwrap();
            let once = GammaMultimorphism::sigma_act(&f, &s.after(&t)).unwrap();
            let r = components_equal(&twice, &once, 4);
            assert!(r.is_ok(), "{:?} {:?}: {}", s.images(), t.images(), r.summary());
        }
    }
}

#[test]
fn multilinear_action_composes() {
    let x = fixtures::hz2(4);
    let mu = Arc::new(fixtures::multiplication(&x).unwrap());
    let cats = PCats::single(BoundedPCat::new(x, PBounds::standard(2, 2)).unwrap());
    let f = assemble_multilinear(&mu, &cats, Ordering::RevLex).unwrap();
    let swap = Permutation::new(vec![1, 0]).unwrap();
    let twice = sigma_act_multilinear(&sigma_act_multilinear(&f, &swap).unwrap(), &swap).unwrap();
    let r = multilinear_equal(&twice, &f);
    assert!(r.is_ok(), "{}", r.summary());
}
