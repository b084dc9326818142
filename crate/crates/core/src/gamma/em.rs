//! Eilenberg–MacLane Γ-categories of strictly commutative monoids in Cat,
//! and multimorphisms between them induced by multi-additive functors.

use std::sync::Arc;

use crate::cat::{cartesian, FiniteCategory, Mor, Ob, PointedCategory, Radix};
use crate::error::{Error, Result};
use crate::fskel::PtdMap;

use super::{ActionRule, ComponentRule, GammaCategory};

/// Largest level an Eilenberg–MacLane action is evaluated at.
pub const MAX_EM_LEVEL: usize = 32;

/// A finite category with a strictly associative, commutative and unital
/// addition functor.
#[derive(Clone, Debug)]
pub struct CommutativeMonoidCategory {
    name: String,
    cat: Arc<FiniteCategory>,
    zero: Ob,
    add_ob: Vec<Ob>,
    add_mor: Vec<Mor>,
}

impl CommutativeMonoidCategory {
    /// Tabulates the addition and checks every law.
    pub fn new(
        name: impl Into<String>,
        cat: Arc<FiniteCategory>,
        zero: Ob,
        add_ob: impl Fn(Ob, Ob) -> Ob,
        add_mor: impl Fn(Mor, Mor) -> Option<Mor>,
    ) -> Result<Self> {
        let name = name.into();
        if !cat.contains_object(zero) {
            return Err(Error::InvalidMonoid(format!("{name}: zero is not an object")));
        }
        let no = cat.object_count();
        let nm = cat.morphism_count();
        let mut ob_table = Vec::with_capacity(no * no);
        for a in cat.objects() {
            for b in cat.objects() {
                let s = add_ob(a, b);
                if !cat.contains_object(s) {
                    return Err(Error::InvalidMonoid(format!("{name}: sum leaves the object set")));
                }
                ob_table.push(s);
            }
        }
        let mut mor_table = Vec::with_capacity(nm * nm);
        for f in cat.morphisms() {
            for g in cat.morphisms() {
                let s = add_mor(f, g).filter(|&s| cat.contains_morphism(s)).ok_or_else(|| {
                    Error::InvalidMonoid(format!(
                        "{name}: no sum for {} + {}",
                        cat.morphism_name(f),
                        cat.morphism_name(g)
                    ))
                })?;
                mor_table.push(s);
            }
        }
        let m = CommutativeMonoidCategory {
            name,
            cat,
            zero,
            add_ob: ob_table,
            add_mor: mor_table,
        };
        m.check_laws()?;
        Ok(m)
    }

    fn check_laws(&self) -> Result<()> {
        let c = &self.cat;
        let bad = |what: &str| Err(Error::InvalidMonoid(format!("{}: {what}", self.name)));
        for f in c.morphisms() {
            for g in c.morphisms() {
                let s = self.add_morphisms(f, g);
                if c.src(s) != self.add_objects(c.src(f), c.src(g)) || c.tgt(s) != self.add_objects(c.tgt(f), c.tgt(g)) {
                    return bad("addition of morphisms is ill-typed");
                }
                if self.add_morphisms(g, f) != s {
                    return bad("addition of morphisms is not commutative");
                }
                for h in c.morphisms() {
                    if self.add_morphisms(self.add_morphisms(f, g), h) != self.add_morphisms(f, self.add_morphisms(g, h)) {
                        return bad("addition of morphisms is not associative");
                    }
                }
            }
            if self.add_morphisms(c.identity(self.zero), f) != f {
                return bad("zero is not a unit on morphisms");
            }
        }
        for a in c.objects() {
            for b in c.objects() {
                if self.add_morphisms(c.identity(a), c.identity(b)) != c.identity(self.add_objects(a, b)) {
                    return bad("addition does not preserve identities");
                }
            }
        }
        let pairs = c.composable_pairs();
        for &(g, f) in &pairs {
            for &(g2, f2) in &pairs {
                let lhs = c.compose(g, f).zip(c.compose(g2, f2)).map(|(a, b)| self.add_morphisms(a, b));
                let rhs = c.compose(self.add_morphisms(g, g2), self.add_morphisms(f, f2));
                if lhs != rhs {
                    return bad("addition does not preserve composition");
                }
            }
        }
        Ok(())
    }

    /// A discrete category on `elements` with the given addition.
    pub fn discrete(name: &str, elements: &[&str], add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::preorder(name, elements, |a, b| a == b, add)
    }

    /// A preorder on `elements`; the addition must be monotone.
    pub fn preorder(
        name: &str,
        elements: &[&str],
        leq: impl Fn(usize, usize) -> bool,
        add: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let cat = Arc::new(FiniteCategory::preorder(elements, &leq));
        let zero = Ob(add(0, 0) as u32);
        let c = cat.clone();
        let add_ob = |a: Ob, b: Ob| Ob(add(a.index(), b.index()) as u32);
        let add_mor = |f: Mor, g: Mor| {
            let s = add_ob(c.src(f), c.src(g));
            let t = add_ob(c.tgt(f), c.tgt(g));
            c.hom(s, t).first().copied()
        };
        // Element 0 is taken as the zero; check that the caller agrees.
        if zero != Ob(0) {
            return Err(Error::InvalidMonoid(format!("{name}: element 0 must be the zero")));
        }
        Self::new(name, cat, zero, add_ob, add_mor)
    }

    /// Every pair of objects joined by exactly one morphism.
    pub fn codiscrete(name: &str, elements: &[&str], add: impl Fn(usize, usize) -> usize) -> Result<Self> {
        Self::preorder(name, elements, |_, _| true, add)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.cat
    }

    pub fn zero(&self) -> Ob {
        self.zero
    }

    pub fn add_objects(&self, a: Ob, b: Ob) -> Ob {
        self.add_ob[a.index() * self.cat.object_count() + b.index()]
    }

    pub fn add_morphisms(&self, f: Mor, g: Mor) -> Mor {
        self.add_mor[f.index() * self.cat.morphism_count() + g.index()]
    }
}

struct EmAction {
    monoid: Arc<CommutativeMonoidCategory>,
}

impl EmAction {
    fn act(&self, f: &PtdMap, code: usize, radix: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> usize {
        let (a, b) = (f.dom(), f.cod());
        let mut digits = [0usize; MAX_EM_LEVEL];
        let mut c = code;
        for s in (0..a).rev() {
            digits[s] = c % radix;
            c /= radix;
        }
        let mut out = [zero; MAX_EM_LEVEL];
        for s in 0..a {
            let t = f.values()[s];
            if t > 0 {
                out[t - 1] = add(out[t - 1], digits[s]);
            }
        }
        out[..b].iter().fold(0, |acc, &d| acc * radix + d)
    }
}

impl ActionRule for EmAction {
    fn act_object(&self, f: &PtdMap, x: Ob) -> Ob {
        let m = &self.monoid;
        let q = m.cat.object_count();
        Ob(self.act(f, x.index(), q, m.zero.index(), |u, v| m.add_objects(Ob(u as u32), Ob(v as u32)).index()) as u32)
    }

    fn act_morphism(&self, f: &PtdMap, g: Mor) -> Mor {
        let m = &self.monoid;
        let q = m.cat.morphism_count();
        let z = m.cat.identity(m.zero).index();
        Mor(self.act(f, g.index(), q, z, |u, v| m.add_morphisms(Mor(u as u32), Mor(v as u32)).index()) as u32)
    }
}

/// The Γ-category with level n the n-th power of the monoid category,
/// based at the zero tuple; a pointed map acts by summing over fibers.
pub fn em_gamma(monoid: Arc<CommutativeMonoidCategory>, truncation: usize) -> Result<GammaCategory> {
    if truncation > MAX_EM_LEVEL {
        return Err(Error::TruncationExceeded {
            level: truncation,
            truncation: MAX_EM_LEVEL,
        });
    }
    let levels = (0..=truncation)
        .map(|n| {
            let cat = Arc::new(FiniteCategory::power(monoid.category(), n));
            let basepoint = cat.tuple_object(&vec![monoid.zero; n]);
            PointedCategory { cat, basepoint }
        })
        .collect();
    let name = format!("H({})", monoid.name);
    GammaCategory::from_rule(name, truncation, levels, Arc::new(EmAction { monoid }))
}

/// A functor `C_1 × … × C_k → D` between monoid categories that is additive
/// in each variable separately, tabulated.
#[derive(Clone, Debug)]
pub struct MultiAdditive {
    sources: Vec<Arc<CommutativeMonoidCategory>>,
    target: Arc<CommutativeMonoidCategory>,
    ob_radix: Radix,
    mor_radix: Radix,
    ob_table: Vec<Ob>,
    mor_table: Vec<Mor>,
}

impl MultiAdditive {
    /// Tabulates `on_ob`, `on_mor` and checks functoriality and
    /// additivity in each variable.
    pub fn new(
        sources: Vec<Arc<CommutativeMonoidCategory>>,
        target: Arc<CommutativeMonoidCategory>,
        on_ob: impl Fn(&[Ob]) -> Ob,
        on_mor: impl Fn(&[Mor]) -> Mor,
    ) -> Result<Self> {
        let ob_radix = Radix::new(sources.iter().map(|s| s.cat.object_count()).collect());
        let mor_radix = Radix::new(sources.iter().map(|s| s.cat.morphism_count()).collect());
        let ob_lists: Vec<Vec<Ob>> = sources.iter().map(|s| s.cat.objects().collect()).collect();
        let mor_lists: Vec<Vec<Mor>> = sources.iter().map(|s| s.cat.morphisms().collect()).collect();
        let ob_table: Vec<Ob> = cartesian(&ob_lists).iter().map(|t| on_ob(t)).collect();
        let mor_table: Vec<Mor> = cartesian(&mor_lists).iter().map(|t| on_mor(t)).collect();
        let d = &target.cat;
        if ob_table.iter().any(|&o| !d.contains_object(o)) || mor_table.iter().any(|&m| !d.contains_morphism(m)) {
            return Err(Error::InvalidMonoid("multi-additive map leaves its target".into()));
        }
        let b = MultiAdditive {
            sources,
            target,
            ob_radix,
            mor_radix,
            ob_table,
            mor_table,
        };
        b.check_laws(&ob_lists, &mor_lists)?;
        Ok(b)
    }

    fn check_laws(&self, ob_lists: &[Vec<Ob>], mor_lists: &[Vec<Mor>]) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidMonoid(format!("multi-additive map: {what}")));
        let d = &self.target.cat;
        let k = self.sources.len();
        for fs in cartesian(mor_lists) {
            let m = self.morphism(&fs);
            let srcs: Vec<Ob> = fs.iter().zip(&self.sources).map(|(&f, s)| s.cat.src(f)).collect();
            let tgts: Vec<Ob> = fs.iter().zip(&self.sources).map(|(&f, s)| s.cat.tgt(f)).collect();
            if d.src(m) != self.object(&srcs) || d.tgt(m) != self.object(&tgts) {
                return bad("ill-typed on morphisms");
            }
            for i in 0..k {
                let si = &self.sources[i];
                for g in si.cat.morphisms() {
                    let mut left = fs.clone();
                    left[i] = si.add_morphisms(fs[i], g);
                    let mut other = fs.clone();
                    other[i] = g;
                    if self.morphism(&left) != self.target.add_morphisms(m, self.morphism(&other)) {
                        return bad("not additive on morphisms");
                    }
                }
            }
        }
        for xs in cartesian(ob_lists) {
            let ids: Vec<Mor> = xs.iter().zip(&self.sources).map(|(&x, s)| s.cat.identity(x)).collect();
            if self.morphism(&ids) != d.identity(self.object(&xs)) {
                return bad("identities not preserved");
            }
            for i in 0..k {
                let si = &self.sources[i];
                let mut z = xs.clone();
                z[i] = si.zero;
                if self.object(&z) != self.target.zero {
                    return bad("zero not absorbing");
                }
                for y in si.cat.objects() {
                    let mut left = xs.clone();
                    left[i] = si.add_objects(xs[i], y);
                    let mut other = xs.clone();
                    other[i] = y;
                    if self.object(&left) != self.target.add_objects(self.object(&xs), self.object(&other)) {
                        return bad("not additive on objects");
                    }
                }
            }
        }
        let pair_lists: Vec<Vec<(Mor, Mor)>> = self.sources.iter().map(|s| s.cat.composable_pairs()).collect();
        for pairs in cartesian(&pair_lists) {
            let gs: Vec<Mor> = pairs.iter().map(|p| p.0).collect();
            let fs: Vec<Mor> = pairs.iter().map(|p| p.1).collect();
            let gfs: Vec<Mor> = pairs
                .iter()
                .zip(&self.sources)
                .map(|(&(g, f), s)| s.cat.compose(g, f).expect("composable"))
                .collect();
            if d.compose(self.morphism(&gs), self.morphism(&fs)) != Some(self.morphism(&gfs)) {
                return bad("composition not preserved");
            }
        }
        Ok(())
    }

    pub fn arity(&self) -> usize {
        self.sources.len()
    }

    pub fn sources(&self) -> &[Arc<CommutativeMonoidCategory>] {
        &self.sources
    }

    pub fn target(&self) -> &Arc<CommutativeMonoidCategory> {
        &self.target
    }

    pub fn object(&self, xs: &[Ob]) -> Ob {
        let d: Vec<usize> = xs.iter().map(|o| o.index()).collect();
        self.ob_table[self.ob_radix.encode(&d)]
    }

    pub fn morphism(&self, fs: &[Mor]) -> Mor {
        let d: Vec<usize> = fs.iter().map(|m| m.index()).collect();
        self.mor_table[self.mor_radix.encode(&d)]
    }

    /// The Γ-multimorphism whose component at levels `p` sends a tuple
    /// `(x^1, …, x^k)` to the tuple with entry `b(x^1_{a_1}, …, x^k_{a_k})` at
    /// lexicographic position `L(a_1, …, a_k)`.
    pub fn component_rule(self: &Arc<Self>) -> Arc<dyn ComponentRule> {
        Arc::new(EmComponents { b: self.clone() })
    }
}

struct EmComponents {
    b: Arc<MultiAdditive>,
}

impl EmComponents {
    fn eval(
        &self,
        levels: &[usize],
        codes: &[usize],
        radices: &[usize],
        out_radix: usize,
        cell: impl Fn(&[usize]) -> usize,
    ) -> usize {
        let k = levels.len();
        let mut digits: Vec<Vec<usize>> = Vec::with_capacity(k);
        for i in 0..k {
            let mut c = codes[i];
            let mut d = vec![0; levels[i]];
            for slot in d.iter_mut().rev() {
                *slot = c % radices[i];
                c /= radices[i];
            }
            digits.push(d);
        }
        // Walk all coordinate tuples in lexicographic order, which is the
        // order of their L-positions.
        let total: usize = levels.iter().product();
        let mut a = vec![0usize; k];
        let mut args = vec![0usize; k];
        let mut acc = 0usize;
        for _ in 0..total {
            for i in 0..k {
                args[i] = digits[i][a[i]];
            }
            acc = acc * out_radix + cell(&args);
            for i in (0..k).rev() {
                a[i] += 1;
                if a[i] < levels[i] {
                    break;
                }
                a[i] = 0;
            }
        }
        acc
    }
}

impl ComponentRule for EmComponents {
    fn object(&self, levels: &[usize], xs: &[Ob]) -> Result<Ob> {
        let b = &self.b;
        let codes: Vec<usize> = xs.iter().map(|o| o.index()).collect();
        let radices: Vec<usize> = b.sources.iter().map(|s| s.cat.object_count()).collect();
        let q = b.target.cat.object_count();
        let code = self.eval(levels, &codes, &radices, q, |args| b.ob_table[b.ob_radix.encode(args)].index());
        Ok(Ob(code as u32))
    }

    fn morphism(&self, levels: &[usize], fs: &[Mor]) -> Result<Mor> {
        let b = &self.b;
        let codes: Vec<usize> = fs.iter().map(|m| m.index()).collect();
        let radices: Vec<usize> = b.sources.iter().map(|s| s.cat.morphism_count()).collect();
        let q = b.target.cat.morphism_count();
        let code = self.eval(levels, &codes, &radices, q, |args| b.mor_table[b.mor_radix.encode(args)].index());
        Ok(Mor(code as u32))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::validate_gamma;

    fn z2() -> Arc<CommutativeMonoidCategory> {
        Arc::new(CommutativeMonoidCategory::discrete("Z/2", &["0", "1"], |a, b| (a + b) % 2).unwrap())
    }

    #[test]
    fn hz2_levels_and_fold() {
        let h = em_gamma(z2(), 3).unwrap();
        assert_eq!(h.category(2).unwrap().object_count(), 4);
        let lvl2 = h.category(2).unwrap();
        let one_one = lvl2.find_object("(1,1)").unwrap();
        let fold = PtdMap::new(2, 1, vec![1, 1]).unwrap();
        let img = h.act_object(&fold, one_one).unwrap();
        assert_eq!(h.category(1).unwrap().object_name(img), "(0)");
        let zero = PtdMap::zero(2, 3);
        assert_eq!(h.act_object(&zero, one_one).unwrap(), h.basepoint(3).unwrap());
        assert!(validate_gamma(&h, 3).is_ok());
    }

    #[test]
    fn rejects_bad_tables() {
        // Truncated subtraction is not associative-commutative with zero 0.
        assert!(CommutativeMonoidCategory::discrete("bad", &["0", "1", "2"], |a, b| a.abs_diff(b)).is_err());
        // Addition mod 2 is not monotone for 0 <= 1.
        assert!(CommutativeMonoidCategory::preorder("bad", &["0", "1"], |a, b| a <= b, |a, b| (a + b) % 2).is_err());
    }

    #[test]
    fn multi_additive_components() {
        let m = z2();
        let mul = Arc::new(
            MultiAdditive::new(
                vec![m.clone(), m.clone()],
                m.clone(),
                |xs| Ob(xs[0].0 * xs[1].0),
                |fs| Mor(fs[0].0 * fs[1].0),
            )
            .unwrap(),
        );
        let rule = mul.component_rule();
        let h = em_gamma(m.clone(), 4).unwrap();
        let l2 = h.category(2).unwrap();
        let x = l2.find_object("(1,0)").unwrap();
        let y = l2.find_object("(1,1)").unwrap();
        let z = rule.object(&[2, 2], &[x, y]).unwrap();
        assert_eq!(h.category(4).unwrap().object_name(z), "(1,1,0,0)");
        assert!(MultiAdditive::new(vec![m.clone(), m.clone()], m.clone(), |xs| Ob(xs[0].0 | xs[1].0), |fs| Mor(fs[0].0 | fs[1].0)).is_err());
    }
}
