//! Pointed finite sets ⟨n⟩ = {0,…,n} and the lexicographic smash product.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A pointed map ⟨dom⟩ → ⟨cod⟩. `values[x - 1]` is the image of `x`; the
/// basepoint 0 is fixed implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "PtdMapDoc", into = "PtdMapDoc")]
pub struct PtdMap {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct PtdMapDoc {
    dom: usize,
    cod: usize,
    values: Vec<usize>,
}

impl TryFrom<PtdMapDoc> for PtdMap {
    type Error = Error;
    fn try_from(d: PtdMapDoc) -> Result<Self> {
        PtdMap::new(d.dom, d.cod, d.values)
    }
}

impl From<PtdMap> for PtdMapDoc {
    fn from(f: PtdMap) -> Self {
        PtdMapDoc {
            dom: f.dom,
            cod: f.cod,
            values: f.values,
        }
    }
}

impl PtdMap {
    pub fn new(dom: usize, cod: usize, values: Vec<usize>) -> Result<Self> {
        if values.len() != dom {
            return Err(Error::DomainMismatch(format!("{} values for domain ⟨{}⟩", values.len(), dom)));
        }
        if let Some(v) = values.iter().find(|&&v| v > cod) {
            return Err(Error::DomainMismatch(format!("value {v} outside ⟨{cod}⟩")));
        }
        Ok(PtdMap { dom, cod, values })
    }

    pub fn identity(n: usize) -> Self {
        PtdMap {
            dom: n,
            cod: n,
            values: (1..=n).collect(),
        }
    }

    pub fn zero(dom: usize, cod: usize) -> Self {
        PtdMap {
            dom,
            cod,
            values: vec![0; dom],
        }
    }

    /// The map ⟨1⟩ → ⟨n⟩ picking out `j`.
    pub fn point(n: usize, j: usize) -> Result<Self> {
        PtdMap::new(1, n, vec![j])
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn cod(&self) -> usize {
        self.cod
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, x: usize) -> usize {
        if x == 0 {
            0
        } else {
            self.values[x - 1]
        }
    }

    /// `g ∘ f`.
    pub fn compose(g: &PtdMap, f: &PtdMap) -> Result<PtdMap> {
        if f.cod != g.dom {
            return Err(Error::DomainMismatch(format!("cannot compose ⟨{}⟩→⟨{}⟩ after ⟨{}⟩→⟨{}⟩", g.dom, g.cod, f.dom, f.cod)));
        }
        Ok(PtdMap {
            dom: f.dom,
            cod: g.cod,
            values: f.values.iter().map(|&v| g.apply(v)).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_bijection(&self) -> bool {
        if self.dom != self.cod {
            return false;
        }
        let mut seen = vec![false; self.cod + 1];
        for &v in &self.values {
            if v == 0 || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<PtdMap> {
        if !self.is_bijection() {
            return None;
        }
        let mut values = vec![0; self.dom];
        for (i, &v) in self.values.iter().enumerate() {
            values[v - 1] = i + 1;
        }
        Some(PtdMap {
            dom: self.cod,
            cod: self.dom,
            values,
        })
    }
}

impl fmt::Display for PtdMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{}⟩→⟨{}⟩{:?}", self.dom, self.cod, self.values)
    }
}

/// The lexicographic position of `(x, y)` in ⟨m⟩∧⟨n⟩.
pub fn lex(n: usize, x: usize, y: usize) -> usize {
    if x == 0 || y == 0 {
        0
    } else {
        n * (x - 1) + y
    }
}

/// ⟨mn⟩ together with the table `L[x][y]` for `x ≤ m`, `y ≤ n`.
pub fn smash_lex(m: usize, n: usize) -> (usize, Vec<Vec<usize>>) {
    let table = (0..=m).map(|x| (0..=n).map(|y| lex(n, x, y)).collect()).collect();
    (m * n, table)
}

/// Iterated left-normalized lexicographic position of `coords` in
/// ⟨levels[0]⟩ ∧ … ∧ ⟨levels[k-1]⟩. The first coordinate is most significant.
pub fn lex_tuple(levels: &[usize], coords: &[usize]) -> usize {
    debug_assert_eq!(levels.len(), coords.len());
    if coords.contains(&0) {
        return 0;
    }
    let mut acc = 1;
    for (&n, &c) in levels.iter().zip(coords) {
        acc = lex(n, acc, c);
    }
    acc
}

/// Inverse of [`lex_tuple`] on nonzero positions.
pub fn unlex_tuple(levels: &[usize], mut pos: usize) -> Vec<usize> {
    debug_assert!(pos >= 1);
    pos -= 1;
    let mut out = vec![0; levels.len()];
    for (slot, &n) in out.iter_mut().zip(levels).rev() {
        *slot = pos % n + 1;
        pos /= n;
    }
    out
}

/// `f ∧ g`: `L(x, y) ↦ L(f(x), g(y))`.
pub fn smash_map(f: &PtdMap, g: &PtdMap) -> PtdMap {
    let values = (1..=f.dom)
        .flat_map(|x| (1..=g.dom).map(move |y| (x, y)))
        .map(|(x, y)| lex(g.cod, f.apply(x), g.apply(y)))
        .collect();
    PtdMap {
        dom: f.dom * g.dom,
        cod: f.cod * g.cod,
        values,
    }
}

/// Left-normalized iterated smash of maps. The empty smash is `id⟨1⟩`.
pub fn smash_maps(fs: &[PtdMap]) -> PtdMap {
    fs.iter().fold(PtdMap::identity(1), |acc, f| smash_map(&acc, f))
}

/// The braid ⟨mn⟩ → ⟨nm⟩, `L(x, y) ↦ L'(y, x)`.
pub fn braid(m: usize, n: usize) -> PtdMap {
    factor_permutation(&[m, n], &[1, 0])
}

/// Reorders smash factors. `perm[i]` is the position in the output of the
/// i-th input factor, so the output levels are `levels` rearranged by `perm`.
/// The map sends `L(c_1..c_k)` to the L-position of the rearranged tuple.
pub fn factor_permutation(levels: &[usize], perm: &[usize]) -> PtdMap {
    let k = levels.len();
    let mut out_levels = vec![0; k];
    for i in 0..k {
        out_levels[perm[i]] = levels[i];
    }
    let total: usize = levels.iter().product();
    let mut values = Vec::with_capacity(total);
    let mut out = vec![0; k];
    for pos in 1..=total {
        let c = unlex_tuple(levels, pos);
        for i in 0..k {
            out[perm[i]] = c[i];
        }
        values.push(lex_tuple(&out_levels, &out));
    }
    PtdMap {
        dom: total,
        cod: total,
        values,
    }
}

/// All maps ⟨a⟩ → ⟨b⟩, ordered lexicographically by `values`.
pub fn hom_set(a: usize, b: usize) -> Vec<PtdMap> {
    let count = (b + 1).pow(a as u32);
    let mut out = Vec::with_capacity(count);
    let mut values = vec![0; a];
    for _ in 0..count {
        out.push(PtdMap {
            dom: a,
            cod: b,
            values: values.clone(),
        });
        for slot in values.iter_mut().rev() {
            if *slot < b {
                *slot += 1;
                break;
            }
            *slot = 0;
        }
    }
    out
}

/// The maps ⟨a⟩ → ⟨b⟩ other than the zero map.
pub fn nonzero_hom(a: usize, b: usize) -> Vec<PtdMap> {
    hom_set(a, b).into_iter().filter(|f| !f.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map(dom: usize, cod: usize, values: &[usize]) -> PtdMap {
        PtdMap::new(dom, cod, values.to_vec()).unwrap()
    }

    #[test]
    fn composition_examples() {
        let f = map(1, 3, &[2]);
        let g = map(3, 2, &[0, 1, 0]);
        assert_eq!(PtdMap::compose(&g, &f).unwrap(), map(1, 2, &[1]));
        assert_eq!(PtdMap::compose(&PtdMap::identity(3), &f).unwrap(), f);
        let z = PtdMap::zero(3, 4);
        assert!(PtdMap::compose(&z, &f).unwrap().is_zero());
        assert!(PtdMap::compose(&f, &g).is_err());
    }

    #[test]
    fn lex_examples() {
        assert_eq!(lex(3, 2, 1), 4);
        for y in 0..5 {
            assert_eq!(lex(4, 0, y), 0);
        }
        let (n, t) = smash_lex(1, 1);
        assert_eq!(n, 1);
        assert_eq!(t[1][1], 1);
    }

    #[test]
    fn smash_map_example() {
        let fold = map(2, 1, &[1, 1]);
        let s = smash_map(&fold, &PtdMap::identity(2));
        assert_eq!(s, map(4, 2, &[1, 2, 1, 2]));
        assert_eq!(smash_map(&PtdMap::identity(2), &PtdMap::identity(3)), PtdMap::identity(6));
        assert!(smash_map(&PtdMap::zero(2, 2), &PtdMap::identity(3)).is_zero());
    }

    #[test]
    fn hom_counts() {
        assert_eq!(hom_set(1, 4).len(), 5);
        assert_eq!(nonzero_hom(1, 4).len(), 4);
        assert_eq!(hom_set(0, 3).len(), 1);
        assert_eq!(hom_set(2, 2).len(), 9);
        let h = hom_set(2, 2);
        let mut sorted = h.clone();
        sorted.sort();
        assert_eq!(h, sorted);
    }

    #[test]
    fn braid_is_transpose() {
        let b = braid(2, 3);
        for x in 1..=2 {
            for y in 1..=3 {
                assert_eq!(b.apply(lex(3, x, y)), lex(2, y, x));
            }
        }
        assert_eq!(PtdMap::compose(&braid(3, 2), &b).unwrap(), PtdMap::identity(6));
        assert!(braid(1, 4).is_identity());
    }

    #[test]
    fn unlex_inverts_lex() {
        let levels = [2, 3, 2];
        for pos in 1..=12 {
            assert_eq!(lex_tuple(&levels, &unlex_tuple(&levels, pos)), pos);
        }
    }

    #[test]
    fn serde_rejects_out_of_range() {
        assert!(serde_json::from_str::<PtdMap>(r#"{"dom":1,"cod":1,"values":[2]}"#).is_err());
        let f: PtdMap = serde_json::from_str(r#"{"dom":2,"cod":1,"values":[1,0]}"#).unwrap();
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"dom":2,"cod":1,"values":[1,0]}"#);
    }
}
