//! The indexing category 𝒜: sequences of positive integers and maps of the
//! flattened finite sets whose block preimages are empty or lie in a single
//! block. Also the permutation bookkeeping used by the linearity constraints.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::fskel::PtdMap;
use crate::report::Report;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct AObject(Vec<usize>);

impl TryFrom<Vec<usize>> for AObject {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        AObject::new(v)
    }
}

impl From<AObject> for Vec<usize> {
    fn from(a: AObject) -> Self {
        a.0
    }
}

impl AObject {
    pub fn new(seq: Vec<usize>) -> Result<Self> {
        if seq.contains(&0) {
            return Err(Error::InvalidDocument("sequence entries must be positive".into()));
        }
        Ok(AObject(seq))
    }

    pub fn empty() -> Self {
        AObject(Vec::new())
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Size of the flattened set.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn concat(&self, other: &AObject) -> AObject {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        AObject(v)
    }

    /// Flattened index of the first element of each block.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|&m| {
                let o = acc;
                acc += m;
                o
            })
            .collect()
    }

    /// The elements of the flattened set in block order.
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(block, &m)| (0..m).map(move |index| Element { block, index }))
    }
}

impl fmt::Display for AObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of a flattened sequence: 0-based block and position in block.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub block: usize,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "AMorphismDoc", into = "AMorphismDoc")]
pub struct AMorphism {
    dom: AObject,
    cod: AObject,
    map: Vec<Element>,
}

#[derive(Serialize, Deserialize)]
struct AMorphismDoc {
    dom: AObject,
    cod: AObject,
    map: Vec<[usize; 4]>,
}

impl TryFrom<AMorphismDoc> for AMorphism {
    type Error = Error;
    fn try_from(d: AMorphismDoc) -> Result<Self> {
        let mut slots: Vec<Option<Element>> = vec![None; d.dom.total()];
        let offsets = d.dom.offsets();
        for [i, s, j, t] in d.map {
            if i == 0 || s == 0 || j == 0 || t == 0 || i > d.dom.len() || s > d.dom.entries()[i - 1] {
                return Err(Error::InvalidDocument(format!("bad map entry [{i},{s},{j},{t}]")));
            }
            let slot = &mut slots[offsets[i - 1] + s - 1];
            if slot.is_some() {
                return Err(Error::InvalidDocument(format!("element ({i},{s}) mapped twice")));
            }
            *slot = Some(Element { block: j - 1, index: t - 1 });
        }
        let map = slots
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidDocument("map is not total".into()))?;
        AMorphism::new(d.dom, d.cod, map)
    }
}

impl From<AMorphism> for AMorphismDoc {
    fn from(a: AMorphism) -> Self {
        let map = a
            .dom
            .elements()
            .zip(&a.map)
            .map(|(e, t)| [e.block + 1, e.index + 1, t.block + 1, t.index + 1])
            .collect();
        AMorphismDoc { dom: a.dom, cod: a.cod, map }
    }
}

impl AMorphism {
    /// Checks typing only. The block condition is checked by
    /// [`validate_amorphism`] and enforced by [`AMorphism::checked`].
    pub fn new(dom: AObject, cod: AObject, map: Vec<Element>) -> Result<Self> {
        if map.len() != dom.total() {
            return Err(Error::DomainMismatch(format!("map has {} entries for {}", map.len(), dom)));
        }
        for e in &map {
            if e.block >= cod.len() || e.index >= cod.entries()[e.block] {
                return Err(Error::DomainMismatch(format!("image {:?} outside {}", e, cod)));
            }
        }
        Ok(AMorphism { dom, cod, map })
    }

    /// Like [`AMorphism::new`] but also enforces the block condition.
    pub fn checked(dom: AObject, cod: AObject, map: Vec<Element>) -> Result<Self> {
        let a = Self::new(dom, cod, map)?;
        a.source_blocks()?;
        Ok(a)
    }

    pub fn identity(m: &AObject) -> Self {
        AMorphism {
            dom: m.clone(),
            cod: m.clone(),
            map: m.elements().collect(),
        }
    }

    pub fn dom(&self) -> &AObject {
        &self.dom
    }

    pub fn cod(&self) -> &AObject {
        &self.cod
    }

    /// Images in flattened-domain order.
    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn apply(&self, e: Element) -> Element {
        self.map[self.dom.offsets()[e.block] + e.index]
    }

    /// For each codomain block, the domain block containing its preimage,
    /// or `None` when the preimage is empty.
    pub fn source_blocks(&self) -> Result<Vec<Option<usize>>> {
        let mut owner: Vec<Option<usize>> = vec![None; self.cod.len()];
        for (e, t) in self.dom.elements().zip(&self.map) {
            match owner[t.block] {
                None => owner[t.block] = Some(e.block),
                Some(i) if i == e.block => {}
                Some(i) => {
                    return Err(Error::BlockMismatch(format!(
                        "preimage of block {} meets blocks {} and {}",
                        t.block + 1,
                        i + 1,
                        e.block + 1
                    )))
                }
            }
        }
        Ok(owner)
    }

    pub fn is_valid(&self) -> bool {
        self.source_blocks().is_ok()
    }

    /// The pointed map ⟨m_i⟩ → ⟨n_j⟩ sending `s` to its image when that
    /// lies in block `j`, and to the basepoint otherwise. Blocks are 0-based.
    pub fn phi_ij(&self, i: usize, j: usize) -> Result<PtdMap> {
        let owners = self.source_blocks()?;
        if i >= self.dom.len() || j >= self.cod.len() || owners[j] != Some(i) {
            return Err(Error::BlockMismatch(format!(
                "preimage of block {} is not a nonempty subset of block {}",
                j + 1,
                i + 1
            )));
        }
        Ok(self.block_map(i, j))
    }

    fn block_map(&self, i: usize, j: usize) -> PtdMap {
        let off = self.dom.offsets()[i];
        let values = (0..self.dom.entries()[i])
            .map(|s| {
                let t = self.map[off + s];
                if t.block == j {
                    t.index + 1
                } else {
                    0
                }
            })
            .collect();
        PtdMap::new(self.dom.entries()[i], self.cod.entries()[j], values).expect("block map in range")
    }

    /// For every codomain block, `Some((i, φ_{i,j}))` or `None` for an empty
    /// preimage.
    pub fn block_maps(&self) -> Result<Vec<Option<(usize, PtdMap)>>> {
        let owners = self.source_blocks()?;
        Ok(owners
            .iter()
            .enumerate()
            .map(|(j, o)| o.map(|i| (i, self.block_map(i, j))))
            .collect())
    }

    /// `ψ ∘ φ`.
    pub fn compose(psi: &AMorphism, phi: &AMorphism) -> Result<AMorphism> {
        if phi.cod != psi.dom {
            return Err(Error::DomainMismatch(format!("cannot compose {} → {} after {} → {}", psi.dom, psi.cod, phi.dom, phi.cod)));
        }
        let offsets = psi.dom.offsets();
        let map = phi.map.iter().map(|t| psi.map[offsets[t.block] + t.index]).collect();
        Ok(AMorphism {
            dom: phi.dom.clone(),
            cod: psi.cod.clone(),
            map,
        })
    }

    /// `φ □ ψ`: the disjoint union, codomain blocks of `ψ` shifted past `φ`'s.
    pub fn concat(phi: &AMorphism, psi: &AMorphism) -> AMorphism {
        let shift = phi.cod.len();
        let mut map = phi.map.clone();
        map.extend(psi.map.iter().map(|t| Element {
            block: t.block + shift,
            index: t.index,
        }));
        AMorphism {
            dom: phi.dom.concat(&psi.dom),
            cod: phi.cod.concat(&psi.cod),
            map,
        }
    }

    pub fn is_bijective(&self) -> bool {
        if self.dom.total() != self.cod.total() {
            return false;
        }
        let offsets = self.cod.offsets();
        let mut seen = vec![false; self.cod.total()];
        for t in &self.map {
            let k = offsets[t.block] + t.index;
            if seen[k] {
                return false;
            }
            seen[k] = true;
        }
        true
    }

    pub fn inverse(&self) -> Option<AMorphism> {
        if !self.is_bijective() {
            return None;
        }
        let offsets = self.cod.offsets();
        let mut map = vec![Element { block: 0, index: 0 }; self.cod.total()];
        for (e, t) in self.dom.elements().zip(&self.map) {
            map[offsets[t.block] + t.index] = e;
        }
        Some(AMorphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            map,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.dom == self.cod && self.dom.elements().zip(&self.map).all(|(e, t)| e == *t)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

/// Reports violations of the block condition.
pub fn validate_amorphism(phi: &AMorphism) -> Report {
    let mut r = Report::new("amorphism");
    match phi.source_blocks() {
        Ok(_) => r.pass(),
        Err(e) => r.fail("block_condition", e.to_string(), phi.to_json()),
    }
    r
}

/// All valid morphisms `dom → cod`, in lexicographic order of the images.
pub fn enumerate_amorphisms(dom: &AObject, cod: &AObject) -> Vec<AMorphism> {
    let targets: Vec<Element> = cod.elements().collect();
    let sources: Vec<Element> = dom.elements().collect();
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(sources.len());
    let mut owner: Vec<Option<usize>> = vec![None; cod.len()];
    #[allow(clippy::too_many_arguments)]
    fn go(
        k: usize,
        sources: &[Element],
        targets: &[Element],
        map: &mut Vec<Element>,
        owner: &mut Vec<Option<usize>>,
        dom: &AObject,
        cod: &AObject,
        out: &mut Vec<AMorphism>,
    ) {
        if k == sources.len() {
            out.push(AMorphism {
                dom: dom.clone(),
                cod: cod.clone(),
                map: map.clone(),
            });
            return;
        }
        let b = sources[k].block;
        for &t in targets {
            if owner[t.block].is_some_and(|o| o != b) {
                continue;
            }
            let fresh = owner[t.block].is_none();
            owner[t.block] = Some(b);
            map.push(t);
            go(k + 1, sources, targets, map, owner, dom, cod, out);
            map.pop();
            if fresh {
                owner[t.block] = None;
            }
        }
    }
    go(0, &sources, &targets, &mut map, &mut owner, dom, cod, &mut out);
    out
}

/// A permutation of `0..n`; `images[i]` is where `i` goes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::InvalidDocument(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`.
    pub fn after(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(cur.clone()));
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else { break };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// A permutation of the blocks of a sequence, moving elements with their
/// blocks and keeping their order inside each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPermutation {
    dom: AObject,
    perm: Permutation,
}

impl BlockPermutation {
    pub fn new(dom: AObject, perm: Permutation) -> Result<Self> {
        if dom.len() != perm.len() {
            return Err(Error::DomainMismatch(format!("permutation of {} blocks applied to {}", perm.len(), dom)));
        }
        Ok(BlockPermutation { dom, perm })
    }

    pub fn dom(&self) -> &AObject {
        &self.dom
    }

    pub fn perm(&self) -> &Permutation {
        &self.perm
    }

    pub fn cod(&self) -> AObject {
        let mut seq = vec![0; self.dom.len()];
        for (i, &m) in self.dom.entries().iter().enumerate() {
            seq[self.perm.apply(i)] = m;
        }
        AObject(seq)
    }

    pub fn to_morphism(&self) -> AMorphism {
        let map = self
            .dom
            .elements()
            .map(|e| Element {
                block: self.perm.apply(e.block),
                index: e.index,
            })
            .collect();
        AMorphism {
            dom: self.dom.clone(),
            cod: self.cod(),
            map,
        }
    }
}

/// The block swap `(m, n) → (n, m)`.
pub fn block_swap(m: &AObject, n: &AObject) -> BlockPermutation {
    let (p, q) = (m.len(), n.len());
    let images = (0..p).map(|i| i + q).chain(0..q).collect();
    BlockPermutation {
        dom: m.concat(n),
        perm: Permutation(images),
    }
}

/// How the cells of a k-dimensional grid are listed.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ordering {
    /// The first index varies fastest.
    #[default]
    RevLex,
    /// The last index varies fastest.
    Lex,
}

/// The bijection between index tuples of a grid and positions. Indices and
/// positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridIndex {
    rows: Vec<usize>,
    ordering: Ordering,
    strides: Vec<usize>,
    len: usize,
}

impl GridIndex {
    pub fn new(rows: &[usize], ordering: Ordering) -> Self {
        let k = rows.len();
        let mut strides = vec![0; k];
        let mut acc = 1;
        let order: Vec<usize> = match ordering {
            Ordering::RevLex => (0..k).collect(),
            Ordering::Lex => (0..k).rev().collect(),
        };
        for i in order {
            strides[i] = acc;
            acc *= rows[i];
        }
        GridIndex {
            rows: rows.to_vec(),
            ordering,
            strides,
            len: acc,
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn position(&self, js: &[usize]) -> usize {
        js.iter().zip(&self.strides).map(|(j, s)| j * s).sum()
    }

    pub fn cell(&self, pos: usize) -> Vec<usize> {
        self.rows
            .iter()
            .zip(&self.strides)
            .map(|(&r, &s)| (pos / s) % r)
            .collect()
    }

    /// All index tuples in position order.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        (0..self.len).map(|p| self.cell(p)).collect()
    }
}

/// Position of `js` (0-based) in a grid with the given rows.
fn grid_position(rows: &[usize], js: &[usize], ordering: Ordering) -> usize {
    match ordering {
        // j_1 + Σ_{i≥2} r_1⋯r_{i-1} (j_i - 1), shifted to 0-based.
        Ordering::RevLex => {
            let mut pos = 0;
            let mut scale = 1;
            for (&r, &j) in rows.iter().zip(js) {
                pos += scale * j;
                scale *= r;
            }
            pos
        }
        Ordering::Lex => {
            let mut pos = 0;
            for (&r, &j) in rows.iter().zip(js) {
                pos = pos * r + j;
            }
            pos
        }
    }
}

/// The position permutation carrying the concatenation of the grids over
/// `rs` and over `rs` with `r_b` replaced by `rhat`, to the grid over `rs`
/// with `r_b` replaced by `r_b + rhat`. `b` is 0-based.
pub fn sigma_linearity(rs: &[usize], b: usize, rhat: usize, ordering: Ordering) -> Permutation {
    assert!(b < rs.len(), "variable index out of range");
    let mut rs_hat = rs.to_vec();
    rs_hat[b] = rhat;
    let mut rs_sum = rs.to_vec();
    rs_sum[b] = rs[b] + rhat;
    let first: usize = rs.iter().product();
    let second: usize = rs_hat.iter().product();
    let mut images = vec![0; first + second];
    let mut js = vec![0; rs.len()];
    // Cells of the first grid keep their indices.
    for_each_tuple(rs, &mut js, &mut |js| {
        images[grid_position(rs, js, ordering)] = grid_position(&rs_sum, js, ordering);
    });
    // Cells of the second grid shift their b-th index by r_b.
    for_each_tuple(&rs_hat, &mut js, &mut |js| {
        let mut shifted = js.to_vec();
        shifted[b] += rs[b];
        images[first + grid_position(&rs_hat, js, ordering)] = grid_position(&rs_sum, &shifted, ordering);
    });
    Permutation(images)
}

fn for_each_tuple(rows: &[usize], buf: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    if rows.contains(&0) {
        return;
    }
    buf.iter_mut().for_each(|x| *x = 0);
    loop {
        f(buf);
        let mut i = 0;
        loop {
            if i == rows.len() {
                return;
            }
            buf[i] += 1;
            if buf[i] < rows[i] {
                break;
            }
            buf[i] = 0;
            i += 1;
        }
    }
}

/// Bounds on sequences: length, entry size and optionally the entry sum.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeqBound {
    pub max_len: usize,
    pub max_entry: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_total: Option<usize>,
}

impl SeqBound {
    pub fn new(max_len: usize, max_entry: usize) -> Self {
        SeqBound {
            max_len,
            max_entry,
            max_total: None,
        }
    }

    pub fn with_total(mut self, max_total: usize) -> Self {
        self.max_total = Some(max_total);
        self
    }

    pub fn admits(&self, m: &AObject) -> bool {
        m.len() <= self.max_len
            && m.entries().iter().all(|&e| e <= self.max_entry)
            && self.max_total.is_none_or(|t| m.total() <= t)
    }

    /// All admitted sequences, shortest first, then lexicographically.
    pub fn sequences(&self) -> Vec<AObject> {
        let mut out = vec![AObject::empty()];
        let mut layer = vec![Vec::new()];
        for _ in 0..self.max_len {
            let mut next = Vec::new();
            for s in &layer {
                for e in 1..=self.max_entry {
                    let mut t: Vec<usize> = s.clone();
                    t.push(e);
                    if self.max_total.is_none_or(|m| t.iter().sum::<usize>() <= m) {
                        next.push(t);
                    }
                }
            }
            out.extend(next.iter().cloned().map(AObject));
            layer = next;
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({"max_len": self.max_len, "max_entry": self.max_entry});
        if let Some(t) = self.max_total {
            v["max_total"] = json!(t);
        }
        v
    }
}
