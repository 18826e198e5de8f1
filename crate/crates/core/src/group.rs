//! Concrete countable groups and finite subsets of them.
//!
//! Every group element is stored as a small integer vector in canonical form,
//! so equality, hashing and the canonical (lexicographic) order are all plain
//! derived impls on [`Element`]. The meaning of the payload depends on the
//! [`GroupKind`] of the owning [`GroupCtx`]:
//!
//! | kind        | payload                                          |
//! |-------------|--------------------------------------------------|
//! | `Lattice`   | `d` integer coordinates                           |
//! | `Cyclic`    | one residue in `[0, m)`                           |
//! | `Free`      | reduced word; letter `i+1` is generator `i`, `-(i+1)` its inverse |
//! | `Heisenberg`| `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+x*y')` |

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Longest free-group word we are willing to represent.
pub const MAX_WORD_LEN: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("element {element} does not belong to {group}")]
    KindMismatch { element: String, group: String },
    #[error("free-group word exceeds {MAX_WORD_LEN} letters")]
    WordTooLong,
    #[error("{0} has no generating set")]
    NoGenerators(String),
    #[error("operation requires a nonempty set")]
    EmptySet,
    #[error("operation requires a lattice group, got {0}")]
    NotLattice(String),
    #[error("cannot parse element {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// `Z^dim` under addition.
    Lattice { dim: usize },
    /// `Z / modulus Z`.
    Cyclic { modulus: u64 },
    /// Free group on `rank` generators.
    Free { rank: usize },
    /// Discrete Heisenberg group in coordinate form.
    Heisenberg,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Lattice { dim } => write!(f, "Z^{dim}"),
            GroupKind::Cyclic { modulus } => write!(f, "Z_{modulus}"),
            GroupKind::Free { rank } => write!(f, "F_{rank}"),
            GroupKind::Heisenberg => write!(f, "H3"),
        }
    }
}

impl std::str::FromStr for GroupKind {
    type Err = GroupError;

    /// Accepts the `Display` forms `Z^d`, `Z_m`, `F_k` and `H3`.
    fn from_str(s: &str) -> Result<Self, GroupError> {
        let bad = || GroupError::Parse { text: s.to_string(), reason: "expected Z^d, Z_m, F_k or H3".into() };
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        let t = s.trim();
        if t == "H3" {
            Ok(GroupKind::Heisenberg)
        } else if let Some(d) = t.strip_prefix("Z^") {
            Ok(GroupKind::Lattice { dim: num(d)? as usize })
        } else if t == "Z" {
            Ok(GroupKind::Lattice { dim: 1 })
        } else if let Some(m) = t.strip_prefix("Z_") {
            Ok(GroupKind::Cyclic { modulus: num(m)? })
        } else if let Some(k) = t.strip_prefix("F_") {
            Ok(GroupKind::Free { rank: num(k)? as usize })
        } else {
            Err(bad())
        }
    }
}

/// A group element in canonical form. See the module docs for the encoding.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element(Vec<i64>);

impl Element {
    pub fn payload(&self) -> &[i64] {
        &self.0
    }
}

/// A concrete group together with an optional symmetric generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCtx {
    kind: GroupKind,
    generators: Option<Vec<Element>>,
}

impl GroupCtx {
    /// The group with its standard symmetric generating set:
    /// `±e_i` for lattices, `±1` for cyclic groups, the letters and their
    /// inverses for free groups, and `(±1,0,0), (0,±1,0)` for Heisenberg.
    pub fn standard(kind: GroupKind) -> Result<Self, GroupError> {
        let bare = Self::without_generators(kind)?;
        let mut gens = Vec::new();
        match kind {
            GroupKind::Lattice { dim } => {
                for i in 0..dim {
                    for s in [-1, 1] {
                        let mut v = vec![0; dim];
                        v[i] = s;
                        gens.push(Element(v));
                    }
                }
            }
            GroupKind::Cyclic { .. } => {
                gens.push(bare.residue(1));
                gens.push(bare.residue(-1));
            }
            GroupKind::Free { rank } => {
                for i in 0..rank as i64 {
                    gens.push(Element(vec![i + 1]));
                    gens.push(Element(vec![-(i + 1)]));
                }
            }
            GroupKind::Heisenberg => {
                for v in [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]] {
                    gens.push(Element(v.to_vec()));
                }
            }
        }
        if matches!(kind, GroupKind::Cyclic { modulus: 1 }) {
            gens.clear();
            gens.push(bare.identity());
        }
        Self::with_generators(kind, gens)
    }

    pub fn without_generators(kind: GroupKind) -> Result<Self, GroupError> {
        match kind {
            GroupKind::Lattice { dim: 0 } => {
                return Err(GroupError::InvalidGroup("lattice dimension must be positive".into()))
            }
            GroupKind::Cyclic { modulus: 0 } => {
                return Err(GroupError::InvalidGroup("cyclic modulus must be positive".into()))
            }
            GroupKind::Free { rank } if rank == 0 || rank > 26 => {
                return Err(GroupError::InvalidGroup("free rank must be in 1..=26".into()))
            }
            _ => {}
        }
        Ok(Self { kind, generators: None })
    }

    /// Uses `generators` as the generating set. They must be valid elements
    /// and the set must be closed under inversion.
    pub fn with_generators(kind: GroupKind, generators: Vec<Element>) -> Result<Self, GroupError> {
        let mut ctx = Self::without_generators(kind)?;
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            ctx.check(&g)?;
            gens.push(g);
        }
        gens.sort();
        gens.dedup();
        for g in &gens {
            let gi = ctx.inv(g)?;
            if gens.binary_search(&gi).is_err() {
                return Err(GroupError::InvalidGroup(format!(
                    "generating set is not symmetric: missing inverse of {}",
                    ctx.format(g)
                )));
            }
        }
        ctx.generators = Some(gens);
        Ok(ctx)
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> Option<&[Element]> {
        self.generators.as_deref()
    }

    fn require_generators(&self) -> Result<&[Element], GroupError> {
        self.generators().ok_or_else(|| GroupError::NoGenerators(self.kind.to_string()))
    }

    pub fn identity(&self) -> Element {
        match self.kind {
            GroupKind::Lattice { dim } => Element(vec![0; dim]),
            GroupKind::Cyclic { .. } => Element(vec![0]),
            GroupKind::Free { .. } => Element(Vec::new()),
            GroupKind::Heisenberg => Element(vec![0, 0, 0]),
        }
    }

    pub fn is_identity(&self, g: &Element) -> bool {
        *g == self.identity()
    }

    /// Canonicalizes a raw payload for this group.
    pub fn element(&self, raw: Vec<i64>) -> Result<Element, GroupError> {
        match self.kind {
            GroupKind::Lattice { dim } if raw.len() == dim => Ok(Element(raw)),
            GroupKind::Cyclic { .. } if raw.len() == 1 => Ok(self.residue(raw[0])),
            GroupKind::Heisenberg if raw.len() == 3 => Ok(Element(raw)),
            GroupKind::Free { rank } => {
                if raw.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > rank) {
                    return Err(self.mismatch_raw(&raw));
                }
                reduce_word(raw.into_iter())
            }
            _ => Err(self.mismatch_raw(&raw)),
        }
    }

    pub fn lattice_point(&self, coords: &[i64]) -> Result<Element, GroupError> {
        match self.kind {
            GroupKind::Lattice { .. } => self.element(coords.to_vec()),
            _ => Err(GroupError::NotLattice(self.kind.to_string())),
        }
    }

    /// Residue class of `x`; only meaningful for cyclic groups.
    pub fn residue(&self, x: i64) -> Element {
        match self.kind {
            GroupKind::Cyclic { modulus } => Element(vec![x.rem_euclid(modulus as i64)]),
            _ => Element(vec![x]),
        }
    }

    fn mismatch_raw(&self, raw: &[i64]) -> GroupError {
        GroupError::KindMismatch { element: format!("{raw:?}"), group: self.kind.to_string() }
    }

    /// Checks that `g` is a canonical element of this group.
    pub fn check(&self, g: &Element) -> Result<(), GroupError> {
        let p = &g.0;
        let ok = match self.kind {
            GroupKind::Lattice { dim } => p.len() == dim,
            GroupKind::Cyclic { modulus } => p.len() == 1 && p[0] >= 0 && (p[0] as u64) < modulus,
            GroupKind::Free { rank } => {
                p.len() <= MAX_WORD_LEN
                    && p.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= rank)
                    && p.windows(2).all(|w| w[0] != -w[1])
            }
            GroupKind::Heisenberg => p.len() == 3,
        };
        if ok {
            Ok(())
        } else {
            Err(self.mismatch_raw(p))
        }
    }

    pub fn mul(&self, g: &Element, h: &Element) -> Result<Element, GroupError> {
        self.check(g)?;
        self.check(h)?;
        Ok(match self.kind {
            GroupKind::Lattice { .. } => Element(g.0.iter().zip(&h.0).map(|(a, b)| a + b).collect()),
            GroupKind::Cyclic { modulus } => Element(vec![(g.0[0] + h.0[0]).rem_euclid(modulus as i64)]),
            GroupKind::Free { .. } => return reduce_word(g.0.iter().chain(&h.0).copied()),
            GroupKind::Heisenberg => {
                let (a, b) = (&g.0, &h.0);
                Element(vec![a[0] + b[0], a[1] + b[1], a[2] + b[2] + a[0] * b[1]])
            }
        })
    }

    pub fn inv(&self, g: &Element) -> Result<Element, GroupError> {
        self.check(g)?;
        Ok(match self.kind {
            GroupKind::Lattice { .. } => Element(g.0.iter().map(|a| -a).collect()),
            GroupKind::Cyclic { modulus } => Element(vec![(-g.0[0]).rem_euclid(modulus as i64)]),
            GroupKind::Free { .. } => Element(g.0.iter().rev().map(|l| -l).collect()),
            GroupKind::Heisenberg => {
                let a = &g.0;
                Element(vec![-a[0], -a[1], -a[2] + a[0] * a[1]])
            }
        })
    }

    /// `g^n` for `n >= 0`.
    pub fn pow(&self, g: &Element, n: u32) -> Result<Element, GroupError> {
        let mut acc = self.identity();
        for _ in 0..n {
            acc = self.mul(&acc, g)?;
        }
        Ok(acc)
    }

    /// Left translate `gA`.
    pub fn translate_set(&self, g: &Element, a: &Shape) -> Result<Shape, GroupError> {
        a.iter().map(|x| self.mul(g, x)).collect::<Result<Vec<_>, _>>().map(Shape::from_elements)
    }

    /// Right translate `Ag`.
    pub fn translate_set_right(&self, a: &Shape, g: &Element) -> Result<Shape, GroupError> {
        a.iter().map(|x| self.mul(x, g)).collect::<Result<Vec<_>, _>>().map(Shape::from_elements)
    }

    /// `AB = {ab : a in A, b in B}`.
    pub fn set_product(&self, a: &Shape, b: &Shape) -> Result<Shape, GroupError> {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for x in a.iter() {
            for y in b.iter() {
                out.push(self.mul(x, y)?);
            }
        }
        Ok(Shape::from_elements(out))
    }

    pub fn set_inverse(&self, a: &Shape) -> Result<Shape, GroupError> {
        a.iter().map(|x| self.inv(x)).collect::<Result<Vec<_>, _>>().map(Shape::from_elements)
    }

    /// Closed word-metric ball `T_r` around the identity, by breadth-first search.
    pub fn ball(&self, radius: u32) -> Result<Shape, GroupError> {
        let gens = self.require_generators()?;
        let id = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
        let mut frontier = vec![id];
        for _ in 0..radius {
            let mut next = Vec::new();
            for g in &frontier {
                for t in gens {
                    let h = self.mul(g, t)?;
                    if seen.insert(h.clone()) {
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        Ok(Shape::from_elements(seen))
    }

    /// Growth function values `gamma(0..=max_radius)`.
    pub fn growth(&self, max_radius: u32) -> Result<Vec<usize>, GroupError> {
        let gens = self.require_generators()?;
        let id = self.identity();
        let mut seen: HashSet<Element> = HashSet::from([id.clone()]);
        let mut frontier = VecDeque::from([id]);
        let mut sizes = vec![1];
        for _ in 0..max_radius {
            let mut next = VecDeque::new();
            while let Some(g) = frontier.pop_front() {
                for t in gens {
                    let h = self.mul(&g, t)?;
                    if seen.insert(h.clone()) {
                        next.push_back(h);
                    }
                }
            }
            frontier = next;
            sizes.push(seen.len());
        }
        Ok(sizes)
    }

    /// Stabilizer `G_A = {g : gA = A}`.
    ///
    /// Any `g` in `G_A` sends the first element `a0` of `A` into `A`, so the
    /// candidates `A a0^{-1}` are exhaustive.
    pub fn stabilizer(&self, a: &Shape) -> Result<Shape, GroupError> {
        let a0 = a.first().ok_or(GroupError::EmptySet)?;
        let a0_inv = self.inv(a0)?;
        let last = a.elements().last().expect("nonempty");
        let mut out = Vec::new();
        'cand: for x in a.iter() {
            let g = self.mul(x, &a0_inv)?;
            if !a.contains(&self.mul(&g, last)?) {
                continue;
            }
            for y in a.iter() {
                if !a.contains(&self.mul(&g, y)?) {
                    continue 'cand;
                }
            }
            out.push(g);
        }
        Ok(Shape::from_elements(out))
    }

    /// `int_1 A`: points of `A` whose neighbours along every axis are in `A`.
    pub fn interior_1(&self, a: &Shape) -> Result<Shape, GroupError> {
        let GroupKind::Lattice { dim } = self.kind else {
            return Err(GroupError::NotLattice(self.kind.to_string()));
        };
        let mut out = Vec::new();
        for x in a.iter() {
            self.check(x)?;
            let mut inside = true;
            'axes: for i in 0..dim {
                for s in [-1, 1] {
                    let mut y = x.0.clone();
                    y[i] += s;
                    if !a.contains(&Element(y)) {
                        inside = false;
                        break 'axes;
                    }
                }
            }
            if inside {
                out.push(x.clone());
            }
        }
        Ok(Shape::from_elements(out))
    }

    /// `int_T A = A ∩ (∩_t tA)` over the generating set `T`.
    pub fn interior_t(&self, a: &Shape) -> Result<Shape, GroupError> {
        let gens = self.require_generators()?;
        let mut out = Vec::new();
        'elems: for x in a.iter() {
            for t in gens {
                // x ∈ tA  <=>  t^{-1} x ∈ A
                if !a.contains(&self.mul(&self.inv(t)?, x)?) {
                    continue 'elems;
                }
            }
            out.push(x.clone());
        }
        Ok(Shape::from_elements(out))
    }

    /// Largest `l∞` distance between two points of a lattice set.
    pub fn diameter_inf(&self, a: &Shape) -> Result<i64, GroupError> {
        let GroupKind::Lattice { dim } = self.kind else {
            return Err(GroupError::NotLattice(self.kind.to_string()));
        };
        if a.is_empty() {
            return Err(GroupError::EmptySet);
        }
        Ok((0..dim)
            .map(|i| {
                let (lo, hi) = a.iter().fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x.0[i]), hi.max(x.0[i])));
                hi - lo
            })
            .max()
            .unwrap_or(0))
    }

    /// Human-readable form, inverse of [`GroupCtx::parse`].
    pub fn format(&self, g: &Element) -> String {
        match self.kind {
            GroupKind::Free { .. } => {
                if g.0.is_empty() {
                    return "e".into();
                }
                g.0.iter()
                    .map(|&l| {
                        let c = (b'a' + (l.unsigned_abs() - 1) as u8) as char;
                        if l > 0 {
                            c
                        } else {
                            c.to_ascii_uppercase()
                        }
                    })
                    .collect()
            }
            _ => g.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
        }
    }

    /// Parses an element. Lattice, cyclic and Heisenberg elements are
    /// comma-separated integers; free-group words use `a`, `b`, ... for the
    /// generators and upper case for their inverses, with `e` the identity.
    pub fn parse(&self, text: &str) -> Result<Element, GroupError> {
        let t = text.trim();
        let perr = |reason: &str| GroupError::Parse { text: text.to_string(), reason: reason.to_string() };
        match self.kind {
            GroupKind::Free { rank } => {
                if t == "e" || t.is_empty() {
                    return Ok(self.identity());
                }
                let mut raw = Vec::new();
                for c in t.chars() {
                    if !c.is_ascii_alphabetic() {
                        return Err(perr("free-group words use letters only"));
                    }
                    let idx = (c.to_ascii_lowercase() as u8 - b'a') as i64 + 1;
                    if idx as usize > rank {
                        return Err(perr("letter beyond the group rank"));
                    }
                    raw.push(if c.is_ascii_lowercase() { idx } else { -idx });
                }
                self.element(raw)
            }
            _ => {
                let raw = t
                    .split(',')
                    .map(|s| s.trim().parse::<i64>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| perr(&e.to_string()))?;
                self.element(raw).map_err(|_| perr("wrong number of coordinates"))
            }
        }
    }
}

fn reduce_word(letters: impl Iterator<Item = i64>) -> Result<Element, GroupError> {
    let mut out: Vec<i64> = Vec::new();
    for l in letters {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    if out.len() > MAX_WORD_LEN {
        return Err(GroupError::WordTooLong);
    }
    Ok(Element(out))
}

/// A finite set of group elements, sorted in canonical order.
///
/// Cloning is cheap; the element storage is shared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Shape {
    elems: Arc<[Element]>,
}

impl Shape {
    pub fn from_elements(elems: impl IntoIterator<Item = Element>) -> Self {
        let mut v: Vec<Element> = elems.into_iter().collect();
        v.sort();
        v.dedup();
        Self { elems: v.into() }
    }

    pub fn empty() -> Self {
        Self::from_elements(std::iter::empty())
    }

    pub fn singleton(g: Element) -> Self {
        Self::from_elements([g])
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elems
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Element> {
        self.elems.iter()
    }

    pub fn first(&self) -> Option<&Element> {
        self.elems.first()
    }

    pub fn contains(&self, g: &Element) -> bool {
        self.elems.binary_search(g).is_ok()
    }

    /// Position of `g` in canonical order.
    pub fn index_of(&self, g: &Element) -> Option<usize> {
        self.elems.binary_search(g).ok()
    }

    pub fn is_subset(&self, other: &Shape) -> bool {
        self.len() <= other.len() && self.iter().all(|g| other.contains(g))
    }

    pub fn intersection(&self, other: &Shape) -> Shape {
        Shape::from_elements(self.iter().filter(|g| other.contains(g)).cloned())
    }

    pub fn union(&self, other: &Shape) -> Shape {
        Shape::from_elements(self.iter().chain(other.iter()).cloned())
    }

    pub fn difference(&self, other: &Shape) -> Shape {
        Shape::from_elements(self.iter().filter(|g| !other.contains(g)).cloned())
    }

    pub fn is_disjoint(&self, other: &Shape) -> bool {
        self.iter().all(|g| !other.contains(g))
    }
}

impl FromIterator<Element> for Shape {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        Shape::from_elements(iter)
    }
}

impl<'a> IntoIterator for &'a Shape {
    type Item = &'a Element;
    type IntoIter = std::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

/// The lattice box `[lo_1, hi_1] x ... x [lo_d, hi_d]` scaled by `step`
/// (points `step * x` for integer `x` in the box).
pub fn lattice_box(lo: &[i64], hi: &[i64], step: i64) -> Shape {
    assert_eq!(lo.len(), hi.len());
    let mut out = vec![Vec::new()];
    for (&l, &h) in lo.iter().zip(hi) {
        let mut next = Vec::with_capacity(out.len() * (h - l + 1).max(0) as usize);
        for prefix in &out {
            for x in l..=h {
                let mut p = prefix.clone();
                p.push(step * x);
                next.push(p);
            }
        }
        out = next;
    }
    Shape::from_elements(out.into_iter().map(Element))
}

/// The cube `[lo, hi]^dim`.
pub fn lattice_cube(dim: usize, lo: i64, hi: i64) -> Shape {
    lattice_box(&vec![lo; dim], &vec![hi; dim], 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(d: usize) -> GroupCtx {
        GroupCtx::standard(GroupKind::Lattice { dim: d }).unwrap()
    }

    fn set(ctx: &GroupCtx, items: &[&str]) -> Shape {
        items.iter().map(|s| ctx.parse(s).unwrap()).collect()
    }

    #[test]
    fn lattice_product() {
        let g = z(2);
        let a = g.parse("1,2").unwrap();
        let b = g.parse("3,-1").unwrap();
        assert_eq!(g.mul(&a, &b).unwrap(), g.parse("4,1").unwrap());
    }

    #[test]
    fn free_word_reduction() {
        let f = GroupCtx::standard(GroupKind::Free { rank: 2 }).unwrap();
        let ab = f.parse("ab").unwrap();
        let b_inv = f.parse("B").unwrap();
        assert_eq!(f.mul(&ab, &b_inv).unwrap(), f.parse("a").unwrap());
        assert_eq!(f.inv(&ab).unwrap(), f.parse("BA").unwrap());
        assert_eq!(f.format(&f.parse("aAb").unwrap()), "b");
    }

    #[test]
    fn free_word_overflow_is_an_error() {
        let f = GroupCtx::standard(GroupKind::Free { rank: 1 }).unwrap();
        let long = f.parse(&"a".repeat(40)).unwrap();
        assert_eq!(f.mul(&long, &long), Err(GroupError::WordTooLong));
    }

    #[test]
    fn heisenberg_against_matrices() {
        // (x,y,z) <-> [[1,x,z],[0,1,y],[0,0,1]]
        fn mat(v: &[i64]) -> [[i64; 3]; 3] {
            [[1, v[0], v[2]], [0, 1, v[1]], [0, 0, 1]]
        }
        fn mm(a: [[i64; 3]; 3], b: [[i64; 3]; 3]) -> [[i64; 3]; 3] {
            let mut c = [[0; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        c[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
            c
        }
        let h = GroupCtx::standard(GroupKind::Heisenberg).unwrap();
        let p = h.mul(&h.parse("1,0,0").unwrap(), &h.parse("0,1,0").unwrap()).unwrap();
        assert_eq!(p, h.parse("1,1,1").unwrap());
        for a in [[1, 2, 3], [-2, 5, 0], [4, -1, -7]] {
            for b in [[0, 1, 0], [3, 3, -2], [-1, -4, 6]] {
                let prod = h.mul(&Element(a.to_vec()), &Element(b.to_vec())).unwrap();
                assert_eq!(mat(prod.payload()), mm(mat(&a), mat(&b)));
            }
            let e = Element(a.to_vec());
            assert!(h.is_identity(&h.mul(&h.inv(&e).unwrap(), &e).unwrap()));
        }
    }

    #[test]
    fn set_products_and_inverses() {
        let g = z(1);
        assert_eq!(g.set_product(&set(&g, &["0", "1"]), &set(&g, &["0", "1"])).unwrap(), set(&g, &["0", "1", "2"]));
        let k = set(&g, &["3", "5"]);
        assert_eq!(g.set_product(&set(&g, &["0"]), &k).unwrap(), k);
        assert_eq!(g.set_inverse(&set(&g, &["0", "1", "2"])).unwrap(), set(&g, &["-2", "-1", "0"]));

        let f = GroupCtx::standard(GroupKind::Free { rank: 2 }).unwrap();
        let prod = f.set_product(&set(&f, &["a", "b"]), &set(&f, &["A"])).unwrap();
        assert_eq!(prod, set(&f, &["e", "bA"]));
        assert_eq!(f.set_inverse(&set(&f, &["e"])).unwrap(), set(&f, &["e"]));
    }

    #[test]
    fn balls() {
        let f = GroupCtx::standard(GroupKind::Free { rank: 2 }).unwrap();
        assert_eq!(f.ball(1).unwrap().len(), 5);
        assert_eq!(f.ball(2).unwrap().len(), 17);
        assert_eq!(f.growth(3).unwrap(), vec![1, 5, 17, 53]);
        let g = z(1);
        assert_eq!(g.ball(3).unwrap(), lattice_cube(1, -3, 3));
        assert!(GroupCtx::without_generators(GroupKind::Heisenberg).unwrap().ball(1).is_err());
    }

    #[test]
    fn stabilizers() {
        let g = z(1);
        let id = set(&g, &["0"]);
        assert_eq!(g.stabilizer(&set(&g, &["0", "1", "2"])).unwrap(), id);
        assert_eq!(g.stabilizer(&set(&g, &["0", "2"])).unwrap(), id);
        let c4 = GroupCtx::standard(GroupKind::Cyclic { modulus: 4 }).unwrap();
        let all = set(&c4, &["0", "1", "2", "3"]);
        assert_eq!(c4.stabilizer(&all).unwrap(), all);
        assert_eq!(c4.stabilizer(&set(&c4, &["0", "2"])).unwrap(), set(&c4, &["0", "2"]));
        assert!(g.stabilizer(&Shape::empty()).is_err());
    }

    #[test]
    fn interiors_and_diameter() {
        let g2 = z(2);
        assert_eq!(g2.interior_1(&lattice_cube(2, 0, 2)).unwrap(), set(&g2, &["1,1"]));
        assert!(g2.interior_1(&set(&g2, &["0,0", "1,0", "0,1"])).unwrap().is_empty());
        let g1 = z(1);
        assert_eq!(g1.interior_1(&lattice_cube(1, 0, 4)).unwrap(), lattice_cube(1, 1, 3));
        assert_eq!(g1.interior_t(&lattice_cube(1, 0, 4)).unwrap(), lattice_cube(1, 1, 3));
        assert!(g1.interior_t(&set(&g1, &["0"])).unwrap().is_empty());

        let f = GroupCtx::standard(GroupKind::Free { rank: 2 }).unwrap();
        let int = f.interior_t(&f.ball(2).unwrap()).unwrap();
        assert!(f.ball(1).unwrap().is_subset(&int));

        assert_eq!(g2.diameter_inf(&lattice_cube(2, 0, 2)).unwrap(), 2);
        assert_eq!(g1.diameter_inf(&set(&g1, &["4"])).unwrap(), 0);
        assert_eq!(g1.diameter_inf(&set(&g1, &["0", "7"])).unwrap(), 7);
        assert!(f.diameter_inf(&f.ball(1).unwrap()).is_err());
    }

    #[test]
    fn kind_mismatch() {
        let g = z(2);
        let f = GroupCtx::standard(GroupKind::Free { rank: 2 }).unwrap();
        let w = f.parse("abb").unwrap();
        assert!(matches!(g.mul(&w, &g.identity()), Err(GroupError::KindMismatch { .. })));
        assert!(GroupCtx::with_generators(GroupKind::Lattice { dim: 1 }, vec![g1_elem(1)]).is_err());
    }

    fn g1_elem(x: i64) -> Element {
        Element(vec![x])
    }
}
