//! Shells, repeated-shell blocking pairs and the non-identifiability certificate.
//!
//! For a cell `h` of `CK`, the centers covering it are `C_h = C ∩ hK^{-1}`,
//! its closed shell is `C_h K` and its shell is that set minus `h`. The shell
//! type `h^{-1} C_h` is the shell's footprint seen from `h`. Two cells `a, b`
//! of the same type with disjoint center sets form a blocking pair for `w`
//! when `w` agrees on the two shells (matched through `b a^{-1}`) but differs
//! at `a` and `b`: swapping the two labels leaves every read unchanged.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, Shape};
use crate::pattern::{Pattern, ProbVector, Symbol};
use crate::reads::{in_class, Instance};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShellInfo {
    pub h: Element,
    /// `C_h`.
    pub centers: Shape,
    /// `S_h`.
    pub shell: Shape,
    /// `C_h K`.
    pub closed_shell: Shape,
    /// `h^{-1} C_h`.
    pub shell_type: Shape,
}

fn covering_centers(inst: &Instance, h: &Element) -> Result<Shape> {
    let ctx = inst.ctx();
    let mut out = Vec::new();
    for k in inst.read_shape().iter() {
        let c = ctx.mul(h, &ctx.inv(k)?)?;
        if inst.centers().contains(&c) {
            out.push(c);
        }
    }
    Ok(Shape::from_elements(out))
}

fn shell_type_of(inst: &Instance, h: &Element) -> Result<Shape> {
    if !inst.ck().contains(h) {
        return Err(Error::InvalidArgument(format!("{} is not in CK", inst.ctx().format(h))));
    }
    let ctx = inst.ctx();
    let hi = ctx.inv(h)?;
    Ok(ctx.translate_set(&hi, &covering_centers(inst, h)?)?)
}

pub fn shell_info(inst: &Instance, h: &Element) -> Result<ShellInfo> {
    let shell_type = shell_type_of(inst, h)?;
    let ctx = inst.ctx();
    let centers = ctx.translate_set(h, &shell_type)?;
    let closed_shell = ctx.set_product(&centers, inst.read_shape())?;
    let shell = closed_shell.difference(&Shape::singleton(h.clone()));
    Ok(ShellInfo { h: h.clone(), centers, shell, closed_shell, shell_type })
}

/// Groups the cells of `a` by shell type.
pub fn shell_type_index(inst: &Instance, a: &Shape) -> Result<BTreeMap<Shape, Vec<Element>>> {
    let mut out: BTreeMap<Shape, Vec<Element>> = BTreeMap::new();
    for h in a.iter() {
        out.entry(shell_type_of(inst, h)?).or_default().push(h.clone());
    }
    Ok(out)
}

/// `phi_{a,b}(w)`: `w` with the labels at `a` and `b` exchanged.
pub fn phi_swap(w: &Pattern, a: &Element, b: &Element) -> Result<Pattern> {
    if a == b {
        return Err(Error::InvalidArgument("swap needs two distinct cells".into()));
    }
    let (i, j) = match (w.shape().index_of(a), w.shape().index_of(b)) {
        (Some(i), Some(j)) => (i, j),
        _ => return Err(Error::InvalidArgument("swap cells must lie in the pattern's shape".into())),
    };
    let mut s = w.symbols().to_vec();
    s.swap(i, j);
    Pattern::new(w.shape().clone(), s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockingPair {
    pub a: Element,
    pub b: Element,
    /// Positions of `a` and `b` in `CK`.
    pub a_index: usize,
    pub b_index: usize,
}

impl BlockingPair {
    /// `phi_{a,b}(w)`, the pattern with the same reads as `w`.
    pub fn swap_witness(&self, w: &Pattern) -> Pattern {
        let mut s = w.symbols().to_vec();
        s.swap(self.a_index, self.b_index);
        Pattern::new(w.shape().clone(), s).expect("same shape")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIdCertificate {
    /// Swapping the pair yields a pattern outside the identifiability class.
    Certified(BlockingPair),
    NotCertified,
}

impl NonIdCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, NonIdCertificate::Certified(_))
    }
}

/// Shell data for every cell of `CK`, computed once per instance.
#[derive(Clone, Debug)]
pub struct ShellTable {
    inst: Instance,
    type_of: Vec<usize>,
    type_shapes: Vec<Shape>,
    /// Center indices of `C_h`, sorted.
    centers_of: Vec<Vec<usize>>,
    /// Positions of `h s` for `s` in the type's shell `h^{-1} S_h`, in a
    /// fixed order shared by every cell of that type.
    shell_cells: Vec<Vec<usize>>,
}

impl ShellTable {
    pub fn new(inst: &Instance) -> Result<Self> {
        let ctx = inst.ctx();
        let ck = inst.ck();
        let mut ids: HashMap<Shape, usize> = HashMap::new();
        let mut type_shapes: Vec<Shape> = Vec::new();
        let mut rel_shells: Vec<Vec<Element>> = Vec::new();
        let mut type_of = Vec::with_capacity(ck.len());
        let mut centers_of = Vec::with_capacity(ck.len());
        let mut shell_cells = Vec::with_capacity(ck.len());
        for h in ck.iter() {
            let cs = covering_centers(inst, h)?;
            let hi = ctx.inv(h)?;
            let ty = ctx.translate_set(&hi, &cs)?;
            let id = match ids.get(&ty) {
                Some(&id) => id,
                None => {
                    let id = type_shapes.len();
                    let rel = ctx.set_product(&ty, inst.read_shape())?;
                    let id_elem = ctx.identity();
                    rel_shells.push(rel.iter().filter(|s| **s != id_elem).cloned().collect());
                    ids.insert(ty.clone(), id);
                    type_shapes.push(ty);
                    id
                }
            };
            type_of.push(id);
            centers_of.push(cs.iter().map(|c| inst.centers().index_of(c).expect("center")).collect());
            let cells = rel_shells[id]
                .iter()
                .map(|s| Ok(ck.index_of(&ctx.mul(h, s)?).expect("shell lies in CK")))
                .collect::<Result<Vec<_>>>()?;
            shell_cells.push(cells);
        }
        Ok(Self { inst: inst.clone(), type_of, type_shapes, centers_of, shell_cells })
    }

    pub fn instance(&self) -> &Instance {
        &self.inst
    }

    pub fn num_types(&self) -> usize {
        self.type_shapes.len()
    }

    /// Shell type of the cell at position `i` of `CK`.
    pub fn type_shape(&self, i: usize) -> &Shape {
        &self.type_shapes[self.type_of[i]]
    }

    fn centers_disjoint(&self, i: usize, j: usize) -> bool {
        let (a, b) = (&self.centers_of[i], &self.centers_of[j]);
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].cmp(&b[y]) {
                std::cmp::Ordering::Less => x += 1,
                std::cmp::Ordering::Greater => y += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    fn pair(&self, i: usize, j: usize) -> BlockingPair {
        let ck = self.inst.ck().elements();
        BlockingPair { a: ck[i].clone(), b: ck[j].clone(), a_index: i, b_index: j }
    }

    /// All repeated-shell pairs of `w`, sorted by `(a, b)` position in `CK`.
    pub fn find_pairs(&self, w: &[Symbol]) -> Vec<BlockingPair> {
        let mut buckets: HashMap<(usize, Vec<Symbol>), Vec<usize>> = HashMap::new();
        for (i, cells) in self.shell_cells.iter().enumerate() {
            let key = (self.type_of[i], cells.iter().map(|&j| w[j]).collect());
            buckets.entry(key).or_default().push(i);
        }
        let mut out = Vec::new();
        for members in buckets.values() {
            for (x, &i) in members.iter().enumerate() {
                for &j in &members[x + 1..] {
                    if w[i] != w[j] && self.centers_disjoint(i, j) {
                        out.push((i, j));
                    }
                }
            }
        }
        out.sort_unstable();
        out.into_iter().map(|(i, j)| self.pair(i, j)).collect()
    }

    /// First pair, in canonical order, whose swap leaves the identifiability class.
    pub fn certify(&self, w: &[Symbol]) -> NonIdCertificate {
        for p in self.find_pairs(w) {
            let mut v = w.to_vec();
            v.swap(p.a_index, p.b_index);
            if !in_class(&self.inst, w, &v) {
                return NonIdCertificate::Certified(p);
            }
        }
        NonIdCertificate::NotCertified
    }
}

pub fn find_repeated_shells(inst: &Instance, w: &Pattern) -> Result<Vec<BlockingPair>> {
    let sym = inst.check_pattern(w)?;
    Ok(ShellTable::new(inst)?.find_pairs(sym))
}

pub fn certify_nonidentifiable(inst: &Instance, w: &Pattern) -> Result<NonIdCertificate> {
    let sym = inst.check_pattern(w)?;
    Ok(ShellTable::new(inst)?.certify(sym))
}

/// `(K^{-1} K)^2`.
pub fn shell_exclusion_window(inst: &Instance) -> Result<Shape> {
    let ctx = inst.ctx();
    let kk = ctx.set_product(&ctx.set_inverse(inst.read_shape())?, inst.read_shape())?;
    Ok(ctx.set_product(&kk, &kk)?)
}

/// Greedy disjoint-shell subset of `B`: take the first free cell `b` in
/// canonical order and block `b (K^{-1}K)^2`.
pub fn dsc_greedy(inst: &Instance, b: &Shape) -> Result<Shape> {
    if !b.is_subset(inst.ck()) {
        return Err(Error::InvalidArgument("B must be a subset of CK".into()));
    }
    let ctx = inst.ctx();
    let window = shell_exclusion_window(inst)?;
    let mut blocked: HashSet<Element> = HashSet::new();
    let mut out = Vec::new();
    for x in b.iter() {
        if blocked.contains(x) {
            continue;
        }
        for u in window.iter() {
            blocked.insert(ctx.mul(x, u)?);
        }
        out.push(x.clone());
    }
    Ok(Shape::from_elements(out))
}

/// Whether the closed shells of the cells of `d` are pairwise disjoint.
pub fn is_dsc(inst: &Instance, d: &Shape) -> Result<bool> {
    let mut seen: HashSet<Element> = HashSet::new();
    for h in d.iter() {
        for x in shell_info(inst, h)?.closed_shell.iter() {
            if !seen.insert(x.clone()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NReport {
    /// `ln |I_B| / ln |CK|` (`-inf` for empty `B`).
    pub n1_ratio: f64,
    /// `ln |B| / ln |CK|`.
    pub n2_ratio: f64,
    pub n3: bool,
    pub kk_size: usize,
    /// `(1 - eps) (2 / H_2) ln |CK|`.
    pub n3_threshold: f64,
}

#[allow(non_snake_case)]
pub fn check_N_conditions(inst: &Instance, b: &Shape, p: &ProbVector, eps: f64) -> Result<NReport> {
    if eps <= 0.0 {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    if !b.is_subset(inst.ck()) {
        return Err(Error::InvalidArgument("B must be a subset of CK".into()));
    }
    let ln_ck = (inst.ck().len() as f64).ln();
    let types = shell_type_index(inst, b)?.len();
    let ctx = inst.ctx();
    let kk_size = ctx.set_product(&ctx.set_inverse(inst.read_shape())?, inst.read_shape())?.len();
    let n3_threshold = (1.0 - eps) * p.lambda_c() * ln_ck;
    Ok(NReport {
        n1_ratio: (types as f64).ln() / ln_ck,
        n2_ratio: (b.len() as f64).ln() / ln_ck,
        n3: (kk_size as f64) <= n3_threshold,
        kk_size,
        n3_threshold,
    })
}
