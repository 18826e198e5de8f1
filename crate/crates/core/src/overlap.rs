//! Overlap graphs and the unique-labeling identifiability certificate.
//!
//! Two centers are joined when some translate `gF` of an overlap shape
//! `F ⊆ K` fits in both of their read footprints. If that graph is connected
//! and every translate of every `F` inside `CK` carries a distinct subpattern,
//! the reads can be chained back together in only one way (up to
//! C-preserving translation), so the pattern is identifiable.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, Shape};
use crate::pattern::{Pattern, ProbVector, Symbol};
use crate::reads::Instance;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapFamily {
    shapes: Vec<Shape>,
}

impl OverlapFamily {
    /// Every shape must be a nonempty subset of `read_shape`.
    pub fn new(read_shape: &Shape, shapes: Vec<Shape>) -> Result<Self> {
        for f in &shapes {
            if f.is_empty() {
                return Err(Error::InvalidArgument("overlap shapes must be nonempty".into()));
            }
            if !f.is_subset(read_shape) {
                return Err(Error::InvalidArgument("overlap shapes must lie inside K".into()));
            }
        }
        Ok(Self { shapes })
    }

    pub fn shapes(&self) -> &[Shape] {
        &self.shapes
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    /// Replaces every shape larger than `size` by its first `size` elements in
    /// canonical order.
    pub fn trimmed(&self, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidArgument("trim size must be positive".into()));
        }
        let shapes = self
            .shapes
            .iter()
            .map(|f| Shape::from_elements(f.iter().take(size).cloned()))
            .collect();
        Ok(Self { shapes })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapEdge {
    /// Indices into `C`, `a < b`.
    pub a: usize,
    pub b: usize,
    /// `g` with `gF ⊆ c_a K ∩ c_b K`.
    pub shift: Element,
    /// Index of `F` in the family.
    pub shape: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapGraph {
    pub vertices: Shape,
    pub edges: Vec<OverlapEdge>,
}

fn sorted_intersection(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Translates of `f` landing inside the cell set `inside` (positions in `CK`,
/// sorted). Any such `g` sends `f_0` into `inside`, so the candidates are
/// `x f_0^{-1}` for `x` in `inside`.
fn translates_within(inst: &Instance, f: &Shape, inside: &[usize]) -> Result<Vec<(Element, Vec<usize>)>> {
    let ctx = inst.ctx();
    let ck = inst.ck();
    let f0_inv = ctx.inv(f.first().expect("nonempty F"))?;
    let mut out = Vec::new();
    'cand: for &x in inside {
        let g = ctx.mul(&ck.elements()[x], &f0_inv)?;
        let mut cells = Vec::with_capacity(f.len());
        for y in f.iter() {
            match ck.index_of(&ctx.mul(&g, y)?) {
                Some(j) if inside.binary_search(&j).is_ok() => cells.push(j),
                _ => continue 'cand,
            }
        }
        out.push((g, cells));
    }
    out.sort();
    Ok(out)
}

pub fn build_overlap_graph(inst: &Instance, fam: &OverlapFamily) -> Result<OverlapGraph> {
    let ctx = inst.ctx();
    let centers = inst.centers();
    // c_b K meets c_a K only if c_b ∈ c_a K K^{-1}
    let kk = ctx.set_product(inst.read_shape(), &ctx.set_inverse(inst.read_shape())?)?;
    let mut edges = Vec::new();
    for (a, ca) in centers.iter().enumerate() {
        let mut partners = Vec::new();
        for u in kk.iter() {
            if let Some(b) = centers.index_of(&ctx.mul(ca, u)?) {
                if b > a {
                    partners.push(b);
                }
            }
        }
        partners.sort_unstable();
        for b in partners {
            let common = sorted_intersection(inst.read_cells(a), inst.read_cells(b));
            for (fi, f) in fam.shapes().iter().enumerate() {
                if f.len() > common.len() {
                    continue;
                }
                if let Some((g, _)) = translates_within(inst, f, &common)?.into_iter().next() {
                    edges.push(OverlapEdge { a, b, shift: g, shape: fi });
                    break;
                }
            }
        }
    }
    Ok(OverlapGraph { vertices: centers.clone(), edges })
}

pub fn is_connected(graph: &OverlapGraph) -> bool {
    let n = graph.vertices.len();
    if n <= 1 {
        return true;
    }
    let mut uf = UnionFind::<usize>::new(n);
    let mut components = n;
    for e in &graph.edges {
        if uf.union(e.a, e.b) {
            components -= 1;
        }
    }
    components == 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotCertifiedReason {
    Disconnected,
    /// Two translates of shape `shape` carry the same subpattern.
    DuplicateTranslate { shape: usize, first: Element, second: Element },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdCertificate {
    Certified,
    NotCertified(NotCertifiedReason),
}

impl IdCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, IdCertificate::Certified)
    }
}

/// The overlap graph and all translate tables for one instance and family,
/// reusable across patterns.
#[derive(Clone, Debug)]
pub struct OverlapCertifier {
    graph: OverlapGraph,
    connected: bool,
    /// Per shape: translates `g` and the `CK` positions of `gF`, by `g`.
    translates: Vec<Vec<(Element, Vec<usize>)>>,
}

impl OverlapCertifier {
    pub fn new(inst: &Instance, fam: &OverlapFamily) -> Result<Self> {
        let graph = build_overlap_graph(inst, fam)?;
        let connected = is_connected(&graph);
        let all: Vec<usize> = (0..inst.ck().len()).collect();
        let translates =
            fam.shapes().iter().map(|f| translates_within(inst, f, &all)).collect::<Result<Vec<_>>>()?;
        Ok(Self { graph, connected, translates })
    }

    pub fn graph(&self) -> &OverlapGraph {
        &self.graph
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// `|T(F)|` for each shape.
    pub fn translate_counts(&self) -> Vec<usize> {
        self.translates.iter().map(Vec::len).collect()
    }

    pub fn certify(&self, w: &[Symbol]) -> IdCertificate {
        if !self.connected {
            return IdCertificate::NotCertified(NotCertifiedReason::Disconnected);
        }
        for (fi, ts) in self.translates.iter().enumerate() {
            let width = ts.first().map_or(0, |t| t.1.len());
            let labels: Vec<Symbol> = ts.iter().flat_map(|(_, cells)| cells.iter().map(|&j| w[j])).collect();
            let mut seen: HashMap<&[Symbol], usize> = HashMap::with_capacity(ts.len());
            for (t, chunk) in labels.chunks(width.max(1)).enumerate() {
                if let Some(&first) = seen.get(chunk) {
                    return IdCertificate::NotCertified(NotCertifiedReason::DuplicateTranslate {
                        shape: fi,
                        first: ts[first].0.clone(),
                        second: ts[t].0.clone(),
                    });
                }
                seen.insert(chunk, t);
            }
        }
        IdCertificate::Certified
    }
}

pub fn unique_labeling_certificate(inst: &Instance, fam: &OverlapFamily, w: &Pattern) -> Result<IdCertificate> {
    let sym = inst.check_pattern(w)?;
    Ok(OverlapCertifier::new(inst, fam)?.certify(sym))
}

/// For families where every `F` in `fam_a` contains some `F'` of `fam_b`:
/// returns whether "`fam_a` connected implies `fam_b` connected" holds here.
pub fn subfamily_connectivity_check(inst: &Instance, fam_a: &OverlapFamily, fam_b: &OverlapFamily) -> Result<bool> {
    for f in fam_a.shapes() {
        if !fam_b.shapes().iter().any(|g| g.is_subset(f)) {
            return Err(Error::InvalidArgument("some shape of the first family contains no shape of the second".into()));
        }
    }
    let a = is_connected(&build_overlap_graph(inst, fam_a)?);
    Ok(!a || is_connected(&build_overlap_graph(inst, fam_b)?))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IReport {
    pub i1: bool,
    /// `ln |F| / ln |CK|`.
    pub i2_ratio: f64,
    pub i3: bool,
    /// `(1 + eps) (2 / H_2) ln |CK|`.
    pub i3_threshold: f64,
    pub min_shape: usize,
}

#[allow(non_snake_case)]
pub fn check_I_conditions(inst: &Instance, fam: &OverlapFamily, p: &ProbVector, eps: f64) -> Result<IReport> {
    if eps <= 0.0 {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let ln_ck = (inst.ck().len() as f64).ln();
    let i3_threshold = (1.0 + eps) * p.lambda_c() * ln_ck;
    let min_shape = fam.shapes().iter().map(Shape::len).min().unwrap_or(0);
    Ok(IReport {
        i1: is_connected(&build_overlap_graph(inst, fam)?),
        i2_ratio: (fam.len() as f64).ln() / ln_ck,
        i3: fam.shapes().iter().all(|f| f.len() as f64 >= i3_threshold),
        i3_threshold,
        min_shape,
    })
}

/// `1 - sum_F (|CK|^2 pi_2^{|F|} + |CK| |F F^{-1}| pi_2^{|F|/2})` from the
/// pairs `(|F|, |F F^{-1}|)`.
pub fn identifiability_bound_formula(ck: usize, shapes: &[(usize, usize)], pi2: f64) -> f64 {
    let n = ck as f64;
    let total: f64 = shapes
        .iter()
        .map(|&(f, ff)| n * n * pi2.powf(f as f64) + n * ff as f64 * pi2.powf(f as f64 / 2.0))
        .sum();
    1.0 - total
}

/// Lower bound on the probability of the unique-labeling event (may be negative).
pub fn identifiability_lower_bound(inst: &Instance, fam: &OverlapFamily, p: &ProbVector) -> Result<f64> {
    let ctx = inst.ctx();
    let sizes = fam
        .shapes()
        .iter()
        .map(|f| Ok((f.len(), ctx.set_product(f, &ctx.set_inverse(f)?)?.len())))
        .collect::<Result<Vec<_>>>()?;
    Ok(identifiability_bound_formula(inst.ck().len(), &sizes, p.pi2()))
}
