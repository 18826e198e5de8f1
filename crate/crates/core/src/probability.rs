//! Exact repeat probabilities and closed-form bound evaluators.
//!
//! A pattern `x` has an `(A; g)`-repeat when `x(u) = x(gu)` for every `u` in
//! `A`. Joining `u` and `gu` for all `u` partitions `A ∪ gA` into orbits, each
//! of which must be constant, so under an i.i.d. law the event has probability
//! `prod_O pi_{|O|}(p)`.

use num::{BigRational, One};
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Element, GroupCtx, Shape};
use crate::pattern::ProbVector;
use crate::reads::Instance;
use crate::shells::{is_dsc, shell_type_index};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitDecomposition {
    /// `A ∪ gA`.
    pub ground: Shape,
    /// Sorted by first element.
    pub orbits: Vec<Shape>,
}

impl OrbitDecomposition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Shape::len).collect()
    }
}

pub fn orbit_decomposition(ctx: &GroupCtx, a: &Shape, g: &Element) -> Result<OrbitDecomposition> {
    let ga = ctx.translate_set(g, a)?;
    let ground = a.union(&ga);
    let mut uf = UnionFind::<usize>::new(ground.len());
    for u in a.iter() {
        let i = ground.index_of(u).expect("A ⊆ ground");
        let j = ground.index_of(&ctx.mul(g, u)?).expect("gA ⊆ ground");
        uf.union(i, j);
    }
    let labels = uf.into_labeling();
    let mut groups: Vec<Vec<Element>> = Vec::new();
    let mut slot = vec![usize::MAX; ground.len()];
    for (i, x) in ground.iter().enumerate() {
        let root = labels[i];
        if slot[root] == usize::MAX {
            slot[root] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[root]].push(x.clone());
    }
    let orbits = groups.into_iter().map(Shape::from_elements).collect();
    Ok(OrbitDecomposition { ground, orbits })
}

/// `P(x(u) = x(gu) for all u in A)` in double precision, accumulated in log space.
pub fn exact_repeat_prob(ctx: &GroupCtx, a: &Shape, g: &Element, p: &ProbVector) -> Result<f64> {
    let orbits = orbit_decomposition(ctx, a, g)?;
    let mut log = 0.0;
    for n in orbits.sizes() {
        log += p.pi(n as u32)?.ln();
    }
    Ok(log.exp())
}

/// The same probability as an exact rational; `p` must carry exact weights.
pub fn exact_repeat_prob_rational(ctx: &GroupCtx, a: &Shape, g: &Element, p: &ProbVector) -> Result<BigRational> {
    let orbits = orbit_decomposition(ctx, a, g)?;
    let mut acc = BigRational::one();
    for n in orbits.sizes() {
        acc *= p.pi_exact(n as u32)?;
    }
    Ok(acc)
}

fn disjoint_translates(ctx: &GroupCtx, a: &Shape, gs: &[Element]) -> Result<usize> {
    let mut seen = a.clone();
    for g in gs {
        let t = ctx.translate_set(g, a)?;
        if !t.is_disjoint(&seen) {
            return Err(Error::InvalidArgument(format!(
                "translate by {} meets an earlier translate",
                ctx.format(g)
            )));
        }
        seen = seen.union(&t);
    }
    Ok(gs.len() + 1)
}

/// Probability that `A, g_1 A, .., g_k A` (pairwise disjoint) all carry the
/// same subpattern: `pi_{k+1}(p)^{|A|}`.
pub fn disjoint_repeat_prob(ctx: &GroupCtx, a: &Shape, gs: &[Element], p: &ProbVector) -> Result<f64> {
    let n = disjoint_translates(ctx, a, gs)?;
    Ok((a.len() as f64 * p.pi(n as u32)?.ln()).exp())
}

pub fn disjoint_repeat_prob_rational(
    ctx: &GroupCtx,
    a: &Shape,
    gs: &[Element],
    p: &ProbVector,
) -> Result<BigRational> {
    let n = disjoint_translates(ctx, a, gs)?;
    Ok(num::pow(p.pi_exact(n as u32)?, a.len()))
}

/// `(pi_2^{|A|}, pi_2^{|A|/2})`, valid for `g != e`.
pub fn repeat_prob_bounds(ctx: &GroupCtx, a: &Shape, g: &Element, p: &ProbVector) -> Result<(f64, f64)> {
    ctx.check(g)?;
    if ctx.is_identity(g) {
        return Err(Error::InvalidArgument("repeat bounds need g != e".into()));
    }
    let pi2 = p.pi2();
    let n = a.len() as f64;
    Ok((pi2.powf(n), pi2.powf(n / 2.0)))
}

/// `min(1, |CK|^3 pi_2^{|CK|/2 - 1})`.
pub fn exceptional_upper_bound(inst: &Instance, p: &ProbVector) -> f64 {
    let n = inst.ck().len() as f64;
    let log = 3.0 * n.ln() + (n / 2.0 - 1.0) * p.pi2().ln();
    log.exp().min(1.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RsBound {
    pub value: f64,
    /// Set when the value is not a meaningful probability bound (`<= 0`).
    pub vacuous: bool,
}

/// The repeated-shell lower bound as a function of `|I_D|`, `|D|`, `|K^{-1}K|`
/// and `pi_2`.
pub fn rs_bound_formula(types: usize, d: usize, kk: usize, pi2: f64) -> RsBound {
    let i = types as f64;
    let scale = d as f64 * pi2.powf(kk as f64 / 2.0);
    let value = 1.0 - (4.0 * i.sqrt() / (1.0 - pi2)) * (i.sqrt() / scale + 2.0) / scale;
    RsBound { value, vacuous: value.is_nan() || value <= 0.0 }
}

/// Lower bound on the probability that some pair of `D` carries a repeated shell.
pub fn rs_lower_bound(inst: &Instance, d: &Shape, p: &ProbVector) -> Result<RsBound> {
    if !d.is_subset(inst.ck()) {
        return Err(Error::InvalidArgument("D must be a subset of CK".into()));
    }
    if !is_dsc(inst, d)? {
        return Err(Error::InvalidArgument("closed shells of D are not pairwise disjoint".into()));
    }
    let index = shell_type_index(inst, d)?;
    if index.values().any(|members| members.len() < 2) {
        return Err(Error::InvalidArgument("every shell type in D needs at least two members".into()));
    }
    let ctx = inst.ctx();
    let kk = ctx.set_product(&ctx.set_inverse(inst.read_shape())?, inst.read_shape())?.len();
    Ok(rs_bound_formula(index.len(), d.len(), kk, p.pi2()))
}
