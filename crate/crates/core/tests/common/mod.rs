//! Helpers shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::sample::Index;

use shotgun_core::{Element, GroupCtx, GroupKind, Instance, Pattern, Shape};

pub const KINDS: [GroupKind; 6] = [
    GroupKind::Lattice { dim: 1 },
    GroupKind::Lattice { dim: 2 },
    GroupKind::Cyclic { modulus: 5 },
    GroupKind::Cyclic { modulus: 12 },
    GroupKind::Free { rank: 2 },
    GroupKind::Heisenberg,
];

pub fn ctx(kind: GroupKind) -> GroupCtx {
    GroupCtx::standard(kind).unwrap()
}

pub fn z1() -> GroupCtx {
    ctx(GroupKind::Lattice { dim: 1 })
}

pub fn interval(g: &GroupCtx, lo: i64, hi: i64) -> Shape {
    (lo..=hi).map(|x| g.lattice_point(&[x]).unwrap()).collect()
}

pub fn pick(pool: &Shape, i: &Index) -> Element {
    pool.elements()[i.index(pool.len())].clone()
}

pub fn pick_set(pool: &Shape, idx: &[Index]) -> Shape {
    idx.iter().map(|i| pick(pool, i)).collect()
}

pub fn kind() -> impl Strategy<Value = GroupKind> {
    prop::sample::select(KINDS.to_vec())
}

/// A group kind together with `n` indices into a ball.
pub fn indices(n: std::ops::Range<usize>) -> impl Strategy<Value = Vec<Index>> {
    prop::collection::vec(any::<Index>(), n)
}

/// Reads straight from the definition, sorted.
pub fn brute_reads(inst: &Instance, w: &[u8]) -> Vec<Vec<u8>> {
    let g = inst.ctx();
    let mut out: Vec<Vec<u8>> = inst
        .centers()
        .iter()
        .map(|c| inst.read_shape().iter().map(|k| w[inst.ck().index_of(&g.mul(c, k).unwrap()).unwrap()]).collect())
        .collect();
    out.sort();
    out
}

pub fn all_patterns(inst: &Instance) -> Vec<Pattern> {
    let n = inst.ck().len();
    let q = inst.alphabet() as u64;
    (0..q.pow(n as u32))
        .map(|code| {
            let mut c = code;
            let s = (0..n)
                .map(|_| {
                    let d = (c % q) as u8;
                    c /= q;
                    d
                })
                .collect();
            inst.pattern(s).unwrap()
        })
        .collect()
}

/// Small instances on which every pattern can be enumerated.
pub fn small_instance() -> impl Strategy<Value = Instance> {
    (0usize..4, indices(1..5), indices(1..4)).prop_filter_map("CK too large", |(which, ci, ki)| {
        let g = match which {
            0 => z1(),
            1 => ctx(GroupKind::Lattice { dim: 2 }),
            2 => ctx(GroupKind::Cyclic { modulus: 6 }),
            _ => ctx(GroupKind::Cyclic { modulus: 8 }),
        };
        let c = pick_set(&g.ball(2).unwrap(), &ci);
        let k = pick_set(&g.ball(1).unwrap(), &ki);
        let inst = Instance::new(g, c, k, 2).ok()?;
        (inst.ck().len() <= 10).then_some(inst)
    })
}
