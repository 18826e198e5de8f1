mod common;

use std::collections::HashSet;

use proptest::prelude::*;
use proptest::sample::Index;

use common::*;
use shotgun_core::overlap::{
    build_overlap_graph, is_connected, subfamily_connectivity_check, unique_labeling_certificate, OverlapFamily,
};
use shotgun_core::reads::{
    identifiability_class, in_class, naive_preimage, oracle_identifiable, preimage, reads, OracleVerdict,
    DEFAULT_ORACLE_BUDGET,
};
use shotgun_core::shells::{certify_nonidentifiable, find_repeated_shells, shell_info, NonIdCertificate};
use shotgun_core::{Instance, Pattern, Shape};

fn families(inst: &Instance) -> Vec<OverlapFamily> {
    let k = inst.read_shape().elements();
    let mut out = vec![OverlapFamily::new(inst.read_shape(), vec![inst.read_shape().clone()]).unwrap()];
    for drop in 0..k.len().min(3) {
        let f: Shape = k.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, x)| x.clone()).collect();
        if !f.is_empty() {
            out.push(OverlapFamily::new(inst.read_shape(), vec![f]).unwrap());
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Exhaustive checks over every pattern of a small instance.
    #[test]
    fn exhaustive_small_instance(inst in small_instance()) {
        let fams = families(&inst);
        for w in all_patterns(&inst) {
            let r = reads(&inst, &w).unwrap();
            prop_assert_eq!(r.read_symbols().to_vec(), brute_reads(&inst, w.symbols()));

            let class = identifiability_class(&inst, &w).unwrap();
            for v in &class {
                prop_assert_eq!(brute_reads(&inst, v.symbols()), brute_reads(&inst, w.symbols()));
                prop_assert!(in_class(&inst, w.symbols(), v.symbols()));
            }

            let fast: HashSet<Pattern> = preimage(&inst, &w, DEFAULT_ORACLE_BUDGET).unwrap().into_iter().collect();
            let slow: HashSet<Pattern> = naive_preimage(&inst, &w, DEFAULT_ORACLE_BUDGET).unwrap().into_iter().collect();
            prop_assert_eq!(&fast, &slow);

            let verdict = oracle_identifiable(&inst, &w, DEFAULT_ORACLE_BUDGET).unwrap();
            let class_set: HashSet<Pattern> = class.iter().cloned().collect();
            match &verdict {
                OracleVerdict::Identifiable => prop_assert!(fast.is_subset(&class_set)),
                OracleVerdict::NonIdentifiable { witness } => {
                    prop_assert_eq!(brute_reads(&inst, witness.symbols()), brute_reads(&inst, w.symbols()));
                    prop_assert!(!class_set.contains(witness));
                }
            }

            for fam in &fams {
                if unique_labeling_certificate(&inst, fam, &w).unwrap().is_certified() {
                    prop_assert!(verdict.is_identifiable(), "certified identifiable but oracle disagrees: {}", w);
                }
            }
            if let NonIdCertificate::Certified(pair) = certify_nonidentifiable(&inst, &w).unwrap() {
                prop_assert!(!verdict.is_identifiable());
                let v = pair.swap_witness(&w);
                prop_assert!(!in_class(&inst, w.symbols(), v.symbols()));
            }
            // Exactness: a non-certified pattern either has no pair or only pairs
            // whose swap stays in the class.
            if !certify_nonidentifiable(&inst, &w).unwrap().is_certified() {
                for pair in find_repeated_shells(&inst, &w).unwrap() {
                    prop_assert!(in_class(&inst, w.symbols(), pair.swap_witness(&w).symbols()));
                }
            }
        }
    }

    #[test]
    fn edges_carry_valid_witnesses(inst in small_instance()) {
        let g = inst.ctx();
        for fam in families(&inst) {
            let graph = build_overlap_graph(&inst, &fam).unwrap();
            for e in &graph.edges {
                prop_assert!(e.a < e.b);
                let f = &fam.shapes()[e.shape];
                let moved = g.translate_set(&e.shift, f).unwrap();
                let ka = g.translate_set(&graph.vertices.elements()[e.a], inst.read_shape()).unwrap();
                let kb = g.translate_set(&graph.vertices.elements()[e.b], inst.read_shape()).unwrap();
                prop_assert!(moved.is_subset(&ka.intersection(&kb)));
            }
        }
    }

    #[test]
    fn trimming_never_disconnects(inst in small_instance(), size in 1usize..4) {
        for fam in families(&inst) {
            let trimmed = fam.trimmed(size).unwrap();
            prop_assert!(subfamily_connectivity_check(&inst, &fam, &trimmed).unwrap());
            if is_connected(&build_overlap_graph(&inst, &fam).unwrap()) {
                prop_assert!(is_connected(&build_overlap_graph(&inst, &trimmed).unwrap()));
            }
        }
    }

    #[test]
    fn shells_lie_in_the_window(inst in small_instance()) {
        let g = inst.ctx();
        let k = inst.read_shape();
        let kk = g.set_product(&g.set_inverse(k).unwrap(), k).unwrap();
        for h in inst.ck().iter() {
            let info = shell_info(&inst, h).unwrap();
            prop_assert!(!info.shell.contains(h));
            prop_assert!(info.shell.is_subset(&g.translate_set(h, &kk).unwrap()));
            prop_assert!(info.shell.is_subset(inst.ck()));
            prop_assert_eq!(&g.translate_set(h, &info.shell_type).unwrap(), &info.centers);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn translate_overlap(kind in kind(), idx in indices(1..6), i in any::<Index>(), j in any::<Index>()) {
        let g = ctx(kind);
        let ball = g.ball(3).unwrap();
        let a = pick_set(&g.ball(1).unwrap(), &idx);
        let (x, y) = (pick(&ball, &i), pick(&ball, &j));
        let meet = !g.translate_set(&x, &a).unwrap().is_disjoint(&g.translate_set(&y, &a).unwrap());
        let aa = g.set_product(&a, &g.set_inverse(&a).unwrap()).unwrap();
        prop_assert_eq!(meet, g.translate_set(&y, &aa).unwrap().contains(&x));
    }
}

#[test]
fn torsion_instance_is_handled_exactly() {
    // Z_4 with C = {0, 2}: "0110" and "1001" differ by the shift by 2, which
    // preserves C, so they count as the same pattern.
    let g = ctx(shotgun_core::GroupKind::Cyclic { modulus: 4 });
    let c: Shape = [0, 2].iter().map(|&x| g.residue(x)).collect();
    let k: Shape = [0, 1].iter().map(|&x| g.residue(x)).collect();
    let inst = Instance::new(g, c, k, 2).unwrap();
    let w = inst.pattern(vec![0, 1, 1, 0]).unwrap();
    let v = inst.pattern(vec![1, 0, 0, 1]).unwrap();
    assert!(in_class(&inst, w.symbols(), v.symbols()));
    assert!(oracle_identifiable(&inst, &w, DEFAULT_ORACLE_BUDGET).unwrap().is_identifiable());
}
