//! Closed-form lower bounds next to simulated frequencies.
//!
//! cargo run --release --example bound_evaluators

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shotgun_core::group::lattice_cube;
use shotgun_core::overlap::{check_I_conditions, identifiability_lower_bound, OverlapCertifier, OverlapFamily};
use shotgun_core::probability::rs_lower_bound;
use shotgun_core::shells::{dsc_greedy, ShellTable};
use shotgun_core::{GroupCtx, GroupKind, Instance, Pattern, ProbVector};

fn main() -> shotgun_core::Result<()> {
    let g = GroupCtx::standard(GroupKind::Lattice { dim: 1 })?;
    let p = ProbVector::uniform(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let trials = 1000;

    let inst = Instance::new(g.clone(), lattice_cube(1, 0, 19), lattice_cube(1, 0, 49), 2)?;
    let fam = OverlapFamily::new(inst.read_shape(), vec![lattice_cube(1, 0, 39)])?;
    let cert = OverlapCertifier::new(&inst, &fam)?;
    let hits = (0..trials).filter(|_| cert.certify(Pattern::sample(&mut rng, inst.ck(), &p).symbols()).is_certified()).count();
    println!("identifiability bound {:.4}, certified fraction {:.4}", identifiability_lower_bound(&inst, &fam, &p)?, hits as f64 / trials as f64);
    println!("{:?}", check_I_conditions(&inst, &fam, &p, 0.1)?);

    let inst = Instance::new(g, lattice_cube(1, 0, 1999), lattice_cube(1, 0, 1), 2)?;
    let d = dsc_greedy(&inst, &lattice_cube(1, 1, 1999))?;
    let bound = rs_lower_bound(&inst, &d, &p)?;
    let shells = ShellTable::new(&inst)?;
    let hits = (0..trials).filter(|_| !shells.find_pairs(Pattern::sample(&mut rng, inst.ck(), &p).symbols()).is_empty()).count();
    println!("repeated-shell bound {:.4} (|D| = {}), fraction with a blocking pair {:.4}", bound.value, d.len(), hits as f64 / trials as f64);
    Ok(())
}
