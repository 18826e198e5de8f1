//! Both certificates on a handful of random strings, with the oracle as referee.
//!
//! cargo run --example certificates

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shotgun_core::group::lattice_cube;
use shotgun_core::overlap::{IdCertificate, NotCertifiedReason, OverlapCertifier, OverlapFamily};
use shotgun_core::reads::{oracle_identifiable, DEFAULT_ORACLE_BUDGET};
use shotgun_core::shells::{NonIdCertificate, ShellTable};
use shotgun_core::{GroupCtx, GroupKind, Instance, Pattern, ProbVector};

fn main() -> shotgun_core::Result<()> {
    let g = GroupCtx::standard(GroupKind::Lattice { dim: 1 })?;
    // Reads of length 9 starting at 0..=11; neighbours share 8 cells.
    let inst = Instance::new(g.clone(), lattice_cube(1, 0, 11), lattice_cube(1, 0, 8), 2)?;
    let fam = OverlapFamily::new(inst.read_shape(), vec![lattice_cube(1, 0, 6)])?;
    let overlap = OverlapCertifier::new(&inst, &fam)?;
    let shells = ShellTable::new(&inst)?;
    let p = ProbVector::uniform(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..12 {
        let w = Pattern::sample(&mut rng, inst.ck(), &p);
        let id = match overlap.certify(w.symbols()) {
            IdCertificate::Certified => "certified".to_string(),
            IdCertificate::NotCertified(NotCertifiedReason::Disconnected) => "no (disconnected)".to_string(),
            IdCertificate::NotCertified(NotCertifiedReason::DuplicateTranslate { first, second, .. }) => {
                format!("no (windows at {} and {} agree)", g.format(&first), g.format(&second))
            }
        };
        let nonid = match shells.certify(w.symbols()) {
            NonIdCertificate::Certified(pair) => format!("swap -> {}", pair.swap_witness(&w)),
            NonIdCertificate::NotCertified => "no".to_string(),
        };
        let exact = oracle_identifiable(&inst, &w, DEFAULT_ORACLE_BUDGET)?.is_identifiable();
        println!("{w}  identifiable: {exact:<5}  id cert: {id}  non-id cert: {nonid}");
    }
    Ok(())
}
