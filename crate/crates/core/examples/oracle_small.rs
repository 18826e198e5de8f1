//! Exact identifiability of every binary pattern on a tiny instance.
//!
//! cargo run --example oracle_small

use shotgun_core::group::lattice_cube;
use shotgun_core::reads::{oracle_identifiable, reads, OracleVerdict, DEFAULT_ORACLE_BUDGET};
use shotgun_core::{GroupCtx, GroupKind, Instance};

fn main() -> shotgun_core::Result<()> {
    let g = GroupCtx::standard(GroupKind::Lattice { dim: 1 })?;
    // Five reads of length 3 covering a string of length 7.
    let inst = Instance::new(g, lattice_cube(1, 0, 4), lattice_cube(1, 0, 2), 2)?;
    let n = inst.ck().len();
    let mut identifiable = 0;
    for code in 0u32..1 << n {
        let w = inst.pattern((0..n).map(|i| (code >> i & 1) as u8).collect())?;
        match oracle_identifiable(&inst, &w, DEFAULT_ORACLE_BUDGET)? {
            OracleVerdict::Identifiable => identifiable += 1,
            OracleVerdict::NonIdentifiable { witness } if code < 40 => {
                println!("{w} is confused with {witness} (reads {:?})", reads(&inst, &w)?.read_symbols());
            }
            OracleVerdict::NonIdentifiable { .. } => {}
        }
    }
    println!("{identifiable} of {} patterns are identifiable", 1u32 << n);
    Ok(())
}
