//! Ball sizes in each built-in group, and the stabilizer of a few sets.
//!
//! cargo run --example group_balls

use shotgun_core::{GroupCtx, GroupKind, Shape};

fn main() -> shotgun_core::Result<()> {
    let kinds = [
        GroupKind::Lattice { dim: 1 },
        GroupKind::Lattice { dim: 2 },
        GroupKind::Cyclic { modulus: 10 },
        GroupKind::Free { rank: 2 },
        GroupKind::Heisenberg,
    ];
    println!("growth gamma(0..=5):");
    for kind in kinds {
        let g = GroupCtx::standard(kind)?;
        println!("  {:<5} {:?}", kind.to_string(), g.growth(5)?);
    }

    let z10 = GroupCtx::standard(GroupKind::Cyclic { modulus: 10 })?;
    let evens: Shape = (0..10).step_by(2).map(|x| z10.residue(x)).collect();
    let st = z10.stabilizer(&evens)?;
    let shown: Vec<String> = st.iter().map(|x| z10.format(x)).collect();
    println!("stabilizer of the even residues in Z_10: {{{}}}", shown.join(", "));

    let f2 = GroupCtx::standard(GroupKind::Free { rank: 2 })?;
    let t2 = f2.ball(2)?;
    println!("F_2: |T_2| = {}, |int_T T_2| = {}, |G_T2| = {}", t2.len(), f2.interior_t(&t2)?.len(), f2.stabilizer(&t2)?.len());
    Ok(())
}
