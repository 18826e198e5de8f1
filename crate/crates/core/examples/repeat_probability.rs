//! Exact probability that a random pattern agrees with its own shift on a set,
//! next to the two general bounds and a Monte Carlo estimate.
//!
//! cargo run --example repeat_probability

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use shotgun_core::group::lattice_cube;
use shotgun_core::probability::{exact_repeat_prob, exact_repeat_prob_rational, orbit_decomposition, repeat_prob_bounds};
use shotgun_core::{GroupCtx, GroupKind, Pattern, ProbVector};

fn main() -> shotgun_core::Result<()> {
    let g = GroupCtx::standard(GroupKind::Lattice { dim: 1 })?;
    let p = ProbVector::parse(&["1/2", "1/3", "1/6"])?;
    let a = lattice_cube(1, 0, 5);
    println!("A = [0,5], p = (1/2, 1/3, 1/6), pi_2 = {:.4}", p.pi2());
    println!("{:>5} {:>18} {:>18} {:>10} {:>10} {:>10} {:>10}", "shift", "orbits", "exact", "double", "lower", "upper", "sampled");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for s in [1, 2, 3, 6, 10] {
        let shift = g.lattice_point(&[s])?;
        let orbits = orbit_decomposition(&g, &a, &shift)?;
        let exact = exact_repeat_prob_rational(&g, &a, &shift, &p)?;
        let (lo, hi) = repeat_prob_bounds(&g, &a, &shift, &p)?;
        let ground = orbits.ground.clone();
        let n = 200_000;
        let hits = (0..n)
            .filter(|_| {
                let w = Pattern::sample(&mut rng, &ground, &p);
                a.iter().all(|u| w.get(u) == w.get(&g.mul(&shift, u).unwrap()))
            })
            .count();
        println!(
            "{:>5} {:>18} {:>18} {:>10.3e} {:>10.3e} {:>10.3e} {:>10.3e}",
            s,
            format!("{:?}", orbits.sizes()),
            exact.to_string(),
            exact_repeat_prob(&g, &a, &shift, &p)?,
            lo,
            hi,
            hits as f64 / n as f64
        );
    }
    Ok(())
}
