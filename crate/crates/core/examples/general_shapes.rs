//! Cube and diamond read shapes on a square grid of centres.
//!
//! cargo run --release --example general_shapes

use shotgun_core::simulate::{run_trials, Family, NamedShape, ScenarioConfig};

fn main() -> shotgun_core::Result<()> {
    let shapes = [
        NamedShape::Cube { side: 3 },
        NamedShape::Cube { side: 4 },
        NamedShape::Cube { side: 6 },
        NamedShape::Cube { side: 8 },
        NamedShape::Diamond { radius: 2 },
        NamedShape::Diamond { radius: 4 },
    ];
    for shape in shapes {
        let label = format!("{shape:?}");
        let family = Family::Ex2 { d: 2, n: 30, read_shape: shape };
        let cfg = ScenarioConfig::uniform(family, 2, 100, 3);
        let row = run_trials(&cfg, 0)?.row;
        let n = row.trials as f64;
        println!(
            "{label:<24} id {:.2}  non-id {:.2}  unknown {:.2}",
            row.n_cert_id as f64 / n,
            row.n_cert_nonid as f64 / n,
            row.n_unknown as f64 / n
        );
    }
    Ok(())
}
