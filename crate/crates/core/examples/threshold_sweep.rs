//! Sweeps the read length across the identifiability threshold on a
//! length-5000 binary string and prints the certificate fractions.
//!
//! cargo run --release --example threshold_sweep [trials]

use shotgun_core::simulate::{sweep, Family, ScenarioConfig, SweepParam};

fn main() -> shotgun_core::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(100);
    let family = Family::Ex1 { d: 1, r: 8, ell: 1, m: None, total: Some(5000) };
    let cfg = ScenarioConfig::uniform(family, 2, trials, 2024);
    let rs = [6, 8, 12, 16, 20, 24, 28, 35, 40];
    let rows = sweep(&cfg, SweepParam::ReadSize, &rs, 0)?;

    let lambda_c = rows[0].row.lambda_c;
    println!("threshold: r* = lambda_c ln R = {:.2}", lambda_c * 5000f64.ln());
    println!("{:>4} {:>8} {:>8} {:>8} {:>8} {:>8}", "r", "ratio", "id", "non-id", "unknown", "ms");
    for (r, res) in rs.iter().zip(&rows) {
        let row = &res.row;
        let n = row.trials as f64;
        println!(
            "{:>4} {:>8.3} {:>8.3} {:>8.3} {:>8.3} {:>8}",
            r,
            row.lambda_ratio / lambda_c,
            row.n_cert_id as f64 / n,
            row.n_cert_nonid as f64 / n,
            row.n_unknown as f64 / n,
            row.wall_ms
        );
    }
    Ok(())
}
