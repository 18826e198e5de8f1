//! Monte Carlo on word-metric balls of the free group, across read radii.
//!
//! cargo run --release --example free_group_scenario

use shotgun_core::simulate::{run_trials, Family, ScenarioConfig};

fn main() -> shotgun_core::Result<()> {
    println!("{:>2} {:>2} {:>8} {:>8} {:>8} {:>10}", "R", "r", "id", "non-id", "unknown", "|K|/ln|CK|");
    for (big_r, r) in [(5, 1), (5, 2), (6, 2), (6, 3)] {
        let family = Family::Ex3 { group: "F_2".parse()?, generators: None, big_r, r };
        let cfg = ScenarioConfig::uniform(family, 2, 200, 11);
        let row = run_trials(&cfg, 0)?.row;
        let n = row.trials as f64;
        println!(
            "{:>2} {:>2} {:>8.3} {:>8.3} {:>8.3} {:>10.3}",
            big_r,
            r,
            row.n_cert_id as f64 / n,
            row.n_cert_nonid as f64 / n,
            row.n_unknown as f64 / n,
            row.lambda_ratio
        );
    }
    Ok(())
}
