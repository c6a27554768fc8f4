//! A reduced run of the coloured circles experiment: colouring A puts the
//! low function value on the large circle, colouring B on the small one.

use mplandscape::experiments::{run_circles, CirclesConfig};

fn main() -> mplandscape::Result<()> {
    let config = CirclesConfig {
        samples_per_colouring: 4,
        points_per_circle: 25,
        resolution: 0.2,
        permutations: 1000,
        ..CirclesConfig::default()
    };
    let outcome = run_circles(&config, 0)?;
    let r = &outcome.report;
    for g in &r.groups {
        println!(
            "{}: mean {:.4}, interval [{:.4}, {:.4}]",
            g.label, g.statistics.mean, g.ci.0, g.ci.1
        );
    }
    println!("Welch p = {:.3e}, permutation p = {:.4}", r.welch.p_value, r.permutation_p);
    Ok(())
}
