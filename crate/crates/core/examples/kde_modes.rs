//! Counting modes of a trimodal sample across bandwidths. Each mode that
//! persists over a range of bandwidths shows up as one landscape level.

use mplandscape::experiments::{run_modes_fixture, ModesConfig};

fn main() -> mplandscape::Result<()> {
    let config = ModesConfig::default();
    let outcome = run_modes_fixture(&config, 0)?;
    for (k, s) in outcome.report.sup_norms.iter().enumerate() {
        println!("sup lambda_{} = {s:.5}", k + 1);
    }
    Ok(())
}
