//! Run the Bessenrodt–Ono criterion presets and print the verdict trees.
//!
//!     cargo run --release --example bo_criterion -- 500

use partineq::criteria::{preset, run_preset};
use partineq::envelopes::PrecisionPolicy;
use partineq::report::render_verdict;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let horizon: u64 = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(200);
    for id in ["bo-euler-example21", "bo-planepartition"] {
        let verdict = run_preset(&preset(id, 2)?, horizon, &PrecisionPolicy::default())?;
        let mut out = String::new();
        render_verdict(&verdict, 0, &mut out);
        println!("{out}");
    }
    Ok(())
}
