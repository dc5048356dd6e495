//! The log-concavity criterion on p(n) with the Chen envelope, compared with
//! the exact log-concavity threshold.

use partineq::analysis::scan_logconcavity;
use partineq::criteria::{preset, run_preset};
use partineq::envelopes::PrecisionPolicy;
use partineq::seq_core::SequenceSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let verdict = run_preset(&preset("lc-chen", 2)?, 500, &PrecisionPolicy::default())?;
    println!("{}: {}", verdict.label, verdict.status);
    for part in &verdict.parts {
        println!("  [{}] {}  {:?}", part.status, part.label, part.thresholds);
    }
    let scan = scan_logconcavity(&SequenceSpec::EulerP, 2, 500)?;
    println!(
        "exact scan: violations at {:?}; log-concave from {:?}",
        scan.violations.iter().map(|v| v.min_index()).collect::<Vec<_>>(),
        scan.min_clean_threshold
    );
    Ok(())
}
