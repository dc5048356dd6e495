//! Exhaustive exact BO and log-concavity scans, written as CSV.

use partineq::analysis::{scan_bo, scan_logconcavity};
use partineq::seq_core::SequenceSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let bo = scan_bo(&SequenceSpec::EulerP, 2, 100)?;
    println!("p: {} pairs checked, clean from b >= {:?}", bo.checked, bo.min_clean_threshold);
    bo.write_csv(std::io::stdout())?;

    let plane = scan_bo(&SequenceSpec::PlaneP, 1, 100)?;
    println!("pp: {} violations, clean from b >= {:?}", plane.violations.len(), plane.min_clean_threshold);

    let lc = scan_logconcavity(&"restricted:1,2,3".parse()?, 1, 60)?;
    println!("p_{{1,2,3}}: log-concavity violations at {:?}", lc.violations.iter().map(|v| v.min_index()).collect::<Vec<_>>());
    Ok(())
}
